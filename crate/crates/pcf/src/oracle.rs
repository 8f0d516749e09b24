//! Exhaustive ground truth: backtracking search for PCF list colorings,
//! exact counting, the conflict-free chromatic number of tiny graphs, and a
//! bounded refuter that hunts for list assignments with no PCF coloring.

use std::collections::BTreeMap;

use crate::coloring::{check_pcf, unique_colors, Color, Coloring, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{degeneracy_ordering, Graph};

/// Caps on search effort. Exhausting a budget is a distinct outcome from
/// proving unsolvability.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    /// Color-assignment attempts in one backtracking search.
    pub max_nodes: u64,
    /// Candidate list assignments examined by the refuter.
    pub max_assignments: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 10_000_000,
            max_assignments: 1_000_000,
        }
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget {
            max_nodes: u64::MAX,
            max_assignments: u64::MAX,
        }
    }
}

/// Verdict of [`brute_force_pcf`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Solution(Coloring),
    /// The whole search space was exhausted; no PCF coloring exists.
    Unsolvable,
    BudgetExhausted,
}

struct Search<'a> {
    g: &'a Graph,
    lists: &'a ListAssignment,
    order: Vec<usize>,
    coloring: Coloring,
    nodes: u64,
    max_nodes: u64,
}

enum Found {
    Yes,
    No,
}

impl Search<'_> {
    /// Colored vertex `v`; true if some vertex around it is now provably
    /// stuck (its whole neighborhood is colored and no color is unique).
    fn dead_after(&self, v: usize) -> bool {
        for &w in self.g.neighbors(v) {
            if self
                .g
                .neighbors(w)
                .iter()
                .all(|&u| self.coloring.get(u).is_some())
                && unique_colors(self.g, &self.coloring, w).is_empty()
            {
                return true;
            }
        }
        false
    }

    fn dfs(&mut self, i: usize) -> std::result::Result<Found, ()> {
        if i == self.order.len() {
            debug_assert!(check_pcf(self.g, &self.coloring, Some(self.lists))
                .map(|r| r.is_valid())
                .unwrap_or(false));
            return Ok(Found::Yes);
        }
        let v = self.order[i];
        for idx in 0..self.lists.list(v).len() {
            let c = self.lists.list(v)[idx];
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(());
            }
            if self
                .g
                .neighbors(v)
                .iter()
                .any(|&u| self.coloring.get(u) == Some(c))
            {
                continue;
            }
            self.coloring.set(v, c);
            if !self.dead_after(v) {
                if let Found::Yes = self.dfs(i + 1)? {
                    return Ok(Found::Yes);
                }
            }
            self.coloring.unset(v);
        }
        Ok(Found::No)
    }
}

/// Decides PCF list-colorability by exhaustive backtracking over a
/// degeneracy order, pruning on properness violations and on any vertex
/// whose fully-colored neighborhood has no uniquely-occurring color.
///
/// `Unsolvable` is a proof: the entire space was searched. Panics if
/// `lists` does not cover the graph's vertices.
pub fn brute_force_pcf(g: &Graph, lists: &ListAssignment, budget: &SearchBudget) -> SearchOutcome {
    assert_eq!(
        lists.len(),
        g.vertex_count(),
        "list assignment must cover every vertex"
    );
    let mut search = Search {
        g,
        lists,
        order: degeneracy_ordering(g).order().to_vec(),
        coloring: Coloring::empty(g.vertex_count()),
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    match search.dfs(0) {
        Ok(Found::Yes) => SearchOutcome::Solution(search.coloring),
        Ok(Found::No) => SearchOutcome::Unsolvable,
        Err(()) => SearchOutcome::BudgetExhausted,
    }
}

/// Counts total colorings passing [`check_pcf`] by plain enumeration of the
/// full product space — no pruning, so it doubles as an independent oracle
/// for [`brute_force_pcf`]. Exponential; intended for tiny instances.
pub fn count_pcf_colorings(g: &Graph, lists: &ListAssignment) -> u64 {
    assert_eq!(lists.len(), g.vertex_count());
    let n = g.vertex_count();
    let mut indices = vec![0usize; n];
    let mut count = 0;
    loop {
        let coloring =
            Coloring::from_colors((0..n).map(|v| lists.list(v)[indices[v]]).collect());
        if check_pcf(g, &coloring, Some(lists))
            .expect("total by construction")
            .is_valid()
        {
            count += 1;
        }
        // Odometer step; the empty product contributes exactly one coloring.
        let mut pos = n;
        loop {
            if pos == 0 {
                return count;
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < lists.list(pos).len() {
                break;
            }
            indices[pos] = 0;
        }
    }
}

/// Least `k <= max_k` such that uniform lists `{1..k}` admit a PCF
/// coloring, found by unbounded exhaustive search. `None` if every `k`
/// fails. Intended for tiny graphs only.
pub fn pcf_chromatic_number(g: &Graph, max_k: u32) -> Option<u32> {
    if g.vertex_count() == 0 {
        return Some(0);
    }
    let unlimited = SearchBudget::unlimited();
    for k in 1..=max_k {
        let palette: Vec<Color> = (1..=k).collect();
        let lists = ListAssignment::new(vec![palette; g.vertex_count()])
            .expect("uniform lists are valid");
        if let SearchOutcome::Solution(_) = brute_force_pcf(g, &lists, &unlimited) {
            return Some(k);
        }
    }
    None
}

/// Verdict of [`refute_choosability`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefuteOutcome {
    /// A list assignment with `|L(v)| = deg(v) + k` everywhere that admits
    /// no PCF coloring. Valid for every color-renaming of itself.
    Witness(ListAssignment),
    /// Enumeration completed: every such assignment (up to color renaming)
    /// is colorable.
    NoneExists,
    BudgetExhausted,
}

/// Relabels colors by order of first appearance (scanning vertices in
/// order, each list ascending) and rebuilds sorted lists. Fixed points of
/// this map are the canonical representatives the refuter tests; every
/// renaming class contains at least one.
fn first_appearance_form(lists: &[Vec<Color>]) -> Vec<Vec<Color>> {
    let mut relabel: BTreeMap<Color, Color> = BTreeMap::new();
    let mut next = 1;
    let mut out = Vec::with_capacity(lists.len());
    for list in lists {
        let mut mapped: Vec<Color> = list
            .iter()
            .map(|&c| {
                *relabel.entry(c).or_insert_with(|| {
                    let label = next;
                    next += 1;
                    label
                })
            })
            .collect();
        mapped.sort_unstable();
        out.push(mapped);
    }
    out
}

/// Searches for a list assignment witnessing that `g` is *not* PCF
/// (degree+`k`)-choosable: every `L(v)` is a `(deg(v)+k)`-subset of
/// `{1..universe}`, assignments are enumerated lexicographically and only
/// canonical representatives under color renaming are tested, and the first
/// assignment `brute_force_pcf` proves unsolvable is returned.
pub fn refute_choosability(
    g: &Graph,
    k: usize,
    universe: Color,
    budget: &SearchBudget,
) -> Result<RefuteOutcome> {
    let n = g.vertex_count();
    let sizes: Vec<usize> = g.vertices().map(|v| g.degree(v) + k).collect();
    for (v, &s) in sizes.iter().enumerate() {
        if s == 0 {
            return Err(Error::InvalidInput(format!(
                "vertex {v} would get an empty list (degree 0, k = 0)"
            )));
        }
        if s > universe as usize {
            return Err(Error::InvalidInput(format!(
                "vertex {v} needs {s} colors but the universe has only {universe}"
            )));
        }
    }
    if n == 0 {
        return Ok(RefuteOutcome::NoneExists);
    }

    // Odometer over per-vertex combinations, vertex 0 most significant.
    let mut combos: Vec<Vec<Color>> = sizes.iter().map(|&s| (1..=s as Color).collect()).collect();
    let mut tested: u64 = 0;
    loop {
        if combos == first_appearance_form(&combos) {
            tested += 1;
            if tested > budget.max_assignments {
                return Ok(RefuteOutcome::BudgetExhausted);
            }
            let lists = ListAssignment::new(combos.clone()).expect("combinations are valid lists");
            match brute_force_pcf(g, &lists, budget) {
                SearchOutcome::Unsolvable => return Ok(RefuteOutcome::Witness(lists)),
                SearchOutcome::BudgetExhausted => return Ok(RefuteOutcome::BudgetExhausted),
                SearchOutcome::Solution(_) => {}
            }
        }
        // Advance the rightmost vertex to its next combination, carrying
        // leftward on wrap-around.
        let mut v = n;
        loop {
            if v == 0 {
                return Ok(RefuteOutcome::NoneExists);
            }
            v -= 1;
            if next_combination(&mut combos[v], universe) {
                break;
            }
            combos[v] = (1..=sizes[v] as Color).collect();
        }
    }
}

/// Steps a sorted subset of `{1..universe}` to its lexicographic successor
/// of the same size. Returns false (leaving the input untouched) at the
/// last combination.
fn next_combination(combo: &mut [Color], universe: Color) -> bool {
    let s = combo.len();
    let mut i = s;
    while i > 0 {
        i -= 1;
        if combo[i] < universe - (s - 1 - i) as Color {
            combo[i] += 1;
            for j in (i + 1)..s {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
