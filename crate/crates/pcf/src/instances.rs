//! Instance generators: the counterexample gadgets that pin down how tight
//! the choosability bounds are, and seeded random instances for property
//! testing.
//!
//! All randomness is ChaCha8 keyed by a caller-supplied `u64` seed, so every
//! generated instance reproduces exactly across runs and platforms.

use rand::prelude::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{Color, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// What the oracle is expected to say about an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Colorable,
    NotColorable,
    Unknown,
}

/// A graph together with a list assignment and the expected verdict.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub expected: Verdict,
}

/// The star `K_{1,n-1}` with center list `{2..n}` and every leaf list `{1}`.
///
/// List sizes meet degree+0 exactly, yet the leaves must all take color 1,
/// so the center never sees a unique neighbor color: no PCF coloring
/// exists. This is the witness that degree+0 choosability fails.
pub fn gen_star(n: usize) -> Result<Instance> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "star gadget needs n >= 3, got {n}"
        )));
    }
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    let graph = Graph::new(n, &edges)?;
    let mut lists = vec![(2..=n as Color).collect::<Vec<_>>()];
    lists.extend(std::iter::repeat_n(vec![1], n - 1));
    Ok(Instance {
        graph,
        lists: ListAssignment::new(lists)?,
        expected: Verdict::NotColorable,
    })
}

/// `n` four-cycles glued at a hub `v` (vertex 0). The hub's list is
/// `{1..2n+1}` and the three other vertices of the `i`-th cycle all get
/// `{1, 2i, 2i+1}`.
///
/// Every list has degree+1 colors and the graph is 2-degenerate, but the
/// conflict-free condition inside cycle `i` forbids all of `{1, 2i, 2i+1}`
/// at the hub, leaving it no color. Cycle `i` occupies vertices
/// `3i-2, 3i-1, 3i` in hub → hub order.
pub fn gen_flower(n: usize) -> Result<Instance> {
    if n < 1 {
        return Err(Error::InvalidInput("flower gadget needs n >= 1".into()));
    }
    let mut edges = Vec::new();
    let mut lists = vec![(1..=2 * n as Color + 1).collect::<Vec<_>>()];
    for i in 1..=n {
        let (a, b, c) = (3 * (i - 1) + 1, 3 * (i - 1) + 2, 3 * (i - 1) + 3);
        edges.extend([(0, a), (a, b), (b, c), (c, 0)]);
        let petal = vec![1, 2 * i as Color, 2 * i as Color + 1];
        lists.extend([petal.clone(), petal.clone(), petal]);
    }
    Ok(Instance {
        graph: Graph::new(3 * n + 1, &edges)?,
        lists: ListAssignment::new(lists)?,
        expected: Verdict::NotColorable,
    })
}

/// The 5-cycle with every list `{1,2,3,4}`: lists of size degree+2 that
/// admit no PCF coloring, so 2-degenerate graphs can need degree+3.
pub fn gen_c5_uniform() -> Instance {
    let graph = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    let lists = ListAssignment::new(vec![vec![1, 2, 3, 4]; 5]).unwrap();
    Instance {
        graph,
        lists,
        expected: Verdict::NotColorable,
    }
}

/// Uniform random labeled tree on `n` vertices, decoded from a random
/// Prüfer sequence. Deterministic per seed.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n <= 1 {
        return Graph::new(n, &[]).unwrap();
    }
    if n == 2 {
        return Graph::new(2, &[(0, 1)]).unwrap();
    }
    let prufer: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1u32; n];
    for &a in &prufer {
        degree[a] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &a in &prufer {
        let leaf = *leaves.iter().next().expect("a leaf always remains");
        leaves.remove(&leaf);
        edges.push((leaf, a));
        degree[a] -= 1;
        if degree[a] == 1 {
            leaves.insert(a);
        }
    }
    let mut last = leaves.iter();
    let (u, v) = (*last.next().unwrap(), *last.next().unwrap());
    edges.push((u, v));
    Graph::new(n, &edges).unwrap()
}

/// Random graph of degeneracy at most `d`: vertices arrive one by one and
/// each joins between 1 and `d` uniformly chosen earlier vertices.
pub fn random_degenerate(n: usize, d: usize, seed: u64) -> Graph {
    assert!(n >= 1 && d >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let picks = rng.random_range(1..=d.min(v));
        for earlier in rand::seq::index::sample(&mut rng, v, picks) {
            edges.push((earlier, v));
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Random list assignment with `|L(v)| = deg(v) + k` drawn uniformly from
/// `{1..universe}` per vertex. Errors if the universe is too small for some
/// vertex.
pub fn random_list_assignment(
    g: &Graph,
    k: usize,
    universe: Color,
    seed: u64,
) -> Result<ListAssignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lists = Vec::with_capacity(g.vertex_count());
    for v in g.vertices() {
        let size = g.degree(v) + k;
        if size > universe as usize {
            return Err(Error::InvalidInput(format!(
                "vertex {v} needs {size} colors but the universe has only {universe}"
            )));
        }
        let mut list: Vec<Color> = rand::seq::index::sample(&mut rng, universe as usize, size)
            .iter()
            .map(|i| i as Color + 1)
            .collect();
        list.sort_unstable();
        lists.push(list);
    }
    ListAssignment::new(lists)
}

/// The hub shapes `adversarial_tree` chains together. Each steers the tree
/// solver into one configuration of its case analysis once the hub becomes
/// the end of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HubPattern {
    /// Two bare twigs: hub of degree 3, both non-trunk components `K1`.
    TwoBare,
    /// One paired twig and one bare twig.
    PairAndBare,
    /// Two paired twigs; `eq` controls whether both inner lists hide the
    /// same spare color from their outer partner.
    TwoPaired { eq: bool },
    /// `k >= 3` twigs, all paired.
    AllPaired { k: usize },
    /// `k >= 3` twigs, exactly one bare.
    OneBare { k: usize },
    /// Hub list carrying two colors no twig knows.
    SpareHub { k: usize, paired: usize },
    /// Hub list almost entirely inside the twig lists, few twigs paired.
    ScarceHub { paired: usize },
    /// The tight shape: four twigs (two paired), every twig color on
    /// exactly two twigs, one fresh hub color.
    ScarceHubTight,
}

const HUB_PATTERNS: [HubPattern; 13] = [
    HubPattern::TwoBare,
    HubPattern::PairAndBare,
    HubPattern::TwoPaired { eq: true },
    HubPattern::TwoPaired { eq: false },
    HubPattern::AllPaired { k: 3 },
    HubPattern::AllPaired { k: 4 },
    HubPattern::OneBare { k: 3 },
    HubPattern::OneBare { k: 4 },
    HubPattern::SpareHub { k: 3, paired: 1 },
    HubPattern::SpareHub { k: 4, paired: 2 },
    HubPattern::ScarceHub { paired: 0 },
    HubPattern::ScarceHub { paired: 1 },
    HubPattern::ScarceHubTight,
];

struct TreeBuilder {
    lists: Vec<Vec<Color>>,
    edges: Vec<(usize, usize)>,
    next_color: Color,
    next_pad: Color,
}

impl TreeBuilder {
    fn new() -> Self {
        TreeBuilder {
            lists: Vec::new(),
            edges: Vec::new(),
            next_color: 1,
            next_pad: 1_000_000,
        }
    }

    fn vertex(&mut self, list: Vec<Color>) -> usize {
        self.lists.push(list);
        self.lists.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    fn fresh(&mut self, k: usize) -> Vec<Color> {
        let start = self.next_color;
        self.next_color += k as Color;
        (start..start + k as Color).collect()
    }

    /// A color larger than every content color; truncation sheds it first.
    fn pad(&mut self) -> Color {
        self.next_pad += 1;
        self.next_pad
    }

    fn build(self) -> (Graph, ListAssignment) {
        let g = Graph::new(self.lists.len(), &self.edges).expect("builder produces simple graphs");
        for v in g.vertices() {
            debug_assert_eq!(
                self.lists[v].len(),
                g.degree(v) + 1,
                "crafted list size off at vertex {v}"
            );
        }
        (g, ListAssignment::new(self.lists).expect("builder lists are valid"))
    }
}

struct TwigPlan {
    inner_id: usize,
    inner_list: Vec<Color>,
    outer_list: Option<Vec<Color>>,
}

/// Attaches the pattern's twigs to newly created vertices and returns the
/// hub's crafted color content (exactly `k + 2` colors) plus the twig ids.
fn craft_hub(b: &mut TreeBuilder, pattern: HubPattern) -> (Vec<Color>, Vec<usize>) {
    // Paired twig helper: outer list nested inside the inner's, so the
    // pendant-pair reduction never fires on it. `spare` is the one inner
    // color the outer partner lacks.
    fn paired(b: &mut TreeBuilder, spare: Option<Color>) -> TwigPlan {
        let spare = spare.unwrap_or_else(|| b.fresh(1)[0]);
        let shared = b.fresh(2);
        let mut inner_list = vec![spare, shared[0], shared[1]];
        inner_list.sort_unstable();
        TwigPlan {
            inner_id: usize::MAX,
            inner_list,
            outer_list: Some(shared),
        }
    }
    fn bare(b: &mut TreeBuilder) -> TwigPlan {
        TwigPlan {
            inner_id: usize::MAX,
            inner_list: b.fresh(2),
            outer_list: None,
        }
    }

    let (mut plans, hub_content): (Vec<TwigPlan>, Vec<Color>) = match pattern {
        HubPattern::TwoBare => {
            let plans = vec![bare(b), bare(b)];
            let content = b.fresh(4);
            (plans, content)
        }
        HubPattern::PairAndBare => {
            let plans = vec![paired(b, None), bare(b)];
            let content = b.fresh(4);
            (plans, content)
        }
        HubPattern::TwoPaired { eq } => {
            let s1 = b.fresh(1)[0];
            let s2 = if eq { s1 } else { b.fresh(1)[0] };
            let plans = vec![paired(b, Some(s1)), paired(b, Some(s2))];
            let content = b.fresh(4);
            (plans, content)
        }
        HubPattern::AllPaired { k } => {
            let plans: Vec<_> = (0..k).map(|_| paired(b, None)).collect();
            // Let the hub share some outer-twig colors so the pivot color
            // sometimes lands on a twig.
            let mut content = Vec::new();
            for plan in plans.iter().take(k / 2) {
                content.push(plan.outer_list.as_ref().unwrap()[0]);
            }
            content.extend(b.fresh(k + 2 - content.len()));
            (plans, content)
        }
        HubPattern::OneBare { k } => {
            let mut plans: Vec<_> = (0..k - 1).map(|_| paired(b, None)).collect();
            plans.push(bare(b));
            let mut content = vec![plans[0].outer_list.as_ref().unwrap()[1]];
            content.extend(b.fresh(k + 1));
            (plans, content)
        }
        HubPattern::SpareHub { k, paired: np } => {
            // The two spare colors are allocated first, so truncation can
            // never shed them before the crafted twig colors.
            let spares = b.fresh(2);
            let mut plans = Vec::new();
            for _ in 0..np {
                plans.push(paired(b, None));
            }
            for _ in np..k {
                plans.push(bare(b));
            }
            let mut content = spares;
            content.extend(plans.iter().map(|p| p.inner_list[0]));
            (plans, content)
        }
        HubPattern::ScarceHub { paired: np } => {
            let k = 3;
            let mut plans = Vec::new();
            for _ in 0..np {
                plans.push(paired(b, None));
            }
            for _ in np..k {
                plans.push(bare(b));
            }
            // Hub colors drawn entirely from the twig lists.
            let pool: Vec<Color> = plans.iter().flat_map(|p| p.inner_list.clone()).collect();
            let content = pool[..k + 2].to_vec();
            (plans, content)
        }
        HubPattern::ScarceHubTight => {
            let e = b.fresh(5);
            let plans = vec![
                TwigPlan {
                    inner_id: usize::MAX,
                    inner_list: vec![e[0], e[1], e[2]],
                    outer_list: Some(vec![e[1], e[2]]),
                },
                TwigPlan {
                    inner_id: usize::MAX,
                    inner_list: vec![e[0], e[3], e[4]],
                    outer_list: Some(vec![e[3], e[4]]),
                },
                TwigPlan {
                    inner_id: usize::MAX,
                    inner_list: vec![e[1], e[3]],
                    outer_list: None,
                },
                TwigPlan {
                    inner_id: usize::MAX,
                    inner_list: vec![e[2], e[4]],
                    outer_list: None,
                },
            ];
            let mut content = e;
            content.extend(b.fresh(1));
            (plans, content)
        }
    };

    // Materialize twigs; ids stay deterministic.
    let mut twig_ids = Vec::new();
    for plan in &mut plans {
        let inner = b.vertex(plan.inner_list.clone());
        plan.inner_id = inner;
        twig_ids.push(inner);
        if let Some(outer_list) = &plan.outer_list {
            let outer = b.vertex(outer_list.clone());
            b.edge(inner, outer);
        }
    }
    (hub_content, twig_ids)
}

/// A tree assembled from chained star/broom/spider gadgets with lists
/// crafted to exercise every reduction of the tree solver: pendant-path
/// peels along an optional broom tail, then one hub configuration per
/// chained gadget. Deterministic per seed.
pub fn adversarial_tree(seed: u64) -> (Graph, ListAssignment) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = TreeBuilder::new();

    let n_targeted = rng.random_range(2..=4usize);
    let with_tail = rng.random_bool(0.5);

    let mut prev_hub: Option<usize> = None;

    if with_tail {
        // Broom: a pendant path feeding the leftmost hub. Shared color
        // blocks along the path keep the tip nested (two-twig peels);
        // per-vertex blocks break nesting (pendant-pair peels).
        let len = rng.random_range(2..=8usize);
        let shared_mode = rng.random_bool(0.5);
        let shared = b.fresh(3);
        let mut path_ids = Vec::new();
        for i in 0..len {
            let block = if shared_mode { shared.clone() } else { b.fresh(3) };
            let list = if i == 0 { block[..2].to_vec() } else { block };
            path_ids.push(b.vertex(list));
        }
        for w in path_ids.windows(2) {
            b.edge(w[0], w[1]);
        }
        // The tail hub itself: two bare twigs, untargeted lists.
        let t1_list = b.fresh(2);
        let t1 = b.vertex(t1_list);
        let t2_list = b.fresh(2);
        let t2 = b.vertex(t2_list);
        let hub_list = b.fresh(5); // degree = tail + 2 twigs + chain = 4
        let hub = b.vertex(hub_list);
        b.edge(*path_ids.last().unwrap(), hub);
        b.edge(hub, t1);
        b.edge(hub, t2);
        prev_hub = Some(hub);
    }

    for _ in 0..n_targeted {
        let pattern = *HUB_PATTERNS.choose(&mut rng).expect("non-empty");
        let (content, twig_ids) = craft_hub(&mut b, pattern);
        let mut list = content;
        if prev_hub.is_some() {
            // One chain edge on each side: a single pad absorbs the
            // truncation that happens when the left neighbor peels.
            list.push(b.pad());
        }
        list.sort_unstable();
        let hub = b.vertex(list);
        for x in twig_ids {
            b.edge(hub, x);
        }
        if let Some(left) = prev_hub {
            b.edge(left, hub);
        }
        prev_hub = Some(hub);
    }

    // Terminal spider: three paired twigs, consumed last.
    let mut twigs = Vec::new();
    for _ in 0..3 {
        let spare = b.fresh(1)[0];
        let shared = b.fresh(2);
        let mut inner_list = vec![spare, shared[0], shared[1]];
        inner_list.sort_unstable();
        let inner = b.vertex(inner_list);
        let outer = b.vertex(shared);
        b.edge(inner, outer);
        twigs.push(inner);
    }
    let mut list = b.fresh(4); // degree 4: three twigs + chain
    list.push(b.pad());
    list.sort_unstable();
    let terminal = b.vertex(list);
    for x in twigs {
        b.edge(terminal, x);
    }
    b.edge(prev_hub.expect("at least one targeted hub"), terminal);

    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degeneracy_ordering;
    use crate::oracle::{brute_force_pcf, SearchBudget, SearchOutcome};

    #[test]
    fn star_matches_construction() {
        let inst = gen_star(3).unwrap();
        assert_eq!(inst.lists.list(0), &[2, 3]);
        let inst = gen_star(5).unwrap();
        assert_eq!(inst.graph.degree(0), 4);
        assert_eq!(inst.lists.list(0).len(), 4);
        for v in 1..5 {
            assert_eq!(inst.lists.list(v), &[1]);
        }
        assert!(gen_star(2).is_err());
    }

    #[test]
    fn star_lists_meet_degree_exactly() {
        for n in 3..=10 {
            let inst = gen_star(n).unwrap();
            for v in inst.graph.vertices() {
                assert_eq!(inst.lists.list(v).len(), inst.graph.degree(v));
            }
        }
    }

    #[test]
    fn star_unsolvable_small() {
        for n in 3..=7 {
            let inst = gen_star(n).unwrap();
            assert_eq!(
                brute_force_pcf(&inst.graph, &inst.lists, &SearchBudget::default()),
                SearchOutcome::Unsolvable
            );
        }
    }

    #[test]
    fn flower_matches_construction() {
        let inst = gen_flower(1).unwrap();
        assert_eq!(inst.graph.vertex_count(), 4);
        assert_eq!(inst.lists.list(0), &[1, 2, 3]);

        let inst = gen_flower(2).unwrap();
        assert_eq!(inst.graph.vertex_count(), 7);
        assert_eq!(inst.graph.degree(0), 4);
        assert_eq!(inst.lists.list(0).len(), 5);
        assert_eq!(inst.lists.list(4), &[1, 4, 5]);
    }

    #[test]
    fn flower_lists_meet_degree_plus_one_exactly() {
        for n in 1..=10 {
            let inst = gen_flower(n).unwrap();
            for v in inst.graph.vertices() {
                assert_eq!(inst.lists.list(v).len(), inst.graph.degree(v) + 1);
            }
            assert_eq!(degeneracy_ordering(&inst.graph).degeneracy(), 2);
        }
    }

    #[test]
    fn flower_unsolvable_small() {
        for n in 1..=2 {
            let inst = gen_flower(n).unwrap();
            assert_eq!(
                brute_force_pcf(&inst.graph, &inst.lists, &SearchBudget::default()),
                SearchOutcome::Unsolvable
            );
        }
    }

    #[test]
    fn c5_gadget_unsolvable_but_barely() {
        let inst = gen_c5_uniform();
        assert_eq!(inst.graph.vertex_count(), 5);
        assert!(inst.graph.vertices().all(|v| inst.lists.list(v).len() == 4));
        assert_eq!(
            brute_force_pcf(&inst.graph, &inst.lists, &SearchBudget::default()),
            SearchOutcome::Unsolvable
        );
        // Widening any single list makes it solvable.
        let mut lists: Vec<Vec<Color>> = inst.lists.iter().map(<[Color]>::to_vec).collect();
        lists[0].push(5);
        let widened = ListAssignment::new(lists).unwrap();
        assert!(matches!(
            brute_force_pcf(&inst.graph, &widened, &SearchBudget::default()),
            SearchOutcome::Solution(_)
        ));
    }

    #[test]
    fn random_tree_is_a_tree_and_reproducible() {
        assert_eq!(random_tree(1, 7).vertex_count(), 1);
        assert_eq!(random_tree(2, 7).edge_count(), 1);
        for n in [3, 10, 37] {
            for seed in 0..20 {
                let t = random_tree(n, seed);
                assert!(t.is_tree(), "n={n} seed={seed}");
            }
        }
        assert_eq!(random_tree(20, 99), random_tree(20, 99));
    }

    #[test]
    fn random_degenerate_respects_bound() {
        for (d, seed) in [(1, 0), (2, 1), (3, 2), (4, 3)] {
            let g = random_degenerate(30, d, seed);
            assert!(degeneracy_ordering(&g).degeneracy() <= d);
        }
        assert!(random_degenerate(25, 1, 5).is_forest());
        assert_eq!(random_degenerate(25, 3, 8), random_degenerate(25, 3, 8));
    }

    #[test]
    fn random_lists_have_requested_sizes() {
        let g = random_tree(12, 3);
        let lists = random_list_assignment(&g, 1, 30, 4).unwrap();
        for v in g.vertices() {
            assert_eq!(lists.list(v).len(), g.degree(v) + 1);
        }
        assert_eq!(
            random_list_assignment(&g, 1, 30, 4).unwrap(),
            random_list_assignment(&g, 1, 30, 4).unwrap()
        );
        assert!(random_list_assignment(&g, 1, 2, 4).is_err());
    }

    #[test]
    fn adversarial_trees_are_trees_with_exact_lists() {
        for seed in 0..50 {
            let (t, lists) = adversarial_tree(seed);
            assert!(t.is_tree(), "seed {seed}");
            for v in t.vertices() {
                assert_eq!(lists.list(v).len(), t.degree(v) + 1, "seed {seed} vertex {v}");
            }
        }
        assert_eq!(adversarial_tree(11).0, adversarial_tree(11).0);
    }
}
