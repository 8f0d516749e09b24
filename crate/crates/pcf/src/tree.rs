//! Constructive PCF coloring of trees from lists of size `deg(v) + 1`.
//!
//! Every tree admits a proper conflict-free coloring from such lists. The
//! solver realizes this bound by peeling structure off the tree, coloring
//! the rest recursively, and extending:
//!
//! - `R1`: a pendant pair `leaf–mid` whose leaf list is not nested in the
//!   mid list peels off; the spare leaf color is banned at the attachment
//!   vertex during recursion.
//! - `R2`: a chain `leaf–mid1–mid2–anchor` with nested leaf list peels
//!   three vertices; a mid color the leaf lacks is banned at the anchor and
//!   later placed next to the leaf.
//! - `V0`: when no chain is available, some hub of degree at least 3 has
//!   only single- and two-vertex components hanging off it besides one
//!   trunk. Five cases, keyed by the twig counts and how the hub's list
//!   overlaps the twig lists, extend a recursive coloring of the trunk.
//!
//! Lists are truncated to exactly `deg(v) + 1` smallest colors at every
//! recursion entry; a coloring from truncated lists is a coloring from the
//! originals. Each returned coloring is re-verified by [`check_pcf`] before
//! it leaves [`tree_pcf_color`].

use std::collections::BTreeMap;
use std::fmt;

use crate::coloring::{check_pcf, unique_colors, validate_lists, Color, Coloring, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMap};

/// Which of the five hub configurations applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    /// The hub has degree exactly 3 (two twigs).
    Case1,
    /// At least three twigs, all paired.
    Case2,
    /// At least three twigs, exactly one bare.
    Case3,
    /// At least two bare twigs and the hub list has two or more colors no
    /// twig list contains.
    Case4,
    /// At least two bare twigs and at most one hub color outside the twig
    /// lists.
    Case5,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::Case1 => "Case1",
            CaseTag::Case2 => "Case2",
            CaseTag::Case3 => "Case3",
            CaseTag::Case4 => "Case4",
            CaseTag::Case5 => "Case5",
        };
        f.write_str(s)
    }
}

/// One component hanging off the hub: `inner` is adjacent to the hub;
/// `outer` is the second vertex when the component is a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pendant {
    pub inner: usize,
    pub outer: Option<usize>,
}

/// A hub `v0` of degree at least 3 whose removal leaves only `K1`/`K2`
/// components besides the trunk containing `trunk_root`. Pendants are
/// ordered paired-first, ascending by inner vertex within each group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V0Config {
    pub v0: usize,
    pub trunk_root: usize,
    pub pendants: Vec<Pendant>,
    pub case: CaseTag,
}

impl V0Config {
    /// Number of twigs; equals `deg(v0) - 1`.
    pub fn k(&self) -> usize {
        self.pendants.len()
    }

    /// Number of paired twigs.
    pub fn paired(&self) -> usize {
        self.pendants.iter().filter(|p| p.outer.is_some()).count()
    }
}

/// The structural move [`find_reduction`] selects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    /// At most two vertices: color directly.
    Base,
    /// The whole tree is a three-vertex path: color directly.
    Base3,
    /// Peel `leaf` and `mid`; `pinned` is a leaf color the mid lacks and
    /// becomes the leaf's color, banned at `anchor` during recursion.
    R1 {
        leaf: usize,
        mid: usize,
        anchor: usize,
        pinned: Color,
    },
    /// Peel `leaf`, `mid1`, `mid2` along a degree-(1,2,2) chain; `withheld`
    /// is a `mid1` color the leaf lacks, banned at `anchor` and placed on
    /// `mid1` or `mid2`.
    R2 {
        leaf: usize,
        mid1: usize,
        mid2: usize,
        anchor: usize,
        withheld: Color,
    },
    /// Peel a hub and its twigs, recursing on the trunk.
    V0(V0Config),
}

/// What a trace step did, for audit output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepKind {
    Base,
    Base3,
    R1,
    R2,
    V0(CaseTag),
}

/// One applied reduction, with the removed (or directly colored) vertices
/// in the ids of the original input tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub kind: StepKind,
    pub removed: Vec<usize>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StepKind::Base => write!(f, "Base removed={:?}", self.removed),
            StepKind::Base3 => write!(f, "Base3 removed={:?}", self.removed),
            StepKind::R1 => write!(f, "R1 removed={:?}", self.removed),
            StepKind::R2 => write!(f, "R2 removed={:?}", self.removed),
            StepKind::V0(tag) => write!(f, "V0 case={tag} removed={:?}", self.removed),
        }
    }
}

/// The reduction sequence applied by one solver run, in peel order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn case_count(&self, tag: CaseTag) -> usize {
        self.steps
            .iter()
            .filter(|s| s.kind == StepKind::V0(tag))
            .count()
    }

    pub fn kind_count(&self, kind: &StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind == *kind).count()
    }
}

/// Truncates every list to its `deg(v) + 1` smallest colors. Any PCF
/// coloring from the truncated lists is one from the originals. Errors if
/// some list is smaller than `deg(v) + 1`.
pub fn normalize_lists(t: &Graph, lists: &ListAssignment) -> Result<ListAssignment> {
    if let Err(v) = validate_lists(t, lists, 1) {
        return Err(Error::InvalidInput(format!(
            "list at vertex {v} has fewer than deg+1 colors"
        )));
    }
    let truncated: Vec<Vec<Color>> = t
        .vertices()
        .map(|v| lists.list(v)[..t.degree(v) + 1].to_vec())
        .collect();
    ListAssignment::new(truncated)
}

fn other_neighbor(t: &Graph, v: usize, not: usize) -> usize {
    debug_assert_eq!(t.degree(v), 2);
    let nbrs = t.neighbors(v);
    if nbrs[0] == not {
        nbrs[1]
    } else {
        nbrs[0]
    }
}

/// First color of `list` not banned. `banned` entries may be absent.
fn choose(list: &[Color], banned: &[Option<Color>]) -> Option<Color> {
    list.iter()
        .copied()
        .find(|&c| !banned.contains(&Some(c)))
}

fn set_minus(list: &[Color], without: &[Color]) -> Vec<Color> {
    list.iter()
        .copied()
        .filter(|c| !without.contains(c))
        .collect()
}

fn dump_instance(t: &Graph, lists: &ListAssignment, names: &[usize]) -> String {
    format!(
        "original-ids={names:?}\n{}{}",
        t.to_edge_list(),
        lists.to_text()
    )
}

/// Finds the next reduction for a tree whose lists are normalized to
/// exactly `deg(v) + 1` colors. Search order: the two-vertex base case,
/// then pendant-pair peels (`R1`) anywhere, the three-vertex base case,
/// degree-(1,2,2) chains (`R2`), and finally the hub scan. When none
/// applies the tree would refute the underlying theorem, so a
/// `TheoremViolation` carrying the instance is returned; this must never
/// fire.
pub fn find_reduction(t: &Graph, lists: &ListAssignment) -> Result<Reduction> {
    let n = t.vertex_count();
    debug_assert!(t.is_tree() || n <= 2);
    debug_assert!(t.vertices().all(|v| lists.list(v).len() == t.degree(v) + 1));

    if n <= 2 {
        return Ok(Reduction::Base);
    }

    // R1: any pendant pair whose leaf list escapes the mid list. On a
    // three-vertex path this may fire with the far end as anchor; the
    // direct base case below handles the nested-list remainder.
    for leaf in t.vertices().filter(|&v| t.degree(v) == 1) {
        let mid = t.neighbors(leaf)[0];
        if t.degree(mid) != 2 {
            continue;
        }
        let anchor = other_neighbor(t, mid, leaf);
        let escape = set_minus(lists.list(leaf), lists.list(mid));
        if let Some(&pinned) = escape.first() {
            return Ok(Reduction::R1 {
                leaf,
                mid,
                anchor,
                pinned,
            });
        }
    }

    if n == 3 {
        return Ok(Reduction::Base3);
    }

    // R2: any chain with degrees (1, 2, 2). The R1 pass found no escaping
    // leaf, so the leaf list sits inside the mid list and the size gap
    // leaves exactly one withheld color.
    for leaf in t.vertices().filter(|&v| t.degree(v) == 1) {
        let mid1 = t.neighbors(leaf)[0];
        if t.degree(mid1) != 2 {
            continue;
        }
        let mid2 = other_neighbor(t, mid1, leaf);
        if t.degree(mid2) != 2 {
            continue;
        }
        let anchor = other_neighbor(t, mid2, mid1);
        let withheld = set_minus(lists.list(mid1), lists.list(leaf))
            .first()
            .copied()
            .ok_or_else(|| {
                Error::Contract(format!(
                    "leaf {leaf} list not nested in mid {mid1} after R1 pass"
                ))
            })?;
        return Ok(Reduction::R2 {
            leaf,
            mid1,
            mid2,
            anchor,
            withheld,
        });
    }

    // Hub scan: smallest vertex of degree >= 3 whose removal leaves at
    // most one component larger than two vertices.
    for v0 in t.vertices().filter(|&v| t.degree(v) >= 3) {
        if let Some(config) = hub_config(t, lists, v0) {
            return Ok(Reduction::V0(config));
        }
    }

    let names: Vec<usize> = t.vertices().collect();
    Err(Error::TheoremViolation(format!(
        "no reduction applies; instance:\n{}",
        dump_instance(t, lists, &names)
    )))
}

/// Components of `t - v0`, each as (neighbor of v0 inside, vertex list).
fn components_off(t: &Graph, v0: usize) -> Vec<(usize, Vec<usize>)> {
    let mut seen = vec![false; t.vertex_count()];
    seen[v0] = true;
    let mut out = Vec::new();
    for &root in t.neighbors(v0) {
        if seen[root] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &u in t.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        comp.sort_unstable();
        out.push((root, comp));
    }
    out
}

fn hub_config(t: &Graph, lists: &ListAssignment, v0: usize) -> Option<V0Config> {
    let comps = components_off(t, v0);
    if comps.iter().filter(|(_, c)| c.len() > 2).count() > 1 {
        return None;
    }
    // Trunk: the unique big component, or on ties of order the one with
    // the smallest vertex.
    let trunk_idx = comps
        .iter()
        .enumerate()
        .max_by(|(_, (_, a)), (_, (_, b))| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        .map(|(i, _)| i)
        .expect("deg(v0) >= 3 gives components");
    let trunk_root = comps[trunk_idx].0;

    let mut paired = Vec::new();
    let mut bare = Vec::new();
    for (i, (root, comp)) in comps.iter().enumerate() {
        if i == trunk_idx {
            continue;
        }
        match comp.len() {
            1 => bare.push(Pendant {
                inner: *root,
                outer: None,
            }),
            2 => {
                let outer = if comp[0] == *root { comp[1] } else { comp[0] };
                paired.push(Pendant {
                    inner: *root,
                    outer: Some(outer),
                });
            }
            _ => return None,
        }
    }
    paired.sort_by_key(|p| p.inner);
    bare.sort_by_key(|p| p.inner);
    let ell = paired.len();
    let mut pendants = paired;
    pendants.append(&mut bare);
    let k = pendants.len();
    debug_assert_eq!(k + 1, t.degree(v0));
    if k < 2 {
        return None;
    }

    let case = if k == 2 {
        CaseTag::Case1
    } else if ell == k {
        CaseTag::Case2
    } else if ell == k - 1 {
        CaseTag::Case3
    } else if hub_exclusive_colors(lists, v0, &pendants).len() >= 2 {
        CaseTag::Case4
    } else {
        CaseTag::Case5
    };
    Some(V0Config {
        v0,
        trunk_root,
        pendants,
        case,
    })
}

/// Hub colors that appear on no twig inner list, sorted.
fn hub_exclusive_colors(lists: &ListAssignment, v0: usize, pendants: &[Pendant]) -> Vec<Color> {
    lists
        .list(v0)
        .iter()
        .copied()
        .filter(|c| !pendants.iter().any(|p| lists.list(p.inner).contains(c)))
        .collect()
}

/// Picks the pivot color for a scarce hub (`Case5`) together with the twig
/// indices whose inner lists hold it. The pivot is held by at most two
/// twigs; when every twig color is held twice and there are exactly four
/// twigs, the pivot is chosen so its larger holder is a bare twig.
pub fn select_gamma_case5(config: &V0Config, lists: &ListAssignment) -> (Color, Vec<usize>) {
    debug_assert_eq!(config.case, CaseTag::Case5);
    let k = config.k();
    let ell = config.paired();
    let mut holders: BTreeMap<Color, Vec<usize>> = BTreeMap::new();
    for (i, p) in config.pendants.iter().enumerate() {
        for &c in lists.list(p.inner) {
            holders.entry(c).or_default().push(i);
        }
    }
    debug_assert!(holders.len() > k, "scarce hub needs k+1 twig colors");
    let min = holders.values().map(Vec::len).min().expect("twigs exist");
    debug_assert!(min <= 2, "some color is held by at most two twigs");
    if min == 1 {
        let (&c, js) = holders
            .iter()
            .find(|(_, js)| js.len() == 1)
            .expect("min == 1");
        return (c, js.clone());
    }
    if k == 4 {
        // Every color doubly held forces four twigs, two paired; some
        // color must touch a bare twig.
        let (&c, js) = holders
            .iter()
            .find(|(_, js)| js.len() == 2 && js[1] >= ell)
            .expect("a doubly-held color touches a bare twig");
        return (c, js.clone());
    }
    let (&c, js) = holders
        .iter()
        .find(|(_, js)| js.len() == min)
        .expect("minimum attained");
    (c, js.clone())
}

// ---------------------------------------------------------------------
// Recursive solver
// ---------------------------------------------------------------------

/// Lists for the surviving vertices, in new-id order, with one color
/// optionally removed from one old vertex's list.
fn project_lists(
    lists: &ListAssignment,
    map: &VertexMap,
    edit: Option<(usize, Color)>,
) -> Vec<Vec<Color>> {
    map.survivors()
        .iter()
        .map(|&old| {
            let mut list = lists.list(old).to_vec();
            if let Some((v, c)) = edit {
                if v == old {
                    list.retain(|&x| x != c);
                }
            }
            list
        })
        .collect()
}

/// Truncation for recursion steps; a deficit here means a bug in the
/// reduction bookkeeping, not bad input.
fn renormalize(sub: &Graph, raw: Vec<Vec<Color>>) -> Result<ListAssignment> {
    let lists = ListAssignment::new(raw)?;
    normalize_lists(sub, &lists).map_err(|e| Error::Contract(format!("reduction left a deficit: {e}")))
}

fn lift(phi_sub: &Coloring, map: &VertexMap, into: &mut Coloring) {
    for (new, &old) in map.survivors().iter().enumerate() {
        if let Some(c) = phi_sub.get(new) {
            into.set(old, c);
        }
    }
}

struct SubSolve {
    /// Color of the attachment vertex in the sub-solution.
    anchor_color: Color,
    /// Smallest color unique in the attachment vertex's sub-neighborhood,
    /// absent when it is isolated there.
    anchor_witness: Option<Color>,
}

/// Removes `removed`, optionally bans one color at the anchor, solves the
/// rest, and lifts the sub-coloring into `phi`.
fn solve_rest(
    t: &Graph,
    lists: &ListAssignment,
    names: &[usize],
    trace: &mut Vec<TraceStep>,
    removed: &[usize],
    (anchor, edit): (usize, Option<Color>),
    phi: &mut Coloring,
) -> Result<SubSolve> {
    let (sub, map) = t.delete_vertices(removed)?;
    let raw = project_lists(lists, &map, edit.map(|c| (anchor, c)));
    let sub_lists = renormalize(&sub, raw)?;
    let sub_names: Vec<usize> = map.survivors().iter().map(|&old| names[old]).collect();
    let sub_phi = solve(&sub, &sub_lists, &sub_names, trace)?;
    let anchor_new = map.to_sub(anchor).expect("anchor survives");
    let anchor_color = sub_phi.get(anchor_new).expect("sub-coloring is total");
    let anchor_witness = unique_colors(&sub, &sub_phi, anchor_new).first().copied();
    lift(&sub_phi, &map, phi);
    Ok(SubSolve {
        anchor_color,
        anchor_witness,
    })
}

fn solve(
    t: &Graph,
    lists: &ListAssignment,
    names: &[usize],
    trace: &mut Vec<TraceStep>,
) -> Result<Coloring> {
    let reduction = find_reduction(t, lists)?;
    let phi = match &reduction {
        Reduction::Base => {
            trace.push(TraceStep {
                kind: StepKind::Base,
                removed: names.to_vec(),
            });
            base_small(t, lists)
        }
        Reduction::Base3 => {
            trace.push(TraceStep {
                kind: StepKind::Base3,
                removed: names.to_vec(),
            });
            base_path3(t, lists)
        }
        Reduction::R1 { .. } => apply_r1_inner(t, lists, &reduction, names, trace)?,
        Reduction::R2 { .. } => apply_r2_inner(t, lists, &reduction, names, trace)?,
        Reduction::V0(config) => extend_v0_inner(t, lists, config, names, trace)?,
    };
    debug_assert!(phi.is_total());
    Ok(phi)
}

/// Trees on at most two vertices; lists have exactly deg+1 colors.
fn base_small(t: &Graph, lists: &ListAssignment) -> Coloring {
    let mut phi = Coloring::empty(t.vertex_count());
    match t.vertex_count() {
        0 => {}
        1 => phi.set(0, lists.list(0)[0]),
        _ => {
            let first = lists.list(0)[0];
            phi.set(0, first);
            let second = choose(lists.list(1), &[Some(first)]).expect("two colors minus one");
            phi.set(1, second);
        }
    }
    phi
}

/// Direct coloring of a three-vertex path: distinct end colors, middle
/// avoiding both. Sizes (2, 3, 2) always leave a choice.
fn base_path3(t: &Graph, lists: &ListAssignment) -> Coloring {
    let mid = t.vertices().find(|&v| t.degree(v) == 2).expect("P3 middle");
    let ends: Vec<usize> = t.vertices().filter(|&v| v != mid).collect();
    let mut phi = Coloring::empty(3);
    let a = lists.list(ends[0])[0];
    let b = choose(lists.list(ends[1]), &[Some(a)]).expect("two colors minus one");
    let c = choose(lists.list(mid), &[Some(a), Some(b)]).expect("three colors minus two");
    phi.set(ends[0], a);
    phi.set(ends[1], b);
    phi.set(mid, c);
    phi
}

fn apply_r1_inner(
    t: &Graph,
    lists: &ListAssignment,
    reduction: &Reduction,
    names: &[usize],
    trace: &mut Vec<TraceStep>,
) -> Result<Coloring> {
    let &Reduction::R1 {
        leaf,
        mid,
        anchor,
        pinned,
    } = reduction
    else {
        return Err(Error::InvalidInput("not an R1 reduction".into()));
    };
    debug_assert!(!lists.list(mid).contains(&pinned));
    trace.push(TraceStep {
        kind: StepKind::R1,
        removed: vec![names[leaf], names[mid]],
    });
    let mut phi = Coloring::empty(t.vertex_count());
    let sub = solve_rest(
        t,
        lists,
        names,
        trace,
        &[leaf, mid],
        (anchor, Some(pinned)),
        &mut phi,
    )?;
    phi.set(leaf, pinned);
    let mid_color = choose(
        lists.list(mid),
        &[Some(sub.anchor_color), sub.anchor_witness],
    )
    .ok_or_else(|| {
        Error::TheoremViolation(format!(
            "R1 mid has no color; instance:\n{}",
            dump_instance(t, lists, names)
        ))
    })?;
    phi.set(mid, mid_color);
    Ok(phi)
}

fn apply_r2_inner(
    t: &Graph,
    lists: &ListAssignment,
    reduction: &Reduction,
    names: &[usize],
    trace: &mut Vec<TraceStep>,
) -> Result<Coloring> {
    let &Reduction::R2 {
        leaf,
        mid1,
        mid2,
        anchor,
        withheld,
    } = reduction
    else {
        return Err(Error::InvalidInput("not an R2 reduction".into()));
    };
    debug_assert!(!lists.list(leaf).contains(&withheld));
    trace.push(TraceStep {
        kind: StepKind::R2,
        removed: vec![names[leaf], names[mid1], names[mid2]],
    });
    let stuck = |what: &str| {
        Error::TheoremViolation(format!(
            "R2 {what} has no color; instance:\n{}",
            dump_instance(t, lists, names)
        ))
    };
    let mut phi = Coloring::empty(t.vertex_count());
    let sub = solve_rest(
        t,
        lists,
        names,
        trace,
        &[leaf, mid1, mid2],
        (anchor, Some(withheld)),
        &mut phi,
    )?;
    let beta = sub.anchor_color;
    debug_assert_ne!(beta, withheld);
    let mid2_color =
        choose(lists.list(mid2), &[Some(beta), sub.anchor_witness]).ok_or_else(|| stuck("mid2"))?;
    phi.set(mid2, mid2_color);
    // One of the two mids carries the withheld color, which the leaf lacks.
    let mid1_color = if mid2_color != withheld {
        withheld
    } else {
        choose(lists.list(mid1), &[Some(mid2_color), Some(beta)]).ok_or_else(|| stuck("mid1"))?
    };
    phi.set(mid1, mid1_color);
    debug_assert!(mid1_color == withheld || mid2_color == withheld);
    let leaf_color = choose(lists.list(leaf), &[Some(mid1_color), Some(mid2_color)])
        .ok_or_else(|| stuck("leaf"))?;
    phi.set(leaf, leaf_color);
    Ok(phi)
}

fn extend_v0_inner(
    t: &Graph,
    lists: &ListAssignment,
    config: &V0Config,
    names: &[usize],
    trace: &mut Vec<TraceStep>,
) -> Result<Coloring> {
    let v0 = config.v0;
    let ell = config.paired();
    let k = config.k();
    let pendants = &config.pendants;

    let mut removed = vec![v0];
    for p in pendants {
        removed.push(p.inner);
        removed.extend(p.outer);
    }
    trace.push(TraceStep {
        kind: StepKind::V0(config.case),
        removed: removed.iter().map(|&v| names[v]).collect(),
    });
    let stuck = |what: &str| {
        Error::TheoremViolation(format!(
            "{} {what} has no color; instance:\n{}",
            config.case,
            dump_instance(t, lists, names)
        ))
    };

    // The spare color of a paired twig: the one inner color its outer
    // partner lacks. Pendant-pair peels ran first, so the outer list is
    // nested and exactly one color remains.
    let spare = |i: usize| -> Result<Color> {
        let p = &pendants[i];
        let outer = p.outer.expect("paired twig");
        set_minus(lists.list(p.inner), lists.list(outer))
            .first()
            .copied()
            .ok_or_else(|| Error::Contract(format!("twig {i} has no spare color")))
    };

    // Case-specific color banned from the trunk root before recursion.
    let mut case5_pivot: Option<(Color, Vec<usize>)> = None;
    let mut case4_pivot: Option<Color> = None;
    let trunk_edit: Option<Color> = match config.case {
        CaseTag::Case1 if ell == 2 => {
            let (s0, s1) = (spare(0)?, spare(1)?);
            if s0 == s1 {
                Some(s0)
            } else {
                None
            }
        }
        CaseTag::Case4 => {
            let exclusive = hub_exclusive_colors(lists, v0, pendants);
            let pivot = exclusive[0];
            case4_pivot = Some(pivot);
            Some(pivot)
        }
        CaseTag::Case5 => {
            let (pivot, holders) = select_gamma_case5(config, lists);
            case5_pivot = Some((pivot, holders));
            Some(pivot)
        }
        _ => None,
    };

    let mut phi = Coloring::empty(t.vertex_count());
    let sub = solve_rest(
        t,
        lists,
        names,
        trace,
        &removed,
        (config.trunk_root, trunk_edit),
        &mut phi,
    )?;
    let alpha = sub.anchor_color;
    let beta = sub.anchor_witness;

    // Shorthand for coloring the twigs not handled specially: outer first
    // (avoiding the hub), then inner (avoiding hub and outer), bare inner
    // avoiding only the hub.
    let color_remaining_twigs =
        |phi: &mut Coloring, hub_color: Color, skip: &[usize]| -> Result<()> {
            for (i, p) in pendants.iter().enumerate() {
                if skip.contains(&i) {
                    continue;
                }
                match p.outer {
                    Some(outer) => {
                        let oc = choose(lists.list(outer), &[Some(hub_color)])
                            .ok_or_else(|| stuck("twig outer"))?;
                        phi.set(outer, oc);
                        let ic = choose(lists.list(p.inner), &[Some(hub_color), Some(oc)])
                            .ok_or_else(|| stuck("twig inner"))?;
                        phi.set(p.inner, ic);
                    }
                    None => {
                        let ic = choose(lists.list(p.inner), &[Some(hub_color)])
                            .ok_or_else(|| stuck("twig inner"))?;
                        phi.set(p.inner, ic);
                    }
                }
            }
            Ok(())
        };

    match config.case {
        CaseTag::Case1 => {
            match ell {
                0 | 1 => {
                    // The last pendant is bare in both shapes; it avoids
                    // the trunk color so the hub sees two distinct colors.
                    let far = &pendants[1];
                    debug_assert!(far.outer.is_none());
                    let far_color =
                        choose(lists.list(far.inner), &[Some(alpha)]).ok_or_else(|| stuck("far twig"))?;
                    phi.set(far.inner, far_color);
                    let hub_color = choose(lists.list(v0), &[Some(alpha), beta, Some(far_color)])
                        .ok_or_else(|| stuck("hub"))?;
                    phi.set(v0, hub_color);
                    let near = &pendants[0];
                    match near.outer {
                        None => {
                            let ic = choose(lists.list(near.inner), &[Some(hub_color)])
                                .ok_or_else(|| stuck("near twig"))?;
                            phi.set(near.inner, ic);
                        }
                        Some(outer) => {
                            let oc = choose(lists.list(outer), &[Some(hub_color)])
                                .ok_or_else(|| stuck("near outer"))?;
                            phi.set(outer, oc);
                            let ic = choose(lists.list(near.inner), &[Some(hub_color), Some(oc)])
                                .ok_or_else(|| stuck("near inner"))?;
                            phi.set(near.inner, ic);
                        }
                    }
                }
                _ => {
                    // Both twigs paired. The recursion banned the shared
                    // spare, so some twig's spare differs from the trunk
                    // color; that twig takes its spare.
                    let (s0, s1) = (spare(0)?, spare(1)?);
                    let a = if s0 != alpha {
                        0
                    } else if s1 != alpha {
                        1
                    } else {
                        return Err(stuck("spare-colored twig"));
                    };
                    let b = 1 - a;
                    let sa = if a == 0 { s0 } else { s1 };
                    phi.set(pendants[a].inner, sa);
                    let hub_color = choose(lists.list(v0), &[Some(alpha), beta, Some(sa)])
                        .ok_or_else(|| stuck("hub"))?;
                    phi.set(v0, hub_color);
                    let outer_a = pendants[a].outer.expect("paired");
                    let oa = choose(lists.list(outer_a), &[Some(hub_color)])
                        .ok_or_else(|| stuck("outer"))?;
                    phi.set(outer_a, oa);
                    let outer_b = pendants[b].outer.expect("paired");
                    let ob = choose(lists.list(outer_b), &[Some(hub_color)])
                        .ok_or_else(|| stuck("outer"))?;
                    phi.set(outer_b, ob);
                    let ib = choose(lists.list(pendants[b].inner), &[Some(hub_color), Some(ob)])
                        .ok_or_else(|| stuck("inner"))?;
                    phi.set(pendants[b].inner, ib);
                }
            }
            debug_assert!(!unique_colors(t, &phi, v0).is_empty());
        }

        CaseTag::Case2 | CaseTag::Case3 => {
            // Pivot: hub color avoiding the trunk color and witness, held
            // by the fewest paired-twig outer lists.
            let banned = [Some(alpha), beta];
            let mut best: Option<(usize, Color, Vec<usize>)> = None;
            for &c in lists.list(v0) {
                if banned.contains(&Some(c)) {
                    continue;
                }
                let hit: Vec<usize> = (0..ell)
                    .filter(|&i| lists.list(pendants[i].outer.expect("paired")).contains(&c))
                    .collect();
                if best.as_ref().is_none_or(|(n, _, _)| hit.len() < *n) {
                    best = Some((hit.len(), c, hit));
                }
            }
            let (_, pivot, hit) = best.ok_or_else(|| stuck("pivot"))?;
            if config.case == CaseTag::Case2 {
                debug_assert!(hit.len() <= 2);
            } else {
                debug_assert!(hit.len() <= 1);
            }
            phi.set(v0, pivot);
            for &i in &hit {
                let p = &pendants[i];
                let outer = p.outer.expect("paired");
                let oc = choose(lists.list(outer), &[Some(pivot)]).ok_or_else(|| stuck("outer"))?;
                phi.set(outer, oc);
                let ic = choose(lists.list(p.inner), &[Some(pivot), Some(oc)])
                    .ok_or_else(|| stuck("inner"))?;
                phi.set(p.inner, ic);
            }
            if config.case == CaseTag::Case3 {
                let bare = &pendants[k - 1];
                debug_assert!(bare.outer.is_none());
                let ic =
                    choose(lists.list(bare.inner), &[Some(pivot)]).ok_or_else(|| stuck("bare"))?;
                phi.set(bare.inner, ic);
            }

            // The colored hub neighbors decide how the rest keep a color
            // unique at the hub.
            let seen: Vec<Color> = t
                .neighbors(v0)
                .iter()
                .filter_map(|&u| phi.get(u))
                .collect();
            let rest: Vec<usize> = (0..ell).filter(|i| !hit.contains(i)).collect();
            let all_equal = seen.iter().all(|&c| c == alpha);
            if all_equal {
                let lead = *rest.first().ok_or_else(|| stuck("lead twig"))?;
                let lead_color = choose(lists.list(pendants[lead].inner), &[Some(pivot), Some(alpha)])
                    .ok_or_else(|| stuck("lead inner"))?;
                phi.set(pendants[lead].inner, lead_color);
                for &i in rest.iter().skip(1) {
                    let ic = choose(lists.list(pendants[i].inner), &[Some(pivot), Some(lead_color)])
                        .ok_or_else(|| stuck("inner"))?;
                    phi.set(pendants[i].inner, ic);
                }
            } else {
                let unique = smallest_unique(&seen).ok_or_else(|| stuck("unique neighbor color"))?;
                for &i in &rest {
                    let ic = choose(lists.list(pendants[i].inner), &[Some(pivot), Some(unique)])
                        .ok_or_else(|| stuck("inner"))?;
                    phi.set(pendants[i].inner, ic);
                }
            }
            for &i in &rest {
                let p = &pendants[i];
                let outer = p.outer.expect("paired");
                let oc = choose(lists.list(outer), &[phi.get(p.inner)])
                    .ok_or_else(|| stuck("outer"))?;
                phi.set(outer, oc);
            }
            debug_assert!(!unique_colors(t, &phi, v0).is_empty());
        }

        CaseTag::Case4 => {
            let pivot = case4_pivot.expect("set before recursion");
            let exclusive = hub_exclusive_colors(lists, v0, pendants);
            // Nesting puts outer lists inside inner lists, so exclusive
            // hub colors miss the outer twigs too.
            debug_assert!(pendants.iter().all(|p| p
                .outer
                .is_none_or(|o| !lists.list(o).iter().any(|c| exclusive.contains(c)))));
            match choose(&exclusive, &[Some(alpha), beta]) {
                Some(hub_color) => {
                    // Hub color unknown to every twig: the trunk color
                    // stays unique at the hub once the twigs avoid it.
                    phi.set(v0, hub_color);
                    for p in pendants {
                        let ic = choose(lists.list(p.inner), &[Some(alpha)])
                            .ok_or_else(|| stuck("inner"))?;
                        phi.set(p.inner, ic);
                        if let Some(outer) = p.outer {
                            let oc = choose(lists.list(outer), &[Some(ic)])
                                .ok_or_else(|| stuck("outer"))?;
                            phi.set(outer, oc);
                        }
                    }
                }
                None => {
                    // Every exclusive color is the trunk color or its
                    // witness; then the trunk color itself is exclusive
                    // and stays unique at the hub.
                    debug_assert!(exclusive.contains(&alpha));
                    debug_assert_eq!(beta, Some(pivot));
                    let hub_color = choose(lists.list(v0), &[Some(alpha), beta])
                        .ok_or_else(|| stuck("hub"))?;
                    phi.set(v0, hub_color);
                    color_remaining_twigs(&mut phi, hub_color, &[])?;
                }
            }
            debug_assert!(unique_colors(t, &phi, v0).contains(&alpha));
        }

        CaseTag::Case5 => {
            let (pivot, holders) = case5_pivot.expect("set before recursion");
            debug_assert!(holders.len() <= 2);
            let hub_color = if holders.len() == 1 {
                let p = &pendants[holders[0]];
                phi.set(p.inner, pivot);
                let mut outer_color = None;
                if let Some(outer) = p.outer {
                    let oc =
                        choose(lists.list(outer), &[Some(pivot)]).ok_or_else(|| stuck("outer"))?;
                    phi.set(outer, oc);
                    outer_color = Some(oc);
                }
                choose(lists.list(v0), &[Some(alpha), beta, Some(pivot), outer_color])
                    .ok_or_else(|| stuck("hub"))?
            } else if k >= 5 {
                let (p, q) = (&pendants[holders[0]], &pendants[holders[1]]);
                phi.set(p.inner, pivot);
                let q_color =
                    choose(lists.list(q.inner), &[Some(pivot)]).ok_or_else(|| stuck("co-holder"))?;
                phi.set(q.inner, q_color);
                let mut outer_colors = [None, None];
                for (slot, tw) in [p, q].into_iter().enumerate() {
                    if let Some(outer) = tw.outer {
                        let oc = choose(lists.list(outer), &[phi.get(tw.inner)])
                            .ok_or_else(|| stuck("outer"))?;
                        phi.set(outer, oc);
                        outer_colors[slot] = Some(oc);
                    }
                }
                choose(
                    lists.list(v0),
                    &[
                        Some(alpha),
                        beta,
                        Some(pivot),
                        Some(q_color),
                        outer_colors[0],
                        outer_colors[1],
                    ],
                )
                .ok_or_else(|| stuck("hub"))?
            } else {
                // Four twigs, every color doubly held: the pivot goes on
                // its bare holder, freeing a hub choice.
                let (p, q) = (&pendants[holders[0]], &pendants[holders[1]]);
                debug_assert!(q.outer.is_none());
                phi.set(q.inner, pivot);
                let p_color =
                    choose(lists.list(p.inner), &[Some(pivot)]).ok_or_else(|| stuck("co-holder"))?;
                phi.set(p.inner, p_color);
                let mut outer_color = None;
                if let Some(outer) = p.outer {
                    let oc = choose(lists.list(outer), &[Some(p_color)])
                        .ok_or_else(|| stuck("outer"))?;
                    phi.set(outer, oc);
                    outer_color = Some(oc);
                }
                choose(
                    lists.list(v0),
                    &[Some(alpha), beta, Some(pivot), Some(p_color), outer_color],
                )
                .ok_or_else(|| stuck("hub"))?
            };
            phi.set(v0, hub_color);
            color_remaining_twigs(&mut phi, hub_color, &holders)?;
            debug_assert!(unique_colors(t, &phi, v0).contains(&pivot));
        }
    }
    Ok(phi)
}

/// Smallest color occurring exactly once in `seen`.
fn smallest_unique(seen: &[Color]) -> Option<Color> {
    let mut counts: BTreeMap<Color, usize> = BTreeMap::new();
    for &c in seen {
        *counts.entry(c).or_default() += 1;
    }
    counts.into_iter().find(|&(_, n)| n == 1).map(|(c, _)| c)
}

// ---------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------

/// Applies a pendant-pair peel and completes the coloring recursively.
/// `lists` must be normalized and `reduction` must be an `R1` produced by
/// [`find_reduction`] on the same inputs.
pub fn apply_r1(t: &Graph, lists: &ListAssignment, reduction: &Reduction) -> Result<Coloring> {
    let names: Vec<usize> = t.vertices().collect();
    apply_r1_inner(t, lists, reduction, &names, &mut Vec::new())
}

/// Applies a degree-(1,2,2) chain peel and completes the coloring
/// recursively; same contract as [`apply_r1`].
pub fn apply_r2(t: &Graph, lists: &ListAssignment, reduction: &Reduction) -> Result<Coloring> {
    let names: Vec<usize> = t.vertices().collect();
    apply_r2_inner(t, lists, reduction, &names, &mut Vec::new())
}

/// Applies a hub extension and completes the coloring recursively.
/// `config` must come from [`find_reduction`] on the same normalized lists.
pub fn extend_v0(t: &Graph, lists: &ListAssignment, config: &V0Config) -> Result<Coloring> {
    let names: Vec<usize> = t.vertices().collect();
    extend_v0_inner(t, lists, config, &names, &mut Vec::new())
}

/// PCF-colors a tree from lists of size at least `deg(v) + 1`, recording
/// the reduction sequence. The result is verified by [`check_pcf`] against
/// the original lists before being returned.
pub fn tree_pcf_color_traced(
    t: &Graph,
    lists: &ListAssignment,
) -> Result<(Coloring, ReductionTrace)> {
    if !t.is_tree() {
        return Err(Error::InvalidInput("input graph is not a tree".into()));
    }
    let normalized = normalize_lists(t, lists)?;
    let names: Vec<usize> = t.vertices().collect();
    let mut steps = Vec::new();
    let phi = solve(t, &normalized, &names, &mut steps)?;
    let report = check_pcf(t, &phi, Some(lists))?;
    if !report.is_valid() {
        return Err(Error::Contract(format!(
            "solver produced an invalid coloring: {report:?}"
        )));
    }
    Ok((phi, ReductionTrace { steps }))
}

/// PCF-colors a tree from lists of size at least `deg(v) + 1`.
pub fn tree_pcf_color(t: &Graph, lists: &ListAssignment) -> Result<Coloring> {
    tree_pcf_color_traced(t, lists).map(|(phi, _)| phi)
}

/// PCF-colors a forest componentwise; isolated vertices take their
/// smallest list color.
pub fn forest_pcf_color(g: &Graph, lists: &ListAssignment) -> Result<Coloring> {
    if !g.is_forest() {
        return Err(Error::InvalidInput("input graph has a cycle".into()));
    }
    if let Err(v) = validate_lists(g, lists, 1) {
        return Err(Error::InvalidInput(format!(
            "list at vertex {v} has fewer than deg+1 colors"
        )));
    }
    let mut phi = Coloring::empty(g.vertex_count());
    for comp in g.components() {
        if comp.len() == 1 {
            phi.set(comp[0], lists.list(comp[0])[0]);
            continue;
        }
        let remove: Vec<usize> = g.vertices().filter(|v| !comp.contains(v)).collect();
        let (sub, map) = g.delete_vertices(&remove)?;
        let sub_lists = ListAssignment::new(project_lists(lists, &map, None))?;
        let sub_phi = tree_pcf_color(&sub, &sub_lists)?;
        lift(&sub_phi, &map, &mut phi);
    }
    let report = check_pcf(g, &phi, Some(lists))?;
    if !report.is_valid() {
        return Err(Error::Contract(format!(
            "forest coloring failed verification: {report:?}"
        )));
    }
    Ok(phi)
}
