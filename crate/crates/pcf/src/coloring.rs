//! Colorings, list assignments, and the conflict-free validity checker.
//!
//! A proper coloring gives adjacent vertices distinct colors. It is
//! *proper conflict-free* (PCF) when additionally every non-isolated vertex
//! sees some color exactly once in its neighborhood. [`check_pcf`] is the
//! ground truth: every solver in this crate re-verifies its output here.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Colors are positive integers; `0` is never a color.
pub type Color = u32;

/// Per-vertex finite sets of allowed colors.
///
/// Lists are stored sorted and deduplicated. Every list must be non-empty
/// and contain only positive colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<Color>>) -> Result<ListAssignment> {
        let mut cleaned = Vec::with_capacity(lists.len());
        for (v, mut list) in lists.into_iter().enumerate() {
            if list.is_empty() {
                return Err(Error::InvalidInput(format!("empty list at vertex {v}")));
            }
            if list.contains(&0) {
                return Err(Error::InvalidInput(format!(
                    "vertex {v}: colors must be positive"
                )));
            }
            list.sort_unstable();
            list.dedup();
            cleaned.push(list);
        }
        Ok(ListAssignment { lists: cleaned })
    }

    /// Number of vertices covered.
    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    /// The sorted list of vertex `v`.
    pub fn list(&self, v: usize) -> &[Color] {
        &self.lists[v]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Color]> {
        self.lists.iter().map(Vec::as_slice)
    }

    /// True iff `|L(v)| >= deg(v) + k` for every vertex.
    pub fn satisfies(&self, g: &Graph, k: usize) -> bool {
        validate_lists(g, self, k).is_ok()
    }

    /// Parses the list-assignment format: one line `v: c1 c2 ...` per
    /// vertex, `#` comments and blank lines ignored. Every vertex of
    /// `0..n` must get exactly one line.
    pub fn parse(text: &str, n: usize) -> Result<ListAssignment> {
        let mut lists: Vec<Option<Vec<Color>>> = vec![None; n];
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let (head, tail) = line.split_once(':').ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected `v: c1 c2 ...`".into(),
            })?;
            let v: usize = head.trim().parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad vertex id {:?}", head.trim()),
            })?;
            if v >= n {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("vertex {v} out of range for n = {n}"),
                });
            }
            if lists[v].is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("duplicate list for vertex {v}"),
                });
            }
            let mut colors = Vec::new();
            for field in tail.split_whitespace() {
                let c: Color = field.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("bad color {field:?}"),
                })?;
                colors.push(c);
            }
            if colors.is_empty() || colors.contains(&0) {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("vertex {v} needs a non-empty list of positive colors"),
                });
            }
            lists[v] = Some(colors);
        }
        let mut out = Vec::with_capacity(n);
        for (v, list) in lists.into_iter().enumerate() {
            match list {
                Some(l) => out.push(l),
                None => {
                    return Err(Error::InvalidInput(format!("vertex {v} has no list")));
                }
            }
        }
        ListAssignment::new(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, list) in self.lists.iter().enumerate() {
            let colors: Vec<String> = list.iter().map(Color::to_string).collect();
            out.push_str(&format!("{v}: {}\n", colors.join(" ")));
        }
        out
    }
}

/// True iff every list has at least `deg(v) + k` colors; otherwise reports
/// the first offending vertex.
pub fn validate_lists(g: &Graph, lists: &ListAssignment, k: usize) -> std::result::Result<(), usize> {
    if lists.len() != g.vertex_count() {
        return Err(lists.len().min(g.vertex_count()));
    }
    for v in g.vertices() {
        if lists.list(v).len() < g.degree(v) + k {
            return Err(v);
        }
    }
    Ok(())
}

/// A partial or total assignment of colors to vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<Option<Color>>,
}

impl Coloring {
    pub fn empty(n: usize) -> Coloring {
        Coloring {
            colors: vec![None; n],
        }
    }

    pub fn from_colors(colors: Vec<Color>) -> Coloring {
        Coloring {
            colors: colors.into_iter().map(Some).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<Color> {
        self.colors[v]
    }

    pub fn set(&mut self, v: usize, c: Color) {
        debug_assert!(c > 0, "colors are positive");
        self.colors[v] = Some(c);
    }

    pub fn unset(&mut self, v: usize) {
        self.colors[v] = None;
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    pub fn uncolored(&self) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&v| self.colors[v].is_none())
            .collect()
    }

    /// Parses the coloring format: one line `v c` per colored vertex, `#`
    /// comments and blank lines ignored. Missing vertices stay uncolored.
    pub fn parse(text: &str, n: usize) -> Result<Coloring> {
        let mut coloring = Coloring::empty(n);
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: lineno,
                    message: "expected `v c`".into(),
                });
            }
            let v: usize = fields[0].parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad vertex id {:?}", fields[0]),
            })?;
            let c: Color = fields[1].parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad color {:?}", fields[1]),
            })?;
            if v >= n {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("vertex {v} out of range for n = {n}"),
                });
            }
            if c == 0 {
                return Err(Error::Parse {
                    line: lineno,
                    message: "colors are positive".into(),
                });
            }
            if coloring.get(v).is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("duplicate color for vertex {v}"),
                });
            }
            coloring.set(v, c);
        }
        Ok(coloring)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.colors.iter().enumerate() {
            if let Some(c) = c {
                out.push_str(&format!("{v} {c}\n"));
            }
        }
        out
    }
}

/// The set of colors appearing exactly once among the *colored* neighbors
/// of `v`, sorted ascending. Uncolored neighbors are ignored.
pub fn unique_colors(g: &Graph, coloring: &Coloring, v: usize) -> Vec<Color> {
    let mut counts: BTreeMap<Color, u32> = BTreeMap::new();
    for &u in g.neighbors(v) {
        if let Some(c) = coloring.get(u) {
            *counts.entry(c).or_insert(0) += 1;
        }
    }
    counts
        .into_iter()
        .filter(|&(_, k)| k == 1)
        .map(|(c, _)| c)
        .collect()
}

/// Edges whose two endpoints are both colored and share a color, sorted.
pub fn proper_violations(g: &Graph, coloring: &Coloring) -> Vec<(usize, usize)> {
    g.edges()
        .filter(|&(u, v)| {
            matches!((coloring.get(u), coloring.get(v)), (Some(a), Some(b)) if a == b)
        })
        .collect()
}

/// Full verdict of [`check_pcf`]: which edges break properness, which
/// vertices lack a uniquely-seen neighbor color, which stray from their
/// lists, and every vertex's uniquely-occurring color set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcfReport {
    pub proper_violations: Vec<(usize, usize)>,
    pub cf_failures: Vec<usize>,
    pub list_violations: Vec<usize>,
    pub unique_sets: Vec<Vec<Color>>,
}

impl PcfReport {
    pub fn is_valid(&self) -> bool {
        self.proper_violations.is_empty()
            && self.cf_failures.is_empty()
            && self.list_violations.is_empty()
    }
}

/// Judges a total coloring: properness on every edge, a uniquely-occurring
/// neighbor color at every non-isolated vertex, and (when `lists` is given)
/// membership of each color in its vertex's list. Isolated vertices are
/// exempt from the conflict-free condition.
///
/// Errors on partial colorings, naming the uncolored vertices.
pub fn check_pcf(g: &Graph, coloring: &Coloring, lists: Option<&ListAssignment>) -> Result<PcfReport> {
    if coloring.len() != g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "coloring covers {} vertices, graph has {}",
            coloring.len(),
            g.vertex_count()
        )));
    }
    if !coloring.is_total() {
        return Err(Error::PartialColoring(coloring.uncolored()));
    }
    let unique_sets: Vec<Vec<Color>> = g
        .vertices()
        .map(|v| unique_colors(g, coloring, v))
        .collect();
    let cf_failures = g
        .vertices()
        .filter(|&v| g.degree(v) > 0 && unique_sets[v].is_empty())
        .collect();
    let list_violations = match lists {
        Some(lists) => g
            .vertices()
            .filter(|&v| {
                let c = coloring.get(v).expect("total");
                v >= lists.len() || !lists.list(v).contains(&c)
            })
            .collect(),
        None => Vec::new(),
    };
    Ok(PcfReport {
        proper_violations: proper_violations(g, coloring),
        cf_failures,
        list_violations,
        unique_sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::new(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn unique_colors_examples() {
        let c3 = cycle(3);
        let phi = Coloring::from_colors(vec![1, 2, 3]);
        assert_eq!(unique_colors(&c3, &phi, 0), vec![2, 3]);

        let k13 = star(3);
        let phi = Coloring::from_colors(vec![2, 1, 1, 1]);
        assert_eq!(unique_colors(&k13, &phi, 0), Vec::<Color>::new());

        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let phi = Coloring::from_colors(vec![1, 2, 1]);
        assert_eq!(unique_colors(&p3, &phi, 1), Vec::<Color>::new());
    }

    #[test]
    fn unique_colors_ignores_uncolored() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let mut phi = Coloring::empty(3);
        phi.set(0, 5);
        assert_eq!(unique_colors(&p3, &phi, 1), vec![5]);
        assert_eq!(unique_colors(&p3, &phi, 0), Vec::<Color>::new());
    }

    #[test]
    fn proper_violation_examples() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(proper_violations(&k2, &Coloring::from_colors(vec![1, 2])).is_empty());
        assert_eq!(
            proper_violations(&k2, &Coloring::from_colors(vec![1, 1])),
            vec![(0, 1)]
        );
        // Partial colorings judge only fully-colored edges.
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let mut phi = Coloring::empty(3);
        phi.set(0, 1);
        assert!(proper_violations(&p3, &phi).is_empty());
    }

    #[test]
    fn check_pcf_examples() {
        let c5 = cycle(5);
        let rainbow = Coloring::from_colors(vec![1, 2, 3, 4, 5]);
        assert!(check_pcf(&c5, &rainbow, None).unwrap().is_valid());

        let k13 = star(3);
        let report = check_pcf(&k13, &Coloring::from_colors(vec![2, 1, 1, 1]), None).unwrap();
        assert_eq!(report.cf_failures, vec![0]);
        assert!(!report.is_valid());

        let k1 = Graph::new(1, &[]).unwrap();
        assert!(check_pcf(&k1, &Coloring::from_colors(vec![7]), None)
            .unwrap()
            .is_valid());
    }

    #[test]
    fn check_pcf_rejects_partial() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let mut phi = Coloring::empty(3);
        phi.set(1, 1);
        match check_pcf(&p3, &phi, None) {
            Err(Error::PartialColoring(missing)) => assert_eq!(missing, vec![0, 2]),
            other => panic!("expected partial-coloring error, got {other:?}"),
        }
    }

    #[test]
    fn check_pcf_list_membership() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        let lists = ListAssignment::new(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let report = check_pcf(&k2, &Coloring::from_colors(vec![1, 2]), Some(&lists)).unwrap();
        assert_eq!(report.list_violations, vec![1]);
        assert!(!report.is_valid());
    }

    #[test]
    fn validate_lists_examples() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let ok = ListAssignment::new(vec![vec![1, 2], vec![1, 2, 3], vec![4, 5]]).unwrap();
        assert_eq!(validate_lists(&p3, &ok, 1), Ok(()));
        let bad = ListAssignment::new(vec![vec![1], vec![1, 2, 3], vec![4, 5]]).unwrap();
        assert_eq!(validate_lists(&p3, &bad, 1), Err(0));
        let k1 = Graph::new(1, &[]).unwrap();
        let one = ListAssignment::new(vec![vec![9]]).unwrap();
        assert_eq!(validate_lists(&k1, &one, 1), Ok(()));
    }

    #[test]
    fn list_text_round_trip() {
        let lists =
            ListAssignment::new(vec![vec![3, 1, 2], vec![7], vec![10, 2]]).unwrap();
        let text = lists.to_text();
        assert_eq!(ListAssignment::parse(&text, 3).unwrap(), lists);
        // Comments and stray whitespace are tolerated.
        let with_noise = format!("# lists\n\n  {}", text.replace(": ", " :  "));
        assert_eq!(ListAssignment::parse(&with_noise, 3).unwrap(), lists);
    }

    #[test]
    fn list_parse_rejects_gaps_and_junk() {
        assert!(ListAssignment::parse("0: 1 2\n", 2).is_err());
        assert!(ListAssignment::parse("0: 1\n0: 2\n", 1).is_err());
        assert!(ListAssignment::parse("0: 0\n", 1).is_err());
        assert!(ListAssignment::parse("0 1 2\n", 1).is_err());
    }

    #[test]
    fn coloring_text_round_trip() {
        let mut phi = Coloring::empty(4);
        phi.set(0, 2);
        phi.set(3, 9);
        let text = phi.to_text();
        assert_eq!(Coloring::parse(&text, 4).unwrap(), phi);
    }
}
