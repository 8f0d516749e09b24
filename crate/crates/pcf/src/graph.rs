//! Simple undirected graphs with dense vertex ids, plus the handful of
//! structural operations the solvers need: connectivity, tree tests,
//! vertex deletion with id remapping, and degeneracy orderings.

use crate::error::{Error, Result};

/// An immutable simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted and deduplicated, so neighbor scans are
/// deterministic and `has_edge` is a binary search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Endpoints must lie in `0..n` and
    /// self-loops are rejected; duplicate edges are collapsed silently.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Parses the plain edge-list format: an `n m` header followed by `m`
    /// lines `u v`. Lines whose first non-blank character is `#`, and blank
    /// lines, are ignored. Line numbers in errors are 1-based.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let lineno = idx + 1;
            let parse = |s: &str| -> Result<usize> {
                s.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("expected a non-negative integer, got {s:?}"),
                })
            };
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected two fields, got {}", fields.len()),
                });
            }
            let (a, b) = (parse(fields[0])?, parse(fields[1])?);
            match header {
                None => header = Some((a, b)),
                Some((n, m)) => {
                    if edges.len() == m {
                        return Err(Error::Parse {
                            line: lineno,
                            message: format!("more than the declared {m} edges"),
                        });
                    }
                    if a >= n || b >= n {
                        return Err(Error::Parse {
                            line: lineno,
                            message: format!("vertex out of range: edge ({a}, {b}) with n = {n}"),
                        });
                    }
                    if a == b {
                        return Err(Error::Parse {
                            line: lineno,
                            message: format!("self-loop at vertex {a}"),
                        });
                    }
                    edges.push((a, b));
                }
            }
        }
        match header {
            None => Err(Error::Parse {
                line: text.lines().count().max(1),
                message: "missing `n m` header line".into(),
            }),
            Some((n, m)) => {
                if edges.len() != m {
                    return Err(Error::Parse {
                        line: text.lines().count().max(1),
                        message: format!("declared {m} edges but found {}", edges.len()),
                    });
                }
                Graph::new(n, &edges)
            }
        }
    }

    /// Serializes to the same format `parse_edge_list` reads, with edges in
    /// lexicographic order. Round-trips exactly.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Connected components as sorted vertex lists, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Connected with exactly `n - 1` edges; the empty graph is not a tree.
    pub fn is_tree(&self) -> bool {
        let n = self.vertex_count();
        n >= 1 && self.edge_count() == n - 1 && self.components().len() == 1
    }

    /// Acyclic, i.e. every component is a tree. The empty graph qualifies.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.vertex_count()
    }

    /// Induced subgraph on `V \ remove`, relabeled to dense ids, together
    /// with the mapping between old and new ids.
    pub fn delete_vertices(&self, remove: &[usize]) -> Result<(Graph, VertexMap)> {
        let n = self.vertex_count();
        let mut gone = vec![false; n];
        for &v in remove {
            if v >= n {
                return Err(Error::InvalidInput(format!(
                    "cannot delete vertex {v}: graph has {n} vertices"
                )));
            }
            gone[v] = true;
        }
        let mut to_sub = vec![None; n];
        let mut to_super = Vec::new();
        for v in 0..n {
            if !gone[v] {
                to_sub[v] = Some(to_super.len());
                to_super.push(v);
            }
        }
        let mut adj = vec![Vec::new(); to_super.len()];
        let mut m = 0;
        for (new_v, &old_v) in to_super.iter().enumerate() {
            for &old_u in self.neighbors(old_v) {
                if let Some(new_u) = to_sub[old_u] {
                    adj[new_v].push(new_u);
                }
            }
            m += adj[new_v].len();
        }
        let sub = Graph { adj, m: m / 2 };
        Ok((sub, VertexMap { to_sub, to_super }))
    }
}

/// Relabeling produced by [`Graph::delete_vertices`]: surviving old ids map
/// to dense new ids and back.
#[derive(Debug, Clone)]
pub struct VertexMap {
    to_sub: Vec<Option<usize>>,
    to_super: Vec<usize>,
}

impl VertexMap {
    /// New id of old vertex `v`, or `None` if it was deleted.
    pub fn to_sub(&self, v: usize) -> Option<usize> {
        self.to_sub[v]
    }

    /// Old id of new vertex `v`.
    pub fn to_super(&self, v: usize) -> usize {
        self.to_super[v]
    }

    /// Old ids of all surviving vertices, in new-id order.
    pub fn survivors(&self) -> &[usize] {
        &self.to_super
    }
}

/// A vertex order in which every vertex has at most `degeneracy` neighbors
/// appearing earlier, together with that bound.
#[derive(Debug, Clone)]
pub struct DegeneracyOrdering {
    order: Vec<usize>,
    position: Vec<usize>,
    degeneracy: usize,
}

impl DegeneracyOrdering {
    /// Wraps a caller-supplied order, computing its actual maximum
    /// back-degree as the bound. Errors unless `order` is a permutation of
    /// the graph's vertices.
    pub fn from_order(g: &Graph, order: Vec<usize>) -> Result<DegeneracyOrdering> {
        let n = g.vertex_count();
        if order.len() != n {
            return Err(Error::InvalidInput(format!(
                "ordering has {} entries for a graph on {n} vertices",
                order.len()
            )));
        }
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::InvalidInput(format!(
                    "ordering is not a permutation of 0..{n}"
                )));
            }
            position[v] = i;
        }
        let degeneracy = (0..n)
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&u| position[u] < position[v])
                    .count()
            })
            .max()
            .unwrap_or(0);
        Ok(DegeneracyOrdering {
            order,
            position,
            degeneracy,
        })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Position of vertex `v` in the order.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn degeneracy(&self) -> usize {
        self.degeneracy
    }
}

/// Computes a degeneracy ordering by repeatedly removing a minimum-degree
/// vertex (smallest index on ties) and reversing the removal sequence. The
/// reported `degeneracy` is the largest degree seen at removal time, which
/// equals the graph's degeneracy, and bounds every back-degree in the
/// returned order.
pub fn degeneracy_ordering(g: &Graph) -> DegeneracyOrdering {
    use std::collections::BTreeSet;

    let n = g.vertex_count();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n + 1];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut removal = Vec::with_capacity(n);
    let mut degeneracy = 0;
    let mut floor = 0;
    for _ in 0..n {
        while buckets[floor].is_empty() {
            floor += 1;
        }
        let v = *buckets[floor].iter().next().expect("bucket nonempty");
        buckets[floor].remove(&v);
        removed[v] = true;
        degeneracy = degeneracy.max(floor);
        removal.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                buckets[deg[u]].remove(&u);
                deg[u] -= 1;
                buckets[deg[u]].insert(u);
            }
        }
        // A neighbor's degree may have dropped below the current floor.
        floor = floor.saturating_sub(1);
    }
    removal.reverse();
    DegeneracyOrdering::from_order(g, removal).expect("removal sequence is a permutation")
}
