//! Greedy PCF list coloring of `d`-degenerate graphs from lists of size
//! `deg(v) + d + 1`.
//!
//! Vertices are colored along a degeneracy order. Each vertex avoids the
//! colors of its already-colored neighbors and, for every neighbor `u`, the
//! color of `u`'s earliest neighbor (the one placed first in the order) if
//! that vertex is colored. At most `d` colors are forbidden by earlier
//! neighbors and at most `deg(v)` by earliest neighbors, so a color always
//! remains. The earliest neighbor of each vertex then carries a color seen
//! exactly once in its neighborhood, which is what makes the proper
//! coloring conflict-free.

use crate::coloring::{validate_lists, Coloring, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{degeneracy_ordering, DegeneracyOrdering, Graph};

/// The neighbor of `v` with the smallest position in `ord`, or `None` for
/// an isolated vertex.
pub fn earliest_neighbor(g: &Graph, ord: &DegeneracyOrdering, v: usize) -> Option<usize> {
    g.neighbors(v).iter().copied().min_by_key(|&u| ord.position(u))
}

/// Colors `g` greedily along `ord` (computed fresh when absent), returning
/// a coloring that is guaranteed proper conflict-free and within `lists`.
///
/// Errors if `ord` does not fit the graph or if some list is smaller than
/// `deg(v) + d + 1`, where `d` is the ordering's back-degree bound.
pub fn greedy_pcf_color(
    g: &Graph,
    lists: &ListAssignment,
    ord: Option<&DegeneracyOrdering>,
) -> Result<Coloring> {
    let computed;
    let ord = match ord {
        Some(ord) => {
            // Revalidate against this graph; the caller may have built the
            // ordering elsewhere.
            computed = DegeneracyOrdering::from_order(g, ord.order().to_vec())?;
            &computed
        }
        None => {
            computed = degeneracy_ordering(g);
            &computed
        }
    };
    if let Err(v) = validate_lists(g, lists, ord.degeneracy() + 1) {
        return Err(Error::InvalidInput(format!(
            "list at vertex {v} has fewer than deg+{}+1 colors",
            ord.degeneracy()
        )));
    }

    let earliest: Vec<Option<usize>> = g
        .vertices()
        .map(|v| earliest_neighbor(g, ord, v))
        .collect();
    let mut coloring = Coloring::empty(g.vertex_count());
    for &v in ord.order() {
        let mut forbidden: Vec<u32> = g
            .neighbors(v)
            .iter()
            .filter_map(|&u| coloring.get(u))
            .collect();
        for &u in g.neighbors(v) {
            if let Some(w) = earliest[u] {
                if let Some(c) = coloring.get(w) {
                    forbidden.push(c);
                }
            }
        }
        forbidden.sort_unstable();
        forbidden.dedup();
        debug_assert!(
            forbidden.len() <= ord.degeneracy() + g.degree(v),
            "forbidden set exceeded the counting bound at vertex {v}"
        );
        let color = lists
            .list(v)
            .iter()
            .copied()
            .find(|c| forbidden.binary_search(c).is_err())
            .ok_or_else(|| {
                Error::Contract(format!(
                    "no color left for vertex {v}: {} forbidden, list size {}",
                    forbidden.len(),
                    lists.list(v).len()
                ))
            })?;
        coloring.set(v, color);
    }
    Ok(coloring)
}
