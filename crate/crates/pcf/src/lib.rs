//! Proper conflict-free (PCF) list coloring.
//!
//! A proper coloring of a graph is *conflict-free* when every non-isolated
//! vertex has some color appearing exactly once among its neighbors. This
//! crate provides:
//!
//! - a machine checker for the PCF condition ([`check_pcf`]) that every
//!   solver output is re-verified against;
//! - a greedy solver for `d`-degenerate graphs from lists of size
//!   `deg(v) + d + 1` ([`greedy_pcf_color`]);
//! - a constructive solver for trees from lists of size `deg(v) + 1`
//!   ([`tree_pcf_color`]), built from pendant-path peels and a five-case
//!   hub analysis;
//! - exhaustive oracles for tiny instances ([`brute_force_pcf`],
//!   [`pcf_chromatic_number`]) and a refuter searching for uncolorable
//!   list assignments ([`refute_choosability`]);
//! - generators for the gadgets showing the bounds are tight
//!   ([`gen_star`], [`gen_flower`], [`gen_c5_uniform`]) and for seeded
//!   random test instances.
//!
//! The `pcf` binary exposes all of this on the command line; see the
//! `book/` guide for a walkthrough.

#![forbid(unsafe_code)]

mod error;

pub mod coloring;
pub mod graph;
pub mod greedy;
pub mod instances;
pub mod oracle;
pub mod tree;

#[cfg(doctest)]
mod book;

pub use coloring::{
    check_pcf, proper_violations, unique_colors, validate_lists, Color, Coloring, ListAssignment,
    PcfReport,
};
pub use error::{Error, Result};
pub use graph::{degeneracy_ordering, DegeneracyOrdering, Graph, VertexMap};
pub use greedy::{earliest_neighbor, greedy_pcf_color};
pub use instances::{
    adversarial_tree, gen_c5_uniform, gen_flower, gen_star, random_degenerate,
    random_list_assignment, random_tree, Instance, Verdict,
};
pub use oracle::{
    brute_force_pcf, count_pcf_colorings, pcf_chromatic_number, refute_choosability,
    RefuteOutcome, SearchBudget, SearchOutcome,
};
pub use tree::{
    find_reduction, forest_pcf_color, normalize_lists, tree_pcf_color, tree_pcf_color_traced,
    CaseTag, Pendant, Reduction, ReductionTrace, StepKind, TraceStep, V0Config,
};
