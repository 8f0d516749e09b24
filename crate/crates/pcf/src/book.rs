// The guide's code listings run as doc-tests: each chapter's Markdown is
// attached verbatim to an empty module, so `cargo test --doc` compiles and
// executes every ```rust block in book/src. A failing listing names its
// chapter module.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/graphs_and_degeneracy.md")]
pub mod graphs_and_degeneracy {}

#[doc = include_str!("../../../book/src/checker.md")]
pub mod checker {}

#[doc = include_str!("../../../book/src/greedy.md")]
pub mod greedy {}

#[doc = include_str!("../../../book/src/trees.md")]
pub mod trees {}

#[doc = include_str!("../../../book/src/oracle_and_gadgets.md")]
pub mod oracle_and_gadgets {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
