pub mod connectivity;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod harness;
pub mod partitions;
pub mod prooflab;
pub mod spectra;
pub mod verdict;

pub use error::{Error, Result};
pub use graph::Graph;
pub use verdict::Verdict;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/graphs.md")]
    pub struct Graphs;
    #[doc = include_str!("../../../book/src/spectra.md")]
    pub struct Spectra;
    #[doc = include_str!("../../../book/src/connectivity.md")]
    pub struct Connectivity;
    #[doc = include_str!("../../../book/src/partitions.md")]
    pub struct Partitions;
    #[doc = include_str!("../../../book/src/thresholds.md")]
    pub struct Thresholds;
    #[doc = include_str!("../../../book/src/prooflab.md")]
    pub struct Prooflab;
    #[doc = include_str!("../../../book/src/harness.md")]
    pub struct Harness;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
