//! Algorithms for balanced directed graphs.
//!
//! A directed graph is `alpha`-balanced when every cut carries at most `alpha`
//! times more weight in one direction than in the other. This crate certifies
//! balance exactly and approximately, decomposes directed graphs into
//! low-radius clusters, builds single-source oblivious routings from
//! arborescences, and computes approximate maximum flows and minimum-congestion
//! routings with congestion approximators.

pub mod arborescence;
pub mod balance;
pub mod composite;
pub mod decomposition;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod maxflow;
pub mod oracles;
pub mod routing;
pub mod sparsest;

#[cfg(test)]
mod testing;

pub use error::{Error, Result};
pub use graph::{
    congestion, cut_weight, incidence_apply, shortest_dist, threshold_cut, volume, Cut, Demand, DirectedGraph, Edge,
    Flow,
};
