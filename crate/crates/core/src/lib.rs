//! Zombies and Survivors on graphs.
//!
//! `k` zombies start on independent uniform vertices and always step along a
//! uniformly chosen geodesic toward the survivor; the survivor sees the
//! placement, picks a start and then moves (or passes) after every zombie
//! step. This crate computes the survivor's optimal win probability `s_k(G)`
//! exactly on small graphs, the zombie number `z(G)` and cop number `c(G)`,
//! closed forms for cycles, hypercubes and the leafy cycle, and runs seeded
//! Monte Carlo games under a family of survivor strategies.

pub mod analytic;
pub mod copnum;
pub mod engine;
pub mod error;
pub mod exact;
pub mod graph;
pub mod montecarlo;
pub mod rng;
pub mod strategies;
pub mod verification;

pub use error::{Error, Result};
pub use graph::{Family, Graph, Vertex};
