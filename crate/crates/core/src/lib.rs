//! Combinatorial degenerations, presentations of `G_1`, coset enumeration
//! and Chern invariants for the Galois covers of `R_{n+1} ∪ R_{n+1}`.

pub mod cli;
pub mod degeneration;
pub mod engine;
pub mod exec;
pub mod invariants;
pub mod presentation;
