//! Prime graphs (Gruenberg–Kegel graphs) of finite groups: realizability
//! classifiers, constructive witnesses, a brute-force element-order oracle,
//! and recovery of the prime vertex graph from a common divisor graph.

pub mod classify;
pub mod dualgraph;
pub mod error;
pub mod fixtures;
pub mod graphcore;
pub mod groups;
pub mod numtheory;
pub mod realize;
pub mod selftest;

pub use error::{Error, Result};
pub use graphcore::{Coloring, Digraph, Graph};
