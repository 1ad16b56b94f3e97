//! Combinatorics of minuscule Schubert varieties in simply-laced types:
//! root systems, Weyl group elements, quivers of reduced words, their
//! peak decompositions, and exhaustive checks on the resulting stabilizer
//! subgroups.

pub mod error;
pub mod quiver;
pub mod rootsys;
pub mod theorems;
pub mod weyl;

pub use error::{Error, Result};
pub use quiver::{GenDecomposition, Quiver};
pub use rootsys::{root_leq, Component, Family, NodeSet, Root, RootSystem, SystemType};
pub use weyl::{CosetContext, MinusculeElement, WeylElement, Word};
