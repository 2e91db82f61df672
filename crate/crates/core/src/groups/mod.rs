//! Finite rational matrix groups and closed subgroups of tori.

mod finite;
mod torus;

pub use finite::{FiniteGroup, FiniteSubgroup};
pub use torus::{ComponentData, TorusElement, TorusSubgroup};
