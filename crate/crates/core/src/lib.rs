//! Exact orbit Cartan type stratifications of loop spaces `Λ M` and inertia
//! spaces `Λ X` for linear actions of finite groups and tori.
//!
//! Build a [`actions::Model`], hand it to [`strata::Stratification::new`] and
//! query pieces, components, closure relations and checks from there.

pub mod actions;
pub mod arrangement;
pub mod cartan;
pub mod cli;
pub mod config;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod groups;
pub mod report;
pub mod strata;

pub use error::{Error, Result};
