//! Exact computations with glider representations of finite groups.

pub mod cli;
pub mod clifford;
pub mod corpus;
pub mod error;
pub mod exactfield;
pub mod fragment;
pub mod geometry;
pub mod group;
pub mod induct;
pub mod linmod;
pub mod par;

pub use error::{Error, Result};
