//! Finite groups given by multiplication tables, normal chains, transversals
//! and the extension 2-cocycle.

mod chain;
mod cocycle;
mod table;
mod transversal;

pub use chain::{intersect_chain, verify_chain, SubgroupChain};
pub use cocycle::{compute_cocycle, Cocycle2};
pub use table::{load_group, ElementSet, Group, GroupFile};
pub use transversal::{ascending_transversal, mackey_transversal, MackeyTransversal, Transversal};
