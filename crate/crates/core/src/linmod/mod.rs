//! Exact linear algebra over K and representations of subgroups.

mod catalog;
mod matrix;
mod module;
mod subspace;

pub use catalog::{
    degree, equivalent, simple_summands, split_isotypic, CatalogEntry, CatalogFile, Irrep, IrrepCatalog, IrrepFile,
    IsotypicPart, SubgroupIrrepsFile,
};
pub use matrix::{unit_vector, vec_add, vec_is_zero, vec_scale, zero_vector, FMatrix, Vector};
pub use module::{
    conjugate_submodule, cyclic_submodule, intertwiners, invariant_complement, is_invariant, span_under, translate,
    Character, GModule,
};
pub use subspace::Subspace;
