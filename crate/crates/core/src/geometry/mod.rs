//! Where in projective space the generator of an irreducible fragment may
//! lie, and which points give nontrivial decomposition groups.

mod symbolic;

pub use symbolic::{coefficient_matrices, coefficient_matrix, rank_locus, RankLocus, Semantics, SymbolicMatrix};

use std::ops::Range;

use crate::clifford::decomposition_group;
use crate::error::{Error, Result};
use crate::exactfield::CycNumber;
use crate::group::{ElementSet, SubgroupChain};
use crate::linmod::{cyclic_submodule, is_invariant, GModule, IrrepCatalog, Subspace};

/// A simple G-summand on a run of consecutive basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub irrep: String,
    pub coords: Range<usize>,
}

/// Constraints on a = Σ a_i e_i for M = KGa.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintReport {
    pub components: Vec<Component>,
    /// Coordinates of one-dimensional components, which must be nonzero.
    pub nonzero: Vec<usize>,
    /// s - 1 for every component of dimension s > 1.
    pub projective_factors: Vec<usize>,
}

impl ConstraintReport {
    /// e.g. "P^1 x P^1", or "point" with no projective factors.
    pub fn shape(&self) -> String {
        if self.projective_factors.is_empty() {
            return "point".into();
        }
        let parts: Vec<String> = self.projective_factors.iter().map(|k| format!("P^{k}")).collect();
        parts.join(" x ")
    }

    /// Violated constraints for a concrete vector.
    pub fn violations(&self, a: &[CycNumber]) -> Vec<String> {
        let mut out: Vec<String> = self
            .nonzero
            .iter()
            .filter(|&&k| a[k].is_zero())
            .map(|k| format!("a{k} = 0"))
            .collect();
        for c in &self.components {
            if c.coords.len() > 1 && a[c.coords.clone()].iter().all(CycNumber::is_zero) {
                out.push(format!("a{}..a{} all zero", c.coords.start, c.coords.end - 1));
            }
        }
        out
    }
}

/// Reads the decomposition of M off its basis: each component is the
/// shortest invariant run of basis vectors and must be simple.
pub fn constraint_check(m: &GModule, catalog: &IrrepCatalog) -> Result<ConstraintReport> {
    let g = m.acting();
    let field = m.field();
    let n = m.dim();
    let run = |r: Range<usize>| Subspace::span(field, n, r.map(|k| crate::linmod::unit_vector(field, n, k)).collect());
    let mut components = Vec::new();
    let mut start = 0;
    while start < n {
        let end = (start + 1..=n)
            .find(|&e| is_invariant(m, &run(start..e), g))
            .expect("the whole space is invariant");
        let sub = m.on_subspace(&run(start..end), g)?;
        let irrep = catalog
            .identify(&sub)
            .ok_or_else(|| Error::NotDecomposed(format!("coordinates {start}..{end} are not simple")))?;
        components.push(Component {
            irrep,
            coords: start..end,
        });
        start = end;
    }
    let nonzero = components
        .iter()
        .filter(|c| c.coords.len() == 1)
        .map(|c| c.coords.start)
        .collect();
    let projective_factors = components
        .iter()
        .filter(|c| c.coords.len() > 1)
        .map(|c| c.coords.len() - 1)
        .collect();
    Ok(ConstraintReport {
        components,
        nonzero,
        projective_factors,
    })
}

/// Decomposition data at one stage for a concrete generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageGroups {
    pub stage: usize,
    pub dim_h: usize,
    pub dim_g: usize,
    pub group: ElementSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointReport {
    pub stages: Vec<StageGroups>,
    /// G'_i ⊆ G'_{i+1} for consecutive stages.
    pub inclusions: Vec<bool>,
}

/// G'_i = decomposition group of Ka relative to H_i ◁ G_i, for i = 1..d.
pub fn evaluate_point(
    s: &GModule,
    g_chain: &SubgroupChain,
    h_chain: &SubgroupChain,
    point: &[CycNumber],
) -> Result<PointReport> {
    if point.len() != s.dim() {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, module {}",
            point.len(),
            s.dim()
        )));
    }
    if point.iter().all(CycNumber::is_zero) {
        return Err(Error::ZeroVector);
    }
    let line = Subspace::span(s.field(), s.dim(), vec![point.to_vec()]);
    let stages = (1..=g_chain.d())
        .map(|i| {
            let (hi, gi) = (h_chain.level(i), g_chain.level(i));
            Ok(StageGroups {
                stage: i,
                dim_h: cyclic_submodule(s, point, hi).dim(),
                dim_g: cyclic_submodule(s, point, gi).dim(),
                group: decomposition_group(s, &line, hi, gi)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let inclusions = stages.windows(2).map(|w| w[0].group.is_subset(&w[1].group)).collect();
    Ok(PointReport { stages, inclusions })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalityReport {
    /// H_{i+1} G_i = G_{i+1}, for i = 1..d-1 (at i = 0 it would force H_1 = G_1).
    pub stages: Vec<bool>,
    /// First stage that fails and an element of G_{i+1} outside the product.
    pub witness: Option<(usize, String)>,
}

impl MaximalityReport {
    pub fn holds(&self) -> bool {
        self.stages.iter().all(|&b| b)
    }
}

pub fn maximal_chain_check(g_chain: &SubgroupChain, h_chain: &SubgroupChain) -> MaximalityReport {
    let grp = g_chain.group();
    let mut witness = None;
    let stages = (1..g_chain.d())
        .map(|i| {
            let prod = grp.product_set(h_chain.level(i + 1), g_chain.level(i));
            let target = g_chain.level(i + 1);
            let ok = prod == *target;
            if !ok && witness.is_none() {
                let x = target.elems().iter().find(|&&x| !prod.contains(x)).copied();
                witness = Some((i + 1, x.map(|x| grp.label(x).to_string()).unwrap_or_default()));
            }
            ok
        })
        .collect();
    MaximalityReport { stages, witness }
}
