//! Clifford theory for fragments: going up from H to G, going down from G to
//! H, and the factor sets attached to decomposition groups.

mod blocks;
mod down;
mod factor;

pub use blocks::{building_blocks, decomposition_group, BuildingBlockSet, Summand};
pub use down::{going_down, DecompositionNode, GoingDown, LevelSum};
pub use factor::{coset_reps, factor_set, FactorSet};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fragment::{direct_sum_check, irreducible_certificate, Certificate, GliderFragment};
use crate::group::{Cocycle2, Transversal};
use crate::induct::{embed, induce, InducedFragment};
use crate::linmod::{span_under, Subspace};

/// N^G split into one summand per transversal element.
#[derive(Debug, Clone)]
pub struct GoingUp {
    pub induced: InducedFragment,
    /// Summands over the H-chain, in transversal order.
    pub summands: Vec<GliderFragment>,
    /// Whether M_{e-i} = KG_i M_e holds for the induced fragment.
    pub generated_by_deepest: bool,
}

fn require_certified(f: &GliderFragment, what: &str) -> Result<()> {
    match irreducible_certificate(f)? {
        Certificate::Certified => Ok(()),
        other => Err(Error::NotCertifiedIrreducible(format!("{what}: {}", other.tag()))),
    }
}

/// Induces the irreducible H-chain fragment N and splits N^G, viewed over the
/// H-chain, into the fragments generated by the vectors t ⊗ a.
pub fn going_up(base: &GliderFragment, t: &Transversal, cocycle: &Cocycle2) -> Result<GoingUp> {
    require_certified(base, "base fragment")?;
    let e = base.essential_length();
    let a = base.level(e).vectors().remove(0);
    let induced = induce(base, t, cocycle)?;
    let result = &induced.result;
    let module = result.module();
    let field = module.field().clone();
    let h_chain = t.h_chain();
    let h_module = Arc::new(module.restrict(h_chain.top())?);
    let blocks = t.len();

    let mut summands = Vec::with_capacity(blocks);
    for k in 0..blocks {
        let line = Subspace::span(&field, module.dim(), vec![embed(blocks, k, &a)]);
        let levels: Vec<Subspace> = (0..=result.last_level())
            .map(|i| match i <= e {
                true => span_under(&h_module, &line, h_chain.level(e - i)),
                false => Subspace::zero(&field, module.dim()),
            })
            .collect();
        let f = GliderFragment::new(h_chain, &h_module, levels)?;
        require_certified(&f, &format!("summand {}", t.group().label(t.reps()[k])))?;
        summands.push(f);
    }
    for x in 0..blocks {
        for y in x + 1..blocks {
            if !direct_sum_check(&summands[x], &summands[y], e)? {
                return Err(Error::PreconditionFailure(format!(
                    "summands {x} and {y} meet at level {e}"
                )));
            }
        }
    }
    for k in 0..=result.last_level() {
        let parts: Vec<Subspace> = summands.iter().map(|s| s.level(k).clone()).collect();
        let sum = Subspace::sum_all(&field, module.dim(), &parts);
        let dims: usize = parts.iter().map(Subspace::dim).sum();
        if sum != *result.level(k) || dims != sum.dim() {
            return Err(Error::PreconditionFailure(format!(
                "summands do not split level {k} of the induced fragment"
            )));
        }
    }
    let generated = result.generated_by_level(e);
    let generated_by_deepest = (0..=e).all(|i| generated[i] == *result.level(i));
    Ok(GoingUp {
        induced,
        summands,
        generated_by_deepest,
    })
}
