use crate::error::{Error, Result};
use crate::group::ElementSet;
use crate::linmod::{
    equivalent, invariant_complement, is_invariant, simple_summands, span_under, translate, GModule, IrrepCatalog,
    Subspace,
};
use crate::par;

/// A simple H_i-summand of the level space with its coverage witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub space: Subspace,
    pub irrep: String,
    /// Whether it was split off KH_i·(previous data) rather than the complement.
    pub generated: bool,
    /// (position in `blocks`, g) with g·S ≅ this summand.
    pub witness: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildingBlockSet {
    pub stage: usize,
    pub h: ElementSet,
    pub g: ElementSet,
    pub level_space: Subspace,
    pub summands: Vec<Summand>,
    /// Indices into `summands`, in selection order.
    pub blocks: Vec<usize>,
}

impl BuildingBlockSet {
    pub fn block_spaces(&self) -> Vec<Subspace> {
        self.blocks.iter().map(|&b| self.summands[b].space.clone()).collect()
    }
}

/// Elements of `g` with the identity first.
fn identity_first(m: &GModule, g: &ElementSet) -> Vec<usize> {
    let e = m.group().identity();
    std::iter::once(e)
        .chain(g.elems().iter().copied().filter(|&x| x != e))
        .collect()
}

fn cover(m: &GModule, block: &Subspace, x: &Subspace, h: &ElementSet, order: &[usize]) -> Result<Option<usize>> {
    for &g in order {
        if equivalent(m, &translate(m, g, block), x, h)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Splits `space` = KH_i·(previous) ⊕ complement into simple H_i-modules and
/// picks blocks among the first part whose G_i-conjugates cover every summand.
///
/// Blocks that are G_i-modules come first, then by pivot order.
pub fn building_blocks(
    m: &GModule,
    space: &Subspace,
    generated: &Subspace,
    h: &ElementSet,
    g: &ElementSet,
    stage: usize,
    catalog: &IrrepCatalog,
) -> Result<BuildingBlockSet> {
    if !generated.is_subspace_of(space) {
        return Err(Error::NotSubspace(
            "generated part is not inside the level space".into(),
        ));
    }
    if !is_invariant(m, space, g) {
        return Err(Error::PreconditionFailure(format!(
            "level space of stage {stage} is not G_{stage}-invariant"
        )));
    }
    let complement = invariant_complement(m, space, generated, h)?;
    let mut summands: Vec<Summand> = Vec::new();
    for (part, is_gen) in [(generated, true), (&complement, false)] {
        for (irrep, s) in simple_summands(m, part, h, catalog)? {
            summands.push(Summand {
                space: s,
                irrep,
                generated: is_gen,
                witness: (usize::MAX, 0),
            });
        }
    }
    let mut candidates: Vec<usize> = (0..summands.len()).filter(|&k| summands[k].generated).collect();
    candidates.sort_by_key(|&k| {
        (
            !is_invariant(m, &summands[k].space, g),
            summands[k].space.pivots().to_vec(),
        )
    });

    let order = identity_first(m, g);
    let mut blocks: Vec<usize> = Vec::new();
    let add = |b: usize, blocks: &mut Vec<usize>, summands: &mut Vec<Summand>| -> Result<()> {
        let pos = blocks.len();
        blocks.push(b);
        let block = summands[b].space.clone();
        let open: Vec<usize> = (0..summands.len())
            .filter(|&k| summands[k].witness.0 == usize::MAX)
            .collect();
        let found = par::map(&open, |&k| cover(m, &block, &summands[k].space, h, &order));
        for (k, f) in open.into_iter().zip(found) {
            if let Some(x) = f? {
                summands[k].witness = (pos, x);
            }
        }
        Ok(())
    };
    for &c in &candidates {
        if is_invariant(m, &summands[c].space, g) {
            add(c, &mut blocks, &mut summands)?;
        }
    }
    for &c in &candidates {
        if summands[c].witness.0 == usize::MAX {
            add(c, &mut blocks, &mut summands)?;
        }
    }
    if let Some(s) = summands.iter().find(|s| s.witness.0 == usize::MAX) {
        return Err(Error::CoverageFailure(format!(
            "summand {} of type {} is not conjugate to a block at stage {stage}",
            s.space, s.irrep
        )));
    }
    Ok(BuildingBlockSet {
        stage,
        h: h.clone(),
        g: g.clone(),
        level_space: space.clone(),
        summands,
        blocks,
    })
}

/// Stabilizer in G_sub of R = Σ t·X over t ∈ G_sub with t·X ≅ X, X = KH_sub·S.
pub fn decomposition_group(m: &GModule, s: &Subspace, h_sub: &ElementSet, g_sub: &ElementSet) -> Result<ElementSet> {
    let grp = m.group();
    if !h_sub.is_subset(g_sub) {
        return Err(Error::PreconditionFailure("H is not contained in G".into()));
    }
    grp.require_normal(h_sub, g_sub, "H in G")?;
    let x = span_under(m, s, h_sub);
    let parts = par::map(g_sub.elems(), |&t| {
        let tx = translate(m, t, &x);
        Ok(equivalent(m, &tx, &x, h_sub)?.then_some(tx))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let parts: Vec<Subspace> = parts.into_iter().flatten().collect();
    let r = Subspace::sum_all(m.field(), m.dim(), &parts);
    let stab = ElementSet::new(
        grp.order(),
        g_sub.elems().iter().copied().filter(|&g| translate(m, g, &r) == r),
    );
    grp.check_subgroup(&stab)
        .map_err(|e| Error::PreconditionFailure(format!("decomposition group: {e}")))?;
    if !h_sub.is_subset(&stab) {
        return Err(Error::PreconditionFailure("decomposition group misses H".into()));
    }
    Ok(stab)
}
