use std::sync::Arc;

use super::matrix::{FMatrix, Vector};
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::exactfield::{CycField, CycNumber};
use crate::group::{ElementSet, Group};
use crate::par;

/// A representation of a subgroup (the acting set) of `group` on K^dim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    group: Arc<Group>,
    field: Arc<CycField>,
    acting: ElementSet,
    dim: usize,
    rho: Vec<Option<FMatrix>>,
}

/// Traces on the conjugacy classes of the acting subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub classes: Vec<Vec<usize>>,
    pub values: Vec<CycNumber>,
}

impl GModule {
    /// Builds from matrices for every element of `acting` and checks the
    /// homomorphism property on all pairs.
    pub fn new(
        group: &Arc<Group>,
        field: &Arc<CycField>,
        acting: &ElementSet,
        dim: usize,
        matrices: Vec<(usize, FMatrix)>,
    ) -> Result<Self> {
        group
            .check_subgroup(acting)
            .map_err(|d| Error::NotSubgroup { index: 0, detail: d })?;
        let mut rho = vec![None; group.order()];
        for (g, m) in matrices {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "matrix for {} is {}x{}, expected {dim}x{dim}",
                    group.label(g),
                    m.rows(),
                    m.cols()
                )));
            }
            if !acting.contains(g) {
                return Err(Error::NotARepresentation(format!(
                    "{} is not in the acting subgroup",
                    group.label(g)
                )));
            }
            rho[g] = Some(m);
        }
        if let Some(&g) = acting.elems().iter().find(|&&g| rho[g].is_none()) {
            return Err(Error::NotARepresentation(format!("no matrix for {}", group.label(g))));
        }
        let module = GModule {
            group: group.clone(),
            field: field.clone(),
            acting: acting.clone(),
            dim,
            rho,
        };
        module.verify()?;
        Ok(module)
    }

    /// Extends matrices given on a generating set by closure, then verifies.
    pub fn from_generators(
        group: &Arc<Group>,
        field: &Arc<CycField>,
        acting: &ElementSet,
        dim: usize,
        gens: Vec<(usize, FMatrix)>,
    ) -> Result<Self> {
        let mut rho: Vec<Option<FMatrix>> = vec![None; group.order()];
        rho[group.identity()] = Some(FMatrix::identity(field, dim));
        let mut queue = vec![group.identity()];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for (g, m) in &gens {
                if m.rows() != dim || m.cols() != dim {
                    return Err(Error::DimensionMismatch(format!(
                        "generator {} has wrong size",
                        group.label(*g)
                    )));
                }
                let y = group.mul(x, *g);
                let my = rho[x].as_ref().unwrap().mul(m);
                match &rho[y] {
                    Some(prev) if *prev != my => {
                        return Err(Error::NotARepresentation(format!(
                            "relation violated at {}",
                            group.label(y)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        rho[y] = Some(my);
                        queue.push(y);
                    }
                }
            }
            k += 1;
        }
        let reached = ElementSet::new(group.order(), queue);
        if reached != *acting {
            return Err(Error::NotARepresentation(
                "generators do not generate the acting subgroup".into(),
            ));
        }
        let matrices = acting.elems().iter().map(|&g| (g, rho[g].take().unwrap())).collect();
        Self::new(group, field, acting, dim, matrices)
    }

    fn verify(&self) -> Result<()> {
        let g = &self.group;
        if *self.rho(g.identity()) != FMatrix::identity(&self.field, self.dim) {
            return Err(Error::NotARepresentation("identity does not act trivially".into()));
        }
        let elems = self.acting.elems();
        let bad = par::find_map_first(elems, |&a| {
            elems
                .iter()
                .find(|&&b| self.rho(a).mul(self.rho(b)) != *self.rho(g.mul(a, b)))
                .map(|&b| (a, b))
        });
        match bad {
            None => Ok(()),
            Some((a, b)) => Err(Error::NotARepresentation(format!(
                "rho({})rho({}) != rho({})",
                g.label(a),
                g.label(b),
                g.label(g.mul(a, b))
            ))),
        }
    }

    /// The trivial module of dimension `dim`.
    pub fn trivial(group: &Arc<Group>, field: &Arc<CycField>, acting: &ElementSet, dim: usize) -> Self {
        let id = FMatrix::identity(field, dim);
        let mut rho = vec![None; group.order()];
        for &g in acting.elems() {
            rho[g] = Some(id.clone());
        }
        GModule {
            group: group.clone(),
            field: field.clone(),
            acting: acting.clone(),
            dim,
            rho,
        }
    }

    /// Block-diagonal direct sum over a common acting subgroup.
    pub fn direct_sum(parts: &[&GModule]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty direct sum".into()))?;
        if parts.iter().any(|p| p.acting != first.acting) {
            return Err(Error::PreconditionFailure(
                "direct sum of modules over different subgroups".into(),
            ));
        }
        let dim = parts.iter().map(|p| p.dim).sum();
        let mut rho = vec![None; first.group.order()];
        for &g in first.acting.elems() {
            let blocks: Vec<&FMatrix> = parts.iter().map(|p| p.rho(g)).collect();
            rho[g] = Some(FMatrix::block_diag(&first.field, &blocks));
        }
        Ok(GModule {
            group: first.group.clone(),
            field: first.field.clone(),
            acting: first.acting.clone(),
            dim,
            rho,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn acting(&self) -> &ElementSet {
        &self.acting
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// ρ(g); panics when g is outside the acting subgroup.
    pub fn rho(&self, g: usize) -> &FMatrix {
        self.rho[g]
            .as_ref()
            .unwrap_or_else(|| panic!("{} does not act", self.group.label(g)))
    }

    pub fn act(&self, g: usize, v: &[CycNumber]) -> Vector {
        self.rho(g).mul_vec(v)
    }

    /// Forgetful restriction to a subgroup of the acting set.
    pub fn restrict(&self, h: &ElementSet) -> Result<GModule> {
        self.group
            .check_subgroup(h)
            .map_err(|d| Error::NotSubgroup { index: 0, detail: d })?;
        if !h.is_subset(&self.acting) {
            return Err(Error::NotSubgroup {
                index: 0,
                detail: "not contained in the acting subgroup".into(),
            });
        }
        let mut rho = vec![None; self.group.order()];
        for &g in h.elems() {
            rho[g] = self.rho[g].clone();
        }
        Ok(GModule {
            acting: h.clone(),
            rho,
            ..self.clone()
        })
    }

    pub fn character(&self) -> Character {
        let classes = self.group.classes_within(&self.acting);
        let values = classes.iter().map(|c| self.rho(c[0]).trace()).collect();
        Character { classes, values }
    }

    /// The H-module structure on an H-invariant subspace, in the coordinates
    /// of the subspace's canonical basis.
    pub fn on_subspace(&self, s: &Subspace, h: &ElementSet) -> Result<GModule> {
        if !is_invariant(self, s, h) {
            return Err(Error::NotSubspace("subspace is not invariant".into()));
        }
        let basis = s.vectors();
        let mut rho = vec![None; self.group.order()];
        for &g in h.elems() {
            let cols = basis
                .iter()
                .map(|b| s.coordinates(&self.act(g, b)).expect("invariant"))
                .collect();
            rho[g] = Some(FMatrix::from_columns(&self.field, s.dim(), cols));
        }
        Ok(GModule {
            group: self.group.clone(),
            field: self.field.clone(),
            acting: h.clone(),
            dim: s.dim(),
            rho,
        })
    }
}

impl Character {
    pub fn value_at(&self, g: usize) -> &CycNumber {
        let k = self
            .classes
            .iter()
            .position(|c| c.contains(&g))
            .expect("element in acting subgroup");
        &self.values[k]
    }

    /// (1/|H|) Σ χ(h) ψ(h⁻¹).
    pub fn inner_product(&self, other: &Character, group: &Group) -> CycNumber {
        let field = self.values[0].field().clone();
        let mut acc = CycNumber::zero(&field);
        let mut order = 0;
        for cls in &self.classes {
            for &h in cls {
                acc = &acc + &(self.value_at(h) * other.value_at(group.inv(h)));
                order += 1;
            }
        }
        acc.div(&CycNumber::from_int(&field, order as i64)).unwrap()
    }
}

/// Whether ρ(h)S ⊆ S for all h in H (checked on generators).
pub fn is_invariant(m: &GModule, s: &Subspace, h: &ElementSet) -> bool {
    m.group()
        .generators(h)
        .iter()
        .all(|&g| s.vectors().iter().all(|v| s.contains_vector(&m.act(g, v))))
}

/// ρ(g)S.
pub fn translate(m: &GModule, g: usize, s: &Subspace) -> Subspace {
    s.image(m.rho(g))
}

/// KH·S, the smallest H-invariant subspace containing S.
pub fn span_under(m: &GModule, s: &Subspace, h: &ElementSet) -> Subspace {
    let gens = m.group().generators(h);
    let mut w = s.clone();
    loop {
        let mut next = w.clone();
        for &g in &gens {
            next = next.sum(&translate(m, g, &w));
        }
        if next == w {
            return w;
        }
        w = next;
    }
}

/// KH·v.
pub fn cyclic_submodule(m: &GModule, v: &[CycNumber], h: &ElementSet) -> Subspace {
    span_under(m, &Subspace::span(m.field(), m.dim(), vec![v.to_vec()]), h)
}

/// g·S for an H-submodule S, where g normalizes H.
pub fn conjugate_submodule(m: &GModule, s: &Subspace, h: &ElementSet, g: usize) -> Result<Subspace> {
    let grp = m.group();
    let conj = ElementSet::new(grp.order(), h.elems().iter().map(|&x| grp.conj(x, grp.inv(g))));
    if conj != *h {
        return Err(Error::NotNormal {
            detail: format!("{} does not normalize the acting subgroup", grp.label(g)),
        });
    }
    Ok(translate(m, g, s))
}

/// Basis of Hom_H(A, B): matrices P (dim B x dim A) with P ρ_A(g) = ρ_B(g) P.
pub fn intertwiners(a: &GModule, b: &GModule) -> Result<Vec<FMatrix>> {
    if a.acting() != b.acting() {
        return Err(Error::PreconditionFailure("modules over different subgroups".into()));
    }
    let (da, db) = (a.dim(), b.dim());
    let field = a.field();
    let gens = a.group().generators(a.acting());
    let unknowns = da * db;
    let mut rows = Vec::new();
    for &g in &gens {
        let (ra, rb) = (a.rho(g), b.rho(g));
        for r in 0..db {
            for c in 0..da {
                let mut eq = vec![CycNumber::zero(field); unknowns];
                for k in 0..da {
                    let idx = r * da + k;
                    eq[idx] = &eq[idx] + ra.get(k, c);
                }
                for k in 0..db {
                    let idx = k * da + c;
                    eq[idx] = &eq[idx] - rb.get(r, k);
                }
                rows.push(eq);
            }
        }
    }
    let system = FMatrix::from_rows(field, unknowns, rows);
    let solutions = if gens.is_empty() {
        (0..unknowns)
            .map(|k| super::matrix::unit_vector(field, unknowns, k))
            .collect()
    } else {
        system.nullspace()
    };
    Ok(solutions
        .into_iter()
        .map(|p| FMatrix::from_rows(field, da, p.chunks(da).map(|c| c.to_vec()).collect()))
        .collect())
}

/// H-invariant L with W = N ⊕ L, obtained by averaging a projection onto N.
pub fn invariant_complement(m: &GModule, w: &Subspace, n: &Subspace, h: &ElementSet) -> Result<Subspace> {
    if !n.is_subspace_of(w) {
        return Err(Error::NotSubspace("N is not contained in W".into()));
    }
    if !is_invariant(m, w, h) || !is_invariant(m, n, h) {
        return Err(Error::NotSubspace("W or N is not invariant".into()));
    }
    let field = m.field();
    let nb = n.vectors();
    let cb = n.linear_complement_in(w);
    let k = nb.len();
    let basis = FMatrix::from_columns(field, m.dim(), nb.iter().chain(&cb).cloned().collect());
    // linear projection onto N along span(cb)
    let project = |v: &Vector| -> Vector {
        let coords = basis.solve(v).expect("vector in W");
        let mut acc = vec![CycNumber::zero(field); m.dim()];
        for (c, b) in coords[..k].iter().zip(&nb) {
            acc = super::matrix::vec_add(&acc, &super::matrix::vec_scale(b, c));
        }
        acc
    };
    let order = CycNumber::from_int(field, h.len() as i64);
    let complement = w
        .vectors()
        .iter()
        .map(|v| {
            let parts = par::map(h.elems(), |&x| m.act(x, &project(&m.act(m.group().inv(x), v))));
            let mut avg = vec![CycNumber::zero(field); m.dim()];
            for p in parts {
                avg = super::matrix::vec_add(&avg, &p);
            }
            let avg = avg.iter().map(|c| c.div(&order).unwrap()).collect::<Vector>();
            v.iter().zip(&avg).map(|(a, b)| a - b).collect()
        })
        .collect();
    let l = Subspace::span(field, m.dim(), complement);
    debug_assert_eq!(l.dim() + n.dim(), w.dim());
    Ok(l)
}
