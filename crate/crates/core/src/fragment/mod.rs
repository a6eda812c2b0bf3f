//! Glider fragments M_0 ⊇ M_1 ⊇ ... inside an ambient module over a chain
//! of subgroups.

mod sub;

use std::fmt;
use std::sync::Arc;

pub use sub::{
    classify_subfragment, decompose_glider, direct_sum_check, irreducible_certificate, is_strict, strict_complement,
    Certificate, DecomposedPart, Triviality,
};

use crate::error::{Error, Result};
use crate::group::SubgroupChain;
use crate::linmod::{span_under, FMatrix, GModule, Subspace, Vector};
use crate::par;

/// A glider fragment: descending subspaces of an ambient module, indexed by
/// the levels of a subgroup chain. Levels past the last declared one repeat it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GliderFragment {
    chain: SubgroupChain,
    module: Arc<GModule>,
    levels: Vec<Subspace>,
}

/// One failed check of [`check_fragment`], with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentFailure {
    pub kind: &'static str,
    pub i: usize,
    pub j: usize,
    pub element: Option<String>,
    pub vector: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentReport {
    pub failures: Vec<FragmentFailure>,
}

impl FragmentReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for FragmentFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            "descending" => write!(f, "M_{} is not contained in M_{}", self.j, self.i),
            "star" => write!(f, "M_{} is not contained in star(M, {})", self.j, self.i),
            _ => write!(
                f,
                "G_{} M_{} not in M_{}: g = {}, v = ({})",
                self.i,
                self.j,
                self.j - self.i,
                self.element.as_deref().unwrap_or("?"),
                self.vector.as_ref().map(|v| v.join(", ")).unwrap_or_default()
            ),
        }
    }
}

impl GliderFragment {
    /// Levels are padded to length d + 1 by repeating the last one.
    pub fn new(chain: &SubgroupChain, module: &Arc<GModule>, mut levels: Vec<Subspace>) -> Result<Self> {
        if !chain.top().is_subset(module.acting()) {
            return Err(Error::PreconditionFailure(
                "module does not carry an action of the chain".into(),
            ));
        }
        if levels.is_empty() {
            return Err(Error::DimensionMismatch("fragment without levels".into()));
        }
        if let Some(bad) = levels.iter().position(|l| l.ambient_dim() != module.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "level {bad} lives in dimension {}, module has {}",
                levels[bad].ambient_dim(),
                module.dim()
            )));
        }
        while levels.len() <= chain.d() {
            levels.push(levels.last().unwrap().clone());
        }
        Ok(GliderFragment {
            chain: chain.clone(),
            module: module.clone(),
            levels,
        })
    }

    /// Levels from vector lists, each level spanned by its vectors.
    pub fn from_vectors(chain: &SubgroupChain, module: &Arc<GModule>, levels: Vec<Vec<Vector>>) -> Result<Self> {
        let n = module.dim();
        let spaces = levels
            .into_iter()
            .map(|vs| {
                if vs.iter().any(|v| v.len() != n) {
                    return Err(Error::DimensionMismatch(format!("vector length differs from {n}")));
                }
                Ok(Subspace::span(module.field(), n, vs))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(chain, module, spaces)
    }

    pub fn chain(&self) -> &SubgroupChain {
        &self.chain
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn d(&self) -> usize {
        self.chain.d()
    }

    /// Index of the last declared level.
    pub fn last_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &Subspace {
        &self.levels[k.min(self.last_level())]
    }

    pub fn levels(&self) -> &[Subspace] {
        &self.levels
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(Subspace::dim).collect()
    }

    /// Same chain and module with other levels.
    pub fn with_levels(&self, levels: Vec<Subspace>) -> Result<Self> {
        Self::new(&self.chain, &self.module, levels)
    }

    pub fn body(&self) -> Subspace {
        let mut b = self.levels[0].clone();
        for l in &self.levels[1..] {
            b = b.intersect(l);
        }
        b
    }

    /// Largest e with M_e ≠ B(M), or 0.
    pub fn essential_length(&self) -> usize {
        let b = self.body();
        (0..=self.last_level())
            .rev()
            .find(|&e| *self.level(e) != b)
            .unwrap_or(0)
    }

    /// {m ∈ M_0 : ρ(g) m ∈ M_0 for all g ∈ G_i}.
    pub fn star(&self, i: usize) -> Subspace {
        let m0 = &self.levels[0];
        let field = self.module.field();
        let n = self.module.dim();
        if m0.is_zero() || m0.dim() == n {
            return m0.clone();
        }
        // c·x = 0 for all x in M_0 exactly when c is in the nullspace of the basis
        let annihilator = m0.basis().nullspace();
        let basis = m0.vectors();
        let elems = self.chain.level(i).elems();
        let blocks = par::map(elems, |&g| {
            let images: Vec<Vector> = basis.iter().map(|b| self.module.act(g, b)).collect();
            annihilator
                .iter()
                .map(|c| {
                    images
                        .iter()
                        .map(|img| {
                            let mut acc = crate::exactfield::CycNumber::zero(field);
                            for (x, y) in c.iter().zip(img) {
                                if !x.is_zero() && !y.is_zero() {
                                    acc = &acc + &(x * y);
                                }
                            }
                            acc
                        })
                        .collect::<Vector>()
                })
                .collect::<Vec<Vector>>()
        });
        let rows: Vec<Vector> = blocks.into_iter().flatten().collect();
        let system = FMatrix::from_rows(field, basis.len(), rows);
        let vectors = system.nullspace().iter().map(|a| m0.combine(a)).collect();
        Subspace::span(field, n, vectors)
    }

    /// Drops the first e − d levels when el(M) = e > d.
    pub fn shift(&self) -> Result<Self> {
        let e = self.essential_length();
        let d = self.d();
        if e <= d {
            return Err(Error::NothingToShift { el: e, d });
        }
        self.with_levels(self.levels[e - d..].to_vec())
    }

    /// The fragment KG_{e-i} M_e at each level i ≤ e, then the deeper levels.
    pub fn generated_by_level(&self, e: usize) -> Vec<Subspace> {
        let me = self.level(e);
        (0..=self.last_level().max(e))
            .map(|i| {
                if i <= e {
                    span_under(&self.module, me, self.chain.level(e - i))
                } else {
                    self.level(i).clone()
                }
            })
            .collect()
    }
}

/// Verifies descending inclusions, KG_i M_j ⊆ M_{j-i} over all elements of
/// G_i, and M_j ⊆ star(M, i) for i ≤ j.
pub fn check_fragment(f: &GliderFragment) -> FragmentReport {
    let mut failures = Vec::new();
    let last = f.last_level();
    let d = f.d();
    for j in 1..=last {
        if !f.level(j).is_subspace_of(f.level(j - 1)) {
            failures.push(FragmentFailure {
                kind: "descending",
                i: j - 1,
                j,
                element: None,
                vector: None,
            });
        }
    }
    let pairs: Vec<(usize, usize)> = (0..=d).flat_map(|i| (i..=last + d).map(move |j| (i, j))).collect();
    let group = f.chain.group();
    let glider = par::map(&pairs, |&(i, j)| {
        let target = f.level(j - i);
        for &g in f.chain.level(i).elems() {
            for v in f.level(j).vectors() {
                let w = f.module.act(g, &v);
                if !target.contains_vector(&w) {
                    return Some(FragmentFailure {
                        kind: "glider",
                        i,
                        j,
                        element: Some(group.label(g).to_string()),
                        vector: Some(v.iter().map(|c| c.pretty()).collect()),
                    });
                }
            }
        }
        None
    });
    failures.extend(glider.into_iter().flatten());
    for i in 0..=d {
        let star = f.star(i);
        for j in i..=last {
            if !f.level(j).is_subspace_of(&star) {
                failures.push(FragmentFailure {
                    kind: "star",
                    i,
                    j,
                    element: None,
                    vector: None,
                });
            }
        }
    }
    FragmentReport { failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, Example};
    use crate::exactfield::CycField;
    use crate::group::SubgroupChain;

    fn q8() -> Example {
        corpus::q8_example().unwrap()
    }

    fn full(ex: &Example) -> Subspace {
        Subspace::full(&ex.field, ex.module.dim())
    }

    #[test]
    fn q8_example_is_a_fragment() {
        let ex = q8();
        let f = &ex.fragment;
        assert!(check_fragment(f).passed());
        assert!(f.body().is_zero());
        assert_eq!(f.essential_length(), 2);
        assert_eq!(f.dims(), vec![4, 3, 1, 0]);
        assert_eq!(irreducible_certificate(f).unwrap(), Certificate::Certified);
        assert_eq!(decompose_glider(f).unwrap().len(), 1);
    }

    #[test]
    fn constant_module_chain() {
        let ex = q8();
        let f = ex.fragment.with_levels(vec![full(&ex); 3]).unwrap();
        assert!(check_fragment(&f).passed());
        assert_eq!(f.body(), full(&ex));
        assert_eq!(f.essential_length(), 0);
        assert_eq!(f.star(2), full(&ex));
        assert!(matches!(irreducible_certificate(&f), Err(Error::BodyNonzero(4))));
    }

    #[test]
    fn non_descending_chain_fails() {
        let ex = q8();
        let m1 = ex.fragment.level(1).clone();
        let f = ex.fragment.with_levels(vec![full(&ex), m1, full(&ex)]).unwrap();
        let report = check_fragment(&f);
        assert!(!report.passed());
        assert_eq!(report.failures[0].kind, "descending");
        assert_eq!((report.failures[0].i, report.failures[0].j), (1, 2));
    }

    #[test]
    fn glider_axiom_violation_has_witness() {
        let ex = q8();
        // M_1 = span(e3) is not carried into M_0 = span(e3) by... use M_0 too small
        let f = ex
            .fragment
            .with_levels(vec![
                ex.span(&[&["0", "0", "1", "0"], &["1", "0", "0", "0"]]),
                ex.span(&[&["1", "0", "0", "0"]]),
            ])
            .unwrap();
        let report = check_fragment(&f);
        let glider = report.failures.iter().find(|x| x.kind == "glider").unwrap();
        assert_eq!((glider.i, glider.j), (1, 1));
        assert_eq!(glider.element.as_deref(), Some("j"));
    }

    /// Z2 swapping e0 and e1, fixing e2; V = span(e0, e2) is not invariant.
    fn swap_example() -> (Arc<GModule>, SubgroupChain) {
        let z2 = corpus::group("Z2").unwrap();
        let field = CycField::get(4);
        let cat = corpus::catalog(&z2, &field).unwrap();
        let triv = &cat.irrep("Z2", "triv").unwrap().module;
        let sign = &cat.irrep("Z2", "sign").unwrap().module;
        // basis (e0 + e1, e0 - e1, e2) diagonalizes the swap; rewrite in e-basis
        let sum = GModule::direct_sum(&[triv, sign, triv]).unwrap();
        let p = FMatrix::parse(
            &field,
            &[
                vec!["1".into(), "1".into(), "0".into()],
                vec!["1".into(), "-1".into(), "0".into()],
                vec!["0".into(), "0".into(), "1".into()],
            ],
        )
        .unwrap();
        let pinv = p.inverse().unwrap();
        let matrices = z2
            .all()
            .elems()
            .iter()
            .map(|&g| (g, p.mul(sum.rho(g)).mul(&pinv)))
            .collect();
        let module = GModule::new(&z2, &field, &z2.all(), 3, matrices).unwrap();
        let chain = SubgroupChain::from_labels(&z2, &[vec!["1"], vec!["1", "g"]]).unwrap();
        (Arc::new(module), chain)
    }

    #[test]
    fn star_of_non_invariant_subspace() {
        let (module, chain) = swap_example();
        let f3 = CycField::get(4);
        let e = |k| crate::linmod::unit_vector(&f3, 3, k);
        let v = GliderFragment::from_vectors(&chain, &module, vec![vec![e(0), e(2)], vec![e(2)]]).unwrap();
        assert_eq!(v.star(0), *v.level(0));
        assert_eq!(v.star(1), Subspace::span(&f3, 3, vec![e(2)]));
        let w = GliderFragment::from_vectors(&chain, &module, vec![vec![e(0), e(1), e(2)], vec![e(2)]]).unwrap();
        assert!(check_fragment(&w).passed());
        let n = v.levels().to_vec();
        assert!(is_strict(&w, &n));
        assert_eq!(classify_subfragment(&w, &n).unwrap(), Triviality::None);
        // naturalizing V: V ⊇ star(V, 1) is not strict inside W* = W ⊇ W
        let w_star = w.with_levels(vec![w.star(0), w.star(1)]).unwrap();
        assert!(!is_strict(&w_star, &[v.star(0), v.star(1)]));
    }

    #[test]
    fn classification_tags() {
        let ex = q8();
        let f = &ex.fragment;
        assert_eq!(
            classify_subfragment(f, f.levels()).unwrap(),
            Triviality::T3(vec![0, 1, 2, 3])
        );
        let zero = Subspace::zero(&ex.field, 4);
        let n = vec![f.level(0).clone(), zero.clone(), zero.clone()];
        assert_eq!(classify_subfragment(f, &n).unwrap(), Triviality::T2(1));
        let shifted = vec![f.level(1).clone(), f.level(2).clone(), zero];
        // N_2 = 0 ≠ M_2 matches before the shifted α = (1, 2, 3)
        assert_eq!(classify_subfragment(f, &shifted).unwrap(), Triviality::T2(2));
        let bad = vec![f.level(0).clone(), f.level(0).clone()];
        assert!(matches!(classify_subfragment(f, &bad), Err(Error::NotSubfragment(_))));
    }

    #[test]
    fn certificate_refutations() {
        let ex = q8();
        let f = &ex.fragment;
        let wide = f
            .with_levels(vec![
                f.level(0).clone(),
                f.level(1).clone(),
                ex.span(&[&["1", "0,1", "0", "0"], &["0", "0", "1", "0"]]),
                Subspace::zero(&ex.field, 4),
            ])
            .unwrap();
        assert!(check_fragment(&wide).passed());
        match irreducible_certificate(&wide).unwrap() {
            Certificate::Refuted { witness, .. } => {
                assert_eq!(witness[2], ex.span(&[&["1", "0,1", "0", "0"]]));
            }
            c => panic!("expected refutation, got {c:?}"),
        }
        let thin = f
            .with_levels(vec![
                f.level(0).clone(),
                f.level(1).clone(),
                ex.span(&[&["0", "0", "1", "1"]]),
                Subspace::zero(&ex.field, 4),
            ])
            .unwrap();
        match irreducible_certificate(&thin).unwrap() {
            Certificate::Refuted { witness, .. } => {
                let span34 = ex.span(&[&["0", "0", "1", "0"], &["0", "0", "0", "1"]]);
                assert_eq!(witness[0], span34);
                assert_eq!(witness[1], span34);
            }
            c => panic!("expected refutation, got {c:?}"),
        }
    }

    #[test]
    fn shifting() {
        let ex = q8();
        let f = &ex.fragment;
        assert_eq!(f.shift(), Err(Error::NothingToShift { el: 2, d: 2 }));
        let mut levels = vec![full(&ex)];
        levels.extend(f.levels().iter().cloned());
        let long = f.with_levels(levels).unwrap();
        assert_eq!(long.essential_length(), 3);
        let s = long.shift().unwrap();
        assert_eq!(s.dims(), vec![4, 3, 1, 0]);
        assert!(s.shift().is_err());
    }

    #[test]
    fn direct_sums() {
        let ex = q8();
        let f = &ex.fragment;
        assert!(!direct_sum_check(f, f, 2).unwrap());
        assert_eq!(direct_sum_check(f, f, 3), Err(Error::LevelOutOfRange(3)));
        let other = f
            .with_levels(vec![
                full(&ex),
                full(&ex),
                ex.span(&[&["1", "0,-1", "0", "0"]]),
                Subspace::zero(&ex.field, 4),
            ])
            .unwrap();
        assert!(direct_sum_check(f, &other, 2).unwrap());
    }

    #[test]
    fn strict_complements() {
        let ex = q8();
        let f = ex.fragment.with_levels(vec![full(&ex); 3]).unwrap();
        let zero = Subspace::zero(&ex.field, 4);
        let l = strict_complement(&f, f.levels()).unwrap();
        assert!(l.iter().all(Subspace::is_zero));
        assert_eq!(
            strict_complement(&f, std::slice::from_ref(&zero)).unwrap(),
            f.levels().to_vec()
        );
        let u = ex.span(&[&["1", "0", "0", "0"], &["0", "1", "0", "0"]]);
        let l = strict_complement(&f, std::slice::from_ref(&u)).unwrap();
        assert_eq!(l[0], ex.span(&[&["0", "0", "1", "0"], &["0", "0", "0", "1"]]));
        // not strict: N_1 smaller than N_0 ∩ M_1
        let err = strict_complement(&f, &[u, zero]);
        assert!(matches!(err, Err(Error::NotStrict(_))));
    }

    #[test]
    fn decomposition_of_two_lines() {
        let z2 = corpus::group("Z2").unwrap();
        let field = CycField::get(4);
        let cat = corpus::catalog(&z2, &field).unwrap();
        let m = GModule::direct_sum(&[
            &cat.irrep("Z2", "triv").unwrap().module,
            &cat.irrep("Z2", "sign").unwrap().module,
        ])
        .unwrap();
        let chain = SubgroupChain::from_labels(&z2, &[vec!["1"], vec!["1", "g"]]).unwrap();
        let k2 = Subspace::full(&field, 2);
        let f = GliderFragment::new(&chain, &Arc::new(m), vec![k2.clone(), k2, Subspace::zero(&field, 2)]).unwrap();
        assert!(matches!(
            irreducible_certificate(&f).unwrap(),
            Certificate::Refuted { .. }
        ));
        let parts = decompose_glider(&f).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| p.certificate == Certificate::Certified));
        assert_eq!(parts[0].levels[0].dim() + parts[1].levels[0].dim(), 2);
    }
}
