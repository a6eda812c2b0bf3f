use crate::error::{Error, Result};
use crate::exactfield::CycNumber;
use crate::group::ElementSet;
use crate::linmod::{intertwiners, FMatrix, GModule};

/// Scalars α with P_a P_b = α(a, b) P_{σ(ab)} ρ(h(a, b)), indexed by coset reps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    pub h: ElementSet,
    pub gprime: ElementSet,
    pub reps: Vec<usize>,
    pub intertwiners: Vec<FMatrix>,
    pub alpha: Vec<Vec<CycNumber>>,
}

impl FactorSet {
    pub fn value(&self, a: usize, b: usize) -> &CycNumber {
        &self.alpha[a][b]
    }

    /// α as printable rows.
    pub fn label_table(&self) -> Vec<Vec<String>> {
        self.alpha
            .iter()
            .map(|r| r.iter().map(CycNumber::pretty).collect())
            .collect()
    }
}

/// Coset representatives of H in G', identity first, each the smallest index
/// in its coset.
pub fn coset_reps(s: &GModule, gprime: &ElementSet) -> Vec<usize> {
    let g = s.group();
    let h = s.acting();
    let mut reps = vec![g.identity()];
    for &x in gprime.elems() {
        if !reps.iter().any(|&r| h.contains(g.mul(g.inv(r), x))) {
            reps.push(x);
        }
    }
    reps
}

fn first_nonzero(p: &FMatrix) -> Option<CycNumber> {
    (0..p.rows())
        .flat_map(|r| p.row(r).iter())
        .find(|c| !c.is_zero())
        .cloned()
}

/// Factor set of the simple H-module S over G' ⊇ H, with the intertwiners
/// normalized so their first nonzero entry is 1.
pub fn factor_set(s: &GModule, gprime: &ElementSet, reps: &[usize]) -> Result<FactorSet> {
    let g = s.group();
    let h = s.acting();
    let field = s.field();
    if !h.is_subset(gprime) {
        return Err(Error::PreconditionFailure("H is not contained in G'".into()));
    }
    g.require_normal(h, gprime, "H in G'")?;
    if reps.first() != Some(&g.identity()) || reps.len() * h.len() != gprime.len() {
        return Err(Error::PreconditionFailure(
            "reps must start with the identity and meet every coset once".into(),
        ));
    }
    let coset = |x: usize| -> Result<(usize, usize)> {
        reps.iter()
            .position(|&r| h.contains(g.mul(g.inv(r), x)))
            .map(|k| (k, g.mul(g.inv(reps[k]), x)))
            .ok_or_else(|| Error::PreconditionFailure(format!("{} lies in no listed coset", g.label(x))))
    };
    for (k, &r) in reps.iter().enumerate() {
        if !gprime.contains(r) || coset(r)?.0 != k {
            return Err(Error::PreconditionFailure(format!(
                "{} is not a new coset rep",
                g.label(r)
            )));
        }
    }

    let mut ps = Vec::with_capacity(reps.len());
    for &r in reps {
        let twisted: Vec<(usize, FMatrix)> = h
            .elems()
            .iter()
            .map(|&x| (x, s.rho(g.conj(x, g.inv(r))).clone()))
            .collect();
        let conj = GModule::new(g, field, h, s.dim(), twisted)?;
        let homs = intertwiners(s, &conj)?;
        match homs.len() {
            0 => return Err(Error::NotStabilized(format!("{}·S", g.label(r)))),
            1 => {}
            n => return Err(Error::IntertwinerNotUnique(n)),
        }
        let p = &homs[0];
        let lead = first_nonzero(p).ok_or(Error::ZeroVector)?;
        ps.push(p.scale(&lead.inv()?));
    }

    let n = reps.len();
    let mut alpha = vec![vec![CycNumber::one(field); n]; n];
    for a in 0..n {
        for b in 0..n {
            let (k, hh) = coset(g.mul(reps[a], reps[b]))?;
            let lhs = ps[a].mul(&ps[b]);
            let rhs = ps[k].mul(s.rho(hh));
            let (l, r) = (
                first_nonzero(&lhs).ok_or(Error::ZeroVector)?,
                first_nonzero(&rhs).ok_or(Error::ZeroVector)?,
            );
            let c = l.div(&r)?;
            if lhs != rhs.scale(&c) {
                return Err(Error::PreconditionFailure(format!(
                    "P_{} P_{} is not a multiple of P_{}",
                    g.label(reps[a]),
                    g.label(reps[b]),
                    g.label(reps[k])
                )));
            }
            alpha[a][b] = c;
        }
    }
    let fs = FactorSet {
        h: h.clone(),
        gprime: gprime.clone(),
        reps: reps.to_vec(),
        intertwiners: ps,
        alpha,
    };
    for a in 0..n {
        for b in 0..n {
            let ab = coset(g.mul(reps[a], reps[b]))?.0;
            for c in 0..n {
                let bc = coset(g.mul(reps[b], reps[c]))?.0;
                if fs.value(a, b) * fs.value(ab, c) != fs.value(b, c) * fs.value(a, bc) {
                    return Err(Error::CocycleIdentityViolation(
                        g.label(reps[a]).into(),
                        g.label(reps[b]).into(),
                        g.label(reps[c]).into(),
                    ));
                }
            }
        }
    }
    Ok(fs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{catalog, group};
    use crate::exactfield::CycField;
    use crate::group::Group;
    use std::sync::Arc;

    fn setup(name: &str, sub: &str, irrep: &str) -> (Arc<Group>, GModule) {
        let g = group(name).unwrap();
        let cat = catalog(&g, &CycField::get(4)).unwrap();
        let s = cat.irrep(sub, irrep).unwrap().module.clone();
        (g, s)
    }

    /// Oracle: is α = δβ for some β with values in the 4th roots of unity?
    fn is_coboundary(g: &Group, fs: &FactorSet) -> bool {
        let field = fs.alpha[0][0].field().clone();
        let n = fs.reps.len();
        let coset = |x: usize| fs.reps.iter().position(|&r| fs.h.contains(g.mul(g.inv(r), x))).unwrap();
        let mut exps = vec![0u32; n];
        loop {
            let beta: Vec<CycNumber> = exps.iter().map(|&e| CycNumber::zeta_pow(&field, e as i64)).collect();
            let ok = (0..n).all(|a| {
                (0..n).all(|b| {
                    let ab = coset(g.mul(fs.reps[a], fs.reps[b]));
                    fs.value(a, b) * &beta[ab] == &beta[a] * &beta[b]
                })
            });
            if ok {
                return true;
            }
            let mut k = 1;
            loop {
                if k == n {
                    return false;
                }
                exps[k] += 1;
                if exps[k] < 4 {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn trivial_quotient() {
        let (g, s) = setup("Z4", "Z2", "sign");
        let h = s.acting().clone();
        let fs = factor_set(&s, &h, &[g.identity()]).unwrap();
        assert!(fs.alpha[0][0].is_one());
    }

    #[test]
    fn sign_of_z2_in_z4() {
        let (g, s) = setup("Z4", "Z2", "sign");
        let all = g.all();
        let reps = coset_reps(&s, &all);
        assert_eq!(reps, [g.resolve("1").unwrap(), g.resolve("g").unwrap()]);
        let fs = factor_set(&s, &all, &reps).unwrap();
        assert_eq!(fs.label_table(), [["1", "1"], ["1", "-1"]]);
        assert!(is_coboundary(&g, &fs));
    }

    #[test]
    fn split_abelian_case() {
        let (g, s) = setup("V4", "<a>", "sign");
        let all = g.all();
        let fs = factor_set(&s, &all, &coset_reps(&s, &all)).unwrap();
        assert!(fs.alpha.iter().flatten().all(CycNumber::is_one));
        assert!(is_coboundary(&g, &fs));
    }

    #[test]
    fn sign_of_center_in_q8_is_not_a_coboundary() {
        let (g, s) = setup("Q8", "Z2", "sign");
        let all = g.all();
        let fs = factor_set(&s, &all, &coset_reps(&s, &all)).unwrap();
        assert_eq!(fs.reps.len(), 4);
        assert!(!is_coboundary(&g, &fs));
    }

    #[test]
    fn unstable_module_is_rejected() {
        let (g, s) = setup("Q8", "Z4^i", "V^i");
        let all = g.all();
        let reps = coset_reps(&s, &all);
        assert!(matches!(factor_set(&s, &all, &reps), Err(Error::NotStabilized(_))));
    }

    #[test]
    fn noncommuting_choice_of_reps_still_a_cocycle() {
        let (g, s) = setup("Q8", "Z2", "sign");
        let all = g.all();
        let reps: Vec<usize> = ["1", "-i", "j", "-k"].iter().map(|l| g.resolve(l).unwrap()).collect();
        let fs = factor_set(&s, &all, &reps).unwrap();
        assert!(fs.alpha[0].iter().all(CycNumber::is_one));
    }
}
