//! Induction of fragments along a filtered 2-cocycle, restriction, the star
//! comparison and the Mackey decomposition.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::CycNumber;
use crate::fragment::{check_fragment, GliderFragment};
use crate::group::{compute_cocycle, intersect_chain, mackey_transversal, Cocycle2, ElementSet, Transversal};
use crate::linmod::{zero_vector, FMatrix, GModule, Subspace, Vector};
use crate::par;

/// N^G together with the data it was built from. The ambient of `result` is
/// the block space ⊕_{t ∈ T} t ⊗ Ω_N, blocks in transversal order.
#[derive(Debug, Clone)]
pub struct InducedFragment {
    pub base: GliderFragment,
    pub transversal: Transversal,
    pub cocycle: Cocycle2,
    pub result: GliderFragment,
}

impl InducedFragment {
    /// Coordinates occupied by block k.
    pub fn block_range(&self, k: usize) -> std::ops::Range<usize> {
        let n = self.base.module().dim();
        k * n..(k + 1) * n
    }
}

/// Places v into block k of a space with `blocks` blocks of size v.len().
pub fn embed(blocks: usize, k: usize, v: &[CycNumber]) -> Vector {
    let n = v.len();
    let field = v.first().map(|c| c.field().clone());
    let Some(field) = field else { return Vec::new() };
    let mut out = zero_vector(&field, blocks * n);
    out[k * n..(k + 1) * n].clone_from_slice(v);
    out
}

/// ⊕_k (block k) ⊗ S for a subspace S of the base space.
pub fn blockwise(blocks: usize, s: &Subspace) -> Subspace {
    let n = s.ambient_dim();
    let vectors = (0..blocks)
        .flat_map(|k| s.vectors().into_iter().map(move |v| embed(blocks, k, &v)))
        .collect();
    Subspace::span(s.field(), blocks * n, vectors)
}

/// Induces an H-chain fragment N to G along the transversal T.
pub fn induce(base: &GliderFragment, t: &Transversal, cocycle: &Cocycle2) -> Result<InducedFragment> {
    if base.chain() != t.h_chain() {
        return Err(Error::PreconditionFailure(
            "fragment chain differs from the transversal's H-chain".into(),
        ));
    }
    cocycle.require_filtered(t)?;
    let g = t.group().clone();
    let h_chain = t.h_chain();
    for i in 0..=h_chain.d() {
        g.require_normal(h_chain.level(i), t.g_chain().top(), &format!("H_{i} in G"))?;
    }
    let omega = base.module();
    let n = omega.dim();
    let blocks = t.len();
    let field = omega.field().clone();
    let top = t.g_chain().top().clone();
    let reps = t.reps().to_vec();

    let build = |&g1: &usize| -> Result<(usize, FMatrix)> {
        let (k1, h1) = t.decompose(g1);
        let mut m = FMatrix::zeros(&field, blocks * n, blocks * n);
        for (b, &tb) in reps.iter().enumerate() {
            let target = t.coset_index(g.mul(g1, tb));
            // twisted formula h(t1, t)·t⁻¹h1t against the direct σ(g1 t)⁻¹ g1 t
            let twisted = g.mul(cocycle.value(k1, b), g.conj(h1, tb));
            let direct = g.mul(g.inv(reps[target]), g.mul(g1, tb));
            if twisted != direct {
                return Err(Error::EquivarianceViolation(format!(
                    "twisted action differs from the direct one at ({}, {})",
                    g.label(g1),
                    g.label(tb)
                )));
            }
            let r = omega.rho(twisted);
            for i in 0..n {
                for j in 0..n {
                    m.set(target * n + i, b * n + j, r.get(i, j).clone());
                }
            }
        }
        Ok((g1, m))
    };
    let matrices = par::map(top.elems(), build).into_iter().collect::<Result<Vec<_>>>()?;
    let module = Arc::new(GModule::new(&g, &field, &top, blocks * n, matrices)?);
    let levels = base.levels().iter().map(|l| blockwise(blocks, l)).collect();
    let result = GliderFragment::new(t.g_chain(), &module, levels)?;
    let report = check_fragment(&result);
    if let Some(first) = report.failures.first() {
        return Err(Error::PreconditionFailure(format!(
            "induced chain is not a fragment: {first}"
        )));
    }
    Ok(InducedFragment {
        base: base.clone(),
        transversal: t.clone(),
        cocycle: cocycle.clone(),
        result,
    })
}

/// The same levels viewed over H_i = G_i ∩ H.
pub fn restrict_fragment(m: &GliderFragment, h: &ElementSet) -> Result<GliderFragment> {
    let chain = intersect_chain(m.chain(), h)?;
    let module = Arc::new(m.module().restrict(h)?);
    GliderFragment::new(&chain, &module, m.levels().to_vec())
}

/// Per-level comparison of star(N^G, μ) with KT ⊗ star(N, μ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarLemmaReport {
    /// (μ, dim of star(N^G, μ), dim of KT ⊗ star(N, μ), equal)
    pub levels: Vec<(usize, usize, usize, bool)>,
}

impl StarLemmaReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(|l| l.3)
    }
}

pub fn star_lemma_check(ind: &InducedFragment) -> StarLemmaReport {
    let blocks = ind.transversal.len();
    let levels = (0..=ind.result.d())
        .map(|mu| {
            let lhs = ind.result.star(mu);
            let rhs = blockwise(blocks, &ind.base.star(mu));
            (mu, lhs.dim(), rhs.dim(), lhs == rhs)
        })
        .collect();
    StarLemmaReport { levels }
}

/// Outcome of a verified Mackey decomposition.
#[derive(Debug, Clone)]
pub struct MackeyReport {
    pub s: Vec<String>,
    pub u: Vec<String>,
    pub t: Vec<String>,
    /// Restriction of N^G to E.
    pub lhs: GliderFragment,
    /// ⊕_{u ∈ U} ((u ⊗ N) restricted to E ∩ H) induced to E.
    pub rhs: GliderFragment,
    /// Block permutation: RHS block (u, s) goes to LHS block of s·u.
    pub block_map: Vec<usize>,
    pub level_dims: Vec<usize>,
    pub checked: usize,
}

/// (u ⊗ N) as a fragment over the (E ∩ H)-chain: z acts by ρ_N(u⁻¹ z u).
fn twisted_base(base: &GliderFragment, u: usize, eh_chain: &crate::group::SubgroupChain) -> Result<GliderFragment> {
    let g = base.chain().group();
    let omega = base.module();
    let acting = eh_chain.top();
    let matrices = acting
        .elems()
        .iter()
        .map(|&z| (z, omega.rho(g.conj(z, u)).clone()))
        .collect();
    let module = Arc::new(GModule::new(g, omega.field(), acting, omega.dim(), matrices)?);
    GliderFragment::new(eh_chain, &module, base.levels().to_vec())
}

/// Verifies (N^G)_E ≅ ⊕_{u ∈ U} [(u ⊗ N)_{E∩H}]^E through the block map
/// s ⊗ u ⊗ n ↦ su ⊗ n.
pub fn mackey_decompose(
    g_chain: &crate::group::SubgroupChain,
    base: &GliderFragment,
    e: &ElementSet,
) -> Result<MackeyReport> {
    let g = g_chain.group().clone();
    let h = base.chain().top().clone();
    let mt = mackey_transversal(g_chain, &h, e)?;
    if *base.chain() != mt.h_chain {
        return Err(Error::PreconditionFailure("fragment chain is not G_i ∩ H".into()));
    }
    let cocycle_t = compute_cocycle(&mt.t)?;
    let induced = induce(base, &mt.t, &cocycle_t)?;
    let lhs = restrict_fragment(&induced.result, e)?;

    let cocycle_s = compute_cocycle(&mt.s)?;
    let mut parts = Vec::new();
    for &u in &mt.u {
        let tb = twisted_base(base, u, &mt.eh_chain)?;
        parts.push(induce(&tb, &mt.s, &cocycle_s)?);
    }
    let modules: Vec<&GModule> = parts.iter().map(|p| p.result.module().as_ref()).collect();
    let rhs_module = Arc::new(GModule::direct_sum(&modules)?);
    let part_dim = parts[0].result.module().dim();
    let total = rhs_module.dim();
    let field = rhs_module.field().clone();
    let last = base.last_level();
    let rhs_levels: Vec<Subspace> = (0..=last)
        .map(|k| {
            let vectors = parts
                .iter()
                .enumerate()
                .flat_map(|(p, ind)| {
                    ind.result.level(k).vectors().into_iter().map(move |v| {
                        let mut w = zero_vector(&v[0].field().clone(), total);
                        w[p * part_dim..(p + 1) * part_dim].clone_from_slice(&v);
                        w
                    })
                })
                .collect();
            Subspace::span(&field, total, vectors)
        })
        .collect();
    let rhs = GliderFragment::new(&mt.e_chain, &rhs_module, rhs_levels)?;

    // RHS block (u_index, s_index) sits at u_index * |S| + s_index
    let ns = mt.s.len();
    let n = base.module().dim();
    let mut block_map = vec![usize::MAX; mt.t.len()];
    for (k, &(si, ui)) in mt.factors.iter().enumerate() {
        block_map[ui * ns + si] = k;
    }
    let mut phi = FMatrix::zeros(&field, total, total);
    for (src, &dst) in block_map.iter().enumerate() {
        for c in 0..n {
            phi.set(dst * n + c, src * n + c, CycNumber::one(&field));
        }
    }
    if phi.rank() != total || lhs.module().dim() != total {
        return Err(Error::EquivarianceViolation("block map is not bijective".into()));
    }
    for k in 0..=last {
        if rhs.level(k).image(&phi) != *lhs.level(k) {
            return Err(Error::EquivarianceViolation(format!("level {k} is not preserved")));
        }
    }
    let mut jobs = Vec::new();
    for i in 0..=g_chain.d() {
        for &x in mt.e_chain.level(i).elems() {
            for j in i..=last.max(g_chain.d()) {
                jobs.push((i, x, j));
            }
        }
    }
    let failures = par::map(&jobs, |&(i, x, j)| {
        let mut count = 0;
        for v in rhs.level(j).vectors() {
            let left = phi.mul_vec(&rhs.module().act(x, &v));
            let right = lhs.module().act(x, &phi.mul_vec(&v));
            if left != right {
                return Err(Error::EquivarianceViolation(format!(
                    "element {} of E_{i} on level {j}",
                    g.label(x)
                )));
            }
            count += 1;
        }
        Ok(count)
    });
    let checked = failures.into_iter().sum::<Result<usize>>()?;
    let level_dims = lhs.dims();
    Ok(MackeyReport {
        s: mt.s.labels(),
        u: mt.u.iter().map(|&x| g.label(x).to_string()).collect(),
        t: mt.t.labels(),
        lhs,
        rhs,
        block_map,
        level_dims,
        checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, Example};
    use crate::group::{ascending_transversal, SubgroupChain};
    use crate::linmod::unit_vector;

    fn ex() -> Example {
        corpus::q8_example().unwrap()
    }

    /// Fragment over the H-chain of `g_chain` with module a sum of catalog irreps.
    fn base(
        ex: &Example,
        g_chain: &SubgroupChain,
        h: &str,
        irreps: &[&str],
        levels: Vec<Vec<Vector>>,
    ) -> (GliderFragment, Transversal, Cocycle2) {
        let hset = ex.catalog.entry_by_name(h).unwrap().subgroup.clone();
        let hc = intersect_chain(g_chain, &hset).unwrap();
        let module = Arc::new(ex.sum_of(h, irreps).unwrap());
        let n = GliderFragment::from_vectors(&hc, &module, levels).unwrap();
        let t = ascending_transversal(g_chain, &hc).unwrap();
        let c = compute_cocycle(&t).unwrap();
        (n, t, c)
    }

    fn one_dim_levels(ex: &Example, count: usize) -> Vec<Vec<Vector>> {
        let mut levels = vec![vec![unit_vector(&ex.field, 1, 0)]; count];
        levels.push(vec![]);
        levels
    }

    #[test]
    fn induction_from_the_whole_group_is_identity() {
        let ex = ex();
        let levels = ex.fragment.levels().iter().map(|l| l.vectors()).collect();
        let (n, t, c) = base(&ex, &ex.chain, "Q8", &["U", "T3", "T2"], levels);
        assert_eq!(t.labels(), ["1"]);
        let ind = induce(&n, &t, &c).unwrap();
        assert_eq!(ind.result.levels(), n.levels());
        for g in 0..8 {
            assert_eq!(ind.result.module().rho(g), n.module().rho(g));
        }
    }

    #[test]
    fn induce_v_i_from_z4j() {
        let ex = ex();
        let levels = one_dim_levels(&ex, 3);
        let (n, t, c) = base(&ex, &ex.chain, "Z4^j", &["V^i"], levels);
        assert_eq!(t.labels(), ["1", "i"]);
        let ind = induce(&n, &t, &c).unwrap();
        assert_eq!(ind.result.dims(), vec![2, 2, 2, 0]);
        // by hand: i·(1⊗n) = i⊗n, i·(i⊗n) = 1⊗(-1)n; j·(1⊗n) = 1⊗(i n), j·(i⊗n) = i⊗(-j)n
        let m = |rows: &[&[&str]]| {
            let text: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
            FMatrix::parse(&ex.field, &text).unwrap()
        };
        let g = &ex.group;
        assert_eq!(
            *ind.result.module().rho(g.resolve("i").unwrap()),
            m(&[&["0", "-1"], &["1", "0"]])
        );
        assert_eq!(
            *ind.result.module().rho(g.resolve("j").unwrap()),
            m(&[&["0,1", "0"], &["0", "0,-1"]])
        );
        assert!(check_fragment(&ind.result).passed());
        // the induced module is U
        assert_eq!(ex.catalog.identify(ind.result.module()).as_deref(), Some("U"));
        assert_eq!(ind.result.body(), blockwise(2, &n.body()));
    }

    /// Classical induction: χ^G(g) = Σ_{t ∈ T, t⁻¹gt ∈ H} χ(t⁻¹gt).
    #[test]
    fn one_step_chain_gives_classical_induction() {
        let ex = ex();
        let g = &ex.group;
        let chain =
            SubgroupChain::from_labels(g, &[vec!["1"], g.labels().iter().map(String::as_str).collect()]).unwrap();
        let (n, t, c) = base(&ex, &chain, "Z4^k", &["V^-i"], vec![vec![unit_vector(&ex.field, 1, 0)]]);
        let ind = induce(&n, &t, &c).unwrap();
        let chi = ind.result.module().character();
        let chi_h = n.module().character();
        let h = n.chain().top();
        for x in 0..g.order() {
            let mut expected = CycNumber::zero(&ex.field);
            for &tt in t.reps() {
                let y = g.conj(x, tt);
                if h.contains(y) {
                    expected = &expected + chi_h.value_at(y);
                }
            }
            assert_eq!(*chi.value_at(x), expected, "at {}", g.label(x));
        }
    }

    #[test]
    fn star_lemma_on_a_non_natural_base() {
        let ex = ex();
        let f = &ex.field;
        let e = |k| unit_vector(f, 3, k);
        let levels = vec![
            vec![crate::linmod::vec_add(&e(0), &e(1)), e(2)],
            vec![e(2)],
            vec![e(2)],
            vec![],
        ];
        let (n, t, c) = base(&ex, &ex.chain, "Z4^i", &["V^i", "V^-i", "V^1"], levels);
        assert!(check_fragment(&n).passed());
        assert_ne!(n.star(1), *n.level(1));
        let ind = induce(&n, &t, &c).unwrap();
        let report = star_lemma_check(&ind);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.levels[0].1, ind.result.level(0).dim());
    }

    #[test]
    fn star_lemma_on_a_natural_base() {
        let ex = ex();
        let levels = one_dim_levels(&ex, 3);
        let (n, t, c) = base(&ex, &ex.chain, "Z4^j", &["V^i"], levels);
        let ind = induce(&n, &t, &c).unwrap();
        let report = star_lemma_check(&ind);
        assert!(report.passed());
        for (mu, lhs, _, _) in report.levels {
            assert_eq!(lhs, ind.result.level(mu).dim());
        }
    }

    #[test]
    fn unfiltered_cocycle_is_refused() {
        let d8 = corpus::group("D8").unwrap();
        let chain = SubgroupChain::from_labels(
            &d8,
            &[
                vec!["e"],
                vec!["e", "x"],
                vec!["e", "x", "a2", "a2x"],
                d8.labels().iter().map(String::as_str).collect(),
            ],
        )
        .unwrap();
        let hset = d8.set_from_labels(&["e", "a2"]).unwrap();
        let hc = intersect_chain(&chain, &hset).unwrap();
        let field = crate::exactfield::CycField::get(4);
        let module = Arc::new(GModule::trivial(&d8, &field, &hset, 1));
        let n = GliderFragment::new(&hc, &module, vec![Subspace::full(&field, 1)]).unwrap();
        let t = ascending_transversal(&chain, &hc).unwrap();
        let c = compute_cocycle(&t).unwrap();
        assert!(matches!(
            induce(&n, &t, &c),
            Err(Error::CocycleNotFiltered { level: 1, .. })
        ));
    }

    #[test]
    fn restriction() {
        let ex = ex();
        let same = restrict_fragment(&ex.fragment, ex.chain.top()).unwrap();
        assert_eq!(same.levels(), ex.fragment.levels());
        assert_eq!(same.chain(), &ex.chain);
        let z4j = ex.set(&["1", "j", "-1", "-j"]);
        let r = restrict_fragment(&ex.fragment, &z4j).unwrap();
        assert!(check_fragment(&r).passed());
        assert_eq!(r.chain().level(2), &z4j);
    }

    #[test]
    fn mackey_q8() {
        let ex = ex();
        let levels = one_dim_levels(&ex, 3);
        let (n, _, _) = base(&ex, &ex.chain, "Z4^j", &["V^i"], levels);
        let e = ex.set(&["1", "i", "-1", "-i"]);
        let report = mackey_decompose(&ex.chain, &n, &e).unwrap();
        assert_eq!(report.u, ["1"]);
        assert_eq!(report.s, ["1", "i"]);
        assert_eq!(report.level_dims, vec![2, 2, 2, 0]);
        assert!(report.checked > 0);
        // E = G
        let report = mackey_decompose(&ex.chain, &n, ex.chain.top()).unwrap();
        assert_eq!(report.u, ["1"]);
        assert_eq!(report.block_map, vec![0, 1]);
        // E = 1: U is a full transversal and φ permutes blocks
        let report = mackey_decompose(&ex.chain, &n, &ex.group.trivial()).unwrap();
        assert_eq!(report.s, ["1"]);
        assert_eq!(report.u.len(), 2);
    }
}
