//! Acceptance run: one PASS/FAIL line per criterion, exact equality throughout.
//!
//! Runs without the test harness so the lines always show.

use std::path::PathBuf;
use std::sync::Arc;

use glider::cli::{run, Command, Session};
use glider::clifford::{going_down, going_up};
use glider::corpus::{self, d8_example, q8_example, Example};
use glider::exactfield::{CycNumber, ProjPoint};
use glider::fragment::{
    check_fragment, classify_subfragment, irreducible_certificate, strict_complement, Certificate, GliderFragment,
    Triviality,
};
use glider::geometry::{coefficient_matrices, constraint_check, evaluate_point, rank_locus, Semantics};
use glider::group::{compute_cocycle, intersect_chain, ElementSet, Group, SubgroupChain, Transversal};
use glider::induct::{blockwise, induce, mackey_decompose, star_lemma_check};
use glider::linmod::{span_under, GModule, Subspace, Vector};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

macro_rules! ensure_eq {
    ($a:expr, $b:expr) => {{
        let (a, b) = (&$a, &$b);
        if a != b {
            return Err(format!("{} = {:?}, expected {:?}", stringify!($a), a, b));
        }
    }};
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn session(name: &str) -> Result<Session, String> {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("data/sessions/{name}.session"));
    ok(Session::load(&p))
}

fn set(g: &Group, labels: &[&str]) -> ElementSet {
    g.set_from_labels(labels).unwrap()
}

fn point(ex: &Example, coords: &[&str]) -> ProjPoint {
    ProjPoint::new(ex.vector(coords)).unwrap()
}

fn points(v: &Option<Vec<ProjPoint>>) -> Vec<String> {
    let mut out: Vec<String> = v.iter().flatten().map(|p| p.to_string()).collect();
    out.sort();
    out
}

fn c1_going_down() -> Outcome {
    let s = session("q8")?;
    let ex = q8_example().map_err(|e| e.to_string())?;
    let m = s.fragment.module().as_ref();
    let h = s.h.clone().unwrap();
    let delta = ex.span(&[&["1", "0,1", "1", "1"]]);
    let z2 = set(&s.group, &["1", "-1"]);
    let e1 = ex.span(&[&["1", "0,1", "0", "0"]]);
    let e34 = ex.span(&[&["0", "0", "1", "1"]]);
    let kz2 = span_under(m, &delta, &z2);
    ensure_eq!(kz2, e1.sum(&e34));
    ensure!(e1.intersect(&e34).is_zero(), "Ce1 + C(e3+e4) is not direct");

    let down = ok(going_down(&s.fragment, &h, &s.catalog))?;
    let blocks: Vec<&Subspace> = down.nodes.iter().map(|n| &n.block).collect();
    ensure_eq!(blocks, vec![&e1, &e34]);

    let tail = ex.span(&[&["0", "0", "-1", "1"]]);
    ensure!(kz2.intersect(&tail).is_zero(), "CZ2Δ meets C(-e3+e4)");
    ensure_eq!(*s.fragment.level(1), kz2.sum(&tail));

    let z4j = set(&s.group, &["1", "j", "-1", "-j"]);
    let u = ex.span(&[&["1", "0", "0", "0"], &["0", "1", "0", "0"]]);
    for n in &down.nodes {
        ensure_eq!(n.group, z4j);
        ensure_eq!(n.next_group, Some(ex.chain.top().clone()));
    }
    let h2 = intersect_chain(&s.chain, &h).unwrap().level(2).clone();
    let g2 = ex.chain.level(2).clone();
    ensure_eq!(span_under(m, &e1, &h2), u);
    ensure_eq!(span_under(m, &e1, &g2), u);
    let report = ok(run(&s, Command::Down))?;
    ensure!(report.passed(), "down report has failing checks");
    Ok(())
}

fn c2_cocycle() -> Outcome {
    let ex = q8_example().map_err(|e| e.to_string())?;
    let g = &ex.group;
    let h = ex.set(&["1", "i", "-1", "-i"]);
    let h_chain = ok(intersect_chain(&ex.chain, &h))?;
    let t = ok(Transversal::from_reps(
        &ex.chain,
        &h_chain,
        vec![g.identity(), g.resolve("j").unwrap()],
    ))?;
    ensure_eq!(t.labels(), vec!["1".to_string(), "j".to_string()]);
    let c = ok(compute_cocycle(&t))?;
    let h1 = h_chain.level(1);
    ensure_eq!(h1.labels(g), vec!["1".to_string(), "-1".to_string()]);
    // oracle: the section found by scanning cosets directly
    let sigma = |x: usize| -> usize {
        *t.reps()
            .iter()
            .find(|&&r| h.contains(g.mul(g.inv(r), x)))
            .expect("every element lies in some coset")
    };
    let n = t.len();
    let hv = |a: usize, b: usize| {
        let p = g.mul(t.reps()[a], t.reps()[b]);
        g.mul(g.inv(sigma(p)), p)
    };
    let idx = |x: usize| t.reps().iter().position(|&r| r == sigma(x)).unwrap();
    let mut pairs = 0;
    for a in 0..n {
        for b in 0..n {
            ensure_eq!(c.value(a, b), hv(a, b));
            ensure!(h1.contains(c.value(a, b)), "h({a},{b}) not in H_1");
            pairs += 1;
            for k in 0..n {
                // h(ab, k) h(a, b)^{t_k} = h(a, bk) h(b, k), with x^s = s⁻¹xs
                let ab = idx(g.mul(t.reps()[a], t.reps()[b]));
                let bk = idx(g.mul(t.reps()[b], t.reps()[k]));
                let lhs = g.mul(hv(ab, k), g.conj(hv(a, b), t.reps()[k]));
                let rhs = g.mul(hv(a, bk), hv(b, k));
                ensure!(lhs == rhs, "identity fails at ({a},{b},{k})");
            }
        }
    }
    ensure_eq!(pairs, 4);
    ensure!(c.is_filtered(), "cocycle not filtered");
    Ok(())
}

fn c3_geometry() -> Outcome {
    let ex = q8_example().map_err(|e| e.to_string())?;
    let u = &ok(ex.catalog.irrep("Q8", "U"))?.module;
    let h_chain = ok(intersect_chain(&ex.chain, &ex.set(&["1", "i", "-1", "-i"])))?;
    let (a1, b1) = ok(coefficient_matrices(u, h_chain.level(1), ex.chain.level(1)))?;
    ensure_eq!(a1.to_string(), "(x0 -x0; x1 -x1)");
    ensure_eq!(b1.to_string(), "(x0 -x1 -x0 x1; x1 x0 -x1 -x0)");
    ensure_eq!(a1.generic_rank(), 1);
    let l1 = ok(rank_locus(&a1, &b1))?;
    ensure_eq!(
        l1.generators.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        vec!["x0^2 + x1^2"]
    );
    ensure_eq!(points(&l1.points), vec!["[1:-i]", "[1:i]"]);
    // oracle: substitute the points back
    for p in l1.points.iter().flatten() {
        ensure_eq!(b1.eval(p.coords()).rank(), 1);
    }
    let (a2, b2) = ok(coefficient_matrices(u, h_chain.level(2), ex.chain.level(2)))?;
    let l2 = ok(rank_locus(&a2, &b2))?;
    ensure_eq!(l2.semantics, Semantics::Degenerate);
    ensure_eq!(points(&l2.points), vec!["[0:1]", "[1:0]"]);
    for p in l2.points.iter().flatten() {
        ensure_eq!(a2.eval(p.coords()).rank(), 1);
    }
    Ok(())
}

fn c4_evaluation() -> Outcome {
    let ex = q8_example().map_err(|e| e.to_string())?;
    let u = &ok(ex.catalog.irrep("Q8", "U"))?.module;
    let h_chain = ok(intersect_chain(&ex.chain, &ex.set(&["1", "i", "-1", "-i"])))?;
    let r = ok(evaluate_point(u, &ex.chain, &h_chain, point(&ex, &["1", "0"]).coords()))?;
    let groups: Vec<&ElementSet> = r.stages.iter().map(|s| &s.group).collect();
    let (z4j, z4i) = (ex.set(&["1", "j", "-1", "-j"]), ex.set(&["1", "i", "-1", "-i"]));
    ensure_eq!(groups, vec![&z4j, &z4i]);
    ensure_eq!(r.inclusions, vec![false]);
    let s = session("q8")?;
    let report = ok(run(&s, Command::Evaluate))?;
    ensure_eq!(report.results["nested"], serde_json::json!(false));
    Ok(())
}

fn c5_d8() -> Outcome {
    let ex = d8_example().map_err(|e| e.to_string())?;
    let sm = &ok(ex.catalog.irrep("D8", "S"))?.module;
    let h_chain = ok(intersect_chain(&ex.chain, &ex.set(&["e", "x", "a2", "a2x"])))?;
    let (a1, b1) = ok(coefficient_matrices(sm, h_chain.level(1), ex.chain.level(1)))?;
    let l1 = ok(rank_locus(&a1, &b1))?;
    ensure_eq!(
        l1.generators.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        vec!["x0*x1"]
    );
    ensure_eq!(points(&l1.points), vec!["[0:1]", "[1:0]"]);
    let (a2, b2) = ok(coefficient_matrices(sm, h_chain.level(2), ex.chain.level(2)))?;
    let l2 = ok(rank_locus(&a2, &b2))?;
    ensure_eq!(
        l2.generators.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        vec!["x0^2 - x1^2"]
    );
    Ok(())
}

fn num(ex: &Example, s: &str) -> CycNumber {
    CycNumber::parse_text(&ex.field, s).unwrap()
}

/// (group, chain, H) pairs shipped with the corpus.
fn shipped_pairs() -> Vec<(Example, Vec<&'static str>)> {
    let mut out = Vec::new();
    for h in [
        vec!["1", "i", "-1", "-i"],
        vec!["1", "j", "-1", "-j"],
        vec!["1", "k", "-1", "-k"],
        vec!["1", "-1"],
    ] {
        out.push((q8_example().unwrap(), h));
    }
    for h in [
        vec!["e", "x", "a2", "a2x"],
        vec!["e", "ax", "a2", "a3x"],
        vec!["e", "a", "a2", "a3"],
        vec!["e", "a2"],
    ] {
        out.push((d8_example().unwrap(), h));
    }
    out
}

/// Fragments over the H-chain: every catalog irrep of H with M_{d-i} = KH_i·a
/// for a few vectors a, plus the 1-dim constant ones.
fn base_fragments(ex: &Example, h_chain: &SubgroupChain) -> Vec<GliderFragment> {
    let h = h_chain.top();
    let name = ex.catalog.subgroup_name(h);
    let d = h_chain.d();
    let mut out = Vec::new();
    let irreps = &ex.catalog.entry_by_name(&name).unwrap().irreps;
    let mut modules: Vec<Arc<GModule>> = irreps.iter().map(|i| Arc::new(i.module.clone())).collect();
    if irreps.len() >= 2 {
        let pair = [&irreps[0].module, &irreps[irreps.len() - 1].module];
        modules.push(Arc::new(GModule::direct_sum(&pair).unwrap()));
    }
    for m in modules {
        let n = m.dim();
        let candidates: Vec<Vector> = match n {
            1 => vec![ex.vector(&["1"])],
            _ => vec![
                std::iter::once("1")
                    .chain(std::iter::repeat_n("0", n - 1))
                    .map(|s| num(ex, s))
                    .collect(),
                (0..n).map(|k| num(ex, ["1", "2", "0,1", "3"][k % 4])).collect(),
            ],
        };
        for a in candidates {
            let line = Subspace::span(&ex.field, n, vec![a]);
            let mut levels: Vec<Subspace> = (0..=d).map(|k| span_under(&m, &line, h_chain.level(d - k))).collect();
            levels.push(Subspace::zero(&ex.field, n));
            out.push(GliderFragment::new(h_chain, &m, levels).unwrap());
        }
    }
    out
}

fn c6_going_up() -> Outcome {
    let mut runs = 0;
    for (ex, h) in shipped_pairs() {
        let h_chain = ok(intersect_chain(&ex.chain, &ex.set(&h)))?;
        let d = h_chain.d();
        let t = ok(glider::group::ascending_transversal(&ex.chain, &h_chain))?;
        let c = ok(compute_cocycle(&t))?;
        for base in base_fragments(&ex, &h_chain) {
            if base.essential_length() != d || irreducible_certificate(&base).ok() != Some(Certificate::Certified) {
                continue;
            }
            if !c.is_filtered() {
                return Err(format!("{h:?}: ascending cocycle not filtered"));
            }
            let up = ok(going_up(&base, &t, &c))?;
            let index = ex.group.order() / h.len();
            ensure_eq!(up.summands.len(), index);
            let ind = ok(induce(&base, &t, &c))?.result;
            for (a, s) in up.summands.iter().enumerate() {
                ensure_eq!(irreducible_certificate(s).ok(), Some(Certificate::Certified));
                for b in &up.summands[a + 1..] {
                    ensure!(
                        s.level(d).intersect(b.level(d)).is_zero(),
                        "{h:?}: summands meet at level {d}"
                    );
                }
            }
            for k in 0..=ind.last_level() {
                let sum = Subspace::sum_all(&ex.field, ind.module().dim(), up.summands.iter().map(|s| s.level(k)));
                ensure!(sum == *ind.level(k), "{h:?}: level {k} not reconstructed");
            }
            runs += 1;
        }
    }
    ensure!(runs >= 8, "only {runs} certified bases in the corpus");
    Ok(())
}

fn c7_mackey() -> Outcome {
    let ex = q8_example().map_err(|e| e.to_string())?;
    let g = &ex.group;
    let (z4i, z4j) = (vec!["1", "i", "-1", "-i"], vec!["1", "j", "-1", "-j"]);
    let mut runs = 0;
    for (h, e) in [(z4j.clone(), z4i.clone()), (z4i, z4j)] {
        let h_chain = ok(intersect_chain(&ex.chain, &ex.set(&h)))?;
        let e_set = ex.set(&e);
        let bases = base_fragments(&ex, &h_chain);
        ensure!(bases.len() >= 3, "fewer than 3 fragments over {h:?}");
        for base in bases.iter().take(3) {
            let r = ok(mackey_decompose(&ex.chain, base, &e_set))?;
            // oracle: rebuild φ from the block map and test it on every level basis
            let n = base.module().dim();
            let total = r.lhs.module().dim();
            let phi = |v: &[CycNumber]| -> Vector {
                let mut w = vec![CycNumber::zero(&ex.field); total];
                for (src, &dst) in r.block_map.iter().enumerate() {
                    w[dst * n..(dst + 1) * n].clone_from_slice(&v[src * n..(src + 1) * n]);
                }
                w
            };
            let e_chain = r.lhs.chain();
            for j in 0..=r.lhs.last_level() {
                let image = Subspace::span(
                    &ex.field,
                    total,
                    r.rhs.level(j).vectors().iter().map(|v| phi(v)).collect(),
                );
                ensure!(image == *r.lhs.level(j), "level {j} not preserved");
                for i in 0..=e_chain.d().min(j) {
                    for &x in e_chain.level(i).elems() {
                        for v in r.rhs.level(j).vectors() {
                            ensure!(
                                phi(&r.rhs.module().act(x, &v)) == r.lhs.module().act(x, &phi(&v)),
                                "{} breaks equivariance on level {j}",
                                g.label(x)
                            );
                        }
                    }
                }
            }
            runs += 1;
        }
    }
    ensure_eq!(runs, 6);
    Ok(())
}

fn natural(f: &GliderFragment) -> bool {
    (0..=f.last_level()).all(|i| f.star(i) == *f.level(i))
}

fn c8_star_lemma() -> Outcome {
    let mut non_natural = 0;
    let mut runs = 0;
    for (ex, h) in shipped_pairs() {
        let h_chain = ok(intersect_chain(&ex.chain, &ex.set(&h)))?;
        let t = ok(glider::group::ascending_transversal(&ex.chain, &h_chain))?;
        let c = ok(compute_cocycle(&t))?;
        if !c.is_filtered() {
            continue;
        }
        for base in base_fragments(&ex, &h_chain) {
            let ind = ok(induce(&base, &t, &c))?;
            for mu in 0..=ind.result.d() {
                // oracle: recompute both sides here
                let lhs = ind.result.star(mu);
                let rhs = blockwise(t.len(), &base.star(mu));
                ensure!(lhs == rhs, "{h:?}: star differs at μ = {mu}");
            }
            ensure!(star_lemma_check(&ind).passed(), "{h:?}: library check disagrees");
            ensure_eq!(natural(&base), natural(&ind.result));
            non_natural += usize::from(!natural(&base));
            runs += 1;
        }
    }
    ensure!(non_natural >= 1, "no non-natural base in the corpus");
    ensure!(runs >= 8, "only {runs} inductions");
    Ok(())
}

fn c9_classical() -> Outcome {
    let g = ok(corpus::group("Q8"))?;
    let ex = q8_example().map_err(|e| e.to_string())?;
    let chain = ok(SubgroupChain::from_labels(
        &g,
        &[vec!["1".to_string()], g.labels().to_vec()],
    ))?;
    let u = Arc::new(ok(ex.catalog.irrep("Q8", "U"))?.module.clone());
    let a = ex.vector(&["2", "1,3"]);
    let levels = vec![
        Subspace::full(&ex.field, 2),
        Subspace::span(&ex.field, 2, vec![a]),
        Subspace::zero(&ex.field, 2),
    ];
    let m = ok(GliderFragment::new(&chain, &u, levels))?;
    let h = set(&g, &["1", "-1"]);
    let down = ok(going_down(&m, &h, &ex.catalog))?;
    ensure_eq!(down.nodes.len(), 1);
    let s1 = &down.nodes[0].block;
    ensure_eq!(s1.dim(), 1);
    // some g2 with g2·S1 complementary; both lines are simple for H
    let translate = |x: usize| Subspace::span(&ex.field, 2, s1.vectors().iter().map(|v| u.act(x, v)).collect());
    let g2 = g
        .all()
        .elems()
        .iter()
        .copied()
        .find(|&x| translate(x).intersect(s1).is_zero())
        .ok_or("no complementary translate")?;
    ensure_eq!(s1.sum(&translate(g2)), Subspace::full(&ex.field, 2));
    for x in [g.identity(), g2] {
        let line = translate(x);
        ensure!(
            glider::linmod::is_invariant(&u, &line, &h),
            "translate by {} not H-stable",
            g.label(x)
        );
    }
    Ok(())
}

fn corpus_fragments() -> Vec<GliderFragment> {
    let mut out = vec![q8_example().unwrap().fragment, d8_example().unwrap().fragment];
    for (ex, h) in shipped_pairs() {
        let h_chain = intersect_chain(&ex.chain, &ex.set(&h)).unwrap();
        out.extend(base_fragments(&ex, &h_chain));
    }
    out
}

fn c10_fragments() -> Outcome {
    let all = corpus_fragments();
    for (k, f) in all.iter().enumerate() {
        let r = check_fragment(f);
        ensure!(r.passed(), "corpus fragment {k}: {}", r.failures[0]);
    }

    let q8 = q8_example().map_err(|e| e.to_string())?;
    let d8 = d8_example().map_err(|e| e.to_string())?;
    let corrupted = [
        q8.fragment.with_levels(vec![
            Subspace::full(&q8.field, 4),
            q8.span(&[&["1", "0", "0", "0"]]),
            q8.span(&[&["1", "0,1", "1", "1"]]),
            Subspace::zero(&q8.field, 4),
        ]),
        q8.fragment.with_levels(vec![
            Subspace::full(&q8.field, 4),
            q8.span(&[&["1", "0,1", "1", "1"], &["0", "0", "1", "0"]]),
            q8.span(&[&["1", "0,1", "1", "1"]]),
            Subspace::zero(&q8.field, 4),
        ]),
        d8.fragment.with_levels(vec![
            Subspace::full(&d8.field, 2),
            d8.span(&[&["1", "2"]]),
            d8.span(&[&["1", "2"]]),
            Subspace::zero(&d8.field, 2),
        ]),
    ];
    for (k, f) in corrupted.iter().enumerate() {
        let f = ok(f.as_ref())?;
        let r = check_fragment(f);
        ensure!(!r.passed(), "corrupted fragment {k} passes");
        ensure!(
            !r.failures[0].to_string().is_empty(),
            "no witness for corrupted fragment {k}"
        );
    }

    let (mut strict, mut missing) = (0, Vec::new());
    for (fi, f) in all.iter().enumerate() {
        let levels = f.levels().to_vec();
        ensure!(
            matches!(ok(classify_subfragment(f, &levels))?, Triviality::T3(_)),
            "α = id not T3"
        );
        let e = f.essential_length();
        if !f.level(e).is_zero() {
            let mut trunc = levels.clone();
            for l in trunc.iter_mut().skip(e) {
                *l = Subspace::zero(&f.module().field().clone(), f.module().dim());
            }
            ensure!(
                matches!(ok(classify_subfragment(f, &trunc))?, Triviality::T2(_)),
                "truncation not T2"
            );
        }
        // strict subfragments W ∩ M_k for W a sum of isotypic components
        let Ok(report) = constraint_check(f.module(), &catalog_for(f)) else {
            continue;
        };
        let comps = report.components;
        for mask in 0..(1usize << comps.len()) {
            let n = f.module().dim();
            let field = f.module().field().clone();
            let w = Subspace::span(
                &field,
                n,
                comps
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .flat_map(|(_, c)| c.coords.clone())
                    .map(|k| glider::linmod::unit_vector(&field, n, k))
                    .collect(),
            );
            let sub: Vec<Subspace> = levels.iter().map(|l| w.intersect(l)).collect();
            strict += 1;
            let l = match strict_complement(f, &sub) {
                Ok(l) => l,
                Err(err) => {
                    // only acceptable when provably impossible: N_e = 0 forces
                    // L_e = M_e, and then KG_e·M_e ⊆ L_0 must miss N_0
                    let forced = span_under(f.module(), f.level(e), f.chain().level(e.min(f.chain().d())));
                    ensure!(
                        sub[e].is_zero() && !forced.intersect(&sub[0]).is_zero(),
                        "fragment {fi} components {mask:b}: complement refused without obstruction: {err}"
                    );
                    missing.push(format!("fragment {fi} {:?} with components {mask:b}: {err}", f.dims()));
                    continue;
                }
            };
            for (i, ni) in sub.iter().enumerate() {
                let li = l[0].intersect(f.level(i));
                ensure_eq!(ni.dim() + li.dim(), f.level(i).dim());
            }
        }
    }
    ensure!(strict > 0, "no strict subfragments exercised");
    ensure!(
        missing.is_empty(),
        "{} of {strict} strict subfragments have no strict complement (first: {})",
        missing.len(),
        missing[0]
    );
    Ok(())
}

fn catalog_for(f: &GliderFragment) -> glider::linmod::IrrepCatalog {
    corpus::catalog(f.chain().group(), f.module().field()).unwrap()
}

/// Criteria that cannot hold as stated. They still run and print FAIL; the
/// reason is established by `strict_complement_counterexample` in
/// tests/fragments.rs.
const KNOWN_FAILURES: [(usize, &str); 1] = [(
    10,
    "a strict subfragment of a non-natural fragment need not have a strict complement: \
     for the Q8 fragment, N = U ∩ M has N_2 = 0 while KG_2·M_2 = M_0",
)];

fn main() {
    let criteria: [Criterion; 10] = [
        ("Q8 going-down blocks, spans and decomposition groups", c1_going_down),
        (
            "Q8 cocycle with T = {1, j} is filtered and satisfies the identity",
            c2_cocycle,
        ),
        ("Q8 coefficient matrices, rank locus and degenerate points", c3_geometry),
        ("evaluation at [1:0] gives Z4^j, Z4^i, not nested", c4_evaluation),
        ("D8 locus generators", c5_d8),
        ("going-up on every shipped pair", c6_going_up),
        ("Mackey bijection for (Z4^j, Z4^i) and (Z4^i, Z4^j)", c7_mackey),
        ("star lemma and naturality on corpus inductions", c8_star_lemma),
        ("classical Clifford recovery", c9_classical),
        ("fragment axioms, triviality tags, strict complements", c10_fragments),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let n = k + 1;
        match f() {
            Ok(()) => println!("PASS {n:>2} {name}"),
            Err(why) => {
                println!("FAIL {n:>2} {name}: {why}");
                if !KNOWN_FAILURES.iter().any(|(m, _)| *m == n) {
                    failed.push(n);
                }
            }
        }
    }
    for (n, why) in KNOWN_FAILURES {
        println!("note {n:>2} {why}");
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
