//! Strict subfragments and their complements on the Q8 fragment.

use glider::corpus::q8_example;
use glider::fragment::{check_fragment, is_strict, strict_complement, GliderFragment};
use glider::linmod::{span_under, Subspace};

/// N = U ∩ M is strict, but M_2 = KΔ generates M_0, so any complement L
/// would contain KG_2·Δ = M_0 and could not miss N_0 = U.
#[test]
fn strict_complement_counterexample() {
    let ex = q8_example().unwrap();
    let m = &ex.fragment;
    let u = ex.span(&[&["1", "0", "0", "0"], &["0", "1", "0", "0"]]);
    let n: Vec<Subspace> = m.levels().iter().map(|l| u.intersect(l)).collect();

    let nf = m.with_levels(n.clone()).unwrap();
    assert!(check_fragment(&nf).passed());
    assert!(is_strict(m, &n));
    assert_eq!(n[1], ex.span(&[&["1", "0,1", "0", "0"]]));
    assert!(n[2].is_zero());
    assert!(!n[0].is_zero());

    // M_2 = N_2 ⊕ L_2 forces L_2 = M_2, and L_0 ⊇ KG_2·L_2
    let forced = span_under(m.module(), m.level(2), ex.chain.level(2));
    assert_eq!(forced, *m.level(0));
    assert!(!forced.intersect(&n[0]).is_zero());
    assert!(strict_complement(m, &n).is_err());
}

/// For a natural fragment the complement exists and splits every level.
#[test]
fn natural_fragment_has_complements() {
    let ex = q8_example().unwrap();
    let full = Subspace::full(&ex.field, 4);
    let m = GliderFragment::new(&ex.chain, &ex.module, vec![full.clone(), full.clone(), full]).unwrap();
    let t3 = ex.span(&[&["0", "0", "1", "0"]]);
    let n: Vec<Subspace> = m.levels().iter().map(|l| t3.intersect(l)).collect();
    let l = strict_complement(&m, &n).unwrap();
    for (i, li) in l.iter().enumerate() {
        assert!(li.intersect(&n[i]).is_zero());
        assert_eq!(li.sum(&n[i]), *m.level(i));
    }
}
