use std::fmt;

use super::{check_fragment, GliderFragment};
use crate::error::{Error, Result};
use crate::linmod::{invariant_complement, is_invariant, span_under, Subspace};

/// Which triviality pattern a subfragment matches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Triviality {
    /// N_k = B(N) but M_k ≠ B(M).
    T1(usize),
    /// N_k = 0 but M_k ≠ 0.
    T2(usize),
    /// N_k = M_{α(k)}, α listed over the declared range.
    T3(Vec<usize>),
    None,
}

impl Triviality {
    pub fn is_trivial(&self) -> bool {
        !matches!(self, Triviality::None)
    }
}

impl fmt::Display for Triviality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Triviality::T1(k) => write!(f, "T1 (k = {k})"),
            Triviality::T2(k) => write!(f, "T2 (k = {k})"),
            Triviality::T3(a) => {
                let parts: Vec<String> = a.iter().map(usize::to_string).collect();
                write!(f, "T3 (alpha = {})", parts.join(","))
            }
            Triviality::None => f.write_str("none"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The necessary conditions hold.
    Certified,
    /// A nontrivial subfragment, given by its levels.
    Refuted {
        reason: String,
        witness: Vec<Subspace>,
    },
    Inconclusive(String),
}

impl Certificate {
    pub fn tag(&self) -> &'static str {
        match self {
            Certificate::Certified => "certified",
            Certificate::Refuted { .. } => "refuted",
            Certificate::Inconclusive(_) => "inconclusive",
        }
    }
}

fn body_of(levels: &[Subspace]) -> Subspace {
    let mut b = levels[0].clone();
    for l in &levels[1..] {
        b = b.intersect(l);
    }
    b
}

fn at(levels: &[Subspace], k: usize) -> &Subspace {
    &levels[k.min(levels.len() - 1)]
}

/// Checks that N is a subfragment of M levelwise and satisfies the glider axiom.
fn require_subfragment(m: &GliderFragment, n: &[Subspace]) -> Result<GliderFragment> {
    if n.is_empty() {
        return Err(Error::NotSubfragment("no levels".into()));
    }
    let top = n.len().max(m.levels().len());
    for k in 0..top {
        if !at(n, k).is_subspace_of(m.level(k)) {
            return Err(Error::NotSubfragment(format!("N_{k} is not contained in M_{k}")));
        }
    }
    let nf = m.with_levels(n.to_vec())?;
    let report = check_fragment(&nf);
    if let Some(first) = report.failures.iter().find(|f| f.kind != "star") {
        return Err(Error::NotSubfragment(first.to_string()));
    }
    Ok(nf)
}

/// Triviality tag of a subfragment N of M.
pub fn classify_subfragment(m: &GliderFragment, n: &[Subspace]) -> Result<Triviality> {
    require_subfragment(m, n)?;
    let top = n.len().max(m.levels().len()) - 1;
    let bn = body_of(n);
    let bm = m.body();
    // T2 first: a vanishing level is the more specific witness
    if let Some(k) = (0..=top).find(|&k| at(n, k).is_zero() && !m.level(k).is_zero()) {
        return Ok(Triviality::T2(k));
    }
    if let Some(k) = (0..=top).find(|&k| *at(n, k) == bn && *m.level(k) != bm) {
        return Ok(Triviality::T1(k));
    }
    // greedy smallest α(k) ≥ α(k-1) + 1 with M_α(k) = N_k; past the last
    // declared level M is constant, so one index beyond it stands for all
    let last_m = m.last_level();
    let mut alpha: Vec<usize> = Vec::new();
    for k in 0..=top {
        let lo = alpha.last().map_or(0, |a| a + 1);
        let target = at(n, k);
        let found = if lo > last_m {
            (m.level(last_m) == target).then_some(lo)
        } else {
            (lo..=last_m).find(|&a| m.level(a) == target).or_else(|| {
                // α may run past the declared range only while M is constant
                (m.level(last_m) == target).then_some(last_m.max(lo))
            })
        };
        match found {
            Some(a) => alpha.push(a),
            None => return Ok(Triviality::None),
        }
    }
    // the tail N_k = N_top for k > top needs M constant from α(top) on
    if at(n, top) != m.level(last_m) {
        return Ok(Triviality::None);
    }
    Ok(Triviality::T3(alpha))
}

/// N_k = N_0 ∩ M_k for all k.
pub fn is_strict(m: &GliderFragment, n: &[Subspace]) -> bool {
    let top = n.len().max(m.levels().len());
    (0..top).all(|k| *at(n, k) == n[0].intersect(m.level(k)))
}

/// Necessary conditions for irreducibility, with a refuting subfragment when
/// one of them fails.
pub fn irreducible_certificate(f: &GliderFragment) -> Result<Certificate> {
    let body = f.body();
    if !body.is_zero() {
        return Err(Error::BodyNonzero(body.dim()));
    }
    if f.level(0).is_zero() {
        return Ok(Certificate::Inconclusive("zero fragment".into()));
    }
    let e = f.essential_length();
    let me = f.level(e);
    if me.dim() > 1 {
        for v in me.vectors() {
            let line = Subspace::span(f.module().field(), f.module().dim(), vec![v]);
            let witness: Vec<Subspace> = (0..=e + 1)
                .map(|i| {
                    if i <= e {
                        span_under(f.module(), &line, f.chain().level(e - i))
                    } else {
                        f.level(i).clone()
                    }
                })
                .collect();
            if classify_subfragment(f, &witness)? == Triviality::None {
                return Ok(Certificate::Refuted {
                    reason: format!("dim M_{e} = {}", me.dim()),
                    witness,
                });
            }
        }
        return Ok(Certificate::Inconclusive(format!(
            "dim M_{e} = {}, no nontrivial cyclic witness",
            me.dim()
        )));
    }
    let generated = f.generated_by_level(e);
    if let Some(i) = (0..=e).find(|&i| generated[i] != *f.level(i)) {
        if classify_subfragment(f, &generated)? == Triviality::None {
            return Ok(Certificate::Refuted {
                reason: format!("M_{i} differs from KG_{} M_{e}", e - i),
                witness: generated,
            });
        }
        return Ok(Certificate::Inconclusive(format!(
            "M_{i} differs from KG_{} M_{e}",
            e - i
        )));
    }
    Ok(Certificate::Certified)
}

/// Whether E_i ∩ F_i = 0, for i ≤ min(el(E), el(F)).
pub fn direct_sum_check(e: &GliderFragment, f: &GliderFragment, i: usize) -> Result<bool> {
    if i > e.essential_length().min(f.essential_length()) {
        return Err(Error::LevelOutOfRange(i));
    }
    Ok(e.level(i).intersect(f.level(i)).is_zero())
}

/// A strict subfragment L with M_k = N_k ⊕ (L ∩ M_k), built top-down in the
/// star chain of M. Returns the levels L ∩ M_k.
pub fn strict_complement(m: &GliderFragment, n: &[Subspace]) -> Result<Vec<Subspace>> {
    require_subfragment(m, n)?;
    if !is_strict(m, n) {
        return Err(Error::NotStrict("N_k differs from N_0 ∩ M_k".into()));
    }
    let module = m.module();
    let d = m.d();
    let n0 = &n[0];
    let stars: Vec<Subspace> = (0..=d).map(|i| m.star(i)).collect();
    let mut l = Subspace::zero(module.field(), module.dim());
    for i in (0..=d).rev() {
        let gi = m.chain().level(i);
        let ni = n0.intersect(&stars[i]);
        if !is_invariant(module, &ni, gi) {
            return Err(Error::PreconditionFailure(format!(
                "N ∩ star(M, {i}) is not G_{i}-invariant"
            )));
        }
        let y = ni.sum(&l);
        let c = invariant_complement(module, &stars[i], &y, gi)?;
        l = l.sum(&c);
    }
    let levels: Vec<Subspace> = (0..=m.last_level()).map(|k| l.intersect(m.level(k))).collect();
    for (k, lk) in levels.iter().enumerate() {
        let nk = at(n, k);
        if nk.dim() + lk.dim() != m.level(k).dim() || !nk.intersect(lk).is_zero() {
            return Err(Error::PreconditionFailure(format!(
                "complement does not split level {k}"
            )));
        }
    }
    Ok(levels)
}

/// A summand found by [`decompose_glider`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposedPart {
    pub levels: Vec<Subspace>,
    pub certificate: Certificate,
}

/// Greedy splitting into strict subfragments generated by single vectors of
/// the deepest nonzero level.
pub fn decompose_glider(f: &GliderFragment) -> Result<Vec<DecomposedPart>> {
    let mut parts = Vec::new();
    let mut current = f.clone();
    loop {
        if current.level(0).is_zero() {
            return Ok(parts);
        }
        let whole = irreducible_certificate(&current).unwrap_or_else(|e| Certificate::Inconclusive(e.to_string()));
        if whole == Certificate::Certified {
            parts.push(DecomposedPart {
                levels: current.levels().to_vec(),
                certificate: whole,
            });
            return Ok(parts);
        }
        let deep = (0..=current.last_level())
            .rev()
            .find(|&k| !current.level(k).is_zero())
            .unwrap();
        let module = current.module().clone();
        let top = current.chain().top().clone();
        let mut chosen: Option<(Vec<Subspace>, Certificate)> = None;
        for v in current.level(deep).vectors() {
            let w = span_under(&module, &Subspace::span(module.field(), module.dim(), vec![v]), &top);
            let levels: Vec<Subspace> = current.levels().iter().map(|l| w.intersect(l)).collect();
            if levels[0] == *current.level(0) {
                continue;
            }
            let cert = irreducible_certificate(&current.with_levels(levels.clone())?)
                .unwrap_or_else(|e| Certificate::Inconclusive(e.to_string()));
            let done = cert == Certificate::Certified;
            if chosen.is_none() || done {
                chosen = Some((levels, cert));
            }
            if done {
                break;
            }
        }
        let Some((levels, cert)) = chosen else {
            parts.push(DecomposedPart {
                levels: current.levels().to_vec(),
                certificate: whole,
            });
            return Ok(parts);
        };
        let rest = strict_complement(&current, &levels)?;
        parts.push(DecomposedPart {
            levels,
            certificate: cert,
        });
        current = current.with_levels(rest)?;
    }
}
