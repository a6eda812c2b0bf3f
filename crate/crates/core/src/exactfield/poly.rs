//! Sparse multivariate polynomials over Q(ζ_n).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use super::cyclotomic::{CycField, CycNumber};
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Arc<CycField>,
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, CycNumber>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

/// Checked polynomial arithmetic.
pub fn poly_arith(p: &MultiPoly, q: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    if p.vars != q.vars {
        return Err(Error::VariableMismatch);
    }
    if p.field.order() != q.field.order() {
        return Err(Error::OrderMismatch(p.field.order(), q.field.order()));
    }
    Ok(match op {
        PolyOp::Add => p.add(q),
        PolyOp::Mul => p.mul(q),
    })
}

/// Degree-lexicographic order, largest first.
fn deglex_desc(a: &Monomial, b: &Monomial) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

/// Standard variable names `x0`, `x1`, ...
pub fn standard_vars(count: usize) -> Arc<Vec<String>> {
    Arc::new((0..count).map(|k| format!("x{k}")).collect())
}

impl MultiPoly {
    pub fn zero(field: &Arc<CycField>, vars: &Arc<Vec<String>>) -> Self {
        MultiPoly {
            field: field.clone(),
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: CycNumber, vars: &Arc<Vec<String>>) -> Self {
        let mut p = Self::zero(c.field(), vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    /// The variable with index `k`.
    pub fn var(field: &Arc<CycField>, vars: &Arc<Vec<String>>, k: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[k] = 1;
        Self::monomial(CycNumber::one(field), e, vars)
    }

    pub fn monomial(c: CycNumber, exps: Monomial, vars: &Arc<Vec<String>>) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(c.field(), vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Linear form Σ c_k x_k.
    pub fn linear(coeffs: &[CycNumber], vars: &Arc<Vec<String>>) -> Self {
        let field = coeffs[0].field().clone();
        let mut p = Self::zero(&field, vars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[k] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: CycNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in degree-lexicographic order, leading term first.
    pub fn terms(&self) -> Vec<(&Monomial, &CycNumber)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| deglex_desc(a.0, b.0));
        t
    }

    pub fn coefficient(&self, e: &[u32]) -> CycNumber {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| CycNumber::zero(&self.field))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable mismatch");
        let mut out = Self::zero(&self.field, &self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field, &self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn eval(&self, point: &[CycNumber]) -> CycNumber {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = CycNumber::zero(&self.field);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn leading_coefficient(&self) -> Option<&CycNumber> {
        self.terms().first().map(|t| t.1)
    }

    /// Scalar multiple with leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// True when `self = c * other` for some nonzero scalar c.
    pub fn is_scalar_multiple_of(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.monic() == other.monic()
    }
}

fn fmt_monomial(e: &Monomial, vars: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                vars[i].clone()
            } else {
                format!("{}^{}", vars[i], k)
            }
        })
        .collect();
    parts.join("*")
}

/// Splits a coefficient into (is_negative, magnitude text) for printing.
fn coefficient_parts(c: &CycNumber) -> (bool, String) {
    if c.term_count() == 1 {
        let lead = c.coeffs().iter().find(|x| !num_traits::Zero::is_zero(*x)).unwrap();
        if lead.is_negative() {
            return (true, (-c).pretty());
        }
        return (false, c.pretty());
    }
    (false, format!("({})", c.pretty()))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms().into_iter().enumerate() {
            let (neg, mag) = coefficient_parts(c);
            let mono = fmt_monomial(e, &self.vars);
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (idx, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
