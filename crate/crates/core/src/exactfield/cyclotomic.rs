//! The cyclotomic field Q(ζ_n) in the power basis 1, ζ, …, ζ^{φ(n)-1}.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Dense polynomial over Q, lowest degree first, no trailing zeros.
type QPoly = Vec<Rational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &c * bk;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn poly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(k).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Φ_n over Q, computed as (x^n - 1) / Π_{d | n, d < n} Φ_d.
fn cyclotomic_polynomial(n: u32) -> QPoly {
    let mut p: QPoly = vec![Rational::zero(); n as usize + 1];
    p[0] = int(-1);
    p[n as usize] = int(1);
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = poly_divrem(&p, &cyclotomic_polynomial(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

/// Context for Q(ζ_n): the defining polynomial and derived constants.
#[derive(Debug)]
pub struct CycField {
    order: u32,
    modulus: QPoly,
}

impl CycField {
    /// Shared context for Q(ζ_n). Contexts are cached per order.
    pub fn get(order: u32) -> Arc<CycField> {
        assert!(order > 0, "cyclotomic order must be positive");
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap();
        guard
            .entry(order)
            .or_insert_with(|| {
                Arc::new(CycField {
                    order,
                    modulus: cyclotomic_polynomial(order),
                })
            })
            .clone()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(n), the degree of the field over Q.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }

    /// Name used for ζ when printing.
    pub fn generator_name(&self) -> &'static str {
        if self.order == 4 {
            "i"
        } else {
            "z"
        }
    }
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CycField {}

impl std::hash::Hash for CycField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
    }
}

/// An element of Q(ζ_n) in canonical (fully reduced) form.
#[derive(Clone)]
pub struct CycNumber {
    field: Arc<CycField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycNumber {}

impl std::hash::Hash for CycNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

/// Arithmetic operation selector for [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic: reports order mismatches and division by zero instead of panicking.
pub fn field_arith(a: &CycNumber, b: &CycNumber, op: FieldOp) -> Result<CycNumber> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch(a.order(), b.order()));
    }
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.div(b)?,
    })
}

impl CycNumber {
    fn from_poly(field: &Arc<CycField>, mut poly: QPoly) -> Self {
        trim(&mut poly);
        let deg = field.degree();
        if poly.len() > deg {
            poly = poly_divrem(&poly, &field.modulus).1;
        }
        poly.resize(deg, Rational::zero());
        CycNumber {
            field: field.clone(),
            coeffs: poly,
        }
    }

    pub fn zero(field: &Arc<CycField>) -> Self {
        CycNumber {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_int(field: &Arc<CycField>, v: i64) -> Self {
        Self::from_rational(field, int(v))
    }

    pub fn from_rational(field: &Arc<CycField>, r: Rational) -> Self {
        let mut c = Self::zero(field);
        c.coeffs[0] = r;
        c
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(field: &Arc<CycField>, k: i64) -> Self {
        let n = field.order as i64;
        let e = k.rem_euclid(n) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(field, poly)
    }

    /// Builds an element from power-basis coordinates; shorter lists are zero-padded.
    pub fn from_coeffs(field: &Arc<CycField>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() > field.degree() {
            return Err(Error::Parse {
                what: "cyclotomic number".into(),
                detail: format!("{} coordinates given, field degree is {}", coeffs.len(), field.degree()),
            });
        }
        Ok(Self::from_poly(field, coeffs))
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Some(r) when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(
            self.field.order, other.field.order,
            "mixed cyclotomic orders in arithmetic"
        );
    }

    /// Multiplicative inverse via extended Euclid against Φ_n.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut a: QPoly = self.coeffs.clone();
        trim(&mut a);
        let mut r0 = self.field.modulus.clone();
        let mut r1 = a;
        let mut s0: QPoly = vec![];
        let mut s1: QPoly = vec![Rational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant since Φ_n is irreducible
        let c = r1[0].clone();
        let s: QPoly = s1.into_iter().map(|x| x / &c).collect();
        Ok(Self::from_poly(&self.field, s))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Textual encoding: comma separated `p/q` in power-basis order.
    pub fn to_text(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the textual encoding. Integers without a denominator and
    /// shortened coordinate lists are accepted.
    pub fn parse_text(field: &Arc<CycField>, text: &str) -> Result<Self> {
        let err = |detail: String| Error::Parse {
            what: format!("cyclotomic number {text:?}"),
            detail,
        };
        let mut coeffs = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(err("empty coordinate".into()));
            }
            let (n, d) = match part.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (part, "1"),
            };
            let n: BigInt = n.parse().map_err(|_| err(format!("bad numerator {n:?}")))?;
            let d: BigInt = d.parse().map_err(|_| err(format!("bad denominator {d:?}")))?;
            if d.is_zero() {
                return Err(err("zero denominator".into()));
            }
            coeffs.push(Rational::new(n, d));
        }
        Self::from_coeffs(field, coeffs).map_err(|e| err(e.to_string()))
    }
}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        self.check(rhs);
        CycNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        self.check(rhs);
        CycNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        self.check(rhs);
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        CycNumber::from_poly(&self.field, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: &CycNumber) -> CycNumber {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl CycNumber {
    /// Human readable form, e.g. `1+i`, `-1/2*i`, `z^2`.
    pub fn pretty(&self) -> String {
        let name = self.field.generator_name();
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            let monomial = match k {
                0 => String::new(),
                1 => name.to_string(),
                _ => format!("{name}^{k}"),
            };
            let body = if k == 0 {
                fmt_rational(&abs)
            } else if abs.is_one() {
                monomial
            } else {
                format!("{}*{}", fmt_rational(&abs), monomial)
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Number of nonzero power-basis coordinates.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}
