//! Square roots in Q(ζ_n) and roots of binary forms of degree at most two.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::cyclotomic::{CycField, CycNumber, Rational};
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Height bound for the candidate search used when no closed form is available.
const SEARCH_HEIGHT: i64 = 3;

/// A point of P^{k-1}(K), normalized so the first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint(Vec<CycNumber>);

impl ProjPoint {
    pub fn new(coords: Vec<CycNumber>) -> Result<Self> {
        let lead = coords.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroVector)?.inv()?;
        Ok(ProjPoint(coords.iter().map(|c| c * &lead).collect()))
    }

    pub fn coords(&self) -> &[CycNumber] {
        &self.0
    }

    /// Coordinates in the textual CycNumber encoding.
    pub fn to_text(&self) -> Vec<String> {
        self.0.iter().map(CycNumber::to_text).collect()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(CycNumber::pretty).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Roots of a binary form. `no_root_in_field` is set when the discriminant
/// has no square root in K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    pub points: Vec<ProjPoint>,
    pub no_root_in_field: bool,
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Square root of `d` in K when one exists.
///
/// Exact for n ∈ {1, 2, 4}; for other orders a bounded-height search is used
/// after the rational case, so `None` means "none found within the bound".
pub fn sqrt_in_field(d: &CycNumber) -> Option<CycNumber> {
    let field = d.field().clone();
    if d.is_zero() {
        return Some(d.clone());
    }
    if let Some(r) = d.as_rational() {
        if let Some(s) = rational_sqrt(r) {
            return Some(CycNumber::from_rational(&field, s));
        }
        if field.degree() == 1 {
            return None;
        }
    }
    if field.order() == 4 {
        return gaussian_sqrt(&field, d);
    }
    search_sqrt(&field, d)
}

/// (a + b i)^2 = p + q i solved over Q.
fn gaussian_sqrt(field: &Arc<CycField>, d: &CycNumber) -> Option<CycNumber> {
    let p = &d.coeffs()[0];
    let q = &d.coeffs()[1];
    let two = Rational::from_integer(BigInt::from(2));
    let (a, b) = if q.is_zero() {
        if p.is_negative() {
            (Rational::zero(), rational_sqrt(&-p)?)
        } else {
            (rational_sqrt(p)?, Rational::zero())
        }
    } else {
        let norm = rational_sqrt(&(p * p + q * q))?;
        let a = rational_sqrt(&((p + norm) / &two))?;
        let b = q / (&two * &a);
        (a, b)
    };
    let root = CycNumber::from_coeffs(field, vec![a, b]).ok()?;
    (&root * &root == *d).then_some(root)
}

fn search_sqrt(field: &Arc<CycField>, d: &CycNumber) -> Option<CycNumber> {
    let mut values = vec![Rational::zero()];
    for den in 1..=SEARCH_HEIGHT {
        for num in -SEARCH_HEIGHT..=SEARCH_HEIGHT {
            let v = Rational::new(BigInt::from(num), BigInt::from(den));
            if !values.contains(&v) {
                values.push(v);
            }
        }
    }
    let deg = field.degree();
    let mut idx = vec![0usize; deg];
    loop {
        let coeffs: Vec<Rational> = idx.iter().map(|&k| values[k].clone()).collect();
        let c = CycNumber::from_coeffs(field, coeffs).ok()?;
        if &c * &c == *d {
            return Some(c);
        }
        let mut pos = 0;
        loop {
            if pos == deg {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// All points of P^1(K) where a binary form of degree ≤ 2 vanishes.
pub fn homogeneous_binary_roots(p: &MultiPoly) -> Result<RootSet> {
    if p.vars().len() != 2 {
        return Err(Error::VariableMismatch);
    }
    if p.is_zero() {
        return Err(Error::PreconditionFailure("zero polynomial".into()));
    }
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let field = p.field().clone();
    let one = CycNumber::one(&field);
    let zero = CycNumber::zero(&field);
    let mut points = Vec::new();
    let mut no_root = false;
    match p.total_degree().unwrap() {
        0 => {}
        1 => {
            let a = p.coefficient(&[1, 0]);
            let b = p.coefficient(&[0, 1]);
            points.push(ProjPoint::new(vec![b, -&a])?);
        }
        2 => {
            let a = p.coefficient(&[2, 0]);
            let b = p.coefficient(&[1, 1]);
            let c = p.coefficient(&[0, 2]);
            if c.is_zero() {
                // p = x0 (a x0 + b x1)
                points.push(ProjPoint::new(vec![zero.clone(), one.clone()])?);
                if !b.is_zero() {
                    points.push(ProjPoint::new(vec![b.clone(), -&a])?);
                }
            } else {
                // roots [1:t] with c t^2 + b t + a = 0
                let four = CycNumber::from_int(&field, 4);
                let disc = &(&b * &b) - &(&four * &(&a * &c));
                match sqrt_in_field(&disc) {
                    None => no_root = true,
                    Some(s) => {
                        let two_c = &CycNumber::from_int(&field, 2) * &c;
                        for root in [&(-&b) + &s, &(-&b) - &s] {
                            points.push(ProjPoint::new(vec![one.clone(), root.div(&two_c)?])?);
                        }
                    }
                }
            }
        }
        deg => return Err(Error::UnsupportedDegree(deg)),
    }
    let mut unique: Vec<ProjPoint> = Vec::new();
    for pt in points {
        if !unique.contains(&pt) {
            unique.push(pt);
        }
    }
    // affine chart x0 != 0 first, then the point at x0 = 0
    unique.sort_by_key(|pt| pt.coords()[0].is_zero());
    Ok(RootSet {
        points: unique,
        no_root_in_field: no_root,
    })
}

impl RootSet {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Square test used by tests: whether `r` is a square in Q.
pub fn is_rational_square(r: &Rational) -> bool {
    rational_sqrt(r).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::poly::standard_vars;

    fn xs() -> (Arc<CycField>, MultiPoly, MultiPoly) {
        let f = CycField::get(4);
        let v = standard_vars(2);
        (f.clone(), MultiPoly::var(&f, &v, 0), MultiPoly::var(&f, &v, 1))
    }

    #[test]
    fn sum_of_squares_has_two_gaussian_points() {
        let (_, x0, x1) = xs();
        let roots = homogeneous_binary_roots(&x0.mul(&x0).add(&x1.mul(&x1))).unwrap();
        let shown: Vec<String> = roots.points.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["[1:i]", "[1:-i]"]);
        assert!(!roots.no_root_in_field);
    }

    #[test]
    fn product_of_coordinates() {
        let (_, x0, x1) = xs();
        let roots = homogeneous_binary_roots(&x0.mul(&x1)).unwrap();
        let shown: Vec<String> = roots.points.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, ["[1:0]", "[0:1]"]);
    }

    #[test]
    fn sqrt_two_not_in_gaussian_rationals() {
        let (f, x0, x1) = xs();
        let p = x0.mul(&x0).sub(&x1.mul(&x1).scale(&CycNumber::from_int(&f, 2)));
        let roots = homogeneous_binary_roots(&p).unwrap();
        assert!(roots.is_empty());
        assert!(roots.no_root_in_field);
    }

    /// Independent check that (a+bi)^2 = 2 has no rational solution: a^2 - b^2 = 2
    /// and ab = 0 force a^2 = 2 or b^2 = -2, and 2 is not a rational square
    /// (scan of numerators/denominators up to a bound as a sanity oracle).
    #[test]
    fn oracle_two_is_not_a_rational_square() {
        for den in 1i64..60 {
            for num in 0i64..120 {
                assert_ne!(num * num, 2 * den * den);
            }
        }
        assert!(!is_rational_square(&Rational::from_integer(BigInt::from(2))));
    }

    #[test]
    fn errors() {
        let (f, x0, x1) = xs();
        let cubic = x0.mul(&x0).mul(&x1);
        assert_eq!(homogeneous_binary_roots(&cubic), Err(Error::UnsupportedDegree(3)));
        let inhom = x0.mul(&x0).add(&x1);
        assert_eq!(homogeneous_binary_roots(&inhom), Err(Error::NotHomogeneous));
        let _ = f;
    }

    #[test]
    fn linear_and_double_roots() {
        let (f, x0, x1) = xs();
        let lin = x0.sub(&x1.scale(&CycNumber::zeta_pow(&f, 1)));
        let r = homogeneous_binary_roots(&lin).unwrap();
        assert_eq!(r.points[0].to_string(), "[1:-i]");
        assert!(lin.eval(r.points[0].coords()).is_zero());
        let sq = x0.sub(&x1).mul(&x0.sub(&x1));
        let r = homogeneous_binary_roots(&sq).unwrap();
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.points[0].to_string(), "[1:1]");
    }

    #[test]
    fn sqrt_search_in_cube_roots_of_unity() {
        let f = CycField::get(3);
        let w = CycNumber::zeta_pow(&f, 1);
        let sq = &w * &w;
        let s = sqrt_in_field(&sq).unwrap();
        assert_eq!(&s * &s, sq);
    }
}
