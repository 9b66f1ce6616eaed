//! Sparse bivariate Laurent polynomials over the integers, and the
//! constant-term route to the sequence 1, 3, 15, 93, 639, ...
//!
//! The term `(1 + (1+x)(1+y/x)(1+1/y))^n` has constant term equal to the
//! `n`-th term, and the base factors as `(1 + (1+x)/y) * (1 + y(1+1/x))`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::closed_forms::Count;

/// Exponent pair `(x, y)`.
pub type Exponent = (i64, i64);

/// Largest power accepted by [`ct_sequence_term`].
pub const CT_GUARD: u64 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("n = {n} exceeds the constant-term guard {guard}")]
    Guard { n: u64, guard: u64 },
    #[error("negative constant term {0}")]
    Negative(i64),
}

/// Map from exponent pair to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, ex: i64, ey: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term((ex, ey), coeff.into());
        p
    }

    pub fn x() -> Self {
        LaurentPoly::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        LaurentPoly::monomial(1, 0, 1)
    }

    pub fn x_inv() -> Self {
        LaurentPoly::monomial(1, -1, 0)
    }

    pub fn y_inv() -> Self {
        LaurentPoly::monomial(1, 0, -1)
    }

    /// Builds a polynomial from `(coeff, ex, ey)` triples; repeated exponents add up.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, i64, i64)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (c, ex, ey) in terms {
            p.add_term((ex, ey), c.into());
        }
        p
    }

    fn add_term(&mut self, exp: Exponent, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, ex: i64, ey: i64) -> BigInt {
        self.terms.get(&(ex, ey)).cloned().unwrap_or_default()
    }

    /// Coefficient of `x^0 y^0`.
    pub fn constant_term(&self) -> BigInt {
        self.coefficient(0, 0)
    }

    /// Nonzero terms in exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Smallest box `[min_x, max_x] x [min_y, max_y]` holding every exponent.
    pub fn exponent_box(&self) -> Option<(Exponent, Exponent)> {
        let mut iter = self.terms.keys();
        let &(x0, y0) = iter.next()?;
        Some(
            iter.fold(((x0, x0), (y0, y0)), |((lx, hx), (ly, hy)), &(x, y)| {
                ((lx.min(x), hx.max(x)), (ly.min(y), hy.max(y)))
            }),
        )
    }

    pub fn pow(&self, mut m: u64) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
        while m > 0 {
            if m & 1 == 1 {
                acc = &acc * &base;
            }
            m >>= 1;
            if m > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Terms in display order: total degree descending, then `x` exponent descending.
    fn display_order(&self) -> Vec<(Exponent, &BigInt)> {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|&((ex, ey), _)| std::cmp::Reverse((ex + ey, ex)));
        terms
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (&(ax, ay), ac) in &self.terms {
            for (&(bx, by), bc) in &rhs.terms {
                *acc.entry((ax + bx, ay + by)).or_default() += ac * bc;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, ex: i64, ey: i64) -> fmt::Result {
    let mut factors = Vec::new();
    for (name, e) in [("x", ex), ("y", ey)] {
        match e {
            0 => {}
            1 => factors.push(name.to_string()),
            _ => factors.push(format!("{name}^{e}")),
        }
    }
    f.write_str(&factors.join("*"))
}

/// Terms joined by ` + ` / ` - `, e.g. `x + 3 + x^-1*y - 2*y^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((ex, ey), c)) in self.display_order().into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if ex == 0 && ey == 0 {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write_monomial(f, ex, ey)?;
            }
        }
        Ok(())
    }
}

/// The base of the constant-term identity and its two factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityPolys {
    /// `1 + (1+x)(1+y/x)(1+1/y)`.
    pub base: LaurentPoly,
    /// `1 + (1+x)/y`.
    pub factor1: LaurentPoly,
    /// `1 + y(1+1/x)`.
    pub factor2: LaurentPoly,
}

impl IdentityPolys {
    pub fn new() -> Self {
        let one = LaurentPoly::one;
        let x = LaurentPoly::x;
        let y = LaurentPoly::y;
        let base = one()
            + (one() + x()) * (one() + y() * LaurentPoly::x_inv()) * (one() + LaurentPoly::y_inv());
        let factor1 = one() + (one() + x()) * LaurentPoly::y_inv();
        let factor2 = one() + y() * (one() + LaurentPoly::x_inv());
        IdentityPolys {
            base,
            factor1,
            factor2,
        }
    }
}

impl Default for IdentityPolys {
    fn default() -> Self {
        Self::new()
    }
}

/// `base^n` for `n <= CT_GUARD`.
pub fn base_power(n: u64) -> Result<LaurentPoly, PolyError> {
    if n > CT_GUARD {
        return Err(PolyError::Guard { n, guard: CT_GUARD });
    }
    Ok(IdentityPolys::new().base.pow(n))
}

/// Constant term of `base^n`.
pub fn ct_sequence_term(n: u64) -> Result<Count, PolyError> {
    let ct = base_power(n)?.constant_term();
    ct.to_biguint()
        .ok_or(PolyError::Negative(i64::try_from(&ct).unwrap_or(i64::MIN)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn addition() {
        let x = LaurentPoly::x();
        let xi = LaurentPoly::x_inv();
        assert_eq!(&x + &xi, p(&[(1, 1, 0), (1, -1, 0)]));
        assert_eq!(&x + &LaurentPoly::zero(), x);
        assert!((&x + &(-&x)).is_zero());
        assert_eq!((&x + &(-&x)).num_terms(), 0);
    }

    #[test]
    fn multiplication() {
        let s = LaurentPoly::x() + LaurentPoly::x_inv();
        assert_eq!(&s * &s, p(&[(1, 2, 0), (2, 0, 0), (1, -2, 0)]));
        assert_eq!(&s * &LaurentPoly::one(), s);
        assert!((&s * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn powers() {
        let s = LaurentPoly::x() + LaurentPoly::y_inv();
        assert_eq!(s.pow(0), LaurentPoly::one());
        assert_eq!(s.pow(1), s);
        let base = IdentityPolys::new().base;
        assert_eq!(base.pow(2).constant_term(), BigInt::from(15));
    }

    #[test]
    fn constant_terms() {
        assert_eq!(LaurentPoly::one().constant_term(), BigInt::from(1));
        let s = LaurentPoly::x() + LaurentPoly::y_inv();
        assert_eq!(s.constant_term(), BigInt::from(0));
        assert_eq!(IdentityPolys::new().base.constant_term(), BigInt::from(3));
    }

    #[test]
    fn identity_polys_match_hand_expansion() {
        let polys = IdentityPolys::new();
        let expected_base = p(&[
            (3, 0, 0),
            (1, 1, 0),
            (1, -1, 0),
            (1, 0, 1),
            (1, 0, -1),
            (1, -1, 1),
            (1, 1, -1),
        ]);
        assert_eq!(polys.base, expected_base);
        assert_eq!(polys.factor1, p(&[(1, 0, 0), (1, 0, -1), (1, 1, -1)]));
        assert_eq!(polys.factor2, p(&[(1, 0, 0), (1, 0, 1), (1, -1, 1)]));
        assert_eq!(&polys.factor1 * &polys.factor2, polys.base);
    }

    #[test]
    fn sequence_terms() {
        let terms: Vec<_> = (0..5).map(|n| ct_sequence_term(n).unwrap()).collect();
        let expected: Vec<Count> = [1u32, 3, 15, 93, 639].map(Count::from).to_vec();
        assert_eq!(terms, expected);
        assert_eq!(
            ct_sequence_term(201),
            Err(PolyError::Guard { n: 201, guard: 200 })
        );
    }

    #[test]
    fn display() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(
            p(&[(3, 0, 0), (1, -1, 1), (-2, 0, -1), (1, 1, 0)]).to_string(),
            "x + 3 + x^-1*y - 2*y^-1"
        );
        assert_eq!(p(&[(-1, 2, 0)]).to_string(), "-x^2");
        assert_eq!(
            IdentityPolys::new().base.to_string(),
            "x + y + x*y^-1 + 3 + x^-1*y + y^-1 + x^-1"
        );
    }

    #[test]
    fn exponent_box() {
        assert_eq!(LaurentPoly::zero().exponent_box(), None);
        assert_eq!(
            IdentityPolys::new().base.exponent_box(),
            Some(((-1, 1), (-1, 1)))
        );
    }
}
