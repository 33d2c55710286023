//! Elements of `Q(q)` stored as `q^shift * num(q) / den(q)`.
//!
//! Canonical form: `num` and `den` have nonzero constant terms, share no
//! common factor in `Z[q]` (contents included) and `den` has a positive
//! leading coefficient. Zero is `shift = 0, num = [], den = [1]`.

use super::poly::{self, IntPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct RatFunc {
    pub(crate) shift: i64,
    pub(crate) num: IntPoly,
    pub(crate) den: IntPoly,
}

impl RatFunc {
    pub(crate) fn zero() -> Self {
        RatFunc { shift: 0, num: Vec::new(), den: vec![BigInt::one()] }
    }

    pub(crate) fn from_int(c: BigInt) -> Self {
        RatFunc { shift: 0, num: poly::constant(c), den: vec![BigInt::one()] }
    }

    pub(crate) fn monomial(c: BigInt, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { shift: k, num: vec![c], den: vec![BigInt::one()] }
    }

    /// Laurent polynomial `q^shift * Σ coeffs[i] q^i`.
    pub(crate) fn laurent(shift: i64, coeffs: IntPoly) -> Self {
        Self::normalize(shift, coeffs, vec![BigInt::one()])
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub(crate) fn is_laurent(&self) -> bool {
        poly::is_one(&self.den)
    }

    fn strip(shift: &mut i64, p: &mut IntPoly, sign: i64) {
        let z = poly::low_zeros(p);
        if z > 0 {
            p.drain(..z);
            *shift += sign * z as i64;
        }
    }

    pub(crate) fn normalize(mut shift: i64, mut num: IntPoly, mut den: IntPoly) -> Self {
        poly::trim(&mut num);
        poly::trim(&mut den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return Self::zero();
        }
        Self::strip(&mut shift, &mut num, 1);
        Self::strip(&mut shift, &mut den, -1);
        if !poly::is_one(&den) {
            let g = poly::gcd(&num, &den);
            if !poly::is_one(&g) {
                num = poly::div_exact(&num, &g).expect("gcd divides numerator");
                den = poly::div_exact(&den, &g).expect("gcd divides denominator");
            }
            if den.last().unwrap().is_negative() {
                num = poly::neg(&num);
                den = poly::neg(&den);
            }
        }
        RatFunc { shift, num, den }
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(other.shift);
        let a = poly::shift_up(&self.num, (self.shift - s) as usize);
        let b = poly::shift_up(&other.num, (other.shift - s) as usize);
        if self.den == other.den {
            let num = poly::add(&a, &b);
            if self.is_laurent() {
                return Self::laurent(s, num);
            }
            return Self::normalize(s, num, self.den.clone());
        }
        let num = poly::add(&poly::mul(&a, &other.den), &poly::mul(&b, &self.den));
        Self::normalize(s, num, poly::mul(&self.den, &other.den))
    }

    pub(crate) fn neg(&self) -> Self {
        RatFunc { shift: self.shift, num: poly::neg(&self.num), den: self.den.clone() }
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let shift = self.shift + other.shift;
        if self.is_laurent() && other.is_laurent() {
            return RatFunc {
                shift,
                num: poly::mul(&self.num, &other.num),
                den: vec![BigInt::one()],
            };
        }
        // cross-cancel before multiplying to keep coefficients small
        let g1 = poly::gcd(&self.num, &other.den);
        let g2 = poly::gcd(&other.num, &self.den);
        let n1 = poly::div_exact(&self.num, &g1).unwrap();
        let d2 = poly::div_exact(&other.den, &g1).unwrap();
        let n2 = poly::div_exact(&other.num, &g2).unwrap();
        let d1 = poly::div_exact(&self.den, &g2).unwrap();
        let mut num = poly::mul(&n1, &n2);
        let mut den = poly::mul(&d1, &d2);
        if den.last().unwrap().is_negative() {
            num = poly::neg(&num);
            den = poly::neg(&den);
        }
        RatFunc { shift, num, den }
    }

    pub(crate) fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.last().unwrap().is_negative() {
            num = poly::neg(&num);
            den = poly::neg(&den);
        }
        Some(RatFunc { shift: -self.shift, num, den })
    }

    /// Integer coefficient of `q^k` when this is a Laurent polynomial.
    pub(crate) fn laurent_terms(&self) -> Option<Vec<(i64, BigInt)>> {
        if !self.is_laurent() {
            return None;
        }
        Some(
            self.num
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.shift + i as i64, c.clone()))
                .collect(),
        )
    }
}
