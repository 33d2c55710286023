//! The cyclotomic field `Q(ζ) = Q[x]/Φ_m(x)`.

use super::poly::{self, IntPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Cyclotomic field of order `m`, with `Φ_m` stored as a monic integer
/// polynomial.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u32,
    phi: IntPoly,
}

impl Cyclotomic {
    pub(crate) fn new(order: u32) -> Self {
        Cyclotomic { order, phi: cyclotomic_polynomial(order) }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(m)`, the degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub(crate) fn phi(&self) -> &[BigInt] {
        &self.phi
    }

    pub(crate) fn reduce(&self, p: &[BigInt]) -> IntPoly {
        poly::rem_monic(p, &self.phi)
    }

    /// Representative of `x^k` for any integer `k`.
    pub(crate) fn power(&self, k: i64) -> IntPoly {
        let m = self.order as i64;
        let e = k.rem_euclid(m) as usize;
        self.reduce(&poly::shift_up(&[BigInt::one()], e))
    }
}

/// `Φ_m` computed as `(x^m - 1) / ∏_{d | m, d < m} Φ_d`.
pub(crate) fn cyclotomic_polynomial(m: u32) -> IntPoly {
    assert!(m >= 1);
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            p = poly::div_exact(&p, &cyclotomic_polynomial(d)).expect("Φ_d divides x^m - 1");
        }
    }
    p
}

/// Element `num(ζ) / den` with `den > 0` and `gcd(content(num), den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct CycloElt {
    pub(crate) num: IntPoly,
    pub(crate) den: BigInt,
}

impl CycloElt {
    pub(crate) fn zero() -> Self {
        CycloElt { num: Vec::new(), den: BigInt::one() }
    }

    pub(crate) fn from_int(c: BigInt) -> Self {
        CycloElt { num: poly::constant(c), den: BigInt::one() }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub(crate) fn normalize(mut num: IntPoly, mut den: BigInt) -> Self {
        poly::trim(&mut num);
        if num.is_empty() {
            return Self::zero();
        }
        if den.is_negative() {
            den = -den;
            num = poly::neg(&num);
        }
        let g = poly::content(&num).gcd(&den);
        if !g.is_one() {
            num = poly::div_scalar_exact(&num, &g);
            den /= g;
        }
        CycloElt { num, den }
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::normalize(poly::add(&self.num, &other.num), self.den.clone());
        }
        let num = poly::add(&poly::scale(&self.num, &other.den), &poly::scale(&other.num, &self.den));
        Self::normalize(num, &self.den * &other.den)
    }

    pub(crate) fn neg(&self) -> Self {
        CycloElt { num: poly::neg(&self.num), den: self.den.clone() }
    }

    pub(crate) fn mul(&self, other: &Self, field: &Cyclotomic) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let num = field.reduce(&poly::mul(&self.num, &other.num));
        Self::normalize(num, &self.den * &other.den)
    }

    /// Inverse via the extended Euclidean algorithm in `Q[x]`.
    pub(crate) fn inv(&self, field: &Cyclotomic) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let a: Vec<BigRational> = self.num.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let m: Vec<BigRational> = field.phi().iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let s = rat_inverse_mod(&a, &m)?;
        // s / num  ==>  (den * s)
        let den_lcm = s.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num: IntPoly = s
            .iter()
            .map(|c| (c.numer() * (&den_lcm / c.denom())) * &self.den)
            .collect();
        Some(Self::normalize(num, den_lcm))
    }
}

fn rat_trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn rat_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    rat_trim(&mut r);
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let off = r.len() - 1 - db;
        let c = r.last().unwrap() / &lb;
        for (j, bc) in b.iter().enumerate() {
            r[off + j] -= &c * bc;
        }
        q[off] = c;
        r.pop();
        rat_trim(&mut r);
    }
    rat_trim(&mut q);
    (q, r)
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rat_trim(&mut out);
    out
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (o, c) in out.iter_mut().zip(b) {
        *o -= c;
    }
    rat_trim(&mut out);
    out
}

/// `s` with `s * a ≡ 1 (mod m)`, or `None` when `gcd(a, m) ≠ 1`.
fn rat_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (Vec::new(), vec![BigRational::one()]);
    rat_trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = rat_divrem(&r0, &r1);
        let s = rat_sub(&s0, &rat_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    Some(s0.into_iter().map(|x| x / &c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(7), ints(&[1, 1, 1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn inverse_round_trip() {
        let f = Cyclotomic::new(9);
        let a = CycloElt::normalize(ints(&[3, 0, -2, 1]), BigInt::from(5));
        let b = a.inv(&f).unwrap();
        let one = a.mul(&b, &f);
        assert_eq!(one, CycloElt::from_int(BigInt::one()));
    }
}
