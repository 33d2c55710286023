//! Reduction of exact scalars modulo a prime, used to cross-check exact
//! ranks and identities against a cheap homomorphic image.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::cyclo::cyclotomic_polynomial;
use super::{Mode, Repr, Scalar, ScalarMatrix};

fn reduce(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b, p);
        }
        b = mul(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `None` for zero.
fn inv(a: u64, p: u64) -> Option<u64> {
    (a % p != 0).then(|| pow(a, p - 2, p))
}

fn eval_poly(c: &[BigInt], t: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, x| (mul(acc, t, p) + reduce(x, p)) % p)
}

/// A root of `Φ_m` modulo `p`, if `p ≡ 1 (mod m)`.
pub fn modular_root(m: u32, p: u64) -> Option<u64> {
    if (p - 1) % m as u64 != 0 {
        return None;
    }
    let phi = cyclotomic_polynomial(m);
    (2..p.min(1000)).map(|a| pow(a, (p - 1) / m as u64, p)).find(|&t| eval_poly(&phi, t, p) == 0)
}

impl Scalar {
    /// Image under `q ↦ t` (generic) or `ζ ↦ t` (cyclotomic, where `t` must
    /// be a root of `Φ_m` mod `p`) in `F_p`. `None` when a denominator
    /// vanishes.
    pub fn eval_mod(&self, t: u64, p: u64) -> Option<u64> {
        let t = t % p;
        match &self.0 {
            Repr::Generic(r) => {
                let num = eval_poly(&r.num, t, p);
                let den = inv(eval_poly(&r.den, t, p), p)?;
                let unit = if r.shift < 0 { inv(t, p)? } else { t };
                Some(mul(mul(num, den, p), pow(unit, r.shift.unsigned_abs(), p), p))
            }
            Repr::Cyclo(_, c) => Some(mul(eval_poly(&c.num, t, p), inv(reduce(&c.den, p), p)?, p)),
        }
    }
}

impl Mode {
    /// A random nonzero-denominator scalar with small coefficients and
    /// exponents in `[-2, 2]`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        let laurent = |rng: &mut R| {
            let terms: Vec<(i64, i64)> = (0..rng.gen_range(0..=3)).map(|_| (rng.gen_range(-2..=2), rng.gen_range(-3..=3))).collect();
            self.laurent(&terms)
        };
        let num = laurent(rng);
        let den = match self {
            Mode::Generic => loop {
                let d = laurent(rng);
                if !d.is_zero() {
                    break d;
                }
            },
            Mode::RootOfUnity(_) => self.int(rng.gen_range(1..=4)),
        };
        num / den
    }
}

impl ScalarMatrix {
    /// Rank of the image in `F_p` under the substitution of
    /// [`Scalar::eval_mod`]; `None` if an entry is undefined there.
    pub fn rank_mod(&self, t: u64, p: u64) -> Option<usize> {
        let mut m: Vec<Vec<u64>> =
            (0..self.rows()).map(|r| self.row(r).iter().map(|s| s.eval_mod(t, p)).collect::<Option<_>>()).collect::<Option<_>>()?;
        let mut rank = 0;
        for c in 0..self.cols() {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, piv);
            let scale = inv(m[rank][c], p)?;
            let pivot: Vec<u64> = m[rank].iter().map(|&x| mul(x, scale, p)).collect();
            for row in m.iter_mut().skip(rank + 1) {
                let f = row[c];
                if f != 0 {
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = (*x + p - mul(f, y, p)) % p;
                    }
                }
            }
            rank += 1;
        }
        Some(rank)
    }
}
