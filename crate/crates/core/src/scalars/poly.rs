//! Dense univariate polynomials over `Z`, stored low degree first with no
//! trailing zeros. The zero polynomial is the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type IntPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn constant(c: BigInt) -> IntPoly {
    if c.is_zero() {
        Vec::new()
    } else {
        vec![c]
    }
}

pub(crate) fn is_one(p: &[BigInt]) -> bool {
    p.len() == 1 && p[0].is_one()
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: IntPoly = long.to_vec();
    for (o, c) in out.iter_mut().zip(short) {
        *o += c;
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(a: &[BigInt]) -> IntPoly {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out: IntPoly = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (o, c) in out.iter_mut().zip(b) {
        *o -= c;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
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

pub(crate) fn scale(a: &[BigInt], c: &BigInt) -> IntPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

/// Multiply by `x^k`.
pub(crate) fn shift_up(a: &[BigInt], k: usize) -> IntPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); k];
    out.extend_from_slice(a);
    out
}

/// Number of leading (low-degree) zero coefficients.
pub(crate) fn low_zeros(a: &[BigInt]) -> usize {
    a.iter().take_while(|c| c.is_zero()).count()
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub(crate) fn div_scalar_exact(a: &[BigInt], c: &BigInt) -> IntPoly {
    a.iter().map(|x| x / c).collect()
}

pub(crate) fn primitive_part(a: &[BigInt]) -> IntPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = content(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    div_scalar_exact(a, &c)
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
pub(crate) fn prem(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut r: IntPoly = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        // r <- lb * r - lr * x^(dr-db) * b
        for c in r.iter_mut() {
            *c *= lb;
        }
        let off = dr - db;
        for (j, bc) in b.iter().enumerate() {
            r[off + j] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor in `Z[x]`, normalised to a positive leading
/// coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() {
        return primitive_sign(b);
    }
    if b.is_empty() {
        return primitive_sign(a);
    }
    let cont = content(a).gcd(&content(b));
    let (mut x, mut y) = if a.len() >= b.len() {
        (primitive_part(a), primitive_part(b))
    } else {
        (primitive_part(b), primitive_part(a))
    };
    while !y.is_empty() {
        if y.len() == 1 {
            x = vec![BigInt::one()];
            break;
        }
        let r = prem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    let x = primitive_part(&x);
    scale(&x, &cont)
}

fn primitive_sign(a: &[BigInt]) -> IntPoly {
    if a.last().is_some_and(|c| c.is_negative()) {
        neg(a)
    } else {
        a.to_vec()
    }
}

/// Exact division `a / b` in `Z[x]`; `None` if `b` does not divide `a`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut r: IntPoly = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    while !r.is_empty() && r.len() >= b.len() {
        let (qc, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let off = r.len() - b.len();
        for (j, bc) in b.iter().enumerate() {
            r[off + j] -= &qc * bc;
        }
        q[off] = qc;
        trim(&mut r);
    }
    if r.is_empty() {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Remainder modulo a monic polynomial; stays in `Z[x]`.
pub(crate) fn rem_monic(a: &[BigInt], m: &[BigInt]) -> IntPoly {
    debug_assert!(m.last().is_some_and(|c| c.is_one()));
    let dm = m.len() - 1;
    let mut r: IntPoly = a.to_vec();
    while r.len() > dm {
        let lr = r.pop().unwrap();
        if lr.is_zero() {
            continue;
        }
        let off = r.len() - dm;
        for (j, mc) in m[..dm].iter().enumerate() {
            r[off + j] -= &lr * mc;
        }
    }
    trim(&mut r);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> IntPoly {
        let mut out: IntPoly = v.iter().map(|&c| BigInt::from(c)).collect();
        trim(&mut out);
        out
    }

    #[test]
    fn gcd_of_products() {
        // (x+1)(x-2) and (x+1)(3x+5)
        let a = mul(&p(&[1, 1]), &p(&[-2, 1]));
        let b = mul(&p(&[1, 1]), &p(&[5, 3]));
        assert_eq!(gcd(&a, &b), p(&[1, 1]));
        assert_eq!(gcd(&scale(&a, &BigInt::from(6)), &scale(&b, &BigInt::from(4))), p(&[2, 2]));
    }

    #[test]
    fn exact_division() {
        let a = mul(&p(&[1, 1]), &p(&[-2, 0, 3]));
        assert_eq!(div_exact(&a, &p(&[1, 1])), Some(p(&[-2, 0, 3])));
        assert_eq!(div_exact(&a, &p(&[2, 1])), None);
    }

    #[test]
    fn monic_remainder() {
        // x^3 mod (x^2 + x + 1) = 1
        assert_eq!(rem_monic(&p(&[0, 0, 0, 1]), &p(&[1, 1, 1])), p(&[1]));
    }
}
