//! Exact coefficients: rational functions in `q`, or elements of a
//! cyclotomic field `Q(ζ)` for a chosen order of `ζ`.
//!
//! Every [`Scalar`] remembers which of the two it lives in. Combining
//! scalars from different modes panics: callers always build all of their
//! values from one [`Mode`].

mod cyclo;
mod matrix;
mod modular;
pub(crate) mod poly;
mod ratfunc;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use cyclo::Cyclotomic;
pub use matrix::ScalarMatrix;
pub use modular::modular_root;

use crate::error::{Error, Result};
use cyclo::CycloElt;
use ratfunc::RatFunc;

/// Which coefficient field a computation runs over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `Q(q)` with `q` transcendental.
    Generic,
    /// `Q(ζ)` with `ζ` a primitive root of unity of the stored order.
    RootOfUnity(Arc<Cyclotomic>),
}

impl Mode {
    /// Root-of-unity mode for `ζ` of multiplicative order `order`.
    pub fn root_of_unity(order: u32) -> Result<Mode> {
        if order < 2 {
            return Err(Error::InvalidZetaOrder(order));
        }
        Ok(Mode::RootOfUnity(Arc::new(Cyclotomic::new(order))))
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, Mode::Generic)
    }

    /// Order of `ζ`, if specialised.
    pub fn zeta_order(&self) -> Option<u32> {
        match self {
            Mode::Generic => None,
            Mode::RootOfUnity(f) => Some(f.order()),
        }
    }

    /// Multiplicative order of `ζ^2`.
    pub fn ell(&self) -> Option<u32> {
        self.zeta_order().map(ell_of_order)
    }

    /// Printed name of the variable: `q` generically, `z` for `ζ`.
    pub fn variable(&self) -> &'static str {
        match self {
            Mode::Generic => "q",
            Mode::RootOfUnity(_) => "z",
        }
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, c: i64) -> Scalar {
        self.big(BigInt::from(c))
    }

    pub fn big(&self, c: BigInt) -> Scalar {
        match self {
            Mode::Generic => Scalar(Repr::Generic(RatFunc::from_int(c))),
            Mode::RootOfUnity(f) => Scalar(Repr::Cyclo(f.clone(), CycloElt::from_int(c))),
        }
    }

    /// The variable `q` (or `ζ`).
    pub fn q(&self) -> Scalar {
        self.q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(&self, k: i64) -> Scalar {
        self.monomial(1, k)
    }

    /// `c q^k`.
    pub fn monomial(&self, c: i64, k: i64) -> Scalar {
        match self {
            Mode::Generic => Scalar(Repr::Generic(RatFunc::monomial(BigInt::from(c), k))),
            Mode::RootOfUnity(f) => {
                let num = poly::scale(&f.power(k), &BigInt::from(c));
                Scalar(Repr::Cyclo(f.clone(), CycloElt::normalize(num, BigInt::one())))
            }
        }
    }

    /// Laurent polynomial `Σ c_k q^k` from `(k, c_k)` pairs.
    pub fn laurent(&self, terms: &[(i64, i64)]) -> Scalar {
        terms.iter().fold(self.zero(), |acc, &(k, c)| acc + self.monomial(c, k))
    }

    /// `q - q^{-1}`.
    pub fn q_minus_qinv(&self) -> Scalar {
        self.laurent(&[(1, 1), (-1, -1)])
    }
}

/// `ℓ`, the order of `ζ^2` for `ζ` of order `m`.
pub fn ell_of_order(m: u32) -> u32 {
    if m % 2 == 0 {
        m / 2
    } else {
        m
    }
}

/// The canonical generator `ζ` of the order-`m` cyclotomic field together
/// with `ℓ`, the multiplicative order of `ζ^2`.
pub fn make_root_of_unity(order: u32) -> Result<(Scalar, u32)> {
    let mode = Mode::root_of_unity(order)?;
    Ok((mode.q(), ell_of_order(order)))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Generic(RatFunc),
    Cyclo(Arc<Cyclotomic>, CycloElt),
}

/// An exact coefficient in one [`Mode`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn mode(&self) -> Mode {
        match &self.0 {
            Repr::Generic(_) => Mode::Generic,
            Repr::Cyclo(f, _) => Mode::RootOfUnity(f.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Generic(r) => r.is_zero(),
            Repr::Cyclo(_, c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Generic(r) => r.shift == 0 && poly::is_one(&r.num) && poly::is_one(&r.den),
            Repr::Cyclo(_, c) => poly::is_one(&c.num) && c.den.is_one(),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.mode().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.mode().one()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match &self.0 {
            Repr::Generic(r) => r.inv().map(|x| Scalar(Repr::Generic(x))),
            Repr::Cyclo(f, c) => c.inv(f).map(|x| Scalar(Repr::Cyclo(f.clone(), x))),
        }
    }

    pub fn pow(&self, k: i64) -> Scalar {
        let base = if k < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one_like();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Substitutes `q ↦ ζ` into a generic-mode scalar. `None` when the
    /// denominator vanishes at `ζ`.
    pub fn specialize(&self, target: &Mode) -> Option<Scalar> {
        let Repr::Generic(r) = &self.0 else {
            panic!("specialize expects a generic-mode scalar");
        };
        let eval = |p: &[BigInt]| -> Scalar {
            p.iter()
                .enumerate()
                .fold(target.zero(), |acc, (i, c)| acc + target.big(c.clone()) * target.q_pow(i as i64))
        };
        let den = eval(&r.den);
        let inv = den.inv()?;
        Some(eval(&r.num) * inv * target.q_pow(r.shift))
    }

    /// The value as a Laurent polynomial with integer coefficients, if it is
    /// one (generic mode only).
    pub fn as_laurent(&self) -> Option<Vec<(i64, BigInt)>> {
        match &self.0 {
            Repr::Generic(r) => r.laurent_terms(),
            Repr::Cyclo(..) => None,
        }
    }

    /// Integer value, if this scalar is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        match &self.0 {
            Repr::Generic(r) => {
                if r.is_zero() {
                    Some(BigInt::zero())
                } else if r.shift == 0 && r.num.len() == 1 && poly::is_one(&r.den) {
                    Some(r.num[0].clone())
                } else {
                    None
                }
            }
            Repr::Cyclo(_, c) => {
                if c.is_zero() {
                    Some(BigInt::zero())
                } else if c.num.len() == 1 && c.den.is_one() {
                    Some(c.num[0].clone())
                } else {
                    None
                }
            }
        }
    }

    fn binop(&self, other: &Scalar, g: impl Fn(&RatFunc, &RatFunc) -> RatFunc, c: impl Fn(&CycloElt, &CycloElt, &Cyclotomic) -> CycloElt) -> Scalar {
        match (&self.0, &other.0) {
            (Repr::Generic(a), Repr::Generic(b)) => Scalar(Repr::Generic(g(a, b))),
            (Repr::Cyclo(f, a), Repr::Cyclo(h, b)) => {
                assert!(f.order() == h.order(), "mixed cyclotomic orders {} and {}", f.order(), h.order());
                Scalar(Repr::Cyclo(f.clone(), c(a, b, f)))
            }
            _ => panic!("mixed-mode scalar arithmetic"),
        }
    }

    /// Laurent display terms `(exponent, coefficient)` with a common positive
    /// denominator, highest exponent first. Only for values whose generic
    /// denominator is trivial.
    fn display_terms(&self) -> Option<(Vec<(i64, BigInt)>, BigInt)> {
        match &self.0 {
            Repr::Generic(r) => {
                let mut t = r.laurent_terms()?;
                t.reverse();
                Some((t, BigInt::one()))
            }
            Repr::Cyclo(f, c) => {
                // choose the shortest representative ζ^{-k} * reduce(x ζ^k)
                let m = f.order() as i64;
                let mut best: Option<(usize, i64, Vec<(i64, BigInt)>)> = None;
                for k in 0..m {
                    let rep = f.reduce(&poly::mul(&c.num, &f.power(k)));
                    let terms: Vec<(i64, BigInt)> = rep
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(i, v)| (i as i64 - k, v.clone()))
                        .collect();
                    let spread = terms.iter().map(|(e, _)| e.abs()).max().unwrap_or(0);
                    let key = (terms.len(), spread);
                    if best.as_ref().is_none_or(|(l, s, _)| key < (*l, *s)) {
                        best = Some((key.0, key.1, terms));
                    }
                }
                let mut t = best.map(|b| b.2).unwrap_or_default();
                t.reverse();
                Some((t, c.den.clone()))
            }
        }
    }

    /// Splits the scalar for printing as a coefficient in a sum:
    /// `(negative, body)` where `body` is `None` for a unit magnitude.
    /// Multi-term bodies come parenthesised.
    pub fn coefficient_parts(&self) -> (bool, Option<String>) {
        let v = self.mode().variable();
        if let Some((terms, den)) = self.display_terms() {
            if terms.len() == 1 {
                let (e, c) = &terms[0];
                let neg = c.is_negative();
                let mag = c.abs();
                let body = match (mag.is_one() && den.is_one(), *e) {
                    (true, 0) => None,
                    (true, _) => Some(var_power(v, *e)),
                    (false, 0) => Some(frac(&mag.to_string(), &den)),
                    (false, _) => Some(frac(&format!("{}{}", mag, var_power(v, *e)), &den)),
                };
                return (neg, body);
            }
            let neg = terms.first().is_some_and(|(_, c)| c.is_negative());
            let adj: Vec<(i64, BigInt)> =
                terms.into_iter().map(|(e, c)| (e, if neg { -c } else { c })).collect();
            let inner = format_terms(v, &adj);
            let body = if den.is_one() { format!("({inner})") } else { format!("({inner})/{den}") };
            return (neg, Some(body));
        }
        (false, Some(format!("({self})")))
    }
}

fn frac(s: &str, den: &BigInt) -> String {
    if den.is_one() {
        s.to_string()
    } else {
        format!("{s}/{den}")
    }
}

fn var_power(v: &str, e: i64) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

fn format_terms(v: &str, terms: &[(i64, BigInt)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (idx, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push(if neg { '-' } else { '+' });
        }
        if *e == 0 {
            s.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                s.push_str(&mag.to_string());
            }
            s.push_str(&var_power(v, *e));
        }
    }
    s
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.mode().variable();
        if let Some((terms, den)) = self.display_terms() {
            let body = format_terms(v, &terms);
            return if den.is_one() {
                write!(f, "{body}")
            } else if terms.len() > 1 {
                write!(f, "({body})/{den}")
            } else {
                write!(f, "{body}/{den}")
            };
        }
        let Repr::Generic(r) = &self.0 else { unreachable!() };
        let num: Vec<(i64, BigInt)> = r
            .num
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 + r.shift, c.clone()))
            .collect();
        let den: Vec<(i64, BigInt)> = r
            .den
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c.clone()))
            .collect();
        write!(f, "({})/({})", format_terms(v, &num), format_terms(v, &den))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.binop(b, |x, y| x.add(y), |x, y, _| x.add(y)));
forward_binop!(Sub, sub, |a, b| a.binop(b, |x, y| x.add(&y.neg()), |x, y, _| x.add(&y.neg())));
forward_binop!(Mul, mul, |a, b| a.binop(b, |x, y| x.mul(y), |x, y, f| x.mul(y, f)));
forward_binop!(Div, div, |a, b| a * b.inv().expect("division by zero scalar"));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Generic(r) => Scalar(Repr::Generic(r.neg())),
            Repr::Cyclo(f, c) => Scalar(Repr::Cyclo(f.clone(), c.neg())),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Quantum integer `[r] = (q^r - q^{-r}) / (q - q^{-1})`, written as the
/// Laurent polynomial `q^{r-1} + q^{r-3} + … + q^{1-r}` (negated for `r < 0`).
pub fn quantum_integer(mode: &Mode, r: i64) -> Scalar {
    let sign = r.signum();
    let a = r.abs();
    let terms: Vec<(i64, i64)> = (0..a).map(|t| (a - 1 - 2 * t, sign)).collect();
    mode.laurent(&terms)
}

/// `[m]! = ∏_{r=1}^m [r]`.
pub fn quantum_factorial(mode: &Mode, m: u32) -> Scalar {
    (1..=m as i64).fold(mode.one(), |acc, r| acc * quantum_integer(mode, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn factorial_examples() {
        let g = Mode::Generic;
        assert!(quantum_factorial(&g, 0).is_one());
        assert_eq!(quantum_factorial(&g, 2), g.laurent(&[(1, 1), (-1, 1)]));
        let expected = g.laurent(&[(1, 1), (-1, 1)]) * g.laurent(&[(2, 1), (0, 1), (-2, 1)]);
        assert_eq!(quantum_factorial(&g, 3), expected);
        // the closed form agrees with the defining quotient
        for r in 1..6 {
            let quot = (g.q_pow(r) - g.q_pow(-r)) / g.q_minus_qinv();
            assert_eq!(quot, quantum_integer(&g, r));
        }
    }

    #[test]
    fn roots_of_unity() {
        let (z, ell) = make_root_of_unity(6).unwrap();
        assert_eq!(ell, 3);
        assert_eq!(z.pow(6), z.one_like());
        assert_eq!(make_root_of_unity(7).unwrap().1, 7);
        let (i, ell) = make_root_of_unity(4).unwrap();
        assert_eq!(ell, 2);
        assert_eq!(i.pow(2), -i.one_like());
        assert!((&i + i.inv().unwrap()).is_zero());
        assert!(make_root_of_unity(1).is_err());
        assert!(make_root_of_unity(0).is_err());
    }

    #[test]
    fn rational_functions_reduce() {
        let g = Mode::Generic;
        let a = g.laurent(&[(2, 1), (0, -1)]); // q^2 - 1
        let b = g.laurent(&[(1, 1), (0, -1)]); // q - 1
        assert_eq!(&a / &b, g.laurent(&[(1, 1), (0, 1)]));
        let c = g.one() / g.int(2);
        assert_eq!(&c + &c, g.one());
        assert_eq!(format!("{}", g.q_minus_qinv()), "q-q^-1");
    }

    #[test]
    fn display_prefers_short_representatives() {
        let z = Mode::root_of_unity(7).unwrap();
        assert_eq!(format!("{}", z.q_minus_qinv()), "z-z^-1");
        assert_eq!(format!("{}", z.q_pow(-1)), "z^-1");
        let (neg, body) = (-z.q_minus_qinv()).coefficient_parts();
        assert!(neg);
        assert_eq!(body.as_deref(), Some("(z-z^-1)"));
    }

    #[test]
    #[should_panic(expected = "mixed-mode")]
    fn mixed_modes_panic() {
        let z = Mode::root_of_unity(5).unwrap();
        let _ = Mode::Generic.one() + z.one();
    }

    fn mode_for(k: u32) -> Mode {
        match k {
            0 => Mode::Generic,
            k => Mode::root_of_unity([5, 7, 8, 9, 12][k as usize - 1]).unwrap(),
        }
    }

    const P: u64 = 1_000_000_007;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(seed: u64, k in 0u32..6) {
            let mode = mode_for(k);
            let mut rng = StdRng::seed_from_u64(seed);
            let (a, b, c) = (mode.random(&mut rng), mode.random(&mut rng), mode.random(&mut rng));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&a * &mode.one(), a.clone());
            if let Some(i) = a.inv() {
                prop_assert!((&a * &i).is_one());
            } else {
                prop_assert!(a.is_zero());
            }
        }

        #[test]
        fn specialization_is_a_homomorphism(seed: u64, m in prop::sample::select(vec![3u32, 4, 5, 6, 7, 8, 9, 10, 12])) {
            let g = Mode::Generic;
            let z = Mode::root_of_unity(m).unwrap();
            let mut rng = StdRng::seed_from_u64(seed);
            let (a, b) = (g.random(&mut rng), g.random(&mut rng));
            if let (Some(sa), Some(sb)) = (a.specialize(&z), b.specialize(&z)) {
                prop_assert_eq!((&a + &b).specialize(&z), Some(&sa + &sb));
                if let Some(sab) = (&a * &b).specialize(&z) {
                    prop_assert_eq!(sab, &sa * &sb);
                }
            }
            prop_assert_eq!(g.q().specialize(&z).unwrap(), z.q());
        }

        #[test]
        fn reduction_mod_p_is_a_homomorphism(seed: u64, k in 0u32..6) {
            let mode = mode_for(k);
            let (p, t) = match mode.zeta_order() {
                None => (P, 1 + seed % (P - 1)),
                Some(m) => {
                    let p = (1..).map(|j| 1 + j * 360 * m as u64).find(|&p| is_prime(p)).unwrap();
                    (p, modular_root(m, p).unwrap())
                }
            };
            let mut rng = StdRng::seed_from_u64(seed);
            let (a, b) = (mode.random(&mut rng), mode.random(&mut rng));
            if let (Some(x), Some(y)) = (a.eval_mod(t, p), b.eval_mod(t, p)) {
                prop_assert_eq!((&a + &b).eval_mod(t, p), Some((x + y) % p));
                prop_assert_eq!((&a * &b).eval_mod(t, p), Some(((x as u128 * y as u128) % p as u128) as u64));
            }
        }

        #[test]
        fn rank_matches_modular_image(seed: u64, rows in 1usize..5, cols in 1usize..5) {
            let g = Mode::Generic;
            let mut rng = StdRng::seed_from_u64(seed);
            let base: Vec<Vec<Scalar>> = (0..rows).map(|_| (0..cols).map(|_| g.random(&mut rng)).collect()).collect();
            // append a dependent row so ranks below full occur
            let mut all = base.clone();
            let c = g.random(&mut rng);
            all.push(base[0].iter().zip(base.last().unwrap()).map(|(x, y)| x + &(&c * y)).collect());
            let m = ScalarMatrix::from_rows(&g, all);
            let t = rng.gen_range(2..P);
            if let Some(r) = m.rank_mod(t, P) {
                prop_assert_eq!(m.rank(), r);
            }
        }
    }

    fn is_prime(p: u64) -> bool {
        p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
    }

    #[test]
    fn quantum_integers_vanish_exactly_at_multiples_of_ell() {
        for m in 3..=16u32 {
            let z = Mode::root_of_unity(m).unwrap();
            let ell = z.ell().unwrap() as i64;
            for r in 1..=4 * ell {
                assert_eq!(quantum_integer(&z, r).is_zero(), r % ell == 0, "m={m} r={r}");
            }
        }
        let g = Mode::Generic;
        assert!((1..20).all(|r| !quantum_integer(&g, r).is_zero()));
    }

    #[test]
    fn modular_roots() {
        assert_eq!(modular_root(4, 13).map(|t| t * t % 13), Some(12));
        assert_eq!(modular_root(5, 13), None);
        let z = Mode::root_of_unity(7).unwrap();
        let t = modular_root(7, 29).unwrap();
        assert_eq!(z.q_pow(7).eval_mod(t, 29), Some(1));
        assert_eq!(Mode::Generic.q_pow(-1).eval_mod(0, 29), None);
    }
}
