//! Generators `e_i`, `f_i`, `k_{±ε_r^∨}` of the quantized enveloping algebra
//! and their action on tensor powers of the vector representation `V`.
//!
//! On `V = K^n` with basis `v_1, …, v_n`: `e_i v_{i+1} = v_i`, `f_i v_i = v_{i+1}`
//! and `k_{ε_r^∨} v_s = ζ^{δ_{rs}} v_s`. Tensor powers use the iterated
//! coproduct of `Δ(e_i) = e_i ⊗ 1 + k_i ⊗ e_i`, `Δ(f_i) = f_i ⊗ k_i^{-1} + 1 ⊗ f_i`,
//! `Δ(k) = k ⊗ k`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Mode, Scalar};
use crate::weights::Weight;

/// A generator; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    E(usize),
    F(usize),
    /// `k_{ε_r^∨}` for sign `+1`, its inverse for `-1`.
    K(usize, i8),
}

impl Generator {
    /// All of `e_i`, `f_i` (`i < n`) and `k_{±ε_r^∨}` (`r ≤ n`).
    pub fn all(n: usize) -> Vec<Generator> {
        let mut out: Vec<Generator> = (1..n).flat_map(|i| [Generator::E(i), Generator::F(i)]).collect();
        out.extend((1..=n).flat_map(|r| [Generator::K(r, 1), Generator::K(r, -1)]));
        out
    }

    pub fn check(&self, n: usize) -> Result<()> {
        let ok = match *self {
            Generator::E(i) | Generator::F(i) => i >= 1 && i < n,
            Generator::K(r, s) => r >= 1 && r <= n && (s == 1 || s == -1),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("generator {self} out of range for n = {n}")))
        }
    }

    /// Weight by which the generator shifts vectors.
    pub fn weight(&self, n: usize) -> Weight {
        match *self {
            Generator::E(i) => Weight::simple_root(n, i),
            Generator::F(i) => -&Weight::simple_root(n, i),
            Generator::K(..) => Weight::zero(n),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::E(i) => write!(f, "e{i}"),
            Generator::F(i) => write!(f, "f{i}"),
            Generator::K(r, 1) => write!(f, "k{r}"),
            Generator::K(r, _) => write!(f, "k{r}^-1"),
        }
    }
}

/// Vector in `V^{⊗k}` keyed by the tuple of basis indices (1-based).
pub type TensorVec = BTreeMap<Vec<usize>, Scalar>;

/// Exponent of `ζ` for `k_i = k_{ε_i - ε_{i+1}}` acting on `v_s`.
fn simple_k_exponent(i: usize, s: usize) -> i64 {
    (s == i) as i64 - (s == i + 1) as i64
}

fn add_term(out: &mut TensorVec, key: Vec<usize>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match out.get_mut(&key) {
        Some(e) => {
            *e += &c;
            if e.is_zero() {
                out.remove(&key);
            }
        }
        None => {
            out.insert(key, c);
        }
    }
}

/// `g · (v_{t_1} ⊗ ⋯ ⊗ v_{t_k})`.
pub fn act_on_basis(mode: &Mode, g: Generator, t: &[usize]) -> TensorVec {
    let mut out = TensorVec::new();
    match g {
        Generator::K(r, s) => {
            let e = t.iter().filter(|&&x| x == r).count() as i64 * s as i64;
            out.insert(t.to_vec(), mode.q_pow(e));
        }
        Generator::E(i) => {
            let mut before = 0i64;
            for (j, &x) in t.iter().enumerate() {
                if x == i + 1 {
                    let mut key = t.to_vec();
                    key[j] = i;
                    add_term(&mut out, key, mode.q_pow(before));
                }
                before += simple_k_exponent(i, x);
            }
        }
        Generator::F(i) => {
            let mut after: i64 = t.iter().map(|&x| -simple_k_exponent(i, x)).sum();
            for (j, &x) in t.iter().enumerate() {
                after += simple_k_exponent(i, x);
                if x == i {
                    let mut key = t.to_vec();
                    key[j] = i + 1;
                    add_term(&mut out, key, mode.q_pow(after));
                }
            }
        }
    }
    out
}

pub fn act(mode: &Mode, g: Generator, v: &TensorVec) -> TensorVec {
    let mut out = TensorVec::new();
    for (t, c) in v {
        for (key, d) in act_on_basis(mode, g, t) {
            add_term(&mut out, key, c * &d);
        }
    }
    out
}

/// `u · v` for `u = g_1 g_2 ⋯ g_m` (the rightmost generator acts first).
pub fn act_word(mode: &Mode, word: &[Generator], v: &TensorVec) -> TensorVec {
    word.iter().rev().fold(v.clone(), |acc, &g| act(mode, g, &acc))
}

/// Weight `Σ ε_{t_j}` of a basis tensor.
pub fn tensor_weight(n: usize, t: &[usize]) -> Weight {
    let mut c = vec![0; n];
    for &x in t {
        c[x - 1] += 1;
    }
    Weight::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn basis(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0..k).map(|_| 1..=n).multi_cartesian_product().collect()
    }

    fn unit(mode: &Mode, t: &[usize]) -> TensorVec {
        TensorVec::from([(t.to_vec(), mode.one())])
    }

    fn combine(terms: &[(Scalar, TensorVec)]) -> TensorVec {
        let mut out = TensorVec::new();
        for (c, v) in terms {
            for (k, x) in v {
                add_term(&mut out, k.clone(), c * x);
            }
        }
        out
    }

    #[test]
    fn action_on_v() {
        let m = Mode::Generic;
        assert_eq!(act_on_basis(&m, Generator::E(1), &[2]), unit(&m, &[1]));
        assert!(act_on_basis(&m, Generator::E(1), &[1]).is_empty());
        assert_eq!(act_on_basis(&m, Generator::F(2), &[2]), unit(&m, &[3]));
        assert_eq!(act_on_basis(&m, Generator::K(1, 1), &[1])[&vec![1]], m.q());
    }

    #[test]
    fn e1_on_two_tensor() {
        // e_1 (v_1 ⊗ v_2) = k_1 v_1 ⊗ e_1 v_2 = ζ v_1 ⊗ v_1
        let m = Mode::Generic;
        let out = act_on_basis(&m, Generator::E(1), &[1, 2]);
        assert_eq!(out, TensorVec::from([(vec![1, 1], m.q())]));
    }

    #[test]
    fn defining_relations_on_tensor_cube() {
        for mode in [Mode::Generic, Mode::root_of_unity(7).unwrap()] {
            for n in 2..=3 {
                for t in basis(n, 3) {
                    let v = unit(&mode, &t);
                    let w = |word: &[Generator]| act_word(&mode, word, &v);
                    let one = mode.one();
                    for i in 1..n {
                        let (e, f) = (Generator::E(i), Generator::F(i));
                        // e_i f_i - f_i e_i = (k_i - k_i^{-1}) / (ζ - ζ^{-1})
                        let lhs = combine(&[(one.clone(), w(&[e, f])), (-&one, w(&[f, e]))]);
                        let c = mode.q_minus_qinv().inv().unwrap();
                        let ki = [Generator::K(i, 1), Generator::K(i + 1, -1)];
                        let kinv = [Generator::K(i, -1), Generator::K(i + 1, 1)];
                        let rhs = combine(&[(c.clone(), w(&ki)), (-&c, w(&kinv))]);
                        assert_eq!(lhs, rhs, "n={n} t={t:?} i={i}");
                        // k_i e_i k_i^{-1} = ζ^2 e_i
                        let conj = w(&[ki[0], ki[1], e, kinv[0], kinv[1]]);
                        assert_eq!(conj, combine(&[(mode.q_pow(2), w(&[e]))]));
                        for j in 1..n {
                            if (i as i64 - j as i64).abs() == 1 {
                                // e_i^2 e_j - [2] e_i e_j e_i + e_j e_i^2 = 0
                                let ej = Generator::E(j);
                                let two = crate::scalars::quantum_integer(&mode, 2);
                                let s = combine(
                                    &[(one.clone(), w(&[e, e, ej])), (-&two, w(&[e, ej, e])), (one.clone(), w(&[ej, e, e]))],
                                );
                                assert!(s.is_empty());
                            } else if i != j {
                                let ej = Generator::F(j);
                                assert_eq!(w(&[e, ej]), w(&[ej, e]));
                            }
                        }
                    }
                }
            }
        }
    }
}
