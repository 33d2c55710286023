//! Type `A_{n-1}` weight combinatorics in the `ε`-basis of the `GL_n`
//! weight lattice `Z^n`.
//!
//! Roots are `α_{rs} = ε_r - ε_s`, coroots pair by `<λ, α_{rs}^∨> = λ_r - λ_s`,
//! and `ρ = (n-1, …, 1, 0)`. The Weyl group is the symmetric group acting
//! by `w ε_r = ε_{w(r)}`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default enumeration bound for exhaustive searches over `W` and `2^{Δ+}`.
pub const DEFAULT_ENUMERATION_BOUND: usize = 5;

/// Integer weight in `ε`-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// `ε_r` (1-based).
    pub fn epsilon(n: usize, r: usize) -> Self {
        let mut v = vec![0; n];
        v[r - 1] = 1;
        Weight(v)
    }

    /// `α_{rs} = ε_r - ε_s` (1-based).
    pub fn root(n: usize, r: usize, s: usize) -> Self {
        let mut v = vec![0; n];
        v[r - 1] += 1;
        v[s - 1] -= 1;
        Weight(v)
    }

    /// Simple root `α_i = α_{i,i+1}`.
    pub fn simple_root(n: usize, i: usize) -> Self {
        Self::root(n, i, i + 1)
    }

    /// `ρ = (n-1, n-2, …, 0)`.
    pub fn rho(n: usize) -> Self {
        Weight((0..n as i64).rev().collect())
    }

    /// Sum of simple roots with the given multiplicities `m_1, …, m_{n-1}`.
    pub fn from_simple_coords(m: &[i64]) -> Self {
        let n = m.len() + 1;
        let mut v = vec![0; n];
        for (i, &c) in m.iter().enumerate() {
            v[i] += c;
            v[i + 1] -= c;
        }
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `<λ, α_{rs}^∨>`.
    pub fn coroot_pairing(&self, r: usize, s: usize) -> i64 {
        self.0[r - 1] - self.0[s - 1]
    }

    /// Standard form `(λ, μ)` with `(α, α) = 2`.
    pub fn dot(&self, other: &Weight) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Coordinates `m_i` with `β = Σ m_i α_i`, if `β` lies in the root
    /// lattice.
    pub fn simple_coords(&self) -> Option<Vec<i64>> {
        if self.degree() != 0 {
            return None;
        }
        let mut acc = 0;
        Some(
            self.0[..self.0.len().saturating_sub(1)]
                .iter()
                .map(|c| {
                    acc += c;
                    acc
                })
                .collect(),
        )
    }

    /// `Some(m)` when `β ∈ Q^+`.
    pub fn positive_root_coords(&self) -> Option<Vec<i64>> {
        self.simple_coords().filter(|m| m.iter().all(|&c| c >= 0))
    }

    fn check_rank(&self, n: usize) -> Result<()> {
        if self.rank() != n {
            return Err(Error::RankMismatch { expected: n, found: self.rank() });
        }
        Ok(())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(","))
    }
}

impl From<Weight> for String {
    fn from(w: Weight) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Weight {
    type Error = Error;
    fn try_from(s: String) -> Result<Weight> {
        s.parse()
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated `ε`-coordinates, e.g. `"-2,1,1"`.
    fn from_str(s: &str) -> Result<Weight> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Weight(Vec::new()));
        }
        s.split(',')
            .map(|t| t.trim().replace('\u{2212}', "-").parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
            .map_err(|e| Error::InvalidInput(format!("weight `{s}`: {e}")))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        assert_eq!(self.rank(), o.rank());
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        assert_eq!(self.rank(), o.rank());
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

/// Element of `W ≅ S_n`, stored as the images `w(1), …, w(n)` (0-based
/// internally).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElt(Vec<usize>);

impl WeylElt {
    pub fn identity(n: usize) -> Self {
        WeylElt((0..n).collect())
    }

    /// From 0-based images; panics unless this is a permutation.
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "not a permutation: {images:?}");
            seen[i] = true;
        }
        WeylElt(images)
    }

    /// Simple reflection `s_i` swapping `i` and `i+1` (1-based).
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n);
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i - 1, i);
        WeylElt(v)
    }

    /// Product `s_{i_1} s_{i_2} ⋯` of simple reflections (leftmost applied
    /// last).
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter().fold(Self::identity(n), |acc, &i| acc.compose(&Self::simple(n, i)))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `w(r)`, 1-based.
    pub fn apply_index(&self, r: usize) -> usize {
        self.0[r - 1] + 1
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(self ∘ other)(r) = self(other(r))`.
    pub fn compose(&self, other: &WeylElt) -> WeylElt {
        assert_eq!(self.rank(), other.rank());
        WeylElt(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> WeylElt {
        let mut v = vec![0; self.rank()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        WeylElt(v)
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        self.inversions().len()
    }

    /// Pairs `r < s` with `w(r) > w(s)`, i.e. `Δ^+ ∩ (-w^{-1} Δ^+)`.
    pub fn inversions(&self) -> RootSubset {
        let n = self.rank();
        RootSubset(
            (1..=n)
                .tuple_combinations()
                .filter(|&(r, s)| self.0[r - 1] > self.0[s - 1])
                .collect(),
        )
    }

    /// Linear action `(wλ)_{w(r)} = λ_r`.
    pub fn act(&self, lambda: &Weight) -> Weight {
        assert_eq!(self.rank(), lambda.rank());
        let mut v = vec![0; self.rank()];
        for (r, &c) in lambda.0.iter().enumerate() {
            v[self.0[r]] = c;
        }
        Weight(v)
    }

    /// Fixes the first index, i.e. lies in `W_J` for `J = {2, …, n-1}`.
    pub fn fixes_first(&self) -> bool {
        self.0.first() == Some(&0)
    }
}

impl fmt::Display for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().map(|i| i + 1).join(" "))
    }
}

/// All of `S_n`, in lexicographic order of image vectors.
pub fn weyl_group(n: usize) -> Vec<WeylElt> {
    (0..n).permutations(n).map(WeylElt).collect()
}

/// Simple reflections `s_1, …, s_{n-1}`.
pub fn simple_reflections(n: usize) -> Vec<WeylElt> {
    (1..n).map(|i| WeylElt::simple(n, i)).collect()
}

/// Positive roots `(r, s)`, `1 ≤ r < s ≤ n`, in lexicographic order.
pub fn positive_roots(n: usize) -> Vec<(usize, usize)> {
    (1..=n).tuple_combinations().collect()
}

/// Subset of `Δ^+` given as pairs `(r, s)` with `r < s`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSubset(pub BTreeSet<(usize, usize)>);

impl RootSubset {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_X = -Σ_{α ∈ X} α`.
    pub fn lambda(&self, n: usize) -> Weight {
        self.0.iter().fold(Weight::zero(n), |acc, &(r, s)| &acc - &Weight::root(n, r, s))
    }
}

impl fmt::Display for RootSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().map(|(r, s)| format!("a{r}{s}")).join(", "))
    }
}

/// `w ∘ λ = w(λ + ρ) - ρ`.
pub fn dot_action(w: &WeylElt, lambda: &Weight) -> Result<Weight> {
    lambda.check_rank(w.rank())?;
    let rho = Weight::rho(w.rank());
    Ok(&w.act(&(lambda + &rho)) - &rho)
}

/// Result of moving a weight into the dominant chamber by the dot action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DominantConjugate {
    /// `λ + ρ` lies on a wall.
    Singular,
    /// The unique `w` with `w ∘ λ = μ` dominant.
    Regular { w: WeylElt, mu: Weight },
}

/// Sorts `λ + ρ` into strictly decreasing order; ties mean singular.
pub fn dominant_conjugate(lambda: &Weight) -> DominantConjugate {
    let n = lambda.rank();
    let shifted = lambda + &Weight::rho(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| shifted.0[b].cmp(&shifted.0[a]));
    if order.windows(2).any(|p| shifted.0[p[0]] == shifted.0[p[1]]) {
        return DominantConjugate::Singular;
    }
    // coordinate at position order[k] moves to position k
    let mut images = vec![0; n];
    for (k, &r) in order.iter().enumerate() {
        images[r] = k;
    }
    let w = WeylElt(images);
    let mu = dot_action(&w, lambda).expect("rank matches");
    DominantConjugate::Regular { w, mu }
}

/// The subsets `X ⊂ Δ^+` whose dot orbit meets the dominant chamber, each
/// with its Weyl group element, plus the brute-force checks run along the way.
#[derive(Clone, Debug)]
pub struct KostantSets {
    pub pairs: Vec<(WeylElt, RootSubset)>,
    /// Every subset whose orbit meets `Λ^+` meets it exactly in `0`.
    pub orbit_condition_holds: bool,
    /// Each paired `w` has inversion set `Δ^+ ∩ (-w^{-1} Δ^+) = X`, and the
    /// pairing is a bijection onto `W`.
    pub bijection_holds: bool,
}

pub fn kostant_sets(n: usize, bound: usize) -> Result<KostantSets> {
    if n > bound {
        return Err(Error::BoundExceeded { what: "n", value: n, bound });
    }
    let roots = positive_roots(n);
    let mut pairs = Vec::new();
    let mut orbit_condition_holds = true;
    for mask in 0u64..(1u64 << roots.len()) {
        let x = RootSubset(
            roots
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect(),
        );
        if let DominantConjugate::Regular { w, mu } = dominant_conjugate(&x.lambda(n)) {
            if mu == Weight::zero(n) {
                pairs.push((w, x));
            } else {
                orbit_condition_holds = false;
            }
        }
    }
    let ws: BTreeSet<&WeylElt> = pairs.iter().map(|(w, _)| w).collect();
    let bijection_holds = ws.len() == pairs.len()
        && pairs.len() == (1..=n).product::<usize>()
        && pairs.iter().all(|(w, x)| &w.inversions() == x);
    Ok(KostantSets { pairs, orbit_condition_holds, bijection_holds })
}

/// `h = max_{α ∈ Δ^+} <ρ, α^∨> + 1`.
pub fn coxeter_number(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("Coxeter number needs n ≥ 2, got {n}")));
    }
    let rho = Weight::rho(n);
    let m = positive_roots(n).into_iter().map(|(r, s)| rho.coroot_pairing(r, s)).max().unwrap();
    Ok(m as usize + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    #[test]
    fn dot_action_examples() {
        let lambda = w(&[3, -1, 4]);
        assert_eq!(dot_action(&WeylElt::identity(3), &lambda).unwrap(), lambda);
        assert_eq!(dot_action(&WeylElt::simple(2, 1), &w(&[-1, 1])).unwrap(), w(&[0, 0]));
        let s2s1 = WeylElt::from_word(3, &[2, 1]);
        assert_eq!(dot_action(&s2s1, &w(&[-2, 1, 1])).unwrap(), w(&[0, 0, 0]));
        assert!(matches!(dot_action(&s2s1, &w(&[1, 2])), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn dominant_conjugate_examples() {
        assert_eq!(
            dominant_conjugate(&Weight::zero(4)),
            DominantConjugate::Regular { w: WeylElt::identity(4), mu: Weight::zero(4) }
        );
        assert_eq!(dominant_conjugate(&w(&[-1, 0])), DominantConjugate::Singular);
        match dominant_conjugate(&w(&[-2, 1, 1])) {
            DominantConjugate::Regular { w: el, mu } => {
                assert_eq!(el, WeylElt::from_word(3, &[2, 1]));
                assert_eq!(el.length(), 2);
                assert_eq!(mu, Weight::zero(3));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn kostant_sets_small() {
        let k2 = kostant_sets(2, 5).unwrap();
        let mut got: Vec<_> = k2.pairs.clone();
        got.sort();
        let expected = vec![
            (WeylElt::identity(2), RootSubset::default()),
            (WeylElt::simple(2, 1), RootSubset([(1, 2)].into_iter().collect())),
        ];
        assert_eq!(got, expected);
        let k3 = kostant_sets(3, 5).unwrap();
        assert_eq!(k3.pairs.len(), 6);
        assert!(k3.orbit_condition_holds && k3.bijection_holds);
        assert!(k3.pairs.iter().any(|(el, x)| x.is_empty() && *el == WeylElt::identity(3)));
        assert!(kostant_sets(6, 5).is_err());
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(coxeter_number(2).unwrap(), 2);
        assert_eq!(coxeter_number(3).unwrap(), 3);
        assert_eq!(coxeter_number(5).unwrap(), 5);
    }

    #[test]
    fn regular_weights_have_unique_dominant_conjugate() {
        for n in 2..=5 {
            let group = weyl_group(n);
            for coords in (0..n).map(|_| -2..=2i64).multi_cartesian_product() {
                let lambda = Weight::new(coords);
                let hits = group.iter().filter(|el| dot_action(el, &lambda).unwrap().is_dominant()).count();
                match dominant_conjugate(&lambda) {
                    DominantConjugate::Singular => {
                        // a wall weight is fixed by a reflection, so hits come in pairs or not at all
                        assert!(hits != 1, "{lambda}");
                    }
                    DominantConjugate::Regular { w: el, mu } => {
                        assert!(mu.is_dominant());
                        assert_eq!(dot_action(&el, &lambda).unwrap(), mu);
                        assert_eq!(hits, 1, "{lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn subset_weights_are_small() {
        for n in 2..=5 {
            let h = coxeter_number(n).unwrap() as i64;
            let roots = positive_roots(n);
            let rho = Weight::rho(n);
            for mask in 0u64..(1 << roots.len()) {
                let x = RootSubset(roots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect());
                let shifted = &x.lambda(n) + &rho;
                for &(r, s) in &roots {
                    assert!(shifted.coroot_pairing(r, s).abs() <= h - 1);
                }
            }
        }
    }

    #[test]
    fn kostant_sets_have_factorial_size() {
        for n in 2..=5 {
            let k = kostant_sets(n, 5).unwrap();
            assert_eq!(k.pairs.len(), (1..=n).product::<usize>());
            assert!(k.orbit_condition_holds && k.bijection_holds);
        }
    }

    #[test]
    fn weight_text_round_trip() {
        let lambda: Weight = "-2,1,1".parse().unwrap();
        assert_eq!(lambda, w(&[-2, 1, 1]));
        assert_eq!(lambda.to_string(), "-2,1,1");
        assert!("1,x".parse::<Weight>().is_err());
    }

    fn perm(n: usize) -> impl Strategy<Value = WeylElt> {
        Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(WeylElt::from_images)
    }

    proptest! {
        #[test]
        fn dot_action_is_a_group_action(
            (a, b, lambda) in (2usize..=5).prop_flat_map(|n| (perm(n), perm(n), prop::collection::vec(-6i64..6, n)))
        ) {
            let lambda = Weight::new(lambda);
            let lhs = dot_action(&a.compose(&b), &lambda).unwrap();
            let rhs = dot_action(&a, &dot_action(&b, &lambda).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn dot_action_ignores_shifts_of_rho(
            (a, lambda, c) in (2usize..=5).prop_flat_map(|n| (perm(n), prop::collection::vec(-6i64..6, n), -4i64..4))
        ) {
            // ρ + c(1,…,1) pairs the same way with every coroot
            let lambda = Weight::new(lambda);
            let n = lambda.rank();
            let rho2 = &Weight::rho(n) + &Weight::new(vec![c; n]);
            let shifted = &a.act(&(&lambda + &rho2)) - &rho2;
            prop_assert_eq!(shifted, dot_action(&a, &lambda).unwrap());
        }

        #[test]
        fn length_is_inversion_count(a in (2usize..=6).prop_flat_map(perm)) {
            let n = a.rank();
            let count = (0..n).tuple_combinations().filter(|&(i, j)| a.images()[i] > a.images()[j]).count();
            prop_assert_eq!(a.length(), count);
            prop_assert_eq!(a.inverse().length(), count);
        }
    }
}
