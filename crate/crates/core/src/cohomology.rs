//! The Borel–Weil–Bott rule for induced lines, the Weyl dimension formula,
//! and the weight tables built from them.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::config::check_ell;
use crate::error::{Error, Result};
use crate::scalars::Mode;
use crate::weights::{dominant_conjugate, positive_roots, DominantConjugate, Weight};

/// `R Ind(K_λ)`: zero, or a single Weyl-module dual in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CohomologyAnswer {
    Vanishes,
    #[serde(untagged)]
    Nonzero { i: usize, mu: Weight, dim: u128 },
}

impl CohomologyAnswer {
    pub fn is_zero(&self) -> bool {
        matches!(self, CohomologyAnswer::Vanishes)
    }
}

/// Largest `|<λ + ρ, α^∨>|` over the roots.
fn max_pairing(shifted: &Weight) -> i64 {
    let c = shifted.coords();
    c.iter().max().unwrap_or(&0) - c.iter().min().unwrap_or(&0)
}

/// Borel–Weil–Bott. At a root of unity the rule is only applied when
/// `|<λ + ρ, α^∨>| ≤ ℓ` for every root; the boundary is included.
pub fn bwb(lambda: &Weight, mode: &Mode) -> Result<CohomologyAnswer> {
    if let Some(ell) = mode.ell() {
        let pairing = max_pairing(&(lambda + &Weight::rho(lambda.rank())));
        if pairing > ell as i64 {
            return Err(Error::OutOfValidatedRange { weight: lambda.to_string(), pairing, ell });
        }
    }
    Ok(match dominant_conjugate(lambda) {
        DominantConjugate::Singular => CohomologyAnswer::Vanishes,
        DominantConjugate::Regular { w, mu } => {
            let dim = weyl_dimension(&mu)?;
            CohomologyAnswer::Nonzero { i: w.length(), mu, dim }
        }
    })
}

/// `∏_{α > 0} <μ + ρ, α^∨> / <ρ, α^∨>`.
pub fn weyl_dimension(mu: &Weight) -> Result<u128> {
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.to_string()));
    }
    let n = mu.rank();
    let shifted = mu + &Weight::rho(n);
    let (mut num, mut den) = (BigUint::from(1u32), BigUint::from(1u32));
    for (r, s) in positive_roots(n) {
        num *= shifted.coroot_pairing(r, s) as u64;
        den *= (s - r) as u64;
    }
    (num / den).to_u128().ok_or(Error::BoundExceeded { what: "Weyl dimension bits", value: 128, bound: 128 })
}

/// `-(α_{1 j_1} + ⋯ + α_{1 j_k}) - c ε_1`.
fn first_row_weight(n: usize, c: i64, j: &[usize]) -> Weight {
    let mut coords = vec![0; n];
    coords[0] = -c;
    j.iter().fold(Weight::new(coords), |acc, &s| &acc - &Weight::root(n, 1, s))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRow {
    pub j: Vec<usize>,
    pub result: CohomologyAnswer,
}

/// `bwb(-(α_{1 j_1} + ⋯ + α_{1 j_a}))` over `2 ≤ j_1 < ⋯ < j_a ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepTable {
    pub n: usize,
    pub a: usize,
    pub tuples: Vec<StepRow>,
}

impl StepTable {
    pub fn survivors(&self) -> Vec<&StepRow> {
        self.tuples.iter().filter(|r| !r.result.is_zero()).collect()
    }

    /// Only `(2, …, a+1)` survives, in degree `a` with the trivial module.
    pub fn matches_expected(&self) -> bool {
        let expected: Vec<usize> = (2..=self.a + 1).collect();
        let s = self.survivors();
        s.len() == 1
            && s[0].j == expected
            && s[0].result == CohomologyAnswer::Nonzero { i: self.a, mu: Weight::zero(self.n), dim: 1 }
    }
}

pub fn step_lemma_table(mode: &Mode, n: usize, a: usize) -> Result<StepTable> {
    if n < 2 || a >= n {
        return Err(Error::InvalidInput(format!("step table needs 0 ≤ a < n, got n = {n}, a = {a}")));
    }
    check_ell(mode, n)?;
    let tuples = (2..=n)
        .combinations(a)
        .map(|j| {
            let result = bwb(&first_row_weight(n, 0, &j), mode)?;
            Ok(StepRow { j, result })
        })
        .collect::<Result<_>>()?;
    Ok(StepTable { n, a, tuples })
}

/// `bwb(-(a-k) ε_1 - α_{1 j_1} - ⋯ - α_{1 j_k})` over all `j`, which
/// should vanish for every tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgeReport {
    pub n: usize,
    pub a: usize,
    pub k: usize,
    pub tuples: usize,
    pub nonvanishing: Vec<Vec<usize>>,
}

impl WedgeReport {
    pub fn all_vanish(&self) -> bool {
        self.nonvanishing.is_empty()
    }
}

pub fn wedge_weight_vanishing(mode: &Mode, n: usize, a: usize, k: usize) -> Result<WedgeReport> {
    if !(k < a && a < n) {
        return Err(Error::InvalidInput(format!("need 0 ≤ k < a < n, got k = {k}, a = {a}, n = {n}")));
    }
    check_ell(mode, n)?;
    let mut tuples = 0;
    let mut nonvanishing = Vec::new();
    for j in (2..=n).combinations(k) {
        tuples += 1;
        if !bwb(&first_row_weight(n, (a - k) as i64, &j), mode)?.is_zero() {
            nonvanishing.push(j);
        }
    }
    Ok(WedgeReport { n, a, k, tuples, nonvanishing })
}
