//! Named, seeded verification suites. Each returns a [`SuiteReport`] that
//! counts the checks made and lists a witness for every failure.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::cohomology::{bwb, step_lemma_table, wedge_weight_vanishing, CohomologyAnswer};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::invariants::{weyl_action, GroupAlgebraElement, Twist};
use crate::koszul::{differential_square_failures, equivariance_check};
use crate::qalgebra::{words_with_counts, Alphabet, NCPoly, QAlgebra};
use crate::qmatrix::{
    normal_form_with, pbw_count_crosscheck, rewrite_once, termination_measure, verify_relations, RewriteOrder, XiKind,
    XiPoly, XiWord,
};
use crate::scalars::Mode;
use crate::weights::{dot_action, kostant_sets, Weight, WeylElt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Relations,
    Pairing,
    Equivariance,
    Pbw,
    Kostant,
    Bwb,
    Properties,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Relations, Suite::Pairing, Suite::Equivariance, Suite::Pbw, Suite::Kostant, Suite::Bwb, Suite::Properties];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Pairing => "pairing",
            Suite::Equivariance => "equivariance",
            Suite::Pbw => "pbw",
            Suite::Kostant => "kostant",
            Suite::Bwb => "bwb",
            Suite::Properties => "properties",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub zeta_order: Option<u32>,
    pub seed: u64,
    pub passed: bool,
    pub checks: usize,
    pub witnesses: Vec<String>,
}

/// Collects check outcomes for one run.
struct Tally {
    checks: usize,
    witnesses: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, witnesses: Vec::new() }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.witnesses.push(witness());
        }
    }

    fn finish(self, suite: Suite, cfg: &RunConfig) -> SuiteReport {
        SuiteReport {
            suite,
            n: cfg.n,
            zeta_order: cfg.zeta_order,
            seed: cfg.seed,
            passed: self.witnesses.is_empty(),
            checks: self.checks,
            witnesses: self.witnesses,
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<SuiteReport> {
    let mode = cfg.validate()?;
    let mut t = Tally::new();
    match suite {
        Suite::Relations => relations(&mode, cfg, &mut t)?,
        Suite::Pairing => pairing(&mode, cfg, &mut t)?,
        Suite::Equivariance => equivariance(&mode, cfg, &mut t)?,
        Suite::Pbw => pbw(&mode, cfg, &mut t)?,
        Suite::Kostant => kostant(&mode, cfg, &mut t)?,
        Suite::Bwb => bwb_tables(&mode, cfg, &mut t)?,
        Suite::Properties => properties(&mode, cfg, &mut t)?,
    }
    Ok(t.finish(suite, cfg))
}

fn relations(mode: &Mode, cfg: &RunConfig, t: &mut Tally) -> Result<()> {
    let report = verify_relations(mode, cfg.n)?;
    for fam in report.families.iter().chain([&report.row_one]) {
        t.checks += fam.instances;
        t.witnesses.extend(fam.violations.iter().map(|(rel, w)| format!("{}: {rel} on {w}", fam.family)));
    }
    Ok(())
}

/// Weights `β ∈ Q^+` with `0 < |β| ≤ max`.
fn positive_degrees(n: usize, max: usize) -> Vec<Weight> {
    (0..n - 1)
        .map(|_| 0..=max as i64)
        .multi_cartesian_product()
        .filter(|m| (1..=max as i64).contains(&m.iter().sum()))
        .map(|m| Weight::from_simple_coords(&m))
        .collect()
}

/// Runs `f` unless `β` needs a vanishing quantum integer in this mode.
fn skip_vanishing<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::VanishingQuantumInteger(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn random_f_poly(rng: &mut StdRng, mode: &Mode, n: usize, counts: &[usize]) -> NCPoly {
    let mut terms = Vec::new();
    for w in words_with_counts(counts) {
        if rng.gen_bool(0.6) {
            terms.push((w, mode.laurent(&[(rng.gen_range(-2..=2), rng.gen_range(1..=3))])));
        }
    }
    NCPoly::from_terms(mode, n, Alphabet::F, terms)
}

fn random_counts(rng: &mut StdRng, n: usize, total: usize) -> Vec<usize> {
    let mut c = vec![0; n - 1];
    for _ in 0..total {
        c[rng.gen_range(0..n - 1)] += 1;
    }
    c
}

/// Full-rank Gram matrices (generic mode only) for `|β| ≤ min(degree, 5)`
/// and `F(y y') = F(y') F(y)` on 200 random homogeneous pairs.
fn pairing(mode: &Mode, cfg: &RunConfig, t: &mut Tally) -> Result<()> {
    let n = cfg.n;
    let alg = QAlgebra::new(mode, n, cfg.bounds.degree)?;
    if mode.is_generic() {
        for beta in positive_degrees(n, cfg.bounds.degree.min(5)) {
            let dim = alg.graded_basis(&beta, Alphabet::E)?.dim();
            let rank = alg.pairing_gram_rank(&beta)?;
            t.check(rank == dim, || format!("Gram matrix in degree {beta} has rank {rank} < {dim}"));
        }
    }
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let max = cfg.bounds.degree.min(4);
    let mut done = 0;
    while done < 200 {
        let a = rng.gen_range(1..max);
        let b = rng.gen_range(1..=max - a);
        let (c1, c2) = (random_counts(&mut rng, n, a), random_counts(&mut rng, n, b));
        let y = random_f_poly(&mut rng, mode, n, &c1);
        let y2 = random_f_poly(&mut rng, mode, n, &c2);
        if y.is_zero() || y2.is_zero() {
            continue;
        }
        let Some(lhs) = skip_vanishing(alg.dual_map_f(&y.mul(&y2)))? else { continue };
        let rhs = alg.dual_product(&alg.dual_map_f(&y2)?, &alg.dual_map_f(&y)?)?;
        done += 1;
        t.check(lhs == rhs, || format!("F(yy') ≠ F(y')F(y) for y = {y}, y' = {y2}"));
    }
    Ok(())
}

/// `∂² = 0` and `g ∂ = ∂ g`, `g ε = ε g` on every strand `1 ≤ d ≤ degree`.
fn equivariance(mode: &Mode, cfg: &RunConfig, t: &mut Tally) -> Result<()> {
    for d in 1..=cfg.bounds.degree {
        let sq = differential_square_failures(mode, cfg.n, d)?;
        t.checks += cfg.n;
        t.witnesses.extend(sq.iter().map(|&p| match p {
            0 => format!("ε ∂_0 ≠ 0 in degree {d}"),
            p => format!("∂_{} ∂_{p} ≠ 0 in degree {d}", p - 1),
        }));
        let r = equivariance_check(mode, cfg.n, d)?;
        t.checks += r.checks;
        t.witnesses.extend(r.failures.iter().map(|(g, m)| format!("{g} does not commute with {m} in degree {d}")));
    }
    Ok(())
}

fn pbw(mode: &Mode, cfg: &RunConfig, t: &mut Tally) -> Result<()> {
    let alg = QAlgebra::new(mode, cfg.n, cfg.bounds.degree)?;
    for beta in positive_degrees(cfg.n, cfg.bounds.degree) {
        if let Some(c) = skip_vanishing(pbw_count_crosscheck(&alg, &beta))? {
            t.check(c.agrees(), || {
                format!("β = {}: {} ordered monomials, dim {}, Kostant {}", c.beta, c.ordered_monomials, c.dim, c.kostant)
            });
        }
    }
    Ok(())
}

fn kostant(mode: &Mode, cfg: &RunConfig, t: &mut Tally) -> Result<()> {
    let n = cfg.n;
    let ks = kostant_sets(n, cfg.bounds.enumeration)?;
    let fact: usize = (1..=n).product();
    t.check(ks.pairs.len() == fact, || format!("{} subsets, expected {fact}", ks.pairs.len()));
    t.check(ks.orbit_condition_holds, || "an orbit meets the dominant chamber away from 0".into());
    t.check(ks.bijection_holds, || "subsets are not the inversion sets of W".into());
    for (w, x) in &ks.pairs {
        let lambda = x.lambda(n);
        let Some(ans) = skip_range(bwb(&lambda, mode))? else { continue };
        let expected = CohomologyAnswer::Nonzero { i: w.length(), mu: Weight::zero(n), dim: 1 };
        t.check(ans == expected, || format!("λ_X = {lambda} for X = {x}: {ans:?}, expected degree {}", w.length()));
    }
    Ok(())
}

fn skip_range<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::OutOfValidatedRange { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn bwb_tables(mode: &Mode, cfg: &RunConfig, t: &mut Tally) -> Result<()> {
    let n = cfg.n;
    for a in 0..n {
        let table = step_lemma_table(mode, n, a)?;
        t.check(table.matches_expected(), || {
            format!("a = {a}: survivors {:?}", table.survivors().iter().map(|r| &r.j).collect_vec())
        });
        for k in 0..a {
            let r = wedge_weight_vanishing(mode, n, a, k)?;
            t.check(r.all_vanish(), || format!("a = {a}, k = {k}: nonvanishing {:?}", r.nonvanishing));
        }
    }
    Ok(())
}

const SAMPLES: usize = 32;

fn random_xi_word(rng: &mut StdRng, n: usize, kind: XiKind) -> XiWord {
    (0..rng.gen_range(0..=7))
        .map(|_| match kind {
            XiKind::Full => (rng.gen_range(1..=n), rng.gen_range(1..=n)),
            XiKind::Tilde => {
                let r = rng.gen_range(1..n);
                (r, rng.gen_range(r + 1..=n))
            }
        })
        .collect()
}

fn random_weyl(rng: &mut StdRng, n: usize) -> WeylElt {
    let mut images = (0..n).collect_vec();
    images.shuffle(rng);
    WeylElt::from_images(images)
}

fn random_weight(rng: &mut StdRng, n: usize, radius: i64) -> Weight {
    Weight::new((0..n).map(|_| rng.gen_range(-radius..=radius)).collect())
}

fn random_group_element(rng: &mut StdRng, mode: &Mode, n: usize) -> GroupAlgebraElement {
    let terms = (0..rng.gen_range(1..=3)).map(|_| (random_weight(rng, n, 2), mode.random(rng))).collect_vec();
    GroupAlgebraElement::from_terms(mode, n, terms)
}

/// Rewriting confluence and termination, the dot and twisted group-action
/// laws, field axioms and the specialization homomorphism, all drawn from
/// the configured seed.
fn properties(mode: &Mode, cfg: &RunConfig, t: &mut Tally) -> Result<()> {
    let n = cfg.n;
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    for kind in [XiKind::Full, XiKind::Tilde] {
        for _ in 0..SAMPLES {
            let w = random_xi_word(&mut rng, n, kind);
            let p = XiPoly::word(mode, kind, &w);
            let (l, r) = (normal_form_with(&p, RewriteOrder::Leftmost), normal_form_with(&p, RewriteOrder::Rightmost));
            t.check(l == r, || format!("normal forms of {p} differ: {l} vs {r}"));
            for strategy in [RewriteOrder::Leftmost, RewriteOrder::Rightmost] {
                for (_, v) in rewrite_once(mode, kind, &w, strategy).unwrap_or_default() {
                    t.check(termination_measure(kind, &v) < termination_measure(kind, &w), || {
                        format!("rewriting {w:?} to {v:?} does not decrease the measure")
                    });
                }
            }
        }
    }
    let id = WeylElt::identity(n);
    for _ in 0..SAMPLES {
        let (u, v) = (random_weyl(&mut rng, n), random_weyl(&mut rng, n));
        let lambda = random_weight(&mut rng, n, 4);
        let uv = u.compose(&v);
        t.check(dot_action(&uv, &lambda)? == dot_action(&u, &dot_action(&v, &lambda)?)?, || {
            format!("dot action: ({u})({v}) on {lambda}")
        });
        t.check(dot_action(&id, &lambda)? == lambda, || format!("dot action: identity moves {lambda}"));
        let (f, g) = (random_group_element(&mut rng, mode, n), random_group_element(&mut rng, mode, n));
        for twist in [Twist::Twisted, Twist::Untwisted] {
            let act = |w: &WeylElt, x: &GroupAlgebraElement| weyl_action(w, x, twist);
            t.check(act(&uv, &f)? == act(&u, &act(&v, &f)?)?, || format!("{twist:?} action: ({u})({v}) on {f}"));
            t.check(act(&id, &f)? == f, || format!("{twist:?} action: identity moves {f}"));
            t.check(act(&u, &f.mul(&g))? == act(&u, &f)?.mul(&act(&u, &g)?), || {
                format!("{twist:?} action of {u} is not multiplicative on {f}, {g}")
            });
        }
    }
    for _ in 0..SAMPLES {
        let (a, b, c) = (mode.random(&mut rng), mode.random(&mut rng), mode.random(&mut rng));
        let ok = (&(&a + &b) + &c) == (&a + &(&b + &c))
            && (&(&a * &b) * &c) == (&a * &(&b * &c))
            && (&a * &(&b + &c)) == (&(&a * &b) + &(&a * &c))
            && (&a * &b) == (&b * &a)
            && (&a - &a).is_zero()
            && a.inv().map_or(a.is_zero(), |i| (&a * &i).is_one());
        t.check(ok, || format!("field axioms fail on {a}, {b}, {c}"));
    }
    let target = match mode {
        Mode::Generic => Mode::root_of_unity(2 * n as u32 + 1)?,
        m => m.clone(),
    };
    let g = Mode::Generic;
    for _ in 0..SAMPLES {
        let (a, b) = (g.random(&mut rng), g.random(&mut rng));
        let (Some(sa), Some(sb), Some(sab), Some(sapb)) =
            (a.specialize(&target), b.specialize(&target), (&a * &b).specialize(&target), (&a + &b).specialize(&target))
        else {
            continue;
        };
        t.check(sab == &sa * &sb && sapb == &sa + &sb, || format!("specialization fails on {a}, {b}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("nope".parse::<Suite>(), Err(Error::UnknownSuite("nope".into())));
    }

    #[test]
    fn small_suites_pass() {
        let mut cfg = RunConfig::new(3);
        cfg.bounds.degree = 3;
        for s in Suite::ALL {
            let r = run_suite(s, &cfg).unwrap();
            assert!(r.passed, "{r:?}");
            assert!(r.checks > 0, "{s}");
        }
        let cfg = RunConfig::new(3).with_zeta_order(7);
        for s in [Suite::Relations, Suite::Kostant, Suite::Bwb, Suite::Properties] {
            assert!(run_suite(s, &cfg).unwrap().passed, "{s}");
        }
    }

    #[test]
    fn preconditions_surface() {
        let cfg = RunConfig::new(4).with_zeta_order(6);
        assert_eq!(run_suite(Suite::Pbw, &cfg).unwrap_err(), Error::EllBelowRank { ell: 3, n: 4 });
    }

    #[test]
    fn reports_are_deterministic() {
        let mut cfg = RunConfig::new(2);
        cfg.seed = 3;
        assert_eq!(run_suite(Suite::Properties, &cfg).unwrap(), run_suite(Suite::Properties, &cfg).unwrap());
    }
}
