//! The matrix-coefficient generators `ξ_{rs}` of the quantized coordinate
//! algebra, their restrictions `ξ̃_{rs}` (`r < s`) to `U(n^+)`, and rewriting
//! to ordered monomials.
//!
//! For `ξ` the order is lexicographic on `(r, s)`. For `ξ̃` rows come in
//! decreasing order and columns increase within a row:
//! `ξ̃_{n-1,n} (ξ̃_{n-2,n-1} ξ̃_{n-2,n}) ⋯ (ξ̃_{12} ⋯ ξ̃_{1n})`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::linmap::{Echelon, SparseVec};
use crate::qalgebra::{kostant_partition_count, Alphabet, Functional, QAlgebra};
use crate::scalars::{Mode, Scalar};
use crate::syntax::{format_sum, parse_expr, Atom};
use crate::umod::{act_on_basis, act_word, Generator, TensorVec};
use crate::weights::{positive_roots, Weight};

pub type XiWord = Vec<(usize, usize)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum XiKind {
    /// `ξ_{rs}`, `1 ≤ r, s ≤ n`.
    Full,
    /// `ξ̃_{rs}`, `r < s`.
    Tilde,
}

/// Which descending pair to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteOrder {
    Leftmost,
    Rightmost,
}

/// Linear combination of `ξ`- or `ξ̃`-words.
#[derive(Clone, Debug, PartialEq)]
pub struct XiPoly {
    kind: XiKind,
    mode: Mode,
    terms: BTreeMap<XiWord, Scalar>,
}

impl XiPoly {
    pub fn zero(mode: &Mode, kind: XiKind) -> Self {
        XiPoly { kind, mode: mode.clone(), terms: BTreeMap::new() }
    }

    pub fn word(mode: &Mode, kind: XiKind, w: &[(usize, usize)]) -> Self {
        Self::from_terms(mode, kind, [(w.to_vec(), mode.one())])
    }

    pub fn from_terms(mode: &Mode, kind: XiKind, terms: impl IntoIterator<Item = (XiWord, Scalar)>) -> Self {
        let mut p = Self::zero(mode, kind);
        for (w, c) in terms {
            if kind == XiKind::Tilde {
                assert!(w.iter().all(|&(r, s)| r < s), "ξ̃ needs r < s: {w:?}");
            }
            p.add_term(w, c);
        }
        p
    }

    /// Parses `"x[2,2] x[1,1] + q x[1,2]"` or `"xt[1,2] xt[2,3]"`, checking
    /// indices against `n`.
    pub fn parse(src: &str, mode: &Mode, n: usize) -> Result<Self> {
        let expr = parse_expr(src, mode)?;
        let mut kind = None;
        let mut terms = Vec::new();
        for (c, atoms) in expr {
            let mut w = XiWord::new();
            for a in atoms {
                let (k, r, s) = match a {
                    Atom::Xi(r, s) => (XiKind::Full, r, s),
                    Atom::TildeXi(r, s) => (XiKind::Tilde, r, s),
                    other => return Err(Error::InvalidInput(format!("unexpected factor {other:?}"))),
                };
                if *kind.get_or_insert(k) != k {
                    return Err(Error::InvalidInput("cannot mix x[..] and xt[..]".into()));
                }
                if r > n || s > n {
                    return Err(Error::InvalidInput(format!("index ({r},{s}) exceeds n = {n}")));
                }
                if k == XiKind::Tilde && r >= s {
                    return Err(Error::InvalidInput(format!("xt[{r},{s}] needs r < s")));
                }
                w.push((r, s));
            }
            terms.push((w, c));
        }
        Ok(Self::from_terms(mode, kind.unwrap_or(XiKind::Full), terms))
    }

    fn add_term(&mut self, w: XiWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        if let Some(e) = self.terms.get_mut(&w) {
            *e += &c;
            if e.is_zero() {
                self.terms.remove(&w);
            }
        } else {
            self.terms.insert(w, c);
        }
    }

    pub fn kind(&self) -> XiKind {
        self.kind
    }

    pub fn terms(&self) -> &BTreeMap<XiWord, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &XiPoly) -> XiPoly {
        assert_eq!(self.kind, other.kind);
        let mut p = self.clone();
        for (w, c) in &other.terms {
            p.add_term(w.clone(), -c);
        }
        p
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|w| find_descent(self.kind, w, RewriteOrder::Leftmost).is_none())
    }
}

impl fmt::Display for XiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            XiKind::Full => "x",
            XiKind::Tilde => "xt",
        };
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(w, _)| (std::cmp::Reverse(w.len()), w.iter().map(|&l| order_key(self.kind, l)).collect_vec()));
        let terms = terms.into_iter().map(|(w, c)| (w.iter().map(|(r, s)| format!("{name}[{r},{s}]")).join(" "), c));
        write!(f, "{}", format_sum(terms))
    }
}

fn order_key(kind: XiKind, (r, s): (usize, usize)) -> (i64, i64) {
    match kind {
        XiKind::Full => (r as i64, s as i64),
        XiKind::Tilde => (-(r as i64), s as i64),
    }
}

fn find_descent(kind: XiKind, w: &[(usize, usize)], strategy: RewriteOrder) -> Option<usize> {
    let desc = |i: &usize| order_key(kind, w[*i]) > order_key(kind, w[*i + 1]);
    let n = w.len().saturating_sub(1);
    match strategy {
        RewriteOrder::Leftmost => (0..n).find(desc),
        RewriteOrder::Rightmost => (0..n).rev().find(desc),
    }
}

/// Replacement for a descending adjacent pair `a b`, as `(coefficient,
/// replacement letters)`; `None` if the pair is already ordered.
pub fn rewrite_pair(mode: &Mode, kind: XiKind, a: (usize, usize), b: (usize, usize)) -> Option<Vec<(Scalar, XiWord)>> {
    if order_key(kind, a) <= order_key(kind, b) {
        return None;
    }
    let c = mode.q_minus_qinv();
    let swap = vec![b, a];
    let out = match kind {
        XiKind::Full => {
            let ((r1, s1), (r2, s2)) = (a, b);
            if r1 == r2 || s1 == s2 {
                vec![(mode.q_pow(-1), swap)]
            } else if s1 < s2 {
                vec![(mode.one(), swap)]
            } else {
                vec![(mode.one(), swap), (-c, vec![(r1, s2), (r2, s1)])]
            }
        }
        XiKind::Tilde => {
            let ((r, s), (r2, s2)) = (a, b);
            if r == r2 {
                vec![(mode.q_pow(-1), swap)]
            } else if s == s2 {
                vec![(mode.q(), swap)]
            } else if s2 < s || s < r2 {
                vec![(mode.one(), swap)]
            } else if s == r2 {
                vec![(mode.q_pow(-1), swap), (c, vec![(r, s2)])]
            } else {
                vec![(mode.one(), swap), (c, vec![(r2, s), (r, s2)])]
            }
        }
    };
    Some(out)
}

/// Quantity that strictly decreases (lexicographically) along every
/// rewrite: `(length, Σ r·s, inversions)`. For `ξ` the length never changes.
pub fn termination_measure(kind: XiKind, w: &[(usize, usize)]) -> (usize, usize, usize) {
    let weight = w.iter().map(|(r, s)| r * s).sum();
    let inv = (0..w.len())
        .tuple_combinations()
        .filter(|&(i, j)| order_key(kind, w[i]) > order_key(kind, w[j]))
        .count();
    (w.len(), weight, inv)
}

/// One rewrite of `w` at the pair chosen by `strategy`; `None` if normal.
pub fn rewrite_once(mode: &Mode, kind: XiKind, w: &[(usize, usize)], strategy: RewriteOrder) -> Option<Vec<(Scalar, XiWord)>> {
    let i = find_descent(kind, w, strategy)?;
    let rep = rewrite_pair(mode, kind, w[i], w[i + 1]).expect("descent found");
    Some(
        rep.into_iter()
            .map(|(c, mid)| (c, w[..i].iter().chain(&mid).chain(&w[i + 2..]).copied().collect()))
            .collect(),
    )
}

pub fn normal_form_with(p: &XiPoly, strategy: RewriteOrder) -> XiPoly {
    let mut done = XiPoly::zero(&p.mode, p.kind);
    let mut todo = p.terms.clone();
    // largest words first so that contributions to a word merge before it is expanded
    while let Some((w, c)) = todo.pop_last() {
        match rewrite_once(&p.mode, p.kind, &w, strategy) {
            None => done.add_term(w, c),
            Some(rep) => {
                for (d, v) in rep {
                    let x = &c * &d;
                    match todo.get_mut(&v) {
                        Some(e) => {
                            *e += &x;
                            if e.is_zero() {
                                todo.remove(&v);
                            }
                        }
                        None => {
                            todo.insert(v, x);
                        }
                    }
                }
            }
        }
    }
    done
}

/// Ordered-monomial normal form (leftmost descending pair first).
pub fn normal_form(p: &XiPoly) -> XiPoly {
    normal_form_with(p, RewriteOrder::Leftmost)
}

pub fn xi_normal_form(p: &XiPoly) -> Result<XiPoly> {
    if p.kind != XiKind::Full {
        return Err(Error::InvalidInput("expected x[..] monomials".into()));
    }
    Ok(normal_form(p))
}

pub fn tilde_normal_form(p: &XiPoly) -> Result<XiPoly> {
    if p.kind != XiKind::Tilde {
        return Err(Error::InvalidInput("expected xt[..] monomials".into()));
    }
    Ok(normal_form(p))
}

/// `(Σ ε_{r_i}, Σ ε_{s_i})`.
pub fn bi_weight(n: usize, w: &[(usize, usize)]) -> (Weight, Weight) {
    let mut a = vec![0; n];
    let mut b = vec![0; n];
    for &(r, s) in w {
        a[r - 1] += 1;
        b[s - 1] += 1;
    }
    (Weight::new(a), Weight::new(b))
}

/// Ordered `ξ̃` monomials of weight `β` against the graded dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PbwCount {
    pub beta: Weight,
    /// Ordered monomials of weight `β`, enumerated as ordered words.
    pub ordered_monomials: u64,
    /// Dimension of the Serre quotient in degree `β`.
    pub dim: u64,
    /// Kostant partition count of `β`.
    pub kostant: u64,
}

impl PbwCount {
    pub fn agrees(&self) -> bool {
        self.ordered_monomials == self.dim && self.dim == self.kostant
    }
}

/// Enumerates the ordered `ξ̃` words of weight `β` and compares with the
/// Serre-quotient dimension.
pub fn pbw_count_crosscheck(alg: &QAlgebra, beta: &Weight) -> Result<PbwCount> {
    let piece = alg.graded_basis(beta, Alphabet::E)?;
    let n = alg.rank();
    let mut letters = positive_roots(n);
    letters.sort_by_key(|&l| order_key(XiKind::Tilde, l));
    let target = beta.positive_root_coords().expect("checked by graded_basis");
    // ordered words are non-decreasing sequences of letters
    fn go(letters: &[(usize, usize)], from: usize, rest: &mut [i64]) -> u64 {
        if rest.iter().all(|&c| c == 0) {
            return 1;
        }
        let mut total = 0;
        for (k, &(r, s)) in letters.iter().enumerate().skip(from) {
            if (r..s).all(|i| rest[i - 1] > 0) {
                (r..s).for_each(|i| rest[i - 1] -= 1);
                total += go(letters, k, rest);
                (r..s).for_each(|i| rest[i - 1] += 1);
            }
        }
        total
    }
    let count = go(&letters, 0, &mut target.clone());
    Ok(PbwCount {
        beta: beta.clone(),
        ordered_monomials: count,
        dim: piece.dim() as u64,
        kostant: kostant_partition_count(beta)?,
    })
}

/// `<ξ_{r_1 s_1} ⋯ ξ_{r_k s_k}, u> = <v*_{r_1} ⊗ ⋯ ⊗ v*_{r_k}, u · (v_{s_1} ⊗ ⋯ ⊗ v_{s_k})>`.
pub fn evaluate_on_tensor(mode: &Mode, word: &[(usize, usize)], u: &[Generator], bounds: &Bounds) -> Result<Scalar> {
    if word.len() > bounds.tensor_length {
        return Err(Error::BoundExceeded { what: "word length", value: word.len(), bound: bounds.tensor_length });
    }
    let (rows, cols): (Vec<usize>, Vec<usize>) = word.iter().copied().unzip();
    let v = TensorVec::from([(cols, mode.one())]);
    Ok(act_word(mode, u, &v).remove(&rows).unwrap_or_else(|| mode.zero()))
}

/// Evaluates a linear combination of `ξ`-words on `u`.
pub fn evaluate_poly(p: &XiPoly, u: &[Generator], bounds: &Bounds) -> Result<Scalar> {
    let mut total = p.mode.zero();
    for (w, c) in &p.terms {
        total += &(c * &evaluate_on_tensor(&p.mode, w, u, bounds)?);
    }
    Ok(total)
}

/// `ξ̃_{rs}` as a functional on `U(n^+)_{ε_r - ε_s}`: `x ↦ <v*_r, x v_s>`.
fn tilde_letter(alg: &QAlgebra, (r, s): (usize, usize)) -> Result<Functional> {
    let mode = alg.mode().clone();
    let beta = Weight::root(alg.rank(), r, s);
    alg.functional(&beta, |w| {
        let u: Vec<Generator> = w.iter().map(|&i| Generator::E(i)).collect();
        let v = TensorVec::from([(vec![s], mode.one())]);
        act_word(&mode, &u, &v).remove(&vec![r]).unwrap_or_else(|| mode.zero())
    })
}

/// A `ξ̃`-word as an element of the graded dual of `U(n^+)`, multiplying
/// letters with the dual product.
pub fn tilde_functional(alg: &QAlgebra, w: &[(usize, usize)]) -> Result<Functional> {
    let Some((&first, rest)) = w.split_first() else {
        return Err(Error::InvalidInput("empty ξ̃-word".into()));
    };
    let mut f = tilde_letter(alg, first)?;
    for &l in rest {
        f = alg.dual_product(&f, &tilde_letter(alg, l)?)?;
    }
    Ok(f)
}

/// Values on the degree-`β` basis of a homogeneous `ξ̃`-polynomial.
pub fn tilde_values(alg: &QAlgebra, p: &XiPoly, beta: &Weight) -> Result<Vec<Scalar>> {
    let dim = alg.graded_basis(beta, Alphabet::E)?.dim();
    let mut out = vec![alg.mode().zero(); dim];
    for (w, c) in &p.terms {
        let f = tilde_functional(alg, w)?;
        if f.degree() != beta {
            return Err(Error::Inhomogeneous);
        }
        for (o, x) in out.iter_mut().zip(f.values()) {
            *o += &(c * x);
        }
    }
    Ok(out)
}

/// A relation `lhs = 0` of one family.
#[derive(Clone, Debug)]
pub struct Relation {
    pub family: &'static str,
    pub poly: XiPoly,
}

/// The relations between `ξ`s: same row, same column, anti-diagonal and
/// diagonal pairs, as `lhs - rhs`.
pub fn xi_relations(mode: &Mode, n: usize) -> Vec<Relation> {
    let w = |l: &[(usize, usize)]| XiPoly::word(mode, XiKind::Full, l);
    let scaled = |c: Scalar, l: &[(usize, usize)]| XiPoly::from_terms(mode, XiKind::Full, [(l.to_vec(), c)]);
    let c = mode.q_minus_qinv();
    let mut out = Vec::new();
    for r in 1..=n {
        for (s, s2) in (1..=n).tuple_combinations() {
            out.push(Relation { family: "same row", poly: w(&[(r, s), (r, s2)]).sub(&scaled(mode.q(), &[(r, s2), (r, s)])) });
        }
    }
    for s in 1..=n {
        for (r, r2) in (1..=n).tuple_combinations() {
            out.push(Relation { family: "same column", poly: w(&[(r, s), (r2, s)]).sub(&scaled(mode.q(), &[(r2, s), (r, s)])) });
        }
    }
    for (r, r2) in (1..=n).tuple_combinations() {
        for (s2, s) in (1..=n).tuple_combinations() {
            out.push(Relation { family: "anti-diagonal", poly: w(&[(r, s), (r2, s2)]).sub(&w(&[(r2, s2), (r, s)])) });
        }
        for (s, s2) in (1..=n).tuple_combinations() {
            let rhs = XiPoly::from_terms(
                mode,
                XiKind::Full,
                [(vec![(r2, s2), (r, s)], mode.one()), (vec![(r2, s), (r, s2)], c.clone())],
            );
            out.push(Relation { family: "diagonal", poly: w(&[(r, s), (r2, s2)]).sub(&rhs) });
        }
    }
    out
}

/// Outcome of one relation family.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub instances: usize,
    /// `(relation, generator word)` pairs with a nonzero value.
    pub violations: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub n: usize,
    /// Dimension of the image of `U` in `End(V ⊗ V)`.
    pub algebra_dim: usize,
    pub families: Vec<FamilyReport>,
    /// The row-1 relations `ξ_{1r} ξ_{1s} = ζ ξ_{1s} ξ_{1r}` (`r < s`).
    pub row_one: FamilyReport,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.violations.is_empty()) && self.row_one.violations.is_empty()
    }
}

/// Proves the `ξ` relations on the whole image of `U` in `End(V ⊗ V)`.
///
/// Operators `u` of generator words are grown from the identity by left
/// multiplication until the span stops growing; a relation is a linear
/// functional in `u`, so vanishing on the spanning words proves it.
pub fn verify_relations(mode: &Mode, n: usize) -> Result<RelationReport> {
    if n > 4 {
        return Err(Error::BoundExceeded { what: "n", value: n, bound: 4 });
    }
    let tensors: Vec<Vec<usize>> = (0..2).map(|_| 1..=n).multi_cartesian_product().collect();
    let index: BTreeMap<&Vec<usize>, usize> = tensors.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let dim = tensors.len();
    let key = |row: usize, col: usize| row * dim + col;
    let gens = Generator::all(n);
    let identity: SparseVec = (0..dim).map(|i| (key(i, i), mode.one())).collect();
    let mut echelon = Echelon::new();
    echelon.insert(identity.clone());
    let mut spanning: Vec<(Vec<Generator>, SparseVec)> = vec![(Vec::new(), identity)];
    let mut frontier = 0;
    while frontier < spanning.len() {
        let (word, op) = spanning[frontier].clone();
        frontier += 1;
        for &g in &gens {
            let mut next = SparseVec::new();
            for (k, x) in &op {
                let (row, col) = (k / dim, k % dim);
                for (t, c) in act_on_basis(mode, g, &tensors[row]) {
                    crate::linmap::axpy(&mut next, x, &SparseVec::from([(key(index[&t], col), c)]));
                }
            }
            if echelon.insert(next.clone()) {
                let mut w = vec![g];
                w.extend(&word);
                spanning.push((w, next));
            }
        }
    }
    let value = |p: &XiPoly, op: &SparseVec| {
        p.terms.iter().fold(mode.zero(), |acc, (w, c)| {
            let (rows, cols): (Vec<usize>, Vec<usize>) = w.iter().copied().unzip();
            match op.get(&key(index[&rows], index[&cols])) {
                Some(x) => acc + c * x,
                None => acc,
            }
        })
    };
    let check = |family: &str, rels: &[&Relation]| FamilyReport {
        family: family.to_string(),
        instances: rels.len(),
        violations: rels
            .iter()
            .flat_map(|rel| {
                spanning
                    .iter()
                    .filter(|(_, op)| !value(&rel.poly, op).is_zero())
                    .map(|(w, _)| (rel.poly.to_string(), w.iter().join(" ")))
                    .take(1)
            })
            .collect(),
    };
    let rels = xi_relations(mode, n);
    let families = ["same row", "same column", "anti-diagonal", "diagonal"]
        .iter()
        .map(|f| check(f, &rels.iter().filter(|r| r.family == *f).collect_vec()))
        .collect();
    let row_one = rels
        .iter()
        .filter(|r| r.family == "same row" && r.poly.terms.keys().all(|w| w.iter().all(|&(r, _)| r == 1)))
        .collect_vec();
    Ok(RelationReport { n, algebra_dim: echelon.rank(), families, row_one: check("row one", &row_one) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z7() -> Mode {
        Mode::root_of_unity(7).unwrap()
    }

    #[test]
    fn xi_examples() {
        let m = z7();
        let p = XiPoly::parse("x[1,2] x[1,1]", &m, 2).unwrap();
        assert_eq!(normal_form(&p), XiPoly::from_terms(&m, XiKind::Full, [(vec![(1, 1), (1, 2)], m.q_pow(-1))]));
        let p = XiPoly::parse("x[2,2] x[1,1]", &m, 2).unwrap();
        let nf = normal_form(&p);
        assert_eq!(nf.to_string(), "x[1,1] x[2,2] - (z-z^-1) x[1,2] x[2,1]");
        let p = XiPoly::parse("x[1,1] x[2,2]", &m, 2).unwrap();
        assert_eq!(normal_form(&p), p);
        assert_eq!(normal_form(&XiPoly::parse("x[1,1]", &m, 2).unwrap()).to_string(), "x[1,1]");
    }

    #[test]
    fn first_row_is_a_quantum_symmetric_algebra() {
        // words in ξ_{11}, …, ξ_{1n} reduce to one ordered monomial, so the
        // degree-d piece has dimension binom(d+n-1, n-1)
        let m = z7();
        for n in 2..=4usize {
            for d in 0..=6usize {
                let mut normal = std::collections::BTreeSet::new();
                for w in (0..d).map(|_| 1..=n).multi_cartesian_product() {
                    let word: XiWord = w.iter().map(|&s| (1, s)).collect();
                    let nf = normal_form(&XiPoly::word(&m, XiKind::Full, &word));
                    assert_eq!(nf.terms.len(), 1);
                    let (v, c) = nf.terms.iter().next().unwrap();
                    let inversions = w.iter().tuple_combinations().filter(|(a, b)| a > b).count() as i64;
                    assert_eq!(*c, m.q_pow(-inversions));
                    normal.insert(v.clone());
                }
                let binom = (1..n).fold(1usize, |acc, k| acc * (d + k) / k);
                assert_eq!(normal.len(), binom, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn tilde_examples() {
        let m = z7();
        let nf = normal_form(&XiPoly::parse("xt[1,2] xt[2,3]", &m, 3).unwrap());
        assert_eq!(nf.to_string(), "z^-1 xt[2,3] xt[1,2] + (z-z^-1) xt[1,3]");
        let p = XiPoly::parse("xt[1,2] xt[1,3]", &m, 3).unwrap();
        assert_eq!(normal_form(&p), p);
        let nf = normal_form(&XiPoly::parse("xt[1,3] xt[1,2]", &m, 3).unwrap());
        assert_eq!(nf, XiPoly::from_terms(&m, XiKind::Tilde, [(vec![(1, 2), (1, 3)], m.q_pow(-1))]));
        let g = Mode::Generic;
        let nf = normal_form(&XiPoly::parse("xt[1,2] xt[2,3]", &g, 3).unwrap());
        assert_eq!(nf.to_string(), "q^-1 xt[2,3] xt[1,2] + (q-q^-1) xt[1,3]");
    }

    #[test]
    fn parse_errors() {
        let m = Mode::Generic;
        assert!(XiPoly::parse("x[1,2] xt[1,2]", &m, 3).is_err());
        assert!(XiPoly::parse("xt[2,1]", &m, 3).is_err());
        assert!(XiPoly::parse("x[4,1]", &m, 3).is_err());
    }

    #[test]
    fn pbw_counts() {
        let g = Mode::Generic;
        let alg3 = QAlgebra::new(&g, 3, 6).unwrap();
        let c = pbw_count_crosscheck(&alg3, &Weight::from_simple_coords(&[1, 0])).unwrap();
        assert_eq!((c.ordered_monomials, c.dim), (1, 1));
        let c = pbw_count_crosscheck(&alg3, &Weight::from_simple_coords(&[1, 1])).unwrap();
        assert_eq!((c.ordered_monomials, c.dim), (2, 2));
        let alg4 = QAlgebra::new(&g, 4, 6).unwrap();
        let c = pbw_count_crosscheck(&alg4, &Weight::from_simple_coords(&[1, 1, 1])).unwrap();
        assert_eq!((c.ordered_monomials, c.dim), (4, 4));
        assert!(c.agrees());
    }

    #[test]
    fn ordered_words_are_exactly_the_normal_words() {
        // every word of ξ̃ letters of weight β has a normal form supported on
        // ordered words, and the ordered words are fixed points
        let m = Mode::Generic;
        let letters = positive_roots(3);
        for len in 1..=4 {
            for w in (0..len).map(|_| letters.iter().copied()).multi_cartesian_product() {
                let nf = normal_form(&XiPoly::word(&m, XiKind::Tilde, &w));
                assert!(nf.is_normal());
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let m = z7();
        let b = Bounds::default();
        assert!(evaluate_on_tensor(&m, &[(2, 2)], &[], &b).unwrap().is_one());
        assert!(evaluate_on_tensor(&m, &[(1, 2)], &[], &b).unwrap().is_zero());
        assert!(evaluate_on_tensor(&m, &[(1, 2)], &[Generator::E(1)], &b).unwrap().is_one());
        let rel = XiPoly::from_terms(
            &m,
            XiKind::Full,
            [(vec![(1, 1), (2, 2)], m.one()), (vec![(2, 2), (1, 1)], -m.one()), (vec![(2, 1), (1, 2)], -m.q_minus_qinv())],
        );
        assert!(evaluate_poly(&rel, &[Generator::F(1), Generator::E(1)], &b).unwrap().is_zero());
        assert!(evaluate_on_tensor(&m, &[(1, 1); 5], &[], &b).is_err());
    }

    #[test]
    fn relations_hold_on_v_tensor_v() {
        let expected = [(2, 10), (3, 45)];
        for (n, dim) in expected {
            for mode in [Mode::Generic, Mode::root_of_unity(2 * n as u32 + 1).unwrap()] {
                let r = verify_relations(&mode, n).unwrap();
                assert!(r.passed(), "{r:?}");
                assert_eq!(r.algebra_dim, dim);
                assert_eq!(r.families.len(), 4);
            }
        }
    }

    #[test]
    fn tilde_relations_hold_in_dual() {
        // every pair rewrite holds between functionals on U(n^+)
        for (m, n) in [(Mode::Generic, 4), (z7(), 3)] {
            let alg = QAlgebra::new(&m, n, 6).unwrap();
            let letters = positive_roots(n);
            for (&a, &b) in letters.iter().cartesian_product(&letters) {
                let Some(rep) = rewrite_pair(&m, XiKind::Tilde, a, b) else { continue };
                let beta = &Weight::root(n, a.0, a.1) + &Weight::root(n, b.0, b.1);
                let rhs = XiPoly::from_terms(&m, XiKind::Tilde, rep.into_iter().map(|(c, w)| (w, c)));
                let lhs = XiPoly::word(&m, XiKind::Tilde, &[a, b]);
                assert_eq!(tilde_values(&alg, &lhs, &beta).unwrap(), tilde_values(&alg, &rhs, &beta).unwrap(), "{a:?}{b:?}");
            }
        }
    }

    #[test]
    fn tilde_normal_forms_agree_in_dual() {
        let m = Mode::Generic;
        let alg = QAlgebra::new(&m, 4, 9).unwrap();
        let letters = positive_roots(4);
        for w in (0..3).map(|_| letters.iter().copied()).multi_cartesian_product().step_by(7) {
            let p = XiPoly::word(&m, XiKind::Tilde, &w);
            let beta = w.iter().fold(Weight::zero(4), |acc, &(r, s)| &acc + &Weight::root(4, r, s));
            let nf = normal_form(&p);
            assert_eq!(tilde_values(&alg, &p, &beta).unwrap(), tilde_values(&alg, &nf, &beta).unwrap(), "{w:?}");
        }
    }

    #[test]
    fn inversion_length_measure_is_not_monotone() {
        // (inversions, length) goes up on this diagonal rewrite; the measure
        // used above does not
        let m = Mode::Generic;
        let w = vec![(2, 1), (2, 2), (1, 1)];
        let rep = rewrite_once(&m, XiKind::Full, &w, RewriteOrder::Rightmost).unwrap();
        let inv = |v: &[(usize, usize)]| termination_measure(XiKind::Full, v).2;
        assert!(rep.iter().any(|(_, v)| inv(v) >= inv(&w)));
        assert!(rep.iter().all(|(_, v)| termination_measure(XiKind::Full, v) < termination_measure(XiKind::Full, &w)));
    }

    fn xi_word(n: usize, max_len: usize) -> impl Strategy<Value = XiWord> {
        prop::collection::vec((1..=n, 1..=n), 0..=max_len)
    }

    fn tilde_word(n: usize, max_len: usize) -> impl Strategy<Value = XiWord> {
        prop::collection::vec((1..n).prop_flat_map(move |r| (Just(r), r + 1..=n)), 0..=max_len)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rewriting_is_confluent(w in (2usize..=4).prop_flat_map(|n| xi_word(n, 8))) {
            let p = XiPoly::word(&Mode::Generic, XiKind::Full, &w);
            prop_assert_eq!(normal_form_with(&p, RewriteOrder::Leftmost), normal_form_with(&p, RewriteOrder::Rightmost));
        }

        #[test]
        fn tilde_rewriting_is_confluent(w in (2usize..=4).prop_flat_map(|n| tilde_word(n, 8))) {
            let p = XiPoly::word(&Mode::Generic, XiKind::Tilde, &w);
            prop_assert_eq!(normal_form_with(&p, RewriteOrder::Leftmost), normal_form_with(&p, RewriteOrder::Rightmost));
        }

        #[test]
        fn every_rewrite_decreases_the_measure(w in (2usize..=4).prop_flat_map(|n| xi_word(n, 8)), tilde in any::<bool>()) {
            let kind = if tilde { XiKind::Tilde } else { XiKind::Full };
            let w: XiWord = if tilde { w.into_iter().filter(|(r, s)| r < s).collect() } else { w };
            for strategy in [RewriteOrder::Leftmost, RewriteOrder::Rightmost] {
                if let Some(rep) = rewrite_once(&Mode::Generic, kind, &w, strategy) {
                    for (_, v) in rep {
                        prop_assert!(termination_measure(kind, &v) < termination_measure(kind, &w));
                    }
                }
            }
        }

        #[test]
        fn rewriting_preserves_bi_weight(w in xi_word(4, 7)) {
            let nf = normal_form(&XiPoly::word(&Mode::Generic, XiKind::Full, &w));
            for v in nf.terms().keys() {
                prop_assert_eq!(bi_weight(4, v), bi_weight(4, &w));
            }
        }
    }
}
