//! Graded pieces of the positive part `U(n^+) = <e_i>` and the negative part
//! `U(n) = <f_i>` modulo the quantum Serre relations, the Drinfeld pairing
//! between them, and the dual map `F(y) = τ(-, y)`.
//!
//! Everything is per-degree linear algebra on words. Letters are 1-based
//! simple-root indices; `e_i` has degree `α_i` and `f_i` degree `-α_i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use crate::config::check_ell;
use crate::error::{Error, Result};
use crate::linmap::{Echelon, SparseVec};
use crate::scalars::{quantum_integer, Mode, Scalar, ScalarMatrix};
use crate::syntax::format_sum;
use crate::weights::{positive_roots, Weight};

pub type Word = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    E,
    F,
}

impl Alphabet {
    fn letter(self) -> char {
        match self {
            Alphabet::E => 'e',
            Alphabet::F => 'f',
        }
    }
}

/// Cartan matrix entry `a_{ij}` of type `A`.
pub fn cartan(i: usize, j: usize) -> i64 {
    match i.abs_diff(j) {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

/// Noncommutative polynomial in the letters of one alphabet.
#[derive(Clone, Debug, PartialEq)]
pub struct NCPoly {
    n: usize,
    alphabet: Alphabet,
    mode: Mode,
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero(mode: &Mode, n: usize, alphabet: Alphabet) -> Self {
        NCPoly { n, alphabet, mode: mode.clone(), terms: BTreeMap::new() }
    }

    pub fn one(mode: &Mode, n: usize, alphabet: Alphabet) -> Self {
        Self::word(mode, n, alphabet, &[])
    }

    /// A single word; panics on letters outside `1..n`.
    pub fn word(mode: &Mode, n: usize, alphabet: Alphabet, w: &[usize]) -> Self {
        Self::from_terms(mode, n, alphabet, [(w.to_vec(), mode.one())])
    }

    pub fn from_terms(
        mode: &Mode,
        n: usize,
        alphabet: Alphabet,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Self {
        let mut p = Self::zero(mode, n, alphabet);
        for (w, c) in terms {
            assert!(w.iter().all(|&i| i >= 1 && i < n), "letter out of range in {w:?}");
            p.add_term(w, c);
        }
        p
    }

    fn add_term(&mut self, w: Word, c: Scalar) {
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

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        assert_eq!((self.n, self.alphabet), (other.n, other.alphabet));
        let mut p = self.clone();
        for (w, c) in &other.terms {
            p.add_term(w.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        let mut p = Self::zero(&self.mode, self.n, self.alphabet);
        for (w, x) in &self.terms {
            p.add_term(w.clone(), x * c);
        }
        p
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        assert_eq!((self.n, self.alphabet), (other.n, other.alphabet));
        let mut p = Self::zero(&self.mode, self.n, self.alphabet);
        for ((a, x), (b, y)) in self.terms.iter().cartesian_product(&other.terms) {
            p.add_term(a.iter().chain(b).copied().collect(), x * y);
        }
        p
    }

    /// Common degree of all terms (`None` for zero). `E`-words have degree
    /// in `Q^+`, `F`-words in `-Q^+`.
    pub fn degree(&self) -> Result<Option<Weight>> {
        let mut degs = self.terms.keys().map(|w| word_degree(self.n, self.alphabet, w));
        let Some(first) = degs.next() else { return Ok(None) };
        if degs.any(|d| d != first) {
            return Err(Error::Inhomogeneous);
        }
        Ok(Some(first))
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.alphabet.letter();
        let terms = self.terms.iter().map(|(w, c)| (w.iter().map(|i| format!("{a}{i}")).join(" "), c));
        write!(f, "{}", format_sum(terms))
    }
}

fn word_degree(n: usize, alphabet: Alphabet, w: &[usize]) -> Weight {
    let mut m = vec![0i64; n - 1];
    for &i in w {
        m[i - 1] += 1;
    }
    let beta = Weight::from_simple_coords(&m);
    match alphabet {
        Alphabet::E => beta,
        Alphabet::F => -&beta,
    }
}

/// Letter multiplicities `m_i` of a degree `β ∈ Q^+`.
fn letter_counts(beta: &Weight) -> Result<Vec<usize>> {
    beta.positive_root_coords()
        .map(|m| m.into_iter().map(|c| c as usize).collect())
        .ok_or_else(|| Error::NotPositiveRootCombination(beta.to_string()))
}

/// All words with the given letter multiplicities, in increasing
/// lexicographic order.
pub fn words_with_counts(counts: &[usize]) -> Vec<Word> {
    fn go(counts: &mut Vec<usize>, cur: &mut Word, len: usize, out: &mut Vec<Word>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(i + 1);
                go(counts, cur, len, out);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let len = counts.iter().sum();
    go(&mut counts.to_vec(), &mut Vec::new(), len, &mut out);
    out
}

/// Number of multisets of positive roots summing to `β`.
pub fn kostant_partition_count(beta: &Weight) -> Result<u64> {
    let m = beta
        .positive_root_coords()
        .ok_or_else(|| Error::NotPositiveRootCombination(beta.to_string()))?;
    let n = beta.rank();
    // α_{rs} = α_r + ⋯ + α_{s-1} in simple coordinates
    let roots: Vec<Vec<i64>> = positive_roots(n)
        .into_iter()
        .map(|(r, s)| (1..n).map(|i| (r <= i && i < s) as i64).collect())
        .collect();
    fn go(roots: &[Vec<i64>], rest: &mut Vec<i64>) -> u64 {
        if rest.iter().all(|&c| c == 0) {
            return 1;
        }
        let Some((first, others)) = roots.split_first() else { return 0 };
        let mut total = 0;
        let mut used = 0;
        loop {
            total += go(others, rest);
            if rest.iter().zip(first).any(|(c, a)| c < a) {
                break;
            }
            for (c, a) in rest.iter_mut().zip(first) {
                *c -= a;
            }
            used += 1;
        }
        for (c, a) in rest.iter_mut().zip(first) {
            *c += a * used;
        }
        total
    }
    Ok(go(&roots, &mut m.clone()))
}

/// The Serre relations of `U(n^±)`, each with its letter multiplicities.
pub fn serre_relations(mode: &Mode, n: usize) -> Vec<(Vec<usize>, Vec<(Word, Scalar)>)> {
    let two = quantum_integer(mode, 2);
    let mut out = Vec::new();
    for (i, j) in (1..n).cartesian_product(1..n) {
        let mut counts = vec![0; n - 1];
        match i.abs_diff(j) {
            0 => continue,
            1 => {
                counts[i - 1] = 2;
                counts[j - 1] = 1;
                out.push((
                    counts,
                    vec![(vec![i, i, j], mode.one()), (vec![i, j, i], -&two), (vec![j, i, i], mode.one())],
                ));
            }
            _ if i < j => {
                counts[i - 1] = 1;
                counts[j - 1] = 1;
                out.push((counts, vec![(vec![i, j], mode.one()), (vec![j, i], -mode.one())]));
            }
            _ => {}
        }
    }
    out
}

/// The degree-`β` piece of the Serre quotient, with a reduction of every
/// word to coordinates on a basis of words.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    alphabet: Alphabet,
    mode: Mode,
    beta: Weight,
    /// All words of degree `β`, ordered lexicographically descending, so
    /// that relation pivots fall on the larger words.
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    relations: Echelon,
    basis: Vec<Word>,
    basis_position: HashMap<usize, usize>,
}

impl GradedPiece {
    pub fn degree(&self) -> &Weight {
        &self.beta
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// Rank of the relation space among all words of this degree.
    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    /// Coordinates of a word on the basis.
    pub fn reduce_word(&self, w: &[usize]) -> Result<Vec<Scalar>> {
        let &col = self.index.get(w).ok_or(Error::Inhomogeneous)?;
        let r = self.relations.reduce(SparseVec::from([(col, self.mode.one())]));
        let mut out = vec![self.mode.zero(); self.basis.len()];
        for (c, x) in r {
            out[self.basis_position[&c]] = x;
        }
        Ok(out)
    }

    /// Coordinates of a homogeneous polynomial of this degree.
    pub fn reduce(&self, p: &NCPoly) -> Result<Vec<Scalar>> {
        if p.alphabet != self.alphabet {
            return Err(Error::InvalidInput("alphabet mismatch".into()));
        }
        let mut out = vec![self.mode.zero(); self.basis.len()];
        for (w, c) in &p.terms {
            for (o, x) in out.iter_mut().zip(self.reduce_word(w)?) {
                *o += &(c * &x);
            }
        }
        Ok(out)
    }

    /// Whether a polynomial of this degree lies in the Serre ideal.
    pub fn is_relation(&self, p: &NCPoly) -> Result<bool> {
        Ok(self.reduce(p)?.iter().all(|c| c.is_zero()))
    }
}

/// Computations in `U(n^±)` for fixed `n` and scalars, with graded pieces
/// memoised by degree.
#[derive(Debug)]
pub struct QAlgebra {
    n: usize,
    mode: Mode,
    degree_bound: usize,
    pieces: Mutex<HashMap<(Alphabet, Weight), Arc<GradedPiece>>>,
}

impl QAlgebra {
    pub fn new(mode: &Mode, n: usize, degree_bound: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
        }
        check_ell(mode, n)?;
        Ok(QAlgebra { n, mode: mode.clone(), degree_bound, pieces: Mutex::new(HashMap::new()) })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    fn check_beta(&self, beta: &Weight) -> Result<Vec<usize>> {
        if beta.rank() != self.n {
            return Err(Error::RankMismatch { expected: self.n, found: beta.rank() });
        }
        let counts = letter_counts(beta)?;
        let total: usize = counts.iter().sum();
        if total > self.degree_bound {
            return Err(Error::BoundExceeded { what: "|β|", value: total, bound: self.degree_bound });
        }
        if let Some(ell) = self.mode.ell() {
            // e_i^{m} with m ≥ ℓ would need divided powers
            if let Some(&m) = counts.iter().find(|&&m| m >= ell as usize) {
                return Err(Error::VanishingQuantumInteger(m as u32));
            }
        }
        Ok(counts)
    }

    /// Degree-`β` piece (`β ∈ Q^+`; the `F` piece has degree `-β`).
    pub fn graded_basis(&self, beta: &Weight, alphabet: Alphabet) -> Result<Arc<GradedPiece>> {
        let counts = self.check_beta(beta)?;
        let key = (alphabet, beta.clone());
        if let Some(p) = self.pieces.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let piece = Arc::new(self.build_piece(beta, &counts, alphabet));
        self.pieces.lock().unwrap().insert(key, piece.clone());
        Ok(piece)
    }

    fn build_piece(&self, beta: &Weight, counts: &[usize], alphabet: Alphabet) -> GradedPiece {
        let mut words = words_with_counts(counts);
        words.reverse();
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut relations = Echelon::new();
        for (scounts, rel) in serre_relations(&self.mode, self.n) {
            if scounts.iter().zip(counts).any(|(s, c)| s > c) {
                continue;
            }
            let rest: Vec<usize> = counts.iter().zip(&scounts).map(|(c, s)| c - s).collect();
            for w in words_with_counts(&rest) {
                for k in 0..=w.len() {
                    let v: SparseVec = rel
                        .iter()
                        .map(|(s, c)| {
                            let full: Word = w[..k].iter().chain(s).chain(&w[k..]).copied().collect();
                            (index[&full], c.clone())
                        })
                        .collect();
                    relations.insert(v);
                }
            }
        }
        let mut free: Vec<usize> = (0..words.len()).filter(|c| !relations.is_pivot(*c)).collect();
        free.reverse();
        let basis: Vec<Word> = free.iter().map(|&c| words[c].clone()).collect();
        let basis_position = free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        GradedPiece {
            alphabet,
            mode: self.mode.clone(),
            beta: beta.clone(),
            words,
            index,
            relations,
            basis,
            basis_position,
        }
    }

    /// `τ(x, y)` for an `E`-polynomial `x` and an `F`-polynomial `y`.
    pub fn drinfeld_pairing(&self, x: &NCPoly, y: &NCPoly) -> Result<Scalar> {
        if x.alphabet != Alphabet::E || y.alphabet != Alphabet::F {
            return Err(Error::InvalidInput("τ pairs an E-polynomial with an F-polynomial".into()));
        }
        let (dx, dy) = (x.degree()?, y.degree()?);
        match (dx, dy) {
            (Some(a), Some(b)) if a == -&b => {}
            _ => return Ok(self.mode.zero()),
        }
        let mut memo = HashMap::new();
        let mut total = self.mode.zero();
        for ((u, a), (v, b)) in x.terms.iter().cartesian_product(&y.terms) {
            total += &(&(a * b) * &self.word_pairing(u, v, &mut memo));
        }
        Ok(total)
    }

    /// `τ` on words: peel the last letter `f_j` of `y` via
    /// `τ(x, y' f_j) = (τ ⊗ τ)(Δ(x), f_j ⊗ y')`.
    fn word_pairing(&self, x: &[usize], y: &[usize], memo: &mut HashMap<(Word, Word), Scalar>) -> Scalar {
        if x.len() != y.len() {
            return self.mode.zero();
        }
        let Some((&j, rest)) = y.split_last() else { return self.mode.one() };
        if let Some(v) = memo.get(&(x.to_vec(), y.to_vec())) {
            return v.clone();
        }
        let c = self.mode.q_minus_qinv().inv().expect("ζ² ≠ 1");
        let mut total = self.mode.zero();
        for (p, &xp) in x.iter().enumerate() {
            if xp != j {
                continue;
            }
            // k_{x_t} (t > p) moved left past e_j
            let e: i64 = x[p + 1..].iter().map(|&t| -cartan(t, j)).sum();
            let sub: Word = x[..p].iter().chain(&x[p + 1..]).copied().collect();
            let inner = self.word_pairing(&sub, rest, memo);
            if !inner.is_zero() {
                total += &(&(&self.mode.q_pow(e) * &c) * &inner);
            }
        }
        memo.insert((x.to_vec(), y.to_vec()), total.clone());
        total
    }

    /// Gram matrix of `τ` between the `E` and `F` bases of degree `β`.
    pub fn pairing_gram(&self, beta: &Weight) -> Result<ScalarMatrix> {
        let pe = self.graded_basis(beta, Alphabet::E)?;
        let pf = self.graded_basis(beta, Alphabet::F)?;
        let mut memo = HashMap::new();
        let rows = pe
            .basis()
            .iter()
            .map(|u| pf.basis().iter().map(|v| self.word_pairing(u, v, &mut memo)).collect())
            .collect();
        Ok(ScalarMatrix::from_rows(&self.mode, rows))
    }

    pub fn pairing_gram_rank(&self, beta: &Weight) -> Result<usize> {
        Ok(self.pairing_gram(beta)?.rank())
    }

    /// `F(y) = τ(-, y)` as values on the `E`-basis of degree `-deg y`.
    pub fn dual_map_f(&self, y: &NCPoly) -> Result<Functional> {
        if y.alphabet != Alphabet::F {
            return Err(Error::InvalidInput("F is defined on F-polynomials".into()));
        }
        let beta = match y.degree()? {
            Some(d) => -&d,
            None => return Err(Error::InvalidInput("F(0) has no degree".into())),
        };
        let piece = self.graded_basis(&beta, Alphabet::E)?;
        let mut memo = HashMap::new();
        let values = piece
            .basis()
            .iter()
            .map(|u| {
                y.terms.iter().fold(self.mode.zero(), |acc, (v, c)| acc + c * &self.word_pairing(u, v, &mut memo))
            })
            .collect();
        Ok(Functional { piece, values })
    }

    /// Functional on the degree-`β` piece given by its values on basis words.
    pub fn functional(&self, beta: &Weight, mut value: impl FnMut(&[usize]) -> Scalar) -> Result<Functional> {
        let piece = self.graded_basis(beta, Alphabet::E)?;
        let values = piece.basis().iter().map(|w| value(w)).collect();
        Ok(Functional { piece, values })
    }

    /// Product on the graded dual, `<φφ', x> = <φ ⊗ φ', Δ(x)>`, where `k`s in
    /// the left tensor factor are moved to the front and evaluate to 1.
    pub fn dual_product(&self, a: &Functional, b: &Functional) -> Result<Functional> {
        let beta = a.piece.degree() + b.piece.degree();
        let piece = self.graded_basis(&beta, Alphabet::E)?;
        let db = b.piece.degree().positive_root_coords().expect("degree in Q^+");
        let values = piece
            .basis()
            .iter()
            .map(|x| self.dual_product_on_word(a, b, &db, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Functional { piece, values })
    }

    fn dual_product_on_word(&self, a: &Functional, b: &Functional, db: &[i64], x: &[usize]) -> Result<Scalar> {
        let len = x.len();
        let mut total = self.mode.zero();
        for right in (0..len).combinations(db.iter().sum::<i64>() as usize) {
            let mut counts = vec![0i64; self.n - 1];
            for &t in &right {
                counts[x[t] - 1] += 1;
            }
            if counts != db {
                continue;
            }
            let mut is_right = vec![false; len];
            for &t in &right {
                is_right[t] = true;
            }
            let mut e = 0;
            for (p, t) in (0..len).tuple_combinations() {
                if !is_right[p] && is_right[t] {
                    e -= cartan(x[t], x[p]);
                }
            }
            let lw: Word = (0..len).filter(|&p| !is_right[p]).map(|p| x[p]).collect();
            let rw: Word = right.iter().map(|&t| x[t]).collect();
            let v = &a.eval_word(&lw)? * &b.eval_word(&rw)?;
            total += &(&self.mode.q_pow(e) * &v);
        }
        Ok(total)
    }
}

/// Linear functional on one graded piece of `U(n^+)`, by its values on the
/// basis words.
#[derive(Clone, Debug)]
pub struct Functional {
    piece: Arc<GradedPiece>,
    values: Vec<Scalar>,
}

impl Functional {
    pub fn degree(&self) -> &Weight {
        self.piece.degree()
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn eval_word(&self, w: &[usize]) -> Result<Scalar> {
        let coords = self.piece.reduce_word(w)?;
        Ok(coords.iter().zip(&self.values).fold(self.piece.mode.zero(), |acc, (c, v)| acc + c * v))
    }
}

impl PartialEq for Functional {
    fn eq(&self, other: &Self) -> bool {
        self.piece.degree() == other.piece.degree() && self.values == other.values
    }
}
