//! Quantum symmetric and exterior algebras on `V` and the Koszul complex
//! `S_ζV ⊗ ∧_ζ^•V`, one total degree at a time.
//!
//! `S_ζV` is the tensor algebra modulo `v_r v_s = ζ v_s v_r` (`r < s`), and
//! `∧_ζV` is the tensor algebra modulo `v_r ∧ v_r = 0`,
//! `v_r ∧ v_s = -ζ^{-1} v_s ∧ v_r` (`r < s`). Both have the sorted
//! monomials as bases.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linmap::{axpy, GradedMap, SparseVec};
use crate::scalars::{Mode, Scalar};
use crate::umod::{act_on_basis, tensor_weight, Generator};
use crate::weights::Weight;

/// `v_{r_1} ⋯ v_{r_d}` with `r_1 ≤ ⋯ ≤ r_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SymMonomial(Vec<usize>);

/// `v_{r_1} ∧ ⋯ ∧ v_{r_p}` with `r_1 < ⋯ < r_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExtMonomial(Vec<usize>);

impl SymMonomial {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] > w[1]) || indices.contains(&0) {
            return Err(Error::InvalidInput(format!("{indices:?} is not a sorted monomial")));
        }
        Ok(SymMonomial(indices))
    }

    pub fn one() -> Self {
        SymMonomial(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl ExtMonomial {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.contains(&0) {
            return Err(Error::InvalidInput(format!("{indices:?} is not strictly increasing")));
        }
        Ok(ExtMonomial(indices))
    }

    pub fn one() -> Self {
        ExtMonomial(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for SymMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts = self.0.iter().dedup_with_count().map(|(k, r)| match k {
            1 => format!("v{r}"),
            _ => format!("v{r}^{k}"),
        });
        write!(f, "{}", parts.format(" "))
    }
}

impl fmt::Display for ExtMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", self.0.iter().map(|r| format!("v{r}")).format("∧"))
    }
}

fn inversions(w: &[usize]) -> i64 {
    w.iter().tuple_combinations().filter(|(a, b)| a > b).count() as i64
}

/// Sorts a word in `S_ζV`: each inversion contributes `ζ^{-1}`.
pub fn sym_normal(mode: &Mode, word: &[usize]) -> (Scalar, SymMonomial) {
    let c = mode.q_pow(-inversions(word));
    let mut w = word.to_vec();
    w.sort_unstable();
    (c, SymMonomial(w))
}

/// Sorts a word in `∧_ζV`: zero on a repeated index, otherwise `-ζ` per
/// inversion.
pub fn ext_normal(mode: &Mode, word: &[usize]) -> Option<(Scalar, ExtMonomial)> {
    let mut w = word.to_vec();
    w.sort_unstable();
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    let inv = inversions(word);
    let c = mode.q_pow(inv);
    let c = if inv % 2 == 1 { -c } else { c };
    Some((c, ExtMonomial(w)))
}

pub fn sym_product(mode: &Mode, a: &SymMonomial, b: &SymMonomial) -> (Scalar, SymMonomial) {
    let w: Vec<usize> = a.0.iter().chain(&b.0).copied().collect();
    sym_normal(mode, &w)
}

pub fn ext_product(mode: &Mode, a: &ExtMonomial, b: &ExtMonomial) -> Option<(Scalar, ExtMonomial)> {
    let w: Vec<usize> = a.0.iter().chain(&b.0).copied().collect();
    ext_normal(mode, &w)
}

pub fn sym_basis(n: usize, d: usize) -> Vec<SymMonomial> {
    (1..=n).combinations_with_replacement(d).map(SymMonomial).collect()
}

pub fn ext_basis(n: usize, p: usize) -> Vec<ExtMonomial> {
    (1..=n).combinations(p).map(ExtMonomial).collect()
}

/// A finite-dimensional space on which the generators act.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Space {
    Sym(usize),
    Ext(usize),
    /// `S^{d-p} ⊗ ∧^p`.
    Strand { p: usize, d: usize },
}

impl Space {
    /// `(p, d)` with the space viewed as `S^{d-p} ⊗ ∧^p`.
    fn shape(self) -> (usize, usize) {
        match self {
            Space::Sym(d) => (0, d),
            Space::Ext(p) => (p, p),
            Space::Strand { p, d } => (p, d),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Sym(d) => write!(f, "S^{d}"),
            Space::Ext(p) => write!(f, "∧^{p}"),
            Space::Strand { p, d } => write!(f, "S^{} ⊗ ∧^{p}", d - p),
        }
    }
}

/// Basis `{m ⊗ w}` of `S^{d-p} ⊗ ∧^p`; each element is represented in
/// `V^{⊗d}` by the tensor of the letters of `m` followed by those of `w`.
#[derive(Clone, Debug)]
pub struct StrandBasis {
    n: usize,
    p: usize,
    d: usize,
    elems: Vec<(SymMonomial, ExtMonomial)>,
    index: HashMap<Vec<usize>, usize>,
}

impl StrandBasis {
    pub fn new(n: usize, p: usize, d: usize) -> Self {
        let elems: Vec<_> = if p > d || p > n {
            Vec::new()
        } else {
            sym_basis(n, d - p).into_iter().cartesian_product(ext_basis(n, p)).collect()
        };
        let index = elems.iter().enumerate().map(|(i, (m, w))| ([m.indices(), w.indices()].concat(), i)).collect();
        StrandBasis { n, p, d, elems, index }
    }

    pub fn of(n: usize, space: Space) -> Self {
        let (p, d) = space.shape();
        Self::new(n, p, d)
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[(SymMonomial, ExtMonomial)] {
        &self.elems
    }

    pub fn grades(&self) -> Vec<Weight> {
        self.elems.iter().map(|(m, w)| tensor_weight(self.n, &[m.indices(), w.indices()].concat())).collect()
    }

    pub fn representative(&self, i: usize) -> Vec<usize> {
        let (m, w) = &self.elems[i];
        [m.indices(), w.indices()].concat()
    }

    /// Image of a basis tensor in the quotient, as `(index, coefficient)`.
    pub fn reduce_tensor(&self, mode: &Mode, t: &[usize]) -> Option<(usize, Scalar)> {
        let k = self.d - self.p;
        let (a, m) = sym_normal(mode, &t[..k]);
        let (b, w) = ext_normal(mode, &t[k..])?;
        let key = [m.indices(), w.indices()].concat();
        Some((self.index[&key], &a * &b))
    }

    fn reduce_into(&self, mode: &Mode, out: &mut SparseVec, t: &[usize], c: &Scalar) {
        if let Some((i, x)) = self.reduce_tensor(mode, t) {
            axpy(out, c, &SparseVec::from([(i, x)]));
        }
    }
}

/// `∂_p : S^{d-p-1} ⊗ ∧^{p+1} → S^{d-p} ⊗ ∧^p`,
/// `m ⊗ v_{r_1} ∧ ⋯ ∧ v_{r_{p+1}} ↦ Σ_a (-ζ)^{a-1} (m v_{r_a}) ⊗ (⋯ \hat{v}_{r_a} ⋯)`.
pub fn koszul_differential(mode: &Mode, n: usize, p: usize, d: usize) -> Result<GradedMap> {
    if p >= n {
        return Err(Error::InvalidInput(format!("∂_{p} needs p < n = {n}")));
    }
    let source = StrandBasis::new(n, p + 1, d);
    let target = StrandBasis::new(n, p, d);
    let minus_q = -mode.q();
    let cols = source
        .elems
        .iter()
        .map(|(m, w)| {
            let mut col = SparseVec::new();
            for a in 0..w.degree() {
                let mut t = m.indices().to_vec();
                t.push(w.indices()[a]);
                t.extend(w.indices().iter().enumerate().filter(|&(b, _)| b != a).map(|(_, &r)| r));
                target.reduce_into(mode, &mut col, &t, &minus_q.pow(a as i64));
            }
            col
        })
        .collect();
    Ok(GradedMap::new(mode, source.grades(), target.grades(), cols))
}

/// `ε : S^d → K`, the identity for `d = 0` and zero otherwise.
pub fn augmentation(mode: &Mode, n: usize, d: usize) -> GradedMap {
    let source = StrandBasis::new(n, 0, d).grades();
    if d == 0 {
        GradedMap::identity(mode, source)
    } else {
        GradedMap::zero(mode, source, vec![Weight::zero(n)])
    }
}

/// Dimensions, ranks and homology of one strand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrandHomology {
    pub n: usize,
    pub d: usize,
    /// `dim S^{d-p} ⊗ ∧^p` for `p = 0..=n`.
    pub dims: Vec<usize>,
    /// `rank ∂_p` for `p = 0..n`.
    pub ranks: Vec<usize>,
    /// Homology dimensions `b_0, …, b_n` of the strand without augmentation.
    pub betti: Vec<usize>,
}

impl StrandHomology {
    pub fn is_exact(&self) -> bool {
        if self.d == 0 {
            self.betti.iter().enumerate().all(|(p, &b)| b == (p == 0) as usize)
        } else {
            self.betti.iter().all(|&b| b == 0)
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
    }
}

pub fn strand_homology(mode: &Mode, n: usize, d: usize) -> Result<StrandHomology> {
    let dims = (0..=n).map(|p| StrandBasis::new(n, p, d).dim()).collect_vec();
    let ranks = (0..n)
        .into_par_iter()
        .map(|p| Ok(koszul_differential(mode, n, p, d)?.rank()))
        .collect::<Result<Vec<_>>>()?;
    let betti = (0..=n)
        .map(|p| {
            let out = if p > 0 { ranks[p - 1] } else { 0 };
            let inc = if p < n { ranks[p] } else { 0 };
            dims[p] - out - inc
        })
        .collect();
    Ok(StrandHomology { n, d, dims, ranks, betti })
}

/// Values of `p` for which `∂_{p-1} ∘ ∂_p ≠ 0` in total degree `d`.
pub fn differential_square_failures(mode: &Mode, n: usize, d: usize) -> Result<Vec<usize>> {
    let maps = (0..n).map(|p| koszul_differential(mode, n, p, d)).collect::<Result<Vec<_>>>()?;
    let mut bad = Vec::new();
    for p in 1..n {
        if !maps[p - 1].compose(&maps[p]).is_zero() {
            bad.push(p);
        }
    }
    if d > 0 && !augmentation(mode, n, d).compose(&maps[0]).is_zero() {
        bad.push(0);
    }
    Ok(bad)
}

/// Matrix of a generator on `space`, computed on tensor representatives and
/// reduced to the quotient basis. Fails if the action does not preserve the
/// kernel of the quotient map, checked on every tensor of the right length.
pub fn generator_action(mode: &Mode, n: usize, g: Generator, space: Space) -> Result<GradedMap> {
    g.check(n)?;
    let basis = StrandBasis::of(n, space);
    let act = |t: &[usize]| {
        let mut v = SparseVec::new();
        for (u, c) in act_on_basis(mode, g, t) {
            basis.reduce_into(mode, &mut v, &u, &c);
        }
        v
    };
    let cols: Vec<SparseVec> = (0..basis.dim()).map(|i| act(&basis.representative(i))).collect();
    // the kernel of T^d → space is spanned by t - c·rep for π(t) = c·rep,
    // and by the t with π(t) = 0
    let (_, d) = space.shape();
    for t in (0..d).map(|_| 1..=n).multi_cartesian_product() {
        let expected = match basis.reduce_tensor(mode, &t) {
            Some((i, c)) => {
                if basis.representative(i) == t {
                    continue;
                }
                crate::linmap::scale(&cols[i], &c)
            }
            None => SparseVec::new(),
        };
        if act(&t) != expected {
            return Err(Error::ActionDoesNotDescend { generator: g.to_string(), space: space.to_string() });
        }
    }
    let grades = basis.grades();
    Ok(GradedMap::new(mode, grades.clone(), grades, cols))
}

/// Action on the trivial module `K`.
fn trivial_action(mode: &Mode, n: usize, g: Generator) -> GradedMap {
    let k = vec![Weight::zero(n)];
    match g {
        Generator::K(..) => GradedMap::identity(mode, k),
        _ => GradedMap::zero(mode, k.clone(), k),
    }
}

/// Outcome of checking that `∂` and `ε` commute with every generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    pub n: usize,
    pub d: usize,
    /// Number of `(generator, map)` pairs compared.
    pub checks: usize,
    /// `(generator, map)` pairs where the squares do not commute.
    pub failures: Vec<(String, String)>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn equivariance_check(mode: &Mode, n: usize, d: usize) -> Result<EquivarianceReport> {
    let gens = Generator::all(n);
    let strands: Vec<Vec<GradedMap>> = (0..=n.min(d))
        .into_par_iter()
        .map(|p| gens.iter().map(|&g| generator_action(mode, n, g, Space::Strand { p, d })).collect())
        .collect::<Result<_>>()?;
    let mut checks = 0;
    let mut failures = Vec::new();
    for p in 0..n.min(d) {
        let del = koszul_differential(mode, n, p, d)?;
        for (k, g) in gens.iter().enumerate() {
            checks += 1;
            if strands[p][k].compose(&del) != del.compose(&strands[p + 1][k]) {
                failures.push((g.to_string(), format!("∂_{p}")));
            }
        }
    }
    let eps = augmentation(mode, n, d);
    for (k, &g) in gens.iter().enumerate() {
        checks += 1;
        if trivial_action(mode, n, g).compose(&eps) != eps.compose(&strands[0][k]) {
            failures.push((g.to_string(), "ε".into()));
        }
    }
    Ok(EquivarianceReport { n, d, checks, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binom(a: usize, b: usize) -> usize {
        (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
    }

    #[test]
    fn products() {
        let m = Mode::Generic;
        let s = |v: &[usize]| SymMonomial::new(v.to_vec()).unwrap();
        let e = |v: &[usize]| ExtMonomial::new(v.to_vec()).unwrap();
        assert_eq!(sym_product(&m, &s(&[1]), &s(&[1])), (m.one(), s(&[1, 1])));
        assert_eq!(sym_product(&m, &s(&[2]), &s(&[1])), (m.q_pow(-1), s(&[1, 2])));
        assert_eq!(sym_product(&m, &s(&[3]), &s(&[1, 2])), (m.q_pow(-2), s(&[1, 2, 3])));
        assert_eq!(ext_product(&m, &e(&[1]), &e(&[1])), None);
        assert_eq!(ext_product(&m, &e(&[2]), &e(&[1])), Some((-m.q(), e(&[1, 2]))));
        assert_eq!(ext_product(&m, &e(&[3]), &e(&[1, 2])), Some((m.q_pow(2), e(&[1, 2, 3]))));
        assert_eq!(s(&[1, 1, 2]).to_string(), "v1^2 v2");
        assert_eq!(e(&[1, 3]).to_string(), "v1∧v3");
    }

    #[test]
    fn differential_examples() {
        let m = Mode::Generic;
        let d0 = koszul_differential(&m, 2, 0, 1).unwrap();
        assert_eq!(d0, GradedMap::identity(&m, d0.source_grades().to_vec()));
        // ∂_1(1 ⊗ v1∧v2) = v1 ⊗ v2 - ζ v2 ⊗ v1
        let d1 = koszul_differential(&m, 2, 1, 2).unwrap();
        let target = StrandBasis::new(2, 1, 2);
        let pos = |t: &[usize]| target.reduce_tensor(&m, t).unwrap().0;
        assert_eq!(d1.column(0), &SparseVec::from([(pos(&[1, 2]), m.one()), (pos(&[2, 1]), -m.q())]));
        assert!(koszul_differential(&m, 2, 0, 2).unwrap().compose(&d1).is_zero());
    }

    #[test]
    fn strand_tables() {
        let m = Mode::Generic;
        let h = strand_homology(&m, 2, 2).unwrap();
        assert_eq!((h.dims.clone(), h.ranks.clone(), h.betti.clone()), (vec![3, 4, 1], vec![3, 1], vec![0, 0, 0]));
        let h = strand_homology(&m, 3, 1).unwrap();
        assert_eq!((&h.dims[..2], h.ranks[0]), (&[3, 3][..], 3));
        assert!(h.is_exact());
        for n in 2..=4 {
            let h = strand_homology(&m, n, 0).unwrap();
            assert_eq!(h.betti[0], 1);
            assert!(h.is_exact());
        }
    }

    #[test]
    fn exact_and_square_zero() {
        for n in 2..=3 {
            for mode in [Mode::Generic, Mode::root_of_unity(2 * n as u32 + 1).unwrap()] {
                for d in 1..=4 {
                    let h = strand_homology(&mode, n, d).unwrap();
                    assert!(h.is_exact(), "{h:?}");
                    assert_eq!(h.euler_characteristic(), 0);
                    assert_eq!(h.dims[0], binom(d + n - 1, n - 1));
                    assert!(differential_square_failures(&mode, n, d).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn generator_examples() {
        let m = Mode::Generic;
        let k = generator_action(&m, 2, Generator::K(1, 1), Space::Ext(1)).unwrap();
        assert_eq!(k.entry(0, 0), m.q());
        // e_1 (v1 v2) = ζ v1^2
        let e = generator_action(&m, 2, Generator::E(1), Space::Sym(2)).unwrap();
        let b = StrandBasis::of(2, Space::Sym(2));
        let pos = |t: &[usize]| b.reduce_tensor(&m, t).unwrap().0;
        assert_eq!(e.column(pos(&[1, 2])), &SparseVec::from([(pos(&[1, 1]), m.q())]));
        // f_2 kills v3 ∧ v1 ∧ v2's top index
        let f = generator_action(&m, 3, Generator::F(2), Space::Ext(3)).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn generator_relations_on_strands() {
        for mode in [Mode::Generic, Mode::root_of_unity(7).unwrap()] {
            let n = 3;
            let c = mode.q_minus_qinv().inv().unwrap();
            for space in [Space::Strand { p: 1, d: 3 }, Space::Sym(2), Space::Ext(2)] {
                let a = |g| generator_action(&mode, n, g, space).unwrap();
                for i in 1..n {
                    let (e, f) = (a(Generator::E(i)), a(Generator::F(i)));
                    let k = a(Generator::K(i, 1)).compose(&a(Generator::K(i + 1, -1)));
                    let kinv = a(Generator::K(i, -1)).compose(&a(Generator::K(i + 1, 1)));
                    let lhs = e.compose(&f).sub(&f.compose(&e));
                    assert_eq!(lhs, k.sub(&kinv).scaled(&c), "{space} i={i}");
                }
            }
        }
    }

    #[test]
    fn equivariance_small() {
        for (n, d) in [(2, 2), (3, 3)] {
            let r = equivariance_check(&Mode::Generic, n, d).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(equivariance_check(&Mode::root_of_unity(7).unwrap(), 3, 2).unwrap().passed());
    }

    proptest! {
        #[test]
        fn products_are_associative(a in prop::collection::vec(1usize..=4, 0..4),
                                    b in prop::collection::vec(1usize..=4, 0..4),
                                    c in prop::collection::vec(1usize..=4, 0..4)) {
            let m = Mode::Generic;
            let sa = sym_normal(&m, &a);
            let sb = sym_normal(&m, &b);
            let sc = sym_normal(&m, &c);
            let (x, ab) = sym_product(&m, &sa.1, &sb.1);
            let (y, left) = sym_product(&m, &ab, &sc.1);
            let (u, bc) = sym_product(&m, &sb.1, &sc.1);
            let (v, right) = sym_product(&m, &sa.1, &bc);
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(&x * &y, &u * &v);
            let ext = |w: &[usize]| ext_normal(&m, w);
            if let (Some(ea), Some(eb), Some(ec)) = (ext(&a), ext(&b), ext(&c)) {
                let left = ext_product(&m, &ea.1, &eb.1)
                    .and_then(|(x, ab)| ext_product(&m, &ab, &ec.1).map(|(y, r)| (&x * &y, r)));
                let right = ext_product(&m, &eb.1, &ec.1)
                    .and_then(|(x, bc)| ext_product(&m, &ea.1, &bc).map(|(y, r)| (&x * &y, r)));
                prop_assert_eq!(left, right);
            }
        }
    }
}
