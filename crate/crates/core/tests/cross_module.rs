use qkoszul::cohomology::bwb;
use qkoszul::config::RunConfig;
use qkoszul::koszul::{koszul_differential, strand_homology};
use qkoszul::qalgebra::QAlgebra;
use qkoszul::qmatrix::{normal_form, tilde_values, XiPoly};
use qkoszul::verify::{run_suite, Suite};
use qkoszul::weights::{kostant_sets, Weight};
use qkoszul::{Error, Mode};

#[test]
fn generic_ranks_specialise() {
    // a generic rank can only drop at ζ; for these orders it does not
    for (n, m) in [(2, 5), (3, 7), (3, 9)] {
        let z = Mode::root_of_unity(m).unwrap();
        for d in 1..=4 {
            for p in 0..n.min(d) {
                let g = koszul_differential(&Mode::Generic, n, p, d).unwrap();
                assert_eq!(g.rank(), koszul_differential(&z, n, p, d).unwrap().rank(), "n={n} p={p} d={d}");
            }
        }
    }
}

#[test]
fn euler_characteristic_of_a_strand_vanishes() {
    for n in 2..=4 {
        for d in 1..=5 {
            assert_eq!(strand_homology(&Mode::Generic, n, d).unwrap().euler_characteristic(), 0);
        }
    }
}

#[test]
fn kostant_weights_agree_across_modes() {
    let z = Mode::root_of_unity(9).unwrap();
    for (_, x) in kostant_sets(4, 5).unwrap().pairs {
        let lambda = x.lambda(4);
        assert_eq!(bwb(&lambda, &Mode::Generic).unwrap(), bwb(&lambda, &z).unwrap());
    }
}

#[test]
fn tilde_normal_forms_are_functional_identities() {
    let z = Mode::root_of_unity(11).unwrap();
    let alg = QAlgebra::new(&z, 4, 6).unwrap();
    for src in ["xt[2,4] xt[1,2]", "xt[3,4] xt[1,3] xt[2,3]", "xt[1,4] xt[2,3] xt[1,2]"] {
        let p = XiPoly::parse(src, &z, 4).unwrap();
        let nf = normal_form(&p);
        let beta = degree_of(src);
        assert_eq!(tilde_values(&alg, &p, &beta).unwrap(), tilde_values(&alg, &nf, &beta).unwrap(), "{src}");
    }
}

fn degree_of(src: &str) -> Weight {
    let mut m = vec![0i64; 3];
    for (r, s) in src.split_whitespace().map(|t| {
        let inner = &t[3..t.len() - 1];
        let (r, s) = inner.split_once(',').unwrap();
        (r.parse::<usize>().unwrap(), s.parse::<usize>().unwrap())
    }) {
        (r..s).for_each(|i| m[i - 1] += 1);
    }
    Weight::from_simple_coords(&m)
}

#[test]
fn suites_reject_small_ell() {
    let cfg = RunConfig::new(4).with_zeta_order(7); // ℓ = 7
    assert!(run_suite(Suite::Bwb, &cfg).unwrap().passed);
    let cfg = RunConfig::new(4).with_zeta_order(4); // ℓ = 2
    assert_eq!(run_suite(Suite::Bwb, &cfg).unwrap_err(), Error::EllBelowRank { ell: 2, n: 4 });
}
