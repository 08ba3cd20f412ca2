//! Property suites: complexes square to zero, Euler characteristics match,
//! Hilbert functions agree with their rational series and with an
//! independent rank computation, Betti numbers do not depend on basis
//! choices, and verdicts transfer along trivial fiber extensions.

mod common;

use proptest::prelude::*;
use quadgolod::algebra::{GradedAlgebra, Presentation};
use quadgolod::complexes::{euler_characteristics, scale_by_ideal, BidegreeComplex};
use quadgolod::corpus::{base_entries, CorpusEntry};
use quadgolod::field::{Field, PrimeField};
use quadgolod::poly::{parse_polynomial, Poly};
use quadgolod::resolution::{koszul_test, resolve_residue_field, ResolutionOptions};
use quadgolod::witness::{verify_witness, witness_search, WitnessConfig};

const P: u64 = 3;
const TOP: usize = 6;
const N: usize = 4;

fn names(e: usize) -> Vec<String> {
    (1..=e).map(|i| format!("x{i}")).collect()
}

/// Renders a coefficient vector on the degree-2 monomials of `e` variables
/// (ordered x1^2, x1x2, ..., xe^2) as a polynomial string.
fn quadric_text(e: usize, coeffs: &[u64]) -> String {
    let v = names(e);
    let mut terms = Vec::new();
    let mut k = 0;
    for a in 0..e {
        for b in a..e {
            if coeffs[k] != 0 {
                let m = if a == b { format!("{}^2", v[a]) } else { format!("{}*{}", v[a], v[b]) };
                terms.push(format!("{}*{m}", coeffs[k]));
            }
            k += 1;
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Random quadratic presentations over GF(3) in two or three variables.
fn ring() -> impl Strategy<Value = (usize, Vec<String>)> {
    (2usize..=3).prop_flat_map(|e| {
        let len = e * (e + 1) / 2;
        let rel = proptest::collection::vec(0..P, len).prop_map(move |c| quadric_text(e, &c));
        (Just(e), proptest::collection::vec(rel, 0..=len.min(4)))
    })
}

fn build(e: usize, rels: &[String]) -> Option<GradedAlgebra<PrimeField>> {
    let f = PrimeField::new(P).unwrap();
    let pres = Presentation::new(f, names(e), rels).ok()?;
    GradedAlgebra::build(&pres, TOP).ok()
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn differentials_square_to_zero((e, rels) in ring()) {
        let Some(alg) = build(e, &rels) else { return Ok(()) };
        let k = BidegreeComplex::koszul(&alg, N, TOP).unwrap();
        prop_assert!(k.check_d_squared());
        let quads: Vec<Poly<PrimeField>> = alg.pres.relations.iter().take(2).cloned().collect();
        let d = BidegreeComplex::short_tate(&alg, N, TOP, &quads).unwrap();
        prop_assert!(d.check_d_squared());
        let res = resolve_residue_field(&alg, ResolutionOptions::new(N, TOP)).unwrap();
        prop_assert!(res.is_complex());
        prop_assert!(res.is_minimal());
    }

    #[test]
    fn euler_characteristic_per_internal_degree((e, rels) in ring()) {
        let Some(alg) = build(e, &rels) else { return Ok(()) };
        let k = BidegreeComplex::koszul(&alg, TOP, TOP).unwrap();
        let whole = scale_by_ideal(&k, None).unwrap();
        for j in 0..=TOP {
            let (chain, hom) = euler_characteristics(&whole, j);
            prop_assert_eq!(chain, hom, "internal degree {}", j);
            // Σ_i (-1)^i C(e,i) h_{j-i}, the coefficient of H_R(t)(1-t)^e.
            let expected: i64 = (0..=j.min(e)).map(|i| {
                let s = if i % 2 == 0 { 1 } else { -1 };
                s * binom(e as i64, i as i64) * alg.h(j - i) as i64
            }).sum();
            prop_assert_eq!(chain, expected, "internal degree {}", j);
        }
    }

    #[test]
    fn hilbert_basis_count_matches_series_and_rank_oracle((e, rels) in ring()) {
        let Some(alg) = build(e, &rels) else { return Ok(()) };
        let oracle = common::hilbert_oracle(&names(e), &rels, P, TOP);
        for d in 0..=TOP {
            prop_assert_eq!(alg.h(d) as i64, alg.series.coefficient(d), "degree {}", d);
            prop_assert_eq!(alg.h(d), oracle[d], "degree {}", d);
        }
    }

    #[test]
    fn betti_numbers_ignore_basis_shuffles((e, rels) in ring()) {
        let Some(alg) = build(e, &rels) else { return Ok(()) };
        let plain = resolve_residue_field(&alg, ResolutionOptions::new(N, TOP)).unwrap().betti();
        for seed in 0..5u64 {
            let opts = ResolutionOptions { seed: Some(seed), ..ResolutionOptions::new(N, TOP) };
            let shuffled = resolve_residue_field(&alg, opts).unwrap().betti();
            prop_assert_eq!(&plain.beta, &shuffled.beta, "seed {}", seed);
        }
    }
}

#[test]
fn betti_numbers_ignore_basis_shuffles_on_corpus() {
    let f = PrimeField::new(3).unwrap();
    for name in ["artinian-e4-a-gf3", "dim2-c-e3-gf3", "annihilator-cover-e4-gf3"] {
        let e = entry(name);
        let alg = GradedAlgebra::build(&e.text().unwrap().instantiate(&f).unwrap(), 8).unwrap();
        let opts = ResolutionOptions::new(5, 8);
        let plain = resolve_residue_field(&alg, opts).unwrap().betti();
        for seed in 0..5u64 {
            let shuffled = resolve_residue_field(&alg, ResolutionOptions { seed: Some(seed), ..opts }).unwrap().betti();
            assert_eq!(plain.beta, shuffled.beta, "{name}, seed {seed}");
        }
    }
}

fn entry(name: &str) -> CorpusEntry {
    base_entries().unwrap().into_iter().find(|e| e.name == name).unwrap_or_else(|| panic!("no entry {name}"))
}

/// Koszul verdict and witness status of `R'` and of `R' ×_k k[u]/(u^2)`
/// with the same quadrics, for a corpus entry over a prime field.
fn transfer_pair<F: Field>(base: &CorpusEntry, f: &F) -> (bool, bool, String, String) {
    let variant = base.trivial_fiber().unwrap();
    let opts = ResolutionOptions::new(6, 8);
    let a = GradedAlgebra::build(&base.text().unwrap().instantiate(f).unwrap(), 8).unwrap();
    let b = GradedAlgebra::build(&variant.text().unwrap().instantiate(f).unwrap(), 8).unwrap();
    let ka = koszul_test(&a, opts, false).unwrap();
    let kb = koszul_test(&b, opts, false).unwrap();
    let found = witness_search(&a, &[], &WitnessConfig::new(opts)).unwrap();
    let cert = found.certificate.expect("witness on the base ring");
    let lifted: Vec<Poly<F>> =
        cert.quadrics.iter().map(|q| parse_polynomial(f, q, b.names()).unwrap()).collect();
    let on_variant = verify_witness(&b, &lifted, opts).unwrap();
    (ka.koszul, kb.koszul, format!("{:?}", cert.status), format!("{:?}", on_variant.status))
}

#[test]
fn trivial_fiber_transfer_of_verdicts() {
    let names = [
        "dali-i-gf5",
        "dali-iii-gf5",
        "nk1-alpha0-beta1-gf2",
        "nk2-gamma1-gf2",
        "nk3-alpha0-gamma1-gf2",
        "artinian-e3-a-gf3",
        "artinian-e4-b-gf3",
        "case-8-gf3",
        "ci-xy-gf2",
        "dim2-a-e3-gf3",
        "dim2-c-e3-gf3",
        "square-plus-power-e4-gf3",
    ];
    assert!(names.len() >= 10);
    for name in names {
        let e = entry(name);
        let spec = e.text().unwrap().field;
        let f = PrimeField::new(spec.characteristic).unwrap();
        let (ka, kb, sa, sb) = transfer_pair(&e, &f);
        assert_eq!(ka, kb, "{name}: Koszul verdicts differ");
        assert_eq!(ka, e.expect.koszul, "{name}: Koszul verdict");
        assert_eq!(sa, sb, "{name}: witness status differs after adding a socle variable");
    }
}
