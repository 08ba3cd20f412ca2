//! Complete-intersection witnesses: regular sequences of quadrics `f ⊂ I`
//! with `P = Q/(f) → R` Golod, checked by three independent routes.
//!
//! Route (a) reads `ν(𝔪D)` off the short Tate complex `D`. Route (b)
//! resolves `R` over `P` with the resolution engine and tests two-linearity.
//! Route (c) compares the Poincaré series of `𝕜` over `R` with the bound
//! built from the closed form over `P` and the homology of `D`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedAlgebra, Presentation};
use crate::complexes::{nu_vanishes, scale_by_ideal, BidegreeComplex, NuVerdict};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Echelon};
use crate::poly::{monomials_of_degree, Poly};
use crate::resolution::{pad, resolve_quotient_over, resolve_residue_field, serre_bound, truncate, BettiTable, ResolutionOptions};
use crate::series::{binomial, RationalSeries, Series2};
use crate::structure::FormEnumerator;

/// Largest codimension searched.
pub const MAX_CODIM: usize = 3;

/// `(1-t^2)^d / (1-t)^e`, normalized.
pub fn ci_hilbert_series(e: usize, d: usize) -> RationalSeries {
    let numerator: Vec<i64> = (0..=d).map(|k| binomial(d as u64, k as u64) as i64).collect();
    RationalSeries::new(numerator, e - d)
}

/// Whether the quadrics form a regular sequence in the polynomial ring, by
/// comparing the Hilbert series of `Q/(f)` with `(1-t^2)^d/(1-t)^e`.
pub fn is_regular_sequence<F: Field>(field: &F, names: &[String], f: &[Poly<F>]) -> bool {
    let e = names.len();
    if f.len() > e {
        return false;
    }
    let Ok(p) = Presentation::from_polys(field.clone(), names.to_vec(), f.to_vec()) else {
        return false;
    };
    let Ok(alg) = GradedAlgebra::build(&p, 2) else { return false };
    alg.series == ci_hilbert_series(e, f.len())
}

/// Checks `f ⊂ I`, `d <= 3` and regularity, naming the first violation.
pub fn check_candidate<F: Field>(alg: &GradedAlgebra<F>, f: &[Poly<F>]) -> Result<()> {
    if f.len() > MAX_CODIM {
        return Err(Error::Precondition(format!("codimension {} exceeds {MAX_CODIM}", f.len())));
    }
    for q in f {
        let (_, v) = alg.element_of(q)?;
        if q.degree() != Some(2) || v.iter().any(|c| !alg.field.is_zero(c)) {
            return Err(Error::Precondition(format!(
                "`{}` is not a quadric of the defining ideal",
                q.render(&alg.field, alg.names())
            )));
        }
    }
    if !is_regular_sequence(&alg.field, alg.names(), f) {
        let shown: Vec<String> = f.iter().map(|q| q.render(&alg.field, alg.names())).collect();
        return Err(Error::Precondition(format!("({}) is not a regular sequence", shown.join(", "))));
    }
    Ok(())
}

/// `dim H_i(D)_j = dim Tor_i^P(R, 𝕜)_j` for `i <= n`, `j <= j`.
pub fn tor_over_p<F: Field>(alg: &GradedAlgebra<F>, f: &[Poly<F>], n: usize, j: usize) -> Result<BettiTable> {
    check_candidate(alg, f)?;
    let d = BidegreeComplex::short_tate(alg, n, j, f)?;
    Ok(homology_table(&d))
}

fn homology_table<F: Field>(d: &BidegreeComplex<'_, F>) -> BettiTable {
    let whole = scale_by_ideal(d, None).expect("no ideal");
    BettiTable { beta: whole.homology(), n: d.n, j: d.j, complete_to: d.n, shift: 0 }
}

/// Outcome of checking one candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessStatus {
    /// `P → R` is Golod and `R` is Koszul: all three routes positive.
    Verified,
    /// Serre equality holds while routes (a) and (b) fail, and the Betti
    /// table of `𝕜` over `R` is not diagonal: a Golod map onto a
    /// non-Koszul ring.
    GolodNotKoszul,
    /// All routes negative.
    Rejected,
    /// Routes disagree in a way not explained by non-Koszulness; raise bounds.
    Inconclusive,
}

/// A checked candidate `P = Q/(f)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GolodCertificate {
    pub quadrics: Vec<String>,
    pub codim: usize,
    pub regular_sequence: bool,
    /// Hilbert series of `P`.
    pub p_hilbert: String,
    pub status: WitnessStatus,
    /// Route (a).
    pub nu: NuVerdict,
    /// Route (b): `Tor_i^P(R,𝕜)_j = 0` for `i >= 1` unless `j = i + 1`.
    pub two_linear: bool,
    pub two_linear_witness: Option<(usize, usize, usize)>,
    /// `Tor^P(R,𝕜)` from `H(D)`.
    pub tor_from_d: Vec<Vec<usize>>,
    /// The engine's `Tor^P(R,𝕜)` agrees with `H(D)` on the common rows.
    pub tor_tables_agree: bool,
    /// Route (c).
    pub serre_equality: bool,
    pub serre_inequality: bool,
    /// Number of coefficients `(z^a t^b)` compared.
    pub serre_compared: usize,
    pub first_difference: Option<(usize, usize, i128, i128)>,
    /// Betti table of `𝕜` over `R` is diagonal to the bounds.
    pub r_koszul: bool,
    pub bounds: (usize, usize),
    pub provenance: String,
    pub seed: u64,
}

impl GolodCertificate {
    /// All three routes agree (they are equivalent when `R` is Koszul).
    pub fn routes_agree(&self) -> bool {
        self.nu.vanishes == self.two_linear && self.two_linear == self.serre_equality
    }

    pub fn describe(&self) -> String {
        let what = match self.status {
            WitnessStatus::Verified => "Golod map, R Koszul",
            WitnessStatus::GolodNotKoszul => "Golod map exists, R not Koszul",
            WitnessStatus::Rejected => "not Golod",
            WitnessStatus::Inconclusive => "inconclusive",
        };
        format!(
            "P = Q/({}) codim {}: {what} [nu(mD)=0: {}, 2-linear: {}, Serre equality: {}] (N={}, J={})",
            self.quadrics.join(", "),
            self.codim,
            self.nu.vanishes,
            self.two_linear,
            self.serre_equality,
            self.bounds.0,
            self.bounds.1
        )
    }
}

/// Data shared by all candidates for a fixed ring.
pub struct WitnessContext<'a, F: Field> {
    pub alg: &'a GradedAlgebra<F>,
    pub opts: ResolutionOptions,
    /// Betti table of `𝕜` over `R`.
    pub residue: BettiTable,
}

impl<'a, F: Field> WitnessContext<'a, F> {
    pub fn new(alg: &'a GradedAlgebra<F>, opts: ResolutionOptions) -> Result<WitnessContext<'a, F>> {
        let residue = resolve_residue_field(alg, opts)?.betti();
        Ok(WitnessContext { alg, opts, residue })
    }

    fn n_eff(&self) -> usize {
        self.residue.complete_to.min(self.opts.n)
    }

    /// Route (c) alone, from the table of `H(D)`.
    fn serre(&self, tor: &BettiTable, d: usize) -> (bool, bool, usize, Option<(usize, usize, i128, i128)>) {
        let n = self.n_eff();
        let j = self.opts.j;
        let p_k = Series2::ci_poincare(self.alg.e(), d, n, j);
        let p_r = Series2 { n, j, c: pad(&tor.series(), n) };
        let bound = serre_bound(&p_k, &p_r);
        let actual = truncate(&self.residue.series(), n);
        let diff = actual.first_difference(&bound);
        (diff.is_none(), actual.dominated_by(&bound), (n + 1) * (j + 1), diff)
    }

    /// Full three-route verification of a candidate.
    pub fn verify(&self, f: &[Poly<F>], provenance: &str, seed: u64) -> Result<GolodCertificate> {
        let alg = self.alg;
        check_candidate(alg, f)?;
        let (n, j) = (self.n_eff(), self.opts.j);
        let d_cx = BidegreeComplex::short_tate(alg, n, j, f)?;
        let tor = homology_table(&d_cx);
        // (a)
        let nu = nu_vanishes(&d_cx)?;
        // (b), over P, without D.
        let p_pres = Presentation::from_polys(alg.field.clone(), alg.names().to_vec(), f.to_vec())?;
        let p_alg = GradedAlgebra::build(&p_pres, j)?;
        let over_p = resolve_quotient_over(&p_alg, &alg.pres, ResolutionOptions { n, ..self.opts })?;
        let engine = over_p.betti();
        let two_linear_witness = engine.first_off_strand(1, 1);
        let two_linear = two_linear_witness.is_none();
        let common = engine.complete_to.min(n);
        let tor_tables_agree = (0..=common).all(|i| (0..=j).all(|jj| engine.get(i, jj) == tor.get(i, jj)));
        // (c)
        let (serre_equality, serre_inequality, serre_compared, first_difference) = self.serre(&tor, f.len());
        let r_koszul = self.residue.first_off_strand(0, 0).is_none();
        let status = if !tor_tables_agree {
            WitnessStatus::Inconclusive
        } else if nu.vanishes && two_linear && serre_equality {
            WitnessStatus::Verified
        } else if !nu.vanishes && !two_linear && serre_equality && !r_koszul {
            WitnessStatus::GolodNotKoszul
        } else if !nu.vanishes && !two_linear && !serre_equality {
            WitnessStatus::Rejected
        } else {
            WitnessStatus::Inconclusive
        };
        Ok(GolodCertificate {
            quadrics: f.iter().map(|q| q.render(&alg.field, alg.names())).collect(),
            codim: f.len(),
            regular_sequence: true,
            p_hilbert: p_alg.series.render(),
            status,
            nu,
            two_linear,
            two_linear_witness,
            tor_from_d: tor.beta.clone(),
            tor_tables_agree,
            serre_equality,
            serre_inequality,
            serre_compared,
            first_difference,
            r_koszul,
            bounds: (n.min(engine.complete_to), j),
            provenance: provenance.to_string(),
            seed,
        })
    }
}

/// Three-route verification of a single candidate.
pub fn verify_witness<F: Field>(alg: &GradedAlgebra<F>, f: &[Poly<F>], opts: ResolutionOptions) -> Result<GolodCertificate> {
    WitnessContext::new(alg, opts)?.verify(f, "given", 0)
}

/// Search configuration.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct WitnessConfig {
    pub max_codim: usize,
    pub seed: u64,
    /// Largest number of candidates screened.
    pub budget: usize,
    /// Random combinations tried per codimension.
    pub random_trials: usize,
    pub opts: ResolutionOptions,
}

impl WitnessConfig {
    pub fn new(opts: ResolutionOptions) -> WitnessConfig {
        WitnessConfig { max_codim: MAX_CODIM, seed: 0, budget: 2_000, random_trials: 60, opts }
    }
}

/// Result of a witness search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub certificate: Option<GolodCertificate>,
    /// One line per rung and per fully verified candidate.
    pub attempts: Vec<String>,
    pub screened: usize,
}

/// Searches, in order: prescribed quadrics, subsets of the relations by
/// increasing size, null products `ℓ ℓ'` of linear forms, and seeded random
/// combinations of the relations.
pub fn witness_search<F: Field>(
    alg: &GradedAlgebra<F>,
    prescribed: &[(String, Vec<Poly<F>>)],
    cfg: &WitnessConfig,
) -> Result<SearchOutcome> {
    if alg.top >= 2 && alg.h(2) > 3 {
        return Err(Error::Unsupported(format!("dim R_2 = {} > 3", alg.h(2))));
    }
    let ctx = WitnessContext::new(alg, cfg.opts)?;
    let mut search = Search { ctx: &ctx, cfg, attempts: Vec::new(), screened: 0, seen: Vec::new() };
    let rels = alg.pres.relations.clone();

    for (name, f) in prescribed {
        if let Some(c) = search.try_candidate(f, name)? {
            return Ok(search.finish(Some(c)));
        }
    }
    search.attempts.push(format!("prescribed quadrics: {} candidate(s), none verified", prescribed.len()));

    for d in 0..=cfg.max_codim.min(rels.len()) {
        for idx in subsets(rels.len(), d) {
            let f: Vec<Poly<F>> = idx.iter().map(|&k| rels[k].clone()).collect();
            let name = format!("relations {:?}", idx.iter().map(|k| k + 1).collect::<Vec<_>>());
            if let Some(c) = search.try_candidate(&f, &name)? {
                return Ok(search.finish(Some(c)));
            }
            if search.exhausted() {
                return Ok(search.finish(None));
            }
        }
    }
    search.attempts.push("relation subsets: none verified".into());

    let products = null_products(alg, 24);
    let pool: Vec<Poly<F>> = products.iter().chain(&rels).cloned().collect();
    for d in 1..=cfg.max_codim {
        for idx in subsets(pool.len(), d) {
            if idx.iter().all(|&k| k >= products.len()) {
                continue;
            }
            let f: Vec<Poly<F>> = idx.iter().map(|&k| pool[k].clone()).collect();
            if let Some(c) = search.try_candidate(&f, "null products and relations")? {
                return Ok(search.finish(Some(c)));
            }
            if search.exhausted() {
                return Ok(search.finish(None));
            }
        }
    }
    search.attempts.push(format!("null products ({} found): none verified", products.len()));

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let field = &alg.field;
    for d in 1..=cfg.max_codim {
        for _ in 0..cfg.random_trials {
            let f: Vec<Poly<F>> = (0..d)
                .map(|_| {
                    let mut p = Poly::zero(alg.e());
                    for r in &rels {
                        let c = field.random(&mut rng);
                        p = p.add(field, &r.scale(field, &c));
                    }
                    p
                })
                .collect();
            if f.iter().any(|p| p.is_zero()) {
                continue;
            }
            if let Some(c) = search.try_candidate(&f, &format!("random combination (seed {})", cfg.seed))? {
                return Ok(search.finish(Some(c)));
            }
            if search.exhausted() {
                return Ok(search.finish(None));
            }
        }
    }
    search.attempts.push(format!("random combinations (seed {}): none verified", cfg.seed));
    Ok(search.finish(None))
}

struct Search<'c, 'a, F: Field> {
    ctx: &'c WitnessContext<'a, F>,
    cfg: &'c WitnessConfig,
    attempts: Vec<String>,
    screened: usize,
    /// Spans of candidates already screened (as echelon forms in `Q_2`).
    seen: Vec<Vec<Vec<F::Elem>>>,
}

impl<'c, 'a, F: Field> Search<'c, 'a, F> {
    fn exhausted(&self) -> bool {
        self.screened >= self.cfg.budget
    }

    fn finish(self, certificate: Option<GolodCertificate>) -> SearchOutcome {
        let mut attempts = self.attempts;
        if certificate.is_none() && self.screened >= self.cfg.budget {
            attempts.push(format!("budget of {} candidates exhausted", self.cfg.budget));
        }
        SearchOutcome { certificate, attempts, screened: self.screened }
    }

    /// Screens with regularity and Serre equality, then runs all routes.
    fn try_candidate(&mut self, f: &[Poly<F>], provenance: &str) -> Result<Option<GolodCertificate>> {
        let alg = self.ctx.alg;
        let field = &alg.field;
        // Candidates with the same span define the same P.
        let mut rows: Vec<Vec<F::Elem>> = f.iter().map(|q| alg.pres.quadric_coordinates(q)).collect();
        let piv = linalg::rref(field, &mut rows);
        if piv.len() < f.len() {
            return Ok(None);
        }
        rows.truncate(piv.len());
        if self.seen.contains(&rows) {
            return Ok(None);
        }
        self.seen.push(rows);
        self.screened += 1;
        if check_candidate(alg, f).is_err() {
            return Ok(None);
        }
        let (n, j) = (self.ctx.n_eff(), self.ctx.opts.j);
        let d_cx = BidegreeComplex::short_tate(alg, n, j, f)?;
        let tor = homology_table(&d_cx);
        let (eq, _, _, _) = self.ctx.serre(&tor, f.len());
        if !eq {
            return Ok(None);
        }
        let cert = self.ctx.verify(f, provenance, self.cfg.seed)?;
        self.attempts.push(format!("{provenance}: {}", cert.describe()));
        match cert.status {
            WitnessStatus::Verified | WitnessStatus::GolodNotKoszul => Ok(Some(cert)),
            _ => Ok(None),
        }
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Up to `limit` quadrics `ℓ ℓ'` lying in `I`, pairwise independent, found
/// by scanning pairs of projective points in enumeration order.
pub fn null_products<F: Field>(alg: &GradedAlgebra<F>, limit: usize) -> Vec<Poly<F>> {
    let f = &alg.field;
    let e = alg.e();
    let points: Vec<Vec<F::Elem>> = FormEnumerator::new(f, e).take(400).collect();
    let mons = monomials_of_degree(e, 2);
    let mut span = Echelon::new(mons.len());
    let mut out = Vec::new();
    for (a, u) in points.iter().enumerate() {
        let uu = alg.linear_coords(u);
        for v in &points[a..] {
            let prod = alg.mul(&uu, 1, &alg.linear_coords(v), 1).expect("top >= 2");
            if prod.iter().any(|c| !f.is_zero(c)) {
                continue;
            }
            let q = alg.form_poly(u).mul(f, &alg.form_poly(v));
            if span.insert(f, alg.pres.quadric_coordinates(&q)) {
                out.push(q);
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse_polynomial;
    use crate::resolution::resolve_residue_field;

    fn alg<F: Field>(f: F, vars: &[&str], rels: &[&str], top: usize) -> GradedAlgebra<F> {
        let names = vars.iter().map(|s| s.to_string()).collect();
        let rels: Vec<String> = rels.iter().map(|s| s.to_string()).collect();
        GradedAlgebra::build(&Presentation::new(f, names, &rels).unwrap(), top).unwrap()
    }

    fn polys<F: Field>(a: &GradedAlgebra<F>, s: &[&str]) -> Vec<Poly<F>> {
        s.iter().map(|t| parse_polynomial(&a.field, t, a.names()).unwrap()).collect()
    }

    #[test]
    fn regular_sequences() {
        let q = Rationals;
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let p = |s: &str| parse_polynomial(&q, s, &names).unwrap();
        assert!(is_regular_sequence(&q, &names, &[p("x^2"), p("y^2")]));
        assert_eq!(ci_hilbert_series(3, 2).coefficients(4), vec![1, 3, 4, 4, 4]);
        assert!(!is_regular_sequence(&q, &names, &[p("x^2"), p("x*y")]));
        assert!(is_regular_sequence(&q, &names, &[]));
    }

    #[test]
    fn ci_closed_form_matches_resolution() {
        let f3 = PrimeField::new(3).unwrap();
        for (e, rels) in [(2, vec!["x^2"]), (3, vec!["x^2", "y*z"]), (3, vec!["x^2", "y^2", "z^2"])] {
            let vars = ["x", "y", "z"];
            let a = alg(f3, &vars[..e], &rels, 8);
            let b = resolve_residue_field(&a, ResolutionOptions::new(6, 8)).unwrap().betti();
            assert_eq!(b.series(), Series2::ci_poincare(e, rels.len(), 6, 8), "{rels:?}");
        }
    }

    #[test]
    fn tor_over_p_examples() {
        let q = Rationals;
        let a = alg(q, &["x", "y"], &["x^2", "y^2"], 8);
        let t = tor_over_p(&a, &a.pres.relations, 5, 8).unwrap();
        assert_eq!(t.get(0, 0), 1);
        assert!((1..=5).all(|i| t.total(i) == 0));
        // d = 0 gives Tor over Q, matching the engine.
        let b = alg(q, &["x", "y", "z"], &["x^2", "x*y", "y*z"], 8);
        let t = tor_over_p(&b, &[], 4, 8).unwrap();
        let qa = crate::resolution::ambient_polynomial_ring(&b.pres, 8).unwrap();
        let eng = resolve_quotient_over(&qa, &b.pres, ResolutionOptions::new(4, 8)).unwrap().betti();
        assert_eq!(t.beta, eng.beta);
        assert!(matches!(tor_over_p(&b, &polys(&b, &["z^2"]), 3, 6), Err(Error::Precondition(_))));
    }

    #[test]
    fn hypersurface_witness() {
        let a = alg(Rationals, &["x", "y"], &["x^2", "x*y"], 10);
        let c = verify_witness(&a, &polys(&a, &["x^2"]), ResolutionOptions::new(8, 10)).unwrap();
        assert_eq!(c.status, WitnessStatus::Verified, "{c:?}");
        assert!(c.routes_agree() && c.serre_inequality && c.tor_tables_agree);
    }

    #[test]
    fn identity_witness_on_complete_intersection() {
        let f2 = PrimeField::new(2).unwrap();
        let a = alg(f2, &["x", "y"], &["x^2", "y^2"], 10);
        let c = verify_witness(&a, &a.pres.relations, ResolutionOptions::new(8, 10)).unwrap();
        assert_eq!(c.status, WitnessStatus::Verified);
        let none = verify_witness(&a, &[], ResolutionOptions::new(8, 10)).unwrap();
        assert_eq!(none.status, WitnessStatus::Rejected, "{none:?}");
        assert!(none.serre_inequality);
    }

    #[test]
    fn search_is_deterministic() {
        let f3 = PrimeField::new(3).unwrap();
        let a = alg(f3, &["x", "y"], &["x*y", "x^2-y^2"], 10);
        let cfg = WitnessConfig::new(ResolutionOptions::new(8, 10));
        let one = witness_search(&a, &[], &cfg).unwrap();
        let two = witness_search(&a, &[], &cfg).unwrap();
        let c = one.certificate.clone().unwrap();
        assert_eq!(c.status, WitnessStatus::Verified);
        assert!(c.codim <= 2);
        assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&two).unwrap());
        let poly = alg(f3, &["x", "y"], &[], 10);
        let c = witness_search(&poly, &[], &cfg).unwrap().certificate.unwrap();
        assert_eq!(c.codim, 0);
    }

    #[test]
    fn exceptional_ring_gets_golod_map_only() {
        let f2 = PrimeField::new(2).unwrap();
        let a = alg(f2, &["x", "y", "z"], &["x*y", "x^2+y*z", "z^2"], 10);
        let cfg = WitnessConfig::new(ResolutionOptions::new(8, 10));
        let out = witness_search(&a, &[], &cfg).unwrap();
        let c = out.certificate.expect("witness");
        assert_eq!(c.status, WitnessStatus::GolodNotKoszul, "{:?}", out.attempts);
        assert!(c.codim <= 3 && !c.r_koszul);
    }
}
