//! Degree-one socle, trivial fiber reduction, ranks of linear forms,
//! null-square search and linear changes of variables.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedAlgebra, Presentation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Mat};
use crate::poly::{monomials_of_degree, Monomial, Poly};

/// Basis of `{v ∈ R_1 : v R_1 = 0}`.
pub fn socle_degree1<F: Field>(alg: &GradedAlgebra<F>) -> Mat<F::Elem> {
    let f = &alg.field;
    let e = alg.e();
    let mut rows: Mat<F::Elem> = Vec::new();
    for a in 0..e {
        rows.extend(alg.mult[1][a].iter().cloned());
    }
    if rows.is_empty() {
        return linalg::identity(f, e);
    }
    let mut basis = linalg::nullspace(f, &rows, e);
    // Present the socle in reduced echelon form for stable output.
    let pivots = linalg::rref(f, &mut basis);
    basis.truncate(pivots.len());
    basis
}

/// Result of removing the degree-one socle.
#[derive(Clone, Debug)]
pub struct TrivialFiber<F: Field> {
    /// Presentation of `R' = R/(socle_1)` in the surviving variables.
    pub reduced: Presentation<F>,
    /// Socle forms (coefficient vectors on the variables of `R`).
    pub socle: Mat<F::Elem>,
    /// Indices (in `R`) of the variables kept in `R'`.
    pub kept: Vec<usize>,
}

impl<F: Field> TrivialFiber<F> {
    pub fn s(&self) -> usize {
        self.socle.len()
    }

    /// Lifts a polynomial in the variables of `R'` to the variables of `R`.
    pub fn lift(&self, p: &Poly<F>, nvars: usize) -> Poly<F> {
        let mut out = Poly::zero(nvars);
        for (m, c) in &p.terms {
            let mut big = Monomial::one(nvars);
            for (i, &x) in m.0.iter().enumerate() {
                big.0[self.kept[i]] = x;
            }
            out.terms.insert(big, c.clone());
        }
        out
    }
}

/// Quotient by the degree-one socle, re-presented with `e - s` variables.
pub fn trivial_fiber_reduce<F: Field>(alg: &GradedAlgebra<F>) -> Result<TrivialFiber<F>> {
    let f = &alg.field;
    let e = alg.e();
    let socle = socle_degree1(alg);
    let pivots: Vec<usize> = socle
        .iter()
        .map(|r| r.iter().position(|x| !f.is_zero(x)).expect("nonzero row"))
        .collect();
    let kept: Vec<usize> = (0..e).filter(|i| !pivots.contains(i)).collect();
    let new_names: Vec<String> = kept.iter().map(|&i| alg.names()[i].clone()).collect();
    let ne = kept.len();
    // x_{p_k} = -sum_{j kept} socle[k][j] x_j modulo the socle.
    let images: Vec<Poly<F>> = (0..e)
        .map(|i| {
            if let Some(k) = pivots.iter().position(|&p| p == i) {
                let mut p = Poly::zero(ne);
                for (jj, &j) in kept.iter().enumerate() {
                    p.add_term(f, Monomial::var(ne, jj), &f.neg(&socle[k][j]));
                }
                p
            } else {
                let jj = kept.iter().position(|&j| j == i).unwrap();
                Poly::var(f, ne, jj)
            }
        })
        .collect();
    let mut rows: Mat<F::Elem> = Vec::new();
    let mons = monomials_of_degree(ne, 2);
    for r in &alg.pres.relations {
        let img = if ne == 0 { Poly::zero(0) } else { r.substitute_linear(f, &images) };
        rows.push(mons.iter().map(|m| img.coeff(f, m)).collect());
    }
    let mut relations = Vec::new();
    if !mons.is_empty() {
        let pivots2 = linalg::rref(f, &mut rows);
        for row in rows.iter().take(pivots2.len()) {
            let mut p = Poly::zero(ne);
            for (m, c) in mons.iter().zip(row) {
                p.add_term(f, m.clone(), c);
            }
            relations.push(p);
        }
    }
    let reduced = Presentation::from_polys(f.clone(), new_names, relations)?;
    Ok(TrivialFiber { reduced, socle, kept })
}

/// `dim_k(x R_1)`.
pub fn rank_of<F: Field>(alg: &GradedAlgebra<F>, x: &[F::Elem]) -> usize {
    let m = alg.linear_mult_matrix(x, 1).expect("top >= 2");
    linalg::rank(&alg.field, &m)
}

/// Projective points of `P^{e-1}` over the field: every nonzero vector whose
/// first nonzero coordinate is 1. Over QQ the other coordinates range over
/// integers of absolute value at most 2.
pub struct FormEnumerator<F: Field> {
    field: F,
    e: usize,
    base: u64,
    lead: usize,
    counter: u64,
    limit_for_lead: u64,
}

impl<F: Field> FormEnumerator<F> {
    pub fn new(field: &F, e: usize) -> FormEnumerator<F> {
        let base = match field.spec().order() {
            Some(q) => q.min(u64::MAX as u128) as u64,
            None => 5,
        };
        let mut it = FormEnumerator { field: field.clone(), e, base, lead: 0, counter: 0, limit_for_lead: 0 };
        if e > 0 {
            it.limit_for_lead = it.block(0);
        }
        it
    }

    fn block(&self, lead: usize) -> u64 {
        self.base.saturating_pow((self.e - lead - 1) as u32)
    }

    /// Total number of points produced.
    pub fn count(field: &F, e: usize) -> u128 {
        let base = field.spec().order().unwrap_or(5);
        (0..e).map(|l| base.saturating_pow((e - l - 1) as u32)).sum()
    }
}

impl<F: Field> Iterator for FormEnumerator<F> {
    type Item = Vec<F::Elem>;

    fn next(&mut self) -> Option<Vec<F::Elem>> {
        while self.lead < self.e && self.counter >= self.limit_for_lead {
            self.lead += 1;
            self.counter = 0;
            if self.lead < self.e {
                self.limit_for_lead = self.block(self.lead);
            }
        }
        if self.lead >= self.e {
            return None;
        }
        let mut v = vec![self.field.zero(); self.e];
        v[self.lead] = self.field.one();
        let mut r = self.counter;
        for slot in v.iter_mut().skip(self.lead + 1) {
            *slot = self.field.element(r % self.base);
            r /= self.base;
        }
        self.counter += 1;
        Some(v)
    }
}

/// Outcome of a null-square search: the form (coefficients on the variables)
/// and the log of strategy rungs tried.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NullSquareOutcome<E> {
    pub form: Option<Vec<E>>,
    pub log: Vec<String>,
}

/// Budget for the null-square ladder.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SearchBudget {
    pub enumeration_limit: u128,
    pub random_trials: u64,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { enumeration_limit: 1_000_000, random_trials: 100_000, seed: 0 }
    }
}

/// Whether `x^2 = 0` in `R_2`.
pub fn is_null_square<F: Field>(alg: &GradedAlgebra<F>, x: &[F::Elem]) -> bool {
    let v = alg.linear_coords(x);
    alg.mul(&v, 1, &v, 1).expect("top >= 2").iter().all(|c| alg.field.is_zero(c))
}

/// Finds `x ≠ 0` in `R_1` with `x^2 = 0`: exhaustive projective enumeration
/// when it fits the budget, otherwise seeded random sampling.
pub fn null_square_search<F: Field>(alg: &GradedAlgebra<F>, budget: &SearchBudget) -> NullSquareOutcome<F::Elem> {
    let f = &alg.field;
    let e = alg.e();
    let mut log = Vec::new();
    let count = FormEnumerator::count(f, e);
    let finite = f.spec().order().is_some();
    if count <= budget.enumeration_limit {
        let what = if finite { "all projective points" } else { "integer points of height <= 2" };
        for x in FormEnumerator::new(f, e) {
            if is_null_square(alg, &x) {
                log.push(format!("enumeration over {} ({what}, {count} points): found", f.spec()));
                return NullSquareOutcome { form: Some(x), log };
            }
        }
        log.push(format!("enumeration over {} ({what}, {count} points): none", f.spec()));
        if finite {
            return NullSquareOutcome { form: None, log };
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for _ in 0..budget.random_trials {
        let x: Vec<F::Elem> = (0..e).map(|_| f.random(&mut rng)).collect();
        if x.iter().all(|c| f.is_zero(c)) {
            continue;
        }
        if is_null_square(alg, &x) {
            log.push(format!("random sampling ({} trials, seed {}): found", budget.random_trials, budget.seed));
            return NullSquareOutcome { form: Some(x), log };
        }
    }
    log.push(format!("random sampling ({} trials, seed {}): none", budget.random_trials, budget.seed));
    NullSquareOutcome { form: None, log }
}

/// Rewrites the relations under the substitution `x = M y` (variable names kept).
/// The Hilbert function of the new presentation is checked against the old one.
pub fn apply_change<F: Field>(pres: &Presentation<F>, m: &[Vec<F::Elem>], check_top: usize) -> Result<Presentation<F>> {
    let f = &pres.field;
    let e = pres.nvars();
    if m.len() != e || m.iter().any(|r| r.len() != e) || linalg::rank(f, m) != e {
        return Err(Error::SingularChange);
    }
    let images: Vec<Poly<F>> = (0..e)
        .map(|i| {
            let mut p = Poly::zero(e);
            for j in 0..e {
                p.add_term(f, Monomial::var(e, j), &m[i][j]);
            }
            p
        })
        .collect();
    let mons = monomials_of_degree(e, 2);
    let mut rows: Mat<F::Elem> = pres
        .relations
        .iter()
        .map(|r| {
            let img = r.substitute_linear(f, &images);
            mons.iter().map(|mm| img.coeff(f, mm)).collect()
        })
        .collect();
    let piv = linalg::rref(f, &mut rows);
    let relations: Vec<Poly<F>> = rows
        .iter()
        .take(piv.len())
        .map(|row| {
            let mut p = Poly::zero(e);
            for (mm, c) in mons.iter().zip(row) {
                p.add_term(f, mm.clone(), c);
            }
            p
        })
        .collect();
    let out = Presentation::from_polys(f.clone(), pres.names.clone(), relations)?;
    let before = GradedAlgebra::build(pres, check_top)?.hilbert();
    let after = GradedAlgebra::build(&out, check_top)?.hilbert();
    assert_eq!(before, after, "change of variables altered the Hilbert function");
    Ok(out)
}
