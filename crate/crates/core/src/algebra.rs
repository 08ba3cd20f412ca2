//! Quadratic presentations `R = Q/I` and their truncated graded pieces with
//! multiplication matrices.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::groebner::{buchberger, normal_form, standard_monomials, GroebnerBasis};
use crate::linalg::{self, Mat};
use crate::poly::{monomials_of_degree, parse_polynomial, Monomial, Poly, TermOrder};
use crate::series::{monomial_hilbert_series, RationalSeries};

/// Default internal-degree truncation.
pub const DEFAULT_TRUNCATION: usize = 10;

/// A presentation file before the coefficient field is instantiated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationText {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub truncation: Option<usize>,
}

impl PresentationText {
    /// Parses the line format `field: ...`, `vars: ...`, `rel: ...`, `truncation: J`.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<PresentationText> {
        let mut field = None;
        let mut vars = None;
        let mut relations = Vec::new();
        let mut truncation = None;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `key: value`, got `{line}`")))?;
            let value = value.trim();
            match key.trim() {
                "field" => field = Some(value.parse::<FieldSpec>()?),
                "vars" => {
                    let v: Vec<String> = value
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect();
                    vars = Some(v);
                }
                "rel" => relations.push(value.to_string()),
                "truncation" => {
                    truncation = Some(value.parse::<usize>().map_err(|_| {
                        Error::Parse(format!("bad truncation `{value}`"))
                    })?)
                }
                other => return Err(Error::Parse(format!("unknown key `{other}`"))),
            }
        }
        let vars = vars.ok_or_else(|| Error::Parse("missing `vars:` line".into()))?;
        Ok(PresentationText {
            field: field.ok_or_else(|| Error::Parse("missing `field:` line".into()))?,
            vars,
            relations,
            truncation,
        })
    }

    pub fn render(&self) -> String {
        let mut s = format!("field: {}\nvars: {}\n", self.field, self.vars.join(","));
        for r in &self.relations {
            s.push_str(&format!("rel: {r}\n"));
        }
        if let Some(t) = self.truncation {
            s.push_str(&format!("truncation: {t}\n"));
        }
        s
    }

    pub fn with_field(&self, field: FieldSpec) -> PresentationText {
        PresentationText { field, ..self.clone() }
    }

    pub fn instantiate<F: Field>(&self, field: &F) -> Result<Presentation<F>> {
        if field.spec() != self.field {
            return Err(Error::UnsupportedField(format!(
                "presentation over {} instantiated over {}",
                self.field,
                field.spec()
            )));
        }
        Presentation::new(field.clone(), self.vars.clone(), &self.relations)
    }
}

/// A validated quadratic presentation.
#[derive(Clone)]
pub struct Presentation<F: Field> {
    pub field: F,
    pub names: Vec<String>,
    pub relations: Vec<Poly<F>>,
}

impl<F: Field> fmt::Debug for Presentation<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Presentation[{}; {}]", self.names.join(","), self.relation_strings().join(", "))
    }
}

impl<F: Field> Presentation<F> {
    pub fn new(field: F, names: Vec<String>, relations: &[String]) -> Result<Presentation<F>> {
        let rels = relations
            .iter()
            .map(|r| parse_polynomial(&field, r, &names))
            .collect::<Result<Vec<_>>>()?;
        Presentation::from_polys(field, names, rels)
    }

    /// Validates degree, homogeneity and linear independence of the relations.
    pub fn from_polys(field: F, names: Vec<String>, relations: Vec<Poly<F>>) -> Result<Presentation<F>> {
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(Error::InvalidPresentation(format!("duplicate variable `{n}`")));
            }
        }
        for r in &relations {
            if r.is_zero() {
                return Err(Error::DependentRelations("zero relation".into()));
            }
            if !r.is_homogeneous() || r.degree() != Some(2) {
                return Err(Error::InvalidPresentation(format!(
                    "relation `{}` is not a homogeneous quadric",
                    r.render(&field, &names)
                )));
            }
        }
        let p = Presentation { field, names, relations };
        p.check_independent()?;
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.render(&self.field, &self.names)).collect()
    }

    pub fn to_text(&self) -> PresentationText {
        PresentationText {
            field: self.field.spec(),
            vars: self.names.clone(),
            relations: self.relation_strings(),
            truncation: None,
        }
    }

    /// Coordinates of a quadric in the monomial basis of `Q_2`.
    pub fn quadric_coordinates(&self, q: &Poly<F>) -> Vec<F::Elem> {
        monomials_of_degree(self.nvars(), 2).iter().map(|m| q.coeff(&self.field, m)).collect()
    }

    fn check_independent(&self) -> Result<()> {
        let rows: Mat<F::Elem> = self.relations.iter().map(|r| self.quadric_coordinates(r)).collect();
        if rows.is_empty() {
            return Ok(());
        }
        let ncols = rows[0].len();
        let t = linalg::transpose(&rows, ncols);
        let dep = linalg::nullspace(&self.field, &t, rows.len());
        if let Some(v) = dep.first() {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !self.field.is_zero(c))
                .map(|(i, c)| format!("({})*rel{}", self.field.display(c), i + 1))
                .collect();
            return Err(Error::DependentRelations(format!("{} = 0", terms.join(" + "))));
        }
        Ok(())
    }
}

/// The graded pieces `R_0, ..., R_J` of `R = Q/I` in a standard-monomial basis.
#[derive(Clone)]
pub struct GradedAlgebra<F: Field> {
    pub field: F,
    pub pres: Presentation<F>,
    pub gb: GroebnerBasis<F>,
    /// Truncation degree J.
    pub top: usize,
    pub basis: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    /// `mult[d][a]` is the `h_{d+1} x h_d` matrix of multiplication by `x_a` on `R_d`.
    pub mult: Vec<Vec<Mat<F::Elem>>>,
    pub series: RationalSeries,
}

impl<F: Field> fmt::Debug for GradedAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedAlgebra[{:?}; h={:?}]", self.pres, self.hilbert())
    }
}

impl<F: Field> GradedAlgebra<F> {
    /// Builds bases and multiplication matrices up to internal degree `top`.
    pub fn build(pres: &Presentation<F>, top: usize) -> Result<GradedAlgebra<F>> {
        if top < 2 {
            return Err(Error::Precondition("truncation must be at least 2".into()));
        }
        let field = pres.field.clone();
        let e = pres.nvars();
        let gb = buchberger(&field, &pres.relations, &TermOrder::grevlex(e));
        // Decreasing term order, so that R_1 has basis x_1, ..., x_e in variable order.
        let basis: Vec<Vec<Monomial>> = (0..=top)
            .map(|d| {
                let mut b = standard_monomials(&gb, d);
                b.reverse();
                b
            })
            .collect();
        let index: Vec<HashMap<Monomial, usize>> = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        let mut mult = Vec::with_capacity(top);
        for d in 0..top {
            let mut per_var = Vec::with_capacity(e);
            for a in 0..e {
                let xa = Monomial::var(e, a);
                let mut m = linalg::zeros(&field, basis[d + 1].len(), basis[d].len());
                for (col, mono) in basis[d].iter().enumerate() {
                    let prod = mono.mul(&xa);
                    if let Some(&row) = index[d + 1].get(&prod) {
                        m[row][col] = field.one();
                    } else {
                        let nf = normal_form(&field, &Poly::monomial(&field, prod, field.one()), &gb);
                        for (mm, c) in &nf.terms {
                            m[index[d + 1][mm]][col] = c.clone();
                        }
                    }
                }
                per_var.push(m);
            }
            mult.push(per_var);
        }
        let series = monomial_hilbert_series(e, &gb.leads);
        let alg = GradedAlgebra { field, pres: pres.clone(), gb, top, basis, index, mult, series };
        for d in 0..=top {
            assert_eq!(
                alg.h(d) as i64,
                alg.series.coefficient(d),
                "basis count and rational Hilbert series disagree in degree {d}"
            );
        }
        Ok(alg)
    }

    pub fn e(&self) -> usize {
        self.pres.nvars()
    }

    pub fn h(&self, d: usize) -> usize {
        self.basis.get(d).map_or(0, |b| b.len())
    }

    pub fn hilbert(&self) -> Vec<usize> {
        (0..=self.top).map(|d| self.h(d)).collect()
    }

    /// Artinian iff every variable has a pure power among the leading monomials.
    pub fn is_artinian(&self) -> bool {
        (0..self.e()).all(|i| {
            self.gb
                .leads
                .iter()
                .any(|m| m.0[i] > 0 && m.0.iter().enumerate().all(|(j, &x)| j == i || x == 0))
        })
    }

    pub fn names(&self) -> &[String] {
        &self.pres.names
    }

    pub fn zero_vec(&self, d: usize) -> Vec<F::Elem> {
        vec![self.field.zero(); self.h(d)]
    }

    pub fn unit_form(&self, a: usize) -> Vec<F::Elem> {
        let mut v = self.zero_vec(1);
        v[self.index[1][&Monomial::var(self.e(), a)]] = self.field.one();
        v
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.top {
            Err(Error::Truncation { requested: d, bound: self.top })
        } else {
            Ok(())
        }
    }

    /// `x_a * v` for `v` in `R_d`.
    pub fn mul_var(&self, a: usize, v: &[F::Elem], d: usize) -> Result<Vec<F::Elem>> {
        self.check_degree(d + 1)?;
        Ok(linalg::mat_vec(&self.field, &self.mult[d][a], v))
    }

    /// Coordinates in `R_1` of a linear form given by its coefficients on x_1..x_e.
    pub fn linear_coords(&self, coeffs: &[F::Elem]) -> Vec<F::Elem> {
        let mut v = self.zero_vec(1);
        for (a, c) in coeffs.iter().enumerate() {
            v[self.index[1][&Monomial::var(self.e(), a)]] = c.clone();
        }
        v
    }

    /// Inverse of [`GradedAlgebra::linear_coords`].
    pub fn linear_coeffs(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        (0..self.e()).map(|a| v[self.index[1][&Monomial::var(self.e(), a)]].clone()).collect()
    }

    /// `l * v` for a linear form `l` (degree-1 coordinates) and `v` in `R_d`.
    pub fn mul_linear(&self, l: &[F::Elem], v: &[F::Elem], d: usize) -> Result<Vec<F::Elem>> {
        self.check_degree(d + 1)?;
        let f = &self.field;
        let mut out = self.zero_vec(d + 1);
        let coeffs = self.linear_coeffs(l);
        for (a, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let w = linalg::mat_vec(f, &self.mult[d][a], v);
            for (o, x) in out.iter_mut().zip(&w) {
                *o = f.add(o, &f.mul(c, x));
            }
        }
        Ok(out)
    }

    /// Matrix of multiplication by the linear form `l` from `R_d` to `R_{d+1}`.
    pub fn linear_mult_matrix(&self, l: &[F::Elem], d: usize) -> Result<Mat<F::Elem>> {
        self.check_degree(d + 1)?;
        let f = &self.field;
        let coeffs = self.linear_coeffs(l);
        let mut m = linalg::zeros(f, self.h(d + 1), self.h(d));
        for (a, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (r, row) in self.mult[d][a].iter().enumerate() {
                for (k, x) in row.iter().enumerate() {
                    if !f.is_zero(x) {
                        m[r][k] = f.add(&m[r][k], &f.mul(c, x));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Product of `u` in `R_p` and `v` in `R_q`.
    pub fn mul(&self, u: &[F::Elem], p: usize, v: &[F::Elem], q: usize) -> Result<Vec<F::Elem>> {
        self.check_degree(p + q)?;
        let f = &self.field;
        let mut out = self.zero_vec(p + q);
        for (i, c) in u.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let mono = &self.basis[p][i];
            let mut w = v.to_vec();
            let mut deg = q;
            for (a, &x) in mono.0.iter().enumerate() {
                for _ in 0..x {
                    w = linalg::mat_vec(f, &self.mult[deg][a], &w);
                    deg += 1;
                }
            }
            for (o, x) in out.iter_mut().zip(&w) {
                *o = f.add(o, &f.mul(c, x));
            }
        }
        Ok(out)
    }

    /// Image in `R_d` of a homogeneous polynomial of degree `d`.
    pub fn element_of(&self, p: &Poly<F>) -> Result<(usize, Vec<F::Elem>)> {
        let d = p.degree().unwrap_or(0);
        if !p.is_homogeneous() {
            return Err(Error::Precondition("element_of needs a homogeneous polynomial".into()));
        }
        self.check_degree(d)?;
        let nf = normal_form(&self.field, p, &self.gb);
        let mut v = self.zero_vec(d);
        for (m, c) in &nf.terms {
            v[self.index[d][m]] = c.clone();
        }
        Ok((d, v))
    }

    /// The polynomial combination of standard monomials represented by `v` in `R_d`.
    pub fn poly_of(&self, v: &[F::Elem], d: usize) -> Poly<F> {
        let mut p = Poly::zero(self.e());
        for (i, c) in v.iter().enumerate() {
            p.add_term(&self.field, self.basis[d][i].clone(), c);
        }
        p
    }

    /// Linear form polynomial from coefficient vector on the variables.
    pub fn form_poly(&self, coeffs: &[F::Elem]) -> Poly<F> {
        let mut p = Poly::zero(self.e());
        for (a, c) in coeffs.iter().enumerate() {
            p.add_term(&self.field, Monomial::var(self.e(), a), c);
        }
        p
    }

    pub fn render(&self, v: &[F::Elem], d: usize) -> String {
        self.poly_of(v, d).render(&self.field, self.names())
    }

    pub fn render_form(&self, coeffs: &[F::Elem]) -> String {
        self.form_poly(coeffs).render(&self.field, self.names())
    }

    /// Position of a monomial in the degree-`d` basis.
    pub fn monomial_index(&self, d: usize, m: &Monomial) -> Option<usize> {
        self.index.get(d).and_then(|ix| ix.get(m)).copied()
    }
}
