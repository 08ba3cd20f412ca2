//! Bigraded complexes over `R`: the Koszul complex `K = R⟨X_1..X_e⟩`, short
//! Tate complexes `D = K⟨Z_1..Z_d | ∂Z_k = z_k⟩` with divided-power variables
//! of degree 2, subcomplexes `𝔞D`, homology, and the maps `ν` induced on
//! homology by inclusions `𝔞'D ⊆ 𝔞D`.
//!
//! A basis label is `X_S Z^{(m)}` with `S` strictly increasing; its weight
//! `|S| + 2|m|` is both its homological and its internal degree, so
//! `C_{i,j} = ⊕_{weight(L) = i} R_{j-i}·L`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::IdealSlice;
use crate::linalg::{self, Echelon, Mat};
use crate::poly::Poly;

/// `X_S Z^{(m)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub ext: Vec<usize>,
    pub div: Vec<u16>,
}

impl Label {
    pub fn weight(&self) -> usize {
        self.ext.len() + 2 * self.div.iter().map(|&m| m as usize).sum::<usize>()
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self.ext.iter().map(|a| format!("X{}", a + 1)).collect();
        for (k, &m) in self.div.iter().enumerate() {
            match m {
                0 => {}
                1 => parts.push(format!("Z{}", k + 1)),
                _ => parts.push(format!("Z{}^({m})", k + 1)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A cycle of `K_1` of internal degree 2: coefficients (in `R_1`) of `X_1..X_e`.
pub type KoszulCycle<E> = Vec<Vec<E>>;

/// The complex `K⟨Z_1..Z_d⟩` truncated to homological degree `<= n + 1` and
/// internal degree `<= j`.
#[derive(Clone)]
pub struct BidegreeComplex<'a, F: Field> {
    pub alg: &'a GradedAlgebra<F>,
    /// Homological bound `N`; labels are kept to weight `N + 1` so that
    /// boundaries into degree `N` are available.
    pub n: usize,
    /// Internal bound `J`.
    pub j: usize,
    pub cycles: Vec<KoszulCycle<F::Elem>>,
    labels: Vec<Vec<Label>>,
    index: Vec<HashMap<Label, usize>>,
}

/// Labels of weight `w` with `e` exterior and `d` divided-power variables.
fn labels_of_weight(e: usize, d: usize, w: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for s in 0..=e.min(w) {
        if (w - s) % 2 == 1 {
            continue;
        }
        let half = (w - s) / 2;
        if d == 0 && half > 0 {
            continue;
        }
        let divs = compositions(half, d);
        for ext in subsets(e, s) {
            for div in &divs {
                out.push(Label { ext: ext.clone(), div: div.clone() });
            }
        }
    }
    out
}

fn subsets(e: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, e: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for a in start..e {
            cur.push(a);
            rec(a + 1, e, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, e, s, &mut Vec::new(), &mut out);
    out
}

/// Multi-indices of length `d` summing to `total`, in decreasing lex order.
fn compositions(total: usize, d: usize) -> Vec<Vec<u16>> {
    if d == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, d - 1) {
            rest.insert(0, first as u16);
            out.push(rest);
        }
    }
    out
}

/// The cycle `Σ_a g_a X_a` attached to a quadric `f = Σ_a x̃_a g̃_a`, where
/// each monomial `x̃_a x̃_b` (`a <= b`) is charged to `X_a`.
pub fn cycle_of_quadric<F: Field>(alg: &GradedAlgebra<F>, f: &Poly<F>) -> Result<KoszulCycle<F::Elem>> {
    let field = &alg.field;
    let e = alg.e();
    if !f.is_homogeneous() || f.degree() != Some(2) {
        return Err(Error::Precondition("expected a quadric".into()));
    }
    let mut coeffs: Vec<Vec<F::Elem>> = vec![vec![field.zero(); e]; e];
    for (m, c) in &f.terms {
        let vars: Vec<usize> = m.0.iter().enumerate().flat_map(|(i, &x)| std::iter::repeat_n(i, x as usize)).collect();
        let (a, b) = (vars[0], vars[1]);
        coeffs[a][b] = field.add(&coeffs[a][b], c);
    }
    let cycle: KoszulCycle<F::Elem> = coeffs.iter().map(|c| alg.linear_coords(c)).collect();
    check_cycle(alg, &cycle)?;
    Ok(cycle)
}

fn check_cycle<F: Field>(alg: &GradedAlgebra<F>, z: &KoszulCycle<F::Elem>) -> Result<()> {
    let f = &alg.field;
    if z.len() != alg.e() {
        return Err(Error::NotACycle("wrong number of coefficients".into()));
    }
    let mut total = alg.zero_vec(2);
    for (a, c) in z.iter().enumerate() {
        let w = alg.mul_var(a, c, 1)?;
        for (t, x) in total.iter_mut().zip(&w) {
            *t = f.add(t, x);
        }
    }
    if total.iter().all(|c| f.is_zero(c)) {
        Ok(())
    } else {
        let terms: Vec<String> = z
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().any(|x| !f.is_zero(x)))
            .map(|(a, c)| format!("({})*X{}", alg.render(c, 1), a + 1))
            .collect();
        Err(Error::NotACycle(format!("∂({}) = {} ≠ 0", terms.join(" + "), alg.render(&total, 2))))
    }
}

impl<'a, F: Field> BidegreeComplex<'a, F> {
    /// The Koszul complex on the variables.
    pub fn koszul(alg: &'a GradedAlgebra<F>, n: usize, j: usize) -> Result<BidegreeComplex<'a, F>> {
        Self::adjoin_divided(alg, n, j, Vec::new())
    }

    /// `K⟨Z_1..Z_d | ∂Z_k = z_k⟩`; each `z_k` must be a cycle of `K_1`.
    pub fn adjoin_divided(
        alg: &'a GradedAlgebra<F>,
        n: usize,
        j: usize,
        cycles: Vec<KoszulCycle<F::Elem>>,
    ) -> Result<BidegreeComplex<'a, F>> {
        if j > alg.top {
            return Err(Error::Truncation { requested: j, bound: alg.top });
        }
        for z in &cycles {
            check_cycle(alg, z)?;
        }
        let (e, d) = (alg.e(), cycles.len());
        let labels: Vec<Vec<Label>> = (0..=n + 1).map(|w| labels_of_weight(e, d, w)).collect();
        let index = labels.iter().map(|ls| ls.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect()).collect();
        let c = BidegreeComplex { alg, n, j, cycles, labels, index };
        Ok(c)
    }

    /// Short Tate complex attached to quadrics `f_1..f_d` lying in `I`.
    pub fn short_tate(alg: &'a GradedAlgebra<F>, n: usize, j: usize, quadrics: &[Poly<F>]) -> Result<BidegreeComplex<'a, F>> {
        let cycles = quadrics.iter().map(|q| cycle_of_quadric(alg, q)).collect::<Result<Vec<_>>>()?;
        Self::adjoin_divided(alg, n, j, cycles)
    }

    pub fn labels(&self, i: usize) -> &[Label] {
        self.labels.get(i).map_or(&[], |v| v.as_slice())
    }

    /// Coefficient degree `j - i` of the bidegree, if nonnegative.
    fn coeff_degree(&self, i: usize, j: usize) -> Option<usize> {
        if i > j || i >= self.labels.len() {
            None
        } else {
            Some(j - i)
        }
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        match self.coeff_degree(i, j) {
            Some(q) => self.labels(i).len() * self.alg.h(q),
            None => 0,
        }
    }

    /// Matrix of `∂ : C_{i,j} → C_{i-1,j}` (rows index the target).
    pub fn differential(&self, i: usize, j: usize) -> Mat<F::Elem> {
        let f = &self.alg.field;
        let cols = self.dim(i, j);
        let rows = if i == 0 { 0 } else { self.dim(i - 1, j) };
        let mut m = linalg::zeros(f, rows, cols);
        if i == 0 || cols == 0 || rows == 0 {
            return m;
        }
        let q = j - i;
        let (hq, hq1) = (self.alg.h(q), self.alg.h(q + 1));
        let place = |m: &mut Mat<F::Elem>, src: usize, dst: usize, block: &Mat<F::Elem>, negate: bool| {
            for r in 0..hq1 {
                for c in 0..hq {
                    let x = &block[r][c];
                    if f.is_zero(x) {
                        continue;
                    }
                    let v = if negate { f.neg(x) } else { x.clone() };
                    let cell = &mut m[dst * hq1 + r][src * hq + c];
                    *cell = f.add(cell, &v);
                }
            }
        };
        // Multiplication matrices by the cycle coefficients, R_q → R_{q+1}.
        let cyc_mats: Vec<Vec<Option<Mat<F::Elem>>>> = self
            .cycles
            .iter()
            .map(|z| {
                z.iter()
                    .map(|c| {
                        if c.iter().all(|x| f.is_zero(x)) {
                            None
                        } else {
                            Some(self.alg.linear_mult_matrix(c, q).expect("degree"))
                        }
                    })
                    .collect()
            })
            .collect();
        for (src, label) in self.labels[i].iter().enumerate() {
            for (t, &a) in label.ext.iter().enumerate() {
                let mut ext = label.ext.clone();
                ext.remove(t);
                let dst = self.index[i - 1][&Label { ext, div: label.div.clone() }];
                place(&mut m, src, dst, &self.alg.mult[q][a], t % 2 == 1);
            }
            for (k, &mk) in label.div.iter().enumerate() {
                if mk == 0 {
                    continue;
                }
                let mut div = label.div.clone();
                div[k] -= 1;
                for (a, mat) in cyc_mats[k].iter().enumerate() {
                    let Some(mat) = mat else { continue };
                    if label.ext.contains(&a) {
                        continue;
                    }
                    let mut ext = label.ext.clone();
                    let pos = ext.partition_point(|&b| b < a);
                    let after = ext.len() - pos;
                    ext.insert(pos, a);
                    let negate = (label.ext.len() + after) % 2 == 1;
                    let dst = self.index[i - 1][&Label { ext, div: div.clone() }];
                    place(&mut m, src, dst, mat, negate);
                }
            }
        }
        m
    }

    /// `∂∘∂ = 0` at every bidegree with `2 <= i <= N + 1`, `j <= J`.
    pub fn check_d_squared(&self) -> bool {
        let f = &self.alg.field;
        for i in 2..self.labels.len() {
            for j in i..=self.j {
                let a = self.differential(i - 1, j);
                let b = self.differential(i, j);
                let cols = self.dim(i, j);
                if a.is_empty() || cols == 0 {
                    continue;
                }
                let prod = linalg::mat_mul(f, &a, &b, cols);
                if prod.iter().any(|r| r.iter().any(|x| !f.is_zero(x))) {
                    return false;
                }
            }
        }
        true
    }

    /// Minimality: every label sits in homological degree equal to its
    /// internal weight, so each component of `∂` has a coefficient in `R_1`
    /// and `C ⊗ 𝕜` has zero differential.
    pub fn is_minimal(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, ls)| ls.iter().all(|l| l.weight() == i))
    }

    /// Plain-text tableau of labels and differentials for `i <= N`, `j <= J`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for i in 0..=self.n {
            for j in i..=self.j {
                let dim = self.dim(i, j);
                if dim == 0 {
                    continue;
                }
                let q = j - i;
                let basis: Vec<String> = self
                    .labels(i)
                    .iter()
                    .flat_map(|l| {
                        self.alg.basis[q].iter().map(move |m| {
                            let mono = m.render(self.alg.names());
                            format!("{}*{}", mono, l.render())
                        })
                    })
                    .collect();
                let _ = writeln!(s, "[{i},{j}] dim {dim}: {}", basis.join(" "));
                if i > 0 {
                    for row in self.differential(i, j) {
                        let cells: Vec<String> = row.iter().map(|x| self.alg.field.display(x)).collect();
                        let _ = writeln!(s, "  {}", cells.join(" "));
                    }
                }
            }
        }
        s
    }
}

/// The subcomplex `𝔞C`: in bidegree `(i, j)` it is spanned by `𝔞_{j-i}·L`.
#[derive(Clone)]
pub struct ScaledComplex<'c, 'a, F: Field> {
    pub parent: &'c BidegreeComplex<'a, F>,
    pub ideal: Option<IdealSlice<F::Elem>>,
}

/// `𝔞 = R` when `ideal` is `None`.
pub fn scale_by_ideal<'c, 'a, F: Field>(
    c: &'c BidegreeComplex<'a, F>,
    ideal: Option<IdealSlice<F::Elem>>,
) -> Result<ScaledComplex<'c, 'a, F>> {
    if let Some(a) = &ideal {
        if a.top < c.j {
            return Err(Error::Truncation { requested: c.j, bound: a.top });
        }
    }
    Ok(ScaledComplex { parent: c, ideal })
}

impl<'c, 'a, F: Field> ScaledComplex<'c, 'a, F> {
    /// Basis of `(𝔞C)_{i,j}` as rows in the coordinates of `C_{i,j}`.
    pub fn basis(&self, i: usize, j: usize) -> Mat<F::Elem> {
        let c = self.parent;
        let f = &c.alg.field;
        let Some(q) = c.coeff_degree(i, j) else { return Vec::new() };
        let hq = c.alg.h(q);
        let nl = c.labels(i).len();
        let piece: Mat<F::Elem> = match &self.ideal {
            None => linalg::identity(f, hq),
            Some(a) => a.pieces[q].rows().to_vec(),
        };
        let mut out = Vec::with_capacity(nl * piece.len());
        for l in 0..nl {
            for v in &piece {
                let mut row = vec![f.zero(); nl * hq];
                row[l * hq..(l + 1) * hq].clone_from_slice(v);
                out.push(row);
            }
        }
        out
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.basis(i, j).len()
    }

    /// Cycles `Z_{i,j}` as rows in ambient coordinates.
    pub fn cycles(&self, i: usize, j: usize) -> Mat<F::Elem> {
        let c = self.parent;
        let f = &c.alg.field;
        let basis = self.basis(i, j);
        if basis.is_empty() {
            return Vec::new();
        }
        if i == 0 {
            return basis;
        }
        let d = c.differential(i, j);
        let ncols = basis.len();
        // ∂ applied to each basis vector, as columns.
        let images: Mat<F::Elem> = basis.iter().map(|v| linalg::mat_vec(f, &d, v)).collect();
        let m = linalg::transpose(&images, d.len());
        let m = if m.is_empty() { vec![vec![f.zero(); ncols]] } else { m };
        linalg::nullspace(f, &m, ncols)
            .iter()
            .map(|s| combine(f, s, &basis))
            .collect()
    }

    /// Boundaries `B_{i,j} = ∂((𝔞C)_{i+1,j})` as rows in ambient coordinates.
    pub fn boundaries(&self, i: usize, j: usize) -> Mat<F::Elem> {
        let c = self.parent;
        let f = &c.alg.field;
        if i + 1 >= c.labels.len() {
            return Vec::new();
        }
        let d = c.differential(i + 1, j);
        self.basis(i + 1, j).iter().map(|v| linalg::mat_vec(f, &d, v)).collect()
    }

    /// `dim H_i(𝔞C)_j`.
    pub fn homology_dim(&self, i: usize, j: usize) -> usize {
        let f = &self.parent.alg.field;
        let z = self.cycles(i, j).len();
        let b = linalg::rank(f, &self.boundaries(i, j));
        z - b
    }

    /// Table of `dim H_i(𝔞C)_j` for `i <= N`, `j <= J`.
    pub fn homology(&self) -> Vec<Vec<usize>> {
        let c = self.parent;
        (0..=c.n).map(|i| (0..=c.j).map(|j| self.homology_dim(i, j)).collect()).collect()
    }
}

fn combine<F: Field>(f: &F, coeffs: &[F::Elem], rows: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut out = vec![f.zero(); n];
    for (c, r) in coeffs.iter().zip(rows) {
        if f.is_zero(c) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(r) {
            *o = f.add(o, &f.mul(c, x));
        }
    }
    out
}

/// Matrix of the map `H_i(small)_j → H_i(big)_j` induced by `small ⊆ big`,
/// in bases of cycle representatives chosen as complements of boundaries.
/// Columns index the source homology basis.
pub fn induced_map<F: Field>(
    small: &ScaledComplex<'_, '_, F>,
    big: &ScaledComplex<'_, '_, F>,
    i: usize,
    j: usize,
) -> Mat<F::Elem> {
    let f = &small.parent.alg.field;
    let src = homology_representatives(small, i, j);
    let (tgt, bnd) = {
        let reps = homology_representatives(big, i, j);
        (reps, big.boundaries(i, j))
    };
    let mut stack: Mat<F::Elem> = tgt.clone();
    stack.extend(bnd.iter().cloned());
    let ncols = small.parent.dim(i, j);
    let mut out = linalg::zeros(f, tgt.len(), src.len());
    for (col, v) in src.iter().enumerate() {
        let coeffs = linalg::solve_left(f, &stack, ncols, v).expect("cycle of the subcomplex is a cycle of the complex");
        for r in 0..tgt.len() {
            out[r][col] = coeffs[r].clone();
        }
    }
    out
}

/// Cycles completing a basis of the boundaries to a basis of the cycles.
pub fn homology_representatives<F: Field>(c: &ScaledComplex<'_, '_, F>, i: usize, j: usize) -> Mat<F::Elem> {
    let f = &c.parent.alg.field;
    let n = c.parent.dim(i, j);
    let mut ech = Echelon::new(n);
    for b in c.boundaries(i, j) {
        ech.insert(f, b);
    }
    c.cycles(i, j).into_iter().filter(|z| ech.insert(f, z.clone())).collect()
}

/// Verdict on `ν(𝔞D) : H(𝔞'D) → H(𝔞D)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NuVerdict {
    pub vanishes: bool,
    pub bounds: (usize, usize),
    /// `(i, j)` and a rendered cycle of the smaller complex that is not a
    /// boundary of the larger one.
    pub witness: Option<(usize, usize, String)>,
    /// Ranks of the induced maps per bidegree (only nonzero entries).
    pub nonzero_ranks: Vec<(usize, usize, usize)>,
}

impl NuVerdict {
    pub fn describe(&self) -> String {
        let (n, j) = self.bounds;
        if self.vanishes {
            format!("zero up to (N={n}, J={j})")
        } else {
            let w = self.witness.as_ref().map(|(i, jj, s)| format!(" at ({i},{jj}): {s}")).unwrap_or_default();
            format!("nonzero{w} (bounds N={n}, J={j})")
        }
    }
}

/// Whether `Z(small) ⊆ B(big)` in every bidegree, i.e. the induced map on
/// homology is zero; returns a non-bounding cycle otherwise.
pub fn nu_map<F: Field>(small: &ScaledComplex<'_, '_, F>, big: &ScaledComplex<'_, '_, F>) -> NuVerdict {
    let c = small.parent;
    let f = &c.alg.field;
    let mut witness = None;
    let mut nonzero = Vec::new();
    for i in 0..=c.n {
        for j in i..=c.j {
            let z = small.cycles(i, j);
            if z.is_empty() {
                continue;
            }
            let mut ech = Echelon::new(c.dim(i, j));
            for b in big.boundaries(i, j) {
                ech.insert(f, b);
            }
            let base = ech.rank();
            let mut first = None;
            for v in &z {
                if ech.insert(f, v.clone()) && first.is_none() {
                    first = Some(v.clone());
                }
            }
            let rank = ech.rank() - base;
            if rank > 0 {
                nonzero.push((i, j, rank));
                if witness.is_none() {
                    witness = Some((i, j, render_chain(c, i, j, &first.unwrap())));
                }
            }
        }
    }
    NuVerdict { vanishes: nonzero.is_empty(), bounds: (c.n, c.j), witness, nonzero_ranks: nonzero }
}

/// `ν(𝔪D)`: the map `H(𝔪²D) → H(𝔪D)`.
pub fn nu_vanishes<F: Field>(d: &BidegreeComplex<'_, F>) -> Result<NuVerdict> {
    let alg = d.alg;
    let m = scale_by_ideal(d, Some(alg.power_of_max(1, d.j)?))?;
    let m2 = scale_by_ideal(d, Some(alg.power_of_max(2, d.j)?))?;
    Ok(nu_map(&m2, &m))
}

/// Renders an element of `C_{i,j}`.
pub fn render_chain<F: Field>(c: &BidegreeComplex<'_, F>, i: usize, j: usize, v: &[F::Elem]) -> String {
    let q = j - i;
    let hq = c.alg.h(q);
    let mut parts = Vec::new();
    for (l, label) in c.labels(i).iter().enumerate() {
        let block = &v[l * hq..(l + 1) * hq];
        if block.iter().all(|x| c.alg.field.is_zero(x)) {
            continue;
        }
        parts.push(format!("({})*{}", c.alg.render(block, q), label.render()));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `Σ_i (-1)^i dim C_{i,j}` and `Σ_i (-1)^i dim H_i(C)_j` for internal degree `j`
/// (all homological degrees up to `j` are present when `j <= N`).
pub fn euler_characteristics<F: Field>(c: &ScaledComplex<'_, '_, F>, j: usize) -> (i64, i64) {
    let mut chain = 0i64;
    let mut hom = 0i64;
    for i in 0..=j.min(c.parent.n) {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        chain += sign * c.dim(i, j) as i64;
        hom += sign * c.homology_dim(i, j) as i64;
    }
    (chain, hom)
}
