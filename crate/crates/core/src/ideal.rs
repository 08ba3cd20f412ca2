//! Homogeneous ideals of a truncated algebra, stored degreewise as spans
//! inside `R_d` for `d <= top`.

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Echelon, Mat};

/// Degree pieces `I_0, ..., I_top` of a homogeneous ideal.
#[derive(Debug, Clone)]
pub struct IdealSlice<E> {
    pub pieces: Vec<Echelon<E>>,
    /// Largest degree in which the piece is known exactly.
    pub top: usize,
}

/// A homogeneous element `(degree, coordinates)`.
pub type Element<E> = (usize, Vec<E>);

impl<E: Clone> IdealSlice<E> {
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.rank()).collect()
    }

    pub fn piece(&self, d: usize) -> Result<&Echelon<E>> {
        if d > self.top {
            return Err(Error::Truncation { requested: d, bound: self.top });
        }
        Ok(&self.pieces[d])
    }

    pub fn dim(&self, d: usize) -> Result<usize> {
        Ok(self.piece(d)?.rank())
    }
}

impl<F: Field> GradedAlgebra<F> {
    fn empty_pieces(&self, top: usize) -> Vec<Echelon<F::Elem>> {
        (0..=top).map(|d| Echelon::new(self.h(d))).collect()
    }

    /// The ideal generated by homogeneous elements, up to degree `top`.
    pub fn ideal(&self, gens: &[Element<F::Elem>], top: usize) -> Result<IdealSlice<F::Elem>> {
        if top > self.top {
            return Err(Error::Truncation { requested: top, bound: self.top });
        }
        let f = &self.field;
        let mut pieces = self.empty_pieces(top);
        for d in 0..=top {
            if d > 0 {
                let prev: Mat<F::Elem> = pieces[d - 1].rows().to_vec();
                for v in &prev {
                    for a in 0..self.e() {
                        let w = self.mul_var(a, v, d - 1)?;
                        pieces[d].insert(f, w);
                    }
                }
            }
            for (gd, g) in gens {
                if *gd == d {
                    pieces[d].insert(f, g.clone());
                }
            }
        }
        Ok(IdealSlice { pieces, top })
    }

    /// The ideal generated by linear forms.
    pub fn ideal_of_forms(&self, forms: &[Vec<F::Elem>], top: usize) -> Result<IdealSlice<F::Elem>> {
        let gens: Vec<Element<F::Elem>> = forms.iter().map(|l| (1, l.clone())).collect();
        self.ideal(&gens, top)
    }

    /// `𝔪^n` up to degree `top`.
    pub fn power_of_max(&self, n: usize, top: usize) -> Result<IdealSlice<F::Elem>> {
        if top > self.top {
            return Err(Error::Truncation { requested: top, bound: self.top });
        }
        let f = &self.field;
        let mut pieces = self.empty_pieces(top);
        for (d, piece) in pieces.iter_mut().enumerate() {
            if d >= n {
                for i in 0..self.h(d) {
                    let mut v = self.zero_vec(d);
                    v[i] = f.one();
                    piece.insert(f, v);
                }
            }
        }
        Ok(IdealSlice { pieces, top })
    }

    /// `l * 𝔪`: the ideal generated by `l x_1, ..., l x_e`.
    pub fn form_times_max(&self, l: &[F::Elem], top: usize) -> Result<IdealSlice<F::Elem>> {
        let gens: Vec<Element<F::Elem>> =
            (0..self.e()).map(|a| Ok((2, self.mul_var(a, l, 1)?))).collect::<Result<_>>()?;
        self.ideal(&gens, top)
    }

    pub fn sum(&self, a: &IdealSlice<F::Elem>, b: &IdealSlice<F::Elem>) -> IdealSlice<F::Elem> {
        let top = a.top.min(b.top);
        let mut pieces = self.empty_pieces(top);
        for d in 0..=top {
            for v in a.pieces[d].rows().iter().chain(b.pieces[d].rows()) {
                pieces[d].insert(&self.field, v.clone());
            }
        }
        IdealSlice { pieces, top }
    }

    pub fn product(&self, a: &IdealSlice<F::Elem>, b: &IdealSlice<F::Elem>) -> Result<IdealSlice<F::Elem>> {
        let top = a.top.min(b.top);
        let mut pieces = self.empty_pieces(top);
        for d in 0..=top {
            for p in 0..=d {
                let q = d - p;
                for u in a.pieces[p].rows() {
                    for v in b.pieces[q].rows() {
                        let w = self.mul(u, p, v, q)?;
                        pieces[d].insert(&self.field, w);
                    }
                }
            }
        }
        Ok(IdealSlice { pieces, top })
    }

    pub fn power(&self, a: &IdealSlice<F::Elem>, n: usize) -> Result<IdealSlice<F::Elem>> {
        let mut out = self.power_of_max(0, a.top)?;
        for _ in 0..n {
            out = self.product(&out, a)?;
        }
        Ok(out)
    }

    pub fn intersect(&self, a: &IdealSlice<F::Elem>, b: &IdealSlice<F::Elem>) -> IdealSlice<F::Elem> {
        let f = &self.field;
        let top = a.top.min(b.top);
        let mut pieces = self.empty_pieces(top);
        for d in 0..=top {
            let ar = a.pieces[d].rows();
            let br = b.pieces[d].rows();
            if ar.is_empty() || br.is_empty() {
                continue;
            }
            // Solve sum_i s_i a_i - sum_j t_j b_j = 0.
            let n = ar.len() + br.len();
            let m: Mat<F::Elem> = (0..self.h(d))
                .map(|k| {
                    ar.iter().map(|r| r[k].clone()).chain(br.iter().map(|r| f.neg(&r[k]))).collect()
                })
                .collect();
            for s in linalg::nullspace(f, &m, n) {
                let mut v = self.zero_vec(d);
                for (i, r) in ar.iter().enumerate() {
                    if !f.is_zero(&s[i]) {
                        for (x, y) in v.iter_mut().zip(r) {
                            *x = f.add(x, &f.mul(&s[i], y));
                        }
                    }
                }
                pieces[d].insert(f, v);
            }
        }
        IdealSlice { pieces, top }
    }

    /// `{r : r g ∈ a for every generator g}`. With `a = 0` this is the annihilator.
    /// Degree `d` is exact when `d + deg g <= a.top` for all generators.
    pub fn colon(&self, a: &IdealSlice<F::Elem>, gens: &[Element<F::Elem>]) -> Result<IdealSlice<F::Elem>> {
        let f = &self.field;
        let maxg = gens.iter().map(|g| g.0).max().unwrap_or(0);
        if maxg > a.top {
            return Err(Error::Truncation { requested: maxg, bound: a.top });
        }
        let top = a.top - maxg;
        let mut pieces = self.empty_pieces(top);
        for d in 0..=top {
            let hd = self.h(d);
            // Stack the reduced images of the basis of R_d under every generator.
            let mut rows: Mat<F::Elem> = Vec::new();
            for (gd, g) in gens {
                let images: Vec<Vec<F::Elem>> = (0..hd)
                    .map(|i| {
                        let mut u = self.zero_vec(d);
                        u[i] = f.one();
                        let w = self.mul(&u, d, g, *gd)?;
                        Ok(a.pieces[d + gd].reduce(f, w))
                    })
                    .collect::<Result<_>>()?;
                for k in 0..self.h(d + gd) {
                    rows.push(images.iter().map(|c| c[k].clone()).collect());
                }
            }
            if rows.is_empty() {
                for i in 0..hd {
                    let mut u = self.zero_vec(d);
                    u[i] = f.one();
                    pieces[d].insert(f, u);
                }
            } else {
                for v in linalg::nullspace(f, &rows, hd) {
                    pieces[d].insert(f, v);
                }
            }
        }
        Ok(IdealSlice { pieces, top })
    }

    pub fn zero_ideal(&self, top: usize) -> IdealSlice<F::Elem> {
        IdealSlice { pieces: self.empty_pieces(top), top }
    }

    /// `ann(g_1, ..., g_k)`.
    pub fn annihilator(&self, gens: &[Element<F::Elem>]) -> Result<IdealSlice<F::Elem>> {
        self.colon(&self.zero_ideal(self.top), gens)
    }

    /// Degree-1 part of `ann(l)` for a linear form `l`.
    pub fn ann_linear(&self, l: &[F::Elem]) -> Mat<F::Elem> {
        let m = self.linear_mult_matrix(l, 1).expect("top >= 2");
        linalg::nullspace(&self.field, &m, self.h(1))
    }

    /// Whether `b ⊆ a` in every degree up to the common bound.
    pub fn contains(&self, a: &IdealSlice<F::Elem>, b: &IdealSlice<F::Elem>) -> bool {
        let top = a.top.min(b.top);
        (0..=top).all(|d| b.pieces[d].rows().iter().all(|v| a.pieces[d].contains(&self.field, v)))
    }

    pub fn equals(&self, a: &IdealSlice<F::Elem>, b: &IdealSlice<F::Elem>) -> bool {
        self.contains(a, b) && self.contains(b, a)
    }

    pub fn contains_element(&self, a: &IdealSlice<F::Elem>, el: &Element<F::Elem>) -> Result<bool> {
        Ok(a.piece(el.0)?.contains(&self.field, &el.1))
    }

    /// Whether `R_1 · I_d ⊆ I_{d+1}` for all `d < top`.
    pub fn is_closed(&self, a: &IdealSlice<F::Elem>) -> bool {
        (0..a.top).all(|d| {
            a.pieces[d].rows().iter().all(|v| {
                (0..self.e()).all(|x| a.pieces[d + 1].contains(&self.field, &self.mul_var(x, v, d).unwrap()))
            })
        })
    }
}
