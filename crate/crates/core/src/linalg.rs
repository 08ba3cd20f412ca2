//! Dense exact linear algebra over a [`Field`]: echelon forms, rank,
//! nullspaces, linear solves and incremental span bookkeeping.
//!
//! Matrices are row-major `Vec<Vec<E>>`.

use crate::field::Field;

pub type Mat<E> = Vec<Vec<E>>;

pub fn zeros<F: Field>(field: &F, rows: usize, cols: usize) -> Mat<F::Elem> {
    vec![vec![field.zero(); cols]; rows]
}

pub fn identity<F: Field>(field: &F, n: usize) -> Mat<F::Elem> {
    let mut m = zeros(field, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = field.one();
    }
    m
}

pub fn transpose<E: Clone>(m: &[Vec<E>], ncols: usize) -> Mat<E> {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>], bcols: usize) -> Mat<F::Elem> {
    a.iter()
        .map(|row| {
            let mut out = vec![field.zero(); bcols];
            for (k, x) in row.iter().enumerate() {
                if field.is_zero(x) {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !field.is_zero(y) {
                        *o = field.add(o, &field.mul(x, y));
                    }
                }
            }
            out
        })
        .collect()
}

pub fn mat_vec<F: Field>(field: &F, a: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|row| dot(field, row, v)).collect()
}

pub fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut s = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !field.is_zero(x) && !field.is_zero(y) {
            s = field.add(&s, &field.mul(x, y));
        }
    }
    s
}

/// `row -= c * pivot_row`, touching columns from `start` on.
#[inline]
fn axpy<F: Field>(field: &F, row: &mut [F::Elem], c: &F::Elem, pivot_row: &[F::Elem], start: usize) {
    for (x, y) in row[start..].iter_mut().zip(&pivot_row[start..]) {
        if !field.is_zero(y) {
            *x = field.sub(x, &field.mul(c, y));
        }
    }
}

/// Reduced row echelon form in place. Returns the pivot columns; the first
/// `pivots.len()` rows hold the nonzero reduced rows.
pub fn rref<F: Field>(field: &F, m: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r][c..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let (before, rest) = m.split_at_mut(r);
        let (prow, after) = rest.split_first_mut().expect("row");
        for row in before.iter_mut().chain(after.iter_mut()) {
            if !field.is_zero(&row[c]) {
                let coef = row[c].clone();
                axpy(field, row, &coef, prow, c);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by forward elimination (or the field's specialized routine).
pub fn rank<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> usize {
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    if let Some(r) = field.rank_override(m) {
        return r;
    }
    let mut e = Echelon::new(m[0].len());
    for row in m {
        e.insert(field, row.clone());
    }
    e.rank()
}

/// Basis of `{v : m v = 0}` where `m` has `ncols` columns.
pub fn nullspace<F: Field>(field: &F, m: &[Vec<F::Elem>], ncols: usize) -> Mat<F::Elem> {
    let mut a: Mat<F::Elem> = m.to_vec();
    let pivots = rref(field, &mut a);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(&a[r][free]);
        }
        out.push(v);
    }
    out
}

/// Some solution of `m x = b`, if one exists.
pub fn solve<F: Field>(field: &F, m: &[Vec<F::Elem>], ncols: usize, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let mut a: Mat<F::Elem> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut a);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][ncols].clone();
    }
    Some(x)
}

/// A factorization of `m` for solving `m x = b` against many right-hand
/// sides: `transform * m` is the reduced row echelon form of `m`.
pub struct Solver<E> {
    ncols: usize,
    pivots: Vec<usize>,
    transform: Vec<Vec<E>>,
}

impl<E: Clone> Solver<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, m: &[Vec<E>], ncols: usize) -> Solver<E> {
        let nrows = m.len();
        let mut a: Mat<E> = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..nrows).map(|j| if i == j { field.one() } else { field.zero() }));
                r
            })
            .collect();
        let pivots: Vec<usize> = rref(field, &mut a).into_iter().filter(|&p| p < ncols).collect();
        let transform = a.into_iter().map(|r| r[ncols..].to_vec()).collect();
        Solver { ncols, pivots, transform }
    }

    /// Some solution of `m x = b`, if one exists.
    pub fn solve<F: Field<Elem = E>>(&self, field: &F, b: &[E]) -> Option<Vec<E>> {
        let y: Vec<E> = self.transform.iter().map(|row| dot(field, row, b)).collect();
        if y[self.pivots.len()..].iter().any(|c| !field.is_zero(c)) {
            return None;
        }
        let mut x = vec![field.zero(); self.ncols];
        for (r, &p) in self.pivots.iter().enumerate() {
            x[p] = y[r].clone();
        }
        Some(x)
    }
}

/// Solves `x m = b` for a row vector `x` (i.e. expresses `b` in the row space).
pub fn solve_left<F: Field>(field: &F, m: &[Vec<F::Elem>], ncols: usize, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let t = transpose(m, ncols);
    solve(field, &t, m.len(), b)
}

/// An incrementally grown row echelon basis of a subspace of `F^n`.
///
/// Stored rows are normalized so the first nonzero entry (the pivot) is 1.
#[derive(Debug, Clone)]
pub struct Echelon<E> {
    pub ncols: usize,
    rows: Vec<Vec<E>>,
    /// (pivot column, row index), sorted by column.
    pivots: Vec<(usize, usize)>,
}

impl<E: Clone> Echelon<E> {
    pub fn new(ncols: usize) -> Echelon<E> {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|p| p.0).collect()
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }
}

impl<E: Clone> Echelon<E> {
    /// Reduces `v` against the stored rows.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, mut v: Vec<E>) -> Vec<E> {
        for &(c, r) in &self.pivots {
            if !field.is_zero(&v[c]) {
                let coef = v[c].clone();
                axpy(field, &mut v, &coef, &self.rows[r], c);
            }
        }
        v
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        self.reduce(field, v.to_vec()).iter().all(|x| field.is_zero(x))
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert<F: Field<Elem = E>>(&mut self, field: &F, v: Vec<E>) -> bool {
        let mut v = self.reduce(field, v);
        let Some(c) = v.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&v[c]).expect("nonzero");
        for x in v[c..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let idx = self.rows.len();
        self.rows.push(v);
        let pos = self.pivots.partition_point(|p| p.0 < c);
        self.pivots.insert(pos, (c, idx));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn m<F: Field>(f: &F, rows: &[&[i64]]) -> Mat<F::Elem> {
        rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let f = PrimeField::new(5).unwrap();
        let a = m(&f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&f, &a), 2);
        let n = nullspace(&f, &a, 3);
        assert_eq!(n.len(), 1);
        assert!(mat_vec(&f, &a, &n[0]).iter().all(|x| *x == 0));
        let q = Rationals;
        let a = m(&q, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&q, &a), 2);
        let n = nullspace(&q, &a, 3);
        assert!(mat_vec(&q, &a, &n[0]).iter().all(|x| q.is_zero(x)));
    }

    #[test]
    fn solving() {
        let q = Rationals;
        let a = m(&q, &[&[1, 1], &[1, -1]]);
        let b = vec![q.from_i64(3), q.from_i64(1)];
        let x = solve(&q, &a, 2, &b).unwrap();
        assert_eq!(x, vec![q.from_i64(2), q.from_i64(1)]);
        let sing = m(&q, &[&[1, 1], &[1, 1]]);
        assert!(solve(&q, &sing, 2, &b).is_none());
    }

    #[test]
    fn echelon_span() {
        let f = PrimeField::new(3).unwrap();
        let mut e = Echelon::new(3);
        assert!(e.insert(&f, vec![0, 1, 2]));
        assert!(e.insert(&f, vec![1, 1, 0]));
        assert!(!e.insert(&f, vec![1, 2, 2]));
        assert!(e.contains(&f, &[2, 0, 2]));
        assert!(!e.contains(&f, &[0, 0, 1]));
        assert_eq!(e.rank(), 2);
    }
}
