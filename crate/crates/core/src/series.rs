//! Hilbert series of monomial quotients and truncated power series in one
//! (`t`) or two (`z`, `t`) variables with integer coefficients.

use serde::{Deserialize, Serialize};

use crate::poly::Monomial;

/// An exact rational series `N(t) / (1-t)^k` with `N(1) != 0` unless `N = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSeries {
    pub numerator: Vec<i64>,
    pub pole_order: usize,
}

impl RationalSeries {
    /// Normalizes `N/(1-t)^k` by cancelling common factors `(1-t)`.
    pub fn new(mut numerator: Vec<i64>, mut pole_order: usize) -> RationalSeries {
        trim(&mut numerator);
        while pole_order > 0 && !numerator.is_empty() && numerator.iter().sum::<i64>() == 0 {
            // Divide by (1 - t): synthetic division.
            let mut q = Vec::with_capacity(numerator.len() - 1);
            let mut acc = 0i64;
            for &c in &numerator[..numerator.len() - 1] {
                acc += c;
                q.push(acc);
            }
            numerator = q;
            trim(&mut numerator);
            pole_order -= 1;
        }
        RationalSeries { numerator, pole_order }
    }

    pub fn is_polynomial(&self) -> bool {
        self.pole_order == 0
    }

    /// Coefficient of `t^d`.
    pub fn coefficient(&self, d: usize) -> i64 {
        let k = self.pole_order;
        self.numerator
            .iter()
            .enumerate()
            .filter(|(i, _)| *i <= d)
            .map(|(i, &c)| {
                if k == 0 {
                    if i == d {
                        c
                    } else {
                        0
                    }
                } else {
                    c * binomial((d - i + k - 1) as u64, (k - 1) as u64) as i64
                }
            })
            .sum()
    }

    pub fn coefficients(&self, upto: usize) -> Vec<i64> {
        (0..=upto).map(|d| self.coefficient(d)).collect()
    }

    /// Human-readable form, e.g. `(1 + 2t - 2t^3)/(1-t)`.
    pub fn render(&self) -> String {
        let num = render_poly(&self.numerator, "t");
        match self.pole_order {
            0 => num,
            1 => format!("({num})/(1-t)"),
            k => format!("({num})/(1-t)^{k}"),
        }
    }
}

fn trim(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

pub fn render_poly(c: &[i64], var: &str) -> String {
    let mut s = String::new();
    for (i, &x) in c.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let mag = x.unsigned_abs();
        if s.is_empty() {
            if x < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if x < 0 { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            s.push_str(&mag.to_string());
        } else if mag == 1 {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{mag}{mono}"));
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn poly_sub_shift(a: &[i64], b: &[i64], shift: usize) -> Vec<i64> {
    let n = a.len().max(b.len() + shift);
    let mut out = vec![0i64; n];
    out[..a.len()].copy_from_slice(a);
    for (i, &x) in b.iter().enumerate() {
        out[i + shift] -= x;
    }
    out
}

fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    let mut sorted = gens.to_vec();
    sorted.sort_by_key(|m| m.degree());
    sorted.dedup();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator `K(t)` of the Hilbert series `K(t)/(1-t)^n` of `k[x_1..x_n]/M`
/// for the monomial ideal `M` generated by `gens`.
pub fn monomial_hilbert_numerator(gens: &[Monomial]) -> Vec<i64> {
    let gens = minimalize(gens);
    numerator_rec(&gens)
}

fn numerator_rec(gens: &[Monomial]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    // Pure powers of distinct variables: product formula.
    if gens.iter().all(|m| m.0.iter().filter(|&&x| x > 0).count() == 1) {
        let mut out = vec![1i64];
        for m in gens {
            let d = m.degree();
            out = poly_sub_shift(&out, &out.clone(), d);
        }
        return out;
    }
    let (last, rest) = gens.split_last().expect("nonempty");
    let colon: Vec<Monomial> = rest
        .iter()
        .map(|g| Monomial(g.0.iter().zip(&last.0).map(|(a, b)| a.saturating_sub(*b)).collect()))
        .collect();
    let a = numerator_rec(rest);
    let b = numerator_rec(&minimalize(&colon));
    poly_sub_shift(&a, &b, last.degree())
}

/// The Hilbert series of `k[x_1..x_n]/M` in lowest terms.
pub fn monomial_hilbert_series(nvars: usize, gens: &[Monomial]) -> RationalSeries {
    RationalSeries::new(monomial_hilbert_numerator(gens), nvars)
}

/// Truncated power series in `z` and `t`: `c[i][j]` is the coefficient of `z^i t^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Series2 {
    pub n: usize,
    pub j: usize,
    pub c: Vec<Vec<i128>>,
}

impl Series2 {
    pub fn zero(n: usize, j: usize) -> Series2 {
        Series2 { n, j, c: vec![vec![0; j + 1]; n + 1] }
    }

    pub fn one(n: usize, j: usize) -> Series2 {
        let mut s = Series2::zero(n, j);
        s.c[0][0] = 1;
        s
    }

    pub fn monomial(n: usize, j: usize, a: usize, b: usize, coef: i128) -> Series2 {
        let mut s = Series2::zero(n, j);
        if a <= n && b <= j {
            s.c[a][b] = coef;
        }
        s
    }

    pub fn get(&self, a: usize, b: usize) -> i128 {
        if a <= self.n && b <= self.j {
            self.c[a][b]
        } else {
            0
        }
    }

    pub fn add(&self, o: &Series2) -> Series2 {
        let mut s = self.clone();
        for a in 0..=self.n {
            for b in 0..=self.j {
                s.c[a][b] += o.get(a, b);
            }
        }
        s
    }

    pub fn sub(&self, o: &Series2) -> Series2 {
        let mut s = self.clone();
        for a in 0..=self.n {
            for b in 0..=self.j {
                s.c[a][b] -= o.get(a, b);
            }
        }
        s
    }

    pub fn mul(&self, o: &Series2) -> Series2 {
        let mut s = Series2::zero(self.n, self.j);
        for a1 in 0..=self.n {
            for b1 in 0..=self.j {
                let x = self.c[a1][b1];
                if x == 0 {
                    continue;
                }
                for a2 in 0..=self.n - a1 {
                    for b2 in 0..=self.j - b1 {
                        let y = o.get(a2, b2);
                        if y != 0 {
                            s.c[a1 + a2][b1 + b2] += x * y;
                        }
                    }
                }
            }
        }
        s
    }

    /// Multiplicative inverse; requires constant term 1.
    pub fn inverse(&self) -> Series2 {
        assert_eq!(self.c[0][0], 1, "constant term must be 1");
        // 1/(1 - u) with u = 1 - self, u has no constant term.
        let u = Series2::one(self.n, self.j).sub(self);
        let mut out = Series2::one(self.n, self.j);
        let mut power = Series2::one(self.n, self.j);
        for _ in 0..=(self.n + self.j) {
            power = power.mul(&u);
            if power.c.iter().all(|r| r.iter().all(|&x| x == 0)) {
                break;
            }
            out = out.add(&power);
        }
        out
    }

    /// `(1 + z t)^e / (1 - z^2 t^2)^d`, the Poincaré series of the residue field
    /// over a complete intersection of `d` quadrics in `e` variables.
    pub fn ci_poincare(e: usize, d: usize, n: usize, j: usize) -> Series2 {
        let mut num = Series2::one(n, j);
        let lin = Series2::one(n, j).add(&Series2::monomial(n, j, 1, 1, 1));
        for _ in 0..e {
            num = num.mul(&lin);
        }
        let mut den = Series2::one(n, j);
        let quad = Series2::one(n, j).sub(&Series2::monomial(n, j, 2, 2, 1));
        for _ in 0..d {
            den = den.mul(&quad);
        }
        num.mul(&den.inverse())
    }

    /// Pairs `(a, b)` where `self` exceeds / falls below `o`.
    pub fn first_difference(&self, o: &Series2) -> Option<(usize, usize, i128, i128)> {
        for a in 0..=self.n {
            for b in 0..=self.j {
                if self.get(a, b) != o.get(a, b) {
                    return Some((a, b, self.get(a, b), o.get(a, b)));
                }
            }
        }
        None
    }

    /// Whether `self <= o` coefficientwise.
    pub fn dominated_by(&self, o: &Series2) -> bool {
        (0..=self.n).all(|a| (0..=self.j).all(|b| self.get(a, b) <= o.get(a, b)))
    }

    /// Rendering as a polynomial in z, t.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for a in 0..=self.n {
            for b in 0..=self.j {
                let x = self.c[a][b];
                if x == 0 {
                    continue;
                }
                let mut mono = String::new();
                match a {
                    0 => {}
                    1 => mono.push('z'),
                    _ => mono.push_str(&format!("z^{a}")),
                }
                match b {
                    0 => {}
                    1 => mono.push('t'),
                    _ => mono.push_str(&format!("t^{b}")),
                }
                let term = if mono.is_empty() {
                    x.to_string()
                } else if x == 1 {
                    mono
                } else if x == -1 {
                    format!("-{mono}")
                } else {
                    format!("{x}{mono}")
                };
                parts.push(term);
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

/// Truncated one-variable series product and inverse.
pub fn series_mul(a: &[i128], b: &[i128], n: usize) -> Vec<i128> {
    let mut out = vec![0i128; n + 1];
    for (i, &x) in a.iter().enumerate().take(n + 1) {
        for (j, &y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn series_inverse(a: &[i128], n: usize) -> Vec<i128> {
    assert!(a.first() == Some(&1) || a.first() == Some(&-1), "unit constant term");
    let a0 = a[0];
    let mut out = vec![0i128; n + 1];
    out[0] = a0;
    for k in 1..=n {
        let mut s = 0i128;
        for i in 1..=k.min(a.len() - 1) {
            s += a[i] * out[k - i];
        }
        out[k] = -s * a0;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_series_normalizes() {
        // (1-t^2)/(1-t)^2 = (1+t)/(1-t)
        let s = RationalSeries::new(vec![1, 0, -1], 2);
        assert_eq!(s, RationalSeries { numerator: vec![1, 1], pole_order: 1 });
        assert_eq!(s.coefficients(4), vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn monomial_numerators() {
        // k[x,y]/(x^2, xy, y^2) = 1 + 2t
        let m = |v: &[u16]| Monomial(v.to_vec());
        let s = monomial_hilbert_series(2, &[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
        assert_eq!(s.numerator, vec![1, 2]);
        assert!(s.is_polynomial());
        // k[x,y,z]/(x^2, y^2) = (1+t)^2/(1-t)
        let s = monomial_hilbert_series(3, &[m(&[2, 0, 0]), m(&[0, 2, 0])]);
        assert_eq!(s.render(), "(1 + 2t + t^2)/(1-t)");
        assert_eq!(s.coefficients(4), vec![1, 3, 4, 4, 4]);
        // polynomial ring in two variables
        assert_eq!(monomial_hilbert_series(2, &[]).coefficients(4), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn bivariate_inverse_and_ci() {
        let p = Series2::ci_poincare(2, 1, 6, 6);
        // (1+zt)^2/(1-z^2t^2) = (1+zt)/(1-zt)
        for i in 1..=6 {
            assert_eq!(p.get(i, i), 2);
        }
        let inv = p.inverse();
        assert_eq!(p.mul(&inv), Series2::one(6, 6));
    }

    #[test]
    fn one_variable_inverse() {
        let a = vec![1, -3, 3, -1];
        let inv = series_inverse(&a, 5);
        assert_eq!(inv, vec![1, 3, 6, 10, 15, 21]);
        assert_eq!(series_mul(&a, &inv, 5), vec![1, 0, 0, 0, 0, 0]);
    }
}
