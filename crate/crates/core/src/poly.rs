//! Multivariate polynomials over a [`Field`], monomial orders and the text
//! grammar used in presentation files.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(e: &[u16]) -> Monomial {
        Monomial(e.to_vec())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&x| x as usize).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the smallest variable occurring, `None` for 1.
    pub fn min_var(&self) -> Option<usize> {
        self.0.iter().position(|&x| x > 0)
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{}", names[i], x) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// All monomials of degree `d` in `n` variables, in decreasing lex order
/// (x_0^d first).
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left as u16;
            out.push(Monomial(cur.clone()));
            cur[i] = 0;
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a as u16;
            rec(n, i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Grevlex,
    Lex,
    WeightedLex,
}

/// A monomial order given by a kind and a variable priority list.
///
/// `perm[0]` is the largest variable. Weighted-lex compares the weight
/// vector first and breaks ties lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
    pub weights: Vec<u32>,
}

impl TermOrder {
    pub fn grevlex(n: usize) -> TermOrder {
        TermOrder { kind: OrderKind::Grevlex, perm: (0..n).collect(), weights: vec![] }
    }

    pub fn lex(n: usize) -> TermOrder {
        TermOrder { kind: OrderKind::Lex, perm: (0..n).collect(), weights: vec![] }
    }

    pub fn with_perm(kind: OrderKind, perm: Vec<usize>) -> TermOrder {
        let n = perm.len();
        TermOrder { kind, perm, weights: vec![1; n] }
    }

    pub fn weighted_lex(weights: Vec<u32>, perm: Vec<usize>) -> TermOrder {
        TermOrder { kind: OrderKind::WeightedLex, perm, weights }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => self.lex_cmp(a, b),
            OrderKind::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for &v in self.perm.iter().rev() {
                    match a.0[v].cmp(&b.0[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
            OrderKind::WeightedLex => {
                let w = |m: &Monomial| -> u64 {
                    m.0.iter().zip(&self.weights).map(|(&x, &w)| x as u64 * w as u64).sum()
                };
                w(a).cmp(&w(b)).then_with(|| self.lex_cmp(a, b))
            }
        }
    }

    fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in &self.perm {
            match a.0[v].cmp(&b.0[v]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// A polynomial as a map from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    pub nvars: usize,
    pub terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(m, c)| (&m.0, c))).finish()
    }
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Poly<F> {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(field: &F, m: Monomial, c: F::Elem) -> Poly<F> {
        let mut p = Poly::zero(m.nvars());
        if !field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Poly<F> {
        Poly::monomial(field, Monomial::var(nvars, i), field.one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn coeff(&self, field: &F, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn add_term(&mut self, field: &F, m: Monomial, c: &F::Elem) {
        if field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = field.add(v, c);
                if field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, field: &F, other: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), c);
        }
        out
    }

    pub fn sub(&self, field: &F, other: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), &field.neg(c));
        }
        out
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Poly<F> {
        if field.is_zero(c) {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, field: &F, m: &Monomial, c: &F::Elem) -> Poly<F> {
        if field.is_zero(c) {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), field.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, field: &F, other: &Poly<F>) -> Poly<F> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &other.terms {
            for (k, a) in &self.terms {
                out.add_term(field, k.mul(m), &field.mul(a, c));
            }
        }
        out
    }

    /// Leading monomial and coefficient under `order`.
    pub fn lead(&self, order: &TermOrder) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn lead_monomial(&self, order: &TermOrder) -> Option<&Monomial> {
        self.lead(order).map(|(m, _)| m)
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self, field: &F, order: &TermOrder) -> Poly<F> {
        match self.lead(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = field.inv(c).expect("nonzero lead coefficient");
                self.scale(field, &inv)
            }
        }
    }

    /// Linear substitution x_i -> sum_j images[i][j] y_j.
    pub fn substitute_linear(&self, field: &F, images: &[Poly<F>]) -> Poly<F> {
        let n_out = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = Poly::zero(n_out);
        for (m, c) in &self.terms {
            let mut term = Poly::monomial(field, Monomial::one(n_out), c.clone());
            for (i, &x) in m.0.iter().enumerate() {
                for _ in 0..x {
                    term = term.mul(field, &images[i]);
                }
            }
            out = out.add(field, &term);
        }
        out
    }

    /// Renders the polynomial in the input grammar, terms in decreasing lex order.
    pub fn render(&self, field: &F, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        let p = field.characteristic();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            // Prefer a small negative representative for prime-field coefficients.
            let (neg, mag) = if p > 2 && field.spec().extension_degree == 1 {
                let v: u64 = field.display(c).parse().unwrap_or(0);
                if v > p / 2 {
                    (true, (p - v).to_string())
                } else {
                    (false, v.to_string())
                }
            } else if p == 0 {
                let d = field.display(c);
                match d.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, d),
                }
            } else {
                let d = field.display(c);
                (false, if field.is_compound(c) { format!("({d})") } else { d })
            };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.render(names);
            if mono == "1" {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

/// Parses a polynomial in the grammar
/// `term (('+'|'-') term)*`, `term = [coeff '*'] var ['^' exp] ('*' var ['^' exp])*`,
/// where a coefficient is an integer or `a/b` and a term may be a bare coefficient.
pub fn parse_polynomial<F: Field>(field: &F, text: &str, vars: &[String]) -> Result<Poly<F>> {
    let n = vars.len();
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut pos = 0usize;
    let mut out = Poly::zero(n);
    let mut first = true;
    while pos < toks.len() {
        let mut sign = 1i64;
        match &toks[pos] {
            Tok::Plus | Tok::Minus => {
                if let Tok::Minus = toks[pos] {
                    sign = -1;
                }
                pos += 1;
            }
            _ if !first => return Err(Error::Parse(format!("expected + or - in `{text}`"))),
            _ => {}
        }
        first = false;
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        let mut mono = Monomial::one(n);
        let mut factors = 0usize;
        loop {
            match toks.get(pos) {
                Some(Tok::Int(v)) if factors == 0 => {
                    num = v.clone();
                    pos += 1;
                    if let Some(Tok::Slash) = toks.get(pos) {
                        match toks.get(pos + 1) {
                            Some(Tok::Int(d)) => {
                                den = d.clone();
                                pos += 2;
                            }
                            _ => return Err(Error::Parse(format!("bad fraction in `{text}`"))),
                        }
                    }
                }
                Some(Tok::Ident(name)) => {
                    let i = vars
                        .iter()
                        .position(|v| v == name)
                        .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
                    pos += 1;
                    let mut e = 1u32;
                    if let Some(Tok::Caret) = toks.get(pos) {
                        match toks.get(pos + 1) {
                            Some(Tok::Int(v)) => {
                                e = u32::try_from(v).ok().filter(|&e| e <= 255).ok_or_else(|| {
                                    Error::Parse(format!("exponent out of range in `{text}`"))
                                })?;
                                pos += 2;
                            }
                            _ => return Err(Error::Parse(format!("bad exponent in `{text}`"))),
                        }
                    }
                    mono.0[i] += e as u16;
                }
                _ => return Err(Error::Parse(format!("malformed term in `{text}`"))),
            }
            factors += 1;
            match toks.get(pos) {
                Some(Tok::Star) => pos += 1,
                Some(Tok::Plus) | Some(Tok::Minus) | None => break,
                _ => return Err(Error::Parse(format!("unexpected token in `{text}`"))),
            }
        }
        if den == BigInt::from(0) {
            return Err(Error::Parse(format!("zero denominator in `{text}`")));
        }
        let c = field.from_ratio(&(num * sign), &den)?;
        out.add_term(field, mono, &c);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Int(s.parse().expect("digits")));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn char_two_sign_collapse() {
        let f = PrimeField::new(2).unwrap();
        let v = names(&["x", "y", "z"]);
        let p = parse_polynomial(&f, "x^2 - y*z", &v).unwrap();
        let q = parse_polynomial(&f, "x^2 + y*z", &v).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.terms.len(), 2);
    }

    #[test]
    fn zero_and_rationals() {
        let v = names(&["x", "y"]);
        assert!(parse_polynomial(&Rationals, "0", &v).unwrap().is_zero());
        let p = parse_polynomial(&Rationals, "y^2 + x*y", &v).unwrap();
        assert_eq!(p.terms.len(), 2);
        assert_eq!(p.degree(), Some(2));
        assert!(p.is_homogeneous());
        let h = parse_polynomial(&Rationals, "1/2*x*y - 3/4*x^2 + x*y", &v).unwrap();
        assert_eq!(h.coeff(&Rationals, &Monomial(vec![1, 1])), Rationals.from_i64(3) / Rationals.from_i64(2));
    }

    #[test]
    fn parse_errors() {
        let f = PrimeField::new(5).unwrap();
        let v = names(&["x", "y"]);
        assert_eq!(parse_polynomial(&f, "x*w", &v), Err(Error::UnknownVariable("w".into())));
        assert!(matches!(parse_polynomial(&f, "x**y", &v), Err(Error::Parse(_))));
        assert!(matches!(parse_polynomial(&f, "1/5*x^2", &v), Err(Error::Parse(_))));
        assert!(matches!(parse_polynomial(&f, "x y", &v), Err(Error::Parse(_))));
    }

    #[test]
    fn render_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let v = names(&["x", "y", "z"]);
        let p = parse_polynomial(&f, "3*x^2 - y*z + 2*z^2", &v).unwrap();
        let s = p.render(&f, &v);
        assert_eq!(parse_polynomial(&f, &s, &v).unwrap(), p);
        let q = parse_polynomial(&Rationals, "-1/3*x*y + z^2", &v).unwrap();
        assert_eq!(parse_polynomial(&Rationals, &q.render(&Rationals, &v), &v).unwrap(), q);
    }

    #[test]
    fn orders() {
        let g = TermOrder::grevlex(3);
        let a = Monomial(vec![1, 0, 1]); // xz
        let b = Monomial(vec![0, 2, 0]); // y^2
        assert_eq!(g.cmp(&a, &b), Ordering::Less);
        let l = TermOrder::lex(3);
        assert_eq!(l.cmp(&a, &b), Ordering::Greater);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(2, 0), vec![Monomial(vec![0, 0])]);
    }
}
