//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's algebra code.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

/// Prime used to reduce rational coefficients. The corpus relations have
/// coefficients in `{-1, 0, 1, 2}`, so ranks agree with those over `Q`.
pub const QQ_PRIME: u64 = 32003;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Characteristic used by the oracle for a field name, or `None` for
/// non-prime fields.
pub fn oracle_prime(field: &str) -> Option<u64> {
    if field == "QQ" {
        return Some(QQ_PRIME);
    }
    let inner = field.strip_prefix("GF(")?.strip_suffix(')')?;
    inner.parse().ok()
}

type Exps = Vec<u32>;

/// Parses a polynomial such as `-x1*x2 + 2*x3^2` into exponent vectors with
/// coefficients mod `p`.
pub fn parse(s: &str, vars: &[String], p: u64) -> BTreeMap<Exps, u64> {
    let mut out: BTreeMap<Exps, u64> = BTreeMap::new();
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for c in cleaned.chars() {
        if (c == '+' || c == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.strip_prefix('+').unwrap_or(&t)),
        };
        let mut coef = 1u64;
        let mut exps = vec![0u32; vars.len()];
        for factor in body.split('*') {
            if let Ok(n) = factor.parse::<u64>() {
                coef = coef * (n % p) % p;
                continue;
            }
            let (name, k) = match factor.split_once('^') {
                Some((n, k)) => (n, k.parse::<u32>().expect("exponent")),
                None => (factor, 1),
            };
            let i = vars.iter().position(|v| v == name).unwrap_or_else(|| panic!("unknown variable {name}"));
            exps[i] += k;
        }
        if neg {
            coef = (p - coef) % p;
        }
        let slot = out.entry(exps).or_insert(0);
        *slot = (*slot + coef) % p;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn monomials(n: usize, d: u32) -> Vec<Exps> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `h_0, ..., h_top` of `k[vars]/(relations)` from ranks of Macaulay
/// matrices in each degree, reduced by sparse Gaussian elimination mod `p`.
pub fn hilbert_oracle(vars: &[String], relations: &[String], p: u64, top: usize) -> Vec<usize> {
    let n = vars.len();
    let rels: Vec<(u32, BTreeMap<Exps, u64>)> = relations
        .iter()
        .map(|r| {
            let poly = parse(r, vars, p);
            let deg = poly.keys().next().map_or(0, |m| m.iter().sum());
            (deg, poly)
        })
        .filter(|(_, poly)| !poly.is_empty())
        .collect();
    let mut h = Vec::with_capacity(top + 1);
    for d in 0..=top as u32 {
        let cols = monomials(n, d);
        let index: HashMap<&Exps, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        // pivot column -> reduced row (sparse, sorted, leading entry 1)
        let mut pivots: HashMap<usize, BTreeMap<usize, u64>> = HashMap::new();
        for (rd, poly) in &rels {
            if *rd > d {
                continue;
            }
            for m in monomials(n, d - rd) {
                let mut row: BTreeMap<usize, u64> = BTreeMap::new();
                for (e, c) in poly {
                    let prod: Exps = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                    row.insert(index[&prod], *c);
                }
                loop {
                    let Some((&lead, &c)) = row.iter().next() else { break };
                    match pivots.get(&lead) {
                        Some(piv) => {
                            for (&col, &v) in piv {
                                let slot = row.entry(col).or_insert(0);
                                *slot = (*slot + p - c * v % p) % p;
                                if *slot == 0 {
                                    row.remove(&col);
                                }
                            }
                        }
                        None => {
                            let inv = pow_mod(c, p - 2, p);
                            for v in row.values_mut() {
                                *v = *v * inv % p;
                            }
                            pivots.insert(lead, row);
                            break;
                        }
                    }
                }
            }
        }
        h.push(binom(n + d as usize - 1, d as usize).max(if n == 0 && d == 0 { 1 } else { 0 }) - pivots.len());
    }
    h
}
