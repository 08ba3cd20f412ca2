//! Exact coefficient fields: prime fields F_p, small extensions F_{p^k}
//! (k <= 4) and the rationals.
//!
//! Every algorithm in the crate is generic over [`Field`]; the concrete field
//! is chosen once at the top level from a [`FieldSpec`].

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Characteristic and extension degree of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    /// 0 for the rationals, otherwise a prime p < 2^31.
    pub characteristic: u64,
    /// 1 for prime fields and the rationals.
    pub extension_degree: u32,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0, extension_degree: 1 };

    pub fn prime(p: u64) -> Result<FieldSpec> {
        FieldSpec::new(p, 1)
    }

    pub fn new(characteristic: u64, extension_degree: u32) -> Result<FieldSpec> {
        if characteristic == 0 {
            if extension_degree != 1 {
                return Err(Error::UnsupportedField("extensions of QQ are not supported".into()));
            }
            return Ok(FieldSpec::RATIONALS);
        }
        if characteristic >= (1 << 31) || !is_prime(characteristic) {
            return Err(Error::UnsupportedField(format!(
                "characteristic {characteristic} is not a prime below 2^31"
            )));
        }
        if !(1..=4).contains(&extension_degree) {
            return Err(Error::UnsupportedField(format!(
                "extension degree {extension_degree} outside 1..=4"
            )));
        }
        Ok(FieldSpec { characteristic, extension_degree })
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u128> {
        if self.characteristic == 0 {
            None
        } else {
            Some((self.characteristic as u128).pow(self.extension_degree))
        }
    }

    /// The same characteristic with a larger extension degree.
    pub fn with_degree(&self, k: u32) -> Result<FieldSpec> {
        FieldSpec::new(self.characteristic, k)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.characteristic, self.extension_degree) {
            (0, _) => write!(f, "QQ"),
            (p, 1) => write!(f, "GF({p})"),
            (p, k) => write!(f, "GF({p}^{k})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `QQ`, `GF(p)`, `GF(p)^k`, `GF(p^k)` and `GF(q)` for a prime power q.
    fn from_str(s: &str) -> Result<FieldSpec> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "QQ" || t == "Q" {
            return Ok(FieldSpec::RATIONALS);
        }
        let bad = || Error::UnsupportedField(format!("cannot parse field `{s}`"));
        let rest = t.strip_prefix("GF(").ok_or_else(bad)?;
        let close = rest.find(')').ok_or_else(bad)?;
        let inside = &rest[..close];
        let after = &rest[close + 1..];
        let (base, mut k): (u64, u32) = match inside.split_once('^') {
            Some((p, k)) => (p.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?),
            None => (inside.parse().map_err(|_| bad())?, 1),
        };
        if !after.is_empty() {
            let k2: u32 = after.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            k *= k2;
        }
        if k == 1 && base > 1 && !is_prime(base) {
            if let Some((p, e)) = prime_power(base) {
                return FieldSpec::new(p, e);
            }
        }
        FieldSpec::new(base, k)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let (mut r, mut e) = (q, 0u32);
            while r % p == 0 {
                r /= p;
                e += 1;
            }
            return (r == 1).then_some((p, e));
        }
        p += 1;
    }
    None
}

/// A commutative field with exact arithmetic.
pub trait Field: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of the rational number `num/den`; fails when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// The `index`-th element in a fixed enumeration (0 first, 1 second).
    /// For finite fields the enumeration is a bijection from `0..q`.
    fn element(&self, index: u64) -> Self::Elem;
    fn display(&self, a: &Self::Elem) -> String;
    /// Whether `display` needs parentheses when used as a coefficient.
    fn is_compound(&self, a: &Self::Elem) -> bool {
        let _ = a;
        false
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn characteristic(&self) -> u64 {
        self.spec().characteristic
    }

    /// Exact rank of a dense matrix when the field has a specialized routine.
    fn rank_override(&self, rows: &[Vec<Self::Elem>]) -> Option<usize> {
        let _ = rows;
        None
    }

    /// Relative cost of one multiply-add, used to scale work budgets.
    fn cost_factor(&self) -> u64 {
        1
    }
}

/// The prime field F_p with p < 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        FieldSpec::prime(p)?;
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut r = 1u64;
        let p = self.p as u64;
        let mut b = a as u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r as u32
    }

    fn reduce_bigint(&self, n: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u32().expect("residue fits")
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec { characteristic: self.p as u64, extension_degree: 1 }
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.pow(*a, self.p as u64 - 2))
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u32> {
        let d = self.reduce_bigint(den);
        let di = self.inv(&d).ok_or_else(|| {
            Error::Parse(format!("denominator {den} is divisible by {}", self.p))
        })?;
        Ok(self.mul(&self.reduce_bigint(num), &di))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn element(&self, index: u64) -> u32 {
        (index % self.p as u64) as u32
    }
    fn display(&self, a: &u32) -> String {
        a.to_string()
    }
}

/// Fixed irreducible moduli for small characteristics, as coefficient lists
/// c_0, ..., c_{k-1} of the monic polynomial x^k + c_{k-1} x^{k-1} + ... + c_0.
/// These are the Conway polynomials for these (p, k).
const MODULUS_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (5, 4, &[2, 4, 4, 0]),
    (7, 2, &[3, 6]),
    (7, 3, &[4, 0, 6]),
    (7, 4, &[3, 4, 5, 0]),
];

/// The finite field F_{p^k}, 2 <= k <= 4, in the power basis of a fixed modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    k: usize,
    /// Low coefficients of the monic modulus.
    modulus: [u32; 4],
}

impl ExtField {
    pub fn new(p: u64, k: u32) -> Result<ExtField> {
        FieldSpec::new(p, k)?;
        if k < 2 {
            return Err(Error::UnsupportedField("ExtField needs degree >= 2".into()));
        }
        let base = PrimeField::new(p)?;
        let low = match MODULUS_TABLE.iter().find(|(q, d, _)| *q as u64 == p && *d == k) {
            Some((_, _, c)) => c.to_vec(),
            None => first_irreducible(&base, k as usize),
        };
        let mut modulus = [0u32; 4];
        modulus[..low.len()].copy_from_slice(&low);
        Ok(ExtField { base, k: k as usize, modulus })
    }

    /// Coefficients c_0..c_{k-1} of the modulus x^k + ... + c_0.
    pub fn modulus_coefficients(&self) -> &[u32] {
        &self.modulus[..self.k]
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    fn pow(&self, a: &[u32; 4], mut e: u128) -> [u32; 4] {
        let mut r = self.one();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }
}

/// Lexicographically first monic irreducible polynomial of degree k over F_p,
/// ordering candidates by the integer sum c_i p^i with c_0 > 0.
pub fn first_irreducible(base: &PrimeField, k: usize) -> Vec<u32> {
    let p = base.modulus() as u64;
    let total = p.pow(k as u32);
    for code in 1..total {
        let mut c = vec![0u32; k];
        let mut r = code;
        for slot in c.iter_mut() {
            *slot = (r % p) as u32;
            r /= p;
        }
        if c[0] == 0 {
            continue;
        }
        let mut f = c.clone();
        f.push(1);
        if poly_is_irreducible(base, &f) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Rabin's irreducibility test for a monic polynomial over F_p (coefficients low to high).
pub fn poly_is_irreducible(base: &PrimeField, f: &[u32]) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let p = base.modulus() as u64;
    let x = vec![0, 1];
    // x^{p^i} mod f for i = 1..k
    let mut powers = Vec::with_capacity(k);
    let mut cur = x.clone();
    for _ in 0..k {
        cur = fp_poly_powmod(base, &cur, p, f);
        powers.push(cur.clone());
    }
    if !fp_poly_trim(fp_poly_sub(base, &powers[k - 1], &x)).is_empty() {
        return false;
    }
    for r in 2..=k {
        if k.is_multiple_of(r) && (2..r).all(|d| r % d != 0) {
            let h = fp_poly_trim(fp_poly_sub(base, &powers[k / r - 1], &x));
            let g = fp_poly_gcd(base, f.to_vec(), h);
            if g.len() > 1 {
                return false;
            }
        }
    }
    true
}

fn fp_poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_poly_sub(base: &PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| base.sub(a.get(i).unwrap_or(&0), b.get(i).unwrap_or(&0)))
        .collect()
}

fn fp_poly_rem(base: &PrimeField, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = fp_poly_trim(a.to_vec());
    let m = fp_poly_trim(m.to_vec());
    let lead_inv = base.inv(m.last().expect("nonzero modulus")).expect("unit");
    while r.len() >= m.len() {
        let c = base.mul(r.last().unwrap(), &lead_inv);
        let shift = r.len() - m.len();
        for (i, mi) in m.iter().enumerate() {
            r[shift + i] = base.sub(&r[shift + i], &base.mul(&c, mi));
        }
        r = fp_poly_trim(r);
    }
    r
}

fn fp_poly_mulmod(base: &PrimeField, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = base.add(&out[i + j], &base.mul(ai, bj));
        }
    }
    fp_poly_rem(base, &out, m)
}

fn fp_poly_powmod(base: &PrimeField, a: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut r = vec![1u32];
    let mut b = fp_poly_rem(base, a, m);
    while e > 0 {
        if e & 1 == 1 {
            r = fp_poly_mulmod(base, &r, &b, m);
        }
        b = fp_poly_mulmod(base, &b, &b, m);
        e >>= 1;
    }
    r
}

fn fp_poly_gcd(base: &PrimeField, mut a: Vec<u32>, mut b: Vec<u32>) -> Vec<u32> {
    a = fp_poly_trim(a);
    b = fp_poly_trim(b);
    while !b.is_empty() {
        let r = fp_poly_rem(base, &a, &b);
        a = b;
        b = r;
    }
    a
}

impl Field for ExtField {
    type Elem = [u32; 4];

    fn spec(&self) -> FieldSpec {
        FieldSpec { characteristic: self.base.modulus() as u64, extension_degree: self.k as u32 }
    }
    fn zero(&self) -> [u32; 4] {
        [0; 4]
    }
    fn one(&self) -> [u32; 4] {
        [1, 0, 0, 0]
    }
    fn is_zero(&self, a: &[u32; 4]) -> bool {
        *a == [0; 4]
    }
    fn add(&self, a: &[u32; 4], b: &[u32; 4]) -> [u32; 4] {
        std::array::from_fn(|i| self.base.add(&a[i], &b[i]))
    }
    fn sub(&self, a: &[u32; 4], b: &[u32; 4]) -> [u32; 4] {
        std::array::from_fn(|i| self.base.sub(&a[i], &b[i]))
    }
    fn neg(&self, a: &[u32; 4]) -> [u32; 4] {
        std::array::from_fn(|i| self.base.neg(&a[i]))
    }
    fn mul(&self, a: &[u32; 4], b: &[u32; 4]) -> [u32; 4] {
        let k = self.k;
        let mut prod = [0u32; 7];
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            for j in 0..k {
                let t = self.base.mul(&a[i], &b[j]);
                prod[i + j] = self.base.add(&prod[i + j], &t);
            }
        }
        // x^k = -(c_0 + ... + c_{k-1} x^{k-1})
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let t = self.base.mul(&c, &self.modulus[i]);
                prod[d - k + i] = self.base.sub(&prod[d - k + i], &t);
            }
        }
        let mut out = [0u32; 4];
        out[..k].copy_from_slice(&prod[..k]);
        out
    }
    fn inv(&self, a: &[u32; 4]) -> Option<[u32; 4]> {
        if self.is_zero(a) {
            return None;
        }
        let q = (self.base.modulus() as u128).pow(self.k as u32);
        Some(self.pow(a, q - 2))
    }
    fn from_i64(&self, n: i64) -> [u32; 4] {
        [self.base.from_i64(n), 0, 0, 0]
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<[u32; 4]> {
        Ok([self.base.from_ratio(num, den)?, 0, 0, 0])
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> [u32; 4] {
        let mut out = [0u32; 4];
        for slot in out.iter_mut().take(self.k) {
            *slot = self.base.random(rng);
        }
        out
    }
    fn element(&self, index: u64) -> [u32; 4] {
        let p = self.base.modulus() as u64;
        let mut r = index;
        let mut out = [0u32; 4];
        for slot in out.iter_mut().take(self.k) {
            *slot = (r % p) as u32;
            r /= p;
        }
        out
    }
    fn display(&self, a: &[u32; 4]) -> String {
        let mut terms = Vec::new();
        for i in (0..self.k).rev() {
            let c = a[i];
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, c) => format!("{c}*a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}*a^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
    fn is_compound(&self, a: &[u32; 4]) -> bool {
        a[1..].iter().any(|&c| c != 0)
    }
}

/// The rational numbers with arbitrary-precision arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::RATIONALS
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-9..=9))
    }
    /// 0, 1, -1, 2, -2, ...
    fn element(&self, index: u64) -> BigRational {
        let n = index.div_ceil(2) as i64;
        self.from_i64(if index % 2 == 1 { n } else { -n })
    }
    fn display(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn is_compound(&self, a: &BigRational) -> bool {
        !a.is_integer()
    }
    fn rank_override(&self, rows: &[Vec<BigRational>]) -> Option<usize> {
        Some(bareiss_rank(rows))
    }
    fn cost_factor(&self) -> u64 {
        40
    }
}

/// Fraction-free (Bareiss) rank of a rational matrix: rows are scaled to
/// integers and eliminated with exact divisions only.
pub fn bareiss_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|x| !x.is_zero()))
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            let (top, rest) = m.split_at_mut(r);
            let pivot_row = &top[rank];
            let row = &mut rest[0];
            let a = pivot_row[col].clone();
            let b = row[col].clone();
            for c in col..ncols {
                let v = &a * &row[c] - &b * &pivot_row[c];
                row[c] = v / &prev;
            }
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn axioms<F: Field>(f: &F, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
            assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
            if let Some(ai) = f.inv(&a) {
                assert_eq!(f.mul(&a, &ai), f.one());
            } else {
                assert!(f.is_zero(&a));
            }
        }
    }

    #[test]
    fn field_axioms_hold() {
        axioms(&PrimeField::new(2).unwrap(), 1);
        axioms(&PrimeField::new(2147483647).unwrap(), 2);
        axioms(&Rationals, 3);
        for (p, k) in [(2, 2), (2, 4), (3, 3), (5, 2), (7, 4), (11, 2), (13, 3)] {
            axioms(&ExtField::new(p, k).unwrap(), p * 10 + k as u64);
        }
    }

    #[test]
    fn modulus_table_is_irreducible() {
        for &(p, k, c) in MODULUS_TABLE {
            let base = PrimeField::new(p as u64).unwrap();
            let mut f = c.to_vec();
            f.push(1);
            assert!(poly_is_irreducible(&base, &f), "p={p} k={k}");
        }
    }

    #[test]
    fn irreducibility_test_rejects_reducible() {
        let f2 = PrimeField::new(2).unwrap();
        // x^2 + 1 = (x+1)^2 over F_2; x^4 + x^2 + 1 = (x^2+x+1)^2
        assert!(!poly_is_irreducible(&f2, &[1, 0, 1]));
        assert!(!poly_is_irreducible(&f2, &[1, 0, 1, 0, 1]));
        assert!(poly_is_irreducible(&f2, &[1, 1, 1]));
        let f11 = PrimeField::new(11).unwrap();
        let c = first_irreducible(&f11, 2);
        // x^2 + 1 is irreducible mod 11 since -1 is a non-residue
        assert_eq!(c, vec![1, 0]);
    }

    #[test]
    fn extension_multiplicative_group_is_cyclic_of_full_order() {
        let f = ExtField::new(2, 4).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for i in 1..16 {
            seen.insert(f.element(i));
        }
        assert_eq!(seen.len(), 15);
        let q = 16u128;
        for i in 1..16 {
            assert_eq!(f.pow(&f.element(i), q - 1), f.one());
        }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("QQ".parse::<FieldSpec>().unwrap(), FieldSpec::RATIONALS);
        assert_eq!("GF(5)".parse::<FieldSpec>().unwrap(), FieldSpec::prime(5).unwrap());
        assert_eq!("GF(2)^2".parse::<FieldSpec>().unwrap(), FieldSpec::new(2, 2).unwrap());
        assert_eq!("GF(3^2)".parse::<FieldSpec>().unwrap(), FieldSpec::new(3, 2).unwrap());
        assert_eq!("GF(8)".parse::<FieldSpec>().unwrap(), FieldSpec::new(2, 3).unwrap());
        assert!("GF(6)".parse::<FieldSpec>().is_err());
        assert!("GF(2^5)".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn ratio_reduction_and_division_by_p() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap(), 3);
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(10)).is_err());
    }

    #[test]
    fn bareiss_matches_known_ranks() {
        let q = Rationals;
        let r = |v: &[i64]| v.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        assert_eq!(bareiss_rank(&[r(&[1, 2, 3]), r(&[2, 4, 6]), r(&[1, 0, 1])]), 2);
        assert_eq!(bareiss_rank(&[r(&[0, 0]), r(&[0, 0])]), 0);
        assert_eq!(bareiss_rank(&[r(&[2, 1, 0]), r(&[0, 3, 1]), r(&[1, 1, 1])]), 3);
    }
}
