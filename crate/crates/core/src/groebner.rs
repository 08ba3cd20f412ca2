//! Buchberger's algorithm for homogeneous ideals, normal forms and standard
//! monomials.

use crate::field::Field;
use crate::poly::{monomials_of_degree, Monomial, Poly, TermOrder};

/// A reduced, monic Gröbner basis together with its order and source generators.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    pub order: TermOrder,
    pub basis: Vec<Poly<F>>,
    pub leads: Vec<Monomial>,
    pub generators: Vec<Poly<F>>,
    /// `Some(d)` when S-pairs with lcm of degree above `d` were skipped.
    pub degree_bound: Option<usize>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn nvars(&self) -> usize {
        self.order.perm.len()
    }

    /// Whether `m` is divisible by some leading monomial.
    pub fn is_reducible(&self, m: &Monomial) -> bool {
        self.leads.iter().any(|l| l.divides(m))
    }

    /// Maximum degree of a basis element (0 for the empty basis).
    pub fn max_degree(&self) -> usize {
        self.leads.iter().map(|m| m.degree()).max().unwrap_or(0)
    }
}

/// Full reduction of `p` modulo `basis` (with leading monomials `leads`).
pub fn reduce<F: Field>(
    field: &F,
    p: &Poly<F>,
    basis: &[Poly<F>],
    leads: &[Monomial],
    order: &TermOrder,
) -> Poly<F> {
    let mut rest = p.clone();
    let mut out = Poly::zero(p.nvars);
    loop {
        let Some((m, c)) = rest.lead(order).map(|(m, c)| (m.clone(), c.clone())) else {
            break;
        };
        match leads.iter().position(|l| l.divides(&m)) {
            Some(i) => {
                let g = &basis[i];
                let gc = g.terms.get(&leads[i]).expect("lead present");
                let factor = field.mul(&c, &field.inv(gc).expect("unit"));
                let q = m.div(&leads[i]);
                rest = rest.sub(field, &g.mul_term(field, &q, &factor));
            }
            None => {
                rest.terms.remove(&m);
                out.terms.insert(m, c);
            }
        }
    }
    out
}

/// Reduced Gröbner basis of the ideal generated by homogeneous `gens`.
pub fn buchberger<F: Field>(field: &F, gens: &[Poly<F>], order: &TermOrder) -> GroebnerBasis<F> {
    buchberger_bounded(field, gens, order, None)
}

/// Buchberger's algorithm with normal pair selection. With `bound = Some(d)`
/// only S-pairs whose lcm has degree at most `d` are processed, which yields
/// the truncation of the Gröbner basis to degrees `<= d`.
pub fn buchberger_bounded<F: Field>(
    field: &F,
    gens: &[Poly<F>],
    order: &TermOrder,
    bound: Option<usize>,
) -> GroebnerBasis<F> {
    let mut basis: Vec<Poly<F>> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    // Inter-reduce the input first, in order of degree then leading term.
    let mut input: Vec<Poly<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by(|a, b| {
        a.degree().cmp(&b.degree()).then_with(|| {
            order.cmp(a.lead_monomial(order).unwrap(), b.lead_monomial(order).unwrap())
        })
    });
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let add = |p: Poly<F>, basis: &mut Vec<Poly<F>>, leads: &mut Vec<Monomial>, pairs: &mut Vec<(usize, usize)>| {
        let p = p.monic(field, order);
        let lm = p.lead_monomial(order).unwrap().clone();
        let k = basis.len();
        basis.push(p);
        leads.push(lm);
        for i in 0..k {
            pairs.push((i, k));
        }
    };
    for g in input {
        let r = reduce(field, &g, &basis, &leads, order);
        if !r.is_zero() {
            add(r, &mut basis, &mut leads, &mut pairs);
        }
    }
    loop {
        if pairs.is_empty() {
            break;
        }
        // Normal selection: smallest lcm degree, then smallest lcm, then indices.
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (i, j) = pairs[a];
                let (k, l) = pairs[b];
                let la = leads[i].lcm(&leads[j]);
                let lb = leads[k].lcm(&leads[l]);
                la.degree()
                    .cmp(&lb.degree())
                    .then_with(|| order.cmp(&la, &lb))
                    .then_with(|| pairs[a].cmp(&pairs[b]))
            })
            .unwrap();
        let (i, j) = pairs.remove(best);
        let lcm = leads[i].lcm(&leads[j]);
        if let Some(d) = bound {
            if lcm.degree() > d {
                continue;
            }
        }
        if leads[i].is_coprime(&leads[j]) {
            continue;
        }
        // Chain criterion: skip if some third lead divides the lcm and both
        // companion pairs have already been handled.
        let pending = |a: usize, b: usize, pairs: &[(usize, usize)]| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            pairs.contains(&(a, b))
        };
        if (0..basis.len()).any(|k| {
            k != i && k != j && leads[k].divides(&lcm) && !pending(i, k, &pairs) && !pending(j, k, &pairs)
        }) {
            continue;
        }
        let s = spoly(field, &basis[i], &basis[j], &leads[i], &leads[j], &lcm);
        let r = reduce(field, &s, &basis, &leads, order);
        if !r.is_zero() {
            add(r, &mut basis, &mut leads, &mut pairs);
        }
    }
    let (basis, leads) = interreduce(field, basis, order);
    GroebnerBasis { order: order.clone(), basis, leads, generators: gens.to_vec(), degree_bound: bound }
}

fn spoly<F: Field>(
    field: &F,
    f: &Poly<F>,
    g: &Poly<F>,
    lf: &Monomial,
    lg: &Monomial,
    lcm: &Monomial,
) -> Poly<F> {
    // Both inputs are monic.
    let a = f.mul_term(field, &lcm.div(lf), &field.one());
    let b = g.mul_term(field, &lcm.div(lg), &field.one());
    a.sub(field, &b)
}

fn interreduce<F: Field>(
    field: &F,
    basis: Vec<Poly<F>>,
    order: &TermOrder,
) -> (Vec<Poly<F>>, Vec<Monomial>) {
    let leads: Vec<Monomial> = basis.iter().map(|p| p.lead_monomial(order).unwrap().clone()).collect();
    // Drop elements whose lead is divisible by another lead (keep the first of equal leads).
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !(0..basis.len()).any(|j| {
                j != i && leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i)
            })
        })
        .collect();
    let mut min_basis: Vec<Poly<F>> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut min_leads: Vec<Monomial> = keep.iter().map(|&i| leads[i].clone()).collect();
    for i in 0..min_basis.len() {
        let others: Vec<Poly<F>> =
            min_basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        let other_leads: Vec<Monomial> =
            min_leads.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, m)| m.clone()).collect();
        let lead_term = Poly::monomial(field, min_leads[i].clone(), field.one());
        let tail = min_basis[i].sub(field, &lead_term);
        let tail = reduce(field, &tail, &others, &other_leads, order);
        min_basis[i] = lead_term.add(field, &tail);
    }
    let mut idx: Vec<usize> = (0..min_basis.len()).collect();
    idx.sort_by(|&a, &b| order.cmp(&min_leads[a], &min_leads[b]));
    let basis: Vec<Poly<F>> = idx.iter().map(|&i| min_basis[i].clone()).collect();
    min_leads = idx.iter().map(|&i| min_leads[i].clone()).collect();
    (basis, min_leads)
}

/// Normal form of `p` with respect to a reduced Gröbner basis.
pub fn normal_form<F: Field>(field: &F, p: &Poly<F>, gb: &GroebnerBasis<F>) -> Poly<F> {
    reduce(field, p, &gb.basis, &gb.leads, &gb.order)
}

/// Degree-`d` monomials not divisible by any leading monomial, in increasing term order.
pub fn standard_monomials<F: Field>(gb: &GroebnerBasis<F>, d: usize) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = monomials_of_degree(gb.nvars(), d)
        .into_iter()
        .filter(|m| !gb.is_reducible(m))
        .collect();
    out.sort_by(|a, b| gb.order.cmp(a, b));
    out
}
