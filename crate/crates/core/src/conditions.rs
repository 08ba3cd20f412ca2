//! Structural condition sets as checkable predicates on a coordinate system
//! `x_1, ..., x_e` of `R_1`, together with the quadrics each set prescribes
//! for a Golod witness.
//!
//! A condition is a list of clauses evaluated in order; the first failing
//! clause is reported. Every clause records how many leading coordinates it
//! reads, so partial assignments can be pruned during a search.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::IdealSlice;
use crate::linalg::{self, Mat};
use crate::poly::Poly;

/// Identifiers of the implemented condition sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConditionId {
    /// The eight Artinian structural cases, numbered 1 to 8.
    Case(u8),
    /// `𝔪² = x₁𝔪 + (x₂²)` with `x₁² = 0 = x₁x₂`.
    Dim2A,
    /// Relations `x₁², x₁x₂, x₂² − x₁x₃, x₂x₃` with `e = 3`.
    Dim2C,
    /// `I` is principal.
    Hypersurface,
    /// `x₁x₂ = 0` and `𝔪² = x₁𝔪 = x₂𝔪`.
    ConcaPair,
    /// `R` not Artinian, `𝔪² = x₁𝔪 + (x₂²)`, `x₁² = 0 = x₁x₂`.
    SquarePlusPower,
    /// `𝔪² = x₁𝔪`, `x₁x₂ = 0`, `ann(x₁) ∩ 𝔪² ⊆ x₂𝔪`, `x_i𝔪 ⊆ x₂𝔪` for `i ≠ 1`.
    AnnihilatorCover,
    /// `x₁² = x₁x₂ = x₂² − x₁x₃ = x₂x₃ = 0` and `x_i𝔪 = 0` for `i ≥ 4`.
    SocleTail,
    /// `e = 4`, `x₁² = x₁x₄ = x₁x₂ = x₂x₄ = x₂x₃ = x₂² − x₃x₄ = x₄² − x₁x₃ = 0`.
    FourVar,
}

impl ConditionId {
    pub const ALL: [ConditionId; 16] = [
        ConditionId::Case(1),
        ConditionId::Case(2),
        ConditionId::Case(3),
        ConditionId::Case(4),
        ConditionId::Case(5),
        ConditionId::Case(6),
        ConditionId::Case(7),
        ConditionId::Case(8),
        ConditionId::Dim2A,
        ConditionId::Dim2C,
        ConditionId::Hypersurface,
        ConditionId::ConcaPair,
        ConditionId::SquarePlusPower,
        ConditionId::AnnihilatorCover,
        ConditionId::SocleTail,
        ConditionId::FourVar,
    ];

    /// Number of leading coordinates the condition names explicitly.
    pub fn roles(self) -> usize {
        match self {
            ConditionId::Case(1) => 1,
            ConditionId::Case(8) => 2,
            ConditionId::Case(2) | ConditionId::Case(3) | ConditionId::Case(4) => 3,
            ConditionId::Case(_) => 4,
            ConditionId::Dim2A
            | ConditionId::ConcaPair
            | ConditionId::SquarePlusPower
            | ConditionId::AnnihilatorCover => 2,
            ConditionId::Dim2C | ConditionId::SocleTail => 3,
            ConditionId::Hypersurface => 0,
            ConditionId::FourVar => 4,
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionId::Case(n) => write!(f, "case-{n}"),
            ConditionId::Dim2A => write!(f, "dim2-a"),
            ConditionId::Dim2C => write!(f, "dim2-c"),
            ConditionId::Hypersurface => write!(f, "hypersurface"),
            ConditionId::ConcaPair => write!(f, "conca-pair"),
            ConditionId::SquarePlusPower => write!(f, "square-plus-power"),
            ConditionId::AnnihilatorCover => write!(f, "annihilator-cover"),
            ConditionId::SocleTail => write!(f, "socle-tail"),
            ConditionId::FourVar => write!(f, "four-var"),
        }
    }
}

impl FromStr for ConditionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ConditionId> {
        ConditionId::ALL
            .iter()
            .copied()
            .find(|c| c.to_string() == s.trim())
            .ok_or_else(|| Error::UnknownCondition(s.to_string()))
    }
}

/// Outcome of evaluating a condition set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub holds: bool,
    pub failing_clause: Option<String>,
    pub clauses_checked: usize,
    /// Indices (1-based) selected by existential clauses, e.g. `("j", 3)`.
    pub choices: Vec<(String, usize)>,
}

/// Evaluation context: a full coordinate system of which the first `known`
/// forms are genuinely assigned.
struct Ctx<'a, F: Field> {
    alg: &'a GradedAlgebra<F>,
    /// Forms as `R_1` coordinates.
    x: Vec<Vec<F::Elem>>,
    known: usize,
    checked: usize,
    choices: Vec<(String, usize)>,
}

/// Degree bound for comparing ideals generated in degree 2: such ideals agree
/// everywhere once they agree in degree 2.
const QUAD_TOP: usize = 2;

enum Step {
    Pass,
    Skip,
    Fail(String),
}

impl<'a, F: Field> Ctx<'a, F> {
    fn e(&self) -> usize {
        self.x.len()
    }

    /// `x_a x_b` in `R_2` (1-based indices).
    fn p(&self, a: usize, b: usize) -> Vec<F::Elem> {
        self.alg.mul(&self.x[a - 1], 1, &self.x[b - 1], 1).expect("top >= 2")
    }

    fn sq(&self, a: usize) -> Vec<F::Elem> {
        self.p(a, a)
    }

    fn minus(&self, u: &[F::Elem], v: &[F::Elem]) -> Vec<F::Elem> {
        u.iter().zip(v).map(|(a, b)| self.alg.field.sub(a, b)).collect()
    }

    fn zero(&self, v: &[F::Elem]) -> bool {
        v.iter().all(|c| self.alg.field.is_zero(c))
    }

    /// `x_a 𝔪`.
    fn xm(&self, a: usize) -> IdealSlice<F::Elem> {
        self.alg.form_times_max(&self.x[a - 1], QUAD_TOP).expect("top >= 2")
    }

    fn m2(&self) -> IdealSlice<F::Elem> {
        self.alg.power_of_max(2, QUAD_TOP).expect("top >= 2")
    }

    /// Ideal generated by degree-2 elements.
    fn quad(&self, gens: &[Vec<F::Elem>]) -> IdealSlice<F::Elem> {
        let g: Vec<_> = gens.iter().map(|v| (2, v.clone())).collect();
        self.alg.ideal(&g, QUAD_TOP).expect("top >= 2")
    }

    fn sum(&self, parts: &[IdealSlice<F::Elem>]) -> IdealSlice<F::Elem> {
        let mut it = parts.iter();
        let mut acc = it.next().expect("nonempty").clone();
        for p in it {
            acc = self.alg.sum(&acc, p);
        }
        acc
    }

    fn within(&self, v: &[F::Elem], a: &IdealSlice<F::Elem>) -> bool {
        a.pieces[2].contains(&self.alg.field, v)
    }

    fn eq(&self, a: &IdealSlice<F::Elem>, b: &IdealSlice<F::Elem>) -> bool {
        self.alg.equals(a, b)
    }

    /// Evaluates one clause reading the first `need` coordinates.
    fn clause(&mut self, need: usize, text: &str, eval: impl FnOnce(&Self) -> bool) -> Step {
        let need = if need == ALL { self.e() } else { need };
        if need > self.known {
            return Step::Skip;
        }
        if need > self.e() {
            return Step::Fail(format!("{text} (needs x{need}, but e = {})", self.e()));
        }
        self.checked += 1;
        if eval(self) {
            Step::Pass
        } else {
            Step::Fail(text.to_string())
        }
    }
}

/// Evaluates clauses in order, returning the report at the first failure.
macro_rules! clauses {
    ($ctx:ident; $( [$need:expr, $text:expr, |$c:ident| $body:expr] )*) => {{
        $(
            if let Step::Fail(msg) = $ctx.clause($need, &$text, |$c| $body) {
                return Some(msg);
            }
        )*
    }};
}

const ALL: usize = usize::MAX;

/// Evaluates `id` on the coordinate system `forms` (coefficient vectors on the
/// variables). With fewer than `e` forms the coordinates are completed by
/// unit vectors; clauses reading only the supplied forms are evaluated, and
/// when `partial` is false the completed system is checked in full.
pub fn condition_check<F: Field>(
    alg: &GradedAlgebra<F>,
    id: ConditionId,
    forms: &[Vec<F::Elem>],
    partial: bool,
) -> Result<ConditionReport> {
    let x = complete_basis(alg, forms, &[])?;
    let known = if partial { forms.len() } else { usize::MAX };
    Ok(evaluate(alg, id, x, known))
}

/// Evaluation on an already complete coordinate system.
pub(crate) fn evaluate<F: Field>(
    alg: &GradedAlgebra<F>,
    id: ConditionId,
    coeffs: Vec<Vec<F::Elem>>,
    known: usize,
) -> ConditionReport {
    let x = coeffs.iter().map(|c| alg.linear_coords(c)).collect();
    let mut ctx = Ctx { alg, x, known, checked: 0, choices: Vec::new() };
    let failure = run(&mut ctx, id);
    ConditionReport {
        holds: failure.is_none(),
        failing_clause: failure,
        clauses_checked: ctx.checked,
        choices: ctx.choices,
    }
}

/// Extends `forms` to a basis of `R_1`, drawing first from `preferred` and then
/// from the unit vectors.
pub fn complete_basis<F: Field>(
    alg: &GradedAlgebra<F>,
    forms: &[Vec<F::Elem>],
    preferred: &[Vec<F::Elem>],
) -> Result<Vec<Vec<F::Elem>>> {
    let f = &alg.field;
    let e = alg.e();
    if forms.len() > e || forms.iter().any(|l| l.len() != e) {
        return Err(Error::Precondition(format!("expected at most {e} forms of length {e}")));
    }
    let mut span = linalg::Echelon::new(e);
    for l in forms {
        if !span.insert(f, l.clone()) {
            return Err(Error::Precondition("assigned forms are linearly dependent".into()));
        }
    }
    let mut out = forms.to_vec();
    let units = linalg::identity(f, e);
    for v in preferred.iter().chain(units.iter()) {
        if out.len() == e {
            break;
        }
        if span.insert(f, v.clone()) {
            out.push(v.clone());
        }
    }
    Ok(out)
}

fn run<F: Field>(c: &mut Ctx<'_, F>, id: ConditionId) -> Option<String> {
    match id {
        ConditionId::Case(1) => clauses!(c;
            [1, "x₁² = 0", |c| c.zero(&c.sq(1))]
            [1, "𝔪² = x₁𝔪", |c| c.eq(&c.m2(), &c.xm(1))]
        ),
        ConditionId::Case(2) => {
            clauses!(c;
                [1, "x₁² = 0", |c| c.zero(&c.sq(1))]
                [2, "x₂² ∈ x₁𝔪", |c| c.within(&c.sq(2), &c.xm(1))]
                [2, "𝔪² = x₁𝔪 + x₂𝔪", |c| c.eq(&c.m2(), &c.sum(&[c.xm(1), c.xm(2)]))]
            );
            if c.known < 2 {
                return None;
            }
            let j = if c.zero(&c.p(1, 2)) { 3 } else { 2 };
            c.choices.push(("j".into(), j));
            clauses!(c;
                [j, format!("x₁𝔪 = (x₁x{})", sub(j)), |c| c.eq(&c.xm(1), &c.quad(&[c.p(1, j)]))]
            );
        }
        ConditionId::Case(3) => clauses!(c;
            [1, "x₁² = 0", |c| c.zero(&c.sq(1))]
            [2, "x₁x₂ = 0", |c| c.zero(&c.p(1, 2))]
            [2, "x₂² ∈ x₁𝔪", |c| c.within(&c.sq(2), &c.xm(1))]
            [2, "𝔪² = x₁𝔪 + x₂𝔪", |c| c.eq(&c.m2(), &c.sum(&[c.xm(1), c.xm(2)]))]
        ),
        ConditionId::Case(4) => clauses!(c;
            [1, "x₁² = 0", |c| c.zero(&c.sq(1))]
            [2, "x₂² ∈ x₁𝔪", |c| c.within(&c.sq(2), &c.xm(1))]
            [3, "x₁x₃ = 0", |c| c.zero(&c.p(1, 3))]
            [3, "𝔪² = x₁𝔪 + x₂(x₃)", |c| c.eq(&c.m2(), &c.sum(&[c.xm(1), c.quad(&[c.p(2, 3)])]))]
        ),
        ConditionId::Case(5) => clauses!(c;
            [1, "x₁² = 0", |c| c.zero(&c.sq(1))]
            [2, "x₂² ∈ x₁𝔪", |c| c.within(&c.sq(2), &c.xm(1))]
            [3, "𝔪² = x₁𝔪 + x₂(x₃)", |c| c.eq(&c.m2(), &c.sum(&[c.xm(1), c.quad(&[c.p(2, 3)])]))]
            [4, "x₁x₄ = 0", |c| c.zero(&c.p(1, 4))]
            [4, "x₂x₄ ∈ x₁𝔪", |c| c.within(&c.p(2, 4), &c.xm(1))]
            [4, "x₄² − x₂x₃ ∈ x₁𝔪", |c| c.within(&c.minus(&c.sq(4), &c.p(2, 3)), &c.xm(1))]
        ),
        ConditionId::Case(6) => {
            clauses!(c;
                [1, "x₁² = 0", |c| c.zero(&c.sq(1))]
                [2, "x₂² ∈ x₁𝔪", |c| c.within(&c.sq(2), &c.xm(1))]
                [2, "𝔪² = x₁𝔪 + x₂𝔪", |c| c.eq(&c.m2(), &c.sum(&[c.xm(1), c.xm(2)]))]
                [3, "x₁x₃ = 0", |c| c.zero(&c.p(1, 3))]
                [3, "x₃𝔪 = (x₃²)", |c| c.eq(&c.xm(3), &c.quad(&[c.sq(3)]))]
            );
            if c.known < 3 {
                return None;
            }
            let j = if c.within(&c.p(1, 2), &c.xm(3)) { 4 } else { 2 };
            c.choices.push(("j".into(), j));
            clauses!(c;
                [j.max(3), format!("x₁𝔪 = (x₁x{}, x₃²)", sub(j)),
                    |c| c.eq(&c.xm(1), &c.quad(&[c.p(1, j), c.sq(3)]))]
            );
        }
        ConditionId::Case(7) => {
            clauses!(c;
                [1, "x₁² = 0", |c| c.zero(&c.sq(1))]
                [2, "x₂² ∈ x₁𝔪", |c| c.within(&c.sq(2), &c.xm(1))]
                [3, "x₃² ∈ (x₁,x₂)𝔪", |c| c.within(&c.sq(3), &c.sum(&[c.xm(1), c.xm(2)]))]
                [3, "𝔪² = x₁𝔪 + x₂𝔪 + x₃𝔪", |c| c.eq(&c.m2(), &c.sum(&[c.xm(1), c.xm(2), c.xm(3)]))]
            );
            if c.known < c.e() {
                return None;
            }
            let text = "x₁𝔪 = (x₁x_i) and (x₁,x₂)𝔪 = (x₁x_i, x₂x_j) with x₂x_j ∉ (x₁x_i) for some i ≠ 1, j ∉ {1,2}";
            let found = case7_indices(c);
            c.checked += 1;
            match found {
                Some((i, j)) => {
                    c.choices.push(("i".into(), i));
                    c.choices.push(("j".into(), j));
                }
                None => return Some(text.into()),
            }
        }
        ConditionId::Case(8) | ConditionId::ConcaPair => clauses!(c;
            [1, "𝔪² = x₁𝔪", |c| c.eq(&c.m2(), &c.xm(1))]
            [2, "x₁x₂ = 0", |c| c.zero(&c.p(1, 2))]
            [2, "𝔪² = x₂𝔪", |c| c.eq(&c.m2(), &c.xm(2))]
        ),
        ConditionId::Case(n) => return Some(format!("no structural case {n}")),
        ConditionId::Dim2A => clauses!(c;
            [1, "x₁² = 0", |c| c.zero(&c.sq(1))]
            [2, "x₁x₂ = 0", |c| c.zero(&c.p(1, 2))]
            [2, "𝔪² = x₁𝔪 + (x₂²)", |c| c.eq(&c.m2(), &c.sum(&[c.xm(1), c.quad(&[c.sq(2)])]))]
        ),
        ConditionId::SquarePlusPower => clauses!(c;
            [0, "R is not Artinian", |c| !c.alg.is_artinian()]
            [1, "x₁² = 0", |c| c.zero(&c.sq(1))]
            [2, "x₁x₂ = 0", |c| c.zero(&c.p(1, 2))]
            [2, "𝔪² = x₁𝔪 + (x₂²)", |c| c.eq(&c.m2(), &c.sum(&[c.xm(1), c.quad(&[c.sq(2)])]))]
        ),
        ConditionId::Dim2C => clauses!(c;
            [0, "e = 3", |c| c.e() == 3]
            [1, "x₁² = 0", |c| c.zero(&c.sq(1))]
            [2, "x₁x₂ = 0", |c| c.zero(&c.p(1, 2))]
            [3, "x₂² − x₁x₃ = 0", |c| c.zero(&c.minus(&c.sq(2), &c.p(1, 3)))]
            [3, "x₂x₃ = 0", |c| c.zero(&c.p(2, 3))]
        ),
        ConditionId::Hypersurface => clauses!(c;
            [0, "I is principal", |c| c.alg.pres.relations.len() == 1]
        ),
        ConditionId::AnnihilatorCover => clauses!(c;
            [1, "𝔪² = x₁𝔪", |c| c.eq(&c.m2(), &c.xm(1))]
            [2, "x₁x₂ = 0", |c| c.zero(&c.p(1, 2))]
            [2, "ann(x₁) ∩ 𝔪² ⊆ x₂𝔪", |c| ann_clause(c)]
            [ALL, "x_i𝔪 ⊆ x₂𝔪 for all i ≠ 1", |c| {
                let target = c.xm(2);
                (2..=c.e()).all(|i| c.alg.contains(&target, &c.xm(i)))
            }]
        ),
        ConditionId::SocleTail => clauses!(c;
            [1, "x₁² = 0", |c| c.zero(&c.sq(1))]
            [2, "x₁x₂ = 0", |c| c.zero(&c.p(1, 2))]
            [3, "x₂² − x₁x₃ = 0", |c| c.zero(&c.minus(&c.sq(2), &c.p(1, 3)))]
            [3, "x₂x₃ = 0", |c| c.zero(&c.p(2, 3))]
            [ALL, "x_i𝔪 = 0 for all i ≥ 4", |c| (4..=c.e()).all(|i| (1..=c.e()).all(|k| c.zero(&c.p(i, k))))]
        ),
        ConditionId::FourVar => clauses!(c;
            [0, "e = 4", |c| c.e() == 4]
            [1, "x₁² = 0", |c| c.zero(&c.sq(1))]
            [2, "x₁x₂ = 0", |c| c.zero(&c.p(1, 2))]
            [3, "x₂x₃ = 0", |c| c.zero(&c.p(2, 3))]
            [4, "x₁x₄ = 0", |c| c.zero(&c.p(1, 4))]
            [4, "x₂x₄ = 0", |c| c.zero(&c.p(2, 4))]
            [4, "x₂² − x₃x₄ = 0", |c| c.zero(&c.minus(&c.sq(2), &c.p(3, 4)))]
            [4, "x₄² − x₁x₃ = 0", |c| c.zero(&c.minus(&c.sq(4), &c.p(1, 3)))]
        ),
    }
    None
}

/// `ann(x₁) ∩ 𝔪² ⊆ x₂𝔪`, checked in every degree the truncation determines.
fn ann_clause<F: Field>(c: &Ctx<'_, F>) -> bool {
    let alg = c.alg;
    let top = alg.top;
    let ann = alg.annihilator(&[(1, c.x[0].clone())]).expect("annihilator");
    let m2 = alg.power_of_max(2, ann.top).expect("power");
    let inter = alg.intersect(&ann, &m2);
    let x2m = alg.form_times_max(&c.x[1], ann.top.min(top)).expect("x2 m");
    alg.contains(&x2m, &inter)
}

/// Indices `(i, j)` witnessing the existential clause of case 7, preferring
/// `i = 2` when `x₁x₂ ≠ 0` and otherwise `i = 3`.
fn case7_indices<F: Field>(c: &Ctx<'_, F>) -> Option<(usize, usize)> {
    let e = c.e();
    let x1m = c.xm(1);
    let x12m = c.sum(&[c.xm(1), c.xm(2)]);
    let mut order: Vec<usize> = (2..=e).collect();
    if c.zero(&c.p(1, 2)) && e >= 3 {
        order.retain(|&i| i != 3);
        order.insert(0, 3);
    }
    for i in order {
        let pi = c.quad(&[c.p(1, i)]);
        if !c.eq(&x1m, &pi) {
            continue;
        }
        for j in 3..=e {
            let pj = c.p(2, j);
            if !c.within(&pj, &pi) && c.eq(&x12m, &c.quad(&[c.p(1, i), pj.clone()])) {
                return Some((i, j));
            }
        }
    }
    None
}

fn sub(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().chars().map(|d| DIGITS[d.to_digit(10).unwrap() as usize]).collect()
}

/// Degree-2 polynomial `Σ c_{ab} ℓ_a ℓ_b` in the original variables.
fn quadric<F: Field>(alg: &GradedAlgebra<F>, forms: &[Vec<F::Elem>], terms: &[(F::Elem, usize, usize)]) -> Poly<F> {
    let f = &alg.field;
    let mut out = Poly::zero(alg.e());
    for (c, a, b) in terms {
        let p = alg.form_poly(&forms[a - 1]).mul(f, &alg.form_poly(&forms[b - 1])).scale(f, c);
        out = out.add(f, &p);
    }
    out
}

/// Solves `x_n² = Σ_p x_p · (Σ_{k ∈ allowed_p} c_k x_k)` and returns the
/// quadric `ℓ_n² − Σ c ℓ_p ℓ_k`, or `None` when no solution exists.
fn reduced_square<F: Field>(
    alg: &GradedAlgebra<F>,
    forms: &[Vec<F::Elem>],
    n: usize,
    parts: &[(usize, Vec<usize>)],
) -> Option<Poly<F>> {
    let f = &alg.field;
    let x: Vec<Vec<F::Elem>> = forms.iter().map(|c| alg.linear_coords(c)).collect();
    let prod = |a: usize, b: usize| alg.mul(&x[a - 1], 1, &x[b - 1], 1).expect("top >= 2");
    let mut cols: Vec<(usize, usize)> = Vec::new();
    for (p, ks) in parts {
        for &k in ks {
            cols.push((*p, k));
        }
    }
    let rhs = prod(n, n);
    let mut terms = vec![(f.one(), n, n)];
    if !cols.is_empty() {
        let colvecs: Vec<Vec<F::Elem>> = cols.iter().map(|&(p, k)| prod(p, k)).collect();
        let m: Mat<F::Elem> = (0..alg.h(2)).map(|r| colvecs.iter().map(|v| v[r].clone()).collect()).collect();
        let sol = linalg::solve(f, &m, cols.len(), &rhs)?;
        for ((p, k), c) in cols.iter().zip(sol) {
            if !f.is_zero(&c) {
                terms.push((f.neg(&c), *p, *k));
            }
        }
    } else if !rhs.iter().all(|c| f.is_zero(c)) {
        return None;
    }
    Some(quadric(alg, forms, &terms))
}

/// The quadrics a satisfied condition prescribes for a witness, written in the
/// original variables (`x̃_k ↦ ℓ_k`). `None` when a required linear solve has
/// no solution. Every returned quadric is checked to lie in `I`.
pub fn prescribed_quadrics<F: Field>(
    alg: &GradedAlgebra<F>,
    id: ConditionId,
    forms: &[Vec<F::Elem>],
    report: &ConditionReport,
) -> Result<Option<Vec<Poly<F>>>> {
    let f = &alg.field;
    let e = alg.e();
    if forms.len() != e {
        return Err(Error::Precondition("prescribed quadrics need a full coordinate system".into()));
    }
    let choice = |name: &str| report.choices.iter().find(|(n, _)| n == name).map(|(_, v)| *v);
    let one = f.one();
    let mono = |a: usize, b: usize| quadric(alg, forms, &[(one.clone(), a, b)]);
    let from2 = |skip: &[usize]| -> Vec<usize> { (2..=e).filter(|k| !skip.contains(k)).collect() };
    // f_n with a_n ∈ span(x_2..x_e), b_n ∈ span(x_2..x_e) ∩ 𝔞 (b_2 = 0).
    let f_general = |n: usize, b_span: Vec<usize>, skip: &[usize]| -> Option<Poly<F>> {
        let b = if n == 2 { Vec::new() } else { b_span };
        reduced_square(alg, forms, n, &[(1, from2(skip)), (2, b)])
    };
    let quads: Option<Vec<Poly<F>>> = match id {
        ConditionId::Case(1) | ConditionId::Dim2A | ConditionId::SquarePlusPower => Some(vec![mono(1, 1)]),
        ConditionId::Case(2) => {
            let j = choice("j").unwrap_or(2);
            let mut v = vec![f_general(2, vec![], &[])];
            if j != 2 {
                v.push(f_general(j, from2(&[]), &[]));
            }
            v.into_iter().collect()
        }
        ConditionId::Case(3) => {
            let g = reduced_square(alg, forms, 3, &[(1, from2(&[])), (2, vec![3])]);
            g.map(|g| vec![mono(1, 1), g])
        }
        ConditionId::Case(4) => f_general(2, vec![], &[]).map(|g| vec![mono(1, 1), g]),
        ConditionId::Case(5) => f_general(4, vec![3], &[]).map(|g| vec![mono(1, 1), g]),
        ConditionId::Case(6) => {
            let j = choice("j").unwrap_or(2);
            let span = from2(&[3]);
            let mut v = vec![
                reduced_square(alg, forms, 2, &[(1, span.clone())]),
                reduced_square(alg, forms, 3, &[(1, span.clone())]),
            ];
            if j != 2 {
                v.push(reduced_square(alg, forms, j, &[(1, span.clone()), (2, span.clone())]));
            }
            v.into_iter().collect()
        }
        ConditionId::Case(7) => {
            let (i, j) = (choice("i").unwrap_or(2), choice("j").unwrap_or(3));
            let span = from2(&[]);
            let f7 = |n: usize| -> Option<Poly<F>> {
                let b = if n == 2 { vec![] } else { span.clone() };
                let c = if n <= 3 { vec![] } else { span.clone() };
                reduced_square(alg, forms, n, &[(1, span.clone()), (2, b), (3, c)])
            };
            let mut idx = vec![2];
            for n in [i, j] {
                if !idx.contains(&n) {
                    idx.push(n);
                }
            }
            idx.into_iter().map(f7).collect()
        }
        ConditionId::Case(8) | ConditionId::ConcaPair => Some(vec![mono(1, 2)]),
        ConditionId::AnnihilatorCover => Some(vec![mono(2, 1)]),
        ConditionId::Dim2C | ConditionId::SocleTail => Some(vec![mono(2, 3)]),
        ConditionId::FourVar => {
            Some(vec![quadric(alg, forms, &[(one.clone(), 2, 2), (f.neg(&one), 3, 4)])])
        }
        ConditionId::Hypersurface => Some(vec![alg.pres.relations[0].clone()]),
        ConditionId::Case(_) => None,
    };
    if let Some(qs) = &quads {
        for q in qs {
            let (_, v) = alg.element_of(q)?;
            assert!(v.iter().all(|c| f.is_zero(c)), "prescribed quadric is not in I");
        }
    }
    Ok(quads)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Presentation;
    use crate::field::{PrimeField, Rationals};

    fn alg<F: Field>(f: F, vars: &[&str], rels: &[&str], top: usize) -> GradedAlgebra<F> {
        let names = vars.iter().map(|s| s.to_string()).collect();
        let rels: Vec<String> = rels.iter().map(|s| s.to_string()).collect();
        GradedAlgebra::build(&Presentation::new(f, names, &rels).unwrap(), top).unwrap()
    }

    fn units<F: Field>(a: &GradedAlgebra<F>) -> Vec<Vec<F::Elem>> {
        linalg::identity(&a.field, a.e())
    }

    #[test]
    fn ids_round_trip() {
        for id in ConditionId::ALL {
            assert_eq!(id.to_string().parse::<ConditionId>().unwrap(), id);
        }
        assert!(matches!("case-9".parse::<ConditionId>(), Err(Error::UnknownCondition(_))));
    }

    #[test]
    fn case_eight_holds() {
        let f3 = PrimeField::new(3).unwrap();
        let a = alg(f3, &["x", "y"], &["x*y", "x^2-y^2"], 4);
        let r = condition_check(&a, ConditionId::Case(8), &units(&a), false).unwrap();
        assert!(r.holds, "{r:?}");
        let q = prescribed_quadrics(&a, ConditionId::Case(8), &units(&a), &r).unwrap().unwrap();
        assert_eq!(q[0].render(&f3, a.names()), "x*y");
    }

    #[test]
    fn case_one_fails_on_polynomial_ring() {
        let a = alg(Rationals, &["x", "y"], &[], 4);
        let r = condition_check(&a, ConditionId::Case(1), &units(&a), false).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failing_clause.as_deref(), Some("x₁² = 0"));
        // Skipping the square clause, the ideal clause fails.
        let b = alg(Rationals, &["x", "y"], &["x^2"], 4);
        let r = condition_check(&b, ConditionId::Case(1), &units(&b), false).unwrap();
        assert_eq!(r.failing_clause.as_deref(), Some("𝔪² = x₁𝔪"));
    }

    #[test]
    fn empty_tail_is_vacuous() {
        let a = alg(Rationals, &["x1", "x2", "x3"], &["x1^2", "x1*x2", "x2^2-x1*x3", "x2*x3"], 6);
        let r = condition_check(&a, ConditionId::SocleTail, &units(&a), false).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.clauses_checked, 5);
        assert!(condition_check(&a, ConditionId::Dim2C, &units(&a), false).unwrap().holds);
    }

    #[test]
    fn case_two_with_solved_quadrics() {
        // 𝔪² = x₁𝔪 + x₂𝔪 with x₁² = 0, x₂² = x₁x₂, x₁x₃ = 0.
        let q = Rationals;
        let a = alg(q, &["x1", "x2", "x3"], &["x1^2", "x2^2-x1*x2", "x1*x3", "x3^2-x1*x2"], 5);
        let r = condition_check(&a, ConditionId::Case(2), &units(&a), false).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.choices, vec![("j".to_string(), 2)]);
        let qs = prescribed_quadrics(&a, ConditionId::Case(2), &units(&a), &r).unwrap().unwrap();
        assert_eq!(qs.len(), 1);
        assert_eq!(qs[0].render(&q, a.names()), "-x1*x2 + x2^2");
    }

    #[test]
    fn partial_assignment_prunes() {
        let a = alg(Rationals, &["x", "y", "z"], &["x^2", "x*y"], 4);
        let x = vec![vec![Rationals.one(), Rationals.zero(), Rationals.zero()]];
        let r = condition_check(&a, ConditionId::Case(5), &x, true).unwrap();
        assert!(r.holds);
        assert_eq!(r.clauses_checked, 1);
        let y = vec![vec![Rationals.zero(), Rationals.one(), Rationals.zero()]];
        assert!(!condition_check(&a, ConditionId::Case(5), &y, true).unwrap().holds);
    }
}
