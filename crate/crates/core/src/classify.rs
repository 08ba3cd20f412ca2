//! The classification pipeline: socle reduction, branch selection, detection
//! of exceptional rings, structural matching, witness search and the Koszul
//! test, assembled into a versioned report.

use serde::{Deserialize, Serialize};

use crate::algebra::{GradedAlgebra, Presentation, PresentationText};
use crate::conditions::{complete_basis, evaluate, prescribed_quadrics, ConditionId, ConditionReport};
use crate::error::Result;
use crate::field::{Field, FieldSpec};
use crate::ideal::IdealSlice;
use crate::linalg::{self, Echelon, Mat};
use crate::poly::{parse_polynomial, Monomial, Poly};
use crate::resolution::{koszul_test, KoszulVerdict, ResolutionOptions, DEFAULT_BUDGET};
use crate::series::RationalSeries;
use crate::structure::{socle_degree1, trivial_fiber_reduce, FormEnumerator};
use crate::witness::{witness_search, GolodCertificate, WitnessConfig, WitnessContext, WitnessStatus};

/// Version of the report layout.
pub const SCHEMA_VERSION: &str = "1.0";

/// Runs `$body` with `$f` bound to the concrete field named by `$spec`.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {{
        let spec: $crate::field::FieldSpec = $spec;
        match (spec.characteristic, spec.extension_degree) {
            (0, _) => {
                let $f = $crate::field::Rationals;
                $body
            }
            (p, 1) => {
                let $f = $crate::field::PrimeField::new(p)?;
                $body
            }
            (p, k) => {
                let $f = $crate::field::ExtField::new(p, k)?;
                $body
            }
        }
    }};
}

/// Pipeline settings.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ClassifyConfig {
    pub n: usize,
    pub j: usize,
    pub budget: u128,
    pub seed: u64,
    pub max_codim: usize,
    /// Largest number of partial coordinate systems visited per condition.
    pub node_budget: usize,
    /// Also test `ν^R(𝔪) = 0` in the Koszul test.
    pub nu_powers: bool,
    /// Largest `|GL_3(𝔽_q)|` for which normal forms are compared.
    pub normal_form_limit: u64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            n: 8,
            j: 10,
            budget: DEFAULT_BUDGET,
            seed: 0,
            max_codim: 3,
            node_budget: 20_000,
            nu_powers: true,
            normal_form_limit: 20_000,
        }
    }
}

impl ClassifyConfig {
    pub fn resolution(&self) -> ResolutionOptions {
        ResolutionOptions { n: self.n, j: self.j, budget: self.budget, seed: None }
    }
}

/// Evidence for or against `H_R(t) = (1+2t-2t^3)/(1-t)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExceptionalEvidence {
    pub exceptional: bool,
    /// `h_0..h_J` of the socle-reduced ring.
    pub hilbert: Vec<usize>,
    pub prefix_matches: bool,
    pub series: String,
    pub series_matches: bool,
    /// First normal form (over small prime fields) isomorphic to the ring.
    pub normal_form: Option<String>,
    pub normal_form_searched: bool,
}

/// The exceptional Hilbert series.
pub fn exceptional_series() -> RationalSeries {
    RationalSeries::new(vec![1, 2, 0, -2], 1)
}

/// Hilbert-series test for exceptional rings on a socle-reduced algebra.
pub fn detect_exceptional<F: Field>(alg: &GradedAlgebra<F>, cfg: &ClassifyConfig) -> ExceptionalEvidence {
    let hilbert = alg.hilbert();
    let prefix_matches = hilbert.iter().enumerate().all(|(d, &h)| h == exceptional_h(d));
    let series_matches = alg.series == exceptional_series();
    let exceptional = prefix_matches && series_matches;
    let (normal_form, normal_form_searched) = if exceptional { normal_form_match(alg, cfg.normal_form_limit) } else { (None, false) };
    ExceptionalEvidence { exceptional, hilbert, prefix_matches, series: alg.series.render(), series_matches, normal_form, normal_form_searched }
}

fn exceptional_h(d: usize) -> usize {
    match d {
        0 => 1,
        1 | 2 => 3,
        _ => 1,
    }
}

/// Published normal forms of exceptional rings in variables `x, y, z`,
/// instantiated over a prime field with every admissible parameter value.
pub fn normal_forms(p: u64) -> Vec<(String, Vec<String>)> {
    let mut out = vec![
        ("dali-i".to_string(), vec!["y^2+x*y".into(), "x*y+z^2".into(), "x*z".into()]),
        ("dali-ii".to_string(), vec!["y^2".into(), "x*y+z^2".into(), "x*z".into()]),
        ("dali-iii".to_string(), vec!["y^2".into(), "x*y+y*z+z^2".into(), "x*z".into()]),
    ];
    for a in 0..p {
        for b in 1..p {
            out.push((format!("nk1(alpha={a},beta={b})"), vec!["x*y".into(), "x^2-y*z".into(), format!("y^2-{a}*y*z-{b}*x*z")]));
        }
    }
    for g in 0..p {
        out.push((format!("nk2(gamma={g})"), vec!["x*y".into(), "x^2-y*z".into(), format!("z^2-{g}*x*z")]));
    }
    for a in 0..p {
        for b in 0..p {
            for g in 0..p {
                if a == 0 && g == 0 {
                    continue;
                }
                out.push((
                    format!("nk3(alpha={a},beta={b},gamma={g})"),
                    vec!["x*y".into(), format!("z^2+{a}*y^2+{b}*y*z"), format!("x*z+y*z+{g}*x^2")],
                ));
            }
        }
    }
    out
}

/// Compares the degree-2 part of `I` with every normal form under every
/// invertible change of variables, when the field is prime and small.
fn normal_form_match<F: Field>(alg: &GradedAlgebra<F>, limit: u64) -> (Option<String>, bool) {
    let f = &alg.field;
    let spec = f.spec();
    let e = alg.e();
    if e != 3 || spec.extension_degree != 1 || spec.characteristic == 0 {
        return (None, false);
    }
    let p = spec.characteristic;
    let gl_order: u64 = (0..3).map(|k| p.pow(3) - p.pow(k)).product();
    if gl_order > limit {
        return (None, false);
    }
    let names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
    let mut target = Echelon::new(6);
    for r in &alg.pres.relations {
        target.insert(f, alg.pres.quadric_coordinates(r));
    }
    let forms: Vec<(String, Vec<Poly<F>>)> = normal_forms(p)
        .into_iter()
        .filter_map(|(n, rels)| {
            let polys: Option<Vec<Poly<F>>> = rels.iter().map(|r| parse_polynomial(f, r, &names).ok()).collect();
            polys.map(|ps| (n, ps))
        })
        .collect();
    let mut matrix = [0u64; 9];
    let total = p.pow(9);
    for code in 0..total {
        let mut c = code;
        for m in matrix.iter_mut() {
            *m = c % p;
            c /= p;
        }
        let rows: Mat<F::Elem> = (0..3).map(|i| (0..3).map(|j| f.element(matrix[3 * i + j])).collect()).collect();
        if linalg::rank(f, &rows) < 3 {
            continue;
        }
        let images: Vec<Poly<F>> = rows
            .iter()
            .map(|row| {
                let mut q = Poly::zero(3);
                for (j, c) in row.iter().enumerate() {
                    q.add_term(f, Monomial::var(3, j), c);
                }
                q
            })
            .collect();
        for (name, rels) in &forms {
            let ok = rels.iter().all(|r| {
                let img = r.substitute_linear(f, &images);
                target.contains(f, &alg.pres.quadric_coordinates(&img))
            });
            if ok && rels.len() == target.rank() {
                return (Some(name.clone()), true);
            }
        }
    }
    (None, true)
}

/// A verified structural match.
#[derive(Debug, Clone)]
pub struct StructureMatch<F: Field> {
    pub id: ConditionId,
    /// Coordinates `x_1..x_e` as coefficient vectors on the variables.
    pub forms: Vec<Vec<F::Elem>>,
    pub report: ConditionReport,
    pub quadrics: Option<Vec<Poly<F>>>,
}

/// Outcome of [`match_structure`].
#[derive(Debug, Clone)]
pub struct StructureOutcome<F: Field> {
    pub found: Option<StructureMatch<F>>,
    pub log: Vec<String>,
    pub nodes: usize,
}

/// Condition sets tried on each branch, in order.
pub fn branch_conditions(branch: Branch) -> Vec<ConditionId> {
    match branch {
        Branch::Artinian => (1..=8).map(ConditionId::Case).collect(),
        Branch::Dim2 => vec![ConditionId::Hypersurface, ConditionId::Dim2A, ConditionId::Dim2C],
        Branch::Dim3NonArtinian => vec![
            ConditionId::ConcaPair,
            ConditionId::SquarePlusPower,
            ConditionId::AnnihilatorCover,
            ConditionId::SocleTail,
            ConditionId::FourVar,
        ],
        Branch::E3 | Branch::Polynomial | Branch::OutOfScope => Vec::new(),
    }
}

/// Depth-first search over coordinate systems built from projective points,
/// pruning with partial evaluation, for the first condition in `ids` that
/// holds. Remaining coordinates are completed from condition-specific
/// preferred forms and then unit vectors.
pub fn match_structure<F: Field>(alg: &GradedAlgebra<F>, ids: &[ConditionId], node_budget: usize) -> StructureOutcome<F> {
    let mut log = Vec::new();
    let mut total = 0;
    let points: Vec<Vec<F::Elem>> = FormEnumerator::new(&alg.field, alg.e()).take(2_000).collect();
    for &id in ids {
        let depth = if id == ConditionId::Case(7) { alg.e() } else { id.roles().min(alg.e()) };
        let mut dfs = Dfs { alg, id, depth, points: &points, nodes: 0, budget: node_budget, last_failure: None };
        let found = dfs.run(&mut Vec::new());
        total += dfs.nodes;
        match found {
            Some(m) => {
                log.push(format!("{id}: holds after {} node(s)", dfs.nodes));
                return StructureOutcome { found: Some(m), log, nodes: total };
            }
            None => {
                let why = dfs.last_failure.unwrap_or_else(|| "no coordinates".into());
                let cut = if dfs.nodes >= node_budget { " (node budget reached)" } else { "" };
                log.push(format!("{id}: no coordinates after {} node(s){cut}; last failing clause: {why}", dfs.nodes));
            }
        }
    }
    StructureOutcome { found: None, log, nodes: total }
}

struct Dfs<'p, 'a, F: Field> {
    alg: &'a GradedAlgebra<F>,
    id: ConditionId,
    depth: usize,
    points: &'p [Vec<F::Elem>],
    nodes: usize,
    budget: usize,
    last_failure: Option<String>,
}

impl<'p, 'a, F: Field> Dfs<'p, 'a, F> {
    fn run(&mut self, forms: &mut Vec<Vec<F::Elem>>) -> Option<StructureMatch<F>> {
        if forms.len() == self.depth {
            return self.finish(forms);
        }
        let f = &self.alg.field;
        for pt in self.points {
            if self.nodes >= self.budget {
                return None;
            }
            let mut span = Echelon::new(self.alg.e());
            for l in forms.iter() {
                span.insert(f, l.clone());
            }
            if !span.insert(f, pt.clone()) {
                continue;
            }
            forms.push(pt.clone());
            self.nodes += 1;
            let full = complete_basis(self.alg, forms, &[]).expect("independent forms");
            let rep = evaluate(self.alg, self.id, full, forms.len());
            if rep.holds {
                if let Some(m) = self.run(forms) {
                    return Some(m);
                }
            } else {
                self.last_failure = rep.failing_clause;
            }
            forms.pop();
        }
        None
    }

    fn finish(&mut self, forms: &[Vec<F::Elem>]) -> Option<StructureMatch<F>> {
        let preferred = preferred_tail(self.alg, self.id, forms);
        let full = complete_basis(self.alg, forms, &preferred).expect("independent forms");
        let rep = evaluate(self.alg, self.id, full.clone(), usize::MAX);
        if !rep.holds {
            self.last_failure = rep.failing_clause;
            return None;
        }
        let quadrics = prescribed_quadrics(self.alg, self.id, &full, &rep).ok().flatten();
        Some(StructureMatch { id: self.id, forms: full, report: rep, quadrics })
    }
}

/// Forms to try first when completing a coordinate system: for the
/// annihilator cover, a basis of `{r : r𝔪 ⊆ x₂𝔪}`; for the socle tail, the
/// degree-one socle.
fn preferred_tail<F: Field>(alg: &GradedAlgebra<F>, id: ConditionId, forms: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    match id {
        ConditionId::AnnihilatorCover if forms.len() >= 2 => {
            let x2m = alg.form_times_max(&forms[1], 2).expect("top >= 2");
            forms_multiplying_into(alg, &x2m)
        }
        ConditionId::SocleTail => socle_degree1(alg),
        _ => Vec::new(),
    }
}

/// Basis of `{r ∈ R_1 : r R_1 ⊆ 𝔞_2}` as coefficient vectors.
fn forms_multiplying_into<F: Field>(alg: &GradedAlgebra<F>, a: &IdealSlice<F::Elem>) -> Mat<F::Elem> {
    let f = &alg.field;
    let e = alg.e();
    let mut rows: Mat<F::Elem> = Vec::new();
    for k in 0..e {
        let m = &alg.mult[1][k];
        let images: Vec<Vec<F::Elem>> = (0..e).map(|c| a.pieces[2].reduce(f, m.iter().map(|r| r[c].clone()).collect())).collect();
        for r in 0..alg.h(2) {
            rows.push(images.iter().map(|v| v[r].clone()).collect());
        }
    }
    if rows.is_empty() {
        return linalg::identity(f, e);
    }
    linalg::nullspace(f, &rows, e)
}

/// Pipeline branch of the socle-reduced ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "artinian")]
    Artinian,
    #[serde(rename = "dim2")]
    Dim2,
    #[serde(rename = "dim3-nonartinian-e>=4")]
    Dim3NonArtinian,
    #[serde(rename = "e=3")]
    E3,
    /// Non-Artinian with `dim R_2 = 3` and `e <= 2`: the polynomial ring in two variables.
    #[serde(rename = "polynomial")]
    Polynomial,
    #[serde(rename = "out-of-scope")]
    OutOfScope,
}

impl Branch {
    pub fn of<F: Field>(alg: &GradedAlgebra<F>) -> Branch {
        let h2 = alg.h(2);
        if h2 > 3 {
            Branch::OutOfScope
        } else if alg.is_artinian() {
            Branch::Artinian
        } else if h2 <= 2 {
            Branch::Dim2
        } else if alg.e() >= 4 {
            Branch::Dim3NonArtinian
        } else if alg.e() == 3 {
            Branch::E3
        } else {
            Branch::Polynomial
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::Artinian => "artinian",
            Branch::Dim2 => "dim2",
            Branch::Dim3NonArtinian => "dim3-nonartinian-e>=4",
            Branch::E3 => "e=3",
            Branch::Polynomial => "polynomial",
            Branch::OutOfScope => "out-of-scope",
        }
    }
}

/// Socle-reduction data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SocleData {
    pub s: usize,
    pub forms: Vec<String>,
    pub reduced: PresentationText,
    pub reduced_hilbert: Vec<usize>,
}

/// A structural match in printable form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureSummary {
    pub case: String,
    /// `x_k = ℓ_k` for the realizing coordinates.
    pub coordinates: Vec<String>,
    pub choices: Vec<(String, usize)>,
    pub quadrics: Option<Vec<String>>,
}

/// The full report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema_version: String,
    pub input: PresentationText,
    pub hilbert: Vec<usize>,
    pub hilbert_series: String,
    pub socle: SocleData,
    pub branch: Branch,
    pub exceptional: ExceptionalEvidence,
    pub structure: Option<StructureSummary>,
    pub structure_log: Vec<String>,
    pub certificate: Option<GolodCertificate>,
    pub witness_attempts: Vec<String>,
    pub koszul: KoszulVerdict,
    pub absolutely_koszul: bool,
    /// `(N, J)` requested.
    pub bounds: (usize, usize),
    /// Report-level invariants that failed (empty when consistent).
    pub inconsistencies: Vec<String>,
}

impl ClassificationReport {
    pub fn summary(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("field: {}\n", self.input.field));
        s.push_str(&format!("hilbert: {:?}  series: {}\n", self.hilbert, self.hilbert_series));
        s.push_str(&format!("degree-one socle: {}  reduced hilbert: {:?}\n", self.socle.s, self.socle.reduced_hilbert));
        s.push_str(&format!("branch: {}\n", self.branch.name()));
        s.push_str(&format!(
            "exceptional: {} (prefix {}, series {}){}\n",
            self.exceptional.exceptional,
            self.exceptional.prefix_matches,
            self.exceptional.series_matches,
            self.exceptional.normal_form.as_ref().map_or(String::new(), |n| format!(", normal form {n}"))
        ));
        match &self.structure {
            Some(m) => s.push_str(&format!("structure: {} with {}\n", m.case, m.coordinates.join(", "))),
            None => s.push_str("structure: none\n"),
        }
        match &self.certificate {
            Some(c) => s.push_str(&format!("witness: {}\n", c.describe())),
            None => s.push_str("witness: none found\n"),
        }
        s.push_str(&format!("koszul: {}\n", self.koszul.describe()));
        s.push_str(&format!("absolutely koszul: {}\n", self.absolutely_koszul));
        if !self.inconsistencies.is_empty() {
            s.push_str(&format!("INCONSISTENT: {}\n", self.inconsistencies.join("; ")));
        }
        s
    }
}

/// Classifies a presentation over its own field.
pub fn classify(text: &PresentationText, cfg: &ClassifyConfig) -> Result<ClassificationReport> {
    with_field!(text.field, f => classify_presentation(&text.instantiate(&f)?, cfg))
}

/// The pipeline on an instantiated presentation.
pub fn classify_presentation<F: Field>(pres: &Presentation<F>, cfg: &ClassifyConfig) -> Result<ClassificationReport> {
    let alg = GradedAlgebra::build(pres, cfg.j)?;
    let tf = trivial_fiber_reduce(&alg)?;
    let reduced = GradedAlgebra::build(&tf.reduced, cfg.j)?;
    let socle = SocleData {
        s: tf.s(),
        forms: tf.socle.iter().map(|v| alg.render_form(v)).collect(),
        reduced: tf.reduced.to_text(),
        reduced_hilbert: reduced.hilbert(),
    };
    let branch = if alg.h(2) > 3 { Branch::OutOfScope } else { Branch::of(&reduced) };
    let exceptional = detect_exceptional(&reduced, cfg);
    let koszul = koszul_test(&alg, cfg.resolution(), cfg.nu_powers)?;

    let mut structure_log = Vec::new();
    let mut structure = None;
    let mut certificate = None;
    let mut witness_attempts = Vec::new();
    if branch != Branch::OutOfScope {
        let outcome = match_structure(&reduced, &branch_conditions(branch), cfg.node_budget);
        structure_log = outcome.log;
        let mut prescribed = Vec::new();
        if let Some(m) = &outcome.found {
            if let Some(qs) = &m.quadrics {
                prescribed.push((format!("{} prescription", m.id), qs.clone()));
            }
            structure = Some(StructureSummary {
                case: m.id.to_string(),
                coordinates: m.forms.iter().enumerate().map(|(k, v)| format!("x{} = {}", k + 1, reduced.render_form(v))).collect(),
                choices: m.report.choices.clone(),
                quadrics: m.quadrics.as_ref().map(|qs| qs.iter().map(|q| q.render(&reduced.field, reduced.names())).collect()),
            });
        }
        let wcfg = WitnessConfig { max_codim: cfg.max_codim, seed: cfg.seed, opts: cfg.resolution(), ..WitnessConfig::new(cfg.resolution()) };
        let (cert, attempts) = find_witness(&alg, &reduced, &tf, &prescribed, &wcfg)?;
        certificate = cert;
        witness_attempts = attempts;
    }

    let r_koszul = koszul.koszul;
    let absolutely_koszul = r_koszul && certificate.as_ref().is_some_and(|c| c.status == WitnessStatus::Verified);
    let mut inconsistencies = Vec::new();
    if exceptional.exceptional && r_koszul {
        inconsistencies.push("exceptional ring reported Koszul".into());
    }
    if !koszul.routes_agree {
        inconsistencies.push("Koszul routes disagree".into());
    }
    if let Some(c) = &certificate {
        match c.status {
            WitnessStatus::Verified if !c.routes_agree() => inconsistencies.push("certificate routes disagree".into()),
            WitnessStatus::GolodNotKoszul if r_koszul => {
                inconsistencies.push("Golod-only certificate on a Koszul ring".into())
            }
            WitnessStatus::Verified if !r_koszul => inconsistencies.push("verified certificate on a non-Koszul ring".into()),
            _ => {}
        }
    }
    Ok(ClassificationReport {
        schema_version: SCHEMA_VERSION.into(),
        input: pres.to_text(),
        hilbert: alg.hilbert(),
        hilbert_series: alg.series.render(),
        socle,
        branch,
        exceptional,
        structure,
        structure_log,
        certificate,
        witness_attempts,
        koszul,
        absolutely_koszul,
        bounds: (cfg.n, cfg.j),
        inconsistencies,
    })
}

/// Searches on the socle-reduced ring and verifies the lifted quadrics on
/// `R`; falls back to a search on `R` itself.
fn find_witness<F: Field>(
    alg: &GradedAlgebra<F>,
    reduced: &GradedAlgebra<F>,
    tf: &crate::structure::TrivialFiber<F>,
    prescribed: &[(String, Vec<Poly<F>>)],
    cfg: &WitnessConfig,
) -> Result<(Option<GolodCertificate>, Vec<String>)> {
    let lift = |qs: &[Poly<F>]| -> Vec<Poly<F>> { qs.iter().map(|q| tf.lift(q, alg.e())).collect() };
    if tf.s() == 0 {
        let out = witness_search(alg, prescribed, cfg)?;
        return Ok((out.certificate, out.attempts));
    }
    let mut attempts = Vec::new();
    if reduced.e() > 0 {
        let out = witness_search(reduced, prescribed, cfg)?;
        attempts.extend(out.attempts.iter().map(|a| format!("reduced ring: {a}")));
        if let Some(c) = out.certificate {
            let names = reduced.names();
            let quads: Vec<Poly<F>> = c
                .quadrics
                .iter()
                .map(|s| parse_polynomial(&reduced.field, s, names))
                .collect::<Result<_>>()?;
            let ctx = WitnessContext::new(alg, cfg.opts)?;
            let lifted = ctx.verify(&lift(&quads), "lifted from the socle-reduced ring", cfg.seed)?;
            attempts.push(format!("lifted: {}", lifted.describe()));
            if matches!(lifted.status, WitnessStatus::Verified | WitnessStatus::GolodNotKoszul) {
                return Ok((Some(lifted), attempts));
            }
        }
    }
    let lifted_prescribed: Vec<(String, Vec<Poly<F>>)> = prescribed.iter().map(|(n, q)| (n.clone(), lift(q))).collect();
    let out = witness_search(alg, &lifted_prescribed, cfg)?;
    attempts.extend(out.attempts);
    Ok((out.certificate, attempts))
}

/// Adds a variable `u` with `u 𝔪 = 0`, giving a trivial fiber extension.
pub fn trivial_fiber_variant(text: &PresentationText) -> Result<PresentationText> {
    let mut k = 0;
    let fresh = loop {
        let cand = if k == 0 { "u".to_string() } else { format!("u{k}") };
        if !text.vars.contains(&cand) {
            break cand;
        }
        k += 1;
    };
    let mut vars = text.vars.clone();
    vars.push(fresh.clone());
    let mut relations = text.relations.clone();
    for v in &vars {
        relations.push(format!("{fresh}*{v}"));
    }
    Ok(PresentationText { vars, relations, ..text.clone() })
}

/// Parses the field name used on the command line.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    s.parse::<FieldSpec>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn text(field: &str, vars: &str, rels: &[&str]) -> PresentationText {
        let mut s = format!("field: {field}\nvars: {vars}\n");
        for r in rels {
            s.push_str(&format!("rel: {r}\n"));
        }
        PresentationText::parse(&s).unwrap()
    }

    #[test]
    fn exceptional_detection() {
        let cfg = ClassifyConfig::default();
        let t = text("GF(2)", "x,y,z", &["x*y", "z^2", "x*z+y*z+x^2"]);
        let pres = t.instantiate(&PrimeField::new(2).unwrap()).unwrap();
        let alg = GradedAlgebra::build(&pres, 10).unwrap();
        let ev = detect_exceptional(&alg, &cfg);
        assert!(ev.exceptional, "{ev:?}");
        assert!(ev.normal_form.is_some(), "{ev:?}");
        let t = text("QQ", "x,y,z", &["x^2", "y^2", "z^2"]);
        let alg = GradedAlgebra::build(&t.instantiate(&Rationals).unwrap(), 10).unwrap();
        assert!(!detect_exceptional(&alg, &cfg).exceptional);
    }

    #[test]
    fn case_eight_match() {
        let t = text("GF(3)", "x,y", &["x*y", "x^2-y^2"]);
        let alg = GradedAlgebra::build(&t.instantiate(&PrimeField::new(3).unwrap()).unwrap(), 6).unwrap();
        let out = match_structure(&alg, &[ConditionId::Case(8)], 1000);
        let m = out.found.unwrap();
        assert_eq!(m.id, ConditionId::Case(8));
        assert_eq!(m.forms, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn dim2c_verbatim() {
        let t = text("QQ", "x1,x2,x3", &["x1^2", "x1*x2", "x2^2-x1*x3", "x2*x3"]);
        let alg = GradedAlgebra::build(&t.instantiate(&Rationals).unwrap(), 8).unwrap();
        assert_eq!(Branch::of(&alg), Branch::Dim2);
        let out = match_structure(&alg, &branch_conditions(Branch::Dim2), 5000);
        assert_eq!(out.found.unwrap().id, ConditionId::Dim2C, "{:?}", out.log);
    }

    #[test]
    fn pipeline_on_complete_intersection() {
        let t = text("QQ", "x,y,z", &["x^2", "y^2", "z^2"]);
        let r = classify(&t, &ClassifyConfig::default()).unwrap();
        assert_eq!(r.branch, Branch::Artinian);
        assert!(r.koszul.koszul && r.absolutely_koszul);
        let c = r.certificate.unwrap();
        assert!(c.codim <= 3);
        assert!(r.inconsistencies.is_empty());
    }

    #[test]
    fn pipeline_on_exceptional_ring() {
        let t = text("GF(2)", "x,y,z", &["x*y", "x^2+y*z", "z^2"]);
        let r = classify(&t, &ClassifyConfig::default()).unwrap();
        assert!(r.exceptional.exceptional && !r.koszul.koszul && !r.absolutely_koszul);
        assert!(r.certificate.unwrap().codim <= 3);
        assert!(r.inconsistencies.is_empty(), "{:?}", r.inconsistencies);
    }

    #[test]
    fn variant_adds_socle_variable() {
        let t = text("QQ", "x,y", &["x*y"]);
        let v = trivial_fiber_variant(&t).unwrap();
        assert_eq!(v.vars, vec!["x", "y", "u"]);
        let r = classify(&v, &ClassifyConfig::default()).unwrap();
        assert_eq!(r.socle.s, 1);
        assert_eq!(r.branch, Branch::Dim2);
        assert!(r.certificate.unwrap().codim <= 1);
    }
}
