//! The built-in corpus of quadratic algebras with `dim R_2 <= 3`, the
//! expectations attached to each entry, and a runner that classifies every
//! entry (and its trivial fiber extension) and reports mismatches.

use crate::algebra::{GradedAlgebra, PresentationText};
use crate::classify::{classify, match_structure, trivial_fiber_variant, Branch, ClassificationReport, ClassifyConfig};
use crate::conditions::ConditionId;
use crate::field::FieldSpec;
use crate::structure::trivial_fiber_reduce;
use crate::witness::WitnessStatus;
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

const CORPUS_TOML: &str = include_str!("../data/corpus.toml");

/// Expected outcomes for an entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Expectation {
    /// `h_0, ..., h_10`.
    pub hilbert: Vec<usize>,
    pub koszul: bool,
    pub exceptional: bool,
    pub max_codim: usize,
    pub branch: Branch,
    /// Conditions that must hold in some coordinate system of the socle-reduced ring.
    #[serde(default)]
    pub cases: Vec<String>,
    /// Complete intersection of three quadrics in three variables.
    #[serde(default)]
    pub ci3: bool,
}

/// One corpus entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub field: String,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub origin: String,
    pub expect: Expectation,
    /// Whether the entry is a generated trivial fiber extension.
    #[serde(default)]
    pub is_variant: bool,
    /// Set to `false` to skip generating the trivial fiber extension.
    #[serde(default = "default_true")]
    pub variant: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Deserialize)]
struct CorpusFile {
    entry: Vec<CorpusEntry>,
}

impl CorpusEntry {
    pub fn text(&self) -> Result<PresentationText> {
        Ok(PresentationText {
            field: self.field.parse::<FieldSpec>()?,
            vars: self.vars.clone(),
            relations: self.relations.clone(),
            truncation: None,
        })
    }

    /// The trivial fiber extension by one variable `u` with `u 𝔪 = 0`.
    /// Koszulness, Golodness of the witness and the socle-reduced branch are
    /// unchanged; `h_1` grows by one.
    pub fn trivial_fiber(&self) -> Result<CorpusEntry> {
        let t = trivial_fiber_variant(&self.text()?)?;
        let mut expect = self.expect.clone();
        if expect.hilbert.len() > 1 {
            expect.hilbert[1] += 1;
        }
        Ok(CorpusEntry {
            name: format!("{}+u", self.name),
            vars: t.vars,
            relations: t.relations,
            expect,
            is_variant: true,
            variant: false,
            ..self.clone()
        })
    }
}

/// The base entries as listed in the data file.
pub fn base_entries() -> Result<Vec<CorpusEntry>> {
    let file: CorpusFile = toml::from_str(CORPUS_TOML).map_err(|e| Error::Corpus(e.to_string()))?;
    Ok(file.entry)
}

/// Base entries followed by their trivial fiber extensions.
pub fn entries() -> Result<Vec<CorpusEntry>> {
    let base = base_entries()?;
    let mut out = base.clone();
    for b in base.iter().filter(|b| b.variant) {
        out.push(b.trivial_fiber()?);
    }
    Ok(out)
}

/// Result of running one entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusRow {
    pub entry: CorpusEntry,
    pub report: ClassificationReport,
    /// Structural cases that were confirmed, with the case name.
    pub cases_found: Vec<(String, bool)>,
    pub mismatches: Vec<String>,
    pub seconds: f64,
}

impl CorpusRow {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn line(&self) -> String {
        let witness = match &self.report.certificate {
            Some(c) => format!("{:?} d={}", c.status, c.codim),
            None => "none".into(),
        };
        format!(
            "{:<34} {:<22} koszul={:<5} witness={:<22} {:>6.2}s {}",
            self.entry.name,
            self.report.branch.name(),
            self.report.koszul.koszul,
            witness,
            self.seconds,
            if self.passed() { "ok".to_string() } else { format!("MISMATCH: {}", self.mismatches.join("; ")) }
        )
    }
}

/// Confirms that condition `id` holds in some coordinates of the
/// socle-reduced ring of `text`.
pub fn check_case(text: &PresentationText, id: ConditionId, top: usize, node_budget: usize) -> Result<bool> {
    crate::with_field!(text.field, f => {
        let alg = GradedAlgebra::build(&text.instantiate(&f)?, top)?;
        let tf = trivial_fiber_reduce(&alg)?;
        let reduced = GradedAlgebra::build(&tf.reduced, top)?;
        Ok(match_structure(&reduced, &[id], node_budget).found.is_some())
    })
}

/// Classifies one entry and compares against its expectations.
pub fn run_entry(entry: &CorpusEntry, cfg: &ClassifyConfig) -> Result<CorpusRow> {
    let start = Instant::now();
    let text = entry.text()?;
    let report = classify(&text, cfg)?;
    let mut mismatches = Vec::new();
    let ex = &entry.expect;
    let k = ex.hilbert.len().min(report.hilbert.len());
    if report.hilbert[..k] != ex.hilbert[..k] {
        mismatches.push(format!("hilbert {:?} != expected {:?}", &report.hilbert[..k], &ex.hilbert[..k]));
    }
    if report.koszul.koszul != ex.koszul {
        mismatches.push(format!("koszul {} != expected {}", report.koszul.koszul, ex.koszul));
    }
    if report.exceptional.exceptional != ex.exceptional {
        mismatches.push(format!("exceptional {} != expected {}", report.exceptional.exceptional, ex.exceptional));
    }
    if report.branch != ex.branch {
        mismatches.push(format!("branch {} != expected {}", report.branch.name(), ex.branch.name()));
    }
    match &report.certificate {
        Some(c) => {
            if c.codim > ex.max_codim {
                mismatches.push(format!("witness codimension {} > {}", c.codim, ex.max_codim));
            }
            let want = if ex.koszul { WitnessStatus::Verified } else { WitnessStatus::GolodNotKoszul };
            if c.status != want {
                mismatches.push(format!("witness status {:?}, expected {:?}", c.status, want));
            }
        }
        None => mismatches.push("no witness found".into()),
    }
    let mut cases_found = Vec::new();
    for name in &ex.cases {
        let id: ConditionId = name.parse()?;
        let ok = check_case(&text, id, cfg.j, cfg.node_budget)?;
        if !ok {
            mismatches.push(format!("{name} not realized"));
        }
        cases_found.push((name.clone(), ok));
    }
    mismatches.extend(report.inconsistencies.iter().map(|s| format!("inconsistent: {s}")));
    Ok(CorpusRow { entry: entry.clone(), report, cases_found, mismatches, seconds: start.elapsed().as_secs_f64() })
}

/// Runs every entry whose name contains `filter`. Entries are independent
/// and run in parallel; rows come back in corpus order.
pub fn run_corpus(cfg: &ClassifyConfig, filter: Option<&str>) -> Result<Vec<CorpusRow>> {
    let selected: Vec<CorpusEntry> = entries()?.into_iter().filter(|e| filter.is_none_or(|f| e.name.contains(f))).collect();
    selected.par_iter().map(|e| run_entry(e, cfg)).collect()
}
