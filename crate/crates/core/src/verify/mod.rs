//! Built-in example recipes: construction, analysis and claim checking.

mod claims;
mod construct;
mod recipe;

use std::path::Path;
use std::time::{Duration, Instant};

use serde::Serialize;

pub use claims::evaluate_claims;
pub use construct::{
    construct_example, enumerate_constructions, ChoiceRecord, ConstructOptions, Construction, Context, FactResult, Sub,
};
pub use recipe::{example_spec, ExampleSpec, ExpectedClaim, Fact, HStep, XConstraint, XSite, EXAMPLE_IDS};

use crate::error::{Error, Result};
use crate::lab::{analyze, AnalysisOptions, AnalysisReport, ClaimResult};

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub construct: ConstructOptions,
    pub analysis: AnalysisOptions,
}

/// Sizes of the constructed objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Digests {
    pub group_order: u128,
    pub vertex_count: usize,
    pub edge_count: usize,
}

/// Claim results for one valid choice tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChoiceOutcome {
    pub choice: Option<ChoiceRecord>,
    pub digests: Digests,
    pub pass: bool,
    pub failed: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub tuples: usize,
    pub truncated: bool,
    /// Every enumerated choice passes every claim.
    pub agree: bool,
    pub outcomes: Vec<ChoiceOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationOutcome {
    pub id: String,
    pub digests: Digests,
    pub choice: Option<ChoiceRecord>,
    pub claims: Vec<ClaimResult>,
    pub pass: bool,
    pub enumeration: Option<EnumerationSummary>,
    #[serde(skip)]
    pub timing: Duration,
}

impl VerificationOutcome {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("outcome serializes");
        s.push('\n');
        s
    }
}

/// Analysis of a construction with `T` (when present) as the normal
/// subgroup; claims are left empty.
pub fn analyze_construction(c: &Construction, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let normals: Vec<_> = c.normal_action.iter().cloned().collect();
    analyze(&c.spec.id, &c.graph, &c.action, &normals, opts)
}

fn digests(c: &Construction) -> Digests {
    Digests {
        group_order: c.action.group.order(),
        vertex_count: c.graph.vertex_count(),
        edge_count: c.graph.edge_count(),
    }
}

/// A constructed, analyzed and checked example.
#[derive(Clone, Debug)]
pub struct Verified {
    pub construction: Construction,
    /// The analysis with the claim checklist filled in.
    pub report: AnalysisReport,
    pub outcome: VerificationOutcome,
}

/// Constructs, analyzes and checks the example `id`. With `enumerate =
/// Some(limit)` every valid choice tuple up to `limit` is also checked.
pub fn verify_example(id: &str, opts: &VerifyOptions, enumerate: Option<usize>) -> Result<Verified> {
    let start = Instant::now();
    let spec = example_spec(id)?;
    let construction = construct_example(&spec, &opts.construct)?;
    let mut report = analyze_construction(&construction, &opts.analysis)?;
    report.claims = evaluate_claims(&spec, &report, &construction.facts);
    let enumeration = match enumerate {
        Some(limit) => Some(enumerate_outcomes(&spec, opts, limit)?),
        None => None,
    };
    let pass = report.all_claims_pass() && enumeration.as_ref().map_or(true, |e| e.agree);
    let outcome = VerificationOutcome {
        id: spec.id.clone(),
        digests: digests(&construction),
        choice: construction.choice.clone(),
        claims: report.claims.clone(),
        pass,
        enumeration,
        timing: start.elapsed(),
    };
    Ok(Verified {
        construction,
        report,
        outcome,
    })
}

fn enumerate_outcomes(spec: &ExampleSpec, opts: &VerifyOptions, limit: usize) -> Result<EnumerationSummary> {
    let (all, truncated) = enumerate_constructions(spec, &opts.construct, limit)?;
    let mut outcomes = Vec::new();
    for c in &all {
        let report = analyze_construction(c, &opts.analysis)?;
        let claims = evaluate_claims(spec, &report, &c.facts);
        outcomes.push(ChoiceOutcome {
            choice: c.choice.clone(),
            digests: digests(c),
            pass: claims.iter().all(|r| r.pass),
            failed: claims.iter().filter(|r| !r.pass).map(|r| r.claim.clone()).collect(),
        });
    }
    Ok(EnumerationSummary {
        tuples: outcomes.len(),
        truncated,
        agree: outcomes.iter().all(|o| o.pass),
        outcomes,
    })
}

fn write(dir: &Path, name: &str, text: String) -> Result<()> {
    std::fs::write(dir.join(name), text).map_err(|e| Error::Io(format!("{}: {e}", dir.join(name).display())))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("document serializes");
    s.push('\n');
    s
}

/// Construction record written next to the interchange files.
#[derive(Serialize)]
struct ConstructionDocument<'a> {
    example: &'a str,
    group: &'a str,
    group_order: u128,
    normal: Option<&'a str>,
    normal_order: Option<u128>,
    choice: &'a Option<ChoiceRecord>,
    facts: &'a [FactResult],
    trace: &'a [String],
}

/// Writes `graph.json` (with the `G` action block), `group.json`,
/// `normal.json`, `geometry.json` and `construction.json` into `dir`.
/// Returns the file names written.
pub fn write_construction(c: &Construction, dir: &Path) -> Result<Vec<&'static str>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    let gdoc = c.action.group.to_document(Some(c.action.name.clone()));
    write(dir, "graph.json", pretty(&c.graph.to_document(Some(c.spec.id.clone()), Some(gdoc.clone()))))?;
    written.push("graph.json");
    write(dir, "group.json", pretty(&gdoc))?;
    written.push("group.json");
    if let Some(n) = &c.normal_action {
        write(dir, "normal.json", pretty(&n.group.to_document(Some(n.name.clone()))))?;
        written.push("normal.json");
    }
    if let Some(cg) = &c.coset {
        write(dir, "geometry.json", pretty(&cg.geometry.to_document()))?;
        written.push("geometry.json");
    }
    let doc = ConstructionDocument {
        example: &c.spec.id,
        group: &c.group.name,
        group_order: c.group.group.order(),
        normal: c.normal.as_ref().map(|n| n.name.as_str()),
        normal_order: c.normal.as_ref().map(|n| n.group.order()),
        choice: &c.choice,
        facts: &c.facts,
        trace: &c.trace,
    };
    write(dir, "construction.json", pretty(&doc))?;
    written.push("construction.json");
    Ok(written)
}
