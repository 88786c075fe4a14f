//! The `analyze`, `compare` and `scan` commands, returning their output and
//! exit code so they can be driven without a process boundary.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use tracegenus::algebra::parse_poly;
use tracegenus::genus::{compare_spinor_genus, cross_validate, predict_by_theorem, Verdict};
use tracegenus::{analyze, Error, FieldAnalysis};

use crate::cache::Cache;
use crate::corpus::CorpusRecord;
use crate::doc::{
    to_json, AnalysisDocument, CompareDocument, CrossDoc, ErrorDoc, FieldSummary, SpinorDoc,
    TheoremDoc, SCHEMA_VERSION,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIFFERENT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_REDUCIBLE: i32 = 3;
pub const EXIT_NOT_APPLICABLE: i32 = 4;
pub const EXIT_FAILURE: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Human,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::NotMonic | Error::Degenerate(_) => EXIT_INPUT,
        Error::Reducible(_) => EXIT_REDUCIBLE,
        _ => EXIT_FAILURE,
    }
}

fn error_outcome(e: &Error, format: Format) -> Outcome {
    let mut stderr = format!("error: {e}\n");
    if let Error::Reducible(factors) = e {
        for f in factors {
            let _ = writeln!(stderr, "  factor: {f}");
        }
    }
    let stdout = match format {
        Format::Json => to_json(&ErrorDoc::new(e)),
        Format::Human => String::new(),
    };
    Outcome { stdout, stderr, code: exit_code(e) }
}

fn with_cache_warning(mut o: Outcome, cache: &Cache) -> Outcome {
    if let Some(w) = &cache.warning {
        o.stderr.insert_str(0, &format!("warning: {w}\n"));
    }
    o
}

pub fn run_analyze(text: &str, cache: &Cache, format: Format) -> Outcome {
    let result = parse_poly(text).and_then(|f| cache.analyze(&f, None));
    let o = match result {
        Ok(doc) => {
            let mut stderr = String::new();
            if let Some(w) = &doc.cache_warning {
                let _ = writeln!(stderr, "warning: {w}");
            }
            let stdout = match format {
                Format::Json => to_json(&doc),
                Format::Human => render_analysis(&doc),
            };
            Outcome { stdout, stderr, code: EXIT_OK }
        }
        Err(e) => error_outcome(&e, format),
    };
    with_cache_warning(o, cache)
}

/// Builds the comparison document for two analyzed fields.
pub fn compare_document(a: &FieldAnalysis, b: &FieldAnalysis) -> CompareDocument {
    let report = compare_spinor_genus(a, b);
    let prediction = predict_by_theorem(a, b);
    let cross = cross_validate(a, b).ok();
    CompareDocument {
        schema_version: SCHEMA_VERSION,
        fields: [FieldSummary::new(a), FieldSummary::new(b)],
        spinor: SpinorDoc::new(&report),
        theorem: TheoremDoc::new(&prediction),
        cross_validation: cross.as_ref().map(CrossDoc::new),
    }
}

pub fn verdict_exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Same => EXIT_OK,
        Verdict::Different => EXIT_DIFFERENT,
        Verdict::NotApplicable(_) => EXIT_NOT_APPLICABLE,
    }
}

pub fn run_compare(text_a: &str, text_b: &str, format: Format) -> Outcome {
    let parsed = parse_poly(text_a).and_then(|a| Ok((a, parse_poly(text_b)?)));
    let analyses = parsed.and_then(|(fa, fb)| {
        let (a, b) = rayon::join(|| analyze(&fa), || analyze(&fb));
        Ok((a?, b?))
    });
    let (a, b) = match analyses {
        Ok(v) => v,
        Err(e) => return error_outcome(&e, format),
    };
    let doc = compare_document(&a, &b);
    let code = verdict_exit_code(compare_spinor_genus(&a, &b).verdict);
    let stdout = match format {
        Format::Json => to_json(&doc),
        Format::Human => render_compare(&doc),
    };
    Outcome { stdout, stderr: String::new(), code }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecordDoc {
    pub line: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalCount {
    pub p: String,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDoc {
    /// Indices into `records`.
    pub a: usize,
    pub b: usize,
    pub disc: String,
    pub signature: [usize; 2],
    pub verdict: String,
    pub predicted_equivalent: bool,
    pub isometry_claim: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsSummary {
    /// Buckets of Gamma fields sharing discriminant and signature with at
    /// least two members.
    pub buckets: usize,
    pub applicable: usize,
    pub consistent: usize,
    pub inconsistencies: usize,
    pub pairs: Vec<PairDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub records: usize,
    pub analyzed: usize,
    pub failures: usize,
    pub gamma_fields: usize,
    pub exceptional_primes: Vec<ExceptionalCount>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<PairsSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanDocument {
    pub schema_version: u32,
    pub summary: ScanSummary,
    pub records: Vec<ScanRecordDoc>,
}

fn analyze_record(r: &CorpusRecord, cache: &Cache) -> ScanRecordDoc {
    let result = parse_poly(&r.poly).and_then(|f| cache.analyze(&f, r.label.clone()));
    let (analysis, error) = match result {
        Ok(doc) => (Some(doc), None),
        Err(e) => (None, Some(ErrorDoc::new(&e))),
    };
    ScanRecordDoc { line: r.line, label: r.label.clone(), input: r.poly.clone(), analysis, error }
}

fn run_pairs(records: &[ScanRecordDoc]) -> Result<PairsSummary, Error> {
    let mut buckets: BTreeMap<(String, [usize; 2]), Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        if let Some(doc) = r.analysis.as_ref().filter(|d| d.gamma.is_gamma) {
            buckets.entry((doc.disc.clone(), doc.signature)).or_default().push(i);
        }
    }
    buckets.retain(|_, v| v.len() >= 2);
    let members: Vec<usize> = buckets.values().flatten().copied().collect();
    let analyses: HashMap<usize, FieldAnalysis> = members
        .par_iter()
        .map(|&i| {
            let text = &records[i].analysis.as_ref().unwrap().input.coefficients.join(",");
            Ok((i, analyze(&parse_poly(text)?)?))
        })
        .collect::<Result<_, Error>>()?;
    let mut pairs = Vec::new();
    for ((disc, signature), idx) in &buckets {
        for (k, &i) in idx.iter().enumerate() {
            for &j in &idx[k + 1..] {
                let (a, b) = (&analyses[&i], &analyses[&j]);
                let Ok(cv) = cross_validate(a, b) else { continue };
                pairs.push(PairDoc {
                    a: i,
                    b: j,
                    disc: disc.clone(),
                    signature: *signature,
                    verdict: cv.report.verdict.to_string(),
                    predicted_equivalent: cv.prediction.predicted_equivalent,
                    isometry_claim: cv.prediction.isometry_claim,
                    consistent: cv.consistent,
                });
            }
        }
    }
    let consistent = pairs.iter().filter(|p| p.consistent).count();
    Ok(PairsSummary {
        buckets: buckets.len(),
        applicable: pairs.len(),
        consistent,
        inconsistencies: pairs.len() - consistent,
        pairs,
    })
}

/// Analyzes every record in parallel; output order follows the input.
pub fn scan_document(records: &[CorpusRecord], cache: &Cache, pairs: bool) -> Result<ScanDocument, Error> {
    let docs: Vec<ScanRecordDoc> = records.par_iter().map(|r| analyze_record(r, cache)).collect();
    let analyzed: Vec<&AnalysisDocument> = docs.iter().filter_map(|d| d.analysis.as_ref()).collect();
    let mut exceptional: BTreeMap<num_bigint::BigInt, usize> = BTreeMap::new();
    for d in &analyzed {
        if let Some(q) = &d.gamma.exceptional {
            *exceptional.entry(q.parse().expect("decimal prime")).or_default() += 1;
        }
    }
    let pairs = if pairs { Some(run_pairs(&docs)?) } else { None };
    Ok(ScanDocument {
        schema_version: SCHEMA_VERSION,
        summary: ScanSummary {
            records: docs.len(),
            analyzed: analyzed.len(),
            failures: docs.len() - analyzed.len(),
            gamma_fields: analyzed.iter().filter(|d| d.gamma.is_gamma).count(),
            exceptional_primes: exceptional
                .into_iter()
                .map(|(p, count)| ExceptionalCount { p: p.to_string(), count })
                .collect(),
            pairs,
        },
        records: docs,
    })
}

pub fn run_scan(records: &[CorpusRecord], cache: &Cache, pairs: bool, format: Format) -> Outcome {
    let doc = match scan_document(records, cache, pairs) {
        Ok(d) => d,
        Err(e) => return with_cache_warning(error_outcome(&e, format), cache),
    };
    let mut stderr = String::new();
    for r in &doc.records {
        if let Some(e) = &r.error {
            let _ = writeln!(stderr, "line {}: {}", r.line, e.message);
        }
    }
    let code = if doc.summary.records > 0 && doc.summary.analyzed == 0 { EXIT_FAILURE } else { EXIT_OK };
    let stdout = match format {
        Format::Json => to_json(&doc),
        Format::Human => render_scan(&doc),
    };
    with_cache_warning(Outcome { stdout, stderr, code }, cache)
}

fn factorization_text(doc: &AnalysisDocument) -> String {
    let mut parts: Vec<String> = Vec::new();
    if doc.disc_factorization.sign < 0 {
        parts.push("-1".into());
    }
    for pp in &doc.disc_factorization.factors {
        parts.push(if pp.e == 1 { pp.p.clone() } else { format!("{}^{}", pp.p, pp.e) });
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_analysis(doc: &AnalysisDocument) -> String {
    let mut out = String::new();
    let w = &mut out;
    if let Some(l) = &doc.input.label {
        let _ = writeln!(w, "label          {l}");
    }
    let _ = writeln!(w, "polynomial     {}", doc.input.polynomial);
    let _ = writeln!(w, "degree         {}", doc.degree);
    let _ = writeln!(w, "signature      ({}, {})", doc.signature[0], doc.signature[1]);
    let _ = writeln!(w, "discriminant   {} = {}", doc.disc, factorization_text(doc));
    let _ = writeln!(w, "index          {}", doc.index);
    let _ = writeln!(w, "trace form     det {}, inertia ({}, {})", doc.trace_form.det, doc.trace_form.signature[0], doc.trace_form.signature[1]);
    if !doc.splittings.is_empty() {
        let header = format!("{:<10} {:<24} {:<5} {:<6} {:<5} {:<6} {}", "prime", "(e,f)", "tame", "alpha", "eps", "g odd", "n/e odd");
        let _ = writeln!(w, "{}", header.trim_end());
        for t in &doc.splittings {
            let pairs: Vec<String> = t.pairs.iter().map(|[e, f]| format!("({e},{f})")).collect();
            let alpha = doc.alphas.iter().find(|a| a.p == t.p).map_or("-".to_string(), |a| format!("{:+}", a.legendre));
            let bullets = doc.gamma.per_prime.iter().find(|b| b.p == t.p);
            let cell = |f: fn(&crate::doc::BulletsDoc) -> bool| bullets.map_or("-", |b| yes(f(b)));
            let row = format!(
                "{:<10} {:<24} {:<5} {:<6} {:<5} {:<6} {}",
                t.p,
                pairs.join(" "),
                yes(t.tame),
                alpha,
                cell(|b| b.eps_split),
                cell(|b| b.g_odd),
                cell(|b| b.n_over_e_odd)
            );
            let _ = writeln!(w, "{}", row.trim_end());
        }
    }
    let _ = writeln!(w, "tame           {}", yes(doc.gamma.is_tame));
    let _ = writeln!(w, "Gamma field    {}", yes(doc.gamma.is_gamma));
    let _ = writeln!(w, "exceptional    {}", doc.gamma.exceptional.as_deref().unwrap_or("-"));
    out
}

pub fn render_compare(doc: &CompareDocument) -> String {
    let mut out = String::new();
    let w = &mut out;
    for (name, f) in ["K", "L"].iter().zip(&doc.fields) {
        let _ = writeln!(
            w,
            "{name}: {}  disc {}  signature ({}, {})  Gamma {}",
            f.polynomial,
            f.disc,
            f.signature[0],
            f.signature[1],
            yes(f.is_gamma)
        );
    }
    let _ = writeln!(w, "discriminants equal   {}", yes(doc.spinor.disc_equal));
    let _ = writeln!(w, "signatures equal      {}", yes(doc.spinor.signature_equal));
    for c in &doc.spinor.per_prime {
        let _ = writeln!(w, "alpha at {:<12} {:+} vs {:+}", c.p, c.legendre_k, c.legendre_l);
    }
    let _ = writeln!(w, "verdict               {}", doc.spinor.verdict);
    let _ = writeln!(w, "theorem applicable    {} ({})", yes(doc.theorem.applicable), doc.theorem.reason);
    if doc.theorem.applicable {
        let _ = writeln!(w, "predicted equivalent  {}", yes(doc.theorem.predicted_equivalent));
        let _ = writeln!(w, "isometry claim        {}", yes(doc.theorem.isometry_claim));
    }
    if let Some(c) = &doc.cross_validation {
        let _ = writeln!(w, "consistent            {}", yes(c.consistent));
    }
    out
}

pub fn render_scan(doc: &ScanDocument) -> String {
    let mut out = String::new();
    let w = &mut out;
    for r in &doc.records {
        let name = r.label.clone().unwrap_or_else(|| format!("line {}", r.line));
        match (&r.analysis, &r.error) {
            (Some(a), _) => {
                let _ = writeln!(
                    w,
                    "{name:<16} disc {:<24} sig ({}, {})  Gamma {:<3}  exceptional {}",
                    a.disc,
                    a.signature[0],
                    a.signature[1],
                    yes(a.gamma.is_gamma),
                    a.gamma.exceptional.as_deref().unwrap_or("-")
                );
            }
            (None, Some(e)) => {
                let _ = writeln!(w, "{name:<16} error: {}", e.message);
            }
            _ => {}
        }
    }
    let s = &doc.summary;
    let _ = writeln!(w, "records {}  analyzed {}  failures {}  Gamma fields {}", s.records, s.analyzed, s.failures, s.gamma_fields);
    for e in &s.exceptional_primes {
        let _ = writeln!(w, "exceptional prime {}: {} field(s)", e.p, e.count);
    }
    if let Some(p) = &s.pairs {
        let _ = writeln!(
            w,
            "pairs: {} bucket(s), {} applicable, {} consistent, {} inconsistent",
            p.buckets, p.applicable, p.consistent, p.inconsistencies
        );
    }
    out
}
