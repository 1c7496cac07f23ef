//! Command implementations behind the `effint` binary: input files,
//! structured reports, verdicts, and exit-code classification.
//!
//! Reports serialize deterministically (keys sorted, no map randomness);
//! with the timestamp suppressed, identical invocations produce
//! byte-identical JSON.

use crate::cyclo::{self, CycloError};
use crate::darboux::{
    assemble_first_integral, assemble_integrating_factor, degree_bound,
    search_invariant_curves_with, verify_residue_budget, BoundProfile, DarbouxError,
    SearchOutcome, StructureKind,
};
use crate::foliation::{cofactor, foliation_degree, FoliationError, VectorField};
use crate::groebner::GroebnerConfig;
use crate::orbifold::{self, OrbifoldData, OrbifoldError, Profile, TripleConstraint};
use crate::poly::{parse_poly, ParseError};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Versioned identifier of the JSON report layout.
pub const SCHEMA_ID: &str = "effint.report/1";

/// Input document for the foliation commands.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FoliationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// dx/dt component, polynomial grammar.
    pub p: String,
    /// dy/dt component, polynomial grammar.
    pub q: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Exit code 1.
    #[error("input error: {0}")]
    Input(String),
    /// Exit code 2.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Exit code 3. A verified counterexample to a proved bound must be loud.
    #[error("bound violated: {0}")]
    BoundViolated(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Resource(_) => 2,
            CliError::BoundViolated(_) => 3,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<FoliationError> for CliError {
    fn from(e: FoliationError) -> Self {
        match e {
            FoliationError::BasisTooLarge { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<DarbouxError> for CliError {
    fn from(e: DarbouxError) -> Self {
        match e {
            DarbouxError::SearchResourceLimit { .. } => CliError::Resource(e.to_string()),
            DarbouxError::Foliation(FoliationError::BasisTooLarge { .. }) => {
                CliError::Resource(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<CycloError> for CliError {
    fn from(e: CycloError) -> Self {
        match e {
            CycloError::BoundViolated { .. } => CliError::BoundViolated(e.to_string()),
            CycloError::PhiCapExceeded { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<OrbifoldError> for CliError {
    fn from(e: OrbifoldError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Invocation context assembled by the binary (or by tests).
#[derive(Debug, Clone, Default)]
pub struct ReportMeta {
    /// Canonical echo of the invocation.
    pub command: String,
    /// Raw input bytes to hash (file contents or argument string).
    pub input: Vec<u8>,
    /// Unix seconds; `None` suppresses the field entirely.
    pub timestamp: Option<u64>,
    /// Groebner ceilings for the search commands.
    pub groebner: Option<GroebnerConfig>,
}

impl ReportMeta {
    pub fn new(command: impl Into<String>, input: impl Into<Vec<u8>>) -> Self {
        ReportMeta {
            command: command.into(),
            input: input.into(),
            timestamp: None,
            groebner: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_id: String,
    pub version: String,
    pub command: String,
    pub input_hash: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub results: Value,
    pub verdicts: Vec<Verdict>,
    pub resource_notes: Vec<String>,
}

impl Report {
    fn assemble(meta: &ReportMeta, results: Value, verdicts: Vec<Verdict>, notes: Vec<String>) -> Report {
        let mut hasher = Sha256::new();
        hasher.update(&meta.input);
        let digest = hasher.finalize();
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        Report {
            schema_id: SCHEMA_ID.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: meta.command.clone(),
            input_hash: format!("sha256:{hex}"),
            timestamp: meta.timestamp,
            results,
            verdicts,
            resource_notes: notes,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering for terminal use.
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("effint {} [{}]\n", self.command, self.schema_id));
        out.push_str(&render_value(&self.results, 0));
        for v in &self.verdicts {
            out.push_str(&format!(
                "[{}] {}: {}\n",
                if v.pass { "ok" } else { "FAIL" },
                v.name,
                v.detail
            ));
        }
        for n in &self.resource_notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

fn render_value(v: &Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::Object(_) | Value::Array(_) => {
                    format!("{pad}{k}:\n{}", render_value(v, indent + 1))
                }
                _ => format!("{pad}{k}: {}\n", render_scalar(v)),
            })
            .collect(),
        Value::Array(items) => items
            .iter()
            .map(|item| match item {
                Value::Object(_) | Value::Array(_) => render_value(item, indent),
                _ => format!("{pad}- {}\n", render_scalar(item)),
            })
            .collect(),
        _ => format!("{pad}{}\n", render_scalar(v)),
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn parse_foliation_file(bytes: &[u8]) -> Result<FoliationFile, CliError> {
    serde_json::from_slice(bytes).map_err(|e| CliError::Input(format!("bad foliation file: {e}")))
}

fn build_field(file: &FoliationFile) -> Result<VectorField, CliError> {
    let p = parse_poly(&file.p, 2).map_err(|e| CliError::Input(format!("P: {e}")))?;
    let q = parse_poly(&file.q, 2).map_err(|e| CliError::Input(format!("Q: {e}")))?;
    Ok(VectorField::new(p, q)?)
}

/// Degree cap argument: a number or the profile-driven automatic bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NmaxArg {
    Auto,
    Fixed(usize),
}

pub fn parse_profile(token: &str) -> Result<BoundProfile, CliError> {
    match token {
        "thmA" => Ok(BoundProfile::Liouvillian),
        "a2g1" => Ok(BoundProfile::Genus1Isotrivial),
        "a2g1n" => Ok(BoundProfile::Genus1NonIsotrivial),
        "a2hyp" => Ok(BoundProfile::IsotrivialHyperbolic),
        other => Err(CliError::Input(format!(
            "unknown profile '{other}' (expected thmA, a2g1, a2g1n or a2hyp)"
        ))),
    }
}

fn profile_token(profile: BoundProfile) -> &'static str {
    match profile {
        BoundProfile::Liouvillian => "thmA",
        BoundProfile::Genus1Isotrivial => "a2g1",
        BoundProfile::Genus1NonIsotrivial => "a2g1n",
        BoundProfile::IsotrivialHyperbolic => "a2hyp",
    }
}

fn candidate_json(c: &crate::foliation::DarbouxCandidate) -> Value {
    json!({
        "f": c.f.to_string(),
        "cofactor": c.cofactor.to_string(),
        "degree": c.f.degree().expect_finite(),
        "square_free": c.is_square_free(),
    })
}

fn search_json(x: &VectorField, outcome: &SearchOutcome, notes: &mut Vec<String>) -> Value {
    match outcome {
        SearchOutcome::FirstIntegralRegime { n } => json!({
            "first_integral_regime": n,
        }),
        SearchOutcome::Completed(r) => {
            if let Some(n) = r.truncated_at {
                notes.push(format!(
                    "search truncated at n={n}; results above that degree were not examined"
                ));
            }
            notes.extend(r.notes.iter().cloned());
            let _ = x;
            json!({
                "candidates": r.candidates.iter().map(candidate_json).collect::<Vec<_>>(),
                "nonrational_branches": r.nonrational_branches,
                "truncated_at": r.truncated_at,
            })
        }
    }
}

fn resolve_nmax(
    nmax: NmaxArg,
    x: &VectorField,
    profile: BoundProfile,
    notes: &mut Vec<String>,
) -> Result<usize, CliError> {
    match nmax {
        NmaxArg::Fixed(n) => {
            if n == 0 {
                return Err(CliError::Input("nmax must be at least 1".into()));
            }
            Ok(n)
        }
        NmaxArg::Auto => {
            let info = foliation_degree(x);
            let bound = degree_bound(info.degree, profile)?;
            notes.push(format!(
                "auto nmax: degree bound {} = {} x (d - 1) with d = {}",
                bound,
                profile.multiplier(),
                info.degree
            ));
            Ok(bound)
        }
    }
}

/// `curves`: search for invariant algebraic curves up to the degree cap.
pub fn cmd_curves(
    meta: &ReportMeta,
    file: &FoliationFile,
    nmax: NmaxArg,
    profile: BoundProfile,
) -> Result<Report, CliError> {
    let x = build_field(file)?;
    let info = foliation_degree(&x);
    let mut notes = Vec::new();
    if let Some(g) = x.removed_factor() {
        notes.push(format!("common factor {g} divided out of (P, Q)"));
    }
    let n_max = resolve_nmax(nmax, &x, profile, &mut notes)?;
    let cfg = meta.groebner.unwrap_or_default();
    let outcome = search_invariant_curves_with(&cfg, &x, n_max)?;
    let results = json!({
        "foliation": {
            "name": file.name,
            "degree": info.degree,
            "max_coeff_degree": info.max_coeff_degree,
            "infinity_invariant": info.infinity_invariant,
            "profile": profile_token(profile),
            "nmax": n_max,
        },
        "search": search_json(&x, &outcome, &mut notes),
    });
    Ok(Report::assemble(meta, results, vec![], notes))
}

/// `check`: verify the supplied candidate curves one by one.
pub fn cmd_check(meta: &ReportMeta, file: &FoliationFile) -> Result<Report, CliError> {
    if file.candidates.is_empty() {
        return Err(CliError::Input(
            "check needs a non-empty \"candidates\" list".into(),
        ));
    }
    let x = build_field(file)?;
    let mut entries = Vec::new();
    for text in &file.candidates {
        let f = parse_poly(text, 2).map_err(|e| CliError::Input(format!("candidate: {e}")))?;
        match cofactor(&x, &f)? {
            Some(c) => {
                let first_integral = c.cofactor.is_zero();
                entries.push(json!({
                    "input": text,
                    "status": "invariant",
                    "cofactor": c.cofactor.to_string(),
                    "first_integral": first_integral,
                }));
            }
            None => entries.push(json!({
                "input": text,
                "status": "not_invariant",
            })),
        }
    }
    let results = json!({ "checks": entries });
    Ok(Report::assemble(meta, results, vec![], vec![]))
}

/// `darboux`: search, then assemble first integrals / integrating factors
/// and verify the residue budget.
pub fn cmd_darboux(
    meta: &ReportMeta,
    file: &FoliationFile,
    nmax: Option<NmaxArg>,
    profile: BoundProfile,
) -> Result<Report, CliError> {
    let x = build_field(file)?;
    let info = foliation_degree(&x);
    let mut notes = Vec::new();
    let n_max = match nmax {
        Some(arg) => resolve_nmax(arg, &x, profile, &mut notes)?,
        None => {
            if info.degree >= 2 {
                resolve_nmax(NmaxArg::Auto, &x, profile, &mut notes)?
            } else {
                let fallback = info.max_coeff_degree.max(1);
                notes.push(format!(
                    "degree d = {} is below the bound profiles; searching up to n = {fallback}",
                    info.degree
                ));
                fallback
            }
        }
    };
    let cfg = meta.groebner.unwrap_or_default();
    let outcome = search_invariant_curves_with(&cfg, &x, n_max)?;
    let search = search_json(&x, &outcome, &mut notes);
    let mut verdicts = Vec::new();
    let mut first_integral = Value::Null;
    let mut integrating_factor = Value::Null;
    if let SearchOutcome::Completed(report) = &outcome {
        if let Some(s) = assemble_first_integral(&report.candidates) {
            first_integral = structure_json(&s);
        }
        if let Some(s) = assemble_integrating_factor(&x, &report.candidates) {
            let budget = verify_residue_budget(&s, info.degree)
                .expect("kind is integrating factor");
            verdicts.push(Verdict {
                name: "residue_budget".into(),
                pass: budget,
                detail: format!(
                    "sum mu_i deg f_i + mu_inf = {} (target {}), residue at infinity matches",
                    s.weighted_exponent_sum(),
                    info.degree + 2
                ),
            });
            integrating_factor = structure_json(&s);
        }
    }
    let results = json!({
        "foliation": {
            "name": file.name,
            "degree": info.degree,
            "max_coeff_degree": info.max_coeff_degree,
            "infinity_invariant": info.infinity_invariant,
            "nmax": n_max,
        },
        "search": search,
        "first_integral": first_integral,
        "integrating_factor": integrating_factor,
    });
    Ok(Report::assemble(meta, results, verdicts, notes))
}

fn structure_json(s: &crate::darboux::LiouvillianStructure) -> Value {
    let factor: Vec<String> = s
        .curves
        .iter()
        .map(|(c, mu)| format!("({})^({})", c.f, -mu.clone()))
        .collect();
    json!({
        "kind": match s.kind {
            StructureKind::FirstIntegral => "first_integral",
            StructureKind::IntegratingFactor => "integrating_factor",
        },
        "curves": s.curves.iter().map(|(c, mu)| json!({
            "f": c.f.to_string(),
            "cofactor": c.cofactor.to_string(),
            "exponent_e": (-mu.clone()).to_string(),
            "mu": mu.to_string(),
        })).collect::<Vec<_>>(),
        "expression": factor.join(" * "),
        "mu_infinity": s.exponent_at_infinity.to_string(),
        "eta0_residue_at_infinity": s.eta0.residue_at_infinity().to_string(),
        "weighted_exponent_sum": s.weighted_exponent_sum().to_string(),
    })
}

/// Inclusive range argument for `speyer`: "7" or "3..30".
pub fn parse_m_range(text: &str) -> Result<(u64, u64), CliError> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u64 = lo
            .parse()
            .map_err(|_| CliError::Input(format!("bad range start '{lo}'")))?;
        let hi: u64 = hi
            .parse()
            .map_err(|_| CliError::Input(format!("bad range end '{hi}'")))?;
        if lo > hi {
            return Err(CliError::Input(format!("empty range {lo}..{hi}")));
        }
        Ok((lo, hi))
    } else {
        let m: u64 = text
            .parse()
            .map_err(|_| CliError::Input(format!("bad modulus '{text}'")))?;
        Ok((m, m))
    }
}

/// `speyer`: scan decompositions of U(m) for each m in the range and check
/// the sumset bound (6 plain, 12 with a lambda pair).
pub fn cmd_speyer(meta: &ReportMeta, range: (u64, u64), lambda: bool) -> Result<Report, CliError> {
    let bound = if lambda { 12 } else { 6 };
    let mut entries = Vec::new();
    let mut notes = Vec::new();
    let mut max_entry: Option<(u64, u32)> = None;
    for m in range.0..=range.1 {
        let result = if lambda {
            cyclo::verify_speyer2(m)
        } else {
            cyclo::verify_speyer(m)
        };
        match result {
            Ok(rep) => {
                if max_entry.is_none_or(|(_, w)| rep.worst_n > w) {
                    max_entry = Some((m, rep.worst_n));
                }
                entries.push(json!({
                    "m": m,
                    "worst_n": rep.worst_n,
                    "cases_scanned": rep.cases_scanned,
                    "witness": {
                        "phi": rep.witness.0.phi_set,
                        "lambda": rep.witness.0.lambda,
                        "elements": rep.witness.1,
                    },
                }));
            }
            Err(CycloError::NoValidDecomposition(_)) | Err(CycloError::PhiTooSmall { .. }) => {
                notes.push(format!("m={m}: skipped ({})", result.unwrap_err()));
            }
            Err(e) => return Err(e.into()),
        }
    }
    if entries.is_empty() {
        return Err(CliError::Input(format!(
            "no modulus in {}..{} admits a {} decomposition",
            range.0,
            range.1,
            if lambda { "lambda-variant" } else { "plain" }
        )));
    }
    let (max_m, max_n) = max_entry.unwrap();
    let verdicts = vec![Verdict {
        name: format!("worst_N <= {bound}"),
        pass: max_n <= bound,
        detail: format!("maximum worst_N = {max_n} attained at m = {max_m}"),
    }];
    let results = json!({
        "variant": if lambda { "lambda" } else { "plain" },
        "bound": bound,
        "entries": entries,
        "max": { "m": max_m, "worst_n": max_n },
    });
    Ok(Report::assemble(meta, results, verdicts, notes))
}

/// Parse the inline key=value orbifold tokens:
/// `g=0 b=2,3,7 c=1 d=2,2 e=3 profile=riccati`.
pub fn parse_orbifold_tokens(tokens: &[String]) -> Result<(OrbifoldData, Profile), CliError> {
    let mut genus = None;
    let mut b = Vec::new();
    let mut c = 0usize;
    let mut d = Vec::new();
    let mut e = Vec::new();
    let mut profile = Profile::Riccati;
    for tok in tokens {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("expected key=value, got '{tok}'")))?;
        let list = |v: &str| -> Result<Vec<u64>, CliError> {
            if v.is_empty() {
                return Ok(vec![]);
            }
            v.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<u64>()
                        .map_err(|_| CliError::Input(format!("bad integer '{s}' in '{tok}'")))
                })
                .collect()
        };
        match key {
            "g" => {
                genus = Some(value.parse::<usize>().map_err(|_| {
                    CliError::Input(format!("bad genus '{value}'"))
                })?)
            }
            "b" => b = list(value)?,
            "c" => {
                c = value
                    .parse::<usize>()
                    .map_err(|_| CliError::Input(format!("bad count '{value}'")))?
            }
            "d" => d = list(value)?,
            "e" => e = list(value)?,
            "profile" => {
                profile = match value {
                    "riccati" => Profile::Riccati,
                    "turbulent" => Profile::Turbulent,
                    "isotrivial_hyperbolic" => Profile::IsotrivialHyperbolic,
                    "elliptic_nonisotrivial" => Profile::EllipticNonisotrivial,
                    other => {
                        return Err(CliError::Input(format!("unknown profile '{other}'")))
                    }
                }
            }
            other => return Err(CliError::Input(format!("unknown key '{other}'"))),
        }
    }
    let genus = genus.ok_or_else(|| CliError::Input("missing g=<genus>".into()))?;
    let data = OrbifoldData::new(genus, b, c, d, e)?;
    Ok((data, profile))
}

/// `kmin`: pluricanonical threshold with its delta trace.
pub fn cmd_kmin(meta: &ReportMeta, tokens: &[String]) -> Result<Report, CliError> {
    let (data, profile) = parse_orbifold_tokens(tokens)?;
    let report = orbifold::k_min(&data, profile)?;
    let results = json!({
        "data": data,
        "degree": data.orbifold_degree().to_string(),
        "k_min": report.k_min,
        "profile": report.profile.as_str(),
        "delta_trace": report.delta_trace,
    });
    Ok(Report::assemble(meta, results, vec![], vec![]))
}

/// `bound`: the degree cap for a given foliation degree and profile.
pub fn cmd_bound(meta: &ReportMeta, d: usize, profile: BoundProfile) -> Result<Report, CliError> {
    let bound = degree_bound(d, profile)?;
    let results = json!({
        "d": d,
        "profile": profile_token(profile),
        "multiplier": profile.multiplier(),
        "bound": bound,
    });
    Ok(Report::assemble(meta, results, vec![], vec![]))
}

/// `scan`: exhaustive triple tables (exposed for completeness; the kmin
/// command covers single configurations).
pub fn cmd_scan(
    meta: &ReportMeta,
    constraint: TripleConstraint,
    o_max: u64,
) -> Result<Report, CliError> {
    if o_max < 7 {
        return Err(CliError::Input("scan needs o_max >= 7".into()));
    }
    let scan = orbifold::scan_triples(constraint, o_max);
    let verdicts = vec![Verdict {
        name: "monotonicity".into(),
        pass: scan.monotonicity_ok,
        detail: "componentwise larger weights never increase k_min".into(),
    }];
    let results = json!({
        "constraint": match constraint {
            TripleConstraint::All => "all",
            TripleConstraint::Lcm => "lcm",
        },
        "o_max": o_max,
        "worst": { "triple": scan.worst.0, "k_min": scan.worst.1 },
        "table": scan.table,
    });
    Ok(Report::assemble(meta, results, verdicts, vec![]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta() -> ReportMeta {
        ReportMeta::new("test", b"input".to_vec())
    }

    #[test]
    fn curves_report_golden() {
        let file = FoliationFile {
            name: Some("diag".into()),
            p: "x".into(),
            q: "2*y".into(),
            candidates: vec![],
        };
        let rep = cmd_curves(&meta(), &file, NmaxArg::Fixed(1), BoundProfile::Liouvillian).unwrap();
        let cands = rep.results["search"]["candidates"].as_array().unwrap();
        assert_eq!(cands.len(), 2);
        assert_eq!(cands[0]["f"], "x");
        assert_eq!(cands[0]["cofactor"], "1");
        assert_eq!(cands[1]["f"], "y");
        assert_eq!(cands[1]["cofactor"], "2");
    }

    #[test]
    fn curves_first_integral_regime() {
        let file = FoliationFile {
            name: None,
            p: "y".into(),
            q: "-1*x".into(),
            candidates: vec![],
        };
        let rep = cmd_curves(&meta(), &file, NmaxArg::Fixed(2), BoundProfile::Liouvillian).unwrap();
        assert_eq!(rep.results["search"]["first_integral_regime"], 2);
    }

    #[test]
    fn check_flags_first_integral() {
        let file = FoliationFile {
            name: None,
            p: "y".into(),
            q: "-1*x".into(),
            candidates: vec!["x^2 + y^2".into(), "x + y".into()],
        };
        let rep = cmd_check(&meta(), &file).unwrap();
        let checks = rep.results["checks"].as_array().unwrap();
        assert_eq!(checks[0]["status"], "invariant");
        assert_eq!(checks[0]["first_integral"], true);
        assert_eq!(checks[1]["status"], "not_invariant");
    }

    #[test]
    fn darboux_pipeline_budget() {
        let file = FoliationFile {
            name: None,
            p: "x".into(),
            q: "2*y".into(),
            candidates: vec![],
        };
        let rep = cmd_darboux(&meta(), &file, None, BoundProfile::Liouvillian).unwrap();
        assert!(rep.verdicts.iter().any(|v| v.name == "residue_budget" && v.pass));
        let factor = &rep.results["integrating_factor"];
        assert_eq!(factor["mu_infinity"], "1");
        assert_eq!(factor["weighted_exponent_sum"], "3");
    }

    #[test]
    fn speyer_range_and_tokens() {
        assert_eq!(parse_m_range("3..30").unwrap(), (3, 30));
        assert_eq!(parse_m_range("7").unwrap(), (7, 7));
        assert!(parse_m_range("9..2").is_err());
        let rep = cmd_speyer(&meta(), (3, 8), false).unwrap();
        assert_eq!(rep.results["max"]["worst_n"], 6);
        assert!(rep.verdicts[0].pass);
    }

    #[test]
    fn kmin_tokens() {
        let tokens: Vec<String> = ["g=0", "b=2,3,7"].iter().map(|s| s.to_string()).collect();
        let rep = cmd_kmin(&meta(), &tokens).unwrap();
        assert_eq!(rep.results["k_min"], 42);
    }

    #[test]
    fn bound_report() {
        let rep = cmd_bound(&meta(), 3, BoundProfile::Liouvillian).unwrap();
        assert_eq!(rep.results["bound"], 24);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Input("x".into()).exit_code(), 1);
        assert_eq!(CliError::Resource("x".into()).exit_code(), 2);
        assert_eq!(CliError::BoundViolated("x".into()).exit_code(), 3);
    }

    #[test]
    fn deterministic_serialization() {
        let file = FoliationFile {
            name: None,
            p: "x".into(),
            q: "2*y".into(),
            candidates: vec![],
        };
        let a = cmd_darboux(&meta(), &file, None, BoundProfile::Liouvillian).unwrap();
        let b = cmd_darboux(&meta(), &file, None, BoundProfile::Liouvillian).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
