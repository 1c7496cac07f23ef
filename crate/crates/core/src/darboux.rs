//! Invariant-curve search up to degree-bound profiles and assembly of
//! Darboux first integrals, integrating factors, and the associated closed
//! logarithmic form with exact residue bookkeeping.
//!
//! Conventions (fixed here and verified on the worked linear examples):
//! the dual 1-form is w = Q dx - P dy, so w(X) = 0; a Darboux integrating
//! factor R = prod f_i^(e_i) is characterized by sum e_i k_i = -div X; pole
//! exponents are mu_i = -e_i; the closed form eta0 = sum e_i dlog f_i obeys
//! dw = w /\ eta0; and the exponent at infinity is chosen so that
//! sum mu_i deg f_i + mu_inf equals d + 2 for integrating factors and 0 for
//! first integrals.

use crate::foliation::{
    cofactor, detect_rational_first_integral, foliation_degree, DarbouxCandidate, FoliationError,
    VectorField, EXTACTIC_BASIS_CAP,
};
use crate::groebner::{
    buchberger_with, solve_zero_dimensional, GroebnerConfig, GroebnerError, SolveError,
};
use crate::linalg;
use crate::poly::{rat_int, Monomial, Poly, Rational, TermOrder};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DarbouxError {
    #[error("degree bounds require foliation degree d >= 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("residue budget applies to integrating factors only")]
    KindMismatch,
    #[error("resource limit during search at n={n}, normalization {normalization}: {source}")]
    SearchResourceLimit {
        n: usize,
        normalization: String,
        source: GroebnerError,
    },
    #[error(transparent)]
    Foliation(#[from] FoliationError),
}

/// Degree-bound profiles for the classes of foliations covered by the
/// effective results: multiplier times (d - 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundProfile {
    /// Liouvillian first integral, no rational first integral: 12(d-1).
    Liouvillian,
    /// Rational first integral, isotrivial genus-1 fibration: 6(d-1).
    Genus1Isotrivial,
    /// Rational first integral, non-isotrivial genus-1 fibration: 12(d-1).
    Genus1NonIsotrivial,
    /// Rational first integral, isotrivial hyperbolic fibration: 42(d-1).
    IsotrivialHyperbolic,
}

impl BoundProfile {
    pub fn multiplier(self) -> usize {
        match self {
            BoundProfile::Liouvillian => 12,
            BoundProfile::Genus1Isotrivial => 6,
            BoundProfile::Genus1NonIsotrivial => 12,
            BoundProfile::IsotrivialHyperbolic => 42,
        }
    }
}

/// The effective search cap: multiplier x (d - 1), for d >= 2.
pub fn degree_bound(d: usize, profile: BoundProfile) -> Result<usize, DarbouxError> {
    if d < 2 {
        return Err(DarbouxError::DegreeTooSmall(d));
    }
    Ok(profile.multiplier() * (d - 1))
}

/// Outcome of the invariant-curve search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// The extactic vanished identically at this degree: infinitely many
    /// invariant curves, rational-first-integral regime.
    FirstIntegralRegime { n: usize },
    Completed(SearchReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchReport {
    /// Deduplicated, cofactor-verified candidates, sorted by (degree, form).
    pub candidates: Vec<DarbouxCandidate>,
    /// Number of ansatz strata whose eliminant had non-rational roots;
    /// those invariant curves exist over extensions and are not returned.
    pub nonrational_branches: usize,
    /// Set when the extactic cap cut the requested degree range short.
    pub truncated_at: Option<usize>,
    pub notes: Vec<String>,
}

/// Search for invariant algebraic curves of degree 1..=n_max.
///
/// For each degree: the extactic pre-filter flags the rational-first-
/// integral regime; otherwise the bilinear ansatz X(f) - k f = 0 is solved
/// per normalization stratum (each monomial of f in turn set to 1,
/// descending degrevlex) through the Groebner engine, and every rational
/// solution is re-verified via `cofactor` before being reported.
pub fn search_invariant_curves(
    x: &VectorField,
    n_max: usize,
) -> Result<SearchOutcome, DarbouxError> {
    search_invariant_curves_with(&GroebnerConfig::default(), x, n_max)
}

/// Same search with explicit Groebner resource ceilings.
pub fn search_invariant_curves_with(
    cfg: &GroebnerConfig,
    x: &VectorField,
    n_max: usize,
) -> Result<SearchOutcome, DarbouxError> {
    assert!(n_max >= 1, "search needs n_max >= 1");
    let cap_n = max_extactic_degree();
    let n_stop = n_max.min(cap_n);
    let mut report = SearchReport {
        truncated_at: (n_max > cap_n).then_some(cap_n),
        ..Default::default()
    };
    if report.truncated_at.is_some() {
        report.notes.push(format!(
            "search truncated at n={cap_n}: extactic basis cap {EXTACTIC_BASIS_CAP} (requested n_max={n_max})"
        ));
    }
    for n in 1..=n_stop {
        if detect_rational_first_integral(x, n)? {
            return Ok(SearchOutcome::FirstIntegralRegime { n });
        }
        let before = report.candidates.len();
        search_at_degree(cfg, x, n, &mut report)?;
        if report.candidates.len() == before {
            report
                .notes
                .push(format!("n={n}: no rational invariant curve of degree <= {n} beyond those already listed"));
        }
    }
    // Ascending degree, descending degrevlex within a degree (x before y).
    report.candidates.sort_by(|a, b| {
        a.f.degree()
            .cmp(&b.f.degree())
            .then_with(|| b.f.cmp(&a.f))
            .then_with(|| b.cofactor.cmp(&a.cofactor))
    });
    Ok(SearchOutcome::Completed(report))
}

fn max_extactic_degree() -> usize {
    // Largest n with (n+1)(n+2)/2 <= cap.
    let mut n = 1;
    while (n + 2) * (n + 3) / 2 <= EXTACTIC_BASIS_CAP {
        n += 1;
    }
    n
}

/// Monomials of total degree <= n in descending degrevlex.
fn ansatz_monomials(n: usize) -> Vec<Monomial> {
    let order = TermOrder::degrevlex(2);
    let mut monos = Vec::new();
    for a in 0..=n as u32 {
        for b in 0..=(n as u32 - a) {
            monos.push(Monomial(vec![a, b]));
        }
    }
    monos.sort_by(|a, b| order.cmp_monomials(b, a));
    monos
}

/// One normalization stratum of the bilinear system, solved exactly.
struct StratumResult {
    candidates: Vec<DarbouxCandidate>,
    nonrational: bool,
}

fn search_at_degree(
    cfg: &GroebnerConfig,
    x: &VectorField,
    n: usize,
    report: &mut SearchReport,
) -> Result<(), DarbouxError> {
    let f_monos = ansatz_monomials(n);
    let cap_d = x.max_coeff_degree();
    let k_monos: Vec<Monomial> = if cap_d == 0 {
        Vec::new()
    } else {
        ansatz_monomials(cap_d - 1)
    };
    let s = f_monos.len();
    let t = k_monos.len();
    let unknowns = s + t;

    // Equations: coefficients of X(f) - k*f as polynomials in the unknown
    // coefficient variables a_0..a_{s-1}, b_0..b_{t-1}.
    let mut equations: std::collections::BTreeMap<Monomial, Poly> = std::collections::BTreeMap::new();
    for (i, m) in f_monos.iter().enumerate() {
        let basis_poly = Poly::from_terms(2, [(m.clone(), rat_int(1))]);
        let lie = x.lie_derivative(&basis_poly);
        for (mu, c) in lie.terms() {
            let entry = equations
                .entry(mu.clone())
                .or_insert_with(|| Poly::zero(unknowns));
            *entry = &*entry
                + &Poly::from_terms(unknowns, [(Monomial::var(i, unknowns), c.clone())]);
        }
        for (j, mk) in k_monos.iter().enumerate() {
            let mu = m.mul(mk);
            let mut exps = vec![0u32; unknowns];
            exps[i] = 1;
            exps[s + j] = 1;
            let entry = equations
                .entry(mu)
                .or_insert_with(|| Poly::zero(unknowns));
            *entry = &*entry + &Poly::from_terms(unknowns, [(Monomial(exps), rat_int(-1))]);
        }
    }
    let equations: Vec<Poly> = equations.into_values().collect();

    let strata: Vec<Result<StratumResult, DarbouxError>> = (0..s)
        .into_par_iter()
        .map(|r| solve_stratum(cfg, x, n, &f_monos, &k_monos, &equations, r))
        .collect();
    let mut seen: std::collections::BTreeSet<Poly> =
        report.candidates.iter().map(|c| c.f.clone()).collect();
    for stratum in strata {
        let stratum = stratum?;
        if stratum.nonrational {
            report.nonrational_branches += 1;
        }
        for cand in stratum.candidates {
            if seen.insert(cand.f.clone()) {
                report.candidates.push(cand);
            }
        }
    }
    Ok(())
}

fn solve_stratum(
    cfg: &GroebnerConfig,
    x: &VectorField,
    n: usize,
    f_monos: &[Monomial],
    k_monos: &[Monomial],
    equations: &[Poly],
    normalized: usize,
) -> Result<StratumResult, DarbouxError> {
    let s = f_monos.len();
    let unknowns = s + k_monos.len();
    let one = Rational::one();
    let reduced: Vec<Poly> = equations
        .iter()
        .map(|eq| remove_unused_var(&eq.substitute(normalized, &one), normalized))
        .filter(|eq| !eq.is_zero())
        .collect();
    let order = TermOrder::lex(unknowns - 1);
    let resource = |source: GroebnerError| DarbouxError::SearchResourceLimit {
        n,
        normalization: format_mono(&f_monos[normalized]),
        source,
    };
    let basis = buchberger_with(cfg, &reduced, &order).map_err(resource)?;
    let solutions = match solve_zero_dimensional(&basis) {
        Ok(sol) => sol,
        Err(SolveError::PositiveDimensional) => {
            // Should be excluded by the extactic pre-filter; report the
            // stratum as exhausted without candidates.
            return Ok(StratumResult {
                candidates: Vec::new(),
                nonrational: false,
            });
        }
        Err(SolveError::Groebner(source)) => return Err(resource(source)),
    };
    let mut candidates = Vec::new();
    for point in &solutions.points {
        // Reinsert the normalized coordinate.
        let mut full: Vec<Rational> = Vec::with_capacity(unknowns);
        let mut it = point.iter();
        for idx in 0..unknowns {
            if idx == normalized {
                full.push(Rational::one());
            } else {
                full.push(it.next().unwrap().clone());
            }
        }
        let f = Poly::from_terms(
            2,
            f_monos
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), full[i].clone())),
        );
        if f.is_constant() {
            continue;
        }
        // Re-verify through the invariance test; the ansatz cofactor is
        // recomputed rather than trusted.
        if let Some(cand) = cofactor(x, &f).expect("f is non-constant") {
            candidates.push(cand);
        }
    }
    candidates.sort();
    candidates.dedup();
    Ok(StratumResult {
        candidates,
        nonrational: solutions.nonrational_detected,
    })
}

fn format_mono(m: &Monomial) -> String {
    let p = Poly::from_terms(2, [(m.clone(), rat_int(1))]);
    p.to_string()
}

/// Drop a variable that no longer occurs, shrinking the arity by one.
fn remove_unused_var(p: &Poly, var: usize) -> Poly {
    debug_assert!(!p.used_vars().contains(&var));
    let arity = p.arity() - 1;
    Poly::from_terms(
        arity,
        p.terms().map(|(m, c)| {
            let mut exps = m.0.clone();
            exps.remove(var);
            (Monomial(exps), c.clone())
        }),
    )
}

/// Closed logarithmic 1-form sum e_i dlog f_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogDifferential {
    /// Pairs (f_i, e_i) with f_i non-constant.
    pub terms: Vec<(Poly, Rational)>,
}

impl LogDifferential {
    /// Affine presentation (A dx + B dy) / Dm with polynomial A, B, Dm:
    /// A = sum e_i (df_i/dx) prod_{j != i} f_j, similarly B, Dm = prod f_i.
    pub fn affine_parts(&self) -> (Poly, Poly, Poly) {
        let mut a = Poly::zero(2);
        let mut b = Poly::zero(2);
        let mut dm = Poly::one(2);
        for (f, _) in &self.terms {
            dm = &dm * f;
        }
        for (i, (f, e)) in self.terms.iter().enumerate() {
            let mut rest = Poly::one(2);
            for (j, (g, _)) in self.terms.iter().enumerate() {
                if j != i {
                    rest = &rest * g;
                }
            }
            a = &a + &(&f.diff(0) * &rest).scale(e);
            b = &b + &(&f.diff(1) * &rest).scale(e);
        }
        (a, b, dm)
    }

    /// Residue along the line at infinity, read off an exact pullback to
    /// the chart u = 1/x, v = y/x: the coefficient of du/u at u = 0.
    pub fn residue_at_infinity(&self) -> Rational {
        let (a, b, dm) = self.affine_parts();
        if a.is_zero() && b.is_zero() {
            return Rational::zero();
        }
        let (a_star, na) = chart_at_infinity(&a);
        let (b_star, nb) = chart_at_infinity(&b);
        let (d_star, nd) = chart_at_infinity(&dm);
        let m = na.max(nb);
        let u = Poly::var(0, 2);
        let v = Poly::var(1, 2);
        let mut numerator = Poly::zero(2);
        if !a_star.is_zero() {
            numerator = &numerator + &(&a_star * &u.pow(m - na));
        }
        if !b_star.is_zero() {
            numerator = &numerator + &(&(&b_star * &v) * &u.pow(m - nb));
        }
        if numerator.is_zero() {
            return Rational::zero();
        }
        let ord_n = numerator.order_in(0).unwrap() as i64;
        let ord_d = d_star.order_in(0).unwrap() as i64;
        let valuation = (nd as i64) - 2 - (m as i64) + ord_n - ord_d;
        if valuation >= 0 {
            return Rational::zero();
        }
        assert!(
            valuation == -1,
            "logarithmic form has at most a simple pole at infinity"
        );
        let num_red = strip_u(&numerator, ord_n as u32).substitute(0, &Rational::zero());
        let den_red = strip_u(&d_star, ord_d as u32).substitute(0, &Rational::zero());
        let ratio = num_red
            .exact_div(&den_red)
            .expect("residue of a closed logarithmic form is constant along the line");
        assert!(ratio.is_constant(), "residue varies along the line at infinity");
        -ratio.constant_term()
    }
}

/// Substitute x = 1/u, y = v/u and clear the denominator:
/// g(1/u, v/u) = u^(-deg g) g*(u, v). Returns (g*, deg g).
fn chart_at_infinity(g: &Poly) -> (Poly, usize) {
    if g.is_zero() {
        return (Poly::zero(2), 0);
    }
    let n = g.degree().expect_finite();
    let mut out = Poly::zero(2);
    for (mono, c) in g.terms() {
        let (a, b) = (mono.0[0], mono.0[1]);
        let exps = vec![n as u32 - a - b, b];
        out = &out + &Poly::from_terms(2, [(Monomial(exps), c.clone())]);
    }
    (out, n)
}

fn strip_u(p: &Poly, power: u32) -> Poly {
    Poly::from_terms(
        2,
        p.terms().map(|(m, c)| {
            let mut exps = m.0.clone();
            exps[0] -= power;
            (Monomial(exps), c.clone())
        }),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    FirstIntegral,
    IntegratingFactor,
}

/// Exponent data of a Darboux first integral or integrating factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiouvillianStructure {
    /// (candidate, mu_i) with pole exponent mu_i = -e_i.
    pub curves: Vec<(DarbouxCandidate, Rational)>,
    pub exponent_at_infinity: Rational,
    pub eta0: LogDifferential,
    pub kind: StructureKind,
}

impl LiouvillianStructure {
    pub fn exponents(&self) -> Vec<Rational> {
        self.curves.iter().map(|(_, mu)| -mu.clone()).collect()
    }

    /// sum mu_i deg f_i + mu_inf: equals d + 2 for integrating factors and
    /// 0 for first integrals.
    pub fn weighted_exponent_sum(&self) -> Rational {
        let mut acc = self.exponent_at_infinity.clone();
        for (cand, mu) in &self.curves {
            acc += mu * rat_int(cand.f.degree().expect_finite() as i64);
        }
        acc
    }
}

/// Cofactor coefficient matrix: one row per monomial in the union of the
/// cofactor supports (plus `extra`), one column per candidate.
fn cofactor_matrix(cands: &[DarbouxCandidate], extra: Option<&Poly>) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let mut monos: std::collections::BTreeSet<Monomial> = std::collections::BTreeSet::new();
    for c in cands {
        monos.extend(c.cofactor.terms().map(|(m, _)| m.clone()));
    }
    if let Some(p) = extra {
        monos.extend(p.terms().map(|(m, _)| m.clone()));
    }
    if monos.is_empty() {
        // All cofactors (and the target) vanish; keep one trivial equation
        // so the column count survives.
        monos.insert(Monomial::one(2));
    }
    let mut rows = Vec::with_capacity(monos.len());
    let mut rhs = Vec::with_capacity(monos.len());
    for m in &monos {
        rows.push(cands.iter().map(|c| c.cofactor.coefficient(m)).collect());
        rhs.push(extra.map(|p| p.coefficient(m)).unwrap_or_else(Rational::zero));
    }
    (rows, rhs)
}

/// Darboux first integral prod f_i^(e_i): a nontrivial exact solution of
/// sum e_i k_i = 0, reported with a minimal-height integer vector
/// (reduced-echelon kernel basis, cleared to primitive integers, ties to
/// the earliest pivot).
pub fn assemble_first_integral(cands: &[DarbouxCandidate]) -> Option<LiouvillianStructure> {
    if cands.is_empty() {
        return None;
    }
    let (rows, _) = cofactor_matrix(cands, None);
    let kernel = linalg::nullspace(&rows);
    if kernel.is_empty() {
        return None;
    }
    let scaled: Vec<Vec<Rational>> = kernel.iter().map(|v| linalg::integer_primitive(v)).collect();
    let e = scaled
        .iter()
        .min_by(|a, b| linalg::height(a).cmp(&linalg::height(b)))
        .unwrap()
        .clone();
    let check: Poly = cands
        .iter()
        .zip(&e)
        .fold(Poly::zero(2), |acc, (c, ei)| &acc + &c.cofactor.scale(ei));
    assert!(check.is_zero(), "kernel vector fails sum e_i k_i = 0");
    Some(build_structure(cands, &e, StructureKind::FirstIntegral, None))
}

/// Darboux integrating factor R = prod f_i^(e_i): an exact solution of
/// sum e_i k_i = -div X, with the exponent vector chosen of minimal height
/// in the affine solution set. On success the closedness identity
/// d(w) - w /\ eta0 = 0 is expanded and asserted exactly.
pub fn assemble_integrating_factor(
    x: &VectorField,
    cands: &[DarbouxCandidate],
) -> Option<LiouvillianStructure> {
    if cands.is_empty() {
        return None;
    }
    let target = -&x.divergence();
    let (rows, rhs) = cofactor_matrix(cands, Some(&target));
    let sol = linalg::solve_linear(&rows, &rhs)?;
    let e = minimal_height_solution(&sol);

    // Closedness, expanded from scratch: -div(X) * prod f_j equals
    // sum e_i X(f_i) prod_{j != i} f_j as polynomials.
    let mut rhs_poly = Poly::zero(2);
    for (i, (c, ei)) in cands.iter().zip(&e).enumerate() {
        let mut rest = Poly::one(2);
        for (j, other) in cands.iter().enumerate() {
            if j != i {
                rest = &rest * &other.f;
            }
        }
        rhs_poly = &rhs_poly + &(&x.lie_derivative(&c.f) * &rest).scale(ei);
    }
    let mut product = Poly::one(2);
    for c in cands {
        product = &product * &c.f;
    }
    let lhs_poly = &target * &product;
    assert_eq!(
        lhs_poly, rhs_poly,
        "dw - w /\\ eta0 failed to expand to zero"
    );

    let d = foliation_degree(x).degree;
    Some(build_structure(
        cands,
        &e,
        StructureKind::IntegratingFactor,
        Some(d),
    ))
}

fn build_structure(
    cands: &[DarbouxCandidate],
    e: &[Rational],
    kind: StructureKind,
    degree: Option<usize>,
) -> LiouvillianStructure {
    let curves: Vec<(DarbouxCandidate, Rational)> = cands
        .iter()
        .zip(e)
        .map(|(c, ei)| (c.clone(), -ei.clone()))
        .collect();
    let weighted: Rational = curves
        .iter()
        .map(|(c, mu)| mu * rat_int(c.f.degree().expect_finite() as i64))
        .sum();
    let exponent_at_infinity = match kind {
        StructureKind::IntegratingFactor => {
            rat_int(degree.expect("foliation degree") as i64 + 2) - &weighted
        }
        // First integrals are degree-zero homogeneous objects: the line at
        // infinity carries whatever exponent balances the affine curves.
        StructureKind::FirstIntegral => -weighted,
    };
    let eta0 = LogDifferential {
        terms: cands
            .iter()
            .zip(e)
            .map(|(c, ei)| (c.f.clone(), ei.clone()))
            .collect(),
    };
    LiouvillianStructure {
        curves,
        exponent_at_infinity,
        eta0,
        kind,
    }
}

/// Minimal-height point of the affine solution set. Exact one-dimensional
/// minimization over the kernel line (critical points of a convex
/// piecewise-linear height), coordinate-descent sweeps for higher nullity.
fn minimal_height_solution(sol: &linalg::AffineSolution) -> Vec<Rational> {
    let mut best = sol.particular.clone();
    if sol.nullspace.is_empty() {
        return best;
    }
    for _ in 0..64 {
        let mut improved = false;
        for dir in &sol.nullspace {
            let t = best_line_step(&best, dir);
            if !t.is_zero() {
                for (b, d) in best.iter_mut().zip(dir) {
                    *b += &t * d;
                }
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    best
}

/// Argmin over t of max_i |p_i + t v_i|, ties to the smallest t in the
/// candidate list (sorted), 0 when no move helps.
fn best_line_step(p: &[Rational], v: &[Rational]) -> Rational {
    let mut candidates: Vec<Rational> = vec![Rational::zero()];
    for i in 0..p.len() {
        if !v[i].is_zero() {
            candidates.push(-&p[i] / &v[i]);
        }
        for j in (i + 1)..p.len() {
            // |p_i + t v_i| = |p_j + t v_j| crossings.
            let dv = &v[i] - &v[j];
            if !dv.is_zero() {
                candidates.push((&p[j] - &p[i]) / dv);
            }
            let sv = &v[i] + &v[j];
            if !sv.is_zero() {
                candidates.push((-&p[i] - &p[j]) / sv);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let height_at = |t: &Rational| {
        p.iter()
            .zip(v)
            .map(|(pi, vi)| (pi + &(t * vi)).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    };
    let mut best_t = Rational::zero();
    let mut best_h = height_at(&best_t);
    for t in candidates {
        let h = height_at(&t);
        if h < best_h {
            best_h = h;
            best_t = t;
        }
    }
    best_t
}

/// Exact residue-budget verification for an integrating factor:
/// sum mu_i deg f_i + mu_inf = d + 2, and the residue of eta0 along the
/// line at infinity (exact chart pullback) equals -sum e_i deg f_i.
pub fn verify_residue_budget(s: &LiouvillianStructure, d: usize) -> Result<bool, DarbouxError> {
    if s.kind != StructureKind::IntegratingFactor {
        return Err(DarbouxError::KindMismatch);
    }
    let budget_ok = s.weighted_exponent_sum() == rat_int(d as i64 + 2);
    let expected: Rational = s
        .eta0
        .terms
        .iter()
        .map(|(f, e)| -(e * rat_int(f.degree().expect_finite() as i64)))
        .sum();
    let residue_ok = s.eta0.residue_at_infinity() == expected;
    Ok(budget_ok && residue_ok)
}
