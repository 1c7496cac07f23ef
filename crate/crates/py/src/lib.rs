//! Python bindings for the effint toolkit.
//!
//! Exact values cross the boundary as strings ("3/2") so nothing is ever
//! rounded; polynomials print in the same grammar the parser accepts.

use effint::cyclo::{self, CycloError, Variant};
use effint::darboux::{self, BoundProfile, DarbouxError, SearchOutcome};
use effint::foliation::{self, FoliationError};
use effint::groebner::GroebnerConfig;
use effint::orbifold::{self, OrbifoldData, Profile, TripleConstraint};
use effint::poly::{parse_poly, Poly, Rational};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use std::str::FromStr;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rational(text: &str) -> PyResult<Rational> {
    Rational::from_str(text).map_err(|e| value_err(format!("bad rational '{text}': {e}")))
}

fn profile_from_str(token: &str) -> PyResult<BoundProfile> {
    match token {
        "thmA" => Ok(BoundProfile::Liouvillian),
        "a2g1" => Ok(BoundProfile::Genus1Isotrivial),
        "a2g1n" => Ok(BoundProfile::Genus1NonIsotrivial),
        "a2hyp" => Ok(BoundProfile::IsotrivialHyperbolic),
        other => Err(value_err(format!("unknown bound profile '{other}'"))),
    }
}

/// Sparse exact-rational polynomial in x, y (and z at arity 3).
#[derive(Clone, PartialEq)]
#[pyclass(name = "Poly", eq, skip_from_py_object)]
struct PyPoly {
    inner: Poly,
}

#[pymethods]
impl PyPoly {
    #[new]
    #[pyo3(signature = (text, arity = 2))]
    fn new(text: &str, arity: usize) -> PyResult<Self> {
        Ok(PyPoly {
            inner: parse_poly(text, arity).map_err(value_err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?})", self.inner.to_string())
    }

    fn __add__(&self, other: &PyPoly) -> PyPoly {
        PyPoly {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &PyPoly) -> PyPoly {
        PyPoly {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &PyPoly) -> PyPoly {
        PyPoly {
            inner: &self.inner * &other.inner,
        }
    }

    fn __pow__(&self, exp: usize, _mod: Option<usize>) -> PyPoly {
        PyPoly {
            inner: self.inner.pow(exp),
        }
    }

    /// Total degree, or None for the zero polynomial.
    fn degree(&self) -> Option<usize> {
        self.inner.degree().finite()
    }

    fn diff(&self, var: usize) -> PyResult<PyPoly> {
        if var >= self.inner.arity() {
            return Err(value_err("variable index out of range"));
        }
        Ok(PyPoly {
            inner: self.inner.diff(var),
        })
    }

    /// Exact evaluation; coordinates and result are rational strings.
    fn eval(&self, point: Vec<String>) -> PyResult<String> {
        let coords: Vec<Rational> = point
            .iter()
            .map(|s| parse_rational(s))
            .collect::<PyResult<_>>()?;
        self.inner
            .eval(&coords)
            .map(|r| r.to_string())
            .map_err(value_err)
    }

    /// Canonical scalar normalization (primitive integer coefficients,
    /// positive leading coefficient).
    fn canonical(&self) -> PyPoly {
        PyPoly {
            inner: self.inner.canonical(),
        }
    }

    fn homogenize(&self, target_degree: usize) -> PyResult<PyPoly> {
        Ok(PyPoly {
            inner: self.inner.homogenize(target_degree).map_err(value_err)?,
        })
    }

    fn dehomogenize(&self) -> PyPoly {
        PyPoly {
            inner: self.inner.dehomogenize(),
        }
    }
}

/// Plane polynomial vector field X = P d/dx + Q d/dy, saturated.
#[derive(Clone)]
#[pyclass(name = "VectorField", skip_from_py_object)]
struct PyVectorField {
    inner: foliation::VectorField,
}

#[pymethods]
impl PyVectorField {
    #[new]
    fn new(p: &str, q: &str) -> PyResult<Self> {
        let p = parse_poly(p, 2).map_err(value_err)?;
        let q = parse_poly(q, 2).map_err(value_err)?;
        Ok(PyVectorField {
            inner: foliation::VectorField::new(p, q).map_err(value_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("VectorField(P={:?}, Q={:?})", self.inner.p().to_string(), self.inner.q().to_string())
    }

    #[getter]
    fn p(&self) -> PyPoly {
        PyPoly {
            inner: self.inner.p().clone(),
        }
    }

    #[getter]
    fn q(&self) -> PyPoly {
        PyPoly {
            inner: self.inner.q().clone(),
        }
    }

    /// (degree d, max coefficient degree D, line-at-infinity invariant).
    fn degree_info(&self) -> (usize, usize, bool) {
        let info = foliation::foliation_degree(&self.inner);
        (info.degree, info.max_coeff_degree, info.infinity_invariant)
    }

    fn lie_derivative(&self, f: &PyPoly) -> PyPoly {
        PyPoly {
            inner: self.inner.lie_derivative(&f.inner),
        }
    }

    fn divergence(&self) -> PyPoly {
        PyPoly {
            inner: self.inner.divergence(),
        }
    }

    /// Cofactor of an invariant curve, or None when f is not invariant.
    fn cofactor(&self, f: &PyPoly) -> PyResult<Option<(PyPoly, PyPoly)>> {
        match foliation::cofactor(&self.inner, &f.inner).map_err(value_err)? {
            Some(c) => Ok(Some((
                PyPoly { inner: c.f },
                PyPoly { inner: c.cofactor },
            ))),
            None => Ok(None),
        }
    }
}

#[pyfunction]
fn extactic(x: &PyVectorField, n: usize) -> PyResult<PyPoly> {
    Ok(PyPoly {
        inner: foliation::extactic(&x.inner, n).map_err(value_err)?,
    })
}

#[pyfunction]
fn detect_rational_first_integral(x: &PyVectorField, n: usize) -> PyResult<bool> {
    foliation::detect_rational_first_integral(&x.inner, n).map_err(value_err)
}

fn darboux_err(e: DarbouxError) -> PyErr {
    match e {
        DarbouxError::SearchResourceLimit { .. } => PyRuntimeError::new_err(e.to_string()),
        DarbouxError::Foliation(FoliationError::BasisTooLarge { .. }) => {
            PyRuntimeError::new_err(e.to_string())
        }
        other => value_err(other),
    }
}

#[pyfunction]
#[pyo3(signature = (x, n_max, max_pairs = None))]
fn search_invariant_curves<'py>(
    py: Python<'py>,
    x: &PyVectorField,
    n_max: usize,
    max_pairs: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let mut cfg = GroebnerConfig::default();
    if let Some(p) = max_pairs {
        cfg.max_pairs = p;
    }
    let out = PyDict::new(py);
    match darboux::search_invariant_curves_with(&cfg, &x.inner, n_max).map_err(darboux_err)? {
        SearchOutcome::FirstIntegralRegime { n } => {
            out.set_item("first_integral_regime", n)?;
        }
        SearchOutcome::Completed(report) => {
            let candidates: Vec<(String, String)> = report
                .candidates
                .iter()
                .map(|c| (c.f.to_string(), c.cofactor.to_string()))
                .collect();
            out.set_item("candidates", candidates)?;
            out.set_item("nonrational_branches", report.nonrational_branches)?;
            out.set_item("truncated_at", report.truncated_at)?;
            out.set_item("notes", report.notes)?;
        }
    }
    Ok(out)
}

fn structure_dict<'py>(
    py: Python<'py>,
    s: &darboux::LiouvillianStructure,
) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    out.set_item(
        "kind",
        match s.kind {
            darboux::StructureKind::FirstIntegral => "first_integral",
            darboux::StructureKind::IntegratingFactor => "integrating_factor",
        },
    )?;
    let curves: Vec<(String, String, String)> = s
        .curves
        .iter()
        .map(|(c, mu)| {
            (
                c.f.to_string(),
                (-mu.clone()).to_string(),
                mu.to_string(),
            )
        })
        .collect();
    out.set_item("curves", curves)?;
    out.set_item("mu_infinity", s.exponent_at_infinity.to_string())?;
    out.set_item(
        "eta0_residue_at_infinity",
        s.eta0.residue_at_infinity().to_string(),
    )?;
    out.set_item("weighted_exponent_sum", s.weighted_exponent_sum().to_string())?;
    Ok(out)
}

fn verified_candidates(
    x: &PyVectorField,
    curves: Vec<String>,
) -> PyResult<Vec<foliation::DarbouxCandidate>> {
    curves
        .iter()
        .map(|text| {
            let f = parse_poly(text, 2).map_err(value_err)?;
            foliation::cofactor(&x.inner, &f)
                .map_err(value_err)?
                .ok_or_else(|| value_err(format!("'{text}' is not invariant")))
        })
        .collect()
}

#[pyfunction]
fn assemble_first_integral<'py>(
    py: Python<'py>,
    x: &PyVectorField,
    curves: Vec<String>,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    let cands = verified_candidates(x, curves)?;
    match darboux::assemble_first_integral(&cands) {
        Some(s) => Ok(Some(structure_dict(py, &s)?)),
        None => Ok(None),
    }
}

#[pyfunction]
fn assemble_integrating_factor<'py>(
    py: Python<'py>,
    x: &PyVectorField,
    curves: Vec<String>,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    let cands = verified_candidates(x, curves)?;
    match darboux::assemble_integrating_factor(&x.inner, &cands) {
        Some(s) => {
            let d = foliation::foliation_degree(&x.inner).degree;
            let dict = structure_dict(py, &s)?;
            dict.set_item(
                "budget_ok",
                darboux::verify_residue_budget(&s, d).map_err(value_err)?,
            )?;
            Ok(Some(dict))
        }
        None => Ok(None),
    }
}

#[pyfunction]
fn degree_bound(d: usize, profile: &str) -> PyResult<usize> {
    darboux::degree_bound(d, profile_from_str(profile)?).map_err(value_err)
}

fn cyclo_err(e: CycloError) -> PyErr {
    match e {
        CycloError::BoundViolated { .. } => PyRuntimeError::new_err(e.to_string()),
        CycloError::PhiCapExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        other => value_err(other),
    }
}

fn speyer_dict<'py>(py: Python<'py>, rep: &cyclo::SpeyerReport) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    out.set_item("m", rep.m)?;
    out.set_item("worst_n", rep.worst_n)?;
    out.set_item("cases_scanned", rep.cases_scanned)?;
    out.set_item("witness_phi", rep.witness.0.phi_set.clone())?;
    out.set_item("witness_lambda", rep.witness.0.lambda)?;
    out.set_item("witness_elements", rep.witness.1.clone())?;
    Ok(out)
}

#[pyfunction]
fn verify_speyer<'py>(py: Python<'py>, m: u64) -> PyResult<Bound<'py, PyDict>> {
    speyer_dict(py, &cyclo::verify_speyer(m).map_err(cyclo_err)?)
}

#[pyfunction]
fn verify_speyer2<'py>(py: Python<'py>, m: u64) -> PyResult<Bound<'py, PyDict>> {
    speyer_dict(py, &cyclo::verify_speyer2(m).map_err(cyclo_err)?)
}

#[pyfunction]
fn min_sumset_index(phi: Vec<u64>, m: u64) -> PyResult<u32> {
    if phi.is_empty() {
        return Err(value_err("phi must be nonempty"));
    }
    Ok(cyclo::min_sumset_index(&phi, m))
}

#[pyfunction]
#[pyo3(signature = (m, lambda_variant = false))]
fn unit_decompositions(m: u64, lambda_variant: bool) -> PyResult<Vec<(Vec<u64>, Option<u64>)>> {
    let variant = if lambda_variant {
        Variant::Lambda
    } else {
        Variant::Plain
    };
    Ok(cyclo::unit_decompositions(m, variant)
        .map_err(cyclo_err)?
        .into_iter()
        .map(|d| (d.phi_set, d.lambda))
        .collect())
}

#[pyfunction]
fn cauchy_davenport_check(sets: Vec<Vec<u64>>, p: u64) -> PyResult<bool> {
    cyclo::cauchy_davenport_check(&sets, p).map_err(cyclo_err)
}

fn orbifold_profile(token: &str) -> PyResult<Profile> {
    match token {
        "riccati" => Ok(Profile::Riccati),
        "turbulent" => Ok(Profile::Turbulent),
        "isotrivial_hyperbolic" => Ok(Profile::IsotrivialHyperbolic),
        "elliptic_nonisotrivial" => Ok(Profile::EllipticNonisotrivial),
        other => Err(value_err(format!("unknown profile '{other}'"))),
    }
}

#[pyfunction]
#[pyo3(signature = (genus, b = vec![], c = 0, d = vec![], e = vec![], profile = "riccati"))]
#[allow(clippy::too_many_arguments)]
fn k_min<'py>(
    py: Python<'py>,
    genus: usize,
    b: Vec<u64>,
    c: usize,
    d: Vec<u64>,
    e: Vec<u64>,
    profile: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let data = OrbifoldData::new(genus, b, c, d, e).map_err(value_err)?;
    let rep = orbifold::k_min(&data, orbifold_profile(profile)?).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("k_min", rep.k_min)?;
    out.set_item("delta_trace", rep.delta_trace)?;
    out.set_item("profile", rep.profile.as_str())?;
    out.set_item("degree", data.orbifold_degree().to_string())?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (genus, k, b = vec![], c = 0, d = vec![], e = vec![]))]
fn delta_k(genus: usize, k: u64, b: Vec<u64>, c: usize, d: Vec<u64>, e: Vec<u64>) -> PyResult<i64> {
    let data = OrbifoldData::new(genus, b, c, d, e).map_err(value_err)?;
    orbifold::delta_k(&data, k).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (genus, k, b = vec![], c = 0, d = vec![], e = vec![]))]
fn sigma_k(genus: usize, k: u64, b: Vec<u64>, c: usize, d: Vec<u64>, e: Vec<u64>) -> PyResult<i64> {
    let data = OrbifoldData::new(genus, b, c, d, e).map_err(value_err)?;
    Ok(orbifold::sigma_k(&data, k))
}

#[pyfunction]
#[pyo3(signature = (constraint = "all", o_max = 12))]
fn scan_triples<'py>(py: Python<'py>, constraint: &str, o_max: u64) -> PyResult<Bound<'py, PyDict>> {
    let c = match constraint {
        "all" => TripleConstraint::All,
        "lcm" => TripleConstraint::Lcm,
        other => return Err(value_err(format!("unknown constraint '{other}'"))),
    };
    let scan = orbifold::scan_triples(c, o_max);
    let out = PyDict::new(py);
    out.set_item("worst", scan.worst)?;
    out.set_item("table", scan.table)?;
    out.set_item("monotonicity_ok", scan.monotonicity_ok)?;
    Ok(out)
}

#[pymodule]
fn effint_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoly>()?;
    m.add_class::<PyVectorField>()?;
    m.add_function(wrap_pyfunction!(extactic, m)?)?;
    m.add_function(wrap_pyfunction!(detect_rational_first_integral, m)?)?;
    m.add_function(wrap_pyfunction!(search_invariant_curves, m)?)?;
    m.add_function(wrap_pyfunction!(assemble_first_integral, m)?)?;
    m.add_function(wrap_pyfunction!(assemble_integrating_factor, m)?)?;
    m.add_function(wrap_pyfunction!(degree_bound, m)?)?;
    m.add_function(wrap_pyfunction!(verify_speyer, m)?)?;
    m.add_function(wrap_pyfunction!(verify_speyer2, m)?)?;
    m.add_function(wrap_pyfunction!(min_sumset_index, m)?)?;
    m.add_function(wrap_pyfunction!(unit_decompositions, m)?)?;
    m.add_function(wrap_pyfunction!(cauchy_davenport_check, m)?)?;
    m.add_function(wrap_pyfunction!(k_min, m)?)?;
    m.add_function(wrap_pyfunction!(delta_k, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_k, m)?)?;
    m.add_function(wrap_pyfunction!(scan_triples, m)?)?;
    Ok(())
}
