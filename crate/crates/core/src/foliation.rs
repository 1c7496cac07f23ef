//! Plane polynomial vector fields and the exact invariance calculus.
//!
//! A foliation of the projective plane is presented in the affine chart by
//! X = P dx + Q dy with gcd(P, Q) = 1. The module computes the foliation
//! degree (radial-top-part rule), Lie derivatives, cofactors of invariant
//! curves, and the extactic determinants used both as a search pre-filter
//! and as the rational-first-integral detector.

use crate::poly::{Degree, Monomial, Poly, PolyError, Rational, TermOrder};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FoliationError {
    #[error("vector field components must have arity 2")]
    BadArity,
    #[error("zero vector field")]
    ZeroVectorField,
    #[error("constant polynomial cannot define an invariant curve")]
    ConstantInput,
    #[error("extactic basis size {size} exceeds cap {cap} (degree {n})")]
    BasisTooLarge { n: usize, size: usize, cap: usize },
}

/// Affine vector field X = P dx + Q dy, saturated so that gcd(P, Q) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    p: Poly,
    q: Poly,
    /// Common factor divided out at construction, if any.
    removed_factor: Option<Poly>,
}

impl VectorField {
    /// Build a vector field, dividing out any common polynomial factor of
    /// the components. The removed factor is recorded, never silent.
    pub fn new(p: Poly, q: Poly) -> Result<Self, FoliationError> {
        if p.arity() != 2 || q.arity() != 2 {
            return Err(FoliationError::BadArity);
        }
        if p.is_zero() && q.is_zero() {
            return Err(FoliationError::ZeroVectorField);
        }
        let g = crate::poly::gcd_poly(&p, &q);
        if g.is_constant() {
            Ok(VectorField {
                p,
                q,
                removed_factor: None,
            })
        } else {
            let p = p.exact_div(&g).expect("gcd divides");
            let q = q.exact_div(&g).expect("gcd divides");
            Ok(VectorField {
                p,
                q,
                removed_factor: Some(g),
            })
        }
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    pub fn q(&self) -> &Poly {
        &self.q
    }

    pub fn removed_factor(&self) -> Option<&Poly> {
        self.removed_factor.as_ref()
    }

    /// max(deg P, deg Q): the affine coefficient degree bound D.
    pub fn max_coeff_degree(&self) -> usize {
        let dp = self.p.degree();
        let dq = self.q.degree();
        match dp.max(dq) {
            Degree::Finite(d) => d,
            Degree::MinusInfinity => unreachable!("vector field is nonzero"),
        }
    }

    /// Lie derivative X(f) = P df/dx + Q df/dy.
    pub fn lie_derivative(&self, f: &Poly) -> Poly {
        assert_eq!(f.arity(), 2, "lie derivative needs an affine polynomial");
        &(&self.p * &f.diff(0)) + &(&self.q * &f.diff(1))
    }

    /// div X = dP/dx + dQ/dy.
    pub fn divergence(&self) -> Poly {
        &self.p.diff(0) + &self.q.diff(1)
    }

    /// Scale both components by a nonzero rational. Foliation data is
    /// invariant under this.
    pub fn scale(&self, c: &Rational) -> VectorField {
        assert!(!c.is_zero());
        VectorField {
            p: self.p.scale(c),
            q: self.q.scale(c),
            removed_factor: self.removed_factor.clone(),
        }
    }
}

/// Degree bookkeeping for the projective foliation defined by an affine
/// vector field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FoliationInfo {
    /// Foliation degree d on the projective plane.
    pub degree: usize,
    /// D = max(deg P, deg Q).
    pub max_coeff_degree: usize,
    /// Whether the line at infinity is invariant (equivalent to d = D).
    pub infinity_invariant: bool,
}

/// Foliation degree by the radial-top-part rule: with D = max(deg P, deg Q)
/// and (P_D, Q_D) the degree-D homogeneous parts, d = D unless
/// x*Q_D - y*P_D vanishes identically (radial top part), in which case
/// d = D - 1 and the line at infinity is not invariant.
pub fn foliation_degree(x: &VectorField) -> FoliationInfo {
    let cap_d = x.max_coeff_degree();
    let p_top = x.p().homogeneous_part(cap_d);
    let q_top = x.q().homogeneous_part(cap_d);
    let xv = Poly::var(0, 2);
    let yv = Poly::var(1, 2);
    let radial_test = &(&xv * &q_top) - &(&yv * &p_top);
    if radial_test.is_zero() {
        FoliationInfo {
            degree: cap_d - 1,
            max_coeff_degree: cap_d,
            infinity_invariant: false,
        }
    } else {
        FoliationInfo {
            degree: cap_d,
            max_coeff_degree: cap_d,
            infinity_invariant: true,
        }
    }
}

/// An invariant algebraic curve f with its exact cofactor k: X(f) = k*f.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DarbouxCandidate {
    /// Canonical-normalized, non-constant.
    pub f: Poly,
    /// deg k <= D - 1.
    pub cofactor: Poly,
}

impl DarbouxCandidate {
    /// Repeated-factor test: f is square-free exactly when
    /// gcd(f, df/dx, df/dy) is constant. Candidates need not be square-free;
    /// reports record this.
    pub fn is_square_free(&self) -> bool {
        let g = crate::poly::gcd_poly(&self.f, &self.f.diff(0));
        crate::poly::gcd_poly(&g, &self.f.diff(1)).is_constant()
    }
}

/// Invariance test: returns the candidate with its cofactor when X(f) is an
/// exact polynomial multiple of f, `Ok(None)` otherwise.
pub fn cofactor(x: &VectorField, f: &Poly) -> Result<Option<DarbouxCandidate>, FoliationError> {
    if f.is_constant() {
        return Err(FoliationError::ConstantInput);
    }
    let canonical = f.canonical();
    let lie = x.lie_derivative(&canonical);
    match lie.exact_div(&canonical) {
        Ok(k) => {
            if let Degree::Finite(dk) = k.degree() {
                assert!(
                    dk < x.max_coeff_degree(),
                    "cofactor degree exceeds D - 1"
                );
            }
            Ok(Some(DarbouxCandidate {
                f: canonical,
                cofactor: k,
            }))
        }
        Err(PolyError::NotDivisible) => Ok(None),
        Err(e) => unreachable!("exact_div on nonzero divisor: {e}"),
    }
}

/// Default cap on the extactic basis size: 21 monomials, i.e. n <= 5.
pub const EXTACTIC_BASIS_CAP: usize = 21;

/// Monomial basis used by the extactic determinant: all monomials of total
/// degree <= n, enumerated by ascending degree and descending degrevlex
/// within a degree (1, x, y, x^2, x*y, y^2, ...). The fixed enumeration
/// makes the determinant reproducible bit for bit, sign included.
pub fn extactic_basis(n: usize) -> Vec<Monomial> {
    let order = TermOrder::degrevlex(2);
    let mut basis = Vec::new();
    for d in 0..=n as u32 {
        let mut level: Vec<Monomial> = (0..=d).map(|i| Monomial(vec![d - i, i])).collect();
        level.sort_by(|a, b| order.cmp_monomials(b, a));
        basis.extend(level);
    }
    basis
}

/// Extactic determinant E_n: rows are the basis monomials and their
/// iterated Lie derivatives X^i(v_j), i = 0 .. basis_size - 1.
pub fn extactic(x: &VectorField, n: usize) -> Result<Poly, FoliationError> {
    extactic_with_cap(x, n, EXTACTIC_BASIS_CAP)
}

pub fn extactic_with_cap(x: &VectorField, n: usize, cap: usize) -> Result<Poly, FoliationError> {
    assert!(n >= 1, "extactic needs n >= 1");
    let size = (n + 1) * (n + 2) / 2;
    if size > cap {
        return Err(FoliationError::BasisTooLarge { n, size, cap });
    }
    let basis = extactic_basis(n);
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(size);
    let first: Vec<Poly> = basis
        .iter()
        .map(|m| Poly::from_terms(2, [(m.clone(), crate::poly::rat_int(1))]))
        .collect();
    rows.push(first);
    for i in 1..size {
        let prev = &rows[i - 1];
        rows.push(prev.iter().map(|p| x.lie_derivative(p)).collect());
    }
    Ok(determinant(rows))
}

/// Fraction-free Bareiss determinant of a polynomial matrix, with column
/// pivoting (every division is exact in the polynomial ring).
fn determinant(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(2);
    }
    let arity = m[0][0].arity();
    let mut sign_negative = false;
    let mut prev = Poly::one(arity);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero(arity);
            };
            m.swap(k, r);
            sign_negative = !sign_negative;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero(arity);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_negative {
        -&det
    } else {
        det
    }
}

/// True exactly when E_n vanishes identically: infinitely many invariant
/// curves of degree <= n, flagging the rational-first-integral regime.
/// (The classical converse is not asserted here; this flags, it does not
/// prove.)
pub fn detect_rational_first_integral(x: &VectorField, n: usize) -> Result<bool, FoliationError> {
    Ok(extactic(x, n)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat_int};

    fn p2(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    fn vf(p: &str, q: &str) -> VectorField {
        VectorField::new(p2(p), p2(q)).unwrap()
    }

    #[test]
    fn degree_examples() {
        let info = foliation_degree(&vf("x", "2*y"));
        assert_eq!(
            info,
            FoliationInfo {
                degree: 1,
                max_coeff_degree: 1,
                infinity_invariant: true
            }
        );
        let info = foliation_degree(&vf("x", "y"));
        assert_eq!(
            info,
            FoliationInfo {
                degree: 0,
                max_coeff_degree: 1,
                infinity_invariant: false
            }
        );
        let info = foliation_degree(&vf("y", "-1*x"));
        assert_eq!(
            info,
            FoliationInfo {
                degree: 1,
                max_coeff_degree: 1,
                infinity_invariant: true
            }
        );
    }

    #[test]
    fn lie_derivative_and_divergence() {
        let x = vf("x", "2*y");
        assert_eq!(x.lie_derivative(&p2("x")), p2("x"));
        assert_eq!(x.divergence(), p2("3"));
        let rot = vf("y", "-1*x");
        assert_eq!(rot.lie_derivative(&p2("x^2 + y^2")), Poly::zero(2));
    }

    #[test]
    fn cofactor_examples() {
        let x = vf("x", "2*y");
        let c = cofactor(&x, &p2("y")).unwrap().unwrap();
        assert_eq!(c.cofactor, p2("2"));
        assert!(cofactor(&x, &p2("x + y")).unwrap().is_none());
        let rot = vf("y", "-1*x");
        let c = cofactor(&rot, &p2("x^2 + y^2")).unwrap().unwrap();
        assert!(c.cofactor.is_zero());
        assert_eq!(cofactor(&x, &p2("5")), Err(FoliationError::ConstantInput));
    }

    #[test]
    fn extactic_linear_examples() {
        // Basis (1, x, y); the fixed enumeration pins the sign.
        let e1 = extactic(&vf("x", "2*y"), 1).unwrap();
        assert_eq!(e1, p2("2*x*y"));
        let e1 = extactic(&vf("y", "-1*x"), 1).unwrap();
        assert_eq!(e1, p2("-1*x^2 - y^2"));
        // Both axes divide the diagonal example.
        let e1 = extactic(&vf("x", "2*y"), 1).unwrap();
        assert!(p2("x").divides(&e1));
        assert!(p2("y").divides(&e1));
    }

    #[test]
    fn first_integral_detection() {
        assert!(!detect_rational_first_integral(&vf("y", "-1*x"), 1).unwrap());
        assert!(detect_rational_first_integral(&vf("y", "-1*x"), 2).unwrap());
        assert!(detect_rational_first_integral(&vf("x", "2*y"), 2).unwrap());
    }

    #[test]
    fn extactic_cap() {
        let err = extactic(&vf("x", "2*y"), 6).unwrap_err();
        assert_eq!(
            err,
            FoliationError::BasisTooLarge {
                n: 6,
                size: 28,
                cap: EXTACTIC_BASIS_CAP
            }
        );
    }

    #[test]
    fn construction_normalizes_common_factor() {
        let a = VectorField::new(p2("x^2"), p2("2*x*y")).unwrap();
        assert_eq!(a.p(), &p2("x"));
        assert_eq!(a.q(), &p2("2*y"));
        assert_eq!(a.removed_factor(), Some(&p2("x")));
        assert!(VectorField::new(Poly::zero(2), Poly::zero(2)).is_err());
    }

    #[test]
    fn scaling_leaves_foliation_data_alone() {
        let x = vf("x", "2*y");
        let y = x.scale(&crate::poly::rat(-7, 3));
        assert_eq!(foliation_degree(&x), foliation_degree(&y));
        let c = cofactor(&y, &p2("y")).unwrap().unwrap();
        // Cofactors scale with the field.
        assert_eq!(c.cofactor, p2("2").scale(&crate::poly::rat(-7, 3)));
        let _ = rat_int(0);
    }
}
