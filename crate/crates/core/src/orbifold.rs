//! Pluricanonical degree arithmetic for fibered foliation models with
//! orbifold base data: sigma_k, delta_k, and k_min, the least twist k whose
//! rounded-down direct-image divisor acquires two independent sections.
//!
//! Fiber bookkeeping follows the standard five-class picture over the base
//! curve: transverse smooth fibers contribute nothing and are not stored;
//! type (b) carries an orbifold point of order o_j >= 2; type (c) an
//! invariant fiber of plain multiplicity; type (d) an invariant fiber of
//! multiplicity m_j; type (e) a half-point of order 2 together with
//! multiplicity l_j, entering the floors through the combined weight
//! (l_j + 1)/2.

use crate::poly::Rational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrbifoldError {
    #[error("operation requires genus {expected}, data has genus {got}")]
    GenusMismatch { expected: usize, got: usize },
    #[error("orbifold degree is not positive; the model is not of intermediate type")]
    NotBig,
    #[error("invalid orbifold data: {0}")]
    InvalidData(String),
}

/// Base-curve genus plus the fiber-type multisets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbifoldData {
    pub genus: usize,
    /// Orders o_j >= 2 of the type-(b) orbifold points.
    pub b_orders: Vec<u64>,
    /// Number of type-(c) fibers.
    pub c_count: usize,
    /// Multiplicities m_j >= 1 of the type-(d) fibers.
    pub d_mults: Vec<u64>,
    /// Multiplicities l_j >= 1 of the type-(e) fibers.
    pub e_mults: Vec<u64>,
}

impl OrbifoldData {
    pub fn new(
        genus: usize,
        b_orders: Vec<u64>,
        c_count: usize,
        d_mults: Vec<u64>,
        e_mults: Vec<u64>,
    ) -> Result<Self, OrbifoldError> {
        if let Some(&o) = b_orders.iter().find(|&&o| o < 2) {
            return Err(OrbifoldError::InvalidData(format!(
                "type-(b) order {o} < 2"
            )));
        }
        if let Some(&v) = d_mults.iter().chain(e_mults.iter()).find(|&&v| v < 1) {
            return Err(OrbifoldError::InvalidData(format!(
                "fiber multiplicity {v} < 1"
            )));
        }
        let mut b_orders = b_orders;
        let mut d_mults = d_mults;
        let mut e_mults = e_mults;
        b_orders.sort_unstable();
        d_mults.sort_unstable();
        e_mults.sort_unstable();
        Ok(OrbifoldData {
            genus,
            b_orders,
            c_count,
            d_mults,
            e_mults,
        })
    }

    pub fn triple(o1: u64, o2: u64, o3: u64) -> Self {
        OrbifoldData::new(0, vec![o1, o2, o3], 0, vec![], vec![]).unwrap()
    }

    /// Exact degree of the direct-image divisor:
    /// (2g - 2) + sum (o_j - 1)/o_j + #(c) + sum m_j + sum (l_j + 1)/2.
    pub fn orbifold_degree(&self) -> Rational {
        let mut acc = crate::poly::rat_int(2 * self.genus as i64 - 2);
        for &o in &self.b_orders {
            acc += crate::poly::rat(o as i64 - 1, o as i64);
        }
        acc += crate::poly::rat_int(self.c_count as i64);
        for &m in &self.d_mults {
            acc += crate::poly::rat_int(m as i64);
        }
        for &l in &self.e_mults {
            acc += crate::poly::rat(l as i64 + 1, 2);
        }
        acc
    }
}

/// sigma_k = sum_(c) k + sum_(d) k m_j + sum_(e) floor(k (l_j + 1) / 2).
pub fn sigma_k(data: &OrbifoldData, k: u64) -> i64 {
    assert!(k >= 1, "sigma_k needs k >= 1");
    let mut acc: i64 = data.c_count as i64 * k as i64;
    for &m in &data.d_mults {
        acc += (k * m) as i64;
    }
    for &l in &data.e_mults {
        acc += (k * (l + 1) / 2) as i64;
    }
    acc
}

/// delta_k = -2k + sum_(b) floor(k (o_j - 1) / o_j) + sigma_k, the degree
/// of the rounded-down k-th tensor power over a rational base.
pub fn delta_k(data: &OrbifoldData, k: u64) -> Result<i64, OrbifoldError> {
    if data.genus != 0 {
        return Err(OrbifoldError::GenusMismatch {
            expected: 0,
            got: data.genus,
        });
    }
    Ok(floor_degree(data, k))
}

/// Degree of the rounded-down k-th power for any genus:
/// (2g - 2)k + sum_(b) floor(k (o_j - 1)/o_j) + sigma_k.
pub fn floor_degree(data: &OrbifoldData, k: u64) -> i64 {
    let mut acc: i64 = (2 * data.genus as i64 - 2) * k as i64;
    for &o in &data.b_orders {
        acc += (k * (o - 1) / o) as i64;
    }
    acc + sigma_k(data, k)
}

/// Hyperbolicity of a purely (b)-type genus-0 orbifold:
/// -2 + sum (o_j - 1)/o_j > 0, compared exactly.
pub fn is_big(data: &OrbifoldData) -> Result<bool, OrbifoldError> {
    if data.genus != 0 {
        return Err(OrbifoldError::GenusMismatch {
            expected: 0,
            got: data.genus,
        });
    }
    if data.c_count != 0 || !data.d_mults.is_empty() || !data.e_mults.is_empty() {
        return Err(OrbifoldError::InvalidData(
            "hyperbolicity test applies to purely (b)-type data".into(),
        ));
    }
    Ok(data.orbifold_degree() > Rational::zero())
}

/// Which fibered model the data describes; recorded in reports and used to
/// pick the section-count criterion where the model dictates one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Riccati,
    Turbulent,
    IsotrivialHyperbolic,
    EllipticNonisotrivial,
}

impl Profile {
    pub fn as_str(self) -> &'static str {
        match self {
            Profile::Riccati => "riccati",
            Profile::Turbulent => "turbulent",
            Profile::IsotrivialHyperbolic => "isotrivial_hyperbolic",
            Profile::EllipticNonisotrivial => "elliptic_nonisotrivial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KminReport {
    pub k_min: u64,
    /// (k, degree of the rounded-down k-th power) for k = 1..=k_min.
    pub delta_trace: Vec<(u64, i64)>,
    pub profile: Profile,
}

const KMIN_HARD_CAP: u64 = 10_000;

/// Least k with two independent sections of the k-th power:
/// genus >= 2 succeeds at k = 1; genus 1 needs floor degree >= 2; genus 0
/// needs delta_k >= 1. Requires positive orbifold degree.
pub fn k_min(data: &OrbifoldData, profile: Profile) -> Result<KminReport, OrbifoldError> {
    if profile == Profile::EllipticNonisotrivial {
        // The moduli map already supplies two sections of the 12th power;
        // no orbifold data enters.
        return Ok(KminReport {
            k_min: 12,
            delta_trace: vec![],
            profile,
        });
    }
    if data.orbifold_degree() <= Rational::zero() {
        return Err(OrbifoldError::NotBig);
    }
    if data.genus >= 2 {
        return Ok(KminReport {
            k_min: 1,
            delta_trace: vec![(1, floor_degree(data, 1))],
            profile,
        });
    }
    let threshold: i64 = if data.genus == 0 { 1 } else { 2 };
    let mut trace = Vec::new();
    for k in 1..=KMIN_HARD_CAP {
        let v = floor_degree(data, k);
        trace.push((k, v));
        if v >= threshold {
            return Ok(KminReport {
                k_min: k,
                delta_trace: trace,
                profile,
            });
        }
    }
    unreachable!("positive orbifold degree forces the floor degree to grow")
}

/// Convenience for bare weight triples (genus 0, three (b)-fibers).
pub fn k_min_triple(o1: u64, o2: u64, o3: u64) -> u64 {
    k_min(&OrbifoldData::triple(o1, o2, o3), Profile::Riccati)
        .expect("hyperbolic triple")
        .k_min
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleConstraint {
    /// All hyperbolic triples o1 <= o2 <= o3 <= o_max.
    All,
    /// Additionally o3 = lcm(o1, o2), the shape forced on finite-monodromy
    /// transversely affine models.
    Lcm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleScan {
    pub constraint: TripleConstraint,
    pub o_max: u64,
    /// ((o1, o2, o3), k_min) in lexicographic triple order.
    pub table: Vec<((u64, u64, u64), u64)>,
    /// First maximizing entry.
    pub worst: ((u64, u64, u64), u64),
    /// Componentwise-larger weights never increase k_min, checked over the
    /// whole table (the scan itself never skips entries).
    pub monotonicity_ok: bool,
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exhaustively tabulate k_min on hyperbolic triples up to o_max. The
/// monotonicity of k_min in the weights is asserted as a cross-check only,
/// never used to skip an entry.
pub fn scan_triples(constraint: TripleConstraint, o_max: u64) -> TripleScan {
    assert!(o_max >= 7, "no hyperbolic triple below (2,3,7)");
    let mut table = Vec::new();
    for o1 in 2..=o_max {
        for o2 in o1..=o_max {
            for o3 in o2..=o_max {
                if constraint == TripleConstraint::Lcm && o3 != lcm(o1, o2) {
                    continue;
                }
                let data = OrbifoldData::triple(o1, o2, o3);
                if data.orbifold_degree() <= Rational::zero() {
                    continue;
                }
                let k = k_min(&data, Profile::Riccati).expect("big by filter").k_min;
                table.push(((o1, o2, o3), k));
            }
        }
    }
    let worst = table
        .iter()
        .cloned()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .expect("scan range contains hyperbolic triples");
    let mut monotonicity_ok = true;
    for (t1, k1) in &table {
        for (t2, k2) in &table {
            if t1.0 <= t2.0 && t1.1 <= t2.1 && t1.2 <= t2.2 && k2 > k1 {
                monotonicity_ok = false;
            }
        }
    }
    TripleScan {
        constraint,
        o_max,
        table,
        worst,
        monotonicity_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_on_the_extremal_triple() {
        let d = OrbifoldData::triple(2, 3, 7);
        assert_eq!(delta_k(&d, 42).unwrap(), 1);
        assert_eq!(delta_k(&d, 41).unwrap(), 0);
        let d = OrbifoldData::triple(4, 4, 4);
        assert_eq!(delta_k(&d, 4).unwrap(), 1);
    }

    #[test]
    fn kmin_table_values() {
        assert_eq!(k_min_triple(2, 3, 7), 42);
        assert_eq!(k_min_triple(3, 3, 4), 12);
        assert_eq!(k_min_triple(2, 4, 5), 20);
        assert_eq!(k_min_triple(2, 3, 8), 24);
        assert_eq!(k_min_triple(2, 5, 10), 8);
    }

    #[test]
    fn hyperbolicity() {
        assert!(is_big(&OrbifoldData::triple(2, 3, 7)).unwrap());
        assert!(!is_big(&OrbifoldData::triple(2, 3, 6)).unwrap());
        assert!(!is_big(&OrbifoldData::triple(2, 3, 5)).unwrap());
        assert!(matches!(
            is_big(&OrbifoldData::new(1, vec![2], 0, vec![], vec![]).unwrap()),
            Err(OrbifoldError::GenusMismatch { .. })
        ));
    }

    #[test]
    fn kmin_needs_positive_degree() {
        let flat = OrbifoldData::triple(2, 3, 6);
        assert_eq!(k_min(&flat, Profile::Riccati), Err(OrbifoldError::NotBig));
    }

    #[test]
    fn kmin_genus_cases() {
        // Genus two: sections of the first power already.
        let d = OrbifoldData::new(2, vec![], 0, vec![], vec![]).unwrap();
        assert_eq!(k_min(&d, Profile::Riccati).unwrap().k_min, 1);
        // Genus one with a single half-point: floor(k * 1/2) >= 2 at k = 4.
        let d = OrbifoldData::new(1, vec![2], 0, vec![], vec![]).unwrap();
        assert_eq!(k_min(&d, Profile::Riccati).unwrap().k_min, 4);
        // Genus one with a type-(c) fiber: k = 2.
        let d = OrbifoldData::new(1, vec![], 1, vec![], vec![]).unwrap();
        assert_eq!(k_min(&d, Profile::Riccati).unwrap().k_min, 2);
    }

    #[test]
    fn scan_all_12() {
        let scan = scan_triples(TripleConstraint::All, 12);
        assert_eq!(scan.worst, ((2, 3, 7), 42));
        assert!(scan.monotonicity_ok);
        for t in [(2, 3, 9), (2, 3, 10), (2, 3, 11)] {
            let k = scan.table.iter().find(|(tr, _)| *tr == t).unwrap().1;
            assert_eq!(k, 18);
        }
    }

    #[test]
    fn scan_lcm_12() {
        let scan = scan_triples(TripleConstraint::Lcm, 12);
        assert!(scan.worst.1 <= 8);
        assert_eq!(scan.worst, ((2, 5, 10), 8));
        for t in [(2, 6, 6), (2, 8, 8), (3, 4, 12), (3, 6, 6), (3, 9, 9)] {
            let k = scan.table.iter().find(|(tr, _)| *tr == t).unwrap().1;
            assert!(k <= 6, "triple {t:?} has k_min {k}");
        }
    }

    #[test]
    fn sigma_includes_all_fiber_classes() {
        let d = OrbifoldData::new(0, vec![2], 1, vec![3], vec![2]).unwrap();
        // sigma_4 = 4 + 4*3 + floor(4*3/2) = 22.
        assert_eq!(sigma_k(&d, 4), 22);
        assert_eq!(delta_k(&d, 4).unwrap(), -8 + 2 + 22);
    }

    #[test]
    fn elliptic_nonisotrivial_is_constant_twelve() {
        let d = OrbifoldData::new(0, vec![], 0, vec![], vec![]).unwrap();
        let rep = k_min(&d, Profile::EllipticNonisotrivial).unwrap();
        assert_eq!(rep.k_min, 12);
    }
}
