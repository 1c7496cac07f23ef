//! Exhaustive verification of the roots-of-unity sumset bounds, in additive
//! form on the unit group U(m) = (Z/mZ)*.
//!
//! Primitive m-th roots of unity are identified with U(m) through the
//! exponent; a product of roots becomes a sum of units, so the statement
//! "1 lies in the N-fold product of Phi" becomes "0 lies in the N-fold
//! sumset of Phi". Repetition inside the N-fold sumset is allowed
//! (multisets), matching how the bounds are actually used. Roots of unity
//! never materialize as complex numbers anywhere in this module.

use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycloError {
    #[error("no valid decomposition for m = {0} (elements are self-inverse)")]
    NoValidDecomposition(u64),
    #[error("lambda variant needs phi(m) >= 4, got phi({m}) = {phi}")]
    PhiTooSmall { m: u64, phi: usize },
    #[error("phi({m}) = {phi} exceeds the scan feasibility cap {cap}")]
    PhiCapExceeded { m: u64, phi: usize, cap: usize },
    #[error("sumset bound violated: worst N = {worst} > {bound} at m = {m}")]
    BoundViolated { m: u64, worst: u32, bound: u32 },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Scan feasibility cap: 2^(phi/2) decompositions stay desk-scale. The cap
/// admits every modulus up to 30 (phi(29) = 28).
pub const PHI_CAP: usize = 28;

pub fn euler_phi(m: u64) -> usize {
    (1..=m).filter(|&a| gcd(a, m) == 1).count()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Units of Z/mZ in ascending order.
pub fn units(m: u64) -> Vec<u64> {
    (1..m).filter(|&a| gcd(a, m) == 1).collect()
}

/// A set Phi with U(m) = Phi ⊔ (-Phi), optionally minus a distinguished
/// pair {lambda, -lambda}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitDecomposition {
    pub m: u64,
    /// Sorted, one representative per remaining negation pair.
    pub phi_set: Vec<u64>,
    pub lambda: Option<u64>,
}

impl UnitDecomposition {
    /// Re-check the defining disjoint union.
    pub fn is_valid(&self) -> bool {
        let mut covered: Vec<u64> = Vec::new();
        for &a in &self.phi_set {
            covered.push(a);
            covered.push(self.m - a);
        }
        if let Some(l) = self.lambda {
            if l == self.m - l {
                return false;
            }
            covered.push(l);
            covered.push(self.m - l);
        }
        covered.sort_unstable();
        let mut uniq = covered.clone();
        uniq.dedup();
        uniq.len() == covered.len() && uniq == units(self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Plain,
    Lambda,
}

/// Enumerate every decomposition, in a fixed deterministic order: one
/// choice per negation pair (binary counter over pairs sorted by smaller
/// member), with the lambda element, when present, sweeping all of U(m).
pub fn unit_decompositions(m: u64, variant: Variant) -> Result<Vec<UnitDecomposition>, CycloError> {
    if m < 3 {
        return Err(CycloError::NoValidDecomposition(m));
    }
    let us = units(m);
    let phi = us.len();
    if phi > PHI_CAP {
        return Err(CycloError::PhiCapExceeded {
            m,
            phi,
            cap: PHI_CAP,
        });
    }
    // For m >= 3 no unit is self-inverse under negation, so pairs are proper.
    let pairs: Vec<(u64, u64)> = us
        .iter()
        .copied()
        .filter(|&a| a < m - a)
        .map(|a| (a, m - a))
        .collect();
    match variant {
        Variant::Plain => {
            let t = pairs.len();
            let mut out = Vec::with_capacity(1 << t);
            for mask in 0u64..(1 << t) {
                let mut phi_set: Vec<u64> = pairs
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, b))| if mask >> i & 1 == 0 { a } else { b })
                    .collect();
                phi_set.sort_unstable();
                out.push(UnitDecomposition {
                    m,
                    phi_set,
                    lambda: None,
                });
            }
            Ok(out)
        }
        Variant::Lambda => {
            if phi < 4 {
                return Err(CycloError::PhiTooSmall { m, phi });
            }
            let mut out = Vec::new();
            for &lambda in &us {
                let rest: Vec<(u64, u64)> = pairs
                    .iter()
                    .copied()
                    .filter(|&(a, b)| a != lambda && b != lambda)
                    .collect();
                let t = rest.len();
                for mask in 0u64..(1 << t) {
                    let mut phi_set: Vec<u64> = rest
                        .iter()
                        .enumerate()
                        .map(|(i, &(a, b))| if mask >> i & 1 == 0 { a } else { b })
                        .collect();
                    phi_set.sort_unstable();
                    out.push(UnitDecomposition {
                        m,
                        phi_set,
                        lambda: Some(lambda),
                    });
                }
            }
            Ok(out)
        }
    }
}

/// Bitset over Z/mZ.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ModSet {
    m: u64,
    words: Vec<u64>,
}

impl ModSet {
    fn empty(m: u64) -> Self {
        ModSet {
            m,
            words: vec![0; (m as usize).div_ceil(64)],
        }
    }

    fn from_elems(m: u64, elems: &[u64]) -> Self {
        let mut s = ModSet::empty(m);
        for &e in elems {
            s.insert(e % m);
        }
        s
    }

    fn insert(&mut self, e: u64) {
        self.words[(e / 64) as usize] |= 1 << (e % 64);
    }

    fn contains(&self, e: u64) -> bool {
        self.words[(e / 64) as usize] >> (e % 64) & 1 == 1
    }

    fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.m).filter(move |&e| self.contains(e))
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Sumset self + {shifts} mod m.
    fn add_elems(&self, shifts: &[u64]) -> ModSet {
        let mut out = ModSet::empty(self.m);
        for e in self.iter() {
            for &s in shifts {
                out.insert((e + s) % self.m);
            }
        }
        out
    }
}

/// Smallest N >= 1 with 0 in the N-fold sumset of a nonempty Phi
/// (repetition allowed). Always at most m, since m copies of any unit
/// already sum to 0.
pub fn min_sumset_index(phi: &[u64], m: u64) -> u32 {
    assert!(!phi.is_empty(), "min_sumset_index needs a nonempty set");
    let layers = sumset_layers(phi, m);
    layers.len() as u32
}

/// Layers S_1 = Phi, S_{k+1} = S_k + Phi, up to and including the first
/// layer containing 0.
fn sumset_layers(phi: &[u64], m: u64) -> Vec<ModSet> {
    let base: Vec<u64> = phi.iter().map(|&e| e % m).collect();
    let mut layers = vec![ModSet::from_elems(m, &base)];
    while !layers.last().unwrap().contains(0) {
        assert!(
            layers.len() <= m as usize,
            "sumset iteration must reach 0 within m steps"
        );
        layers.push(layers.last().unwrap().add_elems(&base));
    }
    layers
}

/// Lexicographically least nondecreasing witness multiset of the minimal
/// length: elements of Phi summing to 0 mod m.
pub fn minimal_witness(phi: &[u64], m: u64) -> Vec<u64> {
    let layers = sumset_layers(phi, m);
    let n = layers.len();
    let mut sorted: Vec<u64> = phi.iter().map(|&e| e % m).collect();
    sorted.sort_unstable();
    sorted.dedup();
    // reach[j][i] = sums of j elements drawn from sorted[i..].
    let idx = sorted.len();
    let mut zero_layer = ModSet::empty(m);
    zero_layer.insert(0);
    let mut reach: Vec<Vec<ModSet>> = vec![vec![zero_layer; idx]];
    for j in 1..=n {
        let row: Vec<ModSet> = (0..idx)
            .map(|i| reach[j - 1][i].add_elems(&sorted[i..]))
            .collect();
        reach.push(row);
    }

    let mut witness = Vec::with_capacity(n);
    let mut need: u64 = 0; // target sum (mod m) of the remaining elements
    let mut min_idx = 0usize;
    for remaining in (1..=n).rev() {
        // Choose the smallest admissible element.
        let mut chosen = None;
        for (i, &a) in sorted.iter().enumerate().skip(min_idx) {
            let rest = (need + m - a % m) % m;
            let ok = if remaining == 1 {
                rest == 0
            } else {
                reach[remaining - 1][i].contains(rest)
            };
            if ok {
                chosen = Some((i, a));
                break;
            }
        }
        let (i, a) = chosen.expect("witness reconstruction follows the layer structure");
        witness.push(a);
        need = (need + m - a % m) % m;
        min_idx = i;
    }
    witness
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeyerReport {
    pub m: u64,
    pub variant: Variant,
    /// Maximum over all scanned decompositions of the minimal sumset index.
    pub worst_n: u32,
    /// A decomposition attaining the worst index, with a zero-sum witness
    /// multiset of exactly that length.
    pub witness: (UnitDecomposition, Vec<u64>),
    pub cases_scanned: usize,
}

fn scan(m: u64, variant: Variant, bound: u32) -> Result<SpeyerReport, CycloError> {
    let decomps = unit_decompositions(m, variant)?;
    let cases_scanned = decomps.len();
    let worst = decomps
        .into_par_iter()
        .map(|dec| {
            let n = min_sumset_index(&dec.phi_set, m);
            (n, dec)
        })
        .reduce_with(|a, b| {
            // Max by N, ties to the lexicographically least Phi: output is
            // independent of the parallel schedule.
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Greater => a,
                std::cmp::Ordering::Less => b,
                std::cmp::Ordering::Equal => {
                    if (&a.1.phi_set, a.1.lambda) <= (&b.1.phi_set, b.1.lambda) {
                        a
                    } else {
                        b
                    }
                }
            }
        })
        .expect("at least one decomposition");
    let (worst_n, dec) = worst;
    let witness_elems = minimal_witness(&dec.phi_set, m);
    debug_assert_eq!(witness_elems.len() as u32, worst_n);
    debug_assert_eq!(witness_elems.iter().sum::<u64>() % m, 0);
    let report = SpeyerReport {
        m,
        variant,
        worst_n,
        witness: (dec, witness_elems),
        cases_scanned,
    };
    if worst_n > bound {
        return Err(CycloError::BoundViolated {
            m,
            worst: worst_n,
            bound,
        });
    }
    Ok(report)
}

/// Scan all plain decompositions of U(m) and check that the worst minimal
/// sumset index stays at most 6. A violation would falsify the underlying
/// theorem and is reported as a loud error, never a report.
pub fn verify_speyer(m: u64) -> Result<SpeyerReport, CycloError> {
    scan(m, Variant::Plain, 6)
}

/// Same scan over the lambda-variant decompositions (one negation pair set
/// aside), against the bound 12. Requires phi(m) >= 4.
pub fn verify_speyer2(m: u64) -> Result<SpeyerReport, CycloError> {
    scan(m, Variant::Lambda, 12)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Check |X_1 + ... + X_N| >= min(p, sum |X_i| - (N - 1)) by computing the
/// exact sumset in Z/pZ.
pub fn cauchy_davenport_check(sets: &[Vec<u64>], p: u64) -> Result<bool, CycloError> {
    if !is_prime(p) {
        return Err(CycloError::NotPrime(p));
    }
    assert!(!sets.is_empty() && sets.iter().all(|s| !s.is_empty()));
    let mut acc = ModSet::from_elems(p, &sets[0]);
    let mut size_sum = acc.len();
    for s in &sets[1..] {
        let reduced: Vec<u64> = {
            let mut v: Vec<u64> = s.iter().map(|&e| e % p).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        size_sum += reduced.len();
        acc = acc.add_elems(&reduced);
    }
    let n = sets.len();
    let bound = (p as usize).min(size_sum.saturating_sub(n - 1));
    Ok(acc.len() >= bound)
}
