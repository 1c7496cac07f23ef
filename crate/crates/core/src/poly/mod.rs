//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! `Poly` is the carrier for every symbolic computation in this crate:
//! vector-field components, invariant-curve candidates, cofactors, ansatz
//! systems in the unknown coefficients, and chart pullbacks. Coefficients
//! are always exact rationals; there is no floating point anywhere in the
//! symbolic pipeline.
//!
//! Terms are stored in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is
//! graded reverse lexicographic with the natural variable priority
//! x > y > z. Iteration is therefore degrevlex-ascending and the leading
//! term is the last entry.

mod parser;

pub use parser::{parse_poly, ParseError};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Arbitrary-precision rational scalar. Always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics on d = 0.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Total degree of a polynomial, with a distinguished value for the zero
/// polynomial so that no arithmetic is ever done on a sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    /// The finite value, or `None` for the zero polynomial.
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// The finite value; panics on the zero polynomial.
    pub fn expect_finite(self) -> usize {
        self.finite().expect("degree of the zero polynomial")
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::MinusInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("not divisible")]
    NotDivisible,
    #[error("homogenization target degree {target} below polynomial degree {degree}")]
    TargetTooSmall { target: usize, degree: usize },
}

/// Exponent vector of a power product. Fixed arity per polynomial.
///
/// `Ord` is degrevlex: compare total degree first, ties broken by the last
/// differing exponent, smaller exponent winning. This makes x > y > z.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(index: usize, arity: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, or `None` when some exponent would go negative.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Reverse lexicographic tie-break: last differing exponent, smaller wins.
        for i in (0..self.0.len()).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariants: no zero coefficient is ever stored, all keys share the
/// polynomial's arity, and equality is exact term-by-term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(arity: usize) -> Self {
        Poly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Poly::constant(Rational::one(), arity)
    }

    pub fn constant(c: Rational, arity: usize) -> Self {
        let mut p = Poly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(arity), c);
        }
        p
    }

    pub fn var(index: usize, arity: usize) -> Self {
        assert!(index < arity, "variable index out of range");
        let mut p = Poly::zero(arity);
        p.terms.insert(Monomial::var(index, arity), Rational::one());
        p
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(arity);
        for (m, c) in terms {
            assert_eq!(m.arity(), arity, "term arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in degrevlex-ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.arity))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            None => Degree::MinusInfinity,
            Some(m) => Degree::Finite(m.total_degree()),
        }
    }

    /// Leading term in the intrinsic degrevlex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> Degree {
        match self.terms.keys().map(|m| m.0[var]).max() {
            None => Degree::MinusInfinity,
            Some(d) => Degree::Finite(d as usize),
        }
    }

    /// The homogeneous part of the given total degree.
    pub fn homogeneous_part(&self, degree: usize) -> Poly {
        Poly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(self.arity);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn diff(&self, var: usize) -> Poly {
        assert!(var < self.arity, "variable index out of range");
        let mut out = Poly::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::ArityMismatch(point.len(), self.arity));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitute a rational constant for one variable; the arity is kept.
    pub fn substitute(&self, var: usize, value: &Rational) -> Poly {
        assert!(var < self.arity, "variable index out of range");
        let mut out = Poly::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff *= value;
            }
            let mut exps = m.0.clone();
            exps[var] = 0;
            out.add_term(Monomial(exps), coeff);
        }
        out
    }

    /// Substitute a polynomial for each variable. All `args` must share an
    /// arity, which becomes the arity of the result.
    pub fn compose(&self, args: &[Poly]) -> Poly {
        assert_eq!(args.len(), self.arity, "compose needs one argument per variable");
        let out_arity = args.first().map(|p| p.arity).unwrap_or(0);
        let mut acc = Poly::zero(out_arity);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone(), out_arity);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &args[i].pow(e as usize);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Exact polynomial quotient. `Err(NotDivisible)` when the division
    /// leaves a remainder, `Err(DivisionByZeroPoly)` when `divisor` is zero.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZeroPoly);
        }
        if self.is_zero() {
            return Ok(Poly::zero(self.arity));
        }
        let (dm, dc) = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.arity);
        while let Some((rm, rc)) = rem.leading() {
            // Once the leading monomial stops being divisible the remainder
            // can never be cancelled, so the division is not exact.
            let q = match rm.checked_div(dm) {
                Some(q) => q,
                None => return Err(PolyError::NotDivisible),
            };
            let qc = rc / dc;
            quot.add_term(q.clone(), qc.clone());
            rem = &rem - &divisor.mul_monomial(&q, &qc);
            if rem.is_zero() {
                break;
            }
        }
        Ok(quot)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.exact_div(self).is_ok()
    }

    /// Introduce a final homogenizing variable so that every term reaches
    /// `target_degree`. Arity grows by one.
    pub fn homogenize(&self, target_degree: usize) -> Result<Poly, PolyError> {
        if let Degree::Finite(d) = self.degree() {
            if target_degree < d {
                return Err(PolyError::TargetTooSmall {
                    target: target_degree,
                    degree: d,
                });
            }
        }
        let mut out = Poly::zero(self.arity + 1);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps.push((target_degree - m.total_degree()) as u32);
            out.add_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }

    /// Set the final variable to 1, dropping it. Arity shrinks by one.
    pub fn dehomogenize(&self) -> Poly {
        assert!(self.arity >= 1, "dehomogenize needs at least one variable");
        let mut out = Poly::zero(self.arity - 1);
        for (m, c) in &self.terms {
            let exps = m.0[..self.arity - 1].to_vec();
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Largest power of `var` dividing the polynomial. Zero polynomial gives `None`.
    pub fn order_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).min()
    }

    /// GCD of coefficient numerators over LCM of denominators, as a positive rational.
    /// Multiplying by its inverse makes the coefficient vector primitive integers.
    fn content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            Rational::one()
        } else {
            Rational::new(num_gcd, den_lcm)
        }
    }

    /// Canonical representative of the scalar class of this polynomial:
    /// primitive integer coefficients with positive leading (degrevlex-first)
    /// coefficient. Invariant curves are only defined up to scalar, so this
    /// is the form used for display, deduplication and reporting.
    pub fn canonical(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Primitive integer form without the sign normalization, paired with
    /// the removed content (so `self = content * primitive`).
    pub fn primitive_part(&self) -> (Poly, Rational) {
        if self.is_zero() {
            return (self.clone(), Rational::one());
        }
        let c = self.content();
        (self.scale(&c.recip()), c)
    }

    /// Leading term with respect to an arbitrary term order.
    pub fn leading_by(&self, order: &TermOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp_monomials(a.0, b.0))
    }

    /// The variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.arity];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        (0..self.arity).filter(|&i| used[i]).collect()
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = Poly::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// Monomial comparison strategies for the Gröbner engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    DegRevLex,
    Lex,
}

/// A total order on monomials compatible with multiplication.
///
/// `priority[0]` is the most significant variable. For degrevlex the
/// priority permutes the exponents before the graded reverse-lex compare;
/// for lex the permuted exponents are compared left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    pub kind: OrderKind,
    pub priority: Vec<usize>,
}

impl TermOrder {
    pub fn degrevlex(arity: usize) -> Self {
        TermOrder {
            kind: OrderKind::DegRevLex,
            priority: (0..arity).collect(),
        }
    }

    pub fn lex(arity: usize) -> Self {
        TermOrder {
            kind: OrderKind::Lex,
            priority: (0..arity).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.priority.len()
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.priority {
                    match a.0[v].cmp(&b.0[v]) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                for &v in self.priority.iter().rev() {
                    match a.0[v].cmp(&b.0[v]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Sort key embedding the order into `Vec<i64>` lexicographic order,
    /// used to keep pair queues sorted without re-deriving comparisons.
    pub fn sort_key(&self, m: &Monomial) -> Vec<i64> {
        match self.kind {
            OrderKind::Lex => self.priority.iter().map(|&v| m.0[v] as i64).collect(),
            OrderKind::DegRevLex => {
                let mut key = Vec::with_capacity(m.arity() + 1);
                key.push(m.total_degree() as i64);
                for &v in self.priority.iter().rev() {
                    key.push(-(m.0[v] as i64));
                }
                key
            }
        }
    }
}

/// Variable names used for display and parsing: x, y, z for arity <= 3,
/// generic names beyond (internal ansatz polynomials only).
pub fn var_name(index: usize, arity: usize) -> String {
    if arity <= 3 {
        ["x", "y", "z"][index].to_string()
    } else {
        format!("c{index}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                first = false;
                if m.is_one() {
                    write!(f, "{c}")?;
                } else if abs.is_one() {
                    if neg {
                        write!(f, "-1*")?;
                    }
                    write!(f, "{}", format_monomial(m))?;
                } else {
                    write!(f, "{c}*{}", format_monomial(m))?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
                if m.is_one() {
                    write!(f, "{abs}")?;
                } else if abs.is_one() {
                    write!(f, "{}", format_monomial(m))?;
                } else {
                    write!(f, "{abs}*{}", format_monomial(m))?;
                }
            }
        }
        Ok(())
    }
}

fn format_monomial(m: &Monomial) -> String {
    let arity = m.arity();
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(var_name(i, arity)),
            _ => parts.push(format!("{}^{}", var_name(i, arity), e)),
        }
    }
    parts.join("*")
}

/// GCD of two univariate polynomials over the rationals (same variable),
/// returned in canonical primitive-integer form.
fn gcd_univariate(a: &Poly, b: &Poly, var: usize) -> Poly {
    let mut r0 = a.canonical();
    let mut r1 = b.canonical();
    while !r1.is_zero() {
        let r = pseudo_rem(&r0, &r1, var).canonical();
        r0 = r1;
        r1 = r;
    }
    r0.canonical()
}

/// Pseudo-remainder of `a` by `b` with respect to `var`: repeatedly scale
/// and subtract until deg_var drops below deg_var(b). Result differs from
/// the true remainder by a nonzero scalar-in-the-other-variables factor.
fn pseudo_rem(a: &Poly, b: &Poly, var: usize) -> Poly {
    let db = match b.degree_in(var) {
        Degree::Finite(d) => d,
        Degree::MinusInfinity => panic!("pseudo_rem by zero"),
    };
    let lead_b = coeff_of_power(b, var, db);
    let mut r = a.clone();
    loop {
        let dr = match r.degree_in(var) {
            Degree::Finite(d) => d,
            Degree::MinusInfinity => return r,
        };
        if dr < db {
            return r;
        }
        let lead_r = coeff_of_power(&r, var, dr);
        // r := lead_b * r - lead_r * x^(dr-db) * b
        let shift = Monomial::var(var, r.arity());
        let mut shifted = b.clone();
        for _ in 0..(dr - db) {
            shifted = shifted.mul_monomial(&shift, &Rational::one());
        }
        r = &(&r * &lead_b) - &(&shifted * &lead_r);
    }
}

/// Coefficient of `var^power` as a polynomial in the remaining variables
/// (with the same arity, exponent of `var` zeroed).
fn coeff_of_power(p: &Poly, var: usize, power: usize) -> Poly {
    let mut out = Poly::zero(p.arity());
    for (m, c) in p.terms() {
        if m.0[var] as usize == power {
            let mut exps = m.0.clone();
            exps[var] = 0;
            out.add_term(Monomial(exps), c.clone());
        }
    }
    out
}

/// GCD of two polynomials in at most two effective variables, canonical form.
/// Used to saturate vector fields; arbitrary-arity inputs are accepted as
/// long as at most two variables actually occur.
pub fn gcd_poly(a: &Poly, b: &Poly) -> Poly {
    assert_eq!(a.arity(), b.arity(), "arity mismatch");
    if a.is_zero() {
        return b.canonical();
    }
    if b.is_zero() {
        return a.canonical();
    }
    let mut used = a.used_vars();
    for v in b.used_vars() {
        if !used.contains(&v) {
            used.push(v);
        }
    }
    used.sort_unstable();
    match used.len() {
        0 => Poly::one(a.arity()),
        1 => gcd_univariate(a, b, used[0]),
        2 => gcd_bivariate(a, b, used[0], used[1]),
        n => panic!("gcd_poly supports at most two effective variables, got {n}"),
    }
}

/// Content of `p` seen as a polynomial in `main` with coefficients
/// univariate in `other`.
fn content_wrt(p: &Poly, main: usize, other: usize) -> Poly {
    let dm = p.degree_in(main).expect_finite();
    let mut cont = Poly::zero(p.arity());
    for k in 0..=dm {
        let c = coeff_of_power(p, main, k);
        if !c.is_zero() {
            cont = gcd_univariate(&cont, &c, other);
        }
    }
    cont
}

fn gcd_bivariate(a: &Poly, b: &Poly, v0: usize, v1: usize) -> Poly {
    // Primitive PRS with main variable v1 and coefficient variable v0.
    let cont_a = content_wrt(a, v1, v0);
    let cont_b = content_wrt(b, v1, v0);
    let cont_gcd = gcd_univariate(&cont_a, &cont_b, v0);
    let mut r0 = a.exact_div(&cont_a).expect("content divides").canonical();
    let mut r1 = b.exact_div(&cont_b).expect("content divides").canonical();
    if r0.degree_in(v1) < r1.degree_in(v1) {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_zero() {
        if matches!(r1.degree_in(v1), Degree::Finite(0)) {
            // A nonzero remainder free of the main variable: the primitive
            // parts are coprime.
            r0 = Poly::one(a.arity());
            break;
        }
        let mut r = pseudo_rem(&r0, &r1, v1);
        if !r.is_zero() {
            let c = content_wrt(&r, v1, v0);
            r = r.exact_div(&c).expect("content divides");
        }
        r0 = r1;
        r1 = r.canonical();
    }
    (&cont_gcd * &r0).canonical()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    fn p3(s: &str) -> Poly {
        parse_poly(s, 3).unwrap()
    }

    #[test]
    fn degrevlex_order_on_small_monomials() {
        // x > y and x^2 > x*y > y^2 > x (degree dominates).
        let x = Monomial(vec![1, 0]);
        let y = Monomial(vec![0, 1]);
        let x2 = Monomial(vec![2, 0]);
        let xy = Monomial(vec![1, 1]);
        let y2 = Monomial(vec![0, 2]);
        assert!(x > y);
        assert!(x2 > xy && xy > y2 && y2 > x);
    }

    #[test]
    fn exact_div_examples() {
        assert_eq!(p2("x^2*y + x*y^2").exact_div(&p2("x*y")).unwrap(), p2("x + y"));
        assert_eq!(
            p2("x^2 + 1").exact_div(&p2("x + 1")),
            Err(PolyError::NotDivisible)
        );
        let cube = p2("(x+y)^3");
        let sq = p2("(x+y)^2");
        assert_eq!(cube.exact_div(&p2("x+y")).unwrap(), sq);
        assert_eq!(
            p2("x").exact_div(&Poly::zero(2)),
            Err(PolyError::DivisionByZeroPoly)
        );
    }

    #[test]
    fn diff_degree_eval() {
        assert_eq!(p2("x^2*y").diff(0), p2("2*x*y"));
        assert_eq!(p2("x^2*y - y").degree(), Degree::Finite(3));
        assert_eq!(Poly::zero(2).degree(), Degree::MinusInfinity);
        let v = p2("x^2 + y").eval(&[rat(1, 2), rat(1, 4)]).unwrap();
        assert_eq!(v, rat(1, 2));
    }

    #[test]
    fn homogenize_dehomogenize() {
        assert_eq!(p2("x^2 + y").homogenize(2).unwrap(), p3("x^2 + y*z"));
        assert_eq!(p2("x^2 + y").homogenize(3).unwrap(), p3("x^2*z + y*z^2"));
        assert_eq!(p3("x^2*z + y*z^2").dehomogenize(), p2("x^2 + y"));
        assert_eq!(
            p2("x^2 + y").homogenize(1),
            Err(PolyError::TargetTooSmall { target: 1, degree: 2 })
        );
        let f = p2("x^2*y - 3/2");
        assert_eq!(f.homogenize(3).unwrap().dehomogenize(), f);
    }

    #[test]
    fn canonical_normalization() {
        let f = p2("1/2*x - 1/3*y");
        let g = f.canonical();
        assert_eq!(g, p2("3*x - 2*y"));
        // Negative leading coefficient flips sign.
        assert_eq!(p2("-1*x + y").canonical(), p2("x - y"));
        assert_eq!((&f.scale(&rat(-7, 5))).canonical(), g);
    }

    #[test]
    fn display_round_trip() {
        for s in ["x^2*y - 3/2", "(x+y)^2", "-1*x - 1", "0", "5", "x^2 - 2*x*y + 1/7"] {
            let f = p2(s);
            assert_eq!(parse_poly(&f.to_string(), 2).unwrap(), f);
        }
    }

    #[test]
    fn compose_substitute() {
        let f = p2("x^2 + y");
        let g = f.compose(&[p2("x+y"), p2("x*y")]);
        assert_eq!(g, p2("(x+y)^2 + x*y"));
        assert_eq!(f.substitute(0, &rat_int(2)), p2("4 + y"));
    }

    #[test]
    fn gcd_small_cases() {
        let g = gcd_poly(&p2("x^2 - y^2"), &p2("x^2 + 2*x*y + y^2"));
        assert_eq!(g, p2("x + y"));
        let g = gcd_poly(&p2("x^2*y"), &p2("x*y^2"));
        assert_eq!(g, p2("x*y"));
        let g = gcd_poly(&p2("x + 1"), &p2("y + 1"));
        assert_eq!(g, Poly::one(2));
        let g = gcd_poly(&p2("2*x + 2"), &p2("4*x + 4"));
        assert_eq!(g, p2("x + 1"));
    }
}
