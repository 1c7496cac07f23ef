//! Buchberger-based Gröbner engine over the rationals.
//!
//! Sized for the bilinear coefficient systems produced by the invariant
//! curve search: a handful of unknowns, dense in pairs, shallow in degree.
//! Internals reduce fraction-free over the integers (pseudo-reduction with
//! joint content stripping) and only the final basis is scaled monic.
//!
//! Hard resource ceilings turn runaway instances into a structured
//! [`GroebnerError::ResourceLimit`] instead of an open-ended computation.

use crate::poly::{Degree, Monomial, Poly, Rational, TermOrder, OrderKind};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Which configured ceiling was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    MaxPairs,
    MaxDegree,
}

impl std::fmt::Display for LimitKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LimitKind::MaxPairs => write!(f, "max_pairs"),
            LimitKind::MaxDegree => write!(f, "max_degree"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("resource limit {kind} hit (pairs processed: {pairs}, working degree: {degree})")]
    ResourceLimit {
        kind: LimitKind,
        pairs: usize,
        degree: usize,
    },
    #[error("generators have mixed arities")]
    MixedArity,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("ideal is not zero-dimensional")]
    PositiveDimensional,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootsError {
    #[error("rational_roots of the zero polynomial")]
    ZeroPolynomial,
    #[error("rational_roots needs a univariate polynomial")]
    NotUnivariate,
}

/// Ceilings for a single `buchberger` run.
#[derive(Debug, Clone, Copy)]
pub struct GroebnerConfig {
    pub max_pairs: usize,
    pub max_degree: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_pairs: 50_000,
            max_degree: 60,
        }
    }
}

/// A generating set for an ideal, tagged with its term order.
///
/// When `reduced` is true the generators form the unique reduced Gröbner
/// basis: monic, no generator term divisible by another generator's
/// leading term, sorted by descending leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealBasis {
    pub generators: Vec<Poly>,
    pub order: TermOrder,
    pub reduced: bool,
}

/// Reduced Gröbner basis with default resource ceilings.
pub fn buchberger(gens: &[Poly], order: &TermOrder) -> Result<IdealBasis, GroebnerError> {
    buchberger_with(&GroebnerConfig::default(), gens, order)
}

#[allow(clippy::needless_range_loop)] // index pairs (i, j, k) are the data here
pub fn buchberger_with(
    cfg: &GroebnerConfig,
    gens: &[Poly],
    order: &TermOrder,
) -> Result<IdealBasis, GroebnerError> {
    let arity = order.arity();
    if gens.iter().any(|g| g.arity() != arity) {
        return Err(GroebnerError::MixedArity);
    }

    // Integer-primitive working basis.
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.canonical());
        }
    }
    if basis.is_empty() {
        return Ok(IdealBasis {
            generators: Vec::new(),
            order: order.clone(),
            reduced: true,
        });
    }

    // Pending pair queue keyed by the lcm sort key (normal strategy: pop the
    // smallest lcm first). Coprime leading terms are dropped at creation.
    let mut pending: BTreeMap<(Vec<i64>, usize, usize), Monomial> = BTreeMap::new();
    let mut pending_flags: BTreeSet<(usize, usize)> = BTreeSet::new();
    let lm = |p: &Poly, order: &TermOrder| p.leading_by(order).unwrap().0.clone();

    let add_pairs = |basis: &Vec<Poly>,
                         new_index: usize,
                         pending: &mut BTreeMap<(Vec<i64>, usize, usize), Monomial>,
                         pending_flags: &mut BTreeSet<(usize, usize)>| {
        let lm_new = lm(&basis[new_index], order);
        for i in 0..new_index {
            let lm_i = lm(&basis[i], order);
            if lm_i.coprime(&lm_new) {
                continue;
            }
            let l = lm_i.lcm(&lm_new);
            pending.insert((order.sort_key(&l), i, new_index), l);
            pending_flags.insert((i, new_index));
        }
    };

    for i in 0..basis.len() {
        add_pairs(&basis, i, &mut pending, &mut pending_flags);
    }

    let mut pairs_processed = 0usize;
    while let Some((key, l)) = pending.iter().next().map(|(k, v)| (k.clone(), v.clone())) {
        pending.remove(&key);
        let (_, i, j) = (key.0, key.1, key.2);
        pending_flags.remove(&(i, j));

        // Chain criterion: a third generator dividing the lcm whose pairs
        // with both ends are already settled makes this pair redundant.
        let mut skip = false;
        for k in 0..basis.len() {
            if k == i || k == j {
                continue;
            }
            if lm(&basis[k], order).divides(&l)
                && !pending_flags.contains(&(i.min(k), i.max(k)))
                && !pending_flags.contains(&(j.min(k), j.max(k)))
            {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }

        pairs_processed += 1;
        if pairs_processed > cfg.max_pairs {
            return Err(GroebnerError::ResourceLimit {
                kind: LimitKind::MaxPairs,
                pairs: pairs_processed,
                degree: l.total_degree(),
            });
        }

        let s = s_polynomial(&basis[i], &basis[j], order);
        let rem = reduce_fraction_free(&s, &basis, order);
        if rem.is_zero() {
            continue;
        }
        let rem = rem.canonical();
        if let Degree::Finite(d) = rem.degree() {
            if d > cfg.max_degree {
                return Err(GroebnerError::ResourceLimit {
                    kind: LimitKind::MaxDegree,
                    pairs: pairs_processed,
                    degree: d,
                });
            }
        }
        basis.push(rem);
        let new_index = basis.len() - 1;
        add_pairs(&basis, new_index, &mut pending, &mut pending_flags);
    }

    Ok(inter_reduce(basis, order))
}

/// S-polynomial over the integers (inputs integer-primitive).
fn s_polynomial(f: &Poly, g: &Poly, order: &TermOrder) -> Poly {
    let (fm, fc) = f.leading_by(order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let (gm, gc) = g.leading_by(order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let l = fm.lcm(&gm);
    let uf = l.checked_div(&fm).unwrap();
    let ug = l.checked_div(&gm).unwrap();
    &f.mul_monomial(&uf, &gc) - &g.mul_monomial(&ug, &fc)
}

/// Full multivariate division, fraction-free. The remainder is only defined
/// up to a positive rational scalar, which is all the callers need (zero
/// tests and primitive new generators).
fn reduce_fraction_free(f: &Poly, basis: &[Poly], order: &TermOrder) -> Poly {
    let mut work = f.clone();
    let mut tail = Poly::zero(f.arity());
    'outer: while !work.is_zero() {
        let (wm, wc) = work
            .leading_by(order)
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        for g in basis {
            let (gm, gc) = g.leading_by(order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
            if let Some(q) = wm.checked_div(&gm) {
                work = &work.scale(&gc) - &g.mul_monomial(&q, &wc);
                tail = tail.scale(&gc);
                strip_joint_content(&mut work, &mut tail);
                continue 'outer;
            }
        }
        // Leading term irreducible: move it to the settled tail.
        tail = &tail + &Poly::from_terms(f.arity(), [(wm.clone(), wc.clone())]);
        work = &work - &Poly::from_terms(f.arity(), [(wm, wc)]);
    }
    tail
}

/// Divide `a` and `b` jointly by the gcd of their integer contents, keeping
/// their relative scaling (and hence correctness of the division invariant).
fn strip_joint_content(a: &mut Poly, b: &mut Poly) {
    let mut g = BigInt::zero();
    let mut den = BigInt::one();
    for c in a.terms().map(|t| t.1).chain(b.terms().map(|t| t.1)) {
        g = g.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if g.is_zero() {
        return;
    }
    let scale = Rational::new(den, g).abs();
    if scale.is_one() {
        return;
    }
    *a = a.scale(&scale);
    *b = b.scale(&scale);
}

/// Minimize and tail-reduce into the unique reduced Gröbner basis.
fn inter_reduce(mut basis: Vec<Poly>, order: &TermOrder) -> IdealBasis {
    // Minimal basis: drop generators whose leading monomial is divisible by
    // another surviving generator's leading monomial.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lm_i = basis[i].leading_by(order).unwrap().0.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lm_j = basis[j].leading_by(order).unwrap().0.clone();
            if lm_j.divides(&lm_i) && (lm_j != lm_i || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    basis = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // Monic generators, each fully reduced by the others.
    let monic: Vec<Poly> = basis
        .iter()
        .map(|g| {
            let lc = g.leading_by(order).unwrap().1.clone();
            g.scale(&lc.recip())
        })
        .collect();
    let mut reduced: Vec<Poly> = Vec::with_capacity(monic.len());
    for i in 0..monic.len() {
        let others: Vec<Poly> = monic
            .iter()
            .enumerate()
            .filter(|&(j, _g)| j != i).map(|(_j, g)| g.clone())
            .collect();
        let r = divide_rational(&monic[i], &others, order);
        let lc = r.leading_by(order).unwrap().1.clone();
        reduced.push(r.scale(&lc.recip()));
    }
    reduced.sort_by(|a, b| {
        let la = a.leading_by(order).unwrap().0;
        let lb = b.leading_by(order).unwrap().0;
        order.cmp_monomials(lb, la)
    });
    IdealBasis {
        generators: reduced,
        order: order.clone(),
        reduced: true,
    }
}

/// Plain rational multivariate division remainder of `f` by `basis`.
fn divide_rational(f: &Poly, basis: &[Poly], order: &TermOrder) -> Poly {
    let mut work = f.clone();
    let mut rem = Poly::zero(f.arity());
    'outer: while !work.is_zero() {
        let (wm, wc) = work
            .leading_by(order)
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        for g in basis {
            let (gm, gc) = g.leading_by(order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
            if let Some(q) = wm.checked_div(&gm) {
                work = &work - &g.mul_monomial(&q, &(wc / &gc));
                continue 'outer;
            }
        }
        rem = &rem + &Poly::from_terms(f.arity(), [(wm.clone(), wc.clone())]);
        work = &work - &Poly::from_terms(f.arity(), [(wm, wc)]);
    }
    rem
}

/// Unique remainder of `f` modulo a reduced basis. Zero exactly on ideal
/// members.
pub fn normal_form(f: &Poly, basis: &IdealBasis) -> Poly {
    assert!(basis.reduced, "normal_form needs a reduced basis");
    divide_rational(f, &basis.generators, &basis.order)
}

/// Solutions of a zero-dimensional system with all-rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDimSolutions {
    /// Fully rational points, sorted lexicographically by coordinates.
    pub points: Vec<Vec<Rational>>,
    /// True when some univariate eliminant had a root outside the rationals;
    /// those branches are reported, not solved.
    pub nonrational_detected: bool,
}

/// Back-substitution through the triangular structure of a reduced lex
/// basis. Branches over non-rational eliminant roots are counted via the
/// `nonrational_detected` flag but never represented.
pub fn solve_zero_dimensional(basis: &IdealBasis) -> Result<ZeroDimSolutions, SolveError> {
    assert!(basis.reduced, "solve_zero_dimensional needs a reduced basis");
    assert!(
        basis.order.kind == OrderKind::Lex,
        "solve_zero_dimensional needs a lex basis"
    );
    let arity = basis.order.arity();
    let gens = &basis.generators;
    if gens.iter().any(|g| !g.is_zero() && g.is_constant()) {
        return Ok(ZeroDimSolutions {
            points: Vec::new(),
            nonrational_detected: false,
        });
    }
    if gens.is_empty() {
        return Err(SolveError::PositiveDimensional);
    }
    // Zero-dimensionality: every variable carries a pure-power leading term.
    for v in 0..arity {
        let has_power = gens.iter().any(|g| {
            let lm = g.leading_by(&basis.order).unwrap().0;
            lm.0[v] > 0 && lm.0.iter().enumerate().all(|(i, &e)| i == v || e == 0)
        });
        if !has_power {
            return Err(SolveError::PositiveDimensional);
        }
    }

    let mut points = Vec::new();
    let mut nonrational = false;
    let vars: Vec<usize> = basis.order.priority.clone();
    let mut assignment: Vec<Option<Rational>> = vec![None; arity];
    solve_rec(
        gens.clone(),
        &basis.order,
        &vars,
        &mut assignment,
        &mut points,
        &mut nonrational,
    )?;

    // Every point must satisfy every original generator exactly.
    for p in &points {
        for g in gens {
            assert!(
                g.eval(p).expect("arity checked").is_zero(),
                "solver produced a non-solution"
            );
        }
    }
    points.sort();
    points.dedup();
    Ok(ZeroDimSolutions {
        points,
        nonrational_detected: nonrational,
    })
}

fn solve_rec(
    gens: Vec<Poly>,
    order: &TermOrder,
    remaining: &[usize],
    assignment: &mut Vec<Option<Rational>>,
    points: &mut Vec<Vec<Rational>>,
    nonrational: &mut bool,
) -> Result<(), SolveError> {
    let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    if gens.iter().any(|g| g.is_constant()) {
        return Ok(()); // inconsistent branch
    }
    if remaining.is_empty() {
        let point: Vec<Rational> = assignment
            .iter()
            .map(|a| a.clone().expect("all variables assigned"))
            .collect();
        points.push(point);
        return Ok(());
    }
    let v = *remaining.last().unwrap();
    let eliminant = match gens.iter().find(|g| g.used_vars() == [v]) {
        Some(e) => e.clone(),
        None => {
            // Missing univariate generator in the least variable: the fiber
            // is not finite over this branch.
            return Err(SolveError::PositiveDimensional);
        }
    };
    let roots = rational_roots(&eliminant).expect("eliminant is a nonzero univariate");
    let mut distinct: Vec<Rational> = roots.clone();
    distinct.dedup();
    if roots.len() < eliminant.degree_in(v).expect_finite() {
        *nonrational = true;
    }
    for root in distinct {
        let substituted: Vec<Poly> = gens.iter().map(|g| g.substitute(v, &root)).collect();
        let sub_basis = buchberger(&substituted, order)?;
        assignment[v] = Some(root);
        solve_rec(
            sub_basis.generators,
            order,
            &remaining[..remaining.len() - 1],
            assignment,
            points,
            nonrational,
        )?;
        assignment[v] = None;
    }
    Ok(())
}

/// All positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            small.push(i.clone());
            let q = &n / &i;
            if q != i {
                large.push(q);
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// All rational roots of a univariate polynomial, with multiplicity,
/// sorted ascending. Candidates come from the divisor-of-constant over
/// divisor-of-leading search on the primitive integer form; every root is
/// confirmed by exact evaluation and synthetic deflation.
pub fn rational_roots(p: &Poly) -> Result<Vec<Rational>, RootsError> {
    if p.is_zero() {
        return Err(RootsError::ZeroPolynomial);
    }
    let used = p.used_vars();
    if used.len() > 1 {
        return Err(RootsError::NotUnivariate);
    }
    if used.is_empty() {
        return Ok(Vec::new()); // nonzero constant
    }
    let var = used[0];
    let prim = p.canonical();
    let deg = prim.degree_in(var).expect_finite();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); deg + 1];
    for (m, c) in prim.terms() {
        debug_assert!(c.denom().is_one());
        coeffs[m.0[var] as usize] = c.numer().clone();
    }
    let mut roots = Vec::new();
    // Powers of the variable itself give roots at zero.
    let valuation = coeffs.iter().position(|c| !c.is_zero()).unwrap();
    for _ in 0..valuation {
        roots.push(Rational::zero());
    }
    let mut coeffs: Vec<BigInt> = coeffs[valuation..].to_vec();
    if coeffs.len() > 1 {
        let c0 = coeffs[0].clone();
        let clead = coeffs.last().unwrap().clone();
        for num in divisors(&c0) {
            for den in divisors(&clead) {
                if !num.gcd(&den).is_one() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand = Rational::new(&num * BigInt::from(sign), den.clone());
                    loop {
                        if coeffs.len() <= 1 {
                            break;
                        }
                        // Horner evaluation and synthetic division in one pass.
                        let mut synth: Vec<Rational> = Vec::with_capacity(coeffs.len() - 1);
                        let mut acc = Rational::zero();
                        for c in coeffs.iter().rev() {
                            acc = acc * &cand + Rational::from_integer(c.clone());
                            synth.push(acc.clone());
                        }
                        if !acc.is_zero() {
                            break;
                        }
                        roots.push(cand.clone());
                        synth.pop();
                        synth.reverse();
                        // Quotient coefficients; clear denominators to stay integral.
                        let mut den_lcm = BigInt::one();
                        for c in &synth {
                            den_lcm = den_lcm.lcm(c.denom());
                        }
                        coeffs = synth
                            .iter()
                            .map(|c| c.numer() * (&den_lcm / c.denom()))
                            .collect();
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat, rat_int};

    fn p2(s: &str) -> Poly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn buchberger_lex_example() {
        // y*(x^2-1) - x*(xy-1) = x - y drives the reduction.
        let basis = buchberger(&[p2("x^2 - 1"), p2("x*y - 1")], &TermOrder::lex(2)).unwrap();
        assert_eq!(basis.generators, vec![p2("x - y"), p2("y^2 - 1")]);
    }

    #[test]
    fn buchberger_trivial_cases() {
        let basis = buchberger(&[p2("x")], &TermOrder::lex(2)).unwrap();
        assert_eq!(basis.generators, vec![p2("x")]);
        let basis = buchberger(&[p2("x - 1"), p2("x - 2")], &TermOrder::lex(2)).unwrap();
        assert_eq!(basis.generators, vec![Poly::one(2)]);
    }

    #[test]
    fn normal_form_examples() {
        let basis = buchberger(&[p2("x - y"), p2("y^2 - 1")], &TermOrder::lex(2)).unwrap();
        assert_eq!(normal_form(&p2("x^2"), &basis), Poly::one(2));
        assert_eq!(normal_form(&Poly::zero(2), &basis), Poly::zero(2));
        assert_eq!(normal_form(&p2("x - y"), &basis), Poly::zero(2));
    }

    #[test]
    fn solve_two_point_system() {
        let basis = buchberger(&[p2("x - y"), p2("y^2 - 1")], &TermOrder::lex(2)).unwrap();
        let sol = solve_zero_dimensional(&basis).unwrap();
        assert!(!sol.nonrational_detected);
        assert_eq!(
            sol.points,
            vec![vec![rat_int(-1), rat_int(-1)], vec![rat_int(1), rat_int(1)]]
        );
    }

    #[test]
    fn solve_detects_nonrational() {
        let gens = vec![Poly::from_terms(
            1,
            [
                (Monomial(vec![2]), rat_int(1)),
                (Monomial(vec![0]), rat_int(1)),
            ],
        )];
        let basis = buchberger(&gens, &TermOrder::lex(1)).unwrap();
        let sol = solve_zero_dimensional(&basis).unwrap();
        assert!(sol.points.is_empty());
        assert!(sol.nonrational_detected);
    }

    #[test]
    fn solve_single_linear() {
        let gens = vec![Poly::from_terms(
            1,
            [
                (Monomial(vec![1]), rat_int(1)),
                (Monomial(vec![0]), rat(-3, 2)),
            ],
        )];
        let basis = buchberger(&gens, &TermOrder::lex(1)).unwrap();
        let sol = solve_zero_dimensional(&basis).unwrap();
        assert_eq!(sol.points, vec![vec![rat(3, 2)]]);
    }

    #[test]
    fn solve_positive_dimensional() {
        let basis = buchberger(&[p2("x - y")], &TermOrder::lex(2)).unwrap();
        assert_eq!(
            solve_zero_dimensional(&basis),
            Err(SolveError::PositiveDimensional)
        );
    }

    #[test]
    fn rational_roots_examples() {
        let p = |s: &str| {
            let q = parse_poly(s, 2).unwrap();
            q
        };
        assert_eq!(
            rational_roots(&p("2*x^2 - x - 1")).unwrap(),
            vec![rat(-1, 2), rat_int(1)]
        );
        assert_eq!(rational_roots(&p("x^2 + 1")).unwrap(), Vec::<Rational>::new());
        assert_eq!(
            rational_roots(&p("x^3")).unwrap(),
            vec![rat_int(0), rat_int(0), rat_int(0)]
        );
        assert_eq!(rational_roots(&Poly::zero(2)), Err(RootsError::ZeroPolynomial));
    }

    #[test]
    fn resource_limit_reported() {
        let cfg = GroebnerConfig {
            max_pairs: 0,
            max_degree: 60,
        };
        let err = buchberger_with(&cfg, &[p2("x^2 - 1"), p2("x*y - 1")], &TermOrder::lex(2))
            .unwrap_err();
        assert!(matches!(
            err,
            GroebnerError::ResourceLimit {
                kind: LimitKind::MaxPairs,
                ..
            }
        ));
    }
}
