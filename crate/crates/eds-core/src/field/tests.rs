//! Unit tests for the exact-arithmetic layer.
//!
//! The linear solver is checked first against an independent oracle
//! (Cramer's rule on a fully symbolic 2x2 system) before any pinned
//! examples, and every solve in this file is additionally validated by
//! substituting the solution back into the system.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::linalg::{invert_ratexpr, rank_q, solve_linear, solve_linear_q};
use super::poly::{Monomial, Poly};
use super::ratexpr::RatExpr;
use super::rng::{det_q, Sampler};
use super::workspace::{SymbolKind, Workspace};
use super::FieldError;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ws_with(names: &[&str]) -> (Workspace, Vec<super::SymbolId>) {
    let ws = Workspace::new();
    let ids = names
        .iter()
        .map(|n| ws.declare(n, SymbolKind::Auxiliary).unwrap())
        .collect();
    (ws, ids)
}

/// `A x - b` must vanish identically for the particular solution, and
/// `A v` must vanish for every nullspace vector.
fn assert_solves(ws: &Workspace, a: &[Vec<RatExpr>], b: &[RatExpr], sol: &super::LinearSolution) {
    for (row, rhs) in a.iter().zip(b) {
        let mut acc = RatExpr::zero(ws);
        for (c, x) in row.iter().zip(&sol.particular) {
            acc = acc.add(&c.mul(x));
        }
        assert!(acc.equiv(rhs), "particular solution fails an equation");
    }
    for v in &sol.nullspace {
        for row in a {
            let mut acc = RatExpr::zero(ws);
            for (c, x) in row.iter().zip(v) {
                acc = acc.add(&c.mul(x));
            }
            assert!(acc.is_zero(), "nullspace vector fails a homogeneous equation");
        }
    }
}

// ---------------------------------------------------------------- oracles

#[test]
fn solver_matches_cramer_on_symbolic_2x2() {
    let (ws, ids) = ws_with(&["a", "b", "c", "d", "e", "f"]);
    let s = |i: usize| RatExpr::symbol(&ws, ids[i]);
    let (a, b, c, d, e, f) = (s(0), s(1), s(2), s(3), s(4), s(5));
    let mat = vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]];
    let rhs = vec![e.clone(), f.clone()];
    let sol = solve_linear(&ws, &mat, &rhs, 2).unwrap();
    assert_eq!(sol.rank, 2);
    assert!(sol.free.is_empty());
    // Independent oracle: Cramer's rule.
    let det = a.mul(&d).sub(&b.mul(&c));
    let x = e.mul(&d).sub(&b.mul(&f)).div(&det).unwrap();
    let y = a.mul(&f).sub(&e.mul(&c)).div(&det).unwrap();
    assert!(sol.particular[0].equiv(&x));
    assert!(sol.particular[1].equiv(&y));
    assert_solves(&ws, &mat, &rhs, &sol);
}

#[test]
fn solver_matches_cramer_on_symbolic_3x3() {
    // 3x3 with distinct symbols; oracle = cofactor expansion inverse.
    let names: Vec<String> = (0..9).map(|i| format!("m{}", i)).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let (ws, ids) = ws_with(&name_refs);
    let e = |i: usize, j: usize| RatExpr::symbol(&ws, ids[3 * i + j]);
    let mat: Vec<Vec<RatExpr>> = (0..3).map(|i| (0..3).map(|j| e(i, j)).collect()).collect();
    let rhs: Vec<RatExpr> = vec![RatExpr::one(&ws), RatExpr::zero(&ws), RatExpr::from_int(&ws, 2)];
    let sol = solve_linear(&ws, &mat, &rhs, 3).unwrap();
    assert_eq!(sol.rank, 3);
    assert_solves(&ws, &mat, &rhs, &sol);
    // Cross-check one component against the cofactor formula.
    let det3 = |m: &[Vec<RatExpr>]| -> RatExpr {
        let t0 = m[0][0].mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])));
        let t1 = m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0])));
        let t2 = m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0])));
        t0.sub(&t1).add(&t2)
    };
    let mut replaced = mat.clone();
    for i in 0..3 {
        replaced[i][0] = rhs[i].clone();
    }
    let x0 = det3(&replaced).div(&det3(&mat)).unwrap();
    assert!(sol.particular[0].equiv(&x0));
}

// ------------------------------------------------------------- monomials

#[test]
fn monomial_order_is_graded_then_lexicographic() {
    let (_ws, ids) = ws_with(&["x", "y"]);
    let (x, y) = (ids[0], ids[1]);
    let m = |pairs: &[(super::SymbolId, u32)]| Monomial(pairs.to_vec());
    // Degree dominates.
    assert!(m(&[(y, 5)]) > m(&[(x, 1)]));
    // Same degree: earlier symbol with higher exponent wins.
    assert!(m(&[(x, 2)]) > m(&[(x, 1), (y, 1)]));
    assert!(m(&[(x, 1), (y, 1)]) > m(&[(y, 2)]));
    assert_eq!(m(&[(x, 1), (y, 2)]).total_degree(), 3);
}

#[test]
fn monomial_division() {
    let (_ws, ids) = ws_with(&["x", "y", "z"]);
    let (x, y, z) = (ids[0], ids[1], ids[2]);
    let a = Monomial(vec![(x, 2), (y, 1), (z, 3)]);
    let b = Monomial(vec![(x, 1), (z, 3)]);
    assert_eq!(a.div(&b), Some(Monomial(vec![(x, 1), (y, 1)])));
    assert_eq!(b.div(&a), None);
    assert_eq!(a.div(&Monomial(vec![(y, 2)])), None);
}

// ------------------------------------------------------------ polynomials

#[test]
fn polynomial_arithmetic_pinned() {
    let (_ws, ids) = ws_with(&["x", "y"]);
    let x = Poly::symbol(ids[0]);
    let y = Poly::symbol(ids[1]);
    let sum_sq = x.add(&y).pow(2);
    let expanded = x
        .mul(&x)
        .add(&x.mul(&y).scale(&q(2, 1)))
        .add(&y.mul(&y));
    assert_eq!(sum_sq, expanded);
    assert!(x.sub(&x).is_zero());
    assert_eq!(x.add(&y).total_degree(), 1);
}

#[test]
fn polynomial_derivative() {
    let (_ws, ids) = ws_with(&["x", "y"]);
    let x = Poly::symbol(ids[0]);
    let y = Poly::symbol(ids[1]);
    // d/dx (x^2 y + 3x) = 2xy + 3
    let p = x.pow(2).mul(&y).add(&x.scale(&q(3, 1)));
    let expected = x.mul(&y).scale(&q(2, 1)).add(&Poly::from_int(3));
    assert_eq!(p.derivative(ids[0]), expected);
    assert_eq!(p.derivative(ids[1]), x.pow(2));
}

#[test]
fn exact_division_and_gcd() {
    let (_ws, ids) = ws_with(&["x", "y", "z", "w"]);
    let x = Poly::symbol(ids[0]);
    let y = Poly::symbol(ids[1]);
    let z = Poly::symbol(ids[2]);
    let w = Poly::symbol(ids[3]);
    // (x^2 - y^2) / (x - y) = x + y
    let diff_sq = x.pow(2).sub(&y.pow(2));
    assert_eq!(diff_sq.divexact(&x.sub(&y)), Some(x.add(&y)));
    assert_eq!(x.sub(&y).divexact(&diff_sq), None);
    // gcd(x^2 - 1, x^2 - 2x + 1) = x - 1
    let a = x.pow(2).sub(&Poly::one());
    let b = x.pow(2).sub(&x.scale(&q(2, 1))).add(&Poly::one());
    assert_eq!(a.gcd(&b), x.sub(&Poly::one()));
    // Multivariate: common factor x + y across disjoint cofactors.
    let g = x.add(&y);
    assert_eq!(g.mul(&z).gcd(&g.mul(&w)), g);
    // Coprime inputs.
    assert!(x.add(&Poly::one()).gcd(&x.sub(&Poly::one())).is_one());
}

#[test]
fn primitive_normalization() {
    let (_ws, ids) = ws_with(&["x"]);
    let x = Poly::symbol(ids[0]);
    // (2/3)x - 4/3  ->  x - 2
    let p = x.scale(&q(2, 3)).sub(&Poly::constant(q(4, 3)));
    assert_eq!(p.primitive_normalized(), x.sub(&Poly::from_int(2)));
    // Sign fix: -x + 2 -> x - 2
    let n = x.neg().add(&Poly::from_int(2));
    assert_eq!(n.primitive_normalized(), x.sub(&Poly::from_int(2)));
}

#[test]
fn circle_reduction_is_exact() {
    let ws = Workspace::new();
    let c = ws.declare("C", SymbolKind::Auxiliary).unwrap();
    let s = ws.declare("S", SymbolKind::Auxiliary).unwrap();
    ws.declare_circle_pair(c, s);
    let pairs = ws.circle_pairs();
    let cp = Poly::symbol(c);
    let sp = Poly::symbol(s);
    // C^2 + S^2 - 1 reduces to zero.
    let rel = cp.pow(2).add(&sp.pow(2)).sub(&Poly::one());
    assert!(rel.reduce_circle(&pairs).is_zero());
    // C^3 -> C - C S^2
    let c3 = cp.pow(3).reduce_circle(&pairs);
    assert_eq!(c3, cp.sub(&cp.mul(&sp.pow(2))));
    // C^4 and (1 - S^2)^2 agree after reduction.
    let c4 = cp.pow(4).reduce_circle(&pairs);
    let alt = Poly::one().sub(&sp.pow(2)).pow(2).reduce_circle(&pairs);
    assert_eq!(c4, alt);
}

// ------------------------------------------------------ rational expressions

#[test]
fn normalization_cancels_common_factors() {
    let (ws, ids) = ws_with(&["x"]);
    let x = Poly::symbol(ids[0]);
    // (x^2 - 1)/(x - 1) -> x + 1
    let e = RatExpr::new(&ws, x.pow(2).sub(&Poly::one()), x.sub(&Poly::one())).unwrap();
    assert_eq!(e.as_poly(), Some(&x.add(&Poly::one())));
    // Canonical form is stable under renormalization.
    let e2 = RatExpr::new(&ws, e.num().clone(), e.den().clone()).unwrap();
    assert_eq!(e.num(), e2.num());
    assert_eq!(e.den(), e2.den());
}

#[test]
fn zero_denominator_is_an_error() {
    let (ws, ids) = ws_with(&["x"]);
    let x = Poly::symbol(ids[0]);
    assert_eq!(
        RatExpr::new(&ws, x.clone(), Poly::zero()).unwrap_err(),
        FieldError::ZeroDenominator
    );
    let e = RatExpr::from_poly(&ws, x);
    assert_eq!(
        e.div(&RatExpr::zero(&ws)).unwrap_err(),
        FieldError::ZeroDenominator
    );
}

#[test]
fn evaluation_pinned() {
    let (ws, ids) = ws_with(&["m", "m3", "m33"]);
    let m = RatExpr::symbol(&ws, ids[0]);
    let m3 = RatExpr::symbol(&ws, ids[1]);
    let m33 = RatExpr::symbol(&ws, ids[2]);
    let mut at = HashMap::new();
    at.insert(ids[0], q(2, 1));
    at.insert(ids[1], q(6, 1));
    at.insert(ids[2], q(1, 1));
    // m3 / m at (m, m3) = (2, 6) is 3.
    assert_eq!(m3.div(&m).unwrap().evaluate(&at).unwrap(), q(3, 1));
    // 1 - m33/m at m = 1, m33 = 1 is 0.
    let mut at1 = at.clone();
    at1.insert(ids[0], BigRational::one());
    let e = RatExpr::one(&ws).sub(&m33.div(&m).unwrap());
    assert!(e.evaluate(&at1).unwrap().is_zero());
    // Singularity at m = 0.
    let mut at0 = at;
    at0.insert(ids[0], BigRational::zero());
    assert_eq!(
        m3.div(&m).unwrap().evaluate(&at0).unwrap_err(),
        FieldError::EvaluationSingularity
    );
}

#[test]
fn quotient_rule_derivatives() {
    let (ws, ids) = ws_with(&["x"]);
    let x = RatExpr::symbol(&ws, ids[0]);
    // d/dx (1/x) = -1/x^2
    let inv = x.recip().unwrap();
    let expected = RatExpr::from_int(&ws, -1).div(&x.mul(&x)).unwrap();
    assert!(inv.derivative(ids[0]).equiv(&expected));
    // d/dx ((x^2+1)/x) = (x^2-1)/x^2
    let e = x.mul(&x).add(&RatExpr::one(&ws)).div(&x).unwrap();
    let expected = x
        .mul(&x)
        .sub(&RatExpr::one(&ws))
        .div(&x.mul(&x))
        .unwrap();
    assert!(e.derivative(ids[0]).equiv(&expected));
}

#[test]
fn equivalence_is_semantic() {
    let (ws, ids) = ws_with(&["x"]);
    let x = RatExpr::symbol(&ws, ids[0]);
    let one = RatExpr::one(&ws);
    // 1/(x-1) - 1/x = 1/(x(x-1))
    let lhs = x.sub(&one).recip().unwrap().sub(&x.recip().unwrap());
    let rhs = x.mul(&x.sub(&one)).recip().unwrap();
    assert!(lhs.equiv(&rhs));
    assert!(!lhs.equiv(&x));
}

#[test]
fn substitution_and_rewrites() {
    let (ws, ids) = ws_with(&["x", "y", "a", "b", "c"]);
    let x = RatExpr::symbol(&ws, ids[0]);
    let y = RatExpr::symbol(&ws, ids[1]);
    // x^2 + 1 with x -> 1/y gives (1 + y^2)/y^2.
    let e = x.mul(&x).add(&RatExpr::one(&ws));
    let sub = e.substitute(ids[0], &y.recip().unwrap()).unwrap();
    let expected = RatExpr::one(&ws)
        .add(&y.mul(&y))
        .div(&y.mul(&y))
        .unwrap();
    assert!(sub.equiv(&expected));
    // Chained rewrites: a -> b + 1, b -> c + 1 on a + b gives 2c + 3.
    let a = RatExpr::symbol(&ws, ids[2]);
    let b = RatExpr::symbol(&ws, ids[3]);
    let c = RatExpr::symbol(&ws, ids[4]);
    let rules = vec![
        (ids[2], b.add(&RatExpr::one(&ws))),
        (ids[3], c.add(&RatExpr::one(&ws))),
    ];
    let out = a.add(&b).apply_rewrites(&rules).unwrap();
    assert!(out.equiv(&c.scale(&q(2, 1)).add(&RatExpr::from_int(&ws, 3))));
    // A self-referential rule is reported as a cycle.
    let bad = vec![(ids[2], a.add(&RatExpr::one(&ws)))];
    assert!(matches!(
        a.apply_rewrites(&bad),
        Err(FieldError::RewriteCycle { .. })
    ));
}

// ------------------------------------------------------------ linear solving

#[test]
fn identity_system_has_unique_solution() {
    let (ws, _) = ws_with(&["t"]);
    let n = 3;
    let a: Vec<Vec<RatExpr>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RatExpr::one(&ws)
                    } else {
                        RatExpr::zero(&ws)
                    }
                })
                .collect()
        })
        .collect();
    let b: Vec<RatExpr> = (0..n).map(|i| RatExpr::from_int(&ws, i as i64 + 1)).collect();
    let sol = solve_linear(&ws, &a, &b, n).unwrap();
    assert_eq!(sol.rank, 3);
    assert!(sol.nullspace.is_empty());
    for (x, rhs) in sol.particular.iter().zip(&b) {
        assert!(x.equiv(rhs));
    }
}

#[test]
fn underdetermined_system_exposes_frees() {
    let (ws, _) = ws_with(&["t"]);
    // x + y = 2
    let a = vec![vec![RatExpr::one(&ws), RatExpr::one(&ws)]];
    let b = vec![RatExpr::from_int(&ws, 2)];
    let sol = solve_linear(&ws, &a, &b, 2).unwrap();
    assert_eq!(sol.rank, 1);
    assert_eq!(sol.pivots, vec![0]);
    assert_eq!(sol.free, vec![1]);
    assert_eq!(sol.nullspace.len(), 1);
    assert!(sol.particular[0].equiv(&RatExpr::from_int(&ws, 2)));
    assert!(sol.particular[1].is_zero());
    assert!(sol.nullspace[0][0].equiv(&RatExpr::from_int(&ws, -1)));
    assert!(sol.nullspace[0][1].is_one());
    assert_solves(&ws, &a, &b, &sol);
}

#[test]
fn inconsistent_system_reports_equation() {
    let (ws, _) = ws_with(&["t"]);
    let a = vec![
        vec![RatExpr::one(&ws), RatExpr::one(&ws)],
        vec![RatExpr::one(&ws), RatExpr::one(&ws)],
    ];
    let b = vec![RatExpr::one(&ws), RatExpr::from_int(&ws, 2)];
    assert_eq!(
        solve_linear(&ws, &a, &b, 2).unwrap_err(),
        FieldError::InconsistentSystem { equation: 1 }
    );
}

#[test]
fn block_system_nullspace_dimension() {
    // [ I6 | M ] x = b has rank 6 and a 6-dimensional nullspace.
    let (ws, _) = ws_with(&["t"]);
    let mut sampler = Sampler::new(7);
    let a: Vec<Vec<RatExpr>> = (0..6)
        .map(|i| {
            let mut row: Vec<RatExpr> = (0..6)
                .map(|j| {
                    if i == j {
                        RatExpr::one(&ws)
                    } else {
                        RatExpr::zero(&ws)
                    }
                })
                .collect();
            row.extend((0..6).map(|_| {
                RatExpr::from_int(&ws, sampler.int_in(-9, 9))
            }));
            row
        })
        .collect();
    let b: Vec<RatExpr> = (0..6).map(|_| RatExpr::from_int(&ws, sampler.int_in(-9, 9))).collect();
    let sol = solve_linear(&ws, &a, &b, 12).unwrap();
    assert_eq!(sol.rank, 6);
    assert_eq!(sol.nullspace.len(), 6);
    assert_solves(&ws, &a, &b, &sol);
}

#[test]
fn solver_handles_trigonometric_coefficients() {
    let ws = Workspace::new();
    let c = ws.declare("C", SymbolKind::Auxiliary).unwrap();
    let s = ws.declare("S", SymbolKind::Auxiliary).unwrap();
    ws.declare_circle_pair(c, s);
    let ce = RatExpr::symbol(&ws, c);
    let se = RatExpr::symbol(&ws, s);
    // Rotation system: C x - S y = 1, S x + C y = 0
    // has the exact solution x = C, y = -S on the unit circle.
    let a = vec![
        vec![ce.clone(), se.neg()],
        vec![se.clone(), ce.clone()],
    ];
    let b = vec![RatExpr::one(&ws), RatExpr::zero(&ws)];
    let sol = solve_linear(&ws, &a, &b, 2).unwrap();
    assert_eq!(sol.rank, 2);
    assert!(sol.particular[0].equiv(&ce));
    assert!(sol.particular[1].equiv(&se.neg()));
    assert_solves(&ws, &a, &b, &sol);
}

#[test]
fn rational_solver_mirrors_symbolic_one() {
    let a = vec![
        vec![q(1, 1), q(2, 1), q(0, 1)],
        vec![q(0, 1), q(1, 1), q(1, 1)],
    ];
    let b = vec![q(5, 1), q(3, 1)];
    let sol = solve_linear_q(&a, &b, 3).unwrap();
    assert_eq!(sol.rank, 2);
    assert_eq!(sol.free, vec![2]);
    // Verify by substitution.
    for (row, rhs) in a.iter().zip(&b) {
        let acc: BigRational = row
            .iter()
            .zip(&sol.particular)
            .map(|(c, x)| c * x)
            .sum();
        assert_eq!(&acc, rhs);
    }
    for v in &sol.nullspace {
        for row in &a {
            let acc: BigRational = row.iter().zip(v).map(|(c, x)| c * x).sum();
            assert!(acc.is_zero());
        }
    }
    assert!(matches!(
        solve_linear_q(
            &[vec![q(1, 1)], vec![q(2, 1)]],
            &[q(1, 1), q(3, 1)],
            1
        ),
        Err(FieldError::InconsistentSystem { equation: 1 })
    ));
}

#[test]
fn matrix_rank_and_inverse() {
    assert_eq!(rank_q(&[vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]]), 1);
    assert_eq!(rank_q(&[vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(3, 1)]]), 2);

    let (ws, ids) = ws_with(&["a", "b", "c", "d"]);
    let e = |i: usize| RatExpr::symbol(&ws, ids[i]);
    let m = vec![vec![e(0), e(1)], vec![e(2), e(3)]];
    let inv = invert_ratexpr(&ws, &m).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = RatExpr::zero(&ws);
            for k in 0..2 {
                acc = acc.add(&m[i][k].mul(&inv[k][j]));
            }
            let expected = if i == j {
                RatExpr::one(&ws)
            } else {
                RatExpr::zero(&ws)
            };
            assert!(acc.equiv(&expected));
        }
    }
    // Singular matrix has no inverse.
    let sing = vec![vec![e(0), e(0)], vec![e(0), e(0)]];
    assert!(invert_ratexpr(&ws, &sing).is_none());
}

// ------------------------------------------------------------- sampling

#[test]
fn sampler_is_deterministic_and_forkable() {
    let mut a = Sampler::new(42);
    let mut b = Sampler::new(42);
    for _ in 0..10 {
        assert_eq!(a.nonzero_rational(), b.nonzero_rational());
    }
    let mut f1 = a.fork(1);
    let mut f1_again = b.fork(1);
    assert_eq!(f1.nonzero_rational(), f1_again.nonzero_rational());
    let mut f2 = a.fork(2);
    let (s1, s2): (Vec<_>, Vec<_>) = (0..8)
        .map(|_| (f1.nonzero_rational(), f2.nonzero_rational()))
        .unzip();
    assert_ne!(s1, s2, "forked streams with different salts should differ");
}

#[test]
fn sampler_ranges_and_circle_points() {
    let mut s = Sampler::new(0xC0FFEE);
    for _ in 0..50 {
        let r = s.nonzero_rational();
        assert!(!r.is_zero());
        let (c, si) = s.circle_point();
        assert_eq!(&c * &c + &si * &si, BigRational::one());
    }
    let m = s.invertible_int_matrix(4);
    assert!(!det_q(&m).is_zero());
    for row in &m {
        for v in row {
            assert!(v.denom().is_one());
            assert!(*v.numer() <= BigInt::from(9) && *v.numer() >= BigInt::from(-9));
        }
    }
}

#[test]
fn generic_assignment_respects_constraints() {
    let ws = Workspace::new();
    let m = ws.declare("m", SymbolKind::BaseFunction).unwrap();
    let c = ws.declare("C", SymbolKind::Auxiliary).unwrap();
    let s = ws.declare("S", SymbolKind::Auxiliary).unwrap();
    ws.declare_circle_pair(c, s);
    let mut sampler = Sampler::new(3);
    let avoid = vec![Poly::symbol(m)];
    let at = sampler.generic_assignment(&ws, &avoid).unwrap();
    assert!(!at[&m].is_zero());
    let circle = &at[&c] * &at[&c] + &at[&s] * &at[&s];
    assert_eq!(circle, BigRational::one());
}

// ------------------------------------------------------------- workspace

#[test]
fn workspace_declarations() {
    let ws = Workspace::new();
    let x = ws.declare("x", SymbolKind::Coordinate).unwrap();
    assert_eq!(ws.lookup("x"), Some(x));
    assert_eq!(ws.name(x), "x");
    assert!(matches!(
        ws.declare("x", SymbolKind::Coordinate),
        Err(FieldError::DuplicateSymbol { .. })
    ));
    let parent = ws.declare("K", SymbolKind::BaseFunction).unwrap();
    let k3 = ws
        .declare(
            "K3",
            SymbolKind::DerivedFunction {
                parent,
                word: vec![3],
            },
        )
        .unwrap();
    match ws.kind(k3) {
        SymbolKind::DerivedFunction { parent: p, word } => {
            assert_eq!(p, parent);
            assert_eq!(word, vec![3]);
        }
        _ => panic!("expected derived-function kind"),
    }
}

// -------------------------------------------------- seeded algebraic laws

#[test]
fn ring_laws_hold_on_seeded_samples() {
    let (_ws, ids) = ws_with(&["x", "y", "z"]);
    let mut s = Sampler::new(0xABCDEF);
    let random_poly = |s: &mut Sampler| {
        let mut p = Poly::zero();
        let n_terms = s.int_in(1, 4);
        for _ in 0..n_terms {
            let mut mono = Monomial::unit();
            for &id in &ids {
                let e = s.int_in(0, 2) as u32;
                if e > 0 {
                    mono = mono.mul(&Monomial(vec![(id, e)]));
                }
            }
            p = p.add(&Poly::term(mono, s.rational()));
        }
        p
    };
    for _ in 0..200 {
        let a = random_poly(&mut s);
        let b = random_poly(&mut s);
        let c = random_poly(&mut s);
        assert_eq!(a.add(&b), b.add(&a));
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert!(a.sub(&a).is_zero());
        // Leibniz rule for the formal derivative.
        let da = a.derivative(ids[0]);
        let db = b.derivative(ids[0]);
        assert_eq!(
            a.mul(&b).derivative(ids[0]),
            da.mul(&b).add(&a.mul(&db))
        );
    }
}

#[test]
fn field_laws_hold_on_seeded_samples() {
    let (ws, ids) = ws_with(&["x", "y"]);
    let mut s = Sampler::new(0x5EED);
    let random_expr = |s: &mut Sampler| -> RatExpr {
        let x = RatExpr::symbol(&ws, ids[0]);
        let y = RatExpr::symbol(&ws, ids[1]);
        let c1 = RatExpr::constant(&ws, s.nonzero_rational());
        let c2 = RatExpr::constant(&ws, s.nonzero_rational());
        // (c1 + x) / (c2 + y): nonzero numerator and denominator.
        c1.add(&x).div(&c2.add(&y)).unwrap()
    };
    for _ in 0..100 {
        let a = random_expr(&mut s);
        let b = random_expr(&mut s);
        assert!(a.mul(&b.recip().unwrap()).equiv(&a.div(&b).unwrap()));
        assert!(a.div(&a).unwrap().is_one());
        assert!(a.sub(&a).is_zero());
        let sum = a.add(&b);
        assert!(sum.sub(&b).equiv(&a));
        // gcd-based cancellation: (a*b)/b == a.
        assert!(a.mul(&b).div(&b).unwrap().equiv(&a));
    }
}
