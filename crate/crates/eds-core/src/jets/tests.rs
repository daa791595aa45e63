use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::rng::Sampler;

use super::*;

const SEED: u64 = 0xA11CE;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn random_series(sampler: &mut Sampler, order: usize) -> Series2 {
    let mut s = Series2::zero(order);
    for d in 0..=order {
        for b in 0..=d {
            s.set(d - b, b, q(sampler.int_in(-4, 4)));
        }
    }
    s
}

/// Hand-built jets of m = cosh(z2), u = 1: the explicit exact solution.
fn cosh_oracle(order: usize) -> JetState {
    let mut m = Series2::zero(order);
    let u = Series2::constant(BigRational::one(), order);
    let mut factorial = BigRational::one();
    for b in 0..=order {
        if b > 0 {
            factorial = factorial * q(b as i64);
        }
        if b % 2 == 0 {
            m.set(0, b, BigRational::one() / factorial.clone());
        }
    }
    JetState::new(m, u, CVariant::Derived).unwrap()
}

#[test]
fn series_product_against_reciprocal_is_one() {
    let sampler = Sampler::new(SEED);
    for trial in 0..50 {
        let mut s = random_series(&mut sampler.fork(trial), 5);
        if s.coeff(0, 0).is_zero() {
            s.set(0, 0, q(1));
        }
        let inv = s.recip().expect("unit constant term");
        let product = s.mul(&inv);
        assert_eq!(product, Series2::constant(BigRational::one(), 5));
    }
}

#[test]
fn series_derivations_obey_the_leibniz_rule() {
    let sampler = Sampler::new(SEED ^ 0x5e51e5);
    for trial in 0..50 {
        let f = random_series(&mut sampler.fork(2 * trial), 5);
        let g = random_series(&mut sampler.fork(2 * trial + 1), 5);
        let lhs = f.mul(&g).dx();
        let rhs = f.dx().mul(&g.truncate(4)).add(&f.truncate(4).mul(&g.dx()));
        assert_eq!(lhs, rhs);
        let lhs = f.mul(&g).dy();
        let rhs = f.dy().mul(&g.truncate(4)).add(&f.truncate(4).mul(&g.dy()));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn series_mixed_partials_commute() {
    let sampler = Sampler::new(SEED ^ 0xd1ff);
    for trial in 0..50 {
        let f = random_series(&mut sampler.fork(trial), 6);
        assert_eq!(f.dx().dy(), f.dy().dx());
    }
}

#[test]
fn cosh_jets_solve_the_derived_pair_exactly() {
    let state = cosh_oracle(8);
    let residuals = state.residuals().unwrap();
    assert!(residuals.is_zero(), "rows: {:?}", residual_rows(&residuals));
}

#[test]
fn cosh_jets_expose_the_missing_factor_in_the_printed_variant() {
    let oracle = cosh_oracle(8);
    let printed = JetState::new(oracle.m().clone(), oracle.u().clone(), CVariant::Printed).unwrap();
    let residuals = printed.residuals().unwrap();
    assert!(residuals.l.is_zero());
    // cosh(z2) - 1 has no jets below degree two, so the defect first shows
    // at the (0, 2) coefficient of the transverse residual.
    assert_eq!(residuals.c.coeff(0, 0), q(0));
    assert_eq!(residuals.c.coeff(0, 2), qr(1, 2));
}

#[test]
fn constant_data_fails_the_transverse_equation() {
    let m = Series2::constant(BigRational::one(), 6);
    let u = Series2::constant(BigRational::one(), 6);
    let state = JetState::new(m, u, CVariant::Derived).unwrap();
    let residuals = state.residuals().unwrap();
    assert!(residuals.l.is_zero());
    assert_eq!(residuals.c.coeff(0, 0), q(-1));
}

#[test]
fn zero_fill_from_cosh_boundary_data_reproduces_cosh() {
    let f = FreeData::cosh(8);
    let state = solve_forward(&f, 8, CVariant::Derived, FillPolicy::Zero).unwrap();
    assert_eq!(state, cosh_oracle(8));
}

#[test]
fn random_boundary_data_yields_exact_formal_solutions() {
    for seed in 0..10u64 {
        let f = random_admissible(seed, 6);
        let state = solve_forward_seeded(&f, 6, seed).unwrap();
        let residuals = state.residuals().unwrap();
        assert!(
            residuals.is_zero(),
            "seed {seed}: {:?}",
            residual_rows(&residuals)
        );
        assert!(is_exact_solution(&state).unwrap());
    }
}

#[test]
fn printed_variant_is_solvable_too() {
    for seed in [3u64, 7] {
        let f = random_admissible(seed, 6);
        let state = solve_forward(&f, 6, CVariant::Printed, FillPolicy::Seeded(seed)).unwrap();
        assert!(state.residuals().unwrap().is_zero());
    }
}

#[test]
fn some_random_draw_carries_nonzero_first_jets() {
    let witness = (0..10u64).find(|&seed| {
        let f = random_admissible(seed, 6);
        !f.m_line[1].is_zero() && !f.m_z2_line[0].is_zero()
    });
    assert!(witness.is_some(), "no draw with both first jets of m nonzero");
}

#[test]
fn truncations_of_solutions_are_solutions() {
    let f = random_admissible(SEED, 6);
    let state = solve_forward_seeded(&f, 6, SEED).unwrap();
    for order in 2..=6 {
        let cut = state.truncate(order).unwrap();
        assert!(cut.residuals().unwrap().is_zero(), "order {order}");
    }
}

#[test]
fn deeper_solves_extend_shallower_ones() {
    for seed in [0u64, 5, 11] {
        let f = random_admissible(seed, 8);
        let deep = solve_forward_seeded(&f, 8, seed).unwrap();
        let shallow = solve_forward_seeded(&f, 6, seed).unwrap();
        assert_eq!(deep.truncate(6).unwrap(), shallow);
    }
}

#[test]
fn perturbed_boundary_data_reports_the_forced_coefficient() {
    let mut f = random_admissible(SEED, 6);
    let original = f.m_z2_line[2].clone();
    f.m_z2_line[2] = &original + q(1);
    let err = solve_forward_seeded(&f, 6, SEED).unwrap_err();
    match err {
        JetError::Compatibility {
            order,
            required,
            supplied,
            ..
        } => {
            assert_eq!(order, 3);
            assert_eq!(required, original);
            assert_eq!(supplied, &original + q(1));
        }
        other => panic!("expected a compatibility report, got {other}"),
    }
}

#[test]
fn preconditions_are_enforced() {
    let mut f = FreeData::cosh(6);
    f.u_line[0] = q(0);
    assert!(matches!(
        solve_forward_seeded(&f, 6, SEED),
        Err(JetError::Precondition { .. })
    ));

    let mut f = FreeData::cosh(6);
    f.m_line[0] = q(0);
    assert!(matches!(
        solve_forward_seeded(&f, 6, SEED),
        Err(JetError::Precondition { .. })
    ));

    let mut f = FreeData::cosh(6);
    f.u_line.truncate(3);
    assert!(matches!(
        solve_forward_seeded(&f, 6, SEED),
        Err(JetError::Precondition { .. })
    ));
}

#[test]
fn sampling_respects_the_trust_radius() {
    let state = cosh_oracle(8);
    let sample = state.sample(0.0, 0.1, 0.5).unwrap();
    assert!((sample.m - 0.1f64.cosh()).abs() < 1e-10);
    assert!((sample.m_z2 - 0.1f64.sinh()).abs() < 1e-10);
    assert_eq!(sample.u, 1.0);
    assert!(matches!(
        state.sample(0.6, 0.0, 0.5),
        Err(JetError::OutsideTrustRadius { .. })
    ));
}

#[test]
fn tail_estimate_grows_with_the_radius() {
    let f = random_admissible(SEED, 6);
    let state = solve_forward_seeded(&f, 6, SEED).unwrap();
    let near = state.tail_estimate(0.05);
    let far = state.tail_estimate(0.2);
    assert!(near >= 0.0);
    assert!(far > near);
}

#[test]
fn coefficient_tables_round_trip_through_text() {
    let f = random_admissible(SEED ^ 1, 6);
    let state = solve_forward(&f, 6, CVariant::Printed, FillPolicy::Seeded(2)).unwrap();
    let text = state.to_table();
    let back = JetState::from_table(&text).unwrap();
    assert_eq!(back, state);
}

#[test]
fn malformed_tables_report_their_line() {
    let err = JetState::from_table("order 4\nvariant derived\nm\n(0, 0, what)\n").unwrap_err();
    match err {
        JetError::Table { line, .. } => assert_eq!(line, 4),
        other => panic!("expected a table error, got {other}"),
    }
}
