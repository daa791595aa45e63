//! Order-by-order Taylor solver for the equation pair (L), (C).
//!
//! Multiplying (L) by `u` and (C) by `u^2` clears denominators, so each
//! Taylor coefficient of the residuals is polynomial in the jets of `(m, u)`.
//! At total degree `n - 2` those coefficients are *affine* in the degree-`n`
//! jets: no product of two degree-`n` coefficients can reach total degree
//! `n - 2`.  The solver therefore marches order by order, at each step
//! extracting the affine system by exact probing and solving it over the
//! rationals.
//!
//! The elimination at order `n` always pivots on the same coefficients
//! (their leading entries are nonzero multiples of `u(0)` and `m(0) u(0)`),
//! leaving exactly four free jets: `m_{(n,0)}`, `u_{(n,0)}`, `u_{(n-1,1)}`,
//! and `u_{(0,n)}`.  The first three are read from the supplied boundary
//! data; the transverse jet `u_{(0,n)}` has no counterpart there and is
//! filled by policy.  Because equation (L) restricted to the line `z2 = 0`
//! already relates the supplied jets of `m_{z2}` to the other three lines,
//! boundary data must satisfy a recurrence before any solving starts; the
//! solver validates it and reports the first violated coefficient.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::linalg::solve_linear_q;
use crate::field::rng::Sampler;

use super::series::Series2;
use super::state::{residual_jets, CVariant, JetState};
use super::JetError;

/// Boundary jets along the line `z2 = 0` that parametrize a solution.
///
/// Index `a` of each table is the coefficient of `z1^a` in the named
/// one-variable expansion.  For a solve to order `N`, `m_line` and `u_line`
/// must reach index `N`, and `m_z2_line` and `u_z2_line` index `N - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeData {
    /// Jets of `m(z1, 0)`.
    pub m_line: Vec<BigRational>,
    /// Jets of `m_{z2}(z1, 0)`.
    pub m_z2_line: Vec<BigRational>,
    /// Jets of `u(z1, 0)`.
    pub u_line: Vec<BigRational>,
    /// Jets of `u_{z2}(z1, 0)`.
    pub u_z2_line: Vec<BigRational>,
}

/// How to fill the per-order transverse jet `u_{(0,n)}` the boundary data
/// does not determine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FillPolicy {
    /// Set every undetermined transverse jet to zero.
    Zero,
    /// Draw each one from a small-integer box, keyed by `(seed, order)` so
    /// that truncating a deeper solve reproduces a shallower one.
    Seeded(u64),
}

impl FreeData {
    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Boundary data of the explicit solution `m = cosh(z2)`, `u = 1`.
    pub fn cosh(order: usize) -> FreeData {
        FreeData {
            m_line: std::iter::once(Self::q(1))
                .chain(std::iter::repeat(Self::q(0)))
                .take(order + 1)
                .collect(),
            m_z2_line: vec![Self::q(0); order.max(1)],
            u_line: std::iter::once(Self::q(1))
                .chain(std::iter::repeat(Self::q(0)))
                .take(order + 1)
                .collect(),
            u_z2_line: vec![Self::q(0); order.max(1)],
        }
    }

    fn validate_lengths(&self, order: usize) -> Result<(), JetError> {
        let need = [
            ("m(z1, 0)", self.m_line.len(), order + 1),
            ("m_z2(z1, 0)", self.m_z2_line.len(), order.max(1)),
            ("u(z1, 0)", self.u_line.len(), order + 1),
            ("u_z2(z1, 0)", self.u_z2_line.len(), order.max(1)),
        ];
        for (name, got, want) in need {
            if got < want {
                return Err(JetError::Precondition {
                    what: format!(
                        "boundary table {name} holds {got} jets, an order-{order} solve needs {want}"
                    ),
                });
            }
        }
        if !self.u_line[0].is_positive() {
            return Err(JetError::Precondition {
                what: format!("u(0, 0) must be positive, got {}", self.u_line[0]),
            });
        }
        if self.m_line[0].is_zero() {
            return Err(JetError::Precondition {
                what: "m(0, 0) must be nonzero".to_string(),
            });
        }
        Ok(())
    }

    /// The jets of `m_{z2}(z1, 0)` that equation (L) forces, given the other
    /// three boundary tables and the supplied constant term.
    ///
    /// On the line `z2 = 0`, (L) reads `u v' - u' v - u_{z2} m' = 0` for
    /// `v = m_{z2}(z1, 0)`, an ODE whose coefficient recurrence determines
    /// `v` from `v(0)` alone.
    pub fn forced_m_z2_line(&self, order: usize) -> Vec<BigRational> {
        let len = order.max(1);
        let u0 = &self.u_line;
        let mut v = vec![BigRational::zero(); len];
        v[0] = self.m_z2_line[0].clone();
        for alpha in 0..len - 1 {
            // Coefficient of z1^alpha in  u v' - u' v - u_z2 m' = 0,
            // solved for v[alpha + 1].
            let mut acc = BigRational::zero();
            // u' v  and  u_z2 m' contribute with their plain convolutions.
            for i in 0..=alpha {
                let j = alpha - i;
                if i + 1 < u0.len() {
                    acc += &u0[i + 1] * Self::q((i + 1) as i64) * &v[j];
                }
                if i < self.u_z2_line.len() && j + 1 < self.m_line.len() {
                    acc += &self.u_z2_line[i] * &self.m_line[j + 1] * Self::q((j + 1) as i64);
                }
            }
            // u v' contributes all terms except the top one being solved for.
            for i in 1..=alpha {
                let j = alpha - i;
                if i < u0.len() {
                    acc -= &u0[i] * &v[j + 1] * Self::q((j + 1) as i64);
                }
            }
            v[alpha + 1] = acc / (&u0[0] * Self::q((alpha + 1) as i64));
        }
        v
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Unknown {
    M,
    U,
}

/// Solve (L), (C) forward from boundary data to the requested order.
///
/// Validates the boundary tables first: on incompatible data the error names
/// the violated equation, the jet order where it failed, the offending
/// coefficient, and the value that would restore compatibility.
pub fn solve_forward(
    f: &FreeData,
    order: usize,
    variant: CVariant,
    fill: FillPolicy,
) -> Result<JetState, JetError> {
    f.validate_lengths(order)?;

    let forced = f.forced_m_z2_line(order);
    for (a, required) in forced.iter().enumerate().skip(1) {
        if &f.m_z2_line[a] != required {
            return Err(JetError::Compatibility {
                order: a + 1,
                equation: format!("(L) restricted to z2 = 0, coefficient of z1^{}", a - 1),
                coefficient: format!("m_z2(z1, 0) jet of index {a}"),
                required: required.clone(),
                supplied: f.m_z2_line[a].clone(),
            });
        }
    }

    let mut m = Series2::zero(order);
    let mut u = Series2::zero(order);
    m.set(0, 0, f.m_line[0].clone());
    u.set(0, 0, f.u_line[0].clone());
    if order >= 1 {
        m.set(1, 0, f.m_line[1].clone());
        m.set(0, 1, f.m_z2_line[0].clone());
        u.set(1, 0, f.u_line[1].clone());
        u.set(0, 1, f.u_z2_line[0].clone());
    }

    for n in 2..=order {
        solve_order(&mut m, &mut u, n, variant, f, fill)?;
    }

    JetState::new(m, u, variant)
}

/// Columns of the order-`n` affine system, in elimination order.
///
/// Interior jets of `m` first (each is the unique degree-`n` unknown of one
/// (L)-row), then the transverse jet `m_{(0,n)}` (pivoted by the last
/// (C)-row), then interior jets of `u`, then the four free columns.
fn order_columns(n: usize) -> Vec<(Unknown, usize, usize)> {
    let mut cols = Vec::with_capacity(2 * n + 2);
    for b in 1..n {
        cols.push((Unknown::M, n - b, b));
    }
    cols.push((Unknown::M, 0, n));
    for b in 2..n {
        cols.push((Unknown::U, n - b, b));
    }
    cols.push((Unknown::U, 0, n));
    cols.push((Unknown::U, n - 1, 1));
    cols.push((Unknown::U, n, 0));
    cols.push((Unknown::M, n, 0));
    cols
}

/// Taylor coefficients of the cleared residuals `u * (L)` and `u^2 * (C)`
/// on the layer of total degree `n - 2`, as one flat row vector.
fn cleared_layer(m: &Series2, u: &Series2, variant: CVariant, n: usize) -> Vec<BigRational> {
    let out = n - 2;
    let m_x = m.dx();
    let m_y = m.dy();
    let u_x = u.dx();
    let u_y = u.dy();

    // u * (L):  u m_xy - u_x m_y - u_y m_x.
    let e_l = u
        .mul(&m_x.dy())
        .sub(&u_x.mul(&m_y))
        .sub(&u_y.mul(&m_x))
        .truncate(out);

    // u^2 * (C):  u^2 m_yy - u u_y m_y + u u_x m_x - [m] (u^4 + u Lap u - |grad u|^2).
    let lap = u_x.dx().add(&u_y.dy());
    let grad_sq = u_x.mul(&u_x).add(&u_y.mul(&u_y));
    let u2 = u.mul(u);
    let curvature = u2.mul(&u2).add(&u.mul(&lap)).sub(&grad_sq).truncate(out);
    let curvature_term = match variant {
        CVariant::Derived => m.truncate(out).mul(&curvature),
        CVariant::Printed => curvature,
    };
    let e_c = u2
        .mul(&m_y.dy())
        .sub(&u.mul(&u_y).mul(&m_y))
        .add(&u.mul(&u_x).mul(&m_x))
        .sub(&curvature_term)
        .truncate(out);

    let mut row = Vec::with_capacity(2 * (n - 1));
    for series in [&e_l, &e_c] {
        for b in 0..=out {
            row.push(series.coeff(out - b, b));
        }
    }
    row
}

fn solve_order(
    m: &mut Series2,
    u: &mut Series2,
    n: usize,
    variant: CVariant,
    f: &FreeData,
    fill: FillPolicy,
) -> Result<(), JetError> {
    let cols = order_columns(n);
    let n_rows = 2 * (n - 1);

    let write = |m: &mut Series2, u: &mut Series2, col: usize, value: BigRational| {
        let (kind, a, b) = cols[col];
        match kind {
            Unknown::M => m.set(a, b, value),
            Unknown::U => u.set(a, b, value),
        }
    };

    // Affine extraction by exact probing: constant term with the layer
    // zeroed, then one unit probe per column.
    let base = cleared_layer(m, u, variant, n);
    let mut matrix = vec![vec![BigRational::zero(); cols.len()]; n_rows];
    for (j, _) in cols.iter().enumerate() {
        write(m, u, j, BigRational::one());
        let probed = cleared_layer(m, u, variant, n);
        write(m, u, j, BigRational::zero());
        for (i, row) in matrix.iter_mut().enumerate() {
            row[j] = &probed[i] - &base[i];
        }
    }
    let rhs: Vec<BigRational> = base.iter().map(|c| -c).collect();

    let solution = solve_linear_q(&matrix, &rhs, cols.len())
        .expect("order-n system is consistent once boundary data passed validation");
    assert_eq!(
        solution.free,
        vec![cols.len() - 4, cols.len() - 3, cols.len() - 2, cols.len() - 1],
        "pivot structure of the order-{n} system changed"
    );

    // Free values: the three boundary jets, plus the transverse fill.
    let transverse = match fill {
        FillPolicy::Zero => BigRational::zero(),
        FillPolicy::Seeded(seed) => {
            let mut sampler = Sampler::new(seed).fork(n as u64);
            let numer = sampler.int_in(-3, 3);
            BigRational::from_integer(numer.into())
        }
    };
    let free_values = [
        transverse,
        f.u_z2_line[n - 1].clone(),
        f.u_line[n].clone(),
        f.m_line[n].clone(),
    ];

    let mut values = solution.particular.clone();
    for (k, fv) in free_values.iter().enumerate() {
        if fv.is_zero() {
            continue;
        }
        for (j, v) in values.iter_mut().enumerate() {
            *v += fv * &solution.nullspace[k][j];
        }
    }
    for (j, value) in values.into_iter().enumerate() {
        write(m, u, j, value);
    }

    debug_assert_eq!(
        m.coeff(n - 1, 1),
        f.m_z2_line[n - 1],
        "solved mixed jet must agree with the validated boundary table"
    );
    Ok(())
}

/// Draw boundary data that passes validation, with jets in `[-3, 3]`.
///
/// Free jets are drawn uniformly from the integer box by rejection (`u(0,0)`
/// redrawn until positive, `m(0,0)` until nonzero); the constrained jets of
/// `m_{z2}(z1, 0)` are then completed by the recurrence of
/// [`FreeData::forced_m_z2_line`], so the result is always admissible.
pub fn random_admissible(seed: u64, order: usize) -> FreeData {
    let mut sampler = Sampler::new(seed).fork(0x1e75);
    let mut draw = || BigRational::from_integer(sampler.int_in(-3, 3).into());

    let mut m_line: Vec<BigRational> = (0..=order).map(|_| draw()).collect();
    while m_line[0].is_zero() {
        m_line[0] = draw();
    }
    let mut u_line: Vec<BigRational> = (0..=order).map(|_| draw()).collect();
    while !u_line[0].is_positive() {
        u_line[0] = draw();
    }
    let u_z2_line: Vec<BigRational> = (0..order.max(1)).map(|_| draw()).collect();
    let mut m_z2_line = vec![BigRational::zero(); order.max(1)];
    m_z2_line[0] = draw();

    let mut f = FreeData {
        m_line,
        m_z2_line,
        u_line,
        u_z2_line,
    };
    f.m_z2_line = f.forced_m_z2_line(order);
    f
}

/// Convenience wrapper matching the common call shape: derived variant,
/// seeded fill.
pub fn solve_forward_seeded(f: &FreeData, order: usize, seed: u64) -> Result<JetState, JetError> {
    solve_forward(f, order, CVariant::Derived, FillPolicy::Seeded(seed))
}

/// Reference check used in tests: a state solves the system iff its exact
/// residuals vanish.
pub fn is_exact_solution(state: &JetState) -> Result<bool, JetError> {
    Ok(residual_jets(state.m(), state.u(), state.variant())?.is_zero())
}
