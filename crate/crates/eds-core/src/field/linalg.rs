//! Exact linear algebra over rational expressions and rational numbers.
//!
//! The public entry point is [`solve_linear`]: fraction-free Bareiss
//! elimination over cleared-denominator polynomial rows with first-nonzero
//! column pivoting, returning a particular solution together with a basis of
//! the homogeneous solution space. When exact polynomial division is
//! obstructed by trigonometric reduction (the coefficient ring is then a
//! quotient ring whose representatives need not divide term-wise), the
//! solver falls back to ordinary division-based elimination over rational
//! expressions; zero tests remain exact either way, so the answer does not
//! change — only the intermediate arithmetic does.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::ratexpr::RatExpr;
use super::workspace::Workspace;
use super::FieldError;

/// Complete description of the solution set of `A x = b`.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    /// One entry per unknown; free unknowns are set to zero.
    pub particular: Vec<RatExpr>,
    /// Basis of the homogeneous solution space, one vector per free unknown.
    pub nullspace: Vec<Vec<RatExpr>>,
    /// Column indices that carry pivots, in elimination order.
    pub pivots: Vec<usize>,
    /// Column indices of the free unknowns.
    pub free: Vec<usize>,
    /// Rank of the coefficient matrix.
    pub rank: usize,
}

/// Pivot selection rule for the elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// First row with a nonzero entry in the current column.
    FirstNonzero,
    /// Row whose entry in the current column has the simplest expression
    /// (constants first, then fewest terms, then lowest degree). Keeps
    /// intermediate expressions small when coefficients are symbolic.
    Simplest,
}

/// Solve `A x = b` exactly. `a` has one row per equation with `n_unknowns`
/// entries each; inconsistency is reported with the index of the offending
/// equation.
pub fn solve_linear(
    ws: &Workspace,
    a: &[Vec<RatExpr>],
    b: &[RatExpr],
    n_unknowns: usize,
) -> Result<LinearSolution, FieldError> {
    solve_linear_with(ws, a, b, n_unknowns, PivotRule::FirstNonzero)
}

/// [`solve_linear`] with an explicit pivot rule.
pub fn solve_linear_with(
    ws: &Workspace,
    a: &[Vec<RatExpr>],
    b: &[RatExpr],
    n_unknowns: usize,
    rule: PivotRule,
) -> Result<LinearSolution, FieldError> {
    assert_eq!(a.len(), b.len(), "one right-hand side per equation");
    for row in a {
        assert_eq!(row.len(), n_unknowns, "ragged coefficient matrix");
    }
    // Clear denominators row by row so Bareiss can run over polynomials.
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(a.len());
    for (row, rhs) in a.iter().zip(b) {
        let mut lcm = rhs.den().clone();
        for e in row {
            lcm = lcm.mul(e.den()).divexact(&lcm.gcd(e.den())).expect("gcd divides");
        }
        let mut cleared: Vec<Poly> = Vec::with_capacity(n_unknowns + 1);
        for e in row {
            let factor = lcm.divexact(e.den()).expect("lcm divisible by denominator");
            cleared.push(e.num().mul(&factor).reduce_circle(&ws.circle_pairs()));
        }
        let factor = lcm.divexact(rhs.den()).expect("lcm divisible by denominator");
        cleared.push(rhs.num().mul(&factor).reduce_circle(&ws.circle_pairs()));
        rows.push(cleared);
    }

    let echelon = match bareiss_forward(ws, rows.clone(), n_unknowns, rule) {
        Some(e) => e,
        None => gauss_forward(ws, rows, n_unknowns, rule),
    };
    back_substitute(ws, echelon, n_unknowns)
}

/// Row-echelon data produced by forward elimination (entries as rational
/// expressions so back-substitution is uniform).
struct Echelon {
    rows: Vec<Vec<RatExpr>>,
    perm: Vec<usize>,
    pivots: Vec<usize>,
}

/// Fraction-free Bareiss forward elimination over polynomial rows. Returns
/// `None` when an exact division is obstructed (only possible under
/// trigonometric reduction).
fn bareiss_forward(
    ws: &Workspace,
    mut rows: Vec<Vec<Poly>>,
    n_unknowns: usize,
    rule: PivotRule,
) -> Option<Echelon> {
    let m = rows.len();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = Poly::one();
    let mut r = 0usize;
    let pairs = ws.circle_pairs();
    for c in 0..n_unknowns {
        let pivot_row = select_pivot_poly(&rows, r, c, rule);
        let Some(i) = pivot_row else { continue };
        rows.swap(r, i);
        perm.swap(r, i);
        for i in (r + 1)..m {
            if rows[i][c].is_zero() {
                // Still rescale the row so the Bareiss invariant holds.
                for j in 0..=n_unknowns {
                    if j == c {
                        continue;
                    }
                    let prod = rows[r][c].mul(&rows[i][j]).reduce_circle(&pairs);
                    rows[i][j] = prod.divexact(&prev)?;
                }
                continue;
            }
            for j in 0..=n_unknowns {
                if j == c {
                    continue;
                }
                let t = rows[r][c]
                    .mul(&rows[i][j])
                    .sub(&rows[i][c].mul(&rows[r][j]))
                    .reduce_circle(&pairs);
                rows[i][j] = t.divexact(&prev)?;
            }
            rows[i][c] = Poly::zero();
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    let rows = rows
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|p| RatExpr::from_poly(ws, p))
                .collect()
        })
        .collect();
    Some(Echelon { rows, perm, pivots })
}

/// Division-based forward elimination over rational expressions; always
/// succeeds. Produces the same pivot structure as the fraction-free path.
fn gauss_forward(
    ws: &Workspace,
    rows_poly: Vec<Vec<Poly>>,
    n_unknowns: usize,
    rule: PivotRule,
) -> Echelon {
    let mut rows: Vec<Vec<RatExpr>> = rows_poly
        .into_iter()
        .map(|row| row.into_iter().map(|p| RatExpr::from_poly(ws, p)).collect())
        .collect();
    let m = rows.len();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..n_unknowns {
        let pivot_row = select_pivot_expr(&rows, r, c, rule);
        let Some(i) = pivot_row else { continue };
        rows.swap(r, i);
        perm.swap(r, i);
        let pivot = rows[r][c].clone();
        for i in (r + 1)..m {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].div(&pivot).expect("pivot nonzero");
            for j in 0..=n_unknowns {
                if j == c {
                    continue;
                }
                let sub = factor.mul(&rows[r][j]);
                rows[i][j] = rows[i][j].sub(&sub);
            }
            rows[i][c] = RatExpr::zero(ws);
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    Echelon { rows, perm, pivots }
}

fn select_pivot_poly(rows: &[Vec<Poly>], r: usize, c: usize, rule: PivotRule) -> Option<usize> {
    match rule {
        PivotRule::FirstNonzero => (r..rows.len()).find(|&i| !rows[i][c].is_zero()),
        PivotRule::Simplest => (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| poly_complexity(&rows[i][c])),
    }
}

fn select_pivot_expr(rows: &[Vec<RatExpr>], r: usize, c: usize, rule: PivotRule) -> Option<usize> {
    match rule {
        PivotRule::FirstNonzero => (r..rows.len()).find(|&i| !rows[i][c].is_zero()),
        PivotRule::Simplest => (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| expr_complexity(&rows[i][c])),
    }
}

fn poly_complexity(p: &Poly) -> (u8, usize, u32) {
    (
        if p.is_constant() { 0 } else { 1 },
        p.num_terms(),
        p.total_degree(),
    )
}

fn expr_complexity(e: &RatExpr) -> (u8, usize, u32) {
    (
        if e.is_constant() { 0 } else { 1 },
        e.num().num_terms() + e.den().num_terms(),
        e.num().total_degree() + e.den().total_degree(),
    )
}

fn back_substitute(
    ws: &Workspace,
    echelon: Echelon,
    n_unknowns: usize,
) -> Result<LinearSolution, FieldError> {
    let Echelon { rows, perm, pivots } = echelon;
    let rank = pivots.len();
    // Rows below the last pivot have all-zero coefficients; a nonzero
    // right-hand side there means the system is inconsistent.
    for (i, row) in rows.iter().enumerate().skip(rank) {
        debug_assert!(row[..n_unknowns].iter().all(|e| e.is_zero()));
        if !row[n_unknowns].is_zero() {
            return Err(FieldError::InconsistentSystem { equation: perm[i] });
        }
    }
    let free: Vec<usize> = (0..n_unknowns).filter(|c| !pivots.contains(c)).collect();

    let solve_upper = |rhs_of_row: &dyn Fn(usize) -> RatExpr,
                       free_values: &dyn Fn(usize) -> RatExpr|
     -> Vec<RatExpr> {
        let mut x: Vec<RatExpr> = (0..n_unknowns).map(|_| RatExpr::zero(ws)).collect();
        for &f in &free {
            x[f] = free_values(f);
        }
        for (r, &c) in pivots.iter().enumerate().rev() {
            let mut acc = rhs_of_row(r);
            for j in (c + 1)..n_unknowns {
                if rows[r][j].is_zero() || x[j].is_zero() {
                    continue;
                }
                acc = acc.sub(&rows[r][j].mul(&x[j]));
            }
            x[c] = acc.div(&rows[r][c]).expect("pivot entry nonzero");
        }
        x
    };

    let particular = solve_upper(
        &|r| rows[r][n_unknowns].clone(),
        &|_| RatExpr::zero(ws),
    );
    let mut nullspace = Vec::with_capacity(free.len());
    for &f in &free {
        let vec = solve_upper(
            &|_| RatExpr::zero(ws),
            &|g| {
                if g == f {
                    RatExpr::one(ws)
                } else {
                    RatExpr::zero(ws)
                }
            },
        );
        nullspace.push(vec);
    }
    Ok(LinearSolution {
        particular,
        nullspace,
        pivots,
        free,
        rank,
    })
}

/// Gauss–Jordan inverse of a square matrix of rational expressions, using
/// simplest-entry pivoting. `None` when the matrix is singular.
pub fn invert_ratexpr(ws: &Workspace, m: &[Vec<RatExpr>]) -> Option<Vec<Vec<RatExpr>>> {
    let n = m.len();
    let mut a: Vec<Vec<RatExpr>> = m.to_vec();
    let mut inv: Vec<Vec<RatExpr>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { RatExpr::one(ws) } else { RatExpr::zero(ws) })
                .collect()
        })
        .collect();
    for c in 0..n {
        let pivot_row = (c..n)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| expr_complexity(&a[i][c]))?;
        a.swap(c, pivot_row);
        inv.swap(c, pivot_row);
        let pivot = a[c][c].clone();
        for j in 0..n {
            a[c][j] = a[c][j].div(&pivot).expect("pivot nonzero");
            inv[c][j] = inv[c][j].div(&pivot).expect("pivot nonzero");
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for j in 0..n {
                let s = factor.mul(&a[c][j]);
                a[i][j] = a[i][j].sub(&s);
                let s = factor.mul(&inv[c][j]);
                inv[i][j] = inv[i][j].sub(&s);
            }
        }
    }
    Some(inv)
}

/// Rank of a rational matrix by exact elimination.
pub fn rank_q(m: &[Vec<BigRational>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let n_cols = m[0].len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut r = 0usize;
    for c in 0..n_cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in (r + 1)..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let factor = &a[i][c] / &pivot;
            for j in c..n_cols {
                let sub = &factor * &a[r][j];
                a[i][j] -= sub;
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Solution of a rational linear system, mirroring [`LinearSolution`] over
/// plain rationals.
#[derive(Clone, Debug)]
pub struct QLinearSolution {
    pub particular: Vec<BigRational>,
    pub nullspace: Vec<Vec<BigRational>>,
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
    pub rank: usize,
}

/// Solve `A x = b` over the rationals.
pub fn solve_linear_q(
    a: &[Vec<BigRational>],
    b: &[BigRational],
    n_unknowns: usize,
) -> Result<QLinearSolution, FieldError> {
    assert_eq!(a.len(), b.len(), "one right-hand side per equation");
    let mut rows: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n_unknowns, "ragged coefficient matrix");
            let mut full = row.clone();
            full.push(rhs.clone());
            full
        })
        .collect();
    let m = rows.len();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..n_unknowns {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        perm.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in (r + 1)..m {
            if rows[i][c].is_zero() {
                continue;
            }
            let factor = &rows[i][c] / &pivot;
            for j in c..=n_unknowns {
                let sub = &factor * &rows[r][j];
                rows[i][j] -= sub;
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    for i in r..m {
        if !rows[i][n_unknowns].is_zero() {
            return Err(FieldError::InconsistentSystem { equation: perm[i] });
        }
    }
    let rank = pivots.len();
    let free: Vec<usize> = (0..n_unknowns).filter(|c| !pivots.contains(c)).collect();
    let solve_upper = |rhs_col: bool, free_one: Option<usize>| -> Vec<BigRational> {
        let mut x: Vec<BigRational> = vec![BigRational::zero(); n_unknowns];
        if let Some(f) = free_one {
            x[f] = BigRational::one();
        }
        for (row_i, &c) in pivots.iter().enumerate().rev() {
            let mut acc = if rhs_col {
                rows[row_i][n_unknowns].clone()
            } else {
                BigRational::zero()
            };
            for j in (c + 1)..n_unknowns {
                if rows[row_i][j].is_zero() || x[j].is_zero() {
                    continue;
                }
                acc -= &rows[row_i][j] * &x[j];
            }
            x[c] = acc / &rows[row_i][c];
        }
        x
    };
    let particular = solve_upper(true, None);
    let nullspace = free.iter().map(|&f| solve_upper(false, Some(f))).collect();
    Ok(QLinearSolution {
        particular,
        nullspace,
        pivots,
        free,
        rank,
    })
}
