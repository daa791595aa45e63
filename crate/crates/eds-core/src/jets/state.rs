//! Jet states for the linked pair of second-order equations (L) and (C).
//!
//! The unknowns are two functions of the coordinates `(z1, z2)`: a metric
//! invariant `m` and a positive conformal factor `u`.  Writing
//! `gamma_i = u_{z_i} / u` for the logarithmic derivatives, the equations are
//!
//! ```text
//! (L)  m_{z1 z2} = gamma_1 m_{z2} + gamma_2 m_{z1}
//! (C)  m_{z2 z2} = gamma_2 m_{z2} - gamma_1 m_{z1} + m (u^2 + div gamma)
//! ```
//!
//! where `div gamma = (gamma_1)_{z1} + (gamma_2)_{z2}`.  A second, selectable
//! form of (C) omits the factor `m` on its final term; that transcription
//! appears in the printed source derivation this library mechanizes, and the
//! audit tooling reports exactly this discrepancy.  A [`JetState`] stores the
//! Taylor coefficients of `(m, u)` at the origin through a fixed order and
//! can evaluate the residuals of (L) and (C) exactly on those jets.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;
use std::str::FromStr;

use super::series::{rational_to_f64, Series2};
use super::JetError;

/// Which form of the transverse equation (C) is in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CVariant {
    /// The form consistent with the structure equations: the curvature term
    /// carries the factor `m`.
    Derived,
    /// The form as printed in the source derivation, with the factor `m`
    /// missing from the curvature term.
    Printed,
}

impl CVariant {
    /// Stable label used in reports and on the command line.
    pub fn label(self) -> &'static str {
        match self {
            CVariant::Derived => "derived",
            CVariant::Printed => "paper",
        }
    }

    /// Parse a command-line label.
    pub fn parse(text: &str) -> Option<CVariant> {
        match text {
            "derived" => Some(CVariant::Derived),
            "paper" | "printed" => Some(CVariant::Printed),
            _ => None,
        }
    }
}

impl fmt::Display for CVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Taylor coefficients of `(m, u)` at the origin through a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetState {
    order: usize,
    variant: CVariant,
    m: Series2,
    u: Series2,
}

/// Exact residual series of (L) and (C), truncated two orders below the state.
#[derive(Clone, Debug)]
pub struct Residuals {
    /// Residual of the mixed-derivative equation (L).
    pub l: Series2,
    /// Residual of the transverse equation (C), in the state's variant.
    pub c: Series2,
}

impl Residuals {
    /// True when both residuals vanish identically through their order.
    pub fn is_zero(&self) -> bool {
        self.l.is_zero() && self.c.is_zero()
    }
}

/// Point values of `(m, u)` and their first partials from a jet state.
#[derive(Clone, Copy, Debug)]
pub struct JetSample {
    pub m: f64,
    pub u: f64,
    pub m_z1: f64,
    pub m_z2: f64,
    pub u_z1: f64,
    pub u_z2: f64,
}

impl JetState {
    /// Wrap coefficient tables, enforcing `u(0) > 0` and `m(0) != 0`.
    pub fn new(m: Series2, u: Series2, variant: CVariant) -> Result<Self, JetError> {
        if m.order() != u.order() {
            return Err(JetError::Precondition {
                what: format!(
                    "m and u must share a truncation order (got {} and {})",
                    m.order(),
                    u.order()
                ),
            });
        }
        if !u.coeff(0, 0).is_positive() {
            return Err(JetError::Precondition {
                what: format!("u(0, 0) must be positive, got {}", u.coeff(0, 0)),
            });
        }
        if m.coeff(0, 0).is_zero() {
            return Err(JetError::Precondition {
                what: "m(0, 0) must be nonzero".to_string(),
            });
        }
        let order = m.order();
        Ok(JetState {
            order,
            variant,
            m,
            u,
        })
    }

    /// Truncation order of the stored jets.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Which form of (C) the state is measured against.
    pub fn variant(&self) -> CVariant {
        self.variant
    }

    /// Coefficient table of `m`.
    pub fn m(&self) -> &Series2 {
        &self.m
    }

    /// Coefficient table of `u`.
    pub fn u(&self) -> &Series2 {
        &self.u
    }

    /// Copy of the state truncated to a lower order.
    pub fn truncate(&self, order: usize) -> Result<JetState, JetError> {
        if order > self.order {
            return Err(JetError::Precondition {
                what: format!(
                    "cannot truncate order-{} state to order {order}",
                    self.order
                ),
            });
        }
        JetState::new(self.m.truncate(order), self.u.truncate(order), self.variant)
    }

    /// Exact residuals of (L) and (C) through jets of order `N - 2`.
    pub fn residuals(&self) -> Result<Residuals, JetError> {
        residual_jets(&self.m, &self.u, self.variant)
    }

    /// Evaluate `(m, u)` and their first partials at a point.
    ///
    /// Fails when the point leaves the declared trust radius `h_bound`
    /// (sup-norm box around the expansion origin).
    pub fn sample(&self, z1: f64, z2: f64, h_bound: f64) -> Result<JetSample, JetError> {
        if z1.abs() > h_bound || z2.abs() > h_bound {
            return Err(JetError::OutsideTrustRadius {
                z1,
                z2,
                h_bound,
            });
        }
        Ok(JetSample {
            m: self.m.eval_f64(z1, z2),
            u: self.u.eval_f64(z1, z2),
            m_z1: self.m.dx().eval_f64(z1, z2),
            m_z2: self.m.dy().eval_f64(z1, z2),
            u_z1: self.u.dx().eval_f64(z1, z2),
            u_z2: self.u.dy().eval_f64(z1, z2),
        })
    }

    /// Crude bound on the truncation error committed inside radius `r`.
    ///
    /// Sums coefficient magnitudes on the last two retained layers at the
    /// given radius and amplifies by `(N + 1)^2`, the factor two derivatives
    /// can introduce when the samples feed structure-equation residuals.
    /// Heuristic by design: it bands the tail of a series assumed to keep
    /// roughly geometric layer decay, which a ratio test on the retained
    /// layers would also give.
    pub fn tail_estimate(&self, r: f64) -> f64 {
        let n = self.order;
        let mut band = 0.0;
        for d in [n.saturating_sub(1), n] {
            let layer = self.m.layer_abs_sum(d) + self.u.layer_abs_sum(d);
            band += layer * r.powi(d as i32);
        }
        band * ((n + 1) * (n + 1)) as f64
    }

    /// Render the coefficient tables as a plain-text table.
    ///
    /// The format is line-oriented: a header with the order and variant, then
    /// one `(a, b, value)` row per retained coefficient of `m` and of `u`,
    /// with values written as `numerator/denominator`.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("order {}\n", self.order));
        out.push_str(&format!("variant {}\n", self.variant.label()));
        for (name, series) in [("m", &self.m), ("u", &self.u)] {
            out.push_str(name);
            out.push('\n');
            for (a, b, c) in series.iter() {
                out.push_str(&format!("({a}, {b}, {c})\n"));
            }
        }
        out
    }

    /// Parse a table produced by [`JetState::to_table`].
    pub fn from_table(text: &str) -> Result<JetState, JetError> {
        let mut order: Option<usize> = None;
        let mut variant = CVariant::Derived;
        let mut m: Option<Series2> = None;
        let mut u: Option<Series2> = None;
        let mut current: Option<&mut Series2> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let fail = |message: String| JetError::Table {
                line: i + 1,
                message,
            };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("order ") {
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| fail(format!("unreadable order `{rest}`")))?;
                order = Some(n);
                m = Some(Series2::zero(n));
                u = Some(Series2::zero(n));
                current = None;
                continue;
            }
            if let Some(rest) = line.strip_prefix("variant ") {
                variant = CVariant::parse(rest.trim())
                    .ok_or_else(|| fail(format!("unknown variant `{}`", rest.trim())))?;
                continue;
            }
            if line == "m" || line == "u" {
                if order.is_none() {
                    return Err(fail("table must declare its order first".to_string()));
                }
                // Reborrow the right table; both exist once the order is set.
                current = if line == "m" {
                    m.as_mut().map(|s| s as &mut Series2)
                } else {
                    u.as_mut().map(|s| s as &mut Series2)
                };
                continue;
            }
            let body = line
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| fail(format!("expected `(a, b, value)` row, got `{line}`")))?;
            let parts: Vec<&str> = body.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(fail(format!("expected three fields, got {}", parts.len())));
            }
            let a: usize = parts[0]
                .parse()
                .map_err(|_| fail(format!("unreadable exponent `{}`", parts[0])))?;
            let b: usize = parts[1]
                .parse()
                .map_err(|_| fail(format!("unreadable exponent `{}`", parts[1])))?;
            let value = BigRational::from_str(parts[2])
                .map_err(|_| fail(format!("unreadable rational `{}`", parts[2])))?;
            let table = current
                .as_deref_mut()
                .ok_or_else(|| fail("coefficient row before any `m`/`u` header".to_string()))?;
            if a + b > table.order() {
                return Err(fail(format!(
                    "coefficient ({a}, {b}) exceeds declared order {}",
                    table.order()
                )));
            }
            table.set(a, b, value);
        }
        match (m, u) {
            (Some(m), Some(u)) => JetState::new(m, u, variant),
            _ => Err(JetError::Table {
                line: 0,
                message: "table never declared an order".to_string(),
            }),
        }
    }
}

/// Exact residual series of (L) and (C) on explicit coefficient tables.
///
/// Both residuals are truncated at order `N - 2`, the largest order the
/// second derivatives of order-`N` jets determine.  Fails when `u` has zero
/// constant term, since the logarithmic derivatives divide by `u`.
pub fn residual_jets(
    m: &Series2,
    u: &Series2,
    variant: CVariant,
) -> Result<Residuals, JetError> {
    let n = m.order().min(u.order());
    let out = n.saturating_sub(2);
    let inv_u = u.recip().ok_or(JetError::SingularSeries)?;
    let gamma1 = u.dx().mul(&inv_u);
    let gamma2 = u.dy().mul(&inv_u);
    let div_gamma = gamma1.dx().add(&gamma2.dy()).truncate(out);

    let m_x = m.dx();
    let m_y = m.dy();
    let l = m_x
        .dy()
        .sub(&gamma1.mul(&m_y))
        .sub(&gamma2.mul(&m_x))
        .truncate(out);

    let curvature = u.mul(u).truncate(out).add(&div_gamma);
    let curvature_term = match variant {
        CVariant::Derived => m.truncate(out).mul(&curvature),
        CVariant::Printed => curvature,
    };
    let c = m_y
        .dy()
        .sub(&gamma2.mul(&m_y).truncate(out))
        .add(&gamma1.mul(&m_x).truncate(out))
        .sub(&curvature_term)
        .truncate(out);

    Ok(Residuals { l, c })
}

/// Render a residual table for reports: nonzero rows only.
pub fn residual_rows(residuals: &Residuals) -> Vec<String> {
    let mut rows = Vec::new();
    for (label, series) in [("L", &residuals.l), ("C", &residuals.c)] {
        for (a, b, c) in series.iter() {
            if !c.is_zero() {
                rows.push(format!("{label} @ z1^{a} z2^{b}: {c}"));
            }
        }
    }
    rows
}

/// Largest magnitude among retained residual coefficients, as a float.
pub fn residual_max(residuals: &Residuals) -> f64 {
    let mut max = 0.0f64;
    for series in [&residuals.l, &residuals.c] {
        for (_, _, c) in series.iter() {
            max = max.max(rational_to_f64(&c.abs()));
        }
    }
    max
}
