//! Exact truncated bivariate power series.
//!
//! A [`Series2`] holds the Taylor coefficients `c[a][b]` of a function of two
//! variables through a fixed total degree, with exact rational arithmetic.
//! All operations truncate to the smaller order of their operands, so a value
//! of order `N` is always the honest degree-`N` Taylor polynomial of whatever
//! expression produced it.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Number of coefficients of total degree strictly below `d`.
fn layer_offset(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Truncated power series `sum c_{ab} x^a y^b` over `a + b <= order`.
///
/// Coefficients are stored densely, ordered by total degree and then by
/// ascending power of `y` within each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series2 {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl Series2 {
    /// The zero series truncated at `order`.
    pub fn zero(order: usize) -> Self {
        Series2 {
            order,
            coeffs: vec![BigRational::zero(); layer_offset(order + 1)],
        }
    }

    /// The constant series `c` truncated at `order`.
    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Series2::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Truncation order (maximal retained total degree).
    pub fn order(&self) -> usize {
        self.order
    }

    fn index(a: usize, b: usize) -> usize {
        layer_offset(a + b) + b
    }

    /// Coefficient of `x^a y^b`; zero beyond the truncation order.
    pub fn coeff(&self, a: usize, b: usize) -> BigRational {
        if a + b > self.order {
            BigRational::zero()
        } else {
            self.coeffs[Self::index(a, b)].clone()
        }
    }

    /// Overwrite the coefficient of `x^a y^b`.
    ///
    /// Panics if `a + b` exceeds the truncation order.
    pub fn set(&mut self, a: usize, b: usize, value: BigRational) {
        assert!(
            a + b <= self.order,
            "coefficient ({a}, {b}) lies beyond truncation order {}",
            self.order
        );
        self.coeffs[Self::index(a, b)] = value;
    }

    /// Copy truncated (or zero-extended) to a new order.
    pub fn truncate(&self, order: usize) -> Series2 {
        let mut out = Series2::zero(order);
        for (a, b, c) in self.iter() {
            if a + b <= order {
                out.coeffs[Self::index(a, b)] = c.clone();
            }
        }
        out
    }

    /// Iterate `(a, b, coefficient)` by total degree, then ascending `b`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        (0..=self.order).flat_map(move |d| {
            (0..=d).map(move |b| (d - b, b, &self.coeffs[layer_offset(d) + b]))
        })
    }

    /// True when every retained coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Sum, truncated to the smaller operand order.
    pub fn add(&self, rhs: &Series2) -> Series2 {
        let order = self.order.min(rhs.order);
        let mut out = Series2::zero(order);
        for i in 0..out.coeffs.len() {
            out.coeffs[i] = &self.coeffs[i] + &rhs.coeffs[i];
        }
        out
    }

    /// Difference, truncated to the smaller operand order.
    pub fn sub(&self, rhs: &Series2) -> Series2 {
        let order = self.order.min(rhs.order);
        let mut out = Series2::zero(order);
        for i in 0..out.coeffs.len() {
            out.coeffs[i] = &self.coeffs[i] - &rhs.coeffs[i];
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> Series2 {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = -c.clone();
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &BigRational) -> Series2 {
        let mut out = self.clone();
        for v in &mut out.coeffs {
            *v = &*v * c;
        }
        out
    }

    /// Product, truncated to the smaller operand order.
    pub fn mul(&self, rhs: &Series2) -> Series2 {
        let order = self.order.min(rhs.order);
        let mut out = Series2::zero(order);
        for (a, b, ca) in self.iter() {
            if a + b > order || ca.is_zero() {
                continue;
            }
            for (c, d, cb) in rhs.iter() {
                if a + b + c + d > order {
                    continue;
                }
                if cb.is_zero() {
                    continue;
                }
                let idx = Self::index(a + c, b + d);
                out.coeffs[idx] += ca * cb;
            }
        }
        out
    }

    /// Partial derivative in the first variable; the order drops by one.
    pub fn dx(&self) -> Series2 {
        let order = self.order.saturating_sub(1);
        let mut out = Series2::zero(order);
        for (a, b, c) in self.iter() {
            if a >= 1 && a - 1 + b <= order {
                out.coeffs[Self::index(a - 1, b)] =
                    c * BigRational::from_integer(a.into());
            }
        }
        out
    }

    /// Partial derivative in the second variable; the order drops by one.
    pub fn dy(&self) -> Series2 {
        let order = self.order.saturating_sub(1);
        let mut out = Series2::zero(order);
        for (a, b, c) in self.iter() {
            if b >= 1 && a + b - 1 <= order {
                out.coeffs[Self::index(a, b - 1)] =
                    c * BigRational::from_integer(b.into());
            }
        }
        out
    }

    /// Multiplicative inverse, or `None` when the constant term vanishes.
    ///
    /// Computed degree by degree from `self * inv = 1`, so the result is the
    /// exact truncation of the reciprocal.
    pub fn recip(&self) -> Option<Series2> {
        if self.coeffs[0].is_zero() {
            return None;
        }
        let c0 = &self.coeffs[0];
        let mut inv = Series2::zero(self.order);
        inv.coeffs[0] = BigRational::one() / c0;
        for d in 1..=self.order {
            for b in 0..=d {
                let a = d - b;
                // Convolution of all strictly lower-degree inverse terms with self.
                let mut acc = BigRational::zero();
                for i in 0..=a {
                    for j in 0..=b {
                        if i + j == 0 {
                            continue;
                        }
                        let s = &self.coeffs[Self::index(i, j)];
                        if s.is_zero() {
                            continue;
                        }
                        acc += s * &inv.coeffs[Self::index(a - i, b - j)];
                    }
                }
                inv.coeffs[Self::index(a, b)] = -acc / c0;
            }
        }
        Some(inv)
    }

    /// Evaluate the truncated polynomial at a point, in floating point.
    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let mut total = 0.0;
        for (a, b, c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            total += rational_to_f64(c) * x.powi(a as i32) * y.powi(b as i32);
        }
        total
    }

    /// Sum of coefficient magnitudes on the layer of total degree `d`.
    pub fn layer_abs_sum(&self, d: usize) -> f64 {
        if d > self.order {
            return 0.0;
        }
        (0..=d)
            .map(|b| rational_to_f64(&self.coeffs[layer_offset(d) + b].abs()))
            .sum()
    }
}

/// Convert an exact rational to the nearest `f64`.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Fall back on a quotient of float conversions for extreme magnitudes.
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}
