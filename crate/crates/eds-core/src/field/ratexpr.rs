//! Rational expressions: exact quotients of sparse polynomials, kept in a
//! canonical form at all times.
//!
//! Canonical form: the fraction is reduced (numerator and denominator share
//! no nonconstant factor), the denominator has integer coefficients with
//! content one and positive leading coefficient, and for every registered
//! cosine/sine pair the cosine degree is at most one (`cos^2` is rewritten
//! to `1 - sin^2`). With that rewriting the coefficient ring is an integral
//! domain, so a reduced numerator is zero exactly when the expression is.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::workspace::{SymbolId, Workspace};
use super::FieldError;

/// Exact quotient of polynomials tied to a symbol workspace.
#[derive(Clone, Debug)]
pub struct RatExpr {
    ws: Workspace,
    num: Poly,
    den: Poly,
}

impl RatExpr {
    fn normalized(ws: Workspace, num: Poly, den: Poly) -> Result<Self, FieldError> {
        let pairs = ws.circle_pairs();
        let mut num = num.reduce_circle(&pairs);
        let mut den = den.reduce_circle(&pairs);
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatExpr {
                ws,
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        if !g.is_constant() {
            num = num.divexact(&g).expect("gcd divides numerator");
            den = den.divexact(&g).expect("gcd divides denominator");
        }
        // Scale so the denominator is integer-primitive with positive
        // leading coefficient; fold the inverse scale into the numerator.
        let den_canon = den.primitive_normalized();
        let q = ratio_of(&den, &den_canon); // den = q * den_canon
        num = num.scale(&(BigRational::one() / q));
        Ok(RatExpr {
            ws,
            num,
            den: den_canon,
        })
    }

    pub fn new(ws: &Workspace, num: Poly, den: Poly) -> Result<Self, FieldError> {
        Self::normalized(ws.clone(), num, den)
    }

    pub fn from_poly(ws: &Workspace, p: Poly) -> Self {
        Self::normalized(ws.clone(), p, Poly::one()).expect("unit denominator")
    }

    pub fn zero(ws: &Workspace) -> Self {
        Self::from_poly(ws, Poly::zero())
    }

    pub fn one(ws: &Workspace) -> Self {
        Self::from_poly(ws, Poly::one())
    }

    pub fn constant(ws: &Workspace, c: BigRational) -> Self {
        Self::from_poly(ws, Poly::constant(c))
    }

    pub fn from_int(ws: &Workspace, n: i64) -> Self {
        Self::from_poly(ws, Poly::from_int(n))
    }

    pub fn from_ratio(ws: &Workspace, num: i64, den: i64) -> Self {
        assert!(den != 0, "literal rational with zero denominator");
        Self::from_poly(
            ws,
            Poly::constant(BigRational::new(num.into(), den.into())),
        )
    }

    pub fn symbol(ws: &Workspace, id: SymbolId) -> Self {
        Self::from_poly(ws, Poly::symbol(id))
    }

    pub fn workspace(&self) -> &Workspace {
        &self.ws
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    /// The polynomial content when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn symbols(&self) -> Vec<SymbolId> {
        let mut out = self.num.symbols();
        for s in self.den.symbols() {
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out.sort();
        out
    }

    pub fn contains_symbol(&self, sym: SymbolId) -> bool {
        self.num.contains_symbol(sym) || self.den.contains_symbol(sym)
    }

    fn check_ws(&self, other: &RatExpr) {
        assert!(
            self.ws.same_as(&other.ws),
            "rational expressions from different workspaces cannot be combined"
        );
    }

    pub fn add(&self, other: &RatExpr) -> RatExpr {
        self.check_ws(other);
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::normalized(self.ws.clone(), num, den).expect("nonzero denominator product")
    }

    pub fn sub(&self, other: &RatExpr) -> RatExpr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatExpr {
        RatExpr {
            ws: self.ws.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatExpr) -> RatExpr {
        self.check_ws(other);
        Self::normalized(
            self.ws.clone(),
            self.num.mul(&other.num),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominator product")
    }

    pub fn div(&self, other: &RatExpr) -> Result<RatExpr, FieldError> {
        self.check_ws(other);
        Self::normalized(
            self.ws.clone(),
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        )
    }

    pub fn recip(&self) -> Result<RatExpr, FieldError> {
        Self::normalized(self.ws.clone(), self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &BigRational) -> RatExpr {
        if c.is_zero() {
            return Self::zero(&self.ws);
        }
        RatExpr {
            ws: self.ws.clone(),
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i32) -> Result<RatExpr, FieldError> {
        if e >= 0 {
            Self::normalized(
                self.ws.clone(),
                self.num.pow(e as u32),
                self.den.pow(e as u32),
            )
        } else {
            Self::normalized(
                self.ws.clone(),
                self.den.pow((-e) as u32),
                self.num.pow((-e) as u32),
            )
        }
    }

    /// Semantic equality: the difference reduces to zero.
    pub fn equiv(&self, other: &RatExpr) -> bool {
        self.check_ws(other);
        self.num
            .mul(&other.den)
            .sub(&other.num.mul(&self.den))
            .reduce_circle(&self.ws.circle_pairs())
            .is_zero()
    }

    /// Formal partial derivative (quotient rule), treating every symbol as
    /// an independent variable.
    pub fn derivative(&self, sym: SymbolId) -> RatExpr {
        let dn = self.num.derivative(sym);
        let dd = self.den.derivative(sym);
        if dd.is_zero() {
            return Self::normalized(self.ws.clone(), dn, self.den.clone())
                .expect("denominator unchanged");
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let den = self.den.mul(&self.den);
        Self::normalized(self.ws.clone(), num, den).expect("denominator square nonzero")
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(
        &self,
        assignment: &HashMap<SymbolId, BigRational>,
    ) -> Result<BigRational, FieldError> {
        for s in self.symbols() {
            if !assignment.contains_key(&s) {
                return Err(FieldError::UnassignedSymbol {
                    name: self.ws.name(s),
                });
            }
        }
        let d = self.den.eval(assignment).expect("assignment checked");
        if d.is_zero() {
            return Err(FieldError::EvaluationSingularity);
        }
        let n = self.num.eval(assignment).expect("assignment checked");
        Ok(n / d)
    }

    /// Replace one symbol by an expression.
    pub fn substitute(&self, sym: SymbolId, value: &RatExpr) -> Result<RatExpr, FieldError> {
        self.check_ws(value);
        if !self.contains_symbol(sym) {
            return Ok(self.clone());
        }
        let (n_num, n_den) = self.num.substitute(sym, &value.num, &value.den);
        let (d_num, d_den) = self.den.substitute(sym, &value.num, &value.den);
        // (n_num/n_den) / (d_num/d_den)
        Self::normalized(self.ws.clone(), n_num.mul(&d_den), n_den.mul(&d_num))
    }

    /// Apply a rewrite table repeatedly until no left-hand symbol remains.
    ///
    /// Rules whose right-hand sides mention other rewritten symbols are
    /// supported; a cycle (or a chain longer than 64 passes) is an error.
    pub fn apply_rewrites(&self, rules: &[(SymbolId, RatExpr)]) -> Result<RatExpr, FieldError> {
        let mut cur = self.clone();
        for _pass in 0..64 {
            let mut touched = false;
            for (sym, value) in rules {
                if cur.contains_symbol(*sym) {
                    cur = cur.substitute(*sym, value)?;
                    touched = true;
                }
            }
            if !touched {
                return Ok(cur);
            }
        }
        let offender = rules
            .iter()
            .find(|(s, _)| cur.contains_symbol(*s))
            .map(|(s, _)| self.ws.name(*s))
            .unwrap_or_else(|| "?".to_string());
        Err(FieldError::RewriteCycle { symbol: offender })
    }

    pub fn display(&self) -> RatExprDisplay<'_> {
        RatExprDisplay { expr: self }
    }
}

impl PartialEq for RatExpr {
    fn eq(&self, other: &Self) -> bool {
        self.ws.same_as(&other.ws) && self.equiv(other)
    }
}

/// The constant `q` with `a = q * b`, for proportional nonzero polynomials.
fn ratio_of(a: &Poly, b: &Poly) -> BigRational {
    let (ma, ca) = a.leading().expect("nonzero");
    let (mb, cb) = b.leading().expect("nonzero");
    debug_assert_eq!(ma, mb, "polynomials must be proportional");
    ca / cb
}

pub struct RatExprDisplay<'a> {
    expr: &'a RatExpr,
}

impl fmt::Display for RatExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws = &self.expr.ws;
        if self.expr.den.is_one() {
            write!(f, "{}", self.expr.num.display(ws))
        } else if self.expr.num.num_terms() <= 1 && self.expr.den.num_terms() <= 1 {
            write!(
                f,
                "{}/{}",
                self.expr.num.display(ws),
                self.expr.den.display(ws)
            )
        } else {
            write!(
                f,
                "({})/({})",
                self.expr.num.display(ws),
                self.expr.den.display(ws)
            )
        }
    }
}
