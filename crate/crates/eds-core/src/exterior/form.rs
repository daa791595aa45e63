//! Exterior forms: antisymmetric multilinear combinations of coframe
//! elements with rational-expression coefficients.
//!
//! A degree-`k` form is stored as a map from strictly increasing index
//! tuples (positions in the owning space's coframe) to coefficients; terms
//! are canonicalized on insertion by sorting indices and tracking the
//! permutation sign, and zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use crate::field::{RatExpr, SymbolId, Workspace};

use super::space::CoframedSpace;
use super::ExteriorError;

/// Sort a wedge index tuple, returning the permutation sign; `None` when an
/// index repeats (the term vanishes).
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = indices.to_vec();
    let mut sign = 1i64;
    // Insertion sort with inversion counting; tuples are tiny.
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((v, sign))
}

/// Exterior form of fixed degree over a coframed space.
#[derive(Clone, Debug)]
pub struct Form {
    ws: Workspace,
    degree: usize,
    terms: BTreeMap<Vec<usize>, RatExpr>,
}

impl Form {
    pub fn zero(ws: &Workspace, degree: usize) -> Self {
        Form {
            ws: ws.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Single wedge term; indices in any order, sign handled here.
    pub fn term(ws: &Workspace, indices: &[usize], coeff: RatExpr) -> Self {
        let mut f = Form::zero(ws, indices.len());
        f.add_term(indices, coeff);
        f
    }

    /// Scalar (degree-0) form.
    pub fn scalar(ws: &Workspace, value: RatExpr) -> Self {
        let mut f = Form::zero(ws, 0);
        f.add_term(&[], value);
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn workspace(&self) -> &Workspace {
        &self.ws
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &RatExpr)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Add one wedge term in place (indices in any order).
    pub fn add_term(&mut self, indices: &[usize], coeff: RatExpr) {
        assert_eq!(indices.len(), self.degree, "term degree mismatch");
        if coeff.is_zero() {
            return;
        }
        let Some((key, sign)) = sort_with_sign(indices) else {
            return;
        };
        let signed = if sign < 0 { coeff.neg() } else { coeff };
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing = existing.add(&signed);
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, signed);
            }
        }
    }

    /// Coefficient of the wedge of the given indices (any order; signed).
    pub fn coeff(&self, indices: &[usize]) -> RatExpr {
        assert_eq!(indices.len(), self.degree, "coefficient degree mismatch");
        match sort_with_sign(indices) {
            Some((key, sign)) => match self.terms.get(&key) {
                Some(c) if sign < 0 => c.neg(),
                Some(c) => c.clone(),
                None => RatExpr::zero(&self.ws),
            },
            None => RatExpr::zero(&self.ws),
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.degree, other.degree, "cannot add forms of different degree");
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        Form {
            ws: self.ws.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &RatExpr) -> Form {
        if c.is_zero() {
            return Form::zero(&self.ws, self.degree);
        }
        let mut out = Form::zero(&self.ws, self.degree);
        for (k, v) in &self.terms {
            out.add_term(k, v.mul(c));
        }
        out
    }

    pub fn scale_q(&self, c: &BigRational) -> Form {
        self.scale(&RatExpr::constant(&self.ws, c.clone()))
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero(&self.ws, self.degree + other.degree);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut idx = ka.clone();
                idx.extend_from_slice(kb);
                out.add_term(&idx, ca.mul(cb));
            }
        }
        out
    }

    /// Apply a function to every coefficient (dropping resulting zeros).
    pub fn map_coeffs<F>(&self, mut f: F) -> Form
    where
        F: FnMut(&RatExpr) -> RatExpr,
    {
        let mut out = Form::zero(&self.ws, self.degree);
        for (k, c) in &self.terms {
            out.add_term(k, f(c));
        }
        out
    }

    /// Substitute symbols by expressions in every coefficient.
    pub fn apply_rewrites(&self, rules: &[(SymbolId, RatExpr)]) -> Result<Form, ExteriorError> {
        let mut out = Form::zero(&self.ws, self.degree);
        for (k, c) in &self.terms {
            out.add_term(k, c.apply_rewrites(rules)?);
        }
        Ok(out)
    }

    /// Semantic equality via coefficient-wise difference.
    pub fn equiv(&self, other: &Form) -> bool {
        self.degree == other.degree && self.sub(other).is_zero()
    }

    pub fn display<'a>(&'a self, space: &'a CoframedSpace) -> FormDisplay<'a> {
        FormDisplay { form: self, space }
    }
}

pub struct FormDisplay<'a> {
    form: &'a Form,
    space: &'a CoframedSpace,
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.form.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.form.terms {
            let mono = k
                .iter()
                .map(|&i| self.space.element_name(i).to_string())
                .collect::<Vec<_>>()
                .join("^");
            let coeff_str = format!("{}", c.display());
            let (sign_prefix, body) = if let Some(stripped) = coeff_str.strip_prefix('-') {
                ("-", stripped.to_string())
            } else {
                ("+", coeff_str)
            };
            if first {
                if sign_prefix == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign_prefix)?;
            }
            if self.form.degree == 0 {
                write!(f, "{}", body)?;
            } else if body == "1" {
                write!(f, "{}", mono)?;
            } else if body.contains(' ') {
                write!(f, "({})*{}", body, mono)?;
            } else {
                write!(f, "{}*{}", body, mono)?;
            }
        }
        Ok(())
    }
}
