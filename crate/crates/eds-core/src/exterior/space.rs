//! Coframed spaces: an ordered coframe of 1-form elements together with the
//! differentiation rules needed to apply the exterior derivative.
//!
//! The exterior derivative is driven by two tables. Structure equations give
//! `d` of each coframe element as a 2-form; differential rules give `d` of a
//! function symbol as a 1-form (for a coordinate symbol the rule is implicit:
//! its differential is the paired coframe element, which has `d = 0`).
//! Differentiating a form combines both through the Leibniz rule, and asking
//! for `d` of anything whose table entry is missing is an error naming the
//! offender rather than a silent zero.

use std::collections::HashMap;

use crate::field::{RatExpr, SymbolId, SymbolKind, Workspace};

use super::form::Form;
use super::ExteriorError;

/// A coframe with differentiation tables.
#[derive(Clone)]
pub struct CoframedSpace {
    ws: Workspace,
    elements: Vec<String>,
    structure: Vec<Option<Form>>,
    differentials: HashMap<SymbolId, Form>,
    coordinate_diff: HashMap<SymbolId, usize>,
}

impl CoframedSpace {
    pub fn new(ws: &Workspace) -> Self {
        CoframedSpace {
            ws: ws.clone(),
            elements: Vec::new(),
            structure: Vec::new(),
            differentials: HashMap::new(),
            coordinate_diff: HashMap::new(),
        }
    }

    pub fn workspace(&self) -> &Workspace {
        &self.ws
    }

    /// Abstract coframe element; its structure equation starts out unset.
    pub fn add_element(&mut self, name: &str) -> usize {
        assert!(
            self.element_index(name).is_none(),
            "coframe element `{name}` already exists"
        );
        self.elements.push(name.to_string());
        self.structure.push(None);
        self.elements.len() - 1
    }

    /// Coordinate symbol paired with its exact differential `d<name>`, which
    /// joins the coframe with structure equation zero.
    pub fn add_coordinate(&mut self, name: &str) -> Result<(SymbolId, usize), ExteriorError> {
        let sym = self.ws.declare(name, SymbolKind::Coordinate)?;
        let idx = self.add_element(&format!("d{}", name));
        self.structure[idx] = Some(Form::zero(&self.ws, 2));
        self.coordinate_diff.insert(sym, idx);
        Ok((sym, idx))
    }

    pub fn n_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn element_name(&self, idx: usize) -> &str {
        &self.elements[idx]
    }

    pub fn element_names(&self) -> &[String] {
        &self.elements
    }

    /// The 1-form consisting of the single element `idx`.
    pub fn element(&self, idx: usize) -> Form {
        Form::term(&self.ws, &[idx], RatExpr::one(&self.ws))
    }

    pub fn set_structure(&mut self, idx: usize, d_element: Form) {
        assert_eq!(d_element.degree(), 2, "structure equation must be a 2-form");
        self.structure[idx] = Some(d_element);
    }

    pub fn structure(&self, idx: usize) -> Option<&Form> {
        self.structure[idx].as_ref()
    }

    /// Record `d(sym)` as an explicit 1-form.
    pub fn set_differential(&mut self, sym: SymbolId, d_sym: Form) {
        assert_eq!(d_sym.degree(), 1, "differential rule must be a 1-form");
        self.differentials.insert(sym, d_sym);
    }

    pub fn differential_rule(&self, sym: SymbolId) -> Option<&Form> {
        self.differentials.get(&sym)
    }

    /// Declare derivative symbols of `sym` along every coframe element and
    /// install `d(sym) = sum_i sym_i * e_i`. Returns the new symbol ids in
    /// coframe order. Derivative names append the 1-based element position:
    /// expanding `I` over a 3-element coframe creates `I1`, `I2`, `I3`, and
    /// expanding `I2` then creates `I21`, `I22`, `I23`.
    pub fn expand_differential(&mut self, sym: SymbolId) -> Result<Vec<SymbolId>, ExteriorError> {
        let base_name = self.ws.name(sym);
        let (parent, word) = match self.ws.kind(sym) {
            SymbolKind::DerivedFunction { parent, word } => (parent, word),
            _ => (sym, Vec::new()),
        };
        let mut ids = Vec::with_capacity(self.elements.len());
        let mut d_form = Form::zero(&self.ws, 1);
        for i in 0..self.elements.len() {
            let digit = (i + 1) as u8;
            let name = format!("{}{}", base_name, i + 1);
            let mut child_word = word.clone();
            child_word.push(digit);
            let id = match self.ws.lookup(&name) {
                Some(existing) => existing,
                None => self.ws.declare(
                    &name,
                    SymbolKind::DerivedFunction {
                        parent,
                        word: child_word,
                    },
                )?,
            };
            d_form.add_term(&[i], RatExpr::symbol(&self.ws, id));
            ids.push(id);
        }
        self.differentials.insert(sym, d_form);
        Ok(ids)
    }

    /// `d` of a scalar expression, via the chain rule over its symbols.
    pub fn d_expr(&self, expr: &RatExpr) -> Result<Form, ExteriorError> {
        let mut out = Form::zero(&self.ws, 1);
        for sym in expr.symbols() {
            let partial = expr.derivative(sym);
            if partial.is_zero() {
                continue;
            }
            let d_sym = self.d_symbol(sym)?;
            out = out.add(&d_sym.scale(&partial));
        }
        Ok(out)
    }

    fn d_symbol(&self, sym: SymbolId) -> Result<Form, ExteriorError> {
        if let Some(rule) = self.differentials.get(&sym) {
            return Ok(rule.clone());
        }
        if let Some(&idx) = self.coordinate_diff.get(&sym) {
            return Ok(self.element(idx));
        }
        Err(ExteriorError::MissingDifferential {
            symbol: self.ws.name(sym),
        })
    }

    /// Exterior derivative of a form, by the Leibniz rule: differentiate
    /// each coefficient and each coframe factor (via structure equations).
    pub fn d(&self, form: &Form) -> Result<Form, ExteriorError> {
        let mut out = Form::zero(&self.ws, form.degree() + 1);
        for (indices, coeff) in form.terms() {
            // d(coeff) ^ e_{i1} ^ ... ^ e_{ik}
            let dc = self.d_expr(coeff)?;
            for (k1, c1) in dc.terms() {
                let mut idx = k1.clone();
                idx.extend_from_slice(indices);
                out.add_term(&idx, c1.clone());
            }
            // coeff * sum_j (-1)^j e_{i1} ^ ... ^ d(e_{ij}) ^ ... ^ e_{ik}
            for (j, &ej) in indices.iter().enumerate() {
                let d_ej = self.structure[ej]
                    .as_ref()
                    .ok_or_else(|| ExteriorError::IncompleteStructure {
                        name: self.elements[ej].clone(),
                    })?;
                let sign = if j % 2 == 0 { 1i64 } else { -1i64 };
                for (k2, c2) in d_ej.terms() {
                    // Splice d(e_j)'s indices into position j.
                    let mut idx: Vec<usize> = Vec::with_capacity(indices.len() + 1);
                    idx.extend_from_slice(&indices[..j]);
                    idx.extend_from_slice(k2);
                    idx.extend_from_slice(&indices[j + 1..]);
                    let mut c = coeff.mul(c2);
                    if sign < 0 {
                        c = c.neg();
                    }
                    out.add_term(&idx, c);
                }
            }
        }
        Ok(out)
    }

    /// `d(d(element))`; identically zero exactly when the structure and
    /// differential tables are mutually consistent.
    pub fn d_square_element(&self, idx: usize) -> Result<Form, ExteriorError> {
        let d1 = self.structure[idx]
            .as_ref()
            .ok_or_else(|| ExteriorError::IncompleteStructure {
                name: self.elements[idx].clone(),
            })?;
        self.d(d1)
    }

    /// `d(d(sym))` for a function symbol with a differential rule.
    pub fn d_square_function(&self, sym: SymbolId) -> Result<Form, ExteriorError> {
        let d1 = self.d_symbol(sym)?;
        self.d(&d1)
    }

    /// Re-express a form given over this space's coframe in another basis:
    /// `replacement[i]` is the image of element `i` as a 1-form over the
    /// target space. Coefficients carry over unchanged.
    pub fn change_basis(
        &self,
        form: &Form,
        replacement: &[Form],
    ) -> Result<Form, ExteriorError> {
        assert_eq!(replacement.len(), self.n_elements(), "one image per element");
        let mut out = Form::zero(&self.ws, form.degree());
        for (indices, coeff) in form.terms() {
            let mut wedge = Form::scalar(&self.ws, RatExpr::one(&self.ws));
            for &i in indices {
                wedge = wedge.wedge(&replacement[i]);
            }
            out = out.add(&wedge.scale(coeff));
        }
        Ok(out)
    }
}
