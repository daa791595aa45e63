//! Identity scenarios on surface coframes: the Bianchi-type identities
//! forced by `d^2 = 0` on the generalized Finsler structure equations, the
//! Ricci-type commutation identities for directional derivatives, the
//! second-derivative identities of the Landsberg invariants, the Riemannian
//! degeneration, and the contact-form checks for the associated path
//! geometries.

use crate::exterior::{
    derive_identities, CoframedSpace, Form, IdentityDerivation, IdentityTarget,
};
use crate::field::{RatExpr, SymbolId, SymbolKind, Workspace};

use super::{ScenarioError, ScenarioReport};

/// Coframe element indices shared by the surface scenarios.
const W1: usize = 0;
const W2: usize = 1;
const W3: usize = 2;

/// The invariants of the generalized Finsler structure equations.
pub struct FinslerSymbols {
    pub i: SymbolId,
    pub j: SymbolId,
    pub k: SymbolId,
}

/// Three-dimensional coframed space with the generalized Finsler surface
/// structure equations
///
/// ```text
/// d omega^1 = -I omega^1 ^ omega^3 + omega^2 ^ omega^3
/// d omega^2 = -omega^1 ^ omega^3
/// d omega^3 =  K omega^1 ^ omega^2 - J omega^1 ^ omega^3
/// ```
///
/// with `I`, `J`, `K` undetermined functions (no differential rules
/// installed; expand them as a scenario requires).
pub fn generalized_finsler_space() -> (CoframedSpace, FinslerSymbols) {
    let ws = Workspace::new();
    let mut space = CoframedSpace::new(&ws);
    for name in ["w1", "w2", "w3"] {
        space.add_element(name);
    }
    let declare = |name: &str| ws.declare(name, SymbolKind::BaseFunction).unwrap();
    let syms = FinslerSymbols {
        i: declare("I"),
        j: declare("J"),
        k: declare("K"),
    };
    let sym = |id: SymbolId| RatExpr::symbol(&ws, id);
    let one = RatExpr::one(&ws);

    let mut dw1 = Form::zero(&ws, 2);
    dw1.add_term(&[W1, W3], sym(syms.i).neg());
    dw1.add_term(&[W2, W3], one.clone());
    space.set_structure(W1, dw1);
    let mut dw2 = Form::zero(&ws, 2);
    dw2.add_term(&[W1, W3], one.neg());
    space.set_structure(W2, dw2);
    let mut dw3 = Form::zero(&ws, 2);
    dw3.add_term(&[W1, W2], sym(syms.k));
    dw3.add_term(&[W1, W3], sym(syms.j).neg());
    space.set_structure(W3, dw3);

    (space, syms)
}

/// Display of the rule derived for `sym`, or a loud marker when the
/// derivation did not solve for it.
fn rule_display(ws: &Workspace, derivation: &IdentityDerivation, sym: SymbolId) -> String {
    derivation
        .rules
        .iter()
        .find(|(s, _)| *s == sym)
        .map(|(_, e)| e.display().to_string())
        .unwrap_or_else(|| format!("<no rule for {}>", ws.name(sym)))
}

/// Derive the identity layer of the surface structure equations:
///
/// * the Bianchi identities (`J` and `K_3` in terms of the other first
///   derivatives of the invariants),
/// * the Ricci commutation identities for a generic function `f`,
/// * the third-derivative relations `K_31, K_32, K_33` and the six Ricci
///   identities of the Landsberg invariants `I`, `K`,
/// * the Riemannian degeneration (`K_3 = 0`).
///
/// Every derived expression is compared against its pinned display.
pub fn scenario_finsler_identities() -> Result<ScenarioReport, ScenarioError> {
    let mut report = ScenarioReport::new("finsler_identities");

    // Bianchi identities of the generalized Finsler structure: expand the
    // invariant differentials and ask what d^2 = 0 forces on J and K_3.
    let (mut space, syms) = generalized_finsler_space();
    let ws = space.workspace().clone();
    space.expand_differential(syms.i)?;
    space.expand_differential(syms.j)?;
    let k_derivs = space.expand_differential(syms.k)?;
    let k3 = k_derivs[2];
    let bianchi = derive_identities(
        &space,
        &[
            IdentityTarget::Element(W1),
            IdentityTarget::Element(W2),
            IdentityTarget::Element(W3),
        ],
        &[syms.j, k3],
    )?;
    for (sym, expr) in &bianchi.rules {
        report.identity(ws.name(*sym), expr.display().to_string());
    }
    report.pin(
        "finsler.bianchi_equation_count",
        bianchi.equations.len().to_string(),
    );
    report.pin("finsler.bianchi_j", rule_display(&ws, &bianchi, syms.j));
    report.pin("finsler.bianchi_k3", rule_display(&ws, &bianchi, k3));

    // Ricci commutation identities for a generic function f: expand df and
    // every first derivative, then read what d^2(f) = 0 forces on the mixed
    // second derivatives f21, f32, f31.
    let f = ws.declare("f", SymbolKind::BaseFunction)?;
    let f_derivs = space.expand_differential(f)?;
    let _f1_derivs = space.expand_differential(f_derivs[0])?;
    let f2_derivs = space.expand_differential(f_derivs[1])?;
    let f3_derivs = space.expand_differential(f_derivs[2])?;
    let ricci_f = derive_identities(
        &space,
        &[IdentityTarget::Function(f)],
        &[f2_derivs[0], f3_derivs[1], f3_derivs[0]],
    )?;
    for (sym, expr) in &ricci_f.rules {
        report.identity(ws.name(*sym), expr.display().to_string());
    }
    report.pin("finsler.ricci_f21", rule_display(&ws, &ricci_f, f2_derivs[0]));
    report.pin("finsler.ricci_f32", rule_display(&ws, &ricci_f, f3_derivs[1]));
    report.pin("finsler.ricci_f31", rule_display(&ws, &ricci_f, f3_derivs[0]));

    // Second-derivative identities of the Landsberg invariants. Here J = 0,
    // dI has no omega^2 component, and the omega^3 coefficient of dK is
    // pinned to -KI by the Bianchi identities above.
    let lws = Workspace::new();
    let mut lspace = CoframedSpace::new(&lws);
    for name in ["w1", "w2", "w3"] {
        lspace.add_element(name);
    }
    let declare = |name: &str| lws.declare(name, SymbolKind::BaseFunction).unwrap();
    let i = declare("I");
    let k = declare("K");
    let i1 = declare("I1");
    let i3 = declare("I3");
    let k1 = declare("K1");
    let k2 = declare("K2");
    let sym = |id: SymbolId| RatExpr::symbol(&lws, id);
    let one = RatExpr::one(&lws);
    let mut dw1 = Form::zero(&lws, 2);
    dw1.add_term(&[W1, W3], sym(i).neg());
    dw1.add_term(&[W2, W3], one.clone());
    lspace.set_structure(W1, dw1);
    let mut dw2 = Form::zero(&lws, 2);
    dw2.add_term(&[W1, W3], one.neg());
    lspace.set_structure(W2, dw2);
    let mut dw3 = Form::zero(&lws, 2);
    dw3.add_term(&[W1, W2], sym(k));
    lspace.set_structure(W3, dw3);
    let mut di = Form::zero(&lws, 1);
    di.add_term(&[W1], sym(i1));
    di.add_term(&[W3], sym(i3));
    lspace.set_differential(i, di);
    let mut dk = Form::zero(&lws, 1);
    dk.add_term(&[W1], sym(k1));
    dk.add_term(&[W2], sym(k2));
    dk.add_term(&[W3], sym(k).mul(&sym(i)).neg());
    lspace.set_differential(k, dk);
    let i1_derivs = lspace.expand_differential(i1)?;
    let i3_derivs = lspace.expand_differential(i3)?;
    let k1_derivs = lspace.expand_differential(k1)?;
    let k2_derivs = lspace.expand_differential(k2)?;

    // The omega^3 coefficient of dK is K_3 = -KI; differentiating that
    // expression yields the third derivatives K_31, K_32, K_33.
    let dk3 = lspace.d_expr(&sym(k).mul(&sym(i)).neg())?;
    report.pin("landsberg.k31", dk3.coeff(&[W1]).display().to_string());
    report.pin("landsberg.k32", dk3.coeff(&[W2]).display().to_string());
    report.pin("landsberg.k33", dk3.coeff(&[W3]).display().to_string());

    // Six Ricci identities; only the differences I31 - I13 and K21 - K12
    // are determined, so I13 and K12 stay free and the rules for I31 and
    // K21 mention them.
    let second = derive_identities(
        &lspace,
        &[IdentityTarget::Function(i), IdentityTarget::Function(k)],
        &[
            i1_derivs[1], // I12
            i3_derivs[1], // I32
            i3_derivs[0], // I31
            k2_derivs[0], // K21
            k2_derivs[2], // K23
            k1_derivs[2], // K13
            i1_derivs[2], // I13, stays free
            k1_derivs[1], // K12, stays free
        ],
    )?;
    for (sym, expr) in &second.rules {
        report.identity(lws.name(*sym), expr.display().to_string());
    }
    report.pin(
        "landsberg.ricci_equation_count",
        second.equations.len().to_string(),
    );
    report.pin("landsberg.ricci_i12", rule_display(&lws, &second, i1_derivs[1]));
    report.pin("landsberg.ricci_i32", rule_display(&lws, &second, i3_derivs[1]));
    report.pin("landsberg.ricci_i31", rule_display(&lws, &second, i3_derivs[0]));
    report.pin("landsberg.ricci_k21", rule_display(&lws, &second, k2_derivs[0]));
    report.pin("landsberg.ricci_k23", rule_display(&lws, &second, k2_derivs[2]));
    report.pin("landsberg.ricci_k13", rule_display(&lws, &second, k1_derivs[2]));
    let free_names: Vec<String> = second
        .underdetermined
        .iter()
        .map(|s| lws.name(*s))
        .collect();
    report.pin("landsberg.underdetermined", free_names.join(", "));

    // Riemannian degeneration: with I = J = 0 the only surviving Bianchi
    // identity is K_3 = 0.
    let rws = Workspace::new();
    let mut rspace = CoframedSpace::new(&rws);
    for name in ["w1", "w2", "w3"] {
        rspace.add_element(name);
    }
    let rk = rws.declare("K", SymbolKind::BaseFunction)?;
    let one = RatExpr::one(&rws);
    let mut dw1 = Form::zero(&rws, 2);
    dw1.add_term(&[W2, W3], one.clone());
    rspace.set_structure(W1, dw1);
    let mut dw2 = Form::zero(&rws, 2);
    dw2.add_term(&[W1, W3], one.neg());
    rspace.set_structure(W2, dw2);
    let mut dw3 = Form::zero(&rws, 2);
    dw3.add_term(&[W1, W2], RatExpr::symbol(&rws, rk));
    rspace.set_structure(W3, dw3);
    let rk_derivs = rspace.expand_differential(rk)?;
    let riemannian = derive_identities(
        &rspace,
        &[
            IdentityTarget::Element(W1),
            IdentityTarget::Element(W2),
            IdentityTarget::Element(W3),
        ],
        &[rk_derivs[2]],
    )?;
    report.identity(
        rws.name(rk_derivs[2]),
        rule_display(&rws, &riemannian, rk_derivs[2]),
    );
    report.pin("riemannian.k3", rule_display(&rws, &riemannian, rk_derivs[2]));

    Ok(report)
}

/// Check that the annihilators of the two tautological plane fields are
/// contact forms away from their degeneracy locus: for `eta = A omega^1` and
/// `eta = A omega^2` alike, `eta ^ d(eta) = A^2 omega^1 ^ omega^2 ^ omega^3`,
/// which vanishes exactly when `A = 0`.
pub fn scenario_contact_checks() -> Result<ScenarioReport, ScenarioError> {
    let mut report = ScenarioReport::new("contact_checks");
    let (mut space, _syms) = generalized_finsler_space();
    let ws = space.workspace().clone();
    let a = ws.declare("A", SymbolKind::BaseFunction)?;
    space.expand_differential(a)?;
    let a_expr = RatExpr::symbol(&ws, a);
    let volume = Form::term(&ws, &[W1, W2, W3], a_expr.mul(&a_expr));

    for (check_id, coeff_id, idx) in [
        ("contact.eta1", "contact.eta1_coeff", W1),
        ("contact.eta2", "contact.eta2_coeff", W2),
    ] {
        let eta = space.element(idx).scale(&a_expr);
        let cubic = eta.wedge(&space.d(&eta)?);
        report.pin_bool(check_id, cubic.equiv(&volume));
        report.pin(coeff_id, cubic.coeff(&[W1, W2, W3]).display().to_string());
    }

    // With A = 0 the annihilator degenerates and the top-degree product
    // vanishes: the plane field is contact exactly where A != 0.
    let degenerate = Form::zero(&ws, 1);
    let cubic = degenerate.wedge(&space.d(&degenerate)?);
    report.pin_bool("contact.degenerate_zero", cubic.is_zero());

    Ok(report)
}
