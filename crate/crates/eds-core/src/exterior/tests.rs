//! Unit tests for forms, the exterior derivative, and identity derivation.
//!
//! The derivative is validated first against coordinate-space oracles
//! (`d^2 = 0` and the graded Leibniz rule hold automatically for polynomial
//! coefficients, independent of any structure-equation bookkeeping), then
//! against pinned structure computations.

use crate::field::{RatExpr, Sampler, SymbolId, SymbolKind, Workspace};

use super::form::{sort_with_sign, Form};
use super::identities::{derive_identities, IdentityTarget};
use super::space::CoframedSpace;
use super::ExteriorError;

// ---------------------------------------------------------------- oracles

/// Random polynomial expression in the given symbols.
fn random_expr(ws: &Workspace, syms: &[SymbolId], s: &mut Sampler) -> RatExpr {
    let mut e = RatExpr::constant(ws, s.rational());
    for _ in 0..s.int_in(1, 3) {
        let mut term = RatExpr::constant(ws, s.nonzero_rational());
        for &sym in syms {
            for _ in 0..s.int_in(0, 2) {
                term = term.mul(&RatExpr::symbol(ws, sym));
            }
        }
        e = e.add(&term);
    }
    e
}

fn coordinate_space() -> (Workspace, CoframedSpace, Vec<SymbolId>) {
    let ws = Workspace::new();
    let mut space = CoframedSpace::new(&ws);
    let syms = ["x", "y", "z"]
        .iter()
        .map(|n| space.add_coordinate(n).unwrap().0)
        .collect();
    (ws, space, syms)
}

#[test]
fn d_squared_vanishes_on_coordinate_scalars() {
    let (ws, space, syms) = coordinate_space();
    let mut s = Sampler::new(11);
    for _ in 0..50 {
        let f = random_expr(&ws, &syms, &mut s);
        let df = space.d_expr(&f).unwrap();
        let ddf = space.d(&df).unwrap();
        assert!(ddf.is_zero(), "mixed partials must commute");
    }
}

#[test]
fn d_squared_vanishes_on_coordinate_one_forms() {
    let (ws, space, syms) = coordinate_space();
    let mut s = Sampler::new(12);
    for _ in 0..30 {
        let mut alpha = Form::zero(&ws, 1);
        for i in 0..3 {
            alpha.add_term(&[i], random_expr(&ws, &syms, &mut s));
        }
        let dda = space.d(&space.d(&alpha).unwrap()).unwrap();
        assert!(dda.is_zero());
    }
}

#[test]
fn leibniz_rule_on_coordinate_forms() {
    let (ws, space, syms) = coordinate_space();
    let mut s = Sampler::new(13);
    for _ in 0..30 {
        // alpha: random 1-form, beta: random 1-form.
        let mut alpha = Form::zero(&ws, 1);
        let mut beta = Form::zero(&ws, 1);
        for i in 0..3 {
            alpha.add_term(&[i], random_expr(&ws, &syms, &mut s));
            beta.add_term(&[i], random_expr(&ws, &syms, &mut s));
        }
        let lhs = space.d(&alpha.wedge(&beta)).unwrap();
        // d(a^b) = da^b - a^db for 1-forms.
        let rhs = space
            .d(&alpha)
            .unwrap()
            .wedge(&beta)
            .sub(&alpha.wedge(&space.d(&beta).unwrap()));
        assert!(lhs.equiv(&rhs));
    }
}

// ------------------------------------------------------------- wedge algebra

#[test]
fn sort_with_sign_pins() {
    assert_eq!(sort_with_sign(&[0, 1]), Some((vec![0, 1], 1)));
    assert_eq!(sort_with_sign(&[1, 0]), Some((vec![0, 1], -1)));
    assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], 1)));
    assert_eq!(sort_with_sign(&[0, 2, 1]), Some((vec![0, 1, 2], -1)));
    assert_eq!(sort_with_sign(&[1, 1]), None);
}

#[test]
fn wedge_grading_and_anticommutativity() {
    let (ws, _space, syms) = coordinate_space();
    let mut s = Sampler::new(14);
    let one_form = |s: &mut Sampler| {
        let mut f = Form::zero(&ws, 1);
        for i in 0..3 {
            f.add_term(&[i], random_expr(&ws, &syms, s));
        }
        f
    };
    for _ in 0..20 {
        let a = one_form(&mut s);
        let b = one_form(&mut s);
        let c = one_form(&mut s);
        // 1-forms anticommute.
        assert!(a.wedge(&b).equiv(&b.wedge(&a).neg()));
        assert!(a.wedge(&a).is_zero());
        // 2-form and 1-form commute.
        let ab = a.wedge(&b);
        assert!(ab.wedge(&c).equiv(&c.wedge(&ab)));
        // Associativity.
        assert!(a.wedge(&b.wedge(&c)).equiv(&a.wedge(&b).wedge(&c)));
    }
}

#[test]
fn coefficient_extraction_is_signed() {
    let ws = Workspace::new();
    let f = Form::term(&ws, &[1, 0], RatExpr::from_int(&ws, 5));
    assert!(f.coeff(&[0, 1]).equiv(&RatExpr::from_int(&ws, -5)));
    assert!(f.coeff(&[1, 0]).equiv(&RatExpr::from_int(&ws, 5)));
    assert!(f.coeff(&[0, 2]).is_zero());
}

// --------------------------------------------------- pinned surface structure

/// Coframe `w1, w2, w3` with the structure equations of a generalized
/// surface geometry and scalar invariants `I`, `K`, `J` with expanded
/// differentials.
fn surface_space() -> (Workspace, CoframedSpace, [SymbolId; 3]) {
    let ws = Workspace::new();
    let mut space = CoframedSpace::new(&ws);
    let w1 = space.add_element("w1");
    let w2 = space.add_element("w2");
    let w3 = space.add_element("w3");
    let i = ws.declare("I", SymbolKind::BaseFunction).unwrap();
    let k = ws.declare("K", SymbolKind::BaseFunction).unwrap();
    let j = ws.declare("J", SymbolKind::BaseFunction).unwrap();
    space.expand_differential(i).unwrap();
    space.expand_differential(k).unwrap();
    space.expand_differential(j).unwrap();
    let sym = |id| RatExpr::symbol(&ws, id);
    // d w1 = -I w1^w3 + w2^w3
    let mut dw1 = Form::zero(&ws, 2);
    dw1.add_term(&[w1, w3], sym(i).neg());
    dw1.add_term(&[w2, w3], RatExpr::one(&ws));
    space.set_structure(w1, dw1);
    // d w2 = -w1^w3
    let mut dw2 = Form::zero(&ws, 2);
    dw2.add_term(&[w1, w3], RatExpr::from_int(&ws, -1));
    space.set_structure(w2, dw2);
    // d w3 = K w1^w2 - J w1^w3
    let mut dw3 = Form::zero(&ws, 2);
    dw3.add_term(&[w1, w2], sym(k));
    dw3.add_term(&[w1, w3], sym(j).neg());
    space.set_structure(w3, dw3);
    (ws, space, [i, k, j])
}

#[test]
fn structure_equation_pins() {
    let (ws, space, [i, _k, _j]) = surface_space();
    // d(w2) = -w1^w3 exactly.
    let dw2 = space.structure(1).unwrap();
    assert!(dw2.coeff(&[0, 2]).equiv(&RatExpr::from_int(&ws, -1)));
    assert!(dw2.coeff(&[0, 1]).is_zero());
    // d(I) = I1 w1 + I2 w2 + I3 w3.
    let di = space.d_expr(&RatExpr::symbol(&ws, i)).unwrap();
    for (pos, name) in [(0, "I1"), (1, "I2"), (2, "I3")] {
        let id = ws.lookup(name).unwrap();
        assert!(di.coeff(&[pos]).equiv(&RatExpr::symbol(&ws, id)));
    }
}

#[test]
fn second_derivative_residual_of_generic_function() {
    let (ws, mut space, [i, k, j]) = surface_space();
    let f = ws.declare("f", SymbolKind::BaseFunction).unwrap();
    let f_derivs = space.expand_differential(f).unwrap();
    for &fi in &f_derivs {
        space.expand_differential(fi).unwrap();
    }
    let ddf = space.d_square_function(f).unwrap();
    let sym = |name: &str| RatExpr::symbol(&ws, ws.lookup(name).unwrap());
    // Coefficient of w1^w2: f21 - f12 + K f3.
    let expected_12 = sym("f21").sub(&sym("f12")).add(&sym("K").mul(&sym("f3")));
    assert!(ddf.coeff(&[0, 1]).equiv(&expected_12));
    // Coefficient of w2^w3: f32 - f23 + f1.
    let expected_23 = sym("f32").sub(&sym("f23")).add(&sym("f1"));
    assert!(ddf.coeff(&[1, 2]).equiv(&expected_23));
    // Coefficient of w1^w3: f31 - f13 - I f1 - f2 - J f3.
    let expected_13 = sym("f31")
        .sub(&sym("f13"))
        .sub(&sym("I").mul(&sym("f1")))
        .sub(&sym("f2"))
        .sub(&sym("J").mul(&sym("f3")));
    assert!(ddf.coeff(&[0, 2]).equiv(&expected_13));
    let _ = (i, k, j);
}

#[test]
fn coframe_compatibility_determines_invariants() {
    let (ws, space, [_i, _k, j]) = surface_space();
    let k3 = ws.lookup("K3").unwrap();
    let derivation = derive_identities(
        &space,
        &[
            IdentityTarget::Element(0),
            IdentityTarget::Element(1),
            IdentityTarget::Element(2),
        ],
        &[j, k3],
    )
    .unwrap();
    assert!(derivation.underdetermined.is_empty());
    let sym = |name: &str| RatExpr::symbol(&ws, ws.lookup(name).unwrap());
    let rule = |id: SymbolId| {
        derivation
            .rules
            .iter()
            .find(|(s, _)| *s == id)
            .map(|(_, e)| e.clone())
            .expect("rule present")
    };
    // J = I2
    assert!(rule(j).equiv(&sym("I2")));
    // K3 = -K I - J2
    let expected = sym("K").mul(&sym("I")).add(&sym("J2")).neg();
    assert!(rule(k3).equiv(&expected));
}

#[test]
fn function_compatibility_yields_commutation_rules() {
    let (ws, mut space, _) = surface_space();
    let f = ws.declare("f", SymbolKind::BaseFunction).unwrap();
    let f_derivs = space.expand_differential(f).unwrap();
    for &fi in &f_derivs {
        space.expand_differential(fi).unwrap();
    }
    let look = |n: &str| ws.lookup(n).unwrap();
    let derivation = derive_identities(
        &space,
        &[IdentityTarget::Function(f)],
        &[look("f12"), look("f23"), look("f13")],
    )
    .unwrap();
    assert_eq!(derivation.rules.len(), 3);
    let sym = |name: &str| RatExpr::symbol(&ws, look(name));
    let rule = |id: SymbolId| {
        derivation
            .rules
            .iter()
            .find(|(s, _)| *s == id)
            .map(|(_, e)| e.clone())
            .unwrap()
    };
    assert!(rule(look("f12")).equiv(&sym("f21").add(&sym("K").mul(&sym("f3")))));
    assert!(rule(look("f23")).equiv(&sym("f32").add(&sym("f1"))));
    let expected_f13 = sym("f31")
        .sub(&sym("I").mul(&sym("f1")))
        .sub(&sym("f2"))
        .sub(&sym("J").mul(&sym("f3")));
    assert!(rule(look("f13")).equiv(&expected_f13));
}

// ------------------------------------------------------------ change of basis

#[test]
fn change_basis_roundtrip() {
    let ws = Workspace::new();
    let mut space = CoframedSpace::new(&ws);
    for name in ["e1", "e2", "e3"] {
        space.add_element(name);
    }
    let mut s = Sampler::new(15);
    // Random invertible rational matrix W: new_i = sum_j W[i][j] e_j.
    let w = s.invertible_int_matrix(3);
    let w_expr: Vec<Vec<RatExpr>> = w
        .iter()
        .map(|row| row.iter().map(|q| RatExpr::constant(&ws, q.clone())).collect())
        .collect();
    let w_inv = crate::field::linalg::invert_ratexpr(&ws, &w_expr).unwrap();
    let images: Vec<Form> = (0..3)
        .map(|i| {
            let mut f = Form::zero(&ws, 1);
            for j in 0..3 {
                f.add_term(&[j], w_expr[i][j].clone());
            }
            f
        })
        .collect();
    let back: Vec<Form> = (0..3)
        .map(|i| {
            let mut f = Form::zero(&ws, 1);
            for j in 0..3 {
                f.add_term(&[j], w_inv[i][j].clone());
            }
            f
        })
        .collect();
    let mut alpha = Form::zero(&ws, 2);
    alpha.add_term(&[0, 1], RatExpr::from_int(&ws, 3));
    alpha.add_term(&[1, 2], RatExpr::from_int(&ws, -2));
    let transformed = space.change_basis(&alpha, &images).unwrap();
    let recovered = space.change_basis(&transformed, &back).unwrap();
    assert!(recovered.equiv(&alpha));
}

// ------------------------------------------------------------------- errors

#[test]
fn missing_tables_are_reported() {
    let ws = Workspace::new();
    let mut space = CoframedSpace::new(&ws);
    let w1 = space.add_element("w1");
    space.add_element("w2");
    let g = ws.declare("g", SymbolKind::BaseFunction).unwrap();
    // No differential rule for g.
    assert_eq!(
        space.d_expr(&RatExpr::symbol(&ws, g)).unwrap_err(),
        ExteriorError::MissingDifferential {
            symbol: "g".into()
        }
    );
    // No structure equation for w2.
    let mut dw1 = Form::zero(&ws, 2);
    dw1.add_term(&[0, 1], RatExpr::one(&ws));
    space.set_structure(w1, dw1);
    assert_eq!(
        space.d_square_element(w1).unwrap_err(),
        ExteriorError::IncompleteStructure { name: "w2".into() }
    );
}

#[test]
fn contradictory_structure_is_detected() {
    let ws = Workspace::new();
    let mut space = CoframedSpace::new(&ws);
    let w1 = space.add_element("w1");
    let w2 = space.add_element("w2");
    let w3 = space.add_element("w3");
    // d w1 = w2^w3, d w2 = w1^w2, d w3 = 0 forces d^2(w1) != 0.
    let mut dw1 = Form::zero(&ws, 2);
    dw1.add_term(&[w2, w3], RatExpr::one(&ws));
    space.set_structure(w1, dw1);
    let mut dw2 = Form::zero(&ws, 2);
    dw2.add_term(&[w1, w2], RatExpr::one(&ws));
    space.set_structure(w2, dw2);
    space.set_structure(w3, Form::zero(&ws, 2));
    let err = derive_identities(&space, &[IdentityTarget::Element(w1)], &[]).unwrap_err();
    assert!(matches!(err, ExteriorError::ContradictoryStructure { .. }));
}

#[test]
fn nonlinear_unknowns_are_rejected() {
    let ws = Workspace::new();
    let mut space = CoframedSpace::new(&ws);
    let w1 = space.add_element("w1");
    let w2 = space.add_element("w2");
    let w3 = space.add_element("w3");
    let j = ws.declare("J", SymbolKind::BaseFunction).unwrap();
    let j_derivs = space.expand_differential(j).unwrap();
    // d w1 = J^2 w2^w3 gives the residual 2 J J1, quadratic in the unknown
    // set {J, J1}.
    let jj = RatExpr::symbol(&ws, j);
    let mut dw1 = Form::zero(&ws, 2);
    dw1.add_term(&[w2, w3], jj.mul(&jj));
    space.set_structure(w1, dw1);
    space.set_structure(w2, Form::zero(&ws, 2));
    space.set_structure(w3, Form::zero(&ws, 2));
    let err =
        derive_identities(&space, &[IdentityTarget::Element(w1)], &[j, j_derivs[0]]).unwrap_err();
    assert!(matches!(err, ExteriorError::NotAffine { .. }));
    // With J alone as the unknown the same residual is affine (coefficient
    // 2 J1) and pins J = 0.
    let derivation = derive_identities(&space, &[IdentityTarget::Element(w1)], &[j]).unwrap();
    assert_eq!(derivation.rules.len(), 1);
    assert!(derivation.rules[0].1.is_zero());
}
