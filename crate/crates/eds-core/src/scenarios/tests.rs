use super::*;

#[test]
fn dev_print_finsler_identities() {
    let report = scenario_finsler_identities().unwrap();
    println!("{}", report.render_text());
}

#[test]
fn dev_print_contact_checks() {
    let report = scenario_contact_checks().unwrap();
    println!("{}", report.render_text());
}

#[test]
fn dev_print_landsberg_ik() {
    let report = scenario_landsberg_ik(0xC0FFEE).unwrap();
    println!("{}", report.render_text());
}

#[test]
fn dev_print_prolonged_frame_bundle() {
    let report = scenario_prolonged_frame_bundle(0xC0FFEE).unwrap();
    println!("{}", report.render_text());
}

#[test]
fn dev_time_frame_bundle() {
    use crate::pfaffian::Absorption;
    use std::time::Instant;
    let t0 = Instant::now();
    let (system, _details) = frame_bundle::prolonged_frame_bundle_system(0xC0FFEE).unwrap();
    eprintln!("build: {:?}", t0.elapsed());
    let t1 = Instant::now();
    let dec = system.decompose().unwrap();
    eprintln!(
        "decompose: {:?} torsion_zero={}",
        t1.elapsed(),
        dec.torsion.is_zero()
    );
    let t2 = Instant::now();
    let abs = system.absorb().unwrap();
    eprintln!(
        "absorb: {:?} absorbed={}",
        t2.elapsed(),
        matches!(abs, Absorption::Absorbed { .. })
    );
}

#[test]
fn dev_profile_frame_bundle_decompose() {
    use crate::exterior::Form;
    use crate::field::linalg::invert_ratexpr;
    use std::time::Instant;
    let (system, _details) = frame_bundle::prolonged_frame_bundle_system(0xC0FFEE).unwrap();
    let space = system.space().clone();
    let ws = space.workspace().clone();
    let t0 = Instant::now();
    let c = system.coframe_matrix();
    eprintln!("coframe_matrix: {:?}", t0.elapsed());
    let t1 = Instant::now();
    let cinv = invert_ratexpr(&ws, &c).unwrap();
    eprintln!("invert: {:?}", t1.elapsed());
    let replacement: Vec<Form> = (0..space.n_elements())
        .map(|j| {
            let mut image = Form::zero(&ws, 1);
            for (r, coeff) in cinv[j].iter().enumerate() {
                if !coeff.is_zero() {
                    image.add_term(&[r], coeff.clone());
                }
            }
            image
        })
        .collect();
    for (a, theta) in system.generators().iter().enumerate() {
        let t2 = Instant::now();
        let d_theta = space.d(theta).unwrap();
        let d_time = t2.elapsed();
        let n_terms = d_theta.terms().count();
        let t3 = Instant::now();
        let split = space.change_basis(&d_theta, &replacement).unwrap();
        eprintln!(
            "gen {a}: d {:?} ({} terms), change_basis {:?} ({} split terms)",
            d_time,
            n_terms,
            t3.elapsed(),
            split.terms().count()
        );
    }
}
