//! Walk one point through the resolved local model of an exceptional
//! fiber and check every structural identity on the way, twice: once in
//! floating point, once in exact arithmetic where residuals must be zero.
//!
//! The model for a (p, q) fiber is the map (u, z) -> u^q z^p on the solid
//! torus. Its fiber product with the branched disc cover w -> w^p is
//! singular along the core circle; the resolved space adds a coordinate x
//! with u^q = x^p and carries a free circle action, a global section, and
//! an order-p deck rotation.

use num::complex::Complex64;
use seifert::local_model::{
    branched_disc_cover, circle_action, deck_rotation, desingularize, quotient_defect,
    resolved_fibration, run_exact_battery, run_float_battery, solid_torus_fibration,
    standard_section, trivialize, CirclePoint, DiscPoint, ModelParams, PolarRational,
};

fn main() {
    let m = ModelParams::new(3, 2).unwrap();
    println!("model parameters: p = {}, q = {}", m.p(), m.q());

    // Start from a section point over z and push it around with the
    // circle action.
    let z = DiscPoint::new(Complex64::new(0.4, -0.25)).unwrap();
    let v = CirclePoint::new(Complex64::from_polar(1.0, 1.1)).unwrap();
    let t = circle_action(&m, &v, &standard_section(&m, &z)).unwrap();
    println!(
        "sample point: u = {:.4}, z = {:.4}, x = {:.4}",
        t.u(),
        t.z(),
        t.x()
    );
    println!(
        "membership residual |u^q - x^p| = {:.2e}",
        t.membership_residual(&m)
    );

    // Commuting square: the solid-torus fibration of (u, z) equals the
    // p-th power of the resolved fibration image xz.
    let downstairs = solid_torus_fibration(
        &m,
        &CirclePoint::new(*t.u()).unwrap(),
        &DiscPoint::new(*t.z()).unwrap(),
    );
    let through_model = branched_disc_cover(m.p(), &resolved_fibration(&m, &t));
    println!(
        "commuting square |f(u,z) - (xz)^p| = {:.2e}",
        (downstairs.value() - through_model.value()).norm()
    );

    // Trivialization: t is recovered from (v, z) and the section.
    let (v2, z2) = trivialize(&m, &t).unwrap();
    let back = circle_action(&m, &v2, &standard_section(&m, &z2)).unwrap();
    println!(
        "trivialization roundtrip distance = {:.2e}",
        (back.u() - t.u()).norm() + (back.z() - t.z()).norm() + (back.x() - t.x()).norm()
    );

    // The deck rotation multiplies x by a p-th root of unity and fixes
    // the downstairs data; the quotient map is p-to-one.
    let xi = CirclePoint::new(Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0)).unwrap();
    let rotated = deck_rotation(&m, &xi, &t).unwrap();
    println!(
        "deck rotation moves x: {:.4} -> {:.4}, quotient defect = {:.2e}",
        t.x(),
        rotated.x(),
        quotient_defect(&m, &t)
    );

    // Resolution of the naive fiber product: same point, smooth chart.
    let fp = desingularize(&m, &t).unwrap();
    println!("desingularized w = {:.4}", fp.w());

    // Exact-arithmetic replay of the same identities on roots of unity.
    let u = CirclePoint::new(PolarRational::root_of_unity(5, 12)).unwrap();
    let zq = DiscPoint::new(PolarRational::gaussian(1, -2, 5)).unwrap();
    let exact_image = solid_torus_fibration(&m, &u, &zq);
    println!(
        "exact fibration image has turns {} and coeff {}",
        exact_image.value().turns(),
        exact_image.value().coeff()
    );

    // Batteries summarize the same checks over many random samples.
    let float = run_float_battery(3, 2, 2000, 1).unwrap();
    let exact = run_exact_battery(3, 2, 200, 1).unwrap();
    println!(
        "float battery over {} samples: worst residual {:.2e}, pass = {}",
        float.samples,
        [
            float.max_membership_residual,
            float.max_quotient_residual,
            float.max_trivialization_roundtrip,
            float.max_equivariance_residual,
            float.max_section_residual,
            float.max_commuting_square_residual,
        ]
        .into_iter()
        .fold(0.0f64, f64::max),
        float.pass
    );
    println!(
        "exact battery over {} samples: every residual exactly {:?}, pass = {}",
        exact.samples, exact.max_membership_residual, exact.pass
    );
}
