//! Randomized verification harness for the local model identities.
//!
//! One battery run draws seeded random points of the resolved model and
//! accumulates the worst residual of each identity family: membership
//! equations, the quotient identity, trivialization round trips,
//! equivariance of the resolved fibration, the section contracts, and the
//! commuting squares with the branched disc cover. The float battery
//! checks them against [`EPS_ROUND`]; the exact battery requires every
//! residual to be exactly zero.

use super::exact::PolarRational;
use super::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::TAU;

/// Maximum residuals observed over one battery run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatteryReport {
    pub mode: String,
    pub p: i64,
    pub q: i64,
    pub samples: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub max_membership_residual: f64,
    pub max_quotient_residual: f64,
    pub max_trivialization_roundtrip: f64,
    pub max_equivariance_residual: f64,
    pub max_section_residual: f64,
    pub max_commuting_square_residual: f64,
    pub pass: bool,
}

fn battery_core<S: ModelScalar>(
    m: &ModelParams,
    samples: u64,
    seed: u64,
    mode: &str,
    tolerance: f64,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> (S, S, S, S),
) -> Result<BatteryReport, ModelError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut membership: f64 = 0.0;
    let mut quotient: f64 = 0.0;
    let mut roundtrip: f64 = 0.0;
    let mut equivariance: f64 = 0.0;
    let mut section: f64 = 0.0;
    let mut square: f64 = 0.0;

    for _ in 0..samples {
        let (v_raw, z_raw, v2_raw, xi_raw) = draw(&mut rng);
        let v = CirclePoint::new(v_raw)?;
        let v2 = CirclePoint::new(v2_raw)?;
        let xi = CirclePoint::new(xi_raw)?;
        let w0 = DiscPoint::new(z_raw)?;

        // Every resolved point is v · section(w); sampling the pair (v, w)
        // sweeps the whole space.
        let sec = standard_section(m, &w0);
        let t = circle_action(m, &v, &sec)?;

        membership = membership.max(t.membership_residual(m));
        let fp = desingularize(m, &t)?;
        membership = membership.max(fp.membership_residual(m));
        let t2 = circle_action(m, &v2, &t)?;
        membership = membership.max(t2.membership_residual(m));
        let tx = deck_rotation(m, &xi, &t)?;
        membership = membership.max(tx.membership_residual(m));

        quotient = quotient
            .max(quotient_defect(m, &t))
            .max(quotient_defect(m, &tx));

        let (vt, wt) = trivialize(m, &t)?;
        let back = circle_action(m, &vt, &standard_section(m, &wt))?;
        roundtrip = roundtrip
            .max(back.u().distance(t.u()))
            .max(back.z().distance(t.z()))
            .max(back.x().distance(t.x()))
            // t was built as v · section(w0), so trivialize must recover
            // exactly that pair.
            .max(vt.value().distance(v.value()))
            .max(wt.value().distance(w0.value()));

        equivariance = equivariance.max(
            resolved_fibration(m, &t2)
                .value()
                .distance(resolved_fibration(m, &t).value()),
        );
        let v12 = CirclePoint::new(v2.value().product(v.value()))?;
        let direct = circle_action(m, &v12, &sec)?;
        equivariance = equivariance
            .max(direct.u().distance(t2.u()))
            .max(direct.z().distance(t2.z()))
            .max(direct.x().distance(t2.x()));
        let tid = circle_action(m, &CirclePoint::new(S::one())?, &t)?;
        equivariance = equivariance
            .max(tid.u().distance(t.u()))
            .max(tid.z().distance(t.z()))
            .max(tid.x().distance(t.x()));

        section = section.max(resolved_fibration(m, &sec).value().distance(w0.value()));
        let (vs, ws) = trivialize(m, &sec)?;
        section = section
            .max(vs.value().distance(&S::one()))
            .max(ws.value().distance(w0.value()));
        let ds = desingularize(m, &sec)?;
        section = section
            .max(ds.u().distance(&S::one()))
            .max(ds.z().distance(w0.value()))
            .max(ds.w().distance(w0.value()));

        let fu = CirclePoint::new(fp.u().clone())?;
        let fz = DiscPoint::new(fp.z().clone())?;
        let fw = DiscPoint::new(fp.w().clone())?;
        let left = solid_torus_fibration(m, &fu, &fz);
        let right = branched_disc_cover(m.p(), &fw);
        square = square
            .max(left.value().distance(right.value()))
            .max(fp.w().distance(resolved_fibration(m, &t).value()));
    }

    let maxima = [membership, quotient, roundtrip, equivariance, section, square];
    let pass = maxima.iter().all(|&r| r <= tolerance);
    Ok(BatteryReport {
        mode: mode.to_string(),
        p: m.p(),
        q: m.q(),
        samples,
        seed,
        tolerance,
        max_membership_residual: membership,
        max_quotient_residual: quotient,
        max_trivialization_roundtrip: roundtrip,
        max_equivariance_residual: equivariance,
        max_section_residual: section,
        max_commuting_square_residual: square,
        pass,
    })
}

/// Runs the battery over `Complex64` with uniformly random circle angles
/// and disc points; residuals are checked against [`EPS_ROUND`].
pub fn run_float_battery(
    p: i64,
    q: i64,
    samples: u64,
    seed: u64,
) -> Result<BatteryReport, ModelError> {
    let m = ModelParams::new(p, q)?;
    battery_core(&m, samples, seed, "float", EPS_ROUND, |rng| {
        let v = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
        let v2 = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
        let xi = Complex64::from_polar(1.0, TAU * rng.gen_range(0..p) as f64 / p as f64);
        let z = Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..TAU));
        (v, z, v2, xi)
    })
}

/// Runs the battery over [`PolarRational`]: circle samples are roots of
/// unity of order dividing 840 (plus exact p-th roots for the deck
/// rotation) and disc samples are Gaussian rationals (a + bi)/d with
/// a, b in [-6, 6], d in [7, 12]. Every residual must be exactly zero.
pub fn run_exact_battery(
    p: i64,
    q: i64,
    samples: u64,
    seed: u64,
) -> Result<BatteryReport, ModelError> {
    let m = ModelParams::new(p, q)?;
    battery_core(&m, samples, seed, "exact", 0.0, |rng| {
        let v = PolarRational::root_of_unity(rng.gen_range(0..840), 840);
        let v2 = PolarRational::root_of_unity(rng.gen_range(0..840), 840);
        let xi = PolarRational::root_of_unity(rng.gen_range(0..p), p);
        let z = loop {
            let a = rng.gen_range(-6..=6i64);
            let b = rng.gen_range(-6..=6i64);
            let d = rng.gen_range(7..=12i64);
            if a * a + b * b <= d * d {
                break PolarRational::gaussian(a, b, d);
            }
        };
        (v, z, v2, xi)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_battery_is_tight() {
        for (p, q) in [(1, 0), (2, 1), (5, 3), (7, 4)] {
            let report = run_float_battery(p, q, 300, 9).unwrap();
            assert!(report.pass, "float battery failed: {report:?}");
            assert!(report.max_membership_residual <= EPS_MEM);
            assert!(report.max_quotient_residual <= EPS_MEM);
            assert!(report.max_trivialization_roundtrip <= EPS_ROUND);
        }
    }

    #[test]
    fn exact_battery_has_zero_residuals() {
        for (p, q) in [(3, 2), (7, 5)] {
            let report = run_exact_battery(p, q, 40, 11).unwrap();
            assert!(report.pass, "exact battery failed: {report:?}");
            assert_eq!(report.max_membership_residual, 0.0);
            assert_eq!(report.max_quotient_residual, 0.0);
            assert_eq!(report.max_trivialization_roundtrip, 0.0);
            assert_eq!(report.max_equivariance_residual, 0.0);
            assert_eq!(report.max_section_residual, 0.0);
            assert_eq!(report.max_commuting_square_residual, 0.0);
        }
    }

    #[test]
    fn batteries_are_seed_deterministic() {
        let a = run_float_battery(5, 2, 200, 42).unwrap();
        let b = run_float_battery(5, 2, 200, 42).unwrap();
        assert_eq!(a, b);
        let c = run_exact_battery(5, 2, 30, 42).unwrap();
        let d = run_exact_battery(5, 2, 30, 42).unwrap();
        assert_eq!(c, d);
    }

    #[test]
    fn battery_rejects_invalid_params() {
        assert!(run_float_battery(4, 2, 10, 0).is_err());
        assert!(run_exact_battery(0, 0, 10, 0).is_err());
    }
}
