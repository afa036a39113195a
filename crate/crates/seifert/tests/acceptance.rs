//! Acceptance battery: one test per top-level guarantee, each printing a
//! PASS line with the checked bound (visible under --nocapture).

use std::process::Command;

use num::integer::gcd;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seifert::cover::{
    deck_group_order, galois_closure, smooth_cover_search_exhaustive, DEFAULT_MAX_MULT,
};
use seifert::descent::{
    build_report, compute_twist, fiber_exponents_from_symbol, numeric_exponent_oracle,
    pullback_euler, residual_exponents, FiberRepDatum,
};
use seifert::local_model::{
    fiber_product_gradient_norm, run_exact_battery, run_float_battery, BatteryReport, CirclePoint,
    DiscPoint, ModelParams, PolarRational,
};
use seifert::pipeline::PipelineStatus;
use seifert::{
    classify_geometry, parse_orbifold, parse_symbol, rational, run_pipeline, smooth_cover_search,
    verify_certificate, CoverCertificate, CoverError, Geometry, Permutation, PipelineOptions,
    RawSeifertSymbol, SeifertSymbol,
};

fn symbol(text: &str) -> SeifertSymbol {
    parse_symbol(text).unwrap().normalize().unwrap()
}

fn coprime_pairs(p_max: i64) -> Vec<(i64, i64)> {
    let mut pairs = vec![(1, 0)];
    for p in 2..=p_max {
        for q in 1..p {
            if gcd(p, q) == 1 {
                pairs.push((p, q));
            }
        }
    }
    pairs
}

fn random_coprime(rng: &mut ChaCha8Rng, p: i64) -> i64 {
    loop {
        let q = rng.gen_range(1..p);
        if gcd(p, q) == 1 {
            return q;
        }
    }
}

#[test]
fn geometry_table() {
    let cells: [(&str, i64, i64, i64, i64, Geometry); 6] = [
        ("{b=0; g=0; -}", 2, 1, 0, 1, Geometry::S2xR),
        ("{b=0; g=1; -}", 0, 1, 0, 1, Geometry::E3),
        ("{b=0; g=2; -}", -2, 1, 0, 1, Geometry::H2xR),
        ("{b=-1; g=0; (2,1)(3,1)(5,1)}", 1, 30, -1, 30, Geometry::S3),
        ("{b=1; g=1; -}", 0, 1, -1, 1, Geometry::Nil),
        (
            "{b=-1; g=0; (2,1)(3,1)(7,1)}",
            -1,
            42,
            1,
            42,
            Geometry::SL2Rtilde,
        ),
    ];
    for (text, chi_n, chi_d, e_n, e_d, expected) in cells {
        let s = symbol(text);
        let chi = s.base_orbifold().euler_characteristic();
        let e = s.euler_number();
        assert_eq!(chi, rational(chi_n, chi_d), "chi of {text}");
        assert_eq!(e, rational(e_n, e_d), "e of {text}");
        assert_eq!(s.geometry(), expected, "geometry of {text}");
        assert_eq!(classify_geometry(chi, e), expected);
    }
    println!("PASS geometry_table: six cells with exact chi and e");
}

#[test]
fn local_model_property_battery() {
    let pairs = coprime_pairs(7);
    let mut float_worst = 0.0f64;
    for &(p, q) in &pairs {
        let float = run_float_battery(p, q, 10_000, 0).unwrap();
        assert!(float.pass, "float battery failed for ({p},{q}): {float:?}");
        assert_eq!(float.tolerance, 1e-10);
        float_worst = float_worst.max(worst_residual(&float));

        let exact = run_exact_battery(p, q, 300, 0).unwrap();
        assert!(exact.pass, "exact battery failed for ({p},{q}): {exact:?}");
        assert_eq!(exact.tolerance, 0.0);
        assert_eq!(worst_residual(&exact), 0.0, "nonzero exact residual");
    }
    println!(
        "PASS local_model_property_battery: {} pairs, 10000 float samples each \
         (worst residual {float_worst:.2e} <= 1e-10), 300 exact samples each \
         (all residuals exactly zero)",
        pairs.len()
    );
}

fn worst_residual(r: &BatteryReport) -> f64 {
    [
        r.max_membership_residual,
        r.max_quotient_residual,
        r.max_trivialization_roundtrip,
        r.max_equivariance_residual,
        r.max_section_residual,
        r.max_commuting_square_residual,
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

#[test]
fn singularity_dichotomy() {
    let zero = DiscPoint::new(PolarRational::gaussian(0, 0, 1)).unwrap();
    for (p, q) in coprime_pairs(7) {
        let m = ModelParams::new(p, q).unwrap();
        for k in 0..12 {
            let u = CirclePoint::new(PolarRational::root_of_unity(k, 12)).unwrap();
            let norm = fiber_product_gradient_norm(&m, &u, &zero, &zero);
            if p >= 2 {
                assert_eq!(norm, 0.0, "core gradient must vanish for p = {p}");
            } else {
                assert!(norm > 0.5, "core gradient must not vanish for p = 1");
            }
        }
    }
    println!(
        "PASS singularity_dichotomy: core gradient vanishes iff p >= 2, \
         12 exact circle samples per coprime pair up to p = 7"
    );
}

#[test]
fn cover_search_oracles() {
    // Pinned minimal covers; every certificate and every closure must pass
    // the independent verifier, and closures must be regular.
    let oracle: [(&str, usize, i64); 5] = [
        ("g=0 o cones=2,2", 2, 0),
        ("g=0 o cones=2,2,2,2", 2, 1),
        ("g=0 o cones=3,3,3", 3, 1),
        ("g=0 o cones=2,2,3,3", 6, 2),
        ("g=1 o cones=2", 4, 2),
    ];
    for (text, degree, genus) in oracle {
        let orb = parse_orbifold(text).unwrap();
        let cert = smooth_cover_search(&orb, DEFAULT_MAX_MULT, 0).unwrap();
        assert_eq!(cert.degree, degree, "degree over {text}");
        assert_eq!(cert.cover_genus, genus, "genus over {text}");
        assert!(cert.cover_orientable);
        verify_certificate(&orb, &cert).unwrap();

        let closure = galois_closure(&cert).unwrap();
        verify_certificate(&orb, &closure).unwrap();
        assert_eq!(deck_group_order(&closure), Ok(closure.degree));
    }

    // A cover of the one-cone torus whose permutations generate the
    // alternating group on four points closes up to deck order 12.
    let orb = parse_orbifold("g=1 o cones=2").unwrap();
    let perm = |cycles: &str| Permutation::parse_cycles(cycles, 4).unwrap();
    let tetrahedral = CoverCertificate {
        degree: 4,
        handle_perms: vec![(perm("(1 2 3)"), perm("(1 2 4)"))],
        crosscap_perms: vec![],
        cone_perms: vec![perm("(1 2)(3 4)")],
        cover_genus: 2,
        cover_orientable: true,
    };
    verify_certificate(&orb, &tetrahedral).unwrap();
    let closure = galois_closure(&tetrahedral).unwrap();
    assert_eq!(closure.degree, 12);
    verify_certificate(&orb, &closure).unwrap();
    assert_eq!(deck_group_order(&closure), Ok(12));

    // Teardrop and spindle: the closed-form rejection and the exhaustive
    // search to the default bound must agree.
    for (text, bound) in [("g=0 o cones=3", 36), ("g=0 o cones=2,3", 72)] {
        let orb = parse_orbifold(text).unwrap();
        match smooth_cover_search(&orb, DEFAULT_MAX_MULT, 0) {
            Err(CoverError::BadOrbifold(_)) => {}
            other => panic!("expected closed-form rejection for {text}, got {other:?}"),
        }
        assert_eq!(
            smooth_cover_search_exhaustive(&orb, DEFAULT_MAX_MULT, 0),
            Err(CoverError::NotFound {
                degree_bound: bound
            })
        );
    }

    println!(
        "PASS cover_search_oracles: five pinned covers verified with regular \
         closures, tetrahedral closure has deck order 12, teardrop and \
         spindle rejected by both routes"
    );
}

#[test]
fn descent_arithmetic() {
    // Closed-form exponents match the numeric probe of the local model.
    let mut checked = 0;
    for (p, q) in coprime_pairs(9) {
        if p < 2 {
            continue;
        }
        let raw = RawSeifertSymbol {
            base_genus: 0,
            base_orientable: true,
            b: 0,
            fibers: vec![(p, q)],
        };
        let data = fiber_exponents_from_symbol(&SeifertSymbol::new(raw).unwrap()).unwrap();
        let probed = numeric_exponent_oracle(&ModelParams::new(p, q).unwrap()).unwrap();
        assert_eq!(data[0].q_exp, probed, "exponent mismatch at ({p},{q})");
        checked += 1;
    }

    // Twisting by the fiber exponents cancels every character.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let len = rng.gen_range(1..=4);
        let data: Vec<FiberRepDatum> = (0..len)
            .map(|_| {
                let p = rng.gen_range(2..=12);
                FiberRepDatum {
                    p,
                    q_exp: rng.gen_range(0..p),
                }
            })
            .collect();
        let twist = compute_twist(&data);
        let residuals = residual_exponents(&data, &twist).unwrap();
        assert!(residuals.iter().all(|&r| r == 0));
    }

    // Pulled-back Euler numbers are integral at every certificate degree
    // from the cover oracles, for random b and fiber twistings.
    let bases: [(&str, u32); 5] = [
        ("g=0 o cones=2,2", 0),
        ("g=0 o cones=2,2,2,2", 0),
        ("g=0 o cones=3,3,3", 0),
        ("g=0 o cones=2,2,3,3", 0),
        ("g=1 o cones=2", 1),
    ];
    let mut integral_checks = 0;
    for (text, genus) in bases {
        let orb = parse_orbifold(text).unwrap();
        let cert = smooth_cover_search(&orb, DEFAULT_MAX_MULT, 0).unwrap();
        let closure = galois_closure(&cert).unwrap();
        for _ in 0..20 {
            let fibers = orb
                .cone_orders()
                .iter()
                .map(|&p| (p, random_coprime(&mut rng, p)))
                .collect();
            let s = SeifertSymbol::new(RawSeifertSymbol {
                base_genus: genus,
                base_orientable: true,
                b: rng.gen_range(-5..=5),
                fibers,
            })
            .unwrap();
            for degree in [cert.degree as i64, closure.degree as i64] {
                pullback_euler(&s, degree).unwrap();
                integral_checks += 1;
            }
            let report = build_report(&s, closure.degree as i64).unwrap();
            assert!(report.residuals.iter().all(|&r| r == 0));
        }
    }

    println!(
        "PASS descent_arithmetic: {checked} exponent pairs match the numeric \
         oracle, 1000 randomized twists cancel, {integral_checks} pullback \
         integrality checks"
    );
}

#[test]
fn end_to_end_pipeline() {
    let s = symbol("{b=1; g=0; (2,1)(2,1)(3,1)(3,1)}");
    let report = run_pipeline(&s, &PipelineOptions::default()).unwrap();
    assert_eq!(report.status, PipelineStatus::Completed);
    let closure = report.cover.as_ref().unwrap();
    verify_certificate(&s.base_orbifold(), closure).unwrap();
    assert_eq!(deck_group_order(closure), Ok(closure.degree));
    let composite = report.composite_degree.unwrap();
    let pullback = report.pullback_euler.unwrap();
    assert_eq!(rational(pullback, 1), rational(composite, 1) * s.euler_number());
    assert!(report.descent.unwrap().residuals.iter().all(|&r| r == 0));

    // The refused branch, including the exit-code contract of the binary.
    let refused = run_pipeline(
        &symbol("{b=-1; g=0; (2,1)(3,1)(5,1)}"),
        &PipelineOptions::default(),
    )
    .unwrap();
    assert_eq!(refused.status, PipelineStatus::RefusedSpherical);

    let output = Command::new(env!("CARGO_BIN_EXE_seifert"))
        .args(["pipeline", "{b=-1; g=0; (2,1)(3,1)(5,1)}", "--json"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2), "refusal exit code");
    let json: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(json["status"], "refused_spherical");
    assert_eq!(json["geometry"], "S3");

    println!(
        "PASS end_to_end_pipeline: hyperbolic symbol completed with a regular \
         verified cover (degree {composite}, pullback {pullback}, zero \
         residuals); spherical symbol refused with exit code 2"
    );
}

#[test]
fn bad_orbifold_forcing() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut teardrops = 0;
    for i in 0..1000 {
        let p1 = rng.gen_range(2..=12);
        let mut fibers = vec![(p1, random_coprime(&mut rng, p1))];
        if i % 2 == 0 {
            teardrops += 1;
        } else {
            let p2 = loop {
                let c = rng.gen_range(2..=12);
                if c != p1 {
                    break c;
                }
            };
            fibers.push((p2, random_coprime(&mut rng, p2)));
        }
        let s = RawSeifertSymbol {
            base_genus: 0,
            base_orientable: true,
            b: rng.gen_range(-6..=6),
            fibers,
        }
        .normalize()
        .unwrap();
        assert!(
            s.base_orbifold().bad_orbifold().is_some(),
            "base of {s} should be bad"
        );
        assert_ne!(s.euler_number(), rational(0, 1), "e of {s}");
        assert_eq!(s.geometry(), Geometry::S3, "geometry of {s}");
    }
    println!(
        "PASS bad_orbifold_forcing: 1000 symbols over bad bases \
         ({teardrops} teardrops, {} spindles) all have nonzero Euler number \
         and spherical geometry",
        1000 - teardrops
    );
}
