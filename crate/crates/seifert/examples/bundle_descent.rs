//! Descent arithmetic for a Seifert circle bundle pulled back along a
//! smooth cover of its base orbifold.
//!
//! Upstairs the pulled-back bundle is an honest circle bundle with integer
//! Euler number (the covering degree times the fractional Euler number
//! downstairs). Descending a line bundle back down the quotient needs the
//! residual isotropy characters at the exceptional fibers to cancel; the
//! twist divisor built from the fiber exponents does exactly that.

use seifert::descent::{
    build_report, compute_twist, descent_degree_check, fiber_exponents_from_symbol,
    numeric_exponent_oracle, pullback_euler, residual_exponents,
};
use seifert::local_model::ModelParams;
use seifert::parse_symbol;

fn main() {
    let s = parse_symbol("{b=1; g=0; (2,1)(2,1)(3,1)(3,1)}")
        .unwrap()
        .normalize()
        .unwrap();
    println!("symbol {s}, Euler number {}", s.euler_number());

    // Closed-form fiber exponents, cross-checked against a numeric probe
    // of the local model at each fiber type.
    let data = fiber_exponents_from_symbol(&s).unwrap();
    for (d, &(p, q)) in data.iter().zip(s.fibers()) {
        let m = ModelParams::new(p, q).unwrap();
        let probed = numeric_exponent_oracle(&m).unwrap();
        println!(
            "fiber ({p},{q}): exponent {} (numeric probe agrees: {probed})",
            d.q_exp
        );
        assert_eq!(probed, d.q_exp);
    }

    let twist = compute_twist(&data);
    let residuals = residual_exponents(&data, &twist).unwrap();
    println!("twist coefficients {:?}", twist.coefficients);
    println!("residual exponents {:?} (all zero: bundle descends)", residuals);

    // Pulled-back Euler numbers at covering degrees that are multiples of
    // every fiber order are integers; the downstairs candidate degree is
    // integral only when the Euler number itself is.
    for degree in [6, 12, 24] {
        let total = pullback_euler(&s, degree).unwrap();
        let (ratio, ok) = descent_degree_check(total, degree);
        println!(
            "degree {degree}: pullback Euler number {total}, downstairs candidate {ratio}{}",
            if ok { "" } else { " (not integral)" }
        );
    }

    // Degrees that miss a fiber order leave a fractional pullback.
    println!("degree 4: {:?}", pullback_euler(&s, 4));

    // The whole bookkeeping in one report.
    let report = build_report(&s, 24).unwrap();
    println!("report: {}", serde_json::to_string_pretty(&report).unwrap());
}
