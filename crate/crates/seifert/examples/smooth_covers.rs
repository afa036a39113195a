//! Search for smooth finite covers of closed 2-orbifolds.
//!
//! A cover is certified by a transitive permutation representation of the
//! orbifold's fundamental group in which the generator of each cone point
//! acts with all cycles of length exactly the cone order; such a cover has
//! no orbifold points left. The certificate is checked by an independent
//! verifier, including the Euler characteristic bookkeeping
//! chi(cover) = degree * chi(base).

use seifert::{parse_orbifold, smooth_cover_search, verify_certificate, CoverError};

fn main() {
    for text in [
        "g=0 o cones=2,2",
        "g=0 o cones=2,2,2,2",
        "g=0 o cones=3,3,3",
        "g=0 o cones=2,2,3,3",
        "g=1 o cones=2",
        "g=1 n cones=3,3",
    ] {
        let orb = parse_orbifold(text).unwrap();
        match smooth_cover_search(&orb, 12, 0) {
            Ok(cert) => {
                verify_certificate(&orb, &cert).unwrap();
                let surface = if cert.cover_orientable {
                    format!("orientable genus {}", cert.cover_genus)
                } else {
                    format!("nonorientable with {} crosscaps", cert.cover_genus)
                };
                println!("{orb}: degree {} cover, {surface}", cert.degree);
                for (i, (a, b)) in cert.handle_perms.iter().enumerate() {
                    println!("  handle {}: a = {a}, b = {b}", i + 1);
                }
                for (i, x) in cert.crosscap_perms.iter().enumerate() {
                    println!("  crosscap {}: {x}", i + 1);
                }
                for (i, c) in cert.cone_perms.iter().enumerate() {
                    println!("  cone {}: {c}", i + 1);
                }
            }
            Err(e) => println!("{orb}: {e}"),
        }
    }

    // Bad orbifolds (teardrop, spindle) have no smooth cover at all; the
    // search rejects them in closed form.
    println!();
    for text in ["g=0 o cones=3", "g=0 o cones=2,3"] {
        let orb = parse_orbifold(text).unwrap();
        match smooth_cover_search(&orb, 12, 0) {
            Err(CoverError::BadOrbifold(bad)) => println!("{orb}: refused, {bad}"),
            other => println!("{orb}: unexpected {other:?}"),
        }
    }
}
