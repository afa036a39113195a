//! Upgrade a smooth cover to a regular (Galois) one.
//!
//! A certificate is regular exactly when the group generated by its
//! permutations has order equal to the degree. When it is not, replacing
//! every permutation by its left-translation action on the full generated
//! group gives a regular cover of the same base: the Galois closure.
//!
//! Two degree-4 covers of the one-cone-point torus make the contrast. The
//! one the deterministic search finds generates a dihedral group of order
//! 8; a hand-built one generates the alternating group on four points, of
//! order 12, so its closure is a degree-12 cover.

use seifert::cover::{deck_group_order, galois_closure};
use seifert::{
    parse_orbifold, smooth_cover_search, verify_certificate, CoverCertificate, Permutation,
};

fn inspect(label: &str, orb_text: &str, cert: &CoverCertificate) {
    let orb = parse_orbifold(orb_text).unwrap();
    verify_certificate(&orb, cert).unwrap();
    match deck_group_order(cert) {
        Ok(order) => println!("{label}: degree {}, already regular, deck order {order}", cert.degree),
        Err(e) => {
            println!("{label}: degree {}, {e}", cert.degree);
            let closure = galois_closure(cert).unwrap();
            verify_certificate(&orb, &closure).unwrap();
            println!(
                "  closure: degree {}, genus {}, deck order {}",
                closure.degree,
                closure.cover_genus,
                deck_group_order(&closure).unwrap()
            );
        }
    }
}

fn main() {
    let orb_text = "g=1 o cones=2";

    let searched = smooth_cover_search(&parse_orbifold(orb_text).unwrap(), 12, 0).unwrap();
    inspect("searched certificate", orb_text, &searched);

    let perm = |cycles: &str| Permutation::parse_cycles(cycles, 4).unwrap();
    let tetrahedral = CoverCertificate {
        degree: 4,
        handle_perms: vec![(perm("(1 2 3)"), perm("(1 2 4)"))],
        crosscap_perms: vec![],
        cone_perms: vec![perm("(1 2)(3 4)")],
        cover_genus: 2,
        cover_orientable: true,
    };
    inspect("hand-built certificate", orb_text, &tetrahedral);

    // Regularity is visible downstream: the closure's degree equals its
    // deck group order, so quotienting by the deck group recovers the base.
    let closure = galois_closure(&tetrahedral).unwrap();
    assert_eq!(deck_group_order(&closure), Ok(closure.degree));
    println!(
        "closure cone permutation acts in {}-cycles: {}",
        2,
        closure.cone_perms[0]
    );
}
