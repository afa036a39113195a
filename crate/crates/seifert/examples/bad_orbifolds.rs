//! Bad 2-orbifolds and what they force on Seifert symbols.
//!
//! The teardrop (one cone point on the sphere) and the spindle (two cone
//! points of different orders) admit no smooth finite cover. Both
//! rejection routes agree: the closed-form detector and an exhaustive
//! search up to the degree bound. And any normalized Seifert symbol whose
//! base is bad is forced into nonzero Euler number and spherical
//! geometry, which is exactly the refused regime of the pipeline.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seifert::cover::smooth_cover_search_exhaustive;
use seifert::{
    smooth_cover_search, CoverError, Geometry, Orbifold2D, RawSeifertSymbol,
};

fn main() {
    for orb in [
        Orbifold2D::new(0, true, vec![3]).unwrap(),
        Orbifold2D::new(0, true, vec![2, 3]).unwrap(),
        Orbifold2D::new(0, true, vec![4, 7]).unwrap(),
    ] {
        let closed_form = smooth_cover_search(&orb, 12, 0);
        let exhausted = smooth_cover_search_exhaustive(&orb, 12, 0);
        println!(
            "{orb}: {} / search to the bound says {}",
            match &closed_form {
                Err(CoverError::BadOrbifold(bad)) => format!("detected {bad}"),
                other => format!("unexpected {other:?}"),
            },
            match &exhausted {
                Err(CoverError::NotFound { degree_bound }) =>
                    format!("nothing up to degree {degree_bound}"),
                other => format!("unexpected {other:?}"),
            }
        );
    }

    // Sample random symbols over bad bases; every one has e != 0 and
    // spherical geometry.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut spindles = 0;
    for i in 0..500 {
        let teardrop = i % 2 == 0;
        let p1 = rng.gen_range(2..=12);
        let mut fibers = vec![(p1, coprime_to(&mut rng, p1))];
        if !teardrop {
            let p2 = loop {
                let c = rng.gen_range(2..=12);
                if c != p1 {
                    break c;
                }
            };
            fibers.push((p2, coprime_to(&mut rng, p2)));
            spindles += 1;
        }
        let s = RawSeifertSymbol {
            base_genus: 0,
            base_orientable: true,
            b: rng.gen_range(-5..=5),
            fibers,
        }
        .normalize()
        .unwrap();
        assert!(s.base_orbifold().bad_orbifold().is_some());
        assert_ne!(s.euler_number(), seifert::rational(0, 1));
        assert_eq!(s.geometry(), Geometry::S3);
    }
    println!();
    println!(
        "500 random symbols over bad bases ({spindles} spindles, {} teardrops): \
         all spherical with nonzero Euler number",
        500 - spindles
    );
}

fn coprime_to(rng: &mut ChaCha8Rng, p: i64) -> i64 {
    loop {
        let q = rng.gen_range(1..p);
        if num::integer::gcd(p, q) == 1 {
            return q;
        }
    }
}
