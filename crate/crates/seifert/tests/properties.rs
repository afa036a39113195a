//! Randomized algebraic invariants with shrinking.

use num::integer::gcd;
use proptest::prelude::*;

use seifert::cover::orientation_double_cover;
use seifert::descent::{compute_twist, residual_exponents, FiberRepDatum};
use seifert::local_model::{ModelScalar, PolarRational};
use seifert::{parse_symbol, rational, Orbifold2D, Permutation, Rational, RawSeifertSymbol};

fn raw_symbols() -> impl Strategy<Value = RawSeifertSymbol> {
    let fiber =
        (2i64..=9, -12i64..=12).prop_filter("coprime", |&(p, q)| gcd(p, q.rem_euclid(p)) == 1);
    (
        any::<bool>(),
        0u32..4,
        -6i64..=6,
        prop::collection::vec(fiber, 0..4),
    )
        .prop_map(|(orientable, genus, b, fibers)| RawSeifertSymbol {
            base_genus: if orientable { genus } else { genus.max(1) },
            base_orientable: orientable,
            b,
            fibers,
        })
}

fn permutations(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #[test]
    fn normalization_is_idempotent_and_preserves_e(raw in raw_symbols()) {
        let s = raw.clone().normalize().unwrap();
        for &(p, q) in s.fibers() {
            prop_assert!(p >= 2 && 0 <= q && q < p);
        }
        let again = RawSeifertSymbol {
            base_genus: s.base_genus(),
            base_orientable: s.base_orientable(),
            b: s.b(),
            fibers: s.fibers().to_vec(),
        }
        .normalize()
        .unwrap();
        prop_assert_eq!(&again, &s);

        // The carry bookkeeping never changes the Euler number.
        let direct = -(rational(raw.b, 1)
            + raw
                .fibers
                .iter()
                .map(|&(p, q)| rational(q, p))
                .sum::<Rational>());
        prop_assert_eq!(s.euler_number(), direct);
    }

    #[test]
    fn symbol_display_round_trips(raw in raw_symbols()) {
        let s = raw.normalize().unwrap();
        let back = parse_symbol(&s.to_string()).unwrap().normalize().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn permutation_group_laws(
        a in permutations(7),
        b in permutations(7),
        c in permutations(7),
    ) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.compose(&a.inverse()), Permutation::identity(7));
        prop_assert_eq!(a.inverse().compose(&a), Permutation::identity(7));
        prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
        let rebuilt = Permutation::from_cycles(7, &a.cycles()).unwrap();
        prop_assert_eq!(rebuilt, a);
    }

    #[test]
    fn twists_cancel(
        data in prop::collection::vec(
            (2i64..=12).prop_flat_map(|p| (Just(p), 0..p)),
            1..6,
        )
    ) {
        let data: Vec<FiberRepDatum> = data
            .into_iter()
            .map(|(p, q_exp)| FiberRepDatum { p, q_exp })
            .collect();
        let residuals = residual_exponents(&data, &compute_twist(&data)).unwrap();
        prop_assert!(residuals.iter().all(|&r| r == 0));
    }

    #[test]
    fn double_cover_doubles_the_euler_characteristic(
        genus in 1u32..4,
        cones in prop::collection::vec(2i64..=9, 0..4),
    ) {
        let orb = Orbifold2D::new(genus, false, cones).unwrap();
        let doubled = orientation_double_cover(&orb).unwrap();
        prop_assert!(doubled.orientable());
        prop_assert_eq!(
            doubled.euler_characteristic(),
            orb.euler_characteristic() * rational(2, 1)
        );
        prop_assert_eq!(doubled.cone_orders().len(), 2 * orb.cone_orders().len());
    }

    #[test]
    fn exact_scalar_algebra_laws(
        k1 in 0i64..840,
        k2 in 0i64..840,
        re in -5i64..=5,
        im in -5i64..=5,
        den in 6i64..=12,
        n in 0i64..5,
        m in 0i64..5,
    ) {
        let a = PolarRational::root_of_unity(k1, 840);
        let b = PolarRational::root_of_unity(k2, 840)
            .product(&PolarRational::gaussian(re, im, den));
        prop_assert_eq!(a.product(&b), b.product(&a));
        prop_assert_eq!(a.product(&b).product(&b), a.product(&b.product(&b)));
        prop_assert_eq!(b.pow_int(n + m), b.pow_int(n).product(&b.pow_int(m)));
        prop_assert_eq!(a.pow_int(840), PolarRational::root_of_unity(0, 1));
    }
}
