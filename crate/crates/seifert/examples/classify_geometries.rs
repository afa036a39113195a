//! Normalize Seifert symbols and classify their Thurston geometries.
//!
//! The geometry of an orientable Seifert fibered space is decided by two
//! exact rationals: the orbifold Euler characteristic chi of the base and
//! the Euler number e of the bundle. The sign of chi picks the row,
//! vanishing of e picks the column.

use seifert::{parse_symbol, SeifertSymbol};

fn show(text: &str) -> SeifertSymbol {
    let s = parse_symbol(text).unwrap().normalize().unwrap();
    let orb = s.base_orbifold();
    println!(
        "{:40} base {:12} chi {:>6}  e {:>6}  {}",
        s.to_string(),
        orb.to_string(),
        orb.euler_characteristic().to_string(),
        s.euler_number().to_string(),
        s.geometry(),
    );
    s
}

fn main() {
    println!("one symbol per geometry cell:");
    show("{b=0; g=0; -}");
    show("{b=0; g=1; -}");
    show("{b=0; g=2; -}");
    show("{b=-1; g=0; (2,1)(3,1)(5,1)}");
    show("{b=1; g=1; -}");
    show("{b=1; g=0; (2,1)(2,1)(3,1)(3,1)}");

    println!();
    println!("normalization reduces each q into [0, p), carries into b, and");
    println!("drops order-one fibers:");
    let s = show("{b=0; g=0; (2,3)(3,-1)(1,7)(5,1)}");
    assert_eq!(s.to_string(), "{b=7; g=0; (2,1)(3,2)(5,1)}");

    println!();
    println!("nonorientable bases use gn, e.g. a Klein-bottle base:");
    show("{b=0; g=2n; -}");
}
