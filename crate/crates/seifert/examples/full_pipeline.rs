//! The full route, end to end: classify a symbol, find a smooth cover of
//! the base, close it up to a regular cover, and run the bundle descent
//! arithmetic over it.
//!
//! Spherical symbols are refused rather than processed (those manifolds
//! are handled by Kollár's classical construction), and nonorientable
//! bases are first replaced by their orientation double cover.

use seifert::{run_pipeline, parse_symbol, PipelineOptions};

fn main() {
    let opts = PipelineOptions::default();
    for text in [
        "{b=1; g=0; (2,1)(2,1)(3,1)(3,1)}",
        "{b=0; g=1; -}",
        "{b=0; g=1n; (2,1)(2,1)}",
        "{b=-1; g=0; (2,1)(3,1)(5,1)}",
    ] {
        let s = parse_symbol(text).unwrap().normalize().unwrap();
        let report = run_pipeline(&s, &opts).unwrap();
        println!("{}", report.symbol);
        println!("  geometry {}, e = {}", report.geometry, report.euler_number);
        println!("  status {:?}", report.status);
        if let Some(orb) = &report.search_orbifold {
            println!("  searched the orientation double cover {orb}");
        }
        if let (Some(initial), Some(closure)) = (&report.initial_cover, &report.cover) {
            println!(
                "  cover degree {} -> regular closure degree {}",
                initial.degree, closure.degree
            );
        }
        if let (Some(d), Some(pullback)) = (report.composite_degree, report.pullback_euler) {
            println!("  composite degree {d}, pullback Euler number {pullback}");
        }
        if let Some(descent) = &report.descent {
            println!("  residual exponents {:?}", descent.residuals);
        }
        if let Some(note) = &report.note {
            println!("  note: {note}");
        }
        println!();
    }
}
