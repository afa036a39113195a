//! Thin command-line front end over the `seifert` library.
//!
//! Exit codes are a stable contract: 0 for success and completed
//! pipelines, 2 for refused inputs (spherical symbols, bad orbifolds),
//! 3 when a cover search exhausts its degree bound, 1 for errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use seifert::cover::{deck_group_order, galois_closure_with_cap, DEFAULT_GROUP_CAP};
use seifert::descent::{build_report, descent_degree_check};
use seifert::local_model::{run_exact_battery, run_float_battery, BatteryReport};
use seifert::pipeline::{PipelineStatus, SCHEMA_VERSION};
use seifert::{
    parse_orbifold, parse_symbol, run_pipeline, smooth_cover_search, verify_certificate,
    CoverCertificate, CoverError, PipelineOptions, SeifertSymbol,
};

#[derive(Parser)]
#[command(
    name = "seifert",
    version,
    about = "Classify Seifert fibered spaces, find smooth orbifold covers, \
             and run the circle-bundle descent arithmetic"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for shuffled search orders; 0 keeps the deterministic order.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cover-search degree bound, in multiples of the lcm of the cone
    /// orders.
    #[arg(long, global = true, default_value_t = seifert::cover::DEFAULT_MAX_MULT)]
    max_mult: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize a Seifert symbol and classify its Thurston geometry.
    Classify {
        /// Symbol text, e.g. "{b=1; g=0; (2,1)(2,1)(3,1)(3,1)}".
        symbol: String,
    },
    /// Search for a smooth finite cover of a closed 2-orbifold.
    Cover {
        /// Orbifold text, e.g. "g=0 o cones=2,2,3,3".
        orbifold: String,
        /// Also compute the Galois closure of the found certificate.
        #[arg(long)]
        closure: bool,
    },
    /// Fiberwise descent arithmetic for a symbol at a covering degree.
    Descent {
        /// Symbol text.
        symbol: String,
        /// Covering degree; defaults to the lcm of the cone orders.
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Residual battery for the resolved local model at one fiber type.
    VerifyLocalModel {
        /// Fiber order (the p of a (p, q) exceptional fiber).
        #[arg(short, long)]
        p: i64,
        /// Fiber twisting, coprime to p.
        #[arg(short, long)]
        q: i64,
        /// Sample count per battery.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Also run the exact-arithmetic battery (zero tolerance).
        #[arg(long)]
        exact: bool,
    },
    /// Full route: classify, cover, take the Galois closure, descend.
    Pipeline {
        /// Symbol text.
        symbol: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let opts = PipelineOptions {
        seed: cli.seed,
        max_mult: cli.max_mult,
        group_cap: DEFAULT_GROUP_CAP,
    };
    let result = match cli.command {
        Command::Classify { symbol } => cmd_classify(&symbol, json),
        Command::Cover { orbifold, closure } => cmd_cover(&orbifold, closure, &opts, json),
        Command::Descent { symbol, degree } => cmd_descent(&symbol, degree, json),
        Command::VerifyLocalModel {
            p,
            q,
            samples,
            exact,
        } => cmd_verify_local_model(p, q, samples, exact, cli.seed, json),
        Command::Pipeline { symbol } => cmd_pipeline(&symbol, &opts, json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            if json {
                let value = json!({ "schema": SCHEMA_VERSION, "error": msg });
                println!("{value}");
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
    }
}

fn parse_normalized(text: &str) -> Result<SeifertSymbol, String> {
    parse_symbol(text)
        .map_err(|e| e.to_string())?
        .normalize()
        .map_err(|e| e.to_string())
}

fn cmd_classify(text: &str, json: bool) -> Result<u8, String> {
    let s = parse_normalized(text)?;
    let orb = s.base_orbifold();
    let chi = orb.euler_characteristic();
    let e = s.euler_number();
    let geometry = s.geometry();
    if json {
        let value = json!({
            "schema": SCHEMA_VERSION,
            "symbol": s.to_string(),
            "base_orbifold": orb.to_string(),
            "chi": chi.to_string(),
            "e": e.to_string(),
            "geometry": geometry,
            "spherical": s.is_spherical(),
        });
        println!("{value}");
    } else {
        println!("symbol    {s}");
        println!("base      {orb}");
        println!("chi       {chi}");
        println!("e         {e}");
        println!("geometry  {geometry}");
    }
    Ok(0)
}

fn cmd_cover(
    text: &str,
    with_closure: bool,
    opts: &PipelineOptions,
    json: bool,
) -> Result<u8, String> {
    let orb = parse_orbifold(text).map_err(|e| e.to_string())?;
    match smooth_cover_search(&orb, opts.max_mult, opts.seed) {
        Ok(cert) => {
            verify_certificate(&orb, &cert).map_err(|e| e.to_string())?;
            let closure = if with_closure {
                let c = galois_closure_with_cap(&cert, opts.group_cap)
                    .map_err(|e| e.to_string())?;
                verify_certificate(&orb, &c).map_err(|e| e.to_string())?;
                deck_group_order(&c).map_err(|e| e.to_string())?;
                Some(c)
            } else {
                None
            };
            if json {
                let value = json!({
                    "schema": SCHEMA_VERSION,
                    "orbifold": orb.to_string(),
                    "status": "found",
                    "certificate": cert,
                    "closure": closure,
                });
                println!("{value}");
            } else {
                println!("orbifold  {orb}");
                print_certificate("cover", &cert);
                if let Some(c) = &closure {
                    print_certificate("closure", c);
                    println!("deck group order {}", c.degree);
                }
            }
            Ok(0)
        }
        Err(CoverError::BadOrbifold(bad)) => {
            let note = format!("{orb} is a {bad} and has no smooth cover");
            if json {
                let value = json!({
                    "schema": SCHEMA_VERSION,
                    "orbifold": orb.to_string(),
                    "status": "refused",
                    "note": note,
                });
                println!("{value}");
            } else {
                println!("refused: {note}");
            }
            Ok(2)
        }
        Err(CoverError::NotFound { degree_bound }) => {
            let note = format!("no certificate up to degree {degree_bound}");
            if json {
                let value = json!({
                    "schema": SCHEMA_VERSION,
                    "orbifold": orb.to_string(),
                    "status": "not_found",
                    "note": note,
                });
                println!("{value}");
            } else {
                println!("not found: {note}");
            }
            Ok(3)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_descent(text: &str, degree: Option<i64>, json: bool) -> Result<u8, String> {
    let s = parse_normalized(text)?;
    let degree = degree.unwrap_or_else(|| {
        s.fibers()
            .iter()
            .fold(1, |acc, &(p, _)| num::integer::lcm(acc, p))
    });
    if degree < 1 {
        return Err(format!("degree must be positive, got {degree}"));
    }
    let report = build_report(&s, degree).map_err(|e| e.to_string())?;
    if json {
        let value = json!({
            "schema": SCHEMA_VERSION,
            "symbol": s.to_string(),
            "degree": degree,
            "report": report,
        });
        println!("{value}");
    } else {
        println!("symbol    {s}");
        println!("degree    {degree}");
        for (i, d) in report.fiber_data.iter().enumerate() {
            println!(
                "fiber {}: order {}, exponent {}, twist {}, residual {}",
                i + 1,
                d.p,
                d.q_exp,
                report.twist.coefficients[i],
                report.residuals[i],
            );
        }
        let (ratio, ok) = descent_degree_check(report.pullback_euler, degree);
        println!("pullback  {}", report.pullback_euler);
        println!(
            "descends  {}",
            if ok {
                format!("yes (degree {ratio} downstairs)")
            } else {
                format!("no ({ratio} is not an integer)")
            }
        );
    }
    Ok(0)
}

fn cmd_verify_local_model(
    p: i64,
    q: i64,
    samples: u64,
    exact: bool,
    seed: u64,
    json: bool,
) -> Result<u8, String> {
    let mut reports = vec![run_float_battery(p, q, samples, seed).map_err(|e| e.to_string())?];
    if exact {
        reports.push(run_exact_battery(p, q, samples, seed).map_err(|e| e.to_string())?);
    }
    let pass = reports.iter().all(|r| r.pass);
    if json {
        let value = json!({
            "schema": SCHEMA_VERSION,
            "reports": reports,
            "pass": pass,
        });
        println!("{value}");
    } else {
        for r in &reports {
            print_battery(r);
        }
        println!("{}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { 0 } else { 1 })
}

fn cmd_pipeline(text: &str, opts: &PipelineOptions, json: bool) -> Result<u8, String> {
    let s = parse_normalized(text)?;
    let report = run_pipeline(&s, opts).map_err(|e| e.to_string())?;
    if json {
        println!(
            "{}",
            serde_json::to_string(&report).map_err(|e| e.to_string())?
        );
    } else {
        println!("symbol    {}", report.symbol);
        println!("base      {} (chi {})", report.base_orbifold, report.orbifold_euler);
        println!("e         {}", report.euler_number);
        println!("geometry  {}", report.geometry);
        println!("status    {}", status_word(report.status));
        if let Some(orb) = &report.search_orbifold {
            println!("searched  {orb} (orientation double cover)");
        }
        if let Some(cert) = &report.initial_cover {
            print_certificate("cover", cert);
        }
        if let Some(closure) = &report.cover {
            print_certificate("closure", closure);
            println!("deck group order {}", closure.degree);
        }
        if let Some(d) = report.composite_degree {
            println!("composite degree {d}");
        }
        if let (Some(pullback), Some(d)) = (report.pullback_euler, report.composite_degree) {
            let (ratio, ok) = descent_degree_check(pullback, d);
            println!("pullback  {pullback}");
            if let Some(descent) = &report.descent {
                println!("residuals {:?}", descent.residuals);
            }
            println!(
                "descends  {}",
                if ok {
                    format!("yes (degree {ratio} downstairs)")
                } else {
                    format!("no ({ratio} is not an integer)")
                }
            );
        }
        if let Some(note) = &report.note {
            println!("note      {note}");
        }
    }
    Ok(match report.status {
        PipelineStatus::Completed => 0,
        PipelineStatus::RefusedSpherical | PipelineStatus::RefusedBadOrbifoldSpherical => 2,
        PipelineStatus::CoverNotFound => 3,
    })
}

fn status_word(status: PipelineStatus) -> &'static str {
    match status {
        PipelineStatus::Completed => "completed",
        PipelineStatus::RefusedSpherical => "refused (spherical)",
        PipelineStatus::RefusedBadOrbifoldSpherical => "refused (bad orbifold, spherical)",
        PipelineStatus::CoverNotFound => "cover not found",
    }
}

fn print_certificate(label: &str, cert: &CoverCertificate) {
    let surface = if cert.cover_orientable {
        format!("orientable genus {}", cert.cover_genus)
    } else {
        format!("nonorientable, {} crosscaps", cert.cover_genus)
    };
    println!("{label}: degree {}, {surface}", cert.degree);
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

fn print_battery(r: &BatteryReport) {
    println!(
        "{} battery: p={} q={} samples={} seed={} tolerance={:e}",
        r.mode, r.p, r.q, r.samples, r.seed, r.tolerance
    );
    println!("  membership        {:e}", r.max_membership_residual);
    println!("  quotient          {:e}", r.max_quotient_residual);
    println!("  trivialization    {:e}", r.max_trivialization_roundtrip);
    println!("  equivariance      {:e}", r.max_equivariance_residual);
    println!("  section           {:e}", r.max_section_residual);
    println!("  commuting square  {:e}", r.max_commuting_square_residual);
}
