//! End-to-end driver: classify a Seifert symbol, find a smooth orbifold
//! cover of its base, pass to the Galois closure, and run the descent
//! arithmetic for the pulled-back circle bundle.
//!
//! Spherical inputs are refused rather than processed: those manifolds
//! already carry uniruled models by Kollár's construction for real
//! algebraic threefolds, and the bad base orbifolds (teardrops and
//! spindles) only occur in that refused regime.

use serde::{Deserialize, Serialize};

use crate::cover::{
    deck_group_order, galois_closure_with_cap, orientation_double_cover, smooth_cover_search,
    verify_certificate, CertificateDefect, CoverCertificate, CoverError, DEFAULT_GROUP_CAP,
    DEFAULT_MAX_MULT,
};
use crate::descent::{build_report, DescentError, DescentReport};
use crate::geometry::Geometry;
use crate::symbol::SeifertSymbol;

/// Version tag written into every report.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PipelineError {
    #[error("cover stage failed: {0}")]
    Cover(#[from] CoverError),
    #[error("descent stage failed: {0}")]
    Descent(#[from] DescentError),
    #[error("internal certificate defect: {0}")]
    Defect(#[from] CertificateDefect),
}

/// Knobs threaded through the cover search and closure stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Shuffle seed for the search's candidate alphabets; 0 keeps the
    /// deterministic ascending order.
    pub seed: u64,
    /// Degree bound for the cover search, as a multiple of the lcm of the
    /// cone orders.
    pub max_mult: u32,
    /// Abort threshold for the deck group closure.
    pub group_cap: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            seed: 0,
            max_mult: DEFAULT_MAX_MULT,
            group_cap: DEFAULT_GROUP_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PipelineStatus {
    /// Cover found, closed up, and the descent arithmetic carried out.
    Completed,
    /// Spherical input, outside the scope of the cover-and-descend route.
    RefusedSpherical,
    /// Spherical input whose base orbifold is a teardrop or spindle.
    RefusedBadOrbifoldSpherical,
    /// The search exhausted its degree bound without a certificate.
    CoverNotFound,
}

impl PipelineStatus {
    pub fn is_refused(self) -> bool {
        matches!(
            self,
            PipelineStatus::RefusedSpherical | PipelineStatus::RefusedBadOrbifoldSpherical
        )
    }
}

/// Everything the pipeline learned about one symbol. Stage fields are
/// `None` whenever the run stopped before reaching them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub schema: u32,
    /// Normalized symbol the run operated on.
    pub symbol: String,
    pub geometry: Geometry,
    /// Exact Euler number of the bundle, e.g. `-8/3`.
    pub euler_number: String,
    pub base_orbifold: String,
    /// Exact orbifold Euler characteristic of the base.
    pub orbifold_euler: String,
    pub status: PipelineStatus,
    /// Human-readable reason when the run stopped early.
    pub note: Option<String>,
    /// Whether the base was replaced by its orientation double cover
    /// before the search.
    pub base_doubled: bool,
    /// The orbifold the search actually ran on, when it differs from the
    /// base.
    pub search_orbifold: Option<String>,
    /// The minimal certificate the search found.
    pub initial_cover: Option<CoverCertificate>,
    /// Galois closure of the initial certificate: a regular smooth cover.
    pub cover: Option<CoverCertificate>,
    /// Total covering degree over the original base: the closure degree,
    /// times two when the base was doubled.
    pub composite_degree: Option<i64>,
    /// Euler number of the bundle pulled back along the composite cover.
    pub pullback_euler: Option<i64>,
    pub descent: Option<DescentReport>,
}

/// Run the full route on a normalized symbol. Early stops (refusals and
/// exhausted searches) are reports, not errors; `Err` is reserved for
/// resource limits and internal defects.
pub fn run_pipeline(
    s: &SeifertSymbol,
    opts: &PipelineOptions,
) -> Result<PipelineReport, PipelineError> {
    let orb = s.base_orbifold();
    let geometry = s.geometry();
    let mut report = PipelineReport {
        schema: SCHEMA_VERSION,
        symbol: s.to_string(),
        geometry,
        euler_number: s.euler_number().to_string(),
        base_orbifold: orb.to_string(),
        orbifold_euler: orb.euler_characteristic().to_string(),
        status: PipelineStatus::Completed,
        note: None,
        base_doubled: false,
        search_orbifold: None,
        initial_cover: None,
        cover: None,
        composite_degree: None,
        pullback_euler: None,
        descent: None,
    };

    if geometry == Geometry::S3 {
        match orb.bad_orbifold() {
            Some(bad) => {
                report.status = PipelineStatus::RefusedBadOrbifoldSpherical;
                report.note = Some(format!(
                    "base orbifold {orb} is a {bad}, which has no smooth cover, and \
                     the normalized symbol forces spherical geometry; spherical \
                     Seifert manifolds already have uniruled models by Kollár's \
                     construction for real algebraic threefolds"
                ));
            }
            None => {
                report.status = PipelineStatus::RefusedSpherical;
                report.note = Some(
                    "spherical geometry: these manifolds already have uniruled models \
                     by Kollár's construction for real algebraic threefolds, so the \
                     cover-and-descend route is not attempted"
                        .to_string(),
                );
            }
        }
        return Ok(report);
    }

    let (search_orb, doubled) = if orb.orientable() {
        (orb.clone(), false)
    } else {
        (orientation_double_cover(&orb)?, true)
    };
    report.base_doubled = doubled;
    if doubled {
        report.search_orbifold = Some(search_orb.to_string());
    }

    let cert = match smooth_cover_search(&search_orb, opts.max_mult, opts.seed) {
        Ok(c) => c,
        Err(CoverError::NotFound { degree_bound }) => {
            report.status = PipelineStatus::CoverNotFound;
            report.note = Some(format!(
                "no smooth cover certificate up to degree {degree_bound}; \
                 rerun with a larger degree multiplier"
            ));
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    verify_certificate(&search_orb, &cert)?;

    let closure = galois_closure_with_cap(&cert, opts.group_cap)?;
    verify_certificate(&search_orb, &closure)?;
    deck_group_order(&closure)?;

    let composite = closure.degree as i64 * if doubled { 2 } else { 1 };
    let descent = build_report(s, composite)?;

    report.initial_cover = Some(cert);
    report.cover = Some(closure);
    report.composite_degree = Some(composite);
    report.pullback_euler = Some(descent.pullback_euler);
    report.descent = Some(descent);
    Ok(report)
}
