//! Exhaustive desk-scale checks of the refinement, prism and heavy-exterior
//! statements, reported as plain text.

use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::enumerate::{enumerate_admissible, enumerate_connected, EnumerationError, EnumerationQuery};
use crate::normal::{is_admissible, supported_in, weight, DiskType, NormalVector};
use crate::prism::{build_heavy_exterior, build_prism, PrismComplex, PrismError, SurfaceTriangulation};
use crate::refine::{refine_scaled, weight_growth, RefineError, ScalingFunction};
use crate::triangulation::Triangulation;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Refine(#[from] RefineError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Prism(#[from] PrismError),
}

/// Outcome of one verification scenario.
///
/// Rendered as `key: value` lines in a fixed order: scenario, parameters,
/// status, summary, counterexample, elapsed_ms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub scenario: String,
    pub parameters: Vec<(String, String)>,
    pub summary: Vec<String>,
    /// Present exactly when the check failed.
    pub counterexample: Option<String>,
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(scenario: &str) -> Self {
        Self {
            scenario: scenario.to_string(),
            parameters: Vec::new(),
            summary: Vec::new(),
            counterexample: None,
            elapsed: Duration::ZERO,
        }
    }

    fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    fn fail(&mut self, what: String) {
        if self.counterexample.is_none() {
            self.counterexample = Some(what);
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// The report text; the timing line is omitted when `timing` is false,
    /// making the output reproducible byte for byte.
    pub fn render(&self, timing: bool) -> String {
        let mut out = format!("scenario: {}\n", self.scenario);
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("parameters: {}\n", params.join(" ")));
        out.push_str(&format!("status: {}\n", if self.passed() { "PASS" } else { "FAIL" }));
        out.push_str("summary:\n");
        for line in &self.summary {
            out.push_str(&format!("  {line}\n"));
        }
        match &self.counterexample {
            None => out.push_str("counterexample: none\n"),
            Some(c) => {
                out.push_str("counterexample:\n");
                for line in c.lines() {
                    out.push_str(&format!("  {line}\n"));
                }
            }
        }
        if timing {
            out.push_str(&format!("elapsed_ms: {}\n", self.elapsed.as_millis()));
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

fn vector_payload(label: &str, v: &NormalVector, problem: impl fmt::Display) -> String {
    format!("{label}: {problem}\n{v}")
}

/// Checks, for every admissible vector within the cap, that refinement by
/// `f` neither creates nor destroys normal surfaces: source vectors push
/// forward admissibly and are recovered exactly by pull-back, and target
/// vectors classify into a source vector plus cone-vertex spheres and are
/// rebuilt exactly from that classification.
pub fn verify_theorem1(
    t: &Triangulation,
    f: &ScalingFunction,
    max_w1: u64,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let scale: Vec<String> = f.0.iter().map(|x| x.to_string()).collect();
    let mut r = VerificationReport::new("refinement-normality")
        .param("tets", t.tet_count())
        .param("scale", format!("[{}]", scale.join(",")))
        .param("max_w1", max_w1);
    let (target, map) = refine_scaled(t, f)?;
    r.summary.push(format!("refined tetrahedra: {}", target.tet_count()));

    let source_vectors = enumerate_admissible(&EnumerationQuery::new(t, max_w1))?;
    r.summary.push(format!("source vectors: {}", source_vectors.len()));
    for v in &source_vectors {
        let pushed = match map.push_forward(v) {
            Ok(p) => p,
            Err(e) => {
                r.fail(vector_payload("source vector", v, format!("push-forward failed: {e}")));
                break;
            }
        };
        if !is_admissible(&target, &pushed).unwrap_or(false) {
            r.fail(vector_payload("source vector", v, "push-forward is not admissible"));
            break;
        }
        match map.classify_pullback(&pushed) {
            Ok(p) if p.source == *v && p.e_sphere_total() == 0 => {}
            Ok(_) => {
                r.fail(vector_payload("source vector", v, "pull-back of push-forward differs"));
                break;
            }
            Err(e) => {
                r.fail(vector_payload("source vector", v, format!("pull-back failed: {e}")));
                break;
            }
        }
    }

    let target_vectors = enumerate_admissible(&EnumerationQuery::new(&target, max_w1))?;
    r.summary.push(format!("target vectors: {}", target_vectors.len()));
    let mut with_spheres = 0usize;
    for v in &target_vectors {
        match map.classify_pullback(v) {
            Ok(p) => {
                if map.realize(&p) != *v {
                    r.fail(vector_payload("target vector", v, "classification does not rebuild it"));
                    break;
                }
                if p.e_sphere_total() > 0 {
                    with_spheres += 1;
                }
            }
            Err(e) => {
                r.fail(vector_payload("target vector", v, format!("classification failed: {e}")));
                break;
            }
        }
    }
    r.summary.push(format!("target vectors with cone-vertex spheres: {with_spheres}"));
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Refines each of the seven disk types `depth` times and checks the growth
/// recurrences and `w_n > n`.
pub fn verify_lemma_weights(depth: usize) -> VerificationReport {
    let start = Instant::now();
    let mut r = VerificationReport::new("disk-weight-growth").param("depth", depth);
    for disk in DiskType::ALL {
        let g = weight_growth(disk, depth);
        let join = |xs: &[u64]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        r.summary.push(format!("{disk}: w=({}) d=({})", join(&g.w), join(&g.d)));
        if let Err(e) = g.check() {
            r.fail(format!("{disk}: {e}\nw=({}) d=({})", join(&g.w), join(&g.d)));
        }
    }
    r.elapsed = start.elapsed();
    r
}

/// Builds the prism over `s` (after removing cyclic triangles) and checks
/// that every connected closed admissible vector within the cap is the
/// canonical `F × {0}` vector.
pub fn verify_prism(s: &SurfaceTriangulation, max_w1: u64) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let (oriented, steps) = s.orient_acyclic();
    let p = build_prism(&oriented)?;
    let t = &p.triangulation;
    let mut r = VerificationReport::new("prism-uniqueness")
        .param("triangles", s.triangle_count())
        .param("max_w1", max_w1);
    r.summary.push(format!("subdivisions: {steps}"));
    r.summary.push(format!("prism tetrahedra: {}", t.tet_count()));
    let canonical_weight = weight(t, &p.canonical).map_err(RefineError::from)?;
    r.summary.push(format!("canonical weight: {canonical_weight}"));
    let found = enumerate_connected(&EnumerationQuery::new(t, max_w1).closed_only(true))?;
    r.summary.push(format!("connected closed vectors: {}", found.len()));
    r.summary.push(format!(
        "canonical among them: {}",
        found.iter().any(|c| c.vector == p.canonical)
    ));
    if let Some(c) = found.iter().find(|c| c.vector != p.canonical) {
        let w = weight(t, &c.vector).map_err(RefineError::from)?;
        r.fail(vector_payload(
            "connected closed vector",
            &c.vector,
            format!("differs from the canonical vector (weight {w}, euler {})", c.euler_characteristic),
        ));
    }
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Closes the prism by coning, refines the exterior `n` times, and checks that
/// every admissible vector with `w1 ≤ min(max_w1, n)` lies in the prism.
pub fn verify_outside(p: &PrismComplex, n: u32, max_w1: u64) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let cap = max_w1.min(u64::from(n));
    let mut r = VerificationReport::new("heavy-exterior")
        .param("prism_tets", p.prism_tets.len())
        .param("scale", n)
        .param("max_w1", max_w1);
    let h = build_heavy_exterior(p, n)?;
    r.summary.push("closure: coned sphere boundaries".to_string());
    r.summary.push(format!("tetrahedra: {}", h.triangulation.tet_count()));
    r.summary.push(format!("effective cap: {cap}"));
    let found = if cap == 0 {
        Vec::new()
    } else {
        enumerate_admissible(&EnumerationQuery::new(&h.triangulation, cap))?
    };
    r.summary.push(format!("vectors within cap: {}", found.len()));
    if let Some(v) = found.iter().find(|v| !supported_in(v, &h.prism_tets)) {
        r.fail(vector_payload("vector", v, "has disks outside the prism"));
    }
    r.elapsed = start.elapsed();
    Ok(r)
}
