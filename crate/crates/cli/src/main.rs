//! Command-line front end for triangulations, normal surfaces, refinement and
//! the verification scenarios.
//!
//! Exit status: 0 on success or a passing check, 1 on a failing check, 2 on
//! bad input.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use normsurf::{
    boundary_components, build_prism, cone_all, cone_boundary, enumerate_admissible,
    enumerate_connected, format_vectors, refine_scaled, verify_lemma_weights, verify_outside,
    verify_prism, verify_theorem1, weight, EnumerationQuery, NormalVector, ParseError,
    RefinementMap, ScalingFunction, Skeleton, SurfaceTriangulation, Triangulation,
    VerificationReport,
};

#[derive(Parser)]
#[command(name = "normsurf", version, about = "Normal surfaces in triangulated 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a gluing table for consistency.
    Validate { tri: PathBuf },
    /// Print vertex, edge, face and boundary counts.
    Skeleton { tri: PathBuf },
    /// Refine tetrahedra with the cone subdivision.
    Refine {
        tri: PathBuf,
        #[command(flatten)]
        scale: ScaleArg,
        /// Directory receiving the source, scale and target for `push`/`classify`.
        #[arg(long)]
        map_out: Option<PathBuf>,
    },
    /// Cone boundary components to new vertices.
    Cone {
        tri: PathBuf,
        /// Cone only this boundary component; all by default.
        #[arg(long)]
        component: Option<usize>,
    },
    /// Build the prism triangulation over an edge-oriented surface.
    Prism {
        surface: PathBuf,
        /// Also write the canonical middle-level vector here.
        #[arg(long)]
        canonical_out: Option<PathBuf>,
    },
    /// Subdivide cyclically oriented triangles away.
    Orient { surface: PathBuf },
    /// List admissible vectors within a weight cap.
    Enumerate {
        tri: PathBuf,
        #[arg(long)]
        max_w1: u64,
        /// Drop vectors with arcs on boundary faces.
        #[arg(long)]
        closed: bool,
        /// File of tetrahedron indices the vectors may use.
        #[arg(long)]
        support: Option<PathBuf>,
        /// Keep only connected vectors.
        #[arg(long)]
        connected: bool,
        /// Abort after this many vectors.
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
    },
    /// Push a source vector through a saved refinement.
    Push {
        #[arg(long)]
        map: PathBuf,
        vector: PathBuf,
    },
    /// Split a refined vector into a source vector and cone-vertex spheres.
    Classify {
        #[arg(long)]
        map: PathBuf,
        vector: PathBuf,
    },
    /// Print the PL-area of an admissible vector.
    Weight { tri: PathBuf, vector: PathBuf },
    /// Check refinement normality exhaustively within a weight cap.
    VerifyTheorem1 {
        tri: PathBuf,
        #[arg(long)]
        scale: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_w1: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Check disk weight growth under repeated refinement.
    VerifyWeights {
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Check that the middle level is the only closed connected surface in a prism.
    VerifyPrism {
        /// Surface file; the boundary of a tetrahedron by default.
        surface: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_w1: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Check that light surfaces avoid a heavily refined exterior.
    VerifyOutside {
        /// Surface file; the boundary of a tetrahedron by default.
        surface: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        scale: u32,
        #[arg(long, default_value_t = 6)]
        max_w1: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ScaleArg {
    /// Per-tetrahedron refinement depths.
    #[arg(long)]
    scale: Option<PathBuf>,
    /// Refine every tetrahedron this many times.
    #[arg(long)]
    uniform: Option<u32>,
}

#[derive(Args)]
struct ReportArgs {
    /// Omit the timing line for byte-reproducible output.
    #[arg(long)]
    no_timing: bool,
}

/// A well-formed gluing table that fails validation.
#[derive(Debug)]
struct Invalid(String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid: {}", self.0)
    }
}

impl std::error::Error for Invalid {}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read<T>(path: &Path) -> Result<T>
where
    T: FromStr,
    T::Err: std::error::Error + Send + Sync + 'static,
{
    read_text(path)?.parse().with_context(|| format!("parsing {}", path.display()))
}

fn read_scale(path: &Path, t: &Triangulation) -> Result<ScalingFunction> {
    let f: ScalingFunction = read(path)?;
    if f.len() != t.tet_count() {
        bail!("{}: {} values for {} tetrahedra", path.display(), f.len(), t.tet_count());
    }
    Ok(f)
}

fn read_surface(path: Option<&Path>) -> Result<SurfaceTriangulation> {
    match path {
        Some(p) => read(p),
        None => Ok(SurfaceTriangulation::tetrahedron_boundary()),
    }
}

fn read_vector(path: &Path, t: &Triangulation) -> Result<NormalVector> {
    let v: NormalVector = read(path)?;
    if v.tet_count() != t.tet_count() {
        bail!("{}: vector has {} rows for {} tetrahedra", path.display(), v.tet_count(), t.tet_count());
    }
    Ok(v)
}

/// Rebuilds the refinement saved by `refine --map-out`.
fn load_map(dir: &Path) -> Result<RefinementMap> {
    let source: Triangulation = read(&dir.join("source.tri"))?;
    let f = read_scale(&dir.join("scale.txt"), &source)?;
    let (target, map) = refine_scaled(&source, &f)?;
    let saved = dir.join("target.tri");
    if saved.exists() && read::<Triangulation>(&saved)? != target {
        bail!("{} does not match the recomputed refinement", saved.display());
    }
    Ok(map)
}

fn report(r: &VerificationReport, args: &ReportArgs) -> ExitCode {
    print!("{}", r.render(!args.no_timing));
    if r.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn skeleton_text(t: &Triangulation) -> String {
    let (v, e, f, n) = Skeleton::new(t).counts();
    let mut out = format!("vertices {v}\nedges {e}\nfaces {f}\ntets {n}\n");
    let comps = boundary_components(t);
    let _ = writeln!(out, "boundary components {}", comps.len());
    for (i, c) in comps.iter().enumerate() {
        let _ = writeln!(
            out,
            "component {i}: faces {} closed {} euler {}",
            c.faces.len(),
            c.closed,
            c.euler_characteristic
        );
    }
    out
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Validate { tri } => {
            let text = read_text(&tri)?;
            match text.parse::<Triangulation>() {
                Ok(t) => {
                    println!("valid: {} tetrahedra, {} boundary faces", t.tet_count(), t.boundary_face_count());
                }
                Err(e @ ParseError::Invalid { .. }) => return Err(Invalid(e.to_string()).into()),
                Err(e) => return Err(anyhow::Error::new(e).context(format!("parsing {}", tri.display()))),
            }
        }
        Command::Skeleton { tri } => print!("{}", skeleton_text(&read(&tri)?)),
        Command::Refine { tri, scale, map_out } => {
            let t: Triangulation = read(&tri)?;
            let f = match (scale.scale, scale.uniform) {
                (Some(path), _) => read_scale(&path, &t)?,
                (None, Some(n)) => ScalingFunction::uniform(t.tet_count(), n),
                (None, None) => unreachable!("clap requires one of --scale/--uniform"),
            };
            let (target, _) = refine_scaled(&t, &f)?;
            if let Some(dir) = map_out {
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                fs::write(dir.join("source.tri"), t.to_string())?;
                fs::write(dir.join("scale.txt"), f.to_string())?;
                fs::write(dir.join("target.tri"), target.to_string())?;
            }
            print!("{target}");
        }
        Command::Cone { tri, component } => {
            let t: Triangulation = read(&tri)?;
            let out = match component {
                Some(k) => cone_boundary(&t, k)?,
                None => cone_all(&t)?,
            };
            print!("{out}");
        }
        Command::Prism { surface, canonical_out } => {
            let p = build_prism(&read(&surface)?)?;
            if let Some(path) = canonical_out {
                fs::write(&path, p.canonical.to_string())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            print!("{}", p.triangulation);
        }
        Command::Orient { surface } => {
            let s: SurfaceTriangulation = read(&surface)?;
            let (out, steps) = s.orient_acyclic();
            eprintln!("subdivisions: {steps}");
            print!("{out}");
        }
        Command::Enumerate { tri, max_w1, closed, support, connected, limit } => {
            let t: Triangulation = read(&tri)?;
            let mut q = EnumerationQuery::new(&t, max_w1).closed_only(closed).max_results(Some(limit));
            if let Some(path) = support {
                let text = read_text(&path)?;
                let tets = text
                    .lines()
                    .map(|l| l.split('#').next().unwrap_or(""))
                    .flat_map(str::split_whitespace)
                    .map(|tok| tok.parse::<usize>().with_context(|| format!("bad tetrahedron index `{tok}`")))
                    .collect::<Result<BTreeSet<usize>>>()?;
                q = q.support(tets);
            }
            let vectors: Vec<NormalVector> = if connected {
                enumerate_connected(&q)?.into_iter().map(|c| c.vector).collect()
            } else {
                enumerate_admissible(&q)?
            };
            print!("{}", format_vectors(&vectors));
        }
        Command::Push { map, vector } => {
            let map = load_map(&map)?;
            let v = read_vector(&vector, map.source())?;
            print!("{}", map.push_forward(&v)?);
        }
        Command::Classify { map, vector } => {
            let map = load_map(&map)?;
            let v = read_vector(&vector, map.target())?;
            let p = map.classify_pullback(&v)?;
            let spheres: Vec<String> = p.e_spheres.iter().map(|n| n.to_string()).collect();
            println!("e_spheres {}", spheres.join(" ").trim_end());
            println!("source");
            print!("{}", p.source);
        }
        Command::Weight { tri, vector } => {
            let t: Triangulation = read(&tri)?;
            let w = weight(&t, &read_vector(&vector, &t)?)?;
            println!("w1 {}\nw2 {}", w.w1, w.w2);
        }
        Command::VerifyTheorem1 { tri, scale, max_w1, report: args } => {
            let t: Triangulation = read(&tri)?;
            let f = read_scale(&scale, &t)?;
            return Ok(report(&verify_theorem1(&t, &f, max_w1)?, &args));
        }
        Command::VerifyWeights { depth, report: args } => {
            return Ok(report(&verify_lemma_weights(depth), &args));
        }
        Command::VerifyPrism { surface, max_w1, report: args } => {
            let s = read_surface(surface.as_deref())?;
            return Ok(report(&verify_prism(&s, max_w1)?, &args));
        }
        Command::VerifyOutside { surface, scale, max_w1, report: args } => {
            let (s, _) = read_surface(surface.as_deref())?.orient_acyclic();
            let p = build_prism(&s)?;
            return Ok(report(&verify_outside(&p, scale, max_w1)?, &args));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Invalid>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
