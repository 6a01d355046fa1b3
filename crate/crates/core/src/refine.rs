//! Cone refinement of tetrahedra and the transfer of normal coordinates.
//!
//! Refining a tetrahedron `[0, 1, 2, 3]` adds an interior vertex `e` and
//! replaces the tetrahedron by four children. Child `X` omits parent vertex
//! `X`; its labels 0..3 are the remaining parent vertices in ascending order
//! and label 3 is `e`. The children occupy four consecutive target indices,
//! child `X` at offset `X`. Parent face `X` is face 3 of child `X`.
//!
//! Every parent normal disk is a union of child disks in one of two ways, and
//! the only other connected normal piece inside a refined tetrahedron is the
//! sphere linking `e`. These fifteen local patterns drive both directions of
//! the coordinate transfer.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::normal::{
    components_unchecked, is_admissible, quad_for_pair, weight_unchecked, DiskType, NormalError,
    NormalVector, COORDS_PER_TET, QUAD_PAIRS,
};
use crate::perm::Perm4;
use crate::skeleton::Skeleton;
use crate::triangulation::{content_lines, Gluing, Triangulation};

const LOCAL_COORDS: usize = 4 * COORDS_PER_TET;

/// Label of parent vertex `w` inside child `x` (`w != x`).
#[inline]
pub fn child_label(x: usize, w: usize) -> usize {
    debug_assert!(w != x && w < 4);
    if w < x {
        w
    } else {
        w - 1
    }
}

/// Parent vertex carried by label `c < 3` of child `x`.
#[inline]
pub fn parent_label(x: usize, c: usize) -> usize {
    debug_assert!(c < 3);
    if c < x {
        c
    } else {
        c + 1
    }
}

/// Label of the new cone vertex in every child.
pub const CONE_LABEL: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RefineError {
    #[error("tet index {index} out of range ({count} tets)")]
    TetOutOfRange { index: usize, count: usize },
    #[error("scaling function has {found} entries, triangulation has {expected} tets")]
    ScaleSizeMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error(
        "round {round}, tet {tet}: piece {piece:?} matches no local pattern (not parent-normal)"
    )]
    NotParentNormal { round: usize, tet: usize, piece: Vec<u64> },
    #[error("round {round}: assembled parent vector violates the matching equations")]
    ParentInadmissible { round: usize },
}

/// A non-negative refinement depth per tetrahedron.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalingFunction(pub Vec<u32>);

impl ScalingFunction {
    pub fn uniform(tets: usize, depth: u32) -> Self {
        Self(vec![depth; tets])
    }

    pub fn zero(tets: usize) -> Self {
        Self(vec![0; tets])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for ScalingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        writeln!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: `{token}` is not a non-negative integer")]
pub struct ScaleParseError {
    pub line: usize,
    pub token: String,
}

impl FromStr for ScalingFunction {
    type Err = ScaleParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        for (line, content) in content_lines(text) {
            for tok in content.split_whitespace() {
                out.push(
                    tok.parse()
                        .map_err(|_| ScaleParseError { line, token: tok.to_string() })?,
                );
            }
        }
        Ok(Self(out))
    }
}

/// Where a tetrahedron of one refinement round goes in the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TetImage {
    Copied(usize),
    /// Children occupy `first..first + 4`.
    Split(usize),
}

/// A single round of refinement.
#[derive(Clone, Debug)]
pub struct RefinementStep {
    pub target: Triangulation,
    pub images: Vec<TetImage>,
    /// Registry id of the cone vertex added inside each split tetrahedron.
    pub new_vertex: Vec<Option<usize>>,
}

/// Vertex of a descendant tetrahedron: an original vertex label of its
/// ancestor, or a registered cone vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    Source(usize),
    New(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descendant {
    pub tet: usize,
    pub labels: [VertexLabel; 4],
}

/// A cone vertex introduced by refinement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NewVertex {
    /// 0-based refinement round.
    pub round: usize,
    /// Source tetrahedron the vertex lies in.
    pub origin: usize,
    /// Index of the refined tetrahedron within its round's input.
    pub tet: usize,
}

/// Composition of refinement rounds from a source to a target triangulation.
#[derive(Clone, Debug)]
pub struct RefinementMap {
    source: Triangulation,
    steps: Vec<RefinementStep>,
    new_vertices: Vec<NewVertex>,
    descendants: Vec<Vec<Descendant>>,
}

impl RefinementMap {
    pub fn identity(t: &Triangulation) -> Self {
        let descendants = (0..t.tet_count())
            .map(|tet| {
                vec![Descendant {
                    tet,
                    labels: [0, 1, 2, 3].map(VertexLabel::Source),
                }]
            })
            .collect();
        Self { source: t.clone(), steps: Vec::new(), new_vertices: Vec::new(), descendants }
    }

    pub fn source(&self) -> &Triangulation {
        &self.source
    }

    pub fn target(&self) -> &Triangulation {
        self.steps.last().map_or(&self.source, |s| &s.target)
    }

    pub fn steps(&self) -> &[RefinementStep] {
        &self.steps
    }

    pub fn rounds(&self) -> usize {
        self.steps.len()
    }

    /// Triangulation before round `round` (round `rounds()` is the target).
    pub fn level(&self, round: usize) -> &Triangulation {
        if round == 0 {
            &self.source
        } else {
            &self.steps[round - 1].target
        }
    }

    pub fn new_vertices(&self) -> &[NewVertex] {
        &self.new_vertices
    }

    /// Descendants of each source tetrahedron, in target index order.
    pub fn descendants(&self) -> &[Vec<Descendant>] {
        &self.descendants
    }

    fn push_step(&mut self, selected: &[bool]) {
        let round = self.steps.len();
        let level = self.target().clone();
        // Origin and labels of every tetrahedron at the current level.
        let mut by_tet = vec![(0, [VertexLabel::Source(0); 4]); level.tet_count()];
        for (origin, list) in self.descendants.iter().enumerate() {
            for d in list {
                by_tet[d.tet] = (origin, d.labels);
            }
        }

        let mut new_vertex = vec![None; level.tet_count()];
        for (tet, &sel) in selected.iter().enumerate() {
            if sel {
                new_vertex[tet] = Some(self.new_vertices.len());
                self.new_vertices.push(NewVertex { round, origin: by_tet[tet].0, tet });
            }
        }
        let (target, images) = refine_level(&level, selected);

        let mut descendants = vec![Vec::new(); self.source.tet_count()];
        for (tet, image) in images.iter().enumerate() {
            let (origin, labels) = by_tet[tet];
            match *image {
                TetImage::Copied(t2) => descendants[origin].push(Descendant { tet: t2, labels }),
                TetImage::Split(first) => {
                    let id = new_vertex[tet].expect("split tet has a cone vertex");
                    for x in 0..4 {
                        let mut child = [VertexLabel::New(id); 4];
                        for (c, slot) in child.iter_mut().enumerate().take(3) {
                            *slot = labels[parent_label(x, c)];
                        }
                        descendants[origin].push(Descendant { tet: first + x, labels: child });
                    }
                }
            }
        }
        for list in &mut descendants {
            list.sort_by_key(|d| d.tet);
        }
        self.descendants = descendants;
        self.steps.push(RefinementStep { target, images, new_vertex });
    }

    /// The sphere linking cone vertex `id`, expressed on the final target.
    pub fn cone_vertex_link(&self, id: usize) -> NormalVector {
        let nv = self.new_vertices[id];
        let step = &self.steps[nv.round];
        let TetImage::Split(first) = step.images[nv.tet] else {
            unreachable!("registered vertex lies in a split tet")
        };
        let mut v = NormalVector::zero(step.target.tet_count());
        for x in 0..4 {
            v.set(first + x, DiskType::Triangle(CONE_LABEL), 1);
        }
        self.push_from(nv.round + 1, v)
    }

    fn push_from(&self, level: usize, mut v: NormalVector) -> NormalVector {
        for step in &self.steps[level..] {
            v = push_step(step, &v);
        }
        v
    }

    /// Pushes a source vector through every round using the standard patterns.
    pub fn push_forward(&self, v: &NormalVector) -> Result<NormalVector, RefineError> {
        if !is_admissible(&self.source, v)? {
            return Err(NormalError::Inadmissible.into());
        }
        Ok(self.push_from(0, v.clone()))
    }

    /// Decomposes a target vector into parent disks and cone-vertex spheres,
    /// one round at a time from the finest level down.
    pub fn classify_pullback(&self, v: &NormalVector) -> Result<Pullback, RefineError> {
        if !is_admissible(self.target(), v)? {
            return Err(NormalError::Inadmissible.into());
        }
        let mut e_spheres = vec![0u64; self.new_vertices.len()];
        let mut rounds = vec![Vec::new(); self.steps.len()];
        let mut current = v.clone();
        for round in (0..self.steps.len()).rev() {
            let step = &self.steps[round];
            let below = self.level(round);
            let (parent, counts) = pull_step(step, below.tet_count(), &current, round)?;
            for (tet, c) in counts.iter().enumerate() {
                if let Some(id) = step.new_vertex[tet] {
                    e_spheres[id] += c[PATTERN_E_SPHERE];
                }
            }
            if !is_admissible(below, &parent)? {
                return Err(RefineError::ParentInadmissible { round });
            }
            rounds[round] = counts;
            current = parent;
        }
        Ok(Pullback { source: current, e_spheres, pattern_counts: rounds })
    }

    /// Rebuilds the target vector a [`Pullback`] was computed from.
    pub fn realize(&self, p: &Pullback) -> NormalVector {
        let mut v = p.source.clone();
        for (step, counts) in self.steps.iter().zip(&p.pattern_counts) {
            let mut next = NormalVector::zero(step.target.tet_count());
            for (tet, image) in step.images.iter().enumerate() {
                match *image {
                    TetImage::Copied(t2) => {
                        for d in DiskType::ALL {
                            next.set(t2, d, v.get(tet, d));
                        }
                    }
                    TetImage::Split(first) => {
                        for (k, &n) in counts[tet].iter().enumerate() {
                            add_local(&mut next, first, &pattern_table()[k].1, n);
                        }
                    }
                }
            }
            v = next;
        }
        v
    }

    /// Source part pushed forward with standard patterns, plus every counted
    /// cone-vertex sphere.
    pub fn standard_realization(&self, p: &Pullback) -> NormalVector {
        let mut v = self.push_from(0, p.source.clone());
        for (id, &n) in p.e_spheres.iter().enumerate() {
            if n > 0 {
                v += &self.cone_vertex_link(id).scaled(n);
            }
        }
        v
    }
}

/// Result of [`RefinementMap::classify_pullback`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    /// The parent-normal part on the source triangulation.
    pub source: NormalVector,
    /// Number of spheres linking each registered cone vertex.
    pub e_spheres: Vec<u64>,
    /// Per round, per split tetrahedron: how many pieces matched each of the
    /// fifteen local patterns (indexed as [`local_patterns`]).
    pub pattern_counts: Vec<Vec<[u64; 15]>>,
}

impl Pullback {
    pub fn e_sphere_total(&self) -> u64 {
        self.e_spheres.iter().sum()
    }
}

/// One of the fifteen ways a connected normal piece sits in a refined tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// The realization used by push-forward.
    Standard(DiskType),
    /// The other realization of the same parent disk.
    Alternate(DiskType),
    /// The sphere linking the cone vertex.
    ConeSphere,
}

impl Pattern {
    pub fn parent_disk(self) -> Option<DiskType> {
        match self {
            Pattern::Standard(d) | Pattern::Alternate(d) => Some(d),
            Pattern::ConeSphere => None,
        }
    }
}

const PATTERN_E_SPHERE: usize = 14;

#[inline]
fn local_index(child: usize, disk: DiskType) -> usize {
    child * COORDS_PER_TET + disk.slot()
}

fn triangle_pattern(w: usize, alternate: bool) -> [u64; LOCAL_COORDS] {
    let mut p = [0; LOCAL_COORDS];
    for x in (0..4).filter(|&x| x != w) {
        let disk = if alternate {
            DiskType::Quad(quad_for_pair(child_label(x, w), CONE_LABEL))
        } else {
            DiskType::Triangle(child_label(x, w))
        };
        p[local_index(x, disk)] += 1;
    }
    if alternate {
        p[local_index(w, DiskType::Triangle(CONE_LABEL))] += 1;
    }
    p
}

/// Quad `q` realized around vertex pair `(x, y)`: triangles linking each other
/// in the children omitting `x` and `y`, quads in the other two children.
fn quad_pattern(q: usize, alternate: bool) -> [u64; LOCAL_COORDS] {
    let [near, far] = QUAD_PAIRS[q];
    let (x, y) = if alternate { far } else { near };
    let mut p = [0; LOCAL_COORDS];
    p[local_index(x, DiskType::Triangle(child_label(x, y)))] += 1;
    p[local_index(y, DiskType::Triangle(child_label(y, x)))] += 1;
    for z in (0..4).filter(|&z| z != x && z != y) {
        let disk = DiskType::Quad(quad_for_pair(child_label(z, x), child_label(z, y)));
        p[local_index(z, disk)] += 1;
    }
    p
}

fn cone_sphere_pattern() -> [u64; LOCAL_COORDS] {
    let mut p = [0; LOCAL_COORDS];
    for x in 0..4 {
        p[local_index(x, DiskType::Triangle(CONE_LABEL))] = 1;
    }
    p
}

type PatternTable = Vec<(Pattern, [u64; LOCAL_COORDS])>;

fn pattern_table() -> &'static PatternTable {
    static TABLE: OnceLock<PatternTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(15);
        for d in DiskType::ALL {
            let std = match d {
                DiskType::Triangle(w) => triangle_pattern(w, false),
                DiskType::Quad(q) => quad_pattern(q, false),
            };
            table.push((Pattern::Standard(d), std));
        }
        for d in DiskType::ALL {
            let alt = match d {
                DiskType::Triangle(w) => triangle_pattern(w, true),
                DiskType::Quad(q) => quad_pattern(q, true),
            };
            table.push((Pattern::Alternate(d), alt));
        }
        table.push((Pattern::ConeSphere, cone_sphere_pattern()));
        table
    })
}

fn pattern_lookup() -> &'static HashMap<[u64; LOCAL_COORDS], usize> {
    static LOOKUP: OnceLock<HashMap<[u64; LOCAL_COORDS], usize>> = OnceLock::new();
    LOOKUP.get_or_init(|| {
        pattern_table().iter().enumerate().map(|(i, (_, v))| (*v, i)).collect()
    })
}

/// The fifteen local patterns as coordinates on the four children
/// (child-major, seven coordinates each): seven standard, seven alternate,
/// then the cone sphere.
pub fn local_patterns() -> Vec<(Pattern, NormalVector)> {
    pattern_table()
        .iter()
        .map(|(p, v)| (*p, NormalVector::from_coords(v.to_vec())))
        .collect()
}

/// The four children of one refined tetrahedron, glued to each other, with
/// the parent faces left as boundary.
pub fn cone_complex() -> &'static Triangulation {
    static LOCAL: OnceLock<Triangulation> = OnceLock::new();
    LOCAL.get_or_init(|| refine_level(&Triangulation::unglued(1), &[true]).0)
}

fn add_local(v: &mut NormalVector, first: usize, pattern: &[u64; LOCAL_COORDS], n: u64) {
    if n == 0 {
        return;
    }
    for child in 0..4 {
        for d in DiskType::ALL {
            let c = pattern[local_index(child, d)];
            if c > 0 {
                let cur = v.get(first + child, d);
                v.set(first + child, d, cur + n * c);
            }
        }
    }
}

fn push_step(step: &RefinementStep, v: &NormalVector) -> NormalVector {
    let table = pattern_table();
    let mut out = NormalVector::zero(step.target.tet_count());
    for (tet, image) in step.images.iter().enumerate() {
        match *image {
            TetImage::Copied(t2) => {
                for d in DiskType::ALL {
                    out.set(t2, d, v.get(tet, d));
                }
            }
            TetImage::Split(first) => {
                for d in DiskType::ALL {
                    add_local(&mut out, first, &table[d.slot()].1, v.get(tet, d));
                }
            }
        }
    }
    out
}

/// Classifies one round. Returns the parent vector and per-tet pattern counts.
fn pull_step(
    step: &RefinementStep,
    parent_tets: usize,
    v: &NormalVector,
    round: usize,
) -> Result<(NormalVector, Vec<[u64; 15]>), RefineError> {
    let lookup = pattern_lookup();
    let table = pattern_table();
    let local = cone_complex();
    let mut parent = NormalVector::zero(parent_tets);
    let mut counts = vec![[0u64; 15]; parent_tets];
    for (tet, image) in step.images.iter().enumerate() {
        match *image {
            TetImage::Copied(t2) => {
                for d in DiskType::ALL {
                    parent.set(tet, d, v.get(t2, d));
                }
            }
            TetImage::Split(first) => {
                let restricted = NormalVector::from_coords(
                    v.coords()[COORDS_PER_TET * first..COORDS_PER_TET * (first + 4)].to_vec(),
                );
                if restricted.is_zero() {
                    continue;
                }
                for piece in components_unchecked(local, &restricted) {
                    let key: [u64; LOCAL_COORDS] =
                        piece.vector.coords().try_into().expect("four children");
                    let Some(&k) = lookup.get(&key) else {
                        return Err(RefineError::NotParentNormal {
                            round,
                            tet,
                            piece: piece.vector.into_coords(),
                        });
                    };
                    counts[tet][k] += 1;
                    if let Some(d) = table[k].0.parent_disk() {
                        let cur = parent.get(tet, d);
                        parent.set(tet, d, cur + 1);
                    }
                }
            }
        }
    }
    Ok((parent, counts))
}

/// Splits the selected tetrahedra of `t` once; returns the new triangulation
/// and where each old tetrahedron went.
fn refine_level(t: &Triangulation, selected: &[bool]) -> (Triangulation, Vec<TetImage>) {
    let mut images = Vec::with_capacity(t.tet_count());
    let mut next = 0;
    for &sel in selected {
        if sel {
            images.push(TetImage::Split(next));
            next += 4;
        } else {
            images.push(TetImage::Copied(next));
            next += 1;
        }
    }

    // Target tet, target face and target->source label map for a source face.
    let place = |tet: usize, face: usize| -> (usize, usize, Perm4) {
        match images[tet] {
            TetImage::Copied(t2) => (t2, face, Perm4::IDENTITY),
            TetImage::Split(first) => {
                let mut m = [0u8; 4];
                for (c, slot) in m.iter_mut().enumerate().take(3) {
                    *slot = parent_label(face, c) as u8;
                }
                m[3] = face as u8;
                (first + face, 3, Perm4::new(m).expect("bijection"))
            }
        }
    };

    let mut faces = vec![[None; 4]; next];
    for tet in 0..t.tet_count() {
        for face in 0..4 {
            let (tt, tf, lam) = place(tet, face);
            faces[tt][tf] = t.gluing(tet, face).map(|g| {
                let (ut, _, mu) = place(g.tet, g.perm.apply(face));
                Gluing { tet: ut, perm: mu.inverse().compose(g.perm).compose(lam) }
            });
        }
        if let TetImage::Split(first) = images[tet] {
            for x in 0..4 {
                for y in (0..4).filter(|&y| y != x) {
                    let mut m = [0u8; 4];
                    for (c, slot) in m.iter_mut().enumerate().take(3) {
                        let z = parent_label(x, c);
                        *slot = if z == y { child_label(y, x) } else { child_label(y, z) } as u8;
                    }
                    m[3] = CONE_LABEL as u8;
                    faces[first + x][child_label(x, y)] =
                        Some(Gluing { tet: first + y, perm: Perm4::new(m).expect("bijection") });
                }
            }
        }
    }
    (Triangulation::new_unchecked(faces), images)
}

/// Refines the tetrahedra in `tets` once.
pub fn refine_once(
    t: &Triangulation,
    tets: &BTreeSet<usize>,
) -> Result<(Triangulation, RefinementMap), RefineError> {
    let mut selected = vec![false; t.tet_count()];
    for &i in tets {
        if i >= t.tet_count() {
            return Err(RefineError::TetOutOfRange { index: i, count: t.tet_count() });
        }
        selected[i] = true;
    }
    let mut map = RefinementMap::identity(t);
    map.push_step(&selected);
    Ok((map.target().clone(), map))
}

/// Refines every tetrahedron `f(Δ)` times.
///
/// Each round refines all tetrahedra with budget left; children inherit the
/// parent's budget minus one.
pub fn refine_scaled(
    t: &Triangulation,
    f: &ScalingFunction,
) -> Result<(Triangulation, RefinementMap), RefineError> {
    if f.len() != t.tet_count() {
        return Err(RefineError::ScaleSizeMismatch { expected: t.tet_count(), found: f.len() });
    }
    let mut map = RefinementMap::identity(t);
    let mut budget = f.0.clone();
    while budget.iter().any(|&b| b > 0) {
        let selected: Vec<bool> = budget.iter().map(|&b| b > 0).collect();
        map.push_step(&selected);
        let step = map.steps.last().expect("just pushed");
        let mut next = vec![0; step.target.tet_count()];
        for (tet, image) in step.images.iter().enumerate() {
            match *image {
                TetImage::Copied(t2) => next[t2] = budget[tet],
                TetImage::Split(first) => {
                    for x in 0..4 {
                        next[first + x] = budget[tet] - 1;
                    }
                }
            }
        }
        budget = next;
    }
    Ok((map.target().clone(), map))
}

/// Exact 1-weights and disk counts of one disk refined repeatedly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightGrowth {
    pub disk: DiskType,
    /// `w[i]`: 1-weight after `i` rounds.
    pub w: Vec<u64>,
    /// `d[i]`: number of disks after `i` rounds.
    pub d: Vec<u64>,
}

impl WeightGrowth {
    /// Checks `w_0 ≥ 3`, `d_0 = 1`, and for `n ≥ 1`: `d_n ≥ 3 d_{n-1}`,
    /// `w_n ≥ w_{n-1} + d_{n-1}`, `w_n > n`. Returns the first failure.
    pub fn check(&self) -> Result<(), String> {
        if self.d[0] != 1 || self.w[0] < 3 {
            return Err(format!("initial values w0={} d0={}", self.w[0], self.d[0]));
        }
        for n in 1..self.w.len() {
            if self.d[n] < 3 * self.d[n - 1] {
                return Err(format!("d{n}={} < 3*d{}={}", self.d[n], n - 1, 3 * self.d[n - 1]));
            }
            if self.w[n] < self.w[n - 1] + self.d[n - 1] {
                return Err(format!(
                    "w{n}={} < w{}+d{}={}",
                    self.w[n],
                    n - 1,
                    n - 1,
                    self.w[n - 1] + self.d[n - 1]
                ));
            }
            if self.w[n] <= n as u64 {
                return Err(format!("w{n}={} not greater than {n}", self.w[n]));
            }
        }
        Ok(())
    }
}

/// Places one `disk` in a lone tetrahedron and pushes it through `n` full
/// refinements, recording the weight and disk count after each.
pub fn weight_growth(disk: DiskType, n: usize) -> WeightGrowth {
    let mut t = Triangulation::unglued(1);
    let mut v = NormalVector::unit(1, 0, disk);
    let mut w = vec![weight_unchecked(&Skeleton::new(&t), &v).w1];
    let mut d = vec![v.disk_count()];
    for _ in 0..n {
        let mut map = RefinementMap::identity(&t);
        map.push_step(&vec![true; t.tet_count()]);
        v = push_step(&map.steps[0], &v);
        t = map.target().clone();
        w.push(weight_unchecked(&Skeleton::new(&t), &v).w1);
        d.push(v.disk_count());
    }
    WeightGrowth { disk, w, d }
}
