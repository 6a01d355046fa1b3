//! Normal surface coordinates.
//!
//! Each tetrahedron carries seven non-negative integers in the order
//! `t0 t1 t2 t3 q1 q2 q3`: the triangle linking vertex `v`, then the quads
//! separating `{0,1}|{2,3}`, `{0,2}|{1,3}` and `{0,3}|{1,2}`.
//!
//! Parallel copies of a disk type are stacked: triangles linking `v` are
//! numbered outward from `v`, quads from the side of the vertex pair that
//! contains label 0. Arcs and edge crossings are glued innermost to innermost.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use thiserror::Error;

use crate::skeleton::Skeleton;
use crate::triangulation::{content_lines, edge_index, face_vertices, Triangulation, TET_EDGES};
use crate::union_find::DisjointSet;

pub const COORDS_PER_TET: usize = 7;

/// The two label pairs of quad type `q` (0-based), the first containing 0.
pub const QUAD_PAIRS: [[(usize, usize); 2]; 3] =
    [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

/// The quad type whose vertex pairs include `{a, b}`.
#[inline]
pub fn quad_for_pair(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    if a == 0 {
        b - 1
    } else {
        // {a, b} is the far pair; the near pair is {0, c} with c the remaining label.
        6 - a - b - 1
    }
}

/// Whether quad type `q` separates labels `a` and `b`.
#[inline]
pub fn quad_separates(q: usize, a: usize, b: usize) -> bool {
    quad_for_pair(a, b) != q
}

/// One of the seven normal disk types in a tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiskType {
    /// Triangle linking the given vertex label.
    Triangle(usize),
    /// Quad of the given type (0-based: `q1` is `Quad(0)`).
    Quad(usize),
}

impl DiskType {
    pub const ALL: [DiskType; 7] = [
        DiskType::Triangle(0),
        DiskType::Triangle(1),
        DiskType::Triangle(2),
        DiskType::Triangle(3),
        DiskType::Quad(0),
        DiskType::Quad(1),
        DiskType::Quad(2),
    ];

    #[inline]
    pub fn slot(self) -> usize {
        match self {
            DiskType::Triangle(v) => v,
            DiskType::Quad(q) => 4 + q,
        }
    }

    pub fn from_slot(slot: usize) -> Self {
        if slot < 4 {
            DiskType::Triangle(slot)
        } else {
            DiskType::Quad(slot - 4)
        }
    }
}

impl fmt::Display for DiskType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiskType::Triangle(v) => write!(f, "t{v}"),
            DiskType::Quad(q) => write!(f, "q{}", q + 1),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalVector {
    coords: Vec<u64>,
}

impl NormalVector {
    pub fn zero(tets: usize) -> Self {
        Self { coords: vec![0; COORDS_PER_TET * tets] }
    }

    pub fn from_coords(coords: Vec<u64>) -> Self {
        assert!(coords.len().is_multiple_of(COORDS_PER_TET), "coordinate count must be a multiple of 7");
        Self { coords }
    }

    /// A single disk of type `disk` in tetrahedron `tet`.
    pub fn unit(tets: usize, tet: usize, disk: DiskType) -> Self {
        let mut v = Self::zero(tets);
        v.coords[COORDS_PER_TET * tet + disk.slot()] = 1;
        v
    }

    pub fn tet_count(&self) -> usize {
        self.coords.len() / COORDS_PER_TET
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.coords
    }

    #[inline]
    pub fn get(&self, tet: usize, disk: DiskType) -> u64 {
        self.coords[COORDS_PER_TET * tet + disk.slot()]
    }

    #[inline]
    pub fn set(&mut self, tet: usize, disk: DiskType, value: u64) {
        self.coords[COORDS_PER_TET * tet + disk.slot()] = value;
    }

    #[inline]
    pub fn tri(&self, tet: usize, v: usize) -> u64 {
        self.coords[COORDS_PER_TET * tet + v]
    }

    #[inline]
    pub fn quad(&self, tet: usize, q: usize) -> u64 {
        self.coords[COORDS_PER_TET * tet + 4 + q]
    }

    pub fn tet_coords(&self, tet: usize) -> &[u64] {
        &self.coords[COORDS_PER_TET * tet..COORDS_PER_TET * (tet + 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Total number of disks.
    pub fn disk_count(&self) -> u64 {
        self.coords.iter().sum()
    }

    /// Number of normal arcs on face `face` of `tet` linking `corner`.
    #[inline]
    pub fn arcs(&self, tet: usize, face: usize, corner: usize) -> u64 {
        self.tri(tet, corner) + self.quad(tet, quad_for_pair(face, corner))
    }

    /// Number of points where the surface crosses tetrahedron edge `e` of `tet`.
    #[inline]
    pub fn crossings(&self, tet: usize, e: usize) -> u64 {
        let (a, b) = TET_EDGES[e];
        let mut n = self.tri(tet, a) + self.tri(tet, b);
        for q in 0..3 {
            if quad_separates(q, a, b) {
                n += self.quad(tet, q);
            }
        }
        n
    }

    pub fn scaled(&self, k: u64) -> Self {
        Self { coords: self.coords.iter().map(|c| c * k).collect() }
    }
}

impl Add for &NormalVector {
    type Output = NormalVector;

    fn add(self, rhs: &NormalVector) -> NormalVector {
        assert_eq!(self.coords.len(), rhs.coords.len());
        NormalVector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl AddAssign<&NormalVector> for NormalVector {
    fn add_assign(&mut self, rhs: &NormalVector) {
        assert_eq!(self.coords.len(), rhs.coords.len());
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

/// One line per tetrahedron with the seven coordinates.
impl fmt::Display for NormalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.coords.chunks(COORDS_PER_TET) {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VectorParseError {
    #[error("line {line}: expected 7 coordinates, found {found}")]
    WrongWidth { line: usize, found: usize },
    #[error("line {line}: `{token}` is not a non-negative integer")]
    BadNumber { line: usize, token: String },
}

impl FromStr for NormalVector {
    type Err = VectorParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut coords = Vec::new();
        for (line, content) in content_lines(text) {
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.len() != COORDS_PER_TET {
                return Err(VectorParseError::WrongWidth { line, found: tokens.len() });
            }
            for tok in tokens {
                coords.push(tok.parse::<u64>().map_err(|_| VectorParseError::BadNumber {
                    line,
                    token: tok.to_string(),
                })?);
            }
        }
        Ok(NormalVector { coords })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalError {
    #[error("vector has {found} coordinates, triangulation needs {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vector is not admissible")]
    Inadmissible,
    #[error("vector is not connected ({components} components)")]
    Disconnected { components: usize },
}

/// The normal arc type on face `face` of `tet` linking label `corner`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcSlot {
    pub tet: usize,
    pub face: usize,
    pub corner: usize,
}

impl ArcSlot {
    /// Coordinate indices whose sum is the arc count: the triangle and the quad.
    pub fn coord_indices(self) -> [usize; 2] {
        let base = COORDS_PER_TET * self.tet;
        [base + self.corner, base + 4 + quad_for_pair(self.face, self.corner)]
    }
}

/// Arcs of type `left` and `right` must occur equally often.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchingEquation {
    pub left: ArcSlot,
    pub right: ArcSlot,
}

impl MatchingEquation {
    /// `arcs(left) - arcs(right)` as a sparse integer combination with
    /// cancelled and merged terms; empty when the equation is trivial.
    pub fn terms(&self) -> Vec<(usize, i64)> {
        let mut terms: Vec<(usize, i64)> = Vec::with_capacity(4);
        let mut add = |idx: usize, c: i64| match terms.iter_mut().find(|(i, _)| *i == idx) {
            Some(t) => t.1 += c,
            None => terms.push((idx, c)),
        };
        for i in self.left.coord_indices() {
            add(i, 1);
        }
        for i in self.right.coord_indices() {
            add(i, -1);
        }
        terms.retain(|&(_, c)| c != 0);
        terms.sort_unstable();
        terms
    }

    pub fn residual(&self, v: &NormalVector) -> i64 {
        let l = v.arcs(self.left.tet, self.left.face, self.left.corner) as i64;
        let r = v.arcs(self.right.tet, self.right.face, self.right.corner) as i64;
        l - r
    }
}

/// One equation per glued face pair and arc type, each pair listed once.
pub fn matching_equations(t: &Triangulation) -> Vec<MatchingEquation> {
    let mut eqs = Vec::new();
    for tet in 0..t.tet_count() {
        for face in 0..4 {
            let Some(g) = t.gluing(tet, face) else { continue };
            let other_face = g.perm.apply(face);
            if (g.tet, other_face) < (tet, face) {
                continue;
            }
            for corner in face_vertices(face) {
                eqs.push(MatchingEquation {
                    left: ArcSlot { tet, face, corner },
                    right: ArcSlot { tet: g.tet, face: other_face, corner: g.perm.apply(corner) },
                });
            }
        }
    }
    eqs
}

fn check_len(t: &Triangulation, v: &NormalVector) -> Result<(), NormalError> {
    let expected = COORDS_PER_TET * t.tet_count();
    if v.coords.len() != expected {
        return Err(NormalError::LengthMismatch { expected, found: v.coords.len() });
    }
    Ok(())
}

/// At most one quad type per tetrahedron.
pub fn quads_compatible(v: &NormalVector) -> bool {
    (0..v.tet_count()).all(|t| (0..3).filter(|&q| v.quad(t, q) > 0).count() <= 1)
}

pub fn is_admissible(t: &Triangulation, v: &NormalVector) -> Result<bool, NormalError> {
    check_len(t, v)?;
    Ok(quads_compatible(v) && matching_equations(t).iter().all(|e| e.residual(v) == 0))
}

fn require_admissible(t: &Triangulation, v: &NormalVector) -> Result<(), NormalError> {
    if is_admissible(t, v)? {
        Ok(())
    } else {
        Err(NormalError::Inadmissible)
    }
}

/// PL-area: intersections with the 1-skeleton, then normal arcs in the
/// 2-skeleton. Ordering is lexicographic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PLArea {
    pub w1: u64,
    pub w2: u64,
}

impl Add for PLArea {
    type Output = PLArea;
    fn add(self, rhs: PLArea) -> PLArea {
        PLArea { w1: self.w1 + rhs.w1, w2: self.w2 + rhs.w2 }
    }
}

impl fmt::Display for PLArea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.w1, self.w2)
    }
}

/// Weight without the admissibility check; each class is read at its first
/// incidence.
pub(crate) fn weight_unchecked(skel: &Skeleton, v: &NormalVector) -> PLArea {
    let mut edge_seen = vec![false; skel.num_edges()];
    let mut face_seen = vec![false; skel.num_faces()];
    let mut area = PLArea::default();
    for tet in 0..v.tet_count() {
        for e in 0..6 {
            let c = skel.edge_class(tet, e);
            if !edge_seen[c] {
                edge_seen[c] = true;
                area.w1 += v.crossings(tet, e);
            }
        }
        for f in 0..4 {
            let c = skel.face_class(tet, f);
            if !face_seen[c] {
                face_seen[c] = true;
                area.w2 += face_vertices(f).iter().map(|&x| v.arcs(tet, f, x)).sum::<u64>();
            }
        }
    }
    area
}

pub fn weight(t: &Triangulation, v: &NormalVector) -> Result<PLArea, NormalError> {
    require_admissible(t, v)?;
    Ok(weight_unchecked(&Skeleton::new(t), v))
}

/// A connected piece of a normal surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vector: NormalVector,
    pub euler_characteristic: i64,
}

/// Per-tetrahedron prefix offsets for a family of counted slots.
struct Offsets {
    start: Vec<usize>,
    per_tet: usize,
}

impl Offsets {
    fn new(tets: usize, per_tet: usize, count: impl Fn(usize, usize) -> u64) -> (Self, usize) {
        let mut start = Vec::with_capacity(tets * per_tet + 1);
        let mut total = 0usize;
        for t in 0..tets {
            for s in 0..per_tet {
                start.push(total);
                total += count(t, s) as usize;
            }
        }
        start.push(total);
        (Self { start, per_tet }, total)
    }

    #[inline]
    fn at(&self, tet: usize, slot: usize, pos: u64) -> usize {
        self.start[tet * self.per_tet + slot] + pos as usize
    }
}

/// Arc slot index within a tetrahedron: face * 4 + corner.
#[inline]
fn arc_slot(face: usize, corner: usize) -> usize {
    face * 4 + corner
}

/// Rank of quad copy `k` (of `count`) counted from the pair containing `near`.
#[inline]
fn quad_rank(q: usize, near: usize, k: u64, count: u64) -> u64 {
    let (a, b) = QUAD_PAIRS[q][0];
    if near == a || near == b {
        k
    } else {
        count - 1 - k
    }
}

/// Position, counted from `from`, of a point on edge `{from, other}`.
#[inline]
fn edge_pos_of_quad(v: &NormalVector, tet: usize, q: usize, from: usize, k: u64) -> u64 {
    v.tri(tet, from) + quad_rank(q, from, k, v.quad(tet, q))
}

/// Splits an admissible vector into connected components, ordered by their
/// first disk, each with its Euler characteristic.
pub fn components(t: &Triangulation, v: &NormalVector) -> Result<Vec<Component>, NormalError> {
    require_admissible(t, v)?;
    Ok(components_unchecked(t, v))
}

pub(crate) fn components_unchecked(t: &Triangulation, v: &NormalVector) -> Vec<Component> {
    let n = t.tet_count();
    let disk_total = v.disk_count() as usize;
    let (arc_off, arc_total) = Offsets::new(n, 16, |tt, s| {
        let (face, corner) = (s / 4, s % 4);
        if face == corner {
            0
        } else {
            v.arcs(tt, face, corner)
        }
    });
    let (pt_off, pt_total) = Offsets::new(n, 6, |tt, e| v.crossings(tt, e));

    // Point index on edge {a, b} at position `pos` counted from `a`.
    let point = |tt: usize, a: usize, b: usize, pos: u64| {
        let e = edge_index(a, b);
        if a < b {
            pt_off.at(tt, e, pos)
        } else {
            pt_off.at(tt, e, v.crossings(tt, e) - 1 - pos)
        }
    };

    let mut arcs = DisjointSet::new(arc_total);
    let mut points = DisjointSet::new(pt_total);
    for tet in 0..n {
        for face in 0..4 {
            let Some(g) = t.gluing(tet, face) else { continue };
            let of = g.perm.apply(face);
            let fv = face_vertices(face);
            for &c in &fv {
                for pos in 0..v.arcs(tet, face, c) {
                    arcs.union(
                        arc_off.at(tet, arc_slot(face, c), pos),
                        arc_off.at(g.tet, arc_slot(of, g.perm.apply(c)), pos),
                    );
                }
            }
            for (k, &a) in fv.iter().enumerate() {
                for &b in &fv[k + 1..] {
                    let e = edge_index(a, b);
                    let (ga, gb) = (g.perm.apply(a), g.perm.apply(b));
                    for pos in 0..v.crossings(tet, e) {
                        points.union(point(tet, a, b, pos), point(g.tet, ga, gb, pos));
                    }
                }
            }
        }
    }

    // Disk boundaries: arcs and corner points of every disk.
    let mut disk_arcs: Vec<Vec<usize>> = Vec::with_capacity(disk_total);
    let mut disk_points: Vec<Vec<usize>> = Vec::with_capacity(disk_total);
    let mut disk_tet_slot: Vec<(usize, usize)> = Vec::with_capacity(disk_total);
    for tet in 0..n {
        for x in 0..4 {
            for k in 0..v.tri(tet, x) {
                let others: Vec<usize> = (0..4).filter(|&y| y != x).collect();
                disk_arcs.push(others.iter().map(|&f| arc_off.at(tet, arc_slot(f, x), k)).collect());
                disk_points.push(others.iter().map(|&y| point(tet, x, y, k)).collect());
                disk_tet_slot.push((tet, x));
            }
        }
        for q in 0..3 {
            let [(a, b), (c, d)] = QUAD_PAIRS[q];
            for k in 0..v.quad(tet, q) {
                let arc = |face: usize, corner: usize| {
                    let rank = quad_rank(q, corner, k, v.quad(tet, q));
                    arc_off.at(tet, arc_slot(face, corner), v.tri(tet, corner) + rank)
                };
                disk_arcs.push(vec![arc(a, b), arc(b, a), arc(c, d), arc(d, c)]);
                disk_points.push(
                    [(a, c), (a, d), (b, c), (b, d)]
                        .iter()
                        .map(|&(x, y)| point(tet, x, y, edge_pos_of_quad(v, tet, q, x, k)))
                        .collect(),
                );
                disk_tet_slot.push((tet, 4 + q));
            }
        }
    }
    debug_assert_eq!(disk_arcs.len(), disk_total);

    let mut disks = DisjointSet::new(disk_total);
    let mut arc_owner = vec![usize::MAX; arc_total];
    for (d, list) in disk_arcs.iter().enumerate() {
        for &a in list {
            let root = arcs.find(a);
            if arc_owner[root] == usize::MAX {
                arc_owner[root] = d;
            } else {
                disks.union(arc_owner[root], d);
            }
        }
    }
    let (labels, count) = disks.labels();

    let mut out: Vec<Component> = (0..count)
        .map(|_| Component { vector: NormalVector::zero(n), euler_characteristic: 0 })
        .collect();
    let mut comp_points: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); count];
    let mut comp_arcs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); count];
    let mut comp_disks = vec![0i64; count];
    for d in 0..disk_total {
        let c = labels[d];
        let (tet, slot) = disk_tet_slot[d];
        out[c].vector.coords[COORDS_PER_TET * tet + slot] += 1;
        comp_disks[c] += 1;
        for &a in &disk_arcs[d] {
            comp_arcs[c].insert(arcs.find(a));
        }
        for &p in &disk_points[d] {
            comp_points[c].insert(points.find(p));
        }
    }
    for c in 0..count {
        out[c].euler_characteristic =
            comp_points[c].len() as i64 - comp_arcs[c].len() as i64 + comp_disks[c];
    }
    out
}

/// The vertex-linking surface of a vertex class: one triangle per corner.
pub fn vertex_link(t: &Triangulation, skel: &Skeleton, class: usize) -> NormalVector {
    let mut v = NormalVector::zero(t.tet_count());
    for (tet, corner) in skel.vertex_incidences(class) {
        v.set(tet, DiskType::Triangle(corner), 1);
    }
    v
}

pub fn is_vertex_linking(
    t: &Triangulation,
    v: &NormalVector,
    class: usize,
) -> Result<bool, NormalError> {
    let comps = components(t, v)?;
    if comps.len() != 1 {
        return Err(NormalError::Disconnected { components: comps.len() });
    }
    let skel = Skeleton::new(t);
    Ok(*v == vertex_link(t, &skel, class))
}

/// Whether every nonzero coordinate lies in a tetrahedron of `tets`.
pub fn supported_in(v: &NormalVector, tets: &BTreeSet<usize>) -> bool {
    (0..v.tet_count()).all(|t| tets.contains(&t) || v.tet_coords(t).iter().all(|&c| c == 0))
}

/// Whether any arc lies on a boundary face.
pub fn touches_boundary(t: &Triangulation, v: &NormalVector) -> bool {
    (0..t.tet_count()).any(|tet| {
        (0..4).any(|f| {
            t.gluing(tet, f).is_none() && face_vertices(f).iter().any(|&c| v.arcs(tet, f, c) > 0)
        })
    })
}
