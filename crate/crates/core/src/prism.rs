//! Edge-oriented surface triangulations and prism triangulations of `F × I`.
//!
//! # Surface file format
//!
//! ```text
//! triangles N
//! <e0> <e1> <e2> [| <d0> <d1> <d2>]
//! ```
//!
//! Edge slot `k` of a triangle is the edge opposite its local vertex `k`.
//! Entry `-` marks a boundary edge; `j.k:+` glues the slot to slot `k` of
//! triangle `j` matching the lower local endpoint with the lower one, and
//! `j.k:-` matching it with the higher one. The optional direction section
//! gives each slot's orientation: `>` runs from the lower local endpoint to
//! the higher, `<` the reverse. Without it, each edge class is directed
//! `>` at its first slot in file order.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cone::{cone_all, ConeError};
use crate::normal::{DiskType, NormalVector};
use crate::perm::Perm4;
use crate::refine::{refine_scaled, RefineError, RefinementMap, ScalingFunction};
use crate::skeleton::boundary_components;
use crate::triangulation::{content_lines, Gluing, Triangulation};
use crate::union_find::DisjointSet;

/// The two local vertices of edge slot `slot`, ascending.
#[inline]
pub fn slot_vertices(slot: usize) -> (usize, usize) {
    match slot {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => panic!("edge slot {slot} out of range"),
    }
}

/// The edge slot joining local vertices `a` and `b`.
#[inline]
pub fn slot_of(a: usize, b: usize) -> usize {
    3 - a - b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeGluing {
    pub tri: usize,
    pub slot: usize,
    /// Whether the lower local endpoint maps to the partner's higher one.
    pub flip: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("triangle {tri} slot {slot}: gluing target out of range")]
    OutOfRange { tri: usize, slot: usize },
    #[error("triangle {tri} slot {slot}: non-involutive edge gluing")]
    NonInvolutive { tri: usize, slot: usize },
    #[error("triangle {tri} slot {slot}: edge glued to itself")]
    SelfGlued { tri: usize, slot: usize },
    #[error("triangle {tri} slot {slot}: inconsistent edge orientation across a gluing")]
    InconsistentOrientation { tri: usize, slot: usize },
    #[error("edge {{{a}, {b}}} lies in more than two triangles")]
    NonManifoldEdge { a: usize, b: usize },
    #[error("triangle {tri} has cyclically oriented edges")]
    Cyclic { tri: usize },
}

/// A triangulated surface whose edges carry directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceTriangulation {
    gluings: Vec<[Option<EdgeGluing>; 3]>,
    /// `true`: slot directed from its lower local endpoint to the higher.
    directions: Vec<[bool; 3]>,
}

impl SurfaceTriangulation {
    pub fn new(
        gluings: Vec<[Option<EdgeGluing>; 3]>,
        directions: Vec<[bool; 3]>,
    ) -> Result<Self, SurfaceError> {
        let s = Self { gluings, directions };
        s.check()?;
        Ok(s)
    }

    /// Builds a surface from vertex triples, gluing triangles along shared
    /// vertex pairs and directing every edge from its lower vertex id to its
    /// higher one.
    pub fn from_vertex_triples(triples: &[[usize; 3]]) -> Result<Self, SurfaceError> {
        use std::collections::HashMap;
        let mut seen: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
        for (i, tri) in triples.iter().enumerate() {
            for slot in 0..3 {
                let (a, b) = slot_vertices(slot);
                let (x, y) = (tri[a], tri[b]);
                seen.entry((x.min(y), x.max(y))).or_default().push((i, slot));
            }
        }
        let mut gluings = vec![[None; 3]; triples.len()];
        let mut directions = vec![[true; 3]; triples.len()];
        for (i, tri) in triples.iter().enumerate() {
            for slot in 0..3 {
                let (a, b) = slot_vertices(slot);
                directions[i][slot] = tri[a] < tri[b];
            }
        }
        let mut keys: Vec<_> = seen.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let inc = &seen[&key];
            match inc.as_slice() {
                [_] => {}
                [(i, s), (j, k)] => {
                    let (a, _) = slot_vertices(*s);
                    let (c, _) = slot_vertices(*k);
                    let flip = triples[*i][a] != triples[*j][c];
                    gluings[*i][*s] = Some(EdgeGluing { tri: *j, slot: *k, flip });
                    gluings[*j][*k] = Some(EdgeGluing { tri: *i, slot: *s, flip });
                }
                _ => return Err(SurfaceError::NonManifoldEdge { a: key.0, b: key.1 }),
            }
        }
        Self::new(gluings, directions)
    }

    /// The boundary of a tetrahedron: triangle `i` has the vertices other
    /// than `i`, edges directed by vertex id.
    pub fn tetrahedron_boundary() -> Self {
        Self::from_vertex_triples(&[[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]])
            .expect("valid sphere")
    }

    pub fn triangle_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tri: usize, slot: usize) -> Option<EdgeGluing> {
        self.gluings[tri][slot]
    }

    /// Whether slot `slot` of `tri` is directed from its lower local endpoint.
    pub fn direction(&self, tri: usize, slot: usize) -> bool {
        self.directions[tri][slot]
    }

    /// The directed edge of a slot as `(tail, head)` local vertices.
    pub fn directed_edge(&self, tri: usize, slot: usize) -> (usize, usize) {
        let (a, b) = slot_vertices(slot);
        if self.directions[tri][slot] {
            (a, b)
        } else {
            (b, a)
        }
    }

    fn check(&self) -> Result<(), SurfaceError> {
        let n = self.gluings.len();
        if self.directions.len() != n {
            return Err(SurfaceError::Malformed {
                line: 0,
                message: "direction table length differs from triangle count".into(),
            });
        }
        for tri in 0..n {
            for slot in 0..3 {
                let Some(g) = self.gluings[tri][slot] else { continue };
                if g.tri >= n || g.slot > 2 {
                    return Err(SurfaceError::OutOfRange { tri, slot });
                }
                if (g.tri, g.slot) == (tri, slot) {
                    return Err(SurfaceError::SelfGlued { tri, slot });
                }
                if self.gluings[g.tri][g.slot] != Some(EdgeGluing { tri, slot, flip: g.flip }) {
                    return Err(SurfaceError::NonInvolutive { tri, slot });
                }
                if self.directions[g.tri][g.slot] != (self.directions[tri][slot] ^ g.flip) {
                    return Err(SurfaceError::InconsistentOrientation { tri, slot });
                }
            }
        }
        Ok(())
    }

    pub fn is_closed(&self) -> bool {
        self.gluings.iter().flatten().all(|g| g.is_some())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.gluings.len();
        if n == 0 {
            return true;
        }
        let mut ds = DisjointSet::new(n);
        for (tri, row) in self.gluings.iter().enumerate() {
            for g in row.iter().flatten() {
                ds.union(tri, g.tri);
            }
        }
        ds.labels().1 == 1
    }

    fn is_cyclic(&self, tri: usize) -> bool {
        let mut out = [0; 3];
        for slot in 0..3 {
            out[self.directed_edge(tri, slot).0] += 1;
        }
        out == [1, 1, 1]
    }

    /// Number of triangles whose three edges form a directed cycle.
    pub fn count_cyclic(&self) -> usize {
        (0..self.triangle_count()).filter(|&t| self.is_cyclic(t)).count()
    }

    /// Local vertices `(v0, v1, v2)` with edges `v0v1`, `v1v2`, `v0v2`, or
    /// `None` for a cyclic triangle.
    pub fn vertex_order(&self, tri: usize) -> Option<[usize; 3]> {
        let mut out = [0; 3];
        for slot in 0..3 {
            out[self.directed_edge(tri, slot).0] += 1;
        }
        let v0 = out.iter().position(|&d| d == 2)?;
        let v2 = out.iter().position(|&d| d == 0)?;
        Some([v0, 3 - v0 - v2, v2])
    }

    /// Subdivides triangle `tri` at an interior point with new edges directed
    /// away from it. The piece replacing local vertex `k` is `tri` itself for
    /// `k = 0` and two new triangles appended for `k = 1, 2`; each keeps the
    /// old vertex positions with the new point at position `k`.
    fn subdivide(&mut self, tri: usize) {
        let n = self.gluings.len();
        let piece = [tri, n, n + 1];
        let old_g = self.gluings[tri];
        let old_d = self.directions[tri];
        self.gluings.push([None; 3]);
        self.gluings.push([None; 3]);
        self.directions.push([true; 3]);
        self.directions.push([true; 3]);

        // Outer edges: slot k of piece k is the old slot k.
        for k in 0..3 {
            self.directions[piece[k]] = [true; 3];
            self.gluings[piece[k]] = [None; 3];
        }
        for k in 0..3 {
            self.directions[piece[k]][k] = old_d[k];
            if let Some(g) = old_g[k] {
                let target = if g.tri == tri { piece[g.slot] } else { g.tri };
                self.gluings[piece[k]][k] = Some(EdgeGluing { tri: target, ..g });
                if g.tri != tri {
                    self.gluings[g.tri][g.slot] =
                        Some(EdgeGluing { tri: piece[k], slot: k, flip: g.flip });
                }
            }
        }
        // Spokes: edge {new point, old vertex m} lies in pieces k and k' (≠ m),
        // as slot k' of piece k and slot k of piece k'.
        for m in 0..3 {
            let (k, kp) = match m {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let flip = (k < m) != (kp < m);
            self.gluings[piece[k]][kp] = Some(EdgeGluing { tri: piece[kp], slot: k, flip });
            self.gluings[piece[kp]][k] = Some(EdgeGluing { tri: piece[k], slot: kp, flip });
            // Directed from the new point (position k in piece k) to m.
            self.directions[piece[k]][kp] = k < m;
            self.directions[piece[kp]][k] = kp < m;
        }
    }

    /// Subdivides the lowest-indexed cyclic triangle until none remain.
    /// Returns the refined surface and the number of subdivisions.
    pub fn orient_acyclic(&self) -> (SurfaceTriangulation, usize) {
        let mut s = self.clone();
        let mut steps = 0;
        while let Some(tri) = (0..s.triangle_count()).find(|&t| s.is_cyclic(t)) {
            s.subdivide(tri);
            steps += 1;
        }
        debug_assert!(s.check().is_ok());
        (s, steps)
    }
}

impl fmt::Display for SurfaceTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "triangles {}", self.gluings.len())?;
        for (row, dirs) in self.gluings.iter().zip(&self.directions) {
            let entries: Vec<String> = row
                .iter()
                .map(|g| match g {
                    None => "-".to_string(),
                    Some(g) => format!("{}.{}:{}", g.tri, g.slot, if g.flip { '-' } else { '+' }),
                })
                .collect();
            let d: Vec<&str> = dirs.iter().map(|&d| if d { ">" } else { "<" }).collect();
            writeln!(f, "{} | {}", entries.join(" "), d.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for SurfaceTriangulation {
    type Err = SurfaceError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let malformed = |line: usize, message: String| SurfaceError::Malformed { line, message };
        let mut lines = content_lines(text);
        let (hline, header) =
            lines.next().ok_or_else(|| malformed(1, "missing `triangles N` header".into()))?;
        let count = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["triangles", n] => {
                n.parse::<usize>().map_err(|_| malformed(hline, format!("bad count `{n}`")))?
            }
            _ => return Err(malformed(hline, "expected `triangles N`".into())),
        };
        let mut gluings = Vec::with_capacity(count);
        let mut directions: Vec<Option<[bool; 3]>> = Vec::with_capacity(count);
        for (line, content) in lines {
            if gluings.len() == count {
                return Err(malformed(line, format!("more than {count} triangle lines")));
            }
            let (entries, dirs) = match content.split_once('|') {
                Some((e, d)) => (e, Some(d)),
                None => (content, None),
            };
            let entries: Vec<&str> = entries.split_whitespace().collect();
            if entries.len() != 3 {
                return Err(malformed(line, format!("expected 3 edge entries, found {}", entries.len())));
            }
            let mut row = [None; 3];
            for (slot, entry) in entries.iter().enumerate() {
                if *entry == "-" {
                    continue;
                }
                let bad = || malformed(line, format!("bad edge entry `{entry}`"));
                let (target, sign) = entry.split_once(':').ok_or_else(bad)?;
                let (tri, k) = target.split_once('.').ok_or_else(bad)?;
                let tri: usize = tri.parse().map_err(|_| bad())?;
                let k: usize = k.parse().map_err(|_| bad())?;
                let flip = match sign {
                    "+" => false,
                    "-" => true,
                    _ => return Err(bad()),
                };
                if tri >= count || k > 2 {
                    return Err(malformed(line, format!("edge entry `{entry}` out of range")));
                }
                row[slot] = Some(EdgeGluing { tri, slot: k, flip });
            }
            gluings.push(row);
            directions.push(match dirs {
                None => None,
                Some(d) => {
                    let d: Vec<&str> = d.split_whitespace().collect();
                    if d.len() != 3 {
                        return Err(malformed(line, "expected 3 edge directions".into()));
                    }
                    let mut out = [true; 3];
                    for (o, tok) in out.iter_mut().zip(d) {
                        *o = match tok {
                            ">" => true,
                            "<" => false,
                            _ => return Err(malformed(line, format!("bad direction `{tok}`"))),
                        };
                    }
                    Some(out)
                }
            });
        }
        if gluings.len() != count {
            return Err(malformed(
                text.lines().count().max(1),
                format!("expected {count} triangle lines, found {}", gluings.len()),
            ));
        }

        let all_given = directions.iter().all(Option::is_some);
        let none_given = directions.iter().all(Option::is_none);
        if !all_given && !none_given {
            return Err(malformed(hline, "edge directions must be given for all triangles or none".into()));
        }
        let directions: Vec<[bool; 3]> = if all_given {
            directions.into_iter().map(|d| d.expect("all given")).collect()
        } else {
            default_directions(&gluings)
        };
        SurfaceTriangulation::new(gluings, directions)
    }
}

/// Directs each edge class `>` at its first slot in (triangle, slot) order.
fn default_directions(gluings: &[[Option<EdgeGluing>; 3]]) -> Vec<[bool; 3]> {
    let mut dirs = vec![[true; 3]; gluings.len()];
    let mut assigned = vec![[false; 3]; gluings.len()];
    for tri in 0..gluings.len() {
        for slot in 0..3 {
            if assigned[tri][slot] {
                continue;
            }
            assigned[tri][slot] = true;
            if let Some(g) = gluings[tri][slot] {
                if g.tri < gluings.len() && g.slot < 3 {
                    dirs[g.tri][g.slot] = !g.flip;
                    assigned[g.tri][g.slot] = true;
                }
            }
        }
    }
    dirs
}

/// Per-triangle tetrahedra of the prism block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrismBlock {
    /// `[v0, w0, w1, w2]`.
    pub top: usize,
    /// `[v0, v1, w1, w2]`.
    pub middle: usize,
    /// `[v0, v1, v2, w2]`.
    pub bottom: usize,
    /// Local surface vertices `(v0, v1, v2)` of the triangle.
    pub order: [usize; 3],
}

#[derive(Clone, Debug)]
pub struct PrismComplex {
    pub triangulation: Triangulation,
    pub prism_tets: BTreeSet<usize>,
    /// `F × {0}`: triangle at `v0` on top, quad `{v0, v1} | {w1, w2}` in the
    /// middle, triangle at `w2` on the bottom of every block.
    pub canonical: NormalVector,
    pub blocks: Vec<PrismBlock>,
}

#[derive(Debug, Error, PartialEq)]
pub enum PrismError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("boundary is not a union of spheres; coning closure is unavailable")]
    NonSphereBoundary,
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Refine(#[from] RefineError),
}

/// Side triangles of an edge `e × I` for one block edge role: tetrahedron
/// offset within the block, face, and labels of tail-bottom, head-bottom,
/// tail-top, head-top (`u8::MAX` where absent).
struct SideFace {
    block_tet: usize,
    face: usize,
    labels: [u8; 4],
}

const ABSENT: u8 = u8::MAX;

/// For roles (v0→v1), (v1→v2), (v0→v2): the lower triangle `[tail_v, head_v,
/// head_w]` and the upper triangle `[tail_w, head_w, tail_v]`.
fn side_faces(role: usize) -> [SideFace; 2] {
    match role {
        0 => [
            SideFace { block_tet: 1, face: 3, labels: [0, 1, ABSENT, 2] },
            SideFace { block_tet: 0, face: 3, labels: [0, ABSENT, 1, 2] },
        ],
        1 => [
            SideFace { block_tet: 2, face: 0, labels: [1, 2, ABSENT, 3] },
            SideFace { block_tet: 1, face: 0, labels: [1, ABSENT, 2, 3] },
        ],
        _ => [
            SideFace { block_tet: 2, face: 1, labels: [0, 2, ABSENT, 3] },
            SideFace { block_tet: 0, face: 2, labels: [0, ABSENT, 1, 3] },
        ],
    }
}

/// Role of the edge `(tail, head)` given a block's vertex order.
fn role_of(order: [usize; 3], tail: usize, head: usize) -> usize {
    let pos = |x: usize| order.iter().position(|&o| o == x).expect("vertex in order");
    match (pos(tail), pos(head)) {
        (0, 1) => 0,
        (1, 2) => 1,
        (0, 2) => 2,
        other => panic!("edge {other:?} against orientation"),
    }
}

/// Builds the prism triangulation of `F × I` over an acyclically oriented surface.
pub fn build_prism(s: &SurfaceTriangulation) -> Result<PrismComplex, PrismError> {
    s.check()?;
    let n = s.triangle_count();
    let mut orders = Vec::with_capacity(n);
    for tri in 0..n {
        orders.push(s.vertex_order(tri).ok_or(SurfaceError::Cyclic { tri })?);
    }
    let id = Perm4::IDENTITY;
    let mut faces = vec![[None; 4]; 3 * n];
    for tri in 0..n {
        let (t0, t1, t2) = (3 * tri, 3 * tri + 1, 3 * tri + 2);
        faces[t0][1] = Some(Gluing { tet: t1, perm: id });
        faces[t1][1] = Some(Gluing { tet: t0, perm: id });
        faces[t1][2] = Some(Gluing { tet: t2, perm: id });
        faces[t2][2] = Some(Gluing { tet: t1, perm: id });

        for slot in 0..3 {
            let Some(g) = s.gluing(tri, slot) else { continue };
            let (tail, head) = s.directed_edge(tri, slot);
            let (ptail, phead) = s.directed_edge(g.tri, g.slot);
            let mine = side_faces(role_of(orders[tri], tail, head));
            let theirs = side_faces(role_of(orders[g.tri], ptail, phead));
            for (a, b) in mine.iter().zip(&theirs) {
                let mut images = [0u8; 4];
                for k in 0..4 {
                    if a.labels[k] != ABSENT {
                        images[a.labels[k] as usize] = b.labels[k];
                    }
                }
                images[a.face] = b.face as u8;
                let perm = Perm4::new(images).expect("side faces match");
                faces[3 * tri + a.block_tet][a.face] =
                    Some(Gluing { tet: 3 * g.tri + b.block_tet, perm });
            }
        }
    }
    let triangulation = Triangulation::new_unchecked(faces);
    debug_assert!(triangulation.validate().is_empty());

    let mut canonical = NormalVector::zero(3 * n);
    let mut blocks = Vec::with_capacity(n);
    for (tri, &order) in orders.iter().enumerate() {
        canonical.set(3 * tri, DiskType::Triangle(0), 1);
        canonical.set(3 * tri + 1, DiskType::Quad(0), 1);
        canonical.set(3 * tri + 2, DiskType::Triangle(3), 1);
        blocks.push(PrismBlock { top: 3 * tri, middle: 3 * tri + 1, bottom: 3 * tri + 2, order });
    }
    Ok(PrismComplex {
        triangulation,
        prism_tets: (0..3 * n).collect(),
        canonical,
        blocks,
    })
}

/// A closed triangulation containing the prism, with every tetrahedron outside
/// it refined `n` times.
#[derive(Clone, Debug)]
pub struct HeavyExterior {
    pub triangulation: Triangulation,
    pub map: RefinementMap,
    pub prism_tets: BTreeSet<usize>,
}

/// Cones off each (sphere) boundary component of the prism, then refines the
/// cone tetrahedra `n` times.
pub fn build_heavy_exterior(p: &PrismComplex, n: u32) -> Result<HeavyExterior, PrismError> {
    let comps = boundary_components(&p.triangulation);
    if comps.iter().any(|c| !c.closed || c.euler_characteristic != 2) {
        return Err(PrismError::NonSphereBoundary);
    }
    let closed = cone_all(&p.triangulation)?;
    let prism_count = p.triangulation.tet_count();
    let f = ScalingFunction(
        (0..closed.tet_count()).map(|t| if t < prism_count { 0 } else { n }).collect(),
    );
    let (triangulation, map) = refine_scaled(&closed, &f)?;
    let prism_tets = map.descendants()[..prism_count]
        .iter()
        .flat_map(|ds| ds.iter().map(|d| d.tet))
        .collect();
    Ok(HeavyExterior { triangulation, map, prism_tets })
}
