//! Vertex, edge and face classes of a triangulation, and its boundary surface.

use crate::triangulation::{edge_index, face_vertices, Triangulation, TET_EDGES};
use crate::union_find::DisjointSet;

/// Cell classes under the face identifications.
///
/// Per-tetrahedron cells are indexed densely: vertex `4t + v`, edge `6t + e`
/// (with `e` an index into [`TET_EDGES`]) and face `4t + f`. Class labels are
/// numbered in order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    vertex_class: Vec<usize>,
    edge_class: Vec<usize>,
    face_class: Vec<usize>,
    vertices: usize,
    edges: usize,
    faces: usize,
    tets: usize,
}

impl Skeleton {
    pub fn new(t: &Triangulation) -> Self {
        let n = t.tet_count();
        let mut vs = DisjointSet::new(4 * n);
        let mut es = DisjointSet::new(6 * n);
        let mut fs = DisjointSet::new(4 * n);
        for tet in 0..n {
            for face in 0..4 {
                let Some(g) = t.gluing(tet, face) else { continue };
                fs.union(4 * tet + face, 4 * g.tet + g.perm.apply(face));
                let fv = face_vertices(face);
                for &v in &fv {
                    vs.union(4 * tet + v, 4 * g.tet + g.perm.apply(v));
                }
                for (k, &a) in fv.iter().enumerate() {
                    for &b in &fv[k + 1..] {
                        es.union(
                            6 * tet + edge_index(a, b),
                            6 * g.tet + edge_index(g.perm.apply(a), g.perm.apply(b)),
                        );
                    }
                }
            }
        }
        let (vertex_class, vertices) = vs.labels();
        let (edge_class, edges) = es.labels();
        let (face_class, faces) = fs.labels();
        Self { vertex_class, edge_class, face_class, vertices, edges, faces, tets: n }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices
    }
    pub fn num_edges(&self) -> usize {
        self.edges
    }
    pub fn num_faces(&self) -> usize {
        self.faces
    }
    pub fn num_tets(&self) -> usize {
        self.tets
    }

    #[inline]
    pub fn vertex_class(&self, tet: usize, v: usize) -> usize {
        self.vertex_class[4 * tet + v]
    }
    #[inline]
    pub fn edge_class(&self, tet: usize, e: usize) -> usize {
        self.edge_class[6 * tet + e]
    }
    #[inline]
    pub fn face_class(&self, tet: usize, f: usize) -> usize {
        self.face_class[4 * tet + f]
    }

    /// `(V, E, F, T)`.
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (self.vertices, self.edges, self.faces, self.tets)
    }

    /// Number of per-tetrahedron faces in each face class.
    pub fn face_class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.faces];
        for &c in &self.face_class {
            sizes[c] += 1;
        }
        sizes
    }

    /// `(tet, vertex label)` incidences of a vertex class.
    pub fn vertex_incidences(&self, class: usize) -> Vec<(usize, usize)> {
        (0..self.tets)
            .flat_map(|t| (0..4).map(move |v| (t, v)))
            .filter(|&(t, v)| self.vertex_class(t, v) == class)
            .collect()
    }

    /// Number of edge classes with an endpoint in the given vertex class.
    pub fn vertex_degree(&self, class: usize) -> usize {
        let mut seen = vec![false; self.edges];
        for t in 0..self.tets {
            for (e, &(a, b)) in TET_EDGES.iter().enumerate() {
                if self.vertex_class(t, a) == class || self.vertex_class(t, b) == class {
                    seen[self.edge_class(t, e)] = true;
                }
            }
        }
        seen.into_iter().filter(|&s| s).count()
    }
}

/// A connected component of the boundary surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComponent {
    /// Boundary faces `(tet, face)`, sorted.
    pub faces: Vec<(usize, usize)>,
    /// Whether every boundary edge meets a second, distinct boundary face edge.
    pub closed: bool,
    /// `V - E + F` of the component as a cell complex (meaningful when closed).
    pub euler_characteristic: i64,
}

/// The boundary face reached by rotating around edge `(a, b)` of `tet`
/// starting from boundary face `face`, with the images of `a` and `b`.
///
/// Returns `None` if the rotation does not terminate.
pub(crate) fn boundary_edge_partner(
    t: &Triangulation,
    tet: usize,
    face: usize,
    a: usize,
    b: usize,
) -> Option<(usize, usize, usize, usize)> {
    let (mut tet, mut from, mut a, mut b) = (tet, face, a, b);
    for _ in 0..=6 * t.tet_count() {
        let next = (0..4).find(|&v| v != from && v != a && v != b)?;
        match t.gluing(tet, next) {
            None => return Some((tet, next, a, b)),
            Some(g) => {
                from = g.perm.apply(next);
                a = g.perm.apply(a);
                b = g.perm.apply(b);
                tet = g.tet;
            }
        }
    }
    None
}

/// Boundary components, ordered by their least boundary face.
pub fn boundary_components(t: &Triangulation) -> Vec<BoundaryComponent> {
    let bfaces: Vec<(usize, usize)> = (0..t.tet_count())
        .flat_map(|tet| (0..4).map(move |f| (tet, f)))
        .filter(|&(tet, f)| t.gluing(tet, f).is_none())
        .collect();
    let index_of = |tet: usize, f: usize| bfaces.binary_search(&(tet, f)).ok();
    let mut ds = DisjointSet::new(bfaces.len());
    let mut open = vec![false; bfaces.len()];
    for (i, &(tet, f)) in bfaces.iter().enumerate() {
        let fv = face_vertices(f);
        for k in 0..3 {
            let (a, b) = (fv[(k + 1) % 3], fv[(k + 2) % 3]);
            match boundary_edge_partner(t, tet, f, a, b) {
                Some((pt, pf, pa, pb)) => {
                    if (pt, pf) == (tet, f) && ((pa, pb) == (a, b) || (pa, pb) == (b, a)) {
                        open[i] = true;
                    }
                    if let Some(j) = index_of(pt, pf) {
                        ds.union(i, j);
                    }
                }
                None => open[i] = true,
            }
        }
    }
    let (labels, count) = ds.labels();
    let skel = Skeleton::new(t);
    let mut comps: Vec<BoundaryComponent> = (0..count)
        .map(|_| BoundaryComponent { faces: Vec::new(), closed: true, euler_characteristic: 0 })
        .collect();
    for (i, &face) in bfaces.iter().enumerate() {
        comps[labels[i]].faces.push(face);
        if open[i] {
            comps[labels[i]].closed = false;
        }
    }
    for comp in &mut comps {
        let mut verts = Vec::new();
        let mut edges = Vec::new();
        for &(tet, f) in &comp.faces {
            let fv = face_vertices(f);
            for k in 0..3 {
                verts.push(skel.vertex_class(tet, fv[k]));
                edges.push(skel.edge_class(tet, edge_index(fv[(k + 1) % 3], fv[(k + 2) % 3])));
            }
        }
        verts.sort_unstable();
        verts.dedup();
        edges.sort_unstable();
        edges.dedup();
        comp.euler_characteristic =
            verts.len() as i64 - edges.len() as i64 + comp.faces.len() as i64;
    }
    comps
}
