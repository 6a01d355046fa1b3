//! Independent oracles and random instances shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use normsurf::{EdgeGluing, Gluing, NormalVector, Perm4, SurfaceTriangulation, Triangulation};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A fold of face `f` onto itself swapping the two face vertices other than `keep`.
fn fold(f: usize, keep: usize) -> Perm4 {
    let mut images = [0u8, 1, 2, 3];
    let others: Vec<usize> = (0..4).filter(|&x| x != f && x != keep).collect();
    images.swap(others[0], others[1]);
    Perm4::new(images).expect("transposition")
}

/// A random gluing table on `n` tetrahedra: a random matching on a random
/// subset of the faces, each pair glued by a random compatible permutation.
/// Some leftover faces are folded onto themselves. With `closed`, every face
/// is paired.
pub fn random_triangulation(rng: &mut ChaCha8Rng, n: usize, closed: bool) -> Triangulation {
    let mut faces: Vec<(usize, usize)> = (0..n).flat_map(|t| (0..4).map(move |f| (t, f))).collect();
    faces.shuffle(rng);
    let pairs = if closed { faces.len() / 2 } else { rng.gen_range(0..=faces.len() / 2) };
    let mut table = vec![[None; 4]; n];
    for k in 0..pairs {
        let (ta, fa) = faces[2 * k];
        let (tb, fb) = faces[2 * k + 1];
        let candidates: Vec<Perm4> = Perm4::all().filter(|p| p.apply(fa) == fb).collect();
        let p = *candidates.choose(rng).expect("six candidates");
        table[ta][fa] = Some(Gluing { tet: tb, perm: p });
        table[tb][fb] = Some(Gluing { tet: ta, perm: p.inverse() });
    }
    if !closed {
        for &(t, f) in &faces[2 * pairs..] {
            if rng.gen_bool(0.15) {
                let keep = *[0, 1, 2, 3].iter().filter(|&&x| x != f).collect::<Vec<_>>().choose(rng).unwrap();
                table[t][f] = Some(Gluing { tet: t, perm: fold(f, *keep) });
            }
        }
    }
    Triangulation::new(table).expect("random matching is valid")
}

/// Every gluing table on one tetrahedron: each face boundary, folded onto
/// itself, or paired with another face by any compatible permutation.
pub fn all_one_tet_triangulations() -> Vec<Triangulation> {
    fn extend(table: &mut [[Option<Gluing>; 4]; 1], face: usize, out: &mut Vec<Triangulation>) {
        if face == 4 {
            out.push(Triangulation::new(table.to_vec()).expect("valid by construction"));
            return;
        }
        if table[0][face].is_some() {
            return extend(table, face + 1, out);
        }
        extend(table, face + 1, out);
        for keep in (0..4).filter(|&k| k != face) {
            table[0][face] = Some(Gluing { tet: 0, perm: fold(face, keep) });
            extend(table, face + 1, out);
        }
        let free: Vec<usize> = (face + 1..4).filter(|&o| table[0][o].is_none()).collect();
        for other in free {
            for p in Perm4::all().filter(|p| p.apply(face) == other) {
                table[0][face] = Some(Gluing { tet: 0, perm: p });
                table[0][other] = Some(Gluing { tet: 0, perm: p.inverse() });
                extend(table, face + 1, out);
                table[0][other] = None;
            }
        }
        table[0][face] = None;
    }
    let mut out = Vec::new();
    extend(&mut [[None; 4]], 0, &mut out);
    out
}

/// Number of orbits of `(tet, cell)` nodes under face identifications,
/// found by breadth-first search.
fn orbit_count<K: Copy + Eq + std::hash::Hash>(
    nodes: Vec<K>,
    neighbours: impl Fn(K) -> Vec<K>,
) -> usize {
    let mut seen: HashMap<K, ()> = HashMap::new();
    let mut count = 0;
    for &start in &nodes {
        if seen.contains_key(&start) {
            continue;
        }
        count += 1;
        let mut queue = VecDeque::from([start]);
        seen.insert(start, ());
        while let Some(x) = queue.pop_front() {
            for y in neighbours(x) {
                if seen.insert(y, ()).is_none() {
                    queue.push_back(y);
                }
            }
        }
    }
    count
}

/// `(V, E, F)` by orbit search.
pub fn orbit_skeleton(t: &Triangulation) -> (usize, usize, usize) {
    let n = t.tet_count();
    let glue = |tet: usize, face: usize| t.gluing(tet, face);
    let verts = orbit_count(
        (0..n).flat_map(|tet| (0..4).map(move |v| (tet, v))).collect(),
        |(tet, v)| {
            (0..4)
                .filter(|&f| f != v)
                .filter_map(|f| glue(tet, f).map(|g| (g.tet, g.perm.apply(v))))
                .collect()
        },
    );
    let edges = orbit_count(
        (0..n)
            .flat_map(|tet| {
                (0..4).flat_map(move |a| (a + 1..4).map(move |b| (tet, a, b)))
            })
            .collect(),
        |(tet, a, b)| {
            (0..4)
                .filter(|&f| f != a && f != b)
                .filter_map(|f| {
                    glue(tet, f).map(|g| {
                        let (x, y) = (g.perm.apply(a), g.perm.apply(b));
                        (g.tet, x.min(y), x.max(y))
                    })
                })
                .collect()
        },
    );
    let faces = orbit_count(
        (0..n).flat_map(|tet| (0..4).map(move |f| (tet, f))).collect(),
        |(tet, f)| glue(tet, f).map(|g| (g.tet, g.perm.apply(f))).into_iter().collect(),
    );
    (verts, edges, faces)
}

/// Quad `k` pairs vertex 0 with vertex `k + 1`.
const QUADS: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

fn quad_pairs(q: usize, a: usize, b: usize) -> bool {
    QUADS[q].iter().any(|p| (p[0] == a && p[1] == b) || (p[0] == b && p[1] == a))
}

/// Arcs at `corner` of face `face`: the triangle at the corner, plus the quad
/// pairing the corner with the face's missing vertex.
pub fn oracle_arcs(c: &[u64], face: usize, corner: usize) -> u64 {
    let q = (0..3).find(|&q| quad_pairs(q, corner, face)).expect("some quad pairs them");
    c[corner] + c[4 + q]
}

/// Points where the disks of one tetrahedron's coordinates meet edge `{a, b}`.
pub fn oracle_crossings(c: &[u64], a: usize, b: usize) -> u64 {
    let mut n = c[a] + c[b];
    for q in 0..3 {
        if !quad_pairs(q, a, b) {
            n += c[4 + q];
        }
    }
    n
}

/// Edge class of every `(tet, a, b)` with `a < b`.
fn edge_classes(t: &Triangulation) -> HashMap<(usize, usize, usize), usize> {
    let n = t.tet_count();
    let mut class = HashMap::new();
    let mut next = 0;
    for tet in 0..n {
        for a in 0..4 {
            for b in a + 1..4 {
                if class.contains_key(&(tet, a, b)) {
                    continue;
                }
                let mut queue = VecDeque::from([(tet, a, b)]);
                class.insert((tet, a, b), next);
                while let Some((tt, x, y)) = queue.pop_front() {
                    for f in (0..4).filter(|&f| f != x && f != y) {
                        if let Some(g) = t.gluing(tt, f) {
                            let (u, v) = (g.perm.apply(x), g.perm.apply(y));
                            let key = (g.tet, u.min(v), u.max(v));
                            if let std::collections::hash_map::Entry::Vacant(e) = class.entry(key) {
                                e.insert(next);
                                queue.push_back(key);
                            }
                        }
                    }
                }
                next += 1;
            }
        }
    }
    class
}

/// `w1` as a sum over edge classes of the crossings at the first
/// representative; `None` if representatives disagree.
pub fn oracle_w1(t: &Triangulation, coords: &[u64]) -> Option<u64> {
    let classes = edge_classes(t);
    let mut seen: HashMap<usize, u64> = HashMap::new();
    for tet in 0..t.tet_count() {
        let c = &coords[7 * tet..7 * tet + 7];
        for a in 0..4 {
            for b in a + 1..4 {
                let x = oracle_crossings(c, a, b);
                match seen.insert(classes[&(tet, a, b)], x) {
                    Some(prev) if prev != x => return None,
                    _ => {}
                }
            }
        }
    }
    Some(seen.values().sum())
}

fn face_ok(t: &Triangulation, coords: &[u64], tet: usize, face: usize, upto: usize) -> bool {
    let Some(g) = t.gluing(tet, face) else { return true };
    if g.tet > upto {
        return true;
    }
    let other = g.perm.apply(face);
    (0..4).filter(|&v| v != face).all(|v| {
        oracle_arcs(&coords[7 * tet..], face, v) == oracle_arcs(&coords[7 * g.tet..], other, g.perm.apply(v))
    })
}

/// Every nonzero admissible vector with `w1 ≤ cap`, by brute force: per
/// tetrahedron, all coordinate tuples in `[0, cap]^7` with at most one quad
/// type and a local crossing bound within the cap; then the product over
/// tetrahedra, checking each face pairing once both sides are assigned.
pub fn naive_enumerate(t: &Triangulation, cap: u64, closed_only: bool) -> Vec<NormalVector> {
    let n = t.tet_count();
    let classes = edge_classes(t);
    let mut per_tet: Vec<Vec<[u64; 7]>> = Vec::with_capacity(n);
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    for tet in 0..n {
        // Edge classes of this tetrahedron, renumbered 0.. locally.
        let mut local_class = [0usize; 6];
        let mut ids: Vec<usize> = Vec::new();
        for (e, &(a, b)) in pairs.iter().enumerate() {
            let id = classes[&(tet, a, b)];
            local_class[e] = ids.iter().position(|&x| x == id).unwrap_or_else(|| {
                ids.push(id);
                ids.len() - 1
            });
        }
        let mut list = Vec::new();
        let mut c = [0u64; 7];
        loop {
            let quads = c[4..].iter().filter(|&&x| x > 0).count();
            let boundary_arcs = closed_only
                && (0..4).any(|f| {
                    t.gluing(tet, f).is_none()
                        && (0..4).filter(|&v| v != f).any(|v| oracle_arcs(&c, f, v) > 0)
                });
            if quads <= 1 && !boundary_arcs {
                let mut local = [0u64; 6];
                for (e, &(a, b)) in pairs.iter().enumerate() {
                    let k = local_class[e];
                    local[k] = local[k].max(oracle_crossings(&c, a, b));
                }
                if local.iter().sum::<u64>() <= cap {
                    list.push(c);
                }
            }
            // Odometer over [0, cap]^7.
            let mut k = 0;
            while k < 7 {
                c[k] += 1;
                if c[k] <= cap {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
            if k == 7 {
                break;
            }
        }
        per_tet.push(list);
    }

    let mut out = Vec::new();
    let mut coords = vec![0u64; 7 * n];
    fn product(
        t: &Triangulation,
        per_tet: &[Vec<[u64; 7]>],
        cap: u64,
        tet: usize,
        coords: &mut Vec<u64>,
        out: &mut Vec<NormalVector>,
    ) {
        let n = t.tet_count();
        if tet == n {
            if coords.iter().any(|&x| x > 0) && oracle_w1(t, coords).is_some_and(|w| w <= cap) {
                out.push(NormalVector::from_coords(coords.clone()));
            }
            return;
        }
        for c in &per_tet[tet] {
            coords[7 * tet..7 * tet + 7].copy_from_slice(c);
            let ok = (0..=tet).all(|s| (0..4).all(|f| face_ok(t, coords, s, f, tet)));
            if ok {
                product(t, per_tet, cap, tet + 1, coords, out);
            }
        }
        coords[7 * tet..7 * tet + 7].fill(0);
    }
    product(t, &per_tet, cap, 0, &mut coords, &mut out);
    out.sort_by(|a, b| a.coords().cmp(b.coords()));
    out
}

/// Completes a unit triangle coordinate to a vertex link by propagating
/// triangle coordinates across faces.
pub fn propagate_vertex_link(t: &Triangulation, tet: usize, v: usize) -> NormalVector {
    let n = t.tet_count();
    let mut coords = vec![0u64; 7 * n];
    let mut queue = VecDeque::from([(tet, v)]);
    coords[7 * tet + v] = 1;
    while let Some((tt, x)) = queue.pop_front() {
        for f in (0..4).filter(|&f| f != x) {
            if let Some(g) = t.gluing(tt, f) {
                let y = g.perm.apply(x);
                if coords[7 * g.tet + y] == 0 {
                    coords[7 * g.tet + y] = 1;
                    queue.push_back((g.tet, y));
                }
            }
        }
    }
    NormalVector::from_coords(coords)
}

pub fn all_tets(t: &Triangulation) -> BTreeSet<usize> {
    (0..t.tet_count()).collect()
}

/// A random edge-directed surface on `n` triangles: a random matching on a
/// random subset of the edge slots (all of them with `closed`, `n` even),
/// random flips, and random directions made consistent across gluings.
pub fn random_surface(rng: &mut ChaCha8Rng, n: usize, closed: bool) -> SurfaceTriangulation {
    let mut slots: Vec<(usize, usize)> = (0..n).flat_map(|t| (0..3).map(move |s| (t, s))).collect();
    slots.shuffle(rng);
    let pairs = if closed { slots.len() / 2 } else { rng.gen_range(0..=slots.len() / 2) };
    let mut gluings = vec![[None; 3]; n];
    let mut directions = vec![[true; 3]; n];
    for &(t, s) in &slots {
        directions[t][s] = rng.gen_bool(0.5);
    }
    for k in 0..pairs {
        let (ta, sa) = slots[2 * k];
        let (tb, sb) = slots[2 * k + 1];
        let flip = rng.gen_bool(0.5);
        gluings[ta][sa] = Some(EdgeGluing { tri: tb, slot: sb, flip });
        gluings[tb][sb] = Some(EdgeGluing { tri: ta, slot: sa, flip });
        directions[tb][sb] = directions[ta][sa] ^ flip;
    }
    SurfaceTriangulation::new(gluings, directions).expect("consistent by construction")
}

/// Whether some face is glued to itself or some edge is identified with
/// itself in reverse; the plain cell count `w1 - w2 + disks` is only valid
/// when neither happens.
pub fn has_self_identifications(t: &Triangulation) -> bool {
    let n = t.tet_count();
    if (0..n).any(|tet| (0..4).any(|f| t.gluing(tet, f).is_some_and(|g| g.tet == tet && g.perm.apply(f) == f))) {
        return true;
    }
    for tet in 0..n {
        for a in 0..4 {
            for b in (0..4).filter(|&b| b != a) {
                let mut seen = BTreeSet::from([(tet, a, b)]);
                let mut queue = VecDeque::from([(tet, a, b)]);
                while let Some((tt, x, y)) = queue.pop_front() {
                    for f in (0..4).filter(|&f| f != x && f != y) {
                        if let Some(g) = t.gluing(tt, f) {
                            let next = (g.tet, g.perm.apply(x), g.perm.apply(y));
                            if seen.insert(next) {
                                queue.push_back(next);
                            }
                        }
                    }
                }
                if seen.contains(&(tet, b, a)) {
                    return true;
                }
            }
        }
    }
    false
}
