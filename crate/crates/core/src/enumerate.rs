//! Bounded exhaustive enumeration of admissible normal vectors.
//!
//! Coordinates are bound depth-first in index order (tet-major, triangles
//! before quads), each taking increasing values, so results arrive in
//! lexicographic order. A matching equation is resolved at its last
//! coordinate, whose value it then forces. The search is pruned with a lower
//! bound on `w1`: every edge class contributes at least the largest crossing
//! count seen so far on any of its tetrahedron edges.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::normal::{
    components_unchecked, matching_equations, quad_separates, Component, NormalVector,
    VectorParseError, COORDS_PER_TET,
};
use crate::skeleton::Skeleton;
use crate::triangulation::{face_vertices, Triangulation, TET_EDGES};

#[derive(Clone, Debug)]
pub struct EnumerationQuery<'a> {
    pub triangulation: &'a Triangulation,
    pub max_w1: u64,
    /// Tetrahedra allowed to carry disks; all when `None`.
    pub support: Option<BTreeSet<usize>>,
    /// Discard vectors with arcs on boundary faces.
    pub closed_only: bool,
    /// Abort once more than this many vectors are found.
    pub max_results: Option<usize>,
    /// Split the search over the first tetrahedron's assignments.
    pub parallel: bool,
}

impl<'a> EnumerationQuery<'a> {
    pub fn new(triangulation: &'a Triangulation, max_w1: u64) -> Self {
        Self {
            triangulation,
            max_w1,
            support: None,
            closed_only: false,
            max_results: Some(1_000_000),
            parallel: true,
        }
    }

    pub fn support(mut self, tets: BTreeSet<usize>) -> Self {
        self.support = Some(tets);
        self
    }

    pub fn closed_only(mut self, yes: bool) -> Self {
        self.closed_only = yes;
        self
    }

    pub fn max_results(mut self, limit: Option<usize>) -> Self {
        self.max_results = limit;
        self
    }

    pub fn parallel(mut self, yes: bool) -> Self {
        self.parallel = yes;
        self
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("weight cap must be at least 1")]
    ZeroCap,
    #[error("support tetrahedron {tet} out of range ({count} tetrahedra)")]
    SupportOutOfRange { tet: usize, count: usize },
    #[error("more than {limit} vectors within the weight cap (search aborted after {found})")]
    TooManyResults { limit: usize, found: usize },
}

struct Plan {
    cap: u64,
    vars: usize,
    /// Terms of each non-trivial equation.
    equations: Vec<Vec<(usize, i64)>>,
    /// Equations whose last coordinate is the index.
    resolved_at: Vec<Vec<usize>>,
    fixed_zero: Vec<bool>,
    /// Global tetrahedron edges (`6 * tet + e`) crossed by each coordinate's disk.
    crossed: Vec<Vec<usize>>,
    edge_class: Vec<usize>,
    classes: usize,
}

impl Plan {
    fn new(q: &EnumerationQuery<'_>) -> Result<Self, EnumerationError> {
        if q.max_w1 == 0 {
            return Err(EnumerationError::ZeroCap);
        }
        let t = q.triangulation;
        let n = t.tet_count();
        if let Some(s) = &q.support {
            if let Some(&tet) = s.iter().find(|&&tet| tet >= n) {
                return Err(EnumerationError::SupportOutOfRange { tet, count: n });
            }
        }
        let vars = COORDS_PER_TET * n;
        let equations: Vec<Vec<(usize, i64)>> = matching_equations(t)
            .iter()
            .map(|e| e.terms())
            .filter(|terms| !terms.is_empty())
            .collect();
        let mut resolved_at = vec![Vec::new(); vars];
        for (k, terms) in equations.iter().enumerate() {
            let last = terms.iter().map(|&(i, _)| i).max().expect("non-empty");
            resolved_at[last].push(k);
        }

        let mut fixed_zero = vec![false; vars];
        if let Some(s) = &q.support {
            for tet in (0..n).filter(|tet| !s.contains(tet)) {
                fixed_zero[COORDS_PER_TET * tet..COORDS_PER_TET * (tet + 1)].fill(true);
            }
        }
        if q.closed_only {
            for tet in 0..n {
                for face in (0..4).filter(|&f| t.gluing(tet, f).is_none()) {
                    for corner in face_vertices(face) {
                        let slot = crate::normal::ArcSlot { tet, face, corner };
                        for i in slot.coord_indices() {
                            fixed_zero[i] = true;
                        }
                    }
                }
            }
        }

        let mut crossed = vec![Vec::new(); vars];
        for tet in 0..n {
            for (e, &(a, b)) in TET_EDGES.iter().enumerate() {
                for v in [a, b] {
                    crossed[COORDS_PER_TET * tet + v].push(6 * tet + e);
                }
                for quad in 0..3 {
                    if quad_separates(quad, a, b) {
                        crossed[COORDS_PER_TET * tet + 4 + quad].push(6 * tet + e);
                    }
                }
            }
        }
        let skel = Skeleton::new(t);
        let edge_class = (0..6 * n).map(|g| skel.edge_class(g / 6, g % 6)).collect();
        Ok(Self {
            cap: q.max_w1,
            vars,
            equations,
            resolved_at,
            fixed_zero,
            crossed,
            edge_class,
            classes: skel.num_edges(),
        })
    }
}

struct State {
    values: Vec<u64>,
    crossings: Vec<u64>,
    class_max: Vec<u64>,
    bound: u64,
    trail: Vec<(usize, u64)>,
}

impl State {
    fn new(plan: &Plan) -> Self {
        Self {
            values: vec![0; plan.vars],
            crossings: vec![0; plan.edge_class.len()],
            class_max: vec![0; plan.classes],
            bound: 0,
            trail: Vec::new(),
        }
    }

    /// Sets coordinate `i` (currently 0) to `x`; undo with [`State::unset`].
    fn set(&mut self, plan: &Plan, i: usize, x: u64) {
        self.values[i] = x;
        if x == 0 {
            return;
        }
        for &g in &plan.crossed[i] {
            self.crossings[g] += x;
            let c = plan.edge_class[g];
            if self.crossings[g] > self.class_max[c] {
                self.trail.push((c, self.class_max[c]));
                self.bound += self.crossings[g] - self.class_max[c];
                self.class_max[c] = self.crossings[g];
            }
        }
    }

    fn unset(&mut self, plan: &Plan, i: usize, mark: usize) {
        let x = std::mem::take(&mut self.values[i]);
        for &g in &plan.crossed[i] {
            self.crossings[g] -= x;
        }
        while self.trail.len() > mark {
            let (c, old) = self.trail.pop().expect("above mark");
            self.bound -= self.class_max[c] - old;
            self.class_max[c] = old;
        }
    }

    /// The value coordinate `i` must take, if constrained; `Err` if no value works.
    fn forced(&self, plan: &Plan, i: usize) -> Result<Option<u64>, ()> {
        let mut forced: Option<u64> = None;
        for &k in &plan.resolved_at[i] {
            let mut coeff = 0i64;
            let mut rest = 0i64;
            for &(j, c) in &plan.equations[k] {
                if j == i {
                    coeff = c;
                } else {
                    rest += c * self.values[j] as i64;
                }
            }
            if rest % coeff != 0 {
                return Err(());
            }
            let x = -rest / coeff;
            if x < 0 || forced.is_some_and(|f| f != x as u64) {
                return Err(());
            }
            forced = Some(x as u64);
        }
        let slot = i % COORDS_PER_TET;
        let quad_blocked = slot >= 4 && {
            let base = i - slot;
            (base + 4..i).any(|j| self.values[j] != 0)
        };
        if plan.fixed_zero[i] || quad_blocked {
            return match forced {
                Some(x) if x != 0 => Err(()),
                _ => Ok(Some(0)),
            };
        }
        Ok(forced)
    }
}

struct Search<'p> {
    plan: &'p Plan,
    limit: Option<usize>,
    found: &'p AtomicUsize,
    abort: &'p AtomicBool,
}

impl Search<'_> {
    /// Binds coordinates `i..stop`, calling `leaf` for each consistent assignment.
    fn run(&self, st: &mut State, i: usize, stop: usize, leaf: &mut dyn FnMut(&State)) {
        if self.abort.load(Ordering::Relaxed) {
            return;
        }
        if i == stop {
            leaf(st);
            return;
        }
        let plan = self.plan;
        match st.forced(plan, i) {
            Err(()) => {}
            Ok(Some(x)) => {
                let mark = st.trail.len();
                st.set(plan, i, x);
                if st.bound <= plan.cap {
                    self.run(st, i + 1, stop, leaf);
                }
                st.unset(plan, i, mark);
            }
            Ok(None) => {
                for x in 0.. {
                    let mark = st.trail.len();
                    st.set(plan, i, x);
                    if st.bound > plan.cap {
                        st.unset(plan, i, mark);
                        break;
                    }
                    self.run(st, i + 1, stop, leaf);
                    st.unset(plan, i, mark);
                }
            }
        }
    }

    fn collect(&self, st: &mut State, from: usize, out: &mut Vec<NormalVector>) {
        self.run(st, from, self.plan.vars, &mut |s: &State| {
            if s.values.iter().all(|&x| x == 0) {
                return;
            }
            let n = self.found.fetch_add(1, Ordering::Relaxed) + 1;
            if self.limit.is_some_and(|l| n > l) {
                self.abort.store(true, Ordering::Relaxed);
                return;
            }
            out.push(NormalVector::from_coords(s.values.clone()));
        });
    }
}

/// Every nonzero admissible vector with `w1 ≤ max_w1` satisfying the query's
/// restrictions, each once, in lexicographic order.
pub fn enumerate_admissible(q: &EnumerationQuery<'_>) -> Result<Vec<NormalVector>, EnumerationError> {
    let plan = Plan::new(q)?;
    let found = AtomicUsize::new(0);
    let abort = AtomicBool::new(false);
    let search = Search { plan: &plan, limit: q.max_results, found: &found, abort: &abort };

    let mut out = Vec::new();
    if !q.parallel || plan.vars <= COORDS_PER_TET {
        search.collect(&mut State::new(&plan), 0, &mut out);
    } else {
        let mut prefixes: Vec<Vec<u64>> = Vec::new();
        search.run(&mut State::new(&plan), 0, COORDS_PER_TET, &mut |s: &State| {
            prefixes.push(s.values[..COORDS_PER_TET].to_vec());
        });
        let parts: Vec<Vec<NormalVector>> = prefixes
            .into_par_iter()
            .map(|prefix| {
                let mut st = State::new(&plan);
                for (i, &x) in prefix.iter().enumerate() {
                    st.set(&plan, i, x);
                }
                let mut part = Vec::new();
                search.collect(&mut st, COORDS_PER_TET, &mut part);
                part
            })
            .collect();
        out = parts.into_iter().flatten().collect();
    }
    if abort.load(Ordering::Relaxed) {
        return Err(EnumerationError::TooManyResults {
            limit: q.max_results.unwrap_or(usize::MAX),
            found: found.load(Ordering::Relaxed),
        });
    }
    out.sort_unstable_by(|a, b| a.coords().cmp(b.coords()));
    Ok(out)
}

/// The connected vectors among [`enumerate_admissible`]'s output, with their
/// Euler characteristics.
pub fn enumerate_connected(q: &EnumerationQuery<'_>) -> Result<Vec<Component>, EnumerationError> {
    let all = enumerate_admissible(q)?;
    Ok(all
        .into_par_iter()
        .filter_map(|v| {
            let mut comps = components_unchecked(q.triangulation, &v);
            (comps.len() == 1).then(|| comps.pop().expect("one component"))
        })
        .collect())
}

/// `count K` followed by the vectors as blank-line separated blocks.
pub fn format_vectors(vectors: &[NormalVector]) -> String {
    let mut out = format!("count {}\n", vectors.len());
    for v in vectors {
        out.push('\n');
        out.push_str(&v.to_string());
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VectorListParseError {
    #[error("missing or malformed `count K` header")]
    Header,
    #[error("header announces {expected} vectors, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("vector {index}: {source}")]
    Vector { index: usize, source: VectorParseError },
}

/// Parses the output of [`format_vectors`].
pub fn parse_vectors(text: &str) -> Result<Vec<NormalVector>, VectorListParseError> {
    let mut blocks = text.split("\n\n");
    let header = blocks.next().ok_or(VectorListParseError::Header)?;
    let expected: usize = header
        .trim()
        .strip_prefix("count ")
        .and_then(|n| n.trim().parse().ok())
        .ok_or(VectorListParseError::Header)?;
    let vectors = blocks
        .filter(|b| !b.trim().is_empty())
        .enumerate()
        .map(|(index, b)| b.parse().map_err(|source| VectorListParseError::Vector { index, source }))
        .collect::<Result<Vec<NormalVector>, _>>()?;
    if vectors.len() != expected {
        return Err(VectorListParseError::CountMismatch { expected, found: vectors.len() });
    }
    Ok(vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::{is_admissible, weight, DiskType};

    #[test]
    fn single_tet_cap_four() {
        let t = Triangulation::unglued(1);
        let got = enumerate_admissible(&EnumerationQuery::new(&t, 4)).unwrap();
        assert_eq!(got.len(), 7);
        assert!(got.iter().all(|v| v.disk_count() == 1));
    }

    #[test]
    fn doubled_tetrahedron_closed() {
        let t = Triangulation::doubled_tetrahedron();
        let at3 = enumerate_admissible(&EnumerationQuery::new(&t, 3).closed_only(true)).unwrap();
        assert_eq!(at3.len(), 4);
        let at4 = enumerate_admissible(&EnumerationQuery::new(&t, 4).closed_only(true)).unwrap();
        assert_eq!(at4.len(), 7);
        for v in &at4 {
            let c = components_unchecked(&t, v);
            assert_eq!(c.len(), 1);
            assert_eq!(c[0].euler_characteristic, 2);
        }
    }

    #[test]
    fn connected_excludes_sums() {
        let t = Triangulation::doubled_tetrahedron();
        let q = EnumerationQuery::new(&t, 6).closed_only(true);
        let all = enumerate_admissible(&q).unwrap();
        let conn = enumerate_connected(&q).unwrap();
        assert!(conn.len() < all.len());
        assert!(conn.iter().all(|c| components_unchecked(&t, &c.vector).len() == 1));
    }

    #[test]
    fn cap_one_is_empty() {
        let t = Triangulation::doubled_tetrahedron();
        assert!(enumerate_admissible(&EnumerationQuery::new(&t, 1)).unwrap().is_empty());
    }

    #[test]
    fn results_are_sorted_admissible_and_within_cap() {
        let t = Triangulation::doubled_tetrahedron();
        let got = enumerate_admissible(&EnumerationQuery::new(&t, 6)).unwrap();
        assert!(got.windows(2).all(|w| w[0].coords() < w[1].coords()));
        for v in &got {
            assert!(is_admissible(&t, v).unwrap());
            assert!(weight(&t, v).unwrap().w1 <= 6);
        }
        let seq = enumerate_admissible(&EnumerationQuery::new(&t, 6).parallel(false)).unwrap();
        assert_eq!(seq, got);
    }

    #[test]
    fn support_restriction() {
        let t = Triangulation::unglued(2);
        let q = EnumerationQuery::new(&t, 4).support([1].into());
        let got = enumerate_admissible(&q).unwrap();
        assert_eq!(got.len(), 7);
        assert!(got.iter().all(|v| v.tet_coords(0).iter().all(|&x| x == 0)));
    }

    #[test]
    fn closed_only_on_a_ball_is_empty() {
        let t = Triangulation::unglued(1);
        let q = EnumerationQuery::new(&t, 12).closed_only(true);
        assert!(enumerate_admissible(&q).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        let t = Triangulation::unglued(1);
        assert_eq!(
            enumerate_admissible(&EnumerationQuery::new(&t, 0)).unwrap_err(),
            EnumerationError::ZeroCap
        );
        assert_eq!(
            enumerate_admissible(&EnumerationQuery::new(&t, 3).support([2].into())).unwrap_err(),
            EnumerationError::SupportOutOfRange { tet: 2, count: 1 }
        );
        assert!(matches!(
            enumerate_admissible(&EnumerationQuery::new(&t, 9).max_results(Some(3))),
            Err(EnumerationError::TooManyResults { limit: 3, .. })
        ));
    }

    #[test]
    fn vector_list_round_trip() {
        let vs = vec![
            NormalVector::unit(2, 0, DiskType::Triangle(1)),
            NormalVector::unit(2, 1, DiskType::Quad(2)),
        ];
        let text = format_vectors(&vs);
        assert!(text.starts_with("count 2\n\n"));
        assert_eq!(parse_vectors(&text).unwrap(), vs);
        assert_eq!(parse_vectors("count 0\n").unwrap(), vec![]);
        assert_eq!(
            parse_vectors("count 1\n").unwrap_err(),
            VectorListParseError::CountMismatch { expected: 1, found: 0 }
        );
    }
}
