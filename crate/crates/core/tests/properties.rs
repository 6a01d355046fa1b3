//! Property tests over random gluing tables, vectors and surfaces.

mod common;

use std::collections::BTreeSet;

use common::*;
use normsurf::normal::{is_vertex_linking, touches_boundary, vertex_link};
use normsurf::refine::TetImage;
use normsurf::*;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

/// A few admissible vectors of a random triangulation.
fn sample_vectors(t: &Triangulation, cap: u64) -> Vec<NormalVector> {
    let all = enumerate_admissible(&EnumerationQuery::new(t, cap)).unwrap();
    all.into_iter().step_by(3).take(12).collect()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn text_round_trip(seed in any::<u64>(), n in 1usize..6, closed in any::<bool>()) {
        let t = random_triangulation(&mut rng(seed), n, closed);
        let text = t.to_string();
        prop_assert_eq!(text.parse::<Triangulation>().unwrap(), t.clone());
        prop_assert_eq!(t.serialize(), text);
    }

    #[test]
    fn face_classes_have_at_most_two_members(seed in any::<u64>(), n in 1usize..6) {
        let t = random_triangulation(&mut rng(seed), n, false);
        prop_assert!(t.validate().is_empty());
        let skel = Skeleton::new(&t);
        for tet in 0..n {
            for f in 0..4 {
                let size = skel.face_class_sizes()[skel.face_class(tet, f)];
                let glued_elsewhere = t.gluing(tet, f).is_some_and(|g| (g.tet, g.perm.apply(f)) != (tet, f));
                prop_assert_eq!(size, if glued_elsewhere { 2 } else { 1 });
            }
        }
    }

    #[test]
    fn coning_closes_one_component(seed in any::<u64>(), n in 1usize..5) {
        let t = random_triangulation(&mut rng(seed), n, false);
        let comps = boundary_components(&t);
        for (id, c) in comps.iter().enumerate() {
            match cone_boundary(&t, id) {
                Ok(coned) => {
                    prop_assert!(c.closed);
                    prop_assert!(coned.validate().is_empty());
                    prop_assert_eq!(coned.tet_count(), n + c.faces.len());
                    prop_assert_eq!(coned.boundary_face_count(), t.boundary_face_count() - c.faces.len());
                }
                Err(e) => prop_assert_eq!(e, ConeError::NotClosed { id }),
            }
        }
    }

    #[test]
    fn admissible_vectors_satisfy_matching(seed in any::<u64>(), n in 1usize..4) {
        let t = random_triangulation(&mut rng(seed), n, false);
        let eqs = matching_equations(&t);
        for v in sample_vectors(&t, 6) {
            prop_assert!(eqs.iter().all(|e| e.residual(&v) == 0));
        }
    }

    #[test]
    fn weight_is_additive(seed in any::<u64>(), n in 1usize..4) {
        let t = random_triangulation(&mut rng(seed), n, false);
        let vs = sample_vectors(&t, 6);
        for u in &vs {
            for v in &vs {
                let sum = u + v;
                if is_admissible(&t, &sum).unwrap() {
                    let (wu, wv) = (weight(&t, u).unwrap(), weight(&t, v).unwrap());
                    prop_assert_eq!(weight(&t, &sum).unwrap(), wu + wv);
                }
            }
        }
    }

    #[test]
    fn components_partition_the_vector(seed in any::<u64>(), n in 1usize..4, closed in any::<bool>()) {
        let t = random_triangulation(&mut rng(seed), n, closed);
        let plain = !has_self_identifications(&t);
        for v in sample_vectors(&t, 7) {
            let comps = components(&t, &v).unwrap();
            let mut total = NormalVector::zero(n);
            for c in &comps {
                prop_assert!(is_admissible(&t, &c.vector).unwrap());
                let again = components(&t, &c.vector).unwrap();
                prop_assert_eq!(again.len(), 1);
                if plain {
                    // Cells: points on edges, arcs on faces, disks.
                    let w = weight(&t, &c.vector).unwrap();
                    let chi = w.w1 as i64 - w.w2 as i64 + c.vector.disk_count() as i64;
                    prop_assert_eq!(c.euler_characteristic, chi);
                }
                total += &c.vector;
            }
            prop_assert_eq!(total, v);
        }
    }

    #[test]
    fn vertex_links_of_closed_triangulations(seed in any::<u64>(), n in 1usize..5) {
        let t = random_triangulation(&mut rng(seed), n, true);
        let skel = Skeleton::new(&t);
        for class in 0..skel.num_vertices() {
            let link = vertex_link(&t, &skel, class);
            prop_assert!(is_vertex_linking(&t, &link, class).unwrap());
            prop_assert_eq!(weight(&t, &link).unwrap().w1 as usize >= 1, true);
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn descendants_partition_the_target(seed in any::<u64>(), n in 1usize..4, f in prop::collection::vec(0u32..3, 3)) {
        let t = random_triangulation(&mut rng(seed), n, false);
        let f = ScalingFunction(f[..n].to_vec());
        let (target, map) = refine_scaled(&t, &f).unwrap();
        prop_assert!(target.validate().is_empty());
        let mut seen = BTreeSet::new();
        for (tet, ds) in map.descendants().iter().enumerate() {
            prop_assert_eq!(ds.len(), 4usize.pow(f.0[tet]));
            for d in ds {
                prop_assert!(seen.insert(d.tet));
            }
        }
        prop_assert_eq!(seen.len(), target.tet_count());
    }

    #[test]
    fn push_then_classify_is_identity(seed in any::<u64>(), n in 1usize..3, f in prop::collection::vec(0u32..2, 2)) {
        let t = random_triangulation(&mut rng(seed), n, false);
        let f = ScalingFunction(f[..n].to_vec());
        let (target, map) = refine_scaled(&t, &f).unwrap();
        for v in enumerate_admissible(&EnumerationQuery::new(&t, 6)).unwrap() {
            let pushed = map.push_forward(&v).unwrap();
            prop_assert!(is_admissible(&target, &pushed).unwrap());
            let back = map.classify_pullback(&pushed).unwrap();
            prop_assert_eq!(&back.source, &v);
            prop_assert_eq!(back.e_sphere_total(), 0);
        }
    }

    #[test]
    fn classify_then_realize_is_identity(seed in any::<u64>(), n in 1usize..3, f in prop::collection::vec(0u32..2, 2)) {
        let t = random_triangulation(&mut rng(seed), n, false);
        let f = ScalingFunction(f[..n].to_vec());
        let (target, map) = refine_scaled(&t, &f).unwrap();
        for v in enumerate_admissible(&EnumerationQuery::new(&target, 5)).unwrap() {
            let p = map.classify_pullback(&v).unwrap();
            prop_assert!(is_admissible(&t, &p.source).unwrap());
            prop_assert_eq!(map.realize(&p), v.clone());
            // Re-realizing every piece with the lightest pattern never adds weight.
            let standard = map.standard_realization(&p);
            prop_assert!(weight(&target, &standard).unwrap().w1 <= weight(&target, &v).unwrap().w1);
        }
    }

    #[test]
    fn push_forward_keeps_arcs_on_surviving_faces(seed in any::<u64>(), n in 1usize..4) {
        let t = random_triangulation(&mut rng(seed), n, false);
        let selected: BTreeSet<usize> = (0..n).filter(|i| (seed >> i) & 1 == 1).collect();
        let (_, map) = refine_once(&t, &selected).unwrap();
        let step = &map.steps()[0];
        for v in sample_vectors(&t, 6) {
            let pushed = map.push_forward(&v).unwrap();
            for tet in 0..n {
                for face in 0..4 {
                    for corner in (0..4).filter(|&c| c != face) {
                        let (child, cface, ccorner) = match step.images[tet] {
                            TetImage::Copied(c) => (c, face, corner),
                            TetImage::Split(first) => (
                                first + face,
                                3,
                                normsurf::refine::child_label(face, corner),
                            ),
                        };
                        prop_assert_eq!(pushed.arcs(child, cface, ccorner), v.arcs(tet, face, corner));
                    }
                }
            }
        }
    }

    #[test]
    fn cone_vertex_links_are_spheres(seed in any::<u64>(), n in 1usize..3) {
        let t = random_triangulation(&mut rng(seed), n, false);
        let (target, map) = refine_scaled(&t, &ScalingFunction::uniform(n, 2)).unwrap();
        for id in 0..map.new_vertices().len() {
            let link = map.cone_vertex_link(id);
            let comps = components(&target, &link).unwrap();
            prop_assert_eq!(comps.len(), 1);
            prop_assert_eq!(comps[0].euler_characteristic, 2);
            let p = map.classify_pullback(&link).unwrap();
            prop_assert!(p.source.is_zero());
            prop_assert_eq!(p.e_spheres.iter().enumerate().filter(|&(_, &c)| c > 0).map(|(i, &c)| (i, c)).collect::<Vec<_>>(), vec![(id, 1)]);
        }
    }

    #[test]
    fn parallel_and_sequential_enumeration_agree(seed in any::<u64>(), n in 1usize..4, cap in 1u64..7) {
        let t = random_triangulation(&mut rng(seed), n, false);
        let q = EnumerationQuery::new(&t, cap);
        let par = enumerate_admissible(&q).unwrap();
        prop_assert_eq!(&par, &enumerate_admissible(&q.clone().parallel(false)).unwrap());
        prop_assert!(par.windows(2).all(|w| w[0].coords() < w[1].coords()));
    }

    #[test]
    fn orienting_removes_every_cyclic_triangle(seed in any::<u64>(), n in 1usize..31, closed in any::<bool>()) {
        let n = if closed { n + n % 2 } else { n };
        let s = random_surface(&mut rng(seed), n, closed);
        let before = s.count_cyclic();
        let (o, steps) = s.orient_acyclic();
        prop_assert_eq!(steps, before);
        prop_assert_eq!(o.count_cyclic(), 0);
        prop_assert_eq!(o.triangle_count(), n + 2 * before);
        prop_assert_eq!(o.is_closed(), s.is_closed());
        prop_assert_eq!(o.to_string().parse::<SurfaceTriangulation>().unwrap(), o);
    }

    #[test]
    fn prisms_are_valid_with_admissible_middle(seed in any::<u64>(), n in 1usize..9, closed in any::<bool>()) {
        let n = if closed { n + n % 2 } else { n };
        let (s, _) = random_surface(&mut rng(seed), n, closed).orient_acyclic();
        let p = build_prism(&s).unwrap();
        let t = &p.triangulation;
        prop_assert!(t.validate().is_empty());
        prop_assert_eq!(t.tet_count(), 3 * s.triangle_count());
        prop_assert!(is_admissible(t, &p.canonical).unwrap());
        prop_assert!((0..t.tet_count()).all(|tet| p.canonical.tet_coords(tet).iter().sum::<u64>() == 1));
        prop_assert_eq!(touches_boundary(t, &p.canonical), !s.is_closed());
    }
}
