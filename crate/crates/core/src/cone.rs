//! Closing boundary components by coning them to a new vertex.

use thiserror::Error;

use crate::perm::Perm4;
use crate::skeleton::{boundary_components, boundary_edge_partner};
use crate::triangulation::{face_vertices, Gluing, Triangulation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("boundary component {id} does not exist ({count} components)")]
    NoSuchComponent { id: usize, count: usize },
    #[error("boundary component {id} is not a closed surface")]
    NotClosed { id: usize },
}

/// Cones boundary component `component` (numbered as in
/// [`boundary_components`]) to a new vertex.
///
/// One tetrahedron is appended per boundary face, in sorted face order. The
/// new tetrahedron has the apex as label 3, and its labels 0..3 are the face's
/// vertices in ascending order; its face 3 is glued to the old boundary face.
pub fn cone_boundary(t: &Triangulation, component: usize) -> Result<Triangulation, ConeError> {
    let comps = boundary_components(t);
    let comp = comps
        .get(component)
        .ok_or(ConeError::NoSuchComponent { id: component, count: comps.len() })?;
    if !comp.closed {
        return Err(ConeError::NotClosed { id: component });
    }

    let base = t.tet_count();
    let cone_of = |tet: usize, face: usize| {
        comp.faces.binary_search(&(tet, face)).ok().map(|k| base + k)
    };
    // Cone tet label -> old tet label, with the apex mapped to the face index.
    let to_old = |face: usize| {
        let fv = face_vertices(face);
        Perm4::new([fv[0] as u8, fv[1] as u8, fv[2] as u8, face as u8]).expect("bijection")
    };

    let mut out = t.clone();
    let mut new_rows = Vec::with_capacity(comp.faces.len());
    for &(tet, face) in &comp.faces {
        let sigma = to_old(face);
        let mut row = [None; 4];
        row[3] = Some(Gluing { tet, perm: sigma });
        for k in 0..3 {
            let (a, b) = match k {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (pt, pf, pa, pb) =
                boundary_edge_partner(t, tet, face, sigma.apply(a), sigma.apply(b))
                    .ok_or(ConeError::NotClosed { id: component })?;
            let partner = cone_of(pt, pf).ok_or(ConeError::NotClosed { id: component })?;
            let sigma_p_inv = to_old(pf).inverse();
            let (ca, cb) = (sigma_p_inv.apply(pa), sigma_p_inv.apply(pb));
            let ck = 3 - ca - cb;
            let mut images = [0u8; 4];
            images[a] = ca as u8;
            images[b] = cb as u8;
            images[k] = ck as u8;
            images[3] = 3;
            let perm = Perm4::new(images).ok_or(ConeError::NotClosed { id: component })?;
            row[k] = Some(Gluing { tet: partner, perm });
        }
        new_rows.push(row);
    }
    for (k, &(tet, face)) in comp.faces.iter().enumerate() {
        out.set_gluing(tet, face, Some(Gluing { tet: base + k, perm: to_old(face).inverse() }));
    }
    out.push_tets(new_rows);
    Ok(out)
}

/// Cones every boundary component in turn until the triangulation is closed.
pub fn cone_all(t: &Triangulation) -> Result<Triangulation, ConeError> {
    let mut out = t.clone();
    while !boundary_components(&out).is_empty() {
        out = cone_boundary(&out, 0)?;
    }
    Ok(out)
}
