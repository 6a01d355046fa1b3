//! Gluing tables for triangulated 3-manifolds.
//!
//! A [`Triangulation`] is a list of tetrahedra with vertex labels `0..4`.
//! Face `i` of a tetrahedron is the face opposite vertex `i`. A glued face
//! records the target tetrahedron and a [`Perm4`] sending this tetrahedron's
//! labels to the target's; the image of `i` is the target face index.
//!
//! The text format is
//!
//! ```text
//! # comment
//! tets 2
//! 1:0123 1:0123 1:0123 1:0123
//! 0:0123 0:0123 0:0123 0:0123
//! ```
//!
//! where each entry is `-` for a boundary face or `j:pqrs`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Perm4;

/// The six edges of a tetrahedron as label pairs, in canonical order.
pub const TET_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index into [`TET_EDGES`] of the edge joining `a` and `b`.
#[inline]
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no tetrahedron edge joins {a} and {b}"),
    }
}

/// The three vertex labels of face `face`, ascending.
#[inline]
pub fn face_vertices(face: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != face {
            out[k] = v;
            k += 1;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    faces: Vec<[Option<Gluing>; 4]>,
}

/// One broken invariant found by [`Triangulation::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TargetOutOfRange { tet: usize, face: usize, target: usize },
    NonInvolutive { tet: usize, face: usize },
    FoldedOntoItself { tet: usize, face: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TargetOutOfRange { tet, face, target } => {
                write!(f, "tet {tet} face {face}: target tet {target} out of range")
            }
            Violation::NonInvolutive { tet, face } => {
                write!(f, "tet {tet} face {face}: non-involutive gluing")
            }
            Violation::FoldedOntoItself { tet, face } => {
                write!(f, "tet {tet} face {face}: glued to itself by a map fixing the face")
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: tet index {index} out of range (tets {count})")]
    IndexOutOfRange { line: usize, index: usize, count: usize },
    #[error("line {line}: {violation}")]
    Invalid { line: usize, violation: Violation },
}

impl std::error::Error for Violation {}

impl Triangulation {
    /// Builds a triangulation and checks every invariant.
    pub fn new(faces: Vec<[Option<Gluing>; 4]>) -> Result<Self, Violation> {
        let t = Self { faces };
        match t.validate().into_iter().next() {
            Some(v) => Err(v),
            None => Ok(t),
        }
    }

    /// Builds a triangulation without checking the gluing invariants.
    pub fn new_unchecked(faces: Vec<[Option<Gluing>; 4]>) -> Self {
        Self { faces }
    }

    /// `n` tetrahedra with every face on the boundary.
    pub fn unglued(n: usize) -> Self {
        Self { faces: vec![[None; 4]; n] }
    }

    /// Two tetrahedra glued face-to-face by the identity: a 3-sphere.
    pub fn doubled_tetrahedron() -> Self {
        let g = |tet| Some(Gluing { tet, perm: Perm4::IDENTITY });
        Self { faces: vec![[g(1), g(1), g(1), g(1)], [g(0), g(0), g(0), g(0)]] }
    }

    #[inline]
    pub fn tet_count(&self) -> usize {
        self.faces.len()
    }

    #[inline]
    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.faces[tet][face]
    }

    pub fn gluings(&self) -> &[[Option<Gluing>; 4]] {
        &self.faces
    }

    /// Number of boundary (unglued) tetrahedron faces.
    pub fn boundary_face_count(&self) -> usize {
        self.faces.iter().flatten().filter(|g| g.is_none()).count()
    }

    pub fn is_closed(&self) -> bool {
        self.boundary_face_count() == 0
    }

    /// Lists every invariant violation; empty iff valid.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.faces.len();
        let mut out = Vec::new();
        for (tet, faces) in self.faces.iter().enumerate() {
            for (face, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.tet >= n {
                    out.push(Violation::TargetOutOfRange { tet, face, target: g.tet });
                    continue;
                }
                let target_face = g.perm.apply(face);
                if g.tet == tet && target_face == face && g.perm == Perm4::IDENTITY {
                    out.push(Violation::FoldedOntoItself { tet, face });
                    continue;
                }
                let back = self.faces[g.tet][target_face];
                let expected = Gluing { tet, perm: g.perm.inverse() };
                if back != Some(expected) {
                    out.push(Violation::NonInvolutive { tet, face });
                }
            }
        }
        out
    }

    /// Canonical text form; inverse of [`FromStr`].
    pub fn serialize(&self) -> String {
        self.to_string()
    }

    /// Appends tetrahedra; indices in `extra` are absolute.
    pub(crate) fn push_tets(&mut self, extra: impl IntoIterator<Item = [Option<Gluing>; 4]>) {
        self.faces.extend(extra);
    }

    pub(crate) fn set_gluing(&mut self, tet: usize, face: usize, g: Option<Gluing>) {
        self.faces[tet][face] = g;
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tets {}", self.faces.len())?;
        for faces in &self.faces {
            for (i, g) in faces.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                match g {
                    None => f.write_str("-")?,
                    Some(g) => write!(f, "{}:{}", g.tet, g.perm)?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn parse_entry(entry: &str, line: usize) -> Result<Option<Gluing>, ParseError> {
    if entry == "-" {
        return Ok(None);
    }
    let malformed = |message: String| ParseError::Malformed { line, message };
    let (tet, perm) = entry
        .split_once(':')
        .ok_or_else(|| malformed(format!("bad entry `{entry}`")))?;
    let tet: usize = tet
        .parse()
        .map_err(|_| malformed(format!("bad tet index in `{entry}`")))?;
    let digits: Vec<u8> = perm
        .bytes()
        .map(|b| b.wrapping_sub(b'0'))
        .collect();
    if digits.len() != 4 {
        return Err(malformed(format!("permutation `{perm}` must have 4 digits")));
    }
    let perm = Perm4::new([digits[0], digits[1], digits[2], digits[3]])
        .ok_or_else(|| malformed(format!("`{perm}` is not a permutation of 0123")))?;
    Ok(Some(Gluing { tet, perm }))
}

/// Lines that carry content, with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

impl FromStr for Triangulation {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or(ParseError::Malformed {
            line: 1,
            message: "missing `tets N` header".into(),
        })?;
        let count = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["tets", n] => n.parse::<usize>().map_err(|_| ParseError::Malformed {
                line: hline,
                message: format!("bad tet count `{n}`"),
            })?,
            _ => {
                return Err(ParseError::Malformed {
                    line: hline,
                    message: "expected `tets N`".into(),
                })
            }
        };

        let mut faces = Vec::with_capacity(count);
        let mut line_of = Vec::with_capacity(count);
        for (line, content) in lines {
            if faces.len() == count {
                return Err(ParseError::Malformed {
                    line,
                    message: format!("more than {count} tetrahedron lines"),
                });
            }
            let entries: Vec<&str> = content.split_whitespace().collect();
            if entries.len() != 4 {
                return Err(ParseError::Malformed {
                    line,
                    message: format!("expected 4 face entries, found {}", entries.len()),
                });
            }
            let mut row = [None; 4];
            for (slot, entry) in row.iter_mut().zip(&entries) {
                let g = parse_entry(entry, line)?;
                if let Some(g) = g {
                    if g.tet >= count {
                        return Err(ParseError::IndexOutOfRange { line, index: g.tet, count });
                    }
                }
                *slot = g;
            }
            faces.push(row);
            line_of.push(line);
        }
        if faces.len() != count {
            return Err(ParseError::Malformed {
                line: text.lines().count().max(1),
                message: format!("expected {count} tetrahedron lines, found {}", faces.len()),
            });
        }

        let t = Triangulation { faces };
        if let Some(violation) = t.validate().into_iter().next() {
            let tet = match violation {
                Violation::TargetOutOfRange { tet, .. }
                | Violation::NonInvolutive { tet, .. }
                | Violation::FoldedOntoItself { tet, .. } => tet,
            };
            return Err(ParseError::Invalid { line: line_of[tet], violation });
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOUBLED: &str = "tets 2\n1:0123 1:0123 1:0123 1:0123\n0:0123 0:0123 0:0123 0:0123\n";

    #[test]
    fn parses_single_unglued_tet() {
        let t: Triangulation = "tets 1\n- - - -\n".parse().unwrap();
        assert_eq!(t.tet_count(), 1);
        assert_eq!(t.boundary_face_count(), 4);
        assert!(t.validate().is_empty());
    }

    #[test]
    fn parses_doubled_tetrahedron() {
        let t: Triangulation = DOUBLED.parse().unwrap();
        assert_eq!(t, Triangulation::doubled_tetrahedron());
        assert!(t.is_closed());
        assert!(t.validate().is_empty());
    }

    #[test]
    fn rejects_one_sided_gluing_with_line_number() {
        let text = "# broken\ntets 2\n1:0123 - - -\n- - - -\n";
        let err = text.parse::<Triangulation>().unwrap_err();
        assert_eq!(
            err,
            ParseError::Invalid {
                line: 3,
                violation: Violation::NonInvolutive { tet: 0, face: 0 }
            }
        );
        assert!(err.to_string().contains("non-involutive gluing"));
    }

    #[test]
    fn validate_reports_single_broken_involution() {
        let mut faces = vec![[None; 4]; 2];
        faces[0][0] = Some(Gluing { tet: 1, perm: Perm4::IDENTITY });
        let t = Triangulation::new_unchecked(faces);
        assert_eq!(t.validate(), vec![Violation::NonInvolutive { tet: 0, face: 0 }]);
    }

    #[test]
    fn rejects_face_fixed_onto_itself() {
        let mut faces = vec![[None; 4]; 1];
        faces[0][2] = Some(Gluing { tet: 0, perm: Perm4::IDENTITY });
        let t = Triangulation::new_unchecked(faces);
        assert_eq!(t.validate(), vec![Violation::FoldedOntoItself { tet: 0, face: 2 }]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = "tets 1\n- - -\n".parse::<Triangulation>().unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 2, .. }));
        let err = "tets 1\n3:0123 - - -\n".parse::<Triangulation>().unwrap_err();
        assert_eq!(err, ParseError::IndexOutOfRange { line: 2, index: 3, count: 1 });
        let err = "tets 1\n0:0023 - - -\n".parse::<Triangulation>().unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 2, .. }));
        let err = "tet 1\n".parse::<Triangulation>().unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 1, .. }));
    }

    #[test]
    fn serialization_is_canonical() {
        let messy = "#x\n tets   2\n\n1:0123   1:0123 1:0123 1:0123\n0:0123 0:0123\t0:0123 0:0123\n";
        let t: Triangulation = messy.parse().unwrap();
        assert_eq!(t.serialize(), DOUBLED);
        assert_eq!(DOUBLED.parse::<Triangulation>().unwrap().serialize(), DOUBLED);
    }

    #[test]
    fn edge_index_matches_table() {
        for (i, &(a, b)) in TET_EDGES.iter().enumerate() {
            assert_eq!(edge_index(a, b), i);
            assert_eq!(edge_index(b, a), i);
        }
    }
}
