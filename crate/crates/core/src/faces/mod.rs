//! Face enumeration with dimension and level, the face digraph of deformed
//! braid arrangements, and face count tables.
//!
//! Faces are the regions of the restrictions `A/X` over all flats `X`.
//! Regions are found by depth-first sign assignment, pruning every prefix
//! that has no strictly feasible point.

mod digraph;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Zero;

pub use digraph::{face_digraph, level_by_components, order_components, Digraph, FaceDigraph};

use crate::arrangement::{restrict_to_flat, Arrangement};
use crate::exactgeom::{
    bounded_within, flat_from_hyperplanes, recession_span_dim, strict_interior_point, Flat, LinearConstraint,
    PolyhedronDescr, Rational,
};
use crate::poset::build_intersection_poset;
use crate::{Error, Result};

/// Position of a point relative to `normal · x = offset`. Ordered
/// `Neg < Zero < Pos`; face lists sort sign vectors lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(v: &Rational) -> Sign {
        match v.cmp(&Rational::zero()) {
            core::cmp::Ordering::Less => Sign::Neg,
            core::cmp::Ordering::Equal => Sign::Zero,
            core::cmp::Ordering::Greater => Sign::Pos,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }

    /// Accepts `+`, `0`, `-` and the Unicode minus sign.
    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Pos),
            '0' => Some(Sign::Zero),
            '-' | '\u{2212}' => Some(Sign::Neg),
            _ => None,
        }
    }
}

pub fn sign_string(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.as_char()).collect()
}

pub fn parse_signs(s: &str) -> Option<Vec<Sign>> {
    s.chars().map(Sign::from_char).collect()
}

pub fn signs_at(a: &Arrangement, x: &[Rational]) -> Vec<Sign> {
    a.hyperplanes().iter().map(|h| Sign::of(&h.constraint().eval(x))).collect()
}

fn oriented(c: &LinearConstraint, sign: Sign) -> LinearConstraint {
    match sign {
        Sign::Neg => LinearConstraint::new(c.normal.iter().map(|v| -v.clone()).collect(), -c.offset.clone()),
        _ => c.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    flat: Flat,
    signs: Vec<Sign>,
    witness: Vec<Rational>,
    level: usize,
}

impl Face {
    /// Affine hull of the face.
    pub fn flat(&self) -> &Flat {
        &self.flat
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn sign_string(&self) -> String {
        sign_string(&self.signs)
    }

    /// A point in the relative interior.
    pub fn witness(&self) -> &[Rational] {
        &self.witness
    }

    pub fn dim(&self) -> usize {
        self.flat.dim()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// The face as a relatively open polyhedron.
    pub fn description(&self, a: &Arrangement) -> PolyhedronDescr {
        describe(a, &self.signs, false)
    }

    /// The topological closure of the face.
    pub fn closure(&self, a: &Arrangement) -> PolyhedronDescr {
        describe(a, &self.signs, true)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] d={} l={}", self.sign_string(), self.dim(), self.level)
    }
}

fn describe(a: &Arrangement, signs: &[Sign], closed: bool) -> PolyhedronDescr {
    let mut eq = Vec::new();
    let mut ineq = Vec::new();
    for (h, &s) in a.hyperplanes().iter().zip(signs) {
        match s {
            Sign::Zero => eq.push(h.constraint().clone()),
            _ => ineq.push(oriented(h.constraint(), s)),
        }
    }
    let (strict, weak) = if closed { (Vec::new(), ineq) } else { (ineq, Vec::new()) };
    PolyhedronDescr::new(a.ambient_dim(), eq, strict, weak).expect("arrangement hyperplanes are well formed")
}

/// The face with the given sign vector, with a canonical witness.
pub fn face_from_signs(a: &Arrangement, signs: &[Sign]) -> Result<Face> {
    if signs.len() != a.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: signs.len() });
    }
    let open = describe(a, signs, false);
    let flat = flat_from_hyperplanes(open.equalities(), a.ambient_dim())?
        .ok_or_else(|| Error::InconsistentFace(sign_string(signs)))?;
    let witness = strict_interior_point(&open).ok_or_else(|| Error::InconsistentFace(sign_string(signs)))?;
    let level = recession_span_dim(&describe(a, signs, true))?;
    Ok(Face { flat, signs: signs.to_vec(), witness, level })
}

/// A face rebuilt from stored data. The witness must reproduce `signs`; the
/// flat is recomputed and the level is taken as given.
pub fn face_from_parts(a: &Arrangement, signs: &[Sign], witness: Vec<Rational>, level: usize) -> Result<Face> {
    if witness.len() != a.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: a.ambient_dim(), found: witness.len() });
    }
    if signs_at(a, &witness) != signs {
        return Err(Error::InconsistentFace(sign_string(signs)));
    }
    let zero: Vec<LinearConstraint> =
        a.hyperplanes().iter().zip(signs).filter(|(_, &s)| s == Sign::Zero).map(|(h, _)| h.constraint().clone()).collect();
    let flat = flat_from_hyperplanes(&zero, a.ambient_dim())?.ok_or_else(|| Error::InconsistentFace(sign_string(signs)))?;
    if level > flat.dim() {
        return Err(Error::InconsistentFace(sign_string(signs)));
    }
    Ok(Face { flat, signs: signs.to_vec(), witness, level })
}

/// The unique face containing `x`.
pub fn locate_face(a: &Arrangement, x: &[Rational]) -> Result<Face> {
    if x.len() != a.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: a.ambient_dim(), found: x.len() });
    }
    face_from_signs(a, &signs_at(a, x))
}

/// Dimension of the span of the recession cone of the face closure.
pub fn level_by_recession(a: &Arrangement, face: &Face) -> usize {
    recession_span_dim(&face.closure(a)).expect("closures have no strict inequalities")
}

/// True iff the face meets `W(A)` (and all its translates) in a bounded set.
pub fn is_relatively_bounded(a: &Arrangement, face: &Face) -> bool {
    bounded_within(&face.closure(a), a.normal_span_basis()).expect("dimensions agree")
}

/// A region (open cell) of an arrangement in its own ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub signs: Vec<Sign>,
    pub witness: Vec<Rational>,
}

/// All regions, sorted by sign vector.
pub fn enumerate_regions(a: &Arrangement) -> Vec<Region> {
    let mut out = Vec::new();
    let mut signs = Vec::with_capacity(a.len());
    let mut strict = Vec::with_capacity(a.len());
    let origin = vec![Rational::zero(); a.ambient_dim()];
    assign_signs(a, &mut signs, &mut strict, origin, &mut out);
    out.sort_by(|p, q| p.signs.cmp(&q.signs));
    out
}

fn assign_signs(
    a: &Arrangement,
    signs: &mut Vec<Sign>,
    strict: &mut Vec<LinearConstraint>,
    witness: Vec<Rational>,
    out: &mut Vec<Region>,
) {
    let k = signs.len();
    if k == a.len() {
        out.push(Region { signs: signs.clone(), witness });
        return;
    }
    let h = a.hyperplanes()[k].constraint();
    let here = Sign::of(&h.eval(&witness));
    for side in [Sign::Neg, Sign::Pos] {
        strict.push(oriented(h, side));
        let next = if here == side {
            Some(witness.clone())
        } else {
            let cell = PolyhedronDescr::new(a.ambient_dim(), Vec::new(), strict.clone(), Vec::new())
                .expect("arrangement hyperplanes are well formed");
            strict_interior_point(&cell)
        };
        if let Some(w) = next {
            signs.push(side);
            assign_signs(a, signs, strict, w, out);
            signs.pop();
        }
        strict.pop();
    }
}

/// Every face of `a`: flats in poset order, then sign vectors ascending.
pub fn enumerate_faces(a: &Arrangement) -> Vec<Face> {
    let poset = build_intersection_poset(a);
    let mut faces = Vec::new();
    for flat in poset.flats() {
        faces.extend(faces_on_flat(a, flat).expect("poset flats are flats of the arrangement"));
    }
    faces
}

/// Faces whose affine hull is `flat`, sorted by sign vector.
pub fn faces_on_flat(a: &Arrangement, flat: &Flat) -> Result<Vec<Face>> {
    let restriction = restrict_to_flat(a, flat)?;
    let mut faces = enumerate_regions(&restriction.arrangement)
        .into_iter()
        .map(|region| {
            let x = restriction.chart.to_ambient(&region.witness);
            face_from_signs(a, &signs_at(a, &x))
        })
        .collect::<Result<Vec<_>>>()?;
    faces.sort_by(|p, q| p.signs.cmp(&q.signs));
    Ok(faces)
}

/// Counts `f(d, l)` of faces by dimension and level, `b(d)` of relatively
/// bounded faces by dimension, and the region count `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCountTable {
    n: usize,
    f: Vec<Vec<u64>>,
    b: Vec<u64>,
}

impl FaceCountTable {
    pub fn new(n: usize) -> Self {
        FaceCountTable { n, f: vec![vec![0; n + 1]; n + 1], b: vec![0; n + 1] }
    }

    pub fn from_counts(n: usize, f: Vec<Vec<u64>>, b: Vec<u64>) -> Result<Self> {
        if f.len() != n + 1 || f.iter().any(|row| row.len() != n + 1) || b.len() != n + 1 {
            return Err(Error::DimensionMismatch { expected: n + 1, found: f.len() });
        }
        Ok(FaceCountTable { n, f, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `f(d, l)`; zero outside `0 ≤ l ≤ d ≤ n`.
    pub fn f(&self, d: usize, l: usize) -> u64 {
        self.f.get(d).and_then(|row| row.get(l)).copied().unwrap_or(0)
    }

    pub fn b(&self, d: usize) -> u64 {
        self.b.get(d).copied().unwrap_or(0)
    }

    /// Number of regions.
    pub fn r(&self) -> u64 {
        self.f[self.n].iter().sum()
    }

    pub fn total(&self) -> u64 {
        self.f.iter().flatten().sum()
    }
}

pub fn count_table(a: &Arrangement, faces: &[Face]) -> FaceCountTable {
    let mut table = FaceCountTable::new(a.ambient_dim());
    for face in faces {
        table.f[face.dim()][face.level()] += 1;
        if is_relatively_bounded(a, face) {
            table.b[face.dim()] += 1;
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{build_family, Family};
    use crate::exactgeom::rational as q;

    fn dl(faces: &[Face]) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = faces.iter().map(|f| (f.dim(), f.level())).collect();
        v.sort();
        v
    }

    #[test]
    fn braid2_faces() {
        let a = build_family(Family::Braid, 2, 1).unwrap();
        let faces = enumerate_faces(&a);
        assert_eq!(dl(&faces), vec![(1, 1), (2, 2), (2, 2)]);
        assert_eq!(faces[0].sign_string(), "-");
        assert_eq!(faces[2].sign_string(), "0");
    }

    #[test]
    fn shi2_faces_and_table() {
        let a = build_family(Family::Shi, 2, 1).unwrap();
        let faces = enumerate_faces(&a);
        assert_eq!(dl(&faces), vec![(1, 1), (1, 1), (2, 1), (2, 2), (2, 2)]);
        for f in &faces {
            assert_eq!(signs_at(&a, f.witness()), f.signs());
        }
        let t = count_table(&a, &faces);
        assert_eq!((t.f(1, 1), t.f(2, 1), t.f(2, 2), t.r(), t.b(2)), (2, 1, 2, 3, 1));
    }

    #[test]
    fn catalan2_faces() {
        let a = build_family(Family::Catalan, 2, 1).unwrap();
        let faces = enumerate_faces(&a);
        assert_eq!(dl(&faces), vec![(1, 1), (1, 1), (1, 1), (2, 1), (2, 1), (2, 2), (2, 2)]);
    }

    #[test]
    fn shi2_digraphs_and_levels() {
        let a = build_family(Family::Shi, 2, 1).unwrap();
        let outer = locate_face(&a, &[q(5), q(0)]).unwrap();
        let strip = locate_face(&a, &[Rational::new(1.into(), 2.into()), q(0)]).unwrap();
        let on_line = locate_face(&a, &[q(3), q(3)]).unwrap();
        assert_eq!(face_digraph(&a, &outer).unwrap().edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(face_digraph(&a, &strip).unwrap().edges().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        assert_eq!(face_digraph(&a, &on_line).unwrap().edges().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        assert_eq!((level_by_recession(&a, &strip), level_by_components(&a, &strip).unwrap()), (1, 1));
        assert_eq!((level_by_recession(&a, &outer), level_by_components(&a, &outer).unwrap()), (2, 2));
        assert_eq!((level_by_recession(&a, &on_line), level_by_components(&a, &on_line).unwrap()), (1, 1));
    }

    #[test]
    fn catalan2_lower_region_orders_backwards() {
        let a = build_family(Family::Catalan, 2, 1).unwrap();
        let face = locate_face(&a, &[q(0), q(5)]).unwrap();
        let ordered = order_components(face_digraph(&a, &face).unwrap()).unwrap();
        assert_eq!(ordered.components, vec![vec![1], vec![0]]);
    }

    #[test]
    fn a1_single_face() {
        let a = build_family(Family::Braid, 1, 1).unwrap();
        let faces = enumerate_faces(&a);
        assert_eq!(faces.len(), 1);
        assert_eq!(level_by_components(&a, &faces[0]).unwrap(), 1);
        assert_eq!(count_table(&a, &faces).f(1, 1), 1);
    }

    #[test]
    fn digraph_needs_deformed_braid() {
        let a = crate::arrangement::build_type_b(
            &crate::arrangement::TypeBSpec::uniform(1, vec![], vec![], vec![q(0)]).unwrap(),
        );
        let faces = enumerate_faces(&a);
        assert_eq!(face_digraph(&a, &faces[0]), Err(Error::NotDeformedBraid));
    }

    #[test]
    fn bad_sign_vectors() {
        let a = build_family(Family::Shi, 2, 1).unwrap();
        assert!(matches!(face_from_signs(&a, &[Sign::Pos, Sign::Neg]), Ok(_)));
        assert!(matches!(face_from_signs(&a, &[Sign::Neg, Sign::Pos]), Err(Error::InconsistentFace(_))));
        assert!(matches!(face_from_signs(&a, &[Sign::Zero, Sign::Zero]), Err(Error::InconsistentFace(_))));
        assert!(matches!(face_from_signs(&a, &[Sign::Zero]), Err(Error::DimensionMismatch { .. })));
    }
}
