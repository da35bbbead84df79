//! The level decomposition of faces of a deformed braid arrangement: a face
//! of level `l` corresponds to an ordered `l`-partition of the coordinates
//! together with one level-1 face of the induced arrangement on each block.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::arrangement::{build_deformed_braid, DeformedBraidSpec};
use crate::exactgeom::{rational, Rational};
use crate::faces::{face_digraph, face_from_signs, locate_face, order_components, Face};
use crate::{Error, Result};

/// Disjoint nonempty sorted blocks covering `0..n`, in order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if block.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidPartition(format!("block {block:?} is not sorted")));
            }
            for &i in block {
                if i >= n || seen[i] {
                    return Err(Error::InvalidPartition(format!("element {i} out of range or repeated")));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidPartition(format!("blocks do not cover 0..{n}")));
        }
        Ok(OrderedPartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiImage {
    pub partition: OrderedPartition,
    /// `parts[p]` is a level-1 face of the arrangement induced on block `p`.
    pub parts: Vec<Face>,
}

/// Splits a face along the ordered strong components of its digraph.
pub fn phi(spec: &DeformedBraidSpec, face: &Face) -> Result<PhiImage> {
    let a = build_deformed_braid(spec);
    if face.signs().len() != a.len() || face.witness().len() != spec.n() {
        return Err(Error::InconsistentFace("face does not belong to this arrangement".into()));
    }
    let ordered = order_components(face_digraph(&a, face)?)?;
    let x = face.witness();
    let mut parts = Vec::with_capacity(ordered.components.len());
    for block in &ordered.components {
        let sub = build_deformed_braid(&spec.induced(block)?);
        let point: Vec<Rational> = block.iter().map(|&i| x[i].clone()).collect();
        parts.push(locate_face(&sub, &point)?);
    }
    if let Some((p, part)) = parts.iter().enumerate().find(|(_, f)| f.level() != 1) {
        return Err(Error::InconsistentFace(format!("block {p} gives a face of level {}", part.level())));
    }
    if parts.iter().map(Face::dim).sum::<usize>() != face.dim() {
        return Err(Error::InconsistentFace("dimensions of the parts do not add up".into()));
    }
    let partition = OrderedPartition { blocks: ordered.components };
    Ok(PhiImage { partition, parts })
}

/// Reassembles a face from an ordered partition and level-1 parts by
/// shifting block `p` up by `(l − 1 − p)(B + s + 1)`, where `B` is the
/// largest offset magnitude and `s` the spread of all part coordinates.
pub fn phi_inverse(spec: &DeformedBraidSpec, partition: &OrderedPartition, parts: &[Face]) -> Result<Face> {
    let n = spec.n();
    let partition = OrderedPartition::new(n, partition.blocks.clone())?;
    if parts.len() != partition.len() {
        return Err(Error::InvalidPartition(format!("{} blocks but {} parts", partition.len(), parts.len())));
    }
    let mut witnesses = Vec::with_capacity(parts.len());
    for (p, (block, part)) in partition.blocks.iter().zip(parts).enumerate() {
        let sub = build_deformed_braid(&spec.induced(block)?);
        let face = face_from_signs(&sub, part.signs())?;
        if face.level() != 1 {
            return Err(Error::PartLevel { block: p, level: face.level() });
        }
        witnesses.push(part.witness().to_vec());
    }
    let all = witnesses.iter().flatten();
    let spread = match (all.clone().max(), all.min()) {
        (Some(hi), Some(lo)) => hi - lo,
        _ => Rational::zero(),
    };
    let step = spec.max_abs_offset() + spread + Rational::one();
    let l = partition.len();
    let mut x = vec![Rational::zero(); n];
    for (p, (block, w)) in partition.blocks.iter().zip(&witnesses).enumerate() {
        let shift = &step * rational((l - 1 - p) as i64);
        for (&i, wi) in block.iter().zip(w) {
            x[i] = wi + &shift;
        }
    }
    locate_face(&build_deformed_braid(spec), &x)
}
