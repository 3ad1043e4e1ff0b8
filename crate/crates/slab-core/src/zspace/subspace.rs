//! Subspaces carried by representable open or regular closed sets,
//! re-presented as block spaces with recorded translations.

use std::collections::BTreeMap;

use super::{BlockRule, BlockSpace, GenMap, SetDescriptor, Tail};
use crate::balg::Survivors;
use crate::seqset::SetF;
use crate::shape::{BlockKind, ExtPoint, Shape};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubspaceError {
    #[error("block {block}: the set is not representable (isolated part neither finite nor cofinite)")]
    NotRepresentable { block: usize },
    #[error("the set is not open")]
    NotOpen,
    #[error("the set is not regular closed")]
    NotRegularClosed,
}

/// One surviving block of a subspace and how it reindexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPart {
    pub old_block: usize,
    pub new_block: usize,
    pub survivors: Survivors,
}

/// A subspace presented as a block space plus the embedding into the parent.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub space: BlockSpace,
    pub embedding: GenMap,
    pub parts: Vec<SubPart>,
}

fn build_subspace(parent: &Shape, d: &SetDescriptor) -> Result<Subspace, SubspaceError> {
    let mut kinds: Vec<BlockKind> = Vec::new();
    let mut parts: Vec<SubPart> = Vec::new();
    for (bi, _kind) in parent.blocks() {
        let b = &d.blocks[bi];
        let iso = b
            .isolated
            .to_setf()
            .ok_or(SubspaceError::NotRepresentable { block: bi })?;
        match (&iso, b.has_limit) {
            (SetF::Fin(s), false) if s.is_empty() => continue,
            (SetF::Fin(s), false) => {
                parts.push(SubPart {
                    old_block: bi,
                    new_block: kinds.len(),
                    survivors: Survivors::Listed(s.iter().copied().collect()),
                });
                kinds.push(BlockKind::Fin(s.len() as u32));
            }
            (SetF::CoFin(e), has_limit) => {
                parts.push(SubPart {
                    old_block: bi,
                    new_block: kinds.len(),
                    survivors: Survivors::Shifted(e.clone()),
                });
                kinds.push(if has_limit { BlockKind::CompactSeq } else { BlockKind::DiscreteSeq });
            }
            (SetF::Fin(_), true) => {
                // a limit with only finitely many isolated companions cannot
                // appear in an open or regular closed representable set; the
                // callers reject it before we get here
                unreachable!("finite germ at a limit survived validation")
            }
        }
    }
    let space = BlockSpace::new(Shape::new(kinds));
    let rules = parts
        .iter()
        .map(|part| match &part.survivors {
            Survivors::Listed(v) => BlockRule {
                exceptions: v
                    .iter()
                    .enumerate()
                    .map(|(ni, &oi)| (ni as u32, ExtPoint::at(part.old_block, oi)))
                    .collect(),
                tail: Tail::None,
            },
            Survivors::Shifted(removed) => {
                let shift = removed.len() as u32;
                let bound = removed.iter().max().map_or(0, |m| m + 1).saturating_sub(shift);
                let exceptions: BTreeMap<u32, ExtPoint> = (0..bound)
                    .map(|ni| {
                        (ni, ExtPoint::at(part.old_block, part.survivors.new_to_old(ni)))
                    })
                    .collect();
                BlockRule {
                    exceptions,
                    tail: Tail::Affine { block: part.old_block, stride: 1, offset: shift },
                }
            }
        })
        .collect();
    let embedding = GenMap { source: space.shape.clone(), target: parent.clone(), rules };
    Ok(Subspace { space, embedding, parts })
}

/// The open subspace carried by a representable open set. The embedding is
/// injective and open onto its image; a cofinite run of isolated points of a
/// compact block without its limit comes back as a discrete block, densely
/// embedded.
pub fn open_subspace(x: &BlockSpace, u: &SetDescriptor) -> Result<Subspace, SubspaceError> {
    if !u.is_open() {
        return Err(SubspaceError::NotOpen);
    }
    let s = build_subspace(&x.shape, u)?;
    debug_assert!(s.embedding.well_formed().is_ok());
    debug_assert!(s.embedding.validate().is_ok());
    Ok(s)
}

/// The subspace carried by a representable regular closed set, with a
/// closed embedding.
pub fn regular_closed_subspace(
    x: &BlockSpace,
    f: &SetDescriptor,
) -> Result<Subspace, SubspaceError> {
    if !f.is_regular_closed() {
        return Err(SubspaceError::NotRegularClosed);
    }
    let s = build_subspace(&x.shape, f)?;
    debug_assert!(s.embedding.well_formed().is_ok());
    debug_assert!(s.embedding.validate().is_ok());
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqset::Ap;
    use crate::shape::{BlockKind::*, Point};

    fn omega_space() -> BlockSpace {
        BlockSpace::new(Shape::new(vec![CompactSeq]))
    }

    #[test]
    fn whole_space_is_the_identity_subspace() {
        let x = omega_space();
        let u = SetDescriptor::full(&x.shape);
        let s = open_subspace(&x, &u).unwrap();
        assert_eq!(s.space.shape, x.shape);
        assert_eq!(s.embedding.normalize(), GenMap::identity(&x.shape).normalize());
    }

    #[test]
    fn naturals_part_of_omega_is_a_discrete_dense_subspace() {
        let x = omega_space();
        let mut u = SetDescriptor::empty(&x.shape);
        u.add_ap(0, Ap::new(1, 0));
        let s = open_subspace(&x, &u).unwrap();
        assert_eq!(s.space.shape, Shape::new(vec![DiscreteSeq]));
        assert!(s.embedding.is_dense_embedding());
        assert!(!s.embedding.is_closed_map());
        assert!(s.embedding.image_space().set_eq(&u));
    }

    #[test]
    fn cofinite_closed_chunk_of_omega_is_again_omega() {
        let x = omega_space();
        let mut f = SetDescriptor::empty(&x.shape);
        f.add_ap(0, Ap::new(1, 0));
        f.blocks[0].isolated.remove_point(0);
        f.add_point(Point::limit(0));
        let s = regular_closed_subspace(&x, &f).unwrap();
        assert_eq!(s.space.shape, Shape::new(vec![CompactSeq]));
        assert!(s.embedding.is_closed_embedding());
        assert_eq!(s.embedding.eval(&Point::at(0, 0)), ExtPoint::at(0, 1));
        assert_eq!(s.embedding.eval(&Point::limit(0)), ExtPoint::limit(0));
        assert!(s.embedding.image_space().set_eq(&f));
    }

    #[test]
    fn rejects_non_open_and_non_regular_closed_inputs() {
        let x = omega_space();
        // the limit alone is closed but not regular closed, and not open
        let mut d = SetDescriptor::empty(&x.shape);
        d.add_point(Point::limit(0));
        assert!(matches!(open_subspace(&x, &d), Err(SubspaceError::NotOpen)));
        assert!(matches!(regular_closed_subspace(&x, &d), Err(SubspaceError::NotRegularClosed)));
        // evens without the limit are open but not representable per block
        let mut e = SetDescriptor::empty(&x.shape);
        e.add_ap(0, Ap::new(2, 0));
        assert!(matches!(
            open_subspace(&x, &e),
            Err(SubspaceError::NotRepresentable { block: 0 })
        ));
    }

    #[test]
    fn finite_chunk_becomes_a_finite_block() {
        let x = BlockSpace::new(Shape::new(vec![CompactSeq, DiscreteSeq]));
        let mut u = SetDescriptor::empty(&x.shape);
        u.add_point(Point::at(0, 2));
        u.add_point(Point::at(0, 5));
        u.add_point(Point::at(1, 1));
        let s = open_subspace(&x, &u).unwrap();
        assert_eq!(s.space.shape, Shape::new(vec![Fin(2), Fin(1)]));
        assert_eq!(s.embedding.eval(&Point::at(0, 1)), ExtPoint::at(0, 5));
        assert_eq!(s.embedding.eval(&Point::at(1, 0)), ExtPoint::at(1, 1));
    }
}
