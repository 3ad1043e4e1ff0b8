//! Relative algebras `A|a` re-presented as block algebras.
//!
//! `A|a` is the down-set of `a` with meets and joins inherited and
//! complements taken relative to `a`. Re-presenting it as a block algebra
//! needs a deterministic reindexing: surviving indices are enumerated in
//! ascending order, finite survivor sets of sequence blocks become finite
//! blocks, cofinite survivor sets keep their block kind with a shift, and
//! empty components are dropped. The translation is recorded so duality
//! round trips stay comparable.

use super::{BlockAlgebra, Elem, ElemBlock};
use crate::seqset::{IdxSet, SetF};
use crate::shape::{BlockKind, Shape};

/// How the surviving part of one old block is indexed in the new algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Survivors {
    /// Ascending list of old indices; the new block is finite.
    Listed(Vec<u32>),
    /// Old sequence block kept as a sequence block; the given old indices are
    /// removed and the rest renumbered ascending.
    Shifted(IdxSet),
}

impl Survivors {
    pub fn new_to_old(&self, i: u32) -> u32 {
        match self {
            Survivors::Listed(v) => v[i as usize],
            Survivors::Shifted(removed) => {
                // the (i+1)-th natural number not in `removed`
                let mut old = i;
                for &r in removed.iter() {
                    if r <= old {
                        old += 1;
                    } else {
                        break;
                    }
                }
                old
            }
        }
    }

    pub fn old_to_new(&self, old: u32) -> Option<u32> {
        match self {
            Survivors::Listed(v) => v.binary_search(&old).ok().map(|i| i as u32),
            Survivors::Shifted(removed) => {
                if removed.contains(&old) {
                    return None;
                }
                Some(old - removed.iter().filter(|&&r| r < old).count() as u32)
            }
        }
    }
}

/// Translation entry: one surviving old block and its new presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelPart {
    pub old_block: usize,
    pub new_block: usize,
    pub survivors: Survivors,
}

/// The result of restricting a block algebra to `↓a`.
#[derive(Debug, Clone)]
pub struct RelativeAlgebra {
    pub algebra: BlockAlgebra,
    /// The element the parent algebra was restricted to.
    pub cap: Elem,
    pub parts: Vec<RelPart>,
}

impl BlockAlgebra {
    /// Restrict to `↓a`, renormalizing into a block algebra. The natural
    /// epimorphism `x ↦ x ∧ a` is available as [`RelativeAlgebra::project`].
    pub fn relative_algebra(&self, a: &Elem) -> RelativeAlgebra {
        let mut kinds = Vec::new();
        let mut parts = Vec::new();
        for (bi, (blk, kind)) in a.blocks.iter().zip(self.shape.0.iter()).enumerate() {
            match (blk, kind) {
                (ElemBlock::Mask(m), BlockKind::Fin(_)) => {
                    let bits: Vec<u32> = (0..64).filter(|i| m >> i & 1 == 1).collect();
                    if bits.is_empty() {
                        continue;
                    }
                    parts.push(RelPart {
                        old_block: bi,
                        new_block: kinds.len(),
                        survivors: Survivors::Listed(bits.clone()),
                    });
                    kinds.push(BlockKind::Fin(bits.len() as u32));
                }
                (ElemBlock::Seq(SetF::Fin(s)), _) => {
                    if s.is_empty() {
                        continue;
                    }
                    let bits: Vec<u32> = s.iter().copied().collect();
                    parts.push(RelPart {
                        old_block: bi,
                        new_block: kinds.len(),
                        survivors: Survivors::Listed(bits.clone()),
                    });
                    kinds.push(BlockKind::Fin(bits.len() as u32));
                }
                (ElemBlock::Seq(SetF::CoFin(e)), kind) => {
                    parts.push(RelPart {
                        old_block: bi,
                        new_block: kinds.len(),
                        survivors: Survivors::Shifted(e.clone()),
                    });
                    kinds.push(*kind);
                }
                _ => unreachable!("mixed block kinds"),
            }
        }
        RelativeAlgebra {
            algebra: BlockAlgebra::new(Shape::new(kinds)),
            cap: a.clone(),
            parts,
        }
    }
}

impl RelativeAlgebra {
    /// The natural epimorphism `x ↦ x ∧ a`, reindexed into the new algebra.
    pub fn project(&self, parent: &BlockAlgebra, x: &Elem) -> Elem {
        let capped = parent.meet(x, &self.cap);
        let mut blocks = vec![ElemBlock::Mask(0); self.algebra.len()];
        for part in &self.parts {
            let old = &capped.blocks[part.old_block];
            blocks[part.new_block] = match (&part.survivors, old, self.algebra.shape.block(part.new_block)) {
                (Survivors::Listed(v), ElemBlock::Mask(m), _) => {
                    let mut out = 0u64;
                    for (ni, &oi) in v.iter().enumerate() {
                        if m >> oi & 1 == 1 {
                            out |= 1 << ni;
                        }
                    }
                    ElemBlock::Mask(out)
                }
                (Survivors::Listed(v), ElemBlock::Seq(s), _) => {
                    let mut out = 0u64;
                    for (ni, &oi) in v.iter().enumerate() {
                        if s.contains(oi) {
                            out |= 1 << ni;
                        }
                    }
                    ElemBlock::Mask(out)
                }
                (Survivors::Shifted(_), ElemBlock::Seq(SetF::Fin(s)), _) => ElemBlock::Seq(SetF::Fin(
                    s.iter().filter_map(|&i| part.survivors.old_to_new(i)).collect(),
                )),
                (Survivors::Shifted(removed), ElemBlock::Seq(SetF::CoFin(e)), _) => {
                    // excluded indices that survive, renumbered
                    ElemBlock::Seq(SetF::CoFin(
                        e.iter()
                            .filter(|i| !removed.contains(i))
                            .filter_map(|&i| part.survivors.old_to_new(i))
                            .collect(),
                    ))
                }
                _ => unreachable!("mixed block kinds"),
            };
        }
        Elem { blocks }
    }

    /// Include an element of the relative algebra back into the parent.
    pub fn include(&self, parent: &BlockAlgebra, y: &Elem) -> Elem {
        let mut out = parent.bottom();
        for part in &self.parts {
            let newb = &y.blocks[part.new_block];
            let oldb = &mut out.blocks[part.old_block];
            match (newb, &part.survivors) {
                (ElemBlock::Mask(m), Survivors::Listed(v)) => {
                    for (ni, &oi) in v.iter().enumerate() {
                        if m >> ni & 1 == 1 {
                            match oldb {
                                ElemBlock::Mask(om) => *om |= 1 << oi,
                                ElemBlock::Seq(s) => {
                                    let mut t = s.clone();
                                    t = t.union(&SetF::fin([oi]));
                                    *s = t;
                                }
                            }
                        }
                    }
                }
                (ElemBlock::Seq(SetF::Fin(s)), Survivors::Shifted(_)) => {
                    let mapped: IdxSet = s.iter().map(|&i| part.survivors.new_to_old(i)).collect();
                    if let ElemBlock::Seq(t) = oldb {
                        *t = t.union(&SetF::Fin(mapped));
                    }
                }
                (ElemBlock::Seq(SetF::CoFin(e)), Survivors::Shifted(removed)) => {
                    let mut excl: IdxSet = removed.clone();
                    excl.extend(e.iter().map(|&i| part.survivors.new_to_old(i)));
                    if let ElemBlock::Seq(t) = oldb {
                        *t = t.union(&SetF::CoFin(excl));
                    }
                }
                _ => unreachable!("translation shape mismatch"),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::BlockKind::*;

    #[test]
    fn restrict_to_top_is_identity_shape() {
        let a = BlockAlgebra::new(Shape::new(vec![Fin(3), CompactSeq, DiscreteSeq]));
        let r = a.relative_algebra(&a.top());
        assert_eq!(r.algebra.shape, a.shape);
        let e = a
            .elem(vec![
                ElemBlock::Mask(0b101),
                ElemBlock::Seq(SetF::cofin([2])),
                ElemBlock::Seq(SetF::fin([0])),
            ])
            .unwrap();
        assert_eq!(r.project(&a, &e), e);
        assert_eq!(r.include(&a, &e), e);
    }

    #[test]
    fn finite_clopen_chunk_of_a_sequence_is_a_finite_block() {
        let a = BlockAlgebra::new(Shape::new(vec![CompactSeq]));
        let cap = a.from_block_set(0, SetF::fin([2, 5]));
        let r = a.relative_algebra(&cap);
        assert_eq!(r.algebra.shape, Shape::new(vec![Fin(2)]));
        let x = a.from_block_set(0, SetF::cofin([2]));
        // x ∧ cap = {5}, which is the second survivor
        assert_eq!(r.project(&a, &x), r.algebra.elem(vec![ElemBlock::Mask(0b10)]).unwrap());
    }

    #[test]
    fn cofinite_chunk_keeps_the_block_kind_with_a_shift() {
        let a = BlockAlgebra::new(Shape::new(vec![CompactSeq]));
        let cap = a.from_block_set(0, SetF::cofin([0]));
        let r = a.relative_algebra(&cap);
        assert_eq!(r.algebra.shape, Shape::new(vec![CompactSeq]));
        let surv = &r.parts[0].survivors;
        assert_eq!(surv.new_to_old(0), 1);
        assert_eq!(surv.old_to_new(3), Some(2));
        assert_eq!(surv.old_to_new(0), None);
        // projection renumbers: {1,3} ↦ {0,2}
        let x = a.from_block_set(0, SetF::fin([1, 3]));
        assert_eq!(r.project(&a, &x), r.algebra.from_block_set(0, SetF::fin([0, 2])));
        // inclusion round-trips on elements below the cap
        let y = r.algebra.from_block_set(0, SetF::cofin([4]));
        let back = r.include(&a, &y);
        assert_eq!(r.project(&a, &back), y);
    }

    #[test]
    fn empty_components_are_dropped() {
        let a = BlockAlgebra::new(Shape::new(vec![Fin(2), DiscreteSeq]));
        let cap = a.elem(vec![ElemBlock::Mask(0), ElemBlock::Seq(SetF::fin([7]))]).unwrap();
        let r = a.relative_algebra(&cap);
        assert_eq!(r.algebra.shape, Shape::new(vec![Fin(1)]));
        assert_eq!(r.parts.len(), 1);
        assert_eq!(r.parts[0].old_block, 1);
    }
}
