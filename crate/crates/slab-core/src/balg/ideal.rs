//! Representable ideals of the compact part of a block algebra.
//!
//! An ideal is stored as a product of per-block components, each either the
//! down-set of an element or the family of all finite subsets of a finite or
//! cofinite index set. This class is closed under pseudocomplement, meet and
//! join in the ideal frame, which is what the classification corollaries
//! (clopen ⇔ simple, regular open ⇔ normal, compact open ⇔ principal) need.

use super::{AlgError, BlockAlgebra, Elem, ElemBlock};
use crate::seqset::SetF;
use crate::shape::BlockKind;

/// Per-block component of a representable ideal, in canonical form:
///
/// * finite blocks: always `Down(Mask)`;
/// * compact-sequence blocks: `Down(Seq(_))`, or `FinOf(CoFin(_))` for the
///   ideal of all finite subsets of a cofinite set (the one shape that is
///   not a down-set there);
/// * discrete-sequence blocks: always `FinOf(_)` — finite subsets of a
///   finite set coincide with the down-set of that set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealBlock {
    Down(ElemBlock),
    FinOf(SetF),
}

/// A representable ideal of the designated ideal (compact part) of a block
/// algebra. Its members are exactly the ideal elements all of whose block
/// components pass the per-block membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepIdeal {
    pub blocks: Vec<IdealBlock>,
}

fn canon(kind: BlockKind, b: IdealBlock) -> IdealBlock {
    match (kind, b) {
        (BlockKind::CompactSeq, IdealBlock::FinOf(SetF::Fin(s))) => {
            IdealBlock::Down(ElemBlock::Seq(SetF::Fin(s)))
        }
        (BlockKind::DiscreteSeq, IdealBlock::Down(ElemBlock::Seq(s))) => match s {
            SetF::Fin(s) => IdealBlock::FinOf(SetF::Fin(s)),
            // the down-set of a cofinite element inside the finite-sets-only
            // part is the family of finite subsets of it
            SetF::CoFin(e) => IdealBlock::FinOf(SetF::CoFin(e)),
        },
        (_, b) => b,
    }
}

impl BlockAlgebra {
    /// The zero ideal `{0}`.
    pub fn zero_ideal(&self) -> RepIdeal {
        self.principal_ideal_unchecked(&self.bottom())
    }

    /// The whole designated ideal, as a representable ideal of itself.
    pub fn full_ideal(&self) -> RepIdeal {
        RepIdeal {
            blocks: self
                .shape
                .0
                .iter()
                .map(|k| match k {
                    BlockKind::Fin(n) => IdealBlock::Down(ElemBlock::Mask(super::mask_full(*n))),
                    BlockKind::CompactSeq => IdealBlock::Down(ElemBlock::Seq(SetF::full())),
                    BlockKind::DiscreteSeq => IdealBlock::FinOf(SetF::full()),
                })
                .collect(),
        }
    }

    /// Build an ideal from per-block components, normalizing to canonical form.
    pub fn ideal(&self, blocks: Vec<IdealBlock>) -> Result<RepIdeal, AlgError> {
        if blocks.len() != self.shape.len() {
            return Err(AlgError::ShapeMismatch { got: blocks.len(), want: self.shape.len() });
        }
        let mut out = Vec::with_capacity(blocks.len());
        for (i, (b, k)) in blocks.into_iter().zip(self.shape.0.iter()).enumerate() {
            match (&b, k) {
                (IdealBlock::Down(ElemBlock::Mask(m)), BlockKind::Fin(n)) => {
                    if m & !super::mask_full(*n) != 0 {
                        return Err(AlgError::BadBlockValue { block: i });
                    }
                }
                (IdealBlock::Down(ElemBlock::Seq(_)), BlockKind::CompactSeq | BlockKind::DiscreteSeq) => {}
                (IdealBlock::FinOf(_), BlockKind::CompactSeq | BlockKind::DiscreteSeq) => {}
                _ => return Err(AlgError::BadBlockValue { block: i }),
            }
            out.push(canon(*k, b));
        }
        Ok(RepIdeal { blocks: out })
    }

    /// `↓a ∩ I` for an arbitrary element `a`: the ideal of all compact
    /// elements below `a`. This is the inverse of the simple-ideal join map.
    pub fn ideal_below(&self, a: &Elem) -> RepIdeal {
        RepIdeal {
            blocks: a
                .blocks
                .iter()
                .zip(self.shape.0.iter())
                .map(|(b, k)| canon(*k, IdealBlock::Down(b.clone())))
                .collect(),
        }
    }

    fn principal_ideal_unchecked(&self, a: &Elem) -> RepIdeal {
        self.ideal_below(a)
    }

    /// The principal ideal `↓a` of the designated ideal. Errors if `a` is
    /// not itself compact.
    pub fn e_embed(&self, a: &Elem) -> Result<RepIdeal, AlgError> {
        for (i, (b, k)) in a.blocks.iter().zip(self.shape.0.iter()).enumerate() {
            if let (ElemBlock::Seq(s), BlockKind::DiscreteSeq) = (b, k) {
                if s.is_cofinite() {
                    return Err(AlgError::NotInIdeal { block: i });
                }
            }
        }
        Ok(self.ideal_below(a))
    }

    /// Ideal membership.
    pub fn ideal_contains(&self, j: &RepIdeal, a: &Elem) -> bool {
        if !self.in_ideal(a) {
            return false;
        }
        j.blocks.iter().zip(a.blocks.iter()).all(|(jb, ab)| match (jb, ab) {
            (IdealBlock::Down(ElemBlock::Mask(m)), ElemBlock::Mask(x)) => x & !m == 0,
            (IdealBlock::Down(ElemBlock::Seq(s)), ElemBlock::Seq(t)) => t.subset(s),
            (IdealBlock::FinOf(s), ElemBlock::Seq(t)) => match t {
                SetF::Fin(ts) => ts.iter().all(|i| s.contains(*i)),
                SetF::CoFin(_) => false,
            },
            _ => unreachable!("mixed block kinds"),
        })
    }

    /// Pseudocomplement in the ideal frame: `¬J = {a : a ∧ b = 0 for all b ∈ J}`.
    pub fn neg_ideal(&self, j: &RepIdeal) -> RepIdeal {
        let blocks = j
            .blocks
            .iter()
            .zip(self.shape.0.iter())
            .map(|(b, k)| {
                let nb = match (b, k) {
                    (IdealBlock::Down(ElemBlock::Mask(m)), BlockKind::Fin(n)) => {
                        IdealBlock::Down(ElemBlock::Mask(!m & super::mask_full(*n)))
                    }
                    (IdealBlock::Down(ElemBlock::Seq(SetF::Fin(s))), BlockKind::CompactSeq) => {
                        IdealBlock::Down(ElemBlock::Seq(SetF::CoFin(s.clone())))
                    }
                    (IdealBlock::Down(ElemBlock::Seq(SetF::CoFin(e))), BlockKind::CompactSeq) => {
                        IdealBlock::Down(ElemBlock::Seq(SetF::Fin(e.clone())))
                    }
                    // everything that kills all finite subsets of S avoids S
                    (IdealBlock::FinOf(s), BlockKind::CompactSeq) => {
                        let SetF::CoFin(e) = s else { unreachable!("canonical form") };
                        IdealBlock::Down(ElemBlock::Seq(SetF::Fin(e.clone())))
                    }
                    (IdealBlock::FinOf(s), BlockKind::DiscreteSeq) => {
                        IdealBlock::FinOf(s.complement())
                    }
                    _ => unreachable!("canonical form"),
                };
                canon(*k, nb)
            })
            .collect();
        RepIdeal { blocks }
    }

    /// Meet in the ideal frame (intersection of ideals).
    pub fn ideal_meet(&self, j: &RepIdeal, k: &RepIdeal) -> RepIdeal {
        let blocks = j
            .blocks
            .iter()
            .zip(k.blocks.iter())
            .zip(self.shape.0.iter())
            .map(|((x, y), kind)| canon(*kind, ideal_block_meet(x, y, *kind)))
            .collect();
        RepIdeal { blocks }
    }

    /// Join in the ideal frame: the ideal of all `b ∨ c` with `b ∈ J`, `c ∈ K`.
    pub fn ideal_join(&self, j: &RepIdeal, k: &RepIdeal) -> RepIdeal {
        let blocks = j
            .blocks
            .iter()
            .zip(k.blocks.iter())
            .zip(self.shape.0.iter())
            .map(|((x, y), kind)| canon(*kind, ideal_block_join(x, y, *kind)))
            .collect();
        RepIdeal { blocks }
    }

    /// Simple means complemented in the ideal frame: `J ∨ ¬J` is everything.
    pub fn is_simple_ideal(&self, j: &RepIdeal) -> bool {
        self.ideal_join(j, &self.neg_ideal(j)) == self.full_ideal()
    }

    /// Normal means a regular element of the frame: `¬¬J = J`.
    pub fn is_normal_ideal(&self, j: &RepIdeal) -> bool {
        self.neg_ideal(&self.neg_ideal(j)) == *j
    }

    /// Principal means `J = ↓a` for a single compact `a`.
    pub fn is_principal_ideal(&self, j: &RepIdeal) -> bool {
        self.principal_generator(j).is_some()
    }

    /// The generator when the ideal is principal.
    pub fn principal_generator(&self, j: &RepIdeal) -> Option<Elem> {
        let mut blocks = Vec::with_capacity(j.blocks.len());
        for (b, k) in j.blocks.iter().zip(self.shape.0.iter()) {
            match (b, k) {
                (IdealBlock::Down(e), _) => blocks.push(e.clone()),
                (IdealBlock::FinOf(SetF::Fin(s)), BlockKind::DiscreteSeq) => {
                    blocks.push(ElemBlock::Seq(SetF::Fin(s.clone())));
                }
                // finite subsets of a cofinite set have no largest member
                (IdealBlock::FinOf(SetF::CoFin(_)), _) => return None,
                _ => unreachable!("canonical form"),
            }
        }
        Some(Elem { blocks })
    }

    /// The join `⋁ J` taken in the full block algebra, for any representable
    /// ideal. Always exists for this class.
    pub fn sup_ideal(&self, j: &RepIdeal) -> Elem {
        let blocks = j
            .blocks
            .iter()
            .map(|b| match b {
                IdealBlock::Down(e) => e.clone(),
                IdealBlock::FinOf(SetF::Fin(s)) => ElemBlock::Seq(SetF::Fin(s.clone())),
                IdealBlock::FinOf(SetF::CoFin(e)) => ElemBlock::Seq(SetF::CoFin(e.clone())),
            })
            .collect();
        Elem { blocks }
    }

    /// The Boolean isomorphism from simple ideals to elements: `J ↦ ⋁ J`.
    /// Errors when `J` is not simple — then the sup exists but does not
    /// determine the ideal, so the map is not defined there.
    pub fn sigma_iso(&self, j: &RepIdeal) -> Result<Elem, AlgError> {
        for (i, (b, k)) in j.blocks.iter().zip(self.shape.0.iter()).enumerate() {
            if let (IdealBlock::FinOf(SetF::CoFin(_)), BlockKind::CompactSeq) = (b, k) {
                return Err(AlgError::NotSimple { block: i });
            }
        }
        Ok(self.sup_ideal(j))
    }

    /// Inverse of `sigma_iso`: the simple ideal of compact elements below `b`.
    pub fn sigma_inv(&self, b: &Elem) -> RepIdeal {
        self.ideal_below(b)
    }
}

fn seq_of(e: &ElemBlock) -> &SetF {
    match e {
        ElemBlock::Seq(s) => s,
        ElemBlock::Mask(_) => unreachable!("expected sequence block"),
    }
}

fn ideal_block_meet(x: &IdealBlock, y: &IdealBlock, kind: BlockKind) -> IdealBlock {
    use IdealBlock::*;
    match (x, y) {
        (Down(ElemBlock::Mask(m)), Down(ElemBlock::Mask(n))) => Down(ElemBlock::Mask(m & n)),
        (Down(a), Down(b)) => Down(ElemBlock::Seq(seq_of(a).intersect(seq_of(b)))),
        (Down(a), FinOf(s)) | (FinOf(s), Down(a)) => {
            // compact elements below a and finite inside S: finite subsets of
            // the isolated part of a intersected with S
            let iso = match (seq_of(a), kind) {
                (SetF::CoFin(e), _) => SetF::CoFin(e.clone()),
                (SetF::Fin(t), _) => SetF::Fin(t.clone()),
            };
            FinOf(iso.intersect(s))
        }
        (FinOf(s), FinOf(t)) => FinOf(s.intersect(t)),
    }
}

fn ideal_block_join(x: &IdealBlock, y: &IdealBlock, kind: BlockKind) -> IdealBlock {
    use IdealBlock::*;
    let _ = kind;
    match (x, y) {
        (Down(ElemBlock::Mask(m)), Down(ElemBlock::Mask(n))) => Down(ElemBlock::Mask(m | n)),
        (Down(a), Down(b)) => Down(ElemBlock::Seq(seq_of(a).union(seq_of(b)))),
        (FinOf(s), FinOf(t)) => FinOf(s.union(t)),
        (Down(a), FinOf(s)) | (FinOf(s), Down(a)) => match seq_of(a) {
            // joins of finite sets with subsets of t stay finite
            SetF::Fin(t) => FinOf(s.union(&SetF::Fin(t.clone()))),
            // b ∨ c for b ≤ cofin(e), c a finite subset of S reaches every
            // element below cofin(e ∖ S)
            SetF::CoFin(e) => {
                let trimmed: crate::seqset::IdxSet =
                    e.iter().copied().filter(|i| !s.contains(*i)).collect();
                Down(ElemBlock::Seq(SetF::CoFin(trimmed)))
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{BlockKind::*, Shape};

    fn alg(blocks: Vec<BlockKind>) -> BlockAlgebra {
        BlockAlgebra::new(Shape::new(blocks))
    }

    #[test]
    fn principal_ideals_of_finite_blocks_are_simple() {
        let a = alg(vec![Fin(4), Fin(2)]);
        let e = a.elem(vec![ElemBlock::Mask(0b0110), ElemBlock::Mask(0b01)]).unwrap();
        let j = a.e_embed(&e).unwrap();
        assert!(a.is_simple_ideal(&j));
        assert!(a.is_principal_ideal(&j));
        assert_eq!(a.sigma_iso(&j).unwrap(), e);
    }

    #[test]
    fn finite_subsets_of_everything_is_not_simple_on_compact_block() {
        let a = alg(vec![CompactSeq]);
        let j = a.ideal(vec![IdealBlock::FinOf(SetF::full())]).unwrap();
        assert!(!a.is_simple_ideal(&j));
        // its pseudocomplement is zero and the join misses the cofinite elements
        let n = a.neg_ideal(&j);
        assert_eq!(n, a.zero_ideal());
        assert!(a.sigma_iso(&j).is_err());
    }

    #[test]
    fn zero_ideal_is_simple() {
        let a = alg(vec![CompactSeq, DiscreteSeq]);
        let z = a.zero_ideal();
        assert!(a.is_simple_ideal(&z));
        assert_eq!(a.neg_ideal(&z), a.full_ideal());
        assert!(a.is_zero(&a.sigma_iso(&z).unwrap()));
    }

    #[test]
    fn neg_examples() {
        let a = alg(vec![DiscreteSeq]);
        // finite subsets of a cofinite set: normal on a discrete block
        let j = a.ideal(vec![IdealBlock::FinOf(SetF::cofin([0, 1]))]).unwrap();
        assert!(a.is_normal_ideal(&j));
        assert!(a.is_simple_ideal(&j));
        assert!(!a.is_principal_ideal(&j));

        let c = alg(vec![CompactSeq]);
        let k = c.ideal(vec![IdealBlock::FinOf(SetF::cofin([2]))]).unwrap();
        assert!(!c.is_normal_ideal(&k));
        assert!(!c.is_simple_ideal(&k));
        // double pseudocomplement closes up to the full down-set
        let nn = c.neg_ideal(&c.neg_ideal(&k));
        assert_eq!(nn, c.ideal(vec![IdealBlock::Down(ElemBlock::Seq(SetF::cofin([2])))]).unwrap());
    }

    #[test]
    fn sigma_and_e_are_mutually_inverse() {
        let a = alg(vec![Fin(3), CompactSeq, DiscreteSeq]);
        let e = a
            .elem(vec![
                ElemBlock::Mask(0b011),
                ElemBlock::Seq(SetF::cofin([4])),
                ElemBlock::Seq(SetF::fin([1, 2])),
            ])
            .unwrap();
        let j = a.e_embed(&e).unwrap();
        assert_eq!(a.sigma_iso(&j).unwrap(), e);
        // sigma_inv of an arbitrary element is simple and sups back to it
        let b = a
            .elem(vec![
                ElemBlock::Mask(0b100),
                ElemBlock::Seq(SetF::fin([0])),
                ElemBlock::Seq(SetF::cofin([3])),
            ])
            .unwrap();
        let k = a.sigma_inv(&b);
        assert!(a.is_simple_ideal(&k));
        assert_eq!(a.sigma_iso(&k).unwrap(), b);
    }

    #[test]
    fn ideal_lattice_and_membership() {
        let a = alg(vec![CompactSeq]);
        let j = a.ideal(vec![IdealBlock::FinOf(SetF::cofin([]))]).unwrap();
        let d = a.ideal(vec![IdealBlock::Down(ElemBlock::Seq(SetF::cofin([0])))]).unwrap();
        assert!(a.ideal_contains(&j, &a.from_block_set(0, SetF::fin([5]))));
        assert!(!a.ideal_contains(&j, &a.from_block_set(0, SetF::cofin([5]))));
        assert!(a.ideal_contains(&d, &a.from_block_set(0, SetF::cofin([0, 1]))));
        // join of the finite-sets ideal with a cofinite down-set is a down-set
        let jd = a.ideal_join(&j, &d);
        assert_eq!(jd, a.full_ideal());
        let m = a.ideal_meet(&j, &d);
        assert!(a.ideal_contains(&m, &a.from_block_set(0, SetF::fin([3]))));
        assert!(!a.ideal_contains(&m, &a.from_block_set(0, SetF::fin([0]))));
    }
}
