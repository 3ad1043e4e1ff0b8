//! Boolean block algebras and their designated ideals.
//!
//! A [`BlockAlgebra`] is the product, over the blocks of a [`Shape`], of:
//! the full power set of a finite block, and the finite/cofinite algebra of
//! a sequence block. The designated ideal takes the whole block algebra on
//! finite and compact-sequence blocks, and only the finite sets on discrete
//! sequence blocks. Every element is a per-block finite/cofinite descriptor
//! ([`Elem`]), and all operations are closed over that class.

mod ideal;
mod relative;

pub use ideal::{IdealBlock, RepIdeal};
pub use relative::{RelPart, RelativeAlgebra, Survivors};

use std::fmt;

use crate::seqset::{SeqSet, SetF};
use crate::shape::{AtomFamily, BlockKind, ExtPoint, Point, PointIndex, Shape};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgError {
    #[error("value for block {block} does not fit the block kind")]
    BadBlockValue { block: usize },
    #[error("element has {got} blocks, algebra has {want}")]
    ShapeMismatch { got: usize, want: usize },
    #[error("element is not in the designated ideal (discrete block {block} is cofinite)")]
    NotInIdeal { block: usize },
    #[error("ideal is not simple (block {block} has no complement)")]
    NotSimple { block: usize },
}

/// Per-block component of an element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ElemBlock {
    /// Subset of a finite block, one bit per atom.
    Mask(u64),
    /// Finite or cofinite set of isolated indices. On a `CompactSeq` block
    /// the element contains the limit point exactly when it is cofinite.
    Seq(SetF),
}

impl ElemBlock {
    pub fn seq(&self) -> Option<&SetF> {
        match self {
            ElemBlock::Seq(s) => Some(s),
            ElemBlock::Mask(_) => None,
        }
    }
}

/// An element of a block algebra; equivalently a clopen set of the dual space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Elem {
    pub blocks: Vec<ElemBlock>,
}

impl Elem {
    pub fn block(&self, i: usize) -> &ElemBlock {
        &self.blocks[i]
    }
}

fn mask_full(n: u32) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// The Boolean block algebra over a shape, together with its designated ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockAlgebra {
    pub shape: Shape,
}

impl BlockAlgebra {
    pub fn new(shape: Shape) -> Self {
        BlockAlgebra { shape }
    }

    pub fn len(&self) -> usize {
        self.shape.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shape.is_empty()
    }

    /// Validate and build an element from per-block components.
    pub fn elem(&self, blocks: Vec<ElemBlock>) -> Result<Elem, AlgError> {
        if blocks.len() != self.shape.len() {
            return Err(AlgError::ShapeMismatch { got: blocks.len(), want: self.shape.len() });
        }
        for (i, (b, kind)) in blocks.iter().zip(self.shape.0.iter()).enumerate() {
            match (b, kind) {
                (ElemBlock::Mask(m), BlockKind::Fin(n)) => {
                    if *m & !mask_full(*n) != 0 {
                        return Err(AlgError::BadBlockValue { block: i });
                    }
                }
                (ElemBlock::Seq(_), BlockKind::CompactSeq | BlockKind::DiscreteSeq) => {}
                _ => return Err(AlgError::BadBlockValue { block: i }),
            }
        }
        Ok(Elem { blocks })
    }

    pub fn bottom(&self) -> Elem {
        Elem {
            blocks: self
                .shape
                .0
                .iter()
                .map(|k| match k {
                    BlockKind::Fin(_) => ElemBlock::Mask(0),
                    _ => ElemBlock::Seq(SetF::empty()),
                })
                .collect(),
        }
    }

    pub fn top(&self) -> Elem {
        Elem {
            blocks: self
                .shape
                .0
                .iter()
                .map(|k| match k {
                    BlockKind::Fin(n) => ElemBlock::Mask(mask_full(*n)),
                    _ => ElemBlock::Seq(SetF::full()),
                })
                .collect(),
        }
    }

    fn zip_blocks(
        &self,
        a: &Elem,
        b: &Elem,
        f: impl Fn(&ElemBlock, &ElemBlock) -> ElemBlock,
    ) -> Elem {
        assert_eq!(a.blocks.len(), b.blocks.len(), "elements from different algebras");
        assert_eq!(a.blocks.len(), self.shape.len(), "element does not match algebra");
        Elem {
            blocks: a.blocks.iter().zip(b.blocks.iter()).map(|(x, y)| f(x, y)).collect(),
        }
    }

    pub fn meet(&self, a: &Elem, b: &Elem) -> Elem {
        self.zip_blocks(a, b, |x, y| match (x, y) {
            (ElemBlock::Mask(m), ElemBlock::Mask(n)) => ElemBlock::Mask(m & n),
            (ElemBlock::Seq(s), ElemBlock::Seq(t)) => ElemBlock::Seq(s.intersect(t)),
            _ => unreachable!("mixed block kinds"),
        })
    }

    pub fn join(&self, a: &Elem, b: &Elem) -> Elem {
        self.zip_blocks(a, b, |x, y| match (x, y) {
            (ElemBlock::Mask(m), ElemBlock::Mask(n)) => ElemBlock::Mask(m | n),
            (ElemBlock::Seq(s), ElemBlock::Seq(t)) => ElemBlock::Seq(s.union(t)),
            _ => unreachable!("mixed block kinds"),
        })
    }

    pub fn complement(&self, a: &Elem) -> Elem {
        assert_eq!(a.blocks.len(), self.shape.len());
        Elem {
            blocks: a
                .blocks
                .iter()
                .zip(self.shape.0.iter())
                .map(|(x, k)| match (x, k) {
                    (ElemBlock::Mask(m), BlockKind::Fin(n)) => ElemBlock::Mask(!m & mask_full(*n)),
                    (ElemBlock::Seq(s), _) => ElemBlock::Seq(s.complement()),
                    _ => unreachable!("mixed block kinds"),
                })
                .collect(),
        }
    }

    pub fn diff(&self, a: &Elem, b: &Elem) -> Elem {
        self.meet(a, &self.complement(b))
    }

    pub fn leq(&self, a: &Elem, b: &Elem) -> bool {
        a.blocks.iter().zip(b.blocks.iter()).all(|(x, y)| match (x, y) {
            (ElemBlock::Mask(m), ElemBlock::Mask(n)) => m & !n == 0,
            (ElemBlock::Seq(s), ElemBlock::Seq(t)) => s.subset(t),
            _ => unreachable!("mixed block kinds"),
        })
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.blocks.iter().all(|x| match x {
            ElemBlock::Mask(m) => *m == 0,
            ElemBlock::Seq(s) => s.is_empty(),
        })
    }

    pub fn is_top(&self, a: &Elem) -> bool {
        self.is_zero(&self.complement(a))
    }

    pub fn disjoint(&self, a: &Elem, b: &Elem) -> bool {
        self.is_zero(&self.meet(a, b))
    }

    /// Is the element in the designated ideal (a compact clopen of the dual
    /// space)? True exactly when every discrete-sequence component is finite.
    pub fn in_ideal(&self, a: &Elem) -> bool {
        a.blocks.iter().zip(self.shape.0.iter()).all(|(x, k)| match (x, k) {
            (ElemBlock::Seq(s), BlockKind::DiscreteSeq) => !s.is_cofinite(),
            _ => true,
        })
    }

    pub fn contains_point(&self, a: &Elem, p: &Point) -> bool {
        match (&a.blocks[p.block], p.index) {
            (ElemBlock::Mask(m), PointIndex::At(i)) => m >> i & 1 == 1,
            (ElemBlock::Seq(s), PointIndex::At(i)) => s.contains(i),
            (ElemBlock::Seq(s), PointIndex::Limit) => {
                debug_assert!(matches!(self.shape.block(p.block), BlockKind::CompactSeq));
                s.is_cofinite()
            }
            (ElemBlock::Mask(_), PointIndex::Limit) => unreachable!("limit in finite block"),
        }
    }

    /// Membership for extended points. The virtual limit of a discrete block
    /// lies in `a` exactly when `a` is cofinite on that block — evaluation at
    /// the cofinite ultrafilter.
    pub fn contains_ext(&self, a: &Elem, p: &ExtPoint) -> bool {
        match p {
            ExtPoint::Real(q) => self.contains_point(a, q),
            ExtPoint::VirtualLimit(b) => match &a.blocks[*b] {
                ElemBlock::Seq(s) => s.is_cofinite(),
                ElemBlock::Mask(_) => unreachable!("virtual limit of a finite block"),
            },
        }
    }

    /// The atom at an isolated point.
    pub fn atom(&self, p: &Point) -> Elem {
        let mut e = self.bottom();
        match p.index {
            PointIndex::At(i) => match &mut e.blocks[p.block] {
                ElemBlock::Mask(m) => *m |= 1 << i,
                ElemBlock::Seq(s) => *s = SetF::fin([i]),
            },
            PointIndex::Limit => panic!("the limit point is not an atom"),
        }
        e
    }

    /// Element with a single block filled with the given set.
    pub fn from_block_set(&self, block: usize, s: SetF) -> Elem {
        let mut e = self.bottom();
        match &mut e.blocks[block] {
            ElemBlock::Seq(t) => *t = s,
            ElemBlock::Mask(m) => {
                let SetF::Fin(set) = s else { panic!("cofinite set in finite block") };
                for i in set {
                    *m |= 1 << i;
                }
            }
        }
        e
    }

    /// All atoms below `a`, as finitely many points plus uniform tails.
    pub fn atoms_below(&self, a: &Elem) -> Vec<AtomFamily> {
        let mut out = Vec::new();
        for (bi, b) in a.blocks.iter().enumerate() {
            match b {
                ElemBlock::Mask(m) => {
                    for i in 0..64 {
                        if m >> i & 1 == 1 {
                            out.push(AtomFamily::At(Point::at(bi, i)));
                        }
                    }
                }
                ElemBlock::Seq(SetF::Fin(s)) => {
                    for &i in s {
                        out.push(AtomFamily::At(Point::at(bi, i)));
                    }
                }
                ElemBlock::Seq(SetF::CoFin(e)) => {
                    let start = e.iter().max().map_or(0, |m| m + 1);
                    for i in 0..start {
                        if !e.contains(&i) {
                            out.push(AtomFamily::At(Point::at(bi, i)));
                        }
                    }
                    out.push(AtomFamily::Tail { block: bi, start });
                }
            }
        }
        out
    }

    /// Some atom below `a`, unless `a = 0`.
    pub fn witness_atom(&self, a: &Elem) -> Option<Point> {
        self.atoms_below(a).first().map(|f| f.witness())
    }

    /// Complete iff there is no sequence block: a family of singletons of a
    /// sequence block whose index set is neither finite nor cofinite has no
    /// join in the finite/cofinite algebra.
    pub fn is_complete_algebra(&self) -> bool {
        !self.shape.0.iter().any(|k| k.is_seq())
    }

    /// A family of singletons with no join, if one exists.
    pub fn incompleteness_witness(&self) -> Option<SingletonFamily> {
        self.shape
            .0
            .iter()
            .position(|k| k.is_seq())
            .map(|block| SingletonFamily { block, indices: SeqSet::single_ap(crate::seqset::Ap::new(2, 0)) })
    }

    /// Join of the singleton family, when it exists. The join exists exactly
    /// when the index set is finite or cofinite; for a cofinite set on a
    /// compact-sequence block the join picks up the limit point.
    pub fn sup_singletons(&self, fam: &SingletonFamily) -> Option<Elem> {
        match self.shape.block(fam.block) {
            BlockKind::Fin(_) => {
                let bits: Vec<u32> = fam.indices.members_below(64);
                let mut e = self.bottom();
                if let ElemBlock::Mask(m) = &mut e.blocks[fam.block] {
                    for i in bits {
                        *m |= 1 << i;
                    }
                }
                Some(e)
            }
            BlockKind::CompactSeq | BlockKind::DiscreteSeq => {
                let s = fam.indices.to_setf()?;
                Some(self.from_block_set(fam.block, s))
            }
        }
    }

    /// Verify (on a sampled cofinal chain of candidate bounds) that a
    /// non-representable singleton family really has no join: below every
    /// upper bound there is a strictly smaller upper bound.
    pub fn no_sup_witnessed(&self, fam: &SingletonFamily) -> bool {
        if self.sup_singletons(fam).is_some() {
            return false;
        }
        // upper bounds are cofinite supersets; dropping one more point of the
        // complement always yields a smaller one
        let comp_member = (0..1000).find(|i| !fam.indices.contains(*i));
        comp_member.is_some()
    }
}

/// The family `{ {i} : i ∈ indices }` of singletons of one block.
#[derive(Debug, Clone)]
pub struct SingletonFamily {
    pub block: usize,
    pub indices: SeqSet,
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            match b {
                ElemBlock::Mask(m) => {
                    write!(f, "mask")?;
                    write_idx_list(f, (0..64).filter(|i| m >> i & 1 == 1))?;
                }
                ElemBlock::Seq(SetF::Fin(s)) => {
                    write!(f, "fin")?;
                    write_idx_list(f, s.iter().copied())?;
                }
                ElemBlock::Seq(SetF::CoFin(e)) => {
                    write!(f, "cofin")?;
                    write_idx_list(f, e.iter().copied())?;
                }
            }
        }
        write!(f, "}}")
    }
}

fn write_idx_list(f: &mut fmt::Formatter<'_>, iter: impl Iterator<Item = u32>) -> fmt::Result {
    write!(f, "{{")?;
    for (i, v) in iter.enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{v}")?;
    }
    write!(f, "}}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::BlockKind::*;

    fn alg(blocks: Vec<BlockKind>) -> BlockAlgebra {
        BlockAlgebra::new(Shape::new(blocks))
    }

    #[test]
    fn lattice_basics_on_seq_block() {
        let a = alg(vec![CompactSeq]);
        let top = a.top();
        let f3 = a.from_block_set(0, SetF::fin([3]));
        assert_eq!(a.meet(&top, &f3), f3);
        let f01 = a.from_block_set(0, SetF::fin([0, 1]));
        assert_eq!(a.complement(&f01), a.from_block_set(0, SetF::cofin([0, 1])));
        let c0 = a.from_block_set(0, SetF::cofin([0]));
        let f0 = a.from_block_set(0, SetF::fin([0]));
        assert_eq!(a.join(&f0, &c0), top);
    }

    #[test]
    fn ideal_membership() {
        let a = alg(vec![DiscreteSeq]);
        assert!(!a.in_ideal(&a.top()));
        assert!(a.in_ideal(&a.from_block_set(0, SetF::fin([0, 7]))));

        let b = alg(vec![Fin(3), Fin(2)]);
        assert!(b.in_ideal(&b.top()));

        let c = alg(vec![CompactSeq]);
        assert!(c.in_ideal(&c.from_block_set(0, SetF::cofin([5]))));
    }

    #[test]
    fn atoms_and_masks() {
        let a = alg(vec![Fin(3), CompactSeq]);
        let e = a.elem(vec![ElemBlock::Mask(0b101), ElemBlock::Seq(SetF::cofin([1, 3]))]).unwrap();
        let atoms = a.atoms_below(&e);
        assert!(atoms.contains(&AtomFamily::At(Point::at(0, 0))));
        assert!(atoms.contains(&AtomFamily::At(Point::at(0, 2))));
        assert!(atoms.contains(&AtomFamily::Tail { block: 1, start: 4 }));
        assert!(a.contains_point(&e, &Point::limit(1)));
        assert!(!a.contains_point(&e, &Point::at(1, 3)));
        // every nonzero element dominates an atom
        assert!(a.witness_atom(&e).is_some());
    }

    #[test]
    fn completeness() {
        assert!(alg(vec![Fin(4), Fin(1)]).is_complete_algebra());
        assert!(alg(vec![]).is_complete_algebra());
        let c = alg(vec![CompactSeq]);
        assert!(!c.is_complete_algebra());
        let fam = c.incompleteness_witness().unwrap();
        assert!(c.sup_singletons(&fam).is_none());
        assert!(c.no_sup_witnessed(&fam));
    }

    #[test]
    fn sup_of_singletons() {
        let c = alg(vec![CompactSeq]);
        let all = SingletonFamily { block: 0, indices: SeqSet::from_setf(&SetF::full()) };
        // join of all isolated singletons is the whole block, limit included
        assert_eq!(c.sup_singletons(&all).unwrap(), c.top());
        let fin = SingletonFamily { block: 0, indices: SeqSet::from_points([0, 2]) };
        assert_eq!(c.sup_singletons(&fin).unwrap(), c.from_block_set(0, SetF::fin([0, 2])));
    }
}
