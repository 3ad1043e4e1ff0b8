//! Exact descriptors for point sets arising as images of clopen sets, and
//! the interior/closure calculus on them.

use super::{BlockSpace, GenMap, Tail};
use crate::balg::{BlockAlgebra, Elem, ElemBlock};
use crate::seqset::{Ap, SeqSet, SetF};
use crate::shape::{BlockKind, ExtPoint, Point, PointIndex, Shape};

/// One block's worth of a describable point set: explicit points and
/// progressions among the isolated indices, plus the limit point when the
/// block is a compact sequence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DescBlock {
    pub isolated: SeqSet,
    pub has_limit: bool,
}

/// A decidable subset of a block space: finite sets, finite unions of
/// arithmetic progressions, and limit points. Closed under images of clopen
/// sets along generalized maps and under union; interior, closure and least
/// clopen superset are computed exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetDescriptor {
    pub shape: Shape,
    pub blocks: Vec<DescBlock>,
}

impl SetDescriptor {
    pub fn empty(shape: &Shape) -> Self {
        SetDescriptor {
            shape: shape.clone(),
            blocks: vec![DescBlock::default(); shape.len()],
        }
    }

    pub fn full(shape: &Shape) -> Self {
        let mut d = SetDescriptor::empty(shape);
        for (i, k) in shape.blocks() {
            match k {
                BlockKind::Fin(n) => {
                    for j in 0..n {
                        d.blocks[i].isolated.add_point(j);
                    }
                }
                BlockKind::CompactSeq => {
                    d.blocks[i].isolated.add_ap(Ap::new(1, 0));
                    d.blocks[i].has_limit = true;
                }
                BlockKind::DiscreteSeq => {
                    d.blocks[i].isolated.add_ap(Ap::new(1, 0));
                }
            }
        }
        d
    }

    pub fn add_point(&mut self, p: Point) {
        match p.index {
            PointIndex::At(i) => self.blocks[p.block].isolated.add_point(i),
            PointIndex::Limit => self.blocks[p.block].has_limit = true,
        }
    }

    pub fn add_ap(&mut self, block: usize, ap: Ap) {
        self.blocks[block].isolated.add_ap(ap);
    }

    pub fn union_with(&mut self, other: &SetDescriptor) {
        for (mine, theirs) in self.blocks.iter_mut().zip(other.blocks.iter()) {
            mine.isolated.union_with(&theirs.isolated);
            mine.has_limit |= theirs.has_limit;
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p.index {
            PointIndex::At(i) => self.blocks[p.block].isolated.contains(i),
            PointIndex::Limit => self.blocks[p.block].has_limit,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|b| b.isolated.is_empty() && !b.has_limit)
    }

    /// Extensional equality of the described point sets.
    pub fn set_eq(&self, other: &SetDescriptor) -> bool {
        self.shape == other.shape
            && self
                .blocks
                .iter()
                .zip(other.blocks.iter())
                .all(|(a, b)| a.has_limit == b.has_limit && a.isolated.set_eq(&b.isolated))
    }

    /// Clopen sets convert exactly.
    pub fn from_elem(shape: &Shape, e: &Elem) -> SetDescriptor {
        let mut d = SetDescriptor::empty(shape);
        for (i, b) in e.blocks.iter().enumerate() {
            match b {
                ElemBlock::Mask(m) => {
                    for j in 0..64 {
                        if m >> j & 1 == 1 {
                            d.blocks[i].isolated.add_point(j);
                        }
                    }
                }
                ElemBlock::Seq(s) => {
                    d.blocks[i].isolated = SeqSet::from_setf(s);
                    if matches!(shape.block(i), BlockKind::CompactSeq) {
                        d.blocks[i].has_limit = s.is_cofinite();
                    }
                }
            }
        }
        d
    }

    /// Exact conversion back to a clopen set, when the descriptor is one.
    pub fn to_elem(&self) -> Option<Elem> {
        let alg = BlockAlgebra::new(self.shape.clone());
        let mut blocks = Vec::with_capacity(self.shape.len());
        for (i, k) in self.shape.blocks() {
            let b = &self.blocks[i];
            match k {
                BlockKind::Fin(_) => {
                    let mut m = 0u64;
                    for j in b.isolated.members_below(64) {
                        m |= 1 << j;
                    }
                    blocks.push(ElemBlock::Mask(m));
                }
                BlockKind::CompactSeq => {
                    let s = b.isolated.to_setf()?;
                    // clopen on a compact block ⇔ the limit sits on the
                    // cofinite side
                    if s.is_cofinite() != b.has_limit {
                        return None;
                    }
                    blocks.push(ElemBlock::Seq(s));
                }
                BlockKind::DiscreteSeq => {
                    blocks.push(ElemBlock::Seq(b.isolated.to_setf()?));
                }
            }
        }
        Some(alg.elem(blocks).expect("converted blocks match shape"))
    }

    /// Closure: adds the limit of every compact block where the set has
    /// infinitely many isolated members.
    pub fn closure(&self) -> SetDescriptor {
        let mut d = self.clone();
        for (i, k) in self.shape.blocks() {
            if matches!(k, BlockKind::CompactSeq) && d.blocks[i].isolated.is_infinite() {
                d.blocks[i].has_limit = true;
            }
        }
        d
    }

    /// Interior: drops the limit of a compact block unless the set contains
    /// a cofinite run of isolated points there.
    pub fn interior(&self) -> SetDescriptor {
        let mut d = self.clone();
        for (i, k) in self.shape.blocks() {
            if matches!(k, BlockKind::CompactSeq)
                && d.blocks[i].has_limit
                && !d.blocks[i].isolated.is_cofinite()
            {
                d.blocks[i].has_limit = false;
            }
        }
        d
    }

    pub fn is_open(&self) -> bool {
        *self == self.interior()
    }

    pub fn is_closed(&self) -> bool {
        *self == self.closure()
    }

    pub fn is_clopen(&self) -> bool {
        self.is_open() && self.is_closed()
    }

    pub fn is_regular_open(&self) -> bool {
        *self == self.closure().interior()
    }

    pub fn is_regular_closed(&self) -> bool {
        *self == self.interior().closure()
    }

    /// Compact ⇔ closed with finite trace on every discrete block.
    pub fn is_compact(&self) -> bool {
        self.is_closed()
            && self
                .shape
                .blocks()
                .all(|(i, k)| !matches!(k, BlockKind::DiscreteSeq) || self.blocks[i].isolated.is_finite())
    }

    pub fn is_compact_open(&self) -> bool {
        self.is_compact() && self.is_open()
    }

    /// Least clopen superset, when one exists. Per block: a finite set of
    /// isolated points is its own hull; a set whose isolated part is
    /// cofinite and which reaches the limit hulls to the cofinite clopen;
    /// an infinite isolated part with finite complement hulls likewise; any
    /// other infinite configuration has no least clopen superset, because
    /// the cofinite clopens above it form a strictly descending chain.
    pub fn clopen_hull(&self) -> Option<Elem> {
        let mut blocks = Vec::with_capacity(self.shape.len());
        for (i, k) in self.shape.blocks() {
            let b = &self.blocks[i];
            match k {
                BlockKind::Fin(_) => {
                    let mut m = 0u64;
                    for j in b.isolated.members_below(64) {
                        m |= 1 << j;
                    }
                    blocks.push(ElemBlock::Mask(m));
                }
                BlockKind::CompactSeq | BlockKind::DiscreteSeq => {
                    let needs_cofinite = b.has_limit || b.isolated.is_infinite();
                    if !needs_cofinite {
                        // finite isolated part: the set is its own hull
                        blocks.push(ElemBlock::Seq(SetF::Fin(b.isolated.points.clone())));
                        continue;
                    }
                    // the only clopen supersets are cofinite; a least one
                    // exists iff the complement of the isolated part is finite
                    let compl = b.isolated.cofinite_complement()?;
                    blocks.push(ElemBlock::Seq(SetF::CoFin(compl)));
                }
            }
        }
        let alg = BlockAlgebra::new(self.shape.clone());
        Some(alg.elem(blocks).expect("hull blocks match shape"))
    }

    /// Is every isolated point of the ambient space in the set? (Closure
    /// then equals the whole space, since isolated points are dense.)
    pub fn covers_isolated(&self) -> bool {
        self.shape.blocks().all(|(i, k)| {
            let b = &self.blocks[i];
            match k {
                BlockKind::Fin(n) => (0..n).all(|j| b.isolated.contains(j)),
                BlockKind::CompactSeq | BlockKind::DiscreteSeq => match b
                    .isolated
                    .cofinite_complement()
                {
                    Some(c) => c.is_empty(),
                    None => false,
                },
            }
        })
    }

    /// Set-theoretic surjectivity onto the ambient space.
    pub fn covers_space(&self) -> bool {
        self.covers_isolated()
            && self
                .shape
                .blocks()
                .all(|(i, k)| !matches!(k, BlockKind::CompactSeq) || self.blocks[i].has_limit)
    }
}

impl GenMap {
    /// Exact image of a clopen set of the source. Built one source block at
    /// a time and merged, so trims local to one tail never shadow points
    /// another block legitimately contributes.
    pub fn image_clopen(&self, u: &Elem) -> SetDescriptor {
        let src_alg = BlockAlgebra::new(self.source.clone());
        let mut d = SetDescriptor::empty(&self.target);
        for (bi, (rule, kind)) in self.rules.iter().zip(self.source.0.iter()).enumerate() {
            let mut part = SetDescriptor::empty(&self.target);
            let ub = u.block(bi);
            for (&i, v) in &rule.exceptions {
                let inside = match ub {
                    ElemBlock::Mask(m) => m >> i & 1 == 1,
                    ElemBlock::Seq(s) => s.contains(i),
                };
                if inside {
                    add_ext(&mut part, v);
                }
            }
            if kind.is_seq() {
                let ElemBlock::Seq(s) = ub else { unreachable!("mixed block kinds") };
                // the part of u handled by the tail rule
                let tail_members = match s {
                    SetF::Fin(set) => {
                        let pts: Vec<u32> = set
                            .iter()
                            .copied()
                            .filter(|i| !rule.exceptions.contains_key(i))
                            .collect();
                        TailPart::Finite(pts)
                    }
                    SetF::CoFin(excl) => {
                        let mut bad: Vec<u32> = excl.iter().copied().collect();
                        bad.extend(rule.exceptions.keys().copied());
                        TailPart::Cofinite(bad)
                    }
                };
                match (&rule.tail, tail_members) {
                    (_, TailPart::Finite(pts)) if pts.is_empty() => {}
                    (Tail::None, _) => unreachable!("sequence block without tail"),
                    (Tail::Const(p), _) => add_ext(&mut part, p),
                    (Tail::Affine { block: t, stride, offset }, TailPart::Finite(pts)) => {
                        for i in pts {
                            let x = *stride as u64 * i as u64 + *offset as u64;
                            assert!(x <= u32::MAX as u64, "affine image exceeds index range");
                            part.blocks[*t].isolated.add_point(x as u32);
                        }
                    }
                    (Tail::Affine { block: t, stride, offset }, TailPart::Cofinite(bad)) => {
                        let trimmed: crate::seqset::IdxSet = bad
                            .iter()
                            .filter_map(|&i| {
                                let x = *stride as u64 * i as u64 + *offset as u64;
                                (x <= u32::MAX as u64).then_some(x as u32)
                            })
                            .collect();
                        let piece = SeqSet {
                            points: Default::default(),
                            aps: vec![Ap::new(*stride, *offset)],
                            minus: trimmed,
                        };
                        part.blocks[*t].isolated.union_with(&piece);
                    }
                }
                if matches!(kind, BlockKind::CompactSeq)
                    && src_alg.contains_point(u, &Point::limit(bi))
                {
                    add_ext(&mut part, &self.eval_limit(bi));
                }
            }
            d.union_with(&part);
        }
        d
    }

    /// Image of the whole source.
    pub fn image_space(&self) -> SetDescriptor {
        let src_alg = BlockAlgebra::new(self.source.clone());
        self.image_clopen(&src_alg.top())
    }
}

enum TailPart {
    Finite(Vec<u32>),
    /// All indices except these are in the tail part.
    Cofinite(Vec<u32>),
}

fn add_ext(d: &mut SetDescriptor, p: &ExtPoint) {
    match p {
        ExtPoint::Real(q) => d.add_point(*q),
        // virtual limits are not points of the target space; images of real
        // maps never produce them, and generalized images simply drop them
        ExtPoint::VirtualLimit(_) => {}
    }
}

impl BlockSpace {
    pub fn descriptor_from_elem(&self, e: &Elem) -> SetDescriptor {
        SetDescriptor::from_elem(&self.shape, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::BlockKind::*;
    use crate::zspace::BlockRule;
    use std::collections::BTreeMap;

    fn omega() -> Shape {
        Shape::new(vec![CompactSeq])
    }

    #[test]
    fn clopen_round_trip() {
        let sh = Shape::new(vec![Fin(3), CompactSeq, DiscreteSeq]);
        let alg = BlockAlgebra::new(sh.clone());
        let e = alg
            .elem(vec![
                ElemBlock::Mask(0b110),
                ElemBlock::Seq(SetF::cofin([0, 2])),
                ElemBlock::Seq(SetF::fin([1, 4])),
            ])
            .unwrap();
        let d = SetDescriptor::from_elem(&sh, &e);
        assert!(d.is_clopen());
        assert_eq!(d.to_elem().unwrap(), e);
        assert!(d.contains(&Point::limit(1)));
        assert!(!d.contains(&Point::at(1, 2)));
    }

    #[test]
    fn naturals_inside_omega_are_regular_open_but_not_clopen() {
        let sh = omega();
        let mut d = SetDescriptor::empty(&sh);
        d.add_ap(0, Ap::new(1, 0));
        assert!(d.is_open());
        assert!(!d.is_closed());
        // closure is the whole space, interior of that is the whole space
        assert!(!d.is_regular_open());
        assert!(d.closure().covers_space());
        assert!(d.to_elem().is_none());
    }

    #[test]
    fn evens_with_limit_have_no_clopen_hull() {
        let sh = omega();
        let mut d = SetDescriptor::empty(&sh);
        d.add_ap(0, Ap::new(2, 0));
        d.add_point(Point::limit(0));
        assert!(d.is_closed());
        assert!(!d.is_open());
        assert!(d.clopen_hull().is_none());
        // the closure of the evens: regular closed without being clopen
        assert!(d.is_regular_closed());
        assert!(!d.is_clopen());
    }

    #[test]
    fn finite_sets_hull_to_themselves() {
        let sh = omega();
        let mut d = SetDescriptor::empty(&sh);
        d.add_point(Point::at(0, 4));
        d.add_point(Point::at(0, 9));
        let alg = BlockAlgebra::new(sh);
        assert_eq!(d.clopen_hull().unwrap(), alg.from_block_set(0, SetF::fin([4, 9])));
        assert!(d.is_regular_open() && d.is_regular_closed());
        assert!(d.is_compact_open());
    }

    #[test]
    fn image_of_stride_two_tail() {
        // the self-map of ω+1 doubling the isolated indices
        let f = GenMap {
            source: omega(),
            target: omega(),
            rules: vec![BlockRule {
                exceptions: BTreeMap::new(),
                tail: Tail::Affine { block: 0, stride: 2, offset: 0 },
            }],
        };
        let alg = BlockAlgebra::new(omega());
        let img = f.image_clopen(&alg.top());
        assert!(img.contains(&Point::at(0, 8)));
        assert!(!img.contains(&Point::at(0, 3)));
        assert!(img.contains(&Point::limit(0)));
        // evens plus the limit: closed, not open, no clopen hull
        assert!(img.is_closed() && !img.is_open());
        assert!(img.clopen_hull().is_none());
    }

    #[test]
    fn image_of_constant_map() {
        let f = GenMap {
            source: omega(),
            target: omega(),
            rules: vec![BlockRule {
                exceptions: BTreeMap::new(),
                tail: Tail::Const(ExtPoint::at(0, 7)),
            }],
        };
        let alg = BlockAlgebra::new(omega());
        let img = f.image_clopen(&alg.from_block_set(0, SetF::cofin([])));
        let mut expect = SetDescriptor::empty(&omega());
        expect.add_point(Point::at(0, 7));
        assert_eq!(img, expect);
        assert_eq!(img.clopen_hull().unwrap(), alg.from_block_set(0, SetF::fin([7])));
    }
}
