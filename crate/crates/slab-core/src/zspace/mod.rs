//! Block spaces and the maps between them — the topological side.
//!
//! A [`BlockSpace`] is a finite disjoint sum of finite discrete blocks,
//! convergent sequences and copies of discrete `ℕ`. A [`GenMap`] describes a
//! function out of such a space by a finite exception table plus a tail rule
//! per source block; real continuous maps, and the slightly larger class of
//! generalized maps hitting virtual limits, are both closed under
//! composition. All property deciders here work by case analysis on the
//! exception tables and tail rules and are validated against brute force on
//! truncations by the test suite.

mod deciders;
mod desc;
mod subspace;

pub use deciders::MapClass;
pub use desc::SetDescriptor;
pub use subspace::{open_subspace, regular_closed_subspace, SubPart, Subspace, SubspaceError};

use std::collections::BTreeMap;
use std::fmt;

use crate::balg::{BlockAlgebra, Elem, ElemBlock};
use crate::seqset::{IdxSet, SetF};
use crate::shape::{BlockKind, ExtPoint, Point, PointIndex, Shape};

/// A locally compact zero-dimensional Hausdorff space presented by blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpace {
    pub shape: Shape,
}

impl BlockSpace {
    pub fn new(shape: Shape) -> Self {
        BlockSpace { shape }
    }

    /// The dual algebra lives on the same shape.
    pub fn algebra(&self) -> BlockAlgebra {
        BlockAlgebra::new(self.shape.clone())
    }

    pub fn is_compact(&self) -> bool {
        self.shape.is_compact()
    }

    pub fn is_discrete(&self) -> bool {
        !self.shape.0.iter().any(|k| matches!(k, BlockKind::CompactSeq))
    }

    /// Extremally disconnected ⇔ the dual algebra is complete ⇔ no
    /// convergent-sequence block (closures of open sets stay open only when
    /// no set of isolated points accumulates).
    pub fn is_extremally_disconnected(&self) -> bool {
        self.is_discrete()
    }

    /// Every point except the limits of compact-sequence blocks.
    pub fn isolated_points(&self) -> SetDescriptor {
        let mut d = SetDescriptor::empty(&self.shape);
        for (i, k) in self.shape.blocks() {
            match k {
                BlockKind::Fin(n) => {
                    for j in 0..n {
                        d.add_point(Point::at(i, j));
                    }
                }
                BlockKind::CompactSeq | BlockKind::DiscreteSeq => {
                    d.add_ap(i, crate::seqset::Ap::new(1, 0));
                }
            }
        }
        d
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p.index {
            PointIndex::At(i) => self.shape.valid_index(p.block, i),
            PointIndex::Limit => {
                matches!(self.shape.0.get(p.block), Some(BlockKind::CompactSeq))
            }
        }
    }
}

/// Tail rule of one source block: what happens to all indices outside the
/// exception table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    /// Finite blocks only: the exception table is total, there is no tail.
    None,
    /// All remaining indices go to one extended point.
    Const(ExtPoint),
    /// Remaining index `n` goes to isolated point `stride·n + offset` of the
    /// given target sequence block.
    Affine { block: usize, stride: u32, offset: u32 },
}

/// Per-source-block rule: exceptions override the tail.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BlockRule {
    pub exceptions: BTreeMap<u32, ExtPoint>,
    pub tail: Tail,
}

impl Default for Tail {
    fn default() -> Self {
        Tail::None
    }
}

/// A generalized spectral map between block spaces. Real continuous maps
/// are the generalized maps in which no real point lands on a virtual limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenMap {
    pub source: Shape,
    pub target: Shape,
    pub rules: Vec<BlockRule>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("rule count {got} does not match source block count {want}")]
    RuleCount { got: usize, want: usize },
    #[error("block {block}: exception index {index} outside the finite block")]
    BadExceptionIndex { block: usize, index: u32 },
    #[error("block {block}: exception value {value} is not a point of the target")]
    BadExceptionValue { block: usize, value: String },
    #[error("block {block}: finite block needs a total exception table and no tail")]
    FinBlockNotTotal { block: usize },
    #[error("block {block}: sequence block needs a tail rule")]
    MissingTail { block: usize },
    #[error("block {block}: affine tail must target a sequence block")]
    AffineIntoFinite { block: usize },
    #[error("block {block}: affine tail stride must be positive")]
    ZeroStride { block: usize },
    #[error("block {block}: virtual limit must name a discrete target block")]
    BadVirtualLimit { block: usize },
}

/// Why a generalized map fails to be a real continuous map.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealnessError {
    #[error("isolated point {point} of block {block} maps to a virtual limit")]
    RealToVirtual { block: usize, point: u32 },
    #[error("the limit of compact block {block} maps to a virtual limit; the image sequence diverges in a discrete block")]
    TailDiverges { block: usize },
}

impl GenMap {
    pub fn identity(shape: &Shape) -> GenMap {
        let rules = shape
            .0
            .iter()
            .enumerate()
            .map(|(i, k)| match k {
                BlockKind::Fin(n) => BlockRule {
                    exceptions: (0..*n).map(|j| (j, ExtPoint::at(i, j))).collect(),
                    tail: Tail::None,
                },
                _ => BlockRule {
                    exceptions: BTreeMap::new(),
                    tail: Tail::Affine { block: i, stride: 1, offset: 0 },
                },
            })
            .collect();
        GenMap { source: shape.clone(), target: shape.clone(), rules }
    }

    /// Structural well-formedness: every point has an image, indices are in
    /// range, affine tails target sequence blocks, virtual limits name
    /// discrete blocks.
    pub fn well_formed(&self) -> Result<(), MapError> {
        if self.rules.len() != self.source.len() {
            return Err(MapError::RuleCount { got: self.rules.len(), want: self.source.len() });
        }
        for (bi, (rule, kind)) in self.rules.iter().zip(self.source.0.iter()).enumerate() {
            for (&i, v) in &rule.exceptions {
                if let BlockKind::Fin(n) = kind {
                    if i >= *n {
                        return Err(MapError::BadExceptionIndex { block: bi, index: i });
                    }
                }
                self.check_ext(bi, v)?;
            }
            match (kind, &rule.tail) {
                (BlockKind::Fin(n), Tail::None) => {
                    if (0..*n).any(|i| !rule.exceptions.contains_key(&i)) {
                        return Err(MapError::FinBlockNotTotal { block: bi });
                    }
                }
                (BlockKind::Fin(_), _) => return Err(MapError::FinBlockNotTotal { block: bi }),
                (_, Tail::None) => return Err(MapError::MissingTail { block: bi }),
                (_, Tail::Const(p)) => self.check_ext(bi, p)?,
                (_, Tail::Affine { block, stride, .. }) => {
                    if *stride == 0 {
                        return Err(MapError::ZeroStride { block: bi });
                    }
                    match self.target.0.get(*block) {
                        Some(k) if k.is_seq() => {}
                        _ => return Err(MapError::AffineIntoFinite { block: bi }),
                    }
                }
            }
        }
        Ok(())
    }

    fn check_ext(&self, bi: usize, v: &ExtPoint) -> Result<(), MapError> {
        match v {
            ExtPoint::Real(p) => {
                let ok = match p.index {
                    PointIndex::At(i) => self.target.valid_index(p.block, i),
                    PointIndex::Limit => {
                        matches!(self.target.0.get(p.block), Some(BlockKind::CompactSeq))
                    }
                };
                if ok {
                    Ok(())
                } else {
                    Err(MapError::BadExceptionValue { block: bi, value: p.to_string() })
                }
            }
            ExtPoint::VirtualLimit(b) => {
                if matches!(self.target.0.get(*b), Some(BlockKind::DiscreteSeq)) {
                    Ok(())
                } else {
                    Err(MapError::BadVirtualLimit { block: bi })
                }
            }
        }
    }

    /// Image of an isolated source point.
    pub fn eval_index(&self, block: usize, i: u32) -> ExtPoint {
        let rule = &self.rules[block];
        if let Some(v) = rule.exceptions.get(&i) {
            return *v;
        }
        match &rule.tail {
            Tail::None => unreachable!("total table miss"),
            Tail::Const(p) => *p,
            Tail::Affine { block: t, stride, offset } => {
                let v = *stride as u64 * i as u64 + *offset as u64;
                assert!(v <= u32::MAX as u64, "affine image exceeds index range");
                ExtPoint::at(*t, v as u32)
            }
        }
    }

    /// Image of the limit point of a compact source block: forced by the
    /// tail rule, since the isolated tail converges to it.
    pub fn eval_limit(&self, block: usize) -> ExtPoint {
        debug_assert!(matches!(self.source.block(block), BlockKind::CompactSeq));
        match &self.rules[block].tail {
            Tail::None => unreachable!("sequence block without tail"),
            Tail::Const(p) => *p,
            Tail::Affine { block: t, .. } => match self.target.block(*t) {
                BlockKind::CompactSeq => ExtPoint::limit(*t),
                BlockKind::DiscreteSeq => ExtPoint::VirtualLimit(*t),
                BlockKind::Fin(_) => unreachable!("affine into finite block"),
            },
        }
    }

    pub fn eval(&self, p: &Point) -> ExtPoint {
        match p.index {
            PointIndex::At(i) => self.eval_index(p.block, i),
            PointIndex::Limit => self.eval_limit(p.block),
        }
    }

    /// Image of an extended point; the virtual limit of a discrete source
    /// block pushes forward to whatever the tail rule does at infinity.
    pub fn eval_ext(&self, p: &ExtPoint) -> ExtPoint {
        match p {
            ExtPoint::Real(q) => self.eval(q),
            ExtPoint::VirtualLimit(b) => match &self.rules[*b].tail {
                Tail::None => unreachable!("sequence block without tail"),
                Tail::Const(q) => *q,
                Tail::Affine { block: t, .. } => match self.target.block(*t) {
                    BlockKind::CompactSeq => ExtPoint::limit(*t),
                    BlockKind::DiscreteSeq => ExtPoint::VirtualLimit(*t),
                    BlockKind::Fin(_) => unreachable!("affine into finite block"),
                },
            },
        }
    }

    /// Check that the map is a real continuous map: no real point (limits of
    /// compact blocks included) may land on a virtual limit. Continuity of
    /// everything else is built into the representation — preimages of
    /// clopen descriptors are clopen by construction.
    pub fn validate(&self) -> Result<(), RealnessError> {
        for (bi, (rule, kind)) in self.rules.iter().zip(self.source.0.iter()).enumerate() {
            for (&i, v) in &rule.exceptions {
                if v.is_virtual() {
                    return Err(RealnessError::RealToVirtual { block: bi, point: i });
                }
            }
            match (kind, &rule.tail) {
                (BlockKind::CompactSeq, Tail::Const(p)) if p.is_virtual() => {
                    return Err(RealnessError::TailDiverges { block: bi });
                }
                (BlockKind::CompactSeq, Tail::Affine { block, .. })
                    if matches!(self.target.block(*block), BlockKind::DiscreteSeq) =>
                {
                    return Err(RealnessError::TailDiverges { block: bi });
                }
                (BlockKind::DiscreteSeq, Tail::Const(p)) if p.is_virtual() => {
                    // isolated points of the discrete block are real points
                    return Err(RealnessError::RealToVirtual {
                        block: bi,
                        point: first_tail_index(rule),
                    });
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn is_real(&self) -> bool {
        self.validate().is_ok()
    }

    /// Preimage of a clopen set of the target. A Boolean homomorphism in its
    /// argument; for generalized maps the virtual limit of a block lies in
    /// the set exactly when the set is cofinite on that block.
    pub fn preimage(&self, g: &Elem) -> Elem {
        let target_alg = BlockAlgebra::new(self.target.clone());
        let mut blocks = Vec::with_capacity(self.source.len());
        for (bi, (rule, kind)) in self.rules.iter().zip(self.source.0.iter()).enumerate() {
            let _ = bi;
            match kind {
                BlockKind::Fin(n) => {
                    let mut m = 0u64;
                    for i in 0..*n {
                        if target_alg.contains_ext(g, &self.eval_index_known(rule, i)) {
                            m |= 1 << i;
                        }
                    }
                    blocks.push(ElemBlock::Mask(m));
                }
                BlockKind::CompactSeq | BlockKind::DiscreteSeq => {
                    blocks.push(ElemBlock::Seq(self.preimage_seq_block(&target_alg, rule, g)));
                }
            }
        }
        Elem { blocks }
    }

    fn eval_index_known(&self, rule: &BlockRule, i: u32) -> ExtPoint {
        if let Some(v) = rule.exceptions.get(&i) {
            return *v;
        }
        match &rule.tail {
            Tail::None => unreachable!("total table miss"),
            Tail::Const(p) => *p,
            Tail::Affine { block: t, stride, offset } => {
                let v = *stride as u64 * i as u64 + *offset as u64;
                assert!(v <= u32::MAX as u64, "affine image exceeds index range");
                ExtPoint::at(*t, v as u32)
            }
        }
    }

    fn preimage_seq_block(&self, target_alg: &BlockAlgebra, rule: &BlockRule, g: &Elem) -> SetF {
        // decide the tail first, then patch exceptions
        let tail_in = match &rule.tail {
            Tail::None => unreachable!("sequence block without tail"),
            Tail::Const(p) => TailMembership::All(target_alg.contains_ext(g, p)),
            Tail::Affine { block: t, stride, offset } => {
                match g.block(*t) {
                    ElemBlock::Seq(SetF::Fin(s)) => {
                        // finitely many tail indices land in g
                        TailMembership::Only(affine_preimage(s, *stride, *offset))
                    }
                    ElemBlock::Seq(SetF::CoFin(e)) => {
                        TailMembership::AllBut(affine_preimage(e, *stride, *offset))
                    }
                    ElemBlock::Mask(_) => unreachable!("affine into finite block"),
                }
            }
        };
        match tail_in {
            TailMembership::All(true) => {
                let excl: IdxSet = rule
                    .exceptions
                    .iter()
                    .filter(|(_, v)| !target_alg.contains_ext(g, v))
                    .map(|(&i, _)| i)
                    .collect();
                SetF::CoFin(excl)
            }
            TailMembership::All(false) => {
                let inc: IdxSet = rule
                    .exceptions
                    .iter()
                    .filter(|(_, v)| target_alg.contains_ext(g, v))
                    .map(|(&i, _)| i)
                    .collect();
                SetF::Fin(inc)
            }
            TailMembership::Only(mut inc) => {
                inc.retain(|i| !rule.exceptions.contains_key(i));
                for (&i, v) in &rule.exceptions {
                    if target_alg.contains_ext(g, v) {
                        inc.insert(i);
                    }
                }
                SetF::Fin(inc)
            }
            TailMembership::AllBut(mut excl) => {
                excl.retain(|i| !rule.exceptions.contains_key(i));
                for (&i, v) in &rule.exceptions {
                    if !target_alg.contains_ext(g, v) {
                        excl.insert(i);
                    }
                }
                SetF::CoFin(excl)
            }
        }
    }

    /// Composition `g ∘ self` (apply `self` first). Stays in the class.
    pub fn compose(&self, g: &GenMap) -> GenMap {
        assert_eq!(self.target, g.source, "maps are not composable");
        let rules = self
            .rules
            .iter()
            .map(|rule| {
                let mut exceptions: BTreeMap<u32, ExtPoint> =
                    rule.exceptions.iter().map(|(&i, v)| (i, g.eval_ext(v))).collect();
                let tail = match &rule.tail {
                    Tail::None => Tail::None,
                    Tail::Const(p) => Tail::Const(g.eval_ext(p)),
                    Tail::Affine { block: t, stride, offset } => {
                        let trule = &g.rules[*t];
                        // tail indices n (outside our exceptions) pass through
                        // i = stride·n + offset into g's rule on block t
                        for (&k, v) in &trule.exceptions {
                            if k >= *offset && (k - offset) % stride == 0 {
                                let n = (k - offset) / stride;
                                exceptions.entry(n).or_insert(*v);
                            }
                        }
                        match &trule.tail {
                            Tail::None => unreachable!("sequence block without tail"),
                            Tail::Const(q) => Tail::Const(*q),
                            Tail::Affine { block: t2, stride: s2, offset: o2 } => {
                                let ns = (*s2 as u64) * (*stride as u64);
                                let no = (*s2 as u64) * (*offset as u64) + *o2 as u64;
                                assert!(
                                    ns <= u32::MAX as u64 && no <= u32::MAX as u64,
                                    "composed affine tail exceeds index range"
                                );
                                Tail::Affine { block: *t2, stride: ns as u32, offset: no as u32 }
                            }
                        }
                    }
                };
                BlockRule { exceptions, tail }
            })
            .collect();
        GenMap { source: self.source.clone(), target: g.target.clone(), rules }
    }

    /// Strip exceptions that agree with the tail rule; canonical form for
    /// comparing maps up to extensional equality.
    pub fn normalize(&self) -> GenMap {
        let rules = self
            .rules
            .iter()
            .zip(self.source.0.iter())
            .map(|(rule, kind)| {
                if matches!(kind, BlockKind::Fin(_)) {
                    return rule.clone();
                }
                let exceptions = rule
                    .exceptions
                    .iter()
                    .filter(|(&i, v)| {
                        let tail_val = match &rule.tail {
                            Tail::None => return true,
                            Tail::Const(p) => *p,
                            Tail::Affine { block: t, stride, offset } => {
                                let x = *stride as u64 * i as u64 + *offset as u64;
                                if x > u32::MAX as u64 {
                                    return true;
                                }
                                ExtPoint::at(*t, x as u32)
                            }
                        };
                        **v != tail_val
                    })
                    .map(|(&i, v)| (i, *v))
                    .collect();
                BlockRule { exceptions, tail: rule.tail.clone() }
            })
            .collect();
        GenMap { source: self.source.clone(), target: self.target.clone(), rules }
    }
}

enum TailMembership {
    All(bool),
    /// Exactly these tail indices are in.
    Only(IdxSet),
    /// All tail indices except these.
    AllBut(IdxSet),
}

/// Indices `n` with `stride·n + offset ∈ s`.
fn affine_preimage(s: &IdxSet, stride: u32, offset: u32) -> IdxSet {
    s.iter()
        .filter(|&&x| x >= offset && (x - offset) % stride == 0)
        .map(|&x| (x - offset) / stride)
        .collect()
}

fn first_tail_index(rule: &BlockRule) -> u32 {
    (0..).find(|i| !rule.exceptions.contains_key(i)).unwrap()
}

impl fmt::Display for GenMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "map {} -> {}", self.source, self.target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::BlockKind::*;

    fn omega_plus_one() -> Shape {
        Shape::new(vec![CompactSeq])
    }

    fn nat_discrete() -> Shape {
        Shape::new(vec![DiscreteSeq])
    }

    /// The dense embedding of discrete ℕ into ω+1.
    pub(crate) fn nat_into_omega() -> GenMap {
        GenMap {
            source: nat_discrete(),
            target: omega_plus_one(),
            rules: vec![BlockRule {
                exceptions: BTreeMap::new(),
                tail: Tail::Affine { block: 0, stride: 1, offset: 0 },
            }],
        }
    }

    #[test]
    fn identity_is_real() {
        let id = GenMap::identity(&omega_plus_one());
        id.well_formed().unwrap();
        id.validate().unwrap();
        assert_eq!(id.eval(&Point::limit(0)), ExtPoint::limit(0));
    }

    #[test]
    fn nat_embeds_into_omega() {
        let f = nat_into_omega();
        f.well_formed().unwrap();
        f.validate().unwrap();
    }

    #[test]
    fn compact_tail_into_discrete_is_not_real() {
        let f = GenMap {
            source: omega_plus_one(),
            target: nat_discrete(),
            rules: vec![BlockRule {
                exceptions: BTreeMap::new(),
                tail: Tail::Affine { block: 0, stride: 1, offset: 0 },
            }],
        };
        f.well_formed().unwrap();
        assert_eq!(f.validate(), Err(RealnessError::TailDiverges { block: 0 }));
        assert_eq!(f.eval(&Point::limit(0)), ExtPoint::VirtualLimit(0));
    }

    #[test]
    fn preimage_examples() {
        let alg = BlockAlgebra::new(omega_plus_one());
        let id = GenMap::identity(&omega_plus_one());
        let g = alg.from_block_set(0, SetF::cofin([3]));
        assert_eq!(id.preimage(&g), g);

        let f = nat_into_omega();
        let top = alg.top();
        let nat_alg = BlockAlgebra::new(nat_discrete());
        assert_eq!(f.preimage(&top), nat_alg.top());
        // preimage of a cofinite clopen keeps cofiniteness but loses the limit
        assert_eq!(f.preimage(&g), nat_alg.from_block_set(0, SetF::cofin([3])));
    }

    #[test]
    fn virtual_limit_membership_drives_preimage() {
        // a single point mapped to the virtual limit of a discrete block
        let pt = Shape::new(vec![Fin(1)]);
        let f = GenMap {
            source: pt.clone(),
            target: nat_discrete(),
            rules: vec![BlockRule {
                exceptions: [(0, ExtPoint::VirtualLimit(0))].into(),
                tail: Tail::None,
            }],
        };
        f.well_formed().unwrap();
        assert!(f.validate().is_err());
        let nat_alg = BlockAlgebra::new(nat_discrete());
        let pt_alg = BlockAlgebra::new(pt);
        let fin = nat_alg.from_block_set(0, SetF::fin([3]));
        let cof = nat_alg.from_block_set(0, SetF::cofin([3]));
        assert!(pt_alg.is_zero(&f.preimage(&fin)));
        assert!(pt_alg.is_top(&f.preimage(&cof)));
    }

    #[test]
    fn preimage_is_boolean_hom() {
        let f = GenMap {
            source: Shape::new(vec![CompactSeq, Fin(2)]),
            target: Shape::new(vec![CompactSeq, DiscreteSeq]),
            rules: vec![
                BlockRule {
                    exceptions: [(0, ExtPoint::at(1, 5)), (3, ExtPoint::limit(0))].into(),
                    tail: Tail::Affine { block: 0, stride: 2, offset: 1 },
                },
                BlockRule {
                    exceptions: [(0, ExtPoint::at(0, 2)), (1, ExtPoint::at(1, 0))].into(),
                    tail: Tail::None,
                },
            ],
        };
        f.well_formed().unwrap();
        let src = BlockAlgebra::new(f.source.clone());
        let tgt = BlockAlgebra::new(f.target.clone());
        let a = tgt
            .elem(vec![ElemBlock::Seq(SetF::cofin([1, 5])), ElemBlock::Seq(SetF::fin([0, 5]))])
            .unwrap();
        let b = tgt
            .elem(vec![ElemBlock::Seq(SetF::fin([2, 3])), ElemBlock::Seq(SetF::cofin([5]))])
            .unwrap();
        assert_eq!(f.preimage(&tgt.meet(&a, &b)), src.meet(&f.preimage(&a), &f.preimage(&b)));
        assert_eq!(f.preimage(&tgt.join(&a, &b)), src.join(&f.preimage(&a), &f.preimage(&b)));
        assert_eq!(f.preimage(&tgt.complement(&a)), src.complement(&f.preimage(&a)));
        // the limit of the compact source block sits in the preimage iff the
        // image of the limit does, which the cofinite convention encodes
        let pre = f.preimage(&a);
        assert_eq!(
            src.contains_point(&pre, &Point::limit(0)),
            tgt.contains_ext(&a, &f.eval_limit(0))
        );
    }

    #[test]
    fn composition_matches_pointwise_eval() {
        let f = nat_into_omega();
        let g = GenMap {
            source: omega_plus_one(),
            target: omega_plus_one(),
            rules: vec![BlockRule {
                exceptions: [(2, ExtPoint::at(0, 0))].into(),
                tail: Tail::Affine { block: 0, stride: 2, offset: 3 },
            }],
        };
        g.well_formed().unwrap();
        let gf = f.compose(&g);
        gf.well_formed().unwrap();
        for i in 0..40 {
            assert_eq!(gf.eval(&Point::at(0, i)), g.eval_ext(&f.eval(&Point::at(0, i))));
        }
        // preimage of composition = composition of preimages
        let alg = BlockAlgebra::new(omega_plus_one());
        let e = alg.from_block_set(0, SetF::cofin([3, 7]));
        assert_eq!(gf.preimage(&e), f.preimage(&g.preimage(&e)));
    }

    #[test]
    fn normalize_strips_redundant_exceptions() {
        let mut f = nat_into_omega();
        f.rules[0].exceptions.insert(4, ExtPoint::at(0, 4));
        f.rules[0].exceptions.insert(5, ExtPoint::at(0, 9));
        let n = f.normalize();
        assert!(!n.rules[0].exceptions.contains_key(&4));
        assert!(n.rules[0].exceptions.contains_key(&5));
    }
}
