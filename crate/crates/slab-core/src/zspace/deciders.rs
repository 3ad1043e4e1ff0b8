//! Geometric property deciders for real maps.
//!
//! Every decider is a finite case analysis over exception tables and tail
//! rules. The test suite replays each against brute force on truncated
//! finite models; the case tables are documented inline.

use std::collections::BTreeMap;

use super::{BlockRule, GenMap, Tail};
use crate::shape::{BlockKind, ExtPoint, Point, PointIndex};

/// An infinite image piece: the trace of one affine tail in its target block.
#[derive(Debug, Clone, Copy)]
struct ApPiece {
    target: usize,
    stride: u32,
    offset: u32,
    /// Which source block produced it, and whether that block is compact
    /// (then its limit maps onto the target limit).
    source: usize,
    source_compact: bool,
}

fn ap_pieces(f: &GenMap) -> Vec<ApPiece> {
    let mut out = Vec::new();
    for (bi, (rule, kind)) in f.rules.iter().zip(f.source.0.iter()).enumerate() {
        if let Tail::Affine { block, stride, offset } = rule.tail {
            out.push(ApPiece {
                target: block,
                stride,
                offset,
                source: bi,
                source_compact: matches!(kind, BlockKind::CompactSeq),
            });
        }
    }
    out
}

/// `x` is hit by the tail `{stride·i + offset : i ∉ keys}`.
fn ap_hits(stride: u32, offset: u32, keys: &BTreeMap<u32, ExtPoint>, x: u32) -> bool {
    if x < offset || (x - offset) % stride != 0 {
        return false;
    }
    !keys.contains_key(&((x - offset) / stride))
}

/// Two progressions share a value (then automatically infinitely many up to
/// finite trims): their congruences must be compatible modulo the gcd.
fn aps_compatible(a: &ApPiece, b: &ApPiece) -> bool {
    let g = {
        let (mut x, mut y) = (a.stride as u64, b.stride as u64);
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        x
    };
    (a.offset as u64 % g) == (b.offset as u64 % g)
}

/// `b ∖ a` finite: stride of `a` divides stride of `b` with matching offset.
fn ap_eventually_contains(a: &ApPiece, b: &ApPiece) -> bool {
    b.stride as u64 % a.stride as u64 == 0
        && (b.offset as u64 % a.stride as u64) == (a.offset as u64 % a.stride as u64)
}

fn assert_real(f: &GenMap) {
    f.validate().expect("geometric deciders need a real map");
}

/// Live exception entries of one source block (finite blocks only carry
/// indices below their size; well-formedness guarantees that already).
fn exceptions(rule: &BlockRule) -> impl Iterator<Item = (u32, &ExtPoint)> {
    rule.exceptions.iter().map(|(&i, v)| (i, v))
}

impl GenMap {
    fn maps_isolated_to_isolated(&self) -> bool {
        self.rules.iter().zip(self.source.0.iter()).all(|(rule, kind)| {
            let exc_ok = exceptions(rule)
                .all(|(_, v)| matches!(v, ExtPoint::Real(p) if !p.is_limit()));
            let tail_ok = match &rule.tail {
                Tail::None => true,
                Tail::Const(p) => {
                    !kind.is_seq() || matches!(p, ExtPoint::Real(q) if !q.is_limit())
                }
                Tail::Affine { .. } => true,
            };
            exc_ok && tail_ok
        })
    }

    /// Quasi-open: nonempty opens have images with nonempty interior. On
    /// block spaces the isolated points are dense, so this holds exactly
    /// when isolated points land on isolated points.
    pub fn is_quasi_open(&self) -> bool {
        assert_real(self);
        self.maps_isolated_to_isolated()
    }

    /// Skeletal: nonempty opens have images whose closures have nonempty
    /// interior. Closures of singletons are singletons, so the criterion
    /// collapses to the same isolated-to-isolated condition; the truncation
    /// suite checks the collapse.
    pub fn is_skeletal(&self) -> bool {
        assert_real(self);
        self.maps_isolated_to_isolated()
    }

    /// Open: images of basic opens are open. Beyond isolated-to-isolated
    /// this constrains the neighborhoods of source limits: a compact block's
    /// tail must be constant (to an isolated point) or affine with stride 1,
    /// otherwise the image of a limit neighborhood has the target limit on
    /// the boundary.
    pub fn is_open_map(&self) -> bool {
        assert_real(self);
        if !self.maps_isolated_to_isolated() {
            return false;
        }
        self.rules.iter().zip(self.source.0.iter()).all(|(rule, kind)| {
            if !matches!(kind, BlockKind::CompactSeq) {
                return true;
            }
            match &rule.tail {
                Tail::Const(_) => true,
                Tail::Affine { stride, .. } => *stride == 1,
                Tail::None => unreachable!("sequence block without tail"),
            }
        })
    }

    /// Closed: the only way a block map fails to be closed is a discrete
    /// source block streaming along an affine tail into a compact block —
    /// the image accumulates at the target limit without reaching it.
    pub fn is_closed_map(&self) -> bool {
        assert_real(self);
        self.rules.iter().zip(self.source.0.iter()).all(|(rule, kind)| {
            if !matches!(kind, BlockKind::DiscreteSeq) {
                return true;
            }
            match &rule.tail {
                Tail::Affine { block, .. } => {
                    !matches!(self.target.block(*block), BlockKind::CompactSeq)
                }
                _ => true,
            }
        })
    }

    /// Perfect: closed with compact fibers; equivalently every discrete
    /// source block must stream into a discrete target block. A constant
    /// tail on a discrete block already has a non-compact fiber.
    pub fn is_perfect(&self) -> bool {
        assert_real(self);
        self.rules.iter().zip(self.source.0.iter()).all(|(rule, kind)| {
            if !matches!(kind, BlockKind::DiscreteSeq) {
                return true;
            }
            match &rule.tail {
                Tail::Affine { block, .. } => {
                    matches!(self.target.block(*block), BlockKind::DiscreteSeq)
                }
                _ => false,
            }
        })
    }

    pub fn is_injective(&self) -> bool {
        assert_real(self);
        // a constant tail on a sequence block collapses infinitely many points
        for (rule, kind) in self.rules.iter().zip(self.source.0.iter()) {
            if kind.is_seq() && matches!(rule.tail, Tail::Const(_)) {
                return false;
            }
        }
        // collect single image points: exceptions and compact limits
        let mut points: Vec<Point> = Vec::new();
        for (bi, (rule, kind)) in self.rules.iter().zip(self.source.0.iter()).enumerate() {
            for (_, v) in exceptions(rule) {
                let ExtPoint::Real(p) = v else { unreachable!("real map") };
                points.push(*p);
            }
            if matches!(kind, BlockKind::CompactSeq) {
                let ExtPoint::Real(p) = self.eval_limit(bi) else { unreachable!("real map") };
                points.push(p);
            }
        }
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                if p == q {
                    return false;
                }
            }
        }
        let aps = ap_pieces(self);
        for (p, piece) in points.iter().flat_map(|p| aps.iter().map(move |a| (p, a))) {
            if p.block == piece.target {
                if let PointIndex::At(x) = p.index {
                    if ap_hits(piece.stride, piece.offset, &self.rules[piece.source].exceptions, x)
                    {
                        return false;
                    }
                }
            }
        }
        for (i, a) in aps.iter().enumerate() {
            for b in &aps[i + 1..] {
                if a.target == b.target && aps_compatible(a, b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        assert_real(self);
        self.image_space().covers_space()
    }

    pub fn has_dense_image(&self) -> bool {
        assert_real(self);
        self.image_space().covers_isolated()
    }

    /// Semi-open: every image point has a fiber point whose neighborhood
    /// germ survives into the relative interior of the image. Only target
    /// limits with infinitely many image points around them are at issue;
    /// such a limit needs a compact source block whose affine tail
    /// eventually absorbs every other progression entering the block.
    pub fn is_semi_open(&self) -> bool {
        assert_real(self);
        let aps = ap_pieces(self);
        let image = self.image_space();
        for (t, kind) in self.target.blocks() {
            if !matches!(kind, BlockKind::CompactSeq) || !image.contains(&Point::limit(t)) {
                continue;
            }
            let into: Vec<&ApPiece> = aps.iter().filter(|a| a.target == t).collect();
            if into.is_empty() {
                continue; // the limit is isolated within the image
            }
            let ok = into.iter().any(|witness| {
                witness.source_compact
                    && into
                        .iter()
                        .all(|other| ap_eventually_contains(witness, other))
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// Homeomorphic embedding: injective, isolated points stay relatively
    /// isolated in the image, and around every source limit the image germ
    /// is exactly the tail progression.
    pub fn is_embedding(&self) -> bool {
        assert_real(self);
        if !self.is_injective() {
            return false;
        }
        let aps = ap_pieces(self);
        // exceptions reaching a target limit: fine only if nothing
        // accumulates there
        for rule in &self.rules {
            for (_, v) in exceptions(rule) {
                if let ExtPoint::Real(p) = v {
                    if p.is_limit() && aps.iter().any(|a| a.target == p.block) {
                        return false;
                    }
                }
            }
        }
        // source limits: their progression must eventually absorb every
        // other progression into the same block
        for piece in aps.iter().filter(|a| a.source_compact) {
            let ok = aps
                .iter()
                .filter(|o| o.target == piece.target && o.source != piece.source)
                .all(|other| ap_eventually_contains(piece, other));
            if !ok {
                return false;
            }
        }
        true
    }

    pub fn is_closed_embedding(&self) -> bool {
        self.is_embedding() && self.is_closed_map()
    }

    pub fn is_dense_embedding(&self) -> bool {
        self.is_embedding() && self.has_dense_image()
    }
}

/// All geometric verdicts for one real map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapClass {
    pub open: bool,
    pub quasi_open: bool,
    pub skeletal: bool,
    pub semi_open: bool,
    pub closed: bool,
    pub perfect: bool,
    pub injective: bool,
    pub surjective: bool,
    pub dense_image: bool,
    pub embedding: bool,
    pub closed_embedding: bool,
    pub dense_embedding: bool,
}

impl MapClass {
    pub fn classify(f: &GenMap) -> MapClass {
        MapClass {
            open: f.is_open_map(),
            quasi_open: f.is_quasi_open(),
            skeletal: f.is_skeletal(),
            semi_open: f.is_semi_open(),
            closed: f.is_closed_map(),
            perfect: f.is_perfect(),
            injective: f.is_injective(),
            surjective: f.is_surjective(),
            dense_image: f.has_dense_image(),
            embedding: f.is_embedding(),
            closed_embedding: f.is_closed_embedding(),
            dense_embedding: f.is_dense_embedding(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::{BlockKind::*, Shape};
    use std::collections::BTreeMap;

    fn omega() -> Shape {
        Shape::new(vec![CompactSeq])
    }

    fn nat() -> Shape {
        Shape::new(vec![DiscreteSeq])
    }

    fn seq_map(source: Shape, target: Shape, tail: Tail) -> GenMap {
        GenMap {
            source,
            target,
            rules: vec![BlockRule { exceptions: BTreeMap::new(), tail }],
        }
    }

    #[test]
    fn identity_has_every_good_property() {
        let id = GenMap::identity(&omega());
        let c = MapClass::classify(&id);
        assert!(c.open && c.perfect && c.embedding && c.surjective && c.semi_open);
        assert!(c.closed_embedding && c.dense_embedding);
    }

    #[test]
    fn constant_to_limit() {
        let f = seq_map(omega(), omega(), Tail::Const(ExtPoint::limit(0)));
        assert!(!f.is_skeletal());
        assert!(!f.is_quasi_open());
        assert!(f.is_perfect());
        assert!(f.is_closed_map());
        assert!(f.is_semi_open());
        assert!(!f.is_injective());
        assert!(!f.is_surjective());
    }

    #[test]
    fn nat_into_omega_is_dense_nonclosed_embedding() {
        let f = seq_map(nat(), omega(), Tail::Affine { block: 0, stride: 1, offset: 0 });
        let c = MapClass::classify(&f);
        assert!(c.dense_embedding && c.embedding && c.injective);
        assert!(!c.perfect && !c.closed && !c.closed_embedding);
        assert!(c.open);
        assert!(!c.surjective);
    }

    #[test]
    fn stride_two_self_map_of_omega() {
        let f = seq_map(omega(), omega(), Tail::Affine { block: 0, stride: 2, offset: 0 });
        let c = MapClass::classify(&f);
        assert!(c.injective && c.embedding && c.closed_embedding);
        assert!(!c.open, "image of a limit neighborhood is not open");
        assert!(c.skeletal && c.quasi_open && c.perfect && c.semi_open);
        assert!(!c.dense_image);
    }

    #[test]
    fn fold_of_two_omegas() {
        let sh = Shape::new(vec![CompactSeq, CompactSeq]);
        let f = GenMap {
            source: sh,
            target: omega(),
            rules: vec![
                BlockRule {
                    exceptions: BTreeMap::new(),
                    tail: Tail::Affine { block: 0, stride: 1, offset: 0 },
                },
                BlockRule {
                    exceptions: BTreeMap::new(),
                    tail: Tail::Affine { block: 0, stride: 1, offset: 0 },
                },
            ],
        };
        let c = MapClass::classify(&f);
        assert!(c.surjective && c.open && c.perfect && c.semi_open);
        assert!(!c.injective && !c.embedding);
    }

    #[test]
    fn point_to_limit_is_an_embedding() {
        let f = GenMap {
            source: Shape::new(vec![Fin(1)]),
            target: omega(),
            rules: vec![BlockRule {
                exceptions: [(0, ExtPoint::limit(0))].into(),
                tail: Tail::None,
            }],
        };
        assert!(f.is_embedding());
        assert!(!f.is_quasi_open(), "the isolated point lands on the limit");
        assert!(f.is_closed_embedding());
    }

    #[test]
    fn nat_plus_point_onto_omega_is_not_an_embedding() {
        let sh = Shape::new(vec![DiscreteSeq, Fin(1)]);
        let f = GenMap {
            source: sh,
            target: omega(),
            rules: vec![
                BlockRule {
                    exceptions: BTreeMap::new(),
                    tail: Tail::Affine { block: 0, stride: 1, offset: 0 },
                },
                BlockRule { exceptions: [(0, ExtPoint::limit(0))].into(), tail: Tail::None },
            ],
        };
        assert!(f.is_injective());
        assert!(f.is_surjective());
        assert!(!f.is_embedding());
    }

    #[test]
    fn interleaved_discrete_blocks_embed_densely() {
        let sh = Shape::new(vec![DiscreteSeq, DiscreteSeq]);
        let f = GenMap {
            source: sh,
            target: omega(),
            rules: vec![
                BlockRule {
                    exceptions: BTreeMap::new(),
                    tail: Tail::Affine { block: 0, stride: 2, offset: 0 },
                },
                BlockRule {
                    exceptions: BTreeMap::new(),
                    tail: Tail::Affine { block: 0, stride: 2, offset: 1 },
                },
            ],
        };
        let c = MapClass::classify(&f);
        assert!(c.injective && c.embedding && c.dense_embedding);
        assert!(!c.closed && !c.perfect);
        // the limit is approached but never attained, and no compact block
        // owns the germ
        assert!(!c.surjective);
        assert!(c.semi_open, "the limit is not in the image, nothing to check");
    }

    #[test]
    fn semi_open_fails_when_two_germs_share_a_limit() {
        let sh = Shape::new(vec![CompactSeq, DiscreteSeq]);
        let f = GenMap {
            source: sh,
            target: omega(),
            rules: vec![
                BlockRule {
                    exceptions: BTreeMap::new(),
                    tail: Tail::Affine { block: 0, stride: 2, offset: 0 },
                },
                BlockRule {
                    exceptions: BTreeMap::new(),
                    tail: Tail::Affine { block: 0, stride: 2, offset: 1 },
                },
            ],
        };
        assert!(f.is_injective());
        assert!(!f.is_semi_open());
        assert!(!f.is_embedding());
        // the interleaved twin with both germs on one compact source is fine
        let g = GenMap {
            source: Shape::new(vec![CompactSeq]),
            target: omega(),
            rules: vec![BlockRule {
                exceptions: BTreeMap::new(),
                tail: Tail::Affine { block: 0, stride: 1, offset: 0 },
            }],
        };
        assert!(g.is_semi_open());
    }
}
