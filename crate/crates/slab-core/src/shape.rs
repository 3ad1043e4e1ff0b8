//! Block layouts shared by spaces and algebras, and the points living on them.

use std::fmt;

/// Maximum size of a finite block. Masks are stored in a `u64`.
pub const MAX_FIN_BLOCK: u32 = 64;

/// One block of a block space / block algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// Finite discrete block with `n` points (`1 ..= 64`).
    Fin(u32),
    /// A convergent sequence: the isolated points `0, 1, 2, …` plus one limit.
    CompactSeq,
    /// Discrete `ℕ`.
    DiscreteSeq,
}

impl BlockKind {
    pub fn is_seq(self) -> bool {
        matches!(self, BlockKind::CompactSeq | BlockKind::DiscreteSeq)
    }
}

/// Ordered list of blocks. A `Shape` underlies both a [`crate::zspace::BlockSpace`]
/// and its dual [`crate::balg::BlockAlgebra`]; the duality functors preserve it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Shape(pub Vec<BlockKind>);

impl Shape {
    pub fn new(blocks: Vec<BlockKind>) -> Self {
        for b in &blocks {
            if let BlockKind::Fin(n) = b {
                assert!(*n >= 1 && *n <= MAX_FIN_BLOCK, "finite block size out of range: {n}");
            }
        }
        Shape(blocks)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn block(&self, i: usize) -> BlockKind {
        self.0[i]
    }

    pub fn blocks(&self) -> impl Iterator<Item = (usize, BlockKind)> + '_ {
        self.0.iter().copied().enumerate()
    }

    /// True when the presented space is compact (no discrete-ℕ block).
    pub fn is_compact(&self) -> bool {
        !self.0.iter().any(|b| matches!(b, BlockKind::DiscreteSeq))
    }

    /// Is `(block, At(index))` a valid isolated point of this shape?
    pub fn valid_index(&self, block: usize, index: u32) -> bool {
        match self.0.get(block) {
            Some(BlockKind::Fin(n)) => index < *n,
            Some(_) => true,
            None => false,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match b {
                BlockKind::Fin(n) => write!(f, "fin {n}")?,
                BlockKind::CompactSeq => write!(f, "cseq")?,
                BlockKind::DiscreteSeq => write!(f, "dseq")?,
            }
        }
        write!(f, "]")
    }
}

/// Index of a point inside a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointIndex {
    At(u32),
    /// The limit of a `CompactSeq` block.
    Limit,
}

/// A point of a block space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub block: usize,
    pub index: PointIndex,
}

impl Point {
    pub fn at(block: usize, index: u32) -> Self {
        Point { block, index: PointIndex::At(index) }
    }

    pub fn limit(block: usize) -> Self {
        Point { block, index: PointIndex::Limit }
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.index, PointIndex::Limit)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            PointIndex::At(i) => write!(f, "({}, {})", self.block, i),
            PointIndex::Limit => write!(f, "({}, limit)", self.block),
        }
    }
}

/// A point extended by the *virtual limit* of a discrete-ℕ block: the
/// missing endpoint a sequence escaping to infinity in that block would
/// converge to. Virtual limits never belong to a space; they exist so that
/// homomorphisms violating the compactness side condition still have a
/// spectral presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtPoint {
    Real(Point),
    /// Virtual limit of the given `DiscreteSeq` block of the target space.
    VirtualLimit(usize),
}

impl ExtPoint {
    pub fn at(block: usize, index: u32) -> Self {
        ExtPoint::Real(Point::at(block, index))
    }

    pub fn limit(block: usize) -> Self {
        ExtPoint::Real(Point::limit(block))
    }

    pub fn as_real(&self) -> Option<Point> {
        match self {
            ExtPoint::Real(p) => Some(*p),
            ExtPoint::VirtualLimit(_) => None,
        }
    }

    pub fn is_virtual(&self) -> bool {
        matches!(self, ExtPoint::VirtualLimit(_))
    }
}

impl fmt::Display for ExtPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPoint::Real(p) => write!(f, "{p}"),
            ExtPoint::VirtualLimit(b) => write!(f, "virtual {b}"),
        }
    }
}

/// A finitely described family of atoms: either a single isolated point or
/// the uniform tail `index ≥ start` of a sequence block. Infinite atom
/// families stay finitely presentable this way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomFamily {
    At(Point),
    Tail { block: usize, start: u32 },
}

impl AtomFamily {
    /// A representative point of the family.
    pub fn witness(&self) -> Point {
        match self {
            AtomFamily::At(p) => *p,
            AtomFamily::Tail { block, start } => Point::at(*block, *start),
        }
    }
}
