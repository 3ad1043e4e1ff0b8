//! Computable Stone-type duality on a decidable class of spaces.
//!
//! The library works with *block spaces*: locally compact zero-dimensional
//! Hausdorff spaces presented as finite disjoint sums of three block kinds —
//! finite discrete blocks, convergent sequences (`ω+1`), and copies of
//! discrete `ℕ`. Their duals are *block algebras*: products of finite power
//! sets and finite/cofinite algebras, each carrying a designated dense ideal
//! of compact elements.
//!
//! Everything is exact. Elements, ideals, maps and homomorphisms are all
//! kept in finite/cofinite (or affine-tail) normal forms that are closed
//! under every operation exposed here; an operation whose true result would
//! leave the representable class reports that outcome instead of
//! approximating.
//!
//! Module map:
//! * [`shape`] — block layouts, points, extended points.
//! * [`balg`] — Boolean block algebras, ideals, the simple-ideal
//!   Booleanization, relative algebras, homomorphism extension.
//! * [`zspace`] — the topological side: maps, images, preimages, and
//!   geometric property deciders (open, perfect, skeletal, ...).
//! * [`duality`] — the contravariant functors in both directions together
//!   with verified natural isomorphisms.
//! * [`theorems`] — algebraic condition checkers and the verdict engine
//!   that replays each duality/characterization theorem as an executable
//!   equivalence between the two sides.
//! * [`contact`] — finite contact algebras: cluster spectra, δ-ideal
//!   frames, and the open/regular-closed quotient constructions, all
//!   checked exhaustively at small size.
//! * [`dsl`] — the textual surface used by the CLI, plus the machine
//!   report format.
//! * [`gen`] — seeded random generators for spaces, maps and ideals.
//! * [`oracle`] — truncation models (`ℕ → {0..N}`) that brute-force the
//!   same questions the symbolic deciders answer; used by the test suite
//!   to validate every shape-enumeration reduction.

pub mod balg;
pub mod contact;
pub mod dsl;
pub mod duality;
pub mod gen;
pub mod oracle;
pub mod seqset;
pub mod shape;
pub mod theorems;
pub mod zspace;
