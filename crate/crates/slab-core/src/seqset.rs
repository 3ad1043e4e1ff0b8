//! Exact arithmetic on decidable subsets of `ℕ`.
//!
//! Two layers: [`SetF`] is the finite/cofinite algebra used for elements of
//! block algebras, and [`SeqSet`] is the larger class (finite sets joined
//! with finitely many arithmetic progressions, minus a finite set) needed to
//! describe images of clopen sets along maps. `SeqSet` membership, coverage
//! and cofiniteness are all decided exactly; nothing here approximates.

use std::collections::BTreeSet;

pub type IdxSet = BTreeSet<u32>;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm128(a: u128, b: u128) -> u128 {
    let g = {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        x
    };
    a / g * b
}

/// Finite or cofinite subset of the index set of one sequence block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetF {
    Fin(IdxSet),
    /// Complement of a finite set.
    CoFin(IdxSet),
}

impl SetF {
    pub fn empty() -> Self {
        SetF::Fin(IdxSet::new())
    }

    pub fn full() -> Self {
        SetF::CoFin(IdxSet::new())
    }

    pub fn fin<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        SetF::Fin(iter.into_iter().collect())
    }

    pub fn cofin<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        SetF::CoFin(iter.into_iter().collect())
    }

    pub fn contains(&self, i: u32) -> bool {
        match self {
            SetF::Fin(s) => s.contains(&i),
            SetF::CoFin(e) => !e.contains(&i),
        }
    }

    pub fn is_cofinite(&self) -> bool {
        matches!(self, SetF::CoFin(_))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SetF::Fin(s) if s.is_empty())
    }

    pub fn is_full(&self) -> bool {
        matches!(self, SetF::CoFin(e) if e.is_empty())
    }

    pub fn complement(&self) -> SetF {
        match self {
            SetF::Fin(s) => SetF::CoFin(s.clone()),
            SetF::CoFin(e) => SetF::Fin(e.clone()),
        }
    }

    pub fn intersect(&self, other: &SetF) -> SetF {
        match (self, other) {
            (SetF::Fin(a), SetF::Fin(b)) => SetF::Fin(a & b),
            (SetF::Fin(a), SetF::CoFin(e)) | (SetF::CoFin(e), SetF::Fin(a)) => {
                SetF::Fin(a - e)
            }
            (SetF::CoFin(a), SetF::CoFin(b)) => SetF::CoFin(a | b),
        }
    }

    pub fn union(&self, other: &SetF) -> SetF {
        match (self, other) {
            (SetF::Fin(a), SetF::Fin(b)) => SetF::Fin(a | b),
            (SetF::Fin(a), SetF::CoFin(e)) | (SetF::CoFin(e), SetF::Fin(a)) => {
                SetF::CoFin(e - a)
            }
            (SetF::CoFin(a), SetF::CoFin(b)) => SetF::CoFin(a & b),
        }
    }

    pub fn subset(&self, other: &SetF) -> bool {
        match (self, other) {
            (SetF::Fin(a), SetF::Fin(b)) => a.is_subset(b),
            (SetF::Fin(a), SetF::CoFin(e)) => a.is_disjoint(e),
            (SetF::CoFin(_), SetF::Fin(_)) => false,
            (SetF::CoFin(a), SetF::CoFin(b)) => b.is_subset(a),
        }
    }

    pub fn disjoint(&self, other: &SetF) -> bool {
        self.intersect(other).is_empty()
    }

    /// Members below `bound` (exclusive), in order.
    pub fn members_below(&self, bound: u32) -> Vec<u32> {
        (0..bound).filter(|i| self.contains(*i)).collect()
    }

    /// For finite sets, the members; `None` when cofinite.
    pub fn as_finite(&self) -> Option<&IdxSet> {
        match self {
            SetF::Fin(s) => Some(s),
            SetF::CoFin(_) => None,
        }
    }
}

/// Arithmetic progression `{ stride·n + offset : n ≥ 0, stride·n + offset ≥ first }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ap {
    pub stride: u32,
    pub offset: u32,
    /// Smallest admитted value; members are `≥ first` and `≡ offset (mod stride)`.
    pub first: u32,
}

impl Ap {
    pub fn new(stride: u32, offset: u32) -> Self {
        assert!(stride >= 1, "progression stride must be positive");
        Ap { stride, offset, first: offset }
    }

    pub fn starting_at(stride: u32, offset: u32, first: u32) -> Self {
        assert!(stride >= 1);
        let mut ap = Ap { stride, offset, first: offset };
        ap.advance_to(first);
        ap
    }

    fn advance_to(&mut self, min: u32) {
        if self.first >= min {
            return;
        }
        let min = min as u64;
        let (s, o) = (self.stride as u64, self.offset as u64 % self.stride as u64);
        let n = if min <= o { o } else { o + (min - o).div_ceil(s) * s };
        self.first = n as u32;
    }

    pub fn contains(&self, i: u32) -> bool {
        i >= self.first && (i as u64 % self.stride as u64) == (self.offset as u64 % self.stride as u64)
    }

    /// Do the two progressions have infinite intersection?
    pub fn meets_infinitely(&self, other: &Ap) -> bool {
        let g = gcd(self.stride as u64, other.stride as u64);
        (self.offset as u64 % g) == (other.offset as u64 % g)
    }

    /// Is `other ∖ self` finite (i.e. `other` eventually contained in `self`)?
    pub fn eventually_contains(&self, other: &Ap) -> bool {
        // every sufficiently large member of `other` lies in `self`
        // iff stride | other.stride and offsets agree mod stride
        other.stride as u64 % self.stride as u64 == 0
            && (other.offset as u64 % self.stride as u64)
                == (self.offset as u64 % self.stride as u64)
    }
}

/// Finite set ∪ finitely many progressions, minus a finite set.
///
/// The workhorse behind image computations. Invariant: `minus` only trims
/// progression members; explicit `points` are never listed in `minus`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SeqSet {
    pub points: IdxSet,
    pub aps: Vec<Ap>,
    pub minus: IdxSet,
}

impl SeqSet {
    pub fn empty() -> Self {
        SeqSet::default()
    }

    pub fn from_points<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        SeqSet { points: iter.into_iter().collect(), aps: Vec::new(), minus: IdxSet::new() }
    }

    pub fn from_setf(s: &SetF) -> Self {
        match s {
            SetF::Fin(set) => SeqSet::from_points(set.iter().copied()),
            SetF::CoFin(e) => SeqSet {
                points: IdxSet::new(),
                aps: vec![Ap::new(1, 0)],
                minus: e.clone(),
            },
        }
    }

    pub fn single_ap(ap: Ap) -> Self {
        SeqSet { points: IdxSet::new(), aps: vec![ap], minus: IdxSet::new() }
    }

    pub fn add_point(&mut self, i: u32) {
        self.minus.remove(&i);
        self.points.insert(i);
    }

    pub fn add_ap(&mut self, ap: Ap) {
        // points previously removed may re-enter through the new progression
        self.minus.retain(|i| !ap.contains(*i));
        self.aps.push(ap);
    }

    pub fn remove_point(&mut self, i: u32) {
        self.points.remove(&i);
        if self.aps.iter().any(|ap| ap.contains(i)) {
            self.minus.insert(i);
        }
    }

    pub fn union_with(&mut self, other: &SeqSet) {
        // a trim survives only when the point is in neither side
        let keep_out: Vec<u32> =
            other.minus.iter().copied().filter(|i| !self.contains(*i)).collect();
        let old_minus = std::mem::take(&mut self.minus);
        self.aps.extend(other.aps.iter().copied());
        self.points.extend(other.points.iter().copied());
        for i in old_minus {
            if !other.contains(i) {
                self.minus.insert(i);
            }
        }
        self.minus.extend(keep_out);
        for p in &self.points {
            self.minus.remove(p);
        }
    }

    pub fn contains(&self, i: u32) -> bool {
        if self.points.contains(&i) {
            return true;
        }
        if self.minus.contains(&i) {
            return false;
        }
        self.aps.iter().any(|ap| ap.contains(i))
    }

    pub fn is_empty(&self) -> bool {
        // a progression minus a finite trim is never empty
        self.points.is_empty() && self.aps.is_empty()
    }

    pub fn is_infinite(&self) -> bool {
        !self.aps.is_empty()
    }

    /// A bound `B` such that membership for `i ≥ B` is决 by progressions
    /// alone (no explicit points or trims reach that far).
    fn stable_bound(&self) -> u32 {
        let mut b = 0u32;
        if let Some(m) = self.points.iter().max() {
            b = b.max(m + 1);
        }
        if let Some(m) = self.minus.iter().max() {
            b = b.max(m + 1);
        }
        for ap in &self.aps {
            b = b.max(ap.first);
        }
        b
    }

    fn period(&self) -> u128 {
        let mut l: u128 = 1;
        for ap in &self.aps {
            l = lcm128(l, ap.stride as u128);
            assert!(l <= 1 << 40, "progression strides too large for exact residue analysis");
        }
        l
    }

    /// Is the set cofinite in `ℕ`?
    pub fn is_cofinite(&self) -> bool {
        if self.aps.is_empty() {
            return false;
        }
        let base = self.stable_bound() as u128;
        let l = self.period();
        (0..l).all(|r| {
            let i = base + r;
            if i > u32::MAX as u128 {
                // beyond representable indices every residue is what its AP says;
                // evaluate on the residue directly via the progressions
                return self.aps.iter().any(|ap| {
                    (i % ap.stride as u128) == (ap.offset as u128 % ap.stride as u128)
                });
            }
            self.contains(i as u32)
        })
    }

    /// Is the set finite? (No progression contributes infinitely many members.)
    pub fn is_finite(&self) -> bool {
        self.aps.is_empty()
    }

    /// The complement within `ℕ`, provided it is finite.
    pub fn cofinite_complement(&self) -> Option<IdxSet> {
        if !self.is_cofinite() {
            return None;
        }
        let base = self.stable_bound();
        let l = self.period() as u64;
        let scan = (base as u64 + l).min(u32::MAX as u64) as u32;
        Some((0..scan).filter(|i| !self.contains(*i)).collect())
    }

    /// Exact conversion to finite/cofinite form when possible.
    pub fn to_setf(&self) -> Option<SetF> {
        if self.is_finite() {
            Some(SetF::Fin(self.points.clone()))
        } else if self.is_cofinite() {
            self.cofinite_complement().map(SetF::CoFin)
        } else {
            None
        }
    }

    /// Members below `bound` (exclusive).
    pub fn members_below(&self, bound: u32) -> Vec<u32> {
        (0..bound).filter(|i| self.contains(*i)).collect()
    }

    /// Does this set have infinite intersection with `other`?
    pub fn meets_infinitely(&self, other: &SeqSet) -> bool {
        self.aps
            .iter()
            .any(|a| other.aps.iter().any(|b| a.meets_infinitely(b)))
    }

    /// Is `other ∖ self` finite?
    pub fn eventually_contains(&self, other: &SeqSet) -> bool {
        // all of other's progressions must eventually sit inside ours
        other.aps.iter().all(|b| {
            if self.aps.iter().any(|a| a.eventually_contains(b)) {
                return true;
            }
            // b may still be eventually covered by a union of our APs
            self.union_eventually_covers(b)
        })
    }

    fn union_eventually_covers(&self, b: &Ap) -> bool {
        if self.aps.is_empty() {
            return false;
        }
        let mut l: u128 = b.stride as u128;
        for ap in &self.aps {
            l = lcm128(l, ap.stride as u128);
            assert!(l <= 1 << 40, "progression strides too large for exact residue analysis");
        }
        let base = self.stable_bound().max(b.first) as u128;
        // b's members have residues offset + k·stride mod l
        let steps = (l / b.stride as u128).max(1);
        (0..steps).all(|k| {
            let v = base + (b.stride as u128) * k + residue_align(b, base);
            self.aps.iter().any(|ap| (v % ap.stride as u128) == (ap.offset as u128 % ap.stride as u128))
        })
    }

    /// Intersect with a finite/cofinite set.
    pub fn intersect_setf(&self, s: &SetF) -> SeqSet {
        match s {
            SetF::Fin(set) => {
                SeqSet::from_points(set.iter().copied().filter(|i| self.contains(*i)))
            }
            SetF::CoFin(e) => {
                let mut out = self.clone();
                for &i in e {
                    out.remove_point(i);
                }
                out
            }
        }
    }

    /// Extensional equality. Both sides are eventually periodic; agreement
    /// below the joint stable bound plus one joint period decides equality.
    pub fn set_eq(&self, other: &SeqSet) -> bool {
        let bound = self.stable_bound().max(other.stable_bound()) as u128;
        let l = lcm128(self.period(), other.period());
        assert!(l <= 1 << 41, "progression strides too large for exact residue analysis");
        let scan = (bound + l).min(u32::MAX as u128) as u32;
        (0..scan).all(|i| self.contains(i) == other.contains(i))
    }

    /// Normalize the infinite part to a single progression when the union is
    /// eventually one progression; returns the progression and the bound from
    /// which the set equals it. Used when re-presenting a set as the index
    /// line of a fresh block.
    pub fn eventual_ap(&self) -> Option<(Ap, u32)> {
        if self.aps.is_empty() {
            return None;
        }
        let l = self.period();
        if l > (1 << 20) {
            return None;
        }
        let l = l as u64;
        let base = self.stable_bound() as u64;
        // residues present beyond base
        let residues: Vec<u64> = (0..l)
            .filter(|r| {
                let i = base + r;
                i <= u32::MAX as u64 && self.contains(i as u32)
            })
            .collect();
        if residues.is_empty() {
            return None;
        }
        // evenly spaced residues with gap g dividing l ⇔ union is one AP of stride g
        if residues.len() == 1 {
            let stride = l;
            if stride > u32::MAX as u64 {
                return None;
            }
            let off = (base + residues[0]) % stride;
            return Some((
                Ap::starting_at(stride as u32, off as u32, (base + residues[0]) as u32),
                (base + residues[0]) as u32,
            ));
        }
        let g = residues[1] - residues[0];
        if l % g != 0 {
            return None;
        }
        for w in residues.windows(2) {
            if w[1] - w[0] != g {
                return None;
            }
        }
        // wrap-around gap must agree as well
        if (residues[0] + l) - residues[residues.len() - 1] != g {
            return None;
        }
        if g > u32::MAX as u64 {
            return None;
        }
        let start = base + residues[0];
        Some((Ap::starting_at(g as u32, (start % g) as u32, start as u32), start as u32))
    }
}

fn residue_align(b: &Ap, base: u128) -> u128 {
    // smallest d ≥ 0 with base + d ≡ offset (mod stride)
    let s = b.stride as u128;
    let o = b.offset as u128 % s;
    let r = base % s;
    if o >= r {
        o - r
    } else {
        o + s - r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn setf_algebra() {
        let a = SetF::fin([0, 1, 2]);
        let b = SetF::cofin([1, 5]);
        assert_eq!(a.intersect(&b), SetF::fin([0, 2]));
        assert_eq!(a.union(&b), SetF::cofin([5]));
        assert_eq!(a.complement().complement(), a);
        assert!(a.subset(&SetF::full()));
        assert!(!SetF::full().subset(&a));
        assert!(SetF::fin([3]).subset(&b));
    }

    #[test]
    fn seqset_cofinite_detection() {
        let mut s = SeqSet::single_ap(Ap::new(2, 0));
        assert!(!s.is_cofinite());
        s.add_ap(Ap::new(2, 1));
        assert!(s.is_cofinite());
        assert_eq!(s.cofinite_complement().unwrap(), IdxSet::new());
        s.remove_point(4);
        let c = s.cofinite_complement().unwrap();
        assert_eq!(c, IdxSet::from([4]));
    }

    #[test]
    fn seqset_eventual_ap() {
        let mut s = SeqSet::single_ap(Ap::new(4, 1));
        s.add_ap(Ap::new(4, 3));
        let (ap, _) = s.eventual_ap().expect("evenly spaced residues");
        assert_eq!(ap.stride, 2);
        assert!(ap.contains(5) && ap.contains(7) && !ap.contains(4));

        let mut t = SeqSet::single_ap(Ap::new(4, 0));
        t.add_ap(Ap::new(4, 1));
        assert!(t.eventual_ap().is_none());
    }

    #[test]
    fn ap_meets() {
        assert!(Ap::new(2, 0).meets_infinitely(&Ap::new(3, 0)));
        assert!(!Ap::new(2, 0).meets_infinitely(&Ap::new(2, 1)));
        assert!(Ap::new(2, 0).eventually_contains(&Ap::new(4, 2)));
        assert!(!Ap::new(4, 2).eventually_contains(&Ap::new(2, 0)));
    }
}
