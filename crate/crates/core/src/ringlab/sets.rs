use fixedbitset::FixedBitSet;

use super::ring::FiniteRing;
use crate::error::{Error, Result};

/// A subset of a ring, indexed by element.
pub type ElementSet = FixedBitSet;

fn collect(ring: &FiniteRing, pred: impl Fn(usize) -> bool) -> ElementSet {
    let mut s = FixedBitSet::with_capacity(ring.size());
    for x in 0..ring.size() {
        if pred(x) {
            s.insert(x);
        }
    }
    s
}

/// `{x : a·x·a = a}`.
pub fn g1_set(ring: &FiniteRing, a: usize) -> ElementSet {
    collect(ring, |x| ring.mul3(a, x, a) == a)
}

/// `{x : a·x·a = 0}`.
pub fn d1_set(ring: &FiniteRing, a: usize) -> ElementSet {
    collect(ring, |x| ring.mul3(a, x, a) == ring.zero())
}

/// `{x : x·a = 0}`.
pub fn ann_l(ring: &FiniteRing, a: usize) -> ElementSet {
    collect(ring, |x| ring.mul(x, a) == ring.zero())
}

/// `{x : a·x = 0}`.
pub fn ann_r(ring: &FiniteRing, a: usize) -> ElementSet {
    collect(ring, |x| ring.mul(a, x) == ring.zero())
}

pub fn idempotent_set(ring: &FiniteRing) -> ElementSet {
    collect(ring, |x| ring.mul(x, x) == x)
}

pub fn regular_set(ring: &FiniteRing) -> ElementSet {
    collect(ring, |a| (0..ring.size()).any(|x| ring.mul3(a, x, a) == a))
}

/// Everything the order checks need, tabulated once per ring.
pub struct RingFacts<'r> {
    pub ring: &'r FiniteRing,
    pub idempotents: Vec<usize>,
    pub regular: ElementSet,
    pub units: ElementSet,
    pub left_units: ElementSet,
    pub right_units: ElementSet,
    pub g1: Vec<ElementSet>,
    pub d1: Vec<ElementSet>,
    pub ann_l: Vec<ElementSet>,
    pub ann_r: Vec<ElementSet>,
    /// Idempotents `p` with `ann_l(p) = ann_l(a)`, per `a`.
    p_candidates: Vec<Vec<usize>>,
    /// Idempotents `q` with `ann_r(q) = ann_r(a)`, per `a`.
    q_candidates: Vec<Vec<usize>>,
    /// `below[a]` is the set of `b` with `a ≤⁻ b` by the definition.
    below: Vec<ElementSet>,
}

impl<'r> RingFacts<'r> {
    pub fn new(ring: &'r FiniteRing) -> Self {
        let n = ring.size();
        let idempotents: Vec<usize> = idempotent_set(ring).ones().collect();
        let g1: Vec<ElementSet> = (0..n).map(|a| g1_set(ring, a)).collect();
        let d1 = (0..n).map(|a| d1_set(ring, a)).collect();
        let ann_l: Vec<ElementSet> = (0..n).map(|a| ann_l(ring, a)).collect();
        let ann_r: Vec<ElementSet> = (0..n).map(|a| ann_r(ring, a)).collect();
        let regular = collect(ring, |a| g1[a].count_ones(..) > 0);
        let left_units = collect(ring, |a| (0..n).any(|x| ring.mul(x, a) == ring.one()));
        let right_units = collect(ring, |a| (0..n).any(|x| ring.mul(a, x) == ring.one()));
        let mut units = left_units.clone();
        units.intersect_with(&right_units);
        let p_candidates: Vec<Vec<usize>> =
            (0..n).map(|a| idempotents.iter().copied().filter(|&p| ann_l[p] == ann_l[a]).collect()).collect();
        let q_candidates: Vec<Vec<usize>> =
            (0..n).map(|a| idempotents.iter().copied().filter(|&q| ann_r[q] == ann_r[a]).collect()).collect();
        let below = (0..n)
            .map(|a| {
                collect(ring, |b| {
                    p_candidates[a].iter().any(|&p| ring.mul(p, a) == ring.mul(p, b))
                        && q_candidates[a].iter().any(|&q| ring.mul(a, q) == ring.mul(b, q))
                })
            })
            .collect();
        Self { ring, idempotents, regular, units, left_units, right_units, g1, d1, ann_l, ann_r, p_candidates, q_candidates, below }
    }

    /// `a ≤⁻ b` by the idempotent definition, with the first witness
    /// `(p, q)` in index order.
    pub fn minus_def(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        let r = self.ring;
        let p = self.p_candidates[a].iter().copied().find(|&p| r.mul(p, a) == r.mul(p, b))?;
        let q = self.q_candidates[a].iter().copied().find(|&q| r.mul(a, q) == r.mul(b, q))?;
        Some((p, q))
    }

    /// Tabulated form of [`minus_def`](Self::minus_def).
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[a].contains(b)
    }

    /// `a ≤⁻ b` through an inner inverse `x` of `a` with `x·a = x·b` and
    /// `a·x = b·x`.
    pub fn minus_inner(&self, a: usize, b: usize) -> Result<bool> {
        if !self.regular.contains(a) {
            return Err(Error::NotRegular);
        }
        let r = self.ring;
        Ok(self.g1[a].ones().any(|x| r.mul(x, a) == r.mul(x, b) && r.mul(a, x) == r.mul(b, x)))
    }

    /// `a ≤ₛ b`: `a = b·x = y·b` for some `x`, `y`.
    pub fn space_leq(&self, a: usize, b: usize) -> bool {
        let r = self.ring;
        (0..r.size()).any(|x| r.mul(b, x) == a) && (0..r.size()).any(|y| r.mul(y, b) == a)
    }

    /// `{a·x : x ∈ A}`.
    fn right_ideal(&self, a: usize) -> ElementSet {
        collect(self.ring, |y| (0..self.ring.size()).any(|x| self.ring.mul(a, x) == y))
    }

    /// `ann_r(a·A)`: the `b` with `a·A·b = 0`.
    fn sandwich_annihilator(&self, a: usize) -> ElementSet {
        let mut acc = collect(self.ring, |_| true);
        for y in self.right_ideal(a).ones() {
            acc.intersect_with(&self.ann_r[y]);
        }
        acc
    }

    /// A nonzero `a` with `a·A·a = 0`, if any.
    pub fn semiprime_violation(&self) -> Option<usize> {
        (0..self.ring.size()).find(|&a| a != self.ring.zero() && self.sandwich_annihilator(a).contains(a))
    }

    /// Nonzero `a`, `b` with `a·A·b = 0`, if any.
    pub fn prime_violation(&self) -> Option<(usize, usize)> {
        let zero = self.ring.zero();
        (0..self.ring.size()).filter(|&a| a != zero).find_map(|a| {
            self.sandwich_annihilator(a).ones().find(|&b| b != zero).map(|b| (a, b))
        })
    }
}

/// `a ≤⁻ b` by exhaustive search over idempotent pairs `(p, q)` with
/// `ann_l(a) = ann_l(p)`, `ann_r(a) = ann_r(q)`, `p·a = p·b` and
/// `a·q = b·q`. Returns the first witness in index order.
pub fn minus_leq_def(ring: &FiniteRing, a: usize, b: usize) -> Option<(usize, usize)> {
    let idem: Vec<usize> = idempotent_set(ring).ones().collect();
    let (la, ra) = (ann_l(ring, a), ann_r(ring, a));
    let p = idem.iter().copied().find(|&p| ring.mul(p, a) == ring.mul(p, b) && ann_l(ring, p) == la)?;
    let q = idem.iter().copied().find(|&q| ring.mul(a, q) == ring.mul(b, q) && ann_r(ring, q) == ra)?;
    Some((p, q))
}

/// `a ≤⁻ b` through the inner inverses of a regular `a`.
pub fn minus_leq_inner(ring: &FiniteRing, a: usize, b: usize) -> Result<bool> {
    let g = g1_set(ring, a);
    if g.count_ones(..) == 0 {
        return Err(Error::NotRegular);
    }
    Ok(g.ones().any(|x| ring.mul(x, a) == ring.mul(x, b) && ring.mul(a, x) == ring.mul(b, x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn members(s: &ElementSet) -> Vec<usize> {
        s.ones().collect()
    }

    #[test]
    fn z6_scans() {
        let z = FiniteRing::parse("z6").unwrap();
        assert_eq!(members(&idempotent_set(&z)), vec![0, 1, 3, 4]);
        assert_eq!(members(&g1_set(&z, 2)), vec![2, 5]);
        assert_eq!(d1_set(&z, 0).count_ones(..), 6);
        let facts = RingFacts::new(&z);
        assert!(facts.semiprime_violation().is_none());
        assert!(facts.prime_violation().is_some());
    }

    #[test]
    fn m2gf2_scans() {
        let m = FiniteRing::parse("m2gf2").unwrap();
        let e11 = 1; // digit (1,1)
        assert_eq!(m.label(e11), "[[1,0],[0,0]]");
        assert_eq!(ann_r(&m, e11).count_ones(..), 4);
        let facts = RingFacts::new(&m);
        assert_eq!(facts.units.count_ones(..), 6);
        assert_eq!(facts.regular.count_ones(..), 16);
        assert!(facts.prime_violation().is_none());
        assert_eq!(minus_leq_def(&m, e11, m.one()), Some((e11, e11)));
        assert_eq!(minus_leq_def(&m, m.zero(), e11), Some((m.zero(), m.zero())));
        assert!(minus_leq_inner(&m, m.one(), e11).map(|h| !h).unwrap());
    }

    #[test]
    fn ut2_is_not_semiprime() {
        let u = FiniteRing::parse("ut2gf2").unwrap();
        assert!(RingFacts::new(&u).semiprime_violation().is_some());
    }

    #[test]
    fn literal_and_tabulated_agree() {
        let z = FiniteRing::parse("z6").unwrap();
        let facts = RingFacts::new(&z);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(facts.minus_def(a, b), minus_leq_def(&z, a, b));
                assert_eq!(facts.leq(a, b), facts.minus_def(a, b).is_some());
            }
        }
        let nonregular = FiniteRing::parse("z4").unwrap();
        assert_eq!(minus_leq_inner(&nonregular, 2, 0).unwrap_err(), Error::NotRegular);
    }
}
