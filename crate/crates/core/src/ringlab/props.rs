use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::ring::FiniteRing;
use super::sets::RingFacts;
use crate::error::{Error, Result};

/// The ring identities the oracle knows how to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "String")]
pub enum Proposition {
    /// For regular `a`: the idempotent definition agrees with the inner
    /// inverse formulation `a⁻a = a⁻b`, `aa⁻ = ba⁻`.
    MinusInnerCharacterization,
    /// `a ≤⁻ b` with `b` regular gives `a` regular and `G₁(b) ⊆ G₁(a)`.
    InnerInverseInclusion,
    /// For regular `a`, `b`: `a ≤⁻ b` iff `a = ab⁻b = bb⁻a = ab⁻a` for some
    /// `b⁻ ∈ G₁(b)`.
    SandwichCharacterization,
    /// Multiplying both sides by a unit on either side preserves `≤⁻` both
    /// ways.
    UnitInvariance,
    /// Below an idempotent `p` only idempotents `a = ap = pa` occur.
    IdempotentUpperBound,
    /// `D₁(a) = {x − y : x, y ∈ G₁(a)}` equals `{x : axa = 0}`.
    DifferenceSet,
    /// Semiprime: `a ≤⁻ b` iff `G₁(b) ⊆ G₁(a)` iff `G₁(a) ∩ G₁(b) ≠ ∅` and
    /// `D₁(b) ⊆ D₁(a)`.
    G1Characterization,
    /// Semiprime: `≤⁻` is reflexive, antisymmetric and transitive on the
    /// regular elements.
    PartialOrder,
    /// Semiprime, `b` regular: four equivalent forms of `a ≤ₛ b`.
    SpaceCharacterization,
    /// Semiprime, `a`, `b` regular: `a ≤ₛ b` iff `D₁(b) ⊆ D₁(a)`.
    SpaceD1,
    /// Semiprime: `a ≤⁻ b` iff `a ≤ₛ b` and `G₁(a) ∩ G₁(b) ≠ ∅`.
    MinusViaSpace,
    /// For `a ≤⁻ b`: the inner inverses of `a` compatible with `b` are
    /// exactly `b⁻ − b⁻(b − a)b⁻`.
    G1bParametrization,
    /// For `a ≤⁻ b`: compatible inner inverses of `a` and inner inverses of
    /// `b` agree on `a` from both sides, in both directions.
    G1bTransfer,
    /// Prime characteristic: `c₁a + c₂b` is invertible iff `b` is, with an
    /// explicit inverse.
    CombinationInverse,
    /// Prime ring: regular maximal elements are the one-sided invertibles.
    MaximalOneSided,
    /// Semiprime over a prime field: the nonzero minimal elements are the
    /// rank-one elements and every nonzero element dominates one.
    MinimalRankOne,
}

use Proposition::*;

impl Proposition {
    pub const ALL: [Proposition; 16] = [
        MinusInnerCharacterization,
        InnerInverseInclusion,
        SandwichCharacterization,
        UnitInvariance,
        IdempotentUpperBound,
        DifferenceSet,
        G1Characterization,
        PartialOrder,
        SpaceCharacterization,
        SpaceD1,
        MinusViaSpace,
        G1bParametrization,
        G1bTransfer,
        CombinationInverse,
        MaximalOneSided,
        MinimalRankOne,
    ];

    pub fn id(self) -> &'static str {
        match self {
            MinusInnerCharacterization => "minus-inner-characterization",
            InnerInverseInclusion => "inner-inverse-inclusion",
            SandwichCharacterization => "sandwich-characterization",
            UnitInvariance => "unit-invariance",
            IdempotentUpperBound => "idempotent-upper-bound",
            DifferenceSet => "difference-set",
            G1Characterization => "g1-characterization",
            PartialOrder => "partial-order",
            SpaceCharacterization => "space-characterization",
            SpaceD1 => "space-d1",
            MinusViaSpace => "minus-via-space",
            G1bParametrization => "g1b-parametrization",
            G1bTransfer => "g1b-transfer",
            CombinationInverse => "combination-inverse",
            MaximalOneSided => "maximal-one-sided",
            MinimalRankOne => "minimal-rank-one",
        }
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl From<Proposition> for String {
    fn from(p: Proposition) -> String {
        p.id().to_string()
    }
}

impl FromStr for Proposition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|p| p.id() == s).ok_or_else(|| Error::UnknownProposition(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Verified,
    Skipped { reason: String },
    Counterexample { detail: String, elements: Vec<(String, String)> },
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Verified => "VERIFIED",
            Status::Skipped { .. } => "SKIPPED",
            Status::Counterexample { .. } => "COUNTEREXAMPLE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub prop_id: Proposition,
    pub ring: String,
    #[serde(flatten)]
    pub status: Status,
    /// Number of instances examined.
    pub checked: u64,
    /// Set when the checker ran outside the hypotheses of the statement.
    pub exploratory: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}: {}", self.prop_id, self.ring, self.status.name())?;
        match &self.status {
            Status::Verified => write!(f, " ({} instances)", self.checked)?,
            Status::Skipped { reason } => write!(f, " ({reason})")?,
            Status::Counterexample { detail, elements } => {
                write!(f, " ({detail};")?;
                for (role, label) in elements {
                    write!(f, " {role} = {label}")?;
                }
                write!(f, ")")?;
            }
        }
        if self.exploratory {
            write!(f, " [exploratory]")?;
        }
        if let Some(note) = &self.note {
            write!(f, " [{note}]")?;
        }
        Ok(())
    }
}

/// Whether a checker whose hypotheses fail is skipped or run anyway.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Strict,
    Exploratory,
}

/// Running verdict of one scan.
struct Scan<'a, 'r> {
    facts: &'a RingFacts<'r>,
    checked: u64,
    failure: Option<(String, Vec<(String, String)>)>,
}

impl<'a, 'r> Scan<'a, 'r> {
    fn new(facts: &'a RingFacts<'r>) -> Self {
        Self { facts, checked: 0, failure: None }
    }

    fn done(&self) -> bool {
        self.failure.is_some()
    }

    /// Record one instance. Returns `false` once a counterexample is held.
    fn check(&mut self, ok: bool, detail: &str, elements: &[(&str, usize)]) -> bool {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            let labels = elements.iter().map(|&(role, x)| (role.to_string(), self.facts.ring.label(x).to_string())).collect();
            self.failure = Some((detail.to_string(), labels));
        }
        self.failure.is_none()
    }

    fn status(self) -> (Status, u64) {
        let status = match self.failure {
            None => Status::Verified,
            Some((detail, elements)) => Status::Counterexample { detail, elements },
        };
        (status, self.checked)
    }
}

/// Exhaustive checker for one finite ring. Tables are computed once and
/// shared by all propositions.
pub struct Oracle<'r> {
    facts: RingFacts<'r>,
    semiprime_violation: Option<usize>,
    prime_violation: Option<(usize, usize)>,
}

impl<'r> Oracle<'r> {
    pub fn new(ring: &'r FiniteRing) -> Self {
        let facts = RingFacts::new(ring);
        let semiprime_violation = facts.semiprime_violation();
        let prime_violation = facts.prime_violation();
        Self { facts, semiprime_violation, prime_violation }
    }

    pub fn facts(&self) -> &RingFacts<'r> {
        &self.facts
    }

    pub fn ring(&self) -> &'r FiniteRing {
        self.facts.ring
    }

    pub fn is_semiprime(&self) -> bool {
        self.semiprime_violation.is_none()
    }

    pub fn is_prime(&self) -> bool {
        self.prime_violation.is_none()
    }

    /// The characteristic when it is prime, making the ring a `GF(p)`-algebra.
    fn prime_characteristic(&self) -> Option<usize> {
        let c = self.ring().characteristic();
        crate::field::is_prime(c as u64).then_some(c)
    }

    fn hypothesis_failure(&self, prop: Proposition) -> Option<String> {
        let label = |x: usize| self.ring().label(x).to_string();
        let not_semiprime = || self.semiprime_violation.map(|a| format!("ring not semiprime (a·A·a = 0 for a = {})", label(a)));
        match prop {
            G1Characterization | PartialOrder | SpaceCharacterization | SpaceD1 | MinusViaSpace => not_semiprime(),
            MaximalOneSided => {
                self.prime_violation.map(|(a, b)| format!("ring not prime (a·A·b = 0 for a = {}, b = {})", label(a), label(b)))
            }
            CombinationInverse => {
                self.prime_characteristic().is_none().then(|| "characteristic is not prime; no scalar field".to_string())
            }
            MinimalRankOne => not_semiprime().or_else(|| {
                self.prime_characteristic().is_none().then(|| "characteristic is not prime; rank one is undefined".to_string())
            }),
            _ => None,
        }
    }

    pub fn verify(&self, prop: Proposition, mode: Mode) -> Report {
        let failure = self.hypothesis_failure(prop);
        let exploratory = failure.is_some();
        let note = (prop == CombinationInverse).then(|| "field-generalized".to_string());
        let ring = self.ring().description().to_string();
        if let (Some(reason), Mode::Strict) = (&failure, mode) {
            return Report { prop_id: prop, ring, status: Status::Skipped { reason: reason.clone() }, checked: 0, exploratory: false, note };
        }
        let (status, checked) = self.run(prop);
        Report { prop_id: prop, ring, status, checked, exploratory, note }
    }

    pub fn verify_all(&self, mode: Mode) -> Vec<Report> {
        Proposition::ALL.iter().map(|&p| self.verify(p, mode)).collect()
    }

    fn run(&self, prop: Proposition) -> (Status, u64) {
        let mut scan = Scan::new(&self.facts);
        match prop {
            MinusInnerCharacterization => self.minus_inner_characterization(&mut scan),
            InnerInverseInclusion => self.inner_inverse_inclusion(&mut scan),
            SandwichCharacterization => self.sandwich_characterization(&mut scan),
            UnitInvariance => self.unit_invariance(&mut scan),
            IdempotentUpperBound => self.idempotent_upper_bound(&mut scan),
            DifferenceSet => self.difference_set(&mut scan),
            G1Characterization => self.g1_characterization(&mut scan),
            PartialOrder => self.partial_order(&mut scan),
            SpaceCharacterization => self.space_characterization(&mut scan),
            SpaceD1 => self.space_d1(&mut scan),
            MinusViaSpace => self.minus_via_space(&mut scan),
            G1bParametrization => self.g1b_parametrization(&mut scan),
            G1bTransfer => self.g1b_transfer(&mut scan),
            CombinationInverse => self.combination_inverse(&mut scan),
            MaximalOneSided => self.maximal_one_sided(&mut scan),
            MinimalRankOne => self.minimal_rank_one(&mut scan),
        }
        scan.status()
    }

    fn elements(&self) -> std::ops::Range<usize> {
        0..self.ring().size()
    }

    fn regular(&self) -> Vec<usize> {
        self.facts.regular.ones().collect()
    }

    /// Regular pairs with `a ≤⁻ b`.
    fn regular_minus_pairs(&self) -> Vec<(usize, usize)> {
        let reg = self.regular();
        let mut out = Vec::new();
        for &a in &reg {
            for &b in &reg {
                if self.facts.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn minus_inner_characterization(&self, s: &mut Scan) {
        for a in self.regular() {
            for b in self.elements() {
                let inner = self.facts.minus_inner(a, b).expect("a is regular");
                if !s.check(self.facts.leq(a, b) == inner, "definition and inner-inverse form disagree", &[("a", a), ("b", b)]) {
                    return;
                }
            }
        }
    }

    fn inner_inverse_inclusion(&self, s: &mut Scan) {
        let f = &self.facts;
        for b in self.regular() {
            for a in self.elements() {
                if !f.leq(a, b) {
                    continue;
                }
                let ok = f.regular.contains(a) && f.g1[b].is_subset(&f.g1[a]);
                if !s.check(ok, "a ≤⁻ b but G₁(b) ⊄ G₁(a)", &[("a", a), ("b", b)]) {
                    return;
                }
            }
        }
    }

    fn sandwich_characterization(&self, s: &mut Scan) {
        let (f, r) = (&self.facts, self.ring());
        let reg = self.regular();
        for &a in &reg {
            for &b in &reg {
                let sandwich = f.g1[b].ones().any(|x| {
                    let axb = r.mul3(a, x, b);
                    axb == a && r.mul3(b, x, a) == a && r.mul3(a, x, a) == a
                });
                if !s.check(sandwich == f.leq(a, b), "sandwich form disagrees with the definition", &[("a", a), ("b", b)]) {
                    return;
                }
            }
        }
    }

    fn unit_invariance(&self, s: &mut Scan) {
        let (f, r) = (&self.facts, self.ring());
        let units: Vec<usize> = f.units.ones().collect();
        for a in self.elements() {
            for b in self.elements() {
                let base = f.leq(a, b);
                for &u in &units {
                    let ok = f.leq(r.mul(u, a), r.mul(u, b)) == base && f.leq(r.mul(a, u), r.mul(b, u)) == base;
                    if !s.check(ok, "unit multiplication changed the relation", &[("a", a), ("b", b), ("u", u)]) {
                        return;
                    }
                }
            }
        }
    }

    fn idempotent_upper_bound(&self, s: &mut Scan) {
        let (f, r) = (&self.facts, self.ring());
        for &p in &f.idempotents {
            for a in self.elements() {
                if !f.leq(a, p) {
                    continue;
                }
                let ok = r.mul(a, a) == a && r.mul(a, p) == a && r.mul(p, a) == a;
                if !s.check(ok, "a ≤⁻ p but a is not an idempotent under p", &[("a", a), ("p", p)]) {
                    return;
                }
            }
        }
    }

    fn difference_set(&self, s: &mut Scan) {
        let (f, r) = (&self.facts, self.ring());
        for a in self.regular() {
            let mut diffs = fixedbitset::FixedBitSet::with_capacity(r.size());
            for x in f.g1[a].ones() {
                for y in f.g1[a].ones() {
                    diffs.insert(r.sub(x, y));
                }
            }
            if !s.check(diffs == f.d1[a], "differences of inner inverses differ from D₁(a)", &[("a", a)]) {
                return;
            }
        }
    }

    fn g1_characterization(&self, s: &mut Scan) {
        let f = &self.facts;
        let reg = self.regular();
        for &a in &reg {
            for &b in &reg {
                let one = f.leq(a, b);
                let two = f.g1[b].is_subset(&f.g1[a]);
                let three = !f.g1[a].is_disjoint(&f.g1[b]) && f.d1[b].is_subset(&f.d1[a]);
                if !s.check(one == two && two == three, "the three forms disagree", &[("a", a), ("b", b)]) {
                    return;
                }
            }
        }
    }

    fn partial_order(&self, s: &mut Scan) {
        let f = &self.facts;
        let reg = self.regular();
        for &a in &reg {
            if !s.check(f.leq(a, a), "not reflexive", &[("a", a)]) {
                return;
            }
        }
        for &a in &reg {
            for &b in &reg {
                if !f.leq(a, b) {
                    continue;
                }
                if a != b && !s.check(!f.leq(b, a), "not antisymmetric", &[("a", a), ("b", b)]) {
                    return;
                }
                for &c in &reg {
                    if f.leq(b, c) && !s.check(f.leq(a, c), "not transitive", &[("a", a), ("b", b), ("c", c)]) {
                        return;
                    }
                }
            }
        }
    }

    fn space_characterization(&self, s: &mut Scan) {
        let (f, r) = (&self.facts, self.ring());
        for b in self.regular() {
            for a in self.elements() {
                let one = f.space_leq(a, b);
                let two = f.ann_l[b].is_subset(&f.ann_l[a]) && f.ann_r[b].is_subset(&f.ann_r[a]);
                let three = f.g1[b].ones().all(|x| r.mul3(b, x, a) == a && r.mul3(a, x, b) == a);
                let four = f.d1[b].ones().all(|x| r.mul3(a, x, a) == r.zero());
                let ok = one == two && two == three && three == four;
                if !s.check(ok, "the four space forms disagree", &[("a", a), ("b", b)]) {
                    return;
                }
            }
        }
    }

    fn space_d1(&self, s: &mut Scan) {
        let f = &self.facts;
        let reg = self.regular();
        for &a in &reg {
            for &b in &reg {
                let ok = f.space_leq(a, b) == f.d1[b].is_subset(&f.d1[a]);
                if !s.check(ok, "space order and D₁ inclusion disagree", &[("a", a), ("b", b)]) {
                    return;
                }
            }
        }
    }

    fn minus_via_space(&self, s: &mut Scan) {
        let f = &self.facts;
        let reg = self.regular();
        for &a in &reg {
            for &b in &reg {
                let rhs = f.space_leq(a, b) && !f.g1[a].is_disjoint(&f.g1[b]);
                if !s.check(f.leq(a, b) == rhs, "minus order and space-plus-common-inverse disagree", &[("a", a), ("b", b)]) {
                    return;
                }
            }
        }
    }

    /// `{x ∈ G₁(a) : a·x = b·x, x·a = x·b}`.
    fn compatible_inverses(&self, a: usize, b: usize) -> fixedbitset::FixedBitSet {
        let (f, r) = (&self.facts, self.ring());
        let mut out = f.g1[a].clone();
        for x in f.g1[a].ones() {
            if r.mul(a, x) != r.mul(b, x) || r.mul(x, a) != r.mul(x, b) {
                out.set(x, false);
            }
        }
        out
    }

    fn g1b_parametrization(&self, s: &mut Scan) {
        let (f, r) = (&self.facts, self.ring());
        for (a, b) in self.regular_minus_pairs() {
            let target = self.compatible_inverses(a, b);
            let mut image = fixedbitset::FixedBitSet::with_capacity(r.size());
            let d = r.sub(b, a);
            for x in f.g1[b].ones() {
                image.insert(r.sub(x, r.mul3(x, d, x)));
            }
            if !s.check(image == target, "parametrized set differs from G₁ᵇ(a)", &[("a", a), ("b", b)]) {
                return;
            }
        }
    }

    fn g1b_transfer(&self, s: &mut Scan) {
        let (f, r) = (&self.facts, self.ring());
        for (a, b) in self.regular_minus_pairs() {
            let compat: Vec<usize> = self.compatible_inverses(a, b).ones().collect();
            let matches = |ai: usize, bi: usize| r.mul(bi, a) == r.mul(ai, a) && r.mul(a, bi) == r.mul(a, ai);
            for &ai in &compat {
                if !s.check(f.g1[b].ones().any(|bi| matches(ai, bi)), "no matching inner inverse of b", &[("a", a), ("b", b), ("a⁻", ai)]) {
                    return;
                }
            }
            for bi in f.g1[b].ones() {
                if !s.check(compat.iter().any(|&ai| matches(ai, bi)), "no matching compatible inverse of a", &[("a", a), ("b", b), ("b⁻", bi)]) {
                    return;
                }
            }
        }
    }

    fn combination_inverse(&self, s: &mut Scan) {
        let (f, r) = (&self.facts, self.ring());
        let Some(p) = self.prime_characteristic() else {
            return;
        };
        let inv_mod = |c: usize| (1..p).find(|&x| (c * x) % p == 1).expect("nonzero residue mod a prime");
        let inverse_of = |x: usize| (0..r.size()).find(|&y| r.mul(x, y) == r.one() && r.mul(y, x) == r.one());
        for (a, b) in self.regular_minus_pairs() {
            let b_inv = inverse_of(b);
            for c1 in 0..p {
                for c2 in 1..p {
                    if (c1 + c2) % p == 0 {
                        continue;
                    }
                    let combo = r.add(r.scalar(c1, a), r.scalar(c2, b));
                    let combo_invertible = f.units.contains(combo);
                    let elements = [("a", a), ("b", b)];
                    if !s.check(combo_invertible == b_inv.is_some(), "invertibility of the combination differs from that of b", &elements) {
                        return;
                    }
                    if let Some(bi) = b_inv {
                        let (i2, i12) = (inv_mod(c2), inv_mod((c1 + c2) % p));
                        let coeff = (i12 + p - i2) % p;
                        let formula = r.add(r.scalar(i2, bi), r.scalar(coeff, r.mul3(bi, a, bi)));
                        let ok = r.mul(combo, formula) == r.one() && r.mul(formula, combo) == r.one();
                        if !s.check(ok, "explicit inverse formula fails", &elements) {
                            return;
                        }
                    }
                    if s.done() {
                        return;
                    }
                }
            }
        }
    }

    /// Regular elements with nothing strictly above them.
    pub fn maximal_regular(&self) -> Vec<usize> {
        let f = &self.facts;
        self.regular().into_iter().filter(|&a| self.elements().all(|b| b == a || !f.leq(a, b))).collect()
    }

    fn maximal_one_sided(&self, s: &mut Scan) {
        let f = &self.facts;
        let maximal = self.maximal_regular();
        for a in self.regular() {
            let one_sided = f.left_units.contains(a) || f.right_units.contains(a);
            if !s.check(maximal.contains(&a) == one_sided, "maximality differs from one-sided invertibility", &[("a", a)]) {
                return;
            }
        }
    }

    /// `u ≠ 0` with `u·A·u ⊆ GF(p)·u`.
    pub fn rank_one(&self) -> Vec<usize> {
        let r = self.ring();
        let Some(p) = self.prime_characteristic() else {
            return Vec::new();
        };
        self.elements()
            .filter(|&u| u != r.zero())
            .filter(|&u| {
                let line: Vec<usize> = (0..p).map(|c| r.scalar(c, u)).collect();
                self.elements().all(|x| line.contains(&r.mul3(u, x, u)))
            })
            .collect()
    }

    fn minimal_rank_one(&self, s: &mut Scan) {
        let (f, r) = (&self.facts, self.ring());
        let rank_one = self.rank_one();
        let zero = r.zero();
        for u in self.elements().filter(|&u| u != zero) {
            let minimal = self.elements().all(|v| v == zero || v == u || !f.leq(v, u));
            if !s.check(minimal == rank_one.contains(&u), "minimality differs from rank one", &[("u", u)]) {
                return;
            }
            let dominated = rank_one.iter().any(|&v| f.leq(v, u));
            if !s.check(dominated, "no rank-one element below a nonzero element", &[("a", u)]) {
                return;
            }
        }
    }
}

/// Maximal regular elements against one-sided invertibles, regardless of
/// primality.
#[derive(Clone, Debug, Serialize)]
pub struct MaximalExploration {
    pub ring: String,
    pub maximal: usize,
    pub one_sided_invertible: usize,
    /// Labels of maximal elements that are not one-sided invertible.
    pub maximal_not_invertible: Vec<String>,
    /// Labels of one-sided invertibles that are not maximal.
    pub invertible_not_maximal: Vec<String>,
}

pub fn explore_maximal(ring: &FiniteRing) -> MaximalExploration {
    let oracle = Oracle::new(ring);
    let f = oracle.facts();
    let maximal = oracle.maximal_regular();
    let one_sided: Vec<usize> = (0..ring.size()).filter(|&a| f.left_units.contains(a) || f.right_units.contains(a)).collect();
    MaximalExploration {
        ring: ring.description().to_string(),
        maximal: maximal.len(),
        one_sided_invertible: one_sided.len(),
        maximal_not_invertible: maximal.iter().filter(|a| !one_sided.contains(a)).map(|&a| ring.label(a).to_string()).collect(),
        invertible_not_maximal: one_sided.iter().filter(|a| !maximal.contains(a)).map(|&a| ring.label(a).to_string()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for p in Proposition::ALL {
            assert_eq!(p.id().parse::<Proposition>().unwrap(), p);
        }
        assert_eq!("nope".parse::<Proposition>().unwrap_err(), Error::UnknownProposition("nope".into()));
    }

    #[test]
    fn spec_examples() {
        let m = FiniteRing::parse("m2gf2").unwrap();
        let o = Oracle::new(&m);
        assert_eq!(o.verify(PartialOrder, Mode::Strict).status, Status::Verified);

        let z = FiniteRing::parse("z6").unwrap();
        let o = Oracle::new(&z);
        match o.verify(MaximalOneSided, Mode::Strict).status {
            Status::Skipped { reason } => assert!(reason.starts_with("ring not prime"), "{reason}"),
            other => panic!("{other:?}"),
        }
        assert_eq!(o.verify(G1Characterization, Mode::Strict).status, Status::Verified);
    }

    #[test]
    fn everything_holds_on_m2gf2() {
        let m = FiniteRing::parse("m2gf2").unwrap();
        let o = Oracle::new(&m);
        for report in o.verify_all(Mode::Strict) {
            assert_eq!(report.status, Status::Verified, "{report}");
        }
        assert_eq!(o.maximal_regular().len(), 6);
        assert_eq!(o.rank_one().len(), 9);
    }

    #[test]
    fn report_serializes() {
        let z = FiniteRing::parse("z6").unwrap();
        let r = Oracle::new(&z).verify(CombinationInverse, Mode::Strict);
        let text = r.to_string();
        assert!(text.starts_with("combination-inverse on Z6: SKIPPED"), "{text}");
    }

    #[test]
    fn direct_sum_exploration_runs() {
        let z = FiniteRing::parse("z2+z3").unwrap();
        let e = explore_maximal(&z);
        assert_eq!(e.maximal, 2);
        assert!(e.maximal_not_invertible.is_empty());
    }
}
