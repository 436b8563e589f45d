use rand::Rng;

use crate::error::{Error, Result};
use crate::field::is_prime;
use crate::random::rng_from_seed;

/// Largest ring the constructors will tabulate.
pub const MAX_RING_SIZE: usize = 4096;

/// Rings up to this size get a full triple-loop axiom check.
const EXHAUSTIVE_AXIOM_LIMIT: usize = 64;
const SAMPLED_AXIOM_TRIPLES: usize = 20_000;

/// A finite unital ring given by addition and multiplication tables over
/// element indices `0..size`.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: usize,
    one: usize,
    description: String,
    labels: Vec<String>,
}

fn checked_size(size: usize) -> Result<usize> {
    if size == 0 || size > MAX_RING_SIZE {
        return Err(Error::RingAxiom(format!("size {size} outside 1..={MAX_RING_SIZE}")));
    }
    Ok(size)
}

fn tabulate(size: usize, op: impl Fn(usize, usize) -> usize) -> Vec<u16> {
    let mut t = Vec::with_capacity(size * size);
    for x in 0..size {
        for y in 0..size {
            t.push(op(x, y) as u16);
        }
    }
    t
}

impl FiniteRing {
    /// Build from tables (row `x`, column `y` at `x * size + y`) and check
    /// the ring axioms.
    pub fn from_tables(
        description: impl Into<String>,
        add: Vec<u16>,
        mul: Vec<u16>,
        zero: usize,
        one: usize,
        labels: Vec<String>,
    ) -> Result<Self> {
        let size = checked_size(labels.len())?;
        if add.len() != size * size || mul.len() != size * size {
            return Err(Error::RingAxiom("table size does not match element count".into()));
        }
        if add.iter().chain(&mul).any(|&v| v as usize >= size) || zero >= size || one >= size {
            return Err(Error::RingAxiom("table entry out of range".into()));
        }
        let mut neg = vec![0u16; size];
        for x in 0..size {
            let inv = (0..size).find(|&y| add[x * size + y] as usize == zero);
            neg[x] = inv.ok_or_else(|| Error::RingAxiom(format!("no additive inverse for {}", labels[x])))? as u16;
        }
        let ring = Self { size, add, mul, neg, zero, one, description: description.into(), labels };
        ring.check_axioms()?;
        Ok(ring)
    }

    fn check_axioms(&self) -> Result<()> {
        let law = |name: &str, ok: bool| if ok { Ok(()) } else { Err(Error::RingAxiom(format!("{name} fails in {}", self.description))) };
        for x in 0..self.size {
            law("additive identity", self.add(x, self.zero) == x && self.add(self.zero, x) == x)?;
            law("multiplicative identity", self.mul(x, self.one) == x && self.mul(self.one, x) == x)?;
            for y in 0..self.size {
                law("additive commutativity", self.add(x, y) == self.add(y, x))?;
            }
        }
        let triple = |x: usize, y: usize, z: usize| -> Result<()> {
            law("additive associativity", self.add(self.add(x, y), z) == self.add(x, self.add(y, z)))?;
            law("multiplicative associativity", self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z)))?;
            law("left distributivity", self.mul(x, self.add(y, z)) == self.add(self.mul(x, y), self.mul(x, z)))?;
            law("right distributivity", self.mul(self.add(x, y), z) == self.add(self.mul(x, z), self.mul(y, z)))
        };
        if self.size <= EXHAUSTIVE_AXIOM_LIMIT {
            for x in 0..self.size {
                for y in 0..self.size {
                    for z in 0..self.size {
                        triple(x, y, z)?;
                    }
                }
            }
        } else {
            let mut rng = rng_from_seed(self.size as u64);
            for _ in 0..SAMPLED_AXIOM_TRIPLES {
                triple(rng.gen_range(0..self.size), rng.gen_range(0..self.size), rng.gen_range(0..self.size))?;
            }
        }
        Ok(())
    }

    /// `M_k(GF(p))`. Element `x` has entry `(i, j)` equal to base-`p` digit
    /// number `i·k + j` of `x`, least significant first.
    pub fn matrix(k: usize, p: u64) -> Result<Self> {
        Self::matrix_like(k, p, false)
    }

    /// Upper-triangular `k×k` matrices over `GF(p)`. Digits enumerate the
    /// entries `(i, j)` with `i ≤ j` in row-major order.
    pub fn upper_triangular(k: usize, p: u64) -> Result<Self> {
        Self::matrix_like(k, p, true)
    }

    fn matrix_like(k: usize, p: u64, triangular: bool) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::RingAxiom("matrix size must be positive".into()));
        }
        let p = p as usize;
        let slots: Vec<(usize, usize)> =
            (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).filter(|&(i, j)| !triangular || i <= j).collect();
        let size = checked_size(
            slots.iter().try_fold(1usize, |acc, _| acc.checked_mul(p).filter(|&s| s <= MAX_RING_SIZE)).unwrap_or(usize::MAX),
        )?;
        let decode = |mut x: usize| {
            let mut m = vec![0usize; k * k];
            for &(i, j) in &slots {
                m[i * k + j] = x % p;
                x /= p;
            }
            m
        };
        let encode = |m: &[usize]| slots.iter().rev().fold(0, |acc, &(i, j)| acc * p + m[i * k + j]);
        let mats: Vec<Vec<usize>> = (0..size).map(decode).collect();
        let add = tabulate(size, |x, y| {
            let s: Vec<usize> = mats[x].iter().zip(&mats[y]).map(|(a, b)| (a + b) % p).collect();
            encode(&s)
        });
        let mul = tabulate(size, |x, y| {
            let (a, b) = (&mats[x], &mats[y]);
            let mut c = vec![0usize; k * k];
            for i in 0..k {
                for j in 0..k {
                    c[i * k + j] = (0..k).map(|l| a[i * k + l] * b[l * k + j]).sum::<usize>() % p;
                }
            }
            encode(&c)
        });
        let mut id = vec![0usize; k * k];
        for i in 0..k {
            id[i * k + i] = 1;
        }
        let labels = mats
            .iter()
            .map(|m| {
                let rows: Vec<String> = m
                    .chunks(k)
                    .map(|r| format!("[{}]", r.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
                    .collect();
                format!("[{}]", rows.join(","))
            })
            .collect();
        let name = if triangular { "UT" } else { "M" };
        Self::from_tables(format!("{name}{k}(GF({p}))"), add, mul, 0, encode(&id), labels)
    }

    /// `Z/nZ`.
    pub fn integers_mod(n: usize) -> Result<Self> {
        let n = checked_size(n)?;
        let add = tabulate(n, |x, y| (x + y) % n);
        let mul = tabulate(n, |x, y| (x * y) % n);
        Self::from_tables(format!("Z{n}"), add, mul, 0, 1 % n, (0..n).map(|x| x.to_string()).collect())
    }

    /// `A ⊕ B`, with `(x, y)` stored at `x + |A|·y`.
    pub fn direct_sum(a: &Self, b: &Self) -> Result<Self> {
        let size = a.size.checked_mul(b.size).filter(|&s| s <= MAX_RING_SIZE).ok_or_else(|| {
            Error::RingAxiom(format!("{}⊕{} exceeds {MAX_RING_SIZE} elements", a.description, b.description))
        })?;
        let split = |x: usize| (x % a.size, x / a.size);
        let join = |x: usize, y: usize| x + a.size * y;
        let add = tabulate(size, |u, v| {
            let ((x1, y1), (x2, y2)) = (split(u), split(v));
            join(a.add(x1, x2), b.add(y1, y2))
        });
        let mul = tabulate(size, |u, v| {
            let ((x1, y1), (x2, y2)) = (split(u), split(v));
            join(a.mul(x1, x2), b.mul(y1, y2))
        });
        let labels = (0..size).map(|u| format!("({}, {})", a.labels[u % a.size], b.labels[u / a.size])).collect();
        Self::from_tables(
            format!("{}⊕{}", a.description, b.description),
            add,
            mul,
            join(a.zero, b.zero),
            join(a.one, b.one),
            labels,
        )
    }

    /// Parse `m<k>gf<p>`, `ut<k>gf<p>`, `z<n>` and `+`-separated direct sums
    /// of those, e.g. `m2gf2+m2gf2`.
    pub fn parse(spec: &str) -> Result<Self> {
        let unknown = || Error::UnknownRing(spec.to_string());
        let term = |t: &str| -> Result<Self> {
            let t = t.trim().to_ascii_lowercase();
            let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
            if let Some(n) = t.strip_prefix('z') {
                return Self::integers_mod(num(n)?);
            }
            let (body, triangular) = match t.strip_prefix("ut") {
                Some(rest) => (rest, true),
                None => (t.strip_prefix('m').ok_or_else(unknown)?, false),
            };
            let (k, p) = body.split_once("gf").ok_or_else(unknown)?;
            let (k, p) = (num(k)?, num(p)? as u64);
            if triangular {
                Self::upper_triangular(k, p)
            } else {
                Self::matrix(k, p)
            }
        };
        let mut parts = spec.split('+');
        let first = term(parts.next().ok_or_else(unknown)?)?;
        parts.try_fold(first, |acc, t| Self::direct_sum(&acc, &term(t)?))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size + y] as usize
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y] as usize
    }

    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn mul3(&self, x: usize, y: usize, z: usize) -> usize {
        self.mul(self.mul(x, y), z)
    }

    /// `c·x` as an `c`-fold sum.
    pub fn scalar(&self, c: usize, x: usize) -> usize {
        (0..c).fold(self.zero, |acc, _| self.add(acc, x))
    }

    /// Additive order of the unit.
    pub fn characteristic(&self) -> usize {
        let mut acc = self.one;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, self.one);
            k += 1;
        }
        k
    }
}
