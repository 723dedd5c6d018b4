//! Integer partitions and eventually-arithmetic decreasing sequences.
//!
//! [`Partition`] is a finite weakly decreasing sequence of positive integers
//! (zeros are never stored). [`TailSeq`] is an infinite weakly decreasing
//! integer sequence made of a finite prefix followed by an arithmetic tail;
//! it is the single carrier for every infinite sequence used by the symbol
//! combinatorics.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("not a partition (parts must be positive and weakly decreasing): {0:?}")]
    NotPartition(Vec<i64>),
    #[error("sequence is not weakly decreasing: {0:?}")]
    NotDecreasing(Vec<i64>),
    #[error("tail step must be positive, got {0}")]
    BadStep(i64),
    #[error("tail multiplicity must be positive")]
    BadMultiplicity,
    #[error("incompatible tails: {0}")]
    IncompatibleTails(String),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
}

/// A finite weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, SeqError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition(parts))
        } else {
            Err(SeqError::NotPartition(parts.into_iter().map(i64::from).collect()))
        }
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted<I: IntoIterator<Item = u32>>(parts: I) -> Self {
        let mut v: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts, written t(λ).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `i`-th part (0-based), zero beyond the length.
    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mult(&self, r: u32) -> usize {
        self.0.iter().filter(|&&p| p == r).count()
    }

    /// Sum of the first `c` parts, zero-padded.
    pub fn partial_sum(&self, c: usize) -> u64 {
        self.0.iter().take(c).map(|&p| u64::from(p)).sum()
    }

    /// Dominance order: `S_c(self) <= S_c(other)` for all `c`.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0u64, 0u64);
        for i in 0..n {
            a += u64::from(self.get(i));
            b += u64::from(other.get(i));
            if a > b {
                return false;
            }
        }
        true
    }

    pub fn union(&self, other: &Partition) -> Partition {
        Partition::from_unsorted(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn add(&self, other: &Partition) -> Partition {
        let n = self.len().max(other.len());
        Partition((0..n).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// The conjugate partition.
    pub fn transpose(&self) -> Partition {
        let first = self.get(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Distinct part values with their multiplicities, largest first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut m: BTreeMap<u32, usize> = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_default() += 1;
        }
        m.into_iter().rev().collect()
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions `(α, β)` with `|α| + |β| = n`, ordered by `|α|` descending.
    pub fn all_pairs(n: u32) -> Vec<(Partition, Partition)> {
        let mut out = Vec::new();
        for a in (0..=n).rev() {
            for alpha in Partition::all(a) {
                for beta in Partition::all(n - a) {
                    out.push((alpha.clone(), beta));
                }
            }
        }
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = SeqError;
    fn try_from(v: Vec<u32>) -> Result<Self, SeqError> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Accepts `3,3,1`, `(3,3,1)`, `[3,3,1]` or the empty string.
impl FromStr for Partition {
    type Err = SeqError;
    fn from_str(s: &str) -> Result<Self, SeqError> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| SeqError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

/// An infinite weakly decreasing integer sequence: a finite prefix followed
/// by the tail `a, …, a, a−s, …, a−s, a−2s, …` in which each value repeats
/// `tail_mult` times (usually once).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTailSeq", into = "RawTailSeq")]
pub struct TailSeq {
    prefix: Vec<i64>,
    tail_start: i64,
    tail_step: i64,
    tail_mult: usize,
}

#[derive(Serialize, Deserialize)]
struct RawTailSeq {
    prefix: Vec<i64>,
    tail_start: i64,
    tail_step: i64,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    tail_mult: usize,
}

fn one() -> usize {
    1
}

fn is_one(m: &usize) -> bool {
    *m == 1
}

impl TryFrom<RawTailSeq> for TailSeq {
    type Error = SeqError;
    fn try_from(r: RawTailSeq) -> Result<Self, SeqError> {
        TailSeq::with_multiplicity(r.prefix, r.tail_start, r.tail_step, r.tail_mult)
    }
}

impl From<TailSeq> for RawTailSeq {
    fn from(t: TailSeq) -> Self {
        RawTailSeq { prefix: t.prefix, tail_start: t.tail_start, tail_step: t.tail_step, tail_mult: t.tail_mult }
    }
}

impl TailSeq {
    pub fn new(prefix: Vec<i64>, tail_start: i64, tail_step: i64) -> Result<Self, SeqError> {
        Self::with_multiplicity(prefix, tail_start, tail_step, 1)
    }

    pub fn with_multiplicity(
        prefix: Vec<i64>,
        tail_start: i64,
        tail_step: i64,
        tail_mult: usize,
    ) -> Result<Self, SeqError> {
        if tail_step < 1 {
            return Err(SeqError::BadStep(tail_step));
        }
        if tail_mult == 0 {
            return Err(SeqError::BadMultiplicity);
        }
        let decreasing = prefix.windows(2).all(|w| w[0] >= w[1]) && prefix.last().is_none_or(|&l| l >= tail_start);
        if !decreasing {
            return Err(SeqError::NotDecreasing(prefix));
        }
        let mut t = TailSeq { prefix, tail_start, tail_step, tail_mult };
        t.canonicalize();
        Ok(t)
    }

    /// `[a, −∞[_s = (a, a−s, a−2s, …)`.
    pub fn arithmetic(a: i64, s: u32) -> Self {
        assert!(s >= 1, "arithmetic step must be positive");
        TailSeq { prefix: Vec::new(), tail_start: a, tail_step: i64::from(s), tail_mult: 1 }
    }

    fn canonicalize(&mut self) {
        let m = self.tail_mult;
        loop {
            let n = self.prefix.len();
            let next = self.tail_start + self.tail_step;
            if n >= m && self.prefix[n - m..].iter().all(|&x| x == next) {
                self.prefix.truncate(n - m);
                self.tail_start = next;
            } else {
                break;
            }
        }
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    pub fn tail_start(&self) -> i64 {
        self.tail_start
    }

    pub fn tail_step(&self) -> i64 {
        self.tail_step
    }

    pub fn tail_multiplicity(&self) -> usize {
        self.tail_mult
    }

    /// The `i`-th term (0-based).
    pub fn term(&self, i: usize) -> i64 {
        match self.prefix.get(i) {
            Some(&x) => x,
            None => {
                let j = (i - self.prefix.len()) / self.tail_mult;
                self.tail_start - self.tail_step * j as i64
            }
        }
    }

    /// The first `n` terms.
    pub fn head(&self, n: usize) -> Vec<i64> {
        (0..n).map(|i| self.term(i)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        (0..).map(move |i| self.term(i))
    }

    /// All terms strictly greater than `threshold`.
    pub fn terms_above(&self, threshold: i64) -> Vec<i64> {
        self.iter().take_while(|&x| x > threshold).collect()
    }

    /// The value the tail would take at index 0 if extended backwards.
    /// Only meaningful for simple tails (multiplicity one).
    pub fn virtual_start(&self) -> Option<i64> {
        (self.tail_mult == 1).then(|| self.tail_start + self.tail_step * self.prefix.len() as i64)
    }

    pub fn mult(&self, r: i64) -> usize {
        let in_prefix = self.prefix.iter().filter(|&&x| x == r).count();
        let in_tail = r <= self.tail_start && (self.tail_start - r) % self.tail_step == 0;
        in_prefix + if in_tail { self.tail_mult } else { 0 }
    }

    pub fn partial_sum(&self, c: usize) -> i64 {
        self.iter().take(c).sum()
    }

    /// Dominance on partial sums over all `c >= 1`.
    ///
    /// Both tails must have the same step and multiplicity; otherwise the
    /// difference of partial sums is unbounded in a way this routine does not
    /// try to classify, and an error is returned.
    pub fn dominance_leq(&self, other: &TailSeq) -> Result<bool, SeqError> {
        if self.tail_step != other.tail_step || self.tail_mult != other.tail_mult {
            return Err(SeqError::IncompatibleTails(format!(
                "steps {}/{} and multiplicities {}/{}",
                self.tail_step, other.tail_step, self.tail_mult, other.tail_mult
            )));
        }
        let m = self.tail_mult;
        // Beyond `k` both sequences are in their tails and the termwise
        // difference is periodic with period `m`.
        let k = self.prefix.len().max(other.prefix.len()) + m;
        let per_period: i64 = (k..k + m).map(|i| self.term(i) - other.term(i)).sum();
        if per_period > 0 {
            return Ok(false);
        }
        let mut acc = 0i64;
        for i in 0..k + m {
            acc += self.term(i) - other.term(i);
            if acc > 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Multiset union of two sequences, sorted decreasingly.
    ///
    /// Supported when the tails share a step and either share a residue
    /// class (multiplicities add) or interleave at half the step with equal
    /// multiplicities (the step halves).
    pub fn union(&self, other: &TailSeq) -> Result<TailSeq, SeqError> {
        let incompatible = || {
            SeqError::IncompatibleTails(format!(
                "cannot merge tails [{},-inf[_{} and [{},-inf[_{}",
                self.tail_start, self.tail_step, other.tail_start, other.tail_step
            ))
        };
        if self.tail_step != other.tail_step {
            return Err(incompatible());
        }
        let s = self.tail_step;
        let (a, b) = (self.tail_start, other.tail_start);
        let offset = (a - b).rem_euclid(s);
        let (new_step, new_mult, b_reach) = if offset == 0 {
            (s, self.tail_mult + other.tail_mult, 0)
        } else if s % 2 == 0 && offset == s / 2 && self.tail_mult == other.tail_mult {
            (s / 2, self.tail_mult, s / 2)
        } else {
            return Err(incompatible());
        };
        let lo = self
            .prefix
            .iter()
            .chain(other.prefix.iter())
            .copied()
            .chain([a, b + b_reach])
            .min()
            .expect("nonempty");
        // Largest value congruent to `a` mod `s` that is strictly below `lo`.
        let threshold = a - s * ((a - lo) / s + 1);
        let mut head = self.terms_above(threshold);
        head.extend(other.terms_above(threshold));
        head.sort_unstable_by(|x, y| y.cmp(x));
        TailSeq::with_multiplicity(head, threshold, new_step, new_mult)
    }

    /// Termwise sum; both tails must be simple (multiplicity one).
    pub fn add(&self, other: &TailSeq) -> Result<TailSeq, SeqError> {
        if self.tail_mult != 1 || other.tail_mult != 1 {
            return Err(SeqError::IncompatibleTails("termwise sum needs simple tails".into()));
        }
        let n = self.prefix.len().max(other.prefix.len());
        let head = (0..n).map(|i| self.term(i) + other.term(i)).collect();
        TailSeq::new(head, self.term(n) + other.term(n), self.tail_step + other.tail_step)
    }

    /// Termwise sum with a zero-padded partition.
    pub fn plus_partition(&self, p: &Partition) -> TailSeq {
        let m = self.tail_mult;
        let pl = self.prefix.len();
        let n = if p.len() <= pl { pl } else { pl + (p.len() - pl).div_ceil(m) * m };
        let head = (0..n).map(|i| self.term(i) + i64::from(p.get(i))).collect();
        TailSeq::with_multiplicity(head, self.term(n), self.tail_step, m).expect("sum of decreasing sequences")
    }

    /// Returns `self − [a, −∞[_s` when that difference is a partition
    /// (zero-padded), and `None` otherwise.
    pub fn minus_arithmetic(&self, a: i64, s: u32) -> Option<Partition> {
        let s = i64::from(s);
        if self.tail_mult != 1 || self.tail_step != s {
            return None;
        }
        let n = self.prefix.len();
        if self.tail_start - (a - s * n as i64) != 0 {
            return None;
        }
        let diffs: Vec<i64> = (0..n).map(|i| self.term(i) - (a - s * i as i64)).collect();
        if diffs.iter().any(|&d| d < 0) || diffs.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        Some(Partition::from_unsorted(diffs.into_iter().map(|d| d as u32)))
    }

    /// Termwise `self − [a, −∞[_s`. The tail must be simple with step larger
    /// than `s`, and the difference must stay weakly decreasing.
    pub fn sub_arithmetic(&self, a: i64, s: u32) -> Result<TailSeq, SeqError> {
        let s = i64::from(s);
        if self.tail_mult != 1 || self.tail_step <= s {
            return Err(SeqError::IncompatibleTails(format!(
                "cannot subtract step {s} from a tail of step {}",
                self.tail_step
            )));
        }
        let n = self.prefix.len();
        let head = (0..n).map(|i| self.term(i) - (a - s * i as i64)).collect();
        TailSeq::new(head, self.term(n) - (a - s * n as i64), self.tail_step - s)
    }

    /// Applies `x ↦ factor·x + shift` with `factor >= 1`.
    pub fn scale(&self, factor: i64, shift: i64) -> TailSeq {
        assert!(factor >= 1, "scale factor must be positive");
        TailSeq::with_multiplicity(
            self.prefix.iter().map(|&x| factor * x + shift).collect(),
            factor * self.tail_start + shift,
            factor * self.tail_step,
            self.tail_mult,
        )
        .expect("increasing affine maps preserve order")
    }

    /// Builds a sequence from materialized terms whose last three entries are
    /// already in a simple arithmetic tail.
    fn refit(terms: Vec<i64>) -> Result<TailSeq, SeqError> {
        let n = terms.len();
        debug_assert!(n >= 3 && terms[n - 3] - terms[n - 2] == terms[n - 2] - terms[n - 1]);
        let step = terms[n - 2] - terms[n - 1];
        let start = terms[n - 1];
        TailSeq::new(terms[..n - 1].to_vec(), start, step)
    }

    /// Splits into the subsequences at even and odd positions (0-based).
    pub fn deinterleave(&self) -> Result<(TailSeq, TailSeq), SeqError> {
        if self.tail_mult > 2 {
            return Err(SeqError::IncompatibleTails("deinterleave needs tail multiplicity 1 or 2".into()));
        }
        let mut len = self.prefix.len() + 12;
        len += len % 2;
        let terms = self.head(len);
        let first = terms.iter().step_by(2).copied().collect();
        let second = terms.iter().skip(1).step_by(2).copied().collect();
        Ok((Self::refit(first)?, Self::refit(second)?))
    }

    /// Splits a simple tail with odd step into its even and odd values.
    pub fn split_parity(&self) -> Result<(TailSeq, TailSeq), SeqError> {
        if self.tail_mult != 1 || self.tail_step % 2 == 0 {
            return Err(SeqError::IncompatibleTails("parity split needs a simple odd-step tail".into()));
        }
        let terms = self.head(self.prefix.len() + 8);
        let evens = terms.iter().copied().filter(|x| x % 2 == 0).collect();
        let odds = terms.iter().copied().filter(|x| x % 2 != 0).collect();
        Ok((Self::refit(evens)?, Self::refit(odds)?))
    }

    /// Applies `x ↦ (x + shift) / 2`; every `x + shift` must be even.
    pub fn halve(&self, shift: i64) -> Result<TailSeq, SeqError> {
        let even = |x: i64| (x + shift) % 2 == 0;
        if !self.prefix.iter().all(|&x| even(x)) || !even(self.tail_start) || self.tail_step % 2 != 0 {
            return Err(SeqError::IncompatibleTails("halving needs even shifted values".into()));
        }
        TailSeq::with_multiplicity(
            self.prefix.iter().map(|&x| (x + shift) / 2).collect(),
            (self.tail_start + shift) / 2,
            self.tail_step / 2,
            self.tail_mult,
        )
    }

    /// Replaces every term above `threshold` by `head` (sorted decreasingly,
    /// all entries above `threshold`), keeping the terms at or below it.
    pub fn with_head_above(&self, threshold: i64, mut head: Vec<i64>) -> Result<TailSeq, SeqError> {
        head.sort_unstable_by(|x, y| y.cmp(x));
        let cut = self.terms_above(threshold).len();
        if cut < self.prefix.len() {
            head.extend_from_slice(&self.prefix[cut..]);
            TailSeq::with_multiplicity(head, self.tail_start, self.tail_step, self.tail_mult)
        } else {
            TailSeq::with_multiplicity(head, self.term(cut), self.tail_step, self.tail_mult)
        }
    }
}

impl fmt::Display for TailSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = self.prefix.len() + 3 * self.tail_mult;
        let body: Vec<String> = self.head(shown).iter().map(i64::to_string).collect();
        write!(f, "({},…)", body.join(","))
    }
}

/// `Λ_{A,B;s}(μ,ν) = (μ + [A,−∞[_s) ⊔ (ν + [B,−∞[_s)`.
pub fn lambda_seq(a: i64, b: i64, s: u32, mu: &Partition, nu: &Partition) -> Result<TailSeq, SeqError> {
    let left = TailSeq::arithmetic(a, s).plus_partition(mu);
    let right = TailSeq::arithmetic(b, s).plus_partition(nu);
    left.union(&right)
}
