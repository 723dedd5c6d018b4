//! Symbols of marked partitions and bipartitions, and the generalized
//! Springer correspondence between them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::orbits::{Degenerate, GroupKind, MarkedPartition, OrbitError, Sign};
use crate::partitions::{Partition, SeqError, TailSeq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("invalid family {0}")]
    InvalidFamily(FamilyKey),
    #[error("bipartition {bip} does not belong to family {key}")]
    WrongSize { key: FamilyKey, bip: Bipartition },
    #[error("split index is required exactly for equal halves in an unordered family: {0}")]
    SplitIndex(Bipartition),
    #[error("symbol construction failed for {what}: {detail}")]
    Inconsistent { what: String, detail: String },
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

fn inconsistent(what: impl fmt::Display, detail: impl Into<String>) -> SymbolError {
    SymbolError::Inconsistent { what: what.to_string(), detail: detail.into() }
}

/// A pair of eventually-arithmetic rows with a defect. When the defect is
/// zero the pair is unordered.
#[derive(Debug, Clone, Eq, Serialize, Deserialize)]
pub struct Symbol {
    pub a: TailSeq,
    pub b: TailSeq,
    pub defect: u32,
    pub ordered: bool,
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Symbol) -> bool {
        if self.defect != other.defect || self.ordered != other.ordered {
            return false;
        }
        (self.a == other.a && self.b == other.b) || (!self.ordered && self.a == other.b && self.b == other.a)
    }
}

impl Symbol {
    fn new(a: TailSeq, b: TailSeq, defect: u32) -> Symbol {
        Symbol { a, b, defect, ordered: defect > 0 }
    }

    /// The merged row `A ⊔ B`.
    pub fn merged(&self) -> Result<TailSeq, SeqError> {
        self.a.union(&self.b)
    }

    /// Finite two-row form: the entries of `A + shift` and `B + shift` that
    /// are nonnegative, listed increasingly.
    pub fn to_classical(&self, shift: i64) -> (Vec<i64>, Vec<i64>) {
        let row = |s: &TailSeq| {
            let mut v: Vec<i64> = s.terms_above(-shift - 1).into_iter().map(|x| x + shift).collect();
            v.reverse();
            v
        };
        (row(&self.a), row(&self.b))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shift = -self.a.tail_start().min(self.b.tail_start()).min(0) + 2;
        let (a, b) = self.to_classical(shift);
        let show = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        write!(f, "[{} / {}]_{}", show(&a), show(&b), self.defect)
    }
}

/// Two symbols are similar when their merged rows agree.
pub fn similar(s: &Symbol, t: &Symbol) -> bool {
    match (s.merged(), t.merged()) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

/// A pair of partitions labelling a character of a type B/C/D Weyl group.
/// In the unordered (type D) case equal halves carry a split index 1 or 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    pub alpha: Partition,
    pub beta: Partition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<u8>,
}

impl Bipartition {
    pub fn new(alpha: Partition, beta: Partition) -> Self {
        Bipartition { alpha, beta, split: None }
    }

    pub fn size(&self) -> u32 {
        self.alpha.size() + self.beta.size()
    }

    /// Puts an unordered pair into its canonical orientation (`alpha >= beta`).
    fn oriented(mut self, unordered: bool) -> Self {
        if unordered && self.alpha < self.beta {
            std::mem::swap(&mut self.alpha, &mut self.beta);
        }
        self
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)?;
        if let Some(i) = self.split {
            write!(f, "_{i}")?;
        }
        Ok(())
    }
}

/// A generalized Springer family: group, total size (2n or N) and defect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyKey {
    pub group: GroupKind,
    pub size: u32,
    pub defect: u32,
}

/// Weyl group types occurring as relative Weyl groups of families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WeylType {
    A,
    B,
    D,
}

impl fmt::Display for WeylType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl fmt::Display for FamilyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}) k={}", self.group, self.size, self.defect)
    }
}

impl FamilyKey {
    pub fn new(group: GroupKind, size: u32, defect: u32) -> Result<Self, SymbolError> {
        let key = FamilyKey { group, size, defect };
        let (k, s) = (u64::from(defect), u64::from(size));
        let ok = match group {
            GroupKind::Sp => s % 2 == 0 && k * (k + 1) <= s,
            GroupKind::SO => (s + k) % 2 == 0 && k * k <= s,
        };
        if ok {
            Ok(key)
        } else {
            Err(SymbolError::InvalidFamily(key))
        }
    }

    /// All families of one group.
    pub fn all(group: GroupKind, size: u32) -> Vec<FamilyKey> {
        (0..=size).filter_map(|k| FamilyKey::new(group, size, k).ok()).collect()
    }

    /// Rank `m` of the relative Weyl group: bipartitions have total `m`.
    pub fn rank(&self) -> u32 {
        let k = self.defect;
        match self.group {
            GroupKind::Sp => self.size / 2 - k * (k + 1) / 2,
            GroupKind::SO => (self.size - k * k) / 2,
        }
    }

    /// Whether bipartitions are unordered pairs (SO with defect zero).
    pub fn is_unordered(&self) -> bool {
        self.group == GroupKind::SO && self.defect == 0
    }

    /// Whether a label with halves `alpha = beta` splits into two. The empty
    /// pair of SO(0) labels a single orbit and does not split.
    fn splits(&self, b: &Bipartition) -> bool {
        self.is_unordered() && b.alpha == b.beta && self.rank() > 0
    }

    pub fn weyl_type(&self) -> WeylType {
        if self.is_unordered() {
            WeylType::D
        } else {
            WeylType::B
        }
    }

    /// The labels of the family in a fixed order.
    pub fn members(&self) -> Vec<Bipartition> {
        let mut out = Vec::new();
        for (alpha, beta) in Partition::all_pairs(self.rank()) {
            if !self.is_unordered() {
                out.push(Bipartition::new(alpha, beta));
            } else if alpha == beta && self.rank() > 0 {
                for i in [1, 2] {
                    out.push(Bipartition { alpha: alpha.clone(), beta: beta.clone(), split: Some(i) });
                }
            } else if alpha >= beta {
                out.push(Bipartition::new(alpha, beta));
            }
        }
        out
    }

    fn check(&self, b: &Bipartition) -> Result<(), SymbolError> {
        if b.size() != self.rank() {
            return Err(SymbolError::WrongSize { key: *self, bip: b.clone() });
        }
        let needs_split = self.splits(b);
        if needs_split != b.split.is_some() || b.split.is_some_and(|i| !(1..=2).contains(&i)) {
            return Err(SymbolError::SplitIndex(b.clone()));
        }
        Ok(())
    }
}

fn split_of(tag: Degenerate) -> u8 {
    match tag {
        Degenerate::Plus => 1,
        Degenerate::Minus => 2,
    }
}

fn tag_of(split: u8) -> Degenerate {
    if split == 1 {
        Degenerate::Plus
    } else {
        Degenerate::Minus
    }
}

/// Offsets defining `A^#, B^#` from `λ`: the shift in `λ + [off, −∞[_1`, the
/// shift used to halve odd entries, and the start of the row added to `z′`.
fn offsets(group: GroupKind) -> (i64, i64, i64) {
    match group {
        GroupKind::Sp => (-1, -1, 1),
        GroupKind::SO => (0, 1, 0),
    }
}

/// The rows `(A^#, B^#)` determined by the partition alone.
fn sharp_rows(group: GroupKind, lambda: &Partition) -> Result<(TailSeq, TailSeq), SeqError> {
    let (off, odd_shift, a_start) = offsets(group);
    let shifted = TailSeq::arithmetic(off, 1).plus_partition(lambda);
    let (evens, odds) = shifted.split_parity()?;
    let z = evens.halve(0)?;
    let z_prime = odds.halve(odd_shift)?;
    Ok((z_prime.add(&TailSeq::arithmetic(a_start, 1))?, z.add(&TailSeq::arithmetic(0, 1))?))
}

/// Finite view of a pair of step-2 rows: every entry above `threshold`, and
/// the maximal runs of consecutive integers in the finite part of the
/// symmetric difference, in increasing order.
struct Window {
    threshold: i64,
    a: BTreeSet<i64>,
    b: BTreeSet<i64>,
    runs: Vec<BTreeSet<i64>>,
}

impl Window {
    fn new(a: &TailSeq, b: &TailSeq) -> Window {
        let lo = a.prefix().iter().chain(b.prefix()).copied().chain([a.tail_start(), b.tail_start()]).min().unwrap();
        let threshold = lo - 3;
        let sa: BTreeSet<i64> = a.terms_above(threshold).into_iter().collect();
        let sb: BTreeSet<i64> = b.terms_above(threshold).into_iter().collect();
        // Tails of different parity fill every integer below the threshold,
        // so the run touching it is infinite and is discarded.
        let infinite_below = (a.tail_start() - b.tail_start()).rem_euclid(2) == 1;
        let diff: Vec<i64> = sa.symmetric_difference(&sb).copied().collect();
        let mut runs: Vec<BTreeSet<i64>> = Vec::new();
        for x in diff {
            match runs.last_mut() {
                Some(r) if r.last() == Some(&(x - 1)) => {
                    r.insert(x);
                }
                _ => runs.push(BTreeSet::from([x])),
            }
        }
        if infinite_below {
            runs.retain(|r| !r.contains(&(threshold + 1)));
        }
        Window { threshold, a: sa, b: sb, runs }
    }
}

/// The marked-symbol sign conventions for SO: `M = |J¹| − |J⁻¹|` with
/// `J^u = {i : ε(i)(−1)^{i+1} = u}`, unmarked (even) parts counted as `+`.
fn so_balance(m: &MarkedPartition) -> i64 {
    m.lambda()
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let s = m.sign_of(v).unwrap_or(Sign::Plus) * Sign::parity(i);
            i64::from(s.as_i8())
        })
        .sum()
}

/// The symbol of a marked partition.
pub fn marked_symbol(m: &MarkedPartition) -> Result<Symbol, SymbolError> {
    let group = m.group();
    let (a_sharp, b_sharp) = sharp_rows(group, m.lambda())?;
    let merged = a_sharp.union(&b_sharp)?;
    if merged.deinterleave()? != (a_sharp.clone(), b_sharp.clone()) {
        return Err(inconsistent(m, "rows A#, B# do not interleave"));
    }
    let win = Window::new(&a_sharp, &b_sharp);
    let marked: Vec<u32> = m.delta().into_iter().collect();
    if marked.len() != win.runs.len() {
        return Err(inconsistent(m, format!("{} intervals for {} marked values", win.runs.len(), marked.len())));
    }
    let balance = if group == GroupKind::SO { so_balance(m) } else { 0 };
    let swap_sign = match group {
        GroupKind::Sp => Sign::Minus,
        GroupKind::SO => -Sign::from_bool(balance >= 0),
    };
    let (mut sa, mut sb) = (win.a.clone(), win.b.clone());
    for (run, value) in win.runs.iter().zip(&marked) {
        if m.sign_of(*value) == Some(swap_sign) {
            let in_a: Vec<i64> = run.intersection(&win.a).copied().collect();
            let in_b: Vec<i64> = run.intersection(&win.b).copied().collect();
            for x in &in_a {
                sa.remove(x);
                sb.insert(*x);
            }
            for x in &in_b {
                sb.remove(x);
                sa.insert(*x);
            }
        }
    }
    let a = a_sharp.with_head_above(win.threshold, sa.into_iter().collect())?;
    let b = b_sharp.with_head_above(win.threshold, sb.into_iter().collect())?;
    let defect = match group {
        GroupKind::SO => balance.unsigned_abs() as u32,
        GroupKind::Sp => sp_defect(&a, &b).ok_or_else(|| inconsistent(m, "tails match no defect"))?,
    };
    Ok(Symbol::new(a, b, defect))
}

/// Reads the defect off the tails of an Sp symbol: `[k, −∞[_2` on one row
/// and `[−k−1, −∞[_2` on the other, the even one on `A`.
fn sp_defect(a: &TailSeq, b: &TailSeq) -> Option<u32> {
    let (a0, b0) = (a.virtual_start()?, b.virtual_start()?);
    let k = if a0 >= 0 { a0 } else { b0 };
    let ok = k >= 0 && a0 + b0 == -1 && (k % 2 == 0) == (a0 == k);
    ok.then_some(k as u32)
}

/// Tail starts `(A, B)` for a family and which of `(α, β)` sits in `A`.
fn family_tails(key: &FamilyKey) -> (i64, i64, bool) {
    let k = i64::from(key.defect);
    match key.group {
        GroupKind::SO => (k, -k, true),
        GroupKind::Sp if k % 2 == 0 => (k, -k - 1, true),
        GroupKind::Sp => (-k - 1, k, false),
    }
}

/// The symbol of a bipartition in a family.
pub fn bip_symbol(key: &FamilyKey, b: &Bipartition) -> Result<Symbol, SymbolError> {
    FamilyKey::new(key.group, key.size, key.defect)?;
    key.check(b)?;
    let (ta, tb, alpha_in_a) = family_tails(key);
    let (first, second) = if alpha_in_a { (&b.alpha, &b.beta) } else { (&b.beta, &b.alpha) };
    Ok(Symbol::new(
        TailSeq::arithmetic(ta, 2).plus_partition(first),
        TailSeq::arithmetic(tb, 2).plus_partition(second),
        key.defect,
    ))
}

/// The generalized Springer correspondence: the family and bipartition of a
/// marked partition.
pub fn gsc_forward(m: &MarkedPartition) -> Result<(FamilyKey, Bipartition), SymbolError> {
    let sym = marked_symbol(m)?;
    let key = FamilyKey::new(m.group(), m.size(), sym.defect)?;
    let (ta, tb, alpha_in_a) = family_tails(&key);
    let peel = |row: &TailSeq, start: i64| {
        row.minus_arithmetic(start, 2).ok_or_else(|| inconsistent(m, format!("cannot peel [{start},-inf[_2 from {row}")))
    };
    let (x, y) = (peel(&sym.a, ta)?, peel(&sym.b, tb)?);
    let bip = if alpha_in_a { Bipartition::new(x, y) } else { Bipartition::new(y, x) };
    let mut bip = bip.oriented(key.is_unordered());
    if key.splits(&bip) {
        let tag = m.degenerate().ok_or_else(|| inconsistent(m, "equal halves for a non-degenerate orbit"))?;
        bip.split = Some(split_of(tag));
    } else if m.degenerate().is_some() {
        return Err(inconsistent(m, "degenerate orbit with unequal halves"));
    }
    if bip.size() != key.rank() {
        return Err(inconsistent(m, "bipartition size does not match the family rank"));
    }
    Ok((key, bip))
}

/// Inverse of [`gsc_forward`].
pub fn gsc_inverse(key: &FamilyKey, b: &Bipartition) -> Result<MarkedPartition, SymbolError> {
    let sym = bip_symbol(key, b)?;
    let group = key.group;
    let (off, odd_shift, a_start) = offsets(group);
    let (a_sharp, b_sharp) = sym.merged()?.deinterleave()?;
    let z_prime = a_sharp.sub_arithmetic(a_start, 1)?;
    let z = b_sharp.sub_arithmetic(0, 1)?;
    let shifted = z.scale(2, 0).union(&z_prime.scale(2, -odd_shift))?;
    let lambda = shifted.minus_arithmetic(off, 1).ok_or_else(|| inconsistent(b, "merged row is not a shifted partition"))?;
    if (a_sharp.clone(), b_sharp.clone()) != sharp_rows(group, &lambda)? {
        return Err(inconsistent(b, "recovered partition does not reproduce its rows"));
    }
    let win = Window::new(&a_sharp, &b_sharp);
    let sa: BTreeSet<i64> = sym.a.terms_above(win.threshold).into_iter().collect();
    let marked: Vec<u32> = crate::orbits::delta(group, &lambda)?.into_iter().collect();
    let mut eps = BTreeMap::new();
    for (run, &value) in win.runs.iter().zip(&marked) {
        let here: BTreeSet<i64> = run.intersection(&sa).copied().collect();
        let kept: BTreeSet<i64> = run.intersection(&win.a).copied().collect();
        let moved: BTreeSet<i64> = run.intersection(&win.b).copied().collect();
        let sign = if here == kept {
            Sign::Plus
        } else if here == moved {
            Sign::Minus
        } else {
            return Err(inconsistent(b, "interval is neither kept nor swapped"));
        };
        eps.insert(value, sign);
    }
    let tag = b.split.map(tag_of);
    let m = MarkedPartition::new(group, lambda, eps, tag)?;
    if marked_symbol(&m)? != sym {
        return Err(inconsistent(b, format!("recovered {m} has a different symbol")));
    }
    Ok(m)
}

/// Tensoring with the sign character: `(α, β) ↦ (ᵗβ, ᵗα)`.
pub fn sign_twist(key: &FamilyKey, b: &Bipartition) -> Bipartition {
    Bipartition { alpha: b.beta.transpose(), beta: b.alpha.transpose(), split: b.split }.oriented(key.is_unordered())
}
