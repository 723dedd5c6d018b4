//! Nilpotent orbits of Sp(2n) and SO(N) with local-system sign data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    Sp,
    SO,
}

impl GroupKind {
    /// Parity of the part values that carry signs: even for Sp, odd for SO.
    pub fn marked_parity(self) -> u32 {
        match self {
            GroupKind::Sp => 0,
            GroupKind::SO => 1,
        }
    }

    pub fn is_valid(self, lambda: &Partition) -> bool {
        match self {
            GroupKind::Sp => is_symplectic(lambda),
            GroupKind::SO => is_orthogonal(lambda),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Sp => "Sp",
            GroupKind::SO => "SO",
        })
    }
}

impl FromStr for GroupKind {
    type Err = OrbitError;
    fn from_str(s: &str) -> Result<Self, OrbitError> {
        match s.to_ascii_lowercase().as_str() {
            "sp" | "c" => Ok(GroupKind::Sp),
            "so" | "b" | "d" => Ok(GroupKind::SO),
            _ => Err(OrbitError::Parse(format!("unknown group {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_bool(plus: bool) -> Sign {
        if plus {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `(−1)^k`.
    pub fn parity(k: usize) -> Sign {
        Sign::from_bool(k % 2 == 0)
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign::from_bool(self == Sign::Minus)
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_bool(self == rhs)
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(format!("sign must be 1 or -1, got {v}")),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i8()
    }
}

impl FromStr for Sign {
    type Err = OrbitError;
    fn from_str(s: &str) -> Result<Self, OrbitError> {
        match s.trim() {
            "+" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "-1" => Ok(Sign::Minus),
            other => Err(OrbitError::Parse(format!("bad sign {other:?}"))),
        }
    }
}

/// The tag distinguishing the two SO orbits attached to a partition with
/// only even parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Degenerate {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl FromStr for Degenerate {
    type Err = OrbitError;
    fn from_str(s: &str) -> Result<Self, OrbitError> {
        match s.trim() {
            "+" | "I" | "1" => Ok(Degenerate::Plus),
            "-" | "II" | "2" => Ok(Degenerate::Minus),
            other => Err(OrbitError::Parse(format!("bad degenerate tag {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("{0} is not a symplectic partition")]
    NotSymplectic(Partition),
    #[error("{0} is not an orthogonal partition")]
    NotOrthogonal(Partition),
    #[error("sign data must be defined exactly on {expected:?}, got {got:?}")]
    EpsDomain { expected: Vec<u32>, got: Vec<u32> },
    #[error("{0} needs a degenerate tag")]
    MissingTag(Partition),
    #[error("{0} is not degenerate and takes no tag")]
    UnexpectedTag(Partition),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(u32, u32),
    #[error("{0}")]
    Parse(String),
}

/// Odd parts occur with even multiplicity.
pub fn is_symplectic(lambda: &Partition) -> bool {
    lambda.multiplicities().iter().all(|&(v, m)| v % 2 == 0 || m % 2 == 0)
}

/// Even parts occur with even multiplicity.
pub fn is_orthogonal(lambda: &Partition) -> bool {
    lambda.multiplicities().iter().all(|&(v, m)| v % 2 == 1 || m % 2 == 0)
}

/// The part values that carry a sign: even values for Sp, odd for SO.
pub fn delta(kind: GroupKind, lambda: &Partition) -> Result<BTreeSet<u32>, OrbitError> {
    check_kind(kind, lambda)?;
    Ok(delta_unchecked(kind, lambda))
}

fn delta_unchecked(kind: GroupKind, lambda: &Partition) -> BTreeSet<u32> {
    lambda.parts().iter().copied().filter(|v| v % 2 == kind.marked_parity()).collect()
}

fn check_kind(kind: GroupKind, lambda: &Partition) -> Result<(), OrbitError> {
    match kind {
        GroupKind::Sp if !is_symplectic(lambda) => Err(OrbitError::NotSymplectic(lambda.clone())),
        GroupKind::SO if !is_orthogonal(lambda) => Err(OrbitError::NotOrthogonal(lambda.clone())),
        _ => Ok(()),
    }
}

/// Closure order on orbits of one group: dominance of partitions.
pub fn closure_leq(a: &Partition, b: &Partition) -> Result<bool, OrbitError> {
    if a.size() != b.size() {
        return Err(OrbitError::SizeMismatch(a.size(), b.size()));
    }
    Ok(a.dominated_by(b))
}

/// A partition with signs on its marked part values.
///
/// For SO the signs are a class modulo a global flip, stored through the
/// representative with `+` on the largest marked value; partitions with only
/// even parts carry a [`Degenerate`] tag instead.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedPartition {
    group: GroupKind,
    lambda: Partition,
    eps: BTreeMap<u32, Sign>,
    degenerate: Option<Degenerate>,
}

impl MarkedPartition {
    pub fn new(
        group: GroupKind,
        lambda: Partition,
        eps: BTreeMap<u32, Sign>,
        degenerate: Option<Degenerate>,
    ) -> Result<Self, OrbitError> {
        check_kind(group, &lambda)?;
        let dom = delta_unchecked(group, &lambda);
        if !eps.keys().copied().eq(dom.iter().copied()) {
            return Err(OrbitError::EpsDomain {
                expected: dom.into_iter().collect(),
                got: eps.keys().copied().collect(),
            });
        }
        let needs_tag = group == GroupKind::SO && !lambda.is_empty() && dom.is_empty();
        match (needs_tag, degenerate) {
            (true, None) => return Err(OrbitError::MissingTag(lambda)),
            (false, Some(_)) => return Err(OrbitError::UnexpectedTag(lambda)),
            _ => {}
        }
        let mut eps = eps;
        if group == GroupKind::SO {
            if let Some((_, &top)) = eps.iter().next_back() {
                if top == Sign::Minus {
                    eps.values_mut().for_each(|s| *s = -*s);
                }
            }
        }
        Ok(MarkedPartition { group, lambda, eps, degenerate })
    }

    pub fn sp(lambda: Partition, eps: BTreeMap<u32, Sign>) -> Result<Self, OrbitError> {
        Self::new(GroupKind::Sp, lambda, eps, None)
    }

    pub fn so(lambda: Partition, eps: BTreeMap<u32, Sign>, degenerate: Option<Degenerate>) -> Result<Self, OrbitError> {
        Self::new(GroupKind::SO, lambda, eps, degenerate)
    }

    /// Builds a marked partition with every sign `+`.
    pub fn trivial(group: GroupKind, lambda: Partition, degenerate: Option<Degenerate>) -> Result<Self, OrbitError> {
        let eps = delta_unchecked(group, &lambda).into_iter().map(|v| (v, Sign::Plus)).collect();
        Self::new(group, lambda, eps, degenerate)
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn eps(&self) -> &BTreeMap<u32, Sign> {
        &self.eps
    }

    pub fn degenerate(&self) -> Option<Degenerate> {
        self.degenerate
    }

    pub fn size(&self) -> u32 {
        self.lambda.size()
    }

    /// The sign at a part value; `None` off the marked values.
    pub fn sign_of(&self, value: u32) -> Option<Sign> {
        self.eps.get(&value).copied()
    }

    /// The marked part values.
    pub fn delta(&self) -> BTreeSet<u32> {
        self.eps.keys().copied().collect()
    }

    /// Same orbit: equal partitions and equal degenerate tags.
    pub fn same_orbit(&self, other: &MarkedPartition) -> bool {
        self.group == other.group && self.lambda == other.lambda && self.degenerate == other.degenerate
    }

    /// Closure order between the underlying orbits. Distinct degenerate
    /// orbits with the same partition are incomparable.
    pub fn orbit_leq(&self, other: &MarkedPartition) -> bool {
        if self.lambda == other.lambda {
            return self.degenerate == other.degenerate;
        }
        self.lambda.size() == other.lambda.size() && self.lambda.dominated_by(&other.lambda)
    }

    /// Copy with the degenerate tag replaced (only meaningful for degenerate orbits).
    pub fn with_tag(&self, tag: Option<Degenerate>) -> Result<Self, OrbitError> {
        Self::new(self.group, self.lambda.clone(), self.eps.clone(), tag)
    }
}

impl fmt::Display for MarkedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.group)?;
        for (i, &p) in self.lambda.parts().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            if let Some(s) = self.sign_of(p) {
                write!(f, "{}", s.symbol())?;
            }
        }
        f.write_str(")")?;
        match self.degenerate {
            Some(Degenerate::Plus) => f.write_str("[I]"),
            Some(Degenerate::Minus) => f.write_str("[II]"),
            None => Ok(()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawMarked {
    group: GroupKind,
    lambda: Partition,
    #[serde(default)]
    eps: BTreeMap<u32, Sign>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degenerate: Option<Option<Degenerate>>,
}

impl Serialize for MarkedPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawMarked {
            group: self.group,
            lambda: self.lambda.clone(),
            eps: self.eps.clone(),
            degenerate: (self.group == GroupKind::SO).then_some(self.degenerate),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MarkedPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawMarked::deserialize(d)?;
        MarkedPartition::new(raw.group, raw.lambda, raw.eps, raw.degenerate.flatten())
            .map_err(serde::de::Error::custom)
    }
}

/// Parses value-indexed signs such as `2=+1,4=-1`.
pub fn parse_value_signs(s: &str) -> Result<BTreeMap<u32, Sign>, OrbitError> {
    let mut out = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| OrbitError::Parse(format!("expected value=sign, got {item:?}")))?;
        let key = k.trim().parse::<u32>().map_err(|_| OrbitError::Parse(format!("bad part value {k:?}")))?;
        if out.insert(key, v.parse()?).is_some() {
            return Err(OrbitError::Parse(format!("part value {key} given twice")));
        }
    }
    Ok(out)
}

fn sign_vectors(len: usize) -> impl Iterator<Item = Vec<Sign>> {
    (0..1usize << len).map(move |mask| (0..len).map(|i| Sign::from_bool(mask >> (len - 1 - i) & 1 == 0)).collect())
}

/// Every marked partition of the given total, in a fixed order: partitions
/// in decreasing lexicographic order, then sign vectors over the marked
/// values (largest first) with `+` before `−`.
pub fn enumerate(kind: GroupKind, size: u32) -> Vec<MarkedPartition> {
    let mut out = Vec::new();
    if kind == GroupKind::Sp && size % 2 == 1 {
        return out;
    }
    for lambda in Partition::all(size).into_iter().filter(|l| kind.is_valid(l)) {
        let dom: Vec<u32> = delta_unchecked(kind, &lambda).into_iter().rev().collect();
        if kind == GroupKind::SO && dom.is_empty() && !lambda.is_empty() {
            for tag in [Degenerate::Plus, Degenerate::Minus] {
                out.push(MarkedPartition::so(lambda.clone(), BTreeMap::new(), Some(tag)).expect("valid"));
            }
            continue;
        }
        let free = match kind {
            GroupKind::Sp => dom.len(),
            GroupKind::SO => dom.len().saturating_sub(1),
        };
        let fixed = dom.len() - free;
        for signs in sign_vectors(free) {
            let eps = dom.iter().copied().zip(std::iter::repeat_n(Sign::Plus, fixed).chain(signs)).collect();
            out.push(MarkedPartition::new(kind, lambda.clone(), eps, None).expect("valid"));
        }
    }
    out
}
