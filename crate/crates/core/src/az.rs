//! The orbit attached to the Aubert–Zelevinsky dual of a tempered unipotent
//! representation of `SO(2n+1)` over a p-adic field.
//!
//! The parameter splits into `GL` blocks (regular nilpotents) and two
//! symplectic blocks for the eigenvalues `±1`. Each symplectic block goes to
//! its sign-twisted minimum and every `GL` block of size `m` becomes `2m`
//! parts equal to 1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::duality::{min_marked, DualityError};
use crate::orbits::{is_symplectic, GroupKind, MarkedPartition, OrbitError, Sign};
use crate::partitions::{Partition, SeqError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AzError {
    #[error("block sizes add up to {got}, expected n = {expected}")]
    SumMismatch { expected: u32, got: u32 },
    #[error("GL block {0} is not regular; only tempered parameters are supported")]
    NonTempered(Partition),
    #[error("GL block sizes must be positive")]
    EmptyGlBlock,
    #[error("the {0} block is not a symplectic marked partition")]
    NotSymplectic(&'static str),
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Duality(#[from] DualityError),
}

/// A `GL` block given either by its size or by its nilpotent, which must be
/// the regular one-row partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GlBlock {
    Size(u32),
    Nilpotent(Partition),
}

impl GlBlock {
    pub fn size(&self) -> Result<u32, AzError> {
        let m = match self {
            GlBlock::Size(m) => *m,
            GlBlock::Nilpotent(p) if p.len() == 1 => p.size(),
            GlBlock::Nilpotent(p) => return Err(AzError::NonTempered(p.clone())),
        };
        if m == 0 {
            return Err(AzError::EmptyGlBlock);
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
struct RawBlock {
    #[serde(default)]
    lambda: Partition,
    #[serde(default)]
    eps: BTreeMap<u32, Sign>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawParam {
    #[serde(default)]
    gl_blocks: Vec<GlBlock>,
    #[serde(default)]
    plus_block: RawBlock,
    #[serde(default)]
    minus_block: RawBlock,
    n: u32,
}

/// A tempered unipotent parameter of `SO(2n+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawParam", into = "RawParam")]
pub struct UnipotentParam {
    pub gl_blocks: Vec<u32>,
    pub plus_block: MarkedPartition,
    pub minus_block: MarkedPartition,
    pub n: u32,
}

fn block(which: &'static str, raw: RawBlock) -> Result<MarkedPartition, AzError> {
    if !is_symplectic(&raw.lambda) {
        return Err(AzError::NotSymplectic(which));
    }
    Ok(MarkedPartition::sp(raw.lambda, raw.eps)?)
}

impl TryFrom<RawParam> for UnipotentParam {
    type Error = AzError;
    fn try_from(raw: RawParam) -> Result<Self, AzError> {
        let gl = raw.gl_blocks.iter().map(GlBlock::size).collect::<Result<Vec<_>, _>>()?;
        UnipotentParam::new(gl, block("plus", raw.plus_block)?, block("minus", raw.minus_block)?, raw.n)
    }
}

impl From<UnipotentParam> for RawParam {
    fn from(p: UnipotentParam) -> RawParam {
        let raw = |m: MarkedPartition| RawBlock { lambda: m.lambda().clone(), eps: m.eps().clone() };
        RawParam {
            gl_blocks: p.gl_blocks.into_iter().map(GlBlock::Size).collect(),
            plus_block: raw(p.plus_block),
            minus_block: raw(p.minus_block),
            n: p.n,
        }
    }
}

impl UnipotentParam {
    pub fn new(
        gl_blocks: Vec<u32>,
        plus_block: MarkedPartition,
        minus_block: MarkedPartition,
        n: u32,
    ) -> Result<Self, AzError> {
        if gl_blocks.contains(&0) {
            return Err(AzError::EmptyGlBlock);
        }
        for (which, b) in [("plus", &plus_block), ("minus", &minus_block)] {
            if b.group() != GroupKind::Sp {
                return Err(AzError::NotSymplectic(which));
            }
        }
        let got = gl_blocks.iter().sum::<u32>() + plus_block.size() / 2 + minus_block.size() / 2;
        if got != n {
            return Err(AzError::SumMismatch { expected: n, got });
        }
        Ok(UnipotentParam { gl_blocks, plus_block, minus_block, n })
    }

    /// Only symplectic blocks, the `−1` block possibly empty.
    pub fn symplectic(plus_block: MarkedPartition, minus_block: MarkedPartition) -> Result<Self, AzError> {
        let n = (plus_block.size() + minus_block.size()) / 2;
        UnipotentParam::new(Vec::new(), plus_block, minus_block, n)
    }
}

/// Outcome of merging the two sign maps on the combined partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MergedEps {
    Merged(BTreeMap<u32, Sign>),
    /// Part values where the two minima disagree; no choice is made.
    Conflict(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualOrbit {
    pub lambda: Partition,
    pub plus_min: MarkedPartition,
    pub minus_min: MarkedPartition,
    pub merged_eps: MergedEps,
    /// Only the orbit is determined, not a full triple.
    pub orbit_only: bool,
}

impl DualOrbit {
    pub fn eps_plus(&self) -> &BTreeMap<u32, Sign> {
        self.plus_min.eps()
    }

    pub fn eps_minus(&self) -> &BTreeMap<u32, Sign> {
        self.minus_min.eps()
    }
}

pub fn az_dual(p: &UnipotentParam) -> Result<DualOrbit, AzError> {
    let plus_min = min_marked(&p.plus_block)?;
    let minus_min = min_marked(&p.minus_block)?;
    let ones = 2 * p.gl_blocks.iter().sum::<u32>();
    let lambda = plus_min.lambda().union(minus_min.lambda()).union(&Partition::new(vec![1; ones as usize])?);
    let mut merged = plus_min.eps().clone();
    let mut conflicts = Vec::new();
    for (&v, &s) in minus_min.eps() {
        match merged.insert(v, s) {
            Some(old) if old != s => conflicts.push(v),
            _ => {}
        }
    }
    let merged_eps = if conflicts.is_empty() { MergedEps::Merged(merged) } else { MergedEps::Conflict(conflicts) };
    debug_assert!(is_symplectic(&lambda));
    Ok(DualOrbit { lambda, plus_min, minus_min, merged_eps, orbit_only: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::parse_value_signs;

    fn sp(l: &[u32], e: &str) -> MarkedPartition {
        MarkedPartition::sp(Partition::new(l.to_vec()).unwrap(), parse_value_signs(e).unwrap()).unwrap()
    }

    #[test]
    fn gl_only() {
        let p = UnipotentParam::new(vec![1, 2], sp(&[], ""), sp(&[], ""), 3).unwrap();
        let d = az_dual(&p).unwrap();
        assert_eq!(d.lambda.parts(), [1, 1, 1, 1, 1, 1]);
        assert_eq!(d.merged_eps, MergedEps::Merged(BTreeMap::new()));
    }

    #[test]
    fn steinberg_goes_to_trivial() {
        let p = UnipotentParam::symplectic(sp(&[2], "2=+1"), sp(&[], "")).unwrap();
        let d = az_dual(&p).unwrap();
        assert_eq!(d.lambda.parts(), [1, 1]);
        assert_eq!(d.plus_min, min_marked(&p.plus_block).unwrap());
    }

    #[test]
    fn input_validation() {
        assert!(matches!(UnipotentParam::new(vec![1], sp(&[2], "2=+1"), sp(&[], ""), 3), Err(AzError::SumMismatch { .. })));
        let js = r#"{"gl_blocks":[[2,1]],"n":3}"#;
        assert!(serde_json::from_str::<UnipotentParam>(js).is_err());
        let js = r#"{"gl_blocks":[[3], 1],"plus_block":{"lambda":[2],"eps":{"2":-1}},"n":5}"#;
        let p: UnipotentParam = serde_json::from_str(js).unwrap();
        assert_eq!(p.gl_blocks, vec![3, 1]);
        assert_eq!(az_dual(&p).unwrap().lambda.size(), 10);
    }

    #[test]
    fn conflicts_are_reported() {
        // Both minima are (2) with opposite signs on the shared value 2.
        let a = sp(&[1, 1], "");
        let b = sp(&[2], "2=-1");
        let (ma, mb) = (min_marked(&a).unwrap(), min_marked(&b).unwrap());
        let p = UnipotentParam::symplectic(a, b).unwrap();
        let d = az_dual(&p).unwrap();
        let expect_conflict = ma.eps().iter().any(|(v, s)| mb.eps().get(v).is_some_and(|t| t != s));
        assert_eq!(matches!(d.merged_eps, MergedEps::Conflict(_)), expect_conflict);
    }
}
