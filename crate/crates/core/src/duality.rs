//! The recursive algorithms computing the closure-maximal constituent
//! `(λmax, εmax)` of a marked partition, its sign-twisted minimum, and the
//! orbit of the dual of a tempered parameter.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::orbits::{GroupKind, MarkedPartition, OrbitError, Sign};
use crate::partitions::Partition;
use crate::symbols::{gsc_forward, gsc_inverse, sign_twist, SymbolError};

/// Sign given to the infinite zero tail in the Sp recursion.
pub const DEFAULT_TAIL_SIGN: Sign = Sign::Plus;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("part {0} has the wrong parity for this step")]
    WrongParity(u32),
    #[error("{parts} parts but {signs} signs")]
    LengthMismatch { parts: usize, signs: usize },
    #[error("conflicting signs for repeated part {0}")]
    SignConflict(u32),
    #[error("recursion broke an invariant: {0}")]
    Convention(String),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
}

/// One step of the recursion: the first output part and sign, and the
/// smaller marked partition (positional signs) the recursion continues on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepResult {
    pub first_part: u32,
    pub first_sign: Sign,
    pub remainder: Vec<(u32, Sign)>,
    /// The anchor positions (1-based): 𝔖 for SO, the finite part of 𝕆 for Sp.
    pub anchors: Vec<usize>,
    /// Positions outside the anchors with `ε(i)(−1)^{i+1} = +1`.
    pub j_plus: Vec<usize>,
    /// Positions outside the anchors with `ε(i)(−1)^{i+1} = −1`.
    pub j_minus: Vec<usize>,
    /// Number of non-anchor positions; SO only.
    pub r_prime: Option<usize>,
}

fn check_input(lambda: &[u32], eps: &[Sign], parity: u32) -> Result<(), DualityError> {
    if lambda.len() != eps.len() {
        return Err(DualityError::LengthMismatch { parts: lambda.len(), signs: eps.len() });
    }
    if let Some(&bad) = lambda.iter().find(|&&v| v % 2 != parity) {
        return Err(DualityError::WrongParity(bad));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) || lambda.contains(&0) {
        return Err(DualityError::Convention(format!("{lambda:?} is not a partition")));
    }
    Ok(())
}

/// Shared bookkeeping: anchors are position 1 and every position whose sign
/// repeats the previous one; the rest split by `ε(i)(−1)^{i+1}`.
fn classify(eps: &[Sign]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let (mut anchors, mut plus, mut minus) = (vec![1], Vec::new(), Vec::new());
    for i in 2..=eps.len() {
        if eps[i - 1] == eps[i - 2] {
            anchors.push(i);
        } else if eps[i - 1] * Sign::parity(i + 1) == Sign::Plus {
            plus.push(i);
        } else {
            minus.push(i);
        }
    }
    (anchors, plus, minus)
}

/// Splits the non-anchor positions into those keeping their part and sign
/// (`J̃^{ε(1)}`) and those raised by two with the sign flipped.
fn moved(lambda: &[u32], eps: &[Sign], plus: &[usize], minus: &[usize]) -> (Vec<(u32, Sign)>, usize) {
    let e1 = eps[0];
    let (same, other) = if e1 == Sign::Plus { (plus, minus) } else { (minus, plus) };
    let mut out: Vec<(usize, u32, Sign)> = same.iter().map(|&j| (j, lambda[j - 1], eps[j - 1])).collect();
    out.extend(other.iter().map(|&j| (j, lambda[j - 1] + 2, -eps[j - 1])));
    out.sort_by_key(|&(j, _, _)| j);
    (out.into_iter().map(|(_, v, s)| (v, s)).collect(), other.len())
}

/// One step of the SO recursion on a partition with only odd parts.
pub fn so_step(lambda: &[u32], eps: &[Sign]) -> Result<StepResult, DualityError> {
    check_input(lambda, eps, 1)?;
    if lambda.is_empty() {
        return Err(DualityError::Convention("empty input to so_step".into()));
    }
    let (anchors, j_plus, j_minus) = classify(eps);
    let (mut remainder, raised) = moved(lambda, eps, &j_plus, &j_minus);
    let anchor_sum: u32 = anchors.iter().map(|&i| lambda[i - 1]).sum();
    let even_anchors = anchors.len() % 2 == 0;
    let first = anchor_sum as i64 - 2 * raised as i64 - i64::from(even_anchors);
    let r_prime = j_plus.len() + j_minus.len();
    if even_anchors {
        remainder.push((1, Sign::parity(r_prime) * eps[0]));
    }
    if remainder.windows(2).any(|w| w[0].0 < w[1].0) {
        return Err(DualityError::Convention(format!("unsorted remainder {remainder:?}")));
    }
    finish(lambda, first, eps[0], remainder, anchors, j_plus, j_minus, Some(r_prime))
}

/// One step of the Sp recursion on a partition with only even parts; the
/// zero tail carries `tail_sign`.
pub fn sp_step(lambda: &[u32], eps: &[Sign], tail_sign: Sign) -> Result<StepResult, DualityError> {
    check_input(lambda, eps, 0)?;
    if lambda.is_empty() {
        return Err(DualityError::Convention("empty input to sp_step".into()));
    }
    // Beyond position t+1 every sign equals the tail sign, so all those
    // positions are anchors and contribute zero parts.
    let mut parts = lambda.to_vec();
    parts.push(0);
    let mut signs = eps.to_vec();
    signs.push(tail_sign);
    let (anchors, j_plus, j_minus) = classify(&signs);
    let (moved_parts, raised) = moved(&parts, &signs, &j_plus, &j_minus);
    let anchor_sum: u32 = anchors.iter().map(|&i| parts[i - 1]).sum();
    let first = anchor_sum as i64 - 2 * raised as i64;
    let mut remainder: Vec<(u32, Sign)> = moved_parts.into_iter().filter(|&(v, _)| v > 0).collect();
    remainder.sort_by_key(|r| std::cmp::Reverse(r.0));
    finish(lambda, first, signs[0], remainder, anchors, j_plus, j_minus, None)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    lambda: &[u32],
    first: i64,
    first_sign: Sign,
    remainder: Vec<(u32, Sign)>,
    anchors: Vec<usize>,
    j_plus: Vec<usize>,
    j_minus: Vec<usize>,
    r_prime: Option<usize>,
) -> Result<StepResult, DualityError> {
    let total: u32 = lambda.iter().sum();
    let rest: u32 = remainder.iter().map(|p| p.0).sum();
    if first < 1 || first as u32 + rest != total {
        return Err(DualityError::Convention(format!("step on {lambda:?} gave first part {first}")));
    }
    value_signs(&remainder)?;
    Ok(StepResult { first_part: first as u32, first_sign, remainder, anchors, j_plus, j_minus, r_prime })
}

fn value_signs(parts: &[(u32, Sign)]) -> Result<BTreeMap<u32, Sign>, DualityError> {
    let mut out = BTreeMap::new();
    for &(v, s) in parts {
        if *out.entry(v).or_insert(s) != s {
            return Err(DualityError::SignConflict(v));
        }
    }
    Ok(out)
}

/// Runs a step function to exhaustion, collecting the emitted parts.
fn run_chain(
    mut parts: Vec<(u32, Sign)>,
    step: impl Fn(&[u32], &[Sign]) -> Result<StepResult, DualityError>,
) -> Result<Vec<(u32, Sign)>, DualityError> {
    let mut out = Vec::new();
    while !parts.is_empty() {
        let (l, e): (Vec<u32>, Vec<Sign>) = parts.iter().copied().unzip();
        let r = step(&l, &e)?;
        out.push((r.first_part, r.first_sign));
        parts = r.remainder;
    }
    if out.windows(2).any(|w| w[0].0 < w[1].0) {
        return Err(DualityError::Convention(format!("output parts not decreasing: {out:?}")));
    }
    Ok(out)
}

/// The parts of a given parity with their signs, positionally.
fn split_parity(m: &MarkedPartition, parity: u32) -> (Vec<(u32, Sign)>, u32) {
    let mut same = Vec::new();
    let mut other = 0;
    for &v in m.lambda().parts() {
        if v % 2 == parity {
            same.push((v, m.sign_of(v).unwrap_or(Sign::Plus)));
        } else {
            other += v;
        }
    }
    (same, other)
}

fn assemble(m: &MarkedPartition, mut parts: Vec<(u32, Sign)>, extra: u32) -> Result<MarkedPartition, DualityError> {
    parts[0].0 += extra;
    let signs = value_signs(&parts)?;
    let lambda = Partition::new(parts.iter().map(|p| p.0).collect())
        .map_err(|e| DualityError::Convention(e.to_string()))?;
    let dom = crate::orbits::delta(m.group(), &lambda)?;
    let eps = dom.iter().map(|v| (*v, signs[v])).collect();
    Ok(MarkedPartition::new(m.group(), lambda, eps, None)?)
}

/// `(λmax, εmax)` with an explicit Sp tail sign.
pub fn max_marked_with_tail(m: &MarkedPartition, tail_sign: Sign) -> Result<MarkedPartition, DualityError> {
    if m.lambda().is_empty() {
        return Ok(m.clone());
    }
    match m.group() {
        GroupKind::Sp => {
            let (even, odd_sum) = split_parity(m, 0);
            let mut out = run_chain(even, |l, e| sp_step(l, e, tail_sign))?;
            if out.is_empty() {
                out.push((0, tail_sign));
            }
            assemble(m, out, odd_sum)
        }
        GroupKind::SO => {
            let (odd, even_sum) = split_parity(m, 1);
            if odd.is_empty() {
                // Only even parts: the top constituent is (N−1, 1), or (1, 1)
                // when N = 2, with the trivial sign class.
                let n = m.size();
                let lambda = if n == 2 { Partition::new(vec![1, 1]) } else { Partition::new(vec![n - 1, 1]) }
                    .expect("valid partition");
                return Ok(MarkedPartition::trivial(GroupKind::SO, lambda, None)?);
            }
            let out = run_chain(odd, so_step)?;
            assemble(m, out, even_sum)
        }
    }
}

/// The closure-maximal constituent `(λmax, εmax)`.
pub fn max_marked(m: &MarkedPartition) -> Result<MarkedPartition, DualityError> {
    max_marked_with_tail(m, DEFAULT_TAIL_SIGN)
}

/// The sign-twisted minimum: the transpose of the maximum through the
/// generalized Springer correspondence.
pub fn min_marked(m: &MarkedPartition) -> Result<MarkedPartition, DualityError> {
    let top = max_marked(m)?;
    let (key, bip) = gsc_forward(&top)?;
    Ok(gsc_inverse(&key, &sign_twist(&key, &bip))?)
}

/// The orbit data of the dual of a tempered parameter with real
/// infinitesimal character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TemperedDual {
    #[serde(flatten)]
    pub orbit: MarkedPartition,
    pub defect: u32,
    /// Present for degenerate outputs: the ± tag is propagated, not derived.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degenerate_resolved: Option<bool>,
}

pub fn im_dual_tempered(m: &MarkedPartition) -> Result<TemperedDual, DualityError> {
    let orbit = min_marked(m)?;
    let (key, _) = gsc_forward(&orbit)?;
    let degenerate_resolved = orbit.degenerate().map(|_| false);
    Ok(TemperedDual { orbit, defect: key.defect, degenerate_resolved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::parse_value_signs;
    use Sign::{Minus as M, Plus as P};

    fn mk(g: GroupKind, l: &[u32], e: &str) -> MarkedPartition {
        MarkedPartition::new(g, Partition::new(l.to_vec()).unwrap(), parse_value_signs(e).unwrap(), None).unwrap()
    }

    #[test]
    fn so_step_examples() {
        let r = so_step(&[3, 3, 1], &[P, P, P]).unwrap();
        assert_eq!((r.first_part, r.remainder.len()), (7, 0));
        let r = so_step(&[3, 3, 1], &[P, P, M]).unwrap();
        assert_eq!(r.first_part, 3);
        assert_eq!(r.remainder, vec![(3, P), (1, M)]);
        assert_eq!(r.anchors, vec![1, 2]);
        assert_eq!(r.r_prime, Some(1));
        let r = so_step(&[1], &[P]).unwrap();
        assert_eq!((r.first_part, r.remainder.len()), (1, 0));
        assert!(so_step(&[2, 2], &[P, P]).is_err());
    }

    #[test]
    fn sp_step_examples() {
        let r = sp_step(&[2, 2], &[P, P], P).unwrap();
        assert_eq!((r.first_part, r.remainder.len()), (4, 0));
        let full = max_marked(&mk(GroupKind::Sp, &[2, 2], "2=-1")).unwrap();
        assert_eq!(full, mk(GroupKind::Sp, &[2, 2], "2=-1"));
        assert!(sp_step(&[3, 3], &[P, P], P).is_err());
    }

    #[test]
    fn max_examples() {
        let so = GroupKind::SO;
        assert_eq!(max_marked(&mk(so, &[1, 1, 1], "1=1")).unwrap(), mk(so, &[3], "3=1"));
        let sp = GroupKind::Sp;
        assert_eq!(max_marked(&mk(sp, &[2, 2, 1, 1], "2=1")).unwrap(), mk(sp, &[6], "6=1"));
        let x = mk(so, &[3, 3, 1], "3=1,1=-1");
        assert_eq!(max_marked(&x).unwrap(), x);
    }

    #[test]
    fn min_examples() {
        let sp = GroupKind::Sp;
        assert_eq!(min_marked(&mk(sp, &[2], "2=1")).unwrap(), mk(sp, &[1, 1], ""));
        let so = GroupKind::SO;
        assert_eq!(min_marked(&mk(so, &[3], "3=1")).unwrap(), mk(so, &[1, 1, 1], "1=1"));
        let d = im_dual_tempered(&mk(sp, &[2], "2=1")).unwrap();
        assert_eq!(d.orbit, mk(sp, &[1, 1], ""));
        assert_eq!(d.defect, 0);
        assert_eq!(d.degenerate_resolved, None);
    }

    #[test]
    fn degenerate_inputs() {
        let m = MarkedPartition::so(Partition::new(vec![2, 2]).unwrap(), BTreeMap::new(), Some(crate::Degenerate::Plus))
            .unwrap();
        assert_eq!(max_marked(&m).unwrap().lambda().parts(), &[3, 1]);
    }
}
