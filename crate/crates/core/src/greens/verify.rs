//! Brute-force certification of the max/min algorithms against solved
//! Green-function matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Instant;

use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::pieri::pieri_induce;
use super::solve::{solve_family, solve_type_a, Certificate, FamilySolution};
use super::GreensError;
use crate::duality::{max_marked, min_marked};
use crate::orbits::{GroupKind, MarkedPartition};
use crate::partitions::Partition;
use crate::symbols::{gsc_forward, Bipartition, FamilyKey};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Certificate,
    Max,
    Min,
    Pieri,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub check: Check,
    pub family: FamilyKey,
    pub point: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub family: FamilyKey,
    pub members: usize,
    pub certificate: Certificate,
    pub pass: bool,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub group: GroupKind,
    pub max_size: u32,
    pub pairs_checked: usize,
    pub families: Vec<FamilyReport>,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Equality of marked partitions ignoring the degenerate tag.
fn same_mod_tag(a: &MarkedPartition, b: &MarkedPartition) -> bool {
    a.group() == b.group() && a.lambda() == b.lambda() && a.eps() == b.eps()
}

fn strictly_below(a: &Partition, b: &Partition) -> bool {
    a != b && a.dominated_by(b)
}

/// Solves every family of the group with total size at most `max_size`.
pub fn solve_all(group: GroupKind, max_size: u32) -> Result<BTreeMap<FamilyKey, (FamilySolution, u128)>, GreensError> {
    let keys: Vec<FamilyKey> = (0..=max_size).flat_map(|s| FamilyKey::all(group, s)).collect();
    keys.par_iter()
        .map(|k| {
            let t = Instant::now();
            solve_family(k).map(|s| (*k, (s, t.elapsed().as_millis())))
        })
        .collect()
}

/// Checks, for every marked partition up to `max_size`: the unique maximal
/// constituent has multiplicity one and equals [`max_marked`]; after the sign
/// twist the unique minimal one equals [`min_marked`]; and for mixed parity
/// the constituents are the Pieri induction of those of the pure part.
pub fn verify_theorems(group: GroupKind, max_size: u32) -> Result<VerifyReport, GreensError> {
    let start = Instant::now();
    let sols = solve_all(group, max_size)?;
    let mut families = Vec::new();
    let mut counterexamples = Vec::new();
    let mut pairs_checked = 0;
    let per_family: Vec<(FamilyReport, Vec<Counterexample>, usize)> = sols
        .par_iter()
        .map(|(key, (sol, ms))| {
            let mut bad = Vec::new();
            if !sol.certificate.ok() {
                bad.push(Counterexample {
                    check: Check::Certificate,
                    family: *key,
                    point: String::new(),
                    detail: format!("{:?}", sol.certificate),
                });
            }
            for y in 0..sol.labels.len() {
                bad.extend(check_point(sol, y, &sols));
            }
            let report = FamilyReport {
                family: *key,
                members: sol.labels.len(),
                certificate: sol.certificate.clone(),
                pass: bad.is_empty(),
                elapsed_ms: *ms,
            };
            (report, bad, sol.labels.len())
        })
        .collect();
    for (r, bad, n) in per_family {
        families.push(r);
        counterexamples.extend(bad);
        pairs_checked += n;
    }
    Ok(VerifyReport { group, max_size, pairs_checked, families, counterexamples, elapsed_ms: start.elapsed().as_millis() })
}

fn check_point(
    sol: &FamilySolution,
    y: usize,
    sols: &BTreeMap<FamilyKey, (FamilySolution, u128)>,
) -> Vec<Counterexample> {
    let point = &sol.orbits[y];
    let fail = |check, detail: String| Counterexample { check, family: sol.key, point: point.to_string(), detail };
    let mut bad = Vec::new();
    let cons = sol.constituents(y);

    // Maximum.
    let top = cons.iter().find(|(x, _)| {
        cons.iter().all(|(z, _)| z == x || strictly_below(sol.orbits[*z].lambda(), sol.orbits[*x].lambda()))
    });
    match (top, max_marked(point)) {
        (_, Err(e)) => bad.push(fail(Check::Max, format!("max_marked failed: {e}"))),
        (None, _) => bad.push(fail(Check::Max, "no unique maximal constituent".into())),
        (Some((x, m)), Ok(want)) => {
            if !m.is_one() {
                bad.push(fail(Check::Max, format!("maximal constituent has multiplicity {m}")));
            } else if !same_mod_tag(&sol.orbits[*x], &want) {
                bad.push(fail(Check::Max, format!("oracle {} but algorithm {want}", sol.orbits[*x])));
            }
        }
    }

    // Minimum after tensoring with the sign character.
    let twisted: Vec<(usize, &num_bigint::BigInt)> = cons
        .iter()
        .map(|(x, m)| {
            let r = sol.table.tensor_sign(sol.rows[*x]);
            (sol.rows.iter().position(|&q| q == r).expect("family closed under the sign twist"), m)
        })
        .collect();
    let bottom = twisted.iter().find(|(x, _)| {
        twisted.iter().all(|(z, _)| z == x || strictly_below(sol.orbits[*x].lambda(), sol.orbits[*z].lambda()))
    });
    match (bottom, min_marked(point)) {
        (_, Err(e)) => bad.push(fail(Check::Min, format!("min_marked failed: {e}"))),
        (None, _) => bad.push(fail(Check::Min, "no unique minimal twisted constituent".into())),
        (Some((x, m)), Ok(want)) => {
            if !m.is_one() {
                bad.push(fail(Check::Min, format!("minimal twisted constituent has multiplicity {m}")));
            } else if !same_mod_tag(&sol.orbits[*x], &want) {
                bad.push(fail(Check::Min, format!("oracle {} but algorithm {want}", sol.orbits[*x])));
            }
        }
    }

    if let Some(detail) = pieri_mismatch(sol, y, sols) {
        bad.push(fail(Check::Pieri, detail));
    }
    bad
}

fn support(key: &FamilyKey, b: &Bipartition) -> Bipartition {
    let mut b = Bipartition::new(b.alpha.clone(), b.beta.clone());
    if key.is_unordered() && b.alpha < b.beta {
        std::mem::swap(&mut b.alpha, &mut b.beta);
    }
    b
}

/// For mixed parity, compares the constituent supports with the Pieri
/// induction from the pure part. `None` when consistent or not applicable.
fn pieri_mismatch(
    sol: &FamilySolution,
    y: usize,
    sols: &BTreeMap<FamilyKey, (FamilySolution, u128)>,
) -> Option<String> {
    let point = &sol.orbits[y];
    let group = point.group();
    let parity = group.marked_parity();
    let (pure, other): (Vec<u32>, Vec<u32>) = point.lambda().parts().iter().partition(|&&p| p % 2 == parity);
    if pure.is_empty() || other.is_empty() {
        return None;
    }
    let pure = Partition::new(pure).expect("subsequence of a partition");
    let pure_point = match MarkedPartition::new(group, pure, point.eps().clone(), None) {
        Ok(m) => m,
        Err(e) => return Some(format!("pure part is not a marked partition: {e}")),
    };
    let (pkey, _) = match gsc_forward(&pure_point) {
        Ok(r) => r,
        Err(e) => return Some(format!("pure part has no symbol: {e}")),
    };
    if pkey.defect != sol.key.defect {
        return Some(format!("pure part {pure_point} has defect {} not {}", pkey.defect, sol.key.defect));
    }
    let (psol, _) = sols.get(&pkey)?;
    let py = psol.index_of(&pure_point)?;
    let mut base: BTreeSet<Bipartition> = BTreeSet::new();
    for (x, _) in psol.constituents(py) {
        let b = support(&pkey, &psol.labels[x]);
        if pkey.is_unordered() {
            base.insert(Bipartition::new(b.beta.clone(), b.alpha.clone()));
        }
        base.insert(b);
    }
    // Other parts come in equal pairs (a_i, a_i); each pair adds a strip of a_i.
    for a in other.iter().step_by(2) {
        base = pieri_induce(&base, *a);
    }
    let induced: BTreeSet<Bipartition> = base.iter().map(|b| support(&sol.key, b)).collect();
    let actual: BTreeSet<Bipartition> =
        sol.constituents(y).iter().map(|(x, _)| support(&sol.key, &sol.labels[*x])).collect();
    (induced != actual).then(|| {
        let show = |s: &BTreeSet<Bipartition>| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        format!("induced {{{}}} but constituents {{{}}}", show(&induced), show(&actual))
    })
}

/// `P̃(1)` of a family as TSV: one row per constituent, one column per point.
pub fn p_at_one_tsv(sol: &FamilySolution) -> String {
    let mut out = String::from("constituent");
    for o in &sol.orbits {
        write!(out, "\t{o}").unwrap();
    }
    out.push('\n');
    for (x, o) in sol.orbits.iter().enumerate() {
        write!(out, "{o}").unwrap();
        for y in 0..sol.orbits.len() {
            write!(out, "\t{}", sol.mult(y, x)).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Type A: for each `n`, whether the solve is certified and the maximal
/// constituent at every point is the one-row partition with multiplicity one.
#[derive(Debug, Clone, Serialize)]
pub struct TypeAReport {
    pub n: u32,
    pub certificate: Certificate,
    pub one_row_max: bool,
}

pub fn verify_type_a(max_n: u32) -> Result<Vec<TypeAReport>, GreensError> {
    (0..=max_n)
        .map(|n| {
            let s = solve_type_a(n)?;
            let one_row = Partition::new(if n == 0 { vec![] } else { vec![n] }).expect("one row");
            let one_row_max = (0..s.partitions.len()).all(|mu| s.max_support(mu) == Some(&one_row));
            Ok(TypeAReport { n, certificate: s.certificate, one_row_max })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks_pass() {
        for g in [GroupKind::Sp, GroupKind::SO] {
            let r = verify_theorems(g, 4).unwrap();
            assert!(r.all_pass(), "{:#?}", r.counterexamples);
        }
    }

    #[test]
    fn rank_bound_is_enforced() {
        assert!(matches!(verify_theorems(GroupKind::SO, 10), Err(GreensError::RankBound { .. })));
    }

    #[test]
    fn type_a_one_row() {
        assert!(verify_type_a(4).unwrap().iter().all(|r| r.one_row_max && r.certificate.ok()));
    }
}
