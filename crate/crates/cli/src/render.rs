//! Output shapes and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use springer_dual::az::{DualOrbit, MergedEps};
use springer_dual::duality::{im_dual_tempered, max_marked, min_marked, DualityError};
use springer_dual::greens::verify::{Counterexample, FamilyReport, TypeAReport};
use springer_dual::greens::VerifyReport;
use springer_dual::orbits::Sign;
use springer_dual::symbols::gsc_forward;
use springer_dual::{Bipartition, Degenerate, FamilyKey, GroupKind, MarkedPartition, Partition};

fn eps_text(eps: &BTreeMap<u32, Sign>) -> String {
    eps.iter().map(|(v, s)| format!("{v}={}1", s.symbol())).collect::<Vec<_>>().join(",")
}

fn tag_text(t: Option<Degenerate>) -> &'static str {
    match t {
        Some(Degenerate::Plus) => "+",
        Some(Degenerate::Minus) => "-",
        None => "",
    }
}

fn parts_text(p: &Partition) -> String {
    p.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub fn orbit_tsv(m: &MarkedPartition) -> String {
    format!("group\tlambda\teps\tdegenerate\n{}\t{}\t{}\t{}\n", m.group(), parts_text(m.lambda()), eps_text(m.eps()), tag_text(m.degenerate()))
}

#[derive(Serialize)]
pub struct GscOut {
    pub orbit: MarkedPartition,
    pub family: FamilyKey,
    pub bipartition: Bipartition,
}

impl GscOut {
    pub fn new(orbit: MarkedPartition, family: FamilyKey, bipartition: Bipartition) -> Self {
        GscOut { orbit, family, bipartition }
    }

    pub fn tsv(&self) -> String {
        format!(
            "orbit\tdefect\talpha\tbeta\tsplit\n{}\t{}\t{}\t{}\t{}\n",
            self.orbit,
            self.family.defect,
            parts_text(&self.bipartition.alpha),
            parts_text(&self.bipartition.beta),
            self.bipartition.split.map(|s| s.to_string()).unwrap_or_default()
        )
    }

    pub fn pretty(&self) -> String {
        format!("{} -> {} in {}\n", self.orbit, self.bipartition, self.family)
    }
}

/// The dual orbit as `{"lambda", "eps"}`, with the tag only for degenerate
/// SO outputs.
#[derive(Serialize)]
pub struct DualOut {
    pub lambda: Partition,
    pub eps: BTreeMap<u32, Sign>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degenerate: Option<Degenerate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degenerate_resolved: Option<bool>,
    #[serde(skip)]
    pub orbit: MarkedPartition,
}

impl DualOut {
    pub fn new(m: &MarkedPartition) -> Result<Self, DualityError> {
        let d = im_dual_tempered(m)?;
        Ok(DualOut {
            lambda: d.orbit.lambda().clone(),
            eps: d.orbit.eps().clone(),
            degenerate: d.orbit.degenerate(),
            degenerate_resolved: d.degenerate_resolved,
            orbit: d.orbit,
        })
    }

    pub fn tsv(&self) -> String {
        format!("lambda\teps\tdegenerate\n{}\t{}\t{}\n", parts_text(&self.lambda), eps_text(&self.eps), tag_text(self.degenerate))
    }
}

pub fn az_tsv(d: &DualOrbit) -> String {
    let merged = match &d.merged_eps {
        MergedEps::Merged(e) => eps_text(e),
        MergedEps::Conflict(v) => format!("conflict:{}", v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
    };
    format!(
        "lambda\teps_plus\teps_minus\tmerged_eps\n{}\t{}\t{}\t{}\n",
        parts_text(&d.lambda),
        eps_text(d.eps_plus()),
        eps_text(d.eps_minus()),
        merged
    )
}

pub fn az_pretty(d: &DualOrbit) -> String {
    let merged = match &d.merged_eps {
        MergedEps::Merged(e) => eps_text(e),
        MergedEps::Conflict(v) => format!("conflicting signs at {v:?}"),
    };
    format!(
        "orbit {} (orbit only)\n  +1 block minimum: {}\n  -1 block minimum: {}\n  signs: {merged}\n",
        d.lambda, d.plus_min, d.minus_min
    )
}

#[derive(Serialize)]
pub struct TableRow {
    pub orbit: MarkedPartition,
    pub family: FamilyKey,
    pub bipartition: Bipartition,
    pub max: MarkedPartition,
    pub dual: MarkedPartition,
}

impl TableRow {
    pub fn new(m: &MarkedPartition) -> Result<Self, DualityError> {
        let (family, bipartition) = gsc_forward(m)?;
        Ok(TableRow { orbit: m.clone(), family, bipartition, max: max_marked(m)?, dual: min_marked(m)? })
    }
}

pub fn table_tsv(rows: &[TableRow]) -> String {
    let mut s = String::from("group\tsize\torbit\tdefect\tbipartition\tmax\tdual\n");
    for r in rows {
        writeln!(s, "{}\t{}\t{}\t{}\t{}\t{}\t{}", r.orbit.group(), r.orbit.size(), r.orbit, r.family.defect, r.bipartition, r.max, r.dual)
            .unwrap();
    }
    s
}

pub fn table_pretty(rows: &[TableRow]) -> String {
    let mut s = String::new();
    for r in rows {
        writeln!(s, "{:<24} k={} {:<22} max {:<24} dual {}", r.orbit.to_string(), r.family.defect, r.bipartition.to_string(), r.max.to_string(), r.dual)
            .unwrap();
    }
    s
}

#[derive(Serialize)]
pub struct VerifySummary<'a> {
    pub group: GroupKind,
    pub max_size: u32,
    pub status: String,
    pub pairs_checked: usize,
    pub families: Vec<FamilyLine<'a>>,
    pub counterexamples: &'a [Counterexample],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Serialize)]
pub struct FamilyLine<'a> {
    #[serde(flatten)]
    pub report: &'a FamilyReport,
}

fn status(r: &VerifyReport) -> String {
    if r.all_pass() {
        "all families pass".into()
    } else {
        format!("{} counterexamples", r.counterexamples.len())
    }
}

impl<'a> VerifySummary<'a> {
    pub fn new(r: &'a VerifyReport, timing: bool) -> Self {
        VerifySummary {
            group: r.group,
            max_size: r.max_size,
            status: status(r),
            pairs_checked: r.pairs_checked,
            families: r.families.iter().map(|report| FamilyLine { report }).collect(),
            counterexamples: &r.counterexamples,
            elapsed_ms: timing.then_some(r.elapsed_ms),
        }
    }
}

pub fn verify_pretty(r: &VerifyReport) -> String {
    let mut s = String::new();
    for f in &r.families {
        writeln!(s, "{:<16} {:>3} members  {}", f.family.to_string(), f.members, if f.pass { "pass" } else { "FAIL" }).unwrap();
    }
    for c in &r.counterexamples {
        writeln!(s, "counterexample [{:?}] {} in {}: {}", c.check, c.point, c.family, c.detail).unwrap();
    }
    writeln!(s, "{} ({} pairs)", status(r), r.pairs_checked).unwrap();
    s
}

pub fn type_a_tsv(rs: &[TypeAReport]) -> String {
    let mut s = String::from("n\tcertified\tone_row_max\n");
    for r in rs {
        writeln!(s, "{}\t{}\t{}", r.n, r.certificate.ok(), r.one_row_max).unwrap();
    }
    s
}

pub fn type_a_pretty(rs: &[TypeAReport]) -> String {
    let mut s = String::new();
    for r in rs {
        writeln!(s, "S_{}: certificate {}, maximal support one row: {}", r.n, if r.certificate.ok() { "ok" } else { "FAILED" }, r.one_row_max)
            .unwrap();
    }
    s
}
