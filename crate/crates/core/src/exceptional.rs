//! Tabulated minimal constituents `(C, ε) ↦ (C^min, ε^min)` for the
//! exceptional groups, shipped as a TSV file compiled into the crate.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

const DATA: &str = include_str!("../data/exceptional.tsv");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExcError {
    #[error("unknown exceptional group {0:?}")]
    UnknownGroup(String),
    #[error("no row for ({group}, {orbit}, {eps})")]
    UnknownKey { group: ExcGroup, orbit: String, eps: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExcGroup {
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl ExcGroup {
    pub const ALL: [ExcGroup; 5] = [ExcGroup::G2, ExcGroup::F4, ExcGroup::E6, ExcGroup::E7, ExcGroup::E8];
}

impl fmt::Display for ExcGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for ExcGroup {
    type Err = ExcError;
    fn from_str(s: &str) -> Result<Self, ExcError> {
        let k: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_uppercase();
        ExcGroup::ALL.into_iter().find(|g| g.to_string() == k).ok_or_else(|| ExcError::UnknownGroup(s.to_string()))
    }
}

/// One table row. Labels are kept in the tables' own notation: Bala–Carter
/// labels such as `A_2+A_1`, `~A_1` or `3A_1''`, component groups such as
/// `A_1` or `Z/3Z` (`1` for the trivial group), and characters such as
/// `(2^21)`, `(21)⊠(1^2)`, `-χ_3` or `∅`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcEntry {
    pub group: ExcGroup,
    pub orbit: String,
    pub a_group: String,
    pub eps: String,
    pub dual_orbit: String,
    pub dual_a_group: String,
    pub dual_eps: String,
}

impl ExcEntry {
    pub fn is_self_dual(&self) -> bool {
        self.orbit == self.dual_orbit && self.eps == self.dual_eps
    }

    pub fn to_tsv(&self) -> String {
        [&self.group.to_string(), &self.orbit, &self.a_group, &self.eps, &self.dual_orbit, &self.dual_a_group, &self.dual_eps]
            .map(|s| s.as_str())
            .join("\t")
    }
}

pub const TSV_HEADER: &str = "group\torbit\ta_group\teps\tdual_orbit\tdual_a_group\tdual_eps";

/// Brings a user-supplied label into the tables' notation: drops math
/// delimiters and spaces, and accepts LaTeX or plain spellings of the
/// trivial group, the empty character, tildes, primes and `⊠`.
pub fn normalize_label(s: &str) -> String {
    let mut t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '$').collect();
    for (from, to) in [
        ("{+}", "+"),
        ("\\tilde", "~"),
        ("\\langle1\\rangle", "1"),
        ("<1>", "1"),
        ("⟨1⟩", "1"),
        ("\\varnothing", "∅"),
        ("\\emptyset", "∅"),
        ("\\mathbb{Z}", "Z"),
        ("ℤ", "Z"),
        ("\\boxtimes", "⊠"),
        ("\\chi", "χ"),
        ("chi", "χ"),
        ("″", "''"),
        ("′", "'"),
        ("{", ""),
        ("}", ""),
    ] {
        t = t.replace(from, to);
    }
    match t.to_ascii_lowercase().as_str() {
        "" | "empty" | "{}" | "()" => "∅".to_string(),
        "trivial" => "1".to_string(),
        _ => t,
    }
}

fn table() -> &'static [ExcEntry] {
    static TABLE: OnceLock<Vec<ExcEntry>> = OnceLock::new();
    TABLE.get_or_init(|| {
        DATA.lines()
            .skip(1)
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                let c: Vec<&str> = l.split('\t').collect();
                assert_eq!(c.len(), 7, "malformed exceptional row {l:?}");
                ExcEntry {
                    group: c[0].parse().expect("group column"),
                    orbit: c[1].into(),
                    a_group: c[2].into(),
                    eps: c[3].into(),
                    dual_orbit: c[4].into(),
                    dual_a_group: c[5].into(),
                    dual_eps: c[6].into(),
                }
            })
            .collect()
    })
}

/// All rows of one group in table order.
pub fn enumerate_group(group: ExcGroup) -> Vec<&'static ExcEntry> {
    table().iter().filter(|e| e.group == group).collect()
}

pub fn lookup(group: ExcGroup, orbit: &str, eps: &str) -> Result<&'static ExcEntry, ExcError> {
    let (o, e) = (normalize_label(orbit), normalize_label(eps));
    table()
        .iter()
        .find(|r| r.group == group && r.orbit == o && r.eps == e)
        .ok_or(ExcError::UnknownKey { group, orbit: orbit.to_string(), eps: eps.to_string() })
}
