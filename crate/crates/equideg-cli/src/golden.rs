//! Reference tables shipped with the crate: the class table of
//! `S4 × O(2)` with Weyl orders and flags, and the ω values per region of
//! the two networks. Classes are spelled `(H, K, L, Z_H, R)` with `K` at
//! `n = 1` in the ω tables and in family form in the class table.

use std::collections::BTreeMap;

use equideg::burnside::BurnsideElement;
use equideg::goursat::{ClassKey, GoursatFamily, PhiTable};
use equideg::systems::{RegionLabel, SystemKind};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const CCS_TABLE: &str = include_str!("../data/ccs_s4xo2.tsv");
pub const OMEGA_MDDE: &str = include_str!("../data/omega_mdde.tsv");
pub const OMEGA_IDE: &str = include_str!("../data/omega_ide.tsv");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcsRow {
    pub id: usize,
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "K")]
    pub k: String,
    #[serde(rename = "L")]
    pub l: String,
    #[serde(rename = "Z_H")]
    pub z_h: String,
    #[serde(rename = "R")]
    pub r: String,
    pub weyl: String,
    pub flag: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaTerm {
    pub region: String,
    pub coefficient: i64,
    #[serde(rename = "H")]
    pub h: String,
    #[serde(rename = "K")]
    pub k: String,
    #[serde(rename = "L")]
    pub l: String,
    #[serde(rename = "Z_H")]
    pub z_h: String,
    #[serde(rename = "R")]
    pub r: String,
}

fn read_tsv<T: for<'de> Deserialize<'de>>(text: &str) -> CliResult<Vec<T>> {
    let mut reader = csv::ReaderBuilder::new().delimiter(b'\t').from_reader(text.as_bytes());
    reader.deserialize().map(|row| row.map_err(CliError::from)).collect()
}

pub fn ccs_rows() -> CliResult<Vec<CcsRow>> {
    read_tsv(CCS_TABLE)
}

fn omega_source(kind: SystemKind) -> &'static str {
    match kind {
        SystemKind::Mdde => OMEGA_MDDE,
        SystemKind::Ide => OMEGA_IDE,
    }
}

/// Terms of each region, keyed by region number.
pub fn omega_rows(kind: SystemKind) -> CliResult<BTreeMap<u8, Vec<OmegaTerm>>> {
    let mut out: BTreeMap<u8, Vec<OmegaTerm>> = BTreeMap::new();
    for term in read_tsv::<OmegaTerm>(omega_source(kind))? {
        let region = RegionLabel::from_numeral(&term.region)
            .ok_or_else(|| CliError::Golden(format!("bad region {}", term.region)))?;
        out.entry(region).or_default().push(term);
    }
    Ok(out)
}

fn family_names(table: &PhiTable, family: &GoursatFamily) -> (String, String, String, String) {
    let name = |i: usize| table.gamma.classes[i].name.clone();
    let r = if family.show_r { name(family.r) } else { "-".into() };
    (name(family.h), family.case.quotient.to_string(), name(family.z_h), r)
}

/// The class `(H, K, L, Z_H, R)` with `K` concrete; `R` must be given
/// exactly when the table needs it to tell families apart.
pub fn resolve(table: &PhiTable, h: &str, k: &str, l: &str, z_h: &str, r: &str) -> CliResult<ClassKey> {
    let mut found = Vec::new();
    for family in &table.families {
        if family_names(table, family) != (h.into(), l.into(), z_h.into(), r.into()) {
            continue;
        }
        let n = if family.is_parametric() {
            (1..=48).find(|&n| family.case.k.at(n).to_string() == k)
        } else {
            (family.case.k.at(1).to_string() == k).then_some(0)
        };
        if let Some(n) = n {
            found.push(ClassKey::new(family.id, n));
        }
    }
    match found.as_slice() {
        [key] => Ok(*key),
        [] => Err(CliError::Golden(format!("no class ({h}, {k}, {l}, {z_h}, {r})"))),
        _ => Err(CliError::Golden(format!("ambiguous class ({h}, {k}, {l}, {z_h}, {r})"))),
    }
}

/// One row of an ω table as a ring element.
pub fn omega_element(table: &PhiTable, kind: SystemKind, region: u8) -> CliResult<BurnsideElement> {
    let rows = omega_rows(kind)?;
    let terms = rows
        .get(&region)
        .ok_or_else(|| CliError::Golden(format!("{kind} has no region {}", RegionLabel::numeral(region))))?;
    let mut out = BurnsideElement::zero();
    for t in terms {
        out.add_term(resolve(table, &t.h, &t.k, &t.l, &t.z_h, &t.r)?, t.coefficient);
    }
    Ok(out)
}

/// Compares the computed class table with the reference rows.
pub fn ccs_mismatches(table: &PhiTable) -> CliResult<Vec<String>> {
    let rows = ccs_rows()?;
    let mut out = Vec::new();
    if rows.len() != table.families.len() {
        out.push(format!("{} reference rows, {} computed", rows.len(), table.families.len()));
    }
    for (row, family) in rows.iter().zip(&table.families) {
        let (h, l, z_h, r) = family_names(table, family);
        let computed = (row.id, h, family.case.k.symbol(), l, z_h, r, family.weyl.to_string());
        let expected = (row.id, row.h.clone(), row.k.clone(), row.l.clone(), row.z_h.clone(), row.r.clone(), row.weyl.clone());
        if computed != expected {
            out.push(format!("id {}: expected {expected:?}, computed {computed:?}", row.id));
        }
    }
    Ok(out)
}

/// Ids carrying the reference table's flag.
pub fn flagged_ids() -> CliResult<Vec<usize>> {
    Ok(ccs_rows()?.into_iter().filter(|r| !r.flag.is_empty()).map(|r| r.id).collect())
}
