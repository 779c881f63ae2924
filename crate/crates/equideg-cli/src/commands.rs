//! The computation behind each subcommand. Every command returns a plain
//! serializable report; rendering lives in [`crate::output`].

use std::path::{Path, PathBuf};
use std::str::FromStr;

use equideg::burnside::BurnsideElement;
use equideg::degree::DegreeEngine;
use equideg::goursat::{ClassKey, Finitized, PhiTable, Weyl};
use equideg::o2::{O2Family, O2Subgroup};
use equideg::render::{class_label, family_label, signed_sum};
use equideg::systems::{
    self, Bifurcation, CouplingSpectrum, NetworkModel, OmegaOptions, RegionLabel, SystemKind,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::golden;

/// Environment variable naming a directory for cached ω values.
pub const CACHE_ENV: &str = "EQUIDEG_CACHE_DIR";

/// Grid resolution used to place one representative point per region.
pub const REGION_RESOLUTION: usize = 200;

/// Bound on the order of a finite group whose subgroup classes are listed.
const LATTICE_BOUND: usize = 1 << 16;

/// The `j`-labeling used for the four coupling eigenvalues.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Labeling {
    /// The one under which the reference ω tables are stated.
    Table,
    /// Irreducibles in character-table order.
    Projector,
}

impl Labeling {
    pub fn permutation(self) -> [usize; 4] {
        match self {
            Labeling::Table => [1, 2, 4, 3],
            Labeling::Projector => [1, 2, 3, 4],
        }
    }
}

pub fn spectrum(engine: &DegreeEngine, permutation: [usize; 4]) -> CliResult<CouplingSpectrum> {
    Ok(CouplingSpectrum::from_projectors(engine.cube())?.permuted(permutation))
}

/// A term `c·(class)` of a ring element with its key spelled out.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermRecord {
    pub id: usize,
    /// Value of the family parameter; 0 for non-parametric families.
    pub n: u32,
    pub coefficient: i64,
    pub class: String,
}

pub fn terms_of(table: &PhiTable, element: &BurnsideElement) -> Vec<TermRecord> {
    element
        .terms()
        .map(|(key, coefficient)| TermRecord {
            id: key.id as usize,
            n: key.n,
            coefficient,
            class: class_label(table, key),
        })
        .collect()
}

pub fn element_of(terms: &[TermRecord]) -> BurnsideElement {
    BurnsideElement::from_terms(terms.iter().map(|t| (ClassKey::new(t.id, t.n), t.coefficient)))
}

// ---------------------------------------------------------------- ccs

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupSpec {
    S4,
    O2,
    S4xO2,
    S4xDm(u32),
}

impl FromStr for GroupSpec {
    type Err = CliError;

    fn from_str(text: &str) -> CliResult<Self> {
        match text {
            "s4" => Ok(GroupSpec::S4),
            "o2" => Ok(GroupSpec::O2),
            "s4xo2" => Ok(GroupSpec::S4xO2),
            _ => text
                .strip_prefix("s4xdm:")
                .and_then(|m| m.parse::<u32>().ok())
                .filter(|&m| m >= 1)
                .map(GroupSpec::S4xDm)
                .ok_or_else(|| CliError::Usage(format!("unknown group `{text}`; expected s4, o2, s4xo2 or s4xdm:<m>"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassRecord {
    pub id: usize,
    pub class: String,
    /// Group order, with `n` formal for parametric families and `inf` in
    /// positive dimension.
    pub order: String,
    pub dimension: u32,
    pub weyl: String,
    pub flagged: bool,
}

pub fn ccs(engine: &DegreeEngine, spec: GroupSpec) -> CliResult<Vec<ClassRecord>> {
    let table = engine.ring().table();
    match spec {
        GroupSpec::S4 => {
            let cube = engine.cube();
            Ok(cube
                .classes()
                .iter()
                .enumerate()
                .map(|(i, (class, subgroup))| ClassRecord {
                    id: i + 1,
                    class: class.name().into(),
                    order: subgroup.order().to_string(),
                    dimension: 0,
                    weyl: cube.group().weyl_order(subgroup).to_string(),
                    flagged: false,
                })
                .collect())
        }
        GroupSpec::O2 => Ok(o2_rows()),
        GroupSpec::S4xO2 => {
            let flagged = golden::flagged_ids()?;
            Ok(table
                .families
                .iter()
                .map(|family| {
                    let h = table.gamma.classes[family.h].representative.order() as u32;
                    let quotient = family.case.quotient.order() as u32;
                    let order = match family.case.k.at(1) {
                        O2Subgroup::Z(k) => symbolic_order(h * k / quotient),
                        O2Subgroup::D(k) => symbolic_order(2 * h * k / quotient),
                        O2Subgroup::SO2 | O2Subgroup::O2 => "inf".into(),
                    };
                    ClassRecord {
                        id: family.id,
                        class: family_label(table, family),
                        order,
                        dimension: family.dimension(),
                        weyl: family.weyl.to_string(),
                        flagged: flagged.contains(&family.id),
                    }
                })
                .collect())
        }
        GroupSpec::S4xDm(m) => {
            let fin = Finitized::new(&table.gamma, m);
            let classes = fin.group.conjugacy_classes(LATTICE_BOUND)?;
            Ok(classes
                .iter()
                .enumerate()
                .map(|(i, c)| ClassRecord {
                    id: i + 1,
                    class: fin
                        .identify(table, &c.representative, false)
                        .map(|key| class_label(table, key))
                        .unwrap_or_else(|_| "?".into()),
                    order: c.representative.order().to_string(),
                    dimension: 0,
                    weyl: c.weyl_order.to_string(),
                    flagged: false,
                })
                .collect())
        }
    }
}

fn symbolic_order(coefficient: u32) -> String {
    match coefficient {
        1 => "n".into(),
        c => format!("{c}n"),
    }
}

fn o2_rows() -> Vec<ClassRecord> {
    let row = |id: usize, family: O2Family, order: &str, weyl: Weyl| {
        let sample = family.at(1);
        ClassRecord {
            id,
            class: family.symbol(),
            order: order.into(),
            dimension: sample.dimension(),
            weyl: weyl.to_string(),
            flagged: false,
        }
    };
    vec![
        row(1, O2Family::Z(1), "n", Weyl::Infinite),
        row(2, O2Family::D(1), "2n", Weyl::Finite(2)),
        row(3, O2Family::SO2, "inf", Weyl::Finite(2)),
        row(4, O2Family::O2, "inf", Weyl::Finite(1)),
    ]
}

// ---------------------------------------------------------------- mul

/// `ID` or `ID:n`; `n` defaults to 1 for parametric families.
pub fn parse_class(table: &PhiTable, text: &str) -> CliResult<ClassKey> {
    let malformed = || CliError::Usage(format!("malformed class id `{text}`; expected ID or ID:n"));
    let (id, n) = match text.split_once(':') {
        Some((id, n)) => (id, n.parse::<u32>().map_err(|_| malformed())?),
        None => (text, 1),
    };
    let id: usize = id.parse().map_err(|_| malformed())?;
    if id == 0 || id > table.families.len() {
        return Err(CliError::Usage(format!("class id {id} is not in 1..={}", table.families.len())));
    }
    let key = table.key(id, n).map_err(|e| CliError::Usage(e.to_string()))?;
    if table.weyl(key) == Weyl::Infinite {
        return Err(CliError::Usage(format!(
            "class {id} ({}) has an infinite Weyl group and is not a generator of the Burnside ring",
            class_label(table, key)
        )));
    }
    Ok(key)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MulReport {
    pub left: String,
    pub right: String,
    pub product: String,
    pub terms: Vec<TermRecord>,
    /// Set when the orbit-counting product was computed as well; it is then
    /// equal to `terms`.
    pub oracle_checked: bool,
}

pub fn mul(engine: &DegreeEngine, left: &str, right: &str, oracle: bool) -> CliResult<MulReport> {
    let ring = engine.ring();
    let table = ring.table();
    let (a, b) = (parse_class(table, left)?, parse_class(table, right)?);
    let product = ring.generator_mul(a, b)?;
    if oracle {
        let counted = ring.mul_oracle_generators(a, b)?;
        if counted != product {
            return Err(CliError::Mismatch(format!(
                "recurrence gives {}, orbit counting gives {}",
                signed_sum(table, &product),
                signed_sum(table, &counted)
            )));
        }
    }
    Ok(MulReport {
        left: class_label(table, a),
        right: class_label(table, b),
        product: signed_sum(table, &product),
        terms: terms_of(table, &product),
        oracle_checked: oracle,
    })
}

// ---------------------------------------------------------------- invariant

pub const NO_BIFURCATION: &str = "no bifurcation on the selected surface";

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct BranchRecord {
    pub id: usize,
    pub n: u32,
    pub class: String,
    pub branches: u64,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct BifurcationRecord {
    pub j: usize,
    pub l: u32,
    pub alpha0: f64,
    pub rho: f64,
    pub l_max: u32,
    /// Surfaces `(j, l)` meeting the crossing at `α₀`.
    pub collisions: Vec<(usize, u32)>,
    pub omega: String,
    pub terms: Vec<TermRecord>,
    /// Straight evaluation across a collision, when there is one.
    pub crossing_omega: Option<String>,
    pub branch_counts: Vec<BranchRecord>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct InvariantReport {
    pub system: String,
    pub c1: f64,
    pub c2: f64,
    pub region: String,
    pub predicates: Vec<String>,
    pub labeling: Labeling,
    pub betas: [i64; 4],
    pub message: Option<String>,
    pub bifurcation: Option<BifurcationRecord>,
}

pub struct InvariantRequest {
    pub kind: SystemKind,
    pub c1: f64,
    pub c2: f64,
    pub surface: Option<(usize, u32)>,
    pub labeling: Labeling,
}

pub fn invariant(engine: &DegreeEngine, request: &InvariantRequest) -> CliResult<InvariantReport> {
    let kind = request.kind;
    let model = NetworkModel::new(kind, request.c1, request.c2).map_err(|e| CliError::Usage(e.to_string()))?;
    if !model.in_box() {
        let ((a, b), (c, d)) = kind.parameter_box();
        return Err(CliError::Usage(format!(
            "({}, {}) lies outside the {kind} parameter box ({a}, {b}) × ({c}, {d})",
            request.c1, request.c2
        )));
    }
    let spectrum = spectrum(engine, request.labeling.permutation())?;
    let region = systems::classify_region(&model)?;
    let mut report = InvariantReport {
        system: kind.name().into(),
        c1: request.c1,
        c2: request.c2,
        region: region.label.to_string(),
        predicates: region.predicates.iter().map(|p| p.to_string()).collect(),
        labeling: request.labeling,
        betas: spectrum.betas(),
        message: None,
        bifurcation: None,
    };
    let primary = spectrum
        .component_of(kind.primary_beta())
        .ok_or_else(|| CliError::Golden(format!("no component with β = {}", kind.primary_beta())))?;
    let surface = request.surface.unwrap_or((primary, 1));
    if !(1..=4).contains(&surface.0) || surface.1 == 0 {
        return Err(CliError::Usage(format!("surface {surface:?} needs 1 <= j <= 4 and l >= 1")));
    }
    if region.label == RegionLabel::None && request.surface.is_none() {
        report.message = Some(NO_BIFURCATION.into());
        return Ok(report);
    }
    match systems::bifurcation(engine, &model, &spectrum, surface, OmegaOptions::default()) {
        Ok(b) => report.bifurcation = Some(bifurcation_record(engine, &b)?),
        Err(equideg::Error::OutOfRange(_)) => report.message = Some(NO_BIFURCATION.into()),
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

fn bifurcation_record(engine: &DegreeEngine, b: &Bifurcation) -> CliResult<BifurcationRecord> {
    let table = engine.ring().table();
    let branch_counts = systems::branch_counts(engine, &b.omega, b.surface.1)?
        .into_iter()
        .map(|(key, branches)| BranchRecord {
            id: key.id as usize,
            n: key.n,
            class: class_label(table, key),
            branches,
        })
        .collect();
    Ok(BifurcationRecord {
        j: b.surface.0,
        l: b.surface.1,
        alpha0: b.alpha0,
        rho: b.rho,
        l_max: b.l_max,
        collisions: b.collisions.iter().map(|p| (p.j, p.l)).collect(),
        omega: signed_sum(table, &b.omega),
        terms: terms_of(table, &b.omega),
        crossing_omega: b.crossing_omega.as_ref().map(|w| signed_sum(table, w)),
        branch_counts,
    })
}

// ---------------------------------------------------------------- table

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TermDiff {
    pub id: usize,
    pub n: u32,
    pub class: String,
    pub expected: i64,
    pub computed: i64,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct RegionDiff {
    pub region: String,
    pub c1: f64,
    pub c2: f64,
    pub alpha0: f64,
    pub passed: bool,
    pub expected: String,
    pub computed: String,
    pub terms: Vec<TermRecord>,
    pub differences: Vec<TermDiff>,
    /// Other reference rows equal to the value computed here.
    pub equals_reference_rows: Vec<String>,
    /// The reference row with the fewest differing terms, and that count.
    pub closest_reference_row: (String, usize),
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct TableReport {
    pub system: String,
    /// The relabeling of `j` with the most matching rows, then the fewest
    /// differing terms; remaining ties go to the earliest in
    /// [`CouplingSpectrum::dimension_preserving_permutations`].
    pub permutation: [usize; 4],
    pub regions: Vec<RegionDiff>,
    /// Rows matched under each relabeling tried.
    pub matches_by_permutation: Vec<([usize; 4], usize)>,
    pub passed: bool,
}

/// A computed row, as stored in the cache directory.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
struct CachedRow {
    c1: f64,
    c2: f64,
    alpha0: f64,
    terms: Vec<TermRecord>,
}

struct ComputedRow {
    c1: f64,
    c2: f64,
    alpha0: f64,
    omega: BurnsideElement,
}

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn cache_path(dir: &Path, kind: SystemKind, region: u8, permutation: [usize; 4]) -> PathBuf {
    let perm: String = permutation.iter().map(|j| j.to_string()).collect();
    dir.join(format!("omega-{}-{}-{perm}-{REGION_RESOLUTION}.json", kind.name(), RegionLabel::numeral(region)))
}

fn compute_row(
    engine: &DegreeEngine,
    kind: SystemKind,
    region: u8,
    permutation: [usize; 4],
    cache: Option<&Path>,
) -> CliResult<ComputedRow> {
    let path = cache.map(|dir| cache_path(dir, kind, region, permutation));
    if let Some(cached) = path.as_ref().and_then(|p| std::fs::read_to_string(p).ok()) {
        if let Ok(row) = serde_json::from_str::<CachedRow>(&cached) {
            return Ok(ComputedRow { c1: row.c1, c2: row.c2, alpha0: row.alpha0, omega: element_of(&row.terms) });
        }
    }
    let (c1, c2) = systems::representative_point(kind, region, REGION_RESOLUTION)?;
    let model = NetworkModel::new(kind, c1, c2)?;
    let spectrum = spectrum(engine, permutation)?;
    let primary = spectrum
        .component_of(kind.primary_beta())
        .ok_or_else(|| CliError::Golden(format!("no component with β = {}", kind.primary_beta())))?;
    let b = systems::bifurcation(engine, &model, &spectrum, (primary, 1), OmegaOptions::default())?;
    if let Some(path) = path {
        let row = CachedRow { c1, c2, alpha0: b.alpha0, terms: terms_of(engine.ring().table(), &b.omega) };
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(&path, serde_json::to_string_pretty(&row)?)?;
    }
    Ok(ComputedRow { c1, c2, alpha0: b.alpha0, omega: b.omega })
}

/// Rows matched, then fewest differing terms.
type MatchScore = (usize, std::cmp::Reverse<usize>);

/// Recomputes every row of the ω table of `kind` and diffs it against the
/// reference copy.
pub fn table(engine: &DegreeEngine, kind: SystemKind) -> CliResult<TableReport> {
    let phi = engine.ring().table();
    let cache = cache_dir();
    let expected: Vec<BurnsideElement> = (1..=kind.region_count())
        .map(|r| golden::omega_element(phi, kind, r))
        .collect::<CliResult<_>>()?;
    let mut best: Option<([usize; 4], Vec<ComputedRow>, MatchScore)> = None;
    let mut matches_by_permutation = Vec::new();
    for permutation in CouplingSpectrum::dimension_preserving_permutations() {
        let rows: Vec<ComputedRow> = (1..=kind.region_count())
            .map(|r| compute_row(engine, kind, r, permutation, cache.as_deref()))
            .collect::<CliResult<_>>()?;
        let matched = rows.iter().zip(&expected).filter(|(row, e)| row.omega == **e).count();
        let distance: usize = rows.iter().zip(&expected).map(|(row, e)| (&row.omega - e).len()).sum();
        matches_by_permutation.push((permutation, matched));
        let score = (matched, std::cmp::Reverse(distance));
        if best.as_ref().is_none_or(|(_, _, s)| score > *s) {
            best = Some((permutation, rows, score));
        }
    }
    let (permutation, rows, (matched, _)) = best.expect("at least one permutation");
    let regions = rows
        .iter()
        .zip(&expected)
        .enumerate()
        .map(|(i, (row, reference))| {
            let differences = term_diff(phi, reference, &row.omega);
            RegionDiff {
                region: RegionLabel::numeral(i as u8 + 1).into(),
                c1: row.c1,
                c2: row.c2,
                alpha0: row.alpha0,
                passed: differences.is_empty(),
                expected: signed_sum(phi, reference),
                computed: signed_sum(phi, &row.omega),
                terms: terms_of(phi, &row.omega),
                differences,
                equals_reference_rows: expected
                    .iter()
                    .enumerate()
                    .filter(|&(k, e)| k != i && *e == row.omega)
                    .map(|(k, _)| RegionLabel::numeral(k as u8 + 1).into())
                    .collect(),
                closest_reference_row: expected
                    .iter()
                    .enumerate()
                    .map(|(k, e)| ((&row.omega - e).len(), k))
                    .min()
                    .map(|(d, k)| (RegionLabel::numeral(k as u8 + 1).into(), d))
                    .expect("nonempty table"),
            }
        })
        .collect();
    Ok(TableReport {
        system: kind.name().into(),
        permutation,
        regions,
        matches_by_permutation,
        passed: matched == expected.len(),
    })
}

fn term_diff(table: &PhiTable, expected: &BurnsideElement, computed: &BurnsideElement) -> Vec<TermDiff> {
    let delta = computed - expected;
    delta
        .terms()
        .map(|(key, _)| TermDiff {
            id: key.id as usize,
            n: key.n,
            class: class_label(table, key),
            expected: expected.coefficient(key),
            computed: computed.coefficient(key),
        })
        .collect()
}

// ---------------------------------------------------------------- grid

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct GridRecord {
    pub c1: f64,
    pub c2: f64,
    pub region: String,
    pub alpha0: Option<f64>,
}

pub fn grid(kind: SystemKind, resolution: usize) -> CliResult<Vec<GridRecord>> {
    if resolution < 2 {
        return Err(CliError::Usage(format!("grid resolution {resolution} < 2")));
    }
    Ok(systems::region_grid(kind, resolution)?
        .into_iter()
        .map(|cell| GridRecord { c1: cell.c1, c2: cell.c2, region: cell.region.to_string(), alpha0: cell.alpha0 })
        .collect())
}
