//! Cube-coupled reversible networks: a mixed delay network (MDDE) and an
//! integro-differential network with a heat kernel (IDE).
//!
//! Eight identical cells sit at the vertices of the cube and are coupled by
//! `c2 B`, `B` the cube adjacency minus `3 I`. After the first-order
//! reformulation in `(u1, u2)`, the linearization on the `l`-th Fourier
//! mode splits over the isotypical components `V_j` of the vertex
//! representation, and on each component it only sees the eigenvalue
//! `β_j` of `B`. With `K_j = −c1 − c2 β_j` and the kernel weight `w_l(α)`
//! (`2 cos lα` for the MDDE, `e^{−(lα)²/2}` for the IDE):
//!
//! * `l = 0`: `μ_{j,0} = K_j − w_0` on `W¹_{j,0}` and `−1` on `W²_{j,0}`;
//! * `l > 0`: `μ^±_{j,l} = 1 ± √(K_j − w_l(α)) / l` on `W_{j,l}`.
//!
//! Only `μ⁻` can change sign, at `K_j − w_l(α) = l²`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::burnside::BurnsideElement;
use crate::degree::{DegreeEngine, EigenSign, IsotypicalRep, SpectralEntry};
use crate::error::{Error, Result};
use crate::goursat::ClassKey;
use crate::group::Elem;
use crate::s4::{CubeGroup, VERTICES};

/// The coupling matrix in the vertex order of [`VERTICES`].
pub const COUPLING: [[i64; 8]; 8] = [
    [-3, 1, 0, 1, 1, 0, 0, 0],
    [1, -3, 1, 0, 0, 1, 0, 0],
    [0, 1, -3, 1, 0, 0, 1, 0],
    [1, 0, 1, -3, 0, 0, 0, 1],
    [1, 0, 0, 0, -3, 1, 0, 1],
    [0, 1, 0, 0, 1, -3, 1, 0],
    [0, 0, 1, 0, 0, 1, -3, 1],
    [0, 0, 0, 1, 1, 0, 1, -3],
];

/// Offsets below this are treated as an exact zero of a threshold or an
/// eigenvalue.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SystemKind {
    Mdde,
    Ide,
}

impl SystemKind {
    pub const ALL: [SystemKind; 2] = [SystemKind::Mdde, SystemKind::Ide];

    pub fn name(self) -> &'static str {
        match self {
            SystemKind::Mdde => "mdde",
            SystemKind::Ide => "ide",
        }
    }

    /// `(c1 range, c2 range)` of the plotted parameter box, open at both ends.
    pub fn parameter_box(self) -> ((f64, f64), (f64, f64)) {
        match self {
            SystemKind::Mdde => ((-2.5, 0.0), (0.0, 1.5)),
            SystemKind::Ide => ((-1.25, 0.0), (0.0, 1.25)),
        }
    }

    /// Number of labelled regions; the last one is the equality row.
    pub fn region_count(self) -> u8 {
        match self {
            SystemKind::Mdde => 7,
            SystemKind::Ide => 4,
        }
    }

    /// The coupling eigenvalue of the surface whose crossings are studied.
    pub fn primary_beta(self) -> i64 {
        match self {
            SystemKind::Mdde => -4,
            SystemKind::Ide => -2,
        }
    }

    fn alpha_window(self) -> f64 {
        match self {
            SystemKind::Mdde => core::f64::consts::PI,
            SystemKind::Ide => f64::INFINITY,
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `c1 < 0` is the linear stiffness, `c2 > 0` the coupling strength.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct NetworkModel {
    pub kind: SystemKind,
    pub c1: f64,
    pub c2: f64,
}

impl NetworkModel {
    pub fn new(kind: SystemKind, c1: f64, c2: f64) -> Result<Self> {
        if c1.is_nan() || c2.is_nan() || c1 >= 0.0 || c2 <= 0.0 {
            return Err(Error::OutOfRange(format!("need c1 < 0 < c2, got c1 = {c1}, c2 = {c2}")));
        }
        Ok(NetworkModel { kind, c1, c2 })
    }

    pub fn in_box(&self) -> bool {
        let ((a, b), (c, d)) = self.kind.parameter_box();
        a < self.c1 && self.c1 < b && c < self.c2 && self.c2 < d
    }

    /// Fourier weight of the coupling kernel at mode `l`; `α` is unused at `l = 0`.
    pub fn kernel_weight(&self, alpha: f64, l: u32) -> f64 {
        let t = l as f64 * alpha;
        match self.kind {
            SystemKind::Mdde => 2.0 * libm::cos(t),
            SystemKind::Ide => libm::exp(-t * t / 2.0),
        }
    }

    /// `K = −c1 − c2 β`.
    pub fn stiffness(&self, beta: i64) -> f64 {
        -self.c1 - self.c2 * beta as f64
    }

    /// `K − w_l(α)`; `μ⁻ < 0` exactly when this exceeds `l²`.
    pub fn radicand(&self, beta: i64, alpha: f64, l: u32) -> f64 {
        self.stiffness(beta) - self.kernel_weight(alpha, l)
    }

    /// Modes above this bound have `μ⁻ > 0` for every `α` and every `β`.
    pub fn mode_bound(&self, spectrum: &CouplingSpectrum) -> u32 {
        let w_max = match self.kind {
            SystemKind::Mdde => 2.0,
            SystemKind::Ide => 1.0,
        };
        let k_max = (1..=4).map(|j| self.stiffness(spectrum.beta(j))).fold(f64::MIN, f64::max);
        let bound = libm::sqrt((k_max + w_max).max(0.0));
        (libm::ceil(bound) as u32).max(1)
    }

    /// `D_uf` restricted to mode `l` on `(u1, u2) ∈ R^8 ⊕ R^8`:
    /// `[[0, I], [c1 I + c2 B + w_l I, 0]]`.
    pub fn d_uf(&self, alpha: f64, l: u32) -> Vec<Vec<f64>> {
        let w = self.kernel_weight(alpha, l);
        let mut out = vec![vec![0.0; 16]; 16];
        for i in 0..8 {
            out[i][8 + i] = 1.0;
            for j in 0..8 {
                out[8 + i][j] = self.c2 * COUPLING[i][j] as f64 + if i == j { self.c1 + w } else { 0.0 };
            }
        }
        out
    }

    /// The block `a_l(α)`: `I − (1/il) D_uf` for `l > 0`, and `−S D_uf`
    /// with `S` swapping `u1` and `u2` for `l = 0`.
    pub fn linearization_block(&self, alpha: f64, l: u32) -> Vec<Vec<Complex64>> {
        let d = self.d_uf(alpha, l);
        let mut out = vec![vec![Complex64::new(0.0, 0.0); 16]; 16];
        for i in 0..16 {
            for j in 0..16 {
                out[i][j] = if l == 0 {
                    Complex64::new(-d[(i + 8) % 16][j], 0.0)
                } else {
                    // −1/(il) = i/l
                    let identity = if i == j { 1.0 } else { 0.0 };
                    Complex64::new(identity, d[i][j] / l as f64)
                };
            }
        }
        out
    }
}

/// `β_j` for each irreducible `V_j`, each occurring once in the vertex
/// representation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CouplingSpectrum {
    beta: [i64; 4],
}

impl CouplingSpectrum {
    /// Applies the character projectors `P_j = (d_j/24) Σ χ_j(g) ρ(g)` to
    /// `B` and reads off `B P_j = β_j P_j`, all in integers scaled by 24.
    pub fn from_projectors(cube: &CubeGroup) -> Result<Self> {
        let group = cube.group();
        for (a, row) in COUPLING.iter().enumerate() {
            for (b, &entry) in row.iter().enumerate() {
                let differing = (0..3).filter(|&t| VERTICES[a][t] != VERTICES[b][t]).count();
                let expected = match differing {
                    0 => -3,
                    1 => 1,
                    _ => 0,
                };
                if entry != expected {
                    return Err(Error::Inconsistent(format!("coupling entry ({a}, {b}) is not cube adjacency")));
                }
            }
        }
        let mut beta = [0i64; 4];
        let mut total_dim = 0;
        for (slot, j) in (1..=4).enumerate() {
            let dim = CubeGroup::irrep_dim(j) as i64;
            let mut projector = [[0i64; 8]; 8];
            for g in group.elements() {
                let chi = cube.character(j, g);
                let perm = cube.vertex_perm(g as Elem);
                for v in 0..8 {
                    projector[perm.apply(v as u32) as usize][v] += dim * chi;
                }
            }
            let trace: i64 = (0..8).map(|i| projector[i][i]).sum();
            if trace != 24 * dim {
                return Err(Error::Inconsistent(format!("V{j} does not occur once in the vertex representation")));
            }
            total_dim += dim;
            let product = mat_mul(&COUPLING, &projector);
            let (r, c) = (0..64)
                .map(|t| (t / 8, t % 8))
                .find(|&(r, c)| projector[r][c] != 0)
                .expect("nonzero projector");
            if product[r][c] % projector[r][c] != 0 {
                return Err(Error::Inconsistent(format!("non-integral coupling eigenvalue on V{j}")));
            }
            let value = product[r][c] / projector[r][c];
            for r in 0..8 {
                for c in 0..8 {
                    if product[r][c] != value * projector[r][c] {
                        return Err(Error::Inconsistent(format!("B does not act by a scalar on V{j}")));
                    }
                }
            }
            beta[slot] = value;
        }
        debug_assert_eq!(total_dim, 8);
        Ok(CouplingSpectrum { beta })
    }

    /// The assignment `β_j = −2(j − 1)`.
    pub fn literal() -> Self {
        CouplingSpectrum { beta: [0, -2, -4, -6] }
    }

    pub fn from_betas(beta: [i64; 4]) -> Self {
        CouplingSpectrum { beta }
    }

    pub fn beta(&self, j: usize) -> i64 {
        self.beta[j - 1]
    }

    pub fn betas(&self) -> [i64; 4] {
        self.beta
    }

    /// The component carrying `β`, if any.
    pub fn component_of(&self, beta: i64) -> Option<usize> {
        self.beta.iter().position(|&b| b == beta).map(|i| i + 1)
    }

    /// Moves the value of `V_{perm[j-1]}` onto `V_j`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        CouplingSpectrum { beta: perm.map(|source| self.beta[source - 1]) }
    }

    /// The permutations of `{1, 2, 3, 4}` preserving `dim V_j`, identity first.
    pub fn dimension_preserving_permutations() -> [[usize; 4]; 4] {
        [[1, 2, 3, 4], [2, 1, 3, 4], [1, 2, 4, 3], [2, 1, 4, 3]]
    }
}

fn mat_mul(a: &[[i64; 8]; 8], b: &[[i64; 8]; 8]) -> [[i64; 8]; 8] {
    let mut out = [[0; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            out[i][j] = (0..8).map(|t| a[i][t] * b[t][j]).sum();
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Branch {
    Single,
    Plus,
    Minus,
}

/// One eigenvalue of `a_l(α)` on one isotypical component. Complex values
/// come from a negative radicand and never cross zero.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SpectralDatum {
    pub mu: f64,
    pub imag: f64,
    pub j: usize,
    pub l: u32,
    pub k: u8,
    pub branch: Branch,
    pub multiplicity: u32,
}

impl SpectralDatum {
    pub fn is_real(&self) -> bool {
        self.imag == 0.0
    }

    pub fn rep(&self) -> IsotypicalRep {
        IsotypicalRep::new(self.j, self.l, self.k).expect("valid indices")
    }
}

/// Closed-form eigenvalues of `a_l(α)`. At `l = 0` a zero `μ_{j,0}` is a
/// steady-state degeneracy.
pub fn eigenvalues_l(model: &NetworkModel, spectrum: &CouplingSpectrum, alpha: f64, l: u32) -> Result<Vec<SpectralDatum>> {
    let datum = |mu, imag, j, k, branch| SpectralDatum { mu, imag, j, l, k, branch, multiplicity: 1 };
    let mut out = Vec::new();
    for j in 1..=4 {
        let beta = spectrum.beta(j);
        if l == 0 {
            let mu = model.radicand(beta, alpha, 0);
            if libm::fabs(mu) < TOLERANCE {
                return Err(Error::SteadyState(format!(
                    "mu_{{{j},0}} = 0 at c1 = {}, c2 = {}",
                    model.c1, model.c2
                )));
            }
            out.push(datum(mu, 0.0, j, 1, Branch::Single));
            out.push(datum(-1.0, 0.0, j, 2, Branch::Single));
        } else {
            let radicand = model.radicand(beta, alpha, l);
            let root = libm::sqrt(libm::fabs(radicand)) / l as f64;
            if radicand >= 0.0 {
                out.push(datum(1.0 + root, 0.0, j, 0, Branch::Plus));
                out.push(datum(1.0 - root, 0.0, j, 0, Branch::Minus));
            } else {
                out.push(datum(1.0, root, j, 0, Branch::Plus));
                out.push(datum(1.0, -root, j, 0, Branch::Minus));
            }
        }
    }
    Ok(out)
}

/// How `μ⁻` passes through zero as `α` increases.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Crossing {
    Decreasing,
    Increasing,
    Tangent,
}

/// A zero of `μ⁻_{j,l}` at `α`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct CriticalPoint {
    pub j: usize,
    pub l: u32,
    pub alpha: f64,
    pub crossing: Crossing,
}

impl CriticalPoint {
    /// Tangential zeros are not bifurcation points.
    pub fn is_bifurcation(&self) -> bool {
        self.crossing != Crossing::Tangent
    }
}

/// Zeros of `μ⁻_{j,l}` for `1 ≤ l ≤ l_max`, sorted by `α`: on `(0, π)` for
/// the MDDE and on `(0, ∞)` for the IDE.
pub fn critical_surfaces(model: &NetworkModel, spectrum: &CouplingSpectrum, l_max: u32) -> Vec<CriticalPoint> {
    let mut out = Vec::new();
    for l in 1..=l_max {
        let lf = l as f64;
        for j in 1..=4 {
            // the kernel weight must equal K − l²
            let target = model.stiffness(spectrum.beta(j)) - lf * lf;
            match model.kind {
                SystemKind::Mdde => {
                    let c = target / 2.0;
                    if !(-1.0..=1.0).contains(&c) {
                        continue;
                    }
                    let theta = libm::acos(c);
                    let mut phases = Vec::new();
                    let mut turn = 0.0;
                    while turn < lf * core::f64::consts::PI + core::f64::consts::TAU {
                        phases.push(turn + theta);
                        phases.push(turn + core::f64::consts::TAU - theta);
                        turn += core::f64::consts::TAU;
                    }
                    phases.sort_by(f64::total_cmp);
                    phases.dedup_by(|a, b| libm::fabs(*a - *b) < TOLERANCE);
                    for phase in phases {
                        let alpha = phase / lf;
                        if alpha <= 0.0 || alpha >= core::f64::consts::PI {
                            continue;
                        }
                        // dμ⁻/dα = −sin(lα)/l at the zero
                        let slope = -libm::sin(phase);
                        out.push(CriticalPoint { j, l, alpha, crossing: crossing_of(slope) });
                    }
                }
                SystemKind::Ide => {
                    if target > 0.0 && target < 1.0 {
                        let alpha = libm::sqrt(-2.0 * libm::log(target)) / lf;
                        out.push(CriticalPoint { j, l, alpha, crossing: Crossing::Decreasing });
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.alpha.total_cmp(&b.alpha).then(a.l.cmp(&b.l)).then(a.j.cmp(&b.j)));
    out
}

fn crossing_of(slope: f64) -> Crossing {
    if libm::fabs(slope) < TOLERANCE {
        Crossing::Tangent
    } else if slope < 0.0 {
        Crossing::Decreasing
    } else {
        Crossing::Increasing
    }
}

/// `α₀` on the primary surface (`β = primary_beta`, `l = 1`), from the
/// closed form: `arccos((−c1 + 4c2 − 1)/2)` for the MDDE and
/// `√(−2 ln(−c1 + 2c2 − 1))` for the IDE.
pub fn primary_alpha0(model: &NetworkModel) -> Option<f64> {
    let value = model.stiffness(model.kind.primary_beta()) - 1.0;
    match model.kind {
        SystemKind::Mdde => (value / 2.0 > -1.0 && value / 2.0 < 1.0).then(|| libm::acos(value / 2.0)),
        SystemKind::Ide => (value > 0.0 && value < 1.0).then(|| libm::sqrt(-2.0 * libm::log(value))),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum RegionLabel {
    /// Regions are numbered from 1; the last one of each system is the
    /// equality row.
    Region(u8),
    /// A threshold other than the equality row holds with equality.
    Boundary,
    /// No crossing on the primary surface.
    None,
}

impl RegionLabel {
    pub fn numeral(number: u8) -> &'static str {
        ["I", "II", "III", "IV", "V", "VI", "VII"].get(number as usize - 1).copied().unwrap_or("?")
    }

    pub fn from_numeral(text: &str) -> Option<u8> {
        (1..=7).find(|&n| Self::numeral(n) == text)
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionLabel::Region(n) => f.write_str(Self::numeral(*n)),
            RegionLabel::Boundary => f.write_str("BOUNDARY"),
            RegionLabel::None => f.write_str("NONE"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct RegionReport {
    pub kind: SystemKind,
    pub label: RegionLabel,
    pub predicates: Vec<&'static str>,
}

/// Named thresholds `g(c1, c2)`; a region is a sign pattern of these, the
/// equality row is `g = 0` for the last one.
fn thresholds(kind: SystemKind, c1: f64, c2: f64) -> Vec<(&'static str, f64)> {
    match kind {
        SystemKind::Mdde => {
            let x = -c1 + 4.0 * c2;
            let s = -c1 + 6.0 * c2;
            vec![
                ("-c1+4c2<3", 3.0 - x),
                ("-c1>2", -c1 - 2.0),
                ("-c1+2c2>2", -c1 + 2.0 * c2 - 2.0),
                ("-c1+4c2>2", x - 2.0),
                ("-c1+6c2>2", s - 2.0),
                ("-c1+6c2-(-c1+4c2-1)^2>2", s - (x - 1.0) * (x - 1.0) - 2.0),
            ]
        }
        SystemKind::Ide => {
            let y = -c1 + 2.0 * c2 - 1.0;
            vec![
                ("-c1+2c2<2", 1.0 - y),
                ("-c1+2c2>1", y),
                ("-c1>1", -c1 - 1.0),
                ("-c1+6c2-4>(-c1+2c2-1)^4", -c1 + 6.0 * c2 - 4.0 - y * y * y * y),
            ]
        }
    }
}

/// Region of the parameter plane for the primary surface.
pub fn classify_region(model: &NetworkModel) -> Result<RegionReport> {
    if !model.in_box() {
        let ((a, b), (c, d)) = model.kind.parameter_box();
        return Err(Error::OutOfRange(format!(
            "{} needs {a} < c1 < {b} and {c} < c2 < {d}, got ({}, {})",
            model.kind, model.c1, model.c2
        )));
    }
    let kind = model.kind;
    let values = thresholds(kind, model.c1, model.c2);
    let predicates: Vec<&'static str> = values.iter().filter(|v| v.1 > 0.0).map(|v| v.0).collect();
    let report = |label| Ok(RegionReport { kind, label, predicates: predicates.clone() });
    let shading = match kind {
        SystemKind::Mdde => 1,
        SystemKind::Ide => 2,
    };
    if values[..shading].iter().any(|v| v.1 <= 0.0) {
        return report(RegionLabel::None);
    }
    let equality = libm::fabs(values[values.len() - 1].1) < TOLERANCE;
    if equality {
        return report(RegionLabel::Region(kind.region_count()));
    }
    if values.iter().any(|v| libm::fabs(v.1) < TOLERANCE) {
        return report(RegionLabel::Boundary);
    }
    let positive = |i: usize| values[i].1 > 0.0;
    let label = match kind {
        SystemKind::Mdde => {
            let steady = (1..=4).filter(|&i| positive(i)).count();
            match (steady, positive(5)) {
                (4, false) => 1,
                (3, false) => 2,
                (2, false) => 3,
                (1, false) => 4,
                (1, true) => 5,
                (0, false) => 6,
                _ => {
                    return Err(Error::Inconsistent(format!(
                        "unexpected sign pattern at ({}, {})",
                        model.c1, model.c2
                    )))
                }
            }
        }
        SystemKind::Ide => match (positive(2), positive(3)) {
            (true, false) => 1,
            (false, true) => 2,
            (false, false) => 3,
            (true, true) => {
                return Err(Error::Inconsistent(format!(
                    "unexpected sign pattern at ({}, {})",
                    model.c1, model.c2
                )))
            }
        },
    };
    report(RegionLabel::Region(label))
}

/// The interior point of a region farthest from every threshold and from
/// the box walls, searched on a `resolution²` grid. For the equality row
/// the point is found by bisection on the equality along each `c1` column.
pub fn representative_point(kind: SystemKind, region: u8, resolution: usize) -> Result<(f64, f64)> {
    if region == 0 || region > kind.region_count() {
        return Err(Error::OutOfRange(format!("{kind} has regions I to {}", RegionLabel::numeral(kind.region_count()))));
    }
    let ((a, b), (c, d)) = kind.parameter_box();
    let step1 = (b - a) / resolution as f64;
    let step2 = (d - c) / resolution as f64;
    let margin = |c1: f64, c2: f64, skip_last: bool| {
        let values = thresholds(kind, c1, c2);
        let count = if skip_last { values.len() - 1 } else { values.len() };
        values[..count]
            .iter()
            .map(|v| libm::fabs(v.1))
            .chain([c1 - a, b - c1, c2 - c, d - c2])
            .fold(f64::INFINITY, f64::min)
    };
    let mut best: Option<(f64, (f64, f64))> = None;
    let mut offer = |score: f64, point: (f64, f64)| {
        if best.is_none_or(|(s, _)| score > s) {
            best = Some((score, point));
        }
    };
    let is_equality = region == kind.region_count();
    for i in 0..resolution {
        let c1 = a + (i as f64 + 0.5) * step1;
        if is_equality {
            let last = |c2: f64| thresholds(kind, c1, c2).last().expect("thresholds").1;
            for t in 0..resolution {
                let (mut lo, mut hi) = (c + t as f64 * step2, c + (t + 1) as f64 * step2);
                if lo <= c {
                    lo = c + step2 * 1e-6;
                }
                if (last(lo) > 0.0) == (last(hi) > 0.0) {
                    continue;
                }
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if (last(mid) > 0.0) == (last(lo) > 0.0) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let c2 = 0.5 * (lo + hi);
                let Ok(model) = NetworkModel::new(kind, c1, c2) else { continue };
                if matches!(classify_region(&model), Ok(r) if r.label == RegionLabel::Region(region)) {
                    offer(margin(c1, c2, true), (c1, c2));
                }
            }
        } else {
            for t in 0..resolution {
                let c2 = c + (t as f64 + 0.5) * step2;
                let Ok(model) = NetworkModel::new(kind, c1, c2) else { continue };
                if matches!(classify_region(&model), Ok(r) if r.label == RegionLabel::Region(region)) {
                    offer(margin(c1, c2, false), (c1, c2));
                }
            }
        }
    }
    best.map(|(_, p)| p)
        .ok_or_else(|| Error::OutOfRange(format!("region {} of {kind} not found", RegionLabel::numeral(region))))
}

/// Settings for [`bifurcation`]; `None` selects automatically.
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct OmegaOptions {
    pub rho: Option<f64>,
    pub l_max: Option<u32>,
}

/// The invariant at one crossing, with the data used to compute it.
#[derive(Clone, PartialEq, Debug)]
pub struct Bifurcation {
    pub surface: (usize, u32),
    pub alpha0: f64,
    pub rho: f64,
    pub l_max: u32,
    /// Other zeros of `μ⁻` at `α₀`.
    pub collisions: Vec<CriticalPoint>,
    /// [`omega`] without collisions, [`omega_jump`] with them.
    pub omega: BurnsideElement,
    /// [`omega`] evaluated straight across a collision; `None` without one.
    pub crossing_omega: Option<BurnsideElement>,
}

/// `ω(α₀)` at the first non-tangential zero of `μ⁻_{j,l}` on the given
/// surface.
pub fn bifurcation(
    engine: &DegreeEngine,
    model: &NetworkModel,
    spectrum: &CouplingSpectrum,
    surface: (usize, u32),
    options: OmegaOptions,
) -> Result<Bifurcation> {
    let l_max = options.l_max.unwrap_or_else(|| model.mode_bound(spectrum)).max(surface.1);
    let critical = critical_surfaces(model, spectrum, l_max);
    let point = critical
        .iter()
        .find(|p| (p.j, p.l) == surface && p.is_bifurcation())
        .copied()
        .ok_or_else(|| Error::OutOfRange(format!("no crossing on the surface {surface:?}")))?;
    let alpha0 = point.alpha;
    let near = |p: &CriticalPoint| libm::fabs(p.alpha - alpha0) < COLLISION_GAP;
    let collisions: Vec<CriticalPoint> =
        critical.iter().filter(|p| (p.j, p.l) != surface && near(p)).copied().collect();
    let isolation = critical
        .iter()
        .filter(|p| !near(p))
        .map(|p| libm::fabs(p.alpha - alpha0))
        .fold(alpha0.min(model.kind.alpha_window() - alpha0), f64::min);
    let mut rho = options.rho.unwrap_or(isolation / 2.0);
    while rho >= isolation {
        rho /= 2.0;
    }
    let crossing = omega(engine, model, spectrum, alpha0, rho, l_max)?;
    if collisions.is_empty() {
        return Ok(Bifurcation { surface, alpha0, rho, l_max, collisions, omega: crossing, crossing_omega: None });
    }
    let colliding: Vec<(usize, u32)> = collisions.iter().map(|p| (p.j, p.l)).collect();
    let jump = omega_jump(engine, model, spectrum, alpha0, rho, l_max, &colliding)?;
    Ok(Bifurcation { surface, alpha0, rho, l_max, collisions, omega: jump, crossing_omega: Some(crossing) })
}

/// Critical values closer than this to `α₀` count as a collision.
pub const COLLISION_GAP: f64 = 1e-6;

/// `ω = deg(a₀) · (P(α₀ − ρ) − P(α₀ + ρ))` with `P(α)` the product of the
/// basic degrees of the `W_{j,l}`, `1 ≤ l ≤ l_max`, on which `μ⁻(α) < 0`.
pub fn omega(
    engine: &DegreeEngine,
    model: &NetworkModel,
    spectrum: &CouplingSpectrum,
    alpha0: f64,
    rho: f64,
    l_max: u32,
) -> Result<BurnsideElement> {
    omega_forced(engine, model, spectrum, alpha0, rho, l_max, &[])
}

/// The jump of `ω` across an equality manifold on which the surfaces in
/// `colliding` meet the crossing at `α₀`: the invariant with those `μ⁻`
/// held positive on both sides, minus the one with them held negative.
pub fn omega_jump(
    engine: &DegreeEngine,
    model: &NetworkModel,
    spectrum: &CouplingSpectrum,
    alpha0: f64,
    rho: f64,
    l_max: u32,
    colliding: &[(usize, u32)],
) -> Result<BurnsideElement> {
    let held = |sign| colliding.iter().map(|&(j, l)| (j, l, sign)).collect::<Vec<_>>();
    let positive = omega_forced(engine, model, spectrum, alpha0, rho, l_max, &held(EigenSign::Positive))?;
    let negative = omega_forced(engine, model, spectrum, alpha0, rho, l_max, &held(EigenSign::Negative))?;
    Ok(&positive - &negative)
}

fn omega_forced(
    engine: &DegreeEngine,
    model: &NetworkModel,
    spectrum: &CouplingSpectrum,
    alpha0: f64,
    rho: f64,
    l_max: u32,
    forced: &[(usize, u32, EigenSign)],
) -> Result<BurnsideElement> {
    let ring = engine.ring();
    let steady = signed_entries(&eigenvalues_l(model, spectrum, alpha0, 0)?);
    let a0 = engine.linear_degree(&steady)?;
    let side = |alpha: f64| -> Result<BurnsideElement> {
        let mut entries = Vec::new();
        for l in 1..=l_max {
            for datum in eigenvalues_l(model, spectrum, alpha, l)? {
                let held = forced.iter().find(|f| datum.branch == Branch::Minus && (f.0, f.1) == (datum.j, datum.l));
                let Some(mut entry) = signed_entries(&[datum]).pop() else { continue };
                if let Some(&(_, _, sign)) = held {
                    entry.sign = sign;
                }
                if entry.sign != EigenSign::Positive {
                    entries.push(entry);
                }
            }
        }
        engine.linear_degree(&entries)
    };
    let difference = &side(alpha0 - rho)? - &side(alpha0 + rho)?;
    ring.mul(&a0, &difference)
}

fn signed_entries(data: &[SpectralDatum]) -> Vec<SpectralEntry> {
    data.iter()
        .filter(|d| d.is_real())
        .map(|d| SpectralEntry {
            sign: if libm::fabs(d.mu) < TOLERANCE { EigenSign::Zero } else { EigenSign::of(d.mu) },
            rep: d.rep(),
            multiplicity: d.multiplicity,
        })
        .collect()
}

/// `|S4 / H|` for each class of `ω` that is a maximal orbit type of the
/// mode-`l` space `W_{1,l} ⊕ … ⊕ W_{4,l}`.
pub fn branch_counts(engine: &DegreeEngine, omega: &BurnsideElement, l: u32) -> Result<Vec<(ClassKey, u64)>> {
    if omega.is_zero() {
        return Ok(Vec::new());
    }
    let ring = engine.ring();
    let m = IsotypicalRep::mode(1, l)?.default_order();
    let mut types: Vec<ClassKey> = Vec::new();
    for j in 1..=4 {
        for t in engine.orbit_types(IsotypicalRep::mode(j, l)?)? {
            if !types.contains(&t.key) {
                types.push(t.key);
            }
        }
    }
    let mut maximal = Vec::new();
    for &key in &types {
        let mut is_max = true;
        for &other in &types {
            if other != key && ring.containment_count(key, other, m)? > 0 {
                is_max = false;
                break;
            }
        }
        if is_max {
            maximal.push(key);
        }
    }
    let table = ring.table();
    let group_order = table.gamma.group.order() as u64;
    Ok(omega
        .terms()
        .filter(|(key, _)| maximal.contains(key))
        .map(|(key, _)| {
            let family = &table.families[key.id as usize - 1];
            let h = table.gamma.classes[family.h].representative.order() as u64;
            (key, group_order / h)
        })
        .collect())
}

/// One cell of the region map.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct GridCell {
    pub c1: f64,
    pub c2: f64,
    pub region: RegionLabel,
    pub alpha0: Option<f64>,
}

/// Cell centres of a `resolution × resolution` grid over the parameter box,
/// `c1` varying slowest.
pub fn region_grid(kind: SystemKind, resolution: usize) -> Result<Vec<GridCell>> {
    if resolution < 2 {
        return Err(Error::OutOfRange(format!("grid resolution {resolution} < 2")));
    }
    let ((a, b), (c, d)) = kind.parameter_box();
    let mut out = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        let c1 = a + (i as f64 + 0.5) * (b - a) / resolution as f64;
        for t in 0..resolution {
            let c2 = c + (t as f64 + 0.5) * (d - c) / resolution as f64;
            let model = NetworkModel::new(kind, c1, c2)?;
            let region = classify_region(&model)?.label;
            let alpha0 = if region == RegionLabel::None { None } else { primary_alpha0(&model) };
            out.push(GridCell { c1, c2, region, alpha0 });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projected_spectrum() {
        let s = CouplingSpectrum::from_projectors(&CubeGroup::new()).unwrap();
        assert_eq!(s.betas(), [0, -6, -2, -4]);
        assert_eq!(s.component_of(-6), Some(2));
        assert_eq!(s.permuted([1, 2, 4, 3]).betas(), [0, -6, -4, -2]);
    }

    #[test]
    fn region_examples() {
        let label = |kind, c1, c2| classify_region(&NetworkModel::new(kind, c1, c2).unwrap()).unwrap().label;
        assert_eq!(label(SystemKind::Mdde, -2.2, 0.1), RegionLabel::Region(1));
        assert_eq!(label(SystemKind::Mdde, -1.0, 0.4), RegionLabel::Region(3));
        assert_eq!(label(SystemKind::Ide, -0.5, 0.9), RegionLabel::None);
        assert!(classify_region(&NetworkModel::new(SystemKind::Mdde, -3.0, 0.1).unwrap()).is_err());
        assert!(NetworkModel::new(SystemKind::Mdde, 1.0, 0.1).is_err());
    }

    #[test]
    fn ide_alpha0() {
        let model = NetworkModel::new(SystemKind::Ide, -0.5, 0.5).unwrap();
        let a0 = primary_alpha0(&model).unwrap();
        assert!((a0 - libm::sqrt(2.0 * core::f64::consts::LN_2)).abs() < 1e-12);
        assert!((a0 - 1.17741).abs() < 1e-5);
    }
}
