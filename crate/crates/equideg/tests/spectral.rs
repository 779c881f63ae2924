//! Closed-form eigenvalues against a dense eigensolver run on the assembled
//! linearization blocks.

use equideg::s4::CubeGroup;
use equideg::systems::{eigenvalues_l, CouplingSpectrum, NetworkModel, SystemKind};
use nalgebra::DMatrix;
use num_complex::Complex64;

const GRID: usize = 10;
const MAX_MODE: u32 = 3;
const TOLERANCE: f64 = 1e-10;

/// Deflation threshold of the Schur iteration, relative to the adjacent
/// diagonal entries. At machine epsilon the shifted QR iteration stalls on
/// a few of these sparse blocks.
const DEFLATION: f64 = 1e-14;

fn numeric_eigenvalues(block: &[Vec<Complex64>]) -> Vec<Complex64> {
    let n = block.len();
    let matrix = DMatrix::from_fn(n, n, |i, j| block[i][j]);
    let schur = matrix.try_schur(DEFLATION, 5000).expect("Schur iteration converges");
    schur.eigenvalues().expect("complex Schur form is triangular").iter().copied().collect()
}

/// Worst `|a − b| / max(1, |b|)` over a greedy nearest-neighbour matching
/// of closed forms `b` (with multiplicity) to numeric eigenvalues `a`.
fn worst_error(closed: &[Complex64], numeric: &[Complex64]) -> f64 {
    assert_eq!(closed.len(), numeric.len());
    let mut unused: Vec<Complex64> = numeric.to_vec();
    let mut worst: f64 = 0.0;
    for b in closed {
        let (index, distance) = unused
            .iter()
            .enumerate()
            .map(|(i, a)| (i, (a - b).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("same count");
        unused.swap_remove(index);
        worst = worst.max(distance / b.norm().max(1.0));
    }
    worst
}

fn closed_forms(model: &NetworkModel, spectrum: &CouplingSpectrum, alpha: f64, l: u32) -> Vec<Complex64> {
    let mut out = Vec::new();
    for datum in eigenvalues_l(model, spectrum, alpha, l).expect("regular point") {
        for _ in 0..CubeGroup::irrep_dim(datum.j) {
            out.push(Complex64::new(datum.mu, datum.imag));
        }
    }
    out
}

fn alpha_range(kind: SystemKind) -> (f64, f64) {
    match kind {
        SystemKind::Mdde => (0.0, std::f64::consts::PI),
        SystemKind::Ide => (0.0, 4.0),
    }
}

fn centre(range: (f64, f64), i: usize) -> f64 {
    range.0 + (i as f64 + 0.5) * (range.1 - range.0) / GRID as f64
}

#[test]
fn closed_forms_match_dense_eigensolver() {
    let spectrum = CouplingSpectrum::from_projectors(&CubeGroup::new()).unwrap();
    for kind in SystemKind::ALL {
        let ((c1_lo, c1_hi), (c2_lo, c2_hi)) = kind.parameter_box();
        let mut worst: f64 = 0.0;
        for a in 0..GRID {
            for b in 0..GRID {
                let model = NetworkModel::new(kind, centre((c1_lo, c1_hi), a), centre((c2_lo, c2_hi), b)).unwrap();
                for t in 0..GRID {
                    let alpha = centre(alpha_range(kind), t);
                    for l in 0..=MAX_MODE {
                        let numeric = numeric_eigenvalues(&model.linearization_block(alpha, l));
                        worst = worst.max(worst_error(&closed_forms(&model, &spectrum, alpha, l), &numeric));
                    }
                }
            }
        }
        assert!(worst <= TOLERANCE, "{kind}: worst relative error {worst:e}");
    }
}

#[test]
fn linearization_is_off_diagonal() {
    for kind in SystemKind::ALL {
        let model = NetworkModel::new(kind, -1.0, 0.4).unwrap();
        for l in 0..=MAX_MODE {
            let d = model.d_uf(0.7, l);
            for (i, row) in d.iter().enumerate() {
                for (j, &entry) in row.iter().enumerate() {
                    if (i < 8) == (j < 8) {
                        assert_eq!(entry, 0.0, "{kind} l={l} entry ({i}, {j})");
                    }
                }
            }
        }
    }
}

#[test]
fn mode_blocks_are_real_or_shifted_imaginary() {
    // a_0 is real; a_l − I is purely imaginary for l > 0
    let model = NetworkModel::new(SystemKind::Mdde, -1.0, 0.4).unwrap();
    for l in 0..=MAX_MODE {
        for (i, row) in model.linearization_block(0.7, l).iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let shifted = if l > 0 && i == j { entry - 1.0 } else { *entry };
                if l == 0 {
                    assert_eq!(shifted.im, 0.0);
                } else {
                    assert_eq!(shifted.re, 0.0);
                }
            }
        }
    }
}
