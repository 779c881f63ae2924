//! Closed subgroups of `O(2)` up to conjugacy, quotients `K/Z_K`, and the
//! finitization `O(2) → D_m`.
//!
//! `O(2)` is generated by rotations `e^{iθ}` and the reflection `κ`. In the
//! finitized group `D_m` (see [`FiniteGroup::dihedral`]) the rotation `r` is
//! `e^{2πi/m}` and the canonical reflection is `κ` itself.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};

/// A conjugacy class of closed subgroups of `O(2)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum O2Subgroup {
    /// Rotations by multiples of `2π/n`.
    Z(u32),
    /// `Z_n` together with `n` reflections; `D_1` is a single reflection.
    D(u32),
    SO2,
    O2,
}

impl O2Subgroup {
    /// Group order, `None` for the one-dimensional subgroups.
    pub fn order(self) -> Option<u64> {
        match self {
            O2Subgroup::Z(n) => Some(n as u64),
            O2Subgroup::D(n) => Some(2 * n as u64),
            O2Subgroup::SO2 | O2Subgroup::O2 => None,
        }
    }

    pub fn dimension(self) -> u32 {
        match self {
            O2Subgroup::SO2 | O2Subgroup::O2 => 1,
            _ => 0,
        }
    }

    pub fn has_reflections(self) -> bool {
        matches!(self, O2Subgroup::D(_) | O2Subgroup::O2)
    }

    /// Rotation subgroup.
    pub fn rotations(self) -> O2Subgroup {
        match self {
            O2Subgroup::D(n) => O2Subgroup::Z(n),
            O2Subgroup::O2 => O2Subgroup::SO2,
            other => other,
        }
    }

    /// Containment of the canonical representatives (reflection `κ` on the
    /// base axis), which decides containment up to conjugacy.
    pub fn contains(self, other: O2Subgroup) -> bool {
        use O2Subgroup::*;
        match (self, other) {
            (O2, _) => true,
            (SO2, Z(_)) | (SO2, SO2) => true,
            (Z(a), Z(b)) => a % b == 0,
            (D(a), Z(b)) | (D(a), D(b)) => a % b == 0,
            _ => false,
        }
    }

    /// The normalizer in `O(2)`: `N(D_n) = D_{2n}`, everything else is normal.
    pub fn normalizer(self) -> O2Subgroup {
        match self {
            O2Subgroup::D(n) => O2Subgroup::D(2 * n),
            _ => O2Subgroup::O2,
        }
    }
}

impl fmt::Display for O2Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            O2Subgroup::Z(n) => write!(f, "Z{n}"),
            O2Subgroup::D(n) => write!(f, "D{n}"),
            O2Subgroup::SO2 => write!(f, "SO2"),
            O2Subgroup::O2 => write!(f, "O2"),
        }
    }
}

/// An abstract quotient `L ≅ K/Z_K`. `Cyclic(2)` is the rotation-type `Z2`
/// and `Dihedral(1)` the reflection-type `D1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Quotient {
    Cyclic(u32),
    Dihedral(u32),
}

impl Quotient {
    pub fn order(self) -> usize {
        match self {
            Quotient::Cyclic(m) => m as usize,
            Quotient::Dihedral(m) => 2 * m as usize,
        }
    }

    /// The concrete group model: `Z_m` or `D_m` as in [`FiniteGroup`].
    pub fn group(self) -> FiniteGroup {
        match self {
            Quotient::Cyclic(m) => FiniteGroup::cyclic(m),
            Quotient::Dihedral(m) => FiniteGroup::dihedral(m),
        }
    }

    /// Order of the rotation subgroup `<r>`.
    pub fn rotation_order(self) -> usize {
        match self {
            Quotient::Cyclic(m) | Quotient::Dihedral(m) => m as usize,
        }
    }

    /// Whether an element of the model lies in the rotation subgroup `<r>`.
    pub fn is_rotation(self, x: Elem) -> bool {
        match self {
            Quotient::Cyclic(_) => true,
            Quotient::Dihedral(m) => x < m,
        }
    }
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quotient::Cyclic(m) => write!(f, "Z{m}"),
            Quotient::Dihedral(m) => write!(f, "D{m}"),
        }
    }
}

/// A member of a family of subgroups parameterized by `n`: `Z_{k·n}`,
/// `D_{k·n}`, or one of the two one-dimensional subgroups.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum O2Family {
    Z(u32),
    D(u32),
    SO2,
    O2,
}

impl O2Family {
    pub fn at(self, n: u32) -> O2Subgroup {
        match self {
            O2Family::Z(k) => O2Subgroup::Z(k * n),
            O2Family::D(k) => O2Subgroup::D(k * n),
            O2Family::SO2 => O2Subgroup::SO2,
            O2Family::O2 => O2Subgroup::O2,
        }
    }

    pub fn is_parametric(self) -> bool {
        matches!(self, O2Family::Z(_) | O2Family::D(_))
    }

    /// Display form with a formal `n`, e.g. `D2n` or `SO2`.
    pub fn symbol(self) -> String {
        match self {
            O2Family::Z(1) => "Zn".into(),
            O2Family::D(1) => "Dn".into(),
            O2Family::Z(k) => format!("Z{k}n"),
            O2Family::D(k) => format!("D{k}n"),
            O2Family::SO2 => "SO2".into(),
            O2Family::O2 => "O2".into(),
        }
    }
}

/// One row `(K, Z_K, L)` of the quotient table, with `n` formal.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QuotientCase {
    pub k: O2Family,
    pub z: O2Family,
    pub quotient: Quotient,
}

/// `|(N(K) ∩ N(Z_K)) / K|`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum NormalizerOrder {
    Finite(u32),
    Infinite,
}

impl QuotientCase {
    /// `K/Z_K ≅ L` for a concrete `n`.
    pub fn at(self, n: u32) -> (O2Subgroup, O2Subgroup) {
        (self.k.at(n), self.z.at(n))
    }

    pub fn dimension(self) -> u32 {
        self.k.at(1).dimension()
    }

    /// `|(N(K) ∩ N(Z_K)) / K|`, independent of `n`.
    pub fn normalizer_quotient_order(self) -> NormalizerOrder {
        normalizer_quotient_order(self.k.at(1), self.z.at(1)).expect("table rows are compatible")
    }

    /// Generators of the automorphisms of `L` induced by conjugation with
    /// `N(K) ∩ N(Z_K)`, as image lists on [`Quotient::group`]. Inner
    /// automorphisms of `L` (coming from `K`) are included.
    pub fn induced_automorphisms(self) -> Vec<Vec<Elem>> {
        let lg = self.quotient.group();
        let mut autos: Vec<Vec<Elem>> = Vec::new();
        for &x in lg.generators() {
            autos.push(lg.elements().map(|y| lg.conj(x, y)).collect());
        }
        match (self.k, self.quotient) {
            // reflections invert the rotation quotient
            (O2Family::Z(_), Quotient::Cyclic(m)) if m > 2 => {
                autos.push((0..m).map(|a| (m - a) % m).collect());
            }
            // a half-step rotation of N(D_{mn}) = D_{2mn} fixes r̄, sends κ̄ to κ̄ r̄⁻¹
            (O2Family::D(_), Quotient::Dihedral(m)) if m > 1 => {
                let mut images: Vec<Elem> = (0..m).collect();
                images.extend((0..m).map(|a| m + (a + m - 1) % m));
                autos.push(images);
            }
            _ => {}
        }
        autos
    }

    /// The quotient map `ψ: K → L` on the finitized `K ≤ D_m`, given an
    /// element of `D_m` lying in `finitize(K, m)`.
    pub fn psi(self, n: u32, m: u32, x: Elem) -> Elem {
        let k = self.k.at(n);
        let (reflection, exponent) = (x >= m, x % m);
        // exponent of the rotation generator of K
        let q = match k {
            O2Subgroup::Z(q) | O2Subgroup::D(q) => q,
            _ => m,
        };
        let a = exponent / (m / q);
        match self.quotient {
            Quotient::Cyclic(1) => 0,
            Quotient::Dihedral(1) => reflection as Elem,
            Quotient::Cyclic(order) => a % order,
            Quotient::Dihedral(order) => {
                if reflection {
                    order + a % order
                } else {
                    a % order
                }
            }
        }
    }
}

/// All rows of the quotient table with `|L|` bounded by `max_index` for the
/// cyclic and dihedral families, in display order.
pub fn quotient_cases(max_index: u32) -> Vec<QuotientCase> {
    let case = |k, z, quotient| QuotientCase { k, z, quotient };
    let mut out = vec![case(O2Family::Z(1), O2Family::Z(1), Quotient::Cyclic(1))];
    for m in 2..=max_index {
        out.push(case(O2Family::Z(m), O2Family::Z(1), Quotient::Cyclic(m)));
    }
    for m in 1..=max_index {
        out.push(case(O2Family::D(m), O2Family::Z(1), Quotient::Dihedral(m)));
    }
    out.push(case(O2Family::D(1), O2Family::D(1), Quotient::Cyclic(1)));
    if max_index >= 2 {
        out.push(case(O2Family::D(2), O2Family::D(1), Quotient::Cyclic(2)));
    }
    out.push(case(O2Family::SO2, O2Family::SO2, Quotient::Cyclic(1)));
    out.push(case(O2Family::O2, O2Family::SO2, Quotient::Dihedral(1)));
    out.push(case(O2Family::O2, O2Family::O2, Quotient::Cyclic(1)));
    out
}

/// The quotient `K/Z_K` for a normal pair, or an error if `z` is not a
/// normal subgroup of `k` with finite quotient.
pub fn quotient_of(k: O2Subgroup, z: O2Subgroup) -> Result<Quotient> {
    use O2Subgroup::*;
    let bad = || Error::IncompatiblePair(format!("{z} is not normal of finite index in {k}"));
    match (k, z) {
        (Z(a), Z(b)) if a % b == 0 => Ok(Quotient::Cyclic(a / b)),
        (D(a), Z(b)) if a % b == 0 => Ok(Quotient::Dihedral(a / b)),
        (D(a), D(b)) if a == b => Ok(Quotient::Cyclic(1)),
        (D(a), D(b)) if a == 2 * b => Ok(Quotient::Cyclic(2)),
        (SO2, SO2) | (O2, O2) => Ok(Quotient::Cyclic(1)),
        (O2, SO2) => Ok(Quotient::Dihedral(1)),
        _ => Err(bad()),
    }
}

/// `|(N(K) ∩ N(Z_K)) / K|` in `O(2)`.
pub fn normalizer_quotient_order(k: O2Subgroup, z: O2Subgroup) -> Result<NormalizerOrder> {
    use O2Subgroup::*;
    quotient_of(k, z)?;
    Ok(match (k, z) {
        (Z(_), _) => NormalizerOrder::Infinite,
        (SO2, _) => NormalizerOrder::Finite(2),
        (O2, _) => NormalizerOrder::Finite(1),
        // N(D_a) ∩ N(D_b) = D_{2b}
        (D(a), D(b)) => NormalizerOrder::Finite(2 * b / a),
        // N(D_a) ∩ N(Z_b) = D_{2a}
        (D(_), _) => NormalizerOrder::Finite(2),
    })
}

/// The image of `k` in `D_m` under `ρ(O(2)) = D_m`, `ρ(SO(2)) = Z_m` and the
/// canonical embeddings `Z_j = <r^{m/j}>`, `D_j = <r^{m/j}, κ>`.
pub fn finitize(dm: &FiniteGroup, k: O2Subgroup, m: u32) -> Result<Subgroup> {
    debug_assert_eq!(dm.order(), 2 * m as usize);
    let step = |j: u32, what: &'static str| {
        if j == 0 || !m.is_multiple_of(j) {
            Err(Error::Divisibility { what, index: j, m })
        } else {
            Ok(m / j)
        }
    };
    Ok(match k {
        O2Subgroup::Z(j) => dm.closure(&[step(j, "finitize Z")? % m]),
        O2Subgroup::D(j) => dm.closure(&[step(j, "finitize D")? % m, m]),
        O2Subgroup::SO2 => dm.closure(&[1 % m]),
        O2Subgroup::O2 => dm.closure(&[1 % m, m]),
    })
}
