//! Irreducible `S4 × O(2)`-representations, fixed-point dimensions, orbit
//! types and basic degrees.
//!
//! `W^k_{j,0}` is `V_j` with `O(2)` acting through `O(2)/SO(2)`, and `κ`
//! by `(−1)^{k−1}`. `W_{j,l}` is `V_j ⊗ C` with `e^{iθ}` acting by
//! `e^{ilθ}` and `κ` by complex conjugation. Every computation happens in a
//! finitized group `S4 × D_m`; the default `m` for mode `l > 0` is `24l`,
//! which contains the normalizers `D_{2ql}` of every `D_{ql}`, `q | 12`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::burnside::{BurnsideElement, EquivariantBurnside};
use crate::error::{Error, Result};
use crate::goursat::{enumerate_phi, ClassKey, Gamma, Weyl};
use crate::group::Elem;
use crate::linalg::{pow_mod, primes_one_mod, primitive_root_of_unity, rank_mod_p, Rational};
use crate::s4::CubeGroup;

/// `W^k_{j,0}` (`l = 0`, `k ∈ {1, 2}`) or `W_{j,l}` (`l > 0`, `k = 0`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IsotypicalRep {
    pub j: usize,
    pub l: u32,
    pub k: u8,
}

impl IsotypicalRep {
    pub fn new(j: usize, l: u32, k: u8) -> Result<Self> {
        if !(1..=4).contains(&j) {
            return Err(Error::InvalidRepresentation(format!("j = {j} outside 1..=4")));
        }
        let k = match (l, k) {
            (0, 1 | 2) => k,
            (0, _) => return Err(Error::InvalidRepresentation(format!("l = 0 needs k in {{1, 2}}, got {k}"))),
            (_, 0..=2) => 0,
            _ => return Err(Error::InvalidRepresentation(format!("k = {k}"))),
        };
        Ok(IsotypicalRep { j, l, k })
    }

    pub fn mode(j: usize, l: u32) -> Result<Self> {
        Self::new(j, l, 0)
    }

    pub fn component(j: usize, k: u8) -> Result<Self> {
        Self::new(j, 0, k)
    }

    pub fn real_dim(&self) -> usize {
        let d = CubeGroup::irrep_dim(self.j);
        if self.l == 0 {
            d
        } else {
            2 * d
        }
    }

    pub fn default_order(&self) -> u32 {
        if self.l == 0 {
            1
        } else {
            24 * self.l
        }
    }

    /// A finitization order is valid when it is a multiple of the default.
    pub fn valid_order(&self, m: u32) -> bool {
        m > 0 && m.is_multiple_of(self.default_order())
    }

    /// The class label `n` of the orbit types of this representation.
    pub fn class_n(&self) -> u32 {
        self.l
    }

    /// `χ(σ, d)` on `S4 × D_m`, with every root of unity replaced by its
    /// average over Galois conjugates. Summed over a subgroup this equals
    /// the true character sum, which is rational.
    pub fn galois_character(&self, cube: &CubeGroup, m: u32, sigma: Elem, d: Elem) -> Rational {
        let chi = Rational::from_integer(cube.character(self.j, sigma) as i128);
        let reflection = d >= m;
        let exponent = d % m;
        if self.l == 0 {
            return if reflection && self.k == 2 { -chi } else { chi };
        }
        if reflection {
            return Rational::zero();
        }
        let order = m / (self.l as u64 * exponent as u64).gcd(&(m as u64)) as u32;
        chi * Rational::new(2 * mobius(order) as i128, totient(order) as i128)
    }

    /// The complexified action at `(σ, d)` over `F_p`, `ζ` a primitive
    /// `m`-th root of unity mod `p`. Basis `V_j ⊗ (e_+, e_-)`.
    pub fn matrix_mod_p(&self, cube: &CubeGroup, m: u32, p: u64, zeta: u64, sigma: Elem, d: Elem) -> Vec<Vec<u64>> {
        let base = cube.irrep_matrix(self.j, sigma);
        let to_fp = |x: i64| x.rem_euclid(p as i64) as u64;
        let reflection = d >= m;
        if self.l == 0 {
            let sign = if reflection && self.k == 2 { -1 } else { 1 };
            return base.iter().map(|row| row.iter().map(|&x| to_fp(sign * x)).collect()).collect();
        }
        let t = (self.l as u64 * (d % m) as u64) % m as u64;
        let plus = pow_mod(zeta, t, p);
        let minus = pow_mod(zeta, (m as u64 - t) % m as u64, p);
        // the O(2) factor for κ r^a is swap · diag(ζ^{la}, ζ^{-la})
        let o2: [[u64; 2]; 2] = if reflection { [[0, minus], [plus, 0]] } else { [[plus, 0], [0, minus]] };
        let n = base.len();
        let mut out = alloc::vec![alloc::vec![0u64; 2 * n]; 2 * n];
        for (i, row) in base.iter().enumerate() {
            for (jj, &x) in row.iter().enumerate() {
                for a in 0..2 {
                    for b in 0..2 {
                        out[2 * i + a][2 * jj + b] = ((to_fp(x) as u128 * o2[a][b] as u128) % p as u128) as u64;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for IsotypicalRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.l == 0 {
            write!(f, "W^{}_{{{},0}}", self.k, self.j)
        } else {
            write!(f, "W_{{{},{}}}", self.j, self.l)
        }
    }
}

fn mobius(mut n: u32) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// An orbit type of the unit sphere of a representation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OrbitType {
    pub key: ClassKey,
    pub fixed_dim: usize,
    pub maximal: bool,
}

/// The sign of an eigenvalue of a linear isomorphism.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EigenSign {
    Negative,
    Positive,
    Zero,
}

impl EigenSign {
    pub fn of(value: f64) -> Self {
        if value < 0.0 {
            EigenSign::Negative
        } else if value > 0.0 {
            EigenSign::Positive
        } else {
            EigenSign::Zero
        }
    }
}

/// One eigenvalue on one isotypical component, with multiplicity
/// `dim(E(μ) ∩ V_i) / dim V_i`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SpectralEntry {
    pub sign: EigenSign,
    pub rep: IsotypicalRep,
    pub multiplicity: u32,
}

/// Fixed dimensions, orbit types and basic degrees over `A(S4 × O(2))`.
#[derive(Debug)]
pub struct DegreeEngine {
    cube: CubeGroup,
    ring: EquivariantBurnside,
    basic: RefCell<BTreeMap<(IsotypicalRep, u32), BurnsideElement>>,
}

impl Default for DegreeEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl DegreeEngine {
    pub fn new() -> Self {
        let cube = CubeGroup::new();
        let ring = EquivariantBurnside::new(enumerate_phi(Gamma::s4(&cube)));
        DegreeEngine { cube, ring, basic: RefCell::new(BTreeMap::new()) }
    }

    pub fn ring(&self) -> &EquivariantBurnside {
        &self.ring
    }

    pub fn cube(&self) -> &CubeGroup {
        &self.cube
    }

    fn check_order(&self, rep: IsotypicalRep, m: u32) -> Result<()> {
        if rep.valid_order(m) {
            Ok(())
        } else {
            Err(Error::Divisibility { what: "finitization order", index: rep.default_order(), m })
        }
    }

    /// `dim V^S` from the character, exact over `Q`.
    pub fn fixed_dim_character(&self, key: ClassKey, rep: IsotypicalRep, m: u32) -> Result<usize> {
        let s = self.ring.realize(key, m)?;
        let fin_split = |x: Elem| self.ring.with_finitized(m, |fin| fin.group.split(x));
        let mut total = Rational::zero();
        for &x in s.members() {
            let (sigma, d) = fin_split(x);
            total += rep.galois_character(&self.cube, m, sigma, d);
        }
        let avg = total / Rational::from_integer(s.order() as i128);
        if !avg.is_integer() || avg < Rational::zero() {
            return Err(Error::Inconsistent(format!("character average {avg} for id {}", key.id)));
        }
        Ok(avg.to_integer() as usize)
    }

    /// `dim V^S` as the corank of the stacked `ρ(g) − I` over generators of
    /// `S`, over `F_p` with `p ≡ 1 (mod m)` and `p > |S4 × D_m|`.
    pub fn fixed_dim_rank(&self, key: ClassKey, rep: IsotypicalRep, m: u32) -> Result<usize> {
        let s = self.ring.realize(key, m)?;
        let p = primes_one_mod(m as u64, 1 << 20, 1)[0];
        let zeta = primitive_root_of_unity(m as u64, p);
        let dim = rep.real_dim();
        let mut rows = Vec::new();
        for &g in s.generators() {
            let (sigma, d) = self.ring.with_finitized(m, |fin| fin.group.split(g));
            for (i, mut row) in rep.matrix_mod_p(&self.cube, m, p, zeta, sigma, d).into_iter().enumerate() {
                row[i] = (row[i] + p - 1) % p;
                rows.push(row);
            }
        }
        Ok(if rows.is_empty() { dim } else { dim - rank_mod_p(rows, p) })
    }

    /// `dim V^S`, computed both ways; a disagreement is an error.
    pub fn fixed_dim(&self, key: ClassKey, rep: IsotypicalRep) -> Result<usize> {
        self.fixed_dim_at(key, rep, rep.default_order())
    }

    pub fn fixed_dim_at(&self, key: ClassKey, rep: IsotypicalRep, m: u32) -> Result<usize> {
        self.check_order(rep, m)?;
        let by_character = self.fixed_dim_character(key, rep, m)?;
        let by_rank = self.fixed_dim_rank(key, rep, m)?;
        if by_character != by_rank {
            return Err(Error::Inconsistent(format!(
                "fixed dimension of id {} in {rep}: character {by_character}, rank {by_rank}",
                key.id
            )));
        }
        Ok(by_character)
    }

    /// Every class that can be an isotropy group in the representation:
    /// the dimension-zero families at `n = l` for `l > 0`, the
    /// one-dimensional families for `l = 0`; the whole group is always last.
    pub fn isotropy_candidates(&self, rep: IsotypicalRep, finite_weyl_only: bool) -> Vec<ClassKey> {
        let table = self.ring.table();
        let unit = table.whole_group_key();
        let mut out: Vec<ClassKey> = table
            .families
            .iter()
            .filter(|f| !finite_weyl_only || f.weyl != Weyl::Infinite)
            .filter(|f| f.is_parametric() == (rep.l > 0))
            .map(|f| ClassKey::new(f.id, if f.is_parametric() { rep.class_n() } else { 0 }))
            .filter(|&k| k != unit)
            .collect();
        out.sort_by(|a, b| self.ring.size(*b).cmp(&self.ring.size(*a)).then(b.cmp(a)));
        out.insert(0, unit);
        out
    }

    /// Orbit types of the unit sphere, largest first. `S` qualifies when
    /// `V^S ≠ 0` and every strictly larger class fixes strictly less.
    pub fn orbit_types(&self, rep: IsotypicalRep) -> Result<Vec<OrbitType>> {
        let m = rep.default_order();
        let candidates = self.isotropy_candidates(rep, false);
        let dims: Vec<usize> = candidates.iter().map(|&k| self.fixed_dim_at(k, rep, m)).collect::<Result<_>>()?;
        let mut types: Vec<OrbitType> = Vec::new();
        for (i, &key) in candidates.iter().enumerate() {
            if dims[i] == 0 {
                continue;
            }
            let mut is_type = true;
            for (jdx, &other) in candidates.iter().enumerate() {
                if jdx != i && dims[jdx] == dims[i] && self.ring.containment_count(key, other, m)? > 0 {
                    is_type = false;
                    break;
                }
            }
            if is_type {
                types.push(OrbitType { key, fixed_dim: dims[i], maximal: false });
            }
        }
        for i in 0..types.len() {
            let mut maximal = true;
            for jdx in 0..types.len() {
                if jdx != i && self.ring.containment_count(types[i].key, types[jdx].key, m)? > 0 {
                    maximal = false;
                }
            }
            types[i].maximal = maximal;
        }
        Ok(types)
    }

    /// `deg(−Id, B(V))` at the default finitization order.
    pub fn basic_degree(&self, rep: IsotypicalRep) -> Result<BurnsideElement> {
        self.basic_degree_at(rep, rep.default_order())
    }

    /// `n_H |W(H)| = (−1)^{dim V^H} − Σ_{K > H} n_K n(H, K) |W(K)|`, solved
    /// from the top class down.
    pub fn basic_degree_at(&self, rep: IsotypicalRep, m: u32) -> Result<BurnsideElement> {
        self.check_order(rep, m)?;
        if let Some(v) = self.basic.borrow().get(&(rep, m)) {
            return Ok(v.clone());
        }
        let mut solved: Vec<(ClassKey, i64, i64)> = Vec::new();
        let mut out = BurnsideElement::zero();
        for h in self.isotropy_candidates(rep, true) {
            let sign = if self.fixed_dim_at(h, rep, m)? % 2 == 0 { 1 } else { -1 };
            let mut numerator = sign;
            for &(k, coefficient, wk) in &solved {
                numerator -= coefficient * self.ring.n_in(h, k, m)? * wk;
            }
            let wh = self.ring.table().weyl(h).finite().expect("finite Weyl candidates") as i64;
            if numerator % wh != 0 {
                return Err(Error::InexactDivision {
                    context: format!("basic degree of {rep} at id {}", h.id),
                    numerator: numerator as i128,
                    denominator: wh as i128,
                });
            }
            let coefficient = numerator / wh;
            if coefficient != 0 {
                solved.push((h, coefficient, wh));
                out.add_term(h, coefficient);
            }
        }
        self.basic.borrow_mut().insert((rep, m), out.clone());
        Ok(out)
    }

    /// `Π_{μ < 0} deg_V^{ε(μ)}` with `ε` the parity of the multiplicity.
    pub fn linear_degree(&self, spectrum: &[SpectralEntry]) -> Result<BurnsideElement> {
        let mut out = self.ring.unit();
        for entry in spectrum {
            match entry.sign {
                EigenSign::Zero => {
                    return Err(Error::ZeroEigenvalue(format!("on {}", entry.rep)));
                }
                EigenSign::Positive => {}
                EigenSign::Negative if entry.multiplicity % 2 == 1 => {
                    out = self.ring.mul(&out, &self.basic_degree(entry.rep)?)?;
                }
                EigenSign::Negative => {}
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_helpers() {
        assert_eq!([1, 2, 3, 4, 5, 6, 12, 30].map(mobius), [1, -1, -1, 0, -1, 1, 0, -1]);
        assert_eq!([1, 2, 6, 12, 24].map(totient), [1, 1, 2, 4, 8]);
    }

    #[test]
    fn rep_indices() {
        assert!(IsotypicalRep::new(0, 0, 1).is_err());
        assert!(IsotypicalRep::new(5, 1, 0).is_err());
        assert!(IsotypicalRep::new(1, 0, 0).is_err());
        assert_eq!(IsotypicalRep::mode(3, 1).unwrap().real_dim(), 6);
        assert_eq!(IsotypicalRep::component(3, 2).unwrap().real_dim(), 3);
    }

    #[test]
    fn trivial_and_sign_components() {
        let engine = DegreeEngine::new();
        let unit = engine.ring().table().whole_group_key();
        let trivial = IsotypicalRep::component(1, 1).unwrap();
        assert_eq!(engine.basic_degree(trivial).unwrap(), engine.ring().unit().scale(-1));
        let types = engine.orbit_types(trivial).unwrap();
        assert_eq!(types.iter().map(|t| t.key).collect::<Vec<_>>(), alloc::vec![unit]);
        // κ acting by −1: the isotropy of a nonzero point is S4 × SO(2)
        let twisted = IsotypicalRep::component(1, 2).unwrap();
        let types = engine.orbit_types(twisted).unwrap();
        assert_eq!(types.len(), 1);
        assert_eq!(types[0].key, ClassKey::new(78, 0));
    }

    #[test]
    fn fixed_dims_ends() {
        let engine = DegreeEngine::new();
        let unit = engine.ring().table().whole_group_key();
        for j in 1..=4 {
            for l in 1..=2 {
                let rep = IsotypicalRep::mode(j, l).unwrap();
                assert_eq!(engine.fixed_dim(unit, rep).unwrap(), 0);
                let bottom = engine.ring().table().key(46, l).unwrap();
                assert!(engine.fixed_dim(bottom, rep).unwrap() <= rep.real_dim());
            }
        }
    }
}
