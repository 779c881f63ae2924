//! Conjugacy classes of subgroups of `Γ × O(2)` as amalgamated products.
//!
//! A subgroup `S ≤ Γ × O(2)` is determined by `H = π_Γ(S)`, `K = π_O(2)(S)`,
//! a common quotient `L` and epimorphisms `φ: H ↠ L`, `ψ: K ↠ L` with
//! `S = {(h, k) : φ(h) = ψ(k)}`. Up to conjugacy, `(K, Z_K = ker ψ, L)` runs
//! over the rows of [`quotient_cases`] and `φ` over orbits of epimorphisms
//! under `N_Γ(H)` acting on the source and `N(K) ∩ N(Z_K)` acting on `L`.
//!
//! Families whose `K` is `Z_{kn}` or `D_{kn}` stay symbolic in `n`; a
//! concrete class is a [`ClassKey`] `(family id, n)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::group::{Elem, EpiClass, FiniteGroup, Hom, Subgroup, DEFAULT_LATTICE_BOUND};
use crate::o2::{finitize, quotient_cases, NormalizerOrder, O2Family, O2Subgroup, Quotient, QuotientCase};
use crate::s4::CubeGroup;

/// A Weyl group order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Weyl {
    Finite(u64),
    Infinite,
}

impl Weyl {
    pub fn finite(self) -> Option<u64> {
        match self {
            Weyl::Finite(w) => Some(w),
            Weyl::Infinite => None,
        }
    }
}

impl fmt::Display for Weyl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weyl::Finite(w) => write!(f, "{w}"),
            Weyl::Infinite => write!(f, "inf"),
        }
    }
}

/// One conjugacy class of subgroups of `Γ`.
#[derive(Clone, Debug)]
pub struct GammaClass {
    pub name: String,
    pub representative: Subgroup,
    pub normalizer: Subgroup,
    pub weyl_order: usize,
    conjugates: BTreeSet<Vec<Elem>>,
}

/// A finite group `Γ` with named subgroup classes.
#[derive(Clone, Debug)]
pub struct Gamma {
    pub group: FiniteGroup,
    pub classes: Vec<GammaClass>,
}

impl Gamma {
    /// Classes in the order of [`FiniteGroup::conjugacy_classes`], named by
    /// `name`.
    pub fn new(group: FiniteGroup, name: impl Fn(&Subgroup) -> String) -> Result<Self> {
        let classes = group
            .conjugacy_classes(DEFAULT_LATTICE_BOUND)?
            .into_iter()
            .map(|c| GammaClass {
                name: name(&c.representative),
                normalizer: group.normalizer(&c.representative),
                weyl_order: c.weyl_order,
                conjugates: c.conjugates.iter().map(|s| s.members().to_vec()).collect(),
                representative: c.representative,
            })
            .collect();
        Ok(Gamma { group, classes })
    }

    /// `S4` as cube rotations with the usual class names and ordering.
    pub fn s4(cube: &CubeGroup) -> Self {
        let mut gamma = Gamma::new(cube.group().clone(), |s| cube.classify(s).name().into())
            .expect("S4 lattice");
        gamma.classes.sort_by_key(|c| crate::s4::S4Class::from_name(&c.name));
        for (c, (_, rep)) in gamma.classes.iter_mut().zip(cube.classes()) {
            // use the cube's canonical representatives
            c.representative = rep.clone();
            c.normalizer = cube.group().normalizer(rep);
        }
        gamma
    }

    pub fn trivial() -> Self {
        Gamma::new(FiniteGroup::cyclic(1), |_| "Z1".into()).expect("trivial group")
    }

    pub fn class_of(&self, s: &Subgroup) -> usize {
        self.classes
            .iter()
            .position(|c| c.conjugates.contains(s.members()))
            .expect("every subgroup lies in some class")
    }

    pub fn class_by_name(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// A family of classes `H ×_L K` with `K` symbolic in `n`.
#[derive(Clone, Debug)]
pub struct GoursatFamily {
    /// 1-based position in the table.
    pub id: usize,
    /// Index of `(H)` in [`Gamma::classes`].
    pub h: usize,
    pub case: QuotientCase,
    /// `φ: H ↠ L` on the representative of `(H)`, in member order.
    pub phi: Hom,
    /// Every epimorphism in the orbit of `φ`.
    orbit: BTreeSet<Vec<Elem>>,
    pub z_h: usize,
    /// `φ⁻¹(<r>)`, shown only when `(H, Z_H, K, L)` leaves ambiguity.
    pub r: usize,
    pub show_r: bool,
    pub weyl: Weyl,
}

impl GoursatFamily {
    pub fn dimension(&self) -> u32 {
        self.case.dimension()
    }

    pub fn is_parametric(&self) -> bool {
        self.case.k.is_parametric()
    }

    pub fn contains_epimorphism(&self, images: &[Elem]) -> bool {
        self.orbit.contains(images)
    }
}

/// A concrete class: a family and, for parametric families, `n ≥ 1`
/// (`n = 0` otherwise).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClassKey {
    pub id: u16,
    pub n: u32,
}

impl ClassKey {
    pub fn new(id: usize, n: u32) -> Self {
        ClassKey { id: id as u16, n }
    }
}

/// `Φ(Γ × O(2))` as a list of families.
#[derive(Clone, Debug)]
pub struct PhiTable {
    pub gamma: Gamma,
    pub families: Vec<GoursatFamily>,
}

/// Enumerates `Φ(Γ × O(2))`. Within one quotient row families are ordered by
/// the class indices of `(H, Z_H, R)`.
pub fn enumerate_phi(gamma: Gamma) -> PhiTable {
    let g = &gamma.group;
    let max_index = gamma.order() as u32;
    let mut families = Vec::new();
    for case in quotient_cases(max_index) {
        let lg = case.quotient.group();
        let autos = case.induced_automorphisms();
        let mut rows = Vec::new();
        for (hi, hc) in gamma.classes.iter().enumerate() {
            let h = &hc.representative;
            if h.order() % lg.order() != 0 {
                continue;
            }
            let actors: Vec<Elem> = hc.normalizer.generators().to_vec();
            let classes: EpiClass = g.epimorphism_classes(h, &lg, &actors, &autos);
            for orbit in classes.orbits {
                let phi = orbit.representative;
                let orbit_set = orbit_of(g, h, &lg, &phi, &actors, &autos);
                debug_assert_eq!(orbit_set.len(), orbit.orbit_size);
                let rotation_preimage: Vec<Elem> = h
                    .members()
                    .iter()
                    .zip(&phi.images)
                    .filter(|(_, &y)| case.quotient.is_rotation(y))
                    .map(|(&x, _)| x)
                    .collect();
                let r = gamma.class_of(&g.subgroup_from_members(&rotation_preimage).expect("preimage"));
                let z_h = gamma.class_of(&orbit.kernel);
                let weyl = match case.normalizer_quotient_order() {
                    NormalizerOrder::Infinite => Weyl::Infinite,
                    NormalizerOrder::Finite(q) => {
                        let w = hc.weyl_order as u64 * q as u64 * lg.order() as u64;
                        debug_assert_eq!(w % orbit.orbit_size as u64, 0);
                        Weyl::Finite(w / orbit.orbit_size as u64)
                    }
                };
                rows.push(GoursatFamily {
                    id: 0,
                    h: hi,
                    case,
                    phi,
                    orbit: orbit_set,
                    z_h,
                    r,
                    show_r: false,
                    weyl,
                });
            }
        }
        rows.sort_by_key(|f| (f.h, f.z_h, f.r));
        for i in 0..rows.len() {
            let same = |j: usize| rows[j].h == rows[i].h && rows[j].z_h == rows[i].z_h;
            rows[i].show_r = (0..rows.len()).any(|j| j != i && same(j));
        }
        families.extend(rows);
    }
    for (i, f) in families.iter_mut().enumerate() {
        f.id = i + 1;
    }
    PhiTable { gamma, families }
}

fn orbit_of(
    g: &FiniteGroup,
    h: &Subgroup,
    lg: &FiniteGroup,
    phi: &Hom,
    actors: &[Elem],
    autos: &[Vec<Elem>],
) -> BTreeSet<Vec<Elem>> {
    let position: BTreeMap<Elem, usize> = h.members().iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut seen = BTreeSet::new();
    seen.insert(phi.images.clone());
    let mut stack = alloc::vec![phi.images.clone()];
    while let Some(cur) = stack.pop() {
        let mut next: Vec<Vec<Elem>> = actors
            .iter()
            .map(|&a| {
                let ainv = g.inv(a);
                h.members().iter().map(|&x| cur[position[&g.conj(ainv, x)]]).collect()
            })
            .collect();
        next.extend(autos.iter().map(|b| cur.iter().map(|&y| b[y as usize]).collect()));
        for v in next {
            if seen.insert(v.clone()) {
                stack.push(v);
            }
        }
    }
    debug_assert!(seen.iter().all(|v| v.iter().all(|&y| (y as usize) < lg.order())));
    seen
}

impl PhiTable {
    pub fn family(&self, id: usize) -> Result<&GoursatFamily> {
        id.checked_sub(1)
            .and_then(|i| self.families.get(i))
            .ok_or_else(|| Error::UnknownClass(format!("id {id}")))
    }

    /// Validates a key: `n ≥ 1` exactly for parametric families.
    pub fn key(&self, id: usize, n: u32) -> Result<ClassKey> {
        let f = self.family(id)?;
        match (f.is_parametric(), n) {
            (true, 0) => Err(Error::UnknownClass(format!("id {id} needs n >= 1"))),
            (false, _) => Ok(ClassKey::new(id, 0)),
            (true, n) => Ok(ClassKey::new(id, n)),
        }
    }

    pub fn weyl(&self, key: ClassKey) -> Weyl {
        self.families[key.id as usize - 1].weyl
    }

    pub fn dimension(&self, key: ClassKey) -> u32 {
        self.families[key.id as usize - 1].dimension()
    }

    /// `K` of a concrete class.
    pub fn k_subgroup(&self, key: ClassKey) -> O2Subgroup {
        self.families[key.id as usize - 1].case.k.at(key.n.max(1))
    }

    /// `(S4 × O(2))` itself, i.e. `Γ ×_{Z1} O(2)`.
    pub fn whole_group_key(&self) -> ClassKey {
        let top = self.gamma.classes.len() - 1;
        let f = self
            .families
            .iter()
            .find(|f| f.h == top && f.case.k == O2Family::O2 && f.case.z == O2Family::O2)
            .expect("the whole group is listed");
        ClassKey::new(f.id, 0)
    }

    /// Looks a family up by its quintuple fields (class names of `Γ`).
    pub fn find(
        &self,
        h: &str,
        case: QuotientCase,
        z_h: &str,
        r: Option<&str>,
    ) -> Option<&GoursatFamily> {
        let name = |i: usize| self.gamma.classes[i].name.as_str();
        let mut hits = self
            .families
            .iter()
            .filter(|f| f.case == case && name(f.h) == h && name(f.z_h) == z_h)
            .filter(|f| r.is_none_or(|r| name(f.r) == r));
        let first = hits.next()?;
        if hits.next().is_some() {
            return None;
        }
        Some(first)
    }

    /// The concrete class whose `K` is the given finite dihedral group, with
    /// quotient `L`: the form used when a class is written with a concrete
    /// `K`, e.g. `D4 ×_{Z2} D2`.
    pub fn key_for_concrete(
        &self,
        h: &str,
        k: O2Subgroup,
        l: Quotient,
        z_h: &str,
        r: Option<&str>,
    ) -> Option<ClassKey> {
        let (case, n) = case_for(k, l)?;
        let f = self.find(h, case, z_h, r)?;
        Some(ClassKey::new(f.id, if f.is_parametric() { n } else { 0 }))
    }
}

/// The quotient row and `n` for a concrete `K` and quotient `L`.
pub fn case_for(k: O2Subgroup, l: Quotient) -> Option<(QuotientCase, u32)> {
    let case = |k, z, quotient| QuotientCase { k, z, quotient };
    match (k, l) {
        (O2Subgroup::SO2, Quotient::Cyclic(1)) => Some((case(O2Family::SO2, O2Family::SO2, l), 0)),
        (O2Subgroup::O2, Quotient::Cyclic(1)) => Some((case(O2Family::O2, O2Family::O2, l), 0)),
        (O2Subgroup::O2, Quotient::Dihedral(1)) => Some((case(O2Family::O2, O2Family::SO2, l), 0)),
        (O2Subgroup::Z(q), Quotient::Cyclic(m)) if q % m == 0 => {
            Some((case(O2Family::Z(m), O2Family::Z(1), l), q / m))
        }
        (O2Subgroup::D(q), Quotient::Dihedral(m)) if q % m == 0 => {
            Some((case(O2Family::D(m), O2Family::Z(1), l), q / m))
        }
        (O2Subgroup::D(q), Quotient::Cyclic(1)) => Some((case(O2Family::D(1), O2Family::D(1), l), q)),
        (O2Subgroup::D(q), Quotient::Cyclic(2)) if q % 2 == 0 => {
            Some((case(O2Family::D(2), O2Family::D(1), l), q / 2))
        }
        _ => None,
    }
}

/// `Γ × D_m` with the canonical realization of classes.
#[derive(Clone, Debug)]
pub struct Finitized {
    pub m: u32,
    pub group: FiniteGroup,
    dm: FiniteGroup,
}

impl Finitized {
    pub fn new(gamma: &Gamma, m: u32) -> Self {
        let dm = FiniteGroup::dihedral(m);
        Finitized {
            m,
            group: FiniteGroup::product(gamma.group.clone(), dm.clone()),
            dm,
        }
    }

    pub fn dihedral(&self) -> &FiniteGroup {
        &self.dm
    }

    /// `{(h, k) : φ(h) = ψ(k)}` for the canonical representatives, with
    /// `SO(2) ↦ Z_m` and `O(2) ↦ D_m`.
    pub fn realize(&self, table: &PhiTable, key: ClassKey) -> Result<Subgroup> {
        let f = table.family(key.id as usize)?;
        let n = key.n.max(1);
        let h = &table.gamma.classes[f.h].representative;
        let k = finitize(&self.dm, f.case.k.at(n), self.m)?;
        let z = finitize(&self.dm, f.case.z.at(n), self.m)?;
        let position: BTreeMap<Elem, usize> =
            h.members().iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut gens = Vec::new();
        for &hg in h.generators() {
            let target = f.phi.images[position[&hg]];
            let kk = k
                .members()
                .iter()
                .copied()
                .find(|&x| f.case.psi(n, self.m, x) == target)
                .expect("ψ is onto");
            gens.push(self.group.pair(hg, kk));
        }
        gens.extend(z.generators().iter().map(|&zg| self.group.pair(0, zg)));
        Ok(self.group.closure(&gens))
    }

    /// Names an explicit subgroup of `Γ × D_m`. With `circle` set, a subgroup
    /// containing all of `Z_m` in its kernel is read as a one-dimensional class
    /// (`Z_m ↦ SO(2)`, `D_m ↦ O(2)`).
    pub fn identify(&self, table: &PhiTable, s: &Subgroup, circle: bool) -> Result<ClassKey> {
        let g = &self.group;
        let gamma = &table.gamma;
        let m = self.m;
        // move H onto its class representative
        let h_members: BTreeSet<Elem> = s.members().iter().map(|&x| g.split(x).0).collect();
        let h_sub = gamma
            .group
            .subgroup_from_members(&h_members.iter().copied().collect::<Vec<_>>())?;
        let hi = gamma.class_of(&h_sub);
        let rep = &gamma.classes[hi].representative;
        let gamma_conj = gamma
            .group
            .elements()
            .find(|&c| gamma.group.conjugate(&h_sub, c).members() == rep.members())
            .expect("class member");
        // normalize K by a shift automorphism κ r^a ↦ κ r^{a-c} of D_m
        let pairs: Vec<(Elem, Elem)> = s
            .members()
            .iter()
            .map(|&x| {
                let (a, b) = g.split(x);
                (gamma.group.conj(gamma_conj, a), b)
            })
            .collect();
        let reflections: Vec<Elem> = pairs.iter().map(|p| p.1).filter(|&b| b >= m).collect();
        let rot_order = pairs.iter().filter(|p| p.1 < m).map(|p| p.1).collect::<BTreeSet<_>>().len() as u32;
        let z_rot =
            pairs.iter().filter(|p| p.0 == 0 && p.1 < m).count() as u32;
        let z_refl: Vec<Elem> = pairs.iter().filter(|p| p.0 == 0 && p.1 >= m).map(|p| p.1).collect();
        let shift = match (z_refl.first(), reflections.first()) {
            (Some(&r), _) => Some(r - m),
            (None, Some(_)) => Some(reflections.iter().map(|&r| r - m).min().unwrap_or(0)),
            _ => None,
        };
        let apply_shift = |b: Elem| -> Elem {
            match shift {
                Some(c) if b >= m => m + (b - m + m - c % m) % m,
                _ => b,
            }
        };
        let pairs: Vec<(Elem, Elem)> = pairs.into_iter().map(|(a, b)| (a, apply_shift(b))).collect();
        let has_refl = !reflections.is_empty();
        let k = match (circle && rot_order == m, has_refl) {
            (true, true) => O2Subgroup::O2,
            (true, false) => O2Subgroup::SO2,
            (false, true) => O2Subgroup::D(rot_order),
            (false, false) => O2Subgroup::Z(rot_order),
        };
        let z = match (circle && z_rot == m, !z_refl.is_empty()) {
            (true, true) => O2Subgroup::O2,
            (true, false) => O2Subgroup::SO2,
            (false, true) => O2Subgroup::D(z_rot),
            (false, false) => O2Subgroup::Z(z_rot),
        };
        let l = crate::o2::quotient_of(k, z)?;
        let (case, n) = case_for(k, l)
            .ok_or_else(|| Error::UnknownClass(format!("no quotient row for {k}/{z}")))?;
        let mut image_of: BTreeMap<Elem, Elem> = BTreeMap::new();
        for &(a, b) in &pairs {
            let y = case.psi(n.max(1), m, b);
            if let Some(&prev) = image_of.get(&a) {
                if prev != y {
                    return Err(Error::Inconsistent("φ is not well defined".into()));
                }
            }
            image_of.insert(a, y);
        }
        let images: Vec<Elem> = rep.members().iter().map(|x| image_of[x]).collect();
        let f = table
            .families
            .iter()
            .find(|f| f.h == hi && f.case == case && f.contains_epimorphism(&images))
            .ok_or_else(|| Error::UnknownClass(format!("no family for H={} {k}/{z}", gamma.classes[hi].name)))?;
        Ok(ClassKey::new(f.id, if f.is_parametric() { n } else { 0 }))
    }

    /// `|N(S)| / |S|` computed directly in `Γ × D_m`.
    pub fn brute_weyl(&self, s: &Subgroup) -> u64 {
        (self.group.order() / (self.group.conjugates(s).len() * s.order())) as u64
    }
}

/// The finitization order used for `n(P, Q)`: the least `m` for which every
/// `O(2)`-conjugate of `Q` containing `P` is reached inside `D_m`.
///
/// For `K_P = D_a`, `K_Q = D_b` this is `2·lcm(a, b)` (the normalizer
/// `D_{2b}` of `D_b` must embed); against a one-dimensional `Q` it is `2a`;
/// between one-dimensional classes `m = 1` suffices.
pub fn pairing_order(table: &PhiTable, p: ClassKey, q: ClassKey) -> u32 {
    let size = |key: ClassKey| match table.k_subgroup(key) {
        O2Subgroup::Z(d) | O2Subgroup::D(d) => Some(d),
        _ => None,
    };
    match (size(p), size(q)) {
        (Some(a), Some(b)) => 2 * num_integer::lcm(a, b),
        (Some(a), None) | (None, Some(a)) => 2 * a,
        (None, None) => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PhiTable {
        enumerate_phi(Gamma::s4(&CubeGroup::new()))
    }

    #[test]
    fn s4_table_shape() {
        let t = table();
        assert_eq!(t.families.len(), 100);
        let finite = t.families.iter().filter(|f| f.weyl != Weyl::Infinite).count();
        assert_eq!(finite, 75);
        let w = |id: usize| t.family(id).unwrap().weyl;
        assert_eq!(w(1), Weyl::Infinite);
        assert_eq!(w(35), Weyl::Finite(4));
        assert_eq!(w(46), Weyl::Finite(48));
        assert_eq!(w(68), Weyl::Finite(48));
        assert_eq!(w(100), Weyl::Finite(1));
        // R is needed exactly in the D2-quotient rows with H = D2, D4
        let shown: Vec<usize> = t.families.iter().filter(|f| f.show_r).map(|f| f.id).collect();
        assert_eq!(shown, alloc::vec![38, 39, 40, 41, 42]);
    }

    #[test]
    fn trivial_gamma_gives_the_o2_classes() {
        let t = enumerate_phi(Gamma::trivial());
        let ks: Vec<(O2Family, O2Family)> = t.families.iter().map(|f| (f.case.k, f.case.z)).collect();
        assert_eq!(
            ks,
            alloc::vec![
                (O2Family::Z(1), O2Family::Z(1)),
                (O2Family::D(1), O2Family::D(1)),
                (O2Family::SO2, O2Family::SO2),
                (O2Family::O2, O2Family::O2),
            ]
        );
    }

    #[test]
    fn realize_identify_round_trip() {
        let t = table();
        for m in [12, 24] {
            let fin = Finitized::new(&t.gamma, m);
            for f in &t.families {
                let n = if f.is_parametric() { 1 } else { 0 };
                let key = ClassKey::new(f.id, n);
                let s = fin.realize(&t, key).unwrap();
                let circle = !f.is_parametric();
                assert_eq!(fin.identify(&t, &s, circle).unwrap(), key, "family {}", f.id);
                if let Some(w) = f.weyl.finite() {
                    assert_eq!(fin.brute_weyl(&s), w, "family {} at m={m}", f.id);
                }
            }
        }
    }
}
