//! Burnside rings: `A(G')` for a finite group `G'`, and `A(Γ × O(2))` over
//! the finite-Weyl classes.
//!
//! Products are computed with the recurrence over marks: for `S ≤ S1, S2`,
//!
//! ```text
//! n_S |W(S)| = n(S,S1)|W(S1)| · n(S,S2)|W(S2)| − Σ_{S̃ > S} n(S,S̃) n_S̃ |W(S̃)|
//! ```
//!
//! processed from the largest candidate down.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::ops::{Add, Neg, Sub};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::goursat::{pairing_order, ClassKey, Finitized, PhiTable, Weyl};
use crate::group::{ConjClass, Elem, FiniteGroup, Subgroup};
use crate::o2::O2Subgroup;

/// An integer combination of classes. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BurnsideElement<K: Ord = ClassKey> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord> Default for BurnsideElement<K> {
    fn default() -> Self {
        BurnsideElement { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Copy> BurnsideElement<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(key: K) -> Self {
        Self::from_terms([(key, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, i64)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_term(&mut self, key: K, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        let entry = self.terms.entry(key).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (K, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coefficient(&self, key: K) -> i64 {
        self.terms.get(&key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, factor: i64) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k, c * factor)))
    }
}

impl<K: Ord + Copy> Add for &BurnsideElement<K> {
    type Output = BurnsideElement<K>;
    fn add(self, rhs: Self) -> BurnsideElement<K> {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Copy> Sub for &BurnsideElement<K> {
    type Output = BurnsideElement<K>;
    fn sub(self, rhs: Self) -> BurnsideElement<K> {
        self + &(-rhs)
    }
}

impl<K: Ord + Copy> Neg for &BurnsideElement<K> {
    type Output = BurnsideElement<K>;
    fn neg(self) -> BurnsideElement<K> {
        self.scale(-1)
    }
}

/// The data the recurrence needs about a ring's classes.
pub trait Marks {
    type Key: Ord + Copy;
    fn weyl(&self, key: Self::Key) -> Result<i64>;
    /// Number of conjugates of `t` containing `s`.
    fn n(&self, s: Self::Key, t: Self::Key) -> Result<i64>;
    /// The classes that may occur in `(s1)·(s2)`, largest first: a class
    /// never precedes one that strictly contains it.
    fn candidates(&self, s1: Self::Key, s2: Self::Key) -> Result<Vec<Self::Key>>;
}

/// `(s1)·(s2)` by the recurrence.
pub fn generator_product<R: Marks>(ring: &R, s1: R::Key, s2: R::Key) -> Result<BurnsideElement<R::Key>> {
    let w1 = ring.weyl(s1)?;
    let w2 = ring.weyl(s2)?;
    let mut solved: Vec<(R::Key, i64, i64)> = Vec::new();
    let mut out = BurnsideElement::zero();
    for s in ring.candidates(s1, s2)? {
        let mut numerator = ring.n(s, s1)? * w1 * ring.n(s, s2)? * w2;
        for &(t, coefficient, wt) in &solved {
            numerator -= ring.n(s, t)? * coefficient * wt;
        }
        let ws = ring.weyl(s)?;
        if numerator % ws != 0 {
            return Err(Error::InexactDivision {
                context: "Burnside product".into(),
                numerator: numerator as i128,
                denominator: ws as i128,
            });
        }
        let coefficient = numerator / ws;
        if coefficient != 0 {
            solved.push((s, coefficient, ws));
            out.add_term(s, coefficient);
        }
    }
    Ok(out)
}

/// Bilinear extension of a generator product.
pub fn bilinear<K: Ord + Copy>(
    a: &BurnsideElement<K>,
    b: &BurnsideElement<K>,
    mut product: impl FnMut(K, K) -> Result<BurnsideElement<K>>,
) -> Result<BurnsideElement<K>> {
    let mut out = BurnsideElement::zero();
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            for (z, cz) in product(x, y)?.terms() {
                out.add_term(z, cx * cy * cz);
            }
        }
    }
    Ok(out)
}

/// One stabilizer per orbit of `left` on `G'/right`: the orbit of `g·right`
/// has stabilizer `left ∩ g·right·g⁻¹`.
pub fn orbit_stabilizers(g: &FiniteGroup, left: &Subgroup, right: &Subgroup) -> Vec<Subgroup> {
    let mut coset_of = alloc::vec![usize::MAX; g.order()];
    let mut coset_reps: Vec<Elem> = Vec::new();
    for x in g.elements() {
        if coset_of[x as usize] != usize::MAX {
            continue;
        }
        let id = coset_reps.len();
        coset_reps.push(x);
        for &y in right.members() {
            coset_of[g.mul(x, y) as usize] = id;
        }
    }
    let mut seen = alloc::vec![false; coset_reps.len()];
    let mut out = Vec::new();
    for start in 0..coset_reps.len() {
        if seen[start] {
            continue;
        }
        let mut stack = alloc::vec![start];
        seen[start] = true;
        while let Some(c) = stack.pop() {
            for &s in left.generators() {
                let next = coset_of[g.mul(s, coset_reps[c]) as usize];
                if !seen[next] {
                    seen[next] = true;
                    stack.push(next);
                }
            }
        }
        let conjugated = g.conjugate(right, coset_reps[start]);
        out.push(left.intersection(g, &conjugated));
    }
    out
}

/// `A(G')` for a finite group, keyed by the index into
/// [`FiniteGroup::conjugacy_classes`].
#[derive(Clone, Debug)]
pub struct FiniteBurnside {
    pub group: FiniteGroup,
    pub classes: Vec<ConjClass>,
    lookup: BTreeMap<BitSet, usize>,
    /// `contains[i][j] = n(class i, class j)`.
    contains: Vec<Vec<i64>>,
}

impl FiniteBurnside {
    pub fn new(group: FiniteGroup, lattice_bound: usize) -> Result<Self> {
        let classes = group.conjugacy_classes(lattice_bound)?;
        let mut lookup = BTreeMap::new();
        for (i, c) in classes.iter().enumerate() {
            for s in &c.conjugates {
                lookup.insert(s.bits().clone(), i);
            }
        }
        let mut contains = alloc::vec![alloc::vec![0i64; classes.len()]; classes.len()];
        for (j, cj) in classes.iter().enumerate() {
            for conj in &cj.conjugates {
                for (i, ci) in classes.iter().enumerate() {
                    let rep = &ci.representative;
                    if conj.order() % rep.order() == 0 && rep.is_subgroup_of(conj) {
                        contains[i][j] += 1;
                    }
                }
            }
        }
        Ok(FiniteBurnside { group, classes, lookup, contains })
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Index of the whole group, the unit of the ring.
    pub fn unit(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn class_of(&self, s: &Subgroup) -> Result<usize> {
        self.lookup
            .get(s.bits())
            .copied()
            .ok_or_else(|| Error::UnknownClass(format!("subgroup of order {}", s.order())))
    }

    pub fn mul(&self, a: &BurnsideElement<usize>, b: &BurnsideElement<usize>) -> Result<BurnsideElement<usize>> {
        bilinear(a, b, |x, y| generator_product(self, x, y))
    }

    /// `(S1)·(S2)` read off the orbits of `S1` on `G'/S2`.
    pub fn mul_oracle_generators(&self, s1: usize, s2: usize) -> Result<BurnsideElement<usize>> {
        let mut out = BurnsideElement::zero();
        for stabilizer in orbit_stabilizers(&self.group, &self.classes[s1].representative, &self.classes[s2].representative) {
            out.add_term(self.class_of(&stabilizer)?, 1);
        }
        Ok(out)
    }

    pub fn mul_oracle(
        &self,
        a: &BurnsideElement<usize>,
        b: &BurnsideElement<usize>,
    ) -> Result<BurnsideElement<usize>> {
        bilinear(a, b, |x, y| self.mul_oracle_generators(x, y))
    }
}

impl Marks for FiniteBurnside {
    type Key = usize;

    fn weyl(&self, key: usize) -> Result<i64> {
        Ok(self.classes[key].weyl_order as i64)
    }

    fn n(&self, s: usize, t: usize) -> Result<i64> {
        Ok(self.contains[s][t])
    }

    fn candidates(&self, s1: usize, s2: usize) -> Result<Vec<usize>> {
        // classes are sorted by increasing order
        Ok((0..self.classes.len())
            .rev()
            .filter(|&i| self.contains[i][s1] > 0 && self.contains[i][s2] > 0)
            .collect())
    }
}

#[derive(Clone, Debug)]
struct Realized {
    subgroup: Subgroup,
    conjugates: Vec<BitSet>,
}

/// `A(Γ × O(2))` restricted to `Φ₀`. Pairing numbers are computed in
/// finitized groups `Γ × D_m` and cached; the cache is append-only and not
/// shared between threads.
#[derive(Debug)]
pub struct EquivariantBurnside {
    table: PhiTable,
    finitized: RefCell<BTreeMap<u32, Finitized>>,
    realized: RefCell<BTreeMap<(ClassKey, u32), Realized>>,
    pairing: RefCell<BTreeMap<(ClassKey, ClassKey, u32), i64>>,
    products: RefCell<BTreeMap<(ClassKey, ClassKey), BurnsideElement>>,
}

impl EquivariantBurnside {
    pub fn new(table: PhiTable) -> Self {
        EquivariantBurnside {
            table,
            finitized: RefCell::new(BTreeMap::new()),
            realized: RefCell::new(BTreeMap::new()),
            pairing: RefCell::new(BTreeMap::new()),
            products: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn table(&self) -> &PhiTable {
        &self.table
    }

    pub fn unit(&self) -> BurnsideElement {
        BurnsideElement::generator(self.table.whole_group_key())
    }

    /// Rejects keys outside `Φ₀`.
    pub fn check(&self, key: ClassKey) -> Result<()> {
        let f = self.table.family(key.id as usize)?;
        if f.weyl == Weyl::Infinite {
            return Err(Error::InfiniteWeyl(format!("id {}", key.id)));
        }
        if f.is_parametric() == (key.n == 0) {
            return Err(Error::UnknownClass(format!("id {} with n = {}", key.id, key.n)));
        }
        Ok(())
    }

    /// Runs `body` with `Γ × D_m`, building it on first use.
    pub fn with_finitized<T>(&self, m: u32, body: impl FnOnce(&Finitized) -> T) -> T {
        let mut cache = self.finitized.borrow_mut();
        let fin = cache.entry(m).or_insert_with(|| Finitized::new(&self.table.gamma, m));
        body(fin)
    }

    /// The canonical realization of a class in `Γ × D_m`.
    pub fn realize(&self, key: ClassKey, m: u32) -> Result<Subgroup> {
        self.ensure_realized(key, m)?;
        Ok(self.realized.borrow()[&(key, m)].subgroup.clone())
    }

    fn ensure_realized(&self, key: ClassKey, m: u32) -> Result<()> {
        if self.realized.borrow().contains_key(&(key, m)) {
            return Ok(());
        }
        let entry = self.with_finitized(m, |fin| -> Result<Realized> {
            let subgroup = fin.realize(&self.table, key)?;
            let conjugates = fin.group.conjugates(&subgroup).iter().map(|c| c.bits().clone()).collect();
            Ok(Realized { subgroup, conjugates })
        })?;
        self.realized.borrow_mut().insert((key, m), entry);
        Ok(())
    }

    /// `n(s, t)` computed in `Γ × D_m`; `m` must be a multiple of
    /// [`pairing_order`].
    pub fn n_in(&self, s: ClassKey, t: ClassKey, m: u32) -> Result<i64> {
        self.check(s)?;
        self.check(t)?;
        let needed = pairing_order(&self.table, s, t);
        if !m.is_multiple_of(needed) {
            return Err(Error::Divisibility { what: "pairing order", index: needed, m });
        }
        self.containment_count(s, t, m)
    }

    /// Number of `Γ × D_m`-conjugates of `t` containing `s`, for any classes
    /// realizable in `Γ × D_m` (no finite-Weyl or order check).
    pub fn containment_count(&self, s: ClassKey, t: ClassKey, m: u32) -> Result<i64> {
        if let Some(&v) = self.pairing.borrow().get(&(s, t, m)) {
            return Ok(v);
        }
        let (ds, dt) = (self.table.dimension(s), self.table.dimension(t));
        let value = if ds > dt || (ds == dt && self.size(s) > self.size(t)) {
            0
        } else {
            self.ensure_realized(s, m)?;
            self.ensure_realized(t, m)?;
            let realized = self.realized.borrow();
            let inner = realized[&(s, m)].subgroup.bits();
            realized[&(t, m)].conjugates.iter().filter(|c| inner.is_subset(c)).count() as i64
        };
        self.pairing.borrow_mut().insert((s, t, m), value);
        Ok(value)
    }

    /// `n(s, t)` with the finitization order picked by [`pairing_order`].
    pub fn n_product(&self, s: ClassKey, t: ClassKey) -> Result<i64> {
        self.n_in(s, t, pairing_order(&self.table, s, t))
    }

    pub fn class_leq(&self, s: ClassKey, t: ClassKey) -> Result<bool> {
        Ok(self.n_product(s, t)? > 0)
    }

    /// `|S|` for dimension zero and `|S / S⁰|` for dimension one, so that a
    /// strictly larger class of the same dimension has a strictly larger size.
    pub fn size(&self, key: ClassKey) -> u64 {
        let f = &self.table.families[key.id as usize - 1];
        let h = self.table.gamma.classes[f.h].representative.order() as u64;
        let k = match f.case.k.at(key.n.max(1)) {
            O2Subgroup::Z(q) => q as u64,
            O2Subgroup::D(q) => 2 * q as u64,
            O2Subgroup::SO2 => 1,
            O2Subgroup::O2 => 2,
        };
        h * k / f.case.quotient.order() as u64
    }

    /// The dimension-zero classes of `Φ₀` whose `K` is `D_d` with `d | bound`.
    pub fn dihedral_classes_below(&self, bound: u32) -> Vec<ClassKey> {
        let mut out = Vec::new();
        for f in self.table.families.iter().filter(|f| f.weyl != Weyl::Infinite && f.is_parametric()) {
            for d in (1..=bound).filter(|d| bound.is_multiple_of(*d)) {
                let O2Subgroup::D(unit) = f.case.k.at(1) else { continue };
                if d % unit == 0 {
                    out.push(ClassKey::new(f.id, d / unit));
                }
            }
        }
        out
    }

    pub fn one_dimensional_classes(&self) -> Vec<ClassKey> {
        self.table
            .families
            .iter()
            .filter(|f| f.weyl != Weyl::Infinite && !f.is_parametric())
            .map(|f| ClassKey::new(f.id, 0))
            .collect()
    }

    fn rotation_index(&self, key: ClassKey) -> Option<u32> {
        match self.table.k_subgroup(key) {
            O2Subgroup::D(d) | O2Subgroup::Z(d) => Some(d),
            _ => None,
        }
    }

    /// Keys sorted largest first.
    fn sort_desc(&self, keys: &mut [ClassKey]) {
        keys.sort_by(|a, b| self.size(*b).cmp(&self.size(*a)).then(b.cmp(a)));
    }

    pub fn mul(&self, a: &BurnsideElement, b: &BurnsideElement) -> Result<BurnsideElement> {
        bilinear(a, b, |x, y| self.generator_mul(x, y))
    }

    pub fn generator_mul(&self, s1: ClassKey, s2: ClassKey) -> Result<BurnsideElement> {
        let pair = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
        if let Some(v) = self.products.borrow().get(&pair) {
            return Ok(v.clone());
        }
        let value = generator_product(self, pair.0, pair.1)?;
        self.products.borrow_mut().insert(pair, value.clone());
        Ok(value)
    }

    /// `(s1)·(s2)` by counting orbits of `G/S1 × G/S2` directly.
    ///
    /// Works in `Γ × D_m` with `m` twice the pairing order, so that every
    /// orbit whose stabilizer contains a reflection has a representative in
    /// the finite group. Orbits with an infinite Weyl group are dropped; they
    /// fill the open strata of the orbit space and carry no coefficient.
    pub fn mul_oracle_generators(&self, s1: ClassKey, s2: ClassKey) -> Result<BurnsideElement> {
        self.check(s1)?;
        self.check(s2)?;
        let m = 2 * pairing_order(&self.table, s1, s2);
        let circle = self.table.dimension(s1) == 1 && self.table.dimension(s2) == 1;
        let left = self.realize(s1, m)?;
        let right = self.realize(s2, m)?;
        self.with_finitized(m, |fin| {
            let mut out = BurnsideElement::zero();
            for stabilizer in orbit_stabilizers(&fin.group, &left, &right) {
                let key = fin.identify(&self.table, &stabilizer, circle)?;
                if self.table.weyl(key) != Weyl::Infinite {
                    out.add_term(key, 1);
                }
            }
            Ok(out)
        })
    }

    pub fn mul_oracle(&self, a: &BurnsideElement, b: &BurnsideElement) -> Result<BurnsideElement> {
        bilinear(a, b, |x, y| self.mul_oracle_generators(x, y))
    }

    /// Number of cached generator products.
    pub fn cached_products(&self) -> usize {
        self.products.borrow().len()
    }
}

impl Marks for EquivariantBurnside {
    type Key = ClassKey;

    fn weyl(&self, key: ClassKey) -> Result<i64> {
        self.check(key)?;
        match self.table.weyl(key) {
            Weyl::Finite(w) => Ok(w as i64),
            Weyl::Infinite => Err(Error::InfiniteWeyl(format!("id {}", key.id))),
        }
    }

    fn n(&self, s: ClassKey, t: ClassKey) -> Result<i64> {
        self.n_product(s, t)
    }

    /// `Ψ₀(S1, S2)`: classes below both whose dimension is the smaller of the
    /// two.
    fn candidates(&self, s1: ClassKey, s2: ClassKey) -> Result<Vec<ClassKey>> {
        self.check(s1)?;
        self.check(s2)?;
        let pool = match (self.rotation_index(s1), self.rotation_index(s2)) {
            (Some(a), Some(b)) => self.dihedral_classes_below(num_integer::gcd(a, b)),
            (Some(a), None) | (None, Some(a)) => self.dihedral_classes_below(a),
            (None, None) => self.one_dimensional_classes(),
        };
        let mut out = Vec::new();
        for s in pool {
            if self.n_product(s, s1)? > 0 && self.n_product(s, s2)? > 0 {
                out.push(s);
            }
        }
        self.sort_desc(&mut out);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goursat::{enumerate_phi, Gamma};
    use crate::s4::{CubeGroup, S4Class};

    fn a_s4() -> (CubeGroup, FiniteBurnside) {
        let cube = CubeGroup::new();
        let ring = FiniteBurnside::new(cube.group().clone(), 1000).unwrap();
        (cube, ring)
    }

    #[test]
    fn element_arithmetic() {
        let a = BurnsideElement::from_terms([(1usize, 2), (2, 3)]);
        let b = BurnsideElement::from_terms([(1usize, -2)]);
        assert_eq!((&a + &b).terms().collect::<Vec<_>>(), alloc::vec![(2, 3)]);
        assert!((&a - &a).is_zero());
        assert_eq!(&a + &BurnsideElement::zero(), a);
        assert_eq!(BurnsideElement::from_terms([(7usize, 2), (7, 3)]).coefficient(7), 5);
    }

    #[test]
    fn s4_products_agree_with_orbits() {
        let (cube, ring) = a_s4();
        let idx = |c: S4Class| ring.class_of(cube.representative(c)).unwrap();
        for i in 0..ring.class_count() {
            for j in 0..ring.class_count() {
                let x = BurnsideElement::generator(i);
                let y = BurnsideElement::generator(j);
                assert_eq!(ring.mul(&x, &y).unwrap(), ring.mul_oracle(&x, &y).unwrap());
            }
        }
        let d4 = BurnsideElement::generator(idx(S4Class::D4));
        let d3 = BurnsideElement::generator(idx(S4Class::D3));
        assert_eq!(ring.mul(&d4, &d3).unwrap(), BurnsideElement::generator(idx(S4Class::D1)));
        let z1 = BurnsideElement::generator(0);
        assert_eq!(ring.mul_oracle(&z1, &z1).unwrap(), BurnsideElement::from_terms([(0, 24)]));
    }

    #[test]
    fn equivariant_unit_and_pairings() {
        let ring = EquivariantBurnside::new(enumerate_phi(Gamma::s4(&CubeGroup::new())));
        let unit = ring.table().whole_group_key();
        for id in [26, 35, 45, 46, 54, 61, 68, 90, 100] {
            let key = ring.table().key(id, 1).unwrap();
            assert_eq!(ring.n_product(key, key).unwrap(), 1);
            assert_eq!(ring.n_product(key, unit).unwrap(), 1);
            let g = BurnsideElement::generator(key);
            assert_eq!(ring.mul(&ring.unit(), &g).unwrap(), g);
        }
        let infinite = ring.table().key(1, 1).unwrap();
        assert!(ring.n_product(infinite, unit).is_err());
    }
}
