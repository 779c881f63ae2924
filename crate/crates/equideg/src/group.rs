//! Finite groups on indexed elements.
//!
//! Elements are `u32` indices with the identity at `0`. A group is either a
//! dense multiplication table or a direct product of two groups, whose
//! element `(a, b)` has index `a * |right| + b`. Subgroups are stored as
//! sorted member lists together with a bit set and a generating set.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::perm::Perm;

pub type Elem = u32;

/// Default bound on the order of groups whose full subgroup lattice is built.
pub const DEFAULT_LATTICE_BOUND: usize = 1000;

#[derive(Clone, Debug)]
enum Law {
    Table(Vec<Elem>),
    Product(Box<FiniteGroup>, Box<FiniteGroup>),
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    law: Law,
    inverses: Vec<Elem>,
    generators: Vec<Elem>,
    perms: Option<Vec<Perm>>,
}

impl FiniteGroup {
    /// Closes a set of permutations of equal degree; the element order is
    /// breadth-first from the identity. The product is composition of maps,
    /// `(a·b)(x) = a(b(x))`.
    pub fn from_permutations(gens: &[Perm], bound: usize) -> Result<Self> {
        let degree = gens.first().map_or(1, Perm::degree);
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::InvalidGenerators(degree));
        }
        let mut perms = vec![Perm::identity(degree)];
        let mut index: BTreeMap<Perm, Elem> = BTreeMap::new();
        index.insert(perms[0].clone(), 0);
        let mut cursor = 0;
        while cursor < perms.len() {
            for g in gens {
                let next = perms[cursor].then(g);
                if !index.contains_key(&next) {
                    if perms.len() >= bound {
                        return Err(Error::GroupTooLarge {
                            order: perms.len() + 1,
                            bound,
                        });
                    }
                    index.insert(next.clone(), perms.len() as Elem);
                    perms.push(next);
                }
            }
            cursor += 1;
        }
        let order = perms.len();
        let mut table = vec![0; order * order];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                table[a * order + b] = index[&pb.then(pa)];
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Self::from_parts(order, table, generators, Some(perms))
    }

    /// Builds a group from a Cayley table, checking the group axioms.
    pub fn from_table(table: Vec<Elem>, generators: Vec<Elem>) -> Result<Self> {
        let order = num_integer::Roots::sqrt(&table.len());
        if order * order != table.len() || order == 0 || table.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidGenerators(order));
        }
        let g = Self::from_parts(order, table, generators, None)?;
        let ok_identity = (0..order as Elem).all(|a| g.mul(0, a) == a && g.mul(a, 0) == a);
        let ok_assoc = (0..order as Elem).all(|a| {
            (0..order as Elem).all(|b| {
                (0..order as Elem).all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))
            })
        });
        if !ok_identity || !ok_assoc {
            return Err(Error::InvalidGenerators(order));
        }
        Ok(g)
    }

    fn from_parts(
        order: usize,
        table: Vec<Elem>,
        generators: Vec<Elem>,
        perms: Option<Vec<Perm>>,
    ) -> Result<Self> {
        let mut inverses = vec![Elem::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverses[a] = b as Elem;
                }
            }
        }
        if inverses.contains(&Elem::MAX) {
            return Err(Error::InvalidGenerators(order));
        }
        Ok(FiniteGroup {
            order,
            law: Law::Table(table),
            inverses,
            generators,
            perms,
        })
    }

    /// The cyclic group `Z_m` with element `a` standing for `a mod m`.
    pub fn cyclic(m: u32) -> Self {
        let m = m.max(1) as usize;
        let table = (0..m * m).map(|i| ((i / m + i % m) % m) as Elem).collect();
        Self::from_parts(m, table, vec![(1 % m) as Elem], None).expect("cyclic table")
    }

    /// The dihedral group `D_m` of order `2m`: index `e < m` is the rotation
    /// `r^e`, index `m + e` is `κ r^e`, with `r κ = κ r^{-1}`.
    pub fn dihedral(m: u32) -> Self {
        let m = m.max(1) as usize;
        let n = 2 * m;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xr, xa) = (x >= m, x % m);
                let (yr, yb) = (y >= m, y % m);
                // r^a r^b = r^{a+b}; κ r^a κ r^b = r^{b-a}; r^a κ r^b = κ r^{b-a}
                let exp = if yr { (yb + m - xa) % m } else { (xa + yb) % m };
                table[x * n + y] = (if xr != yr { m + exp } else { exp }) as Elem;
            }
        }
        let gens = if m == 1 { vec![1] } else { vec![1, m as Elem] };
        Self::from_parts(n, table, gens, None).expect("dihedral table")
    }

    pub fn product(left: FiniteGroup, right: FiniteGroup) -> Self {
        let rn = right.order as Elem;
        let order = left.order * right.order;
        let mut inverses = Vec::with_capacity(order);
        for a in 0..left.order {
            for b in 0..right.order {
                inverses.push(left.inverses[a] * rn + right.inverses[b]);
            }
        }
        let mut generators: Vec<Elem> = left.generators.iter().map(|&a| a * rn).collect();
        generators.extend(right.generators.iter().copied());
        FiniteGroup {
            order,
            law: Law::Product(Box::new(left), Box::new(right)),
            inverses,
            generators,
            perms: None,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn factors(&self) -> Option<(&FiniteGroup, &FiniteGroup)> {
        match &self.law {
            Law::Product(l, r) => Some((l, r)),
            Law::Table(_) => None,
        }
    }

    /// Splits a product element into its two coordinates.
    pub fn split(&self, x: Elem) -> (Elem, Elem) {
        match &self.law {
            Law::Product(_, r) => (x / r.order as Elem, x % r.order as Elem),
            Law::Table(_) => (x, 0),
        }
    }

    pub fn pair(&self, a: Elem, b: Elem) -> Elem {
        match &self.law {
            Law::Product(_, r) => a * r.order as Elem + b,
            Law::Table(_) => a,
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.law {
            Law::Table(t) => t[a as usize * self.order + b as usize],
            Law::Product(l, r) => {
                let rn = r.order as Elem;
                l.mul(a / rn, b / rn) * rn + r.mul(a % rn, b % rn)
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a as usize]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The permutation realizing `a`: stored images for permutation groups,
    /// the left-regular action for tables, and the action on the disjoint
    /// union of both factors' points for products.
    pub fn perm(&self, a: Elem) -> Perm {
        match (&self.law, &self.perms) {
            (_, Some(p)) => p[a as usize].clone(),
            (Law::Table(_), None) => {
                Perm::from_images((0..self.order as Elem).map(|x| self.mul(a, x)).collect())
                    .expect("regular action")
            }
            (Law::Product(l, r), None) => {
                let (x, y) = self.split(a);
                let (px, py) = (l.perm(x), r.perm(y));
                let shift = px.degree() as u32;
                let mut images = px.images().to_vec();
                images.extend(py.images().iter().map(|&i| i + shift));
                Perm::from_images(images).expect("disjoint union")
            }
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, vec![0], Vec::new())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, self.elements().collect(), self.generators.clone())
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Subgroup {
        let mut set = BitSet::new(self.order);
        set.insert(0);
        let mut members = vec![0];
        let mut cursor = 0;
        while cursor < members.len() {
            let x = members[cursor];
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    members.push(y);
                }
            }
            cursor += 1;
        }
        members.sort_unstable();
        let mut kept = Vec::new();
        for &g in gens {
            if g != 0 && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Subgroup {
            members,
            set,
            gens: kept,
        }
    }

    /// The subgroup with the given members, if they form one.
    pub fn subgroup_from_members(&self, items: &[Elem]) -> Result<Subgroup> {
        let set = BitSet::from_indices(self.order, items.iter().copied());
        let closed = set.contains(0)
            && items
                .iter()
                .all(|&a| items.iter().all(|&b| set.contains(self.mul(a, b))));
        if !closed {
            return Err(Error::Inconsistent(format!(
                "{} elements do not form a subgroup",
                items.len()
            )));
        }
        Ok(self.closure(&small_generating_set(self, items)))
    }

    pub fn conjugate(&self, s: &Subgroup, g: Elem) -> Subgroup {
        let mut members: Vec<Elem> = s.members.iter().map(|&x| self.conj(g, x)).collect();
        members.sort_unstable();
        let gens = s.gens.iter().map(|&x| self.conj(g, x)).collect();
        Subgroup::from_sorted(self.order, members, gens)
    }

    /// All distinct conjugates of `s`, starting with `s` itself.
    pub fn conjugates(&self, s: &Subgroup) -> Vec<Subgroup> {
        let mut seen: BTreeSet<BitSet> = BTreeSet::new();
        seen.insert(s.set.clone());
        let mut out = vec![s.clone()];
        let mut cursor = 0;
        while cursor < out.len() {
            for &g in &self.generators {
                let t = self.conjugate(&out[cursor], g);
                if seen.insert(t.set.clone()) {
                    out.push(t);
                }
            }
            cursor += 1;
        }
        out
    }

    pub fn normalizes(&self, g: Elem, s: &Subgroup) -> bool {
        s.gens.iter().all(|&x| s.contains(self.conj(g, x)))
    }

    pub fn normalizer(&self, s: &Subgroup) -> Subgroup {
        let members: Vec<Elem> = self.elements().filter(|&g| self.normalizes(g, s)).collect();
        self.subgroup_from_members(&members).expect("normalizer is a subgroup")
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        self.generators.iter().all(|&g| self.normalizes(g, s))
    }

    /// `|N(s)| / |s|`.
    pub fn weyl_order(&self, s: &Subgroup) -> usize {
        self.order / (self.conjugates(s).len() * s.order())
    }

    /// Number of conjugates of `k` containing `h`.
    pub fn n_count(&self, h: &Subgroup, k: &Subgroup) -> usize {
        if !k.order().is_multiple_of(h.order()) {
            return 0;
        }
        self.conjugates(k)
            .iter()
            .filter(|c| h.set.is_subset(&c.set))
            .count()
    }

    /// Every subgroup, each exactly once, sorted by (order, members).
    pub fn subgroup_lattice(&self, bound: usize) -> Result<Vec<Subgroup>> {
        let mut all: Vec<Subgroup> = self
            .conjugacy_classes(bound)?
            .into_iter()
            .flat_map(|c| c.conjugates)
            .collect();
        all.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        Ok(all)
    }

    /// Conjugacy classes of subgroups, sorted by (order, canonical members),
    /// where the canonical member list is the least one among conjugates.
    ///
    /// Classes are found by joining class representatives with cyclic
    /// subgroups until no new class appears. Every subgroup `T = <S', g>`
    /// with `S'` conjugate to a representative `S` is conjugate to a join of
    /// `S` with a cyclic subgroup, so the search is exhaustive.
    pub fn conjugacy_classes(&self, bound: usize) -> Result<Vec<ConjClass>> {
        if self.order > bound {
            return Err(Error::GroupTooLarge {
                order: self.order,
                bound,
            });
        }
        let mut cyclic_seen = BTreeSet::new();
        let mut cyclics = Vec::new();
        for g in self.elements().skip(1) {
            let c = self.closure(&[g]);
            if cyclic_seen.insert(c.set.clone()) {
                cyclics.push((g, c));
            }
        }
        let mut known: BTreeSet<BitSet> = BTreeSet::new();
        let mut classes: Vec<Vec<Subgroup>> = Vec::new();
        let trivial = self.trivial_subgroup();
        known.insert(trivial.set.clone());
        classes.push(vec![trivial]);
        let mut cursor = 0;
        while cursor < classes.len() {
            let rep = classes[cursor][0].clone();
            for (g, c) in &cyclics {
                if c.set.is_subset(&rep.set) {
                    continue;
                }
                let mut gens = rep.gens.clone();
                gens.push(*g);
                let joined = self.closure(&gens);
                if known.contains(&joined.set) {
                    continue;
                }
                let conjugates = self.conjugates(&joined);
                for t in &conjugates {
                    known.insert(t.set.clone());
                }
                classes.push(conjugates);
            }
            cursor += 1;
        }
        let group_order = self.order;
        let mut out: Vec<ConjClass> = classes
            .into_iter()
            .map(|mut conjugates| {
                conjugates.sort_by(|a, b| a.members.cmp(&b.members));
                let rep = conjugates[0].clone();
                let class_size = conjugates.len();
                ConjClass {
                    weyl_order: group_order / (class_size * rep.order()),
                    class_size,
                    representative: rep,
                    conjugates,
                }
            })
            .collect();
        out.sort_by(|a, b| {
            (a.representative.order(), &a.representative.members)
                .cmp(&(b.representative.order(), &b.representative.members))
        });
        Ok(out)
    }

    /// All homomorphisms `h → q` that are onto, as image lists aligned with
    /// `h.members()`.
    pub fn epimorphisms(&self, h: &Subgroup, q: &FiniteGroup) -> Vec<Hom> {
        if !h.order().is_multiple_of(q.order()) {
            return Vec::new();
        }
        let gens = small_generating_set(self, &h.members);
        let mut out = Vec::new();
        let mut images = vec![0; gens.len()];
        loop {
            if let Some(hom) = extend_hom(self, h, &gens, &images, q) {
                let mut hit = BitSet::new(q.order());
                for &y in &hom.images {
                    hit.insert(y);
                }
                if hit.count() == q.order() {
                    out.push(hom);
                }
            }
            // odometer over generator images
            let mut pos = 0;
            loop {
                if pos == images.len() {
                    return out;
                }
                images[pos] += 1;
                if (images[pos] as usize) < q.order() {
                    break;
                }
                images[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Epimorphisms `h ↠ q` up to the action `(a, b)·χ = b ∘ χ ∘ ι_a⁻¹`,
    /// where `a` ranges over the group generated by `source_actors` (elements
    /// normalizing `h`, acting by conjugation) and `b` over the group
    /// generated by `target_autos` (automorphisms of `q` as image lists).
    pub fn epimorphism_classes(
        &self,
        h: &Subgroup,
        q: &FiniteGroup,
        source_actors: &[Elem],
        target_autos: &[Vec<Elem>],
    ) -> EpiClass {
        let all = self.epimorphisms(h, q);
        let position: BTreeMap<Elem, usize> =
            h.members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let index: BTreeMap<Vec<Elem>, usize> = all
            .iter()
            .enumerate()
            .map(|(i, hom)| (hom.images.clone(), i))
            .collect();
        let mut class_of = vec![usize::MAX; all.len()];
        let mut orbits = Vec::new();
        for start in 0..all.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            let mut size = 0;
            while let Some(cur) = queue.pop_front() {
                size += 1;
                let hom = &all[cur];
                let mut moved: Vec<Vec<Elem>> = Vec::new();
                for &a in source_actors {
                    let ainv = self.inv(a);
                    // (χ ∘ ι_a⁻¹)(x) = χ(a⁻¹ x a)
                    moved.push(
                        h.members
                            .iter()
                            .map(|&x| hom.images[position[&self.conj(ainv, x)]])
                            .collect(),
                    );
                }
                for b in target_autos {
                    moved.push(hom.images.iter().map(|&y| b[y as usize]).collect());
                }
                for images in moved {
                    let next = index[&images];
                    if class_of[next] == usize::MAX {
                        class_of[next] = id;
                        queue.push_back(next);
                    }
                }
            }
            let kernel_members: Vec<Elem> = h
                .members
                .iter()
                .zip(&all[start].images)
                .filter(|(_, &y)| y == 0)
                .map(|(&x, _)| x)
                .collect();
            orbits.push(EpiOrbit {
                representative: all[start].clone(),
                kernel: self
                    .subgroup_from_members(&kernel_members)
                    .expect("kernel is a subgroup"),
                orbit_size: size,
            });
        }
        EpiClass {
            source_order: h.order(),
            target_order: q.order(),
            total: all.len(),
            orbits,
        }
    }

    /// Automorphisms of `self` as image lists.
    pub fn automorphisms(&self) -> Vec<Vec<Elem>> {
        self.epimorphisms(&self.whole(), self)
            .into_iter()
            .map(|h| h.images)
            .collect()
    }
}

/// A greedy generating set: repeatedly adds the highest-order element not yet
/// generated.
pub fn small_generating_set(g: &FiniteGroup, items: &[Elem]) -> Vec<Elem> {
    let mut sorted: Vec<(usize, Elem)> = items.iter().map(|&x| (g.element_order(x), x)).collect();
    sorted.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut gens = Vec::new();
    let mut current = g.trivial_subgroup();
    for (_, x) in sorted {
        if current.order() == items.len() {
            break;
        }
        if !current.contains(x) {
            gens.push(x);
            current = g.closure(&gens);
        }
    }
    gens
}

/// Extends generator images to a homomorphism by walking the Cayley graph;
/// every edge must be consistent.
fn extend_hom(
    g: &FiniteGroup,
    h: &Subgroup,
    gens: &[Elem],
    images: &[Elem],
    q: &FiniteGroup,
) -> Option<Hom> {
    let mut value: BTreeMap<Elem, Elem> = BTreeMap::new();
    value.insert(0, 0);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        let fx = value[&x];
        for (i, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let fy = q.mul(fx, images[i]);
            match value.get(&y) {
                Some(&prev) if prev != fy => return None,
                Some(_) => {}
                None => {
                    value.insert(y, fy);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(Hom {
        images: h.members.iter().map(|x| value[x]).collect(),
    })
}

/// Equality and ordering look at the members only.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<Elem>,
    set: BitSet,
    gens: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.order(), &self.members).cmp(&(other.order(), &other.members))
    }
}

impl Subgroup {
    fn from_sorted(parent_order: usize, members: Vec<Elem>, gens: Vec<Elem>) -> Self {
        let set = BitSet::from_indices(parent_order, members.iter().copied());
        Subgroup { members, set, gens }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn bits(&self) -> &BitSet {
        &self.set
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.set.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.set.is_subset(&other.set)
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let members: Vec<Elem> = self.set.intersection(&other.set).iter().collect();
        g.subgroup_from_members(&members).expect("intersection is a subgroup")
    }
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub representative: Subgroup,
    pub class_size: usize,
    pub weyl_order: usize,
    /// All members of the class, sorted; the first one is the representative.
    pub conjugates: Vec<Subgroup>,
}

/// A homomorphism given by the images of the source members, in member order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hom {
    pub images: Vec<Elem>,
}

#[derive(Clone, Debug)]
pub struct EpiOrbit {
    pub representative: Hom,
    pub kernel: Subgroup,
    pub orbit_size: usize,
}

#[derive(Clone, Debug)]
pub struct EpiClass {
    pub source_order: usize,
    pub target_order: usize,
    /// Number of epimorphisms before taking orbits.
    pub total: usize,
    pub orbits: Vec<EpiOrbit>,
}

impl EpiClass {
    pub fn class_count(&self) -> usize {
        self.orbits.len()
    }
}
