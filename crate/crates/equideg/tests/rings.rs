//! Burnside products by the subgroup recurrence against orbit counting, and
//! the ring axioms on random elements.

use equideg::burnside::{BurnsideElement, EquivariantBurnside, FiniteBurnside};
use equideg::goursat::{enumerate_phi, ClassKey, Gamma};
use equideg::group::FiniteGroup;
use equideg::s4::CubeGroup;
use proptest::prelude::*;

fn finite_ring(m: u32) -> FiniteBurnside {
    let cube = CubeGroup::new();
    let group = FiniteGroup::product(cube.group().clone(), FiniteGroup::dihedral(m));
    FiniteBurnside::new(group, 1 << 16).unwrap()
}

#[test]
fn s4_times_dihedral_products_agree_with_orbit_counts() {
    for (m, classes) in [(4, 234), (6, 272)] {
        let ring = finite_ring(m);
        assert_eq!(ring.class_count(), classes, "S4 × D{m}");
        for left in 0..ring.class_count() {
            for right in left..ring.class_count() {
                let (a, b) = (BurnsideElement::generator(left), BurnsideElement::generator(right));
                assert_eq!(ring.mul(&a, &b).unwrap(), ring.mul_oracle(&a, &b).unwrap(), "S4 × D{m}: ({left}) · ({right})");
            }
        }
    }
}

fn equivariant() -> EquivariantBurnside {
    EquivariantBurnside::new(enumerate_phi(Gamma::s4(&CubeGroup::new())))
}

/// Finite-Weyl classes with `n ≤ 4` together with the one-dimensional ones.
fn small_keys(ring: &EquivariantBurnside) -> Vec<ClassKey> {
    let mut keys: Vec<ClassKey> = (1..=4).flat_map(|bound| ring.dihedral_classes_below(bound)).collect();
    keys.sort();
    keys.dedup();
    keys.extend(ring.one_dimensional_classes());
    keys
}

#[test]
fn equivariant_products_agree_with_finitized_orbit_counts() {
    let ring = equivariant();
    let keys = small_keys(&ring);
    for (i, &left) in keys.iter().enumerate() {
        for &right in &keys[i..] {
            assert_eq!(
                ring.generator_mul(left, right).unwrap(),
                ring.mul_oracle_generators(left, right).unwrap(),
                "{left:?} · {right:?}"
            );
        }
    }
}

#[test]
fn infinite_weyl_classes_are_rejected() {
    let ring = equivariant();
    let circle = ring.table().key(1, 1).unwrap();
    assert!(ring.generator_mul(circle, ring.table().whole_group_key()).is_err());
}

struct Fixture {
    ring: EquivariantBurnside,
    keys: Vec<ClassKey>,
}

// The ring memoizes through RefCell, so each test thread builds its own.
thread_local! {
    static FIXTURE: Fixture = {
        let ring = equivariant();
        let keys = small_keys(&ring);
        Fixture { ring, keys }
    };
}

fn with_fixture<T>(body: impl FnOnce(&Fixture) -> T) -> T {
    FIXTURE.with(body)
}

fn element(fixture: &Fixture, picks: &[(usize, i64)]) -> BurnsideElement {
    BurnsideElement::from_terms(picks.iter().map(|&(i, c)| (fixture.keys[i % fixture.keys.len()], c)))
}

fn picks() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..1000, -3i64..=3), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_is_commutative(a in picks(), b in picks()) {
        with_fixture(|f| {
            let (x, y) = (element(f, &a), element(f, &b));
            prop_assert_eq!(f.ring.mul(&x, &y).unwrap(), f.ring.mul(&y, &x).unwrap());
            Ok(())
        })?;
    }

    #[test]
    fn product_is_associative(a in picks(), b in picks(), c in picks()) {
        with_fixture(|f| {
            let (x, y, z) = (element(f, &a), element(f, &b), element(f, &c));
            let left = f.ring.mul(&f.ring.mul(&x, &y).unwrap(), &z).unwrap();
            let right = f.ring.mul(&x, &f.ring.mul(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            Ok(())
        })?;
    }

    #[test]
    fn whole_group_is_the_unit(a in picks()) {
        with_fixture(|f| {
            let x = element(f, &a);
            prop_assert_eq!(f.ring.mul(&f.ring.unit(), &x).unwrap(), x);
            Ok(())
        })?;
    }
}
