//! Text rendering of classes as `H×^{Z_H}_{L}K (R)` and of Burnside
//! elements as signed sums.

use alloc::format;
use alloc::string::String;

use crate::burnside::BurnsideElement;
use crate::goursat::{ClassKey, GoursatFamily, PhiTable};

/// The family with `n` left formal, e.g. `D4×^{Z4}_{Z2}D2n`.
pub fn family_label(table: &PhiTable, family: &GoursatFamily) -> String {
    label(table, family, family.case.k.symbol())
}

/// A concrete class, e.g. `D4×^{Z4}_{Z2}D2` for id 66 at `n = 1`.
pub fn class_label(table: &PhiTable, key: ClassKey) -> String {
    let family = &table.families[key.id as usize - 1];
    label(table, family, format!("{}", family.case.k.at(key.n.max(1))))
}

fn label(table: &PhiTable, family: &GoursatFamily, k: String) -> String {
    let name = |i: usize| table.gamma.classes[i].name.as_str();
    let mut out = format!("{}×^{{{}}}_{{{}}}{}", name(family.h), name(family.z_h), family.case.quotient, k);
    if family.show_r {
        out.push_str(&format!(" ({})", name(family.r)));
    }
    out
}

/// `(A) - 2(B) + (C)`, terms in increasing class order; `0` when empty.
pub fn signed_sum(table: &PhiTable, element: &BurnsideElement) -> String {
    let mut out = String::new();
    for (i, (key, c)) in element.terms().enumerate() {
        let magnitude = c.unsigned_abs();
        let coefficient = if magnitude == 1 { String::new() } else { format!("{magnitude}") };
        let sign = match (i, c < 0) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        out.push_str(&format!("{sign}{coefficient}({})", class_label(table, key)));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goursat::{enumerate_phi, Gamma};
    use crate::s4::CubeGroup;

    #[test]
    fn labels() {
        let t = enumerate_phi(Gamma::s4(&CubeGroup::new()));
        assert_eq!(class_label(&t, ClassKey::new(66, 1)), "D4×^{Z4}_{Z2}D2");
        assert_eq!(family_label(&t, &t.families[38]), "D2×^{Z1}_{D2}D2n (D1)");
        assert_eq!(class_label(&t, ClassKey::new(100, 0)), "S4×^{S4}_{Z1}O2");
        let e = BurnsideElement::from_terms([(ClassKey::new(100, 0), 1), (ClassKey::new(45, 1), -2)]);
        assert_eq!(signed_sum(&t, &e), "-2(D4×^{Z1}_{D4}D4) + (S4×^{S4}_{Z1}O2)");
        assert_eq!(signed_sum(&t, &BurnsideElement::zero()), "0");
    }
}
