//! `S4` as the rotation group of the cube `[-1, 1]^3`.
//!
//! The 24 rotations are the signed permutation matrices of determinant `+1`.
//! Their action on the four body diagonals is the permutation model of `S4`
//! used as the group law; the action on the eight vertices is the
//! permutation representation of the coupled network.
//!
//! Irreducible representations, in the order used throughout the crate:
//! `V1` trivial, `V2` the sign of the diagonal permutation, `V3` the rotation
//! matrices themselves, `V4 = V2 ⊗ V3`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::group::{Elem, FiniteGroup, Subgroup, DEFAULT_LATTICE_BOUND};
use crate::perm::Perm;

pub type Matrix3 = [[i32; 3]; 3];

/// Cube vertices, indexed `0..8`: the bottom face `z = -1` in
/// counter-clockwise order, then the top face above it.
pub const VERTICES: [[i32; 3]; 8] = [
    [-1, -1, -1],
    [1, -1, -1],
    [1, 1, -1],
    [-1, 1, -1],
    [-1, -1, 1],
    [1, -1, 1],
    [1, 1, 1],
    [-1, 1, 1],
];

/// Conjugacy classes of subgroups of `S4`, ordered as in the usual table.
///
/// `Z2` is generated by a double transposition (a half-turn about a face
/// axis), `D1` by a transposition (a half-turn about an edge axis), `V4` is
/// the normal Klein group and `D2` the non-normal one.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum S4Class {
    Z1,
    Z2,
    D1,
    Z3,
    V4,
    D2,
    Z4,
    D3,
    D4,
    A4,
    S4,
}

impl S4Class {
    pub const ALL: [S4Class; 11] = [
        S4Class::Z1,
        S4Class::Z2,
        S4Class::D1,
        S4Class::Z3,
        S4Class::V4,
        S4Class::D2,
        S4Class::Z4,
        S4Class::D3,
        S4Class::D4,
        S4Class::A4,
        S4Class::S4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            S4Class::Z1 => "Z1",
            S4Class::Z2 => "Z2",
            S4Class::D1 => "D1",
            S4Class::Z3 => "Z3",
            S4Class::V4 => "V4",
            S4Class::D2 => "D2",
            S4Class::Z4 => "Z4",
            S4Class::D3 => "D3",
            S4Class::D4 => "D4",
            S4Class::A4 => "A4",
            S4Class::S4 => "S4",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|c| c.name() == name)
    }

    pub fn order(self) -> usize {
        match self {
            S4Class::Z1 => 1,
            S4Class::Z2 | S4Class::D1 => 2,
            S4Class::Z3 => 3,
            S4Class::V4 | S4Class::D2 | S4Class::Z4 => 4,
            S4Class::D3 => 6,
            S4Class::D4 => 8,
            S4Class::A4 => 12,
            S4Class::S4 => 24,
        }
    }

    /// Position in [`S4Class::ALL`], a stable 1-based id.
    pub fn id(self) -> usize {
        Self::ALL.iter().position(|&c| c == self).unwrap() + 1
    }
}

/// The cube model: group law, rotation matrices and vertex action.
#[derive(Clone, Debug)]
pub struct CubeGroup {
    group: FiniteGroup,
    matrices: Vec<Matrix3>,
    vertex_perms: Vec<Perm>,
    classes: Vec<(S4Class, Subgroup)>,
}

fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut c = [[0; 3]; 3];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn apply(m: &Matrix3, v: &[i32; 3]) -> [i32; 3] {
    let mut out = [0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..3).map(|k| m[i][k] * v[k]).sum();
    }
    out
}

fn vertex_index(v: &[i32; 3]) -> u32 {
    VERTICES.iter().position(|w| w == v).expect("cube vertex") as u32
}

/// Body diagonal through a vertex: the vertex and its antipode share an id.
fn diagonal_index(v: &[i32; 3]) -> u32 {
    let (a, b) = (vertex_index(v), vertex_index(&[-v[0], -v[1], -v[2]]));
    a.min(b)
}

impl CubeGroup {
    pub fn new() -> Self {
        // quarter turn about z and a third turn about the main diagonal
        let quarter_z: Matrix3 = [[0, -1, 0], [1, 0, 0], [0, 0, 1]];
        let third_diag: Matrix3 = [[0, 0, 1], [1, 0, 0], [0, 1, 0]];
        let diag_ids: BTreeMap<u32, u32> = [0u32, 1, 2, 3]
            .iter()
            .map(|&v| (diagonal_index(&VERTICES[v as usize]), v))
            .collect();
        let on_diagonals = |m: &Matrix3| {
            let images = (0..4)
                .map(|d| diag_ids[&diagonal_index(&apply(m, &VERTICES[d]))])
                .collect();
            Perm::from_images(images).expect("diagonal action")
        };
        let group = FiniteGroup::from_permutations(
            &[on_diagonals(&quarter_z), on_diagonals(&third_diag)],
            DEFAULT_LATTICE_BOUND,
        )
        .expect("S4 closes");

        // matrices in the group's element order, by closing the same words
        let mut by_perm: BTreeMap<Perm, Matrix3> = BTreeMap::new();
        let identity: Matrix3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let mut frontier = alloc::vec![identity];
        by_perm.insert(on_diagonals(&identity), identity);
        while let Some(m) = frontier.pop() {
            for g in [&quarter_z, &third_diag] {
                let next = mat_mul(g, &m);
                let key = on_diagonals(&next);
                if let alloc::collections::btree_map::Entry::Vacant(e) = by_perm.entry(key) {
                    e.insert(next);
                    frontier.push(next);
                }
            }
        }
        let matrices: Vec<Matrix3> = group.elements().map(|x| by_perm[&group.perm(x)]).collect();
        let vertex_perms = matrices
            .iter()
            .map(|m| {
                Perm::from_images(VERTICES.iter().map(|v| vertex_index(&apply(m, v))).collect())
                    .expect("vertex action")
            })
            .collect();
        let mut cube = CubeGroup {
            group,
            matrices,
            vertex_perms,
            classes: Vec::new(),
        };
        let mut classes: Vec<(S4Class, Subgroup)> = cube
            .group
            .conjugacy_classes(DEFAULT_LATTICE_BOUND)
            .expect("S4 lattice")
            .into_iter()
            .map(|c| (cube.classify(&c.representative), c.representative))
            .collect();
        classes.sort_by_key(|c| c.0);
        cube.classes = classes;
        cube
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn matrix(&self, g: Elem) -> &Matrix3 {
        &self.matrices[g as usize]
    }

    pub fn vertex_perm(&self, g: Elem) -> &Perm {
        &self.vertex_perms[g as usize]
    }

    /// Sign of the diagonal permutation.
    pub fn sign(&self, g: Elem) -> i32 {
        self.group.perm(g).sign()
    }

    /// Character of `V_j`, `j ∈ 1..=4`.
    pub fn character(&self, j: usize, g: Elem) -> i64 {
        let trace = (0..3).map(|i| self.matrices[g as usize][i][i]).sum::<i32>() as i64;
        match j {
            1 => 1,
            2 => self.sign(g) as i64,
            3 => trace,
            4 => self.sign(g) as i64 * trace,
            _ => panic!("S4 has four irreducible representations"),
        }
    }

    /// Representation matrix of `V_j` at `g` (1×1 or 3×3).
    pub fn irrep_matrix(&self, j: usize, g: Elem) -> Vec<Vec<i64>> {
        let m = &self.matrices[g as usize];
        let s = self.sign(g) as i64;
        match j {
            1 => alloc::vec![alloc::vec![1]],
            2 => alloc::vec![alloc::vec![s]],
            3 | 4 => {
                let f = if j == 3 { 1 } else { s };
                m.iter().map(|row| row.iter().map(|&x| f * x as i64).collect()).collect()
            }
            _ => panic!("S4 has four irreducible representations"),
        }
    }

    pub fn irrep_dim(j: usize) -> usize {
        if j <= 2 {
            1
        } else {
            3
        }
    }

    /// Names a subgroup by its conjugacy class.
    pub fn classify(&self, s: &Subgroup) -> S4Class {
        let g = &self.group;
        let cycle_types: Vec<Vec<usize>> = s.members().iter().map(|&x| g.perm(x).cycle_type()).collect();
        let has = |t: &[usize]| cycle_types.iter().any(|c| c.as_slice() == t);
        match s.order() {
            1 => S4Class::Z1,
            2 if has(&[2, 2]) => S4Class::Z2,
            2 => S4Class::D1,
            3 => S4Class::Z3,
            4 if has(&[4]) => S4Class::Z4,
            4 if has(&[2]) => S4Class::D2,
            4 => S4Class::V4,
            6 => S4Class::D3,
            8 => S4Class::D4,
            12 => S4Class::A4,
            _ => S4Class::S4,
        }
    }

    /// The canonical representative of a class.
    pub fn representative(&self, c: S4Class) -> &Subgroup {
        &self.classes[c.id() - 1].1
    }

    pub fn classes(&self) -> &[(S4Class, Subgroup)] {
        &self.classes
    }
}

impl Default for CubeGroup {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det(m: &Matrix3) -> i32 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    #[test]
    fn matrices_form_the_rotation_group() {
        let cube = CubeGroup::new();
        let g = cube.group();
        assert_eq!(g.order(), 24);
        for a in g.elements() {
            assert_eq!(det(cube.matrix(a)), 1);
            for b in g.elements() {
                assert_eq!(
                    mat_mul(cube.matrix(a), cube.matrix(b)),
                    *cube.matrix(g.mul(a, b))
                );
                assert_eq!(
                    cube.vertex_perm(b).then(cube.vertex_perm(a)),
                    *cube.vertex_perm(g.mul(a, b))
                );
            }
        }
    }

    #[test]
    fn cycle_type_dictionary() {
        let cube = CubeGroup::new();
        let g = cube.group();
        for x in g.elements() {
            let trace: i32 = (0..3).map(|i| cube.matrix(x)[i][i]).sum();
            let expected = match g.perm(x).cycle_type().as_slice() {
                [] => 3,
                [4] => 1,
                [2, 2] => -1,
                [3] => 0,
                [2] => -1,
                _ => unreachable!(),
            };
            assert_eq!(trace, expected);
            // a 90° face turn permutes vertices in two 4-cycles
            if g.perm(x).cycle_type() == [4] {
                assert_eq!(cube.vertex_perm(x).cycle_type(), alloc::vec![4, 4]);
            }
        }
    }

    #[test]
    fn characters_are_orthonormal() {
        let cube = CubeGroup::new();
        for i in 1..=4 {
            for j in 1..=4 {
                let s: i64 = cube
                    .group()
                    .elements()
                    .map(|g| cube.character(i, g) * cube.character(j, g))
                    .sum();
                assert_eq!(s, if i == j { 24 } else { 0 });
            }
        }
    }

    #[test]
    fn class_names() {
        let cube = CubeGroup::new();
        let names: Vec<S4Class> = cube.classes().iter().map(|c| c.0).collect();
        assert_eq!(names, S4Class::ALL.to_vec());
        let g = cube.group();
        assert!(g.is_normal(cube.representative(S4Class::V4)));
        assert!(!g.is_normal(cube.representative(S4Class::D2)));
    }
}
