//! Integer matrix representations of finite groups and their fixed spaces.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::rank_integer;

pub type IntMatrix = Vec<Vec<i64>>;

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// One square integer matrix per group element, indexed by element.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    dim: usize,
    matrices: Vec<IntMatrix>,
}

impl MatrixRep {
    /// Accepts the matrices only if `ρ(a)ρ(s) = ρ(as)` for every element `a`
    /// and generator `s`, which forces a homomorphism.
    pub fn new(group: &FiniteGroup, matrices: Vec<IntMatrix>) -> Result<Self> {
        let dim = matrices.first().map_or(0, Vec::len);
        if matrices.len() != group.order()
            || matrices.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim))
        {
            return Err(Error::NotHomomorphism(format!(
                "expected {} square matrices of size {dim}",
                group.order()
            )));
        }
        for a in group.elements() {
            for &s in group.generators() {
                if mat_mul(&matrices[a as usize], &matrices[s as usize])
                    != matrices[group.mul(a, s) as usize]
                {
                    return Err(Error::NotHomomorphism(format!(
                        "relation fails at ({a}, {s})"
                    )));
                }
            }
        }
        Ok(MatrixRep { dim, matrices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: u32) -> &IntMatrix {
        &self.matrices[g as usize]
    }

    pub fn trace(&self, g: u32) -> i64 {
        (0..self.dim).map(|i| self.matrices[g as usize][i][i]).sum()
    }
}

/// Dimension of the subspace fixed by every element of `s`: the corank of
/// the stacked blocks `ρ(g) - I` over generators `g` of `s`.
pub fn fixed_dim_finite(s: &Subgroup, rep: &MatrixRep) -> usize {
    let mut rows = Vec::new();
    for &g in s.generators() {
        for (i, row) in rep.matrix(g).iter().enumerate() {
            let mut r = row.clone();
            r[i] -= 1;
            rows.push(r);
        }
    }
    if rows.is_empty() {
        return rep.dim();
    }
    rep.dim() - rank_integer(&rows)
}

/// `(1/|s|) Σ_{g ∈ s} trace ρ(g)`, which must be a nonnegative integer.
pub fn character_average(s: &Subgroup, rep: &MatrixRep) -> Result<usize> {
    let total: i64 = s.members().iter().map(|&g| rep.trace(g)).sum();
    let n = s.order() as i64;
    if total % n != 0 || total < 0 {
        return Err(Error::Inconsistent(format!(
            "character sum {total} is not a multiple of |s| = {n}"
        )));
    }
    Ok((total / n) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::s4::{CubeGroup, S4Class};
    use alloc::vec;

    fn vertex_rep(cube: &CubeGroup) -> MatrixRep {
        let mats = cube
            .group()
            .elements()
            .map(|g| {
                let p = cube.vertex_perm(g);
                (0..8)
                    .map(|i| (0..8).map(|j| (p.apply(j) == i) as i64).collect())
                    .collect()
            })
            .collect();
        MatrixRep::new(cube.group(), mats).unwrap()
    }

    #[test]
    fn fixed_dims_two_ways() {
        let cube = CubeGroup::new();
        let rep = vertex_rep(&cube);
        let g = cube.group();
        assert_eq!(fixed_dim_finite(&g.trivial_subgroup(), &rep), 8);
        assert_eq!(fixed_dim_finite(&g.whole(), &rep), 1);
        for (_, s) in cube.classes() {
            assert_eq!(fixed_dim_finite(s, &rep), character_average(s, &rep).unwrap());
        }
        let sign = MatrixRep::new(g, g.elements().map(|x| vec![vec![cube.sign(x) as i64]]).collect())
            .unwrap();
        assert_eq!(fixed_dim_finite(cube.representative(S4Class::A4), &sign), 1);
        assert_eq!(fixed_dim_finite(&g.whole(), &sign), 0);
        for j in 1..=4 {
            let irrep = MatrixRep::new(g, g.elements().map(|x| cube.irrep_matrix(j, x)).collect())
                .unwrap();
            for (_, s) in cube.classes() {
                assert_eq!(fixed_dim_finite(s, &irrep), character_average(s, &irrep).unwrap());
            }
        }
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let cube = CubeGroup::new();
        let g = cube.group();
        let bogus = g.elements().map(|x| vec![vec![if x == 1 { -1 } else { 1 }]]).collect();
        assert!(MatrixRep::new(g, bogus).is_err());
    }
}
