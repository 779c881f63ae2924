//! Exact computations for groups of the form `Γ × O(2)` with `Γ` finite.
//!
//! The crate covers the whole pipeline used to classify symmetric periodic
//! branches of reversible networks:
//!
//! * [`group`]: finite groups on indexed elements, subgroup lattices,
//!   conjugacy classes, normalizers and epimorphism classes;
//! * [`o2`]: closed subgroups of `O(2)`, their quotients and the
//!   finitization `O(2) → D_m`;
//! * [`goursat`]: the conjugacy classes of `Γ × O(2)` as amalgamated
//!   products, with Weyl orders and pairing numbers;
//! * [`burnside`]: the Burnside ring on finite-Weyl classes;
//! * [`degree`]: irreducible representations, fixed-point dimensions and
//!   basic degrees;
//! * [`systems`]: the cube-coupled delay and integro-differential networks.
//!
//! Everything except the spectral closed forms runs on exact integers and
//! rationals. The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bitset;
pub mod burnside;
pub mod degree;
pub mod error;
pub mod goursat;
pub mod group;
pub mod linalg;
pub mod o2;
pub mod perm;
pub mod render;
pub mod rep;
pub mod s4;
pub mod systems;

pub use error::{Error, Result};
