//! Exact combinatorics for 321- and 123-avoiding involutions.
//!
//! The crate connects involutions, partial Dyck paths and grand Dyck paths
//! through explicit bijections, implements four sump-parity-reversing
//! involutions on grand Dyck paths together with constructive descriptions of
//! their fixed points, and checks the resulting major-balance identities as
//! exact Laurent polynomial equalities by exhaustive enumeration.
//!
//! Module map:
//!
//! * [`perm`]: permutations, statistics and family enumeration.
//! * [`path`]: N/E lattice paths, peaks, valleys, `sump`, run factorization.
//! * [`bijection`]: `delta`, `xi`, their inverses and compositions.
//! * [`rsk`]: Schensted insertion and the tableau-transpose involution map.
//! * [`sign`]: the four involutions on grand Dyck paths and their fixed-point builders.
//! * [`poly`] / [`qalg`]: Laurent polynomials and q-analogues.
//! * [`formula`]: closed-form right-hand sides of every identity.
//! * [`verify`] / [`oracle`]: generating functions, identity checks, brute-force tables.
//!
//! Every sweep takes an [`Exec`] mode. With the `parallel` feature (on by
//! default) [`Exec::Parallel`] fans work out over rayon; without it the same
//! call runs sequentially.

pub mod bijection;
pub mod exec;
pub mod formula;
pub mod oracle;
pub mod path;
pub mod perm;
pub mod poly;
pub mod qalg;
pub mod rsk;
pub mod sign;
pub mod verify;

pub use exec::Exec;
pub use path::{LatticePath, LatticePoint, Step};
pub use perm::{Family, Pattern, Permutation, Stat, StatRecord};
pub use poly::LaurentPoly;
