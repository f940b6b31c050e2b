//! Gyrogroups and finite topological gyrogroups.
//!
//! The crate has three layers:
//!
//! * [`gyro`] and [`models`]: the gyrogroup contract, axiom and identity
//!   verifiers, and concrete models (Möbius disk, Einstein ball, finite
//!   tables, direct products);
//! * [`sub`]: subgyrogroups, generation, canonical decompositions and covers
//!   by translates;
//! * [`topo`]: finite topologies, their point-set properties, and continuity
//!   of the operations of a finite gyrogroup.
//!
//! Finite carriers are `{0, …, n-1}` with `0` the identity, and subsets are
//! `u64` bitmasks, so carriers hold at most 64 points.

pub mod error;
pub mod gyro;
pub mod models;
pub mod report;
pub mod sub;
pub mod subset;
pub mod topo;

pub use error::{GyroError, Result};
pub use gyro::{
    check_axioms, check_homomorphism, check_identities, derived_gyr, gyr, is_group, Gyrogroup,
    Mode, DEFAULT_TOLERANCE,
};
pub use models::{nonassoc_witness, FiniteGyrogroup, MobiusDisk, MobiusPoint, EinsteinBall, EinsteinVector};
pub use report::{Check, Verdict, VerificationReport};
pub use subset::Subset;
pub use topo::{FiniteTopology, TopoGyroModel};
