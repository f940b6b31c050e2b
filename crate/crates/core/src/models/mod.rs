//! Concrete gyrogroups: the Möbius disk, the Einstein ball, table-defined
//! finite gyrogroups, and finite direct products.

pub mod einstein;
pub mod finite;
pub mod mobius;
mod product;

pub use einstein::{einstein_add, gamma, EinsteinBall, EinsteinVector};
pub use finite::{k16_path, load_k16, load_table, FiniteGyrogroup};
pub use mobius::{gyration_factor, mobius_add, mobius_gyr, MobiusDisk, MobiusPoint};
pub use product::{product, Product};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gyro::Gyrogroup;

/// Outcome of a non-associativity search.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSearch<E> {
    pub witness: Option<[E; 3]>,
    /// Number of triples tried.
    pub tried: u64,
    /// True for finite carriers, which are scanned in index order up to the
    /// first witness.
    pub exhaustive: bool,
}

/// Looks for `(x, y, z)` with `x ⊕ (y ⊕ z) ≠ (x ⊕ y) ⊕ z`.
///
/// Finite carriers are scanned exhaustively in index order. Continuous
/// carriers try the model's probe triples first, then `budget` random
/// triples drawn from `seed`.
pub fn nonassoc_witness<G: Gyrogroup + ?Sized>(
    g: &G,
    budget: usize,
    seed: u64,
) -> WitnessSearch<G::Element> {
    let fails = |x: &G::Element, y: &G::Element, z: &G::Element| {
        !g.approx_eq(&g.op(x, &g.op(y, z)), &g.op(&g.op(x, y), z))
    };
    let mut tried = 0;
    if let Some(all) = g.elements() {
        for x in &all {
            for y in &all {
                for z in &all {
                    tried += 1;
                    if fails(x, y, z) {
                        return WitnessSearch {
                            witness: Some([x.clone(), y.clone(), z.clone()]),
                            tried,
                            exhaustive: true,
                        };
                    }
                }
            }
        }
        return WitnessSearch {
            witness: None,
            tried,
            exhaustive: true,
        };
    }
    for [x, y, z] in g.probe_triples() {
        tried += 1;
        if fails(&x, &y, &z) {
            return WitnessSearch {
                witness: Some([x, y, z]),
                tried,
                exhaustive: false,
            };
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let (x, y, z) = (g.sample(&mut rng), g.sample(&mut rng), g.sample(&mut rng));
        tried += 1;
        if fails(&x, &y, &z) {
            return WitnessSearch {
                witness: Some([x, y, z]),
                tried,
                exhaustive: false,
            };
        }
    }
    WitnessSearch {
        witness: None,
        tried,
        exhaustive: false,
    }
}
