//! Wire codes: compiling stabilizer codes into subsystem codes whose gauge
//! checks have weight and qubit degree at most three, and laying them out
//! locally on D-dimensional grids or arbitrary connectivity graphs.
//!
//! The crate is `no_std` with `alloc`. Enable the `parallel` feature to split
//! the brute-force distance search across threads.
//!
//! # Overview
//!
//! - [`pauli`] and [`gf2`]: phaseless Pauli arithmetic and symplectic linear algebra.
//! - [`code`]: stabilizer and subsystem code model, `k`, bare logicals, dressed distance.
//! - [`wire`]: branch gadgets, check weight reduction, edge stretching, provenance.
//! - [`layout`]: 2D and D-dimensional grid layouts with edge-disjoint routing.
//! - [`graph`] and [`embed`]: expansion estimates and congestion-aware embedding.
//! - [`sim`]: gauge measurement schedules checked by stabilizer-tableau simulation.
//! - [`verify`]: one-call property report binding all of the above.
//!
//! ```
//! use wirecode_core::{codes, wire::build_wire_code, code::compute_k};
//!
//! let five = codes::five_qubit();
//! let wire = build_wire_code(&five);
//! assert_eq!(compute_k(wire.subsystem()), 1);
//! assert!(wire.subsystem().max_weight() <= 3);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod code;
pub mod codes;
pub mod embed;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod layout;
pub mod pauli;
pub mod sim;
pub mod verify;
pub mod wire;

pub use code::{StabilizerCode, SubsystemCode};
pub use error::Error;
pub use pauli::{Pauli, PauliOperator};
pub use wire::WireCode;
