//! Twisted generalized Reed–Solomon codes over small finite fields: the
//! McEliece instantiation, the Schur-square distinguisher, key recovery for a
//! single twist, and exhaustive/Monte-Carlo checks of the counting lemmas
//! behind the attack.
//!
//! The crate is `no_std` with `alloc`. File formats, the command-line front
//! end and a threaded [`exec::Executor`] live in the companion `tgrs-cli`
//! crate.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod attack;
pub mod codes;
pub mod distinguisher;
pub mod exec;
pub mod field;
pub mod grs;
pub mod lemmas;
pub mod linalg;
pub mod mceliece;
pub mod poly;
pub mod rng;

pub use codes::LinearCode;
pub use field::{Elem, Field, FieldError};
pub use grs::{GrsParams, TgrsKey};
pub use linalg::{Matrix, Subspace};
pub use mceliece::PublicKey;
pub use poly::{Degree, Poly, PolySpace};
