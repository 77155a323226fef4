//! Repeated-root cyclic codes of length `2^r p^s` over `F_{p^m}`: factorization, duals,
//! hulls, Hamming distances, MDS classification and the quantum codes built from them.

pub mod cosets;
pub mod cycliccode;
pub mod error;
pub mod fixtures;
pub mod galois;
pub mod polyring;
pub mod quantum;
pub mod unityfactor;
pub mod wtdist;

pub use error::{Error, Result};
pub use galois::{decompose_q, FieldElement, FieldSpec, SignDecomposition};
pub use polyring::Poly;
