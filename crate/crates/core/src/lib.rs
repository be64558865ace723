//! Quantum double Schubert polynomials and equivariant quantum structure
//! constants of flag and partial flag varieties, computed exactly.

pub mod algebra;
pub mod weyl;
pub mod schubert;
pub mod quantization;
pub mod parabolic;
pub mod quantum_ring;
pub mod selftest;
pub mod cli;
