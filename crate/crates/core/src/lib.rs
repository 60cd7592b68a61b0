//! Average entanglement entropy of random bipartite pure states.
//!
//! A vector `v` in a tensor product `H₁ ⊗ H₂` of Hilbert spaces of dimensions
//! `m ≤ n` is identified with its `n×m` coefficient matrix. The squared,
//! normalized singular values of that matrix are the eigenvalues of the
//! reduced density matrix, and their Shannon entropy is the entanglement
//! entropy of `v`. This crate computes the average of that entropy over the
//! uniform (spherical) ensemble three independent ways:
//!
//! - **exact**: the closed form `Σ_{k=n+1}^{mn} 1/k − (m−1)/(2n)`, together
//!   with its building blocks (digamma, harmonic sums, generalized Laguerre
//!   integrals) so the whole derivation chain is executable ([`page`],
//!   [`laguerre`], [`entropy`]);
//! - **spectral density**: deterministic quadrature of the joint eigenvalue
//!   density `Δ(p)² Π pⱼ^{n−m}` over the simplex ([`density`]);
//! - **Monte Carlo**: Ginibre sampling of uniform states with reproducible
//!   parallel substreams ([`mc`]).
//!
//! The [`asympt`] module carries the Euler–Maclaurin expansion of the exact
//! sum with a rigorous remainder bound, and the large-`N` asymptote
//! `d₁ ln N + A₁ (+ A₂)` for factor dimensions growing like section spaces of
//! powers of positive line bundles.
//!
//! All entropies are in nats unless a bits conversion is requested at the
//! output layer.

#![forbid(unsafe_code)]

pub mod asympt;
pub mod density;
pub mod entropy;
pub mod error;
pub mod laguerre;
pub mod manifest;
pub mod mc;
pub mod page;
pub mod quadrature;
pub mod svd;

pub use error::{Error, Result};
pub use page::PageParams;
pub use svd::{ModifiedSvd, SchmidtSpectrum, StateMatrix};
