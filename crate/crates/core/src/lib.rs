//! Exact computations for analytic quantum groups built from root data.
//!
//! Everything is computed over Q(q) with q generic. The layers are
//! [`scalar`] (field arithmetic and p-adic valuations), [`braided`] and
//! [`nichols`] (braided tensor algebras and their Nichols quotients),
//! [`cartan`] (root data), [`uq`] (the quantum group in PBW normal form),
//! [`repcat`] (weight modules and their braidings), [`analytic`] (norm and
//! convergence checks) and [`deform`] (truncated deformation theory of U(g)).

pub mod scalar;
pub mod braided;
pub mod linalg;
pub mod nichols;
pub mod cartan;
pub mod uq;
pub mod repcat;
pub mod analytic;
pub mod deform;
