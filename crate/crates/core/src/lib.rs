//! Exact computations with multiplicative endomorphisms of fields.
//!
//! The crate is organised by subsystem:
//!
//! * [`intlinalg`]: integer normal forms, lattices and saturation.
//! * [`symgroup`]: a symbolic multiplicative group `μ_∞ ⊕ Q^(symbols)` with
//!   divisible subgroups, independence and orders over subgroups.
//! * [`msystems`]: complete systems of minimal equations.
//! * [`homext`]: homomorphisms of the symbolic group and their extensions.
//! * [`termlang`]: terms with a unary endomorphism symbol and their
//!   linearisation.
//! * [`ffworld`]: finite-field instantiation through discrete logarithms.
//! * [`szmielew`]: pseudofinite-cyclic abelian groups.
//! * [`cli`]: the `mendo` command-line dispatcher.

pub mod cli;
pub mod ffworld;
pub mod homext;
pub mod intlinalg;
pub mod json;
pub mod msystems;
pub mod numtheory;
pub mod poly;
pub mod symgroup;
pub mod szmielew;
pub mod termlang;
