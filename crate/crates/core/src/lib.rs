//! Exact computations for level-k representation theory of simple Lie algebras.
//!
//! The crate is layered bottom-up:
//!
//! * [`rootdata`]: Cartan data, roots, coroots, the normalized invariant form
//!   and Weyl group enumeration.
//! * [`affine_weyl`]: the ρ-shifted affine Weyl action at level κ = h + c,
//!   wall detection and reduction to the fundamental alcove.
//! * [`finite_reps`]: Weyl dimensions, Freudenthal multiplicities, Klimyk
//!   tensor products and character values at the S-matrix torus points.
//! * [`fusion`]: the level-k alcove, the Kac–Peterson S-matrix and the fusion
//!   product computed twice, numerically (Verlinde) and exactly (Kac–Walton).
//! * [`verlinde`]: conformal-block dimensions with insertions, cohomology
//!   reports (vanishing, degree, dimension) and the genus factorization check.
//! * [`induction`]: holomorphic induction from the representation ring to the
//!   fusion ring and the ring-homomorphism check.
//! * [`cli`]: the `loopfusion` command-line front end.

pub mod affine_weyl;
pub mod cli;
pub mod error;
pub mod finite_reps;
pub mod fusion;
pub mod induction;
pub mod rootdata;
pub mod verlinde;

pub use affine_weyl::{AffineContext, AlcoveReduction, Degree, ReductionOrder, ReductionStatus};
pub use error::{Error, Result};
pub use finite_reps::{VirtualCharacter, WeightMultiplicities};
pub use fusion::{FusionElement, FusionRing, LevelWeight, SMatrix};
pub use induction::InductionResult;
pub use rootdata::{AlgebraSpec, RootSystem, Series, Weight};
pub use verlinde::{CohomologyReport, FactorizationCheck, Surface};
