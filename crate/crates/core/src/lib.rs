//! Exact-arithmetic certification engine for the closure of the symplectic
//! cone of the simply connected elliptic surfaces E(n), n ≥ 3.
//!
//! The crate models the intersection lattice H(n) ⊕ H_RT ⊕ aH ⊕ b(−E8) of
//! E(n) over exact rationals, classifies rational cohomology classes against
//! the cone regions (positive square, pairing with the fibre class, the
//! spin/non-spin subcones), and for certifiable classes synthesizes a
//! replayable certificate: an integral isometry word built from Eichler
//! transvections and the fibre-preserving maps f_i, a scale N and four
//! non-negative inflation coefficients whose combination lands within ε of
//! the target class. A zero-trust verifier replays every claimed property
//! from the certificate text alone.
//!
//! No floating point is used anywhere; all arithmetic is over
//! `num_bigint::BigInt` / `num_rational::BigRational`.

pub mod arith;
pub mod certificate;
pub mod cone;
pub mod error;
pub mod isometry;
pub mod matrix;
pub mod model;
pub mod orbit;
pub mod sample;
pub mod spinor;
pub mod vector;

pub use arith::{Int, Rat};
pub use error::{Error, Result};
pub use model::{build_surface_model, SurfaceModel};
pub use vector::{LatticeVector, RationalClass};
