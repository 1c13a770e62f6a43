//! Lattice tilings of `Z^n` by the limited-magnitude error ball `B(n,2,1,1)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`abelian`]: finite abelian groups in invariant-factor form and their elements.
//! * [`groupring`]: integer group-ring arithmetic and the perfect-code condition checker.
//! * [`ball`]: enumeration and counting of error balls `B(n,t,k+,k-)`.
//! * [`tiling`]: homomorphisms `Z^n -> G`, bijectivity verification and kernel lattices.
//! * [`search`]: exhaustive, symmetry-reduced search for tilings at small `n`.
//! * [`certify`]: modular-arithmetic nonexistence certificates.
//! * [`construct`]: the ternary Golay tiling at `n = 11` and partial difference set checks.
//! * [`analysis`]: coefficient spectra, counting identities and congruences on instances.

pub mod abelian;
pub mod analysis;
pub mod ball;
pub mod certify;
pub mod construct;
mod error;
pub mod groupring;
pub mod search;
pub mod tiling;

pub use abelian::{enumerate_abelian_groups, GroupElement, GroupSpec};
pub use ball::{ball_size, generate_ball, ErrorBall};
pub use error::{Error, Result};
pub use groupring::{check_theorem3, GroupRingElement, Theorem3Report};
pub use tiling::{TilingHomomorphism, VerificationReport};
