//! Constructive 2-factorizations of `K_n` (or `K_n - I` for even `n`) into
//! Hamilton cycles and `C_4k`-factors, `n = 4kt`, plus an independent
//! certificate verifier and a small exhaustive search for cross-checks.
//!
//! ```
//! let cert = hwfactor::construct_hw(1, 3, 2).unwrap();
//! assert_eq!(cert.n, 12);
//! assert!(hwfactor::verify_certificate(&cert).passed());
//! ```

pub mod classical;
pub mod constructions;
pub mod dispatch;
pub mod error;
pub mod format;
pub mod matching;
pub mod model;
pub mod mutation;
pub mod oracle;
pub mod verify;

pub use dispatch::{construct_hamilton_only, construct_hw, supported, Support};
pub use error::{Error, Result};
pub use model::{Certificate, Edge, FactorKind, Layout, Matching, Params, SuperPlan, TwoFactor, Vertex};
pub use verify::{verify_certificate, Check, Report};
