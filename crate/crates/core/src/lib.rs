//! Finite frames, their factor posets of tight subframes, dual frames and
//! ℓp comparisons between duals.

pub mod cli;
pub mod dual;
pub mod error;
pub mod frame;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod poset;
pub mod sampling;
pub mod selftest;

pub use dual::{canonical_dual, dual_family, DualElement, DualFamily};
pub use error::{FrameError, Result};
pub use frame::{frame_bounds, is_tight, Field, Frame};
pub use linalg::{Matrix, ToleranceConfig, C64};
pub use poset::{factor_poset, FactorPoset, IndexSet};
