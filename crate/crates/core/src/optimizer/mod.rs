//! Derivative-free minimization by Nelder–Mead simplex search.

mod simplex;
mod transform;

pub use simplex::{minimize, minimize_multistart, OptimResult, SimplexOptions};
pub use transform::{make_transform, Domain, Transform};
