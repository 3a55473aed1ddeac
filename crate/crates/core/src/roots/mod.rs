//! Real-root isolation (exact) and simultaneous complex root finding (float).

mod aberth;
mod sturm;

pub use aberth::{aberth_f64, complex_roots, polish_roots, ComplexRoot};
pub use sturm::{
    count_real_roots, count_real_roots_in, isolate_real_roots, refine, simplest_rational_between,
    IsolatingInterval, SturmChain,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("polynomial has no roots to find (degree {0})")]
    Constant(usize),
    #[error("root iteration did not converge within {iterations} iterations (worst residual {worst_residual:e})")]
    NoConvergence { iterations: usize, worst_residual: f64 },
}
