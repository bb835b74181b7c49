//! Bakry-Émery calculus of the normalized graph Laplacian.
//!
//! [`laplacian`], [`gamma`], [`h_form`] and [`gamma2`] act on functions
//! known on a closed 2-ball. [`cd_forms`] writes `Γ2 - (1/m)(Δ·)²` and `Γ`
//! as symmetric matrices; [`cd_verify`] decides `CD(m, K)` at a vertex
//! exactly and [`cd_optimal_k`] finds the largest admissible `K`.

mod bounds;
mod cd;
mod forms;
mod function;

pub use bounds::{
    cd_bound_positive_kappa, cd_bound_rough, cd_bound_triangles, cd_bound_max_degree, cd_bound_tw,
};
pub use cd::{cd_optimal_k, cd_verify, CdOutcome, CdResult};
pub use forms::{cd_forms, CdQuadraticForms, Dimension, ReducedForms};
pub use function::{gamma, gamma2, gamma2_iterated, h_form, laplacian, FunctionOnBall};
