//! Exact symbolic calculus for tangent-bundle-valued differential forms on
//! coordinate charts.
//!
//! Two chart models are supported: polynomial coefficients on `R^m` and
//! Fourier polynomials on the torus `T^m`, both over exact (Gaussian-)
//! rational scalars. On top of the forms layer the crate implements the
//! trace calculus (`c`, `cbar`, the wedge embedding and projection), the
//! degree-1 differential `delta` and its cohomology, the
//! Frölicher–Nijenhuis, Nijenhuis–Richardson and corrected traceless
//! brackets, the abelian-extension data connecting them, a graded
//! Lie-algebra cochain differential, an expression DSL with a canonical
//! printer, and seeded property-check suites for every identity.

pub mod calculus;
pub mod chart;
pub mod coeff;
pub mod cohomology;
pub mod diffeo;
pub mod dsl;
pub mod error;
pub mod forms;
pub mod gen;
pub mod gla;
pub mod scalar;
pub mod suites;

pub use calculus::{
    c_bracket, delta, embed_j, fn_bracket, induced_fn_omega, induced_nr_omega, is_traceless,
    nr_bracket, project_p, s_concomitant, trace_c, trace_cbar, traceless_part,
};
pub use chart::{ChartKind, ChartSpec};
pub use coeff::{CoeffFn, Substitution};
pub use cohomology::{
    class_bracket, delta_class, delta_cocycle_check, derham_class, extension_bracket, is_closed,
    primitive, sigma, theta_action, DeltaClass,
};
pub use diffeo::Diffeo;
pub use error::{Error, Result};
pub use forms::{insert_vv, lie_theta, nr_insert, MultiIndex, ScalarForm, VectorForm};
pub use scalar::Scalar;
