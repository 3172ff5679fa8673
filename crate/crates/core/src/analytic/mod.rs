//! Floating-point analysis: oval tracing, Abelian integral evaluation (the
//! independent oracle for the algebraic derivations), high-order ODE
//! integration along complex paths, monodromy, spectral checks and scalar
//! annulus factorization.

pub mod factorize;
pub mod integrals;
pub mod oval;
pub mod path;
pub mod rk;
pub mod transport;

pub use factorize::{circle_samples, scalar_factorize, ScalarFactorization};
pub use integrals::{
    abelian_integral, abelian_integrals, gelfand_leray_check, verify_pf, GelfandLeray, OneForm,
};
pub use oval::{trace_oval, Oval, OvalTrace};
pub use path::{ComplexPath, PathSegment};
pub use rk::RkOptions;
pub use transport::{
    integrate_along_path, monodromy, solution_winding, spectral_condition,
    transport_with_samples, OdeMatrix,
};
