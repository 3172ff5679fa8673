//! Shared error type for the whole toolkit.
//!
//! Errors are grouped into three categories that the CLI maps to exit
//! statuses: domain errors (bad or inadmissible input), numerical failures
//! (an algorithm did not converge or lost too much accuracy), and resource
//! exhaustion (a combinatorial bound exceeded the configured budget).

use thiserror::Error;

/// Exit-status category of an error, used by the CLI front end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Inadmissible input or a structural obstruction (exit status 1).
    Domain,
    /// A numerical procedure failed to converge (exit status 2).
    Numerical,
    /// A guarded big-integer recursion exceeded its budget (exit status 3).
    Resource,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("wedge/exterior derivative would exceed rank 2")]
    RankOverflow,

    #[error("Hamiltonian degree must be at least 2")]
    DegreeTooLow,

    #[error("Hamiltonian is not transversal to infinity (singular Sylvester block)")]
    NonTransversal,

    #[error("internal degree bound violated: {0}")]
    InternalDegreeViolation(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("characteristic polynomial has a (near-)multiple root; partial fractions with simple poles do not exist")]
    RepeatedSpectrum,

    #[error("no polynomial G with dG^dH = d(omega) up to degree {cap} ({})",
            if *.persists_at_higher_cap { "inconsistency persists at cap+2: structural obstruction" }
            else { "consistent system not found at this cap; a larger cap may succeed" })]
    NotDecomposable { cap: u32, persists_at_higher_cap: bool },

    #[error("operation is specialised to H = (x^2+y^2)/2")]
    UnsupportedHamiltonian,

    #[error("level set {0} carries no real oval around a nondegenerate center")]
    NoRealOval(f64),

    #[error("oval tracing left the basin of the center")]
    TraceDiverged,

    #[error("Gelfand-Leray hypothesis d(omega) = dH^eta fails symbolically")]
    HypothesisViolated,

    #[error("integration path passes closer than the required distance to a pole")]
    PathTooClose,

    #[error("integrator step size underflowed near a singularity")]
    StepUnderflow,

    #[error("function vanishes (within tolerance) on the integration boundary")]
    ZeroOnBoundary,

    #[error("boundary refinement exceeded the sample budget")]
    NonConvergent,

    #[error("exponent set has non-real entries; the zero bound requires a real spectrum")]
    NonRealSpectrum,

    #[error("triangle crosses the branch-cut slit along the negative real axis")]
    SlitCrossing,

    #[error("triangle is degenerate (zero area)")]
    DegenerateTriangle,

    #[error("matrix is numerically singular")]
    SingularMatrix,

    #[error("sample magnitude below tolerance: function vanishes on the circle")]
    ZeroOnCircle,

    #[error("sample spectrum has significant tail energy; increase the sample count")]
    AliasingDetected,

    #[error("resource budget exceeded: {0}")]
    ResourceExceeded(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    ParseError { line: usize, col: usize, msg: String },
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            RankOverflow | DegreeTooLow | NonTransversal | NotDecomposable { .. }
            | UnsupportedHamiltonian | NoRealOval(_) | HypothesisViolated | ZeroOnBoundary
            | NonRealSpectrum | SlitCrossing | DegenerateTriangle | ZeroOnCircle
            | ParseError { .. } | InternalDegreeViolation(_) | RepeatedSpectrum => {
                ErrorCategory::Domain
            }
            NumericalFailure(_) | TraceDiverged | PathTooClose | StepUnderflow
            | NonConvergent | SingularMatrix | AliasingDetected => ErrorCategory::Numerical,
            ResourceExceeded(_) => ErrorCategory::Resource,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
