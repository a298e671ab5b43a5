use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(&'static str),

    /// Adaptive quadrature did not reach its tolerance within the evaluation budget.
    #[error("quadrature did not converge: error estimate {estimate:e} after {evals} evaluations")]
    NonConvergence { estimate: f64, evals: usize },

    /// A series could not be certified within `max_terms`.
    #[error("series truncation budget of {budget} terms exhausted")]
    TruncationBudget { budget: usize },

    /// The Bromwich tail estimate stayed above tolerance.
    #[error("contour tail estimate {tail:e} exceeds tolerance {tol:e} (partial value {value})")]
    TailNotCertified { value: f64, tail: f64, tol: f64 },

    /// The inverted function came out with a non-negligible imaginary part.
    #[error("imaginary residue {residue:e} exceeds {limit:e}")]
    ImaginaryResidue { residue: f64, limit: f64 },

    /// The caller-supplied growth exponent does not sit below Re(z).
    #[error("growth bound c = {c} must be below Re(z) = {re}")]
    GrowthBound { c: f64, re: f64 },

    /// A least-squares fit had no spread in its design variable.
    #[error("degenerate regression design: {0}")]
    DegenerateDesign(&'static str),

    /// An input is valid mathematically but outside what the routine supports.
    #[error("guard violated: {0}")]
    Guard(&'static str),
}

impl Error {
    /// True for failures of the numerics themselves, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::TruncationBudget { .. }
                | Error::TailNotCertified { .. }
                | Error::ImaginaryResidue { .. }
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
