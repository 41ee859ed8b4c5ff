use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("root of unity of order {order} is not available in Q(zeta_{conductor})")]
    ConductorMismatch { order: u32, conductor: u32 },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("level mismatch: {0}")]
    LevelMismatch(String),

    #[error("CS4 inconsistency on pair ({a}, {b}) at n = {n}")]
    Cs4Inconsistent { a: String, b: String, n: u32 },

    #[error("parity mismatch: {0}")]
    ParityMismatch(String),

    #[error("super-Jacobi identity fails for structure constants: {0}")]
    JacobiFailure(String),

    #[error("{0} is not a unit")]
    NonUnit(String),

    #[error("determinant is {0}, expected 1")]
    Determinant(String),

    #[error("morphism is not invertible: {0}")]
    NotInvertible(String),

    #[error("order mismatch: {0}")]
    OrderMismatch(String),

    #[error("automorphism is not semisimple with m-th root eigenvalues")]
    NotSemisimple,

    #[error("mode {mode} is outside the coset of {element}")]
    CosetViolation { element: String, mode: String },

    #[error("the automorphism does not fix L")]
    LNotFixed,

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("matrix is not of finite order within the conductor bound")]
    NotFiniteOrder,

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}
