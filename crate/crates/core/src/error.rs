use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("angle {num}/{den}·π is outside [0, π): need 0 <= p < q and q > 0")]
    AngleOutOfRange { num: i64, den: i64 },

    #[error("angle must lie strictly inside (0, π), got 0")]
    ZeroAngle,

    #[error("polygon order n = {0} must be odd")]
    EvenOrder(u64),

    #[error("polygon order n = {0} must be at least {1}")]
    OrderTooSmall(u64, u64),

    #[error("(alpha, beta) = ({alpha}, {beta}) is not in Γ_{n}: need alpha odd, beta even, beta < alpha <= n")]
    NotInGamma { n: u64, alpha: u64, beta: u64 },

    #[error("{what} index {index} outside the valid range {lo}..={hi}")]
    IndexOutOfRange {
        what: &'static str,
        index: i64,
        lo: i64,
        hi: i64,
    },

    #[error("closed form {0} produced a non-integral value")]
    NonIntegral(&'static str),

    #[error("independent computations of {what} disagree: {detail}")]
    Disagreement { what: &'static str, detail: String },

    #[error("brute-force enumeration supports 3 <= n <= {max}, got n = {n}")]
    OracleBudget { n: u64, max: u64 },

    #[error("invalid track word: {0}")]
    InvalidWord(String),

    #[error("invalid degenerate configuration: {0}")]
    InvalidConfig(String),
}
