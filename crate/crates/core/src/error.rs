use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid hypersimplex parameters n={n}, k={k}: need 1 <= k <= n")]
    InvalidSpec { n: u32, k: u32 },

    #[error("face dimension j={j} out of range for n={n}")]
    DimensionOutOfRange { n: u32, j: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("multinomial parts sum to {sum}, expected {total}")]
    PartsMismatch { total: u64, sum: u64 },

    #[error("affine dimension of an empty point set")]
    EmptyPointSet,

    #[error("points have mismatched lengths ({expected} vs {found})")]
    RaggedPoints { expected: usize, found: usize },

    #[error("series constant coefficient must be 1 to invert, found {0}")]
    NonUnitConstant(String),

    #[error("exponent ({a}, {b}, {c}) exceeds series caps (a+b <= {cap_n}, c <= {cap_t})")]
    AboveCap {
        a: u32,
        b: u32,
        c: u32,
        cap_n: u32,
        cap_t: u32,
    },

    #[error("{what} {requested} exceeds the size guard {guard} ({hint})")]
    SizeGuard {
        what: &'static str,
        requested: u32,
        guard: u32,
        hint: &'static str,
    },
}
