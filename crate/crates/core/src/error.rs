use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in the core library.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Residue characteristic 2 (or a non-prime) was requested.
    InvalidPrime(u32),
    /// The requested tower would need lookup tables beyond the supported size.
    TowerTooLarge { order: u64 },
    InversionOfZero,
    /// A result would carry no certified coefficient.
    InsufficientPrecision,
    /// Precision does not suffice to decide a valuation or membership query.
    IndeterminateMembership,
    /// `x x̄ + y + ȳ ≠ 0` for a unipotent constructor.
    RelationViolated,
    MembershipViolated(&'static str),
    /// The weight has invariants or coinvariants of dimension other than one.
    DegenerateWeight,
    NotApplicable(&'static str),
    InconclusiveLattice,
    PrecisionBudgetExceeded { n: i32, n_max: i32 },
    ClosureBudgetExceeded { cap: usize },
    InvarianceViolated(&'static str),
    CrossCheckFailed(String),
    /// A value read off an operator output is not a multiple of the basis value.
    NotInSpan(i32),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPrime(p) => write!(f, "residue characteristic {p} must be an odd prime"),
            Error::TowerTooLarge { order } => write!(f, "field of order {order} exceeds table limit"),
            Error::InversionOfZero => f.write_str("inversion of zero"),
            Error::InsufficientPrecision => f.write_str("result has no certified coefficients"),
            Error::IndeterminateMembership => {
                f.write_str("precision insufficient to certify membership")
            }
            Error::RelationViolated => f.write_str("x x̄ + y + ȳ ≠ 0"),
            Error::MembershipViolated(what) => write!(f, "element is not in {what}"),
            Error::DegenerateWeight => {
                f.write_str("invariants or coinvariants are not one-dimensional")
            }
            Error::NotApplicable(why) => write!(f, "not applicable: {why}"),
            Error::InconclusiveLattice => f.write_str("spun submodules do not form a chain"),
            Error::PrecisionBudgetExceeded { n, n_max } => {
                write!(f, "|n| = {} exceeds n_max = {n_max}", n.abs())
            }
            Error::ClosureBudgetExceeded { cap } => write!(f, "closure exceeded {cap} elements"),
            Error::InvarianceViolated(what) => write!(f, "input is not invariant under {what}"),
            Error::CrossCheckFailed(msg) => write!(f, "cross-check failed: {msg}"),
            Error::NotInSpan(m) => write!(f, "value at alpha^{m} is not a multiple of the basis value"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
