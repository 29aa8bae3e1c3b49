use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar argument is outside the set the operation is defined on.
    Domain {
        what: &'static str,
        value: f64,
    },
    /// Probability masses do not sum to one (beyond round-off).
    NotNormalized(f64),
    NegativeMass(f64),
    InvalidAtom(f64),
    TooManyAtoms {
        len: usize,
        cap: usize,
    },
    DegreeCapExceeded {
        max_degree: usize,
        cap: usize,
    },
    EmptyDistribution,
    /// Size biasing needs a strictly positive mean.
    SizeBiasUndefined,
    /// The supplied function does not evaluate to one at `s = 1`.
    NotAPgf(f64),
    EmptySearch,
    ZeroVertices,
    TooManyVertices(usize),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value}"),
            Error::NotNormalized(sum) => {
                write!(f, "probability masses sum to {sum}, expected 1")
            }
            Error::NegativeMass(p) => write!(f, "negative probability mass {p}"),
            Error::InvalidAtom(x) => write!(f, "weight atom {x} is not a finite nonnegative real"),
            Error::TooManyAtoms { len, cap } => {
                write!(f, "{len} weight atoms exceed the cap of {cap}")
            }
            Error::DegreeCapExceeded { max_degree, cap } => {
                write!(f, "maximum degree {max_degree} exceeds the cap of {cap}")
            }
            Error::EmptyDistribution => f.write_str("distribution has no atoms"),
            Error::SizeBiasUndefined => f.write_str("size bias undefined for a zero-mean law"),
            Error::NotAPgf(v) => write!(f, "not a generating function: value {v} at s = 1"),
            Error::EmptySearch => f.write_str("empty search interval"),
            Error::ZeroVertices => f.write_str("graph needs at least one vertex"),
            Error::TooManyVertices(n) => write!(f, "{n} vertices exceed the u32 id space"),
        }
    }
}

impl core::error::Error for Error {}
