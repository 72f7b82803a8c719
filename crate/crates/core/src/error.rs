use crate::divisor::Point;
use thiserror::Error;

/// Every failure the library can report.
///
/// [`Error::name`] gives the bare variant name, which the command-line
/// front end prints on stderr.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{e} is not invertible modulo {d}")]
    NotCoprime { e: u64, d: u64 },
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("polynomial does not split into rational linear factors")]
    NonRationalRoots,
    #[error("gcd(k, multiplicity) = {gcd} > 1 for k = {k} at root {root}")]
    GcdViolation { k: u64, root: Point, gcd: u64 },
    #[error("polynomial is not unitary (leading coefficient {0})")]
    NotUnitary(String),
    #[error("polynomial must be non-constant")]
    ConstantPolynomial,
    #[error("divisor points must be rational, got {0:?}")]
    NonRationalPoint(String),
    #[error("d_plus + d_minus is positive at {0}")]
    PositiveSum(Point),
    #[error("a parabolic ring has no component of negative degree {0}")]
    NegativeDegreeParabolic(i64),
    #[error("a denominator vanishes at an irrational point")]
    IrrationalLocus,
    #[error("the fractional part of d_plus is supported at {} points", .0.len())]
    FractionalPlusSpread(Vec<Point>),
    #[error("degree {degree} is not admissible: {}", render_violations(.violations))]
    InadmissibleDegree {
        degree: i64,
        violations: Vec<Violation>,
    },
    #[error("no zero iterate within {0} applications")]
    CapExceeded(u64),
    #[error("the pair admits no locally nilpotent derivation of positive degree")]
    NoPositiveLnd,
    #[error("(d, e') = ({d}, {e_prime}) does not describe a small cyclic group")]
    NotSmallGroup { d: u64, e_prime: u64 },
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error at byte {pos}: {msg}")]
    ParseError { pos: usize, msg: String },
    #[error("element is not in the ring")]
    NotInRing,
    #[error("operation not available for this surface: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotCoprime { .. } => "NotCoprime",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NonRationalRoots => "NonRationalRoots",
            Error::GcdViolation { .. } => "GcdViolation",
            Error::NotUnitary(_) => "NotUnitary",
            Error::ConstantPolynomial => "ConstantPolynomial",
            Error::NonRationalPoint(_) => "NonRationalPoint",
            Error::PositiveSum(_) => "PositiveSum",
            Error::NegativeDegreeParabolic(_) => "NegativeDegreeParabolic",
            Error::IrrationalLocus => "IrrationalLocus",
            Error::FractionalPlusSpread(_) => "FractionalPlusSpread",
            Error::InadmissibleDegree { .. } => "InadmissibleDegree",
            Error::CapExceeded(_) => "CapExceeded",
            Error::NoPositiveLnd => "NoPositiveLnd",
            Error::NotSmallGroup { .. } => "NotSmallGroup",
            Error::UnknownName(_) => "UnknownName",
            Error::BadParams(_) => "BadParams",
            Error::ParseError { .. } => "ParseError",
            Error::NotInRing => "NotInRing",
            Error::Unsupported(_) => "Unsupported",
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::ParseError {
            pos,
            msg: msg.into(),
        }
    }
}

/// Why a degree fails to carry a homogeneous LND.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Condition (i): `e·e'` is not `1` modulo `d`.
    Congruence { e: u64, e_prime: u64, d: u64 },
    /// Condition (ii): the degree is below the bound forced at `point`.
    Bound { point: Point, min: u64 },
    /// Degree zero needs `d = 1` and `d_plus + d_minus = 0`.
    ZeroDegree,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Congruence { e, e_prime, d } => {
                write!(f, "condition (i): {e}*{e_prime} is not 1 mod {d}")
            }
            Violation::Bound { point, min } => {
                write!(f, "condition (ii) at point {point}: need e >= {min}")
            }
            Violation::ZeroDegree => write!(f, "degree 0 needs d = 1 and d_plus + d_minus = 0"),
        }
    }
}

fn render_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
