use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the engine can report. Products that are zero by
/// definition (side or shading mismatch) are not errors.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    DivisionByZero,
    /// The denominator vanishes at the requested numeric point.
    Pole { at: String },
    /// A box whose total number of boundary points is odd.
    OddBoundary { points: usize },
    /// A matching that is not a fixed-point-free involution or crosses.
    InvalidMatching(String),
    /// Classification needs a rectangle without side points.
    SidePointsPresent,
    /// Boundaries being glued do not have equal point counts.
    GlueMismatch { expected: usize, found: usize },
    /// Inputs to an operation live in incompatible spaces.
    ShapeMismatch(String),
    IndexOutOfRange { index: usize, max: usize },
    /// A Gram system became singular at a numeric value of the modulus.
    DegenerateModulus,
    Parse(String),
    /// Principal graph is disconnected, empty or otherwise unusable.
    Graph(String),
    DeltaMismatch { given: f64, derived: f64 },
    /// Parameter outside the range where a formula is defined.
    InvalidParameter(String),
    /// Derivation-kernel precondition failed at the given degree.
    KernelPrecondition { degree: usize },
    /// The reconstructed element does not map back to the input.
    ReconstructionMismatch,
    /// Resource bound of a desk-scale enumeration exceeded.
    TooLarge { requested: usize, bound: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Pole { at } => write!(f, "denominator vanishes at delta = {at}"),
            Error::OddBoundary { points } => {
                write!(f, "box has an odd number of boundary points ({points})")
            }
            Error::InvalidMatching(msg) => write!(f, "invalid matching: {msg}"),
            Error::SidePointsPresent => {
                write!(f, "classification requires a diagram without side points")
            }
            Error::GlueMismatch { expected, found } => {
                write!(f, "cannot glue boundaries of {expected} and {found} points")
            }
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            Error::IndexOutOfRange { index, max } => {
                write!(f, "index {index} out of range (max {max})")
            }
            Error::DegenerateModulus => write!(f, "Gram matrix is singular at this modulus"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Graph(msg) => write!(f, "principal graph: {msg}"),
            Error::DeltaMismatch { given, derived } => {
                write!(f, "supplied delta {given} disagrees with graph delta {derived}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::KernelPrecondition { degree } => {
                write!(f, "delta_Q does not vanish on a basis element of degree {degree}")
            }
            Error::ReconstructionMismatch => {
                write!(f, "reconstructed kernel element does not reproduce Q")
            }
            Error::TooLarge { requested, bound } => {
                write!(f, "requested size {requested} exceeds bound {bound}")
            }
        }
    }
}

impl core::error::Error for Error {}
