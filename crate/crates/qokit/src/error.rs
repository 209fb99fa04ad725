use std::fmt;

/// Error taxonomy shared by the whole crate. Variants are coarse enough to map
/// onto the CLI's exit statuses (schema violation, cap exceeded, degenerate
/// weighting) while keeping enough payload to debug a failing input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Input violates a structural precondition (malformed partition, level
    /// mismatch, wrong row count, entry out of range, ...).
    Schema(String),
    /// An enumeration exceeded its configured cap; the count reached is
    /// reported instead of silently truncating.
    CapExceeded { cap: usize, reached: usize },
    /// A weighting lies on a wall, or is otherwise non-generic where a
    /// generic one is required.
    OnWall(String),
    /// `kappa = 0` routes to the tensor-action regime, which a cyclic-action
    /// operation does not accept (and vice versa).
    KappaRegime(String),
    /// Two eigenvalues of a lift collide, so no loading can be read off.
    EigenvalueCollision(String),
    /// A requested operation on a weight needs dominance (or comparability)
    /// that the input does not have.
    NotDominant(String),
    /// A bead move is impossible: source empty or target occupied.
    BeadMove { from: i64, to: i64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Schema(msg) => write!(f, "schema violation: {msg}"),
            Error::CapExceeded { cap, reached } => {
                write!(f, "enumeration cap exceeded: cap {cap}, reached {reached}")
            }
            Error::OnWall(msg) => write!(f, "weighting on a wall: {msg}"),
            Error::KappaRegime(msg) => write!(f, "kappa regime mismatch: {msg}"),
            Error::EigenvalueCollision(msg) => write!(f, "eigenvalue collision: {msg}"),
            Error::NotDominant(msg) => write!(f, "dominance violation: {msg}"),
            Error::BeadMove { from, to } => {
                write!(f, "illegal bead move from {from} to {to}")
            }
        }
    }
}

impl std::error::Error for Error {}
