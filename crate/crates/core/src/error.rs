use thiserror::Error;

/// Errors surfaced by model construction, relation verification and spectra.
#[derive(Debug, Error)]
pub enum Error {
    #[error("spatial dimension must be 1, 2 or 3 (got {0})")]
    InvalidDimension(usize),

    #[error("minimal Clifford representation is only available for spatial dimension <= 2 (got {0})")]
    NoMinimalRep(usize),

    #[error("spin matrices are not defined for spatial dimension 1")]
    NoSpinMatrices,

    #[error("Fock cutoff n_max must be >= 1")]
    CutoffTooSmall,

    #[error("mode index {mode} out of range 1..={modes}")]
    ModeOutOfRange { mode: usize, modes: usize },

    #[error("interior depth {depth} exceeds cutoff n_max = {n_max}")]
    DepthTooLarge { depth: usize, n_max: usize },

    #[error("operator `{0}` not found in registry")]
    MissingLabel(String),

    #[error("degree length mismatch: {0} vs {1}")]
    GradingMismatch(usize, usize),

    #[error("colour bracket needs homogeneous operands; `{0}` has no homogeneous degree here")]
    Inhomogeneous(String),

    #[error("bracket type mismatch in `{id}`: table says {written}, commutation factor says {inferred}")]
    BracketTypeMismatch {
        id: String,
        written: &'static str,
        inferred: &'static str,
    },

    #[error("matrix is not Hermitian (residual {0:.3e})")]
    NotHermitian(f64),

    #[error("LAPACK {routine} failed with info = {info}")]
    Lapack { routine: &'static str, info: i32 },

    #[error("invalid Fock label {0}")]
    InvalidLabel(String),

    #[error("missing l-branch for label {0}")]
    MissingBranch(String),

    #[error("state is supported on the truncation edge (weight {0:.3e})")]
    EdgeSupported(f64),

    #[error("not an eigenstate: residual {0:.3e}")]
    NotAnEigenstate(f64),

    #[error("algebra `{0}` is not defined for spatial dimension {1}")]
    AlgebraDimMismatch(String, usize),

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("unknown operator family `{0}`")]
    UnknownFamily(String),

    #[error("vacuum search failed: joint kernel has dimension {0}")]
    VacuumKernel(usize),

    #[error("basis is rank deficient: rank {rank} < {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("cutoff n_max = {n_max} too small: {what} needs interior depth {needed}")]
    CutoffTooSmallFor {
        n_max: usize,
        needed: usize,
        what: String,
    },

    #[error("failed to parse expression `{0}`: {1}")]
    Parse(String, String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
