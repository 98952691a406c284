use thiserror::Error;

/// Everything that can go wrong while building or solving a stratified problem.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TmmError {
    #[error("frequency must be positive and finite, got {0} Hz")]
    InvalidFrequency(f64),

    #[error("incidence angle must lie in [0, pi/2), got {0} rad")]
    InvalidAngle(f64),

    #[error("{0} must be nonzero (model near-zero media with small finite values)")]
    ZeroMaterialParameter(&'static str),

    #[error("material parameter {0} is not finite")]
    NonFiniteMaterial(&'static str),

    #[error("layer thickness must be positive and finite, got {0} m")]
    InvalidThickness(f64),

    #[error("periodic stack must have odd slab count, got {0}")]
    EvenSlabCount(usize),

    #[error("{0} eigenwave has zero wavenumber; its circular basis is degenerate")]
    DegenerateEigenwave(&'static str),

    #[error("singular interface field basis (condition number {cond:.3e})")]
    SingularInterface { cond: f64 },

    #[error("evanescent phase overflow: |Im(k_z d)| = {exponent:.3e} exceeds {limit}")]
    EvanescentOverflow { exponent: f64, limit: f64 },

    #[error("resonance singularity: transmission block condition number {cond:.3e}")]
    ResonanceSingularity { cond: f64 },

    #[error("incident amplitude is zero")]
    ZeroIncident,

    #[error("transmitted power {0:.3e} too small to define a rotation angle")]
    NegligibleTransmission(f64),

    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T, E = TmmError> = std::result::Result<T, E>;
