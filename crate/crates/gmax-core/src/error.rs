use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("homothety ratio must be positive, got {0}")]
    NonPositiveRatio(String),
    #[error("element has zero area")]
    ZeroAreaElement,
}

#[derive(Debug, Error)]
pub enum SequenceError {
    #[error("snapped sequence is not strictly decreasing at index {index}; raise the snap denominator bound (currently {bound})")]
    NotDecreasing { index: usize, bound: u128 },
    #[error("sequence value at index {index} is not positive")]
    NotPositive { index: usize },
    #[error("need at least {needed} terms for this operation, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("no admissible (k, l) pair: truncation K = {k} is below 3")]
    NoAdmissiblePair { k: usize },
    #[error("invalid sequence spec: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Error)]
pub enum BasisError {
    #[error("hypothesis t_k <= C e_k fails at k = {k}: t = {t}, C e = {ce}")]
    DominationViolated { k: usize, t: String, ce: String },
    #[error("hypothesis e_k < mu0 (t_k - t_(k+1)) fails at k = {k}")]
    GapHypothesisViolated { k: usize },
    #[error("axis-parallel cover bound |P| <= 8(1+C)|R| fails: ratio {ratio} vs bound {bound}")]
    CoverBoundExceeded { ratio: String, bound: String },
    #[error("sandwich containment failed: {0}")]
    ContainmentFailed(&'static str),
    #[error("exponent must be positive, got {0}")]
    NonPositiveExponent(String),
    #[error("subsequence factor must be a positive integer")]
    ZeroSubsequenceFactor,
    #[error("orientation out of range: generator parameters must give t in (0, 1] and e in (0, 1]")]
    ParameterOutOfRange,
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

#[derive(Debug, Error)]
pub enum PerronError {
    #[error("family slice {start}..{end} out of range (family holds {len} triangles)")]
    SliceOutOfRange { start: usize, end: usize, len: usize },
    #[error("alpha must lie in (0, 1), got {0}")]
    AlphaOutOfRange(String),
    #[error("area bound violated at (alpha = {alpha}, n = {n}, N = {start}): |X|/sum = {ratio} exceeds {bound}; try a larger N or a different alpha")]
    BoundViolated {
        alpha: String,
        n: u32,
        start: usize,
        ratio: String,
        bound: String,
    },
    #[error("half-triangle disjointness (base-bottom anchor) violated for pair ({k}, {l})")]
    DisjointnessViolated { k: usize, l: usize },
    #[error("no interior minimum: 2n = {two_n} <= tau = {tau}; increase n")]
    NoInteriorMinimum { two_n: u32, tau: String },
    #[error("all {tried} candidate N values failed; last failure: {last}")]
    AllCandidatesFailed { tried: usize, last: String },
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

#[derive(Debug, Error)]
pub enum MaximalError {
    #[error("sample point lies outside Delta_2")]
    SampleOutsideDelta2,
    #[error("witness element does not contain its sample point")]
    ElementMissesPoint,
    #[error("element has zero area")]
    ZeroAreaElement,
    #[error("witness value below threshold at sample {index}: value {value} < {threshold}")]
    WitnessBelowThreshold {
        index: usize,
        value: String,
        threshold: String,
    },
    #[error("certificate part {k} area is not a quarter of its parent triangle")]
    PartAreaMismatch { k: usize },
    #[error("certificate parts {k} and {l} overlap in positive measure")]
    PartsOverlap { k: usize, l: usize },
    #[error("certified measure is zero")]
    EmptyCertificate,
    #[error("enumeration config produced no elements")]
    EmptyEnumeration,
    #[error("hypothesis e_k < mu0 (t_k - t_(k+1)) fails at slice position {k}")]
    GapHypothesisViolated { k: usize },
    #[error("degenerate triangle")]
    DegenerateTriangle,
}
