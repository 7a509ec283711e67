use thiserror::Error;

/// Errors surfaced by model construction, window building, the piecewise
/// algebra and the constructors. Verifier verdicts are not errors: a
/// refutation is a successful check with a negative outcome.
#[derive(Debug, Clone, Error)]
pub enum TlaError {
    #[error("elements belong to different marked groups")]
    MixedGroups,

    #[error("word length exceeds search radius {radius}")]
    DepthExceeded { radius: u32 },

    #[error("window would exceed the vertex cap ({cap} vertices)")]
    WindowTooLarge { cap: usize },

    #[error("coset window is disconnected from the rest of the group: T and K do not generate")]
    NotGenerating,

    #[error("element list is not a subgroup: {reason}")]
    KNotSubgroup { reason: String },

    #[error("point lies outside the declared domain of the piecewise translation")]
    OutsideDomain,

    #[error("pieces overlap at {witness}: piece data is inconsistent")]
    AmbiguousPieces { witness: String },

    #[error("domains are incompatible for composition")]
    DomainMismatch,

    #[error("coset index mismatch in refinement: [K:H1]={left} but [K:H2]={right}")]
    IndexMismatch { left: usize, right: usize },

    #[error("no witness word maps coset {coset} to its image")]
    NoWitness { coset: String },

    #[error("graph self-map is not injective on the window core (collision at {witness})")]
    NotBijection { witness: String },

    #[error("section is inconsistent: r(gH)^-1 g lies outside H for g = {witness}")]
    SectionInconsistent { witness: String },

    #[error("window graph is disconnected")]
    Disconnected,

    #[error("expansion gate failed: sphere/ball ratio {ratio} is below threshold {threshold}")]
    AmenableWindow { ratio: String, threshold: String },

    #[error("no 2-to-1 matching at displacement budget {budget}: {witness_size} vertices violate the Hall condition")]
    NoMatching {
        budget: u32,
        /// Window vertex indices of a set A with 2|N(A)| < |A|.
        witness: Vec<usize>,
        witness_size: usize,
    },

    #[error("element has finite order {order}")]
    TorsionElement { order: u64 },

    #[error("free rank {rank} is only supported on windows that are already 2d-regular trees")]
    UnsupportedRank { rank: usize },

    #[error("invalid multiplication table: {reason}")]
    InvalidTable { reason: String },

    #[error("invalid group descriptor: {reason}")]
    InvalidDescriptor { reason: String },

    #[error("cannot parse element {input:?}: {reason}")]
    BadElement { input: String, reason: String },

    #[error("invalid action data: {reason}")]
    BadAction { reason: String },
}

pub type Result<T> = std::result::Result<T, TlaError>;
