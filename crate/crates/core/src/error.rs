use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weights live in Z^n minus 0: got the zero vector")]
    ZeroVector,
    #[error("ambient dimension must be at least 2, got {0}")]
    BadDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("region is not contained in the ambient region")]
    RegionNotContained,
    #[error("edge e{0} is not parallel to its weight")]
    NotParallel(usize),
    #[error("edge e{0} has degenerate (single point or empty) extent")]
    DegenerateEdge(usize),
    #[error("edge e{0} has unbounded extent in the region")]
    UnboundedExtent(usize),
    #[error("unknown vertex v{0}")]
    UnknownVertex(usize),
    #[error("unknown edge e{0}")]
    UnknownEdge(usize),
    #[error("duplicate edge id e{0}")]
    DuplicateEdgeId(usize),
    #[error("vertex v{0} lies on the region boundary")]
    VertexOnBoundary(usize),
    #[error("edge e{0} meets the region boundary non-transversally")]
    NonTransversal(usize),
    #[error("curve is not saturated")]
    NotSaturated,
    #[error("slice at {0} hits a vertex or crossing coordinate")]
    DegenerateSlice(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("path extraction stuck at {0}: no onward edge with positive capacity")]
    StuckVertex(String),
    #[error("could not find an admissible collar after {0} halvings")]
    CollarFailure(u32),
    #[error("an added ray meets the (n-2)-skeleton of the simplex after {0} retries")]
    SkeletonRay(u32),
    #[error("edge e{0} lies inside a facet hyperplane of the simplex")]
    DegenerateCurve(usize),
    #[error("apex {0} is not strictly inside the standard simplex")]
    ApexOutside(String),
    #[error("generator failed: {0}")]
    Generator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
