use thiserror::Error;

/// Failures of the geometric constructions and checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("all homogeneous coordinates are zero")]
    ZeroVector,
    #[error("points coincide")]
    CoincidentPoints,
    #[error("lines coincide")]
    CoincidentLines,
    #[error("planes coincide")]
    CoincidentPlanes,
    #[error("points are not collinear")]
    NotCollinear,
    #[error("points are collinear")]
    CollinearPoints,
    #[error("cross-ratio denominator vanishes")]
    DegenerateQuadruple,
    #[error("the pairs do not determine a unique involution")]
    DegeneratePairs,
    #[error("point is not on the involution's line")]
    NotOnLine,
    #[error("homography matrix is singular")]
    SingularHomography,
    #[error("line lies in the plane")]
    LineInPlane,
    #[error("lines in space are skew")]
    SkewLines,
    #[error("projection undefined for this point")]
    UndefinedProjection,
    #[error("invalid projection: {0}")]
    InvalidProjection(&'static str),
    #[error("invalid folded sheet: {0}")]
    InvalidSheet(&'static str),
    #[error("cutting plane contains fold {0}")]
    PlaneContainsFold(usize),
    #[error("point is not on the conic")]
    PointNotOnConic,
    #[error("point is singular for the conic")]
    SingularPoint,
    #[error("conic matrix is zero or not symmetric")]
    InvalidConic,
    #[error("five points do not determine a unique conic")]
    NoUniqueConic,
    #[error("incidence preconditions violated")]
    InvalidIncidence,
    #[error("radius must be positive")]
    NonPositiveRadius,
    #[error("circles are identical")]
    IdenticalCircles,
    #[error("one circle contains the other; no same-side common tangents")]
    NoSameSideTangents,
    #[error("point is at infinity")]
    PointAtInfinity,
    #[error("joining lines are not concurrent at the given center")]
    HypothesisFails,
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("projecting ray of point {0} does not meet its fold line")]
    RayMissesFold(usize),
    #[error("corresponding sides coincide")]
    CoincidentSides,
    #[error("three base points are collinear")]
    DegenerateBase,
    #[error("line passes through a base point")]
    LineThroughBasePoint,
    #[error("secant {0} does not meet both conics in two real points")]
    SecantMissesConic(usize),
    #[error("secant {0} does not pass through the apex")]
    SecantNotThroughApex(usize),
    #[error("the two meets defining the axis coincide")]
    DegenerateAxis,
    #[error("point {0} is not on its carrier line")]
    CarrierIncidenceViolated(usize),
    #[error("first quadruplet is not the projection of a plane section")]
    InadmissibleSection,
}
