use thiserror::Error;

use crate::geometry::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("instance has {n} points, limit is {limit}")]
    InstanceTooLarge { n: usize, limit: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("invalid move: {0}")]
    InvalidMove(String),

    #[error("polygon is not simple")]
    NonSimplePolygon,

    #[error("crossing point {0} coincides with an instance vertex")]
    CoincidentPoint(Box<Point>),

    #[error("vertex {vertex} lies in the interior of edge ({a}, {b})")]
    VertexOnEdge { vertex: usize, a: usize, b: usize },

    #[error("edge ({0}, {1}) touches the polygon without being part of it")]
    MixedEdge(usize, usize),

    #[error("no edge qualifies as anchor")]
    NoAnchor,

    #[error("edge ({0}, {1}) is not a valid anchor for this edge set")]
    InvalidAnchor(usize, usize),

    #[error("chords ({}, {}) and ({}, {}) cross", .0.0, .0.1, .1.0, .1.1)]
    CrossingChords((usize, usize), (usize, usize)),

    #[error("invalid arborescence: {0}")]
    InvalidArborescence(String),

    #[error("certificate hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("edge {0} is covered by none of the certificate sets")]
    CoverGap(usize),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn at(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |source| Error::Stage {
            stage,
            source: Box::new(source),
        }
    }
}
