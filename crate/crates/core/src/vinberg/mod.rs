//! Linear reflection groups from Cartan matrices: Perron type, the Tits
//! simplex and its reflections, group enumeration, Anosov and convex
//! cocompactness criteria, polytope character and Kac–Vinberg examples.

pub mod cartan;
pub mod character;
pub mod criteria;
pub mod exact;
pub mod group;
pub mod kac;
pub mod perron;
pub mod simplex;

use thiserror::Error;

pub use cartan::{
    cartan_analyze, cartan_from_coxeter, compatible_coxeter, label_for_product, CartanMatrix, CartanReport,
    CartanSpec,
};
pub use character::{perfection_status, polytope_character, Character, CharacterTag, Perfection, PerfectionLevel};
pub use criteria::{convex_cocompact_status, is_anosov, AnosovReport, CcVerdict};
pub use exact::RatMatrix;
pub use group::{enumerate_group, enumerate_group_with, EnumerationOptions, GroupElement, GroupEnumeration};
pub use kac::{kac_vinberg_check, KacVinbergReport};
pub use perron::{perron_type, PerronKind, PerronReport};
pub use simplex::{tits_simplex, vertex_link, MirrorSimplex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VinbergError {
    #[error("matrix is not square ({rows} rows, a row of length {cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("{nodes} node names for a {size}x{size} matrix")]
    NodeCount { nodes: usize, size: usize },
    #[error("entry ({s},{t}) is not finite")]
    NotFinite { s: usize, t: usize },
    #[error("diagonal entry {s} is {value}, expected 2")]
    Diagonal { s: usize, value: f64 },
    #[error("off-diagonal entry ({s},{t}) is positive ({value})")]
    PositiveOffDiagonal { s: usize, t: usize, value: f64 },
    #[error("entry ({s},{t}) vanishes but ({t},{s}) does not, or conversely")]
    ZeroPattern { s: usize, t: usize },
    #[error("not of Coxeter type: pair ({s},{t}) has product {product}")]
    NotCoxeterType { s: usize, t: usize, product: f64 },
    #[error("pair ({s},{t}) is labeled inf but the requested product {product} is below 4")]
    InfiniteProductTooSmall { s: usize, t: usize, product: f64 },
    #[error("pair ({s},{t}) has invalid asymmetry ratio {ratio}")]
    InvalidAsymmetry { s: usize, t: usize, ratio: f64 },
    #[error("Cartan matrix is reducible")]
    Reducible,
    #[error("Perron root {eigen} outside the Collatz-Wielandt bounds [{lower}, {upper}]")]
    PerronMismatch { eigen: f64, lower: f64, upper: f64 },
    #[error("no vertex opposite facet {0}")]
    InvalidVertex(usize),
    #[error("group enumeration exceeded {0} elements")]
    CapExceeded(usize),
    #[error("the Coxeter group is finite")]
    FiniteGroup,
    #[error("the Coxeter group is reducible")]
    ReducibleGroup,
    #[error("zero-type and determinant criteria disagree: {0}")]
    CriteriaDisagree(String),
    #[error("expected a {expected}x{expected} matrix, got {found}x{found}")]
    WrongSize { expected: usize, found: usize },
}
