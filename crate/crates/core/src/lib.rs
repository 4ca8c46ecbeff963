//! Coxeter diagrams and Cartan matrices: classification, Lannér enumeration,
//! Vinberg's theory of linear reflection groups, Lorentzian realizations,
//! Andreev's theorem and tiling rendering.

pub mod andreev;
pub mod canon;
pub mod classify;
pub mod diagram;
pub mod dsl;
pub mod fixtures;
pub mod hitchin;
pub mod lanner;
pub mod linalg;
pub mod lorentz;
pub mod moussong;
pub mod render;
pub mod report;
pub mod vinberg;

pub use classify::{classify, Classification, TypeTag};
pub use diagram::{CoxeterDiagram, CoxeterMatrix, Edge, Label};
