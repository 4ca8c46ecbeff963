//! JSON reports for diagrams: nodes, edges, components and summary flags.

use serde::Serialize;

use crate::classify::{classify, Classification, Component};
use crate::diagram::{CoxeterDiagram, CoxeterMatrix, Edge};
use crate::lanner::{lanner_status, LannerError, LannerStatus, DET_ZERO_BAND};
use crate::moussong::{moussong_hyperbolic, MoussongWitness};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flags {
    pub spherical: bool,
    pub affine: bool,
    pub lanner: bool,
    pub quasi_lanner: bool,
    pub moussong_hyperbolic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagramReport {
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
    pub components: Vec<Component>,
    pub flags: Flags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moussong_witness: Option<MoussongWitness>,
}

impl DiagramReport {
    pub fn new(m: &CoxeterMatrix) -> Result<Self, LannerError> {
        Self::with_tol(m, DET_ZERO_BAND)
    }

    pub fn with_tol(m: &CoxeterMatrix, tol: f64) -> Result<Self, LannerError> {
        let Classification { components, is_spherical, is_affine, .. } = classify(m);
        let status = lanner_status(m, tol)?;
        let moussong = moussong_hyperbolic(m);
        let CoxeterDiagram { nodes, edges } = CoxeterDiagram::from(m);
        Ok(DiagramReport {
            nodes,
            edges,
            components,
            flags: Flags {
                spherical: is_spherical,
                affine: is_affine,
                lanner: status == LannerStatus::Lanner,
                quasi_lanner: status.is_quasi_lanner(),
                moussong_hyperbolic: moussong.hyperbolic,
            },
            moussong_witness: moussong.witness,
        })
    }
}
