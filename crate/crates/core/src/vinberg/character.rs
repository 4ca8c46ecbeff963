//! Elliptic, parabolic and loxodromic mirror simplices, and the
//! perfect / quasi-perfect / 2-perfect hierarchy of vertex links.

use std::fmt;

use serde::Serialize;

use super::perron::{perron_of_block, PerronKind, PERRON_ZERO_TOL};
use super::simplex::{vertex_link, MirrorSimplex};
use crate::linalg::{numeric_rank, principal, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Character {
    Elliptic,
    Parabolic,
    Loxodromic,
    None,
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Character::Elliptic => "elliptic",
            Character::Parabolic => "parabolic",
            Character::Loxodromic => "loxodromic",
            Character::None => "none",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentType {
    pub nodes: Vec<String>,
    #[serde(rename = "type")]
    pub kind: PerronKind,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterTag {
    pub character: Character,
    pub components: Vec<ComponentType>,
    pub rank: usize,
    /// Dimension `d = #S - 1` of the simplex.
    pub dimension: usize,
}

impl CharacterTag {
    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }
}

pub fn polytope_character(s: &MirrorSimplex, tol: f64) -> CharacterTag {
    let a = s.cartan.entries();
    let n = s.rank();
    let components: Vec<ComponentType> = s
        .cartan
        .components()
        .into_iter()
        .map(|idx| {
            let report = perron_of_block(&principal(a, &idx), PERRON_ZERO_TOL)
                .expect("a support component is irreducible");
            ComponentType {
                nodes: idx.iter().map(|&i| s.cartan.nodes()[i].clone()).collect(),
                kind: report.kind,
                lambda: report.lambda,
            }
        })
        .collect();
    let rank = numeric_rank(a, tol);
    let d = n.saturating_sub(1);
    let all = |k: PerronKind| components.iter().all(|c| c.kind == k);
    let character = if all(PerronKind::Positive) && rank == d + 1 {
        Character::Elliptic
    } else if all(PerronKind::Zero) && rank == d {
        Character::Parabolic
    } else if all(PerronKind::Negative) && rank == d + 1 {
        Character::Loxodromic
    } else {
        Character::None
    };
    CharacterTag { character, components, rank, dimension: d }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PerfectionLevel {
    None,
    TwoPerfect,
    QuasiPerfect,
    Perfect,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Perfection {
    pub level: PerfectionLevel,
    pub character: Character,
    /// Character of the link at the vertex opposite each facet.
    pub links: Vec<Character>,
    pub conclusions: Vec<String>,
}

fn links_of(s: &MirrorSimplex) -> Vec<MirrorSimplex> {
    (0..s.rank()).map(|v| vertex_link(s, v).expect("vertex index in range")).collect()
}

fn is_perfect(s: &MirrorSimplex) -> bool {
    links_of(s)
        .iter()
        .all(|l| polytope_character(l, DEFAULT_TOL).character == Character::Elliptic)
}

pub fn perfection_status(s: &MirrorSimplex) -> Perfection {
    let own = polytope_character(s, DEFAULT_TOL);
    let links = links_of(s);
    let chars: Vec<Character> = links.iter().map(|l| polytope_character(l, DEFAULT_TOL).character).collect();
    let level = if chars.iter().all(|&c| c == Character::Elliptic) {
        PerfectionLevel::Perfect
    } else if chars.iter().all(|&c| matches!(c, Character::Elliptic | Character::Parabolic)) {
        PerfectionLevel::QuasiPerfect
    } else if links.iter().all(is_perfect) {
        PerfectionLevel::TwoPerfect
    } else {
        PerfectionLevel::None
    };
    let mut conclusions = Vec::new();
    if own.is_irreducible() && own.character == Character::Loxodromic {
        if level == PerfectionLevel::Perfect {
            conclusions.push("cocompact (divisible)".to_string());
        }
        if level >= PerfectionLevel::TwoPerfect {
            conclusions.push("geometrically finite".to_string());
            if level >= PerfectionLevel::QuasiPerfect {
                conclusions.push("finite covolume".to_string());
            }
            if chars.iter().all(|&c| matches!(c, Character::Elliptic | Character::Loxodromic)) {
                conclusions.push("convex cocompact in S(V)".to_string());
            }
        }
    }
    Perfection { level, character: own.character, links: chars, conclusions }
}
