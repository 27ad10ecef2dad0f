//! Versioned JSON documents. Every document carries
//! `"schema": "alcove-shi/1"`; Shi vectors list their root order explicitly
//! and are re-validated on import.

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::cohomology::{h1_group, minimal_inverted_primes, CohomologyClass};
use crate::error::{AlcoveError, Result};
use crate::linalg::IntMatrix;
use crate::orientation::{BallReport, Discrepancy};
use crate::rootsys::RootSystem;
use crate::shi::{AdmittedVector, ShiVector};
use crate::weyl::{AffineElement, FiniteElement};

pub const SCHEMA_VERSION: &str = "alcove-shi/1";

/// Serializes as [`SCHEMA_VERSION`] and refuses any other value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SchemaTag;

impl Serialize for SchemaTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(SCHEMA_VERSION)
    }
}

impl<'de> Deserialize<'de> for SchemaTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == SCHEMA_VERSION {
            Ok(SchemaTag)
        } else {
            Err(de::Error::custom(format!("unsupported schema `{s}`, expected `{SCHEMA_VERSION}`")))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDoc {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
    pub height: i64,
    pub coroot_height: i64,
    pub sq_norm: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemDoc {
    pub schema: SchemaTag,
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    pub cartan: IntMatrix,
    pub roots: Vec<RootDoc>,
    pub f: i64,
}

impl RootSystemDoc {
    pub fn of(rs: &RootSystem) -> Self {
        RootSystemDoc {
            schema: SchemaTag,
            kind: rs.kind().to_string(),
            rank: rs.rank(),
            cartan: rs.cartan().clone(),
            roots: rs
                .positive_roots()
                .iter()
                .map(|r| RootDoc {
                    root: r.root_coords.clone(),
                    coroot: r.coroot_coords.clone(),
                    height: r.height(),
                    coroot_height: r.coroot_height,
                    sq_norm: r.sq_norm,
                })
                .collect(),
            f: rs.index_of_connection(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDoc {
    pub schema: SchemaTag,
    pub translation: Vec<i64>,
    pub matrix: IntMatrix,
}

impl ElementDoc {
    pub fn of(w: &AffineElement) -> Self {
        ElementDoc {
            schema: SchemaTag,
            translation: w.translation().to_vec(),
            matrix: w.finite().matrix().clone(),
        }
    }

    pub fn to_element(&self, rs: &RootSystem) -> Result<AffineElement> {
        let finite = FiniteElement::from_matrix(rs, self.matrix.clone())?;
        AffineElement::new(self.translation.clone(), finite)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiVectorDoc {
    pub schema: SchemaTag,
    pub order: Vec<Vec<i64>>,
    pub k: Vec<i64>,
}

impl ShiVectorDoc {
    pub fn of(rs: &RootSystem, v: &ShiVector) -> Self {
        ShiVectorDoc {
            schema: SchemaTag,
            order: rs.positive_roots().iter().map(|r| r.root_coords.clone()).collect(),
            k: v.entries().to_vec(),
        }
    }

    /// Reorders entries into the canonical order and checks alcove-hood.
    pub fn to_vector(&self, rs: &RootSystem) -> Result<ShiVector> {
        let m = rs.num_positive_roots();
        if self.order.len() != m || self.k.len() != m {
            return Err(AlcoveError::DimensionMismatch {
                expected: m,
                actual: self.k.len().min(self.order.len()),
            });
        }
        let mut entries = vec![None; m];
        for (coords, &k) in self.order.iter().zip(&self.k) {
            let idx = rs
                .root_index(coords)
                .ok_or_else(|| AlcoveError::Parse(format!("{coords:?} is not a positive root")))?;
            if entries[idx].replace(k).is_some() {
                return Err(AlcoveError::Parse(format!("root {coords:?} listed twice")));
            }
        }
        ShiVector::new(rs, entries.into_iter().map(|e| e.expect("all roots listed")).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlcoveCheckDoc {
    pub schema: SchemaTag,
    pub alcove: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentsDoc {
    pub schema: SchemaTag,
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    pub order: Vec<Vec<i64>>,
    pub count: usize,
    pub admitted: Vec<Vec<i64>>,
}

impl ComponentsDoc {
    pub fn of(rs: &RootSystem, admitted: &[AdmittedVector]) -> Self {
        ComponentsDoc {
            schema: SchemaTag,
            kind: rs.kind().to_string(),
            rank: rs.rank(),
            order: rs.positive_roots().iter().map(|r| r.root_coords.clone()).collect(),
            count: admitted.len(),
            admitted: admitted.iter().map(|a| a.entries().to_vec()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Doc {
    pub schema: SchemaTag,
    pub factors: Vec<i64>,
    pub f: i64,
    pub minimal_inverted_primes: Vec<u64>,
}

impl H1Doc {
    pub fn of(rs: &RootSystem) -> Self {
        H1Doc {
            schema: SchemaTag,
            factors: h1_group(rs).invariant_factors.clone(),
            f: rs.index_of_connection(),
            minimal_inverted_primes: minimal_inverted_primes(rs),
        }
    }
}

/// Classification data for one input alcove.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    pub k: Vec<i64>,
    pub lambda: Vec<i64>,
    pub section: Vec<i64>,
    pub h1: CohomologyClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientDoc {
    pub schema: SchemaTag,
    pub oracle: bool,
    pub theorem: bool,
    /// `None` when the closed form does not apply.
    pub modular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modular_note: Option<String>,
    pub component_equal: bool,
    pub classes: Vec<ClassDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub schema: SchemaTag,
    pub root_system: String,
    pub radius: usize,
    pub elements: usize,
    pub orientation_classes: usize,
    pub components: usize,
    pub h1_classes: usize,
    pub pairs_checked: u64,
    pub same_component_pairs: u64,
    pub injective: bool,
    pub discrepancies: Vec<Discrepancy>,
}

impl From<BallReport> for VerifyDoc {
    fn from(r: BallReport) -> Self {
        VerifyDoc {
            schema: SchemaTag,
            root_system: r.root_system,
            radius: r.radius,
            elements: r.elements,
            orientation_classes: r.orientation_classes,
            components: r.components,
            h1_classes: r.h1_classes,
            pairs_checked: r.pairs_checked,
            same_component_pairs: r.same_component_pairs,
            injective: r.injective,
            discrepancies: r.discrepancies,
        }
    }
}
