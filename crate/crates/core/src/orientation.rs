//! Whether two alcoves have the same orientation, decided three ways:
//! directly from finite parts, from components plus `H^1` classes, and
//! from the closed-form congruences on simple Shi coefficients.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::{conjugate, fast_class, h1_class, section_of, solve_cartan};
use crate::error::{AlcoveError, Result};
use crate::rootsys::{CartanType, RootSystem};
use crate::shi::{lambda_of, same_component, shi_vector, AdmittedVector, ShiVector};
use crate::weyl::{enumerate_ball, AffineElement, FiniteElement};

/// The `Z\Phi`-orbit of an element, represented by its finite part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientationClass {
    pub finite_part: FiniteElement,
}

impl OrientationClass {
    pub fn of(w: &AffineElement) -> Self {
        OrientationClass {
            finite_part: w.finite().clone(),
        }
    }
}

/// `w2 = tau_x w1` for some `x` in the root lattice.
pub fn same_orientation_oracle(w1: &AffineElement, w2: &AffineElement) -> bool {
    w1.finite() == w2.finite()
}

/// Definitional test on Shi vectors alone: `v2 - v1 = (<x, theta^vee>)_theta`
/// for an integer `x`.
pub fn same_orientation_from_vectors(rs: &RootSystem, v1: &ShiVector, v2: &ShiVector) -> bool {
    let n = rs.rank();
    let d: Vec<i64> = v2
        .simple_part(n)
        .iter()
        .zip(v1.simple_part(n))
        .map(|(a, b)| a - b)
        .collect();
    let Some(x) = solve_cartan(rs, &d) else {
        return false;
    };
    let x: Vec<i64> = x
        .into_iter()
        .map(|v| i64::try_from(v).expect("translation fits in i64"))
        .collect();
    (0..rs.num_positive_roots())
        .all(|r| v2.entries()[r] - v1.entries()[r] == rs.pairing_int(&x, r))
}

/// Same component and conjugate sections.
pub fn same_orientation_theorem(rs: &RootSystem, v1: &ShiVector, v2: &ShiVector) -> bool {
    same_component(rs, v1, v2) && conjugate(rs, &section_of(rs, v1), &section_of(rs, v2)).is_some()
}

/// Closed-form congruence on the simple coefficients; only defined for
/// types A to D and for vectors in the same component.
pub fn same_orientation_modular(rs: &RootSystem, v1: &ShiVector, v2: &ShiVector) -> Result<bool> {
    if !matches!(rs.kind(), CartanType::A | CartanType::B | CartanType::C | CartanType::D) {
        return Err(AlcoveError::UnsupportedType(rs.label()));
    }
    if !same_component(rs, v1, v2) {
        return Err(AlcoveError::ComponentMismatch);
    }
    let d = section_of(rs, v1).difference(&section_of(rs, v2));
    fast_class(rs, &d)
}

/// A pair on which the routes disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub root_system: String,
    pub word1: String,
    pub word2: String,
    pub oracle: bool,
    pub theorem: bool,
    /// `None` outside types A-D or across components.
    pub modular: Option<bool>,
    pub component_equal: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BallReport {
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

impl BallReport {
    pub fn is_clean(&self) -> bool {
        self.injective && self.discrepancies.is_empty()
    }
}

fn intern<T: Clone + Eq + std::hash::Hash + Ord>(items: &[T]) -> (Vec<usize>, usize) {
    let mut distinct: Vec<T> = items.to_vec();
    distinct.sort();
    distinct.dedup();
    let ids: HashMap<&T, usize> = distinct.iter().enumerate().map(|(i, t)| (t, i)).collect();
    (items.iter().map(|t| ids[t]).collect(), distinct.len())
}

/// Enumerates the ball and checks every unordered pair of distinct
/// elements: oracle against theorem, and against the modular test on
/// same-component pairs for types A to D. Disagreements are recorded, not
/// raised.
pub fn classify_ball(rs: &RootSystem, radius: usize) -> BallReport {
    let ball = enumerate_ball(rs, radius);
    let vectors: Vec<ShiVector> = ball.iter().map(|e| shi_vector(rs, &e.element)).collect();
    let lambdas: Vec<AdmittedVector> = vectors.iter().map(|v| lambda_of(rs, v)).collect();
    let finite: Vec<OrientationClass> = ball.iter().map(|e| OrientationClass::of(&e.element)).collect();
    let classes: Vec<_> = vectors.iter().map(|v| h1_class(rs, &section_of(rs, v))).collect();

    let (component_ids, components) = intern(&lambdas);
    let (_, orientation_classes) = intern(&finite);
    let (_, h1_classes) = intern(&classes);
    let (_, distinct_vectors) = intern(&vectors);

    let modular_supported =
        matches!(rs.kind(), CartanType::A | CartanType::B | CartanType::C | CartanType::D);
    let label = rs.label();

    let per_row: Vec<(Vec<Discrepancy>, u64)> = (0..ball.len())
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            let mut same_comp = 0u64;
            for j in i + 1..ball.len() {
                let oracle = same_orientation_oracle(&ball[i].element, &ball[j].element);
                let component_equal = component_ids[i] == component_ids[j];
                let theorem = component_equal
                    && conjugate(rs, &section_of(rs, &vectors[i]), &section_of(rs, &vectors[j]))
                        .is_some();
                let modular = if component_equal && modular_supported {
                    same_comp += 1;
                    same_orientation_modular(rs, &vectors[i], &vectors[j]).ok()
                } else {
                    if component_equal {
                        same_comp += 1;
                    }
                    None
                };
                if oracle != theorem || modular.is_some_and(|m| m != oracle) {
                    found.push(Discrepancy {
                        root_system: label.clone(),
                        word1: ball[i].word.to_string(),
                        word2: ball[j].word.to_string(),
                        oracle,
                        theorem,
                        modular,
                        component_equal,
                    });
                }
            }
            (found, same_comp)
        })
        .collect();

    let n = ball.len() as u64;
    BallReport {
        root_system: label,
        radius,
        elements: ball.len(),
        orientation_classes,
        components,
        h1_classes,
        pairs_checked: n * n.saturating_sub(1) / 2,
        same_component_pairs: per_row.iter().map(|r| r.1).sum(),
        injective: distinct_vectors == ball.len(),
        discrepancies: per_row.into_iter().flat_map(|r| r.0).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{evaluate_word, simple_reflection};

    fn rs(kind: CartanType, rank: usize) -> RootSystem {
        RootSystem::new(kind, rank).unwrap()
    }

    #[test]
    fn oracle_basics() {
        let b2 = rs(CartanType::B, 2);
        let w = evaluate_word(&b2, &"0 1 2".parse().unwrap()).unwrap();
        assert!(same_orientation_oracle(&w, &w));
        let tw = AffineElement::translation_by(vec![3, -2]).multiply(&w).unwrap();
        assert!(same_orientation_oracle(&w, &tw));
        let s1 = simple_reflection(&b2, 1).unwrap();
        let s2 = simple_reflection(&b2, 2).unwrap();
        assert!(!same_orientation_oracle(&s1, &s2));
    }

    #[test]
    fn vector_oracle_matches_element_oracle() {
        let c3 = rs(CartanType::C, 3);
        let ball = enumerate_ball(&c3, 4);
        let vs: Vec<_> = ball.iter().map(|e| shi_vector(&c3, &e.element)).collect();
        for i in (0..ball.len()).step_by(7) {
            for j in 0..ball.len() {
                assert_eq!(
                    same_orientation_from_vectors(&c3, &vs[i], &vs[j]),
                    same_orientation_oracle(&ball[i].element, &ball[j].element)
                );
            }
        }
    }

    #[test]
    fn translated_pairs_agree() {
        let a2 = rs(CartanType::A, 2);
        let w = evaluate_word(&a2, &"0 2 1 0".parse().unwrap()).unwrap();
        let tw = AffineElement::translation_by(vec![5, -1]).multiply(&w).unwrap();
        let (v, tv) = (shi_vector(&a2, &w), shi_vector(&a2, &tw));
        assert!(same_orientation_theorem(&a2, &v, &tv));
        assert!(same_orientation_modular(&a2, &v, &tv).unwrap());
    }

    #[test]
    fn modular_errors() {
        let g2 = rs(CartanType::G, 2);
        let e = shi_vector(&g2, &AffineElement::identity(2));
        assert!(matches!(
            same_orientation_modular(&g2, &e, &e),
            Err(AlcoveError::UnsupportedType(_))
        ));
        let a2 = rs(CartanType::A, 2);
        let e = shi_vector(&a2, &AffineElement::identity(2));
        let other = ShiVector::new(&a2, vec![0, 0, 1]).unwrap();
        assert!(matches!(
            same_orientation_modular(&a2, &e, &other),
            Err(AlcoveError::ComponentMismatch)
        ));
    }

    #[test]
    fn small_balls() {
        let a2 = rs(CartanType::A, 2);
        let r0 = classify_ball(&a2, 0);
        assert_eq!((r0.elements, r0.orientation_classes), (1, 1));
        let r = classify_ball(&a2, 6);
        assert!(r.is_clean(), "{:?}", r.discrepancies);
        assert_eq!(r.orientation_classes, 6);
        assert_eq!(r.components, 2);
    }
}
