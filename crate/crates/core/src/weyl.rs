//! Elements of the finite Weyl group `W` and of the affine Weyl group
//! `W_a = Z\Phi x| W`, acting on root-basis coordinates.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{AlcoveError, Result};
use crate::linalg::{self, IntMatrix};
use crate::rootsys::RootSystem;

/// Linear part of an affine element. Column `j` is the image of `alpha_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteElement {
    matrix: IntMatrix,
}

impl FiniteElement {
    pub fn identity(n: usize) -> Self {
        FiniteElement {
            matrix: linalg::identity(n),
        }
    }

    /// Wraps a matrix after checking it permutes `+-Phi^+` and has
    /// determinant `+-1`.
    pub fn from_matrix(rs: &RootSystem, matrix: IntMatrix) -> Result<Self> {
        let n = rs.rank();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(AlcoveError::DimensionMismatch {
                expected: n,
                actual: matrix.len(),
            });
        }
        let elem = FiniteElement { matrix };
        if !elem.permutes_roots(rs) {
            return Err(AlcoveError::Parse("matrix does not permute the root system".into()));
        }
        Ok(elem)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply_int(&self, v: &[i64]) -> Vec<i64> {
        linalg::mat_vec(&self.matrix, v)
    }

    pub fn compose(&self, other: &FiniteElement) -> FiniteElement {
        FiniteElement {
            matrix: linalg::mat_mul(&self.matrix, &other.matrix),
        }
    }

    pub fn inverse(&self) -> FiniteElement {
        FiniteElement {
            matrix: linalg::unimodular_inverse(&self.matrix).expect("Weyl group elements are unimodular"),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == linalg::identity(self.rank())
    }

    pub fn permutes_roots(&self, rs: &RootSystem) -> bool {
        let det = linalg::determinant(&self.matrix);
        if det != 1.into() && det != (-1).into() {
            return false;
        }
        rs.positive_roots().iter().all(|r| {
            let image = self.apply_int(&r.root_coords);
            let neg: Vec<i64> = image.iter().map(|x| -x).collect();
            rs.root_index(&image).is_some() || rs.root_index(&neg).is_some()
        })
    }
}

/// `w = tau_x wbar`: acts by `p -> wbar(p) + x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineElement {
    translation: Vec<i64>,
    finite: FiniteElement,
}

impl AffineElement {
    pub fn identity(n: usize) -> Self {
        AffineElement {
            translation: vec![0; n],
            finite: FiniteElement::identity(n),
        }
    }

    pub fn new(translation: Vec<i64>, finite: FiniteElement) -> Result<Self> {
        if translation.len() != finite.rank() {
            return Err(AlcoveError::DimensionMismatch {
                expected: finite.rank(),
                actual: translation.len(),
            });
        }
        Ok(AffineElement { translation, finite })
    }

    pub fn translation_by(x: Vec<i64>) -> Self {
        let n = x.len();
        AffineElement {
            translation: x,
            finite: FiniteElement::identity(n),
        }
    }

    pub fn rank(&self) -> usize {
        self.translation.len()
    }

    pub fn translation(&self) -> &[i64] {
        &self.translation
    }

    pub fn finite(&self) -> &FiniteElement {
        &self.finite
    }

    /// `(x, wbar)` with `self = tau_x wbar`.
    pub fn decompose(&self) -> (&[i64], &FiniteElement) {
        (&self.translation, &self.finite)
    }

    /// `(x,u)(y,v) = (x + u(y), uv)`.
    pub fn multiply(&self, other: &AffineElement) -> Result<AffineElement> {
        if self.rank() != other.rank() {
            return Err(AlcoveError::DimensionMismatch {
                expected: self.rank(),
                actual: other.rank(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &AffineElement) -> AffineElement {
        let uy = self.finite.apply_int(&other.translation);
        AffineElement {
            translation: self.translation.iter().zip(uy).map(|(a, b)| a + b).collect(),
            finite: self.finite.compose(&other.finite),
        }
    }

    pub fn inverse(&self) -> AffineElement {
        let inv = self.finite.inverse();
        let t = inv.apply_int(&self.translation).into_iter().map(|x| -x).collect();
        AffineElement {
            translation: t,
            finite: inv,
        }
    }

    pub fn apply(&self, p: &[BigRational]) -> Result<Vec<BigRational>> {
        if p.len() != self.rank() {
            return Err(AlcoveError::DimensionMismatch {
                expected: self.rank(),
                actual: p.len(),
            });
        }
        Ok(self
            .finite
            .matrix
            .iter()
            .zip(&self.translation)
            .map(|(row, &t)| {
                row.iter()
                    .zip(p)
                    .map(|(&m, x)| x * BigRational::from_integer(m.into()))
                    .sum::<BigRational>()
                    + BigRational::from_integer(t.into())
            })
            .collect())
    }

    /// Image of `num / den` as numerators over the same denominator.
    pub fn apply_scaled(&self, num: &[i64], den: i64) -> Vec<i64> {
        self.finite
            .apply_int(num)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, t)| a + t * den)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.translation.iter().all(|&x| x == 0) && self.finite.is_identity()
    }
}

/// Word over the affine generators: letter 0 is `s_0`, letter `i >= 1` is `s_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorWord(pub Vec<usize>);

impl GeneratorWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for GeneratorWord {
    type Err = AlcoveError;

    /// Whitespace- or comma-separated letters, e.g. `"0 1 2 1"`.
    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| AlcoveError::Parse(format!("bad generator letter `{t}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(GeneratorWord)
    }
}

/// Reflection matrix of `s_theta`: column `j` is `alpha_j - <alpha_j, theta^vee> theta`.
pub fn reflection_matrix(rs: &RootSystem, root: usize) -> FiniteElement {
    let n = rs.rank();
    let theta = &rs.root(root).root_coords;
    let mut m = linalg::identity(n);
    for j in 0..n {
        let mut e = vec![0i64; n];
        e[j] = 1;
        let p = rs.pairing_int(&e, root);
        for i in 0..n {
            m[i][j] -= p * theta[i];
        }
    }
    FiniteElement { matrix: m }
}

/// `s_i` for `1 <= i <= n`.
pub fn simple_reflection(rs: &RootSystem, i: usize) -> Result<AffineElement> {
    if i == 0 || i > rs.rank() {
        return Err(AlcoveError::BadIndex {
            index: i,
            rank: rs.rank(),
        });
    }
    Ok(affine_reflection(rs, i - 1, 0))
}

/// `s_{theta,k}(x) = x - (<x, theta^vee> - k) theta`.
pub fn affine_reflection(rs: &RootSystem, root: usize, k: i64) -> AffineElement {
    let theta = &rs.root(root).root_coords;
    AffineElement {
        translation: theta.iter().map(|c| k * c).collect(),
        finite: reflection_matrix(rs, root),
    }
}

/// The affine generator `s_0 = s_{phi, 1}`, reflection in the affine wall
/// of the fundamental alcove. Hyperplanes are `<x, phi^vee> = k`, so `phi`
/// is the root with the highest coroot; it equals the highest root only
/// in the simply-laced types.
pub fn affine_generator(rs: &RootSystem) -> AffineElement {
    affine_reflection(rs, rs.highest_coroot(), 1)
}

/// `s_0, s_1, ..., s_n` indexed by letter.
pub fn generators(rs: &RootSystem) -> Vec<AffineElement> {
    let mut gens = vec![affine_generator(rs)];
    gens.extend((0..rs.rank()).map(|i| affine_reflection(rs, i, 0)));
    gens
}

pub fn evaluate_word(rs: &RootSystem, word: &GeneratorWord) -> Result<AffineElement> {
    let gens = generators(rs);
    let mut acc = AffineElement::identity(rs.rank());
    for &l in word.letters() {
        let g = gens.get(l).ok_or(AlcoveError::BadLetter {
            letter: l,
            max: rs.rank(),
        })?;
        acc = acc.mul_unchecked(g);
    }
    Ok(acc)
}

/// Coxeter exponent `m_ij` from `C_ij C_ji`.
pub fn coxeter_order(rs: &RootSystem, i: usize, j: usize) -> usize {
    if i == j {
        return 1;
    }
    let c = rs.cartan();
    match c[i][j] * c[j][i] {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        other => unreachable!("crystallographic product {other}"),
    }
}

#[derive(Clone, Debug)]
pub struct BallElement {
    pub element: AffineElement,
    /// Lexicographically least among the shortest words.
    pub word: GeneratorWord,
}

/// Every element of word length `<= radius`, in BFS order.
pub fn enumerate_ball(rs: &RootSystem, radius: usize) -> Vec<BallElement> {
    let gens = generators(rs);
    let identity = AffineElement::identity(rs.rank());
    let mut seen: HashMap<AffineElement, usize> = HashMap::new();
    seen.insert(identity.clone(), 0);
    let mut ball = vec![BallElement {
        element: identity,
        word: GeneratorWord::default(),
    }];
    let mut frontier = 0..1;
    for _ in 0..radius {
        let start = ball.len();
        for idx in frontier.clone() {
            for (letter, g) in gens.iter().enumerate() {
                let next = ball[idx].element.mul_unchecked(g);
                if seen.contains_key(&next) {
                    continue;
                }
                let mut word = ball[idx].word.clone();
                word.0.push(letter);
                seen.insert(next.clone(), ball.len());
                ball.push(BallElement { element: next, word });
            }
        }
        frontier = start..ball.len();
    }
    ball
}
