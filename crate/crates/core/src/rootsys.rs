//! Irreducible crystallographic root systems, built from Cartan data and
//! handled entirely in root-basis coordinates.
//!
//! Conventions: simple roots are numbered as in Bourbaki and the Cartan
//! matrix is `C[i][j] = <alpha_i, alpha_j^vee>`. Squared norms are scaled so
//! the shortest simple root has norm 2.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::cohomology::CohomologyGroup;
use crate::error::{AlcoveError, Result};
use crate::linalg::{self, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::E => "E",
            CartanType::F => "F",
            CartanType::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for CartanType {
    type Err = AlcoveError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E" => Ok(CartanType::E),
            "F" => Ok(CartanType::F),
            "G" => Ok(CartanType::G),
            other => Err(AlcoveError::UnknownType(other.to_string())),
        }
    }
}

impl CartanType {
    /// Index of connection `f`, i.e. `|det C|`, from the classification.
    pub fn index_of_connection(self, rank: usize) -> i64 {
        match self {
            CartanType::A => rank as i64 + 1,
            CartanType::B | CartanType::C => 2,
            CartanType::D => 4,
            CartanType::E => match rank {
                6 => 3,
                7 => 2,
                _ => 1,
            },
            CartanType::F | CartanType::G => 1,
        }
    }

    /// `|W|` from the classification.
    pub fn weyl_group_order(self, rank: usize) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            CartanType::A => fact(rank + 1),
            CartanType::B | CartanType::C => (1u128 << rank) * fact(rank),
            CartanType::D => (1u128 << (rank - 1)) * fact(rank),
            CartanType::E => match rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            CartanType::F => 1_152,
            CartanType::G => 12,
        }
    }

    fn check_rank(self, rank: usize) -> std::result::Result<(), String> {
        let ok = match self {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 3,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(match self {
                CartanType::A => "type A needs rank >= 1".into(),
                CartanType::B | CartanType::C => format!("type {self} needs rank >= 2"),
                CartanType::D => "type D needs rank >= 3".into(),
                CartanType::E => "type E exists only in ranks 6, 7, 8".into(),
                CartanType::F => "type F exists only in rank 4".into(),
                CartanType::G => "type G exists only in rank 2".into(),
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PositiveRoot {
    /// `theta = sum c_i alpha_i`
    pub root_coords: Vec<i64>,
    /// `theta^vee = sum c_i^vee alpha_i^vee`; these are the coefficients of
    /// the linear polynomial `P_theta`.
    pub coroot_coords: Vec<i64>,
    pub coroot_height: i64,
    pub sq_norm: i64,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.root_coords.iter().sum()
    }

    pub fn is_simple(&self) -> bool {
        self.height() == 1
    }
}

/// A triple of positive roots `(alpha, beta, alpha + beta)` given by indices
/// into the canonical root order, with `alpha < beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootTriple {
    pub alpha: usize,
    pub beta: usize,
    pub sum: usize,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: CartanType,
    rank: usize,
    gram: IntMatrix,
    cartan: IntMatrix,
    norms: Vec<i64>,
    roots: Vec<PositiveRoot>,
    index_of_connection: i64,
    root_index: HashMap<Vec<i64>, usize>,
    triples: Vec<RootTriple>,
    sample_numerators: Vec<i64>,
    sample_denominator: i64,
    pub(crate) h1_cache: OnceLock<CohomologyGroup>,
}

/// Symmetric Gram matrix of the simple roots.
fn gram_matrix(kind: CartanType, n: usize) -> IntMatrix {
    let mut g = vec![vec![0i64; n]; n];
    let bond = |g: &mut IntMatrix, i: usize, j: usize, v: i64| {
        g[i - 1][j - 1] = v;
        g[j - 1][i - 1] = v;
    };
    match kind {
        CartanType::A | CartanType::D | CartanType::E => {
            for i in 0..n {
                g[i][i] = 2;
            }
            match kind {
                CartanType::A => {
                    for i in 1..n {
                        bond(&mut g, i, i + 1, -1);
                    }
                }
                CartanType::D => {
                    for i in 1..n - 1 {
                        bond(&mut g, i, i + 1, -1);
                    }
                    bond(&mut g, n - 2, n, -1);
                }
                _ => {
                    bond(&mut g, 1, 3, -1);
                    bond(&mut g, 2, 4, -1);
                    for i in 3..n {
                        bond(&mut g, i, i + 1, -1);
                    }
                }
            }
        }
        CartanType::B => {
            for i in 0..n - 1 {
                g[i][i] = 4;
            }
            g[n - 1][n - 1] = 2;
            for i in 1..n {
                bond(&mut g, i, i + 1, -2);
            }
        }
        CartanType::C => {
            for i in 0..n - 1 {
                g[i][i] = 2;
            }
            g[n - 1][n - 1] = 4;
            for i in 1..n - 1 {
                bond(&mut g, i, i + 1, -1);
            }
            bond(&mut g, n - 1, n, -2);
        }
        CartanType::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            bond(&mut g, 1, 2, -2);
            bond(&mut g, 2, 3, -2);
            bond(&mut g, 3, 4, -1);
        }
        CartanType::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            bond(&mut g, 1, 2, -3);
        }
    }
    g
}

impl RootSystem {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        kind.check_rank(rank)
            .map_err(|reason| AlcoveError::InvalidRootSystem {
                label: kind.to_string(),
                rank,
                reason,
            })?;
        let n = rank;
        let gram = gram_matrix(kind, n);
        let norms: Vec<i64> = (0..n).map(|i| gram[i][i]).collect();
        let cartan: IntMatrix = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();

        let det = linalg::determinant(&cartan).abs();
        let index_of_connection = det.to_i64().expect("small determinant");
        debug_assert_eq!(index_of_connection, kind.index_of_connection(rank));

        let roots = generate_positive_roots(&gram, &cartan, &norms);
        let root_index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.root_coords.clone(), i))
            .collect::<HashMap<_, _>>();

        let mut triples = Vec::new();
        for a in 0..roots.len() {
            for b in a + 1..roots.len() {
                let s: Vec<i64> = roots[a]
                    .root_coords
                    .iter()
                    .zip(&roots[b].root_coords)
                    .map(|(x, y)| x + y)
                    .collect();
                if let Some(&sum) = root_index.get(&s) {
                    triples.push(RootTriple { alpha: a, beta: b, sum });
                }
            }
        }

        let max_height = roots.iter().map(|r| r.coroot_height).max().unwrap_or(1);
        let (sample_numerators, sample_denominator) =
            sample_point(&cartan, 1 + max_height);

        Ok(RootSystem {
            kind,
            rank,
            gram,
            cartan,
            norms,
            roots,
            index_of_connection,
            root_index,
            triples,
            sample_numerators,
            sample_denominator,
            h1_cache: OnceLock::new(),
        })
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Label such as `B2` or `E6`.
    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn norms(&self) -> &[i64] {
        &self.norms
    }

    pub fn index_of_connection(&self) -> i64 {
        self.index_of_connection
    }

    pub fn weyl_group_order(&self) -> u128 {
        self.kind.weyl_group_order(self.rank)
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, index: usize) -> &PositiveRoot {
        &self.roots[index]
    }

    pub fn root_index(&self, root_coords: &[i64]) -> Option<usize> {
        self.root_index.get(root_coords).copied()
    }

    pub fn triples(&self) -> &[RootTriple] {
        &self.triples
    }

    /// `<x, alpha_j^vee>` for every simple coroot, i.e. `tC x`.
    pub fn simple_pairings(&self, x: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|j| (0..self.rank).map(|i| x[i] * self.cartan[i][j]).sum())
            .collect()
    }

    /// `<x, theta^vee>` for an integer vector in root coordinates.
    pub fn pairing_int(&self, x: &[i64], root: usize) -> i64 {
        let simple = self.simple_pairings(x);
        dot(&self.roots[root].coroot_coords, &simple)
    }

    /// `<x, alpha_j^vee>` for a rational vector; `j` is 0-based.
    pub fn pairing_simple(&self, x: &[BigRational], j: usize) -> Result<BigRational> {
        self.check_len(x.len())?;
        Ok(x
            .iter()
            .enumerate()
            .map(|(i, xi)| xi * BigRational::from_integer(self.cartan[i][j].into()))
            .sum())
    }

    /// `<x, theta^vee>` for a rational vector and a positive root index.
    pub fn pairing(&self, x: &[BigRational], root: usize) -> Result<BigRational> {
        self.check_len(x.len())?;
        let mut acc = BigRational::from_integer(0.into());
        for (j, &c) in self.roots[root].coroot_coords.iter().enumerate() {
            if c != 0 {
                acc += self.pairing_simple(x, j)? * BigRational::from_integer(c.into());
            }
        }
        Ok(acc)
    }

    /// Euclidean inner product of two integer root-coordinate vectors.
    pub fn inner_product(&self, x: &[i64], y: &[i64]) -> i64 {
        let gy = linalg::mat_vec(&self.gram, y);
        dot(x, &gy)
    }

    /// The unique positive root dominating all others componentwise.
    pub fn highest_root(&self) -> usize {
        (0..self.roots.len())
            .find(|&i| {
                self.roots.iter().all(|r| {
                    r.root_coords
                        .iter()
                        .zip(&self.roots[i].root_coords)
                        .all(|(a, b)| a <= b)
                })
            })
            .expect("irreducible root systems have a highest root")
    }

    /// The positive root whose coroot is the highest coroot (the highest
    /// short root). `H_{phi,1}` is the affine wall of the fundamental alcove.
    pub fn highest_coroot(&self) -> usize {
        (0..self.roots.len())
            .max_by_key(|&i| self.roots[i].coroot_height)
            .expect("nonempty root system")
    }

    /// Point of the open fundamental alcove with `<x0, alpha_i^vee> = 1/N`,
    /// `N = 1 + max coroot height`.
    pub fn interior_sample_point(&self) -> Vec<BigRational> {
        let den = BigRational::from_integer(self.sample_denominator.into());
        self.sample_numerators
            .iter()
            .map(|&x| BigRational::from_integer(x.into()) / &den)
            .collect()
    }

    /// Integer numerators of the sample point over the common denominator
    /// returned alongside.
    pub fn sample_point_scaled(&self) -> (&[i64], i64) {
        (&self.sample_numerators, self.sample_denominator)
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len == self.rank {
            Ok(())
        } else {
            Err(AlcoveError::DimensionMismatch {
                expected: self.rank,
                actual: len,
            })
        }
    }

    /// `||a+b||^2 P_{a+b} = ||a||^2 P_a + ||b||^2 P_b` for every triple.
    pub fn cancellation_identity_holds(&self) -> bool {
        self.triples.iter().all(|t| {
            let (a, b, s) = (&self.roots[t.alpha], &self.roots[t.beta], &self.roots[t.sum]);
            (0..self.rank).all(|i| {
                s.sq_norm * s.coroot_coords[i]
                    == a.sq_norm * a.coroot_coords[i] + b.sq_norm * b.coroot_coords[i]
            })
        })
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn generate_positive_roots(gram: &IntMatrix, cartan: &IntMatrix, norms: &[i64]) -> Vec<PositiveRoot> {
    let n = norms.len();
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        seen.insert(e.clone(), ());
        queue.push_back(e);
    }
    while let Some(r) = queue.pop_front() {
        for i in 0..n {
            // s_i(r) = r - <r, alpha_i^vee> alpha_i
            let p: i64 = (0..n).map(|k| r[k] * cartan[k][i]).sum();
            if p == 0 {
                continue;
            }
            let mut image = r.clone();
            image[i] -= p;
            if image.iter().all(|&c| c >= 0) && !seen.contains_key(&image) {
                seen.insert(image.clone(), ());
                queue.push_back(image);
            }
        }
    }

    let mut roots: Vec<PositiveRoot> = seen
        .into_keys()
        .map(|c| {
            let gc = linalg::mat_vec(gram, &c);
            let sq_norm = dot(&c, &gc);
            let coroot_coords: Vec<i64> = (0..n)
                .map(|i| {
                    let num = c[i] * norms[i];
                    assert_eq!(num % sq_norm, 0, "coroot coordinates must be integral");
                    num / sq_norm
                })
                .collect();
            let coroot_height = coroot_coords.iter().sum();
            PositiveRoot {
                root_coords: c,
                coroot_coords,
                coroot_height,
                sq_norm,
            }
        })
        .collect();
    // simple roots in Cartan order, then by coroot height, then lex
    roots.sort_by_key(|r| {
        if r.is_simple() {
            let i = r.root_coords.iter().position(|&c| c == 1).unwrap_or(0);
            (false, i as i64, Vec::new())
        } else {
            (true, r.coroot_height, r.root_coords.clone())
        }
    });
    roots
}

/// Solve `tC x = (1/N, ..., 1/N)` and return integer numerators over a
/// common positive denominator.
fn sample_point(cartan: &IntMatrix, big_n: i64) -> (Vec<i64>, i64) {
    let inv = linalg::rational_inverse(&linalg::transpose(cartan)).expect("Cartan matrix is invertible");
    let x: Vec<BigRational> = inv
        .iter()
        .map(|row| row.iter().sum::<BigRational>() / BigRational::from_integer(big_n.into()))
        .collect();
    let den = x
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, v| acc.lcm(v.denom()));
    let nums = x
        .iter()
        .map(|v| (v.numer() * (&den / v.denom())).to_i64().expect("small sample point"))
        .collect();
    (nums, den.to_i64().expect("small denominator"))
}
