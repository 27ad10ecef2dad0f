//! Sections of `pi : Z\Phi x| W -> W` and the group `H^1(W, Z\Phi)`.
//!
//! A section is determined by integers `(a_1, ..., a_n)` with
//! `s(s_i) = tau_{a_i alpha_i} s_i`. Two sections are conjugate under
//! `Z\Phi` iff `tC z = a - b` has an integer solution, so `H^1` is the
//! cokernel of the transposed Cartan matrix. Everything here goes through
//! its Smith normal form, computed once per root system.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlcoveError, Result};
use crate::linalg::{self, BigMatrix, SmithForm};
use crate::rootsys::{CartanType, RootSystem};
use crate::shi::ShiVector;

/// Section `s(s_i) = tau_{a_i alpha_i} s_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Section {
    pub coeffs: Vec<i64>,
}

impl Section {
    pub fn trivial(n: usize) -> Self {
        Section { coeffs: vec![0; n] }
    }

    /// `d_i = a_i - b_i`.
    pub fn difference(&self, other: &Section) -> Vec<i64> {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect()
    }
}

/// Canonical residues of a section in `coker(tC)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CohomologyClass {
    pub residues: Vec<i64>,
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    /// Diagonal entries of the Smith form exceeding 1.
    pub invariant_factors: Vec<i64>,
    smith: SmithForm,
    /// Rows of the left transform paired with `invariant_factors`.
    torsion_rows: Vec<usize>,
}

impl CohomologyGroup {
    fn compute(rs: &RootSystem) -> Self {
        let tc = linalg::to_big(&linalg::transpose(rs.cartan()));
        let smith = linalg::smith_normal_form(&tc);
        let mut invariant_factors = Vec::new();
        let mut torsion_rows = Vec::new();
        for (i, d) in smith.diagonal.iter().enumerate() {
            assert!(!d.is_zero(), "Cartan matrices are nonsingular");
            if !d.is_one() {
                invariant_factors.push(d.to_i64().expect("small invariant factor"));
                torsion_rows.push(i);
            }
        }
        CohomologyGroup {
            invariant_factors,
            smith,
            torsion_rows,
        }
    }

    pub fn order(&self) -> i64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn left_transform(&self) -> &BigMatrix {
        &self.smith.left
    }

    pub fn right_transform(&self) -> &BigMatrix {
        &self.smith.right
    }

    fn residues_of(&self, v: &[BigInt]) -> Vec<i64> {
        let uv = linalg::big_mat_vec(&self.smith.left, v);
        self.torsion_rows
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&row, &f)| uv[row].mod_floor(&BigInt::from(f)).to_i64().unwrap())
            .collect()
    }
}

/// The cached `H^1(W, Z\Phi)` of `rs`.
pub fn h1_group(rs: &RootSystem) -> &CohomologyGroup {
    rs.h1_cache.get_or_init(|| CohomologyGroup::compute(rs))
}

/// Section `s_w` read off the simple Shi coefficients.
pub fn section_of(rs: &RootSystem, v: &ShiVector) -> Section {
    Section {
        coeffs: v.simple_part(rs.rank()).to_vec(),
    }
}

fn to_big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Integer solution of `tC z = d` if one exists.
pub fn solve_cartan(rs: &RootSystem, d: &[i64]) -> Option<Vec<BigInt>> {
    let group = h1_group(rs);
    let ud = linalg::big_mat_vec(&group.smith.left, &to_big_vec(d));
    let mut y = Vec::with_capacity(ud.len());
    for (value, diag) in ud.iter().zip(&group.smith.diagonal) {
        let (q, r) = value.div_mod_floor(diag);
        if !r.is_zero() {
            return None;
        }
        y.push(q);
    }
    Some(linalg::big_mat_vec(&group.smith.right, &y))
}

/// Whether the two sections are `Z\Phi`-conjugate; the witness `z`
/// satisfies `tC z = s1 - s2`.
pub fn conjugate(rs: &RootSystem, s1: &Section, s2: &Section) -> Option<Vec<BigInt>> {
    solve_cartan(rs, &s1.difference(s2))
}

pub fn h1_class(rs: &RootSystem, s: &Section) -> CohomologyClass {
    CohomologyClass {
        residues: h1_group(rs).residues_of(&to_big_vec(&s.coeffs)),
    }
}

/// Closed-form "same class" test on `d = a - b` for types A through D.
pub fn fast_class(rs: &RootSystem, d: &[i64]) -> Result<bool> {
    rs.check_len(d.len())?;
    let n = rs.rank();
    // 1-based access
    let dk = |k: usize| d[k - 1];
    match rs.kind() {
        CartanType::A => {
            let s: i64 = (1..=n).map(|j| j as i64 * dk(j)).sum();
            Ok(s.mod_floor(&(n as i64 + 1)) == 0)
        }
        CartanType::B => Ok(dk(n).is_even()),
        CartanType::C => {
            let s: i64 = (1..=n).step_by(2).map(dk).sum();
            Ok(s.is_even())
        }
        CartanType::D => {
            let (i, ii, iii) = type_d_conditions(d);
            Ok(!(i || ii || iii))
        }
        other => Err(AlcoveError::UnsupportedType(format!("{other}{n}"))),
    }
}

/// The three obstructions for `D_n`, each true when it detects distinct
/// classes:
/// i) `d_{n-1} != d_n mod 2`,
/// ii) `sum_{k in I_{n-2}} 2 d_k + n d_{n-1} + (n-2) d_n != 0 mod 4`,
/// iii) `sum_{k in I_{n-2}} 2 d_k + (n-2) d_{n-1} + n d_n != 0 mod 4`,
/// with `I_{n-2}` the odd indices up to `n-2`.
pub fn type_d_conditions(d: &[i64]) -> (bool, bool, bool) {
    let n = d.len();
    let dk = |k: usize| d[k - 1];
    let odd: i64 = (1..=n - 2).step_by(2).map(|k| 2 * dk(k)).sum();
    let ni = n as i64;
    let i = (dk(n - 1) - dk(n)).is_odd();
    let ii = (odd + ni * dk(n - 1) + (ni - 2) * dk(n)).mod_floor(&4) != 0;
    let iii = (odd + (ni - 2) * dk(n - 1) + ni * dk(n)).mod_floor(&4) != 0;
    (i, ii, iii)
}

/// Reading of the type-D criterion in which the classes differ only when
/// all three obstructions hold at once. Kept to audit it against
/// [`conjugate`]; [`fast_class`] uses the disjunction.
pub fn type_d_conjunctive_same_class(d: &[i64]) -> bool {
    let (i, ii, iii) = type_d_conditions(d);
    !(i && ii && iii)
}

/// A difference vector on which a closed-form test and the Smith normal
/// form route disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifierDiscrepancy {
    pub root_system: String,
    pub classifier: String,
    pub d: Vec<i64>,
    pub closed_form_same: bool,
    pub conjugate_same: bool,
}

/// Compares a closed-form classifier with [`solve_cartan`] on every
/// `d` in `[-radius, radius]^n`.
pub fn audit_box(
    rs: &RootSystem,
    radius: i64,
    name: &str,
    classifier: impl Fn(&[i64]) -> bool,
) -> Vec<ClassifierDiscrepancy> {
    let n = rs.rank();
    let mut d = vec![-radius; n];
    let mut out = Vec::new();
    loop {
        let closed = classifier(&d);
        let exact = solve_cartan(rs, &d).is_some();
        if closed != exact {
            out.push(ClassifierDiscrepancy {
                root_system: rs.label(),
                classifier: name.to_string(),
                d: d.clone(),
                closed_form_same: closed,
                conjugate_same: exact,
            });
        }
        let mut i = 0;
        while i < n && d[i] == radius {
            d[i] = -radius;
            i += 1;
        }
        if i == n {
            return out;
        }
        d[i] += 1;
    }
}

pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Primes to invert for the smallest localization killing `H^1`,
/// i.e. the prime factors of the index of connection.
pub fn minimal_inverted_primes(rs: &RootSystem) -> Vec<u64> {
    prime_factors(rs.index_of_connection() as u64)
}

fn is_unit_over(value: &BigInt, inverted: &[u64]) -> bool {
    let mut m = value.abs();
    if m.is_zero() {
        return false;
    }
    for &p in inverted.iter().filter(|&&p| p > 1) {
        let p = BigInt::from(p);
        while (&m % &p).is_zero() {
            m /= &p;
        }
    }
    m.is_one()
}

/// Whether `H^1(W, A\Phi) = 0` for `A = Z[1/p : p in inverted]`, i.e.
/// whether `det C` is a unit of `A`.
pub fn trivial_over(rs: &RootSystem, inverted: &[u64]) -> bool {
    is_unit_over(&BigInt::from(rs.index_of_connection()), inverted)
}

/// Solution of `tC z = d` over `Z[1/p : p in inverted]`, if one exists.
pub fn solve_localized(rs: &RootSystem, d: &[i64], inverted: &[u64]) -> Option<Vec<BigRational>> {
    let inv = linalg::rational_inverse(&linalg::transpose(rs.cartan()))?;
    let z: Vec<BigRational> = inv
        .iter()
        .map(|row| {
            row.iter()
                .zip(d)
                .map(|(q, &x)| q * BigRational::from_integer(x.into()))
                .sum()
        })
        .collect();
    z.iter()
        .all(|q| is_unit_over(q.denom(), inverted))
        .then_some(z)
}

/// Human-readable closed-form criterion for types A through D.
pub fn modular_formula(rs: &RootSystem) -> Option<String> {
    let n = rs.rank();
    Some(match rs.kind() {
        CartanType::A => format!(
            "same class iff d_1 + 2 d_2 + ... + {n} d_{n} = 0 in Z/{}Z",
            n + 1
        ),
        CartanType::B => format!("same class iff d_{n} = 0 in Z/2Z"),
        CartanType::C => "same class iff sum of d_k over odd k = 0 in Z/2Z".to_string(),
        CartanType::D => format!(
            "same class iff d_{m} = d_{n} in Z/2Z, \
             sum_(k odd, k <= {m2}) 2 d_k + {n} d_{m} + {m2} d_{n} = 0 in Z/4Z and \
             sum_(k odd, k <= {m2}) 2 d_k + {m2} d_{m} + {n} d_{n} = 0 in Z/4Z",
            m = n - 1,
            m2 = n - 2
        ),
        _ => return None,
    })
}
