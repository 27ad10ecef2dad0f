//! Shi coefficients `k(w, theta)`, Shi's alcove criterion, the
//! decomposition `k = P_theta + lambda_theta`, and admitted vectors
//! labelling the irreducible components of the Shi variety.

use num_integer::Integer;

use crate::error::{AlcoveError, Result};
use crate::rootsys::{CartanType, RootSystem, RootTriple};
use crate::weyl::AffineElement;

/// `(k(w, theta))` indexed by the canonical positive root order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiVector {
    entries: Vec<i64>,
}

impl ShiVector {
    /// Validates length and Shi's inequalities.
    pub fn new(rs: &RootSystem, entries: Vec<i64>) -> Result<Self> {
        if let Some(t) = first_violation(rs, &entries)? {
            return Err(violation_error(rs, t));
        }
        Ok(ShiVector { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Entries on the simple roots, `(k(w, alpha_1), ..., k(w, alpha_n))`.
    pub fn simple_part(&self, rank: usize) -> &[i64] {
        &self.entries[..rank]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmittedVector {
    entries: Vec<i64>,
}

impl AdmittedVector {
    /// Checks admissibility only (`0 <= lambda_theta < h(theta^vee)`).
    pub fn admissible(rs: &RootSystem, entries: Vec<i64>) -> Result<Self> {
        check_admissible(rs, &entries)?;
        Ok(AdmittedVector { entries })
    }

    pub fn zero(rs: &RootSystem) -> Self {
        AdmittedVector {
            entries: vec![0; rs.num_positive_roots()],
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }
}

fn check_admissible(rs: &RootSystem, entries: &[i64]) -> Result<()> {
    if entries.len() != rs.num_positive_roots() {
        return Err(AlcoveError::DimensionMismatch {
            expected: rs.num_positive_roots(),
            actual: entries.len(),
        });
    }
    for (i, (&v, r)) in entries.iter().zip(rs.positive_roots()).enumerate() {
        if v < 0 || v >= r.coroot_height {
            return Err(AlcoveError::NotAdmissible {
                index: i,
                value: v,
                max: r.coroot_height - 1,
            });
        }
    }
    Ok(())
}

/// `k(w, theta) = floor(<w(x0), theta^vee>)` at the interior sample point.
pub fn shi_vector(rs: &RootSystem, w: &AffineElement) -> ShiVector {
    let (num, den) = rs.sample_point_scaled();
    let image = w.apply_scaled(num, den);
    let simple = rs.simple_pairings(&image);
    let entries = rs
        .positive_roots()
        .iter()
        .map(|r| {
            let v: i64 = r.coroot_coords.iter().zip(&simple).map(|(c, s)| c * s).sum();
            assert!(v % den != 0, "image of the sample point lies on a hyperplane");
            Integer::div_floor(&v, &den)
        })
        .collect();
    ShiVector { entries }
}

fn triple_holds(rs: &RootSystem, k: &[i64], t: &RootTriple) -> bool {
    let na = rs.root(t.alpha).sq_norm;
    let nb = rs.root(t.beta).sq_norm;
    let ns = rs.root(t.sum).sq_norm;
    let low = na * k[t.alpha] + nb * k[t.beta];
    let mid = ns * (k[t.sum] + 1);
    low + 1 <= mid && mid <= low + na + nb + ns - 1
}

fn first_violation(rs: &RootSystem, k: &[i64]) -> Result<Option<RootTriple>> {
    if k.len() != rs.num_positive_roots() {
        return Err(AlcoveError::DimensionMismatch {
            expected: rs.num_positive_roots(),
            actual: k.len(),
        });
    }
    Ok(rs.triples().iter().find(|t| !triple_holds(rs, k, t)).copied())
}

fn violation_error(rs: &RootSystem, t: RootTriple) -> AlcoveError {
    let name = |i: usize| format!("{:?}", rs.root(i).root_coords);
    AlcoveError::NotAlcove {
        alpha: name(t.alpha),
        beta: name(t.beta),
        sum: name(t.sum),
    }
}

/// Shi's criterion: the integer tuple is the coefficient vector of an
/// alcove iff every triple `(alpha, beta, alpha+beta)` satisfies
/// `|a|^2 k_a + |b|^2 k_b + 1 <= |a+b|^2 (k_{a+b} + 1)
///   <= |a|^2 k_a + |b|^2 k_b + |a|^2 + |b|^2 + |a+b|^2 - 1`.
pub fn is_alcove(rs: &RootSystem, candidate: &[i64]) -> Result<bool> {
    Ok(first_violation(rs, candidate)?.is_none())
}

/// Coefficients of `P_theta` in the simple Shi coefficients.
pub fn p_polynomial(rs: &RootSystem, root: usize) -> &[i64] {
    &rs.root(root).coroot_coords
}

fn eval_p(rs: &RootSystem, root: usize, simple: &[i64]) -> i64 {
    p_polynomial(rs, root).iter().zip(simple).map(|(c, k)| c * k).sum()
}

/// `lambda_theta = k_theta - P_theta(k_alpha_1, ..., k_alpha_n)`.
pub fn lambda_of(rs: &RootSystem, v: &ShiVector) -> AdmittedVector {
    let simple = v.simple_part(rs.rank());
    let entries: Vec<i64> = (0..rs.num_positive_roots())
        .map(|r| v.entries[r] - eval_p(rs, r, simple))
        .collect();
    if let Err(e) = check_admissible(rs, &entries) {
        panic!("alcove produced a non-admissible lambda: {e}");
    }
    AdmittedVector { entries }
}

/// Whether an admissible `lambda` satisfies the reduced Shi system, i.e.
/// labels a nonempty component.
pub fn is_admitted(rs: &RootSystem, lambda: &[i64]) -> Result<bool> {
    check_admissible(rs, lambda)?;
    if rs.cancellation_identity_holds() {
        // linear parts cancel: the system on k = P + lambda is the same
        // system on lambda alone
        return is_alcove(rs, lambda);
    }
    Ok(admitted_by_search(rs, lambda))
}

/// Looks for simple coefficients `s` with `P(s) + lambda` an alcove.
fn admitted_by_search(rs: &RootSystem, lambda: &[i64]) -> bool {
    let n = rs.rank();
    let bound = rs.positive_roots().iter().map(|r| r.coroot_height).max().unwrap_or(1);
    let mut s = vec![-bound; n];
    loop {
        let k: Vec<i64> = (0..rs.num_positive_roots())
            .map(|r| eval_p(rs, r, &s) + lambda[r])
            .collect();
        if matches!(is_alcove(rs, &k), Ok(true)) {
            return true;
        }
        let mut i = 0;
        while i < n && s[i] == bound {
            s[i] = -bound;
            i += 1;
        }
        if i == n {
            return false;
        }
        s[i] += 1;
    }
}

/// Cap on the admissible product space used when none is given.
pub const DEFAULT_MAX_ADMISSIBLE: u128 = 100_000_000;

/// Number of admissible vectors, `prod |I_theta|`.
pub fn admissible_count(rs: &RootSystem) -> u128 {
    rs.positive_roots()
        .iter()
        .fold(1u128, |acc, r| acc.saturating_mul(r.coroot_height as u128))
}

/// All admitted vectors, sorted lexicographically. Refuses when the
/// admissible space exceeds `cap`.
pub fn enumerate_admitted(rs: &RootSystem, cap: u128) -> Result<Vec<AdmittedVector>> {
    let size = admissible_count(rs);
    if size > cap {
        return Err(AlcoveError::SearchTooLarge { size, cap });
    }
    let m = rs.num_positive_roots();
    // triples checked once their largest index is assigned
    let mut closing: Vec<Vec<RootTriple>> = vec![Vec::new(); m];
    for t in rs.triples() {
        closing[t.alpha.max(t.beta).max(t.sum)].push(*t);
    }
    let mut out = Vec::new();
    let mut current = vec![0i64; m];
    extend_admitted(rs, &closing, 0, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn extend_admitted(
    rs: &RootSystem,
    closing: &[Vec<RootTriple>],
    pos: usize,
    current: &mut Vec<i64>,
    out: &mut Vec<AdmittedVector>,
) {
    if pos == current.len() {
        out.push(AdmittedVector {
            entries: current.clone(),
        });
        return;
    }
    for value in 0..rs.root(pos).coroot_height {
        current[pos] = value;
        if closing[pos].iter().all(|t| triple_holds(rs, current, t)) {
            extend_admitted(rs, closing, pos + 1, current, out);
        }
    }
    current[pos] = 0;
}

pub fn same_component(rs: &RootSystem, v1: &ShiVector, v2: &ShiVector) -> bool {
    lambda_of(rs, v1) == lambda_of(rs, v2)
}

/// Positions `theta` where some decomposition `theta = alpha + beta` has a
/// strict excess `|theta|^2 k_theta > |alpha|^2 k_alpha + |beta|^2 k_beta`.
/// In type A these are the entries with `k_ij = k_ik + k_kj + 1` for some `k`.
/// Depends only on the component.
pub fn carry_positions(rs: &RootSystem, v: &ShiVector) -> Vec<bool> {
    let mut marks = vec![false; rs.num_positive_roots()];
    for t in rs.triples() {
        let e = rs.root(t.sum).sq_norm * v.entries[t.sum]
            - rs.root(t.alpha).sq_norm * v.entries[t.alpha]
            - rs.root(t.beta).sq_norm * v.entries[t.beta];
        if e > 0 {
            marks[t.sum] = true;
        }
    }
    marks
}

/// Index of `e_i - e_j` (1-based, `i < j`) in type `A_n`.
pub fn type_a_index(rs: &RootSystem, i: usize, j: usize) -> Option<usize> {
    let n = rs.rank();
    if rs.kind() != CartanType::A || i == 0 || i >= j || j > n + 1 {
        return None;
    }
    let coords: Vec<i64> = (1..=n).map(|s| i64::from(s >= i && s < j)).collect();
    rs.root_index(&coords)
}

/// Parses the pyramid layout of a type-A Shi vector. Rows are separated by
/// newlines or `|`; the row of simple coefficients has `n` entries and the
/// apex one entry. Rows may be given apex-first or simple-row-first.
pub fn parse_pyramid(rs: &RootSystem, text: &str) -> Result<Vec<i64>> {
    if rs.kind() != CartanType::A {
        return Err(AlcoveError::Parse("pyramid layout is only defined for type A".into()));
    }
    let n = rs.rank();
    let mut rows: Vec<Vec<i64>> = text
        .split(['\n', '|', ';'])
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| {
            r.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i64>().map_err(|_| AlcoveError::Parse(format!("bad entry `{t}`"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    if rows.len() != n {
        return Err(AlcoveError::Parse(format!("expected {n} pyramid rows, got {}", rows.len())));
    }
    if rows[0].len() != n {
        rows.reverse();
    }
    let mut entries = vec![0i64; rs.num_positive_roots()];
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n - r {
            return Err(AlcoveError::Parse(format!(
                "pyramid row {} has {} entries, expected {}",
                r + 1,
                row.len(),
                n - r
            )));
        }
        for (i, &v) in row.iter().enumerate() {
            let idx = type_a_index(rs, i + 1, i + r + 2).expect("type A root");
            entries[idx] = v;
        }
    }
    Ok(entries)
}

/// Apex-first pyramid text, one row per line; the last line holds the
/// simple coefficients.
pub fn format_pyramid(rs: &RootSystem, entries: &[i64]) -> Option<String> {
    if rs.kind() != CartanType::A || entries.len() != rs.num_positive_roots() {
        return None;
    }
    let n = rs.rank();
    let lines: Vec<String> = (0..n)
        .rev()
        .map(|r| {
            let row: Vec<String> = (0..n - r)
                .map(|i| entries[type_a_index(rs, i + 1, i + r + 2).unwrap()].to_string())
                .collect();
            format!("{}{}", " ".repeat(r), row.join(" "))
        })
        .collect();
    Some(lines.join("\n"))
}
