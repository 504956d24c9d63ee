//! Brute-force `B × B`-orbits on `M_n(F_q)`.
//!
//! Orbits of the upper triangular group acting on both sides are counted
//! point by point, the counts are fitted to `(q - 1)^a q^b`, and the terms
//! `(t - 1)^a t^b` are summed.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hpoly::hpoly_from_cells;
use crate::poly::IntPoly;

/// Largest `q^{n^2}` the oracle will enumerate.
pub const MAX_POINTS: u64 = 1 << 20;
pub const MAX_REP_N: usize = 4;

/// A partial permutation matrix: `cols[i] = Some(j)` puts a 1 at `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RookMatrix {
    cols: Vec<Option<usize>>,
}

impl RookMatrix {
    pub fn new(cols: Vec<Option<usize>>) -> Result<Self> {
        let n = cols.len();
        let mut used = vec![false; n];
        for &c in cols.iter().flatten() {
            if c >= n || used[c] {
                return Err(Error::InvalidParameter(format!(
                    "{cols:?} is not a partial permutation"
                )));
            }
            used[c] = true;
        }
        Ok(RookMatrix { cols })
    }

    pub fn n(&self) -> usize {
        self.cols.len()
    }

    pub fn rank(&self) -> usize {
        self.cols.iter().flatten().count()
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        u8::from(self.cols[i] == Some(j))
    }

    /// Row-major bits, the `(0, 0)` entry most significant.
    fn bits(&self) -> u32 {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .fold(0, |acc, (i, j)| (acc << 1) | self.entry(i, j) as u32)
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

impl fmt::Display for RookMatrix {
    /// Rows separated by `/`, e.g. `10/01`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        f.write_str(&rows.join("/"))
    }
}

impl Serialize for RookMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// All rook matrices of size `n`, by decreasing rank and then decreasing
/// row-major bit pattern.
pub fn enumerate_reps(n: usize) -> Result<Vec<RookMatrix>> {
    if n == 0 || n > MAX_REP_N {
        return Err(Error::OracleScale(format!(
            "rook matrices are enumerated for 1 <= n <= {MAX_REP_N}, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut cols = vec![None; n];
    fn rec(i: usize, used: u32, cols: &mut Vec<Option<usize>>, out: &mut Vec<RookMatrix>) {
        let n = cols.len();
        if i == n {
            out.push(RookMatrix { cols: cols.clone() });
            return;
        }
        cols[i] = None;
        rec(i + 1, used, cols, out);
        for j in (0..n).filter(|j| used & (1 << j) == 0) {
            cols[i] = Some(j);
            rec(i + 1, used | (1 << j), cols, out);
        }
        cols[i] = None;
    }
    rec(0, 0, &mut cols, &mut out);
    out.sort_by(|a, b| b.rank().cmp(&a.rank()).then(b.bits().cmp(&a.bits())));
    Ok(out)
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn check_scale(n: usize, q: u64) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::OracleScale(format!("q = {q} is not prime")));
    }
    let points = (q as u128).checked_pow((n * n) as u32);
    if points.is_none_or(|p| p > MAX_POINTS as u128) {
        return Err(Error::OracleScale(format!(
            "M_{n}(F_{q}) has more than {MAX_POINTS} points"
        )));
    }
    Ok(())
}

type Matrix = Vec<u64>;

fn mat_mul(a: &[u64], b: &[u64], n: usize, q: u64) -> Matrix {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] = (c[i * n + j] + aik * b[k * n + j]) % q;
            }
        }
    }
    c
}

/// Index of a matrix as a base-`q` number.
fn encode(m: &[u64], q: u64) -> u32 {
    m.iter().fold(0u64, |acc, &x| acc * q + x) as u32
}

/// The invertible upper triangular matrices over `F_q`.
fn borel(n: usize, q: u64) -> Vec<Matrix> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = vec![vec![0u64; n * n]];
    for &(i, j) in &slots {
        let values: Vec<u64> = if i == j {
            (1..q).collect()
        } else {
            (0..q).collect()
        };
        out = out
            .into_iter()
            .flat_map(|m| {
                values.iter().map(move |&v| {
                    let mut m = m.clone();
                    m[i * n + j] = v;
                    m
                })
            })
            .collect();
    }
    out
}

fn rook_to_matrix(x: &RookMatrix) -> Matrix {
    let n = x.n();
    (0..n * n).map(|k| x.entry(k / n, k % n) as u64).collect()
}

fn orbit(x: &RookMatrix, q: u64, b: &[Matrix]) -> Vec<u32> {
    let n = x.n();
    let xm = rook_to_matrix(x);
    let left: HashSet<Matrix> = b.iter().map(|u| mat_mul(u, &xm, n, q)).collect();
    let mut points: Vec<u32> = left
        .iter()
        .flat_map(|ux| b.iter().map(move |v| encode(&mat_mul(ux, v, n, q), q)))
        .collect::<HashSet<u32>>()
        .into_iter()
        .collect();
    points.sort_unstable();
    points
}

/// `|B(F_q) x B(F_q)|` by exhaustive enumeration.
pub fn orbit_size(x: &RookMatrix, q: u64) -> Result<u64> {
    check_scale(x.n(), q)?;
    Ok(orbit(x, q, &borel(x.n(), q)).len() as u64)
}

/// The unique `(a, b)` with `(q - 1)^a q^b = sizes[q]` for every measured `q`.
pub fn fit_ab(sizes: &BTreeMap<u64, u64>) -> Result<(u32, u32)> {
    let describe = || {
        sizes
            .iter()
            .map(|(q, s)| format!("q={q}: {s}"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    if sizes.is_empty() {
        return Err(Error::AmbiguousFit("(no measurements)".into()));
    }
    let bound = sizes
        .values()
        .map(|&s| 64 - s.leading_zeros())
        .max()
        .unwrap_or(0);
    let fits: Vec<(u32, u32)> = (0..=bound)
        .flat_map(|a| (0..=bound).map(move |b| (a, b)))
        .filter(|&(a, b)| {
            sizes.iter().all(|(&q, &s)| {
                (q - 1)
                    .checked_pow(a)
                    .and_then(|x| q.checked_pow(b).and_then(|y| x.checked_mul(y)))
                    == Some(s)
            })
        })
        .collect();
    match fits.len() {
        0 => Err(Error::NoFit(describe())),
        1 => Ok(fits[0]),
        _ => Err(Error::AmbiguousFit(describe())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitProfile {
    pub rep: RookMatrix,
    pub sizes: BTreeMap<u64, u64>,
    pub a: u32,
    pub b: u32,
}

impl OrbitProfile {
    pub fn term(&self) -> IntPoly {
        IntPoly::orbit_term(self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidReport {
    pub n: usize,
    pub qs: Vec<u64>,
    pub profiles: Vec<OrbitProfile>,
    pub h: IntPoly,
}

/// Orbit profiles and the assembled H-polynomial of `M_n`.
///
/// For each `q` the orbits are checked to be pairwise disjoint and to cover
/// all `q^{n^2}` matrices.
pub fn monoid_h(n: usize, qs: &[u64]) -> Result<MonoidReport> {
    let reps = enumerate_reps(n)?;
    let mut qs: Vec<u64> = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    if qs.is_empty() {
        return Err(Error::InvalidParameter("at least one q is required".into()));
    }
    for &q in &qs {
        check_scale(n, q)?;
    }
    let mut sizes: Vec<BTreeMap<u64, u64>> = vec![BTreeMap::new(); reps.len()];
    for &q in &qs {
        let b = borel(n, q);
        let orbits: Vec<Vec<u32>> = reps.par_iter().map(|x| orbit(x, q, &b)).collect();
        let total = q.pow((n * n) as u32);
        let mut seen = vec![false; total as usize];
        for (k, pts) in orbits.iter().enumerate() {
            for &p in pts {
                if std::mem::replace(&mut seen[p as usize], true) {
                    return Err(Error::PartitionMismatch(format!(
                        "q = {q}: orbit of {} meets an earlier orbit",
                        reps[k]
                    )));
                }
            }
            sizes[k].insert(q, pts.len() as u64);
        }
        let covered = seen.iter().filter(|&&s| s).count() as u64;
        if covered != total {
            return Err(Error::PartitionMismatch(format!(
                "q = {q}: orbits cover {covered} of {total} matrices"
            )));
        }
    }
    let profiles = reps
        .into_iter()
        .zip(sizes)
        .map(|(rep, sizes)| {
            let (a, b) = fit_ab(&sizes)?;
            Ok(OrbitProfile { rep, sizes, a, b })
        })
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<(u32, u32)> = profiles.iter().map(|p| (p.a, p.b)).collect();
    Ok(MonoidReport {
        n,
        qs,
        h: hpoly_from_cells(&cells),
        profiles,
    })
}
