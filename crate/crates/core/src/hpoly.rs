//! Length polynomials, Eulerian and h-polynomials, and H-polynomials of
//! rationally smooth embeddings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::descent::build_descent_system;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poly::IntPoly;
use crate::rootsys::{CartanType, NodeSet};
use crate::smooth::is_combinatorially_smooth;
use crate::weyl::WeylGroup;

/// `Σ_{w ∈ W^J} t^{l(w)}`; `J = ∅` gives the length polynomial of `W`.
pub fn length_poly(group: &WeylGroup<'_>, j: NodeSet) -> Result<IntPoly> {
    let q = group.quotient(j)?;
    Ok(IntPoly::from_exponents(
        q.elements().iter().map(|w| w.length()),
    ))
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn ascent_mask(perm: &[u8]) -> u32 {
    perm.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] < p[1])
        .fold(0, |m, (i, _)| m | (1 << i))
}

/// Next permutation in lexicographic order; false once the last is reached.
fn next_permutation(p: &mut [u8]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Runs `f` on the ascent mask of every permutation of `{0, ..., n-1}` and
/// sums the resulting count vectors of width `n`. Parallel over the first entry.
fn fold_permutations(n: usize, f: impl Fn(u32, &mut [u64]) + Sync) -> Vec<u64> {
    (0..n as u8)
        .into_par_iter()
        .map(|first| {
            let mut acc = vec![0u64; n.max(1)];
            let mut perm: Vec<u8> = std::iter::once(first)
                .chain((0..n as u8).filter(|&x| x != first))
                .collect();
            loop {
                f(ascent_mask(&perm), &mut acc);
                if !next_permutation(&mut perm[1..]) {
                    break;
                }
            }
            acc
        })
        .reduce(
            || vec![0u64; n.max(1)],
            |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        )
}

fn check_n(n: usize, max: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if n > max {
        return Err(Error::CapExceeded {
            what: format!("{what} over S_{n} (limit n <= {max})"),
            size: factorial(n),
            cap: factorial(max).min(u64::MAX as u128) as u64,
        });
    }
    Ok(())
}

/// `E_n(t) = Σ_{σ ∈ S_n} t^{a(σ)}`, by enumerating `S_n`.
pub fn eulerian(n: usize, limits: &Limits) -> Result<IntPoly> {
    check_n(n, limits.max_eulerian_n, "Eulerian polynomial")?;
    let counts = fold_permutations(n, |mask, acc| acc[mask.count_ones() as usize] += 1);
    let mut p = IntPoly::zero();
    for (k, c) in counts.into_iter().enumerate() {
        p.add_term(k as u32, c);
    }
    Ok(p)
}

/// `h_n(t) = Σ_{(σ, A), A ⊆ A(σ)} (t - 1)^{|A|}`, summing over the faces of
/// the permutahedron.
pub fn permutahedron_h(n: usize, limits: &Limits) -> Result<IntPoly> {
    check_n(n, limits.max_permutahedron_n, "permutahedron face sum")?;
    let faces = fold_permutations(n, |mask, acc| {
        let mut sub = mask;
        loop {
            acc[sub.count_ones() as usize] += 1;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
    });
    Ok(faces
        .into_iter()
        .enumerate()
        .map(|(j, c)| &IntPoly::orbit_term(j as u32, 0) * &IntPoly::monomial(c, 0))
        .sum())
}

fn require_smooth(group: &WeylGroup<'_>, j: NodeSet) -> Result<()> {
    let verdict = is_combinatorially_smooth(group.root_system(), j)?;
    if j == NodeSet::full(group.rank()) {
        return Err(Error::NotProper);
    }
    if !verdict.smooth {
        return Err(Error::NotSmooth {
            subset: j.to_string(),
            reasons: verdict.reasons(),
        });
    }
    Ok(())
}

/// Poincaré polynomial `Σ_{w ∈ W^J} t^{2 ν(w)}` of the toric variety `X(J)`.
pub fn toric_poincare(group: &WeylGroup<'_>, j: NodeSet) -> Result<IntPoly> {
    require_smooth(group, j)?;
    let ds = build_descent_system(group, j)?;
    let stats = ds.nu_stats();
    Ok(IntPoly::from_exponents(
        (0..stats.len()).map(|k| 2 * stats.nu_plain(k)),
    ))
}

/// An H-polynomial with its Poincaré form and bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolyReport {
    pub formula: String,
    pub h: IntPoly,
    pub poincare: IntPoly,
    pub factors: Option<(IntPoly, IntPoly)>,
    pub euler_characteristic: BigInt,
    pub dimension: u32,
    pub negative_coefficients: bool,
}

impl HPolyReport {
    fn from_factors(formula: String, first: IntPoly, second: IntPoly) -> Self {
        let h = &first * &second;
        HPolyReport {
            formula,
            poincare: h.substitute_square(),
            euler_characteristic: h.eval_i64(1),
            dimension: h.degree().unwrap_or(0),
            negative_coefficients: h.has_negative_coefficient() || first.has_negative_coefficient(),
            factors: Some((first, second)),
            h,
        }
    }

    pub fn to_json(&self) -> Value {
        let euler = self.euler_characteristic.to_string();
        json!({
            "formula": self.formula,
            "h": self.h.to_json(),
            "poincare": self.poincare.to_json(),
            "factors": self.factors.as_ref().map(|(a, b)| vec![a.to_json(), b.to_json()]),
            "euler_characteristic": euler.parse::<i64>().map(Value::from).unwrap_or(Value::from(euler)),
            "dimension": self.dimension,
            "negative_coefficients": self.negative_coefficients,
        })
    }
}

/// H-polynomial of the simple embedding of type `J`:
/// `[Σ_{w ∈ W^J} t^{l(w_0) - l(w) + ν(w)}] · [Σ_{v ∈ W^J} t^{l(v)}]` with
/// `ν = Σ_s δ(s) ν_s`.
pub fn simple_embedding_h(group: &WeylGroup<'_>, j: NodeSet) -> Result<HPolyReport> {
    require_smooth(group, j)?;
    let ds = build_descent_system(group, j)?;
    let stats = ds.nu_stats();
    let q = ds.quotient();
    let top = q.longest().length();
    let first = IntPoly::from_exponents(
        q.elements()
            .iter()
            .enumerate()
            .map(|(k, w)| stats.nu_weighted(k).map(|nu| top - w.length() + nu))
            .collect::<Result<Vec<u32>>>()?,
    );
    let second = IntPoly::from_exponents(q.elements().iter().map(|w| w.length()));
    Ok(HPolyReport::from_factors(
        format!(
            "simple embedding, type {}, J = {j}",
            group.root_system().cartan_type()
        ),
        first,
        second,
    ))
}

/// H-polynomial of the wonderful compactification:
/// `[Σ_{u ∈ W} t^{l(w_0) - l(u) + |I_u|}] · [Σ_{v ∈ W} t^{l(v)}]` with
/// `I_u = {s : l(us) > l(u)}`.
pub fn wonderful_h(group: &WeylGroup<'_>) -> Result<HPolyReport> {
    let all = group.enumerate()?;
    let n = group.rank() as u32;
    let top = all.last().map(|w| w.length()).unwrap_or(0);
    let first = IntPoly::from_exponents(
        all.iter()
            .map(|u| top - u.length() + n - u.right_descents().len() as u32),
    );
    let second = IntPoly::from_exponents(all.iter().map(|v| v.length()));
    Ok(HPolyReport::from_factors(
        format!(
            "wonderful embedding, type {}",
            group.root_system().cartan_type()
        ),
        first,
        second,
    ))
}

/// The three kinds of projective semisimple rank-two embeddings, by how many
/// closed orbits differ from `G/B × G/B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RankTwoCase {
    /// None.
    I,
    /// Exactly one.
    II,
    /// Exactly two.
    III,
}

impl fmt::Display for RankTwoCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankTwoCase::I => "I",
            RankTwoCase::II => "II",
            RankTwoCase::III => "III",
        })
    }
}

impl FromStr for RankTwoCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(RankTwoCase::I),
            "II" | "2" => Ok(RankTwoCase::II),
            "III" | "3" => Ok(RankTwoCase::III),
            _ => Err(Error::InvalidParameter(format!(
                "rank-two case must be I, II or III, got {s:?}"
            ))),
        }
    }
}

/// The rank-two type with `N = l(w_0)`. `C2` is represented by `B2`.
pub fn rank2_type(n_long: u32) -> Result<CartanType> {
    match n_long {
        3 => "A2".parse(),
        4 => "B2".parse(),
        6 => "G2".parse(),
        _ => Err(Error::InvalidParameter(format!(
            "N must be 3 (A2), 4 (C2) or 6 (G2), got {n_long}"
        ))),
    }
}

/// Closed forms for the rank-two embeddings; `k` counts the closed orbits
/// isomorphic to `G/B × G/B`.
pub fn rank2_h(case: RankTwoCase, n_long: u32, k: u32) -> Result<HPolyReport> {
    let ct = rank2_type(n_long)?;
    if case == RankTwoCase::I && k == 0 {
        return Err(Error::InvalidParameter(
            "case I needs at least one closed orbit (k >= 1)".into(),
        ));
    }
    let n = n_long;
    let k = k as i64;
    let c = |v: i64| IntPoly::monomial(v, 0);
    let mono = |v: i64, e: u32| IntPoly::monomial(v, e);
    let (first, second) = match case {
        RankTwoCase::I => {
            let first = c(1)
                + mono(k - 1, 1)
                + &c(2 * k) * &IntPoly::geometric(2, n)
                + mono(k - 1, n + 1)
                + mono(1, n + 2);
            (
                first,
                IntPoly::geometric(0, 1) * IntPoly::geometric(0, n - 1),
            )
        }
        RankTwoCase::II | RankTwoCase::III => {
            let extra = i64::from(case == RankTwoCase::III);
            let first = mono(1, n + 3)
                + mono(k, n + 2)
                + mono(3 * k + extra, n + 1)
                + &c(4 * k + 1 + extra) * &IntPoly::geometric(3, n)
                + mono(3 * k + extra, 2)
                + mono(k, 1)
                + c(1);
            (first, IntPoly::geometric(0, n - 1))
        }
    };
    let name = if n == 4 {
        "C2".to_string()
    } else {
        ct.to_string()
    };
    Ok(HPolyReport::from_factors(
        format!("rank-two embedding, case {case}, type {name} (N = {n}), k = {k}"),
        first,
        second,
    ))
}

/// `Σ (t - 1)^a t^b` over a list of cells.
pub fn hpoly_from_cells(cells: &[(u32, u32)]) -> IntPoly {
    cells.iter().map(|&(a, b)| IntPoly::orbit_term(a, b)).sum()
}

/// The embeddings with closed-form H-polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingSpec {
    Simple {
        cartan_type: CartanType,
        j: NodeSet,
    },
    Wonderful {
        cartan_type: CartanType,
    },
    RankTwo {
        case: RankTwoCase,
        n_long: u32,
        k: u32,
    },
}

impl EmbeddingSpec {
    pub fn h_polynomial(&self, limits: Limits) -> Result<HPolyReport> {
        match *self {
            EmbeddingSpec::Simple { cartan_type, j } => {
                let rs = crate::rootsys::RootSystem::new(cartan_type);
                simple_embedding_h(&WeylGroup::with_limits(&rs, limits), j)
            }
            EmbeddingSpec::Wonderful { cartan_type } => {
                let rs = crate::rootsys::RootSystem::new(cartan_type);
                wonderful_h(&WeylGroup::with_limits(&rs, limits))
            }
            EmbeddingSpec::RankTwo { case, n_long, k } => rank2_h(case, n_long, k),
        }
    }
}
