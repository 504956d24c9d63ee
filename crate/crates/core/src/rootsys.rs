//! Cartan types, root systems and Dynkin graphs.
//!
//! Nodes are indexed from 0 internally and printed as `s1, s2, ...`. The
//! numbering is the one used by the smoothness classification:
//!
//! - `A_n`, `B_n`, `C_n`, `F_4`, `G_2`: the usual chain, end nodes `s1` and `sn`.
//!   In `B_n` the last simple root is short, in `C_n` it is long. In `F_4` the
//!   double bond joins `s2` and `s3`.
//! - `D_n`: chain `s1 .. s(n-2)` with `s(n-1)` and `sn` both attached to `s(n-2)`.
//! - `E_n`: chain `s1 .. s(n-1)` with `sn` attached to `s3`, `s4`, `s5` for
//!   `n = 6, 7, 8`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank representable by a [`NodeSet`].
pub const MAX_RANK: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A finite crystallographic Cartan type such as `A5` or `E7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    /// Admissible ranks: `A n≥1`, `B n≥2`, `C n≥3`, `D n≥4`, `E 6..=8`, `F4`, `G2`.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let reason = match family {
            Family::A if rank < 1 => Some("A_n needs n >= 1"),
            Family::B if rank < 2 => Some("B_n needs n >= 2"),
            Family::C if rank < 3 => Some("C_n needs n >= 3 (use B2 for rank two)"),
            Family::D if rank < 4 => Some("D_n needs n >= 4"),
            Family::E if !(6..=8).contains(&rank) => Some("E_n needs n in 6..=8"),
            Family::F if rank != 4 => Some("F exists only in rank 4"),
            Family::G if rank != 2 => Some("G exists only in rank 2"),
            _ if rank > MAX_RANK => Some("rank exceeds 32"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(Error::InadmissibleRank {
                family: family.letter(),
                rank,
                reason,
            }),
            None => Ok(CartanType { family, rank }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1_152,
            Family::G => 12,
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Cartan matrix `a[i][j] = <α_i^∨, α_j>` in the documented numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut a = vec![vec![0i32; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C | Family::F | Family::G => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Family::E => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 4, n - 1);
            }
        }
        match self.family {
            // α_n short: <α_n^∨, α_{n-1}> = -2.
            Family::B => a[n - 1][n - 2] = -2,
            // α_n long: <α_{n-1}^∨, α_n> = -2.
            Family::C => a[n - 2][n - 1] = -2,
            // α1, α2 long; α3, α4 short.
            Family::F => a[2][1] = -2,
            // α1 short, α2 long.
            Family::G => a[0][1] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Parses `"A5"`, `"e7"`, `"B_3"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let digits = chars.as_str().trim_start_matches('_');
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidType(s.to_string()));
        }
        let rank = digits
            .parse()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CartanType {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A subset of the simple reflections, stored as a bitmask over 0-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NodeSet(u32);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn from_bits(bits: u32) -> Self {
        NodeSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// All nodes `0..rank`.
    pub fn full(rank: usize) -> Self {
        if rank >= 32 {
            NodeSet(u32::MAX)
        } else {
            NodeSet((1u32 << rank) - 1)
        }
    }

    /// Builds a set from 0-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        NodeSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// Builds a set from 1-based node labels, as written `s1, s2, ...`.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Self {
        Self::from_indices(labels.into_iter().map(|l| l - 1))
    }

    /// Nodes `s_lo ..= s_hi` (1-based, inclusive). Empty when `lo > hi`.
    pub fn label_range(lo: usize, hi: usize) -> Self {
        Self::from_labels(lo..=hi)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// 0-based indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// 1-based labels in increasing order.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Parses `"s1,s3,s4"` (also accepts bare numbers and `{}` / `∅` for the
    /// empty set) and validates against `rank`.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let trimmed = text
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim();
        let mut set = NodeSet::EMPTY;
        if trimmed.is_empty() || trimmed == "∅" || trimmed.eq_ignore_ascii_case("empty") {
            return Ok(set);
        }
        for part in trimmed.split(',') {
            let name = part.trim();
            let unknown = || Error::UnknownNode {
                name: name.to_string(),
                rank,
            };
            let digits = name.strip_prefix(['s', 'S']).unwrap_or(name);
            let label: usize = digits.parse().map_err(|_| unknown())?;
            if label == 0 || label > rank {
                return Err(unknown());
            }
            if set.contains(label - 1) {
                return Err(Error::InvalidSubset(format!("node {name} listed twice")));
            }
            set.insert(label - 1);
        }
        Ok(set)
    }

    /// Canonical ordering: by size, then lexicographically by node list.
    pub fn canonical_cmp(&self, other: &NodeSet) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.labels().cmp(&other.labels()))
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "{{")?;
        for (k, l) in self.labels().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "s{l}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for NodeSet {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let names: Vec<String> = self.labels().into_iter().map(|l| format!("s{l}")).collect();
        names.serialize(serializer)
    }
}

/// An edge of a Dynkin graph. `multiplicity` is `a_ij * a_ji` (1, 2 or 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Bond {
    pub i: usize,
    pub j: usize,
    pub multiplicity: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinGraph {
    rank: usize,
    bonds: Vec<Bond>,
    neighbours: Vec<NodeSet>,
    multiplicity: Vec<Vec<u8>>,
}

impl DynkinGraph {
    pub fn from_cartan(cartan: &[Vec<i32>]) -> Self {
        let rank = cartan.len();
        let mut bonds = Vec::new();
        let mut neighbours = vec![NodeSet::EMPTY; rank];
        let mut multiplicity = vec![vec![0u8; rank]; rank];
        for i in 0..rank {
            for j in i + 1..rank {
                let m = cartan[i][j] * cartan[j][i];
                if m != 0 {
                    bonds.push(Bond {
                        i,
                        j,
                        multiplicity: m as u8,
                    });
                    neighbours[i].insert(j);
                    neighbours[j].insert(i);
                    multiplicity[i][j] = m as u8;
                    multiplicity[j][i] = m as u8;
                }
            }
        }
        DynkinGraph {
            rank,
            bonds,
            neighbours,
            multiplicity,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn neighbours(&self, i: usize) -> NodeSet {
        self.neighbours[i]
    }

    /// Bond multiplicity between `i` and `j` (0 when they commute).
    pub fn multiplicity(&self, i: usize, j: usize) -> u8 {
        self.multiplicity[i][j]
    }

    /// Whether `s_i s_j ≠ s_j s_i`.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.multiplicity[i][j] != 0
    }

    /// Connected components `π₀(J)` of the induced subgraph, ordered by their
    /// smallest node.
    pub fn components(&self, j: NodeSet) -> Result<Vec<NodeSet>> {
        if !j.is_subset(NodeSet::full(self.rank)) {
            return Err(Error::InvalidSubset(format!(
                "{j} is not a subset of s1..s{}",
                self.rank
            )));
        }
        let mut seen = NodeSet::EMPTY;
        let mut out = Vec::new();
        for start in j.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = NodeSet::EMPTY;
            let mut queue = VecDeque::from([start]);
            comp.insert(start);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbours[v].intersection(j).iter() {
                    if !comp.contains(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        Ok(out)
    }

    /// Nodes of `J` not commuting with `s`.
    pub fn attached_in(&self, s: usize, j: NodeSet) -> NodeSet {
        self.neighbours[s].intersection(j)
    }

    /// Whether the induced subgraph on `c` is a simply-laced path.
    pub fn is_simply_laced_path(&self, c: NodeSet) -> bool {
        let nodes: Vec<usize> = c.iter().collect();
        let mut edges = 0;
        for (k, &a) in nodes.iter().enumerate() {
            let deg = self.neighbours[a].intersection(c).len();
            if deg > 2 {
                return false;
            }
            for &b in &nodes[k + 1..] {
                match self.multiplicity[a][b] {
                    0 => {}
                    1 => edges += 1,
                    _ => return false,
                }
            }
        }
        // Connected with |c| - 1 edges and max degree 2.
        edges + 1 == nodes.len() && self.components(c).map(|v| v.len() == 1).unwrap_or(false)
    }

    /// End nodes of the induced subgraph (degree at most 1 within `c`).
    pub fn end_nodes(&self, c: NodeSet) -> NodeSet {
        NodeSet::from_indices(
            c.iter()
                .filter(|&v| self.neighbours[v].intersection(c).len() <= 1),
        )
    }
}

/// A connected component of an induced subdiagram together with its type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub nodes: NodeSet,
    pub cartan_type: CartanType,
}

/// Root system with integer roots written in the basis of simple roots.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i32>>,
    positive_roots: Vec<Vec<i32>>,
    root_index: HashMap<Vec<i32>, usize>,
    dynkin: DynkinGraph,
}

impl RootSystem {
    /// Closes the simple roots under all simple reflections.
    pub fn new(cartan_type: CartanType) -> Self {
        let cartan = cartan_type.cartan_matrix();
        let n = cartan.len();
        let simple: Vec<Vec<i32>> = (0..n)
            .map(|i| (0..n).map(|k| i32::from(k == i)).collect())
            .collect();
        let mut all: HashSet<Vec<i32>> = simple.iter().cloned().collect();
        let mut queue: VecDeque<Vec<i32>> = simple.iter().cloned().collect();
        while let Some(root) = queue.pop_front() {
            for i in 0..n {
                let image = reflect(&cartan, i, &root);
                if all.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut positive_roots: Vec<Vec<i32>> = all
            .into_iter()
            .filter(|r| r.iter().all(|&c| c >= 0))
            .collect();
        positive_roots.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
        let root_index = positive_roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        let dynkin = DynkinGraph::from_cartan(&cartan);
        RootSystem {
            cartan_type,
            cartan,
            positive_roots,
            root_index,
            dynkin,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn dynkin(&self) -> &DynkinGraph {
        &self.dynkin
    }

    /// Simple roots as unit vectors.
    pub fn simple_roots(&self) -> Vec<Vec<i32>> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|k| i32::from(k == i)).collect())
            .collect()
    }

    /// Positive roots sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.positive_roots
    }

    /// `|Φ|`, counting both signs.
    pub fn root_count(&self) -> usize {
        2 * self.positive_roots.len()
    }

    /// Whether `v` is a root (of either sign).
    pub fn is_root(&self, v: &[i32]) -> bool {
        if self.root_index.contains_key(v) {
            return true;
        }
        let neg: Vec<i32> = v.iter().map(|c| -c).collect();
        self.root_index.contains_key(&neg)
    }

    /// Index of a positive root in [`Self::positive_roots`].
    pub fn positive_root_index(&self, v: &[i32]) -> Option<usize> {
        self.root_index.get(v).copied()
    }

    /// `s_i(v) = v - <α_i^∨, v> α_i`.
    pub fn reflect(&self, i: usize, v: &[i32]) -> Vec<i32> {
        reflect(&self.cartan, i, v)
    }

    /// Components of `J` with their induced Cartan types.
    pub fn components(&self, j: NodeSet) -> Result<Vec<Component>> {
        self.dynkin
            .components(j)?
            .into_iter()
            .map(|nodes| {
                Ok(Component {
                    nodes,
                    cartan_type: self.identify(nodes),
                })
            })
            .collect()
    }

    /// `|W_J|` from the types of the components of `J`.
    pub fn parabolic_order(&self, j: NodeSet) -> Result<u128> {
        Ok(self
            .components(j)?
            .iter()
            .map(|c| c.cartan_type.weyl_order())
            .product())
    }

    /// Cartan type of a connected subdiagram.
    fn identify(&self, c: NodeSet) -> CartanType {
        let g = &self.dynkin;
        let nodes: Vec<usize> = c.iter().collect();
        let k = nodes.len();
        let ty = |f| CartanType { family: f, rank: k };
        let mut heavy = None;
        for (x, &a) in nodes.iter().enumerate() {
            for &b in &nodes[x + 1..] {
                let m = g.multiplicity(a, b);
                if m == 3 {
                    return ty(Family::G);
                }
                if m == 2 {
                    heavy = Some((a, b));
                }
            }
        }
        let degree = |v: usize| g.neighbours(v).intersection(c).len();
        if let Some((a, b)) = heavy {
            if k == 2 {
                return ty(Family::B);
            }
            if degree(a) == 2 && degree(b) == 2 && k == 4 {
                return ty(Family::F);
            }
            // The short root of the double bond has |a_ij| = 2 in its row.
            let short = if self.cartan[a][b] == -2 { a } else { b };
            return if degree(short) == 1 {
                ty(Family::B)
            } else {
                ty(Family::C)
            };
        }
        let Some(branch) = nodes.iter().copied().find(|&v| degree(v) == 3) else {
            return ty(Family::A);
        };
        let mut arms: Vec<usize> = g
            .neighbours(branch)
            .intersection(c)
            .iter()
            .map(|start| {
                let mut len = 1;
                let (mut prev, mut cur) = (branch, start);
                loop {
                    let next = g
                        .neighbours(cur)
                        .intersection(c)
                        .iter()
                        .find(|&v| v != prev);
                    match next {
                        Some(v) => {
                            len += 1;
                            prev = cur;
                            cur = v;
                        }
                        None => break len,
                    }
                }
            })
            .collect();
        arms.sort_unstable();
        match arms.as_slice() {
            [1, 1, _] => ty(Family::D),
            _ => ty(Family::E),
        }
    }
}

fn reflect(cartan: &[Vec<i32>], i: usize, v: &[i32]) -> Vec<i32> {
    let pairing: i32 = cartan[i].iter().zip(v).map(|(a, x)| a * x).sum();
    let mut out = v.to_vec();
    out[i] -= pairing;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(rs("A2").positive_roots().len(), 3);
        assert_eq!(rs("B2").positive_roots().len(), 4);
        assert_eq!(rs("G2").positive_roots().len(), 6);
        for t in [
            "A1", "A5", "B3", "B5", "C3", "C4", "D4", "D6", "E6", "E7", "E8", "F4",
        ] {
            let r = rs(t);
            assert_eq!(
                r.positive_roots().len(),
                r.cartan_type().positive_root_count(),
                "{t}"
            );
        }
    }

    #[test]
    fn b2_has_one_double_bond() {
        let r = rs("B2");
        assert_eq!(
            r.dynkin().bonds(),
            &[Bond {
                i: 0,
                j: 1,
                multiplicity: 2
            }]
        );
    }

    #[test]
    fn b_and_c_are_transposes() {
        let b = CartanType::new(Family::B, 4).unwrap().cartan_matrix();
        let c = CartanType::new(Family::C, 4).unwrap().cartan_matrix();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(b[i][j], c[j][i]);
            }
        }
        assert_ne!(b, c);
    }

    #[test]
    fn highest_roots() {
        // Highest root coefficients are a classical check on the numbering.
        let last = |t: &str| rs(t).positive_roots().last().unwrap().clone();
        assert_eq!(last("E6"), vec![1, 2, 3, 2, 1, 2]);
        assert_eq!(last("E7"), vec![1, 2, 3, 4, 3, 2, 2]);
        assert_eq!(last("E8"), vec![2, 3, 4, 5, 6, 4, 2, 3]);
        assert_eq!(last("B3"), vec![1, 2, 2]);
        assert_eq!(last("C3"), vec![2, 2, 1]);
        assert_eq!(last("G2"), vec![3, 2]);
        assert_eq!(last("F4"), vec![2, 3, 4, 2]);
        assert_eq!(last("D5"), vec![1, 2, 2, 1, 1]);
    }

    #[test]
    fn e_type_end_nodes() {
        for (t, ends, branch) in [
            ("E6", [1, 5, 6], 3),
            ("E7", [1, 6, 7], 4),
            ("E8", [1, 7, 8], 5),
        ] {
            let r = rs(t);
            let g = r.dynkin();
            let all = NodeSet::full(r.rank());
            assert_eq!(g.end_nodes(all), NodeSet::from_labels(ends), "{t}");
            let n = r.rank();
            assert!(g.adjacent(branch - 1, n - 1), "{t}");
            // s1..s(n-1) is the A_(n-1) subdiagram.
            assert!(g.is_simply_laced_path(NodeSet::label_range(1, n - 1)));
        }
        let d = rs("D5");
        assert_eq!(
            d.dynkin().end_nodes(NodeSet::full(5)),
            NodeSet::from_labels([1, 4, 5])
        );
    }

    #[test]
    fn simple_reflections_permute_roots() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let r = rs(t);
            for root in r.positive_roots() {
                for i in 0..r.rank() {
                    assert!(r.is_root(&r.reflect(i, root)), "{t}");
                }
            }
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn bond_multiplicity_matches_cartan() {
        for t in ["B4", "C5", "F4", "G2", "E7"] {
            let r = rs(t);
            let a = r.cartan();
            for i in 0..r.rank() {
                for j in 0..r.rank() {
                    if i != j {
                        assert_eq!(i32::from(r.dynkin().multiplicity(i, j)), a[i][j] * a[j][i]);
                    }
                }
            }
        }
    }

    #[test]
    fn components_examples() {
        let a4 = rs("A4");
        let comps = a4
            .dynkin()
            .components(NodeSet::from_labels([1, 2, 4]))
            .unwrap();
        assert_eq!(
            comps,
            vec![NodeSet::from_labels([1, 2]), NodeSet::from_labels([4])]
        );
        assert!(a4.dynkin().components(NodeSet::EMPTY).unwrap().is_empty());
        assert!(a4.dynkin().components(NodeSet::from_labels([5])).is_err());

        let a7 = rs("A7");
        let j = NodeSet::label_range(1, 2).union(NodeSet::label_range(5, 7));
        assert_eq!(a7.dynkin().components(j).unwrap().len(), 2);
    }

    #[test]
    fn component_types() {
        let e8 = rs("E8");
        let ty = |r: &RootSystem, j: NodeSet| {
            let c = r.components(j).unwrap();
            assert_eq!(c.len(), 1);
            c[0].cartan_type.to_string()
        };
        assert_eq!(ty(&e8, NodeSet::label_range(1, 7)), "A7");
        assert_eq!(ty(&e8, NodeSet::from_labels([4, 5, 6, 8])), "D4");
        assert_eq!(ty(&e8, NodeSet::from_labels([3, 4, 5, 6, 7, 8])), "E6");
        assert_eq!(ty(&e8, NodeSet::label_range(2, 8)), "E7");
        let f4 = rs("F4");
        assert_eq!(ty(&f4, NodeSet::from_labels([1, 2, 3])), "B3");
        assert_eq!(ty(&f4, NodeSet::from_labels([2, 3, 4])), "C3");
        assert_eq!(ty(&f4, NodeSet::full(4)), "F4");
        let b5 = rs("B5");
        assert_eq!(ty(&b5, NodeSet::from_labels([3, 4, 5])), "B3");
        assert_eq!(
            e8.parabolic_order(NodeSet::label_range(1, 7)).unwrap(),
            40320
        );
        let e7 = rs("E7");
        let quotient =
            e7.cartan_type().weyl_order() / e7.parabolic_order(NodeSet::label_range(1, 6)).unwrap();
        assert_eq!(quotient, 576);
    }

    #[test]
    fn parse_types_and_subsets() {
        assert_eq!("A5".parse::<CartanType>().unwrap().to_string(), "A5");
        assert_eq!("e_7".parse::<CartanType>().unwrap().to_string(), "E7");
        assert!("C2".parse::<CartanType>().is_err());
        assert!("D3".parse::<CartanType>().is_err());
        assert!("E9".parse::<CartanType>().is_err());
        assert!("H3".parse::<CartanType>().is_err());
        assert!("A".parse::<CartanType>().is_err());
        assert!(matches!(
            "F5".parse::<CartanType>(),
            Err(Error::InadmissibleRank { .. })
        ));

        assert_eq!(
            NodeSet::parse("s1,s3,s4", 4).unwrap(),
            NodeSet::from_labels([1, 3, 4])
        );
        assert_eq!(NodeSet::parse("", 4).unwrap(), NodeSet::EMPTY);
        assert_eq!(NodeSet::parse("{}", 4).unwrap(), NodeSet::EMPTY);
        assert!(matches!(
            NodeSet::parse("s5", 4),
            Err(Error::UnknownNode { rank: 4, .. })
        ));
        assert!(NodeSet::parse("s1,s1", 4).is_err());
        assert!(NodeSet::parse("t1", 4).is_err());
        assert_eq!(NodeSet::from_labels([1, 3]).to_string(), "{s1,s3}");
    }
}
