//! Weyl group arithmetic.
//!
//! An element is stored as its exact action on the root lattice: the images
//! `w(α_1), ..., w(α_n)` written in the basis of simple roots. Two elements are
//! equal exactly when these tuples agree.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rootsys::{NodeSet, RootSystem};

type Images = SmallVec<[i8; 64]>;

/// A Weyl group element with its cached length.
#[derive(Clone)]
pub struct WeylElt {
    images: Images,
    rank: u8,
    length: u32,
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for WeylElt {}

impl Hash for WeylElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl PartialOrd for WeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElt {
    /// Length first, then the image tuple.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.length
            .cmp(&other.length)
            .then_with(|| self.images.cmp(&other.images))
    }
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElt(l={}, {:?})", self.length, self.image_vectors())
    }
}

impl WeylElt {
    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// `w(α_j)` in simple-root coordinates.
    pub fn image(&self, j: usize) -> &[i8] {
        let n = self.rank();
        &self.images[j * n..(j + 1) * n]
    }

    pub fn image_vectors(&self) -> Vec<Vec<i32>> {
        (0..self.rank())
            .map(|j| self.image(j).iter().map(|&c| i32::from(c)).collect())
            .collect()
    }

    /// Whether `w(α_j)` is a positive root, i.e. `l(w s_j) > l(w)`.
    pub fn sends_positive(&self, j: usize) -> bool {
        root_is_positive(self.image(j))
    }

    /// `{ s : l(ws) < l(w) }`.
    pub fn right_descents(&self) -> NodeSet {
        NodeSet::from_indices((0..self.rank()).filter(|&j| !self.sends_positive(j)))
    }

    fn first_right_descent(&self) -> Option<usize> {
        (0..self.rank()).find(|&j| !self.sends_positive(j))
    }
}

fn root_is_positive(v: &[i8]) -> bool {
    v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

/// JSON-facing description of an element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementRecord {
    pub word: String,
    pub length: u32,
    pub images: Vec<Vec<i32>>,
}

/// Weyl group operations for a fixed root system.
#[derive(Debug, Clone, Copy)]
pub struct WeylGroup<'a> {
    rs: &'a RootSystem,
    limits: Limits,
}

impl<'a> WeylGroup<'a> {
    pub fn new(rs: &'a RootSystem) -> Self {
        WeylGroup {
            rs,
            limits: Limits::default(),
        }
    }

    pub fn with_limits(rs: &'a RootSystem, limits: Limits) -> Self {
        WeylGroup { rs, limits }
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn order(&self) -> u128 {
        self.rs.cartan_type().weyl_order()
    }

    pub fn identity(&self) -> WeylElt {
        let n = self.rank();
        let mut images: Images = SmallVec::from_elem(0, n * n);
        for j in 0..n {
            images[j * n + j] = 1;
        }
        WeylElt {
            images,
            rank: n as u8,
            length: 0,
        }
    }

    pub fn simple(&self, i: usize) -> WeylElt {
        self.right_mul_simple(&self.identity(), i)
    }

    /// `w · s_i`. Only column `i` of the action is reflected into the others.
    #[allow(clippy::needless_range_loop)]
    pub fn right_mul_simple(&self, w: &WeylElt, i: usize) -> WeylElt {
        let n = self.rank();
        let cartan = self.rs.cartan();
        let col_i: SmallVec<[i8; 8]> = w.image(i).into();
        let mut images = w.images.clone();
        for j in 0..n {
            let base = j * n;
            if j == i {
                for k in 0..n {
                    images[base + k] = -col_i[k];
                }
            } else {
                let a = cartan[i][j] as i8;
                if a != 0 {
                    for k in 0..n {
                        images[base + k] -= a * col_i[k];
                    }
                }
            }
        }
        let length = if root_is_positive(&col_i) {
            w.length + 1
        } else {
            w.length - 1
        };
        WeylElt {
            images,
            rank: w.rank,
            length,
        }
    }

    /// `s_i · w`, with the length recounted from the action.
    pub fn left_mul_simple(&self, i: usize, w: &WeylElt) -> WeylElt {
        let mut out = self.left_mul_raw(i, w);
        out.length = self.count_inversions(&out);
        out
    }

    fn left_mul_raw(&self, i: usize, w: &WeylElt) -> WeylElt {
        let n = self.rank();
        let row = &self.rs.cartan()[i];
        let mut images = w.images.clone();
        for j in 0..n {
            let col = &mut images[j * n..(j + 1) * n];
            let pairing: i32 = (0..n).map(|k| row[k] * i32::from(col[k])).sum();
            col[i] -= pairing as i8;
        }
        WeylElt {
            images,
            rank: w.rank,
            length: w.length,
        }
    }

    /// `u · v`, length recounted from the composed action.
    pub fn multiply(&self, u: &WeylElt, v: &WeylElt) -> WeylElt {
        let n = self.rank();
        let mut images: Images = SmallVec::from_elem(0, n * n);
        for j in 0..n {
            let vj = v.image(j);
            for (k, &c) in vj.iter().enumerate() {
                if c != 0 {
                    let uk = u.image(k);
                    for m in 0..n {
                        images[j * n + m] += c * uk[m];
                    }
                }
            }
        }
        let mut out = WeylElt {
            images,
            rank: u.rank,
            length: 0,
        };
        out.length = self.count_inversions(&out);
        out
    }

    /// `w · s_{i_1} ⋯ s_{i_k}`.
    pub fn right_mul_word(&self, w: &WeylElt, word: &[usize]) -> WeylElt {
        word.iter()
            .fold(w.clone(), |acc, &i| self.right_mul_simple(&acc, i))
    }

    /// The product `s_{i_1} ⋯ s_{i_k}` of 0-based generators.
    pub fn from_word(&self, word: &[usize]) -> WeylElt {
        self.right_mul_word(&self.identity(), word)
    }

    /// Applies `w` to a lattice vector in simple-root coordinates.
    pub fn apply(&self, w: &WeylElt, v: &[i32]) -> Vec<i32> {
        let n = self.rank();
        let mut out = vec![0i32; n];
        for (j, &c) in v.iter().enumerate() {
            if c != 0 {
                for (m, &x) in w.image(j).iter().enumerate() {
                    out[m] += c * i32::from(x);
                }
            }
        }
        out
    }

    /// Number of positive roots sent to negative roots.
    pub fn count_inversions(&self, w: &WeylElt) -> u32 {
        let n = self.rank();
        let mut buf = [0i32; 32];
        let mut count = 0;
        for root in self.rs.positive_roots() {
            buf[..n].fill(0);
            for (j, &c) in root.iter().enumerate() {
                if c != 0 {
                    for (m, &x) in w.image(j).iter().enumerate() {
                        buf[m] += c * i32::from(x);
                    }
                }
            }
            if buf[..n].iter().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
                count += 1;
            }
        }
        count
    }

    /// Reduced word (0-based generators) whose last letter is the smallest
    /// right descent, recursively.
    pub fn reduced_word(&self, w: &WeylElt) -> Vec<usize> {
        let mut word = Vec::with_capacity(w.length as usize);
        let mut cur = w.clone();
        while let Some(i) = cur.first_right_descent() {
            cur = self.right_mul_simple(&cur, i);
            word.push(i);
        }
        word.reverse();
        word
    }

    /// Reduced word written `"s2.s1"`; the identity is `"1"`.
    pub fn word_string(&self, w: &WeylElt) -> String {
        format_word(&self.reduced_word(w))
    }

    /// Parses `"s2.s1"` (any word, not necessarily reduced) or `"1"`.
    pub fn parse_word(&self, text: &str) -> Result<WeylElt> {
        let text = text.trim();
        if text == "1" || text == "e" || text.is_empty() {
            return Ok(self.identity());
        }
        let mut word = Vec::new();
        for part in text.split(['.', ',', ' ']).filter(|p| !p.is_empty()) {
            let j = NodeSet::parse(part, self.rank())?;
            word.push(j.iter().next().expect("parse returns one node"));
        }
        Ok(self.from_word(&word))
    }

    pub fn record(&self, w: &WeylElt) -> ElementRecord {
        ElementRecord {
            word: self.word_string(w),
            length: w.length,
            images: w.image_vectors(),
        }
    }

    pub fn inverse(&self, w: &WeylElt) -> WeylElt {
        let mut word = self.reduced_word(w);
        word.reverse();
        self.from_word(&word)
    }

    /// Whether `w(α_j) > 0` for all `j ∈ J`.
    pub fn is_min_coset_rep(&self, w: &WeylElt, j: NodeSet) -> bool {
        j.iter().all(|s| w.sends_positive(s))
    }

    /// Minimal length element of `w W_J`, by greedily removing right descents in `J`.
    pub fn min_coset_rep(&self, w: &WeylElt, j: NodeSet) -> WeylElt {
        let mut cur = w.clone();
        while let Some(s) = j.iter().find(|&s| !cur.sends_positive(s)) {
            cur = self.right_mul_simple(&cur, s);
        }
        cur
    }

    /// All of `W`, grouped by length. Each element of length `k + 1` is
    /// produced once, from `w = u s` where `s` is the smallest right descent
    /// of `u`.
    pub fn enumerate(&self) -> Result<Vec<WeylElt>> {
        let ct = self.rs.cartan_type();
        self.limits.check(|| format!("W({ct})"), self.order())?;
        Ok(self.grow_by_right(NodeSet::full(self.rank())))
    }

    /// The parabolic subgroup `W_J`.
    pub fn parabolic_subgroup(&self, j: NodeSet) -> Result<Vec<WeylElt>> {
        let size = self.rs.parabolic_order(j)?;
        self.limits.check(|| format!("W_J for J = {j}"), size)?;
        Ok(self.grow_by_right(j))
    }

    fn grow_by_right(&self, gens: NodeSet) -> Vec<WeylElt> {
        let gen_list: Vec<usize> = gens.iter().collect();
        let mut all = vec![self.identity()];
        let mut level_start = 0;
        loop {
            let level = &all[level_start..];
            let next: Vec<WeylElt> = level
                .par_iter()
                .flat_map_iter(|w| {
                    gen_list
                        .iter()
                        .copied()
                        .filter(|&i| w.sends_positive(i))
                        .filter_map(move |i| {
                            let u = self.right_mul_simple(w, i);
                            (u.first_right_descent() == Some(i)).then_some(u)
                        })
                })
                .collect();
            if next.is_empty() {
                break;
            }
            level_start = all.len();
            all.extend(next);
        }
        all
    }

    /// `W^J`, grown by left multiplication. `W^J` is closed under taking
    /// suffixes of reduced words, so `u ∈ W^J` of length `k + 1` is reached
    /// exactly once, from `s u` with `s` its smallest left descent.
    pub fn quotient(&self, j: NodeSet) -> Result<ParabolicQuotient> {
        let n = self.rank();
        if !j.is_subset(NodeSet::full(n)) {
            return Err(Error::InvalidSubset(format!("{j} is not a subset of S")));
        }
        let size = self.order() / self.rs.parabolic_order(j)?;
        self.limits.check(|| format!("W^J for J = {j}"), size)?;

        let mut elements = vec![self.identity()];
        let mut level: Vec<(WeylElt, WeylElt)> = vec![(self.identity(), self.identity())];
        loop {
            let next: Vec<(WeylElt, WeylElt)> = level
                .par_iter()
                .flat_map_iter(|(w, winv)| {
                    (0..n)
                        .filter(|&s| winv.sends_positive(s))
                        .filter_map(move |s| {
                            let mut u = self.left_mul_raw(s, w);
                            u.length = w.length + 1;
                            if !self.is_min_coset_rep(&u, j) {
                                return None;
                            }
                            let uinv = self.right_mul_simple(winv, s);
                            (uinv.first_right_descent() == Some(s)).then_some((u, uinv))
                        })
                })
                .collect();
            if next.is_empty() {
                break;
            }
            elements.extend(next.iter().map(|(u, _)| u.clone()));
            level = next;
        }
        debug_assert_eq!(elements.len() as u128, size);
        let longest = elements.len() - 1;
        let index = elements
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k))
            .collect();
        Ok(ParabolicQuotient {
            j,
            elements,
            longest,
            index,
        })
    }

    /// The longest element `w_0` of `W`, computed without enumerating `W`.
    pub fn longest_element(&self) -> WeylElt {
        let mut w = self.identity();
        while let Some(i) = (0..self.rank()).find(|&i| w.sends_positive(i)) {
            w = self.right_mul_simple(&w, i);
        }
        w
    }

    /// Bruhat order by the subword property: `u ≤ v` iff `u` is the product of
    /// a subword of a reduced word of `v`. The set of subword products is
    /// built letter by letter and is capped by [`Limits::max_elements`].
    pub fn bruhat_leq(&self, u: &WeylElt, v: &WeylElt) -> Result<bool> {
        if u.length > v.length {
            return Ok(false);
        }
        let word = self.reduced_word(v);
        let mut products: HashSet<WeylElt> = HashSet::from([self.identity()]);
        for &i in &word {
            let extended: Vec<WeylElt> = products
                .iter()
                .map(|x| self.right_mul_simple(x, i))
                .collect();
            products.extend(extended);
            self.limits
                .check(|| "Bruhat interval".to_string(), products.len() as u128)?;
        }
        Ok(products.contains(u))
    }

    /// Length histogram `[#{w : l(w) = k}]_k` of a list of elements.
    pub fn length_histogram(elements: &[WeylElt]) -> Vec<u64> {
        let max = elements.iter().map(|w| w.length).max().unwrap_or(0) as usize;
        let mut hist = vec![0u64; max + 1];
        for w in elements {
            hist[w.length as usize] += 1;
        }
        hist
    }
}

pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter()
        .map(|i| format!("s{}", i + 1))
        .collect::<Vec<_>>()
        .join(".")
}

/// Minimal coset representatives `W^J` in length order, with the unique
/// longest element last.
#[derive(Debug, Clone)]
pub struct ParabolicQuotient {
    j: NodeSet,
    elements: Vec<WeylElt>,
    longest: usize,
    index: HashMap<WeylElt, usize>,
}

impl ParabolicQuotient {
    pub fn j(&self) -> NodeSet {
        self.j
    }

    pub fn elements(&self) -> &[WeylElt] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn longest(&self) -> &WeylElt {
        &self.elements[self.longest]
    }

    pub fn position(&self, w: &WeylElt) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &WeylElt) -> bool {
        self.index.contains_key(w)
    }

    pub fn length_histogram(&self) -> Vec<u64> {
        WeylGroup::length_histogram(&self.elements)
    }
}

/// Bruhat order on a whole small group, tabulated from the subword property.
///
/// With `v = v' s` and `l(v') < l(v)`, the subword products of a reduced word
/// of `v` are those of `v'` together with their right multiples by `s`. The
/// lower ideals are stored as bitsets.
pub struct BruhatOracle {
    elements: Vec<WeylElt>,
    index: HashMap<WeylElt, usize>,
    ideals: Vec<Vec<u64>>,
}

impl BruhatOracle {
    /// Refuses groups above `max_order` elements.
    pub fn new(group: &WeylGroup<'_>, max_order: u128) -> Result<Self> {
        if group.order() > max_order {
            return Err(Error::CapExceeded {
                what: format!("Bruhat oracle for {}", group.root_system().cartan_type()),
                size: group.order(),
                cap: max_order as u64,
            });
        }
        let elements = group.enumerate()?;
        let index: HashMap<WeylElt, usize> = elements
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k))
            .collect();
        let size = elements.len();
        let rank = group.rank();
        let right: Vec<Vec<usize>> = elements
            .iter()
            .map(|w| {
                (0..rank)
                    .map(|i| index[&group.right_mul_simple(w, i)])
                    .collect()
            })
            .collect();
        let words = size.div_ceil(64);
        let mut ideals: Vec<Vec<u64>> = Vec::with_capacity(size);
        for (v, elt) in elements.iter().enumerate() {
            let mut bits = vec![0u64; words];
            match elt.first_right_descent() {
                None => bits[v / 64] |= 1 << (v % 64),
                Some(s) => {
                    let parent = right[v][s];
                    debug_assert!(parent < v);
                    let base = &ideals[parent];
                    for (w, chunk) in base.iter().enumerate() {
                        let mut chunk = *chunk;
                        bits[w] |= chunk;
                        while chunk != 0 {
                            let b = chunk.trailing_zeros() as usize;
                            chunk &= chunk - 1;
                            let x = right[w * 64 + b][s];
                            bits[x / 64] |= 1 << (x % 64);
                        }
                    }
                }
            }
            ideals.push(bits);
        }
        Ok(BruhatOracle {
            elements,
            index,
            ideals,
        })
    }

    pub fn elements(&self) -> &[WeylElt] {
        &self.elements
    }

    pub fn index_of(&self, w: &WeylElt) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn leq_index(&self, u: usize, v: usize) -> bool {
        self.ideals[v][u / 64] & (1 << (u % 64)) != 0
    }

    pub fn leq(&self, u: &WeylElt, v: &WeylElt) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(a), Some(b)) => self.leq_index(a, b),
            _ => false,
        }
    }

    /// `|[1, v]|`.
    pub fn ideal_size(&self, v: usize) -> usize {
        self.ideals[v].iter().map(|c| c.count_ones() as usize).sum()
    }
}
