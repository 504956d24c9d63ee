//! Descent systems `(W^J, S^J)` and the statistics `ν_s`.
//!
//! `S^J_s = W_J s W_J ∩ W^J` is obtained by projecting `W_J s` to minimal
//! coset representatives: every left coset meeting the double coset contains
//! some `u s` with `u ∈ W_J`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::IntPoly2;
use crate::rootsys::{CartanType, NodeSet};
use crate::weyl::{ParabolicQuotient, WeylElt, WeylGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `w < w r`.
    Ascent,
    /// `(w r)_0 < w`.
    Descent,
}

/// The class `S^J_s` for one `s ∈ S \ J`.
#[derive(Debug, Clone)]
pub struct DescentClass {
    /// 0-based index of `s`.
    pub node: usize,
    /// Sorted by length, then by reduced word.
    pub elements: Vec<WeylElt>,
    pub words: Vec<Vec<usize>>,
    /// Number of components of `J` not commuting with `s`.
    pub attached_components: usize,
    /// `|C_s| + 1`, or `None` when `s` meets two or more components.
    pub delta: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct DescentSystem<'a> {
    group: WeylGroup<'a>,
    j: NodeSet,
    quotient: ParabolicQuotient,
    classes: Vec<DescentClass>,
    lookup: HashMap<WeylElt, (usize, usize)>,
}

/// Builds `(W^J, S^J)` for a proper subset `J`.
///
/// The build never fails because of `δ`; classes whose `δ` is undefined carry
/// `None` and only the weighted statistic refuses them.
pub fn build_descent_system<'a>(group: &WeylGroup<'a>, j: NodeSet) -> Result<DescentSystem<'a>> {
    let rs = group.root_system();
    let full = NodeSet::full(rs.rank());
    if !j.is_subset(full) {
        return Err(Error::InvalidSubset(format!("{j} is not a subset of S")));
    }
    if j == full {
        return Err(Error::NotProper);
    }
    let quotient = group.quotient(j)?;
    let wj = group.parabolic_subgroup(j)?;
    let components = rs.dynkin().components(j)?;

    let classes: Vec<DescentClass> = full
        .difference(j)
        .iter()
        .map(|s| {
            let set: HashSet<WeylElt> = wj
                .par_iter()
                .map(|u| group.min_coset_rep(&group.right_mul_simple(u, s), j))
                .collect();
            let mut keyed: Vec<(WeylElt, Vec<usize>)> = set
                .into_iter()
                .map(|r| {
                    let word = group.reduced_word(&r);
                    (r, word)
                })
                .collect();
            keyed.sort_by(|a, b| a.0.length().cmp(&b.0.length()).then_with(|| a.1.cmp(&b.1)));
            let attached: Vec<&NodeSet> = components
                .iter()
                .filter(|c| !rs.dynkin().attached_in(s, **c).is_empty())
                .collect();
            let delta = match attached.len() {
                0 => Some(1),
                1 => Some(attached[0].len() as u32 + 1),
                _ => None,
            };
            let (elements, words) = keyed.into_iter().unzip();
            DescentClass {
                node: s,
                elements,
                words,
                attached_components: attached.len(),
                delta,
            }
        })
        .collect();

    let mut lookup = HashMap::new();
    for (ci, class) in classes.iter().enumerate() {
        for (k, r) in class.elements.iter().enumerate() {
            lookup.insert(r.clone(), (ci, k));
        }
    }
    Ok(DescentSystem {
        group: *group,
        j,
        quotient,
        classes,
        lookup,
    })
}

impl<'a> DescentSystem<'a> {
    pub fn group(&self) -> &WeylGroup<'a> {
        &self.group
    }

    pub fn j(&self) -> NodeSet {
        self.j
    }

    pub fn quotient(&self) -> &ParabolicQuotient {
        &self.quotient
    }

    pub fn classes(&self) -> &[DescentClass] {
        &self.classes
    }

    pub fn class_of(&self, s: usize) -> Option<&DescentClass> {
        self.classes.iter().find(|c| c.node == s)
    }

    /// All of `S^J`, class by class.
    pub fn descent_set(&self) -> impl Iterator<Item = &WeylElt> {
        self.classes.iter().flat_map(|c| c.elements.iter())
    }

    pub fn descent_set_len(&self) -> usize {
        self.classes.iter().map(|c| c.elements.len()).sum()
    }

    /// The node `s` with `r ∈ S^J_s`.
    pub fn class_node(&self, r: &WeylElt) -> Option<usize> {
        self.lookup.get(r).map(|&(ci, _)| self.classes[ci].node)
    }

    /// `δ(s)` for `s ∈ S \ J`.
    pub fn delta(&self, s: usize) -> Result<u32> {
        let class = self
            .class_of(s)
            .ok_or_else(|| Error::InvalidParameter(format!("s{} is not in S \\ J", s + 1)))?;
        class.delta.ok_or(Error::DeltaUndefined {
            node: s + 1,
            components: class.attached_components,
        })
    }

    pub fn ascent_descent(&self, w: &WeylElt, r: &WeylElt) -> Result<Direction> {
        if !self.quotient.contains(w) {
            return Err(Error::NotInQuotient(self.group.word_string(w)));
        }
        let &(ci, k) = self
            .lookup
            .get(r)
            .ok_or_else(|| Error::NotInDescentSet(self.group.word_string(r)))?;
        Ok(self.direction(w, &self.classes[ci].words[k]))
    }

    /// Compares `l((w r)_0)` with `l(w)`; the two elements are Bruhat
    /// comparable, so lengths decide.
    fn direction(&self, w: &WeylElt, r_word: &[usize]) -> Direction {
        let wr = self.group.right_mul_word(w, r_word);
        let projected = self.group.min_coset_rep(&wr, self.j);
        if projected.length() < w.length() {
            Direction::Descent
        } else {
            Direction::Ascent
        }
    }

    /// `A^J_s(w)` as indices into the class of `s`, for every class.
    pub fn ascent_indices(&self, w: &WeylElt) -> Vec<Vec<usize>> {
        self.classes
            .iter()
            .map(|c| {
                c.words
                    .iter()
                    .enumerate()
                    .filter(|(_, word)| self.direction(w, word) == Direction::Ascent)
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect()
    }

    /// Tabulates `ν_s` on all of `W^J`.
    pub fn nu_stats(&self) -> AugmentedPoset {
        let nu: Vec<Vec<u32>> = self
            .quotient
            .elements()
            .par_iter()
            .map(|w| {
                self.classes
                    .iter()
                    .map(|c| {
                        c.words
                            .iter()
                            .filter(|word| self.direction(w, word) == Direction::Ascent)
                            .count() as u32
                    })
                    .collect()
            })
            .collect();
        AugmentedPoset {
            nodes: self.classes.iter().map(|c| c.node).collect(),
            deltas: self.classes.iter().map(|c| c.delta).collect(),
            attached: self.classes.iter().map(|c| c.attached_components).collect(),
            nu,
        }
    }

    /// `Σ_w t1^{ν_s(w)} t2^{ν_s'(w)}` for `S \ J = {s, s'}` with `s < s'`.
    pub fn two_variable_euler(&self) -> Result<IntPoly2> {
        if self.classes.len() != 2 {
            return Err(Error::WrongComplementSize(self.classes.len()));
        }
        let stats = self.nu_stats();
        let mut h = IntPoly2::zero();
        for row in &stats.nu {
            h.add_term(row[0], row[1], 1);
        }
        Ok(h)
    }

    /// JSON-facing dump of the augmented poset.
    pub fn dump(&self, stats: &AugmentedPoset) -> PosetDump {
        let g = &self.group;
        let name = |s: usize| format!("s{}", s + 1);
        let classes = self
            .classes
            .iter()
            .map(|c| ClassDump {
                node: name(c.node),
                delta: c.delta,
                elements: c.elements.iter().map(|r| g.word_string(r)).collect(),
            })
            .collect();
        let elements = self
            .quotient
            .elements()
            .par_iter()
            .enumerate()
            .map(|(k, w)| {
                let nu = self
                    .classes
                    .iter()
                    .zip(&stats.nu[k])
                    .map(|(c, &v)| (name(c.node), serde_json::Value::from(v)))
                    .collect();
                let ascents = self
                    .ascent_indices(w)
                    .iter()
                    .zip(&self.classes)
                    .flat_map(|(idx, c)| idx.iter().map(|&i| g.word_string(&c.elements[i])))
                    .collect();
                ElementDump {
                    word: g.word_string(w),
                    length: w.length(),
                    nu,
                    nu_plain: stats.nu_plain(k),
                    nu_weighted: stats.nu_weighted(k).ok(),
                    ascents,
                }
            })
            .collect();
        PosetDump {
            cartan_type: g.root_system().cartan_type(),
            j: self.j,
            quotient_size: self.quotient.len(),
            classes,
            elements,
        }
    }
}

/// `(W^J, ≤, {ν_s})` with the statistics tabulated in quotient order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedPoset {
    /// The nodes of `S \ J`, in increasing order.
    pub nodes: Vec<usize>,
    pub deltas: Vec<Option<u32>>,
    attached: Vec<usize>,
    /// `nu[k][c]` is `ν_s(w)` for the `k`-th element of `W^J` and `s = nodes[c]`.
    pub nu: Vec<Vec<u32>>,
}

impl AugmentedPoset {
    pub fn len(&self) -> usize {
        self.nu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nu.is_empty()
    }

    pub fn nu_s(&self, k: usize, s: usize) -> Option<u32> {
        let c = self.nodes.iter().position(|&n| n == s)?;
        Some(self.nu[k][c])
    }

    pub fn nu_plain(&self, k: usize) -> u32 {
        self.nu[k].iter().sum()
    }

    /// `Σ_s δ(s) ν_s(w)`.
    pub fn nu_weighted(&self, k: usize) -> Result<u32> {
        self.nu[k]
            .iter()
            .zip(&self.deltas)
            .enumerate()
            .map(|(c, (v, d))| {
                d.map(|d| d * v).ok_or(Error::DeltaUndefined {
                    node: self.nodes[c] + 1,
                    components: self.attached[c],
                })
            })
            .sum()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassDump {
    pub node: String,
    pub delta: Option<u32>,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementDump {
    pub word: String,
    pub length: u32,
    pub nu: serde_json::Map<String, serde_json::Value>,
    pub nu_plain: u32,
    pub nu_weighted: Option<u32>,
    pub ascents: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PosetDump {
    pub cartan_type: CartanType,
    pub j: NodeSet,
    pub quotient_size: usize,
    pub classes: Vec<ClassDump>,
    pub elements: Vec<ElementDump>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, RootSystem};
    use crate::weyl::format_word;

    fn rs(f: Family, n: usize) -> RootSystem {
        RootSystem::new(CartanType::new(f, n).unwrap())
    }

    fn words(ds: &DescentSystem<'_>, s: usize) -> Vec<String> {
        ds.class_of(s)
            .unwrap()
            .words
            .iter()
            .map(|w| format_word(w))
            .collect()
    }

    #[test]
    fn a2_single_class() {
        let r = rs(Family::A, 2);
        let g = WeylGroup::new(&r);
        let ds = build_descent_system(&g, NodeSet::from_labels([2])).unwrap();
        assert_eq!(ds.classes().len(), 1);
        assert_eq!(words(&ds, 0), vec!["s1", "s2.s1"]);
        assert_eq!(ds.delta(0).unwrap(), 2);
    }

    #[test]
    fn type_b_projective_class() {
        for l in 2..=6 {
            let r = rs(Family::B, l);
            let g = WeylGroup::new(&r);
            let ds = build_descent_system(&g, NodeSet::label_range(1, l - 1)).unwrap();
            let expected: Vec<String> = (0..l)
                .map(|i| format_word(&(i..l).collect::<Vec<_>>()))
                .rev()
                .collect();
            assert_eq!(words(&ds, l - 1), expected);
            assert_eq!(ds.delta(l - 1).unwrap(), l as u32);
        }
    }

    #[test]
    fn type_a_all_but_one() {
        for n in 1..=6 {
            let r = rs(Family::A, n);
            let g = WeylGroup::new(&r);
            let j = NodeSet::label_range(2, n);
            let ds = build_descent_system(&g, j).unwrap();
            assert_eq!(ds.delta(0).unwrap(), n as u32);
            let expected: Vec<String> = (1..=n)
                .map(|i| format_word(&(0..i).rev().collect::<Vec<_>>()))
                .collect();
            assert_eq!(words(&ds, 0), expected);
            let stats = ds.nu_stats();
            for (k, w) in ds.quotient().elements().iter().enumerate() {
                // w = a_i with i = l(w)
                assert_eq!(stats.nu_s(k, 0).unwrap(), n as u32 - w.length());
            }
        }
    }

    #[test]
    fn type_a_all_but_two() {
        for n in 2..=6 {
            let r = rs(Family::A, n);
            let g = WeylGroup::new(&r);
            let ds = build_descent_system(&g, NodeSet::label_range(3, n)).unwrap();
            let stats = ds.nu_stats();
            assert_eq!(ds.delta(0).unwrap(), 1);
            assert_eq!(ds.delta(1).unwrap(), n as u32 - 1);
            let mut seen = 0;
            for p in 0..=n {
                for q in 1..=n {
                    let mut word: Vec<usize> = (0..p).rev().collect();
                    word.extend((1..q).rev());
                    let w = g.from_word(&word);
                    let k = ds.quotient().position(&w).expect("a_p b_q in W^J");
                    assert_eq!(w.length() as usize, p + q - 1);
                    assert_eq!(stats.nu_s(k, 0).unwrap(), u32::from(p < q));
                    assert_eq!(stats.nu_s(k, 1).unwrap(), (n - q) as u32);
                    seen += 1;
                }
            }
            assert_eq!(seen, ds.quotient().len());
            let h = ds.two_variable_euler().unwrap();
            let mut expected = IntPoly2::zero();
            for k in 1..=n as u32 {
                expected.add_term(1, n as u32 - k, k as i64);
                expected.add_term(0, n as u32 - k, (n as u32 + 1 - k) as i64);
            }
            assert_eq!(h, expected);
        }
    }

    #[test]
    fn two_variable_a2() {
        let r = rs(Family::A, 2);
        let g = WeylGroup::new(&r);
        let ds = build_descent_system(&g, NodeSet::EMPTY).unwrap();
        let h = ds.two_variable_euler().unwrap();
        let mut expected = IntPoly2::zero();
        expected.add_term(1, 1, 1);
        expected.add_term(0, 1, 2);
        expected.add_term(1, 0, 2);
        expected.add_term(0, 0, 1);
        assert_eq!(h, expected);
        let one = num_bigint::BigInt::from(1);
        assert_eq!(h.eval(&one, &one), num_bigint::BigInt::from(6));
        let ds1 = build_descent_system(&g, NodeSet::from_labels([1])).unwrap();
        assert_eq!(ds1.two_variable_euler(), Err(Error::WrongComplementSize(1)));
    }

    /// `w(ε_m)` as a signed index, from `w(α_1), ..., w(α_l)`.
    fn signed_permutation(w: &WeylElt) -> Vec<i32> {
        let l = w.rank();
        let to_eps = |c: &[i8]| -> Vec<i32> {
            (0..l)
                .map(|m| c[m] as i32 - if m == 0 { 0 } else { c[m - 1] as i32 })
                .collect()
        };
        let mut eps = vec![vec![0i32; l]; l];
        eps[l - 1] = to_eps(w.image(l - 1));
        for m in (0..l - 1).rev() {
            let a = to_eps(w.image(m));
            eps[m] = a.iter().zip(&eps[m + 1]).map(|(x, y)| x + y).collect();
        }
        eps.iter()
            .map(|v| {
                let i = v.iter().position(|&x| x != 0).unwrap();
                assert_eq!(v.iter().filter(|&&x| x != 0).count(), 1);
                v[i] * (i as i32 + 1)
            })
            .collect()
    }

    #[test]
    fn type_b_cube() {
        for l in 2..=6 {
            let r = rs(Family::B, l);
            let g = WeylGroup::new(&r);
            let ds = build_descent_system(&g, NodeSet::label_range(1, l - 1)).unwrap();
            let stats = ds.nu_stats();
            let top = ds.quotient().longest().length();
            assert_eq!(top as usize, l * (l + 1) / 2);
            for (k, w) in ds.quotient().elements().iter().enumerate() {
                let perm = signed_permutation(w);
                let pos: Vec<i32> = perm.iter().copied().filter(|&x| x > 0).collect();
                let kk = pos.len();
                assert!(perm[..kk].iter().all(|&x| x > 0));
                assert!(pos.windows(2).all(|p| p[0] < p[1]));
                assert_eq!(stats.nu_s(k, l - 1).unwrap() as usize, kk);
                assert_eq!(stats.nu_weighted(k).unwrap() as usize, kk * l);
                // With this labelling the codimension is Σ (l + 1 - i) over the
                // positive images; the generating function is the same.
                let codim: i32 = pos.iter().map(|&i| l as i32 + 1 - i).sum();
                assert_eq!((top - w.length()) as i32, codim);
                // r_i = s_i ... s_l is an ascent iff i <= k.
                let asc = &ds.ascent_indices(w)[0];
                let class = ds.class_of(l - 1).unwrap();
                let mut firsts: Vec<usize> = asc.iter().map(|&a| class.words[a][0] + 1).collect();
                firsts.sort();
                assert_eq!(firsts, (1..=kk).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn extremes_of_quotient() {
        let r = rs(Family::D, 4);
        let g = WeylGroup::new(&r);
        let ds = build_descent_system(&g, NodeSet::from_labels([1])).unwrap();
        let stats = ds.nu_stats();
        assert_eq!(stats.nu_plain(0) as usize, ds.descent_set_len());
        assert_eq!(stats.nu_plain(ds.quotient().len() - 1), 0);
        let id = g.identity();
        let top = ds.quotient().longest().clone();
        for r in ds.descent_set() {
            assert_eq!(ds.ascent_descent(&id, r).unwrap(), Direction::Ascent);
            assert_eq!(ds.ascent_descent(&top, r).unwrap(), Direction::Descent);
        }
    }

    #[test]
    fn undefined_delta() {
        // D4 with J = {s1, s3, s4}: s2 meets three components.
        let r = rs(Family::D, 4);
        let g = WeylGroup::new(&r);
        let ds = build_descent_system(&g, NodeSet::from_labels([1, 3, 4])).unwrap();
        assert_eq!(
            ds.delta(1),
            Err(Error::DeltaUndefined {
                node: 2,
                components: 3
            })
        );
        let stats = ds.nu_stats();
        assert!(stats.nu_weighted(0).is_err());
        assert!(ds.dump(&stats).elements[0].nu_weighted.is_none());
    }

    #[test]
    fn argument_errors() {
        let r = rs(Family::A, 3);
        let g = WeylGroup::new(&r);
        assert_eq!(
            build_descent_system(&g, NodeSet::full(3)).unwrap_err(),
            Error::NotProper
        );
        let ds = build_descent_system(&g, NodeSet::from_labels([2])).unwrap();
        let s2 = g.simple(1);
        let s1 = g.simple(0);
        assert!(matches!(
            ds.ascent_descent(&s2, &s1),
            Err(Error::NotInQuotient(_))
        ));
        assert!(matches!(
            ds.ascent_descent(&s1, &g.identity()),
            Err(Error::NotInDescentSet(_))
        ));
    }

    #[test]
    fn dump_shape() {
        let r = rs(Family::A, 2);
        let g = WeylGroup::new(&r);
        let ds = build_descent_system(&g, NodeSet::from_labels([2])).unwrap();
        let stats = ds.nu_stats();
        let d = ds.dump(&stats);
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["quotient_size"], 3);
        assert_eq!(v["elements"][0]["word"], "1");
        assert_eq!(v["elements"][0]["nu"]["s1"], 2);
        assert_eq!(
            v["elements"][0]["ascents"],
            serde_json::json!(["s1", "s2.s1"])
        );
        assert_eq!(v["elements"][2]["nu_weighted"], 0);
    }
}
