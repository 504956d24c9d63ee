//! Combinatorially smooth subsets `J ⊆ S`.
//!
//! `J` is smooth when
//!
//! - (a) every `s ∈ S \ J` that fails to commute with `J` is attached to a
//!   single `t ∈ J`, and the component `C ∋ t` is a simply-laced path with `t`
//!   at one end, and
//! - (b) every component of `J` is attached to exactly one `s ∈ S \ J`.
//!
//! Non-commuting is Dynkin adjacency.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::rootsys::{CartanType, Family, NodeSet, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `s` fails to commute with two or more nodes of `J`.
    MultipleAttachments { node: usize, attached: NodeSet },
    /// The component containing the attached node is not a simply-laced path.
    NotTypeAChain {
        node: usize,
        attached: usize,
        component: NodeSet,
    },
    /// The attached node is interior to its path component.
    NotEndNode {
        node: usize,
        attached: usize,
        component: NodeSet,
    },
    /// A component of `J` is attached to zero or several external nodes.
    ComponentAttachments {
        component: NodeSet,
        external: NodeSet,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MultipleAttachments { node, attached } => write!(
                f,
                "s{} does not commute with {} nodes of J {attached}",
                node + 1,
                attached.len()
            ),
            Violation::NotTypeAChain {
                node,
                attached,
                component,
            } => write!(
                f,
                "component {component} containing s{} (attached to s{}) is not a type-A chain",
                attached + 1,
                node + 1
            ),
            Violation::NotEndNode {
                node,
                attached,
                component,
            } => write!(
                f,
                "s{} (attached to s{}) is not an end node of the chain {component}",
                attached + 1,
                node + 1
            ),
            Violation::ComponentAttachments {
                component,
                external,
            } => write!(
                f,
                "component {component} has {} attached external nodes {external}",
                external.len()
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothnessVerdict {
    pub subset: NodeSet,
    pub smooth: bool,
    pub violations: Vec<Violation>,
}

impl SmoothnessVerdict {
    pub fn reasons(&self) -> String {
        self.violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Decides smoothness of `J` and lists every violated condition. `J = ∅` is smooth.
pub fn is_combinatorially_smooth(rs: &RootSystem, j: NodeSet) -> Result<SmoothnessVerdict> {
    let g = rs.dynkin();
    let components = g.components(j)?;
    let outside = NodeSet::full(rs.rank()).difference(j);
    let mut violations = Vec::new();

    for s in outside.iter() {
        let attached = g.attached_in(s, j);
        match attached.len() {
            0 => {}
            1 => {
                let t = attached.iter().next().unwrap();
                let component = *components.iter().find(|c| c.contains(t)).unwrap();
                if !g.is_simply_laced_path(component) {
                    violations.push(Violation::NotTypeAChain {
                        node: s,
                        attached: t,
                        component,
                    });
                } else if !g.end_nodes(component).contains(t) {
                    violations.push(Violation::NotEndNode {
                        node: s,
                        attached: t,
                        component,
                    });
                }
            }
            _ => violations.push(Violation::MultipleAttachments { node: s, attached }),
        }
    }

    for &component in &components {
        let external = NodeSet::from_indices(
            outside
                .iter()
                .filter(|&s| !g.attached_in(s, component).is_empty()),
        );
        if external.len() != 1 {
            violations.push(Violation::ComponentAttachments {
                component,
                external,
            });
        }
    }

    Ok(SmoothnessVerdict {
        subset: j,
        smooth: violations.is_empty(),
        violations,
    })
}

/// All smooth proper subsets, sorted by size and then by node list.
pub fn enumerate_smooth_subsets(rs: &RootSystem) -> Vec<NodeSet> {
    let full = NodeSet::full(rs.rank());
    let mut out: Vec<NodeSet> = (0..full.bits())
        .map(NodeSet::from_bits)
        .filter(|&j| {
            is_combinatorially_smooth(rs, j)
                .map(|v| v.smooth)
                .unwrap_or(false)
        })
        .collect();
    out.sort_by(NodeSet::canonical_cmp);
    out
}

/// One entry of the type-by-type table of smooth subsets, tagged with the
/// letter of the item that lists it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TabulatedEntry {
    pub item: char,
    pub subset: NodeSet,
}

/// The hand-written classification table, instantiated at the given rank.
///
/// The `E8` table is reproduced as printed, including the entry `{s1,s2,s5,s6}`
/// in item (e), which is not smooth under the criterion.
pub fn tabulated_smooth_subsets(ct: CartanType) -> Vec<TabulatedEntry> {
    let n = ct.rank();
    let range = NodeSet::label_range;
    let set = |labels: &[usize]| NodeSet::from_labels(labels.iter().copied());
    let mut out = Vec::new();
    let mut push = |item: char, subset: NodeSet| out.push(TabulatedEntry { item, subset });
    push('a', NodeSet::EMPTY);
    match ct.family() {
        Family::A if n == 1 => {}
        Family::A => {
            for i in 1..n {
                push('b', range(1, i));
            }
            for j in 2..=n {
                push('c', range(j, n));
            }
            for i in 1..=n {
                for j in (i + 3)..=n {
                    push('d', range(1, i).union(range(j, n)));
                }
            }
        }
        Family::B if n == 2 => {
            push('b', set(&[1]));
            push('c', set(&[2]));
        }
        Family::B | Family::C => {
            for i in 1..n {
                push('b', range(1, i));
            }
            push('c', set(&[n]));
            for i in 1..=n.saturating_sub(3) {
                push('d', range(1, i).union(set(&[n])));
            }
        }
        Family::D => {
            for i in 1..=n - 3 {
                push('b', range(1, i));
            }
            push('c', set(&[n - 1]));
            push('d', set(&[n]));
            for i in 1..=n - 4 {
                push('e', range(1, i).union(set(&[n - 1])));
            }
            for i in 1..=n - 4 {
                push('f', range(1, i).union(set(&[n])));
            }
        }
        Family::E => {
            let table: &[(char, &[&[usize]])] = match n {
                6 => &[
                    ('b', &[&[1], &[1, 2]]),
                    ('c', &[&[5], &[4, 5]]),
                    ('d', &[&[6]]),
                    ('e', &[&[1, 5], &[1, 2, 5], &[1, 4, 5]]),
                    ('f', &[&[1, 6]]),
                    ('g', &[&[5, 6]]),
                    ('h', &[&[1, 5, 6]]),
                ],
                7 => &[
                    ('b', &[&[1], &[1, 2], &[1, 2, 3]]),
                    ('c', &[&[6], &[5, 6]]),
                    ('d', &[&[7]]),
                    (
                        'e',
                        &[
                            &[1, 6],
                            &[1, 2, 6],
                            &[1, 2, 3, 6],
                            &[1, 5, 6],
                            &[1, 2, 5, 6],
                        ],
                    ),
                    ('f', &[&[6, 7]]),
                    ('g', &[&[1, 7], &[1, 2, 7]]),
                    ('h', &[&[1, 6, 7], &[1, 2, 6, 7]]),
                ],
                _ => &[
                    ('b', &[&[1], &[1, 2], &[1, 2, 3], &[1, 2, 3, 4]]),
                    ('c', &[&[7], &[6, 7]]),
                    ('d', &[&[8]]),
                    (
                        'e',
                        &[
                            &[1, 7],
                            &[1, 2, 7],
                            &[1, 2, 3, 7],
                            &[1, 2, 3, 4, 7],
                            &[1, 6, 7],
                            &[1, 2, 6, 7],
                            &[1, 2, 3, 6, 7],
                            &[1, 2, 5, 6],
                        ],
                    ),
                    ('f', &[&[7, 8]]),
                    ('g', &[&[1, 8], &[1, 2, 8], &[1, 2, 3, 8]]),
                    ('h', &[&[1, 7, 8], &[1, 2, 7, 8]]),
                ],
            };
            for (item, subsets) in table {
                for s in subsets.iter() {
                    push(*item, set(s));
                }
            }
        }
        Family::F => {
            push('b', set(&[1]));
            push('b', set(&[1, 2]));
            push('c', set(&[4]));
            push('c', set(&[3, 4]));
            push('d', set(&[1, 4]));
        }
        Family::G => {
            push('b', set(&[1]));
            push('c', set(&[2]));
        }
    }
    out
}

/// Set difference between the computed classification and the table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableComparison {
    pub cartan_type: CartanType,
    /// Smooth by the criterion but absent from the table.
    pub computed_only: Vec<NodeSet>,
    /// Listed in the table but not smooth by the criterion.
    pub table_only: Vec<NodeSet>,
}

impl TableComparison {
    pub fn is_exact(&self) -> bool {
        self.computed_only.is_empty() && self.table_only.is_empty()
    }
}

pub fn compare_with_table(rs: &RootSystem) -> TableComparison {
    let computed = enumerate_smooth_subsets(rs);
    let table: Vec<NodeSet> = tabulated_smooth_subsets(rs.cartan_type())
        .into_iter()
        .map(|e| e.subset)
        .collect();
    let mut computed_only: Vec<NodeSet> = computed
        .iter()
        .filter(|j| !table.contains(j))
        .copied()
        .collect();
    let mut table_only: Vec<NodeSet> = table
        .iter()
        .filter(|j| !computed.contains(j))
        .copied()
        .collect();
    computed_only.sort_by(NodeSet::canonical_cmp);
    table_only.sort_by(NodeSet::canonical_cmp);
    TableComparison {
        cartan_type: rs.cartan_type(),
        computed_only,
        table_only,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn empty_is_smooth_everywhere() {
        for t in ["A1", "A4", "B3", "C5", "D4", "E6", "E8", "F4", "G2"] {
            assert!(
                is_combinatorially_smooth(&rs(t), NodeSet::EMPTY)
                    .unwrap()
                    .smooth
            );
        }
    }

    #[test]
    fn named_violations() {
        for n in 3..=6 {
            let b = RootSystem::new(CartanType::new(Family::B, n).unwrap());
            let v = is_combinatorially_smooth(&b, NodeSet::from_labels([n - 1, n])).unwrap();
            assert!(!v.smooth);
            assert!(v
                .violations
                .iter()
                .any(|x| matches!(x, Violation::NotTypeAChain { .. })));
        }
        for n in 4..=7 {
            let d = RootSystem::new(CartanType::new(Family::D, n).unwrap());
            let v = is_combinatorially_smooth(&d, NodeSet::label_range(1, n - 2)).unwrap();
            assert!(!v.smooth);
            assert!(v
                .violations
                .iter()
                .any(|x| matches!(x, Violation::ComponentAttachments { external, .. } if external.len() == 2)));
        }
        let a6 = rs("A6");
        let ok = NodeSet::label_range(1, 2).union(NodeSet::label_range(5, 6));
        assert!(is_combinatorially_smooth(&a6, ok).unwrap().smooth);
        let bad = NodeSet::label_range(1, 2).union(NodeSet::label_range(4, 6));
        let v = is_combinatorially_smooth(&a6, bad).unwrap();
        assert!(v
            .violations
            .iter()
            .any(|x| matches!(x, Violation::MultipleAttachments { node: 2, .. })));
        // D_n with J = A_(n-1) attaches s_n to an interior node.
        let d5 = rs("D5");
        let v = is_combinatorially_smooth(&d5, NodeSet::label_range(1, 4)).unwrap();
        assert!(v
            .violations
            .iter()
            .any(|x| matches!(x, Violation::NotEndNode { .. })));
        assert!(!v.reasons().is_empty());
        assert!(is_combinatorially_smooth(&d5, NodeSet::from_labels([6])).is_err());
    }

    #[test]
    fn small_lists() {
        let sets = |t: &str| enumerate_smooth_subsets(&rs(t));
        let l = |v: &[&[usize]]| -> Vec<NodeSet> {
            v.iter()
                .map(|s| NodeSet::from_labels(s.iter().copied()))
                .collect()
        };
        assert_eq!(sets("G2"), l(&[&[], &[1], &[2]]));
        assert_eq!(sets("B2"), l(&[&[], &[1], &[2]]));
        assert_eq!(sets("F4"), l(&[&[], &[1], &[4], &[1, 2], &[1, 4], &[3, 4]]));
        assert_eq!(sets("A1"), l(&[&[]]));
    }

    #[test]
    fn classical_and_exceptional_tables() {
        for n in 1..=7 {
            let r = RootSystem::new(CartanType::new(Family::A, n).unwrap());
            assert!(compare_with_table(&r).is_exact(), "A{n}");
        }
        for n in 2..=7 {
            let r = RootSystem::new(CartanType::new(Family::B, n).unwrap());
            assert!(compare_with_table(&r).is_exact(), "B{n}");
        }
        for n in 3..=7 {
            let r = RootSystem::new(CartanType::new(Family::C, n).unwrap());
            assert!(compare_with_table(&r).is_exact(), "C{n}");
        }
        for n in 4..=8 {
            let r = RootSystem::new(CartanType::new(Family::D, n).unwrap());
            assert!(compare_with_table(&r).is_exact(), "D{n}");
        }
        for t in ["E6", "E7", "F4", "G2"] {
            let c = compare_with_table(&rs(t));
            assert!(c.is_exact(), "{t}: {c:?}");
        }
    }

    #[test]
    fn e8_discrepancy() {
        let c = compare_with_table(&rs("E8"));
        assert_eq!(c.table_only, vec![NodeSet::from_labels([1, 2, 5, 6])]);
        assert_eq!(c.computed_only, vec![NodeSet::from_labels([1, 2, 3, 7, 8])]);
    }

    #[test]
    fn proper_subset_never_full() {
        for t in ["A3", "E6", "G2"] {
            let r = rs(t);
            assert!(!enumerate_smooth_subsets(&r).contains(&NodeSet::full(r.rank())));
            assert!(
                !is_combinatorially_smooth(&r, NodeSet::full(r.rank()))
                    .unwrap()
                    .smooth
            );
        }
    }
}
