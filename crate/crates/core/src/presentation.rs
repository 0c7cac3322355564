//! Group presentations as exact syntactic objects.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::TwoComplex;
use crate::error::PresentationError;
use crate::snf::smith_diagonal;
use crate::word::{canonical_cyclic, Word};

/// Ordered generators and ordered relator words. Relator letters must use
/// declared generators only.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        Presentation { generators, relators }
    }

    pub fn has_generator(&self, g: &str) -> bool {
        self.generators.iter().any(|x| x == g)
    }

    pub fn check_letters(&self) -> Result<(), PresentationError> {
        for r in &self.relators {
            for letter in &r.0 {
                if !self.has_generator(&letter.gen) {
                    return Err(PresentationError::UnknownGenerator(letter.gen.clone()));
                }
            }
        }
        Ok(())
    }

    /// `generators - relators`, the deficiency bookkeeping value.
    pub fn deficiency(&self) -> i64 {
        self.generators.len() as i64 - self.relators.len() as i64
    }
}

/// Presentation of the fundamental group of a connected complex: one
/// generator per edge, the cell boundary words as relators, plus one
/// single-letter relator per spanning-tree edge. The default tree comes
/// from a breadth-first search over edges in lexicographic order, started
/// at the lexicographically least vertex.
pub fn pi1_from_complex(
    cx: &TwoComplex,
    tree: Option<&BTreeSet<String>>,
) -> Result<Presentation, PresentationError> {
    let components = cx.connected_components();
    if components.len() != 1 {
        return Err(PresentationError::Disconnected { components: components.len() });
    }
    let tree_edges = match tree {
        Some(t) => {
            validate_spanning_tree(cx, t)?;
            t.clone()
        }
        None => default_spanning_tree(cx),
    };
    let generators: Vec<String> = cx.edges().iter().map(|e| e.name.clone()).collect();
    let mut relators: Vec<Word> =
        cx.cells().iter().map(|c| c.boundary.to_word()).collect();
    for t in &tree_edges {
        relators.push(Word::gen(t.clone()));
    }
    Ok(Presentation::new(generators, relators))
}

fn default_spanning_tree(cx: &TwoComplex) -> BTreeSet<String> {
    let mut tree = BTreeSet::new();
    let Some(start) = cx.vertices().iter().min() else {
        return tree;
    };
    let mut sorted_edges: Vec<_> = cx.edges().to_vec();
    sorted_edges.sort_by(|a, b| a.name.cmp(&b.name));
    let mut visited: BTreeSet<&str> = BTreeSet::from([start.as_str()]);
    let mut queue = VecDeque::from([start.as_str()]);
    while let Some(v) = queue.pop_front() {
        for e in &sorted_edges {
            let other = if e.tail == v && !visited.contains(e.head.as_str()) {
                Some(e.head.as_str())
            } else if e.head == v && !visited.contains(e.tail.as_str()) {
                Some(e.tail.as_str())
            } else {
                None
            };
            if let Some(u) = other {
                visited.insert(u);
                tree.insert(e.name.clone());
                queue.push_back(u);
            }
        }
    }
    tree
}

fn validate_spanning_tree(
    cx: &TwoComplex,
    tree: &BTreeSet<String>,
) -> Result<(), PresentationError> {
    for t in tree {
        if cx.edge(t).is_none() {
            return Err(PresentationError::InvalidTree {
                reason: format!("unknown edge {t:?}"),
            });
        }
    }
    if tree.len() + 1 != cx.vertices().len() {
        return Err(PresentationError::InvalidTree {
            reason: format!(
                "{} edges cannot span {} vertices",
                tree.len(),
                cx.vertices().len()
            ),
        });
    }
    // reachability over tree edges only
    let mut visited: BTreeSet<&str> = BTreeSet::new();
    if let Some(start) = cx.vertices().iter().min() {
        visited.insert(start);
        let mut queue = VecDeque::from([start.as_str()]);
        while let Some(v) = queue.pop_front() {
            for name in tree {
                let e = cx.edge(name).expect("checked above");
                for (x, y) in [(&e.tail, &e.head), (&e.head, &e.tail)] {
                    if x == v && visited.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    if visited.len() != cx.vertices().len() {
        return Err(PresentationError::InvalidTree {
            reason: "tree does not reach every vertex".to_string(),
        });
    }
    Ok(())
}

/// Free rank and torsion divisors of the abelianization: Smith normal form
/// of the relator-by-generator exponent-sum matrix. Torsion divisors are
/// at least 2br and listed in divisibility order.
pub fn abelian_invariants(p: &Presentation) -> (usize, Vec<BigInt>) {
    let matrix: Vec<Vec<BigInt>> = p
        .relators
        .iter()
        .map(|r| p.generators.iter().map(|g| BigInt::from(r.exponent_sum(g))).collect())
        .collect();
    let diag = if matrix.is_empty() || p.generators.is_empty() {
        Vec::new()
    } else {
        smith_diagonal(matrix)
    };
    let nonzero: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero()).collect();
    let rank = p.generators.len() - nonzero.len();
    let torsion = nonzero.into_iter().filter(|d| *d > BigInt::from(1)).collect();
    (rank, torsion)
}

/// A generator bijection with per-generator inversion under which the
/// relator multisets agree up to rotation, free/cyclic reduction, and
/// inversion. This is syntactic identity of presentations, not group
/// isomorphism. Exhaustive search, deterministic.
pub fn rename_isomorphic(
    p: &Presentation,
    q: &Presentation,
) -> Option<BTreeMap<String, (String, i8)>> {
    if p.generators.len() != q.generators.len() || p.relators.len() != q.relators.len() {
        return None;
    }
    let targets: Vec<Word> = q.relators.iter().map(canonical_cyclic).collect();
    let mut assignment: BTreeMap<String, (String, i8)> = BTreeMap::new();
    let mut used: BTreeSet<String> = BTreeSet::new();
    if assign(p, q, &targets, 0, &mut assignment, &mut used) {
        Some(assignment)
    } else {
        None
    }
}

fn assign(
    p: &Presentation,
    q: &Presentation,
    targets: &[Word],
    idx: usize,
    assignment: &mut BTreeMap<String, (String, i8)>,
    used: &mut BTreeSet<String>,
) -> bool {
    if idx == p.generators.len() {
        return relators_match(p, assignment, targets);
    }
    let g = p.generators[idx].clone();
    for h in &q.generators {
        if used.contains(h) {
            continue;
        }
        for sign in [1i8, -1] {
            assignment.insert(g.clone(), (h.clone(), sign));
            used.insert(h.clone());
            if assign(p, q, targets, idx + 1, assignment, used) {
                return true;
            }
            used.remove(h);
            assignment.remove(&g);
        }
    }
    false
}

fn relators_match(
    p: &Presentation,
    assignment: &BTreeMap<String, (String, i8)>,
    targets: &[Word],
) -> bool {
    let mut mapped: Vec<Word> = p
        .relators
        .iter()
        .map(|r| {
            let letters = r
                .0
                .iter()
                .map(|l| {
                    let (h, sign) = &assignment[&l.gen];
                    crate::word::Letter::new(h.clone(), l.exp * sign)
                })
                .collect();
            canonical_cyclic(&Word(letters))
        })
        .collect();
    let mut expected = targets.to_vec();
    mapped.sort_by(|a, b| a.0.cmp(&b.0));
    expected.sort_by(|a, b| a.0.cmp(&b.0));
    mapped == expected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{standard_complex, Cell, Edge, TwoComplex};
    use crate::word::Word;

    fn w(text: &str) -> Word {
        Word::parse_compact(text).unwrap()
    }

    #[test]
    fn pi1_of_a_wedge_loop_is_free() {
        let cx = TwoComplex::new(
            vec!["v".into()],
            vec![Edge { name: "a".into(), tail: "v".into(), head: "v".into() }],
            vec![],
        );
        let p = pi1_from_complex(&cx, None).unwrap();
        assert_eq!(p.generators, vec!["a"]);
        assert!(p.relators.is_empty());
    }

    #[test]
    fn pi1_rejects_disconnected() {
        let cx = TwoComplex::new(vec!["p".into(), "q".into()], vec![], vec![]);
        assert!(matches!(
            pi1_from_complex(&cx, None),
            Err(PresentationError::Disconnected { components: 2 })
        ));
    }

    #[test]
    fn pi1_with_explicit_tree_appends_tree_relators() {
        let cx = TwoComplex::new(
            vec!["p".into(), "q".into()],
            vec![
                Edge { name: "a".into(), tail: "p".into(), head: "q".into() },
                Edge { name: "b".into(), tail: "p".into(), head: "q".into() },
            ],
            vec![Cell {
                name: "c".into(),
                boundary: crate::complex::BoundaryWord::from_word(&w("a b^-1")),
            }],
        );
        let tree = BTreeSet::from(["b".to_string()]);
        let p = pi1_from_complex(&cx, Some(&tree)).unwrap();
        assert_eq!(p.relators, vec![w("a b^-1"), w("b")]);
        let bad = BTreeSet::from(["a".to_string(), "b".to_string()]);
        assert!(pi1_from_complex(&cx, Some(&bad)).is_err());
    }

    #[test]
    fn abelian_invariants_examples() {
        // BS(2,4)
        let p = Presentation::new(
            vec!["c".into(), "d".into()],
            vec![w("d^-1 c c d c^-1 c^-1 c^-1 c^-1")],
        );
        let (rank, torsion) = abelian_invariants(&p);
        assert_eq!((rank, torsion), (1, vec![BigInt::from(2)]));

        let empty = Presentation::default();
        assert_eq!(abelian_invariants(&empty), (0, vec![]));

        let torus = Presentation::new(
            vec!["c".into(), "d".into()],
            vec![w("d^-1 c d c^-1")],
        );
        assert_eq!(abelian_invariants(&torus), (2, vec![]));
    }

    #[test]
    fn rename_isomorphic_examples() {
        let p = Presentation::new(vec!["a".into()], vec![w("a a")]);
        let q = Presentation::new(vec!["b".into()], vec![w("b b b")]);
        assert!(rename_isomorphic(&p, &q).is_none());
        assert!(rename_isomorphic(&p, &p).is_some());

        let r = Presentation::new(vec!["b".into()], vec![w("b^-1 b^-1")]);
        let map = rename_isomorphic(&p, &r).expect("inverse renaming works");
        assert_eq!(map["a"].0, "b");
    }

    #[test]
    fn rename_isomorphism_implies_equal_invariants() {
        let p = Presentation::new(
            vec!["c".into(), "z".into()],
            vec![w("z^-1 c c z c^-1 c^-1 c^-1 c^-1")],
        );
        let q = Presentation::new(
            vec!["c".into(), "d".into()],
            vec![w("d^-1 c c d c^-1 c^-1 c^-1 c^-1")],
        );
        assert!(rename_isomorphic(&p, &q).is_some());
        assert_eq!(abelian_invariants(&p), abelian_invariants(&q));
    }

    #[test]
    fn standard_complex_round_trip() {
        let p = Presentation::new(
            vec!["c".into(), "d".into()],
            vec![w("d^-1 c c d c^-1 c^-1 c^-1 c^-1")],
        );
        let cx = standard_complex(&p).unwrap();
        assert_eq!(cx.vertices().len(), 1);
        assert_eq!(cx.edges().len(), 2);
        assert_eq!(cx.cells().len(), 1);
        let back = pi1_from_complex(&cx, None).unwrap();
        assert_eq!(back.relators, p.relators);
    }
}
