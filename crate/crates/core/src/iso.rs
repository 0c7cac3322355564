//! Cell-level isomorphism of 2-complexes by exhaustive backtracking.
//!
//! An isomorphism is a triple of bijections (vertices, edges, cells)
//! commuting with incidence. Each edge may have its orientation reversed,
//! and each boundary word is sent to a cyclic rotation of the image cell's
//! boundary word or of its inverse.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{BoundaryWord, SignedEdge, TwoComplex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeImage {
    pub edge: String,
    pub reversed: bool,
}

/// Image of a cell: `mapped_boundary[j] = target[(j + rotation) mod n]`,
/// with `target` replaced by its inverse word when `reversed` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellImage {
    pub cell: String,
    pub rotation: usize,
    #[serde(default)]
    pub reversed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellIsomorphism {
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, EdgeImage>,
    pub cell_map: BTreeMap<String, CellImage>,
}

/// All `(rotation, reversed)` pairs under which `mapped` matches `target`.
pub fn boundary_matches(mapped: &BoundaryWord, target: &BoundaryWord) -> Vec<(usize, bool)> {
    let n = target.len();
    if mapped.len() != n {
        return Vec::new();
    }
    if n == 0 {
        return vec![(0, false)];
    }
    let mut out = Vec::new();
    let inverse = target.inverse();
    for rot in 0..n {
        if mapped.0 == target.rotate_left(rot).0 {
            out.push((rot, false));
        }
    }
    for rot in 0..n {
        if mapped.0 == inverse.rotate_left(rot).0 {
            out.push((rot, true));
        }
    }
    out
}

/// Letterwise image of a boundary word under an edge assignment.
fn map_boundary(
    word: &BoundaryWord,
    edge_map: &BTreeMap<String, (String, bool)>,
) -> Option<BoundaryWord> {
    let mut letters = Vec::with_capacity(word.len());
    for l in &word.0 {
        let (image, reversed) = edge_map.get(&l.edge)?;
        let sign = if *reversed { -l.sign } else { l.sign };
        letters.push(SignedEdge::new(image.clone(), sign));
    }
    Some(BoundaryWord(letters))
}

struct Search<'a> {
    a: &'a TwoComplex,
    b: &'a TwoComplex,
    vertex_map: BTreeMap<String, String>,
    vertex_used: BTreeMap<String, String>,
    edge_map: BTreeMap<String, (String, bool)>,
    edge_used: Vec<bool>,
}

impl<'a> Search<'a> {
    fn assign_vertex(&mut self, from: &str, to: &str) -> Option<(bool, bool)> {
        match (self.vertex_map.get(from), self.vertex_used.get(to)) {
            (Some(cur), _) if cur == to => Some((false, false)),
            (Some(_), _) => None,
            (None, Some(_)) => None,
            (None, None) => {
                self.vertex_map.insert(from.to_string(), to.to_string());
                self.vertex_used.insert(to.to_string(), from.to_string());
                Some((true, true))
            }
        }
    }

    fn unassign_vertex(&mut self, from: &str, to: &str) {
        self.vertex_map.remove(from);
        self.vertex_used.remove(to);
    }

    fn edges(&mut self, idx: usize) -> Option<CellIsomorphism> {
        if idx == self.a.edges().len() {
            return self.finish_vertices();
        }
        let ea = self.a.edges()[idx].clone();
        for bi in 0..self.b.edges().len() {
            if self.edge_used[bi] {
                continue;
            }
            let eb = self.b.edges()[bi].clone();
            for reversed in [false, true] {
                let (to_tail, to_head) = if reversed {
                    (eb.head.clone(), eb.tail.clone())
                } else {
                    (eb.tail.clone(), eb.head.clone())
                };
                let Some(added_t) = self.assign_vertex(&ea.tail, &to_tail) else {
                    continue;
                };
                let added_h = self.assign_vertex(&ea.head, &to_head);
                if let Some(added_h) = added_h {
                    self.edge_map.insert(ea.name.clone(), (eb.name.clone(), reversed));
                    self.edge_used[bi] = true;
                    if let Some(found) = self.edges(idx + 1) {
                        return Some(found);
                    }
                    self.edge_used[bi] = false;
                    self.edge_map.remove(&ea.name);
                    if added_h.0 {
                        self.unassign_vertex(&ea.head, &to_head);
                    }
                }
                if added_t.0 {
                    self.unassign_vertex(&ea.tail, &to_tail);
                }
            }
        }
        None
    }

    /// Pairs the vertices untouched by any edge (isolated on both sides) in
    /// sorted order, then matches cells.
    fn finish_vertices(&mut self) -> Option<CellIsomorphism> {
        let mut free_a: Vec<_> = self
            .a
            .vertices()
            .iter()
            .filter(|v| !self.vertex_map.contains_key(*v))
            .cloned()
            .collect();
        let mut free_b: Vec<_> = self
            .b
            .vertices()
            .iter()
            .filter(|v| !self.vertex_used.contains_key(*v))
            .cloned()
            .collect();
        if free_a.len() != free_b.len() {
            return None;
        }
        free_a.sort();
        free_b.sort();
        let pairs: Vec<_> = free_a.into_iter().zip(free_b).collect();
        for (from, to) in &pairs {
            self.vertex_map.insert(from.clone(), to.clone());
            self.vertex_used.insert(to.clone(), from.clone());
        }
        let result = self.cells();
        if result.is_none() {
            for (from, to) in &pairs {
                self.unassign_vertex(from, to);
            }
        }
        result
    }

    fn cells(&mut self) -> Option<CellIsomorphism> {
        let candidates: Vec<Vec<(usize, usize, bool)>> = self
            .a
            .cells()
            .iter()
            .map(|ca| {
                let mapped = map_boundary(&ca.boundary, &self.edge_map)?;
                let mut options = Vec::new();
                for (bi, cb) in self.b.cells().iter().enumerate() {
                    for (rot, rev) in boundary_matches(&mapped, &cb.boundary) {
                        options.push((bi, rot, rev));
                    }
                }
                Some(options)
            })
            .collect::<Option<_>>()?;

        let mut taken = vec![false; self.b.cells().len()];
        let mut chosen: Vec<(usize, usize, bool)> = Vec::new();
        if !Self::match_cells(&candidates, &mut taken, &mut chosen, 0) {
            return None;
        }
        let mut cell_map = BTreeMap::new();
        for (ai, &(bi, rot, rev)) in chosen.iter().enumerate() {
            cell_map.insert(
                self.a.cells()[ai].name.clone(),
                CellImage { cell: self.b.cells()[bi].name.clone(), rotation: rot, reversed: rev },
            );
        }
        Some(CellIsomorphism {
            vertex_map: self.vertex_map.clone(),
            edge_map: self
                .edge_map
                .iter()
                .map(|(k, (e, r))| (k.clone(), EdgeImage { edge: e.clone(), reversed: *r }))
                .collect(),
            cell_map,
        })
    }

    fn match_cells(
        candidates: &[Vec<(usize, usize, bool)>],
        taken: &mut Vec<bool>,
        chosen: &mut Vec<(usize, usize, bool)>,
        idx: usize,
    ) -> bool {
        if idx == candidates.len() {
            return true;
        }
        let mut last_cell = usize::MAX;
        for &(bi, rot, rev) in &candidates[idx] {
            if taken[bi] {
                continue;
            }
            // several rotations of one target cell are equivalent choices
            if bi == last_cell {
                continue;
            }
            last_cell = bi;
            taken[bi] = true;
            chosen.push((bi, rot, rev));
            if Self::match_cells(candidates, taken, chosen, idx + 1) {
                return true;
            }
            chosen.pop();
            taken[bi] = false;
        }
        false
    }
}

/// Finds a cell isomorphism `a -> b`, or `None` after exhaustive
/// backtracking. Deterministic: the first isomorphism in list order wins.
pub fn complex_isomorphic(a: &TwoComplex, b: &TwoComplex) -> Option<CellIsomorphism> {
    if a.vertices().len() != b.vertices().len()
        || a.edges().len() != b.edges().len()
        || a.cells().len() != b.cells().len()
    {
        return None;
    }
    let mut lengths_a: Vec<usize> = a.cells().iter().map(|c| c.boundary.len()).collect();
    let mut lengths_b: Vec<usize> = b.cells().iter().map(|c| c.boundary.len()).collect();
    lengths_a.sort_unstable();
    lengths_b.sort_unstable();
    if lengths_a != lengths_b {
        return None;
    }
    let mut search = Search {
        a,
        b,
        vertex_map: BTreeMap::new(),
        vertex_used: BTreeMap::new(),
        edge_map: BTreeMap::new(),
        edge_used: vec![false; b.edges().len()],
    };
    search.edges(0)
}

/// Applies `iso` to `a`, producing a complex that should equal the original
/// target exactly (up to list order).
pub fn apply_isomorphism(a: &TwoComplex, iso: &CellIsomorphism) -> TwoComplex {
    use crate::complex::{Cell, Edge};
    let vertices = a.vertices().iter().map(|v| iso.vertex_map[v].clone()).collect();
    let edges = a
        .edges()
        .iter()
        .map(|e| {
            let image = &iso.edge_map[&e.name];
            let (tail, head) = if image.reversed {
                (iso.vertex_map[&e.head].clone(), iso.vertex_map[&e.tail].clone())
            } else {
                (iso.vertex_map[&e.tail].clone(), iso.vertex_map[&e.head].clone())
            };
            Edge { name: image.edge.clone(), tail, head }
        })
        .collect();
    let edge_map: BTreeMap<String, (String, bool)> = iso
        .edge_map
        .iter()
        .map(|(k, v)| (k.clone(), (v.edge.clone(), v.reversed)))
        .collect();
    let cells = a
        .cells()
        .iter()
        .map(|c| {
            let image = &iso.cell_map[&c.name];
            let mapped = map_boundary(&c.boundary, &edge_map).expect("edge map is total");
            let n = mapped.len();
            let unrotated = if n == 0 { mapped } else { mapped.rotate_left(n - image.rotation % n) };
            let boundary = if image.reversed { unrotated.inverse() } else { unrotated };
            Cell { name: image.cell.clone(), boundary }
        })
        .collect();
    TwoComplex::new(vertices, edges, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Cell, Edge};
    use crate::word::Word;

    fn torus(vertex: &str, e1: &str, e2: &str, cell: &str) -> TwoComplex {
        TwoComplex::new(
            vec![vertex.into()],
            vec![
                Edge { name: e1.into(), tail: vertex.into(), head: vertex.into() },
                Edge { name: e2.into(), tail: vertex.into(), head: vertex.into() },
            ],
            vec![Cell {
                name: cell.into(),
                boundary: BoundaryWord::from_word(
                    &Word::parse_compact(&format!("{e1} {e2} {e1}^-1 {e2}^-1")).unwrap(),
                ),
            }],
        )
    }

    #[test]
    fn renaming_is_an_isomorphism() {
        let a = torus("v", "a", "b", "c");
        let b = torus("w", "x", "y", "z");
        let iso = complex_isomorphic(&a, &b).expect("isomorphic");
        assert!(apply_isomorphism(&a, &iso).same_as(&b));
        // reflexive and symmetric
        assert!(complex_isomorphic(&a, &a).is_some());
        assert!(complex_isomorphic(&b, &a).is_some());
    }

    #[test]
    fn vertex_count_mismatch_is_rejected() {
        let a = torus("v", "a", "b", "c");
        let b = TwoComplex::new(vec!["p".into(), "q".into()], vec![], vec![]);
        assert!(complex_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn inverse_boundary_matches() {
        let a = torus("v", "a", "b", "c");
        let mut reversed = torus("v", "a", "b", "c");
        let inverted = reversed.cells()[0].boundary.inverse();
        reversed = TwoComplex::new(
            reversed.vertices().to_vec(),
            reversed.edges().to_vec(),
            vec![Cell { name: "c".into(), boundary: inverted }],
        );
        let iso = complex_isomorphic(&a, &reversed).expect("inverse attachment is isomorphic");
        assert!(apply_isomorphism(&a, &iso).same_as(&reversed));
    }
}
