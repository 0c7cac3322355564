//! Finite covers via permutation voltages: one permutation of the sheet set
//! per base edge, an n-sheeted cover whenever every cell's boundary product
//! is the identity.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{BoundaryWord, Cell, Edge, SignedEdge, TwoComplex};
use crate::covering::CellularMap;
use crate::error::CoveringError;
use crate::iso::{complex_isomorphic, CellImage, CellIsomorphism};

/// A permutation of `{0, .., n-1}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x] = i;
        }
        Perm(out)
    }

    /// `self` then `other`: `(self * other)(x) = other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    /// `p^-1 self p`, simultaneous sheet relabeling by `p`.
    pub fn conjugate(&self, p: &Perm) -> Perm {
        let mut out = vec![0; self.0.len()];
        for x in 0..self.0.len() {
            out[p.0[x]] = p.0[self.0[x]];
        }
        Perm(out)
    }

    /// All permutations of `{0..n-1}` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
            if current.len() == n {
                out.push(Perm(current.clone()));
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    current.push(x);
                    rec(n, current, used, out);
                    current.pop();
                    used[x] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

/// Sheet count plus a permutation per base edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Voltage {
    pub sheets: usize,
    pub perms: BTreeMap<String, Perm>,
}

impl Voltage {
    pub fn trivial(base: &TwoComplex, sheets: usize) -> Self {
        Voltage {
            sheets,
            perms: base
                .edges()
                .iter()
                .map(|e| (e.name.clone(), Perm::identity(sheets)))
                .collect(),
        }
    }

    fn perm(&self, edge: &str) -> Result<&Perm, CoveringError> {
        self.perms.get(edge).ok_or_else(|| CoveringError::MissingEdgeImage(edge.to_string()))
    }

    /// Signed product along a boundary word, composed in path order.
    pub fn boundary_product(&self, word: &BoundaryWord) -> Result<Perm, CoveringError> {
        let mut acc = Perm::identity(self.sheets);
        for l in &word.0 {
            let p = self.perm(&l.edge)?;
            let step = if l.sign == 1 { p.clone() } else { p.inverse() };
            acc = acc.then(&step);
        }
        Ok(acc)
    }

    /// The voltage invariant: every cell's boundary product is the identity.
    /// This is exactly cell liftability.
    pub fn check_cells(&self, base: &TwoComplex) -> Result<(), CoveringError> {
        for e in base.edges() {
            let p = self.perm(&e.name)?;
            if p.len() != self.sheets {
                return Err(CoveringError::PermutationLength {
                    edge: e.name.clone(),
                    len: p.len(),
                    sheets: self.sheets,
                });
            }
        }
        for c in base.cells() {
            if !self.boundary_product(&c.boundary)?.is_identity() {
                return Err(CoveringError::CellRelation(c.name.clone()));
            }
        }
        Ok(())
    }

    /// Lexicographically least representative of the class of `self` under
    /// simultaneous conjugation of all permutations, found by brute force.
    pub fn canonical(&self) -> Voltage {
        let mut best = self.clone();
        for p in Perm::all(self.sheets) {
            let candidate = Voltage {
                sheets: self.sheets,
                perms: self
                    .perms
                    .iter()
                    .map(|(k, v)| (k.clone(), v.conjugate(&p)))
                    .collect(),
            };
            if candidate < best {
                best = candidate;
            }
        }
        best
    }
}

fn cover_vertex(v: &str, sheet: usize) -> String {
    format!("{v}#{}", sheet + 1)
}

/// Builds the voltage cover: vertex set `V x {1..n}`, edge `(e, s)` running
/// from `(tail e, s)` to `(head e, perm_e(s))`, and one lifted cell per
/// `(cell, sheet)`. Returns the cover and the projection map, with every
/// vertex interior.
pub fn build_cover(
    base: &TwoComplex,
    volt: &Voltage,
) -> Result<(TwoComplex, CellularMap), CoveringError> {
    volt.check_cells(base)?;
    let n = volt.sheets;

    let mut vertices = Vec::new();
    for v in base.vertices() {
        for s in 0..n {
            vertices.push(cover_vertex(v, s));
        }
    }
    let mut edges = Vec::new();
    for e in base.edges() {
        let p = volt.perm(&e.name)?;
        for s in 0..n {
            edges.push(Edge {
                name: cover_vertex(&e.name, s),
                tail: cover_vertex(&e.tail, s),
                head: cover_vertex(&e.head, p.apply(s)),
            });
        }
    }
    let mut cells = Vec::new();
    for c in base.cells() {
        for s in 0..n {
            let mut sheet = s;
            let mut letters = Vec::with_capacity(c.boundary.len());
            for l in &c.boundary.0 {
                let p = volt.perm(&l.edge)?;
                if l.sign == 1 {
                    letters.push(SignedEdge::new(cover_vertex(&l.edge, sheet), 1));
                    sheet = p.apply(sheet);
                } else {
                    let from = p.inverse().apply(sheet);
                    letters.push(SignedEdge::new(cover_vertex(&l.edge, from), -1));
                    sheet = from;
                }
            }
            debug_assert_eq!(sheet, s, "cell product is the identity");
            cells.push(Cell {
                name: cover_vertex(&c.name, s),
                boundary: BoundaryWord(letters),
            });
        }
    }
    let cover = TwoComplex::new(vertices, edges, cells);

    let vertex_map = base
        .vertices()
        .iter()
        .flat_map(|v| (0..n).map(move |s| (cover_vertex(v, s), v.clone())))
        .collect();
    let edge_map = base
        .edges()
        .iter()
        .flat_map(|e| (0..n).map(move |s| (cover_vertex(&e.name, s), e.name.clone())))
        .collect();
    let cell_map = base
        .cells()
        .iter()
        .flat_map(|c| {
            (0..n).map(move |s| {
                (
                    cover_vertex(&c.name, s),
                    CellImage { cell: c.name.clone(), rotation: 0, reversed: false },
                )
            })
        })
        .collect();
    let mut projection = CellularMap::new(cover.clone(), base.clone(), vertex_map, edge_map);
    projection.cell_map = Some(cell_map);
    Ok((cover, projection))
}

/// A voltage class together with whether its cover is connected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedCover {
    pub voltage: Voltage,
    pub connected: bool,
}

/// All voltage assignments on `base` with `n` sheets satisfying the cell
/// condition, quotiented by simultaneous conjugation and emitted in
/// canonical lexicographic order. Connectivity is recorded, not required.
pub fn enumerate_covers(base: &TwoComplex, n: usize) -> Vec<EnumeratedCover> {
    assert!(n >= 1, "sheet count must be at least 1");
    let edge_names: Vec<String> = {
        let mut names: Vec<String> = base.edges().iter().map(|e| e.name.clone()).collect();
        names.sort();
        names
    };
    let perms = Perm::all(n);
    let mut classes: BTreeSet<Voltage> = BTreeSet::new();
    let mut assignment: BTreeMap<String, Perm> = BTreeMap::new();
    backtrack(base, n, &edge_names, &perms, 0, &mut assignment, &mut classes);

    classes
        .into_iter()
        .map(|voltage| {
            let connected = build_cover(base, &voltage)
                .map(|(cover, _)| cover.is_connected())
                .unwrap_or(false);
            EnumeratedCover { voltage, connected }
        })
        .collect()
}

fn backtrack(
    base: &TwoComplex,
    n: usize,
    edge_names: &[String],
    perms: &[Perm],
    idx: usize,
    assignment: &mut BTreeMap<String, Perm>,
    classes: &mut BTreeSet<Voltage>,
) {
    if idx == edge_names.len() {
        let voltage = Voltage { sheets: n, perms: assignment.clone() };
        if voltage.check_cells(base).is_ok() {
            classes.insert(voltage.canonical());
        }
        return;
    }
    let assigned: BTreeSet<&String> = edge_names[..idx].iter().collect();
    for p in perms {
        assignment.insert(edge_names[idx].clone(), p.clone());
        // prune on every cell whose edges are now all assigned
        let ok = base.cells().iter().all(|c| {
            let uses_current = c.boundary.0.iter().any(|l| l.edge == edge_names[idx]);
            let complete = c
                .boundary
                .0
                .iter()
                .all(|l| l.edge == edge_names[idx] || assigned.contains(&l.edge));
            if uses_current && complete {
                let volt = Voltage { sheets: n, perms: assignment.clone() };
                volt.boundary_product(&c.boundary).map(|p| p.is_identity()).unwrap_or(false)
            } else {
                true
            }
        });
        if ok {
            backtrack(base, n, edge_names, perms, idx + 1, assignment, classes);
        }
        assignment.remove(&edge_names[idx]);
    }
}

/// Scans all pairs of connected covers with sheet counts up to the bounds,
/// in ascending `(sheets_a, sheets_b)` order, and returns the first pair
/// whose total complexes are cell-isomorphic.
pub fn search_common_cover(
    a: &TwoComplex,
    b: &TwoComplex,
    max_sheets_a: usize,
    max_sheets_b: usize,
) -> Option<(Voltage, Voltage, CellIsomorphism)> {
    let covers_b: Vec<Vec<EnumeratedCover>> =
        (1..=max_sheets_b).map(|n| enumerate_covers(b, n)).collect();
    for na in 1..=max_sheets_a {
        let list_a = enumerate_covers(a, na);
        for nb in 1..=max_sheets_b {
            for ca in &list_a {
                if !ca.connected {
                    continue;
                }
                let (cover_a, _) = build_cover(a, &ca.voltage).expect("enumerated voltage");
                for cb in &covers_b[nb - 1] {
                    if !cb.connected {
                        continue;
                    }
                    let (cover_b, _) = build_cover(b, &cb.voltage).expect("enumerated voltage");
                    if let Some(iso) = complex_isomorphic(&cover_a, &cover_b) {
                        return Some((ca.voltage.clone(), cb.voltage.clone(), iso));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::verify_covering;
    use crate::word::Word;

    fn loop_no_cell() -> TwoComplex {
        TwoComplex::new(
            vec!["v".into()],
            vec![Edge { name: "a".into(), tail: "v".into(), head: "v".into() }],
            vec![],
        )
    }

    #[test]
    fn perm_algebra() {
        let t = Perm(vec![1, 0, 2]);
        assert_eq!(t.then(&t), Perm::identity(3));
        assert_eq!(t.inverse(), t);
        let c = Perm(vec![1, 2, 0]);
        assert_eq!(c.then(&c.inverse()), Perm::identity(3));
        assert_eq!(Perm::all(3).len(), 6);
    }

    #[test]
    fn trivial_voltage_gives_isomorphic_copy() {
        let base = loop_no_cell();
        let volt = Voltage::trivial(&base, 1);
        let (cover, projection) = build_cover(&base, &volt).unwrap();
        assert!(complex_isomorphic(&base, &cover).is_some());
        assert!(verify_covering(&projection).unwrap().pass());
    }

    #[test]
    fn two_sheet_classes_of_a_single_loop() {
        // S_2 up to conjugacy: identity and the transposition
        let covers = enumerate_covers(&loop_no_cell(), 2);
        assert_eq!(covers.len(), 2);
        assert!(!covers[0].connected); // identity: two disjoint circles
        assert!(covers[1].connected); // transposition: one double circle
    }

    #[test]
    fn cell_condition_filters_voltages() {
        // a disk attached along a^2 forces the a-permutation to square to id
        let base = TwoComplex::new(
            vec!["v".into()],
            vec![Edge { name: "a".into(), tail: "v".into(), head: "v".into() }],
            vec![Cell {
                name: "c".into(),
                boundary: BoundaryWord::from_word(&Word::parse_compact("a a").unwrap()),
            }],
        );
        let covers = enumerate_covers(&base, 3);
        // identity and the transposition class; 3-cycles fail a^2 = id
        assert_eq!(covers.len(), 2);
        for c in &covers {
            let (cover, projection) = build_cover(&base, &c.voltage).unwrap();
            assert!(verify_covering(&projection).unwrap().pass());
            assert_eq!(cover.euler_characteristic(), 3 * base.euler_characteristic());
        }
        let bad = Voltage {
            sheets: 3,
            perms: BTreeMap::from([("a".to_string(), Perm(vec![1, 2, 0]))]),
        };
        assert!(matches!(
            build_cover(&base, &bad),
            Err(CoveringError::CellRelation(cell)) if cell == "c"
        ));
    }

    #[test]
    fn common_cover_of_a_complex_with_itself() {
        let base = loop_no_cell();
        let found = search_common_cover(&base, &base, 1, 1);
        assert!(found.is_some());
    }
}
