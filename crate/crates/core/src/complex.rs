//! Finite combinatorial 2-complexes: vertices, directed edges, and 2-cells
//! attached along closed signed edge paths.
//!
//! Values are immutable after construction; operations return new complexes.
//! Construction does not validate, so that `validate` can report violations
//! on arbitrary data.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::ComplexError;
use crate::presentation::Presentation;
use crate::report::VerificationReport;
use crate::word::{Letter, Word};

/// A directed edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub name: String,
    pub tail: String,
    pub head: String,
}

/// One signed letter of a boundary word. Sign `-1` traverses head to tail.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SignedEdge {
    pub edge: String,
    pub sign: i8,
}

impl SignedEdge {
    pub fn new(edge: impl Into<String>, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1);
        SignedEdge { edge: edge.into(), sign }
    }

    pub fn inverse(&self) -> SignedEdge {
        SignedEdge { edge: self.edge.clone(), sign: -self.sign }
    }
}

/// Attachment word of a 2-cell. Stored exactly as given: free reduction
/// would destroy the attachment geometry.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BoundaryWord(pub Vec<SignedEdge>);

impl BoundaryWord {
    pub fn new(letters: Vec<SignedEdge>) -> Self {
        BoundaryWord(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> BoundaryWord {
        BoundaryWord(self.0.iter().rev().map(SignedEdge::inverse).collect())
    }

    pub fn rotate_left(&self, k: usize) -> BoundaryWord {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut letters = self.0[k..].to_vec();
        letters.extend_from_slice(&self.0[..k]);
        BoundaryWord(letters)
    }

    /// Reads the boundary as a word over edge names.
    pub fn to_word(&self) -> Word {
        Word(self.0.iter().map(|l| Letter::new(l.edge.clone(), l.sign)).collect())
    }

    pub fn from_word(w: &Word) -> BoundaryWord {
        BoundaryWord(w.0.iter().map(|l| SignedEdge::new(l.gen.clone(), l.exp)).collect())
    }
}

/// A 2-cell attached along `boundary`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub name: String,
    pub boundary: BoundaryWord,
}

/// Which endpoint of an edge an edge-end sits at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Tail,
    Head,
}

/// An end of a directed edge; the end determines the incident vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub edge: String,
    pub end: End,
}

impl EdgeEnd {
    pub fn new(edge: impl Into<String>, end: End) -> Self {
        EdgeEnd { edge: edge.into(), end }
    }
}

/// A corner of a 2-cell: the junction between boundary letter `pos` and
/// letter `pos + 1` (cyclically). It sits at the vertex where letter `pos`
/// ends.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Corner {
    pub cell: String,
    pub pos: usize,
}

/// The link data of a vertex: incident edge-ends and corners, as sorted
/// multisets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkProfile {
    pub edge_ends: Vec<EdgeEnd>,
    pub corners: Vec<Corner>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoComplex {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    cells: Vec<Cell>,
    edge_index: BTreeMap<String, usize>,
    cell_index: BTreeMap<String, usize>,
}

impl TwoComplex {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>, cells: Vec<Cell>) -> Self {
        let mut edge_index = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            edge_index.entry(e.name.clone()).or_insert(i);
        }
        let mut cell_index = BTreeMap::new();
        for (i, c) in cells.iter().enumerate() {
            cell_index.entry(c.name.clone()).or_insert(i);
        }
        TwoComplex { vertices, edges, cells, edge_index, cell_index }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.iter().any(|x| x == v)
    }

    pub fn edge(&self, name: &str) -> Option<&Edge> {
        self.edge_index.get(name).map(|&i| &self.edges[i])
    }

    pub fn cell(&self, name: &str) -> Option<&Cell> {
        self.cell_index.get(name).map(|&i| &self.cells[i])
    }

    /// Start and end vertex of a signed letter's traversal.
    pub fn letter_endpoints(&self, letter: &SignedEdge) -> Option<(String, String)> {
        let e = self.edge(&letter.edge)?;
        Some(if letter.sign == 1 {
            (e.tail.clone(), e.head.clone())
        } else {
            (e.head.clone(), e.tail.clone())
        })
    }

    /// Vertex at which the corner `(cell, pos)` sits: the end vertex of
    /// boundary letter `pos`.
    pub fn corner_vertex(&self, cell: &Cell, pos: usize) -> Option<String> {
        let letter = cell.boundary.0.get(pos)?;
        self.letter_endpoints(letter).map(|(_, end)| end)
    }

    /// The ordered pair of edge-ends a corner consists of: the arriving end
    /// of letter `pos` and the departing end of letter `pos + 1`.
    pub fn corner_ends(&self, cell: &Cell, pos: usize) -> Option<(EdgeEnd, EdgeEnd)> {
        let n = cell.boundary.len();
        let a = cell.boundary.0.get(pos)?;
        let b = &cell.boundary.0[(pos + 1) % n];
        let arrive = EdgeEnd::new(&*a.edge, if a.sign == 1 { End::Head } else { End::Tail });
        let depart = EdgeEnd::new(&*b.edge, if b.sign == 1 { End::Tail } else { End::Head });
        Some((arrive, depart))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.cells.len() as i64
    }

    /// Checks every structural invariant and reports each violation with the
    /// offending identifier. Violations are findings, not failures.
    pub fn validate(&self) -> VerificationReport {
        let mut report = VerificationReport::new();

        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.clone()) {
                report.error(v.clone(), format!("duplicate vertex identifier {v:?}"));
            }
        }
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            if !seen.insert(e.name.clone()) {
                report.error(e.name.clone(), format!("duplicate edge identifier {:?}", e.name));
            }
            for (role, v) in [("tail", &e.tail), ("head", &e.head)] {
                if !self.has_vertex(v) {
                    report.error(
                        e.name.clone(),
                        format!("edge {:?} has undeclared {role} vertex {v:?}", e.name),
                    );
                }
            }
        }
        let mut seen = BTreeSet::new();
        for c in &self.cells {
            if !seen.insert(c.name.clone()) {
                report.error(c.name.clone(), format!("duplicate cell identifier {:?}", c.name));
            }
            self.validate_boundary(c, &mut report);
        }
        report
    }

    fn validate_boundary(&self, cell: &Cell, report: &mut VerificationReport) {
        if cell.boundary.is_empty() {
            report.error(cell.name.clone(), format!("cell {:?} has empty boundary", cell.name));
            return;
        }
        let mut endpoints = Vec::new();
        for (i, letter) in cell.boundary.0.iter().enumerate() {
            match self.letter_endpoints(letter) {
                Some(pair) => endpoints.push(pair),
                None => {
                    report.error(
                        cell.name.clone(),
                        format!(
                            "cell {:?} references undeclared edge {:?} at position {i}",
                            cell.name, letter.edge
                        ),
                    );
                    return;
                }
            }
        }
        let n = endpoints.len();
        for i in 0..n {
            let here = &endpoints[i].1;
            let next = &endpoints[(i + 1) % n].0;
            if here != next {
                let what = if i + 1 == n { "boundary not closed" } else { "boundary not a path" };
                report.error_with(
                    cell.name.clone(),
                    format!(
                        "cell {:?}: {what} between positions {i} and {} ({here:?} vs {next:?})",
                        cell.name,
                        (i + 1) % n
                    ),
                    serde_json::json!({ "cell": cell.name, "position": i }),
                );
            }
        }
    }

    /// Incident edge-ends and corners at `v`. A loop contributes two ends.
    pub fn vertex_link(&self, v: &str) -> Result<LinkProfile, ComplexError> {
        if !self.has_vertex(v) {
            return Err(ComplexError::UnknownVertex(v.to_string()));
        }
        let mut edge_ends = Vec::new();
        for e in &self.edges {
            if e.tail == v {
                edge_ends.push(EdgeEnd::new(&*e.name, End::Tail));
            }
            if e.head == v {
                edge_ends.push(EdgeEnd::new(&*e.name, End::Head));
            }
        }
        let mut corners = Vec::new();
        for c in &self.cells {
            for pos in 0..c.boundary.len() {
                if self.corner_vertex(c, pos).as_deref() == Some(v) {
                    corners.push(Corner { cell: c.name.clone(), pos });
                }
            }
        }
        edge_ends.sort();
        corners.sort();
        Ok(LinkProfile { edge_ends, corners })
    }

    /// Components of the underlying undirected 1-skeleton. Each component is
    /// sorted; components are ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<String>> {
        let mut adjacency: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for v in &self.vertices {
            adjacency.entry(v).or_default();
        }
        for e in &self.edges {
            adjacency.entry(&e.tail).or_default().push(&e.head);
            adjacency.entry(&e.head).or_default().push(&e.tail);
        }
        let mut remaining: BTreeSet<&str> = self.vertices.iter().map(String::as_str).collect();
        let mut components = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut component = Vec::new();
            let mut queue = VecDeque::from([start]);
            remaining.remove(start);
            while let Some(v) = queue.pop_front() {
                component.push(v.to_string());
                if let Some(neighbors) = adjacency.get(v) {
                    for &u in neighbors {
                        if remaining.remove(u) {
                            queue.push_back(u);
                        }
                    }
                }
            }
            component.sort();
            components.push(component);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Deletes `e` and replaces the two cells containing it by a single cell
    /// whose boundary is the two boundaries spliced at the `e`-occurrences.
    /// `e` must occur exactly twice in total, once in each of two distinct
    /// cells, with any signs; one boundary is inverted when needed so that
    /// the orientations reconcile. Euler characteristic and homotopy type
    /// are preserved.
    pub fn merge_cells_along_edge(&self, e: &str) -> Result<TwoComplex, ComplexError> {
        if self.edge(e).is_none() {
            return Err(ComplexError::UnknownEdge(e.to_string()));
        }
        let mut occurrences = Vec::new();
        for (ci, c) in self.cells.iter().enumerate() {
            for (pos, letter) in c.boundary.0.iter().enumerate() {
                if letter.edge == e {
                    occurrences.push((ci, pos, letter.sign));
                }
            }
        }
        if occurrences.len() != 2 {
            return Err(ComplexError::MergeOccurrenceCount {
                edge: e.to_string(),
                count: occurrences.len(),
            });
        }
        let (ca, pa, sa) = occurrences[0];
        let (cb, pb, sb) = occurrences[1];
        if ca == cb {
            return Err(ComplexError::MergeSameCell {
                edge: e.to_string(),
                cell: self.cells[ca].name.clone(),
            });
        }

        let word_a = &self.cells[ca].boundary;
        let mut word_b = self.cells[cb].boundary.clone();
        let mut pb = pb;
        if sb == sa {
            // invert b so the two occurrences carry opposite signs
            pb = word_b.len() - 1 - pb;
            word_b = word_b.inverse();
        }
        // rotate a so its occurrence is last, b so its occurrence is first,
        // then drop both occurrences and concatenate
        let rot_a = word_a.rotate_left((pa + 1) % word_a.len());
        let rot_b = word_b.rotate_left(pb);
        let mut merged = rot_a.0[..rot_a.len() - 1].to_vec();
        merged.extend_from_slice(&rot_b.0[1..]);

        let edges = self.edges.iter().filter(|x| x.name != e).cloned().collect();
        let mut cells = Vec::new();
        for (ci, c) in self.cells.iter().enumerate() {
            if ci == ca {
                cells.push(Cell { name: c.name.clone(), boundary: BoundaryWord(merged.clone()) });
            } else if ci != cb {
                cells.push(c.clone());
            }
        }
        Ok(TwoComplex::new(self.vertices.clone(), edges, cells))
    }

    /// Order-insensitive equality: same vertex set, same edges, and same
    /// cells with letterwise identical boundary words.
    pub fn same_as(&self, other: &TwoComplex) -> bool {
        let mut va = self.vertices.clone();
        let mut vb = other.vertices.clone();
        va.sort();
        vb.sort();
        if va != vb {
            return false;
        }
        let key_e = |e: &Edge| (e.name.clone(), e.tail.clone(), e.head.clone());
        let mut ea: Vec<_> = self.edges.iter().map(key_e).collect();
        let mut eb: Vec<_> = other.edges.iter().map(key_e).collect();
        ea.sort();
        eb.sort();
        if ea != eb {
            return false;
        }
        let key_c = |c: &Cell| (c.name.clone(), c.boundary.clone());
        let mut ca: Vec<_> = self.cells.iter().map(key_c).collect();
        let mut cb: Vec<_> = other.cells.iter().map(key_c).collect();
        ca.sort();
        cb.sort();
        ca == cb
    }
}

/// One vertex, one loop per generator, one 2-cell per relator spelling it.
pub fn standard_complex(p: &Presentation) -> Result<TwoComplex, ComplexError> {
    let vertex = "v".to_string();
    let edges = p
        .generators
        .iter()
        .map(|g| Edge { name: g.clone(), tail: vertex.clone(), head: vertex.clone() })
        .collect();
    let mut cells = Vec::new();
    for (i, r) in p.relators.iter().enumerate() {
        if r.is_empty() {
            return Err(ComplexError::EmptyRelator { index: i });
        }
        cells.push(Cell { name: format!("r{i}"), boundary: BoundaryWord::from_word(r) });
    }
    Ok(TwoComplex::new(vec![vertex], edges, cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    fn loop_complex() -> TwoComplex {
        // one vertex, loops a and b, one cell along a b a^-1 b^-1
        TwoComplex::new(
            vec!["v".into()],
            vec![
                Edge { name: "a".into(), tail: "v".into(), head: "v".into() },
                Edge { name: "b".into(), tail: "v".into(), head: "v".into() },
            ],
            vec![Cell {
                name: "c".into(),
                boundary: BoundaryWord::from_word(&Word::parse_compact("a b a^-1 b^-1").unwrap()),
            }],
        )
    }

    #[test]
    fn empty_complex_is_valid() {
        let cx = TwoComplex::new(vec!["v".into()], vec![], vec![]);
        assert!(cx.validate().pass());
        assert_eq!(cx.euler_characteristic(), 1);
    }

    #[test]
    fn torus_validates() {
        let cx = loop_complex();
        assert!(cx.validate().pass());
        assert_eq!(cx.euler_characteristic(), 0);
    }

    #[test]
    fn truncated_boundary_reported_not_closed() {
        let mut cx = loop_complex();
        let cell = cx.cells[0].clone();
        let shorter = BoundaryWord(cell.boundary.0[..3].to_vec());
        cx = TwoComplex::new(
            cx.vertices.clone(),
            cx.edges.clone(),
            vec![Cell { name: cell.name, boundary: shorter }],
        );
        // a loop complex stays closed under truncation; use two vertices
        let bad = TwoComplex::new(
            vec!["p".into(), "q".into()],
            vec![
                Edge { name: "a".into(), tail: "p".into(), head: "q".into() },
                Edge { name: "b".into(), tail: "q".into(), head: "p".into() },
            ],
            vec![Cell {
                name: "c".into(),
                boundary: BoundaryWord(vec![SignedEdge::new("a", 1)]),
            }],
        );
        let report = bad.validate();
        assert!(!report.pass());
        assert!(report.errors().any(|f| f.message.contains("boundary not closed")));
        assert!(cx.validate().pass());
    }

    #[test]
    fn link_of_torus_vertex() {
        let cx = loop_complex();
        let link = cx.vertex_link("v").unwrap();
        assert_eq!(link.edge_ends.len(), 4);
        assert_eq!(link.corners.len(), 4);
        assert!(cx.vertex_link("missing").is_err());
    }

    #[test]
    fn isolated_vertex_has_empty_profile() {
        let cx = TwoComplex::new(vec!["v".into()], vec![], vec![]);
        let link = cx.vertex_link("v").unwrap();
        assert!(link.edge_ends.is_empty() && link.corners.is_empty());
    }

    #[test]
    fn components_of_two_isolated_vertices() {
        let cx = TwoComplex::new(vec!["p".into(), "q".into()], vec![], vec![]);
        assert_eq!(cx.connected_components().len(), 2);
        assert!(loop_complex().is_connected());
    }

    #[test]
    fn corner_count_equals_total_boundary_length() {
        let cx = loop_complex();
        let total: usize = cx
            .vertices()
            .iter()
            .map(|v| cx.vertex_link(v).unwrap().corners.len())
            .sum();
        let lengths: usize = cx.cells().iter().map(|c| c.boundary.len()).sum();
        assert_eq!(total, lengths);
    }

    #[test]
    fn standard_complex_of_the_empty_presentation() {
        let p = Presentation::default();
        let cx = standard_complex(&p).unwrap();
        assert_eq!(cx.vertices().len(), 1);
        assert!(cx.edges().is_empty() && cx.cells().is_empty());
        let with_empty_relator =
            Presentation::new(vec!["a".into()], vec![crate::word::Word::empty()]);
        assert_eq!(
            standard_complex(&with_empty_relator),
            Err(ComplexError::EmptyRelator { index: 0 })
        );
    }

    #[test]
    fn merge_rejects_single_cell_pairs() {
        // both occurrences of b sit in the same cell
        let cx = TwoComplex::new(
            vec!["v".into()],
            vec![
                Edge { name: "a".into(), tail: "v".into(), head: "v".into() },
                Edge { name: "b".into(), tail: "v".into(), head: "v".into() },
            ],
            vec![
                Cell {
                    name: "c".into(),
                    boundary: BoundaryWord::from_word(&Word::parse_compact("b^-1 a b a").unwrap()),
                },
                Cell {
                    name: "d".into(),
                    boundary: BoundaryWord::from_word(&Word::parse_compact("a").unwrap()),
                },
            ],
        );
        assert_eq!(
            cx.merge_cells_along_edge("b"),
            Err(ComplexError::MergeSameCell { edge: "b".into(), cell: "c".into() })
        );
        assert_eq!(
            cx.merge_cells_along_edge("a"),
            Err(ComplexError::MergeOccurrenceCount { edge: "a".into(), count: 3 })
        );
        assert_eq!(
            cx.merge_cells_along_edge("zz"),
            Err(ComplexError::UnknownEdge("zz".into()))
        );
    }
}
