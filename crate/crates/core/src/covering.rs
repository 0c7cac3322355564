//! Cellular maps between 2-complexes and the combinatorial covering
//! criterion: edge-end and corner bijectivity at interior vertices plus
//! global cell-boundary compatibility.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{BoundaryWord, Corner, EdgeEnd, SignedEdge, TwoComplex};
use crate::error::CoveringError;
use crate::iso::{boundary_matches, CellImage};
use crate::report::VerificationReport;

/// A dimension-preserving map. `edge_map` is orientation-preserving:
/// tail maps to tail and head to head under `vertex_map`. The covering
/// condition is enforced at the `interior` vertices only, so truncations of
/// infinite complexes can be checked on their meaningful part.
#[derive(Debug, Clone)]
pub struct CellularMap {
    pub source: TwoComplex,
    pub target: TwoComplex,
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, String>,
    pub cell_map: Option<BTreeMap<String, CellImage>>,
    pub interior: BTreeSet<String>,
}

impl CellularMap {
    /// A map with every source vertex interior and no cell map yet.
    pub fn new(
        source: TwoComplex,
        target: TwoComplex,
        vertex_map: BTreeMap<String, String>,
        edge_map: BTreeMap<String, String>,
    ) -> Self {
        let interior = source.vertices().iter().cloned().collect();
        CellularMap { source, target, vertex_map, edge_map, cell_map: None, interior }
    }

    pub fn with_interior(mut self, interior: BTreeSet<String>) -> Self {
        self.interior = interior;
        self
    }

    /// The identity map on `cx`, cell map included.
    pub fn identity(cx: &TwoComplex) -> Self {
        let vertex_map = cx.vertices().iter().map(|v| (v.clone(), v.clone())).collect();
        let edge_map = cx.edges().iter().map(|e| (e.name.clone(), e.name.clone())).collect();
        let cell_map = cx
            .cells()
            .iter()
            .map(|c| {
                (c.name.clone(), CellImage { cell: c.name.clone(), rotation: 0, reversed: false })
            })
            .collect();
        let mut m = CellularMap::new(cx.clone(), cx.clone(), vertex_map, edge_map);
        m.cell_map = Some(cell_map);
        m
    }

    /// Checks totality and endpoint commutation of the vertex/edge maps.
    pub fn check_structure(&self) -> Result<(), CoveringError> {
        for v in self.source.vertices() {
            if !self.vertex_map.contains_key(v) {
                return Err(CoveringError::MissingVertexImage(v.clone()));
            }
        }
        for e in self.source.edges() {
            let image_name = self
                .edge_map
                .get(&e.name)
                .ok_or_else(|| CoveringError::MissingEdgeImage(e.name.clone()))?;
            let image = self
                .target
                .edge(image_name)
                .ok_or_else(|| CoveringError::MissingEdgeImage(image_name.clone()))?;
            if self.vertex_map.get(&e.tail) != Some(&image.tail)
                || self.vertex_map.get(&e.head) != Some(&image.head)
            {
                return Err(CoveringError::EndpointMismatch(e.name.clone()));
            }
        }
        Ok(())
    }

    /// Letterwise image of a boundary word under the edge map.
    pub fn map_boundary(&self, word: &BoundaryWord) -> Result<BoundaryWord, CoveringError> {
        let mut letters = Vec::with_capacity(word.len());
        for l in &word.0 {
            let image = self
                .edge_map
                .get(&l.edge)
                .ok_or_else(|| CoveringError::MissingEdgeImage(l.edge.clone()))?;
            letters.push(SignedEdge::new(image.clone(), l.sign));
        }
        Ok(BoundaryWord(letters))
    }

    /// Recovers the cell map from the edge map: each source cell's mapped
    /// boundary must match exactly one target cell, up to rotation and
    /// orientation reversal. Two distinct matching target cells signal
    /// duplicate cells in the target (`Ambiguous`); zero signal the map is
    /// not cellular (`NoMatch`). Within one target cell the least match is
    /// chosen, forward orientation first.
    pub fn derive_cell_map(&self) -> Result<CellularMap, CoveringError> {
        self.check_structure()?;
        let mut cell_map = BTreeMap::new();
        for c in self.source.cells() {
            let mapped = self.map_boundary(&c.boundary)?;
            let mut matches: Vec<(usize, usize, bool)> = Vec::new();
            for (ti, t) in self.target.cells().iter().enumerate() {
                for (rot, rev) in boundary_matches(&mapped, &t.boundary) {
                    matches.push((ti, rot, rev));
                }
            }
            let distinct: BTreeSet<usize> = matches.iter().map(|m| m.0).collect();
            if distinct.is_empty() {
                return Err(CoveringError::NoMatch(c.name.clone()));
            }
            if distinct.len() > 1 {
                return Err(CoveringError::Ambiguous {
                    cell: c.name.clone(),
                    count: distinct.len(),
                });
            }
            let (ti, rot, rev) = matches
                .iter()
                .min_by_key(|(ti, rot, rev)| (*ti, *rev, *rot))
                .copied()
                .expect("nonempty");
            cell_map.insert(
                c.name.clone(),
                CellImage {
                    cell: self.target.cells()[ti].name.clone(),
                    rotation: rot,
                    reversed: rev,
                },
            );
        }
        let mut out = self.clone();
        out.cell_map = Some(cell_map);
        Ok(out)
    }

    /// Image of a source corner under the stored cell image: with
    /// `mapped[j] = target[(j + rot) mod n]` a corner at position `p` lands
    /// at `(p + rot) mod n`; with the reversed convention it lands at
    /// `(n - 2 - p - rot) mod n`.
    pub fn corner_image(&self, corner: &Corner) -> Option<Corner> {
        let cm = self.cell_map.as_ref()?;
        let image = cm.get(&corner.cell)?;
        let n = self.target.cell(&image.cell)?.boundary.len();
        if n == 0 {
            return None;
        }
        let rot = image.rotation % n;
        let pos = if image.reversed {
            (2 * n - 2 - corner.pos % n - rot) % n
        } else {
            (corner.pos + rot) % n
        };
        Some(Corner { cell: image.cell.clone(), pos })
    }
}

/// Runs the covering checks: (a) boundary compatibility for every source
/// cell; (b) edge-end bijectivity and (c) corner bijectivity at every
/// interior vertex. Each failure is reported with its location and the
/// colliding pair.
pub fn verify_covering(m: &CellularMap) -> Result<VerificationReport, CoveringError> {
    let cell_map = m.cell_map.as_ref().ok_or(CoveringError::IncompleteMap)?;
    let mut report = VerificationReport::new();

    if let Err(e) = m.check_structure() {
        report.error("map", e.to_string());
        return Ok(report);
    }

    // (a) cells
    for c in m.source.cells() {
        let mapped = m.map_boundary(&c.boundary)?;
        let Some(image) = cell_map.get(&c.name) else {
            report.error(c.name.clone(), format!("cell {:?} has no image", c.name));
            continue;
        };
        let Some(target) = m.target.cell(&image.cell) else {
            report.error(
                c.name.clone(),
                format!("cell {:?} maps to unknown cell {:?}", c.name, image.cell),
            );
            continue;
        };
        let expected = if image.reversed {
            target.boundary.inverse().rotate_left(image.rotation % target.boundary.len().max(1))
        } else {
            target.boundary.rotate_left(image.rotation % target.boundary.len().max(1))
        };
        if mapped != expected {
            report.error_with(
                c.name.clone(),
                format!(
                    "mapped boundary of cell {:?} does not equal cell {:?} rotated by {}{}",
                    c.name,
                    image.cell,
                    image.rotation,
                    if image.reversed { " (reversed)" } else { "" }
                ),
                serde_json::json!({
                    "cell": c.name,
                    "mapped": mapped.to_word().to_string(),
                    "expected": expected.to_word().to_string(),
                }),
            );
        }
    }

    // (b) + (c) links at interior vertices
    for v in &m.interior {
        if !m.source.has_vertex(v) {
            report.error(v.clone(), format!("interior vertex {v:?} is not in the source"));
            continue;
        }
        let image_vertex = &m.vertex_map[v];
        let source_link = m.source.vertex_link(v).expect("vertex exists");
        let target_link = match m.target.vertex_link(image_vertex) {
            Ok(l) => l,
            Err(e) => {
                report.error(v.clone(), e.to_string());
                continue;
            }
        };

        let mut image_ends: Vec<EdgeEnd> = Vec::new();
        for end in &source_link.edge_ends {
            image_ends.push(EdgeEnd { edge: m.edge_map[&end.edge].clone(), end: end.end });
        }
        report_multiset_failures(
            &mut report,
            v,
            "edge-end",
            &source_link.edge_ends,
            &image_ends,
            &target_link.edge_ends,
            |e| serde_json::json!({ "edge": e.edge, "end": e.end }),
        );

        let mut image_corners: Vec<Corner> = Vec::new();
        let mut incomplete = false;
        for corner in &source_link.corners {
            match m.corner_image(corner) {
                Some(c) => image_corners.push(c),
                None => incomplete = true,
            }
        }
        if incomplete {
            report.error(v.clone(), "a corner at this vertex has no image".to_string());
            continue;
        }
        report_multiset_failures(
            &mut report,
            v,
            "corner",
            &source_link.corners,
            &image_corners,
            &target_link.corners,
            |c| serde_json::json!({ "cell": c.cell, "pos": c.pos }),
        );
    }
    Ok(report)
}

/// Compares the image multiset with the target multiset and reports
/// collisions (two source items with equal images) and count mismatches.
fn report_multiset_failures<T, S>(
    report: &mut VerificationReport,
    vertex: &str,
    kind: &str,
    source_items: &[S],
    images: &[T],
    target_items: &[T],
    to_json: impl Fn(&T) -> serde_json::Value,
) where
    T: Ord + Clone,
    S: Ord + Clone + serde::Serialize,
{
    let mut sorted_images = images.to_vec();
    let mut sorted_target = target_items.to_vec();
    sorted_images.sort();
    sorted_target.sort();
    if sorted_images == sorted_target {
        return;
    }
    // find a colliding pair to exhibit in the report
    let mut by_image: BTreeMap<&T, Vec<&S>> = BTreeMap::new();
    for (s, t) in source_items.iter().zip(images.iter()) {
        by_image.entry(t).or_default().push(s);
    }
    let mut reported = false;
    for (image, pre) in &by_image {
        let allowed = sorted_target.iter().filter(|t| *t == *image).count();
        if pre.len() > allowed {
            report.error_with(
                vertex.to_string(),
                format!(
                    "{kind} map collides at vertex {vertex:?}: {} preimages of one image, {} allowed",
                    pre.len(),
                    allowed
                ),
                serde_json::json!({
                    "kind": kind,
                    "image": to_json(image),
                    "preimages": pre,
                }),
            );
            reported = true;
        }
    }
    if !reported {
        report.error(
            vertex.to_string(),
            format!("{kind} multiset at vertex {vertex:?} does not match its image vertex"),
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Cell, Edge};
    use crate::word::Word;

    fn torus() -> TwoComplex {
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
    fn identity_is_a_covering() {
        let cx = torus();
        let m = CellularMap::identity(&cx);
        let report = verify_covering(&m).unwrap();
        assert!(report.pass(), "{:?}", report.findings);
    }

    #[test]
    fn derive_cell_map_on_identity() {
        let cx = torus();
        let mut m = CellularMap::identity(&cx);
        m.cell_map = None;
        let derived = m.derive_cell_map().unwrap();
        let cm = derived.cell_map.unwrap();
        assert_eq!(cm["c"], CellImage { cell: "c".into(), rotation: 0, reversed: false });
    }

    #[test]
    fn collapsing_both_edges_has_no_cell_image() {
        let cx = torus();
        let vertex_map = BTreeMap::from([("v".to_string(), "v".to_string())]);
        let edge_map = BTreeMap::from([
            ("a".to_string(), "a".to_string()),
            ("b".to_string(), "a".to_string()),
        ]);
        let m = CellularMap::new(cx.clone(), cx, vertex_map, edge_map);
        assert!(matches!(
            m.derive_cell_map(),
            Err(CoveringError::NoMatch(cell)) if cell == "c"
        ));
    }

    #[test]
    fn verify_requires_cell_map() {
        let cx = torus();
        let mut m = CellularMap::identity(&cx);
        m.cell_map = None;
        assert!(matches!(verify_covering(&m), Err(CoveringError::IncompleteMap)));
    }

    #[test]
    fn edge_collision_is_reported_with_pair() {
        // map a figure-eight onto a single loop: both loops hit the same edge
        let eight = TwoComplex::new(
            vec!["v".into()],
            vec![
                Edge { name: "a".into(), tail: "v".into(), head: "v".into() },
                Edge { name: "b".into(), tail: "v".into(), head: "v".into() },
            ],
            vec![],
        );
        let circle = TwoComplex::new(
            vec!["w".into()],
            vec![Edge { name: "c".into(), tail: "w".into(), head: "w".into() }],
            vec![],
        );
        let vertex_map = BTreeMap::from([("v".to_string(), "w".to_string())]);
        let edge_map = BTreeMap::from([
            ("a".to_string(), "c".to_string()),
            ("b".to_string(), "c".to_string()),
        ]);
        let mut m = CellularMap::new(eight, circle, vertex_map, edge_map);
        m.cell_map = Some(BTreeMap::new());
        let report = verify_covering(&m).unwrap();
        assert!(!report.pass());
        assert!(report
            .errors()
            .any(|f| f.message.contains("edge-end map collides") && f.counterexample.is_some()));
    }

    #[test]
    fn derive_is_cellular_only_check() {
        // mapping must also fail when an edge image is missing entirely
        let cx = torus();
        let vertex_map = BTreeMap::from([("v".to_string(), "v".to_string())]);
        let edge_map = BTreeMap::from([("a".to_string(), "a".to_string())]);
        let m = CellularMap::new(cx.clone(), cx, vertex_map, edge_map);
        assert!(matches!(m.derive_cell_map(), Err(CoveringError::MissingEdgeImage(_))));
    }
}
