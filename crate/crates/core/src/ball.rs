//! Finite truncations of the Baumslag-Solitar complex built over a labeled
//! tree: vertices `v@i`, vertical edges `v@i -> v@(i+1)`, skew edges
//! `v@i -> w@(2i+gamma)`, and square-like 2-cells, together with the two
//! covering maps onto the catalog complexes K and L.

use std::collections::{BTreeMap, BTreeSet};

use crate::catalog::{complex_k, complex_l};
use crate::complex::{BoundaryWord, Cell, Edge, SignedEdge, TwoComplex};
use crate::covering::CellularMap;
use crate::error::CoveringError;
use crate::tree::{Color, LabeledTree, TreeEdge};

/// Which printed edge rule the map onto K uses: `Literal` keys on the
/// parity of the height subscript alone; `Corrected` keys on the parity of
/// height plus the delta label, which is the variant consistent with link
/// bijectivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRuleVariant {
    Literal,
    Corrected,
}

/// A height-truncated product complex over a labeled tree, with the set of
/// vertices whose entire untruncated star survived the truncation.
#[derive(Debug, Clone)]
pub struct BsBall {
    pub tree: LabeledTree,
    pub i_min: i64,
    pub i_max: i64,
    pub complex: TwoComplex,
    pub interior: BTreeSet<String>,
}

fn vertex_name(v: &str, i: i64) -> String {
    format!("{v}@{i}")
}

fn vertical_name(v: &str, i: i64) -> String {
    format!("{v}@{i}v")
}

fn skew_name(e: &str, i: i64) -> String {
    format!("{e}@{i}s")
}

fn cell_name(e: &str, i: i64) -> String {
    format!("{e}@{i}D")
}

struct Heights {
    i_min: i64,
    i_max: i64,
}

impl Heights {
    fn contains(&self, i: i64) -> bool {
        self.i_min <= i && i <= self.i_max
    }

    fn skew_exists(&self, gamma: i64, i: i64) -> bool {
        self.contains(i) && self.contains(2 * i + gamma)
    }

    /// All five boundary edges of the cell `D_{e,i}` exist.
    fn cell_exists(&self, gamma: i64, i: i64) -> bool {
        self.contains(i)
            && self.contains(i + 1)
            && self.contains(2 * i + gamma)
            && self.contains(2 * i + 2 + gamma)
    }
}

/// Builds the truncation of the product complex over `tree` with heights in
/// `[i_min, i_max]`.
pub fn bs_ball(tree: &LabeledTree, i_min: i64, i_max: i64) -> Result<BsBall, CoveringError> {
    if i_min >= i_max {
        return Err(CoveringError::EmptyHeightRange);
    }
    let h = Heights { i_min, i_max };

    let mut vertices = Vec::new();
    for v in &tree.vertices {
        for i in i_min..=i_max {
            vertices.push(vertex_name(&v.name, i));
        }
    }
    let mut edges = Vec::new();
    for v in &tree.vertices {
        for i in i_min..i_max {
            edges.push(Edge {
                name: vertical_name(&v.name, i),
                tail: vertex_name(&v.name, i),
                head: vertex_name(&v.name, i + 1),
            });
        }
    }
    for e in &tree.edges {
        for i in i_min..=i_max {
            if h.skew_exists(e.gamma as i64, i) {
                edges.push(Edge {
                    name: skew_name(&e.name, i),
                    tail: vertex_name(&e.tail, i),
                    head: vertex_name(&e.head, 2 * i + e.gamma as i64),
                });
            }
        }
    }
    let mut cells = Vec::new();
    for e in &tree.edges {
        let gamma = e.gamma as i64;
        for i in i_min..=i_max {
            if !h.cell_exists(gamma, i) {
                continue;
            }
            let boundary = BoundaryWord(vec![
                SignedEdge::new(skew_name(&e.name, i), -1),
                SignedEdge::new(vertical_name(&e.tail, i), 1),
                SignedEdge::new(skew_name(&e.name, i + 1), 1),
                SignedEdge::new(vertical_name(&e.head, 2 * i + 1 + gamma), -1),
                SignedEdge::new(vertical_name(&e.head, 2 * i + gamma), -1),
            ]);
            cells.push(Cell { name: cell_name(&e.name, i), boundary });
        }
    }
    let complex = TwoComplex::new(vertices, edges, cells);

    // interior: the tree vertex is complete and every cell of the
    // untruncated complex incident to v@i exists in the truncation
    let mut interior = BTreeSet::new();
    for v in tree.vertices.iter().filter(|v| v.complete) {
        let outs: Vec<&TreeEdge> = tree.out_edges(&v.name);
        let ins: Vec<&TreeEdge> = tree.in_edges(&v.name);
        for i in i_min..=i_max {
            let tail_side = outs.iter().all(|e| {
                let g = e.gamma as i64;
                h.cell_exists(g, i - 1) && h.cell_exists(g, i)
            });
            let head_side = ins.iter().all(|f| {
                let g = f.gamma as i64;
                let d = i - g;
                if d.rem_euclid(2) == 0 {
                    h.cell_exists(g, d / 2 - 1) && h.cell_exists(g, d / 2)
                } else {
                    h.cell_exists(g, (d - 1) / 2)
                }
            });
            if tail_side && head_side {
                interior.insert(vertex_name(&v.name, i));
            }
        }
    }
    Ok(BsBall { tree: tree.clone(), i_min, i_max, complex, interior })
}

fn parity(x: i64) -> i64 {
    x.rem_euclid(2)
}

/// The covering onto K: every vertex to the unique vertex of K, vertical
/// edges to `c`, skew edges to `d` or `z` by the chosen rule, cell images
/// derived from the edge map.
pub fn covering_to_k(ball: &BsBall, rule: KRuleVariant) -> Result<CellularMap, CoveringError> {
    let target = complex_k();
    let mut vertex_map = BTreeMap::new();
    for v in ball.complex.vertices() {
        vertex_map.insert(v.clone(), "v".to_string());
    }
    let mut edge_map = BTreeMap::new();
    for v in &ball.tree.vertices {
        for i in ball.i_min..ball.i_max {
            edge_map.insert(vertical_name(&v.name, i), "c".to_string());
        }
    }
    for e in &ball.tree.edges {
        for i in ball.i_min..=ball.i_max {
            let name = skew_name(&e.name, i);
            if ball.complex.edge(&name).is_none() {
                continue;
            }
            let key = match rule {
                KRuleVariant::Literal => parity(i),
                KRuleVariant::Corrected => parity(i + e.delta as i64),
            };
            let image = if key == 0 { "d" } else { "z" };
            edge_map.insert(name, image.to_string());
        }
    }
    let map = CellularMap::new(ball.complex.clone(), target, vertex_map, edge_map)
        .with_interior(ball.interior.clone());
    map.derive_cell_map()
}

/// The covering onto L: vertices by tree color, vertical edges to the loop
/// of the same color, skew edges by the four-case tail-color rule, cell
/// images derived from the edge map.
pub fn covering_to_l(ball: &BsBall) -> Result<CellularMap, CoveringError> {
    let target = complex_l();
    let color_of = |name: &str| ball.tree.vertex(name).map(|v| v.color);
    let mut vertex_map = BTreeMap::new();
    for v in &ball.tree.vertices {
        let image = match v.color {
            Color::Black => "black",
            Color::White => "white",
        };
        for i in ball.i_min..=ball.i_max {
            vertex_map.insert(vertex_name(&v.name, i), image.to_string());
        }
    }
    let mut edge_map = BTreeMap::new();
    for v in &ball.tree.vertices {
        let image = match v.color {
            Color::Black => "cb",
            Color::White => "cw",
        };
        for i in ball.i_min..ball.i_max {
            edge_map.insert(vertical_name(&v.name, i), image.to_string());
        }
    }
    for e in &ball.tree.edges {
        let tail_color = color_of(&e.tail).expect("tree edge endpoints exist");
        for i in ball.i_min..=ball.i_max {
            let name = skew_name(&e.name, i);
            if ball.complex.edge(&name).is_none() {
                continue;
            }
            let image = match tail_color {
                Color::Black => {
                    if e.delta == 0 {
                        "y"
                    } else {
                        "z"
                    }
                }
                Color::White => {
                    if parity(i + e.delta as i64) == 0 {
                        "t"
                    } else {
                        "t1"
                    }
                }
            };
            edge_map.insert(name, image.to_string());
        }
    }
    let map = CellularMap::new(ball.complex.clone(), target, vertex_map, edge_map)
        .with_interior(ball.interior.clone());
    map.derive_cell_map()
}
