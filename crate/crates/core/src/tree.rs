//! The labeled regular tree underlying the Baumslag-Solitar complex: every
//! complete vertex heads four edges carrying all four (gamma, delta) label
//! pairs and tails two edges whose gamma values differ and whose delta
//! values differ. Edges join vertices of different colors.

use serde::{Deserialize, Serialize};

use crate::report::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeVertex {
    pub name: String,
    pub color: Color,
    /// Interior tree vertices have full degree; frontier vertices may not.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub name: String,
    pub tail: String,
    pub head: String,
    pub gamma: u8,
    pub delta: u8,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledTree {
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<TreeEdge>,
}

impl LabeledTree {
    pub fn vertex(&self, name: &str) -> Option<&TreeVertex> {
        self.vertices.iter().find(|v| v.name == name)
    }

    pub fn out_edges(&self, v: &str) -> Vec<&TreeEdge> {
        self.edges.iter().filter(|e| e.tail == v).collect()
    }

    pub fn in_edges(&self, v: &str) -> Vec<&TreeEdge> {
        self.edges.iter().filter(|e| e.head == v).collect()
    }

    /// Checks the labeling constraints, bipartiteness by color, and
    /// acyclicity/connectivity of the underlying graph.
    pub fn validate(&self) -> VerificationReport {
        let mut report = VerificationReport::new();
        for e in &self.edges {
            match (self.vertex(&e.tail), self.vertex(&e.head)) {
                (Some(t), Some(h)) => {
                    if t.color == h.color {
                        report.error(
                            e.name.clone(),
                            format!("edge {:?} joins two {:?} vertices", e.name, t.color),
                        );
                    }
                }
                _ => report.error(
                    e.name.clone(),
                    format!("edge {:?} has an undeclared endpoint", e.name),
                ),
            }
            if e.gamma > 1 || e.delta > 1 {
                report.error(e.name.clone(), format!("edge {:?} has labels outside {{0,1}}", e.name));
            }
        }
        // connected and acyclic: |E| = |V| - 1 and everything reachable
        if !self.vertices.is_empty() && self.edges.len() + 1 != self.vertices.len() {
            report.error(
                "tree",
                format!(
                    "{} edges on {} vertices cannot be a tree",
                    self.edges.len(),
                    self.vertices.len()
                ),
            );
        }
        let mut reachable = std::collections::BTreeSet::new();
        if let Some(first) = self.vertices.first() {
            let mut queue = std::collections::VecDeque::from([first.name.clone()]);
            reachable.insert(first.name.clone());
            while let Some(v) = queue.pop_front() {
                for e in &self.edges {
                    for (a, b) in [(&e.tail, &e.head), (&e.head, &e.tail)] {
                        if *a == v && reachable.insert(b.clone()) {
                            queue.push_back(b.clone());
                        }
                    }
                }
            }
        }
        if reachable.len() != self.vertices.len() {
            report.error("tree", "underlying graph is disconnected");
        }

        for v in &self.vertices {
            let out: Vec<(u8, u8)> = self.out_edges(&v.name).iter().map(|e| (e.gamma, e.delta)).collect();
            let ins: Vec<(u8, u8)> = self.in_edges(&v.name).iter().map(|e| (e.gamma, e.delta)).collect();
            if v.complete {
                let mut sorted_in = ins.clone();
                sorted_in.sort_unstable();
                if sorted_in != vec![(0, 0), (0, 1), (1, 0), (1, 1)] {
                    report.error(
                        v.name.clone(),
                        format!("complete vertex {:?} heads labels {ins:?}, need all four pairs", v.name),
                    );
                }
                let gammas_differ = out.len() == 2 && out[0].0 != out[1].0;
                let deltas_differ = out.len() == 2 && out[0].1 != out[1].1;
                if !(gammas_differ && deltas_differ) {
                    report.error(
                        v.name.clone(),
                        format!(
                            "complete vertex {:?} tails labels {out:?}, need two edges with differing gamma and differing delta",
                            v.name
                        ),
                    );
                }
            } else {
                let mut sorted_in = ins.clone();
                sorted_in.sort_unstable();
                sorted_in.dedup();
                if sorted_in.len() != ins.len() {
                    report.error(v.name.clone(), format!("frontier vertex {:?} repeats an in-label pair", v.name));
                }
                if out.len() > 2 {
                    report.error(v.name.clone(), format!("frontier vertex {:?} tails too many edges", v.name));
                }
                if out.len() == 2 && (out[0].0 == out[1].0 || out[0].1 == out[1].1) {
                    report.error(v.name.clone(), format!("frontier vertex {:?} repeats an out gamma or delta", v.name));
                }
            }
        }
        report
    }
}

/// Deterministic canonical ball of tree-radius `r` around a black root.
/// Vertices at distance below `r` are completed in breadth-first order.
/// A vertex completed at an even step with no out-edge yet receives the
/// out-pair set {(0,0), (1,1)}, at an odd step {(0,1), (1,0)}; a vertex
/// that already tails one edge receives the one complementary pair. The
/// missing in-pairs are created in the order (0,0), (0,1), (1,0), (1,1).
/// New vertices are named by the path from the root: `h`/`t` for head/tail
/// side followed by the two labels.
pub fn labeled_tree_ball(radius: usize) -> LabeledTree {
    let mut tree = LabeledTree::default();
    tree.vertices.push(TreeVertex { name: "o".into(), color: Color::Black, complete: radius > 0 });
    let mut frontier: Vec<(String, usize)> = vec![("o".into(), 0)];
    let mut step = 0usize;

    while let Some((name, dist)) = frontier.first().cloned() {
        frontier.remove(0);
        if dist >= radius {
            continue;
        }
        let color = tree.vertex(&name).expect("queued vertex exists").color;
        let child_color = color.flip();
        let existing_out: Vec<(u8, u8)> =
            tree.out_edges(&name).iter().map(|e| (e.gamma, e.delta)).collect();
        let existing_in: Vec<(u8, u8)> =
            tree.in_edges(&name).iter().map(|e| (e.gamma, e.delta)).collect();

        let out_pairs: Vec<(u8, u8)> = match existing_out.as_slice() {
            [] => {
                if step.is_multiple_of(2) {
                    vec![(0, 0), (1, 1)]
                } else {
                    vec![(0, 1), (1, 0)]
                }
            }
            [(g, d)] => vec![(1 - g, 1 - d)],
            _ => vec![],
        };
        for (g, d) in out_pairs {
            let child = format!("{name}h{g}{d}");
            tree.vertices.push(TreeVertex {
                name: child.clone(),
                color: child_color,
                complete: dist + 1 < radius,
            });
            tree.edges.push(TreeEdge {
                name: child.clone(),
                tail: name.clone(),
                head: child.clone(),
                gamma: g,
                delta: d,
            });
            frontier.push((child, dist + 1));
        }
        for (g, d) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
            if existing_in.contains(&(g, d)) {
                continue;
            }
            let child = format!("{name}t{g}{d}");
            tree.vertices.push(TreeVertex {
                name: child.clone(),
                color: child_color,
                complete: dist + 1 < radius,
            });
            tree.edges.push(TreeEdge {
                name: child.clone(),
                tail: child.clone(),
                head: name.clone(),
                gamma: g,
                delta: d,
            });
            frontier.push((child, dist + 1));
        }
        step += 1;
    }
    tree
}
