//! JSON interchange formats for complexes, labeled trees, cellular maps,
//! voltages, and presentations. Emission is deterministic: struct fields in
//! declaration order, maps sorted by key.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{BoundaryWord, Cell, Edge, SignedEdge, TwoComplex};
use crate::covering::CellularMap;
use crate::iso::CellImage;
use crate::presentation::Presentation;
use crate::tree::{Color, LabeledTree, TreeEdge, TreeVertex};
use crate::voltage::{Perm, Voltage};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub name: String,
    pub tail: String,
    pub head: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryLetterJson {
    pub edge: String,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub name: String,
    pub boundary: Vec<BoundaryLetterJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeLabelJson {
    pub gamma: u8,
    pub delta: u8,
}

/// The complex interchange object. The optional keys carry labeled-tree
/// data (`colors`, `labels`, `complete`) and truncation data (`interior`);
/// plain complexes omit them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    pub cells: Vec<CellJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub colors: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<BTreeMap<String, TreeLabelJson>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub complete: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub interior: Option<Vec<String>>,
}

pub fn complex_to_json(cx: &TwoComplex) -> ComplexJson {
    ComplexJson {
        vertices: cx.vertices().to_vec(),
        edges: cx
            .edges()
            .iter()
            .map(|e| EdgeJson { name: e.name.clone(), tail: e.tail.clone(), head: e.head.clone() })
            .collect(),
        cells: cx
            .cells()
            .iter()
            .map(|c| CellJson {
                name: c.name.clone(),
                boundary: c
                    .boundary
                    .0
                    .iter()
                    .map(|l| BoundaryLetterJson { edge: l.edge.clone(), sign: l.sign })
                    .collect(),
            })
            .collect(),
        colors: None,
        labels: None,
        complete: None,
        interior: None,
    }
}

pub fn json_to_complex(json: &ComplexJson) -> TwoComplex {
    TwoComplex::new(
        json.vertices.clone(),
        json.edges
            .iter()
            .map(|e| Edge { name: e.name.clone(), tail: e.tail.clone(), head: e.head.clone() })
            .collect(),
        json.cells
            .iter()
            .map(|c| Cell {
                name: c.name.clone(),
                boundary: BoundaryWord(
                    c.boundary
                        .iter()
                        .map(|l| SignedEdge::new(l.edge.clone(), l.sign))
                        .collect(),
                ),
            })
            .collect(),
    )
}

pub fn tree_to_json(tree: &LabeledTree) -> ComplexJson {
    let mut json = ComplexJson {
        vertices: tree.vertices.iter().map(|v| v.name.clone()).collect(),
        edges: tree
            .edges
            .iter()
            .map(|e| EdgeJson { name: e.name.clone(), tail: e.tail.clone(), head: e.head.clone() })
            .collect(),
        cells: Vec::new(),
        colors: None,
        labels: None,
        complete: None,
        interior: None,
    };
    json.colors = Some(
        tree.vertices
            .iter()
            .map(|v| {
                (
                    v.name.clone(),
                    match v.color {
                        Color::Black => "black".to_string(),
                        Color::White => "white".to_string(),
                    },
                )
            })
            .collect(),
    );
    json.labels = Some(
        tree.edges
            .iter()
            .map(|e| (e.name.clone(), TreeLabelJson { gamma: e.gamma, delta: e.delta }))
            .collect(),
    );
    json.complete =
        Some(tree.vertices.iter().filter(|v| v.complete).map(|v| v.name.clone()).collect());
    json
}

pub fn json_to_tree(json: &ComplexJson) -> Result<LabeledTree, String> {
    let colors = json.colors.as_ref().ok_or("tree file is missing the colors key")?;
    let labels = json.labels.as_ref().ok_or("tree file is missing the labels key")?;
    let complete = json.complete.clone().unwrap_or_default();
    let mut vertices = Vec::new();
    for name in &json.vertices {
        let color = match colors.get(name).map(String::as_str) {
            Some("black") => Color::Black,
            Some("white") => Color::White,
            other => return Err(format!("vertex {name:?} has color {other:?}")),
        };
        vertices.push(TreeVertex {
            name: name.clone(),
            color,
            complete: complete.contains(name),
        });
    }
    let mut edges = Vec::new();
    for e in &json.edges {
        let label = labels
            .get(&e.name)
            .ok_or_else(|| format!("edge {:?} has no (gamma, delta) label", e.name))?;
        edges.push(TreeEdge {
            name: e.name.clone(),
            tail: e.tail.clone(),
            head: e.head.clone(),
            gamma: label.gamma,
            delta: label.delta,
        });
    }
    Ok(LabeledTree { vertices, edges })
}

/// Inline complex or a path to one; emitted maps embed their complexes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexOrPath {
    Path(String),
    Inline(Box<ComplexJson>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellImageJson {
    pub cell: String,
    pub rotation: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reversed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub source: ComplexOrPath,
    pub target: ComplexOrPath,
    pub vertex_map: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cell_map: Option<BTreeMap<String, CellImageJson>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub interior: Option<Vec<String>>,
}

pub fn map_to_json(m: &CellularMap) -> MapJson {
    MapJson {
        source: ComplexOrPath::Inline(Box::new(complex_to_json(&m.source))),
        target: ComplexOrPath::Inline(Box::new(complex_to_json(&m.target))),
        vertex_map: m.vertex_map.clone(),
        edge_map: m.edge_map.clone(),
        cell_map: m.cell_map.as_ref().map(|cm| {
            cm.iter()
                .map(|(k, v)| {
                    (
                        k.clone(),
                        CellImageJson {
                            cell: v.cell.clone(),
                            rotation: v.rotation,
                            reversed: v.reversed,
                        },
                    )
                })
                .collect()
        }),
        interior: Some(m.interior.iter().cloned().collect()),
    }
}

/// Materializes a map file; `resolve` loads referenced complex paths.
pub fn json_to_map(
    json: &MapJson,
    resolve: &dyn Fn(&str) -> Result<ComplexJson, String>,
) -> Result<CellularMap, String> {
    let load = |c: &ComplexOrPath| -> Result<TwoComplex, String> {
        match c {
            ComplexOrPath::Inline(inline) => Ok(json_to_complex(inline)),
            ComplexOrPath::Path(path) => Ok(json_to_complex(&resolve(path)?)),
        }
    };
    let source = load(&json.source)?;
    let target = load(&json.target)?;
    let mut m = CellularMap::new(source, target, json.vertex_map.clone(), json.edge_map.clone());
    if let Some(cm) = &json.cell_map {
        m.cell_map = Some(
            cm.iter()
                .map(|(k, v)| {
                    (
                        k.clone(),
                        CellImage { cell: v.cell.clone(), rotation: v.rotation, reversed: v.reversed },
                    )
                })
                .collect(),
        );
    }
    if let Some(interior) = &json.interior {
        m = m.with_interior(interior.iter().cloned().collect());
    }
    Ok(m)
}

/// Voltage file: `{"sheets": n, "permutations": {edge: one-line 1..n}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoltageJson {
    pub sheets: usize,
    pub permutations: BTreeMap<String, Vec<usize>>,
}

pub fn voltage_to_json(v: &Voltage) -> VoltageJson {
    VoltageJson {
        sheets: v.sheets,
        permutations: v
            .perms
            .iter()
            .map(|(k, p)| (k.clone(), p.0.iter().map(|x| x + 1).collect()))
            .collect(),
    }
}

pub fn json_to_voltage(json: &VoltageJson) -> Result<Voltage, String> {
    let mut perms = BTreeMap::new();
    for (edge, line) in &json.permutations {
        if line.len() != json.sheets {
            return Err(format!(
                "permutation on edge {edge:?} has length {}, expected {}",
                line.len(),
                json.sheets
            ));
        }
        let mut seen = vec![false; json.sheets];
        let mut perm = Vec::with_capacity(line.len());
        for &x in line {
            if x == 0 || x > json.sheets || seen[x - 1] {
                return Err(format!("permutation on edge {edge:?} is not one-line 1..{}", json.sheets));
            }
            seen[x - 1] = true;
            perm.push(x - 1);
        }
        perms.insert(edge.clone(), Perm(perm));
    }
    Ok(Voltage { sheets: json.sheets, perms })
}

/// A relator is either a letter array or the compact text form
/// `"y^-1 c y c^-1 c^-1"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RelatorJson {
    Compact(String),
    Letters(Vec<Letter>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub relators: Vec<RelatorJson>,
}

pub fn presentation_to_json(p: &Presentation) -> PresentationJson {
    PresentationJson {
        generators: p.generators.clone(),
        relators: p.relators.iter().map(|r| RelatorJson::Letters(r.0.clone())).collect(),
    }
}

pub fn json_to_presentation(json: &PresentationJson) -> Result<Presentation, String> {
    let mut relators = Vec::new();
    for r in &json.relators {
        match r {
            RelatorJson::Letters(letters) => relators.push(Word(letters.clone())),
            RelatorJson::Compact(text) => {
                relators.push(Word::parse_compact(text).map_err(|e| e.to_string())?)
            }
        }
    }
    let p = Presentation::new(json.generators.clone(), relators);
    p.check_letters().map_err(|e| e.to_string())?;
    Ok(p)
}

/// Pretty JSON with a trailing newline; the only emission path, so output
/// bytes are reproducible.
pub fn to_pretty_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
