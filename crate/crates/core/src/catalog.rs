//! Constructors for the fixed catalog of complexes: K, L, and the standard
//! Baumslag-Solitar complexes BS(n, m).

use crate::complex::{standard_complex, BoundaryWord, Cell, Edge, TwoComplex};
use crate::error::ComplexError;
use crate::presentation::Presentation;
use crate::word::Word;

fn w(text: &str) -> Word {
    Word::parse_compact(text).expect("catalog words are well-formed")
}

/// `<c, d, z | c^-1 d c^2 z^-1, z^-1 c d c^-2>`, the two-relation spelling
/// of `c^-1 d c^2 = z = c d c^-2`.
pub fn presentation_k() -> Presentation {
    Presentation::new(
        vec!["c".into(), "d".into(), "z".into()],
        vec![w("c^-1 d c c z^-1"), w("z^-1 c d c^-1 c^-1")],
    )
}

/// The standard one-vertex complex of `presentation_k`: one vertex, loops
/// c, d, z, and two 2-cells.
pub fn complex_k() -> TwoComplex {
    standard_complex(&presentation_k()).expect("catalog presentation is valid")
}

/// Two vertices (black and white), six edges, and four 2-cells A, B, C, D.
/// The loops cb and cw sit at the black and white vertices; y and z run
/// black to white; t and t1 run white to black.
pub fn complex_l() -> TwoComplex {
    let black = "black".to_string();
    let white = "white".to_string();
    let edge = |name: &str, tail: &String, head: &String| Edge {
        name: name.into(),
        tail: tail.clone(),
        head: head.clone(),
    };
    let cell = |name: &str, boundary: &str| Cell {
        name: name.into(),
        boundary: BoundaryWord::from_word(&w(boundary)),
    };
    TwoComplex::new(
        vec![black.clone(), white.clone()],
        vec![
            edge("cb", &black, &black),
            edge("cw", &white, &white),
            edge("t", &white, &black),
            edge("t1", &white, &black),
            edge("y", &black, &white),
            edge("z", &black, &white),
        ],
        vec![
            cell("A", "y^-1 cb y cw^-2"),
            cell("B", "z^-1 cb z cw^-2"),
            cell("C", "t1^-1 cw t cb^-2"),
            cell("D", "t^-1 cw t1 cb^-2"),
        ],
    )
}

/// `<c, d | d^-1 c^n d c^-m>`.
pub fn presentation_bs(n: u32, m: u32) -> Result<Presentation, ComplexError> {
    if n == 0 || m == 0 {
        return Err(ComplexError::NonpositiveParameter);
    }
    let relator = Word::product(&[
        &w("d^-1"),
        &Word::power("c", n as i64),
        &w("d"),
        &Word::power("c", -(m as i64)),
    ]);
    Ok(Presentation::new(vec!["c".into(), "d".into()], vec![relator]))
}

/// Standard one-vertex complex of BS(n, m).
pub fn complex_bs(n: u32, m: u32) -> Result<TwoComplex, ComplexError> {
    standard_complex(&presentation_bs(n, m)?)
}
