//! Cell-merging checks: collapsing the subdividing edge of K gives the
//! one-relator Baumslag-Solitar complex, and collapsing t1 in L gives a
//! three-cell complex with the same abelianized fundamental group.

use twocover_core::complex::BoundaryWord;
use twocover_core::error::ComplexError;
use twocover_core::presentation::{abelian_invariants, pi1_from_complex};
use twocover_core::word::{canonical_cyclic, Word};
use twocover_core::{complex_bs, complex_isomorphic, complex_k, complex_l};

use num_bigint::BigInt;

#[test]
fn merging_k_along_z_gives_bs24() {
    let merged = complex_k().merge_cells_along_edge("z").unwrap();
    assert_eq!(merged.vertices().len(), 1);
    assert_eq!(merged.edges().len(), 2);
    assert_eq!(merged.cells().len(), 1);
    assert!(merged.validate().pass());

    // the spliced boundary is c^-1 d c^4 d^-1 c^-1
    let expected = Word::parse_compact("c^-1 d c c c c d^-1 c^-1").unwrap();
    assert_eq!(merged.cells()[0].boundary, BoundaryWord::from_word(&expected));

    let bs24 = complex_bs(2, 4).unwrap();
    let iso = complex_isomorphic(&merged, &bs24).expect("merged K is the BS(2,4) complex");
    assert!(twocover_core::apply_isomorphism(&merged, &iso).same_as(&bs24));
}

#[test]
fn merging_l_along_t1_gives_three_cells() {
    let l = complex_l();
    let merged = l.merge_cells_along_edge("t1").unwrap();
    assert_eq!(merged.cells().len(), 3);
    assert_eq!(merged.edges().len(), 5);
    assert!(merged.validate().pass());

    // the merged boundary is conjugate to t^-1 cw^2 t cb^-4
    let merged_cell = merged
        .cells()
        .iter()
        .find(|c| c.name == "C" || c.name == "D")
        .expect("one merged cell keeps a catalog name");
    let target = Word::parse_compact("t^-1 cw cw t cb^-1 cb^-1 cb^-1 cb^-1").unwrap();
    assert_eq!(
        canonical_cyclic(&merged_cell.boundary.to_word()),
        canonical_cyclic(&target)
    );

    // abelianized fundamental group unchanged by the homeomorphism
    let before = abelian_invariants(&pi1_from_complex(&l, None).unwrap());
    let after = abelian_invariants(&pi1_from_complex(&merged, None).unwrap());
    assert_eq!(before, (2, vec![BigInt::from(6)]));
    assert_eq!(after, before);
}

#[test]
fn merging_l_along_z_is_rejected() {
    assert_eq!(
        complex_l().merge_cells_along_edge("z"),
        Err(ComplexError::MergeSameCell { edge: "z".into(), cell: "B".into() })
    );
}

#[test]
fn merge_bookkeeping_and_euler_characteristic() {
    for (cx, edge) in [(complex_k(), "z"), (complex_l(), "t1")] {
        let merged = cx.merge_cells_along_edge(edge).unwrap();
        assert_eq!(merged.edges().len(), cx.edges().len() - 1);
        assert_eq!(merged.cells().len(), cx.cells().len() - 1);
        assert_eq!(merged.euler_characteristic(), cx.euler_characteristic());
    }
}

#[test]
fn merge_preserves_abelian_invariants_wherever_defined() {
    // try every edge of every catalog complex; whenever the preconditions
    // hold, the abelianization must be unchanged
    for cx in [complex_k(), complex_l(), complex_bs(2, 4).unwrap()] {
        let reference = abelian_invariants(&pi1_from_complex(&cx, None).unwrap());
        let mut merged_somewhere = false;
        for e in cx.edges() {
            if let Ok(merged) = cx.merge_cells_along_edge(&e.name) {
                merged_somewhere = true;
                let inv = abelian_invariants(&pi1_from_complex(&merged, None).unwrap());
                assert_eq!(inv, reference, "edge {}", e.name);
            }
        }
        assert_eq!(merged_somewhere, cx.cells().len() >= 2);
    }
}
