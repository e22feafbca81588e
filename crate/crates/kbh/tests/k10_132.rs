//! Frozen fingerprints of the catalog 10_132: diagram shape, bracket
//! values, the published Khovanov table, and an independent braid
//! realization of the same knot. The constants here were produced by the
//! exhaustive scans in tangle_scan.rs and word_search.rs.

use kbh::bracket::kauffman_f;
use kbh::diagram::{builtin, from_braid, OrientedDiagram};
use kbh::khovanov::khovanov_homology;

const BRAID_WORD: [i64; 11] = [-3, -3, -3, -2, -1, -1, 3, -2, 1, 1, 1];

fn free_ranks(od: &OrientedDiagram) -> Vec<(i64, i64, usize)> {
    khovanov_homology(od)
        .iter()
        .filter(|(_, _, g)| g.rank > 0)
        .map(|(k, q, g)| (k, q, g.rank))
        .collect()
}

// the published table, free part
fn published_table() -> Vec<(i64, i64, usize)> {
    vec![
        (-7, -15, 1),
        (-6, -11, 1),
        (-5, -11, 1),
        (-4, -9, 1),
        (-4, -7, 1),
        (-3, -9, 1),
        (-3, -5, 1),
        (-2, -5, 2),
        (-1, -1, 1),
        (0, -3, 1),
        (0, -1, 1),
    ]
}

#[test]
fn catalog_diagram_shape() {
    let od = builtin("k10_132").unwrap();
    assert_eq!(od.diagram.n(), 10);
    assert_eq!(od.writhe, -4);
    assert_eq!(od.components, 1);

    let framed = builtin("k10_132_framed0").unwrap();
    assert_eq!(framed.diagram.n(), 14);
    assert_eq!(framed.writhe, 0);
}

#[test]
fn same_kauffman_f_as_5_1() {
    let f10 = kauffman_f(&builtin("k10_132").unwrap());
    assert_eq!(f10, kauffman_f(&builtin("k5_1").unwrap()));
}

#[test]
fn khovanov_table_matches_the_published_one() {
    let od = builtin("k10_132").unwrap();
    assert_eq!(free_ranks(&od), published_table());
}

#[test]
fn braid_realization_agrees() {
    let od = from_braid(&BRAID_WORD, 4).unwrap();
    assert_eq!(od.components, 1);
    assert_eq!(od.writhe, -3);
    assert_eq!(kauffman_f(&od), kauffman_f(&builtin("k10_132").unwrap()));
    assert_eq!(free_ranks(&od), published_table());
}
