mod common;

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use spectralcut::connectivity::{check_dense_edge_conn, edge_connectivity, vertex_connectivity};
use spectralcut::extremal::{build_g, build_h, rho, ThresholdParams};
use spectralcut::harness::{for_each_regular, verify_sharpness, Labelling};
use spectralcut::spectra::{lambda2, mu2};

use common::canonical_code;

// (d, t, order, λ₂, κ', κ, μ₂), computed from the printed edge lists with an
// independent dense eigensolver and flow code.
const FROZEN: [(usize, usize, usize, f64, usize, usize, f64); 9] = [
    (5, 3, 14, 4.274917217635374, 3, 3, 0.7250827823646271),
    (6, 4, 14, 5.000000000000002, 4, 4, 1.000000000000001),
    (7, 5, 18, 5.999999999999997, 5, 5, 0.9999999999999978),
    (8, 6, 18, 6.772001872658766, 6, 6, 1.227998127341234),
    (11, 5, 26, 10.300735254367721, 5, 5, 0.6992647456322798),
    (12, 10, 26, 10.520797289396146, 10, 10, 1.479202710603856),
    (5, 4, 12, 3.8284271247461916, 4, 4, 1.1715728752538086),
    (7, 6, 16, 5.605551275463989, 6, 6, 1.3944487245360102),
    (9, 8, 20, 7.472135954999578, 8, 8, 1.5278640450004186),
];

#[test]
fn extremal_graphs_match_frozen_values() {
    for (d, t, n, l2, kp, k, m2) in FROZEN {
        let g = build_g(d, t).unwrap();
        assert_eq!(g.order(), n);
        assert_eq!(g.is_regular(), Some(d));
        assert!((lambda2(&g).unwrap() - l2).abs() < 1e-9, "({d}, {t})");
        assert!((mu2(&g).unwrap() - m2).abs() < 1e-9, "({d}, {t})");
        assert_eq!(edge_connectivity(&g).unwrap().0, kp);
        assert_eq!(vertex_connectivity(&g).unwrap(), k);
    }
}

#[test]
fn half_graphs_have_edge_connectivity_one_below_the_degree() {
    for p in ThresholdParams::all(4, 12, false) {
        let h = build_h(p.d, p.t).unwrap();
        assert_eq!(h.min_degree(), p.d - 1);
        assert_eq!(check_dense_edge_conn(&h), Some(p.d - 1));
        assert_eq!(edge_connectivity(&h).unwrap().0, p.d - 1, "({}, {})", p.d, p.t);
    }
}

#[test]
fn one_below_the_degree_the_threshold_is_still_attained() {
    for (d, t, _, l2, kp, _, _) in FROZEN.iter().filter(|r| r.1 + 1 == r.0) {
        assert!((l2 - rho(*d, *t).unwrap()).abs() < 1e-9);
        assert_eq!(kp, t);
    }
    let rows = verify_sharpness(12).unwrap();
    let boundary: Vec<_> = rows.iter().filter(|r| !r.claimed).collect();
    assert!(!boundary.is_empty());
    assert!(boundary.iter().all(|r| r.report.t + 1 == r.report.d && r.attained));
}

#[test]
fn sharpness_rows_cover_every_valid_pair() {
    let rows = verify_sharpness(12).unwrap();
    let expected: usize = (4..=12usize)
        .map(|d| (3..d).filter(|t| t % 2 == 0 || d % 2 == 1).count())
        .sum();
    assert_eq!(rows.len(), expected);
    assert_eq!(rows.iter().filter(|r| r.claimed).count(), ThresholdParams::all(4, 12, true).len());
    let r53 = rows.iter().find(|r| (r.report.d, r.report.t) == (5, 3)).unwrap();
    assert_eq!(r53.report.csv_row().split(',').nth(4), Some("4.274917218"));
}

fn connected_classes(n: usize, d: usize) -> usize {
    let (base, flip) = if 2 * d > n - 1 { (n - 1 - d, true) } else { (d, false) };
    let mut classes = BTreeSet::new();
    let _ = for_each_regular(n, base, Labelling::Normalized, &mut |g| {
        let g = if flip { g.complement() } else { g.clone() };
        if g.is_connected() {
            classes.insert(canonical_code(&g));
        }
        ControlFlow::Continue(())
    })
    .unwrap();
    classes.len()
}

#[test]
fn connected_regular_graph_counts() {
    // Connected cubic graphs on 4, 6, 8 vertices and connected quartic
    // graphs on 5..=8 vertices.
    assert_eq!([4, 6, 8].map(|n| connected_classes(n, 3)), [1, 2, 5]);
    assert_eq!([5, 6, 7, 8].map(|n| connected_classes(n, 4)), [1, 1, 2, 6]);
    assert_eq!(connected_classes(7, 6), 1);
}
