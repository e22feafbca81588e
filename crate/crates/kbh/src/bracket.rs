//! Kauffman bracket by brute-force state sum, plus Kauffman's unnormalized
//! Jones polynomial f̂. These are the reference oracles every homology
//! computation is checked against.

use thiserror::Error;

use crate::diagram::{resolve, KauffmanState, LinkDiagram, OrientedDiagram};
use crate::poly::LaurentPoly;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("the empty diagram has no normalized bracket")]
pub struct EmptyDiagram;

/// −A^2 − A^{−2}, the value of one circle.
pub fn circle_value() -> LaurentPoly {
    LaurentPoly::from_terms("A", &[(-1, 2), (-1, -2)])
}

/// Σ_s A^(a(s)−b(s)) (−A^2−A^{−2})^(|s|−drop).
fn state_sum(d: &LinkDiagram, drop: u32) -> LaurentPoly {
    let n = d.n();
    let delta = circle_value();
    // every circle carries at least one smoothing arc, so 2n bounds them
    let max_circles = (2 * n + d.free_loops()).max(1) as usize;
    let mut pows = Vec::with_capacity(max_circles + 1);
    pows.push(LaurentPoly::one("A"));
    for k in 1..=max_circles {
        pows.push(pows[k - 1].mul(&delta));
    }
    let mut acc = LaurentPoly::zero("A");
    for mask in 0..1u64 << n {
        let s = KauffmanState::new(mask as u32, n);
        let circles = resolve(d, s).num_circles;
        let exp = s.a() as i64 - s.b() as i64;
        acc = acc.add(&pows[(circles - drop) as usize].mul_monomial(1, exp));
    }
    acc
}

/// Normalized bracket, ⟨unknot⟩ = 1.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly, EmptyDiagram> {
    if d.n() == 0 && d.free_loops() == 0 {
        return Err(EmptyDiagram);
    }
    Ok(state_sum(d, 1))
}

/// Unnormalized bracket: one circle is worth −A^2−A^{−2}, the empty diagram
/// is worth 1.
pub fn unnormalized_bracket(d: &LinkDiagram) -> LaurentPoly {
    state_sum(d, 0)
}

/// f̂ = (−A^3)^{−w} · unnormalized bracket, invariant under all Reidemeister
/// moves.
pub fn kauffman_f(od: &OrientedDiagram) -> LaurentPoly {
    let w = od.writhe;
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    unnormalized_bracket(&od.diagram).mul_monomial(sign, -3 * w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{
        apply_move, builtin, from_braid, orient, parse_pd, smooth_crossing, MoveKind, MoveSite,
    };
    use proptest::prelude::*;

    /// Second oracle: no state enumeration, just the skein recursion on the
    /// first crossing.
    fn bracket_by_smoothing(d: &LinkDiagram) -> LaurentPoly {
        if d.n() == 0 {
            return circle_value().pow(d.free_loops());
        }
        let (da, _) = smooth_crossing(d, 0, false);
        let (db, _) = smooth_crossing(d, 0, true);
        let a = bracket_by_smoothing(&da).mul_monomial(1, 1);
        let b = bracket_by_smoothing(&db).mul_monomial(1, -1);
        a.add(&b)
    }

    #[test]
    fn bracket_base_cases() {
        let unknot = builtin("unknot").unwrap().diagram;
        assert_eq!(kauffman_bracket(&unknot).unwrap().to_string(), "1");
        assert_eq!(unnormalized_bracket(&unknot).to_string(), "-A^2-A^-2");

        let unlink = parse_pd("PD[O(1), O(2)]").unwrap();
        assert_eq!(kauffman_bracket(&unlink).unwrap().to_string(), "-A^2-A^-2");

        let empty = parse_pd("PD[X(1,2,1,2)]").unwrap();
        let (smoothed, _) = smooth_crossing(&empty, 0, false);
        assert!(smoothed.n() == 0);
    }

    #[test]
    fn bracket_of_trefoils() {
        let right = builtin("trefoil_right").unwrap().diagram;
        assert_eq!(
            kauffman_bracket(&right).unwrap(),
            LaurentPoly::from_terms("A", &[(-1, 5), (-1, -3), (1, -7)])
        );
        // the mirror swaps A and A^{-1}
        let left = builtin("trefoil_left").unwrap().diagram;
        assert_eq!(
            kauffman_bracket(&left).unwrap(),
            LaurentPoly::from_terms("A", &[(-1, -5), (-1, 3), (1, 7)])
        );
    }

    #[test]
    fn f_matches_the_jones_polynomial_of_the_right_trefoil() {
        // V(right trefoil) = −t^4 + t^3 + t; f̂ = (−A^2−A^{−2}) · V(A^{−4})
        let v = LaurentPoly::from_terms("t", &[(-1, 4), (1, 3), (1, 1)]);
        let expected = circle_value().mul(&v.substitute("A", 1, -4));
        let t = builtin("trefoil_right").unwrap();
        assert_eq!(kauffman_f(&t), expected);
    }

    #[test]
    fn f_of_the_five_one_catalog_pair() {
        // with the writhe killed by curls, the normalized bracket is the
        // framed invariant itself
        let d1 = builtin("k5_1_framed0").unwrap();
        assert_eq!(
            kauffman_bracket(&d1.diagram).unwrap().to_string(),
            "-A^28+A^24-A^20+A^16+A^8"
        );
        let f = kauffman_f(&d1);
        assert_eq!(f.to_string(), "A^30-A^14-A^10-A^6");
        // and f matches the curl-free diagram, R1 invariance end to end
        assert_eq!(f, kauffman_f(&builtin("k5_1").unwrap()));
    }

    #[test]
    fn unknot_with_curl_has_unknot_f() {
        let u = builtin("unknot").unwrap().diagram;
        let curl = apply_move(&u, MoveKind::R1Plus, MoveSite::FreeLoop(0)).unwrap();
        assert_eq!(kauffman_f(&orient(&curl).unwrap()), circle_value());
    }

    #[test]
    fn curl_factors() {
        let t = builtin("trefoil_right").unwrap().diagram;
        let b = unnormalized_bracket(&t);
        for e in 1..=t.edge_count() {
            let plus = apply_move(&t, MoveKind::R1Plus, MoveSite::Edge(e)).unwrap();
            assert_eq!(unnormalized_bracket(&plus), b.mul_monomial(-1, 3));
            let minus = apply_move(&t, MoveKind::R1Minus, MoveSite::Edge(e)).unwrap();
            assert_eq!(unnormalized_bracket(&minus), b.mul_monomial(-1, -3));
        }
    }

    #[test]
    fn bracket_r3_invariance_on_a_braid_triangle() {
        let b = from_braid(&[1, 2, 1], 3).unwrap().diagram;
        let moved = apply_move(&b, MoveKind::R3, MoveSite::Triangle(0, 1, 2)).unwrap();
        assert_eq!(unnormalized_bracket(&moved), unnormalized_bracket(&b));
    }

    #[test]
    fn skein_relation_at_every_crossing() {
        let d = builtin("fig8").unwrap().diagram;
        let whole = unnormalized_bracket(&d);
        for c in 0..d.n() {
            let (da, _) = smooth_crossing(&d, c, false);
            let (db, _) = smooth_crossing(&d, c, true);
            let a = unnormalized_bracket(&da).mul_monomial(1, 1);
            let b = unnormalized_bracket(&db).mul_monomial(1, -1);
            assert_eq!(whole, a.add(&b), "crossing {c}");
        }
    }

    fn braid_strategy() -> impl Strategy<Value = (Vec<i64>, u32)> {
        (2u32..=4).prop_flat_map(|strands| {
            let letter =
                (1i64..strands as i64).prop_flat_map(|k| prop_oneof![Just(k), Just(-k)]);
            (proptest::collection::vec(letter, 0..=7), Just(strands))
        })
    }

    proptest! {
        #[test]
        fn smoothing_oracle_agrees_with_the_state_sum((word, strands) in braid_strategy()) {
            let d = from_braid(&word, strands).unwrap().diagram;
            prop_assert_eq!(bracket_by_smoothing(&d), unnormalized_bracket(&d));
        }

        #[test]
        fn bracket_is_invariant_under_r2((word, strands) in braid_strategy(),
                                         pick in proptest::num::u32::ANY) {
            let d = from_braid(&word, strands).unwrap().diagram;
            let b = unnormalized_bracket(&d);
            let site = if d.edge_count() > 0 {
                MoveSite::Edge(pick % d.edge_count() + 1)
            } else {
                MoveSite::FreeLoop(pick % d.free_loops())
            };
            let poked = apply_move(&d, MoveKind::R2, site).unwrap();
            prop_assert_eq!(unnormalized_bracket(&poked), b);
        }

        #[test]
        fn bracket_is_invariant_under_every_legal_r3((word, strands) in braid_strategy()) {
            let d = from_braid(&word, strands).unwrap().diagram;
            let n = d.n();
            let b = unnormalized_bracket(&d);
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        if let Ok(moved) =
                            apply_move(&d, MoveKind::R3, MoveSite::Triangle(i, j, k))
                        {
                            prop_assert_eq!(unnormalized_bracket(&moved), b.clone());
                        }
                    }
                }
            }
        }

        #[test]
        fn f_is_invariant_under_r1((word, strands) in braid_strategy(),
                                   pick in proptest::num::u32::ANY,
                                   positive in proptest::bool::ANY) {
            let od = from_braid(&word, strands).unwrap();
            let d = &od.diagram;
            let f = kauffman_f(&od);
            let site = if d.edge_count() > 0 {
                MoveSite::Edge(pick % d.edge_count() + 1)
            } else {
                MoveSite::FreeLoop(pick % d.free_loops())
            };
            let mv = if positive { MoveKind::R1Plus } else { MoveKind::R1Minus };
            let curled = apply_move(d, mv, site).unwrap();
            prop_assert_eq!(kauffman_f(&orient(&curled).unwrap()), f);
        }
    }
}
