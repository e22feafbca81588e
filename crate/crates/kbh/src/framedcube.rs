//! The framed cube: the 2-complex ⟪D⟫ spanned by Kauffman states with
//! W-labeled circles, and its homology, the framed-link invariant.
//!
//! Generators of a state s carry one label per circle; the q-degree is the
//! label sum plus a(s) − b(s), and the parity is (b(s) + |s_A|) mod 2. Cube
//! edges act by the merge m̄ or the split Δ̄ on the touched circles and carry
//! the usual alternating sign in the crossing order.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::{
    apply_move, cube_edge, resolve, smooth_crossing, CubeEdge, EdgeKind, KauffmanState,
    LinkDiagram, MoveKind, MoveSite, Resolution, SmoothingMap,
};
use crate::intlinalg::{homology_quotient, SparseIntMatrix};
use crate::twocomplex::{
    homology, shift, ChainMap, GenKey, Generator, GradedBasis, GradedHomology, TwoComplex,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FramedError {
    #[error("crossing index {0} out of range")]
    IndexOutOfRange(u32),
    #[error("illegal site: {0}")]
    IllegalSite(String),
}

/// Label of one circle: w_+ in degree 2, w_− in degree −2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WLabel {
    WMinus,
    WPlus,
}

impl WLabel {
    pub fn degree(self) -> i64 {
        match self {
            WLabel::WPlus => 2,
            WLabel::WMinus => -2,
        }
    }
}

/// The merge. Degree 2: every output term sits two degrees above the input
/// pair.
pub fn mbar(x: WLabel, y: WLabel) -> Vec<(i64, WLabel)> {
    use WLabel::*;
    match (x, y) {
        (WMinus, WMinus) => vec![(1, WMinus)],
        (WPlus, WMinus) | (WMinus, WPlus) => vec![(1, WPlus)],
        (WPlus, WPlus) => vec![],
    }
}

/// The split, also of degree 2.
pub fn deltabar(x: WLabel) -> Vec<(i64, (WLabel, WLabel))> {
    use WLabel::*;
    match x {
        WMinus => vec![(1, (WPlus, WMinus)), (1, (WMinus, WPlus))],
        WPlus => vec![(1, (WPlus, WPlus))],
    }
}

/// One basis element of ⟪D⟫: a state plus a label mask (bit k set = w_+ on
/// circle k of the resolution).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeGenerator {
    pub state: KauffmanState,
    pub labels: u32,
    pub degree: i64,
    pub parity: u8,
}

fn generator_degree(n: u32, b: u32, circles: u32, plus: u32) -> i64 {
    4 * plus as i64 - 2 * circles as i64 + n as i64 - 2 * b as i64
}

fn state_parity(b: u32, s_a: u32) -> u8 {
    ((b + s_a) % 2) as u8
}

/// Call `f` with every m-bit mask of popcount p, ascending.
pub(crate) fn for_each_mask(m: u32, p: u32, mut f: impl FnMut(u32)) {
    if p > m {
        return;
    }
    if p == 0 {
        f(0);
        return;
    }
    let limit = 1u64 << m;
    let mut x: u64 = (1 << p) - 1;
    while x < limit {
        f(x as u32);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((x ^ r) >> 2) / c) | r;
    }
}

/// Label masks a cube edge sends a source mask to; the coefficient of each
/// image is 1, the edge sign rides on the whole block.
pub(crate) fn edge_images(edge: &CubeEdge, labels: u32, out: &mut Vec<u32>) {
    out.clear();
    let mut base = 0u32;
    for &(i, t) in &edge.carry {
        if labels >> i & 1 == 1 {
            base |= 1 << t;
        }
    }
    match edge.kind {
        EdgeKind::Merge { sources: [a, b], target } => {
            match (labels >> a & 1, labels >> b & 1) {
                (0, 0) => out.push(base),
                (1, 1) => {}
                _ => out.push(base | 1 << target),
            }
        }
        EdgeKind::Split { source, targets: [t0, t1] } => {
            if labels >> source & 1 == 1 {
                out.push(base | 1 << t0 | 1 << t1);
            } else {
                out.push(base | 1 << t0);
                out.push(base | 1 << t1);
            }
        }
    }
}

struct CubeBasis {
    s_a: u32,
    resolutions: Vec<Resolution>,
    gens: [Vec<CubeGenerator>; 2],
    /// (state mask, label mask) → (parity, index within that parity).
    pos: HashMap<(u32, u32), (u8, u32)>,
}

fn cube_basis(d: &LinkDiagram) -> CubeBasis {
    let n = d.n();
    let resolutions: Vec<Resolution> = (0..1u32 << n)
        .into_par_iter()
        .map(|mask| resolve(d, KauffmanState::new(mask, n)))
        .collect();
    let s_a = resolutions[0].num_circles;
    let mut gens = [Vec::new(), Vec::new()];
    let mut pos = HashMap::new();
    for (mask, res) in resolutions.iter().enumerate() {
        let mask = mask as u32;
        let b = mask.count_ones();
        let parity = state_parity(b, s_a);
        let m = res.num_circles;
        for labels in 0..1u32 << m {
            let degree = generator_degree(n, b, m, labels.count_ones());
            debug_assert_eq!(degree.rem_euclid(2), (n as i64).rem_euclid(2));
            let idx = gens[parity as usize].len() as u32;
            gens[parity as usize].push(CubeGenerator {
                state: KauffmanState::new(mask, n),
                labels,
                degree,
                parity,
            });
            pos.insert((mask, labels), (parity, idx));
        }
    }
    CubeBasis { s_a, resolutions, gens, pos }
}

fn basis_of(gens: &[CubeGenerator]) -> GradedBasis {
    GradedBasis::new(
        gens.iter()
            .map(|g| Generator {
                degree: g.degree,
                key: GenKey::Cube { state: g.state.mask(), labels: g.labels },
            })
            .collect(),
    )
}

fn complex_from_basis(d: &LinkDiagram, basis: &CubeBasis) -> TwoComplex {
    let n = d.n();
    let (len0, len1) = (basis.gens[0].len() as u32, basis.gens[1].len() as u32);
    let mut d0 = SparseIntMatrix::zero(len1, len0);
    let mut d1 = SparseIntMatrix::zero(len0, len1);
    let mut images = Vec::with_capacity(2);
    for mask in 0..1u32 << n {
        let res0 = &basis.resolutions[mask as usize];
        let parity = state_parity(mask.count_ones(), basis.s_a);
        for c in 0..n {
            if mask >> c & 1 == 1 {
                continue;
            }
            let (edge, _) = cube_edge(d, res0, c);
            let tmask = edge.target.mask();
            for labels in 0..1u32 << res0.num_circles {
                let (_, src) = basis.pos[&(mask, labels)];
                edge_images(&edge, labels, &mut images);
                for &img in &images {
                    let (tp, tgt) = basis.pos[&(tmask, img)];
                    debug_assert_eq!(tp, 1 - parity);
                    if parity == 0 {
                        d0.add(tgt, src, BigInt::from(edge.sign));
                    } else {
                        d1.add(tgt, src, BigInt::from(edge.sign));
                    }
                }
            }
        }
    }
    TwoComplex::new(basis_of(&basis.gens[0]), basis_of(&basis.gens[1]), d0, d1)
}

/// ⟪D⟫ with every generator materialized. Fine up to 10 or so crossings;
/// beyond that use `framed_homology`, which works degree by degree.
pub fn build_framed_complex(d: &LinkDiagram) -> TwoComplex {
    complex_from_basis(d, &cube_basis(d))
}

/// 𝓗^F(D), the framed invariant.
pub fn framed_homology(d: &LinkDiagram) -> GradedHomology {
    if d.n() <= 8 {
        homology(&build_framed_complex(d)).expect("the framed cube is a 2-complex")
    } else {
        framed_homology_blocked(d)
    }
}

/// The popcount a label mask must have for a state-s generator to sit in
/// degree j, if any.
fn popcount_for_degree(j: i64, n: u32, b: u32, circles: u32) -> Option<u32> {
    let num = j - n as i64 + 2 * b as i64 + 2 * circles as i64;
    if num.rem_euclid(4) != 0 {
        return None;
    }
    let p = num / 4;
    (0..=circles as i64).contains(&p).then_some(p as u32)
}

/// 𝓗^F computed one q-degree at a time, never holding the whole complex.
/// Agrees with the materialized route; this one scales to the 14-crossing
/// diagrams in the catalog.
pub fn framed_homology_blocked(d: &LinkDiagram) -> GradedHomology {
    let n = d.n();
    let shape: Vec<(u32, u32)> = (0..1u32 << n)
        .into_par_iter()
        .map(|mask| {
            let res = resolve(d, KauffmanState::new(mask, n));
            (mask.count_ones(), res.num_circles)
        })
        .collect();
    let s_a = shape[0].1;
    let edges: Vec<CubeEdge> = (0..1u32 << n)
        .into_par_iter()
        .flat_map_iter(|mask| {
            let res0 = resolve(d, KauffmanState::new(mask, n));
            let out: Vec<CubeEdge> = (0..n)
                .filter(|&c| mask >> c & 1 == 0)
                .map(|c| cube_edge(d, &res0, c).0)
                .collect();
            out
        })
        .collect();
    let mut degrees = BTreeSet::new();
    for &(b, m) in &shape {
        for p in 0..=m {
            degrees.insert(generator_degree(n, b, m, p));
        }
    }
    let degrees: Vec<i64> = degrees.into_iter().collect();
    let blocks: Vec<_> = degrees
        .par_iter()
        .map(|&j| {
            // index the degree-j generators of each parity
            let mut count = [0u32; 2];
            let mut pos: HashMap<(u32, u32), u32> = HashMap::new();
            for (mask, &(b, m)) in shape.iter().enumerate() {
                let Some(p) = popcount_for_degree(j, n, b, m) else { continue };
                let parity = state_parity(b, s_a) as usize;
                for_each_mask(m, p, |labels| {
                    pos.insert((mask as u32, labels), count[parity]);
                    count[parity] += 1;
                });
            }
            let mut ents = [Vec::new(), Vec::new()];
            let mut images = Vec::with_capacity(2);
            for edge in &edges {
                let smask = edge.source.mask();
                let (b, m) = shape[smask as usize];
                let Some(p) = popcount_for_degree(j, n, b, m) else { continue };
                let parity = state_parity(b, s_a) as usize;
                let tmask = edge.target.mask();
                for_each_mask(m, p, |labels| {
                    let src = pos[&(smask, labels)];
                    edge_images(edge, labels, &mut images);
                    for &img in &images {
                        let tgt = pos[&(tmask, img)];
                        ents[parity].push((tgt, src, edge.sign as i64));
                    }
                });
            }
            let d0j = SparseIntMatrix::from_entries(count[1], count[0], ents[0].drain(..));
            let d1j = SparseIntMatrix::from_entries(count[0], count[1], ents[1].drain(..));
            let h0 = homology_quotient(&d0j, &d1j).expect("valid degree block");
            let h1 = homology_quotient(&d1j, &d0j).expect("valid degree block");
            (j, h0, h1)
        })
        .collect();
    let mut h = GradedHomology::default();
    for (j, h0, h1) in blocks {
        h.insert(0, j, h0);
        h.insert(1, j, h1);
    }
    h
}

/// Map every circle of `res` (a resolution of the diagram `c` was smoothed
/// out of, in a state agreeing with the smoothing at c) to the matching
/// circle of `res_sub`.
fn circle_map_after_smoothing(
    d: &LinkDiagram,
    res: &Resolution,
    smap: &SmoothingMap,
    res_sub: &Resolution,
) -> Vec<u32> {
    let mut out = vec![u32::MAX; res.num_circles as usize];
    // free loops of the original diagram keep their slots; circles the
    // smoothing closed are appended after them in `closed` order
    for k in 0..res.num_circles - res.free_circle_start {
        out[(res.free_circle_start + k) as usize] = res_sub.free_circle_start + k;
    }
    for (k, &rep) in smap.closed.iter().enumerate() {
        let i = res.circle_of_edge(rep);
        out[i as usize] = res_sub.free_circle_start + d.free_loops() + k as u32;
    }
    for e in 1..=d.edge_count() {
        if let Some(e2) = smap.relabel[e as usize - 1] {
            let i = res.circle_of_edge(e);
            if out[i as usize] == u32::MAX {
                out[i as usize] = res_sub.circle_of_edge(e2);
            }
        }
    }
    debug_assert!(out.iter().all(|&v| v != u32::MAX));
    out
}

fn without_bit(mask: u32, c: u32) -> u32 {
    (mask & ((1 << c) - 1)) | (mask >> (c + 1)) << c
}

/// ⟪D⟫ split along crossing c: the B-part includes as a subcomplex, the
/// A-part is the quotient, and together they partition the basis.
pub struct SkeinDecomposition {
    pub total: TwoComplex,
    /// ⟪D_A⟫{1}
    pub a_part: TwoComplex,
    /// ⟪D_B⟫{−1}
    pub b_part: TwoComplex,
    /// b_part → total; carries the sign (−1)^(B-markings above c).
    pub inclusion: ChainMap,
    /// total → a_part.
    pub projection: ChainMap,
}

pub fn skein_decompose(d: &LinkDiagram, c: u32) -> Result<SkeinDecomposition, FramedError> {
    if c >= d.n() {
        return Err(FramedError::IndexOutOfRange(c));
    }
    let basis = cube_basis(d);
    let total = complex_from_basis(d, &basis);
    let (da, smap_a) = smooth_crossing(d, c, false);
    let (db, smap_b) = smooth_crossing(d, c, true);
    let basis_a = cube_basis(&da);
    let basis_b = cube_basis(&db);
    let a_part = shift(&complex_from_basis(&da, &basis_a), 1);
    let b_part = shift(&complex_from_basis(&db, &basis_b), -1);
    // inclusion of the B-part
    let mut f0 = SparseIntMatrix::zero(total.m0.len() as u32, b_part.m0.len() as u32);
    let mut f1 = SparseIntMatrix::zero(total.m1.len() as u32, b_part.m1.len() as u32);
    for side in &basis_b.gens {
        for g in side {
            let sub_mask = g.state.mask();
            let full = (sub_mask & ((1 << c) - 1)) | 1 << c | (sub_mask >> c) << (c + 1);
            let map = circle_map_after_smoothing(
                d,
                &basis.resolutions[full as usize],
                &smap_b,
                &basis_b.resolutions[sub_mask as usize],
            );
            let mut labels = 0u32;
            for (i, &t) in map.iter().enumerate() {
                if g.labels >> t & 1 == 1 {
                    labels |= 1 << i;
                }
            }
            let sign = if (sub_mask >> c).count_ones() % 2 == 0 { 1 } else { -1 };
            let (bp, bi) = basis_b.pos[&(sub_mask, g.labels)];
            let (tp, ti) = basis.pos[&(full, labels)];
            debug_assert_eq!(bp, tp);
            if bp == 0 {
                f0.add(ti, bi, BigInt::from(sign));
            } else {
                f1.add(ti, bi, BigInt::from(sign));
            }
        }
    }
    let inclusion = ChainMap { f0, f1 };
    // projection onto the A-part
    let mut f0 = SparseIntMatrix::zero(a_part.m0.len() as u32, total.m0.len() as u32);
    let mut f1 = SparseIntMatrix::zero(a_part.m1.len() as u32, total.m1.len() as u32);
    for side in &basis.gens {
        for g in side {
            let full = g.state.mask();
            if full >> c & 1 == 1 {
                continue;
            }
            let sub_mask = without_bit(full, c);
            let map = circle_map_after_smoothing(
                d,
                &basis.resolutions[full as usize],
                &smap_a,
                &basis_a.resolutions[sub_mask as usize],
            );
            let mut labels = 0u32;
            for (i, &t) in map.iter().enumerate() {
                if g.labels >> i & 1 == 1 {
                    labels |= 1 << t;
                }
            }
            let (tp, ti) = basis.pos[&(full, g.labels)];
            let (ap, ai) = basis_a.pos[&(sub_mask, labels)];
            debug_assert_eq!(tp, ap);
            if tp == 0 {
                f0.add(ai, ti, BigInt::from(1));
            } else {
                f1.add(ai, ti, BigInt::from(1));
            }
        }
    }
    let projection = ChainMap { f0, f1 };
    Ok(SkeinDecomposition { total, a_part, b_part, inclusion, projection })
}

/// Does adding a curl at the site change 𝓗^F by exactly ♠{3} (positive
/// curl) or ♠{−3} (negative curl)?
pub fn curl_identity_check(
    d: &LinkDiagram,
    mv: MoveKind,
    site: MoveSite,
) -> Result<bool, FramedError> {
    let k = match mv {
        MoveKind::R1Plus => 3,
        MoveKind::R1Minus => -3,
        _ => return Err(FramedError::IllegalSite("curl checks take an R1 move".into())),
    };
    let curled = apply_move(d, mv, site).map_err(|e| FramedError::IllegalSite(e.to_string()))?;
    Ok(framed_homology(&curled) == framed_homology(d).reflexed().shifted(k))
}
