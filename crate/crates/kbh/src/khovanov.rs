//! Classical Khovanov homology over the same state cube: circles carry
//! V = ⟨v₋, v₊⟩, edges act by m and Δ, the cohomological degree is
//! k = b(s) − n₋ and the quantum degree is the label degree plus
//! b(s) + n₊ − 2n₋. The involution α (w₊ ↔ v₋, w₋ ↔ v₊) conjugates the
//! framed differential into this one; `alpha_square_check` tests that edge
//! by edge, and `teo1_compare` checks the regrading that identifies Ḧ with
//! a direct sum of these groups.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::diagram::{
    cube_edge, cube_edges, resolve, CubeEdge, EdgeKind, KauffmanState, LinkDiagram,
    OrientedDiagram,
};
use crate::framedcube::{edge_images, for_each_mask};
use crate::intlinalg::{
    homology_quotient, primary_decomposition, QuotientStructure, SparseIntMatrix,
};
use crate::oriented::oriented_homology;
use crate::poly::{LaurentPoly, PoincarePoly};
use crate::twocomplex::{GenKey, Generator, GradedBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VLabel {
    VMinus,
    VPlus,
}

impl VLabel {
    pub fn degree(self) -> i64 {
        match self {
            VLabel::VMinus => -1,
            VLabel::VPlus => 1,
        }
    }
}

/// m: V ⊗ V → V. v₊ is the unit; v₋ · v₋ = 0.
pub fn vmult(x: VLabel, y: VLabel) -> Option<VLabel> {
    use VLabel::*;
    match (x, y) {
        (VPlus, VPlus) => Some(VPlus),
        (VPlus, VMinus) | (VMinus, VPlus) => Some(VMinus),
        (VMinus, VMinus) => None,
    }
}

/// Δ: V → V ⊗ V.
pub fn vcomult(x: VLabel) -> Vec<(VLabel, VLabel)> {
    use VLabel::*;
    match x {
        VPlus => vec![(VPlus, VMinus), (VMinus, VPlus)],
        VMinus => vec![(VMinus, VMinus)],
    }
}

/// Images of a labelled state under one cube edge, on label bitmasks
/// (bit = 1 means v₊). All coefficients are +1; the edge sign is global.
fn kh_edge_images(edge: &CubeEdge, labels: u32, out: &mut Vec<u32>) {
    out.clear();
    let mut base = 0u32;
    for &(src, tgt) in &edge.carry {
        if labels >> src & 1 == 1 {
            base |= 1 << tgt;
        }
    }
    match edge.kind {
        EdgeKind::Merge { sources: [x, y], target: t } => {
            match (labels >> x & 1, labels >> y & 1) {
                (1, 1) => out.push(base | 1 << t),
                (1, 0) | (0, 1) => out.push(base),
                _ => {}
            }
        }
        EdgeKind::Split { source: s, targets: [t0, t1] } => {
            if labels >> s & 1 == 1 {
                out.push(base | 1 << t0);
                out.push(base | 1 << t1);
            } else {
                out.push(base);
            }
        }
    }
}

/// The Khovanov cochain complex. Group t holds the states with b(s) = t,
/// sitting in cohomological degree k = t − n₋; `diffs[t]` maps group t to
/// group t + 1.
pub struct KhovanovComplex {
    n_minus: u32,
    groups: Vec<GradedBasis>,
    diffs: Vec<SparseIntMatrix>,
}

impl KhovanovComplex {
    pub fn k_min(&self) -> i64 {
        -(self.n_minus as i64)
    }

    pub fn k_max(&self) -> i64 {
        self.k_min() + self.groups.len() as i64 - 1
    }

    pub fn group(&self, k: i64) -> Option<&GradedBasis> {
        usize::try_from(k + self.n_minus as i64).ok().and_then(|t| self.groups.get(t))
    }

    pub fn diff(&self, k: i64) -> Option<&SparseIntMatrix> {
        usize::try_from(k + self.n_minus as i64).ok().and_then(|t| self.diffs.get(t))
    }

    /// d ∘ d = 0 and every differential preserves q.
    pub fn verify(&self) -> bool {
        for t in 0..self.diffs.len() {
            let (src, tgt) = (&self.groups[t], &self.groups[t + 1]);
            for (r, c, _) in self.diffs[t].entries() {
                if tgt.degree(r as usize) != src.degree(c as usize) {
                    return false;
                }
            }
            if t + 1 < self.diffs.len() {
                match self.diffs[t + 1].matmul(&self.diffs[t]) {
                    Ok(m) if m.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Σ (−1)^k q^(deg), the graded Euler characteristic of the complex.
    pub fn euler_q(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero("q");
        for (t, g) in self.groups.iter().enumerate() {
            let sign = if (t as i64 + self.k_min()).rem_euclid(2) == 0 { 1 } else { -1 };
            for gen in g.gens() {
                p.add_term(sign, gen.degree);
            }
        }
        p
    }
}

fn kh_generator_degree(b: u32, circles: u32, plus: u32, shift_q: i64) -> i64 {
    2 * plus as i64 - circles as i64 + b as i64 + shift_q
}

pub fn build_khovanov_complex(od: &OrientedDiagram) -> KhovanovComplex {
    let d = &od.diagram;
    let n = d.n();
    let shift_q = od.n_plus as i64 - 2 * od.n_minus as i64;
    let resolutions: Vec<_> = (0..1u32 << n)
        .into_par_iter()
        .map(|mask| resolve(d, KauffmanState::new(mask, n)))
        .collect();

    let mut gens: Vec<Vec<Generator>> = vec![Vec::new(); n as usize + 1];
    let mut pos: HashMap<(u32, u32), u32> = HashMap::new();
    for (mask, res) in resolutions.iter().enumerate() {
        let b = (mask as u32).count_ones();
        let m = res.num_circles;
        for labels in 0..1u32 << m {
            let q = kh_generator_degree(b, m, labels.count_ones(), shift_q);
            pos.insert((mask as u32, labels), gens[b as usize].len() as u32);
            gens[b as usize].push(Generator {
                degree: q,
                key: GenKey::Cube { state: mask as u32, labels },
            });
        }
    }

    let mut entries: Vec<Vec<(u32, u32, i64)>> = vec![Vec::new(); n as usize];
    let mut images = Vec::with_capacity(2);
    for edge in cube_edges(d) {
        let smask = edge.source.mask();
        let b = smask.count_ones() as usize;
        let tmask = edge.target.mask();
        let m = resolutions[smask as usize].num_circles;
        for labels in 0..1u32 << m {
            kh_edge_images(&edge, labels, &mut images);
            let src = pos[&(smask, labels)];
            for &img in &images {
                entries[b].push((pos[&(tmask, img)], src, edge.sign as i64));
            }
        }
    }

    let groups: Vec<GradedBasis> = gens.into_iter().map(GradedBasis::new).collect();
    let diffs: Vec<SparseIntMatrix> = entries
        .into_iter()
        .enumerate()
        .map(|(t, ents)| {
            SparseIntMatrix::from_entries(groups[t + 1].len() as u32, groups[t].len() as u32, ents)
        })
        .collect();
    KhovanovComplex { n_minus: od.n_minus, groups, diffs }
}

/// Homology of the Khovanov complex, a map (k, q) → finitely generated
/// abelian group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KhovanovHomology {
    groups: BTreeMap<(i64, i64), QuotientStructure>,
}

impl KhovanovHomology {
    pub fn insert(&mut self, k: i64, q: i64, g: QuotientStructure) {
        if !g.is_zero() {
            self.groups.insert((k, q), g);
        }
    }

    pub fn group(&self, k: i64, q: i64) -> QuotientStructure {
        self.groups.get(&(k, q)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64, &QuotientStructure)> {
        self.groups.iter().map(|(&(k, q), g)| (k, q, g))
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// Σ t^k q^j · rank, free parts only.
    pub fn poincare(&self) -> PoincarePoly {
        let mut p = PoincarePoly::zero("q");
        for (k, q, g) in self.iter() {
            p.add_term(g.rank as i64, k, q);
        }
        p
    }

    /// Σ (−1)^k q^j · rank, the graded Euler characteristic.
    pub fn graded_euler(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero("q");
        for (k, q, g) in self.iter() {
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term(sign * g.rank as i64, q);
        }
        p
    }
}

/// The popcount a label mask must have for a state-s generator to sit in
/// quantum degree q, if any.
fn kh_popcount_for_degree(q: i64, b: u32, circles: u32, shift_q: i64) -> Option<u32> {
    let num = q + circles as i64 - b as i64 - shift_q;
    if num.rem_euclid(2) != 0 {
        return None;
    }
    let p = num / 2;
    (0..=circles as i64).contains(&p).then_some(p as u32)
}

/// Khovanov homology computed one quantum degree at a time, never holding
/// the whole complex.
fn kh_cube_data(d: &LinkDiagram) -> (Vec<(u32, u32)>, Vec<CubeEdge>) {
    let n = d.n();
    let shape: Vec<(u32, u32)> = (0..1u32 << n)
        .into_par_iter()
        .map(|mask| {
            let res = resolve(d, KauffmanState::new(mask, n));
            (mask.count_ones(), res.num_circles)
        })
        .collect();
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
    (shape, edges)
}

fn kh_degree_block(
    od: &OrientedDiagram,
    shape: &[(u32, u32)],
    edges: &[CubeEdge],
    q: i64,
) -> Vec<(i64, i64, QuotientStructure)> {
    let n = od.diagram.n();
    let shift_q = od.n_plus as i64 - 2 * od.n_minus as i64;
    let mut dims = vec![0u32; n as usize + 1];
    let mut pos: HashMap<(u32, u32), u32> = HashMap::new();
    for (mask, &(b, m)) in shape.iter().enumerate() {
        let Some(p) = kh_popcount_for_degree(q, b, m, shift_q) else { continue };
        for_each_mask(m, p, |labels| {
            pos.insert((mask as u32, labels), dims[b as usize]);
            dims[b as usize] += 1;
        });
    }
    let mut ents: Vec<Vec<(u32, u32, i64)>> = vec![Vec::new(); n as usize];
    let mut images = Vec::with_capacity(2);
    for edge in edges {
        let smask = edge.source.mask();
        let (b, m) = shape[smask as usize];
        let Some(p) = kh_popcount_for_degree(q, b, m, shift_q) else { continue };
        let tmask = edge.target.mask();
        for_each_mask(m, p, |labels| {
            let src = pos[&(smask, labels)];
            kh_edge_images(edge, labels, &mut images);
            for &img in &images {
                ents[b as usize].push((pos[&(tmask, img)], src, edge.sign as i64));
            }
        });
    }
    let mats: Vec<SparseIntMatrix> = ents
        .into_iter()
        .enumerate()
        .map(|(t, e)| SparseIntMatrix::from_entries(dims[t + 1], dims[t], e))
        .collect();
    let mut out = Vec::new();
    for t in 0..=n as usize {
        if dims[t] == 0 {
            continue;
        }
        let d_out = if t < mats.len() {
            mats[t].clone()
        } else {
            SparseIntMatrix::zero(0, dims[t])
        };
        let d_in = if t > 0 {
            mats[t - 1].clone()
        } else {
            SparseIntMatrix::zero(dims[0], 0)
        };
        let h = homology_quotient(&d_out, &d_in).expect("valid degree block");
        out.push((t as i64 - od.n_minus as i64, q, h));
    }
    out
}

pub fn khovanov_homology(od: &OrientedDiagram) -> KhovanovHomology {
    let shift_q = od.n_plus as i64 - 2 * od.n_minus as i64;
    let (shape, edges) = kh_cube_data(&od.diagram);
    let mut degrees = BTreeSet::new();
    for &(b, m) in &shape {
        for p in 0..=m {
            degrees.insert(kh_generator_degree(b, m, p, shift_q));
        }
    }
    let degrees: Vec<i64> = degrees.into_iter().collect();
    let blocks: Vec<_> =
        degrees.par_iter().map(|&q| kh_degree_block(od, &shape, &edges, q)).collect();
    let mut kh = KhovanovHomology::default();
    for block in blocks {
        for (k, q, h) in block {
            kh.insert(k, q, h);
        }
    }
    kh
}

/// The nonzero classical groups in a single q-degree, as (k, group) pairs.
/// Costs one block of the full table; a cheap probe when only a slice
/// matters.
pub fn khovanov_homology_at(od: &OrientedDiagram, q: i64) -> Vec<(i64, QuotientStructure)> {
    let (shape, edges) = kh_cube_data(&od.diagram);
    kh_degree_block(od, &shape, &edges, q)
        .into_iter()
        .filter(|(_, _, h)| !h.is_zero())
        .map(|(k, _, h)| (k, h))
        .collect()
}

/// α sends w₊ to v₋ and w₋ to v₊ on every circle. Checks that conjugating
/// each framed edge map by α gives the Khovanov edge map, state by state
/// and label by label (degrees are not compared; α is not graded).
pub fn alpha_square_check(d: &LinkDiagram) -> bool {
    let n = d.n();
    let mut framed = Vec::new();
    let mut classical = Vec::new();
    for mask in 0..1u32 << n {
        let s0 = KauffmanState::new(mask, n);
        let res0 = resolve(d, s0);
        for c in 0..n {
            if s0.bit(c) {
                continue;
            }
            let (edge, res1) = cube_edge(d, &res0, c);
            let full_src = (1u32 << res0.num_circles) - 1;
            let full_tgt = (1u32 << res1.num_circles) - 1;
            for labels in 0..=full_src {
                edge_images(&edge, labels, &mut framed);
                kh_edge_images(&edge, full_src ^ labels, &mut classical);
                let mut conjugated: Vec<u32> =
                    framed.iter().map(|&img| full_tgt ^ img).collect();
                conjugated.sort_unstable();
                classical.sort_unstable();
                if conjugated != classical {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Teo1Mismatch {
    pub i: u8,
    pub j: i64,
    pub oriented: QuotientStructure,
    pub regrouped: QuotientStructure,
}

/// Outcome of comparing Ḧ against the regrouped Khovanov groups. `matches`
/// uses the parity offset n₊ + |s_A|; `mod4_consistent` re-derives the
/// offset from j mod 4 instead. Disagreements are collected, not thrown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Teo1Report {
    pub matches: bool,
    pub mod4_consistent: bool,
    pub parity_offset: u8,
    pub mismatches: Vec<Teo1Mismatch>,
}

fn merge_group(map: &mut BTreeMap<(u8, i64), QuotientStructure>, key: (u8, i64), g: &QuotientStructure) {
    let slot = map.entry(key).or_default();
    slot.rank += g.rank;
    slot.torsion.extend(g.torsion.iter().cloned());
}

fn same_group(a: &QuotientStructure, b: &QuotientStructure) -> bool {
    a.rank == b.rank && primary_decomposition(&a.torsion) == primary_decomposition(&b.torsion)
}

/// Ḧ_{i,j}(L) = ⊕ 𝓗^{k, −j/2}(L) over k ≡ i + n₊ + |s_A| (mod 2).
pub fn teo1_compare(od: &OrientedDiagram) -> Teo1Report {
    let dd = oriented_homology(od);
    let kh = khovanov_homology(od);
    let s_a = resolve(&od.diagram, KauffmanState::all_a(od.diagram.n())).num_circles;
    let offset = ((od.n_plus + s_a) % 2) as i64;

    let mut second: BTreeMap<(u8, i64), QuotientStructure> = BTreeMap::new();
    let mut first: BTreeMap<(u8, i64), QuotientStructure> = BTreeMap::new();
    for (k, q, g) in kh.iter() {
        let j = -2 * q;
        let i = (k + offset).rem_euclid(2) as u8;
        merge_group(&mut second, (i, j), g);
        let i = (k + j.rem_euclid(4) / 2).rem_euclid(2) as u8;
        merge_group(&mut first, (i, j), g);
    }
    let oriented: BTreeMap<(u8, i64), QuotientStructure> =
        dd.iter().map(|(i, j, g)| ((i, j), g.clone())).collect();

    let keys: BTreeSet<(u8, i64)> =
        second.keys().chain(oriented.keys()).copied().collect();
    let mut mismatches = Vec::new();
    for key in &keys {
        let a = oriented.get(key).cloned().unwrap_or_default();
        let b = second.get(key).cloned().unwrap_or_default();
        if !same_group(&a, &b) {
            mismatches.push(Teo1Mismatch { i: key.0, j: key.1, oriented: a, regrouped: b });
        }
    }
    let first_keys: BTreeSet<(u8, i64)> =
        first.keys().chain(oriented.keys()).copied().collect();
    let mod4_consistent = first_keys.iter().all(|key| {
        same_group(
            &oriented.get(key).cloned().unwrap_or_default(),
            &first.get(key).cloned().unwrap_or_default(),
        )
    });

    Teo1Report {
        matches: mismatches.is_empty(),
        mod4_consistent,
        parity_offset: offset as u8,
        mismatches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::kauffman_f;
    use crate::diagram::{apply_move, builtin, from_braid, orient, MoveKind, MoveSite};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn label_algebra_tables() {
        use VLabel::*;
        assert_eq!(vmult(VPlus, VPlus), Some(VPlus));
        assert_eq!(vmult(VPlus, VMinus), Some(VMinus));
        assert_eq!(vmult(VMinus, VPlus), Some(VMinus));
        assert_eq!(vmult(VMinus, VMinus), None);
        assert_eq!(vcomult(VPlus), vec![(VPlus, VMinus), (VMinus, VPlus)]);
        assert_eq!(vcomult(VMinus), vec![(VMinus, VMinus)]);
        // m and Δ both drop the label degree by exactly one
        for x in [VMinus, VPlus] {
            for y in [VMinus, VPlus] {
                if let Some(z) = vmult(x, y) {
                    assert_eq!(z.degree(), x.degree() + y.degree() - 1);
                }
            }
            for (a, b) in vcomult(x) {
                assert_eq!(a.degree() + b.degree(), x.degree() - 1);
            }
        }
    }

    #[test]
    fn edge_maps_match_the_label_algebra() {
        let d = builtin("trefoil_right").unwrap().diagram;
        let n = d.n();
        let mut images = Vec::new();
        for mask in 0..1u32 << n {
            let s0 = KauffmanState::new(mask, n);
            let res0 = resolve(&d, s0);
            for c in 0..n {
                if s0.bit(c) {
                    continue;
                }
                let (edge, _) = cube_edge(&d, &res0, c);
                let of = |labels: u32, i: u32| {
                    if labels >> i & 1 == 1 { VLabel::VPlus } else { VLabel::VMinus }
                };
                for labels in 0..1u32 << res0.num_circles {
                    kh_edge_images(&edge, labels, &mut images);
                    match edge.kind {
                        EdgeKind::Merge { sources: [x, y], target: t } => {
                            match vmult(of(labels, x), of(labels, y)) {
                                None => assert!(images.is_empty()),
                                Some(z) => {
                                    assert_eq!(images.len(), 1);
                                    assert_eq!(of(images[0], t), z);
                                }
                            }
                        }
                        EdgeKind::Split { source: s, targets: [t0, t1] } => {
                            let want = vcomult(of(labels, s));
                            let got: Vec<_> =
                                images.iter().map(|&i| (of(i, t0), of(i, t1))).collect();
                            assert_eq!(got, want);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unknot_complex() {
        let kx = build_khovanov_complex(&builtin("unknot").unwrap());
        assert_eq!((kx.k_min(), kx.k_max()), (0, 0));
        let g = kx.group(0).unwrap();
        assert_eq!(g.len(), 2);
        let mut degs: Vec<i64> = g.gens().iter().map(|x| x.degree).collect();
        degs.sort();
        assert_eq!(degs, vec![-1, 1]);
        assert!(kx.verify());
        assert_eq!(kx.euler_q(), LaurentPoly::from_terms("q", &[(1, 1), (1, -1)]));
        let h = khovanov_homology(&builtin("unknot").unwrap());
        assert_eq!(h.group(0, 1), QuotientStructure::free(1));
        assert_eq!(h.group(0, -1), QuotientStructure::free(1));
        assert_eq!(h.iter().count(), 2);
    }

    #[test]
    fn complexes_verify_on_the_catalog() {
        for name in ["hopf_plus", "trefoil_right", "trefoil_left", "fig8", "k5_1"] {
            let od = builtin(name).unwrap();
            let kx = build_khovanov_complex(&od);
            assert!(kx.verify(), "{name}");
            assert_eq!(kx.euler_q(), khovanov_homology(&od).graded_euler(), "{name}");
        }
    }

    /// Homology straight off the materialized complex, restricting each
    /// differential to one quantum degree at a time.
    fn homology_of(kx: &KhovanovComplex) -> KhovanovHomology {
        let indices_at = |k: i64, q: i64| -> Vec<u32> {
            match kx.group(k) {
                None => Vec::new(),
                Some(g) => (0..g.len())
                    .filter(|&i| g.degree(i) == q)
                    .map(|i| i as u32)
                    .collect(),
            }
        };
        let mut out = KhovanovHomology::default();
        for k in kx.k_min()..=kx.k_max() {
            let degrees: BTreeSet<i64> =
                kx.group(k).unwrap().gens().iter().map(|g| g.degree).collect();
            for &q in &degrees {
                let here = indices_at(k, q);
                let above = indices_at(k + 1, q);
                let below = indices_at(k - 1, q);
                let d_out = match kx.diff(k) {
                    Some(m) => crate::twocomplex::restrict(m, &above, &here),
                    None => SparseIntMatrix::zero(0, here.len() as u32),
                };
                let d_in = match (k > kx.k_min()).then(|| kx.diff(k - 1)).flatten() {
                    Some(m) => crate::twocomplex::restrict(m, &here, &below),
                    None => SparseIntMatrix::zero(here.len() as u32, 0),
                };
                out.insert(k, q, homology_quotient(&d_out, &d_in).unwrap());
            }
        }
        out
    }

    #[test]
    fn blocked_route_agrees_with_the_materialized_complex() {
        for name in ["unknot", "hopf_plus", "trefoil_right", "fig8", "k5_1"] {
            let od = builtin(name).unwrap();
            assert_eq!(homology_of(&build_khovanov_complex(&od)), khovanov_homology(&od), "{name}");
        }
        let od = from_braid(&[1, 1, 2, -1, 2, 2], 3).unwrap();
        assert_eq!(homology_of(&build_khovanov_complex(&od)), khovanov_homology(&od));
    }

    #[test]
    fn trefoil_khovanov_homology() {
        let h = khovanov_homology(&builtin("trefoil_right").unwrap());
        for (k, q) in [(0, 1), (0, 3), (2, 5), (3, 9)] {
            assert_eq!(h.group(k, q), QuotientStructure::free(1), "({k}, {q})");
        }
        let t = h.group(3, 7);
        assert_eq!((t.rank, t.torsion), (0, vec![BigInt::from(2)]));
        assert_eq!(h.iter().count(), 5);
    }

    #[test]
    fn hopf_khovanov_homology() {
        let h = khovanov_homology(&builtin("hopf_plus").unwrap());
        for (k, q) in [(0, 0), (0, 2), (2, 4), (2, 6)] {
            assert_eq!(h.group(k, q), QuotientStructure::free(1), "({k}, {q})");
        }
        assert_eq!(h.iter().count(), 4);
    }

    #[test]
    fn k5_1_khovanov_poincare() {
        let h = khovanov_homology(&builtin("k5_1").unwrap());
        let mut want = PoincarePoly::zero("q");
        want.add_term(1, 0, -5);
        want.add_term(1, 0, -3);
        want.add_term(1, -5, -15);
        want.add_term(1, -4, -11);
        want.add_term(1, -3, -11);
        want.add_term(1, -2, -7);
        assert_eq!(h.poincare(), want);
    }

    #[test]
    fn single_degree_probe_matches_the_full_table() {
        for name in ["trefoil_left", "fig8", "k5_1"] {
            let od = builtin(name).unwrap();
            let kh = khovanov_homology(&od);
            let qs: BTreeSet<i64> = kh.iter().map(|(_, q, _)| q).collect();
            for &q in &qs {
                let slice: Vec<(i64, QuotientStructure)> = kh
                    .iter()
                    .filter(|&(_, qq, _)| qq == q)
                    .map(|(k, _, g)| (k, g.clone()))
                    .collect();
                assert_eq!(khovanov_homology_at(&od, q), slice, "{name} q = {q}");
            }
            let off = khovanov_homology_at(&od, qs.iter().max().unwrap() + 2);
            assert!(off.iter().all(|(_, g)| g.is_zero()));
        }
    }

    #[test]
    fn q_support_parity_matches_the_component_count() {
        for name in ["unknot", "hopf_plus", "trefoil_right", "trefoil_left", "fig8", "k5_1"] {
            let od = builtin(name).unwrap();
            let h = khovanov_homology(&od);
            for (_, q, _) in h.iter() {
                assert_eq!(q.rem_euclid(2), (od.components % 2) as i64, "{name} q = {q}");
            }
        }
    }

    #[test]
    fn graded_euler_recovers_kauffman_f() {
        for name in ["unknot", "hopf_plus", "trefoil_right", "trefoil_left", "fig8", "k5_1"] {
            let od = builtin(name).unwrap();
            let s_a = resolve(&od.diagram, KauffmanState::all_a(od.diagram.n())).num_circles;
            let sign = if (od.n_plus + s_a) % 2 == 0 { 1 } else { -1 };
            let jhat = khovanov_homology(&od).graded_euler();
            let f = jhat.substitute("A", 1, -2).mul_monomial(sign, 0);
            assert_eq!(f, kauffman_f(&od), "{name}");
        }
    }

    #[test]
    fn alpha_conjugates_the_differentials() {
        for name in ["unknot", "hopf_plus", "trefoil_right", "fig8", "k5_1"] {
            assert!(alpha_square_check(&builtin(name).unwrap().diagram), "{name}");
        }
        let curled =
            apply_move(&builtin("unknot").unwrap().diagram, MoveKind::R1Plus, MoveSite::FreeLoop(0))
                .unwrap();
        assert!(alpha_square_check(&curled));
    }

    #[test]
    fn oriented_homology_regroups_khovanov() {
        for name in ["unknot", "hopf_plus", "trefoil_right", "trefoil_left", "fig8", "k5_1"] {
            let r = teo1_compare(&builtin(name).unwrap());
            assert!(r.matches, "{name}: {:?}", r.mismatches);
            assert!(r.mod4_consistent, "{name}");
        }
        // a knot with odd writhe through a curl
        let curled =
            apply_move(&builtin("trefoil_right").unwrap().diagram, MoveKind::R1Minus, MoveSite::Edge(1))
                .unwrap();
        let r = teo1_compare(&orient(&curled).unwrap());
        assert!(r.matches && r.mod4_consistent);
    }

    #[test]
    fn parity_offset_matches_the_component_count() {
        for name in ["unknot", "hopf_plus", "trefoil_right", "fig8", "k5_1"] {
            let od = builtin(name).unwrap();
            let r = teo1_compare(&od);
            assert_eq!(r.parity_offset as u32, od.components % 2, "{name}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn random_closures_pass_both_cross_checks(
            word in proptest::collection::vec(
                (1..3i64, proptest::bool::ANY).prop_map(|(k, n)| if n { -k } else { k }),
                1..5,
            ),
        ) {
            let od = from_braid(&word, 3).unwrap();
            prop_assert!(alpha_square_check(&od.diagram));
            let r = teo1_compare(&od);
            prop_assert!(r.matches, "{:?}", r.mismatches);
            prop_assert!(r.mod4_consistent);
            for (_, q, _) in khovanov_homology(&od).iter() {
                prop_assert_eq!(q.rem_euclid(2), (od.components % 2) as i64);
            }
        }
    }
}
