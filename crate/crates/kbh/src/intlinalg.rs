//! Exact linear algebra over the integers: sparse matrices, Smith normal
//! form, and homology quotients ker/im.
//!
//! Everything here is arbitrary precision. Differentials of state cubes have
//! entries in {-1, 0, 1, 2}, but elimination can grow intermediate values
//! without bound, and a silent overflow would corrupt torsion silently.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("composite of differentials is not zero at ({row}, {col})")]
    CompositeNotZero { row: u32, col: u32 },
}

/// Sparse integer matrix, entries indexed by (row, col).
#[derive(Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: u32,
    cols: u32,
    entries: BTreeMap<(u32, u32), BigInt>,
}

impl SparseIntMatrix {
    pub fn zero(rows: u32, cols: u32) -> Self {
        SparseIntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_entries<I, V>(rows: u32, cols: u32, it: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, V)>,
        V: Into<BigInt>,
    {
        let mut m = Self::zero(rows, cols);
        for (r, c, v) in it {
            m.add(r, c, v.into());
        }
        m
    }

    /// Dense row-major constructor, handy in tests.
    pub fn from_rows(data: &[&[i64]]) -> Self {
        let rows = data.len() as u32;
        let cols = data.first().map_or(0, |r| r.len()) as u32;
        let mut m = Self::zero(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len() as u32, cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i as u32, j as u32, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: u32, c: u32) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, r: u32, c: u32, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add(&mut self, r: u32, c: u32, v: BigInt) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            return;
        }
        match self.entries.entry((r, c)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Entries in (row, col) order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> + '_ {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: BTreeMap<u32, Vec<(u32, &BigInt)>> = BTreeMap::new();
        for (r, c, v) in other.entries() {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for (r, k, v) in self.entries() {
            if let Some(row) = by_row.get(&k) {
                for &(c, w) in row {
                    out.add(r, c, v * w);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseIntMatrix {}x{} ({} nz)", self.rows, self.cols, self.nnz())?;
        for (r, c, v) in self.entries() {
            writeln!(f, "  ({r}, {c}) = {v}")?;
        }
        Ok(())
    }
}

/// Result of a Smith normal form computation.
///
/// `factors` are the nonzero invariant factors, positive, each dividing the
/// next. `rank` equals `factors.len()`. When transforms are requested,
/// `u * m * v = diag(factors)` with `u`, `v` unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub rank: usize,
    pub transforms: Option<Box<(SparseIntMatrix, SparseIntMatrix)>>,
}

impl SmithForm {
    /// Invariant factors larger than one, i.e. the torsion coefficients of
    /// the cokernel.
    pub fn nontrivial(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Outcome of the unit-pivot phase: the reduced matrix plus how many ±1
/// pivots were eliminated.
#[derive(Debug, Clone)]
pub struct UnitPivotReduction {
    pub matrix: SparseIntMatrix,
    pub removed: usize,
}

/// Sparse elimination state: row maps plus a column occupancy index.
struct Elim {
    rows: Vec<BTreeMap<u32, BigInt>>,
    col_rows: Vec<BTreeSet<u32>>,
    removed: usize,
    heap: BinaryHeap<Reverse<(u64, u32, u32)>>,
}

impl Elim {
    fn new(m: &SparseIntMatrix) -> Self {
        let mut rows: Vec<BTreeMap<u32, BigInt>> = vec![BTreeMap::new(); m.rows() as usize];
        let mut col_rows: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); m.cols() as usize];
        for (r, c, v) in m.entries() {
            rows[r as usize].insert(c, v.clone());
            col_rows[c as usize].insert(r);
        }
        let mut e = Elim { rows, col_rows, removed: 0, heap: BinaryHeap::new() };
        for r in 0..e.rows.len() as u32 {
            for (&c, v) in &e.rows[r as usize] {
                if v.abs().is_one() {
                    let score = e.markowitz(r, c);
                    e.heap.push(Reverse((score, r, c)));
                }
            }
        }
        e
    }

    fn markowitz(&self, r: u32, c: u32) -> u64 {
        let rl = self.rows[r as usize].len() as u64;
        let cl = self.col_rows[c as usize].len() as u64;
        rl.saturating_sub(1) * cl.saturating_sub(1)
    }

    /// Eliminate ±1 pivots until none remain, preferring minimal fill-in.
    fn exhaust_unit_pivots(&mut self) {
        while let Some(Reverse((score, r, c))) = self.heap.pop() {
            let Some(v) = self.rows[r as usize].get(&c) else { continue };
            if !v.abs().is_one() {
                continue;
            }
            let now = self.markowitz(r, c);
            if now != score {
                self.heap.push(Reverse((now, r, c)));
                continue;
            }
            self.eliminate(r, c);
            self.removed += 1;
        }
    }

    /// Clear column `c` with the ±1 pivot at (r, c), then drop row r and
    /// column c. The dropped pair contributes one unit invariant factor.
    fn eliminate(&mut self, r: u32, c: u32) {
        let prow: Vec<(u32, BigInt)> =
            std::mem::take(&mut self.rows[r as usize]).into_iter().collect();
        let sign = prow.iter().find(|(j, _)| *j == c).map(|(_, v)| v.sign()).unwrap();
        let sign = BigInt::from(if sign == num_bigint::Sign::Minus { -1 } else { 1 });
        for (j, _) in &prow {
            self.col_rows[*j as usize].remove(&r);
        }
        let affected: Vec<u32> = self.col_rows[c as usize].iter().copied().collect();
        for r2 in affected {
            let Some(f) = self.rows[r2 as usize].remove(&c) else { continue };
            self.col_rows[c as usize].remove(&r2);
            let mult = &f * &sign;
            for (j, v) in &prow {
                if *j == c {
                    continue;
                }
                let delta = &mult * v;
                let row2 = &mut self.rows[r2 as usize];
                let newval = match row2.remove(j) {
                    Some(old) => old - delta,
                    None => -delta,
                };
                if newval.is_zero() {
                    self.col_rows[*j as usize].remove(&r2);
                } else {
                    if newval.abs().is_one() {
                        let score = self.markowitz(r2, *j);
                        self.heap.push(Reverse((score, r2, *j)));
                    }
                    self.col_rows[*j as usize].insert(r2);
                    self.rows[r2 as usize].insert(*j, newval);
                }
            }
        }
        self.col_rows[c as usize].clear();
    }

    /// Surviving entries with rows and columns renumbered compactly,
    /// preserving relative order.
    fn remainder(&self) -> SparseIntMatrix {
        let live_rows: Vec<u32> = (0..self.rows.len() as u32)
            .filter(|&r| !self.rows[r as usize].is_empty())
            .collect();
        let live_cols: Vec<u32> = (0..self.col_rows.len() as u32)
            .filter(|&c| !self.col_rows[c as usize].is_empty())
            .collect();
        let col_index: BTreeMap<u32, u32> =
            live_cols.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let mut out = SparseIntMatrix::zero(live_rows.len() as u32, live_cols.len() as u32);
        for (i, &r) in live_rows.iter().enumerate() {
            for (c, v) in &self.rows[r as usize] {
                out.set(i as u32, col_index[c], v.clone());
            }
        }
        out
    }
}

/// Exhaust ±1 pivots (minimal Markowitz fill-in first) and return the
/// compacted remainder. The removed pivots each contribute an invariant
/// factor 1; the remainder has the same Smith form otherwise.
pub fn unit_pivot_reduce(m: &SparseIntMatrix) -> UnitPivotReduction {
    let mut elim = Elim::new(m);
    elim.exhaust_unit_pivots();
    UnitPivotReduction { matrix: elim.remainder(), removed: elim.removed }
}

/// Smith normal form. Unit pivots are eliminated sparsely first; the dense
/// textbook algorithm finishes the (typically tiny) remainder.
pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    let reduction = unit_pivot_reduce(m);
    let rem = &reduction.matrix;
    let dense: Vec<Vec<BigInt>> = (0..rem.rows())
        .map(|r| (0..rem.cols()).map(|c| rem.get(r, c)).collect())
        .collect();
    let tail = dense_snf(dense, None);
    let mut factors = vec![BigInt::one(); reduction.removed];
    factors.extend(tail);
    let rank = factors.len();
    SmithForm { factors, rank, transforms: None }
}

/// Smith normal form with unimodular transforms, u * m * v = diag(factors).
/// Dense throughout; intended for moderate sizes.
pub fn smith_normal_form_with_transforms(m: &SparseIntMatrix) -> SmithForm {
    let dense: Vec<Vec<BigInt>> =
        (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect()).collect();
    let mut tr = TransformPair::identity(m.rows() as usize, m.cols() as usize);
    let factors = dense_snf(dense, Some(&mut tr));
    let rank = factors.len();
    let u = SparseIntMatrix::from_entries(
        m.rows(),
        m.rows(),
        tr.u.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(c, v)| {
                (r as u32, c as u32, v.clone())
            })
        }),
    );
    let v = SparseIntMatrix::from_entries(
        m.cols(),
        m.cols(),
        tr.v.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(c, v)| {
                (r as u32, c as u32, v.clone())
            })
        }),
    );
    SmithForm { factors, rank, transforms: Some(Box::new((u, v))) }
}

struct TransformPair {
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl TransformPair {
    fn identity(rows: usize, cols: usize) -> Self {
        let mut u = vec![vec![BigInt::zero(); rows]; rows];
        let mut v = vec![vec![BigInt::zero(); cols]; cols];
        for (i, row) in u.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        for (i, row) in v.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        TransformPair { u, v }
    }
}

/// Textbook Smith elimination on a dense matrix. Returns the nonzero
/// invariant factors in divisibility order.
fn dense_snf(mut m: Vec<Vec<BigInt>>, mut tr: Option<&mut TransformPair>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut factors = Vec::new();
    let mut t = 0usize;
    while t < rows && t < cols {
        // Smallest nonzero entry of the trailing submatrix becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => m[i][j].abs() < m[bi][bj].abs(),
                };
                if better {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        if let Some(tr) = tr.as_deref_mut() {
            tr.u.swap(t, bi);
        }
        if bj != t {
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            if let Some(tr) = tr.as_deref_mut() {
                for row in tr.v.iter_mut() {
                    row.swap(t, bj);
                }
            }
        }
        'reduce: loop {
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = div_round(&m[i][t], &m[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let d = &q * &m[t][j];
                        m[i][j] -= d;
                    }
                    if let Some(tr) = tr.as_deref_mut() {
                        for j in 0..rows {
                            let d = &q * &tr.u[t][j];
                            tr.u[i][j] -= d;
                        }
                    }
                }
                if !m[i][t].is_zero() {
                    // Remainder is strictly smaller: promote it to pivot.
                    m.swap(t, i);
                    if let Some(tr) = tr.as_deref_mut() {
                        tr.u.swap(t, i);
                    }
                    continue 'reduce;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = div_round(&m[t][j], &m[t][t]);
                if !q.is_zero() {
                    for row in m.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    if let Some(tr) = tr.as_deref_mut() {
                        for row in tr.v.iter_mut() {
                            let d = &q * &row[t];
                            row[j] -= d;
                        }
                    }
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    if let Some(tr) = tr.as_deref_mut() {
                        for row in tr.v.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                    continue 'reduce;
                }
            }
            // Row and column are clear. The pivot must divide the rest of
            // the submatrix for the divisibility chain; if not, fold the
            // offending row in and restart.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if (&m[i][j] % &m[t][t]).is_zero() {
                        continue;
                    }
                    for jj in t..cols {
                        let v = m[i][jj].clone();
                        m[t][jj] += v;
                    }
                    if let Some(tr) = tr.as_deref_mut() {
                        for jj in 0..rows {
                            let v = tr.u[i][jj].clone();
                            tr.u[t][jj] += v;
                        }
                    }
                    continue 'reduce;
                }
            }
            break;
        }
        if m[t][t].is_negative() {
            for j in t..cols {
                m[t][j] = -m[t][j].clone();
            }
            if let Some(tr) = tr.as_deref_mut() {
                for j in 0..rows {
                    tr.u[t][j] = -tr.u[t][j].clone();
                }
            }
        }
        factors.push(m[t][t].clone());
        t += 1;
    }
    factors
}

/// Quotient with rounding toward the nearest integer, which keeps remainders
/// in [-|b|/2, |b|/2] and makes the Euclidean descent fast.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_mod_floor(a, b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

/// Finitely generated abelian group presented as Z^rank ⊕ (⊕ Z/torsion).
///
/// Torsion coefficients are > 1 and each divides the next.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QuotientStructure {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl QuotientStructure {
    pub fn free(rank: usize) -> Self {
        QuotientStructure { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for QuotientStructure {
    /// "0", "Z", "Z^2", "Z + Z_2", "Z_2^3", ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut mult = 1;
            while i + mult < self.torsion.len() && &self.torsion[i + mult] == d {
                mult += 1;
            }
            if mult == 1 {
                parts.push(format!("Z_{d}"));
            } else {
                parts.push(format!("Z_{d}^{mult}"));
            }
            i += mult;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for QuotientStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// ker(d_out) / im(d_in) for a pair with d_out ∘ d_in = 0.
///
/// The kernel of an integer matrix is a pure submodule, so the quotient of
/// the ambient lattice by im(d_in) splits as (ker/im) ⊕ free. The torsion of
/// ker/im therefore equals the torsion of coker(d_in), read off the Smith
/// form of d_in alone, and the free rank is nullity(d_out) − rank(d_in). No
/// kernel basis is ever materialized.
pub fn homology_quotient(
    d_out: &SparseIntMatrix,
    d_in: &SparseIntMatrix,
) -> Result<QuotientStructure, LinAlgError> {
    if d_out.cols() != d_in.rows() {
        return Err(LinAlgError::DimensionMismatch(format!(
            "ker side is {}x{}, im side is {}x{}",
            d_out.rows(),
            d_out.cols(),
            d_in.rows(),
            d_in.cols()
        )));
    }
    let composite = d_out.matmul(d_in)?;
    if let Some((r, c, _)) = composite.entries().next() {
        return Err(LinAlgError::CompositeNotZero { row: r, col: c });
    }
    let snf_out = smith_normal_form(d_out);
    let snf_in = smith_normal_form(d_in);
    let nullity = d_out.cols() as usize - snf_out.rank;
    Ok(QuotientStructure {
        rank: nullity - snf_in.rank,
        torsion: snf_in.nontrivial(),
    })
}

/// Splits a list of torsion coefficients into sorted prime powers, so that
/// direct sums assembled from different Smith chains can be compared as
/// abelian groups. [2, 12] and [4, 6] both become [2, 3, 4].
pub fn primary_decomposition(factors: &[BigInt]) -> Vec<BigInt> {
    let mut parts = Vec::new();
    for f in factors {
        let mut rest = f.magnitude().clone();
        let mut p = BigUint::from(2u32);
        while &p * &p <= rest {
            if (&rest % &p).is_zero() {
                let mut power = BigUint::from(1u32);
                while (&rest % &p).is_zero() {
                    rest /= &p;
                    power *= &p;
                }
                parts.push(BigInt::from(power));
            }
            p += 1u32;
        }
        if rest > BigUint::from(1u32) {
            parts.push(BigInt::from(rest));
        }
    }
    parts.sort();
    parts
}
