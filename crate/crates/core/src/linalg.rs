//! Exact matrices over fields of the tower, linear codes, and exhaustive
//! minimum-distance search.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::field::{Elem, FieldCtx};

/// Default enumeration budget for exact minimum distance, in codewords.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// Generator matrices are materialized only up to this many entries.
pub const GENERATOR_CAP: usize = 1 << 23;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Elem>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix shape does not match data length");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![Elem::ZERO; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Builds a matrix from equal-length rows; `cols` is used when there are no rows.
    pub fn from_rows(rows: Vec<Vec<Elem>>, cols: usize) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(cols, Vec::len);
        let data: Vec<Elem> = rows.into_iter().flatten().collect();
        Matrix::new(r, c, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, f: &FieldCtx) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// `M·vᵀ`.
    pub fn mul_vec(&self, v: &[Elem], f: &FieldCtx) -> Vec<Elem> {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        self.row_vecs()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(_, x)| !x.is_zero())
                    .fold(Elem::ZERO, |acc, (&a, &x)| f.add(acc, f.mul(a, x)))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Reduced row echelon form. Pivots are chosen in the leftmost column
    /// that still has a nonzero entry, using the topmost such entry.
    pub fn rref(&self, f: &FieldCtx) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(piv) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, piv);
            let inv = f.inv(m.get(rank, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(rank, c), inv);
                m.set(rank, c, v);
            }
            for r in 0..m.rows {
                let factor = m.get(r, col);
                if r == rank || factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(rank, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Rref { matrix: m, rank, pivots }
    }

    pub fn rank(&self, f: &FieldCtx) -> usize {
        self.rref(f).rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_basis(&self, f: &FieldCtx) -> Matrix {
        let Rref { matrix, rank, .. } = self.rref(f);
        Matrix::new(rank, self.cols, matrix.data[..rank * self.cols].to_vec())
    }

    /// Basis of `{x : M xᵀ = 0}`, one row per free column.
    pub fn null_space(&self, f: &FieldCtx) -> Matrix {
        let Rref { matrix, rank, pivots } = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, Elem::ONE);
            for (r, &pc) in pivots.iter().enumerate().take(rank) {
                out.set(i, pc, f.neg(matrix.get(r, fc)));
            }
        }
        out
    }

    /// Replaces every row by the `m` rows of its `F_q`-coordinates in the
    /// field's cached basis, so that for `c` over `F_q`, `M cᵀ = 0` iff the
    /// expanded matrix annihilates `c`.
    pub fn subfield_expand(&self, f: &FieldCtx) -> Matrix {
        let m = f.m() as usize;
        let mut out = Matrix::zeros(self.rows * m, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                for (j, v) in f.base_coords(self.get(r, c)).into_iter().enumerate() {
                    out.set(r * m + j, c, v);
                }
            }
        }
        out
    }

    /// True iff every entry lies in `F_q`.
    pub fn is_over_base_field(&self, f: &FieldCtx) -> bool {
        self.data.iter().all(|&e| f.is_in_base_field(e))
    }

    /// True iff both matrices span the same row space.
    pub fn same_row_space(&self, other: &Matrix, f: &FieldCtx) -> bool {
        self.cols == other.cols && self.row_basis(f) == other.row_basis(f)
    }

    /// One row per line, entries space-separated in element serialization.
    pub fn dump(&self, f: &FieldCtx) -> String {
        let mut s = String::new();
        for row in self.row_vecs() {
            let cells: Vec<String> = row.iter().map(|&e| f.format_elem(e)).collect();
            let _ = writeln!(s, "{}", cells.join(" "));
        }
        s
    }
}

/// Where a code came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Goppa { degree: usize },
    /// Goppa code of a norm polynomial `N(g)` (or `N(g)/g`) with `deg g = r`.
    WildGoppa { r: usize },
    Bch { delta: usize },
    Family { tag: String },
}

/// A linear code over `F_q` with a full-rank parity-check matrix in RREF.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Arc<FieldCtx>,
    n: usize,
    k: usize,
    parity: Matrix,
    generator: Option<Matrix>,
    designed_distance: usize,
    provenance: Provenance,
}

impl LinearCode {
    /// Builds the code `{c : H cᵀ = 0}` from any parity-check matrix over `F_q`.
    pub fn from_parity(field: Arc<FieldCtx>, parity: &Matrix, designed_distance: usize, provenance: Provenance) -> Self {
        let basis = parity.row_basis(&field);
        let n = parity.cols();
        let k = n - basis.rows();
        let generator = (k * n <= GENERATOR_CAP).then(|| parity.null_space(&field));
        LinearCode { field, n, k, parity: basis, generator, designed_distance, provenance }
    }

    /// Uses a known generator matrix instead of a null-space computation.
    pub fn with_generator(
        field: Arc<FieldCtx>,
        parity: &Matrix,
        generator: Option<Matrix>,
        designed_distance: usize,
        provenance: Provenance,
    ) -> Self {
        let basis = parity.row_basis(&field);
        let n = parity.cols();
        let k = n - basis.rows();
        LinearCode { field, n, k, parity: basis, generator, designed_distance, provenance }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn parity(&self) -> &Matrix {
        &self.parity
    }
    pub fn generator(&self) -> Option<&Matrix> {
        self.generator.as_ref()
    }
    pub fn designed_distance(&self) -> usize {
        self.designed_distance
    }
    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn set_designed_distance(&mut self, d: usize) {
        self.designed_distance = d;
    }

    pub fn syndrome(&self, c: &[Elem]) -> Vec<Elem> {
        self.parity.mul_vec(c, &self.field)
    }

    pub fn is_codeword(&self, c: &[Elem]) -> bool {
        c.len() == self.n && c.iter().all(|&x| self.field.is_in_base_field(x)) && self.syndrome(c).iter().all(|e| e.is_zero())
    }

    /// `G·Hᵀ = 0`, `rank G = k`, `rank H = n - k`, entries over `F_q`.
    pub fn check_invariants(&self) -> bool {
        let f = &*self.field;
        if self.parity.rows() != self.n - self.k || self.parity.rank(f) != self.n - self.k {
            return false;
        }
        if !self.parity.is_over_base_field(f) {
            return false;
        }
        match &self.generator {
            None => true,
            Some(g) => {
                g.rows() == self.k
                    && g.is_over_base_field(f)
                    && g.rank(f) == self.k
                    && g.mul(&self.parity.transpose(), f).is_zero()
            }
        }
    }
}

/// Result of a minimum-distance computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinDistance {
    /// Found by enumerating every nonzero codeword (or by reaching the designed bound).
    Exact { d: usize },
    /// Enumeration was out of budget: `lo` is the designed bound, `hi` the
    /// lightest known codeword (or the Singleton bound).
    Interval { lo: usize, hi: usize },
    /// The code is `{0}`.
    NoCodewords,
}

impl MinDistance {
    /// The distance when it is pinned down, either exactly or by a closed interval.
    pub fn certified(&self) -> Option<usize> {
        match *self {
            MinDistance::Exact { d } => Some(d),
            MinDistance::Interval { lo, hi } if lo == hi => Some(lo),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DistanceOptions {
    pub budget: u64,
    /// Stop once a codeword of the designed weight is seen.
    pub early_exit: bool,
    pub witness_weight: Option<usize>,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions { budget: DEFAULT_BUDGET, early_exit: true, witness_weight: None }
    }
}

/// Index tables for `F_q` so that inner loops avoid the big field.
pub struct BaseTables {
    q: usize,
    elems: Vec<Elem>,
    index: Vec<u16>,
    add: Vec<u16>,
}

impl BaseTables {
    pub fn new(f: &FieldCtx) -> Self {
        let elems = f.base_field_elements();
        let q = elems.len();
        assert!(q <= u16::MAX as usize, "base field too large for index tables");
        let mut index = vec![u16::MAX; f.size() as usize];
        for (i, e) in elems.iter().enumerate() {
            index[e.0 as usize] = i as u16;
        }
        let mut add = vec![0u16; q * q];
        for i in 0..q {
            for j in 0..q {
                add[i * q + j] = index[f.add(elems[i], elems[j]).0 as usize];
            }
        }
        BaseTables { q, elems, index, add }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn index_of(&self, e: Elem) -> u16 {
        self.index[e.0 as usize]
    }

    pub fn elem(&self, i: u16) -> Elem {
        self.elems[i as usize]
    }
}

/// Minimum distance by enumerating all `q^k - 1` nonzero codewords when
/// `q^k` fits the budget; otherwise the interval `[designed, witness]`.
///
/// The message space is split by its leading digit and the parts are
/// searched in parallel; a shared running minimum lets every part stop once
/// the designed bound is reached (when `early_exit` is set).
pub fn min_distance(code: &LinearCode, opts: &DistanceOptions) -> MinDistance {
    let q = code.field.q() as u64;
    let k = code.k;
    if k == 0 {
        return MinDistance::NoCodewords;
    }
    let within_budget = q.checked_pow(k as u32).is_some_and(|total| total <= opts.budget);
    let generator = match (&code.generator, within_budget) {
        (Some(g), true) => g,
        _ => {
            let hi = opts.witness_weight.unwrap_or(code.n - code.k + 1);
            return MinDistance::Interval { lo: code.designed_distance, hi };
        }
    };
    let tables = BaseTables::new(&code.field);
    let rows: Vec<Vec<u16>> = generator
        .row_vecs()
        .map(|r| r.iter().map(|&e| tables.index_of(e)).collect())
        .collect();
    let target = if opts.early_exit { code.designed_distance } else { 0 };
    let d = exhaustive_min_weight(&rows, &tables, target);
    MinDistance::Exact { d }
}

fn exhaustive_min_weight(rows: &[Vec<u16>], tables: &BaseTables, target: usize) -> usize {
    let q = tables.q;
    let k = rows.len();
    let n = rows[0].len();
    let best = AtomicUsize::new(usize::MAX);
    let done = AtomicBool::new(false);
    let lead = &rows[k - 1];
    let lower = &rows[..k - 1];
    let add = &tables.add;

    (0..q).into_par_iter().for_each(|v| {
        // codeword = v·g_{k-1} + Σ digits[i]·g_i
        let mut cw = vec![0u16; n];
        for _ in 0..v {
            for (c, &g) in cw.iter_mut().zip(lead) {
                *c = add[*c as usize * q + g as usize];
            }
        }
        let mut weight = cw.iter().filter(|&&c| c != 0).count();
        let mut local = usize::MAX;
        let mut digits = vec![0usize; k - 1];
        let mut steps = 0u32;
        loop {
            if weight != 0 && weight < local {
                local = weight;
                best.fetch_min(local, Ordering::Relaxed);
                if local <= target {
                    done.store(true, Ordering::Relaxed);
                }
            }
            steps = steps.wrapping_add(1);
            if steps & 0xfff == 0 && done.load(Ordering::Relaxed) {
                break;
            }
            // base-q increment of the lower digits, adding g_i per touched digit
            let mut i = 0;
            loop {
                if i == k - 1 {
                    return;
                }
                for (c, &g) in cw.iter_mut().zip(&lower[i]) {
                    if g == 0 {
                        continue;
                    }
                    let old = *c;
                    let new = add[old as usize * q + g as usize];
                    *c = new;
                    weight = weight + (new != 0) as usize - (old != 0) as usize;
                }
                digits[i] += 1;
                if digits[i] == q {
                    digits[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    });
    best.into_inner()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(3, 1, 2, None).unwrap())
    }

    #[test]
    fn rref_basics() {
        let f = f9();
        assert_eq!(Matrix::identity(3).rank(&f), 3);
        assert_eq!(Matrix::zeros(3, 4).rank(&f), 0);
        let pts = [f.prim(), f.prim_pow(2), f.prim_pow(5)];
        let v = Matrix::from_rows((0..3).map(|r| pts.iter().map(|&a| f.pow(a, r)).collect()).collect(), 3);
        assert_eq!(v.rank(&f), 3);
        // rref is idempotent
        let r = v.rref(&f);
        assert_eq!(r.matrix.rref(&f).matrix, r.matrix);
        assert_eq!(r.matrix, Matrix::identity(3));
    }

    #[test]
    fn null_space_basics() {
        let f = f9();
        assert_eq!(Matrix::identity(4).null_space(&f).rows(), 0);
        let m = Matrix::from_rows(
            vec![
                vec![Elem::ONE, f.prim(), Elem::ZERO, f.prim_pow(3)],
                vec![f.prim_pow(2), Elem::ZERO, Elem::ONE, Elem::ONE],
            ],
            4,
        );
        let ns = m.null_space(&f);
        assert_eq!(ns.rows(), 4 - m.rank(&f));
        assert!(m.mul(&ns.transpose(), &f).is_zero());
        let r = m.rref(&f).matrix;
        assert_eq!(r.null_space(&f), ns);
    }

    #[test]
    fn expansion_shape_and_kernel() {
        let f = f9();
        let m = Matrix::from_rows(
            vec![
                vec![Elem::ONE, f.prim(), f.prim_pow(4), f.prim_pow(7)],
                vec![f.prim_pow(2), f.prim_pow(3), Elem::ONE, Elem::ZERO],
            ],
            4,
        );
        let e = m.subfield_expand(&f);
        assert_eq!(e.shape(), (4, 4));
        assert!(e.is_over_base_field(&f));
        // every vector over F_3 of length 4
        let base = f.base_field_elements();
        for idx in 0..81u32 {
            let c: Vec<Elem> = (0..4).map(|i| base[((idx / 3u32.pow(i)) % 3) as usize]).collect();
            let before = m.mul_vec(&c, &f).iter().all(|x| x.is_zero());
            let after = e.mul_vec(&c, &f).iter().all(|x| x.is_zero());
            assert_eq!(before, after);
        }
        // already over F_q: same kernel
        let small = Matrix::from_rows(vec![vec![Elem::ONE, f.scalar(2), Elem::ZERO, Elem::ONE]], 4);
        let small_e = small.subfield_expand(&f);
        assert_eq!(small.null_space(&f).row_basis(&f), small_e.null_space(&f).row_basis(&f));
    }

    #[test]
    fn repetition_and_parity_codes() {
        let f = Arc::new(FieldCtx::prime(2).unwrap());
        // [5,1,5] repetition code
        let h = Matrix::from_rows(
            (0..4)
                .map(|i| {
                    let mut r = vec![Elem::ZERO; 5];
                    r[0] = Elem::ONE;
                    r[i + 1] = Elem::ONE;
                    r
                })
                .collect(),
            5,
        );
        let code = LinearCode::from_parity(f.clone(), &h, 1, Provenance::Family { tag: "test".into() });
        assert_eq!(code.k(), 1);
        assert!(code.check_invariants());
        let opts = DistanceOptions { early_exit: false, ..Default::default() };
        assert_eq!(min_distance(&code, &opts), MinDistance::Exact { d: 5 });
        // [4,3,2] even-weight code
        let h = Matrix::from_rows(vec![vec![Elem::ONE; 4]], 4);
        let code = LinearCode::from_parity(f.clone(), &h, 2, Provenance::Family { tag: "test".into() });
        assert_eq!(min_distance(&code, &opts), MinDistance::Exact { d: 2 });
        let tight = DistanceOptions { budget: 4, witness_weight: Some(2), ..Default::default() };
        assert_eq!(min_distance(&code, &tight), MinDistance::Interval { lo: 2, hi: 2 });
        assert_eq!(min_distance(&code, &tight).certified(), Some(2));
        let h = Matrix::identity(3);
        let code = LinearCode::from_parity(f, &h, 2, Provenance::Family { tag: "test".into() });
        assert_eq!(min_distance(&code, &opts), MinDistance::NoCodewords);
    }

    #[test]
    fn dump_format() {
        let f = f9();
        let m = Matrix::from_rows(vec![vec![Elem::ONE, f.prim()], vec![Elem::ZERO, f.scalar(2)]], 2);
        let expected = format!("1,0 {}\n0,0 2,0\n", f.format_elem(f.prim()));
        assert_eq!(m.dump(&f), expected);
    }
}
