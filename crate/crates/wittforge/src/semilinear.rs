//! Exact linear and semilinear algebra over finite chain rings: twisted
//! matrices, composition, exterior powers (compound matrices), Smith-form
//! diagonalization with elementary divisors, kernel/cokernel lengths, linear
//! solving, and twisted nilpotency tests.

use crate::ring::{ChainElt, ChainRing};
use serde::{Deserialize, Serialize};

/// Dense matrix over a chain ring, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<ChainElt>,
}

impl Mat {
    pub fn zeros(ring: &ChainRing, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &ChainRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ring.one();
        }
        m
    }

    pub fn scalar(ring: &ChainRing, n: usize, c: &ChainElt) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = c.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ChainElt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat { rows, cols, entries }
    }

    pub fn at(&self, i: usize, j: usize) -> &ChainElt {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut ChainElt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn col(&self, j: usize) -> Vec<ChainElt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[ChainElt]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            *self.at_mut(i, j) = v[i].clone();
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, ring: &ChainRing, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| ring.add(self.at(i, j), other.at(i, j)))
    }

    pub fn sub(&self, ring: &ChainRing, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| ring.sub(self.at(i, j), other.at(i, j)))
    }

    pub fn neg(&self, ring: &ChainRing) -> Mat {
        self.map(|e| ring.neg(e))
    }

    pub fn mul(&self, ring: &ChainRing, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                acc = ring.add(&acc, &ring.mul(self.at(i, k), other.at(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, ring: &ChainRing, v: &[ChainElt]) -> Vec<ChainElt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for k in 0..self.cols {
                    acc = ring.add(&acc, &ring.mul(self.at(i, k), &v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, ring: &ChainRing, c: &ChainElt) -> Mat {
        self.map(|e| ring.mul(e, c))
    }

    pub fn map(&self, mut f: impl FnMut(&ChainElt) -> ChainElt) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| f(e)).collect(),
        }
    }

    pub fn apply_sigma(&self, ring: &ChainRing, k: i64) -> Mat {
        self.map(|e| ring.sigma_pow(e, k))
    }

    pub fn is_zero(&self, ring: &ChainRing) -> bool {
        self.entries.iter().all(|e| ring.is_zero(e))
    }

    /// map entries into another chain ring
    pub fn convert(&self, mut f: impl FnMut(&ChainElt) -> ChainElt) -> Mat {
        self.map(|e| f(e))
    }
}

/// `v ↦ A·σ^t(v)`; composition `(A, s)∘(B, t) = (A·σ^s(B), s + t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemilinearMap {
    pub mat: Mat,
    pub twist: i64,
}

impl SemilinearMap {
    pub fn new(mat: Mat, twist: i64) -> Self {
        SemilinearMap { mat, twist }
    }

    pub fn identity(ring: &ChainRing, n: usize) -> Self {
        SemilinearMap::new(Mat::identity(ring, n), 0)
    }

    pub fn apply(&self, ring: &ChainRing, v: &[ChainElt]) -> Vec<ChainElt> {
        let tv: Vec<ChainElt> = v.iter().map(|x| ring.sigma_pow(x, self.twist)).collect();
        self.mat.mul_vec(ring, &tv)
    }

    pub fn compose(&self, ring: &ChainRing, other: &SemilinearMap) -> SemilinearMap {
        SemilinearMap::new(
            self.mat.mul(ring, &other.mat.apply_sigma(ring, self.twist)),
            self.twist + other.twist,
        )
    }

    pub fn pow(&self, ring: &ChainRing, k: usize) -> SemilinearMap {
        let mut acc = SemilinearMap::identity(ring, self.mat.rows);
        for _ in 0..k {
            acc = acc.compose(ring, self);
        }
        acc
    }

    pub fn add(&self, ring: &ChainRing, other: &SemilinearMap) -> SemilinearMap {
        assert_eq!(self.twist, other.twist, "can only add maps of equal twist");
        SemilinearMap::new(self.mat.add(ring, &other.mat), self.twist)
    }

    pub fn is_zero(&self, ring: &ChainRing) -> bool {
        self.mat.is_zero(ring)
    }
}

/// `true` iff the `bound`-fold semilinear composition of `f` with itself is 0.
pub fn twisted_nilpotency(ring: &ChainRing, f: &SemilinearMap, bound: usize) -> bool {
    assert_eq!(f.mat.rows, f.mat.cols);
    let mut acc = f.clone();
    for _ in 1..bound {
        if acc.is_zero(ring) {
            return true;
        }
        acc = acc.compose(ring, f);
    }
    acc.is_zero(ring)
}

/// strictly increasing `r`-subsets of `{0..h-1}` in lexicographic order
pub fn subsets_lex(h: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > h {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + h - r {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Determinant by Laplace expansion along the first column (exact, fine for
/// the small sizes used by minors); falls back to Smith-based determinant for
/// larger matrices.
pub fn det(ring: &ChainRing, m: &Mat) -> ChainElt {
    assert_eq!(m.rows, m.cols);
    if m.rows <= 4 {
        det_laplace(ring, m)
    } else {
        smith(ring, m).det(ring)
    }
}

fn det_laplace(ring: &ChainRing, m: &Mat) -> ChainElt {
    let n = m.rows;
    if n == 0 {
        return ring.one();
    }
    if n == 1 {
        return m.at(0, 0).clone();
    }
    let mut acc = ring.zero();
    for i in 0..n {
        if ring.is_zero(m.at(i, 0)) {
            continue;
        }
        let sub = Mat::from_fn(n - 1, n - 1, |r, c| {
            let rr = if r < i { r } else { r + 1 };
            m.at(rr, c + 1).clone()
        });
        let term = ring.mul(m.at(i, 0), &det_laplace(ring, &sub));
        if i % 2 == 0 {
            acc = ring.add(&acc, &term);
        } else {
            acc = ring.sub(&acc, &term);
        }
    }
    acc
}

/// the `r×r` minor of rows `ri`, columns `ci`
pub fn minor(ring: &ChainRing, m: &Mat, ri: &[usize], ci: &[usize]) -> ChainElt {
    let sub = Mat::from_fn(ri.len(), ci.len(), |i, j| m.at(ri[i], ci[j]).clone());
    det(ring, &sub)
}

/// `r`-th compound matrix in lexicographic wedge-basis order. For a
/// semilinear map the twist is preserved, and
/// `det(⋀^r f) = det(f)^{C(h-1, r-1)}`.
pub fn compound(ring: &ChainRing, m: &Mat, r: usize) -> Mat {
    assert_eq!(m.rows, m.cols);
    let subs = subsets_lex(m.rows, r);
    Mat::from_fn(subs.len(), subs.len(), |i, j| minor(ring, m, &subs[i], &subs[j]))
}

/// exterior power of a semilinear map: entries are the `r×r` minors in
/// lexicographic wedge order, twist preserved
pub fn exterior_power_map(ring: &ChainRing, f: &SemilinearMap, r: usize) -> SemilinearMap {
    assert!(r >= 1 && r <= f.mat.rows, "exterior power index out of range");
    SemilinearMap::new(compound(ring, &f.mat, r), f.twist)
}

/// wedge coordinates of `v_1 ∧ ... ∧ v_j` in the lexicographic wedge basis
pub fn wedge_vectors(ring: &ChainRing, vecs: &[Vec<ChainElt>]) -> Vec<ChainElt> {
    let h = vecs[0].len();
    let j = vecs.len();
    let m = Mat::from_fn(h, j, |r, c| vecs[c][r].clone());
    subsets_lex(h, j)
        .iter()
        .map(|rows| minor(ring, &m, rows, &(0..j).collect::<Vec<_>>()))
        .collect()
}

/// Smith-form data: `u · A · w = d` with `u`, `w` invertible (products of
/// swaps and transvections, so `det(u), det(w) = ±1`, tracked in `sign`).
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// diagonal entries (unit · uniformizer^v), length min(rows, cols); zero
    /// entries mean valuation n
    pub diag: Vec<ChainElt>,
    pub u: Mat,
    pub w: Mat,
    /// `det(u)·det(w) = sign` (±1)
    pub sign: i32,
    /// nilpotency degree of the ring (valuation of 0)
    level: usize,
}

/// Diagonalize by invertible row/column operations. Pivoting: minimal
/// valuation, ties broken by lowest (row, col) — deterministic output.
pub fn smith(ring: &ChainRing, a: &Mat) -> SmithForm {
    let mut m = a.clone();
    let rows = m.rows;
    let cols = m.cols;
    let mut u = Mat::identity(ring, rows);
    let mut w = Mat::identity(ring, cols);
    let mut sign = 1i32;
    let steps = rows.min(cols);
    for k in 0..steps {
        // find minimal-valuation pivot in the trailing submatrix
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let v = ring.valuation(m.at(i, j));
                if v < ring.n {
                    match best {
                        Some((bv, _, _)) if bv <= v => {}
                        _ => best = Some((v, i, j)),
                    }
                }
            }
        }
        let (pv, pi, pj) = match best {
            None => break, // all remaining entries are zero
            Some(b) => b,
        };
        if pi != k {
            swap_rows(&mut m, k, pi);
            swap_rows(&mut u, k, pi);
            sign = -sign;
        }
        if pj != k {
            swap_cols(&mut m, k, pj);
            swap_cols(&mut w, k, pj);
            sign = -sign;
        }
        let pivot = m.at(k, k).clone();
        let unit = ring
            .div_uniformizer_pow(&pivot, pv)
            .expect("pivot unit part");
        let unit_inv = ring.inv(&unit);
        // clear column k below the pivot
        for i in k + 1..rows {
            let e = m.at(i, k).clone();
            if ring.is_zero(&e) {
                continue;
            }
            let q = ring
                .div_uniformizer_pow(&e, pv)
                .expect("entry below pivot has smaller valuation");
            let factor = ring.mul(&q, &unit_inv);
            row_sub(ring, &mut m, i, k, &factor);
            row_sub(ring, &mut u, i, k, &factor);
            debug_assert!(ring.is_zero(m.at(i, k)));
        }
        // clear row k right of the pivot
        for j in k + 1..cols {
            let e = m.at(k, j).clone();
            if ring.is_zero(&e) {
                continue;
            }
            let q = ring
                .div_uniformizer_pow(&e, pv)
                .expect("entry right of pivot has smaller valuation");
            let factor = ring.mul(&q, &unit_inv);
            col_sub(ring, &mut m, j, k, &factor);
            col_sub(ring, &mut w, j, k, &factor);
            debug_assert!(ring.is_zero(m.at(k, j)));
        }
    }
    let diag = (0..steps).map(|i| m.at(i, i).clone()).collect();
    SmithForm {
        rows,
        cols,
        diag,
        u,
        w,
        sign,
        level: ring.n,
    }
}

fn swap_rows(m: &mut Mat, a: usize, b: usize) {
    for j in 0..m.cols {
        let x = m.at(a, j).clone();
        let y = m.at(b, j).clone();
        *m.at_mut(a, j) = y;
        *m.at_mut(b, j) = x;
    }
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    for i in 0..m.rows {
        let x = m.at(i, a).clone();
        let y = m.at(i, b).clone();
        *m.at_mut(i, a) = y;
        *m.at_mut(i, b) = x;
    }
}

/// row_i -= factor * row_k
fn row_sub(ring: &ChainRing, m: &mut Mat, i: usize, k: usize, factor: &ChainElt) {
    for j in 0..m.cols {
        let t = ring.mul(factor, m.at(k, j));
        *m.at_mut(i, j) = ring.sub(m.at(i, j), &t);
    }
}

/// col_j -= factor * col_k
fn col_sub(ring: &ChainRing, m: &mut Mat, j: usize, k: usize, factor: &ChainElt) {
    for i in 0..m.rows {
        let t = ring.mul(factor, m.at(i, k));
        *m.at_mut(i, j) = ring.sub(m.at(i, j), &t);
    }
}

impl SmithForm {
    /// elementary-divisor valuations, sorted ascending; the valuation of a
    /// zero divisor is the ring's nilpotency degree `n` (saturating)
    pub fn divisor_valuations(&self, ring: &ChainRing) -> Vec<usize> {
        let mut v: Vec<usize> = self.diag.iter().map(|d| ring.valuation(d)).collect();
        v.sort_unstable();
        v
    }

    pub fn coker_length(&self, ring: &ChainRing) -> usize {
        let m = self.rows.min(self.cols);
        let s: usize = self.diag.iter().map(|d| ring.valuation(d)).sum();
        s + self.level * (self.rows - m)
    }

    pub fn ker_length(&self, ring: &ChainRing) -> usize {
        let m = self.rows.min(self.cols);
        let s: usize = self.diag.iter().map(|d| ring.valuation(d)).sum();
        s + self.level * (self.cols - m)
    }

    /// determinant of the original (square) matrix
    pub fn det(&self, ring: &ChainRing) -> ChainElt {
        assert_eq!(self.rows, self.cols);
        let mut d = ring.one();
        for e in &self.diag {
            d = ring.mul(&d, e);
        }
        if self.sign < 0 {
            d = ring.neg(&d);
        }
        d
    }
}

/// Solve `A·X = B` over the chain ring. Returns the deterministic
/// minimal-valuation solution and an ambiguity flag (true when the solution
/// is non-unique: some pivot has positive valuation, or free columns exist).
pub fn solve(ring: &ChainRing, a: &Mat, b: &Mat) -> Option<(Mat, bool)> {
    assert_eq!(a.rows, b.rows);
    let sf = smith(ring, a);
    let ub = sf.u.mul(ring, b);
    let r = sf.diag.len();
    let mut ambiguous = a.cols > r;
    let mut y = Mat::zeros(ring, a.cols, b.cols);
    for i in 0..a.rows {
        let dv = if i < r { ring.valuation(&sf.diag[i]) } else { ring.n };
        if dv >= ring.n {
            // zero pivot: rhs row must vanish
            for j in 0..b.cols {
                if !ring.is_zero(ub.at(i, j)) {
                    return None;
                }
            }
            if i < r {
                ambiguous = true;
            }
            continue;
        }
        if dv > 0 {
            ambiguous = true;
        }
        let unit = ring.div_uniformizer_pow(&sf.diag[i], dv).unwrap();
        let unit_inv = ring.inv(&unit);
        for j in 0..b.cols {
            let c = ub.at(i, j);
            if ring.valuation(c) < dv {
                return None;
            }
            let q = ring.div_uniformizer_pow(c, dv).unwrap();
            *y.at_mut(i, j) = ring.mul(&q, &unit_inv);
        }
    }
    let x = sf.w.mul(ring, &y);
    // verify (division ambiguity never breaks an exact system, but assert)
    debug_assert_eq!(
        a.mul(ring, &x)
            .entries
            .iter()
            .zip(&b.entries)
            .all(|(p, q)| p == q),
        true
    );
    Some((x, ambiguous))
}

/// inverse of an invertible (unit-determinant) matrix
pub fn inverse(ring: &ChainRing, a: &Mat) -> Mat {
    assert_eq!(a.rows, a.cols);
    let (x, _) = solve(ring, a, &Mat::identity(ring, a.rows)).expect("matrix not invertible");
    assert!(a.mul(ring, &x) == Mat::identity(ring, a.rows), "inverse verification failed");
    x
}

/// generators of `ker(A)` (as columns), from the Smith form
pub fn kernel_generators(ring: &ChainRing, a: &Mat) -> Vec<Vec<ChainElt>> {
    let sf = smith(ring, a);
    let mut gens = Vec::new();
    let r = sf.diag.len();
    let pi = ring.uniformizer();
    for i in 0..a.cols {
        let dv = if i < r { ring.valuation(&sf.diag[i]) } else { ring.n };
        if dv == 0 {
            continue;
        }
        // w-column i scaled by uniformizer^{n - dv}
        let scale = ring.pow(&pi, (ring.n - dv) as u64);
        let col: Vec<ChainElt> = (0..a.cols).map(|k| ring.mul(sf.w.at(k, i), &scale)).collect();
        gens.push(col);
    }
    gens
}
