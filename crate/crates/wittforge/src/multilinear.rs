//! Multilinear-morphism spaces between Dieudonné modules at finite level:
//! the V- and F-compatibility conditions, solution spaces (with symmetric
//! and alternating flavors) computed by linearizing the semilinear
//! constraints over Z/pⁿ, the index involution δ, the ζ_d product
//! morphisms on truncated Witt vectors, the telescoping double-sum
//! identity, and the weak-alternation relation checker.

use crate::dieudonne::DieudonneModule;
use crate::ring::{ChainElt, ChainRing};
use crate::semilinear::{kernel_generators, smith, wedge_vectors, Mat};
use crate::witt::{WittElt, WittRing};

/// A multilinear map `M_1 × … × M_r → N` of free modules over a common
/// chain ring, stored by its structure constants: the image of every
/// source-basis tuple.
#[derive(Clone, Debug)]
pub struct MultilinearMap {
    pub ring: ChainRing,
    pub source_ranks: Vec<usize>,
    pub target_rank: usize,
    /// `tensor[tuple_index]` = image of the basis tuple, mixed-radix indexed
    pub tensor: Vec<Vec<ChainElt>>,
}

impl MultilinearMap {
    pub fn zero(ring: ChainRing, source_ranks: Vec<usize>, target_rank: usize) -> Self {
        let count: usize = source_ranks.iter().product();
        let tensor = vec![vec![ring.zero(); target_rank]; count.max(1)];
        MultilinearMap {
            ring,
            source_ranks,
            target_rank,
            tensor,
        }
    }

    pub fn tuple_count(&self) -> usize {
        self.source_ranks.iter().product::<usize>().max(1)
    }

    /// mixed-radix index of a basis tuple (first slot most significant)
    pub fn index_of(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.source_ranks.len());
        let mut idx = 0;
        for (t, h) in tuple.iter().zip(&self.source_ranks) {
            assert!(t < h);
            idx = idx * h + t;
        }
        idx
    }

    pub fn tuple_at(&self, mut idx: usize) -> Vec<usize> {
        let mut tuple = vec![0; self.source_ranks.len()];
        for i in (0..self.source_ranks.len()).rev() {
            tuple[i] = idx % self.source_ranks[i];
            idx /= self.source_ranks[i];
        }
        tuple
    }

    pub fn set(&mut self, tuple: &[usize], value: Vec<ChainElt>) {
        let idx = self.index_of(tuple);
        assert_eq!(value.len(), self.target_rank);
        self.tensor[idx] = value;
    }

    /// full multilinear expansion on arbitrary argument vectors
    pub fn apply(&self, args: &[Vec<ChainElt>]) -> Vec<ChainElt> {
        assert_eq!(args.len(), self.source_ranks.len());
        let ring = &self.ring;
        let mut out = vec![ring.zero(); self.target_rank];
        for idx in 0..self.tuple_count() {
            let tuple = self.tuple_at(idx);
            let mut coeff = ring.one();
            for (slot, &i) in tuple.iter().enumerate() {
                coeff = ring.mul(&coeff, &args[slot][i]);
            }
            if ring.is_zero(&coeff) {
                continue;
            }
            for (o, v) in out.iter_mut().zip(&self.tensor[idx]) {
                *o = ring.add(o, &ring.mul(&coeff, v));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.tensor
            .iter()
            .all(|v| v.iter().all(|e| self.ring.is_zero(e)))
    }

    /// alternating as stored: antisymmetric under transpositions and zero on
    /// tuples with a repeated index (requires equal source ranks)
    pub fn is_alternating(&self) -> bool {
        let r = self.source_ranks.len();
        if r < 2 {
            return true;
        }
        let ring = &self.ring;
        for idx in 0..self.tuple_count() {
            let tuple = self.tuple_at(idx);
            if tuple.iter().enumerate().any(|(a, x)| tuple[..a].contains(x)) {
                if !self.tensor[idx].iter().all(|e| ring.is_zero(e)) {
                    return false;
                }
                continue;
            }
            for a in 0..r - 1 {
                let mut swapped = tuple.clone();
                swapped.swap(a, a + 1);
                let other = &self.tensor[self.index_of(&swapped)];
                for (x, y) in self.tensor[idx].iter().zip(other) {
                    if !ring.is_zero(&ring.add(x, y)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn column(m: &Mat, j: usize) -> Vec<ChainElt> {
    (0..m.rows).map(|i| m.at(i, j).clone()).collect()
}

/// `φ(Vm_1, …, Vm_r) = V(φ(m_1, …, m_r))` — exact on basis tuples, since
/// both sides are σ⁻¹-semilinear in every slot
pub fn check_v_condition(
    phi: &MultilinearMap,
    sources: &[&DieudonneModule],
    target: &DieudonneModule,
) -> bool {
    assert_eq!(sources.len(), phi.source_ranks.len());
    let ring = &phi.ring;
    for (s, &h) in sources.iter().zip(&phi.source_ranks) {
        assert!(s.ring.same_ring(ring) && s.rank == h, "ring or rank mismatch");
    }
    assert_eq!(target.rank, phi.target_rank);
    for idx in 0..phi.tuple_count() {
        let tuple = phi.tuple_at(idx);
        let args: Vec<Vec<ChainElt>> = tuple
            .iter()
            .enumerate()
            .map(|(slot, &i)| column(&sources[slot].v_map.mat, i))
            .collect();
        let lhs = phi.apply(&args);
        let prev: Vec<ChainElt> = phi.tensor[idx]
            .iter()
            .map(|e| ring.sigma_pow(e, -1))
            .collect();
        let rhs = target.v_map.mat.mul_vec(ring, &prev);
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// slot-wise F-conditions
/// `φ(m_1, …, F y_i, …, m_r) = F(φ(V m_1, …, y_i, …, V m_r))`, evaluated
/// on all basis tuples (sufficient by matching twist types) plus `samples`
/// random tuples as an extra guard
pub fn check_f_conditions(
    phi: &MultilinearMap,
    sources: &[&DieudonneModule],
    target: &DieudonneModule,
    samples: usize,
    seed: u64,
) -> bool {
    let ring = &phi.ring;
    let r = sources.len();
    let check_tuple = |args: &[Vec<ChainElt>]| -> bool {
        for i in 0..r {
            let lhs_args: Vec<Vec<ChainElt>> = (0..r)
                .map(|j| {
                    if j == i {
                        let tw: Vec<ChainElt> = args[j].iter().map(|e| ring.sigma(e)).collect();
                        sources[j].f_map.mat.mul_vec(ring, &tw)
                    } else {
                        args[j].clone()
                    }
                })
                .collect();
            let lhs = phi.apply(&lhs_args);
            let rhs_args: Vec<Vec<ChainElt>> = (0..r)
                .map(|j| {
                    if j == i {
                        args[j].clone()
                    } else {
                        let tw: Vec<ChainElt> =
                            args[j].iter().map(|e| ring.sigma_pow(e, -1)).collect();
                        sources[j].v_map.mat.mul_vec(ring, &tw)
                    }
                })
                .collect();
            let inner: Vec<ChainElt> = phi
                .apply(&rhs_args)
                .iter()
                .map(|e| ring.sigma(e))
                .collect();
            let rhs = target.f_map.mat.mul_vec(ring, &inner);
            if lhs != rhs {
                return false;
            }
        }
        true
    };
    for idx in 0..phi.tuple_count() {
        let tuple = phi.tuple_at(idx);
        let args: Vec<Vec<ChainElt>> = tuple
            .iter()
            .enumerate()
            .map(|(slot, &i)| {
                let mut v = vec![ring.zero(); sources[slot].rank];
                v[i] = ring.one();
                v
            })
            .collect();
        if !check_tuple(&args) {
            return false;
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let args: Vec<Vec<ChainElt>> = sources
            .iter()
            .map(|s| (0..s.rank).map(|_| ring.random(&mut rng)).collect())
            .collect();
        if !check_tuple(&args) {
            return false;
        }
    }
    true
}

use rand_chacha::rand_core::SeedableRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    All,
    Sym,
    Alt,
}

/// solution space of the V-condition (plus flavor constraints), computed by
/// linearizing every constraint over the underlying free Z/pⁿ-module of the
/// coefficient ring (z-power basis; σ and ring multiplication are both
/// Z/pⁿ-linear)
pub struct LSpace {
    /// log_p of the number of solutions
    pub count_exponent: usize,
    pub basis: Vec<MultilinearMap>,
    /// p-valuations of the invariant factors of the constraint matrix
    pub invariant_factors: Vec<usize>,
}

/// a Z/pⁿ-linear form `Σ coeff · σ^twist(x_unknown)` over the coefficient
/// ring; constraint rows are lists of terms
type TwistedTerm = (usize, ChainElt, i64);

fn linearize(
    ring: &ChainRing,
    n_unknowns: usize,
    rows: &[Vec<TwistedTerm>],
) -> (ChainRing, Mat) {
    assert_eq!(ring.e, 1, "classical coefficient rings only");
    let s = ring.gr.s as usize;
    let zn = ChainRing::witt_truncation(ring.p(), ring.n, 1);
    // basis elements z^0, …, z^{s-1} of the coefficient ring
    let basis: Vec<ChainElt> = (0..s)
        .map(|j| {
            let mut coeffs = vec![0u64; s];
            coeffs[j] = 1;
            ring.from_gr_coeffs(vec![coeffs])
        })
        .collect();
    let mut big = Mat::zeros(&zn, rows.len() * s, n_unknowns * s);
    for (r, row) in rows.iter().enumerate() {
        for (u, coeff, twist) in row {
            for (j, b) in basis.iter().enumerate() {
                let val = ring.mul(coeff, &ring.sigma_pow(b, *twist));
                for (i, &digit) in val.coeffs[0].iter().enumerate() {
                    let cur = big.at(r * s + i, u * s + j).clone();
                    let add = zn.from_i64(digit as i64);
                    *big.at_mut(r * s + i, u * s + j) = zn.add(&cur, &add);
                }
            }
        }
    }
    (zn, big)
}

fn elt_from_digits(ring: &ChainRing, zn: &ChainRing, digits: &[ChainElt]) -> ChainElt {
    let coeffs: Vec<u64> = digits
        .iter()
        .map(|d| {
            let _ = zn;
            d.coeffs[0][0]
        })
        .collect();
    ring.from_gr_coeffs(vec![coeffs])
}

pub fn solve_l_space(
    sources: &[&DieudonneModule],
    target: &DieudonneModule,
    flavor: Flavor,
) -> LSpace {
    solve_l_space_impl(sources, target, flavor, false)
}

/// like [`solve_l_space`], but also imposing the r F-conditions
/// `φ(m_1, …, F y_i, …, m_r) = F φ(V m_1, …, y_i, …, V m_r)`; at finite
/// level these do not follow from the V-condition, and only the full space
/// is in bijection with homomorphisms out of the exterior power
pub fn solve_l_space_full(
    sources: &[&DieudonneModule],
    target: &DieudonneModule,
    flavor: Flavor,
) -> LSpace {
    solve_l_space_impl(sources, target, flavor, true)
}

fn solve_l_space_impl(
    sources: &[&DieudonneModule],
    target: &DieudonneModule,
    flavor: Flavor,
    with_f_conditions: bool,
) -> LSpace {
    let ring = &target.ring;
    let ranks: Vec<usize> = sources.iter().map(|s| s.rank).collect();
    let proto = MultilinearMap::zero(ring.clone(), ranks.clone(), target.rank);
    let tuples = proto.tuple_count();
    let n_unknowns = tuples * target.rank; // ring-valued unknowns X[t][c]
    let unk = |t: usize, c: usize| t * target.rank + c;
    let mut rows: Vec<Vec<TwistedTerm>> = Vec::new();
    // V-condition per basis tuple and target coordinate:
    //   Σ_u (∏_j M_V[u_j, t_j]) X[u][c] − Σ_d M_V,N[c,d] σ⁻¹(X[t][d]) = 0
    for t in 0..tuples {
        let tuple = proto.tuple_at(t);
        for c in 0..target.rank {
            let mut row: Vec<TwistedTerm> = Vec::new();
            for u in 0..tuples {
                let utuple = proto.tuple_at(u);
                let mut coeff = ring.one();
                for (slot, (&ui, &ti)) in utuple.iter().zip(&tuple).enumerate() {
                    coeff = ring.mul(&coeff, sources[slot].v_map.mat.at(ui, ti));
                }
                if !ring.is_zero(&coeff) {
                    row.push((unk(u, c), coeff, 0));
                }
            }
            for d in 0..target.rank {
                let m = target.v_map.mat.at(c, d);
                if !ring.is_zero(m) {
                    row.push((unk(t, d), ring.neg(m), -1));
                }
            }
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    // F-condition per slot, basis tuple, and target coordinate:
    //   Σ_u M_F^{(i)}[u, t_i] X[t|i↦u][c]
    //     − Σ_d M_F,N[c,d] σ(∏_{j≠i} M_V^{(j)}[u_j, t_j]) σ(X[u|i↦t_i][d]) = 0
    if with_f_conditions {
        for i in 0..ranks.len() {
            for t in 0..tuples {
                let tuple = proto.tuple_at(t);
                for c in 0..target.rank {
                    let mut row: Vec<TwistedTerm> = Vec::new();
                    for ui in 0..ranks[i] {
                        let m = sources[i].f_map.mat.at(ui, tuple[i]);
                        if !ring.is_zero(m) {
                            let mut shifted = tuple.clone();
                            shifted[i] = ui;
                            row.push((unk(proto.index_of(&shifted), c), m.clone(), 0));
                        }
                    }
                    for u in 0..tuples {
                        let utuple = proto.tuple_at(u);
                        if utuple[i] != tuple[i] {
                            continue;
                        }
                        let mut prod = ring.one();
                        for (slot, (&uj, &tj)) in utuple.iter().zip(&tuple).enumerate() {
                            if slot != i {
                                prod = ring.mul(&prod, sources[slot].v_map.mat.at(uj, tj));
                            }
                        }
                        if ring.is_zero(&prod) {
                            continue;
                        }
                        let sprod = ring.sigma_pow(&prod, 1);
                        for d in 0..target.rank {
                            let m = target.f_map.mat.at(c, d);
                            if !ring.is_zero(m) {
                                row.push((unk(u, d), ring.neg(&ring.mul(m, &sprod)), 1));
                            }
                        }
                    }
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
        }
    }
    // flavor constraints
    if flavor != Flavor::All {
        let r = ranks.len();
        assert!(ranks.windows(2).all(|w| w[0] == w[1]), "equal source ranks required");
        for t in 0..tuples {
            let tuple = proto.tuple_at(t);
            if flavor == Flavor::Alt
                && tuple
                    .iter()
                    .enumerate()
                    .any(|(a, x)| tuple[..a].contains(x))
            {
                for c in 0..target.rank {
                    rows.push(vec![(unk(t, c), ring.one(), 0)]);
                }
                continue;
            }
            for a in 0..r.saturating_sub(1) {
                let mut sw = tuple.clone();
                sw.swap(a, a + 1);
                let u = proto.index_of(&sw);
                if u == t {
                    if flavor == Flavor::Alt {
                        // 2·X[t] = 0
                        for c in 0..target.rank {
                            rows.push(vec![(unk(t, c), ring.from_i64(2), 0)]);
                        }
                    }
                    continue;
                }
                if u < t {
                    continue; // each unordered pair once
                }
                for c in 0..target.rank {
                    let second = match flavor {
                        Flavor::Sym => ring.from_i64(-1),
                        Flavor::Alt => ring.one(),
                        Flavor::All => unreachable!(),
                    };
                    rows.push(vec![(unk(t, c), ring.one(), 0), (unk(u, c), second, 0)]);
                }
            }
        }
    }
    let (zn, big) = linearize(ring, n_unknowns, &rows);
    let sf = smith(&zn, &big);
    let count_exponent = sf.ker_length(&zn);
    let invariant_factors = sf.divisor_valuations(&zn);
    let gens = kernel_generators(&zn, &big);
    let s = ring.gr.s as usize;
    let mut basis = Vec::new();
    for g in gens {
        let mut m = MultilinearMap::zero(ring.clone(), ranks.clone(), target.rank);
        for t in 0..tuples {
            for c in 0..target.rank {
                let block = &g[unk(t, c) * s..(unk(t, c) + 1) * s];
                m.tensor[t][c] = elt_from_digits(ring, &zn, block);
            }
        }
        debug_assert!(check_v_condition(&m, sources, target));
        debug_assert!(!with_f_conditions || check_f_conditions(&m, sources, target, 0, 0));
        basis.push(m);
    }
    LSpace {
        count_exponent,
        basis,
        invariant_factors,
    }
}

/// module homomorphisms `g: A → B` commuting with F and V, by the same
/// linearization; the number of such maps is `p^count_exponent`
pub struct HomSpace {
    pub count_exponent: usize,
    pub basis: Vec<Mat>,
}

pub fn solve_hom_space(a: &DieudonneModule, b: &DieudonneModule) -> HomSpace {
    let ring = &a.ring;
    assert!(ring.same_ring(&b.ring));
    let unk = |i: usize, j: usize| i * a.rank + j; // g[i][j], i target row
    let n_unknowns = b.rank * a.rank;
    let mut rows: Vec<Vec<TwistedTerm>> = Vec::new();
    // g·M_F,A = M_F,B·σ(g)  and  g·M_V,A = M_V,B·σ⁻¹(g)
    for (mat_a, mat_b, tw) in [
        (&a.f_map.mat, &b.f_map.mat, 1i64),
        (&a.v_map.mat, &b.v_map.mat, -1i64),
    ] {
        for i in 0..b.rank {
            for j in 0..a.rank {
                let mut row: Vec<TwistedTerm> = Vec::new();
                for k in 0..a.rank {
                    let m = mat_a.at(k, j);
                    if !ring.is_zero(m) {
                        row.push((unk(i, k), m.clone(), 0));
                    }
                }
                for k in 0..b.rank {
                    let m = mat_b.at(i, k);
                    if !ring.is_zero(m) {
                        row.push((unk(k, j), ring.neg(m), tw));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let (zn, big) = linearize(ring, n_unknowns, &rows);
    let sf = smith(&zn, &big);
    let count_exponent = sf.ker_length(&zn);
    let gens = kernel_generators(&zn, &big);
    let s = ring.gr.s as usize;
    let basis = gens
        .into_iter()
        .map(|g| {
            Mat::from_fn(b.rank, a.rank, |i, j| {
                elt_from_digits(ring, &zn, &g[unk(i, j) * s..(unk(i, j) + 1) * s])
            })
        })
        .collect();
    HomSpace {
        count_exponent,
        basis,
    }
}

// ---------------------------------------------------------------------------
// index combinatorics: the δ involution and its sector bookkeeping

/// all integer vectors in `[0, bound)^r` with minimum entry 0
pub fn enumerate_index_vectors(r: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; r];
    loop {
        if cur.iter().copied().min() == Some(0) {
            out.push(cur.clone());
        }
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < bound {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// `δ(d)_i = max(d) − d_i`; an involution on vectors with min 0
pub fn delta(d: &[u64]) -> Vec<u64> {
    assert_eq!(d.iter().copied().min(), Some(0), "min(d) = 0 required");
    let max = *d.iter().max().unwrap();
    d.iter().map(|&x| max - x).collect()
}

/// the sector index: position of the first zero entry (0-based)
pub fn sector(d: &[u64]) -> usize {
    d.iter().position(|&x| x == 0).expect("min(d) = 0 required")
}

/// position of the first maximum entry (0-based); δ maps the sector-i set
/// onto the vectors whose first maximum sits at position i
pub fn first_max(d: &[u64]) -> usize {
    let max = *d.iter().max().unwrap();
    d.iter().position(|&x| x == max).unwrap()
}

// ---------------------------------------------------------------------------
// ζ_d: the Witt-product morphism with Frobenius kill predicates

/// `F^k(x) = 0` on a truncated Witt vector (iterated Frobenius shortens the
/// vector; the empty vector is zero)
pub fn f_power_kills(wr: &WittRing, x: &WittElt, k: usize) -> bool {
    let mut cur = x.clone();
    for _ in 0..k.min(wr.depth()) {
        if cur.len() <= 1 {
            return true;
        }
        // each application lands one depth lower; use the matching table
        let step = WittRing::new(crate::witt::build_witt_table(wr.p(), cur.len()), wr.base.clone());
        cur = step.frobenius(&cur);
    }
    cur.iter().all(|c| wr.base.is_zero(c))
}

/// the product morphism: inputs `x_i` with `F^{n+d_i}(x_i) = 0`
/// (min d = 0), output the Witt product, killed by `F^n` since Frobenius is
/// multiplicative and some `d_i` is 0
pub fn zeta_d(wr: &WittRing, xs: &[WittElt], d: &[u64], n: usize) -> Result<WittElt, String> {
    if d.iter().copied().min() != Some(0) {
        return Err("min(d) = 0 required".into());
    }
    if xs.len() != d.len() {
        return Err("length mismatch".into());
    }
    for (x, &di) in xs.iter().zip(d) {
        if !f_power_kills(wr, x, n + di as usize) {
            return Err("input not killed by the required Frobenius power".into());
        }
    }
    let mut prod = wr.one();
    for x in xs {
        prod = wr.mul(&prod, x);
    }
    debug_assert!(f_power_kills(wr, &prod, n));
    Ok(prod)
}

// ---------------------------------------------------------------------------
// the telescoping double-sum identity

/// With `w_{i,j+1} = w_{i,j} + α·y_{i,j}`, verifies
/// `Σ_i Σ_j φ(w_{1,j+1}, …, w_{i−1,j+1}, y_{i,j}, w_{i+1,j}, …, w_{r,j})
///  = Σ_i Σ_j φ(w_{1,n}, …, w_{i−1,n}, y_{i,j}, w_{i+1,0}, …, w_{r,0})`.
/// Generic over the module element type `T` and the target type `U`.
pub fn uglysum_check<T: Clone, U: Clone + PartialEq>(
    w0: &[T],
    ys: &[Vec<T>],
    add: impl Fn(&T, &T) -> T,
    alpha_mul: impl Fn(&T) -> T,
    phi: impl Fn(&[T]) -> U,
    u_add: impl Fn(&U, &U) -> U,
    u_zero: U,
) -> bool {
    let r = w0.len();
    assert_eq!(ys.len(), r);
    let n = ys[0].len();
    assert!(ys.iter().all(|y| y.len() == n));
    // w[i][j] for j = 0..=n
    let mut w: Vec<Vec<T>> = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = vec![w0[i].clone()];
        for j in 0..n {
            let next = add(&row[j], &alpha_mul(&ys[i][j]));
            row.push(next);
        }
        w.push(row);
    }
    let mut lhs = u_zero.clone();
    let mut rhs = u_zero;
    for i in 0..r {
        for j in 0..n {
            let args_l: Vec<T> = (0..r)
                .map(|k| {
                    if k < i {
                        w[k][j + 1].clone()
                    } else if k == i {
                        ys[i][j].clone()
                    } else {
                        w[k][j].clone()
                    }
                })
                .collect();
            lhs = u_add(&lhs, &phi(&args_l));
            let args_r: Vec<T> = (0..r)
                .map(|k| {
                    if k < i {
                        w[k][n].clone()
                    } else if k == i {
                        ys[i][j].clone()
                    } else {
                        w[k][0].clone()
                    }
                })
                .collect();
            rhs = u_add(&rhs, &phi(&args_r));
        }
    }
    lhs == rhs
}

// ---------------------------------------------------------------------------
// weak-alternation relations on exterior powers

#[derive(Debug, Clone)]
pub struct WeakAltReport {
    pub rho1_ok: bool,
    pub rho2_ok: bool,
    pub tuples_checked: usize,
}

/// The symbol map θ sends `V⊗x ↦ Υ(x)` and `F⊗x ↦ Φ(x)`; it must kill the
/// two relation families generating the defining submodule:
///   ρ₁ = V⊗(m_1∧…∧m_j) − 1⊗(Vm_1∧…∧Vm_j)
///   ρ₂ = F⊗(m_1∧Vm_2∧…∧Vm_j) − 1⊗(Fm_1∧m_2∧…∧m_j)
/// Both sides of each family have matching twist types per slot, so basis
/// tuples are exhaustive. Refuses p = 2 (weak alternation coincides with
/// antisymmetry only for odd p).
pub fn weakalt_relation_check(d: &DieudonneModule, j: usize) -> Result<WeakAltReport, String> {
    if d.ring.p() == 2 {
        return Err("p = 2 not supported: weak alternation differs from antisymmetry".into());
    }
    let ext = d.exterior_power(j)?;
    let ring = &d.ring;
    let h = d.rank;
    let mut rho1_ok = true;
    let mut rho2_ok = true;
    let mut tuples_checked = 0usize;
    let mut tuple = vec![0usize; j];
    loop {
        tuples_checked += 1;
        let basis_vecs: Vec<Vec<ChainElt>> = tuple
            .iter()
            .map(|&i| {
                let mut v = vec![ring.zero(); h];
                v[i] = ring.one();
                v
            })
            .collect();
        // ρ₁: Υ(m_1∧…∧m_j) = Vm_1∧…∧Vm_j
        let wedge = wedge_vectors(ring, &basis_vecs);
        let upsilon = ext
            .module
            .v_map
            .mat
            .mul_vec(ring, &wedge.iter().map(|e| ring.sigma_pow(e, -1)).collect::<Vec<_>>());
        let v_args: Vec<Vec<ChainElt>> = tuple
            .iter()
            .map(|&i| column(&d.v_map.mat, i))
            .collect();
        if upsilon != wedge_vectors(ring, &v_args) {
            rho1_ok = false;
        }
        // ρ₂: Φ(m_1∧Vm_2∧…∧Vm_j) = Fm_1∧m_2∧…∧m_j
        let mut mixed = Vec::with_capacity(j);
        mixed.push(basis_vecs[0].clone());
        for b in &basis_vecs[1..] {
            mixed.push(d.v_map.mat.mul_vec(ring, b));
        }
        let phi_arg = wedge_vectors(ring, &mixed);
        let phi_val = ext
            .module
            .f_map
            .mat
            .mul_vec(ring, &phi_arg.iter().map(|e| ring.sigma(e)).collect::<Vec<_>>());
        let mut rhs_vecs = Vec::with_capacity(j);
        rhs_vecs.push(d.f_map.mat.mul_vec(
            ring,
            &basis_vecs[0].iter().map(|e| ring.sigma(e)).collect::<Vec<_>>(),
        ));
        for b in &basis_vecs[1..] {
            rhs_vecs.push(b.clone());
        }
        if phi_val != wedge_vectors(ring, &rhs_vecs) {
            rho2_ok = false;
        }
        // next tuple
        let mut i = j;
        loop {
            if i == 0 {
                return Ok(WeakAltReport {
                    rho1_ok,
                    rho2_ok,
                    tuples_checked,
                });
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < h {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Measurement for the open question whether the V-condition implies the
/// F-conditions at a fixed finite level: solve the V-space at level n+1,
/// truncate the module and each basis solution to level n, and count how
/// many satisfy the F-conditions. Reported as data, never auto-passed.
pub fn f_condition_statistics(
    d_high: &DieudonneModule,
    r: usize,
    target_high: &DieudonneModule,
) -> (usize, usize) {
    let n_low = d_high.ring.n - 1;
    let low_ring = d_high.ring.reduce_level(n_low);
    let d_low = d_high.reduce_level(n_low);
    let t_low = target_high.reduce_level(n_low);
    let sources_high: Vec<&DieudonneModule> = (0..r).map(|_| d_high).collect();
    let space = solve_l_space(&sources_high, target_high, Flavor::All);
    let sources_low: Vec<&DieudonneModule> = (0..r).map(|_| &d_low).collect();
    let mut satisfied = 0;
    for m in &space.basis {
        let mut m_low = MultilinearMap::zero(
            low_ring.clone(),
            m.source_ranks.clone(),
            m.target_rank,
        );
        for (t, v) in m.tensor.iter().enumerate() {
            m_low.tensor[t] = v
                .iter()
                .map(|e| d_high.ring.reduce_elt(&low_ring, e))
                .collect();
        }
        if check_f_conditions(&m_low, &sources_low, &t_low, 20, 0x0f5eed) {
            satisfied += 1;
        }
    }
    (space.basis.len(), satisfied)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;

    fn supersingular(p: u64, n: usize, s: u32) -> DieudonneModule {
        let ring = ChainRing::witt_truncation(p, n, s);
        let pe = ring.from_i64(p as i64);
        let m = Mat {
            rows: 2,
            cols: 2,
            entries: vec![ring.zero(), pe.clone(), ring.one(), ring.zero()],
        };
        DieudonneModule::new(ring, m.clone(), m)
    }

    #[test]
    fn identity_and_zero_satisfy_both_conditions() {
        let d = supersingular(3, 2, 1);
        let ring = d.ring.clone();
        let mut id = MultilinearMap::zero(ring.clone(), vec![2], 2);
        for i in 0..2 {
            let mut v = vec![ring.zero(); 2];
            v[i] = ring.one();
            id.tensor[i] = v;
        }
        assert!(check_v_condition(&id, &[&d], &d));
        assert!(check_f_conditions(&id, &[&d], &d, 20, 7));
        let zero = MultilinearMap::zero(ring, vec![2], 2);
        assert!(check_v_condition(&zero, &[&d], &d));
        assert!(check_f_conditions(&zero, &[&d], &d, 20, 7));
    }

    #[test]
    fn random_tensor_generically_fails() {
        let d = supersingular(3, 2, 1);
        let ring = d.ring.clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let mut failures = 0;
        for _ in 0..5 {
            let mut m = MultilinearMap::zero(ring.clone(), vec![2, 2], 2);
            for t in 0..4 {
                m.tensor[t] = (0..2).map(|_| ring.random(&mut rng)).collect();
            }
            if !check_v_condition(&m, &[&d, &d], &d) {
                failures += 1;
            }
        }
        assert!(failures >= 4);
    }

    #[test]
    fn l_space_contains_identity_and_counts_match_brute_force() {
        // level 1, h = 2, p = 3: brute-force the V-condition over F_3 and
        // compare with the linearized solver
        let d = supersingular(3, 1, 1);
        let ring = d.ring.clone();
        let space = solve_l_space(&[&d], &d, Flavor::All);
        // brute force: 2×2 matrices X over F_3 with X·M_V = M_V·σ⁻¹(X)-style
        // condition phrased through the tensor: φ(Ve_i) = V(φ(e_i))
        let all = ring.enumerate();
        let mut count = 0u64;
        for a in &all {
            for b in &all {
                for c in &all {
                    for e in &all {
                        let mut m = MultilinearMap::zero(ring.clone(), vec![2], 2);
                        m.tensor[0] = vec![a.clone(), b.clone()];
                        m.tensor[1] = vec![c.clone(), e.clone()];
                        if check_v_condition(&m, &[&d], &d) {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 3u64.pow(space.count_exponent as u32));
        // identity is a solution
        let mut id = MultilinearMap::zero(ring.clone(), vec![2], 2);
        for i in 0..2 {
            let mut v = vec![ring.zero(); 2];
            v[i] = ring.one();
            id.tensor[i] = v;
        }
        assert!(check_v_condition(&id, &[&d], &d));
        // basis solutions verify, and the set is closed under scaling
        for m in &space.basis {
            assert!(check_v_condition(m, &[&d], &d));
            let mut scaled = m.clone();
            for t in 0..scaled.tensor.len() {
                scaled.tensor[t] = scaled.tensor[t]
                    .iter()
                    .map(|x| ring.mul(x, &ring.from_i64(2)))
                    .collect();
            }
            assert!(check_v_condition(&scaled, &[&d], &d));
        }
    }

    #[test]
    fn alternating_space_matches_hom_of_wedge() {
        // |L_alt(D², N)| = |Hom_{F,V}(⋀²D, N)| for N = ⋀²D at level 1
        let d = supersingular(3, 1, 1);
        let ext = d.exterior_power(2).unwrap();
        let space = solve_l_space(&[&d, &d], &ext.module, Flavor::Alt);
        let homs = solve_hom_space(&ext.module, &ext.module);
        assert_eq!(space.count_exponent, homs.count_exponent);
        for m in &space.basis {
            assert!(m.is_alternating());
        }
    }

    #[test]
    fn full_space_matches_homs_for_every_target() {
        // with the F-conditions imposed, |L_alt(D², N)| = |Hom_{F,V}(⋀²D, N)|
        // for targets where the V-only space strictly overcounts
        let d = supersingular(3, 1, 1);
        let ext = d.exterior_power(2).unwrap();
        let ring = d.ring.clone();
        let mult = DieudonneModule::new(
            ring.clone(),
            Mat::identity(&ring, 1),
            Mat::scalar(&ring, 1, &ring.from_i64(3)),
        );
        let etale = DieudonneModule::new(
            ring.clone(),
            Mat::scalar(&ring, 1, &ring.from_i64(3)),
            Mat::identity(&ring, 1),
        );
        let mut strict = 0;
        for target in [&ext.module, &mult, &etale] {
            let v_only = solve_l_space(&[&d, &d], target, Flavor::Alt);
            let full = solve_l_space_full(&[&d, &d], target, Flavor::Alt);
            let homs = solve_hom_space(&ext.module, target);
            assert_eq!(full.count_exponent, homs.count_exponent);
            assert!(full.count_exponent <= v_only.count_exponent);
            if full.count_exponent < v_only.count_exponent {
                strict += 1;
            }
        }
        assert!(strict >= 1, "expected at least one strict overcount");
    }

    #[test]
    fn delta_involution_and_sectors() {
        for r in 1..=3 {
            for m in 1..=4u64 {
                for v in enumerate_index_vectors(r, m) {
                    let dd = delta(&delta(&v));
                    assert_eq!(dd, v);
                    // δ maps sector i (first zero at i) to first-max at i
                    assert_eq!(first_max(&delta(&v)), sector(&v));
                }
            }
        }
        assert_eq!(delta(&[0, 2, 1]), vec![2, 0, 1]);
        assert_eq!(delta(&[0, 0, 0]), vec![0, 0, 0]);
        // the 5 vectors of Z²_{0,<3}... min 0, entries < 3: (0,0),(0,1),(0,2),(1,0),(2,0)
        assert_eq!(enumerate_index_vectors(2, 3).len(), 5);
    }

    #[test]
    fn zeta_product_and_frobenius_compat() {
        let wr = WittRing::new(
            crate::witt::build_witt_table(3, 3),
            ChainRing::equal_char(3, 1, 1, 1),
        );
        // x killed by F: x = V²(teichmuller) has F²(x)... build explicit
        let mut x1 = wr.zero();
        x1[2] = wr.base.one(); // V²(1): F(x1) = V(F(V(1)))-style, small depth
        let mut x2 = wr.zero();
        x2[1] = wr.base.from_i64(2);
        assert!(f_power_kills(&wr, &x1, 2));
        assert!(f_power_kills(&wr, &x2, 2));
        let z = zeta_d(&wr, &[x1.clone(), x2.clone()], &[0, 1], 2).unwrap();
        assert!(f_power_kills(&wr, &z, 2));
        // one zero input → zero
        let z0 = zeta_d(&wr, &[wr.zero(), x2.clone()], &[0, 1], 1).unwrap();
        assert!(wr.is_zero(&z0));
        // F(ζ(x)) = ζ(F-images): compare at one depth lower
        let wr2 = WittRing::new(crate::witt::build_witt_table(3, 2), wr.base.clone());
        let fz = wr.frobenius(&z);
        let fz2 = wr2.mul(&wr.frobenius(&x1), &wr.frobenius(&x2));
        assert_eq!(fz, fz2);
    }

    #[test]
    fn uglysum_integers_and_witt() {
        // over Z with φ = coordinate product, α = 5, r = 3, n = 4
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..100 {
            let w0: Vec<BigInt> = (0..3).map(|_| BigInt::from(rng.gen_range(-50i64..50))).collect();
            let ys: Vec<Vec<BigInt>> = (0..3)
                .map(|_| (0..4).map(|_| BigInt::from(rng.gen_range(-50i64..50))).collect())
                .collect();
            assert!(uglysum_check(
                &w0,
                &ys,
                |a, b| a + b,
                |a| a * 5,
                |args: &[BigInt]| args.iter().product::<BigInt>(),
                |a, b| a + b,
                BigInt::from(0),
            ));
        }
        // over W_2(F_3) with φ = Witt product and α = [2]
        let wr = WittRing::new(
            crate::witt::build_witt_table(3, 2),
            ChainRing::equal_char(3, 1, 1, 1),
        );
        let alpha = wr.from_i64(2);
        let elems = wr.enumerate();
        for trial in 0..100 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(trial);
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
                elems[rng.gen_range(0..elems.len())].clone()
            };
            let w0: Vec<WittElt> = (0..2).map(|_| pick(&mut rng)).collect();
            let ys: Vec<Vec<WittElt>> = (0..2)
                .map(|_| (0..3).map(|_| pick(&mut rng)).collect())
                .collect();
            assert!(uglysum_check(
                &w0,
                &ys,
                |a, b| wr.add(a, b),
                |a| wr.mul(a, &alpha),
                |args: &[WittElt]| {
                    let mut acc = wr.one();
                    for a in args {
                        acc = wr.mul(&acc, a);
                    }
                    acc
                },
                |a, b| wr.add(a, b),
                wr.zero(),
            ));
        }
    }

    #[test]
    fn weakalt_relations_on_supersingular() {
        let d = supersingular(3, 1, 1);
        let rep = weakalt_relation_check(&d, 2).unwrap();
        assert!(rep.rho1_ok);
        assert!(rep.rho2_ok);
        assert_eq!(rep.tuples_checked, 4);
        // j = 1 reduces to Υ = V
        let rep1 = weakalt_relation_check(&d, 1).unwrap();
        assert!(rep1.rho1_ok && rep1.rho2_ok);
        // p = 2 refused
        let d2 = supersingular(2, 1, 1);
        assert!(weakalt_relation_check(&d2, 2).is_err());
    }

    #[test]
    fn f_condition_statistics_reported() {
        // connected fixture at level 2, truncated to level 1: the ratio is
        // measured and printed, not asserted
        let d = supersingular(3, 2, 1);
        let (total, satisfied) = f_condition_statistics(&d, 1, &d);
        println!("V-space basis solutions: {total}, F-condition after truncation: {satisfied}");
        assert!(total >= 1);
    }
}
