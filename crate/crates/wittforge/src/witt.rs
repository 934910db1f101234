//! Classical p-typical Witt vectors at finite length: universal structure
//! polynomials built by exact ghost-component recursion over the integers,
//! truncated Witt rings over characteristic-p chain rings, Frobenius /
//! Verschiebung / Teichmüller operators, digit conversion to Galois rings for
//! perfect residue fields, and the Artin–Hasse exponential.

use crate::mpoly::{div_exact, MPoly, PolyRing, ZZ};
use crate::ring::{ChainElt, ChainRing};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

/// Universal structure polynomials for length-`m` Witt vectors.
///
/// Variable layout: the first operand occupies variables `0..m`, the second
/// `m..2m`. `sum[n]`, `prod[n]`, `neg[n]` give the n-th coordinate of the
/// sum, product, and additive inverse; `frob[n]` (n < m-1) gives the n-th
/// coordinate of the Frobenius image (a vector of length m-1).
#[derive(Clone, Debug)]
pub struct WittTable {
    pub p: u64,
    pub m: usize,
    pub sum: Vec<MPoly<ZZ>>,
    pub prod: Vec<MPoly<ZZ>>,
    pub neg: Vec<MPoly<ZZ>>,
    pub frob: Vec<MPoly<ZZ>>,
}

/// n-th ghost polynomial `w_n = Σ_{i≤n} p^i · x_{off+i}^{p^{n-i}}`
pub fn ghost_poly(p: u64, n: usize, offset: usize) -> MPoly<ZZ> {
    let zz = ZZ;
    let mut acc = MPoly::zero();
    for i in 0..=n {
        let pi = BigInt::from(p).pow(i as u32);
        let e = (p as u64).pow((n - i) as u32);
        acc = acc.add(&zz, &MPoly::var(&zz, offset + i).pow(&zz, e).scale(&zz, &pi));
    }
    acc
}

/// ghost components of an integer Witt vector — the independent oracle over
/// torsion-free rings
pub fn ghost(p: u64, coords: &[BigInt]) -> Vec<BigInt> {
    let zz = ZZ;
    (0..coords.len())
        .map(|n| ghost_poly(p, n, 0).eval_with(&zz, |c| c.clone(), coords))
        .collect()
}

/// recover the integer Witt vector with the given ghost components, failing
/// if the defining divisions are not exact
pub fn from_ghost(p: u64, ghost_vals: &[BigInt]) -> Option<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let mut coords: Vec<BigInt> = Vec::with_capacity(ghost_vals.len());
    for n in 0..ghost_vals.len() {
        // w_n = Σ_{i<n} p^i x_i^{p^{n-i}} + p^n x_n
        let mut rest = BigInt::zero();
        for (i, xi) in coords.iter().enumerate() {
            rest += pb.pow(i as u32) * xi.pow(p.pow((n - i) as u32) as u32);
        }
        let num = &ghost_vals[n] - rest;
        let den = pb.pow(n as u32);
        let (q, r) = num_integer::Integer::div_rem(&num, &den);
        if !r.is_zero() {
            return None;
        }
        coords.push(q);
    }
    Some(coords)
}

/// solve `w_n(result) = target_n` for universal polynomials by the exact
/// ghost recursion; `target` gives the n-th ghost of the result
fn solve_ghost_recursion(p: u64, m: usize, target: impl Fn(usize) -> MPoly<ZZ>) -> Vec<MPoly<ZZ>> {
    let zz = ZZ;
    let pb = BigInt::from(p);
    let mut polys: Vec<MPoly<ZZ>> = Vec::with_capacity(m);
    for n in 0..m {
        let mut rest = MPoly::zero();
        for (i, fi) in polys.iter().enumerate() {
            let e = (p as u64).pow((n - i) as u32);
            rest = rest.add(&zz, &fi.pow(&zz, e).scale(&zz, &pb.pow(i as u32)));
        }
        let num = target(n).sub(&zz, &rest);
        polys.push(div_exact(&num, &pb.pow(n as u32)));
    }
    polys
}

/// Build (or load from cache) the structure polynomials for `W_m` at the
/// prime `p`. Set `WITTFORGE_CACHE_DIR` to persist tables across runs.
pub fn build_witt_table(p: u64, m: usize) -> Arc<WittTable> {
    assert!(m >= 1);
    if let Some(t) = cache::load_classical(p, m) {
        return Arc::new(t);
    }
    let zz = ZZ;
    let sum = solve_ghost_recursion(p, m, |n| {
        ghost_poly(p, n, 0).add(&zz, &ghost_poly(p, n, m))
    });
    let prod = solve_ghost_recursion(p, m, |n| {
        ghost_poly(p, n, 0).mul(&zz, &ghost_poly(p, n, m))
    });
    let neg = solve_ghost_recursion(p, m, |n| ghost_poly(p, n, 0).neg(&zz));
    let frob = if m >= 2 {
        solve_ghost_recursion(p, m - 1, |n| ghost_poly(p, n + 1, 0))
    } else {
        Vec::new()
    };
    let t = WittTable { p, m, sum, prod, neg, frob };
    cache::store_classical(&t);
    Arc::new(t)
}

/// Independent symbolic re-check of a built table: compose the ghost
/// polynomials with the structure polynomials and compare with the defining
/// ghost identities, coefficient by coefficient over the integers.
pub fn verify_ghost_identities(t: &WittTable) -> bool {
    let zz = ZZ;
    let pr = PolyRing(zz);
    let compose = |polys: &[MPoly<ZZ>], n: usize| -> MPoly<ZZ> {
        ghost_poly(t.p, n, 0).eval_with(&pr, |c| MPoly::constant(&zz, c.clone()), &polys[..=n])
    };
    for n in 0..t.m {
        let wa = ghost_poly(t.p, n, 0);
        let wb = ghost_poly(t.p, n, t.m);
        if compose(&t.sum, n) != wa.add(&zz, &wb) {
            return false;
        }
        if compose(&t.prod, n) != wa.mul(&zz, &wb) {
            return false;
        }
        if compose(&t.neg, n) != wa.neg(&zz) {
            return false;
        }
    }
    for n in 0..t.frob.len() {
        if compose(&t.frob, n) != ghost_poly(t.p, n + 1, 0) {
            return false;
        }
    }
    true
}

/// `F ≡ (x_0^p, x_1^p, …) mod p`: the Frobenius polynomials reduce to p-th
/// powers modulo p
pub fn verify_frobenius_mod_p(t: &WittTable) -> bool {
    let fp = ChainRing::equal_char(t.p, 1, 1, 1);
    for (n, f) in t.frob.iter().enumerate() {
        let reduced = f.map_coeffs(&fp, |c| fp.from_bigint(c));
        let expect = MPoly::var(&fp, n).pow(&fp, t.p);
        if reduced != expect {
            return false;
        }
    }
    true
}

/// The ring `W_m(R)` for a characteristic-p coefficient ring `R`, with
/// arithmetic through the universal structure polynomials.
#[derive(Clone)]
pub struct WittRing {
    pub table: Arc<WittTable>,
    pub base: ChainRing,
}

/// a truncated Witt vector: its coordinate list over the base ring
pub type WittElt = Vec<ChainElt>;

impl WittRing {
    pub fn new(table: Arc<WittTable>, base: ChainRing) -> Self {
        assert_eq!(base.p(), table.p, "base ring characteristic mismatch");
        WittRing { table, base }
    }

    pub fn p(&self) -> u64 {
        self.table.p
    }

    pub fn depth(&self) -> usize {
        self.table.m
    }

    pub fn zero(&self) -> WittElt {
        vec![self.base.zero(); self.table.m]
    }

    pub fn one(&self) -> WittElt {
        self.teichmuller(&self.base.one())
    }

    pub fn teichmuller(&self, x: &ChainElt) -> WittElt {
        let mut v = self.zero();
        v[0] = x.clone();
        v
    }

    pub fn is_zero(&self, a: &WittElt) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }

    pub fn is_unit(&self, a: &WittElt) -> bool {
        self.base.valuation(&a[0]) == 0
    }

    fn eval_binary(&self, polys: &[MPoly<ZZ>], a: &WittElt, b: &WittElt) -> WittElt {
        let m = self.table.m;
        assert_eq!(a.len(), m);
        assert_eq!(b.len(), m);
        let mut vals = Vec::with_capacity(2 * m);
        vals.extend_from_slice(a);
        vals.extend_from_slice(b);
        polys
            .iter()
            .map(|q| q.eval_with(&self.base, |c| self.base.from_bigint(c), &vals))
            .collect()
    }

    pub fn add(&self, a: &WittElt, b: &WittElt) -> WittElt {
        self.eval_binary(&self.table.sum, a, b)
    }

    pub fn mul(&self, a: &WittElt, b: &WittElt) -> WittElt {
        self.eval_binary(&self.table.prod, a, b)
    }

    pub fn neg(&self, a: &WittElt) -> WittElt {
        assert_eq!(a.len(), self.table.m);
        self.table
            .neg
            .iter()
            .map(|q| q.eval_with(&self.base, |c| self.base.from_bigint(c), a))
            .collect()
    }

    pub fn sub(&self, a: &WittElt, b: &WittElt) -> WittElt {
        self.add(a, &self.neg(b))
    }

    pub fn from_i64(&self, v: i64) -> WittElt {
        let one = self.one();
        let mut acc = self.zero();
        for _ in 0..v.unsigned_abs() {
            acc = self.add(&acc, &one);
        }
        if v < 0 {
            acc = self.neg(&acc);
        }
        acc
    }

    /// multiplication by p (Verschiebung-Frobenius composite in the ring)
    pub fn p_action(&self, a: &WittElt) -> WittElt {
        let mut acc = self.zero();
        for _ in 0..self.table.p {
            acc = self.add(&acc, a);
        }
        acc
    }

    /// Frobenius `W_m → W_{m-1}` through the universal polynomials
    pub fn frobenius(&self, a: &WittElt) -> WittElt {
        assert_eq!(a.len(), self.table.m);
        self.table
            .frob
            .iter()
            .map(|q| q.eval_with(&self.base, |c| self.base.from_bigint(c), a))
            .collect()
    }

    /// Verschiebung `W_{m-1} → W_m` (or re-truncating shift of a full vector)
    pub fn verschiebung(&self, a: &[ChainElt]) -> WittElt {
        let m = self.table.m;
        let mut v = Vec::with_capacity(m);
        v.push(self.base.zero());
        for c in a.iter().take(m - 1) {
            v.push(c.clone());
        }
        while v.len() < m {
            v.push(self.base.zero());
        }
        v
    }

    /// length-preserving Witt-functorial Frobenius for a perfect base field:
    /// applies the base Frobenius to every coordinate
    pub fn sigma(&self, a: &WittElt) -> WittElt {
        assert!(
            self.base.n == 1,
            "coordinatewise Frobenius needs a perfect base field"
        );
        a.iter().map(|c| self.base.sigma(c)).collect()
    }

    pub fn sigma_pow(&self, a: &WittElt, k: i64) -> WittElt {
        assert!(self.base.n == 1);
        a.iter().map(|c| self.base.sigma_pow(c, k)).collect()
    }

    /// project to the first `k` coordinates (the canonical map `W_m → W_k`)
    pub fn truncate_elt(&self, a: &WittElt, k: usize) -> WittElt {
        assert!(k <= self.table.m);
        a[..k].to_vec()
    }

    /// Newton iteration `y ← y(2 - ay)` from the Teichmüller lift of the
    /// residue inverse; each step doubles the number of correct coordinates
    pub fn inverse(&self, a: &WittElt) -> WittElt {
        assert!(self.is_unit(a), "not a unit");
        let two = self.from_i64(2);
        let mut y = self.teichmuller(&self.base.inv(&a[0]));
        let one = self.one();
        for _ in 0..64 {
            let ay = self.mul(a, &y);
            if ay == one {
                return y;
            }
            y = self.mul(&y, &self.sub(&two, &ay));
        }
        panic!("inversion did not converge");
    }

    pub fn enumerate(&self) -> Vec<WittElt> {
        let base_els = self.base.enumerate();
        let mut out: Vec<WittElt> = vec![Vec::new()];
        for _ in 0..self.table.m {
            let mut next = Vec::with_capacity(out.len() * base_els.len());
            for v in &out {
                for c in &base_els {
                    let mut w = v.clone();
                    w.push(c.clone());
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    pub fn random<R: rand::Rng>(&self, rng: &mut R) -> WittElt {
        (0..self.table.m).map(|_| self.base.random(rng)).collect()
    }

    pub fn fmt_elt(&self, a: &WittElt) -> String {
        let parts: Vec<String> = a.iter().map(|c| self.base.fmt_elt(c)).collect();
        format!("({})", parts.join(", "))
    }
}

/// `W_m(k) ≅ GR(p^m, s)` for a perfect field `k = F_{p^s}`: convert Witt
/// coordinates to the Galois-ring element `Σ p^i τ(c_i^{1/p^i})`
pub fn chain_from_witt_coords(wr: &WittRing, chain: &ChainRing, coords: &WittElt) -> ChainElt {
    let s = wr.base.gr.s;
    assert!(wr.base.n == 1, "perfect base field required");
    assert_eq!(chain.e, 1, "target must be an unramified chain ring");
    assert_eq!(chain.n, wr.table.m);
    let p = wr.p();
    let mut acc = chain.zero();
    let mut p_pow = chain.one();
    let p_elt = chain.from_i64(p as i64);
    for (i, c) in coords.iter().enumerate() {
        // c^{1/p^i} in k: raise to p^{(s - i mod s) mod s}
        let r = ((s as i64 - (i as i64 % s as i64)) % s as i64) as u32;
        let root = wr.base.sigma_pow(c, r as i64); // base sigma = x^p
        let lifted = chain.lift_residue(&chain_residue_from_base(chain, &root));
        let teich = chain_teichmuller(chain, &lifted);
        acc = chain.add(&acc, &chain.mul(&p_pow, &teich));
        p_pow = chain.mul(&p_pow, &p_elt);
    }
    acc
}

/// digit expansion inverse to `chain_from_witt_coords`
pub fn witt_coords_from_chain(wr: &WittRing, chain: &ChainRing, x: &ChainElt) -> WittElt {
    assert!(wr.base.n == 1);
    assert_eq!(chain.e, 1);
    assert_eq!(chain.n, wr.table.m);
    let mut digits: Vec<ChainElt> = Vec::with_capacity(wr.table.m);
    let mut cur_ring = chain.clone();
    let mut cur = x.clone();
    for i in 0..wr.table.m {
        let res = cur_ring.to_residue(&cur); // element of GF(p^s) as chain elt
        digits.push(base_from_chain_residue(&wr.base, &res));
        if i + 1 == wr.table.m {
            break;
        }
        let teich = chain_teichmuller(&cur_ring, &cur_ring.lift_residue(&res));
        let diff = cur_ring.sub(&cur, &teich);
        let q = cur_ring
            .div_uniformizer(&diff)
            .expect("x - τ(x̄) divisible by p");
        let next_ring = cur_ring.reduce_level(cur_ring.n - 1);
        cur = cur_ring.reduce_elt(&next_ring, &q);
        cur_ring = next_ring;
    }
    // coordinate i is the p^i-th power of digit i
    digits
        .iter()
        .enumerate()
        .map(|(i, d)| wr.base.sigma_pow(d, i as i64))
        .collect()
}

/// Teichmüller representative in an unramified chain ring: the unique lift
/// fixed by x ↦ x^{p^s}
fn chain_teichmuller(chain: &ChainRing, x: &ChainElt) -> ChainElt {
    let q = chain.p().pow(chain.gr.s);
    let mut t = x.clone();
    for _ in 0..2 * chain.n as u32 {
        t = chain.pow(&t, q);
    }
    debug_assert!(chain.eq(&chain.pow(&t, q), &t));
    t
}

/// move a residue-field element between two chain rings with the same
/// residue field (coordinates carry over directly)
fn chain_residue_from_base(chain: &ChainRing, c: &ChainElt) -> ChainElt {
    let rf = chain.residue_field();
    rf.from_gr_coeffs(vec![c.coeffs[0].clone()])
}

fn base_from_chain_residue(base: &ChainRing, c: &ChainElt) -> ChainElt {
    base.from_gr_coeffs(vec![c.coeffs[0].clone()])
}

/// Coefficients of the Artin–Hasse exponential `exp(Σ_i t^{p^i}/p^i)` up to
/// degree `nterms - 1`, as exact rationals. Every coefficient is p-integral
/// (asserted), which is what lets the series reduce mod p.
pub fn artin_hasse_series(p: u64, nterms: usize) -> Vec<BigRational> {
    // g(t) = Σ_{p^i < nterms} t^{p^i} / p^i
    let mut g = vec![BigRational::zero(); nterms];
    let mut e = 1usize; // p^i
    let mut pi = BigInt::one();
    while e < nterms {
        g[e] = BigRational::new(BigInt::one(), pi.clone());
        match e.checked_mul(p as usize) {
            Some(ne) if ne < nterms => {
                e = ne;
                pi *= BigInt::from(p);
            }
            _ => break,
        }
    }
    // exp(g) via E' = g'·E: k·e_k = Σ_{j=1..k} j·g_j·e_{k-j}
    let mut eser = vec![BigRational::zero(); nterms];
    eser[0] = BigRational::one();
    for k in 1..nterms {
        let mut acc = BigRational::zero();
        for j in 1..=k {
            if !g[j].is_zero() {
                acc += BigRational::from(BigInt::from(j as i64)) * &g[j] * eser[k - j].clone();
            }
        }
        eser[k] = acc / BigRational::from(BigInt::from(k as i64));
    }
    for c in &eser {
        assert!(
            !(c.denom() % BigInt::from(p)).is_zero(),
            "Artin–Hasse coefficient not p-integral"
        );
    }
    eser
}

/// reduce a p-integral rational mod p into a characteristic-p chain ring
fn rational_mod_p(base: &ChainRing, c: &BigRational) -> ChainElt {
    let p = BigInt::from(base.p());
    let num = ((c.numer() % &p) + &p) % &p;
    let den = ((c.denom() % &p) + &p) % &p;
    assert!(!den.is_zero());
    let den_inv = den.modpow(&(&p - BigInt::from(2)), &p); // Fermat
    let r = (num * den_inv) % &p;
    base.from_i64(r.to_i64().unwrap())
}

/// Artin–Hasse exponential of a Witt vector: the truncated power series
/// `E(x, t) = Π_n F(x_n t^{p^n})` over the base ring, coefficients of
/// `t^0 … t^{nterms-1}`.
pub fn artin_hasse_eval(base: &ChainRing, coords: &[ChainElt], nterms: usize) -> Vec<ChainElt> {
    let p = base.p();
    let series = artin_hasse_series(p, nterms);
    let series_p: Vec<ChainElt> = series.iter().map(|c| rational_mod_p(base, c)).collect();
    let mut acc = vec![base.zero(); nterms];
    acc[0] = base.one();
    for (n, xn) in coords.iter().enumerate() {
        let step = match (p as usize).checked_pow(n as u32) {
            Some(s) if s < nterms => s,
            _ => break,
        };
        // factor F(x_n t^{p^n}): coefficient at t^{step·k} is c_k · x_n^k
        let mut factor = vec![base.zero(); nterms];
        let mut k = 0usize;
        let mut xpow = base.one();
        while k * step < nterms {
            factor[k * step] = base.mul(&series_p[k], &xpow);
            xpow = base.mul(&xpow, xn);
            k += 1;
        }
        // truncated product
        let mut next = vec![base.zero(); nterms];
        for (i, a) in acc.iter().enumerate() {
            if base.is_zero(a) {
                continue;
            }
            for (j, b) in factor.iter().enumerate() {
                if i + j >= nterms {
                    break;
                }
                let t = base.mul(a, b);
                next[i + j] = base.add(&next[i + j], &t);
            }
        }
        acc = next;
    }
    acc
}

/// On-disk cache for structure-polynomial tables, enabled by the
/// `WITTFORGE_CACHE_DIR` environment variable.
pub mod cache {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct PolyData(Vec<(String, String)>);

    fn poly_to_data(p: &MPoly<ZZ>) -> PolyData {
        let mut keys: Vec<u128> = p.terms.keys().copied().collect();
        keys.sort_unstable();
        PolyData(
            keys.iter()
                .map(|k| (k.to_string(), p.terms[k].to_string()))
                .collect(),
        )
    }

    fn poly_from_data(d: &PolyData) -> Option<MPoly<ZZ>> {
        let mut terms = HashMap::new();
        for (k, c) in &d.0 {
            terms.insert(k.parse::<u128>().ok()?, c.parse::<BigInt>().ok()?);
        }
        Some(MPoly { terms })
    }

    #[derive(Serialize, Deserialize)]
    struct ClassicalTableFile {
        p: u64,
        m: usize,
        sum: Vec<PolyData>,
        prod: Vec<PolyData>,
        neg: Vec<PolyData>,
        frob: Vec<PolyData>,
    }

    fn cache_path(name: &str) -> Option<std::path::PathBuf> {
        let dir = std::env::var_os("WITTFORGE_CACHE_DIR")?;
        Some(std::path::PathBuf::from(dir).join(name))
    }

    pub fn load_classical(p: u64, m: usize) -> Option<WittTable> {
        let path = cache_path(&format!("classical_p{}_m{}.json", p, m))?;
        let text = std::fs::read_to_string(path).ok()?;
        let f: ClassicalTableFile = serde_json::from_str(&text).ok()?;
        if f.p != p || f.m != m {
            return None;
        }
        let conv = |v: &Vec<PolyData>| -> Option<Vec<MPoly<ZZ>>> {
            v.iter().map(poly_from_data).collect()
        };
        Some(WittTable {
            p,
            m,
            sum: conv(&f.sum)?,
            prod: conv(&f.prod)?,
            neg: conv(&f.neg)?,
            frob: conv(&f.frob)?,
        })
    }

    pub fn store_classical(t: &WittTable) {
        let Some(path) = cache_path(&format!("classical_p{}_m{}.json", t.p, t.m)) else {
            return;
        };
        let f = ClassicalTableFile {
            p: t.p,
            m: t.m,
            sum: t.sum.iter().map(poly_to_data).collect(),
            prod: t.prod.iter().map(poly_to_data).collect(),
            neg: t.neg.iter().map(poly_to_data).collect(),
            frob: t.frob.iter().map(poly_to_data).collect(),
        };
        if let Ok(text) = serde_json::to_string(&f) {
            let _ = std::fs::create_dir_all(path.parent().unwrap());
            let _ = std::fs::write(path, text);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_sum_polynomial() {
        // S_1 = a_1 + b_1 - a_0·b_0 for p = 2
        let t = build_witt_table(2, 2);
        let zz = ZZ;
        let expect = MPoly::var(&zz, 1)
            .add(&zz, &MPoly::var(&zz, 3))
            .sub(&zz, &MPoly::var(&zz, 0).mul(&zz, &MPoly::var(&zz, 2)));
        assert_eq!(t.sum[1], expect);
    }

    #[test]
    fn ghost_oracle_values() {
        // ghost of (1,1) at p=2 is (1, 3); of (2,-2) at p=3 is (2, 2)
        let g = ghost(2, &[BigInt::from(1), BigInt::from(1)]);
        assert_eq!(g, vec![BigInt::from(1), BigInt::from(3)]);
        let g = ghost(3, &[BigInt::from(2), BigInt::from(-2)]);
        assert_eq!(g, vec![BigInt::from(2), BigInt::from(2)]);
        // roundtrip
        let v = from_ghost(3, &g).unwrap();
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-2)]);
        // non-realizable ghost vector is rejected
        assert!(from_ghost(3, &[BigInt::from(0), BigInt::from(1)]).is_none());
    }

    #[test]
    fn w2_f3_addition_matches_ghost_oracle() {
        // (1,0) + (1,0) = (2,1) in W_2(F_3): integer ghost oracle gives
        // ghost sum (2,2), whose Witt vector is (2,-2) ≡ (2,1) mod 3
        let t = build_witt_table(3, 2);
        let f3 = ChainRing::equal_char(3, 1, 1, 1);
        let w = WittRing::new(t, f3.clone());
        let x = vec![f3.from_i64(1), f3.from_i64(0)];
        let s = w.add(&x, &x);
        assert_eq!(s, vec![f3.from_i64(2), f3.from_i64(1)]);
    }

    #[test]
    fn small_tables_pass_symbolic_ghost_check() {
        for (p, m) in [(2u64, 3usize), (3, 3), (5, 2)] {
            let t = build_witt_table(p, m);
            assert!(verify_ghost_identities(&t), "p={} m={}", p, m);
            assert!(verify_frobenius_mod_p(&t), "p={} m={}", p, m);
        }
    }

    #[test]
    fn witt_ring_axioms_w2_f4() {
        let t = build_witt_table(2, 2);
        let f4 = ChainRing::equal_char(2, 2, 1, 1);
        let w = WittRing::new(t, f4.clone());
        let els = w.enumerate();
        assert_eq!(els.len(), 16);
        let zero = w.zero();
        let one = w.one();
        for a in &els {
            assert_eq!(w.add(a, &zero), *a);
            assert_eq!(w.mul(a, &one), *a);
            assert!(w.is_zero(&w.add(a, &w.neg(a))));
            for b in &els {
                assert_eq!(w.add(a, b), w.add(b, a));
                assert_eq!(w.mul(a, b), w.mul(b, a));
                // distributivity
                let c = &els[5];
                assert_eq!(
                    w.mul(a, &w.add(b, c)),
                    w.add(&w.mul(a, b), &w.mul(a, c))
                );
            }
        }
    }

    #[test]
    fn teichmuller_multiplicative_f4_f9() {
        for (p, s) in [(2u64, 2u32), (3, 2)] {
            let t = build_witt_table(p, 2);
            let k = ChainRing::equal_char(p, s, 1, 1);
            let w = WittRing::new(t, k.clone());
            for a in k.enumerate() {
                for b in k.enumerate() {
                    assert_eq!(
                        w.mul(&w.teichmuller(&a), &w.teichmuller(&b)),
                        w.teichmuller(&k.mul(&a, &b))
                    );
                }
            }
        }
    }

    #[test]
    fn frobenius_verschiebung_composites() {
        // FV = p on W_2(F_3) (comparing in W_1), and VF = p over char p
        let t = build_witt_table(3, 3);
        let f3 = ChainRing::equal_char(3, 1, 1, 1);
        let w = WittRing::new(t, f3.clone());
        for a in w.enumerate() {
            // F(V(a)) = p·a after truncation alignment: V then F drops back
            let va = w.verschiebung(&a[..2]);
            let fva = w.frobenius(&va); // length 2
            let pa = w.p_action(&w.truncate_elt(&a, 3));
            assert_eq!(fva, pa[..2].to_vec());
            // over char p: p·a = V(F(a))
            let fa = w.frobenius(&a);
            let vfa = w.verschiebung(&fa);
            assert_eq!(vfa, pa);
        }
    }

    #[test]
    fn inverse_newton() {
        let t = build_witt_table(3, 3);
        let f9 = ChainRing::equal_char(3, 2, 1, 1);
        let w = WittRing::new(t, f9.clone());
        let z = f9.residue_gen();
        let a = vec![z.clone(), f9.from_i64(2), f9.mul(&z, &z)];
        let ainv = w.inverse(&a);
        assert_eq!(w.mul(&a, &ainv), w.one());
    }

    #[test]
    fn digit_conversion_is_ring_iso() {
        // W_2(F_4) ↔ GR(4, 2), exhaustive
        let t = build_witt_table(2, 2);
        let f4 = ChainRing::equal_char(2, 2, 1, 1);
        let w = WittRing::new(t, f4.clone());
        let gr = ChainRing::witt_truncation(2, 2, 2);
        let els = w.enumerate();
        let mut seen = std::collections::HashSet::new();
        for a in &els {
            let x = chain_from_witt_coords(&w, &gr, a);
            assert_eq!(&witt_coords_from_chain(&w, &gr, &x), a);
            seen.insert(format!("{:?}", x));
        }
        assert_eq!(seen.len(), 16); // bijective
        for a in &els {
            for b in &els {
                let xa = chain_from_witt_coords(&w, &gr, a);
                let xb = chain_from_witt_coords(&w, &gr, b);
                assert_eq!(chain_from_witt_coords(&w, &gr, &w.add(a, b)), gr.add(&xa, &xb));
                assert_eq!(chain_from_witt_coords(&w, &gr, &w.mul(a, b)), gr.mul(&xa, &xb));
            }
        }
    }

    #[test]
    fn artin_hasse_basics() {
        // denominators of the p=2 series up to t^7 are odd
        let s = artin_hasse_series(2, 8);
        for c in &s {
            assert!(c.denom() % BigInt::from(2) != BigInt::zero());
        }
        // E(0, t) = 1 and E([a], t) = F(a·t)
        let f3 = ChainRing::equal_char(3, 1, 1, 1);
        let e0 = artin_hasse_eval(&f3, &[f3.zero(), f3.zero()], 9);
        assert_eq!(e0[0], f3.one());
        assert!(e0[1..].iter().all(|c| f3.is_zero(c)));
        let s3 = artin_hasse_series(3, 9);
        let a = f3.from_i64(2);
        let e = artin_hasse_eval(&f3, &[a.clone(), f3.zero()], 9);
        for (k, coeff) in e.iter().enumerate() {
            let ck = super::rational_mod_p(&f3, &s3[k]);
            assert_eq!(*coeff, f3.mul(&ck, &f3.pow(&a, k as u64)));
        }
    }

    #[test]
    fn artin_hasse_turns_sums_into_products() {
        // E(x + y, t) = E(x, t)·E(y, t) over R = F_3[u]/u^3, random samples
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let base = ChainRing::equal_char(3, 1, 3, 1);
        let t = build_witt_table(3, 2);
        let w = WittRing::new(t, base.clone());
        let nterms = 9;
        for _ in 0..50 {
            let x = w.random(&mut rng);
            let y = w.random(&mut rng);
            let ex = artin_hasse_eval(&base, &x, nterms);
            let ey = artin_hasse_eval(&base, &y, nterms);
            let exy = artin_hasse_eval(&base, &w.add(&x, &y), nterms);
            // truncated product of ex·ey
            let mut prod = vec![base.zero(); nterms];
            for i in 0..nterms {
                for j in 0..nterms - i {
                    let t = base.mul(&ex[i], &ey[j]);
                    prod[i + j] = base.add(&prod[i + j], &t);
                }
            }
            assert_eq!(prod, exy);
        }
    }

    #[test]
    fn table_cache_roundtrip() {
        let dir = std::env::temp_dir().join(format!("wittforge-cache-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let t = build_witt_table(3, 2);
        std::env::set_var("WITTFORGE_CACHE_DIR", &dir);
        cache::store_classical(&t);
        let loaded = cache::load_classical(3, 2).unwrap();
        std::env::remove_var("WITTFORGE_CACHE_DIR");
        assert_eq!(loaded.sum, t.sum);
        assert_eq!(loaded.prod, t.prod);
        assert_eq!(loaded.neg, t.neg);
        assert_eq!(loaded.frob, t.frob);
        let _ = std::fs::remove_dir_all(&dir);
    }
}
