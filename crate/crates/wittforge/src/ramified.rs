//! Ramified Witt vectors for a totally ramified extension `O = Z_q[y]/E(y)`
//! (Eisenstein `E`, uniformizer `π = y`, residue field `F_q`, `q = p^f`).
//! Structure polynomials are built by the π-adic ghost recursion inside a
//! large ambient chain ring; ghost identities hold exactly there because
//! every division ambiguity is pushed past the ambient nilpotency level.

use crate::mpoly::{MPoly, PolyRing};
use crate::ring::{ChainElt, ChainRing};
use crate::witt::ghost_poly as classical_ghost_poly;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

/// Base discrete valuation ring `O = Z_q[y]/E(y)`; `eis` is the full
/// little-endian coefficient list of the monic Eisenstein polynomial,
/// length `e + 1` with last entry 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseDVR {
    pub p: u64,
    pub e: usize,
    pub f: u32,
    pub eis: Vec<i64>,
}

impl BaseDVR {
    pub fn new(p: u64, e: usize, f: u32, eis: Vec<i64>) -> Self {
        assert_eq!(eis.len(), e + 1);
        assert_eq!(eis[e], 1, "Eisenstein polynomial must be monic");
        BaseDVR { p, e, f, eis }
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// the unramified case `O = Z_q`
    pub fn unramified(p: u64, f: u32) -> Self {
        BaseDVR::new(p, 1, f, vec![-(p as i64), 1])
    }

    /// `W_O(k)/V^n ≅ O'/π^n` for `k = F_{p^s}` (with `f | s`): the length-n
    /// chain quotient of `O' = W(k) ⊗_{W(F_q)} O`, distinguished Frobenius
    /// `σ_0^f`
    pub fn make_wo_of_k(&self, s: u32, n: usize) -> ChainRing {
        assert_eq!(s % self.f, 0, "residue field must contain F_q");
        ChainRing::mixed_from_integer_eisenstein(self.p, s, self.e, n, &self.eis[..self.e], self.f)
    }

    /// ambient ring for table construction: `GR(p^P, f)[y]/E(y)` with
    /// `P = m·e + 2`, realized as the length-`e·P` chain quotient
    fn ambient(&self, m: usize) -> ChainRing {
        let prec = m * self.e + 2;
        ChainRing::mixed_from_integer_eisenstein(
            self.p,
            self.f,
            self.e,
            self.e * prec,
            &self.eis[..self.e],
            self.f,
        )
    }
}

/// `n`-th ramified ghost polynomial `Σ_{i≤n} π^i x_{off+i}^{q^{n-i}}` over
/// the ambient ring
pub fn ramified_ghost_poly(ambient: &ChainRing, q: u64, n: usize, offset: usize) -> MPoly<ChainRing> {
    let pi = ambient.uniformizer();
    let mut acc = MPoly::zero();
    for i in 0..=n {
        let c = ambient.pow(&pi, i as u64);
        let e = q.pow((n - i) as u32);
        acc = acc.add(ambient, &MPoly::var(ambient, offset + i).pow(ambient, e).scale(ambient, &c));
    }
    acc
}

/// Structure polynomials for length-`m` ramified Witt vectors, with
/// coefficients in the ambient chain ring. Variable layout matches the
/// classical tables: first operand `0..m`, second `m..2m`. `mu[n]` expresses
/// the n-th coordinate of the natural transformation from classical Witt
/// vectors (variables `0..f·n+1`).
#[derive(Clone, Debug)]
pub struct RamifiedTable {
    pub base: BaseDVR,
    pub m: usize,
    pub ambient: ChainRing,
    pub sum: Vec<MPoly<ChainRing>>,
    pub prod: Vec<MPoly<ChainRing>>,
    pub neg: Vec<MPoly<ChainRing>>,
    pub frob: Vec<MPoly<ChainRing>>,
    pub mu: Vec<MPoly<ChainRing>>,
    /// ambient coordinates of the Witt vector `π·1` (ghost `(π, π, …)`)
    pub pi_coords: Vec<ChainElt>,
}

fn solve_pi_recursion(
    ambient: &ChainRing,
    q: u64,
    m: usize,
    target: impl Fn(usize) -> MPoly<ChainRing>,
) -> Vec<MPoly<ChainRing>> {
    let pi = ambient.uniformizer();
    let mut polys: Vec<MPoly<ChainRing>> = Vec::with_capacity(m);
    for n in 0..m {
        let mut rest = MPoly::zero();
        for (i, fi) in polys.iter().enumerate() {
            let e = q.pow((n - i) as u32);
            let c = ambient.pow(&pi, i as u64);
            rest = rest.add(ambient, &fi.pow(ambient, e).scale(ambient, &c));
        }
        let num = target(n).sub(ambient, &rest);
        let div = num.map_coeffs(ambient, |c| {
            ambient
                .div_uniformizer_pow(c, n)
                .expect("ghost recursion division not exact")
        });
        polys.push(div);
    }
    polys
}

/// Build (or load from cache) the ramified structure polynomials at length
/// `m`, including Frobenius and the comparison transformation from classical
/// Witt vectors.
pub fn build_ramified_table(base: &BaseDVR, m: usize) -> Arc<RamifiedTable> {
    assert!(m >= 1);
    if let Some(t) = cache::load_ramified(base, m) {
        return Arc::new(t);
    }
    let ambient = base.ambient(m);
    let q = base.q();
    let gp = |n: usize, off: usize| ramified_ghost_poly(&ambient, q, n, off);
    let sum = solve_pi_recursion(&ambient, q, m, |n| gp(n, 0).add(&ambient, &gp(n, m)));
    let prod = solve_pi_recursion(&ambient, q, m, |n| gp(n, 0).mul(&ambient, &gp(n, m)));
    let neg = solve_pi_recursion(&ambient, q, m, |n| gp(n, 0).neg(&ambient));
    let frob = if m >= 2 {
        solve_pi_recursion(&ambient, q, m - 1, |n| gp(n + 1, 0))
    } else {
        Vec::new()
    };
    // classical ghost w^{cl}_{fn} over the ambient ring
    let mu = solve_pi_recursion(&ambient, q, m, |n| {
        classical_ghost_poly(base.p, base.f as usize * n, 0)
            .map_coeffs(&ambient, |c| ambient.from_bigint(c))
    });
    // coordinates of π·1: the vector with constant ghost (π, π, …)
    let pi_elt = ambient.uniformizer();
    let pi_coords = {
        let mut coords: Vec<ChainElt> = Vec::with_capacity(m);
        for n in 0..m {
            let mut rest = ambient.zero();
            for (i, zi) in coords.iter().enumerate() {
                let t = ambient.mul(
                    &ambient.pow(&pi_elt, i as u64),
                    &ambient.pow(zi, q.pow((n - i) as u32)),
                );
                rest = ambient.add(&rest, &t);
            }
            let num = ambient.sub(&pi_elt, &rest);
            coords.push(ambient.div_uniformizer_pow(&num, n).expect("π·1 recursion"));
        }
        coords
    };
    let t = RamifiedTable {
        base: base.clone(),
        m,
        ambient,
        sum,
        prod,
        neg,
        frob,
        mu,
        pi_coords,
    };
    cache::store_ramified(&t);
    Arc::new(t)
}

/// Symbolic re-check: compose the ramified ghost polynomials with the
/// structure polynomials and compare with the defining identities over the
/// ambient ring (exact there — all division ambiguities die at the ambient
/// nilpotency level).
pub fn verify_ramified_ghost_identities(t: &RamifiedTable) -> bool {
    let amb = &t.ambient;
    let q = t.base.q();
    let pr = PolyRing(amb.clone());
    let compose = |polys: &[MPoly<ChainRing>], n: usize| -> MPoly<ChainRing> {
        ramified_ghost_poly(amb, q, n, 0).eval_with(
            &pr,
            |c| MPoly::constant(amb, c.clone()),
            &polys[..=n],
        )
    };
    for n in 0..t.m {
        let wa = ramified_ghost_poly(amb, q, n, 0);
        let wb = ramified_ghost_poly(amb, q, n, t.m);
        if compose(&t.sum, n) != wa.add(amb, &wb) {
            return false;
        }
        if compose(&t.prod, n) != wa.mul(amb, &wb) {
            return false;
        }
        if compose(&t.neg, n) != wa.neg(amb) {
            return false;
        }
    }
    for n in 0..t.frob.len() {
        if compose(&t.frob, n) != ramified_ghost_poly(amb, q, n + 1, 0) {
            return false;
        }
    }
    true
}

/// `F_π ≡ (x_0^q, x_1^q, …) mod π`: the Frobenius polynomials collapse to
/// q-th powers over the residue field
pub fn verify_ramified_frobenius_mod_pi(t: &RamifiedTable) -> bool {
    let rf = t.ambient.residue_field();
    for (n, f) in t.frob.iter().enumerate() {
        let reduced = f.map_coeffs(&rf, |c| t.ambient.to_residue(c));
        let expect = MPoly::var(&rf, n).pow(&rf, t.base.q());
        if reduced != expect {
            return false;
        }
    }
    true
}

/// `w_n ∘ μ = w_{fn}`: the comparison transformation matches classical and
/// ramified ghost components. Checked by substituting random ambient ring
/// elements into the exact polynomial identity.
pub fn verify_mu_ghost_random(t: &RamifiedTable, seed: u64, count: usize) -> bool {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let amb = &t.ambient;
    let q = t.base.q();
    let nvars = t.base.f as usize * (t.m - 1) + 1;
    for _ in 0..count {
        let vals: Vec<ChainElt> = (0..nvars).map(|_| amb.random(&mut rng)).collect();
        let mu_vals: Vec<ChainElt> = t
            .mu
            .iter()
            .map(|poly| poly.eval_with(amb, |c| c.clone(), &vals))
            .collect();
        for n in 0..t.m {
            let lhs = ramified_ghost_poly(amb, q, n, 0).eval_with(amb, |c| c.clone(), &mu_vals);
            let rhs = classical_ghost_poly(t.base.p, t.base.f as usize * n, 0)
                .map_coeffs(amb, |c| amb.from_bigint(c))
                .eval_with(amb, |c| c.clone(), &vals);
            if !amb.eq(&lhs, &rhs) {
                return false;
            }
        }
    }
    true
}

/// The ring `W_{O,m}(R)` of length-`m` ramified Witt vectors over a
/// characteristic-p chain ring `R` containing `F_q`, with arithmetic through
/// the structure polynomials reduced mod π.
#[derive(Clone)]
pub struct RamifiedWittRing {
    pub table: Arc<RamifiedTable>,
    pub base: ChainRing,
    sum_r: Vec<MPoly<ChainRing>>,
    prod_r: Vec<MPoly<ChainRing>>,
    neg_r: Vec<MPoly<ChainRing>>,
    frob_r: Vec<MPoly<ChainRing>>,
    mu_r: Vec<MPoly<ChainRing>>,
    pi_elt: Vec<ChainElt>,
}

/// a ramified Witt vector: its coordinate list over the base ring
pub type RWittElt = Vec<ChainElt>;

impl RamifiedWittRing {
    pub fn new(table: Arc<RamifiedTable>, base: ChainRing) -> Self {
        assert_eq!(base.p(), table.base.p);
        assert_eq!(base.gr.s % table.base.f, 0, "base must be an F_q-algebra");
        let amb = table.ambient.clone();
        let reduce = |c: &ChainElt| reduce_coefficient(&amb, &base, c);
        let red_polys =
            |v: &[MPoly<ChainRing>]| -> Vec<MPoly<ChainRing>> { v.iter().map(|p| p.map_coeffs(&base, reduce)).collect() };
        let sum_r = red_polys(&table.sum);
        let prod_r = red_polys(&table.prod);
        let neg_r = red_polys(&table.neg);
        let frob_r = red_polys(&table.frob);
        let mu_r = red_polys(&table.mu);
        let pi_elt = table.pi_coords.iter().map(reduce).collect();
        RamifiedWittRing {
            table,
            base,
            sum_r,
            prod_r,
            neg_r,
            frob_r,
            mu_r,
            pi_elt,
        }
    }

    pub fn depth(&self) -> usize {
        self.table.m
    }

    pub fn zero(&self) -> RWittElt {
        vec![self.base.zero(); self.table.m]
    }

    pub fn one(&self) -> RWittElt {
        self.teichmuller(&self.base.one())
    }

    pub fn teichmuller(&self, x: &ChainElt) -> RWittElt {
        let mut v = self.zero();
        v[0] = x.clone();
        v
    }

    pub fn is_zero(&self, a: &RWittElt) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }

    fn eval_binary(&self, polys: &[MPoly<ChainRing>], a: &RWittElt, b: &RWittElt) -> RWittElt {
        let m = self.table.m;
        assert_eq!(a.len(), m);
        assert_eq!(b.len(), m);
        let mut vals = Vec::with_capacity(2 * m);
        vals.extend_from_slice(a);
        vals.extend_from_slice(b);
        polys
            .iter()
            .map(|q| q.eval_with(&self.base, |c| c.clone(), &vals))
            .collect()
    }

    pub fn add(&self, a: &RWittElt, b: &RWittElt) -> RWittElt {
        self.eval_binary(&self.sum_r, a, b)
    }

    pub fn mul(&self, a: &RWittElt, b: &RWittElt) -> RWittElt {
        self.eval_binary(&self.prod_r, a, b)
    }

    pub fn neg(&self, a: &RWittElt) -> RWittElt {
        assert_eq!(a.len(), self.table.m);
        self.neg_r
            .iter()
            .map(|q| q.eval_with(&self.base, |c| c.clone(), a))
            .collect()
    }

    pub fn sub(&self, a: &RWittElt, b: &RWittElt) -> RWittElt {
        self.add(a, &self.neg(b))
    }

    /// ramified Frobenius `W_{O,m} → W_{O,m-1}`
    pub fn frobenius(&self, a: &RWittElt) -> RWittElt {
        assert_eq!(a.len(), self.table.m);
        self.frob_r
            .iter()
            .map(|q| q.eval_with(&self.base, |c| c.clone(), a))
            .collect()
    }

    /// ramified Verschiebung: shift coordinates in, truncating at length m
    pub fn verschiebung(&self, a: &[ChainElt]) -> RWittElt {
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

    /// multiplication by the scalar π (Witt multiplication by π·1)
    pub fn pi_action(&self, a: &RWittElt) -> RWittElt {
        self.mul(&self.pi_elt, a)
    }

    /// the element π·1 of `W_{O,m}(R)`
    pub fn pi_one(&self) -> RWittElt {
        self.pi_elt.clone()
    }

    /// the comparison transformation from classical Witt coordinates (length
    /// at least `f·(m-1) + 1` over the same base)
    pub fn mu_transform(&self, classical: &[ChainElt]) -> RWittElt {
        let need = self.table.base.f as usize * (self.table.m - 1) + 1;
        assert!(classical.len() >= need, "classical vector too short");
        self.mu_r
            .iter()
            .map(|q| q.eval_with(&self.base, |c| c.clone(), classical))
            .collect()
    }

    pub fn truncate_elt(&self, a: &RWittElt, k: usize) -> RWittElt {
        assert!(k <= self.table.m);
        a[..k].to_vec()
    }

    pub fn enumerate(&self) -> Vec<RWittElt> {
        let base_els = self.base.enumerate();
        let mut out: Vec<RWittElt> = vec![Vec::new()];
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

    pub fn random<R: rand::Rng>(&self, rng: &mut R) -> RWittElt {
        (0..self.table.m).map(|_| self.base.random(rng)).collect()
    }
}

/// reduce an ambient coefficient mod π and embed its residue into the base
fn reduce_coefficient(ambient: &ChainRing, base: &ChainRing, c: &ChainElt) -> ChainElt {
    let rf = ambient.residue_field();
    let res = ambient.to_residue(c);
    let emb = base.gr.embed_from(&rf.gr, &res.coeffs[0]);
    let mut out = base.zero();
    out.coeffs[0] = emb;
    base.canonicalize(out.coeffs)
}

/// On-disk cache for ramified tables (same `WITTFORGE_CACHE_DIR` mechanism
/// as the classical tables).
pub mod cache {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct PolyData(Vec<(String, ChainElt)>);

    fn poly_to_data(p: &MPoly<ChainRing>) -> PolyData {
        let mut keys: Vec<u128> = p.terms.keys().copied().collect();
        keys.sort_unstable();
        PolyData(keys.iter().map(|k| (k.to_string(), p.terms[k].clone())).collect())
    }

    fn poly_from_data(d: &PolyData) -> Option<MPoly<ChainRing>> {
        let mut terms = HashMap::new();
        for (k, c) in &d.0 {
            terms.insert(k.parse::<u128>().ok()?, c.clone());
        }
        Some(MPoly { terms })
    }

    #[derive(Serialize, Deserialize)]
    struct RamifiedTableFile {
        base: BaseDVR,
        m: usize,
        sum: Vec<PolyData>,
        prod: Vec<PolyData>,
        neg: Vec<PolyData>,
        frob: Vec<PolyData>,
        mu: Vec<PolyData>,
        pi_coords: Vec<ChainElt>,
    }

    fn cache_path(base: &BaseDVR, m: usize) -> Option<std::path::PathBuf> {
        let dir = std::env::var_os("WITTFORGE_CACHE_DIR")?;
        let eis_tag: Vec<String> = base.eis.iter().map(|c| c.to_string()).collect();
        Some(std::path::PathBuf::from(dir).join(format!(
            "ramified_p{}e{}f{}_E{}_m{}.json",
            base.p,
            base.e,
            base.f,
            eis_tag.join("_"),
            m
        )))
    }

    pub fn load_ramified(base: &BaseDVR, m: usize) -> Option<RamifiedTable> {
        let path = cache_path(base, m)?;
        let text = std::fs::read_to_string(path).ok()?;
        let f: RamifiedTableFile = serde_json::from_str(&text).ok()?;
        if &f.base != base || f.m != m {
            return None;
        }
        let conv = |v: &Vec<PolyData>| -> Option<Vec<MPoly<ChainRing>>> {
            v.iter().map(poly_from_data).collect()
        };
        Some(RamifiedTable {
            base: base.clone(),
            m,
            ambient: base.ambient(m),
            sum: conv(&f.sum)?,
            prod: conv(&f.prod)?,
            neg: conv(&f.neg)?,
            frob: conv(&f.frob)?,
            mu: conv(&f.mu)?,
            pi_coords: f.pi_coords,
        })
    }

    pub fn store_ramified(t: &RamifiedTable) {
        let Some(path) = cache_path(&t.base, t.m) else {
            return;
        };
        let f = RamifiedTableFile {
            base: t.base.clone(),
            m: t.m,
            sum: t.sum.iter().map(poly_to_data).collect(),
            prod: t.prod.iter().map(poly_to_data).collect(),
            neg: t.neg.iter().map(poly_to_data).collect(),
            frob: t.frob.iter().map(poly_to_data).collect(),
            mu: t.mu.iter().map(poly_to_data).collect(),
            pi_coords: t.pi_coords.clone(),
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

    fn base_311() -> BaseDVR {
        BaseDVR::new(3, 1, 1, vec![-3, 1]) // O = Z_3
    }

    fn base_221() -> BaseDVR {
        BaseDVR::new(2, 2, 1, vec![-2, 0, 1]) // O = Z_2[y]/(y² - 2)
    }

    fn base_312() -> BaseDVR {
        BaseDVR::new(3, 1, 2, vec![-3, 1]) // O = Z_9
    }

    #[test]
    fn unramified_table_matches_classical() {
        // for O = Z_p the ramified construction reproduces the classical one
        let m = 2;
        let t = build_ramified_table(&base_311(), m);
        let tc = crate::witt::build_witt_table(3, m);
        let amb = &t.ambient;
        // quotient quantities in the ambient ring are only determined up to
        // the annihilator of the divisor; below level e·m the ambiguity is
        // gone, so compare there
        let low = amb.reduce_level(m);
        let down = |p: &MPoly<ChainRing>| p.map_coeffs(&low, |c| amb.reduce_elt(&low, c));
        for (rp, cp) in t.sum.iter().zip(&tc.sum) {
            let conv = cp.map_coeffs(&low, |c| low.from_bigint(c));
            assert_eq!(down(rp), conv);
        }
        for (rp, cp) in t.prod.iter().zip(&tc.prod) {
            let conv = cp.map_coeffs(&low, |c| low.from_bigint(c));
            assert_eq!(down(rp), conv);
        }
        // μ is the identity transformation in the unramified f = 1 case
        for (n, poly) in t.mu.iter().enumerate() {
            assert_eq!(down(poly), MPoly::var(&low, n));
        }
    }

    #[test]
    fn ghost_identities_symbolic_small() {
        for (base, m) in [(base_311(), 2usize), (base_221(), 2)] {
            let t = build_ramified_table(&base, m);
            assert!(verify_ramified_ghost_identities(&t), "{:?}", base);
            assert!(verify_ramified_frobenius_mod_pi(&t), "{:?}", base);
        }
    }

    #[test]
    fn mu_ghost_matching_random() {
        let t = build_ramified_table(&base_312(), 2);
        assert!(verify_mu_ghost_random(&t, 11, 10));
    }

    #[test]
    fn ring_axioms_and_pi_w_o2_f2() {
        // W_{O,2}(F_2) for O = Z_2[y]/(y²-2) has 4 elements; π·1 ≠ 0, π² = 0
        let base = base_221();
        let t = build_ramified_table(&base, 2);
        let f2 = ChainRing::equal_char(2, 1, 1, 1);
        let w = RamifiedWittRing::new(t, f2.clone());
        let els = w.enumerate();
        assert_eq!(els.len(), 4);
        let zero = w.zero();
        let one = w.one();
        let pi = w.pi_one();
        assert!(!w.is_zero(&pi));
        assert!(w.is_zero(&w.mul(&pi, &pi)));
        // π·1 = V(1) here: F_π(π·1) = F_π V_π (1) = π·1 ≡ 0 in length 1
        for a in &els {
            assert_eq!(w.add(a, &zero), *a);
            assert_eq!(w.mul(a, &one), *a);
            assert!(w.is_zero(&w.add(a, &w.neg(a))));
            for b in &els {
                assert_eq!(w.add(a, b), w.add(b, a));
                assert_eq!(w.mul(a, b), w.mul(b, a));
            }
        }
    }

    #[test]
    fn frobenius_verschiebung_pi_composites() {
        // F_π V_π = π, and V_π(F_π(x)·y) = x·V_π(y), exhaustively on W_{O,2}(F_4)
        let base = base_221();
        let t = build_ramified_table(&base, 2);
        let f4 = ChainRing::equal_char(2, 2, 1, 1);
        let w = RamifiedWittRing::new(t, f4.clone());
        for a in w.enumerate() {
            let va = w.verschiebung(&a[..1]);
            let fva = w.frobenius(&va); // length 1
            let pia = w.pi_action(&w.truncate_elt(&a, 2));
            assert_eq!(fva, pia[..1].to_vec());
            for b in w.enumerate() {
                // projection formula, compared at length 2 (V of length-1 inputs)
                let fb = w.frobenius(&b);
                let lhs = w.verschiebung(&w.mul(
                    &vec![fb[0].clone(), f4.zero()],
                    &vec![a[0].clone(), f4.zero()],
                )[..1]);
                let va_full = w.verschiebung(&a[..1]);
                let rhs = w.mul(&b, &va_full);
                // V(F(b)·a₀) = b·V(a₀)
                assert_eq!(lhs, rhs, "a={:?} b={:?}", a, b);
            }
        }
    }

    #[test]
    fn mu_preserves_teichmuller() {
        // μ([a]) = [a] exhaustively over F_9 for O = Z_9
        let base = base_312();
        let t = build_ramified_table(&base, 2);
        let f9 = ChainRing::equal_char(3, 2, 1, 1);
        let w = RamifiedWittRing::new(t, f9.clone());
        let tc = crate::witt::build_witt_table(3, 3);
        let wc = crate::witt::WittRing::new(tc, f9.clone());
        for a in f9.enumerate() {
            let cl = wc.teichmuller(&a);
            assert_eq!(w.mu_transform(&cl), w.teichmuller(&a));
        }
        // μ is additive: μ(x + y) = μ(x) + μ(y) on random samples
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = wc.random(&mut rng);
            let y = wc.random(&mut rng);
            let lhs = w.mu_transform(&wc.add(&x, &y));
            let rhs = w.add(&w.mu_transform(&x), &w.mu_transform(&y));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn make_wo_of_k_shapes() {
        // e=2, f=1, n=2, k=F_p: order p² with π ≠ 0, π² = 0
        let base = base_221();
        let r = base.make_wo_of_k(1, 2);
        assert_eq!(r.cardinality(), 4);
        let pi = r.uniformizer();
        assert!(!r.is_zero(&pi));
        assert!(r.is_zero(&r.mul(&pi, &pi)));
        // O = Z_p, n = 2, k = F_p: Z/p²
        let base = base_311();
        let r = base.make_wo_of_k(1, 2);
        assert_eq!(r.cardinality(), 9);
        assert_eq!(r.uniformizer(), r.from_i64(3));
        // O = Z_9, k = F_9: σ = σ₀² = id
        let base = base_312();
        let r = base.make_wo_of_k(2, 2);
        assert_eq!(r.sigma_order(), 1);
        for a in r.enumerate().iter().take(20) {
            assert_eq!(r.sigma(a), *a);
        }
    }
}
