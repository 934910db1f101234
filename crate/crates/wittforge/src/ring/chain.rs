//! Finite chain rings: every coefficient ring in this crate is one of
//!
//! * `W(k)/p^n` — truncated Witt vectors of a finite field (the `e = 1`,
//!   `E(y) = y - p` case below),
//! * `(W(k) ⊗ O)/π^n = GR(p^N, s)[y]/(E(y), y^n)` for an Eisenstein
//!   polynomial `E` of degree `e` (mixed characteristic, ramified), or
//! * `k[u]/u^t` (equal characteristic).
//!
//! Elements are coefficient vectors over a Galois ring. The mixed
//! representation is faithful because the valuations `e·v_p(b_j) + j` of the
//! summands `b_j y^j` are pairwise distinct mod `e`, so
//! `v(Σ b_j y^j) = min_j (e·v_p(b_j) + j)` and the ideal `(y^n)` consists
//! exactly of the vectors with `b_j ∈ p^{⌈(n-j)/e⌉} GR`. Canonical forms
//! reduce `b_j` modulo `p^{⌈(n-j)/e⌉}`, and all operations return canonical
//! elements.

use super::galois::{GaloisRing, GrElt};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainKind {
    /// `GR(p^N, s)[y]/(E(y), y^n)`, `E` monic Eisenstein of degree `e`
    Mixed,
    /// `k[u]/u^n`, `k = F_{p^s}`
    EqualChar,
}

/// An element: coefficient vector over the Galois ring (length `e` for mixed,
/// length `n` for equal characteristic). Always stored in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainElt {
    pub coeffs: Vec<GrElt>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainRing {
    pub kind: ChainKind,
    pub gr: GaloisRing,
    /// ramification index (mixed); 1 for equal characteristic
    pub e: usize,
    /// nilpotency degree of the uniformizer: `u^n = 0`; this is the torsion
    /// level of modules over the ring
    pub n: usize,
    /// mixed only: coefficients `E_0, ..., E_{e-1}` of the monic Eisenstein
    /// polynomial (so `y^e = -Σ E_j y^j`)
    pub eis: Vec<GrElt>,
    /// the distinguished automorphism is `σ_0^{sigma_power}` on Galois-ring
    /// coefficients (σ_0 = Frobenius substitution), fixing the uniformizer
    pub sigma_power: u32,
    /// display name of the uniformizer ("p", "y" or "u")
    pub uniformizer_name: String,
}

impl ChainRing {
    /// Classical truncation `W(k)/p^n`, `k = F_{p^s}` — the Galois ring
    /// `GR(p^n, s)` presented with `E(y) = y - p`, uniformizer `p`.
    pub fn witt_truncation(p: u64, n: usize, s: u32) -> Self {
        let nprec = n as u32 + 1;
        let gr = GaloisRing::new(p, nprec, s);
        let eis = vec![gr.neg(&gr.from_u64(p))];
        ChainRing {
            kind: ChainKind::Mixed,
            gr,
            e: 1,
            n,
            eis,
            sigma_power: 1,
            uniformizer_name: "p".into(),
        }
    }

    /// Mixed ramified quotient `GR(p^N, s)[y]/(E(y), y^n)` with
    /// `N = ⌈n/e⌉ + 1` guard digit. `eis` must be given over `GR(p^N, s)`
    /// already (use [`ChainRing::mixed_from_integer_eisenstein`] for integer
    /// coefficients). `sigma_power` is the exponent `t` with `σ = σ_0^t`.
    pub fn mixed(p: u64, s: u32, e: usize, n: usize, eis: Vec<GrElt>, sigma_power: u32) -> Self {
        assert!(e >= 1 && n >= 1);
        let nprec = (n + e - 1) / e + 1;
        let gr = GaloisRing::new(p, nprec as u32, s);
        assert_eq!(eis.len(), e, "Eisenstein coefficient count");
        // Eisenstein: constant term has p-valuation exactly 1, others >= 1
        assert_eq!(gr.vp(&eis[0]), Some(1), "constant term must have p-valuation 1");
        for c in &eis[1..] {
            assert!(gr.vp(c).map_or(true, |v| v >= 1), "non-constant Eisenstein coefficient must be divisible by p");
        }
        // σ must fix the Eisenstein coefficients so that σ(y) = y is a ring map
        for c in &eis {
            assert_eq!(&gr.frobenius_pow(c, sigma_power as i64), c, "σ does not fix the Eisenstein polynomial");
        }
        ChainRing {
            kind: ChainKind::Mixed,
            gr,
            e,
            n,
            eis,
            sigma_power,
            uniformizer_name: if e == 1 { "p".into() } else { "y".into() },
        }
    }

    /// Mixed quotient with integer Eisenstein coefficients (constant first).
    pub fn mixed_from_integer_eisenstein(
        p: u64,
        s: u32,
        e: usize,
        n: usize,
        eis_int: &[i64],
        sigma_power: u32,
    ) -> Self {
        let nprec = ((n + e - 1) / e + 1) as u32;
        let gr = GaloisRing::new(p, nprec, s);
        let eis = eis_int.iter().map(|&c| gr.from_i64(c)).collect();
        Self::mixed(p, s, e, n, eis, sigma_power)
    }

    /// Equal characteristic `k[u]/u^t`, `k = F_{p^s}`, with `σ = x -> x^{p^{s'}}`
    /// on `k` and `σ(u) = u`.
    pub fn equal_char(p: u64, s: u32, t: usize, sigma_power: u32) -> Self {
        assert!(t >= 1);
        ChainRing {
            kind: ChainKind::EqualChar,
            gr: GaloisRing::new(p, 1, s),
            e: 1,
            n: t,
            eis: vec![],
            sigma_power,
            uniformizer_name: "u".into(),
        }
    }

    pub fn p(&self) -> u64 {
        self.gr.p
    }

    /// number of Galois-ring coefficient slots per element
    pub fn width(&self) -> usize {
        match self.kind {
            ChainKind::Mixed => self.e,
            ChainKind::EqualChar => self.n,
        }
    }

    /// canonical precision exponent of slot `j` (mixed): `⌈(n-j)/e⌉`
    fn slot_prec(&self, j: usize) -> u32 {
        match self.kind {
            ChainKind::Mixed => {
                if j >= self.n {
                    0
                } else {
                    ((self.n - j + self.e - 1) / self.e) as u32
                }
            }
            ChainKind::EqualChar => 1,
        }
    }

    pub fn canonicalize(&self, coeffs: Vec<GrElt>) -> ChainElt {
        let c = coeffs
            .into_iter()
            .enumerate()
            .map(|(j, b)| self.gr.reduce_mod_pk(&b, self.slot_prec(j)))
            .collect();
        ChainElt { coeffs: c }
    }

    pub fn from_gr_coeffs(&self, coeffs: Vec<GrElt>) -> ChainElt {
        assert_eq!(coeffs.len(), self.width());
        self.canonicalize(coeffs)
    }

    pub fn zero(&self) -> ChainElt {
        ChainElt {
            coeffs: vec![self.gr.zero(); self.width()],
        }
    }

    pub fn one(&self) -> ChainElt {
        let mut c = self.zero();
        c.coeffs[0] = self.gr.one();
        self.canonicalize(c.coeffs)
    }

    /// generator of the residue field, as a ring element (Teichmueller-style
    /// coordinate lift)
    pub fn residue_gen(&self) -> ChainElt {
        let mut c = self.zero();
        c.coeffs[0] = self.gr.gen();
        self.canonicalize(c.coeffs)
    }

    pub fn uniformizer(&self) -> ChainElt {
        match self.kind {
            ChainKind::Mixed => {
                if self.e == 1 {
                    // y ≡ -E_0
                    self.canonicalize(vec![self.gr.neg(&self.eis[0])])
                } else {
                    let mut c = vec![self.gr.zero(); self.e];
                    c[1] = self.gr.one();
                    self.canonicalize(c)
                }
            }
            ChainKind::EqualChar => {
                let mut c = vec![self.gr.zero(); self.n];
                if self.n > 1 {
                    c[1] = self.gr.one();
                }
                self.canonicalize(c)
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> ChainElt {
        let mut c = self.zero();
        c.coeffs[0] = match self.kind {
            ChainKind::Mixed => self.gr.from_i64(v),
            ChainKind::EqualChar => self.gr.from_i64(v),
        };
        self.canonicalize(c.coeffs)
    }

    pub fn from_bigint(&self, v: &BigInt) -> ChainElt {
        let m = BigInt::from(self.gr.pn);
        let r = ((v % &m) + &m) % &m;
        self.from_i64(r.to_i64().expect("reduced value fits"))
    }

    pub fn is_zero(&self, a: &ChainElt) -> bool {
        a.coeffs.iter().all(|c| self.gr.is_zero(c))
    }

    pub fn eq(&self, a: &ChainElt, b: &ChainElt) -> bool {
        a == b
    }

    pub fn add(&self, a: &ChainElt, b: &ChainElt) -> ChainElt {
        let c = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| self.gr.add(x, y))
            .collect();
        self.canonicalize(c)
    }

    pub fn sub(&self, a: &ChainElt, b: &ChainElt) -> ChainElt {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &ChainElt) -> ChainElt {
        self.canonicalize(a.coeffs.iter().map(|x| self.gr.neg(x)).collect())
    }

    pub fn mul(&self, a: &ChainElt, b: &ChainElt) -> ChainElt {
        let w = self.width();
        // raw polynomial product in y (resp. u)
        let mut prod = vec![self.gr.zero(); 2 * w];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.gr.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.gr.mul(x, y);
                prod[i + j] = self.gr.add(&prod[i + j], &t);
            }
        }
        match self.kind {
            ChainKind::EqualChar => {
                prod.truncate(w);
                self.canonicalize(prod)
            }
            ChainKind::Mixed => {
                // reduce modulo the monic Eisenstein polynomial: y^e = -Σ E_j y^j
                for i in (self.e..2 * self.e).rev() {
                    let c = prod[i].clone();
                    if self.gr.is_zero(&c) {
                        continue;
                    }
                    prod[i] = self.gr.zero();
                    for j in 0..self.e {
                        let t = self.gr.mul(&c, &self.eis[j]);
                        prod[i - self.e + j] = self.gr.sub(&prod[i - self.e + j], &t);
                    }
                }
                prod.truncate(self.e);
                self.canonicalize(prod)
            }
        }
    }

    pub fn pow(&self, a: &ChainElt, e: u64) -> ChainElt {
        let mut r = self.one();
        let mut b = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// uniformizer-adic valuation in `[0, n]` (`n` means zero)
    pub fn valuation(&self, a: &ChainElt) -> usize {
        match self.kind {
            ChainKind::EqualChar => {
                for (j, c) in a.coeffs.iter().enumerate() {
                    if !self.gr.is_zero(c) {
                        return j;
                    }
                }
                self.n
            }
            ChainKind::Mixed => {
                let mut v = self.n;
                for (j, c) in a.coeffs.iter().enumerate() {
                    if let Some(vp) = self.gr.vp(c) {
                        v = v.min(self.e * vp as usize + j);
                    }
                }
                v
            }
        }
    }

    pub fn is_unit(&self, a: &ChainElt) -> bool {
        self.valuation(a) == 0
    }

    /// Exact division by the uniformizer. The result is one deterministic
    /// preimage (division in a truncated ring is ambiguous modulo the
    /// annihilator of the uniformizer). Returns `None` when the valuation
    /// is 0.
    pub fn div_uniformizer(&self, a: &ChainElt) -> Option<ChainElt> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if self.valuation(a) == 0 {
            return None;
        }
        match self.kind {
            ChainKind::EqualChar => {
                let mut c = a.coeffs[1..].to_vec();
                c.push(self.gr.zero());
                Some(self.canonicalize(c))
            }
            ChainKind::Mixed => {
                // y·w = -w_{e-1} E_0 + Σ_{j>=1} (w_{j-1} - w_{e-1} E_j) y^j
                // so w_{e-1} = -b_0/(p·u_0) with E_0 = p·u_0, and
                // w_{j-1} = b_j + w_{e-1} E_j.
                let u0 = self.gr.div_p_exact(&self.eis[0]);
                let u0inv = self.gr.inv(&u0);
                let b0 = &a.coeffs[0];
                assert_eq!(
                    b0.iter().map(|&c| c % self.gr.p).max(),
                    Some(0),
                    "inexact division by uniformizer"
                );
                let w_top = self.gr.neg(&self.gr.mul(&self.gr.div_p_exact(b0), &u0inv));
                let mut w = vec![self.gr.zero(); self.e];
                w[self.e - 1] = w_top.clone();
                for j in 1..self.e {
                    w[j - 1] = self.gr.add(&a.coeffs[j], &self.gr.mul(&w_top, &self.eis[j]));
                }
                Some(self.canonicalize(w))
            }
        }
    }

    /// Exact division by `uniformizer^k`.
    pub fn div_uniformizer_pow(&self, a: &ChainElt, k: usize) -> Option<ChainElt> {
        let mut r = a.clone();
        for _ in 0..k {
            r = self.div_uniformizer(&r)?;
        }
        Some(r)
    }

    /// Inverse of a unit: residue-field inverse + Newton iteration.
    pub fn inv(&self, a: &ChainElt) -> ChainElt {
        assert!(self.is_unit(a), "not a unit in chain ring");
        let mut z = self.zero();
        z.coeffs[0] = self.gr.inv(&a.coeffs[0]);
        let mut z = self.canonicalize(z.coeffs);
        let two = self.from_i64(2);
        for _ in 0..64 {
            let az = self.mul(a, &z);
            if az == self.one() {
                return z;
            }
            z = self.mul(&z, &self.sub(&two, &az));
        }
        assert_eq!(self.mul(a, &z), self.one(), "Newton inversion failed");
        z
    }

    /// order of the distinguished automorphism
    pub fn sigma_order(&self) -> u32 {
        let s = self.gr.s;
        let t = self.sigma_power % s;
        if t == 0 {
            1
        } else {
            s / gcd_u32(s, t)
        }
    }

    /// `σ^k` (k may be negative; σ has finite order)
    pub fn sigma_pow(&self, a: &ChainElt, k: i64) -> ChainElt {
        let step = self.sigma_power as i64;
        let c = a
            .coeffs
            .iter()
            .map(|x| self.gr.frobenius_pow(x, step * k))
            .collect();
        self.canonicalize(c)
    }

    pub fn sigma(&self, a: &ChainElt) -> ChainElt {
        self.sigma_pow(a, 1)
    }

    /// The residue field as a chain ring (`k[u]/u^1`), with the induced σ.
    pub fn residue_field(&self) -> ChainRing {
        ChainRing::equal_char(self.gr.p, self.gr.s, 1, self.sigma_power)
    }

    /// image in the residue field
    pub fn to_residue(&self, a: &ChainElt) -> ChainElt {
        let rf = self.residue_field();
        rf.canonicalize(vec![self.gr.residue(&a.coeffs[0])])
    }

    /// coordinate lift of a residue-field element
    pub fn lift_residue(&self, a: &ChainElt) -> ChainElt {
        let mut c = self.zero();
        c.coeffs[0] = a.coeffs[0].clone();
        self.canonicalize(c.coeffs)
    }

    /// The same ring truncated to level `m <= n`, plus nothing else changed.
    pub fn reduce_level(&self, m: usize) -> ChainRing {
        assert!(m <= self.n && m >= 1);
        match self.kind {
            ChainKind::EqualChar => ChainRing::equal_char(self.gr.p, self.gr.s, m, self.sigma_power),
            ChainKind::Mixed => {
                let nprec = ((m + self.e - 1) / self.e + 1) as u32;
                let eis = self
                    .eis
                    .iter()
                    .map(|c| self.gr.reduce_mod_pk(c, nprec))
                    .collect();
                ChainRing::mixed(self.gr.p, self.gr.s, self.e, m, eis, self.sigma_power)
            }
        }
    }

    /// reduction map onto `reduce_level(m)`
    pub fn reduce_elt(&self, target: &ChainRing, a: &ChainElt) -> ChainElt {
        match self.kind {
            ChainKind::EqualChar => {
                target.canonicalize(a.coeffs[..target.n].to_vec())
            }
            ChainKind::Mixed => {
                let c = a
                    .coeffs
                    .iter()
                    .map(|b| target.gr.reduce_mod_pk(&b.iter().map(|&x| x % target.gr.pn).collect(), target.gr.nprec))
                    .collect();
                target.canonicalize(c)
            }
        }
    }

    /// canonical lift along `reduce_level` (coordinatewise)
    pub fn lift_elt(&self, source: &ChainRing, a: &ChainElt) -> ChainElt {
        match self.kind {
            ChainKind::EqualChar => {
                let mut c = a.coeffs.clone();
                c.resize(self.n, self.gr.zero());
                self.canonicalize(c)
            }
            ChainKind::Mixed => {
                let _ = source;
                self.canonicalize(a.coeffs.clone())
            }
        }
    }

    /// all elements, in a deterministic order
    pub fn enumerate(&self) -> Vec<ChainElt> {
        let mut out = vec![self.zero()];
        for j in 0..self.width() {
            let slot_vals = self.gr.enumerate_mod_pk(self.slot_prec(j));
            let mut next = Vec::with_capacity(out.len() * slot_vals.len());
            for base in &out {
                for v in &slot_vals {
                    let mut c = base.coeffs.clone();
                    c[j] = v.clone();
                    next.push(ChainElt { coeffs: c });
                }
            }
            out = next;
        }
        out
    }

    pub fn cardinality(&self) -> u64 {
        let q = self.gr.p.pow(self.gr.s);
        q.pow(self.n as u32)
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> ChainElt {
        let c = (0..self.width())
            .map(|j| {
                let m = self.gr.p.pow(self.slot_prec(j));
                (0..self.gr.s as usize).map(|_| rng.gen_range(0..m.max(1))).collect()
            })
            .collect();
        self.canonicalize(c)
    }

    /// Structural compatibility (same presentation).
    pub fn same_ring(&self, other: &ChainRing) -> bool {
        self.kind == other.kind
            && self.gr.p == other.gr.p
            && self.gr.s == other.gr.s
            && self.e == other.e
            && self.n == other.n
            && self.eis == other.eis
            && self.sigma_power == other.sigma_power
    }

    /// Render an element as a polynomial expression in the named generators
    /// (`z` for the residue generator, `y`/`u`/`p` for the uniformizer slot).
    pub fn fmt_elt(&self, a: &ChainElt) -> String {
        let uni = &self.uniformizer_name;
        let mut parts: Vec<String> = Vec::new();
        for (j, b) in a.coeffs.iter().enumerate() {
            if self.gr.is_zero(b) {
                continue;
            }
            let coeff = fmt_gr(b);
            let part = if j == 0 {
                coeff
            } else if j == 1 {
                format!("({})*{}", coeff, uni)
            } else {
                format!("({})*{}^{}", coeff, uni, j)
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn fmt_gr(b: &GrElt) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, &c) in b.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let part = if i == 0 {
            format!("{}", c)
        } else if i == 1 {
            if c == 1 { "z".into() } else { format!("{}*z", c) }
        } else if c == 1 {
            format!("z^{}", i)
        } else {
            format!("{}*z^{}", c, i)
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_p2_via_witt_truncation() {
        // W(F_p)/p^2 = Z/p^2
        let r = ChainRing::witt_truncation(3, 2, 1);
        assert_eq!(r.cardinality(), 9);
        let p = r.uniformizer();
        assert_eq!(p, r.from_i64(3));
        assert!(!r.is_zero(&p));
        assert_eq!(r.valuation(&r.mul(&p, &p)), 2); // p^2 = 0 at level 2
        assert!(r.is_zero(&r.pow(&p, 2)));
        let a = r.from_i64(4);
        assert_eq!(r.mul(&a, &r.inv(&a)), r.one());
    }

    #[test]
    fn eisenstein_quotient_order_p2_with_nonzero_pi() {
        // O = Z_2[y]/(y^2 - 2), n = 2, k = F_2: ring of order 4 with π^2 = 0, π != 0
        let r = ChainRing::mixed_from_integer_eisenstein(2, 1, 2, 2, &[-2, 0], 1);
        assert_eq!(r.cardinality(), 4);
        let pi = r.uniformizer();
        assert!(!r.is_zero(&pi));
        assert!(r.is_zero(&r.mul(&pi, &pi)));
        assert_eq!(r.valuation(&pi), 1);
        // p = -E_0·(unit) = π^2·unit = 0 at level 2
        assert!(r.is_zero(&r.from_i64(2)));
        assert_eq!(r.enumerate().len(), 4);
    }

    #[test]
    fn eisenstein_level3_division() {
        // O = Z_3[y]/(y^2 - 3), n = 3
        let r = ChainRing::mixed_from_integer_eisenstein(3, 1, 2, 3, &[-3, 0], 1);
        assert_eq!(r.cardinality(), 27);
        let pi = r.uniformizer();
        let pi2 = r.mul(&pi, &pi);
        assert_eq!(r.valuation(&pi2), 2);
        // π^2 = 3 in this presentation
        assert_eq!(pi2, r.from_i64(3));
        let q = r.div_uniformizer(&pi2).unwrap();
        assert_eq!(r.mul(&q, &pi), pi2);
        assert_eq!(q, pi);
        // every element is unit · π^v
        for a in r.enumerate() {
            if r.is_zero(&a) {
                continue;
            }
            let v = r.valuation(&a);
            let u = r.div_uniformizer_pow(&a, v).unwrap();
            assert!(r.is_unit(&u), "unit part of {:?}", a);
            assert_eq!(r.mul(&u, &r.pow(&pi, v as u64)), a);
        }
    }

    #[test]
    fn w2_f4_sigma_and_units() {
        let r = ChainRing::witt_truncation(2, 2, 2);
        assert_eq!(r.cardinality(), 16);
        assert_eq!(r.sigma_order(), 2);
        let els = r.enumerate();
        assert_eq!(els.len(), 16);
        for a in &els {
            // σ is a ring hom of order 2
            assert_eq!(r.sigma_pow(a, 2), *a);
            for b in &els {
                assert_eq!(r.sigma(&r.mul(a, b)), r.mul(&r.sigma(a), &r.sigma(b)));
            }
            if r.is_unit(a) {
                assert_eq!(r.mul(a, &r.inv(a)), r.one());
            }
        }
    }

    #[test]
    fn equal_char_dual_numbers() {
        let r = ChainRing::equal_char(3, 1, 2, 1); // F_3[u]/u^2
        assert_eq!(r.cardinality(), 9);
        let u = r.uniformizer();
        assert!(r.is_zero(&r.mul(&u, &u)));
        assert!(r.is_zero(&r.from_i64(3)));
        let a = r.add(&r.one(), &u); // 1 + u is a unit
        assert_eq!(r.mul(&a, &r.inv(&a)), r.one());
    }

    #[test]
    fn level_reduction_is_ring_hom() {
        let r = ChainRing::witt_truncation(3, 3, 1); // Z/27
        let r2 = r.reduce_level(2); // Z/9
        let els = r.enumerate();
        for a in &els {
            for b in &els {
                let lhs = r.reduce_elt(&r2, &r.mul(a, b));
                let rhs = r2.mul(&r.reduce_elt(&r2, a), &r.reduce_elt(&r2, b));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
