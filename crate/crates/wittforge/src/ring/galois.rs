//! Galois rings `GR(p^N, s) = (Z/p^N)[z]/(g)`, where `g` is the Hensel lift of
//! the minimal polynomial of a primitive element of `F_{p^s}`.
//!
//! Because `g` divides `z^{p^s - 1} - 1` exactly, the generator `z` is a
//! Teichmueller element of multiplicative order `p^s - 1`, and the Frobenius
//! automorphism is the substitution `z -> z^p`.

use serde::{Deserialize, Serialize};

/// An element of `GR(p^N, s)`: coefficients of `1, z, ..., z^{s-1}`, each
/// reduced modulo `p^N`.
pub type GrElt = Vec<u64>;

/// The ring `GR(p^N, s)`. All coefficient arithmetic is modulo `p^N < 2^63`,
/// with intermediate products in `u128`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GaloisRing {
    pub p: u64,
    /// precision exponent: coefficients live in `Z/p^N`
    pub nprec: u32,
    /// residue degree: residue field `F_{p^s}`
    pub s: u32,
    /// `p^N`
    pub pn: u64,
    /// monic modulus `g(z)` of degree `s`; `modulus[i]` is the coefficient of
    /// `z^i`, `modulus[s] = 1`
    pub modulus: Vec<u64>,
    /// images of `1, z, ..., z^{s-1}` under `z -> z^p` (the Frobenius matrix)
    frob_images: Vec<GrElt>,
}

fn pow_u64(base: u64, exp: u32) -> u64 {
    let mut r: u64 = 1;
    for _ in 0..exp {
        r = r.checked_mul(base).expect("modulus overflow");
    }
    r
}

// ---- dense polynomial helpers over Z/m (m = p^k), lowest degree first ----

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_add(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        r[i] = (x + y) % m;
    }
    poly_trim(&mut r);
    r
}

fn poly_sub(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        r[i] = (x + m - y) % m;
    }
    poly_trim(&mut r);
    r
}

fn poly_mul(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let prod = (x as u128 * y as u128 + r[i + j] as u128) % m as u128;
            r[i + j] = prod as u64;
        }
    }
    poly_trim(&mut r);
    r
}

fn poly_scale(a: &[u64], c: u64, m: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.iter().map(|&x| ((x as u128 * c as u128) % m as u128) as u64).collect();
    poly_trim(&mut r);
    r
}

/// Division with remainder by a *monic* divisor.
fn poly_divmod_monic(a: &[u64], d: &[u64], m: u64) -> (Vec<u64>, Vec<u64>) {
    assert_eq!(*d.last().unwrap(), 1, "divisor must be monic");
    let mut rem: Vec<u64> = a.to_vec();
    poly_trim(&mut rem);
    let dd = d.len() - 1;
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let mut quo = vec![0u64; rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quo[i - dd] = c;
        for j in 0..=dd {
            let sub = (c as u128 * d[j] as u128) % m as u128;
            rem[i - dd + j] = ((rem[i - dd + j] as u128 + m as u128 - sub) % m as u128) as u64;
        }
    }
    poly_trim(&mut rem);
    poly_trim(&mut quo);
    (quo, rem)
}

fn mod_inv_prime(a: u64, p: u64) -> u64 {
    // Fermat inverse in F_p.
    let mut r: u64 = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Extended Euclid over F_p[z]: returns (gcd, u, v) with u*a + v*b = gcd,
/// gcd monic.
fn poly_ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut u0, mut u1) = (vec![1u64], vec![]);
    let (mut v0, mut v1) = (vec![], vec![1u64]);
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    while !r1.is_empty() {
        // make r1 monic for the monic divmod, then undo the scaling
        let lead = *r1.last().unwrap();
        let linv = mod_inv_prime(lead, p);
        let r1m = poly_scale(&r1, linv, p);
        let (q, rem) = poly_divmod_monic(&r0, &r1m, p);
        // r0 = q' * r1 + rem with q' = q * linv
        let qs = poly_scale(&q, linv, p);
        let nu = poly_sub(&u0, &poly_mul(&qs, &u1, p), p);
        let nv = poly_sub(&v0, &poly_mul(&qs, &v1, p), p);
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = nu;
        v0 = v1;
        v1 = nv;
    }
    // normalize gcd to monic
    let lead = *r0.last().expect("zero gcd");
    let linv = mod_inv_prime(lead, p);
    (
        poly_scale(&r0, linv, p),
        poly_scale(&u0, linv, p),
        poly_scale(&v0, linv, p),
    )
}

/// `z^e mod g` over `Z/m`.
fn poly_powmod_z(e: u64, g: &[u64], m: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = vec![0u64, 1]; // z
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            let prod = poly_mul(&result, &base, m);
            result = poly_divmod_monic(&prod, g, m).1;
        }
        let sq = poly_mul(&base, &base, m);
        base = poly_divmod_monic(&sq, g, m).1;
        e >>= 1;
    }
    result
}

fn is_irreducible(g: &[u64], p: u64, s: u32) -> bool {
    // z^{p^s} == z mod g, and z^{p^{s/t}} != z for prime divisors t of s.
    let q = |k: u32| -> u64 { pow_u64(p, k) };
    let frob_k = |k: u32| -> Vec<u64> {
        // z^{p^k} mod g by repeated p-th powering of z
        let mut cur = vec![0u64, 1];
        for _ in 0..k {
            let mut acc = vec![1u64];
            // cur^p mod g
            let mut e = p;
            let mut b = cur.clone();
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_divmod_monic(&poly_mul(&acc, &b, p), g, p).1;
                }
                b = poly_divmod_monic(&poly_mul(&b, &b, p), g, p).1;
                e >>= 1;
            }
            cur = acc;
        }
        cur
    };
    let _ = q;
    let z = vec![0u64, 1];
    if frob_k(s) != z {
        return false;
    }
    let mut t = 2u32;
    let mut rem = s;
    while t <= rem {
        if rem % t == 0 {
            if frob_k(s / t) == z {
                return false;
            }
            while rem % t == 0 {
                rem /= t;
            }
        }
        t += 1;
    }
    true
}

fn is_primitive_root(g: &[u64], p: u64, s: u32) -> bool {
    // z generates F_{p^s}^*: z^{(p^s-1)/l} != 1 for every prime l | p^s - 1.
    let order = pow_u64(p, s) - 1;
    let mut n = order;
    let mut l = 2u64;
    while l * l <= n {
        if n % l == 0 {
            if poly_powmod_z(order / l, g, p) == vec![1u64] {
                return false;
            }
            while n % l == 0 {
                n /= l;
            }
        }
        l += 1;
    }
    if n > 1 && poly_powmod_z(order / n, g, p) == vec![1u64] {
        return false;
    }
    true
}

/// Deterministic generator convention: the first monic irreducible polynomial
/// of degree `s` over `F_p`, in lexicographic order of the coefficient vector
/// `(c_0, ..., c_{s-1})`, whose root generates the multiplicative group.
fn primitive_polynomial(p: u64, s: u32) -> Vec<u64> {
    assert!(s >= 2);
    let su = s as usize;
    let total = pow_u64(p, s);
    for idx in 0..total {
        // lex order on (c_0,...,c_{s-1}): c_0 is the most significant digit
        let mut g = vec![0u64; su + 1];
        g[su] = 1;
        for (i, slot) in g[..su].iter_mut().enumerate() {
            let mut r = idx;
            for _ in 0..(su - 1 - i) {
                r /= p;
            }
            *slot = r % p;
        }
        if g[0] == 0 {
            continue; // reducible: z divides
        }
        if is_irreducible(&g, p, s) && is_primitive_root(&g, p, s) {
            return g;
        }
    }
    unreachable!("no primitive polynomial found");
}

/// Hensel-lift the factor `gbar` of `z^{p^s-1} - 1` from `Z/p` to `Z/p^N`.
fn hensel_lift_factor(gbar: &[u64], p: u64, s: u32, nprec: u32) -> Vec<u64> {
    let order = pow_u64(p, s) - 1;
    let pn = pow_u64(p, nprec);
    // f = z^order - 1 over Z/p^N
    let mut f = vec![0u64; order as usize + 1];
    f[0] = pn - 1;
    f[order as usize] = 1;
    // cofactor and Bezout data mod p
    let fbar: Vec<u64> = f.iter().map(|&c| c % p).collect();
    let (hbar, rem) = poly_divmod_monic(&fbar, gbar, p);
    assert!(rem.is_empty(), "gbar must divide z^(p^s-1)-1 mod p");
    let (gcd, a, b) = poly_ext_gcd(gbar, &hbar, p);
    assert_eq!(gcd, vec![1u64], "factors not coprime mod p");
    // linear lifting: after step k, f == g*h mod p^{k+1}
    let mut g: Vec<u64> = gbar.to_vec();
    let mut h: Vec<u64> = hbar.clone();
    let mut pk: u64 = p;
    for _ in 1..nprec {
        let prod = poly_mul(&g, &h, pn);
        let diff = poly_sub(&f, &prod, pn);
        // delta = diff / p^k mod p
        let delta: Vec<u64> = diff.iter().map(|&c| {
            debug_assert_eq!(c % pk, 0, "lifting defect not divisible by p^k");
            (c / pk) % p
        }).collect();
        let mut delta = delta;
        poly_trim(&mut delta);
        // solve u*hbar + v*gbar = delta mod p with deg u < s
        let bd = poly_mul(&b, &delta, p);
        let (q, u) = poly_divmod_monic(&bd, gbar, p);
        let v = poly_add(&poly_mul(&a, &delta, p), &poly_mul(&q, &hbar, p), p);
        // g += p^k * u ; h += p^k * v
        g = poly_add(&g, &poly_scale(&u, pk % pn, pn), pn);
        h = poly_add(&h, &poly_scale(&v, pk % pn, pn), pn);
        pk = pk.checked_mul(p).unwrap();
    }
    let check = poly_mul(&g, &h, pn);
    assert_eq!(check, f, "Hensel lift failed");
    let mut g = g;
    if g.len() < s as usize + 1 {
        g.resize(s as usize + 1, 0);
    }
    assert_eq!(g[s as usize], 1, "lifted factor not monic");
    g
}

impl GaloisRing {
    /// Construct `GR(p^N, s)`.
    pub fn new(p: u64, nprec: u32, s: u32) -> Self {
        assert!(p >= 2 && nprec >= 1 && s >= 1);
        let pn = pow_u64(p, nprec);
        assert!(pn < (1u64 << 62), "precision too large for u64 arithmetic");
        if s == 1 {
            // Z/p^N with trivial generator; modulus z - 1 keeps degree bookkeeping uniform
            return GaloisRing {
                p,
                nprec,
                s,
                pn,
                modulus: vec![pn - 1, 1],
                frob_images: vec![vec![1]],
            };
        }
        let gbar = primitive_polynomial(p, s);
        let modulus = hensel_lift_factor(&gbar, p, s, nprec);
        let mut ring = GaloisRing {
            p,
            nprec,
            s,
            pn,
            modulus,
            frob_images: vec![],
        };
        // Frobenius substitution matrix: images of z^j under z -> z^p
        let zp = poly_powmod_z(p, &ring.modulus, pn);
        let mut images = Vec::with_capacity(s as usize);
        let mut cur = vec![1u64]; // (z^p)^0
        for _ in 0..s {
            images.push(ring.pad(&cur));
            let prod = poly_mul(&cur, &zp, pn);
            cur = poly_divmod_monic(&prod, &ring.modulus, pn).1;
        }
        ring.frob_images = images;
        ring
    }

    fn pad(&self, a: &[u64]) -> GrElt {
        let mut v = a.to_vec();
        v.resize(self.s as usize, 0);
        v
    }

    pub fn zero(&self) -> GrElt {
        vec![0; self.s as usize]
    }

    pub fn one(&self) -> GrElt {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    /// The generator `z` (for `s = 1`: the element 1).
    pub fn gen(&self) -> GrElt {
        if self.s == 1 {
            return self.one();
        }
        let mut v = self.zero();
        v[1] = 1;
        v
    }

    pub fn from_u64(&self, c: u64) -> GrElt {
        let mut v = self.zero();
        v[0] = c % self.pn;
        v
    }

    pub fn from_i64(&self, c: i64) -> GrElt {
        let m = self.pn as i128;
        let r = ((c as i128 % m) + m) % m;
        self.from_u64(r as u64)
    }

    pub fn is_zero(&self, a: &GrElt) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &GrElt, b: &GrElt) -> GrElt {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.pn).collect()
    }

    pub fn sub(&self, a: &GrElt, b: &GrElt) -> GrElt {
        a.iter().zip(b).map(|(&x, &y)| (x + self.pn - y) % self.pn).collect()
    }

    pub fn neg(&self, a: &GrElt) -> GrElt {
        a.iter().map(|&x| (self.pn - x) % self.pn).collect()
    }

    pub fn mul(&self, a: &GrElt, b: &GrElt) -> GrElt {
        let prod = poly_mul(a, b, self.pn);
        let rem = poly_divmod_monic(&prod, &self.modulus, self.pn).1;
        self.pad(&rem)
    }

    pub fn scale(&self, a: &GrElt, c: u64) -> GrElt {
        a.iter().map(|&x| ((x as u128 * c as u128) % self.pn as u128) as u64).collect()
    }

    pub fn pow(&self, a: &GrElt, e: u64) -> GrElt {
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

    /// `p`-adic valuation of an element, `None` for 0 (meaning >= N).
    pub fn vp(&self, a: &GrElt) -> Option<u32> {
        if self.is_zero(a) {
            return None;
        }
        let mut v = self.nprec;
        for &c in a {
            if c == 0 {
                continue;
            }
            let mut cv = 0u32;
            let mut cc = c;
            while cc % self.p == 0 {
                cc /= self.p;
                cv += 1;
            }
            v = v.min(cv);
        }
        Some(v)
    }

    /// Exact division by `p`; panics if some coefficient is not divisible.
    pub fn div_p_exact(&self, a: &GrElt) -> GrElt {
        a.iter().map(|&c| {
            assert_eq!(c % self.p, 0, "inexact division by p in Galois ring");
            c / self.p
        }).collect()
    }

    /// Frobenius `z -> z^p`, acting as the identity on `Z/p^N`.
    pub fn frobenius(&self, a: &GrElt) -> GrElt {
        let mut r = self.zero();
        for (j, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let img = self.scale(&self.frob_images[j], c);
            r = self.add(&r, &img);
        }
        r
    }

    /// `frobenius` iterated `k` times (reduced modulo the order `s`).
    pub fn frobenius_pow(&self, a: &GrElt, k: i64) -> GrElt {
        let s = self.s as i64;
        let k = ((k % s) + s) % s;
        let mut r = a.clone();
        for _ in 0..k {
            r = self.frobenius(&r);
        }
        r
    }

    /// Reduce modulo `p^k` (for canonical forms at lower precision).
    pub fn reduce_mod_pk(&self, a: &GrElt, k: u32) -> GrElt {
        if k >= self.nprec {
            return a.clone();
        }
        let m = pow_u64(self.p, k);
        a.iter().map(|&c| c % m).collect()
    }

    /// Residue-field image (coefficients mod p), as an element of `GR(p, s)`.
    pub fn residue(&self, a: &GrElt) -> GrElt {
        a.iter().map(|&c| c % self.p).collect()
    }

    /// Inverse of a unit (an element whose residue is nonzero), via the
    /// residue-field inverse followed by Newton iteration.
    pub fn inv(&self, a: &GrElt) -> GrElt {
        let abar = self.residue(a);
        assert!(!self.is_zero(&abar), "not a unit in Galois ring");
        // residue-field inverse via extended Euclid over F_p[z]
        let gbar: Vec<u64> = self.modulus.iter().map(|&c| c % self.p).collect();
        let mut apoly = abar.clone();
        poly_trim(&mut apoly);
        let (gcd, u, _) = poly_ext_gcd(&apoly, &gbar, self.p);
        assert_eq!(gcd, vec![1u64], "residue not invertible");
        let mut z = self.pad(&poly_divmod_monic(&u, &gbar, self.p).1);
        // Newton: z <- z(2 - az); precision doubles each step
        let two = self.from_u64(2);
        for _ in 0..(64 - (self.nprec as u64).leading_zeros() + 2) {
            let az = self.mul(a, &z);
            z = self.mul(&z, &self.sub(&two, &az));
        }
        assert_eq!(self.mul(a, &z), self.one(), "Newton inversion failed");
        z
    }

    /// Teichmueller lift: the unique root of unity (or 0) congruent to `a`
    /// modulo `p`, computed by iterating `x -> x^{p^s}`.
    pub fn teichmuller(&self, a: &GrElt) -> GrElt {
        let ps = pow_u64(self.p, self.s);
        let mut x = a.clone();
        for _ in 0..(2 * self.nprec) {
            x = self.pow(&x, ps);
        }
        debug_assert_eq!(self.pow(&x, ps), x);
        x
    }

    /// Enumerate all `p^{ks}` elements whose coefficients lie in `[0, p^k)`.
    pub fn enumerate_mod_pk(&self, k: u32) -> Vec<GrElt> {
        let m = pow_u64(self.p, k);
        let total = m.checked_pow(self.s).expect("enumeration too large");
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            let mut v = self.zero();
            let mut rest = idx;
            for slot in v.iter_mut() {
                *slot = rest % m;
                rest /= m;
            }
            out.push(v);
        }
        out
    }

    /// Embedding `GR(p^N, f) -> GR(p^N, s)` for `f | s`, sending the source
    /// generator to the first Teichmueller power that is a root of the source
    /// modulus.
    pub fn embed_from(&self, src: &GaloisRing, a: &GrElt) -> GrElt {
        assert_eq!(self.p, src.p);
        assert_eq!(self.nprec, src.nprec);
        assert_eq!(self.s % src.s, 0, "no embedding: residue degree must divide");
        if src.s == 1 {
            return self.from_u64(a[0]);
        }
        if src.s == self.s && src.modulus == self.modulus {
            return a.clone();
        }
        let w = self.find_subfield_generator(src);
        let mut r = self.zero();
        let mut wpow = self.one();
        for &c in a {
            r = self.add(&r, &self.scale(&wpow, c));
            wpow = self.mul(&wpow, &w);
        }
        r
    }

    fn find_subfield_generator(&self, src: &GaloisRing) -> GrElt {
        // candidates: Teichmueller elements of order dividing p^f - 1
        let big = pow_u64(self.p, self.s) - 1;
        let small = pow_u64(self.p, src.s) - 1;
        let w0 = self.pow(&self.gen(), big / small);
        let mut cand = self.one();
        for _ in 0..small {
            cand = self.mul(&cand, &w0);
            // evaluate src.modulus at cand
            let mut val = self.zero();
            let mut cpow = self.one();
            for &c in &src.modulus {
                val = self.add(&val, &self.scale(&cpow, c));
                cpow = self.mul(&cpow, &cand);
            }
            if self.is_zero(&val) {
                return cand;
            }
        }
        panic!("no root of subfield modulus found");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zp2_arithmetic() {
        let r = GaloisRing::new(3, 2, 1);
        assert_eq!(r.pn, 9);
        let a = r.from_u64(7);
        let b = r.from_u64(5);
        assert_eq!(r.add(&a, &b), r.from_u64(3));
        assert_eq!(r.mul(&a, &b), r.from_u64(8));
        assert_eq!(r.mul(&a, &r.inv(&a)), r.one());
    }

    #[test]
    fn gr4_2_is_w2_f4() {
        // GR(2^2, 2): the Witt ring W_2(F_4), order 16, generator of order 3
        let r = GaloisRing::new(2, 2, 2);
        let z = r.gen();
        assert_eq!(r.pow(&z, 3), r.one());
        assert!(r.pow(&z, 1) != r.one());
        // Frobenius squared is the identity
        for a in r.enumerate_mod_pk(2) {
            assert_eq!(r.frobenius(&r.frobenius(&a)), a);
        }
        // Frobenius is a ring hom
        let els = r.enumerate_mod_pk(2);
        for a in &els {
            for b in &els {
                assert_eq!(
                    r.frobenius(&r.mul(a, b)),
                    r.mul(&r.frobenius(a), &r.frobenius(b))
                );
                assert_eq!(
                    r.frobenius(&r.add(a, b)),
                    r.add(&r.frobenius(a), &r.frobenius(b))
                );
            }
        }
    }

    #[test]
    fn f9_units_and_teichmuller() {
        let r = GaloisRing::new(3, 3, 2); // GR(27, 2) = W_3(F_9)
        let z = r.gen();
        assert_eq!(r.pow(&z, 8), r.one());
        // Teichmuller elements are fixed by x -> x^9
        let t = r.teichmuller(&r.from_u64(2));
        assert_eq!(r.pow(&t, 9), t);
        assert_eq!(r.residue(&t), r.from_u64(2).iter().map(|&c| c % 3).collect::<Vec<_>>());
        // inverses across a sample of units
        for a in r.enumerate_mod_pk(1) {
            if r.is_zero(&r.residue(&a)) {
                continue;
            }
            let ai = r.inv(&a);
            assert_eq!(r.mul(&a, &ai), r.one());
        }
    }

    #[test]
    fn embedding_f2_in_f4() {
        let big = GaloisRing::new(2, 3, 2);
        let small = GaloisRing::new(2, 3, 1);
        let img = big.embed_from(&small, &small.from_u64(5));
        assert_eq!(img, big.from_u64(5));
    }

    #[test]
    fn embedding_f3_in_f9_teichmuller_compatible() {
        let big = GaloisRing::new(3, 2, 2);
        let small = GaloisRing::new(3, 2, 1);
        // embedding is a ring hom on a sample
        for x in 0..9u64 {
            for y in 0..9u64 {
                let a = small.from_u64(x);
                let b = small.from_u64(y);
                assert_eq!(
                    big.embed_from(&small, &small.mul(&a, &b)),
                    big.mul(&big.embed_from(&small, &a), &big.embed_from(&small, &b))
                );
            }
        }
    }
}
