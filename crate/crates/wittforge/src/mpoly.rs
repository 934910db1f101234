//! Sparse multivariate polynomials with packed exponent keys, generic over a
//! commutative coefficient ring. Used to build and verify the universal
//! structure polynomials for truncated Witt vectors.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// maximum number of variables (two truncated vectors of length ≤ 5)
pub const MAX_VARS: usize = 10;
const EXP_BITS: u32 = 12;
const EXP_MASK: u128 = (1 << EXP_BITS) - 1;

/// monomial key with variable `i` raised to `e`
pub fn var_key(i: usize, e: u32) -> u128 {
    assert!(i < MAX_VARS);
    assert!((e as u128) <= EXP_MASK);
    (e as u128) << (EXP_BITS as usize * i)
}

fn key_mul(a: u128, b: u128) -> u128 {
    let s = a + b;
    // per-field overflow check: packed addition is componentwise as long as
    // no field exceeds its 12-bit capacity
    debug_assert!((0..MAX_VARS).all(|i| {
        let ea = (a >> (EXP_BITS as usize * i)) & EXP_MASK;
        let eb = (b >> (EXP_BITS as usize * i)) & EXP_MASK;
        ea + eb <= EXP_MASK
    }));
    s
}

/// unpack a key into per-variable exponents
pub fn key_exps(k: u128) -> [u32; MAX_VARS] {
    let mut out = [0u32; MAX_VARS];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = ((k >> (EXP_BITS as usize * i)) & EXP_MASK) as u32;
    }
    out
}

/// Commutative ring interface for polynomial coefficients. The ring object
/// carries the context (modulus, field tables); elements are plain data.
pub trait CoeffRing {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// the ring of integers with exact arbitrary-precision arithmetic
#[derive(Clone, Copy, Debug, Default)]
pub struct ZZ;

impl CoeffRing for ZZ {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

impl CoeffRing for crate::ring::ChainRing {
    type Elem = crate::ring::ChainElt;
    fn zero(&self) -> Self::Elem {
        crate::ring::ChainRing::zero(self)
    }
    fn one(&self) -> Self::Elem {
        crate::ring::ChainRing::one(self)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        crate::ring::ChainRing::add(self, a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        crate::ring::ChainRing::sub(self, a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        crate::ring::ChainRing::neg(self, a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        crate::ring::ChainRing::mul(self, a, b)
    }
    fn from_i64(&self, v: i64) -> Self::Elem {
        crate::ring::ChainRing::from_i64(self, v)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        crate::ring::ChainRing::is_zero(self, a)
    }
}

/// sparse polynomial: monomial key → nonzero coefficient
pub struct MPoly<C: CoeffRing> {
    pub terms: HashMap<u128, C::Elem>,
}

impl<C: CoeffRing> Clone for MPoly<C> {
    fn clone(&self) -> Self {
        MPoly { terms: self.terms.clone() }
    }
}

impl<C: CoeffRing> std::fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut keys: Vec<u128> = self.terms.keys().copied().collect();
        keys.sort_unstable();
        f.debug_map().entries(keys.iter().map(|k| (k, &self.terms[k]))).finish()
    }
}

impl<C: CoeffRing> PartialEq for MPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms
            .iter()
            .all(|(k, v)| other.terms.get(k) == Some(v))
    }
}

impl<C: CoeffRing> MPoly<C> {
    pub fn zero() -> Self {
        MPoly { terms: HashMap::new() }
    }

    pub fn constant(ring: &C, c: C::Elem) -> Self {
        let mut terms = HashMap::new();
        if !ring.is_zero(&c) {
            terms.insert(0u128, c);
        }
        MPoly { terms }
    }

    pub fn var(ring: &C, i: usize) -> Self {
        let mut terms = HashMap::new();
        terms.insert(var_key(i, 1), ring.one());
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, ring: &C, key: u128, val: C::Elem) {
        if ring.is_zero(&val) {
            return;
        }
        match self.terms.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let s = ring.add(e.get(), &val);
                if ring.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(val);
            }
        }
    }

    pub fn add(&self, ring: &C, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.insert_add(ring, *k, v.clone());
        }
        out
    }

    pub fn sub(&self, ring: &C, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.insert_add(ring, *k, ring.neg(v));
        }
        out
    }

    pub fn neg(&self, ring: &C) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, ring.neg(v))).collect(),
        }
    }

    pub fn mul(&self, ring: &C, other: &Self) -> Self {
        let mut out = MPoly::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                out.insert_add(ring, key_mul(*ka, *kb), ring.mul(va, vb));
            }
        }
        out
    }

    pub fn scale(&self, ring: &C, c: &C::Elem) -> Self {
        let mut out = MPoly::zero();
        for (k, v) in &self.terms {
            out.insert_add(ring, *k, ring.mul(v, c));
        }
        out
    }

    pub fn pow(&self, ring: &C, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = MPoly::constant(ring, ring.one());
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base);
            }
        }
        acc
    }

    /// evaluate in another ring, converting coefficients with `conv`
    pub fn eval_with<R: CoeffRing>(
        &self,
        dst: &R,
        mut conv: impl FnMut(&C::Elem) -> R::Elem,
        vals: &[R::Elem],
    ) -> R::Elem {
        let mut acc = dst.zero();
        for (k, v) in &self.terms {
            let mut term = conv(v);
            let exps = key_exps(*k);
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    assert!(i < vals.len(), "missing value for variable {}", i);
                    term = dst.mul(&term, &pow_elem(dst, &vals[i], e as u64));
                }
            }
            acc = dst.add(&acc, &term);
        }
        acc
    }

    /// convert coefficients into another ring, dropping terms that map to zero
    pub fn map_coeffs<R: CoeffRing>(&self, dst: &R, mut conv: impl FnMut(&C::Elem) -> R::Elem) -> MPoly<R> {
        let mut out = MPoly::zero();
        for (k, v) in &self.terms {
            out.insert_add(dst, *k, conv(v));
        }
        out
    }

    /// largest variable index appearing (None for constants)
    pub fn max_var(&self) -> Option<usize> {
        let mut m = None;
        for k in self.terms.keys() {
            for (i, e) in key_exps(*k).iter().enumerate() {
                if *e > 0 {
                    m = Some(m.map_or(i, |x: usize| x.max(i)));
                }
            }
        }
        m
    }
}

fn pow_elem<R: CoeffRing>(ring: &R, a: &R::Elem, mut e: u64) -> R::Elem {
    let mut base = a.clone();
    let mut acc = ring.one();
    while e > 0 {
        if e & 1 == 1 {
            acc = ring.mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = ring.mul(&base, &base);
        }
    }
    acc
}

/// polynomial ring over `C` as a coefficient ring itself, enabling
/// substitution of polynomials into polynomials via `eval_with`
pub struct PolyRing<C: CoeffRing>(pub C);

impl<C: CoeffRing> CoeffRing for PolyRing<C> {
    type Elem = MPoly<C>;
    fn zero(&self) -> MPoly<C> {
        MPoly::zero()
    }
    fn one(&self) -> MPoly<C> {
        MPoly::constant(&self.0, self.0.one())
    }
    fn add(&self, a: &MPoly<C>, b: &MPoly<C>) -> MPoly<C> {
        a.add(&self.0, b)
    }
    fn sub(&self, a: &MPoly<C>, b: &MPoly<C>) -> MPoly<C> {
        a.sub(&self.0, b)
    }
    fn neg(&self, a: &MPoly<C>) -> MPoly<C> {
        a.neg(&self.0)
    }
    fn mul(&self, a: &MPoly<C>, b: &MPoly<C>) -> MPoly<C> {
        a.mul(&self.0, b)
    }
    fn from_i64(&self, v: i64) -> MPoly<C> {
        MPoly::constant(&self.0, self.0.from_i64(v))
    }
    fn is_zero(&self, a: &MPoly<C>) -> bool {
        a.is_zero()
    }
}

/// divide every integer coefficient exactly by `d`, panicking on remainder
pub fn div_exact(poly: &MPoly<ZZ>, d: &BigInt) -> MPoly<ZZ> {
    assert!(!d.is_zero());
    let terms = poly
        .terms
        .iter()
        .map(|(k, v)| {
            let (q, r) = num_integer::Integer::div_rem(v, d);
            assert!(r.is_zero(), "non-exact division: {} by {}", v, d);
            (*k, q)
        })
        .collect();
    MPoly { terms }
}

/// render with variable names, terms in sorted key order (deterministic)
pub fn format_poly(poly: &MPoly<ZZ>, names: &[&str]) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut keys: Vec<u128> = poly.terms.keys().copied().collect();
    keys.sort_unstable();
    let mut parts = Vec::new();
    for k in keys {
        let c = &poly.terms[&k];
        let exps = key_exps(k);
        let mut mon = String::new();
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                if !mon.is_empty() {
                    mon.push('*');
                }
                mon.push_str(names.get(i).copied().unwrap_or("?"));
                if e > 1 {
                    mon.push_str(&format!("^{}", e));
                }
            }
        }
        let part = if mon.is_empty() {
            format!("{}", c)
        } else if c.is_one() {
            mon
        } else if (-c).is_one() {
            format!("-{}", mon)
        } else {
            format!("{}*{}", c, mon)
        };
        parts.push(part);
    }
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(stripped) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

impl MPoly<ZZ> {
    pub fn abs_coeff_bound(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ChainRing;

    #[test]
    fn basic_arithmetic() {
        let zz = ZZ;
        let x = MPoly::var(&zz, 0);
        let y = MPoly::var(&zz, 1);
        // (x + y)^2 = x^2 + 2xy + y^2
        let s = x.add(&zz, &y);
        let sq = s.mul(&zz, &s);
        let expect = x
            .pow(&zz, 2)
            .add(&zz, &y.pow(&zz, 2))
            .add(&zz, &x.mul(&zz, &y).scale(&zz, &BigInt::from(2)));
        assert_eq!(sq, expect);
        assert_eq!(sq, s.pow(&zz, 2));
        // cancellation prunes terms
        let z = sq.sub(&zz, &expect);
        assert!(z.is_zero());
    }

    #[test]
    fn eval_matches_direct_computation() {
        let zz = ZZ;
        let x = MPoly::var(&zz, 0);
        let y = MPoly::var(&zz, 1);
        // p(x, y) = x^3 - 2xy + 7
        let p = x
            .pow(&zz, 3)
            .sub(&zz, &x.mul(&zz, &y).scale(&zz, &BigInt::from(2)))
            .add(&zz, &MPoly::constant(&zz, BigInt::from(7)));
        let v = p.eval_with(&zz, |c| c.clone(), &[BigInt::from(3), BigInt::from(5)]);
        assert_eq!(v, BigInt::from(27 - 30 + 7));
        // evaluation into a chain ring via coefficient conversion
        let r = ChainRing::witt_truncation(5, 2, 1); // Z/25
        let v2 = p.eval_with(&r, |c| r.from_bigint(c), &[r.from_i64(3), r.from_i64(5)]);
        assert_eq!(v2, r.from_i64(4)); // 4 mod 25
    }

    #[test]
    fn composition_via_poly_ring() {
        let zz = ZZ;
        let pr = PolyRing(zz);
        let x = MPoly::var(&zz, 0);
        let y = MPoly::var(&zz, 1);
        // f(t0, t1) = t0^2 + t1; substitute t0 = x + y, t1 = x*y
        let f = MPoly::var(&zz, 0)
            .pow(&zz, 2)
            .add(&zz, &MPoly::var(&zz, 1));
        let composed = f.eval_with(
            &pr,
            |c| MPoly::constant(&zz, c.clone()),
            &[x.add(&zz, &y), x.mul(&zz, &y)],
        );
        // (x+y)^2 + xy = x^2 + 3xy + y^2
        let expect = x
            .pow(&zz, 2)
            .add(&zz, &y.pow(&zz, 2))
            .add(&zz, &x.mul(&zz, &y).scale(&zz, &BigInt::from(3)));
        assert_eq!(composed, expect);
    }

    #[test]
    fn exact_division() {
        let zz = ZZ;
        let x = MPoly::var(&zz, 0);
        let p = x.pow(&zz, 2).scale(&zz, &BigInt::from(6)).add(&zz, &MPoly::constant(&zz, BigInt::from(9)));
        let q = div_exact(&p, &BigInt::from(3));
        let expect = x.pow(&zz, 2).scale(&zz, &BigInt::from(2)).add(&zz, &MPoly::constant(&zz, BigInt::from(3)));
        assert_eq!(q, expect);
    }

    #[test]
    fn format_is_deterministic() {
        let zz = ZZ;
        let x = MPoly::var(&zz, 0);
        let y = MPoly::var(&zz, 1);
        let p = x.pow(&zz, 2).sub(&zz, &y).add(&zz, &MPoly::constant(&zz, BigInt::from(1)));
        assert_eq!(format_poly(&p, &["x", "y"]), "1 + x^2 - y");
    }
}
