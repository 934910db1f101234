//! Named example modules and displays used by the scenario runner and the
//! integration tests: one-dimensional formal modules of height h, the
//! supersingular elliptic-curve module, étale and multiplicative pieces,
//! and their display and multi-component counterparts.

use crate::dieudonne::{DieudonneModule, ODieudonneModule};
use crate::display::{Display, WMat};
use crate::ramequiv::{d_functor, RamifiedDieudonneModule};
use crate::ring::ChainRing;
use crate::semilinear::Mat;
use crate::witt::{build_witt_table, WittRing};

pub const FIXTURE_NAMES: [&str; 4] = [
    "lubin-tate",
    "supersingular-e-curve",
    "etale-h",
    "multiplicative-h",
];

/// one-dimensional formal module of height h: V is the companion matrix of
/// `x^h − p` and F the complementary matrix with `FV = VF = p`
pub fn lubin_tate(p: u64, s: u32, h: usize, level: usize) -> DieudonneModule {
    let ring = ChainRing::witt_truncation(p, level, s);
    let pi = ring.from_i64(p as i64);
    let mut v = Mat::zeros(&ring, h, h);
    let mut f = Mat::zeros(&ring, h, h);
    for j in 1..h {
        *v.at_mut(j, j - 1) = ring.one();
        *f.at_mut(j - 1, j) = pi.clone();
    }
    *v.at_mut(0, h - 1) = pi.clone();
    *f.at_mut(h - 1, 0) = ring.one();
    let d = DieudonneModule::new(ring, f, v);
    d.validate().expect("fixture must validate");
    d
}

/// the module of a supersingular elliptic curve: h = 2, `F = V = [[0,p],[1,0]]`
pub fn supersingular_e_curve(p: u64, level: usize) -> DieudonneModule {
    let ring = ChainRing::witt_truncation(p, level, 1);
    let pi = ring.from_i64(p as i64);
    let m = Mat {
        rows: 2,
        cols: 2,
        entries: vec![ring.zero(), pi, ring.one(), ring.zero()],
    };
    let d = DieudonneModule::new(ring, m.clone(), m);
    d.validate().expect("fixture must validate");
    d
}

/// étale module of rank h: `F = p·Id`, `V = Id`
pub fn etale_h(p: u64, s: u32, h: usize, level: usize) -> DieudonneModule {
    let ring = ChainRing::witt_truncation(p, level, s);
    let f = Mat::scalar(&ring, h, &ring.from_i64(p as i64));
    let v = Mat::identity(&ring, h);
    let d = DieudonneModule::new(ring, f, v);
    d.validate().expect("fixture must validate");
    d
}

/// multiplicative module of rank h: `F = Id`, `V = p·Id`
pub fn multiplicative_h(p: u64, s: u32, h: usize, level: usize) -> DieudonneModule {
    let ring = ChainRing::witt_truncation(p, level, s);
    let f = Mat::identity(&ring, h);
    let v = Mat::scalar(&ring, h, &ring.from_i64(p as i64));
    let d = DieudonneModule::new(ring, f, v);
    d.validate().expect("fixture must validate");
    d
}

pub fn by_name(name: &str, p: u64, s: u32, h: usize, level: usize) -> Option<DieudonneModule> {
    match name {
        "lubin-tate" => Some(lubin_tate(p, s, h, level)),
        "supersingular-e-curve" => Some(supersingular_e_curve(p, level)),
        "etale-h" => Some(etale_h(p, s, h, level)),
        "multiplicative-h" => Some(multiplicative_h(p, s, h, level)),
        _ => None,
    }
}

/// display counterpart of the height-h one-dimensional module: companion
/// structural matrix, tangent rank 1
pub fn lubin_tate_display(p: u64, s: u32, h: usize, depth: usize) -> Display {
    let wr = WittRing::new(build_witt_table(p, depth), ChainRing::equal_char(p, s, 1, 1));
    let mut a = WMat::zeros(&wr, h, h);
    for i in 0..h - 1 {
        *a.at_mut(i + 1, i) = wr.one();
    }
    *a.at_mut(0, h - 1) = wr.one();
    let d = Display::new(wr, h - 1, 1, a);
    d.validate().expect("fixture must validate");
    d
}

/// display of the supersingular curve: antidiagonal structural matrix
pub fn supersingular_display(p: u64, depth: usize) -> Display {
    let wr = WittRing::new(build_witt_table(p, depth), ChainRing::equal_char(p, 1, 1, 1));
    let mut a = WMat::zeros(&wr, 2, 2);
    *a.at_mut(0, 1) = wr.one();
    *a.at_mut(1, 0) = wr.one();
    let d = Display::new(wr, 1, 1, a);
    d.validate().expect("fixture must validate");
    d
}

/// degree-f unfolded supersingular-type module with strict scalar action,
/// built through the unfolding functor from a rank-2 ramified module
pub fn unfolded_supersingular(p: u64, level: usize, s: u32, f: usize) -> ODieudonneModule {
    let mut ring = ChainRing::witt_truncation(p, level, s);
    ring.sigma_power *= f as u32;
    let pi = ring.from_i64(p as i64);
    let m = Mat {
        rows: 2,
        cols: 2,
        entries: vec![ring.zero(), pi, ring.one(), ring.zero()],
    };
    let module = DieudonneModule::new(ring, m.clone(), m);
    module.validate().expect("fixture must validate");
    let h = RamifiedDieudonneModule {
        module,
        f,
        f_pi_ambiguous: false,
    };
    d_functor(&h).expect("fixture must unfold")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_invariants() {
        let lt = lubin_tate(3, 1, 4, 2);
        assert!(lt.is_connected());
        assert_eq!(lt.dimension().unwrap(), 1);
        let ss = supersingular_e_curve(5, 2);
        assert!(ss.is_connected());
        assert_eq!(ss.dimension().unwrap(), 1);
        let et = etale_h(3, 1, 2, 2);
        assert!(et.is_etale());
        assert_eq!(et.dimension().unwrap(), 0);
        let mu = multiplicative_h(3, 1, 2, 2);
        assert!(mu.is_connected());
        assert_eq!(mu.dimension().unwrap(), 2);
        let disp = lubin_tate_display(3, 1, 4, 2);
        assert_eq!(disp.height(), 4);
        assert_eq!(disp.tangent_rank(), 1);
        assert!(disp.nilpotence_test());
        let o = unfolded_supersingular(3, 2, 1, 2);
        assert!(o.has_strict_scalar_action());
    }
}
