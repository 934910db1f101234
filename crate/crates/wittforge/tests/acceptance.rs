//! End-to-end acceptance battery: each test verifies one headline numeric
//! formula or structural identity at desk scale and prints a PASS line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;
use wittforge::dieudonne::{tower_eta, DieudonneModule};
use wittforge::display;
use wittforge::fixtures;
use wittforge::multilinear::{
    check_f_conditions, check_v_condition, delta, enumerate_index_vectors, solve_hom_space,
    solve_l_space, uglysum_check, Flavor, MultilinearMap,
};
use wittforge::ramequiv::{
    chi, equivalence_roundtrip, flatten, h_functor, is_o_multilinear, o_multilinear_projection, xi,
};
use wittforge::ramified::{
    build_ramified_table, verify_mu_ghost_random, verify_ramified_ghost_identities, BaseDVR,
    RamifiedWittRing,
};
use wittforge::ring::{ChainElt, ChainRing};
use wittforge::semilinear::{wedge_vectors, Mat, SemilinearMap};
use wittforge::witt::{build_witt_table, verify_ghost_identities, WittRing};

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn ramified_bases() -> Vec<BaseDVR> {
    vec![
        BaseDVR::new(3, 1, 1, vec![-3, 1]),
        BaseDVR::new(2, 2, 1, vec![-2, 0, 1]),
        BaseDVR::unramified(3, 2),
    ]
}

/// evaluate a semilinear map on a coordinate vector
fn apply(ring: &ChainRing, m: &SemilinearMap, v: &[ChainElt]) -> Vec<ChainElt> {
    let twisted: Vec<ChainElt> = v.iter().map(|c| ring.sigma_pow(c, m.twist)).collect();
    m.mat.mul_vec(ring, &twisted)
}

/// the height-h companion module with the uniformizer of an arbitrary
/// coefficient chain ring in place of p (equal-characteristic variant)
fn companion_module(ring: ChainRing, h: usize) -> DieudonneModule {
    let pi = ring.uniformizer();
    let mut v = Mat::zeros(&ring, h, h);
    let mut f = Mat::zeros(&ring, h, h);
    for j in 1..h {
        *v.at_mut(j, j - 1) = ring.one();
        *f.at_mut(j - 1, j) = pi.clone();
    }
    *v.at_mut(0, h - 1) = pi.clone();
    *f.at_mut(h - 1, 0) = ring.one();
    let d = DieudonneModule::new(ring, f, v);
    d.validate().expect("companion module validates");
    d
}

#[test]
fn criterion_01_order_exponent_formula() {
    let start = Instant::now();
    for (p, s) in [(3u64, 1u32), (2, 2)] {
        for h in 2..=4usize {
            for n in 1..=2usize {
                let d = fixtures::lubin_tate(p, s, h, n);
                for j in 1..=h {
                    assert_eq!(
                        d.order_exponent(j),
                        n * binom(h, j),
                        "p={p} s={s} h={h} n={n} j={j}"
                    );
                }
            }
        }
    }
    assert!(start.elapsed().as_secs() < 10, "runtime budget exceeded");
    println!("ACCEPTANCE 01 order_exponent_formula: PASS");
}

#[test]
fn criterion_02_display_exterior_ranks() {
    let start = Instant::now();
    for h in 2..=5usize {
        let d = fixtures::lubin_tate_display(3, 1, h, 1);
        for r in 1..=h {
            let ext = d.exterior_power(r).expect("exterior power");
            assert_eq!(ext.height(), binom(h, r), "h={h} r={r} height");
            assert_eq!(ext.tangent_rank(), binom(h - 1, r - 1), "h={h} r={r} tangent");
        }
        let top = d.exterior_power(h).expect("top power");
        assert_eq!((top.height(), top.tangent_rank()), (1, 1));
    }
    assert!(start.elapsed().as_secs() < 5, "runtime budget exceeded");
    println!("ACCEPTANCE 02 display_exterior_ranks: PASS");
}

#[test]
fn criterion_03_dimension_formula_both_settings() {
    let start = Instant::now();
    // classical coefficients W(k)/p³
    for h in 2..=4usize {
        let d = fixtures::lubin_tate(3, 1, h, 3);
        for j in 1..=h {
            let ext = d.exterior_power(j).expect("exterior power");
            assert_eq!(
                ext.module.dimension().expect("dimension"),
                binom(h - 1, j - 1),
                "classical h={h} j={j}"
            );
        }
    }
    // equal-characteristic coefficients k[[u]]/u³
    for h in 2..=4usize {
        let d = companion_module(ChainRing::equal_char(3, 1, 3, 1), h);
        for j in 1..=h {
            let ext = d.exterior_power(j).expect("exterior power");
            assert_eq!(
                ext.module.dimension().expect("dimension"),
                binom(h - 1, j - 1),
                "equal-char h={h} j={j}"
            );
        }
    }
    assert!(start.elapsed().as_secs() < 10, "runtime budget exceeded");
    println!("ACCEPTANCE 03 dimension_formula_both_settings: PASS");
}

#[test]
fn criterion_04_phi_upsilon_and_diagrams() {
    // exhaustive at h=2, level 1, p=3
    let d = fixtures::supersingular_e_curve(3, 1);
    let ring = d.ring.clone();
    let ext = d.exterior_power(2).expect("exterior power");
    let p_id = Mat::scalar(&ring, ext.module.rank, &ring.from_i64(3));
    let phi_ups = ext.module.f_map.compose(&ring, &ext.module.v_map);
    let ups_phi = ext.module.v_map.compose(&ring, &ext.module.f_map);
    assert_eq!(phi_ups.mat, p_id);
    assert_eq!(ups_phi.mat, p_id);
    assert_eq!(phi_ups.twist, 0);
    assert_eq!(ups_phi.twist, 0);
    let elems = ring.enumerate();
    let mut vectors = Vec::new();
    for a in &elems {
        for b in &elems {
            vectors.push(vec![a.clone(), b.clone()]);
        }
    }
    let eq_vec = |a: &[ChainElt], b: &[ChainElt]| {
        a.iter().zip(b).all(|(x, y)| ring.eq(x, y))
    };
    for x in &vectors {
        for y in &vectors {
            // Υ(x∧y) = Vx ∧ Vy
            let lhs = apply(&ring, &ext.module.v_map, &wedge_vectors(&ring, &[x.clone(), y.clone()]));
            let vx = apply(&ring, &d.v_map, x);
            let vy = apply(&ring, &d.v_map, y);
            let rhs = wedge_vectors(&ring, &[vx, vy.clone()]);
            assert!(eq_vec(&lhs, &rhs), "V-diagram failed");
            // Φ(x ∧ Vy) = Fx ∧ y
            let lhs = apply(&ring, &ext.module.f_map, &wedge_vectors(&ring, &[x.clone(), vy]));
            let fx = apply(&ring, &d.f_map, x);
            let rhs = wedge_vectors(&ring, &[fx, y.clone()]);
            assert!(eq_vec(&lhs, &rhs), "F-diagram failed");
        }
    }
    // 200 random trials at h=3, level 2
    let d3 = fixtures::lubin_tate(3, 1, 3, 2);
    let ring3 = d3.ring.clone();
    let ext3 = d3.exterior_power(2).expect("exterior power");
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let eq3 = |a: &[ChainElt], b: &[ChainElt]| a.iter().zip(b).all(|(x, y)| ring3.eq(x, y));
    for _ in 0..200 {
        let x: Vec<ChainElt> = (0..3).map(|_| ring3.random(&mut rng)).collect();
        let y: Vec<ChainElt> = (0..3).map(|_| ring3.random(&mut rng)).collect();
        let vx = apply(&ring3, &d3.v_map, &x);
        let vy = apply(&ring3, &d3.v_map, &y);
        let lhs = apply(&ring3, &ext3.module.v_map, &wedge_vectors(&ring3, &[x.clone(), y.clone()]));
        let rhs = wedge_vectors(&ring3, &[vx, vy.clone()]);
        assert!(eq3(&lhs, &rhs), "V-diagram failed at h=3");
        let lhs = apply(&ring3, &ext3.module.f_map, &wedge_vectors(&ring3, &[x.clone(), vy]));
        let fx = apply(&ring3, &d3.f_map, &x);
        let rhs = wedge_vectors(&ring3, &[fx, y.clone()]);
        assert!(eq3(&lhs, &rhs), "F-diagram failed at h=3");
    }
    println!("ACCEPTANCE 04 phi_upsilon_and_diagrams: PASS");
}

#[test]
fn criterion_05_ghost_identities_symbolic() {
    for p in [2u64, 3, 5] {
        for m in 1..=4usize {
            let t0 = Instant::now();
            let t = build_witt_table(p, m);
            assert!(t0.elapsed().as_secs() < 30, "p={p} m={m} build too slow");
            assert!(verify_ghost_identities(&t), "p={p} m={m}");
        }
    }
    for b in ramified_bases() {
        for m in 1..=3usize {
            let t0 = Instant::now();
            let t = build_ramified_table(&b, m);
            assert!(t0.elapsed().as_secs() < 30, "ramified build too slow");
            assert!(
                verify_ramified_ghost_identities(&t),
                "p={} e={} f={} m={m}",
                b.p,
                b.e,
                b.f
            );
        }
    }
    println!("ACCEPTANCE 05 ghost_identities_symbolic: PASS");
}

#[test]
fn criterion_06_fv_composites_exhaustive() {
    // classical: F∘V = p on W_2(F_3)
    let base = ChainRing::equal_char(3, 1, 1, 1);
    let w2 = WittRing::new(build_witt_table(3, 2), base.clone());
    let w1 = WittRing::new(build_witt_table(3, 1), base);
    for x in w1.enumerate() {
        let fv = w2.frobenius(&w2.verschiebung(&x));
        assert_eq!(fv, w1.mul(&w1.from_i64(3), &x));
    }
    // ramified: F_π∘V_π = π on W_{O,2}(F_4), O = Z_2[y]/(y²−2)
    let b = BaseDVR::new(2, 2, 1, vec![-2, 0, 1]);
    let k = ChainRing::equal_char(2, 2, 1, 1);
    let r2 = RamifiedWittRing::new(build_ramified_table(&b, 2), k.clone());
    let r1 = RamifiedWittRing::new(build_ramified_table(&b, 1), k);
    for x in r1.enumerate() {
        let fv = r2.frobenius(&r2.verschiebung(&x));
        assert!(r1.is_zero(&r1.sub(&fv, &r1.pi_action(&x))));
    }
    println!("ACCEPTANCE 06 fv_composites_exhaustive: PASS");
}

#[test]
fn criterion_07_mu_ghost_compatibility() {
    for (i, b) in ramified_bases().iter().enumerate() {
        let t = build_ramified_table(b, 2);
        assert!(
            verify_mu_ghost_random(&t, 1000 + i as u64, 50),
            "mu ghost failed on base {i}"
        );
        // μ([a]) = [a] exhaustively over the residue field F_q
        let k = ChainRing::equal_char(b.p, b.f, 1, 1);
        let w = RamifiedWittRing::new(t.clone(), k.clone());
        let classical_depth = b.f as usize * (w.depth() - 1) + 1;
        let wc = WittRing::new(build_witt_table(b.p, classical_depth), k.clone());
        for a in k.enumerate() {
            assert_eq!(
                w.mu_transform(&wc.teichmuller(&a)),
                w.teichmuller(&a),
                "teichmuller not preserved on base {i}"
            );
        }
    }
    println!("ACCEPTANCE 07 mu_ghost_compatibility: PASS");
}

#[test]
fn criterion_08_delta_and_uglysum() {
    for r in 1..=3usize {
        for m in 1..=4u64 {
            for v in enumerate_index_vectors(r, m) {
                assert_eq!(delta(&delta(&v)), v);
            }
        }
    }
    // 100 random instances over the integers
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let w0: Vec<i64> = (0..3).map(|_| rng.gen_range(-9..10)).collect();
        let ys: Vec<Vec<i64>> = (0..3)
            .map(|_| (0..4).map(|_| rng.gen_range(-9..10)).collect())
            .collect();
        assert!(uglysum_check(
            &w0,
            &ys,
            |a, b| a + b,
            |a| a * 5,
            |args: &[i64]| args.iter().product::<i64>(),
            |a, b| a + b,
            0i64,
        ));
    }
    // 100 random instances over W_2(F_3)
    let wr = WittRing::new(build_witt_table(3, 2), ChainRing::equal_char(3, 1, 1, 1));
    let alpha = wr.from_i64(2);
    let elems = wr.enumerate();
    for trial in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(trial);
        let mut pick = || elems[rng.gen_range(0..elems.len())].clone();
        let w0: Vec<_> = (0..2).map(|_| pick()).collect();
        let ys: Vec<Vec<_>> = (0..2).map(|_| (0..3).map(|_| pick()).collect()).collect();
        assert!(uglysum_check(
            &w0,
            &ys,
            |a, b| wr.add(a, b),
            |a| wr.mul(a, &alpha),
            |args| args.iter().fold(wr.one(), |acc, a| wr.mul(&acc, a)),
            |a, b| wr.add(a, b),
            wr.zero(),
        ));
    }
    println!("ACCEPTANCE 08 delta_and_uglysum: PASS");
}

#[test]
fn criterion_09_universal_property_enumeration() {
    let start = Instant::now();
    let d = fixtures::supersingular_e_curve(3, 1);
    let ring = d.ring.clone();
    let ext = d.exterior_power(2).expect("exterior power");
    let targets: Vec<(&str, DieudonneModule)> = vec![
        ("wedge", ext.module.clone()),
        ("multiplicative", fixtures::multiplicative_h(3, 1, 1, 1)),
        ("etale", fixtures::etale_h(3, 1, 1, 1)),
    ];
    let elems = ring.enumerate();
    for (tag, n) in &targets {
        // brute-force every alternating bilinear map D × D → N over F_3
        // and keep those satisfying the V- and F-conditions
        let tuples = 4 * n.rank;
        let total = elems.len().pow(tuples as u32);
        let mut count = 0usize;
        for code in 0..total {
            let mut m = MultilinearMap::zero(ring.clone(), vec![2, 2], n.rank);
            let mut c = code;
            for t in 0..4 {
                for k in 0..n.rank {
                    m.tensor[t][k] = elems[c % elems.len()].clone();
                    c /= elems.len();
                }
            }
            if m.is_alternating()
                && check_v_condition(&m, &[&d, &d], n)
                && check_f_conditions(&m, &[&d, &d], n, 0, 0)
            {
                count += 1;
            }
        }
        let homs = solve_hom_space(&ext.module, n);
        assert_eq!(
            count,
            3usize.pow(homs.count_exponent as u32),
            "bijection failed for target {tag}"
        );
    }
    // display-level bijection at the same scale
    assert!(display::universal_property_check());
    assert!(start.elapsed().as_secs() < 60, "runtime budget exceeded");
    println!("ACCEPTANCE 09 universal_property_enumeration: PASS");
}

#[test]
fn criterion_10_equivalence_and_transport_roundtrips() {
    let o = fixtures::unfolded_supersingular(3, 1, 1, 2);
    let rep = equivalence_roundtrip(&o).expect("roundtrip report");
    assert!(rep.h_of_d_exact, "H∘D must be the identity");
    assert!(rep.d_of_h_isomorphic && rep.psi_invertible, "D∘H must be isomorphic");
    let h = h_functor(&o).expect("scalar action");
    let flat = flatten(&o);
    // Ξ∘χ = id on every V-condition solution of the compressed side
    let hm = &h.module;
    let h_space = solve_l_space(&[hm, hm], hm, Flavor::All);
    assert!(!h_space.basis.is_empty());
    for phi in &h_space.basis {
        let big = chi(phi, &o, &o);
        assert!(check_v_condition(&big, &[&flat, &flat], &flat));
        assert_eq!(xi(&big, &o, &o).tensor, phi.tensor, "Ξ∘χ failed");
    }
    // χ∘Ξ = id on the component-graded solutions of the unfolded side
    let flat_space = solve_l_space(&[&flat, &flat], &flat, Flavor::All);
    let mut nonzero = 0;
    for m in &flat_space.basis {
        let proj = o_multilinear_projection(m, &o, &o);
        assert!(is_o_multilinear(&proj, &o, &o));
        assert!(check_v_condition(&proj, &[&flat, &flat], &flat));
        if !proj.is_zero() {
            nonzero += 1;
        }
        let small = xi(&proj, &o, &o);
        assert_eq!(chi(&small, &o, &o).tensor, proj.tensor, "χ∘Ξ failed");
    }
    assert!(nonzero > 0, "χ∘Ξ check was vacuous");
    println!("ACCEPTANCE 10 equivalence_and_transport_roundtrips: PASS");
}

#[test]
fn criterion_11_tower_exactness() {
    // 0 → ⋀^j M_1 → ⋀^j M_2 → ⋀^j M_1 → 0 on wedge coordinates:
    // the image of η equals the kernel of the level reduction, and η is
    // injective, so both have cardinality 3^C(h,j)
    for h in [2usize, 3] {
        let big = ChainRing::witt_truncation(3, 2, 1);
        let small = big.reduce_level(1);
        for j in 1..=h {
            let c = binom(h, j);
            let mut image = std::collections::BTreeSet::new();
            let mut coords = vec![small.zero(); c];
            let small_elems = small.enumerate();
            let mut stack = vec![0usize; c];
            loop {
                for (i, &k) in stack.iter().enumerate() {
                    coords[i] = small_elems[k].clone();
                }
                image.insert(format!("{:?}", tower_eta(&big, &small, &coords, 1)));
                let mut pos = 0;
                loop {
                    if pos == c {
                        break;
                    }
                    stack[pos] += 1;
                    if stack[pos] < small_elems.len() {
                        break;
                    }
                    stack[pos] = 0;
                    pos += 1;
                }
                if pos == c {
                    break;
                }
            }
            assert_eq!(image.len(), 3usize.pow(c as u32), "η not injective h={h} j={j}");
            // kernel of the reduction map, by exhausting the big module
            let big_elems = big.enumerate();
            let mut kernel = std::collections::BTreeSet::new();
            let mut stack = vec![0usize; c];
            loop {
                let vec: Vec<ChainElt> =
                    stack.iter().map(|&k| big_elems[k].clone()).collect();
                if vec
                    .iter()
                    .all(|e| small.is_zero(&big.reduce_elt(&small, e)))
                {
                    kernel.insert(format!("{:?}", vec));
                }
                let mut pos = 0;
                loop {
                    if pos == c {
                        break;
                    }
                    stack[pos] += 1;
                    if stack[pos] < big_elems.len() {
                        break;
                    }
                    stack[pos] = 0;
                    pos += 1;
                }
                if pos == c {
                    break;
                }
            }
            assert_eq!(image, kernel, "image ≠ kernel at h={h} j={j}");
        }
    }
    println!("ACCEPTANCE 11 tower_exactness: PASS");
}

#[test]
fn criterion_12_base_change_commutes_with_exterior() {
    let d = fixtures::lubin_tate_display(3, 1, 3, 2);
    let f3 = d.witt.base.clone();

    // k → F_9
    let f9 = ChainRing::equal_char(3, 2, 1, 1);
    let w9 = WittRing::new(build_witt_table(3, 2), f9.clone());
    let into_f9 = |e: &ChainElt| {
        let emb = f9.gr.embed_from(&f3.gr, &e.coeffs[0]);
        let mut out = f9.zero();
        out.coeffs[0] = emb;
        f9.canonicalize(out.coeffs)
    };

    // k → k[ε]/(ε²)
    let keps = ChainRing::equal_char(3, 1, 2, 1);
    let weps = WittRing::new(build_witt_table(3, 2), keps.clone());
    let into_keps = |e: &ChainElt| {
        let mut out = keps.zero();
        out.coeffs[0] = e.coeffs[0].clone();
        keps.canonicalize(out.coeffs)
    };

    let check = |target: &WittRing, hom: &dyn Fn(&ChainElt) -> ChainElt, tag: &str| {
        let moved = d.base_change(target, hom);
        moved.validate().expect("base change validates");
        let ext_then_move = d.exterior_power(2).expect("exterior").base_change(target, hom);
        let move_then_ext = moved.exterior_power(2).expect("exterior");
        assert_eq!(
            ext_then_move.structural, move_then_ext.structural,
            "structural matrices differ after {tag}"
        );
        assert_eq!(ext_then_move.rank_l, move_then_ext.rank_l);
        assert_eq!(ext_then_move.rank_t, move_then_ext.rank_t);
    };
    check(&w9, &into_f9, "F_9 extension");
    check(&weps, &into_keps, "dual-numbers extension");
    println!("ACCEPTANCE 12 base_change_commutes_with_exterior: PASS");
}
