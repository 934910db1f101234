//! Dieudonné modules at finite level: free modules over a finite chain
//! quotient of `W(k)` (or its ramified analogue) with a σ-linear `F` and a
//! σ⁻¹-linear `V` satisfying `FV = VF = π`. Provides connectedness tests,
//! dimension via elementary divisors, the cyclic-vector construction of
//! exterior powers with their `Φ`/`Υ` operator pair, étale/connected
//! splitting, multi-component modules for unramified extensions of the base,
//! and level-tower maps.

use crate::ring::{ChainElt, ChainRing};
use crate::semilinear::{
    binomial, compound, inverse, kernel_generators, smith, solve, subsets_lex, twisted_nilpotency,
    wedge_vectors, Mat, SemilinearMap,
};
use serde::{Deserialize, Serialize};

/// a level-n module: `FV = VF = π` with `F` of twist +1, `V` of twist −1
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DieudonneModule {
    pub ring: ChainRing,
    pub rank: usize,
    pub f_map: SemilinearMap,
    pub v_map: SemilinearMap,
}

/// an exterior power together with its operator pair `(Φ, Υ)`
#[derive(Clone, Debug)]
pub struct ExteriorPower {
    /// the wedge module with `f_map = Φ` and `v_map = Υ`
    pub module: DieudonneModule,
    /// true when `Φ` is not uniquely determined by `Φ∘Υ = π` (torsion in
    /// the image of `Υ`)
    pub phi_ambiguous: bool,
}

impl DieudonneModule {
    pub fn new(ring: ChainRing, f_mat: Mat, v_mat: Mat) -> Self {
        let rank = f_mat.rows;
        DieudonneModule {
            ring,
            rank,
            f_map: SemilinearMap::new(f_mat, 1),
            v_map: SemilinearMap::new(v_mat, -1),
        }
    }

    /// check shapes, twists, and `FV = VF = π·id`
    pub fn validate(&self) -> Result<(), String> {
        let r = &self.ring;
        let h = self.rank;
        if self.f_map.mat.rows != h || self.f_map.mat.cols != h {
            return Err("F matrix shape mismatch".into());
        }
        if self.v_map.mat.rows != h || self.v_map.mat.cols != h {
            return Err("V matrix shape mismatch".into());
        }
        if self.f_map.twist != 1 || self.v_map.twist != -1 {
            return Err("twist convention violated".into());
        }
        let pi = Mat::scalar(r, h, &r.uniformizer());
        let fv = self.f_map.compose(r, &self.v_map);
        if fv.twist != 0 || fv.mat != pi {
            return Err("FV ≠ π".into());
        }
        let vf = self.v_map.compose(r, &self.f_map);
        if vf.twist != 0 || vf.mat != pi {
            return Err("VF ≠ π".into());
        }
        Ok(())
    }

    /// the module is connected iff `V` is nilpotent on `M/πM`. Images of a
    /// semilinear map are subspaces over the residue field and strictly
    /// decrease until zero when nilpotent, so `rank` compositions suffice.
    pub fn is_connected(&self) -> bool {
        let rf = self.ring.residue_field();
        let vbar = SemilinearMap::new(
            self.v_map.mat.map(|e| self.ring.to_residue(e)),
            -1,
        );
        twisted_nilpotency(&rf, &vbar, self.rank.max(1))
    }

    /// étale part is everything iff `V` is bijective
    pub fn is_etale(&self) -> bool {
        self.ring.valuation(&crate::semilinear::det(&self.ring, &self.v_map.mat)) == 0
    }

    /// Dimension of the associated group: the length of `coker(V)` divided
    /// by the residue degree... reported as a length (number of residue-field
    /// factors). Errs when the level does not determine it (some elementary
    /// divisor of `V` vanishes at this level).
    pub fn dimension(&self) -> Result<usize, String> {
        let sf = smith(&self.ring, &self.v_map.mat);
        let vals = sf.divisor_valuations(&self.ring);
        if vals.iter().any(|&v| v >= self.ring.n) {
            return Err("dimension not stabilized at this level".into());
        }
        Ok(sf.coker_length(&self.ring))
    }

    /// exponent of the order: the group at level n and rank h has order
    /// `q^{n·h}` per residue field of size q; for the j-th exterior power
    /// the rank is `C(h, j)`
    pub fn order_exponent(&self, j: usize) -> usize {
        if j > self.rank {
            0
        } else {
            self.ring.n * binomial(self.rank, j)
        }
    }

    /// the same module at a lower level
    pub fn reduce_level(&self, m: usize) -> DieudonneModule {
        let target = self.ring.reduce_level(m);
        let red = |mat: &Mat| mat.map(|e| self.ring.reduce_elt(&target, e));
        DieudonneModule {
            ring: target.clone(),
            rank: self.rank,
            f_map: SemilinearMap::new(red(&self.f_map.mat), 1),
            v_map: SemilinearMap::new(red(&self.v_map.mat), -1),
        }
    }

    /// Find a cyclic vector: `ε` such that `ε, Vε, …, V^{h-1}ε` is a basis.
    /// Scans the standard basis of `M/πM`, then seeded random combinations;
    /// returns `(ε, B)` with `B` the basis matrix (unit determinant).
    pub fn find_epsilon(&self) -> Option<(Vec<ChainElt>, Mat)> {
        let r = &self.ring;
        let h = self.rank;
        let rf = r.residue_field();
        let vbar = SemilinearMap::new(self.v_map.mat.map(|e| r.to_residue(e)), -1);
        let try_candidate = |eps_bar: &[ChainElt]| -> Option<(Vec<ChainElt>, Mat)> {
            // iterate V on the residue candidate; all h vectors must be
            // linearly independent
            let mut cols = Vec::with_capacity(h);
            let mut cur = eps_bar.to_vec();
            for _ in 0..h {
                cols.push(cur.clone());
                cur = vbar.apply(&rf, &cur);
            }
            let bbar = Mat::from_fn(h, h, |i, j| cols[j][i].clone());
            if rf.is_zero(&crate::semilinear::det(&rf, &bbar)) {
                return None;
            }
            // lift and rebuild over the full ring
            let eps: Vec<ChainElt> = eps_bar.iter().map(|e| r.lift_residue(e)).collect();
            let mut cols = Vec::with_capacity(h);
            let mut cur = eps.clone();
            for _ in 0..h {
                cols.push(cur.clone());
                cur = self.v_map.apply(r, &cur);
            }
            let b = Mat::from_fn(h, h, |i, j| cols[j][i].clone());
            let d = crate::semilinear::det(r, &b);
            if r.valuation(&d) != 0 {
                return None;
            }
            Some((eps, b))
        };
        // standard basis first (deterministic), then seeded random combos
        for i in 0..h {
            let mut e = vec![rf.zero(); h];
            e[i] = rf.one();
            if let Some(found) = try_candidate(&e) {
                return Some(found);
            }
        }
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..64 {
            let e: Vec<ChainElt> = (0..h).map(|_| rf.random(&mut rng)).collect();
            if e.iter().all(|c| rf.is_zero(c)) {
                continue;
            }
            if let Some(found) = try_candidate(&e) {
                return Some(found);
            }
        }
        None
    }

    /// The j-th exterior power with its `(Φ, Υ)` operator pair.
    /// `Υ = ⋀^j V`; `Φ` is the unique twist-(+1) companion with
    /// `Φ∘Υ = Υ∘Φ = π`, built through a cyclic basis when one exists and
    /// through the étale/connected splitting otherwise.
    pub fn exterior_power(&self, j: usize) -> Result<ExteriorPower, String> {
        let r = &self.ring;
        let h = self.rank;
        if j == 0 || j > h {
            return Err("exterior power index out of range".into());
        }
        let upsilon = SemilinearMap::new(compound(r, &self.v_map.mat, j), -1);
        let phi = if let Some((eps, b)) = self.find_epsilon() {
            self.phi_from_cyclic_basis(j, &eps, &b)?
        } else {
            self.phi_from_splitting(j)?
        };
        // Φ∘Υ = Υ∘Φ = π, non-negotiable
        let wedge_rank = binomial(h, j);
        let pi = Mat::scalar(r, wedge_rank, &r.uniformizer());
        let a = phi.compose(r, &upsilon);
        if a.mat != pi {
            return Err("Φ∘Υ ≠ π".into());
        }
        let b = upsilon.compose(r, &phi);
        if b.mat != pi {
            return Err("Υ∘Φ ≠ π".into());
        }
        // uniqueness: Φ·σ(M_Υ) = π·id determines Φ unless coker(Υ) has
        // torsion; solve the transposed system and compare
        let sys = upsilon.mat.apply_sigma(r, 1).transpose();
        let (xt, ambiguous) = solve(r, &sys, &pi).ok_or("Φ∘Υ = π not solvable")?;
        let solved = xt.transpose();
        if !ambiguous && solved != phi.mat {
            return Err("Φ mismatch with the unique solution of Φ∘Υ = π".into());
        }
        Ok(ExteriorPower {
            module: DieudonneModule {
                ring: r.clone(),
                rank: wedge_rank,
                f_map: phi,
                v_map: upsilon,
            },
            phi_ambiguous: ambiguous,
        })
    }

    /// `Φ` on the wedge basis adapted to a cyclic basis `b_i = V^i ε`:
    /// `Φ(b_{α_1} ∧ … ∧ b_{α_j}) = F b_{α_1} ∧ V^{α_2 - 1}ε ∧ … ∧ V^{α_j - 1}ε`
    fn phi_from_cyclic_basis(
        &self,
        j: usize,
        eps: &[ChainElt],
        b: &Mat,
    ) -> Result<SemilinearMap, String> {
        let r = &self.ring;
        let h = self.rank;
        // powers of V applied to ε
        let mut v_eps = Vec::with_capacity(h);
        let mut cur = eps.to_vec();
        for _ in 0..h {
            v_eps.push(cur.clone());
            cur = self.v_map.apply(r, &cur);
        }
        let subs = subsets_lex(h, j);
        let mut u = Mat::zeros(r, subs.len(), subs.len());
        for (col, alpha) in subs.iter().enumerate() {
            let mut vecs = Vec::with_capacity(j);
            vecs.push(self.f_map.apply(r, &v_eps[alpha[0]]));
            for &a in &alpha[1..] {
                // α strictly increasing, so a ≥ 1 here
                vecs.push(v_eps[a - 1].clone());
            }
            u.set_col(col, &wedge_vectors(r, &vecs));
        }
        let c = compound(r, b, j);
        let c_inv_tw = inverse(r, &c.apply_sigma(r, 1));
        Ok(SemilinearMap::new(u.mul(r, &c_inv_tw), 1))
    }

    /// `Φ` through `M = M_ét ⊕ M_conn`: on `⋀^r M_ét ⊗ ⋀^{j-r} M_conn` it
    /// acts as `(⋀^r V_ét)^{-1} ⊗ Φ_conn`
    fn phi_from_splitting(&self, j: usize) -> Result<SemilinearMap, String> {
        let r = &self.ring;
        let (et, conn, g) = self
            .split_etale_connected()
            .ok_or("no cyclic vector and no étale/connected splitting")?;
        let he = et.rank;
        let hc = conn.rank;
        // Φ per summand ⋀^s M_ét ⊗ ⋀^{j-s} M_conn
        let mut phi_et_by_s: Vec<Option<Mat>> = Vec::new();
        let mut phi_conn_by_t: Vec<Option<Mat>> = Vec::new();
        for s in 0..=j {
            phi_et_by_s.push(if s > he {
                None
            } else if s == 0 {
                Some(Mat::identity(r, 1))
            } else {
                // inverse of ⋀^s V_ét as a twist-(+1) map: σ((⋀^s V)^{-1})
                Some(inverse(r, &compound(r, &et.v_map.mat, s)).apply_sigma(r, 1))
            });
            let t = j - s;
            phi_conn_by_t.push(if t > hc {
                None
            } else if t == 0 {
                Some(Mat::scalar(r, 1, &r.uniformizer()))
            } else {
                Some(conn.exterior_power(t)?.module.f_map.mat)
            });
        }
        // assemble Φ in the split wedge basis, indexed by j-subsets of the
        // combined basis in lexicographic order (étale indices first, so
        // wedge factors are already sorted and no signs appear)
        let subs = subsets_lex(self.rank, j);
        let classify = |alpha: &Vec<usize>| -> (Vec<usize>, Vec<usize>) {
            let e: Vec<usize> = alpha.iter().copied().filter(|&x| x < he).collect();
            let c: Vec<usize> = alpha.iter().filter(|&&x| x >= he).map(|&x| x - he).collect();
            (e, c)
        };
        let pos = |universe: usize, set: &Vec<usize>| -> usize {
            subsets_lex(universe, set.len())
                .iter()
                .position(|s| s == set)
                .expect("subset index")
        };
        let mut phi_split = Mat::zeros(r, subs.len(), subs.len());
        for (i, ai) in subs.iter().enumerate() {
            let (ei, ci) = classify(ai);
            for (k, ak) in subs.iter().enumerate() {
                let (ek, ck) = classify(ak);
                if ei.len() != ek.len() {
                    continue;
                }
                let s = ei.len();
                let (Some(pe), Some(pc)) = (&phi_et_by_s[s], &phi_conn_by_t[s]) else {
                    return Err("splitting block missing".into());
                };
                let a = pe.at(pos(he, &ei), pos(he, &ek));
                let b = pc.at(pos(hc, &ci), pos(hc, &ck));
                *phi_split.at_mut(i, k) = r.mul(a, b);
            }
        }
        // transport from the split wedge basis to the standard wedge basis:
        // the columns of g are the split basis, so ⋀^j g converts
        // split-basis wedge coordinates to standard ones
        let g_wedge = compound(r, &g, j);
        let g_wedge_inv = inverse(r, &g_wedge);
        let m = g_wedge.mul(r, &phi_split).mul(r, &g_wedge_inv.apply_sigma(r, 1));
        Ok(SemilinearMap::new(m, 1))
    }

    /// Split off the étale part: the stable image of `V` (where `V` is
    /// bijective) against its stable kernel. Returns `(étale, connected, g)`
    /// with `g` the combined basis (étale columns first, unit determinant).
    pub fn split_etale_connected(&self) -> Option<(DieudonneModule, DieudonneModule, Mat)> {
        let r = &self.ring;
        let h = self.rank;
        let steps = h * r.n * r.sigma_order() as usize + 1;
        let vk = self.v_map.pow(r, steps);
        // stable image: column-reduce V^K, keep unit-pivot columns
        let image_basis = column_reduce_units(r, &vk.mat);
        // stable kernel via the Smith form of V^K
        let kernel_basis = kernel_generators(r, &vk.mat);
        if image_basis.len() + kernel_basis.len() != h {
            return None;
        }
        let he = image_basis.len();
        let mut g = Mat::zeros(r, h, h);
        for (j, col) in image_basis.iter().chain(kernel_basis.iter()).enumerate() {
            g.set_col(j, col);
        }
        if r.valuation(&crate::semilinear::det(r, &g)) != 0 {
            return None;
        }
        let g_inv = inverse(r, &g);
        // transport F and V into the adapted basis and slice the blocks
        let f_new = g_inv
            .mul(r, &self.f_map.mat)
            .mul(r, &g.apply_sigma(r, 1));
        let v_new = g_inv
            .mul(r, &self.v_map.mat)
            .mul(r, &g.apply_sigma(r, -1));
        // off-diagonal blocks must vanish (the parts are V- and F-stable)
        let sub = |m: &Mat, r0: usize, c0: usize, nr: usize, nc: usize| {
            Mat::from_fn(nr, nc, |i, j| m.at(r0 + i, c0 + j).clone())
        };
        for m in [&f_new, &v_new] {
            if !sub(m, 0, he, he, h - he).is_zero(r) || !sub(m, he, 0, h - he, he).is_zero(r) {
                return None;
            }
        }
        let etale = DieudonneModule::new(r.clone(), sub(&f_new, 0, 0, he, he), sub(&v_new, 0, 0, he, he));
        let connected = DieudonneModule::new(
            r.clone(),
            sub(&f_new, he, he, h - he, h - he),
            sub(&v_new, he, he, h - he, h - he),
        );
        if !etale.is_etale() || !connected.is_connected() {
            return None;
        }
        Some((etale, connected, g))
    }

    /// Check the defining diagrams of the operator pair on explicit tuples:
    /// `Υ(x_1∧…∧x_j) = Vx_1∧…∧Vx_j` and
    /// `Φ(Vx_1∧x_2∧…∧x_j) = x_1∧Fx_2∧…∧Fx_j`.
    pub fn verify_diagrams(&self, ext: &ExteriorPower, tuples: &[Vec<Vec<ChainElt>>]) -> bool {
        let r = &self.ring;
        for tuple in tuples {
            let wedge = wedge_vectors(r, tuple);
            let v_images: Vec<Vec<ChainElt>> =
                tuple.iter().map(|x| self.v_map.apply(r, x)).collect();
            if ext.module.v_map.apply(r, &wedge) != wedge_vectors(r, &v_images) {
                return false;
            }
            let mut mixed = Vec::with_capacity(tuple.len());
            mixed.push(self.v_map.apply(r, &tuple[0]));
            for x in &tuple[1..] {
                mixed.push(x.clone());
            }
            let lhs = ext.module.f_map.apply(r, &wedge_vectors(r, &mixed));
            let mut rhs_vecs = Vec::with_capacity(tuple.len());
            rhs_vecs.push(tuple[0].clone());
            for x in &tuple[1..] {
                rhs_vecs.push(self.f_map.apply(r, x));
            }
            if lhs != wedge_vectors(r, &rhs_vecs) {
                return false;
            }
        }
        true
    }
}

/// Kronecker product of matrices over a chain ring
pub fn kron(ring: &ChainRing, a: &Mat, b: &Mat) -> Mat {
    Mat::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        ring.mul(a.at(i / b.rows, j / b.cols), b.at(i % b.rows, j % b.cols))
    })
}

/// columns of `m` that carry unit pivots after column reduction — a basis of
/// the unit part of the column span
fn column_reduce_units(ring: &ChainRing, m: &Mat) -> Vec<Vec<ChainElt>> {
    let mut work = m.clone();
    let mut basis = Vec::new();
    let mut used_rows = vec![false; work.rows];
    for j in 0..work.cols {
        // find a unit pivot in column j among unused rows
        let mut pivot = None;
        for i in 0..work.rows {
            if !used_rows[i] && ring.valuation(work.at(i, j)) == 0 {
                pivot = Some(i);
                break;
            }
        }
        let Some(pi) = pivot else { continue };
        used_rows[pi] = true;
        let inv = ring.inv(work.at(pi, j));
        // normalize and clear the pivot row from later columns
        for i in 0..work.rows {
            let v = ring.mul(work.at(i, j), &inv);
            *work.at_mut(i, j) = v;
        }
        basis.push(work.col(j));
        for jj in j + 1..work.cols {
            let factor = work.at(pi, jj).clone();
            for i in 0..work.rows {
                let t = ring.mul(&factor, work.at(i, j));
                *work.at_mut(i, jj) = ring.sub(work.at(i, jj), &t);
            }
        }
    }
    basis
}

/// Multi-component module for an unramified extension of degree `f` acting
/// on a classical module: components `M_0, …, M_{f-1}`, `v_maps[i]` mapping
/// `M_{i-1 mod f} → M_i` with twist −1 and `f_maps[i]: M_i → M_{i-1 mod f}`
/// with twist +1, `f∘v = v∘f = p`.
#[derive(Clone, Debug)]
pub struct ODieudonneModule {
    pub ring: ChainRing,
    pub f: usize,
    pub rank: usize,
    pub v_maps: Vec<SemilinearMap>,
    pub f_maps: Vec<SemilinearMap>,
}

impl ODieudonneModule {
    pub fn validate(&self) -> Result<(), String> {
        let r = &self.ring;
        if self.v_maps.len() != self.f || self.f_maps.len() != self.f {
            return Err("component count mismatch".into());
        }
        let p_id = Mat::scalar(r, self.rank, &r.from_i64(r.p() as i64));
        for i in 0..self.f {
            let v = &self.v_maps[i];
            let fm = &self.f_maps[i];
            if v.twist != -1 || fm.twist != 1 {
                return Err("twist convention violated".into());
            }
            // f_i ∘ v_i = p on M_{i-1}, v_i ∘ f_i = p on M_i
            if fm.compose(r, v).mat != p_id || v.compose(r, fm).mat != p_id {
                return Err(format!("fv ≠ p at component {}", i));
            }
        }
        Ok(())
    }

    /// `V_π = v_0 ∘ v_{f-1} ∘ … ∘ v_1` as an endomorphism of `M_0`, total
    /// twist −f; returned with the matrix intact so the caller can repackage
    /// it over a ring whose distinguished automorphism is `σ_0^f`
    pub fn v_pi_on_component_zero(&self) -> SemilinearMap {
        let r = &self.ring;
        let mut acc = self.v_maps[1 % self.f].clone();
        for step in 2..=self.f {
            let idx = step % self.f;
            acc = self.v_maps[idx].compose(r, &acc);
        }
        if self.f == 1 {
            acc = self.v_maps[0].clone();
        }
        acc
    }

    /// total dimension: sum of `coker(v_i)` lengths
    pub fn dimension(&self) -> Result<usize, String> {
        let mut total = 0;
        for v in &self.v_maps {
            let sf = smith(&self.ring, &v.mat);
            if sf.divisor_valuations(&self.ring).iter().any(|&x| x >= self.ring.n) {
                return Err("dimension not stabilized at this level".into());
            }
            total += sf.coker_length(&self.ring);
        }
        Ok(total)
    }

    /// the scalar O-action is strict iff all transition maps except the one
    /// into component 0 are bijective
    pub fn has_strict_scalar_action(&self) -> bool {
        (1..self.f).all(|i| {
            let sf = smith(&self.ring, &self.v_maps[i].mat);
            sf.coker_length(&self.ring) == 0
        })
    }

    /// per-component order exponent of the j-th exterior power
    pub fn order_exponent(&self, j: usize) -> usize {
        if j > self.rank {
            0
        } else {
            self.ring.n * binomial(self.rank, j)
        }
    }

    /// componentwise exterior power transitions `Υ_i = ⋀^j v_i`; companion
    /// `f`-side maps would satisfy `f∘v = p^j` (not `p`), so only the
    /// `v`-side is returned
    pub fn exterior_power(&self, j: usize) -> Result<Vec<SemilinearMap>, String> {
        if j == 0 || j > self.rank {
            return Err("exterior power index out of range".into());
        }
        Ok(self
            .v_maps
            .iter()
            .map(|v| SemilinearMap::new(compound(&self.ring, &v.mat, j), -1))
            .collect())
    }
}

/// Regroup a block-structured module over `W_n(k)` (with `F_{p^f}` acting
/// through the block decomposition) into its components: basis positions
/// `[i·r, (i+1)·r)` form component `M_i`, `V` must map `M_{i-1}` into `M_i`
/// and `F` must map `M_i` into `M_{i-1}`.
pub fn decompose_by_idempotents(d: &DieudonneModule, f: usize) -> Option<ODieudonneModule> {
    let r = &d.ring;
    let h = d.rank;
    if f == 0 || h % f != 0 {
        return None;
    }
    let rank = h / f;
    let block = |m: &Mat, bi: usize, bj: usize| {
        Mat::from_fn(rank, rank, |i, j| m.at(bi * rank + i, bj * rank + j).clone())
    };
    // V: block (i, i-1) may be nonzero; everything else must vanish
    for bi in 0..f {
        for bj in 0..f {
            let expect_v = bj == (bi + f - 1) % f;
            if !expect_v && !block(&d.v_map.mat, bi, bj).is_zero(r) {
                return None;
            }
            let expect_f = bi == (bj + f - 1) % f;
            if !expect_f && !block(&d.f_map.mat, bi, bj).is_zero(r) {
                return None;
            }
        }
    }
    let v_maps = (0..f)
        .map(|i| SemilinearMap::new(block(&d.v_map.mat, i, (i + f - 1) % f), -1))
        .collect();
    let f_maps = (0..f)
        .map(|i| SemilinearMap::new(block(&d.f_map.mat, (i + f - 1) % f, i), 1))
        .collect();
    let od = ODieudonneModule {
        ring: r.clone(),
        f,
        rank,
        v_maps,
        f_maps,
    };
    od.validate().ok()?;
    Some(od)
}

/// Level-tower embedding `η: ⋀^j M_m → ⋀^j M_{n+m}`, `x ↦ π^n · lift(x)`,
/// on wedge coordinates. `small` must be the level-m reduction of `big`.
pub fn tower_eta(
    big: &ChainRing,
    small: &ChainRing,
    coords: &[ChainElt],
    n_shift: usize,
) -> Vec<ChainElt> {
    let scale = big.pow(&big.uniformizer(), n_shift as u64);
    coords
        .iter()
        .map(|c| big.mul(&big.lift_elt(small, c), &scale))
        .collect()
}
