//! Displays at finite Witt length: a free `W_m(R)`-module `P = L ⊕ T` with
//! an invertible structural matrix `A` whose columns are `V⁻¹(l_i)` (for the
//! L-block) and `F(t_j)` (for the T-block). Provides validation, the
//! `V`-nilpotence test over non-perfect bases, exterior powers for tangent
//! rank 1, conversion to and from Dieudonné modules over perfect residue
//! fields, coefficient base change, independence of the normal decomposition,
//! and a finite universal-property check for the wedge pairing.

use crate::dieudonne::DieudonneModule;
use crate::ring::{ChainElt, ChainRing};
use crate::semilinear::{binomial, smith, solve, subsets_lex, twisted_nilpotency, Mat, SemilinearMap};
use crate::witt::{chain_from_witt_coords, witt_coords_from_chain, WittElt, WittRing};

/// dense matrix with truncated-Witt-vector entries, row-major
#[derive(Clone, Debug, PartialEq)]
pub struct WMat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<WittElt>,
}

impl WMat {
    pub fn zeros(wr: &WittRing, rows: usize, cols: usize) -> Self {
        WMat {
            rows,
            cols,
            entries: vec![wr.zero(); rows * cols],
        }
    }

    pub fn identity(wr: &WittRing, n: usize) -> Self {
        let mut m = Self::zeros(wr, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = wr.one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> WittElt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        WMat { rows, cols, entries }
    }

    pub fn at(&self, i: usize, j: usize) -> &WittElt {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut WittElt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn mul(&self, wr: &WittRing, other: &WMat) -> WMat {
        assert_eq!(self.cols, other.rows);
        WMat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = wr.zero();
            for k in 0..self.cols {
                acc = wr.add(&acc, &wr.mul(self.at(i, k), other.at(k, j)));
            }
            acc
        })
    }

    pub fn mul_vec(&self, wr: &WittRing, v: &[WittElt]) -> Vec<WittElt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = wr.zero();
                for k in 0..self.cols {
                    acc = wr.add(&acc, &wr.mul(self.at(i, k), &v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn map(&self, mut f: impl FnMut(&WittElt) -> WittElt) -> WMat {
        WMat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| f(e)).collect(),
        }
    }

    /// coordinatewise Witt Frobenius (perfect base only)
    pub fn apply_sigma(&self, wr: &WittRing, k: i64) -> WMat {
        self.map(|e| wr.sigma_pow(e, k))
    }

    pub fn det(&self, wr: &WittRing) -> WittElt {
        assert_eq!(self.rows, self.cols);
        det_laplace(wr, self)
    }

    /// matrix inverse: over a perfect base field through the Galois-ring
    /// model, otherwise by the adjugate (sizes up to 4)
    pub fn inverse(&self, wr: &WittRing) -> WMat {
        assert_eq!(self.rows, self.cols);
        if wr.base.n == 1 {
            let chain = ChainRing::witt_truncation(wr.p(), wr.depth(), wr.base.gr.s);
            let cm = wmat_to_chain(wr, &chain, self);
            let inv = crate::semilinear::inverse(&chain, &cm);
            return wmat_from_chain(wr, &chain, &inv);
        }
        assert!(self.rows <= 4, "adjugate inverse limited to small sizes");
        let d = self.det(wr);
        let dinv = wr.inverse(&d);
        let n = self.rows;
        let adj = WMat::from_fn(n, n, |i, j| {
            // cofactor C_{ji}
            let sub = WMat::from_fn(n - 1, n - 1, |r, c| {
                let rr = if r < j { r } else { r + 1 };
                let cc = if c < i { c } else { c + 1 };
                self.at(rr, cc).clone()
            });
            let mut m = det_laplace(wr, &sub);
            if (i + j) % 2 == 1 {
                m = wr.neg(&m);
            }
            m
        });
        let inv = adj.map(|e| wr.mul(e, &dinv));
        assert_eq!(self.mul(wr, &inv), WMat::identity(wr, n), "inverse verification failed");
        inv
    }

    /// first Witt coordinates: the reduction of every entry modulo
    /// `I_R + pW` (both land in the first coordinate)
    pub fn first_coords(&self, wr: &WittRing, _base: &ChainRing) -> Mat {
        let _ = wr;
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e[0].clone()).collect(),
        }
    }
}

fn det_laplace(wr: &WittRing, m: &WMat) -> WittElt {
    let n = m.rows;
    if n == 0 {
        return wr.one();
    }
    if n == 1 {
        return m.at(0, 0).clone();
    }
    let mut acc = wr.zero();
    for i in 0..n {
        if wr.is_zero(m.at(i, 0)) {
            continue;
        }
        let sub = WMat::from_fn(n - 1, n - 1, |r, c| {
            let rr = if r < i { r } else { r + 1 };
            m.at(rr, c + 1).clone()
        });
        let term = wr.mul(m.at(i, 0), &det_laplace(wr, &sub));
        if i % 2 == 0 {
            acc = wr.add(&acc, &term);
        } else {
            acc = wr.sub(&acc, &term);
        }
    }
    acc
}

/// convert a Witt-coordinate matrix into the Galois-ring model (perfect base)
pub fn wmat_to_chain(wr: &WittRing, chain: &ChainRing, m: &WMat) -> Mat {
    Mat {
        rows: m.rows,
        cols: m.cols,
        entries: m
            .entries
            .iter()
            .map(|e| chain_from_witt_coords(wr, chain, e))
            .collect(),
    }
}

pub fn wmat_from_chain(wr: &WittRing, chain: &ChainRing, m: &Mat) -> WMat {
    WMat {
        rows: m.rows,
        cols: m.cols,
        entries: m
            .entries
            .iter()
            .map(|e| witt_coords_from_chain(wr, chain, e))
            .collect(),
    }
}

/// A display at Witt length m: `P = L ⊕ T` (ranks `rank_l`, `rank_t`) with
/// invertible structural matrix whose columns are `V⁻¹` on the L-basis and
/// `F` on the T-basis.
#[derive(Clone)]
pub struct Display {
    pub witt: WittRing,
    pub rank_l: usize,
    pub rank_t: usize,
    pub structural: WMat,
}

impl Display {
    pub fn new(witt: WittRing, rank_l: usize, rank_t: usize, structural: WMat) -> Self {
        Display {
            witt,
            rank_l,
            rank_t,
            structural,
        }
    }

    pub fn height(&self) -> usize {
        self.rank_l + self.rank_t
    }

    /// tangent rank: the rank of the T-block
    pub fn tangent_rank(&self) -> usize {
        self.rank_t
    }

    /// shapes and invertibility of the structural matrix
    pub fn validate(&self) -> Result<(), String> {
        let h = self.height();
        if self.structural.rows != h || self.structural.cols != h {
            return Err("structural matrix shape mismatch".into());
        }
        let d = self.structural.det(&self.witt);
        if !self.witt.is_unit(&d) {
            return Err("structural matrix not invertible".into());
        }
        Ok(())
    }

    /// the Frobenius matrix `M_F = A·diag(p,…,p; 1,…,1)` (twist +1)
    pub fn f_matrix(&self) -> WMat {
        let wr = &self.witt;
        let p = wr.from_i64(wr.p() as i64);
        WMat::from_fn(self.height(), self.height(), |i, j| {
            if j < self.rank_l {
                wr.mul(self.structural.at(i, j), &p)
            } else {
                self.structural.at(i, j).clone()
            }
        })
    }

    /// `V^♯: P → W ⊗_F P` as a plain-linear matrix `diag(1,…,1; p,…,p)·A⁻¹`
    /// (the Frobenius twist is carried by the target module structure)
    pub fn v_sharp(&self) -> WMat {
        let wr = &self.witt;
        let inv = self.structural.inverse(wr);
        let p = wr.from_i64(wr.p() as i64);
        WMat::from_fn(self.height(), self.height(), |i, j| {
            if i < self.rank_l {
                inv.at(i, j).clone()
            } else {
                wr.mul(inv.at(i, j), &p)
            }
        })
    }

    /// `F^♯∘V^♯ = V^♯∘F^♯ = p` (composites against the canonical map)
    pub fn sharp_composites_are_p(&self) -> bool {
        let wr = &self.witt;
        let h = self.height();
        let p = wr.from_i64(wr.p() as i64);
        let pid = WMat::from_fn(h, h, |i, j| if i == j { p.clone() } else { wr.zero() });
        let m = self.v_sharp();
        let mf = self.f_matrix();
        m.mul(wr, &mf) == pid && mf.mul(wr, &m) == pid
    }

    /// V-nilpotence: reduce `V^♯` modulo `I_R + pW` (first Witt coordinate)
    /// and test twisted nilpotency of the transpose with twist +1 — the
    /// transpose converts the composite `F^{k-1}(M)···F(M)·M` into an
    /// ordinary twisted power, which works over non-perfect bases
    pub fn nilpotence_test(&self) -> bool {
        let wr = &self.witt;
        let base = &wr.base;
        let h = self.height();
        // Ā over R and M̄ = diag(1,…,1; 0,…,0)·Ā⁻¹ (p reduces to 0)
        let a_bar = self.structural.first_coords(wr, base);
        let a_inv = crate::semilinear::inverse(base, &a_bar);
        let m_bar = Mat::from_fn(h, h, |i, j| {
            if i < self.rank_l {
                a_inv.at(i, j).clone()
            } else {
                base.zero()
            }
        });
        let bound = h * base.n * base.sigma_order() as usize + 1;
        twisted_nilpotency(base, &SemilinearMap::new(m_bar.transpose(), 1), bound)
    }

    /// exterior power for tangent rank 1: the structural matrix is the r-th
    /// compound of `A`, re-indexed so that wedge basis vectors avoiding the
    /// T-index come first (the new L-block), followed by those containing it
    /// (the new T-block)
    pub fn exterior_power(&self, r: usize) -> Result<Display, String> {
        if self.rank_t != 1 {
            return Err("exterior powers require tangent rank 1".into());
        }
        let h = self.height();
        if r == 0 || r > h {
            return Err("exterior power index out of range".into());
        }
        let wr = &self.witt;
        let subs = subsets_lex(h, r);
        // compound matrix in the plain lexicographic order
        let compound = WMat::from_fn(subs.len(), subs.len(), |i, j| {
            let sub = WMat::from_fn(r, r, |a, b| self.structural.at(subs[i][a], subs[j][b]).clone());
            det_laplace(wr, &sub)
        });
        // permutation: L-wedges (not containing h-1) first, then T-wedges
        let mut order: Vec<usize> = Vec::with_capacity(subs.len());
        for (i, s) in subs.iter().enumerate() {
            if !s.contains(&(h - 1)) {
                order.push(i);
            }
        }
        let rank_l_new = order.len();
        for (i, s) in subs.iter().enumerate() {
            if s.contains(&(h - 1)) {
                order.push(i);
            }
        }
        let permuted = WMat::from_fn(subs.len(), subs.len(), |i, j| {
            compound.at(order[i], order[j]).clone()
        });
        debug_assert_eq!(rank_l_new, binomial(h - 1, r));
        Ok(Display::new(
            wr.clone(),
            rank_l_new,
            subs.len() - rank_l_new,
            permuted,
        ))
    }

    /// coefficient base change along a characteristic-p ring map `R → R'`
    /// (applied to every Witt coordinate)
    pub fn base_change(
        &self,
        target: &WittRing,
        hom: impl Fn(&ChainElt) -> ChainElt,
    ) -> Display {
        assert_eq!(target.p(), self.witt.p());
        assert_eq!(target.depth(), self.witt.depth());
        let structural = self
            .structural
            .map(|e| e.iter().map(&hom).collect::<WittElt>());
        Display::new(target.clone(), self.rank_l, self.rank_t, structural)
    }

    /// A change of the normal decomposition `L ⊕ T` (tangent rank 1):
    /// `l'_j = Σ U_{ij} l_i`, `t' = (d + V(b))·t + Σ a_i l_i`. The structural
    /// matrix transforms as `A' = g⁻¹·A·T_g` with
    /// `T_g = [[σ(U), p·σ(a)], [0, σ(d) + p·b]]` (perfect base) and `g` the
    /// basis-change matrix; the left factor re-expresses the structural
    /// columns in the new basis.
    pub fn decomposition_change(
        &self,
        u: &WMat,
        a: &[WittElt],
        d: &WittElt,
        b: &WittElt,
    ) -> Display {
        assert_eq!(self.rank_t, 1);
        let wr = &self.witt;
        let l = self.rank_l;
        let h = self.height();
        let p = wr.from_i64(wr.p() as i64);
        let mut tg = WMat::zeros(wr, h, h);
        for i in 0..l {
            for j in 0..l {
                *tg.at_mut(i, j) = wr.sigma(u.at(i, j));
            }
            *tg.at_mut(i, l) = wr.mul(&p, &wr.sigma(&a[i]));
        }
        *tg.at_mut(l, l) = wr.add(&wr.sigma(d), &wr.mul(&p, b));
        let g = basis_change_matrix(wr, l, u, a, d, b);
        let structural = g.inverse(wr).mul(wr, &self.structural).mul(wr, &tg);
        Display::new(wr.clone(), self.rank_l, self.rank_t, structural)
    }

    /// the exterior power does not depend on the normal decomposition: for a
    /// decomposition change `g`, the two exterior structural matrices give
    /// Frobenius matrices related by `M_F' = g_∧⁻¹ · M_F · σ(g_∧)` with
    /// `g_∧` the compound of the basis-change matrix
    pub fn decomposition_independence_check(
        &self,
        r: usize,
        u: &WMat,
        a: &[WittElt],
        d: &WittElt,
        b: &WittElt,
    ) -> Result<bool, String> {
        assert!(self.witt.base.n == 1, "needs a perfect base field");
        let wr = &self.witt;
        let l = self.rank_l;
        let h = self.height();
        let g = basis_change_matrix(wr, l, u, a, d, b);
        let changed = self.decomposition_change(u, a, d, b);
        let e1 = self.exterior_power(r)?;
        let e2 = changed.exterior_power(r)?;
        // compound of g in the same re-indexed wedge order as exterior_power
        let subs = subsets_lex(h, r);
        let mut order: Vec<usize> = subs
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.contains(&(h - 1)))
            .map(|(i, _)| i)
            .collect();
        order.extend(
            subs.iter()
                .enumerate()
                .filter(|(_, s)| s.contains(&(h - 1)))
                .map(|(i, _)| i),
        );
        let g_wedge = WMat::from_fn(subs.len(), subs.len(), |i, j| {
            let sub = WMat::from_fn(r, r, |x, y| {
                g.at(subs[order[i]][x], subs[order[j]][y]).clone()
            });
            det_laplace(wr, &sub)
        });
        let lhs = e2.f_matrix();
        let rhs = g_wedge
            .inverse(wr)
            .mul(wr, &e1.f_matrix())
            .mul(wr, &g_wedge.apply_sigma(wr, 1));
        Ok(lhs == rhs)
    }

    /// the Dieudonné module of the display over a perfect base field:
    /// `M_F = A·D_p`, `M_V = σ⁻¹(D'·A⁻¹)` over `W_m(k)` (exact, no division)
    pub fn to_dieudonne(&self) -> DieudonneModule {
        let wr = &self.witt;
        assert!(wr.base.n == 1, "needs a perfect base field");
        let chain = ChainRing::witt_truncation(wr.p(), wr.depth(), wr.base.gr.s);
        let a = wmat_to_chain(wr, &chain, &self.structural);
        let h = self.height();
        let p = chain.from_i64(chain.p() as i64);
        let m_f = Mat::from_fn(h, h, |i, j| {
            if j < self.rank_l {
                chain.mul(a.at(i, j), &p)
            } else {
                a.at(i, j).clone()
            }
        });
        let a_inv = crate::semilinear::inverse(&chain, &a);
        let m_v = Mat::from_fn(h, h, |i, j| {
            let e = if i < self.rank_l {
                a_inv.at(i, j).clone()
            } else {
                chain.mul(a_inv.at(i, j), &p)
            };
            chain.sigma_pow(&e, -1)
        });
        DieudonneModule::new(chain, m_f, m_v)
    }
}

/// basis-change matrix of a normal-decomposition change (tangent rank 1):
/// columns express the new basis `(l'_1, …, l'_L, t')` in the old one;
/// the t-column is `(a, d + V(b))`
fn basis_change_matrix(
    wr: &WittRing,
    rank_l: usize,
    u: &WMat,
    a: &[WittElt],
    d: &WittElt,
    b: &WittElt,
) -> WMat {
    let h = rank_l + 1;
    let mut g = WMat::identity(wr, h);
    for i in 0..rank_l {
        for j in 0..rank_l {
            *g.at_mut(i, j) = u.at(i, j).clone();
        }
        *g.at_mut(i, rank_l) = a[i].clone();
    }
    *g.at_mut(rank_l, rank_l) = wr.add(d, &wr.verschiebung(b));
    g
}

/// Build a display from a Dieudonné module over `W_n(k)` (perfect `k`).
/// Returns the display (at Witt length n) and the basis-change matrix `g`
/// into the adapted basis; the roundtrip satisfies
/// `to_dieudonne(display) = g⁻¹·(original)·g` as modules. Fails when some
/// elementary divisor of `V` has valuation ≥ 2 (not a display).
pub fn from_dieudonne(d: &DieudonneModule) -> Result<(Display, Mat), String> {
    let chain = &d.ring;
    if chain.e != 1 {
        return Err("classical modules only".into());
    }
    let h = d.rank;
    let sf = smith(chain, &d.v_map.mat);
    let vals = sf.divisor_valuations(chain);
    if vals.iter().any(|&v| v > 1) {
        return Err("V has an elementary divisor of valuation ≥ 2: not a display".into());
    }
    let rank_l = vals.iter().filter(|&&v| v == 0).count();
    let rank_t = h - rank_l;
    // adapted basis g = U⁻¹ (pivot order puts unit divisors first)
    let u = sf.u.clone();
    let u_inv = crate::semilinear::inverse(chain, &u);
    let m_v_new = u
        .mul(chain, &d.v_map.mat)
        .mul(chain, &u_inv.apply_sigma(chain, -1));
    let m_f_new = u
        .mul(chain, &d.f_map.mat)
        .mul(chain, &u_inv.apply_sigma(chain, 1));
    // structural columns: V⁻¹ on the L-basis, F on the T-basis
    let mut a = Mat::zeros(chain, h, h);
    for j in 0..rank_l {
        let mut e = Mat::zeros(chain, h, 1);
        *e.at_mut(j, 0) = chain.one();
        let (x, _) = solve(chain, &m_v_new, &e).ok_or("V⁻¹ on the L-part not solvable")?;
        for i in 0..h {
            *a.at_mut(i, j) = chain.sigma(x.at(i, 0));
        }
    }
    for j in rank_l..h {
        for i in 0..h {
            *a.at_mut(i, j) = m_f_new.at(i, j).clone();
        }
    }
    // exactness of the construction: σ(M_V,new)·A = D' and A·D_p = M_F,new
    let p = chain.from_i64(chain.p() as i64);
    let d_prime = Mat::from_fn(h, h, |i, j| {
        if i != j {
            chain.zero()
        } else if i < rank_l {
            chain.one()
        } else {
            p.clone()
        }
    });
    if m_v_new.apply_sigma(chain, 1).mul(chain, &a) != d_prime {
        return Err("structural matrix does not invert V".into());
    }
    let a_dp = Mat::from_fn(h, h, |i, j| {
        if j < rank_l {
            chain.mul(a.at(i, j), &p)
        } else {
            a.at(i, j).clone()
        }
    });
    if a_dp != m_f_new {
        return Err("structural matrix does not reproduce F".into());
    }
    let table = crate::witt::build_witt_table(chain.p(), chain.n);
    let base = chain.residue_field();
    let wr = WittRing::new(table, base);
    let structural = wmat_from_chain(&wr, chain, &a);
    let disp = Display::new(wr, rank_l, rank_t, structural);
    disp.validate()?;
    Ok((disp, u_inv))
}

/// Finite universal-property check for the wedge pairing at height 2,
/// tangent rank 1, Witt length 2 over F_3: alternating bilinear pairings
/// `φ` on `P` with `φ(V⁻¹q₁, V⁻¹q₂) = V⁻¹φ(q₁, q₂)` on `Q×Q` correspond
/// bijectively to display morphisms `⋀²P → N` via composition with
/// `λ(x, y) = x∧y`.
pub fn universal_property_check() -> bool {
    let p = 3u64;
    let table = crate::witt::build_witt_table(p, 2);
    let base = ChainRing::equal_char(p, 1, 1, 1);
    let wr = WittRing::new(table, base);
    // supersingular display: A = antidiag(1, 1), L = {e_0}, T = {e_1}
    let mut a = WMat::zeros(&wr, 2, 2);
    *a.at_mut(0, 1) = wr.one();
    *a.at_mut(1, 0) = wr.one();
    let disp = Display::new(wr.clone(), 1, 1, a);
    disp.validate().unwrap();
    let ext = disp.exterior_power(2).unwrap(); // rank 1, all T
    let n_struct = ext.structural.at(0, 0).clone();
    let w_all = wr.enumerate(); // 9 elements of W_2(F_3)
    // Q is generated by l = e_0 and V(w)·t; its V⁻¹-values:
    //   V⁻¹(l) = A column 0, V⁻¹(V(w)t) = w·F(t) = w·(A column 1)
    let col = |j: usize| -> Vec<WittElt> { vec![disp.structural.at(0, j).clone(), disp.structural.at(1, j).clone()] };
    let v_inv_l = col(0);
    let f_t = col(1);
    // On N = ⋀²P (rank 1, all T): Q_N = V(W)·t_N and V⁻¹(V(w)·t_N) = w·A_N.
    // An alternating W-bilinear φ is determined by c = φ(e_0, e_1) ∈ W_2;
    // φ(x, y) = (x_0 y_1 - x_1 y_0)·c in coordinates.
    let pair = |x: &[WittElt], y: &[WittElt], c: &WittElt| -> WittElt {
        let d = wr.sub(&wr.mul(&x[0], &y[1]), &wr.mul(&x[1], &y[0]));
        wr.mul(&d, c)
    };
    // V-condition on generators of Q, composed with V_N so every identity
    // is exact at full length (no division): for q₁ = l, q₂ = V(w)t the
    // condition φ(V⁻¹q₁, V⁻¹q₂) = V⁻¹_N(φ(q₁, q₂)) becomes
    //   V(φ(V⁻¹l, w·F(t))·A_N⁻¹) = φ(l, V(w)t) = V(w)·c.
    // V_N on the rank-1 all-T module sends y to V(y·A_N⁻¹) since
    // V_N(u·F_N(t_N)) = V(u)·t_N. Pairs of equal generator type vanish by
    // alternation, and bilinearity reduces general elements of Q to these.
    let n_inv = wr.inverse(&n_struct);
    let mut valid_pairings = Vec::new();
    'cand: for c in &w_all {
        for w in &w_all {
            let vw = wr.verschiebung(w);
            let q2_vinv: Vec<WittElt> = f_t.iter().map(|e| wr.mul(e, w)).collect();
            let lhs = wr.verschiebung(&wr.mul(&pair(&v_inv_l, &q2_vinv, c), &n_inv));
            let rhs = wr.mul(&vw, c);
            if lhs != rhs {
                continue 'cand;
            }
        }
        valid_pairings.push(c.clone());
    }
    // display morphisms g: ⋀²P → N (both rank 1, all T), same V-composed
    // form: g commutes with V⁻¹ on Q_E iff V(w·γ·A_E·A_N⁻¹) = V(w)·γ
    let a_ext = ext.structural.at(0, 0).clone();
    let mut homs = Vec::new();
    'hom: for g in &w_all {
        for w in &w_all {
            let lhs = wr.verschiebung(&wr.mul(&wr.mul(&wr.mul(w, g), &a_ext), &n_inv));
            let rhs = wr.mul(&wr.verschiebung(w), g);
            if lhs != rhs {
                continue 'hom;
            }
        }
        homs.push(g.clone());
    }
    // bijection via composition with λ: φ_g(e_0, e_1) = g·(e_0 ∧ e_1) = g
    if homs.len() != valid_pairings.len() || homs.len() < 2 {
        // the zero map and the identity-coefficient map always qualify,
        // so fewer than two solutions means the check is vacuous
        return false;
    }
    let mut mapped: Vec<WittElt> = homs.clone();
    mapped.sort_by_key(|e| format!("{:?}", e));
    let mut sols = valid_pairings.clone();
    sols.sort_by_key(|e| format!("{:?}", e));
    mapped == sols
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witt_ring(p: u64, m: usize, s: u32) -> WittRing {
        WittRing::new(crate::witt::build_witt_table(p, m), ChainRing::equal_char(p, s, 1, 1))
    }

    fn supersingular_display(wr: &WittRing) -> Display {
        let mut a = WMat::zeros(wr, 2, 2);
        *a.at_mut(0, 1) = wr.one();
        *a.at_mut(1, 0) = wr.one();
        Display::new(wr.clone(), 1, 1, a)
    }

    #[test]
    fn nilpotence_classification() {
        let wr = witt_ring(3, 2, 1);
        // multiplicative: h=1, all T, structural (1) → nilpotent
        let mult = Display::new(wr.clone(), 0, 1, WMat::identity(&wr, 1));
        mult.validate().unwrap();
        assert!(mult.nilpotence_test());
        // étale: h=1, all L → not nilpotent
        let etale = Display::new(wr.clone(), 1, 0, WMat::identity(&wr, 1));
        etale.validate().unwrap();
        assert!(!etale.nilpotence_test());
        // supersingular: nilpotent (exponent 2)
        let ss = supersingular_display(&wr);
        ss.validate().unwrap();
        assert!(ss.nilpotence_test());
        // structural diag(p, 1) is not invertible → invalid
        let p = wr.from_i64(3);
        let mut bad = WMat::identity(&wr, 2);
        *bad.at_mut(0, 0) = p;
        assert!(Display::new(wr.clone(), 1, 1, bad).validate().is_err());
    }

    #[test]
    fn sharp_composites() {
        let wr = witt_ring(3, 2, 1);
        let ss = supersingular_display(&wr);
        assert!(ss.sharp_composites_are_p());
        // and over the non-perfect base k[ε]
        let wre = WittRing::new(
            crate::witt::build_witt_table(3, 2),
            ChainRing::equal_char(3, 1, 2, 1),
        );
        let mut a = WMat::zeros(&wre, 2, 2);
        *a.at_mut(0, 1) = wre.one();
        let mut e10 = wre.one();
        // perturb with a nilpotent coefficient: 1 + ε in the first coordinate
        e10[0] = wre.base.add(&e10[0], &wre.base.uniformizer());
        *a.at_mut(1, 0) = e10;
        let d = Display::new(wre.clone(), 1, 1, a);
        d.validate().unwrap();
        assert!(d.sharp_composites_are_p());
        assert!(d.nilpotence_test());
    }

    #[test]
    fn to_dieudonne_supersingular() {
        let wr = witt_ring(5, 2, 1);
        let ss = supersingular_display(&wr);
        let d = ss.to_dieudonne();
        d.validate().unwrap();
        assert!(d.is_connected());
        assert_eq!(d.dimension().unwrap(), 1);
        assert_eq!(d.rank, 2);
    }

    #[test]
    fn roundtrip_from_dieudonne_f4() {
        // exhaustive-ish roundtrip on W_2(F_4): supersingular and étale⊕mult
        let chain = ChainRing::witt_truncation(2, 2, 2);
        let p = chain.from_i64(2);
        let mk = |entries: Vec<ChainElt>| Mat { rows: 2, cols: 2, entries };
        let ss_f = mk(vec![chain.zero(), p.clone(), chain.one(), chain.zero()]);
        let ss_v = mk(vec![chain.zero(), p.clone(), chain.one(), chain.zero()]);
        let d = DieudonneModule::new(chain.clone(), ss_f, ss_v);
        d.validate().unwrap();
        let (disp, g) = from_dieudonne(&d).unwrap();
        disp.validate().unwrap();
        assert_eq!(disp.rank_l + disp.rank_t, 2);
        assert_eq!(disp.rank_t, 1); // dimension 1
        let d2 = disp.to_dieudonne();
        d2.validate().unwrap();
        // d2 = g⁻¹·d·g (the adapted basis): compare after conjugating back
        let g_inv = crate::semilinear::inverse(&chain, &g);
        let f_back = g.mul(&chain, &d2.f_map.mat).mul(&chain, &g_inv.apply_sigma(&chain, 1));
        let v_back = g.mul(&chain, &d2.v_map.mat).mul(&chain, &g_inv.apply_sigma(&chain, -1));
        assert_eq!(f_back, d.f_map.mat);
        assert_eq!(v_back, d.v_map.mat);
    }

    #[test]
    fn exterior_ranks_and_tangent() {
        // height C(h,r), tangent rank C(h-1, r-1), including r = h → (1,1)
        let wr = witt_ring(3, 2, 1);
        for h in 2..=5usize {
            // Lubin-Tate-like structural: companion-style invertible matrix
            let mut a = WMat::zeros(&wr, h, h);
            for i in 0..h - 1 {
                *a.at_mut(i + 1, i) = wr.one();
            }
            *a.at_mut(0, h - 1) = wr.one();
            let disp = Display::new(wr.clone(), h - 1, 1, a);
            disp.validate().unwrap();
            for r in 1..=h {
                let ext = disp.exterior_power(r).unwrap();
                ext.validate().unwrap();
                assert_eq!(ext.height(), binomial(h, r));
                assert_eq!(ext.tangent_rank(), binomial(h - 1, r - 1));
                if r == h {
                    assert_eq!(ext.height(), 1);
                    assert_eq!(ext.tangent_rank(), 1);
                }
            }
        }
    }

    #[test]
    fn exterior_commutes_with_to_dieudonne() {
        // ⋀² at the module level vs the display level agree up to the wedge
        // operator pair: Υ matrices coincide (same wedge basis order up to
        // the L/T re-indexing permutation)
        let wr = witt_ring(3, 2, 1);
        let ss = supersingular_display(&wr);
        let ext = ss.exterior_power(2).unwrap();
        let d_ext = ext.to_dieudonne();
        d_ext.validate().unwrap();
        let d = ss.to_dieudonne();
        let m_ext = d.exterior_power(2).unwrap();
        // rank-1 wedge: no permutation; V matrices must agree
        assert_eq!(d_ext.v_map.mat, m_ext.module.v_map.mat);
        assert_eq!(d_ext.f_map.mat, m_ext.module.f_map.mat);
    }

    #[test]
    fn base_change_coefficients() {
        // extend scalars F_3 → F_9 entrywise and check validity is preserved
        let wr = witt_ring(3, 2, 1);
        let ss = supersingular_display(&wr);
        let target_base = ChainRing::equal_char(3, 2, 1, 1);
        let wr9 = WittRing::new(crate::witt::build_witt_table(3, 2), target_base.clone());
        let f3 = wr.base.clone();
        let hom = |e: &ChainElt| {
            let emb = target_base.gr.embed_from(&f3.gr, &e.coeffs[0]);
            let mut out = target_base.zero();
            out.coeffs[0] = emb;
            target_base.canonicalize(out.coeffs)
        };
        let moved = ss.base_change(&wr9, hom);
        moved.validate().unwrap();
        assert!(moved.nilpotence_test());
        // Frobenius matrices commute with the coefficient change
        let mf_then_move = ss.f_matrix().map(|e| e.iter().map(&hom).collect::<WittElt>());
        let move_then_mf = moved.f_matrix();
        assert_eq!(mf_then_move, move_then_mf);
    }

    #[test]
    fn decomposition_independence() {
        let wr = witt_ring(3, 2, 1);
        // height 3 display, tangent rank 1
        let mut a = WMat::zeros(&wr, 3, 3);
        *a.at_mut(1, 0) = wr.one();
        *a.at_mut(2, 1) = wr.one();
        *a.at_mut(0, 2) = wr.one();
        let disp = Display::new(wr.clone(), 2, 1, a);
        disp.validate().unwrap();
        let mut u = WMat::identity(&wr, 2);
        *u.at_mut(0, 1) = wr.from_i64(2);
        let avec = vec![wr.from_i64(1), wr.teichmuller(&wr.base.from_i64(2))];
        let d = wr.from_i64(1);
        let b = wr.from_i64(2);
        assert!(disp
            .decomposition_independence_check(2, &u, &avec, &d, &b)
            .unwrap());
        // changed display still validates and is nilpotence-equivalent
        let changed = disp.decomposition_change(&u, &avec, &d, &b);
        changed.validate().unwrap();
        assert_eq!(changed.nilpotence_test(), disp.nilpotence_test());
    }

    #[test]
    fn universal_property_small() {
        assert!(universal_property_check());
    }
}
