//! Scalar 2-cocycles on 𝒢(n,p): coboundaries, closedness, exactness,
//! radicals, symplectic orthogonals and the left-symmetric product.
//!
//! Sign convention: δξ(a, b) = −⟨ξ, [a, b]⟩.

use crate::error::{Error, Result};
use crate::liealg::{AlgElem, Algebra, Covector, Params};
use crate::matrix::{axpy, dot, is_zero_vec, vec_sub, Matrix};
use crate::scalar::Scalar;

/// A skew form stored as its matrix on canonical basis pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm<F> {
    pub params: Params,
    pub mat: Matrix<F>,
}

impl<F: Scalar> TwoForm<F> {
    pub fn new(params: Params, mat: Matrix<F>) -> Result<Self> {
        let d = params.dim();
        if mat.shape() != (d, d) {
            return Err(Error::Shape(format!("2-form matrix must be {d}x{d}")));
        }
        for i in 0..d {
            for j in i..d {
                if mat[(i, j)] != -mat[(j, i)].clone() {
                    return Err(Error::PreconditionViolated("2-form matrix is not skew".into()));
                }
            }
        }
        Ok(Self { params, mat })
    }

    pub fn zero(params: Params) -> Self {
        let d = params.dim();
        Self {
            params,
            mat: Matrix::zeros(d, d),
        }
    }

    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    /// ω(a, b) on coordinate vectors.
    pub fn eval(&self, a: &[F], b: &[F]) -> F {
        dot(a, &self.mat.mul_vec(b))
    }

    /// ω(a, eⱼ) for every j, i.e. the row vector aᵀ·mat.
    pub fn contract_left(&self, a: &[F]) -> Vec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); d];
        for (i, ai) in a.iter().enumerate() {
            if !ai.is_zero() {
                axpy(&mut out, ai, &self.mat.row(i));
            }
        }
        out
    }

    pub fn eval_elems(&self, a: &AlgElem<F>, b: &AlgElem<F>) -> F {
        self.eval(&a.coords(), &b.coords())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            params: self.params,
            mat: self.mat.add(&o.mat),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Self {
            params: self.params,
            mat: self.mat.scale(s),
        }
    }

    /// Pullback by a linear map given as a d×d matrix on coordinates:
    /// (φ*ω)(a, b) = ω(φa, φb).
    pub fn pullback(&self, phi: &Matrix<F>) -> Self {
        Self {
            params: self.params,
            mat: phi.transpose().mul(&self.mat).mul(phi),
        }
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }
}

/// A linear subspace of a coordinate space, kept with a reduced row echelon
/// basis so that equal subspaces have equal bases.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Subspace<F> {
    pub fn from_vectors(ambient: usize, vectors: &[Vec<F>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
        }
        let m = Matrix::from_rows(vectors.to_vec()).expect("uniform lengths");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Self { ambient, basis, pivots }
    }

    pub fn from_elems(params: Params, elems: &[AlgElem<F>]) -> Self {
        let v: Vec<Vec<F>> = elems.iter().map(AlgElem::coords).collect();
        Self::from_vectors(params.dim(), &v)
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![F::zero(); ambient];
                v[i] = F::one();
                v
            })
            .collect();
        Self {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn elements(&self, params: Params) -> Vec<AlgElem<F>> {
        self.basis.iter().map(|v| AlgElem::from_coords(params, v)).collect()
    }

    /// Residual of v after elimination against the echelon basis.
    fn residual(&self, v: &[F]) -> Vec<F> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if !c.is_zero() {
                axpy(&mut r, &-c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[F]) -> bool {
        is_zero_vec(&self.residual(v))
    }

    pub fn contains_subspace(&self, o: &Self) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Self) -> Self {
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Self::from_vectors(self.ambient, &v)
    }

    pub fn intersection(&self, o: &Self) -> Self {
        if self.dim() == 0 || o.dim() == 0 {
            return Self::zero(self.ambient);
        }
        // columns: basis of self, then minus basis of o
        let mut cols = self.basis.clone();
        cols.extend(o.basis.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
        let m = Matrix::from_columns(self.ambient, &cols);
        let vecs: Vec<Vec<F>> = m
            .kernel_vectors()
            .into_iter()
            .map(|k| {
                let mut w = vec![F::zero(); self.ambient];
                for (c, b) in k.iter().take(self.dim()).zip(&self.basis) {
                    axpy(&mut w, c, b);
                }
                w
            })
            .collect();
        Self::from_vectors(self.ambient, &vecs)
    }

    /// True when the two subspaces intersect trivially and span the ambient space.
    pub fn is_complement_of(&self, o: &Self) -> bool {
        self.dim() + o.dim() == self.ambient && self.sum(o).dim() == self.ambient
    }

    /// Extends this subspace's basis by vectors of `larger` to a basis of
    /// `larger`; returns only the added vectors.
    pub fn complement_in(&self, larger: &Self) -> Vec<Vec<F>> {
        let mut acc = self.clone();
        let mut added = Vec::new();
        for v in &larger.basis {
            if !acc.contains(v) {
                added.push(v.clone());
                acc = acc.sum(&Self::from_vectors(self.ambient, std::slice::from_ref(v)));
            }
        }
        added
    }
}

/// δξ(a, b) = −⟨ξ, [a, b]⟩.
pub fn coboundary<F: Scalar>(alg: &Algebra<F>, xi: &Covector<F>) -> TwoForm<F> {
    let d = alg.dim();
    let f = xi.functional();
    let mut mat = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i + 1..d {
            let mut v = F::zero();
            for (k, c) in alg.structure(i, j) {
                if !f[*k].is_zero() {
                    v = v + c.clone() * f[*k].clone();
                }
            }
            if !v.is_zero() {
                mat[(i, j)] = -v.clone();
                mat[(j, i)] = v;
            }
        }
    }
    TwoForm {
        params: alg.params,
        mat,
    }
}

/// ω(v, e_l) for a sparse v.
fn eval_sparse<F: Scalar>(om: &TwoForm<F>, v: &[(usize, F)], l: usize) -> F {
    v.iter().fold(F::zero(), |acc, (k, c)| {
        let w = &om.mat[(*k, l)];
        if w.is_zero() {
            acc
        } else {
            acc + c.clone() * w.clone()
        }
    })
}

/// Cyclic sum ω([a,b],c) + ω([b,c],a) + ω([c,a],b) on basis indices.
pub fn cyclic_sum<F: Scalar>(alg: &Algebra<F>, om: &TwoForm<F>, i: usize, j: usize, l: usize) -> F {
    eval_sparse(om, alg.structure(i, j), l)
        + eval_sparse(om, alg.structure(j, l), i)
        + eval_sparse(om, alg.structure(l, i), j)
}

/// True iff the cyclic sum vanishes on every basis triple.
pub fn is_closed<F: Scalar>(alg: &Algebra<F>, om: &TwoForm<F>) -> bool {
    let d = alg.dim();
    (0..d).all(|i| (i + 1..d).all(|j| (j + 1..d).all(|l| cyclic_sum(alg, om, i, j, l).is_zero())))
}

/// The contraction β(e) = −ω((0,Id), e), the primitive suggested by the
/// projector (0, Id). It is a primitive exactly when ω vanishes on gl(n)×gl(n).
pub fn identity_contraction<F: Scalar>(om: &TwoForm<F>) -> Vec<F> {
    let params = om.params;
    let id = AlgElem::<F>::identity_direction(params).coords();
    om.contract_left(&id).into_iter().map(|v| -v).collect()
}

/// A primitive of a closed 2-form: returns β with δβ = ω.
///
/// The contraction with (0, Id) accounts for every pair touching M(n,p). The
/// remaining gl(n)×gl(n) block is itself a 2-cocycle of gl(n), hence a
/// coboundary there; its primitive is found by an exact linear solve on the
/// n² coordinates of gl(n)*.
pub fn cobound<F: Scalar>(alg: &Algebra<F>, om: &TwoForm<F>) -> Result<Covector<F>> {
    if om.params != alg.params {
        return Err(Error::Shape("form and algebra have different parameters".into()));
    }
    if !is_closed(alg, om) {
        return Err(Error::NotClosed);
    }
    let params = alg.params;
    let d = params.dim();
    let off = params.x_dim();
    let m = params.n * params.n;

    // gl(n) part: −γ([eᵢ, eⱼ]) = ω(eᵢ, eⱼ) for gl basis pairs
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in off..d {
        for j in i + 1..d {
            let mut row = vec![F::zero(); m];
            let mut any = false;
            for (k, c) in alg.structure(i, j) {
                row[*k - off] = -c.clone();
                any = true;
            }
            let w = om.mat[(i, j)].clone();
            if any || !w.is_zero() {
                rows.push(row);
                rhs.push(w);
            }
        }
    }
    let mut beta = identity_contraction(om);
    if !rows.is_empty() {
        let a = Matrix::from_rows(rows)?;
        let b = Matrix::column(&rhs);
        let gamma = a
            .solve(&b)?
            .ok_or_else(|| Error::PreconditionViolated("gl(n) block is not a coboundary".into()))?;
        for t in 0..m {
            beta[off + t] = beta[off + t].clone() + gamma[(t, 0)].clone();
        }
    }
    Ok(Covector::from_functional(params, &beta))
}

pub fn radical<F: Scalar>(om: &TwoForm<F>) -> Subspace<F> {
    Subspace::from_vectors(om.dim(), &om.mat.kernel_vectors())
}

pub fn is_symplectic<F: Scalar>(om: &TwoForm<F>) -> bool {
    om.rank() == om.dim()
}

/// W^⊥ = {a : ω(a, w) = 0 for all w ∈ W}.
pub fn symp_orthogonal<F: Scalar>(om: &TwoForm<F>, w: &Subspace<F>) -> Subspace<F> {
    let d = om.dim();
    if w.dim() == 0 {
        return Subspace::whole(d);
    }
    // row r of the system: a ↦ ω(a, w_r) = Σᵢ aᵢ (mat·w_r)ᵢ
    let rows: Vec<Vec<F>> = w.basis().iter().map(|v| om.mat.mul_vec(v)).collect();
    let m = Matrix::from_rows(rows).expect("uniform");
    Subspace::from_vectors(d, &m.kernel_vectors())
}

pub fn is_isotropic<F: Scalar>(om: &TwoForm<F>, w: &Subspace<F>) -> bool {
    let b = w.basis();
    (0..b.len()).all(|i| (i + 1..b.len()).all(|j| om.eval(&b[i], &b[j]).is_zero()))
}

pub fn is_lagrangian<F: Scalar>(om: &TwoForm<F>, w: &Subspace<F>) -> bool {
    2 * w.dim() == om.dim() && is_isotropic(om, w)
}

pub fn is_subalgebra<F: Scalar>(alg: &Algebra<F>, w: &Subspace<F>) -> bool {
    let b = w.basis();
    (0..b.len()).all(|i| (i + 1..b.len()).all(|j| w.contains(&alg.bracket_vec(&b[i], &b[j]))))
}

/// [a, w] ⊆ W for all a in `outer` and w in `w`.
pub fn is_ideal_in<F: Scalar>(alg: &Algebra<F>, w: &Subspace<F>, outer: &Subspace<F>) -> bool {
    outer
        .basis()
        .iter()
        .all(|a| w.basis().iter().all(|x| w.contains(&alg.bracket_vec(a, x))))
}

/// The restriction of ω to W, as a matrix on W's basis.
pub fn restrict<F: Scalar>(om: &TwoForm<F>, w: &Subspace<F>) -> Matrix<F> {
    let b = w.basis();
    Matrix::from_fn(b.len(), b.len(), |i, j| om.eval(&b[i], &b[j]))
}

/// The left-symmetric product a·b determined by ω(a·b, z) = −ω(b, [a, z]).
#[derive(Debug, Clone)]
pub struct LeftSymmetric<'a, F> {
    alg: &'a Algebra<F>,
    form: TwoForm<F>,
    // (matᵀ)⁻¹
    inv_t: Matrix<F>,
}

impl<'a, F: Scalar> LeftSymmetric<'a, F> {
    pub fn new(alg: &'a Algebra<F>, om: &TwoForm<F>) -> Result<Self> {
        if om.params != alg.params {
            return Err(Error::Shape("form and algebra have different parameters".into()));
        }
        let inv_t = om.mat.transpose().inverse().map_err(|_| Error::NotSymplectic)?;
        Ok(Self {
            alg,
            form: om.clone(),
            inv_t,
        })
    }

    pub fn form(&self) -> &TwoForm<F> {
        &self.form
    }

    pub fn algebra(&self) -> &Algebra<F> {
        self.alg
    }

    /// a·b on coordinate vectors.
    pub fn product(&self, a: &[F], b: &[F]) -> Vec<F> {
        let d = self.alg.dim();
        // w_k = ω(b, e_k)
        let w = self.form.contract_left(b);
        // r_z = −ω(b, [a, e_z]) = Σ_k [e_z, a]_k w_k
        let r: Vec<F> = (0..d).map(|z| dot(&self.alg.bracket_basis_vec(z, a), &w)).collect();
        self.inv_t.mul_vec(&r)
    }

    pub fn product_basis(&self, i: usize, j: usize) -> Vec<F> {
        let d = self.alg.dim();
        let mut a = vec![F::zero(); d];
        let mut b = vec![F::zero(); d];
        a[i] = F::one();
        b[j] = F::one();
        self.product(&a, &b)
    }
}

/// Number of cases checked and number failing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
}

impl Tally {
    pub fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
    }

    pub fn ok(&self) -> bool {
        self.checked > 0 && self.failed == 0
    }
}

/// Outcome of [`pre_lie_check`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PreLieReport {
    /// (a·b)·c − a·(b·c) symmetric in a, b.
    pub associator: Tally,
    /// [a,b]·c = a·(b·c) − b·(a·c).
    pub bracket_action: Tally,
    /// a·b − b·a = [a,b].
    pub commutator: Tally,
}

/// Checks the left-symmetric identities on basis triples. With `sample =
/// None` every triple with a < b is checked, otherwise `count` seeded
/// triples.
pub fn pre_lie_check<F: Scalar>(
    alg: &Algebra<F>,
    om: &TwoForm<F>,
    sample: Option<(usize, u64)>,
) -> Result<PreLieReport> {
    use rand::Rng;
    let ls = LeftSymmetric::new(alg, om)?;
    let d = alg.dim();
    let table: Vec<Vec<Vec<F>>> = (0..d)
        .map(|i| (0..d).map(|j| ls.product_basis(i, j)).collect())
        .collect();
    // Σ_m v_m · left(m)
    let left_comb = |v: &[F], right: usize| {
        let mut out = vec![F::zero(); d];
        for (m, c) in v.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &table[m][right]);
            }
        }
        out
    };
    let right_comb = |left: usize, v: &[F]| {
        let mut out = vec![F::zero(); d];
        for (m, c) in v.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &table[left][m]);
            }
        }
        out
    };
    let unit = |i: usize| {
        let mut v = vec![F::zero(); d];
        v[i] = F::one();
        v
    };
    let mut report = PreLieReport::default();
    for a in 0..d {
        for b in a + 1..d {
            let br = alg.bracket_vec(&unit(a), &unit(b));
            report.commutator.record(vec_sub(&table[a][b], &table[b][a]) == br);
        }
    }
    let triples: Vec<(usize, usize, usize)> = match sample {
        None => (0..d)
            .flat_map(|a| (a + 1..d).flat_map(move |b| (0..d).map(move |c| (a, b, c))))
            .collect(),
        Some((count, seed)) => {
            let mut rng = crate::sampling::rng(seed);
            (0..count)
                .map(|_| (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d)))
                .collect()
        }
    };
    for (a, b, c) in triples {
        let a_bc = right_comb(a, &table[b][c]);
        let b_ac = right_comb(b, &table[a][c]);
        let ab_c = left_comb(&table[a][b], c);
        let ba_c = left_comb(&table[b][a], c);
        report.associator.record(vec_sub(&ab_c, &a_bc) == vec_sub(&ba_c, &b_ac));
        let br = alg.bracket_vec(&unit(a), &unit(b));
        report.bracket_action.record(left_comb(&br, c) == vec_sub(&a_bc, &b_ac));
    }
    Ok(report)
}

/// One-off left-symmetric product of two elements.
pub fn lsa_product<F: Scalar>(alg: &Algebra<F>, om: &TwoForm<F>, a: &AlgElem<F>, b: &AlgElem<F>) -> Result<AlgElem<F>> {
    let ls = LeftSymmetric::new(alg, om)?;
    Ok(AlgElem::from_coords(alg.params, &ls.product(&a.coords(), &b.coords())))
}

/// Radicals of δα₁ and δα₂ where α₁ = (H, 0) and α₂ = (0, N).
pub fn ker_dalpha_parts<F: Scalar>(alg: &Algebra<F>, xi: &Covector<F>) -> Result<(Subspace<F>, Subspace<F>)> {
    if !is_symplectic(&coboundary(alg, xi)) {
        return Err(Error::NotSymplectic);
    }
    let params = alg.params;
    let a1 = Covector {
        h: xi.h.clone(),
        n: Matrix::zeros(params.n, params.n),
    };
    let a2 = Covector {
        h: Matrix::zeros(params.p, params.n),
        n: xi.n.clone(),
    };
    Ok((radical(&coboundary(alg, &a1)), radical(&coboundary(alg, &a2))))
}

/// Block lower-triangular Toeplitz matrices with p×p blocks A₀ … A_{k−1}:
/// the subspace {(0, u)} of dimension k·p².
pub fn c_of_n0<F: Scalar>(params: Params) -> Subspace<F> {
    let (n, p, k) = (params.n, params.p, params.k);
    let mut vecs = Vec::with_capacity(k * p * p);
    for offset in 0..k {
        for a in 0..p {
            for b in 0..p {
                let mut v = vec![F::zero(); params.dim()];
                for blk in 0..k - offset {
                    let row = (blk + offset) * p + a;
                    let col = blk * p + b;
                    v[params.u_index(row, col)] = F::one();
                }
                vecs.push(v);
            }
        }
    }
    debug_assert!(n == k * p);
    Subspace::from_vectors(params.dim(), &vecs)
}

/// {(0, u) : uN = Nu}.
pub fn gl_centralizer<F: Scalar>(params: Params, n_mat: &Matrix<F>) -> Subspace<F> {
    let (n, d) = (params.n, params.dim());
    let cols: Vec<Vec<F>> = (0..n * n)
        .map(|t| {
            let mut u = Matrix::zeros(n, n);
            u[(t / n, t % n)] = F::one();
            u.commutator(n_mat).entries().to_vec()
        })
        .collect();
    let m = Matrix::from_columns(n * n, &cols);
    let vecs: Vec<Vec<F>> = m
        .kernel_vectors()
        .into_iter()
        .map(|k| {
            let mut v = vec![F::zero(); d];
            v[params.x_dim()..].clone_from_slice(&k);
            v
        })
        .collect();
    Subspace::from_vectors(d, &vecs)
}

/// The abelian ideal I = M(n,p) ⊂ 𝒢(n,p).
pub fn abelian_ideal<F: Scalar>(params: Params) -> Subspace<F> {
    let d = params.dim();
    let vecs: Vec<Vec<F>> = (0..params.x_dim())
        .map(|i| {
            let mut v = vec![F::zero(); d];
            v[i] = F::one();
            v
        })
        .collect();
    Subspace::from_vectors(d, &vecs)
}
