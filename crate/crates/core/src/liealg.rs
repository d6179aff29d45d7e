//! The Lie algebra 𝒢(n,p) = M(n,p) ⋊ gl(n), its group, and its dual.
//!
//! Elements are pairs (x, u) with x an n×p matrix and u an n×n matrix. The
//! bracket is [(x,u),(y,v)] = (uy − vx, uv − vu) and the group law is
//! (X,T)(Y,S) = (X + TY, TS). Covectors (H, N) with H a p×n matrix pair with
//! algebra elements through ⟨(H,N),(x,u)⟩ = tr(xH) + tr(Nu).
//!
//! The canonical basis lists the matrix units of M(n,p) in row-major order
//! followed by the matrix units of gl(n) in row-major order. Every
//! coordinate vector, 2-form matrix and structure-constant table in the
//! crate is expressed in this basis.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Shape data (n, p) with n = k·p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "ParamsRepr", into = "ParamsRepr")]
pub struct Params {
    pub n: usize,
    pub p: usize,
    pub k: usize,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct ParamsRepr {
    n: usize,
    p: usize,
}

impl TryFrom<ParamsRepr> for Params {
    type Error = Error;
    fn try_from(r: ParamsRepr) -> Result<Self> {
        Params::new(r.n, r.p)
    }
}

impl From<Params> for ParamsRepr {
    fn from(p: Params) -> Self {
        ParamsRepr { n: p.n, p: p.p }
    }
}

impl Params {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        if p == 0 || n == 0 {
            return Err(Error::InvalidParams(format!("n={n}, p={p}: both must be positive")));
        }
        if !n.is_multiple_of(p) {
            return Err(Error::InvalidParams(format!("n={n} is not a multiple of p={p}")));
        }
        Ok(Self { n, p, k: n / p })
    }

    /// Dimension np + n² of the algebra.
    pub fn dim(&self) -> usize {
        self.n * self.p + self.n * self.n
    }

    /// Dimension of the abelian ideal M(n,p).
    pub fn x_dim(&self) -> usize {
        self.n * self.p
    }

    pub fn x_index(&self, i: usize, j: usize) -> usize {
        i * self.p + j
    }

    pub fn u_index(&self, i: usize, j: usize) -> usize {
        self.x_dim() + i * self.n + j
    }

    /// Parameters one reduction step down, (n − p, p).
    pub fn reduced(&self) -> Option<Self> {
        (self.k > 1).then(|| Self {
            n: self.n - self.p,
            p: self.p,
            k: self.k - 1,
        })
    }

    /// Parameters one extension step up, (n + p, p).
    pub fn extended(&self) -> Self {
        Self {
            n: self.n + self.p,
            p: self.p,
            k: self.k + 1,
        }
    }
}

fn check_shape<F: Scalar>(what: &str, m: &Matrix<F>, rows: usize, cols: usize) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(Error::Shape(format!(
            "{what} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// An element (x, u) of the Lie algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgElem<F> {
    pub x: Matrix<F>,
    pub u: Matrix<F>,
}

impl<F: Scalar> AlgElem<F> {
    pub fn new(params: Params, x: Matrix<F>, u: Matrix<F>) -> Result<Self> {
        check_shape("x", &x, params.n, params.p)?;
        check_shape("u", &u, params.n, params.n)?;
        Ok(Self { x, u })
    }

    pub fn zero(params: Params) -> Self {
        Self {
            x: Matrix::zeros(params.n, params.p),
            u: Matrix::zeros(params.n, params.n),
        }
    }

    /// (0, Id), the element whose adjoint action is the projection onto M(n,p).
    pub fn identity_direction(params: Params) -> Self {
        Self {
            x: Matrix::zeros(params.n, params.p),
            u: Matrix::identity(params.n),
        }
    }

    pub fn params(&self) -> Result<Params> {
        if self.x.rows() != self.u.rows() || !self.u.is_square() {
            return Err(Error::Shape("inconsistent algebra element".into()));
        }
        Params::new(self.x.rows(), self.x.cols())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.u.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            x: self.x.add(&o.x),
            u: self.u.add(&o.u),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            x: self.x.sub(&o.x),
            u: self.u.sub(&o.u),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Self {
            x: self.x.scale(s),
            u: self.u.scale(s),
        }
    }

    /// Coordinates in the canonical basis.
    pub fn coords(&self) -> Vec<F> {
        let mut v = self.x.entries().to_vec();
        v.extend(self.u.entries().iter().cloned());
        v
    }

    pub fn from_coords(params: Params, v: &[F]) -> Self {
        assert_eq!(v.len(), params.dim(), "coordinate vector has wrong length");
        let (xs, us) = v.split_at(params.x_dim());
        Self {
            x: Matrix::from_fn(params.n, params.p, |i, j| xs[i * params.p + j].clone()),
            u: Matrix::from_fn(params.n, params.n, |i, j| us[i * params.n + j].clone()),
        }
    }
}

/// [(x,u),(y,v)] = (uy − vx, uv − vu).
pub fn bracket<F: Scalar>(a: &AlgElem<F>, b: &AlgElem<F>) -> Result<AlgElem<F>> {
    if a.x.shape() != b.x.shape() || a.u.shape() != b.u.shape() {
        return Err(Error::Shape("bracket of elements from different algebras".into()));
    }
    Ok(AlgElem {
        x: a.u.mul(&b.x).sub(&b.u.mul(&a.x)),
        u: a.u.commutator(&b.u),
    })
}

/// (x,u) ↦ [[u, x], [0, 0]] ∈ gl(n + p).
pub fn embed_gl<F: Scalar>(a: &AlgElem<F>) -> Matrix<F> {
    let n = a.u.rows();
    let p = a.x.cols();
    let mut m = Matrix::zeros(n + p, n + p);
    m.set_block(0, 0, &a.u);
    m.set_block(0, n, &a.x);
    m
}

pub fn canonical_basis<F: Scalar>(params: Params) -> Vec<AlgElem<F>> {
    let d = params.dim();
    (0..d)
        .map(|i| {
            let mut v = vec![F::zero(); d];
            v[i] = F::one();
            AlgElem::from_coords(params, &v)
        })
        .collect()
}

/// A group element (X, T) with T invertible.
#[derive(Debug, Clone, PartialEq)]
pub struct GrpElem<F> {
    pub x: Matrix<F>,
    pub t: Matrix<F>,
}

impl<F: Scalar> GrpElem<F> {
    pub fn new(params: Params, x: Matrix<F>, t: Matrix<F>) -> Result<Self> {
        check_shape("X", &x, params.n, params.p)?;
        check_shape("T", &t, params.n, params.n)?;
        if t.det()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Self { x, t })
    }

    pub fn identity(params: Params) -> Self {
        Self {
            x: Matrix::zeros(params.n, params.p),
            t: Matrix::identity(params.n),
        }
    }

    /// (0, T).
    pub fn linear(params: Params, t: Matrix<F>) -> Result<Self> {
        Self::new(params, Matrix::zeros(params.n, params.p), t)
    }

    /// (X, Id).
    pub fn translation(params: Params, x: Matrix<F>) -> Result<Self> {
        Self::new(params, x, Matrix::identity(params.n))
    }

    pub fn params(&self) -> Result<Params> {
        Params::new(self.x.rows(), self.x.cols())
    }

    /// Membership in the identity component. Over an ordered field this is
    /// det T > 0; over an unordered field every element qualifies.
    pub fn in_identity_component(&self) -> bool {
        let det = self.t.det().expect("square by construction");
        match det.sign() {
            Some(o) => o == std::cmp::Ordering::Greater,
            None => true,
        }
    }
}

/// (X,T)(Y,S) = (X + TY, TS).
pub fn grp_mul<F: Scalar>(g: &GrpElem<F>, h: &GrpElem<F>) -> Result<GrpElem<F>> {
    if g.x.shape() != h.x.shape() || g.t.shape() != h.t.shape() {
        return Err(Error::Shape("product of elements from different groups".into()));
    }
    Ok(GrpElem {
        x: g.x.add(&g.t.mul(&h.x)),
        t: g.t.mul(&h.t),
    })
}

/// (X,T)⁻¹ = (−T⁻¹X, T⁻¹).
pub fn grp_inv<F: Scalar>(g: &GrpElem<F>) -> GrpElem<F> {
    let ti = g.t.inverse().expect("group elements have invertible T");
    GrpElem {
        x: ti.mul(&g.x).neg(),
        t: ti,
    }
}

/// A dual element (H, N), H of shape p×n and N of shape n×n.
#[derive(Debug, Clone, PartialEq)]
pub struct Covector<F> {
    pub h: Matrix<F>,
    pub n: Matrix<F>,
}

impl<F: Scalar> Covector<F> {
    pub fn new(params: Params, h: Matrix<F>, n: Matrix<F>) -> Result<Self> {
        check_shape("H", &h, params.p, params.n)?;
        check_shape("N", &n, params.n, params.n)?;
        Ok(Self { h, n })
    }

    pub fn zero(params: Params) -> Self {
        Self {
            h: Matrix::zeros(params.p, params.n),
            n: Matrix::zeros(params.n, params.n),
        }
    }

    pub fn params(&self) -> Result<Params> {
        if self.h.cols() != self.n.rows() || !self.n.is_square() {
            return Err(Error::Shape("inconsistent covector".into()));
        }
        Params::new(self.n.rows(), self.h.rows())
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero() && self.n.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            h: self.h.add(&o.h),
            n: self.n.add(&o.n),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            h: self.h.sub(&o.h),
            n: self.n.sub(&o.n),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Self {
            h: self.h.scale(s),
            n: self.n.scale(s),
        }
    }

    /// Values ⟨ξ, eᵢ⟩ on the canonical basis.
    ///
    /// ⟨(H,N), E_ab in M(n,p)⟩ = H_ba and ⟨(H,N), E_ab in gl(n)⟩ = N_ba.
    pub fn functional(&self) -> Vec<F> {
        let n = self.n.rows();
        let p = self.h.rows();
        let mut f = Vec::with_capacity(n * p + n * n);
        for a in 0..n {
            for b in 0..p {
                f.push(self.h[(b, a)].clone());
            }
        }
        for a in 0..n {
            for b in 0..n {
                f.push(self.n[(b, a)].clone());
            }
        }
        f
    }

    /// Inverse of [`Covector::functional`].
    pub fn from_functional(params: Params, f: &[F]) -> Self {
        assert_eq!(f.len(), params.dim());
        let (n, p) = (params.n, params.p);
        let h = Matrix::from_fn(p, n, |b, a| f[params.x_index(a, b)].clone());
        let nm = Matrix::from_fn(n, n, |b, a| f[params.u_index(a, b)].clone());
        Self { h, n: nm }
    }

    /// Coordinates in the covector basis: entries of H row-major, then N.
    pub fn coords(&self) -> Vec<F> {
        let mut v = self.h.entries().to_vec();
        v.extend(self.n.entries().iter().cloned());
        v
    }
}

/// ⟨(H,N),(x,u)⟩ = tr(xH) + tr(Nu).
pub fn pair<F: Scalar>(xi: &Covector<F>, a: &AlgElem<F>) -> Result<F> {
    if xi.h.cols() != a.x.rows() || xi.h.rows() != a.x.cols() || xi.n.shape() != a.u.shape() {
        return Err(Error::Shape("pairing of mismatched covector and element".into()));
    }
    Ok(a.x.mul(&xi.h).trace() + xi.n.mul(&a.u).trace())
}

/// The d×d matrix of the pairing between covector coordinates and algebra
/// coordinates.
pub fn pairing_matrix<F: Scalar>(params: Params) -> Matrix<F> {
    let d = params.dim();
    let basis = canonical_basis::<F>(params);
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        let mut c = vec![F::zero(); d];
        c[i] = F::one();
        let h = Matrix::from_fn(params.p, params.n, |r, s| c[r * params.n + s].clone());
        let nn = Matrix::from_fn(params.n, params.n, |r, s| c[params.x_dim() + r * params.n + s].clone());
        let xi = Covector { h, n: nn };
        for (j, b) in basis.iter().enumerate() {
            m[(i, j)] = pair(&xi, b).expect("shapes agree");
        }
    }
    m
}

/// (H₀, N₀): H₀ = (0, …, 0, I_p), N₀ with I_p on the block sub-diagonal.
pub fn base_covector<F: Scalar>(params: Params) -> Covector<F> {
    let (n, p) = (params.n, params.p);
    let mut h = Matrix::zeros(p, n);
    h.set_block(0, n - p, &Matrix::identity(p));
    let mut nm = Matrix::zeros(n, n);
    for b in 1..params.k {
        nm.set_block(b * p, (b - 1) * p, &Matrix::identity(p));
    }
    Covector { h, n: nm }
}

/// X₀ ∈ M(n,p): a single block column whose last block is I_p.
pub fn last_block_column<F: Scalar>(params: Params) -> Matrix<F> {
    let mut x = Matrix::zeros(params.n, params.p);
    x.set_block(params.n - params.p, 0, &Matrix::identity(params.p));
    x
}

/// The algebra with its structure constants precomputed in the canonical
/// basis. Structure constants are sparse: the bracket of two matrix units
/// has at most two nonzero coordinates.
#[derive(Debug, Clone)]
pub struct Algebra<F> {
    pub params: Params,
    consts: Vec<Vec<(usize, F)>>,
}

impl<F: Scalar> Algebra<F> {
    pub fn new(params: Params) -> Self {
        let d = params.dim();
        let basis = canonical_basis::<F>(params);
        let mut consts = Vec::with_capacity(d * d);
        for a in &basis {
            for b in &basis {
                let c = bracket(a, b).expect("same params").coords();
                consts.push(c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect());
            }
        }
        Self { params, consts }
    }

    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    /// Sparse coordinates of [eᵢ, eⱼ].
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, F)] {
        &self.consts[i * self.dim() + j]
    }

    /// Dense structure-constant table: entry (i, j) is the coordinate vector of [eᵢ, eⱼ].
    pub fn structure_table(&self) -> Vec<Vec<Vec<F>>> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut v = vec![F::zero(); d];
                        for (k, c) in self.structure(i, j) {
                            v[*k] = c.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }

    /// Bracket of coordinate vectors.
    pub fn bracket_vec(&self, a: &[F], b: &[F]) -> Vec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); d];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = ai.clone() * bj.clone();
                for (k, c) in self.structure(i, j) {
                    let cur = std::mem::replace(&mut out[*k], F::zero());
                    out[*k] = cur + s.clone() * c.clone();
                }
            }
        }
        out
    }

    /// [eᵢ, v] for a basis index i.
    pub fn bracket_basis_vec(&self, i: usize, v: &[F]) -> Vec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); d];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (k, c) in self.structure(i, j) {
                let cur = std::mem::replace(&mut out[*k], F::zero());
                out[*k] = cur + vj.clone() * c.clone();
            }
        }
        out
    }

    pub fn bracket(&self, a: &AlgElem<F>, b: &AlgElem<F>) -> AlgElem<F> {
        AlgElem::from_coords(self.params, &self.bracket_vec(&a.coords(), &b.coords()))
    }

    /// Checks the Jacobi identity on every triple of basis vectors.
    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                for l in j + 1..d {
                    if !self.jacobiator(i, j, l).iter().all(F::is_zero) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// [[eᵢ,eⱼ],e_l] + [[eⱼ,e_l],eᵢ] + [[e_l,eᵢ],eⱼ].
    pub fn jacobiator(&self, i: usize, j: usize, l: usize) -> Vec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); d];
        for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
            for (m, coeff) in self.structure(a, b) {
                for (k, c2) in self.structure(*m, c) {
                    let cur = std::mem::replace(&mut out[*k], F::zero());
                    out[*k] = cur + coeff.clone() * c2.clone();
                }
            }
        }
        out
    }
}
