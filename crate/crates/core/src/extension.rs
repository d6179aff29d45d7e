//! Symplectic double extension from 𝒢(n−p, p) back to 𝒢(n, p).
//!
//! The data are an injection i: 𝕂^{n−p} → 𝕂ⁿ, a retraction r with r∘i = id,
//! a rank-p matrix Z with rZ = 0, and Hlin with Hlin∘i = 0 and Hlin·Z = I.
//! From them
//!
//! - η(x, u) = i·u·r + i·x·Hlin embeds 𝒢(n−p, p) into gl(n),
//! - ρ(X, U) = i·U·r + i·X·Hlin + Z·Hlin embeds G(n−p, p) into GL(n),
//! - R(H₁, N₁) = i·N₁·r + Z·H₁·r,
//!
//! and the extended covector is (Hlin, R(H₁, N₁)).

use crate::coadjoint::is_open_orbit;
use crate::error::{Error, Result};
use crate::liealg::{AlgElem, Covector, GrpElem, Params};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionData<F> {
    /// Parameters (n, p) of the extended algebra.
    pub params: Params,
    /// n × (n−p).
    pub inj: Matrix<F>,
    /// (n−p) × n.
    pub ret: Matrix<F>,
    /// n × p.
    pub z: Matrix<F>,
    /// p × n.
    pub hlin: Matrix<F>,
}

impl<F: Scalar> ExtensionData<F> {
    /// Zero padding of the last p rows, truncation, Z = [0; I] and Hlin = H₀.
    pub fn standard(params: Params) -> Result<Self> {
        let small = params
            .reduced()
            .ok_or_else(|| Error::Shape("double extension needs n > p".into()))?;
        let (n, p, m) = (params.n, params.p, small.n);
        let inj = Matrix::identity(m).vstack(&Matrix::zeros(p, m));
        let ret = inj.transpose();
        let z = Matrix::zeros(m, p).vstack(&Matrix::identity(p));
        let hlin = z.transpose();
        debug_assert_eq!(hlin.shape(), (p, n));
        Ok(Self {
            params,
            inj,
            ret,
            z,
            hlin,
        })
    }

    pub fn small_params(&self) -> Params {
        self.params.reduced().expect("n > p")
    }

    /// r∘i = id, r·Z = 0, Hlin∘i = 0, Hlin·Z = I and rank Z = p.
    pub fn identities_hold(&self) -> bool {
        let (p, m) = (self.params.p, self.small_params().n);
        self.ret.mul(&self.inj) == Matrix::identity(m)
            && self.ret.mul(&self.z).is_zero()
            && self.hlin.mul(&self.inj).is_zero()
            && self.hlin.mul(&self.z) == Matrix::identity(p)
            && self.z.rank() == p
    }

    fn check_small(&self, x: &Matrix<F>, u: &Matrix<F>) -> Result<()> {
        let s = self.small_params();
        if x.shape() != (s.n, s.p) || u.shape() != (s.n, s.n) {
            return Err(Error::Shape(format!(
                "expected an element of the ({}, {}) algebra",
                s.n, s.p
            )));
        }
        Ok(())
    }

    /// η(x, u) = i·u·r + i·x·Hlin.
    pub fn eta(&self, a: &AlgElem<F>) -> Result<Matrix<F>> {
        self.check_small(&a.x, &a.u)?;
        Ok(self
            .inj
            .mul(&a.u)
            .mul(&self.ret)
            .add(&self.inj.mul(&a.x).mul(&self.hlin)))
    }

    /// ρ(X, U) = i·U·r + i·X·Hlin + Z·Hlin.
    pub fn rho(&self, g: &GrpElem<F>) -> Result<Matrix<F>> {
        Ok(self.rho_without_completion(g)?.add(&self.z.mul(&self.hlin)))
    }

    /// i·U·r + i·X·Hlin, the homomorphism candidate without the Z·Hlin term.
    pub fn rho_without_completion(&self, g: &GrpElem<F>) -> Result<Matrix<F>> {
        self.check_small(&g.x, &g.t)?;
        Ok(self
            .inj
            .mul(&g.t)
            .mul(&self.ret)
            .add(&self.inj.mul(&g.x).mul(&self.hlin)))
    }

    /// The (X, U) with ρ(X, U) = T, for T with Hlin·T = Hlin.
    pub fn rho_preimage(&self, t: &Matrix<F>) -> Result<GrpElem<F>> {
        if t.shape() != (self.params.n, self.params.n) {
            return Err(Error::Shape("expected an n×n matrix".into()));
        }
        if self.hlin.mul(t) != self.hlin {
            return Err(Error::PreconditionViolated("Hlin·T ≠ Hlin".into()));
        }
        let u = self.ret.mul(t).mul(&self.inj);
        let x = self.ret.mul(t).mul(&self.z);
        let g = GrpElem::new(self.small_params(), x, u)?;
        if self.rho(&g)? != *t {
            return Err(Error::PreconditionViolated("matrix is not in the image of ρ".into()));
        }
        Ok(g)
    }

    /// R(H₁, N₁) = i·N₁·r + Z·H₁·r.
    pub fn r_map(&self, xi: &Covector<F>) -> Result<Matrix<F>> {
        let s = self.small_params();
        if xi.h.shape() != (s.p, s.n) || xi.n.shape() != (s.n, s.n) {
            return Err(Error::Shape(format!(
                "expected a covector of the ({}, {}) algebra",
                s.n, s.p
            )));
        }
        Ok(self
            .inj
            .mul(&xi.n)
            .mul(&self.ret)
            .add(&self.z.mul(&xi.h).mul(&self.ret)))
    }

    /// (Hlin, R(ξ′)).
    pub fn double_extend(&self, xi: &Covector<F>) -> Result<Covector<F>> {
        if !is_open_orbit(xi) {
            return Err(Error::NotSymplectic);
        }
        Ok(Covector {
            h: self.hlin.clone(),
            n: self.r_map(xi)?,
        })
    }

    /// tr(H₁x) + tr(N₁u) − tr(R(H₁,N₁)·η(x,u)); zero when the identity holds.
    pub fn trace_defect(&self, xi: &Covector<F>, a: &AlgElem<F>) -> Result<F> {
        let lhs = crate::liealg::pair(xi, a)?;
        let rhs = self.r_map(xi)?.mul(&self.eta(a)?).trace();
        Ok(lhs - rhs)
    }
}
