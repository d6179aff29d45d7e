//! Moment maps, the fiber subgroup m⁻¹(H) and symplectic reduction by an
//! isotropic ideal.
//!
//! The moment map of ξ is μ(σ) = Ad*_σ ξ; its H-component is
//! m(X, T) = H·T⁻¹, which does not depend on X.

use crate::coadjoint::coadjoint_action;
use crate::error::{Error, Result};
use crate::liealg::{AlgElem, Algebra, Covector, GrpElem, Params};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::symform::{
    abelian_ideal, c_of_n0, coboundary, is_ideal_in, is_isotropic, is_subalgebra, is_symplectic, symp_orthogonal,
    LeftSymmetric, Subspace, TwoForm,
};

/// μ(σ) = Ad*_σ ξ.
pub fn moment_mu<F: Scalar>(xi: &Covector<F>, sigma: &GrpElem<F>) -> Result<Covector<F>> {
    coadjoint_action(sigma, xi)
}

/// m(X, T) = H·T⁻¹.
pub fn moment_m<F: Scalar>(xi: &Covector<F>, sigma: &GrpElem<F>) -> Result<Matrix<F>> {
    if sigma.t.shape() != xi.n.shape() {
        return Err(Error::Shape(
            "group element and covector belong to different groups".into(),
        ));
    }
    Ok(xi.h.mul(&sigma.t.inverse()?))
}

/// [ker A | S] with AS = I, for A of shape p×n and full rank.
fn adapted_frame<F: Scalar>(a: &Matrix<F>) -> Result<Matrix<F>> {
    let (p, n) = a.shape();
    let kernel = a.kernel();
    if kernel.cols() != n - p {
        return Err(Error::PreconditionViolated("matrix does not have rank p".into()));
    }
    let s = a
        .solve(&Matrix::identity(p))?
        .ok_or_else(|| Error::PreconditionViolated("matrix does not have rank p".into()))?;
    Ok(kernel.hstack(&s))
}

/// Some σ = (0, T) with m(σ) = α, for α of rank p.
pub fn moment_preimage<F: Scalar>(xi: &Covector<F>, alpha: &Matrix<F>) -> Result<GrpElem<F>> {
    if alpha.shape() != xi.h.shape() {
        return Err(Error::Shape("target must have the shape of H".into()));
    }
    // α·Vα = H·V_H = [0 | I]  ⇒  α·(Vα V_H⁻¹) = H
    let va = adapted_frame(alpha)?;
    let vh = adapted_frame(&xi.h)?;
    let t = va.mul(&vh.inverse()?);
    Ok(GrpElem {
        x: Matrix::zeros(xi.h.cols(), xi.h.rows()),
        t,
    })
}

/// {(x, u) : H·u = 0}, the tangent space at the identity of m⁻¹(H).
pub fn fiber_tangent<F: Scalar>(xi: &Covector<F>) -> Result<Subspace<F>> {
    let params = xi.params()?;
    let (n, p, d) = (params.n, params.p, params.dim());
    let rows: Vec<Vec<F>> = (0..p)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut r = vec![F::zero(); d];
            for k in 0..n {
                r[params.u_index(k, j)] = xi.h[(i, k)].clone();
            }
            r
        })
        .collect();
    Ok(Subspace::from_vectors(d, &Matrix::from_rows(rows)?.kernel_vectors()))
}

/// I^⊥ for the abelian ideal I = M(n,p), computed as a symplectic orthogonal.
pub fn m_fiber_algebra<F: Scalar>(alg: &Algebra<F>, xi: &Covector<F>) -> Result<Subspace<F>> {
    let om = coboundary(alg, xi);
    if !is_symplectic(&om) {
        return Err(Error::NotSymplectic);
    }
    Ok(symp_orthogonal(&om, &abelian_ideal(alg.params)))
}

/// The quotient W^⊥/W with its bracket and induced form.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedAlgebra<F> {
    pub params: Params,
    pub isotropic: Subspace<F>,
    pub orthogonal: Subspace<F>,
    /// Representatives in W^⊥ of the quotient basis, in ambient coordinates.
    pub complement: Vec<Vec<F>>,
    /// structure[i][j] = quotient coordinates of [cᵢ, cⱼ] mod W.
    pub structure: Vec<Vec<Vec<F>>>,
    /// The induced 2-form on the quotient basis.
    pub form: Matrix<F>,
}

impl<F: Scalar> ReducedAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Columns: complement representatives, then a basis of W.
    fn frame(&self) -> Matrix<F> {
        let mut cols = self.complement.clone();
        cols.extend(self.isotropic.basis().iter().cloned());
        Matrix::from_columns(self.params.dim(), &cols)
    }

    /// Quotient coordinates of each column of `vs`, which must lie in W^⊥.
    pub fn project_many(&self, vs: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
        if vs.is_empty() {
            return Ok(Vec::new());
        }
        let rhs = Matrix::from_columns(self.params.dim(), vs);
        let sol = self
            .frame()
            .solve(&rhs)?
            .ok_or_else(|| Error::PreconditionViolated("vector outside W^⊥".into()))?;
        Ok((0..vs.len())
            .map(|c| (0..self.dim()).map(|r| sol[(r, c)].clone()).collect())
            .collect())
    }

    pub fn project(&self, v: &[F]) -> Result<Vec<F>> {
        Ok(self.project_many(&[v.to_vec()])?.remove(0))
    }

    pub fn is_symplectic(&self) -> bool {
        self.form.rank() == self.dim()
    }
}

fn build_quotient<F: Scalar>(
    alg: &Algebra<F>,
    om: &TwoForm<F>,
    w: &Subspace<F>,
    orth: Subspace<F>,
    complement: Vec<Vec<F>>,
) -> Result<ReducedAlgebra<F>> {
    let q = complement.len();
    let mut red = ReducedAlgebra {
        params: alg.params,
        isotropic: w.clone(),
        orthogonal: orth,
        complement,
        structure: Vec::new(),
        form: Matrix::zeros(q, q),
    };
    let mut brackets = Vec::with_capacity(q * q);
    for i in 0..q {
        for j in 0..q {
            brackets.push(alg.bracket_vec(&red.complement[i], &red.complement[j]));
        }
    }
    let coords = red.project_many(&brackets)?;
    red.structure = (0..q).map(|i| coords[i * q..(i + 1) * q].to_vec()).collect();
    red.form = Matrix::from_fn(q, q, |i, j| om.eval(&red.complement[i], &red.complement[j]));
    if !red.is_symplectic() {
        return Err(Error::PreconditionViolated("induced form is degenerate".into()));
    }
    Ok(red)
}

fn check_reduction_data<F: Scalar>(alg: &Algebra<F>, om: &TwoForm<F>, w: &Subspace<F>) -> Result<Subspace<F>> {
    if !is_symplectic(om) {
        return Err(Error::NotSymplectic);
    }
    if !is_isotropic(om, w) {
        return Err(Error::PreconditionViolated("W is not isotropic".into()));
    }
    let orth = symp_orthogonal(om, w);
    if !is_subalgebra(alg, &orth) {
        return Err(Error::PreconditionViolated("W^⊥ is not a subalgebra".into()));
    }
    if !is_ideal_in(alg, w, &orth) {
        return Err(Error::PreconditionViolated("W is not an ideal of W^⊥".into()));
    }
    Ok(orth)
}

/// Reduction of (𝒢, δξ) by an isotropic ideal W of W^⊥, with a complement
/// chosen by extending W's basis inside W^⊥.
pub fn reduce_by<F: Scalar>(alg: &Algebra<F>, xi: &Covector<F>, w: &Subspace<F>) -> Result<ReducedAlgebra<F>> {
    let om = coboundary(alg, xi);
    let orth = check_reduction_data(alg, &om, w)?;
    let complement = w.complement_in(&orth);
    build_quotient(alg, &om, w, orth, complement)
}

/// Reduction by I = M(n,p) identified with 𝒢(n−p, p).
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalReduction<F> {
    pub quotient: ReducedAlgebra<F>,
    pub target: Params,
    /// (H₁, N₁) with δ(H₁, N₁) the image of the induced form.
    pub reduced_covector: Covector<F>,
    /// Quotient coordinates to coordinates of 𝒢(n−p, p).
    pub iso: Matrix<F>,
}

impl<F: Scalar> CanonicalReduction<F> {
    /// Ambient coordinates of the section image of each target basis vector:
    /// (x', u') ↦ (0, [[u', x'], [0, 0]]).
    pub fn lift(&self, target_coords: &[F]) -> Vec<F> {
        lift_coords(self.quotient.params, target_coords)
    }
}

/// (x', u') ∈ 𝒢(n−p, p) ↦ (0, [[u', x'], [0, 0]]) ∈ 𝒢(n, p) on coordinates.
pub fn lift_coords<F: Scalar>(params: Params, target_coords: &[F]) -> Vec<F> {
    let target = params.reduced().expect("n > p");
    let e = AlgElem::from_coords(target, target_coords);
    let m = target.n;
    let mut u = Matrix::zeros(params.n, params.n);
    u.set_block(0, 0, &e.u);
    u.set_block(0, m, &e.x);
    AlgElem {
        x: Matrix::zeros(params.n, params.p),
        u,
    }
    .coords()
}

/// (0, u) ↦ (top-right block of u, top-left block of u).
fn iso_image<F: Scalar>(params: Params, v: &[F]) -> Vec<F> {
    let target = params.reduced().expect("n > p");
    let m = target.n;
    let e = AlgElem::from_coords(params, v);
    AlgElem {
        x: e.u.block(0, m, m, params.p),
        u: e.u.block(0, 0, m, m),
    }
    .coords()
}

/// True when ξ has H = H₀ and N has a vanishing last block column.
pub fn is_reduction_ready<F: Scalar>(xi: &Covector<F>) -> bool {
    let Ok(params) = xi.params() else { return false };
    let (n, p) = (params.n, params.p);
    xi.h == crate::liealg::base_covector::<F>(params).h && xi.n.block(0, n - p, n, p).is_zero()
}

/// Solves ⟨(H₁,N₁), iso(c)⟩ = ⟨ξ, c⟩ over the complement basis and requires
/// the solution to be unique.
pub fn solve_reduced_covector<F: Scalar>(
    params: Params,
    xi: &Covector<F>,
    complement: &[Vec<F>],
) -> Result<Covector<F>> {
    let target = params
        .reduced()
        .ok_or_else(|| Error::Shape("no reduction when n = p".into()))?;
    let dt = target.dim();
    let f = xi.functional();
    let rows: Vec<Vec<F>> = complement.iter().map(|c| iso_image(params, c)).collect();
    let rhs: Vec<F> = complement.iter().map(|c| crate::matrix::dot(&f, c)).collect();
    let a = Matrix::from_rows(rows)?;
    if a.rank() != dt {
        return Err(Error::PreconditionViolated(
            "trace identity does not pin (H₁, N₁)".into(),
        ));
    }
    let sol = a
        .solve(&Matrix::column(&rhs))?
        .ok_or_else(|| Error::PreconditionViolated("trace identity is inconsistent".into()))?;
    Ok(Covector::from_functional(target, &sol.col(0)))
}

/// Reduction of (𝒢(n,p), δξ) by I for ξ with H = H₀ and a vanishing last
/// block column of N.
///
/// The quotient is represented by {(0,u) : H₀u = 0} and identified with
/// 𝒢(n−p, p) through (0,u) ↦ (top-right block, top-left block). The reduced
/// covector is (bottom-left block of N, top-left block of N).
pub fn reduce_canonical<F: Scalar>(alg: &Algebra<F>, xi: &Covector<F>) -> Result<CanonicalReduction<F>> {
    let params = alg.params;
    let target = params
        .reduced()
        .ok_or_else(|| Error::Shape("canonical reduction needs n > p".into()))?;
    if xi.params()? != params {
        return Err(Error::Shape("covector and algebra have different parameters".into()));
    }
    if !is_reduction_ready(xi) {
        return Err(Error::PreconditionViolated(
            "covector is not in normal-form block shape".into(),
        ));
    }
    let om = coboundary(alg, xi);
    let w = abelian_ideal(params);
    let orth = check_reduction_data(alg, &om, &w)?;

    let m = target.n;
    let complement: Vec<Vec<F>> = (0..m)
        .flat_map(|i| (0..params.n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut v = vec![F::zero(); params.dim()];
            v[params.u_index(i, j)] = F::one();
            v
        })
        .collect();
    let quotient = build_quotient(alg, &om, &w, orth, complement)?;

    let cols: Vec<Vec<F>> = quotient.complement.iter().map(|c| iso_image(params, c)).collect();
    let iso = Matrix::from_columns(target.dim(), &cols);

    let reduced_covector = Covector {
        h: xi.n.block(m, 0, params.p, m),
        n: xi.n.block(0, 0, m, m),
    };
    let solved = solve_reduced_covector(params, xi, &quotient.complement)?;
    if solved != reduced_covector {
        return Err(Error::PreconditionViolated(
            "trace identity disagrees with the block reading".into(),
        ));
    }
    Ok(CanonicalReduction {
        quotient,
        target,
        reduced_covector,
        iso,
    })
}

/// Checks that the iso carries the quotient bracket to the bracket of the
/// target algebra and the induced form to δ(H₁, N₁).
pub fn verify_canonical<F: Scalar>(red: &CanonicalReduction<F>) -> Result<(bool, bool)> {
    let target_alg = Algebra::<F>::new(red.target);
    let q = red.quotient.dim();
    let iso_inv = red.iso.inverse()?;
    // structure constants transported to the target basis
    let mut brackets_ok = true;
    for i in 0..q {
        for j in 0..q {
            let lhs = red.iso.mul_vec(&red.quotient.structure[i][j]);
            let rhs = target_alg.bracket_vec(&red.iso.col(i), &red.iso.col(j));
            if lhs != rhs {
                brackets_ok = false;
            }
        }
    }
    let target_form = coboundary(&target_alg, &red.reduced_covector);
    // form on quotient = isoᵀ · δ(H₁,N₁) · iso
    let pulled = red.iso.transpose().mul(&target_form.mat).mul(&red.iso);
    let form_ok =
        pulled == red.quotient.form && iso_inv.transpose().mul(&red.quotient.form).mul(&iso_inv) == target_form.mat;
    Ok((brackets_ok, form_ok))
}

/// Named pass/fail clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
}

/// Split-extension clauses for I ⊂ I^⊥ under δξ:
/// I is a two-sided left-symmetric ideal of I^⊥, I^⊥ is closed under the
/// left-symmetric product, {(0,u) : Hu = 0} is a bracket-preserving section
/// of I^⊥/I, and 𝒢 = I^⊥ ⊕ C(N₀) with both summands subalgebras.
pub fn lsa_split_checks<F: Scalar>(alg: &Algebra<F>, xi: &Covector<F>) -> Result<Vec<Clause>> {
    let params = alg.params;
    let om = coboundary(alg, xi);
    let ls = LeftSymmetric::new(alg, &om)?;
    let ideal = abelian_ideal::<F>(params);
    let orth = symp_orthogonal(&om, &ideal);

    let mut two_sided = true;
    for a in orth.basis() {
        for w in ideal.basis() {
            if !ideal.contains(&ls.product(a, w)) || !ideal.contains(&ls.product(w, a)) {
                two_sided = false;
            }
        }
    }
    let mut closed = true;
    for a in orth.basis() {
        for b in orth.basis() {
            if !orth.contains(&ls.product(a, b)) {
                closed = false;
            }
        }
    }

    // section from {(0,u) : Hu = 0}
    let gl_part = Subspace::from_vectors(
        params.dim(),
        &(params.x_dim()..params.dim())
            .map(|i| {
                let mut v = vec![F::zero(); params.dim()];
                v[i] = F::one();
                v
            })
            .collect::<Vec<_>>(),
    );
    let section_space = orth.intersection(&gl_part);
    let complement = section_space.basis().to_vec();
    let mut section_ok = section_space.dim() + ideal.dim() == orth.dim() && is_subalgebra(alg, &section_space);
    if section_ok {
        let quotient = build_quotient(alg, &om, &ideal, orth.clone(), complement.clone())?;
        // π∘s = id and s preserves brackets
        let proj = quotient.project_many(&complement)?;
        for (i, row) in proj.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if (i == j) != v.is_one() || (i != j && !v.is_zero()) {
                    section_ok = false;
                }
            }
        }
        for i in 0..complement.len() {
            for j in 0..complement.len() {
                let br = alg.bracket_vec(&complement[i], &complement[j]);
                let mut rebuilt = vec![F::zero(); params.dim()];
                for (c, v) in quotient.structure[i][j].iter().zip(&complement) {
                    crate::matrix::axpy(&mut rebuilt, c, v);
                }
                if br != rebuilt {
                    section_ok = false;
                }
            }
        }
    }

    let c = c_of_n0::<F>(params);
    let direct_sum = orth.is_complement_of(&c) && is_subalgebra(alg, &orth) && is_subalgebra(alg, &c);

    Ok(vec![
        Clause {
            name: "ideal_is_two_sided_lsa_ideal",
            passed: two_sided,
        },
        Clause {
            name: "orthogonal_is_lsa_subalgebra",
            passed: closed,
        },
        Clause {
            name: "split_section",
            passed: section_ok,
        },
        Clause {
            name: "orthogonal_plus_toeplitz_is_direct",
            passed: direct_sum,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coadjoint::class_representative;
    use crate::liealg::{base_covector, grp_mul};
    use crate::sampling;
    use crate::scalar::Rational;

    type Q = Rational;

    fn alg(n: usize, p: usize) -> Algebra<Q> {
        Algebra::new(Params::new(n, p).unwrap())
    }

    #[test]
    fn moment_examples() {
        let a = alg(2, 1);
        let pr = a.params;
        let xi = base_covector::<Q>(pr);
        assert_eq!(moment_mu(&xi, &GrpElem::identity(pr)).unwrap(), xi);
        let two = GrpElem::linear(pr, Matrix::identity(2).scale(&Q::from_i64(2))).unwrap();
        let mu = moment_mu(&xi, &two).unwrap();
        assert_eq!(
            mu,
            Covector {
                h: xi.h.scale(&Q::from_frac(1, 2)),
                n: xi.n.clone()
            }
        );
        assert_eq!(mu.h, moment_m(&xi, &two).unwrap());

        let tr = GrpElem::translation(pr, Matrix::from_i64(2, 1, &[4, -1])).unwrap();
        assert_eq!(moment_m(&xi, &tr).unwrap(), xi.h);
        let t = GrpElem::linear(pr, Matrix::from_i64(2, 2, &[1, 0, 1, 1])).unwrap();
        assert_eq!(moment_m(&xi, &t).unwrap(), Matrix::from_i64(1, 2, &[-1, 1]));
    }

    #[test]
    fn moment_composition_and_x_independence() {
        let mut rng = sampling::rng(11);
        let pr = Params::new(4, 2).unwrap();
        let xi = base_covector::<Q>(pr);
        for _ in 0..5 {
            let s = sampling::grp_elem::<Q, _>(&mut rng, pr);
            let t = sampling::grp_elem::<Q, _>(&mut rng, pr);
            let lhs = moment_mu(&xi, &grp_mul(&s, &t).unwrap()).unwrap();
            let rhs = coadjoint_action(&s, &moment_mu(&xi, &t).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let shifted = GrpElem {
                x: sampling::matrix(&mut rng, 4, 2),
                t: s.t.clone(),
            };
            assert_eq!(moment_m(&xi, &s).unwrap(), moment_m(&xi, &shifted).unwrap());
        }
    }

    #[test]
    fn moment_is_onto_rank_p() {
        let mut rng = sampling::rng(12);
        for (n, p) in [(2, 1), (4, 2), (3, 1)] {
            let pr = Params::new(n, p).unwrap();
            let xi = base_covector::<Q>(pr);
            for _ in 0..5 {
                let alpha: Matrix<Q> = sampling::matrix(&mut rng, p, n);
                if alpha.rank() < p {
                    continue;
                }
                let s = moment_preimage(&xi, &alpha).unwrap();
                assert_eq!(moment_m(&xi, &s).unwrap(), alpha);
            }
        }
    }

    #[test]
    fn fiber_algebra_two_ways() {
        for (n, p) in [(2, 1), (4, 2), (3, 3)] {
            let a = alg(n, p);
            let xi = base_covector::<Q>(a.params);
            let f = m_fiber_algebra(&a, &xi).unwrap();
            assert_eq!(f, fiber_tangent(&xi).unwrap());
            assert!(f.contains_subspace(&abelian_ideal(a.params)));
            assert!(is_subalgebra(&a, &f));
        }
        let a = alg(2, 1);
        assert_eq!(m_fiber_algebra(&a, &base_covector(a.params)).unwrap().dim(), 4);
        assert_eq!(
            m_fiber_algebra(&a, &Covector::zero(a.params)).err(),
            Some(Error::NotSymplectic)
        );
    }

    #[test]
    fn reduce_by_examples() {
        let a = alg(2, 1);
        let xi = base_covector::<Q>(a.params);
        let trivial = reduce_by(&a, &xi, &Subspace::zero(6)).unwrap();
        assert_eq!(trivial.dim(), 6);
        assert_eq!(trivial.form, coboundary(&a, &xi).mat);
        let red = reduce_by(&a, &xi, &abelian_ideal(a.params)).unwrap();
        assert_eq!(red.dim(), 2);
        let b = alg(4, 2);
        let red = reduce_by(&b, &base_covector(b.params), &abelian_ideal(b.params)).unwrap();
        assert_eq!(red.dim(), 2 * 2 + 2 * 2);
        let c = alg(2, 2);
        let red = reduce_by(&c, &base_covector(c.params), &abelian_ideal(c.params)).unwrap();
        assert_eq!(red.dim(), 0);
        // a non-isotropic W is rejected
        let whole = Subspace::whole(6);
        assert!(matches!(
            reduce_by(&a, &xi, &whole),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn canonical_reduction_small() {
        let a = alg(2, 1);
        let red = reduce_canonical(&a, &base_covector(a.params)).unwrap();
        assert_eq!(red.target, Params::new(1, 1).unwrap());
        assert_eq!(
            red.reduced_covector,
            Covector {
                h: Matrix::from_i64(1, 1, &[1]),
                n: Matrix::from_i64(1, 1, &[0])
            }
        );
        assert_eq!(verify_canonical(&red).unwrap(), (true, true));
    }

    #[test]
    fn canonical_reduction_towers() {
        for (n, p) in [(3, 1), (4, 1), (4, 2), (6, 2)] {
            let a = alg(n, p);
            for s in [1, -1] {
                let xi = class_representative(a.params, &Q::from_i64(s));
                let red = reduce_canonical(&a, &xi).unwrap();
                assert_eq!(verify_canonical(&red).unwrap(), (true, true), "({n},{p})");
                let expected = class_representative(red.target, &Q::from_i64(s));
                assert_eq!(red.reduced_covector, expected);
            }
        }
        let c = alg(2, 2);
        assert!(matches!(
            reduce_canonical(&c, &base_covector(c.params)),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn split_clauses_pass() {
        for (n, p) in [(2, 1), (4, 2), (3, 1)] {
            let a = alg(n, p);
            for clause in lsa_split_checks(&a, &base_covector(a.params)).unwrap() {
                assert!(clause.passed, "{} at ({n},{p})", clause.name);
            }
        }
    }
}
