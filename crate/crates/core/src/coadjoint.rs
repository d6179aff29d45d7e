//! Coadjoint representations, isotropy, open orbits and their normal forms.
//!
//! The infinitesimal action is ad*_{(x,u)}(H,N) = (−Hu, [u,N] + xH), the
//! group action is Ad*_{(X,U)}(H,N) = (HU⁻¹, UNU⁻¹ + XHU⁻¹). Both satisfy
//! ⟨ad*_a ξ, b⟩ = −⟨ξ, [a,b]⟩ and Ad*(gh) = Ad*(g)∘Ad*(h).

use crate::error::{Error, Result};
use crate::liealg::{base_covector, canonical_basis, grp_mul, AlgElem, Covector, GrpElem, Params};
use crate::matrix::Matrix;
use crate::sampling;
use crate::scalar::Scalar;
use crate::symform::Subspace;

fn same_shape<F: Scalar>(a: &AlgElem<F>, xi: &Covector<F>) -> Result<()> {
    if a.x.rows() != xi.h.cols() || a.x.cols() != xi.h.rows() || a.u.shape() != xi.n.shape() {
        return Err(Error::Shape("element and covector belong to different algebras".into()));
    }
    Ok(())
}

/// ad*_{(x,u)}(H,N) = (−Hu, uN − Nu + xH).
pub fn ad_star<F: Scalar>(a: &AlgElem<F>, xi: &Covector<F>) -> Result<Covector<F>> {
    same_shape(a, xi)?;
    let h = xi.h.mul(&a.u).neg();
    let n = a.u.commutator(&xi.n).add(&a.x.mul(&xi.h));
    Ok(Covector { h, n })
}

/// The variant (−H, uN − Nu + xH) whose H-part lacks the factor u. It is
/// not linear in u and fails the pairing identity; kept for comparison.
pub fn ad_star_without_u_factor<F: Scalar>(a: &AlgElem<F>, xi: &Covector<F>) -> Result<Covector<F>> {
    same_shape(a, xi)?;
    let n = a.u.commutator(&xi.n).add(&a.x.mul(&xi.h));
    Ok(Covector { h: xi.h.neg(), n })
}

/// Ad*_{(X,U)}(H,N) = (HU⁻¹, UNU⁻¹ + XHU⁻¹).
pub fn coadjoint_action<F: Scalar>(g: &GrpElem<F>, xi: &Covector<F>) -> Result<Covector<F>> {
    if g.x.rows() != xi.h.cols() || g.x.cols() != xi.h.rows() || g.t.shape() != xi.n.shape() {
        return Err(Error::Shape(
            "group element and covector belong to different groups".into(),
        ));
    }
    let ti = g.t.inverse()?;
    let hti = xi.h.mul(&ti);
    let n = g.t.mul(&xi.n).mul(&ti).add(&g.x.mul(&hti));
    Ok(Covector { h: hti, n })
}

/// Matrix of a ↦ ad*_a ξ from algebra coordinates to covector coordinates.
pub fn ad_star_matrix<F: Scalar>(xi: &Covector<F>) -> Result<Matrix<F>> {
    let params = xi.params()?;
    let cols: Vec<Vec<F>> = canonical_basis::<F>(params)
        .iter()
        .map(|e| ad_star(e, xi).map(|c| c.coords()))
        .collect::<Result<_>>()?;
    Ok(Matrix::from_columns(params.dim(), &cols))
}

/// The isotropy subalgebra {a : ad*_a ξ = 0}.
pub fn isotropy_algebra<F: Scalar>(xi: &Covector<F>) -> Result<Subspace<F>> {
    let m = ad_star_matrix(xi)?;
    Ok(Subspace::from_vectors(m.cols(), &m.kernel_vectors()))
}

/// True when the isotropy subalgebra is trivial, i.e. the orbit is open.
pub fn is_open_orbit<F: Scalar>(xi: &Covector<F>) -> bool {
    ad_star_matrix(xi).map(|m| m.rank() == m.cols()).unwrap_or(false)
}

/// Dimension of the solution set of the stabilizer equations HU = H and
/// UN + XH = NU through the identity, built directly from matrix entries.
pub fn group_stabilizer_dim<F: Scalar>(xi: &Covector<F>) -> Result<usize> {
    let params = xi.params()?;
    let (n, p, d) = (params.n, params.p, params.dim());
    let (h, nn) = (&xi.h, &xi.n);
    let mut rows = Vec::with_capacity(p * n + n * n);
    // H·V = 0
    for i in 0..p {
        for j in 0..n {
            let mut r = vec![F::zero(); d];
            for k in 0..n {
                r[params.u_index(k, j)] = h[(i, k)].clone();
            }
            rows.push(r);
        }
    }
    // V·N − N·V + X·H = 0
    for i in 0..n {
        for j in 0..n {
            let mut r = vec![F::zero(); d];
            for k in 0..n {
                let a = params.u_index(i, k);
                r[a] = r[a].clone() + nn[(k, j)].clone();
                let b = params.u_index(k, j);
                r[b] = r[b].clone() - nn[(i, k)].clone();
            }
            for k in 0..p {
                r[params.x_index(i, k)] = h[(k, j)].clone();
            }
            rows.push(r);
        }
    }
    Ok(d - Matrix::from_rows(rows)?.rank())
}

/// det of the n×n matrix stacking H, HN, …, HN^{k−1}.
///
/// Under Ad*_{(X,U)} it is multiplied by det(U)⁻¹, so its sign separates
/// the open orbits of the identity component over an ordered field.
pub fn orbit_invariant<F: Scalar>(xi: &Covector<F>) -> Result<F> {
    let params = xi.params()?;
    let mut block = xi.h.clone();
    let mut stack = block.clone();
    for _ in 1..params.k {
        block = block.mul(&xi.n);
        stack = stack.vstack(&block);
    }
    stack.det()
}

/// Result of [`normal_form`].
#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm<F> {
    pub rep: Covector<F>,
    pub witness: GrpElem<F>,
    pub base_sign: F,
}

/// diag(1, …, 1, s) of size p.
fn sign_diag<F: Scalar>(p: usize, s: &F) -> Matrix<F> {
    let mut d = Matrix::identity(p);
    d[(p - 1, p - 1)] = s.clone();
    d
}

/// The normal-form representative whose recursion base is diag(1, …, 1, s).
/// With s = 1 this is (H₀, N₀).
pub fn class_representative<F: Scalar>(params: Params, s: &F) -> Covector<F> {
    let mut xi = base_covector::<F>(params);
    let d = sign_diag(params.p, s);
    if params.k == 1 {
        xi.h = d;
    } else {
        xi.n.set_block(params.p, 0, &d);
    }
    xi
}

fn base_step<F: Scalar>(params: Params, xi: &Covector<F>) -> Result<NormalForm<F>> {
    let det = xi.h.det()?;
    if det.is_zero() {
        return Err(Error::NotOpenOrbit);
    }
    let s = match det.sign() {
        Some(std::cmp::Ordering::Less) => -F::one(),
        _ => F::one(),
    };
    let d = sign_diag(params.p, &s);
    // D⁻¹ = D
    let u = d.mul(&xi.h);
    let ui = u.inverse()?;
    let x = u.mul(&xi.n).mul(&ui).mul(&d).neg();
    let witness = GrpElem { x, t: u };
    let rep = Covector {
        h: d,
        n: Matrix::zeros(params.p, params.p),
    };
    Ok(NormalForm {
        rep,
        witness,
        base_sign: s,
    })
}

fn kill_last_block_column<F: Scalar>(params: Params, xi: &Covector<F>) -> GrpElem<F> {
    let (n, p) = (params.n, params.p);
    GrpElem {
        x: xi.n.block(0, n - p, n, p).neg(),
        t: Matrix::identity(n),
    }
}

fn recursive_step<F: Scalar>(params: Params, xi: &Covector<F>) -> Result<NormalForm<F>> {
    if params.k == 1 {
        return base_step(params, xi);
    }
    let (n, p) = (params.n, params.p);
    let m = n - p;

    // move H to H₀ by U with U⁻¹ = [ker H | S], HS = I, det U = 1
    let kernel = xi.h.kernel();
    if kernel.cols() != m {
        return Err(Error::NotOpenOrbit);
    }
    let s = xi.h.solve(&Matrix::identity(p))?.ok_or(Error::NotOpenOrbit)?;
    let mut v = kernel.hstack(&s);
    let det = v.det()?;
    if det.is_zero() {
        return Err(Error::NotOpenOrbit);
    }
    let inv_det = F::one() / det;
    for r in 0..n {
        v[(r, 0)] = v[(r, 0)].clone() * inv_det.clone();
    }
    let g1 = GrpElem {
        x: Matrix::zeros(n, p),
        t: v.inverse()?,
    };
    let xi1 = coadjoint_action(&g1, xi)?;

    let g2 = kill_last_block_column(params, &xi1);
    let xi2 = coadjoint_action(&g2, &xi1)?;

    let sub_params = params.reduced().expect("k > 1");
    let sub = Covector {
        h: xi2.n.block(m, 0, p, m),
        n: xi2.n.block(0, 0, m, m),
    };
    let inner = recursive_step(sub_params, &sub)?;

    // lift (X', U') to [[U', X'], [0, I]]
    let mut lifted = Matrix::identity(n);
    lifted.set_block(0, 0, &inner.witness.t);
    lifted.set_block(0, m, &inner.witness.x);
    let g3 = GrpElem {
        x: Matrix::zeros(n, p),
        t: lifted,
    };
    let xi3 = coadjoint_action(&g3, &xi2)?;

    let g4 = kill_last_block_column(params, &xi3);
    let rep = coadjoint_action(&g4, &xi3)?;

    let witness = grp_mul(&g4, &grp_mul(&g3, &grp_mul(&g2, &g1)?)?)?;
    Ok(NormalForm {
        rep,
        witness,
        base_sign: inner.base_sign,
    })
}

/// Reduces an open covector to its normal form.
///
/// At each level H is moved to H₀ by a determinant-one change of basis, the
/// last block column of N is removed by a translation, and the procedure
/// recurses on the block pair (bottom-left, top-left) of N in 𝒢*(n−p, p).
/// At n = p the remaining H is scaled to diag(1, …, 1, s), where over an
/// ordered field s is the sign of det H and over ℚ(i) s = 1. Every move lies
/// in the identity component.
pub fn normal_form<F: Scalar>(xi: &Covector<F>) -> Result<NormalForm<F>> {
    let params = xi.params()?;
    if !is_open_orbit(xi) {
        return Err(Error::NotOpenOrbit);
    }
    recursive_step(params, xi)
}

/// Whether two open covectors lie in the same orbit of the identity component.
pub fn same_open_orbit<F: Scalar>(a: &Covector<F>, b: &Covector<F>) -> Result<bool> {
    if a.params()? != b.params()? {
        return Err(Error::Shape("covectors of different algebras".into()));
    }
    Ok(normal_form(a)?.base_sign == normal_form(b)?.base_sign)
}

/// Number of distinct open-orbit classes met by a family made of both class
/// representatives, `samples` random open covectors and their images under
/// random identity-component elements. Every normal form is checked against
/// its witness.
pub fn count_open_orbit_classes<F: Scalar>(params: Params, samples: usize, seed: u64) -> Result<usize> {
    let mut rng = sampling::rng(seed);
    let mut family = vec![
        class_representative(params, &F::one()),
        class_representative(params, &-F::one()),
    ];
    for _ in 0..samples {
        let xi = sampling::open_covector::<F, _>(&mut rng, params);
        let g = sampling::identity_component_elem::<F, _>(&mut rng, params);
        family.push(coadjoint_action(&g, &xi)?);
        family.push(xi);
    }
    let mut signs: Vec<F> = Vec::new();
    for xi in &family {
        let nf = normal_form(xi)?;
        if coadjoint_action(&nf.witness, xi)? != nf.rep || !nf.witness.in_identity_component() {
            return Err(Error::PreconditionViolated("normal form witness mismatch".into()));
        }
        if !signs.contains(&nf.base_sign) {
            signs.push(nf.base_sign);
        }
    }
    Ok(signs.len())
}

/// The automorphism θ_P(x, u) = (P⁻¹x, P⁻¹uP) as a matrix on coordinates.
pub fn structure_automorphism<F: Scalar>(params: Params, p_mat: &Matrix<F>) -> Result<Matrix<F>> {
    if p_mat.shape() != (params.n, params.n) {
        return Err(Error::Shape(format!("P must be {}x{}", params.n, params.n)));
    }
    let pi = p_mat.inverse()?;
    let cols: Vec<Vec<F>> = canonical_basis::<F>(params)
        .iter()
        .map(|e| {
            AlgElem {
                x: pi.mul(&e.x),
                u: pi.mul(&e.u).mul(p_mat),
            }
            .coords()
        })
        .collect();
    Ok(Matrix::from_columns(params.dim(), &cols))
}

/// ξ∘θ_P = (HP⁻¹, PNP⁻¹).
pub fn pullback_covector<F: Scalar>(p_mat: &Matrix<F>, xi: &Covector<F>) -> Result<Covector<F>> {
    let pi = p_mat.inverse()?;
    Ok(Covector {
        h: xi.h.mul(&pi),
        n: p_mat.mul(&xi.n).mul(&pi),
    })
}

/// An invertible P with ξ₂∘θ_P = ξ₁, found by solving H₂ = H₁P and
/// PN₂ = N₁P. `None` when the system has no invertible solution.
pub fn conjugating_matrix<F: Scalar>(xi1: &Covector<F>, xi2: &Covector<F>) -> Result<Option<Matrix<F>>> {
    let params = xi1.params()?;
    if xi2.params()? != params {
        return Err(Error::Shape("covectors of different algebras".into()));
    }
    let (n, p) = (params.n, params.p);
    let idx = |i: usize, j: usize| i * n + j;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..p {
        for j in 0..n {
            let mut r = vec![F::zero(); n * n];
            for k in 0..n {
                r[idx(k, j)] = xi1.h[(i, k)].clone();
            }
            rows.push(r);
            rhs.push(xi2.h[(i, j)].clone());
        }
    }
    for i in 0..n {
        for j in 0..n {
            let mut r = vec![F::zero(); n * n];
            for k in 0..n {
                let a = idx(i, k);
                r[a] = r[a].clone() + xi2.n[(k, j)].clone();
                let b = idx(k, j);
                r[b] = r[b].clone() - xi1.n[(i, k)].clone();
            }
            rows.push(r);
            rhs.push(F::zero());
        }
    }
    let sol = Matrix::from_rows(rows)?.solve(&Matrix::column(&rhs))?;
    let Some(sol) = sol else { return Ok(None) };
    let pm = Matrix::from_fn(n, n, |i, j| sol[(idx(i, j), 0)].clone());
    Ok((!pm.det()?.is_zero()).then_some(pm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{grp_inv, pair, Algebra};
    use crate::scalar::{GaussianRational, Rational};
    use crate::symform::{coboundary, radical};

    type Q = Rational;

    fn params(n: usize, p: usize) -> Params {
        Params::new(n, p).unwrap()
    }

    fn q(v: i64) -> Q {
        Q::from_i64(v)
    }

    #[test]
    fn ad_star_examples() {
        let pr = params(2, 1);
        let xi = base_covector::<Q>(pr);
        assert!(ad_star(&AlgElem::zero(pr), &xi).unwrap().is_zero());
        let x = Matrix::from_i64(2, 1, &[3, -1]);
        let r = ad_star(
            &AlgElem {
                x: x.clone(),
                u: Matrix::zeros(2, 2),
            },
            &xi,
        )
        .unwrap();
        assert!(r.h.is_zero());
        assert_eq!(r.n, x.mul(&xi.h));
    }

    #[test]
    fn ad_star_matches_pairing_identity() {
        let mut rng = sampling::rng(1);
        for (n, p) in [(2, 1), (2, 2), (4, 2)] {
            let pr = params(n, p);
            let alg = Algebra::<Q>::new(pr);
            let basis = canonical_basis::<Q>(pr);
            for _ in 0..3 {
                let xi = sampling::covector::<Q, _>(&mut rng, pr);
                for a in &basis {
                    let ad = ad_star(a, &xi).unwrap();
                    for b in &basis {
                        let lhs = pair(&ad, b).unwrap();
                        let rhs = -pair(&xi, &alg.bracket(a, b)).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn uncorrected_gl_formula_disagrees() {
        // (−H, [u,N]) is not linear in u; the pairing identity gives (−Hu, [u,N])
        let pr = params(2, 1);
        let xi = base_covector::<Q>(pr);
        let u = Matrix::from_i64(2, 2, &[2, 0, 0, 0]);
        let a = AlgElem {
            x: Matrix::zeros(2, 1),
            u: u.clone(),
        };
        let uncorrected = ad_star_without_u_factor(&a, &xi).unwrap();
        assert_ne!(ad_star(&a, &xi).unwrap(), uncorrected);
        assert_eq!(ad_star(&a, &xi).unwrap().h, uncorrected.h.mul(&u));
        assert_eq!(ad_star(&a, &xi).unwrap().n, uncorrected.n);
    }

    #[test]
    fn coadjoint_action_examples() {
        let pr = params(2, 1);
        let xi = base_covector::<Q>(pr);
        assert_eq!(coadjoint_action(&GrpElem::identity(pr), &xi).unwrap(), xi);
        let g = GrpElem::linear(pr, Matrix::identity(2).scale(&q(2))).unwrap();
        let r = coadjoint_action(&g, &xi).unwrap();
        assert_eq!(r.h, xi.h.scale(&Q::from_frac(1, 2)));
        assert_eq!(r.n, xi.n);
        let x = Matrix::from_i64(2, 1, &[5, 7]);
        let g = GrpElem::translation(pr, x.clone()).unwrap();
        let r = coadjoint_action(&g, &xi).unwrap();
        assert_eq!(
            r,
            Covector {
                h: xi.h.clone(),
                n: xi.n.add(&x.mul(&xi.h))
            }
        );
    }

    #[test]
    fn coadjoint_action_is_a_left_action() {
        let mut rng = sampling::rng(2);
        for (n, p) in [(2, 1), (3, 1), (4, 2)] {
            let pr = params(n, p);
            for _ in 0..5 {
                let g = sampling::grp_elem::<Q, _>(&mut rng, pr);
                let h = sampling::grp_elem::<Q, _>(&mut rng, pr);
                let xi = sampling::covector::<Q, _>(&mut rng, pr);
                let lhs = coadjoint_action(&grp_mul(&g, &h).unwrap(), &xi).unwrap();
                let rhs = coadjoint_action(&g, &coadjoint_action(&h, &xi).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                let back = coadjoint_action(&grp_inv(&g), &coadjoint_action(&g, &xi).unwrap()).unwrap();
                assert_eq!(back, xi);
            }
        }
    }

    #[test]
    fn isotropy_examples() {
        let pr = params(2, 1);
        assert_eq!(isotropy_algebra(&Covector::<Q>::zero(pr)).unwrap().dim(), 6);
        assert!(!is_open_orbit(&Covector::<Q>::zero(pr)));
        let base = base_covector::<Q>(pr);
        let h_only = Covector {
            h: base.h.clone(),
            n: Matrix::zeros(2, 2),
        };
        assert!(isotropy_algebra(&h_only).unwrap().dim() > 0);
        for (n, p) in [(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (4, 2), (3, 3)] {
            let pr = params(n, p);
            assert!(is_open_orbit(&base_covector::<Q>(pr)), "({n},{p})");
        }
    }

    #[test]
    fn openness_agrees_with_coboundary_rank() {
        let mut rng = sampling::rng(3);
        for (n, p) in [(2, 1), (2, 2), (3, 1)] {
            let pr = params(n, p);
            let alg = Algebra::<Q>::new(pr);
            for _ in 0..10 {
                let mut xi = sampling::covector::<Q, _>(&mut rng, pr);
                if rand::Rng::gen_bool(&mut rng, 0.3) {
                    xi.h = Matrix::zeros(p, n);
                }
                let rad = radical(&coboundary(&alg, &xi)).dim();
                assert_eq!(is_open_orbit(&xi), rad == 0);
                assert_eq!(isotropy_algebra(&xi).unwrap().dim(), rad);
                assert_eq!(group_stabilizer_dim(&xi).unwrap(), rad);
            }
        }
    }

    #[test]
    fn stabilizer_dimensions() {
        assert_eq!(group_stabilizer_dim(&base_covector::<Q>(params(2, 1))).unwrap(), 0);
        assert_eq!(group_stabilizer_dim(&base_covector::<Q>(params(4, 2))).unwrap(), 0);
        assert_eq!(group_stabilizer_dim(&Covector::<Q>::zero(params(4, 2))).unwrap(), 24);
    }

    fn cov11(h: i64, n: i64) -> Covector<Q> {
        Covector {
            h: Matrix::from_i64(1, 1, &[h]),
            n: Matrix::from_i64(1, 1, &[n]),
        }
    }

    #[test]
    fn normal_form_one_dimensional() {
        let nf = normal_form(&cov11(2, 5)).unwrap();
        assert_eq!(nf.rep, cov11(1, 0));
        assert_eq!(nf.base_sign, q(1));
        let nf = normal_form(&cov11(-3, 7)).unwrap();
        assert_eq!(nf.rep, cov11(-1, 0));
        assert_eq!(nf.base_sign, q(-1));
        assert!(nf.witness.in_identity_component());
        assert_eq!(normal_form(&cov11(0, 1)).err(), Some(Error::NotOpenOrbit));
    }

    #[test]
    fn normal_form_fixed_points_and_signs() {
        for (n, p) in [(1, 1), (2, 1), (3, 1), (2, 2), (4, 2), (6, 2), (3, 3)] {
            let pr = params(n, p);
            let base = base_covector::<Q>(pr);
            let nf = normal_form(&base).unwrap();
            assert_eq!(nf.rep, base);
            assert_eq!(nf.base_sign, q(1));
            let minus = class_representative(pr, &q(-1));
            let nf = normal_form(&minus).unwrap();
            assert_eq!(nf.rep, minus);
            assert_eq!(nf.base_sign, q(-1));
        }
        let pr = params(2, 1);
        let base = base_covector::<Q>(pr);
        let flipped = Covector {
            h: base.h.clone(),
            n: base.n.neg(),
        };
        assert_eq!(normal_form(&flipped).unwrap().base_sign, q(-1));
    }

    #[test]
    fn normal_form_witness_reproduces_rep() {
        let mut rng = sampling::rng(4);
        for (n, p) in [(2, 1), (3, 1), (4, 1), (2, 2), (4, 2), (6, 2)] {
            let pr = params(n, p);
            for _ in 0..4 {
                let xi = sampling::open_covector::<Q, _>(&mut rng, pr);
                let nf = normal_form(&xi).unwrap();
                assert!(nf.witness.in_identity_component());
                assert_eq!(coadjoint_action(&nf.witness, &xi).unwrap(), nf.rep);
                assert_eq!(nf.rep, class_representative(pr, &nf.base_sign));
                // the relative invariant agrees with the classification
                let inv = orbit_invariant(&xi).unwrap();
                let inv_rep = orbit_invariant(&nf.rep).unwrap();
                assert_eq!(inv.sign(), inv_rep.sign());
            }
        }
    }

    #[test]
    fn orbit_invariant_separates_classes() {
        for (n, p) in [(1, 1), (2, 1), (4, 2), (3, 3)] {
            let pr = params(n, p);
            let plus = orbit_invariant(&class_representative(pr, &q(1))).unwrap();
            let minus = orbit_invariant(&class_representative(pr, &q(-1))).unwrap();
            assert_eq!(plus, -minus);
            assert!(!plus.is_zero());
        }
    }

    #[test]
    fn same_orbit_decisions() {
        assert!(!same_open_orbit(&cov11(1, 0), &cov11(-1, 0)).unwrap());
        assert!(same_open_orbit(&cov11(1, 0), &cov11(5, -2)).unwrap());
        type G = GaussianRational;
        let a = Covector {
            h: Matrix::<G>::identity(1),
            n: Matrix::zeros(1, 1),
        };
        let b = Covector {
            h: Matrix::<G>::identity(1).neg(),
            n: Matrix::zeros(1, 1),
        };
        assert!(same_open_orbit(&a, &b).unwrap());
        let mut rng = sampling::rng(5);
        let pr = params(4, 2);
        let xi = sampling::open_covector::<Q, _>(&mut rng, pr);
        let g = sampling::identity_component_elem::<Q, _>(&mut rng, pr);
        assert!(same_open_orbit(&xi, &coadjoint_action(&g, &xi).unwrap()).unwrap());
    }

    #[test]
    fn class_counts() {
        assert_eq!(count_open_orbit_classes::<Q>(params(2, 1), 5, 7).unwrap(), 2);
        assert_eq!(
            count_open_orbit_classes::<GaussianRational>(params(2, 1), 5, 7).unwrap(),
            1
        );
        assert_eq!(count_open_orbit_classes::<Q>(params(1, 1), 5, 7).unwrap(), 2);
    }

    #[test]
    fn structure_automorphism_preserves_bracket() {
        let pr = params(2, 1);
        let alg = Algebra::<Q>::new(pr);
        assert_eq!(
            structure_automorphism(pr, &Matrix::<Q>::identity(2)).unwrap(),
            Matrix::identity(6)
        );
        let p_mat = Matrix::<Q>::from_i64(2, 2, &[2, 1, -1, 3]);
        let th = structure_automorphism(pr, &p_mat).unwrap();
        let d = alg.dim();
        for i in 0..d {
            for j in 0..d {
                let lhs = th.mul_vec(&alg.structure_table()[i][j]);
                let rhs = alg.bracket_vec(&th.col(i), &th.col(j));
                assert_eq!(lhs, rhs);
            }
        }
        assert_eq!(
            structure_automorphism(pr, &Matrix::<Q>::from_i64(2, 2, &[1, 1, 1, 1])).err(),
            Some(Error::SingularMatrix)
        );
    }

    #[test]
    fn classes_share_one_symplectic_structure() {
        for (n, p) in [(1, 1), (2, 1), (4, 2), (3, 3)] {
            let pr = params(n, p);
            let alg = Algebra::<Q>::new(pr);
            let xi1 = class_representative(pr, &q(1));
            let xi2 = class_representative(pr, &q(-1));
            let pm = conjugating_matrix(&xi1, &xi2).unwrap().expect("invertible P");
            assert!(pm.det().unwrap().sign() == Some(std::cmp::Ordering::Less));
            assert_eq!(pullback_covector(&pm, &xi2).unwrap(), xi1);
            let th = structure_automorphism(pr, &pm).unwrap();
            assert_eq!(coboundary(&alg, &xi2).pullback(&th), coboundary(&alg, &xi1));
        }
    }
}
