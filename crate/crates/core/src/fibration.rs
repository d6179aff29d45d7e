//! Charts of the moment fibration m: G(n,p) → Θ = {rank-p matrices in M(p,n)}
//! and their transition cocycles.
//!
//! The fibration is taken relative to the base covector, so m(X, T) = H₀T⁻¹.
//! A chart V_γ consists of the α whose columns γ form an invertible block; the
//! base chart is γ = last p columns, where the section inverts the block-lower
//! triangular Toeplitz matrix whose last block row is α.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::liealg::{base_covector, grp_inv, grp_mul, GrpElem, Params};
use crate::matrix::Matrix;
use crate::reduction::moment_m;
use crate::sampling;
use crate::scalar::Scalar;

/// Strictly increasing 1-based column indices of length p.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(params: Params, cols: Vec<usize>) -> Result<Self> {
        let ok = cols.len() == params.p
            && cols.iter().all(|&c| (1..=params.n).contains(&c))
            && cols.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(Error::InvalidParams(format!(
                "{cols:?} is not an increasing list of {} indices in 1..={}",
                params.p, params.n
            )));
        }
        Ok(Self(cols))
    }

    /// The last p columns: the base chart.
    pub fn last(params: Params) -> Self {
        Self((params.n - params.p + 1..=params.n).collect())
    }

    /// Every multi-index, in lexicographic order.
    pub fn all(params: Params) -> Vec<Self> {
        fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if left == 0 {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for c in start..=n + 1 - left {
                cur.push(c);
                rec(c + 1, n, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(1, params.n, params.p, &mut Vec::new(), &mut out);
        out
    }

    pub fn cols(&self) -> &[usize] {
        &self.0
    }

    fn zero_based(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|c| c - 1)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn check_point<F: Scalar>(params: Params, alpha: &Matrix<F>) -> Result<()> {
    if alpha.shape() != (params.p, params.n) {
        return Err(Error::Shape(format!("point must be {}x{}", params.p, params.n)));
    }
    Ok(())
}

/// Whether the columns γ of α form an invertible block.
pub fn in_chart<F: Scalar>(params: Params, alpha: &Matrix<F>, gamma: &MultiIndex) -> bool {
    if check_point(params, alpha).is_err() {
        return false;
    }
    let cols: Vec<usize> = gamma.zero_based().collect();
    let block = Matrix::from_fn(params.p, params.p, |r, c| alpha[(r, cols[c])].clone());
    !block.det().expect("square").is_zero()
}

/// Q with (αQ)ⱼ = α_{π(j)}, where π lists the columns outside γ in
/// increasing order followed by γ.
fn reorder<F: Scalar>(params: Params, gamma: &MultiIndex) -> Matrix<F> {
    let in_gamma: Vec<usize> = gamma.zero_based().collect();
    let order: Vec<usize> = (0..params.n)
        .filter(|c| !in_gamma.contains(c))
        .chain(in_gamma.iter().copied())
        .collect();
    let mut q = Matrix::zeros(params.n, params.n);
    for (j, &src) in order.iter().enumerate() {
        q[(src, j)] = F::one();
    }
    q
}

/// σ_γ = (0, Qᵀ): α·σ_γ⁻¹ carries the columns γ to the last p positions.
pub fn sigma_gamma<F: Scalar>(params: Params, gamma: &MultiIndex) -> GrpElem<F> {
    GrpElem {
        x: Matrix::zeros(params.n, params.p),
        t: reorder::<F>(params, gamma).transpose(),
    }
}

/// The block-lower-triangular Toeplitz matrix whose last block row is α.
pub fn toeplitz_from_last_row<F: Scalar>(params: Params, alpha: &Matrix<F>) -> Result<Matrix<F>> {
    check_point(params, alpha)?;
    let (n, p, k) = (params.n, params.p, params.k);
    let mut c = Matrix::zeros(n, n);
    for b in 0..k {
        for col in 0..=b {
            let src = k - 1 - (b - col);
            c.set_block(b * p, col * p, &alpha.block(0, src * p, p, p));
        }
    }
    Ok(c)
}

/// S₀(α) = (0, C(α)⁻¹) on the base chart.
pub fn section_base<F: Scalar>(params: Params, alpha: &Matrix<F>) -> Result<GrpElem<F>> {
    if !in_chart(params, alpha, &MultiIndex::last(params)) {
        return Err(Error::NotInChart);
    }
    let c = toeplitz_from_last_row(params, alpha)?;
    Ok(GrpElem {
        x: Matrix::zeros(params.n, params.p),
        t: c.inverse()?,
    })
}

/// S_γ(α) = σ_γ⁻¹·S₀(α·σ_γ⁻¹), so that m∘S_γ = id on V_γ.
pub fn section<F: Scalar>(params: Params, gamma: &MultiIndex, alpha: &Matrix<F>) -> Result<GrpElem<F>> {
    check_point(params, alpha)?;
    if !in_chart(params, alpha, gamma) {
        return Err(Error::NotInChart);
    }
    let q = reorder::<F>(params, gamma);
    let base = section_base(params, &alpha.mul(&q))?;
    Ok(GrpElem {
        x: q.mul(&base.x),
        t: q.mul(&base.t),
    })
}

/// Γ_{γ₁γ₂}(α) = S_{γ₁}(α)⁻¹·S_{γ₂}(α).
pub fn cocycle<F: Scalar>(params: Params, g1: &MultiIndex, g2: &MultiIndex, alpha: &Matrix<F>) -> Result<GrpElem<F>> {
    let s1 = section(params, g1, alpha)?;
    let s2 = section(params, g2, alpha)?;
    grp_mul(&grp_inv(&s1), &s2)
}

/// m relative to the base covector.
pub fn moment<F: Scalar>(params: Params, sigma: &GrpElem<F>) -> Result<Matrix<F>> {
    moment_m(&base_covector::<F>(params), sigma)
}

/// Whether σ lies in m⁻¹(H₀).
pub fn in_base_fiber<F: Scalar>(params: Params, sigma: &GrpElem<F>) -> Result<bool> {
    Ok(moment(params, sigma)? == base_covector::<F>(params).h)
}

/// Rejection-samples a rank-p point.
pub fn sample_point<F: Scalar, R: Rng + ?Sized>(rng: &mut R, params: Params) -> Matrix<F> {
    loop {
        let a: Matrix<F> = sampling::matrix(rng, params.p, params.n);
        if a.rank() == params.p {
            return a;
        }
    }
}

/// Rejection-samples a point of V_γ.
pub fn sample_point_in_chart<F: Scalar, R: Rng + ?Sized>(rng: &mut R, params: Params, gamma: &MultiIndex) -> Matrix<F> {
    loop {
        let a = sample_point(rng, params);
        if in_chart(params, &a, gamma) {
            return a;
        }
    }
}

/// All 0/1 points of rank p, each tested for membership in some chart.
/// Returns (points checked, points covered).
pub fn exhaustive_cover_check<F: Scalar>(params: Params) -> (usize, usize) {
    let cells = params.p * params.n;
    assert!(cells <= 20, "pattern enumeration is limited to 20 cells");
    let charts = MultiIndex::all(params);
    let (mut checked, mut covered) = (0, 0);
    for mask in 0u32..(1u32 << cells) {
        let a = Matrix::from_fn(params.p, params.n, |r, c| {
            if mask >> (r * params.n + c) & 1 == 1 {
                F::one()
            } else {
                F::zero()
            }
        });
        if a.rank() < params.p {
            continue;
        }
        checked += 1;
        if charts.iter().any(|g| in_chart(params, &a, g)) {
            covered += 1;
        }
    }
    (checked, covered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn params(n: usize, p: usize) -> Params {
        Params::new(n, p).unwrap()
    }

    #[test]
    fn multi_indices() {
        let pr = params(4, 2);
        assert_eq!(MultiIndex::all(pr).len(), 6);
        assert_eq!(MultiIndex::last(pr).cols(), &[3, 4]);
        assert!(MultiIndex::new(pr, vec![2, 1]).is_err());
        assert!(MultiIndex::new(pr, vec![1, 5]).is_err());
        assert!(MultiIndex::new(pr, vec![1]).is_err());
        assert_eq!(MultiIndex::new(pr, vec![1, 3]).unwrap().to_string(), "(1,3)");
    }

    #[test]
    fn chart_membership() {
        for (n, p) in [(2, 1), (4, 2), (6, 2)] {
            let pr = params(n, p);
            let h0 = base_covector::<Q>(pr).h;
            assert!(in_chart(pr, &h0, &MultiIndex::last(pr)));
            let first = MultiIndex::new(pr, (1..=p).collect()).unwrap();
            assert!(!in_chart(pr, &h0, &first));
        }
    }

    #[test]
    fn sigma_examples() {
        let pr = params(4, 2);
        assert_eq!(sigma_gamma::<Q>(pr, &MultiIndex::last(pr)).t, Matrix::identity(4));
        let pr = params(2, 1);
        let g = MultiIndex::new(pr, vec![1]).unwrap();
        assert_eq!(sigma_gamma::<Q>(pr, &g).t, Matrix::from_i64(2, 2, &[0, 1, 1, 0]));
        let mut rng = sampling::rng(31);
        let pr = params(4, 2);
        for gamma in MultiIndex::all(pr) {
            let a = sample_point_in_chart::<Q, _>(&mut rng, pr, &gamma);
            let moved = a.mul(&sigma_gamma::<Q>(pr, &gamma).t.inverse().unwrap());
            assert!(in_chart(pr, &moved, &MultiIndex::last(pr)));
        }
    }

    #[test]
    fn base_section_examples() {
        let pr = params(2, 1);
        let h0 = base_covector::<Q>(pr).h;
        assert_eq!(section_base(pr, &h0).unwrap(), GrpElem::identity(pr));
        let a = Matrix::<Q>::from_i64(1, 2, &[1, 1]);
        assert_eq!(
            toeplitz_from_last_row(pr, &a).unwrap(),
            Matrix::from_i64(2, 2, &[1, 0, 1, 1])
        );
        assert_eq!(section_base(pr, &a).unwrap().t, Matrix::from_i64(2, 2, &[1, 0, -1, 1]));
        assert_eq!(
            section_base(pr, &Matrix::<Q>::from_i64(1, 2, &[1, 0])).err(),
            Some(Error::NotInChart)
        );
    }

    #[test]
    fn toeplitz_closed_under_inverse() {
        let mut rng = sampling::rng(32);
        let pr = params(6, 2);
        for _ in 0..5 {
            let a = sample_point_in_chart::<Q, _>(&mut rng, pr, &MultiIndex::last(pr));
            let ci = toeplitz_from_last_row(pr, &a).unwrap().inverse().unwrap();
            let last_row = ci.block(pr.n - pr.p, 0, pr.p, pr.n);
            assert_eq!(toeplitz_from_last_row(pr, &last_row).unwrap(), ci);
        }
    }

    #[test]
    fn sections_invert_the_moment() {
        let mut rng = sampling::rng(33);
        for (n, p) in [(2, 1), (4, 2), (3, 1)] {
            let pr = params(n, p);
            for gamma in MultiIndex::all(pr) {
                for _ in 0..5 {
                    let a = sample_point_in_chart::<Q, _>(&mut rng, pr, &gamma);
                    assert_eq!(moment(pr, &section(pr, &gamma, &a).unwrap()).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn cocycle_identities() {
        let mut rng = sampling::rng(34);
        let pr = params(4, 2);
        let charts = MultiIndex::all(pr);
        for _ in 0..5 {
            let a = sample_point::<Q, _>(&mut rng, pr);
            let live: Vec<&MultiIndex> = charts.iter().filter(|g| in_chart(pr, &a, g)).collect();
            for g1 in &live {
                assert_eq!(cocycle(pr, g1, g1, &a).unwrap(), GrpElem::identity(pr));
                for g2 in &live {
                    let c12 = cocycle(pr, g1, g2, &a).unwrap();
                    assert!(in_base_fiber(pr, &c12).unwrap());
                    let c21 = cocycle(pr, g2, g1, &a).unwrap();
                    assert_eq!(grp_mul(&c12, &c21).unwrap(), GrpElem::identity(pr));
                    for g3 in &live {
                        let lhs = grp_mul(&c12, &cocycle(pr, g2, g3, &a).unwrap()).unwrap();
                        assert_eq!(lhs, cocycle(pr, g1, g3, &a).unwrap());
                    }
                }
            }
        }
        let pr = params(2, 1);
        let a = Matrix::<Q>::from_i64(1, 2, &[1, 1]);
        let g1 = MultiIndex::new(pr, vec![1]).unwrap();
        let g2 = MultiIndex::new(pr, vec![2]).unwrap();
        assert!(in_base_fiber(pr, &cocycle(pr, &g1, &g2, &a).unwrap()).unwrap());
        assert_eq!(
            cocycle(pr, &g1, &g2, &Matrix::<Q>::from_i64(1, 2, &[0, 1])).err(),
            Some(Error::NotInChart)
        );
    }

    #[test]
    fn cover_is_complete() {
        for (n, p) in [(2, 1), (4, 2), (3, 1), (6, 2)] {
            let (checked, covered) = exhaustive_cover_check::<Q>(params(n, p));
            assert!(checked > 0);
            assert_eq!(checked, covered);
        }
    }
}
