//! Seeded random inputs for property checks and the verification suite.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coadjoint::is_open_orbit;
use crate::liealg::{AlgElem, Covector, GrpElem, Params};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub const DEFAULT_SEED: u64 = 42;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn matrix<F: Scalar, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |_, _| F::sample(rng))
}

pub fn invertible<F: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<F> {
    loop {
        let m: Matrix<F> = matrix(rng, n, n);
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

pub fn alg_elem<F: Scalar, R: Rng + ?Sized>(rng: &mut R, params: Params) -> AlgElem<F> {
    AlgElem {
        x: matrix(rng, params.n, params.p),
        u: matrix(rng, params.n, params.n),
    }
}

pub fn covector<F: Scalar, R: Rng + ?Sized>(rng: &mut R, params: Params) -> Covector<F> {
    Covector {
        h: matrix(rng, params.p, params.n),
        n: matrix(rng, params.n, params.n),
    }
}

pub fn grp_elem<F: Scalar, R: Rng + ?Sized>(rng: &mut R, params: Params) -> GrpElem<F> {
    GrpElem {
        x: matrix(rng, params.n, params.p),
        t: invertible(rng, params.n),
    }
}

/// A group element with det T > 0 over an ordered field.
pub fn identity_component_elem<F: Scalar, R: Rng + ?Sized>(rng: &mut R, params: Params) -> GrpElem<F> {
    loop {
        let g = grp_elem(rng, params);
        if g.in_identity_component() {
            return g;
        }
    }
}

/// Rejection-samples a covector with an open coadjoint orbit.
pub fn open_covector<F: Scalar, R: Rng + ?Sized>(rng: &mut R, params: Params) -> Covector<F> {
    loop {
        let xi = covector(rng, params);
        if is_open_orbit(&xi) {
            return xi;
        }
    }
}
