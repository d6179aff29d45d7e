use frobenius::coadjoint::{ad_star, coadjoint_action, normal_form, orbit_invariant};
use frobenius::liealg::{bracket, embed_gl, grp_inv, grp_mul, pair, Algebra, Params};
use frobenius::symform::{cobound, coboundary, is_closed};
use frobenius::{sampling, GaussianRational, Matrix, Rational, Scalar};
use proptest::prelude::*;

const SMALL: [(usize, usize); 5] = [(1, 1), (2, 1), (3, 1), (2, 2), (4, 2)];

fn params() -> impl Strategy<Value = Params> {
    prop::sample::select(SMALL.to_vec()).prop_map(|(n, p)| Params::new(n, p).unwrap())
}

fn int_matrix(max_dim: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (1..=max_dim, 1..=max_dim)
        .prop_flat_map(|(r, c)| prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| Matrix::from_i64(r, c, &v)))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..200).prop_map(|(a, b)| Rational::from_i64(a) / Rational::from_i64(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_matrix_commutator(params in params(), seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let a = sampling::alg_elem::<Rational, _>(&mut rng, params);
        let b = sampling::alg_elem::<Rational, _>(&mut rng, params);
        let ab = bracket(&a, &b).unwrap();
        prop_assert_eq!(embed_gl(&ab), embed_gl(&a).commutator(&embed_gl(&b)));
        prop_assert!(ab.add(&bracket(&b, &a).unwrap()).is_zero());
    }

    #[test]
    fn jacobi_on_random_elements(params in params(), seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let [a, b, c] = [0; 3].map(|_| sampling::alg_elem::<Rational, _>(&mut rng, params));
        let t1 = bracket(&a, &bracket(&b, &c).unwrap()).unwrap();
        let t2 = bracket(&b, &bracket(&c, &a).unwrap()).unwrap();
        let t3 = bracket(&c, &bracket(&a, &b).unwrap()).unwrap();
        prop_assert!(t1.add(&t2).add(&t3).is_zero());
    }

    #[test]
    fn ad_star_is_minus_pairing_of_bracket(params in params(), seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let xi = sampling::covector::<Rational, _>(&mut rng, params);
        let a = sampling::alg_elem::<Rational, _>(&mut rng, params);
        let b = sampling::alg_elem::<Rational, _>(&mut rng, params);
        let lhs = pair(&ad_star(&a, &xi).unwrap(), &b).unwrap();
        let rhs = -pair(&xi, &bracket(&a, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coadjoint_action_is_a_left_action(params in params(), seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let xi = sampling::covector::<Rational, _>(&mut rng, params);
        let g = sampling::grp_elem::<Rational, _>(&mut rng, params);
        let h = sampling::grp_elem::<Rational, _>(&mut rng, params);
        let gh = grp_mul(&g, &h).unwrap();
        let nested = coadjoint_action(&g, &coadjoint_action(&h, &xi).unwrap()).unwrap();
        prop_assert_eq!(coadjoint_action(&gh, &xi).unwrap(), nested);
        let back = coadjoint_action(&grp_inv(&g), &coadjoint_action(&g, &xi).unwrap()).unwrap();
        prop_assert_eq!(back, xi);
    }

    #[test]
    fn exact_forms_are_closed_and_recovered(idx in 0usize..4, seed in any::<u64>()) {
        let (n, p) = SMALL[idx];
        let params = Params::new(n, p).unwrap();
        let alg = Algebra::<Rational>::new(params);
        let mut rng = sampling::rng(seed);
        let xi = sampling::covector::<Rational, _>(&mut rng, params);
        let om = coboundary(&alg, &xi);
        prop_assert!(is_closed(&alg, &om));
        let eta = cobound(&alg, &om).unwrap();
        prop_assert_eq!(coboundary(&alg, &eta), om);
    }

    #[test]
    fn normal_form_is_orbit_invariant(params in params(), seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let xi = sampling::open_covector::<Rational, _>(&mut rng, params);
        let g = sampling::identity_component_elem::<Rational, _>(&mut rng, params);
        let moved = coadjoint_action(&g, &xi).unwrap();
        let a = normal_form(&xi).unwrap();
        let b = normal_form(&moved).unwrap();
        prop_assert_eq!(&a.rep, &b.rep);
        prop_assert_eq!(coadjoint_action(&b.witness, &moved).unwrap(), b.rep);
        let (s, t) = (orbit_invariant(&xi).unwrap(), orbit_invariant(&moved).unwrap());
        prop_assert_eq!(s.sign(), t.sign());
    }

    #[test]
    fn rank_nullity(m in int_matrix(7)) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).entries().iter().all(Scalar::is_zero));
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn det_is_multiplicative(v in prop::collection::vec(-4i64..=4, 32)) {
        let a = Matrix::<Rational>::from_i64(4, 4, &v[..16]);
        let b = Matrix::<Rational>::from_i64(4, 4, &v[16..]);
        prop_assert_eq!(a.mul(&b).det().unwrap(), a.det().unwrap() * b.det().unwrap());
        prop_assert_eq!(a.rank() == 4, !a.det().unwrap().is_zero());
    }

    #[test]
    fn scalar_strings_round_trip(re in rational(), im in rational()) {
        let s = re.to_canonical_string();
        prop_assert_eq!(Rational::parse_canonical(&s).unwrap(), re.clone());
        let g = GaussianRational::new(re, im);
        let s = g.to_canonical_string();
        prop_assert_eq!(GaussianRational::parse_canonical(&s).unwrap(), g);
    }
}
