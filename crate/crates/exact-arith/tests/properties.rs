use exact_arith::{
    modulus, poly_eval, random_assignment, random_fp, Field, Fp, Mono, Poly, Rational, Ring,
    VarAssignment,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fp() -> impl Strategy<Value = Fp> {
    any::<u64>().prop_map(Fp::new)
}

fn rat() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..50).prop_map(|(n, d)| Rational::new(n, d))
}

fn sparse_poly() -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(
        (prop::collection::vec(0u16..3, 0..4), -5i64..6),
        0..6,
    )
    .prop_map(|terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (Mono::from_exps(e), Rational::from_i64(c))),
        )
    })
}

fn field_axioms<F: Field>(a: &F, b: &F, c: &F) {
    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    assert_eq!(a.add(b), b.add(a));
    assert_eq!(a.sub(a), F::zero());
    if !a.is_zero() {
        assert_eq!(a.mul(&a.inv().unwrap()), F::one());
    }
}

proptest! {
    #[test]
    fn prime_field_axioms(a in fp(), b in fp(), c in fp()) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn rational_field_axioms(a in rat(), b in rat(), c in rat()) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn product_divides_back(p in sparse_poly(), q in sparse_poly()) {
        prop_assume!(!q.is_zero());
        let pq = p.mul(&q);
        prop_assert_eq!(pq.div_exact(&q).unwrap(), p);
    }

    #[test]
    fn text_round_trip(p in sparse_poly()) {
        let back: Poly<Rational> = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn eval_is_a_ring_map(p in sparse_poly(), q in sparse_poly(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let at: VarAssignment<Fp> = random_assignment(&[0, 1, 2, 3], &mut rng);
        let ep = poly_eval(&p, &at).unwrap();
        let eq = poly_eval(&q, &at).unwrap();
        prop_assert_eq!(poly_eval(&p.mul(&q), &at).unwrap(), ep.mul(&eq));
        prop_assert_eq!(poly_eval(&p.add(&q), &at).unwrap(), ep.add(&eq));
    }
}

#[test]
fn uniform_draws_have_the_right_mean() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let draws = 10_000;
    let p = modulus() as f64;
    let mean = (0..draws).map(|_| random_fp(&mut rng).residue() as f64).sum::<f64>() / draws as f64;
    // uniform on [0,p): sd p/sqrt(12), sd of the mean divides by sqrt(n)
    let sigma = p / 12f64.sqrt() / (draws as f64).sqrt();
    assert!((mean - p / 2.0).abs() < 5.0 * sigma, "mean {mean} off by more than 5 sigma");
}

#[test]
fn division_of_a_dense_product() {
    // (x0 + x1 + x2 + 1)^4 divided by (x0 + x1 + x2 + 1)^2
    let s: Poly<Rational> = "x0 + x1 + x2 + 1".parse().unwrap();
    let s4 = s.pow(4);
    assert_eq!(s4.div_exact(&s.pow(2)).unwrap(), s.pow(2));
    assert!(s4.add(&Poly::var(3)).div_exact(&s).is_err());
}
