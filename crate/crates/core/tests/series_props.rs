use num_bigint::BigInt;
use proptest::prelude::*;
use punctual::globalize::{globalize, SurfaceProfile};
use punctual::series::{clear_denominator_dense, Dense, LPoly, QSeries, RationalForm};

const T: usize = 12;

fn dense() -> impl Strategy<Value = Dense> {
    prop::collection::vec(-20i64..20, 1..=T + 1).prop_map(|c| Dense::from_i64s(&c, T))
}

fn unit() -> impl Strategy<Value = Dense> {
    (prop::sample::select(vec![1i64, -1]), prop::collection::vec(-9i64..9, 0..T)).prop_map(|(c0, rest)| {
        let mut c = vec![c0];
        c.extend(rest);
        Dense::from_i64s(&c, T)
    })
}

fn bivariate() -> impl Strategy<Value = QSeries> {
    prop::collection::vec(((0u32..=4, 0u32..=6), -5i64..5), 0..12).prop_map(|terms| {
        let mut t: Vec<(Vec<u32>, BigInt)> = vec![(vec![0, 0], BigInt::from(1))];
        t.extend(terms.into_iter().filter(|((a, b), _)| a + b > 0).map(|((a, b), c)| (vec![a, b], BigInt::from(c))));
        QSeries::from_terms(&["q1", "q2"], &[4, 6], t).unwrap()
    })
}

fn lpoly() -> impl Strategy<Value = LPoly> {
    prop::collection::vec(-6i64..6, 0..6).prop_map(|c| LPoly::from_i64s(&c))
}

proptest! {
    #[test]
    fn dense_ring_axioms(a in dense(), b in dense(), c in dense()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), Dense::zero(T));
        prop_assert_eq!(a.mul(&Dense::one(T)), a);
    }

    #[test]
    fn dense_inverse(u in unit()) {
        let inv = u.inv().unwrap();
        prop_assert_eq!(u.mul(&inv), Dense::one(T));
        prop_assert_eq!(inv.inv().unwrap(), u);
    }

    #[test]
    fn dense_pow_adds_exponents(u in unit(), m in 0u64..4, n in 0u64..4) {
        prop_assert_eq!(u.pow(m + n), u.pow(m).mul(&u.pow(n)));
    }

    #[test]
    fn bivariate_inverse(a in bivariate()) {
        let inv = a.inv().unwrap();
        prop_assert_eq!(a.mul(&inv).unwrap(), QSeries::one(&["q1", "q2"], &[4, 6]).unwrap());
        prop_assert_eq!(inv.inv().unwrap(), a);
    }

    #[test]
    fn bivariate_json_round_trip(a in bivariate()) {
        prop_assert_eq!(QSeries::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn clear_denominator_round_trip(
        num in prop::collection::vec(-9i64..9, 1..8),
        den in prop::collection::btree_map(1usize..6, 1u32..3, 1..4),
    ) {
        let den_pairs: Vec<(usize, u32)> = den.iter().map(|(j, e)| (*j, *e)).collect();
        let rf = RationalForm::from_i64s(&num, &den_pairs);
        let deg = rf.denominator_degree();
        let s = rf.expand(num.len() + deg + 10);
        let back = clear_denominator_dense(&s, &den, num.len() - 1, 10).unwrap();
        prop_assert_eq!(back, rf.clone());
        prop_assert_eq!(RationalForm::from_json(&rf.to_json()).unwrap(), rf);
    }

    #[test]
    fn lpoly_ring_and_specialisation(a in lpoly(), b in lpoly(), c in lpoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
        prop_assert_eq!(LPoly::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn globalize_is_multiplicative(a in bivariate(), b in bivariate(), m in 0i64..4, n in 0i64..4) {
        let s = |e| SurfaceProfile::new("S", e);
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(
            globalize(&ab, &s(m)).unwrap(),
            globalize(&a, &s(m)).unwrap().mul(&globalize(&b, &s(m)).unwrap()).unwrap()
        );
        prop_assert_eq!(
            globalize(&a, &s(m + n)).unwrap(),
            globalize(&a, &s(m)).unwrap().mul(&globalize(&a, &s(n)).unwrap()).unwrap()
        );
    }

    #[test]
    fn globalize_partition_series(e in 0i64..6) {
        let z = QSeries::from_dense(&Dense::partitions(T), "q").unwrap();
        let got = globalize(&z, &SurfaceProfile::new("S", e)).unwrap().to_dense().unwrap();
        prop_assert_eq!(got, Dense::euler(T).inv().unwrap().pow(e as u64));
    }
}

#[test]
fn globalize_rejects_non_units() {
    let two = QSeries::from_dense(&Dense::from_i64s(&[2, 1], 4), "q").unwrap();
    assert!(globalize(&two, &SurfaceProfile::new("S", 2)).is_err());
}

#[test]
fn cube_of_partition_series() {
    let z = QSeries::from_dense(&Dense::partitions(3), "q").unwrap();
    let g = globalize(&z, &SurfaceProfile::new("chi3", 3)).unwrap().to_dense().unwrap();
    assert_eq!(g, Dense::from_i64s(&[1, 3, 9, 22], 3));
}
