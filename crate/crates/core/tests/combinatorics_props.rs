use num_bigint::BigInt;
use proptest::prelude::*;
use punctual::flag::{fz_lambda, FlagEngine};
use punctual::motive::{gottsche_punctual, hs_dimension, hs_motive_exponent, HsVector};
use punctual::partition::{
    count_coloured_flags, count_nested_flags, enum_partitions, insertion_count, FlagSpec, Partition,
};
use punctual::series::Dense;
use punctual::shapes::{enum_connected_skew, enum_skew_classes, rp_count, SkewShape};

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..7, 0..7).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

/// nu inside mu, built by shrinking each part of mu while keeping nu a partition.
fn nested_pair() -> impl Strategy<Value = (Partition, Partition)> {
    (partition(), prop::collection::vec(0usize..7, 7)).prop_map(|(mu, cuts)| {
        let mut nu = vec![];
        let mut cap = usize::MAX;
        for (i, &m) in mu.parts().iter().enumerate() {
            let x = m.saturating_sub(cuts[i]).min(cap);
            cap = x;
            nu.push(x);
        }
        nu.retain(|&x| x > 0);
        (mu, Partition::new(nu).unwrap())
    })
}

fn hs_vector() -> impl Strategy<Value = HsVector> {
    (1usize..5, prop::collection::vec(0usize..5, 0..5)).prop_map(|(d, drops)| {
        let mut h: Vec<usize> = (1..=d).collect();
        let mut cur = d;
        for x in drops {
            cur = cur.saturating_sub(x);
            if cur == 0 {
                break;
            }
            h.push(cur);
        }
        HsVector::new(h).unwrap()
    })
}

fn hook_count(p: &Partition) -> BigInt {
    let c = p.conjugate();
    let mut denom = BigInt::from(1);
    for i in 0..p.len() {
        for j in 0..p.part(i) {
            denom *= p.part(i) - j + c.part(j) - i - 1;
        }
    }
    (1..=p.size()).fold(BigInt::from(1), |a, k| a * k) / denom
}

proptest! {
    #[test]
    fn conjugation_is_an_involution(p in partition()) {
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(p.conjugate().size(), p.size());
    }

    #[test]
    fn skew_transpose_commutes_with_conjugation((mu, nu) in nested_pair()) {
        let s = SkewShape::from_partitions(&mu, &nu);
        prop_assert_eq!(s.size(), mu.size() - nu.size());
        prop_assert_eq!(s.transpose(), SkewShape::from_partitions(&mu.conjugate(), &nu.conjugate()));
        prop_assert_eq!(s.transpose().transpose(), s.clone());
        prop_assert_eq!(SkewShape::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn exponent_matches_tangent_count(h in hs_vector()) {
        let d = h.d();
        let t = h.values().len();
        let drop: i64 = (d..=t)
            .map(|i| (h.at(i - 1) as i64 - h.at(i) as i64 + 1) * (h.at(i) as i64 - h.at(i + 1) as i64))
            .sum();
        prop_assert_eq!(hs_motive_exponent(&h), hs_dimension(&h) - drop);
        prop_assert!(hs_dimension(&h) >= 0);
    }

    #[test]
    fn one_colour_is_plain_nesting(sizes in prop::collection::vec(0usize..4, 1..4)) {
        let mut s = sizes;
        s.sort_unstable();
        let spec = FlagSpec::new(s).unwrap();
        prop_assert_eq!(count_coloured_flags(1, &spec).unwrap(), count_nested_flags(&spec));
    }
}

#[test]
fn connected_paths_measure_the_shape() {
    for d in 1..=7 {
        for c in enum_connected_skew(d) {
            let p = c.nw_path();
            assert_eq!(p.l(), c.width());
            assert_eq!(p.vv(), c.height());
            assert_eq!(c.transpose().transpose(), c);
        }
    }
}

#[test]
fn labelled_fillings_of_partitions_are_standard_tableaux() {
    for d in 1..=6 {
        for p in enum_partitions(d) {
            let s = SkewShape::from_partitions(&p, &Partition::empty());
            assert_eq!(rp_count(&s, &vec![1; d]).unwrap(), hook_count(&p), "{:?}", p.parts());
            assert_eq!(rp_count(&s, &[d]).unwrap(), BigInt::from(1));
        }
    }
}

#[test]
fn shape_series_counts_insertions() {
    for d in 1..=4 {
        for s in enum_skew_classes(d) {
            let series = fz_lambda(&s, 7);
            for m in 0..=7 {
                assert_eq!(series.coeff(&[m as u32]), insertion_count(&s, m), "{} at m={m}", s.render());
            }
        }
    }
}

#[test]
fn single_gap_vector_is_the_plain_series() {
    let engine = FlagEngine::default();
    for d in 1..=5 {
        assert_eq!(engine.fz_k(&[d], 15).unwrap(), engine.fz_d(d, 15).unwrap());
    }
}

#[test]
fn punctual_hilbert_euler_numbers_are_partition_counts() {
    let z = Dense::partitions(20);
    for (n, m) in gottsche_punctual(20).iter().enumerate() {
        assert_eq!(m.eval_at_one(), z.coeff(n));
    }
}
