use proptest::prelude::*;

use coxeter_pd::coxeter::{enumerate_group, Ball, Colour, CoxeterSystem, DEFAULT_CAP};
use coxeter_pd::field::{field_sign, FieldElement};
use coxeter_pd::pairpart::{PairPartition, SetPartition};
use coxeter_pd::pd::{certify_psd, gram, GroupFunction, Status};
use coxeter_pd::rational::{rat, Rational};
use coxeter_pd::RatMatrix;
use num_traits::{Signed, ToPrimitive, Zero};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn field_element() -> impl Strategy<Value = FieldElement> {
    prop::array::uniform8(small_rational()).prop_map(FieldElement::from_coords)
}

fn unit_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12).prop_map(|n| rat(n, 12))
}

fn a2() -> Ball {
    enumerate_group(&CoxeterSystem::preset("A2").unwrap(), DEFAULT_CAP).unwrap()
}

fn a3() -> Ball {
    enumerate_group(&CoxeterSystem::preset("A3").unwrap(), DEFAULT_CAP).unwrap()
}

fn pairpartition(max_n: usize) -> impl Strategy<Value = PairPartition> {
    (1..=max_n)
        .prop_flat_map(|n| Just((0..2 * n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|order| {
            let mut mate = vec![0; order.len()];
            for pair in order.chunks(2) {
                mate[pair[0]] = pair[1];
                mate[pair[1]] = pair[0];
            }
            PairPartition::from_mates(mate).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_axioms(a in field_element(), b in field_element(), c in field_element()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, FieldElement::zero());
    }

    #[test]
    fn field_inverse(a in field_element()) {
        prop_assume!(!a.is_zero());
        let inv = a.checked_inv().unwrap();
        prop_assert_eq!(&a * &inv, FieldElement::from_int(1));
    }

    #[test]
    fn field_sign_matches_float_when_clear(a in field_element()) {
        let x = a.to_f64();
        prop_assume!(x.abs() > 1e-6);
        prop_assert_eq!(field_sign(&a), if x > 0.0 { 1 } else { -1 });
    }

    #[test]
    fn field_sign_of_near_cancellation(k in 1i64..200) {
        // k√2 against the continued-fraction convergent just below or above it
        let two = FieldElement::sqrt2();
        let approx = rat((k as f64 * std::f64::consts::SQRT_2).round() as i64, 1);
        let d = &two.scale(&rat(k, 1)) - &FieldElement::from_rational(approx.clone());
        let exact = (rat(2 * k * k, 1) - &approx * &approx).signum();
        prop_assert_eq!(field_sign(&d) as i64, exact.to_i64().unwrap());
    }

    #[test]
    fn length_exp_is_psd_on_s3(q in unit_rational()) {
        let v = coxeter_pd::pd::check_on_ball(&a2(), &GroupFunction::LengthExp(q)).unwrap();
        prop_assert_eq!(v.status, Status::PsdExact);
    }

    #[test]
    fn verdict_is_permutation_invariant(q in small_rational(), seed in 0u64..1000) {
        let g = a2();
        let m = gram(&g, &GroupFunction::LengthExp(q)).unwrap();
        let mut perm: Vec<usize> = (0..m.rows()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(certify_psd(&m).status, certify_psd(&m.permuted(&perm)).status);
    }

    #[test]
    fn schur_products_stay_psd(q in unit_rational(), r in (0i64..=12).prop_map(|n| rat(n, 12))) {
        let g = a2();
        let a = gram(&g, &GroupFunction::LengthExp(q)).unwrap();
        let b = gram(&g, &GroupFunction::ColourExp(r)).unwrap();
        prop_assert!(certify_psd(&a.hadamard(&b)).is_psd());
    }

    #[test]
    fn witnesses_are_negative(entries in prop::collection::vec(small_rational(), 10)) {
        let mut m = RatMatrix::zeros(4, 4);
        let mut k = 0;
        for i in 0..4 {
            for j in i..4 {
                m[(i, j)] = entries[k].clone();
                m[(j, i)] = entries[k].clone();
                k += 1;
            }
        }
        let v = certify_psd(&m);
        match v.exact_witness() {
            Some((w, value)) => {
                prop_assert!(value.is_negative());
                prop_assert_eq!(&m.quadratic_form(w), value);
            }
            None => {
                let eig = m.to_f64().symmetric_eigen().eigenvalues.min();
                prop_assert!(eig > -1e-9);
            }
        }
    }

    #[test]
    fn subgroup_indicator_threshold(r in (-24i64..=24).prop_map(|n| rat(n, 24)), t in 0usize..7) {
        // on S4 a proper parabolic of index d gives PSD iff -1/(d-1) <= r <= 1
        let g = a3();
        let t = Colour(t as u64);
        let d = (g.len() / g.elements().iter().filter(|e| e.colour.is_subset(t)).count()) as i64;
        let v = coxeter_pd::pd::check_on_ball(&g, &GroupFunction::SubgroupIndicator { t, r: r.clone() }).unwrap();
        prop_assert_eq!(v.is_psd(), r >= rat(-1, d - 1));
    }

    #[test]
    fn wick_is_a_noncrossing_retraction(p in pairpartition(6)) {
        let w = p.wick();
        prop_assert!(w.is_noncrossing());
        prop_assert_eq!(w.wick(), w.clone());
        prop_assert!(w.as_set_partition().refines(&p.phi()));
        prop_assert_eq!(p.wick_by_resolution(), w);
    }

    #[test]
    fn phi_is_a_noncrossing_coarsening(p in pairpartition(6)) {
        let f = p.phi();
        prop_assert!(f.is_noncrossing());
        prop_assert!(p.as_set_partition().refines(&f));
        prop_assert!(p.colour_length() <= p.crossings());
        prop_assert_eq!(p.colour_length() == 0, p.is_noncrossing());
    }

    #[test]
    fn display_round_trips(p in pairpartition(6)) {
        let back: PairPartition = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, &p);
        let phi = p.phi();
        let back: SetPartition = phi.to_string().parse().unwrap();
        prop_assert_eq!(back, phi);
    }

    #[test]
    fn colour_length_at_most_length(word in prop::collection::vec(0u8..3, 0..12)) {
        let sys = CoxeterSystem::preset("B3").unwrap();
        let e = sys.element(&word);
        prop_assert!(e.colour_length() <= e.length);
        prop_assert!(e.length <= word.len());
        prop_assert_eq!(sys.inverse(&e).length, e.length);
        prop_assert_eq!(sys.inverse(&e).colour, e.colour);
    }
}
