use meanlab::grid::round_trip_pairs;
use meanlab::means::{
    catalog_seiffert, deform, deform_mean, eval_mean, mean_of_seiffert, seiffert_of_mean,
};
use meanlab::{Deform, Mean, MeanId, PositivePair};
use proptest::prelude::*;

fn any_id() -> impl Strategy<Value = MeanId> {
    (0..MeanId::ALL.len()).prop_map(|i| MeanId::ALL[i])
}

fn any_pair() -> impl Strategy<Value = (f64, f64)> {
    (-6.0f64..6.0, 0.0f64..0.999).prop_map(|(e, z)| {
        let s = 10f64.powf(e);
        (s * (1.0 - z), s * (1.0 + z))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn homogeneous(id in any_id(), (x, y) in any_pair(), e in -3.0f64..3.0) {
        let lambda = 10f64.powf(e);
        let p = PositivePair::new(x, y).unwrap();
        let m = eval_mean(id, p);
        let scaled = eval_mean(id, p.scaled(lambda).unwrap());
        prop_assert!((scaled - lambda * m).abs() <= 1e-12 * lambda * m, "{id}: {scaled} vs {}", lambda * m);
    }

    #[test]
    fn symmetric(id in any_id(), (x, y) in any_pair()) {
        let p = PositivePair::new(x, y).unwrap();
        prop_assert_eq!(eval_mean(id, p), eval_mean(id, p.swapped()));
    }

    #[test]
    fn between_min_and_max(id in any_id(), (x, y) in any_pair()) {
        let p = PositivePair::new(x, y).unwrap();
        let m = eval_mean(id, p);
        let slack = 1e-14 * p.hi();
        prop_assert!(m >= p.lo() - slack && m <= p.hi() + slack, "{id}: {m} not in {p}");
    }

    #[test]
    fn deformation_agrees_with_seiffert_side(id in any_id(), z in 0.001f64..0.99, t in 0.01f64..1.0) {
        let t = Deform::new(t).unwrap();
        let via_args = deform_mean(&Mean::catalog(id), t).eval_xy(1.0 - z, 1.0 + z).unwrap();
        let via_f = deform(&catalog_seiffert::<f64>(id), t).eval(z).unwrap();
        let expected = z / via_f;
        prop_assert!((via_args - expected).abs() <= 1e-12 * expected, "{id}");
    }

    #[test]
    fn deformed_function_is_seiffert(id in any_id(), z in 0.0f64..0.999, t in 0.01f64..1.0) {
        let f = deform(&catalog_seiffert::<f64>(id), Deform::new(t).unwrap());
        prop_assert!(f.eval_checked(z).is_ok());
    }
}

#[test]
fn round_trip_through_seiffert_functions() {
    let pairs = round_trip_pairs::<f64>();
    for id in MeanId::ALL {
        let m = Mean::catalog(id);
        let back = mean_of_seiffert(&seiffert_of_mean(&m));
        for p in &pairs {
            let (a, b) = (m.eval(*p).unwrap(), back.eval(*p).unwrap());
            assert!((a - b).abs() <= 1e-12 * a, "{id} at {p}: {a} vs {b}");
        }
    }
}

#[test]
fn seiffert_bounds_on_probe_grid() {
    for id in MeanId::ALL {
        let f = seiffert_of_mean(&Mean::<f64>::catalog(id));
        for i in 1..=99 {
            let z = i as f64 / 100.0;
            f.eval_checked(z).unwrap_or_else(|e| panic!("{id}: {e}"));
        }
    }
}

#[test]
fn ordering_reverses_under_correspondence() {
    let zs: Vec<f64> = (1..=99).map(|i| i as f64 / 100.0).collect();
    for m in MeanId::ALL {
        for n in MeanId::ALL {
            let below = zs
                .iter()
                .all(|&z| eval_mean(m, PositivePair::from_spread(z, 1.0).unwrap()) <= eval_mean(n, PositivePair::from_spread(z, 1.0).unwrap()));
            if !below {
                continue;
            }
            let (fm, fn_) = (catalog_seiffert::<f64>(m), catalog_seiffert::<f64>(n));
            for &z in &zs {
                let (a, b) = (fm.eval(z).unwrap(), fn_.eval(z).unwrap());
                assert!(a >= b * (1.0 - 1e-13), "{m} <= {n} but f differs at {z}");
            }
        }
    }
}

#[test]
fn known_orderings() {
    let p = PositivePair::new(1.0, 3.0).unwrap();
    let v = |id| eval_mean(id, p);
    use MeanId::*;
    let chain = [H, G, L, AGM, P, A, NS, T, R, C];
    for w in chain.windows(2) {
        assert!(v(w[0]) < v(w[1]), "{} < {}", w[0], w[1]);
    }
}

#[test]
fn invalid_pairs_rejected() {
    let err = PositivePair::new(0.0, 3.0).unwrap_err();
    assert!(err.to_string().contains("arguments must be positive"));
    assert!(PositivePair::new(f64::NAN, 1.0).is_err());
    assert!(PositivePair::new(1.0, f64::INFINITY).is_err());
    assert!(PositivePair::new(-1.0, 1.0).is_err());
}
