use gaugeform::numeric::{max_relative_error, tolerance};
use gaugeform::random::{random_jordan_conjugate, random_puiseux_coefficients, random_series_with_constant};
use gaugeform::{normalize, Complex, MatrixSeries, NormalForm, PuiseuxExpansion, Rational};
use gaugeform_cli::{GaugeDocument, NormalFormDocument, PuiseuxDocument, Series, SeriesDocument};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn reparse<T: serde::Serialize + serde::de::DeserializeOwned>(doc: &T) -> T {
    serde_json::from_str(&serde_json::to_string_pretty(doc).unwrap()).unwrap()
}

fn rational_instance(seed: u64, n: usize, k: usize) -> MatrixSeries<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a0 = random_jordan_conjugate(&mut rng, n, 50);
    random_series_with_constant(&mut rng, a0, k, 50)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rational_series_round_trip(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=3) {
        let a = rational_instance(seed, n, k);
        let doc = SeriesDocument::from_series(k, &a);
        let back = reparse(&doc);
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_series(64).unwrap(), Series::Rational(a));
    }

    #[test]
    fn complex_series_round_trip(seed in any::<u64>(), n in 1usize..=4, k in 1usize..=3, prec in 32u32..=300) {
        let a = rational_instance(seed, n, k).to_complex(prec);
        let back = reparse(&SeriesDocument::from_series(k, &a)).to_series(prec).unwrap();
        prop_assert_eq!(back, Series::Complex(a));
    }

    #[test]
    fn normal_form_and_gauge_round_trip(seed in any::<u64>(), n in 2usize..=4, k in 1usize..=3) {
        let out = normalize(&rational_instance(seed, n, k), k).unwrap();
        let nf = reparse(&NormalFormDocument::from_normal_form(&out.normal_form)).decode::<Rational>(()).unwrap();
        prop_assert_eq!(nf, out.normal_form.clone());
        let g = reparse(&GaugeDocument::from_gauge(&out.gauge)).decode::<Rational>(()).unwrap();
        prop_assert_eq!(g, out.gauge.clone());

        let prec = 128;
        let cnf = out.normal_form.to_complex(prec);
        let back: NormalForm<Complex> = reparse(&NormalFormDocument::from_normal_form(&cnf)).decode(prec).unwrap();
        prop_assert_eq!(back, cnf);
    }

    #[test]
    fn puiseux_round_trip(seed in any::<u64>(), n in 1usize..=5, k in 1usize..=3) {
        let prec = 256;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = PuiseuxExpansion::new(n, random_puiseux_coefficients(&mut rng, n, k, prec), 0).unwrap();
        let branches: Vec<usize> = (0..n).collect();
        let decoded = reparse(&PuiseuxDocument::from_expansion(&a, &branches).unwrap()).decode().unwrap();
        prop_assert_eq!(decoded.len(), n);
        prop_assert_eq!(&decoded[0], &a);
        for (i, e) in decoded.iter().enumerate() {
            prop_assert_eq!(e.branch(), i);
            prop_assert!(max_relative_error(e.coefficients(), a.coefficients()) <= tolerance(prec));
        }
    }
}

#[test]
fn shape_errors_are_reported_with_location() {
    let doc: SeriesDocument = serde_json::from_str(
        r#"{"n": 2, "k": 1, "field": "rational", "coefficients": [[["0","1"],["0","0"]], [["0","0"],["1"]]]}"#,
    )
    .unwrap();
    let err = doc.to_series(64).unwrap_err();
    assert_eq!(err.code, "DimensionMismatch");
    assert_eq!(err.location.as_deref(), Some("coefficients[1][1]"));
    assert_eq!(err.exit, 1);

    let doc: SeriesDocument =
        serde_json::from_str(r#"{"n": 1, "k": 1, "field": "rational", "coefficients": [[["0"]], [["1/0"]]]}"#).unwrap();
    let err = doc.to_series(64).unwrap_err();
    assert_eq!(err.exit, 2);
    assert_eq!(err.location.as_deref(), Some("coefficients[1][0][0]"));

    let doc: SeriesDocument =
        serde_json::from_str(r#"{"n": 1, "k": 2, "field": "complex", "coefficients": [[["0"]], [["1"]]]}"#).unwrap();
    assert_eq!(doc.to_series(64).unwrap_err().code, "OrderTooSmall");
}
