use jdiv::geometry::{self, divergence_matrix, embed, triangle_gap};
use jdiv::jensen::{self, Family};
use jdiv::{random, Alpha, DensityMatrix, DistanceMatrix, Distribution, Embedding, WeightedFamily};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn a(x: f64) -> Alpha {
    Alpha::new(x).unwrap()
}

fn simplex(n: usize) -> impl Strategy<Value = Distribution> {
    prop::collection::vec(0.01f64..1.0, n).prop_map(|w| {
        let s: f64 = w.iter().sum();
        Distribution::new(w.iter().map(|x| x / s).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn root_jd_is_a_metric_up_to_order_two(
        al in 0.2f64..=2.0,
        p in simplex(4),
        q in simplex(4),
        r in simplex(4),
    ) {
        let d = divergence_matrix(&[p, q, r], a(al)).unwrap();
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            prop_assert!(triangle_gap(&d, i, j, k).unwrap() >= -1e-12);
        }
    }

    #[test]
    fn embedding_reproduces_divergences(al in 0.3f64..=2.0, seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<Distribution> = (0..6).map(|_| random::distribution(&mut rng, 4)).collect();
        let d = divergence_matrix(&pts, a(al)).unwrap();
        let e = embed(&d).unwrap();
        prop_assert!(e.dim() <= 5);
        prop_assert!(geometry::reconstruction_error(&e.coords, &d) <= 1e-8);
    }

    #[test]
    fn jd_is_bounded_by_entropy_of_weights(p in simplex(3), q in simplex(3)) {
        let v = jensen::jd_alpha(&p, &q, Alpha::SHANNON).unwrap().value;
        prop_assert!((0.0..=std::f64::consts::LN_2 + 1e-15).contains(&v));
    }
}

#[test]
fn quantum_divergence_matrix_embeds() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let states: Vec<DensityMatrix> = (0..6).map(|_| random::ginibre_state(&mut rng, 3)).collect();
    for al in [0.5, 1.0, 2.0] {
        let d = divergence_matrix(&states, a(al)).unwrap();
        assert!(geometry::negative_type_check(&d, None).is_negative_type);
        assert!(embed(&d).unwrap().reconstruction_error <= 1e-8);
    }
}

#[test]
fn commuting_states_reduce_to_classical() {
    let p = [0.6, 0.3, 0.1];
    let q = [0.2, 0.2, 0.6];
    let (dp, dq) = (
        Distribution::new(p.to_vec()).unwrap(),
        Distribution::new(q.to_vec()).unwrap(),
    );
    let (rp, rq) = (
        DensityMatrix::diagonal(&p).unwrap(),
        DensityMatrix::diagonal(&q).unwrap(),
    );
    for al in [0.5, 1.0, 1.5, 3.0] {
        let c = jensen::jd_alpha(&dp, &dq, a(al)).unwrap().value;
        let q = jensen::qjd_alpha(&rp, &rq, a(al)).unwrap().value;
        assert!((c - q).abs() < 1e-12, "α = {al}");
    }
}

#[test]
fn serde_round_trips() {
    let d = Distribution::with_labels(vec![0.1, 0.9], vec!["x".into(), "y".into()]).unwrap();
    let back: Distribution = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
    assert_eq!(d, back);

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let rho = random::ginibre_state(&mut rng, 3);
    let back: DensityMatrix = serde_json::from_str(&serde_json::to_string(&rho).unwrap()).unwrap();
    assert_eq!(rho.entries(), back.entries());

    let pts: Vec<Distribution> = (0..4).map(|_| random::distribution(&mut rng, 3)).collect();
    let m = divergence_matrix(&pts, Alpha::SHANNON).unwrap();
    let back: DistanceMatrix = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
    assert_eq!(m.matrix(), back.matrix());

    let e = embed(&m).unwrap();
    let back: Embedding = serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
    assert_eq!(e, back);

    let fam: WeightedFamily =
        serde_json::from_str(r#"{"kind":"classical","weights":[0.5,0.5],"members":[[1,0],[0,1]]}"#)
            .unwrap();
    let fam = fam.into_classical().unwrap();
    assert_eq!(
        jensen::jd_general(&fam).unwrap().value,
        std::f64::consts::LN_2
    );
}

#[test]
fn barycenter_minimizes_redundancy_against_random_targets() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let w = random::distribution(&mut rng, 3);
        let members = (0..3).map(|_| random::distribution(&mut rng, 4)).collect();
        let fam = Family::new(w, members).unwrap();
        let best = jensen::redundancy(&fam, &fam.barycenter().unwrap()).unwrap();
        assert!((best - jensen::jd_general(&fam).unwrap().value).abs() < 1e-12);
        for _ in 0..20 {
            let q = random::distribution(&mut rng, 4);
            assert!(jensen::redundancy(&fam, &q).unwrap() >= best - 1e-12);
        }
    }
}

#[test]
fn triangle_fails_exactly_between_two_and_three() {
    let pts = geometry::counterexample_points();
    for (al, violated) in [(1.5, false), (2.5, true), (3.5, false)] {
        let d = divergence_matrix(&pts, a(al)).unwrap();
        assert_eq!(
            triangle_gap(&d, 0, 1, 2).unwrap() < 0.0,
            violated,
            "α = {al}"
        );
    }
}
