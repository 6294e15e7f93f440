use super::*;
use crate::complex::build_epsilon_graph;
use crate::fixtures::{generator_loop, generator_loop_count, nearby_point, random_relift, small_scale_threshold};
use crate::surfaces::{CoverPoint, Surface};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cloud(kind: SurfaceKind, points: Vec<CoverPoint>) -> LiftedPointCloud {
    LiftedPointCloud::new(Surface::new(kind), points).unwrap()
}

fn torus(points: &[(f64, f64)]) -> LiftedPointCloud {
    cloud(SurfaceKind::Torus, points.iter().map(|&(x, y)| CoverPoint::plane(x, y)).collect())
}

#[test]
fn transition_examples() {
    let c = torus(&[(0.1, 0.1), (0.9, 0.1)]);
    let g = build_epsilon_graph(&c, 0.3).unwrap();
    let t = compute_transition(&c, &g).unwrap();
    // Brute force over the [-2, 2]² window.
    let mut best = (f64::INFINITY, (0, 0));
    for n in -2..=2i64 {
        for m in -2..=2i64 {
            let d = (0.1 - 0.9 - n as f64).hypot(0.1 - 0.1 - m as f64);
            if d < best.0 {
                best = (d, (n, m));
            }
        }
    }
    assert_eq!(best.1, (-1, 0));
    assert_eq!(t.get(0, 1).unwrap(), GroupElement::Torus { n: -1, m: 0 });
    assert_eq!(t.get(1, 0).unwrap(), GroupElement::Torus { n: 1, m: 0 });

    let c = torus(&[(0.4, 0.4), (0.5, 0.45)]);
    let g = build_epsilon_graph(&c, 0.3).unwrap();
    assert!(compute_transition(&c, &g).unwrap().get(0, 1).unwrap().is_identity());

    let e = 0.05f64;
    let n = (e * e + 1.0).sqrt();
    let c = cloud(
        SurfaceKind::ProjectivePlane,
        vec![CoverPoint::sphere(0.0, 0.0, 1.0), CoverPoint::sphere(0.0, e / n, -1.0 / n)],
    );
    let s = c.surface();
    let p = c.points();
    let keep = s.cover_distance(&p[0], &p[1]).unwrap();
    let flip = s.cover_distance(&p[0], &s.act(&GroupElement::Projective { flip: true }, &p[1]).unwrap()).unwrap();
    assert!(flip < keep);
    let g = build_epsilon_graph(&c, 0.3).unwrap();
    assert_eq!(compute_transition(&c, &g).unwrap().get(0, 1).unwrap(), GroupElement::Projective { flip: true });
}

#[test]
fn transition_realises_base_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for kind in SurfaceKind::ALL {
        let s = Surface::new(kind);
        let (_, pts) = random_relift(&s, &s.sample_uniform(15, 4), 2, &mut rng);
        let c = LiftedPointCloud::new(s, pts).unwrap();
        let g = build_epsilon_graph(&c, 1.0).unwrap();
        let t = compute_transition(&c, &g).unwrap();
        for (k, &(i, j)) in g.edges.iter().enumerate() {
            let tij = t.get(i, j).unwrap();
            let d = s.cover_distance(&c.points()[i], &s.act(&tij, &c.points()[j]).unwrap()).unwrap();
            assert!((d - g.edge_lengths[k]).abs() <= 1e-9, "{kind}");
            assert!(t.get(j, i).unwrap().multiply(&tij).is_identity());
        }
    }
}

#[test]
fn cocycle_examples() {
    let c = torus(&[(0.95, 0.95), (0.05, 0.97), (0.99, 0.08)]);
    let g = build_epsilon_graph(&c, 0.2).unwrap();
    assert_eq!(g.triangles.len(), 1);
    let mut t = compute_transition(&c, &g).unwrap();
    let report = t.verify_cocycle();
    assert_eq!(report.checked, 1);
    assert!(report.violations.is_empty());

    t.set(0, 2, GroupElement::Torus { n: 5, m: 5 }).unwrap();
    assert_eq!(t.verify_cocycle().violations, vec![[0, 1, 2]]);

    let c = torus(&[(0.1, 0.1), (0.2, 0.1), (0.3, 0.1)]);
    let g = build_epsilon_graph(&c, 0.15).unwrap();
    assert_eq!(compute_transition(&c, &g).unwrap().verify_cocycle().checked, 0);
}

#[test]
fn cocycle_holds_at_small_scale() {
    for kind in SurfaceKind::ALL {
        let s = Surface::new(kind);
        let threshold = small_scale_threshold(kind);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..300 {
            let center = s.sample_one(&mut rng);
            let pts: Vec<CoverPoint> = (0..3).map(|_| nearby_point(&center, threshold / 2.0, &mut rng)).collect();
            let (_, pts) = random_relift(&s, &pts, 3, &mut rng);
            let c = LiftedPointCloud::new(s, pts).unwrap();
            let g = build_epsilon_graph(&c, threshold).unwrap();
            assert_eq!(g.triangles.len(), 1);
            let report = compute_transition(&c, &g).unwrap().verify_cocycle();
            assert!(report.violations.is_empty(), "{kind}");
        }
    }
}

#[test]
fn gauge_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let s = Surface::new(SurfaceKind::Torus);
    let c = LiftedPointCloud::new(s, s.sample_uniform(12, 1)).unwrap();
    let g = build_epsilon_graph(&c, 0.45).unwrap();
    let t = compute_transition(&c, &g).unwrap();

    let ident = vec![s.identity(); 12];
    let same = t.gauge_transform(&ident).unwrap();
    for &(i, j) in t.edges() {
        assert_eq!(same.get(i, j), t.get(i, j));
    }

    let theta: Vec<GroupElement> = (0..12).map(|_| GroupElement::random(SurfaceKind::Torus, &mut rng, 5)).collect();
    let moved = t.gauge_transform(&theta).unwrap();
    for &(i, j) in t.edges() {
        let (GroupElement::Torus { n, m }, GroupElement::Torus { n: ai, m: bi }, GroupElement::Torus { n: aj, m: bj }) =
            (t.get(i, j).unwrap(), &theta[i], &theta[j])
        else {
            unreachable!()
        };
        assert_eq!(moved.get(i, j).unwrap(), GroupElement::Torus { n: n + aj - ai, m: m + bj - bi });
    }

    // The gauge law agrees with recomputing from re-lifted points θ(i)⁻¹·x̃_i.
    let inverse: Vec<GroupElement> = theta.iter().map(|g| g.inverse()).collect();
    let relifted = c.relift(&inverse).unwrap();
    let recomputed = compute_transition(&relifted, &g).unwrap();
    for &(i, j) in t.edges() {
        assert_eq!(recomputed.get(i, j), moved.get(i, j));
    }
}

#[test]
fn monodromy_examples() {
    let c = torus(&[(0.0, 0.0), (0.25, 0.0), (0.5, 0.0), (0.75, 0.0)]);
    let g = build_epsilon_graph(&c, 0.25).unwrap();
    let t = compute_transition(&c, &g).unwrap();
    // Edges 0→1, 1→2, 2→3 stay in one sheet; 3→0 needs (1,0).
    assert!(t.get(0, 1).unwrap().is_identity());
    assert_eq!(t.get(3, 0).unwrap(), GroupElement::Torus { n: 1, m: 0 });
    assert_eq!(t.loop_monodromy(&[0, 1, 2, 3]).unwrap(), GroupElement::Torus { n: 1, m: 0 });
    assert_eq!(t.loop_monodromy(&[0, 1, 2, 3, 0]).unwrap(), GroupElement::Torus { n: 1, m: 0 });
    assert_eq!(t.loop_monodromy(&[0, 3, 2, 1]).unwrap(), GroupElement::Torus { n: -1, m: 0 });
    assert!(t.loop_monodromy(&[0, 1, 0]).unwrap().is_identity());
    assert!(matches!(t.loop_monodromy(&[0, 2, 3]), Err(Error::Input(_))));

    let c = torus(&[(0.95, 0.95), (0.05, 0.97), (0.99, 0.08)]);
    let g = build_epsilon_graph(&c, 0.2).unwrap();
    let t = compute_transition(&c, &g).unwrap();
    assert!(t.loop_monodromy(&[0, 1, 2]).unwrap().is_identity());
}

#[test]
fn homology_examples() {
    let c = torus(&[(0.0, 0.0), (0.25, 0.0), (0.5, 0.0), (0.75, 0.0)]);
    let g = build_epsilon_graph(&c, 0.25).unwrap();
    let t = compute_transition(&c, &g).unwrap();
    let walk = [0, 1, 2, 3];
    let by_sum = [(0, 1), (1, 2), (2, 3), (3, 0)]
        .iter()
        .fold(AbelianClass::zero(SurfaceKind::Torus), |acc, &(a, b)| acc + t.get(a, b).unwrap().abelianize());
    let class = t.homology_class(&Chain::from_loop(&walk)).unwrap();
    assert_eq!(class, by_sum);
    assert_eq!(class, AbelianClass::new(vec![1, 0], vec![]));
    assert_eq!(class, t.loop_monodromy(&walk).unwrap().abelianize());
    assert_eq!(
        t.homology_class(&Chain::from_loop(&walk).scaled(2)).unwrap(),
        AbelianClass::new(vec![2, 0], vec![])
    );
    assert_eq!(t.homology_class(&Chain::from_loop(&[0, 3, 2, 1])).unwrap(), -class);

    let mut open = Chain::new();
    open.add_step(0, 1, 1);
    assert!(matches!(t.homology_class(&open), Err(Error::Input(_))));

    let c = torus(&[(0.95, 0.95), (0.05, 0.97), (0.99, 0.08)]);
    let g = build_epsilon_graph(&c, 0.2).unwrap();
    let t = compute_transition(&c, &g).unwrap();
    assert!(t.homology_class(&Chain::from_loop(&[0, 1, 2])).unwrap().is_zero());
}

#[test]
fn classify_examples() {
    let meridian: Vec<(f64, f64)> = (0..8).map(|k| (k as f64 / 8.0, 0.5)).collect();
    let result = classify_cloud(&torus(&meridian), 0.13).unwrap();
    assert_eq!(result.classes.len(), 1);
    assert_eq!(result.classes[0].class.canonical_sign(), AbelianClass::new(vec![1, 0], vec![]));
    assert!(!result.classes[0].unreliable);

    let cluster = torus(&[(0.5, 0.5), (0.52, 0.5), (0.5, 0.53), (0.48, 0.49), (0.51, 0.47)]);
    let result = classify_cloud(&cluster, 0.05).unwrap();
    assert!(!result.classes.is_empty());
    assert!(result.classes.iter().all(|c| c.class.is_zero()));
    assert!(result.cocycle.violations.is_empty());

    let sparse = torus(&[(0.1, 0.1), (0.6, 0.6)]);
    let result = classify_cloud(&sparse, 0.05).unwrap();
    assert!(result.graph.edges.is_empty());
    assert!(result.classes.is_empty() && result.basis.fundamental_cycles.is_empty());
}

#[test]
fn degenerate_edges_mark_cycles_unreliable() {
    // 0.5 apart on the torus: both (0,0) and (-1,0) realise the distance.
    let c = torus(&[(0.0, 0.0), (0.25, 0.02), (0.5, 0.0), (0.75, 0.02)]);
    let result = classify_cloud(&c, 0.51).unwrap();
    assert!(result.degenerate_edges > 0);
    assert!(result.classes.iter().any(|c| c.unreliable));
}

#[test]
fn generator_loops_have_known_classes() {
    for kind in SurfaceKind::ALL {
        for index in 0..generator_loop_count(kind) {
            let fixture = generator_loop(kind, index);
            let n = fixture.points.len();
            let c = cloud(kind, fixture.points.clone());
            let result = classify_cloud(&c, fixture.epsilon).unwrap();
            assert_eq!(result.graph.edges.len(), n, "{kind} loop {index}");
            assert_eq!(result.classes.len(), 1);
            let walk: Vec<usize> = (0..n).collect();
            let class = result.transition.homology_class(&Chain::from_loop(&walk)).unwrap();
            assert_eq!(class, AbelianClass::new(fixture.expected_free.clone(), fixture.expected_torsion.clone()));
            assert_eq!(result.classes[0].class.canonical_sign(), class.canonical_sign());
        }
    }
}

#[test]
fn classes_are_gauge_and_lift_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for kind in SurfaceKind::ALL {
        let s = Surface::new(kind);
        let eps = match kind {
            SurfaceKind::Torus | SurfaceKind::KleinBottle => 0.3,
            SurfaceKind::ProjectivePlane => 0.8,
            SurfaceKind::GenusTwo => 1.6,
        };
        for round in 0..10 {
            let c = LiftedPointCloud::new(s, s.sample_uniform(16, 100 + round)).unwrap();
            let base = classify_cloud(&c, eps).unwrap();

            let theta: Vec<GroupElement> = (0..16).map(|_| GroupElement::random(kind, &mut rng, 3)).collect();
            let gauged = base.transition.gauge_transform(&theta).unwrap();
            for cycle in &base.basis.fundamental_cycles {
                let chain = Chain::from_loop(cycle);
                assert_eq!(gauged.homology_class(&chain).unwrap(), base.transition.homology_class(&chain).unwrap());
                let m = base.transition.loop_monodromy(cycle).unwrap();
                let v0 = cycle[0];
                let conj = theta[v0].inverse().multiply(&m).multiply(&theta[v0]);
                assert_eq!(gauged.loop_monodromy(cycle).unwrap(), conj);
                assert_eq!(
                    base.transition.homology_class(&Chain::from_loop(&cycle.iter().rev().copied().collect::<Vec<_>>())).unwrap(),
                    -base.transition.homology_class(&chain).unwrap()
                );
            }

            let (moves, pts) = random_relift(&s, c.points(), 3, &mut rng);
            let relifted = classify_cloud(&LiftedPointCloud::new(s, pts).unwrap(), eps).unwrap();
            assert_eq!(relifted.graph.edges, base.graph.edges);
            let classes: Vec<_> = base.classes.iter().map(|c| &c.class).collect();
            let again: Vec<_> = relifted.classes.iter().map(|c| &c.class).collect();
            assert_eq!(classes, again, "{kind}");
            // Lifts g_i·x̃_i correspond to the gauge θ(i) = g_i⁻¹.
            let theta: Vec<GroupElement> = moves.iter().map(|g| g.inverse()).collect();
            let predicted = base.transition.gauge_transform(&theta).unwrap();
            for &(i, j) in base.graph.edges.iter() {
                if !base.transition.is_degenerate(i, j) {
                    assert_eq!(predicted.get(i, j), relifted.transition.get(i, j));
                }
            }
            let _ = rng.random::<u8>();
        }
    }
}

#[test]
fn report_roundtrips() {
    let s = Surface::new(SurfaceKind::GenusTwo);
    let c = LiftedPointCloud::new(s, s.sample_uniform(12, 3)).unwrap();
    let result = classify_cloud(&c, 1.8).unwrap();
    let text = serde_json::to_string(&result.to_report()).unwrap();
    let back: ClassificationReport = serde_json::from_str(&text).unwrap();
    let t = back.transition_map().unwrap();
    for (cycle, expected) in back.cycles.iter().zip(&result.classes) {
        assert_eq!(t.homology_class(&Chain::from_loop(&cycle.vertices)).unwrap(), expected.class);
    }
}
