mod common;

use common::corpus_sample;
use helly_core::generators::{gen_chordal, king_grid};
use helly_core::khelly::{
    decide_radius, default_epsilon, dominating_candidates, radius, sample_count, DecisionOptions, Verdict,
};
use helly_core::oracle::{apsp_summary, DistanceMatrix};
use helly_core::recognition::is_k_alpha_helly;
use helly_core::{seeded_rng, CostFn, Graph};

fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|l| (0, l)).collect();
    Graph::from_edge_list(leaves + 1, &edges).unwrap()
}

fn unit_ecc(g: &Graph) -> Vec<u32> {
    apsp_summary(g, &CostFn::unit(g.n())).unwrap().unit_ecc
}

#[test]
fn star_leaf_frequency_matches_closed_form() {
    let g = star(3);
    let eps = 0.9;
    let s = sample_count(4, eps);
    assert_eq!(s, 5);
    let trials = 10_000;
    let mut hits = 0;
    for seed in 0..trials {
        let d = dominating_candidates(&g, 1, eps, &mut seeded_rng(seed)).unwrap();
        assert!(d.set.contains(0));
        hits += d.set.contains(1) as u32;
    }
    let p = 0.5f64.powi(s as i32);
    let freq = hits as f64 / trials as f64;
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    assert!((freq - p).abs() <= 5.0 * sigma, "frequency {freq} vs {p}");
}

#[test]
fn star_decisions_by_seed() {
    let g = star(3);
    for seed in 0..100 {
        let opts = DecisionOptions::default();
        let d = decide_radius(&g, 0, 2, &mut seeded_rng(seed), &opts).unwrap();
        assert_eq!(d.verdict, Verdict::Reject);
        let d = decide_radius(&g, 1, 2, &mut seeded_rng(seed), &opts).unwrap();
        assert_eq!(d.verdict, Verdict::Accept);
    }
}

#[test]
fn rounds_are_disjoint_and_keep_central_vertices() {
    for g in corpus_sample(9) {
        let ecc = unit_ecc(&g);
        let rad = *ecc.iter().min().unwrap();
        for r in rad.saturating_sub(1)..=rad + 1 {
            for seed in 0..3 {
                let d = decide_radius(&g, r, 2, &mut seeded_rng(seed), &DecisionOptions::default()).unwrap();
                let mut seen = vec![false; g.n()];
                for round in &d.rounds {
                    for &x in &round.far {
                        assert!(!std::mem::replace(&mut seen[x], true), "far sets overlap");
                    }
                }
                for c in &d.candidates {
                    for v in (0..g.n()).filter(|&v| ecc[v] <= r) {
                        assert!(c.contains(v));
                    }
                }
                if let Some(w) = d.witness {
                    assert!(ecc[w] <= r);
                }
                if d.verdict == Verdict::Reject {
                    assert!(rad > r);
                }
            }
        }
    }
}

#[test]
fn radius_matches_oracle_on_sample() {
    for g in corpus_sample(4) {
        let rad = *unit_ecc(&g).iter().min().unwrap();
        let res = radius(&g, 2, 0, 5).unwrap();
        assert_eq!(res.radius, rad);
        assert!(res.decisions <= (g.n() as f64).log2().ceil() as usize);
    }
}

#[test]
fn property_one_is_deterministic() {
    let g = king_grid(10, 14).unwrap();
    let matrix = DistanceMatrix::new(&g);
    let ecc: Vec<u32> = (0..g.n()).map(|v| *matrix.row(v).iter().max().unwrap()).collect();
    let eps = default_epsilon(g.n(), 2, 1.0);
    for seed in 0..200 {
        let r = 7 + (seed % 6) as u32;
        let d = dominating_candidates(&g, r, eps, &mut seeded_rng(seed)).unwrap();
        assert_eq!(d.samples.len(), sample_count(g.n(), eps));
        for v in 0..g.n() {
            if ecc[v] <= r {
                assert!(d.set.contains(v));
            }
            let covers = d.samples.iter().all(|&t| matrix.get(v, t) <= r);
            assert_eq!(d.set.contains(v), covers);
        }
    }
}

#[test]
fn chordal_graphs_need_at_most_one_unit_of_slack() {
    for seed in 0..12 {
        let g = gen_chordal(18, 4, seed).unwrap();
        let alpha = (0..=3)
            .find(|&a| is_k_alpha_helly(&g, 2, a).unwrap().holds)
            .expect("chordal graphs are (2, 1)-Helly");
        assert!(alpha <= 1, "seed {seed} needs alpha {alpha}");
        let rad = *unit_ecc(&g).iter().min().unwrap();
        let res = radius(&g, 2, alpha, seed).unwrap();
        assert!(res.radius <= rad && rad <= res.upper());
    }
}

#[test]
fn epsilon_can_be_forced() {
    let g = king_grid(8, 8).unwrap();
    let opts = DecisionOptions {
        eps_scale: 1.0,
        eps: Some(0.25),
    };
    let d = decide_radius(&g, 4, 2, &mut seeded_rng(1), &opts).unwrap();
    assert_eq!(d.eps, 0.25);
    assert_eq!(d.verdict, Verdict::Accept);
    assert!(decide_radius(&g, 4, 1, &mut seeded_rng(1), &opts).is_err());
}
