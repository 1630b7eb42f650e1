mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stochreach::io::load_graph;
use stochreach::reachability::{
    augment_for_target, policy_evaluation, reach_limit, reach_model, Policy,
};
use stochreach::rl::{q_learning, sample_episode, sarsa, RlParams};
use stochreach::target::TargetSet;

#[test]
fn sampled_hit_frequency_matches_policy_evaluation() {
    let sd = load_graph(&common::data("reference_graph.json")).unwrap();
    let target = TargetSet::parse_one_based("4").unwrap();
    let aug = augment_for_target(&sd, &target).unwrap();
    let model = reach_model(&aug, 1.0).unwrap();
    let uniform = Policy::uniform(&model);
    let horizon = 3;
    let exact = policy_evaluation(&model, &uniform, horizon).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let episodes = 100_000;
    for start in 0..sd.n() {
        let hits = (0..episodes)
            .filter(|_| {
                sample_episode(
                    &model,
                    start,
                    &uniform,
                    |s| s == aug.terminal,
                    &mut rng,
                    horizon,
                )
                .iter()
                .any(|step| step.next == aug.target_proxy)
            })
            .count();
        let p = exact.value(horizon, start);
        let freq = hits as f64 / episodes as f64;
        let sigma = (p * (1.0 - p) / episodes as f64).sqrt().max(1e-12);
        assert!(
            (freq - p).abs() <= 3.0 * sigma,
            "start {start}: {freq} vs {p}"
        );
    }
}

#[test]
fn learned_reach_values_approach_the_limit() {
    let sd = load_graph(&common::data("reference_graph.json")).unwrap();
    let target = TargetSet::parse_one_based("4").unwrap();
    let aug = augment_for_target(&sd, &target).unwrap();
    let model = reach_model(&aug, 1.0).unwrap();
    let done = |s: usize| s == aug.target_proxy || s == aug.terminal;
    let exact = reach_limit(&sd, &target, false).unwrap();
    let params = RlParams {
        seed: 21,
        ..RlParams::default()
    };
    for start in 0..sd.n() {
        let q = q_learning(&model, start, done, &params).unwrap();
        assert!((q.estimate - exact.values[start]).abs() <= 0.05);
        assert!(q.estimate >= 0.0 && q.estimate <= 1.0 + 1e-9);
        for a in 0..model.num_actions(start) {
            assert!(q.table.visits(start, a) > 0);
        }
        let s = sarsa(&model, start, done, &params).unwrap();
        assert!((s.estimate - exact.values[start]).abs() <= 0.05);
    }
}
