use batsonar::engine::{apply_outcome, transmit_signal, SignalOutcome};
use batsonar::objectives::{eval_f1, DEFAULT_TOLERANCE};
use batsonar::rng::stream;
use batsonar::{
    grid_oracle, lookup, run_ga, run_msu, run_ssm, run_ssu, AngleMode, BeamLengthPolicy, Direction, GaParams,
    ObjectiveSpec, SearchSpace, SonarParams, SonarParams32, UnitState,
};

#[test]
fn f1_unit_at_four_eventually_moves_downhill_in_x() {
    let f1 = lookup::<f64>("f1").unwrap();
    let space = f1.default_space();
    let params = SonarParams::ssu();
    let state = UnitState::at(vec![4.0], eval_f1(4.0), 1.0);
    assert_eq!(state.fitness, -96.0);
    let mut rng = stream(9);
    let mut improved = false;
    for _ in 0..50 {
        let out = transmit_signal(&state, &f1, &params, space, &mut rng).unwrap();
        // brute-force check of the acceptance decision
        let best = out.fitnesses.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(out.best_index.is_some(), best > state.fitness);
        for (p, &f) in out.endpoints.iter().zip(&out.fitnesses) {
            assert_eq!(f, eval_f1(p[0]));
            assert_eq!(f > -96.0, p[0] < 4.0);
        }
        if let Some(i) = out.best_index {
            assert!(out.endpoints[i][0] < 4.0);
            improved = true;
            break;
        }
    }
    assert!(improved);
}

#[test]
fn short_beam_at_the_optimum_finds_nothing_better() {
    for name in ["f1", "f2", "f3", "f4", "f5"] {
        let spec = lookup::<f64>(name).unwrap();
        let opt = spec.known_optimum().unwrap();
        let grid = grid_oracle(&spec, 1e-3).unwrap();
        // the exact optimum beats every grid point, so no beam of any length improves it
        assert!(opt.value >= grid.value);
        let params = SonarParams::ssu();
        let state = UnitState::at(opt.points[0].clone(), spec.fitness(&opt.points[0]).unwrap(), 1e-4);
        let mut rng = stream(1);
        for _ in 0..20 {
            let out = transmit_signal(&state, &spec, &params, spec.default_space(), &mut rng).unwrap();
            assert_eq!(out.best_index, None, "{name}");
        }
    }
}

#[test]
fn constant_objective_keeps_the_unit_still() {
    let space = SearchSpace::cube(2, -1.0, 1.0).unwrap();
    let spec = ObjectiveSpec::new("three", Direction::Maximize, space.clone(), |_: &[f64]| 3.0);
    let mut rng = stream(4);
    let params = SonarParams::ssu();
    let state = UnitState::init(&spec, &params, &space, &mut rng).unwrap();
    let out = transmit_signal(&state, &spec, &params, &space, &mut rng).unwrap();
    assert_eq!(out.best_index, None);
    let next = apply_outcome(state.clone(), &out);
    assert_eq!(next.position, state.position);
    assert_eq!(next.stagnation, 1);
    assert_eq!(next.iteration, 1);
}

#[test]
fn improving_outcome_moves_and_resets_stagnation() {
    let mut state = UnitState::at(vec![0.0, 0.0], 3.0, 1.0);
    state.stagnation = 4;
    let out = SignalOutcome {
        main_direction: 0.0,
        endpoints: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        fitnesses: vec![2.0, 5.0],
        best_index: Some(1),
    };
    let next = apply_outcome(state, &out);
    assert_eq!(next.fitness, 5.0);
    assert_eq!(next.position, vec![0.0, 1.0]);
    assert_eq!(next.stagnation, 0);
    assert_eq!(next.last_improvement_iteration, 1);
}

#[test]
fn epoch_result_invariants() {
    for name in ["f1", "f3", "f5"] {
        let spec = lookup::<f64>(name).unwrap();
        for seed in 0..20 {
            let r = run_msu(&spec, spec.default_space(), &SonarParams::msu(3), seed).unwrap();
            let best = r.per_unit_results.iter().map(|u| u.best_fitness).fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(r.best_fitness, best);
            assert!(r.iterations_to_best <= 100);
            assert!(r.per_unit_results.iter().all(|u| u.iterations_to_best <= 100));
        }
    }
}

#[test]
fn msu_finds_both_f5_peaks_across_seeds() {
    let f5 = lookup::<f64>("f5").unwrap();
    let (mut left, mut right) = (false, false);
    for seed in 0..200 {
        let r = run_msu(&f5, f5.default_space(), &SonarParams::msu(2), seed).unwrap();
        left |= (r.best_position[0] + 2.5067).abs() < 0.05;
        right |= (r.best_position[0] - 3.7765).abs() < 0.05;
    }
    assert!(left && right);
}

#[test]
fn momentum_changes_the_run_once_it_fires() {
    let f2 = lookup::<f64>("f2").unwrap();
    let space = f2.default_space();
    let fixed = BeamLengthPolicy::Explicit { length: 0.05 };
    let differs = (0..20).any(|seed| {
        let ssm = run_ssm(&f2, space, &SonarParams::ssm(0.9).with_beam_length(fixed), seed).unwrap();
        let ssu = run_ssu(&f2, space, &SonarParams::ssu().with_beam_length(fixed), seed).unwrap();
        ssm != ssu
    });
    assert!(differs);
}

#[test]
fn higher_dimensional_sphere_converges() {
    let space = SearchSpace::cube(4, -5.0, 5.0).unwrap();
    let spec = ObjectiveSpec::new("sphere4", Direction::Minimize, space.clone(), |p: &[f64]| {
        p.iter().map(|x| x * x).sum()
    });
    let params = SonarParams::msu(4).with_max_iterations(400);
    let r = run_msu(&spec, &space, &params, 8).unwrap();
    let start = run_msu(&spec, &space, &params.clone().with_max_iterations(1), 8).unwrap();
    assert!(r.best_fitness < start.best_fitness);
    assert!(space.contains(&r.best_position));
}

#[test]
fn single_precision_runs() {
    let f3 = lookup::<f32>("f3").unwrap();
    let params = SonarParams32::msu(3).with_angle_mode(AngleMode::rand_default());
    let r = run_msu(&f3, f3.default_space(), &params, 5).unwrap();
    assert!(f3.default_space().contains(&r.best_position));
    assert!(r.best_fitness.is_finite());
    let again = run_msu(&f3, f3.default_space(), &params, 5).unwrap();
    assert_eq!(r, again);
    let opt = f3.known_optimum().unwrap();
    assert!((opt.value - 16.0 / 8.16).abs() < DEFAULT_TOLERANCE as f32);
    let s = run_ssu(&f3, f3.default_space(), &SonarParams32::ssu(), 1).unwrap();
    assert!(s.best_fitness <= opt.value + 1e-4);
}

#[test]
fn ga_keeps_best_ever_and_stays_feasible() {
    let f4 = lookup::<f64>("f4").unwrap();
    for seed in 0..10 {
        let r = run_ga(&f4, f4.default_space(), &GaParams::default().with_trajectory(), seed).unwrap();
        let t = r.trajectory.as_ref().unwrap();
        assert!(t.windows(2).all(|w| w[0].fitness < w[1].fitness));
        assert!(t.iter().all(|p| f4.default_space().contains(&p.position)));
        assert!(f4.default_space().contains(&r.best_position));
    }
}

#[test]
fn ga_f2_suite_reaches_the_peak() {
    let f2 = lookup::<f64>("f2").unwrap();
    let best = (0..100)
        .map(|s| run_ga(&f2, f2.default_space(), &GaParams::default(), s).unwrap().best_fitness)
        .fold(f64::NEG_INFINITY, f64::max);
    assert!((best - 0.5635).abs() < 1e-3);
}
