use cylmob::channel::{Bias, ChannelModel};
use cylmob::construction::{build, Family};
use cylmob::decoder::MwpmDecoder;
use cylmob::montecarlo::*;

#[test]
fn zero_rate_never_fails() {
    let code = build(Family::Cylindrical, 3, 3).unwrap();
    let dec = MwpmDecoder::new(&code).unwrap();
    let r = estimate_pl(&dec, &ChannelModel::depolarizing(0.0).unwrap(), &SimulationOptions::fixed_shots(1, 5000)).unwrap();
    assert_eq!((r.shots, r.failures), (5000, 0));
    assert!(r.hit_max_shots);
}

#[test]
fn reports_are_worker_independent() {
    let code = build(Family::Moebius, 3, 3).unwrap();
    let dec = MwpmDecoder::new(&code).unwrap();
    let ch = ChannelModel::from_bias(0.05, Bias::Finite(10.0)).unwrap();
    let mut opts = SimulationOptions::new(42);
    opts.batch_size = 3000;
    opts.min_failures = 200;
    opts.workers = 1;
    let a = estimate_pl(&dec, &ch, &opts).unwrap();
    opts.workers = 3;
    let b = estimate_pl(&dec, &ch, &opts).unwrap();
    assert_eq!(a, b);
    assert!(a.failures >= 200 && a.shots % 3000 == 0);
    assert!(a.ci_low <= a.p_l_hat && a.p_l_hat <= a.ci_high);
}

#[test]
fn phase_flip_failures_are_z_logicals() {
    let code = build(Family::Cylindrical, 3, 3).unwrap();
    let dec = MwpmDecoder::new(&code).unwrap();
    let r = estimate_pl(&dec, &ChannelModel::phase_flip(0.08).unwrap(), &SimulationOptions::fixed_shots(3, 20_000)).unwrap();
    assert!(r.failures > 0);
    assert_eq!(r.breakdown.logical_x + r.breakdown.logical_y, 0);
}

#[test]
fn sweep_is_monotone_on_fig3_points() {
    let code = build(Family::Cylindrical, 3, 3).unwrap();
    let dec = MwpmDecoder::new(&code).unwrap();
    let reports = sweep(&dec, Bias::Finite(1.0), &[0.01, 0.02, 0.05], &SimulationOptions::fixed_shots(9, 40_000)).unwrap();
    for w in reports.windows(2) {
        assert!(w[0].ci_low <= w[1].ci_high && w[0].p_l_hat <= w[1].p_l_hat);
    }
    assert!(sweep(&dec, Bias::Finite(1.0), &[], &SimulationOptions::new(1)).unwrap().is_empty());
    let seeds: Vec<u64> = reports.iter().map(|r| r.seed).collect();
    assert_ne!(seeds[0], seeds[1]);
}

#[test]
fn identical_curves_do_not_cross() {
    let code = build(Family::Cylindrical, 3, 3).unwrap();
    let dec = MwpmDecoder::new(&code).unwrap();
    let grid = [0.05, 0.1];
    let curve = sweep(&dec, Bias::Finite(1.0), &grid, &SimulationOptions::fixed_shots(1, 2000)).unwrap();
    assert!(curve_crossing(&grid, &curve, &curve).is_none());
    assert!(threshold(Family::Cylindrical, &[3], Bias::Infinite, &grid, &SimulationOptions::new(1)).is_err());
}
