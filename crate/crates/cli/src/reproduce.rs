//! Published-value checks with a pass/fail matrix.

use cylmob::analysis::{
    beta_exact, bias_polynomial, corollary_pl_bound, exhaustive_fractions, rational_to_f64, tie_sensitivity,
    FractionTable, SweepOptions,
};
use cylmob::channel::{Bias, ChannelModel, ExactChannel};
use cylmob::construction::{build, Family};
use cylmob::decoder::{MwpmDecoder, TieBreak};
use cylmob::enumerators::{closed_form_counts, enumerators, EnumeratorPath};
use cylmob::montecarlo::{estimate_pl, threshold, SimulationOptions};

pub struct Options {
    pub skip_slow: bool,
    pub tie_break: TieBreak,
    pub seed: u64,
    pub workers: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Outside tolerance but explained: tie-break sensitive or a suspected print error.
    Flagged,
    Skipped,
}

pub struct Row {
    pub check: String,
    pub expected: String,
    pub observed: String,
    pub status: Status,
}

fn row(check: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>, status: Status) -> Row {
    Row {
        check: check.into(),
        expected: expected.into(),
        observed: observed.into(),
        status,
    }
}

fn within(observed: f64, expected: f64, tol: f64) -> Status {
    if (observed - expected).abs() <= tol + 1e-12 {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn table(family: Family, lc: usize, lf: usize, j: usize, tie: TieBreak, workers: usize) -> FractionTable {
    let code = build(family, lc, lf).expect("published code sizes build");
    let dec = MwpmDecoder::with_tie_break(&code, tie).expect("published codes are matchable");
    exhaustive_fractions(&dec, j, SweepOptions { workers, ..SweepOptions::default() }).expect("within budget")
}

const CYLINDRICAL_15: [&str; 15] = [
    "X1 X7 X10", "X1 X2 X8 X11", "X2 X9 X12", "X3 X10 X13", "X3 X4 X11 X14", "X4 X12 X15",
    "X5 X7 X13", "X5 X6 X8 X14", "X6 X9 X15", "Z1 Z5 Z7 Z8", "Z2 Z6 Z8 Z9", "Z1 Z3 Z10 Z11",
    "Z2 Z4 Z11 Z12", "Z3 Z5 Z13 Z14", "Z4 Z6 Z14 Z15",
];

const L_CYL: &[u64] = &[6, 18, 66, 228, 678, 1836, 4236, 7920, 11274, 11442, 7746, 3132, 570];
const L_MOB: &[u64] = &[4, 18, 60, 220, 666, 1836, 4288, 7968, 11280, 11378, 7668, 3156, 610];
const L_SURF: &[u64] = &[6, 24, 75, 240, 648, 1440, 2538, 3216, 2634, 1224, 243];

const LABELS_2: [&str; 6] = ["XX", "XZ", "XY", "ZZ", "ZY", "YY"];
const LABELS_3: [&str; 10] = ["XXX", "XXZ", "XXY", "XZZ", "XZY", "XYY", "ZZZ", "ZZY", "ZYY", "YYY"];

/// `(family, Lc, Lf, j, printed row, entries suspected to be misprinted)`.
type TableRow = (Family, usize, usize, usize, &'static [f64], &'static [&'static str]);

const TABLE: [TableRow; 8] = [
    (Family::Cylindrical, 3, 3, 2, &[0.257, 0.0, 0.257, 0.086, 0.086, 0.343], &[]),
    (Family::Moebius, 3, 3, 2, &[0.371, 0.0, 0.371, 0.029, 0.029, 0.400], &[]),
    (Family::Cylindrical, 5, 3, 2, &[0.150, 0.0, 0.150, 0.0, 0.0, 0.150], &[]),
    (Family::Moebius, 5, 3, 2, &[0.150, 0.0, 0.150, 0.0, 0.0, 0.150], &[]),
    (Family::Cylindrical, 5, 3, 3, &[0.384, 0.150, 0.384, 0.0, 0.150, 0.384, 0.013, 0.013, 0.163, 0.397], &[]),
    (Family::Moebius, 5, 3, 3, &[0.396, 0.150, 0.396, 0.0, 0.150, 0.396, 0.004, 0.004, 0.154, 0.401], &[]),
    (Family::Cylindrical, 5, 5, 3, &[0.019, 0.0, 0.019, 0.0, 0.0, 0.019, 0.004, 0.004, 0.004, 0.023], &[]),
    (
        Family::Moebius,
        5,
        5,
        3,
        &[0.025, 0.0, 0.025, 0.0, 0.150, 0.0251, 7e-4, 7e-4, 7e-4, 0.401],
        &["XZY", "YYY"],
    ),
];

pub fn run(opts: &Options) -> Vec<Row> {
    let mut rows = Vec::new();
    let w = opts.workers;

    let cyl = build(Family::Cylindrical, 3, 3).expect("builds");
    let mob = build(Family::Moebius, 3, 3).expect("builds");
    let gens: Vec<String> = cyl.generators().iter().map(|g| g.to_string()).collect();
    let status = if gens == CYLINDRICAL_15 { Status::Pass } else { Status::Fail };
    let mismatched = gens.iter().zip(CYLINDRICAL_15).filter(|(a, b)| a != b).count();
    rows.push(row(
        "cylindrical [[15,1,3]] generators (G4 read with X13)",
        "15 printed",
        format!("{} match", 15 - mismatched),
        status,
    ));
    let changed: Vec<usize> = cyl
        .generators()
        .iter()
        .zip(mob.generators())
        .enumerate()
        .filter(|(_, (a, b))| *a != b)
        .map(|(i, _)| i + 1)
        .collect();
    let status = if changed == [4, 6, 12, 13] { Status::Pass } else { Status::Fail };
    rows.push(row("Möbius generators differing", "[4, 6, 12, 13]", format!("{changed:?}"), status));

    for (family, lc, lf, label) in [
        (Family::Surface, 3, 3, "[[13,1,3]]"),
        (Family::Surface, 5, 5, "[[41,1,5]]"),
        (Family::Surface, 3, 5, "[[23,1,3/5]]"),
        (Family::Cylindrical, 3, 3, "[[15,1,3]]"),
        (Family::Cylindrical, 5, 5, "[[45,1,5]]"),
        (Family::Cylindrical, 5, 3, "[[25,1,3/5]]"),
        (Family::Moebius, 3, 3, "[[15,1,3]]"),
        (Family::Moebius, 5, 5, "[[45,1,5]]"),
        (Family::Moebius, 5, 3, "[[25,1,3/5]]"),
    ] {
        let got = build(family, lc, lf).map(|c| c.label()).unwrap_or_else(|e| e.to_string());
        rows.push(row(format!("{family} {lc}x{lf} parameters"), label, got.clone(), within_str(&got, label)));
    }

    for (family, want) in [(Family::Cylindrical, L_CYL), (Family::Moebius, L_MOB), (Family::Surface, L_SURF)] {
        let code = build(family, 3, 3).expect("builds");
        let e = enumerators(&code, EnumeratorPath::MacWilliams).expect("small code");
        let got = &e.undetectable.coefficients()[3..];
        let status = if got == want { Status::Pass } else { Status::Fail };
        rows.push(row(format!("{family} {} L3..Ln", code.label()), format!("{want:?}"), format!("{got:?}"), status));
        if let Ok(c) = closed_form_counts(family, 3) {
            let got = (e.undetectable.get(3), e.undetectable.get(4));
            let status = if got == (c.l_low, c.l_low1) { Status::Pass } else { Status::Fail };
            rows.push(row(format!("{family} closed-form (L3, L4)"), format!("{:?}", (c.l_low, c.l_low1)), format!("{got:?}"), status));
        }
    }

    for (family, dep, pf, row_1mb) in [
        (Family::Cylindrical, 0.85, 0.91, [0.15, 0.080, 0.084, 0.091]),
        (Family::Moebius, 0.82, 0.97, [0.18, 0.034, 0.028, 0.029]),
        (Family::Surface, f64::NAN, f64::NAN, [0.24, 0.233, 0.265, 0.270]),
    ] {
        let t = table(family, 3, 3, 2, opts.tie_break, w);
        let chans = [
            ExactChannel::from_bias_integer(1).expect("valid"),
            ExactChannel::from_bias_integer(10).expect("valid"),
            ExactChannel::from_bias_integer(100).expect("valid"),
            ExactChannel::phase_flip(),
        ];
        let b: Vec<f64> = chans
            .iter()
            .map(|ch| rational_to_f64(&beta_exact(&t, ch).expect("nonzero p")))
            .collect();
        if !dep.is_nan() {
            rows.push(row(format!("{family} β2 A=1"), dep.to_string(), format!("{:.4}", b[0]), within(b[0], dep, 0.02)));
            rows.push(row(format!("{family} β2 A=∞"), pf.to_string(), format!("{:.4}", b[3]), within(b[3], pf, 0.02)));
        }
        for ((a, want), got) in ["1", "10", "100", "∞"].iter().zip(row_1mb).zip(&b) {
            let v = 1.0 - got;
            rows.push(row(format!("{} 1-β2 A={a}", t.code), want.to_string(), format!("{v:.4}"), within(v, want, 0.02)));
        }
        if family == Family::Cylindrical {
            let poly = bias_polynomial(&t).expect("j = 2 table");
            let got: Vec<f64> = poly.iter().rev().map(rational_to_f64).collect();
            let ok = got.iter().zip([0.086, 0.172, 1.114]).all(|(g, w)| (g - w).abs() <= 0.005);
            rows.push(row(
                "cylindrical 1-β2(A)(A+2)² coefficients",
                "[0.086, 0.172, 1.114]",
                format!("[{:.4}, {:.4}, {:.4}]", got[0], got[1], got[2]),
                if ok { Status::Pass } else { Status::Fail },
            ));
        }
    }

    let alternative = match opts.tie_break {
        TieBreak::Lexicographic => TieBreak::Reverse,
        TieBreak::Reverse => TieBreak::Lexicographic,
    };
    for (family, lc, lf, j, printed, suspect) in TABLE {
        let name = format!("Table {family} {lc}x{lf} j={j}");
        if j == 3 && opts.skip_slow {
            rows.push(row(name, "-", "-", Status::Skipped));
            continue;
        }
        let t = table(family, lc, lf, j, opts.tie_break, w);
        let alt = table(family, lc, lf, j, alternative, w);
        let sensitive = tie_sensitivity(&t, &alt);
        let labels: &[&str] = if j == 2 { &LABELS_2 } else { &LABELS_3 };
        for (label, &want) in labels.iter().zip(printed) {
            let got = t.by_label(label).map_or(f64::NAN, |c| c.fraction());
            let mut status = within(got, want, 0.03);
            if status == Status::Fail && (suspect.contains(label) || sensitive.iter().any(|s| s.label == *label)) {
                status = Status::Flagged;
            }
            rows.push(row(format!("{} {label}", name), want.to_string(), format!("{got:.4}"), status));
        }
    }

    for d in [7usize, 9, 11] {
        let ordered = [10.0, 100.0, 1000.0].iter().all(|&a| {
            let c = corollary_pl_bound(Family::Cylindrical, d, Bias::Finite(a), 0.001).unwrap_or(f64::NAN);
            let m = corollary_pl_bound(Family::Moebius, d, Bias::Finite(a), 0.001).unwrap_or(f64::NAN);
            m < c
        });
        rows.push(row(
            format!("bound d={d} p=0.001 Möbius < cylindrical, A≥10"),
            "true",
            ordered.to_string(),
            if ordered { Status::Pass } else { Status::Fail },
        ));
    }

    if opts.skip_slow {
        rows.push(row("Monte Carlo p_L at p=0.01", "-", "-", Status::Skipped));
        rows.push(row("thresholds", "-", "-", Status::Skipped));
        return rows;
    }

    let dec = MwpmDecoder::with_tie_break(&cyl, opts.tie_break).expect("matchable");
    for (name, ch, want) in [
        ("depolarizing", ChannelModel::depolarizing(0.01).expect("valid"), 1.585e-3),
        ("phase flip", ChannelModel::phase_flip(0.01).expect("valid"), 9.1e-4),
    ] {
        let sim = SimulationOptions {
            min_failures: 300,
            max_shots: 2_000_000,
            workers: w,
            ..SimulationOptions::new(opts.seed)
        };
        let r = estimate_pl(&dec, &ch, &sim).expect("valid options");
        let z = (r.p_l_hat - want).abs() / r.sigma();
        rows.push(row(
            format!("[[15,1,3]] cylindrical {name} p_L at p=0.01"),
            format!("{want:e} (3σ)"),
            format!("{:.4e} ({} failures, {z:.1}σ)", r.p_l_hat, r.failures),
            if z <= 3.0 { Status::Pass } else { Status::Fail },
        ));
    }

    let grid: Vec<f64> = (0..8).map(|i| 0.06 + 0.02 * i as f64).collect();
    for family in [Family::Cylindrical, Family::Moebius] {
        for (k, (bias, want)) in [(Bias::Finite(1.0), 0.14), (Bias::Finite(10.0), 0.12), (Bias::Infinite, 0.10)]
            .into_iter()
            .enumerate()
        {
            let sim = SimulationOptions {
                workers: w,
                ..SimulationOptions::fixed_shots(opts.seed.wrapping_add(k as u64), 50_000)
            };
            let (observed, status) = match threshold(family, &[3, 5], bias, &grid, &sim) {
                Ok(t) => (format!("{:.4}", t.p_th), within(t.p_th, want, 0.02)),
                Err(e) => (e.to_string(), Status::Fail),
            };
            rows.push(row(format!("{family} threshold A={bias}"), want.to_string(), observed, status));
        }
    }
    rows
}

fn within_str(got: &str, want: &str) -> Status {
    if got == want {
        Status::Pass
    } else {
        Status::Fail
    }
}

pub fn render(rows: &[Row]) -> String {
    let width = rows.iter().map(|r| r.check.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAG",
            Status::Skipped => "SKIP",
        };
        let pad = width - r.check.chars().count();
        out.push_str(&format!(
            "{status}  {}{}  expected {}  observed {}\n",
            r.check,
            " ".repeat(pad),
            r.expected,
            r.observed
        ));
    }
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    out.push_str(&format!(
        "{} passed, {} failed, {} flagged, {} skipped\n",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Flagged),
        count(Status::Skipped)
    ));
    out
}
