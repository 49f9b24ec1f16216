use anyhow::{bail, Result};
use cylmob::analysis::{
    beta, beta_exact, corollary_pl_bound, exhaustive_fractions, rational_string, theorem1_beta_bound, FractionTable,
    SweepOptions,
};
use cylmob::channel::{Bias, ChannelModel, ExactChannel};
use cylmob::construction::{build, Family};
use cylmob::decoder::{MwpmDecoder, TieBreak};
use cylmob::enumerators::{enumerators, EnumeratorPath, WeightEnumerator};
use cylmob::gf2::{BinaryMatrix, BitVec};
use cylmob::montecarlo::{estimate_pl, reports_csv, sweep, threshold, SimulationOptions, SimulationReport};
use cylmob::stabilizer::{syndrome, CssCode, PauliOperator};
use cylmob::Error;
use serde::Serialize;

use crate::args::{CodeArgs, Command, Format, MatrixName, Polynomial, Route, Stopping};
use crate::output::Artifact;
use crate::reproduce;

pub struct Context {
    pub workers: usize,
}

impl CodeArgs {
    pub fn sizes(&self) -> Result<(usize, usize)> {
        match (self.lc.or(self.l), self.lf.or(self.l)) {
            (Some(lc), Some(lf)) => Ok((lc, lf)),
            _ => Err(Error::InvalidParameters("give --L, or both --Lc and --Lf".into()).into()),
        }
    }

    pub fn build(&self) -> Result<CssCode> {
        let (lc, lf) = self.sizes()?;
        Ok(build(self.family, lc, lf)?)
    }
}

#[derive(Serialize)]
struct Params {
    n: usize,
    k: usize,
    #[serde(rename = "dX")]
    d_x: Option<usize>,
    #[serde(rename = "dZ")]
    d_z: Option<usize>,
}

fn params(code: &CssCode) -> Params {
    Params {
        n: code.n(),
        k: code.k(),
        d_x: code.d_x().map(|d| d.value),
        d_z: code.d_z().map(|d| d.value),
    }
}

#[derive(Serialize)]
struct BuildRecord {
    family: Family,
    #[serde(rename = "Lc")]
    lc: usize,
    #[serde(rename = "Lf")]
    lf: usize,
    n: usize,
    k: usize,
    #[serde(rename = "dX")]
    d_x: Option<usize>,
    #[serde(rename = "dZ")]
    d_z: Option<usize>,
    distances_verified: bool,
}

fn operator_matrix(n: usize, ops: &[PauliOperator], x_part: bool) -> Result<BinaryMatrix> {
    let rows = ops
        .iter()
        .map(|o| if x_part { o.x_part().clone() } else { o.z_part().clone() })
        .collect();
    Ok(BinaryMatrix::from_rows(n, rows)?)
}

#[derive(Serialize)]
struct Polynomials<'a> {
    code: String,
    route: Route,
    #[serde(rename = "L")]
    l: &'a [u64],
    #[serde(rename = "S")]
    s: &'a [u64],
    #[serde(rename = "N")]
    n: &'a [u64],
}

fn sparse_csv(we: &WeightEnumerator) -> String {
    let mut out = String::from("weight,count\n");
    for (w, &c) in we.coefficients().iter().enumerate().filter(|(_, &c)| c > 0) {
        out.push_str(&format!("{w},{c}\n"));
    }
    out
}

#[derive(Serialize)]
struct DecodeRecord {
    code: String,
    syndrome: String,
    correction: PauliOperator,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<PauliOperator>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual_class: Option<cylmob::stabilizer::ResidualClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    success: Option<bool>,
}

#[derive(Serialize)]
struct ValueRecord {
    family: Family,
    d: usize,
    #[serde(rename = "A")]
    bias: Bias,
    value: f64,
    #[serde(flatten)]
    extra: serde_json::Map<String, serde_json::Value>,
}

fn exact_channel(bias: Bias) -> Option<ExactChannel> {
    match bias {
        Bias::Infinite => Some(ExactChannel::phase_flip()),
        Bias::Finite(a) => {
            // Exact only for biases with a short decimal expansion.
            let scaled = a * 1e6;
            (scaled.fract() == 0.0 && scaled < i64::MAX as f64)
                .then(|| ExactChannel::from_bias_ratio(scaled as i64, 1_000_000).ok())
                .flatten()
        }
    }
}

fn sweep_options(budget: u64, ctx: &Context) -> SweepOptions {
    SweepOptions {
        budget: budget as u128,
        workers: ctx.workers,
    }
}

fn fraction_table(code: &CssCode, j: usize, tie_break: TieBreak, budget: u64, ctx: &Context) -> Result<FractionTable> {
    let dec = MwpmDecoder::with_tie_break(code, tie_break)?;
    Ok(exhaustive_fractions(&dec, j, sweep_options(budget, ctx))?)
}

fn simulation_options(stop: &Stopping, ctx: &Context) -> SimulationOptions {
    SimulationOptions {
        min_failures: stop.min_failures,
        max_shots: stop.max_shots,
        batch_size: stop.batch_size,
        seed: stop.seed.expect("seed assigned before dispatch"),
        workers: ctx.workers,
    }
}

fn code_distance(code: &CssCode) -> Result<usize> {
    code.distance().ok_or_else(|| Error::NoLogicals.into())
}

pub fn run(command: &Command, ctx: &Context) -> Result<Artifact> {
    match command {
        Command::Build { code } => {
            let c = code.build()?;
            let (lc, lf) = code.sizes()?;
            let p = params(&c);
            let record = BuildRecord {
                family: code.family,
                lc,
                lf,
                n: p.n,
                k: p.k,
                d_x: p.d_x,
                d_z: p.d_z,
                distances_verified: c.d_x().is_some_and(|d| d.verified) && c.d_z().is_some_and(|d| d.verified),
            };
            let body = format!(
                "# H_X\n{}# H_Z\n{}",
                c.h_x().to_text(),
                c.h_z().to_text()
            );
            Ok(Artifact::Text {
                comments: vec![format!("params: {}", serde_json::to_string(&record)?)],
                body,
            })
        }
        Command::Params { code } => Ok(Artifact::json(&params(&code.build()?))),
        Command::Logicals { code, format } => {
            let c = code.build()?;
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Logicals<'a> {
                        code: String,
                        logical_x: &'a [PauliOperator],
                        logical_z: &'a [PauliOperator],
                    }
                    Ok(Artifact::json(&Logicals {
                        code: c.label(),
                        logical_x: c.logical_x(),
                        logical_z: c.logical_z(),
                    }))
                }
                Format::Csv => {
                    let mut body = String::from("type,index,operator\n");
                    for (kind, ops) in [("X", c.logical_x()), ("Z", c.logical_z())] {
                        for (i, op) in ops.iter().enumerate() {
                            body.push_str(&format!("{kind},{},{op}\n", i + 1));
                        }
                    }
                    Ok(Artifact::text(body))
                }
            }
        }
        Command::Enumerate { code, route, format, polynomial } => {
            let c = code.build()?;
            let path = match route {
                Route::Direct => EnumeratorPath::Direct,
                Route::Macwilliams => EnumeratorPath::MacWilliams,
            };
            let e = enumerators(&c, path)?;
            match format {
                Format::Json => Ok(Artifact::json(&Polynomials {
                    code: c.label(),
                    route: *route,
                    l: e.undetectable.coefficients(),
                    s: e.stabilizer.coefficients(),
                    n: e.normalizer.coefficients(),
                })),
                Format::Csv => {
                    let we = match polynomial {
                        Polynomial::L => &e.undetectable,
                        Polynomial::S => &e.stabilizer,
                        Polynomial::N => &e.normalizer,
                    };
                    Ok(Artifact::Text {
                        comments: vec![format!("{:?}(z) of {}, nonzero coefficients", polynomial, c.label())],
                        body: sparse_csv(we),
                    })
                }
            }
        }
        Command::Decode { code, syndrome: s, error, tie_break, debug } => {
            let c = code.build()?;
            let dec = MwpmDecoder::with_tie_break(&c, *tie_break)?;
            let mut session = dec.session();
            let record = match (s, error) {
                (Some(s), _) => {
                    let bits: BitVec = s.trim().parse()?;
                    let correction = session.decode(&bits)?;
                    DecodeRecord {
                        code: c.label(),
                        syndrome: bits.to_string(),
                        correction,
                        error: None,
                        residual_class: None,
                        success: None,
                    }
                }
                (None, Some(e)) => {
                    let e = PauliOperator::parse(c.n(), e)?;
                    let bits = syndrome(&c, &e)?;
                    let out = session.decode_and_classify(&e)?;
                    DecodeRecord {
                        code: c.label(),
                        syndrome: bits.to_string(),
                        correction: out.correction,
                        error: Some(e),
                        residual_class: Some(out.residual_class),
                        success: Some(out.success),
                    }
                }
                (None, None) => bail!(Error::InvalidParameters("give --syndrome or --error".into())),
            };
            if *debug {
                let mut body = serde_json::to_string(&record)?;
                body.push('\n');
                body.push_str("# X-check graph (a b qubit)\n");
                body.push_str(&dec.x_check_graph().to_edge_list());
                body.push_str("# Z-check graph (a b qubit)\n");
                body.push_str(&dec.z_check_graph().to_edge_list());
                Ok(Artifact::text(body))
            } else {
                Ok(Artifact::json(&record))
            }
        }
        Command::Fractions { code, j, tie_break, budget } => {
            let c = code.build()?;
            let t = fraction_table(&c, *j, *tie_break, *budget, ctx)?;
            Ok(Artifact::Text {
                comments: vec![format!(
                    "{} decodes, {} failures, tie-break {:?}",
                    t.total_patterns(),
                    t.total_failed(),
                    t.tie_break
                )],
                body: t.to_csv(),
            })
        }
        Command::Beta { code, bias, j, tie_break, budget } => {
            let c = code.build()?;
            let d = code_distance(&c)?;
            let j = j.unwrap_or((d - 1) / 2 + 1);
            let t = fraction_table(&c, j, *tie_break, *budget, ctx)?;
            let value = beta(&t, &ChannelModel::from_bias(0.01, *bias)?)?;
            let mut extra = serde_json::Map::new();
            extra.insert("j".into(), j.into());
            extra.insert("code".into(), c.label().into());
            if let Some(ch) = exact_channel(*bias) {
                extra.insert("exact".into(), rational_string(&beta_exact(&t, &ch)?).into());
            }
            Ok(Artifact::json(&ValueRecord { family: code.family, d, bias: *bias, value, extra }))
        }
        Command::Bound { family, d, bias, p } => {
            let ch = ChannelModel::from_bias(p.unwrap_or(0.01), *bias)?;
            let value = theorem1_beta_bound(*family, *d, &ch)?;
            let mut extra = serde_json::Map::new();
            if let Some(p) = p {
                extra.insert("p".into(), (*p).into());
                extra.insert("p_l_bound".into(), corollary_pl_bound(*family, *d, *bias, *p)?.into());
            }
            Ok(Artifact::json(&ValueRecord { family: *family, d: *d, bias: *bias, value, extra }))
        }
        Command::Simulate { code, bias, p, stop, tie_break } => {
            let c = code.build()?;
            let dec = MwpmDecoder::with_tie_break(&c, *tie_break)?;
            let ch = ChannelModel::from_bias(*p, *bias)?;
            let report = estimate_pl(&dec, &ch, &simulation_options(stop, ctx))?;
            Ok(Artifact::json(&SimulationReport { bias: Some(*bias), ..report }))
        }
        Command::Sweep { code, bias, p_grid, stop } => {
            let c = code.build()?;
            let dec = MwpmDecoder::new(&c)?;
            let reports = sweep(&dec, *bias, p_grid, &simulation_options(stop, ctx))?;
            Ok(Artifact::text(reports_csv(&reports, true)))
        }
        Command::Threshold { family, bias, distances, p_grid, shots, seed } => {
            let opts = SimulationOptions {
                workers: ctx.workers,
                ..SimulationOptions::fixed_shots(seed.expect("seed assigned before dispatch"), *shots)
            };
            let t = threshold(*family, distances, *bias, p_grid, &opts)?;
            let mut comments = vec![format!("p_th = {:.5}", t.p_th)];
            for x in &t.crossings {
                comments.push(format!(
                    "crossing d={} d={}: p = {:.5} in [{}, {}]",
                    x.d_small, x.d_large, x.p, x.bracket.0, x.bracket.1
                ));
            }
            let reports: Vec<_> = t.curves.into_iter().flatten().collect();
            Ok(Artifact::Text { comments, body: reports_csv(&reports, true) })
        }
        Command::ReproducePaper { skip_slow, tie_break, seed } => {
            let rows = reproduce::run(&reproduce::Options {
                skip_slow: *skip_slow,
                tie_break: *tie_break,
                seed: *seed,
                workers: ctx.workers,
            });
            Ok(Artifact::text(reproduce::render(&rows)))
        }
        Command::Export { code, matrix } => {
            let c = code.build()?;
            let m = match matrix {
                MatrixName::Hx => c.h_x().clone(),
                MatrixName::Hz => c.h_z().clone(),
                MatrixName::Lx => operator_matrix(c.n(), c.logical_x(), true)?,
                MatrixName::Lz => operator_matrix(c.n(), c.logical_z(), false)?,
            };
            Ok(Artifact::text(m.to_text()))
        }
        Command::Rerun { .. } => bail!(Error::InvalidParameters("rerun cannot be nested".into())),
    }
}
