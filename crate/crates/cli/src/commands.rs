use std::fmt;
use std::path::Path;

use anyhow::{anyhow, Context};
use bosonic_tradeoff::finite_dim::{cqe_region_bounds_fd, ensemble_entropies, protocol_rates};
use bosonic_tradeoff::fock::verify_cqe_entropies;
use bosonic_tradeoff::regions::{
    ce_frontier, ce_rate_at_consumption, ce_timeshare_corners, cq_frontier, cq_timeshare_corners, cqe_bounds,
    gain_metrics, max_first_given_second, minkowski_sum, reallocating_timeshare_cq, rp_frontier, rps_bounds,
    timeshare_companion_at, GainMetrics,
};
use bosonic_tradeoff::rule_of_thumb::{rule_of_thumb, taylor_zero_crossing};
use bosonic_tradeoff::{
    classical_capacity, ea_classical_capacity, quantum_capacity, quantum_capacity_limit, EntropyBits, Error,
    FdInstance, RateTriple, RegionTag, ShareGrid, Slice,
};
use serde::Serialize;
use serde_json::json;

use crate::emit::{
    bounds_csv, frontier_csv, json as to_json, num, opt_num, table_csv, write_out, FrontierDoc, Metadata,
};
use crate::{Baseline, ChannelArgs, Cli, Command, CompareSlice, Format, GridArgs, RegionArg, SliceArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Other,
    Usage,
    Infeasible,
    Verification,
}

#[derive(Debug)]
pub struct Failure {
    kind: Kind,
    error: anyhow::Error,
}

impl Failure {
    fn new(kind: Kind, error: anyhow::Error) -> Self {
        Failure { kind, error }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind {
            Kind::Other => 1,
            Kind::Usage => 2,
            Kind::Infeasible => 3,
            Kind::Verification => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.error)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Infeasible { .. } => Kind::Infeasible,
            Error::Domain { .. } | Error::IncompatibleFrontiers(_) => Kind::Usage,
            _ => Kind::Other,
        };
        Failure::new(kind, e.into())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::new(Kind::Other, e)
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::new(Kind::Usage, anyhow!(msg.into()))
}

fn channel_meta(command: &str, ch: &ChannelArgs, grid: Option<&GridArgs>) -> Metadata {
    Metadata {
        eta: Some(ch.eta.eta()),
        ns: Some(ch.ns.ns()),
        grid: grid.map(|g| g.grid),
        ..Metadata::new(command)
    }
}

fn share_grid(g: &GridArgs) -> Result<ShareGrid, Failure> {
    Ok(ShareGrid::log_spaced(g.grid as usize, ShareGrid::DEFAULT_FLOOR)?)
}

pub fn run(cli: &Cli) -> Outcome {
    let out = cli.output.as_deref();
    match &cli.command {
        Command::Capacities(ch) => capacities(ch, cli.format, out),
        Command::Frontier {
            channel,
            grid,
            slice,
            region,
        } => frontier(channel, grid, *slice, *region, cli.format, out),
        Command::Compare {
            channel,
            grid,
            slice,
            target,
            baseline,
        } => compare(channel, grid, *slice, *target, *baseline, cli.format, out),
        Command::RuleOfThumb { channel, epsilon } => {
            let r = rule_of_thumb(channel.eta, channel.ns, *epsilon)?;
            let zero = taylor_zero_crossing(channel.eta)?;
            let text = match cli.format {
                Format::Csv => table_csv(&[
                    ("epsilon", num(epsilon.value())),
                    ("lambda_star", num(r.lambda_star)),
                    ("quantum_photons", num(r.quantum_photons)),
                    ("q_max", num(r.q_max)),
                    ("taylor_bound", num(r.taylor_bound)),
                    ("quantum_rate", num(r.quantum_rate)),
                    ("shortfall", num(r.shortfall)),
                    ("taylor_zero_crossing", num(zero)),
                ]),
                Format::Json => to_json(&json!({
                    "metadata": channel_meta("rule-of-thumb", channel, None),
                    "epsilon": epsilon.value(),
                    "rule_of_thumb": r,
                    "taylor_zero_crossing": zero,
                }))?,
            };
            Ok(write_out(out, &text)?)
        }
        Command::Verify {
            channel,
            lambda,
            cutoff,
            tolerance,
        } => {
            if tolerance.is_nan() || *tolerance < 0.0 {
                return Err(usage(format!("tolerance must be >= 0, got {tolerance}")));
            }
            let report = verify_cqe_entropies(channel.eta, channel.ns, *lambda, *cutoff as usize, *tolerance)?;
            let text = match cli.format {
                Format::Csv => {
                    let mut s = String::from("quantity,expected,observed,deviation,passed\n");
                    for c in &report.checks {
                        s.push_str(&format!(
                            "{},{},{},{},{}\n",
                            c.name,
                            num(c.expected),
                            num(c.observed),
                            num(c.deviation),
                            c.passed
                        ));
                    }
                    s
                }
                Format::Json => to_json(&json!({
                    "metadata": channel_meta("verify", channel, None),
                    "report": report,
                }))?,
            };
            write_out(out, &text)?;
            for d in &report.diagnostics {
                eprintln!("note: {d}");
            }
            if report.passed {
                eprintln!(
                    "max deviation {:e} within tolerance {:e}",
                    report.max_deviation, tolerance
                );
                Ok(())
            } else {
                Err(Failure::new(
                    Kind::Verification,
                    anyhow!(
                        "verification failed: max deviation {:e} exceeds {:e}",
                        report.max_deviation,
                        tolerance
                    ),
                ))
            }
        }
        Command::FdEval { input } => fd_eval(input, cli.format, out),
        Command::Minkowski { a, b } => {
            let (fa, fb) = (FrontierDoc::load(a)?, FrontierDoc::load(b)?);
            let sum = minkowski_sum(&fa.frontier, &fb.frontier)?;
            let text = match cli.format {
                Format::Csv => frontier_csv(&sum),
                Format::Json => to_json(&FrontierDoc {
                    metadata: Metadata::new("minkowski"),
                    frontier: sum,
                })?,
            };
            Ok(write_out(out, &text)?)
        }
    }
}

fn capacities(ch: &ChannelArgs, format: Format, out: Option<&Path>) -> Outcome {
    let c = classical_capacity(ch.eta, ch.ns).value();
    let q = quantum_capacity(ch.eta, ch.ns).value();
    let limit = quantum_capacity_limit(ch.eta);
    let ea = ea_classical_capacity(ch.eta, ch.ns);
    let text = match format {
        Format::Csv => table_csv(&[
            ("classical_capacity", num(c)),
            ("quantum_capacity", num(q)),
            (
                "quantum_capacity_limit",
                limit.finite().map(num).unwrap_or_else(|| limit.to_string()),
            ),
            ("ea_classical_capacity", num(ea.rate.value())),
            ("ea_ebit_cost", num(ea.ebit_cost.value())),
        ]),
        Format::Json => to_json(&json!({
            "metadata": channel_meta("capacities", ch, None),
            "classical_capacity": c,
            "quantum_capacity": q,
            "quantum_capacity_limit": limit,
            "ea_corner": ea,
        }))?,
    };
    Ok(write_out(out, &text)?)
}

fn frontier(
    ch: &ChannelArgs,
    g: &GridArgs,
    slice: SliceArg,
    region: RegionArg,
    format: Format,
    out: Option<&Path>,
) -> Outcome {
    let grid = share_grid(g)?;
    let meta = channel_meta("frontier", ch, Some(g));
    let f = match slice {
        SliceArg::Cq => cq_frontier(ch.eta, ch.ns, &grid),
        SliceArg::Ce => ce_frontier(ch.eta, ch.ns, &grid),
        SliceArg::Rp => rp_frontier(ch.eta, ch.ns, &grid),
        SliceArg::Bounds => {
            let (tag, rows): (RegionTag, Vec<_>) = match region {
                RegionArg::Cqe => (
                    RegionTag::Cqe,
                    grid.points()
                        .iter()
                        .map(|s| (s.lambda(), cqe_bounds(ch.eta, ch.ns, *s)))
                        .collect(),
                ),
                RegionArg::Rps => (
                    RegionTag::Rps,
                    grid.points()
                        .iter()
                        .map(|s| (s.lambda(), rps_bounds(ch.eta, ch.ns, *s)))
                        .collect(),
                ),
            };
            let text = match format {
                Format::Csv => bounds_csv(&tag.to_string(), &rows),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Row {
                        lambda: f64,
                        bounds: bosonic_tradeoff::regions::BoundTriple,
                    }
                    let rows: Vec<Row> = rows
                        .into_iter()
                        .map(|(lambda, bounds)| Row { lambda, bounds })
                        .collect();
                    to_json(&json!({ "metadata": meta, "region": tag, "rows": rows }))?
                }
            };
            return Ok(write_out(out, &text)?);
        }
    };
    let text = match format {
        Format::Csv => frontier_csv(&f),
        Format::Json => to_json(&FrontierDoc {
            metadata: meta,
            frontier: f,
        })?,
    };
    Ok(write_out(out, &text)?)
}

#[derive(Serialize)]
struct Comparison {
    slice: Slice,
    target: f64,
    lambda: f64,
    tradeoff: RateTriple,
    baseline: RateTriple,
    gain: GainMetrics,
}

fn compare(
    ch: &ChannelArgs,
    g: &GridArgs,
    slice: CompareSlice,
    target: f64,
    baseline: Baseline,
    format: Format,
    out: Option<&Path>,
) -> Outcome {
    if !(target.is_finite() && target >= 0.0) {
        return Err(usage(format!("target must be finite and >= 0, got {target}")));
    }
    let (eta, ns) = (ch.eta, ch.ns);
    let cmp = match slice {
        CompareSlice::Cq => {
            let best = max_first_given_second(RegionTag::Cqe, eta, ns, target, &share_grid(g)?)?;
            let base_rate = match baseline {
                Baseline::FullBudget => {
                    let (a, b) = cq_timeshare_corners(eta, ns);
                    timeshare_companion_at(Slice::Cq, a, b, target)?
                }
                Baseline::Reallocating => reallocating_timeshare_cq(eta, ns, target)?.classical_rate,
                Baseline::EaCorner => return Err(usage("--baseline ea-corner applies to --slice ce only")),
            };
            let tradeoff = RateTriple::new(RegionTag::Cqe, best.rate, target, 0.0);
            let base = RateTriple::new(RegionTag::Cqe, base_rate, target, 0.0);
            Comparison {
                slice: Slice::Cq,
                target,
                lambda: best.share.lambda(),
                tradeoff,
                baseline: base,
                gain: gain_metrics(&tradeoff, &base),
            }
        }
        CompareSlice::Ce => {
            let best = ce_rate_at_consumption(eta, ns, EntropyBits::new(target)?)?;
            let tradeoff = RateTriple::new(RegionTag::Cqe, best.rate, 0.0, -target);
            let base = match baseline {
                Baseline::FullBudget => {
                    let (a, b) = ce_timeshare_corners(eta, ns);
                    RateTriple::new(
                        RegionTag::Cqe,
                        timeshare_companion_at(Slice::Ce, a, b, -target)?,
                        0.0,
                        -target,
                    )
                }
                Baseline::EaCorner => {
                    let ea = ea_classical_capacity(eta, ns);
                    RateTriple::new(RegionTag::Cqe, ea.rate.value(), 0.0, -ea.ebit_cost.value())
                }
                Baseline::Reallocating => return Err(usage("--baseline reallocating applies to --slice cq only")),
            };
            Comparison {
                slice: Slice::Ce,
                target,
                lambda: best.share.lambda(),
                tradeoff,
                baseline: base,
                gain: gain_metrics(&tradeoff, &base),
            }
        }
    };
    let text = match format {
        Format::Csv => {
            let mut s = String::from("coordinate,tradeoff,baseline,difference,db_decrease\n");
            for (name, c) in ["rate1", "rate2", "rate3"].iter().zip(cmp.gain.coordinates.iter()) {
                s.push_str(&format!(
                    "{name},{},{},{},{}\n",
                    num(c.tradeoff),
                    num(c.baseline),
                    num(c.difference),
                    opt_num(c.db_decrease)
                ));
            }
            s
        }
        Format::Json => to_json(&json!({
            "metadata": channel_meta("compare", ch, Some(g)),
            "comparison": cmp,
        }))?,
    };
    Ok(write_out(out, &text)?)
}

fn fd_eval(input: &Path, format: Format, out: Option<&Path>) -> Outcome {
    let inst = FdInstance::load(input).with_context(|| format!("loading {}", input.display()))?;
    let h = ensemble_entropies(&inst.channel, &inst.ensemble)?;
    let r = protocol_rates(&inst.channel, &inst.ensemble)?;
    let b = cqe_region_bounds_fd(&inst.channel, &inst.ensemble)?;
    let text = match format {
        Format::Csv => table_csv(&[
            ("bits", num(r.bits)),
            ("qubits", num(r.qubits)),
            ("ebits", num(r.ebits)),
            ("bound1", num(b.b1)),
            ("bound2", num(b.b2)),
            ("bound3", num(b.b3)),
        ]),
        Format::Json => to_json(&json!({
            "metadata": Metadata::new("fd-eval"),
            "entropies": h,
            "rates": r,
            "bounds": b,
        }))?,
    };
    Ok(write_out(out, &text)?)
}
