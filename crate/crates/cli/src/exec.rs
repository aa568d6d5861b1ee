//! The commands themselves. Each returns through `CliError`, so the exit
//! code (1 for bad configuration, 2 for failed work) is decided in one
//! place, in `main`.

use degflow_core::{
    degree_distribution, empirical_distribution, estimate_nonstationary_exponent, fit_power_law,
    master_equation_pk, segment_plan, simulate_batch, tail_fit_range, DegreeDistribution, Family,
    FitResult, GrowthModel,
};

use crate::files::{
    self, CompareFile, CompareRow, DistributionFile, FitFile, FitRow, FitTableFile, SegmentsFile,
    ENGINE_VERSION,
};
use crate::opts::{
    Cli, Command, CompareArgs, ComputeArgs, FitArgs, FitsArgs, Format, ModelArgs, ModelKind,
    OutputArgs, SegmentsArgs, SimulateArgs, TableKind,
};
use crate::CliError;
use std::io::Write;

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute(args) => compute(args),
        Command::Simulate(args) => simulate(args),
        Command::Fit(args) => fit(args),
        Command::Compare(args) => compare(args),
        Command::Tables(args) => match args.table {
            TableKind::Segments(args) => segments_table(args),
            TableKind::Fits(args) => fits_table(args),
        },
    }
}

fn build_model(args: &ModelArgs) -> Result<GrowthModel, CliError> {
    if args.theta.is_some() && args.model != ModelKind::Power {
        return Err(CliError::Usage(
            "--theta only applies to --model power".to_string(),
        ));
    }
    let model = match args.model {
        ModelKind::Ba => GrowthModel::constant(args.m),
        ModelKind::Power => GrowthModel::power(args.m, args.theta.unwrap_or_default()),
        ModelKind::Log => GrowthModel::logarithmic(args.m),
    };
    model
        .and_then(|m| match args.m0 {
            Some(m0) => m.with_m0(m0),
            None => Ok(m),
        })
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn start_for(model: &GrowthModel, requested: Option<u64>) -> Result<u64, CliError> {
    let start = requested.unwrap_or_else(|| model.default_start());
    if start == u64::MAX {
        return Err(CliError::Usage(
            "growth is too steep for an automatic start time; pass --S explicitly".to_string(),
        ));
    }
    Ok(start)
}

fn check_loglog(out: &OutputArgs) -> Result<(), CliError> {
    if out.loglog && out.format == Format::Json {
        return Err(CliError::Usage(
            "--loglog only applies to --format csv".to_string(),
        ));
    }
    Ok(())
}

fn write_distribution(
    out: &OutputArgs,
    dist: DegreeDistribution,
    eps: Option<f64>,
    seed: Option<u64>,
    reps: Option<u32>,
) -> Result<(), CliError> {
    let w = files::open_output(out.output.as_deref())?;
    match out.format {
        Format::Csv => {
            files::write_distribution_csv(w, &dist.entries, out.loglog).map_err(|source| {
                CliError::Io {
                    path: "<output>".to_string(),
                    source,
                }
            })
        }
        Format::Json => {
            let segments = segment_plan(&dist.model, dist.start, dist.t)?.segments;
            files::write_json(w, &DistributionFile::new(dist, segments, eps, seed, reps))
        }
    }
}

fn compute(args: ComputeArgs) -> Result<(), CliError> {
    check_loglog(&args.out)?;
    let model = build_model(&args.model)?;
    let start = start_for(&model, args.start)?;
    let dist = degree_distribution(&model, start, args.t, args.eps)?;
    write_distribution(&args.out, dist, Some(args.eps), None, None)
}

fn simulate(args: SimulateArgs) -> Result<(), CliError> {
    check_loglog(&args.out)?;
    let model = build_model(&args.model)?;
    let start = start_for(&model, args.start)?;
    let runs = simulate_batch(&model, args.t, args.seed, args.reps)?;
    let dist = empirical_distribution(&runs, start)?;
    write_distribution(&args.out, dist, None, Some(args.seed), Some(args.reps))
}

/// Degrees spanned by the positive entries — the only defensible default
/// window when a bare CSV arrives without any model metadata.
fn data_extent(dist: &DegreeDistribution) -> Result<(u64, u64), degflow_core::Error> {
    let mut positive = dist
        .entries
        .iter()
        .filter(|&&(_, p)| p > 0.0)
        .map(|&(k, _)| k);
    let lo = positive
        .next()
        .ok_or(degflow_core::Error::EmptyDistribution)?;
    Ok((lo, positive.next_back().unwrap_or(lo)))
}

fn fit(args: FitArgs) -> Result<(), CliError> {
    let mut rows: Vec<FitRow> = Vec::new();
    let mut pairs: Vec<(u64, FitResult)> = Vec::new();
    for path in &args.input {
        let parsed = files::read_distribution(path)?;
        let (default_lo, default_hi) = if parsed.has_metadata {
            tail_fit_range(&parsed.dist)?
        } else {
            data_extent(&parsed.dist)?
        };
        let lo = args.k_min.unwrap_or(default_lo);
        let hi = args.k_max.unwrap_or(default_hi);
        let fit = fit_power_law(&parsed.dist, lo, hi)?;
        if parsed.has_metadata {
            pairs.push((parsed.dist.t, fit));
        }
        rows.push(FitRow::from_fit(
            fit,
            Some(path.display().to_string()),
            parsed.has_metadata.then_some(parsed.dist.model.m),
            parsed.has_metadata.then_some(parsed.dist.t),
        ));
    }

    let w = files::open_output(args.output.as_deref())?;
    if rows.len() == 1 {
        let row = rows.remove(0);
        files::write_json(
            w,
            &FitFile {
                engine_version: ENGINE_VERSION.to_string(),
                input: row.input.unwrap_or_default(),
                gamma: row.gamma,
                c: row.c,
                k_min: row.k_min,
                k_max: row.k_max,
                residual_rms: row.residual_rms,
                n_points: row.n_points,
            },
        )
    } else {
        let z = drift_exponent(&pairs)?;
        files::write_json(
            w,
            &FitTableFile {
                engine_version: ENGINE_VERSION.to_string(),
                rows,
                z,
            },
        )
    }
}

/// The amplitude-drift exponent, when enough distinct horizons are present.
fn drift_exponent(pairs: &[(u64, FitResult)]) -> Result<Option<f64>, CliError> {
    let mut horizons: Vec<u64> = pairs.iter().map(|&(t, _)| t).collect();
    horizons.sort_unstable();
    horizons.dedup();
    if horizons.len() < 2 {
        return Ok(None);
    }
    Ok(Some(estimate_nonstationary_exponent(pairs)?))
}

fn compare(args: CompareArgs) -> Result<(), CliError> {
    let model = build_model(&args.model)?;
    let start = start_for(&model, args.start)?;
    let evolved = degree_distribution(&model, start, args.t, args.eps)?;
    let runs = simulate_batch(&model, args.t, args.seed, args.reps)?;
    let per_rep = runs
        .iter()
        .map(|run| empirical_distribution(std::slice::from_ref(run), start))
        .collect::<Result<Vec<_>, _>>()?;
    let pooled = empirical_distribution(&runs, start)?;

    let mut rows = Vec::new();
    let mut worst_sigma: Option<f64> = None;
    for k in 1..=args.max_k {
        let exact = evolved.probability(k);
        let simulated = pooled.probability(k);
        if exact == 0.0 && simulated == 0.0 {
            continue;
        }
        let std_error = if args.reps > 1 {
            let values: Vec<f64> = per_rep.iter().map(|d| d.probability(k)).collect();
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            let var =
                values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (values.len() - 1) as f64;
            (var / values.len() as f64).sqrt()
        } else {
            0.0
        };
        let abs_diff = (exact - simulated).abs();
        let sigma = (std_error > 0.0).then(|| abs_diff / std_error);
        if let Some(s) = sigma {
            worst_sigma = Some(worst_sigma.map_or(s, |w| w.max(s)));
        }
        rows.push(CompareRow {
            k,
            evolved: exact,
            simulated,
            std_error,
            abs_diff,
            rel_diff: (exact > 0.0).then(|| abs_diff / exact),
            sigma,
            analytic: (model.family == Family::Constant && k >= model.m)
                .then(|| master_equation_pk(model.m, k)),
        });
    }

    let report = CompareFile {
        engine_version: ENGINE_VERSION.to_string(),
        model,
        t: args.t,
        start,
        eps: args.eps,
        seed: args.seed,
        reps: args.reps,
        max_k: args.max_k,
        rows,
        worst_sigma,
    };
    files::write_json(files::open_output(args.output.as_deref())?, &report)
}

fn segments_table(args: SegmentsArgs) -> Result<(), CliError> {
    let model = build_model(&args.model)?;
    let start = start_for(&model, args.start)?;
    let plan = segment_plan(&model, start, args.t)?;
    let mut w = files::open_output(args.output.as_deref())?;
    match args.format {
        Format::Csv => {
            let io_err = |source| CliError::Io {
                path: "<output>".to_string(),
                source,
            };
            writeln!(w, "start,end,initial_degree").map_err(io_err)?;
            for seg in &plan.segments {
                writeln!(w, "{},{},{}", seg.start, seg.end, seg.initial_degree).map_err(io_err)?;
            }
            w.flush().map_err(io_err)
        }
        Format::Json => files::write_json(
            w,
            &SegmentsFile {
                engine_version: ENGINE_VERSION.to_string(),
                model,
                t: args.t,
                start,
                segments: plan.segments,
            },
        ),
    }
}

fn fits_table(args: FitsArgs) -> Result<(), CliError> {
    let model = build_model(&args.model)?;
    let start = start_for(&model, args.start)?;
    let mut rows = Vec::new();
    let mut pairs = Vec::new();
    for &t in &args.t {
        let dist = degree_distribution(&model, start, t, args.eps)?;
        let (lo, hi) = tail_fit_range(&dist)?;
        let fit = fit_power_law(&dist, lo, hi)?;
        pairs.push((t, fit));
        rows.push(FitRow::from_fit(fit, None, Some(model.m), Some(t)));
    }
    let mut w = files::open_output(args.output.as_deref())?;
    match args.format {
        Format::Csv => {
            // The drift exponent is a scalar over the whole table, so the
            // row-oriented CSV omits it; ask for JSON to get z.
            let io_err = |source| CliError::Io {
                path: "<output>".to_string(),
                source,
            };
            writeln!(w, "m,t,gamma,c").map_err(io_err)?;
            for row in &rows {
                writeln!(
                    w,
                    "{},{},{:.6},{:.6}",
                    row.m.unwrap_or(model.m),
                    row.t.unwrap_or_default(),
                    row.gamma,
                    row.c
                )
                .map_err(io_err)?;
            }
            w.flush().map_err(io_err)
        }
        Format::Json => {
            let z = drift_exponent(&pairs)?;
            files::write_json(
                w,
                &FitTableFile {
                    engine_version: ENGINE_VERSION.to_string(),
                    rows,
                    z,
                },
            )
        }
    }
}
