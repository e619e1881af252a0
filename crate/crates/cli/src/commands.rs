use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use saxlab::correlation::{self, Correlogram};
use saxlab::entropy::{self, PeCell, PermutationSpec};
use saxlab::eval::analysis::MeanMetrics;
use saxlab::eval::classify::default_subwindow;
use saxlab::eval::{self, AnalysisOptions, BopConfig, Dataset, SummaryRow};
use saxlab::metrics::{self, MetricsRecord};
use saxlab::series::Binning;
use saxlab::symbolic::{self, SaxConfig, SaxWord, SymbolicResult};
use saxlab::{Error, Series};

use crate::args::*;
use crate::failure::{CliResult, Failure};
use crate::output::{self, num, opt, Table};
use crate::synth;

pub fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Symbolize(a) => symbolize(a),
        Command::Metrics(a) => metrics(a),
        Command::Pe(a) => pe(a),
        Command::Acf(a) => acf(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Regress(a) => regress(a),
        Command::Sweep(a) => sweep(a),
        Command::Synth(a) => {
            let text = synth::generate(&a)?;
            output::write(a.output.as_deref(), text.as_bytes())
        }
    }
}

fn load(path: &Path) -> CliResult<Dataset> {
    Ok(eval::load_dataset(path)?)
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

fn emit<T: Serialize>(out: &OutputArgs, report: &T, config: &Value, table: impl FnOnce() -> Table) -> CliResult<()> {
    let bytes = match out.format {
        Format::Json => output::json_bytes(report)?,
        Format::Csv => output::csv_bytes(config, &table())?,
    };
    output::write(out.output.as_deref(), &bytes)
}

fn symbolize_all(ds: &Dataset, cfg: SaxConfig) -> CliResult<Vec<SymbolicResult>> {
    let b = symbolic::gaussian_breakpoints(cfg.a)?;
    let results = ds
        .samples()
        .par_iter()
        .map(|s| symbolic::symbolize(s, cfg.w, &b))
        .collect::<saxlab::Result<Vec<_>>>()?;
    Ok(results)
}

fn sax_config_json(ds: &Dataset, input: &Path, cfg: SaxConfig) -> Value {
    json!({
        "input": display(input),
        "dataset": ds.name(),
        "samples": ds.len(),
        "n": cfg.n,
        "w": cfg.w,
        "a": cfg.a,
    })
}

fn with(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

#[derive(Serialize)]
struct WordRow<'a> {
    index: usize,
    label: &'a str,
    word: &'a SaxWord,
    paa: &'a [f64],
}

fn symbolize(args: SymbolizeArgs) -> CliResult<()> {
    let ds = load(&args.input)?;
    let cfg = eval::resolve_config(&ds, args.sax.w, args.sax.a)?;
    let results = symbolize_all(&ds, cfg)?;
    let b = symbolic::gaussian_breakpoints(cfg.a)?;
    let config = with(
        sax_config_json(&ds, &args.input, cfg),
        json!({ "command": "symbolize", "breakpoints": b.cuts() }),
    );
    let rows: Vec<WordRow> = results
        .iter()
        .zip(ds.labels())
        .enumerate()
        .map(|(index, (r, label))| WordRow { index, label, word: &r.word, paa: r.paa.means() })
        .collect();
    let report = json!({ "config": config, "samples": rows });
    emit(&args.out, &report, &config, || {
        let mut t = Table::new(vec!["index", "label", "word"]);
        for r in &rows {
            t.push(vec![r.index.to_string(), r.label.to_string(), r.word.to_string()]);
        }
        t
    })
}

#[derive(Serialize)]
struct MetricsRow<'a> {
    index: usize,
    label: &'a str,
    sax: MetricsRecord,
    paa: MetricsRecord,
}

fn metrics(args: MetricsArgs) -> CliResult<()> {
    let ds = load(&args.input)?;
    let cfg = eval::resolve_config(&ds, args.sax.w, args.sax.a)?;
    let binning = Binning::from(args.binning);
    let results = symbolize_all(&ds, cfg)?;
    let records = ds
        .samples()
        .par_iter()
        .zip(results.par_iter())
        .map(|(s, r)| {
            let sax = metrics::iec_for_representation(s, &r.sax_reconstruction, cfg.a, binning)?;
            let paa = metrics::iec_for_representation(s, &r.paa_reconstruction, cfg.a, binning)?;
            Ok((sax, paa))
        })
        .collect::<saxlab::Result<Vec<_>>>()?;
    let rows: Vec<MetricsRow> = records
        .iter()
        .zip(ds.labels())
        .enumerate()
        .map(|(index, (&(sax, paa), label))| MetricsRow { index, label, sax, paa })
        .collect();
    let config = with(
        sax_config_json(&ds, &args.input, cfg),
        json!({ "command": "metrics", "binning": binning, "kl_smoothing": "add-one" }),
    );
    let report = json!({
        "config": config,
        "samples": rows,
        "mean": {
            "sax": MeanMetrics::of(records.iter().map(|r| &r.0)),
            "paa": MeanMetrics::of(records.iter().map(|r| &r.1)),
        },
    });
    emit(&args.out, &report, &config, || {
        let mut t = Table::new(vec![
            "index", "label", "representation", "info_loss", "kl", "info_loss_std", "kl_std", "iec",
        ]);
        for r in &rows {
            for (name, m) in [("sax", r.sax), ("paa", r.paa)] {
                t.push(vec![
                    r.index.to_string(),
                    r.label.to_string(),
                    name.to_string(),
                    num(m.info_loss),
                    num(m.kl),
                    num(m.info_loss_std),
                    num(m.kl_std),
                    num(m.iec),
                ]);
            }
        }
        t
    })
}

/// Sorted, deduplicated representations; rejects any not in `allowed`.
fn representations(on: &[Repr], allowed: &[Repr]) -> CliResult<Vec<Repr>> {
    let mut reprs = on.to_vec();
    reprs.sort();
    reprs.dedup();
    if let Some(bad) = reprs.iter().find(|r| !allowed.contains(r)) {
        return Err(Failure::usage(format!("representation '{}' is not supported here", bad.name())));
    }
    Ok(reprs)
}

/// SAX parameters when any non-raw representation is requested.
fn optional_config(ds: &Dataset, sax: &SaxArgs, reprs: &[Repr]) -> CliResult<Option<SaxConfig>> {
    if reprs.iter().all(|&r| r == Repr::Raw) {
        if sax.w.is_some() || sax.a.is_some() {
            return Err(Failure::usage("--w and --a only apply with --on sax or --on paa"));
        }
        return Ok(None);
    }
    Ok(Some(eval::resolve_config(ds, sax.w, sax.a)?))
}

#[derive(Serialize)]
struct PeRow<'a> {
    index: usize,
    label: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    raw: Option<Vec<PeCell>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sax: Option<Vec<PeCell>>,
}

fn pe(args: PeArgs) -> CliResult<()> {
    let reprs = representations(&args.on, &[Repr::Raw, Repr::Sax])?;
    let (orders, delays) = (&args.orders.0, &args.delays.0);
    for &o in orders {
        for &d in delays {
            PermutationSpec::new(o, d)?;
        }
    }
    let ds = load(&args.input)?;
    let cfg = optional_config(&ds, &args.sax, &reprs)?;
    let words = match cfg {
        Some(cfg) => Some(symbolize_all(&ds, cfg)?),
        None => None,
    };

    let rows: Vec<PeRow> = ds
        .samples()
        .par_iter()
        .zip(ds.labels())
        .enumerate()
        .map(|(index, (s, label))| PeRow {
            index,
            label,
            raw: reprs.contains(&Repr::Raw).then(|| entropy::pe_profile(s, orders, delays)),
            sax: words
                .as_ref()
                .map(|w| entropy::pe_profile_sax(&w[index].word, orders, delays)),
        })
        .collect();

    let mut config = json!({
        "command": "pe",
        "input": display(&args.input),
        "dataset": ds.name(),
        "samples": ds.len(),
        "n": ds.series_length(),
        "orders": orders,
        "delays": delays,
        "representations": reprs.iter().map(|r| r.name()).collect::<Vec<_>>(),
    });
    if let Some(cfg) = cfg {
        config = with(config, json!({ "w": cfg.w, "a": cfg.a }));
    }
    let report = json!({ "config": config, "samples": rows });
    emit(&args.out, &report, &config, || {
        let mut t = Table::new(vec![
            "index", "label", "representation", "order", "delay", "status", "value", "entropy", "windows",
        ]);
        for r in &rows {
            for (name, cells) in [("raw", &r.raw), ("sax", &r.sax)] {
                for c in cells.iter().flatten() {
                    let (status, value, ent, windows) = match c.point {
                        Some(p) => (
                            if p.reliable { "reliable" } else { "unreliable" },
                            num(p.value),
                            num(p.entropy),
                            p.windows.to_string(),
                        ),
                        None => ("absent", String::new(), String::new(), String::new()),
                    };
                    t.push(vec![
                        r.index.to_string(),
                        r.label.to_string(),
                        name.to_string(),
                        c.order.to_string(),
                        c.delay.to_string(),
                        status.to_string(),
                        value,
                        ent,
                        windows,
                    ]);
                }
            }
        }
        t
    })
}

struct AcfRow<'a> {
    index: usize,
    label: &'a str,
    correlograms: Vec<(&'static str, Option<Correlogram>)>,
}

fn acf(args: AcfArgs) -> CliResult<()> {
    let reprs = representations(&args.on, &[Repr::Raw, Repr::Sax, Repr::Paa])?;
    let ds = load(&args.input)?;
    let n = ds.series_length();
    let max_lag = args.max_lag.unwrap_or_else(|| correlation::default_max_lag(n));
    if max_lag == 0 || max_lag >= n {
        return Err(Failure::usage(format!(
            "--max-lag must be in [1, {}) for series of length {n}",
            n
        )));
    }
    let cfg = optional_config(&ds, &args.sax, &reprs)?;
    let words = match cfg {
        Some(cfg) => Some(symbolize_all(&ds, cfg)?),
        None => None,
    };

    let rows = ds
        .samples()
        .par_iter()
        .zip(ds.labels())
        .enumerate()
        .map(|(index, (s, label))| {
            let correlograms = reprs
                .iter()
                .map(|&r| {
                    let series: &Series = match (r, &words) {
                        (Repr::Sax, Some(w)) => &w[index].sax_reconstruction,
                        (Repr::Paa, Some(w)) => &w[index].paa_reconstruction,
                        _ => s,
                    };
                    match correlation::correlogram(series, max_lag, args.include_lag0) {
                        Ok(c) => Ok((r.name(), Some(c))),
                        Err(Error::DegenerateSeries) => Ok((r.name(), None)),
                        Err(e) => Err(e),
                    }
                })
                .collect::<saxlab::Result<Vec<_>>>()?;
            Ok(AcfRow { index, label, correlograms })
        })
        .collect::<saxlab::Result<Vec<_>>>()?;
    for r in &rows {
        for (name, c) in &r.correlograms {
            if c.is_none() {
                eprintln!("saxlab: warning: sample {} ({name}) is constant, no correlogram", r.index);
            }
        }
    }

    let mut config = json!({
        "command": "acf",
        "input": display(&args.input),
        "dataset": ds.name(),
        "samples": ds.len(),
        "n": n,
        "max_lag": max_lag,
        "include_lag0": args.include_lag0,
        "acf_estimator": "biased",
        "representations": reprs.iter().map(|r| r.name()).collect::<Vec<_>>(),
    });
    if let Some(cfg) = cfg {
        config = with(config, json!({ "w": cfg.w, "a": cfg.a }));
    }
    let samples: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut v = json!({ "index": r.index, "label": r.label });
            for (name, c) in &r.correlograms {
                v = with(v, json!({ *name: c }));
            }
            v
        })
        .collect();
    let report = json!({ "config": config, "samples": samples });
    emit(&args.out, &report, &config, || {
        let mut t = Table::new(vec![
            "index", "label", "representation", "lag", "acf", "pacf", "band", "abs_mean_acf",
        ]);
        for r in &rows {
            for (name, c) in &r.correlograms {
                let Some(c) = c else { continue };
                for (i, &lag) in c.lags.iter().enumerate() {
                    t.push(vec![
                        r.index.to_string(),
                        r.label.to_string(),
                        name.to_string(),
                        lag.to_string(),
                        num(c.acf[i]),
                        opt(c.pacf[i]),
                        num(c.band),
                        num(c.abs_mean_acf),
                    ]);
                }
            }
        }
        t
    })
}

/// Summary row for a report; error fields are absent without a test split.
#[derive(Serialize)]
struct EvalSummary {
    dataset: String,
    sax_iec: f64,
    paa_iec: f64,
    err_sax: Option<f64>,
    err_raw: Option<f64>,
    benchmark: bool,
}

fn evaluate(args: EvaluateArgs) -> CliResult<()> {
    if !args.test.is_empty() && args.test.len() != args.input.len() {
        return Err(Failure::usage(format!(
            "--test given {} times but --input {} times; pair them by position or omit --test",
            args.test.len(),
            args.input.len()
        )));
    }
    let options = AnalysisOptions {
        binning: args.binning.into(),
        max_lag: args.max_lag,
        include_lag0: args.include_lag0,
        pe_orders: args.orders.0.clone(),
        pe_delays: args.delays.0.clone(),
        subwindow: args.subwindow,
    };
    for &o in &options.pe_orders {
        for &d in &options.pe_delays {
            PermutationSpec::new(o, d)?;
        }
    }

    let mut reports = Vec::with_capacity(args.input.len());
    for (i, input) in args.input.iter().enumerate() {
        let ds = load(input)?;
        let test = args.test.get(i).map(|p| load(p)).transpose()?;
        let cfg = eval::resolve_config(&ds, args.sax.w, args.sax.a)?;
        reports.push(eval::analyze_dataset(&ds, cfg, &options, test.as_ref())?);
    }

    let summary: Vec<EvalSummary> = reports
        .iter()
        .map(|r| {
            let c = r.aggregates.classification.as_ref();
            EvalSummary {
                dataset: r.config.dataset.clone(),
                sax_iec: r.aggregates.sax.iec,
                paa_iec: r.aggregates.paa.iec,
                err_sax: c.map(|c| c.error_sax_bop),
                err_raw: c.map(|c| c.error_raw),
                benchmark: eval::known_config(&r.config.dataset).is_some(),
            }
        })
        .collect();
    let rows: Vec<SummaryRow> = reports.iter().filter_map(|r| r.summary_row()).collect();
    // Needs at least two usable points; anything less is simply not reported.
    let regression = eval::fit_error_ratio(&rows, true).ok();

    let config = json!({
        "command": "evaluate",
        "inputs": args.input.iter().map(|p| display(p)).collect::<Vec<_>>(),
        "tests": args.test.iter().map(|p| display(p)).collect::<Vec<_>>(),
        "datasets": reports.iter().map(|r| &r.config).collect::<Vec<_>>(),
    });
    let report = json!({
        "config": config,
        "datasets": reports,
        "summary": summary,
        "regression": regression,
    });
    emit(&args.out, &report, &config, || {
        let mut t = Table::new(vec!["dataset", "sax_iec", "paa_iec", "err_sax", "err_raw", "benchmark"]);
        for s in &summary {
            t.push(vec![
                s.dataset.clone(),
                num(s.sax_iec),
                num(s.paa_iec),
                opt(s.err_sax),
                opt(s.err_raw),
                s.benchmark.to_string(),
            ]);
        }
        t
    })
}

fn regress(args: RegressArgs) -> CliResult<()> {
    let rows = eval::load_summary_rows(&args.pairs)?;
    let fit = eval::fit_error_ratio(&rows, args.all_rows)?;
    let used: Vec<&str> = rows
        .iter()
        .filter(|r| (args.all_rows || r.benchmark) && r.error_ratio().is_some())
        .map(|r| r.dataset.as_str())
        .collect();
    let config = json!({
        "command": "regress",
        "pairs": display(&args.pairs),
        "all_rows": args.all_rows,
        "model": "error_ratio = b1*sax_iec + b2*sax_iec^2",
        "datasets": used,
    });
    let report = json!({ "config": config, "fit": fit });
    emit(&args.out, &report, &config, || {
        let mut t = Table::new(vec!["b1", "b2", "r_squared", "multiple_r", "ss_res", "points"]);
        t.push(vec![
            num(fit.b1),
            num(fit.b2),
            num(fit.r_squared),
            num(fit.multiple_r),
            num(fit.ss_res),
            fit.points.to_string(),
        ]);
        t
    })
}

#[derive(Serialize)]
struct SweepResult {
    w: usize,
    a: usize,
    subwindow: usize,
    error: f64,
    error_ratio: Option<f64>,
}

fn sweep(args: SweepArgs) -> CliResult<()> {
    let train = load(&args.input)?;
    let test = load(&args.test)?;
    let n = train.series_length();
    let raw_error = eval::nn1_euclidean(&train, &test)?;

    let mut configs = Vec::new();
    for &w in &args.w_grid.0 {
        for &a in &args.a_grid.0 {
            let subs = match &args.subwindow_grid {
                Some(g) => g.0.clone(),
                None => vec![default_subwindow(n, w)],
            };
            for sub in subs {
                if sub <= n {
                    if let Ok(c) = BopConfig::new(sub, w, a) {
                        configs.push(c);
                    }
                }
            }
        }
    }
    if configs.is_empty() {
        return Err(Failure::usage("no valid (w, a, subwindow) combination in the grid"));
    }
    let mut results = configs
        .iter()
        .map(|c| {
            let error = eval::nn1_bop(&train, &test, c)?;
            Ok(SweepResult {
                w: c.w,
                a: c.a,
                subwindow: c.subwindow,
                error,
                error_ratio: (raw_error > 0.0).then(|| error / raw_error),
            })
        })
        .collect::<saxlab::Result<Vec<_>>>()?;
    results.sort_by(|x, y| {
        x.error
            .total_cmp(&y.error)
            .then((x.w, x.a, x.subwindow).cmp(&(y.w, y.a, y.subwindow)))
    });

    let config = json!({
        "command": "sweep",
        "input": display(&args.input),
        "test": display(&args.test),
        "dataset": train.name(),
        "n": n,
        "w_grid": args.w_grid.0,
        "a_grid": args.a_grid.0,
        "subwindow_grid": args.subwindow_grid.as_ref().map(|g| &g.0),
        "evaluated": results.len(),
    });
    let report = json!({ "config": config, "error_raw": raw_error, "results": results });
    emit(&args.out, &report, &config, || {
        let mut t = Table::new(vec!["w", "a", "subwindow", "error", "error_ratio"]);
        for r in &results {
            t.push(vec![
                r.w.to_string(),
                r.a.to_string(),
                r.subwindow.to_string(),
                num(r.error),
                opt(r.error_ratio),
            ]);
        }
        t
    })
}
