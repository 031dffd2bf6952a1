use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use sphertest_core::asymptotics::{h_of_theta, lr_decay_probe};
use sphertest_core::classical::{TestName, TestReport};
use sphertest_core::io::{parse_eigenvalue_file, write_spk1};
use sphertest_core::power::{
    classical_power, envelope, exact_lr_statistic, lr_power_curve, mc_exact_critical, quantile_bootstrap_se,
    run_classical, simulate_functional, wap_power_curve, Functional, PowerCurve,
};
use sphertest_core::rng::derive_seed;
use sphertest_core::sampler::sample_eigs_with;
use sphertest_core::{EigenSample, LrKind, Sampler, SpikedModel};

use crate::config::{Format, RunConfig, Scale};
use crate::error::CliError;
use crate::output::{sink, write_csv, write_json, Provenance};

pub struct Ctx {
    pub cfg: RunConfig,
    pub prov: Provenance,
}

impl Ctx {
    fn format(&self, default: Format) -> Result<Format, CliError> {
        match self.cfg.format.unwrap_or(default) {
            Format::Spk1 => Err(CliError::Config("spk1 output is only available for simulate".into())),
            f => Ok(f),
        }
    }

    fn out(&self) -> Option<&Path> {
        self.cfg.out.as_deref()
    }

    fn by_scale<T>(&self, desk: T, paper: T) -> T {
        match self.cfg.scale() {
            Scale::Desk => desk,
            Scale::Paper => paper,
        }
    }
}

#[derive(Serialize)]
struct EnvelopeRow {
    theta: f64,
    h_over_sqrt_c: f64,
    envelope_lambda: f64,
    envelope_mu: f64,
}

pub fn envelope_cmd(ctx: &Ctx) -> Result<(), CliError> {
    let alpha = ctx.cfg.alpha()?;
    let grid = ctx.cfg.grid_or("6:301")?;
    let rows = grid
        .values()
        .into_iter()
        .map(|t| {
            Ok(EnvelopeRow {
                theta: t,
                h_over_sqrt_c: (-(-t * t).exp_m1()).sqrt(),
                envelope_lambda: envelope(t, alpha, LrKind::Lambda)?,
                envelope_mu: envelope(t, alpha, LrKind::Mu)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    match ctx.format(Format::Csv)? {
        Format::Json => write_json(ctx.out(), &ctx.prov.wrap(&json!({ "alpha": alpha, "rows": rows }))?),
        _ => write_csv(
            ctx.out(),
            &ctx.prov.csv_header(&[("alpha", alpha.to_string())]),
            &["theta", "h_over_sqrt_c", "envelope_lambda", "envelope_mu"],
            rows.iter()
                .map(|r| vec![r.theta, r.h_over_sqrt_c, r.envelope_lambda, r.envelope_mu]),
        ),
    }
}

pub fn power_figures_cmd(ctx: &Ctx) -> Result<(), CliError> {
    let alpha = ctx.cfg.alpha()?;
    let c = ctx.cfg.ratio()?;
    if c >= 1.0 {
        return Err(CliError::Config(format!("the corrected LR curve needs c < 1, got {c}")));
    }
    let curve = ctx.cfg.curve_or("6:49")?;
    let grid = ctx.cfg.grid_or(ctx.by_scale("6:200", "6:1000"))?;
    let draws = ctx.cfg.draws.unwrap_or(ctx.by_scale(20_000, 500_000));
    let seed = ctx.cfg.seed();
    let dir = ctx
        .out()
        .ok_or_else(|| CliError::Config("power-figures needs --out DIR".into()))?;
    std::fs::create_dir_all(dir)?;
    let thetas = curve.values();

    let closed = |label: &str, f: &dyn Fn(f64) -> sphertest_core::Result<f64>| {
        PowerCurve::from_fn(&thetas, label, alpha, None, f)
    };
    let env_l = closed("envelope_lambda", &|t| envelope(t, alpha, LrKind::Lambda))?;
    let env_m = closed("envelope_mu", &|t| envelope(t, alpha, LrKind::Mu))?;
    let john = closed("john", &|t| classical_power(t, alpha, TestName::John, None))?;
    let lw = closed("lw", &|t| classical_power(t, alpha, TestName::LedoitWolf, None))?;
    let mut clr = closed("clr", &|t| classical_power(t, alpha, TestName::Clr, Some(c)))?;
    clr.c = Some(c);
    let lr_l = lr_power_curve(LrKind::Lambda, &thetas, alpha, grid, draws, derive_seed(seed, 1))?;
    let lr_m = lr_power_curve(LrKind::Mu, &thetas, alpha, grid, draws, derive_seed(seed, 2))?;
    let wap_l = wap_power_curve(LrKind::Lambda, &thetas, alpha, grid, draws, derive_seed(seed, 3))?;
    let wap_m = wap_power_curve(LrKind::Mu, &thetas, alpha, grid, draws, derive_seed(seed, 4))?;

    let extra = [
        ("alpha", alpha.to_string()),
        ("c", c.to_string()),
        ("grid", grid.to_string()),
        ("draws", draws.to_string()),
    ];
    let header = ctx.prov.csv_header(&extra);
    if ctx.format(Format::Csv)? == Format::Json {
        let curves = [&env_l, &env_m, &lr_l, &lr_m, &wap_l, &wap_m, &john, &lw, &clr];
        let payload = json!({ "alpha": alpha, "c": c, "grid": grid.to_string(), "draws": draws, "curves": curves });
        return write_json(Some(&dir.join("power_figures.json")), &ctx.prov.wrap(&payload)?);
    }
    let table = |name: &str, cols: &[&str], curves: &[&PowerCurve]| {
        let rows = (0..thetas.len()).map(|i| {
            let t = thetas[i];
            let mut row = vec![t, (-(-t * t).exp_m1()).sqrt()];
            row.extend(curves.iter().map(|cv| cv.values[i]));
            row
        });
        let mut columns = vec!["theta", "h_over_sqrt_c"];
        columns.extend_from_slice(cols);
        write_csv(Some(&dir.join(name)), &header, &columns, rows)
    };
    table("fig3_lambda.csv", &["envelope", "lr", "wap"], &[&env_l, &lr_l, &wap_l])?;
    table("fig3_mu.csv", &["envelope", "lr", "wap"], &[&env_m, &lr_m, &wap_m])?;
    table("fig4_john.csv", &["envelope_mu", "john"], &[&env_m, &john])?;
    table("fig5_lw_clr.csv", &["envelope_lambda", "lw", "clr"], &[&env_l, &lw, &clr])?;
    Ok(())
}

/// One line of the `test` stream.
#[derive(Serialize)]
#[serde(untagged)]
enum TestLine {
    Report {
        sample: u64,
        #[serde(flatten)]
        report: TestReport,
    },
    Failed {
        sample: u64,
        test: TestName,
        error: String,
    },
}

pub fn test_cmd(ctx: &Ctx) -> Result<(), CliError> {
    let alpha = ctx.cfg.alpha()?;
    let seed = ctx.cfg.seed();
    let default_tests = [
        TestName::John,
        TestName::LedoitWolf,
        TestName::Clr,
        TestName::TracyWidomLambda,
        TestName::TracyWidomMu,
    ];
    let tests = ctx.cfg.tests(&default_tests)?;
    let samples = load_samples(ctx)?;
    let (p, n) = (samples[0].p, samples[0].n);

    // exact likelihood ratio tests are calibrated once for the whole batch
    let kind = ctx.cfg.kind.unwrap_or(LrKind::Mu);
    let grid = ctx.cfg.grid_or("6:25")?;
    let crit_reps = ctx.cfg.crit_reps.unwrap_or(ctx.by_scale(200, 2000));
    let mut critical = Vec::new();
    for (k, (test, functional)) in [(TestName::LrSup, Functional::Sup), (TestName::Wap, Functional::Wap)]
        .into_iter()
        .enumerate()
    {
        if tests.contains(&test) {
            let mc = mc_exact_critical(kind, functional, p, n, grid, crit_reps, alpha, derive_seed(seed, 10 + k as u64), 1.0)?;
            critical.push((test, functional, mc.critical_value));
        }
    }

    let mut lines = Vec::new();
    for (i, eigs) in samples.iter().enumerate() {
        for &test in &tests {
            let result = match critical.iter().find(|(t, _, _)| *t == test) {
                Some(&(_, functional, crit)) => exact_lr_statistic(eigs, kind, functional, &grid.values())
                    .map(|stat| TestReport::new(test, stat, crit, alpha, p, n).with_reps(crit_reps)),
                None => run_classical(test, eigs, alpha),
            };
            lines.push(match result {
                Ok(report) => TestLine::Report {
                    sample: i as u64,
                    report: report.with_seed(seed),
                },
                Err(e) => TestLine::Failed {
                    sample: i as u64,
                    test,
                    error: e.to_string(),
                },
            });
        }
    }

    let mut w = sink(ctx.out())?;
    match ctx.format(Format::Json)? {
        Format::Json => {
            writeln!(w, "{}", json!({ "provenance": ctx.prov }))?;
            for line in &lines {
                writeln!(w, "{}", serde_json::to_string(line)?)?;
            }
        }
        _ => {
            w.write_all(ctx.prov.csv_header(&[]).as_bytes())?;
            writeln!(w, "sample,test,stat,crit,alpha,reject,p,n,error")?;
            for line in &lines {
                match line {
                    TestLine::Report { sample, report: r } => writeln!(
                        w,
                        "{sample},{},{},{},{},{},{},{},",
                        r.test, r.stat, r.crit, r.alpha, r.reject, r.p, r.n
                    )?,
                    TestLine::Failed { sample, test, error } => {
                        writeln!(w, "{sample},{test},,,{alpha},,{p},{n},\"{}\"", error.replace('"', "'"))?
                    }
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Eigenvalue samples from `--input`, or simulated from the model flags.
fn load_samples(ctx: &Ctx) -> Result<Vec<EigenSample>, CliError> {
    let cfg = &ctx.cfg;
    if let Some(path) = &cfg.input {
        let bytes = std::fs::read(path)?;
        let records = parse_eigenvalue_file(&bytes)?;
        let n = cfg
            .n
            .ok_or_else(|| CliError::Config("eigenvalue input needs --n".into()))?;
        let samples = records
            .into_iter()
            .map(|rec| {
                let p = cfg.p.unwrap_or(rec.len());
                Ok(EigenSample::from_eigenvalues(rec, p, n)?)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        if samples.is_empty() {
            return Err(CliError::Config(format!("{} holds no eigenvalue records", path.display())));
        }
        return Ok(samples);
    }
    let model = model(cfg)?;
    let reps = cfg.reps.unwrap_or(1);
    let sampler = cfg.sampler.unwrap_or(Sampler::Bidiagonal);
    Ok((0..reps)
        .map(|r| sample_eigs_with(&model, r, sampler))
        .collect::<sphertest_core::Result<Vec<_>>>()?)
}

fn model(cfg: &RunConfig) -> Result<SpikedModel, CliError> {
    let (p, n) = cfg.dims()?;
    let c = p as f64 / n as f64;
    // an explicit h may be supercritical, where theta is undefined
    let h = match (cfg.h, cfg.theta) {
        (Some(_), Some(_)) => return Err(CliError::Config("give --theta or --h, not both".into())),
        (Some(h), None) => h,
        (None, Some(t)) => h_of_theta(t, c)?,
        (None, None) => 0.0,
    };
    let mut m = SpikedModel::new(p, n, h)?.with_seed(cfg.seed());
    if let Some(s2) = cfg.sigma2 {
        m = m.with_sigma2(s2)?;
    }
    Ok(m)
}

#[derive(Serialize)]
struct McPayload {
    kind: LrKind,
    functional: Functional,
    p: usize,
    n: usize,
    #[serde(rename = "M")]
    m: f64,
    grid_points: usize,
    alpha: f64,
    critical_value: f64,
    standard_error: f64,
    reps: u64,
    seed: u64,
    sigma2: f64,
    failures: u64,
}

pub fn mc_critical_cmd(ctx: &Ctx) -> Result<(), CliError> {
    let cfg = &ctx.cfg;
    let alpha = cfg.alpha()?;
    let (p, n) = cfg.dims()?;
    let kind = cfg.kind.unwrap_or(LrKind::Mu);
    let functional = cfg.functional.unwrap_or(Functional::Sup);
    let grid = cfg.grid_or(ctx.by_scale("6:25", "6:1000"))?;
    let reps = cfg.reps.unwrap_or(ctx.by_scale(500, 10_000));
    let sigma2 = cfg.sigma2.unwrap_or(1.0);
    let mc = mc_exact_critical(kind, functional, p, n, grid, reps, alpha, cfg.seed(), sigma2)?;
    let payload = McPayload {
        kind,
        functional,
        p,
        n,
        m: grid.max,
        grid_points: grid.points,
        alpha,
        critical_value: mc.critical_value,
        standard_error: mc.standard_error,
        reps,
        seed: mc.seed,
        sigma2,
        failures: mc.failures,
    };
    match ctx.format(Format::Json)? {
        Format::Json => write_json(ctx.out(), &ctx.prov.wrap(&payload)?),
        _ => {
            let extra = [
                ("kind", kind.to_string()),
                ("p", p.to_string()),
                ("n", n.to_string()),
                ("grid", grid.to_string()),
                ("alpha", alpha.to_string()),
                ("critical_value", mc.critical_value.to_string()),
                ("failures", mc.failures.to_string()),
            ];
            write_csv(
                ctx.out(),
                &ctx.prov.csv_header(&extra),
                &["sample_index", "value"],
                mc.samples.iter().enumerate().map(|(i, v)| vec![i as f64, *v]),
            )
        }
    }
}

pub fn sup_sim_cmd(ctx: &Ctx) -> Result<(), CliError> {
    let cfg = &ctx.cfg;
    let alpha = cfg.alpha()?;
    let kind = cfg.kind.unwrap_or(LrKind::Lambda);
    let functional = cfg.functional.unwrap_or(Functional::Sup);
    let grid = cfg.grid_or(ctx.by_scale("6:500", "6:1000"))?;
    let draws = cfg.draws.unwrap_or(ctx.by_scale(100_000, 500_000));
    // theta does not need c; h is converted with the configured ratio
    let shift = cfg.theta_opt(cfg.ratio()?)?;
    let d = simulate_functional(kind, functional, grid, draws, cfg.seed(), shift)?;
    let level = 1.0 - alpha;
    let q = d.quantile(level)?;
    let se = quantile_bootstrap_se(&d.samples, level, 200, derive_seed(cfg.seed(), 0xB007))?;
    match ctx.format(Format::Csv)? {
        Format::Json => {
            let payload = json!({
                "kind": kind,
                "functional": functional,
                "grid": grid.to_string(),
                "draws": draws,
                "shift_theta1": shift,
                "level": level,
                "quantile": q,
                "standard_error": se,
            });
            write_json(ctx.out(), &ctx.prov.wrap(&payload)?)
        }
        _ => {
            let extra = [
                ("kind", kind.to_string()),
                ("grid", grid.to_string()),
                ("draws", draws.to_string()),
                ("level", level.to_string()),
                ("quantile", q.to_string()),
                ("standard_error", se.to_string()),
            ];
            write_csv(
                ctx.out(),
                &ctx.prov.csv_header(&extra),
                &["sample_index", "value"],
                d.samples.iter().enumerate().map(|(i, v)| vec![i as f64, *v]),
            )
        }
    }
}

pub fn decay_probe_cmd(ctx: &Ctx) -> Result<(), CliError> {
    let cfg = &ctx.cfg;
    let c = if cfg.p.is_some() && cfg.n.is_some() { cfg.ratio()? } else { cfg.c.unwrap_or(1.0) };
    let h = cfg.h.unwrap_or(2.0);
    if cfg.theta.is_some() {
        return Err(CliError::Config("the decay probe is supercritical; give --h, not --theta".into()));
    }
    let n_list = cfg.n_list.clone().unwrap_or_else(|| vec![50, 100, 200]);
    let reps = cfg.reps.unwrap_or(ctx.by_scale(50, 500));
    let probe = lr_decay_probe(c, h, &n_list, reps, cfg.seed())?;
    match ctx.format(Format::Csv)? {
        Format::Json => write_json(ctx.out(), &ctx.prov.wrap(&probe)?),
        _ => {
            let extra = [
                ("c", c.to_string()),
                ("h", h.to_string()),
                ("reps", reps.to_string()),
                ("slope", probe.slope.to_string()),
            ];
            write_csv(
                ctx.out(),
                &ctx.prov.csv_header(&extra),
                &["n", "p", "median_log_lr"],
                probe.rows.iter().map(|r| vec![r.n as f64, r.p as f64, r.median]),
            )
        }
    }
}

pub fn simulate_cmd(ctx: &Ctx) -> Result<(), CliError> {
    let samples = load_samples(ctx)?;
    let mut w = sink(ctx.out())?;
    match ctx.cfg.format.unwrap_or(Format::Spk1) {
        Format::Spk1 => {
            let records: Vec<Vec<f64>> = samples.into_iter().map(|e| e.lambda).collect();
            write_spk1(&mut w, &records)?;
        }
        Format::Csv => {
            w.write_all(ctx.prov.csv_header(&[]).as_bytes())?;
            writeln!(w, "sample_index,value")?;
            for (i, e) in samples.iter().enumerate() {
                for v in &e.lambda {
                    writeln!(w, "{i},{v}")?;
                }
            }
        }
        Format::Json => {
            let payload: Value = json!({ "samples": samples });
            serde_json::to_writer(&mut w, &ctx.prov.wrap(&payload)?)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}
