//! `fchk`: command-line front end. Every subcommand is a thin wrapper
//! around the library; all computation is deterministic, so repeated runs
//! emit byte-identical output.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use feynman_checkers::asympt;
use feynman_checkers::closed_form::{self, Mu};
use feynman_checkers::dp;
use feynman_checkers::exact;
use feynman_checkers::loop_gas::{self, TorusLattice};
use feynman_checkers::output::{amplitude_table, format_float, push_amplitude_row, Cell, Table};
use feynman_checkers::params::LatticeParams;
use feynman_checkers::spectral;
use feynman_checkers::verify;

#[derive(Parser)]
#[command(
    name = "fchk",
    version,
    about = "Feynman-checkers amplitudes, identities and tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Dp,
    Exact,
    Explicit,
    Fourier,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Regime {
    Between,
    Airy,
    Outside,
    Simple,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Figure {
    Fig4,
    Fig8,
    Fig10,
    Fig12,
}

#[derive(Subcommand)]
enum Command {
    /// Amplitude and probability at one lattice site.
    Amplitude {
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long, default_value = "1")]
        eps: String,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long)]
        t: i64,
        #[arg(long, value_enum, default_value = "dp")]
        method: Method,
    },
    /// Full amplitude grid up to a time bound (schema ix,it,m,eps,a1,a2,P).
    Grid {
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long, default_value = "1")]
        eps: String,
        #[arg(long)]
        t_max: i64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Empirical vs limiting distribution of x/t, with moments.
    Distribution {
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long, default_value = "1")]
        eps: String,
        #[arg(long, default_value = "1000")]
        t: i64,
        #[arg(long, default_value = "201")]
        v_points: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run verification suites; exit code 1 on any failure.
    Verify {
        /// Suite name; all suites when omitted.
        #[arg(long)]
        suite: Option<String>,
        /// List available suites and exit.
        #[arg(long)]
        list: bool,
    },
    /// Asymptotic approximations vs the dynamic-programming value.
    Asympt {
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long, default_value = "1")]
        eps: String,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long)]
        t: i64,
        #[arg(long, value_enum, default_value = "between")]
        regime: Regime,
    },
    /// Lattice-step prescription for a target propagator accuracy, with
    /// an optional override run.
    Propagator {
        #[arg(long)]
        m: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        eps_override: Option<f64>,
    },
    /// Antiparticle values b1, b2 (white sites) or the walk amplitude
    /// (black sites) from the momentum integral.
    Anti {
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long, default_value = "1")]
        eps: String,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
    },
    /// Loop-gas enumeration on a small torus.
    Loops {
        #[arg(long, default_value = "1")]
        t_size: i64,
        #[arg(long, default_value = "1")]
        m: f64,
        #[arg(long, default_value = "1")]
        eps: f64,
        #[arg(long, default_value = "0.1")]
        delta: f64,
        /// Also estimate the point propagator at this x (with --estimate-t).
        #[arg(long, allow_hyphen_values = true)]
        estimate_x: Option<i64>,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        estimate_t: i64,
    },
    /// Young-diagram parity counts against the amplitude identity.
    Young {
        #[arg(long, default_value = "8")]
        h_max: i64,
        #[arg(long, default_value = "8")]
        w_max: i64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Data behind the survey figures (distribution, approximation
    /// ratios, antiparticle values vs the Feynman propagator).
    ExportFigure {
        #[arg(long, value_enum)]
        figure: Figure,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Parses a decimal string into an exact rational (used by the
/// closed-form path) plus its float value.
fn parse_decimal(s: &str) -> Result<(i64, i64, f64), String> {
    let s = s.trim();
    let f: f64 = s.parse().map_err(|e| format!("bad decimal '{s}': {e}"))?;
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if frac_part.len() > 15 || int_part.trim_start_matches('-').len() > 15 {
        return Err(format!("decimal '{s}' has too many digits"));
    }
    let sign = if int_part.starts_with('-') { -1 } else { 1 };
    let digits = format!("{}{}", int_part.trim_start_matches('-'), frac_part);
    let num: i64 = if digits.is_empty() {
        0
    } else {
        digits
            .parse()
            .map_err(|e| format!("bad decimal '{s}': {e}"))?
    };
    Ok((sign * num, 10_i64.pow(frac_part.len() as u32), f))
}

fn write_table(table: &Table, format: Format, output: Option<PathBuf>) -> io::Result<()> {
    let mut sink: Box<dyn Write> = match output {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Csv => table.write_csv(&mut sink),
        Format::Json => table.write_json(&mut sink),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Amplitude {
            m,
            eps,
            x,
            t,
            method,
        } => {
            let (mn, md, mf) = parse_decimal(&m)?;
            let (en, ed, ef) = parse_decimal(&eps)?;
            let params = LatticeParams::new(mf, ef).map_err(|e| e.to_string())?;
            let a = match method {
                Method::Dp => dp::amplitude_dp(x, t, params).map_err(|e| e.to_string())?,
                Method::Exact => {
                    if (mf, ef) != (1.0, 1.0) {
                        return Err("exact mode requires m = eps = 1".into());
                    }
                    if t < 1 {
                        return Err("exact mode requires t >= 1".into());
                    }
                    let e = exact::amplitude_exact(x, t);
                    let (a1, a2) = e.to_floats();
                    feynman_checkers::AmplitudePair::new(a1, a2)
                }
                Method::Explicit => {
                    let mu = Mu::Rational(mn * en, md * ed);
                    closed_form::explicit_amplitude(x, t, mu).map_err(|e| e.to_string())?
                }
                Method::Fourier => {
                    spectral::fourier_amplitude(x, t, params).map_err(|e| e.to_string())?
                }
            };
            println!(
                "a1={} a2={} P={}",
                format_float(a.a1),
                format_float(a.a2),
                format_float(a.prob())
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Grid {
            m,
            eps,
            t_max,
            format,
            output,
        } => {
            let (_, _, mf) = parse_decimal(&m)?;
            let (_, _, ef) = parse_decimal(&eps)?;
            let params = LatticeParams::new(mf, ef).map_err(|e| e.to_string())?;
            if t_max < 1 {
                return Err("t_max must be >= 1".into());
            }
            let grid = dp::DpGrid::new(t_max, params);
            let mut table = amplitude_table(mf, ef).with_meta("subcommand", "grid");
            for it in 1..=t_max {
                for (ix, a) in grid.row(it).iter() {
                    if (ix + it) & 1 == 0 {
                        push_amplitude_row(&mut table, ix, it, mf, ef, a.a1, a.a2);
                    }
                }
            }
            write_table(&table, format, output).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Distribution {
            m,
            eps,
            t,
            v_points,
            format,
            output,
        } => {
            let (_, _, mf) = parse_decimal(&m)?;
            let (_, _, ef) = parse_decimal(&eps)?;
            let params = LatticeParams::new(mf, ef).map_err(|e| e.to_string())?;
            if t < 1 || v_points < 2 {
                return Err("need t >= 1 and v_points >= 2".into());
            }
            let mut table = Table::new(vec!["v", "f_empirical", "f_limit"])
                .with_meta("subcommand", "distribution")
                .with_meta("t", t)
                .with_meta("m", format_float(mf))
                .with_meta("eps", format_float(ef));
            let row = dp::dp_row(t, params);
            let mut cum = 0.0;
            let cdf: Vec<(i64, f64)> = row
                .iter()
                .map(|(ix, a)| {
                    cum += a.prob();
                    (ix, cum)
                })
                .collect();
            for i in 0..v_points {
                let v = -1.0 + 2.0 * i as f64 / (v_points - 1) as f64;
                let bound = v * t as f64;
                let emp = cdf
                    .iter()
                    .take_while(|(ix, _)| (*ix as f64) <= bound)
                    .last()
                    .map_or(0.0, |(_, c)| *c);
                table.push(vec![
                    Cell::Float(v),
                    Cell::Float(emp),
                    Cell::Float(asympt::limiting_f(v, params)),
                ]);
            }
            let ks = asympt::cdf_sup_distance(t, params).map_err(|e| e.to_string())?;
            table.meta.insert("ks_distance".into(), format_float(ks));
            if params == LatticeParams::unit() {
                for r in [1u32, 2, 3] {
                    table
                        .meta
                        .insert(format!("moment_{r}"), format_float(asympt::moment(r, t)));
                    table.meta.insert(
                        format!("moment_{r}_limit"),
                        format_float(asympt::moment_limit(r)),
                    );
                }
            }
            write_table(&table, format, output).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, list } => {
            if list {
                for name in verify::SUITES {
                    println!("{name}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let results = match suite {
                Some(name) => vec![verify::run_suite(&name)
                    .ok_or_else(|| format!("unknown suite '{name}'; try --list"))?],
                None => verify::run_all(),
            };
            let mut all_ok = true;
            for r in &results {
                for c in &r.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    println!(
                        "{status}  [{}] {} (measured {:.3e}, bound {:.3e})",
                        r.name, c.label, c.measured, c.bound
                    );
                }
                all_ok &= r.passed();
            }
            println!(
                "{}: {} suite(s)",
                if all_ok { "PASS" } else { "FAIL" },
                results.len()
            );
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Asympt {
            m,
            eps,
            x,
            t,
            regime,
        } => {
            let (_, _, mf) = parse_decimal(&m)?;
            let (_, _, ef) = parse_decimal(&eps)?;
            let params = LatticeParams::new(mf, ef).map_err(|e| e.to_string())?;
            let exact = dp::amplitude_dp(x, t, params).map_err(|e| e.to_string())?;
            let approx = match regime {
                Regime::Between => asympt::approx_between_peaks(x, t, params),
                Regime::Airy => asympt::approx_airy(x, t, params),
                Regime::Outside => asympt::approx_outside(x, t, params),
                Regime::Simple => {
                    let s = asympt::simple_asymptotic(x as f64 * ef, t as f64 * ef, params)
                        .map_err(|e| e.to_string())?;
                    println!(
                        "approx |a|={} arg={}",
                        format_float(s.norm()),
                        format_float(s.arg())
                    );
                    println!(
                        "dp     |a|={} arg={}",
                        format_float(exact.to_complex().norm()),
                        format_float(exact.to_complex().arg())
                    );
                    return Ok(ExitCode::SUCCESS);
                }
            }
            .map_err(|e| e.to_string())?;
            println!(
                "approx a1={} a2={}",
                format_float(approx.a1),
                format_float(approx.a2)
            );
            println!(
                "dp     a1={} a2={}",
                format_float(exact.a1),
                format_float(exact.a2)
            );
            println!(
                "error  a1={} a2={}",
                format_float((approx.a1 - exact.a1).abs()),
                format_float((approx.a2 - exact.a2).abs())
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Propagator {
            m,
            t,
            x,
            delta,
            eps_override,
        } => {
            let p = asympt::algorithm1_eps(m, x, t, delta).map_err(|e| e.to_string())?;
            println!(
                "prescribed eps = {} (coarse branch {}, accuracy branch {})",
                format_float(p.eps),
                format_float(p.branch_coarse),
                format_float(p.branch_accuracy)
            );
            println!(
                "feasibility: {}",
                if p.feasible {
                    "OK".to_string()
                } else {
                    format!("INFEASIBLE (t/eps = {:.3e} rows)", t / p.eps)
                }
            );
            if p.feasible || eps_override.is_some() {
                let run = asympt::algorithm1_run(m, x, t, delta, eps_override)
                    .map_err(|e| e.to_string())?;
                println!("eps used = {}", format_float(run.eps_used));
                for k in 1..=2usize {
                    for l in 1..=2usize {
                        println!("G{k}{l} = {}", format_float(run.entries[k - 1][l - 1]));
                    }
                }
                println!(
                    "achieved error vs retarded propagator = {}",
                    format_float(run.achieved_error)
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Anti { m, eps, x, t } => {
            let (_, _, mf) = parse_decimal(&m)?;
            let (_, _, ef) = parse_decimal(&eps)?;
            let params = LatticeParams::new(mf, ef).map_err(|e| e.to_string())?;
            let (a1, a2) = spectral::anti_amplitude(x, t, params).map_err(|e| e.to_string())?;
            if (x + t) & 1 == 0 {
                println!(
                    "black site: a1={} a2={}",
                    format_float(a1.value.re),
                    format_float(a2.value.re)
                );
            } else {
                println!(
                    "white site: b1={} b2={}",
                    format_float(a1.value.im),
                    format_float(a2.value.im)
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Loops {
            t_size,
            m,
            eps,
            delta,
            estimate_x,
            estimate_t,
        } => {
            let lat = TorusLattice::new(t_size, m, eps, delta).map_err(|e| e.to_string())?;
            let census = loop_gas::enumerate_census(&lat, None).map_err(|e| e.to_string())?;
            let total = census.evaluate(&lat);
            println!(
                "torus {t_size}x{t_size}: {} loop configurations, partition sum = {}+{}i",
                census.configurations,
                format_float(total.re),
                format_float(total.im)
            );
            if let Some(ex) = estimate_x {
                let params = LatticeParams::new(m, eps).map_err(|e| e.to_string())?;
                let est = loop_gas::anti_checker_estimate(
                    ex,
                    estimate_t,
                    params,
                    t_size,
                    &[0.1, 0.01, 0.001],
                )
                .map_err(|e| e.to_string())?;
                for (d, p1, p2) in &est.ladder {
                    println!(
                        "delta={d}: A(a0->f1)={}+{}i A(a0->f2)={}+{}i",
                        format_float(p1.re),
                        format_float(p1.im),
                        format_float(p2.re),
                        format_float(p2.im)
                    );
                }
                let (e1, e2) = est.estimate;
                let (r1, r2) = est.reference;
                println!(
                    "extrapolated: A~1={}+{}i A~2={}+{}i",
                    format_float(e1.re),
                    format_float(e1.im),
                    format_float(e2.re),
                    format_float(e2.im)
                );
                println!(
                    "momentum-integral reference: A1={}+{}i A2={}+{}i (experimental comparison)",
                    format_float(r1.re),
                    format_float(r1.im),
                    format_float(r2.re),
                    format_float(r2.im)
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Young {
            h_max,
            w_max,
            format,
            output,
        } => {
            let mut table = Table::new(vec![
                "h",
                "w",
                "n_even",
                "n_odd",
                "delta",
                "amplitude_delta",
            ])
            .with_meta("subcommand", "young");
            for h in 1..=h_max {
                for w in 1..=w_max {
                    let c = closed_form::young_counts(h, w).map_err(|e| e.to_string())?;
                    let delta = closed_form::young_delta(h, w).map_err(|e| e.to_string())?;
                    table.push(vec![
                        Cell::Int(h),
                        Cell::Int(w),
                        Cell::Int(c.n_even as i64),
                        Cell::Int(c.n_odd as i64),
                        Cell::Int(c.n_odd as i64 - c.n_even as i64),
                        Cell::Text(delta.to_string()),
                    ]);
                }
            }
            write_table(&table, format, output).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportFigure {
            figure,
            format,
            output,
        } => {
            let table = match figure {
                Figure::Fig4 => figure_distribution_row(),
                Figure::Fig8 => figure_cdf(),
                Figure::Fig10 => figure_ratios(),
                Figure::Fig12 => figure_anti_vs_feynman(),
            }?;
            write_table(&table, format, output).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Figure data: P(x, 1000), a1, a2 across the row.
fn figure_distribution_row() -> Result<Table, String> {
    let params = LatticeParams::unit();
    let mut table = amplitude_table(1.0, 1.0).with_meta("figure", "fig4");
    let row = dp::dp_row(1000, params);
    for (ix, a) in row.iter() {
        if (ix + 1000) & 1 == 0 {
            push_amplitude_row(&mut table, ix, 1000, 1.0, 1.0, a.a1, a.a2);
        }
    }
    Ok(table)
}

/// Figure data: empirical CDF at t in {100, 1000} vs the limit.
fn figure_cdf() -> Result<Table, String> {
    let params = LatticeParams::unit();
    let mut table =
        Table::new(vec!["v", "f_t100", "f_t1000", "f_limit"]).with_meta("figure", "fig8");
    let cdf_of = |t: i64| -> Vec<(i64, f64)> {
        let row = dp::dp_row(t, params);
        let mut cum = 0.0;
        row.iter()
            .map(|(ix, a)| {
                cum += a.prob();
                (ix, cum)
            })
            .collect()
    };
    let c100 = cdf_of(100);
    let c1000 = cdf_of(1000);
    let emp = |cdf: &[(i64, f64)], t: i64, v: f64| -> f64 {
        cdf.iter()
            .take_while(|(ix, _)| (*ix as f64) <= v * t as f64)
            .last()
            .map_or(0.0, |(_, c)| *c)
    };
    for i in 0..=400 {
        let v = -1.0 + i as f64 / 200.0;
        table.push(vec![
            Cell::Float(v),
            Cell::Float(emp(&c100, 100, v)),
            Cell::Float(emp(&c1000, 1000, v)),
            Cell::Float(asympt::limiting_f(v, params)),
        ]);
    }
    Ok(table)
}

/// Figure data: a1(x, 50, 4, 0.5) vs the regime approximations and their
/// ratios.
fn figure_ratios() -> Result<Table, String> {
    let params = LatticeParams::new(4.0, 0.5).unwrap();
    let it = 100; // t = 50
    let mut table = Table::new(vec!["ix", "a1_dp", "regime", "a1_approx", "ratio"])
        .with_meta("figure", "fig10")
        .with_meta("m", "4")
        .with_meta("eps", "0.5");
    let grid = dp::DpGrid::new(it, params);
    for ix in -it..=it {
        if (ix + it) & 1 != 0 {
            continue;
        }
        let a = grid.get(ix, it);
        let (regime, approx) = if let Ok(v) = asympt::approx_airy(ix, it, params) {
            ("airy", Some(v.a1))
        } else if let Ok(v) = asympt::approx_between_peaks(ix, it, params) {
            ("between", Some(v.a1))
        } else if let Ok(v) = asympt::approx_outside(ix, it, params) {
            ("outside", Some(v.a1))
        } else {
            ("none", None)
        };
        if let Some(v) = approx {
            let ratio = if a.a1 != 0.0 { v / a.a1 } else { f64::NAN };
            table.push(vec![
                Cell::Int(ix),
                Cell::Float(a.a1),
                Cell::Text(regime.into()),
                Cell::Float(v),
                Cell::Float(ratio),
            ]);
        }
    }
    Ok(table)
}

/// Figure data: rescaled antiparticle values vs the imaginary part of the
/// Feynman propagator at m = 4, t = 6, eps = 0.03.
fn figure_anti_vs_feynman() -> Result<Table, String> {
    let m = 4.0;
    let eps = 0.03;
    let params = LatticeParams::new(m, eps).map_err(|e| e.to_string())?;
    let it = (6.0 / eps).round() as i64; // t = 6
    let mut table = Table::new(vec!["x", "b1_rescaled", "im_gf11", "b2_rescaled", "im_gf12"])
        .with_meta("figure", "fig12")
        .with_meta("m", "4")
        .with_meta("eps", "0.03")
        .with_meta("t", "6");
    let t = it as f64 * eps;
    let mut ix = -it - 67; // reach past the light cone on both sides
    while ix <= it + 67 {
        if (ix + it) & 1 == 0 {
            ix += 1;
            continue;
        }
        let x = ix as f64 * eps;
        if (x.abs() - t).abs() < 0.2 {
            ix += 2;
            continue; // skip the singular light-cone band
        }
        let (b1, b2) = match spectral::b_pair(ix, it, params) {
            Ok(v) => v,
            Err(_) => {
                ix += 2;
                continue;
            }
        };
        let gf = asympt::feynman_propagator(x, t, m).map_err(|e| e.to_string())?;
        table.push(vec![
            Cell::Float(x),
            Cell::Float(b1 / (4.0 * eps)),
            Cell::Float(gf.get(1, 1).im),
            Cell::Float(b2 / (4.0 * eps)),
            Cell::Float(gf.get(1, 2).im),
        ]);
        ix += 2;
    }
    Ok(table)
}
