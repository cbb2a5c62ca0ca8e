//! `diskflow` — command-line front end: constants tables, verification
//! suites, flow trajectories, coefficient extraction, functional reports,
//! and measure-driven synthesis.
//!
//! Exit codes: 0 all verdicts pass, 1 a mathematical verdict failed,
//! 2 usage or domain error.

mod io;
mod output;
mod suites;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};
use diskflow::*;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

use io::{alpha_arg, load_measure, parse_alpha_value, parse_complex};
use output::{constants_doc, num, report_doc, write_out, Format};
use suites::{run_suite, Suite, Tols};

#[derive(Parser)]
#[command(
    name = "diskflow",
    version,
    about = "Generator classes on the unit disk: constants, synthesis, functionals, and semigroup dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args)]
struct GlobalArgs {
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Seed for the deterministic pseudo-random measures used by suites
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Membership margin tolerance [default: 1e-6]
    #[arg(long, global = true)]
    tol_membership: Option<f64>,
    /// Semigroup law tolerance [default: 1e-8]
    #[arg(long, global = true)]
    tol_law: Option<f64>,
    /// Squeezing bound tolerance [default: 1e-8]
    #[arg(long, global = true)]
    tol_squeeze: Option<f64>,
    /// Coefficient match tolerance [default: 1e-9]
    #[arg(long, global = true)]
    tol_coeff: Option<f64>,
    /// Fekete-Szego oracle tolerance [default: 1e-3]
    #[arg(long, global = true)]
    tol_fs: Option<f64>,
    /// Representation identity tolerance [default: 1e-10]
    #[arg(long, global = true)]
    tol_lstar: Option<f64>,
    /// Integrator relative tolerance [default: 1e-10]
    #[arg(long, global = true)]
    tol_rel: Option<f64>,
    /// Integrator absolute tolerance [default: 1e-12]
    #[arg(long, global = true)]
    tol_abs: Option<f64>,
}

impl GlobalArgs {
    fn tols(&self) -> Result<Tols> {
        let mut t = Tols::default();
        let overrides = [
            (&self.tol_membership, &mut t.membership),
            (&self.tol_law, &mut t.law),
            (&self.tol_squeeze, &mut t.squeeze),
            (&self.tol_coeff, &mut t.coeff),
            (&self.tol_fs, &mut t.fs),
            (&self.tol_lstar, &mut t.lstar),
            (&self.tol_rel, &mut t.rel),
            (&self.tol_abs, &mut t.abs),
        ];
        for (src, dst) in overrides {
            if let Some(v) = src {
                if !(*v > 0.0) {
                    return Err(anyhow!("tolerance overrides must be > 0, got {v}"));
                }
                *dst = *v;
            }
        }
        Ok(t)
    }
}

/// Shared model-selection flags: extremal by default, a measure file for
/// synthesized members, `--identity` for the identity, and an optional
/// rotation wrapper.
#[derive(Args)]
struct ModelArgs {
    /// Class parameter alpha (accepts the keyword `astar`)
    #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha_value)]
    alpha: Option<f64>,
    /// Measure file (JSON; selects the synthesized member for --alpha)
    #[arg(long)]
    measure: Option<PathBuf>,
    /// Use the identity map
    #[arg(long, default_value_t = false)]
    identity: bool,
    /// Wrap the model in the rotation z -> e^{-i theta} f(e^{i theta} z)
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    rotation: f64,
}

impl ModelArgs {
    fn build(&self) -> Result<FunctionModel> {
        let base = if self.identity {
            FunctionModel::Identity
        } else {
            let a = alpha_arg(
                self.alpha
                    .ok_or_else(|| anyhow!("--alpha is required unless --identity is given"))?,
            )?;
            match &self.measure {
                Some(path) => FunctionModel::synthesized(a, load_measure(path)?),
                None => FunctionModel::extremal(a),
            }
        };
        Ok(if self.rotation != 0.0 {
            FunctionModel::rotated(self.rotation, base)
        } else {
            base
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate alpha, K (closed and numeric), B, the argument maximizer,
    /// and the generator margin over an alpha range
    Constants {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha_value, default_value = "-1")]
        alpha_min: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha_value, default_value = "astar")]
        alpha_max: f64,
        #[arg(long, default_value_t = 25)]
        steps: usize,
    },
    /// Run one verification suite and emit its report
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Class parameter override where the suite takes one
        #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha_value)]
        alpha: Option<f64>,
    },
    /// Integrate the semigroup flow and export the trajectory as CSV
    Flow {
        #[command(flatten)]
        model: ModelArgs,
        /// Start point, `re` or `re,im`
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z0: Complex64,
        /// Flow horizon (ray parameter)
        #[arg(long)]
        t_max: f64,
        /// Ray angle psi, |psi| < pi/2
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        psi: f64,
    },
    /// Taylor coefficients of f(z)/z: closed form vs Cauchy extraction
    Coeffs {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 16)]
        n_max: usize,
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
    },
    /// Fekete-Szego functionals: kernel readings, class oracle, and bounds
    FeketeSzego {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha_value)]
        alpha: f64,
        /// Functional parameter lambda, `re` or `re,im`
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        lambda: Complex64,
        /// Grid samples per dimension for the two-atom oracle
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Evaluate a synthesized member: coefficients and optional point values
    Synthesize {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha_value)]
        alpha: f64,
        #[arg(long)]
        measure: PathBuf,
        /// Evaluation point, `re` or `re,im`
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z: Option<Complex64>,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Class membership verdict for a model (exit 1 when not a member)
    Membership {
        #[command(flatten)]
        model: ModelArgs,
        /// Class to test against; defaults to the model's own alpha
        #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha_value)]
        class_alpha: Option<f64>,
    },
}

#[derive(Serialize)]
pub struct ConstantsRow {
    pub alpha: f64,
    pub k_closed: f64,
    pub k_numeric: f64,
    pub b_normalized: f64,
    pub theta_argmax: f64,
    pub generator_margin: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let tols = cli.global.tols()?;
    match cli.command {
        Command::Constants {
            alpha_min,
            alpha_max,
            steps,
        } => cmd_constants(&cli.global, alpha_min, alpha_max, steps),
        Command::Verify { suite, alpha } => {
            let report = run_suite(suite, alpha, cli.global.seed, &tols)?;
            let doc = report_doc(&report);
            write_out(cli.global.out.as_deref(), &doc.render(cli.global.format))?;
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Flow {
            model,
            z0,
            t_max,
            psi,
        } => cmd_flow(&cli.global, &tols, &model, z0, t_max, psi),
        Command::Coeffs {
            model,
            n_max,
            radius,
        } => cmd_coeffs(&cli.global, &tols, &model, n_max, radius),
        Command::FeketeSzego {
            alpha,
            lambda,
            samples,
        } => cmd_fekete_szego(&cli.global, alpha, lambda, samples),
        Command::Synthesize {
            alpha,
            measure,
            z,
            n_max,
        } => cmd_synthesize(&cli.global, alpha, &measure, z, n_max),
        Command::Membership { model, class_alpha } => {
            cmd_membership(&cli.global, &tols, &model, class_alpha)
        }
    }
}

fn cmd_constants(
    global: &GlobalArgs,
    alpha_min: f64,
    alpha_max: f64,
    steps: usize,
) -> Result<ExitCode> {
    if !(alpha_min >= -1.0 && alpha_min < alpha_max && alpha_max <= alpha_star() + 1e-12) {
        return Err(anyhow!(
            "need -1 <= alpha_min < alpha_max <= alpha_star ({:.7})",
            alpha_star()
        ));
    }
    if steps < 1 {
        return Err(anyhow!("steps must be >= 1"));
    }
    let grid = GridConfig::default();
    let mut rows = Vec::with_capacity(steps);
    for j in 0..steps {
        let a = if steps == 1 {
            alpha_min
        } else {
            alpha_min + (alpha_max - alpha_min) * j as f64 / (steps - 1) as f64
        };
        let al = alpha_arg(a)?;
        let constants = b_numeric(al)?;
        let gen = generator_test(&FunctionModel::extremal(al), &grid, MARGIN_TOL)?;
        rows.push(ConstantsRow {
            alpha: a,
            k_closed: k_closed(al),
            k_numeric: k_numeric(al, &grid)?,
            b_normalized: constants.b_normalized,
            theta_argmax: constants.theta_argmax,
            generator_margin: gen.margin,
        });
    }
    let doc = constants_doc(&rows);
    write_out(global.out.as_deref(), &doc.render(global.format))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_flow(
    global: &GlobalArgs,
    tols: &Tols,
    model: &ModelArgs,
    z0: Complex64,
    t_max: f64,
    psi: f64,
) -> Result<ExitCode> {
    if psi.abs() >= std::f64::consts::FRAC_PI_2 {
        return Err(anyhow!("flow rays require |psi| < pi/2, got {psi}"));
    }
    let f = model.build()?;
    let cfg = tols.integrator();
    let traj = try_flow(&f, z0, t_max, psi, &cfg)?;
    let phase = Complex64::from_polar(1.0, psi);
    let mut csv = String::from("s,t_re,t_im,w_re,w_im,w_abs\n");
    for (s, w) in traj.times.iter().zip(&traj.points) {
        let t = phase * s;
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            num(*s),
            num(t.re),
            num(t.im),
            num(w.re),
            num(w.im),
            num(w.norm())
        ));
    }
    write_out(global.out.as_deref(), &csv)?;
    if let Some(time) = traj.escape_time {
        eprintln!(
            "escape: |w| reached {} at s = {time:.9} (psi = {psi}); the field is not a generator or the ray is outside the admissible sector",
            cfg.escape_radius
        );
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_coeffs(
    global: &GlobalArgs,
    tols: &Tols,
    model: &ModelArgs,
    n_max: usize,
    radius: f64,
) -> Result<ExitCode> {
    let f = model.build()?;
    let extracted = cauchy_coeffs(&f, n_max, radius)?;
    // closed forms exist for the unrotated kernel-backed models
    let closed: Option<Vec<Complex64>> = match &f {
        FunctionModel::Extremal { alpha } => Some(
            (0..=n_max)
                .map(|n| Complex64::new(varphi_coeff(*alpha, n), 0.0))
                .collect(),
        ),
        FunctionModel::Synthesized { alpha, measure } => Some(
            (0..=n_max)
                .map(|n| {
                    if n == 0 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        synth_coeff(*alpha, measure, n + 1).expect("n + 1 >= 2")
                    }
                })
                .collect(),
        ),
        FunctionModel::Identity => Some(
            (0..=n_max)
                .map(|n| Complex64::new(if n == 0 { 1.0 } else { 0.0 }, 0.0))
                .collect(),
        ),
        FunctionModel::Rotated { .. } => None,
    };

    #[derive(Serialize)]
    struct CoeffRow {
        n: usize,
        cauchy_re: f64,
        cauchy_im: f64,
        closed_re: Option<f64>,
        closed_im: Option<f64>,
        abs_err: Option<f64>,
    }
    let mut worst: f64 = 0.0;
    let rows: Vec<CoeffRow> = (0..=n_max)
        .map(|n| {
            let c = extracted.coefficients[n];
            let reference = closed.as_ref().map(|v| v[n]);
            let abs_err = reference.map(|r| (c - r).norm());
            if let Some(e) = abs_err {
                worst = worst.max(e);
            }
            CoeffRow {
                n,
                cauchy_re: c.re,
                cauchy_im: c.im,
                closed_re: reference.map(|r| r.re),
                closed_im: reference.map(|r| r.im),
                abs_err,
            }
        })
        .collect();
    let doc = output::TableDoc {
        headers: vec!["n", "cauchy_re", "cauchy_im", "closed_re", "closed_im", "abs_err"],
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    num(r.cauchy_re),
                    num(r.cauchy_im),
                    r.closed_re.map(num).unwrap_or_default(),
                    r.closed_im.map(num).unwrap_or_default(),
                    r.abs_err.map(num).unwrap_or_default(),
                ]
            })
            .collect(),
        json: serde_json::to_value(&rows)?,
        footer: Some(format!(
            "coefficients of f(z)/z at radius {radius} ({} nodes); worst |error| = {}",
            taylor::cauchy_node_count(n_max),
            num(worst)
        )),
    };
    write_out(global.out.as_deref(), &doc.render(global.format))?;
    Ok(if closed.is_none() || worst < tols.coeff {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_fekete_szego(
    global: &GlobalArgs,
    alpha: f64,
    lambda: Complex64,
    samples: usize,
) -> Result<ExitCode> {
    let al = alpha_arg(alpha)?;
    let kernel_fs = fs_varphi(al, lambda);
    let bounds = fs_class_oracle(al, lambda, samples)?;

    #[derive(Serialize)]
    struct FsReport {
        alpha: f64,
        lambda_re: f64,
        lambda_im: f64,
        kernel_direct: f64,
        kernel_paper_claim: f64,
        oracle: f64,
        paper_bound: f64,
        analytic_candidate: f64,
        oracle_attains_paper_bound: bool,
        oracle_attains_candidate: bool,
        argmax_theta1: f64,
        argmax_theta2: f64,
        argmax_weight: f64,
    }
    let fs = FsReport {
        alpha: al.get(),
        lambda_re: lambda.re,
        lambda_im: lambda.im,
        kernel_direct: kernel_fs.direct,
        kernel_paper_claim: kernel_fs.paper_claim,
        oracle: bounds.oracle,
        paper_bound: bounds.paper_bound,
        analytic_candidate: bounds.analytic_candidate,
        oracle_attains_paper_bound: (bounds.oracle - bounds.paper_bound).abs() < 1e-3,
        oracle_attains_candidate: (bounds.oracle - bounds.analytic_candidate).abs() < 1e-3,
        argmax_theta1: bounds.argmax.0,
        argmax_theta2: bounds.argmax.1,
        argmax_weight: bounds.argmax.2,
    };
    let doc = output::TableDoc {
        headers: vec!["quantity", "value"],
        rows: vec![
            vec!["alpha".into(), num(fs.alpha)],
            vec!["lambda_re".into(), num(fs.lambda_re)],
            vec!["lambda_im".into(), num(fs.lambda_im)],
            vec!["kernel_direct".into(), num(fs.kernel_direct)],
            vec!["kernel_paper_claim".into(), num(fs.kernel_paper_claim)],
            vec!["oracle".into(), num(fs.oracle)],
            vec!["paper_bound".into(), num(fs.paper_bound)],
            vec!["analytic_candidate".into(), num(fs.analytic_candidate)],
            vec![
                "oracle_attains_paper_bound".into(),
                fs.oracle_attains_paper_bound.to_string(),
            ],
            vec![
                "oracle_attains_candidate".into(),
                fs.oracle_attains_candidate.to_string(),
            ],
            vec!["argmax_theta1".into(), num(fs.argmax_theta1)],
            vec!["argmax_theta2".into(), num(fs.argmax_theta2)],
            vec!["argmax_weight".into(), num(fs.argmax_weight)],
        ],
        json: serde_json::to_value(&fs)?,
        footer: None,
    };
    write_out(global.out.as_deref(), &doc.render(global.format))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_synthesize(
    global: &GlobalArgs,
    alpha: f64,
    measure: &std::path::Path,
    z: Option<Complex64>,
    n_max: usize,
) -> Result<ExitCode> {
    let al = alpha_arg(alpha)?;
    let mu = load_measure(measure)?;

    #[derive(Serialize)]
    struct SynthRow {
        k: usize,
        a_re: f64,
        a_im: f64,
        a_abs: f64,
        bound: f64,
    }
    #[derive(Serialize)]
    struct SynthReport {
        alpha: f64,
        atoms: usize,
        coefficients: Vec<SynthRow>,
        z: Option<[f64; 2]>,
        f_value: Option<[f64; 2]>,
        f_deriv: Option<[f64; 2]>,
        ratio: Option<[f64; 2]>,
    }
    let coefficients: Vec<SynthRow> = (2..=n_max.max(2))
        .map(|k| {
            let a = synth_coeff(al, &mu, k)?;
            Ok(SynthRow {
                k,
                a_re: a.re,
                a_im: a.im,
                a_abs: a.norm(),
                bound: 2.0 * (1.0 + al.get()) / k as f64,
            })
        })
        .collect::<diskflow::Result<_>>()?;
    let mut info = SynthReport {
        alpha: al.get(),
        atoms: mu.len(),
        coefficients,
        z: None,
        f_value: None,
        f_deriv: None,
        ratio: None,
    };
    if let Some(z) = z {
        let value = synth_eval(al, &mu, z)?;
        let deriv = synth_deriv(al, &mu, z)?;
        let model = FunctionModel::synthesized(al, mu.clone());
        let ratio = model.ratio(z)?;
        info.z = Some([z.re, z.im]);
        info.f_value = Some([value.re, value.im]);
        info.f_deriv = Some([deriv.re, deriv.im]);
        info.ratio = Some([ratio.re, ratio.im]);
    }
    let mut rows: Vec<Vec<String>> = info
        .coefficients
        .iter()
        .map(|r| {
            vec![
                format!("a_{}", r.k),
                num(r.a_re),
                num(r.a_im),
                num(r.a_abs),
                num(r.bound),
            ]
        })
        .collect();
    if let (Some(z), Some(v), Some(d), Some(q)) = (info.z, info.f_value, info.f_deriv, info.ratio)
    {
        rows.push(vec!["z".into(), num(z[0]), num(z[1]), String::new(), String::new()]);
        rows.push(vec!["f(z)".into(), num(v[0]), num(v[1]), String::new(), String::new()]);
        rows.push(vec!["f'(z)".into(), num(d[0]), num(d[1]), String::new(), String::new()]);
        rows.push(vec!["f(z)/z".into(), num(q[0]), num(q[1]), String::new(), String::new()]);
    }
    let doc = output::TableDoc {
        headers: vec!["quantity", "re", "im", "abs", "bound"],
        rows,
        json: serde_json::to_value(&info)?,
        footer: None,
    };
    write_out(global.out.as_deref(), &doc.render(global.format))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_membership(
    global: &GlobalArgs,
    tols: &Tols,
    model: &ModelArgs,
    class_alpha: Option<f64>,
) -> Result<ExitCode> {
    let f = model.build()?;
    let class = match class_alpha.or(model.alpha) {
        Some(a) => alpha_arg(a)?,
        None => return Err(anyhow!("--class-alpha is required for --identity models")),
    };
    let verdict = membership(&f, class, &GridConfig::default(), tols.membership)?;
    let mut report = VerificationReport::new("membership");
    report.push(
        "membership.verdict",
        format!("model={f}, class_alpha={:.6}", class.get()),
        verdict.margin,
        tols.membership,
        verdict.member,
    );
    let doc = report_doc(&report);
    write_out(global.out.as_deref(), &doc.render(global.format))?;
    Ok(if verdict.member {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
