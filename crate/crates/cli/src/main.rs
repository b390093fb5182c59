use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use tate_cli::fockexpr::eval_fock;
use tate_cli::parser::parse;
use tate_cli::rings::{
    mu_env, nil_env, pihalf_env, rational_env, CliError, Output, RingSpec,
};
use tate_cli::verify::{run_suite, DEFAULT_SEED};
use tate_core::fock::matrix::central_charge_fit;
use tate_core::fock::thom::{phi_exp, thom_series, THOM_NORMALIZATION};
use tate_core::fock::virasoro_apply;
use tate_core::scalars::{Half, Rational};
use tate_core::series::Head;
use tate_core::symplectic::{embed_half, form_angle, kontsevich_sides};

#[derive(Parser)]
#[command(
    name = "tate",
    version,
    about = "Exact Laurent-series calculus: residues, formal group laws, the symplectic form, substitution groups, and the Fock representation"
)]
struct Cli {
    /// Coefficient ring: rational | pihalf | nil:N | mu:N
    #[arg(long, global = true, default_value = "rational")]
    ring: String,

    /// Precision head as an integer or half-integer ("10" or "7/2");
    /// defaults to $TATE_DEFAULT_HEAD, then 10
    #[arg(long, global = true)]
    head: Option<String>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized verify checks
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the JSON verify report to this path
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression to a scalar or series
    Eval { expr: String },
    /// The coefficient of e^(-1) in an expression
    Residue { expr: String },
    /// The boundary res(f dlog) under the selected formal group law
    Boundary { expr: String },
    /// The raw residue pairing res(f dg)
    Pair { f: String, g: String },
    /// The twisted symplectic form res(I(f) g dlog)
    Symp { f: String, g: String },
    /// The angle form pi res(u dv) on the half-integer model (pihalf only)
    Angle { u: String, v: String },
    /// Embed an integral series into the half-integer model (pihalf only)
    Embed { f: String },
    /// Apply the substitution x -> g(x) to f
    Act { g: String, f: String },
    /// The compositional inverse of a substitution-group element
    Ginv { g: String },
    /// Compose two substitution-group elements
    Gcomp { g: String, h: String },
    /// Apply the Witt operator W_k f = x^(k+1) f'
    Witt {
        k: i64,
        f: String,
    },
    /// Square an odd half-step series into a substitution-group element
    Cover { g: String },
    /// Apply the Virasoro operator L_n to a polynomial in t0, t1, ...
    Virasoro {
        n: i64,
        p: String,
    },
    /// Fit the Virasoro central term from the measured bracket defects
    Ccfit {
        /// fit the defects of [L_m, L_(-m)] for m = 1..mmax
        #[arg(long, default_value_t = 4)]
        mmax: i64,
        /// weight window on which operators are materialized (default mmax)
        #[arg(long)]
        window: Option<i64>,
    },
    /// Check the trace-coordinate identity for an eigenvalue list
    Kontsevich {
        /// comma-separated rational eigenvalues
        #[arg(long, default_value = "1,2,3")]
        eigs: String,
        /// check odd powers up to 2k-1
        #[arg(long, default_value_t = 4)]
        k: u32,
    },
    /// The universal series with polynomial coefficients and its divided powers
    Thom {
        /// number of coefficient generators t0..tn
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// highest divided power to display
        #[arg(long, default_value_t = 3)]
        vmax: usize,
    },
    /// Run a named check suite (scalars, series, fgl, symplectic, autgroup, fock, all)
    Verify { suite: String },
}

fn parse_head(src: &str) -> Result<Head, CliError> {
    let bad = || CliError::Usage(format!("bad head '{src}' (expected an integer or odd/2)"));
    let h = match src.split_once('/') {
        None => Half::int(src.trim().parse::<i64>().map_err(|_| bad())?),
        Some((num, den)) => {
            if den.trim() != "2" {
                return Err(bad());
            }
            Half(num.trim().parse::<i64>().map_err(|_| bad())?)
        }
    };
    Ok(Head::At(h))
}

fn default_head() -> Result<Head, CliError> {
    match std::env::var("TATE_DEFAULT_HEAD") {
        Ok(s) => parse_head(&s).map_err(|_| {
            CliError::Usage(format!(
                "bad TATE_DEFAULT_HEAD '{s}' (expected an integer or odd/2)"
            ))
        }),
        Err(_) => Ok(Head::At(Half::int(10))),
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let spec: RingSpec = cli.ring.parse().map_err(CliError::Usage)?;
    let cap = match &cli.head {
        Some(s) => parse_head(s)?,
        None => default_head()?,
    };
    if cli.out.is_some() && !matches!(cli.cmd, Cmd::Verify { .. }) {
        return Err(CliError::Usage("--out only applies to verify".into()));
    }

    macro_rules! with_env {
        (|$env:ident| $body:expr) => {
            match spec {
                RingSpec::Rational => {
                    let $env = rational_env();
                    $body
                }
                RingSpec::PiHalf => {
                    let $env = pihalf_env();
                    $body
                }
                RingSpec::Nil(n) => {
                    let $env = nil_env(n);
                    $body
                }
                RingSpec::Mu(n) => {
                    let $env = mu_env(n)?;
                    $body
                }
            }
        };
    }

    let require_pihalf = |what: &str| -> Result<(), CliError> {
        if spec == RingSpec::PiHalf {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{what} needs --ring pihalf")))
        }
    };

    match &cli.cmd {
        Cmd::Eval { expr } => with_env!(|env| env.cmd_eval(expr, cap)),
        Cmd::Residue { expr } => with_env!(|env| env.cmd_residue(expr, cap)),
        Cmd::Boundary { expr } => with_env!(|env| env.cmd_boundary(expr, cap)),
        Cmd::Pair { f, g } => with_env!(|env| env.cmd_pair(f, g, cap)),
        Cmd::Symp { f, g } => with_env!(|env| env.cmd_symp(f, g, cap)),
        Cmd::Angle { u, v } => {
            require_pihalf("angle")?;
            let env = pihalf_env();
            let us = env.eval_str(u, cap)?.to_series(&env.ring);
            let vs = env.eval_str(v, cap)?.to_series(&env.ring);
            Ok(env.scalar_output(&form_angle(&us, &vs)?))
        }
        Cmd::Embed { f } => {
            require_pihalf("embed")?;
            let env = pihalf_env();
            let fs = env.eval_str(f, cap)?.to_series(&env.ring);
            Ok(env.series_output(&embed_half(&fs)?))
        }
        Cmd::Act { g, f } => with_env!(|env| env.cmd_act(g, f, cap)),
        Cmd::Ginv { g } => with_env!(|env| env.cmd_ginv(g, cap)),
        Cmd::Gcomp { g, h } => with_env!(|env| env.cmd_gcomp(g, h, cap)),
        Cmd::Witt { k, f } => with_env!(|env| env.cmd_witt(*k, f, cap)),
        Cmd::Cover { g } => with_env!(|env| env.cmd_cover(g, cap)),
        Cmd::Virasoro { n, p } => {
            let poly = eval_fock(&parse(p)?)?;
            let image = virasoro_apply(*n, &poly)?;
            let text = image.render();
            let jsonv = json!({ "kind": "fock", "value": text });
            Ok(Output { text, json: jsonv, status: 0 })
        }
        Cmd::Ccfit { mmax, window } => {
            let w = window.unwrap_or(*mmax);
            let fit = central_charge_fit(*mmax, Half::int(w))?;
            let mut text = format!("alpha = {}\nbeta = {}\nc = {}\n", fit.alpha, fit.beta, fit.c);
            for (m, d) in &fit.defects {
                text.push_str(&format!("defect({m}) = {d}\n"));
            }
            let jsonv = json!({
                "kind": "ccfit",
                "alpha": fit.alpha.to_string(),
                "beta": fit.beta.to_string(),
                "c": fit.c.to_string(),
                "defects": fit.defects.iter()
                    .map(|(m, d)| json!([m.to_string(), d.to_string()]))
                    .collect::<Vec<_>>(),
            });
            Ok(Output { text, json: jsonv, status: 0 })
        }
        Cmd::Kontsevich { eigs, k } => {
            let parsed: Option<Vec<Rational>> =
                eigs.split(',').map(|s| Rational::parse(s.trim())).collect();
            let eig_list = parsed
                .filter(|v| !v.is_empty())
                .ok_or_else(|| CliError::Usage(format!("bad eigenvalue list '{eigs}'")))?;
            if *k == 0 {
                return Err(CliError::Usage("k must be at least 1".into()));
            }
            let mut text = format!("eigs = {eigs}\n");
            let mut rows = Vec::new();
            let mut status = 0;
            for kk in 1..=*k {
                let (lhs, rhs) = kontsevich_sides(&eig_list, kk)?;
                let ok = lhs == rhs;
                if ok {
                    text.push_str(&format!("k = {kk}: OK  value = {lhs}\n"));
                } else {
                    status = 1;
                    text.push_str(&format!("k = {kk}: MISMATCH  lhs = {lhs}  rhs = {rhs}\n"));
                }
                rows.push(json!({
                    "k": kk,
                    "match": ok,
                    "lhs": lhs.to_string(),
                    "rhs": rhs.to_string(),
                }));
            }
            let jsonv = json!({
                "kind": "kontsevich",
                "eigs": eig_list.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                "checks": rows,
            });
            Ok(Output { text, json: jsonv, status })
        }
        Cmd::Thom { n, vmax } => {
            let (_, t) = thom_series(*n);
            let (_, phis) = phi_exp(*n, *vmax)?;
            let mut text = format!("T = {}\nnormalization: {}\n", t.render("e"), THOM_NORMALIZATION);
            for (j, phi) in phis.iter().enumerate() {
                text.push_str(&format!("phi[{j}] = {}\n", phi.render("e")));
            }
            let jsonv = json!({
                "kind": "thom",
                "n": n,
                "normalization": THOM_NORMALIZATION,
                "T": t.render("e"),
                "phi": phis.iter().map(|p| p.render("e")).collect::<Vec<_>>(),
            });
            Ok(Output { text, json: jsonv, status: 0 })
        }
        Cmd::Verify { suite } => {
            let seed = cli.seed.unwrap_or(DEFAULT_SEED);
            let report = run_suite(suite, seed)?;
            let jsonv = serde_json::to_value(&report)
                .expect("reports are plain data and always serialize");
            if let Some(path) = &cli.out {
                let pretty = serde_json::to_string_pretty(&jsonv)
                    .expect("reports are plain data and always serialize");
                std::fs::write(path, pretty + "\n").map_err(|e| {
                    CliError::Usage(format!("cannot write report to {}: {e}", path.display()))
                })?;
            }
            Ok(Output {
                text: report.render_text(),
                json: jsonv,
                status: if report.all_pass() { 0 } else { 1 },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json)
                        .expect("outputs are plain data and always serialize")
                );
            } else {
                let t = out.text.trim_end_matches('\n');
                println!("{t}");
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
