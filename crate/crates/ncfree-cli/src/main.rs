//! Command-line front end: every solver and evaluator drives from JSON
//! documents, with explicit seeds on all randomized subcommands.
//!
//! Exit codes: 0 success, 1 validation/I-O failure, 2 when a solver reports
//! `NotExact`/`NotInKernel`.

use anyhow::{anyhow, bail};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ncfree_cli::docs::{read_json, write_json, MatrixDocument, PolyDocument, TensorDocument};
use ncfree_cli::report::{self, OutputArg};
use ncfree_core::matricial::{self, EvalMode, ZContext};
use ncfree_core::{calculus, haar, poincare, Error as CoreError, NCPoly};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ncfree",
    about = "Free differential calculus on non-commutative polynomials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    B,
    Z,
}

#[derive(Args)]
struct InOut {
    /// Input document
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    /// Output path (stdout when omitted)
    #[arg(short = 'o', long = "output-file")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VarArg {
    /// 1-based letter index
    #[arg(long, default_value_t = 1)]
    var: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Free difference quotient ∂ᵢ (polynomial → tensor)
    Diff {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        var: VarArg,
    },
    /// Cyclic derivative δᵢ
    Cyclic {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        var: VarArg,
    },
    /// Divergence ∂*ᵢ (tensor → polynomial)
    Divergence {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        var: VarArg,
    },
    /// Cyclic divergence D*ᵢ (right multiplication by Xᵢ)
    CyclicDiv {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        var: VarArg,
    },
    /// Number operator Nᵢ, or ΣᵢNᵢ with --total
    Number {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        var: VarArg,
        #[arg(long, default_value_t = false)]
        total: bool,
    },
    /// Grading operator Lᵢ = Nᵢ + id
    Grading {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        var: VarArg,
    },
    /// Symmetrization C = δᵢ[·]·Xᵢ
    Symmetrize {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        var: VarArg,
    },
    /// Θ = id − ρ (single letter)
    ThetaOp {
        #[command(flatten)]
        io: InOut,
    },
    /// Rotation ρ (single letter)
    Rho {
        #[command(flatten)]
        io: InOut,
    },
    /// Rotation ξ (single letter)
    XiOp {
        #[command(flatten)]
        io: InOut,
    },
    /// Decide cyclic exactness; several -i inputs form a gradient tuple
    CheckCyclicExact {
        #[arg(short = 'i', long = "input", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(short = 'o', long = "output-file")]
        output: Option<PathBuf>,
    },
    /// Construct p with δ[p] = q (exit 2 when none exists)
    AntiderivativeCyclic {
        #[arg(short = 'i', long = "input", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(short = 'o', long = "output-file")]
        output: Option<PathBuf>,
    },
    /// Decide gradient exactness of a tensor
    CheckGradExact {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        var: VarArg,
    },
    /// Construct g with ∂[g] = ξ (exit 2 when none exists)
    AntiderivativeGrad {
        #[command(flatten)]
        io: InOut,
        #[command(flatten)]
        var: VarArg,
    },
    /// Kernel test: δᵢ[p] = 0 for all i
    KernelCheck {
        #[command(flatten)]
        io: InOut,
    },
    /// Decompose a kernel element as b₀ + Σ[uⱼ,vⱼ] (exit 2 otherwise)
    KernelDecompose {
        #[command(flatten)]
        io: InOut,
    },
    /// Evaluate a polynomial at a matrix point
    Eval {
        #[command(flatten)]
        io: InOut,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        point: PathBuf,
    },
    /// Numeric difference-differential via a 2×2 block point
    Delta {
        #[command(flatten)]
        io: InOut,
        #[arg(long, value_enum, default_value = "b")]
        mode: ModeArg,
        #[command(flatten)]
        var: VarArg,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        z: PathBuf,
    },
    /// Numeric cyclic derivative via the trace formula
    CyclicNumeric {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        point: PathBuf,
    },
    /// Direct-sum and similarity axiom checks on random points
    Axioms {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "b")]
        mode: ModeArg,
        /// k of the evaluation algebra in Z mode
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_level: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        output: OutputArg,
    },
    /// Haar-unitary trace-moment oracle
    #[command(subcommand)]
    Haar(HaarCommand),
}

#[derive(Subcommand)]
enum HaarCommand {
    /// Moment table against the δ·k^{-#} targets
    Verify {
        #[arg(long)]
        k: usize,
        #[arg(long = "N")]
        level: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        /// Absolute band for the asymptotic (finite-N biased) targets
        #[arg(long, default_value_t = 0.05)]
        band: f64,
        #[arg(long, value_enum, default_value = "json")]
        output: OutputArg,
        #[arg(short = 'o', long = "output-file")]
        output_file: Option<PathBuf>,
    },
    /// Coefficient recovery for a Z-valued polynomial
    Recover {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long = "N")]
        level: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        max_deg: usize,
        #[arg(long, value_enum, default_value = "json")]
        output: OutputArg,
        #[arg(short = 'o', long = "output-file")]
        output_file: Option<PathBuf>,
    },
}

fn zero_based_var(var: usize, n_vars: usize) -> anyhow::Result<usize> {
    if var < 1 || var > n_vars {
        bail!("--var {var} out of 1..{n_vars}");
    }
    Ok(var - 1)
}

fn load_poly(path: &PathBuf) -> anyhow::Result<(NCPoly, PolyDocument)> {
    let doc: PolyDocument = read_json(path)?;
    let p = doc.to_poly()?;
    Ok((p, doc))
}

fn poly_unop(io: &InOut, f: impl FnOnce(&NCPoly) -> anyhow::Result<NCPoly>) -> anyhow::Result<()> {
    let (p, doc) = load_poly(&io.input)?;
    let out = f(&p)?;
    write_json(
        &PolyDocument::from_poly(&out, doc.generator_map.clone()),
        io.output.as_deref(),
    )
}

fn init_thread_pool() {
    if let Ok(raw) = std::env::var("NCFREE_THREADS") {
        if let Ok(n) = raw.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn run() -> anyhow::Result<()> {
    let cli = Cli::parse();
    init_thread_pool();
    match cli.command {
        Command::Diff { io, var } => {
            let (p, doc) = load_poly(&io.input)?;
            let v = zero_based_var(var.var, p.n_vars())?;
            let u = calculus::free_diff(&p, v);
            write_json(
                &TensorDocument::from_tensor(&u, doc.generator_map.clone()),
                io.output.as_deref(),
            )
        }
        Command::Cyclic { io, var } => poly_unop(&io, |p| {
            let v = zero_based_var(var.var, p.n_vars())?;
            Ok(calculus::cyclic_derivative(p, v))
        }),
        Command::Divergence { io, var } => {
            let doc: TensorDocument = read_json(&io.input)?;
            let u = doc.to_tensor()?;
            let v = zero_based_var(var.var, u.n_vars())?;
            let p = calculus::divergence(&u, v);
            write_json(
                &PolyDocument::from_poly(&p, doc.generator_map.clone()),
                io.output.as_deref(),
            )
        }
        Command::CyclicDiv { io, var } => poly_unop(&io, |p| {
            let v = zero_based_var(var.var, p.n_vars())?;
            Ok(calculus::cyclic_divergence(p, v))
        }),
        Command::Number { io, var, total } => poly_unop(&io, |p| {
            if total {
                Ok(calculus::number_total(p))
            } else {
                let v = zero_based_var(var.var, p.n_vars())?;
                Ok(calculus::number_op(p, v))
            }
        }),
        Command::Grading { io, var } => poly_unop(&io, |p| {
            let v = zero_based_var(var.var, p.n_vars())?;
            Ok(calculus::grading_op(p, v))
        }),
        Command::Symmetrize { io, var } => poly_unop(&io, |p| {
            let v = zero_based_var(var.var, p.n_vars())?;
            Ok(calculus::symmetrization(p, v))
        }),
        Command::ThetaOp { io } => poly_unop(&io, |p| Ok(calculus::theta_op(p)?)),
        Command::Rho { io } => poly_unop(&io, |p| Ok(calculus::rho(p)?)),
        Command::XiOp { io } => poly_unop(&io, |p| Ok(calculus::xi_op(p)?)),
        Command::CheckCyclicExact { inputs, output } => {
            let polys: Vec<(NCPoly, PolyDocument)> =
                inputs.iter().map(load_poly).collect::<anyhow::Result<_>>()?;
            let exact = if polys.len() == 1 {
                poincare::is_cyclically_exact(&polys[0].0)?
            } else {
                let qs: Vec<NCPoly> = polys.iter().map(|(p, _)| p.clone()).collect();
                poincare::is_cyclically_exact_multi(&qs)?
            };
            write_json(&serde_json::json!({ "exact": exact }), output.as_deref())
        }
        Command::AntiderivativeCyclic { inputs, output } => {
            let polys: Vec<(NCPoly, PolyDocument)> =
                inputs.iter().map(load_poly).collect::<anyhow::Result<_>>()?;
            let p = if polys.len() == 1 {
                poincare::antiderivative_cyclic(&polys[0].0)?
            } else {
                let qs: Vec<NCPoly> = polys.iter().map(|(p, _)| p.clone()).collect();
                poincare::antiderivative_cyclic_multi(&qs)?
            };
            write_json(
                &PolyDocument::from_poly(&p, polys[0].1.generator_map.clone()),
                output.as_deref(),
            )
        }
        Command::CheckGradExact { io, var } => {
            let doc: TensorDocument = read_json(&io.input)?;
            let u = doc.to_tensor()?;
            let v = zero_based_var(var.var, u.n_vars())?;
            let exact = poincare::is_gradient_exact(&u, v);
            write_json(&serde_json::json!({ "exact": exact }), io.output.as_deref())
        }
        Command::AntiderivativeGrad { io, var } => {
            let doc: TensorDocument = read_json(&io.input)?;
            let u = doc.to_tensor()?;
            let v = zero_based_var(var.var, u.n_vars())?;
            let g = poincare::antiderivative_grad(&u, v)?;
            write_json(
                &PolyDocument::from_poly(&g, doc.generator_map.clone()),
                io.output.as_deref(),
            )
        }
        Command::KernelCheck { io } => {
            let (p, _) = load_poly(&io.input)?;
            let in_kernel = poincare::kernel_membership(&p);
            write_json(
                &serde_json::json!({ "in_kernel": in_kernel }),
                io.output.as_deref(),
            )
        }
        Command::KernelDecompose { io } => {
            let (p, doc) = load_poly(&io.input)?;
            let d = poincare::kernel_decompose(&p)?;
            let pairs: Vec<[PolyDocument; 2]> = d
                .pairs
                .iter()
                .map(|(u, v)| {
                    [
                        PolyDocument::from_poly(u, doc.generator_map.clone()),
                        PolyDocument::from_poly(v, doc.generator_map.clone()),
                    ]
                })
                .collect();
            write_json(
                &serde_json::json!({
                    "constant": PolyDocument::from_poly(&d.constant, doc.generator_map.clone()),
                    "pairs": pairs,
                }),
                io.output.as_deref(),
            )
        }
        Command::Eval { io, mode, point } => {
            let (p, doc) = load_poly(&io.input)?;
            let point_doc: MatrixDocument = read_json(&point)?;
            let pt = point_doc.to_point()?;
            let (result, out_k) = match mode {
                ModeArg::B => (matricial::eval_b(&p, &pt)?, pt.k),
                ModeArg::Z => {
                    let ctx = ZContext::new(pt.k, doc.generator_map_zero_based())?;
                    let beta = pt
                        .mats
                        .first()
                        .ok_or_else(|| anyhow!("Z-valued point needs one matrix"))?;
                    (matricial::eval_z(&p, beta, &ctx)?, 1)
                }
            };
            write_json(
                &MatrixDocument::from_single(&result, pt.level, out_k),
                io.output.as_deref(),
            )
        }
        Command::Delta {
            io,
            mode,
            var,
            x,
            y,
            z,
        } => {
            let (p, doc) = load_poly(&io.input)?;
            let ptx = read_json::<MatrixDocument>(&x)?.to_point()?;
            let pty = read_json::<MatrixDocument>(&y)?.to_point()?;
            let zm = read_json::<MatrixDocument>(&z)?.to_single()?;
            let v = zero_based_var(var.var, p.n_vars())?;
            let (mode, ctx) = match mode {
                ModeArg::B => (EvalMode::BValued, None),
                ModeArg::Z => (
                    EvalMode::ZValued,
                    Some(ZContext::new(ptx.k, doc.generator_map_zero_based())?),
                ),
            };
            let result = matricial::delta_numeric(&p, &ptx, &pty, &zm, v, mode, ctx.as_ref())?;
            let out_k = if mode == EvalMode::BValued { ptx.k } else { 1 };
            write_json(
                &MatrixDocument::from_single(&result, ptx.level, out_k),
                io.output.as_deref(),
            )
        }
        Command::CyclicNumeric { io, point } => {
            let (p, doc) = load_poly(&io.input)?;
            let point_doc: MatrixDocument = read_json(&point)?;
            let pt = point_doc.to_point()?;
            let ctx = ZContext::new(pt.k, doc.generator_map_zero_based())?;
            let beta = pt
                .mats
                .first()
                .ok_or_else(|| anyhow!("cyclic-numeric needs one matrix"))?;
            let result = matricial::cyclic_numeric(&p, beta, &ctx)?;
            write_json(
                &MatrixDocument::from_single(&result, pt.level, 1),
                io.output.as_deref(),
            )
        }
        Command::Axioms {
            input,
            mode,
            k,
            trials,
            seed,
            max_level,
            tol,
            output,
        } => {
            let (p, doc) = load_poly(&input)?;
            let (mode, ctx) = match mode {
                ModeArg::B => (EvalMode::BValued, None),
                ModeArg::Z => (
                    EvalMode::ZValued,
                    Some(ZContext::new(k, doc.generator_map_zero_based())?),
                ),
            };
            let report =
                matricial::check_nc_axioms(&p, mode, ctx.as_ref(), seed, trials, max_level, tol)?;
            report::emit_axioms(&report, output)
        }
        Command::Haar(cmd) => match cmd {
            HaarCommand::Verify {
                k,
                level,
                samples,
                seed,
                max_len,
                band,
                output,
                output_file,
            } => {
                let cfg = haar::HaarConfig {
                    k,
                    level,
                    samples,
                    seed,
                };
                let report = haar::verify_orthogonality(max_len, &cfg, band)?;
                report::emit_orthogonality(&report, band, output, output_file.as_deref())
            }
            HaarCommand::Recover {
                input,
                k,
                level,
                samples,
                seed,
                max_deg,
                output,
                output_file,
            } => {
                let (p, doc) = load_poly(&input)?;
                let cfg = haar::HaarConfig {
                    k,
                    level,
                    samples,
                    seed,
                };
                let ctx = ZContext::new(k, doc.generator_map_zero_based())?;
                let rows = haar::recover_coefficients(&p, &ctx, max_deg, &cfg)?;
                report::emit_recovered(&rows, output, output_file.as_deref())
            }
        },
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let solver_refusal = err
                .downcast_ref::<CoreError>()
                .map(|core| matches!(core, CoreError::NotExact(_) | CoreError::NotInKernel));
            if solver_refusal == Some(true) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
