//! pflab: command-line front end for the Picard-Fuchs toolkit.
//!
//! Every command validates its payload, runs the corresponding library
//! operation and writes a report-v1 document to standard output. Exit
//! status: 0 on success, 1 on domain errors, 2 on numerical failures,
//! 3 on resource exhaustion.

mod input;

use clap::{Args, Parser, Subcommand};
use input::{
    fmt_exact, invalid, parse_loop, parse_one_form_literal, parse_rational_one_form,
    parse_samples, parse_triangle, read_input,
};
use num_bigint::BigUint;
use num_complex::Complex64;
use pflab_core::analytic::{
    abelian_integral, gelfand_leray_check, monodromy, scalar_factorize, spectral_condition,
    verify_pf, OdeMatrix, OneForm,
};
use pflab_core::bounds::{
    argument_principle_count, disconjugacy_test, index_bound, interval_zero_bound,
    quasipolynomial_bound, triangle_zero_bound, ExponentSet,
};
use pflab_core::chains::{chain_bound_with, generalized_exponential_with, Budget, ChainKind, ExpKind};
use pflab_core::error::{ErrorCategory, Result};
use pflab_core::hamiltonian::Hamiltonian;
use pflab_core::kform::KForm;
use pflab_core::linalg::CMat;
use pflab_core::parse::{parse_bipoly, parse_unipoly};
use pflab_core::picard_fuchs::{
    derive_system, geometry_metrics, to_fuchsian, FuchsianSystem, HyperGeomSystem,
};
use pflab_core::reduction::{reduce_to_scalar, LinearSystem};
use pflab_core::report::{digest_hex, EvalRecord, Report};
use pflab_core::unipoly::UniPoly;

#[derive(Parser)]
#[command(name = "pflab", version, about = "Picard-Fuchs systems, Abelian integrals and zero bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide transversality to infinity of a Hamiltonian.
    Transversal(TransversalArgs),
    /// Derive the redundant hypergeometric Picard-Fuchs system.
    DerivePf(DerivePfArgs),
    /// Convert a derived system to Fuchsian form (simple poles).
    Fuchsian(FuchsianArgs),
    /// Residual norm and spread of a Fuchsian system.
    Metrics(MetricsArgs),
    /// Zero/index bounds for linear ODEs.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Count zeros of a univariate polynomial in a triangle.
    Count(CountArgs),
    /// Numerical oracles: oval integrals, Gelfand-Leray, system check.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Monodromy matrix along a closed loop.
    Monodromy(MonodromyArgs),
    /// Chain-length bounds and generalized exponentials.
    Chains(ChainsArgs),
    /// Scalar annulus factorization from circle samples.
    Factorize(FactorizeArgs),
    /// Reduce a first-order linear system to a scalar equation.
    Reduce(ReduceArgs),
}

#[derive(Args)]
struct TransversalArgs {
    /// Hamiltonian polynomial in x, y.
    #[arg(long = "h")]
    hamiltonian: String,
}

#[derive(Args)]
struct DerivePfArgs {
    #[arg(long = "h")]
    hamiltonian: String,
    /// Write the pf-v1 system document to this file.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct FuchsianArgs {
    /// Hamiltonian (derive first), or ...
    #[arg(long = "h", conflicts_with = "system")]
    hamiltonian: Option<String>,
    /// ... a pf-v1 hypergeom file ("-" for stdin).
    #[arg(long)]
    system: Option<String>,
    #[arg(long, default_value_t = 1e-9)]
    precision: f64,
    /// Write the pf-v1 fuchsian document to this file.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct MetricsArgs {
    #[arg(long = "h", conflicts_with = "system")]
    hamiltonian: Option<String>,
    /// pf-v1 file (hypergeom or fuchsian).
    #[arg(long)]
    system: Option<String>,
    #[arg(long, default_value_t = 1e-9)]
    precision: f64,
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// de la Vallee Poussin smallness test.
    Disconjugacy(DisconjugacyArgs),
    /// Subdivision bound for a long interval.
    Interval(IntervalArgs),
    /// Bound for the variation of argument along a segment.
    Index(IndexArgs),
    /// Zero bound for solutions on a triangle.
    Triangle(TriangleBoundArgs),
    /// Quasipolynomial zero bound from a real exponent set.
    Quasipoly(QuasipolyArgs),
}

#[derive(Args)]
struct DisconjugacyArgs {
    /// Coefficient bounds c_1,...,c_n (comma-separated).
    #[arg(long = "c")]
    coefficients: String,
    #[arg(long = "r")]
    length: f64,
}

#[derive(Args)]
struct IntervalArgs {
    #[arg(long = "c")]
    coefficients: String,
    #[arg(long)]
    length: f64,
}

#[derive(Args)]
struct IndexArgs {
    #[arg(long = "n")]
    order: usize,
    /// Uniform coefficient bound C.
    #[arg(long = "C")]
    coefficient_bound: f64,
    #[arg(long)]
    length: f64,
}

#[derive(Args)]
struct TriangleBoundArgs {
    #[arg(long = "n")]
    order: usize,
    /// Coefficient bound R on a domain containing the triangle.
    #[arg(long = "R")]
    coefficient_bound: f64,
    #[arg(long)]
    perimeter: f64,
}

#[derive(Args)]
struct QuasipolyArgs {
    /// Exponents with multiplicities: "0:1,10:1" (":mult" optional).
    #[arg(long)]
    lambdas: String,
}

#[derive(Args)]
struct CountArgs {
    /// Univariate polynomial in t.
    #[arg(long = "f")]
    function: String,
    /// Triangle "re,im;re,im;re,im".
    #[arg(long)]
    triangle: String,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Abelian integral of a 1-form over the oval at level t.
    Integral(IntegralArgs),
    /// Gelfand-Leray derivative check d/dt oint omega = oint eta.
    GelfandLeray(GelfandLerayArgs),
    /// Residual of the derived system against numerically evaluated
    /// integrals on a t grid.
    VerifyPf(VerifyPfArgs),
}

#[derive(Args)]
struct IntegralArgs {
    #[arg(long = "h")]
    hamiltonian: String,
    /// 1-form literal "[p, q]" meaning p dx + q dy.
    #[arg(long)]
    omega: String,
    #[arg(long = "t")]
    level: f64,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct GelfandLerayArgs {
    #[arg(long = "h")]
    hamiltonian: String,
    #[arg(long)]
    omega: String,
    /// Polynomial eta literal "[p, q]" ...
    #[arg(long, conflicts_with = "eta_rational")]
    eta: Option<String>,
    /// ... or rational eta "[pn | pd, qn | qd]".
    #[arg(long)]
    eta_rational: Option<String>,
    #[arg(long = "t")]
    level: f64,
    #[arg(long, default_value_t = 1e-4)]
    h_step: f64,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct VerifyPfArgs {
    #[arg(long = "h")]
    hamiltonian: String,
    /// Optional pf-v1 hypergeom file; derived from --h when absent.
    #[arg(long)]
    system: Option<String>,
    #[arg(long)]
    t_min: f64,
    #[arg(long)]
    t_max: f64,
    #[arg(long, default_value_t = 9)]
    points: usize,
    #[arg(long, default_value_t = 1e-4)]
    h_step: f64,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct MonodromyArgs {
    /// pf-v1 fuchsian file ("-" for stdin).
    #[arg(long)]
    system: String,
    /// Loop literal: "circle:cx,cy,r[,angle]" or "polygon:x,y;x,y;...".
    #[arg(long = "loop")]
    loop_spec: String,
    #[arg(long)]
    tol: Option<f64>,
    /// Tolerance for the unit-modulus spectral test.
    #[arg(long, default_value_t = 1e-7)]
    spectral_tol: f64,
}

#[derive(Args)]
struct ChainsArgs {
    /// linear | exponential | word | ackermann | tower.
    #[arg(long)]
    kind: String,
    #[arg(long = "n")]
    n: Option<u64>,
    #[arg(long = "d")]
    d: Option<u64>,
    #[arg(long = "i")]
    i: Option<u64>,
    #[arg(long = "z")]
    z: Option<u64>,
    #[arg(long = "x")]
    x: Option<u64>,
    #[arg(long = "y")]
    y: Option<u64>,
    #[arg(long)]
    height: Option<u64>,
    #[arg(long = "k")]
    k: Option<u64>,
}

#[derive(Args)]
struct FactorizeArgs {
    /// File of circle samples, one "re im" per line ("-" for stdin).
    #[arg(long)]
    samples: String,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct ReduceArgs {
    /// pf-v1 linsys file ("-" for stdin).
    #[arg(long)]
    system: String,
    /// Covector entries as polynomials in t, ';'-separated.
    #[arg(long)]
    q0: String,
}

fn env_f64(name: &str, default: f64) -> f64 {
    std::env::var(name).ok().and_then(|v| v.parse().ok()).unwrap_or(default)
}

fn quadrature_tol(flag: Option<f64>) -> f64 {
    flag.unwrap_or_else(|| env_f64("PFLAB_TOL_QUADRATURE", 1e-9))
}

fn integrator_tol(flag: Option<f64>) -> f64 {
    flag.unwrap_or_else(|| env_f64("PFLAB_TOL_INTEGRATOR", 1e-10))
}

fn budget_from_env() -> Budget {
    let mut budget = Budget::default();
    if let Ok(v) = std::env::var("PFLAB_MAX_BITS") {
        if let Ok(bits) = v.parse::<u64>() {
            budget.max_bits = bits;
        }
    }
    budget
}

fn hamiltonian_of(src: &str) -> Result<Hamiltonian> {
    Hamiltonian::new(parse_bipoly(src)?)
}

fn matrix_lines(report: &mut Report, name: &str, mat: &pflab_core::linalg::ExactMat) {
    let rows: Vec<String> = (0..mat.rows)
        .map(|i| {
            let entries: Vec<String> =
                (0..mat.cols).map(|j| fmt_exact(mat.get(i, j))).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    report.field(name, format!("[{}]", rows.join(", ")));
}

fn cmat_lines(report: &mut Report, name: &str, mat: &CMat) {
    for i in 0..mat.rows {
        let entries: Vec<String> = (0..mat.cols)
            .map(|j| {
                let v = mat.get(i, j);
                format!("[{:.12e}, {:.12e}]", v.re, v.im)
            })
            .collect();
        report.field(&format!("{name} row {i}"), entries.join(" "));
    }
}

fn parse_coeff_list(src: &str) -> Result<Vec<f64>> {
    src.split(',')
        .map(|p| {
            let v: f64 = p
                .trim()
                .parse()
                .map_err(|_| invalid(format!("bad coefficient '{p}'")))?;
            if !v.is_finite() || v < 0.0 {
                return Err(invalid("coefficient bounds must be finite and nonnegative"));
            }
            Ok(v)
        })
        .collect()
}

fn load_hypergeom(args_h: &Option<String>, args_sys: &Option<String>) -> Result<HyperGeomSystem> {
    match (args_h, args_sys) {
        (Some(h), None) => derive_system(&hamiltonian_of(h)?),
        (None, Some(path)) => HyperGeomSystem::parse_pf1(&read_input(path)?),
        _ => Err(invalid("provide exactly one of --h or --system")),
    }
}

fn run(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Transversal(args) => {
            let h = hamiltonian_of(&args.hamiltonian)?;
            let t = h.check_transversal();
            let mut r = Report::new("transversal");
            r.status("ok")
                .field("n", h.n())
                .field("transversal", t.transversal)
                .field("witness", fmt_exact(&t.witness));
            Ok(r)
        }
        Command::DerivePf(args) => {
            let h = hamiltonian_of(&args.hamiltonian)?;
            let sys = derive_system(&h)?;
            let mut r = Report::new("derive-pf");
            r.status("ok").field("n", sys.basis.n).field("nu", sys.basis.nu);
            matrix_lines(&mut r, "A", &sys.a);
            matrix_lines(&mut r, "B", &sys.b);
            if let Some(path) = args.out {
                std::fs::write(&path, sys.serialize_pf1())
                    .map_err(|e| invalid(format!("cannot write {path}: {e}")))?;
                r.field("written", path);
            }
            Ok(r)
        }
        Command::Fuchsian(args) => {
            let sys = load_hypergeom(&args.hamiltonian, &args.system)?;
            let f = to_fuchsian(&sys, args.precision)?;
            let mut r = Report::new("fuchsian");
            r.status("ok").field("dim", f.dim()).field("points", f.points.len());
            for (k, (t, res)) in f.points.iter().zip(&f.residues).enumerate() {
                r.complex(&format!("point {k}"), t.re, t.im);
                cmat_lines(&mut r, &format!("residue {k}"), res);
            }
            if let Some(path) = args.out {
                std::fs::write(&path, f.serialize_pf1())
                    .map_err(|e| invalid(format!("cannot write {path}: {e}")))?;
                r.field("written", path);
            }
            Ok(r)
        }
        Command::Metrics(args) => {
            let f = match (&args.hamiltonian, &args.system) {
                (None, Some(path)) => {
                    let text = read_input(path)?;
                    if text.starts_with("pf-v1 fuchsian") {
                        FuchsianSystem::parse_pf1(&text)?
                    } else {
                        to_fuchsian(&HyperGeomSystem::parse_pf1(&text)?, args.precision)?
                    }
                }
                (Some(h), None) => {
                    to_fuchsian(&derive_system(&hamiltonian_of(h)?)?, args.precision)?
                }
                _ => return Err(invalid("provide exactly one of --h or --system")),
            };
            let m = geometry_metrics(&f);
            let mut r = Report::new("metrics");
            r.status("ok")
                .float("residual-norm", m.residual_norm)
                .float("spread", m.spread);
            Ok(r)
        }
        Command::Bounds(cmd) => run_bounds(cmd),
        Command::Count(args) => {
            let poly = parse_unipoly(&args.function)?;
            let tri = parse_triangle(&args.triangle)?;
            let tol = args
                .tol
                .unwrap_or_else(|| pflab_core::bounds::default_boundary_tolerance(tri.perimeter()));
            let count = argument_principle_count(&|z| poly.eval_f64(z), &tri, tol)?;
            let mut r = Report::new("count");
            r.status("ok").field("count", count);
            r.record(&EvalRecord {
                operation: "argument-principle-count".into(),
                inputs_digest: digest_hex(
                    format!("{}|{}", args.function, args.triangle).as_bytes(),
                ),
                value: count.to_string(),
                error_estimate: 0.0,
                tolerance: tol,
                pass: true,
            });
            Ok(r)
        }
        Command::Oracle(cmd) => run_oracle(cmd),
        Command::Monodromy(args) => {
            let f = FuchsianSystem::parse_pf1(&read_input(&args.system)?)?;
            let loop_path = parse_loop(&args.loop_spec)?;
            let tol = integrator_tol(args.tol);
            let x0 = CMat::identity(f.dim());
            let m = monodromy(&OdeMatrix::Fuchsian(&f), &loop_path, &x0, tol)?;
            let spectral = spectral_condition(&m, args.spectral_tol)?;
            let mut r = Report::new("monodromy");
            r.status("ok").field("dim", m.rows);
            cmat_lines(&mut r, "M", &m);
            r.field("spectral-condition", spectral);
            Ok(r)
        }
        Command::Chains(args) => run_chains(args),
        Command::Factorize(args) => {
            let samples = parse_samples(&read_input(&args.samples)?)?;
            if samples.len() < 8 || !samples.len().is_power_of_two() {
                return Err(invalid("need a power-of-two sample count >= 8"));
            }
            let tol = args.tol.unwrap_or(1e-9);
            let fact = scalar_factorize(&samples, tol)?;
            let mut r = Report::new("factorize");
            r.status("ok")
                .field("nu", fact.nu)
                .float("reconstruction-error", fact.reconstruction_error);
            let show = |r: &mut Report, name: &str, coeffs: &[Complex64]| {
                for (k, c) in coeffs.iter().take(8).enumerate() {
                    r.complex(&format!("{name} {k}"), c.re, c.im);
                }
            };
            show(&mut r, "h0", &fact.h0);
            show(&mut r, "hinf", &fact.hinf);
            Ok(r)
        }
        Command::Reduce(args) => {
            let sys = LinearSystem::parse_pf1(&read_input(&args.system)?)?;
            let parts: Vec<&str> = args.q0.split(';').collect();
            if parts.len() != sys.dim() {
                return Err(invalid(format!(
                    "q0 needs {} ';'-separated entries",
                    sys.dim()
                )));
            }
            let q0: Result<Vec<UniPoly>> = parts.iter().map(|p| parse_unipoly(p)).collect();
            let q0 = q0?;
            if q0.iter().all(|p| p.is_zero()) {
                return Err(invalid("q0 must be nonzero"));
            }
            let ode = reduce_to_scalar(&sys, &q0);
            let mut r = Report::new("reduce");
            r.status("ok").field("order", ode.order);
            for (i, (num, den)) in ode.coeffs.iter().enumerate() {
                r.field(&format!("a{}", i + 1), format!("({num}) / ({den})"));
            }
            Ok(r)
        }
    }
}

fn run_bounds(cmd: BoundsCmd) -> Result<Report> {
    let mut r = Report::new("bounds");
    match cmd {
        BoundsCmd::Disconjugacy(args) => {
            let c = parse_coeff_list(&args.coefficients)?;
            if args.length < 0.0 {
                return Err(invalid("interval length must be nonnegative"));
            }
            let d = disconjugacy_test(&c, args.length);
            r.status("ok")
                .field("disconjugate", d.disconjugate)
                .float("margin", d.margin)
                .field("max-roots", if d.disconjugate { (c.len() - 1).to_string() } else { "unbounded-by-this-test".into() });
        }
        BoundsCmd::Interval(args) => {
            let c = parse_coeff_list(&args.coefficients)?;
            if args.length <= 0.0 {
                return Err(invalid("interval length must be positive"));
            }
            let bound = interval_zero_bound(&c, args.length);
            r.status("ok").field("bound", bound);
        }
        BoundsCmd::Index(args) => {
            if args.coefficient_bound < 0.0 || args.length < 0.0 {
                return Err(invalid("bounds must be nonnegative"));
            }
            r.status("ok").float(
                "bound",
                index_bound(args.order, args.coefficient_bound, args.length),
            );
        }
        BoundsCmd::Triangle(args) => {
            if args.coefficient_bound < 0.0 || args.perimeter < 0.0 {
                return Err(invalid("bounds must be nonnegative"));
            }
            r.status("ok").float(
                "bound",
                triangle_zero_bound(args.order, args.coefficient_bound, args.perimeter),
            );
        }
        BoundsCmd::Quasipoly(args) => {
            let mut entries = Vec::new();
            for part in args.lambdas.split(',') {
                let mut halves = part.split(':');
                let lambda: f64 = halves
                    .next()
                    .unwrap()
                    .trim()
                    .parse()
                    .map_err(|_| invalid(format!("bad exponent '{part}'")))?;
                let mult: u32 = match halves.next() {
                    None => 1,
                    Some(m) => m.trim().parse().map_err(|_| invalid("bad multiplicity"))?,
                };
                if halves.next().is_some() {
                    return Err(invalid("exponent entries look like 'lambda[:mult]'"));
                }
                entries.push((lambda, mult));
            }
            let set = ExponentSet::real(&entries);
            let bound = quasipolynomial_bound(&set)?;
            r.status("ok").field("bound", bound);
        }
    }
    Ok(r)
}

fn run_oracle(cmd: OracleCmd) -> Result<Report> {
    match cmd {
        OracleCmd::Integral(args) => {
            let h = hamiltonian_of(&args.hamiltonian)?;
            let (p, q) = parse_one_form_literal(&args.omega)?;
            let tol = quadrature_tol(args.tol);
            let value = abelian_integral(&h, &OneForm::Poly { p, q }, args.level, tol)?;
            let mut r = Report::new("oracle integral");
            r.status("ok").float("value", value);
            r.record(&EvalRecord {
                operation: "abelian-integral".into(),
                inputs_digest: digest_hex(
                    format!("{}|{}|{}", args.hamiltonian, args.omega, args.level).as_bytes(),
                ),
                value: format!("{value:.12e}"),
                error_estimate: tol,
                tolerance: tol,
                pass: true,
            });
            Ok(r)
        }
        OracleCmd::GelfandLeray(args) => {
            let h = hamiltonian_of(&args.hamiltonian)?;
            let (p, q) = parse_one_form_literal(&args.omega)?;
            let omega = KForm::one_form(p, q);
            let eta = match (&args.eta, &args.eta_rational) {
                (Some(text), None) => {
                    let (p, q) = parse_one_form_literal(text)?;
                    OneForm::Poly { p, q }
                }
                (None, Some(text)) => parse_rational_one_form(text)?,
                _ => return Err(invalid("provide exactly one of --eta or --eta-rational")),
            };
            let tol = quadrature_tol(args.tol);
            let gl = gelfand_leray_check(&h, &omega, &eta, args.level, args.h_step, tol)?;
            let mut r = Report::new("oracle gelfand-leray");
            r.status("ok")
                .float("lhs", gl.lhs)
                .float("rhs", gl.rhs)
                .float("residual", gl.residual);
            r.record(&EvalRecord {
                operation: "gelfand-leray".into(),
                inputs_digest: digest_hex(
                    format!("{}|{}|{}", args.hamiltonian, args.omega, args.level).as_bytes(),
                ),
                value: format!("{:.12e}", gl.rhs),
                error_estimate: gl.residual,
                tolerance: tol.max(args.h_step * args.h_step),
                pass: gl.residual <= tol.max(args.h_step * args.h_step) * 1e2,
            });
            Ok(r)
        }
        OracleCmd::VerifyPf(args) => {
            let h = hamiltonian_of(&args.hamiltonian)?;
            let sys = match &args.system {
                Some(path) => HyperGeomSystem::parse_pf1(&read_input(path)?)?,
                None => derive_system(&h)?,
            };
            if args.points < 1 {
                return Err(invalid("need at least one grid point"));
            }
            let grid: Vec<f64> = if args.points == 1 {
                vec![args.t_min]
            } else {
                (0..args.points)
                    .map(|k| {
                        args.t_min
                            + (args.t_max - args.t_min) * k as f64 / (args.points - 1) as f64
                    })
                    .collect()
            };
            let tol = quadrature_tol(args.tol);
            let residual = verify_pf(&h, &sys, &grid, args.h_step, tol)?;
            let mut r = Report::new("oracle verify-pf");
            r.status("ok").float("residual", residual).field("grid-points", grid.len());
            let threshold = 1e-6f64;
            r.record(&EvalRecord {
                operation: "verify-pf".into(),
                inputs_digest: digest_hex(
                    format!("{}|{}|{}|{}", args.hamiltonian, args.t_min, args.t_max, args.points)
                        .as_bytes(),
                ),
                value: format!("{residual:.12e}"),
                error_estimate: residual,
                tolerance: threshold,
                pass: residual <= threshold,
            });
            Ok(r)
        }
    }
}

fn run_chains(args: ChainsArgs) -> Result<Report> {
    let budget = budget_from_env();
    let need = |v: Option<u64>, name: &str| -> Result<u64> {
        v.ok_or_else(|| invalid(format!("--{name} is required for this kind")))
    };
    let value = match args.kind.as_str() {
        "linear" | "exponential" | "word" => {
            let n = need(args.n, "n")?;
            let d = need(args.d, "d")?;
            if n < 1 || d < 1 {
                return Err(invalid("chain bounds require n >= 1 and d >= 1"));
            }
            let kind = match args.kind.as_str() {
                "linear" => ChainKind::Linear,
                "exponential" => ChainKind::Exponential,
                _ => ChainKind::Word,
            };
            let i_big = args.i.map(BigUint::from);
            if matches!(kind, ChainKind::Word) != i_big.is_some() {
                return Err(invalid("--i is required for (exactly) the word kind"));
            }
            chain_bound_with(kind, n, &BigUint::from(d), i_big.as_ref(), budget)?
        }
        "ackermann" => {
            let z = need(args.z, "z")?;
            let x = need(args.x, "x")?;
            let y = need(args.y, "y")?;
            generalized_exponential_with(
                ExpKind::Ackermann,
                &[BigUint::from(z), BigUint::from(x), BigUint::from(y)],
                budget,
            )?
        }
        "tower" => {
            let height = need(args.height, "height")?;
            let k = need(args.k, "k")?;
            generalized_exponential_with(
                ExpKind::Tower,
                &[BigUint::from(height), BigUint::from(k)],
                budget,
            )?
        }
        other => {
            return Err(invalid(format!(
                "unknown kind '{other}' (linear|exponential|word|ackermann|tower)"
            )))
        }
    };
    let mut r = Report::new("chains");
    r.status("ok");
    if value.bits() <= 1 << 16 {
        r.field("value", value.to_string());
    } else {
        r.field("value-bits", value.bits());
    }
    Ok(r)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render());
        }
        Err(err) => {
            let mut r = Report::new("error");
            r.status("error").field("error", &err).field(
                "category",
                match err.category() {
                    ErrorCategory::Domain => "domain",
                    ErrorCategory::Numerical => "numerical",
                    ErrorCategory::Resource => "resource",
                },
            );
            print!("{}", r.render());
            std::process::exit(match err.category() {
                ErrorCategory::Domain => 1,
                ErrorCategory::Numerical => 2,
                ErrorCategory::Resource => 3,
            });
        }
    }
}
