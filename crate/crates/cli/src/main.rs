use clap::{Args, Parser, Subcommand, ValueEnum};
use specquad::specfun::{self, Accel, EvalConfig, EvalReport, SpecFunError};
use specquad::{Complex, EngineConfig};
use specquad_cli::{checks, output};

/// Exit codes: 0 success, 1 usage/domain/evaluation error, 2 ran but did not
/// converge (or a validation check failed).
#[derive(Parser)]
#[command(name = "specquad", version, about = "Special functions by trapezoidal sums on complex contours")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one function at one point
    Eval(EvalArgs),
    /// Evaluate and print the mesh-refinement table
    Table(EvalArgs),
    /// Run the built-in identity and oracle checks
    Validate(ValidateArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Function {
    K,
    J,
    N,
    I,
    Gamma,
    Zeta,
}

impl Function {
    fn name(self) -> &'static str {
        match self {
            Function::K => "k",
            Function::J => "j",
            Function::N => "n",
            Function::I => "i",
            Function::Gamma => "gamma",
            Function::Zeta => "zeta",
        }
    }

    fn real_argument(self) -> bool {
        matches!(self, Function::K | Function::J | Function::N | Function::I)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AccelArg {
    None,
    Sinh,
    Cubic,
}

impl AccelArg {
    fn to_accel(self) -> Accel {
        match self {
            AccelArg::None => Accel::None,
            AccelArg::Sinh => Accel::Sinh,
            AccelArg::Cubic => Accel::Cubic,
        }
    }

    fn name(self) -> &'static str {
        match self {
            AccelArg::None => "none",
            AccelArg::Sinh => "sinh",
            AccelArg::Cubic => "cubic",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Real,
    Contour,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Csv,
    Json,
}

#[derive(Args)]
struct EvalArgs {
    /// Which function to evaluate
    #[arg(long, value_enum)]
    function: Function,

    /// Order (ignored by gamma and zeta)
    #[arg(long, default_value_t = 0.0)]
    nu: f64,

    /// Real argument; shorthand for --z-re with --z-im 0
    #[arg(long, conflicts_with_all = ["z_re", "z_im"])]
    z: Option<f64>,

    /// Real part of the argument
    #[arg(long)]
    z_re: Option<f64>,

    /// Imaginary part of the argument
    #[arg(long, requires = "z_re")]
    z_im: Option<f64>,

    /// Starting mesh spacing
    #[arg(long)]
    h0: Option<f64>,

    /// Relative convergence tolerance between refinement levels
    #[arg(long)]
    tol: Option<f64>,

    /// Maximum number of mesh halvings
    #[arg(long)]
    max_halvings: Option<u32>,

    /// Relative cutoff for truncating the tails of the sum
    #[arg(long)]
    cutoff: Option<f64>,

    /// Variable-change acceleration (default chosen per function)
    #[arg(long, value_enum)]
    accel: Option<AccelArg>,

    /// Integration route, for functions that have more than one
    #[arg(long, value_enum)]
    route: Option<RouteArg>,

    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
struct ValidateArgs {
    /// Run a single check group
    #[arg(long)]
    only: Option<String>,

    #[arg(long, hide = true, default_value_t = 0.0)]
    perturb_k: f64,

    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

fn eval_function(
    f: Function,
    nu: f64,
    z: Complex,
    route: Option<RouteArg>,
    cfg: &EvalConfig,
) -> Result<EvalReport, SpecFunError> {
    match f {
        Function::K => specfun::bessel_k(nu, z.re, cfg),
        Function::J => specfun::bessel_j(nu, z.re, cfg),
        Function::N => specfun::bessel_n(nu, z.re, cfg),
        Function::I => match route {
            Some(RouteArg::Contour) => specfun::bessel_i_contour(nu, z.re, cfg),
            _ => specfun::bessel_i(nu, z.re, cfg),
        },
        Function::Gamma => specfun::gamma(z, cfg),
        Function::Zeta => specfun::zeta(z, cfg),
    }
}

fn run_eval(args: &EvalArgs, table_mode: bool) -> i32 {
    let z = match (args.z, args.z_re) {
        (Some(z), _) => Complex::new(z, 0.0),
        (None, Some(re)) => Complex::new(re, args.z_im.unwrap_or(0.0)),
        (None, None) => {
            eprintln!("missing argument: pass --z, or --z-re with optional --z-im");
            return 1;
        }
    };
    if args.function.real_argument() && z.im != 0.0 {
        eprintln!("function {} takes a real argument", args.function.name());
        return 1;
    }
    if args.route == Some(RouteArg::Contour) && args.function != Function::I {
        eprintln!("--route contour is only available for --function i");
        return 1;
    }

    let mut engine = EngineConfig::default();
    let mut overrides: Vec<String> = Vec::new();
    if let Some(v) = args.h0 {
        engine.h0 = v;
        overrides.push(format!("h0 = {v}"));
    }
    if let Some(v) = args.tol {
        engine.convergence_tol = v;
        overrides.push(format!("tol = {v}"));
    }
    if let Some(v) = args.max_halvings {
        engine.max_halvings = v;
        overrides.push(format!("max-halvings = {v}"));
    }
    if let Some(v) = args.cutoff {
        engine.truncation_cutoff = v;
        overrides.push(format!("cutoff = {v}"));
    }
    if let Some(a) = args.accel {
        overrides.push(format!("accel = {}", a.name()));
    }
    if args.route == Some(RouteArg::Contour) {
        overrides.push("route = contour".into());
    }
    let cfg = EvalConfig {
        engine,
        accel: args.accel.map(AccelArg::to_accel),
    };

    let rep = match eval_function(args.function, args.nu, z, args.route, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return 1;
        }
    };

    let rec = output::OutputRecord::from_report(args.function.name(), args.nu, z, &rep);
    let echo: String = overrides
        .iter()
        .map(|o| format!("# override: {o}\n"))
        .collect();
    let body = match (table_mode, args.format) {
        (false, Format::Human) => output::eval_human(&rec),
        (false, Format::Csv) => output::eval_csv(&rec),
        (false, Format::Json) => output::eval_json(&rec),
        (true, Format::Human) => output::table_human(&rec, &rep.table),
        (true, Format::Csv) => output::table_csv(&rep.table),
        (true, Format::Json) => output::table_json(&rec, &rep.table),
    };
    if args.format == Format::Human {
        print!("{echo}{body}");
    } else {
        eprint!("{echo}");
        print!("{body}");
    }
    if rep.result.converged {
        0
    } else {
        2
    }
}

fn run_validate(args: &ValidateArgs) -> i32 {
    let checks = match checks::run_all(args.only.as_deref(), args.perturb_k) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("{msg}");
            return 1;
        }
    };
    let echo = if args.perturb_k != 0.0 {
        format!("# override: perturb-k = {}\n", args.perturb_k)
    } else {
        String::new()
    };
    let body = match args.format {
        Format::Human => output::checks_human(&checks),
        Format::Csv => output::checks_csv(&checks),
        Format::Json => output::checks_json(&checks),
    };
    if args.format == Format::Human {
        print!("{echo}{body}");
    } else {
        eprint!("{echo}");
        print!("{body}");
    }
    if checks.iter().all(|c| c.pass) {
        0
    } else {
        2
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    let code = match &cli.cmd {
        Cmd::Eval(args) => run_eval(args, false),
        Cmd::Table(args) => run_eval(args, true),
        Cmd::Validate(args) => run_validate(args),
    };
    std::process::exit(code);
}
