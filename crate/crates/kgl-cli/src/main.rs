//! `kgl` — canonical decompositions, divisor calculus and ampleness tests
//! on the wonderful compactification of GL_n, as JSON on stdout.
//!
//! Exit codes: 0 success, 1 self-test failure, 2 usage or input error.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use kgl::decomp::{decompose, inclusion_report, restriction_report};
use kgl::selftest::{run_all, SelftestConfig};
use kgl::toric::{build_fan, is_ample, is_nef, restrict_to_toric};
use kgl::weights::closed_orbit_weight;
use kgl::{Decomposition, LineBundleClass, OrbitSpec};

/// Indexing note carried by every JSON payload.
const INDEXING: &str = "divisor data 0-based (i in [0,n-1]); weight entries 1-based (i in [1,n])";

#[derive(Parser)]
#[command(
    name = "kgl",
    version,
    about = "Section-space decompositions and divisor/ampleness calculus on the wonderful compactification of GL_n",
    long_about = None
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose H^0 of a line bundle restricted to an orbit closure.
    Decompose(BundleArgs),
    /// Report how sections restrict from the ambient variety to an orbit closure.
    Restrict(BundleArgs),
    /// Report the inclusion of section spaces for exponentwise-smaller classes.
    Include(IncludeArgs),
    /// Nef/ampleness of a class (or of the bundle built from a weight) on the toric closure.
    Ample(AmpleArgs),
    /// Emit the fan of the toric closure.
    Fan(FanArgs),
    /// Run the full cross-validation grid and print a pass/fail table.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct BundleArgs {
    /// Rank n.
    #[arg(long)]
    n: usize,
    /// Exponents of Z_0..Z_{n-1} (comma list).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    m: Vec<i64>,
    /// Exponents of Y_0..Y_{n-1} (comma list).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    l: Vec<i64>,
    /// det(E) twist exponent.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    e: i64,
    /// det(F) twist exponent.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    d: i64,
    /// Subset I of [0, n-1] (comma list).
    #[arg(long = "I", value_delimiter = ',', default_value = "")]
    set_i: Vec<String>,
    /// Subset J of [0, n-1] (comma list).
    #[arg(long = "J", value_delimiter = ',', default_value = "")]
    set_j: Vec<String>,
    /// Render a human-readable table instead of JSON.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct IncludeArgs {
    #[command(flatten)]
    bundle: BundleArgs,
    /// Exponents m' of the smaller class L' (comma list; default: equal to --m).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    mp: Option<Vec<i64>>,
    /// Exponents l' of the smaller class L' (comma list; default: equal to --l).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lp: Option<Vec<i64>>,
}

#[derive(Args)]
struct AmpleArgs {
    /// Rank n.
    #[arg(long)]
    n: usize,
    /// Nondecreasing weight a_1..a_n; builds the associated monomial bundle.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["m", "l"])]
    a: Option<Vec<i64>>,
    /// Exponents of Z_0..Z_{n-1}.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    m: Option<Vec<i64>>,
    /// Exponents of Y_0..Y_{n-1}.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    l: Option<Vec<i64>>,
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct FanArgs {
    /// Rank n (1..=6).
    #[arg(long)]
    n: usize,
    /// Render rays and cones as plain-text tables instead of JSON.
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct SelftestArgs {
    /// Radius r of the rank-2 oracle grid [-r, r+1]^4.
    #[arg(long, default_value_t = 2)]
    grid_radius: i64,
    /// Sample count for the randomized criteria.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Debug fault injection: corrupt one toric rule coefficient; the
    /// consistency criterion must then fail.
    #[arg(long, hide = true)]
    corrupt_toric: bool,
}

fn die(msg: impl std::fmt::Display) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

fn parse_subset(raw: &[String]) -> Vec<usize> {
    raw.iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .unwrap_or_else(|_| die(format!("invalid subset entry {s:?}")))
        })
        .collect()
}

fn build_inputs(args: &BundleArgs) -> (LineBundleClass, OrbitSpec) {
    if args.m.len() != args.n || args.l.len() != args.n {
        die(format!(
            "expected {} exponents in --m and --l, got {} and {}",
            args.n,
            args.m.len(),
            args.l.len()
        ));
    }
    let class = LineBundleClass::new(args.m.clone(), args.l.clone(), args.e, args.d)
        .unwrap_or_else(|e| die(e));
    let spec = OrbitSpec::new(args.n, parse_subset(&args.set_i), parse_subset(&args.set_j))
        .unwrap_or_else(|e| die(e));
    (class, spec)
}

#[derive(Serialize)]
struct DecomposePayload {
    #[serde(flatten)]
    decomposition: Decomposition,
    indexing: &'static str,
}

fn emit_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).unwrap_or_else(|e| die(e))
    );
}

fn cmd_decompose(args: &BundleArgs) {
    let (class, spec) = build_inputs(args);
    let dec = decompose(&class, &spec).unwrap_or_else(|e| die(e));
    if args.table {
        println!("{:<20} {:<20} {:>12}", "a", "b", "dim");
        for entry in dec.entries() {
            println!(
                "{:<20} {:<20} {:>12}",
                format!("{:?}", entry.weight.a()),
                format!("{:?}", entry.weight.b()),
                entry.dim
            );
        }
        println!("total {}", dec.total_dim());
    } else {
        emit_json(&DecomposePayload {
            decomposition: dec,
            indexing: INDEXING,
        });
    }
}

#[derive(Serialize)]
struct RestrictPayload {
    #[serde(flatten)]
    report: kgl::decomp::RestrictionReport,
    indexing: &'static str,
}

fn cmd_restrict(args: &BundleArgs) {
    let (class, spec) = build_inputs(args);
    let report = restriction_report(&class, &spec).unwrap_or_else(|e| die(e));
    if args.table {
        println!("common weights: {}", report.common.len());
        for w in &report.common {
            println!("  a = {:?}, b = {:?}", w.a(), w.b());
        }
        println!("kernel_dim        {}", report.kernel_dim);
        println!("image_dim         {}", report.image_dim);
        println!("ambient_extra_dim {}", report.ambient_extra_dim);
    } else {
        emit_json(&RestrictPayload {
            report,
            indexing: INDEXING,
        });
    }
}

#[derive(Serialize)]
struct IncludePayload {
    #[serde(flatten)]
    report: kgl::decomp::InclusionReport,
    indexing: &'static str,
}

fn cmd_include(args: &IncludeArgs) {
    let (sup, spec) = build_inputs(&args.bundle);
    let mp = args.mp.clone().unwrap_or_else(|| args.bundle.m.clone());
    let lp = args.lp.clone().unwrap_or_else(|| args.bundle.l.clone());
    let sub = LineBundleClass::new(mp, lp, args.bundle.e, args.bundle.d).unwrap_or_else(|e| die(e));
    let report = inclusion_report(&sub, &sup, &spec).unwrap_or_else(|e| die(e));
    if args.bundle.table {
        println!("subset_ok    {}", report.subset_ok);
        println!("new weights  {}", report.new_weights.len());
        for w in &report.new_weights {
            println!("  a = {:?}, b = {:?}", w.a(), w.b());
        }
        println!("dim_increase {}", report.dim_increase);
    } else {
        emit_json(&IncludePayload {
            report,
            indexing: INDEXING,
        });
    }
}

#[derive(Serialize)]
struct AmplePayload {
    nef: bool,
    ample: bool,
    twisted_ample: bool,
    closed_orbit_sections_nonzero: bool,
    indexing: &'static str,
}

fn cmd_ample(args: &AmpleArgs) {
    let class = match (&args.a, &args.m, &args.l) {
        (Some(a), None, None) => {
            if a.len() != args.n {
                die(format!(
                    "expected {} entries in --a, got {}",
                    args.n,
                    a.len()
                ));
            }
            if a.windows(2).any(|w| w[0] > w[1]) {
                die("--a must be nondecreasing");
            }
            kgl::toric::bundle_from_monomial(a).unwrap_or_else(|e| die(e))
        }
        (None, Some(m), Some(l)) => {
            if m.len() != args.n || l.len() != args.n {
                die(format!("expected {} exponents in --m and --l", args.n));
            }
            LineBundleClass::new(m.clone(), l.clone(), 0, 0).unwrap_or_else(|e| die(e))
        }
        _ => die("give either --a or both --m and --l"),
    };

    let fan = build_fan(args.n).unwrap_or_else(|e| die(e));
    let divisor = restrict_to_toric(&class).unwrap_or_else(|e| die(e));
    let nef = is_nef(&fan, &divisor).unwrap_or_else(|e| die(e));
    let ample = is_ample(&fan, &divisor).unwrap_or_else(|e| die(e));

    // Anti-canonical twist and closed-orbit data, reported uniformly.
    let omega = kgl::divisors::dualizing_class(args.n).unwrap_or_else(|e| die(e));
    let twisted = LineBundleClass::new(
        class
            .m()
            .iter()
            .zip(omega.m())
            .map(|(&mi, &wi)| mi - wi - 1)
            .collect(),
        class
            .l()
            .iter()
            .zip(omega.l())
            .map(|(&li, &wi)| li - wi - 1)
            .collect(),
        class.e(),
        class.d(),
    )
    .unwrap_or_else(|e| die(e));
    let twisted_ample = is_ample(
        &fan,
        &restrict_to_toric(&twisted).unwrap_or_else(|e| die(e)),
    )
    .unwrap_or_else(|e| die(e));
    let closed_orbit_sections_nonzero = (0..=args.n).all(|r| {
        closed_orbit_weight(&class, r, args.n - r)
            .map(|w| w.a().windows(2).all(|p| p[0] <= p[1]))
            .unwrap_or_else(|e| die(e))
    });

    let payload = AmplePayload {
        nef,
        ample,
        twisted_ample,
        closed_orbit_sections_nonzero,
        indexing: INDEXING,
    };
    if args.table {
        println!("nef                            {}", payload.nef);
        println!("ample                          {}", payload.ample);
        println!("twisted_ample                  {}", payload.twisted_ample);
        println!(
            "closed_orbit_sections_nonzero  {}",
            payload.closed_orbit_sections_nonzero
        );
    } else {
        emit_json(&payload);
    }
}

#[derive(Serialize)]
struct FanPayload {
    #[serde(flatten)]
    fan: kgl::toric::Fan,
    indexing: &'static str,
}

fn cmd_fan(args: &FanArgs) {
    let fan = build_fan(args.n).unwrap_or_else(|e| die(e));
    if args.table {
        println!(
            "fan in Z^{}: {} rays, {} maximal cones",
            fan.n,
            fan.rays.len(),
            fan.cones.len()
        );
        println!("rays:");
        for (i, ray) in fan.rays.iter().enumerate() {
            println!("  {:>3}  {:?}", i, ray.vector);
        }
        println!("maximal cones (perm | split | ray indices):");
        for cone in &fan.cones {
            println!("  {:?} | {} | {:?}", cone.perm, cone.split, cone.rays);
        }
    } else {
        emit_json(&FanPayload {
            fan,
            indexing: INDEXING,
        });
    }
}

fn cmd_selftest(args: &SelftestArgs) -> i32 {
    let cfg = SelftestConfig {
        grid_radius: args.grid_radius,
        random_samples: args.samples,
        corrupt_toric: args.corrupt_toric,
        ..SelftestConfig::default()
    };
    let outcomes = run_all(&cfg);
    let mut all_pass = true;
    for outcome in &outcomes {
        println!("{}", outcome.render());
        all_pass &= outcome.passed;
    }
    println!("selftest: {}", if all_pass { "PASS" } else { "FAIL" });
    i32::from(!all_pass)
}

fn main() {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Decompose(args) => {
            cmd_decompose(args);
            0
        }
        Command::Restrict(args) => {
            cmd_restrict(args);
            0
        }
        Command::Include(args) => {
            cmd_include(args);
            0
        }
        Command::Ample(args) => {
            cmd_ample(args);
            0
        }
        Command::Fan(args) => {
            cmd_fan(args);
            0
        }
        Command::Selftest(args) => cmd_selftest(args),
    };
    std::process::exit(code);
}
