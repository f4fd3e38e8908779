mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use qkz_core::asm::{asm_count, asm_refined_row};
use qkz_core::loopmodel::{loop_ground_state, partial_sum_xi};
use qkz_core::qkz::json::{big_number, table_json};
use qkz_core::qkz::{psi_inhom, psi_table, psibar_inhom};
use qkz_core::sampling::random_admissible_z;
use qkz_core::{ComponentIndex, Error, ExactScalar, Rat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use render::{Artifact, Format};
use verify::{Params, Suite};

/// Largest n (and (N − 1)/2) accepted without --allow-large.
const SIZE_GUARD: usize = 8;
/// Largest N for the inhomogeneous suites without --allow-large.
const SITE_GUARD: usize = 9;

#[derive(Parser)]
#[command(
    name = "qkz",
    version,
    about = "Exact qKZ, XXZ and loop-model ground states"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "pretty", global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Lift the default size guards.
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homogeneous components ψ_a, symbolic in τ or at a given τ.
    GroundState {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: Option<String>,
    },
    /// Loop-model ground state with its partial sums ξ_{(1,2m)}.
    Loop {
        #[arg(long)]
        n: usize,
    },
    /// A(n) and the refined counts A(n, r).
    AsmTable {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// One component Ψ_a(z) (or Ψ̄_b with --bar) at exact parameters.
    InhomComponent(InhomArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct InhomArgs {
    #[arg(long = "N")]
    sites: usize,
    /// Comma-separated positions, e.g. 1,3.
    #[arg(long, value_delimiter = ',')]
    a: Vec<usize>,
    /// Treat the positions as up arrows and evaluate Ψ̄.
    #[arg(long)]
    bar: bool,
    #[arg(long, default_value = "3/2")]
    q: String,
    /// Comma-separated spectral parameters; drawn from --seed when absent.
    #[arg(long, value_delimiter = ',')]
    z: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long = "N", default_value_t = 5)]
    sites: usize,
    #[arg(long)]
    max_n: Option<usize>,
    /// "omega+", "omega-" or a rational; random generic values when absent.
    #[arg(long)]
    q: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
}

enum Failure {
    Usage(String),
    Verification,
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Degenerate(_)
            | Error::InvalidIndex(_)
            | Error::InvalidArgument(_)
            | Error::Parse(_) => Failure::Usage(e.to_string()),
            e => Failure::Compute(e),
        }
    }
}

fn guard(value: usize, limit: usize, what: &str, allow_large: bool) -> Result<(), Failure> {
    if value > limit && !allow_large {
        return Err(Failure::Usage(format!(
            "{what} = {value} exceeds {limit}; pass --allow-large to run it"
        )));
    }
    Ok(())
}

fn parse_q(s: &str) -> Result<ExactScalar, Failure> {
    let q: ExactScalar = s.parse()?;
    if q.is_zero() || q.is_one() || (-&q).is_one() {
        return Err(Failure::Usage(format!("q = {q} is not generic")));
    }
    Ok(q)
}

fn ground_state(n: usize, tau: Option<String>, allow_large: bool) -> Result<Artifact, Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    guard(n, SIZE_GUARD, "n", allow_large)?;
    let tau: Option<Rat> = tau.map(|t| t.parse()).transpose()?;
    let table = psi_table(n);
    let value = |p: &qkz_core::TauPoly| match &tau {
        Some(t) => p.eval(t).to_string(),
        None => p.to_string(),
    };
    let rows = table
        .entries()
        .iter()
        .map(|(a, p)| vec![a.to_string(), value(p)])
        .collect();
    let pretty = table
        .entries()
        .iter()
        .map(|(a, p)| format!("ψ_{{{a}}} = {}", value(p)))
        .collect();
    Ok(Artifact {
        json: table_json(&table, tau.as_ref()),
        header: vec!["a", "value"],
        rows,
        pretty,
    })
}

fn loop_state(n: usize, allow_large: bool) -> Result<Artifact, Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    guard(n, SIZE_GUARD, "n", allow_large)?;
    let xi = loop_ground_state(n)?;
    let sums = (1..=n)
        .map(|m| partial_sum_xi(2 * m, &xi))
        .collect::<Result<Vec<BigInt>, _>>()?;
    let total = xi.total();
    let mut json = xi.to_json();
    json["partial_sums"] = sums.iter().map(big_number).collect();
    json["total"] = big_number(&total);
    let rows = xi
        .iter()
        .map(|(p, v)| vec![p.to_string(), v.to_string()])
        .collect();
    let mut pretty: Vec<String> = xi.iter().map(|(p, v)| format!("{p} {v}")).collect();
    let shown: Vec<String> = sums.iter().map(|s| s.to_string()).collect();
    pretty.push(format!("partial sums ξ_(1,2m): {}", shown.join(", ")));
    pretty.push(format!("total: {total}"));
    Ok(Artifact {
        json,
        header: vec!["pattern", "value"],
        rows,
        pretty,
    })
}

fn asm_table(max_n: usize) -> Artifact {
    let table: Vec<(usize, BigInt, Vec<BigInt>)> = (1..=max_n)
        .map(|n| (n, asm_count(n as u64), asm_refined_row(n as u64)))
        .collect();
    let json = table
        .iter()
        .map(|(n, a, row)| json!({ "n": n, "A": big_number(a), "refined": row.iter().map(big_number).collect::<Vec<_>>() }))
        .collect();
    let joined = |row: &[BigInt]| {
        row.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let rows = table
        .iter()
        .map(|(n, a, row)| vec![n.to_string(), a.to_string(), joined(row)])
        .collect();
    let pretty = table
        .iter()
        .map(|(n, a, row)| format!("A({n}) = {a}; A({n}, r) = {}", joined(row)))
        .collect();
    Artifact {
        json,
        header: vec!["n", "A", "refined"],
        rows,
        pretty,
    }
}

fn inhom_component(args: InhomArgs, allow_large: bool) -> Result<Artifact, Failure> {
    let sites = args.sites;
    if sites < 3 || sites.is_multiple_of(2) {
        return Err(Failure::Usage(format!(
            "N must be odd and at least 3, got {sites}"
        )));
    }
    guard(sites, 2 * SIZE_GUARD + 1, "N", allow_large)?;
    let n = (sites - 1) / 2;
    let q = parse_q(&args.q)?;
    let z: Vec<ExactScalar> = if args.z.is_empty() {
        random_admissible_z(&mut ChaCha8Rng::seed_from_u64(args.seed), sites, &q, |_| {
            true
        })
    } else {
        args.z.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
    };
    let (idx, value) = if args.bar {
        let b = ComponentIndex::up(n, args.a)?;
        let v = psibar_inhom(&b, &z, &q)?;
        (b, v)
    } else {
        let a = ComponentIndex::down(n, args.a)?;
        let v = psi_inhom(&a, &z, &q)?;
        (a, v)
    };
    let symbol = if args.bar { "Ψ̄" } else { "Ψ" };
    let zs: Vec<String> = z.iter().map(|x| x.to_string()).collect();
    let json = json!({ "N": sites, "kind": if args.bar { "up" } else { "down" }, "a": idx.indices(), "q": q.to_string(), "z": zs, "value": value.to_string() });
    Ok(Artifact {
        json,
        header: vec!["a", "q", "z", "value"],
        rows: vec![vec![
            idx.to_string(),
            q.to_string(),
            zs.join(" "),
            value.to_string(),
        ]],
        pretty: vec![format!(
            "{symbol}_{{{idx}}}(z) = {value}  (q = {q}, z = [{}])",
            zs.join(", ")
        )],
    })
}

fn verify(args: VerifyArgs, allow_large: bool) -> Result<(Artifact, bool), Failure> {
    let suite = args.suite;
    let max_n = args.max_n.unwrap_or(suite.default_max_n());
    if max_n == 0 {
        return Err(Failure::Usage("--max-n must be at least 1".into()));
    }
    guard(max_n, SIZE_GUARD, "max-n", allow_large)?;
    if suite.uses_sites() {
        if args.sites < 3 || args.sites.is_multiple_of(2) {
            return Err(Failure::Usage(format!(
                "N must be odd and at least 3, got {}",
                args.sites
            )));
        }
        guard(args.sites, SITE_GUARD, "N", allow_large)?;
    }
    let q = args.q.as_deref().map(parse_q).transpose()?;
    if suite == Suite::TransferEigen {
        if let Some(q) = &q {
            if *q != ExactScalar::omega(1) && *q != ExactScalar::omega(-1) {
                return Err(Failure::Usage(
                    "transfer-eigen needs q = omega+ or omega-".into(),
                ));
            }
        }
    }
    let params = Params {
        sites: args.sites,
        max_n,
        q,
        seed: args.seed,
        trials: args.trials,
    };
    Ok(verify::run(suite, &params))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::GroundState { n, tau } => ground_state(n, tau, cli.allow_large).map(|a| (a, true)),
        Command::Loop { n } => loop_state(n, cli.allow_large).map(|a| (a, true)),
        Command::AsmTable { max_n } => Ok((asm_table(max_n), true)),
        Command::InhomComponent(args) => inhom_component(args, cli.allow_large).map(|a| (a, true)),
        Command::Verify(args) => verify(args, cli.allow_large),
    };
    let result = result.and_then(|(artifact, ok)| {
        let text = artifact.render(cli.format);
        match &cli.output {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{text}"),
        }
        if ok {
            Ok(())
        } else {
            Err(Failure::Verification)
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
