//! Command-line frontend.

use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::invariant::RepScheme;
use crate::kernel::{kernel_generators, kernel_to_json, present_invariant_ring};
use crate::poly::{parse_polynomial_list, Budget, Ideal, MonomialOrder};
use crate::quiver::{parse_presentation, ParseOptions, Presentation};
use crate::verify::{run_suites, SuiteConfig};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub const A1_QUIVER: &str = include_str!("../data/a1.quiver");
pub const A1_ELIMINATION: &str = include_str!("../data/a1_relations.txt");

#[derive(Parser, Debug)]
#[command(
    name = "quiver-inv",
    version,
    about = "Invariant rings of quiver representation schemes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Quiver presentation file.
    pub input: PathBuf,
    /// Override the vertex set K, comma separated; "" for the empty set.
    #[arg(long = "K", value_name = "V1,V2,...")]
    pub k: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Maximum number of Gröbner reduction steps.
    #[arg(long, value_name = "N")]
    pub budget: Option<u64>,
    /// Accept trivial paths e_<vertex> inside relations.
    #[arg(long)]
    pub allow_trivial: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lusztig generators of the invariant ring up to a path length.
    Generators {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        /// Keep only generators with these source words, e.g. ec,fc,fd.
        #[arg(long, value_name = "W1,W2,...")]
        select: Option<String>,
    },
    /// Sandwich generators of the kernel of the restriction map.
    Kernel {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        max_u: usize,
        #[arg(long, default_value_t = 1)]
        max_w: usize,
    },
    /// Presentation of the invariant ring of the representation scheme.
    Present {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long, value_name = "W1,W2,...")]
        select: Option<String>,
        /// Compare the elimination ideal with generators listed in FILE.
        #[arg(long, value_name = "FILE")]
        compare: Option<PathBuf>,
    },
    /// Run the seeded property suites.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        max_u: usize,
        #[arg(long, default_value_t = 2)]
        max_w: usize,
        /// Flip a coefficient of one kernel generator; the run must fail.
        #[arg(long)]
        mutate: bool,
    },
    /// Run the whole pipeline on the bundled A1 example.
    ExampleA1 {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "N")]
        budget: Option<u64>,
    },
}

/// A failed run: exit status plus message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_budget() {
            EXIT_BUDGET
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_failure(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

fn budget_of(n: Option<u64>) -> Budget {
    n.map_or_else(Budget::default, Budget::with_reductions)
}

fn read(path: &FsPath) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| input_failure(format!("cannot read {}: {e}", path.display())))
}

fn load(common: &Common, warn: &mut dyn Write) -> Result<Presentation, Failure> {
    let text = read(&common.input)?;
    let opts = ParseOptions {
        allow_trivial_relations: common.allow_trivial,
    };
    let mut p = parse_presentation(&text, &opts)
        .map_err(|e| input_failure(format!("{}: {e}", common.input.display())))?;
    if let Some(k) = &common.k {
        p = p
            .with_frozen_names(split_list(k).iter().map(String::as_str))
            .map_err(Error::from)?;
    }
    for w in p.warnings() {
        let _ = writeln!(warn, "warning: {w}");
    }
    Ok(p)
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(String::from)
        .collect()
}

/// Normalizes words through the quiver so `e*c` and `ec` select the same path.
fn selection(p: &Presentation, select: &Option<String>) -> Result<Option<Vec<String>>, Failure> {
    let Some(s) = select else { return Ok(None) };
    let words = split_list(s)
        .iter()
        .map(|w| p.quiver.parse_word(w).map(|path| p.quiver.word(&path)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Error::from)?;
    Ok(Some(words))
}

fn emit(
    out: &mut dyn Write,
    format: Format,
    json: serde_json::Value,
    text: String,
) -> Result<(), Failure> {
    let written = match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&json).expect("json values serialize")
        ),
        Format::Text => write!(out, "{text}"),
    };
    written.map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("cannot write output: {e}"),
    })
}

/// Runs one command, writing results to `out` and warnings to `warn`.
/// Returns the exit status of a completed run.
pub fn run(cli: Cli, out: &mut dyn Write, warn: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Generators {
            common,
            max_len,
            select,
        } => {
            let p = load(&common, warn)?;
            let scheme = RepScheme::new(&p)?;
            let mut gens = scheme.lusztig_generators(max_len)?;
            if let Some(words) = selection(&p, &select)? {
                gens = gens.select(&words)?;
            }
            emit(
                out,
                common.format,
                json!({ "generators": gens.to_json() }),
                gens.to_text(),
            )?;
            Ok(EXIT_OK)
        }
        Command::Kernel {
            common,
            max_u,
            max_w,
        } => {
            let p = load(&common, warn)?;
            let scheme = RepScheme::new(&p)?;
            let gens = kernel_generators(&scheme, max_u, max_w)?;
            let text = gens
                .iter()
                .map(|g| format!("{} = {}\n", g.label, g.polynomial))
                .collect();
            emit(
                out,
                common.format,
                json!({ "kernel": kernel_to_json(&scheme, &gens) }),
                text,
            )?;
            Ok(EXIT_OK)
        }
        Command::Present {
            common,
            max_len,
            select,
            compare,
        } => {
            let p = load(&common, warn)?;
            let budget = budget_of(common.budget);
            let scheme = RepScheme::new(&p)?;
            let words = selection(&p, &select)?;
            let ip = present_invariant_ring(&scheme, max_len, words.as_deref(), &budget)?;
            let mut json = ip.to_json();
            let mut text = ip.to_text();
            let mut code = EXIT_OK;
            if let Some(path) = compare {
                let listed = parse_polynomial_list(ip.fresh_ring(), &read(&path)?)
                    .map_err(|e| input_failure(format!("{}: {e}", path.display())))?;
                let other = Ideal::new(ip.fresh_ring(), listed).map_err(Error::from)?;
                let equal = ip
                    .elimination_ideal()
                    .equals(&other, &MonomialOrder::DegRevLex, &budget)
                    .map_err(Error::from)?;
                json["compare"] = json!(equal);
                text.push_str(&format!("compare: {equal}\n"));
                if !equal {
                    code = EXIT_VERIFY;
                }
            }
            emit(out, common.format, json, text)?;
            Ok(code)
        }
        Command::Verify {
            common,
            seed,
            max_len,
            max_u,
            max_w,
            mutate,
        } => {
            let p = load(&common, warn)?;
            let scheme = RepScheme::new(&p)?;
            let cfg = SuiteConfig {
                seed,
                max_len,
                max_u,
                max_w,
                mutate,
                budget: budget_of(common.budget),
            };
            let report = run_suites(&scheme, &cfg)?;
            let json = serde_json::to_value(&report).expect("report serializes");
            emit(out, common.format, json, report.to_text())?;
            Ok(if report.pass() { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::ExampleA1 {
            format,
            seed,
            budget,
        } => {
            let (json, text, pass) = example_a1(seed, &budget_of(budget))?;
            emit(out, format, json, text)?;
            Ok(if pass { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

/// The bundled A1 pipeline: generators, representation ideal, kernel at
/// bound (1,1), elimination compared with the known thirteen relations, and
/// the property suites.
pub fn example_a1(
    seed: u64,
    budget: &Budget,
) -> Result<(serde_json::Value, String, bool), Failure> {
    let p = parse_presentation(A1_QUIVER, &ParseOptions::default()).map_err(Error::from)?;
    let scheme = RepScheme::new(&p)?;
    let words: Vec<String> = ["ec", "fc", "fd"].map(String::from).to_vec();
    let gens = scheme.lusztig_generators(2)?.select(&words)?;
    let kernel = kernel_generators(&scheme, 1, 1)?;
    let ip = present_invariant_ring(&scheme, 2, Some(&words), budget)?;
    let expected = Ideal::new(
        ip.fresh_ring(),
        parse_polynomial_list(ip.fresh_ring(), A1_ELIMINATION).map_err(Error::from)?,
    )
    .map_err(Error::from)?;
    let equal = ip
        .elimination_ideal()
        .equals(&expected, &MonomialOrder::DegRevLex, budget)
        .map_err(Error::from)?;
    let report = run_suites(
        &scheme,
        &SuiteConfig {
            seed,
            max_u: 1,
            max_w: 1,
            budget: *budget,
            ..SuiteConfig::default()
        },
    )?;
    let rep_ideal: Vec<String> = scheme
        .rep_ideal()
        .generators()
        .iter()
        .map(|g| g.to_string())
        .collect();
    let json = json!({
        "generators": gens.to_json(),
        "rep_ideal": rep_ideal,
        "kernel": kernel_to_json(&scheme, &kernel),
        "presentation": ip.to_json(),
        "compare": equal,
        "verify": serde_json::to_value(&report).expect("report serializes"),
    });
    let mut text = String::from("generators:\n");
    text.push_str(&gens.to_text());
    text.push_str("representation ideal:\n");
    for g in &rep_ideal {
        text.push_str(&format!("  {g}\n"));
    }
    text.push_str(&format!(
        "kernel generators at bound (1,1): {}\n",
        kernel.len()
    ));
    text.push_str(&ip.to_text());
    text.push_str(&format!("compare: {equal}\n"));
    text.push_str(&report.to_text());
    Ok((json, text, equal && report.pass()))
}
