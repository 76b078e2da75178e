use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use godel_lab::codec::{self, Category, Decoded};
use godel_lab::diagonal::diagonalize;
use godel_lab::lab::{self, ClaimId, SearchOutcome};
use godel_lab::predicates::Predicate;
use godel_lab::proof::{check_proof, load_proof_script, Proof};
use godel_lab::syntax::{parse_expression, parse_formula, Sentence};
use godel_lab::{Arithmetic, CharValue, CodeExpr, Materialized, Mode, RunConfig};

#[derive(Parser)]
#[command(
    name = "godel-lab",
    version,
    about = "Gödel numbers, proof predicates and their lemmas, evaluated"
)]
struct Cli {
    /// PA, PF (pure logic) or TOY
    #[arg(long, global = true, default_value = "PA")]
    mode: Mode,
    /// Symbol table file (`symbol code` per line)
    #[arg(long, global = true)]
    table: Option<PathBuf>,
    /// Largest integer, in bits, that is ever materialized
    #[arg(long, global = true, default_value_t = godel_lab::code::DEFAULT_BIT_LIMIT)]
    bits: u64,
    /// Samples per claim for lemma-lab
    #[arg(long, global = true, default_value_t = 10_000)]
    budget: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Code of a formula or term, or of a proof script
    Encode {
        text: Option<String>,
        #[arg(long, conflicts_with = "text")]
        proof: Option<PathBuf>,
        /// Also print the list notation
        #[arg(long)]
        list: bool,
    },
    /// Formula, term or proof with the given code (decimal or list notation)
    Decode {
        code: String,
        #[arg(long)]
        proof: bool,
    },
    /// Evaluate Gd, EVbl, Fml, Ax, MP, Gen, Pf, Prf, Rf or Ref. Arguments are
    /// codes, or formulas and terms in parentheses
    EvalPred { name: String, args: Vec<String> },
    /// Check a .paproof script structurally and arithmetically
    CheckProof { file: PathBuf },
    /// Look for a proof of at most `bound` lines
    SearchProof {
        formula: String,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Diagonal sentence of a formula with one free variable
    Diagonalize {
        #[arg(long)]
        phi: String,
    },
    /// Evaluate the claims; with --replay, trace the incompleteness argument
    /// on a proof of --delta or of its negation instead
    LemmaLab {
        /// A single claim instead of the full report
        #[arg(long)]
        claim: Option<ClaimId>,
        #[arg(long, requires = "delta")]
        replay: Option<PathBuf>,
        #[arg(long)]
        delta: Option<String>,
    },
}

struct Output {
    target: Option<PathBuf>,
    buf: String,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        self.buf.push('\n');
    }

    fn flush(self) -> Result<()> {
        match self.target {
            Some(p) => {
                std::fs::write(&p, self.buf).with_context(|| format!("writing {}", p.display()))
            }
            None => {
                std::io::stdout().write_all(self.buf.as_bytes())?;
                Ok(())
            }
        }
    }
}

fn config(cli: &Cli) -> RunConfig {
    RunConfig {
        mode: cli.mode,
        table: cli.table.clone(),
        bits: cli.bits,
        budget: cli.budget,
        seed: cli.seed,
        out: cli.out.clone(),
    }
}

fn load_proof(path: &Path) -> Result<Proof> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(load_proof_script(&text)?)
}

fn print_code(out: &mut Output, code: &CodeExpr, bits: u64, list: bool) {
    out.line(code.factored());
    if list {
        out.line(code.to_string());
    }
    match code.materialize(bits) {
        Materialized::Value(n) => out.line(format!("= {n}")),
        Materialized::Overflow { estimated_bits } => out.line(format!(
            "(about {estimated_bits} bits, above the --bits limit)"
        )),
    }
}

/// A code in decimal or list notation, or an expression to encode.
fn code_arg(arg: &str, arith: &Arithmetic) -> Result<CodeExpr> {
    let t = arg.trim();
    if t.starts_with('[') || t.chars().all(|c| c.is_ascii_digit()) {
        return CodeExpr::parse_notation(t).with_context(|| format!("argument {arg:?}"));
    }
    let e = parse_expression(t).with_context(|| format!("argument {arg:?}"))?;
    Ok(codec::encode_expression(&e, arith.table())?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = config(&cli);
    let arith = cfg.arithmetic()?;
    let table = arith.table();
    let mut out = Output {
        target: cfg.out.clone(),
        buf: String::new(),
    };
    let mut code = ExitCode::SUCCESS;
    match cli.command {
        Command::Encode { text, proof, list } => {
            let c = match (text, proof) {
                (_, Some(path)) => load_proof(&path)?.encode(table)?,
                (Some(text), None) => codec::encode_expression(&parse_expression(&text)?, table)?,
                (None, None) => bail!("give an expression or --proof <file>"),
            };
            print_code(&mut out, &c, cfg.bits, list);
        }
        Command::Decode { code: text, proof } => {
            let c = CodeExpr::parse_notation(&text)?;
            let cat = if proof {
                Category::Proof
            } else {
                Category::Expression
            };
            match codec::decode(&c, cat, table)? {
                Decoded::Formula(f) => out.line(f.to_string()),
                Decoded::Term(t) => out.line(t.to_string()),
                Decoded::Proof(lines) => {
                    for f in lines {
                        out.line(f.to_string());
                    }
                }
            }
        }
        Command::EvalPred { name, args } => {
            let p: Predicate = name.parse()?;
            let args: Vec<CodeExpr> = args
                .iter()
                .map(|a| code_arg(a, &arith))
                .collect::<Result<_>>()?;
            let value = arith.evaluate(p, &args)?;
            out.line(value.to_string());
            if let Predicate::Char(id) = p {
                out.line(format!("C_{} = {}", id.name(), CharValue::of(value)));
            }
        }
        Command::CheckProof { file } => {
            let p = load_proof(&file)?;
            let verdict = check_proof(&p, cfg.mode);
            let c = p.encode(table)?;
            let last = codec::encode_formula(p.last_formula(), table)?;
            let prf = arith.prf(&c);
            let pf = arith.pf(&c, &last);
            out.line(format!("structural: {verdict}"));
            out.line(format!("Prf(⌜p⌝): {prf}"));
            out.line(format!("Pf(⌜p⌝, ⌜last line⌝): {pf}"));
            if verdict.is_accept() != prf || prf != pf {
                out.flush()?;
                bail!("internal error: structural and arithmetic verdicts disagree");
            }
            if !verdict.is_accept() {
                code = ExitCode::from(1);
            }
        }
        Command::SearchProof { formula, bound } => {
            if bound == 0 {
                bail!("--bound must be at least 1");
            }
            let f = parse_formula(&formula)?;
            match lab::bounded_proof_search(&f, bound, cfg.mode) {
                SearchOutcome::Found(p) => out.buf.push_str(&p.to_script()),
                SearchOutcome::Exhausted { bound } => out.line(format!("exhausted({bound})")),
            }
        }
        Command::Diagonalize { phi } => {
            let phi = parse_formula(&phi)?;
            let d = diagonalize(&phi, table)?;
            let m = d.m_summary();
            out.line(format!("phi:   {}", d.phi));
            out.line(format!("beta:  {}", d.beta));
            out.line(format!(
                "m:     sequence of length {}, about 2^{:.1}",
                m.sequence_length.map_or("?".into(), |n| n.to_string()),
                m.log2_estimate
            ));
            out.line(format!("delta: {}", d.delta));
            out.line(format!("sb(m, m) = ⌜delta⌝: {}", d.fixed_point_ok));
            if !d.fixed_point_ok {
                code = ExitCode::from(1);
            }
        }
        Command::LemmaLab {
            claim,
            replay,
            delta,
        } => match (replay, claim) {
            (Some(path), _) => {
                let p = load_proof(&path)?;
                let delta = Sentence::new(parse_formula(delta.as_deref().unwrap_or_default())?)?;
                let trace = lab::replay_incompleteness(&delta, &p, &arith)?;
                out.line(serde_json::to_string_pretty(&trace)?);
            }
            (None, Some(id)) => {
                let v = lab::check_claim(id, cfg.budget, cfg.seed);
                out.line(lab::report_json(std::slice::from_ref(&v)));
            }
            (None, None) => {
                let report = lab::report(cfg.budget, cfg.seed);
                out.line(lab::report_json(&report));
            }
        },
    }
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
