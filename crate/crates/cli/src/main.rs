use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use liftsep_core::axioms::{check_axiom_direct, check_axiom_lifting, AxiomId, Verdict};
use liftsep_core::census::{Census, CensusError, Mode};
use liftsep_core::lifting::{has_lifting, LiftingOutcome, LiftingProblem};
use liftsep_core::notation::{
    format_map, parse_any, parse_map, parse_space, MapSummary, Parsed, SpaceSummary,
};
use serde_json::{json, Value};

const EXIT_ERROR: u8 = 1;
const EXIT_DISAGREE: u8 = 2;
const EXIT_FAILS: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "liftsep",
    version,
    about = "Finite spaces, lifting properties and separation axioms"
)]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a space or map and print it back
    Parse { text: String },
    /// Classify a space against every separation axiom
    Axioms {
        space: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Decide whether LEFT has the left lifting property against RIGHT
    Lift { left: String, right: String },
    /// Enumerate all topologies on N points and run the suites
    Census {
        #[arg(short = 'n')]
        n: usize,
        /// One space per homeomorphism class
        #[arg(long)]
        up_to_iso: bool,
        /// Also run the implication suite
        #[arg(long)]
        verify: bool,
        /// Write the census records here, one JSON object per line
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Lifting,
    Both,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_ERROR);
        }
        Err(e) => e.exit(),
    };
    let code = match cli.command {
        Command::Parse { text } => cmd_parse(&text, cli.json),
        Command::Axioms { space, method } => cmd_axioms(&space, method, cli.json),
        Command::Lift { left, right } => cmd_lift(&left, &right, cli.json),
        Command::Census {
            n,
            up_to_iso,
            verify,
            output,
        } => {
            let mode = if up_to_iso {
                Mode::UpToIso
            } else {
                Mode::Labeled
            };
            cmd_census(n, mode, verify, output, cli.json)
        }
    };
    ExitCode::from(code)
}

fn print_json(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json values serialize")
    );
}

fn cmd_parse(text: &str, as_json: bool) -> u8 {
    let parsed = match parse_any(text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    match parsed {
        Parsed::Space(s) => {
            let summary = SpaceSummary::new(&s);
            if as_json {
                print_json(&json!({ "space": summary }));
            } else {
                println!("space   {}", summary.notation);
                println!("points  {}", summary.points.len());
                println!("open    {}", summary.open_points.join(" "));
                println!("closed  {}", summary.closed_points.join(" "));
            }
        }
        Parsed::Map(m) => {
            let summary = MapSummary::new(&m);
            if as_json {
                print_json(&json!({ "map": summary }));
            } else {
                println!("map       {}", summary.notation);
                println!("domain    {}", summary.domain.notation);
                println!("codomain  {}", summary.codomain.notation);
            }
        }
    }
    0
}

fn cmd_axioms(text: &str, method: Method, as_json: bool) -> u8 {
    let space = match parse_space(text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let want_direct = method != Method::Lifting;
    let want_lifting = method != Method::Direct;
    let mut rows = Vec::new();
    let mut hard_disagreement = false;
    for id in AxiomId::ALL {
        let direct = want_direct.then(|| check_axiom_direct(&space, id));
        let lifting: Option<Verdict> = if want_lifting {
            check_axiom_lifting(&space, id).ok()
        } else {
            None
        };
        let agree = match (direct, &lifting) {
            (Some(d), Some(l)) => Some(d == l.holds()),
            _ => None,
        };
        if agree == Some(false) && id.is_hard() {
            hard_disagreement = true;
        }
        rows.push((id, direct, lifting, agree));
    }
    if as_json {
        let axioms: Vec<Value> = rows
            .iter()
            .map(|(id, direct, lifting, agree)| {
                json!({
                    "axiom": id,
                    "direct": direct,
                    "lifting": lifting.as_ref().map(Verdict::holds),
                    "agree": agree,
                    "witness": lifting.as_ref().and_then(Verdict::witness),
                })
            })
            .collect();
        print_json(&json!({ "space": SpaceSummary::new(&space), "axioms": axioms }));
    } else {
        let show = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
        let mut header = format!("{:<24}", "AXIOM");
        if want_direct {
            header.push_str(&format!("{:<8}", "DIRECT"));
        }
        if want_lifting {
            header.push_str(&format!("{:<9}", "LIFTING"));
        }
        if method == Method::Both {
            header.push_str("AGREE");
        }
        println!("{}", header.trim_end());
        for (id, direct, lifting, agree) in &rows {
            let mut line = format!("{:<24}", id.name());
            if want_direct {
                line.push_str(&format!("{:<8}", show(*direct)));
            }
            if want_lifting {
                line.push_str(&format!(
                    "{:<9}",
                    show(lifting.as_ref().map(Verdict::holds))
                ));
            }
            if method == Method::Both {
                line.push_str(match agree {
                    Some(true) => "AGREE",
                    Some(false) => "DIFFER",
                    None => "-",
                });
            }
            println!("{}", line.trim_end());
        }
    }
    if hard_disagreement {
        EXIT_DISAGREE
    } else {
        0
    }
}

fn cmd_lift(left: &str, right: &str, as_json: bool) -> u8 {
    let maps = parse_map(left).and_then(|l| parse_map(right).map(|r| (l, r)));
    let (left, right) = match maps {
        Ok(maps) => maps,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let outcome = has_lifting(&LiftingProblem::new(left, right));
    match &outcome {
        LiftingOutcome::Lifts if as_json => print_json(&json!({ "verdict": "LIFTS" })),
        LiftingOutcome::Lifts => println!("LIFTS"),
        LiftingOutcome::Fails(sq) => {
            let top = format_map(&sq.top);
            let bottom = format_map(&sq.bottom);
            if as_json {
                print_json(&json!({ "verdict": "FAILS", "top": top, "bottom": bottom }));
            } else {
                println!("FAILS");
                println!("top     {top}");
                println!("bottom  {bottom}");
            }
        }
    }
    if outcome.lifts() {
        0
    } else {
        EXIT_FAILS
    }
}

fn cmd_census(n: usize, mode: Mode, verify: bool, output: Option<PathBuf>, as_json: bool) -> u8 {
    let census = match Census::run(n, mode) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    if let Some(path) = &output {
        let written = File::create(path)
            .map_err(CensusError::from)
            .and_then(|f| census.write_to(BufWriter::new(f)));
        if let Err(e) = written {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_IO;
        }
    }
    let eq = &census.equivalence;
    let hard = eq.hard_mismatches();
    let violations = census.implications.violations.len();
    if as_json {
        let soft: Vec<Value> = eq
            .axioms
            .iter()
            .filter(|a| !a.hard)
            .map(|a| {
                json!({
                    "axiom": a.axiom,
                    "checked": a.checked,
                    "agreements": a.agreements,
                    "minimal_witness": a.minimal_witness().map(|m| &m.space),
                })
            })
            .collect();
        let mut summary = json!({
            "n": n,
            "mode": mode,
            "spaces": census.records.len(),
            "hard_mismatches": hard,
            "soft": soft,
            "counts": census.summary().counts,
        });
        if verify {
            summary["implication_violations"] = json!(census.implications.violations);
        }
        print_json(&summary);
    } else {
        let noun = if census.records.len() == 1 {
            "space"
        } else {
            "spaces"
        };
        let what = match mode {
            Mode::Labeled => format!("labeled {noun}"),
            Mode::UpToIso => format!("{noun} up to homeomorphism"),
        };
        println!(
            "{} {what}; equivalence suite: {hard} hard mismatches",
            census.records.len()
        );
        for a in eq.axioms.iter().filter(|a| !a.hard) {
            let mut line = format!("{} agreement: {}/{}", a.axiom, a.agreements, a.checked);
            if let Some(m) = a.minimal_witness() {
                line.push_str(&format!("; minimal witness {}", m.space));
            }
            println!("{line}");
        }
        for a in eq.axioms.iter().filter(|a| a.hard) {
            for m in &a.mismatches {
                println!(
                    "MISMATCH {} on {}: direct {}, lifting {}",
                    a.axiom, m.space, m.direct, m.lifting
                );
            }
        }
        if verify {
            let mut scope = format!("{} rules", census.implications.rules.len());
            if census.implications.subset_pairs > 0 {
                scope.push_str(&format!(
                    ", {} subset pairs",
                    census.implications.subset_pairs
                ));
            }
            println!("implication suite: {violations} violations ({scope})");
            for v in &census.implications.violations {
                println!("VIOLATION {} on {}", v.rule, v.space);
            }
        }
    }
    if hard > 0 || (verify && violations > 0) {
        EXIT_DISAGREE
    } else {
        0
    }
}
