//! `tgauss`: batch front end for formulas, loops and the verification suites.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 unreadable input, 3 invalid
//! diagram or illegal move, 4 open loop.

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use torus_gauss::cocycle::{evaluate_closed, Loop, LoopJson};
use torus_gauss::formula::{enumerate_matches, p02_formula, parse_configuration, parse_formula, v3_formula, Formula, Term};
use torus_gauss::gauss::DiagramJson;
use torus_gauss::loopgen::meridian::{CubeScenario, QuadrupleScenario};
use torus_gauss::loopgen::{knots, push_loop, BraidWord};
use torus_gauss::verify::{run_suite, Suite, DEFAULT_SEED};
use torus_gauss::{parse_gauss_code, Error, GaussDiagram};

#[derive(Parser)]
#[command(name = "tgauss", version, about = "Gauss diagram formulas and the v3-weighted 1-cocycle for knots in the solid torus")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Print the bracket of a formula with a diagram.
    Eval {
        /// v3, p02, a formula file, or a single configuration
        #[arg(long, default_value = "v3")]
        formula: String,
        /// Gauss code, diagram file (code or JSON), or a knot name
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        json: bool,
    },
    /// List the matches of every term of a formula in a diagram.
    Match {
        #[arg(long, default_value = "v3")]
        formula: String,
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate R along a closed loop, with the contributing events.
    Cocycle {
        /// loop file or loop selector (see `loop`)
        #[arg(long = "loop")]
        loop_: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        a: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print a generated loop as JSON.
    ///
    /// Selectors: push:KNOT (cable with --n strands closed by σ1…σ(n-1)),
    /// tetra:TYPE:MARKS[:BASE] (e.g. tetra:I:a,n-a,0), cube:ROLE:above|below[:MARKS[:BASE]],
    /// empty[:DIAGRAM].
    Loop {
        #[arg(long = "loop")]
        loop_: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        a: usize,
    },
    /// Run a verification suite: identities, invariance, commutation, cube,
    /// tetrahedron, lemma-marking, push-v3, or all.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// number of random cases (suite-specific default)
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

/// `println!` that exits quietly when the reader has gone away (`| head`).
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout(), $($t)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            return Err(Fail(2, format!("stdout: {e}")));
        }
    }};
}

/// A failure with its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(code(&e), e.to_string())
    }
}

fn code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } => 2,
        Error::OpenLoop(_) => 4,
        Error::Event { source, .. } => code(source),
        _ => 3,
    }
}

fn input(what: &str) -> Result<Option<String>, Fail> {
    if Path::new(what).is_file() {
        return std::fs::read_to_string(what).map(Some).map_err(|e| Fail(2, format!("{what}: {e}")));
    }
    Ok(None)
}

fn diagram(arg: &str) -> Result<GaussDiagram, Fail> {
    if let Some(k) = knots::get(arg) {
        return Ok(k);
    }
    let text = input(arg)?.unwrap_or_else(|| arg.to_string());
    if text.trim_start().starts_with('{') {
        let j: DiagramJson = serde_json::from_str(&text).map_err(|e| Fail(2, format!("diagram JSON: {e}")))?;
        return Ok(GaussDiagram::from_json(&j)?);
    }
    Ok(parse_gauss_code(text.trim())?)
}

fn formula(arg: &str) -> Result<Formula, Fail> {
    match arg {
        "v3" => return Ok(v3_formula()),
        "p02" => return Ok(p02_formula()),
        _ => {}
    }
    if let Some(text) = input(arg)? {
        return Ok(parse_formula(&text)?);
    }
    let config = parse_configuration(arg)?;
    Ok(Formula { terms: vec![Term { coefficient: 1, label: None, config }] })
}

fn generate(sel: &str, n: usize, a: usize) -> Result<Loop, Fail> {
    let (head, rest) = sel.split_once(':').unwrap_or((sel, ""));
    match head {
        "push" => {
            let k = diagram(rest)?;
            Ok(push_loop(&k, n, &BraidWord::cyclic(n), 1)?)
        }
        "tetra" => Ok(QuadrupleScenario::from_selector(sel, n, a)?.meridian()?),
        "cube" => Ok(CubeScenario::from_selector(sel, n, a)?.meridian()?),
        "empty" => Ok(Loop::new(if rest.is_empty() { GaussDiagram::unknot() } else { diagram(rest)? })),
        _ => Err(Fail(2, format!("unknown loop selector `{sel}`"))),
    }
}

fn load_loop(arg: &str, n: usize, a: usize) -> Result<Loop, Fail> {
    match input(arg)? {
        Some(text) => {
            let j: LoopJson = serde_json::from_str(&text).map_err(|e| Fail(2, format!("loop JSON: {e}")))?;
            Ok(Loop::from_json(&j)?)
        }
        None => generate(arg, n, a),
    }
}

fn check_parameters(n: usize, a: usize) -> Result<(), Fail> {
    if a == 0 || a >= n {
        return Err(Fail(2, format!("need 0 < a < n, got n = {n}, a = {a}")));
    }
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.verb {
        Verb::Eval { formula: f, diagram: d, json } => {
            let (f, g) = (formula(&f)?, diagram(&d)?);
            let value = torus_gauss::formula::bracket(&f, &g);
            if json {
                say!("{}", json!({ "diagram": g.to_string(), "value": value }));
            } else {
                say!("{value}");
            }
        }
        Verb::Match { formula: f, diagram: d, json } => {
            let (f, g) = (formula(&f)?, diagram(&d)?);
            let mut terms = Vec::new();
            let mut total = 0;
            for (i, t) in f.terms.iter().enumerate() {
                let ms = enumerate_matches(&t.config, &g);
                let sum: i64 = ms.iter().map(|m| m.sign as i64).sum();
                total += t.coefficient * sum;
                let label = t.label.clone().unwrap_or_else(|| (i + 1).to_string());
                if !json {
                    say!("term {label}: coefficient {:+}, {} matches, signed count {sum}", t.coefficient, ms.len());
                    for m in &ms {
                        let img: Vec<String> = m.assignment.iter().map(|(x, y)| format!("{x}->{y}")).collect();
                        say!("  {:+} {}", m.sign, img.join(" "));
                    }
                }
                let matches: Vec<_> = ms.iter().map(|m| json!({ "assignment": m.assignment, "sign": m.sign })).collect();
                terms.push(json!({ "label": label, "coefficient": t.coefficient, "matches": matches, "signed_count": sum }));
            }
            if json {
                say!("{}", pretty(&json!({ "terms": terms, "bracket": total })));
            } else {
                say!("bracket {total}");
            }
        }
        Verb::Cocycle { loop_, n, a, json } => {
            check_parameters(n, a)?;
            let l = load_loop(&loop_, n, a)?;
            let e = evaluate_closed(&l, n, a)?;
            if json {
                say!("{}", pretty(&e));
            } else {
                say!("R = {}", e.r);
                say!("{} events, {} contributing", l.events.len(), e.contributing_events.len());
                for c in &e.contributing_events {
                    say!("  event {}: sign {:+}, W {}, w(hm) {:+}", c.index, c.sign, c.w, c.writhe_hm);
                }
            }
        }
        Verb::Loop { loop_, n, a } => {
            let l = generate(&loop_, n, a)?;
            say!("{}", pretty(&l.to_json()));
        }
        Verb::Verify { suite, seed, count, json } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![Suite::parse(&suite).ok_or_else(|| Fail(2, format!("unknown suite `{suite}`")))?]
            };
            let mut ok = true;
            let mut reports = Vec::new();
            for s in suites {
                let r = run_suite(s, seed, count)?;
                ok &= r.passed();
                if !json {
                    say!("{}", r.render().trim_end());
                }
                reports.push(r);
            }
            if json {
                say!("{}", pretty(&reports));
            }
            if !ok {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => ExitCode::from(c),
        Err(Fail(c, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(c)
        }
    }
}
