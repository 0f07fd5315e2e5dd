use clap::{Args, Parser, Subcommand};
use ga_core::eval::Semantics;
use ga_core::harness::{self, paradox, Harness, Subject};
use ga_core::kernel::check_proof;
use ga_core::kernel::primrec::primrec_termination;
use ga_core::kernel::script::{check_script, emit_script};
use ga_core::reflection::{self, Code, Reflection};
use ga_core::syntax::{parse_with, print, print_raw, SymbolTable};
use ga_core::{corpus, load_definitions, Assignment, DefinitionList};
use serde::Deserialize;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const DEFAULT_FUEL: u64 = 100_000;

#[derive(Parser)]
#[command(name = "ga", version, about = "Grounded arithmetic: evaluator, proof kernel, reflection and harness")]
struct Cli {
    /// TOML file with defaults for fuel, cases, domain and seed. Flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Defs {
    /// Definition files, loaded in order. Defaults to the bundled arith.gad.
    #[arg(long = "defs")]
    defs: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Replay every theorem in a proof script.
    Check {
        script: PathBuf,
        #[command(flatten)]
        defs: Defs,
    },
    /// Evaluate a term.
    Eval {
        term: String,
        #[command(flatten)]
        defs: Defs,
        #[arg(long)]
        fuel: Option<u64>,
        /// Comma separated `name=value` pairs, e.g. v0=3,v1=0.
        #[arg(long)]
        assign: Option<String>,
    },
    /// Print the code of a term, or of a script's proofs with --script.
    Encode {
        term: Option<String>,
        #[command(flatten)]
        defs: Defs,
        #[arg(long, conflicts_with = "term")]
        script: Option<PathBuf>,
        /// Write the code here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode a number (or `@file`) as a term, judgment or proof.
    Decode {
        code: String,
        #[command(flatten)]
        defs: Defs,
        #[arg(long, default_value = "term")]
        kind: Kind,
    },
    /// Emit a proof script produced by a tactic.
    Prove {
        #[arg(long)]
        tactic: String,
        name: String,
        #[command(flatten)]
        defs: Defs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truth-preservation fuzzing of the primitive rules.
    Harness {
        /// all, bga, canaries, a rule name or a rule id.
        #[arg(long, default_value = "all")]
        rule: String,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long)]
        domain: Option<u64>,
        #[arg(long)]
        fuel: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Judge with the lopsided-equality countermodel instead.
        #[arg(long)]
        lopsided: bool,
        /// Write the JSON summary here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the paradox sentences.
    Paradox {
        #[arg(long)]
        fuel: Option<u64>,
    },
    /// Check the bundled corpus end to end.
    Selftest,
    /// Parse definition files and terms and print them back.
    Parse {
        files: Vec<PathBuf>,
        #[arg(long)]
        term: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum Kind {
    Term,
    Judgment,
    Proof,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    fuel: Option<u64>,
    cases: Option<usize>,
    domain: Option<u64>,
    seed: Option<u64>,
}

enum Failure {
    /// Proof or harness failure.
    Check(String),
    /// Parse or configuration error.
    Input(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Check(m) | Failure::Input(m) => f.write_str(m),
        }
    }
}

type Res = Result<(), Failure>;

fn input(e: impl fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load(defs: &Defs) -> Result<DefinitionList, Failure> {
    if defs.defs.is_empty() {
        return Ok(corpus::arith());
    }
    let mut d = DefinitionList::new();
    for p in &defs.defs {
        load_definitions(&read(p)?, &mut d).map_err(|e| input(format!("{}: {e}", p.display())))?;
    }
    Ok(d)
}

fn env_fuel() -> Result<Option<u64>, Failure> {
    match std::env::var("GA_FUEL") {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| input(format!("GA_FUEL: not a number: {s}"))),
        Err(_) => Ok(None),
    }
}

fn file_config(path: Option<&Path>) -> Result<FileConfig, Failure> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => toml::from_str(&read(p)?).map_err(|e| input(format!("{}: {e}", p.display()))),
    }
}

fn write_out(out: Option<&Path>, text: &str) -> Res {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_code(s: &str) -> Result<Code, Failure> {
    let text = match s.strip_prefix('@') {
        Some(p) => read(Path::new(p))?,
        None => s.to_string(),
    };
    let t = text.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(input(format!("not a natural number: {t}")));
    }
    t.parse::<Code>().map_err(input)
}

fn check(script: &Path, defs: &Defs) -> Res {
    let d = load(defs)?;
    let text = read(script)?;
    match check_script(&d, &text) {
        Ok(ths) => {
            for (st, th) in ths {
                println!("checked {}: {}", st.name, th.judgment().display(&d));
            }
            Ok(())
        }
        Err(e) if e.is_syntax() => Err(input(format!("{}: {e}", script.display()))),
        Err(e) => Err(Failure::Check(format!("{}: {e}", script.display()))),
    }
}

fn eval(term: &str, defs: &Defs, fuel: u64, assign: Option<&str>) -> Res {
    let d = load(defs)?;
    let mut syms = SymbolTable::new();
    let t = parse_with(term, &d, &mut syms).map_err(input)?;
    let mut a = Assignment::new();
    for part in assign.unwrap_or("").split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| input(format!("bad assignment `{part}`")))?;
        let var = match syms.lookup(k.trim()) {
            Some(i) => i,
            None => k
                .trim()
                .strip_prefix('v')
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| input(format!("unknown variable `{k}`")))?,
        };
        let n: Code = v.trim().parse().map_err(|_| input(format!("bad value in `{part}`")))?;
        if n < 0 {
            return Err(input(format!("negative value in `{part}`")));
        }
        a.set(var, ga_core::Nat::from(n));
    }
    let pure = t.is_pure() && d.iter().all(|def| def.term().is_none_or(|b| b.is_pure()));
    let out = if pure {
        ga_core::eval(&d, &a, &t, fuel).map_err(input)?
    } else {
        Reflection::new(&d).map_err(input)?.eval(&a, &t, fuel).map_err(input)?
    };
    println!("{out}");
    Ok(())
}

fn encode(term: Option<&str>, script: Option<&Path>, defs: &Defs, out: Option<&Path>) -> Res {
    let d = load(defs)?;
    let text = match (term, script) {
        (Some(t), None) => {
            let t = parse_with(t, &d, &mut SymbolTable::new()).map_err(input)?;
            format!("{}\n", reflection::encode_term(&t))
        }
        (None, Some(p)) => {
            let ths = check_script(&d, &read(p)?).map_err(|e| {
                if e.is_syntax() {
                    input(&e)
                } else {
                    Failure::Check(e.to_string())
                }
            })?;
            let mut s = String::new();
            for (st, _) in ths {
                let claim = st.proof.claim().expect("checked proofs are non-empty");
                s.push_str(&format!(
                    "theorem {}\nclaim {}\nproof {}\n",
                    st.name,
                    reflection::encode_judgment(claim),
                    reflection::encode_proof(&st.proof)
                ));
            }
            s
        }
        _ => return Err(input("give a term or --script")),
    };
    write_out(out, &text)
}

fn decode(code: &str, defs: &Defs, kind: Kind) -> Res {
    let d = if defs.defs.is_empty() { None } else { Some(load(defs)?) };
    let n = parse_code(code)?;
    let show = |t: &ga_core::Term| match &d {
        Some(d) => print(t, d),
        None => print_raw(t),
    };
    match kind {
        Kind::Term => {
            let t = reflection::decode_term(&n).map_err(|e| Failure::Check(e.to_string()))?;
            println!("{}", show(&t));
        }
        Kind::Judgment => {
            let j = reflection::decode_judgment(&n).map_err(|e| Failure::Check(e.to_string()))?;
            let hyps: Vec<String> = j.hyps.iter().map(show).collect();
            println!("{} |- {}", hyps.join(", "), show(&j.concl));
        }
        Kind::Proof => {
            let p = reflection::decode_proof(&n).map_err(|e| Failure::Check(e.to_string()))?;
            match &d {
                Some(d) => print!("{}", emit_script(d, "decoded", &p)),
                None => {
                    for (i, s) in p.steps.iter().enumerate() {
                        println!("s{i}: {} from {:?}", s.rule.name(), s.premises);
                    }
                }
            }
        }
    }
    Ok(())
}

fn prove(tactic: &str, name: &str, defs: &Defs, out: Option<&Path>) -> Res {
    if tactic != "primrec" {
        return Err(input(format!("unknown tactic `{tactic}` (available: primrec)")));
    }
    let d = load(defs)?;
    let f = d.index_of(name).ok_or_else(|| input(format!("no definition named `{name}`")))?;
    let th = primrec_termination(&d, f).map_err(|e| Failure::Check(e.to_string()))?;
    let proof = th.to_proof();
    check_proof(&d, &proof).map_err(|e| Failure::Check(e.to_string()))?;
    write_out(out, &emit_script(&d, &format!("{name}_total"), &proof))
}

#[allow(clippy::too_many_arguments)]
fn run_harness(
    rule: &str,
    cases: Option<usize>,
    domain: Option<u64>,
    fuel: Option<u64>,
    seed: Option<u64>,
    lopsided: bool,
    json: Option<&Path>,
    fc: &FileConfig,
) -> Res {
    let subjects = Subject::select(rule).ok_or_else(|| input(format!("unknown rule `{rule}`")))?;
    let base = harness::Config::default();
    let cfg = harness::Config {
        cases: cases.or(fc.cases).unwrap_or(base.cases),
        domain: domain.or(fc.domain).unwrap_or(base.domain),
        fuel: match fuel {
            Some(f) => f,
            None => env_fuel()?.or(fc.fuel).unwrap_or(base.fuel),
        },
        seed: seed.or(fc.seed).unwrap_or(base.seed),
        semantics: if lopsided { Semantics::LopsidedEquality } else { Semantics::Standard },
    };
    if cfg.domain == 0 || cfg.fuel == 0 {
        return Err(input("domain and fuel must be positive"));
    }
    let h = Harness::new();
    let report = h.run_all(&subjects, &cfg);
    let mut bad = 0;
    for r in &report.rules {
        println!("{r}");
        for c in &r.examples {
            println!(
                "  counterexample attempt:{} seed:{} instance:{} assignment:{} outcome:{}",
                c.attempt, cfg.seed, c.instance, c.assignment, c.outcome
            );
        }
        if !r.canary && r.counterexamples > 0 {
            bad += 1;
        }
    }
    println!(
        "summary rules:{} seed:{} cases:{} domain:{} fuel:{} semantics:{} failing:{bad}",
        report.rules.len(),
        cfg.seed,
        cfg.cases,
        cfg.domain,
        cfg.fuel,
        report.semantics
    );
    if let Some(p) = json {
        std::fs::write(p, report.to_json()).map_err(|e| input(format!("{}: {e}", p.display())))?;
    }
    if bad > 0 {
        return Err(Failure::Check(format!("{bad} rule(s) with counterexamples")));
    }
    Ok(())
}

fn run_paradox(fuel: Option<u64>, fc: &FileConfig) -> Res {
    let top = match fuel {
        Some(f) => f,
        None => env_fuel()?.or(fc.fuel).unwrap_or(DEFAULT_FUEL),
    };
    let mut fuels: Vec<u64> = paradox::PARADOX_FUELS.iter().copied().filter(|&f| f < top).collect();
    fuels.push(top);
    let h = Harness::new();
    let rows = paradox::report(&h, &fuels);
    for r in &rows {
        println!("{}", r.line());
    }
    if rows.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Check("a paradox sentence was grounded".into()))
    }
}

fn selftest() -> Res {
    let d = corpus::arith();
    let mut failures = vec![];
    for (name, script) in corpus::TERMINATION_SCRIPTS {
        match check_script(&d, script) {
            Ok(ths) => {
                for (st, th) in ths {
                    let claim = reflection::encode_judgment(th.judgment());
                    let code = reflection::encode_proof(&st.proof);
                    let c = reflection::proof_check_c(&d, &code, &claim);
                    println!("script:{name}_total judgment:{} C:{}", th.judgment().display(&d), c as u8);
                    if !c {
                        failures.push(format!("{name}: C rejected the proof"));
                    }
                }
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let probes = [("add(2, 3)", "value:5"), ("P(0)", "value:0"), ("even(4)", "value:1"), ("mult(3, 2)", "value:6")];
    for (src, want) in probes {
        let t = ga_core::parse(src, &d).map_err(input)?;
        let got = ga_core::eval(&d, &Assignment::new(), &t, 10_000).map_err(input)?.to_string();
        println!("eval:{src} outcome:{got}");
        if got != want {
            failures.push(format!("{src}: {got}, expected {want}"));
        }
    }
    let p = corpus::paradox();
    let liar = ga_core::parse("liar", &p).map_err(input)?;
    let got = ga_core::eval(&p, &Assignment::new(), &liar, DEFAULT_FUEL).map_err(input)?.to_string();
    println!("eval:liar outcome:{got}");
    if got != "out-of-fuel" {
        failures.push(format!("liar: {got}"));
    }
    if failures.is_empty() {
        println!("selftest:pass");
        Ok(())
    } else {
        Err(Failure::Check(failures.join("\n")))
    }
}

fn parse_cmd(files: &[PathBuf], term: Option<&str>) -> Res {
    let mut d = DefinitionList::new();
    for p in files {
        let new = load_definitions(&read(p)?, &mut d).map_err(|e| input(format!("{}: {e}", p.display())))?;
        for i in new {
            let def = d.get(i).expect("just loaded");
            let body = def.term().map(|t| print(t, &d)).unwrap_or_default();
            println!("d{i} {}/{} := {body}", def.name, def.arity());
        }
    }
    if let Some(t) = term {
        let t = parse_with(t, &d, &mut SymbolTable::new()).map_err(input)?;
        println!("{}", print(&t, &d));
    }
    Ok(())
}

fn run(cli: Cli) -> Res {
    let fc = file_config(cli.config.as_deref())?;
    let fuel_or = |f: Option<u64>| -> Result<u64, Failure> {
        match f {
            Some(f) => Ok(f),
            None => Ok(env_fuel()?.or(fc.fuel).unwrap_or(DEFAULT_FUEL)),
        }
    };
    match &cli.cmd {
        Cmd::Check { script, defs } => check(script, defs),
        Cmd::Eval { term, defs, fuel, assign } => eval(term, defs, fuel_or(*fuel)?, assign.as_deref()),
        Cmd::Encode { term, defs, script, out } => encode(term.as_deref(), script.as_deref(), defs, out.as_deref()),
        Cmd::Decode { code, defs, kind } => decode(code, defs, *kind),
        Cmd::Prove { tactic, name, defs, out } => prove(tactic, name, defs, out.as_deref()),
        Cmd::Harness { rule, cases, domain, fuel, seed, lopsided, json } => {
            run_harness(rule, *cases, *domain, *fuel, *seed, *lopsided, json.as_deref(), &fc)
        }
        Cmd::Paradox { fuel } => run_paradox(*fuel, &fc),
        Cmd::Selftest => selftest(),
        Cmd::Parse { files, term } => parse_cmd(files, term.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(match f {
                Failure::Check(_) => 1,
                Failure::Input(_) => 2,
            })
        }
    }
}
