use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nonorient::abelian::{self, verify_lemmas};
use nonorient::catalog::generating_set;
use nonorient::lantern;
use nonorient::schreier::{pm_tower, render_word, CosetSystem, CosetSystemJson};
use nonorient::{GroupKind, SurfaceSpec};
use serde_json::json;

#[derive(Parser)]
#[command(name = "nonorient", version, about = "Mapping class groups of nonorientable surfaces: generators, Schreier transfer, relation checks and H1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// pm, pmk or m; defaults to pm for k = 0 and pmk otherwise.
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    g: u32,
    #[arg(long, default_value_t = 0)]
    s: u32,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    k: u32,
}

impl SpecArgs {
    fn spec(&self) -> Result<SurfaceSpec, Failure> {
        let kind: GroupKind = match &self.kind {
            Some(k) => k.parse().map_err(|e| Failure::Input(format!("{e}")))?,
            None if self.k == 0 => GroupKind::Pm,
            None => GroupKind::Pmk,
        };
        SurfaceSpec::new(kind, self.g, self.s, self.n, self.k).map_err(|e| Failure::Input(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// First homology of the mapping class group.
    H1(SpecArgs),
    /// Generating set.
    Gens(SpecArgs),
    /// Schreier generators of a coset system given as JSON, or the raw
    /// descent PM -> PM^1 -> ... -> PM^n.
    Schreier {
        #[arg(long, conflicts_with = "tower")]
        input: Option<PathBuf>,
        #[arg(long, requires = "g")]
        tower: bool,
        #[arg(long)]
        g: Option<u32>,
        #[arg(long, default_value_t = 0)]
        s: u32,
        #[arg(long, default_value_t = 0)]
        n: u32,
    },
    /// Run verification checks.
    Verify {
        #[arg(value_enum)]
        which: Which,
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        g: Option<u32>,
        #[arg(long, default_value_t = 0)]
        s: u32,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// H1 over a grid of surfaces, one CSV row per group.
    Table {
        #[arg(long, default_value_t = 12)]
        g_max: u32,
        #[arg(long, default_value_t = 4)]
        s_max: u32,
        #[arg(long, default_value_t = 5)]
        n_max: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Lantern,
    Braid,
    Push,
    Lemmas,
    All,
}

enum Failure {
    Input(String),
    Verification(String),
}

struct Rendered {
    text: String,
    ok: bool,
}

fn kind_label(spec: &SurfaceSpec) -> &'static str {
    match spec.kind {
        GroupKind::Pm => "pm",
        GroupKind::Pmk => "pmk",
        GroupKind::M => "m",
    }
}

fn csv_row(h: &abelian::H1Result) -> String {
    let factors = h
        .group
        .elementary_two_rank()
        .map_or_else(|| h.group.to_string(), |m| m.to_string());
    format!(
        "{},{},{},{},{},{},{},{}",
        kind_label(&h.spec),
        h.spec.g,
        h.spec.s,
        h.spec.n,
        h.spec.k,
        factors,
        h.character_rank,
        h.verified
    )
}

const CSV_HEADER: &str = "kind,g,s,n,k,factors,character_rank,verified";

fn run_h1(args: &SpecArgs, format: Format) -> Result<Rendered, Failure> {
    let spec = args.spec()?;
    let h = abelian::h1(&spec).map_err(|e| Failure::Verification(e.to_string()))?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&h.to_json()).expect("serializable"),
        Format::Csv => format!("{CSV_HEADER}\n{}", csv_row(&h)),
        Format::Text => {
            let basis: Vec<String> = h.basis.iter().map(|b| b.to_string()).collect();
            format!(
                "{}\nbasis: {}\ncharacter rank: {}\nverified: {}",
                h.group,
                basis.join(" "),
                h.character_rank,
                h.verified
            )
        }
    };
    Ok(Rendered { text, ok: h.verified })
}

fn run_gens(args: &SpecArgs, format: Format) -> Result<Rendered, Failure> {
    let spec = args.spec()?;
    let set = generating_set(&spec).map_err(|e| Failure::Input(e.to_string()))?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&set).expect("serializable"),
        Format::Csv => {
            let mut out = String::from("index,generator");
            for (i, n) in set.names().iter().enumerate() {
                out.push_str(&format!("\n{},{n}", i + 1));
            }
            out
        }
        Format::Text => format!("{spec}: {} generators\n{}", set.len(), set.names().join(" ")),
    };
    Ok(Rendered { text, ok: true })
}

fn run_schreier_input(path: &PathBuf, format: Format) -> Result<Rendered, Failure> {
    let raw = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let parsed: CosetSystemJson = serde_json::from_str(&raw).map_err(|e| Failure::Input(e.to_string()))?;
    let sys = CosetSystem::from_json(&parsed).map_err(|e| Failure::Input(e.to_string()))?;
    let gens = sys.schreier_generators().map_err(|e| Failure::Verification(e.to_string()))?;
    let words: Vec<String> = gens.iter().map(|g| sys.render(&g.word)).collect();
    let text = match format {
        Format::Json => {
            let items: Vec<_> = gens
                .iter()
                .zip(&words)
                .map(|(g, w)| {
                    json!({
                        "coset": sys.group().name(g.coset),
                        "letter": sys.alphabet()[g.letter as usize - 1],
                        "word": w,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&json!({ "count": gens.len(), "generators": items })).expect("serializable")
        }
        Format::Csv => {
            let mut out = String::from("coset,letter,word");
            for (g, w) in gens.iter().zip(&words) {
                out.push_str(&format!("\n{},{},{w}", sys.group().name(g.coset), sys.alphabet()[g.letter as usize - 1]));
            }
            out
        }
        Format::Text => words.join("\n"),
    };
    Ok(Rendered { text, ok: true })
}

fn run_schreier_tower(g: u32, s: u32, n: u32, format: Format) -> Result<Rendered, Failure> {
    let (names, levels) = pm_tower(g, s, n).map_err(|e| Failure::Input(e.to_string()))?;
    let text = match format {
        Format::Json => {
            let items: Vec<_> = levels
                .iter()
                .map(|l| {
                    json!({
                        "k": l.k,
                        "count": l.generators.len(),
                        "generators": l.generators.iter().map(|w| render_word(&names, w)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&json!({ "alphabet": names, "levels": items })).expect("serializable")
        }
        Format::Csv => {
            let mut out = String::from("k,count");
            for l in &levels {
                out.push_str(&format!("\n{},{}", l.k, l.generators.len()));
            }
            out
        }
        Format::Text => levels
            .iter()
            .map(|l| format!("PM^{}: {} generators", l.k, l.generators.len()))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Rendered { text, ok: true })
}

fn lemma_specs(kind: &Option<String>, g: Option<u32>, s: u32, n: u32, k: u32) -> Result<Vec<SurfaceSpec>, Failure> {
    if let Some(g) = g {
        let args = SpecArgs { kind: kind.clone(), g, s, n, k };
        return Ok(vec![args.spec()?]);
    }
    let mut out = Vec::new();
    for g in 3..=8 {
        for s in 0..=3 {
            for n in 0..=3 {
                for k in 0..=n {
                    out.push(SurfaceSpec::pure(g, s, n, k).expect("valid grid"));
                }
                if n >= 2 {
                    out.push(SurfaceSpec::full(g, s, n).expect("valid grid"));
                }
            }
        }
    }
    Ok(out)
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run_verify(which: Which, specs: &[SurfaceSpec], format: Format) -> Result<Rendered, Failure> {
    let fail = |e: lantern::LanternError| Failure::Verification(e.to_string());
    let mut lines: Vec<(String, bool)> = Vec::new();
    let mut reports = Vec::new();
    if matches!(which, Which::Lantern | Which::All) {
        let (report, search) = lantern::verify_lantern().map_err(fail)?;
        let frozen = search.frozen.map_or_else(|| "none".to_string(), |c| c.to_string());
        lines.push((format!("lantern: {} (frozen {frozen})", verdict_word(report.verdict.passed())), report.verdict.passed()));
        reports.push(serde_json::to_value(&report).expect("serializable"));
    }
    if matches!(which, Which::Braid | Which::All) {
        for m in 3..=5 {
            let report = lantern::verify_braid_relations(m).map_err(fail)?;
            lines.push((format!("braid m={m}: {}", verdict_word(report.verdict.passed())), report.verdict.passed()));
            reports.push(serde_json::to_value(&report).expect("serializable"));
        }
    }
    if matches!(which, Which::Push | Which::All) {
        let report = lantern::verify_push_factorization().map_err(fail)?;
        lines.push((format!("push: {}", verdict_word(report.verdict.passed())), report.verdict.passed()));
        reports.push(serde_json::to_value(&report).expect("serializable"));
    }
    if matches!(which, Which::Lemmas | Which::All) {
        for spec in specs {
            let replays = verify_lemmas(spec).map_err(|e| Failure::Verification(e.to_string()))?;
            let ok = replays.iter().all(|r| r.passed);
            if specs.len() == 1 {
                for r in &replays {
                    lines.push((format!("lemma {}: {} ({})", r.id, verdict_word(r.passed), r.conclusion), r.passed));
                }
            } else if !ok {
                lines.push((format!("lemmas {spec}: FAIL"), false));
            }
            reports.push(json!({ "check": "lemmas", "spec": spec, "verdict": verdict_word(ok), "replays": replays }));
        }
        if specs.len() > 1 && lines.iter().all(|(l, _)| !l.starts_with("lemmas ")) {
            lines.push((format!("lemmas: PASS ({} surfaces)", specs.len()), true));
        }
    }
    let ok = lines.iter().all(|(_, p)| *p);
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&json!({ "verdict": verdict_word(ok), "checks": reports }))
            .expect("serializable"),
        Format::Csv => {
            let mut out = String::from("check,verdict");
            for (l, p) in &lines {
                let name = l.split(':').next().unwrap_or(l);
                out.push_str(&format!("\n{name},{}", verdict_word(*p)));
            }
            out
        }
        Format::Text => lines.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>().join("\n"),
    };
    Ok(Rendered { text, ok })
}

fn run_table(g_max: u32, s_max: u32, n_max: u32, format: Format) -> Result<Rendered, Failure> {
    let mut results = Vec::new();
    for g in 3..=g_max {
        for s in 0..=s_max {
            for n in 0..=n_max {
                for k in 0..=n {
                    results.push(SurfaceSpec::pure(g, s, n, k).expect("valid grid"));
                }
                if n >= 2 {
                    results.push(SurfaceSpec::full(g, s, n).expect("valid grid"));
                }
            }
        }
    }
    let rows: Vec<abelian::H1Result> = results
        .iter()
        .map(abelian::h1)
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Verification(e.to_string()))?;
    let ok = rows.iter().all(|h| h.verified);
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&rows.iter().map(|h| h.to_json()).collect::<Vec<_>>()).expect("serializable"),
        Format::Csv | Format::Text => {
            let mut out = String::from(CSV_HEADER);
            for h in &rows {
                out.push('\n');
                out.push_str(&csv_row(h));
            }
            out
        }
    };
    Ok(Rendered { text, ok })
}

fn dispatch(cli: &Cli) -> Result<Rendered, Failure> {
    match &cli.command {
        Command::H1(args) => run_h1(args, cli.format),
        Command::Gens(args) => run_gens(args, cli.format),
        Command::Schreier { input: Some(path), .. } => run_schreier_input(path, cli.format),
        Command::Schreier { tower: true, g: Some(g), s, n, .. } => run_schreier_tower(*g, *s, *n, cli.format),
        Command::Schreier { .. } => Err(Failure::Input("schreier needs --input FILE or --tower --g G".into())),
        Command::Verify { which, kind, g, s, n, k } => {
            let specs = if matches!(which, Which::Lemmas | Which::All) {
                lemma_specs(kind, *g, *s, *n, *k)?
            } else {
                Vec::new()
            };
            run_verify(*which, &specs, cli.format)
        }
        Command::Table { g_max, s_max, n_max } => run_table(*g_max, *s_max, *n_max, cli.format),
    }
}

fn emit(cli: &Cli, text: &str) -> io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, format!("{text}\n")),
        None => {
            let mut out = io::stdout().lock();
            writeln!(out, "{text}")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(r) => {
            match emit(&cli, &r.text) {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
                Ok(()) => {}
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
