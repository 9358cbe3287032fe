use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use covercalc::Limits;
use covercalc_cli::{parse_dsl, run, CliError, Command, Format, Options, Request, Statement};

/// Covers of surfaces, ends of groups and Bass–Serre trees.
#[derive(Parser)]
#[command(name = "covercalc", version, about)]
struct Cli {
    /// Output document format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Largest ball (vertices or group elements) any step may materialize.
    #[arg(long, global = true, env = "COVERCALC_MAX_BALL")]
    max_ball: Option<usize>,
    /// Radius for balls, censuses and trees.
    #[arg(long, global = true)]
    radius: Option<u32>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Sub {
    /// Topological type of a finite cover given by a homomorphism.
    ClassifyCover(Inputs),
    /// Universal abelian cover, with mod-n evidence for finite-type surfaces.
    Uac(Inputs),
    /// Mod-n homology cover.
    ModN(Inputs),
    /// Cover chain from a noncompact source down to a target.
    Chain(Inputs),
    /// Piece-graph model of a named infinite-type surface.
    Build(Inputs),
    /// End count of a group.
    Ends(Inputs),
    /// Boundary, coboundary test and coset test for an integer function on a group.
    Ai(Inputs),
    /// Isometries of the Bass–Serre tree of a free product.
    Tree(Inputs),
    /// Stallings folding of a subgroup of a free group.
    Fold(Inputs),
}

#[derive(Args, Default)]
struct Inputs {
    /// Input file in the covercalc language, or `-` for stdin.
    input: Option<String>,
    /// A surface: `g=1 b=0 p=1` or a name (plane, sphere, annulus, torus, flute, lnm, slnm, cantor, bct).
    #[arg(long)]
    surface: Option<String>,
    /// Chain source surface.
    #[arg(long)]
    source: Option<String>,
    /// Chain target surface.
    #[arg(long)]
    target: Option<String>,
    /// A homomorphism, as in `mod-n 3` or `target=(Z/2)^2 images: a1->(1,0), b1->(0,1)`.
    #[arg(long)]
    hom: Option<String>,
    /// Shorthand for `--hom "mod-n N"`.
    #[arg(long = "mod-n", short = 'n')]
    mod_n: Option<u64>,
    /// Moduli for mod-n evidence, comma separated.
    #[arg(long, value_delimiter = ',')]
    ns: Vec<u64>,
    /// A group: Z, Z^2, F2, Z/2*Z/3, Z/6, Z/2xZ/3.
    #[arg(long)]
    group: Option<String>,
    /// Free-product factors, comma separated: `Z/2,Z/3`.
    #[arg(long)]
    factors: Option<String>,
    /// Comma-separated words.
    #[arg(long)]
    gens: Option<String>,
    /// A word to classify; repeatable.
    #[arg(long)]
    classify: Vec<String>,
    /// An integer function: `default=0 vals: (a, 1), (a^2, 1)`.
    #[arg(long)]
    aifn: Option<String>,
    /// Use the regular cover even for a permutation target.
    #[arg(long)]
    regular: bool,
    /// Run Serre's criterion on the generators.
    #[arg(long)]
    serre: bool,
    /// Ambient free rank for `fold`.
    #[arg(long)]
    rank: Option<usize>,
}

fn surface_line(v: &str) -> String {
    if v.contains('=') {
        format!("surface {v}")
    } else {
        format!("surface named={v}")
    }
}

fn flag_lines(i: &Inputs) -> Vec<(&'static str, String)> {
    let mut out = Vec::new();
    for (flag, v) in [("--surface", &i.surface), ("--source", &i.source), ("--target", &i.target)] {
        if let Some(v) = v {
            out.push((flag, surface_line(v)));
        }
    }
    if let Some(h) = &i.hom {
        out.push(("--hom", format!("hom {h}")));
    }
    if let Some(n) = i.mod_n {
        out.push(("--mod-n", format!("hom mod-n {n}")));
    }
    if let Some(g) = &i.group {
        out.push(("--group", format!("group {g}")));
    }
    if let Some(f) = &i.factors {
        let g = if f.contains(',') { f.replace(',', "*") } else { format!("{f}*") };
        out.push(("--factors", format!("group {g}")));
    }
    let mut words: Vec<String> = i.gens.iter().cloned().collect();
    words.extend(i.classify.iter().cloned());
    if !words.is_empty() {
        out.push(("--gens/--classify", format!("subgroup gens: {}", words.join(", "))));
    }
    if let Some(a) = &i.aifn {
        out.push(("--aifn", format!("aifn {a}")));
    }
    out
}

fn build_request(cli: Cli) -> Result<Request, CliError> {
    let (command, inputs) = match cli.command {
        Sub::ClassifyCover(i) => (Command::ClassifyCover, i),
        Sub::Uac(i) => (Command::Uac, i),
        Sub::ModN(i) => (Command::ModN, i),
        Sub::Chain(i) => (Command::Chain, i),
        Sub::Build(i) => (Command::Build, i),
        Sub::Ends(i) => (Command::Ends, i),
        Sub::Ai(i) => (Command::Ai, i),
        Sub::Tree(i) => (Command::Tree, i),
        Sub::Fold(i) => (Command::Fold, i),
    };
    let mut statements: Vec<Statement> = Vec::new();
    if let Some(path) = &inputs.input {
        let text = if path == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("reading {path}: {e}")))?
        };
        statements.extend(parse_dsl(&text)?);
    }
    for (flag, line) in flag_lines(&inputs) {
        let parsed = parse_dsl(&line).map_err(|e| CliError::Usage(format!("{flag}: {e} in `{line}`")))?;
        statements.extend(parsed);
    }
    let mut limits = Limits::default();
    if let Some(m) = cli.max_ball {
        limits.max_ball = m;
    }
    Ok(Request {
        command,
        format: match cli.output {
            OutputFormat::Json => Format::Json,
            OutputFormat::Dot => Format::Dot,
            OutputFormat::Text => Format::Text,
        },
        statements,
        options: Options {
            radius: cli.radius,
            ns: inputs.ns,
            regular: inputs.regular,
            serre: inputs.serre,
            rank: inputs.rank,
            limits,
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match build_request(cli).and_then(|req| run(&req)) {
        Ok(doc) => {
            print!("{doc}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("covercalc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
