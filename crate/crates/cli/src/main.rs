use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use sylow2::catalog::{self, FamilySpec, TableEntry, VerifyReport};
use sylow2::constructions::{build_s, deserialize, serialize, TwistParams};
use sylow2::presentations::{build_base, BaseGroupSpec, TwistKind};
use sylow2::rank::{self, RankReport, StrategyRegistry};
use sylow2::{Descriptor, Error, Group, DEFAULT_CAP};

mod exit {
    pub const MISMATCH: u8 = 1;
    pub const CAP: u8 = 2;
    pub const UNSUPPORTED: u8 = 3;
    pub const MALFORMED: u8 = 4;
}

#[derive(Parser)]
#[command(name = "sylow2", version, about = "Sylow 2-subgroups of classical groups and their 2-ranks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and write it in the group file format.
    Construct {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the 2-rank (and with --normal the normal 2-rank).
    Rank {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        normal: bool,
        #[arg(long, default_value = "search")]
        engine: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare computed ranks with the closed-form table.
    VerifyTable {
        /// Lines of `family n q [rank nrank]`; `#` starts a comment.
        manifest: Option<PathBuf>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 8192)]
        max_order: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Element counts for wreath products and the fixed-point-free sequence.
    Counts {
        /// `kind,t` of the base group Q.
        #[arg(long, requires = "levels", conflicts_with = "vn")]
        base: Option<String>,
        #[arg(long)]
        levels: Option<u32>,
        /// `p n`: v_1..v_n for the prime p.
        #[arg(long, num_args = 2, value_names = ["P", "N"])]
        vn: Option<Vec<u32>>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Where a group comes from.
#[derive(Args)]
struct Source {
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    /// Group file written by `construct`.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Base group as `kind,t`.
    #[arg(long)]
    base: Option<String>,
    /// Named action as `kind,t`; with --blocks builds S(T,R,J).
    #[arg(long)]
    twist: Option<String>,
    #[arg(long, default_value_t = 1)]
    blocks: usize,
    /// Descriptor such as `product(dihedral(3),elem(1))`.
    #[arg(long)]
    descriptor: Option<String>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::CapExceeded { .. }) => exit::CAP,
            Failure::Lib(Error::BadParameter(_) | Error::UnsupportedCase(_)) => exit::UNSUPPORTED,
            Failure::Lib(_) | Failure::Io(_) | Failure::Usage(_) => exit::MALFORMED,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "io: {e}"),
            Failure::Usage(e) => write!(f, "{e}"),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn kind_and_t<K: std::str::FromStr<Err = Error>>(s: &str) -> Result<(K, u32), Failure> {
    let (k, t) = s
        .split_once(',')
        .ok_or_else(|| Failure::Usage(format!("expected `kind,t`, got `{s}`")))?;
    let t = t
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("bad parameter `{t}`")))?;
    Ok((k.trim().parse()?, t))
}

impl Source {
    fn family_spec(&self) -> Result<Option<FamilySpec>, Failure> {
        match (&self.family, self.n, self.q) {
            (None, None, None) => Ok(None),
            (Some(f), Some(n), Some(q)) => Ok(Some(FamilySpec::new(f.parse()?, n, q))),
            _ => Err(Failure::Usage("--family needs --n and --q".into())),
        }
    }

    fn load(&self) -> Result<Group, Failure> {
        let spec = self.family_spec()?;
        let chosen = [
            spec.is_some(),
            self.file.is_some(),
            self.base.is_some(),
            self.twist.is_some(),
            self.descriptor.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if chosen != 1 {
            return Err(Failure::Usage(
                "give exactly one of --family, --file, --base, --twist, --descriptor".into(),
            ));
        }
        if let Some(spec) = spec {
            return Ok(catalog::construct_sylow(&spec, self.cap)?);
        }
        if let Some(path) = &self.file {
            return Ok(deserialize(&fs::read_to_string(path)?, self.cap)?);
        }
        if let Some(b) = &self.base {
            let (kind, t) = kind_and_t(b)?;
            return Ok(build_base(BaseGroupSpec::new(kind, t))?);
        }
        if let Some(tw) = &self.twist {
            let (kind, t): (TwistKind, u32) = kind_and_t(tw)?;
            return Ok(build_s(&TwistParams::from_kind(kind, t)?, self.blocks, self.cap)?);
        }
        let d: Descriptor = self.descriptor.as_deref().unwrap_or_default().parse()?;
        Ok(d.natural_group()?)
    }
}

fn cmd_construct(source: &Source, out: Option<&PathBuf>) -> Outcome {
    let g = source.load()?;
    let text = serialize(&g)?;
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_rank(source: &Source, normal: bool, engine: &str, format: Format) -> Outcome {
    let g = Arc::new(source.load()?);
    let registry = StrategyRegistry::default();
    let report = RankReport::compute(&g, registry.get(engine)?, normal)?;
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", serde_json::to_string(&report).expect("report serializes")),
    }
    Ok(0)
}

/// One manifest row: a spec with optional expected values.
fn parse_manifest(text: &str) -> Result<Vec<(FamilySpec, Option<TableEntry>)>, Failure> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = || Failure::Lib(Error::Parse(format!("manifest line {}: `{line}`", i + 1)));
        let expected = match parts.len() {
            3 => None,
            5 => {
                let r = parts[3].parse().map_err(|_| bad())?;
                let nr = parts[4].parse().map_err(|_| bad())?;
                Some(TableEntry { rank: r, normal_rank: nr })
            }
            _ => return Err(bad()),
        };
        let spec: FamilySpec = parts[..3].join(" ").parse().map_err(|_| bad())?;
        rows.push((spec, expected));
    }
    Ok(rows)
}

fn cmd_verify_table(
    manifest: Option<&PathBuf>,
    all: bool,
    max_order: usize,
    workers: usize,
    format: Format,
) -> Outcome {
    if workers == 0 {
        return Err(Failure::Usage("--workers must be at least 1".into()));
    }
    let rows: Vec<(FamilySpec, Option<TableEntry>)> = match (manifest, all) {
        (Some(path), false) => parse_manifest(&fs::read_to_string(path)?)?,
        (None, true) => catalog::all_specs(max_order).into_iter().map(|s| (s, None)).collect(),
        _ => return Err(Failure::Usage("give a manifest or --all".into())),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let results: Vec<Result<VerifyReport, Error>> = pool.install(|| {
        rows.par_iter()
            .map(|(spec, expected)| catalog::verify_with(spec, *expected, max_order))
            .collect()
    });

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut passed = 0;
    let mut first_error: Option<Failure> = None;
    for ((spec, _), r) in rows.iter().zip(results) {
        match r {
            Ok(rep) => {
                passed += rep.matches as usize;
                match format {
                    Format::Json => writeln!(out, "{}", serde_json::to_string(&rep).expect("report serializes"))?,
                    Format::Text => writeln!(
                        out,
                        "{} {spec} order {} rank {}/{} nrank {}/{}",
                        if rep.matches { "ok  " } else { "FAIL" },
                        rep.order,
                        rep.rank,
                        rep.expected_rank,
                        rep.nrank,
                        rep.expected_nrank
                    )?,
                }
            }
            Err(e) => {
                eprintln!("error {spec}: {e}");
                first_error.get_or_insert(Failure::Lib(e));
            }
        }
    }
    let total = rows.len();
    eprintln!("{} {passed}/{total}", if passed == total { "PASS" } else { "FAIL" });
    if let Some(e) = first_error {
        return Ok(e.code());
    }
    Ok(if passed == total { 0 } else { exit::MISMATCH })
}

fn cmd_counts(base: Option<&str>, levels: Option<u32>, vn: Option<&[u32]>, cap: usize, format: Format) -> Outcome {
    let ok;
    match (base, vn) {
        (Some(b), None) => {
            let (kind, t) = kind_and_t(b)?;
            let q = Arc::new(build_base(BaseGroupSpec::new(kind, t))?);
            let rows = rank::wreath_count_table(&q, levels.unwrap_or(1), cap)?;
            ok = rows.iter().all(|r| r.ok);
            match format {
                Format::Json => println!("{}", serde_json::to_string(&rows).expect("rows serialize")),
                Format::Text => {
                    println!("level order d predicted coset ok");
                    for r in &rows {
                        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
                        println!(
                            "{} {} {} {} {} {}",
                            r.level,
                            r.order,
                            r.count,
                            opt(r.predicted.map(|p| p.to_string())),
                            opt(r.coset_count.map(|c| c.to_string())),
                            if r.ok { "OK" } else { "MISMATCH" }
                        );
                    }
                }
            }
        }
        (None, Some(pn)) => {
            let rows = rank::count_fixed_point_free(pn[0], pn[1], cap)?;
            ok = rows.iter().all(|r| r.ok);
            match format {
                Format::Json => println!("{}", serde_json::to_string(&rows).expect("rows serialize")),
                Format::Text => {
                    let v: Vec<String> = rows.iter().map(|r| r.v.to_string()).collect();
                    println!("v = [{}]", v.join(", "));
                    for r in &rows {
                        let rec = r.recursion.map_or("-".to_string(), |x| x.to_string());
                        println!("{} {} {} {}", r.level, r.v, rec, if r.ok { "OK" } else { "MISMATCH" });
                    }
                }
            }
        }
        _ => return Err(Failure::Usage("give --base kind,t --levels k or --vn p n".into())),
    }
    Ok(if ok { 0 } else { exit::MISMATCH })
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Construct { source, out } => cmd_construct(source, out.as_ref()),
        Command::Rank {
            source,
            normal,
            engine,
            format,
        } => cmd_rank(source, *normal, engine, *format),
        Command::VerifyTable {
            manifest,
            all,
            max_order,
            workers,
            format,
        } => cmd_verify_table(manifest.as_ref(), *all, *max_order, *workers, *format),
        Command::Counts {
            base,
            levels,
            vn,
            cap,
            format,
        } => cmd_counts(base.as_deref(), *levels, vn.as_deref(), *cap, *format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::MALFORMED } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
