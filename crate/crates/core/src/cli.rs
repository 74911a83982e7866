//! Command-line front end: parsing, dispatch and report emission.

use crate::bundle::RealiserBundle;
use crate::kernel::syntax::{parse_bundle, parse_proof};
use crate::kernel::{check_proof, extract_dst, extract_u, ExtractError, Proof};
use crate::oracle::{replay, verify_bundle_with, Exec, Grid, Truth, Verdict};
use crate::reduce::normalize;
use crate::report::{InputDigest, Item, NamedTerm, Report, Status};
use crate::syntax::{read_one, ParseError, Reader, Sexp};
use crate::translate::{translate, Flavor};
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(
    name = "nsdial",
    version,
    about = "Nonstandard Dialectica and uniform Diller-Nahm toolkit"
)]
pub struct Cli {
    /// Also write a JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Sweep grids on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
#[group(required = true, multiple = false)]
pub struct FlavorArg {
    /// Nonstandard Dialectica.
    #[arg(long)]
    pub dst: bool,
    /// Uniform Diller-Nahm.
    #[arg(long)]
    pub u: bool,
}

impl FlavorArg {
    fn flavor(self) -> Flavor {
        if self.dst {
            Flavor::Dst
        } else {
            Flavor::U
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GridArg {
    #[arg(long, default_value_t = 3)]
    pub nat_bound: u64,
    #[arg(long, default_value_t = 2)]
    pub len_bound: usize,
}

impl GridArg {
    fn grid(self) -> Grid {
        Grid::new(self.nat_bound, self.len_bound)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse, type and normalize a term.
    CheckTerm { file: PathBuf },
    /// Translate a formula.
    Translate {
        #[command(flatten)]
        flavor: FlavorArg,
        file: PathBuf,
    },
    /// Check a proof and print its conclusion.
    CheckProof { file: PathBuf },
    /// Extract a realiser bundle from a proof.
    Extract {
        #[command(flatten)]
        flavor: FlavorArg,
        file: PathBuf,
    },
    /// Verify a realiser bundle on a finite grid.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        grid: GridArg,
    },
    /// Batch operations over a fixture directory.
    Corpus {
        #[command(subcommand)]
        action: CorpusCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum CorpusCmd {
    /// Process every fixture in DIR. Files named `*.bad.*` are expected to fail.
    Run {
        dir: PathBuf,
        #[command(flatten)]
        grid: GridArg,
    },
}

/// What a command produced: text for standard output and the report.
pub struct Outcome {
    pub text: String,
    pub report: Report,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.report.status.exit_code()
    }
}

fn exec(cli: &Cli) -> Exec {
    if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli, argv: &[String]) -> Outcome {
    let start = Instant::now();
    let mut inputs = Vec::new();
    let mut grid = None;
    let items = match &cli.command {
        Command::CheckTerm { file } => vec![with_file(file, &mut inputs, check_term)],
        Command::Translate { flavor, file } => {
            vec![with_file(file, &mut inputs, |n, s| {
                translate_item(n, s, flavor.flavor())
            })]
        }
        Command::CheckProof { file } => vec![with_file(file, &mut inputs, check_proof_item)],
        Command::Extract { flavor, file } => {
            vec![with_file(file, &mut inputs, |n, s| extract_item(n, s, flavor.flavor()))]
        }
        Command::Verify { file, grid: g } => {
            grid = Some(g.grid());
            vec![with_file(file, &mut inputs, |n, s| {
                verify_item(n, s, g.grid(), exec(cli))
            })]
        }
        Command::Corpus {
            action: CorpusCmd::Run { dir, grid: g },
        } => {
            grid = Some(g.grid());
            corpus(dir, g.grid(), exec(cli), &mut inputs)
        }
    };
    let status = Report::summarize(&items);
    let text = render(&items, &status);
    let report = Report {
        command: argv.to_vec(),
        inputs,
        status,
        items,
        grid: grid.map(Into::into),
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Outcome { text, report }
}

fn render(items: &[Item], status: &Status) -> String {
    let mut out = String::new();
    for i in items {
        let tag = serde_json::to_value(&i.status).unwrap();
        out += &format!("{}: {}", i.name, tag.as_str().unwrap_or("?"));
        if let Some(v) = &i.verdict {
            out += &format!(" ({v})");
        }
        out += "\n";
        if let Some(o) = &i.output {
            out += o;
            out += "\n";
        }
        for t in &i.terms {
            out += &format!("  {} : {} := {}\n", t.name, t.ty, t.term);
        }
        if let Some(c) = &i.counterexample {
            out += "  counterexample:";
            for b in c {
                out += &format!(" {} = {};", b.name, b.value);
            }
            out += "\n";
        }
    }
    if items.len() > 1 {
        let tag = serde_json::to_value(status).unwrap();
        out += &format!("overall: {}\n", tag.as_str().unwrap_or("?"));
    }
    out
}

fn with_file(path: &Path, inputs: &mut Vec<InputDigest>, f: impl FnOnce(&str, &str) -> Item) -> Item {
    let name = path.display().to_string();
    match std::fs::read(path) {
        Ok(bytes) => {
            inputs.push(InputDigest::of(path, &bytes));
            match String::from_utf8(bytes) {
                Ok(src) => f(&name, &src),
                Err(_) => Item::error(&name, Status::Error, format!("{name}: not valid UTF-8")),
            }
        }
        Err(e) => Item::error(&name, Status::Error, format!("{name}: {e}")),
    }
}

fn parse_error(name: &str, e: &ParseError) -> Item {
    Item::error(
        name,
        Status::Error,
        format!("{name}:{}:{}: {}", e.pos.line, e.pos.col, e.message),
    )
}

fn sexp(name: &str, src: &str) -> Result<Sexp, Box<Item>> {
    read_one(src).map_err(|e| Box::new(parse_error(name, &e)))
}

pub fn check_term(name: &str, src: &str) -> Item {
    let s = match sexp(name, src) {
        Ok(s) => s,
        Err(i) => return *i,
    };
    let mut rd = Reader::new();
    let t = match rd.term(&s, None) {
        Ok(t) => t,
        Err(e) => return parse_error(name, &e),
    };
    let ty = t.ty();
    let nf = normalize(&t);
    Item {
        output: Some(format!("{nf} : {ty}")),
        ..Item::new(name, Status::Ok)
    }
}

pub fn translate_item(name: &str, src: &str, flavor: Flavor) -> Item {
    let s = match sexp(name, src) {
        Ok(s) => s,
        Err(i) => return *i,
    };
    let f = match Reader::new().formula(&s) {
        Ok(f) => f,
        Err(e) => return parse_error(name, &e),
    };
    match translate(&f, flavor) {
        Ok(tf) => Item {
            output: Some(tf.to_sexp().to_string()),
            ..Item::new(name, Status::Ok)
        },
        Err(e) => Item::error(name, Status::Error, format!("{name}: {e}")),
    }
}

fn load_proof(name: &str, src: &str) -> Result<Proof, Box<Item>> {
    let s = sexp(name, src)?;
    parse_proof(&s).map_err(|e| Box::new(parse_error(name, &e)))
}

pub fn check_proof_item(name: &str, src: &str) -> Item {
    let p = match load_proof(name, src) {
        Ok(p) => p,
        Err(i) => return *i,
    };
    match check_proof(&p) {
        Ok(c) => Item {
            output: Some(format!("{}: {}", p.flavor, crate::syntax::formula_sexp(&c))),
            ..Item::new(name, Status::Ok)
        },
        Err(e) => Item::error(name, Status::CheckFailed, format!("{name}: {e}")),
    }
}

fn bundle_terms(b: &RealiserBundle) -> Vec<NamedTerm> {
    b.named_terms()
        .into_iter()
        .map(|(name, ty, term)| NamedTerm { name, ty, term })
        .collect()
}

fn extracted(name: &str, p: &Proof, flavor: Flavor) -> Result<RealiserBundle, Box<Item>> {
    let r = match flavor {
        Flavor::U => extract_u(p),
        Flavor::Dst => extract_dst(p),
    };
    r.map_err(|e| {
        let status = match e {
            ExtractError::Bundle(_) | ExtractError::UnsupportedSchema(_) => Status::Error,
            _ => Status::CheckFailed,
        };
        Box::new(Item::error(name, status, format!("{name}: {e}")))
    })
}

pub fn extract_item(name: &str, src: &str, flavor: Flavor) -> Item {
    let p = match load_proof(name, src) {
        Ok(p) => p,
        Err(i) => return *i,
    };
    match extracted(name, &p, flavor) {
        Ok(b) => Item {
            output: Some(b.to_sexp().pretty(100)),
            terms: bundle_terms(&b),
            ..Item::new(name, Status::Ok)
        },
        Err(i) => *i,
    }
}

/// Verifies a bundle; counterexamples are replayed and must evaluate false.
fn verify_loaded(name: &str, b: &RealiserBundle, grid: Grid, exec: Exec) -> Item {
    let v = verify_bundle_with(b, &grid, exec);
    let mut item = Item {
        terms: bundle_terms(b),
        ..Item::new(name, Status::Ok)
    }
    .with_verdict(&v);
    if let Verdict::CounterexampleFound(a) = &v {
        let r = replay(b, a, &grid);
        item.output = Some(format!("replay: {r}"));
        if r != Truth::False {
            item.status = Status::Error;
            item.diagnostic = Some(format!("{name}: counterexample did not replay to false ({r})"));
        }
    }
    item
}

pub fn verify_item(name: &str, src: &str, grid: Grid, exec: Exec) -> Item {
    let s = match sexp(name, src) {
        Ok(s) => s,
        Err(i) => return *i,
    };
    match parse_bundle(&s) {
        Ok(b) => verify_loaded(name, &b, grid, exec),
        Err(e) => parse_error(name, &e),
    }
}

/// Check, extract in the proof's own flavor, and verify.
pub fn proof_pipeline(name: &str, src: &str, grid: Grid, exec: Exec) -> Item {
    let p = match load_proof(name, src) {
        Ok(p) => p,
        Err(i) => return *i,
    };
    if let Err(e) = check_proof(&p) {
        return Item::error(name, Status::CheckFailed, format!("{name}: {e}"));
    }
    match extracted(name, &p, p.flavor) {
        Ok(b) => verify_loaded(name, &b, grid, exec),
        Err(i) => *i,
    }
}

fn corpus_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d)? {
            let p = e?.path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push(p);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn corpus_item(path: &Path, src: &str, grid: Grid, exec: Exec) -> Option<Item> {
    let name = path.display().to_string();
    let ext = path.extension()?.to_str()?;
    let mut item = match ext {
        "term" => check_term(&name, src),
        "f" => {
            let u = translate_item(&name, src, Flavor::U);
            let d = translate_item(&name, src, Flavor::Dst);
            match (&u.output, &d.output) {
                (Some(a), Some(b)) => Item {
                    output: Some(format!("u: {a}\ndst: {b}")),
                    ..u
                },
                _ if u.status != Status::Ok => u,
                _ => d,
            }
        }
        "proof" => proof_pipeline(&name, src, grid, exec),
        "bundle" => verify_item(&name, src, grid, exec),
        _ => return None,
    };
    let bad = path
        .file_name()
        .and_then(|n| n.to_str())
        .is_some_and(|n| n.contains(".bad."));
    item.as_expected = Some((item.status == Status::Ok) != bad);
    Some(item)
}

fn corpus(dir: &Path, grid: Grid, exec: Exec, inputs: &mut Vec<InputDigest>) -> Vec<Item> {
    let files = match corpus_files(dir) {
        Ok(f) => f,
        Err(e) => return vec![Item::error(dir.display().to_string(), Status::Error, e.to_string())],
    };
    let mut loaded = Vec::new();
    for p in files {
        match std::fs::read(&p) {
            Ok(bytes) => {
                inputs.push(InputDigest::of(&p, &bytes));
                loaded.push((p, String::from_utf8_lossy(&bytes).into_owned()));
            }
            Err(e) => return vec![Item::error(p.display().to_string(), Status::Error, e.to_string())],
        }
    }
    let work = |(p, src): &(PathBuf, String)| corpus_item(p, src, grid, exec);
    #[cfg(feature = "parallel")]
    let items: Vec<Option<Item>> = {
        use rayon::prelude::*;
        match exec {
            Exec::Parallel => loaded.par_iter().map(work).collect(),
            Exec::Sequential => loaded.iter().map(work).collect(),
        }
    };
    #[cfg(not(feature = "parallel"))]
    let items: Vec<Option<Item>> = loaded.iter().map(work).collect();
    items.into_iter().flatten().collect()
}
