//! `uvk`: check `.uv` files, print normal forms, verify the corpus.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use uvkernel::check::normalize_definition;
use uvkernel::corpus::{verify_corpus, CorpusReport, Manifest, Status};
use uvkernel::driver::{check_source, prelude_env};
use uvkernel::{Category, Diagnostic, GlobalEnv, SourceFile};

#[derive(Parser, Debug)]
#[command(name = "uvk", version, about = "Proof checker for a univalent type theory with universe levels")]
struct Cli {
    /// Emit machine-readable JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Keep checking after the first failing declaration.
    #[arg(long, global = true)]
    keep_going: bool,
    /// Print nothing on success.
    #[arg(long, global = true)]
    quiet: bool,
    /// Start from an empty environment instead of the bundled prelude.
    #[arg(long, global = true)]
    no_prelude: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Type check files in order; later files see earlier declarations.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Print the normal form of a definition's body.
    Normalize { path: PathBuf, name: String },
    /// Verify the corpus described by a manifest.
    Corpus {
        /// Defaults to `$UVK_CORPUS_DIR/manifest.tsv`, then `corpus/manifest.tsv`.
        manifest: Option<PathBuf>,
    },
}

#[derive(Clone, Copy)]
struct Output {
    json: bool,
    quiet: bool,
}

impl Output {
    fn diagnostic(&self, d: &Diagnostic) {
        let mut err = std::io::stderr().lock();
        if self.json {
            let _ = writeln!(err, "{}", serde_json::to_string(d).expect("diagnostics serialize"));
        } else {
            let _ = writeln!(err, "{d}");
        }
    }

    fn info(&self, line: &str) {
        if !self.quiet && !self.json {
            println!("{line}");
        }
    }
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn initial_env(cli: &Cli) -> GlobalEnv {
    if cli.no_prelude {
        GlobalEnv::new()
    } else {
        prelude_env()
    }
}

/// Reads and checks `paths` in order. Returns the worst exit code seen.
fn check_files(g: &mut GlobalEnv, paths: &[PathBuf], cli: &Cli, out: &Output) -> i32 {
    let mut code = 0;
    for path in paths {
        let name = path.display().to_string();
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                out.diagnostic(&Diagnostic::new(&name, Category::Io, format!("cannot read {name}: {e}")));
                code = code.max(Category::Io.exit_code());
                if cli.keep_going {
                    continue;
                }
                return code;
            }
        };
        let outcome = check_source(g, &SourceFile::new(&name, text), cli.keep_going);
        for d in &outcome.diagnostics {
            out.diagnostic(d);
            code = code.max(d.exit_code());
        }
        if outcome.ok() {
            out.info(&format!("{name}: {} declarations ok", outcome.declarations.len()));
        } else if !cli.keep_going {
            return code;
        }
    }
    code
}

fn run_check(cli: &Cli, paths: &[PathBuf], out: &Output) -> i32 {
    let mut g = initial_env(cli);
    check_files(&mut g, paths, cli, out)
}

fn run_normalize(cli: &Cli, path: &Path, name: &str, out: &Output) -> i32 {
    let mut g = initial_env(cli);
    let code = check_files(&mut g, &[path.to_path_buf()], cli, &Output { quiet: true, ..*out });
    if code != 0 {
        return code;
    }
    match normalize_definition(&g, name) {
        Some(nf) => {
            if out.json {
                println!("{}", serde_json::json!({ "name": name, "normal_form": nf.to_string() }));
            } else {
                println!("{nf}");
            }
            0
        }
        None => {
            let message = match g.get(name) {
                Some(_) => format!("`{name}` is a postulate and has no body"),
                None => format!("no definition named `{name}`"),
            };
            let d = Diagnostic {
                declaration: Some(name.to_string()),
                ..Diagnostic::new(path.display().to_string(), Category::UnknownDefinition, message)
            };
            out.diagnostic(&d);
            d.exit_code()
        }
    }
}

fn default_manifest() -> PathBuf {
    match std::env::var_os("UVK_CORPUS_DIR") {
        Some(dir) => PathBuf::from(dir).join("manifest.tsv"),
        None => PathBuf::from("corpus/manifest.tsv"),
    }
}

fn print_table(report: &CorpusReport) {
    let width = report.declarations.iter().map(|d| d.name.len()).max().unwrap_or(0);
    let fwidth = report.declarations.iter().map(|d| d.file.len()).max().unwrap_or(0);
    for d in &report.declarations {
        let status = match d.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        println!("{status}  {:<5}  {:<fwidth$}  {:<width$}  {}", d.tier.as_str(), d.file, d.name, d.anchor);
    }
    let counts: Vec<String> = report.counts.iter().map(|(t, n)| format!("{t} {n}")).collect();
    let passed = report.declarations.iter().filter(|d| d.status == Status::Pass).count();
    println!(
        "{passed}/{} declarations pass across {} files ({}); {} postulates; {} ms",
        report.declarations.len(),
        report.files.len(),
        counts.join(", "),
        report.postulates.len(),
        report.duration_ms
    );
}

fn run_corpus(cli: &Cli, manifest: Option<&Path>, out: &Output) -> i32 {
    let path = manifest.map(Path::to_path_buf).unwrap_or_else(default_manifest);
    let manifest = match Manifest::load(&path) {
        Ok(m) => m,
        Err(e) => {
            let d = e.to_diagnostic();
            out.diagnostic(&d);
            return d.exit_code();
        }
    };
    // the manifest lists the prelude itself, so start empty unless asked
    // to verify a corpus on top of the bundled one
    let env0 =
        if manifest.files().contains(&"prelude.uv") || cli.no_prelude { GlobalEnv::new() } else { prelude_env() };
    let (report, _) = verify_corpus(env0, &manifest, cli.keep_going);
    for d in &report.diagnostics {
        out.diagnostic(d);
    }
    if out.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else if !out.quiet {
        print_table(&report);
    }
    report.exit_code()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output { json: cli.json, quiet: cli.quiet };
    let code = match &cli.command {
        Command::Check { paths } => run_check(&cli, paths, &out),
        Command::Normalize { path, name } => run_normalize(&cli, path, name, &out),
        Command::Corpus { manifest } => run_corpus(&cli, manifest.as_deref(), &out),
    };
    exit(code)
}
