//! The `gdm` command line.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gauss_manifold_core::{
    apply_script, boundary_genera, builtin, check_chord_color_equalities, h1_normalized,
    intersection_matrix, is_homology_sphere, normalize_colors, pi1_closed, pi1_general,
    r_connected, validate, Decoration, GaussDiagram, MoveSpec,
};

use crate::export::{heegaard, to_dot, to_svg};
use crate::format::{parse, serialize};
use crate::script::{format_script, parse_script};

/// Gauss diagrams of 3-manifolds.
///
/// FILE is a path, `-` for standard input, or `builtin:NAME` for a
/// built-in example.
#[derive(Debug, Parser)]
#[command(name = "gdm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Diagram file, `-` for stdin, or `builtin:NAME`.
    file: String,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct ExportKind {
    /// Graphviz DOT of the ribbon graph.
    #[arg(long)]
    dot: bool,
    /// SVG drawing of the Heegaard layout.
    #[arg(long)]
    svg: bool,
    /// Heegaard layout as structured text.
    #[arg(long)]
    heegaard: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the diagram and its decoration.
    Validate(Input),
    /// Genus, excess, boundary genera and verdict.
    Info(Input),
    /// Traced boundary cycles with their colors.
    Cycles(Input),
    /// Fundamental group presentation.
    Pi1 {
        #[command(flatten)]
        input: Input,
        /// Use the spanning-tree presentation, valid for any decoration
        /// with distinct colors.
        #[arg(long)]
        general: bool,
    },
    /// First homology, normalizing colors first when needed.
    H1(Input),
    /// Whether the intersection matrix is unimodular.
    HomologySphere(Input),
    /// Intersection matrix: rows are plus circles, columns minus circles.
    Matrix(Input),
    /// Apply a move script and write the result.
    Move {
        #[command(flatten)]
        input: Input,
        /// Moves separated by `;` or newlines, e.g. `eps p1; stab 1 +`.
        #[arg(long)]
        spec: String,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Make every color cover one cycle by R-moves and write the result.
    Normalize {
        #[command(flatten)]
        input: Input,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print a built-in example; lists the names when none is given.
    Example { name: Option<String> },
    /// Export as DOT, SVG or Heegaard text.
    Export {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        kind: ExportKind,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn domain(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: message.to_string(),
    }
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

type Outcome = Result<(), Failure>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn load(&mut self, input: &Input) -> Result<(GaussDiagram, Decoration), Failure> {
        if let Some(name) = input.file.strip_prefix("builtin:") {
            return builtin::by_name(name).map_err(domain);
        }
        let text = if input.file == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| domain(format!("stdin: {e}")))?;
            s
        } else {
            fs::read_to_string(&input.file).map_err(|e| domain(format!("{}: {e}", input.file)))?
        };
        parse(&text).map_err(|e| domain(format!("{}: {e}", input.file)))
    }

    fn print(&mut self, text: &str) -> Outcome {
        self.stdout
            .write_all(text.as_bytes())
            .map_err(|e| domain(format!("stdout: {e}")))
    }

    fn emit(&mut self, output: Option<&Path>, text: &str) -> Outcome {
        match output {
            Some(p) if p != Path::new("-") => {
                fs::write(p, text).map_err(|e| domain(format!("{}: {e}", p.display())))
            }
            _ => self.print(text),
        }
    }

    fn warn(&mut self, text: &str) {
        let _ = writeln!(self.stderr, "warning: {text}");
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The diagram text preceded by the script as comments.
fn with_script(
    d: &GaussDiagram,
    deco: &Decoration,
    script: &[MoveSpec],
) -> Result<String, Failure> {
    let mut out: String = format_script(script)
        .lines()
        .map(|l| format!("# {l}\n"))
        .collect();
    out.push_str(&serialize(d, deco).map_err(domain)?);
    Ok(out)
}

fn execute(cmd: Command, io: &mut Io<'_>) -> Outcome {
    match cmd {
        Command::Validate(input) => {
            let (d, deco) = io.load(&input)?;
            let report = validate(&d, Some(&deco));
            let colors = check_chord_color_equalities(&d, &deco);
            if report.is_valid() && colors.is_empty() {
                return io.print("valid\n");
            }
            let mut text = String::from("invalid\n");
            for v in &report.violations {
                text.push_str(&format!("  {v}\n"));
            }
            for v in &colors {
                text.push_str(&format!(
                    "  colors break the turning relations at chord {}\n",
                    v.chord
                ));
            }
            io.print(&text)?;
            Err(domain("the diagram is invalid"))
        }
        Command::Info(input) => {
            let (d, deco) = io.load(&input)?;
            let r = boundary_genera(&d, &deco).map_err(domain)?;
            let rc = r_connected(&d, &deco).map_err(domain)?;
            let text = format!(
                "chords: {}\ncycles: {}\ncolors: {}\nexcess: {}\ngenus: {}\n\
                 k+: {}\nk-: {}\ndg+: {}\ndg-: {}\nverdict: {}\nr-connected: {}\n",
                d.chord_count(),
                deco.cycle_count(),
                deco.color_count(),
                r.excess,
                r.genus,
                r.k_plus,
                r.k_minus,
                r.dg_plus,
                r.dg_minus,
                r.verdict,
                yes_no(rc)
            );
            io.print(&text)
        }
        Command::Cycles(input) => {
            let (_, deco) = io.load(&input)?;
            let mut text = String::new();
            for (i, orbit) in deco.cycles().orbits().iter().enumerate() {
                text.push_str(&format!("{} color {}:", i + 1, deco.color_of_cycle(i)));
                for s in orbit {
                    text.push_str(&format!(" {s}"));
                }
                text.push('\n');
            }
            io.print(&text)
        }
        Command::Pi1 { input, general } => {
            let (d, deco) = io.load(&input)?;
            let p = if general {
                pi1_general(&d, &deco)
            } else {
                pi1_closed(&d)
            }
            .map_err(domain)?;
            for w in &p.warnings {
                io.warn(&w.to_string());
            }
            io.print(&format!("{p}\n"))
        }
        Command::H1(input) => {
            let (d, deco) = io.load(&input)?;
            let h = h1_normalized(&d, &deco).map_err(domain)?;
            io.print(&format!("{h}\n"))
        }
        Command::HomologySphere(input) => {
            let (d, _) = io.load(&input)?;
            let yes = is_homology_sphere(&d).map_err(domain)?;
            io.print(&format!("{}\n", yes_no(yes)))
        }
        Command::Matrix(input) => {
            let (d, _) = io.load(&input)?;
            io.print(&intersection_matrix(&d).map_err(domain)?.to_string())
        }
        Command::Move {
            input,
            spec,
            output,
        } => {
            let script = parse_script(&spec).map_err(usage)?;
            let (d, deco) = io.load(&input)?;
            let (nd, ndeco) = apply_script(&d, &deco, &script).map_err(domain)?;
            let text = with_script(&nd, &ndeco, &script)?;
            io.emit(output.as_deref(), &text)
        }
        Command::Normalize { input, output } => {
            let (d, deco) = io.load(&input)?;
            let (nd, ndeco, script) = normalize_colors(&d, &deco).map_err(domain)?;
            let text = with_script(&nd, &ndeco, &script)?;
            io.emit(output.as_deref(), &text)
        }
        Command::Example { name } => match name {
            None => {
                let names: String = builtin::NAMES.iter().map(|n| format!("{n}\n")).collect();
                io.print(&names)
            }
            Some(name) => {
                let (d, deco) = builtin::by_name(&name).map_err(domain)?;
                io.print(&serialize(&d, &deco).map_err(domain)?)
            }
        },
        Command::Export {
            input,
            kind,
            output,
        } => {
            let (d, _) = io.load(&input)?;
            let text = if kind.dot {
                to_dot(&d)
            } else {
                let layout = heegaard(&d).map_err(domain)?;
                if kind.svg {
                    to_svg(&layout)
                } else {
                    layout.to_string()
                }
            };
            io.emit(output.as_deref(), &text)
        }
    }
}

/// Runs the CLI and returns the exit code: 0 on success, 1 on a domain
/// error, 2 on a usage error.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io {
        stdin,
        stdout,
        stderr,
    };
    match execute(cli.command, &mut io) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(io.stderr, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gdm(args: &[&str], stdin: &str) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("gdm").chain(args.iter().copied());
        let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(gdm(&[], "").0, 2);
        assert_eq!(gdm(&["frobnicate"], "").0, 2);
        assert_eq!(gdm(&["export", "builtin:s3"], "").0, 2);
        assert_eq!(gdm(&["export", "builtin:s3", "--dot", "--svg"], "").0, 2);
        let (code, _, err) = gdm(&["move", "builtin:s3", "--spec", "twist p1"], "");
        assert_eq!(code, 2);
        assert!(err.contains("unknown move"), "{err}");
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = gdm(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("homology-sphere"));
    }

    #[test]
    fn reads_stdin() {
        let (code, out, _) = gdm(
            &["info", "-"],
            "gd v1\nchord 1 -\nplus a = 1\nminus b = 1\n",
        );
        assert_eq!(code, 0);
        assert!(out.contains("verdict: closed"));
    }

    #[test]
    fn domain_errors_exit_1() {
        let (code, _, err) = gdm(&["info", "-"], "gd v1\nchord 1 +\n");
        assert_eq!(code, 1);
        assert!(err.contains("line 2"), "{err}");
        assert_eq!(gdm(&["info", "builtin:lens:4:2"], "").0, 1);
        assert_eq!(gdm(&["info", "/nonexistent/file.gd"], "").0, 1);
        assert_eq!(gdm(&["homology-sphere", "builtin:solid-torus"], "").0, 1);
        assert_eq!(gdm(&["move", "builtin:s3", "--spec", "eps p2"], "").0, 1);
    }

    #[test]
    fn move_writes_the_script_as_comments() {
        let (code, out, _) = gdm(&["move", "builtin:s3", "--spec", "eps p1; eps p1"], "");
        assert_eq!(code, 0);
        assert!(out.starts_with("# eps p1\n# eps p1\ngd v1\n"), "{out}");
        assert_eq!(parse(&out).unwrap(), builtin::s3());
    }
}
