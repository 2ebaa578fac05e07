//! The `acs` command line.

use std::path::{Path, PathBuf};

use abelian_cs::chern_simons::{evaluate, CsLevel, WilsonLink};
use abelian_cs::error::{CsError, LinkFileError, LinkingError, ManifoldError};
use abelian_cs::linkfile::{parse_link_file, LinkFile};
use abelian_cs::linking::{classify, pairing_matrix};
use abelian_cs::manifold::{builtin, builtin_names, load_triangulation, Triangulation};
use abelian_cs::par::Parallelism;
use abelian_cs::report::{
    ClassEntry, ClassifyReport, HomologyReport, LinkReport, WilsonReport,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

/// Exit status for each failure class.
pub mod exit {
    pub const OK: u8 = 0;
    pub const IO: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const VALIDATION: u8 = 3;
    pub const REJECTED: u8 = 4;
    pub const UNSUPPORTED: u8 = 5;
}

#[derive(Parser, Debug)]
#[command(name = "acs", version, about = "Exact abelian Chern-Simons link invariants on triangulated 3-manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integral homology H_0..H_3.
    Homology(Common),
    /// Classify cycles as trivial, torsion of degree p, or free.
    Classify(ClassifyArgs),
    /// Rational linking matrix of a framed link.
    Link(LinkArgs),
    /// Wilson-line expectation value of a charged framed link.
    Wilson(WilsonArgs),
}

#[derive(Args, Debug)]
pub struct Common {
    /// Builtin name (s3, s3-join, rp3, lens-<p>) or triangulation file.
    #[arg(long)]
    pub manifold: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Also classify the cycles declared in this link file.
    #[arg(long)]
    pub link: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LinkArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub link: PathBuf,
}

#[derive(Args, Debug)]
pub struct WilsonArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub link: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub level: i64,
    /// Comma-separated charges, one per component; overrides the file.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub charges: Option<Vec<i64>>,
    /// Also print the complex value with this many decimals.
    #[arg(long)]
    pub decimal_digits: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("constraint rejection: {0}")]
    Rejected(String),
    #[error("unsupported manifold class: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => exit::PARSE,
            CliError::Validation(_) => exit::VALIDATION,
            CliError::Rejected(_) => exit::REJECTED,
            CliError::Unsupported(_) => exit::UNSUPPORTED,
            CliError::Io(_) => exit::IO,
        }
    }
}

impl From<ManifoldError> for CliError {
    fn from(e: ManifoldError) -> Self {
        match e {
            ManifoldError::Parse(_) => CliError::Parse(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<LinkingError> for CliError {
    fn from(e: LinkingError) -> Self {
        match e {
            LinkingError::FreeCycle(_) => CliError::Unsupported(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<LinkFileError> for CliError {
    fn from(e: LinkFileError) -> Self {
        match e {
            LinkFileError::Parse(_) => CliError::Parse(e.to_string()),
            LinkFileError::Linking(l) => l.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<CsError> for CliError {
    fn from(e: CsError) -> Self {
        match e {
            CsError::Rejected(_) => CliError::Rejected(e.to_string()),
            CsError::UnsupportedManifold(_) => CliError::Unsupported(e.to_string()),
            CsError::Linking(l) => l.into(),
            CsError::ZeroLevel | CsError::ZeroCharge(_) => CliError::Validation(e.to_string()),
        }
    }
}

pub fn load_manifold(source: &str) -> Result<Triangulation, CliError> {
    if let Some(tri) = builtin(source) {
        return Ok(tri?);
    }
    if Path::new(source).exists() {
        return Ok(load_triangulation(source)?);
    }
    Err(CliError::Parse(format!(
        "unknown manifold `{source}`: not a file and not one of {}",
        builtin_names().join(", ")
    )))
}

fn render<T: Serialize>(report: &T, text: impl FnOnce(&T) -> String, format: Format) -> String {
    match format {
        Format::Text => text(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

fn load_link(path: &Path) -> Result<LinkFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_link_file(&text)?)
}

/// Runs one command and returns the report text.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Homology(c) => {
            let tri = load_manifold(&c.manifold)?;
            let r = HomologyReport::new(&tri);
            Ok(render(&r, HomologyReport::to_text, c.format))
        }
        Command::Classify(a) => {
            let tri = load_manifold(&a.common.manifold)?;
            let mut cycles: Vec<(String, _)> = tri
                .designated_cycles()
                .iter()
                .map(|(n, z)| (n.clone(), z.clone()))
                .collect();
            if let Some(path) = &a.link {
                let file = load_link(path)?;
                let declared = file.declared_cycles(&tri)?;
                cycles.retain(|(n, _)| !file.cycles.contains_key(n));
                cycles.extend(declared);
                cycles.sort_by(|x, y| x.0.cmp(&y.0));
            }
            let entries = cycles
                .iter()
                .map(|(n, z)| ClassEntry::new(n, z, &classify(z, &tri)))
                .collect();
            let r = ClassifyReport {
                manifold: tri.name().to_string(),
                cycles: entries,
            };
            Ok(render(&r, ClassifyReport::to_text, a.common.format))
        }
        Command::Link(a) => {
            let tri = load_manifold(&a.common.manifold)?;
            let file = load_link(&a.link)?;
            let framed = file.framed_components(&tri)?;
            let matrix = pairing_matrix(&framed, &tri, Parallelism::Auto)?;
            let r = LinkReport {
                manifold: tri.name().to_string(),
                components: framed.iter().map(|f| f.name().to_string()).collect(),
                linking_matrix: matrix,
            };
            Ok(render(&r, LinkReport::to_text, a.common.format))
        }
        Command::Wilson(a) => {
            let tri = load_manifold(&a.common.manifold)?;
            let k = CsLevel::new(a.level)?;
            // Level admissibility first: it does not depend on the link.
            abelian_cs::chern_simons::check_level(k, &tri)?;
            let file = load_link(&a.link)?;
            let comps = file.wilson_components(&tri, a.charges.as_deref())?;
            let link = WilsonLink::new(comps)?;
            let eval = evaluate(&link, k, &tri, Parallelism::Auto)?;
            let r = WilsonReport::new(&tri, k, &eval, a.decimal_digits);
            Ok(render(&r, WilsonReport::to_text, a.common.format))
        }
    }
}

/// Runs and writes the report to `--output` or standard output.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let text = run(cli)?;
    let output = match &cli.command {
        Command::Homology(c) => &c.output,
        Command::Classify(a) => &a.common.output,
        Command::Link(a) => &a.common.output,
        Command::Wilson(a) => &a.common.output,
    };
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use abelian_cs::error::Rejection;

    #[test]
    fn error_classes_map_to_exit_codes() {
        let rejected: CliError = CsError::Rejected(Rejection::Level { k: 3, exponent: 2 }).into();
        assert_eq!(rejected.exit_code(), exit::REJECTED);
        assert!(rejected.to_string().contains("k = 2l"));
        let unsupported: CliError = CsError::UnsupportedManifold(1).into();
        assert_eq!(unsupported.exit_code(), exit::UNSUPPORTED);
        let free: CliError = LinkingError::FreeCycle("z".into()).into();
        assert_eq!(free.exit_code(), exit::UNSUPPORTED);
        let parse: CliError = ManifoldError::Parse("x".into()).into();
        assert_eq!(parse.exit_code(), exit::PARSE);
        let invalid: CliError = ManifoldError::LensOutOfRange(9).into();
        assert_eq!(invalid.exit_code(), exit::VALIDATION);
        let unknown: CliError = LinkFileError::UnknownCycle("z".into()).into();
        assert_eq!(unknown.exit_code(), exit::VALIDATION);
    }

    #[test]
    fn builtins_resolve_before_paths() {
        assert_eq!(load_manifold("rp3").unwrap().name(), "rp3");
        assert!(matches!(load_manifold("lens-9"), Err(CliError::Validation(_))));
        assert!(matches!(load_manifold("nowhere"), Err(CliError::Parse(_))));
    }

    #[test]
    fn charges_parse_as_list() {
        let cli = Cli::try_parse_from([
            "acs", "wilson", "--manifold", "s3", "--link", "l.json", "--level", "-4", "--charges", "1,-2",
        ])
        .unwrap();
        let Command::Wilson(w) = cli.command else { panic!("wrong subcommand") };
        assert_eq!(w.level, -4);
        assert_eq!(w.charges, Some(vec![1, -2]));
    }
}
