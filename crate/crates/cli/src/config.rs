use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use minuscule_core::{Error, SystemType};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_internal() => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    WeylEquality,
    RootInequality,
    RemarkD8,
    CatalogE6,
    CatalogE7,
    Lemmas,
    Oracle,
    QuiverInvariance,
    All,
}

#[derive(Debug, Parser)]
#[command(
    name = "minuscule",
    version,
    about = "Minuscule Schubert variety combinatorics"
)]
pub struct Cli {
    /// TOML file with default values for any flag
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// write to this file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct Selector {
    /// `A`, `D`, `E` together with --rank, or a full name such as `E6`
    #[arg(long = "type")]
    pub system: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// the minuscule node defining the parabolic
    #[arg(long)]
    pub node: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List minimal coset representatives (full support only unless --all)
    Enumerate {
        #[command(flatten)]
        sel: Selector,
        #[arg(long)]
        all: bool,
    },
    /// Print the quiver of a reduced word
    Quiver {
        #[command(flatten)]
        sel: Selector,
        #[arg(long)]
        word: Option<String>,
    },
    /// Peel a word into single-peak factors
    Decompose {
        #[command(flatten)]
        sel: Selector,
        #[arg(long)]
        word: Option<String>,
        /// `standard`, `all`, or positions in the peak list such as `2,1`
        #[arg(long)]
        ordering: Option<String>,
    },
    /// Run a verification suite; exits 1 if any check fails
    Verify {
        #[command(flatten)]
        sel: Selector,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[arg(long)]
        max_rank: Option<usize>,
    },
    /// Smoothness catalog of the full-support elements in E6 and E7
    Catalog {
        #[command(flatten)]
        sel: Selector,
    },
}

/// Every setting a command may read. Flags override the config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    #[serde(rename = "type")]
    pub system: Option<String>,
    pub rank: Option<usize>,
    pub node: Option<usize>,
    pub word: Option<String>,
    pub ordering: Option<String>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub max_rank: Option<usize>,
    pub suite: Option<Suite>,
    pub all: Option<bool>,
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// Fields set in `self` win over `base`.
    pub fn over(self, base: RunConfig) -> RunConfig {
        RunConfig {
            system: self.system.or(base.system),
            rank: self.rank.or(base.rank),
            node: self.node.or(base.node),
            word: self.word.or(base.word),
            ordering: self.ordering.or(base.ordering),
            format: self.format.or(base.format),
            output: self.output.or(base.output),
            max_rank: self.max_rank.or(base.max_rank),
            suite: self.suite.or(base.suite),
            all: self.all.or(base.all),
        }
    }

    /// The flags given on the command line, as a config.
    pub fn from_cli(cli: &Cli) -> RunConfig {
        let mut c = RunConfig {
            format: cli.format,
            output: cli.output.clone(),
            ..RunConfig::default()
        };
        let sel = match &cli.command {
            Command::Enumerate { sel, all } => {
                c.all = all.then_some(true);
                sel
            }
            Command::Quiver { sel, word } => {
                c.word = word.clone();
                sel
            }
            Command::Decompose {
                sel,
                word,
                ordering,
            } => {
                c.word = word.clone();
                c.ordering = ordering.clone();
                sel
            }
            Command::Verify {
                sel,
                suite,
                max_rank,
            } => {
                c.suite = *suite;
                c.max_rank = *max_rank;
                sel
            }
            Command::Catalog { sel } => sel,
        };
        c.system = sel.system.clone();
        c.rank = sel.rank;
        c.node = sel.node;
        c
    }

    /// A single root system. Accepts `E6`, or `E` with `--rank 6`.
    pub fn system_type(&self) -> CliResult<SystemType> {
        let s = self
            .system
            .as_deref()
            .ok_or_else(|| CliError::Usage("--type is required".into()))?;
        let has_rank = s.chars().any(|c| c.is_ascii_digit());
        let t: SystemType = match (has_rank, self.rank) {
            (true, None) => s.parse()?,
            (true, Some(r)) => {
                let t: SystemType = s.parse()?;
                if t.rank() != r {
                    return Err(CliError::Usage(format!(
                        "--type {s} conflicts with --rank {r}"
                    )));
                }
                t
            }
            (false, Some(r)) => format!("{s}{r}").parse()?,
            (false, None) => return Err(CliError::Usage(format!("--type {s} needs --rank"))),
        };
        Ok(t)
    }

    pub fn node(&self) -> CliResult<usize> {
        self.node
            .ok_or_else(|| CliError::Usage("--node is required".into()))
    }

    pub fn word(&self) -> CliResult<minuscule_core::Word> {
        let w = self
            .word
            .as_deref()
            .ok_or_else(|| CliError::Usage("--word is required".into()))?;
        Ok(w.parse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: RunConfig =
            toml::from_str("type = \"D\"\nrank = 5\nnode = 1\nmax-rank = 6").unwrap();
        let flags = RunConfig {
            node: Some(5),
            ..RunConfig::default()
        };
        let c = flags.over(file);
        assert_eq!(c.node, Some(5));
        assert_eq!(c.max_rank, Some(6));
        assert_eq!(c.system_type().unwrap().to_string(), "D5");
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(toml::from_str::<RunConfig>("colour = 1").is_err());
    }

    #[test]
    fn type_and_rank_must_agree() {
        let c = RunConfig {
            system: Some("E6".into()),
            rank: Some(7),
            ..RunConfig::default()
        };
        assert!(matches!(c.system_type(), Err(CliError::Usage(_))));
    }
}
