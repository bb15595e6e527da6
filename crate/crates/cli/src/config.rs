use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use affine_automata::arrangement::ArrangementSpec;
use affine_automata::{AffineWeylGroup, Family, RootSystem};
use clap::{Args, ValueEnum};

/// Bad input on the command line; reported with exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Svg,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Svg => "svg",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuPreset {
    Uniform(u32),
    Short0Long1,
}

impl FromStr for NuPreset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "short0long1" {
            return Ok(NuPreset::Short0Long1);
        }
        s.strip_prefix("uniform:")
            .and_then(|n| n.parse().ok())
            .map(NuPreset::Uniform)
            .ok_or_else(|| format!("expected `uniform:<n>` or `short0long1`, got `{s}`"))
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Root system family (A-G).
    #[arg(long = "type", value_name = "FAMILY")]
    pub family: Family,

    #[arg(long)]
    pub rank: usize,

    /// Uniform arrangement bound.
    #[arg(long = "N", value_name = "N", conflicts_with = "nu_preset")]
    pub n: Option<u32>,

    /// `uniform:<n>` or `short0long1`.
    #[arg(long, value_name = "PRESET")]
    pub nu_preset: Option<NuPreset>,

    /// Ball radius L.
    #[arg(long, default_value_t = 10)]
    pub max_len: usize,

    /// Radius L' used to check that cells have stabilized (default L + 2).
    #[arg(long)]
    pub stability_len: Option<usize>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the artifact here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Do not fail when some cell fragments have not stabilized.
    #[arg(long)]
    pub allow_unstable: bool,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub group: AffineWeylGroup,
    pub spec: ArrangementSpec,
    pub max_len: usize,
    pub stability_len: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub allow_unstable: bool,
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> anyhow::Result<Self> {
        let rs = RootSystem::new(args.family, args.rank).map_err(|e| usage(e.to_string()))?;
        let spec = match (args.n, args.nu_preset) {
            (Some(n), _) | (None, Some(NuPreset::Uniform(n))) => ArrangementSpec::uniform(&rs, n),
            (None, Some(NuPreset::Short0Long1)) => ArrangementSpec::short0_long1(&rs),
            (None, None) => ArrangementSpec::uniform(&rs, 0),
        };
        let stability_len = args.stability_len.unwrap_or(args.max_len + 2);
        if stability_len <= args.max_len {
            return Err(usage(format!(
                "--stability-len ({stability_len}) must exceed --max-len ({})",
                args.max_len
            )));
        }
        Ok(RunConfig {
            group: AffineWeylGroup::new(rs),
            spec,
            max_len: args.max_len,
            stability_len,
            format: args.format,
            out: args.out.clone(),
            allow_unstable: args.allow_unstable,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        self.group.root_system()
    }

    pub fn require_format(&self, allowed: &[Format], command: &str) -> anyhow::Result<()> {
        if allowed.contains(&self.format) {
            Ok(())
        } else {
            Err(usage(format!(
                "`{command}` does not support --format {}",
                self.format
            )))
        }
    }
}
