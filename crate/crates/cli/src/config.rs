//! Run configuration: a flat JSON file whose keys mirror the command-line
//! options. Values given on the command line take precedence.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use groverts::PolarizationSchedule;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Constants,
    Fig1,
    Fig2,
    CostSweep,
    BoundCheck,
    Verify,
}

/// A schedule given inline, or as a path / inline JSON string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScheduleSpec {
    Inline(PolarizationSchedule),
    Text(String),
}

impl ScheduleSpec {
    /// Strings that parse as JSON are taken as the schedule itself, anything
    /// else as a path to a JSON file.
    pub fn resolve(&self) -> Result<PolarizationSchedule> {
        let schedule = match self {
            Self::Inline(s) => s.clone(),
            Self::Text(text) => match serde_json::from_str(text) {
                Ok(s) => s,
                Err(inline_err) => {
                    let trimmed = text.trim_start();
                    if trimmed.starts_with('{') {
                        bail!("invalid inline schedule: {inline_err}");
                    }
                    let body = std::fs::read_to_string(text)
                        .with_context(|| format!("reading schedule file {text}"))?;
                    serde_json::from_str(&body)
                        .with_context(|| format!("parsing schedule file {text}"))?
                }
            },
        };
        schedule.validate()?;
        Ok(schedule)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<CommandKind>,
    pub n: Option<u32>,
    pub schedule: Option<ScheduleSpec>,
    pub k_max: Option<u64>,
    pub output_path: Option<PathBuf>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub eps_f: Option<f64>,
    pub eps: Option<Vec<f64>>,
    pub n_min: Option<u32>,
    pub n_max: Option<u32>,
    pub count: Option<usize>,
    pub force_large: Option<bool>,
    pub svg_path: Option<PathBuf>,
    #[serde(skip)]
    pub inject_fault: Option<bool>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Field-wise merge; `self` wins where both are set.
    pub fn or(self, other: Self) -> Self {
        Self {
            command: self.command.or(other.command),
            n: self.n.or(other.n),
            schedule: self.schedule.or(other.schedule),
            k_max: self.k_max.or(other.k_max),
            output_path: self.output_path.or(other.output_path),
            seed: self.seed.or(other.seed),
            format: self.format.or(other.format),
            eps_f: self.eps_f.or(other.eps_f),
            eps: self.eps.or(other.eps),
            n_min: self.n_min.or(other.n_min),
            n_max: self.n_max.or(other.n_max),
            count: self.count.or(other.count),
            force_large: self.force_large.or(other.force_large),
            svg_path: self.svg_path.or(other.svg_path),
            inject_fault: self.inject_fault.or(other.inject_fault),
        }
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let flags = RunConfig {
            n: Some(12),
            ..RunConfig::default()
        };
        let file: RunConfig =
            serde_json::from_str(r#"{"command":"fig1","n":30,"seed":4}"#).unwrap();
        let merged = flags.or(file);
        assert_eq!(merged.n, Some(12));
        assert_eq!(merged.seed(), 4);
        assert_eq!(merged.command, Some(CommandKind::Fig1));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"nn":3}"#).is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"inject_fault":true}"#).is_err());
    }

    #[test]
    fn schedule_forms() {
        let inline = ScheduleSpec::Text(r#"{"kind":"constant","eps_initial":0.5}"#.into());
        assert_eq!(
            inline.resolve().unwrap(),
            PolarizationSchedule::constant(0.5).unwrap()
        );
        let bad = ScheduleSpec::Text(r#"{"kind":"constant","eps_initial":1.5}"#.into());
        assert!(bad.resolve().is_err());
        let file: RunConfig = serde_json::from_str(
            r#"{"schedule":{"kind":"linear","eps_initial":1.0,"eps_final":0.3}}"#,
        )
        .unwrap();
        assert!(matches!(file.schedule, Some(ScheduleSpec::Inline(_))));
        assert!(ScheduleSpec::Text("/nonexistent/schedule.json".into())
            .resolve()
            .is_err());
    }
}
