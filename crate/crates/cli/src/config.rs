//! `key=value` sweep configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Keys: `f0_start`,
//! `f0_end`, `f0_step`, `rounds`, `codes`, `target`, `output`. Command-line
//! flags override file values.

use std::path::PathBuf;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub f0_start: f64,
    pub f0_end: f64,
    pub f0_step: f64,
    pub rounds: String,
    pub codes: String,
    pub target: Option<f64>,
    pub output: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            f0_start: 0.80,
            f0_end: 1.00,
            f0_step: 0.001,
            rounds: "0,1,2,3".into(),
            codes: "all".into(),
            target: None,
            output: None,
        }
    }
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = Self::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let number = || {
                value.parse::<f64>().map_err(|_| {
                    format!(
                        "config line {}: {key} needs a number, got {value:?}",
                        lineno + 1
                    )
                })
            };
            match key {
                "f0_start" => cfg.f0_start = number()?,
                "f0_end" => cfg.f0_end = number()?,
                "f0_step" => cfg.f0_step = number()?,
                "rounds" => cfg.rounds = value.to_string(),
                "codes" => cfg.codes = value.to_string(),
                "target" => cfg.target = Some(number()?),
                "output" => cfg.output = Some(PathBuf::from(value)),
                other => return Err(format!("config line {}: unknown key {other:?}", lineno + 1)),
            }
        }
        Ok(cfg)
    }
}
