//! Run configuration: built-in defaults, then a preset, then a key=value
//! config file, then command-line flags.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use squeezelab::analytic::{GridSpec, StateSpec};
use squeezelab::params::{DisplacementParam, SqueezeParam};
use squeezelab::presets::{self, Preset, FIGURE_N};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    State,
    Density,
    Moments,
    Uncertainty,
    Verify,
    Figure(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Config(format!("unknown format '{other}'"))),
        }
    }
}

/// One layer of optional settings. Later layers override earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub n: Option<usize>,
    pub x0: Option<f64>,
    pub p0: Option<f64>,
    pub r: Option<f64>,
    pub phi: Option<f64>,
    pub t0: Option<f64>,
    pub t1: Option<f64>,
    pub nt: Option<usize>,
    pub xmin: Option<f64>,
    pub xmax: Option<f64>,
    pub nx: Option<usize>,
    pub truncation: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub preset: Option<String>,
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("invalid value '{value}' for key '{key}'")))
}

impl Settings {
    /// Parses a flat `key = value` file. Blank lines and `#` comments are
    /// skipped; keys match the long flag names.
    pub fn from_config_text(text: &str) -> Result<Self, CliError> {
        let mut s = Settings::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "n" => s.n = Some(parse_value(key, value)?),
                "x0" => s.x0 = Some(parse_value(key, value)?),
                "p0" => s.p0 = Some(parse_value(key, value)?),
                "r" => s.r = Some(parse_value(key, value)?),
                "phi" => s.phi = Some(parse_value(key, value)?),
                "t0" => s.t0 = Some(parse_value(key, value)?),
                "t1" => s.t1 = Some(parse_value(key, value)?),
                "nt" => s.nt = Some(parse_value(key, value)?),
                "xmin" => s.xmin = Some(parse_value(key, value)?),
                "xmax" => s.xmax = Some(parse_value(key, value)?),
                "nx" => s.nx = Some(parse_value(key, value)?),
                "N" => s.truncation = Some(parse_value(key, value)?),
                "out" => s.out = Some(PathBuf::from(value)),
                "format" => s.format = Some(value.parse()?),
                "preset" => s.preset = Some(value.to_string()),
                other => return Err(CliError::Config(format!("unknown config key '{other}'"))),
            }
        }
        Ok(s)
    }

    /// `self` with every value set in `top` replaced.
    pub fn overlay(self, top: Settings) -> Settings {
        Settings {
            n: top.n.or(self.n),
            x0: top.x0.or(self.x0),
            p0: top.p0.or(self.p0),
            r: top.r.or(self.r),
            phi: top.phi.or(self.phi),
            t0: top.t0.or(self.t0),
            t1: top.t1.or(self.t1),
            nt: top.nt.or(self.nt),
            xmin: top.xmin.or(self.xmin),
            xmax: top.xmax.or(self.xmax),
            nx: top.nx.or(self.nx),
            truncation: top.truncation.or(self.truncation),
            out: top.out.or(self.out),
            format: top.format.or(self.format),
            preset: top.preset.or(self.preset),
        }
    }

    fn from_preset(p: &Preset) -> Settings {
        Settings {
            n: Some(FIGURE_N),
            x0: Some(p.disp.x0()),
            p0: Some(p.disp.p0()),
            r: Some(p.sq.r()),
            phi: Some(p.sq.phi()),
            ..Settings::default()
        }
    }

    fn has_time_range(&self) -> bool {
        self.t0.is_some() || self.t1.is_some() || self.nt.is_some()
    }
}

/// Which states a verification run covers.
#[derive(Debug, Clone, PartialEq)]
pub enum Selection {
    Single(StateSpec),
    /// Every verification preset for each listed `n`.
    Sweep(Vec<StateSpec>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub selection: Selection,
    pub grid: GridSpec,
    /// Verification times; `None` means the default three.
    pub verify_times: Option<Vec<f64>>,
    pub truncation: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    /// The single state this run describes; sweeps report their first.
    pub fn spec(&self) -> &StateSpec {
        match &self.selection {
            Selection::Single(s) => s,
            Selection::Sweep(v) => &v[0],
        }
    }

    pub fn resolve(command: Command, file: Settings, flags: Settings) -> Result<Self, CliError> {
        let layered = file.overlay(flags);

        let mut base = Settings::default();
        if let Command::Figure(k) = command {
            base = Settings::from_preset(&presets::figure(k).map_err(CliError::Library)?);
        }
        let sweep = match layered.preset.as_deref() {
            Some("all") => {
                if command != Command::Verify {
                    return Err(CliError::Config(
                        "preset 'all' is only valid for verify".into(),
                    ));
                }
                true
            }
            Some(name) => {
                base = Settings::from_preset(&presets::by_name(name).map_err(CliError::Library)?);
                false
            }
            None => false,
        };
        let s = base.overlay(layered);

        let disp = DisplacementParam::new(s.x0.unwrap_or(0.0), s.p0.unwrap_or(0.0))
            .map_err(CliError::Library)?;
        let sq = SqueezeParam::new(s.r.unwrap_or(0.0), s.phi.unwrap_or(0.0))
            .map_err(CliError::Library)?;
        let grid = GridSpec::new(
            s.xmin.unwrap_or(-16.0),
            s.xmax.unwrap_or(16.0),
            s.nx.unwrap_or(801),
            s.t0.unwrap_or(0.0),
            s.t1.unwrap_or(2.0 * PI),
            s.nt.unwrap_or(129),
        )
        .map_err(CliError::Library)?;

        let selection = if sweep {
            let ns: Vec<usize> = match s.n {
                Some(n) => vec![n],
                None => (0..=3).collect(),
            };
            let specs = presets::verification_presets()
                .iter()
                .flat_map(|p| ns.iter().map(move |&n| p.spec(n)))
                .collect();
            Selection::Sweep(specs)
        } else {
            Selection::Single(StateSpec::new(s.n.unwrap_or(0), disp, sq))
        };

        if s.truncation == Some(0) {
            return Err(CliError::Config("--N must be at least 1".into()));
        }
        let default_format = if command == Command::Verify {
            Format::Json
        } else {
            Format::Csv
        };
        Ok(RunConfig {
            command,
            selection,
            grid,
            verify_times: s.has_time_range().then(|| grid.times()),
            truncation: s.truncation,
            out: s.out,
            format: s.format.unwrap_or(default_format),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn config_text_parses() {
        let s = Settings::from_config_text(
            "# comment\nn = 2\nx0=1.5 # trailing\n\nN=64\nformat=json\npreset=fig2\n",
        )
        .unwrap();
        assert_eq!(s.n, Some(2));
        assert_eq!(s.x0, Some(1.5));
        assert_eq!(s.truncation, Some(64));
        assert_eq!(s.format, Some(Format::Json));
        assert_eq!(s.preset.as_deref(), Some("fig2"));
        assert!(Settings::from_config_text("bogus=1").is_err());
        assert!(Settings::from_config_text("n=abc").is_err());
        assert!(Settings::from_config_text("just words").is_err());
    }

    #[test]
    fn precedence_is_flags_then_file_then_preset() {
        let file = Settings {
            preset: Some("fig1".into()),
            x0: Some(3.0),
            p0: Some(1.0),
            ..Settings::default()
        };
        let flags = Settings {
            x0: Some(5.0),
            ..Settings::default()
        };
        let cfg = RunConfig::resolve(Command::Density, file, flags).unwrap();
        let spec = cfg.spec();
        assert_eq!(spec.disp.x0(), 5.0);
        assert_eq!(spec.disp.p0(), 1.0);
        assert_eq!(spec.sq.r(), LN_2);
        assert_eq!(spec.n, 1);
    }

    #[test]
    fn figure_command_uses_caption_parameters() {
        let cfg = RunConfig::resolve(Command::Figure(2), Settings::default(), Settings::default())
            .unwrap();
        assert_eq!(cfg.spec().disp.x0(), 8.0);
        assert_eq!(cfg.spec().sq.phi(), PI);
        assert_eq!(cfg.grid, GridSpec::figure_default());
        assert_eq!(cfg.format, Format::Csv);
        assert!(
            RunConfig::resolve(Command::Figure(5), Settings::default(), Settings::default())
                .is_err()
        );
    }

    #[test]
    fn sweep_selection() {
        let flags = Settings {
            preset: Some("all".into()),
            ..Settings::default()
        };
        let cfg = RunConfig::resolve(Command::Verify, Settings::default(), flags.clone()).unwrap();
        match cfg.selection {
            Selection::Sweep(ref v) => assert_eq!(v.len(), 24),
            _ => panic!("expected sweep"),
        }
        assert_eq!(cfg.format, Format::Json);
        assert!(cfg.verify_times.is_none());
        assert!(RunConfig::resolve(Command::Density, Settings::default(), flags).is_err());
    }

    #[test]
    fn invalid_values_are_config_errors() {
        let flags = Settings {
            r: Some(-1.0),
            ..Settings::default()
        };
        let err = RunConfig::resolve(Command::State, Settings::default(), flags).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let flags = Settings {
            nx: Some(1),
            ..Settings::default()
        };
        assert_eq!(
            RunConfig::resolve(Command::State, Settings::default(), flags)
                .unwrap_err()
                .exit_code(),
            2
        );
    }
}
