use std::fmt::Debug;
use std::str::FromStr;

use crate::metrics::Scheme;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_tx_list: Vec<usize>,
    /// Beams per scenario; users = RF chains = beams.
    pub n_beams_list: Vec<usize>,
    pub snr_db_grid: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    /// Element spacing in wavelengths.
    pub spacing: f64,
    pub schemes: Vec<Scheme>,
    pub bounds: bool,
    /// Worker threads; never affects results.
    pub threads: Option<usize>,
}

pub const DEFAULT_TRIALS: u64 = 50_000;
pub const DEFAULT_SEED: u64 = 1;

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_tx_list: vec![32],
            n_beams_list: vec![2],
            snr_db_grid: default_snr_grid(),
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            spacing: 0.5,
            schemes: vec![Scheme::Abs, Scheme::Hbs],
            bounds: true,
            threads: None,
        }
    }
}

fn default_snr_grid() -> Vec<f64> {
    parse_snr_grid("-10:5:30").expect("static grid")
}

/// Built-in scenarios, named after the plots they produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// ABS with two beams against the saturation level, N_t ∈ {16, 32, 128}.
    Figure1,
    /// HBS and the interference-free reference against the Log-Rayleigh
    /// approximation, two beams, N_t ∈ {16, 32, 128}.
    Figure2,
    /// ABS and HBS with three and five beams at N_t = 32.
    Figure3,
    /// ABS and HBS with five beams at N_t = 128.
    Figure4,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Figure1, Preset::Figure2, Preset::Figure3, Preset::Figure4];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Figure1 => "figure1",
            Preset::Figure2 => "figure2",
            Preset::Figure3 => "figure3",
            Preset::Figure4 => "figure4",
        }
    }

    pub fn config(self) -> ExperimentConfig {
        let base = ExperimentConfig::default();
        match self {
            Preset::Figure1 => ExperimentConfig {
                n_tx_list: vec![16, 32, 128],
                n_beams_list: vec![2],
                schemes: vec![Scheme::Abs],
                ..base
            },
            Preset::Figure2 => ExperimentConfig {
                n_tx_list: vec![16, 32, 128],
                n_beams_list: vec![2],
                schemes: vec![Scheme::Hbs, Scheme::NoInterference],
                ..base
            },
            Preset::Figure3 => ExperimentConfig {
                n_tx_list: vec![32],
                n_beams_list: vec![3, 5],
                schemes: vec![Scheme::Abs, Scheme::Hbs],
                ..base
            },
            Preset::Figure4 => ExperimentConfig {
                n_tx_list: vec![128],
                n_beams_list: vec![5],
                schemes: vec![Scheme::Abs, Scheme::Hbs],
                ..base
            },
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown preset '{s}'")))
    }
}

/// Comma-separated list.
pub fn parse_list<T>(s: &str) -> Result<Vec<T>>
where
    T: FromStr,
    T::Err: Debug,
{
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<T>()
                .map_err(|e| Error::Config(format!("cannot parse '{t}': {e:?}")))
        })
        .collect()
}

/// `start:step:stop` (inclusive) or a comma-separated list, in dB.
pub fn parse_snr_grid(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    match parts.as_slice() {
        [_] => parse_list(s),
        [start, step, stop] => {
            let num = |t: &str| {
                t.parse::<f64>()
                    .map_err(|_| Error::Config(format!("bad number '{t}' in SNR range '{s}'")))
            };
            let (start, step, stop) = (num(start)?, num(step)?, num(stop)?);
            if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
                return Err(Error::Config(format!("bad SNR range '{s}'")));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            if count > 100_000 {
                return Err(Error::Config(format!("SNR range '{s}' is too long")));
            }
            Ok((0..count).map(|i| start + i as f64 * step).collect())
        }
        _ => Err(Error::Config(format!("bad SNR grid '{s}'"))),
    }
}

fn parse_bool(s: &str) -> Result<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        other => Err(Error::Config(format!("expected a boolean, got '{other}'"))),
    }
}

fn parse_scalar<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad value '{value}' for '{key}'")))
}

impl ExperimentConfig {
    /// Sets one option by its key-file / flag name.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim().trim_start_matches("--").replace('_', "-").as_str() {
            "ntx" | "n-tx" => self.n_tx_list = parse_list(value)?,
            "nbeams" | "n-beams" => self.n_beams_list = parse_list(value)?,
            "snr-db" | "snr" => self.snr_db_grid = parse_snr_grid(value)?,
            "trials" => self.trials = parse_scalar(key, value)?,
            "seed" => self.seed = parse_scalar(key, value)?,
            "spacing" => self.spacing = parse_scalar(key, value)?,
            "schemes" => self.schemes = parse_list(value)?,
            "bounds" => self.bounds = parse_bool(value)?,
            "threads" => self.threads = Some(parse_scalar(key, value)?),
            other => return Err(Error::Config(format!("unknown option '{other}'"))),
        }
        Ok(())
    }

    /// Applies a `key = value` file. Blank lines and `#` comments are
    /// ignored.
    pub fn apply_key_values(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key=value, got '{raw}'", lineno + 1))
            })?;
            self.set(key, value)
                .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.n_tx_list.is_empty() || self.n_tx_list.contains(&0) {
            return bad("antenna counts must be a non-empty list of positive integers".into());
        }
        if self.n_beams_list.is_empty() || self.n_beams_list.contains(&0) {
            return bad("beam counts must be a non-empty list of positive integers".into());
        }
        if self.snr_db_grid.is_empty() || self.snr_db_grid.iter().any(|s| !s.is_finite()) {
            return bad("SNR grid must be a non-empty list of finite values".into());
        }
        if self.snr_db_grid.windows(2).any(|w| w[1] <= w[0]) {
            return bad("SNR grid must be strictly increasing".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if !(self.spacing > 0.0 && self.spacing.is_finite()) {
            return bad(format!("spacing must be positive, got {}", self.spacing));
        }
        if self.schemes.is_empty() {
            return bad("at least one scheme is required".into());
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snr_grid_forms() {
        assert_eq!(
            parse_snr_grid("-10:5:30").unwrap(),
            vec![-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0]
        );
        assert_eq!(parse_snr_grid("0, 3.5,7").unwrap(), vec![0.0, 3.5, 7.0]);
        assert_eq!(parse_snr_grid("24:6:30").unwrap(), vec![24.0, 30.0]);
        assert_eq!(parse_snr_grid("0:0.1:0.3").unwrap().len(), 4);
        assert!(parse_snr_grid("0:0:10").is_err());
        assert!(parse_snr_grid("10:1:0").is_err());
        assert!(parse_snr_grid("1:2").is_err());
        assert!(parse_snr_grid("a,b").is_err());
    }

    #[test]
    fn key_value_file_and_overrides() {
        let mut cfg = ExperimentConfig::default();
        cfg.apply_key_values(
            "# comment\nntx = 16, 64\n\nnbeams=3\nsnr_db = 0:10:20  # trailing\nschemes=abs,noint\nbounds=no\ntrials=10\nseed=7\nspacing=0.25\nthreads=2\n",
        )
        .unwrap();
        assert_eq!(cfg.n_tx_list, vec![16, 64]);
        assert_eq!(cfg.n_beams_list, vec![3]);
        assert_eq!(cfg.snr_db_grid, vec![0.0, 10.0, 20.0]);
        assert_eq!(cfg.schemes, vec![Scheme::Abs, Scheme::NoInterference]);
        assert!(!cfg.bounds);
        assert_eq!((cfg.trials, cfg.seed, cfg.spacing, cfg.threads), (10, 7, 0.25, Some(2)));
        cfg.validate().unwrap();

        cfg.set("--trials", "99").unwrap();
        assert_eq!(cfg.trials, 99);

        assert!(cfg.apply_key_values("ntx 16").is_err());
        assert!(cfg.apply_key_values("colour=blue").is_err());
        assert!(cfg.set("trials", "-3").is_err());
    }

    #[test]
    fn invalid_configs() {
        let ok = ExperimentConfig::default();
        ok.validate().unwrap();
        let cases = [
            ExperimentConfig { n_tx_list: vec![], ..ok.clone() },
            ExperimentConfig { n_beams_list: vec![0], ..ok.clone() },
            ExperimentConfig { snr_db_grid: vec![0.0, 0.0], ..ok.clone() },
            ExperimentConfig { snr_db_grid: vec![5.0, 0.0], ..ok.clone() },
            ExperimentConfig { trials: 0, ..ok.clone() },
            ExperimentConfig { spacing: 0.0, ..ok.clone() },
            ExperimentConfig { schemes: vec![], ..ok.clone() },
            ExperimentConfig { threads: Some(0), ..ok.clone() },
        ];
        for c in cases {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }

    #[test]
    fn presets() {
        for p in Preset::ALL {
            let c = p.config();
            c.validate().unwrap();
            assert_eq!(c.trials, 50_000);
            assert_eq!(c.spacing, 0.5);
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("figure5".parse::<Preset>().is_err());
        assert_eq!(Preset::Figure3.config().n_beams_list, vec![3, 5]);
    }
}
