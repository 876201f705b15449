use std::io::{self, Write};

use crate::array::ArrayConfig;
use crate::bounds::{abs_saturation_bound, hbs_se_approx, BoundKind, UNIT_POWER_SIGMA};
use crate::channel::RngSeed;
use crate::metrics::{run_monte_carlo_grid, Scenario, Scheme, SnrPoint};
use crate::par::with_threads;
use crate::Result;

use super::ExperimentConfig;

pub const CSV_HEADER: &str = "snr_db,n_tx,n_beams,label,se_mean,se_stderr,n_resampled";

/// One CSV line: a simulated scheme or a closed-form expression at one
/// grid point. SNR-independent bounds carry no SNR.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub snr_db: Option<f64>,
    pub n_tx: usize,
    pub n_beams: usize,
    pub label: String,
    pub se_mean: f64,
    pub se_stderr: Option<f64>,
    pub n_resampled: Option<u64>,
}

impl ResultRow {
    pub fn is_bound(&self) -> bool {
        self.se_stderr.is_none()
    }
}

fn snr_points(cfg: &ExperimentConfig) -> Result<Vec<SnrPoint>> {
    cfg.snr_db_grid.iter().map(|&db| SnrPoint::from_db(db)).collect()
}

/// Closed-form rows for one `(N_t, N_b)` pair: the saturation level once
/// (when ABS is simulated and there is interference) and the HBS
/// approximation at every SNR point (when HBS or the interference-free
/// reference is simulated). Pass `None` to get both regardless of schemes.
pub fn bound_rows(
    cfg: &ExperimentConfig,
    n_tx: usize,
    n_beams: usize,
    schemes: Option<&[Scheme]>,
) -> Result<Vec<ResultRow>> {
    let array = ArrayConfig::new(n_tx, cfg.spacing)?;
    let wants = |s: Scheme| schemes.is_none_or(|list| list.contains(&s));
    let mut rows = Vec::new();
    if wants(Scheme::Abs) && n_beams >= 2 {
        let b = abs_saturation_bound(&array, n_beams)?;
        rows.push(ResultRow {
            snr_db: None,
            n_tx,
            n_beams,
            label: b.kind.label().to_string(),
            se_mean: b.value,
            se_stderr: None,
            n_resampled: None,
        });
    }
    if wants(Scheme::Hbs) || wants(Scheme::NoInterference) {
        for rho in snr_points(cfg)? {
            let b = hbs_se_approx(rho, n_tx, UNIT_POWER_SIGMA)?;
            rows.push(ResultRow {
                snr_db: Some(rho.db()),
                n_tx,
                n_beams,
                label: BoundKind::HbsApprox.label().to_string(),
                se_mean: b.value,
                se_stderr: None,
                n_resampled: None,
            });
        }
    }
    Ok(rows)
}

/// Simulates every `(N_t, N_b, scheme, SNR)` point of the grid and appends
/// the closed-form rows when `bounds` is set.
///
/// All scenarios share the master seed, so the schemes see the same
/// channel draws. Output is deterministic for any thread count.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    with_threads(cfg.threads, || sweep_inner(cfg))?
}

fn sweep_inner(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let rhos = snr_points(cfg)?;
    let mut rows = Vec::new();
    for &n_tx in &cfg.n_tx_list {
        let array = ArrayConfig::new(n_tx, cfg.spacing)?;
        for &n_beams in &cfg.n_beams_list {
            for &scheme in &cfg.schemes {
                let scenario = Scenario {
                    config: array,
                    n_users: n_beams,
                    scheme,
                    trials: cfg.trials,
                    seed: RngSeed(cfg.seed),
                };
                let estimates = run_monte_carlo_grid(&scenario, &rhos)?;
                rows.extend(rhos.iter().zip(estimates).map(|(rho, est)| ResultRow {
                    snr_db: Some(rho.db()),
                    n_tx,
                    n_beams,
                    label: scheme.label().to_string(),
                    se_mean: est.mean,
                    se_stderr: Some(est.std_error),
                    n_resampled: Some(est.n_resampled),
                }));
            }
            if cfg.bounds {
                rows.extend(bound_rows(cfg, n_tx, n_beams, Some(&cfg.schemes))?);
            }
        }
    }
    Ok(rows)
}

/// 17 significant digits: enough to round-trip any `f64`.
fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(mut out: W, rows: &[ResultRow]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.snr_db.map(fmt_float).unwrap_or_default(),
            r.n_tx,
            r.n_beams,
            r.label,
            fmt_float(r.se_mean),
            r.se_stderr.map(fmt_float).unwrap_or_default(),
            r.n_resampled.map(|n| n.to_string()).unwrap_or_default(),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::Preset;

    fn small(preset: Preset) -> ExperimentConfig {
        ExperimentConfig { trials: 20, ..preset.config() }
    }

    #[test]
    fn figure1_grid_arithmetic() {
        let rows = run_sweep(&small(Preset::Figure1)).unwrap();
        let (bounds, sims): (Vec<_>, Vec<_>) = rows.iter().partition(|r| r.is_bound());
        assert_eq!(sims.len(), 27);
        assert_eq!(bounds.len(), 3);
        assert!(bounds.iter().all(|r| r.snr_db.is_none() && r.label == "AbsSaturationBound"));
    }

    #[test]
    fn row_count_formula() {
        for preset in Preset::ALL {
            let cfg = small(preset);
            let rows = run_sweep(&cfg).unwrap();
            let n_grid = cfg.n_tx_list.len() * cfg.n_beams_list.len();
            let sims = cfg.snr_db_grid.len() * n_grid * cfg.schemes.len();
            let bounds: usize = cfg
                .n_tx_list
                .iter()
                .flat_map(|&n| cfg.n_beams_list.iter().map(move |&b| (n, b)))
                .map(|(n, b)| bound_rows(&cfg, n, b, Some(&cfg.schemes)).unwrap().len())
                .sum();
            assert_eq!(rows.len(), sims + bounds, "{preset:?}");
        }
        let cfg = ExperimentConfig { bounds: false, ..small(Preset::Figure2) };
        assert_eq!(run_sweep(&cfg).unwrap().len(), 9 * 3 * 2);
    }

    #[test]
    fn bound_rows_without_scheme_filter() {
        let cfg = ExperimentConfig::default();
        assert_eq!(bound_rows(&cfg, 32, 2, None).unwrap().len(), 1 + 9);
        assert_eq!(bound_rows(&cfg, 32, 1, None).unwrap().len(), 9);
        assert_eq!(bound_rows(&cfg, 32, 3, Some(&[Scheme::Abs])).unwrap().len(), 1);
    }

    #[test]
    fn csv_layout() {
        let rows = vec![
            ResultRow {
                snr_db: Some(-10.0),
                n_tx: 16,
                n_beams: 2,
                label: "ABS".into(),
                se_mean: 0.1,
                se_stderr: Some(0.001),
                n_resampled: Some(0),
            },
            ResultRow {
                snr_db: None,
                n_tx: 16,
                n_beams: 2,
                label: "AbsSaturationBound".into(),
                se_mean: 7.5,
                se_stderr: None,
                n_resampled: None,
            },
        ];
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.split('\n').collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(
            lines[1],
            "-1.0000000000000000e1,16,2,ABS,1.0000000000000001e-1,1.0000000000000000e-3,0"
        );
        assert_eq!(lines[2], ",16,2,AbsSaturationBound,7.5000000000000000e0,,");
        assert_eq!(lines[3], "");
        assert!(!text.contains('\r'));
        let parsed: f64 = lines[1].split(',').nth(4).unwrap().parse().unwrap();
        assert_eq!(parsed, 0.1);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let cfg = ExperimentConfig { trials: 0, ..ExperimentConfig::default() };
        assert!(run_sweep(&cfg).is_err());
    }
}
