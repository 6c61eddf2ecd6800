//! Run configuration: flat `key = value` text format, defaults, and
//! validation.
//!
//! A configuration file is a sequence of lines `key = value`; blank lines
//! and lines starting with `#` are ignored.  Recognized keys:
//!
//! ```text
//! params.M        mass (default 1)
//! params.a        specific angular momentum (default 0)
//! params.Q        charge (default 0)
//! grid.rstar_min  left edge of the uniform r* grid      (required)
//! grid.rstar_max  right edge                            (required)
//! grid.n_r        number of radial nodes                (required)
//! grid.l_max      angular band limit                    (required)
//! grid.m          azimuthal number (default 0)
//! grid.cfl        time-step factor, dt = cfl·Δr* (default 0.4)
//! init.center     r* center of the initial Gaussian     (required)
//! init.width      Gaussian width σ                      (required)
//! init.amplitude  amplitude (default 1)
//! init.l          target multipole ℓ                    (required)
//! init.field      which field carries the pulse: p | u (default p)
//! bc              boundary condition: sommerfeld (default)
//! lot_mode        off | reconstructed (default off)
//! t_final         evolution time                        (required)
//! out.dir         output directory                      (required for runs)
//! out.energy_every    energy cadence in steps (default 1)
//! out.snapshot_every  snapshot cadence in steps (default 0 = only final)
//! ```

use std::path::PathBuf;

use serde::Serialize;

use crate::coeffs::KnParams;
use crate::error::SolverError;
use crate::tortoise::TortoiseMap;

/// Uniform tortoise grid and mode selection.
#[derive(Clone, Debug, Serialize)]
pub struct GridSpec {
    /// Left edge of the `r*` interval.
    pub rstar_min: f64,
    /// Right edge of the `r*` interval.
    pub rstar_max: f64,
    /// Number of radial nodes (grid spacing `h = (max − min)/(n_r − 1)`).
    pub n_r: usize,
    /// Angular band limit (largest retained multipole ℓ).
    pub l_max: i32,
    /// Azimuthal number `m`.
    pub m: i32,
    /// Time-step factor: `dt = cfl · h / max wave speed`.
    pub cfl: f64,
}

impl GridSpec {
    /// Radial grid spacing.
    pub fn h(&self) -> f64 {
        (self.rstar_max - self.rstar_min) / (self.n_r as f64 - 1.0)
    }

    /// The `j`-th radial node.
    pub fn rstar(&self, j: usize) -> f64 {
        self.rstar_min + self.h() * j as f64
    }
}

/// Which evolved field carries the initial pulse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldSelect {
    /// Spin-1 (charge-sector) field.
    P,
    /// Spin-2 (gravitational-sector) field.
    U,
}

/// Initial data: a static Gaussian pulse in one multipole of one field.
#[derive(Clone, Debug, Serialize)]
pub struct InitSpec {
    /// Center of the Gaussian in `r*`.
    pub center: f64,
    /// Width σ.
    pub width: f64,
    /// Amplitude.
    pub amplitude: f64,
    /// Target multipole ℓ.
    pub l: i32,
    /// Target field.
    pub field: FieldSelect,
}

/// Treatment of the slow-rotation lower-order terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LotMode {
    /// Evolve the truncated system (lower-order terms dropped).
    Off,
    /// Reconstruct the auxiliary fields by transport and include the
    /// lower-order terms.
    Reconstructed,
}

/// Output cadence and destination.
#[derive(Clone, Debug, Serialize)]
pub struct OutputSpec {
    /// Output directory (created if missing).
    pub dir: PathBuf,
    /// Energy-record cadence in steps.
    pub energy_every: usize,
    /// Snapshot cadence in steps (0 = final snapshot only).
    pub snapshot_every: usize,
}

/// Complete, validated run configuration.
#[derive(Clone, Debug, Serialize)]
pub struct SolverConfig {
    /// Background parameters.
    pub params: KnParamsSer,
    /// Grid and mode.
    pub grid: GridSpec,
    /// Initial data.
    pub init: InitSpec,
    /// Boundary condition (only `sommerfeld` is implemented).
    pub bc: String,
    /// Lower-order-term mode.
    pub lot_mode: LotMode,
    /// Evolution time.
    pub t_final: f64,
    /// Output settings.
    pub out: OutputSpec,
}

/// Serializable mirror of [`KnParams`] for the manifest echo.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct KnParamsSer {
    /// Mass `M`.
    pub mass: f64,
    /// Specific angular momentum `a`.
    pub spin: f64,
    /// Charge `Q`.
    pub charge: f64,
}

impl From<KnParamsSer> for KnParams {
    fn from(p: KnParamsSer) -> Self {
        KnParams {
            mass: p.mass,
            spin: p.spin,
            charge: p.charge,
        }
    }
}

impl SolverConfig {
    /// Background parameters as the coefficient-layer type.
    pub fn kn(&self) -> KnParams {
        self.params.into()
    }

    /// Parses the flat `key = value` format and validates the result.
    pub fn parse(text: &str) -> Result<Self, SolverError> {
        let bad = |msg: String| SolverError::Config(msg);
        let mut map = std::collections::BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("line {}: expected key = value", idx + 1)))?;
            if map
                .insert(key.trim().to_string(), value.trim().to_string())
                .is_some()
            {
                return Err(bad(format!("line {}: duplicate key {}", idx + 1, key.trim())));
            }
        }
        let mut get = |key: &str| map.remove(key);
        let f64_of = |key: &str, v: String| {
            v.parse::<f64>()
                .map_err(|_| SolverError::Config(format!("{key}: not a number: {v}")))
        };
        let required_f64 = |key: &str, v: Option<String>| {
            v.ok_or_else(|| SolverError::Config(format!("missing required key {key}")))
                .and_then(|v| f64_of(key, v))
        };
        let default_f64 = |key: &str, v: Option<String>, d: f64| match v {
            Some(v) => f64_of(key, v),
            None => Ok(d),
        };
        let int_of = |key: &str, v: Option<String>, d: Option<i64>| -> Result<i64, SolverError> {
            match v {
                Some(v) => v
                    .parse::<i64>()
                    .map_err(|_| SolverError::Config(format!("{key}: not an integer: {v}"))),
                None => d.ok_or_else(|| SolverError::Config(format!("missing required key {key}"))),
            }
        };

        let params = KnParamsSer {
            mass: default_f64("params.M", get("params.M"), 1.0)?,
            spin: default_f64("params.a", get("params.a"), 0.0)?,
            charge: default_f64("params.Q", get("params.Q"), 0.0)?,
        };
        let grid = GridSpec {
            rstar_min: required_f64("grid.rstar_min", get("grid.rstar_min"))?,
            rstar_max: required_f64("grid.rstar_max", get("grid.rstar_max"))?,
            n_r: int_of("grid.n_r", get("grid.n_r"), None)? as usize,
            l_max: int_of("grid.l_max", get("grid.l_max"), None)? as i32,
            m: int_of("grid.m", get("grid.m"), Some(0))? as i32,
            cfl: default_f64("grid.cfl", get("grid.cfl"), 0.4)?,
        };
        let field = match get("init.field").as_deref().unwrap_or("p") {
            "p" => FieldSelect::P,
            "u" => FieldSelect::U,
            other => return Err(bad(format!("init.field: expected p or u, got {other}"))),
        };
        let init = InitSpec {
            center: required_f64("init.center", get("init.center"))?,
            width: required_f64("init.width", get("init.width"))?,
            amplitude: default_f64("init.amplitude", get("init.amplitude"), 1.0)?,
            l: int_of("init.l", get("init.l"), None)? as i32,
            field,
        };
        let bc = get("bc").unwrap_or_else(|| "sommerfeld".to_string());
        let lot_mode = match get("lot_mode").as_deref().unwrap_or("off") {
            "off" => LotMode::Off,
            "reconstructed" => LotMode::Reconstructed,
            other => {
                return Err(bad(format!(
                    "lot_mode: expected off or reconstructed, got {other}"
                )))
            }
        };
        let t_final = required_f64("t_final", get("t_final"))?;
        let out = OutputSpec {
            dir: PathBuf::from(get("out.dir").unwrap_or_else(|| "out".to_string())),
            energy_every: int_of("out.energy_every", get("out.energy_every"), Some(1))? as usize,
            snapshot_every: int_of("out.snapshot_every", get("out.snapshot_every"), Some(0))?
                as usize,
        };
        if let Some(key) = map.keys().next() {
            return Err(bad(format!("unknown key {key}")));
        }
        let config = SolverConfig {
            params,
            grid,
            init,
            bc,
            lot_mode,
            t_final,
            out,
        };
        config.validate()?;
        Ok(config)
    }

    /// Checks internal consistency; called by [`SolverConfig::parse`] and
    /// again by the driver for programmatically built configurations.
    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |msg: String| Err(SolverError::Config(msg));
        // Subextremality (or flat limit) is checked by the tortoise map.
        TortoiseMap::new(self.params.mass, self.params.spin, self.params.charge)?;
        let g = &self.grid;
        if !(g.rstar_min < g.rstar_max) {
            return bad(format!(
                "grid: need rstar_min < rstar_max, got [{}, {}]",
                g.rstar_min, g.rstar_max
            ));
        }
        if g.n_r < 16 {
            return bad(format!("grid.n_r: need at least 16 nodes, got {}", g.n_r));
        }
        if g.l_max < g.m.abs().max(2) {
            return bad(format!(
                "grid.l_max = {} is below max(2, |m|) = {}",
                g.l_max,
                g.m.abs().max(2)
            ));
        }
        if !(g.cfl > 0.0 && g.cfl <= 1.0) {
            return bad(format!("grid.cfl: need 0 < cfl ≤ 1, got {}", g.cfl));
        }
        if !(self.init.width > 0.0) {
            return bad(format!("init.width must be positive, got {}", self.init.width));
        }
        let lmin = match self.init.field {
            FieldSelect::P => self.grid.m.abs().max(1),
            FieldSelect::U => self.grid.m.abs().max(2),
        };
        if self.init.l < lmin || self.init.l > g.l_max {
            return bad(format!(
                "init.l = {} outside the retained range [{}, {}]",
                self.init.l, lmin, g.l_max
            ));
        }
        // The pulse must sit well inside the domain: at least six widths of
        // margin so that the truncated tails are at round-off level.
        let margin = (self.init.center - g.rstar_min).min(g.rstar_max - self.init.center);
        if margin < 6.0 * self.init.width {
            return bad(format!(
                "initial pulse at {} (σ = {}) is within six widths of a boundary",
                self.init.center, self.init.width
            ));
        }
        if self.bc != "sommerfeld" {
            return bad(format!("bc: only sommerfeld is implemented, got {}", self.bc));
        }
        if !(self.t_final > 0.0) {
            return bad(format!("t_final must be positive, got {}", self.t_final));
        }
        if self.out.energy_every == 0 {
            return bad("out.energy_every must be at least 1".to_string());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = "\
# comment
params.M = 1.0
params.a = 0.1
params.Q = 0.3
grid.rstar_min = -120
grid.rstar_max = 120
grid.n_r = 512
grid.l_max = 4
grid.m = 1
init.center = 0
init.width = 5
init.l = 2
init.field = u
t_final = 50
out.dir = /tmp/run
";

    #[test]
    fn parses_a_complete_configuration() {
        let c = SolverConfig::parse(GOOD).unwrap();
        assert_eq!(c.grid.n_r, 512);
        assert_eq!(c.init.field, FieldSelect::U);
        assert_eq!(c.lot_mode, LotMode::Off);
        assert!((c.grid.h() - 240.0 / 511.0).abs() < 1e-14);
        assert_eq!(c.bc, "sommerfeld");
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(SolverConfig::parse(&format!("{GOOD}\nbogus = 1")).is_err());
        assert!(SolverConfig::parse(&GOOD.replace("params.a = 0.1", "params.a = 2.0")).is_err());
        assert!(SolverConfig::parse(&GOOD.replace("grid.l_max = 4", "grid.l_max = 1")).is_err());
        assert!(SolverConfig::parse(&GOOD.replace("init.center = 0", "init.center = 119")).is_err());
        assert!(SolverConfig::parse(&GOOD.replace("init.l = 2", "init.l = 1")).is_err());
        assert!(SolverConfig::parse("grid.n_r = twelve").is_err());
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        assert!(SolverConfig::parse(&format!("{GOOD}\nparams.M = 2")).is_err());
    }
}
