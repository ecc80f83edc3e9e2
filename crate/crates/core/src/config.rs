//! JSON scenario files.
//!
//! ```json
//! {
//!   "name": "free_helix",
//!   "m": 1.0,
//!   "e": 0.0,
//!   "field": { "kind": "free" },
//!   "init": { "kind": "rotor", "values": { "rho": 0.9566, "beta": 0.0, "bivector": [0.15, 0, 0, 0, 0, 0] } },
//!   "tau_end": 31.41592653589793,
//!   "step": 0.001,
//!   "outputs": { "every": 1 }
//! }
//! ```
//!
//! `init.kind = "z"` takes `values` as `[re1, im1, .., re4, im4]`. `init.x`
//! defaults to the origin and `init.pi` to `m γ0`. `step` defaults to
//! `1e-3/m` and `tau_end` to `10π/m`.

use serde::{Deserialize, Serialize};

use crate::clifford::{exp_bivector, Bivector, Multivector, EXP_DEFAULT_TOL};
use crate::dynamics::{simulate, simulate_partial, BZState, EMField, FieldKind, Trajectory};
use crate::error::{Error, Result};
use crate::spinor::{z_to_psi, DHSpinor, DiracSpinorZ};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitKind {
    Z,
    Rotor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitConfig {
    pub kind: InitKind,
    pub values: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<[f64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<[f64; 4]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RotorValues {
    #[serde(default = "one")]
    rho: f64,
    #[serde(default)]
    beta: f64,
    /// Bivector `B` with `R = exp(B)`, components `(01, 02, 03, 12, 13, 23)`.
    #[serde(default)]
    bivector: [f64; 6],
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_trajectory")]
    pub trajectory: String,
    #[serde(default = "default_diagnostics")]
    pub diagnostics: String,
    #[serde(default = "default_manifest")]
    pub manifest: String,
    /// Write every n-th sample.
    #[serde(default = "default_every")]
    pub every: usize,
}

fn default_trajectory() -> String {
    "trajectory.csv".into()
}
fn default_diagnostics() -> String {
    "diagnostics.csv".into()
}
fn default_manifest() -> String {
    "manifest.json".into()
}
fn default_every() -> usize {
    1
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            trajectory: default_trajectory(),
            diagnostics: default_diagnostics(),
            manifest: default_manifest(),
            every: default_every(),
        }
    }
}

fn free_field() -> FieldKind {
    FieldKind::Free
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub m: f64,
    #[serde(default)]
    pub e: f64,
    #[serde(default = "free_field")]
    pub field: FieldKind,
    pub init: InitConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_end: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(default)]
    pub outputs: OutputConfig,
}

impl ScenarioConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = serde_json::from_str(text).map_err(|e| Error::Config {
            message: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name: &'static str, reason: String| Err(Error::InvalidParameter { name, reason });
        if !(self.m > 0.0 && self.m.is_finite()) {
            return bad("m", format!("mass must be positive and finite, got {}", self.m));
        }
        if !self.e.is_finite() {
            return bad("e", "charge must be finite".into());
        }
        if let Some(h) = self.step {
            if !(h > 0.0 && h.is_finite()) {
                return bad("step", format!("must be positive and finite, got {h}"));
            }
        }
        if let Some(t) = self.tau_end {
            if !(t >= 0.0 && t.is_finite()) {
                return bad("tau_end", format!("must be non-negative and finite, got {t}"));
            }
        }
        if self.outputs.every == 0 {
            return bad("outputs.every", "must be at least 1".into());
        }
        self.initial_state().map(|_| ())
    }

    pub fn resolved_step(&self) -> f64 {
        self.step.unwrap_or(1e-3 / self.m)
    }

    pub fn resolved_tau_end(&self) -> f64 {
        self.tau_end.unwrap_or(10.0 * std::f64::consts::PI / self.m)
    }

    pub fn field(&self) -> EMField {
        EMField {
            charge: self.e,
            kind: self.field.clone(),
        }
    }

    pub fn initial_spinor(&self) -> Result<DHSpinor> {
        let values = self.init.values.clone();
        let cfg_err = |e: serde_json::Error| Error::Config {
            message: format!("init.values: {e}"),
        };
        match self.init.kind {
            InitKind::Z => {
                let v: [f64; 8] = serde_json::from_value(values).map_err(cfg_err)?;
                z_to_psi(&DiracSpinorZ::from_re_im(v))
            }
            InitKind::Rotor => {
                let v: RotorValues = serde_json::from_value(values).map_err(cfg_err)?;
                if !(v.rho > 0.0) {
                    return Err(Error::InvalidParameter {
                        name: "init.values.rho",
                        reason: format!("density must be positive, got {}", v.rho),
                    });
                }
                let r = exp_bivector(&Bivector::new(v.bivector), EXP_DEFAULT_TOL)?;
                Ok(DHSpinor::from_parts(v.rho, v.beta, &r))
            }
        }
    }

    pub fn initial_state(&self) -> Result<BZState> {
        let psi = self.initial_spinor()?;
        let x = Multivector::vector(self.init.x.unwrap_or([0.0; 4]));
        let pi = self
            .init
            .pi
            .map(Multivector::vector)
            .unwrap_or(Multivector::gamma(0) * self.m);
        Ok(BZState::new(0.0, x, pi, psi))
    }

    /// Run, keeping the samples computed before any mid-run failure.
    pub fn run_partial(&self) -> Result<(Trajectory, Option<Error>)> {
        simulate_partial(
            &self.initial_state()?,
            &self.field(),
            self.m,
            self.resolved_step(),
            self.resolved_tau_end(),
        )
    }

    pub fn run(&self) -> Result<Trajectory> {
        simulate(
            &self.initial_state()?,
            &self.field(),
            self.m,
            self.resolved_step(),
            self.resolved_tau_end(),
        )
    }
}
