use std::path::{Path, PathBuf};

use fock_core::fockspace::{Exponent, Flavor, FockContext};
use fock_core::json::{FunctionSpec, OperatorSpec};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Classify,
    Norm,
    Iterate,
    Dynamics,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Supercyclicity,
}

/// Everything one invocation needs. Operator and function specs are held
/// parsed, so the echo in the report is the canonical form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<OperatorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Exponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flavor: Option<Flavor>,
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub grid_radius: f64,
    pub grid_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            op: None,
            function: None,
            p: None,
            alpha: None,
            flavor: None,
            tol: DEFAULT_TOL,
            n: None,
            grid_radius: 2.0,
            grid_size: 16,
            suite: None,
            out: None,
            csv: None,
            seed: DEFAULT_SEED,
        }
    }

    pub fn load_op(&mut self, path: &Path) -> CliResult<()> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let spec: OperatorSpec = serde_json::from_str(&text)
            .map_err(|e| CliError::ConfigInvalid(format!("{}: {e}", path.display())))?;
        self.op = Some(spec);
        Ok(())
    }

    pub fn load_function(&mut self, path: &Path) -> CliResult<()> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let spec: FunctionSpec = serde_json::from_str(&text)
            .map_err(|e| CliError::ConfigInvalid(format!("{}: {e}", path.display())))?;
        self.function = Some(spec);
        Ok(())
    }

    /// The operator spec with any `--p/--alpha/--flavor` overrides applied.
    pub fn effective_op(&self) -> Option<OperatorSpec> {
        let mut op = self.op.clone()?;
        if let Some(p) = self.p {
            op.p = p;
            if self.flavor.is_none() && op.flavor.is_some() {
                op.flavor = None;
            }
        }
        if let Some(alpha) = self.alpha {
            op.alpha = alpha;
        }
        if let Some(flavor) = self.flavor {
            op.flavor = Some(flavor);
        }
        Some(op)
    }

    /// The space for `norm`; `--flavor` defaults as for operator specs.
    pub fn norm_context(&self) -> CliResult<FockContext> {
        let p = self.p.ok_or_else(|| CliError::ConfigInvalid("norm needs --p".into()))?;
        let alpha = self.alpha.ok_or_else(|| CliError::ConfigInvalid("norm needs --alpha".into()))?;
        let flavor = self.flavor.unwrap_or(match p {
            Exponent::Finite(_) => Flavor::Fp,
            Exponent::Infinity => Flavor::FinftyFull,
        });
        FockContext::new(p, alpha, flavor).map_err(|e| CliError::ConfigInvalid(e.to_string()))
    }

    /// Checks every field the command needs before anything is computed.
    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: &str| Err(CliError::ConfigInvalid(m.into()));
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return bad("--tol must be a positive number");
        }
        if let Some(alpha) = self.alpha {
            if !(alpha.is_finite() && alpha > 0.0) {
                return bad("--alpha must be a positive number");
            }
        }
        if let Some(Exponent::Finite(p)) = self.p {
            if !(p.is_finite() && p >= 1.0) {
                return bad("--p must be at least 1 or inf");
            }
        }
        let needs_op = matches!(self.command, Command::Classify | Command::Iterate | Command::Dynamics);
        if needs_op {
            let op = match self.effective_op() {
                Some(op) => op,
                None => return bad("this command needs --op"),
            };
            op.context().map_err(|e| CliError::ConfigInvalid(e.to_string()))?;
            if !(op.lambda.re.is_finite() && op.lambda.im.is_finite() && op.a.re.is_finite() && op.a.im.is_finite()) {
                return bad("operator symbol must be finite");
            }
        }
        match self.command {
            Command::Norm => {
                if self.function.is_none() {
                    return bad("norm needs --function");
                }
                self.norm_context()?;
            }
            Command::Iterate => {
                if self.n.unwrap_or(1) == 0 {
                    return bad("--N must be at least 1");
                }
                if !(self.grid_radius.is_finite() && self.grid_radius > 0.0) || self.grid_size < 2 {
                    return bad("--eval-grid needs a positive radius and at least 2 points");
                }
            }
            Command::Dynamics => {
                if self.suite.unwrap_or(Suite::Supercyclicity) != Suite::Supercyclicity {
                    return bad("unknown suite");
                }
                if self.n.unwrap_or(64) < 4 {
                    return bad("--N must be at least 4 for dynamics");
                }
            }
            Command::Classify | Command::Verify => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fock_core::json::FunctionSpec;
    use num_complex::Complex64;

    fn op() -> OperatorSpec {
        OperatorSpec {
            psi: FunctionSpec::ExpQuadratic {
                a0: Complex64::new(0.0, 0.0),
                a1: Complex64::new(0.0, 0.0),
                a2: Complex64::new(0.375, 0.0),
            },
            a: Complex64::new(0.0, 0.0),
            lambda: Complex64::new(0.5, 0.0),
            p: Exponent::Finite(2.0),
            alpha: 1.0,
            flavor: Some(Flavor::Fp),
        }
    }

    #[test]
    fn command_requirements() {
        assert!(RunConfig::new(Command::Verify).validate().is_ok());
        assert!(RunConfig::new(Command::Classify).validate().is_err());
        let mut c = RunConfig::new(Command::Iterate);
        c.op = Some(op());
        assert!(c.validate().is_ok());
        c.n = Some(0);
        assert!(c.validate().is_err());
        let mut c = RunConfig::new(Command::Norm);
        c.function = Some(op().psi);
        assert!(c.validate().is_err());
        c.p = Some(Exponent::Finite(0.5));
        c.alpha = Some(1.0);
        assert!(c.validate().is_err());
        c.p = Some(Exponent::Infinity);
        assert_eq!(c.norm_context().unwrap().flavor(), Flavor::FinftyFull);
    }

    #[test]
    fn changing_p_drops_a_stale_flavor() {
        let mut c = RunConfig::new(Command::Classify);
        c.op = Some(op());
        c.p = Some(Exponent::Infinity);
        let eff = c.effective_op().unwrap();
        assert_eq!(eff.flavor, None);
        assert_eq!(eff.context().unwrap().flavor(), Flavor::FinftyZero);
        c.flavor = Some(Flavor::FinftyFull);
        assert_eq!(c.effective_op().unwrap().flavor, Some(Flavor::FinftyFull));
    }

    #[test]
    fn config_round_trips_through_json() {
        let mut c = RunConfig::new(Command::Dynamics);
        c.op = Some(op());
        c.n = Some(40);
        c.suite = Some(Suite::Supercyclicity);
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), c);
    }
}
