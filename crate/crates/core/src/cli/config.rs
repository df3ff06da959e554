use std::path::Path;

use serde::Deserialize;

use crate::consensus::Fleet;
use crate::error::{Error, Result};
use crate::model::{AgentInit, Params, Tolerances};
use crate::oracle::OracleConfig;

/// On-disk fleet description (TOML).
///
/// ```toml
/// b = 1.0
/// beta = 0.7
///
/// [[agents]]
/// id = "a1"
/// x1 = 0.04
/// x2 = 0.1
/// ```
///
/// Optional tables: `[tolerances]` (`root_tol`, `feas_tol`, `membership_eps`)
/// and `[oracle]` (`grid = [n1, n2]`, `tol`).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FleetConfig {
    pub b: f64,
    pub beta: f64,
    pub agents: Vec<AgentEntry>,
    #[serde(default)]
    pub tolerances: Option<TolerancesEntry>,
    #[serde(default)]
    pub oracle: Option<OracleEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentEntry {
    pub id: String,
    pub x1: f64,
    pub x2: f64,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolerancesEntry {
    pub root_tol: Option<f64>,
    pub feas_tol: Option<f64>,
    pub membership_eps: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleEntry {
    pub grid: Option<[usize; 2]>,
    pub tol: Option<f64>,
}

impl FleetConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn params(&self) -> Result<Params> {
        let mut tol = Tolerances::default();
        if let Some(t) = &self.tolerances {
            tol.root_tol = t.root_tol.unwrap_or(tol.root_tol);
            tol.feas_tol = t.feas_tol.unwrap_or(tol.feas_tol);
            tol.membership_eps = t.membership_eps.unwrap_or(tol.membership_eps);
        }
        Params::with_tolerances(self.b, self.beta, tol).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn fleet(&self) -> Result<Fleet> {
        for (k, a) in self.agents.iter().enumerate() {
            if a.id.is_empty() {
                return Err(Error::Config(format!("agents[{k}].id is empty")));
            }
            if !(a.x1.is_finite() && a.x2.is_finite()) {
                return Err(Error::Config(format!("agents[{k}] ({}) has a non-finite state", a.id)));
            }
            if let Some(j) = self.agents[..k].iter().position(|b| b.id == a.id) {
                return Err(Error::Config(format!(
                    "agents[{k}].id {:?} duplicates agents[{j}].id",
                    a.id
                )));
            }
        }
        let agents = self
            .agents
            .iter()
            .map(|a| AgentInit::new(a.id.clone(), a.x1, a.x2))
            .collect();
        Fleet::new(agents, self.params()?).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn oracle(&self) -> OracleConfig {
        let mut cfg = OracleConfig::default();
        if let Some(o) = &self.oracle {
            if let Some([a, b]) = o.grid {
                cfg.grid = (a, b);
            }
            cfg.tol = o.tol.unwrap_or(cfg.tol);
        }
        cfg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"
b = 1.0
beta = 0.7
[oracle]
grid = [100, 50]
[[agents]]
id = "a"
x1 = 0.0
x2 = 0.1
[[agents]]
id = "b"
x1 = 0.2
x2 = -0.1
"#;

    #[test]
    fn parses() {
        let c = FleetConfig::parse(GOOD).unwrap();
        assert_eq!(c.fleet().unwrap().agents.len(), 2);
        assert_eq!(c.oracle().grid, (100, 50));
    }

    #[test]
    fn reports_line_of_syntax_error() {
        let err = FleetConfig::parse("b = 1.0\nbeta = \n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn names_bad_fields() {
        let dup = GOOD.replace("id = \"b\"", "id = \"a\"");
        let err = FleetConfig::parse(&dup).unwrap().fleet().unwrap_err();
        assert!(err.to_string().contains("agents[1].id"), "{err}");
        let neg = GOOD.replace("b = 1.0", "b = -1.0");
        assert!(FleetConfig::parse(&neg).unwrap().params().is_err());
        assert!(FleetConfig::parse(&GOOD.replace("x2 = 0.1", "x3 = 0.1")).is_err());
    }
}
