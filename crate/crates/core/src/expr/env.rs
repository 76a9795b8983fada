use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::EvalError;

/// Named real parameters (`p`, `eps`, `alpha`, `q`, ...) bound for evaluation.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamEnv {
    values: BTreeMap<String, f64>,
}

impl ParamEnv {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder form of [`ParamEnv::set`]; panics on an invalid value.
    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.set(name, value).expect("invalid parameter value");
        self
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<(), EvalError> {
        if !value.is_finite() {
            return Err(EvalError::InvalidParam {
                name: name.to_string(),
                value,
            });
        }
        if name == "p" && value <= 0.0 {
            return Err(EvalError::InvalidParam {
                name: name.to_string(),
                value,
            });
        }
        self.values.insert(name.to_string(), value);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<f64, EvalError> {
        self.get(name)
            .ok_or_else(|| EvalError::UnboundParam(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
