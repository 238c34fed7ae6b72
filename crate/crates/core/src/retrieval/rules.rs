use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_MU: f64 = 2500.0;

/// How a document language model is smoothed toward the collection model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmoothingRule<F = f64> {
    /// Bayesian smoothing with a Dirichlet prior of mass `mu > 0`.
    Dirichlet { mu: F },
    /// Jelinek-Mercer interpolation, `0 < lambda < 1` on the collection model.
    JelinekMercer { lambda: F },
}

impl<F: Real> Default for SmoothingRule<F> {
    fn default() -> Self {
        SmoothingRule::Dirichlet { mu: F::from_f64_lossy(DEFAULT_MU) }
    }
}

impl<F: Real> SmoothingRule<F> {
    pub fn dirichlet(mu: F) -> Result<Self> {
        if mu.is_finite() && mu > F::zero() {
            Ok(SmoothingRule::Dirichlet { mu })
        } else {
            Err(Error::Rule(format!("mu must be positive and finite, got {mu}")))
        }
    }

    pub fn jelinek_mercer(lambda: F) -> Result<Self> {
        if lambda > F::zero() && lambda < F::one() {
            Ok(SmoothingRule::JelinekMercer { lambda })
        } else {
            Err(Error::Rule(format!("lambda must lie in (0, 1), got {lambda}")))
        }
    }
}

/// Parses a rule string such as `method:dirichlet,mu:5000`.
///
/// Keys are `method` (`dirichlet` or `jm`), `mu`, and `lambda`. The method
/// defaults to dirichlet and mu to 2500; `jm` needs an explicit lambda.
pub fn parse_rules<F: Real>(rule: &str) -> Result<SmoothingRule<F>> {
    let mut seen = HashSet::new();
    let mut method = None;
    let mut mu = None;
    let mut lambda = None;
    for part in rule.split(',') {
        let (key, value) = part
            .split_once(':')
            .ok_or_else(|| Error::Rule(format!("expected key:value, found `{}`", part.trim())))?;
        let (key, value) = (key.trim(), value.trim());
        if !seen.insert(key) {
            return Err(Error::Rule(format!("duplicate key `{key}`")));
        }
        let number = || -> Result<F> {
            value
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .and_then(F::from_f64)
                .ok_or_else(|| Error::Rule(format!("`{key}` needs a number, found `{value}`")))
        };
        match key {
            "method" => method = Some(value),
            "mu" => mu = Some(number()?),
            "lambda" => lambda = Some(number()?),
            other => return Err(Error::Rule(format!("unknown key `{other}`"))),
        }
    }

    match method.unwrap_or("dirichlet") {
        "dirichlet" => {
            if lambda.is_some() {
                return Err(Error::Rule("lambda does not apply to method dirichlet".into()));
            }
            SmoothingRule::dirichlet(mu.unwrap_or_else(|| F::from_f64_lossy(DEFAULT_MU)))
        }
        "jm" => {
            if mu.is_some() {
                return Err(Error::Rule("mu does not apply to method jm".into()));
            }
            let lambda = lambda.ok_or_else(|| Error::Rule("method jm requires lambda".into()))?;
            SmoothingRule::jelinek_mercer(lambda)
        }
        other => Err(Error::Rule(format!("unknown method `{other}`"))),
    }
}
