//! The boundary potential `sigma` on the half-line and its coupling-scaled
//! family `sigma_alpha = alpha * sigma`.
//!
//! `sigma` is real-valued and bounded; its declared decay `sigma(x) =
//! O(x^{-1-epsilon})` enters the truncation of boundary grids. Shapes: a
//! step on `(0, L]`, an exponential `sigma0 e^{-mu x}`, or a sampled table
//! with linear interpolation.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Step { sigma0: f64, l: f64 },
    Exponential { sigma0: f64, mu: f64 },
    Table { points: Vec<(f64, f64)> },
}

/// Boundary potential with coupling `alpha` and declared decay exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPotential {
    shape: Shape,
    alpha: f64,
    decay_epsilon: f64,
}

impl BoundaryPotential {
    pub fn step(sigma0: f64, l: f64, alpha: f64) -> Result<Self> {
        if !(l > 0.0) {
            return Err(Error::Config("L must be positive".into()));
        }
        Self::validated(Shape::Step { sigma0, l }, alpha, 1.0)
    }

    pub fn exponential(sigma0: f64, mu: f64, alpha: f64, decay_epsilon: f64) -> Result<Self> {
        if !(mu > 0.0) {
            return Err(Error::Config("mu must be positive".into()));
        }
        Self::validated(Shape::Exponential { sigma0, mu }, alpha, decay_epsilon)
    }

    pub fn table(points: Vec<(f64, f64)>, alpha: f64, decay_epsilon: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Config("points must be non-empty".into()));
        }
        for pair in points.windows(2) {
            if !(pair[1].0 > pair[0].0) {
                return Err(Error::Config(
                    "points abscissae must be strictly increasing".into(),
                ));
            }
        }
        if points[0].0 < 0.0 {
            return Err(Error::Config("points abscissae must be non-negative".into()));
        }
        for &(x, s) in &points {
            if !x.is_finite() || !s.is_finite() {
                return Err(Error::Config("points entries must be finite".into()));
            }
        }
        Self::validated(Shape::Table { points }, alpha, decay_epsilon)
    }

    fn validated(shape: Shape, alpha: f64, decay_epsilon: f64) -> Result<Self> {
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(Error::Config("alpha must be a non-negative finite number".into()));
        }
        if !(decay_epsilon >= 0.0) || !decay_epsilon.is_finite() {
            return Err(Error::Config("epsilon must be a non-negative finite number".into()));
        }
        match &shape {
            Shape::Step { sigma0, .. } | Shape::Exponential { sigma0, .. } => {
                if !sigma0.is_finite() {
                    return Err(Error::Config("sigma0 must be finite".into()));
                }
            }
            Shape::Table { .. } => {}
        }
        Ok(BoundaryPotential { shape, alpha, decay_epsilon })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn decay_epsilon(&self) -> f64 {
        self.decay_epsilon
    }

    /// Same shape with a different coupling.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::validated(self.shape.clone(), alpha, self.decay_epsilon)
    }

    /// The scaled potential `alpha * sigma(x)` for `x >= 0`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x < 0.0 || !x.is_finite() {
            return Err(Error::Domain(format!("potential argument {x} must be >= 0")));
        }
        Ok(self.alpha * self.shape_value(x))
    }

    // unscaled sigma(x); step is sigma0 on (0, L] and at x = 0 by continuity
    fn shape_value(&self, x: f64) -> f64 {
        match &self.shape {
            Shape::Step { sigma0, l } => {
                if x <= *l {
                    *sigma0
                } else {
                    0.0
                }
            }
            Shape::Exponential { sigma0, mu } => sigma0 * (-mu * x).exp(),
            Shape::Table { points } => {
                if x <= points[0].0 {
                    return points[0].1;
                }
                if x > points[points.len() - 1].0 {
                    return 0.0;
                }
                let idx = points.partition_point(|&(xi, _)| xi < x);
                let (x0, s0) = points[idx - 1];
                let (x1, s1) = points[idx];
                s0 + (s1 - s0) * (x - x0) / (x1 - x0)
            }
        }
    }

    /// Unscaled shape value; used where the coupling enters separately.
    pub fn shape_eval(&self, x: f64) -> Result<f64> {
        if x < 0.0 || !x.is_finite() {
            return Err(Error::Domain(format!("potential argument {x} must be >= 0")));
        }
        Ok(self.shape_value(x))
    }

    /// Supremum of |alpha * sigma| (exact for step/exponential, sample max
    /// for tables).
    pub fn sup_abs(&self) -> f64 {
        let s = match &self.shape {
            Shape::Step { sigma0, .. } | Shape::Exponential { sigma0, .. } => sigma0.abs(),
            Shape::Table { points } => points.iter().map(|&(_, s)| s.abs()).fold(0.0, f64::max),
        };
        self.alpha * s
    }

    /// Smallest X with |alpha sigma(x)| < threshold for all x > X.
    pub fn support_radius(&self, threshold: f64) -> Result<f64> {
        if !(threshold > 0.0) {
            return Err(Error::Parameter("threshold must be positive".into()));
        }
        if self.alpha == 0.0 {
            return Ok(0.0);
        }
        Ok(match &self.shape {
            Shape::Step { sigma0, l } => {
                if (self.alpha * sigma0).abs() < threshold {
                    0.0
                } else {
                    *l
                }
            }
            Shape::Exponential { sigma0, mu } => {
                let a = (self.alpha * sigma0).abs();
                if a < threshold {
                    0.0
                } else {
                    (a / threshold).ln() / mu
                }
            }
            Shape::Table { points } => points
                .iter()
                .rev()
                .find(|&&(_, s)| (self.alpha * s).abs() >= threshold)
                .map(|&(x, _)| x)
                .unwrap_or(0.0),
        })
    }

    /// Parse from the JSON configuration schema. Unknown fields are rejected.
    pub fn from_config(document: &str) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(document)
            .map_err(|e| Error::Config(format!("malformed potential config: {e}")))?;
        raw.build()
    }

    /// Serialize back to the configuration schema.
    pub fn to_config(&self) -> String {
        let raw = RawConfig::from_potential(self);
        serde_json::to_string_pretty(&raw).expect("potential config serializes")
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    shape: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma0: Option<f64>,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    l: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
}

impl RawConfig {
    fn build(self) -> Result<BoundaryPotential> {
        let alpha = self.alpha.unwrap_or(1.0);
        let epsilon = self.epsilon.unwrap_or(1.0);
        match self.shape.as_str() {
            "step" => {
                let sigma0 = self
                    .sigma0
                    .ok_or_else(|| Error::Config("step shape requires sigma0".into()))?;
                let l = self.l.ok_or_else(|| Error::Config("step shape requires L".into()))?;
                if self.mu.is_some() || self.points.is_some() {
                    return Err(Error::Config("step shape takes only sigma0 and L".into()));
                }
                if !(l > 0.0) {
                    return Err(Error::Config("L must be positive".into()));
                }
                BoundaryPotential::validated(Shape::Step { sigma0, l }, alpha, epsilon)
            }
            "exponential" => {
                let sigma0 = self
                    .sigma0
                    .ok_or_else(|| Error::Config("exponential shape requires sigma0".into()))?;
                let mu = self.mu.ok_or_else(|| Error::Config("exponential shape requires mu".into()))?;
                if self.l.is_some() || self.points.is_some() {
                    return Err(Error::Config("exponential shape takes only sigma0 and mu".into()));
                }
                if !(mu > 0.0) {
                    return Err(Error::Config("mu must be positive".into()));
                }
                BoundaryPotential::validated(Shape::Exponential { sigma0, mu }, alpha, epsilon)
            }
            "table" => {
                let points = self
                    .points
                    .ok_or_else(|| Error::Config("table shape requires points".into()))?;
                if self.sigma0.is_some() || self.l.is_some() || self.mu.is_some() {
                    return Err(Error::Config("table shape takes only points".into()));
                }
                BoundaryPotential::table(
                    points.into_iter().map(|p| (p[0], p[1])).collect(),
                    alpha,
                    epsilon,
                )
            }
            other => Err(Error::Config(format!(
                "shape must be one of step, exponential, table (got {other:?})"
            ))),
        }
    }

    fn from_potential(p: &BoundaryPotential) -> Self {
        let mut raw = RawConfig {
            shape: String::new(),
            sigma0: None,
            l: None,
            mu: None,
            points: None,
            alpha: Some(p.alpha),
            epsilon: Some(p.decay_epsilon),
        };
        match &p.shape {
            Shape::Step { sigma0, l } => {
                raw.shape = "step".into();
                raw.sigma0 = Some(*sigma0);
                raw.l = Some(*l);
            }
            Shape::Exponential { sigma0, mu } => {
                raw.shape = "exponential".into();
                raw.sigma0 = Some(*sigma0);
                raw.mu = Some(*mu);
            }
            Shape::Table { points } => {
                raw.shape = "table".into();
                raw.points = Some(points.iter().map(|&(x, s)| [x, s]).collect());
            }
        }
        raw
    }
}

/// sgn with sgn(0) = 0.
pub fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn step_eval() {
        let p = BoundaryPotential::step(1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.eval(0.5).unwrap(), 1.0);
        assert_eq!(p.eval(2.0).unwrap(), 0.0);
        assert_eq!(p.eval(1.0).unwrap(), 1.0);
        let zero = p.with_alpha(0.0).unwrap();
        assert_eq!(zero.eval(0.7).unwrap(), 0.0);
        assert!(p.eval(-0.1).is_err());
    }

    #[test]
    fn support_radii() {
        let p = BoundaryPotential::step(1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.support_radius(1e-8).unwrap(), 1.0);
        let e = BoundaryPotential::exponential(1.0, 2.0, 1.0, 1.0).unwrap();
        let r = e.support_radius(1e-8).unwrap();
        assert!((r - (1e8f64).ln() / 2.0).abs() < 1e-12, "r = {r}");
        assert_eq!(p.with_alpha(0.0).unwrap().support_radius(1e-8).unwrap(), 0.0);
    }

    #[test]
    fn eval_zero_beyond_support_radius() {
        let e = BoundaryPotential::exponential(2.0, 1.5, 0.7, 1.0).unwrap();
        let t = 1e-6;
        let r = e.support_radius(t).unwrap();
        for dx in [0.0, 0.5, 3.0] {
            assert!(e.eval(r + dx).unwrap().abs() <= t * (1.0 + 1e-12));
        }
    }

    #[test]
    fn from_config_examples() {
        let p = BoundaryPotential::from_config(
            r#"{"shape":"step","sigma0":1.0,"L":1.0,"alpha":0.01}"#,
        )
        .unwrap();
        assert_eq!(p.alpha(), 0.01);
        assert_eq!(p.eval(0.5).unwrap(), 0.01);

        let t = BoundaryPotential::from_config(
            r#"{"shape":"table","points":[[0,1],[1,0.5],[2,0]],"alpha":1,"epsilon":1}"#,
        )
        .unwrap();
        assert_eq!(t.eval(0.5).unwrap(), 0.75);
        assert_eq!(t.eval(3.0).unwrap(), 0.0);

        let err = BoundaryPotential::from_config(r#"{"shape":"step","sigma0":1.0,"L":-1}"#);
        match err {
            Err(Error::Config(msg)) => assert!(msg.contains("L must be positive"), "{msg}"),
            other => panic!("expected config error, got {other:?}"),
        }

        assert!(BoundaryPotential::from_config(
            r#"{"shape":"step","sigma0":1.0,"L":1.0,"bogus":3}"#
        )
        .is_err());
        assert!(BoundaryPotential::from_config(
            r#"{"shape":"table","points":[[1,1],[0.5,2]]}"#
        )
        .is_err());
    }

    #[test]
    fn config_round_trip() {
        let pots = [
            BoundaryPotential::step(-0.5, 2.0, 1.5).unwrap(),
            BoundaryPotential::exponential(1.0, 2.0, 0.3, 0.7).unwrap(),
            BoundaryPotential::table(vec![(0.0, 1.0), (1.0, -0.5), (2.0, 0.0)], 1.0, 1.0).unwrap(),
        ];
        for p in pots {
            let q = BoundaryPotential::from_config(&p.to_config()).unwrap();
            for i in 0..40 {
                let x = i as f64 * 0.1;
                assert_eq!(p.eval(x).unwrap(), q.eval(x).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn coupling_is_linear(a in 0.0f64..10.0, b in 0.0f64..10.0, x in 0.0f64..20.0) {
            let p1 = BoundaryPotential::exponential(1.3, 0.8, a * b, 1.0).unwrap();
            let p2 = BoundaryPotential::exponential(1.3, 0.8, b, 1.0).unwrap();
            let lhs = p1.eval(x).unwrap();
            let rhs = a * p2.eval(x).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(rhs.abs()).max(1.0));
        }
    }
}
