//! Coefficient families `f_n` and the periodic system they form.
//!
//! A [`PeriodicSystem`] holds `k` coefficient functions; the recursion index
//! `n` selects coefficient `((n - 1) mod k) + 1`, so products over one period
//! run over `n = 1..=k` and negative indices wrap (`f_{-h} = f_{k-h}`).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A user-supplied coefficient function.
///
/// Implementations must be positive, bounded, continuous and strictly
/// decreasing on `[0, inf)`, with `x * value(x)` strictly increasing. The
/// hypothesis checker in [`crate::analysis`] tests these on a grid but cannot
/// prove them.
pub trait CustomFamily: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    /// `f(x)` for `x >= 0`.
    fn value(&self, x: f64) -> f64;

    fn value_at_zero(&self) -> f64 {
        self.value(0.0)
    }

    /// `lim_{x -> inf} f(x)`.
    fn limit_at_infinity(&self) -> f64;

    /// Declared bound `sup_{x >= 0} f(x)`.
    fn upper_bound(&self) -> f64;
}

#[derive(Debug, Clone)]
enum Kind {
    Pielou {
        beta: f64,
    },
    BevertonHolt {
        lambda: f64,
        capacity: f64,
    },
    RationalSaturating {
        beta: f64,
        alpha1: f64,
        alpha2: f64,
    },
    Custom(Arc<dyn CustomFamily>),
}

/// One coefficient function `f(x)`. Parameters are validated on construction.
#[derive(Debug, Clone)]
pub struct CoefficientFamily {
    kind: Kind,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}

impl CoefficientFamily {
    /// Pielou coefficient `f(x) = beta / (1 + x)`.
    pub fn pielou(beta: f64) -> Result<Self> {
        Ok(Self {
            kind: Kind::Pielou {
                beta: positive("beta", beta)?,
            },
        })
    }

    /// Beverton-Holt coefficient `f(x) = lambda / (1 + (lambda - 1) x / K)`.
    pub fn beverton_holt(lambda: f64, capacity: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 1.0) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "must be finite and greater than 1",
            });
        }
        Ok(Self {
            kind: Kind::BevertonHolt {
                lambda,
                capacity: positive("capacity", capacity)?,
            },
        })
    }

    /// Rational saturating coefficient
    /// `f(x) = beta / (1 + alpha1 x / (1 + alpha2 x))`.
    pub fn rational(beta: f64, alpha1: f64, alpha2: f64) -> Result<Self> {
        Ok(Self {
            kind: Kind::RationalSaturating {
                beta: positive("beta", beta)?,
                alpha1: positive("alpha1", alpha1)?,
                alpha2: positive("alpha2", alpha2)?,
            },
        })
    }

    /// Wraps a user-defined family. Its declared zero value, limit and bound
    /// are checked for consistency here; monotonicity is left to
    /// [`crate::analysis::check_hypotheses`].
    pub fn custom(family: Arc<dyn CustomFamily>) -> Result<Self> {
        let zero = positive("value_at_zero", family.value_at_zero())?;
        let bound = positive("upper_bound", family.upper_bound())?;
        let limit = family.limit_at_infinity();
        if !(limit.is_finite() && limit >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "limit_at_infinity",
                value: limit,
                reason: "must be finite and nonnegative",
            });
        }
        if zero > bound {
            return Err(Error::InvalidParameter {
                name: "upper_bound",
                value: bound,
                reason: "is below the value at zero",
            });
        }
        Ok(Self {
            kind: Kind::Custom(family),
        })
    }

    /// `f(x)` for `x >= 0`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) || x.is_infinite() {
            return Err(Error::Domain(format!(
                "coefficient argument must be finite and nonnegative, got {x}"
            )));
        }
        let value = match &self.kind {
            Kind::Pielou { beta } => beta / (1.0 + x),
            Kind::BevertonHolt { lambda, capacity } => {
                lambda / (1.0 + (lambda - 1.0) * x / capacity)
            }
            Kind::RationalSaturating {
                beta,
                alpha1,
                alpha2,
            } => beta / (1.0 + alpha1 * x / (1.0 + alpha2 * x)),
            Kind::Custom(family) => {
                let v = family.value(x);
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::Domain(format!(
                        "custom family `{}` returned {v} at x = {x}",
                        family.name()
                    )));
                }
                v
            }
        };
        Ok(value)
    }

    /// `f(0)`, which is also the supremum of `f` on `[0, inf)` for the
    /// built-in families.
    pub fn value_at_zero(&self) -> f64 {
        match &self.kind {
            Kind::Pielou { beta } => *beta,
            Kind::BevertonHolt { lambda, .. } => *lambda,
            Kind::RationalSaturating { beta, .. } => *beta,
            Kind::Custom(family) => family.value_at_zero(),
        }
    }

    /// Closed-form `lim_{x -> inf} f(x)`.
    pub fn limit_at_infinity(&self) -> f64 {
        match &self.kind {
            Kind::Pielou { .. } | Kind::BevertonHolt { .. } => 0.0,
            Kind::RationalSaturating {
                beta,
                alpha1,
                alpha2,
            } => beta / (1.0 + alpha1 / alpha2),
            Kind::Custom(family) => family.limit_at_infinity(),
        }
    }

    pub fn upper_bound(&self) -> f64 {
        match &self.kind {
            Kind::Custom(family) => family.upper_bound(),
            _ => self.value_at_zero(),
        }
    }

    pub fn is_custom(&self) -> bool {
        matches!(self.kind, Kind::Custom(_))
    }

    /// The serializable description, or `None` for custom families.
    pub fn to_spec(&self) -> Option<FamilySpec> {
        match &self.kind {
            Kind::Pielou { beta } => Some(FamilySpec::Pielou { beta: *beta }),
            Kind::BevertonHolt { lambda, capacity } => Some(FamilySpec::BevertonHolt {
                lambda: *lambda,
                capacity: *capacity,
            }),
            Kind::RationalSaturating {
                beta,
                alpha1,
                alpha2,
            } => Some(FamilySpec::Rational {
                beta: *beta,
                alpha1: *alpha1,
                alpha2: *alpha2,
            }),
            Kind::Custom(_) => None,
        }
    }
}

impl fmt::Display for CoefficientFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Pielou { beta } => write!(f, "{beta}/(1+x)"),
            Kind::BevertonHolt { lambda, capacity } => {
                write!(f, "{lambda}/(1+({lambda}-1)x/{capacity})")
            }
            Kind::RationalSaturating {
                beta,
                alpha1,
                alpha2,
            } => write!(f, "{beta}/(1+{alpha1}x/(1+{alpha2}x))"),
            Kind::Custom(family) => write!(f, "custom:{}", family.name()),
        }
    }
}

/// Serialized form of a built-in family, e.g. `{"family":"pielou","beta":2.0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    Pielou {
        beta: f64,
    },
    BevertonHolt {
        lambda: f64,
        capacity: f64,
    },
    Rational {
        beta: f64,
        alpha1: f64,
        alpha2: f64,
    },
}

impl TryFrom<FamilySpec> for CoefficientFamily {
    type Error = Error;

    fn try_from(spec: FamilySpec) -> Result<Self> {
        match spec {
            FamilySpec::Pielou { beta } => Self::pielou(beta),
            FamilySpec::BevertonHolt { lambda, capacity } => Self::beverton_holt(lambda, capacity),
            FamilySpec::Rational {
                beta,
                alpha1,
                alpha2,
            } => Self::rational(beta, alpha1, alpha2),
        }
    }
}

/// `x_{n+1} = x_n f_n(x_{n-1})` with `f_n = f_{n+k}`.
#[derive(Debug, Clone)]
pub struct PeriodicSystem {
    coefficients: Vec<CoefficientFamily>,
}

impl PeriodicSystem {
    /// Builds a system whose period is `coefficients.len()`. The first entry
    /// is `f_1`.
    pub fn new(coefficients: Vec<CoefficientFamily>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::InvalidSystem(
                "a periodic system needs at least one coefficient".into(),
            ));
        }
        Ok(Self { coefficients })
    }

    /// All-Pielou system with `f_n(x) = beta_n / (1 + x)`.
    pub fn pielou(betas: &[f64]) -> Result<Self> {
        Self::new(
            betas
                .iter()
                .map(|&b| CoefficientFamily::pielou(b))
                .collect::<Result<_>>()?,
        )
    }

    /// Delayed Beverton-Holt system with shared `lambda` and periodic capacity.
    pub fn beverton_holt(lambda: f64, capacities: &[f64]) -> Result<Self> {
        Self::new(
            capacities
                .iter()
                .map(|&c| CoefficientFamily::beverton_holt(lambda, c))
                .collect::<Result<_>>()?,
        )
    }

    /// Rational saturating system from `(beta, alpha1, alpha2)` triples.
    pub fn rational(params: &[(f64, f64, f64)]) -> Result<Self> {
        Self::new(
            params
                .iter()
                .map(|&(b, a1, a2)| CoefficientFamily::rational(b, a1, a2))
                .collect::<Result<_>>()?,
        )
    }

    pub fn from_specs(specs: &[FamilySpec]) -> Result<Self> {
        Self::new(
            specs
                .iter()
                .map(|&s| CoefficientFamily::try_from(s))
                .collect::<Result<_>>()?,
        )
    }

    pub fn period(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[CoefficientFamily] {
        &self.coefficients
    }

    /// Position in `coefficients` used at recursion index `n`.
    pub fn slot(&self, n: i64) -> usize {
        (n - 1).rem_euclid(self.period() as i64) as usize
    }

    /// The coefficient `f_n`, for any integer `n`.
    pub fn coefficient(&self, n: i64) -> &CoefficientFamily {
        &self.coefficients[self.slot(n)]
    }

    /// `f_n(x)`.
    pub fn f_at(&self, n: i64, x: f64) -> Result<f64> {
        self.coefficient(n).eval(x)
    }

    pub fn specs(&self) -> Option<Vec<FamilySpec>> {
        self.coefficients.iter().map(|c| c.to_spec()).collect()
    }
}
