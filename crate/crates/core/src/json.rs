//! JSON forms of functions and operators. Complex numbers are `[re, im]`.

use serde::{Deserialize, Serialize};

use crate::complexfn::{EntireFunction, ExpQuadratic, PolyTimesExpQuad, TailRule, TaylorSeries, C64};
use crate::error::{FockError, Result};
use crate::fockspace::{Exponent, Flavor, FockContext};
use crate::wcomp::{AffineSymbol, WeightedCompOp};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    ExpQuadratic {
        #[serde(default)]
        a0: C64,
        #[serde(default)]
        a1: C64,
        #[serde(default)]
        a2: C64,
    },
    PolyExpQuadratic {
        poly: Vec<C64>,
        #[serde(default)]
        a0: C64,
        #[serde(default)]
        a1: C64,
        #[serde(default)]
        a2: C64,
    },
    Taylor(TaylorSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TaylorSpec {
    Explicit { coeffs: Vec<C64>, tail: TailRule },
    Builtin(Builtin),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "builtin", rename_all = "snake_case")]
pub enum Builtin {
    /// `(exp(c z²) − 1)/z`.
    ExpQuadMinusOneOverZ { c: C64, terms: usize },
    Exp { terms: usize },
}

impl TryFrom<FunctionSpec> for EntireFunction {
    type Error = FockError;
    fn try_from(s: FunctionSpec) -> Result<Self> {
        Ok(match s {
            FunctionSpec::ExpQuadratic { a0, a1, a2 } => ExpQuadratic::new(a0, a1, a2).into(),
            FunctionSpec::PolyExpQuadratic { poly, a0, a1, a2 } => {
                PolyTimesExpQuad::new(poly, ExpQuadratic::new(a0, a1, a2))?.into()
            }
            FunctionSpec::Taylor(TaylorSpec::Explicit { coeffs, tail }) => TaylorSeries::new(coeffs, tail)?.into(),
            FunctionSpec::Taylor(TaylorSpec::Builtin(Builtin::ExpQuadMinusOneOverZ { c, terms })) => {
                TaylorSeries::exp_quad_minus_one_over_z(c, terms)?.into()
            }
            FunctionSpec::Taylor(TaylorSpec::Builtin(Builtin::Exp { terms })) => TaylorSeries::exponential(terms)?.into(),
        })
    }
}

impl From<&EntireFunction> for FunctionSpec {
    fn from(f: &EntireFunction) -> Self {
        match f {
            EntireFunction::ExpQuadratic(g) => FunctionSpec::ExpQuadratic {
                a0: g.a0,
                a1: g.a1,
                a2: g.a2,
            },
            EntireFunction::PolyExpQuad(p) => FunctionSpec::PolyExpQuadratic {
                poly: p.poly().to_vec(),
                a0: p.core().a0,
                a1: p.core().a1,
                a2: p.core().a2,
            },
            EntireFunction::Taylor(t) => FunctionSpec::Taylor(TaylorSpec::Explicit {
                coeffs: t.coeffs().to_vec(),
                tail: t.tail(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    pub psi: FunctionSpec,
    #[serde(default)]
    pub a: C64,
    pub lambda: C64,
    pub p: Exponent,
    pub alpha: f64,
    /// Defaults to `fp` for finite `p` and `finfty0` for `p = inf`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flavor: Option<Flavor>,
}

impl OperatorSpec {
    pub fn context(&self) -> Result<FockContext> {
        let flavor = self.flavor.unwrap_or(match self.p {
            Exponent::Finite(_) => Flavor::Fp,
            Exponent::Infinity => Flavor::FinftyZero,
        });
        FockContext::new(self.p, self.alpha, flavor)
    }

    pub fn build(&self) -> Result<WeightedCompOp> {
        let psi = EntireFunction::try_from(self.psi.clone())?;
        WeightedCompOp::new(psi, AffineSymbol::new(self.a, self.lambda), self.context()?)
    }

    pub fn from_operator(w: &WeightedCompOp) -> Self {
        let ctx = w.ctx();
        OperatorSpec {
            psi: FunctionSpec::from(w.psi()),
            a: w.phi().a,
            lambda: w.phi().lambda,
            p: ctx.p(),
            alpha: ctx.alpha(),
            flavor: Some(ctx.flavor()),
        }
    }
}

fn parse_err(e: serde_json::Error) -> FockError {
    FockError::InvalidInput(format!("malformed JSON: {e}"))
}

pub fn function_from_json(s: &str) -> Result<EntireFunction> {
    serde_json::from_str::<FunctionSpec>(s).map_err(parse_err)?.try_into()
}

pub fn function_to_json(f: &EntireFunction) -> String {
    serde_json::to_string(&FunctionSpec::from(f)).expect("function spec serializes")
}

pub fn operator_from_json(s: &str) -> Result<WeightedCompOp> {
    serde_json::from_str::<OperatorSpec>(s).map_err(parse_err)?.build()
}

pub fn operator_to_json(w: &WeightedCompOp) -> String {
    serde_json::to_string(&OperatorSpec::from_operator(w)).expect("operator spec serializes")
}
