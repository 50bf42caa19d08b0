use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::specfun::RootKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    /// `ψ = 0` on the boundary.
    Dirichlet,
    /// `∂ψ/∂n = 0` on the boundary.
    Neumann,
}

impl BoundaryCondition {
    /// Circle eigenvalues are squares of zeros of `Jₗ` (Dirichlet) or
    /// `Jₗ′` (Neumann).
    pub fn root_kind(self) -> RootKind {
        match self {
            BoundaryCondition::Dirichlet => RootKind::FunctionZero,
            BoundaryCondition::Neumann => RootKind::DerivativeZero,
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryCondition::Dirichlet => "dirichlet",
            BoundaryCondition::Neumann => "neumann",
        })
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dirichlet" => Ok(BoundaryCondition::Dirichlet),
            "neumann" => Ok(BoundaryCondition::Neumann),
            other => Err(Error::Spec(format!("unknown boundary condition `{other}`"))),
        }
    }
}

/// Angular variety of a circle mode: `cos lθ` or `sin lθ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Cos,
    Sin,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Cos => "cos",
            Parity::Sin => "sin",
        })
    }
}
