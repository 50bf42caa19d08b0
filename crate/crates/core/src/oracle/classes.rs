use std::fmt;

use serde::Serialize;

use crate::boundary::Symmetry;
use crate::mode::Parity;

/// Angular factor carried by the basis functions of a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Angular {
    Cos,
    Sin,
    /// Both `cos pθ` and `sin pθ` (no symmetry reduction).
    Both,
}

/// A family of trial functions `Jₚ(kr)·{cos, sin}(pθ)` with `p ≡ residue
/// (mod modulus)`, closed under the symmetry of the boundary. Eigenvalues
/// found in a class occur `multiplicity` times in the full spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SymmetryClass {
    pub angular: Angular,
    pub modulus: u32,
    pub residue: u32,
    pub multiplicity: u32,
    /// Angular width of the sector that determines the class, as a
    /// divisor of 2π.
    pub sectors: u32,
}

impl SymmetryClass {
    /// Classes partitioning the trial space for a given symmetry.
    pub fn partition(symmetry: Symmetry) -> Vec<SymmetryClass> {
        let one = |angular, modulus, residue, multiplicity, sectors| SymmetryClass {
            angular,
            modulus,
            residue,
            multiplicity,
            sectors,
        };
        match symmetry {
            Symmetry::None => vec![one(Angular::Both, 1, 0, 1, 1)],
            Symmetry::D2 => vec![
                one(Angular::Cos, 2, 0, 1, 4),
                one(Angular::Cos, 2, 1, 1, 4),
                one(Angular::Sin, 2, 0, 1, 4),
                one(Angular::Sin, 2, 1, 1, 4),
            ],
            Symmetry::D4 => vec![
                one(Angular::Cos, 4, 0, 1, 8),
                one(Angular::Sin, 4, 0, 1, 8),
                one(Angular::Cos, 4, 2, 1, 8),
                one(Angular::Sin, 4, 2, 1, 8),
                // two-dimensional representation: the sin-odd partner is
                // degenerate with this one
                one(Angular::Cos, 2, 1, 2, 4),
            ],
        }
    }

    /// The class containing the circle mode `Jₗ(kr)·{cos, sin}(lθ)`.
    pub fn containing(symmetry: Symmetry, l: u32, parity: Parity) -> SymmetryClass {
        let parity = if l == 0 { Parity::Cos } else { parity };
        let want = match parity {
            Parity::Cos => Angular::Cos,
            Parity::Sin => Angular::Sin,
        };
        let classes = Self::partition(symmetry);
        if symmetry == Symmetry::D4 && l % 2 == 1 {
            return classes[4];
        }
        classes
            .into_iter()
            .find(|c| c.angular == Angular::Both || (c.angular == want && l % c.modulus == c.residue))
            .expect("partition covers every mode")
    }

    /// Basis `(p, angular)` pairs, `count` of them, in increasing `p`.
    pub fn basis(&self, count: usize) -> Vec<(u32, Parity)> {
        let mut out = Vec::with_capacity(count);
        let mut p = self.residue;
        while out.len() < count {
            match self.angular {
                Angular::Cos => out.push((p, Parity::Cos)),
                Angular::Sin => {
                    if p > 0 {
                        out.push((p, Parity::Sin));
                    }
                }
                Angular::Both => {
                    out.push((p, Parity::Cos));
                    if p > 0 && out.len() < count {
                        out.push((p, Parity::Sin));
                    }
                }
            }
            p += self.modulus;
        }
        out
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.angular {
            Angular::Cos => "cos",
            Angular::Sin => "sin",
            Angular::Both => "all",
        };
        if self.angular == Angular::Both {
            write!(f, "all")
        } else {
            write!(f, "{a}{}mod{}", self.residue, self.modulus)?;
            if self.multiplicity > 1 {
                write!(f, "x{}", self.multiplicity)?;
            }
            Ok(())
        }
    }
}
