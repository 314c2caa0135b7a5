//! Generators and structure constants of the generalized Heisenberg-Virasoro
//! algebra and its centerless quotient.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::scalar::{int, rat, GroupElement, Scalar};

/// Which algebra we work in: the full algebra with its four-dimensional
/// center, or the quotient by `span{I(0), C_L, C_I, C_LI}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraMode {
    Full,
    #[default]
    Centerless,
}

impl fmt::Display for AlgebraMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraMode::Full => write!(f, "full"),
            AlgebraMode::Centerless => write!(f, "centerless"),
        }
    }
}

impl std::str::FromStr for AlgebraMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "full" => Ok(AlgebraMode::Full),
            "centerless" => Ok(AlgebraMode::Centerless),
            other => Err(format!("unknown mode `{other}` (expected full|centerless)")),
        }
    }
}

/// A basis symbol. The derived order is the PBW order:
/// `C_L < C_I < C_LI < I(x) (ascending x) < L(x) (ascending x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    CL,
    CI,
    CLI,
    I(GroupElement),
    L(GroupElement),
}

impl Generator {
    pub fn l(x: i64) -> Self {
        Generator::L(int(x))
    }

    pub fn i(x: i64) -> Self {
        Generator::I(int(x))
    }

    pub fn is_central(&self) -> bool {
        match self {
            Generator::CL | Generator::CI | Generator::CLI => true,
            Generator::I(x) => x.is_zero(),
            Generator::L(_) => false,
        }
    }

    /// Grading degree; central symbols sit in degree zero.
    pub fn degree(&self) -> Scalar {
        match self {
            Generator::I(x) | Generator::L(x) => x.clone(),
            _ => Scalar::zero(),
        }
    }

    pub fn is_legal(&self, mode: AlgebraMode) -> bool {
        mode == AlgebraMode::Full || !self.is_central()
    }

    pub fn check_mode(&self, mode: AlgebraMode) -> Result<()> {
        if self.is_legal(mode) {
            Ok(())
        } else {
            Err(AlgebraError::ModeViolation {
                generator: self.clone(),
                mode,
            })
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::CL => write!(f, "C_L"),
            Generator::CI => write!(f, "C_I"),
            Generator::CLI => write!(f, "C_LI"),
            Generator::I(x) => write!(f, "I({x})"),
            Generator::L(x) => write!(f, "L({x})"),
        }
    }
}

/// Sparse linear combination of generators, as produced by a bracket.
pub type GenCombination = Vec<(Generator, Scalar)>;

/// Source of structure constants. The enveloping algebra straightens words
/// through whichever table it is built with, which lets tests plug in a
/// deliberately broken table.
pub trait BracketTable: Send + Sync {
    fn bracket(&self, g: &Generator, h: &Generator, mode: AlgebraMode) -> GenCombination;
}

/// The bracket relations of the generalized Heisenberg-Virasoro algebra.
///
/// ```text
/// [L(x), L(y)] = (y - x) L(x+y) + δ(x+y,0) (x³ - x)/12 C_L
/// [I(x), I(y)] = y δ(x+y,0) C_I
/// [L(x), I(y)] = y I(x+y) + δ(x+y,0) (x² - x) C_L
/// ```
/// `C_LI` carries no cocycle. In centerless mode every central image is
/// dropped.
#[derive(Clone, Copy, Debug, Default)]
pub struct StandardBracket;

impl BracketTable for StandardBracket {
    fn bracket(&self, g: &Generator, h: &Generator, mode: AlgebraMode) -> GenCombination {
        let mut out = match (g, h) {
            (Generator::L(x), Generator::L(y)) => {
                let mut v = vec![(Generator::L(x + y), y - x)];
                if (x + y).is_zero() {
                    v.push((Generator::CL, (x * x * x - x) * rat(1, 12)));
                }
                v
            }
            (Generator::I(x), Generator::I(y)) => {
                if (x + y).is_zero() {
                    vec![(Generator::CI, y.clone())]
                } else {
                    Vec::new()
                }
            }
            (Generator::L(x), Generator::I(y)) => lx_iy(x, y),
            (Generator::I(y), Generator::L(x)) => lx_iy(x, y)
                .into_iter()
                .map(|(g, c)| (g, -c))
                .collect(),
            _ => Vec::new(),
        };
        if mode == AlgebraMode::Centerless {
            out.retain(|(g, _)| !g.is_central());
        }
        out.retain(|(_, c)| !c.is_zero());
        out
    }
}

fn lx_iy(x: &Scalar, y: &Scalar) -> GenCombination {
    let mut v = vec![(Generator::I(x + y), y.clone())];
    if (x + y).is_zero() {
        v.push((Generator::CL, x * x - x));
    }
    v
}

/// Lie bracket of two generators under the standard relations.
pub fn bracket_generators(g: &Generator, h: &Generator, mode: AlgebraMode) -> Result<GenCombination> {
    g.check_mode(mode)?;
    h.check_mode(mode)?;
    Ok(StandardBracket.bracket(g, h, mode))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pbw_order() {
        let mut gens = vec![
            Generator::l(1),
            Generator::i(2),
            Generator::CLI,
            Generator::L(rat(-1, 2)),
            Generator::CL,
            Generator::i(-3),
            Generator::CI,
        ];
        gens.sort();
        assert_eq!(
            gens,
            vec![
                Generator::CL,
                Generator::CI,
                Generator::CLI,
                Generator::i(-3),
                Generator::i(2),
                Generator::L(rat(-1, 2)),
                Generator::l(1),
            ]
        );
    }

    #[test]
    fn bracket_examples() {
        let b = |g, h, m| bracket_generators(&g, &h, m).unwrap();
        use AlgebraMode::*;
        assert_eq!(b(Generator::l(1), Generator::l(2), Centerless), vec![(Generator::l(3), int(1))]);
        assert!(b(Generator::l(4), Generator::l(4), Full).is_empty());
        assert_eq!(
            b(Generator::l(2), Generator::l(-2), Full),
            vec![(Generator::l(0), int(-4)), (Generator::CL, rat(1, 2))]
        );
        assert_eq!(
            b(Generator::l(2), Generator::i(-2), Full),
            vec![(Generator::i(0), int(-2)), (Generator::CL, int(2))]
        );
        assert!(b(Generator::l(2), Generator::i(-2), Centerless).is_empty());
        assert_eq!(b(Generator::i(3), Generator::i(-3), Full), vec![(Generator::CI, int(-3))]);
    }

    #[test]
    fn centerless_rejects_central_symbols() {
        for g in [Generator::CL, Generator::CI, Generator::CLI, Generator::i(0)] {
            assert!(matches!(
                bracket_generators(&g, &Generator::l(1), AlgebraMode::Centerless),
                Err(AlgebraError::ModeViolation { .. })
            ));
        }
        assert!(bracket_generators(&Generator::i(0), &Generator::l(1), AlgebraMode::Full).is_ok());
    }
}
