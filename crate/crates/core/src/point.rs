use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, rat, Rational};

/// A point of affine space over the rationals, usually a lift of a
/// projective point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointQ {
    #[serde(with = "crate::rational::json::vec")]
    coords: Vec<Rational>,
}

impl PointQ {
    pub fn new(coords: Vec<Rational>) -> Self {
        PointQ { coords }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        PointQ::new(v.iter().map(|&x| rat(x)).collect())
    }

    /// Parses `1,0,-1/2,3` style coordinate lists.
    pub fn parse(text: &str) -> Result<Self> {
        let mut coords = Vec::new();
        let mut offset = 0;
        for piece in text.split(',') {
            let q = parse_rational(piece).ok_or_else(|| Error::Syntax {
                pos: offset,
                msg: format!("bad coordinate `{}`", piece.trim()),
            })?;
            coords.push(q);
            offset += piece.chars().count() + 1;
        }
        Ok(PointQ::new(coords))
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, lambda: &Rational) -> PointQ {
        PointQ::new(self.coords.iter().map(|c| c * lambda).collect())
    }

    pub(crate) fn require_projective(&self, num_vars: usize) -> Result<()> {
        if self.len() != num_vars {
            return Err(Error::Dimension {
                expected: num_vars,
                got: self.len(),
            });
        }
        if self.is_zero() {
            return Err(Error::ZeroPoint);
        }
        Ok(())
    }
}

impl fmt::Display for PointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}
