use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::BigIntJson;
use crate::error::{Error, Result};

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk`, stored
/// by invariant factors `d1 | d2 | ... | dk`, all at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    /// Invariant factors equal to 1 are dropped; the rest must be at least 2
    /// and form a divisibility chain.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let torsion: Vec<BigInt> = torsion.into_iter().filter(|d| !d.is_one()).collect();
        if let Some(bad) = torsion.iter().find(|d| **d < BigInt::from(2)) {
            return Err(Error::Invalid(format!("invariant factor {bad} is not at least 2")));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::Invalid("invariant factors must divide each other".into()));
        }
        Ok(FGAbelianGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        FGAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Whether the group has an element of order exactly 2.
    pub fn has_two_torsion(&self) -> bool {
        self.torsion.iter().any(|d| d.is_even())
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    free_rank: usize,
    torsion: Vec<BigIntJson>,
}

impl From<FGAbelianGroup> for GroupRepr {
    fn from(g: FGAbelianGroup) -> Self {
        GroupRepr {
            free_rank: g.free_rank,
            torsion: g.torsion.into_iter().map(BigIntJson).collect(),
        }
    }
}

impl TryFrom<GroupRepr> for FGAbelianGroup {
    type Error = Error;
    fn try_from(r: GroupRepr) -> Result<Self> {
        FGAbelianGroup::new(r.free_rank, r.torsion.into_iter().map(|b| b.0).collect())
    }
}
