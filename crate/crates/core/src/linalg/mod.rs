//! Exact linear algebra over the rationals, the integers and polynomial
//! rings: rank, determinants, minors, Smith normal form and cokernels.

mod conformal;
mod group;
mod matrix;
mod minors;
mod rank;
mod snf;

pub use conformal::{conformal_factor, ConformalFactor};
pub use group::FGAbelianGroup;
pub use matrix::{IntMatrix, Matrix, PolyMatrix, RatMatrix};
pub use minors::{minor_dets, poly_determinant, Combinations, Minor, Minors};
pub use rank::{
    bareiss_rank, clear_denominators, determinant_int, determinant_rational, inverse_rational,
    rank_rational, solve_rational,
};
pub use snf::{cokernel, smith_normal_form, SmithForm};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Integer that serializes as a JSON number when it fits in 64 bits and as a
/// decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigIntJson(pub BigInt);

impl Serialize for BigIntJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BigIntJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            I(i64),
            U(u64),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::I(v) => Ok(BigIntJson(v.into())),
            Repr::U(v) => Ok(BigIntJson(v.into())),
            Repr::S(s) => s
                .parse()
                .map(BigIntJson)
                .map_err(|_| serde::de::Error::custom(format!("bad integer `{s}`"))),
        }
    }
}
