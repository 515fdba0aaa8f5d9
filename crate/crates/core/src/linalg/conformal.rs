use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::RatMatrix;
use super::rank::determinant_rational;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Scaling factor of a conformal orthogonal matrix with respect to the split
/// form `(e_i, e_{r+1-j}) = δ_ij`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConformalFactor {
    #[serde(with = "crate::rational::json")]
    pub tau: Rational,
    #[serde(with = "crate::rational::json")]
    pub det: Rational,
    /// `det / tau^(r/2)` for even `r`: +1 on the identity component, -1 on
    /// the other one. Absent for odd `r`.
    pub component_sign: Option<i8>,
}

/// Returns `τ` with `aᵀ J a = τ J` when such a scalar exists, checking
/// `det(a)^2 = τ^r` on the way.
pub fn conformal_factor(a: &RatMatrix, r: usize) -> Result<Option<ConformalFactor>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != r {
        return Err(Error::Dimension {
            expected: r,
            got: a.rows(),
        });
    }
    if r == 0 {
        return Ok(None);
    }
    let j = RatMatrix::anti_identity(r);
    let gram = a.transpose().mul(&j).mul(a);
    let tau = gram[(0, r - 1)].clone();
    if tau.is_zero() || gram != j.scale(&tau) {
        return Ok(None);
    }
    let det = determinant_rational(a)?;
    let exp = i32::try_from(r).map_err(|_| Error::Invalid("rank too large".into()))?;
    if &det * &det != num_traits::pow::Pow::pow(&tau, exp) {
        return Err(Error::Internal(format!(
            "det^2 = tau^r fails for tau = {tau}, det = {det}"
        )));
    }
    let component_sign = if r.is_even() {
        let s = &det / num_traits::pow::Pow::pow(&tau, exp / 2);
        if s.is_one() {
            Some(1)
        } else if s == -Rational::one() {
            Some(-1)
        } else {
            return Err(Error::Internal(format!("component sign {s} is not ±1")));
        }
    } else {
        None
    };
    Ok(Some(ConformalFactor {
        tau,
        det,
        component_sign,
    }))
}
