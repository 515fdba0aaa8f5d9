//! Dual-variety dimension from the generic Hessian rank, and the local
//! computation behind `rank Q_p = rank II_p + 2` at a smooth point.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hessian::{build_hessian, linear_images};
use crate::linalg::{rank_rational, solve_rational, RatMatrix};
use crate::point::PointQ;
use crate::poly::{Monomial, MultiPoly};
use crate::rational::{rat, Rational};
use crate::sample::SampleConfig;

/// `f` in coordinates `Y_0..Y_N` with `p = [1, 0, …, 0]` and tangent
/// hyperplane `Y_N = 0`, normalized so that
/// `f_adapted = Y_0^{d-1} Y_N + Y_0^{d-2} (g + Y_N L) + Σ_{i≥3} Y_0^{d-i} h_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedForm {
    /// Columns are the new basis in the original coordinates.
    pub transform: RatMatrix,
    pub f_adapted: MultiPoly,
    pub degree: u32,
    /// Coefficient of `Y_0^{d-1} Y_N` before rescaling.
    pub original_c: Rational,
    /// Quadratic in `Y_1..Y_{N-1}`.
    pub g: MultiPoly,
    /// Linear in `Y_1..Y_N`.
    pub l: MultiPoly,
    /// `h_i`, homogeneous of degree `i` in `Y_1..Y_N`, keyed by `i >= 3`.
    pub higher: BTreeMap<u32, MultiPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub a: RatMatrix,
    pub b: Vec<Rational>,
    pub l_n: Rational,
    pub assembled: RatMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankRelationReport {
    #[serde(rename = "rank_Q")]
    pub rank_q: usize,
    #[serde(rename = "rank_A")]
    pub rank_a: usize,
    pub holds: bool,
    pub transform: RatMatrix,
}

/// `dim X* = r - 2` where `r` is the generic rank of the Hessian on `X`.
pub fn dual_dimension(f: &MultiPoly, cfg: SampleConfig) -> Result<usize> {
    let h = build_hessian(f)?;
    if h.degree() < 3 {
        return Err(Error::DegreeTooLow {
            got: h.degree(),
            min: 3,
        });
    }
    let r = h.generic_rank_on_hypersurface(cfg)?.rank;
    r.checked_sub(2).ok_or_else(|| {
        Error::Internal(format!("generic Hessian rank {r} on the hypersurface is below 2"))
    })
}

/// Exact gradient at `p`, after checking `f(p) = 0` and `∇f(p) ≠ 0`.
pub fn smooth_gradient(f: &MultiPoly, p: &PointQ) -> Result<Vec<Rational>> {
    p.require_projective(f.num_vars())?;
    if !f.evaluate(p)?.is_zero() {
        return Err(Error::NotOnHypersurface);
    }
    let grad = f
        .gradient()
        .iter()
        .map(|g| g.evaluate(p))
        .collect::<Result<Vec<_>>>()?;
    if grad.iter().all(Zero::is_zero) {
        return Err(Error::SingularPoint);
    }
    Ok(grad)
}

pub fn adapt_coordinates(f: &MultiPoly, p: &PointQ) -> Result<AdaptedForm> {
    let degree = match f.homogeneous_degree() {
        Some(d) => d,
        None => return Err(Error::NotHomogeneous),
    };
    if degree < 2 {
        return Err(Error::DegreeTooLow { got: degree, min: 2 });
    }
    let grad = smooth_gradient(f, p)?;
    let n1 = f.num_vars();
    let big_n = n1 - 1;
    let j = grad.iter().position(|g| !g.is_zero()).expect("nonzero gradient");

    // p lies in ker df_p by Euler; complete it with kernel vectors e_i - (g_i/g_j) e_j.
    let mut columns: Vec<Vec<Rational>> = vec![p.coords().to_vec()];
    for i in (0..n1).filter(|&i| i != j) {
        if columns.len() == big_n {
            break;
        }
        let mut v = vec![Rational::zero(); n1];
        v[i] = Rational::one();
        v[j] = -(&grad[i] / &grad[j]);
        columns.push(v);
        if rank_rational(&columns_matrix(&columns)) < columns.len() {
            columns.pop();
        }
    }
    let mut e_j = vec![Rational::zero(); n1];
    e_j[j] = Rational::one();
    columns.push(e_j);
    let transform = columns_matrix(&columns);
    if rank_rational(&transform) != n1 {
        return Err(Error::Internal("adapted basis is not invertible".into()));
    }

    let substituted = f.substitute(&linear_images(&transform))?;
    let c_exps = y0_power(n1, degree - 1, Some(big_n));
    let original_c = substituted.coefficient(&c_exps);
    if original_c != grad[j] {
        return Err(Error::Internal("normal coefficient does not match df_p".into()));
    }
    let f_adapted = substituted.scale(&original_c.recip());

    let mut pieces: BTreeMap<u32, MultiPoly> = BTreeMap::new();
    for (m, coef) in f_adapted.terms() {
        let mut e = m.exps().to_vec();
        let i = degree - e[0];
        e[0] = 0;
        let piece = pieces.entry(i).or_insert_with(|| MultiPoly::zero(n1));
        *piece = &*piece + &MultiPoly::monomial(n1, Monomial::new(e), coef.clone());
    }
    if pieces.contains_key(&0) {
        return Err(Error::Internal("adapted form does not vanish at e_0".into()));
    }
    if pieces.get(&1) != Some(&MultiPoly::var(n1, big_n)) {
        return Err(Error::Internal("adapted form has the wrong linear part".into()));
    }
    let quad = pieces.remove(&2).unwrap_or_else(|| MultiPoly::zero(n1));
    let mut g = MultiPoly::zero(n1);
    let mut l = MultiPoly::zero(n1);
    for (m, coef) in quad.terms() {
        let mut e = m.exps().to_vec();
        if e[big_n] == 0 {
            g = &g + &MultiPoly::monomial(n1, Monomial::new(e), coef.clone());
        } else {
            e[big_n] -= 1;
            l = &l + &MultiPoly::monomial(n1, Monomial::new(e), coef.clone());
        }
    }
    let higher = pieces.split_off(&3);

    Ok(AdaptedForm {
        transform,
        f_adapted,
        degree,
        original_c,
        g,
        l,
        higher,
    })
}

impl AdaptedForm {
    pub fn num_vars(&self) -> usize {
        self.f_adapted.num_vars()
    }

    /// Rebuilds `f_adapted` from `c = 1`, `g`, `L` and the `h_i`.
    pub fn reassemble(&self) -> MultiPoly {
        let n1 = self.num_vars();
        let big_n = n1 - 1;
        let d = self.degree;
        let y0 = |k: u32| MultiPoly::monomial(n1, Monomial::new(y0_power(n1, k, None)), rat(1));
        let yn = MultiPoly::var(n1, big_n);
        let mut out = &y0(d - 1) * &yn;
        out = &out + &(&y0(d - 2) * &(&self.g + &(&yn * &self.l)));
        for (&i, h) in &self.higher {
            out = &out + &(&y0(d - i) * h);
        }
        out
    }
}

pub fn block_decompose(af: &AdaptedForm) -> Result<BlockDecomposition> {
    let n1 = af.num_vars();
    let big_n = n1 - 1;
    let inner = big_n.saturating_sub(1);
    let a = RatMatrix::from_fn(inner, inner, |r, s| {
        let mut e = vec![0; n1];
        e[r + 1] += 1;
        e[s + 1] += 1;
        let c = af.g.coefficient(&e);
        if r == s {
            c * rat(2)
        } else {
            c
        }
    });
    let linear_coef = |i: usize| {
        let mut e = vec![0; n1];
        e[i] = 1;
        af.l.coefficient(&e)
    };
    let b: Vec<Rational> = (1..big_n).map(linear_coef).collect();
    let l_n = linear_coef(big_n);
    let dm1 = rat(i64::from(af.degree) - 1);
    let assembled = RatMatrix::from_fn(n1, n1, |r, s| match (r, s) {
        (0, 0) => Rational::zero(),
        (0, s) if s == big_n => dm1.clone(),
        (r, 0) if r == big_n => dm1.clone(),
        (0, _) | (_, 0) => Rational::zero(),
        (r, s) if r == big_n && s == big_n => &l_n * rat(2),
        (r, s) if r == big_n => b[s - 1].clone(),
        (r, s) if s == big_n => b[r - 1].clone(),
        (r, s) => a[(r - 1, s - 1)].clone(),
    });

    let mut e0 = vec![Rational::zero(); n1];
    e0[0] = Rational::one();
    let direct = build_hessian(&af.f_adapted)?.matrix().evaluate(&e0)?;
    if direct != assembled {
        return Err(Error::Internal(
            "block form disagrees with the Hessian of the adapted polynomial".into(),
        ));
    }
    Ok(BlockDecomposition {
        a,
        b,
        l_n,
        assembled,
    })
}

/// Quadratic Taylor coefficients `q_ij` of the implicit solution `x_N(z)` of
/// `f_adapted(1, z, x_N) = 0`. Solves the order-2 system for
/// `x_N = Σ_{i≤j} u_ij z_i z_j` and checks the result against `-A/2`.
pub fn second_order_implicit(af: &AdaptedForm) -> Result<RatMatrix> {
    let n1 = af.num_vars();
    let big_n = n1 - 1;
    let inner = big_n.saturating_sub(1);
    let d = af.degree;

    let a_coef = af.f_adapted.coefficient(&y0_power(n1, d - 1, Some(big_n)));
    if a_coef.is_zero() {
        return Err(Error::Internal("implicit function is degenerate".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..inner)
        .flat_map(|i| (i..inner).map(move |j| (i, j)))
        .collect();
    // In order 2 the only term that sees x_N is a·x_N, so each equation
    // z_i z_j reads a·u_ij + [z_i z_j] f(1, z, 0) = 0.
    let system = RatMatrix::diagonal(&vec![a_coef; pairs.len()]);
    let rhs: Vec<Rational> = pairs
        .iter()
        .map(|&(i, j)| {
            let mut e = vec![0; n1];
            e[0] = d - 2;
            e[i + 1] += 1;
            e[j + 1] += 1;
            -af.f_adapted.coefficient(&e)
        })
        .collect();
    let u = solve_rational(&system, &rhs)?
        .ok_or_else(|| Error::Internal("order-2 system is singular".into()))?;

    let mut q = RatMatrix::zeros(inner, inner);
    for (&(i, j), u_ij) in pairs.iter().zip(&u) {
        if i == j {
            q[(i, i)] = u_ij.clone();
        } else {
            let half = u_ij / rat(2);
            q[(i, j)] = half.clone();
            q[(j, i)] = half;
        }
    }
    let block = block_decompose(af)?;
    if q != block.a.scale(&Rational::new((-1).into(), 2.into())) {
        return Err(Error::Internal("implicit expansion differs from -A/2".into()));
    }
    Ok(q)
}

/// Compares the rank of the original Hessian at `p` with `2 + rank A`.
pub fn rank_relation_check(f: &MultiPoly, p: &PointQ) -> Result<RankRelationReport> {
    let h = build_hessian(f)?;
    if h.degree() < 3 {
        return Err(Error::DegreeTooLow {
            got: h.degree(),
            min: 3,
        });
    }
    let af = adapt_coordinates(f, p)?;
    let block = block_decompose(&af)?;
    let rank_q = h.rank_at(p)?;
    let rank_a = rank_rational(&block.a);
    Ok(RankRelationReport {
        rank_q,
        rank_a,
        holds: rank_q == rank_a + 2 && rank_rational(&block.assembled) == rank_q,
        transform: af.transform,
    })
}

fn columns_matrix(columns: &[Vec<Rational>]) -> RatMatrix {
    let n = columns[0].len();
    RatMatrix::from_fn(n, columns.len(), |i, j| columns[j][i].clone())
}

fn y0_power(n1: usize, k: u32, with_var: Option<usize>) -> Vec<u32> {
    let mut e = vec![0; n1];
    e[0] = k;
    if let Some(i) = with_var {
        e[i] += 1;
    }
    e
}
