//! The Hessian quadratic form `x ↦ Q̃_x`, `Q̃_x(v, w) = (D_v D_w F)(x)`, of a
//! homogeneous polynomial, together with its pointwise and generic ranks.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inverse_rational, minor_dets, rank_rational, Minor, PolyMatrix, RatMatrix};
use crate::point::PointQ;
use crate::poly::{Homogeneity, MultiPoly};
use crate::rational::Rational;
use crate::sample::{SampleConfig, Sampler};
use crate::univariate::Univariate;

/// Symmetric matrix of second partials of a homogeneous `f` of degree
/// `d >= 2` on `N + 1` variables. Entries are homogeneous of degree `d - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HessianForm {
    f: MultiPoly,
    hessian: PolyMatrix,
    degree: u32,
}

pub fn build_hessian(f: &MultiPoly) -> Result<HessianForm> {
    HessianForm::new(f)
}

/// Largest size of a nonvanishing minor, with the minor that witnesses it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericRank {
    pub rank: usize,
    /// Maximum rank seen at the random screening points.
    pub screened: usize,
    /// A `rank × rank` minor that is a nonzero polynomial (`None` for rank 0).
    pub certificate: Option<Minor>,
    /// Number of `(rank + 1)`-minors checked to vanish identically.
    pub larger_minors_checked: usize,
}

/// Generic rank on the hypersurface `{f = 0}`, certified by a minor that `f`
/// does not divide. Every larger minor was checked to be divisible by `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypersurfaceRank {
    pub rank: usize,
    pub ambient_rank: usize,
    pub certificate: Minor,
    pub larger_minors_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RankStratification {
    pub ranks: BTreeMap<usize, Vec<PointQ>>,
}

impl RankStratification {
    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn bucket(&self, rank: usize) -> &[PointQ] {
        self.ranks.get(&rank).map_or(&[], Vec::as_slice)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivarianceSample {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivarianceReport {
    /// `c(g) = 1 / c(g⁻¹)`, the weight confirmed symbolically.
    pub weight: Rational,
    pub samples: Vec<EquivarianceSample>,
}

impl EquivarianceReport {
    pub fn all_hold(&self) -> bool {
        self.samples.iter().all(|s| s.holds)
    }
}

impl HessianForm {
    pub fn new(f: &MultiPoly) -> Result<Self> {
        let degree = match f.homogeneity() {
            Homogeneity::Homogeneous(d) => d,
            Homogeneity::Zero | Homogeneity::Inhomogeneous => return Err(Error::NotHomogeneous),
        };
        if degree < 2 {
            return Err(Error::DegreeTooLow { got: degree, min: 2 });
        }
        let n = f.num_vars();
        let grad = f.gradient();
        let mut rows: Vec<Vec<MultiPoly>> = vec![Vec::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                let entry = if j < i {
                    rows[j][i].clone()
                } else {
                    grad[i].differentiate(j)?
                };
                rows[i].push(entry);
            }
        }
        Ok(HessianForm {
            f: f.clone(),
            hessian: PolyMatrix::from_rows(rows)?,
            degree,
        })
    }

    pub fn polynomial(&self) -> &MultiPoly {
        &self.f
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.hessian
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.f.num_vars()
    }

    /// `N`, the dimension of the projective space `P(W)`.
    pub fn ambient_dim(&self) -> usize {
        self.num_vars() - 1
    }

    pub fn evaluate(&self, p: &PointQ) -> Result<RatMatrix> {
        p.require_projective(self.num_vars())?;
        self.hessian.evaluate(p.coords())
    }

    /// Rank of `Q_p`, computed at the given lift.
    pub fn rank_at(&self, p: &PointQ) -> Result<usize> {
        Ok(rank_rational(&self.evaluate(p)?))
    }

    pub fn stratify(&self, points: &[PointQ]) -> Result<RankStratification> {
        let mut out = RankStratification::default();
        for p in points {
            let r = self.rank_at(p)?;
            out.ranks.entry(r).or_default().push(p.clone());
        }
        Ok(out)
    }

    /// Generic rank over all of `W`. Random points give a lower bound and a
    /// candidate minor; the bound is then pushed up until every minor one
    /// size larger vanishes identically.
    pub fn generic_rank_ambient(&self, cfg: SampleConfig) -> GenericRank {
        let n = self.num_vars();
        let mut sampler = Sampler::new(cfg.seed);
        let mut screened = 0;
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        for _ in 0..cfg.budget.max(1) {
            let p = sampler.point(n);
            let m = self.hessian.evaluate(p.coords()).expect("dimension matches");
            let (rows, cols) = nonsingular_block(&m);
            if rows.len() > screened || best.is_none() {
                screened = rows.len();
                best = Some((rows, cols));
            }
        }
        let mut rank = screened;
        let mut certificate = best.and_then(|(rows, cols)| {
            (!rows.is_empty()).then(|| {
                let det = crate::linalg::poly_determinant(&self.hessian.submatrix(&rows, &cols))
                    .expect("square block");
                debug_assert!(!det.is_zero());
                Minor { rows, cols, det }
            })
        });
        let mut checked = 0;
        while rank < n {
            checked = 0;
            let mut bigger = None;
            for minor in minor_dets(&self.hessian, rank + 1).expect("size in range") {
                checked += 1;
                if !minor.det.is_zero() {
                    bigger = Some(minor);
                    break;
                }
            }
            match bigger {
                Some(minor) => {
                    rank += 1;
                    certificate = Some(minor);
                }
                None => break,
            }
        }
        if rank == n {
            checked = 0;
        }
        GenericRank {
            rank,
            screened,
            certificate,
            larger_minors_checked: checked,
        }
    }

    /// Generic rank of `Q_p` for `p` on `X = {f = 0}`, assuming `f` is
    /// irreducible: the largest `k` with a `k × k` minor not divisible by `f`.
    pub fn generic_rank_on_hypersurface(&self, cfg: SampleConfig) -> Result<HypersurfaceRank> {
        let ambient = self.generic_rank_ambient(cfg).rank;
        let mut checked = 0;
        for k in (1..=ambient).rev() {
            let mut count = 0;
            for minor in minor_dets(&self.hessian, k)? {
                count += 1;
                if minor.det.is_zero() {
                    continue;
                }
                if MultiPoly::divides(&self.f, &minor.det)?.is_none() {
                    return Ok(HypersurfaceRank {
                        rank: k,
                        ambient_rank: ambient,
                        certificate: minor,
                        larger_minors_checked: checked,
                    });
                }
            }
            checked = count;
        }
        let certificate = minor_dets(&self.hessian, 0)?.next().expect("empty minor");
        Ok(HypersurfaceRank {
            rank: 0,
            ambient_rank: ambient,
            certificate,
            larger_minors_checked: checked,
        })
    }

    /// Heuristic reducedness test: restricts `f` to random lines and looks
    /// for repeated roots. Returns a warning when every line tried has one,
    /// which happens for every line when `f` has a repeated factor.
    pub fn reducedness_warning(&self, cfg: SampleConfig) -> Option<String> {
        let n = self.num_vars();
        let mut sampler = Sampler::new(cfg.seed ^ 0x5eed_11de);
        let tries = cfg.budget.max(2);
        for _ in 0..tries {
            let a = sampler.point_with_bound(n, 100);
            let b = sampler.point_with_bound(n, 100);
            let line: Vec<MultiPoly> = (0..n)
                .map(|i| {
                    MultiPoly::from_terms(
                        1,
                        [
                            (a.coords()[i].clone(), vec![0]),
                            (b.coords()[i].clone(), vec![1]),
                        ],
                    )
                })
                .collect();
            let restricted = self.f.substitute(&line).expect("line has one variable");
            let coeffs: Vec<Rational> = (0..=self.degree)
                .map(|e| restricted.coefficient(&[e]))
                .collect();
            let u = Univariate::new(coeffs);
            if u.degree().is_none_or(|d| d == 0) {
                continue;
            }
            if u.gcd(&u.derivative()).degree() == Some(0) {
                return None;
            }
        }
        Some(format!(
            "polynomial looks non-reduced: restrictions to {tries} random lines all have repeated roots"
        ))
    }

    /// Checks `Q̃_{gx}(v, w) = c(g⁻¹) Q̃_x(g⁻¹v, g⁻¹w)` on sample triples, after
    /// verifying symbolically that `g · F = c(g) F` where `(g · F)(x) = F(g⁻¹x)`.
    pub fn equivariance_check(
        &self,
        g: &RatMatrix,
        c_of_g_inv: &Rational,
        samples: &[(PointQ, PointQ, PointQ)],
    ) -> Result<EquivarianceReport> {
        let n = self.num_vars();
        if !g.is_square() {
            return Err(Error::NotSquare {
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        if g.rows() != n {
            return Err(Error::Dimension {
                expected: n,
                got: g.rows(),
            });
        }
        if c_of_g_inv.is_zero() {
            return Err(Error::Invalid("character value must be nonzero".into()));
        }
        let g_inv = inverse_rational(g)?.ok_or(Error::Singular)?;
        let weight = c_of_g_inv.recip();
        let pulled = self.f.substitute(&linear_images(&g_inv))?;
        if pulled != self.f.scale(&weight) {
            return Err(Error::NotWeightVector);
        }

        let mut out = Vec::with_capacity(samples.len());
        for (x, v, w) in samples {
            for p in [x, v, w] {
                if p.len() != n {
                    return Err(Error::Dimension {
                        expected: n,
                        got: p.len(),
                    });
                }
            }
            let gx = apply(g, x.coords());
            let lhs = bilinear(&self.hessian.evaluate(&gx)?, v.coords(), w.coords());
            let at_x = self.hessian.evaluate(x.coords())?;
            let rhs = c_of_g_inv
                * bilinear(&at_x, &apply(&g_inv, v.coords()), &apply(&g_inv, w.coords()));
            out.push(EquivarianceSample {
                holds: lhs == rhs,
                lhs,
                rhs,
            });
        }
        Ok(EquivarianceReport {
            weight,
            samples: out,
        })
    }
}

/// Images `X_i ↦ Σ_j t_ij X_j` of the coordinate functions under `t`, for
/// use with [`MultiPoly::substitute`].
pub fn linear_images(t: &RatMatrix) -> Vec<MultiPoly> {
    let n = t.cols();
    (0..t.rows())
        .map(|i| {
            MultiPoly::from_terms(
                n,
                (0..n).map(|j| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    (t[(i, j)].clone(), e)
                }),
            )
        })
        .collect()
}

pub(crate) fn apply(m: &RatMatrix, x: &[Rational]) -> Vec<Rational> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(x)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

fn bilinear(m: &RatMatrix, v: &[Rational], w: &[Rational]) -> Rational {
    v.iter()
        .zip(apply(m, w))
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// Row and column indices of a maximal nonsingular square block, chosen
/// greedily in index order.
fn nonsingular_block(m: &RatMatrix) -> (Vec<usize>, Vec<usize>) {
    let mut rows = Vec::new();
    for i in 0..m.rows() {
        let mut trial = rows.clone();
        trial.push(i);
        let all_cols: Vec<usize> = (0..m.cols()).collect();
        if rank_rational(&m.submatrix(&trial, &all_cols)) == trial.len() {
            rows = trial;
        }
    }
    let mut cols = Vec::new();
    for j in 0..m.cols() {
        let mut trial = cols.clone();
        trial.push(j);
        if rank_rational(&m.submatrix(&rows, &trial)) == trial.len() {
            cols = trial;
        }
    }
    debug_assert_eq!(rows.len(), cols.len());
    (rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::rational::{rat, ratio};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn quartic() -> (MultiPoly, Vec<String>) {
        let vars = names(&["w0", "w1", "w2", "w3"]);
        let f = parse_poly(
            "w0^2*w3^2 - 6*w0*w1*w2*w3 + 4*w0*w2^3 + 4*w1^3*w3 - 3*w1^2*w2^2",
            &vars,
        )
        .unwrap();
        (f, vars)
    }

    fn fermat() -> MultiPoly {
        parse_poly(
            "x0^3 + x1^3 + x2^3 + x3^3",
            &names(&["x0", "x1", "x2", "x3"]),
        )
        .unwrap()
    }

    #[test]
    fn fermat_hessian_is_diagonal() {
        let vars = names(&["x0", "x1", "x2", "x3"]);
        let h = build_hessian(&fermat()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j {
                    parse_poly(&format!("6*x{i}"), &vars).unwrap()
                } else {
                    MultiPoly::zero(4)
                };
                assert_eq!(h.matrix()[(i, j)], expected);
            }
        }
        assert_eq!(h.ambient_dim(), 3);
    }

    #[test]
    fn quartic_entries() {
        let (f, vars) = quartic();
        let h = build_hessian(&f).unwrap();
        assert_eq!(h.matrix()[(3, 3)], parse_poly("2*w0^2", &vars).unwrap());
        assert_eq!(
            h.matrix()[(0, 3)],
            parse_poly("4*w0*w3 - 6*w1*w2", &vars).unwrap()
        );
        assert!(h.matrix().is_symmetric());
    }

    #[test]
    fn quadric_and_errors() {
        let vars = names(&["x0", "x1"]);
        let h = build_hessian(&parse_poly("x0*x1", &vars).unwrap()).unwrap();
        assert_eq!(
            h.evaluate(&PointQ::from_ints(&[1, 0])).unwrap(),
            RatMatrix::from_ints(&[vec![0, 1], vec![1, 0]])
        );
        assert_eq!(
            build_hessian(&parse_poly("x0 + x1^2", &vars).unwrap()),
            Err(Error::NotHomogeneous)
        );
        assert_eq!(
            build_hessian(&parse_poly("x0 + x1", &vars).unwrap()),
            Err(Error::DegreeTooLow { got: 1, min: 2 })
        );
        assert_eq!(build_hessian(&MultiPoly::zero(2)), Err(Error::NotHomogeneous));
    }

    #[test]
    fn pointwise_ranks() {
        let (f, _) = quartic();
        let h = build_hessian(&f).unwrap();
        assert_eq!(h.rank_at(&PointQ::from_ints(&[1, 0, 0, 0])).unwrap(), 1);
        assert_eq!(h.rank_at(&PointQ::from_ints(&[0, 1, 0, 0])).unwrap(), 3);
        let at_q1 = h.evaluate(&PointQ::from_ints(&[0, 1, 0, 0])).unwrap();
        assert_eq!(at_q1[(1, 3)], rat(12));
        assert_eq!(at_q1[(2, 2)], rat(-6));
        let hf = build_hessian(&fermat()).unwrap();
        assert_eq!(hf.rank_at(&PointQ::from_ints(&[1, -1, 0, 0])).unwrap(), 2);
        assert_eq!(
            hf.rank_at(&PointQ::from_ints(&[0, 0, 0, 0])),
            Err(Error::ZeroPoint)
        );
    }

    #[test]
    fn ambient_generic_ranks() {
        let cfg = SampleConfig::default();
        let hf = build_hessian(&fermat()).unwrap();
        let g = hf.generic_rank_ambient(cfg);
        assert_eq!(g.rank, 4);
        let vars = names(&["x0", "x1", "x2", "x3"]);
        assert_eq!(
            g.certificate.unwrap().det,
            parse_poly("1296*x0*x1*x2*x3", &vars).unwrap()
        );

        let cube = parse_poly("x0^3", &names(&["x0", "x1", "x2"])).unwrap();
        let g = build_hessian(&cube).unwrap().generic_rank_ambient(cfg);
        assert_eq!(g.rank, 1);
        assert_eq!(g.larger_minors_checked, 9);

        let (f, _) = quartic();
        let g = build_hessian(&f).unwrap().generic_rank_ambient(cfg);
        assert_eq!(g.rank, 4);
        assert_eq!(g.certificate.unwrap().det.total_degree(), Some(8));
    }

    #[test]
    fn hypersurface_generic_ranks() {
        let cfg = SampleConfig::default();
        let (f, _) = quartic();
        let r = build_hessian(&f).unwrap().generic_rank_on_hypersurface(cfg).unwrap();
        assert_eq!((r.rank, r.ambient_rank), (3, 4));
        assert!(MultiPoly::divides(&f, &r.certificate.det).unwrap().is_none());

        let r = build_hessian(&fermat())
            .unwrap()
            .generic_rank_on_hypersurface(cfg)
            .unwrap();
        assert_eq!(r.rank, 4);

        let cube = parse_poly("x0^3", &names(&["x0", "x1"])).unwrap();
        let h = build_hessian(&cube).unwrap();
        assert_eq!(h.generic_rank_on_hypersurface(cfg).unwrap().rank, 1);
        assert!(h.reducedness_warning(cfg).is_some());
        assert!(build_hessian(&f).unwrap().reducedness_warning(cfg).is_none());
    }

    #[test]
    fn stratification() {
        let (f, _) = quartic();
        let h = build_hessian(&f).unwrap();
        let qs: Vec<PointQ> = (0..4)
            .map(|i| {
                let mut v = [0; 4];
                v[i] = 1;
                PointQ::from_ints(&v)
            })
            .collect();
        let s = h.stratify(&qs).unwrap();
        assert_eq!(s.bucket(1), &[qs[0].clone(), qs[3].clone()]);
        assert_eq!(s.bucket(3), &[qs[1].clone(), qs[2].clone()]);
        assert_eq!(s.ranks.len(), 2);
        assert!(h.stratify(&[]).unwrap().is_empty());

        let hf = build_hessian(&fermat()).unwrap();
        let s = hf
            .stratify(&[PointQ::from_ints(&[1, -1, 0, 0]), PointQ::from_ints(&[1, 1, 1, 1])])
            .unwrap();
        assert_eq!(s.bucket(2), &[PointQ::from_ints(&[1, -1, 0, 0])]);
        assert_eq!(s.bucket(4), &[PointQ::from_ints(&[1, 1, 1, 1])]);
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"ranks":{"2":[[1,-1,0,0]],"4":[[1,1,1,1]]}}"#
        );
    }

    fn samples(seed: u64, n: usize, count: usize) -> Vec<(PointQ, PointQ, PointQ)> {
        let mut s = Sampler::new(seed);
        (0..count)
            .map(|_| {
                (
                    s.point_with_bound(n, 50),
                    s.point_with_bound(n, 50),
                    s.point_with_bound(n, 50),
                )
            })
            .collect()
    }

    #[test]
    fn torus_equivariance() {
        let (f, _) = quartic();
        let h = build_hessian(&f).unwrap();
        let t = rat(2);
        let g = RatMatrix::diagonal(&[
            &t * &t * &t,
            t.clone(),
            t.recip(),
            (&t * &t * &t).recip(),
        ]);
        let report = h.equivariance_check(&g, &rat(1), &samples(7, 4, 5)).unwrap();
        assert_eq!(report.samples.len(), 5);
        assert!(report.all_hold());
    }

    #[test]
    fn identity_equivariance() {
        let h = build_hessian(&fermat()).unwrap();
        let report = h
            .equivariance_check(&RatMatrix::identity(4), &rat(1), &samples(1, 4, 3))
            .unwrap();
        assert!(report.all_hold());
    }

    #[test]
    fn scaling_breaks_weight_precondition() {
        let (f, _) = quartic();
        let h = build_hessian(&f).unwrap();
        let g = RatMatrix::identity(4).scale(&rat(2));
        assert_eq!(
            h.equivariance_check(&g, &rat(1), &samples(3, 4, 2)),
            Err(Error::NotWeightVector)
        );
        // with the matching character the identity holds
        let report = h.equivariance_check(&g, &rat(16), &samples(3, 4, 2)).unwrap();
        assert_eq!(report.weight, ratio(1, 16));
        assert!(report.all_hold());
        assert_eq!(
            h.equivariance_check(&RatMatrix::zeros(4, 4), &rat(1), &[]),
            Err(Error::Singular)
        );
    }
}
