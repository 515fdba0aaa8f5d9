//! Homology of quadric bundles as integer bookkeeping.
//!
//! `Q₀` is a smooth quadric of rank `r` (dimension `r - 2`) and `n = ⌊r/2⌋`.
//! Homology of a quadric bundle `Q → X` and of the projective bundle
//! `P(V) → X` is modelled by Leray–Hirsch: fiber class of degree `2i`
//! tensored with `H_*(X)`, where `H_*(X)` is free with the given Betti numbers.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cokernel, smith_normal_form, FGAbelianGroup, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(r: usize) -> Self {
        if r.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisLabel {
    pub label: String,
    /// Cohomological degree.
    pub degree: usize,
}

/// Additive basis and recorded relations of `H*(Q₀)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadricFiberData {
    pub r: usize,
    pub n: usize,
    pub parity: Parity,
    pub basis_labels: Vec<BasisLabel>,
    pub relations: Vec<String>,
}

fn h_power(i: usize) -> String {
    match i {
        0 => String::new(),
        1 => "h".into(),
        _ => format!("h^{i}"),
    }
}

fn or_one(s: String) -> String {
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

impl QuadricFiberData {
    pub fn new(r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::Invalid(format!("quadric rank must be at least 2, got {r}")));
        }
        let n = r / 2;
        let parity = Parity::of(r);
        let e_degree = 2 * (r - n - 1);
        let mut basis_labels: Vec<BasisLabel> = (0..n)
            .map(|i| BasisLabel {
                label: or_one(h_power(i)),
                degree: 2 * i,
            })
            .collect();
        basis_labels.extend((0..n).map(|i| BasisLabel {
            label: format!("{}e", h_power(i)),
            degree: e_degree + 2 * i,
        }));
        basis_labels.sort_by_key(|b| b.degree);
        let relations = match parity {
            Parity::Even => vec![
                format!("{} = e + f", or_one(h_power(n - 1))),
                "he = hf".to_string(),
            ],
            Parity::Odd => vec![format!("{} = 2e", h_power(n))],
        };
        Ok(QuadricFiberData {
            r,
            n,
            parity,
            basis_labels,
            relations,
        })
    }

    pub fn dim(&self) -> usize {
        self.r - 2
    }

    /// Number of basis labels in cohomological degree `2i`.
    pub fn labels_in_degree(&self, i: usize) -> usize {
        self.basis_labels.iter().filter(|b| b.degree == 2 * i).count()
    }
}

/// Rank of `H^{2i}(Q₀)` for a smooth quadric of rank `r >= 2`.
pub fn quadric_betti(r: usize, i: usize) -> usize {
    if r < 2 || i > r - 2 {
        return 0;
    }
    let n = r / 2;
    match Parity::of(r) {
        Parity::Even if i == n - 1 => 2,
        _ => 1,
    }
}

/// Fiber-level Gysin map from the middle homology of `P^{r-1}` to that of the
/// quadric `Q_x`, as an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberGysin {
    pub r: usize,
    pub n: usize,
    pub parity: Parity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
    /// Index of the image in the rank-one target; `None` when the target has
    /// larger rank than the source.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image_index: Option<u32>,
    pub source_rank: usize,
    pub target_rank: usize,
    pub matrix: IntMatrix,
    pub cokernel: FGAbelianGroup,
}

pub fn fiber_gysin_index(r: usize) -> Result<FiberGysin> {
    if r < 3 {
        return Err(Error::Invalid(format!("fiber Gysin map needs r >= 3, got {r}")));
    }
    let n = r / 2;
    let parity = Parity::of(r);
    let (relation, image_index, matrix) = match parity {
        Parity::Odd => {
            let rel = if n == 1 {
                "h = 2e".to_string()
            } else {
                format!("h^{n} = 2e")
            };
            (Some(rel), Some(2), IntMatrix::from_i64(&[vec![2]]))
        }
        // the hyperplane class goes to h^{n-1} = e + f
        Parity::Even => (None, None, IntMatrix::from_i64(&[vec![1], vec![1]])),
    };
    Ok(FiberGysin {
        r,
        n,
        parity,
        relation,
        image_index,
        source_rank: matrix.cols(),
        target_rank: matrix.rows(),
        cokernel: cokernel(&matrix),
        matrix,
    })
}

/// Rational Betti numbers `b[0..=2d]` of a `d`-dimensional base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct BettiVector {
    b: Vec<u64>,
}

impl TryFrom<Vec<u64>> for BettiVector {
    type Error = Error;
    fn try_from(b: Vec<u64>) -> Result<Self> {
        BettiVector::new(b)
    }
}

impl From<BettiVector> for Vec<u64> {
    fn from(b: BettiVector) -> Self {
        b.b
    }
}

impl BettiVector {
    /// Requires odd length `2d + 1`.
    pub fn new(b: Vec<u64>) -> Result<Self> {
        if b.len().is_multiple_of(2) {
            return Err(Error::Betti(format!(
                "expected 2d+1 entries, got {}",
                b.len()
            )));
        }
        Ok(BettiVector { b })
    }

    /// `[0, …, 0, 1]`: only the fundamental class is recorded.
    pub fn top_only(d: usize) -> Self {
        let mut b = vec![0; 2 * d + 1];
        b[2 * d] = 1;
        BettiVector { b }
    }

    /// Betti numbers of `P^d`.
    pub fn projective_space(d: usize) -> Self {
        BettiVector {
            b: (0..=2 * d).map(|i| u64::from(i % 2 == 0)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        (self.b.len() - 1) / 2
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.b
    }

    /// `b_k`, zero outside `0..=2d`.
    pub fn get(&self, k: i64) -> u64 {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.b.get(k).copied())
            .unwrap_or(0)
    }

    pub fn top(&self) -> u64 {
        self.b[self.b.len() - 1]
    }

    /// Checks `d` against the length and `b_{2d} >= 1`.
    pub fn require_for_dim(&self, d: usize) -> Result<()> {
        if self.dim() != d {
            return Err(Error::Betti(format!(
                "{} entries do not describe a base of dimension {d}",
                self.b.len()
            )));
        }
        if self.top() == 0 {
            return Err(Error::Betti(format!("b_{} must be at least 1", 2 * d)));
        }
        Ok(())
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.b.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `dim H_k(Q; Q)` for a quadric bundle of rank `r` over a base with Betti
/// numbers `b`.
pub fn lh_quadric_dim(b: &BettiVector, r: usize, k: usize) -> u64 {
    if r < 2 {
        return 0;
    }
    (0..=r - 2)
        .map(|i| quadric_betti(r, i) as u64 * b.get(k as i64 - 2 * i as i64))
        .sum()
}

/// `dim H_k(P(V); Q)` for a `P^m`-bundle.
pub fn lh_projective_dim(b: &BettiVector, m: usize, k: usize) -> u64 {
    (0..=m).map(|i| b.get(k as i64 - 2 * i as i64)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonsurjectivityCertificate {
    pub r: usize,
    pub n: usize,
    pub d: usize,
    /// Homological degree of the source, `2d + 2n`.
    pub source_degree: usize,
    pub dim_source: u64,
    pub dim_target: u64,
    pub gap: u64,
    pub surjection_impossible: bool,
    /// Absent for `r = 2`, where the fiber is a pair of points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber: Option<FiberGysin>,
}

/// Dimension count showing `j*: H_{2n+2d}(P(V)) → H_{2n+2d-2}(Q)` is not
/// onto when `r = 2n`.
pub fn nonsurjectivity_certificate(
    b: &BettiVector,
    r: usize,
    d: usize,
) -> Result<NonsurjectivityCertificate> {
    if Parity::of(r) == Parity::Odd {
        return Err(Error::Invalid(
            "odd rank: use the torsion certificate instead".into(),
        ));
    }
    if r < 2 {
        return Err(Error::Invalid(format!("even rank must be at least 2, got {r}")));
    }
    b.require_for_dim(d)?;
    let n = r / 2;
    let k = 2 * d + 2 * n;
    let dim_source = lh_projective_dim(b, r - 1, k);
    let dim_target = lh_quadric_dim(b, r, k - 2);
    Ok(NonsurjectivityCertificate {
        r,
        n,
        d,
        source_degree: k,
        dim_source,
        dim_target,
        gap: dim_target.saturating_sub(dim_source),
        surjection_impossible: dim_source < dim_target,
        fiber: if r >= 4 { Some(fiber_gysin_index(r)?) } else { None },
    })
}

/// Coordinates of a class under `Φ: H_*(Q) → H_*(X) ⊗ H_*(Q_x)`: slot `q`
/// holds the `H_*(X)` component paired with `d_q`, `0 <= q < 2n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhiCoordinates {
    pub slots: Vec<Vec<i64>>,
}

impl PhiCoordinates {
    pub fn zero(shape: &[usize]) -> Self {
        PhiCoordinates {
            slots: shape.iter().map(|&len| vec![0; len]).collect(),
        }
    }

    /// Slot lengths for a class of degree `k` in an odd-rank quadric bundle
    /// with `2n` fiber classes: slot `q` lives in `H_{k-2q}(X)`.
    pub fn model_shape(b: &BettiVector, n: usize, k: usize) -> Vec<usize> {
        (0..2 * n)
            .map(|q| b.get(k as i64 - 2 * q as i64) as usize)
            .collect()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.slots.iter().map(Vec::len).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().flatten().all(|&x| x == 0)
    }

    fn scaled_slots(&self, factor: impl Fn(usize) -> i64) -> Result<PhiCoordinates> {
        let slots = self
            .slots
            .iter()
            .enumerate()
            .map(|(q, v)| {
                v.iter()
                    .map(|&x| {
                        x.checked_mul(factor(q))
                            .ok_or_else(|| Error::Invalid("coordinate overflow".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PhiCoordinates { slots })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiReplay {
    pub n: usize,
    pub a: PhiCoordinates,
    /// `π_*(β_q ∩ b)` for `q = 1..=2n`, stored at index `q - 1`.
    pub b: PhiCoordinates,
    /// `Φ(2 j* b)`.
    pub image: PhiCoordinates,
    pub four_a: PhiCoordinates,
    pub check: bool,
    pub conclusion: String,
}

/// Builds `b` from `a` by the forced choice and checks `Φ(2 j* b) = 4a`,
/// hence `4a ∈ Im j*`.
pub fn phi_torsion_replay(a: &PhiCoordinates, n: usize) -> Result<PhiReplay> {
    if a.slots.len() != 2 * n {
        return Err(Error::Dimension {
            expected: 2 * n,
            got: a.slots.len(),
        });
    }
    // slot index s = q - 1
    let b = a.scaled_slots(|s| if s < n { 1 } else { 2 })?;
    let image = b.scaled_slots(|s| if s < n { 4 } else { 2 })?;
    let four_a = a.scaled_slots(|_| 4)?;
    let check = image == four_a;
    Ok(PhiReplay {
        n,
        a: a.clone(),
        b,
        image,
        four_a,
        check,
        conclusion: if check {
            "4a is in the image of j*".into()
        } else {
            "replay failed".into()
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerticalMap {
    pub description: String,
    pub matrix: IntMatrix,
    pub snf_diagonal: Vec<crate::linalg::BigIntJson>,
    pub cokernel: FGAbelianGroup,
    pub surjective: bool,
}

impl VerticalMap {
    fn restriction(description: String, slot_dims: &[u64], fiber_index: usize) -> Self {
        let total: u64 = slot_dims.iter().sum();
        let offset: u64 = slot_dims[..fiber_index].iter().sum();
        let mut row = vec![0; total as usize];
        row[offset as usize] = 1;
        let matrix = IntMatrix::from_i64(&[row]);
        let snf = smith_normal_form(&matrix);
        let coker = cokernel(&matrix);
        VerticalMap {
            description,
            snf_diagonal: snf.diagonal().into_iter().map(crate::linalg::BigIntJson).collect(),
            surjective: coker.is_trivial(),
            cokernel: coker,
            matrix,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionCertificate {
    pub r: usize,
    pub n: usize,
    pub d: usize,
    pub fiber: FiberGysin,
    pub bottom_snf_diagonal: Vec<crate::linalg::BigIntJson>,
    pub vertical_projective: VerticalMap,
    pub vertical_quadric: VerticalMap,
    pub replay: PhiReplay,
    pub four_a_in_image: bool,
    pub element_order: u32,
    pub statement: String,
}

impl TorsionCertificate {
    pub fn holds(&self) -> bool {
        self.fiber.cokernel.has_two_torsion()
            && self.vertical_projective.surjective
            && self.vertical_quadric.surjective
            && self.four_a_in_image
            && self.element_order == 2
    }
}

/// For `r = 2n + 1`: `H_{2n+2d-2}(Q) / Im j*` has an element of order 2.
pub fn torsion_certificate(b: &BettiVector, r: usize, d: usize) -> Result<TorsionCertificate> {
    if Parity::of(r) == Parity::Even {
        return Err(Error::Invalid(
            "even rank: use the nonsurjectivity certificate instead".into(),
        ));
    }
    let fiber = fiber_gysin_index(r)?;
    b.require_for_dim(d)?;
    let n = r / 2;
    let k_source = 2 * n + 2 * d;
    let k_target = k_source - 2;

    // slot i of each Leray–Hirsch sum pairs H_{k-2i}(X) with the fiber class of degree 2i
    let proj_dims: Vec<u64> = (0..r).map(|i| b.get(k_source as i64 - 2 * i as i64)).collect();
    let quad_dims: Vec<u64> = (0..=r - 2)
        .map(|i| quadric_betti(r, i) as u64 * b.get(k_target as i64 - 2 * i as i64))
        .collect();
    let vertical_projective = VerticalMap::restriction(
        format!("H_{k_source}(P(V)) -> H_{}(P(V_x))", 2 * n),
        &proj_dims,
        n,
    );
    let vertical_quadric = VerticalMap::restriction(
        format!("H_{k_target}(Q) -> H_{}(Q_x)", 2 * n - 2),
        &quad_dims,
        n - 1,
    );

    // a restricts to the generator of H_{2n-2}(Q_x) = Z d_{n-1}
    let shape = PhiCoordinates::model_shape(b, n, k_target);
    let mut a = PhiCoordinates::zero(&shape);
    a.slots[n - 1][0] = 1;
    let replay = phi_torsion_replay(&a, n)?;
    let bottom = smith_normal_form(&fiber.matrix);

    Ok(TorsionCertificate {
        r,
        n,
        d,
        bottom_snf_diagonal: bottom.diagonal().into_iter().map(crate::linalg::BigIntJson).collect(),
        four_a_in_image: replay.check,
        element_order: if fiber.cokernel.torsion() == [BigInt::from(2)] {
            2
        } else {
            0
        },
        statement: format!("H_{k_target}(Q)/Im j* contains an element of order 2"),
        fiber,
        vertical_projective,
        vertical_quadric,
        replay,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn betti_tables() {
        assert_eq!(quadric_betti(6, 2), 2);
        assert_eq!(quadric_betti(5, 1), 1);
        assert_eq!(quadric_betti(2, 0), 2);
        assert_eq!(quadric_betti(6, 5), 0);
        assert_eq!(quadric_betti(1, 0), 0);
    }

    #[test]
    fn fiber_labels() {
        let even = QuadricFiberData::new(6).unwrap();
        let labels: Vec<&str> = even.basis_labels.iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, ["1", "h", "h^2", "e", "he", "h^2e"]);
        assert_eq!(even.relations, ["h^2 = e + f", "he = hf"]);
        let odd = QuadricFiberData::new(5).unwrap();
        assert_eq!(odd.relations, ["h^2 = 2e"]);
        assert_eq!(odd.basis_labels.last().unwrap().degree, 6);
        for r in 2..12 {
            let data = QuadricFiberData::new(r).unwrap();
            for i in 0..=r {
                assert_eq!(data.labels_in_degree(i), quadric_betti(r, i), "r={r} i={i}");
            }
        }
        assert!(QuadricFiberData::new(1).is_err());
    }

    #[test]
    fn fiber_gysin() {
        let g = fiber_gysin_index(5).unwrap();
        assert_eq!(g.relation.as_deref(), Some("h^2 = 2e"));
        assert_eq!(g.image_index, Some(2));
        assert_eq!(g.cokernel.to_string(), "Z/2");
        let g = fiber_gysin_index(3).unwrap();
        assert_eq!(g.relation.as_deref(), Some("h = 2e"));
        let g = fiber_gysin_index(6).unwrap();
        assert_eq!((g.source_rank, g.target_rank, g.image_index), (1, 2, None));
        assert_eq!(g.cokernel, FGAbelianGroup::new(1, vec![]).unwrap());
        assert!(fiber_gysin_index(2).is_err());
    }

    #[test]
    fn leray_hirsch_counts() {
        let point = BettiVector::top_only(0);
        let p2 = BettiVector::projective_space(2);
        assert_eq!(lh_quadric_dim(&point, 6, 4), 2);
        assert_eq!(lh_quadric_dim(&p2, 4, 6), 3);
        assert_eq!(lh_quadric_dim(&p2, 4, 2 * 2 + 2 * 2 + 1), 0);
        assert_eq!(lh_quadric_dim(&p2, 4, 100), 0);
        assert_eq!(lh_projective_dim(&p2, 3, 8), 2);
        assert_eq!(lh_projective_dim(&point, 3, 4), 1);
        assert_eq!(lh_projective_dim(&p2, 3, 7), 0);
    }

    #[test]
    fn nonsurjectivity() {
        let c = nonsurjectivity_certificate(&BettiVector::projective_space(2), 4, 2).unwrap();
        assert_eq!((c.dim_source, c.dim_target, c.gap), (2, 3, 1));
        assert!(c.surjection_impossible);
        let c = nonsurjectivity_certificate(&BettiVector::top_only(0), 4, 0).unwrap();
        assert_eq!((c.dim_source, c.dim_target), (1, 2));
        let c = nonsurjectivity_certificate(&BettiVector::top_only(3), 8, 3).unwrap();
        assert_eq!((c.dim_source, c.dim_target), (1, 2));
        let c = nonsurjectivity_certificate(&BettiVector::projective_space(1), 2, 1).unwrap();
        assert_eq!((c.dim_source, c.dim_target, c.gap), (1, 2, 1));
        assert!(c.fiber.is_none());
        assert!(nonsurjectivity_certificate(&BettiVector::top_only(1), 5, 1).is_err());
        assert!(matches!(
            nonsurjectivity_certificate(&BettiVector::top_only(1), 4, 2),
            Err(Error::Betti(_))
        ));
    }

    #[test]
    fn phi_replay_examples() {
        let a = PhiCoordinates {
            slots: vec![vec![1], vec![0]],
        };
        let rep = phi_torsion_replay(&a, 1).unwrap();
        assert_eq!(rep.b.slots, vec![vec![1], vec![0]]);
        assert!(rep.check);

        let a = PhiCoordinates {
            slots: vec![vec![1]; 4],
        };
        let rep = phi_torsion_replay(&a, 2).unwrap();
        assert_eq!(rep.b.slots, vec![vec![1], vec![1], vec![2], vec![2]]);
        assert_eq!(rep.image.slots, vec![vec![4]; 4]);
        assert!(rep.check);

        let zero = PhiCoordinates::zero(&[2, 0, 1, 3]);
        let rep = phi_torsion_replay(&zero, 2).unwrap();
        assert!(rep.b.is_zero() && rep.check);
        assert!(matches!(phi_torsion_replay(&zero, 1), Err(Error::Dimension { .. })));
    }

    #[test]
    fn torsion_certificates() {
        let c = torsion_certificate(&BettiVector::top_only(0), 3, 0).unwrap();
        assert_eq!(c.fiber.cokernel.to_string(), "Z/2");
        assert!(c.holds());

        let c = torsion_certificate(&BettiVector::projective_space(1), 5, 1).unwrap();
        assert!(c.holds());
        assert_eq!(c.vertical_projective.matrix.cols(), 2);
        assert_eq!(c.vertical_quadric.matrix.cols(), 2);
        assert_eq!(c.element_order, 2);
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["bottom_snf_diagonal"], serde_json::json!([2]));
        assert_eq!(json["fiber"]["cokernel"]["torsion"], serde_json::json!([2]));

        assert!(torsion_certificate(&BettiVector::top_only(1), 4, 1).is_err());
    }
}
