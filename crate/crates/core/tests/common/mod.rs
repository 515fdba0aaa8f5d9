#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symdeg_core::dual::smooth_gradient;
use symdeg_core::linalg::solve_rational;
use symdeg_core::rational::rat;
use symdeg_core::{MultiPoly, PointQ, RatMatrix, Rational};

/// Rank by textbook Gauss–Jordan elimination with rational pivots.
pub fn naive_rank(m: &RatMatrix) -> usize {
    let mut a = m.to_rows();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for x in a[rank].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let v = &a[i][j] - &factor * &a[rank][j];
                    a[i][j] = v;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn random_rat_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RatMatrix {
    // low-rank products and zero rows show up often enough to matter
    let style = rng.gen_range(0..3);
    match style {
        0 => RatMatrix::from_fn(rows, cols, |_, _| {
            Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into())
        }),
        1 => {
            let k = rng.gen_range(0..=rows.min(cols));
            let left = RatMatrix::from_fn(rows, k, |_, _| rat(rng.gen_range(-3..=3)));
            let right = RatMatrix::from_fn(k, cols, |_, _| rat(rng.gen_range(-3..=3)));
            if k == 0 {
                RatMatrix::zeros(rows, cols)
            } else {
                left.mul(&right)
            }
        }
        _ => RatMatrix::from_fn(rows, cols, |_, _| {
            if rng.gen_bool(0.6) {
                Rational::zero()
            } else {
                rat(rng.gen_range(-2..=2))
            }
        }),
    }
}

/// All exponent vectors of total degree `d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A dense random form of degree `d` in `n` variables vanishing at `count`
/// random integer points, each of them smooth. Returns the form and points.
pub fn hypersurface_through_smooth_points(
    rng: &mut ChaCha8Rng,
    n: usize,
    d: u32,
    count: usize,
) -> (MultiPoly, Vec<PointQ>) {
    assert!(count <= n, "pure powers x_k^d absorb one condition each");
    loop {
        let base = MultiPoly::from_terms(
            n,
            monomials(n, d)
                .into_iter()
                .map(|e| (rat(rng.gen_range(-5..=5)), e)),
        );
        let points: Vec<PointQ> = (0..count)
            .map(|_| loop {
                let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
                if c.iter().any(|&x| x != 0) {
                    break PointQ::from_ints(&c);
                }
            })
            .collect();
        let powers: Vec<MultiPoly> = (0..count)
            .map(|k| {
                let mut e = vec![0; n];
                e[k] = d;
                MultiPoly::monomial(n, symdeg_core::Monomial::new(e), Rational::one())
            })
            .collect();
        let system = RatMatrix::from_fn(count, count, |i, k| powers[k].evaluate(&points[i]).unwrap());
        let rhs: Vec<Rational> = points.iter().map(|p| -base.evaluate(p).unwrap()).collect();
        let Ok(Some(c)) = solve_rational(&system, &rhs) else {
            continue;
        };
        let mut f = base;
        for (ck, pk) in c.iter().zip(&powers) {
            f = &f + &pk.scale(ck);
        }
        if points.iter().all(|p| smooth_gradient(&f, p).is_ok()) {
            return (f, points);
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn quartic() -> MultiPoly {
    symdeg_core::parse_poly(
        "w0^2*w3^2 - 6*w0*w1*w2*w3 + 4*w0*w2^3 + 4*w1^3*w3 - 3*w1^2*w2^2",
        &names("w", 4),
    )
    .unwrap()
}

/// `Q̃_x(e_i, e_j)` read off as the `s t` coefficient of `f(x + s e_i + t e_j)`,
/// without differentiating.
pub fn hessian_by_polarization(f: &MultiPoly, x: &[i64]) -> RatMatrix {
    let n = f.num_vars();
    RatMatrix::from_fn(n, n, |i, j| {
        let images: Vec<MultiPoly> = (0..n)
            .map(|k| {
                let mut terms = vec![(rat(x[k]), vec![0, 0])];
                if k == i {
                    terms.push((rat(1), vec![1, 0]));
                }
                if k == j {
                    terms.push((rat(1), vec![0, 1]));
                }
                MultiPoly::from_terms(2, terms)
            })
            .collect();
        let g = f.substitute(&images).unwrap();
        // for i == j this is the s^2 coefficient of f(x + s e_i) times 2
        if i == j {
            g.coefficient(&[2, 0]) * rat(2)
        } else {
            g.coefficient(&[1, 1])
        }
    })
}
