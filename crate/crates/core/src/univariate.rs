//! Dense univariate helpers used by the reducedness heuristic.

use num_traits::Zero;

use crate::rational::Rational;

/// Coefficients, constant term first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Univariate(pub Vec<Rational>);

impl Univariate {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Univariate(c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Univariate {
        Univariate::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    fn rem(&self, d: &Univariate) -> Univariate {
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = &r[top] / &lead;
            for (i, dc) in d.0.iter().enumerate() {
                let k = top - dd + i;
                r[k] = &r[k] - &c * dc;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Univariate::new(r)
    }

    pub fn gcd(&self, other: &Univariate) -> Univariate {
        let (mut a, mut b) = (self.clone(), other.clone());
        while b.degree().is_some() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn u(v: &[i64]) -> Univariate {
        Univariate::new(v.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn gcd_of_square() {
        // (t - 1)^2 (t + 2) = t^3 - 3t + 2
        let p = u(&[2, -3, 0, 1]);
        let g = p.gcd(&p.derivative());
        assert_eq!(g.degree(), Some(1));
        let q = u(&[-2, 1, 1]); // (t + 2)(t - 1)
        assert_eq!(q.gcd(&q.derivative()).degree(), Some(0));
    }
}
