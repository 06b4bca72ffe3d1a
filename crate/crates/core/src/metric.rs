//! Nondegenerate symmetric metrics with exact inverse.

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{fmt_rational, rat, rat_int, Rational, Scalar};

/// `g_{μν}` together with its cached inverse `g^{μν}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    n: usize,
    g: Vec<Vec<Rational>>,
    ginv: Vec<Vec<Rational>>,
}

/// Exact determinant by fraction-free-ish Gaussian elimination.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Exact inverse by Gauss–Jordan elimination; `None` if singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        let p = a[col][col].clone();
        for c in 0..2 * n {
            a[col][c] = &a[col][c] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..2 * n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

impl Metric {
    pub fn new(g: Vec<Vec<Rational>>) -> Result<Self> {
        let n = g.len();
        if n < 2 {
            return Err(Error::Config(format!("dimension must be at least 2, got {n}")));
        }
        if g.iter().any(|row| row.len() != n) {
            return Err(Error::Config("metric is not square".to_string()));
        }
        for i in 0..n {
            for j in 0..i {
                if g[i][j] != g[j][i] {
                    return Err(Error::NonSymmetricMetric);
                }
            }
        }
        let ginv = inverse(&g).ok_or(Error::SingularMetric)?;
        Ok(Self { n, g, ginv })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| rat_int(v)).collect()).collect())
    }

    /// `diag(1, -1, …, -1)`.
    pub fn minkowski(n: usize) -> Self {
        let g = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i == j, i) {
                        (false, _) => Rational::zero(),
                        (true, 0) => Rational::one(),
                        (true, _) => -Rational::one(),
                    })
                    .collect()
            })
            .collect();
        Self::new(g).expect("Minkowski metric is valid")
    }

    /// Null-plane metric: `g_{01} = g_{10} = 1`, `g_{kk} = -1` for `k ≥ 2`, so `g_{00} = 0`.
    pub fn light_cone(n: usize) -> Self {
        let g = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if (i, j) == (0, 1) || (i, j) == (1, 0) {
                            Rational::one()
                        } else if i == j && i >= 2 {
                            -Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(g).expect("light-cone metric is valid")
    }

    /// Random symmetric invertible metric with small rational entries. With
    /// `null_time` the `g_{00}` entry is forced to zero.
    pub fn random(n: usize, rng: &mut impl Rng, null_time: bool) -> Self {
        loop {
            let mut g = vec![vec![Rational::zero(); n]; n];
            for i in 0..n {
                for j in i..n {
                    let num = rng.gen_range(-3i64..=3);
                    let den = rng.gen_range(1i64..=2);
                    g[i][j] = rat(num, den);
                    g[j][i] = g[i][j].clone();
                }
            }
            if null_time {
                g[0][0] = Rational::zero();
            } else if g[0][0].is_zero() {
                g[0][0] = Rational::one();
            }
            if let Ok(m) = Self::new(g) {
                return m;
            }
        }
    }

    /// Same metric with `g_{00}` replaced.
    pub fn with_g00(&self, value: Rational) -> Result<Self> {
        let mut g = self.g.clone();
        g[0][0] = value;
        Self::new(g)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn lower(&self, mu: usize, nu: usize) -> &Rational {
        &self.g[mu][nu]
    }

    pub fn upper(&self, mu: usize, nu: usize) -> &Rational {
        &self.ginv[mu][nu]
    }

    /// `g_{μν}` as a scalar.
    pub fn g(&self, mu: usize, nu: usize) -> Scalar {
        Scalar::real(self.g[mu][nu].clone())
    }

    /// `g^{μν}` as a scalar.
    pub fn gi(&self, mu: usize, nu: usize) -> Scalar {
        Scalar::real(self.ginv[mu][nu].clone())
    }

    pub fn g00(&self) -> &Rational {
        &self.g[0][0]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.g
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.g)
    }

    /// Row-major rendering with `p/q` entries.
    pub fn render(&self) -> String {
        let rows: Vec<String> = self
            .g
            .iter()
            .map(|r| format!("[{}]", r.iter().map(fmt_rational).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", rows.join(","))
    }
}

impl Serialize for Metric {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

pub fn delta(a: usize, b: usize) -> Scalar {
    if a == b {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=4 {
            let m = Metric::random(n, &mut rng, false);
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Rational::zero();
                    for k in 0..n {
                        acc += m.lower(i, k) * m.upper(k, j);
                    }
                    assert_eq!(acc, if i == j { Rational::one() } else { Rational::zero() });
                }
            }
        }
    }

    #[test]
    fn rejects_bad_metrics() {
        assert!(matches!(Metric::from_ints(&[&[1, 0], &[0, 0]]), Err(Error::SingularMetric)));
        assert!(matches!(Metric::from_ints(&[&[1, 2], &[3, 4]]), Err(Error::NonSymmetricMetric)));
        assert!(Metric::from_ints(&[&[1]]).is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(Metric::minkowski(4).determinant(), rat_int(-1));
        assert_eq!(Metric::light_cone(4).determinant(), rat_int(-1));
        assert!(Metric::light_cone(3).g00().is_zero());
    }

    #[test]
    fn null_time_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            assert!(Metric::random(3, &mut rng, true).g00().is_zero());
            assert!(!Metric::random(3, &mut rng, false).g00().is_zero());
        }
    }
}
