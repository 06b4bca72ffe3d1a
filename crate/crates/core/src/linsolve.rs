//! Exact Gaussian elimination over Gaussian rationals.

use crate::scalar::Scalar;

/// Solves `A x = b` for one solution (free variables set to zero), or `None`
/// if the system is inconsistent. `a` is row-major.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for k in c..=cols {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for k in c..=cols {
                if m[r][k].is_zero() {
                    continue;
                }
                let v = &f * &m[r][k];
                m[i][k] -= &v;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_consistent_and_rejects_inconsistent() {
        let a = vec![
            vec![Scalar::int(1), Scalar::int(1)],
            vec![Scalar::int(2), Scalar::int(2)],
            vec![Scalar::int(0), Scalar::i()],
        ];
        let x = solve(&a, &[Scalar::int(3), Scalar::int(6), Scalar::i()]).unwrap();
        assert_eq!(x, vec![Scalar::int(2), Scalar::int(1)]);
        assert!(solve(&a, &[Scalar::int(3), Scalar::int(5), Scalar::zero()]).is_none());
    }
}
