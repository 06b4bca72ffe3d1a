//! Classical Poincaré and Weyl Lie algebras for an arbitrary metric.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{delta, inverse, Metric};
use crate::scalar::{Rational, Scalar};

/// Basis label. Rotations always carry `μ < ν`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Label {
    D,
    M(u8, u8),
    P(u8),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::D => write!(f, "D"),
            Label::M(a, b) => write!(f, "M{a}{b}"),
            Label::P(a) => write!(f, "P{a}"),
        }
    }
}

/// Whether rotation labels denote `M_{μν}` or `M^{μν}`. Momenta are always `P_μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IndexConvention {
    Lower,
    RaisedRotations,
}

/// Structure constants `[x_a, x_b] = Σ_c f[a][b][c] x_c` over a labelled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    pub n: usize,
    pub basis: Vec<Label>,
    pub convention: IndexConvention,
    pub f: Vec<Vec<Vec<Scalar>>>,
}

/// Coordinates of an element over a basis.
pub type Element = Vec<Scalar>;

fn rotation_labels(n: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(Label::M(a as u8, b as u8));
        }
    }
    out
}

impl LieAlgebraData {
    fn empty(n: usize, basis: Vec<Label>, convention: IndexConvention) -> Self {
        let d = basis.len();
        Self { n, basis, convention, f: vec![vec![vec![Scalar::zero(); d]; d]; d] }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.basis.iter().position(|&l| l == label)
    }

    pub fn has_dilatation(&self) -> bool {
        self.index_of(Label::D).is_some()
    }

    pub fn zero_element(&self) -> Element {
        vec![Scalar::zero(); self.dim()]
    }

    pub fn unit(&self, label: Label) -> Element {
        let mut e = self.zero_element();
        if let Some(i) = self.index_of(label) {
            e[i] = Scalar::one();
        }
        e
    }

    /// `M_{μν}` (or `M^{μν}`) for arbitrary indices, with antisymmetry resolved.
    pub fn rotation(&self, mu: usize, nu: usize) -> Element {
        let mut e = self.zero_element();
        if mu == nu {
            return e;
        }
        let (sign, label) = if mu < nu {
            (Scalar::one(), Label::M(mu as u8, nu as u8))
        } else {
            (Scalar::int(-1), Label::M(nu as u8, mu as u8))
        };
        if let Some(i) = self.index_of(label) {
            e[i] = sign;
        }
        e
    }

    pub fn momentum(&self, mu: usize) -> Element {
        self.unit(Label::P(mu as u8))
    }

    pub fn constant(&self, a: Label, b: Label) -> Element {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.f[i][j].clone(),
            _ => self.zero_element(),
        }
    }

    fn set(&mut self, a: Label, b: Label, value: Element) {
        let i = self.index_of(a).expect("label in basis");
        let j = self.index_of(b).expect("label in basis");
        self.f[j][i] = value.iter().map(|c| -c).collect();
        self.f[i][j] = value;
    }

    pub fn bracket(&self, u: &Element, v: &Element) -> Element {
        let mut out = self.zero_element();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                for (k, fk) in self.f[i][j].iter().enumerate() {
                    if !fk.is_zero() {
                        out[k] += &(&c * fk);
                    }
                }
            }
        }
        out
    }

    /// Restriction to a sub-basis (constants are copied, not recomputed).
    pub fn restrict(&self, labels: &[Label]) -> LieAlgebraData {
        let mut out = Self::empty(self.n, labels.to_vec(), self.convention);
        for (i, &a) in labels.iter().enumerate() {
            for (j, &b) in labels.iter().enumerate() {
                let full = self.constant(a, b);
                for (k, &c) in labels.iter().enumerate() {
                    out.f[i][j][k] = full[self.index_of(c).expect("sub-basis")].clone();
                }
            }
        }
        out
    }

    /// Re-expresses the algebra over a new basis `y_k = Σ_a t[k][a] x_a`.
    pub fn change_basis(
        &self,
        labels: Vec<Label>,
        t: &[Vec<Rational>],
        convention: IndexConvention,
    ) -> Result<LieAlgebraData> {
        let tinv = inverse(t).ok_or_else(|| Error::Internal("singular basis change".into()))?;
        let d = self.dim();
        let as_elem = |row: &Vec<Rational>| -> Element {
            row.iter().map(|r| Scalar::real(r.clone())).collect()
        };
        let ys: Vec<Element> = t.iter().map(as_elem).collect();
        let mut out = Self::empty(self.n, labels, convention);
        for k in 0..d {
            for l in 0..d {
                let br = self.bracket(&ys[k], &ys[l]);
                // coordinates c with Σ_m c_m t[m][a] = br_a, i.e. c = br · t⁻¹
                for m in 0..d {
                    let mut acc = Scalar::zero();
                    for (a, ba) in br.iter().enumerate() {
                        if !ba.is_zero() {
                            acc += &ba.scale(&tinv[a][m]);
                        }
                    }
                    out.f[k][l][m] = acc;
                }
            }
        }
        Ok(out)
    }

    /// Basis `{M^{μν}, P_μ, (D)}` with rotations raised by `g`.
    pub fn raise_rotations(&self, g: &Metric) -> Result<LieAlgebraData> {
        let d = self.dim();
        let mut t = vec![vec![Rational::default(); d]; d];
        for (k, &label) in self.basis.iter().enumerate() {
            match label {
                Label::M(mu, nu) => {
                    let (mu, nu) = (mu as usize, nu as usize);
                    for a in 0..self.n {
                        for b in 0..self.n {
                            let coeff = g.upper(mu, a) * g.upper(nu, b);
                            for (i, c) in self.rotation(a, b).iter().enumerate() {
                                if !c.is_zero() {
                                    t[k][i] += &coeff * &c.re();
                                }
                            }
                        }
                    }
                }
                _ => t[k][k] = Rational::from_integer(1.into()),
            }
        }
        self.change_basis(self.basis.clone(), &t, IndexConvention::RaisedRotations)
    }

    /// Checks `f_{ab}^c = -f_{ba}^c` exactly.
    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| (0..d).all(|k| (&self.f[i][j][k] + &self.f[j][i][k]).is_zero()))
        })
    }
}

/// `[M_{μν}, P_λ]`, `[M_{μν}, M_{λσ}]`, `[P_μ, P_ν] = 0` over `{M_{μν} (μ<ν), P_μ}`.
pub fn build_poincare(g: &Metric) -> LieAlgebraData {
    let n = g.dim();
    let mut basis = rotation_labels(n);
    basis.extend((0..n).map(|m| Label::P(m as u8)));
    let mut alg = LieAlgebraData::empty(n, basis, IndexConvention::Lower);
    fill_poincare(&mut alg, g);
    alg
}

fn fill_poincare(alg: &mut LieAlgebraData, g: &Metric) {
    let n = g.dim();
    let i = Scalar::i();
    let rots = rotation_labels(n);
    for &m in &rots {
        let Label::M(mu, nu) = m else { unreachable!() };
        let (mu, nu) = (mu as usize, nu as usize);
        for lam in 0..n {
            // i (g_{νλ} P_μ − g_{μλ} P_ν)
            let mut v = alg.zero_element();
            let pm = alg.index_of(Label::P(mu as u8)).unwrap();
            let pn = alg.index_of(Label::P(nu as u8)).unwrap();
            v[pm] += &(&i * &g.g(nu, lam));
            v[pn] -= &(&i * &g.g(mu, lam));
            alg.set(m, Label::P(lam as u8), v);
        }
        for &m2 in &rots {
            let Label::M(la, si) = m2 else { unreachable!() };
            let (la, si) = (la as usize, si as usize);
            // i (g_{μσ} M_{νλ} − g_{νσ} M_{μλ} + g_{νλ} M_{μσ} − g_{μλ} M_{νσ})
            let mut v = alg.zero_element();
            let terms = [
                (g.g(mu, si), alg.rotation(nu, la)),
                (-g.g(nu, si), alg.rotation(mu, la)),
                (g.g(nu, la), alg.rotation(mu, si)),
                (-g.g(mu, la), alg.rotation(nu, si)),
            ];
            for (c, e) in terms {
                if c.is_zero() {
                    continue;
                }
                let ci = &i * &c;
                for (k, ek) in e.iter().enumerate() {
                    if !ek.is_zero() {
                        v[k] += &(&ci * ek);
                    }
                }
            }
            alg.set(m, m2, v);
        }
    }
}

/// Poincaré algebra extended by `D` with `[M_{μν}, D] = 0`, `[P_μ, D] = -i P_μ`.
pub fn build_weyl(g: &Metric) -> LieAlgebraData {
    let n = g.dim();
    let mut basis = vec![Label::D];
    basis.extend(rotation_labels(n));
    basis.extend((0..n).map(|m| Label::P(m as u8)));
    let mut alg = LieAlgebraData::empty(n, basis, IndexConvention::Lower);
    fill_poincare(&mut alg, g);
    for mu in 0..n {
        let v: Element = alg.momentum(mu).iter().map(|c| -&(c * &Scalar::i())).collect();
        alg.set(Label::P(mu as u8), Label::D, v);
    }
    alg
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiViolation {
    pub triple: (Label, Label, Label),
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub triples_checked: usize,
    pub antisymmetric: bool,
    pub violations: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.antisymmetric && self.violations.is_empty()
    }
}

fn render_element(alg: &LieAlgebraData, e: &Element) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("({c})*{}", alg.basis[k]))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Exact evaluation of `[[x_a,x_b],x_c] + [[x_b,x_c],x_a] + [[x_c,x_a],x_b]`
/// over all triples `a ≤ b ≤ c`.
pub fn jacobi_check(alg: &LieAlgebraData) -> JacobiReport {
    let d = alg.dim();
    let mut violations = Vec::new();
    let mut count = 0;
    let units: Vec<Element> = alg.basis.iter().map(|&l| alg.unit(l)).collect();
    for a in 0..d {
        for b in a..d {
            let ab = alg.bracket(&units[a], &units[b]);
            for c in b..d {
                count += 1;
                let t1 = alg.bracket(&ab, &units[c]);
                let t2 = alg.bracket(&alg.bracket(&units[b], &units[c]), &units[a]);
                let t3 = alg.bracket(&alg.bracket(&units[c], &units[a]), &units[b]);
                let sum: Element =
                    (0..d).map(|k| &(&t1[k] + &t2[k]) + &t3[k]).collect();
                if sum.iter().any(|s| !s.is_zero()) {
                    violations.push(JacobiViolation {
                        triple: (alg.basis[a], alg.basis[b], alg.basis[c]),
                        residual: render_element(alg, &sum),
                    });
                }
            }
        }
    }
    JacobiReport { triples_checked: count, antisymmetric: alg.is_antisymmetric(), violations }
}

/// Complex `n×n` matrix.
pub type Matrix = Vec<Vec<Scalar>>;

/// `(M_{αβ})^μ_ν = i(δ^μ_α g_{νβ} − δ^μ_β g_{να})`.
pub fn rotation_matrix(g: &Metric, alpha: usize, beta: usize) -> Matrix {
    let n = g.dim();
    (0..n)
        .map(|mu| {
            (0..n)
                .map(|nu| {
                    let v = &(&delta(mu, alpha) * &g.g(nu, beta)) - &(&delta(mu, beta) * &g.g(nu, alpha));
                    &Scalar::i() * &v
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Scalar::zero();
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc += &(&a[i][k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn mat_is_zero(a: &Matrix) -> bool {
    a.iter().all(|r| r.iter().all(Scalar::is_zero))
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixRepReport {
    pub pairs_checked: usize,
    pub diagonal_vanishes: bool,
    pub failures: Vec<(Label, Label)>,
}

impl MatrixRepReport {
    pub fn passed(&self) -> bool {
        self.diagonal_vanishes && self.failures.is_empty()
    }
}

/// Verifies that the defining matrices satisfy the `[M, M]` brackets of
/// [`build_poincare`] under the matrix commutator.
pub fn matrix_rep_check(g: &Metric) -> MatrixRepReport {
    let n = g.dim();
    let alg = build_poincare(g);
    let rots = rotation_labels(n);
    let mats: Vec<Matrix> = rots
        .iter()
        .map(|l| {
            let Label::M(a, b) = *l else { unreachable!() };
            rotation_matrix(g, a as usize, b as usize)
        })
        .collect();
    let diagonal_vanishes = (0..n).all(|a| mat_is_zero(&rotation_matrix(g, a, a)));
    let mut failures = Vec::new();
    let mut count = 0;
    for (x, &lx) in rots.iter().enumerate() {
        for (y, &ly) in rots.iter().enumerate() {
            count += 1;
            let ab = mat_mul(&mats[x], &mats[y]);
            let ba = mat_mul(&mats[y], &mats[x]);
            let mut diff: Matrix =
                (0..n).map(|i| (0..n).map(|j| &ab[i][j] - &ba[i][j]).collect()).collect();
            let f = alg.constant(lx, ly);
            for (k, &lz) in rots.iter().enumerate() {
                let c = &f[alg.index_of(lz).unwrap()];
                if c.is_zero() {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        diff[i][j] -= &(c * &mats[k][i][j]);
                    }
                }
            }
            if !mat_is_zero(&diff) {
                failures.push((lx, ly));
            }
        }
    }
    MatrixRepReport { pairs_checked: count, diagonal_vanishes, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn boost_momentum_bracket_minkowski_2d() {
        let alg = build_poincare(&Metric::minkowski(2));
        let v = alg.constant(Label::M(0, 1), Label::P(1));
        assert_eq!(v, alg.momentum(0).iter().map(|c| -&(c * &Scalar::i())).collect::<Vec<_>>());
    }

    #[test]
    fn momenta_commute_for_any_metric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let alg = build_poincare(&Metric::random(3, &mut rng, false));
        for a in 0..3u8 {
            for b in 0..3u8 {
                assert!(alg.constant(Label::P(a), Label::P(b)).iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn jacobi_on_random_metrics() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..20 {
            let n = 2 + k % 3;
            let g = Metric::random(n, &mut rng, k % 2 == 0);
            assert!(jacobi_check(&build_poincare(&g)).passed());
            assert!(jacobi_check(&build_weyl(&g)).passed());
        }
    }

    #[test]
    fn weyl_dilatation_brackets() {
        let alg = build_weyl(&Metric::minkowski(4));
        let pd = alg.constant(Label::P(0), Label::D);
        assert_eq!(pd[alg.index_of(Label::P(0)).unwrap()], -Scalar::i());
        assert!(alg.constant(Label::M(0, 1), Label::D).iter().all(Scalar::is_zero));
    }

    #[test]
    fn weyl_restricts_to_poincare() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = Metric::random(4, &mut rng, false);
        let p = build_poincare(&g);
        assert_eq!(build_weyl(&g).restrict(&p.basis), p);
    }

    #[test]
    fn light_cone_weyl_jacobi() {
        assert!(jacobi_check(&build_weyl(&Metric::light_cone(4))).passed());
    }

    #[test]
    fn perturbed_constant_is_caught() {
        let mut alg = build_poincare(&Metric::minkowski(3));
        let (i, j, k) = (
            alg.index_of(Label::M(0, 1)).unwrap(),
            alg.index_of(Label::M(0, 2)).unwrap(),
            alg.index_of(Label::M(1, 2)).unwrap(),
        );
        alg.f[i][j][k] += &Scalar::one();
        alg.f[j][i][k] -= &Scalar::one();
        let rep = jacobi_check(&alg);
        assert!(!rep.passed());
        assert!(rep.violations.iter().any(|v| {
            let (a, b, c) = v.triple;
            [a, b, c].contains(&Label::M(0, 1)) && [a, b, c].contains(&Label::M(0, 2))
        }));
    }

    #[test]
    fn matrix_realization() {
        assert!(matrix_rep_check(&Metric::minkowski(4)).passed());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(matrix_rep_check(&Metric::random(3, &mut rng, false)).passed());
        let g = Metric::minkowski(4);
        assert!(mat_is_zero(&rotation_matrix(&g, 2, 2)));
    }

    #[test]
    fn raising_preserves_jacobi() {
        let g = Metric::new(vec![
            vec![rat_int(1), rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(-1), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(-2)],
        ])
        .unwrap();
        let raised = build_weyl(&g).raise_rotations(&g).unwrap();
        assert!(jacobi_check(&raised).passed());
    }
}
