//! The classical r-matrix `r = (i/κ) M_{0ν} ∧ P^ν`, its Schouten bracket and
//! the CYBE / ad-invariance tests.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::liealg::{Element, Label, LieAlgebraData};
use crate::metric::Metric;
use crate::poly::{NCPoly, Tensor, TensorPoly};
use crate::rewrite::{RelationSet, Rewriter, Strategy};
use crate::scalar::Scalar;
use crate::series::Series;

/// Truncation order used for wedge coefficients; `[r, r]` lives at `λ^2`.
pub const WEDGE_ORDER: usize = 2;

/// Fully antisymmetric tensor, stored by strictly increasing label tuples.
/// `x∧y = x⊗y − y⊗x`; `x∧y∧z` is the signed sum over all six permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeElement {
    pub rank: usize,
    pub comps: BTreeMap<Vec<Label>, Series>,
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    match k {
        2 => vec![(vec![0, 1], 1), (vec![1, 0], -1)],
        3 => vec![
            (vec![0, 1, 2], 1),
            (vec![1, 2, 0], 1),
            (vec![2, 0, 1], 1),
            (vec![1, 0, 2], -1),
            (vec![0, 2, 1], -1),
            (vec![2, 1, 0], -1),
        ],
        _ => panic!("unsupported wedge rank {k}"),
    }
}

/// Sorts `labels` and returns the permutation sign, or `None` on a repeat.
fn canonical(labels: &[Label]) -> Option<(Vec<Label>, i64)> {
    let mut v = labels.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((v, sign))
}

pub fn label_generator(l: Label) -> Generator {
    match l {
        Label::D => Generator::Dilatation,
        Label::M(a, b) => Generator::Rotation(a, b),
        Label::P(a) => Generator::Momentum(a),
    }
}

pub fn generator_label(g: Generator) -> Option<Label> {
    match g {
        Generator::Dilatation => Some(Label::D),
        Generator::Rotation(a, b) => Some(Label::M(a, b)),
        Generator::Momentum(a) => Some(Label::P(a)),
        _ => None,
    }
}

impl WedgeElement {
    pub fn zero(rank: usize) -> Self {
        Self { rank, comps: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Series::is_zero)
    }

    /// Adds `c · x_{l_1} ∧ … ∧ x_{l_k}` for an arbitrary label tuple.
    pub fn add_wedge(&mut self, labels: &[Label], c: &Series) {
        let Some((key, sign)) = canonical(labels) else { return };
        let c = if sign < 0 { -c } else { c.clone() };
        let entry = self.comps.entry(key.clone()).or_insert_with(|| Series::zero(c.order()));
        entry.add_assign_ref(&c);
        if entry.is_zero() {
            self.comps.remove(&key);
        }
    }

    /// Multilinear wedge of basis-coordinate vectors.
    pub fn wedge_of(alg: &LieAlgebraData, factors: &[&Element], coeff: &Series) -> Self {
        let mut out = Self::zero(factors.len());
        let mut stack: Vec<(Vec<Label>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for f in factors {
            let mut next = Vec::new();
            for (labels, c) in &stack {
                for (k, fk) in f.iter().enumerate() {
                    if fk.is_zero() {
                        continue;
                    }
                    let mut l = labels.clone();
                    l.push(alg.basis[k]);
                    next.push((l, c * fk));
                }
            }
            stack = next;
        }
        for (labels, c) in stack {
            out.add_wedge(&labels, &coeff.scale(&c));
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.rank);
        for (k, v) in &self.comps {
            out.add_wedge(k, &v.scale(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.comps {
            out.add_wedge(k, &-v);
        }
        out
    }

    /// Embedding into the tensor power of the enveloping algebra.
    pub fn to_tensor(&self, order: usize) -> TensorPoly {
        let mut out = TensorPoly::zero(order);
        for (labels, c) in &self.comps {
            for (perm, sign) in permutations(self.rank) {
                let words: Vec<Vec<Generator>> =
                    perm.iter().map(|&p| vec![label_generator(labels[p])]).collect();
                let c = if sign < 0 { -c } else { c.clone() };
                out.add_term(Tensor(words), c.truncate(order));
            }
        }
        out
    }

    /// Projection of a fully antisymmetric, slotwise-linear tensor.
    pub fn from_tensor(t: &TensorPoly, rank: usize) -> Result<Self> {
        let mut table: BTreeMap<Vec<Label>, Series> = BTreeMap::new();
        for (m, c) in t.terms() {
            if m.0.len() != rank || m.0.iter().any(|w| w.len() != 1) {
                return Err(Error::Internal(format!(
                    "tensor term {} is not slotwise linear",
                    m.0.iter().map(|w| format!("{w:?}")).collect::<Vec<_>>().join("|")
                )));
            }
            let labels: Vec<Label> = m
                .0
                .iter()
                .map(|w| generator_label(w[0]).ok_or_else(|| Error::Internal("non-Lie generator".into())))
                .collect::<Result<_>>()?;
            table.insert(labels, c.clone());
        }
        let mut out = Self::zero(rank);
        for (labels, c) in &table {
            match canonical(labels) {
                None => {
                    return Err(Error::Internal(format!("tensor not antisymmetric: repeated slot {labels:?}")))
                }
                Some((key, sign)) => {
                    for (perm, psign) in permutations(rank) {
                        let permuted: Vec<Label> = perm.iter().map(|&p| key[p]).collect();
                        let expected = if sign * psign < 0 { -c } else { c.clone() };
                        let found = table.get(&permuted).cloned().unwrap_or_else(|| Series::zero(c.order()));
                        if found != expected {
                            return Err(Error::Internal(format!(
                                "tensor not antisymmetric at {permuted:?}"
                            )));
                        }
                    }
                    if sign > 0 {
                        out.comps.insert(key, c.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// `c` with `self = c · other`, when both are nonzero and proportional.
    pub fn ratio_to(&self, other: &Self) -> Option<Scalar> {
        let (key, s) = other.comps.iter().next()?;
        let k = s.valuation()?;
        let mine = self.comps.get(key)?;
        let c = mine.coeff(k) / s.coeff(k);
        if self.sub(&other.scale(&c)).is_zero() {
            Some(c)
        } else {
            None
        }
    }

    pub fn render(&self) -> String {
        if self.comps.is_empty() {
            return "0".into();
        }
        self.comps
            .iter()
            .map(|(k, v)| {
                let labels: Vec<String> = k.iter().map(Label::to_string).collect();
                format!("({v})*{}", labels.join("^"))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Relation set of the universal enveloping algebra of `alg`.
pub fn enveloping_relations(alg: &LieAlgebraData, order: usize) -> RelationSet {
    let mut rels = RelationSet::new(alg.basis.iter().map(|&l| label_generator(l)), order);
    for (i, &a) in alg.basis.iter().enumerate() {
        for (j, &b) in alg.basis.iter().enumerate() {
            if label_generator(a) <= label_generator(b) {
                continue;
            }
            let mut rhs = NCPoly::zero(order);
            for (k, c) in alg.f[i][j].iter().enumerate() {
                if !c.is_zero() {
                    rhs.add_term(vec![label_generator(alg.basis[k])], Series::constant(c.clone(), order));
                }
            }
            rels.set_commutator(label_generator(a), label_generator(b), rhs);
        }
    }
    rels
}

fn require(alg: &LieAlgebraData, label: Label) -> Result<()> {
    alg.index_of(label)
        .map(|_| ())
        .ok_or_else(|| Error::Config(format!("basis label {label} missing from Lie algebra")))
}

/// `r = iλ Σ_{ν,α} g^{να} M_{0ν} ∧ P_α`.
pub fn build_r(g: &Metric, alg: &LieAlgebraData) -> Result<WedgeElement> {
    let n = g.dim();
    let mut r = WedgeElement::zero(2);
    for nu in 1..n {
        require(alg, Label::M(0, nu as u8))?;
        for a in 0..n {
            require(alg, Label::P(a as u8))?;
            let c = &Scalar::i() * &g.gi(nu, a);
            r.add_wedge(&[Label::M(0, nu as u8), Label::P(a as u8)], &Series::monomial(c, 1, WEDGE_ORDER));
        }
    }
    Ok(r)
}

/// The same element assembled from the component display
/// `r^{μν,α} = (i/2κ)(δ^μ_0 g^{να} − δ^ν_0 g^{μα})`, summed over all `μ, ν, α`.
pub fn build_r_from_components(g: &Metric, alg: &LieAlgebraData) -> Result<WedgeElement> {
    let n = g.dim();
    let mut r = WedgeElement::zero(2);
    for mu in 0..n {
        for nu in 0..n {
            for a in 0..n {
                let d_mu = if mu == 0 { g.gi(nu, a) } else { Scalar::zero() };
                let d_nu = if nu == 0 { g.gi(mu, a) } else { Scalar::zero() };
                let comp = (&d_mu - &d_nu).scale(&crate::scalar::rat(1, 2));
                if comp.is_zero() {
                    continue;
                }
                let m = alg.rotation(mu, nu);
                let p = alg.momentum(a);
                let c = Series::monomial(&Scalar::i() * &comp, 1, WEDGE_ORDER);
                let w = WedgeElement::wedge_of(alg, &[&m, &p], &c);
                for (k, v) in &w.comps {
                    r.add_wedge(k, v);
                }
            }
        }
    }
    Ok(r)
}

fn leg(t: &TensorPoly, slots: (usize, usize)) -> TensorPoly {
    t.map_monomials(|m| {
        let mut ws = vec![Vec::new(); 3];
        ws[slots.0] = m.0[0].clone();
        ws[slots.1] = m.0[1].clone();
        Tensor(ws)
    })
}

/// `[r,r] = [r12,r13] + [r12,r23] + [r13,r23]` evaluated in `U(L)^{⊗3}`.
pub fn schouten(r: &WedgeElement, alg: &LieAlgebraData) -> Result<WedgeElement> {
    schouten_with(r, alg, Strategy::Leftmost, false)
}

/// [`schouten`] with a chosen rewriting strategy and, when `reversed`, the
/// three commutators accumulated in the opposite order.
pub fn schouten_with(
    r: &WedgeElement,
    alg: &LieAlgebraData,
    strategy: Strategy,
    reversed: bool,
) -> Result<WedgeElement> {
    if r.rank != 2 {
        return Err(Error::Precondition("schouten needs a rank-2 wedge".into()));
    }
    let order = r.comps.values().map(Series::order).min().unwrap_or(WEDGE_ORDER).max(WEDGE_ORDER);
    let rels = enveloping_relations(alg, order);
    let mut rw = Rewriter::with_strategy(&rels, strategy);
    let t = r.to_tensor(order);
    let r12 = leg(&t, (0, 1));
    let r13 = leg(&t, (0, 2));
    let r23 = leg(&t, (1, 2));
    let mut pairs = vec![(&r12, &r13), (&r12, &r23), (&r13, &r23)];
    if reversed {
        pairs.reverse();
    }
    let mut total = TensorPoly::zero(order);
    for (x, y) in pairs {
        let xy = rw.normal_form_tensor(&x.mul(y))?;
        let yx = rw.normal_form_tensor(&y.mul(x))?;
        total = total.add(&xy.sub(&yx));
    }
    WedgeElement::from_tensor(&total, 3)
}

pub fn is_cybe(r: &WedgeElement, alg: &LieAlgebraData) -> Result<bool> {
    Ok(schouten(r, alg)?.is_zero())
}

/// Whether `ad_X` annihilates `w` (acting on every slot through the
/// structure constants).
pub fn ad_invariance(w: &WedgeElement, alg: &LieAlgebraData, x: Label) -> Result<bool> {
    Ok(ad_action(w, alg, x)?.is_zero())
}

pub fn ad_action(w: &WedgeElement, alg: &LieAlgebraData, x: Label) -> Result<WedgeElement> {
    require(alg, x)?;
    let mut out = WedgeElement::zero(w.rank);
    for (labels, c) in &w.comps {
        for l in labels {
            require(alg, *l)?;
        }
        for slot in 0..labels.len() {
            let br = alg.constant(x, labels[slot]);
            for (k, bk) in br.iter().enumerate() {
                if bk.is_zero() {
                    continue;
                }
                let mut nl = labels.clone();
                nl[slot] = alg.basis[k];
                out.add_wedge(&nl, &c.scale(bk));
            }
        }
    }
    Ok(out)
}

/// `(i g_{00}/κ²) Σ_{α,β} M_{αβ} ∧ P^α ∧ P^β`.
pub fn eq2_form(g: &Metric, alg: &LieAlgebraData) -> WedgeElement {
    let n = g.dim();
    let coeff = Series::monomial(&Scalar::i() * &g.g(0, 0), 2, WEDGE_ORDER);
    let mut out = WedgeElement::zero(3);
    for a in 0..n {
        for b in 0..n {
            let m = alg.rotation(a, b);
            let mut pa = alg.zero_element();
            let mut pb = alg.zero_element();
            for mu in 0..n {
                let ia = alg.index_of(Label::P(mu as u8)).unwrap();
                pa[ia] = g.gi(a, mu);
                pb[ia] = g.gi(b, mu);
            }
            let w = WedgeElement::wedge_of(alg, &[&m, &pa, &pb], &coeff);
            for (k, v) in &w.comps {
                out.add_wedge(k, v);
            }
        }
    }
    out
}

/// Outcome of the tri-state CYBE classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CybeStatus {
    Holds,
    ModifiedAdInvariant,
    FailsNonInvariant,
}

pub fn classify(r: &WedgeElement, alg: &LieAlgebraData) -> Result<CybeStatus> {
    let rr = schouten(r, alg)?;
    if rr.is_zero() {
        return Ok(CybeStatus::Holds);
    }
    for &x in &alg.basis {
        if !ad_invariance(&rr, alg, x)? {
            return Ok(CybeStatus::FailsNonInvariant);
        }
    }
    Ok(CybeStatus::ModifiedAdInvariant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_poincare, build_weyl};
    use crate::scalar::rat_int;

    #[test]
    fn r_in_two_dimensions() {
        let g = Metric::minkowski(2);
        let alg = build_poincare(&g);
        let r = build_r(&g, &alg).unwrap();
        let mut expected = WedgeElement::zero(2);
        expected.add_wedge(&[Label::M(0, 1), Label::P(1)], &Series::monomial(-Scalar::i(), 1, WEDGE_ORDER));
        assert_eq!(r, expected);
        assert_eq!(build_r_from_components(&g, &alg).unwrap(), r);
    }

    #[test]
    fn r_light_cone_two_dimensions() {
        let g = Metric::light_cone(2);
        let alg = build_poincare(&g);
        let r = build_r(&g, &alg).unwrap();
        let mut expected = WedgeElement::zero(2);
        expected.add_wedge(&[Label::M(0, 1), Label::P(0)], &Series::monomial(Scalar::i(), 1, WEDGE_ORDER));
        // P^1 = g^{10} P_0 = P_0, so r = iλ M_{01} ∧ P_0
        assert_eq!(r, expected);
    }

    #[test]
    fn zero_r_satisfies_cybe() {
        let alg = build_poincare(&Metric::minkowski(3));
        let zero = WedgeElement::zero(2);
        assert!(schouten(&zero, &alg).unwrap().is_zero());
        assert!(is_cybe(&zero, &alg).unwrap());
        assert!(ad_invariance(&WedgeElement::zero(3), &alg, Label::P(0)).unwrap());
    }

    #[test]
    fn tensor_round_trip() {
        let g = Metric::minkowski(3);
        let alg = build_poincare(&g);
        let w = eq2_form(&g, &alg);
        assert_eq!(WedgeElement::from_tensor(&w.to_tensor(WEDGE_ORDER), 3).unwrap(), w);
    }

    #[test]
    fn minkowski_is_modified_cybe() {
        let g = Metric::minkowski(4);
        let alg = build_poincare(&g);
        let r = build_r(&g, &alg).unwrap();
        assert!(!is_cybe(&r, &alg).unwrap());
        assert_eq!(classify(&r, &alg).unwrap(), CybeStatus::ModifiedAdInvariant);
        let weyl = build_weyl(&g);
        let rr = schouten(&r, &weyl).unwrap();
        assert!(!ad_invariance(&rr, &weyl, Label::D).unwrap());
    }

    #[test]
    fn light_cone_satisfies_cybe() {
        let g = Metric::light_cone(4);
        let alg = build_weyl(&g);
        assert!(is_cybe(&build_r(&g, &alg).unwrap(), &alg).unwrap());
    }

    #[test]
    fn proportional_to_closed_form() {
        let g = Metric::minkowski(4);
        let alg = build_poincare(&g);
        let rr = schouten(&build_r(&g, &alg).unwrap(), &alg).unwrap();
        assert_eq!(rr.ratio_to(&eq2_form(&g, &alg)), Some(Scalar::frac(1, 2)));

        let g2 = g.with_g00(rat_int(3)).unwrap();
        let alg2 = build_poincare(&g2);
        let rr2 = schouten(&build_r(&g2, &alg2).unwrap(), &alg2).unwrap();
        assert_eq!(rr2.ratio_to(&eq2_form(&g2, &alg2)), Some(Scalar::frac(1, 2)));
        // P^0 = g^{00} P_0 moves with g_00, so the bare results are not proportional
        assert_eq!(rr2.ratio_to(&rr), None);
    }

    #[test]
    fn evaluation_order_does_not_matter() {
        let g = Metric::minkowski(3);
        let alg = build_weyl(&g);
        let r = build_r(&g, &alg).unwrap();
        let a = schouten_with(&r, &alg, Strategy::Leftmost, false).unwrap();
        let b = schouten_with(&r, &alg, Strategy::Rightmost, true).unwrap();
        assert_eq!(a, b);
    }
}
