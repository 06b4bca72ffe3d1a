//! κ-Poincaré and κ-Weyl algebras over truncated λ-series (λ = 1/κ).
//!
//! Generators are `M^{μν}` (raised, stored with `μ < ν`), `P_μ` (lowered) and
//! optionally `D`. Normal order puts `D` first, then rotations, then momenta
//! with `P_0` last, so every relation right-hand side is already sorted.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::hopf::{self, HopfData};
use crate::liealg::{build_poincare, build_weyl, IndexConvention, Label, LieAlgebraData};
use crate::metric::{delta, Metric};
use crate::poisson::GroupKind;
use crate::poly::{NCPoly, TensorPoly};
use crate::report::SuiteReport;
use crate::rewrite::{exp_series, RelationSet, Rewriter};
use crate::scalar::Scalar;

pub const DEFAULT_ORDER: usize = 4;

#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    pub kind: GroupKind,
    pub metric: Metric,
    /// Relations, coproduct and counit; the antipode map starts as `S = −id`
    /// and is replaced by [`derive_antipode`].
    pub hopf: HopfData,
}

impl AlgebraPresentation {
    pub fn order(&self) -> usize {
        self.hopf.order()
    }

    pub fn relations(&self) -> &RelationSet {
        &self.hopf.relations
    }

    pub fn generators(&self) -> Vec<Generator> {
        self.hopf.generators()
    }
}

/// `M^{μν}` for arbitrary indices.
fn m_up(mu: usize, nu: usize, order: usize) -> NCPoly {
    match Generator::rotation(mu, nu) {
        Some((sign, g)) => NCPoly::gen(g, order).scale(&Scalar::int(sign)),
        None => NCPoly::zero(order),
    }
}

fn p(mu: usize, order: usize) -> NCPoly {
    NCPoly::gen(Generator::momentum(mu), order)
}

fn one(order: usize) -> NCPoly {
    NCPoly::one(order)
}

/// `e^{−k λ P_0}` to the given order.
fn exp_p0(k: i64, order: usize) -> Result<NCPoly> {
    exp_series(&p(0, order).scale(&Scalar::int(-k)).shift_up(1))
}

/// Coefficients built at order `N + 1` and multiplied by `κ`; a leftover
/// `λ⁰` term would be a `λ^{−1}` pole.
fn times_kappa(x: &NCPoly, what: &str) -> Result<NCPoly> {
    x.shift_down().ok_or_else(|| Error::LambdaResidue(what.to_string()))
}

/// Scalar-valued helpers that read like the displayed formulas.
struct Ctx<'a> {
    g: &'a Metric,
    n: usize,
    /// Truncation order `N`.
    o: usize,
}

impl Ctx<'_> {
    fn gi(&self, a: usize, b: usize) -> Scalar {
        self.g.gi(a, b)
    }

    fn gl(&self, a: usize, b: usize) -> Scalar {
        self.g.g(a, b)
    }

    fn spatial(&self) -> std::ops::Range<usize> {
        1..self.n
    }

    /// `1 − e^{−kλP_0}` at order `N + 1`.
    fn one_minus_exp(&self, k: i64) -> Result<NCPoly> {
        Ok(one(self.o + 1).sub(&exp_p0(k, self.o + 1)?))
    }

    fn e(&self) -> Result<NCPoly> {
        exp_p0(1, self.o)
    }

    /// `Σ_s c(s) P_s` over spatial `s`.
    fn p_sum(&self, c: impl Fn(usize) -> Scalar) -> NCPoly {
        let mut out = NCPoly::zero(self.o);
        for s in self.spatial() {
            out = out.add(&p(s, self.o).scale(&c(s)));
        }
        out
    }

    /// `g^{rs} P_r P_s` over spatial `r, s`.
    fn p_square(&self) -> NCPoly {
        let mut out = NCPoly::zero(self.o);
        for r in self.spatial() {
            for s in self.spatial() {
                out = out.add(&p(r, self.o).mul(&p(s, self.o)).scale(&self.gi(r, s)));
            }
        }
        out
    }

    /// `[M^{ij}, P_k]` for spatial `i, j`, any `k`.
    fn m_spatial_p(&self, i: usize, j: usize, k: usize) -> Result<NCPoly> {
        if k == 0 {
            return Ok(NCPoly::zero(self.o));
        }
        let c = &(&delta(j, k) * &self.gi(0, i)) - &(&delta(i, k) * &self.gi(0, j));
        let deformed = times_kappa(&self.one_minus_exp(1)?.scale(&(&Scalar::i() * &c)), "[M^ij, P_k]")?;
        let linear = self.p_sum(|s| &(&delta(j, k) * &self.gi(i, s)) - &(&delta(i, k) * &self.gi(j, s)));
        Ok(deformed.add(&linear.scale(&Scalar::i())))
    }

    /// `[M^{i0}, P_0] = iκ g^{i0}(1 − e^{−λP_0}) + i g^{ik} P_k`.
    ///
    /// The source prints the exponent with a lowercase `p_0`; it is read as `P_0`.
    fn boost_p0(&self, i: usize) -> Result<NCPoly> {
        let deformed = times_kappa(&self.one_minus_exp(1)?.scale(&(&Scalar::i() * &self.gi(i, 0))), "[M^i0, P_0]")?;
        Ok(deformed.add(&self.p_sum(|k| self.gi(i, k)).scale(&Scalar::i())))
    }

    /// `[M^{i0}, P_k]`.
    fn boost_pk(&self, i: usize, k: usize) -> Result<NCPoly> {
        let o = self.o;
        let i_ = Scalar::i();
        let half = Scalar::frac(1, 2);
        let e = self.e()?;
        // −i(κ/2) g^{00} δ^i_k (1 − e^{−2λP_0})
        let c0 = &(&(&-&i_ * &half) * &self.gi(0, 0)) * &delta(i, k);
        let t1 = times_kappa(&self.one_minus_exp(2)?.scale(&c0), "[M^i0, P_k]")?;
        // −i δ^i_k g^{0s} P_s e^{−λP_0}
        let t2 = self.p_sum(|s| self.gi(0, s)).mul(&e).scale(&(&-&i_ * &delta(i, k)));
        // i g^{0i} P_k (e^{−λP_0} − 1)
        let t3 = p(k, o).mul(&e.sub(&one(o))).scale(&(&i_ * &self.gi(0, i)));
        // (i/2κ) δ^i_k g^{rs} P_r P_s
        let t4 = self.p_square().scale(&(&(&i_ * &half) * &delta(i, k))).shift_up(1);
        // −(i/κ) g^{is} P_s P_k
        let t5 = self.p_sum(|s| self.gi(i, s)).mul(&p(k, o)).scale(&-&i_).shift_up(1);
        Ok(t1.add(&t2).add(&t3).add(&t4).add(&t5))
    }

    /// `[M^{μν}, M^{λσ}] = i(g^{μσ}M^{νλ} − g^{νσ}M^{μλ} + g^{νλ}M^{μσ} − g^{μλ}M^{νσ})`.
    fn mm(&self, mu: usize, nu: usize, la: usize, si: usize) -> NCPoly {
        let o = self.o;
        m_up(nu, la, o)
            .scale(&self.gi(mu, si))
            .sub(&m_up(mu, la, o).scale(&self.gi(nu, si)))
            .add(&m_up(mu, si, o).scale(&self.gi(nu, la)))
            .sub(&m_up(nu, si, o).scale(&self.gi(mu, la)))
            .scale(&Scalar::i())
    }

    /// `[D, P_0] = iκ(1 − e^{−λP_0})`.
    fn d_p0(&self) -> Result<NCPoly> {
        times_kappa(&self.one_minus_exp(1)?.scale(&Scalar::i()), "[D, P_0]")
    }

    /// `[D, P_i] = iP_i e^{−λP_0} + i(κ/2)g^{00}g_{i0}(1 − e^{−λP_0})² + i g_{0i} g^{0s}P_s(1 − e^{−λP_0}) + (i/2κ) g_{0i} g^{rs}P_rP_s`.
    fn d_pi(&self, i: usize) -> Result<NCPoly> {
        let o = self.o;
        let i_ = Scalar::i();
        let e = self.e()?;
        let om = self.one_minus_exp(1)?;
        let t1 = p(i, o).mul(&e).scale(&i_);
        let c2 = &(&(&i_ * &Scalar::frac(1, 2)) * &self.gi(0, 0)) * &self.gl(i, 0);
        let t2 = times_kappa(&om.mul(&om).scale(&c2), "[D, P_i]")?;
        let t3 = self.p_sum(|s| self.gi(0, s)).mul(&om.truncated(o)).scale(&(&i_ * &self.gl(0, i)));
        let t4 = self.p_square().scale(&(&(&i_ * &Scalar::frac(1, 2)) * &self.gl(0, i))).shift_up(1);
        Ok(t1.add(&t2).add(&t3).add(&t4))
    }
}

fn generator_list(kind: GroupKind, n: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    if kind == GroupKind::Weyl {
        out.push(Generator::Dilatation);
    }
    for a in 0..n {
        for b in a + 1..n {
            out.push(Generator::Rotation(a as u8, b as u8));
        }
    }
    out.extend((0..n).map(Generator::momentum));
    out
}

/// `[M^{ab}, P_k]` for a stored rotation `a < b`.
fn rotation_momentum(ctx: &Ctx, a: usize, b: usize, k: usize) -> Result<NCPoly> {
    if a == 0 {
        // M^{0b} = −M^{b0}
        let r = if k == 0 { ctx.boost_p0(b)? } else { ctx.boost_pk(b, k)? };
        Ok(r.neg())
    } else {
        ctx.m_spatial_p(a, b, k)
    }
}

fn build(kind: GroupKind, g: &Metric, order: usize) -> Result<AlgebraPresentation> {
    if order == 0 {
        return Err(Error::Config("truncation order must be at least 1".into()));
    }
    let n = g.dim();
    let ctx = Ctx { g, n, o: order };
    let gens = generator_list(kind, n);
    let sorter = RelationSet::new(gens.iter().copied(), order);
    let mut sort = Rewriter::new(&sorter);
    let mut rules: Vec<(Generator, Generator, NCPoly)> = Vec::new();
    let rotations: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    for &(a, b) in &rotations {
        for k in 0..n {
            let rhs = sort.normal_form(&rotation_momentum(&ctx, a, b, k)?)?;
            rules.push((Generator::Rotation(a as u8, b as u8), Generator::momentum(k), rhs));
        }
        for &(c, d) in &rotations {
            if (c, d) > (a, b) {
                let rhs = ctx.mm(a, b, c, d);
                rules.push((Generator::Rotation(a as u8, b as u8), Generator::Rotation(c as u8, d as u8), rhs));
            }
        }
    }
    if kind == GroupKind::Weyl {
        rules.push((Generator::Dilatation, Generator::momentum(0), sort.normal_form(&ctx.d_p0()?)?));
        for i in 1..n {
            rules.push((Generator::Dilatation, Generator::momentum(i), sort.normal_form(&ctx.d_pi(i)?)?));
        }
    }
    drop(sort);
    let mut rels = RelationSet::new(gens.iter().copied(), order);
    for (x, y, rhs) in rules {
        rels.set_commutator(x, y, rhs);
    }
    rels.validate()?;

    let o = order;
    let e = ctx.e()?;
    let mut coproduct = BTreeMap::new();
    let t = |x: &NCPoly, y: &NCPoly| TensorPoly::tensor(&[x, y]);
    let primitive = |x: &NCPoly| t(x, &one(o)).add(&t(&one(o), x));
    coproduct.insert(Generator::momentum(0), primitive(&p(0, o)));
    for k in 1..n {
        coproduct.insert(Generator::momentum(k), t(&p(k, o), &e).add(&t(&one(o), &p(k, o))));
    }
    for &(a, b) in &rotations {
        let key = Generator::Rotation(a as u8, b as u8);
        if a > 0 {
            coproduct.insert(key, primitive(&m_up(a, b, o)));
        } else {
            // ΔM^{i0} = 1 ⊗ M^{i0} + M^{i0} ⊗ e^{−λP_0} − λ M^{ij} ⊗ P_j, and M^{0i} = −M^{i0}
            let i = b;
            let mut d = t(&one(o), &m_up(i, 0, o)).add(&t(&m_up(i, 0, o), &e));
            for j in 1..n {
                d = d.sub(&t(&m_up(i, j, o), &p(j, o)).shift_up(1));
            }
            coproduct.insert(key, d.neg());
        }
    }
    if kind == GroupKind::Weyl {
        let dd = NCPoly::gen(Generator::Dilatation, o);
        let mut d = primitive(&dd);
        let om = one(o).sub(&e);
        for i in 1..n {
            let c = g.g(0, i);
            d = d.sub(&t(&m_up(i, 0, o).scale(&c), &om));
            for k in 1..n {
                d = d.sub(&t(&m_up(i, k, o).scale(&c), &p(k, o)).shift_up(1));
            }
        }
        coproduct.insert(Generator::Dilatation, d);
    }
    let counit = gens.iter().map(|&x| (x, Scalar::zero())).collect();
    let antipode = gens.iter().map(|&x| (x, NCPoly::gen(x, o).neg())).collect();
    Ok(AlgebraPresentation {
        kind,
        metric: g.clone(),
        hopf: HopfData { relations: rels, coproduct, counit, antipode },
    })
}

pub fn build_kappa_poincare_algebra(g: &Metric, order: usize) -> Result<AlgebraPresentation> {
    build(GroupKind::Poincare, g, order)
}

pub fn build_kappa_weyl_algebra(g: &Metric, order: usize) -> Result<AlgebraPresentation> {
    build(GroupKind::Weyl, g, order)
}

pub fn build_algebra(kind: GroupKind, g: &Metric, order: usize) -> Result<AlgebraPresentation> {
    build(kind, g, order)
}

/// Jacobi, Δ-homomorphism, coassociativity and counit, exactly to order `N`.
pub fn axiom_suite_truncated(a: &AlgebraPresentation) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(format!("kappa_{}_algebra", a.kind));
    rep.checks.push(hopf::check_jacobi(&a.hopf.relations, &hopf::exact_zero)?);
    rep.checks.push(hopf::check_coproduct_homomorphism(&a.hopf, &hopf::exact_zero_tensor)?);
    rep.checks.push(hopf::check_coassociativity(&a.hopf)?);
    rep.checks.push(hopf::check_counit(&a.hopf)?);
    Ok(rep)
}

fn label_of(g: Generator) -> Option<Label> {
    match g {
        Generator::Rotation(a, b) => Some(Label::M(a, b)),
        Generator::Momentum(m) => Some(Label::P(m)),
        Generator::Dilatation => Some(Label::D),
        _ => None,
    }
}

fn generator_of(l: Label) -> Generator {
    match l {
        Label::M(a, b) => Generator::Rotation(a, b),
        Label::P(m) => Generator::momentum(m as usize),
        Label::D => Generator::Dilatation,
    }
}

/// λ⁰ part of every commutator, over the basis of the matching classical
/// algebra with rotations raised.
pub fn classical_limit(a: &AlgebraPresentation) -> Result<LieAlgebraData> {
    let n = a.metric.dim();
    let reference = match a.kind {
        GroupKind::Poincare => build_poincare(&a.metric),
        GroupKind::Weyl => build_weyl(&a.metric),
    };
    let basis = reference.basis.clone();
    let d = basis.len();
    let mut f = vec![vec![vec![Scalar::zero(); d]; d]; d];
    for (i, &x) in basis.iter().enumerate() {
        for (j, &y) in basis.iter().enumerate() {
            let rule = a.relations().commutator_rule(generator_of(x), generator_of(y));
            for (w, c) in rule.terms() {
                let c0 = c.coeff(0);
                if c0.is_zero() {
                    continue;
                }
                let label = match w.as_slice() {
                    [g] => label_of(*g),
                    _ => None,
                };
                let k = label.and_then(|l| basis.iter().position(|&b| b == l)).ok_or_else(|| {
                    Error::Precondition(format!("λ⁰ part of [{x}, {y}] is not linear: {}", w.len()))
                })?;
                f[i][j][k] = c0;
            }
        }
    }
    Ok(LieAlgebraData { n, basis, convention: IndexConvention::RaisedRotations, f })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalLimitReport {
    pub matches: bool,
    /// `[D, P_μ]` at λ⁰ equals `+iP_μ`, the same as the classical `[P_μ, D] = −iP_μ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dilatation_sign_consistent: Option<bool>,
}

pub fn classical_limit_check(a: &AlgebraPresentation) -> Result<ClassicalLimitReport> {
    let lim = classical_limit(a)?;
    let reference = match a.kind {
        GroupKind::Poincare => build_poincare(&a.metric),
        GroupKind::Weyl => build_weyl(&a.metric),
    }
    .raise_rotations(&a.metric)?;
    let sign = (a.kind == GroupKind::Weyl).then(|| {
        (0..a.metric.dim()).all(|m| {
            let c = lim.constant(Label::D, Label::P(m as u8));
            let mut expect = lim.zero_element();
            expect[lim.index_of(Label::P(m as u8)).unwrap()] = Scalar::i();
            c == expect
        })
    });
    Ok(ClassicalLimitReport { matches: lim == reference, dilatation_sign_consistent: sign })
}

#[derive(Clone, Debug)]
pub struct AntipodeSolution {
    pub antipode: BTreeMap<Generator, NCPoly>,
    /// Passes of the fixed-point iteration; each settles one more λ-order.
    pub passes: usize,
    pub report: SuiteReport,
}

/// `u⁻¹ = Σ_m (1 − u)^m` for `u = 1 + O(λ)` in a commutative corner.
fn invert_unipotent(u: &NCPoly, rw: &mut Rewriter) -> Result<NCPoly> {
    let o = u.order();
    let c0 = u.lambda_part(0);
    if c0 != one(o) {
        return Err(Error::Precondition(format!("coefficient {} is not 1 + O(λ)", u.render())));
    }
    let v = one(o).sub(u);
    let mut out = one(o);
    let mut power = one(o);
    for _ in 0..o {
        power = rw.mul(&power, &v)?;
        if power.is_zero() {
            break;
        }
        out = out.add(&power);
    }
    Ok(out)
}

/// Solves `m(S ⊗ id)Δ = ηε` on generators, starting from `S = −id` and fixing
/// one λ-order per pass, then checks both antipode axioms and anti-multiplicativity.
pub fn derive_antipode(a: &AlgebraPresentation) -> Result<AntipodeSolution> {
    let o = a.order();
    let gens = a.generators();
    let mut rw = Rewriter::new(a.relations());
    let mut current = a.hopf.clone();
    current.antipode = gens.iter().map(|&x| (x, NCPoly::gen(x, o).neg())).collect();
    let mut passes = 0;
    loop {
        passes += 1;
        let mut next = BTreeMap::new();
        for &x in &gens {
            let dx = &current.coproduct[&x];
            let mut u = NCPoly::zero(o);
            let mut rest = NCPoly::zero(o);
            for (t, c) in dx.terms() {
                let right = NCPoly::word(t.0[1].clone(), o);
                if t.0[0] == [x] {
                    u.add_scaled(&right, c);
                } else {
                    let s = current.antipode_of(&NCPoly::word(t.0[0].clone(), o), &mut rw)?;
                    rest.add_scaled(&rw.mul(&s, &right)?, c);
                }
            }
            let uinv = invert_unipotent(&u, &mut rw)?;
            let counit = NCPoly::constant(current.counit[&x].clone(), o);
            next.insert(x, rw.mul(&counit.sub(&rest), &uinv)?);
        }
        if next == current.antipode {
            break;
        }
        current.antipode = next;
        if passes > o + 2 {
            return Err(Error::Limit(format!("antipode iteration did not settle after {passes} passes")));
        }
    }
    let mut report = SuiteReport::new(format!("kappa_{}_algebra_antipode", a.kind));
    report.checks.push(hopf::check_antipode(&current, &hopf::exact_zero)?);
    report.checks.push(hopf::check_antipode_antihomomorphism(&current, &hopf::exact_zero)?);
    Ok(AntipodeSolution { antipode: current.antipode, passes, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_suite(a: &AlgebraPresentation) {
        let rep = axiom_suite_truncated(a).unwrap();
        for c in &rep.checks {
            assert!(c.passed(), "{} {}: {:?}", a.metric.render(), c.name, c.failures.first());
        }
    }

    #[test]
    fn poincare_axioms_truncated() {
        for n in [2, 3, 4] {
            assert_suite(&build_kappa_poincare_algebra(&Metric::minkowski(n), DEFAULT_ORDER).unwrap());
        }
        assert_suite(&build_kappa_poincare_algebra(&Metric::minkowski(3), 6).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in [2, 3] {
            for _ in 0..3 {
                assert_suite(&build_kappa_poincare_algebra(&Metric::random(n, &mut rng, false), DEFAULT_ORDER).unwrap());
            }
        }
    }

    #[test]
    fn weyl_axioms_on_null_time_metrics() {
        assert_suite(&build_kappa_weyl_algebra(&Metric::light_cone(3), 6).unwrap());
        assert_suite(&build_kappa_weyl_algebra(&Metric::light_cone(4), DEFAULT_ORDER).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..3 {
            assert_suite(&build_kappa_weyl_algebra(&Metric::random(3, &mut rng, true), DEFAULT_ORDER).unwrap());
        }
    }

    #[test]
    fn classical_limits() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for n in [2, 3, 4] {
            let g = Metric::random(n, &mut rng, false);
            let r = classical_limit_check(&build_kappa_poincare_algebra(&g, 3).unwrap()).unwrap();
            assert!(r.matches && r.dilatation_sign_consistent.is_none());
            let g = Metric::random(n, &mut rng, true);
            let r = classical_limit_check(&build_kappa_weyl_algebra(&g, 3).unwrap()).unwrap();
            assert!(r.matches);
            assert_eq!(r.dilatation_sign_consistent, Some(true));
        }
    }

    #[test]
    fn dropped_boost_tail_fails_at_first_order() {
        let mut a = build_kappa_poincare_algebra(&Metric::minkowski(3), DEFAULT_ORDER).unwrap();
        let o = a.order();
        let key = Generator::Rotation(0, 1);
        let trimmed = TensorPoly::tensor(&[&one(o), &m_up(0, 1, o)])
            .add(&TensorPoly::tensor(&[&m_up(0, 1, o), &exp_p0(1, o).unwrap()]));
        a.hopf.coproduct.insert(key, trimmed);
        let rep = axiom_suite_truncated(&a).unwrap();
        assert!(!rep.check("coproduct_homomorphism").unwrap().passed());
        assert_eq!(rep.first_failing_order(), Some(1));
    }

    #[test]
    fn antipode_closed_forms() {
        let g = Metric::minkowski(4);
        let a = build_kappa_poincare_algebra(&g, DEFAULT_ORDER).unwrap();
        let sol = derive_antipode(&a).unwrap();
        assert!(sol.report.passed());
        let o = a.order();
        let inv_e = exp_p0(-1, o).unwrap();
        let mut rw = Rewriter::new(a.relations());
        assert_eq!(sol.antipode[&Generator::momentum(0)], p(0, o).neg());
        for k in 1..4 {
            assert_eq!(sol.antipode[&Generator::momentum(k)], rw.mul(&p(k, o), &inv_e).unwrap().neg());
        }
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert_eq!(sol.antipode[&Generator::Rotation(i, j)], m_up(i as usize, j as usize, o).neg());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let w = build_kappa_weyl_algebra(&Metric::random(3, &mut rng, true), DEFAULT_ORDER).unwrap();
        assert!(derive_antipode(&w).unwrap().report.passed());
    }

    #[test]
    fn lambda_pole_is_reported() {
        let x = NCPoly::one(3);
        assert!(matches!(times_kappa(&x, "t"), Err(Error::LambdaResidue(_))));
    }
}
