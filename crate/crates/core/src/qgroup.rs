//! κ-Poincaré and κ-Weyl quantum groups as presented Hopf algebras.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::generator::Generator;
use crate::hopf::{self, HopfData};
use crate::metric::{delta, Metric};
use crate::ortho;
use crate::poisson::{self, CoordPoly, GroupKind, PoissonStructure};
use crate::poly::{NCPoly, TensorPoly};
use crate::report::{Check, SuiteReport};
use crate::rewrite::{substitute, RelationSet, Rewriter};
use crate::scalar::Scalar;
use crate::series::Series;

pub const DEFAULT_ORDER: usize = 4;

#[derive(Clone, Debug)]
pub struct HopfPresentation {
    pub kind: GroupKind,
    pub metric: Metric,
    pub hopf: HopfData,
    /// Residuals of antipode-type checks are reduced modulo `Λ^T g Λ = g`.
    pub orthogonality: bool,
}

impl HopfPresentation {
    pub fn generators(&self) -> Vec<Generator> {
        self.hopf.generators()
    }

    pub fn relations(&self) -> &RelationSet {
        &self.hopf.relations
    }

    pub fn order(&self) -> usize {
        self.hopf.order()
    }
}

fn lam(mu: usize, nu: usize, order: usize) -> NCPoly {
    NCPoly::gen(Generator::lorentz(mu, nu), order)
}

fn trans(mu: usize, order: usize) -> NCPoly {
    NCPoly::gen(Generator::trans(mu), order)
}

fn c(s: Scalar, order: usize) -> NCPoly {
    NCPoly::constant(s, order)
}

/// `i λ x` with `x` given at λ⁰.
fn i_lambda(x: &NCPoly) -> NCPoly {
    x.scale(&Scalar::i()).shift_up(1)
}

fn generators(kind: GroupKind, n: usize) -> Vec<Generator> {
    let mut out: Vec<Generator> = (0..n).flat_map(|m| (0..n).map(move |v| Generator::lorentz(m, v))).collect();
    out.extend((0..n).map(Generator::trans));
    if kind == GroupKind::Weyl {
        out.extend([Generator::BCoord, Generator::ExpB(-1), Generator::ExpB(1)]);
    }
    out
}

/// `S(Λ^μ_ν) = Λ_ν^μ = g_{να} g^{μβ} Λ^α_β`.
fn lorentz_antipode(g: &Metric, mu: usize, nu: usize, order: usize) -> NCPoly {
    let n = g.dim();
    let mut out = NCPoly::zero(order);
    for a in 0..n {
        for b in 0..n {
            out = out.add(&lam(a, b, order).scale(&(&g.g(nu, a) * &g.gi(mu, b))));
        }
    }
    out
}

fn build(kind: GroupKind, g: &Metric, order: usize) -> Result<HopfPresentation> {
    let n = g.dim();
    let mut rels = RelationSet::new(generators(kind, n), order);
    let e = match kind {
        GroupKind::Poincare => NCPoly::one(order),
        GroupKind::Weyl => NCPoly::gen(Generator::ExpB(1), order),
    };
    let e_inv = match kind {
        GroupKind::Poincare => NCPoly::one(order),
        GroupKind::Weyl => NCPoly::gen(Generator::ExpB(-1), order),
    };
    if kind == GroupKind::Weyl {
        rels.set_contraction(Generator::ExpB(-1), Generator::ExpB(1), NCPoly::one(order));
    }
    // [Λ^α_β, a^ρ] = −iλ((E Λ^α_0 − δ^α_0) Λ^ρ_β + (Λ_{0β} − E g_{0β}) g^{αρ})
    for al in 0..n {
        for be in 0..n {
            let mut lam0b = NCPoly::zero(order);
            for mu in 0..n {
                lam0b = lam0b.add(&lam(mu, be, order).scale(&g.g(0, mu)));
            }
            for rho in 0..n {
                let first = lam(al, 0, order).mul(&e).sub(&c(delta(al, 0), order)).mul(&lam(rho, be, order));
                let second = lam0b.sub(&e.scale(&g.g(0, be))).scale(&g.gi(al, rho));
                let rhs = i_lambda(&first.add(&second)).neg();
                let mut rw = Rewriter::new(&rels);
                let rhs = rw.normal_form(&rhs)?;
                rels.set_commutator(Generator::lorentz(al, be), Generator::trans(rho), rhs);
            }
        }
    }
    // [a^ρ, a^σ] = iλ(δ^ρ_0 a^σ − δ^σ_0 a^ρ)
    for r in 0..n {
        for s in r + 1..n {
            let rhs = trans(s, order).scale(&delta(r, 0)).sub(&trans(r, order).scale(&delta(s, 0)));
            rels.set_commutator(Generator::trans(r), Generator::trans(s), i_lambda(&rhs));
        }
    }
    rels.validate()?;

    let mut coproduct = BTreeMap::new();
    let mut counit = BTreeMap::new();
    let mut antipode = BTreeMap::new();
    let mut rw = Rewriter::new(&rels);
    for mu in 0..n {
        for nu in 0..n {
            let mut d = TensorPoly::zero(order);
            for a in 0..n {
                d = d.add(&TensorPoly::tensor(&[&lam(mu, a, order), &lam(a, nu, order)]));
            }
            coproduct.insert(Generator::lorentz(mu, nu), d);
            counit.insert(Generator::lorentz(mu, nu), delta(mu, nu));
            antipode.insert(Generator::lorentz(mu, nu), lorentz_antipode(g, mu, nu, order));
        }
        // Δa^μ = E Λ^μ_ν ⊗ a^ν + a^μ ⊗ 1,  S(a^μ) = −E⁻¹ Λ_ν^μ a^ν
        let mut d = TensorPoly::tensor(&[&trans(mu, order), &NCPoly::one(order)]);
        let mut s = NCPoly::zero(order);
        for nu in 0..n {
            let left = rw.normal_form(&lam(mu, nu, order).mul(&e))?;
            d = d.add(&TensorPoly::tensor(&[&left, &trans(nu, order)]));
            s = s.sub(&e_inv.mul(&lorentz_antipode(g, mu, nu, order)).mul(&trans(nu, order)));
        }
        coproduct.insert(Generator::trans(mu), d);
        counit.insert(Generator::trans(mu), Scalar::zero());
        antipode.insert(Generator::trans(mu), rw.normal_form(&s)?);
    }
    if kind == GroupKind::Weyl {
        let one = NCPoly::one(order);
        let b = NCPoly::gen(Generator::BCoord, order);
        coproduct.insert(Generator::BCoord, TensorPoly::tensor(&[&b, &one]).add(&TensorPoly::tensor(&[&one, &b])));
        counit.insert(Generator::BCoord, Scalar::zero());
        antipode.insert(Generator::BCoord, b.neg());
        for s in [-1i8, 1] {
            let x = NCPoly::gen(Generator::ExpB(s), order);
            coproduct.insert(Generator::ExpB(s), TensorPoly::tensor(&[&x, &x]));
            counit.insert(Generator::ExpB(s), Scalar::one());
            antipode.insert(Generator::ExpB(s), NCPoly::gen(Generator::ExpB(-s), order));
        }
    }
    drop(rw);
    Ok(HopfPresentation {
        kind,
        metric: g.clone(),
        hopf: HopfData { relations: rels, coproduct, counit, antipode },
        orthogonality: true,
    })
}

pub fn build_kappa_poincare_group(g: &Metric) -> Result<HopfPresentation> {
    build(GroupKind::Poincare, g, DEFAULT_ORDER)
}

pub fn build_kappa_weyl_group(g: &Metric) -> Result<HopfPresentation> {
    build(GroupKind::Weyl, g, DEFAULT_ORDER)
}

pub fn build_group(kind: GroupKind, g: &Metric, order: usize) -> Result<HopfPresentation> {
    build(kind, g, order)
}

/// Commutative image of a normal-ordered polynomial, one λ-power at a time.
pub fn lambda_slices(p: &NCPoly) -> Vec<CoordPoly> {
    (0..=p.order())
        .map(|k| {
            let mut out = CoordPoly::zero();
            for (w, c) in p.terms() {
                let mut m = CoordPoly::constant(c.coeff(k));
                for g in w {
                    m = m.mul(&CoordPoly::var(*g));
                }
                out = out.add(&m);
            }
            out
        })
        .collect()
}

/// Jacobi identity on generator triples, then checks (a)–(e) on generators.
pub fn hopf_axiom_suite(h: &HopfPresentation) -> Result<SuiteReport> {
    let g = &h.metric;
    let ortho_zero = |p: &NCPoly| ortho::vanishes_on_group(p, g);
    let ortho_zero_tensor = |p: &TensorPoly| ortho::tensor_vanishes_on_group(p, g);
    let (zero, zero_tensor): (hopf::ZeroTest, hopf::TensorZeroTest) = if h.orthogonality {
        (&ortho_zero, &ortho_zero_tensor)
    } else {
        (&hopf::exact_zero, &hopf::exact_zero_tensor)
    };
    let mut rep = SuiteReport::new(format!("kappa_{}_group", h.kind));
    rep.checks.push(hopf::check_jacobi(&h.hopf.relations, zero)?);
    rep.checks.push(hopf::check_coproduct_homomorphism(&h.hopf, zero_tensor)?);
    rep.checks.push(hopf::check_coassociativity(&h.hopf)?);
    rep.checks.push(hopf::check_counit(&h.hopf)?);
    rep.checks.push(hopf::check_antipode(&h.hopf, zero)?);
    rep.checks.push(hopf::check_counit_relations(&h.hopf)?);
    rep.checks.push(hopf::check_antipode_antihomomorphism(&h.hopf, zero)?);
    Ok(rep)
}

/// `[x,[y,z]] + [z,[x,y]] + [y,[z,x]]` in normal form.
pub fn jacobiator(h: &HopfPresentation, x: Generator, y: Generator, z: Generator) -> Result<NCPoly> {
    hopf::jacobiator(h.relations(), &mut Rewriter::new(h.relations()), x, y, z)
}

fn exp_b_power(k: i8, order: usize) -> NCPoly {
    let g = Generator::ExpB(k.signum());
    NCPoly::word(vec![g; k.unsigned_abs() as usize], order)
}

/// `λ² g₀₀ (1 − e^{2s b}) (g^{ασ} Λ^ρ_β − g^{αρ} Λ^σ_β)`; `s = −1` is the
/// closed form as usually displayed, `s = +1` is what the relations produce.
pub fn weyl_jacobi_form(h: &HopfPresentation, al: usize, be: usize, rho: usize, sig: usize, s: i8) -> Result<NCPoly> {
    let (g, order) = (&h.metric, h.order());
    let shape = lam(rho, be, order).scale(&g.gi(al, sig)).sub(&lam(sig, be, order).scale(&g.gi(al, rho)));
    let factor = NCPoly::one(order).sub(&exp_b_power(2 * s, order));
    let form = factor.mul(&shape).scale(&Scalar::real(g.g00().clone())).shift_up(2);
    Rewriter::new(h.relations()).normal_form(&form)
}

/// Jacobiator on `(Λ^α_β, a^ρ, a^σ)` for the κ-Weyl group.
pub fn weyl_jacobiator(h: &HopfPresentation, al: usize, be: usize, rho: usize, sig: usize) -> Result<NCPoly> {
    let j = jacobiator(h, Generator::lorentz(al, be), Generator::trans(rho), Generator::trans(sig))?;
    Rewriter::new(h.relations()).normal_form(&j)
}

/// Formal antilinear involution fixing generators and reversing products.
pub fn star(p: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero(p.order());
    for (w, c) in p.terms() {
        out.add_term(w.iter().rev().copied().collect(), c.conj());
    }
    out
}

/// Each relation `[x, y] = r` must satisfy `r* = −r` after normal ordering.
pub fn star_reality_check(h: &HopfPresentation) -> Result<Check> {
    let mut check = Check::new("star_reality");
    let mut rw = Rewriter::new(h.relations());
    let gens = h.generators();
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            let r = h.relations().commutator_rule(x, y);
            let res = rw.normal_form(&star(&r))?.add(&r);
            if res.is_zero() {
                check.pass();
            } else {
                check.fail(format!("[{x}, {y}]"), res.render(), res.valuation());
            }
        }
    }
    Ok(check)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantizationReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<String>,
}

impl QuantizationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `(1/i)[x, y]` at λ¹ against the Sklyanin bracket of the same coordinates,
/// on the group; λ⁰ and λ^{≥2} parts must vanish.
pub fn quantization_consistency(h: &HopfPresentation) -> Result<QuantizationReport> {
    let p = PoissonStructure::new(h.kind, &h.metric)?;
    let coords = poisson::coordinates(h.kind, h.metric.dim());
    let mut mismatches = Vec::new();
    let mut count = 0;
    let minus_i = -Scalar::i();
    for (i, &x) in coords.iter().enumerate() {
        for &y in &coords[i + 1..] {
            count += 1;
            let rule = h.relations().commutator_rule(x, y).scale(&minus_i);
            let slices = lambda_slices(&rule);
            let classical = poisson::sklyanin_bracket(&p, &CoordPoly::var(x), &CoordPoly::var(y));
            let ok = slices.iter().enumerate().all(|(k, s)| match k {
                1 => ortho::equivalent(s, &classical, &h.metric),
                _ => s.is_zero(),
            });
            if !ok {
                mismatches.push(format!("{{{x}, {y}}}: quantum {} vs classical {}", rule.render(), classical.render()));
            }
        }
    }
    Ok(QuantizationReport { pairs_checked: count, mismatches })
}

/// `e^{±b} → 1`, `b → 0`.
pub fn trivial_dilatation(g: Generator) -> Option<Scalar> {
    match g {
        Generator::ExpB(_) => Some(Scalar::one()),
        Generator::BCoord => Some(Scalar::zero()),
        _ => None,
    }
}

fn substitute_tensor(t: &TensorPoly, f: &impl Fn(Generator) -> Option<Scalar>) -> TensorPoly {
    let mut out = TensorPoly::zero(t.order());
    for (m, c) in t.terms() {
        let slots: Vec<NCPoly> = m.0.iter().map(|w| substitute(&NCPoly::word(w.clone(), t.order()), f)).collect();
        let refs: Vec<&NCPoly> = slots.iter().collect();
        out.add_scaled(&TensorPoly::tensor(&refs), c);
    }
    out
}

/// Whether the κ-Weyl presentation at `b = 0` coincides with the κ-Poincaré
/// presentation: relations, coproduct, counit, antipode on shared generators.
pub fn weyl_reduces_to_poincare(weyl: &HopfPresentation, poincare: &HopfPresentation) -> Result<bool> {
    let spec = weyl.relations().specialize(trivial_dilatation)?;
    let gens = poincare.generators();
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            if spec.commutator_rule(x, y) != poincare.relations().commutator_rule(x, y) {
                return Ok(false);
            }
        }
        if substitute_tensor(&weyl.hopf.coproduct[&x], &trivial_dilatation) != poincare.hopf.coproduct[&x]
            || substitute(&weyl.hopf.antipode[&x], &trivial_dilatation) != poincare.hopf.antipode[&x]
            || weyl.hopf.counit[&x] != poincare.hopf.counit[&x]
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Lorentz sector carries no λ-dependence in Δ, ε, S.
pub fn lorentz_sector_undeformed(h: &HopfPresentation) -> bool {
    let n = h.metric.dim();
    let lambda_free = |s: &Series| (1..=s.order()).all(|k| s.coeff(k).is_zero());
    (0..n).flat_map(|m| (0..n).map(move |v| Generator::lorentz(m, v))).all(|x| {
        h.hopf.coproduct[&x].terms().all(|(_, c)| lambda_free(c))
            && h.hopf.antipode[&x].terms().all(|(_, c)| lambda_free(c))
            && (0..n).all(|v| h.relations().commutator_rule(x, Generator::lorentz(v, 0)).is_zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn gen(g: Generator) -> NCPoly {
        NCPoly::gen(g, DEFAULT_ORDER)
    }

    #[test]
    fn presentation_examples() {
        let g = Metric::minkowski(3);
        let h = build_kappa_poincare_group(&g).unwrap();
        for k in 1..3 {
            let expected = gen(Generator::trans(k)).scale(&Scalar::i()).shift_up(1);
            assert_eq!(h.relations().commutator_rule(Generator::trans(0), Generator::trans(k)), expected);
        }
        let mut da = TensorPoly::tensor(&[&gen(Generator::trans(1)), &NCPoly::one(DEFAULT_ORDER)]);
        for nu in 0..3 {
            da = da.add(&TensorPoly::tensor(&[&gen(Generator::lorentz(1, nu)), &gen(Generator::trans(nu))]));
        }
        assert_eq!(h.hopf.coproduct[&Generator::trans(1)], da);
        assert_eq!(h.hopf.counit[&Generator::lorentz(1, 1)], Scalar::one());
        assert_eq!(h.hopf.counit[&Generator::lorentz(1, 2)], Scalar::zero());

        let w = build_kappa_weyl_group(&Metric::light_cone(3)).unwrap();
        assert!(w.relations().commutator_rule(Generator::trans(1), Generator::BCoord).is_zero());
        assert_eq!(w.hopf.antipode[&Generator::BCoord], gen(Generator::BCoord).neg());
        let e = gen(Generator::ExpB(1));
        assert_eq!(w.hopf.coproduct[&Generator::ExpB(1)], TensorPoly::tensor(&[&e, &e]));
    }

    #[test]
    fn poincare_group_axioms() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(21);
        for g in [Metric::minkowski(3), Metric::random(2, &mut rng, false), Metric::random(3, &mut rng, false)] {
            let rep = hopf_axiom_suite(&build_kappa_poincare_group(&g).unwrap()).unwrap();
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn orthogonality_is_needed() {
        let mut h = build_kappa_poincare_group(&Metric::minkowski(2)).unwrap();
        h.orthogonality = false;
        let rep = hopf_axiom_suite(&h).unwrap();
        assert!(!rep.check("antipode").unwrap().passed());
        assert!(!rep.check("coproduct_homomorphism").unwrap().passed());
    }

    #[test]
    fn weyl_group_consistent_iff_null_time() {
        let lc = Metric::light_cone(3);
        assert!(hopf_axiom_suite(&build_kappa_weyl_group(&lc).unwrap()).unwrap().passed());
        let rep = hopf_axiom_suite(&build_kappa_weyl_group(&Metric::minkowski(3)).unwrap()).unwrap();
        assert!(!rep.passed());
        let jac = rep.check("jacobi").unwrap();
        assert!(!jac.passed());
        assert!(jac.failures.iter().all(|f| f.lambda_order == Some(2)));
        assert!(rep.checks.iter().filter(|c| c.name != "jacobi").all(Check::passed));
    }

    #[test]
    fn weyl_jacobiator_form() {
        let lc = Metric::light_cone(3);
        for g00 in [rat(1, 1), rat(-5, 2)] {
            let g = lc.with_g00(g00).unwrap();
            let h = build_kappa_weyl_group(&g).unwrap();
            for al in 0..3 {
                for be in 0..3 {
                    for rho in 0..3 {
                        for sig in 0..3 {
                            let j = weyl_jacobiator(&h, al, be, rho, sig).unwrap();
                            assert_eq!(j, weyl_jacobi_form(&h, al, be, rho, sig, 1).unwrap());
                            if !j.is_zero() {
                                assert_ne!(j, weyl_jacobi_form(&h, al, be, rho, sig, -1).unwrap());
                            }
                        }
                    }
                }
            }
        }
        let h = build_kappa_weyl_group(&lc).unwrap();
        assert!(weyl_jacobiator(&h, 1, 0, 0, 1).unwrap().is_zero());
        let x = Generator::trans(0);
        assert!(jacobiator(&h, x, x, Generator::lorentz(1, 0)).unwrap().is_zero());
    }

    #[test]
    fn star_structure() {
        assert!(star_reality_check(&build_kappa_poincare_group(&Metric::minkowski(3)).unwrap()).unwrap().passed());
        assert!(star_reality_check(&build_kappa_weyl_group(&Metric::light_cone(3)).unwrap()).unwrap().passed());
        let r = gen(Generator::trans(1)).scale(&Scalar::i());
        assert_eq!(star(&r), r.neg());
    }

    #[test]
    fn quantization_matches_poisson() {
        for (kind, g) in [(GroupKind::Poincare, Metric::minkowski(3)), (GroupKind::Weyl, Metric::light_cone(3))] {
            let h = build_group(kind, &g, DEFAULT_ORDER).unwrap();
            let rep = quantization_consistency(&h).unwrap();
            assert!(rep.passed(), "{:?}", rep.mismatches);
        }
    }

    #[test]
    fn dilatation_free_limit_and_lorentz_sector() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(2);
        for g in [Metric::minkowski(3), Metric::random(3, &mut rng, false)] {
            let w = build_kappa_weyl_group(&g).unwrap();
            let p = build_kappa_poincare_group(&g).unwrap();
            assert!(weyl_reduces_to_poincare(&w, &p).unwrap());
            assert!(lorentz_sector_undeformed(&p) && lorentz_sector_undeformed(&w));
        }
    }
}
