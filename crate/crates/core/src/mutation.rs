//! Fixed catalogue of single sign flips used to check that every suite
//! notices a corrupted relation, coproduct tail or pairing entry.

use serde::Serialize;

use crate::duality::{pairing_well_defined, Pairing};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::metric::Metric;
use crate::poisson::GroupKind;
use crate::poly::{Monomial, Poly};
use crate::qalg::{axiom_suite_truncated, build_algebra};
use crate::qgroup::{build_group, hopf_axiom_suite};
use crate::report::SuiteReport;
use crate::scalar::Scalar;
use crate::series::Series;

const GROUP_ORDER: usize = 3;
const ALGEBRA_ORDER: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Site {
    /// Negate the right-hand side of a group commutation rule.
    GroupRelation(Generator, Generator),
    /// Negate the non-primitive part of a group coproduct.
    GroupCoproductTail(Generator),
    /// Negate the λ ≥ 1 part of an algebra commutation rule.
    AlgebraRelationTail(Generator, Generator),
    /// Negate the λ ≥ 1 part of an algebra coproduct.
    AlgebraCoproductTail(Generator),
    /// Negate one pairing table entry.
    PairingEntry(Generator, Generator),
}

#[derive(Clone, Debug, Serialize)]
pub struct Mutation {
    pub name: String,
    pub kind: GroupKind,
    pub dim: usize,
    pub site: Site,
}

#[derive(Clone, Debug, Serialize)]
pub struct MutationOutcome {
    pub name: String,
    pub caught: bool,
    /// Names of the checks that failed.
    pub detected_by: Vec<String>,
}

fn metric_for(kind: GroupKind, n: usize) -> Metric {
    match kind {
        GroupKind::Poincare => Metric::minkowski(n),
        GroupKind::Weyl => Metric::light_cone(n),
    }
}

/// Keeps the λ⁰ coefficient of every term and negates the rest.
fn flip_lambda_tail<M: Monomial>(p: &Poly<M>) -> Poly<M> {
    let mut out = Poly::zero(p.order());
    for (m, c) in p.terms() {
        let coeffs: Vec<Scalar> = c.coeffs().iter().enumerate().map(|(k, x)| if k == 0 { x.clone() } else { -x }).collect();
        out.add_term(m.clone(), Series::from_coeffs(coeffs, c.order()));
    }
    out
}

fn failed_checks(rep: &SuiteReport) -> Vec<String> {
    rep.checks.iter().filter(|c| !c.passed()).map(|c| c.name.clone()).collect()
}

impl Mutation {
    fn new(name: &str, kind: GroupKind, dim: usize, site: Site) -> Self {
        Self { name: name.to_string(), kind, dim, site }
    }

    /// Applies the flip to a fresh presentation and runs the matching suite.
    pub fn run(&self) -> Result<MutationOutcome> {
        let g = metric_for(self.kind, self.dim);
        let rep = match self.site {
            Site::GroupRelation(x, y) => {
                let mut h = build_group(self.kind, &g, GROUP_ORDER)?;
                let rule = h.hopf.relations.commutator_rule(x, y);
                if rule.is_zero() {
                    return Err(Error::Config(format!("{}: no rule for [{x}, {y}]", self.name)));
                }
                h.hopf.relations.set_commutator(x, y, rule.neg());
                hopf_axiom_suite(&h)?
            }
            Site::GroupCoproductTail(x) => {
                let mut h = build_group(self.kind, &g, GROUP_ORDER)?;
                let d = h.hopf.coproduct.get(&x).ok_or(Error::MissingImage(x))?;
                let mut out = Poly::zero(d.order());
                for (t, c) in d.terms() {
                    let primitive = t.0.iter().any(|w| w.is_empty());
                    out.add_term(t.clone(), if primitive { c.clone() } else { -c });
                }
                h.hopf.coproduct.insert(x, out);
                hopf_axiom_suite(&h)?
            }
            Site::AlgebraRelationTail(x, y) => {
                let mut a = build_algebra(self.kind, &g, ALGEBRA_ORDER)?;
                let rule = a.hopf.relations.commutator_rule(x, y);
                let flipped = flip_lambda_tail(&rule);
                if flipped == rule {
                    return Err(Error::Config(format!("{}: [{x}, {y}] has no λ tail", self.name)));
                }
                a.hopf.relations.set_commutator(x, y, flipped);
                axiom_suite_truncated(&a)?
            }
            Site::AlgebraCoproductTail(x) => {
                let mut a = build_algebra(self.kind, &g, ALGEBRA_ORDER)?;
                let d = a.hopf.coproduct.get(&x).ok_or(Error::MissingImage(x))?;
                let flipped = flip_lambda_tail(d);
                if &flipped == d {
                    return Err(Error::Config(format!("{}: Δ{x} has no λ tail", self.name)));
                }
                a.hopf.coproduct.insert(x, flipped);
                axiom_suite_truncated(&a)?
            }
            Site::PairingEntry(x, y) => {
                let grp = build_group(self.kind, &g, crate::duality::DEFAULT_ORDER)?;
                let alg = build_algebra(self.kind, &g, crate::duality::DEFAULT_ORDER)?;
                let mut p = Pairing::standard(self.kind, &g, crate::duality::DEFAULT_DEGREE, crate::duality::DEFAULT_ORDER);
                let v = p.entry(x, y);
                if v.is_zero() {
                    return Err(Error::Config(format!("{}: pairing entry <{x}, {y}> is zero", self.name)));
                }
                p.table.insert((x, y), -&v);
                pairing_well_defined(&p, &grp, &alg)?
            }
        };
        let detected_by = failed_checks(&rep);
        Ok(MutationOutcome { name: self.name.clone(), caught: !detected_by.is_empty(), detected_by })
    }
}

/// The fixed catalogue: group relations and coproducts at n = 2, algebra
/// relations and coproducts at n = 3, pairing entries at n = 2.
pub fn catalogue() -> Vec<Mutation> {
    use Generator::*;
    use GroupKind::*;
    let (l, a, m, p) = (Generator::lorentz, Generator::trans, |x: u8, y: u8| Rotation(x, y), Generator::momentum);
    vec![
        Mutation::new("group [a^0, a^1]", Poincare, 2, Site::GroupRelation(a(0), a(1))),
        Mutation::new("group [L^0_1, a^0]", Poincare, 2, Site::GroupRelation(l(0, 1), a(0))),
        Mutation::new("weyl group [L^1_0, a^1]", Weyl, 2, Site::GroupRelation(l(1, 0), a(1))),
        Mutation::new("group coproduct tail of a^1", Poincare, 2, Site::GroupCoproductTail(a(1))),
        Mutation::new("weyl group coproduct tail of a^0", Weyl, 2, Site::GroupCoproductTail(a(0))),
        Mutation::new("algebra [M^01, P_1] tail", Poincare, 3, Site::AlgebraRelationTail(m(0, 1), p(1))),
        Mutation::new("algebra [M^01, P_2] tail", Poincare, 3, Site::AlgebraRelationTail(m(0, 1), p(2))),
        Mutation::new("weyl algebra [D, P_0] tail", Weyl, 3, Site::AlgebraRelationTail(Dilatation, p(0))),
        Mutation::new("weyl algebra [D, P_1] tail", Weyl, 3, Site::AlgebraRelationTail(Dilatation, p(1))),
        Mutation::new("algebra coproduct tail of P_1", Poincare, 3, Site::AlgebraCoproductTail(p(1))),
        Mutation::new("algebra coproduct tail of M^01", Poincare, 3, Site::AlgebraCoproductTail(m(0, 1))),
        Mutation::new("weyl algebra coproduct tail of D", Weyl, 3, Site::AlgebraCoproductTail(Dilatation)),
        Mutation::new("pairing <a^0, P_0>", Poincare, 2, Site::PairingEntry(a(0), p(0))),
        Mutation::new("pairing <L^0_1, M^01>", Poincare, 2, Site::PairingEntry(l(0, 1), m(0, 1))),
        Mutation::new("weyl pairing <b, D>", Weyl, 2, Site::PairingEntry(BCoord, Dilatation)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_mutation_is_caught() {
        let cat = catalogue();
        assert!(cat.len() >= 10);
        for m in &cat {
            let out = m.run().unwrap();
            eprintln!("{} -> {:?}", out.name, out.detected_by);
            assert!(out.caught, "{} not caught", m.name);
        }
    }
}
