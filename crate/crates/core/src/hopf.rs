//! Hopf structure maps on a presented algebra and the generator-level axiom checks.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::poly::{NCPoly, Tensor, TensorPoly, Word};
use crate::report::Check;
use crate::rewrite::{apply_hom, RelationSet, Rewriter, TensorAlgebra};
use crate::scalar::Scalar;
use crate::series::Series;

/// Relations plus Δ, ε, S given on generators.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub relations: RelationSet,
    pub coproduct: BTreeMap<Generator, TensorPoly>,
    pub counit: BTreeMap<Generator, Scalar>,
    pub antipode: BTreeMap<Generator, NCPoly>,
}

/// Decides whether a residual counts as zero (for instance modulo constraints).
pub type ZeroTest<'a> = &'a (dyn Fn(&NCPoly) -> bool + Sync);

pub type TensorZeroTest<'a> = &'a (dyn Fn(&TensorPoly) -> bool + Sync);

pub fn exact_zero(p: &NCPoly) -> bool {
    p.is_zero()
}

pub fn exact_zero_tensor(p: &TensorPoly) -> bool {
    p.is_zero()
}

impl HopfData {
    pub fn order(&self) -> usize {
        self.relations.order()
    }

    pub fn generators(&self) -> Vec<Generator> {
        self.relations.generators().collect()
    }

    pub fn coproduct_of(&self, x: &NCPoly, target: &mut TensorAlgebra) -> Result<TensorPoly> {
        apply_hom(
            x,
            &mut |g| self.coproduct.get(&g).cloned().ok_or(Error::MissingImage(g)),
            target,
            false,
        )
    }

    pub fn counit_of_word(&self, w: &Word) -> Result<Scalar> {
        let mut acc = Scalar::one();
        for g in w {
            let e = self.counit.get(g).ok_or(Error::MissingImage(*g))?;
            acc = &acc * e;
        }
        Ok(acc)
    }

    pub fn counit_of(&self, x: &NCPoly) -> Result<Series> {
        let mut acc = Series::zero(x.order());
        for (w, c) in x.terms() {
            acc.add_assign_ref(&c.scale(&self.counit_of_word(w)?));
        }
        Ok(acc)
    }

    pub fn antipode_of(&self, x: &NCPoly, rw: &mut Rewriter) -> Result<NCPoly> {
        apply_hom(x, &mut |g| self.antipode.get(&g).cloned().ok_or(Error::MissingImage(g)), rw, true)
    }

    /// `m(S ⊗ id)Δx` (`left`) or `m(id ⊗ S)Δx`.
    pub fn antipode_contraction(&self, x: Generator, left: bool, rw: &mut Rewriter) -> Result<NCPoly> {
        let dx = self.coproduct.get(&x).ok_or(Error::MissingImage(x))?;
        let mut out = NCPoly::zero(dx.order());
        for (t, c) in dx.terms() {
            let (w0, w1) = (NCPoly::word(t.0[0].clone(), c.order()), NCPoly::word(t.0[1].clone(), c.order()));
            let prod = if left {
                self.antipode_of(&w0, rw)?.mul(&w1)
            } else {
                w0.mul(&self.antipode_of(&w1, rw)?)
            };
            out.add_scaled(&rw.normal_form(&prod)?, c);
        }
        Ok(out)
    }
}

/// Replaces slot `slot` of every tensor term by the tensor `f(word)`.
pub fn expand_slot(
    x: &TensorPoly,
    slot: usize,
    f: &mut impl FnMut(&Word) -> Result<TensorPoly>,
) -> Result<TensorPoly> {
    let mut out = TensorPoly::zero(x.order());
    for (t, c) in x.terms() {
        let image = f(&t.0[slot])?;
        for (ti, ci) in image.terms() {
            let mut slots: Vec<Word> = t.0[..slot].to_vec();
            slots.extend(ti.0.iter().cloned());
            slots.extend(t.0[slot + 1..].iter().cloned());
            out.add_term(Tensor(slots), c * ci);
        }
    }
    Ok(out)
}

fn lowest_order_tensor(p: &TensorPoly) -> Option<usize> {
    p.valuation()
}

/// All unordered generator pairs `x < y`.
fn pairs(gens: &[Generator]) -> Vec<(Generator, Generator)> {
    let mut out = Vec::new();
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            out.push((x, y));
        }
    }
    out
}

/// `[Δx, Δy] = Δ([x, y])` for every generator pair and every contraction rule.
pub fn check_coproduct_homomorphism(h: &HopfData, zero: TensorZeroTest) -> Result<Check> {
    let mut check = Check::new("coproduct_homomorphism");
    let order = h.order();
    let mut ta = TensorAlgebra::new(&h.relations, 2);
    for (x, y) in pairs(&h.generators()) {
        let dx = &h.coproduct[&x];
        let dy = &h.coproduct[&y];
        let lhs = ta.inner.normal_form_tensor(&dx.mul(dy).sub(&dy.mul(dx)))?;
        let rhs = h.coproduct_of(&h.relations.commutator_rule(x, y), &mut ta)?;
        let res = lhs.sub(&rhs).truncated(order);
        if zero(&res) {
            check.pass();
        } else {
            check.fail(format!("[{x}, {y}]"), res.render(), lowest_order_tensor(&res));
        }
    }
    for (a, b, repl) in h.relations.contractions() {
        let lhs = ta.inner.normal_form_tensor(&h.coproduct[&a].mul(&h.coproduct[&b]))?;
        let res = lhs.sub(&h.coproduct_of(repl, &mut ta)?);
        if res.is_zero() {
            check.pass();
        } else {
            check.fail(format!("{a}*{b}"), res.render(), lowest_order_tensor(&res));
        }
    }
    Ok(check)
}

/// `[x,[y,z]] + [z,[x,y]] + [y,[z,x]]` for generators, using the stored rules.
pub fn jacobiator(rels: &RelationSet, rw: &mut Rewriter, x: Generator, y: Generator, z: Generator) -> Result<NCPoly> {
    let o = rels.order();
    let g = |v| NCPoly::gen(v, o);
    Ok(rw
        .commutator(&g(x), &rels.commutator_rule(y, z))?
        .add(&rw.commutator(&g(z), &rels.commutator_rule(x, y))?)
        .add(&rw.commutator(&g(y), &rels.commutator_rule(z, x))?))
}

/// Jacobi identity on every triple of distinct generators.
pub fn check_jacobi(rels: &RelationSet, zero: ZeroTest) -> Result<Check> {
    let mut check = Check::new("jacobi");
    let mut rw = Rewriter::new(rels);
    let gens: Vec<Generator> = rels.generators().collect();
    for (i, &x) in gens.iter().enumerate() {
        for (j, &y) in gens.iter().enumerate().skip(i + 1) {
            for &z in &gens[j + 1..] {
                let res = jacobiator(rels, &mut rw, x, y, z)?;
                if zero(&res) {
                    check.pass();
                } else {
                    check.fail(format!("({x}, {y}, {z})"), res.render(), res.valuation());
                }
            }
        }
    }
    Ok(check)
}

/// `(Δ ⊗ id)Δ = (id ⊗ Δ)Δ` on generators.
pub fn check_coassociativity(h: &HopfData) -> Result<Check> {
    let mut check = Check::new("coassociativity");
    let mut ta2 = TensorAlgebra::new(&h.relations, 2);
    let mut ta3 = TensorAlgebra::new(&h.relations, 3);
    for x in h.generators() {
        let dx = &h.coproduct[&x];
        let mut delta_word = |w: &Word| h.coproduct_of(&NCPoly::word(w.clone(), dx.order()), &mut ta2);
        let left = expand_slot(dx, 0, &mut delta_word)?;
        let right = expand_slot(dx, 1, &mut delta_word)?;
        use crate::rewrite::Algebra;
        let res = ta3.normalize(&left.sub(&right))?;
        if res.is_zero() {
            check.pass();
        } else {
            check.fail(x.to_string(), res.render(), lowest_order_tensor(&res));
        }
    }
    Ok(check)
}

fn single_slot(t: &TensorPoly) -> NCPoly {
    let mut out = NCPoly::zero(t.order());
    for (m, c) in t.terms() {
        out.add_term(m.0[0].clone(), c.clone());
    }
    out
}

/// `(ε ⊗ id)Δx = x = (id ⊗ ε)Δx` on generators.
pub fn check_counit(h: &HopfData) -> Result<Check> {
    let mut check = Check::new("counit");
    let mut rw = Rewriter::new(&h.relations);
    for x in h.generators() {
        let dx = &h.coproduct[&x];
        let order = dx.order();
        let mut eps = |w: &Word| -> Result<TensorPoly> {
            Ok(TensorPoly::term(Tensor(Vec::new()), Series::constant(h.counit_of_word(w)?, order)))
        };
        for slot in [0, 1] {
            let reduced = single_slot(&expand_slot(dx, slot, &mut eps)?);
            let res = rw.normal_form(&reduced)?.sub(&NCPoly::gen(x, order));
            let side = if slot == 0 { "left" } else { "right" };
            if res.is_zero() {
                check.pass();
            } else {
                check.fail(format!("{side} {x}"), res.render(), res.valuation());
            }
        }
    }
    Ok(check)
}

/// `m(S ⊗ id)Δx = ε(x)1 = m(id ⊗ S)Δx` on generators.
pub fn check_antipode(h: &HopfData, zero: ZeroTest) -> Result<Check> {
    let mut check = Check::new("antipode");
    let mut rw = Rewriter::new(&h.relations);
    for x in h.generators() {
        let order = h.coproduct[&x].order();
        let unit = NCPoly::constant(h.counit[&x].clone(), order);
        for left in [true, false] {
            let res = h.antipode_contraction(x, left, &mut rw)?.sub(&unit);
            let side = if left { "m(S*id)" } else { "m(id*S)" };
            if zero(&res) {
                check.pass();
            } else {
                check.fail(format!("{side} {x}"), res.render(), res.valuation());
            }
        }
    }
    Ok(check)
}

/// `ε([x, y]) = 0` and `ε` respects contractions.
pub fn check_counit_relations(h: &HopfData) -> Result<Check> {
    let mut check = Check::new("counit_relations");
    for (x, y) in pairs(&h.generators()) {
        let e = h.counit_of(&h.relations.commutator_rule(x, y))?;
        if e.is_zero() {
            check.pass();
        } else {
            check.fail(format!("[{x}, {y}]"), e.to_string(), e.valuation());
        }
    }
    for (a, b, repl) in h.relations.contractions() {
        let e = &Series::constant(&h.counit[&a] * &h.counit[&b], repl.order()) - &h.counit_of(repl)?;
        if e.is_zero() {
            check.pass();
        } else {
            check.fail(format!("{a}*{b}"), e.to_string(), e.valuation());
        }
    }
    Ok(check)
}

/// `S([x, y]) = [S(y), S(x)]` and `S` respects contractions in reversed order.
pub fn check_antipode_antihomomorphism(h: &HopfData, zero: ZeroTest) -> Result<Check> {
    let mut check = Check::new("antipode_antihomomorphism");
    let mut rw = Rewriter::new(&h.relations);
    for (x, y) in pairs(&h.generators()) {
        let (sx, sy) = (&h.antipode[&x], &h.antipode[&y]);
        let lhs = rw.commutator(sy, sx)?;
        let rhs = h.antipode_of(&h.relations.commutator_rule(x, y), &mut rw)?;
        let res = lhs.sub(&rhs);
        if zero(&res) {
            check.pass();
        } else {
            check.fail(format!("[{x}, {y}]"), res.render(), res.valuation());
        }
    }
    for (a, b, repl) in h.relations.contractions() {
        let lhs = rw.mul(&h.antipode[&b], &h.antipode[&a])?;
        let res = lhs.sub(&h.antipode_of(repl, &mut rw)?);
        if zero(&res) {
            check.pass();
        } else {
            check.fail(format!("{a}*{b}"), res.render(), res.valuation());
        }
    }
    Ok(check)
}
