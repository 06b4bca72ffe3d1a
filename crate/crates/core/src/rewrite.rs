//! Normal ordering modulo commutation relations.
//!
//! A [`RelationSet`] stores, for every misordered adjacent pair `hi·lo`
//! (`hi > lo` in the generator order), the rule `hi·lo → lo·hi + rhs`, plus a
//! small table of contraction rules such as `e^b·e^{-b} → 1`. Rewriting swaps
//! misordered pairs or contracts until every word is sorted; each step lowers
//! (inversion count, length) lexicographically as long as every `rhs` only
//! contains words that are already sorted.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::poly::{Monomial, NCPoly, Poly, Tensor, TensorPoly, Word};
use crate::scalar::Scalar;
use crate::series::Series;

#[derive(Clone, Debug)]
pub struct RelationSet {
    order: usize,
    generators: BTreeSet<Generator>,
    swaps: BTreeMap<(Generator, Generator), NCPoly>,
    contractions: BTreeMap<(Generator, Generator), NCPoly>,
}

impl RelationSet {
    pub fn new(generators: impl IntoIterator<Item = Generator>, order: usize) -> Self {
        Self {
            order,
            generators: generators.into_iter().collect(),
            swaps: BTreeMap::new(),
            contractions: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.generators.iter().copied()
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.generators.contains(&g)
    }

    /// Records `[x, y] = rhs`. Either argument order is accepted; the rule is
    /// stored for the misordered pair. Pairs without a rule commute.
    pub fn set_commutator(&mut self, x: Generator, y: Generator, rhs: NCPoly) {
        match x.cmp(&y) {
            std::cmp::Ordering::Greater => {
                self.swaps.insert((x, y), rhs.truncated(self.order));
            }
            std::cmp::Ordering::Less => {
                self.swaps.insert((y, x), rhs.neg().truncated(self.order));
            }
            std::cmp::Ordering::Equal => {}
        }
    }

    /// `[x, y]` as stored (zero when the pair commutes).
    pub fn commutator_rule(&self, x: Generator, y: Generator) -> NCPoly {
        match x.cmp(&y) {
            std::cmp::Ordering::Greater => {
                self.swaps.get(&(x, y)).cloned().unwrap_or_else(|| NCPoly::zero(self.order))
            }
            std::cmp::Ordering::Less => self
                .swaps
                .get(&(y, x))
                .map(NCPoly::neg)
                .unwrap_or_else(|| NCPoly::zero(self.order)),
            std::cmp::Ordering::Equal => NCPoly::zero(self.order),
        }
    }

    pub fn set_contraction(&mut self, first: Generator, second: Generator, replacement: NCPoly) {
        self.contractions.insert((first, second), replacement.truncated(self.order));
    }

    /// Contraction rules as `(first, second, replacement)`.
    pub fn contractions(&self) -> impl Iterator<Item = (Generator, Generator, &NCPoly)> {
        self.contractions.iter().map(|(&(a, b), r)| (a, b, r))
    }

    /// All stored commutator rules as `(hi, lo, [hi, lo])`.
    pub fn rules(&self) -> impl Iterator<Item = (Generator, Generator, &NCPoly)> {
        self.swaps.iter().map(|(&(h, l), r)| (h, l, r))
    }

    pub fn rules_mut(&mut self) -> impl Iterator<Item = (&(Generator, Generator), &mut NCPoly)> {
        self.swaps.iter_mut()
    }

    /// Checks that every rule's right-hand side is already sorted and free of
    /// contractible pairs, which guarantees termination.
    pub fn validate(&self) -> Result<()> {
        for ((h, l), rhs) in self.swaps.iter().chain(&self.contractions) {
            for (w, _) in rhs.terms() {
                for g in w {
                    if !self.generators.contains(g) {
                        return Err(Error::UnknownGenerator(*g));
                    }
                }
                if !self.is_normal_word(w) {
                    return Err(Error::Internal(format!(
                        "rule for {h}*{l} has unsorted right-hand side word {}",
                        w.render()
                    )));
                }
            }
        }
        Ok(())
    }

    fn is_normal_word(&self, w: &Word) -> bool {
        w.windows(2)
            .all(|p| p[0] <= p[1] && !self.contractions.contains_key(&(p[0], p[1])))
    }

    /// Substitutes generators by scalars where `f` returns one; all other
    /// generators are kept. Used for specialisations such as `e^{±b} → 1`.
    pub fn specialize(&self, f: impl Fn(Generator) -> Option<Scalar>) -> Result<RelationSet> {
        let mut out = RelationSet::new(
            self.generators.iter().copied().filter(|g| f(*g).is_none()),
            self.order,
        );
        for ((h, l), rhs) in &self.swaps {
            if f(*h).is_some() || f(*l).is_some() {
                continue;
            }
            out.swaps.insert((*h, *l), substitute(rhs, &f));
        }
        Ok(out)
    }
}

/// Replaces generators by scalars where `f` returns one.
pub fn substitute(p: &NCPoly, f: &impl Fn(Generator) -> Option<Scalar>) -> NCPoly {
    let mut out = NCPoly::zero(p.order());
    for (w, c) in p.terms() {
        let mut factor = Scalar::one();
        let mut kept = Vec::new();
        for g in w {
            match f(*g) {
                Some(s) => factor = &factor * &s,
                None => kept.push(*g),
            }
        }
        out.add_term(kept, c.scale(&factor));
    }
    out
}

/// Which redex to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Algebra in which polynomials can be brought to normal form.
pub trait Algebra {
    type Mono: Monomial;
    fn unit(&self, order: usize) -> Poly<Self::Mono>;
    fn normalize(&mut self, p: &Poly<Self::Mono>) -> Result<Poly<Self::Mono>>;
}

/// Memoizing normal-form evaluator for one relation set. Owned by a single
/// computation; nothing is shared between callers.
pub struct Rewriter<'a> {
    rels: &'a RelationSet,
    strategy: Strategy,
    memo: HashMap<Word, Rc<NCPoly>>,
}

impl<'a> Rewriter<'a> {
    pub fn new(rels: &'a RelationSet) -> Self {
        Self::with_strategy(rels, Strategy::Leftmost)
    }

    pub fn with_strategy(rels: &'a RelationSet, strategy: Strategy) -> Self {
        Self { rels, strategy, memo: HashMap::new() }
    }

    pub fn relations(&self) -> &'a RelationSet {
        self.rels
    }

    fn find_redex(&self, w: &Word) -> Option<usize> {
        let hit = |i: usize| {
            let (x, y) = (w[i], w[i + 1]);
            x > y || self.rels.contractions.contains_key(&(x, y))
        };
        let n = w.len().saturating_sub(1);
        match self.strategy {
            Strategy::Leftmost => (0..n).find(|&i| hit(i)),
            Strategy::Rightmost => (0..n).rev().find(|&i| hit(i)),
        }
    }

    fn nf_word(&mut self, w: &Word) -> Rc<NCPoly> {
        if let Some(p) = self.memo.get(w) {
            return p.clone();
        }
        let order = self.rels.order;
        let result = Rc::new(match self.find_redex(w) {
            None => NCPoly::word(w.clone(), order),
            Some(i) => {
                let (x, y) = (w[i], w[i + 1]);
                let mut replacement = match self.rels.contractions.get(&(x, y)) {
                    Some(r) => r.clone(),
                    None => NCPoly::zero(order),
                };
                if !self.rels.contractions.contains_key(&(x, y)) {
                    replacement.add_term(vec![y, x], Series::one(order));
                    if let Some(rhs) = self.rels.swaps.get(&(x, y)) {
                        replacement = replacement.add(rhs);
                    }
                }
                let mut out = NCPoly::zero(order);
                for (mid, c) in replacement.terms() {
                    let mut nw = Vec::with_capacity(w.len() + mid.len());
                    nw.extend_from_slice(&w[..i]);
                    nw.extend_from_slice(mid);
                    nw.extend_from_slice(&w[i + 2..]);
                    let sub = self.nf_word(&nw);
                    out.add_scaled(&sub, c);
                }
                out
            }
        });
        self.memo.insert(w.clone(), result.clone());
        result
    }

    pub fn normal_form(&mut self, x: &NCPoly) -> Result<NCPoly> {
        for g in x.generators() {
            if !self.rels.contains(g) {
                return Err(Error::UnknownGenerator(g));
            }
        }
        let mut out = NCPoly::zero(x.order().min(self.rels.order));
        for (w, c) in x.terms() {
            let sub = self.nf_word(w);
            out.add_scaled(&sub, c);
        }
        Ok(out)
    }

    fn letters_commute(&self, u: &Word, v: &Word) -> bool {
        u.iter().all(|&a| {
            v.iter().all(|&b| {
                let key = if a > b { (a, b) } else { (b, a) };
                a == b
                    || (!self.rels.swaps.contains_key(&key)
                        && !self.rels.contractions.contains_key(&(a, b))
                        && !self.rels.contractions.contains_key(&(b, a)))
            })
        })
    }

    /// `normal_form(xy − yx)`, expanded word pair by word pair.
    pub fn commutator(&mut self, x: &NCPoly, y: &NCPoly) -> Result<NCPoly> {
        for g in x.generators().chain(y.generators()) {
            if !self.rels.contains(g) {
                return Err(Error::UnknownGenerator(g));
            }
        }
        let mut out = NCPoly::zero(x.order().min(y.order()).min(self.rels.order));
        for (u, c) in x.terms() {
            for (v, d) in y.terms() {
                if self.letters_commute(u, v) {
                    continue;
                }
                let diff = self.nf_word(&u.mul(v)).sub(&self.nf_word(&v.mul(u)));
                if !diff.is_zero() {
                    out.add_scaled(&diff, &(c * d));
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&mut self, x: &NCPoly, y: &NCPoly) -> Result<NCPoly> {
        self.normal_form(&x.mul(y))
    }

    /// Normal form of a tensor: each slot is normalized independently.
    pub fn normal_form_tensor(&mut self, x: &TensorPoly) -> Result<TensorPoly> {
        let mut out = TensorPoly::zero(x.order().min(self.rels.order));
        for (t, c) in x.terms() {
            let slots: Vec<NCPoly> = t
                .0
                .iter()
                .map(|w| self.normal_form(&NCPoly::word(w.clone(), c.order())))
                .collect::<Result<_>>()?;
            let refs: Vec<&NCPoly> = slots.iter().collect();
            out.add_scaled(&TensorPoly::tensor(&refs), c);
        }
        Ok(out)
    }
}

impl Algebra for Rewriter<'_> {
    type Mono = Word;
    fn unit(&self, order: usize) -> NCPoly {
        NCPoly::one(order)
    }
    fn normalize(&mut self, p: &NCPoly) -> Result<NCPoly> {
        self.normal_form(p)
    }
}

/// Tensor power of an algebra, one rewriter shared by all slots.
pub struct TensorAlgebra<'a> {
    pub inner: Rewriter<'a>,
    pub arity: usize,
}

impl<'a> TensorAlgebra<'a> {
    pub fn new(rels: &'a RelationSet, arity: usize) -> Self {
        Self { inner: Rewriter::new(rels), arity }
    }
}

impl Algebra for TensorAlgebra<'_> {
    type Mono = Tensor;
    fn unit(&self, order: usize) -> TensorPoly {
        TensorPoly::one_tensor(self.arity, order)
    }
    fn normalize(&mut self, p: &TensorPoly) -> Result<TensorPoly> {
        self.inner.normal_form_tensor(p)
    }
}

/// Normal form under `rels`; idempotent.
pub fn normal_form(x: &NCPoly, rels: &RelationSet) -> Result<NCPoly> {
    Rewriter::new(rels).normal_form(x)
}

/// `normal_form(xy - yx)`.
pub fn commutator(x: &NCPoly, y: &NCPoly, rels: &RelationSet) -> Result<NCPoly> {
    Rewriter::new(rels).commutator(x, y)
}

/// Truncated exponential `Σ_{m ≤ N} x^m / m!`. Every coefficient of `x` must
/// vanish at `λ^0`, so that `x^m = O(λ^m)`; the generators of `x` are assumed
/// to commute with each other.
pub fn exp_series(x: &NCPoly) -> Result<NCPoly> {
    let order = x.order();
    if x.terms().any(|(_, c)| !c.coeff(0).is_zero()) {
        return Err(Error::Precondition(
            "exp_series argument has a lambda^0 term".to_string(),
        ));
    }
    let mut out = NCPoly::one(order);
    let mut power = NCPoly::one(order);
    let mut factorial: i64 = 1;
    for m in 1..=order {
        power = power.mul(x);
        if power.is_zero() {
            break;
        }
        factorial *= m as i64;
        out = out.add(&power.scale(&Scalar::frac(1, factorial)));
    }
    Ok(out)
}

/// Extends `image` multiplicatively (or anti-multiplicatively) and linearly to
/// `x`, normal-ordering in the target after every product.
pub fn apply_hom<A: Algebra>(
    x: &NCPoly,
    image: &mut impl FnMut(Generator) -> Result<Poly<A::Mono>>,
    target: &mut A,
    anti: bool,
) -> Result<Poly<A::Mono>> {
    let order = x.order();
    let mut out = Poly::zero(order);
    let mut cache: HashMap<Generator, Poly<A::Mono>> = HashMap::new();
    for (w, c) in x.terms() {
        let mut acc = target.unit(order);
        let letters: Box<dyn Iterator<Item = &Generator>> =
            if anti { Box::new(w.iter().rev()) } else { Box::new(w.iter()) };
        for g in letters {
            let img = match cache.get(g) {
                Some(p) => p.clone(),
                None => {
                    let p = image(*g)?;
                    cache.insert(*g, p.clone());
                    p
                }
            };
            acc = target.normalize(&acc.mul(&img))?;
            if acc.is_zero() {
                break;
            }
        }
        out.add_scaled(&acc, c);
    }
    target.normalize(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    const N: usize = 3;

    fn a(m: u8) -> NCPoly {
        NCPoly::gen(Generator::TransCoord(m), N)
    }

    /// `[a^0, a^k] = i λ a^k`, two translation generators.
    fn translations() -> RelationSet {
        let mut r = RelationSet::new([Generator::TransCoord(0), Generator::TransCoord(1)], N);
        r.set_commutator(
            Generator::TransCoord(0),
            Generator::TransCoord(1),
            a(1).scale_series(&Series::monomial(Scalar::i(), 1, N)),
        );
        r
    }

    #[test]
    fn swaps_misordered_pair() {
        let r = translations();
        let nf = normal_form(&a(1).mul(&a(0)), &r).unwrap();
        let expected = a(0).mul(&a(1)).sub(&a(1).scale_series(&Series::monomial(Scalar::i(), 1, N)));
        assert_eq!(nf, expected);
    }

    #[test]
    fn unknown_generator_is_rejected() {
        let r = translations();
        let x = NCPoly::gen(Generator::TransCoord(2), N);
        assert!(matches!(normal_form(&x, &r), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn contraction_rule() {
        let mut r = RelationSet::new([Generator::ExpB(1), Generator::ExpB(-1)], N);
        r.set_contraction(Generator::ExpB(-1), Generator::ExpB(1), NCPoly::one(N));
        r.set_contraction(Generator::ExpB(1), Generator::ExpB(-1), NCPoly::one(N));
        let x = NCPoly::word(vec![Generator::ExpB(1), Generator::ExpB(-1)], N);
        assert_eq!(normal_form(&x, &r).unwrap(), NCPoly::one(N));
        let y = NCPoly::word(vec![Generator::ExpB(1), Generator::ExpB(1), Generator::ExpB(-1)], N);
        assert_eq!(normal_form(&y, &r).unwrap(), NCPoly::gen(Generator::ExpB(1), N));
    }

    #[test]
    fn exp_series_rejects_constant_term() {
        assert!(exp_series(&a(0)).is_err());
        assert_eq!(exp_series(&NCPoly::zero(N)).unwrap(), NCPoly::one(N));
    }

    #[test]
    fn leftmost_and_rightmost_agree() {
        let r = translations();
        let w = NCPoly::word(vec![Generator::TransCoord(1); 2].into_iter().chain([Generator::TransCoord(0); 2]).collect(), N);
        let left = Rewriter::with_strategy(&r, Strategy::Leftmost).normal_form(&w).unwrap();
        let right = Rewriter::with_strategy(&r, Strategy::Rightmost).normal_form(&w).unwrap();
        assert_eq!(left, right);
    }
}
