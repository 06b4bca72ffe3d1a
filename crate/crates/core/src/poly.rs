//! Noncommutative polynomials with series coefficients, and their tensor powers.

use std::collections::BTreeMap;
use std::fmt;

use crate::generator::Generator;
use crate::scalar::Scalar;
use crate::series::Series;

pub type Word = Vec<Generator>;

/// Monomial in a tensor power: one word per slot, multiplied slotwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tensor(pub Vec<Word>);

pub trait Monomial: Clone + Ord + fmt::Debug {
    fn mul(&self, rhs: &Self) -> Self;
    fn degree(&self) -> usize;
    fn render(&self) -> String;
}

fn render_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
}

impl Monomial for Word {
    fn mul(&self, rhs: &Self) -> Self {
        let mut w = Vec::with_capacity(self.len() + rhs.len());
        w.extend_from_slice(self);
        w.extend_from_slice(rhs);
        w
    }

    fn degree(&self) -> usize {
        self.len()
    }

    fn render(&self) -> String {
        render_word(self)
    }
}

impl Monomial for Tensor {
    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.0.len(), rhs.0.len(), "tensor arity mismatch");
        Tensor(self.0.iter().zip(&rhs.0).map(|(a, b)| a.mul(b)).collect())
    }

    fn degree(&self) -> usize {
        self.0.iter().map(Vec::len).sum()
    }

    fn render(&self) -> String {
        self.0.iter().map(render_word).collect::<Vec<_>>().join(" (x) ")
    }
}

/// Finite linear combination of monomials; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<M: Monomial> {
    order: usize,
    terms: BTreeMap<M, Series>,
}

pub type NCPoly = Poly<Word>;
pub type TensorPoly = Poly<Tensor>;

impl<M: Monomial> Poly<M> {
    pub fn zero(order: usize) -> Self {
        Self { order, terms: BTreeMap::new() }
    }

    pub fn term(m: M, coeff: Series) -> Self {
        let order = coeff.order();
        let mut p = Self::zero(order);
        p.add_term(m, coeff);
        p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &Series)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (M, Series)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &M) -> Series {
        self.terms.get(m).cloned().unwrap_or_else(|| Series::zero(self.order))
    }

    pub fn add_term(&mut self, m: M, coeff: Series) {
        let coeff = if coeff.order() > self.order { coeff.truncate(self.order) } else { coeff };
        if coeff.order() < self.order {
            self.set_order(coeff.order());
        }
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                c.add_assign_ref(&coeff);
                if c.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &Series) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    /// Lowers the truncation order, discarding higher λ-powers.
    pub fn set_order(&mut self, order: usize) {
        if order >= self.order {
            return;
        }
        self.order = order;
        let terms = std::mem::take(&mut self.terms);
        for (m, c) in terms {
            let c = c.truncate(order);
            if !c.is_zero() {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn truncated(&self, order: usize) -> Self {
        let mut p = self.clone();
        p.set_order(order);
        p
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.order);
        for (m, s) in &self.terms {
            out.add_term(m.clone(), s.scale(c));
        }
        out
    }

    pub fn scale_series(&self, c: &Series) -> Self {
        let mut out = Self::zero(self.order.min(c.order()));
        out.add_scaled(self, c);
        out
    }

    /// Multiplies every coefficient by `λ^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order);
        for (m, s) in &self.terms {
            out.add_term(m.clone(), s.shift_up(k));
        }
        out
    }

    /// Divides by `λ`; `None` if some coefficient has a nonzero `λ^0` part.
    pub fn shift_down(&self) -> Option<Self> {
        let mut out = Self::zero(self.order.saturating_sub(1));
        for (m, s) in &self.terms {
            out.add_term(m.clone(), s.shift_down()?);
        }
        Some(out)
    }

    /// Coefficientwise complex conjugation.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (m, s) in &self.terms {
            out.add_term(m.clone(), s.conj());
        }
        out
    }

    pub fn map_monomials(&self, f: impl Fn(&M) -> M) -> Self {
        let mut out = Self::zero(self.order);
        for (m, s) in &self.terms {
            out.add_term(f(m), s.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.order.min(rhs.order));
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let c = ca * cb;
                if !c.is_zero() {
                    out.add_term(a.mul(b), c);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::int(-1))
    }

    /// Lowest λ-power carrying a nonzero coefficient anywhere in the polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(Series::valuation).min()
    }

    /// Highest word degree among the terms.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The `λ^k` slice as a polynomial with constant coefficients.
    pub fn lambda_part(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order);
        for (m, s) in &self.terms {
            out.add_term(m.clone(), Series::constant(s.coeff(k), self.order));
        }
        out
    }

    /// Canonical text form: sorted monomials, explicit λ powers (`l`).
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({c})*{}", m.render()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl<M: Monomial> fmt::Display for Poly<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl NCPoly {
    pub fn one(order: usize) -> Self {
        Self::constant(Scalar::one(), order)
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        Self::term(Vec::new(), Series::constant(c, order))
    }

    pub fn gen(g: Generator, order: usize) -> Self {
        Self::term(vec![g], Series::one(order))
    }

    pub fn word(w: Word, order: usize) -> Self {
        Self::term(w, Series::one(order))
    }

    /// The constant (empty-word) coefficient.
    pub fn constant_part(&self) -> Series {
        self.coeff(&Vec::new())
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.terms.keys().flat_map(|w| w.iter().copied())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(self.order);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

impl TensorPoly {
    pub fn one_tensor(arity: usize, order: usize) -> Self {
        Self::term(Tensor(vec![Vec::new(); arity]), Series::one(order))
    }

    /// `x_1 ⊗ x_2 ⊗ …` of ordinary polynomials.
    pub fn tensor(factors: &[&NCPoly]) -> Self {
        let order = factors.iter().map(|p| p.order()).min().unwrap_or(0);
        let mut acc: Vec<(Vec<Word>, Series)> = vec![(Vec::new(), Series::one(order))];
        for f in factors {
            let mut next = Vec::new();
            for (words, c) in &acc {
                for (w, cw) in f.terms() {
                    let coeff = c * cw;
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut ws = words.clone();
                    ws.push(w.clone());
                    next.push((ws, coeff));
                }
            }
            acc = next;
        }
        let mut out = Self::zero(order);
        for (ws, c) in acc {
            out.add_term(Tensor(ws), c);
        }
        out
    }

    /// Places `x` in slot `slot` of an `arity`-fold tensor, units elsewhere.
    pub fn embed(x: &NCPoly, slot: usize, arity: usize) -> Self {
        let mut out = Self::zero(x.order());
        for (w, c) in x.terms() {
            let mut ws = vec![Vec::new(); arity];
            ws[slot] = w.clone();
            out.add_term(Tensor(ws), c.clone());
        }
        out
    }

    pub fn arity(&self) -> Option<usize> {
        self.terms.keys().next().map(|t| t.0.len())
    }

    /// Multiplies all slots together: `m(x ⊗ y) = xy`.
    pub fn multiply_out(&self) -> NCPoly {
        let mut out = NCPoly::zero(self.order);
        for (t, c) in self.terms() {
            out.add_term(t.0.concat(), c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(m: u8) -> NCPoly {
        NCPoly::gen(Generator::TransCoord(m), 3)
    }

    #[test]
    fn zero_terms_are_dropped() {
        let x = a(0).sub(&a(0));
        assert!(x.is_zero());
        assert_eq!(x.render(), "0");
    }

    #[test]
    fn multiplication_concatenates() {
        let p = a(1).mul(&a(0));
        assert_eq!(p.render(), "(1)*a^1*a^0");
    }

    #[test]
    fn tensor_product_and_multiply_out() {
        let t = TensorPoly::tensor(&[&a(1), &a(0)]);
        assert_eq!(t.render(), "(1)*a^1 (x) a^0");
        assert_eq!(t.multiply_out(), a(1).mul(&a(0)));
        let e = TensorPoly::embed(&a(2), 1, 3);
        assert_eq!(e.render(), "(1)*1 (x) a^2 (x) 1");
    }

    #[test]
    fn lambda_slicing() {
        let mut p = a(0);
        p.add_term(vec![Generator::TransCoord(1)], Series::monomial(Scalar::i(), 2, 3));
        assert_eq!(p.valuation(), Some(0));
        assert_eq!(p.lambda_part(2).render(), "(i)*a^1");
        let q = p.shift_up(1);
        assert_eq!(q.valuation(), Some(1));
        assert_eq!(q.shift_down().unwrap().order(), 2);
    }
}
