//! Generators of the function algebras and enveloping algebras.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A single algebra generator. Indices run over `0..n`.
///
/// The total order used for normal ordering is fixed here: on the group side
/// `Λ < a < b < e^{∓b}`, on the algebra side `D < M (lex) < P_1 < … < P_{n-1} < P_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// `Λ^μ_ν`
    LorentzEntry(u8, u8),
    /// `a^μ`
    TransCoord(u8),
    /// `b`
    BCoord,
    /// `e^{±b}`
    ExpB(i8),
    /// `D`
    Dilatation,
    /// `M^{μν}` (or `M_{μν}` on the classical side) with `μ < ν`.
    Rotation(u8, u8),
    /// `P_μ`
    Momentum(u8),
}

impl Generator {
    fn sort_key(&self) -> (u8, u8, u8) {
        match *self {
            Generator::LorentzEntry(m, n) => (0, m, n),
            Generator::TransCoord(m) => (1, m, 0),
            Generator::BCoord => (2, 0, 0),
            Generator::ExpB(s) => (3, if s < 0 { 0 } else { 1 }, 0),
            Generator::Dilatation => (4, 0, 0),
            Generator::Rotation(m, n) => (5, m, n),
            Generator::Momentum(m) => (6, if m == 0 { u8::MAX } else { m }, 0),
        }
    }

    /// Rotation generator for an arbitrary index pair, with the sign needed to
    /// bring it into canonical `μ < ν` form. `None` when `μ == ν`.
    pub fn rotation(mu: usize, nu: usize) -> Option<(i64, Generator)> {
        match mu.cmp(&nu) {
            Ordering::Less => Some((1, Generator::Rotation(mu as u8, nu as u8))),
            Ordering::Greater => Some((-1, Generator::Rotation(nu as u8, mu as u8))),
            Ordering::Equal => None,
        }
    }

    pub fn lorentz(mu: usize, nu: usize) -> Generator {
        Generator::LorentzEntry(mu as u8, nu as u8)
    }

    pub fn trans(mu: usize) -> Generator {
        Generator::TransCoord(mu as u8)
    }

    pub fn momentum(mu: usize) -> Generator {
        Generator::Momentum(mu as u8)
    }

    /// Largest index appearing in the generator, if any.
    pub fn max_index(&self) -> Option<usize> {
        match *self {
            Generator::LorentzEntry(m, n) | Generator::Rotation(m, n) => Some(m.max(n) as usize),
            Generator::TransCoord(m) | Generator::Momentum(m) => Some(m as usize),
            _ => None,
        }
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::LorentzEntry(m, n) => write!(f, "L^{m}_{n}"),
            Generator::TransCoord(m) => write!(f, "a^{m}"),
            Generator::BCoord => write!(f, "b"),
            Generator::ExpB(s) if s < 0 => write!(f, "e^-b"),
            Generator::ExpB(_) => write!(f, "e^b"),
            Generator::Dilatation => write!(f, "D"),
            Generator::Rotation(m, n) => write!(f, "M^{m}{n}"),
            Generator::Momentum(m) => write!(f, "P_{m}"),
        }
    }
}
