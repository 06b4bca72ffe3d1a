//! Coordinate rings of the Poincaré and Weyl groups, their invariant vector
//! fields, and the Sklyanin bracket induced by the r-matrix.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::generator::Generator;
use crate::liealg::{build_poincare, build_weyl, Label, LieAlgebraData};
use crate::linsolve::solve;
use crate::metric::{delta, Metric};
use crate::ortho;
use crate::report::Check;
use crate::rmatrix::build_r;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Poincare,
    Weyl,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Poincare => write!(f, "poincare"),
            GroupKind::Weyl => write!(f, "weyl"),
        }
    }
}

/// Commutative monomial; `e^b` is stored under `ExpB(1)` with a signed exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordMono(BTreeMap<Generator, i32>);

fn exp_key(g: Generator) -> (Generator, i32) {
    match g {
        Generator::ExpB(s) => (Generator::ExpB(1), if s < 0 { -1 } else { 1 }),
        other => (other, 1),
    }
}

impl CoordMono {
    fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (g, k) in &other.0 {
            let e = m.entry(*g).or_insert(0);
            *e += k;
            if *e == 0 {
                m.remove(g);
            }
        }
        CoordMono(m)
    }

    fn render(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|(g, k)| if *k == 1 { g.to_string() } else { format!("{g}^{k}") })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn exponents(&self) -> &BTreeMap<Generator, i32> {
        &self.0
    }

    pub fn from_exponents(mut e: BTreeMap<Generator, i32>) -> Self {
        e.retain(|_, k| *k != 0);
        CoordMono(e)
    }
}

/// Polynomial in commuting coordinates (Laurent in `e^b`) with Gaussian-rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoordPoly {
    terms: BTreeMap<CoordMono, Scalar>,
}

impl CoordPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(CoordMono::default(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn var(g: Generator) -> Self {
        let (key, e) = exp_key(g);
        let mut m = BTreeMap::new();
        m.insert(key, e);
        let mut p = Self::zero();
        p.add_term(CoordMono(m), Scalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoordMono, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: CoordMono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    /// `c` with `self = c · other`, when exactly proportional and nonzero.
    pub fn ratio_to(&self, other: &Self) -> Option<Scalar> {
        let (m, v) = other.terms.iter().next()?;
        let c = self.terms.get(m)?.clone() / v.clone();
        if self.sub(&other.scale(&c)).is_zero() {
            Some(c)
        } else {
            None
        }
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({c})*{}", m.render()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for CoordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A derivation given by its values on the coordinate generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    images: BTreeMap<Generator, CoordPoly>,
}

impl Derivation {
    pub fn set(&mut self, g: Generator, image: CoordPoly) {
        let (key, _) = exp_key(g);
        if !image.is_zero() {
            self.images.insert(key, image);
        }
    }

    pub fn image(&self, g: Generator) -> CoordPoly {
        match g {
            Generator::ExpB(s) if s < 0 => {
                // d(e^{-b}) = -e^{-2b} d(e^b)
                let base = self.image(Generator::ExpB(1));
                let mut m = BTreeMap::new();
                m.insert(Generator::ExpB(1), -2);
                let mut f = CoordPoly::zero();
                f.add_term(CoordMono(m), Scalar::int(-1));
                base.mul(&f)
            }
            other => self.images.get(&exp_key(other).0).cloned().unwrap_or_default(),
        }
    }

    /// Leibniz extension.
    pub fn apply(&self, p: &CoordPoly) -> CoordPoly {
        let mut out = CoordPoly::zero();
        for (m, c) in p.terms() {
            for (g, k) in &m.0 {
                let img = match self.images.get(g) {
                    Some(i) => i,
                    None => continue,
                };
                let mut rest = m.0.clone();
                let e = rest.entry(*g).or_insert(0);
                *e -= 1;
                if *e == 0 {
                    rest.remove(g);
                }
                let mut f = CoordPoly::zero();
                f.add_term(CoordMono(rest), c.scale(&crate::scalar::rat_int(*k as i64)));
                out = out.add(&f.mul(img));
            }
        }
        out
    }
}

/// One family of invariant fields, labelled `X^{αβ}` (`M(α,β)`), `X^α` (`P(α)`), and `X` (`D`).
#[derive(Clone, Debug)]
pub struct FieldFamily {
    pub labels: Vec<Label>,
    pub fields: Vec<Derivation>,
}

impl FieldFamily {
    pub fn get(&self, l: Label) -> Option<&Derivation> {
        self.labels.iter().position(|&x| x == l).map(|i| &self.fields[i])
    }
}

/// Independent coordinates of the group.
pub fn coordinates(kind: GroupKind, n: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for mu in 0..n {
        for nu in 0..n {
            out.push(Generator::lorentz(mu, nu));
        }
    }
    out.extend((0..n).map(Generator::trans));
    if kind == GroupKind::Weyl {
        out.push(Generator::BCoord);
        out.push(Generator::ExpB(1));
    }
    out
}

fn field_labels(kind: GroupKind, n: usize) -> Vec<Label> {
    let mut out = Vec::new();
    if kind == GroupKind::Weyl {
        out.push(Label::D);
    }
    for a in 0..n {
        for b in a + 1..n {
            out.push(Label::M(a as u8, b as u8));
        }
    }
    out.extend((0..n).map(|a| Label::P(a as u8)));
    out
}

fn lam(mu: usize, nu: usize) -> CoordPoly {
    CoordPoly::var(Generator::lorentz(mu, nu))
}

/// `Λ^{μα} = Λ^μ_γ g^{γα}`.
fn lam_up(g: &Metric, mu: usize, alpha: usize) -> CoordPoly {
    let mut out = CoordPoly::zero();
    for gamma in 0..g.dim() {
        out = out.add(&lam(mu, gamma).scale(&g.gi(gamma, alpha)));
    }
    out
}

fn exp_b(kind: GroupKind) -> CoordPoly {
    match kind {
        GroupKind::Poincare => CoordPoly::one(),
        GroupKind::Weyl => CoordPoly::var(Generator::ExpB(1)),
    }
}

/// Left- and right-invariant fields, with lowered-coordinate derivatives
/// expanded through the metric.
pub fn invariant_fields(kind: GroupKind, g: &Metric) -> (FieldFamily, FieldFamily) {
    let n = g.dim();
    let labels = field_labels(kind, n);
    let e = exp_b(kind);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &l in &labels {
        let mut xl = Derivation::default();
        let mut xr = Derivation::default();
        match l {
            Label::M(a, b) => {
                let (a, b) = (a as usize, b as usize);
                for mu in 0..n {
                    for nu in 0..n {
                        let vl = lam_up(g, mu, a)
                            .scale(&delta(b, nu))
                            .sub(&lam_up(g, mu, b).scale(&delta(a, nu)));
                        xl.set(Generator::lorentz(mu, nu), vl);
                        let vr = lam(b, nu).scale(&g.gi(mu, a)).sub(&lam(a, nu).scale(&g.gi(mu, b)));
                        xr.set(Generator::lorentz(mu, nu), vr);
                    }
                    let ar = CoordPoly::var(Generator::trans(b))
                        .scale(&g.gi(a, mu))
                        .sub(&CoordPoly::var(Generator::trans(a)).scale(&g.gi(b, mu)));
                    xr.set(Generator::trans(mu), ar);
                }
            }
            Label::P(a) => {
                let a = a as usize;
                for mu in 0..n {
                    xl.set(Generator::trans(mu), e.mul(&lam_up(g, mu, a)));
                    xr.set(Generator::trans(mu), CoordPoly::constant(g.gi(a, mu)));
                }
            }
            Label::D => {
                xl.set(Generator::ExpB(1), CoordPoly::var(Generator::ExpB(1)));
                xl.set(Generator::BCoord, CoordPoly::one());
                for mu in 0..n {
                    xr.set(Generator::trans(mu), CoordPoly::var(Generator::trans(mu)));
                }
                xr.set(Generator::ExpB(1), CoordPoly::var(Generator::ExpB(1)));
                xr.set(Generator::BCoord, CoordPoly::one());
            }
        }
        left.push(xl);
        right.push(xr);
    }
    (
        FieldFamily { labels: labels.clone(), fields: left },
        FieldFamily { labels, fields: right },
    )
}

/// Overall factor in front of `Σ_{A,B} r̃^{AB}(X^R_A f X^R_B h − X^L_A f X^L_B h)`,
/// where the sum runs over all ordered pairs of field labels and `r̃` is the
/// λ-coefficient of `r` rewritten in the field basis (`M = iX`, `P = X`).
/// Fixed by matching `{Λ, a}` against the closed coordinate brackets;
/// [`calibrate`] recomputes it from scratch.
pub const SKLYANIN_NORMALIZATION: i64 = -1;

/// Expansion of a lower-index Lie algebra element label in the field basis.
fn label_in_fields(g: &Metric, l: Label) -> Vec<(Label, Scalar)> {
    let n = g.dim();
    match l {
        Label::M(mu, nu) => {
            // M_{μν} = i g_{μα} g_{νβ} X^{αβ}
            let (mu, nu) = (mu as usize, nu as usize);
            let mut acc: BTreeMap<Label, Scalar> = BTreeMap::new();
            for a in 0..n {
                for b in 0..n {
                    let Some((sign, Generator::Rotation(x, y))) = Generator::rotation(a, b) else {
                        continue;
                    };
                    let c = (&Scalar::i() * &(&g.g(mu, a) * &g.g(nu, b))).scale(&crate::scalar::rat_int(sign));
                    *acc.entry(Label::M(x, y)).or_insert_with(Scalar::zero) += &c;
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        }
        Label::P(mu) => (0..n)
            .map(|b| (Label::P(b as u8), g.g(mu as usize, b)))
            .filter(|(_, c)| !c.is_zero())
            .collect(),
        Label::D => vec![(Label::D, Scalar::i())],
    }
}

#[derive(Clone, Debug)]
pub struct PoissonStructure {
    pub kind: GroupKind,
    pub metric: Metric,
    /// λ-coefficient of `r` over ordered pairs of field labels; antisymmetric.
    pub r_fields: BTreeMap<(Label, Label), Scalar>,
    pub left: FieldFamily,
    pub right: FieldFamily,
    pub normalization: Scalar,
}

impl PoissonStructure {
    pub fn new(kind: GroupKind, g: &Metric) -> Result<Self> {
        let alg = match kind {
            GroupKind::Poincare => build_poincare(g),
            GroupKind::Weyl => build_weyl(g),
        };
        let r = build_r(g, &alg)?;
        let mut r_fields: BTreeMap<(Label, Label), Scalar> = BTreeMap::new();
        for (labels, c) in &r.comps {
            let c1 = c.coeff(1);
            for (x, cx) in label_in_fields(g, labels[0]) {
                for (y, cy) in label_in_fields(g, labels[1]) {
                    let v = &c1 * &(&cx * &cy);
                    *r_fields.entry((x, y)).or_insert_with(Scalar::zero) += &v;
                    *r_fields.entry((y, x)).or_insert_with(Scalar::zero) -= &v;
                }
            }
        }
        r_fields.retain(|_, v| !v.is_zero());
        let (left, right) = invariant_fields(kind, g);
        Ok(Self {
            kind,
            metric: g.clone(),
            r_fields,
            left,
            right,
            normalization: Scalar::int(SKLYANIN_NORMALIZATION),
        })
    }

    pub fn with_normalization(mut self, c: Scalar) -> Self {
        self.normalization = c;
        self
    }

    /// Whether every entry of `r̃` is real.
    pub fn r_is_real(&self) -> bool {
        self.r_fields.values().all(Scalar::is_real)
    }

    pub fn r_is_antisymmetric(&self) -> bool {
        self.r_fields.iter().all(|((a, b), v)| {
            self.r_fields.get(&(*b, *a)).is_some_and(|w| (v + w).is_zero())
        })
    }
}

/// `{f, h}` divided by `λ`.
pub fn sklyanin_bracket(p: &PoissonStructure, f: &CoordPoly, h: &CoordPoly) -> CoordPoly {
    let mut out = CoordPoly::zero();
    let apply_all = |fam: &FieldFamily, x: &CoordPoly| -> BTreeMap<Label, CoordPoly> {
        fam.labels.iter().zip(&fam.fields).map(|(l, d)| (*l, d.apply(x))).collect()
    };
    let (rf, rh) = (apply_all(&p.right, f), apply_all(&p.right, h));
    let (lf, lh) = (apply_all(&p.left, f), apply_all(&p.left, h));
    for ((a, b), c) in &p.r_fields {
        let right = rf[a].mul(&rh[b]);
        let left = lf[a].mul(&lh[b]);
        out = out.add(&right.sub(&left).scale(c));
    }
    out.scale(&p.normalization)
}

/// `{f,{h,k}} + {h,{k,f}} + {k,{f,h}}`, divided by `λ²`.
pub fn poisson_jacobi(p: &PoissonStructure, f: &CoordPoly, h: &CoordPoly, k: &CoordPoly) -> CoordPoly {
    let t1 = sklyanin_bracket(p, f, &sklyanin_bracket(p, h, k));
    let t2 = sklyanin_bracket(p, h, &sklyanin_bracket(p, k, f));
    let t3 = sklyanin_bracket(p, k, &sklyanin_bracket(p, f, h));
    t1.add(&t2).add(&t3)
}

/// Jacobi identity of the bracket on every triple of distinct coordinates,
/// modulo the orthogonality constraints. Residuals carry a factor `λ²`.
pub fn jacobi_suite(p: &PoissonStructure) -> Check {
    let coords = coordinates(p.kind, p.metric.dim());
    let m = coords.len();
    let var = |i: usize| CoordPoly::var(coords[i]);
    let mut pairs: BTreeMap<(usize, usize), CoordPoly> = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            pairs.insert((i, j), sklyanin_bracket(p, &var(i), &var(j)));
        }
    }
    let bracket = |i: usize, j: usize| if i < j { pairs[&(i, j)].clone() } else { pairs[&(j, i)].scale(&Scalar::int(-1)) };
    let mut check = Check::new("poisson_jacobi");
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let res = sklyanin_bracket(p, &var(i), &bracket(j, k))
                    .add(&sklyanin_bracket(p, &var(j), &bracket(k, i)))
                    .add(&sklyanin_bracket(p, &var(k), &bracket(i, j)));
                if ortho::coord_vanishes_on_group(&res, &p.metric) {
                    check.pass();
                } else {
                    check.fail(format!("({}, {}, {})", coords[i], coords[j], coords[k]), res.render(), Some(2));
                }
            }
        }
    }
    check
}

/// Closed-form coordinate brackets (divided by `λ`):
/// `{Λ^α_β, a^ρ} = −((E Λ^α_0 − δ^α_0) Λ^ρ_β + (Λ_{0β} − E g_{0β}) g^{αρ})`,
/// `{a^ρ, a^σ} = δ^ρ_0 a^σ − δ^σ_0 a^ρ`, all other pairs zero, with `E = e^b`
/// for the Weyl group and `E = 1` for Poincaré.
pub fn closed_form(kind: GroupKind, g: &Metric, x: Generator, y: Generator) -> CoordPoly {
    let e = exp_b(kind);
    match (x, y) {
        (Generator::LorentzEntry(al, be), Generator::TransCoord(rho)) => {
            let (al, be, rho) = (al as usize, be as usize, rho as usize);
            let first = e.mul(&lam(al, 0)).sub(&CoordPoly::constant(delta(al, 0))).mul(&lam(rho, be));
            let mut lam0b = CoordPoly::zero();
            for mu in 0..g.dim() {
                lam0b = lam0b.add(&lam(mu, be).scale(&g.g(0, mu)));
            }
            let second = lam0b.sub(&e.scale(&g.g(0, be))).scale(&g.gi(al, rho));
            first.add(&second).scale(&Scalar::int(-1))
        }
        (Generator::TransCoord(_), Generator::LorentzEntry(..)) => {
            closed_form(kind, g, y, x).scale(&Scalar::int(-1))
        }
        (Generator::TransCoord(r), Generator::TransCoord(s)) => {
            let (r, s) = (r as usize, s as usize);
            CoordPoly::var(Generator::trans(s))
                .scale(&delta(r, 0))
                .sub(&CoordPoly::var(Generator::trans(r)).scale(&delta(s, 0)))
        }
        _ => CoordPoly::zero(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketMismatch {
    pub pair: (Generator, Generator),
    pub computed: String,
    pub expected: String,
    /// The difference lies in the ideal generated by `Λ^T g Λ = g`.
    pub on_group: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoordinateBracketReport {
    pub kind: GroupKind,
    pub pairs_checked: usize,
    /// Pairs whose free-ring difference is nonzero.
    pub mismatches: Vec<BracketMismatch>,
}

impl CoordinateBracketReport {
    /// Every pair agrees on the group, i.e. modulo the orthogonality ideal.
    pub fn passed(&self) -> bool {
        self.mismatches.iter().all(|m| m.on_group)
    }

    /// Every pair agrees already on the free coordinate ring.
    pub fn passed_literally(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the Sklyanin bracket of every coordinate pair against [`closed_form`].
pub fn verify_coordinate_brackets(p: &PoissonStructure) -> CoordinateBracketReport {
    let coords = coordinates(p.kind, p.metric.dim());
    let mut mismatches = Vec::new();
    let mut count = 0;
    for (i, &x) in coords.iter().enumerate() {
        for &y in &coords[i..] {
            count += 1;
            let computed = sklyanin_bracket(p, &CoordPoly::var(x), &CoordPoly::var(y));
            let expected = closed_form(p.kind, &p.metric, x, y);
            if computed != expected {
                mismatches.push(BracketMismatch {
                    pair: (x, y),
                    on_group: ortho::equivalent(&computed, &expected, &p.metric),
                    computed: computed.render(),
                    expected: expected.render(),
                });
            }
        }
    }
    CoordinateBracketReport { kind: p.kind, pairs_checked: count, mismatches }
}

/// Normalization that makes `{Λ, a}` match the closed form on the group,
/// read off from the first pair with a nonzero closed form.
pub fn calibrate(kind: GroupKind, g: &Metric) -> Result<Option<Scalar>> {
    let p = PoissonStructure::new(kind, g)?.with_normalization(Scalar::one());
    let n = g.dim();
    for al in 0..n {
        for be in 0..n {
            for rho in 0..n {
                let (x, y) = (Generator::lorentz(al, be), Generator::trans(rho));
                let expected = closed_form(kind, g, x, y);
                if ortho::in_ideal(&expected, g) {
                    continue;
                }
                let computed = sklyanin_bracket(&p, &CoordPoly::var(x), &CoordPoly::var(y));
                return Ok(expected.ratio_to(&computed).or_else(|| ortho::ratio_mod_ideal(&expected, &computed, g)));
            }
        }
    }
    Ok(None)
}

/// Whether every left field commutes with every right field on the coordinates.
pub fn left_right_commute(kind: GroupKind, g: &Metric) -> bool {
    let (left, right) = invariant_fields(kind, g);
    let coords = coordinates(kind, g.dim());
    left.fields.iter().all(|xl| {
        right.fields.iter().all(|xr| {
            coords.iter().all(|&c| {
                let v = CoordPoly::var(c);
                xl.apply(&xr.apply(&v)) == xr.apply(&xl.apply(&v))
            })
        })
    })
}

/// Structure constants of a field family: `[X_A, X_B] = Σ_C c[A][B][C] X_C`,
/// solved exactly on the coordinates. `None` if some commutator leaves the span.
pub fn field_closure(fam: &FieldFamily, coords: &[Generator]) -> Option<Vec<Vec<Vec<Scalar>>>> {
    let d = fam.fields.len();
    // column C: values X_C(coord) flattened over (coord, monomial)
    let mut keys: Vec<(Generator, CoordMono)> = Vec::new();
    let images: Vec<Vec<CoordPoly>> = fam
        .fields
        .iter()
        .map(|x| coords.iter().map(|&c| x.apply(&CoordPoly::var(c))).collect())
        .collect();
    let mut commutators = vec![vec![Vec::new(); d]; d];
    for a in 0..d {
        for b in 0..d {
            commutators[a][b] = coords
                .iter()
                .map(|&c| {
                    let v = CoordPoly::var(c);
                    fam.fields[a].apply(&fam.fields[b].apply(&v)).sub(&fam.fields[b].apply(&fam.fields[a].apply(&v)))
                })
                .collect::<Vec<_>>();
        }
    }
    let collect = |polys: &Vec<CoordPoly>, keys: &mut Vec<(Generator, CoordMono)>| {
        for (ci, p) in polys.iter().enumerate() {
            for (m, _) in p.terms() {
                let k = (coords[ci], m.clone());
                if !keys.contains(&k) {
                    keys.push(k);
                }
            }
        }
    };
    for im in &images {
        collect(im, &mut keys);
    }
    for row in &commutators {
        for c in row {
            collect(c, &mut keys);
        }
    }
    let value = |polys: &Vec<CoordPoly>, key: &(Generator, CoordMono)| -> Scalar {
        let ci = coords.iter().position(|&c| c == key.0).unwrap();
        polys[ci].terms().find(|(m, _)| **m == key.1).map(|(_, c)| c.clone()).unwrap_or_default()
    };
    let matrix: Vec<Vec<Scalar>> =
        keys.iter().map(|k| images.iter().map(|im| value(im, k)).collect()).collect();
    let mut out = vec![vec![vec![Scalar::zero(); d]; d]; d];
    for a in 0..d {
        for b in 0..d {
            let rhs: Vec<Scalar> = keys.iter().map(|k| value(&commutators[a][b], k)).collect();
            out[a][b] = solve(&matrix, &rhs)?;
        }
    }
    Some(out)
}

/// Field-basis element `X_l` written over the lower-index basis of `alg`:
/// `X^{αβ} = −i g^{αμ} g^{βν} M_{μν}`, `X^α = g^{αμ} P_μ`, `X = −i D`.
pub fn field_in_algebra(g: &Metric, alg: &LieAlgebraData, l: Label) -> Vec<Scalar> {
    let n = g.dim();
    let mut v = alg.zero_element();
    match l {
        Label::M(a, b) => {
            let (a, b) = (a as usize, b as usize);
            for mu in 0..n {
                for nu in 0..n {
                    let c = &(&g.gi(a, mu) * &g.gi(b, nu)) * &(-Scalar::i());
                    for (k, e) in alg.rotation(mu, nu).iter().enumerate() {
                        if !e.is_zero() {
                            v[k] += &(&c * e);
                        }
                    }
                }
            }
        }
        Label::P(a) => {
            for mu in 0..n {
                v[alg.index_of(Label::P(mu as u8)).unwrap()] = g.gi(a as usize, mu);
            }
        }
        Label::D => v[alg.index_of(Label::D).unwrap()] = -Scalar::i(),
    }
    v
}

/// Compares a field family's closure constants with the Lie algebra. Returns
/// `Some(s)` with `s = ±1` when `[Y_A, Y_B] = s Σ_C c_{AB}^C Y_C` holds for all
/// pairs (the images `Y` of the fields in the Lie algebra), `None` otherwise.
pub fn closure_sign(kind: GroupKind, g: &Metric, fam: &FieldFamily) -> Option<i64> {
    let alg = match kind {
        GroupKind::Poincare => build_poincare(g),
        GroupKind::Weyl => build_weyl(g),
    };
    let consts = field_closure(fam, &coordinates(kind, g.dim()))?;
    let ys: Vec<Vec<Scalar>> = fam.labels.iter().map(|&l| field_in_algebra(g, &alg, l)).collect();
    'sign: for s in [1i64, -1] {
        for a in 0..ys.len() {
            for b in 0..ys.len() {
                let lhs = alg.bracket(&ys[a], &ys[b]);
                let mut rhs = alg.zero_element();
                for (c, cc) in consts[a][b].iter().enumerate() {
                    if cc.is_zero() {
                        continue;
                    }
                    for (k, yk) in ys[c].iter().enumerate() {
                        rhs[k] += &(&(cc * yk) * &Scalar::int(s));
                    }
                }
                if lhs != rhs {
                    continue 'sign;
                }
            }
        }
        return Some(s);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(g: Generator) -> CoordPoly {
        CoordPoly::var(g)
    }

    fn random_poly(rng: &mut ChaCha8Rng, coords: &[Generator]) -> CoordPoly {
        let mut p = CoordPoly::constant(Scalar::int(rng.gen_range(-2..=2)));
        for _ in 0..3 {
            let mut t = CoordPoly::constant(Scalar::int(rng.gen_range(1..=3)));
            for _ in 0..rng.gen_range(1..=2) {
                t = t.mul(&v(coords[rng.gen_range(0..coords.len())]));
            }
            p = p.add(&t);
        }
        p
    }

    #[test]
    fn field_examples() {
        let g = Metric::light_cone(3);
        let (left, right) = invariant_fields(GroupKind::Weyl, &g);
        for a in 0..3u8 {
            for b in 0..3 {
                let xr = right.get(Label::P(a)).unwrap().apply(&v(Generator::trans(b)));
                assert_eq!(xr, CoordPoly::constant(g.gi(a as usize, b)));
                let xl = left.get(Label::P(a)).unwrap().apply(&v(Generator::trans(b)));
                assert_eq!(xl, v(Generator::ExpB(1)).mul(&lam_up(&g, b, a as usize)));
            }
        }
        assert!(left.fields.iter().all(|x| x.apply(&CoordPoly::one()).is_zero()));
        let e = v(Generator::ExpB(-1));
        assert_eq!(left.get(Label::D).unwrap().apply(&e), e.scale(&Scalar::int(-1)));
    }

    #[test]
    fn calibration_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(calibrate(GroupKind::Poincare, &Metric::minkowski(4)).unwrap(), Some(Scalar::int(-1)));
        assert_eq!(calibrate(GroupKind::Weyl, &Metric::light_cone(4)).unwrap(), Some(Scalar::int(-1)));
        for n in 2..=3 {
            let g = Metric::random(n, &mut rng, false);
            assert_eq!(calibrate(GroupKind::Poincare, &g).unwrap(), Some(Scalar::int(SKLYANIN_NORMALIZATION)));
        }
    }

    #[test]
    fn translation_brackets_and_antisymmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=3 {
            let g = Metric::random(n, &mut rng, false);
            let p = PoissonStructure::new(GroupKind::Poincare, &g).unwrap();
            assert!(p.r_is_real() && p.r_is_antisymmetric());
            assert_eq!(sklyanin_bracket(&p, &v(Generator::trans(0)), &v(Generator::trans(1))), v(Generator::trans(1)));
            assert!(sklyanin_bracket(&p, &v(Generator::lorentz(0, 1)), &v(Generator::lorentz(1, 0))).is_zero());
            let f = random_poly(&mut rng, &coordinates(GroupKind::Poincare, n));
            assert!(sklyanin_bracket(&p, &f, &f).is_zero());
        }
    }

    #[test]
    fn leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = Metric::light_cone(3);
        let p = PoissonStructure::new(GroupKind::Weyl, &g).unwrap();
        let coords = coordinates(GroupKind::Weyl, 3);
        for _ in 0..5 {
            let (f, h, k) = (random_poly(&mut rng, &coords), random_poly(&mut rng, &coords), random_poly(&mut rng, &coords));
            let lhs = sklyanin_bracket(&p, &f.mul(&h), &k);
            let rhs = f.mul(&sklyanin_bracket(&p, &h, &k)).add(&sklyanin_bracket(&p, &f, &k).mul(&h));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn coordinate_brackets_on_group() {
        let rep = verify_coordinate_brackets(&PoissonStructure::new(GroupKind::Poincare, &Metric::minkowski(4)).unwrap());
        assert!(rep.passed());
        assert!(!rep.passed_literally());
        let rep = verify_coordinate_brackets(&PoissonStructure::new(GroupKind::Weyl, &Metric::light_cone(4)).unwrap());
        assert!(rep.passed());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=3 {
            for _ in 0..4 {
                let g = Metric::random(n, &mut rng, false);
                assert!(verify_coordinate_brackets(&PoissonStructure::new(GroupKind::Poincare, &g).unwrap()).passed());
            }
        }
    }

    #[test]
    fn fields_commute_and_close() {
        for kind in [GroupKind::Poincare, GroupKind::Weyl] {
            let g = Metric::light_cone(3);
            assert!(left_right_commute(kind, &g));
            let (l, r) = invariant_fields(kind, &g);
            assert_eq!(closure_sign(kind, &g, &l), Some(1));
            assert_eq!(closure_sign(kind, &g, &r), Some(-1));
        }
    }

    #[test]
    fn jacobi_suite_follows_g00() {
        let lc = Metric::light_cone(3);
        for kind in [GroupKind::Poincare, GroupKind::Weyl] {
            assert!(jacobi_suite(&PoissonStructure::new(kind, &lc).unwrap()).passed());
        }
        let g = Metric::minkowski(3);
        assert!(jacobi_suite(&PoissonStructure::new(GroupKind::Poincare, &g).unwrap()).passed());
        let weyl = jacobi_suite(&PoissonStructure::new(GroupKind::Weyl, &g).unwrap());
        assert!(!weyl.passed());
        assert!(weyl.failures.iter().all(|f| f.item.starts_with("(L^") && f.item.matches("a^").count() == 2));
    }

    #[test]
    fn jacobi() {
        let triple = |p: &PoissonStructure| {
            poisson_jacobi(p, &v(Generator::lorentz(1, 0)), &v(Generator::trans(0)), &v(Generator::trans(1)))
        };
        let g = Metric::minkowski(3);
        let p = PoissonStructure::new(GroupKind::Poincare, &g).unwrap();
        assert!(ortho::in_ideal(&triple(&p), &g));
        let lc = Metric::light_cone(3);
        assert!(ortho::in_ideal(&triple(&PoissonStructure::new(GroupKind::Weyl, &lc).unwrap()), &lc));
        // classical shadow: −g₀₀(1 − e^{2b})(g^{ασ}Λ^ρ_β − g^{αρ}Λ^σ_β)
        for g00 in [rat(1, 1), rat(-3, 2)] {
            let gm = lc.with_g00(g00.clone()).unwrap();
            let p = PoissonStructure::new(GroupKind::Weyl, &gm).unwrap();
            let e2 = v(Generator::ExpB(1)).mul(&v(Generator::ExpB(1)));
            for (al, be, rho, sig) in [(1, 0, 0, 1), (0, 0, 1, 2), (2, 1, 0, 2)] {
                let j = poisson_jacobi(&p, &v(Generator::lorentz(al, be)), &v(Generator::trans(rho)), &v(Generator::trans(sig)));
                let shape = v(Generator::lorentz(rho, be))
                    .scale(&gm.gi(al, sig))
                    .sub(&v(Generator::lorentz(sig, be)).scale(&gm.gi(al, rho)));
                let expected = CoordPoly::one().sub(&e2).mul(&shape).scale(&Scalar::real(-g00.clone()));
                assert!(!ortho::in_ideal(&j, &gm));
                assert!(ortho::equivalent(&j, &expected, &gm));
            }
        }
    }
}
