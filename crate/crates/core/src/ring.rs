//! Finitely presented graded-commutative algebras over GF(2).
//!
//! A ring is an ordered list of generators `g_i` of positive degree, each
//! carrying one power rewrite `g_i^e -> rhs` where `rhs` is homogeneous of
//! degree `e * deg(g_i)`, mentions only `g_0..=g_i`, and has `g_i`-exponent
//! below `e`. Such rules have pairwise coprime leading monomials under the
//! lex order that ranks later generators higher, so rewriting terminates and
//! normal forms are unique. On top of the rules, monomials above the ring's
//! top dimension vanish, and so do monomials whose degree restricted to a
//! prefix of the generators exceeds that prefix's cap (this is how a base
//! ring's own truncation survives inside an extension of it).
//!
//! Coefficients live in GF(2), so an [`Element`] is just a set of monomials.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::expr::{Expr, ExprError, Factor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("undeclared generator `{0}`")]
    UndeclaredGenerator(String),
    #[error("monomial mentions generator #{index} but the ring has {count} generators")]
    ForeignMonomial { index: usize, count: usize },
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have positive degree")]
    ZeroDegree(String),
    #[error("generator `{0}` must have a positive rewrite exponent")]
    ZeroExponent(String),
    #[error("rewrite rule for `{name}` is not homogeneous of degree {expected}")]
    RuleDegreeMismatch { name: String, expected: u32 },
    #[error("rewrite rule for `{name}` keeps exponent {exponent} or more of `{name}`")]
    RuleNotReducing { name: String, exponent: u16 },
    #[error("rewrite rule for `{name}` mentions a generator declared after it")]
    RuleForwardReference { name: String },
    #[error("degree {degree} outside 0..={top}")]
    DegreeOutOfRange { degree: u32, top: u32 },
    #[error("exponent {0} too large")]
    ExponentOverflow(u32),
    #[error(transparent)]
    Syntax(#[from] ExprError),
}

/// Exponent vector with trailing zeros trimmed, so a monomial of a base ring
/// is literally the same value inside any extension of that ring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn from_exponents(exponents: impl IntoIterator<Item = u16>) -> Self {
        let mut v: SmallVec<[u16; 8]> = exponents.into_iter().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    /// `g_index ^ exponent`.
    pub fn generator_power(index: usize, exponent: u16) -> Self {
        let mut v: SmallVec<[u16; 8]> = SmallVec::from_elem(0, index + 1);
        v[index] = exponent;
        Monomial::from_exponents(v)
    }

    pub fn exponent(&self, index: usize) -> u16 {
        self.0.get(index).copied().unwrap_or(0)
    }

    /// Exponents up to the last nonzero one.
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut v = long.0.clone();
        for (a, b) in v.iter_mut().zip(short.0.iter()) {
            *a = a.saturating_add(*b);
        }
        Monomial(v)
    }

    fn divide_power(&self, index: usize, exponent: u16) -> Monomial {
        let mut v = self.0.clone();
        v[index] -= exponent;
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}", self.0.as_slice())
    }
}

/// A GF(2) linear combination of monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Element {
    terms: BTreeSet<Monomial>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::from_monomial(Monomial::one())
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        Element { terms }
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

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Monomials in lex order of their exponent vectors.
    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.iter()
    }

    /// Adds `m` with coefficient 1, cancelling it if already present.
    pub fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    fn xor_assign(&mut self, other: &Element) {
        for m in &other.terms {
            self.toggle(m.clone());
        }
    }
}

impl FromIterator<Monomial> for Element {
    /// Sums the monomials; repeated ones cancel in pairs.
    fn from_iter<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        let mut e = Element::zero();
        for m in iter {
            e.toggle(m);
        }
        e
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    pub rewrite_exponent: u16,
    pub rewrite_rhs: Element,
}

impl GeneratorSpec {
    /// Generator with the monomial relation `g^e = 0`.
    pub fn nilpotent(name: impl Into<String>, degree: u32, rewrite_exponent: u16) -> Self {
        GeneratorSpec {
            name: name.into(),
            degree,
            rewrite_exponent,
            rewrite_rhs: Element::zero(),
        }
    }
}

/// Monomials whose degree in generators `0..prefix` exceeds `top` vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockCap {
    pub prefix: usize,
    pub top: u32,
}

#[derive(Debug, Clone, Default)]
pub struct RingBuilder {
    generators: Vec<GeneratorSpec>,
    block_caps: Vec<BlockCap>,
}

impl RingBuilder {
    pub fn new() -> Self {
        RingBuilder::default()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Validates and appends a generator; returns its index.
    pub fn push(&mut self, spec: GeneratorSpec) -> Result<usize, RingError> {
        if self.index_of(&spec.name).is_some() {
            return Err(RingError::DuplicateGenerator(spec.name));
        }
        if spec.degree == 0 {
            return Err(RingError::ZeroDegree(spec.name));
        }
        if spec.rewrite_exponent == 0 {
            return Err(RingError::ZeroExponent(spec.name));
        }
        let index = self.generators.len();
        let expected = u32::from(spec.rewrite_exponent) * spec.degree;
        for m in spec.rewrite_rhs.monomials() {
            if m.exponents().len() > index + 1 {
                return Err(RingError::RuleForwardReference { name: spec.name });
            }
            if m.exponent(index) >= spec.rewrite_exponent {
                return Err(RingError::RuleNotReducing {
                    exponent: spec.rewrite_exponent,
                    name: spec.name,
                });
            }
            let degree: u32 = m
                .exponents()
                .iter()
                .enumerate()
                .map(|(i, &e)| {
                    let d = if i == index {
                        spec.degree
                    } else {
                        self.generators[i].degree
                    };
                    u32::from(e) * d
                })
                .sum();
            if degree != expected {
                return Err(RingError::RuleDegreeMismatch {
                    name: spec.name,
                    expected,
                });
            }
        }
        self.generators.push(spec);
        Ok(index)
    }

    /// Turns an expression into an unreduced element over the generators
    /// declared so far plus, optionally, one pending generator `pending`
    /// that will receive the next index.
    pub fn eval_raw(&self, expr: &Expr, pending: Option<&str>) -> Result<Element, RingError> {
        eval_raw(expr, |name| {
            self.index_of(name)
                .or_else(|| (pending == Some(name)).then_some(self.generators.len()))
        })
    }

    pub fn finish(self, top_dimension: u32) -> PresentedRing {
        PresentedRing {
            generators: self.generators,
            block_caps: self.block_caps,
            top_dimension,
        }
    }
}

fn eval_raw(expr: &Expr, lookup: impl Fn(&str) -> Option<usize>) -> Result<Element, RingError> {
    let mut out = Element::zero();
    'terms: for term in &expr.terms {
        let mut m = Monomial::one();
        for factor in &term.factors {
            match factor {
                Factor::Zero => continue 'terms,
                Factor::One => {}
                Factor::Power { name, exponent, .. } => {
                    let index =
                        lookup(name).ok_or_else(|| RingError::UndeclaredGenerator(name.clone()))?;
                    let e = u16::try_from(*exponent)
                        .map_err(|_| RingError::ExponentOverflow(*exponent))?;
                    if m.exponent(index).checked_add(e).is_none() {
                        return Err(RingError::ExponentOverflow(*exponent));
                    }
                    m = m.mul(&Monomial::generator_power(index, e));
                }
            }
        }
        out.toggle(m);
    }
    Ok(out)
}

/// A presented ring. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedRing {
    generators: Vec<GeneratorSpec>,
    block_caps: Vec<BlockCap>,
    top_dimension: u32,
}

impl PresentedRing {
    /// The ring with the given monomial relations `g^e = 0`.
    pub fn monomial_quotient(
        generators: &[(&str, u32, u16)],
        top_dimension: u32,
    ) -> Result<Self, RingError> {
        let mut b = RingBuilder::new();
        for &(name, degree, e) in generators {
            b.push(GeneratorSpec::nilpotent(name, degree, e))?;
        }
        Ok(b.finish(top_dimension))
    }

    /// A builder pre-loaded with this ring's generators; the current top
    /// dimension becomes a cap on the degree in those generators.
    pub fn extend(&self) -> RingBuilder {
        let mut block_caps = self.block_caps.clone();
        block_caps.push(BlockCap {
            prefix: self.generators.len(),
            top: self.top_dimension,
        });
        RingBuilder {
            generators: self.generators.clone(),
            block_caps,
        }
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn block_caps(&self) -> &[BlockCap] {
        &self.block_caps
    }

    pub fn top_dimension(&self) -> u32 {
        self.top_dimension
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn generator(&self, name: &str) -> Result<Element, RingError> {
        let i = self
            .generator_index(name)
            .ok_or_else(|| RingError::UndeclaredGenerator(name.to_string()))?;
        Ok(self.reduce_all(std::iter::once(Monomial::generator_power(i, 1))))
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        self.prefix_degree(m, m.exponents().len())
    }

    fn prefix_degree(&self, m: &Monomial, prefix: usize) -> u32 {
        m.exponents()
            .iter()
            .take(prefix)
            .zip(&self.generators)
            .fold(0u32, |acc, (&e, g)| {
                acc.saturating_add(u32::from(e).saturating_mul(g.degree))
            })
    }

    /// Whether `m` lies in the truncation ideal.
    fn vanishes(&self, m: &Monomial) -> bool {
        self.degree(m) > self.top_dimension
            || self
                .block_caps
                .iter()
                .any(|cap| self.prefix_degree(m, cap.prefix) > cap.top)
    }

    /// Parses and reduces an expression in this ring's generator names.
    pub fn parse(&self, text: &str) -> Result<Element, RingError> {
        let expr = Expr::parse(text)?;
        self.eval(&expr)
    }

    pub fn eval(&self, expr: &Expr) -> Result<Element, RingError> {
        let raw = eval_raw(expr, |name| self.generator_index(name))?;
        Ok(self.reduce_all(raw.terms.into_iter()))
    }

    pub fn normal_form(&self, raw: &Element) -> Result<Element, RingError> {
        for m in raw.monomials() {
            if m.exponents().len() > self.generators.len() {
                return Err(RingError::ForeignMonomial {
                    index: m.exponents().len() - 1,
                    count: self.generators.len(),
                });
            }
        }
        Ok(self.reduce_all(raw.monomials().cloned()))
    }

    fn reduce_all(&self, raw: impl Iterator<Item = Monomial>) -> Element {
        let mut memo = HashMap::new();
        let mut out = Element::zero();
        for m in raw {
            let r = self.reduce_monomial(&m, &mut memo);
            out.xor_assign(&r);
        }
        out
    }

    fn reduce_monomial(&self, m: &Monomial, memo: &mut HashMap<Monomial, Element>) -> Element {
        if self.vanishes(m) {
            return Element::zero();
        }
        // rewrite the highest generator first; this is the termination order
        let Some(index) = (0..m.exponents().len())
            .rev()
            .find(|&i| m.exponent(i) >= self.generators[i].rewrite_exponent)
        else {
            return Element::from_monomial(m.clone());
        };
        if let Some(hit) = memo.get(m) {
            return hit.clone();
        }
        let g = &self.generators[index];
        let quotient = m.divide_power(index, g.rewrite_exponent);
        let mut out = Element::zero();
        for r in g.rewrite_rhs.monomials() {
            let next = self.reduce_monomial(&quotient.mul(r), memo);
            out.xor_assign(&next);
        }
        memo.insert(m.clone(), out.clone());
        out
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        let sum: Element = x.monomials().chain(y.monomials()).cloned().collect();
        self.reduce_all(sum.terms.into_iter())
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut raw = Element::zero();
        for a in x.monomials() {
            for b in y.monomials() {
                raw.toggle(a.mul(b));
            }
        }
        self.reduce_all(raw.terms.into_iter())
    }

    pub fn pow(&self, x: &Element, k: u32) -> Element {
        let mut acc = self.reduce_all(std::iter::once(Monomial::one()));
        for _ in 0..k {
            if acc.is_zero() {
                break;
            }
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// All normal-form monomials of exactly `degree`, in lex order.
    pub fn monomial_basis(&self, degree: u32) -> Result<Vec<Monomial>, RingError> {
        if degree > self.top_dimension {
            return Err(RingError::DegreeOutOfRange {
                degree,
                top: self.top_dimension,
            });
        }
        let mut out = Vec::new();
        let mut exps = vec![0u16; self.generators.len()];
        self.enumerate(0, degree, &mut exps, &mut out);
        out.sort();
        Ok(out)
    }

    fn enumerate(&self, i: usize, remaining: u32, exps: &mut [u16], out: &mut Vec<Monomial>) {
        if i == self.generators.len() {
            if remaining == 0 {
                let m = Monomial::from_exponents(exps.iter().copied());
                if !self.vanishes(&m) {
                    out.push(m);
                }
            }
            return;
        }
        let g = &self.generators[i];
        let max = (remaining / g.degree).min(u32::from(g.rewrite_exponent) - 1);
        for e in 0..=max {
            exps[i] = e as u16;
            self.enumerate(i + 1, remaining - e * g.degree, exps, out);
        }
        exps[i] = 0;
    }

    /// Dimension of each graded piece, degrees `0..=top_dimension`.
    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.top_dimension)
            .map(|d| self.monomial_basis(d).map(|b| b.len()).unwrap_or(0))
            .collect()
    }

    pub fn graded_part(&self, x: &Element, degree: u32) -> Element {
        x.monomials()
            .filter(|m| self.degree(m) == degree)
            .cloned()
            .collect()
    }

    /// The common degree of all monomials, `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self, x: &Element) -> Option<u32> {
        let mut degrees = x.monomials().map(|m| self.degree(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Human-readable form: terms by ascending degree, e.g. `1 + a + a*b^2`.
    pub fn render(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<&Monomial> = x.monomials().collect();
        terms.sort_by(|a, b| self.degree(a).cmp(&self.degree(b)).then_with(|| b.cmp(a)));
        terms
            .into_iter()
            .map(|m| self.render_monomial(m))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = self
                    .generators
                    .get(i)
                    .map_or_else(|| format!("g{i}"), |g| g.name.clone());
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}
