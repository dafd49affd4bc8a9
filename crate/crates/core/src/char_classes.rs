//! Total and dual Stiefel-Whitney classes and the polynomials
//! `Q_i(x) = x^i + w_1 x^{i-1} + ... + w_i`.

use thiserror::Error;

use crate::ring::{Element, PresentedRing, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("degree-0 part of a total class must be 1")]
    MissingUnit,
    #[error("class has a nonzero part in degree {degree}, above the rank bound {rank}")]
    ExceedsRank { degree: u32, rank: u32 },
    #[error("index {index} outside 0..={max}")]
    IndexOutOfRange { index: u32, max: u32 },
    #[error("expected a homogeneous class of degree 1")]
    NotDegreeOne,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `w = 1 + w_1 + ... + w_{rank}` in the base ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalSwClass {
    value: Element,
    rank: u32,
}

impl TotalSwClass {
    pub fn new(base: &PresentedRing, value: &Element, rank: u32) -> Result<Self, ClassError> {
        let value = base.normal_form(value)?;
        if base.graded_part(&value, 0) != Element::one() {
            return Err(ClassError::MissingUnit);
        }
        if let Some(degree) = value
            .monomials()
            .map(|m| base.degree(m))
            .find(|&d| d > rank)
        {
            return Err(ClassError::ExceedsRank { degree, rank });
        }
        Ok(TotalSwClass { value, rank })
    }

    pub fn trivial(rank: u32) -> Self {
        TotalSwClass {
            value: Element::one(),
            rank,
        }
    }

    pub fn value(&self) -> &Element {
        &self.value
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// `w_i`, zero above the rank.
    pub fn component(&self, base: &PresentedRing, i: u32) -> Element {
        base.graded_part(&self.value, i)
    }
}

/// `w-bar` with `w * w-bar = 1`, and the top degree `m` with `w-bar_m != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSwClass {
    value: Element,
    top_degree: u32,
}

impl DualSwClass {
    pub fn value(&self) -> &Element {
        &self.value
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn component(&self, base: &PresentedRing, i: u32) -> Element {
        base.graded_part(&self.value, i)
    }
}

/// Inverts an inhomogeneous class with unit constant term, degree by degree
/// up to the ring's top dimension: `u_i = sum_{j=1..i} v_j u_{i-j}`.
pub(crate) fn invert_unit(base: &PresentedRing, value: &Element, max_j: u32) -> Vec<Element> {
    let top = base.top_dimension();
    let parts: Vec<Element> = (0..=top.min(max_j))
        .map(|j| base.graded_part(value, j))
        .collect();
    let mut inverse: Vec<Element> = vec![Element::one()];
    for i in 1..=top {
        let mut acc = Element::zero();
        for j in 1..=i.min(max_j).min(top) {
            let term = base.mul(&parts[j as usize], &inverse[(i - j) as usize]);
            acc = base.add(&acc, &term);
        }
        inverse.push(acc);
    }
    inverse
}

pub fn dual_total_sw(base: &PresentedRing, w: &TotalSwClass) -> Result<DualSwClass, ClassError> {
    if base.graded_part(&w.value, 0) != Element::one() {
        return Err(ClassError::MissingUnit);
    }
    let parts = invert_unit(base, &w.value, w.rank);
    let top_degree = parts.iter().rposition(|p| !p.is_zero()).unwrap_or(0) as u32;
    let value = parts
        .iter()
        .fold(Element::zero(), |acc, p| base.add(&acc, p));
    Ok(DualSwClass { value, top_degree })
}

/// `Q_i(x)` computed in `ambient`, which must extend the base ring of `w`.
pub fn q_poly(
    w: &TotalSwClass,
    base: &PresentedRing,
    i: u32,
    x: &Element,
    ambient: &PresentedRing,
) -> Result<Element, ClassError> {
    if i > w.rank {
        return Err(ClassError::IndexOutOfRange {
            index: i,
            max: w.rank,
        });
    }
    let x = ambient.normal_form(x)?;
    if !x.is_zero() && ambient.homogeneous_degree(&x) != Some(1) {
        return Err(ClassError::NotDegreeOne);
    }
    let mut acc = Element::zero();
    for l in 0..=i {
        let coefficient = ambient.normal_form(&w.component(base, l))?;
        let term = ambient.mul(&coefficient, &ambient.pow(&x, i - l));
        acc = ambient.add(&acc, &term);
    }
    Ok(acc)
}
