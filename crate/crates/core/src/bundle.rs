//! Cohomology rings of the projectivization `E = P(xi)` and of the fibrewise
//! square `E x_B E`, built from the base presentation and the total
//! Stiefel-Whitney class of `xi`.
//!
//! Each enhancement class `v` (and `v_L`, `v_R` upstairs) is a new degree-1
//! generator carrying the rule
//! `v^{d+1} -> w_{d+1} + w_d v + ... + w_1 v^d`; the base generators come
//! first, with the base dimension kept as a cap on their joint degree.

use thiserror::Error;

use crate::char_classes::{ClassError, TotalSwClass};
use crate::ring::{Element, GeneratorSpec, Monomial, PresentedRing, RingBuilder, RingError};

pub const ENHANCEMENT: &str = "v";
pub const LEFT_ENHANCEMENT: &str = "v_L";
pub const RIGHT_ENHANCEMENT: &str = "v_R";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("rank {0} bundle: rank must be at least 1")]
    ZeroRank(u32),
    #[error("rank-1 bundle: the fibre is a point")]
    PointFiber,
    #[error("base generator `{0}` clashes with an enhancement class name")]
    NameClash(String),
    #[error("rank {0} exceeds the supported exponent range")]
    RankTooLarge(u32),
    #[error("expected a homogeneous degree-1 class of the base")]
    NotDegreeOne,
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A vector bundle of rank `d + 1` over a presented base, described by its
/// total Stiefel-Whitney class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleSpec {
    base: PresentedRing,
    rank: u32,
    total_sw: TotalSwClass,
    closed_manifold: bool,
}

impl BundleSpec {
    /// `closed_manifold` is taken on trust; nothing checks it against the
    /// presentation.
    pub fn new(
        base: PresentedRing,
        rank: u32,
        total_sw: &Element,
        closed_manifold: bool,
    ) -> Result<Self, ModelError> {
        if rank == 0 {
            return Err(ModelError::ZeroRank(rank));
        }
        if rank >= u32::from(u16::MAX) {
            return Err(ModelError::RankTooLarge(rank));
        }
        let total_sw = TotalSwClass::new(&base, total_sw, rank)?;
        Ok(BundleSpec {
            base,
            rank,
            total_sw,
            closed_manifold,
        })
    }

    pub fn base(&self) -> &PresentedRing {
        &self.base
    }

    /// `n`, the top degree of the base.
    pub fn base_dim(&self) -> u32 {
        self.base.top_dimension()
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// `d`, the dimension of the fibre `RP^d`.
    pub fn fiber_dim(&self) -> u32 {
        self.rank - 1
    }

    pub fn total_sw(&self) -> &TotalSwClass {
        &self.total_sw
    }

    pub fn closed_manifold(&self) -> bool {
        self.closed_manifold
    }

    /// `w_1`.
    pub fn orientation_class(&self) -> Element {
        self.total_sw.component(&self.base, 1)
    }
}

#[derive(Debug, Clone)]
pub struct ProjectiveModel {
    base: PresentedRing,
    e_ring: PresentedRing,
    e2b_ring: PresentedRing,
    v: Element,
    v_l: Element,
    v_r: Element,
    kernel_class: Element,
    fiber_dim: u32,
}

/// Appends an enhancement generator obeying the projective-bundle relation.
fn push_enhancement(
    builder: &mut RingBuilder,
    spec: &BundleSpec,
    name: &str,
) -> Result<Element, ModelError> {
    let index = builder.len();
    let d = spec.fiber_dim();
    let rhs: Element = (1..=spec.rank())
        .flat_map(|i| {
            let e = (spec.rank() - i) as u16;
            let vpow = Monomial::generator_power(index, e);
            spec.total_sw
                .component(&spec.base, i)
                .monomials()
                .map(|m| m.mul(&vpow))
                .collect::<Vec<_>>()
        })
        .collect();
    builder.push(GeneratorSpec {
        name: name.to_string(),
        degree: 1,
        rewrite_exponent: (d + 1) as u16,
        rewrite_rhs: rhs,
    })?;
    Ok(Element::from_monomial(Monomial::generator_power(index, 1)))
}

pub fn build_projective_model(spec: &BundleSpec) -> Result<ProjectiveModel, ModelError> {
    if spec.rank() < 2 {
        return Err(ModelError::PointFiber);
    }
    for name in [ENHANCEMENT, LEFT_ENHANCEMENT, RIGHT_ENHANCEMENT] {
        if spec.base.generator_index(name).is_some() {
            return Err(ModelError::NameClash(name.to_string()));
        }
    }
    let n = spec.base_dim();
    let d = spec.fiber_dim();

    let mut e = spec.base.extend();
    let v = push_enhancement(&mut e, spec, ENHANCEMENT)?;
    let e_ring = e.finish(n + d);

    let mut e2 = spec.base.extend();
    let v_l = push_enhancement(&mut e2, spec, LEFT_ENHANCEMENT)?;
    let v_r = push_enhancement(&mut e2, spec, RIGHT_ENHANCEMENT)?;
    let e2b_ring = e2.finish(n + 2 * d);

    let v = e_ring.normal_form(&v)?;
    let v_l = e2b_ring.normal_form(&v_l)?;
    let v_r = e2b_ring.normal_form(&v_r)?;
    let kernel_class = e2b_ring.add(&v_l, &v_r);
    Ok(ProjectiveModel {
        base: spec.base.clone(),
        e_ring,
        e2b_ring,
        v,
        v_l,
        v_r,
        kernel_class,
        fiber_dim: d,
    })
}

impl ProjectiveModel {
    pub fn base(&self) -> &PresentedRing {
        &self.base
    }

    /// Cohomology of `E`.
    pub fn e_ring(&self) -> &PresentedRing {
        &self.e_ring
    }

    /// Cohomology of `E x_B E`.
    pub fn e2b_ring(&self) -> &PresentedRing {
        &self.e2b_ring
    }

    pub fn v(&self) -> &Element {
        &self.v
    }

    pub fn v_l(&self) -> &Element {
        &self.v_l
    }

    pub fn v_r(&self) -> &Element {
        &self.v_r
    }

    /// `v_L + v_R`.
    pub fn kernel_class(&self) -> &Element {
        &self.kernel_class
    }

    pub fn fiber_dim(&self) -> u32 {
        self.fiber_dim
    }

    fn base_len(&self) -> usize {
        self.base.generators().len()
    }

    /// Pullback along the diagonal `E -> E x_B E`: `v_L, v_R -> v`.
    pub fn diagonal_pullback(&self, x: &Element) -> Element {
        let k = self.base_len();
        let raw: Element = x
            .monomials()
            .map(|m| {
                let mut exps: Vec<u16> = m.exponents().iter().copied().take(k).collect();
                exps.resize(k, 0);
                exps.push(m.exponent(k) + m.exponent(k + 1));
                Monomial::from_exponents(exps)
            })
            .collect();
        self.e_ring
            .normal_form(&raw)
            .expect("diagonal image lives in the E ring")
    }

    /// The involution exchanging the two factors.
    pub fn swap(&self, x: &Element) -> Element {
        let k = self.base_len();
        let raw: Element = x
            .monomials()
            .map(|m| {
                let mut exps: Vec<u16> = m.exponents().iter().copied().take(k).collect();
                exps.resize(k, 0);
                exps.push(m.exponent(k + 1));
                exps.push(m.exponent(k));
                Monomial::from_exponents(exps)
            })
            .collect();
        self.e2b_ring
            .normal_form(&raw)
            .expect("swapped monomials live in the E2B ring")
    }
}

/// Enhancement of `xi (x) L` on the same projectivization: `v + w_1(L)`.
pub fn twist_enhancement(model: &ProjectiveModel, w1_l: &Element) -> Result<Element, ModelError> {
    let w1 = model.base.normal_form(w1_l)?;
    if !w1.is_zero() && model.base.homogeneous_degree(&w1) != Some(1) {
        return Err(ModelError::NotDegreeOne);
    }
    let lifted = model.e_ring.normal_form(&w1)?;
    Ok(model.e_ring.add(&model.v, &lifted))
}
