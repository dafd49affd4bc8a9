//! Heights, genus estimates and the bound pipeline.
//!
//! Every bound is produced as a [`Bound`] tagged with the [`BoundSource`]
//! that justifies it; [`BoundInterval::from_bounds`] keeps the best lower and
//! upper candidates. TC is always the reduced (normalized) version, so a
//! contractible fibre has TC 0 and the circle has TC 1.

pub mod gf2;

use std::fmt;

use thiserror::Error;

use crate::bundle::{ModelError, ProjectiveModel};
use crate::char_classes::{dual_total_sw, q_poly, ClassError};
use crate::ring::{Element, PresentedRing, RingError};
use crate::BundleSpec;

use gf2::{BitVector, EchelonBasis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("class is not homogeneous")]
    Inhomogeneous,
    #[error("expected a class of degree {expected}, found degree {found}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("height of a nonzero degree-0 class is unbounded")]
    DegreeZero,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    EmptyInterval { lower: u32, upper: u32 },
    #[error("binomial coefficient C({a}, {b}) requested with b > a")]
    BinomialRange { a: u64, b: u64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Which result justifies a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundSource {
    /// Height of `v_L + v_R`, the class killed by the diagonal.
    KernelClassHeight,
    /// `h(w_1 | w_2) + 1` for circle bundles.
    RelativeHeight,
    /// TC of the fibre.
    FiberTc,
    /// `dim B + 2 dim X`.
    GeneralUpper,
    /// `genus(w_1) + 1 <= dim B + 1` for circle bundles.
    CircleDimension,
    /// Circle bundle over a closed manifold with `w_1^n = 0`: at most `n`.
    CircleClosedManifold,
    /// Projective bundle over a closed manifold: at most `n + 2d - 1`.
    ClosedManifoldSharp,
    /// Orientable circle bundle: exactly 1.
    Orientable,
    /// Rank-1 bundle: the fibre is a point.
    PointFiber,
}

impl BoundSource {
    pub const ALL: [BoundSource; 9] = [
        BoundSource::KernelClassHeight,
        BoundSource::RelativeHeight,
        BoundSource::FiberTc,
        BoundSource::GeneralUpper,
        BoundSource::CircleDimension,
        BoundSource::CircleClosedManifold,
        BoundSource::ClosedManifoldSharp,
        BoundSource::Orientable,
        BoundSource::PointFiber,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            BoundSource::KernelClassHeight => "kernel-class-height",
            BoundSource::RelativeHeight => "relative-height",
            BoundSource::FiberTc => "fiber-tc",
            BoundSource::GeneralUpper => "general-upper",
            BoundSource::CircleDimension => "circle-dimension",
            BoundSource::CircleClosedManifold => "circle-closed-manifold",
            BoundSource::ClosedManifoldSharp => "closed-manifold-sharp",
            BoundSource::Orientable => "orientable-exact",
            BoundSource::PointFiber => "point-fiber",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        BoundSource::ALL.into_iter().find(|s| s.tag() == tag)
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

/// One candidate bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub side: Side,
    pub value: u32,
    pub source: BoundSource,
}

impl Bound {
    pub fn lower(value: u32, source: BoundSource) -> Self {
        Bound {
            side: Side::Lower,
            value,
            source,
        }
    }

    pub fn upper(value: u32, source: BoundSource) -> Self {
        Bound {
            side: Side::Upper,
            value,
            source,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundInterval {
    lower: u32,
    lower_source: BoundSource,
    /// `None` is unbounded.
    upper: Option<u32>,
    upper_source: Option<BoundSource>,
}

impl BoundInterval {
    pub fn new(
        lower: u32,
        lower_source: BoundSource,
        upper: Option<(u32, BoundSource)>,
    ) -> Result<Self, BoundsError> {
        if let Some((u, _)) = upper {
            if lower > u {
                return Err(BoundsError::EmptyInterval { lower, upper: u });
            }
        }
        Ok(BoundInterval {
            lower,
            lower_source,
            upper: upper.map(|(u, _)| u),
            upper_source: upper.map(|(_, s)| s),
        })
    }

    pub fn exact(value: u32, source: BoundSource) -> Self {
        BoundInterval {
            lower: value,
            lower_source: source,
            upper: Some(value),
            upper_source: Some(source),
        }
    }

    /// Largest lower and smallest upper candidate; ties go to the earlier one.
    pub fn from_bounds(bounds: &[Bound]) -> Result<Self, BoundsError> {
        let mut lower: Option<Bound> = None;
        let mut upper: Option<Bound> = None;
        for b in bounds {
            match b.side {
                Side::Lower if lower.is_none_or(|l| b.value > l.value) => lower = Some(*b),
                Side::Upper if upper.is_none_or(|u| b.value < u.value) => upper = Some(*b),
                _ => {}
            }
        }
        let lower = lower.ok_or_else(|| BoundsError::Precondition("no lower bound".into()))?;
        BoundInterval::new(
            lower.value,
            lower.source,
            upper.map(|u| (u.value, u.source)),
        )
    }

    pub fn lower(&self) -> u32 {
        self.lower
    }

    pub fn upper(&self) -> Option<u32> {
        self.upper
    }

    pub fn lower_source(&self) -> BoundSource {
        self.lower_source
    }

    pub fn upper_source(&self) -> Option<BoundSource> {
        self.upper_source
    }

    pub fn is_exact(&self) -> bool {
        self.upper == Some(self.lower)
    }
}

impl fmt::Display for BoundInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.upper {
            Some(u) => write!(f, "[{}, {}]", self.lower, u),
            None => write!(f, "[{}, unbounded)", self.lower),
        }
    }
}

/// `h(alpha) <= genus(alpha) <= upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusInterval {
    pub lower: u32,
    pub upper: u32,
    pub exact: bool,
}

fn positive_degree(ring: &PresentedRing, x: &Element) -> Result<u32, BoundsError> {
    match ring.homogeneous_degree(x) {
        None => Err(BoundsError::Inhomogeneous),
        Some(0) => Err(BoundsError::DegreeZero),
        Some(d) => Ok(d),
    }
}

/// Largest `k` with `x^k != 0`; zero for `x = 0`.
pub fn height(ring: &PresentedRing, x: &Element) -> Result<u32, BoundsError> {
    let x = ring.normal_form(x)?;
    if x.is_zero() {
        return Ok(0);
    }
    let degree = positive_degree(ring, &x)?;
    let cap = ring.top_dimension() / degree;
    let mut power = x.clone();
    let mut k = 1;
    while k < cap {
        power = ring.mul(&power, &x);
        if power.is_zero() {
            break;
        }
        k += 1;
    }
    Ok(k)
}

/// Whether `x` lies in the principal ideal `(b)`, by a linear solve in the
/// graded piece of `x`.
pub fn ideal_contains(base: &PresentedRing, x: &Element, b: &Element) -> Result<bool, BoundsError> {
    let x = base.normal_form(x)?;
    let b = base.normal_form(b)?;
    if x.is_zero() {
        return Ok(true);
    }
    let k = base
        .homogeneous_degree(&x)
        .ok_or(BoundsError::Inhomogeneous)?;
    if b.is_zero() {
        return Ok(false);
    }
    let db = base
        .homogeneous_degree(&b)
        .ok_or(BoundsError::Inhomogeneous)?;
    if db > k {
        return Ok(false);
    }
    let columns = base.monomial_basis(k)?;
    let to_bits = |e: &Element| {
        let mut v = BitVector::zeros(columns.len());
        for m in e.monomials() {
            let i = columns
                .binary_search(m)
                .expect("normal form lies in the basis");
            v.flip(i);
        }
        v
    };
    let mut span = EchelonBasis::new();
    for m in base.monomial_basis(k - db)? {
        let row = base.mul(&Element::from_monomial(m), &b);
        span.insert(to_bits(&row));
    }
    Ok(span.contains(&to_bits(&x)))
}

/// Largest `k` with `a^k` outside `(b)`. `None` when already `1` lies in
/// `(b)`, in which case the relative-height bound says nothing.
pub fn relative_height(
    base: &PresentedRing,
    a: &Element,
    b: &Element,
) -> Result<Option<u32>, BoundsError> {
    let a = base.normal_form(a)?;
    if !a.is_zero() {
        positive_degree(base, &a)?;
    }
    let b = base.normal_form(b)?;
    if !b.is_zero() && base.homogeneous_degree(&b).is_none() {
        return Err(BoundsError::Inhomogeneous);
    }
    // a^k in (b) implies a^{k+1} in (b), so the first hit decides
    let mut power = Element::one();
    let mut k: u32 = 0;
    loop {
        if ideal_contains(base, &power, &b)? {
            return Ok(k.checked_sub(1));
        }
        power = base.mul(&power, &a);
        k += 1;
    }
}

pub fn genus_interval(
    base: &PresentedRing,
    alpha: &Element,
    n: u32,
    closed_manifold: bool,
) -> Result<GenusInterval, BoundsError> {
    let alpha = base.normal_form(alpha)?;
    if alpha.is_zero() {
        return Ok(GenusInterval {
            lower: 0,
            upper: 0,
            exact: true,
        });
    }
    let degree = positive_degree(base, &alpha)?;
    if degree != 1 {
        return Err(BoundsError::WrongDegree {
            expected: 1,
            found: degree,
        });
    }
    let lower = height(base, &alpha)?.min(n);
    let mut upper = n;
    if closed_manifold {
        // on a closed manifold the genus is maximal iff alpha^n != 0
        if base.pow(&alpha, n).is_zero() {
            upper = n.saturating_sub(1);
        } else {
            return Ok(GenusInterval {
                lower: n,
                upper: n,
                exact: true,
            });
        }
    }
    Ok(GenusInterval {
        lower,
        upper,
        exact: lower == upper,
    })
}

/// Known values and estimates for TC of `RP^d`.
pub fn fiber_tc_interval(d: u32) -> Result<BoundInterval, BoundsError> {
    let src = BoundSource::FiberTc;
    if d == 0 {
        return Err(BoundsError::Precondition(
            "fibre dimension must be positive".into(),
        ));
    }
    if matches!(d, 1 | 3 | 7) {
        return Ok(BoundInterval::exact(d, src));
    }
    if d.is_power_of_two() {
        return Ok(BoundInterval::exact(2 * d - 1, src));
    }
    let upper = if d % 2 == 1 {
        let k = match d % 8 {
            1 => 0,
            3 | 5 => 1,
            _ => 4,
        };
        2 * d - d.count_ones() - k
    } else {
        2 * d - 1
    };
    BoundInterval::new(d + 1, src, Some((upper, src)))
}

/// Parity of `C(a, b)` by digit domination.
pub fn binom_mod2(a: u64, b: u64) -> Result<u8, BoundsError> {
    if b > a {
        return Err(BoundsError::BinomialRange { a, b });
    }
    Ok(u8::from(a & b == b))
}

/// Candidate bounds for the unit circle bundle of a rank-2 bundle.
pub fn circle_bounds(spec: &BundleSpec) -> Result<Vec<Bound>, BoundsError> {
    if spec.rank() != 2 {
        return Err(BoundsError::Precondition(format!(
            "circle bounds need rank 2, got {}",
            spec.rank()
        )));
    }
    let base = spec.base();
    let n = spec.base_dim();
    let w1 = spec.orientation_class();
    if w1.is_zero() {
        return Ok(vec![
            Bound::lower(1, BoundSource::Orientable),
            Bound::upper(1, BoundSource::Orientable),
        ]);
    }
    let w2 = spec.total_sw().component(base, 2);
    let mut bounds = vec![Bound::lower(1, BoundSource::FiberTc)];
    if let Some(h) = relative_height(base, &w1, &w2)? {
        bounds.push(Bound::lower(h + 1, BoundSource::RelativeHeight));
    }
    let genus = genus_interval(base, &w1, n, spec.closed_manifold())?;
    let source = if spec.closed_manifold() && genus.upper < n {
        BoundSource::CircleClosedManifold
    } else {
        BoundSource::CircleDimension
    };
    bounds.push(Bound::upper(genus.upper + 1, source));
    bounds.push(Bound::upper(n + 2, BoundSource::GeneralUpper));
    Ok(bounds)
}

pub fn circle_tc_interval(spec: &BundleSpec) -> Result<BoundInterval, BoundsError> {
    BoundInterval::from_bounds(&circle_bounds(spec)?)
}

/// Candidate bounds for a projective bundle with fibre `RP^d`, `d >= 2`.
pub fn projective_bounds(
    model: &ProjectiveModel,
    spec: &BundleSpec,
) -> Result<Vec<Bound>, BoundsError> {
    let d = spec.fiber_dim();
    if d < 2 {
        return Err(BoundsError::Precondition(format!(
            "projective bounds need rank at least 3, got {}",
            spec.rank()
        )));
    }
    let n = spec.base_dim();
    let kernel_height = height(model.e2b_ring(), model.kernel_class())?;
    let fiber = fiber_tc_interval(d)?;
    let mut bounds = vec![
        Bound::lower(kernel_height, BoundSource::KernelClassHeight),
        Bound::lower(fiber.lower(), BoundSource::FiberTc),
        Bound::upper(n + 2 * d, BoundSource::GeneralUpper),
    ];
    if spec.closed_manifold() {
        bounds.push(Bound::upper(
            n + 2 * d - 1,
            BoundSource::ClosedManifoldSharp,
        ));
    }
    Ok(bounds)
}

pub fn projective_tc_interval(
    model: &ProjectiveModel,
    spec: &BundleSpec,
) -> Result<BoundInterval, BoundsError> {
    BoundInterval::from_bounds(&projective_bounds(model, spec)?)
}

/// `(v_L + v_R)^{n+2d} = 0`.
pub fn check_power_vanishing(
    model: &ProjectiveModel,
    spec: &BundleSpec,
) -> Result<bool, BoundsError> {
    let d = spec.fiber_dim();
    if d < 2 {
        return Err(BoundsError::Precondition(
            "power vanishing needs rank at least 3".into(),
        ));
    }
    let n = spec.base_dim();
    Ok(model
        .e2b_ring()
        .pow(model.kernel_class(), n + 2 * d)
        .is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Enhancement {
    Left,
    Right,
}

/// Compares `v^{d+i}`, reduced directly, against
/// `sum_{j=0..d} wbar_{i+j} Q_{d-j}(v)`. At the largest admissible `i`
/// (`i = n + d`) it also requires `h(v) = m + d` for the top dual degree `m`.
pub fn check_power_expansion(
    model: &ProjectiveModel,
    spec: &BundleSpec,
    which: Enhancement,
    i: u32,
) -> Result<bool, BoundsError> {
    let n = spec.base_dim();
    let d = spec.fiber_dim();
    if i == 0 || i > n + d {
        return Err(BoundsError::Precondition(format!(
            "expansion index {i} outside 1..={}",
            n + d
        )));
    }
    let base = spec.base();
    let ring = model.e2b_ring();
    let v = match which {
        Enhancement::Left => model.v_l(),
        Enhancement::Right => model.v_r(),
    };
    let dual = dual_total_sw(base, spec.total_sw())?;
    let lhs = ring.pow(v, d + i);
    let mut rhs = Element::zero();
    for j in 0..=d {
        let coefficient = dual.component(base, i + j);
        if coefficient.is_zero() {
            continue;
        }
        let q = q_poly(spec.total_sw(), base, d - j, v, ring)?;
        rhs = ring.add(&rhs, &ring.mul(&ring.normal_form(&coefficient)?, &q));
    }
    let mut ok = lhs == rhs;
    if i == n + d {
        ok &= height(ring, v)? == dual.top_degree() + d;
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::build_projective_model;

    fn rp(n: u32) -> PresentedRing {
        PresentedRing::monomial_quotient(&[("beta", 1, (n + 1) as u16)], n).unwrap()
    }

    fn torus() -> PresentedRing {
        PresentedRing::monomial_quotient(&[("a1", 1, 2), ("a2", 1, 2)], 2).unwrap()
    }

    fn s2() -> PresentedRing {
        PresentedRing::monomial_quotient(&[("u", 2, 2)], 2).unwrap()
    }

    fn rp2_cubed() -> PresentedRing {
        PresentedRing::monomial_quotient(&[("a", 1, 3), ("b", 1, 3), ("c", 1, 3)], 6).unwrap()
    }

    fn spec(base: PresentedRing, rank: u32, w: &str, closed: bool) -> BundleSpec {
        let w = base.parse(w).unwrap();
        BundleSpec::new(base, rank, &w, closed).unwrap()
    }

    fn sec61() -> (BundleSpec, ProjectiveModel) {
        let s = spec(
            rp2_cubed(),
            3,
            "1 + a + b + c + a*b + a*c + b*c + a*b*c",
            true,
        );
        let m = build_projective_model(&s).unwrap();
        (s, m)
    }

    #[test]
    fn heights_in_three_line_bundle_example() {
        let (_, m) = sec61();
        let r = m.e2b_ring();
        assert_eq!(height(r, m.v_l()).unwrap(), 8);
        assert_eq!(height(r, m.v_r()).unwrap(), 8);
        assert_eq!(height(r, m.kernel_class()).unwrap(), 9);
        assert_eq!(height(r, &Element::zero()).unwrap(), 0);
        assert_eq!(r.pow(m.v_l(), 8), r.parse("a^2*b^2*c^2*v_L^2").unwrap());
        assert_eq!(
            r.pow(m.kernel_class(), 9),
            r.parse("a^2*b^2*c^2*v_L^2*v_R + a^2*b^2*c^2*v_L*v_R^2")
                .unwrap()
        );
    }

    #[test]
    fn height_rejects_bad_input() {
        let r = rp(3);
        assert_eq!(
            height(&r, &r.parse("1 + beta").unwrap()),
            Err(BoundsError::Inhomogeneous)
        );
        assert_eq!(height(&r, &Element::one()), Err(BoundsError::DegreeZero));
    }

    #[test]
    fn relative_heights() {
        let r = rp(5);
        let beta = r.parse("beta").unwrap();
        assert_eq!(
            relative_height(&r, &beta, &Element::zero()).unwrap(),
            Some(5)
        );
        let t = torus();
        let w1 = t.parse("a1 + a2").unwrap();
        let w2 = t.parse("a1*a2").unwrap();
        assert_eq!(relative_height(&t, &w1, &w2).unwrap(), Some(1));
        assert_eq!(relative_height(&t, &w1, &Element::one()).unwrap(), None);
        assert!(!ideal_contains(&t, &w1, &w2).unwrap());
        assert!(ideal_contains(&t, &t.mul(&w1, &w1), &w2).unwrap());
    }

    #[test]
    fn genus_estimates() {
        let beta = rp(4).parse("beta").unwrap();
        assert_eq!(
            genus_interval(&rp(4), &beta, 4, true).unwrap(),
            GenusInterval {
                lower: 4,
                upper: 4,
                exact: true
            }
        );
        assert_eq!(
            genus_interval(&rp(4), &Element::zero(), 4, true).unwrap(),
            GenusInterval {
                lower: 0,
                upper: 0,
                exact: true
            }
        );
        let t = torus();
        let w1 = t.parse("a1 + a2").unwrap();
        assert_eq!(
            genus_interval(&t, &w1, 2, true).unwrap(),
            GenusInterval {
                lower: 1,
                upper: 1,
                exact: true
            }
        );
        assert_eq!(
            genus_interval(&t, &w1, 2, false).unwrap(),
            GenusInterval {
                lower: 1,
                upper: 2,
                exact: false
            }
        );
        let u = s2().parse("u").unwrap();
        assert!(matches!(
            genus_interval(&s2(), &u, 2, true),
            Err(BoundsError::WrongDegree {
                expected: 1,
                found: 2
            })
        ));
    }

    #[test]
    fn fibre_values() {
        let pair = |d| {
            let i = fiber_tc_interval(d).unwrap();
            (i.lower(), i.upper().unwrap())
        };
        assert_eq!(pair(15), (16, 22));
        assert_eq!(pair(1), (1, 1));
        assert_eq!(pair(3), (3, 3));
        assert_eq!(pair(7), (7, 7));
        assert_eq!(pair(4), (7, 7));
        assert_eq!(pair(2), (3, 3));
        assert_eq!(pair(5), (6, 7));
        assert_eq!(pair(9), (10, 16));
        assert_eq!(pair(6), (7, 11));
        assert!(fiber_tc_interval(0).is_err());
    }

    #[test]
    fn lucas_parity() {
        assert_eq!(binom_mod2(30, 14).unwrap(), 1);
        assert_eq!(binom_mod2(9, 0).unwrap(), 1);
        assert_eq!(binom_mod2(4, 1).unwrap(), 0);
        assert!(binom_mod2(1, 2).is_err());
    }

    #[test]
    fn circle_examples() {
        for n in 1..=6 {
            let i = circle_tc_interval(&spec(rp(n), 2, "1 + beta", true)).unwrap();
            assert_eq!((i.lower(), i.upper()), (n + 1, Some(n + 1)));
            assert_eq!(i.lower_source(), BoundSource::RelativeHeight);
            assert_eq!(i.upper_source(), Some(BoundSource::CircleDimension));
        }
        let t = circle_tc_interval(&spec(torus(), 2, "1 + a1 + a2 + a1*a2", true)).unwrap();
        assert_eq!((t.lower(), t.upper()), (2, Some(2)));
        assert_eq!(t.upper_source(), Some(BoundSource::CircleClosedManifold));
        let hopf = circle_tc_interval(&spec(s2(), 2, "1 + u", true)).unwrap();
        assert_eq!((hopf.lower(), hopf.upper()), (1, Some(1)));
        assert_eq!(hopf.lower_source(), BoundSource::Orientable);
        assert!(circle_tc_interval(&spec(rp(2), 3, "1", true)).is_err());
    }

    #[test]
    fn projective_examples() {
        let (s, m) = sec61();
        let i = projective_tc_interval(&m, &s).unwrap();
        assert_eq!((i.lower(), i.upper()), (9, Some(9)));

        let s = spec(rp(2), 3, "1 + beta", true);
        let m = build_projective_model(&s).unwrap();
        let i = projective_tc_interval(&m, &s).unwrap();
        assert_eq!((i.lower(), i.upper()), (5, Some(5)));
        assert_eq!(i.lower_source(), BoundSource::KernelClassHeight);
        assert_eq!(i.upper_source(), Some(BoundSource::ClosedManifoldSharp));

        let s = spec(rp(2), 3, "1 + beta", false);
        let m = build_projective_model(&s).unwrap();
        let i = projective_tc_interval(&m, &s).unwrap();
        assert_eq!((i.lower(), i.upper()), (5, Some(6)));
        assert!(!i.is_exact());
    }

    #[test]
    fn circle_base_rank_sixteen() {
        let base = PresentedRing::monomial_quotient(&[("beta", 1, 2)], 1).unwrap();
        let s = spec(base, 16, "1 + beta", true);
        let m = build_projective_model(&s).unwrap();
        let i = projective_tc_interval(&m, &s).unwrap();
        assert_eq!((i.lower(), i.upper()), (30, Some(30)));
        assert!(check_power_vanishing(&m, &s).unwrap());
    }

    #[test]
    fn vanishing_and_expansion() {
        let (s, m) = sec61();
        assert!(check_power_vanishing(&m, &s).unwrap());
        for i in 1..=8 {
            assert!(
                check_power_expansion(&m, &s, Enhancement::Left, i).unwrap(),
                "L {i}"
            );
            assert!(
                check_power_expansion(&m, &s, Enhancement::Right, i).unwrap(),
                "R {i}"
            );
        }
        assert!(check_power_expansion(&m, &s, Enhancement::Left, 9).is_err());

        // trivial bundle over a point
        let point = PresentedRing::monomial_quotient(&[], 0).unwrap();
        let s = spec(point, 4, "1", true);
        let m = build_projective_model(&s).unwrap();
        assert!(check_power_vanishing(&m, &s).unwrap());
        assert!(m.e2b_ring().pow(m.v_l(), 4).is_zero());
        for i in 1..=3 {
            assert!(check_power_expansion(&m, &s, Enhancement::Left, i).unwrap());
        }
    }

    #[test]
    fn hopf_quotient_heights() {
        let s = spec(s2(), 2, "1 + u", true);
        let m = build_projective_model(&s).unwrap();
        let r = m.e2b_ring();
        assert_eq!(height(r, m.v_l()).unwrap(), 3);
        assert_eq!(height(r, m.v_r()).unwrap(), 3);
        assert_eq!(height(r, m.kernel_class()).unwrap(), 1);
        assert!(check_power_expansion(&m, &s, Enhancement::Left, 3).unwrap());
    }

    #[test]
    fn from_bounds_keeps_first_on_ties() {
        let i = BoundInterval::from_bounds(&[
            Bound::lower(3, BoundSource::KernelClassHeight),
            Bound::lower(3, BoundSource::FiberTc),
            Bound::upper(5, BoundSource::GeneralUpper),
        ])
        .unwrap();
        assert_eq!(i.lower_source(), BoundSource::KernelClassHeight);
        assert!(matches!(
            BoundInterval::from_bounds(&[
                Bound::lower(6, BoundSource::KernelClassHeight),
                Bound::upper(5, BoundSource::GeneralUpper),
            ]),
            Err(BoundsError::EmptyInterval { lower: 6, upper: 5 })
        ));
        for s in BoundSource::ALL {
            assert_eq!(BoundSource::from_tag(s.tag()), Some(s));
        }
    }
}
