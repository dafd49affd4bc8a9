#![allow(dead_code)]

use projtc::ring::{Element, Monomial, PresentedRing};
use projtc::{build_projective_model, BundleSpec, ProjectiveModel};
use rand::Rng;

/// Monomial quotient with up to `max_gens` generators of degree 1 or 2,
/// truncated at a random dimension `<= max_dim`.
pub fn random_base(rng: &mut impl Rng, max_gens: usize, max_dim: u32) -> PresentedRing {
    let count = rng.gen_range(0..=max_gens);
    let names: Vec<String> = (0..count).map(|i| format!("x{i}")).collect();
    let gens: Vec<(&str, u32, u16)> = names
        .iter()
        .map(|n| (n.as_str(), rng.gen_range(1..=2), rng.gen_range(2..=4)))
        .collect();
    let dim = rng.gen_range(0..=max_dim);
    PresentedRing::monomial_quotient(&gens, dim).unwrap()
}

/// Random homogeneous element of `degree`, possibly zero.
pub fn random_homogeneous(rng: &mut impl Rng, ring: &PresentedRing, degree: u32) -> Element {
    let basis = ring.monomial_basis(degree).unwrap_or_default();
    basis.into_iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// Random total class `1 + w_1 + ... + w_r` with `w_i` in degree `i`.
pub fn random_total_class(rng: &mut impl Rng, ring: &PresentedRing, rank: u32) -> Element {
    let mut w = Element::one();
    for i in 1..=rank.min(ring.top_dimension()) {
        w = ring.add(&w, &random_homogeneous(rng, ring, i));
    }
    w
}

pub fn random_spec(rng: &mut impl Rng, ranks: std::ops::RangeInclusive<u32>) -> BundleSpec {
    let base = random_base(rng, 4, 6);
    let rank = rng.gen_range(ranks);
    let w = random_total_class(rng, &base, rank);
    let closed = rng.gen_bool(0.5);
    BundleSpec::new(base, rank, &w, closed).unwrap()
}

pub fn random_model(
    rng: &mut impl Rng,
    ranks: std::ops::RangeInclusive<u32>,
) -> (BundleSpec, ProjectiveModel) {
    let spec = random_spec(rng, ranks);
    let model = build_projective_model(&spec).unwrap();
    (spec, model)
}

/// Random element over every degree of `ring`, including non-normal monomials.
pub fn random_raw_element(rng: &mut impl Rng, ring: &PresentedRing, terms: usize) -> Element {
    let n = ring.generators().len();
    (0..rng.gen_range(0..=terms))
        .map(|_| Monomial::from_exponents((0..n).map(|_| rng.gen_range(0..=3))))
        .collect()
}
