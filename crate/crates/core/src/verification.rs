//! Brute-force oracles, independent of the fast paths they cross-check.
//!
//! Each oracle has a hard size cap and errors out beyond it.

use thiserror::Error;

use crate::bundle::ProjectiveModel;
use crate::ring::{Element, PresentedRing, RingError};

pub const PASCAL_MAX: u64 = 64;
pub const KERNEL_ENUMERATION_CAP: usize = 24;
pub const IDEAL_ENUMERATION_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("Pascal oracle needs 0 <= b <= a <= {PASCAL_MAX}, got ({a}, {b})")]
    PascalRange { a: u64, b: u64 },
    #[error("enumeration over dimension {dim} exceeds the cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("class is not homogeneous")]
    Inhomogeneous,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `C(a, b) mod 2` from the additive recurrence, row by row.
pub fn pascal_mod2(a: u64, b: u64) -> Result<u8, OracleError> {
    if b > a || a > PASCAL_MAX {
        return Err(OracleError::PascalRange { a, b });
    }
    let mut row = vec![1u8];
    for _ in 0..a {
        let mut next = vec![1u8; row.len() + 1];
        for j in 1..row.len() {
            next[j] = (row[j - 1] + row[j]) % 2;
        }
        row = next;
    }
    Ok(row[b as usize])
}

/// All nonzero degree-1 classes of `E x_B E` killed by the diagonal,
/// found by trying every class.
pub fn exhaustive_kernel_degree1(model: &ProjectiveModel) -> Result<Vec<Element>, OracleError> {
    let upstairs = model.e2b_ring();
    let basis = upstairs.monomial_basis(1)?;
    if basis.len() > KERNEL_ENUMERATION_CAP {
        return Err(OracleError::CapExceeded {
            dim: basis.len(),
            cap: KERNEL_ENUMERATION_CAP,
        });
    }
    let downstairs = model.e_ring().monomial_basis(1)?;
    // image of each basis monomial as a bitmask over the degree-1 basis of E
    let images: Vec<u64> = basis
        .iter()
        .map(|m| {
            let image = model.diagonal_pullback(&Element::from_monomial(m.clone()));
            image.monomials().fold(0u64, |acc, t| {
                let i = downstairs
                    .iter()
                    .position(|d| d == t)
                    .expect("degree-1 image");
                acc ^ (1 << i)
            })
        })
        .collect();
    // gray-code walk over all 2^dim subsets
    let mut found = Vec::new();
    let mut mask = 0u64;
    let mut acc = 0u64;
    for step in 1u64..(1u64 << basis.len()) {
        let flip = step.trailing_zeros() as usize;
        mask ^= 1 << flip;
        acc ^= images[flip];
        if acc == 0 {
            let class: Element = (0..basis.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| basis[i].clone())
                .collect();
            found.push(class);
        }
    }
    found.sort_by(|a, b| a.monomials().cmp(b.monomials()));
    Ok(found)
}

/// Membership of `x` in `(b)` by summing every subset of the spanning set
/// `{m * b}` of the relevant graded piece.
pub fn ideal_membership_bruteforce(
    base: &PresentedRing,
    x: &Element,
    b: &Element,
) -> Result<bool, OracleError> {
    let x = base.normal_form(x)?;
    let b = base.normal_form(b)?;
    if x.is_zero() {
        return Ok(true);
    }
    let k = base
        .homogeneous_degree(&x)
        .ok_or(OracleError::Inhomogeneous)?;
    if b.is_zero() {
        return Ok(false);
    }
    let db = base
        .homogeneous_degree(&b)
        .ok_or(OracleError::Inhomogeneous)?;
    if db > k {
        return Ok(false);
    }
    let spanning: Vec<Element> = base
        .monomial_basis(k - db)?
        .into_iter()
        .map(|m| base.mul(&Element::from_monomial(m), &b))
        .collect();
    if spanning.len() > IDEAL_ENUMERATION_CAP {
        return Err(OracleError::CapExceeded {
            dim: spanning.len(),
            cap: IDEAL_ENUMERATION_CAP,
        });
    }
    for subset in 0u32..(1u32 << spanning.len()) {
        let sum = (0..spanning.len())
            .filter(|i| subset >> i & 1 == 1)
            .fold(Element::zero(), |acc, i| base.add(&acc, &spanning[i]));
        if sum == x {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Relative height driven by [`ideal_membership_bruteforce`].
pub fn relative_height_bruteforce(
    base: &PresentedRing,
    a: &Element,
    b: &Element,
) -> Result<Option<u32>, OracleError> {
    let mut k: u32 = 0;
    loop {
        let power = base.pow(a, k);
        if ideal_membership_bruteforce(base, &power, b)? {
            return Ok(k.checked_sub(1));
        }
        k += 1;
    }
}
