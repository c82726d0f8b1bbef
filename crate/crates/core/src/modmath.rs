//! Modular arithmetic over arbitrary-precision integers, with an
//! instrumented constant-shape exponentiation ladder.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::counter::OpCounter;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MathError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(BigUint),
    #[error("operands have different moduli ({0} vs {1})")]
    ModulusMismatch(BigUint, BigUint),
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: BigUint, modulus: BigUint },
}

/// An immutable modulus `m >= 2`, shared by the residues computed under it.
#[derive(Debug, PartialEq, Eq)]
pub struct Modulus {
    value: BigUint,
}

impl Modulus {
    pub fn new(value: BigUint) -> Result<Arc<Self>, MathError> {
        if value < BigUint::from(2u8) {
            return Err(MathError::ModulusTooSmall(value));
        }
        Ok(Arc::new(Self { value }))
    }

    pub fn from_u64(value: u64) -> Result<Arc<Self>, MathError> {
        Self::new(BigUint::from(value))
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn bits(&self) -> u64 {
        self.value.bits()
    }
}

/// A residue in canonical form: `value < modulus` always holds.
#[derive(Debug, Clone)]
pub struct Residue {
    value: BigUint,
    modulus: Arc<Modulus>,
}

impl PartialEq for Residue {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.modulus.value == other.modulus.value
    }
}

impl Eq for Residue {}

impl Residue {
    /// Reduce `value` into canonical form under `modulus`.
    pub fn new(value: BigUint, modulus: &Arc<Modulus>) -> Self {
        Self {
            value: value % &modulus.value,
            modulus: Arc::clone(modulus),
        }
    }

    pub fn from_u64(value: u64, modulus: &Arc<Modulus>) -> Self {
        Self::new(BigUint::from(value), modulus)
    }

    /// Wrap a value already known to be reduced.
    pub(crate) fn from_canonical(value: BigUint, modulus: &Arc<Modulus>) -> Self {
        debug_assert!(value < modulus.value);
        Self {
            value,
            modulus: Arc::clone(modulus),
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> &Arc<Modulus> {
        &self.modulus
    }

    pub fn into_value(self) -> BigUint {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Combine two residues under their common modulus. Subtraction wraps into
/// canonical form; mismatched moduli are an error, never silently coerced.
pub fn mod_arith(a: &Residue, b: &Residue, op: ArithOp) -> Result<Residue, MathError> {
    if a.modulus.value != b.modulus.value {
        return Err(MathError::ModulusMismatch(
            a.modulus.value.clone(),
            b.modulus.value.clone(),
        ));
    }
    let m = &a.modulus.value;
    let value = match op {
        ArithOp::Add => {
            let s = &a.value + &b.value;
            if s >= *m {
                s - m
            } else {
                s
            }
        }
        ArithOp::Sub => {
            if a.value >= b.value {
                &a.value - &b.value
            } else {
                m - &b.value + &a.value
            }
        }
        ArithOp::Mul => (&a.value * &b.value) % m,
    };
    Ok(Residue {
        value,
        modulus: Arc::clone(&a.modulus),
    })
}

/// Multiplicative inverse by the extended Euclidean algorithm.
pub fn mod_inv(a: &Residue) -> Result<Residue, MathError> {
    let m = &a.modulus.value;
    let e = BigInt::from(a.value.clone()).extended_gcd(&BigInt::from(m.clone()));
    if !e.gcd.is_one() {
        return Err(MathError::NotInvertible {
            value: a.value.clone(),
            modulus: m.clone(),
        });
    }
    let m_signed = BigInt::from(m.clone());
    let mut x = e.x % &m_signed;
    if x.is_negative() {
        x += &m_signed;
    }
    Ok(Residue {
        value: x.to_biguint().expect("canonicalized to non-negative"),
        modulus: Arc::clone(&a.modulus),
    })
}

/// Exponentiation by the two-register powering ladder.
///
/// The ladder walks exactly `width` bits regardless of the exponent's value,
/// performing one multiplication and one squaring per bit; the counter
/// therefore gains exactly `width` of each. `width` must be at least
/// `exp.bits()` (an exponent of zero has width zero and costs nothing).
pub fn mod_pow_width(
    base: &Residue,
    exp: &BigUint,
    width: u32,
    counter: &mut OpCounter,
) -> Residue {
    assert!(
        u64::from(width) >= exp.bits(),
        "declared width {} is below the exponent's {} bits",
        width,
        exp.bits()
    );
    let m = &base.modulus.value;
    let mut r0 = BigUint::one();
    let mut r1 = base.value.clone();
    for i in (0..width).rev() {
        if exp.bit(u64::from(i)) {
            r0 = (&r1 * &r0) % m;
            counter.mod_muls += 1;
            r1 = (&r1 * &r1) % m;
            counter.mod_sqrs += 1;
        } else {
            r1 = (&r1 * &r0) % m;
            counter.mod_muls += 1;
            r0 = (&r0 * &r0) % m;
            counter.mod_sqrs += 1;
        }
    }
    Residue {
        value: r0 % m,
        modulus: Arc::clone(&base.modulus),
    }
}

/// [`mod_pow_width`] at the exponent's own bit-width.
pub fn mod_pow(base: &Residue, exp: &BigUint, counter: &mut OpCounter) -> Residue {
    let width = u32::try_from(exp.bits()).expect("exponent width fits u32");
    mod_pow_width(base, exp, width, counter)
}
