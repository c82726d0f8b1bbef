//! Shared test support.

#![allow(dead_code)]

use pcmm_core::ahe::{Ahe, AheError};
use pcmm_core::counter::OpCounter;

/// Identity "encryption" over `i64` that keeps the elliptic-curve cost
/// accounting: structural and counting laws of the matrix engines can be
/// exercised at shapes where real encryption would be too slow.
pub struct PlainAhe;

impl Ahe for PlainAhe {
    type Ciphertext = i64;

    fn scheme_name(&self) -> &'static str {
        "plain-mock"
    }

    fn zero(&self) -> i64 {
        0
    }

    fn encrypt(&mut self, m: u64) -> Result<i64, AheError> {
        i64::try_from(m).map_err(|_| AheError::ValueTooLarge)
    }

    fn decrypt(&self, ct: &i64) -> Result<u64, AheError> {
        u64::try_from(*ct).map_err(|_| AheError::ValueTooLarge)
    }

    fn ct_add(&self, ctr: &mut OpCounter, a: &i64, b: &i64) -> i64 {
        ctr.point_adds += 2;
        a.checked_add(*b).expect("mock sum fits i64")
    }

    fn ct_sub(&self, ctr: &mut OpCounter, a: &i64, b: &i64) -> i64 {
        ctr.point_adds += 2;
        a.checked_sub(*b).expect("mock difference fits i64")
    }

    fn ct_scalar_mul(&self, ctr: &mut OpCounter, s: i64, width: u32, ct: &i64) -> i64 {
        ctr.record_ecsm(width);
        ctr.record_ecsm(width);
        s.checked_mul(*ct).expect("mock product fits i64")
    }
}
