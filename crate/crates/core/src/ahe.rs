//! Scheme-generic interface over the additively homomorphic engines.
//!
//! Matrix-multiplication engines are written once against this trait and run
//! unchanged over either scheme. The axioms they rely on: `decrypt(a + b) =
//! decrypt(a) + decrypt(b)`, `decrypt(s * c) = s * decrypt(c)`, and a free
//! additive identity [`Ahe::zero`] whose addition costs the same as any
//! other.

use num_bigint::BigUint;
use thiserror::Error;

use crate::counter::OpCounter;
use crate::elgamal::{EcElGamal, ElGamalCiphertext, ElGamalError};
use crate::paillier::{Paillier, PaillierCiphertext, PaillierError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AheError {
    #[error(transparent)]
    ElGamal(#[from] ElGamalError),
    #[error(transparent)]
    Paillier(#[from] PaillierError),
    #[error("decrypted value does not fit in u64")]
    ValueTooLarge,
}

pub trait Ahe {
    type Ciphertext: Clone;

    fn scheme_name(&self) -> &'static str;

    /// The additive identity ciphertext. Minting it is free; adding it is
    /// billed like any other ciphertext addition.
    fn zero(&self) -> Self::Ciphertext;

    /// Encrypt with fresh randomness (uncounted setup work).
    fn encrypt(&mut self, m: u64) -> Result<Self::Ciphertext, AheError>;

    /// Decrypt exactly or report failure (uncounted setup work).
    fn decrypt(&self, ct: &Self::Ciphertext) -> Result<u64, AheError>;

    fn ct_add(
        &self,
        ctr: &mut OpCounter,
        a: &Self::Ciphertext,
        b: &Self::Ciphertext,
    ) -> Self::Ciphertext;

    fn ct_sub(
        &self,
        ctr: &mut OpCounter,
        a: &Self::Ciphertext,
        b: &Self::Ciphertext,
    ) -> Self::Ciphertext;

    /// Multiply by a signed plaintext scalar, billed at the declared width.
    fn ct_scalar_mul(
        &self,
        ctr: &mut OpCounter,
        s: i64,
        width: u32,
        ct: &Self::Ciphertext,
    ) -> Self::Ciphertext;
}

impl Ahe for EcElGamal {
    type Ciphertext = ElGamalCiphertext;

    fn scheme_name(&self) -> &'static str {
        "ec-elgamal"
    }

    fn zero(&self) -> Self::Ciphertext {
        self.zero_ciphertext()
    }

    fn encrypt(&mut self, m: u64) -> Result<Self::Ciphertext, AheError> {
        Ok(EcElGamal::encrypt(self, m)?)
    }

    fn decrypt(&self, ct: &Self::Ciphertext) -> Result<u64, AheError> {
        Ok(EcElGamal::decrypt(self, ct)?)
    }

    fn ct_add(
        &self,
        ctr: &mut OpCounter,
        a: &Self::Ciphertext,
        b: &Self::Ciphertext,
    ) -> Self::Ciphertext {
        EcElGamal::ct_add(self, ctr, a, b)
    }

    fn ct_sub(
        &self,
        ctr: &mut OpCounter,
        a: &Self::Ciphertext,
        b: &Self::Ciphertext,
    ) -> Self::Ciphertext {
        EcElGamal::ct_sub(self, ctr, a, b)
    }

    fn ct_scalar_mul(
        &self,
        ctr: &mut OpCounter,
        s: i64,
        width: u32,
        ct: &Self::Ciphertext,
    ) -> Self::Ciphertext {
        EcElGamal::ct_scalar_mul(self, ctr, s, width, ct)
    }
}

impl Ahe for Paillier {
    type Ciphertext = PaillierCiphertext;

    fn scheme_name(&self) -> &'static str {
        "paillier"
    }

    fn zero(&self) -> Self::Ciphertext {
        self.zero_ciphertext()
    }

    fn encrypt(&mut self, m: u64) -> Result<Self::Ciphertext, AheError> {
        Ok(Paillier::encrypt(self, &BigUint::from(m))?)
    }

    fn decrypt(&self, ct: &Self::Ciphertext) -> Result<u64, AheError> {
        u64::try_from(Paillier::decrypt(self, ct)).map_err(|_| AheError::ValueTooLarge)
    }

    fn ct_add(
        &self,
        ctr: &mut OpCounter,
        a: &Self::Ciphertext,
        b: &Self::Ciphertext,
    ) -> Self::Ciphertext {
        Paillier::ct_add(self, ctr, a, b)
    }

    fn ct_sub(
        &self,
        ctr: &mut OpCounter,
        a: &Self::Ciphertext,
        b: &Self::Ciphertext,
    ) -> Self::Ciphertext {
        Paillier::ct_sub(self, ctr, a, b)
    }

    fn ct_scalar_mul(
        &self,
        ctr: &mut OpCounter,
        s: i64,
        width: u32,
        ct: &Self::Ciphertext,
    ) -> Self::Ciphertext {
        Paillier::ct_scalar_mul(self, ctr, s, width, ct)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::p256;
    use crate::elgamal::MessageBound;
    use crate::paillier::GeneratorMode;

    fn axioms_hold<E: Ahe>(engine: &mut E) {
        let mut ctr = OpCounter::new();
        let a = engine.encrypt(19).unwrap();
        let b = engine.encrypt(4).unwrap();
        let sum = engine.ct_add(&mut ctr, &a, &b);
        assert_eq!(engine.decrypt(&sum).unwrap(), 23);
        let diff = engine.ct_sub(&mut ctr, &a, &b);
        assert_eq!(engine.decrypt(&diff).unwrap(), 15);
        let prod = engine.ct_scalar_mul(&mut ctr, 5, 8, &a);
        assert_eq!(engine.decrypt(&prod).unwrap(), 95);
        let z = engine.zero();
        assert_eq!(engine.decrypt(&z).unwrap(), 0);
        let same = engine.ct_add(&mut ctr, &z, &a);
        assert_eq!(engine.decrypt(&same).unwrap(), 19);
    }

    #[test]
    fn both_schemes_satisfy_the_axioms() {
        let mut ec = EcElGamal::keygen(p256(), MessageBound::for_width(8, 4), 42);
        axioms_hold(&mut ec);
        let mut pa = Paillier::keygen(16, 42, GeneratorMode::NPlusOne).unwrap();
        axioms_hold(&mut pa);
    }
}
