//! The composite-residuosity additively homomorphic cryptosystem.
//!
//! A ciphertext for `m` under modulus `N = pq` is `g^m * r^N mod N^2`.
//! Ciphertext addition is one modular multiplication; scalar multiplication
//! is one exponentiation, run on the same two-register ladder as the curve
//! scheme so a width-`t` scalar costs exactly `t` squarings plus `t`
//! multiplications. Key generation, encryption, and decryption are
//! setup-class work and stay off the caller's [`OpCounter`].

use std::sync::{Arc, OnceLock};

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::counter::OpCounter;
use crate::modmath::{mod_inv, mod_pow_width, Modulus, Residue};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PaillierError {
    #[error("message {m} is not below the modulus")]
    MessageOutOfRange { m: BigUint },
    #[error("prime width must be at least 16 bits, got {0}")]
    PrimeBitsTooSmall(u32),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("test primes must be distinct")]
    PrimesNotDistinct,
}

/// Choice of the public generator `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorMode {
    /// `g = N + 1`: `g^m = 1 + mN (mod N^2)`, so encryption needs no
    /// exponentiation for the generator factor.
    NPlusOne,
    /// A uniformly sampled `g` of order divisible by `N`.
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaillierCiphertext {
    value: BigUint,
}

impl PaillierCiphertext {
    pub fn value(&self) -> &BigUint {
        &self.value
    }
}

#[derive(Debug)]
pub struct Paillier {
    n: BigUint,
    nn: Arc<Modulus>,
    g: BigUint,
    lambda: BigUint,
    mu: BigUint,
    binomial_g: bool,
    rng: ChaCha20Rng,
}

fn small_primes() -> &'static [u64] {
    static SIEVE: OnceLock<Vec<u64>> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let limit = 2048usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u64);
                for j in (i * i..=limit).step_by(i) {
                    composite[j] = true;
                }
            }
        }
        primes
    })
}

/// 64-round Miller–Rabin with bases drawn from `rng`.
fn is_probable_prime(n: &BigUint, rng: &mut ChaCha20Rng) -> bool {
    if n < &BigUint::from(2u8) {
        return false;
    }
    for &p in small_primes() {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n - 1 is nonzero");
    let d = &n_minus_1 >> s;
    'rounds: for _ in 0..64 {
        let a = rng.gen_biguint_below(&(n - 3u8)) + 2u8;
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'rounds;
            }
        }
        return false;
    }
    true
}

fn gen_prime(bits: u32, rng: &mut ChaCha20Rng) -> BigUint {
    loop {
        let mut candidate = rng.gen_biguint(u64::from(bits));
        candidate.set_bit(u64::from(bits) - 1, true);
        candidate.set_bit(0, true);
        if is_probable_prime(&candidate, rng) {
            return candidate;
        }
    }
}

/// `L(x) = (x - 1) / N`, defined on elements that are 1 mod N.
fn l_function(x: &BigUint, n: &BigUint) -> BigUint {
    (x - 1u8) / n
}

impl Paillier {
    /// Deterministic key generation from two fresh `prime_bits`-bit primes.
    pub fn keygen(prime_bits: u32, seed: u64, mode: GeneratorMode) -> Result<Self, PaillierError> {
        if prime_bits < 16 {
            return Err(PaillierError::PrimeBitsTooSmall(prime_bits));
        }
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let p = gen_prime(prime_bits, &mut rng);
        let q = loop {
            let q = gen_prime(prime_bits, &mut rng);
            if q != p {
                break q;
            }
        };
        Self::from_parts(p, q, mode, rng)
    }

    /// Key material from caller-supplied small primes (for exercising the
    /// pipeline on hand-checkable numbers).
    pub fn from_primes(p: u64, q: u64, seed: u64) -> Result<Self, PaillierError> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        for v in [p, q] {
            if v < 2 || !is_probable_prime(&BigUint::from(v), &mut rng) {
                return Err(PaillierError::NotPrime(v));
            }
        }
        if p == q {
            return Err(PaillierError::PrimesNotDistinct);
        }
        Self::from_parts(BigUint::from(p), BigUint::from(q), GeneratorMode::NPlusOne, rng)
    }

    fn from_parts(
        p: BigUint,
        q: BigUint,
        mode: GeneratorMode,
        mut rng: ChaCha20Rng,
    ) -> Result<Self, PaillierError> {
        let n = &p * &q;
        let nn_value = &n * &n;
        let nn = Modulus::new(nn_value.clone()).expect("N^2 is at least 2");
        let n_mod = Modulus::new(n.clone()).expect("N is at least 2");
        let lambda = (&p - 1u8).lcm(&(&q - 1u8));
        let (g, binomial_g) = match mode {
            GeneratorMode::NPlusOne => (&n + 1u8, true),
            GeneratorMode::Random => {
                // Accept the first unit whose lambda-th power projects to an
                // invertible L value; such g have order divisible by N.
                loop {
                    let g = rng.gen_biguint_below(&nn_value);
                    if g.gcd(&nn_value).is_one() {
                        let l = l_function(&g.modpow(&lambda, &nn_value), &n);
                        if l.gcd(&n).is_one() {
                            break (g, false);
                        }
                    }
                }
            }
        };
        let l = l_function(&g.modpow(&lambda, nn.value()), &n);
        let mu = mod_inv(&Residue::new(l, &n_mod))
            .expect("generator choice guarantees invertibility")
            .into_value();
        Ok(Self {
            n,
            nn,
            g,
            lambda,
            mu,
            binomial_g,
            rng,
        })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.n
    }

    pub fn generator(&self) -> &BigUint {
        &self.g
    }

    pub fn encrypt(&mut self, m: &BigUint) -> Result<PaillierCiphertext, PaillierError> {
        if *m >= self.n {
            return Err(PaillierError::MessageOutOfRange { m: m.clone() });
        }
        let nn = self.nn.value();
        let g_to_m = if self.binomial_g {
            (BigUint::one() + m * &self.n) % nn
        } else {
            self.g.modpow(m, nn)
        };
        let r = loop {
            let r = self.rng.gen_biguint_below(&self.n);
            if !r.is_zero() && r.gcd(&self.n).is_one() {
                break r;
            }
        };
        let r_to_n = r.modpow(&self.n, nn);
        Ok(PaillierCiphertext {
            value: (g_to_m * r_to_n) % nn,
        })
    }

    pub fn decrypt(&self, ct: &PaillierCiphertext) -> BigUint {
        let u = ct.value.modpow(&self.lambda, self.nn.value());
        (l_function(&u, &self.n) * &self.mu) % &self.n
    }

    /// The multiplicative identity: a randomness-free encryption of zero.
    pub fn zero_ciphertext(&self) -> PaillierCiphertext {
        PaillierCiphertext {
            value: BigUint::one(),
        }
    }

    /// Ciphertext addition: one counted modular multiplication.
    pub fn ct_add(
        &self,
        ctr: &mut OpCounter,
        a: &PaillierCiphertext,
        b: &PaillierCiphertext,
    ) -> PaillierCiphertext {
        ctr.mod_muls += 1;
        PaillierCiphertext {
            value: (&a.value * &b.value) % self.nn.value(),
        }
    }

    /// Ciphertext subtraction: an uncounted inversion, then one counted
    /// multiplication.
    pub fn ct_sub(
        &self,
        ctr: &mut OpCounter,
        a: &PaillierCiphertext,
        b: &PaillierCiphertext,
    ) -> PaillierCiphertext {
        let inv = mod_inv(&Residue::new(b.value.clone(), &self.nn))
            .expect("ciphertexts are units modulo N^2")
            .into_value();
        ctr.mod_muls += 1;
        PaillierCiphertext {
            value: (&a.value * inv) % self.nn.value(),
        }
    }

    /// Multiply a ciphertext by a signed plaintext scalar: one ladder
    /// exponentiation, billed at the declared width (`width` squarings plus
    /// `width` multiplications), mirroring the curve engine's pricing.
    ///
    /// The ladder runs at `max(width, bits(|s|))` for correctness on
    /// oversized scalars; negative scalars exponentiate by `|s|` and invert
    /// the result, which is uncounted setup-class work.
    pub fn ct_scalar_mul(
        &self,
        ctr: &mut OpCounter,
        s: i64,
        width: u32,
        ct: &PaillierCiphertext,
    ) -> PaillierCiphertext {
        let mag = BigUint::from(s.unsigned_abs());
        let eff = u32::try_from(mag.bits()).expect("scalar width fits u32").max(width);
        let mut scratch = OpCounter::new();
        let base = Residue::new(ct.value.clone(), &self.nn);
        let mut value = mod_pow_width(&base, &mag, eff, &mut scratch).into_value();
        if s < 0 {
            value = mod_inv(&Residue::new(value, &self.nn))
                .expect("ciphertexts are units modulo N^2")
                .into_value();
        }
        ctr.mod_muls += u64::from(width);
        ctr.mod_sqrs += u64::from(width);
        PaillierCiphertext { value }
    }
}
