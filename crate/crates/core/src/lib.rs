//! Instrumented plaintext–ciphertext matrix multiplication over additively
//! homomorphic encryption.
//!
//! The crate provides two unpacked additively homomorphic schemes — elliptic
//! curve ElGamal over the standard 256-bit prime curve, and Paillier's
//! composite-residuosity scheme over an RSA modulus — behind one
//! [`ahe::Ahe`] trait,
//! and three engines that multiply a plaintext matrix into an entry-wise
//! encrypted matrix:
//!
//! * schoolbook (cubic),
//! * the seven-product recursion ([`matmul::pcmm_strassen`]),
//! * a compression method ([`matmul::pcmm_proposed`]) that deduplicates each
//!   plaintext column level by level, multiplies only the surviving values,
//!   and rebuilds the result with ciphertext additions.
//!
//! Every ciphertext operation is tallied live in an [`counter::OpCounter`]
//! by the primitive that performs it (point additions, doublings, ladder
//! runs, modular multiplications and squarings), and [`cost`] folds tallies
//! into a single unit — equivalent curve point additions — with closed-form
//! formulas to compare against. The [`bench`] module drives parameter grids
//! and emits CSV/JSON rows.
//!
//! Counting conventions, fixed across the crate:
//!
//! * a `t`-bit scalar multiplication is a ladder of exactly `t` point
//!   additions and `t` doublings (`4t` units per ciphertext, which has two
//!   components);
//! * a ciphertext addition is two point additions (`2` units);
//! * for the modular scheme, one modular multiplication or squaring is `2`
//!   units, making both schemes land on identical formulas;
//! * key generation, encryption, decryption, and plaintext-side work are
//!   never counted — the model prices the operations a server would run on
//!   ciphertexts, not setup.

pub mod ahe;
pub mod bench;
pub mod compress;
pub mod cost;
pub mod counter;
pub mod curve;
pub mod elgamal;
pub mod matmul;
pub mod modmath;
pub mod paillier;

pub use ahe::{Ahe, AheError};
pub use bench::{run_experiment, Algo, BenchError, ExperimentSpec, Mode, ResultRow, Scheme};
pub use compress::{compress, CompressedColumn, IterationCounts};
pub use counter::OpCounter;
pub use curve::{p256, CurveParams, CurvePoint};
pub use elgamal::{EcElGamal, ElGamalCiphertext, MessageBound};
pub use matmul::{CipherMatrix, PlainMatrix};
pub use paillier::{GeneratorMode, Paillier, PaillierCiphertext};
