//! Additively homomorphic encryption with messages in the exponent of a
//! prime-order elliptic-curve group.
//!
//! A ciphertext for `m` under public key `H = xG` is `(rG, rH + mG)` for a
//! fresh uniform `r`. Ciphertext addition is component-wise point addition;
//! scalar multiplication runs one ladder per component. Decryption recovers
//! `mG` and then digs `m` out of the exponent with a baby-step/giant-step
//! table, which is what bounds usable messages to a window `[0, B)` far
//! smaller than the group order.
//!
//! Key generation, encryption, decryption, and decoding are setup- or
//! transport-class work and never touch a caller's [`OpCounter`]; only the
//! homomorphic operations are billed.

use std::cell::OnceCell;
use std::collections::HashMap;

use num_bigint::{BigUint, RandBigInt};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::counter::OpCounter;
use crate::curve::{CurveError, CurveParams, CurvePoint, JacPoint, POINT_ENCODING_LEN};

/// Total wire size of a ciphertext: two encoded points.
pub const CIPHERTEXT_ENCODING_LEN: usize = 2 * POINT_ENCODING_LEN;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ElGamalError {
    #[error("message {m} is outside the decodable range [0, {bound})")]
    MessageOutOfRange { m: u64, bound: u64 },
    #[error("point is not the encoding of any message in [0, B)")]
    DecodeFailure,
    #[error(transparent)]
    Encoding(#[from] CurveError),
    #[error("ciphertext encoding must be {CIPHERTEXT_ENCODING_LEN} bytes")]
    BadLength,
}

/// Decodable message window and the operand bounds that keep homomorphic
/// results inside it.
///
/// Scalars below `scalar_bound`, messages below `message_bound`, and inner
/// products of at most `max_terms` terms stay below
/// `decode_bound = max_terms * scalar_bound * message_bound`, so every such
/// combination decrypts exactly. The decode bound is capped so the decoding
/// table stays practical; the group order dwarfs it either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MessageBound {
    decode_bound: u64,
    scalar_bound: u64,
    message_bound: u64,
    max_terms: u64,
}

impl MessageBound {
    /// Largest supported decode window.
    pub const DECODE_CAP: u64 = 1 << 42;

    pub fn new(scalar_bound: u64, message_bound: u64, max_terms: u64) -> Self {
        assert!(
            scalar_bound >= 1 && message_bound >= 1 && max_terms >= 1,
            "bounds must be positive"
        );
        let product = u128::from(scalar_bound) * u128::from(message_bound) * u128::from(max_terms);
        let decode_bound = u64::try_from(product.min(u128::from(Self::DECODE_CAP)))
            .expect("capped product fits u64");
        Self {
            decode_bound,
            scalar_bound,
            message_bound,
            max_terms,
        }
    }

    /// Bounds for `t`-bit scalars and messages combined in inner products of
    /// at most `max_terms` terms.
    pub fn for_width(t: u32, max_terms: u64) -> Self {
        assert!(t >= 1 && t <= 21, "width must be in 1..=21");
        Self::new(1 << t, 1 << t, max_terms)
    }

    pub fn decode_bound(&self) -> u64 {
        self.decode_bound
    }

    pub fn scalar_bound(&self) -> u64 {
        self.scalar_bound
    }

    pub fn message_bound(&self) -> u64 {
        self.message_bound
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }
}

/// An exponent-ElGamal ciphertext `(C1, C2) = (rG, rH + mG)`.
///
/// The two component points are held in Jacobian coordinates so homomorphic
/// additions cost field multiplications instead of field inversions; they are
/// normalized to affine form at the wire boundary ([`Self::to_bytes`],
/// [`Self::to_points`]). Two ciphertexts for the same pair of group elements
/// may therefore differ in representation; compare through
/// [`Self::to_bytes`] or by decrypting.
#[derive(Debug, Clone)]
pub struct ElGamalCiphertext {
    c1: JacPoint,
    c2: JacPoint,
}

impl ElGamalCiphertext {
    /// The component points `(C1, C2)` in affine form.
    pub fn to_points(&self, curve: &CurveParams) -> (CurvePoint, CurvePoint) {
        (curve.from_jacobian(&self.c1), curve.from_jacobian(&self.c2))
    }

    pub fn to_bytes(&self, curve: &CurveParams) -> [u8; CIPHERTEXT_ENCODING_LEN] {
        let (c1, c2) = self.to_points(curve);
        let mut out = [0u8; CIPHERTEXT_ENCODING_LEN];
        out[..POINT_ENCODING_LEN].copy_from_slice(&curve.encode_point(&c1));
        out[POINT_ENCODING_LEN..].copy_from_slice(&curve.encode_point(&c2));
        out
    }

    pub fn from_bytes(curve: &CurveParams, bytes: &[u8]) -> Result<Self, ElGamalError> {
        if bytes.len() != CIPHERTEXT_ENCODING_LEN {
            return Err(ElGamalError::BadLength);
        }
        let mut half = [0u8; POINT_ENCODING_LEN];
        half.copy_from_slice(&bytes[..POINT_ENCODING_LEN]);
        let c1 = curve.decode_point(&half)?;
        half.copy_from_slice(&bytes[POINT_ENCODING_LEN..]);
        let c2 = curve.decode_point(&half)?;
        Ok(Self {
            c1: curve.to_jacobian(&c1),
            c2: curve.to_jacobian(&c2),
        })
    }
}

/// Baby-step table plus giant-step state for decoding `mG` back to `m`.
struct BsgsTable {
    stride: u64,
    giant_steps: u64,
    neg_stride_g: CurvePoint,
    baby: HashMap<[u8; POINT_ENCODING_LEN], u64>,
}

/// Smallest `s` with `s * s >= b`.
fn ceil_sqrt(b: u64) -> u64 {
    let mut s = (b as f64).sqrt() as u64;
    while s.checked_mul(s).map_or(true, |sq| sq < b) {
        s += 1;
    }
    while s > 1 && (s - 1) * (s - 1) >= b {
        s -= 1;
    }
    s
}

impl BsgsTable {
    fn build(curve: &CurveParams, bound: u64) -> Self {
        let stride = ceil_sqrt(bound).max(1);
        let mut scratch = OpCounter::new();
        let mut baby = HashMap::with_capacity(stride as usize);
        let mut cur = CurvePoint::infinity();
        for j in 0..stride {
            baby.entry(curve.encode_point(&cur)).or_insert(j);
            cur = curve.point_add(&mut scratch, &cur, curve.generator());
        }
        // After the loop `cur` is stride * G.
        Self {
            stride,
            giant_steps: bound.div_ceil(stride),
            neg_stride_g: curve.point_negate(&cur),
            baby,
        }
    }

    /// Recover `m < bound` with `m * G == point`, in at most
    /// `ceil(bound / stride) <= ceil(sqrt(bound))` giant steps.
    fn decode(&self, curve: &CurveParams, bound: u64, point: &CurvePoint) -> Option<u64> {
        let mut scratch = OpCounter::new();
        let mut cur = point.clone();
        for i in 0..self.giant_steps {
            if let Some(j) = self.baby.get(&curve.encode_point(&cur)) {
                let m = i * self.stride + j;
                if m < bound {
                    return Some(m);
                }
            }
            cur = curve.point_add(&mut scratch, &cur, &self.neg_stride_g);
        }
        None
    }
}

/// Key material plus the deterministic randomness stream used for fresh
/// encryption nonces.
pub struct EcElGamal {
    curve: &'static CurveParams,
    bound: MessageBound,
    secret: BigUint,
    public: CurvePoint,
    rng: ChaCha20Rng,
    bsgs: OnceCell<BsgsTable>,
}

impl EcElGamal {
    /// Deterministic key generation: the same seed yields the same key pair
    /// and the same stream of encryption nonces.
    pub fn keygen(curve: &'static CurveParams, bound: MessageBound, seed: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let order = curve.order();
        let secret = rng.gen_biguint_below(&(order - 1u8)) + 1u8;
        let mut scratch = OpCounter::new();
        let width = u32::try_from(order.bits()).expect("order width fits u32");
        let public = curve.ecsm_ladder(&mut scratch, &secret, width, curve.generator());
        Self {
            curve,
            bound,
            secret,
            public,
            rng,
            bsgs: OnceCell::new(),
        }
    }

    pub fn curve(&self) -> &'static CurveParams {
        self.curve
    }

    pub fn bound(&self) -> &MessageBound {
        &self.bound
    }

    /// The public point `H = xG`.
    pub fn public_key(&self) -> &CurvePoint {
        &self.public
    }

    pub fn encrypt(&mut self, m: u64) -> Result<ElGamalCiphertext, ElGamalError> {
        if m >= self.bound.decode_bound {
            return Err(ElGamalError::MessageOutOfRange {
                m,
                bound: self.bound.decode_bound,
            });
        }
        let order = self.curve.order();
        let r = self.rng.gen_biguint_below(&(order - 1u8)) + 1u8;
        let mut scratch = OpCounter::new();
        let full = u32::try_from(order.bits()).expect("order width fits u32");
        let g = self.curve.to_jacobian(self.curve.generator());
        let h = self.curve.to_jacobian(&self.public);
        let c1 = self.curve.ecsm_ladder_jac(&mut scratch, &r, full, &g);
        let rh = self.curve.ecsm_ladder_jac(&mut scratch, &r, full, &h);
        let m_big = BigUint::from(m);
        let m_width = u32::try_from(m_big.bits()).expect("message width fits u32");
        let mg = self.curve.ecsm_ladder_jac(&mut scratch, &m_big, m_width, &g);
        let c2 = self.curve.jac_add_counted(&mut scratch, &rh, &mg);
        Ok(ElGamalCiphertext { c1, c2 })
    }

    pub fn decrypt(&self, ct: &ElGamalCiphertext) -> Result<u64, ElGamalError> {
        let mut scratch = OpCounter::new();
        let full = u32::try_from(self.curve.order().bits()).expect("order width fits u32");
        let xc1 = self
            .curve
            .ecsm_ladder_jac(&mut scratch, &self.secret, full, &ct.c1);
        let m_point = self
            .curve
            .jac_add_counted(&mut scratch, &ct.c2, &self.curve.jac_negate(&xc1));
        self.bsgs_decode(&self.curve.from_jacobian(&m_point))
    }

    /// Decode a bare `mG` point through the baby-step/giant-step table.
    pub fn bsgs_decode(&self, point: &CurvePoint) -> Result<u64, ElGamalError> {
        let table = self
            .bsgs
            .get_or_init(|| BsgsTable::build(self.curve, self.bound.decode_bound));
        table
            .decode(self.curve, self.bound.decode_bound, point)
            .ok_or(ElGamalError::DecodeFailure)
    }

    /// An encryption of zero with no randomness: the additive identity. Free
    /// to mint, and adding it costs the same two point operations as any
    /// other ciphertext addition.
    pub fn zero_ciphertext(&self) -> ElGamalCiphertext {
        ElGamalCiphertext {
            c1: JacPoint::infinity(),
            c2: JacPoint::infinity(),
        }
    }

    /// Component-wise ciphertext addition: two counted point additions.
    pub fn ct_add(
        &self,
        ctr: &mut OpCounter,
        a: &ElGamalCiphertext,
        b: &ElGamalCiphertext,
    ) -> ElGamalCiphertext {
        ElGamalCiphertext {
            c1: self.curve.jac_add_counted(ctr, &a.c1, &b.c1),
            c2: self.curve.jac_add_counted(ctr, &a.c2, &b.c2),
        }
    }

    /// Ciphertext subtraction: negation is free, then one ciphertext
    /// addition.
    pub fn ct_sub(
        &self,
        ctr: &mut OpCounter,
        a: &ElGamalCiphertext,
        b: &ElGamalCiphertext,
    ) -> ElGamalCiphertext {
        let neg = ElGamalCiphertext {
            c1: self.curve.jac_negate(&b.c1),
            c2: self.curve.jac_negate(&b.c2),
        };
        self.ct_add(ctr, a, &neg)
    }

    /// Multiply a ciphertext by a signed plaintext scalar: one ladder per
    /// component, recorded at the declared width.
    ///
    /// The ladder itself runs at `max(width, bits(|s|))` so oversized scalars
    /// (intermediate values of recursive engines) stay correct, but the
    /// counter records two width-`width` scalar multiplications: experiments
    /// price every product at the declared operand width. Negative scalars
    /// multiply by `|s|` and negate the result, which costs nothing extra.
    pub fn ct_scalar_mul(
        &self,
        ctr: &mut OpCounter,
        s: i64,
        width: u32,
        ct: &ElGamalCiphertext,
    ) -> ElGamalCiphertext {
        let mag = BigUint::from(s.unsigned_abs());
        let eff = u32::try_from(mag.bits()).expect("scalar width fits u32").max(width);
        let mut scratch = OpCounter::new();
        let mut c1 = self.curve.ecsm_ladder_jac(&mut scratch, &mag, eff, &ct.c1);
        let mut c2 = self.curve.ecsm_ladder_jac(&mut scratch, &mag, eff, &ct.c2);
        if s < 0 {
            c1 = self.curve.jac_negate(&c1);
            c2 = self.curve.jac_negate(&c2);
        }
        ctr.record_ecsm(width);
        ctr.record_ecsm(width);
        ElGamalCiphertext { c1, c2 }
    }
}
