//! Short-Weierstrass elliptic curve arithmetic over a prime field, with every
//! group operation counted live.
//!
//! Points are affine at the API boundary and the standalone group law is the
//! textbook chord-and-tangent rule. Scalar multiplication is the two-register
//! ladder, which performs exactly one point addition and one point doubling
//! per bit of its declared width; its registers are held in Jacobian
//! coordinates internally so a ladder costs one field inversion rather than
//! two per bit. All operations take an explicit [`OpCounter`] so callers
//! decide which phase of a protocol is billed.

use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::counter::OpCounter;
use crate::modmath::{mod_arith, mod_inv, ArithOp, Modulus, Residue};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("point ({x}, {y}) does not satisfy the curve equation")]
    OffCurve { x: BigUint, y: BigUint },
    #[error("coordinate is not reduced modulo the field prime")]
    CoordinateOutOfRange,
    #[error("invalid point encoding")]
    InvalidEncoding,
    #[error("curve field does not support the 3-mod-4 square root shortcut")]
    NoSqrtShortcut,
}

/// A point in affine coordinates, or the group identity.
///
/// Affine points can only be obtained through [`CurvePoint::affine`] (which
/// checks the curve equation) or the group operations, so every value of this
/// type lies on its curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePoint {
    coords: Option<(BigUint, BigUint)>,
}

impl CurvePoint {
    pub fn infinity() -> Self {
        Self { coords: None }
    }

    /// Construct a point from coordinates, rejecting anything off the curve.
    pub fn affine(params: &CurveParams, x: BigUint, y: BigUint) -> Result<Self, CurveError> {
        if x >= *params.field.value() || y >= *params.field.value() {
            return Err(CurveError::CoordinateOutOfRange);
        }
        if !params.is_on_curve(&x, &y) {
            return Err(CurveError::OffCurve { x, y });
        }
        Ok(Self { coords: Some((x, y)) })
    }

    pub fn is_infinity(&self) -> bool {
        self.coords.is_none()
    }

    pub fn x(&self) -> Option<&BigUint> {
        self.coords.as_ref().map(|(x, _)| x)
    }

    pub fn y(&self) -> Option<&BigUint> {
        self.coords.as_ref().map(|(_, y)| y)
    }
}

/// Byte length of the point encoding: a 32-byte little-endian x coordinate
/// followed by one flag byte (0 = identity, 2 = even y, 3 = odd y).
pub const POINT_ENCODING_LEN: usize = 33;

/// A point in Jacobian projective coordinates: `(X, Y, Z)` stands for the
/// affine point `(X/Z^2, Y/Z^3)`, with `Z = 0` as the identity. The ladder
/// registers and ciphertext components use this form so that long chains of
/// group operations cost a handful of field multiplications each instead of
/// one field inversion each; converting back to affine takes the single
/// inversion.
#[derive(Debug, Clone)]
pub(crate) struct JacPoint {
    x: BigUint,
    y: BigUint,
    z: BigUint,
}

impl JacPoint {
    pub(crate) fn infinity() -> Self {
        Self {
            x: BigUint::one(),
            y: BigUint::one(),
            z: BigUint::zero(),
        }
    }

    pub(crate) fn is_infinity(&self) -> bool {
        self.z.is_zero()
    }
}

/// A short-Weierstrass curve `y^2 = x^3 + ax + b` over a prime field, with a
/// distinguished generator of prime order.
pub struct CurveParams {
    field: Arc<Modulus>,
    a: Residue,
    b: Residue,
    generator: CurvePoint,
    order: BigUint,
}

impl CurveParams {
    pub fn new(
        p: BigUint,
        a: BigUint,
        b: BigUint,
        gx: BigUint,
        gy: BigUint,
        order: BigUint,
    ) -> Result<Self, CurveError> {
        let field = Modulus::new(p).expect("field prime is at least 2");
        let mut params = Self {
            a: Residue::new(a, &field),
            b: Residue::new(b, &field),
            field,
            generator: CurvePoint::infinity(),
            order,
        };
        params.generator = CurvePoint::affine(&params, gx, gy)?;
        Ok(params)
    }

    pub fn field(&self) -> &Arc<Modulus> {
        &self.field
    }

    pub fn generator(&self) -> &CurvePoint {
        &self.generator
    }

    /// Order of the generator (a prime).
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    fn res(&self, v: &BigUint) -> Residue {
        Residue::from_canonical(v.clone(), &self.field)
    }

    fn arith(&self, a: &Residue, b: &Residue, op: ArithOp) -> Residue {
        mod_arith(a, b, op).expect("operands share the field modulus")
    }

    /// Whether `(x, y)` satisfies the curve equation. Coordinates must be
    /// reduced.
    pub fn is_on_curve(&self, x: &BigUint, y: &BigUint) -> bool {
        let x = self.res(x);
        let y = self.res(y);
        let y2 = self.arith(&y, &y, ArithOp::Mul);
        self.rhs(&x) == y2
    }

    /// `x^3 + ax + b`.
    fn rhs(&self, x: &Residue) -> Residue {
        let x2 = self.arith(x, x, ArithOp::Mul);
        let x3 = self.arith(&x2, x, ArithOp::Mul);
        let ax = self.arith(&self.a, x, ArithOp::Mul);
        let sum = self.arith(&x3, &ax, ArithOp::Add);
        self.arith(&sum, &self.b, ArithOp::Add)
    }

    /// Group addition. Counts one point addition, except that adding a point
    /// to itself delegates to [`CurveParams::point_double`] and counts one
    /// doubling instead. Identity operands are handled (and counted) like any
    /// other addition, which keeps the ladder's cost independent of its
    /// operands.
    pub fn point_add(&self, ctr: &mut OpCounter, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        if p.is_infinity() {
            ctr.point_adds += 1;
            return q.clone();
        }
        if q.is_infinity() {
            ctr.point_adds += 1;
            return p.clone();
        }
        if p == q {
            return self.point_double(ctr, p);
        }
        ctr.point_adds += 1;
        let (x1, y1) = p.coords.as_ref().expect("checked affine");
        let (x2, y2) = q.coords.as_ref().expect("checked affine");
        if x1 == x2 {
            // Distinct points sharing an abscissa are mutual negatives.
            return CurvePoint::infinity();
        }
        let (x1, y1, x2, y2) = (self.res(x1), self.res(y1), self.res(x2), self.res(y2));
        let num = self.arith(&y2, &y1, ArithOp::Sub);
        let den = self.arith(&x2, &x1, ArithOp::Sub);
        let lambda = self.arith(
            &num,
            &mod_inv(&den).expect("nonzero element of a prime field"),
            ArithOp::Mul,
        );
        self.chord_result(&lambda, &x1, &y1, &x2)
    }

    /// Group doubling. Counts one point doubling.
    pub fn point_double(&self, ctr: &mut OpCounter, p: &CurvePoint) -> CurvePoint {
        ctr.point_doubles += 1;
        let Some((x, y)) = p.coords.as_ref() else {
            return CurvePoint::infinity();
        };
        if y.is_zero() {
            return CurvePoint::infinity();
        }
        let (x, y) = (self.res(x), self.res(y));
        let x2 = self.arith(&x, &x, ArithOp::Mul);
        let three_x2 = {
            let t = self.arith(&x2, &x2, ArithOp::Add);
            self.arith(&t, &x2, ArithOp::Add)
        };
        let num = self.arith(&three_x2, &self.a, ArithOp::Add);
        let den = self.arith(&y, &y, ArithOp::Add);
        let lambda = self.arith(
            &num,
            &mod_inv(&den).expect("nonzero element of a prime field"),
            ArithOp::Mul,
        );
        self.chord_result(&lambda, &x, &y, &x)
    }

    /// `x3 = lambda^2 - x1 - x2`, `y3 = lambda (x1 - x3) - y1`.
    fn chord_result(
        &self,
        lambda: &Residue,
        x1: &Residue,
        y1: &Residue,
        x2: &Residue,
    ) -> CurvePoint {
        let l2 = self.arith(lambda, lambda, ArithOp::Mul);
        let t = self.arith(&l2, x1, ArithOp::Sub);
        let x3 = self.arith(&t, x2, ArithOp::Sub);
        let dx = self.arith(x1, &x3, ArithOp::Sub);
        let y3 = self.arith(&self.arith(lambda, &dx, ArithOp::Mul), y1, ArithOp::Sub);
        CurvePoint {
            coords: Some((x3.into_value(), y3.into_value())),
        }
    }

    pub(crate) fn to_jacobian(&self, p: &CurvePoint) -> JacPoint {
        match p.coords.as_ref() {
            None => JacPoint::infinity(),
            Some((x, y)) => JacPoint {
                x: x.clone(),
                y: y.clone(),
                z: BigUint::one(),
            },
        }
    }

    pub(crate) fn from_jacobian(&self, p: &JacPoint) -> CurvePoint {
        if p.is_infinity() {
            return CurvePoint::infinity();
        }
        let m = self.field.value();
        let zi = mod_inv(&self.res(&p.z))
            .expect("nonzero element of a prime field")
            .into_value();
        let zi2 = &zi * &zi % m;
        let x = &p.x * &zi2 % m;
        let y = &p.y * &zi2 % m * &zi % m;
        CurvePoint { coords: Some((x, y)) }
    }

    /// Doubling in Jacobian coordinates. Uncounted: the ladder bills its own
    /// steps.
    fn jac_double(&self, p: &JacPoint) -> JacPoint {
        if p.is_infinity() || p.y.is_zero() {
            return JacPoint::infinity();
        }
        let m = self.field.value();
        let sub = |a: &BigUint, b: &BigUint| if a >= b { a - b } else { m - (b - a) };
        let ysq = &p.y * &p.y % m;
        let s = &p.x * &ysq % m * 4u8 % m;
        let zsq = &p.z * &p.z % m;
        let z4 = &zsq * &zsq % m;
        let n = (&p.x * &p.x % m * 3u8 + self.a.value() * &z4) % m;
        let two_s = (&s + &s) % m;
        let x3 = sub(&(&n * &n % m), &two_s);
        let y4_times_8 = &ysq * &ysq % m * 8u8 % m;
        let y3 = sub(&(&n * &sub(&s, &x3) % m), &y4_times_8);
        let z3 = &p.y * &p.z % m * 2u8 % m;
        JacPoint {
            x: x3,
            y: y3,
            z: z3,
        }
    }

    /// Addition in Jacobian coordinates. Uncounted: the ladder bills its own
    /// steps. Mirrors the affine law's handling of identities, coincident
    /// operands, and mutual negatives.
    fn jac_add(&self, p: &JacPoint, q: &JacPoint) -> JacPoint {
        if p.is_infinity() {
            return q.clone();
        }
        if q.is_infinity() {
            return p.clone();
        }
        let m = self.field.value();
        let sub = |a: &BigUint, b: &BigUint| if a >= b { a - b } else { m - (b - a) };
        let z1sq = &p.z * &p.z % m;
        let z2sq = &q.z * &q.z % m;
        let u1 = &p.x * &z2sq % m;
        let u2 = &q.x * &z1sq % m;
        let s1 = &p.y * &z2sq % m * &q.z % m;
        let s2 = &q.y * &z1sq % m * &p.z % m;
        if u1 == u2 {
            if s1 == s2 {
                return self.jac_double(p);
            }
            return JacPoint::infinity();
        }
        let h = sub(&u2, &u1);
        let r = sub(&s2, &s1);
        let hsq = &h * &h % m;
        let hcu = &hsq * &h % m;
        let v = &u1 * &hsq % m;
        let two_v = (&v + &v) % m;
        let x3 = sub(&sub(&(&r * &r % m), &hcu), &two_v);
        let y3 = sub(&(&r * &sub(&v, &x3) % m), &(&s1 * &hcu % m));
        let z3 = &p.z * &q.z % m * &h % m;
        JacPoint {
            x: x3,
            y: y3,
            z: z3,
        }
    }

    /// Negation in Jacobian coordinates: coordinate bookkeeping, uncounted.
    pub(crate) fn jac_negate(&self, p: &JacPoint) -> JacPoint {
        let ny = if p.y.is_zero() {
            BigUint::zero()
        } else {
            self.field.value() - &p.y
        };
        JacPoint {
            x: p.x.clone(),
            y: ny,
            z: p.z.clone(),
        }
    }

    /// Counted group addition on Jacobian points: bills exactly one point
    /// addition whatever the operands. Coincident operands still compute the
    /// correct sum (the addition formula falls back to a doubling
    /// internally), but the price of the operation is fixed so that a
    /// protocol's cost depends only on its shape, never on its data.
    pub(crate) fn jac_add_counted(
        &self,
        ctr: &mut OpCounter,
        p: &JacPoint,
        q: &JacPoint,
    ) -> JacPoint {
        ctr.point_adds += 1;
        self.jac_add(p, q)
    }

    /// Scalar multiplication on a Jacobian point; see
    /// [`CurveParams::ecsm_ladder`] for the cost contract.
    pub(crate) fn ecsm_ladder_jac(
        &self,
        ctr: &mut OpCounter,
        k: &BigUint,
        width: u32,
        p: &JacPoint,
    ) -> JacPoint {
        assert!(
            u64::from(width) >= k.bits(),
            "declared width {} is below the scalar's {} bits",
            width,
            k.bits()
        );
        ctr.ecsm_calls.push(width);
        let mut r0 = JacPoint::infinity();
        let mut r1 = p.clone();
        // Invariant: r1 = r0 + p, so the addition's operands never coincide
        // unless p is the identity (which the identity branches absorb).
        for i in (0..width).rev() {
            ctr.point_adds += 1;
            ctr.point_doubles += 1;
            if k.bit(u64::from(i)) {
                r0 = self.jac_add(&r1, &r0);
                r1 = self.jac_double(&r1);
            } else {
                r1 = self.jac_add(&r1, &r0);
                r0 = self.jac_double(&r0);
            }
        }
        r0
    }

    /// Negation is coordinate bookkeeping, not a group operation; uncounted.
    pub fn point_negate(&self, p: &CurvePoint) -> CurvePoint {
        match p.coords.as_ref() {
            None => CurvePoint::infinity(),
            Some((x, y)) => {
                let ny = if y.is_zero() {
                    BigUint::zero()
                } else {
                    self.field.value() - y
                };
                CurvePoint {
                    coords: Some((x.clone(), ny)),
                }
            }
        }
    }

    /// Scalar multiplication `k * p` by the two-register ladder.
    ///
    /// Walks exactly `width` bits whatever the scalar's value, so the counter
    /// gains one ladder record plus `width` point additions and `width`
    /// doublings. `width` must be at least `k.bits()`; the width is declared
    /// by the caller because experiments fix an operand bit-width up front
    /// rather than letting each scalar choose its own.
    pub fn ecsm_ladder(
        &self,
        ctr: &mut OpCounter,
        k: &BigUint,
        width: u32,
        p: &CurvePoint,
    ) -> CurvePoint {
        // The registers are kept in Jacobian coordinates so each step costs
        // field multiplications rather than inversions; the counts are
        // identical to running the affine group law step by step.
        let r0 = self.ecsm_ladder_jac(ctr, k, width, &self.to_jacobian(p));
        self.from_jacobian(&r0)
    }

    /// Encode a point as 32 little-endian x bytes plus a parity flag.
    pub fn encode_point(&self, p: &CurvePoint) -> [u8; POINT_ENCODING_LEN] {
        let mut out = [0u8; POINT_ENCODING_LEN];
        match p.coords.as_ref() {
            None => out, // all-zero x, flag 0
            Some((x, y)) => {
                let bytes = x.to_bytes_le();
                out[..bytes.len()].copy_from_slice(&bytes);
                out[32] = if y.bit(0) { 3 } else { 2 };
                out
            }
        }
    }

    /// Decode [`CurveParams::encode_point`] output, recomputing y from the
    /// curve equation. Requires the field prime to be 3 mod 4.
    pub fn decode_point(&self, bytes: &[u8; POINT_ENCODING_LEN]) -> Result<CurvePoint, CurveError> {
        let x = BigUint::from_bytes_le(&bytes[..32]);
        match bytes[32] {
            0 => {
                if x.is_zero() {
                    Ok(CurvePoint::infinity())
                } else {
                    Err(CurveError::InvalidEncoding)
                }
            }
            flag @ (2 | 3) => {
                let p = self.field.value();
                if p % 4u8 != BigUint::from(3u8) {
                    return Err(CurveError::NoSqrtShortcut);
                }
                if x >= *p {
                    return Err(CurveError::InvalidEncoding);
                }
                let rhs = self.rhs(&self.res(&x)).into_value();
                let exp = (p + 1u8) >> 2;
                let mut y = rhs.modpow(&exp, p);
                if (&y * &y) % p != rhs {
                    return Err(CurveError::InvalidEncoding);
                }
                let want_odd = flag == 3;
                if y.bit(0) != want_odd {
                    y = if y.is_zero() { y } else { p - y };
                }
                Ok(CurvePoint { coords: Some((x, y)) })
            }
            _ => Err(CurveError::InvalidEncoding),
        }
    }
}

const P256_P: &str = "ffffffff00000001000000000000000000000000ffffffffffffffffffffffff";
const P256_B: &str = "5ac635d8aa3a93e7b3ebbd55769886bc651d06b0cc53b0f63bce3c3e27d2604b";
const P256_GX: &str = "6b17d1f2e12c4247f8bce6e563a440f277037d812deb33a0f4a13945d898c296";
const P256_GY: &str = "4fe342e2fe1a7f9b8ee7eb4a7c0f9e162bce33576b315ececbb6406837bf51f5";
const P256_Q: &str = "ffffffff00000000ffffffffffffffffbce6faada7179e84f3b9cac2fc632551";

fn hex(s: &str) -> BigUint {
    BigUint::parse_bytes(s.as_bytes(), 16).expect("valid hex constant")
}

static P256: OnceLock<CurveParams> = OnceLock::new();

/// The NIST P-256 curve (`a = p - 3`).
pub fn p256() -> &'static CurveParams {
    P256.get_or_init(|| {
        let p = hex(P256_P);
        let a = &p - 3u8;
        CurveParams::new(p, a, hex(P256_B), hex(P256_GX), hex(P256_GY), hex(P256_Q))
            .expect("generator lies on the curve")
    })
}
