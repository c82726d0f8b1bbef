//! Plaintext–ciphertext matrix multiplication engines.
//!
//! All engines compute `C = A * B` for a plaintext matrix `A` (entries below
//! `2^width`) and an entry-wise encrypted matrix `B`, against any [`Ahe`]
//! scheme:
//!
//! * [`pcmm_schoolbook`] — the cubic triple loop: `m*l*n` scalar
//!   multiplications and `m*l*(n-1)` ciphertext additions.
//! * [`pcmm_strassen`] — seven-multiplication recursion on square
//!   power-of-two matrices. Only the ciphertext-side block operations (five
//!   operand combinations and eight output combinations per level) touch the
//!   counter; the plaintext-side combinations are free. Signed intermediate
//!   scalars may exceed `width` bits; they are priced at the declared width
//!   like every other product.
//! * [`pcmm_proposed`] — compresses each column of `A` once (amortized over
//!   all columns of `B`), multiplies only the surviving values, and rebuilds
//!   each outer-product column with ciphertext additions; accumulating the
//!   `n` outer products costs `m*l*(n-1)` further additions.

use rand::Rng;
use thiserror::Error;

use crate::ahe::{Ahe, AheError};
use crate::compress::{compress, vs_mul_encrypted, CompressError, IterationCounts};
use crate::counter::OpCounter;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatmulError {
    #[error("matrix data length {got} does not match {rows}x{cols}")]
    BadDataLength { rows: usize, cols: usize, got: usize },
    #[error("matrix width must be in 1..=62, got {0}")]
    BadWidth(u32),
    #[error("entry {value} does not fit in {width} bits")]
    EntryTooWide { value: u64, width: u32 },
    #[error("inner dimensions disagree: left is {m}x{n}, right is {rows}x{l}")]
    DimensionMismatch {
        m: usize,
        n: usize,
        rows: usize,
        l: usize,
    },
    #[error("engine requires square power-of-two matrices, got {rows}x{cols} times {brows}x{bcols}")]
    NotSquarePowerOfTwo {
        rows: usize,
        cols: usize,
        brows: usize,
        bcols: usize,
    },
    #[error(transparent)]
    Compress(#[from] CompressError),
}

/// A row-major plaintext matrix with a declared entry bit-width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
    width: u32,
}

impl PlainMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u64>, width: u32) -> Result<Self, MatmulError> {
        if !(1..=62).contains(&width) {
            return Err(MatmulError::BadWidth(width));
        }
        if data.len() != rows * cols {
            return Err(MatmulError::BadDataLength {
                rows,
                cols,
                got: data.len(),
            });
        }
        let limit = 1u64 << width;
        if let Some(&value) = data.iter().find(|&&v| v >= limit) {
            return Err(MatmulError::EntryTooWide { value, width });
        }
        Ok(Self {
            rows,
            cols,
            data,
            width,
        })
    }

    /// Build from values, declaring the smallest width that fits them.
    pub fn from_values(rows: usize, cols: usize, data: Vec<u64>) -> Result<Self, MatmulError> {
        let width = data
            .iter()
            .map(|v| 64 - v.leading_zeros())
            .max()
            .unwrap_or(1)
            .max(1);
        Self::new(rows, cols, data, width)
    }

    /// Uniform random entries in `[0, 2^width)`.
    pub fn random<R: Rng>(rng: &mut R, rows: usize, cols: usize, width: u32) -> Self {
        assert!((1..=62).contains(&width), "width must be in 1..=62");
        let data = (0..rows * cols)
            .map(|_| rng.gen_range(0..(1u64 << width)))
            .collect();
        Self::new(rows, cols, data, width).expect("sampled entries fit the width")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

/// A row-major matrix of ciphertexts.
#[derive(Debug, Clone)]
pub struct CipherMatrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C> CipherMatrix<C> {
    pub fn new(rows: usize, cols: usize, data: Vec<C>) -> Result<Self, MatmulError> {
        if data.len() != rows * cols {
            return Err(MatmulError::BadDataLength {
                rows,
                cols,
                got: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn data(&self) -> &[C] {
        &self.data
    }
}

impl<C: Clone> CipherMatrix<C> {
    fn crop(&self, rows: usize, cols: usize) -> Self {
        assert!(rows <= self.rows && cols <= self.cols);
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(self.get(i, j).clone());
            }
        }
        Self { rows, cols, data }
    }
}

/// Accumulation order for the plaintext reference product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MulOrder {
    /// Row-times-column inner products.
    InnerProduct,
    /// Sum of column-times-row outer products.
    OuterProduct,
}

/// Reference plaintext product, computable in either accumulation order.
pub fn matmul_plain_oracle(
    a: &PlainMatrix,
    b: &PlainMatrix,
    order: MulOrder,
) -> Result<PlainMatrix, MatmulError> {
    if a.cols != b.rows {
        return Err(MatmulError::DimensionMismatch {
            m: a.rows,
            n: a.cols,
            rows: b.rows,
            l: b.cols,
        });
    }
    let (m, n, l) = (a.rows, a.cols, b.cols);
    let mut acc = vec![0u128; m * l];
    match order {
        MulOrder::InnerProduct => {
            for i in 0..m {
                for j in 0..l {
                    for k in 0..n {
                        acc[i * l + j] += u128::from(a.get(i, k)) * u128::from(b.get(k, j));
                    }
                }
            }
        }
        MulOrder::OuterProduct => {
            for k in 0..n {
                for i in 0..m {
                    for j in 0..l {
                        acc[i * l + j] += u128::from(a.get(i, k)) * u128::from(b.get(k, j));
                    }
                }
            }
        }
    }
    let data = acc
        .into_iter()
        .map(|v| u64::try_from(v).expect("product entries fit u64"))
        .collect();
    PlainMatrix::from_values(m, l, data)
}

/// Encrypt a plaintext matrix entry-wise (uncounted setup work).
pub fn encrypt_matrix<E: Ahe>(
    engine: &mut E,
    m: &PlainMatrix,
) -> Result<CipherMatrix<E::Ciphertext>, AheError> {
    let mut data = Vec::with_capacity(m.data.len());
    for &v in &m.data {
        data.push(engine.encrypt(v)?);
    }
    Ok(CipherMatrix {
        rows: m.rows,
        cols: m.cols,
        data,
    })
}

/// Decrypt a ciphertext matrix entry-wise (uncounted setup work).
pub fn decrypt_matrix<E: Ahe>(
    engine: &E,
    cm: &CipherMatrix<E::Ciphertext>,
) -> Result<PlainMatrix, AheError> {
    let mut data = Vec::with_capacity(cm.data.len());
    for ct in &cm.data {
        data.push(engine.decrypt(ct)?);
    }
    Ok(PlainMatrix::from_values(cm.rows, cm.cols, data).expect("decrypted entries form a matrix"))
}

fn check_dims<C>(a: &PlainMatrix, b: &CipherMatrix<C>) -> Result<(), MatmulError> {
    if a.cols != b.rows {
        return Err(MatmulError::DimensionMismatch {
            m: a.rows,
            n: a.cols,
            rows: b.rows,
            l: b.cols,
        });
    }
    Ok(())
}

/// The cubic baseline: every entry of `A` multiplies a ciphertext.
pub fn pcmm_schoolbook<E: Ahe>(
    engine: &E,
    ctr: &mut OpCounter,
    a: &PlainMatrix,
    b: &CipherMatrix<E::Ciphertext>,
) -> Result<CipherMatrix<E::Ciphertext>, MatmulError> {
    check_dims(a, b)?;
    let (m, n, l) = (a.rows, a.cols, b.cols);
    let width = a.width;
    let mut data = Vec::with_capacity(m * l);
    for i in 0..m {
        for j in 0..l {
            let mut acc = engine.ct_scalar_mul(ctr, a.get(i, 0) as i64, width, b.get(0, j));
            for k in 1..n {
                let p = engine.ct_scalar_mul(ctr, a.get(i, k) as i64, width, b.get(k, j));
                acc = engine.ct_add(ctr, &acc, &p);
            }
            data.push(acc);
        }
    }
    Ok(CipherMatrix { rows: m, cols: l, data })
}

// --- Strassen ---------------------------------------------------------------

fn quad<T: Clone>(data: &[T], n: usize, qi: usize, qj: usize) -> Vec<T> {
    let h = n / 2;
    let mut out = Vec::with_capacity(h * h);
    for i in 0..h {
        for j in 0..h {
            out.push(data[(qi * h + i) * n + (qj * h + j)].clone());
        }
    }
    out
}

fn assemble<T: Clone>(h: usize, c11: Vec<T>, c12: Vec<T>, c21: Vec<T>, c22: Vec<T>) -> Vec<T> {
    let n = 2 * h;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (block, bi, bj) = match (i < h, j < h) {
                (true, true) => (&c11, i, j),
                (true, false) => (&c12, i, j - h),
                (false, true) => (&c21, i - h, j),
                (false, false) => (&c22, i - h, j - h),
            };
            out.push(block[bi * h + bj].clone());
        }
    }
    out
}

/// Plaintext-side block combination: free.
fn plain_combine(a: &[i64], b: &[i64], sub: bool) -> Vec<i64> {
    a.iter()
        .zip(b)
        .map(|(x, y)| if sub { x - y } else { x + y })
        .collect()
}

/// Ciphertext-side block combination: one counted operation per element.
fn ct_combine<E: Ahe>(
    engine: &E,
    ctr: &mut OpCounter,
    a: &[E::Ciphertext],
    b: &[E::Ciphertext],
    sub: bool,
) -> Vec<E::Ciphertext> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            if sub {
                engine.ct_sub(ctr, x, y)
            } else {
                engine.ct_add(ctr, x, y)
            }
        })
        .collect()
}

fn schoolbook_signed<E: Ahe>(
    engine: &E,
    ctr: &mut OpCounter,
    a: &[i64],
    b: &[E::Ciphertext],
    n: usize,
    width: u32,
) -> Vec<E::Ciphertext> {
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = engine.ct_scalar_mul(ctr, a[i * n], width, &b[j]);
            for k in 1..n {
                let p = engine.ct_scalar_mul(ctr, a[i * n + k], width, &b[k * n + j]);
                acc = engine.ct_add(ctr, &acc, &p);
            }
            data.push(acc);
        }
    }
    data
}

fn strassen_rec<E: Ahe>(
    engine: &E,
    ctr: &mut OpCounter,
    a: &[i64],
    b: &[E::Ciphertext],
    n: usize,
    width: u32,
    threshold: usize,
) -> Vec<E::Ciphertext> {
    if n == 1 {
        return vec![engine.ct_scalar_mul(ctr, a[0], width, &b[0])];
    }
    if n <= threshold {
        return schoolbook_signed(engine, ctr, a, b, n, width);
    }
    let h = n / 2;
    let (a11, a12, a21, a22) = (
        quad(a, n, 0, 0),
        quad(a, n, 0, 1),
        quad(a, n, 1, 0),
        quad(a, n, 1, 1),
    );
    let (b11, b12, b21, b22) = (
        quad(b, n, 0, 0),
        quad(b, n, 0, 1),
        quad(b, n, 1, 0),
        quad(b, n, 1, 1),
    );

    let s1 = plain_combine(&a11, &a22, false);
    let s2 = plain_combine(&a21, &a22, false);
    let s5 = plain_combine(&a11, &a12, false);
    let s6 = plain_combine(&a21, &a11, true);
    let s7 = plain_combine(&a12, &a22, true);

    let t1 = ct_combine(engine, ctr, &b11, &b22, false);
    let t3 = ct_combine(engine, ctr, &b12, &b22, true);
    let t4 = ct_combine(engine, ctr, &b21, &b11, true);
    let t6 = ct_combine(engine, ctr, &b11, &b12, false);
    let t7 = ct_combine(engine, ctr, &b21, &b22, false);

    let m1 = strassen_rec(engine, ctr, &s1, &t1, h, width, threshold);
    let m2 = strassen_rec(engine, ctr, &s2, &b11, h, width, threshold);
    let m3 = strassen_rec(engine, ctr, &a11, &t3, h, width, threshold);
    let m4 = strassen_rec(engine, ctr, &a22, &t4, h, width, threshold);
    let m5 = strassen_rec(engine, ctr, &s5, &b22, h, width, threshold);
    let m6 = strassen_rec(engine, ctr, &s6, &t6, h, width, threshold);
    let m7 = strassen_rec(engine, ctr, &s7, &t7, h, width, threshold);

    let c11 = {
        let u = ct_combine(engine, ctr, &m1, &m4, false);
        let v = ct_combine(engine, ctr, &u, &m5, true);
        ct_combine(engine, ctr, &v, &m7, false)
    };
    let c12 = ct_combine(engine, ctr, &m3, &m5, false);
    let c21 = ct_combine(engine, ctr, &m2, &m4, false);
    let c22 = {
        let u = ct_combine(engine, ctr, &m1, &m2, true);
        let v = ct_combine(engine, ctr, &u, &m3, false);
        ct_combine(engine, ctr, &v, &m6, false)
    };
    assemble(h, c11, c12, c21, c22)
}

fn signed_entries(a: &PlainMatrix) -> Vec<i64> {
    a.data
        .iter()
        .map(|&v| i64::try_from(v).expect("entries below 2^62 fit i64"))
        .collect()
}

/// Seven-multiplication recursion down to 1x1 blocks. Requires square
/// power-of-two shapes; see [`pcmm_strassen_padded`] for everything else.
pub fn pcmm_strassen<E: Ahe>(
    engine: &E,
    ctr: &mut OpCounter,
    a: &PlainMatrix,
    b: &CipherMatrix<E::Ciphertext>,
) -> Result<CipherMatrix<E::Ciphertext>, MatmulError> {
    pcmm_strassen_threshold(engine, ctr, a, b, 1)
}

/// [`pcmm_strassen`] with the recursion cut off at `threshold`, below which
/// blocks multiply by the schoolbook rule. `threshold = 1` is the pure
/// recursion; larger cutoffs trade additions for multiplications and fall
/// outside the counted cost model.
pub fn pcmm_strassen_threshold<E: Ahe>(
    engine: &E,
    ctr: &mut OpCounter,
    a: &PlainMatrix,
    b: &CipherMatrix<E::Ciphertext>,
    threshold: usize,
) -> Result<CipherMatrix<E::Ciphertext>, MatmulError> {
    check_dims(a, b)?;
    let n = a.rows;
    if a.cols != n || b.cols != n || !n.is_power_of_two() {
        return Err(MatmulError::NotSquarePowerOfTwo {
            rows: a.rows,
            cols: a.cols,
            brows: b.rows,
            bcols: b.cols,
        });
    }
    let data = strassen_rec(
        engine,
        ctr,
        &signed_entries(a),
        &b.data,
        n,
        a.width,
        threshold.max(1),
    );
    Ok(CipherMatrix {
        rows: n,
        cols: n,
        data,
    })
}

/// Zero-pad to the next square power of two, run [`pcmm_strassen`], and crop.
/// The padding is made of free identity ciphertexts, but the recursion is
/// billed at the padded size — padding does not hide cost.
pub fn pcmm_strassen_padded<E: Ahe>(
    engine: &E,
    ctr: &mut OpCounter,
    a: &PlainMatrix,
    b: &CipherMatrix<E::Ciphertext>,
) -> Result<CipherMatrix<E::Ciphertext>, MatmulError> {
    check_dims(a, b)?;
    let (m, n, l) = (a.rows, a.cols, b.cols);
    let s = m.max(n).max(l).next_power_of_two();
    let mut a_pad = vec![0u64; s * s];
    for i in 0..m {
        for j in 0..n {
            a_pad[i * s + j] = a.get(i, j);
        }
    }
    let a_pad = PlainMatrix::new(s, s, a_pad, a.width)?;
    let mut b_pad = Vec::with_capacity(s * s);
    for i in 0..s {
        for j in 0..s {
            if i < n && j < l {
                b_pad.push(b.get(i, j).clone());
            } else {
                b_pad.push(engine.zero());
            }
        }
    }
    let b_pad = CipherMatrix {
        rows: s,
        cols: s,
        data: b_pad,
    };
    let full = pcmm_strassen(engine, ctr, &a_pad, &b_pad)?;
    Ok(full.crop(m, l))
}

// --- Compression-based engine ------------------------------------------------

/// Compress each column of `A` once, multiply only the surviving values
/// against each ciphertext of that row of `B`, rebuild with additions, and
/// accumulate the outer products. Returns the per-column compression counts
/// alongside the product.
pub fn pcmm_proposed<E: Ahe>(
    engine: &E,
    ctr: &mut OpCounter,
    a: &PlainMatrix,
    b: &CipherMatrix<E::Ciphertext>,
    levels: u32,
) -> Result<(CipherMatrix<E::Ciphertext>, Vec<IterationCounts>), MatmulError> {
    check_dims(a, b)?;
    let (m, n, l) = (a.rows, a.cols, b.cols);
    let width = a.width;
    let mut acc: Vec<E::Ciphertext> = vec![engine.zero(); m * l];
    let mut per_column = Vec::with_capacity(n);
    for k in 0..n {
        let col = compress(&a.column(k), levels)?;
        per_column.push(col.counts().clone());
        for j in 0..l {
            let prods = vs_mul_encrypted(engine, ctr, &col, b.get(k, j), width);
            for (i, p) in prods.into_iter().enumerate() {
                if k == 0 {
                    acc[i * l + j] = p;
                } else {
                    acc[i * l + j] = engine.ct_add(ctr, &acc[i * l + j], &p);
                }
            }
        }
    }
    Ok((
        CipherMatrix {
            rows: m,
            cols: l,
            data: acc,
        },
        per_column,
    ))
}

// --- Fixed-point bridging ----------------------------------------------------

/// Map a non-negative real to the integer domain at the given scale.
pub fn fixed_point_encode(x: f64, scale: u64) -> u64 {
    assert!(x >= 0.0 && x.is_finite(), "encode non-negative finite reals");
    (x * scale as f64).round() as u64
}

/// Undo [`fixed_point_encode`] after `depth` multiplicative levels (each
/// level multiplies two scaled values, so the scale compounds).
pub fn fixed_point_decode(v: u64, scale: u64, depth: u32) -> f64 {
    v as f64 / (scale as f64).powi(depth as i32)
}
