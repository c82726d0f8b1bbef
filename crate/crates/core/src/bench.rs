//! Experiment driver: runs the matrix-product engines over a parameter grid
//! and reports rows of operation counts, timings, or verification verdicts.
//!
//! Three modes:
//!
//! * `count` — no encryption. Deterministic engines report their closed-form
//!   counts in one row; the compression engine samples `trials` random
//!   matrices per cell and reports one row each.
//! * `time` — encrypts a matrix per trial and wall-clocks each engine on it.
//! * `verify` — like `time`, but decrypts the product and checks it against
//!   the plaintext reference instead of timing.
//!
//! Rows are paired across engines: the instance for `(n, t, trial)` is drawn
//! from a sub-seed that does not depend on the engine, so every engine sees
//! the same matrices.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ahe::{Ahe, AheError};
use crate::compress::{compress, CompressError};
use crate::cost::{
    counter_to_equiv, paillier_equiv, proposed_matrix_equiv, strassen_ct_adds,
    strassen_mult_count,
};
use crate::counter::OpCounter;
use crate::curve::p256;
use crate::elgamal::{EcElGamal, MessageBound};
use crate::matmul::{
    decrypt_matrix, encrypt_matrix, matmul_plain_oracle, pcmm_proposed, pcmm_schoolbook,
    pcmm_strassen, CipherMatrix, MatmulError, MulOrder, PlainMatrix,
};
use crate::paillier::{GeneratorMode, Paillier, PaillierError};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid parameter: {0}")]
    BadParam(String),
    #[error("the seven-product recursion needs power-of-two sizes, got n = {0}")]
    StrassenShape(u64),
    #[error("n = {n} exceeds the live-mode cap {max}; raise --max-encrypted-n or use count mode")]
    TooLargeForLiveMode { n: u64, max: u64 },
    #[error(transparent)]
    Matmul(#[from] MatmulError),
    #[error(transparent)]
    Compress(#[from] CompressError),
    #[error(transparent)]
    Ahe(#[from] AheError),
    #[error(transparent)]
    Paillier(#[from] PaillierError),
    #[error("csv serialization failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("json serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Schoolbook,
    Strassen,
    Proposed,
}

impl Algo {
    pub const ALL: [Algo; 3] = [Algo::Schoolbook, Algo::Strassen, Algo::Proposed];
}

impl std::fmt::Display for Algo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Algo::Schoolbook => "schoolbook",
            Algo::Strassen => "strassen",
            Algo::Proposed => "proposed",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Algo {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "schoolbook" => Ok(Algo::Schoolbook),
            "strassen" => Ok(Algo::Strassen),
            "proposed" => Ok(Algo::Proposed),
            other => Err(BenchError::BadParam(format!(
                "unknown algorithm {other:?}; expected schoolbook, strassen, or proposed"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Scheme {
    #[serde(rename = "ec-elgamal")]
    EcElGamal,
    #[serde(rename = "paillier")]
    Paillier,
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Scheme::EcElGamal => "ec-elgamal",
            Scheme::Paillier => "paillier",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Scheme {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ec-elgamal" => Ok(Scheme::EcElGamal),
            "paillier" => Ok(Scheme::Paillier),
            other => Err(BenchError::BadParam(format!(
                "unknown scheme {other:?}; expected ec-elgamal or paillier"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Count,
    Time,
    Verify,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Mode::Count => "count",
            Mode::Time => "time",
            Mode::Verify => "verify",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Mode {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "count" => Ok(Mode::Count),
            "time" => Ok(Mode::Time),
            "verify" => Ok(Mode::Verify),
            other => Err(BenchError::BadParam(format!(
                "unknown mode {other:?}; expected count, time, or verify"
            ))),
        }
    }
}

/// One full grid run.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub algos: Vec<Algo>,
    pub scheme: Scheme,
    pub ns: Vec<u64>,
    pub ts: Vec<u32>,
    pub trials: u64,
    pub seed: u64,
    /// Compression levels for the proposed engine.
    pub iters: u32,
    pub mode: Mode,
    /// Live modes refuse `n` above this cap; count mode ignores it.
    pub max_encrypted_n: u64,
}

/// One experiment outcome. Fields that do not apply to the row's scheme or
/// mode are `None` and serialize to empty CSV cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub algo: Algo,
    pub scheme: Scheme,
    pub n: u64,
    pub t: u32,
    pub trial: u64,
    /// Sub-seed the row's instance was drawn from; the master seed for
    /// closed-form rows that sample nothing.
    pub seed: u64,
    /// Elliptic-curve scheme: component scalar-multiplication ladders run
    /// (two per ciphertext scalar multiplication).
    pub ecsm_count: Option<u64>,
    /// Elliptic-curve scheme: total point operations (additions plus
    /// doublings); equals `equiv_adds` by construction.
    pub point_add_count: Option<u64>,
    /// Modular scheme: multiplications plus squarings.
    pub mod_mul_count: Option<u64>,
    /// Cost in equivalent point additions, comparable across schemes.
    pub equiv_adds: u64,
    /// Wall time of the matrix product itself (time mode only).
    pub wall_ns: Option<u64>,
    /// Whether decryption matched the plaintext reference (verify mode only).
    pub verified: Option<bool>,
}

/// One step of the split-mix generator; used to derive independent sub-seeds.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Instance seed for a grid cell; independent of the engine so that every
/// engine sees the same matrices.
pub fn sub_seed(master: u64, n: u64, t: u32, trial: u64) -> u64 {
    let mut s = splitmix64(master);
    s = splitmix64(s ^ n);
    s = splitmix64(s ^ u64::from(t));
    s = splitmix64(s ^ trial);
    s
}

/// Ratio of a baseline cost to another cost, rounded to two decimals.
pub fn compute_speedup(baseline: f64, other: f64) -> f64 {
    (baseline / other * 100.0).round() / 100.0
}

fn validate(spec: &ExperimentSpec) -> Result<(), BenchError> {
    if spec.algos.is_empty() {
        return Err(BenchError::BadParam("no algorithms selected".into()));
    }
    if spec.ns.is_empty() || spec.ts.is_empty() {
        return Err(BenchError::BadParam("empty n or t grid".into()));
    }
    if spec.trials == 0 {
        return Err(BenchError::BadParam("trials must be at least 1".into()));
    }
    if !(1..=8).contains(&spec.iters) {
        return Err(BenchError::BadParam(format!(
            "iters must be in 1..=8, got {}",
            spec.iters
        )));
    }
    for &n in &spec.ns {
        if n == 0 || n > 4096 {
            return Err(BenchError::BadParam(format!("n must be in 1..=4096, got {n}")));
        }
        if spec.algos.contains(&Algo::Strassen) && !n.is_power_of_two() {
            return Err(BenchError::StrassenShape(n));
        }
        if spec.mode != Mode::Count && n > spec.max_encrypted_n {
            return Err(BenchError::TooLargeForLiveMode {
                n,
                max: spec.max_encrypted_n,
            });
        }
    }
    for &t in &spec.ts {
        if !(1..=21).contains(&t) {
            return Err(BenchError::BadParam(format!("t must be in 1..=21, got {t}")));
        }
        if spec.scheme == Scheme::EcElGamal {
            let max_n = spec.ns.iter().copied().max().unwrap_or(1);
            let product = u128::from(max_n) << (2 * t);
            if product > 1u128 << 42 {
                return Err(BenchError::BadParam(format!(
                    "n = {max_n}, t = {t} exceeds the decodable message bound"
                )));
            }
        }
    }
    Ok(())
}

/// Run the grid described by `spec` and return one row per outcome.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ResultRow>, BenchError> {
    validate(spec)?;
    match spec.mode {
        Mode::Count => count_rows(spec),
        Mode::Time | Mode::Verify => match spec.scheme {
            Scheme::EcElGamal => live_rows(
                spec,
                |key_seed, n, t| {
                    Ok(EcElGamal::keygen(
                        p256(),
                        MessageBound::for_width(t, n),
                        key_seed,
                    ))
                },
                |ctr| {
                    let eq = counter_to_equiv(ctr);
                    (
                        Some(ctr.ecsm_count()),
                        Some(eq.total),
                        None,
                        eq.total,
                    )
                },
            ),
            Scheme::Paillier => live_rows(
                spec,
                |key_seed, _n, _t| {
                    Ok(Paillier::keygen(128, key_seed, GeneratorMode::NPlusOne)?)
                },
                |ctr| {
                    (
                        None,
                        None,
                        Some(ctr.mod_muls + ctr.mod_sqrs),
                        paillier_equiv(ctr),
                    )
                },
            ),
        },
    }
}

/// Fill the scheme-dependent count columns from a ciphertext-operation tally.
fn synthetic_counts(
    scheme: Scheme,
    t: u32,
    ct_scalar_muls: u64,
    ct_adds: u64,
) -> (Option<u64>, Option<u64>, Option<u64>, u64) {
    let equiv = 4 * u64::from(t) * ct_scalar_muls + 2 * ct_adds;
    match scheme {
        Scheme::EcElGamal => (Some(2 * ct_scalar_muls), Some(equiv), None, equiv),
        Scheme::Paillier => {
            let mod_ops = 2 * u64::from(t) * ct_scalar_muls + ct_adds;
            (None, None, Some(mod_ops), 2 * mod_ops)
        }
    }
}

fn count_rows(spec: &ExperimentSpec) -> Result<Vec<ResultRow>, BenchError> {
    let mut rows = Vec::new();
    for &n in &spec.ns {
        for &t in &spec.ts {
            for &algo in &spec.algos {
                match algo {
                    Algo::Schoolbook => {
                        let (ecsm, point, modm, equiv) =
                            synthetic_counts(spec.scheme, t, n * n * n, n * n * (n - 1));
                        rows.push(ResultRow {
                            algo,
                            scheme: spec.scheme,
                            n,
                            t,
                            trial: 0,
                            seed: spec.seed,
                            ecsm_count: ecsm,
                            point_add_count: point,
                            mod_mul_count: modm,
                            equiv_adds: equiv,
                            wall_ns: None,
                            verified: None,
                        });
                    }
                    Algo::Strassen => {
                        let (ecsm, point, modm, equiv) = synthetic_counts(
                            spec.scheme,
                            t,
                            strassen_mult_count(n),
                            strassen_ct_adds(n),
                        );
                        rows.push(ResultRow {
                            algo,
                            scheme: spec.scheme,
                            n,
                            t,
                            trial: 0,
                            seed: spec.seed,
                            ecsm_count: ecsm,
                            point_add_count: point,
                            mod_mul_count: modm,
                            equiv_adds: equiv,
                            wall_ns: None,
                            verified: None,
                        });
                    }
                    Algo::Proposed => {
                        for trial in 0..spec.trials {
                            let s = sub_seed(spec.seed, n, t, trial);
                            let mut rng = ChaCha20Rng::seed_from_u64(s);
                            let a =
                                PlainMatrix::random(&mut rng, n as usize, n as usize, t);
                            let mut per_column = Vec::with_capacity(n as usize);
                            for k in 0..n as usize {
                                per_column
                                    .push(compress(&a.column(k), spec.iters)?.counts().clone());
                            }
                            let mult: u64 = per_column.iter().map(|c| c.mult_count).sum();
                            let add: u64 = per_column.iter().map(|c| c.add_count).sum();
                            let ct_scalar_muls = n * mult;
                            let ct_adds = n * add + n * n * (n - 1);
                            let (ecsm, point, modm, equiv) =
                                synthetic_counts(spec.scheme, t, ct_scalar_muls, ct_adds);
                            debug_assert_eq!(equiv, proposed_matrix_equiv(&per_column, t, n, n));
                            rows.push(ResultRow {
                                algo,
                                scheme: spec.scheme,
                                n,
                                t,
                                trial,
                                seed: s,
                                ecsm_count: ecsm,
                                point_add_count: point,
                                mod_mul_count: modm,
                                equiv_adds: equiv,
                                wall_ns: None,
                                verified: None,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(rows)
}

fn live_rows<E, F, S>(
    spec: &ExperimentSpec,
    make_engine: F,
    summarize: S,
) -> Result<Vec<ResultRow>, BenchError>
where
    E: Ahe,
    F: Fn(u64, u64, u32) -> Result<E, BenchError>,
    S: Fn(&OpCounter) -> (Option<u64>, Option<u64>, Option<u64>, u64),
{
    let mut rows = Vec::new();
    for &n in &spec.ns {
        for &t in &spec.ts {
            for trial in 0..spec.trials {
                let s = sub_seed(spec.seed, n, t, trial);
                let mut rng = ChaCha20Rng::seed_from_u64(s);
                let a = PlainMatrix::random(&mut rng, n as usize, n as usize, t);
                let bp = PlainMatrix::random(&mut rng, n as usize, n as usize, t);
                let key_seed = splitmix64(s ^ 0xA5A5_5A5A_0F0F_F0F0);
                let mut engine = make_engine(key_seed, n, t)?;
                let b = encrypt_matrix(&mut engine, &bp)?;
                let reference = if spec.mode == Mode::Verify {
                    Some(matmul_plain_oracle(&a, &bp, MulOrder::InnerProduct)?)
                } else {
                    None
                };
                for &algo in &spec.algos {
                    let mut ctr = OpCounter::new();
                    let start = Instant::now();
                    let product: CipherMatrix<E::Ciphertext> = match algo {
                        Algo::Schoolbook => pcmm_schoolbook(&engine, &mut ctr, &a, &b)?,
                        Algo::Strassen => pcmm_strassen(&engine, &mut ctr, &a, &b)?,
                        Algo::Proposed => {
                            pcmm_proposed(&engine, &mut ctr, &a, &b, spec.iters)?.0
                        }
                    };
                    let wall = start.elapsed().as_nanos() as u64;
                    let verified = match &reference {
                        Some(want) => {
                            let got = decrypt_matrix(&engine, &product)?;
                            Some(got.data() == want.data())
                        }
                        None => None,
                    };
                    let (ecsm, point, modm, equiv) = summarize(&ctr);
                    rows.push(ResultRow {
                        algo,
                        scheme: spec.scheme,
                        n,
                        t,
                        trial,
                        seed: s,
                        ecsm_count: ecsm,
                        point_add_count: point,
                        mod_mul_count: modm,
                        equiv_adds: equiv,
                        wall_ns: (spec.mode == Mode::Time).then_some(wall),
                        verified,
                    });
                }
            }
        }
    }
    Ok(rows)
}

/// Serialize rows as CSV with a header; `None` fields become empty cells.
pub fn emit_csv(rows: &[ResultRow]) -> Result<String, BenchError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer
        .into_inner()
        .expect("writing csv to a Vec cannot fail");
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Serialize rows as a pretty-printed JSON array.
pub fn emit_json(rows: &[ResultRow]) -> Result<String, BenchError> {
    Ok(serde_json::to_string_pretty(rows)?)
}

/// Per-cell mean costs with speedups against the cheapest-listed baseline
/// engine (schoolbook when present). `None` when fewer than two engines are
/// represented.
pub fn speedup_summary(rows: &[ResultRow]) -> Option<String> {
    use std::collections::BTreeMap;
    let mut cells: BTreeMap<(u64, u32), BTreeMap<Algo, (u64, u64)>> = BTreeMap::new();
    let mut algos_seen: std::collections::BTreeSet<Algo> = Default::default();
    for row in rows {
        algos_seen.insert(row.algo);
        let entry = cells
            .entry((row.n, row.t))
            .or_default()
            .entry(row.algo)
            .or_insert((0, 0));
        entry.0 += row.equiv_adds;
        entry.1 += 1;
    }
    if algos_seen.len() < 2 {
        return None;
    }
    let baseline_algo = if algos_seen.contains(&Algo::Schoolbook) {
        Algo::Schoolbook
    } else {
        *algos_seen.iter().next().expect("at least two engines")
    };
    let mut out = String::new();
    out.push_str(&format!(
        "{:>6} {:>4} {:>12} {:>18} {:>10}\n",
        "n", "t", "algo", "mean-equiv-adds", "speedup"
    ));
    for ((n, t), by_algo) in &cells {
        let baseline = by_algo
            .get(&baseline_algo)
            .map(|(sum, cnt)| *sum as f64 / *cnt as f64);
        for (algo, (sum, cnt)) in by_algo {
            let mean = *sum as f64 / *cnt as f64;
            let speedup = baseline
                .map(|b| format!("{:.2}", compute_speedup(b, mean)))
                .unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{n:>6} {t:>4} {:>12} {mean:>18.1} {speedup:>10}\n",
                algo.to_string()
            ));
        }
    }
    Some(out)
}
