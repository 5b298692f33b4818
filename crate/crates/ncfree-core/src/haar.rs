//! Monte-Carlo oracle for Haar-unitary trace moments of `z(φ)`-words,
//! coefficient recovery for Z-valued polynomials, and statistical evidence
//! for the injectivity of the grading and tensor number operators.
//!
//! Sampling uses Ginibre + QR with the R-diagonal phase normalization; the
//! RNG is a counter-based per-sample stream derived from the seed, so the
//! sample loop parallelizes without changing any estimate, and accumulation
//! is a fixed-order pairwise reduction.

use crate::algebra::dual_basis;
use crate::calculus::{diff_tensor_left, diff_tensor_right, div_tensor_left, div_tensor_right};
use crate::error::{Error, Result};
use crate::matricial::{z_of, CMat, FloatFunctional, ZContext};
use crate::ncpoly::{NCPoly, TensorPoly};
use crate::sampling::PolySampler;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::ffi::c_int;

extern "C" {
    fn zgeqrf_(
        m: *const c_int,
        n: *const c_int,
        a: *mut Complex64,
        lda: *const c_int,
        tau: *mut Complex64,
        work: *mut Complex64,
        lwork: *const c_int,
        info: *mut c_int,
    );
    fn zungqr_(
        m: *const c_int,
        n: *const c_int,
        k: *const c_int,
        a: *mut Complex64,
        lda: *const c_int,
        tau: *const Complex64,
        work: *mut Complex64,
        lwork: *const c_int,
        info: *mut c_int,
    );
    fn zgemm_(
        transa: *const u8,
        transb: *const u8,
        m: *const c_int,
        n: *const c_int,
        k: *const c_int,
        alpha: *const Complex64,
        a: *const Complex64,
        lda: *const c_int,
        b: *const Complex64,
        ldb: *const c_int,
        beta: *const Complex64,
        c: *mut Complex64,
        ldc: *const c_int,
    );
}

/// `a·b` through BLAS; the DMatrix storage is column-major, which is what
/// Fortran expects.
pub fn matmul(a: &CMat, b: &CMat) -> CMat {
    assert_eq!(a.ncols(), b.nrows(), "matmul dimension mismatch");
    let (m, k, n) = (a.nrows() as c_int, a.ncols() as c_int, b.ncols() as c_int);
    let mut c = CMat::zeros(a.nrows(), b.ncols());
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    unsafe {
        zgemm_(
            b"N".as_ptr(),
            b"N".as_ptr(),
            &m,
            &n,
            &k,
            &one,
            a.as_slice().as_ptr(),
            &m,
            b.as_slice().as_ptr(),
            &k,
            &zero,
            c.as_mut_slice().as_mut_ptr(),
            &m,
        );
    }
    c
}

/// In-place QR factorization returning `Q`; `a` is consumed as the Ginibre
/// sample and the diagonal of `R` is returned alongside for phase fixing.
fn qr_q_and_rdiag(mut a: CMat) -> (CMat, Vec<Complex64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let nn = n as c_int;
    let mut tau = vec![Complex64::new(0.0, 0.0); n];
    let mut info: c_int = 0;
    // workspace query
    let mut work_query = [Complex64::new(0.0, 0.0)];
    let minus_one: c_int = -1;
    unsafe {
        zgeqrf_(
            &nn,
            &nn,
            a.as_mut_slice().as_mut_ptr(),
            &nn,
            tau.as_mut_ptr(),
            work_query.as_mut_ptr(),
            &minus_one,
            &mut info,
        );
    }
    assert_eq!(info, 0, "zgeqrf workspace query failed");
    let lwork = work_query[0].re as c_int;
    let mut work = vec![Complex64::new(0.0, 0.0); lwork.max(1) as usize];
    unsafe {
        zgeqrf_(
            &nn,
            &nn,
            a.as_mut_slice().as_mut_ptr(),
            &nn,
            tau.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            &mut info,
        );
    }
    assert_eq!(info, 0, "zgeqrf failed");
    let rdiag: Vec<Complex64> = (0..n).map(|i| a[(i, i)]).collect();
    unsafe {
        zungqr_(
            &nn,
            &nn,
            &nn,
            a.as_mut_slice().as_mut_ptr(),
            &nn,
            tau.as_ptr(),
            work.as_mut_ptr(),
            &lwork,
            &mut info,
        );
    }
    assert_eq!(info, 0, "zungqr failed");
    (a, rdiag)
}

/// Draws a Haar-distributed unitary of the given dimension: complex Ginibre,
/// QR, then each column rescaled by the phase of the matching R diagonal.
pub fn sample_haar_unitary(dim: usize, rng: &mut impl Rng) -> CMat {
    assert!(dim >= 1, "dimension must be positive");
    let ginibre = CMat::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let (mut q, rdiag) = qr_q_and_rdiag(ginibre);
    for (j, r) in rdiag.iter().enumerate() {
        let phase = if r.norm() > 0.0 {
            r / r.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Per-sample RNG stream: the seed selects the key, the sample index selects
/// the stream, so draws are independent of thread count and schedule.
pub fn sample_rng(seed: u64, sample_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample_index.wrapping_add(1));
    rng
}

/// Monte-Carlo configuration for the trace-moment oracle.
#[derive(Clone, Copy, Debug)]
pub struct HaarConfig {
    /// Coefficient size: the unitaries live in `U(N·k)`.
    pub k: usize,
    /// Level `N` of the trace normalization.
    pub level: usize,
    pub samples: usize,
    pub seed: u64,
}

impl HaarConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k < 1 || self.level < 1 || self.samples < 1 {
            return Err(Error::InvalidInput(
                "k, N and the sample count must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Monte-Carlo estimate of a normalized trace moment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HaarEstimate {
    pub mean: Complex64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Fixed-order pairwise summation.
fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    match xs.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => xs[0],
        n => {
            let (lo, hi) = xs.split_at(n / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

fn estimate_from_samples(values: &[Complex64], seed: u64) -> HaarEstimate {
    let n = values.len();
    let mean = pairwise_sum(values) / n as f64;
    let sq: Vec<Complex64> = values
        .iter()
        .map(|v| Complex64::new((v - mean).norm_sqr(), 0.0))
        .collect();
    let stderr = if n > 1 {
        (pairwise_sum(&sq).re / ((n - 1) as f64 * n as f64)).sqrt()
    } else {
        0.0
    };
    HaarEstimate {
        mean,
        stderr,
        samples: n,
        seed,
    }
}

/// `(1/N)·Tr(P·Q^*)` without forming the product.
fn normalized_trace_pair(p: &CMat, q: &CMat) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b) in p.iter().zip(q.iter()) {
        acc += a * b.conj();
    }
    acc / p.nrows() as f64
}

/// Evaluates all unique words needed by the requested pairs on one sample,
/// reusing shared sub-products. Words are 0-based functional indices.
///
/// The trace-moment theorem is stated for the generators normalized with
/// respect to the normalized trace, which are `√k·z(φ_j)` in terms of the
/// `φ₁(1)=1` dual basis; the evaluator bakes that `√k` into every letter so
/// the `k^{-#}` targets hold as displayed.
struct WordEvaluator {
    duals: Vec<FloatFunctional>,
    k: usize,
    letter_scale: f64,
}

impl WordEvaluator {
    fn new(k: usize) -> Self {
        WordEvaluator {
            duals: dual_basis(k)
                .iter()
                .map(|phi| FloatFunctional::from_exact(phi, k))
                .collect(),
            k,
            letter_scale: (k as f64).sqrt(),
        }
    }

    /// `√k·z(φ_j)(ω)` for one functional index.
    fn letter_image(&self, omega: &CMat, j: usize) -> Result<CMat> {
        let phi = self.duals.get(j).ok_or_else(|| {
            Error::InvalidInput(format!("functional index {} out of range", j + 1))
        })?;
        Ok(z_of(phi, omega, self.k)? * Complex64::new(self.letter_scale, 0.0))
    }

    fn word_matrices(
        &self,
        omega: &CMat,
        words: &[Vec<usize>],
        level: usize,
    ) -> Result<BTreeMap<Vec<usize>, CMat>> {
        let mut cache: BTreeMap<Vec<usize>, CMat> = BTreeMap::new();
        cache.insert(Vec::new(), CMat::identity(level, level));
        let mut letters: BTreeMap<usize, CMat> = BTreeMap::new();
        for w in words {
            for &j in w {
                if let std::collections::btree_map::Entry::Vacant(e) = letters.entry(j) {
                    e.insert(self.letter_image(omega, j)?);
                }
            }
        }
        let mut sorted: Vec<&Vec<usize>> = words.iter().collect();
        sorted.sort_by_key(|w| w.len());
        for w in sorted {
            if cache.contains_key(w) {
                continue;
            }
            let prefix = cache
                .get(&w[..w.len() - 1].to_vec())
                .cloned()
                .unwrap_or_else(|| {
                    let mut acc = CMat::identity(level, level);
                    for &j in &w[..w.len() - 1] {
                        acc = matmul(&acc, &letters[&j]);
                    }
                    acc
                });
            let m = if w.len() == 1 {
                letters[&w[0]].clone()
            } else {
                matmul(&prefix, &letters[&w[w.len() - 1]])
            };
            cache.insert(w.clone(), m);
        }
        Ok(cache)
    }

    /// Evaluates a scalar-coefficient polynomial over the scaled letter
    /// images, mapping letters through `gen_map`.
    fn eval_poly(
        &self,
        p: &NCPoly,
        gen_map: &[usize],
        cache: &BTreeMap<Vec<usize>, CMat>,
        level: usize,
    ) -> CMat {
        let mut out = CMat::zeros(level, level);
        for (w, s) in p.terms() {
            let key: Vec<usize> = w.letters().iter().map(|&l| gen_map[l as usize]).collect();
            out += &cache[&key] * s.to_c64();
        }
        out
    }
}

/// Estimates the moments `(1/N)Tr[w_i(ω)·w_j(ω)^*]` for a batch of word
/// pairs over a shared stream of Haar samples.
pub fn trace_moments_batch(
    pairs: &[(Vec<usize>, Vec<usize>)],
    cfg: &HaarConfig,
) -> Result<Vec<HaarEstimate>> {
    cfg.validate()?;
    let mut words: Vec<Vec<usize>> = Vec::new();
    for (wi, wj) in pairs {
        for w in [wi, wj] {
            if w.iter().any(|&j| j >= cfg.k * cfg.k) {
                return Err(Error::InvalidInput(format!(
                    "functional index out of 1..{}",
                    cfg.k * cfg.k
                )));
            }
            if !words.contains(w) {
                words.push(w.clone());
            }
        }
    }
    // prefixes let longer words reuse shorter products
    let mut closed = words.clone();
    for w in &words {
        for l in 1..w.len() {
            let p = w[..l].to_vec();
            if !closed.contains(&p) {
                closed.push(p);
            }
        }
    }
    let evaluator = WordEvaluator::new(cfg.k);
    let dim = cfg.level * cfg.k;
    let per_sample: Vec<Vec<Complex64>> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|idx| {
            let mut rng = sample_rng(cfg.seed, idx);
            let omega = sample_haar_unitary(dim, &mut rng);
            let cache = evaluator
                .word_matrices(&omega, &closed, cfg.level)
                .expect("validated above");
            pairs
                .iter()
                .map(|(wi, wj)| normalized_trace_pair(&cache[wi], &cache[wj]))
                .collect()
        })
        .collect();
    Ok((0..pairs.len())
        .map(|p| {
            let column: Vec<Complex64> = per_sample.iter().map(|row| row[p]).collect();
            estimate_from_samples(&column, cfg.seed)
        })
        .collect())
}

/// Single-pair convenience wrapper. Word entries are 0-based functional
/// indices (`0` is `θ = φ₁`).
pub fn trace_moment(
    word_i: &[usize],
    word_j: &[usize],
    cfg: &HaarConfig,
) -> Result<HaarEstimate> {
    Ok(trace_moments_batch(&[(word_i.to_vec(), word_j.to_vec())], cfg)?.remove(0))
}

/// `k^{-#}` where `#` counts the occurrences of `θ` in the word.
pub fn theta_weight(word: &[usize], k: usize) -> f64 {
    let count = word.iter().filter(|&&j| j == 0).count() as i32;
    (k as f64).powi(-count)
}

/// One row of the orthogonality table.
#[derive(Clone, Debug)]
pub struct OrthogonalityRow {
    pub word_i: Vec<usize>,
    pub word_j: Vec<usize>,
    pub estimate: HaarEstimate,
    pub target: f64,
    /// Absolute deviation allowed; zero-mean rows use `4·stderr` instead.
    pub band: f64,
    pub exact_zero_claim: bool,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct OrthogonalityReport {
    pub cfg: HaarConfig,
    pub max_len: usize,
    pub rows: Vec<OrthogonalityRow>,
    pub failures: usize,
}

impl OrthogonalityReport {
    pub fn is_clean(&self) -> bool {
        self.failures == 0
    }
}

fn all_words(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k * k).map(move |j| {
                    let mut next = w.clone();
                    next.push(j);
                    next
                })
            })
            .collect();
    }
    out
}

/// Tests the trace-moment theorem over all words of length up to `max_len`:
/// every diagonal pair against its `k^{-#}` target inside `asym_band`, every
/// length-mismatched pair `(n, m)` with `n < m` against the exact-zero claim
/// (`|mean| ≤ 4·stderr`; the transposed pairs are complex conjugates), and
/// the same-length off-diagonal pairs of length 1 against zero inside
/// `asym_band`.
pub fn verify_orthogonality(
    max_len: usize,
    cfg: &HaarConfig,
    asym_band: f64,
) -> Result<OrthogonalityReport> {
    cfg.validate()?;
    if max_len < 1 {
        return Err(Error::InvalidInput("max_len must be at least 1".into()));
    }
    let words_by_len: Vec<Vec<Vec<usize>>> =
        (1..=max_len).map(|l| all_words(cfg.k, l)).collect();
    let mut pairs: Vec<(Vec<usize>, Vec<usize>, f64, bool)> = Vec::new();
    for words in &words_by_len {
        for w in words {
            pairs.push((w.clone(), w.clone(), theta_weight(w, cfg.k), false));
        }
    }
    for n in 0..words_by_len.len() {
        for m in (n + 1)..words_by_len.len() {
            for wi in &words_by_len[n] {
                for wj in &words_by_len[m] {
                    pairs.push((wi.clone(), wj.clone(), 0.0, true));
                }
            }
        }
    }
    for wi in &words_by_len[0] {
        for wj in &words_by_len[0] {
            if wi < wj {
                pairs.push((wi.clone(), wj.clone(), 0.0, false));
            }
        }
    }
    let batch: Vec<(Vec<usize>, Vec<usize>)> = pairs
        .iter()
        .map(|(a, b, _, _)| (a.clone(), b.clone()))
        .collect();
    let estimates = trace_moments_batch(&batch, cfg)?;
    let mut rows = Vec::with_capacity(pairs.len());
    let mut failures = 0;
    for ((word_i, word_j, target, exact_zero_claim), estimate) in
        pairs.into_iter().zip(estimates)
    {
        let band = if exact_zero_claim {
            4.0 * estimate.stderr
        } else {
            asym_band
        };
        let deviation = (estimate.mean - Complex64::new(target, 0.0)).norm();
        let passed = deviation <= band;
        if !passed {
            failures += 1;
        }
        rows.push(OrthogonalityRow {
            word_i,
            word_j,
            estimate,
            target,
            band,
            exact_zero_claim,
            passed,
        });
    }
    Ok(OrthogonalityReport {
        cfg: *cfg,
        max_len,
        rows,
        failures,
    })
}

/// One recovered coefficient of a Z-valued polynomial.
#[derive(Clone, Debug)]
pub struct RecoveredCoefficient {
    /// Functional indices of the paired word (0-based; empty = degree 0).
    pub word: Vec<usize>,
    /// Raw moment estimate `≈ a_w·k^{-#[w]}`.
    pub raw: HaarEstimate,
    /// `raw / k^{-#[w]}`, the estimate of the coefficient itself.
    pub scaled: Complex64,
}

/// Estimates `(1/N)Tr[p_N(ω)·(z_{w}(ω))^*]` for every word of length up to
/// `max_deg`; dividing by `k^{-#}` recovers the coefficients of `p`.
pub fn recover_coefficients(
    p: &NCPoly,
    ctx: &ZContext,
    max_deg: usize,
    cfg: &HaarConfig,
) -> Result<Vec<RecoveredCoefficient>> {
    cfg.validate()?;
    if !p.kind().is_scalar() {
        return Err(Error::ScalarCoefficientsRequired);
    }
    if ctx.k != cfg.k {
        return Err(Error::DimensionMismatch(
            "context and configuration disagree on k".into(),
        ));
    }
    let mut words: Vec<Vec<usize>> = Vec::new();
    for l in 0..=max_deg {
        words.extend(all_words(cfg.k, l));
    }
    // the polynomial's own words (mapped through the generator assignment)
    // must be in the evaluation cache as well
    let gen_map = ctx.gen_map().to_vec();
    let mut closed = words.clone();
    for (w, _) in p.terms() {
        let mapped: Vec<usize> = w
            .letters()
            .iter()
            .map(|&l| {
                gen_map.get(l as usize).copied().ok_or_else(|| {
                    Error::InvalidInput("generator map does not cover the polynomial".into())
                })
            })
            .collect::<Result<_>>()?;
        for l in 1..=mapped.len() {
            let prefix = mapped[..l].to_vec();
            if !closed.contains(&prefix) {
                closed.push(prefix);
            }
        }
    }
    let evaluator = WordEvaluator::new(cfg.k);
    let dim = cfg.level * cfg.k;
    let per_sample: Vec<Vec<Complex64>> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|idx| {
            let mut rng = sample_rng(cfg.seed, idx);
            let omega = sample_haar_unitary(dim, &mut rng);
            let cache = evaluator
                .word_matrices(&omega, &closed, cfg.level)
                .expect("validated words");
            let f = evaluator.eval_poly(p, &gen_map, &cache, cfg.level);
            words
                .iter()
                .map(|w| normalized_trace_pair(&f, &cache[w]))
                .collect()
        })
        .collect();
    Ok(words
        .into_iter()
        .enumerate()
        .map(|(i, word)| {
            let column: Vec<Complex64> = per_sample.iter().map(|row| row[i]).collect();
            let raw = estimate_from_samples(&column, cfg.seed);
            let scaled = raw.mean / theta_weight(&word, cfg.k);
            RecoveredCoefficient { word, raw, scaled }
        })
        .collect())
}

/// Which operator the injectivity evidence targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InjectivityOp {
    /// The grading operator `L = N + id` on polynomials.
    Grading,
    /// The tensor number operator `N₂ = N⊗id + id⊗N + id`.
    Number2,
}

#[derive(Clone, Debug)]
pub struct CoefficientCheck {
    pub word: Vec<usize>,
    pub recovered: Complex64,
    pub exact: Complex64,
    pub error: f64,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct InjectivityReport {
    pub op: InjectivityOp,
    pub exact_trials: usize,
    pub exact_violations: Vec<String>,
    pub coefficient_checks: Vec<CoefficientCheck>,
    pub statistical_failures: usize,
}

impl InjectivityReport {
    pub fn is_clean(&self) -> bool {
        self.exact_violations.is_empty() && self.statistical_failures == 0
    }
}

/// Evidence that the grading and tensor number operators are injective:
/// (a) exact — on random homogeneous components the operators act by the
/// integer eigenvalues `d+1 ≥ 1` resp. `n+m+1 ≥ 1`, so `op[p] = 0` forces
/// `p = 0`; (b) statistical — the Haar oracle recovers the coefficients of
/// `op[p]` (for `N₂` collapsed through the multiplication map) within `band`.
pub fn injectivity_evidence(
    op: InjectivityOp,
    trials: usize,
    cfg: &HaarConfig,
    band: f64,
) -> Result<InjectivityReport> {
    cfg.validate()?;
    let n_vars = (cfg.k * cfg.k).min(3);
    let ctx = ZContext::identity(cfg.k, n_vars)?;
    let mut sampler = PolySampler::new(cfg.seed ^ 0x9e37_79b9, crate::algebra::AlgebraKind::Scalar, n_vars, 2, 2);
    let mut exact_violations = Vec::new();
    for trial in 0..trials {
        let d = sampler.gen_range_usize(0, 4);
        let p = sampler.random_homogeneous_poly(d);
        match op {
            InjectivityOp::Grading => {
                // L scales a word with d_θ occurrences of θ by d_θ + 1 ≥ 1
                let lp = crate::calculus::grading_op(&p, 0);
                let expected = crate::calculus::scale_by_letter_count(&p, 0, 1);
                if lp != expected {
                    exact_violations.push(format!("trial {trial}: grading eigenvalue mismatch"));
                }
                if p.is_zero() != lp.is_zero() {
                    exact_violations.push(format!("trial {trial}: kernel element detected"));
                }
            }
            InjectivityOp::Number2 => {
                let deg_q = sampler.gen_range_usize(0, 3);
                let q = sampler.random_homogeneous_poly(deg_q);
                let xi = crate::ncpoly::tensor_of(&p, &q);
                let n2 = crate::calculus::number_op2(&xi, 0);
                let mut expected = TensorPoly::zero(xi.kind(), xi.n_vars());
                for ((lw, rw), s) in xi.terms() {
                    let eig = (lw.letter_count(0) + rw.letter_count(0) + 1) as i64;
                    expected.add_term(
                        (lw.clone(), rw.clone()),
                        &crate::scalar::Scalar::from_int(eig) * s,
                    );
                }
                if n2 != expected {
                    exact_violations.push(format!("trial {trial}: N₂ eigenvalue mismatch"));
                }
                if xi.is_zero() != n2.is_zero() {
                    exact_violations.push(format!("trial {trial}: kernel element detected"));
                }
            }
        }
    }

    // statistical part: recover the coefficients of op[p] through the oracle
    let carrier = sampler.random_poly();
    let image = match op {
        InjectivityOp::Grading => crate::calculus::grading_op(&carrier, 0),
        InjectivityOp::Number2 => {
            let xi = crate::calculus::free_diff(&carrier.mul(&carrier), 0);
            let n2 = xi
                .add(&div_tensor_left(&diff_tensor_left(&xi, 0), 0))
                .add(&div_tensor_right(&diff_tensor_right(&xi, 0), 0));
            crate::calculus::mul_map(&n2)
        }
    };
    let max_deg = image.degree().unwrap_or(0).min(2);
    let mut truncated = NCPoly::zero(image.kind(), image.n_vars());
    for (w, s) in image.terms() {
        if w.degree() <= max_deg {
            truncated.add_term(w.clone(), s.clone());
        }
    }
    let recovered = recover_coefficients(&truncated, &ctx, max_deg, cfg)?;
    let mut coefficient_checks = Vec::new();
    let mut statistical_failures = 0;
    for rec in recovered {
        let exact = exact_coefficient(&truncated, &rec.word);
        let error = (rec.scaled - exact).norm();
        let passed = error <= band;
        if !passed {
            statistical_failures += 1;
        }
        coefficient_checks.push(CoefficientCheck {
            word: rec.word,
            recovered: rec.scaled,
            exact,
            error,
            passed,
        });
    }
    Ok(InjectivityReport {
        op,
        exact_trials: trials,
        exact_violations,
        coefficient_checks,
        statistical_failures,
    })
}

/// Exact coefficient of the word with the given letter sequence in a
/// scalar-coefficient polynomial.
pub fn exact_coefficient(p: &NCPoly, letters: &[usize]) -> Complex64 {
    for (w, s) in p.terms() {
        if w.letters().iter().map(|&l| l as usize).collect::<Vec<_>>() == letters {
            return s.to_c64();
        }
    }
    Complex64::new(0.0, 0.0)
}
