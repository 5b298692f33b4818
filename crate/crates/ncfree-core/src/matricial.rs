//! Levelwise matrix evaluation of polynomials as nc functions, numeric
//! difference-differential operators via block upper-triangular points, and
//! nc-function axiom checks. This module is the floating-point cross-check of
//! the symbolic operators: exact scalars convert to doubles once, at the
//! evaluation boundary.

use crate::algebra::Functional;
use crate::error::{Error, Result};
use crate::ncpoly::NCPoly;
use crate::sampling::MatrixSampler;
use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

/// A level-`N` evaluation point: one matrix in `M_N(ℂ)⊗B` per variable,
/// stored as an `(N·k)×(N·k)` complex matrix.
#[derive(Clone, Debug)]
pub struct MatrixPoint {
    pub level: usize,
    pub k: usize,
    pub mats: Vec<CMat>,
}

impl MatrixPoint {
    pub fn new(level: usize, k: usize, mats: Vec<CMat>) -> Result<Self> {
        let dim = level * k;
        for m in &mats {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "expected {dim}×{dim} matrices at level {level} with k={k}, got {}×{}",
                    m.nrows(),
                    m.ncols()
                )));
            }
        }
        Ok(MatrixPoint { level, k, mats })
    }

    /// Blockwise direct sum with another point over the same `B`.
    pub fn direct_sum(&self, other: &MatrixPoint) -> Result<MatrixPoint> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch(
                "direct sum requires matching coefficient size".into(),
            ));
        }
        if self.mats.len() != other.mats.len() {
            return Err(Error::DimensionMismatch(
                "direct sum requires matching variable counts".into(),
            ));
        }
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| direct_sum(a, b))
            .collect();
        MatrixPoint::new(self.level + other.level, self.k, mats)
    }
}

/// How a polynomial is evaluated at a matrix point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    /// `p ∈ B⟨X⟩` evaluated into `M_N(ℂ)⊗B`: coefficients embed as
    /// `b ↦ I_N⊗b`, letters substitute the point's matrices.
    BValued,
    /// Scalar-coefficient `p` with letters mapped through functionals:
    /// letter `j` evaluates to `z(φ_{g(j)})(β)` for a single `β`, producing
    /// an `N×N` matrix.
    ZValued,
}

pub fn direct_sum(a: &CMat, b: &CMat) -> CMat {
    let (ra, ca) = (a.nrows(), a.ncols());
    let (rb, cb) = (b.nrows(), b.ncols());
    let mut out = CMat::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

/// Relative residual `‖a−b‖_F / max(1, ‖a‖_F, ‖b‖_F)`.
pub fn rel_residual(a: &CMat, b: &CMat) -> f64 {
    let denom = a.norm().max(b.norm()).max(1.0);
    (a - b).norm() / denom
}

/// A functional of the dual basis converted to floats once, applied to
/// complex `k×k` blocks.
#[derive(Clone, Debug)]
pub struct FloatFunctional {
    k: usize,
    weights: Vec<Complex64>,
}

impl FloatFunctional {
    pub fn from_exact(phi: &Functional, k: usize) -> Self {
        FloatFunctional {
            k,
            weights: phi.values_on_basis().iter().map(|v| v.to_c64()).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Applies the functional to the `k×k` block at `(row, col)` of `beta`.
    fn apply_block(&self, beta: &CMat, row: usize, col: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.k {
            for j in 0..self.k {
                acc += beta[(row * self.k + i, col * self.k + j)] * self.weights[i * self.k + j];
            }
        }
        acc
    }
}

/// `z(φ)_N(β) = (φ⊗id_{M_N})(β)`: applies `φ` to each `k×k` block.
pub fn z_of(phi: &FloatFunctional, beta: &CMat, k: usize) -> Result<CMat> {
    if phi.k() != k {
        return Err(Error::DimensionMismatch(
            "functional and block size disagree".into(),
        ));
    }
    if beta.nrows() != beta.ncols() || beta.nrows() % k != 0 {
        return Err(Error::DimensionMismatch(format!(
            "matrix of size {}×{} is not square with k={k} blocks",
            beta.nrows(),
            beta.ncols()
        )));
    }
    let n = beta.nrows() / k;
    Ok(CMat::from_fn(n, n, |a, b| phi.apply_block(beta, a, b)))
}

/// Evaluation context for the Z-valued mode: the float dual basis and the
/// letter-to-functional assignment.
#[derive(Clone, Debug)]
pub struct ZContext {
    pub k: usize,
    duals: Vec<FloatFunctional>,
    gen_map: Vec<usize>,
}

impl ZContext {
    /// `gen_map[letter] = functional index` (0-based; functional 0 is `θ`).
    pub fn new(k: usize, gen_map: Vec<usize>) -> Result<Self> {
        let duals: Vec<FloatFunctional> = crate::algebra::dual_basis(k)
            .iter()
            .map(|phi| FloatFunctional::from_exact(phi, k))
            .collect();
        if gen_map.iter().any(|&g| g >= duals.len()) {
            return Err(Error::InvalidInput(format!(
                "generator map references a functional outside 1..{}",
                duals.len()
            )));
        }
        Ok(ZContext { k, duals, gen_map })
    }

    /// Identity assignment: letter `j` evaluates through `φ_{j+1}`.
    pub fn identity(k: usize, n_vars: usize) -> Result<Self> {
        if n_vars > k * k {
            return Err(Error::InvalidInput(format!(
                "{n_vars} letters exceed the {} available functionals",
                k * k
            )));
        }
        ZContext::new(k, (0..n_vars).collect())
    }

    pub fn gen_map(&self) -> &[usize] {
        &self.gen_map
    }

    pub fn functional(&self, index: usize) -> &FloatFunctional {
        &self.duals[index]
    }

    /// Precomputes `z(φ_{g(l)})(β)` for each letter `l`.
    fn letter_images(&self, beta: &CMat) -> Result<Vec<CMat>> {
        self.gen_map
            .iter()
            .map(|&g| z_of(&self.duals[g], beta, self.k))
            .collect()
    }

    /// Letters that evaluate through `θ = φ₁`; the full derivative of a
    /// Z-valued polynomial only sees these positions.
    pub fn theta_letters(&self) -> Vec<usize> {
        self.gen_map
            .iter()
            .enumerate()
            .filter_map(|(l, &g)| (g == 0).then_some(l))
            .collect()
    }
}

fn embed_b(index: usize, k: usize, level: usize) -> CMat {
    // I_N ⊗ e_{ij}: the matrix unit repeated along the diagonal blocks
    let (i, j) = (index / k, index % k);
    let dim = level * k;
    let mut m = CMat::zeros(dim, dim);
    for a in 0..level {
        m[(a * k + i, a * k + j)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Evaluates `p` at a B-valued point: a unital homomorphism with
/// `b ↦ I_N⊗b` and `X_l ↦ mats[l]`.
pub fn eval_b(p: &NCPoly, pt: &MatrixPoint) -> Result<CMat> {
    if pt.k != p.kind().k() {
        return Err(Error::DimensionMismatch(format!(
            "point has k={}, polynomial coefficients have k={}",
            pt.k,
            p.kind().k()
        )));
    }
    if pt.mats.len() < p.n_vars() {
        return Err(Error::DimensionMismatch(format!(
            "point provides {} matrices for {} variables",
            pt.mats.len(),
            p.n_vars()
        )));
    }
    let dim = pt.level * pt.k;
    let mut out = CMat::zeros(dim, dim);
    for (w, s) in p.terms() {
        let mut acc = embed_b(w.basis_indices()[0] as usize, pt.k, pt.level);
        for (t, &l) in w.letters().iter().enumerate() {
            acc = acc * &pt.mats[l as usize];
            acc = acc * embed_b(w.basis_indices()[t + 1] as usize, pt.k, pt.level);
        }
        out += acc * s.to_c64();
    }
    Ok(out)
}

/// Evaluates a scalar-coefficient `p` at a single `β ∈ M_N(ℂ)⊗B` in the
/// Z-valued mode, producing an `N×N` matrix.
pub fn eval_z(p: &NCPoly, beta: &CMat, ctx: &ZContext) -> Result<CMat> {
    if !p.kind().is_scalar() {
        return Err(Error::ScalarCoefficientsRequired);
    }
    if ctx.gen_map.len() < p.n_vars() {
        return Err(Error::InvalidInput(format!(
            "generator map covers {} letters, polynomial has {}",
            ctx.gen_map.len(),
            p.n_vars()
        )));
    }
    let images = ctx.letter_images(beta)?;
    let n = beta.nrows() / ctx.k;
    let mut out = CMat::zeros(n, n);
    for (w, s) in p.terms() {
        let mut acc = CMat::identity(n, n);
        for &l in w.letters() {
            acc = acc * &images[l as usize];
        }
        out += acc * s.to_c64();
    }
    Ok(out)
}

/// Unified entry point matching the two evaluation modes. `BValued` uses all
/// of the point's matrices; `ZValued` uses `pt.mats[0]` as `β` together with
/// the context's generator map.
pub fn eval(p: &NCPoly, pt: &MatrixPoint, mode: EvalMode, ctx: Option<&ZContext>) -> Result<CMat> {
    match mode {
        EvalMode::BValued => eval_b(p, pt),
        EvalMode::ZValued => {
            let ctx = ctx.ok_or_else(|| {
                Error::InvalidInput("Z-valued evaluation requires a generator context".into())
            })?;
            let beta = pt.mats.first().ok_or_else(|| {
                Error::DimensionMismatch("Z-valued evaluation needs one matrix".into())
            })?;
            eval_z(p, beta, ctx)
        }
    }
}

/// Numeric difference-differential operator: evaluates `p` at the block
/// upper-triangular point `[[X, Z], [0, Y]]` and extracts the top-right
/// block. In the B-valued mode `Z` is an `(n·k)×(m·k)` block placed in the
/// distinguished variable; in the Z-valued mode `Z` is the scalar `n×m`
/// direction `γ`, lifted to `γ⊗I_k`.
pub fn delta_numeric(
    p: &NCPoly,
    x: &MatrixPoint,
    y: &MatrixPoint,
    z: &CMat,
    var: usize,
    mode: EvalMode,
    ctx: Option<&ZContext>,
) -> Result<CMat> {
    if x.k != y.k {
        return Err(Error::DimensionMismatch(
            "points live over different coefficient sizes".into(),
        ));
    }
    let (n, m, k) = (x.level, y.level, x.k);
    match mode {
        EvalMode::BValued => {
            if z.nrows() != n * k || z.ncols() != m * k {
                return Err(Error::DimensionMismatch(format!(
                    "direction block must be {}×{}, got {}×{}",
                    n * k,
                    m * k,
                    z.nrows(),
                    z.ncols()
                )));
            }
            let mats = (0..x.mats.len().min(y.mats.len()))
                .map(|l| {
                    let mut big = direct_sum(&x.mats[l], &y.mats[l]);
                    if l == var {
                        big.view_mut((0, n * k), (n * k, m * k)).copy_from(z);
                    }
                    big
                })
                .collect();
            let block_point = MatrixPoint::new(n + m, k, mats)?;
            let full = eval_b(p, &block_point)?;
            Ok(full.view((0, n * k), (n * k, m * k)).into_owned())
        }
        EvalMode::ZValued => {
            if z.nrows() != n || z.ncols() != m {
                return Err(Error::DimensionMismatch(format!(
                    "scalar direction must be {n}×{m}, got {}×{}",
                    z.nrows(),
                    z.ncols()
                )));
            }
            let beta_x = x.mats.first().ok_or_else(|| {
                Error::DimensionMismatch("Z-valued point needs one matrix".into())
            })?;
            let beta_y = y.mats.first().ok_or_else(|| {
                Error::DimensionMismatch("Z-valued point needs one matrix".into())
            })?;
            let mut big = direct_sum(beta_x, beta_y);
            // γ⊗I_k in the top-right corner
            for a in 0..n {
                for b in 0..m {
                    let g = z[(a, b)];
                    for d in 0..k {
                        big[(a * k + d, n * k + b * k + d)] = g;
                    }
                }
            }
            let block_point = MatrixPoint::new(n + m, k, vec![big])?;
            let full = eval(p, &block_point, EvalMode::ZValued, ctx)?;
            Ok(full.view((0, n), (n, m)).into_owned())
        }
    }
}

/// Evaluates the symbolic difference quotient at `(X; Y)` and sandwiches the
/// direction: `Σ eval(u)(X)·Z·eval(v)(Y)` over the terms `u⊗v` of `∂p`.
pub fn delta_symbolic(
    p: &NCPoly,
    x: &MatrixPoint,
    y: &MatrixPoint,
    z: &CMat,
    var: usize,
    mode: EvalMode,
    ctx: Option<&ZContext>,
) -> Result<CMat> {
    let (rows, cols) = match mode {
        EvalMode::BValued => (x.level * x.k, y.level * y.k),
        EvalMode::ZValued => (x.level, y.level),
    };
    let mut out = CMat::zeros(rows, cols);
    match mode {
        EvalMode::BValued => {
            let u = crate::calculus::free_diff(p, var);
            for ((lw, rw), s) in u.terms() {
                let left = eval_b(
                    &NCPoly::monomial(p.kind(), p.n_vars(), lw.clone(), crate::scalar::Scalar::one()),
                    x,
                )?;
                let right = eval_b(
                    &NCPoly::monomial(p.kind(), p.n_vars(), rw.clone(), crate::scalar::Scalar::one()),
                    y,
                )?;
                out += left * z * right * s.to_c64();
            }
        }
        EvalMode::ZValued => {
            let ctx = ctx.ok_or_else(|| {
                Error::InvalidInput("Z-valued evaluation requires a generator context".into())
            })?;
            // the derivative of a Z-valued polynomial sees every θ-letter
            let beta_x = &x.mats[0];
            let beta_y = &y.mats[0];
            for theta_letter in ctx.theta_letters() {
                if theta_letter >= p.n_vars() {
                    continue;
                }
                let u = crate::calculus::free_diff(p, theta_letter);
                for ((lw, rw), s) in u.terms() {
                    let left = eval_z(
                        &NCPoly::monomial(p.kind(), p.n_vars(), lw.clone(), crate::scalar::Scalar::one()),
                        beta_x,
                        ctx,
                    )?;
                    let right = eval_z(
                        &NCPoly::monomial(p.kind(), p.n_vars(), rw.clone(), crate::scalar::Scalar::one()),
                        beta_y,
                        ctx,
                    )?;
                    out += left * z * right * s.to_c64();
                }
            }
            let _ = var;
        }
    }
    Ok(out)
}

/// Residual between the symbolic and the block-numeric difference quotient.
pub fn symbolic_vs_numeric_delta(
    p: &NCPoly,
    x: &MatrixPoint,
    y: &MatrixPoint,
    z: &CMat,
    var: usize,
    mode: EvalMode,
    ctx: Option<&ZContext>,
) -> Result<f64> {
    let numeric = delta_numeric(p, x, y, z, var, mode, ctx)?;
    let symbolic = delta_symbolic(p, x, y, z, var, mode, ctx)?;
    Ok(rel_residual(&symbolic, &numeric))
}

/// The symbolic cyclic derivative of a Z-valued polynomial: the sum of the
/// cyclic derivatives over every letter assigned to `θ`.
pub fn cyclic_derivative_z(p: &NCPoly, ctx: &ZContext) -> NCPoly {
    let mut out = NCPoly::zero(p.kind(), p.n_vars());
    for theta_letter in ctx.theta_letters() {
        if theta_letter < p.n_vars() {
            out = out.add(&crate::calculus::cyclic_derivative(p, theta_letter));
        }
    }
    out
}

/// Numeric cyclic derivative at `π` through the trace formula
/// `Σ_{b,c} Tr(Δp(π,π)(e_{bc}))·e_{cb}`.
pub fn cyclic_numeric(p: &NCPoly, beta: &CMat, ctx: &ZContext) -> Result<CMat> {
    if beta.nrows() != beta.ncols() || beta.nrows() % ctx.k != 0 {
        return Err(Error::DimensionMismatch(
            "evaluation point is not square with k×k blocks".into(),
        ));
    }
    let n = beta.nrows() / ctx.k;
    let pt = MatrixPoint::new(n, ctx.k, vec![beta.clone()])?;
    let mut out = CMat::zeros(n, n);
    for b in 0..n {
        for c in 0..n {
            let mut gamma = CMat::zeros(n, n);
            gamma[(b, c)] = Complex64::new(1.0, 0.0);
            let block = delta_numeric(p, &pt, &pt, &gamma, 0, EvalMode::ZValued, Some(ctx))?;
            let trace: Complex64 = (0..n).map(|i| block[(i, i)]).sum();
            out[(c, b)] += trace;
        }
    }
    Ok(out)
}

/// Second-order numeric operator: evaluates at the 3×3 block point
/// `[[X, Z₁, 0], [0, Y, Z₂], [0, 0, W]]` and extracts the `(1,3)` block.
#[allow(clippy::too_many_arguments)]
pub fn delta2_numeric(
    p: &NCPoly,
    x: &MatrixPoint,
    y: &MatrixPoint,
    w: &MatrixPoint,
    z1: &CMat,
    z2: &CMat,
    var: usize,
    mode: EvalMode,
    ctx: Option<&ZContext>,
) -> Result<CMat> {
    if x.k != y.k || y.k != w.k {
        return Err(Error::DimensionMismatch(
            "points live over different coefficient sizes".into(),
        ));
    }
    let (n, m, l, k) = (x.level, y.level, w.level, x.k);
    match mode {
        EvalMode::BValued => {
            if z1.nrows() != n * k || z1.ncols() != m * k || z2.nrows() != m * k || z2.ncols() != l * k
            {
                return Err(Error::DimensionMismatch(
                    "direction blocks do not match the levels".into(),
                ));
            }
            let mats = (0..x.mats.len().min(y.mats.len()).min(w.mats.len()))
                .map(|v| {
                    let mut big = direct_sum(&direct_sum(&x.mats[v], &y.mats[v]), &w.mats[v]);
                    if v == var {
                        big.view_mut((0, n * k), (n * k, m * k)).copy_from(z1);
                        big.view_mut((n * k, (n + m) * k), (m * k, l * k)).copy_from(z2);
                    }
                    big
                })
                .collect();
            let block_point = MatrixPoint::new(n + m + l, k, mats)?;
            let full = eval_b(p, &block_point)?;
            Ok(full.view((0, (n + m) * k), (n * k, l * k)).into_owned())
        }
        EvalMode::ZValued => {
            if z1.nrows() != n || z1.ncols() != m || z2.nrows() != m || z2.ncols() != l {
                return Err(Error::DimensionMismatch(
                    "scalar directions do not match the levels".into(),
                ));
            }
            let beta_x = &x.mats[0];
            let beta_y = &y.mats[0];
            let beta_w = &w.mats[0];
            let mut big = direct_sum(&direct_sum(beta_x, beta_y), beta_w);
            for a in 0..n {
                for b in 0..m {
                    for d in 0..k {
                        big[(a * k + d, n * k + b * k + d)] = z1[(a, b)];
                    }
                }
            }
            for a in 0..m {
                for b in 0..l {
                    for d in 0..k {
                        big[(n * k + a * k + d, (n + m) * k + b * k + d)] = z2[(a, b)];
                    }
                }
            }
            let block_point = MatrixPoint::new(n + m + l, k, vec![big])?;
            let full = eval(p, &block_point, EvalMode::ZValued, ctx)?;
            Ok(full.view((0, n + m), (n, l)).into_owned())
        }
    }
}

/// Evaluates the symbolic second-order images `(∂⊗id)∘∂` and `(id⊗∂)∘∂` with
/// the two directions sandwiched in, and returns the worst residual of the
/// numeric `(1,3)` block against them.
#[allow(clippy::too_many_arguments)]
pub fn symbolic_vs_numeric_delta2(
    p: &NCPoly,
    x: &MatrixPoint,
    y: &MatrixPoint,
    w: &MatrixPoint,
    z1: &CMat,
    z2: &CMat,
    var: usize,
    mode: EvalMode,
    ctx: Option<&ZContext>,
) -> Result<f64> {
    let numeric = delta2_numeric(p, x, y, w, z1, z2, var, mode, ctx)?;
    let mut worst: f64 = 0.0;
    let scalar_one = crate::scalar::Scalar::one();
    let eval_word = |word: &crate::ncpoly::Word, pt: &MatrixPoint| -> Result<CMat> {
        let mono = NCPoly::monomial(p.kind(), p.n_vars(), word.clone(), scalar_one.clone());
        match mode {
            EvalMode::BValued => eval_b(&mono, pt),
            EvalMode::ZValued => eval_z(&mono, &pt.mats[0], ctx.unwrap()),
        }
    };
    // In the Z-valued mode the derivative acts at θ-letters; in the B-valued
    // mode at the distinguished variable.
    let vars: Vec<usize> = match mode {
        EvalMode::BValued => vec![var],
        EvalMode::ZValued => ctx
            .ok_or_else(|| Error::InvalidInput("Z-valued evaluation requires a context".into()))?
            .theta_letters(),
    };
    for second in [true, false] {
        let (rows, cols) = (numeric.nrows(), numeric.ncols());
        let mut symbolic = CMat::zeros(rows, cols);
        for &v1 in &vars {
            if v1 >= p.n_vars() {
                continue;
            }
            let u = crate::calculus::free_diff(p, v1);
            for &v2 in &vars {
                if v2 >= p.n_vars() {
                    continue;
                }
                let triple = if second {
                    crate::calculus::diff_tensor_left(&u, v2)
                } else {
                    crate::calculus::diff_tensor_right(&u, v2)
                };
                for ((aw, bw, cw), s) in triple.terms() {
                    let a = eval_word(aw, x)?;
                    let b = eval_word(bw, y)?;
                    let c = eval_word(cw, w)?;
                    symbolic += a * z1 * b * z2 * c * s.to_c64();
                }
            }
        }
        worst = worst.max(rel_residual(&symbolic, &numeric));
    }
    Ok(worst)
}

/// Report of the nc-function axiom checks.
#[derive(Clone, Debug, Default)]
pub struct AxiomsReport {
    pub trials: usize,
    pub max_direct_sum_residual: f64,
    pub max_similarity_residual: f64,
    pub violations: Vec<String>,
}

impl AxiomsReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the direct-sum and similarity axioms of nc functions on sampled
/// points: `‖eval(X⊕Y) − eval(X)⊕eval(Y)‖ ≤ tol` and
/// `‖eval(SXS⁻¹) − S·eval(X)·S⁻¹‖ ≤ tol·cond(S)`.
pub fn check_nc_axioms(
    p: &NCPoly,
    mode: EvalMode,
    ctx: Option<&ZContext>,
    seed: u64,
    trials: usize,
    max_level: usize,
    tol: f64,
) -> Result<AxiomsReport> {
    let mut sampler = MatrixSampler::new(seed);
    let k = match mode {
        EvalMode::BValued => p.kind().k(),
        EvalMode::ZValued => {
            ctx.ok_or_else(|| Error::InvalidInput("Z-valued mode requires a context".into()))?
                .k
        }
    };
    let n_mats = match mode {
        EvalMode::BValued => p.n_vars(),
        EvalMode::ZValued => 1,
    };
    let mut report = AxiomsReport {
        trials,
        ..AxiomsReport::default()
    };
    for trial in 0..trials {
        let n1 = sampler.gen_range_usize(1, max_level);
        let n2 = sampler.gen_range_usize(1, max_level);
        let pt_x = MatrixPoint::new(
            n1,
            k,
            (0..n_mats)
                .map(|_| sampler.random_matrix(n1 * k, n1 * k, 1.0))
                .collect(),
        )?;
        let pt_y = MatrixPoint::new(
            n2,
            k,
            (0..n_mats)
                .map(|_| sampler.random_matrix(n2 * k, n2 * k, 1.0))
                .collect(),
        )?;

        // direct sums
        let sum_pt = pt_x.direct_sum(&pt_y)?;
        let lhs = eval(p, &sum_pt, mode, ctx)?;
        let rhs = direct_sum(&eval(p, &pt_x, mode, ctx)?, &eval(p, &pt_y, mode, ctx)?);
        let res = rel_residual(&lhs, &rhs);
        report.max_direct_sum_residual = report.max_direct_sum_residual.max(res);
        if res > tol {
            report
                .violations
                .push(format!("trial {trial}: direct-sum residual {res:.3e}"));
        }

        // similarity: S acts as Ad(S)⊗id_B on M_N(B)
        let s_small = sampler.random_invertible(n1);
        let s_inv_small = s_small
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidInput("sampled a singular similarity".into()))?;
        let cond = {
            let svd_s = s_small.clone().svd(false, false);
            let max = svd_s.singular_values.iter().cloned().fold(0.0, f64::max);
            let min = svd_s.singular_values.iter().cloned().fold(f64::MAX, f64::min);
            max / min
        };
        let s_big = kron_identity(&s_small, k);
        let s_inv_big = kron_identity(&s_inv_small, k);
        let conj_pt = MatrixPoint::new(
            n1,
            k,
            pt_x.mats.iter().map(|m| &s_big * m * &s_inv_big).collect(),
        )?;
        let lhs = eval(p, &conj_pt, mode, ctx)?;
        let rhs = match mode {
            EvalMode::BValued => &s_big * eval(p, &pt_x, mode, ctx)? * &s_inv_big,
            EvalMode::ZValued => &s_small * eval(p, &pt_x, mode, ctx)? * &s_inv_small,
        };
        let res = rel_residual(&lhs, &rhs);
        report.max_similarity_residual = report.max_similarity_residual.max(res);
        if res > tol * cond {
            report.violations.push(format!(
                "trial {trial}: similarity residual {res:.3e} over tolerance {:.3e}",
                tol * cond
            ));
        }
    }
    Ok(report)
}

/// `S ⊗ I_k` for a scalar-level similarity acting on `M_N(ℂ)⊗B`.
fn kron_identity(s: &CMat, k: usize) -> CMat {
    let n = s.nrows();
    let mut out = CMat::zeros(n * k, n * k);
    for a in 0..n {
        for b in 0..n {
            for d in 0..k {
                out[(a * k + d, b * k + d)] = s[(a, b)];
            }
        }
    }
    out
}
