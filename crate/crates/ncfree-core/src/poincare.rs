//! Exactness deciders and constructive antiderivative/kernel solvers for the
//! cyclic derivative and the free difference quotient.
//!
//! Every solver verifies its own output before returning: the constructions
//! are theorems only under the exactness hypotheses, so the verification step
//! is what makes the solvers sound on arbitrary input.

use crate::algebra::AlgebraKind;
use crate::calculus::{
    cyclic_derivative, cyclic_divergence, diff_tensor_left, diff_tensor_right, divergence, flip,
    free_diff, grading_op, number_op2, symmetrization, theta_op, theta_voiculescu, xi_op,
};
use crate::error::{Error, Result};
use crate::ncpoly::{NCPoly, TensorPoly};
use crate::sampling::PolySampler;

/// Decides, for a single-letter polynomial over any `B`, whether `q` has a
/// cyclic antiderivative, by the rotation test `Θ[q] = 0` applied per
/// homogeneous component.
pub fn is_cyclically_exact(q: &NCPoly) -> Result<bool> {
    if q.n_vars() != 1 {
        return Err(Error::MultiLetterRejected);
    }
    for comp in q.homogeneous_components().values() {
        if !theta_op(comp)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides whether a tuple of scalar-coefficient polynomials is a cyclic
/// gradient, by the commutator-sum kernel test `θ(q₁,…,q_n) = 0`.
pub fn is_cyclically_exact_multi(qs: &[NCPoly]) -> Result<bool> {
    Ok(theta_voiculescu(qs)?.is_zero())
}

/// Divides each graded component by its grade: `Σ_{d≥1} (1/d)·h_d`, grading
/// by the count of `var`. The grade-0 part must be absent.
fn graded_inverse_number_op(h: &NCPoly, var: usize) -> NCPoly {
    let mut out = NCPoly::zero(h.kind(), h.n_vars());
    for (d, comp) in h.components_by_letter_count(var) {
        debug_assert!(d >= 1, "grade-0 part in number-operator inversion");
        out = out.add(&comp.scale(&crate::scalar::Scalar::one().div_int(d as i64)));
    }
    out
}

fn graded_inverse_total(h: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero(h.kind(), h.n_vars());
    for (d, comp) in h.homogeneous_components() {
        debug_assert!(d >= 1, "degree-0 part in number-operator inversion");
        out = out.add(&comp.scale(&crate::scalar::Scalar::one().div_int(d as i64)));
    }
    out
}

/// Constructs `p` with `δ[p] = q` for a single-letter polynomial, normalized
/// to zero constant term: `p := Σ_{d≥1} (1/d)·(X·q)_d`, verified before
/// return.
pub fn antiderivative_cyclic(q: &NCPoly) -> Result<NCPoly> {
    if q.n_vars() != 1 {
        return Err(Error::MultiLetterRejected);
    }
    let x = NCPoly::var(q.kind(), 1, 0);
    let p = graded_inverse_total(&x.mul(q));
    if &cyclic_derivative(&p, 0) != q {
        return Err(Error::NotExact(
            "cyclic antiderivative verification failed".into(),
        ));
    }
    Ok(p)
}

/// Multivariable scalar form: `p := Σ_{d≥1} (1/d)·(Σ_j X_j q_j)_d` with
/// `δ_j[p] = q_j` verified for every `j`.
pub fn antiderivative_cyclic_multi(qs: &[NCPoly]) -> Result<NCPoly> {
    if qs.is_empty() {
        return Err(Error::InvalidInput("empty polynomial tuple".into()));
    }
    let n = qs.len();
    for q in qs {
        if !q.kind().is_scalar() {
            return Err(Error::ScalarCoefficientsRequired);
        }
        if q.n_vars() != n {
            return Err(Error::InvalidInput(format!(
                "tuple of length {n} requires polynomials in {n} variables"
            )));
        }
    }
    let mut h = NCPoly::zero(AlgebraKind::Scalar, n);
    for (j, q) in qs.iter().enumerate() {
        h = h.add(&NCPoly::var(AlgebraKind::Scalar, n, j).mul(q));
    }
    let p = graded_inverse_total(&h);
    for (j, q) in qs.iter().enumerate() {
        if &cyclic_derivative(&p, j) != q {
            return Err(Error::NotExact(format!(
                "cyclic antiderivative verification failed at component {}",
                j + 1
            )));
        }
    }
    Ok(p)
}

/// Decides whether `ξ` is a free-difference-quotient gradient with respect to
/// the distinguished letter, by the coassociativity-symmetry test
/// `(∂⊗id)[ξ] = (id⊗∂)[ξ]`.
pub fn is_gradient_exact(xi: &TensorPoly, var: usize) -> bool {
    diff_tensor_left(xi, var) == diff_tensor_right(xi, var)
}

/// Constructs `g` with `∂[g] = ξ`, normalized to zero constant term:
/// `g := Σ_{d≥1} (1/d)·(∂*[ξ])_d` graded by the distinguished letter,
/// verified before return.
pub fn antiderivative_grad(xi: &TensorPoly, var: usize) -> Result<NCPoly> {
    let g = graded_inverse_number_op(&divergence(xi, var), var);
    if &free_diff(&g, var) != xi {
        return Err(Error::NotExact(
            "gradient antiderivative verification failed".into(),
        ));
    }
    Ok(g)
}

/// Kernel test for the cyclic gradient: `δᵢ[p] = 0` for every letter. In the
/// single-letter case the symmetrization test `C[p] = 0` is computed as well
/// and the two verdicts are asserted to agree.
pub fn kernel_membership(p: &NCPoly) -> bool {
    let in_kernel = (0..p.n_vars()).all(|var| cyclic_derivative(p, var).is_zero());
    if p.n_vars() == 1 {
        let c_zero = symmetrization(p, 0).is_zero();
        assert_eq!(
            in_kernel, c_zero,
            "cyclic-derivative and symmetrization kernel tests disagree"
        );
    }
    in_kernel
}

/// Exact decomposition of a kernel element as `b₀ + Σ_j [u_j, v_j]`.
#[derive(Clone, Debug)]
pub struct KernelDecomposition {
    /// Degree-zero part, an element of `B`.
    pub constant: NCPoly,
    /// Commutator pairs whose brackets sum to `p − constant`.
    pub pairs: Vec<(NCPoly, NCPoly)>,
}

impl KernelDecomposition {
    /// `constant + Σ [u, v]`.
    pub fn recombine(&self) -> NCPoly {
        let mut out = self.constant.clone();
        for (u, v) in &self.pairs {
            out = out.add(&u.commutator(v));
        }
        out
    }
}

/// Decomposes a single-letter kernel element into its degree-zero part plus
/// an explicit sum of commutators, per homogeneous component: a degree-`m`
/// word `b₀Xb₁⋯Xb_m` contributes the commutator families
/// `[b₀X, b₁X⋯Xb_m]`, `[b_jX, b_{j+1}X⋯Xb_m·b₀X⋯b_{j-1}X]` for
/// `1 ≤ j ≤ m−1` and `[b₀X⋯Xb_jX, b_{j+1}X⋯Xb_m]` for `0 ≤ j ≤ m−2`,
/// all scaled by `1/m`.
pub fn kernel_decompose(p: &NCPoly) -> Result<KernelDecomposition> {
    if p.n_vars() != 1 {
        return Err(Error::MultiLetterRejected);
    }
    if !kernel_membership(p) {
        return Err(Error::NotInKernel);
    }
    let kind = p.kind();
    let x = NCPoly::var(kind, 1, 0);
    let mut pairs = Vec::new();
    let mut constant = NCPoly::zero(kind, 1);
    for (m, comp) in p.homogeneous_components() {
        if m == 0 {
            constant = comp;
            continue;
        }
        for (w, s) in comp.terms() {
            let b = |i: usize| NCPoly::basis_const(kind, 1, w.basis_indices()[i] as usize);
            // product b_start X b_{start+1} X ⋯ X b_end
            let span = |start: usize, end: usize| {
                let mut acc = b(start);
                for i in (start + 1)..=end {
                    acc = acc.mul(&x).mul(&b(i));
                }
                acc
            };
            let weight = s.div_int(m as i64);
            // [b₀X, b₁X⋯Xb_m]
            pairs.push((b(0).mul(&x).scale(&weight), span(1, m)));
            // [b_jX, b_{j+1}X⋯Xb_m·b₀X⋯b_{j-1}X]
            for j in 1..m {
                let v = span(j + 1, m).mul(&span(0, j - 1)).mul(&x);
                pairs.push((b(j).mul(&x).scale(&weight), v));
            }
            // [b₀Xb₁⋯Xb_jX, b_{j+1}X⋯Xb_m]
            for j in 0..m.saturating_sub(1) {
                pairs.push((span(0, j).mul(&x).scale(&weight), span(j + 1, m)));
            }
        }
    }
    let decomposition = KernelDecomposition { constant, pairs };
    if &decomposition.recombine() != p {
        return Err(Error::NotInKernel);
    }
    Ok(decomposition)
}

/// The three equivalent exactness conditions for a single-letter `q`:
/// the rotation-kernel test `Θ[q] = 0`, the symmetry test `∂[q] = σ∂[q]`,
/// and the grading identity `δ[q·X] = L[q]`. Each is computed independently.
pub fn cyclic_exactness_routes(q: &NCPoly) -> Result<[bool; 3]> {
    if q.n_vars() != 1 {
        return Err(Error::MultiLetterRejected);
    }
    let theta_route = theta_op(q)?.is_zero();
    let u = free_diff(q, 0);
    let symmetry_route = flip(&u) == u;
    let grading_route = cyclic_derivative(&cyclic_divergence(q, 0), 0) == grading_op(q, 0);
    Ok([theta_route, symmetry_route, grading_route])
}

/// The three equivalent gradient-exactness conditions for `ξ`: the symmetry
/// test `(∂⊗id)[ξ] = (id⊗∂)[ξ]`, the eigen identity `∂[∂*[ξ]] = N₂[ξ]`, and
/// success of the verified constructive solver.
pub fn gradient_exactness_routes(xi: &TensorPoly, var: usize) -> [bool; 3] {
    let symmetry_route = diff_tensor_left(xi, var) == diff_tensor_right(xi, var);
    let eigen_route = free_diff(&divergence(xi, var), var) == number_op2(xi, var);
    let solver_route = antiderivative_grad(xi, var).is_ok();
    [symmetry_route, eigen_route, solver_route]
}

/// Configuration for the randomized exact-sequence audit.
#[derive(Clone, Copy, Debug)]
pub struct AuditConfig {
    pub kind: AlgebraKind,
    pub samples: usize,
    pub seed: u64,
    pub max_degree: usize,
    pub max_terms: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            kind: AlgebraKind::Matrix(2),
            samples: 100,
            seed: 1,
            max_degree: 5,
            max_terms: 4,
        }
    }
}

/// Outcome of the exact-sequence audit; `violations` must stay empty.
#[derive(Clone, Debug, Default)]
pub struct AuditReport {
    pub samples: usize,
    pub exact_inputs_solved: usize,
    pub non_exact_inputs: usize,
    pub violations: Vec<String>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Randomized audit of the exact sequence for the cyclic derivative on
/// single-letter polynomials: `Θ∘δ = 0`, the verified solver succeeds on
/// every `Θ`-kernel element, and the `ξ∘θ` rotation variant agrees with `Θ`
/// on every exactness verdict.
pub fn exact_sequence_audit(cfg: &AuditConfig) -> AuditReport {
    let mut sampler = PolySampler::new(cfg.seed, cfg.kind, 1, cfg.max_degree, cfg.max_terms);
    let mut report = AuditReport {
        samples: cfg.samples,
        ..AuditReport::default()
    };
    let x = NCPoly::var(cfg.kind, 1, 0);
    for trial in 0..cfg.samples {
        let p = sampler.random_poly();
        // Θ[δ[p]] = 0
        let q_exact = cyclic_derivative(&p, 0);
        match theta_op(&q_exact) {
            Ok(t) if t.is_zero() => {}
            _ => report
                .violations
                .push(format!("trial {trial}: Θ∘δ ≠ 0 on {p}")),
        }
        // the solver must reconstruct an antiderivative for the exact input
        match antiderivative_cyclic(&q_exact) {
            Ok(p2) => {
                if cyclic_derivative(&p2, 0) != q_exact {
                    report
                        .violations
                        .push(format!("trial {trial}: solver returned a non-antiderivative"));
                } else {
                    report.exact_inputs_solved += 1;
                }
            }
            Err(e) => report
                .violations
                .push(format!("trial {trial}: solver failed on exact input: {e}")),
        }
        // ξ∘θ agrees with Θ on exactness verdicts for a fresh random input
        let q = sampler.random_poly();
        let theta_verdict = theta_op(&q).map(|t| t.is_zero());
        let xi_theta = xi_op(&x.mul(&q).sub(&q.mul(&x))).map(|t| t.is_zero());
        match (theta_verdict, xi_theta) {
            (Ok(a), Ok(b)) if a == b => {
                if !a {
                    report.non_exact_inputs += 1;
                }
            }
            _ => report
                .violations
                .push(format!("trial {trial}: ξ∘θ and Θ verdicts disagree on {q}")),
        }
    }
    report
}
