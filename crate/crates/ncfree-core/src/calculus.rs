//! The differential and structural operators on `B⟨X₁,…,Xₙ⟩`:
//! free difference quotients `∂ᵢ`, the flip `σ`, multiplication `μ`, the
//! sandwich maps `#`, `#₁,₂`, `#₂,₃`, cyclic derivatives `δᵢ`, divergences
//! `∂*ᵢ` and `D*ᵢ`, number and grading operators `Nᵢ`, `Lᵢ`, the tensor lifts
//! `∂ᵢ⊗id`, `id⊗∂ᵢ` and `N₂`, the symmetrization `C`, the rotations `ρ`, `Θ`,
//! `ξ` and the commutator-sum map `θ`.

use crate::algebra::AlgebraKind;
use crate::error::{Error, Result};
use crate::ncpoly::{NCPoly, TensorPoly, TensorPoly3, Word};
use crate::scalar::Scalar;

/// Free difference quotient `∂ᵢ`: splits each word at every occurrence of
/// letter `var`, `b₀X⋯Xb_m ↦ Σ_t b₀X⋯b_{t-1} ⊗ b_tX⋯Xb_m`. Letters other
/// than `var` are treated as coefficients, `∂ᵢ[X_j] = δ_{ij}·1⊗1`.
pub fn free_diff(p: &NCPoly, var: usize) -> TensorPoly {
    assert!(var < p.n_vars(), "variable index out of range");
    let mut out = TensorPoly::zero(p.kind(), p.n_vars());
    for (w, s) in p.terms() {
        for (t, &l) in w.letters().iter().enumerate() {
            if l as usize == var {
                let left = w.segment(0, t);
                let right = w.segment(t + 1, w.degree());
                out.add_term((left, right), s.clone());
            }
        }
    }
    out
}

/// The flip `σ(a⊗c) = c⊗a`.
pub fn flip(u: &TensorPoly) -> TensorPoly {
    let mut out = TensorPoly::zero(u.kind(), u.n_vars());
    for ((lw, rw), s) in u.terms() {
        out.add_term((rw.clone(), lw.clone()), s.clone());
    }
    out
}

/// The multiplication map `μ(a⊗c) = ac`.
pub fn mul_map(u: &TensorPoly) -> NCPoly {
    let mut out = NCPoly::zero(u.kind(), u.n_vars());
    for ((lw, rw), s) in u.terms() {
        if let Some(w) = lw.concat(rw, u.kind()) {
            out.add_term(w, s.clone());
        }
    }
    out
}

/// The sandwich map `(a⊗c)#b = abc`.
pub fn sharp(u: &TensorPoly, q: &NCPoly) -> NCPoly {
    assert_eq!(u.kind(), q.kind(), "coefficient algebra mismatch");
    assert_eq!(u.n_vars(), q.n_vars(), "variable count mismatch");
    let mut out = NCPoly::zero(u.kind(), u.n_vars());
    for ((lw, rw), s) in u.terms() {
        for (qw, qs) in q.terms() {
            if let Some(w) = lw.concat(qw, u.kind()).and_then(|w| w.concat(rw, u.kind())) {
                out.add_term(w, s * qs);
            }
        }
    }
    out
}

/// First-gap insertion `(A⊗B⊗C)#₁,₂ q = AqB ⊗ C`.
pub fn sharp12(t: &TensorPoly3, q: &NCPoly) -> TensorPoly {
    assert_eq!(t.kind(), q.kind(), "coefficient algebra mismatch");
    assert_eq!(t.n_vars(), q.n_vars(), "variable count mismatch");
    let mut out = TensorPoly::zero(t.kind(), t.n_vars());
    for ((aw, bw, cw), s) in t.terms() {
        for (qw, qs) in q.terms() {
            if let Some(w) = aw.concat(qw, t.kind()).and_then(|w| w.concat(bw, t.kind())) {
                out.add_term((w, cw.clone()), s * qs);
            }
        }
    }
    out
}

/// Second-gap insertion `(A⊗B⊗C)#₂,₃ q = A ⊗ BqC`.
pub fn sharp23(t: &TensorPoly3, q: &NCPoly) -> TensorPoly {
    assert_eq!(t.kind(), q.kind(), "coefficient algebra mismatch");
    assert_eq!(t.n_vars(), q.n_vars(), "variable count mismatch");
    let mut out = TensorPoly::zero(t.kind(), t.n_vars());
    for ((aw, bw, cw), s) in t.terms() {
        for (qw, qs) in q.terms() {
            if let Some(w) = bw.concat(qw, t.kind()).and_then(|w| w.concat(cw, t.kind())) {
                out.add_term((aw.clone(), w), s * qs);
            }
        }
    }
    out
}

/// Cyclic derivative `δᵢ = μ∘σ∘∂ᵢ`.
pub fn cyclic_derivative(p: &NCPoly, var: usize) -> NCPoly {
    mul_map(&flip(&free_diff(p, var)))
}

/// Divergence `∂*ᵢ[u] = u # Xᵢ`.
pub fn divergence(u: &TensorPoly, var: usize) -> NCPoly {
    assert!(var < u.n_vars(), "variable index out of range");
    sharp(u, &NCPoly::var(u.kind(), u.n_vars(), var))
}

/// Cyclic divergence `D*ᵢ[p] = p·Xᵢ`.
pub fn cyclic_divergence(p: &NCPoly, var: usize) -> NCPoly {
    assert!(var < p.n_vars(), "variable index out of range");
    p.mul(&NCPoly::var(p.kind(), p.n_vars(), var))
}

/// Number operator `Nᵢ = ∂*ᵢ ∘ ∂ᵢ`; scales a word by its count of `Xᵢ`.
pub fn number_op(p: &NCPoly, var: usize) -> NCPoly {
    divergence(&free_diff(p, var), var)
}

/// Total number operator `Σᵢ Nᵢ`; scales a word by its total degree.
pub fn number_total(p: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero(p.kind(), p.n_vars());
    for var in 0..p.n_vars() {
        out = out.add(&number_op(p, var));
    }
    out
}

/// Grading operator `Lᵢ = Nᵢ + id`.
pub fn grading_op(p: &NCPoly, var: usize) -> NCPoly {
    number_op(p, var).add(p)
}

/// `∂ᵢ⊗id`: the difference quotient applied to the left tensor factor.
pub fn diff_tensor_left(u: &TensorPoly, var: usize) -> TensorPoly3 {
    assert!(var < u.n_vars(), "variable index out of range");
    let mut out = TensorPoly3::zero(u.kind(), u.n_vars());
    for ((lw, rw), s) in u.terms() {
        for (t, &l) in lw.letters().iter().enumerate() {
            if l as usize == var {
                out.add_term(
                    (lw.segment(0, t), lw.segment(t + 1, lw.degree()), rw.clone()),
                    s.clone(),
                );
            }
        }
    }
    out
}

/// `id⊗∂ᵢ`: the difference quotient applied to the right tensor factor.
pub fn diff_tensor_right(u: &TensorPoly, var: usize) -> TensorPoly3 {
    assert!(var < u.n_vars(), "variable index out of range");
    let mut out = TensorPoly3::zero(u.kind(), u.n_vars());
    for ((lw, rw), s) in u.terms() {
        for (t, &l) in rw.letters().iter().enumerate() {
            if l as usize == var {
                out.add_term(
                    (lw.clone(), rw.segment(0, t), rw.segment(t + 1, rw.degree())),
                    s.clone(),
                );
            }
        }
    }
    out
}

/// `∂*ᵢ⊗id = #₁,₂ Xᵢ`.
pub fn div_tensor_left(t: &TensorPoly3, var: usize) -> TensorPoly {
    assert!(var < t.n_vars(), "variable index out of range");
    sharp12(t, &NCPoly::var(t.kind(), t.n_vars(), var))
}

/// `id⊗∂*ᵢ = #₂,₃ Xᵢ`.
pub fn div_tensor_right(t: &TensorPoly3, var: usize) -> TensorPoly {
    assert!(var < t.n_vars(), "variable index out of range");
    sharp23(t, &NCPoly::var(t.kind(), t.n_vars(), var))
}

/// Tensor number operator `N₂ = Nᵢ⊗id + id⊗Nᵢ + id`, realized through the
/// tensor lifts; acts on a bidegree-`(n,m)` word pair by `n+m+1`.
pub fn number_op2(u: &TensorPoly, var: usize) -> TensorPoly {
    let left = div_tensor_left(&diff_tensor_left(u, var), var);
    let right = div_tensor_right(&diff_tensor_right(u, var), var);
    left.add(&right).add(u)
}

/// Symmetrization `C = (1⊗Xᵢ)#δᵢ[·] = δᵢ[·]·Xᵢ`; on a word it is the sum of
/// the cyclic rotations ending in `Xᵢ`.
pub fn symmetrization(p: &NCPoly, var: usize) -> NCPoly {
    cyclic_divergence(&cyclic_derivative(p, var), var)
}

/// Rotation `ρ[b₀Xb₁⋯Xb_n] = b₁Xb₂⋯Xb_nXb₀`; fixes degree-0 words.
/// Single-letter polynomials only.
pub fn rho(p: &NCPoly) -> Result<NCPoly> {
    if p.n_vars() != 1 {
        return Err(Error::MultiLetterRejected);
    }
    let mut out = NCPoly::zero(p.kind(), p.n_vars());
    for (w, s) in p.terms() {
        let n = w.degree();
        if n == 0 {
            out.add_term(w.clone(), s.clone());
            continue;
        }
        let mut basis = Vec::with_capacity(n + 1);
        basis.extend_from_slice(&w.basis_indices()[1..]);
        basis.push(w.basis_indices()[0]);
        out.add_term(Word::new(basis, w.letters().to_vec()), s.clone());
    }
    Ok(out)
}

/// `Θ = id − ρ`; its kernel is exactly the range of the cyclic derivative.
pub fn theta_op(p: &NCPoly) -> Result<NCPoly> {
    Ok(p.sub(&rho(p)?))
}

/// `ξ[b₀Xb₁⋯Xb_n] = Xb₁⋯Xb_nb₀`; fixes degree-0 words. Single-letter only.
pub fn xi_op(p: &NCPoly) -> Result<NCPoly> {
    if p.n_vars() != 1 {
        return Err(Error::MultiLetterRejected);
    }
    let kind = p.kind();
    let k = kind.k() as u16;
    let mut out = NCPoly::zero(kind, p.n_vars());
    for (w, s) in p.terms() {
        let n = w.degree();
        if n == 0 {
            out.add_term(w.clone(), s.clone());
            continue;
        }
        // Leading unit expands over the diagonal matrix units; the final
        // coefficient fuses b_n·b₀.
        let fused = crate::algebra::basis_mul(
            kind,
            w.basis_indices()[n] as usize,
            w.basis_indices()[0] as usize,
        );
        let Some(fused) = fused else { continue };
        for d in 0..k {
            let mut basis = Vec::with_capacity(n + 1);
            basis.push(d * k + d);
            basis.extend_from_slice(&w.basis_indices()[1..n]);
            basis.push(fused as u16);
            out.add_term(Word::new(basis, w.letters().to_vec()), s.clone());
        }
    }
    Ok(out)
}

/// Voiculescu's map `θ(p₁,…,p_n) = Σ_j [X_j, p_j]` for scalar coefficients.
pub fn theta_voiculescu(ps: &[NCPoly]) -> Result<NCPoly> {
    if ps.is_empty() {
        return Err(Error::InvalidInput("empty polynomial tuple".into()));
    }
    let n = ps.len();
    for p in ps {
        if !p.kind().is_scalar() {
            return Err(Error::ScalarCoefficientsRequired);
        }
        if p.n_vars() != n {
            return Err(Error::InvalidInput(format!(
                "tuple of length {n} requires polynomials in {n} variables"
            )));
        }
    }
    let mut out = NCPoly::zero(AlgebraKind::Scalar, n);
    for (j, p) in ps.iter().enumerate() {
        let xj = NCPoly::var(AlgebraKind::Scalar, n, j);
        out = out.add(&xj.commutator(p));
    }
    Ok(out)
}

/// Scales each word by the given per-word eigenvalue; shared helper for the
/// eigen-structure tests and the graded solvers.
pub fn scale_by_letter_count(p: &NCPoly, var: usize, shift: i64) -> NCPoly {
    let mut out = NCPoly::zero(p.kind(), p.n_vars());
    for (w, s) in p.terms() {
        let eig = w.letter_count(var) as i64 + shift;
        out.add_term(w.clone(), &Scalar::from_int(eig) * s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraKind;
    use crate::ncpoly::tensor_of;
    use crate::sampling::PolySampler;

    const M2: AlgebraKind = AlgebraKind::Matrix(2);
    const SC: AlgebraKind = AlgebraKind::Scalar;

    fn x(kind: AlgebraKind) -> NCPoly {
        NCPoly::var(kind, 1, 0)
    }

    fn e(i: usize, j: usize) -> NCPoly {
        NCPoly::basis_const(M2, 1, i * 2 + j)
    }

    fn one(kind: AlgebraKind) -> NCPoly {
        NCPoly::one(kind, 1)
    }

    /// Independent split-enumeration oracle for the free difference quotient,
    /// built directly on raw word data.
    fn free_diff_oracle(p: &NCPoly, var: usize) -> TensorPoly {
        let mut out = TensorPoly::zero(p.kind(), p.n_vars());
        for (w, s) in p.terms() {
            let b = w.basis_indices();
            let l = w.letters();
            for t in 0..l.len() {
                if l[t] as usize != var {
                    continue;
                }
                let left = Word::new(b[..=t].to_vec(), l[..t].to_vec());
                let right = Word::new(b[t + 1..].to_vec(), l[t + 1..].to_vec());
                out.add_term((left, right), s.clone());
            }
        }
        out
    }

    #[test]
    fn diff_of_single_letter() {
        assert_eq!(free_diff(&x(M2), 0), TensorPoly::unit(M2, 1));
        assert_eq!(free_diff(&x(SC), 0), TensorPoly::unit(SC, 1));
    }

    #[test]
    fn diff_other_letter_vanishes() {
        let x2 = NCPoly::var(SC, 2, 1);
        assert!(free_diff(&x2, 0).is_zero());
    }

    #[test]
    fn diff_splits_b0xb1xb2() {
        // ∂[b₀Xb₁Xb₂] = b₀⊗b₁Xb₂ + b₀Xb₁⊗b₂ with b₀=e11, b₁=e12, b₂=e22
        let b0 = e(0, 0);
        let b1 = e(0, 1);
        let b2 = e(1, 1);
        let p = b0.mul(&x(M2)).mul(&b1).mul(&x(M2)).mul(&b2);
        let expected = tensor_of(&b0, &b1.mul(&x(M2)).mul(&b2))
            .add(&tensor_of(&b0.mul(&x(M2)).mul(&b1), &b2));
        assert_eq!(free_diff(&p, 0), expected);
        assert_eq!(free_diff_oracle(&p, 0), expected);
    }

    #[test]
    fn diff_matches_oracle_on_random_inputs() {
        for kind in [SC, M2] {
            let mut sampler = PolySampler::new(11, kind, 3, 6, 5);
            for _ in 0..40 {
                let p = sampler.random_poly();
                for var in 0..3 {
                    assert_eq!(free_diff(&p, var), free_diff_oracle(&p, var));
                }
            }
        }
    }

    #[test]
    fn diff_constants_vanish() {
        assert!(free_diff(&e(0, 1), 0).is_zero());
    }

    #[test]
    fn flip_examples() {
        let u = tensor_of(&e(0, 0), &e(1, 1).mul(&x(M2)));
        assert_eq!(flip(&u), tensor_of(&e(1, 1).mul(&x(M2)), &e(0, 0)));
        let sym = tensor_of(&x(SC), &one(SC)).add(&tensor_of(&one(SC), &x(SC)));
        assert_eq!(flip(&sym), sym);
    }

    #[test]
    fn flip_is_involutive() {
        let mut sampler = PolySampler::new(5, M2, 2, 4, 4);
        for _ in 0..30 {
            let u = sampler.random_tensor();
            assert_eq!(flip(&flip(&u)), u);
        }
    }

    #[test]
    fn mul_map_examples() {
        assert_eq!(mul_map(&TensorPoly::unit(SC, 1)), one(SC));
        assert_eq!(mul_map(&tensor_of(&x(SC), &x(SC))), x(SC).mul(&x(SC)));
        // μ(b₀ ⊗ b₁Xb₂) = b₀b₁Xb₂
        let u = tensor_of(&e(0, 1), &e(1, 0).mul(&x(M2)).mul(&e(1, 1)));
        assert_eq!(mul_map(&u), e(0, 0).mul(&x(M2)).mul(&e(1, 1)));
    }

    #[test]
    fn sharp_examples() {
        let q = e(1, 0).mul(&x(M2));
        assert_eq!(sharp(&TensorPoly::unit(M2, 1), &q), q);
        // (b₀⊗b₂)#(b₁X) = b₀b₁Xb₂
        let u = tensor_of(&e(0, 1), &e(1, 1));
        let b1x = e(1, 0).mul(&x(M2));
        assert_eq!(sharp(&u, &b1x), e(0, 0).mul(&x(M2)).mul(&e(1, 1)));
    }

    #[test]
    fn sharp12_unit_insertion() {
        // (1⊗1⊗1)#₁,₂ X = X⊗1
        let one3 = {
            let mut t = TensorPoly3::zero(SC, 1);
            t.add_term(
                (Word::constant(0), Word::constant(0), Word::constant(0)),
                Scalar::one(),
            );
            t
        };
        assert_eq!(sharp12(&one3, &x(SC)), tensor_of(&x(SC), &one(SC)));
        assert_eq!(sharp23(&one3, &x(SC)), tensor_of(&one(SC), &x(SC)));
    }

    #[test]
    fn cyclic_derivative_examples() {
        let x2 = x(SC).mul(&x(SC));
        assert_eq!(cyclic_derivative(&x2, 0), x(SC).scale(&Scalar::from_int(2)));
        // δ[XbX] = bX + Xb
        let b = e(0, 1);
        let xbx = x(M2).mul(&b).mul(&x(M2));
        assert_eq!(
            cyclic_derivative(&xbx, 0),
            b.mul(&x(M2)).add(&x(M2).mul(&b))
        );
        assert!(cyclic_derivative(&e(1, 0), 0).is_zero());
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(divergence(&TensorPoly::unit(SC, 1), 0), x(SC));
        assert_eq!(
            divergence(&tensor_of(&x(SC), &one(SC)), 0),
            x(SC).mul(&x(SC))
        );
        // ∂*[b₀⊗b₁] = b₀Xb₁
        let u = tensor_of(&e(0, 0), &e(1, 1));
        assert_eq!(divergence(&u, 0), e(0, 0).mul(&x(M2)).mul(&e(1, 1)));
    }

    #[test]
    fn cyclic_divergence_examples() {
        assert_eq!(cyclic_divergence(&one(SC), 0), x(SC));
        assert_eq!(cyclic_divergence(&x(SC), 0), x(SC).mul(&x(SC)));
        let bx = e(0, 0).mul(&x(M2));
        assert_eq!(cyclic_divergence(&bx, 0), bx.mul(&x(M2)));
    }

    #[test]
    fn number_operator_eigenvalues() {
        // N on c₀Xc₁Xc₂ gives 2·(same word)
        let p = e(0, 0).mul(&x(M2)).mul(&e(0, 1)).mul(&x(M2)).mul(&e(1, 1));
        assert_eq!(number_op(&p, 0), p.scale(&Scalar::from_int(2)));
        assert!(number_op(&one(M2), 0).is_zero());
        // L[X³] = 4X³
        let x3 = x(SC).mul(&x(SC)).mul(&x(SC));
        assert_eq!(grading_op(&x3, 0), x3.scale(&Scalar::from_int(4)));
    }

    #[test]
    fn number_operator_matches_letter_count_route() {
        for kind in [SC, M2] {
            let mut sampler = PolySampler::new(23, kind, 3, 5, 5);
            for _ in 0..30 {
                let p = sampler.random_poly();
                for var in 0..3 {
                    assert_eq!(number_op(&p, var), scale_by_letter_count(&p, var, 0));
                }
            }
        }
    }

    #[test]
    fn tensor_diff_examples() {
        let u = tensor_of(&x(SC), &one(SC));
        // (∂⊗id)[X⊗1] = 1⊗1⊗1, (id⊗∂)[X⊗1] = 0
        let mut expected = TensorPoly3::zero(SC, 1);
        expected.add_term(
            (Word::constant(0), Word::constant(0), Word::constant(0)),
            Scalar::one(),
        );
        assert_eq!(diff_tensor_left(&u, 0), expected);
        assert!(diff_tensor_right(&u, 0).is_zero());
    }

    #[test]
    fn number_op2_eigenvalues() {
        // N₂[Xⁿ ⊗ Xᵐ] = (n+m+1)·same
        for (n, m) in [(0usize, 0usize), (1, 0), (2, 3), (1, 1)] {
            let mut pn = one(SC);
            for _ in 0..n {
                pn = pn.mul(&x(SC));
            }
            let mut pm = one(SC);
            for _ in 0..m {
                pm = pm.mul(&x(SC));
            }
            let u = tensor_of(&pn, &pm);
            assert_eq!(
                number_op2(&u, 0),
                u.scale(&Scalar::from_int((n + m + 1) as i64))
            );
        }
    }

    #[test]
    fn number_op2_matches_componentwise_route() {
        // N⊗id + id⊗N + id computed slot-by-slot must agree with the
        // sharp-based realization.
        let mut sampler = PolySampler::new(37, M2, 2, 4, 4);
        for _ in 0..25 {
            let u = sampler.random_tensor();
            let mut slotwise = TensorPoly::zero(M2, 2);
            for ((lw, rw), s) in u.terms() {
                let eig = (lw.letter_count(0) + rw.letter_count(0) + 1) as i64;
                slotwise.add_term((lw.clone(), rw.clone()), &Scalar::from_int(eig) * s);
            }
            assert_eq!(number_op2(&u, 0), slotwise);
        }
    }

    /// The explicit cyclic-rotation action of the symmetrization operator,
    /// implemented independently from the word data.
    fn symmetrization_oracle(p: &NCPoly) -> NCPoly {
        let kind = p.kind();
        let mut out = NCPoly::zero(kind, p.n_vars());
        for (w, s) in p.terms() {
            let n = w.degree();
            let b = w.basis_indices();
            for i in 0..n {
                // b_{i+1}X⋯Xb_n·b₀X⋯Xb_i·X
                let fused = match crate::algebra::basis_mul(kind, b[n] as usize, b[0] as usize) {
                    Some(f) => f as u16,
                    None => continue,
                };
                let mut basis: Vec<u16> = Vec::with_capacity(n + 1);
                basis.extend_from_slice(&b[i + 1..n]);
                basis.push(fused);
                basis.extend_from_slice(&b[1..=i]);
                for d in 0..kind.k() as u16 {
                    let mut full = basis.clone();
                    full.push(d * kind.k() as u16 + d);
                    out.add_term(Word::new(full, vec![0; n]), s.clone());
                }
            }
        }
        out
    }

    #[test]
    fn symmetrization_examples() {
        // C[b₀Xb₁Xb₂] = b₁Xb₂b₀X + b₂b₀Xb₁X
        let (b0, b1, b2) = (e(0, 0), e(0, 1), e(1, 1));
        let p = b0.mul(&x(M2)).mul(&b1).mul(&x(M2)).mul(&b2);
        let expected = b1
            .mul(&x(M2))
            .mul(&b2)
            .mul(&b0)
            .mul(&x(M2))
            .add(&b2.mul(&b0).mul(&x(M2)).mul(&b1).mul(&x(M2)));
        assert_eq!(symmetrization(&p, 0), expected);
        assert_eq!(symmetrization_oracle(&p), expected);
        assert!(symmetrization(&e(0, 1), 0).is_zero());
        let x2 = x(SC).mul(&x(SC));
        assert_eq!(symmetrization(&x2, 0), x2.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn symmetrization_matches_cyclic_sum_oracle() {
        for kind in [SC, M2] {
            let mut sampler = PolySampler::new(41, kind, 1, 6, 5);
            for _ in 0..40 {
                let p = sampler.random_poly();
                assert_eq!(symmetrization(&p, 0), symmetrization_oracle(&p));
            }
        }
    }

    #[test]
    fn rotation_operators() {
        // ρ[b₀Xb₁Xb₂] = b₁Xb₂Xb₀
        let (b0, b1, b2) = (e(0, 0), e(0, 1), e(1, 1));
        let p = b0.mul(&x(M2)).mul(&b1).mul(&x(M2)).mul(&b2);
        assert_eq!(
            rho(&p).unwrap(),
            b1.mul(&x(M2)).mul(&b2).mul(&x(M2)).mul(&b0)
        );
        // Θ[bX] = bX − Xb
        let bx = e(0, 0).mul(&x(M2));
        assert_eq!(
            theta_op(&bx).unwrap(),
            bx.sub(&x(M2).mul(&e(0, 0)))
        );
        // Θ[Xᵐ] = 0
        let x3 = x(SC).mul(&x(SC)).mul(&x(SC));
        assert!(theta_op(&x3).unwrap().is_zero());
        // ρ, ξ fix constants
        assert_eq!(rho(&e(0, 1)).unwrap(), e(0, 1));
        assert_eq!(xi_op(&e(0, 1)).unwrap(), e(0, 1));
    }

    #[test]
    fn xi_moves_leading_coefficient() {
        // ξ[b₀Xb₁] = Xb₁b₀
        let (b0, b1) = (e(0, 1), e(1, 0));
        let p = b0.mul(&x(M2)).mul(&b1);
        assert_eq!(xi_op(&p).unwrap(), x(M2).mul(&b1).mul(&b0));
    }

    #[test]
    fn rotations_reject_multi_letter() {
        let p = NCPoly::var(SC, 2, 0);
        assert!(matches!(rho(&p), Err(Error::MultiLetterRejected)));
        assert!(matches!(xi_op(&p), Err(Error::MultiLetterRejected)));
    }

    #[test]
    fn theta_voiculescu_examples() {
        let p1 = NCPoly::var(SC, 1, 0);
        assert!(theta_voiculescu(&[p1]).unwrap().is_zero());
        // θ(X₂, X₁) = [X₁,X₂] + [X₂,X₁] = 0
        let x1 = NCPoly::var(SC, 2, 0);
        let x2 = NCPoly::var(SC, 2, 1);
        assert!(theta_voiculescu(&[x2.clone(), x1.clone()]).unwrap().is_zero());
        let one2 = NCPoly::one(SC, 2);
        let zero2 = NCPoly::zero(SC, 2);
        assert!(theta_voiculescu(&[one2, zero2]).unwrap().is_zero());
        // non-scalar coefficients rejected
        let bp = NCPoly::var(M2, 1, 0);
        assert!(matches!(
            theta_voiculescu(&[bp]),
            Err(Error::ScalarCoefficientsRequired)
        ));
    }

    // --- operator identities on random polynomials ---

    fn samplers() -> Vec<PolySampler> {
        vec![
            PolySampler::new(101, SC, 3, 6, 4),
            PolySampler::new(102, M2, 3, 6, 4),
            PolySampler::new(103, SC, 1, 6, 4),
            PolySampler::new(104, M2, 1, 6, 4),
        ]
    }

    #[test]
    fn derivation_rule() {
        for mut sampler in samplers() {
            for _ in 0..20 {
                let p = sampler.random_poly();
                let q = sampler.random_poly();
                for var in 0..sampler.n_vars() {
                    let lhs = free_diff(&p.mul(&q), var);
                    let rhs = free_diff(&q, var)
                        .act_left(&p)
                        .add(&free_diff(&p, var).act_right(&q));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn coassociativity() {
        for mut sampler in samplers() {
            for _ in 0..20 {
                let p = sampler.random_poly();
                for var in 0..sampler.n_vars() {
                    let u = free_diff(&p, var);
                    assert_eq!(diff_tensor_left(&u, var), diff_tensor_right(&u, var));
                }
            }
        }
    }

    #[test]
    fn product_rule_for_cyclic_derivative() {
        for mut sampler in samplers() {
            for _ in 0..20 {
                let p = sampler.random_poly();
                let q = sampler.random_poly();
                for var in 0..sampler.n_vars() {
                    let lhs = cyclic_derivative(&p.mul(&q), var);
                    let rhs = sharp(&flip(&free_diff(&p, var)), &q)
                        .add(&sharp(&flip(&free_diff(&q, var)), &p));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn divergence_identity() {
        // ∂ᵢ∘∂*ⱼ = (∂*ⱼ⊗id)∘(id⊗∂ᵢ) + (id⊗∂*ⱼ)∘(∂ᵢ⊗id) + δᵢⱼ·id
        for mut sampler in samplers() {
            for _ in 0..15 {
                let u = sampler.random_tensor();
                for i in 0..sampler.n_vars() {
                    for j in 0..sampler.n_vars() {
                        let lhs = free_diff(&divergence(&u, j), i);
                        let mut rhs = sharp12(&diff_tensor_right(&u, i), &NCPoly::var(u.kind(), u.n_vars(), j))
                            .add(&sharp23(&diff_tensor_left(&u, i), &NCPoly::var(u.kind(), u.n_vars(), j)));
                        if i == j {
                            rhs = rhs.add(&u);
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn cyclic_divergence_identity() {
        // δᵢ∘D*ⱼ = ∂*ⱼ∘σ∘∂ᵢ + δᵢⱼ·id
        for mut sampler in samplers() {
            for _ in 0..15 {
                let p = sampler.random_poly();
                for i in 0..sampler.n_vars() {
                    for j in 0..sampler.n_vars() {
                        let lhs = cyclic_derivative(&cyclic_divergence(&p, j), i);
                        let mut rhs = divergence(&flip(&free_diff(&p, i)), j);
                        if i == j {
                            rhs = rhs.add(&p);
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn number_operator_is_derivation() {
        for mut sampler in samplers() {
            for _ in 0..15 {
                let p = sampler.random_poly();
                let q = sampler.random_poly();
                for var in 0..sampler.n_vars() {
                    let lhs = number_op(&p.mul(&q), var);
                    let rhs = number_op(&p, var)
                        .mul(&q)
                        .add(&p.mul(&number_op(&q, var)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn diff_number_exchange() {
        // ∂∘N = (N⊗id + id⊗N + id)∘∂ = N₂∘∂
        for mut sampler in samplers() {
            for _ in 0..15 {
                let p = sampler.random_poly();
                for var in 0..sampler.n_vars() {
                    let lhs = free_diff(&number_op(&p, var), var);
                    let rhs = number_op2(&free_diff(&p, var), var);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn grading_operator_is_coderivation() {
        // ∂∘L = (L⊗id + id⊗L)∘∂
        for mut sampler in samplers() {
            for _ in 0..15 {
                let p = sampler.random_poly();
                for var in 0..sampler.n_vars() {
                    let lhs = free_diff(&grading_op(&p, var), var);
                    let u = free_diff(&p, var);
                    let l_left = div_tensor_left(&diff_tensor_left(&u, var), var).add(&u);
                    let l_right = div_tensor_right(&diff_tensor_right(&u, var), var).add(&u);
                    assert_eq!(lhs, l_left.add(&l_right));
                }
            }
        }
    }

    #[test]
    fn cyclic_derivative_number_exchange() {
        // δ∘N_total = (N_total + id)∘δ per homogeneous component
        for mut sampler in samplers() {
            for _ in 0..15 {
                let p = sampler.random_poly();
                for var in 0..sampler.n_vars() {
                    let lhs = cyclic_derivative(&number_total(&p), var);
                    let d = cyclic_derivative(&p, var);
                    let rhs = number_total(&d).add(&d);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn theta_kills_cyclic_gradients_and_c_kills_kernel() {
        for kind in [SC, M2] {
            let mut sampler = PolySampler::new(55, kind, 1, 6, 4);
            for _ in 0..25 {
                let p = sampler.random_poly();
                // Θ∘δ = 0
                assert!(theta_op(&cyclic_derivative(&p, 0)).unwrap().is_zero());
                // C kills constants and commutators
                let q = sampler.random_poly();
                let comm = p.commutator(&q);
                assert!(symmetrization(&comm, 0).is_zero());
                let b = NCPoly::basis_const(kind, 1, 0);
                assert!(symmetrization(&b, 0).is_zero());
            }
        }
    }
}
