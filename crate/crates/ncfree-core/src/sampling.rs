//! Deterministic random generators for polynomials, tensors and matrices,
//! used by the randomized audits and the test suites. Everything is seeded,
//! so identical configurations reproduce identical draws.

use crate::algebra::AlgebraKind;
use crate::ncpoly::{tensor_of, NCPoly, TensorPoly, Word};
use crate::scalar::Scalar;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub struct PolySampler {
    rng: StdRng,
    kind: AlgebraKind,
    n_vars: usize,
    max_degree: usize,
    max_terms: usize,
}

impl PolySampler {
    pub fn new(seed: u64, kind: AlgebraKind, n_vars: usize, max_degree: usize, max_terms: usize) -> Self {
        PolySampler {
            rng: StdRng::seed_from_u64(seed),
            kind,
            n_vars,
            max_degree,
            max_terms,
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Small nonzero Gaussian rational.
    pub fn random_scalar(&mut self) -> Scalar {
        loop {
            let re = self.rng.gen_range(-3i64..=3);
            let den = self.rng.gen_range(1i64..=3);
            let im = if self.rng.gen_bool(0.3) {
                self.rng.gen_range(-2i64..=2)
            } else {
                0
            };
            let s = &Scalar::from_ratio(re, den) + &(&Scalar::i() * &Scalar::from_int(im));
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Uniform random basis word of degree `0..=max_degree`.
    pub fn random_word(&mut self) -> (Word, usize) {
        let d = self.rng.gen_range(0..=self.max_degree);
        (self.random_word_of_degree(d), d)
    }

    pub fn random_word_of_degree(&mut self, degree: usize) -> Word {
        let dim = self.kind.dim() as u16;
        let basis = (0..=degree).map(|_| self.rng.gen_range(0..dim)).collect();
        let letters = (0..degree)
            .map(|_| self.rng.gen_range(0..self.n_vars as u16))
            .collect();
        Word::new(basis, letters)
    }

    pub fn random_poly(&mut self) -> NCPoly {
        let n_terms = self.rng.gen_range(1..=self.max_terms);
        let mut p = NCPoly::zero(self.kind, self.n_vars);
        for _ in 0..n_terms {
            let (w, _) = self.random_word();
            p.add_term(w, self.random_scalar());
        }
        p
    }

    /// Random polynomial with zero constant term.
    pub fn random_poly_zero_const(&mut self) -> NCPoly {
        let n_terms = self.rng.gen_range(1..=self.max_terms);
        let mut p = NCPoly::zero(self.kind, self.n_vars);
        for _ in 0..n_terms {
            let d = self.rng.gen_range(1..=self.max_degree.max(1));
            let w = self.random_word_of_degree(d);
            p.add_term(w, self.random_scalar());
        }
        p
    }

    pub fn random_homogeneous_poly(&mut self, degree: usize) -> NCPoly {
        let n_terms = self.rng.gen_range(1..=self.max_terms);
        let mut p = NCPoly::zero(self.kind, self.n_vars);
        for _ in 0..n_terms {
            let w = self.random_word_of_degree(degree);
            p.add_term(w, self.random_scalar());
        }
        p
    }

    pub fn random_tensor(&mut self) -> TensorPoly {
        let n_terms = self.rng.gen_range(1..=self.max_terms);
        let mut out = TensorPoly::zero(self.kind, self.n_vars);
        for _ in 0..n_terms {
            let (lw, _) = self.random_word();
            let (rw, _) = self.random_word();
            let mut t = TensorPoly::zero(self.kind, self.n_vars);
            t.add_term((lw, rw), self.random_scalar());
            out = out.add(&t);
        }
        out
    }

    /// `Σ pᵢ ⊗ qᵢ` built from random polynomials (useful when the tensor
    /// should have algebraic structure rather than independent words).
    pub fn random_tensor_of_polys(&mut self) -> TensorPoly {
        let p = self.random_poly();
        let q = self.random_poly();
        tensor_of(&p, &q)
    }

    pub fn gen_range_usize(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn gen_bool(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }
}

/// Seeded sampler for complex matrices and matrix points.
pub struct MatrixSampler {
    rng: StdRng,
}

impl MatrixSampler {
    pub fn new(seed: u64) -> Self {
        MatrixSampler {
            rng: StdRng::seed_from_u64(seed),
        }
    }

    /// Random complex matrix scaled to Frobenius norm ≤ `scale` (so the
    /// operator norm is bounded by `scale` as well).
    pub fn random_matrix(&mut self, rows: usize, cols: usize, scale: f64) -> DMatrix<Complex64> {
        let mut m = DMatrix::from_fn(rows, cols, |_, _| {
            Complex64::new(self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-1.0..1.0))
        });
        let norm = m.norm();
        if norm > 0.0 {
            m *= Complex64::new(scale / norm, 0.0);
        }
        m
    }

    /// Random invertible matrix: identity plus a contraction.
    pub fn random_invertible(&mut self, n: usize) -> DMatrix<Complex64> {
        let mut m = self.random_matrix(n, n, 0.8);
        for i in 0..n {
            m[(i, i)] += Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn gen_range_usize(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }
}
