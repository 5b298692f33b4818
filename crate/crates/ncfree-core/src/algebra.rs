//! The coefficient algebra `B`: either the scalars ℂ or a matrix algebra
//! `M_k(ℂ)` over the exact field, together with its canonical basis of matrix
//! units and the dual basis of functionals `φ₁, …, φ_{k²}`.
//!
//! The dual basis is fixed once and for all: `φ₁(X) = Tr_k(X·k⁻¹I_k)` and
//! `φ_j(X) = Tr_k(X·α_jᵗ)` for `j ≥ 2`, where the `α_j` are the
//! Hilbert–Schmidt-normalized generalized Gell-Mann matrices in the order
//! symmetric pairs, antisymmetric pairs, diagonals. Normalizers like `1/√2`
//! are kept exact by the radical scalar field.

use crate::error::Error;
use crate::scalar::{Rat, Scalar};
use num_bigint::BigInt;

/// Which coefficient algebra a polynomial lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Scalar,
    Matrix(usize),
}

impl AlgebraKind {
    /// Matrix size: 1 for scalars.
    pub fn k(&self) -> usize {
        match self {
            AlgebraKind::Scalar => 1,
            AlgebraKind::Matrix(k) => *k,
        }
    }

    /// Number of basis elements of `B`.
    pub fn dim(&self) -> usize {
        self.k() * self.k()
    }

    pub fn is_scalar(&self) -> bool {
        matches!(self, AlgebraKind::Scalar)
    }
}

/// Product of two basis elements, as a basis index.
///
/// Matrix units multiply by `e_{ij}·e_{lm} = δ_{jl}·e_{im}`, so the result is
/// either another basis element or zero (`None`).
pub fn basis_mul(kind: AlgebraKind, a: usize, b: usize) -> Option<usize> {
    match kind {
        AlgebraKind::Scalar => Some(0),
        AlgebraKind::Matrix(k) => {
            let (i, j) = (a / k, a % k);
            let (l, m) = (b / k, b % k);
            (j == l).then_some(i * k + m)
        }
    }
}

/// Element of `B` with exact entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffElem {
    k: usize,
    entries: Vec<Scalar>,
}

impl CoeffElem {
    pub fn zero(k: usize) -> Self {
        CoeffElem {
            k,
            entries: vec![Scalar::zero(); k * k],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut e = CoeffElem::zero(k);
        for i in 0..k {
            e.entries[i * k + i] = Scalar::one();
        }
        e
    }

    /// The matrix unit with the given basis index (`e_{ij}` at index `i·k+j`).
    pub fn basis_elem(k: usize, index: usize) -> Self {
        assert!(index < k * k, "basis index out of range");
        let mut e = CoeffElem::zero(k);
        e.entries[index] = Scalar::one();
        e
    }

    pub fn from_entries(k: usize, entries: Vec<Scalar>) -> Result<Self, Error> {
        if entries.len() != k * k {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {k}×{k} coefficient, got {}",
                k * k,
                entries.len()
            )));
        }
        Ok(CoeffElem { k, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.k + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> CoeffElem {
        CoeffElem {
            k: self.k,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn add(&self, other: &CoeffElem) -> CoeffElem {
        assert_eq!(self.k, other.k, "coefficient dimension mismatch");
        CoeffElem {
            k: self.k,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Exact matrix product in `B`.
    ///
    /// Panics if the dimensions differ.
    pub fn mul(&self, other: &CoeffElem) -> CoeffElem {
        assert_eq!(self.k, other.k, "coefficient dimension mismatch");
        let k = self.k;
        let mut out = CoeffElem::zero(k);
        for i in 0..k {
            for l in 0..k {
                let a = self.entry(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let prod = a * other.entry(l, j);
                    out.entries[i * k + j] = &out.entries[i * k + j] + &prod;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.k {
            t += self.entry(i, i);
        }
        t
    }
}

/// Linear functional on `B`, stored as its values on the matrix-unit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    values_on_basis: Vec<Scalar>,
}

impl Functional {
    pub fn new(values_on_basis: Vec<Scalar>) -> Self {
        Functional { values_on_basis }
    }

    pub fn values_on_basis(&self) -> &[Scalar] {
        &self.values_on_basis
    }

    pub fn value_on_basis(&self, index: usize) -> &Scalar {
        &self.values_on_basis[index]
    }

    /// Applies the functional to an element of `B`.
    pub fn apply(&self, a: &CoeffElem) -> Scalar {
        assert_eq!(
            self.values_on_basis.len(),
            a.k() * a.k(),
            "functional and element over different algebras"
        );
        let mut out = Scalar::zero();
        for (entry, value) in a.entries().iter().zip(&self.values_on_basis) {
            if !entry.is_zero() {
                out += &(entry * value);
            }
        }
        out
    }
}

fn rat(n: i64, d: i64) -> Scalar {
    Scalar::from_rat(Rat::new(BigInt::from(n), BigInt::from(d)))
}

/// The Hilbert–Schmidt-normalized traceless matrices `α_2, …, α_{k²}` in the
/// fixed order: symmetric pairs `(e_{ij}+e_{ji})/√2` for `i < j` (row-major),
/// then antisymmetric pairs `(-i·e_{ij}+i·e_{ji})/√2`, then diagonals
/// `(e_{11}+…+e_{ll} − l·e_{l+1,l+1})/√(l(l+1))`.
pub fn gell_mann_traceless(k: usize) -> Vec<CoeffElem> {
    let mut out = Vec::with_capacity(k * k - 1);
    let inv_sqrt2 = Scalar::sqrt_int(2).div_int(2);
    for i in 0..k {
        for j in (i + 1)..k {
            let mut m = CoeffElem::zero(k);
            m.entries[i * k + j] = inv_sqrt2.clone();
            m.entries[j * k + i] = inv_sqrt2.clone();
            out.push(m);
        }
    }
    let i_unit = Scalar::i();
    for i in 0..k {
        for j in (i + 1)..k {
            let mut m = CoeffElem::zero(k);
            m.entries[i * k + j] = -(&i_unit * &inv_sqrt2);
            m.entries[j * k + i] = &i_unit * &inv_sqrt2;
            out.push(m);
        }
    }
    for l in 1..k {
        let norm = Scalar::sqrt_int((l * (l + 1)) as u64)
            .inv()
            .expect("nonzero normalizer");
        let mut m = CoeffElem::zero(k);
        for d in 0..l {
            m.entries[d * k + d] = norm.clone();
        }
        m.entries[l * k + l] = &norm * &Scalar::from_int(-(l as i64));
        out.push(m);
    }
    out
}

/// The dual basis `φ₁, …, φ_{k²}` of Appendix-style functionals.
///
/// `φ_j(X) = Tr_k(X·α_jᵗ)` means the value of `φ_j` on the matrix unit
/// `e_{ab}` is exactly the `(a,b)` entry of `α_j`, so each functional stores
/// its generating matrix's entry vector. Deterministic pure function.
pub fn dual_basis(k: usize) -> Vec<Functional> {
    assert!(k >= 1, "k must be positive");
    if k == 1 {
        return vec![Functional::new(vec![Scalar::one()])];
    }
    let mut out = Vec::with_capacity(k * k);
    let mut phi1 = vec![Scalar::zero(); k * k];
    for i in 0..k {
        phi1[i * k + i] = rat(1, k as i64);
    }
    out.push(Functional::new(phi1));
    for alpha in gell_mann_traceless(k) {
        out.push(Functional::new(alpha.entries().to_vec()));
    }
    out
}

/// The coefficient algebra bundle: kind, matrix-unit basis and dual basis.
#[derive(Clone, Debug)]
pub struct CoeffAlgebra {
    pub kind: AlgebraKind,
    pub basis: Vec<CoeffElem>,
    pub dual_basis: Vec<Functional>,
}

impl CoeffAlgebra {
    pub fn new(kind: AlgebraKind) -> Self {
        let k = kind.k();
        let basis = (0..k * k).map(|i| CoeffElem::basis_elem(k, i)).collect();
        CoeffAlgebra {
            kind,
            basis,
            dual_basis: dual_basis(k),
        }
    }

    pub fn scalar() -> Self {
        CoeffAlgebra::new(AlgebraKind::Scalar)
    }

    pub fn matrix(k: usize) -> Self {
        assert!(k >= 1, "k must be positive");
        CoeffAlgebra::new(AlgebraKind::Matrix(k))
    }

    pub fn k(&self) -> usize {
        self.kind.k()
    }
}
