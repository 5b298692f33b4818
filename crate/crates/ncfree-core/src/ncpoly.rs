//! Normal-form arithmetic in `B⟨X₁,…,Xₙ⟩` and its tensor square and cube.
//!
//! A word is an alternating sequence `b₀ X_{l₁} b₁ ⋯ X_{l_m} b_m` of basis
//! coefficients of `B` and letters; a polynomial maps words to nonzero exact
//! scalars. Every general coefficient is expanded over the matrix-unit basis,
//! so equality is term-by-term and word concatenation fuses adjacent
//! coefficients through `e_{ij}·e_{lm} = δ_{jl}e_{im}`.

use crate::algebra::{basis_mul, AlgebraKind, CoeffElem};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Alternating word: `basis_indices.len() == letters.len() + 1`.
/// Letters are 0-based variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    basis_indices: Vec<u16>,
    letters: Vec<u16>,
}

impl Word {
    pub fn new(basis_indices: Vec<u16>, letters: Vec<u16>) -> Self {
        assert_eq!(
            basis_indices.len(),
            letters.len() + 1,
            "malformed word: need one more coefficient than letters"
        );
        Word {
            basis_indices,
            letters,
        }
    }

    /// Pure coefficient word (degree 0).
    pub fn constant(basis_index: u16) -> Self {
        Word {
            basis_indices: vec![basis_index],
            letters: vec![],
        }
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn basis_indices(&self) -> &[u16] {
        &self.basis_indices
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    /// Number of occurrences of the given letter.
    pub fn letter_count(&self, var: usize) -> usize {
        self.letters.iter().filter(|&&l| l as usize == var).count()
    }

    /// Concatenation with coefficient fusion; `None` when the fused
    /// matrix-unit product vanishes.
    pub fn concat(&self, other: &Word, kind: AlgebraKind) -> Option<Word> {
        let fused = basis_mul(
            kind,
            *self.basis_indices.last().unwrap() as usize,
            other.basis_indices[0] as usize,
        )?;
        let mut basis_indices =
            Vec::with_capacity(self.basis_indices.len() + other.basis_indices.len() - 1);
        basis_indices.extend_from_slice(&self.basis_indices[..self.basis_indices.len() - 1]);
        basis_indices.push(fused as u16);
        basis_indices.extend_from_slice(&other.basis_indices[1..]);
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Some(Word {
            basis_indices,
            letters,
        })
    }

    /// Sub-word spanning letters `range` (coefficients at the boundary kept).
    pub fn segment(&self, start: usize, end: usize) -> Word {
        Word {
            basis_indices: self.basis_indices[start..=end].to_vec(),
            letters: self.letters[start..end].to_vec(),
        }
    }
}

impl Ord for Word {
    /// Degree, then letters lexicographic, then basis indices lexicographic.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.letters.cmp(&other.letters))
            .then_with(|| self.basis_indices.cmp(&other.basis_indices))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Word with general (not yet expanded) coefficients, input to `normalize`.
#[derive(Clone, Debug)]
pub struct RawWord {
    pub coefficients: Vec<CoeffElem>,
    pub letters: Vec<u16>,
}

/// Polynomial in `B⟨X₁,…,Xₙ⟩` in canonical form: unique words, nonzero exact
/// scalars, deterministic degree-lexicographic iteration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCPoly {
    kind: AlgebraKind,
    n_vars: usize,
    terms: BTreeMap<Word, Scalar>,
}

fn check_compatible(a: (AlgebraKind, usize), b: (AlgebraKind, usize)) {
    assert_eq!(a.0, b.0, "coefficient algebra mismatch");
    assert_eq!(a.1, b.1, "variable count mismatch");
}

impl NCPoly {
    pub fn zero(kind: AlgebraKind, n_vars: usize) -> Self {
        NCPoly {
            kind,
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `1_B` (a sum of diagonal matrix units for `Matrix(k)`).
    pub fn one(kind: AlgebraKind, n_vars: usize) -> Self {
        let k = kind.k();
        let mut p = NCPoly::zero(kind, n_vars);
        for i in 0..k {
            p.add_term(Word::constant((i * k + i) as u16), Scalar::one());
        }
        p
    }

    /// The variable `X_var` with unit coefficients on both sides.
    pub fn var(kind: AlgebraKind, n_vars: usize, var: usize) -> Self {
        assert!(var < n_vars, "variable index out of range");
        let k = kind.k();
        let mut p = NCPoly::zero(kind, n_vars);
        for i in 0..k {
            for j in 0..k {
                p.add_term(
                    Word::new(vec![(i * k + i) as u16, (j * k + j) as u16], vec![var as u16]),
                    Scalar::one(),
                );
            }
        }
        p
    }

    /// Constant polynomial from a general element of `B`.
    pub fn constant(kind: AlgebraKind, n_vars: usize, c: &CoeffElem) -> Self {
        assert_eq!(c.k(), kind.k(), "coefficient algebra mismatch");
        let mut p = NCPoly::zero(kind, n_vars);
        for (idx, entry) in c.entries().iter().enumerate() {
            if !entry.is_zero() {
                p.add_term(Word::constant(idx as u16), entry.clone());
            }
        }
        p
    }

    /// Constant polynomial from a basis element of `B`.
    pub fn basis_const(kind: AlgebraKind, n_vars: usize, basis_index: usize) -> Self {
        assert!(basis_index < kind.dim(), "basis index out of range");
        let mut p = NCPoly::zero(kind, n_vars);
        p.add_term(Word::constant(basis_index as u16), Scalar::one());
        p
    }

    /// Single-term polynomial on a (basis-expanded) word.
    pub fn monomial(kind: AlgebraKind, n_vars: usize, word: Word, scalar: Scalar) -> Self {
        let dim = kind.dim() as u16;
        assert!(
            word.basis_indices.iter().all(|&b| b < dim),
            "basis index out of range"
        );
        assert!(
            word.letters.iter().all(|&l| (l as usize) < n_vars),
            "letter out of range"
        );
        let mut p = NCPoly::zero(kind, n_vars);
        p.add_term(word, scalar);
        p
    }

    /// Canonicalizes a list of raw terms: expands general coefficients over
    /// the matrix-unit basis, merges duplicates and drops zeros.
    pub fn normalize(
        kind: AlgebraKind,
        n_vars: usize,
        raw: &[(Scalar, RawWord)],
    ) -> Result<Self, crate::error::Error> {
        let mut p = NCPoly::zero(kind, n_vars);
        for (scalar, word) in raw {
            if word.coefficients.len() != word.letters.len() + 1 {
                return Err(crate::error::Error::InvalidInput(
                    "malformed word: need one more coefficient than letters".into(),
                ));
            }
            if let Some(l) = word.letters.iter().find(|&&l| (l as usize) >= n_vars) {
                return Err(crate::error::Error::InvalidInput(format!(
                    "letter {l} out of range for {n_vars} variables"
                )));
            }
            if word.coefficients.iter().any(|c| c.k() != kind.k()) {
                return Err(crate::error::Error::InvalidInput(
                    "coefficient over a different algebra".into(),
                ));
            }
            // Expand the product of coefficient sums over all index choices.
            let mut partial: Vec<(Vec<u16>, Scalar)> = vec![(Vec::new(), scalar.clone())];
            for c in &word.coefficients {
                let mut next = Vec::new();
                for (prefix, s) in &partial {
                    for (idx, entry) in c.entries().iter().enumerate() {
                        if entry.is_zero() {
                            continue;
                        }
                        let mut pref = prefix.clone();
                        pref.push(idx as u16);
                        next.push((pref, s * entry));
                    }
                }
                partial = next;
            }
            for (basis_indices, s) in partial {
                p.add_term(Word::new(basis_indices, word.letters.clone()), s);
            }
        }
        Ok(p)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `scalar·word`, keeping the canonical form.
    pub fn add_term(&mut self, word: Word, scalar: Scalar) {
        if scalar.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(scalar);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = &*e.get() + &scalar;
                if merged.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        check_compatible((self.kind, self.n_vars), (other.kind, other.n_vars));
        let mut out = self.clone();
        for (w, s) in &other.terms {
            out.add_term(w.clone(), s.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NCPoly {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero(self.kind, self.n_vars);
        }
        NCPoly {
            kind: self.kind,
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(w, s)| (w.clone(), s * c)).collect(),
        }
    }

    /// Free-product multiplication: concatenation with coefficient fusion.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        check_compatible((self.kind, self.n_vars), (other.kind, other.n_vars));
        let mut out = NCPoly::zero(self.kind, self.n_vars);
        for (w1, s1) in &self.terms {
            for (w2, s2) in &other.terms {
                if let Some(w) = w1.concat(w2, self.kind) {
                    out.add_term(w, s1 * s2);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &NCPoly) -> NCPoly {
        self.mul(other).sub(&other.mul(self))
    }

    /// Splits into homogeneous components by letter degree; the zero
    /// polynomial yields an empty map.
    pub fn homogeneous_components(&self) -> BTreeMap<usize, NCPoly> {
        let mut out: BTreeMap<usize, NCPoly> = BTreeMap::new();
        for (w, s) in &self.terms {
            out.entry(w.degree())
                .or_insert_with(|| NCPoly::zero(self.kind, self.n_vars))
                .add_term(w.clone(), s.clone());
        }
        out
    }

    /// Splits by the number of occurrences of one letter (the eigenspaces of
    /// the number operator for that letter).
    pub fn components_by_letter_count(&self, var: usize) -> BTreeMap<usize, NCPoly> {
        let mut out: BTreeMap<usize, NCPoly> = BTreeMap::new();
        for (w, s) in &self.terms {
            out.entry(w.letter_count(var))
                .or_insert_with(|| NCPoly::zero(self.kind, self.n_vars))
                .add_term(w.clone(), s.clone());
        }
        out
    }

    /// Total letter degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).max()
    }

    /// Degree-zero part as an element of `B`.
    pub fn constant_part(&self) -> CoeffElem {
        let mut c = CoeffElem::zero(self.kind.k());
        for (w, s) in &self.terms {
            if w.degree() == 0 {
                let b = CoeffElem::basis_elem(self.kind.k(), w.basis_indices[0] as usize);
                c = c.add(&b.scale(s));
            }
        }
        c
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, s) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({s})·")?;
            for (i, &b) in w.basis_indices.iter().enumerate() {
                write!(f, "b{b}")?;
                if i < w.letters.len() {
                    write!(f, "·X{}", w.letters[i] + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// Element of `B⟨X⟩ ⊗ B⟨X⟩` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly {
    kind: AlgebraKind,
    n_vars: usize,
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorPoly {
    pub fn zero(kind: AlgebraKind, n_vars: usize) -> Self {
        TensorPoly {
            kind,
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ 1`.
    pub fn unit(kind: AlgebraKind, n_vars: usize) -> Self {
        tensor_of(&NCPoly::one(kind, n_vars), &NCPoly::one(kind, n_vars))
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, words: (Word, Word), scalar: Scalar) {
        if scalar.is_zero() {
            return;
        }
        match self.terms.entry(words) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(scalar);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = &*e.get() + &scalar;
                if merged.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
        }
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        check_compatible((self.kind, self.n_vars), (other.kind, other.n_vars));
        let mut out = self.clone();
        for (w, s) in &other.terms {
            out.add_term(w.clone(), s.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> TensorPoly {
        if c.is_zero() {
            return TensorPoly::zero(self.kind, self.n_vars);
        }
        TensorPoly {
            kind: self.kind,
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(w, s)| (w.clone(), s * c)).collect(),
        }
    }

    /// Left bimodule action `p·(a⊗c) = pa ⊗ c`.
    pub fn act_left(&self, p: &NCPoly) -> TensorPoly {
        check_compatible((self.kind, self.n_vars), (p.kind, p.n_vars));
        let mut out = TensorPoly::zero(self.kind, self.n_vars);
        for ((lw, rw), s) in &self.terms {
            for (pw, ps) in &p.terms {
                if let Some(w) = pw.concat(lw, self.kind) {
                    out.add_term((w, rw.clone()), ps * s);
                }
            }
        }
        out
    }

    /// Right bimodule action `(a⊗c)·p = a ⊗ cp`.
    pub fn act_right(&self, p: &NCPoly) -> TensorPoly {
        check_compatible((self.kind, self.n_vars), (p.kind, p.n_vars));
        let mut out = TensorPoly::zero(self.kind, self.n_vars);
        for ((lw, rw), s) in &self.terms {
            for (pw, ps) in &p.terms {
                if let Some(w) = rw.concat(pw, self.kind) {
                    out.add_term((lw.clone(), w), s * ps);
                }
            }
        }
        out
    }

    /// Splits by `(left, right)` occurrence counts of one letter (the
    /// bidegree eigenspaces of the tensor number operator).
    pub fn components_by_letter_count(&self, var: usize) -> BTreeMap<usize, TensorPoly> {
        let mut out: BTreeMap<usize, TensorPoly> = BTreeMap::new();
        for ((lw, rw), s) in &self.terms {
            let d = lw.letter_count(var) + rw.letter_count(var);
            out.entry(d)
                .or_insert_with(|| TensorPoly::zero(self.kind, self.n_vars))
                .add_term((lw.clone(), rw.clone()), s.clone());
        }
        out
    }
}

/// `p ⊗ q`.
pub fn tensor_of(p: &NCPoly, q: &NCPoly) -> TensorPoly {
    check_compatible((p.kind, p.n_vars), (q.kind, q.n_vars));
    let mut out = TensorPoly::zero(p.kind, p.n_vars);
    for (wp, sp) in &p.terms {
        for (wq, sq) in &q.terms {
            out.add_term((wp.clone(), wq.clone()), sp * sq);
        }
    }
    out
}

/// Element of `B⟨X⟩^{⊗3}` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPoly3 {
    kind: AlgebraKind,
    n_vars: usize,
    terms: BTreeMap<(Word, Word, Word), Scalar>,
}

impl TensorPoly3 {
    pub fn zero(kind: AlgebraKind, n_vars: usize) -> Self {
        TensorPoly3 {
            kind,
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, words: (Word, Word, Word), scalar: Scalar) {
        if scalar.is_zero() {
            return;
        }
        match self.terms.entry(words) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(scalar);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = &*e.get() + &scalar;
                if merged.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
        }
    }

    pub fn add(&self, other: &TensorPoly3) -> TensorPoly3 {
        check_compatible((self.kind, self.n_vars), (other.kind, other.n_vars));
        let mut out = self.clone();
        for (w, s) in &other.terms {
            out.add_term(w.clone(), s.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorPoly3) -> TensorPoly3 {
        let mut out = self.clone();
        for (w, s) in &other.terms {
            out.add_term(w.clone(), -s);
        }
        out
    }
}
