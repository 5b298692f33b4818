//! JSON document schemas and their conversions to the core types.
//!
//! Exact scalars travel as strings (`"3/4"`, `"1/2*sqrt2"`,
//! `"1-1/2*sqrt2"`) so nothing is rounded; floats appear only in matrix
//! documents and Monte-Carlo reports. Letters and functional indices are
//! 1-based on the wire; basis indices are 0-based positions in the
//! matrix-unit basis (`e_{ij}` at `i·k+j`).

use anyhow::{bail, Context};
use ncfree_core::matricial::{CMat, MatrixPoint};
use ncfree_core::{AlgebraKind, NCPoly, Scalar, TensorPoly, Word};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraDoc {
    pub kind: String,
    pub k: usize,
}

impl AlgebraDoc {
    pub fn from_kind(kind: AlgebraKind) -> Self {
        match kind {
            AlgebraKind::Scalar => AlgebraDoc {
                kind: "scalar".into(),
                k: 1,
            },
            AlgebraKind::Matrix(k) => AlgebraDoc {
                kind: "matrix".into(),
                k,
            },
        }
    }

    pub fn to_kind(&self) -> anyhow::Result<AlgebraKind> {
        match self.kind.as_str() {
            "scalar" => {
                if self.k != 1 {
                    bail!("scalar algebra requires k = 1, got k = {}", self.k);
                }
                Ok(AlgebraKind::Scalar)
            }
            "matrix" => {
                if self.k < 1 {
                    bail!("matrix algebra requires k ≥ 1");
                }
                Ok(AlgebraKind::Matrix(self.k))
            }
            other => bail!("unknown algebra kind {other:?} (expected \"scalar\" or \"matrix\")"),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScalarDoc {
    pub re: String,
    pub im: String,
}

impl ScalarDoc {
    pub fn from_scalar(s: &Scalar) -> Self {
        ScalarDoc {
            re: s.re_string(),
            im: s.im_string(),
        }
    }

    pub fn to_scalar(&self) -> anyhow::Result<Scalar> {
        Ok(Scalar::from_re_im_strings(&self.re, &self.im)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct WordDoc {
    pub coeff_basis_indices: Vec<usize>,
    pub letters: Vec<usize>,
}

impl WordDoc {
    pub fn from_word(w: &Word) -> Self {
        WordDoc {
            coeff_basis_indices: w.basis_indices().iter().map(|&b| b as usize).collect(),
            letters: w.letters().iter().map(|&l| l as usize + 1).collect(),
        }
    }

    pub fn to_word(&self, kind: AlgebraKind, n_vars: usize) -> anyhow::Result<Word> {
        if self.coeff_basis_indices.len() != self.letters.len() + 1 {
            bail!(
                "malformed word: {} coefficients for {} letters",
                self.coeff_basis_indices.len(),
                self.letters.len()
            );
        }
        let dim = kind.dim();
        for &b in &self.coeff_basis_indices {
            if b >= dim {
                bail!("coefficient basis index {b} out of 0..{dim}");
            }
        }
        let mut letters = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if l < 1 || l > n_vars {
                bail!("letter {l} out of 1..{n_vars}");
            }
            letters.push((l - 1) as u16);
        }
        Ok(Word::new(
            self.coeff_basis_indices.iter().map(|&b| b as u16).collect(),
            letters,
        ))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyTermDoc {
    pub scalar: ScalarDoc,
    pub coeff_basis_indices: Vec<usize>,
    pub letters: Vec<usize>,
}

/// Polynomial document. `generator_map` (optional) assigns a 1-based
/// functional index to each letter for Z-valued evaluation.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyDocument {
    pub schema_version: u32,
    pub algebra: AlgebraDoc,
    pub n_vars: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator_map: Option<Vec<usize>>,
    pub terms: Vec<PolyTermDoc>,
}

impl PolyDocument {
    pub fn from_poly(p: &NCPoly, generator_map: Option<Vec<usize>>) -> Self {
        PolyDocument {
            schema_version: SCHEMA_VERSION,
            algebra: AlgebraDoc::from_kind(p.kind()),
            n_vars: p.n_vars(),
            generator_map,
            terms: p
                .terms()
                .map(|(w, s)| {
                    let wd = WordDoc::from_word(w);
                    PolyTermDoc {
                        scalar: ScalarDoc::from_scalar(s),
                        coeff_basis_indices: wd.coeff_basis_indices,
                        letters: wd.letters,
                    }
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> anyhow::Result<NCPoly> {
        check_schema(self.schema_version)?;
        let kind = self.algebra.to_kind()?;
        if let Some(map) = &self.generator_map {
            if map.len() != self.n_vars {
                bail!(
                    "generator map covers {} letters, document declares {}",
                    map.len(),
                    self.n_vars
                );
            }
            for &g in map {
                if g < 1 {
                    bail!("functional indices are 1-based");
                }
            }
        }
        let mut p = NCPoly::zero(kind, self.n_vars);
        for term in &self.terms {
            let wd = WordDoc {
                coeff_basis_indices: term.coeff_basis_indices.clone(),
                letters: term.letters.clone(),
            };
            let word = wd.to_word(kind, self.n_vars)?;
            p.add_term(word, term.scalar.to_scalar()?);
        }
        Ok(p)
    }

    /// 0-based generator map, defaulting to the identity assignment.
    pub fn generator_map_zero_based(&self) -> Vec<usize> {
        match &self.generator_map {
            Some(map) => map.iter().map(|&g| g - 1).collect(),
            None => (0..self.n_vars).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TensorTermDoc {
    pub scalar: ScalarDoc,
    pub left: WordDoc,
    pub right: WordDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TensorDocument {
    pub schema_version: u32,
    pub algebra: AlgebraDoc,
    pub n_vars: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator_map: Option<Vec<usize>>,
    pub terms: Vec<TensorTermDoc>,
}

impl TensorDocument {
    pub fn from_tensor(u: &TensorPoly, generator_map: Option<Vec<usize>>) -> Self {
        TensorDocument {
            schema_version: SCHEMA_VERSION,
            algebra: AlgebraDoc::from_kind(u.kind()),
            n_vars: u.n_vars(),
            generator_map,
            terms: u
                .terms()
                .map(|((lw, rw), s)| TensorTermDoc {
                    scalar: ScalarDoc::from_scalar(s),
                    left: WordDoc::from_word(lw),
                    right: WordDoc::from_word(rw),
                })
                .collect(),
        }
    }

    pub fn to_tensor(&self) -> anyhow::Result<TensorPoly> {
        check_schema(self.schema_version)?;
        let kind = self.algebra.to_kind()?;
        let mut u = TensorPoly::zero(kind, self.n_vars);
        for term in &self.terms {
            let left = term.left.to_word(kind, self.n_vars)?;
            let right = term.right.to_word(kind, self.n_vars)?;
            u.add_term((left, right), term.scalar.to_scalar()?);
        }
        Ok(u)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComplexMatrixDoc {
    pub rows: usize,
    pub cols: usize,
    /// Row-major `[re, im]` pairs.
    pub data: Vec<[f64; 2]>,
}

impl ComplexMatrixDoc {
    pub fn from_matrix(m: &CMat) -> Self {
        let mut data = Vec::with_capacity(m.nrows() * m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                data.push([m[(i, j)].re, m[(i, j)].im]);
            }
        }
        ComplexMatrixDoc {
            rows: m.nrows(),
            cols: m.ncols(),
            data,
        }
    }

    pub fn to_matrix(&self) -> anyhow::Result<CMat> {
        if self.data.len() != self.rows * self.cols {
            bail!(
                "matrix declares {}×{} but carries {} entries",
                self.rows,
                self.cols,
                self.data.len()
            );
        }
        Ok(CMat::from_fn(self.rows, self.cols, |i, j| {
            let [re, im] = self.data[i * self.cols + j];
            Complex64::new(re, im)
        }))
    }
}

/// Matrix document: a level-`N` point over `M_k(ℂ)` (square matrices of
/// dimension `level·k`), or a single direction block for the delta
/// operators.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MatrixDocument {
    pub schema_version: u32,
    pub level: usize,
    pub k: usize,
    pub matrices: Vec<ComplexMatrixDoc>,
}

impl MatrixDocument {
    pub fn from_point(pt: &MatrixPoint) -> Self {
        MatrixDocument {
            schema_version: SCHEMA_VERSION,
            level: pt.level,
            k: pt.k,
            matrices: pt.mats.iter().map(ComplexMatrixDoc::from_matrix).collect(),
        }
    }

    pub fn from_single(m: &CMat, level: usize, k: usize) -> Self {
        MatrixDocument {
            schema_version: SCHEMA_VERSION,
            level,
            k,
            matrices: vec![ComplexMatrixDoc::from_matrix(m)],
        }
    }

    pub fn to_point(&self) -> anyhow::Result<MatrixPoint> {
        check_schema(self.schema_version)?;
        let mats: Vec<CMat> = self
            .matrices
            .iter()
            .map(|m| m.to_matrix())
            .collect::<anyhow::Result<_>>()?;
        Ok(MatrixPoint::new(self.level, self.k, mats)?)
    }

    /// The single matrix of a direction document, shape left to the caller.
    pub fn to_single(&self) -> anyhow::Result<CMat> {
        check_schema(self.schema_version)?;
        if self.matrices.len() != 1 {
            bail!("expected exactly one matrix, found {}", self.matrices.len());
        }
        self.matrices[0].to_matrix()
    }
}

fn check_schema(version: u32) -> anyhow::Result<()> {
    if version != SCHEMA_VERSION {
        bail!("unsupported schema_version {version} (expected {SCHEMA_VERSION})");
    }
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json<T: Serialize>(value: &T, path: Option<&std::path::Path>) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}
