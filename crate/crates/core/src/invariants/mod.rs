//! Laurent polynomials, the reduced Burau representation and Alexander polynomials of
//! braid closures.

pub mod laurent;

use serde::{Deserialize, Serialize};

use crate::braid::{closure_components, BraidWord};
use crate::error::{Error, Result};
pub use laurent::LaurentPoly;

/// Square matrix over `ℤ[t, t^{-1}]`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurauMatrix {
    dim: usize,
    entries: Vec<LaurentPoly>,
}

impl BurauMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![LaurentPoly::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = LaurentPoly::one();
        }
        BurauMatrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::domain("matrix rows must all have length equal to the row count"));
        }
        Ok(BurauMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn mul(&self, other: &BurauMatrix) -> Result<BurauMatrix> {
        if self.dim != other.dim {
            return Err(Error::domain("matrix dimensions differ"));
        }
        let n = self.dim;
        let mut out = BurauMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentPoly::zero();
                for k in 0..n {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// `col[dst] += f · col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, f: &LaurentPoly) -> Result<()> {
        for i in 0..self.dim {
            let v = self.get(i, dst).add(&self.get(i, src).mul(f)?)?;
            self.set(i, dst, v);
        }
        Ok(())
    }

    fn scale_col(&mut self, c: usize, f: &LaurentPoly) -> Result<()> {
        for i in 0..self.dim {
            let v = self.get(i, c).mul(f)?;
            self.set(i, c, v);
        }
        Ok(())
    }

    /// Right multiplication by the generator matrix of `σ_i^{±1}`.
    fn apply_generator(&mut self, letter: i32) -> Result<()> {
        let r = letter.unsigned_abs() as usize - 1;
        let (left, diag, right) = if letter > 0 {
            (LaurentPoly::monomial(1, 1), LaurentPoly::monomial(-1, 1), LaurentPoly::one())
        } else {
            (LaurentPoly::one(), LaurentPoly::monomial(-1, -1), LaurentPoly::monomial(1, -1))
        };
        if r >= 1 {
            self.add_col(r - 1, r, &left)?;
        }
        if r + 1 < self.dim {
            self.add_col(r + 1, r, &right)?;
        }
        self.scale_col(r, &diag)
    }

    /// Determinant by fraction-free Gaussian elimination.
    pub fn determinant(&self) -> Result<LaurentPoly> {
        determinant(self.dim, self.entries.clone())
    }
}

pub(crate) fn determinant(n: usize, mut a: Vec<LaurentPoly>) -> Result<LaurentPoly> {
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut sign = 1i128;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                None => return Ok(LaurentPoly::zero()),
                Some(r) => {
                    for j in 0..n {
                        a.swap(k * n + j, r * n + j);
                    }
                    sign = -sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k * n + k]
                    .mul(&a[i * n + j])?
                    .sub(&a[i * n + k].mul(&a[k * n + j])?)?;
                a[i * n + j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k * n + k].clone();
    }
    a[n * n - 1].scale(sign)
}

/// Reduced Burau matrix; `σ_i` acts on columns `i-2, i-1, i` with entries `(t, -t, 1)` in row `i-1`
/// (0-based), clipped at the boundary, so `σ_1` on 2 strands is `[-t]`.
pub fn burau_reduced(w: &BraidWord) -> Result<BurauMatrix> {
    if w.strands() < 2 {
        return Err(Error::domain("the reduced Burau representation needs at least 2 strands"));
    }
    let mut m = BurauMatrix::identity(w.strands() - 1);
    for &l in w.letters() {
        m.apply_generator(l)?;
    }
    Ok(m)
}

/// Normalized Alexander polynomial of a knot closure.
pub fn alexander_from_braid(w: &BraidWord) -> Result<LaurentPoly> {
    let comps = closure_components(w);
    if comps != 1 {
        return Err(Error::NotAKnot(comps));
    }
    let n = w.strands();
    if n == 1 {
        return Ok(LaurentPoly::one());
    }
    let b = burau_reduced(w)?;
    let d = n - 1;
    let mut entries = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let id = if i == j { LaurentPoly::one() } else { LaurentPoly::zero() };
            entries.push(id.sub(b.get(i, j))?);
        }
    }
    let det = determinant(d, entries)?;
    let one_minus_t = LaurentPoly::from_coeffs(0, vec![1, -1]);
    let one_minus_tn = LaurentPoly::one().sub(&LaurentPoly::monomial(1, n as i64))?;
    Ok(det.mul(&one_minus_t)?.div_exact(&one_minus_tn)?.normalize())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    /// Both closures are links with the same component count; no polynomial comparison made.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceReport {
    pub components: (usize, usize),
    pub alexander: Option<(LaurentPoly, LaurentPoly)>,
    pub verdict: Verdict,
    pub note: String,
}

pub const EVIDENCE_NOTE: &str =
    "matching invariants are necessary for equivalent closures, not sufficient";

pub fn same_closure_evidence(u: &BraidWord, v: &BraidWord) -> Result<EvidenceReport> {
    let components = (closure_components(u), closure_components(v));
    let (alexander, verdict) = if components.0 != components.1 {
        (None, Verdict::Inconsistent)
    } else if components.0 == 1 {
        let (a, b) = (alexander_from_braid(u)?, alexander_from_braid(v)?);
        let verdict = if a == b { Verdict::Consistent } else { Verdict::Inconsistent };
        (Some((a, b)), verdict)
    } else {
        (None, Verdict::Inconclusive)
    };
    Ok(EvidenceReport {
        components,
        alexander,
        verdict,
        note: EVIDENCE_NOTE.to_string(),
    })
}
