//! Smith normal form of the relator exponent matrix.

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::word::GroupWord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    /// Cyclic factors, finite ones first; `0` stands for `ℤ`. Trivial factors are dropped.
    pub invariant_factors: Vec<i64>,
    /// Coordinates of each probe word, aligned with `invariant_factors`.
    pub probe_images: Vec<Vec<i64>>,
}

impl Abelianization {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.invariant_factors == [0]
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<i64> {
        if self.invariant_factors.contains(&0) {
            None
        } else {
            Some(self.invariant_factors.iter().product())
        }
    }
}

/// `D = U·A·V` with `D` diagonal; only `V` is tracked.
pub(crate) struct Smith {
    pub diag: Vec<i64>,
    /// `cols × cols`, row-major.
    pub v: Vec<Vec<i64>>,
}

fn ovf() -> Error {
    Error::Overflow("smith normal form")
}

pub(crate) fn smith(a: &[Vec<i64>], cols: usize) -> Result<Smith> {
    let rows = a.len();
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut v: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    let col_op = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, dst: usize, src: usize, q: i64| -> Result<()> {
        for row in m.iter_mut() {
            row[dst] = row[dst].checked_sub(q.checked_mul(row[src]).ok_or_else(ovf)?).ok_or_else(ovf)?;
        }
        for row in v.iter_mut() {
            row[dst] = row[dst].checked_sub(q.checked_mul(row[src]).ok_or_else(ovf)?).ok_or_else(ovf)?;
        }
        Ok(())
    };
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].unsigned_abs());
            let Some((pi, pj)) = pivot else {
                return Ok(Smith { diag, v });
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                for j in t..cols {
                    m[i][j] = m[i][j].checked_sub(q.checked_mul(m[t][j]).ok_or_else(ovf)?).ok_or_else(ovf)?;
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                col_op(&mut m, &mut v, j, t, q)?;
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] = m[t][j].checked_add(m[i][j]).ok_or_else(ovf)?;
                    }
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for row in m.iter_mut() {
                row[t] = -row[t];
            }
            for row in v.iter_mut() {
                row[t] = -row[t];
            }
        }
        diag.push(m[t][t]);
    }
    Ok(Smith { diag, v })
}

pub(crate) fn exponent_matrix(pres: &Presentation) -> Vec<Vec<i64>> {
    pres.relators()
        .iter()
        .map(|r| pres.generators().iter().map(|&g| r.exponent_sum(g)).collect())
        .collect()
}

fn exponent_vector(pres: &Presentation, w: &GroupWord) -> Result<Vec<i64>> {
    if !pres.has_generators(w) {
        return Err(Error::domain(format!("probe word {w} uses undeclared generators")));
    }
    Ok(pres.generators().iter().map(|&g| w.exponent_sum(g)).collect())
}

pub fn abelianization(pres: &Presentation, probe: &[GroupWord]) -> Result<Abelianization> {
    let cols = pres.generators().len();
    let s = smith(&exponent_matrix(pres), cols)?;
    // (index into V's columns, modulus); modulus 0 means a free factor
    let mut kept: Vec<(usize, i64)> = Vec::new();
    for (j, &d) in s.diag.iter().enumerate() {
        if d != 1 {
            kept.push((j, d));
        }
    }
    for j in s.diag.len()..cols {
        kept.push((j, 0));
    }
    let mut probe_images = Vec::with_capacity(probe.len());
    for w in probe {
        let e = exponent_vector(pres, w)?;
        let img = kept
            .iter()
            .map(|&(j, d)| {
                let c: i64 = (0..cols).map(|g| e[g] * s.v[g][j]).sum();
                if d == 0 {
                    c
                } else {
                    c.rem_euclid(d)
                }
            })
            .collect();
        probe_images.push(img);
    }
    Ok(Abelianization {
        invariant_factors: kept.iter().map(|&(_, d)| d).collect(),
        probe_images,
    })
}

/// Coordinates of each generator in the free factor, for a presentation with abelianization `ℤ`.
pub(crate) fn infinite_cyclic_map(pres: &Presentation) -> Result<Option<Vec<i64>>> {
    let cols = pres.generators().len();
    let s = smith(&exponent_matrix(pres), cols)?;
    if s.diag.len() + 1 != cols || s.diag.iter().any(|&d| d != 1) {
        return Ok(None);
    }
    let j = cols - 1;
    Ok(Some((0..cols).map(|g| s.v[g][j]).collect()))
}
