//! Braid words, the canonical builders used throughout, and closure combinatorics.

pub mod garside;

pub use garside::NormalForm;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the braid group on `strands` strands. Letter `i > 0` is `σ_i`, `-i` is `σ_i^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid", into = "RawBraid")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawBraid {
    strands: usize,
    word: Vec<i32>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = Error;
    fn try_from(raw: RawBraid) -> Result<Self> {
        BraidWord::new(raw.strands, raw.word)
    }
}

impl From<BraidWord> for RawBraid {
    fn from(w: BraidWord) -> Self {
        RawBraid {
            strands: w.strands,
            word: w.letters,
        }
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::domain("strand count must be positive"));
        }
        for (pos, &l) in letters.iter().enumerate() {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::domain(format!(
                    "letter {l} at position {pos} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        BraidWord::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Concatenation; both words must live on the same strand count.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::domain(format!(
                "strand mismatch: {} vs {}",
                self.strands, other.strands
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn pow(&self, k: usize) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.repeat(k),
        }
    }

    /// Same letters on a different strand count.
    pub fn with_strands(&self, strands: usize) -> Result<BraidWord> {
        BraidWord::new(strands, self.letters.clone())
    }

    /// Underlying permutation of the closure, in the crate-wide convention
    /// (see [`PERMUTATION_CONVENTION`]).
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.strands).collect();
        // images[k-1] = where position k ends up; the last letter acts first.
        for &l in self.letters.iter().rev() {
            let i = l.unsigned_abs() as usize;
            for im in images.iter_mut() {
                if *im == i {
                    *im = i + 1;
                } else if *im == i + 1 {
                    *im = i;
                }
            }
        }
        Permutation { images }
    }

    /// Free cancellation of adjacent inverse letters.
    pub fn freely_reduced(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[", self.strands)?;
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// Letters are composed as functions, so the rightmost letter acts first; `σ_i` swaps
/// `i` and `i+1`, and `π_{ω-1}` sends `1 ↦ ω` and `k ↦ k-1` for `k ≥ 2`.
pub const PERMUTATION_CONVENTION: &str = "rightmost letter acts first; sigma_i = (i i+1)";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[k-1]` is the image of `k`; must be a bijection on `1..=n`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &im in &images {
            if im == 0 || im > n || seen[im] {
                return Err(Error::domain("permutation images are not a bijection"));
            }
            seen[im] = true;
        }
        Ok(Permutation { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut cycles = 0;
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.images[k - 1];
            }
        }
        cycles
    }
}

fn positive(name: &str, v: i64) -> Result<usize> {
    if v <= 0 {
        return Err(Error::domain(format!("{name} must be positive, got {v}")));
    }
    Ok(v as usize)
}

/// Letters of `π_m = σ_m σ_{m-1} ⋯ σ_1`.
pub(crate) fn pi_letters(m: usize) -> Vec<i32> {
    (1..=m as i32).rev().collect()
}

/// Letters of `σ_1 σ_2 ⋯ σ_m`.
pub(crate) fn ascending_letters(m: usize) -> Vec<i32> {
    (1..=m as i32).collect()
}

/// Letters of `Π_m = π_1 π_2 ⋯ π_m`.
pub(crate) fn big_pi_letters(m: usize) -> Vec<i32> {
    (1..=m).flat_map(pi_letters).collect()
}

/// `(σ_b ⋯ σ_1)(σ_{ω-1} ⋯ σ_1)^t` on `ω` strands.
pub fn one_bridge_braid(omega: i64, t: i64, b: i64) -> Result<BraidWord> {
    if omega < 2 {
        return Err(Error::domain(format!("omega must be at least 2, got {omega}")));
    }
    if t < 1 {
        return Err(Error::domain(format!("t must be at least 1, got {t}")));
    }
    if b < 0 || b > omega - 2 {
        return Err(Error::domain(format!(
            "b must satisfy 0 <= b <= omega-2 = {}, got {b}",
            omega - 2
        )));
    }
    let (w, t, b) = (omega as usize, t as usize, b as usize);
    let mut letters = pi_letters(b);
    letters.extend(pi_letters(w - 1).repeat(t));
    BraidWord::new(w, letters)
}

/// The `(ω,t,b)` with `one_bridge_braid(ω,t,b) == w` letter for letter, if any.
pub fn recognize_one_bridge(w: &BraidWord) -> Option<(i64, i64, i64)> {
    let omega = w.strands();
    if omega < 2 {
        return None;
    }
    (0..=omega - 2).find_map(|b| {
        let rest = w.len().checked_sub(b)?;
        if rest == 0 || rest % (omega - 1) != 0 {
            return None;
        }
        let (o, t, b) = (omega as i64, (rest / (omega - 1)) as i64, b as i64);
        (one_bridge_braid(o, t, b).ok()? == *w).then_some((o, t, b))
    })
}

/// `π_{l-1}^{lm} π_{p-1}^q` on `p` strands.
pub fn twisted_torus_braid(p: i64, q: i64, l: i64, m: i64) -> Result<BraidWord> {
    let p = positive("p", p)?;
    let q = positive("q", q)?;
    let l = positive("l", l)?;
    let m = positive("m", m)?;
    if l >= p {
        return Err(Error::domain(format!("l must be less than p, got l={l}, p={p}")));
    }
    let mut letters = pi_letters(l - 1).repeat(l * m);
    letters.extend(pi_letters(p - 1).repeat(q));
    BraidWord::new(p, letters)
}

/// `π_m^s` on `n` strands.
pub fn pi_power(m: usize, s: usize, n: usize) -> Result<BraidWord> {
    if m < 1 || m + 1 > n {
        return Err(Error::domain(format!("pi_m needs 1 <= m <= n-1, got m={m}, n={n}")));
    }
    BraidWord::new(n, pi_letters(m).repeat(s))
}

/// `Π_m` on `n` strands.
pub fn big_pi(m: usize, n: usize) -> Result<BraidWord> {
    if m < 1 || m + 1 > n {
        return Err(Error::domain(format!("Pi_m needs 1 <= m <= n-1, got m={m}, n={n}")));
    }
    BraidWord::new(n, big_pi_letters(m))
}

pub fn closure_components(w: &BraidWord) -> usize {
    w.permutation().cycle_count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureGenus {
    pub genus: i64,
    pub slope_threshold: i64,
}

/// Seifert genus of a positive braid knot closure, and `2g - 1`.
pub fn positive_closure_genus(w: &BraidWord) -> Result<ClosureGenus> {
    if let Some(pos) = w.letters.iter().position(|&l| l < 0) {
        return Err(Error::NotPositiveBraid(pos));
    }
    let comps = closure_components(w);
    if comps != 1 {
        return Err(Error::NotAKnot(comps));
    }
    let num = w.letters.len() as i64 - w.strands as i64 + 1;
    if num % 2 != 0 || num < 0 {
        return Err(Error::internal(format!(
            "crossings - strands + 1 = {num} is not a nonnegative even number"
        )));
    }
    let genus = num / 2;
    Ok(ClosureGenus {
        genus,
        slope_threshold: 2 * genus - 1,
    })
}

/// The three families of twisted torus knots `T_{p,kp±1}^{l,m}` that are L-space knots.
pub fn lspace_ttk_condition(p: i64, k: i64, l: i64, m: i64) -> Result<bool> {
    positive("p", p)?;
    positive("k", k)?;
    positive("l", l)?;
    positive("m", m)?;
    if l >= p {
        return Err(Error::domain(format!("l must be less than p, got l={l}, p={p}")));
    }
    Ok(l == p - 1 || (m == 1 && l == 2) || (m == 1 && l == p - 2))
}
