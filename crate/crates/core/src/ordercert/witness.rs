//! Word-equality witnesses: free moves plus relator insertion and deletion at arbitrary positions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knotgroup::word::reduce_into;
use crate::knotgroup::{Gen, GroupWord, Letter, Presentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum WitnessStep {
    /// Delete the inverse pair at `pos, pos+1`.
    FreeCancel { pos: usize },
    /// Insert `gen^sign gen^-sign` before `pos`.
    FreeInsert { pos: usize, gen: Gen, sign: i8 },
    RelatorInsert { relator: usize, inverse: bool, pos: usize },
    RelatorDelete { relator: usize, inverse: bool, pos: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EqualityWitness {
    pub steps: Vec<WitnessStep>,
}

impl EqualityWitness {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn rename(&self, map: &std::collections::HashMap<Gen, Gen>) -> Self {
        let steps = self
            .steps
            .iter()
            .map(|&s| match s {
                WitnessStep::FreeInsert { pos, gen, sign } => WitnessStep::FreeInsert {
                    pos,
                    gen: *map.get(&gen).unwrap_or(&gen),
                    sign,
                },
                other => other,
            })
            .collect();
        EqualityWitness { steps }
    }
}

struct Raw<'a>(&'a [Letter]);

impl fmt::Display for Raw<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.exp == 1 {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^-1", l.gen)?;
            }
        }
        Ok(())
    }
}

fn relator_letters(pres: &Presentation, idx: usize, inverse: bool) -> Option<Vec<Letter>> {
    let r = pres.relators().get(idx)?;
    Some(if inverse {
        r.inverse().letters().to_vec()
    } else {
        r.letters().to_vec()
    })
}

fn apply(pres: &Presentation, word: &mut Vec<Letter>, step: WitnessStep) -> std::result::Result<(), String> {
    match step {
        WitnessStep::FreeCancel { pos } => {
            if pos + 1 >= word.len() {
                return Err(format!("no pair at position {pos}"));
            }
            if !word[pos].is_inverse_of(word[pos + 1]) {
                return Err(format!("letters at {pos} and {} do not cancel", pos + 1));
            }
            word.drain(pos..pos + 2);
        }
        WitnessStep::FreeInsert { pos, gen, sign } => {
            if pos > word.len() {
                return Err(format!("position {pos} is past the end"));
            }
            if sign != 1 && sign != -1 {
                return Err(format!("sign {sign} is not ±1"));
            }
            if pres.gen_index(gen).is_none() {
                return Err(format!("undeclared generator {gen}"));
            }
            let l = Letter::new(gen, sign);
            word.splice(pos..pos, [l, l.inverse()]);
        }
        WitnessStep::RelatorInsert { relator, inverse, pos } => {
            let r = relator_letters(pres, relator, inverse).ok_or_else(|| format!("no relator {relator}"))?;
            if pos > word.len() {
                return Err(format!("position {pos} is past the end"));
            }
            word.splice(pos..pos, r);
        }
        WitnessStep::RelatorDelete { relator, inverse, pos } => {
            let r = relator_letters(pres, relator, inverse).ok_or_else(|| format!("no relator {relator}"))?;
            if pos + r.len() > word.len() || word[pos..pos + r.len()] != r[..] {
                return Err(format!("relator {relator} does not occur at position {pos}"));
            }
            word.drain(pos..pos + r.len());
        }
    }
    Ok(())
}

/// Replays `w` on `from`; the final word must be `to`, letter for letter.
pub fn check_equality_witness(
    pres: &Presentation,
    from: &GroupWord,
    to: &GroupWord,
    w: &EqualityWitness,
) -> Result<()> {
    for (what, word) in [("source", from), ("target", to)] {
        if !pres.has_generators(word) {
            return Err(Error::domain(format!("{what} word {word} uses undeclared generators")));
        }
    }
    let mut word = from.letters().to_vec();
    for (i, &step) in w.steps.iter().enumerate() {
        let before = Raw(&word).to_string();
        apply(pres, &mut word, step).map_err(|reason| Error::Witness {
            step: i,
            reason,
            state: before,
        })?;
    }
    if word != to.letters() {
        return Err(Error::Witness {
            step: w.steps.len(),
            reason: format!("replay ends at a word other than {to}"),
            state: Raw(&word).to_string(),
        });
    }
    Ok(())
}

/// Factor `p · r_i^{±1} · p^{-1}` of a relator product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelFactor {
    pub conj: GroupWord,
    pub relator: usize,
    pub inverse: bool,
}

impl RelFactor {
    fn inverse(&self) -> RelFactor {
        RelFactor {
            conj: self.conj.clone(),
            relator: self.relator,
            inverse: !self.inverse,
        }
    }

    pub(crate) fn conj_by(&self, g: &GroupWord) -> RelFactor {
        RelFactor {
            conj: g.mul(&self.conj),
            relator: self.relator,
            inverse: self.inverse,
        }
    }

    fn word(&self, pres: &Presentation) -> GroupWord {
        let r = &pres.relators()[self.relator];
        let r = if self.inverse { r.inverse() } else { r.clone() };
        r.conj(&self.conj)
    }
}

/// An equality `from = to` in the group, carried as `to = red(from · Z)` with `Z` a product of
/// conjugated relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eq {
    pub from: GroupWord,
    pub to: GroupWord,
    pub z: Vec<RelFactor>,
}

impl Eq {
    pub fn refl(w: GroupWord) -> Eq {
        Eq {
            from: w.clone(),
            to: w,
            z: Vec::new(),
        }
    }

    /// `1 = r_idx`.
    pub fn relator(pres: &Presentation, idx: usize) -> Eq {
        Eq {
            from: GroupWord::identity(),
            to: pres.relators()[idx].clone(),
            z: vec![RelFactor {
                conj: GroupWord::identity(),
                relator: idx,
                inverse: false,
            }],
        }
    }

    /// `u·from·v = u·to·v`.
    pub fn ctx(&self, u: &GroupWord, v: &GroupWord) -> Eq {
        let vi = v.inverse();
        Eq {
            from: GroupWord::product([u, &self.from, v]),
            to: GroupWord::product([u, &self.to, v]),
            z: self.z.iter().map(|f| f.conj_by(&vi)).collect(),
        }
    }

    pub fn inverse(&self) -> Eq {
        Eq {
            from: self.to.clone(),
            to: self.from.clone(),
            z: self.z.iter().rev().map(RelFactor::inverse).collect(),
        }
    }

    /// `from^{-1} = to^{-1}`.
    pub fn invert_words(&self) -> Eq {
        Eq {
            from: self.from.inverse(),
            to: self.to.inverse(),
            z: self.z.iter().rev().map(|f| f.inverse().conj_by(&self.from)).collect(),
        }
    }

    pub fn then(&self, next: &Eq) -> Result<Eq> {
        if self.to != next.from {
            return Err(Error::internal(format!("cannot chain {} = {} with {} = {}", self.from, self.to, next.from, next.to)));
        }
        let mut z = self.z.clone();
        z.extend(next.z.iter().cloned());
        Ok(Eq {
            from: self.from.clone(),
            to: next.to.clone(),
            z,
        })
    }

    /// The relator product `Z` as a reduced word.
    pub fn z_word(&self, pres: &Presentation) -> GroupWord {
        GroupWord::product(&self.z.iter().map(|f| f.word(pres)).collect::<Vec<_>>())
    }

    /// Checks `to = red(from · Z)`.
    pub fn validate(&self, pres: &Presentation) -> Result<()> {
        if self.from.mul(&self.z_word(pres)) != self.to {
            return Err(Error::internal(format!("relator product does not carry {} to {}", self.from, self.to)));
        }
        Ok(())
    }

    pub fn witness(&self, pres: &Presentation) -> Result<EqualityWitness> {
        witness_for(pres, &self.from, &self.z, &self.to)
    }
}

/// Free reduction of `word` emitting `FreeCancel` steps.
fn reduce_with_steps(word: &mut Vec<Letter>, steps: &mut Vec<WitnessStep>) {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word.iter() {
        if out.last().is_some_and(|&p| p.is_inverse_of(l)) {
            out.pop();
            steps.push(WitnessStep::FreeCancel { pos: out.len() });
        } else {
            out.push(l);
        }
    }
    *word = out;
}

fn witness_for(pres: &Presentation, from: &GroupWord, z: &[RelFactor], to: &GroupWord) -> Result<EqualityWitness> {
    let mut steps = Vec::new();
    let mut word = from.letters().to_vec();
    for f in z {
        let e = word.len();
        for (k, l) in f.conj.letters().iter().enumerate() {
            steps.push(WitnessStep::FreeInsert {
                pos: e + k,
                gen: l.gen,
                sign: l.exp,
            });
        }
        let pos = e + f.conj.len();
        steps.push(WitnessStep::RelatorInsert {
            relator: f.relator,
            inverse: f.inverse,
            pos,
        });
        let r = relator_letters(pres, f.relator, f.inverse)
            .ok_or_else(|| Error::internal(format!("no relator {}", f.relator)))?;
        let inv: Vec<Letter> = f.conj.inverse().letters().to_vec();
        word.extend(f.conj.letters().iter().copied());
        word.extend(r);
        word.extend(inv);
        reduce_with_steps(&mut word, &mut steps);
    }
    if word != to.letters() {
        return Err(Error::internal(format!("relator product ends at {} instead of {to}", Raw(&word))));
    }
    Ok(EqualityWitness { steps })
}

/// Relator product read off a witness: `red(from · Z) = red(to)`.
pub fn relator_product(pres: &Presentation, from: &GroupWord, w: &EqualityWitness) -> Result<Vec<RelFactor>> {
    let mut word = from.letters().to_vec();
    let mut z = Vec::new();
    for (i, &step) in w.steps.iter().enumerate() {
        let suffix_after = |word: &[Letter], p: usize| {
            let mut out = Vec::new();
            reduce_into(&mut out, word[p..].iter().copied());
            GroupWord::from_letters(out).inverse()
        };
        match step {
            WitnessStep::RelatorInsert { relator, inverse, pos } if pos <= word.len() => {
                z.push(RelFactor {
                    conj: suffix_after(&word, pos),
                    relator,
                    inverse,
                });
            }
            WitnessStep::RelatorDelete { relator, inverse, pos } => {
                let len = pres.relators().get(relator).map_or(0, |r| r.len());
                if pos + len <= word.len() {
                    z.push(RelFactor {
                        conj: suffix_after(&word, pos + len),
                        relator,
                        inverse: !inverse,
                    });
                }
            }
            _ => {}
        }
        apply(pres, &mut word, step).map_err(|reason| Error::Witness {
            step: i,
            reason,
            state: Raw(&word).to_string(),
        })?;
    }
    Ok(z)
}
