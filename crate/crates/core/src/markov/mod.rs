//! Braid word problem, Markov and relation moves, checkable move traces, and the
//! twisted torus to 1-bridge braid converter.

pub mod convert;

use serde::{Deserialize, Serialize};

use crate::braid::garside::NormalForm;
use crate::braid::BraidWord;
use crate::error::{Error, Result};

pub use convert::{ttk_to_one_bridge, Condition, ConversionResult};

pub fn word_equal(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    if u.strands() != v.strands() {
        return Err(Error::domain(format!(
            "strand mismatch: {} vs {}",
            u.strands(),
            v.strands()
        )));
    }
    Ok(NormalForm::of(u) == NormalForm::of(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Move {
    BraidRelationAt { pos: usize },
    FarCommuteAt { pos: usize },
    FreeCancelAt { pos: usize },
    FreeInsertAt { pos: usize, letter: i32 },
    ConjugateBy { word: Vec<i32> },
    StabilizePos,
    StabilizeNeg,
    Destabilize,
    /// Replace the word by `target` on the same strand count; justified by [`word_equal`].
    CoarseEquality { target: Vec<i32> },
}

fn move_err(pos: usize, reason: impl Into<String>) -> Error {
    Error::Move {
        pos,
        reason: reason.into(),
    }
}

fn window(w: &BraidWord, pos: usize, len: usize) -> Result<&[i32]> {
    w.letters()
        .get(pos..pos + len)
        .ok_or_else(|| move_err(pos, format!("needs {len} letters, word has {}", w.len())))
}

fn free_reduce(letters: Vec<i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn apply_move(w: &BraidWord, mv: &Move) -> Result<BraidWord> {
    let n = w.strands();
    let mut letters = w.letters().to_vec();
    match mv {
        Move::BraidRelationAt { pos } => {
            let s = window(w, *pos, 3)?;
            let (a, b, c) = (s[0], s[1], s[2]);
            let same_sign = a.signum() == b.signum() && b.signum() == c.signum();
            if !(same_sign && a == c && (a.abs() - b.abs()).abs() == 1) {
                return Err(move_err(*pos, "letters do not form a braid relation"));
            }
            letters[*pos..*pos + 3].copy_from_slice(&[b, a, b]);
        }
        Move::FarCommuteAt { pos } => {
            let s = window(w, *pos, 2)?;
            if (s[0].abs() - s[1].abs()).abs() < 2 {
                return Err(move_err(*pos, "generators are not far apart"));
            }
            letters.swap(*pos, *pos + 1);
        }
        Move::FreeCancelAt { pos } => {
            let s = window(w, *pos, 2)?;
            if s[0] != -s[1] {
                return Err(move_err(*pos, "letters are not inverse to each other"));
            }
            letters.drain(*pos..*pos + 2);
        }
        Move::FreeInsertAt { pos, letter } => {
            if *pos > letters.len() {
                return Err(move_err(*pos, "insertion point past the end of the word"));
            }
            letters.splice(*pos..*pos, [*letter, -*letter]);
            return BraidWord::new(n, letters).map_err(|e| move_err(*pos, e.to_string()));
        }
        Move::ConjugateBy { word } => {
            let mut c = word.clone();
            c.extend_from_slice(&letters);
            c.extend(word.iter().rev().map(|l| -l));
            return BraidWord::new(n, free_reduce(c)).map_err(|e| move_err(0, e.to_string()));
        }
        Move::StabilizePos | Move::StabilizeNeg => {
            let l = n as i32;
            letters.push(if matches!(mv, Move::StabilizePos) { l } else { -l });
            return BraidWord::new(n + 1, letters);
        }
        Move::Destabilize => {
            let top = n as i32 - 1;
            let last = letters.len().saturating_sub(1);
            if n < 2 || letters.last().map(|l| l.abs()) != Some(top) {
                return Err(move_err(last, "last letter is not the top generator"));
            }
            if letters.iter().filter(|l| l.abs() == top).count() != 1 {
                return Err(move_err(last, "top generator occurs more than once"));
            }
            letters.pop();
            return BraidWord::new(n - 1, letters);
        }
        Move::CoarseEquality { target } => {
            let t = BraidWord::new(n, target.clone()).map_err(|e| move_err(0, e.to_string()))?;
            if !word_equal(w, &t)? {
                return Err(move_err(0, "target is not equal to the word in the braid group"));
            }
            return Ok(t);
        }
    }
    Ok(BraidWord::new(n, letters).expect("relation moves preserve letter ranges"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub start: BraidWord,
    pub steps: Vec<Move>,
    pub end: BraidWord,
}

impl MoveTrace {
    pub fn empty(w: BraidWord) -> Self {
        MoveTrace {
            start: w.clone(),
            steps: Vec::new(),
            end: w,
        }
    }

    /// Every intermediate word, starting with `start`.
    pub fn replay(&self) -> Result<Vec<BraidWord>> {
        let mut words = vec![self.start.clone()];
        for (step, mv) in self.steps.iter().enumerate() {
            let next = apply_move(words.last().unwrap(), mv).map_err(|e| Error::Trace {
                step,
                reason: e.to_string(),
            })?;
            words.push(next);
        }
        Ok(words)
    }

    /// A trace from `end` back to `start`.
    pub fn reversed(&self) -> Result<MoveTrace> {
        let words = self.replay()?;
        let mut steps = Vec::new();
        for (k, mv) in self.steps.iter().enumerate().rev() {
            let (before, after) = (&words[k], &words[k + 1]);
            let inverse = match mv {
                Move::ConjugateBy { word } => Move::ConjugateBy {
                    word: word.iter().rev().map(|l| -l).collect(),
                },
                Move::StabilizePos | Move::StabilizeNeg => Move::Destabilize,
                Move::Destabilize => {
                    if before.letters().last().copied().unwrap_or(0) > 0 {
                        Move::StabilizePos
                    } else {
                        Move::StabilizeNeg
                    }
                }
                _ => Move::CoarseEquality {
                    target: before.letters().to_vec(),
                },
            };
            let landed = apply_move(after, &inverse)?;
            steps.push(inverse);
            if &landed != before {
                steps.push(Move::CoarseEquality {
                    target: before.letters().to_vec(),
                });
            }
        }
        Ok(MoveTrace {
            start: self.end.clone(),
            steps,
            end: self.start.clone(),
        })
    }

    pub fn then(mut self, next: MoveTrace) -> Result<MoveTrace> {
        if self.end != next.start {
            return Err(Error::internal(format!(
                "cannot join traces: {} then {}",
                self.end, next.start
            )));
        }
        self.steps.extend(next.steps);
        self.end = next.end;
        Ok(self)
    }
}

pub fn verify_trace(tr: &MoveTrace) -> Result<()> {
    let words = tr.replay()?;
    let last = words.last().unwrap();
    if last != &tr.end {
        return Err(Error::Trace {
            step: tr.steps.len(),
            reason: format!("replay ends at {last}, trace claims {}", tr.end),
        });
    }
    Ok(())
}

/// Incremental trace construction; every step is applied immediately, so an invalid claim
/// surfaces at the point where it is made.
#[derive(Debug, Clone)]
pub struct TraceBuilder {
    start: BraidWord,
    cur: BraidWord,
    steps: Vec<Move>,
}

impl TraceBuilder {
    pub fn new(start: BraidWord) -> Self {
        TraceBuilder {
            cur: start.clone(),
            start,
            steps: Vec::new(),
        }
    }

    pub fn current(&self) -> &BraidWord {
        &self.cur
    }

    pub fn step(&mut self, mv: Move) -> Result<&mut Self> {
        let next = apply_move(&self.cur, &mv).map_err(|e| {
            Error::internal(format!("step {} ({mv:?}) from {}: {e}", self.steps.len(), self.cur))
        })?;
        if next != self.cur {
            self.cur = next;
            self.steps.push(mv);
        }
        Ok(self)
    }

    pub fn equal_to(&mut self, target: Vec<i32>) -> Result<&mut Self> {
        self.step(Move::CoarseEquality { target })
    }

    pub fn conjugate(&mut self, word: Vec<i32>) -> Result<&mut Self> {
        self.step(Move::ConjugateBy { word })
    }

    pub fn destabilize(&mut self) -> Result<&mut Self> {
        self.step(Move::Destabilize)
    }

    pub fn finish(self) -> MoveTrace {
        MoveTrace {
            start: self.start,
            steps: self.steps,
            end: self.cur,
        }
    }
}

/// `(p^{-1} mod q, q^{-1} mod p)`; at least one lies below half its modulus.
pub fn coprime_inverses(p: i64, q: i64) -> Result<(i64, i64)> {
    use num_integer::Integer;
    if p < 3 || q < 3 {
        return Err(Error::domain(format!("p and q must be at least 3, got ({p},{q})")));
    }
    let e = p.extended_gcd(&q);
    if e.gcd != 1 {
        return Err(Error::domain(format!("gcd({p},{q}) = {} is not 1", e.gcd)));
    }
    // e.x * p + e.y * q = 1
    Ok((e.x.rem_euclid(q), e.y.rem_euclid(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{big_pi, pi_power};
    use proptest::prelude::*;

    fn bw(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn word_equal_examples() {
        assert!(word_equal(&bw(3, &[1, 2, 1]), &bw(3, &[2, 1, 2])).unwrap());
        assert!(!word_equal(&bw(3, &[1]), &bw(3, &[2])).unwrap());
        let p = big_pi(3, 4).unwrap();
        assert!(word_equal(&pi_power(3, 4, 4).unwrap(), &p.concat(&p).unwrap()).unwrap());
        assert!(word_equal(&bw(3, &[1]), &bw(4, &[1])).is_err());
    }

    #[test]
    fn apply_move_examples() {
        let r = apply_move(&bw(3, &[1, 2, 1]), &Move::BraidRelationAt { pos: 0 }).unwrap();
        assert_eq!(r, bw(3, &[2, 1, 2]));
        let r = apply_move(&bw(2, &[1]), &Move::StabilizePos).unwrap();
        assert_eq!(r, bw(3, &[1, 2]));
        let r = apply_move(&bw(3, &[1, 2]), &Move::Destabilize).unwrap();
        assert_eq!(r, bw(2, &[1]));
        let r = apply_move(&bw(3, &[2, 1, 2]), &Move::Destabilize);
        assert!(matches!(r, Err(Error::Move { .. })));
        let r = apply_move(&bw(4, &[1, 3]), &Move::FarCommuteAt { pos: 0 }).unwrap();
        assert_eq!(r, bw(4, &[3, 1]));
        assert!(apply_move(&bw(3, &[1, 2]), &Move::FarCommuteAt { pos: 0 }).is_err());
        let r = apply_move(&bw(3, &[1]), &Move::FreeInsertAt { pos: 1, letter: -2 }).unwrap();
        assert_eq!(r, bw(3, &[1, -2, 2]));
        let r = apply_move(&r, &Move::FreeCancelAt { pos: 1 }).unwrap();
        assert_eq!(r, bw(3, &[1]));
        let r = apply_move(&bw(3, &[1, 2]), &Move::ConjugateBy { word: vec![2] }).unwrap();
        assert_eq!(r, bw(3, &[2, 1]));
        assert!(apply_move(&bw(3, &[1, 2]), &Move::BraidRelationAt { pos: 1 }).is_err());
    }

    #[test]
    fn trace_examples() {
        let t = MoveTrace::empty(bw(3, &[1, 2]));
        assert!(verify_trace(&t).is_ok());
        let bad = MoveTrace {
            start: bw(3, &[2, 1, 2, 1]),
            steps: vec![
                Move::CoarseEquality { target: vec![1, 2, 1, 1] },
                Move::Destabilize,
            ],
            end: bw(2, &[1, 1, 1]),
        };
        assert!(matches!(verify_trace(&bad), Err(Error::Trace { step: 1, .. })));
        let wrong_end = MoveTrace {
            start: bw(3, &[1, 2, 1]),
            steps: vec![Move::BraidRelationAt { pos: 0 }],
            end: bw(3, &[1, 2, 1]),
        };
        assert!(matches!(verify_trace(&wrong_end), Err(Error::Trace { step: 1, .. })));
    }

    #[test]
    fn reversal_round_trip() {
        let mut tb = TraceBuilder::new(bw(3, &[1, 2, 1, 2]));
        tb.equal_to(vec![2, 1, 2, 2]).unwrap();
        tb.conjugate(vec![2, 2]).unwrap();
        let tr = tb.finish();
        verify_trace(&tr).unwrap();
        let rev = tr.reversed().unwrap();
        verify_trace(&rev).unwrap();
        assert_eq!(rev.start, tr.end);
        assert_eq!(rev.end, tr.start);
    }

    #[test]
    fn json_shape() {
        let tr = MoveTrace {
            start: bw(2, &[1]),
            steps: vec![Move::StabilizePos, Move::CoarseEquality { target: vec![1, 2] }],
            end: bw(3, &[1, 2]),
        };
        let v = serde_json::to_value(&tr).unwrap();
        assert_eq!(v["steps"][0]["kind"], "StabilizePos");
        assert_eq!(v["steps"][1]["target"], serde_json::json!([1, 2]));
        let back: MoveTrace = serde_json::from_value(v).unwrap();
        assert_eq!(back, tr);
    }

    #[test]
    fn coprime_inverse_examples() {
        assert_eq!(coprime_inverses(3, 5).unwrap(), (2, 2));
        assert_eq!(coprime_inverses(3, 4).unwrap(), (3, 1));
        assert!(matches!(coprime_inverses(4, 6), Err(Error::Domain(_))));
    }

    #[test]
    fn pi_identity_suite() {
        use crate::braid::{ascending_letters, big_pi_letters, pi_letters};
        for m in 2..=6usize {
            let n = m + 1;
            let eq = |a: Vec<i32>, b: Vec<i32>| {
                word_equal(&BraidWord::new(n, a).unwrap(), &BraidWord::new(n, b).unwrap()).unwrap()
            };
            let pi = |k: usize, s: usize| pi_letters(k).repeat(s);
            for i in 1..m as i32 {
                assert!(eq([vec![i], pi(m, 1)].concat(), [pi(m, 1), vec![i + 1]].concat()));
            }
            assert!(eq(pi(m, m + 1), big_pi_letters(m).repeat(2)));
            assert!(eq([vec![m as i32], pi(m, 2)].concat(), [pi(m, 2), vec![1]].concat()));
            for s in 2..=m {
                let sm1 = vec![s as i32 - 1];
                assert!(eq(pi(m, s), [pi(m - 1, 1), pi(m, s - 1), sm1].concat()));
                assert!(eq(pi(m, s), [pi(m - 1, s - 1), pi(m, 1), ascending_letters(s - 1)].concat()));
            }
        }
    }

    fn exhaustive_lemma_holds() -> bool {
        for p in 3..=50i64 {
            for q in 3..=50i64 {
                if let Ok((x, y)) = coprime_inverses(p, q) {
                    if (p * x) % q != 1 || (q * y) % p != 1 || !(2 * x < q || 2 * y < p) {
                        return false;
                    }
                    if (2 * p * q - p * x - q * y + 1) % (p * q) != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn coprime_lemma_exhaustive() {
        assert!(exhaustive_lemma_holds());
    }

    fn arb_word() -> impl Strategy<Value = BraidWord> {
        (2usize..7).prop_flat_map(|n| {
            proptest::collection::vec((1..n as i32, any::<bool>()), 0..40).prop_map(move |v| {
                let l = v.into_iter().map(|(i, s)| if s { i } else { -i }).collect();
                BraidWord::new(n, l).unwrap()
            })
        })
    }

    fn all_relation_moves(w: &BraidWord) -> Vec<Move> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            out.push(Move::BraidRelationAt { pos });
            out.push(Move::FarCommuteAt { pos });
            out.push(Move::FreeCancelAt { pos });
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn word_equal_invariant_under_relation_moves(w in arb_word(), pick in any::<usize>(), ins in 0usize..40, g in 1i32..6) {
            let mut moves: Vec<Move> = all_relation_moves(&w)
                .into_iter()
                .filter(|m| apply_move(&w, m).is_ok())
                .collect();
            let g = (g - 1) % (w.strands() as i32 - 1) + 1;
            moves.push(Move::FreeInsertAt { pos: ins.min(w.len()), letter: g });
            let mv = &moves[pick % moves.len()];
            let v = apply_move(&w, mv).unwrap();
            prop_assert!(word_equal(&w, &v).unwrap());
            prop_assert!(word_equal(&v, &w).unwrap());
        }

        #[test]
        fn word_equal_detects_one_extra_letter(w in arb_word(), g in 1i32..6) {
            let g = (g - 1) % (w.strands() as i32 - 1) + 1;
            let mut l = w.letters().to_vec();
            l.push(g);
            let v = BraidWord::new(w.strands(), l).unwrap();
            prop_assert!(!word_equal(&w, &v).unwrap());
        }

        #[test]
        fn inverse_cancels(w in arb_word()) {
            let e = BraidWord::identity(w.strands()).unwrap();
            prop_assert!(word_equal(&w.concat(&w.inverse()).unwrap(), &e).unwrap());
        }

        #[test]
        fn word_equal_transitive(w in arb_word(), a in any::<usize>(), b in any::<usize>()) {
            let pick = |x: &BraidWord, k: usize| {
                let ms: Vec<Move> = all_relation_moves(x).into_iter().filter(|m| apply_move(x, m).is_ok()).collect();
                if ms.is_empty() { x.clone() } else { apply_move(x, &ms[k % ms.len()]).unwrap() }
            };
            let u = pick(&w, a);
            let v = pick(&u, b);
            prop_assert!(word_equal(&w, &u).unwrap() && word_equal(&u, &v).unwrap());
            prop_assert!(word_equal(&w, &v).unwrap());
        }
    }
}
