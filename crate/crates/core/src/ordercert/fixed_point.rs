//! Syntactic hypotheses of the fixed-point rule for a pair of generators.

use crate::knotgroup::{Gen, GroupWord};

/// `g3` is a positive word in `g1, g2` using `g1`; `g4` is a word in `g1^{-1}, g2` using `g1^{-1}`.
pub fn fixed_point_hypotheses(g3: &GroupWord, g4: &GroupWord, g1: Gen, g2: Gen) -> bool {
    if g1 == g2 {
        return false;
    }
    let g3_ok = g3
        .letters()
        .iter()
        .all(|l| l.exp == 1 && (l.gen == g1 || l.gen == g2))
        && g3.letters().iter().any(|l| l.gen == g1);
    let g4_ok = g4
        .letters()
        .iter()
        .all(|l| (l.gen == g1 && l.exp == -1) || (l.gen == g2 && l.exp == 1))
        && g4.letters().iter().any(|l| l.gen == g1);
    g3_ok && g4_ok
}
