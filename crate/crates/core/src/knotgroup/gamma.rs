//! The boundary arc γ of a 1-bridge braid closure and the words `g_0`, `g_i`, `h_j` read off it.
//!
//! The closure is modelled on a torus of slope `α = (t+β)/ω`: the `ω-1` crossings of γ with the
//! bridge disks sit at heights `frac(kα)` and the crossing is with `D_x` exactly when that height
//! lies below the bridge width `β`. Longitude points are the `t` crossings of the height-`θ*` line
//! with the strand; meridian points the `ω` crossings of a nearly vertical segment.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::word::{Gen, GroupWord, Letter};
use crate::braid::{closure_components, one_bridge_braid};
use crate::error::{Error, Result};

type Q = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaData {
    pub omega: i64,
    pub t: i64,
    pub b: i64,
    pub g0: GroupWord,
    /// Start index in `g0` of `g_1, …, g_t`.
    pub longitude_marks: Vec<usize>,
    /// Start index in `g0` of `h_1, …, h_ω`.
    pub meridian_marks: Vec<usize>,
}

impl GammaData {
    fn suffix_from(&self, start: usize) -> GroupWord {
        GroupWord::from_letters(self.g0.letters()[start..].iter().copied())
    }

    /// `g_i`, `1 ≤ i ≤ t`.
    pub fn g(&self, i: usize) -> GroupWord {
        self.suffix_from(self.longitude_marks[i - 1])
    }

    /// `h_j`, `1 ≤ j ≤ ω`.
    pub fn h(&self, j: usize) -> GroupWord {
        self.suffix_from(self.meridian_marks[j - 1])
    }

    /// Suffix of `y·g_0` of length `k`, `0 ≤ k ≤ ω`.
    pub fn g_tilde(&self, k: usize) -> GroupWord {
        GroupWord::gen("y").mul(&self.g0).suffix(k)
    }

    fn validate(&self) -> Result<()> {
        let (x, y) = (Gen::new("x"), Gen::new("y"));
        let xs = self.g0.letters().iter().filter(|l| l.gen == x).count() as i64;
        let ys = self.g0.letters().iter().filter(|l| l.gen == y).count() as i64;
        if xs != self.b || ys != self.omega - self.b - 1 || !self.g0.letters().iter().all(|l| l.exp == 1) {
            return Err(Error::internal(format!("g0 = {} has the wrong letter counts", self.g0)));
        }
        let w = self.omega as usize;
        for i in 1..=self.t as usize {
            let j = (i - 1) % w + 1;
            if self.longitude_marks[i - 1] != self.meridian_marks[j - 1] {
                return Err(Error::internal(format!("g_{i} = {} differs from h_{j} = {}", self.g(i), self.h(j))));
            }
        }
        Ok(())
    }
}

fn frac(q: Q) -> Q {
    q - q.floor()
}

fn labels(omega: i64, alpha: Q, beta: Q) -> Vec<bool> {
    (1..omega).map(|k| frac(alpha * k) < beta).collect()
}

/// A bridge width `β ∈ (0,1)` for which exactly `b` crossings hit `D_x`.
fn find_beta(omega: i64, t: i64, b: i64) -> Option<Q> {
    let mut bps: Vec<Q> = vec![Q::from_integer(0), Q::from_integer(1)];
    for k in 1..omega {
        for m in -2 * t - 5..2 * t + 5 {
            bps.push(Q::new(k * t - m * omega, omega - k));
            bps.push(Q::new(m * omega - k * t, k));
        }
    }
    bps.retain(|q| *q >= Q::from_integer(0) && *q <= Q::from_integer(1));
    bps.sort();
    bps.dedup();
    bps.windows(2).map(|p| (p[0] + p[1]) / 2).find(|&beta| {
        let alpha = (Q::from_integer(t) + beta) / omega;
        labels(omega, alpha, beta).iter().filter(|&&l| l).count() as i64 == b
    })
}

pub fn gamma_word(omega: i64, t: i64, b: i64) -> Result<GammaData> {
    let braid = one_bridge_braid(omega, t, b)?;
    let comps = closure_components(&braid);
    if comps != 1 {
        return Err(Error::NotAKnot(comps));
    }
    let beta = find_beta(omega, t, b)
        .ok_or_else(|| Error::internal(format!("no bridge width realises B({omega},{t},{b})")))?;
    let alpha = (Q::from_integer(t) + beta) / omega;
    let lab = labels(omega, alpha, beta);
    let (x, y) = (Gen::new("x"), Gen::new("y"));
    let g0 = GroupWord::from_letters(lab.iter().map(|&is_x| Letter::new(if is_x { x } else { y }, 1)));

    let mut above: Vec<Q> = (1..omega).map(|k| frac(alpha * k)).filter(|&h| h > beta).collect();
    above.push(Q::from_integer(1));
    let theta = (beta + *above.iter().min().unwrap()) / 2;
    let mut ps: Vec<(Q, i64)> = Vec::with_capacity(t as usize);
    for m in 0..t {
        let u = (theta + m) / alpha;
        let seg = u.floor().to_integer();
        if seg >= omega {
            return Err(Error::internal(format!("longitude point {m} falls outside the braid")));
        }
        ps.push((frac(u), seg));
    }
    ps.sort();
    // the first point met along the longitude is P_t
    let mut longitude_marks = vec![0usize; t as usize];
    for (idx, &(_, seg)) in ps.iter().enumerate() {
        longitude_marks[(t as usize) - idx - 1] = seg as usize;
    }

    let eps = Q::new(1, 1000);
    let mut qs: Vec<(Q, i64)> = (0..omega).map(|k| (frac(alpha * (Q::from_integer(k) + eps)), k)).collect();
    qs.sort();
    let segs: Vec<usize> = qs.iter().map(|&(_, k)| k as usize).collect();
    let start = segs
        .iter()
        .position(|&s| s == longitude_marks[0])
        .ok_or_else(|| Error::internal("no meridian point on the segment of g_1"))?;
    let meridian_marks = (0..omega as usize).map(|j| segs[(start + j) % omega as usize]).collect();

    let data = GammaData {
        omega,
        t,
        b,
        g0,
        longitude_marks,
        meridian_marks,
    };
    data.validate()?;
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knotgroup::word::w;

    #[test]
    fn examples() {
        let g = gamma_word(3, 2, 0).unwrap();
        assert_eq!(g.g0, w("y y"));
        let g = gamma_word(5, 3, 2).unwrap();
        assert_eq!(g.g0.exponent_sum(Gen::new("x")), 2);
        assert_eq!(g.g0.exponent_sum(Gen::new("y")), 2);
        assert!(matches!(gamma_word(3, 2, 1), Err(Error::NotAKnot(2))));
        assert_eq!(g.g_tilde(0), GroupWord::identity());
        assert_eq!(g.g_tilde(5), GroupWord::gen("y").mul(&g.g0));
    }

    #[test]
    fn invariants_on_grid() {
        for omega in 2..=7 {
            for t in 1..=7 {
                for b in 0..=omega - 2 {
                    match gamma_word(omega, t, b) {
                        Ok(g) => {
                            for i in 1..=t as usize {
                                let gi = g.g(i);
                                assert_eq!(g.g0.suffix(gi.len()), gi);
                            }
                        }
                        Err(Error::NotAKnot(_)) => {}
                        Err(e) => panic!("B({omega},{t},{b}): {e}"),
                    }
                }
            }
        }
    }
}
