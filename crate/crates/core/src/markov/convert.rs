//! Twisted torus braids `π_{l-1}^n π_{p-1}^q` to 1-bridge braids `B(ω,t,b)`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{verify_trace, MoveTrace, TraceBuilder};
use crate::braid::{ascending_letters, big_pi_letters, one_bridge_braid, pi_letters, BraidWord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConversionResult {
    pub omega: i64,
    pub t: i64,
    pub b: i64,
    pub condition: Condition,
    pub trace: MoveTrace,
}

fn pw(m: usize, s: usize) -> Vec<i32> {
    pi_letters(m).repeat(s)
}

fn cat(parts: &[&[i32]]) -> Vec<i32> {
    parts.concat()
}

fn max_index(w: &[i32]) -> usize {
    w.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
}

/// `P π_m^s S ∼ P π_{m-1}^s (σ_1⋯σ_{s-1}) S`, dropping one strand. `P` and `S` must avoid `σ_m`.
fn destab_step(tb: &mut TraceBuilder, prefix: &[i32], m: usize, s: usize, suffix: &[i32]) -> Result<Vec<i32>> {
    debug_assert!(1 <= s && s <= m && max_index(prefix) < m && max_index(suffix) < m);
    let a = ascending_letters(s - 1);
    let g = cat(&[&pi_letters(m - 1), &a, suffix]);
    tb.equal_to(cat(&[prefix, &pw(m - 1, s - 1), &[m as i32], &g]))?;
    tb.conjugate(g.clone())?;
    tb.destabilize()?;
    tb.conjugate(g.iter().rev().map(|l| -l).collect())?;
    let new_suffix = cat(&[&a, suffix]);
    debug_assert_eq!(tb.current().letters(), cat(&[prefix, &pw(m - 1, s), &new_suffix]));
    Ok(new_suffix)
}

/// Runs [`destab_step`] for `m = from, from-1, …, to+1`; returns the accumulated suffix.
fn destab_chain(tb: &mut TraceBuilder, prefix: &[i32], from: usize, to: usize, s: usize, suffix: &[i32]) -> Result<Vec<i32>> {
    let mut suf = suffix.to_vec();
    for m in (to + 1..=from).rev() {
        suf = destab_step(tb, prefix, m, s, &suf)?;
    }
    Ok(suf)
}

/// `π_b π_{ω-1}^t ∼ π_{t-1}^{ω-b-1} π_t^{b+1}` for `t ≤ b ≤ ω-1`.
fn one_bridge_chain(omega: usize, t: usize, b: usize) -> Result<MoveTrace> {
    debug_assert!(1 <= t && t <= b && b < omega);
    let start = BraidWord::new(omega, cat(&[&pi_letters(b), &pw(omega - 1, t)]))?;
    let mut tb = TraceBuilder::new(start);
    let s1 = destab_chain(&mut tb, &pi_letters(b), omega - 1, b, t, &[])?;
    tb.equal_to(cat(&[&pw(b, t + 1), &s1]))?;
    let s2 = destab_chain(&mut tb, &[], b, t, t + 1, &s1)?;
    debug_assert_eq!(tb.current().letters(), cat(&[&pw(t, t + 1), &s2]));
    tb.conjugate(big_pi_letters(t))?;
    tb.equal_to(cat(&[&pw(t, b), &pw(t - 1, omega - b - 1), &pi_letters(t)]))?;
    tb.conjugate(pw(t, b).iter().rev().map(|l| -l).collect())?;
    tb.equal_to(cat(&[&pw(t - 1, omega - b - 1), &pw(t, b + 1)]))?;
    Ok(tb.finish())
}

/// `X π_{big-1}^{small}` on `big` strands to `X π_{small-1}^{big}` on `small` strands, where `X` is
/// symmetric under the flip of its own block and sits on the low strands.
fn swap_forward(x: &[i32], big: usize, small: usize) -> Result<MoveTrace> {
    let r = max_index(x);
    debug_assert!(small < big && r + 2 <= small);
    let mut tb = TraceBuilder::new(BraidWord::new(big, cat(&[x, &pw(big - 1, small)]))?);
    destab_chain(&mut tb, x, big - 1, small - 1, small, &[])?;
    tb.conjugate(big_pi_letters(small - 1))?;
    tb.conjugate(pw(small - 1, small - 1 - r))?;
    tb.equal_to(cat(&[x, &pw(small - 1, big)]))?;
    Ok(tb.finish())
}

fn swap(x: &[i32], from_strands: usize, to_strands: usize) -> Result<MoveTrace> {
    if to_strands < from_strands {
        swap_forward(x, from_strands, to_strands)
    } else {
        swap_forward(x, to_strands, from_strands)?.reversed()
    }
}

/// `σ_1² π_{p-1}^q ∼ π_2 π_{p-1}^q` using `y = q^{-1} mod p`.
fn sigma_one_squared_chain(p: usize, q: usize, y: usize) -> Result<MoveTrace> {
    let t = pw(p - 1, q);
    let mut tb = TraceBuilder::new(BraidWord::new(p, cat(&[&[1, 1], &t]))?);
    let mut i = 1usize;
    for s in 1..=y {
        let next = (i + q) % p;
        if next == 0 {
            return Err(Error::internal(format!("index sequence hits 0 mod {p} at step {s}")));
        }
        tb.equal_to(cat(&[&[1], &t, &[next as i32]]))?;
        tb.conjugate(vec![next as i32])?;
        if s < y {
            tb.equal_to(cat(&[&[1, next as i32], &t]))?;
        }
        i = next;
    }
    if i != 2 {
        return Err(Error::internal(format!("index sequence ends at {i}, expected 2")));
    }
    tb.equal_to(cat(&[&pi_letters(2), &t]))?;
    Ok(tb.finish())
}

/// `π_{p-3}^{p-2} T ∼ π_{p-2}^{p-3} T` on `n` strands with `T = π_{n-1}^e`, rotating blocks through `T`.
fn block_chain(p: usize, n: usize, e: usize) -> Result<MoveTrace> {
    let t = pw(n - 1, e);
    let shift = |w: &[i32]| -> Result<Vec<i32>> {
        w.iter()
            .map(|&l| match (l as usize + e) % n {
                0 => Err(Error::internal("block shift lands on index 0")),
                j => Ok(j as i32),
            })
            .collect()
    };
    let mut tb = TraceBuilder::new(BraidWord::new(n, cat(&[&pw(p - 3, p - 2), &t]))?);
    for j in 0..p - 3 {
        let pre = cat(&[&pw(p - 2, j), &pw(p - 3, p - 3 - j)]);
        let mut block = pi_letters(p - 3 - j);
        loop {
            let fb = shift(&block)?;
            tb.equal_to(cat(&[&pre, &t, &fb]))?;
            tb.conjugate(fb.clone())?;
            if fb.iter().all(|&l| l as usize >= p) {
                tb.equal_to(cat(&[&pre, &fb, &t]))?;
                block = fb;
            } else {
                break;
            }
        }
        tb.equal_to(cat(&[&pw(p - 2, j + 1), &pw(p - 3, p - 4 - j), &pi_letters(p - 4 - j), &t]))?;
    }
    Ok(tb.finish())
}

/// Condition (a): `π_{p-2}^n π_{p-1}^q ∼ B(n+q, p-1, q-1)` for `q ≥ p`.
fn condition_a(p: usize, q: usize, n: usize) -> Result<(MoveTrace, [usize; 3])> {
    let target = [n + q, p - 1, q - 1];
    let tr = one_bridge_chain(target[0], target[1], target[2])?.reversed()?;
    Ok((tr, target))
}

fn identity_trace(w: BraidWord, target: [usize; 3]) -> (MoveTrace, [usize; 3]) {
    (MoveTrace::empty(w), target)
}

fn join(first: MoveTrace, second: (MoveTrace, [usize; 3])) -> Result<(MoveTrace, [usize; 3])> {
    Ok((first.then(second.0)?, second.1))
}

fn condition_b(p: usize, q: usize, n: usize) -> Result<(MoveTrace, [usize; 3])> {
    let start = BraidWord::new(p, cat(&[&pw(q - 1, n), &pw(p - 1, q)]))?;
    let mut tb = TraceBuilder::new(start);
    if q == 1 {
        destab_chain(&mut tb, &[], p - 1, 1, 1, &[])?;
        return Ok((tb.finish(), [2, 1, 0]));
    }
    destab_chain(&mut tb, &pw(q - 1, n), p - 1, q - 1, q, &[])?;
    tb.conjugate(big_pi_letters(q - 1))?;
    tb.equal_to(pw(q - 1, n + p))?;
    Ok((tb.finish(), [q, p + n, 0]))
}

fn condition_c(p: usize, q: usize) -> Result<(MoveTrace, [usize; 3])> {
    let start = BraidWord::new(p, cat(&[&[1, 1], &pw(p - 1, q)]))?;
    if p == 2 {
        return Ok(identity_trace(start, [2, q + 2, 0]));
    }
    if q <= 2 {
        let mut tb = TraceBuilder::new(start);
        destab_chain(&mut tb, &[1, 1], p - 1, 1, q, &[])?;
        tb.equal_to(vec![1; q + 2])?;
        let omega_t = if q == 1 { [2, 3, 0] } else { [2, p + 2, 0] };
        return Ok((tb.finish(), omega_t));
    }
    let (x, y) = super::coprime_inverses(p as i64, q as i64)?;
    let (strands, exp, inv, pre) = if 2 * y < p as i64 {
        (p, q, y as usize, MoveTrace::empty(start))
    } else {
        debug_assert!(2 * x < q as i64);
        (q, p, x as usize, swap(&[1, 1], p, q)?)
    };
    let mut tr = pre.then(sigma_one_squared_chain(strands, exp, inv)?)?;
    if strands == 3 {
        let mut tb = TraceBuilder::new(tr.end.clone());
        tb.equal_to(pw(2, exp + 1))?;
        tr = tr.then(tb.finish())?;
        return Ok((tr, [3, exp + 1, 0]));
    }
    Ok((tr, [strands, exp, 2]))
}

fn condition_d(p: usize, q: usize) -> Result<(MoveTrace, [usize; 3])> {
    let x = pw(p - 3, p - 2);
    let start = BraidWord::new(p, cat(&[&x, &pw(p - 1, q)]))?;
    if p == 3 {
        return Ok(identity_trace(start, [3, q, 0]));
    }
    if q % p == 1 {
        let tr = block_chain(p, p, q)?;
        return join(tr, condition_a(p, q, p - 3)?);
    }
    let big = q;
    let k = (q + 1) / p;
    let tr = swap(&x, p, big)?.then(block_chain(p, big, p)?)?;
    if k == 1 {
        return Ok((tr, [p - 1, 2 * p - 3, 0]));
    }
    let mut tb = TraceBuilder::new(tr.end.clone());
    destab_chain(&mut tb, &pw(p - 2, p - 3), big - 1, p - 1, p, &[])?;
    let q2 = (k - 1) * p + 1;
    tb.equal_to(cat(&[&pw(p - 2, 2 * p - 4), &pw(p - 1, q2)]))?;
    join(tr.then(tb.finish())?, condition_a(p, q2, 2 * p - 4)?)
}

fn matches_d(p: i64, q: i64, l: i64, n: i64) -> bool {
    l == n && l + 2 == p && q >= p - 1 && ((q > 1 && (q - 1) % p == 0) || (q + 1) % p == 0)
}

/// Converts the closure of `π_{l-1}^n π_{p-1}^q` (on `p` strands) to a 1-bridge braid closure.
pub fn ttk_to_one_bridge(p: i64, q: i64, l: i64, n: i64) -> Result<ConversionResult> {
    if p < 2 || q < 1 || l < 1 || n < 1 || l > p {
        return Err(Error::domain(format!(
            "need p >= 2, q >= 1, n >= 1 and 1 <= l <= p, got (p,q,l,n) = ({p},{q},{l},{n})"
        )));
    }
    if n % l != 0 {
        return Err(Error::domain(format!(
            "the twist exponent n = {n} must be a multiple of l = {l} (n = lm full twists)"
        )));
    }
    let gcd_check = || {
        if p.gcd(&q) != 1 {
            Err(Error::domain(format!("gcd({p},{q}) = {} is not 1", p.gcd(&q))))
        } else {
            Ok(())
        }
    };
    let (pu, qu, nu) = (p as usize, q as usize, n as usize);
    let (condition, (trace, [omega, t, b])) = if l == p - 1 && q >= p {
        (Condition::A, condition_a(pu, qu, nu)?)
    } else if q == l && n % q == 0 {
        gcd_check()?;
        (Condition::B, condition_b(pu, qu, nu)?)
    } else if l == 2 && n == 2 {
        gcd_check()?;
        (Condition::C, condition_c(pu, qu)?)
    } else if matches_d(p, q, l, n) {
        (Condition::D, condition_d(pu, qu)?)
    } else {
        return Err(Error::UnsupportedCase(format!(
            "(p,q,l,n) = ({p},{q},{l},{n}) matches none of the conditions (a)-(d)"
        )));
    };
    let start = BraidWord::new(pu, cat(&[&pw(l as usize - 1, nu), &pw(pu - 1, qu)]))?;
    let (omega, t, b) = (omega as i64, t as i64, b as i64);
    let end = one_bridge_braid(omega, t, b)?;
    if trace.start != start || trace.end != end {
        return Err(Error::internal(format!(
            "trace runs {} -> {}, expected {start} -> {end}",
            trace.start, trace.end
        )));
    }
    verify_trace(&trace).map_err(|e| Error::internal(e.to_string()))?;
    log::debug!("({p},{q},{l},{n}) -> B({omega},{t},{b}) in {} steps", trace.steps.len());
    Ok(ConversionResult {
        omega,
        t,
        b,
        condition,
        trace,
    })
}
