//! Left normal form `Δ^k A_1 ⋯ A_r` in the braid group; two words are equal iff their
//! normal forms coincide.
//!
//! Simple elements are stored as permutations `p` with `p[j]` the final position of the
//! strand that starts at position `j`, letters read left to right.

use super::BraidWord;

type Perm = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    strands: usize,
    delta_power: i64,
    factors: Vec<Perm>,
}

fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

fn delta(n: usize) -> Perm {
    (0..n as u8).rev().collect()
}

fn inverse(p: &Perm) -> Perm {
    let mut inv = vec![0u8; p.len()];
    for (j, &im) in p.iter().enumerate() {
        inv[im as usize] = j as u8;
    }
    inv
}

/// `p · σ_{i+1}`.
fn append_letter(p: &mut Perm, i: usize) {
    for im in p.iter_mut() {
        if *im as usize == i {
            *im = (i + 1) as u8;
        } else if *im as usize == i + 1 {
            *im = i as u8;
        }
    }
}

/// `σ_{i+1}^{-1} · p`.
fn strip_first_letter(p: &mut Perm, i: usize) {
    p.swap(i, i + 1);
}

/// Conjugation by `Δ`: `σ_i ↦ σ_{n-i}`.
fn tau(p: &Perm) -> Perm {
    let n = p.len();
    (0..n).map(|j| (n - 1 - p[n - 1 - j] as usize) as u8).collect()
}

/// Moves letters from the front of `b` to the end of `a` until the pair is left-weighted.
fn left_weight(a: &mut Perm, b: &mut Perm) -> bool {
    let n = a.len();
    let mut changed = false;
    loop {
        let inv_a = inverse(a);
        let found = (0..n - 1).find(|&i| b[i] > b[i + 1] && inv_a[i] < inv_a[i + 1]);
        match found {
            Some(i) => {
                append_letter(a, i);
                strip_first_letter(b, i);
                changed = true;
            }
            None => return changed,
        }
    }
}

impl NormalForm {
    pub fn identity(strands: usize) -> Self {
        NormalForm {
            strands,
            delta_power: 0,
            factors: Vec::new(),
        }
    }

    pub fn of(w: &BraidWord) -> Self {
        let n = w.strands();
        let mut nf = NormalForm::identity(n);
        for &l in w.letters() {
            let i = l.unsigned_abs() as usize - 1;
            if l > 0 {
                let mut s = identity(n);
                append_letter(&mut s, i);
                nf.push_simple(s);
            } else {
                // σ_i^{-1} = Δ^{-1} (Δ σ_i^{-1}), and A Δ^{-1} = Δ^{-1} τ(A).
                nf.delta_power -= 1;
                for f in nf.factors.iter_mut() {
                    *f = tau(f);
                }
                let mut x = delta(n);
                append_letter(&mut x, i);
                nf.push_simple(x);
            }
        }
        nf
    }

    fn push_simple(&mut self, s: Perm) {
        self.factors.push(s);
        loop {
            let mut changed = false;
            for j in (1..self.factors.len()).rev() {
                let (left, right) = self.factors.split_at_mut(j);
                if left_weight(&mut left[j - 1], &mut right[0]) {
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let id = identity(self.strands);
        let d = delta(self.strands);
        self.factors.retain(|f| *f != id);
        while self.factors.first() == Some(&d) {
            self.factors.remove(0);
            self.delta_power += 1;
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn delta_power(&self) -> i64 {
        self.delta_power
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }
}
