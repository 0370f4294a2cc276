//! Certificates that `μ ∈ M({μ^{-1}, μ^{2g-1}λ})` in the knot group of a 1-bridge braid knot.

use serde::{Deserialize, Serialize};

use super::certificate::Certificate;
use super::engine::{Engine, Fact};
use super::witness::{Eq, RelFactor};
use crate::braid::{one_bridge_braid, positive_closure_genus};
use crate::error::{Error, Result};
use crate::knotgroup::{gamma_word, lambda_word, mu_word, one_bridge_presentation, GammaData, GroupWord};

/// Which inequality closes the loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `t > b_l`
    Spread,
    /// `t = b_l > 1`
    Concentrated,
    /// `t = 1`
    SingleTurn,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyD {
    pub certificate: Certificate,
    pub branch: Branch,
    pub l: usize,
    pub l_prime: Option<usize>,
    /// `e` in the derived `μ^e ≥ 1`; a root of order `-e` finishes when `e < 0`.
    pub exponent: i64,
}

/// `μ^{-1}` and `μ^{2g-1}λ`.
pub fn property_d_axioms(g: &GammaData, genus: i64) -> Vec<GroupWord> {
    let mu = mu_word();
    vec![mu.inverse(), mu.pow(2 * genus - 1).mul(&lambda_word(g))]
}

pub fn property_d_certificate(omega: i64, t: i64, b: i64) -> Result<Certificate> {
    Ok(property_d_derivation(omega, t, b)?.certificate)
}

pub(crate) fn ys(n: usize) -> GroupWord {
    GroupWord::gen("y").pow(n as i64)
}

pub(crate) fn mu_pow(k: i64) -> GroupWord {
    mu_word().pow(k)
}

/// Shared pieces of the derivation over `⟨x, y | r_λ⟩`.
struct Setup<'e, 'p> {
    e: &'e mut Engine<'p>,
    g: GammaData,
    gs: Vec<GroupWord>,
    counts: Vec<usize>,
    mu: GroupWord,
    y: GroupWord,
    eq_y: Eq,
    x_ge_y: Fact,
}

impl Setup<'_, '_> {
    fn gt(&self, k: usize) -> GroupWord {
        self.g.g_tilde(k)
    }

    fn factor(&self, k: usize) -> GroupWord {
        self.mu.conj(&self.gs[k - 1])
    }

    /// `g̃_{i+1} ≥ y g̃_i`.
    fn step_down(&mut self, i: usize) -> Result<Fact> {
        let (hi, gi) = (self.gt(i + 1), self.gt(i));
        if hi == self.y.mul(&gi) {
            self.e.refl(&hi)
        } else {
            let f = self.x_ge_y.clone();
            self.e.ctx(&GroupWord::identity(), &f, &gi)
        }
    }

    /// `y·tail ≥ (∏_{k kept} g_k μ g_k^{-1})·tail`, factors in increasing `k`.
    fn keep_factors(&mut self, keep: &[usize], tail: &GroupWord) -> Result<Fact> {
        let eq = self.eq_y.ctx(&GroupWord::identity(), tail);
        let mut chain = vec![self.e.eq_fact(&eq)?];
        let mut cur: Vec<usize> = (1..=self.gs.len()).collect();
        while let Some(p) = cur.iter().rposition(|k| !keep.contains(k)) {
            let k = cur[p];
            let u = GroupWord::product(&cur[..=p].iter().map(|&j| self.factor(j)).collect::<Vec<_>>());
            let mut v = GroupWord::product(&cur[p + 1..].iter().map(|&j| self.factor(j)).collect::<Vec<_>>());
            v = v.mul(tail);
            let c = self.gs[k - 1].clone();
            chain.push(self.e.insert_axiom(&u, &c, 0, &v)?);
            cur.remove(p);
        }
        self.e.trans(&chain.iter().collect::<Vec<_>>())
    }

    /// Replaces, left to right, every occurrence of `from` among the first `upto` tokens using
    /// `f: from ≥ to`.
    fn replace_tokens(&mut self, tokens: &mut [GroupWord], upto: usize, from: &GroupWord, f: &Fact) -> Result<Vec<Fact>> {
        let mut out = Vec::new();
        for p in 0..upto {
            if &tokens[p] != from {
                continue;
            }
            let u = GroupWord::product(&tokens[..p]);
            let v = GroupWord::product(&tokens[p + 1..]);
            out.push(self.e.ctx(&u, f, &v)?);
            tokens[p] = f.lo.clone();
        }
        Ok(out)
    }
}

pub fn property_d_derivation(omega: i64, t: i64, b: i64) -> Result<PropertyD> {
    let braid = one_bridge_braid(omega, t, b)?;
    let genus = positive_closure_genus(&braid)?.genus;
    if genus == 0 {
        return Err(Error::domain(format!("B({omega},{t},{b}) closes to the unknot")));
    }
    let pres = one_bridge_presentation(omega, t, b)?;
    let g = gamma_word(omega, t, b)?;
    let s = property_d_axioms(&g, genus);
    let mut engine = Engine::new(&pres, s);
    let e = &mut engine;
    let (w, tu) = (omega as usize, t as usize);
    let mu = mu_word();
    let y = GroupWord::gen("y");
    let one = GroupWord::identity();

    let gs: Vec<GroupWord> = (1..=tu).map(|i| g.g(i)).collect();
    let counts: Vec<usize> = (0..w)
        .map(|i| gs.iter().filter(|gi| **gi == g.g_tilde(i)).count())
        .collect();
    if counts.iter().sum::<usize>() != tu {
        return Err(e.fail("some g_i is not a proper suffix of y g_0"));
    }

    let ax0 = e.axiom(0)?;
    let mu_ge_1 = e.fact(mu.clone(), one.clone(), ax0)?;
    let ax1 = e.axiom(1)?;
    let l_word = mu_pow(2 * genus - 1).mul(&lambda_word(&g));
    let one_ge_l = e.fact(one.clone(), l_word, ax1)?;
    let x_ge_y = e.ctx(&one, &mu_ge_1, &y)?;
    let y_word = GroupWord::product(&(1..=tu).map(|k| mu.conj(&gs[k - 1])).collect::<Vec<_>>());
    let eq_y = Eq {
        from: y.clone(),
        to: y_word,
        z: vec![RelFactor {
            conj: y.inverse(),
            relator: 0,
            inverse: true,
        }],
    };
    eq_y.validate(&pres)?;

    let mut st = Setup {
        e,
        g: g.clone(),
        gs: gs.clone(),
        counts: counts.clone(),
        mu: mu.clone(),
        y: y.clone(),
        eq_y,
        x_ge_y,
    };
    let g1 = gs[0].clone();
    let l = g1.len();
    let f1 = mu.conj(&g1);

    // μ^{t+ω} ≥ y g_0
    let n_exp = omega * t + b;
    let c = 2 * genus - 1;
    let top = st.e.ctx(&mu_pow(-c), &one_ge_l, &mu_pow(n_exp))?;

    let (branch, l_prime, final_fact) = if t == 1 {
        let f = single_turn(&mut st, &top, &g1)?;
        (Branch::SingleTurn, None, f)
    } else {
        // g̃_{i+1} ≥ g_1 μ g_1^{-1} g̃_i μ^{b_i}, i ≠ l
        let mut ineq: Vec<Option<Fact>> = vec![None; w];
        for (i, slot) in ineq.iter_mut().enumerate() {
            if i == l {
                continue;
            }
            let gi = st.gt(i);
            let a = st.step_down(i)?;
            let keep: Vec<usize> = (1..=tu).filter(|&k| k == 1 || gs[k - 1] == gi).collect();
            let kf = st.keep_factors(&keep, &gi)?;
            *slot = Some(st.e.trans(&[&a, &kf])?);
        }
        let descend = |st: &mut Setup, from: usize, to: usize| -> Result<(Fact, GroupWord, usize)> {
            let mut f = st.e.refl(&st.gt(from))?;
            let (mut p, mut sum) = (one.clone(), 0usize);
            for k in (to + 1..=from).rev() {
                let i = k - 1;
                let step = st.e.ctx(&p, ineq[i].as_ref().unwrap(), &mu_pow(sum as i64))?;
                f = st.e.trans(&[&f, &step])?;
                p = p.mul(&f1);
                sum += st.counts[i];
            }
            Ok((f, p, sum))
        };
        // g_1 ≥ μ^{l + S1}
        let (f, _, s1) = descend(&mut st, l, 0)?;
        let g1_ge = st.e.ctx(&mu_pow(s1 as i64).mul(&g1.inverse()), &f, &mu_pow(-(s1 as i64)).mul(&g1))?;
        // y g_0 ≥ μ^{ω-1+S1} g_1^{-1} y g_1 μ^{S2}
        let (f, p, s2) = descend(&mut st, w, l + 1)?;
        let a_l = st.step_down(l)?;
        let via_l = st.e.ctx(&p, &a_l, &mu_pow(s2 as i64))?;
        let rest = GroupWord::product([&mu_pow((w - l - 1) as i64), &g1.inverse(), &y, &g1, &mu_pow(s2 as i64)]);
        let via_g1 = st.e.ctx(&one, &g1_ge, &rest)?;
        let k0 = st.e.trans(&[&top, &f, &via_l, &via_g1])?;
        // g_1 μ^{b_l+1} ≥ y g_1
        let k = st.e.ctx(
            &g1.mul(&mu_pow(-((w - 1 + s1) as i64))),
            &k0,
            &mu_pow(-(s2 as i64)),
        )?;
        let bl = counts[l];
        if tu > bl {
            let need = tu - bl;
            let lp = (0..w)
                .find(|&i| i != l && (w - 1) * counts[i] >= need)
                .ok_or_else(|| st.e.fail("no index l' with (ω-1) b_l' ≥ t - b_l"))?;
            let gp = st.gt(lp);
            let kstar = (1..=tu).find(|&k| gs[k - 1] == gp).unwrap();
            let j = (1..kstar).filter(|&k| gs[k - 1] == g1).count();
            let keep: Vec<usize> = (1..=tu).filter(|&k| gs[k - 1] == g1 || k == kstar).collect();
            let pick = st.keep_factors(&keep, &g1)?;
            let k2 = st.e.trans(&[&k, &pick])?;
            // g_1 μ g_1^{-1} ≥ g̃_{l'} μ g̃_{l'}^{-1}
            let swap = st.e.ctx(
                &GroupWord::product([&g1, &mu_pow(-(j as i64)), &g1.inverse()]),
                &k2,
                &mu_pow(-((bl - j) as i64)).mul(&g1.inverse()),
            )?;
            // y g̃_{l'} ≥ g̃_{l'} μ^{b_l + b_l'}
            let keep: Vec<usize> = (1..=tu).filter(|&k| gs[k - 1] == g1 || gs[k - 1] == gp).collect();
            let mut chain = vec![st.keep_factors(&keep, &gp)?];
            let mut tokens: Vec<GroupWord> = keep.iter().map(|&k| st.factor(k)).collect();
            tokens.push(gp.clone());
            chain.extend(st.replace_tokens(&mut tokens, keep.len(), &f1, &swap)?);
            let d = st.e.trans(&chain.iter().collect::<Vec<_>>())?;
            let f = close_loop(&mut st, &top, &gp, &d, (bl + counts[lp]) as i64)?;
            (Branch::Spread, Some(lp), f)
        } else {
            let eq = st.eq_y.ctx(&one, &g1);
            let d = st.e.eq_fact(&eq)?;
            let f = close_loop(&mut st, &top, &g1, &d, t)?;
            (Branch::Concentrated, None, f)
        }
    };

    let hi = &final_fact.hi;
    let exponent = match hi.letters().first() {
        Some(l) if l.gen.name() == "y" => -(hi.len() as i64) / 2,
        _ => hi.len() as i64 / 2,
    };
    if final_fact.lo != one || final_fact.hi != mu_pow(exponent) {
        return Err(st.e.fail(format!("derivation ended at {} ≥ {}", final_fact.hi, final_fact.lo)));
    }
    let root = if exponent < 0 {
        st.e.root(final_fact.node, (-exponent) as u32, &mu)?
    } else if exponent == 0 {
        st.e.invert_to_axiom(final_fact.node, 0)?
    } else {
        return Err(st.e.fail(format!("derivation ended at μ^{exponent} ≥ 1 with a positive exponent")));
    };
    let certificate = engine.finish(root, &mu)?;
    log::debug!("B({omega},{t},{b}): {branch:?}, {} nodes", certificate.len());
    Ok(PropertyD {
        certificate,
        branch,
        l,
        l_prime,
        exponent,
    })
}

/// From `y g̃ ≥ g̃ μ^m` and `μ^{t+ω} ≥ y g_0`: `μ^{t+ω-ωm} ≥ 1`.
fn close_loop(st: &mut Setup, top: &Fact, gt: &GroupWord, d: &Fact, m: i64) -> Result<Fact> {
    let w = st.g.omega as usize;
    let one = GroupWord::identity();
    let mut chain = vec![st.e.ctx(gt, top, &one)?];
    let full = gt.mul(&st.y).mul(&st.g.g0);
    let mut tokens: Vec<GroupWord> = full.letters()[..w]
        .iter()
        .map(|&l| GroupWord::from_letters([l]))
        .collect();
    tokens.push(gt.clone());
    let x = GroupWord::gen("x");
    let xy = st.x_ge_y.clone();
    chain.extend(st.replace_tokens(&mut tokens, w, &x, &xy)?);
    for k in 0..w {
        let f = st.e.ctx(&ys(w - k - 1), d, &mu_pow(k as i64 * m))?;
        chain.push(f);
    }
    let f = st.e.trans(&chain.iter().collect::<Vec<_>>())?;
    st.e.ctx(&gt.inverse(), &f, &mu_pow(-(w as i64) * m))
}

/// `t = 1`: `y ≥ μ`, `x ≥ μ^2`, hence `μ^{ω+1} ≥ y g_0 ≥ μ^{ω+b}`.
fn single_turn(st: &mut Setup, top: &Fact, g1: &GroupWord) -> Result<Fact> {
    let w = st.g.omega as usize;
    let one = GroupWord::identity();
    let (x, y, mu) = (GroupWord::gen("x"), st.y.clone(), st.mu.clone());
    let mut chain = vec![st.e.ctx(g1, top, &one)?];
    let full = g1.mul(&y).mul(&st.g.g0);
    let mut tokens: Vec<GroupWord> = full.letters()[..w]
        .iter()
        .map(|&l| GroupWord::from_letters([l]))
        .collect();
    let j0 = tokens
        .iter()
        .position(|tk| *tk == x)
        .ok_or_else(|| st.e.fail("t = 1 with no x letter"))?;
    tokens.push(g1.clone());
    let xy = st.x_ge_y.clone();
    for p in j0 + 1..w {
        if tokens[p] == x {
            let u = GroupWord::product(&tokens[..p]);
            let v = GroupWord::product(&tokens[p + 1..]);
            chain.push(st.e.ctx(&u, &xy, &v)?);
            tokens[p] = y.clone();
        }
    }
    // y^{j0} μ y^{ω-j0} g_1 with every y replaced by g_1 μ g_1^{-1}
    let mut toks: Vec<GroupWord> = std::iter::repeat_n(y.clone(), j0)
        .chain([mu.clone()])
        .chain(std::iter::repeat_n(y.clone(), w - j0))
        .chain([g1.clone()])
        .collect();
    let mut eq = Eq::refl(GroupWord::product(&toks));
    for p in 0..toks.len() {
        if toks[p] != y {
            continue;
        }
        let u = GroupWord::product(&toks[..p]);
        let v = GroupWord::product(&toks[p + 1..]);
        eq = eq.then(&st.eq_y.ctx(&u, &v))?;
        toks[p] = st.eq_y.to.clone();
    }
    chain.push(st.e.eq_fact(&eq)?);
    let f = st.e.trans(&chain.iter().collect::<Vec<_>>())?;
    let f = st.e.ctx(
        &mu_pow(-(j0 as i64)).mul(&g1.inverse()),
        &f,
        &mu_pow(-((w - j0) as i64)),
    )?;
    let f = st.e.ctx(g1, &f, &g1.inverse())?;
    let eq_fact = st.e.eq_fact(&st.eq_y.clone())?;
    let y_ge_mu = st.e.trans(&[&eq_fact, &f])?;
    let x_ge_mu2 = st.e.ctx(&mu, &y_ge_mu, &one)?;

    let mut chain = vec![top.clone()];
    let mut tokens: Vec<GroupWord> = y
        .mul(&st.g.g0)
        .letters()
        .iter()
        .map(|&l| GroupWord::from_letters([l]))
        .collect();
    let n = tokens.len();
    chain.extend(st.replace_tokens(&mut tokens, n, &x, &x_ge_mu2)?);
    chain.extend(st.replace_tokens(&mut tokens, n, &y, &y_ge_mu)?);
    let f = st.e.trans(&chain.iter().collect::<Vec<_>>())?;
    let b = st.g.b;
    st.e.ctx(&mu_pow(-(w as i64 + b)), &f, &one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::closure_components;
    use crate::ordercert::check_certificate;

    fn accepted(omega: i64, t: i64, b: i64) -> PropertyD {
        let d = property_d_derivation(omega, t, b).unwrap_or_else(|e| panic!("B({omega},{t},{b}): {e}"));
        let pres = one_bridge_presentation(omega, t, b).unwrap();
        check_certificate(&pres, &d.certificate.s, &mu_word(), &d.certificate).unwrap();
        d
    }

    #[test]
    fn examples() {
        accepted(2, 3, 0);
        accepted(3, 2, 0);
        let d = accepted(5, 3, 2);
        assert_eq!(d.branch, Branch::Spread);
        assert!(matches!(property_d_certificate(3, 1, 0), Err(Error::Domain(_))));
        assert!(matches!(property_d_certificate(3, 2, 1), Err(Error::NotAKnot(2))));
    }

    #[test]
    fn axioms_match_spec_shape() {
        let g = gamma_word(2, 3, 0).unwrap();
        let s = property_d_axioms(&g, 1);
        assert_eq!(s[0], mu_word().inverse());
        assert_eq!(s[1], mu_word().mul(&lambda_word(&g)));
    }

    #[test]
    fn grid() {
        let mut seen = std::collections::BTreeMap::new();
        for omega in 2..=6 {
            for t in 1..=6 {
                for b in 0..=omega - 2 {
                    let br = one_bridge_braid(omega, t, b).unwrap();
                    if closure_components(&br) != 1 || (t == 1 && b == 0) {
                        continue;
                    }
                    let d = accepted(omega, t, b);
                    seen.entry(d.branch).or_insert((omega, t, b));
                    assert!(d.exponent < 0, "B({omega},{t},{b}) exponent {}", d.exponent);
                    assert!(d.certificate.len() < 100_000);
                }
            }
        }
        assert!(seen.contains_key(&Branch::Spread) && seen.contains_key(&Branch::SingleTurn));
        assert!(!seen.contains_key(&Branch::Concentrated));
    }

    // g_1, …, g_min(t,ω) sit on distinct meridian points, so t = b_l forces t = 1
    #[test]
    fn leading_suffixes_are_distinct() {
        for omega in 2..=7 {
            for t in 2..=9 {
                for b in 0..=omega - 2 {
                    let Ok(g) = gamma_word(omega, t, b) else { continue };
                    let n = t.min(omega) as usize;
                    let firsts: std::collections::HashSet<_> = (1..=n).map(|i| g.g(i)).collect();
                    assert_eq!(firsts.len(), n);
                    let bl = (1..=t as usize).filter(|&i| g.g(i) == g.g(1)).count();
                    assert!(bl < t as usize);
                }
            }
        }
    }
}
