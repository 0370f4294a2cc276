//! Certificates for satellites whose pattern is a 1-bridge braid, built on a companion certificate.

use super::certificate::{check_certificate, Certificate, Node};
use super::engine::{Engine, Fact};
use super::property_d::mu_pow;
use super::witness::{Eq, RelFactor};
use crate::braid::{one_bridge_braid, positive_closure_genus};
use crate::error::{Error, Result};
use crate::knotgroup::{
    gamma_word, lambda_word, mu_word, r_lambda, r_mu, satellite_presentation, satellite_renaming, GroupWord,
    Presentation,
};

/// `μ^{-1}` and `μ^{2g-1}λ` read from the presentation's `mu` and `lambda` peripherals.
pub fn peripheral_axioms(pres: &Presentation, genus: i64) -> Result<Vec<GroupWord>> {
    let mu = pres.peripheral("mu")?;
    let lambda = pres.peripheral("lambda")?;
    Ok(vec![mu.inverse(), mu.pow(2 * genus - 1).mul(lambda)])
}

/// Genus of the satellite: `g(P) + ω g(K)`.
pub fn satellite_genus(companion_genus: i64, omega: i64, t: i64, b: i64) -> Result<i64> {
    let gp = positive_closure_genus(&one_bridge_braid(omega, t, b)?)?.genus;
    Ok(gp + omega * companion_genus)
}

fn relator_eq(from: GroupWord, to: GroupWord, relator: usize) -> Eq {
    Eq {
        from,
        to,
        z: vec![RelFactor {
            conj: GroupWord::identity(),
            relator,
            inverse: true,
        }],
    }
}

pub fn satellite_certificate(
    companion_cert: &Certificate,
    companion: &Presentation,
    companion_genus: i64,
    omega: i64,
    t: i64,
    b: i64,
) -> Result<Certificate> {
    if companion_genus < 1 {
        return Err(Error::domain(format!("companion genus {companion_genus} must be at least 1")));
    }
    let ck = 2 * companion_genus - 1;
    if t < omega * ck {
        return Err(Error::domain(format!(
            "slope t/ω = {t}/{omega} is below 2g(K) - 1 = {ck}"
        )));
    }
    let s_k = peripheral_axioms(companion, companion_genus)?;
    let mu_k = companion.peripheral("mu")?.clone();
    check_certificate(companion, &s_k, &mu_k, companion_cert)?;

    let sat = satellite_presentation(companion, omega, t, b)?;
    let g = gamma_word(omega, t, b)?;
    let genus = satellite_genus(companion_genus, omega, t, b)?;
    let mu = mu_word();
    let s = vec![mu.inverse(), mu.pow(2 * genus - 1).mul(&lambda_word(&g))];
    let mut e = Engine::new(&sat, s.clone());
    let (w, tu) = (omega as usize, t as usize);
    let one = GroupWord::identity();
    let y = GroupWord::gen("y");

    let ax0 = e.axiom(0)?;
    let mu_ge_1 = e.fact(mu.clone(), one.clone(), ax0)?;
    let ax1 = e.axiom(1)?;
    let one_ge_l = e.fact(one.clone(), s[1].clone(), ax1)?;
    let x_ge_y = e.ctx(&one, &mu_ge_1, &y)?;

    let (rm, rl) = (r_mu(&g), r_lambda(&g));
    let rr = rl.mul(&rm.pow(ck));
    let first = (w as i64 * ck) as usize + 1;
    let c_k = |k: usize| mu.inverse().conj(&g.g(k));
    let expect = y.mul(&GroupWord::product(&(first..=tu).rev().map(c_k).collect::<Vec<_>>()));
    if rr != expect {
        return Err(e.fail(format!("r_λ r_μ^{ck} does not telescope: {rr}")));
    }
    let counts: Vec<usize> = (0..w)
        .map(|i| (first..=tu).filter(|&k| g.g(k) == g.g_tilde(i)).count())
        .collect();

    // g̃_{i+1} ≥ R g̃_i μ^{b_i}
    let mut ineq: Vec<Fact> = Vec::with_capacity(w);
    for i in 0..w {
        let (hi, gi) = (g.g_tilde(i + 1), g.g_tilde(i));
        let a = if hi == y.mul(&gi) {
            e.refl(&hi)?
        } else {
            e.ctx(&one, &x_ge_y, &gi)?
        };
        let order: Vec<usize> = (first..=tu).rev().collect();
        let mut cur: Vec<usize> = order.iter().copied().filter(|&k| g.g(k) == gi).collect();
        let mut chain = Vec::new();
        for (pos, &k) in order.iter().enumerate() {
            if g.g(k) == gi {
                continue;
            }
            let at = cur.iter().filter(|&&j| order.iter().position(|&o| o == j).unwrap() < pos).count();
            let u = y.mul(&GroupWord::product(&cur[..at].iter().map(|&j| c_k(j)).collect::<Vec<_>>()));
            let v = GroupWord::product(&cur[at..].iter().map(|&j| c_k(j)).collect::<Vec<_>>());
            chain.push(e.insert_axiom(&u, &g.g(k), 0, &v)?);
            cur.insert(at, k);
        }
        let tail = gi.mul(&mu_pow(counts[i] as i64));
        let mut facts = vec![a];
        if chain.is_empty() {
            facts.push(e.refl(&rr.mul(&tail))?);
        } else {
            let keep = e.trans(&chain.iter().collect::<Vec<_>>())?;
            facts.push(e.ctx(&one, &keep, &tail)?);
        }
        ineq.push(e.trans(&facts.iter().collect::<Vec<_>>())?);
    }

    let n_exp = omega * t + b;
    let c = 2 * genus - 1;
    let sum: usize = counts.iter().sum();
    if n_exp - c != sum as i64 {
        return Err(e.fail(format!("ωt + b - (2g - 1) = {} but the b_i sum to {sum}", n_exp - c)));
    }
    let mut chain = vec![e.ctx(&mu_pow(-c), &one_ge_l, &mu_pow(n_exp))?];
    let (mut p, mut acc) = (one.clone(), 0usize);
    for k in (1..=w).rev() {
        chain.push(e.ctx(&p, &ineq[k - 1], &mu_pow(acc as i64))?);
        p = p.mul(&rr);
        acc += counts[k - 1];
    }
    let f = e.trans(&chain.iter().collect::<Vec<_>>())?;
    let f = e.ctx(&one, &f, &mu_pow(-(sum as i64)))?;
    let r_node = e.root(f.node, omega as u32, &rr)?;

    let map = satellite_renaming(companion);
    let (nk, relators) = (companion.relators().len(), sat.relators().len());
    let (rel_mu, rel_lambda) = (nk, nk + 1);
    debug_assert_eq!(relators, nk + 2);
    let mu_kr = mu_k.rename(&map);
    let lambda_kr = companion.peripheral("lambda")?.rename(&map);
    let eq_mu = relator_eq(rm.clone(), mu_kr.clone(), rel_mu);
    let eq_lambda = relator_eq(rl.clone(), lambda_kr.clone(), rel_lambda);

    // R ↦ λ_K μ_K^{c_K}, then conjugate to μ_K^{c_K} λ_K
    let mut eq = eq_lambda.ctx(&one, &rm.pow(ck));
    for k in 0..ck {
        let next = eq_mu.ctx(&lambda_kr.mul(&mu_kr.pow(k)), &rm.pow(ck - k - 1));
        eq = eq.then(&next)?;
    }
    let d1 = e.rewrite(r_node, &eq)?;
    let d1 = e.conj(d1, &lambda_kr.inverse())?;
    // r_μ^{-1} ↦ μ_K^{-1}
    let conjs: Vec<usize> = (1..=w)
        .rev()
        .map(|j| e.conj(ax0, &g.h(j)))
        .collect::<Result<_>>()?;
    let d0 = e.mul(&conjs)?;
    let d0 = e.rewrite(d0, &eq_mu.invert_words())?;
    for (k, d) in [(0, d0), (1, d1)] {
        if e.word(d) != &s_k[k].rename(&map) {
            return Err(e.fail(format!("substitute for companion axiom {k} has word {}", e.word(d))));
        }
    }

    let mut remap = Vec::with_capacity(companion_cert.nodes.len());
    for node in &companion_cert.nodes {
        let id = match node {
            Node::Axiom { index } => [d0, d1][*index],
            Node::Identity => e.identity()?,
            Node::Mul { args } => e.add(Node::Mul {
                args: args.iter().map(|&a| remap[a]).collect(),
            })?,
            Node::Conj { child, by } => e.add(Node::Conj {
                child: remap[*child],
                by: by.rename(&map),
            })?,
            Node::Root {
                child,
                n,
                claimed,
                witness,
            } => e.add(Node::Root {
                child: remap[*child],
                n: *n,
                claimed: claimed.rename(&map),
                witness: witness.rename(&map),
            })?,
            Node::Rewrite { child, target, witness } => e.add(Node::Rewrite {
                child: remap[*child],
                target: target.rename(&map),
                witness: witness.rename(&map),
            })?,
        };
        remap.push(id);
    }
    let mk = remap[companion_cert.root];
    let rmu_node = e.rewrite(mk, &eq_mu.inverse())?;
    let mut args = vec![rmu_node];
    args.extend(conjs[..w - 1].iter().copied());
    let h1 = e.mul(&args)?;
    let root = e.conj(h1, &g.h(1).inverse())?;
    let cert = e.finish(root, &mu)?;
    log::debug!("satellite B({omega},{t},{b}) over a genus-{companion_genus} companion: {} nodes", cert.len());
    Ok(cert)
}
