//! Knot groups of 1-bridge braid closures and their satellites, Dehn fillings, abelianization
//! and Fox-calculus Alexander polynomials.

pub mod fox;
pub mod gamma;
pub mod presentation;
pub mod snf;
pub mod word;

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;

use crate::braid::one_bridge_braid;
use crate::error::{Error, Result};
use crate::invariants::alexander_from_braid;

pub use fox::fox_alexander;
pub use gamma::{gamma_word, GammaData};
pub use presentation::Presentation;
pub use snf::{abelianization, Abelianization};
pub use word::{Gen, GroupWord, Letter};

pub fn mu_word() -> GroupWord {
    word::w("x y^-1")
}

/// `r_λ = y ∏_{i=t..1} g_i μ^{-1} g_i^{-1}`.
pub fn r_lambda(g: &GammaData) -> GroupWord {
    let mu_inv = mu_word().inverse();
    let mut r = GroupWord::gen("y");
    for i in (1..=g.t as usize).rev() {
        r = r.mul(&mu_inv.conj(&g.g(i)));
    }
    r
}

/// `r_μ = ∏_{j=1..ω} h_j μ h_j^{-1}`.
pub fn r_mu(g: &GammaData) -> GroupWord {
    let mu = mu_word();
    GroupWord::product(&(1..=g.omega as usize).map(|j| mu.conj(&g.h(j))).collect::<Vec<_>>())
}

/// `λ = y g_0 μ^{-(ωt+b)}`.
pub fn lambda_word(g: &GammaData) -> GroupWord {
    GroupWord::gen("y").mul(&g.g0).mul(&mu_word().pow(-(g.omega * g.t + g.b)))
}

fn check_homology(pres: &Presentation) -> Result<()> {
    let probe = [pres.peripheral("mu")?.clone(), pres.peripheral("lambda")?.clone()];
    let ab = abelianization(pres, &probe)?;
    if !ab.is_infinite_cyclic() || ab.probe_images[0][0].abs() != 1 || ab.probe_images[1][0] != 0 {
        return Err(Error::internal(format!(
            "abelianization {:?} with mu, lambda images {:?}",
            ab.invariant_factors, ab.probe_images
        )));
    }
    Ok(())
}

fn build_one_bridge(g: &GammaData) -> Result<Presentation> {
    let rl = r_lambda(g);
    let peripherals = BTreeMap::from([
        ("mu".to_string(), mu_word()),
        ("lambda".to_string(), lambda_word(g)),
        ("r_mu".to_string(), r_mu(g)),
        ("r_lambda".to_string(), rl.clone()),
    ]);
    Presentation::new(vec![Gen::new("x"), Gen::new("y")], vec![rl], peripherals)
}

/// `⟨x, y | r_λ⟩` with peripheral words; validated against homology and the Burau Alexander polynomial.
pub fn one_bridge_presentation(omega: i64, t: i64, b: i64) -> Result<Presentation> {
    let g = gamma_word(omega, t, b)?;
    let pres = build_one_bridge(&g)?;
    check_homology(&pres)?;
    let fox = fox_alexander(&pres)?;
    let burau = alexander_from_braid(&one_bridge_braid(omega, t, b)?)?;
    if fox != burau {
        return Err(Error::internal(format!(
            "B({omega},{t},{b}): Fox calculus gives {fox}, Burau gives {burau}"
        )));
    }
    Ok(pres)
}

fn fresh_name(base: &str, taken: &[Gen]) -> Gen {
    (1..)
        .map(|k| Gen::new(&format!("{base}_{k}")))
        .find(|g| !taken.contains(g))
        .unwrap()
}

/// Renaming applied to companion generators: `x ↦ x_k`, `y ↦ y_k` with the smallest unused `k ≥ 1`.
pub fn satellite_renaming(companion: &Presentation) -> HashMap<Gen, Gen> {
    let mut taken: Vec<Gen> = companion.generators().to_vec();
    taken.extend([Gen::new("x"), Gen::new("y")]);
    let mut map = HashMap::new();
    for base in ["x", "y"] {
        let g = Gen::new(base);
        if companion.generators().contains(&g) {
            let fresh = fresh_name(base, &taken);
            taken.push(fresh);
            map.insert(g, fresh);
        }
    }
    map
}

/// Knot group of the satellite with pattern `B(ω,t,b)` and the given companion.
///
/// Relators: the companion's (renamed), then `μ_K^{-1} r_μ`, then `λ_K^{-1} r_λ`. Peripherals are
/// the pattern's `mu`, `lambda`, `r_mu`, `r_lambda`, plus the renamed companion `mu_K`, `lambda_K`.
pub fn satellite_presentation(companion: &Presentation, omega: i64, t: i64, b: i64) -> Result<Presentation> {
    let g = gamma_word(omega, t, b)?;
    let map = satellite_renaming(companion);
    let mu_k = companion.peripheral("mu")?.rename(&map);
    let lambda_k = companion.peripheral("lambda")?.rename(&map);
    let mut gens: Vec<Gen> = companion
        .generators()
        .iter()
        .map(|c| *map.get(c).unwrap_or(c))
        .collect();
    gens.extend([Gen::new("x"), Gen::new("y")]);
    let (rm, rl) = (r_mu(&g), r_lambda(&g));
    let mut relators: Vec<GroupWord> = companion.relators().iter().map(|r| r.rename(&map)).collect();
    relators.push(mu_k.inverse().mul(&rm));
    relators.push(lambda_k.inverse().mul(&rl));
    let peripherals = BTreeMap::from([
        ("mu".to_string(), mu_word()),
        ("lambda".to_string(), lambda_word(&g)),
        ("r_mu".to_string(), rm),
        ("r_lambda".to_string(), rl),
        ("mu_K".to_string(), mu_k),
        ("lambda_K".to_string(), lambda_k),
    ]);
    let pres = Presentation::new(gens, relators, peripherals)?;
    check_homology(&pres)?;
    Ok(pres)
}

/// Adds the relator `μ^p λ^q`.
pub fn dehn_fill(pres: &Presentation, p: i64, q: i64) -> Result<Presentation> {
    let mu = pres.peripheral("mu")?;
    let lambda = pres.peripheral("lambda")?;
    if p.gcd(&q) != 1 {
        return Err(Error::domain(format!("slope {p}/{q} is not in lowest terms")));
    }
    pres.with_relator(mu.pow(p).mul(&lambda.pow(q)))
}

#[cfg(test)]
mod tests {
    use super::word::w;
    use super::*;
    use crate::braid::closure_components;

    #[test]
    fn one_bridge_examples() {
        let p = one_bridge_presentation(3, 2, 0).unwrap();
        assert_eq!(p.generators(), &[Gen::new("x"), Gen::new("y")]);
        assert_eq!(p.peripheral("lambda").unwrap(), &w("y^3").mul(&mu_word().pow(-6)));
        let g = gamma_word(3, 2, 0).unwrap();
        let expect = GroupWord::product(&[
            GroupWord::gen("y"),
            mu_word().inverse().conj(&g.g(2)),
            mu_word().inverse().conj(&g.g(1)),
        ]);
        assert_eq!(p.relators(), &[expect]);
        let tref: crate::invariants::LaurentPoly = "1 - t + t^2".parse().unwrap();
        assert_eq!(fox_alexander(&one_bridge_presentation(2, 3, 0).unwrap()).unwrap(), tref);
    }

    #[test]
    fn homology_images() {
        let p = one_bridge_presentation(3, 2, 0).unwrap();
        let probe = [
            p.peripheral("lambda").unwrap().clone(),
            p.peripheral("mu").unwrap().clone(),
            p.peripheral("r_mu").unwrap().clone(),
            w("y"),
        ];
        let ab = abelianization(&p, &probe).unwrap();
        assert_eq!(ab.invariant_factors, vec![0]);
        assert_eq!(ab.probe_images[0], vec![0]);
        let m = ab.probe_images[1][0];
        assert_eq!(ab.probe_images[2][0], 3 * m);
        // [y] = t[mu]
        assert_eq!(ab.probe_images[3][0], 2 * m);
    }

    #[test]
    fn oracle_grid() {
        for omega in 2..=7 {
            for t in 1..=7 {
                for b in 0..=omega - 2 {
                    let br = one_bridge_braid(omega, t, b).unwrap();
                    if closure_components(&br) != 1 {
                        assert!(matches!(one_bridge_presentation(omega, t, b), Err(Error::NotAKnot(_))));
                        continue;
                    }
                    let p = one_bridge_presentation(omega, t, b).unwrap();
                    assert_eq!(fox_alexander(&p).unwrap(), alexander_from_braid(&br).unwrap());
                    for fill in (-9..=9).filter(|&k| k != 0) {
                        let f = dehn_fill(&p, fill, 1).unwrap();
                        assert_eq!(abelianization(&f, &[]).unwrap().order(), Some(fill.abs()));
                    }
                }
            }
        }
    }

    #[test]
    fn fills() {
        let p = one_bridge_presentation(2, 3, 0).unwrap();
        assert_eq!(abelianization(&dehn_fill(&p, 7, 1).unwrap(), &[]).unwrap().order(), Some(7));
        assert_eq!(abelianization(&dehn_fill(&p, 1, 0).unwrap(), &[]).unwrap().order(), Some(1));
        let f = dehn_fill(&p, 0, 1).unwrap();
        assert_eq!(f.relators().last().unwrap(), p.peripheral("lambda").unwrap());
        assert!(matches!(dehn_fill(&p, 4, 2), Err(Error::Domain(_))));
        let bare = Presentation::new(vec![Gen::new("x")], vec![], BTreeMap::new()).unwrap();
        assert!(matches!(dehn_fill(&bare, 1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn satellites() {
        let tref = one_bridge_presentation(2, 3, 0).unwrap();
        let sat = satellite_presentation(&tref, 3, 5, 0).unwrap();
        assert_eq!(sat.generators().len(), 4);
        assert_eq!(sat.relators().len(), 3);
        assert_eq!(sat.generators()[0], Gen::new("x_1"));
        let dk = fox_alexander(&tref).unwrap();
        let dp = alexander_from_braid(&one_bridge_braid(3, 5, 0).unwrap()).unwrap();
        let expect = dp.mul(&dk.substitute_power(3)).unwrap().normalize();
        assert_eq!(fox_alexander(&sat).unwrap(), expect);
        // the (3,4,1) pattern closes to a 2-component link
        assert!(matches!(satellite_presentation(&tref, 3, 4, 1), Err(Error::NotAKnot(2))));
        assert!(matches!(satellite_presentation(&tref, 3, 4, 2), Err(Error::Domain(_))));
        let twice = satellite_presentation(&sat, 2, 27, 0).unwrap();
        assert_eq!(twice.generators().len(), 6);
        assert!(twice.generators().contains(&Gen::new("x_2")));
    }

    #[test]
    fn satellite_alexander_grid() {
        let comps = [(2, 3, 0), (3, 4, 0), (5, 3, 2)];
        let pats = [(3, 5, 0), (3, 7, 1), (5, 3, 2), (2, 5, 0), (4, 5, 1), (4, 7, 2), (5, 7, 1)];
        for &(cw, ct, cb) in &comps {
            let c = one_bridge_presentation(cw, ct, cb).unwrap();
            let dk = fox_alexander(&c).unwrap();
            for &(w0, t0, b0) in &pats {
                if closure_components(&one_bridge_braid(w0, t0, b0).unwrap()) != 1 {
                    continue;
                }
                let s = satellite_presentation(&c, w0, t0, b0).unwrap();
                let dp = alexander_from_braid(&one_bridge_braid(w0, t0, b0).unwrap()).unwrap();
                let expect = dp.mul(&dk.substitute_power(w0)).unwrap().normalize();
                assert_eq!(fox_alexander(&s).unwrap(), expect, "companion ({cw},{ct},{cb}) pattern ({w0},{t0},{b0})");
            }
        }
    }
}
