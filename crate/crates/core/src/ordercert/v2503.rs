//! The cusped manifold v2503: its one-relator group, the fixed-point lemma hypotheses, the
//! certificate that `λ ∈ M({λ^{-1}})`, and the torsion of its `0`-filling.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::certificate::{check_certificate, Certificate};
use super::engine::{Engine, Fact};
use super::fixed_point::fixed_point_hypotheses;
use super::witness::{check_equality_witness, Eq, EqualityWitness, RelFactor};
use crate::error::{Error, Result};
use crate::knotgroup::word::w;
use crate::knotgroup::{abelianization, dehn_fill, Gen, GroupWord, Presentation};

pub const RELATOR: &str = "a^2 b^-2 a b^-2 a^2 b a^2 b a b a^2 b";
pub const MU: &str = "b^-2 a b^-2 a b^-1";
pub const LAMBDA: &str = "a^-2 b^-1 a^-2 b";
/// `μ^{-1}` as a positive word.
pub const MU_INVERSE: &str = "b a b a^2 b a b a^2 b a^2";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A checked equality `from = to` over a named presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessedEquality {
    pub from: GroupWord,
    pub to: GroupWord,
    pub witness: EqualityWitness,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct V2503Bundle {
    pub presentation: Presentation,
    pub filled: Presentation,
    pub mu_inverse: WitnessedEquality,
    pub certificate: Certificate,
    /// Certificates of the intermediate facts, keyed by check name.
    pub lemmas: BTreeMap<String, Certificate>,
    pub torsion: Vec<WitnessedEquality>,
    pub checks: Vec<NamedCheck>,
}

impl V2503Bundle {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&NamedCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

pub fn v2503_presentation() -> Presentation {
    let peripherals = BTreeMap::from([("mu".to_string(), w(MU)), ("lambda".to_string(), w(LAMBDA))]);
    Presentation::new(vec![Gen::new("a"), Gen::new("b")], vec![w(RELATOR)], peripherals)
        .expect("bundled presentation is well formed")
}

fn check(name: &str, r: Result<String>) -> NamedCheck {
    match r {
        Ok(detail) => NamedCheck {
            name: name.into(),
            passed: true,
            detail,
        },
        Err(e) => NamedCheck {
            name: name.into(),
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn witnessed(pres: &Presentation, eq: &Eq) -> Result<WitnessedEquality> {
    let witness = eq.witness(pres)?;
    check_equality_witness(pres, &eq.from, &eq.to, &witness)?;
    Ok(WitnessedEquality {
        from: eq.from.clone(),
        to: eq.to.clone(),
        witness,
    })
}

/// Splits the relator as `a^2 b^-2 a b^-2 · (a^2 b a^2) · b a b · (a^2 b a^2) · a^-2`.
fn relator_tokens() -> Vec<GroupWord> {
    ["a^2 b^-2 a b^-2", "a^2 b a^2", "b a b", "a^2 b a^2", "a^-2"]
        .iter()
        .map(|s| w(s))
        .collect()
}

/// `λ ≥ 1` gives `b ≥ a^2 b a^2`, then `a^2 ≥ 1`, then `1 ≥ λ`.
struct Derivation {
    b_ge: Fact,
    a2_ge_1: Fact,
    one_ge_lambda: Fact,
}

fn derive(e: &mut Engine) -> Result<Derivation> {
    let one = GroupWord::identity();
    let ax = e.axiom(0)?;
    let lambda_ge_1 = e.fact(w(LAMBDA), one.clone(), ax)?;
    let b_ge = e.ctx(&w("a^2 b a^2"), &lambda_ge_1, &one)?;
    if b_ge.hi != w("b") {
        return Err(e.fail(format!("expected b ≥ a^2 b a^2, got {} ≥ {}", b_ge.hi, b_ge.lo)));
    }
    let mut tokens = relator_tokens();
    for p in [1, 3] {
        tokens[p] = w("b");
    }
    let mut chain = Vec::new();
    for p in [3, 1] {
        let u = GroupWord::product(&tokens[..p]);
        let v = GroupWord::product(&tokens[p + 1..]);
        chain.push(e.ctx(&u, &b_ge, &v)?);
        tokens[p] = b_ge.lo.clone();
    }
    let r_is_1 = Eq::relator(e.pres(), 0).inverse();
    chain.push(e.eq_fact(&r_is_1)?);
    let f = e.trans(&chain.iter().collect::<Vec<_>>())?;
    let f = e.ctx(&w("a^-2"), &f, &w("a^2"))?;
    let a2_ge_1 = e.ctx(&w("b^2"), &f, &w("b^-2"))?;
    let inv = e.invert(&a2_ge_1)?;
    let s1 = e.ctx(&one, &inv, &w("b^-1 a^-2 b"))?;
    let s2 = e.ctx(&w("b^-1"), &inv, &w("b"))?;
    let one_ge_lambda = e.trans(&[&s2, &s1])?;
    Ok(Derivation {
        b_ge,
        a2_ge_1,
        one_ge_lambda,
    })
}

/// `a^2 b a^2 = b` and `a^2 = 1` in the `0`-filling.
fn torsion_eqs(filled: &Presentation) -> Result<(Eq, Eq)> {
    let sub = Eq {
        from: w("a^2 b a^2"),
        to: w("b"),
        z: vec![RelFactor {
            conj: GroupWord::identity(),
            relator: 1,
            inverse: false,
        }],
    };
    sub.validate(filled)?;
    let mut tokens = relator_tokens();
    let mut eq = Eq::relator(filled, 0);
    for p in [1, 3] {
        let u = GroupWord::product(&tokens[..p]);
        let v = GroupWord::product(&tokens[p + 1..]);
        eq = eq.then(&sub.ctx(&u, &v))?;
        tokens[p] = w("b");
    }
    let a2 = eq.ctx(&w("a^-2"), &w("a^2")).ctx(&w("b^2"), &w("b^-2")).inverse();
    if a2.from != w("a^2") || !a2.to.is_identity() {
        return Err(Error::internal(format!("torsion chain ends at {} = {}", a2.from, a2.to)));
    }
    a2.validate(filled)?;
    Ok((sub, a2))
}

pub fn v2503_bundle() -> Result<V2503Bundle> {
    let pres = v2503_presentation();
    let mu = w(MU);
    let lambda = w(LAMBDA);
    let mut checks = Vec::new();

    let mu_eq = Eq {
        from: mu.inverse(),
        to: w(MU_INVERSE),
        z: vec![RelFactor {
            conj: w("a^-2"),
            relator: 0,
            inverse: false,
        }],
    };
    let mu_inverse = witnessed(&pres, &mu_eq)?;
    checks.push(check(
        "mu_inverse_word",
        check_equality_witness(&pres, &mu_inverse.from, &mu_inverse.to, &mu_inverse.witness)
            .map(|_| format!("{} = {} ({} steps)", mu_inverse.from, mu_inverse.to, mu_inverse.witness.len())),
    ));

    let (a, b) = (Gen::new("a"), Gen::new("b"));
    let positive = w(MU_INVERSE);
    for (name, g1, g2, g4) in [
        ("fixed_point_b", b, a, mu.clone()),
        ("fixed_point_a", a, b, mu.inverse()),
    ] {
        let ok = fixed_point_hypotheses(&positive, &g4, g1, g2);
        checks.push(NamedCheck {
            name: name.into(),
            passed: ok,
            detail: format!("g1 = {g1}, g2 = {g2}, g3 = {positive}, g4 = {g4}"),
        });
    }

    let s = vec![lambda.inverse()];
    let mut e = Engine::new(&pres, s.clone());
    let d = derive(&mut e)?;
    let certificate = e.finish(d.one_ge_lambda.node, &lambda)?;
    let mut lemmas = BTreeMap::new();
    for (name, f) in [("a2ba2_le_b", &d.b_ge), ("a2_ge_1", &d.a2_ge_1)] {
        let target = f.hi.inverse().mul(&f.lo);
        let c = e.finish(f.node, &target)?;
        checks.push(check(
            name,
            check_certificate(&pres, &s, &target, &c).map(|_| format!("{} ≥ {} ({} nodes)", f.hi, f.lo, c.len())),
        ));
        lemmas.insert(name.to_string(), c);
    }
    checks.push(check(
        "lambda_in_monoid",
        check_certificate(&pres, &s, &lambda, &certificate).map(|_| format!("{} nodes", certificate.len())),
    ));

    let filled = dehn_fill(&pres, 0, 1)?;
    let (sub, a2) = torsion_eqs(&filled)?;
    let torsion = vec![witnessed(&filled, &sub)?, witnessed(&filled, &a2)?];
    for (name, t) in [("filling_a2ba2_eq_b", &torsion[0]), ("filling_a2_eq_1", &torsion[1])] {
        checks.push(check(
            name,
            check_equality_witness(&filled, &t.from, &t.to, &t.witness)
                .map(|_| format!("{} = {} ({} steps)", t.from, t.to, t.witness.len())),
        ));
    }
    let ab = abelianization(&filled, &[w("a")])?;
    let image = &ab.probe_images[0];
    let nontrivial = ab
        .invariant_factors
        .iter()
        .zip(image)
        .any(|(&d, &c)| d == 2 && c % 2 != 0);
    checks.push(NamedCheck {
        name: "filling_a_has_order_2".into(),
        passed: nontrivial,
        detail: format!("H_1 factors {:?}, image of a {:?}", ab.invariant_factors, image),
    });

    Ok(V2503Bundle {
        presentation: pres,
        filled,
        mu_inverse,
        certificate,
        lemmas,
        torsion,
        checks,
    })
}
