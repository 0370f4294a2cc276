//! Shared by the robustness tests and the acceptance harness: single-mutation corruption of the
//! golden artifacts, replayed through the CLI verifier, and random Markov moves.

#![allow(dead_code)]

pub mod oracle;

use std::fs;
use std::path::{Path, PathBuf};

use braidforge::braid::{BraidWord, NormalForm};
use braidforge::cli::run;
use braidforge::invariants::alexander_from_braid;
use braidforge::knotgroup::{Gen, GroupWord, Letter, Presentation};
use braidforge::markov::{apply_move, Move, MoveTrace};
use braidforge::ordercert::{Certificate, Node, WitnessStep, WitnessedEquality};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/golden")
}

pub enum Artifact {
    Cert(Certificate),
    Trace(MoveTrace),
    Witness(WitnessedEquality),
}

pub struct Item {
    pub path: PathBuf,
    pub pres: Option<PathBuf>,
    pub gens: Vec<Gen>,
    pub artifact: Artifact,
    oracle_pres: Option<oracle::Pres>,
}

fn read<T: serde::de::DeserializeOwned>(p: &Path) -> T {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

/// Every golden certificate, trace and equality witness.
pub fn corpus() -> Vec<Item> {
    let g = golden_dir();
    let mut items = Vec::new();
    for sub in ["property_d", "satellite"] {
        let mut files: Vec<PathBuf> = fs::read_dir(g.join(sub)).unwrap().map(|e| e.unwrap().path()).collect();
        files.sort();
        for f in files {
            let name = f.file_name().unwrap().to_str().unwrap().to_string();
            if let Some(stem) = name.strip_suffix(".cert.json") {
                let pres = f.with_file_name(format!("{stem}.pres.json"));
                let p: Presentation = read(&pres);
                items.push(Item {
                    artifact: Artifact::Cert(read(&f)),
                    path: f,
                    gens: p.generators().to_vec(),
                    oracle_pres: oracle::Pres::from_json(&read(&pres)),
                    pres: Some(pres),
                });
            }
        }
    }
    let v = g.join("v2503");
    let vp = v.join("presentation.json");
    let vf = v.join("filled.json");
    let ab = vec![Gen::new("a"), Gen::new("b")];
    for (file, pres, cert) in [
        ("certificate.json", &vp, true),
        ("a2_ge_1.json", &vp, true),
        ("a2ba2_le_b.json", &vp, true),
        ("mu_inverse.json", &vp, false),
        ("torsion_0.json", &vf, false),
        ("torsion_1.json", &vf, false),
    ] {
        let f = v.join(file);
        items.push(Item {
            artifact: if cert {
                Artifact::Cert(read(&f))
            } else {
                Artifact::Witness(read(&f))
            },
            path: f,
            oracle_pres: oracle::Pres::from_json(&read(pres)),
            pres: Some(pres.clone()),
            gens: ab.clone(),
        });
    }
    let mut traces: Vec<PathBuf> = fs::read_dir(g.join("traces")).unwrap().map(|e| e.unwrap().path()).collect();
    traces.sort();
    for f in traces {
        items.push(Item {
            artifact: Artifact::Trace(read(&f)),
            path: f,
            pres: None,
            gens: Vec::new(),
            oracle_pres: None,
        });
    }
    items
}

fn mutate_word(rng: &mut StdRng, w: &GroupWord, gens: &[Gen]) -> GroupWord {
    let mut l = w.letters().to_vec();
    match rng.gen_range(0..3) {
        0 if !l.is_empty() => {
            l.remove(rng.gen_range(0..l.len()));
        }
        1 if !l.is_empty() => {
            let i = rng.gen_range(0..l.len());
            l[i] = l[i].inverse();
        }
        _ => {
            let g = *gens.choose(rng).unwrap();
            let e = if rng.gen() { 1 } else { -1 };
            l.insert(rng.gen_range(0..=l.len()), Letter::new(g, e));
        }
    }
    GroupWord::from_letters(l)
}

fn nudge(rng: &mut StdRng, x: usize) -> usize {
    if x == 0 || rng.gen() {
        x + rng.gen_range(1..=2)
    } else {
        x - 1
    }
}

fn mutate_steps(rng: &mut StdRng, steps: &mut Vec<WitnessStep>, gens: &[Gen], relators: usize) {
    if steps.is_empty() || rng.gen_range(0..6) == 0 {
        let pos = rng.gen_range(0..4);
        steps.insert(
            rng.gen_range(0..=steps.len()),
            WitnessStep::FreeInsert {
                pos,
                gen: *gens.choose(rng).unwrap(),
                sign: 1,
            },
        );
        return;
    }
    let i = rng.gen_range(0..steps.len());
    match rng.gen_range(0..4) {
        0 => {
            steps.remove(i);
        }
        1 => {
            let s = steps[i].clone();
            steps.insert(i, s);
        }
        _ => match &mut steps[i] {
            WitnessStep::FreeCancel { pos } => *pos = nudge(rng, *pos),
            WitnessStep::FreeInsert { pos, gen, sign } => match rng.gen_range(0..3) {
                0 => *pos = nudge(rng, *pos),
                1 => *sign = -*sign,
                _ => *gen = *gens.choose(rng).unwrap(),
            },
            WitnessStep::RelatorInsert { relator, inverse, pos } | WitnessStep::RelatorDelete { relator, inverse, pos } => {
                match rng.gen_range(0..3) {
                    0 => *pos = nudge(rng, *pos),
                    1 => *inverse = !*inverse,
                    _ => *relator = (*relator + 1) % (relators + 1),
                }
            }
        },
    }
}

fn mutate_cert(rng: &mut StdRng, c: &Certificate, gens: &[Gen]) -> (String, Certificate) {
    let mut m = c.clone();
    let n = m.nodes.len();
    let what = match rng.gen_range(0..10) {
        0 => {
            m.root = rng.gen_range(0..n + 1);
            "root"
        }
        1 => {
            m.target = mutate_word(rng, &m.target, gens);
            "target"
        }
        2 => {
            let i = rng.gen_range(0..m.s.len());
            m.s[i] = mutate_word(rng, &m.s[i], gens);
            "S"
        }
        _ => {
            let i = rng.gen_range(0..n);
            match &mut m.nodes[i] {
                Node::Axiom { index } => {
                    *index = nudge(rng, *index);
                    "axiom index"
                }
                Node::Identity => {
                    m.nodes[i] = Node::Axiom { index: 0 };
                    "identity to axiom"
                }
                Node::Mul { args } => {
                    let j = rng.gen_range(0..args.len());
                    match rng.gen_range(0..4) {
                        0 if args.len() > 1 => {
                            args.remove(j);
                        }
                        1 => args.insert(j, args[j]),
                        2 if args.len() > 1 => {
                            let k = (j + 1) % args.len();
                            args.swap(j, k);
                        }
                        _ => args[j] = rng.gen_range(0..i.max(1)),
                    }
                    "mul args"
                }
                Node::Conj { child, by } => {
                    if rng.gen_range(0..4) == 0 {
                        *child = rng.gen_range(0..i.max(1));
                    } else {
                        *by = mutate_word(rng, by, gens);
                    }
                    "conj"
                }
                Node::Root { n: k, claimed, witness, .. } => {
                    match rng.gen_range(0..3) {
                        0 => *k = nudge(rng, *k as usize) as u32,
                        1 => *claimed = mutate_word(rng, claimed, gens),
                        _ => mutate_steps(rng, &mut witness.steps, gens, 2),
                    }
                    "root"
                }
                Node::Rewrite { target, witness, .. } => {
                    if rng.gen() {
                        *target = mutate_word(rng, target, gens);
                    } else {
                        mutate_steps(rng, &mut witness.steps, gens, 2);
                    }
                    "rewrite"
                }
            }
        }
    };
    (what.to_string(), m)
}

fn mutate_letters(rng: &mut StdRng, l: &mut Vec<i32>, strands: usize) {
    let top = (strands as i32 - 1).max(1);
    match rng.gen_range(0..3) {
        0 if !l.is_empty() => {
            l.remove(rng.gen_range(0..l.len()));
        }
        1 if !l.is_empty() => {
            let i = rng.gen_range(0..l.len());
            l[i] = -l[i];
        }
        _ => {
            let x = rng.gen_range(1..=top) * if rng.gen() { 1 } else { -1 };
            l.insert(rng.gen_range(0..=l.len()), x);
        }
    }
    l.retain(|&x| x.unsigned_abs() < strands as u32 && x != 0);
}

fn mutate_trace(rng: &mut StdRng, t: &MoveTrace) -> (String, MoveTrace) {
    let mut m = t.clone();
    let what = match rng.gen_range(0..8) {
        0 => {
            let mut l = m.start.letters().to_vec();
            mutate_letters(rng, &mut l, m.start.strands());
            m.start = BraidWord::new(m.start.strands(), l).unwrap();
            "start"
        }
        1 => {
            let mut l = m.end.letters().to_vec();
            mutate_letters(rng, &mut l, m.end.strands());
            m.end = BraidWord::new(m.end.strands(), l).unwrap();
            "end"
        }
        _ if m.steps.is_empty() => {
            m.steps.push(Move::StabilizePos);
            "insert move"
        }
        2 => {
            let i = rng.gen_range(0..m.steps.len());
            m.steps.remove(i);
            "delete move"
        }
        3 => {
            let i = rng.gen_range(0..m.steps.len());
            let s = m.steps[i].clone();
            m.steps.insert(i, s);
            "duplicate move"
        }
        _ => {
            let i = rng.gen_range(0..m.steps.len());
            let strands = t.replay().unwrap()[i].strands();
            match &mut m.steps[i] {
                Move::BraidRelationAt { pos } | Move::FarCommuteAt { pos } | Move::FreeCancelAt { pos } => {
                    *pos = nudge(rng, *pos)
                }
                Move::FreeInsertAt { pos, letter } => {
                    if rng.gen() {
                        *pos = nudge(rng, *pos)
                    } else {
                        *letter = -*letter
                    }
                }
                Move::ConjugateBy { word } | Move::CoarseEquality { target: word } => {
                    mutate_letters(rng, word, strands)
                }
                Move::StabilizePos => m.steps[i] = Move::StabilizeNeg,
                Move::StabilizeNeg => m.steps[i] = Move::StabilizePos,
                Move::Destabilize => m.steps[i] = Move::StabilizePos,
            }
            "edit move"
        }
    };
    (what.to_string(), m)
}

fn mutate_witness(rng: &mut StdRng, w: &WitnessedEquality, gens: &[Gen]) -> (String, WitnessedEquality) {
    let mut m = w.clone();
    let what = match rng.gen_range(0..6) {
        0 => {
            m.from = mutate_word(rng, &m.from, gens);
            "from"
        }
        1 => {
            m.to = mutate_word(rng, &m.to, gens);
            "to"
        }
        _ => {
            mutate_steps(rng, &mut m.witness.steps, gens, 2);
            "steps"
        }
    };
    (what.to_string(), m)
}

/// Braid-group elements along a replay, with repeats of consecutive equal elements dropped.
fn element_path(t: &MoveTrace) -> Option<Vec<(usize, NormalForm)>> {
    let mut path: Vec<(usize, NormalForm)> = Vec::new();
    for w in t.replay().ok()? {
        let e = (w.strands(), NormalForm::of(&w));
        if path.last() != Some(&e) {
            path.push(e);
        }
    }
    Some(path)
}

/// A trace mutant that still replays through the same elements between the same end words is
/// the same derivation, not a corruption.
fn same_element_path(orig: &MoveTrace, m: &MoveTrace) -> bool {
    orig.start == m.start && orig.end == m.end && m.replay().map(|w| w.last() == Some(&m.end)).unwrap_or(false)
        && element_path(orig) == element_path(m)
}

#[derive(Debug, Default)]
pub struct FuzzReport {
    /// Mutants the independent check finds invalid.
    pub corruptions: usize,
    /// Mutants that still encode a valid derivation.
    pub benign: usize,
    /// Draws that reproduced the source exactly and were discarded.
    pub unchanged: usize,
    /// Exit codes on corruptions.
    pub exit_codes: [usize; 4],
    /// Corruptions the verifier accepted.
    pub accepted: Vec<String>,
    /// Benign mutants the verifier rejected.
    pub disagreements: Vec<String>,
}

/// Draws single mutations until `count` corruptions have been replayed with `braidforge verify`.
pub fn fuzz(count: usize, seed: u64) -> FuzzReport {
    let items = corpus();
    let mut rng = StdRng::seed_from_u64(seed);
    let dir = tempfile::tempdir().unwrap();
    let mut rep = FuzzReport::default();
    while rep.corruptions < count {
        let item = items.choose(&mut rng).unwrap();
        let (what, orig, json) = match &item.artifact {
            Artifact::Cert(c) => {
                let (what, m) = mutate_cert(&mut rng, c, &item.gens);
                (what, serde_json::to_string(c).unwrap(), serde_json::to_string(&m).unwrap())
            }
            Artifact::Trace(t) => {
                let (what, m) = mutate_trace(&mut rng, t);
                (what, serde_json::to_string(t).unwrap(), serde_json::to_string(&m).unwrap())
            }
            Artifact::Witness(w) => {
                let (what, m) = mutate_witness(&mut rng, w, &item.gens);
                (what, serde_json::to_string(w).unwrap(), serde_json::to_string(&m).unwrap())
            }
        };
        if json == orig {
            rep.unchanged += 1;
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let valid = match (&item.artifact, &item.oracle_pres) {
            (Artifact::Trace(t), _) => same_element_path(t, &serde_json::from_value(value).unwrap()),
            (Artifact::Cert(_), Some(p)) => oracle::certificate_valid(p, &value),
            (Artifact::Witness(_), Some(p)) => oracle::witness_valid(p, &value),
            _ => unreachable!("certificates and witnesses carry a presentation"),
        };
        let f = dir.path().join("mutant.json");
        fs::write(&f, &json).unwrap();
        let mut args = vec!["braidforge".to_string(), "verify".into(), f.to_str().unwrap().into()];
        if let Some(p) = &item.pres {
            args.push("--pres".into());
            args.push(p.to_str().unwrap().into());
        }
        let code = run(args).code();
        let label = format!("{} ({what})", item.path.display());
        if valid {
            rep.benign += 1;
            if code != 0 {
                rep.disagreements.push(label);
            }
        } else {
            rep.corruptions += 1;
            rep.exit_codes[code as usize] += 1;
            if code == 0 {
                rep.accepted.push(label);
            }
        }
    }
    rep
}

fn random_braid(rng: &mut StdRng) -> BraidWord {
    let n = rng.gen_range(2..=5);
    loop {
        let len = rng.gen_range(1..=10);
        let l: Vec<i32> = (0..len)
            .map(|_| rng.gen_range(1..n as i32) * if rng.gen_bool(0.8) { 1 } else { -1 })
            .collect();
        let w = BraidWord::new(n, l).unwrap();
        if braidforge::braid::closure_components(&w) == 1 {
            return w;
        }
    }
}

fn random_move(rng: &mut StdRng, w: &BraidWord) -> Move {
    let len = w.len().max(1);
    let n = w.strands() as i32;
    match rng.gen_range(0..8) {
        0 => Move::BraidRelationAt { pos: rng.gen_range(0..len) },
        1 => Move::FarCommuteAt { pos: rng.gen_range(0..len) },
        2 => Move::FreeCancelAt { pos: rng.gen_range(0..len) },
        3 if n > 1 => Move::FreeInsertAt {
            pos: rng.gen_range(0..=w.len()),
            letter: rng.gen_range(1..n) * if rng.gen() { 1 } else { -1 },
        },
        4 if n > 1 => Move::ConjugateBy {
            word: (0..rng.gen_range(1..=3))
                .map(|_| rng.gen_range(1..n) * if rng.gen() { 1 } else { -1 })
                .collect(),
        },
        5 if n < 7 => {
            if rng.gen() {
                Move::StabilizePos
            } else {
                Move::StabilizeNeg
            }
        }
        _ => Move::Destabilize,
    }
}

#[derive(Debug, Default)]
pub struct MarkovReport {
    pub applied: usize,
    pub inapplicable: usize,
    pub changed: Vec<String>,
}

/// Applies random moves (skipping ones that do not apply) until `count` have been applied,
/// checking the Alexander polynomial after each.
pub fn random_markov(count: usize, seed: u64) -> MarkovReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut rep = MarkovReport::default();
    let mut w = random_braid(&mut rng);
    let mut delta = alexander_from_braid(&w).unwrap();
    while rep.applied < count {
        if rep.applied % 50 == 0 || w.len() > 40 {
            w = random_braid(&mut rng);
            delta = alexander_from_braid(&w).unwrap();
        }
        let mv = random_move(&mut rng, &w);
        let Ok(next) = apply_move(&w, &mv) else {
            rep.inapplicable += 1;
            continue;
        };
        rep.applied += 1;
        let d = alexander_from_braid(&next).unwrap();
        if d != delta {
            rep.changed.push(format!("{w} --{mv:?}--> {next}: {delta} vs {d}"));
        }
        w = next;
    }
    rep
}
