//! A second, deliberately naive validity check for certificates and equality witnesses, written
//! against the JSON encoding alone. The fuzz test uses it to tell corruptions from mutants that
//! still encode a valid derivation.

use serde_json::Value;

type W = Vec<(String, i64)>;

fn word(v: &Value) -> Option<W> {
    v.as_array()?
        .iter()
        .map(|l| Some((l.get(0)?.as_str()?.to_string(), l.get(1)?.as_i64()?)))
        .collect()
}

fn reduce(w: W) -> W {
    let mut out: W = Vec::new();
    for (g, e) in w {
        match out.last() {
            Some((h, f)) if *h == g && *f == -e => {
                out.pop();
            }
            _ => out.push((g, e)),
        }
    }
    out
}

fn inv(w: &W) -> W {
    w.iter().rev().map(|(g, e)| (g.clone(), -e)).collect()
}

fn cat(parts: &[&W]) -> W {
    reduce(parts.iter().flat_map(|w| w.iter().cloned()).collect())
}

pub struct Pres {
    gens: Vec<String>,
    relators: Vec<W>,
}

impl Pres {
    pub fn from_json(v: &Value) -> Option<Pres> {
        Some(Pres {
            gens: v["generators"]
                .as_array()?
                .iter()
                .map(|g| g.as_str().map(String::from))
                .collect::<Option<_>>()?,
            relators: v["relators"].as_array()?.iter().map(word).collect::<Option<_>>()?,
        })
    }

    fn declared(&self, w: &W) -> bool {
        w.iter().all(|(g, e)| self.gens.contains(g) && e.abs() == 1)
    }
}

fn idx(v: &Value) -> Option<usize> {
    v.as_u64().map(|x| x as usize)
}

/// Replays witness steps on `from`; `None` if some step does not apply.
fn replay(p: &Pres, from: &W, steps: &Value) -> Option<W> {
    let mut w = from.clone();
    for s in steps.as_array()? {
        let pos = idx(&s["pos"])?;
        let rel = |s: &Value| -> Option<W> {
            let r = p.relators.get(idx(&s["relator"])?)?;
            Some(if s["inverse"].as_bool()? { inv(r) } else { r.clone() })
        };
        match s["kind"].as_str()? {
            "FreeCancel" => {
                let (a, b) = (w.get(pos)?, w.get(pos + 1)?);
                if a.0 != b.0 || a.1 != -b.1 {
                    return None;
                }
                w.drain(pos..pos + 2);
            }
            "FreeInsert" => {
                let g = s["gen"].as_str()?.to_string();
                let e = s["sign"].as_i64()?;
                if pos > w.len() || e.abs() != 1 || !p.gens.contains(&g) {
                    return None;
                }
                w.splice(pos..pos, [(g.clone(), e), (g, -e)]);
            }
            "RelatorInsert" => {
                let r = rel(s)?;
                if pos > w.len() {
                    return None;
                }
                w.splice(pos..pos, r);
            }
            "RelatorDelete" => {
                let r = rel(s)?;
                if w.get(pos..pos + r.len())? != &r[..] {
                    return None;
                }
                w.drain(pos..pos + r.len());
            }
            _ => return None,
        }
    }
    Some(w)
}

pub fn witness_valid(p: &Pres, v: &Value) -> bool {
    (|| {
        let (from, to) = (word(&v["from"])?, word(&v["to"])?);
        if !p.declared(&from) || !p.declared(&to) {
            return None;
        }
        (replay(p, &from, &v["witness"])? == to).then_some(())
    })()
    .is_some()
}

fn power(w: &W, n: usize) -> W {
    let mut out = Vec::new();
    for _ in 0..n {
        out = cat(&[&out, w]);
    }
    out
}

pub fn certificate_valid(p: &Pres, v: &Value) -> bool {
    (|| {
        let s: Vec<W> = v["S"].as_array()?.iter().map(word).collect::<Option<_>>()?;
        let target = word(&v["target"])?;
        if !s.iter().all(|w| p.declared(w)) {
            return None;
        }
        let mut words: Vec<W> = Vec::new();
        for (i, n) in v["nodes"].as_array()?.iter().enumerate() {
            let child = |k: &Value| idx(k).filter(|&c| c < i);
            let w = match n["kind"].as_str()? {
                "Axiom" => s.get(idx(&n["index"])?)?.clone(),
                "Identity" => Vec::new(),
                "Mul" => {
                    let args = n["args"].as_array()?;
                    if args.is_empty() {
                        return None;
                    }
                    let mut acc = Vec::new();
                    for a in args {
                        acc = cat(&[&acc, &words[child(a)?]]);
                    }
                    acc
                }
                "Conj" => {
                    let by = word(&n["by"])?;
                    if !p.declared(&by) {
                        return None;
                    }
                    cat(&[&by, &words[child(&n["child"])?], &inv(&by)])
                }
                "Root" => {
                    let k = idx(&n["n"])?;
                    let claimed = word(&n["claimed"])?;
                    if k == 0 || !p.declared(&claimed) {
                        return None;
                    }
                    let end = replay(p, &words[child(&n["child"])?], &n["witness"])?;
                    if end != power(&claimed, k) {
                        return None;
                    }
                    claimed
                }
                "Rewrite" => {
                    let t = word(&n["target"])?;
                    if !p.declared(&t) || replay(p, &words[child(&n["child"])?], &n["witness"])? != t {
                        return None;
                    }
                    t
                }
                _ => return None,
            };
            words.push(w);
        }
        (words.get(idx(&v["root"])?)? == &target).then_some(())
    })()
    .is_some()
}
