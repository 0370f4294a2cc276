use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Default)]
struct Interner {
    names: Vec<&'static str>,
    ids: HashMap<&'static str, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static I: OnceLock<RwLock<Interner>> = OnceLock::new();
    I.get_or_init(Default::default)
}

/// Interned generator name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(u32);

impl Gen {
    pub fn new(name: &str) -> Gen {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Gen(id);
        }
        let mut w = interner().write().unwrap();
        if let Some(&id) = w.ids.get(name) {
            return Gen(id);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let id = w.names.len() as u32;
        w.names.push(leaked);
        w.ids.insert(leaked, id);
        Gen(id)
    }

    pub fn name(self) -> &'static str {
        interner().read().unwrap().names[self.0 as usize]
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub gen: Gen,
    /// `+1` or `-1`.
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: Gen, exp: i8) -> Letter {
        debug_assert!(exp == 1 || exp == -1);
        Letter { gen, exp }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            exp: -self.exp,
        }
    }

    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.gen == other.gen && self.exp == -other.exp
    }
}

pub(crate) fn reduce_into(out: &mut Vec<Letter>, letters: impl IntoIterator<Item = Letter>) {
    for l in letters {
        if out.last().is_some_and(|&p| p.is_inverse_of(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
}

/// Freely reduced word in a free group.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out = Vec::new();
        reduce_into(&mut out, letters);
        GroupWord(out)
    }

    pub fn gen(name: &str) -> Self {
        GroupWord(vec![Letter::new(Gen::new(name), 1)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &GroupWord) -> Self {
        let mut out = self.0.clone();
        reduce_into(&mut out, other.0.iter().copied());
        GroupWord(out)
    }

    pub fn product<'a>(words: impl IntoIterator<Item = &'a GroupWord>) -> Self {
        let mut out = Vec::new();
        for w in words {
            reduce_into(&mut out, w.0.iter().copied());
        }
        GroupWord(out)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::new();
        for _ in 0..k.unsigned_abs() {
            reduce_into(&mut out, base.0.iter().copied());
        }
        GroupWord(out)
    }

    /// `g · self · g^{-1}`.
    pub fn conj(&self, g: &GroupWord) -> Self {
        GroupWord::product([g, self, &g.inverse()])
    }

    pub fn suffix(&self, len: usize) -> Self {
        GroupWord(self.0[self.0.len() - len..].to_vec())
    }

    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.0.iter().filter(|l| l.gen == g).map(|l| l.exp as i64).sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        self.0.iter().map(|l| l.gen)
    }

    pub fn rename(&self, map: &HashMap<Gen, Gen>) -> Self {
        GroupWord(
            self.0
                .iter()
                .map(|l| Letter::new(*map.get(&l.gen).unwrap_or(&l.gen), l.exp))
                .collect(),
        )
    }

    pub fn is_positive_in(&self, g: Gen) -> bool {
        self.0.iter().all(|l| l.gen != g || l.exp > 0)
    }
}

/// Display and parse format: space separated `name` or `name^k`, e.g. `a^2 b^-1 a`; `1` is the identity.
impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let k = (j - i) as i64 * l.exp as i64;
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^{}", l.gen, k)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, k) = match tok.split_once('^') {
                None => (tok, 1i64),
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
                ),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Parse(format!("bad generator name in {tok:?}")));
            }
            let l = Letter::new(Gen::new(name), if k < 0 { -1 } else { 1 });
            letters.extend(std::iter::repeat_n(l, k.unsigned_abs() as usize));
        }
        Ok(GroupWord::from_letters(letters))
    }
}

impl Serialize for GroupWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(&str, i8)> = self.0.iter().map(|l| (l.gen.name(), l.exp)).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(String, i8)> = Vec::deserialize(d)?;
        let mut letters = Vec::with_capacity(v.len());
        for (name, e) in v {
            if e != 1 && e != -1 {
                return Err(D::Error::custom(format!("exponent must be 1 or -1, got {e}")));
            }
            letters.push(Letter::new(Gen::new(&name), e));
        }
        let w = GroupWord::from_letters(letters.iter().copied());
        if w.len() != letters.len() {
            return Err(D::Error::custom("word is not freely reduced"));
        }
        Ok(w)
    }
}

/// Shorthand for parsing a word literal in tests and examples.
pub fn w(s: &str) -> GroupWord {
    s.parse().expect("valid word literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_display_roundtrip() {
        let a = w("a^2 b^-2 a b^-2 a^2 b");
        assert_eq!(a.len(), 10);
        assert_eq!(a.to_string(), "a^2 b^-2 a b^-2 a^2 b");
        assert_eq!(w("x y^-1 y x^-1"), GroupWord::identity());
        assert_eq!(GroupWord::identity().to_string(), "1");
        assert!("a^x".parse::<GroupWord>().is_err());
    }

    #[test]
    fn group_ops() {
        let mu = w("x y^-1");
        assert_eq!(mu.inverse(), w("y x^-1"));
        assert_eq!(mu.pow(-2), w("y x^-1 y x^-1"));
        assert_eq!(w("y").conj(&w("x")), w("x y x^-1"));
        assert_eq!(w("x y x").exponent_sum(Gen::new("x")), 2);
        assert_eq!(w("x y x").suffix(2), w("y x"));
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(w("x y^-1")).unwrap();
        assert_eq!(v, serde_json::json!([["x", 1], ["y", -1]]));
        let back: GroupWord = serde_json::from_value(v).unwrap();
        assert_eq!(back, w("x y^-1"));
        assert!(serde_json::from_value::<GroupWord>(serde_json::json!([["x", 1], ["x", -1]])).is_err());
        assert!(serde_json::from_value::<GroupWord>(serde_json::json!([["x", 2]])).is_err());
    }

    fn arb_word() -> impl Strategy<Value = GroupWord> {
        proptest::collection::vec((0usize..3, any::<bool>()), 0..20).prop_map(|v| {
            GroupWord::from_letters(
                v.into_iter()
                    .map(|(g, s)| Letter::new(Gen::new(["a", "b", "c"][g]), if s { 1 } else { -1 })),
            )
        })
    }

    proptest! {
        #[test]
        fn free_group_laws(a in arb_word(), b in arb_word(), c in arb_word()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.mul(&a.inverse()).is_identity());
            prop_assert_eq!(a.to_string().parse::<GroupWord>().unwrap(), a.clone());
            prop_assert!(a.letters().windows(2).all(|p| !p[0].is_inverse_of(p[1])));
        }
    }
}
