use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::{Gen, GroupWord};
use crate::error::{Error, Result};

impl Serialize for Gen {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Gen {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Gen::new(&String::deserialize(d)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation")]
pub struct Presentation {
    generators: Vec<Gen>,
    relators: Vec<GroupWord>,
    peripherals: BTreeMap<String, GroupWord>,
}

#[derive(Deserialize)]
struct RawPresentation {
    generators: Vec<Gen>,
    relators: Vec<GroupWord>,
    #[serde(default)]
    peripherals: BTreeMap<String, GroupWord>,
}

impl TryFrom<RawPresentation> for Presentation {
    type Error = Error;

    fn try_from(r: RawPresentation) -> Result<Self> {
        Presentation::new(r.generators, r.relators, r.peripherals)
    }
}

impl Presentation {
    pub fn new(
        generators: Vec<Gen>,
        relators: Vec<GroupWord>,
        peripherals: BTreeMap<String, GroupWord>,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::domain(format!("generator {g} declared twice")));
            }
        }
        let check = |what: &str, w: &GroupWord| -> Result<()> {
            match w.generators().find(|g| !generators.contains(g)) {
                Some(g) => Err(Error::domain(format!("{what} uses undeclared generator {g}"))),
                None => Ok(()),
            }
        };
        for (i, r) in relators.iter().enumerate() {
            check(&format!("relator {i}"), r)?;
        }
        for (k, w) in &peripherals {
            check(&format!("peripheral {k}"), w)?;
        }
        Ok(Presentation {
            generators,
            relators,
            peripherals,
        })
    }

    pub fn generators(&self) -> &[Gen] {
        &self.generators
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    pub fn peripherals(&self) -> &BTreeMap<String, GroupWord> {
        &self.peripherals
    }

    pub fn peripheral(&self, name: &str) -> Result<&GroupWord> {
        self.peripherals
            .get(name)
            .ok_or_else(|| Error::domain(format!("presentation has no peripheral {name:?}")))
    }

    pub fn gen_index(&self, g: Gen) -> Option<usize> {
        self.generators.iter().position(|&h| h == g)
    }

    pub fn has_generators(&self, w: &GroupWord) -> bool {
        w.generators().all(|g| self.generators.contains(&g))
    }

    pub fn with_relator(&self, r: GroupWord) -> Result<Presentation> {
        let mut relators = self.relators.clone();
        relators.push(r);
        Presentation::new(self.generators.clone(), relators, self.peripherals.clone())
    }

    pub fn with_peripheral(mut self, name: &str, w: GroupWord) -> Result<Presentation> {
        if !self.has_generators(&w) {
            return Err(Error::domain(format!("peripheral {name} uses undeclared generators")));
        }
        self.peripherals.insert(name.to_string(), w);
        Ok(self)
    }
}
