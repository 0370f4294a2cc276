//! Certificate builder: hash-consed nodes and inequality facts `hi ≥ lo`, meaning
//! `red(hi^{-1}·lo) ∈ M(S)`.

use std::collections::HashMap;

use super::certificate::{check_certificate, Certificate, Node};
use super::witness::{relator_product, Eq};
use crate::error::{Error, Result};
use crate::knotgroup::{GroupWord, Presentation};

#[derive(Debug, Clone, PartialEq)]
pub struct Fact {
    pub hi: GroupWord,
    pub lo: GroupWord,
    pub node: usize,
}

pub struct Engine<'a> {
    pres: &'a Presentation,
    s: Vec<GroupWord>,
    nodes: Vec<Node>,
    words: Vec<GroupWord>,
    by_node: HashMap<Node, usize>,
    by_word: HashMap<GroupWord, usize>,
}

impl<'a> Engine<'a> {
    pub fn new(pres: &'a Presentation, s: Vec<GroupWord>) -> Self {
        Engine {
            pres,
            s,
            nodes: Vec::new(),
            words: Vec::new(),
            by_node: HashMap::new(),
            by_word: HashMap::new(),
        }
    }

    pub fn pres(&self) -> &Presentation {
        self.pres
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn word(&self, node: usize) -> &GroupWord {
        &self.words[node]
    }

    pub fn fail(&self, reason: impl Into<String>) -> Error {
        Error::CertGen {
            reason: reason.into(),
            nodes: self.nodes.len(),
        }
    }

    /// Adds a node, reusing any existing node with the same word.
    pub fn add(&mut self, node: Node) -> Result<usize> {
        if let Some(&id) = self.by_node.get(&node) {
            return Ok(id);
        }
        let word = match &node {
            Node::Axiom { index } => self.s.get(*index).cloned().ok_or_else(|| self.fail(format!("no axiom {index}")))?,
            Node::Identity => GroupWord::identity(),
            Node::Mul { args } => GroupWord::product(args.iter().map(|&a| &self.words[a])),
            Node::Conj { child, by } => self.words[*child].conj(by),
            Node::Root { claimed, .. } => claimed.clone(),
            Node::Rewrite { target, .. } => target.clone(),
        };
        if let Some(&id) = self.by_word.get(&word) {
            self.by_node.insert(node, id);
            return Ok(id);
        }
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.words.push(word.clone());
        self.by_node.insert(node, id);
        self.by_word.insert(word, id);
        Ok(id)
    }

    pub fn axiom(&mut self, index: usize) -> Result<usize> {
        self.add(Node::Axiom { index })
    }

    pub fn identity(&mut self) -> Result<usize> {
        self.add(Node::Identity)
    }

    pub fn mul(&mut self, args: &[usize]) -> Result<usize> {
        let args: Vec<usize> = args.iter().copied().filter(|&a| !self.words[a].is_identity()).collect();
        match args.len() {
            0 => self.identity(),
            1 => Ok(args[0]),
            _ => self.add(Node::Mul { args }),
        }
    }

    pub fn conj(&mut self, child: usize, by: &GroupWord) -> Result<usize> {
        if by.is_identity() {
            return Ok(child);
        }
        self.add(Node::Conj { child, by: by.clone() })
    }

    /// Node whose word is `eq.to`, from a node whose word is `eq.from`.
    pub fn rewrite(&mut self, child: usize, eq: &Eq) -> Result<usize> {
        if self.words[child] != eq.from {
            return Err(self.fail(format!("rewrite expects {}, node has {}", eq.from, self.words[child])));
        }
        if eq.from == eq.to {
            return Ok(child);
        }
        let witness = eq.witness(self.pres)?;
        self.add(Node::Rewrite {
            child,
            target: eq.to.clone(),
            witness,
        })
    }

    /// `claimed` from a node whose word is freely `claimed^n`.
    pub fn root(&mut self, child: usize, n: u32, claimed: &GroupWord) -> Result<usize> {
        let eq = Eq::refl(claimed.pow(n as i64));
        if self.words[child] != eq.to {
            return Err(self.fail(format!("{} is not the {n}-th power of {claimed}", self.words[child])));
        }
        if n == 1 {
            return Ok(child);
        }
        self.add(Node::Root {
            child,
            n,
            claimed: claimed.clone(),
            witness: eq.witness(self.pres)?,
        })
    }

    pub fn fact(&self, hi: GroupWord, lo: GroupWord, node: usize) -> Result<Fact> {
        let expect = hi.inverse().mul(&lo);
        if self.words[node] != expect {
            return Err(self.fail(format!(
                "fact {hi} ≥ {lo} needs word {expect}, node {node} has {}",
                self.words[node]
            )));
        }
        Ok(Fact { hi, lo, node })
    }

    pub fn refl(&mut self, w: &GroupWord) -> Result<Fact> {
        let id = self.identity()?;
        self.fact(w.clone(), w.clone(), id)
    }

    /// `a ≥ c` from `a ≥ b ≥ c ≥ …`.
    pub fn trans(&mut self, chain: &[&Fact]) -> Result<Fact> {
        for pair in chain.windows(2) {
            if pair[0].lo != pair[1].hi {
                return Err(self.fail(format!("cannot chain {} ≥ {} with {} ≥ {}", pair[0].hi, pair[0].lo, pair[1].hi, pair[1].lo)));
            }
        }
        let (first, last) = (chain[0], chain[chain.len() - 1]);
        let node = self.mul(&chain.iter().map(|f| f.node).collect::<Vec<_>>())?;
        self.fact(first.hi.clone(), last.lo.clone(), node)
    }

    /// `u·hi·v ≥ u·lo·v`.
    pub fn ctx(&mut self, u: &GroupWord, f: &Fact, v: &GroupWord) -> Result<Fact> {
        let node = self.conj(f.node, &v.inverse())?;
        self.fact(
            GroupWord::product([u, &f.hi, v]),
            GroupWord::product([u, &f.lo, v]),
            node,
        )
    }

    /// `lo^{-1} ≥ hi^{-1}`.
    pub fn invert(&mut self, f: &Fact) -> Result<Fact> {
        let node = self.conj(f.node, &f.lo)?;
        self.fact(f.lo.inverse(), f.hi.inverse(), node)
    }

    /// `from ≥ to` for an equality in the group.
    pub fn eq_fact(&mut self, eq: &Eq) -> Result<Fact> {
        let z = eq.from.inverse().mul(&eq.to);
        let id = self.identity()?;
        let shifted = Eq {
            from: GroupWord::identity(),
            to: z,
            z: eq.z.clone(),
        };
        let node = self.rewrite(id, &shifted)?;
        self.fact(eq.from.clone(), eq.to.clone(), node)
    }

    /// `u·v ≥ u·c·a·c^{-1}·v` for the axiom word `a`.
    pub fn insert_axiom(&mut self, u: &GroupWord, c: &GroupWord, axiom: usize, v: &GroupWord) -> Result<Fact> {
        let a = self.s.get(axiom).cloned().ok_or_else(|| self.fail(format!("no axiom {axiom}")))?;
        let leaf = self.axiom(axiom)?;
        let node = self.conj(leaf, &v.inverse().mul(c))?;
        self.fact(u.mul(v), GroupWord::product([u, c, &a, &c.inverse(), v]), node)
    }

    /// Node with word `w(root)^{-1}·…` mirrored down to the first leaf `Axiom(axiom)`: returns a
    /// node whose word is the inverse of that axiom. Requires the root's word to be trivial.
    pub fn invert_to_axiom(&mut self, root: usize, axiom: usize) -> Result<usize> {
        if !self.words[root].is_identity() {
            return Err(self.fail(format!("inversion needs a trivial root word, got {}", self.words[root])));
        }
        let path = self
            .path_to_axiom(root, axiom)
            .ok_or_else(|| self.fail(format!("no leaf Axiom({axiom}) below node {root}")))?;
        let mut iota = self.identity()?;
        for pair in path.windows(2) {
            let (parent, (child, slot)) = (pair[0].0, pair[1]);
            let child_inv = self.words[child].inverse();
            iota = match self.nodes[parent].clone() {
                Node::Mul { args } => {
                    let mut m: Vec<usize> = args[slot + 1..].to_vec();
                    m.push(iota);
                    m.extend_from_slice(&args[..slot]);
                    self.mul(&m)?
                }
                Node::Conj { by, .. } => self.conj(iota, &by.inverse())?,
                Node::Root {
                    n, claimed, witness, ..
                } => {
                    let powered = self.mul(&vec![iota; n as usize])?;
                    let z = relator_product(self.pres, &self.words[child], &witness)?;
                    let cn = claimed.pow(n as i64);
                    let eq = Eq {
                        from: cn.inverse(),
                        to: child_inv,
                        z: z.iter().map(|f| f.conj_by(&cn)).collect(),
                    };
                    self.rewrite(powered, &eq)?
                }
                Node::Rewrite { target, witness, .. } => {
                    let z = relator_product(self.pres, &self.words[child], &witness)?;
                    let eq = Eq {
                        from: target.inverse(),
                        to: child_inv,
                        z: z.iter().map(|f| f.conj_by(&target)).collect(),
                    };
                    self.rewrite(iota, &eq)?
                }
                Node::Axiom { .. } | Node::Identity => unreachable!("leaves have no children"),
            };
            if self.words[iota] != self.words[child].inverse() {
                return Err(self.fail(format!("mirrored node {iota} has word {}", self.words[iota])));
            }
        }
        Ok(iota)
    }

    /// `(node, slot in parent)` from `root` down to a leaf `Axiom(axiom)`.
    fn path_to_axiom(&self, root: usize, axiom: usize) -> Option<Vec<(usize, usize)>> {
        let mut reach: Vec<Option<bool>> = vec![None; self.nodes.len()];
        fn reaches(e: &Engine, n: usize, axiom: usize, memo: &mut Vec<Option<bool>>) -> bool {
            if let Some(r) = memo[n] {
                return r;
            }
            let r = match &e.nodes[n] {
                Node::Axiom { index } => *index == axiom,
                node => node.children().into_iter().any(|c| reaches(e, c, axiom, memo)),
            };
            memo[n] = Some(r);
            r
        }
        if !reaches(self, root, axiom, &mut reach) {
            return None;
        }
        let mut path = vec![(root, 0)];
        let mut cur = root;
        while !matches!(self.nodes[cur], Node::Axiom { .. }) {
            let (slot, c) = self.nodes[cur]
                .children()
                .into_iter()
                .enumerate()
                .find(|&(_, c)| reaches(self, c, axiom, &mut reach))?;
            path.push((c, slot));
            cur = c;
        }
        Some(path)
    }

    /// Extracts the nodes reachable from `root` and validates the result.
    pub fn finish(&self, root: usize, target: &GroupWord) -> Result<Certificate> {
        let mut keep = vec![false; self.nodes.len()];
        keep[root] = true;
        for i in (0..=root).rev() {
            if keep[i] {
                for c in self.nodes[i].children() {
                    keep[c] = true;
                }
            }
        }
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for i in 0..self.nodes.len() {
            if !keep[i] {
                continue;
            }
            remap[i] = nodes.len();
            let node = match self.nodes[i].clone() {
                Node::Mul { args } => Node::Mul {
                    args: args.iter().map(|&a| remap[a]).collect(),
                },
                Node::Conj { child, by } => Node::Conj { child: remap[child], by },
                Node::Root {
                    child,
                    n,
                    claimed,
                    witness,
                } => Node::Root {
                    child: remap[child],
                    n,
                    claimed,
                    witness,
                },
                Node::Rewrite { child, target, witness } => Node::Rewrite {
                    child: remap[child],
                    target,
                    witness,
                },
                leaf => leaf,
            };
            nodes.push(node);
        }
        let cert = Certificate {
            s: self.s.clone(),
            target: target.clone(),
            root: remap[root],
            nodes,
        };
        check_certificate(self.pres, &self.s, target, &cert).map_err(|e| self.fail(format!("self-check: {e}")))?;
        Ok(cert)
    }
}
