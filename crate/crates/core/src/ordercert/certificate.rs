//! Certificates that a word lies in the root-closed, conjugacy-closed submonoid `M(S)`.

use serde::{Deserialize, Serialize};

use super::witness::{check_equality_witness, EqualityWitness};
use crate::error::{Error, Result};
use crate::knotgroup::{GroupWord, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Node {
    Axiom { index: usize },
    Identity,
    Mul { args: Vec<usize> },
    /// `by · child · by^{-1}`.
    Conj { child: usize, by: GroupWord },
    /// `claimed ∈ M` from `child ∈ M` and `child = claimed^n`.
    Root {
        child: usize,
        n: u32,
        claimed: GroupWord,
        witness: EqualityWitness,
    },
    Rewrite {
        child: usize,
        target: GroupWord,
        witness: EqualityWitness,
    },
}

impl Node {
    pub fn children(&self) -> Vec<usize> {
        match self {
            Node::Axiom { .. } | Node::Identity => Vec::new(),
            Node::Mul { args } => args.clone(),
            Node::Conj { child, .. } | Node::Root { child, .. } | Node::Rewrite { child, .. } => vec![*child],
        }
    }
}

/// Nodes are stored in topological order: children precede their parents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "S")]
    pub s: Vec<GroupWord>,
    pub target: GroupWord,
    pub nodes: Vec<Node>,
    pub root: usize,
}

impl Certificate {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn reject(node: usize, reason: impl Into<String>) -> Error {
    Error::Cert {
        node,
        reason: reason.into(),
    }
}

/// Words of every node, validating each against its children.
pub fn node_words(pres: &Presentation, s: &[GroupWord], nodes: &[Node]) -> Result<Vec<GroupWord>> {
    let mut words: Vec<GroupWord> = Vec::with_capacity(nodes.len());
    for (i, node) in nodes.iter().enumerate() {
        for c in node.children() {
            if c >= i {
                return Err(reject(i, format!("child {c} does not precede its parent")));
            }
        }
        let word = match node {
            Node::Axiom { index } => s.get(*index).cloned().ok_or_else(|| reject(i, format!("no axiom {index}")))?,
            Node::Identity => GroupWord::identity(),
            Node::Mul { args } => {
                if args.is_empty() {
                    return Err(reject(i, "empty product"));
                }
                GroupWord::product(args.iter().map(|&a| &words[a]))
            }
            Node::Conj { child, by } => {
                if !pres.has_generators(by) {
                    return Err(reject(i, format!("conjugator {by} uses undeclared generators")));
                }
                words[*child].conj(by)
            }
            Node::Root {
                child,
                n,
                claimed,
                witness,
            } => {
                if *n == 0 {
                    return Err(reject(i, "root of order 0"));
                }
                if !pres.has_generators(claimed) {
                    return Err(reject(i, format!("claimed root {claimed} uses undeclared generators")));
                }
                let power = claimed.pow(*n as i64);
                check_equality_witness(pres, &words[*child], &power, witness)
                    .map_err(|e| reject(i, format!("power witness: {e}")))?;
                claimed.clone()
            }
            Node::Rewrite { child, target, witness } => {
                if !pres.has_generators(target) {
                    return Err(reject(i, format!("rewrite target {target} uses undeclared generators")));
                }
                check_equality_witness(pres, &words[*child], target, witness)
                    .map_err(|e| reject(i, format!("rewrite witness: {e}")))?;
                target.clone()
            }
        };
        words.push(word);
    }
    Ok(words)
}

/// Accepts iff every node is locally valid and the root's word is `target`.
pub fn check_certificate(pres: &Presentation, s: &[GroupWord], target: &GroupWord, cert: &Certificate) -> Result<()> {
    for (k, w) in s.iter().enumerate() {
        if !pres.has_generators(w) {
            return Err(Error::domain(format!("axiom {k} = {w} uses undeclared generators")));
        }
    }
    if cert.s != s {
        return Err(reject(cert.root, "certificate was issued for a different generating set"));
    }
    if &cert.target != target {
        return Err(reject(cert.root, format!("certificate proves {}, not {target}", cert.target)));
    }
    if cert.root >= cert.nodes.len() {
        return Err(reject(cert.root, "root index out of range"));
    }
    let words = node_words(pres, s, &cert.nodes)?;
    if &words[cert.root] != target {
        return Err(reject(cert.root, format!("root word is {}, expected {target}", words[cert.root])));
    }
    Ok(())
}
