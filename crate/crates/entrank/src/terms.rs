//! Seeded random μ-terms.

use entrank_core::muterm::{Fixpoint, MuTerm, Signature, Substitution};
use rand::seq::IndexedRandom;
use rand::Rng;

pub const VARIABLES: [&str; 4] = ["x", "y", "z", "w"];

/// `f/2`, `g/1`, `h/3` and the constant `c`.
pub fn default_signature() -> Signature {
    [("f", 2), ("g", 1), ("h", 3), ("c", 0)]
        .into_iter()
        .map(|(s, n)| (s.to_string(), n))
        .collect()
}

#[derive(Clone, Debug)]
pub struct TermGenerator {
    pub signature: Signature,
    pub max_depth: usize,
    /// Soft bound on AST nodes; past it only leaves are drawn.
    pub max_nodes: usize,
}

impl Default for TermGenerator {
    fn default() -> Self {
        TermGenerator {
            signature: default_signature(),
            max_depth: 6,
            max_nodes: 32,
        }
    }
}

impl TermGenerator {
    pub fn term(&self, rng: &mut impl Rng) -> MuTerm {
        let mut budget = self.max_nodes;
        self.grow(rng, self.max_depth, &mut budget)
    }

    /// Up to three bindings for distinct variables.
    pub fn substitution(&self, rng: &mut impl Rng) -> Substitution {
        let size = rng.random_range(0..=3);
        (0..size)
            .map(|_| (variable(rng), self.term(rng)))
            .collect()
    }

    fn grow(&self, rng: &mut impl Rng, depth: usize, budget: &mut usize) -> MuTerm {
        *budget = budget.saturating_sub(1);
        if depth == 0 || *budget == 0 || rng.random_bool(0.25) {
            return self.leaf(rng);
        }
        match rng.random_range(0..6) {
            0 | 1 => {
                let ops: Vec<(&String, &usize)> = self.signature.iter().filter(|(_, &n)| n > 0).collect();
                let Some(&(f, &arity)) = ops.choose(rng) else {
                    return self.leaf(rng);
                };
                let args = (0..arity).map(|_| self.grow(rng, depth - 1, budget)).collect();
                MuTerm::Op(f.clone(), args)
            }
            2 => MuTerm::Fix(Fixpoint::Mu, variable(rng), Box::new(self.grow(rng, depth - 1, budget))),
            3 => MuTerm::Fix(Fixpoint::Nu, variable(rng), Box::new(self.grow(rng, depth - 1, budget))),
            4 => {
                let body = self.grow(rng, depth - 1, budget);
                let mut bindings: Vec<(String, MuTerm)> = Vec::new();
                for _ in 0..rng.random_range(1..=2) {
                    let x = variable(rng);
                    if bindings.iter().all(|(y, _)| *y != x) {
                        let value = self.grow(rng, depth - 1, budget);
                        bindings.push((x, value));
                    }
                }
                MuTerm::Subst(Box::new(body), bindings)
            }
            _ => self.leaf(rng),
        }
    }

    fn leaf(&self, rng: &mut impl Rng) -> MuTerm {
        let constants: Vec<&String> = self.signature.iter().filter(|(_, &n)| n == 0).map(|(s, _)| s).collect();
        if !constants.is_empty() && rng.random_bool(0.2) {
            MuTerm::Op(constants.choose(rng).unwrap().to_string(), Vec::new())
        } else {
            MuTerm::Var(variable(rng))
        }
    }
}

fn variable(rng: &mut impl Rng) -> String {
    VARIABLES.choose(rng).unwrap().to_string()
}
