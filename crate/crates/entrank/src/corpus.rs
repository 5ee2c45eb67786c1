//! Graph corpora: seeded random digraphs and named families.
//!
//! Spec strings:
//!
//! * `random:n=6,p=0.3,seed=42,count=100`
//! * `<family>:<size>` or `<family>:<lo>..<hi>` (inclusive), where the
//!   family is one of `dipath`, `dicycle`, `upath`, `ucycle`, `clique`, `dag`.

use std::fmt;
use std::str::FromStr;

use entrank_core::{families, Digraph, MAX_VERTICES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    DiPath,
    DiCycle,
    UPath,
    UCycle,
    Clique,
    Dag,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::DiPath,
        Family::DiCycle,
        Family::UPath,
        Family::UCycle,
        Family::Clique,
        Family::Dag,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::DiPath => "dipath",
            Family::DiCycle => "dicycle",
            Family::UPath => "upath",
            Family::UCycle => "ucycle",
            Family::Clique => "clique",
            Family::Dag => "dag",
        }
    }

    pub fn build(self, n: usize) -> Digraph {
        match self {
            Family::DiPath => families::directed_path(n),
            Family::DiCycle => families::directed_cycle(n),
            Family::UPath => families::undirected_path(n),
            Family::UCycle => families::undirected_cycle(n),
            Family::Clique => families::clique(n),
            Family::Dag => families::transitive_dag(n),
        }
    }
}

impl FromStr for Family {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, CorpusError> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| CorpusError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum CorpusError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("bad corpus spec `{spec}`: {reason}")]
    Malformed { spec: String, reason: String },
    #[error("edge probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("{0} vertices exceed the limit of {MAX_VERTICES}")]
    TooLarge(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub enum CorpusSpec {
    Random { n: usize, p: f64, seed: u64, count: usize },
    Family { family: Family, sizes: std::ops::RangeInclusive<usize> },
}

/// A corpus graph with a stable identifier.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedGraph {
    pub id: String,
    pub graph: Digraph,
}

impl CorpusSpec {
    pub fn random(n: usize, p: f64, seed: u64, count: usize) -> Result<Self, CorpusError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(CorpusError::Probability(p));
        }
        if n > MAX_VERTICES {
            return Err(CorpusError::TooLarge(n));
        }
        Ok(CorpusSpec::Random { n, p, seed, count })
    }

    pub fn family(family: Family, sizes: std::ops::RangeInclusive<usize>) -> Result<Self, CorpusError> {
        if *sizes.end() > MAX_VERTICES {
            return Err(CorpusError::TooLarge(*sizes.end()));
        }
        Ok(CorpusSpec::Family { family, sizes })
    }

    pub fn generate(&self) -> Vec<NamedGraph> {
        match self {
            CorpusSpec::Random { n, p, seed, count } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..*count)
                    .map(|i| NamedGraph {
                        id: format!("random-n{n}-p{p}-s{seed}-i{i}"),
                        graph: random_digraph(&mut rng, *n, *p),
                    })
                    .collect()
            }
            CorpusSpec::Family { family, sizes } => sizes
                .clone()
                .map(|n| NamedGraph {
                    id: format!("{}-{n}", family.name()),
                    graph: family.build(n),
                })
                .collect(),
        }
    }
}

/// Each ordered pair `(u, v)`, loops included, is an edge with probability
/// `p`, drawn in row-major order.
pub fn random_digraph(rng: &mut impl Rng, n: usize, p: f64) -> Digraph {
    let mut g = Digraph::new(n).expect("vertex count checked by the caller");
    for u in 0..n {
        for v in 0..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).expect("each pair drawn once");
            }
        }
    }
    g
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusSpec::Random { n, p, seed, count } => write!(f, "random:n={n},p={p},seed={seed},count={count}"),
            CorpusSpec::Family { family, sizes } if sizes.start() == sizes.end() => {
                write!(f, "{}:{}", family.name(), sizes.start())
            }
            CorpusSpec::Family { family, sizes } => {
                write!(f, "{}:{}..{}", family.name(), sizes.start(), sizes.end())
            }
        }
    }
}

impl FromStr for CorpusSpec {
    type Err = CorpusError;

    fn from_str(spec: &str) -> Result<Self, CorpusError> {
        let bad = |reason: &str| CorpusError::Malformed {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let (kind, args) = spec.split_once(':').ok_or_else(|| bad("expected `kind:arguments`"))?;
        if kind == "random" {
            let (mut n, mut p, mut seed, mut count) = (None, None, None, None);
            for field in args.split(',') {
                let (key, value) = field.split_once('=').ok_or_else(|| bad("expected `key=value`"))?;
                let value = value.trim();
                match key.trim() {
                    "n" => n = Some(value.parse().map_err(|_| bad("n must be an integer"))?),
                    "p" => p = Some(value.parse().map_err(|_| bad("p must be a number"))?),
                    "seed" => seed = Some(value.parse().map_err(|_| bad("seed must be an integer"))?),
                    "count" => count = Some(value.parse().map_err(|_| bad("count must be an integer"))?),
                    other => return Err(bad(&format!("unknown key `{other}`"))),
                }
            }
            return CorpusSpec::random(
                n.ok_or_else(|| bad("missing n"))?,
                p.ok_or_else(|| bad("missing p"))?,
                seed.ok_or_else(|| bad("missing seed"))?,
                count.unwrap_or(1),
            );
        }
        let family: Family = kind.parse()?;
        let size = |s: &str| s.trim().parse::<usize>().map_err(|_| bad("size must be an integer"));
        let sizes = match args.split_once("..") {
            Some((lo, hi)) => size(lo)?..=size(hi)?,
            None => {
                let n = size(args)?;
                n..=n
            }
        };
        CorpusSpec::family(family, sizes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_examples() {
        let g = Family::UPath.build(2);
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 1), (1, 0)]);
        assert_eq!(Family::Clique.build(3).edge_count(), 6);
    }

    #[test]
    fn edgeless_random() {
        let spec: CorpusSpec = "random:n=5,p=0,seed=9,count=3".parse().unwrap();
        assert!(spec.generate().iter().all(|g| g.graph.edge_count() == 0));
    }

    #[test]
    fn specs_round_trip() {
        for s in ["random:n=6,p=0.3,seed=42,count=100", "upath:1..32", "clique:4"] {
            let spec: CorpusSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("random:n=6,p=1.5,seed=1".parse::<CorpusSpec>().is_err());
        assert!("tree:4".parse::<CorpusSpec>().is_err());
        assert!("upath:65".parse::<CorpusSpec>().is_err());
    }

    #[test]
    fn seeds_determine_graphs() {
        let a = CorpusSpec::random(6, 0.3, 42, 10).unwrap().generate();
        let b = CorpusSpec::random(6, 0.3, 42, 10).unwrap().generate();
        let c = CorpusSpec::random(6, 0.3, 43, 10).unwrap().generate();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a[7].id, "random-n6-p0.3-s42-i7");
    }
}
