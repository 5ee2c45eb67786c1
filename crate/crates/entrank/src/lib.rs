//! File formats, corpora, verification suites and the command-line front end
//! for `entrank-core`.

pub mod cert_json;
pub mod corpus;
pub mod io;
pub mod suite;
pub mod terms;

pub use corpus::{CorpusSpec, Family, NamedGraph};
pub use suite::{run_equivalence_suite, run_theorem_suite, SuiteOptions, VerificationReport};
