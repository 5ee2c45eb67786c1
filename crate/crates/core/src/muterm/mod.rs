//! μ-terms over a declared operator signature.
//!
//! Concrete syntax:
//!
//! ```text
//! term    ::= ("mu" | "nu") ident "." term | postfix
//! postfix ::= atom ("[" ident ":=" term ("," ident ":=" term)* "]")*
//! atom    ::= ident | ident "(" [term ("," term)*] ")" | "(" term ")"
//! ```
//!
//! The body of a binder extends as far right as possible. A bare identifier
//! is a variable unless the signature declares it as a constant.

mod graph;
mod parse;
mod subst;

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use graph::{analyze, term_graph, AnalyzeError, TermGraph, TermReport, TERM_GRAPH_CONSTRUCTION};
pub use parse::{infer_signature, parse, parse_with, ParseError, ParseErrorKind};
pub use subst::{alpha_eq, compose, substitute, Substitution};

/// Operator symbols with their arities.
pub type Signature = BTreeMap<String, usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fixpoint {
    Mu,
    Nu,
}

impl Fixpoint {
    pub fn keyword(self) -> &'static str {
        match self {
            Fixpoint::Mu => "mu",
            Fixpoint::Nu => "nu",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MuTerm {
    Var(String),
    Op(String, Vec<MuTerm>),
    /// `body[x1 := t1, ..]`, with distinct `xi`.
    Subst(Box<MuTerm>, Vec<(String, MuTerm)>),
    Fix(Fixpoint, String, Box<MuTerm>),
}

impl MuTerm {
    pub fn var(name: &str) -> MuTerm {
        MuTerm::Var(name.into())
    }

    pub fn op(symbol: &str, args: Vec<MuTerm>) -> MuTerm {
        MuTerm::Op(symbol.into(), args)
    }

    pub fn mu(name: &str, body: MuTerm) -> MuTerm {
        MuTerm::Fix(Fixpoint::Mu, name.into(), Box::new(body))
    }

    pub fn nu(name: &str, body: MuTerm) -> MuTerm {
        MuTerm::Fix(Fixpoint::Nu, name.into(), Box::new(body))
    }

    pub fn subst(body: MuTerm, bindings: Vec<(&str, MuTerm)>) -> MuTerm {
        MuTerm::Subst(
            Box::new(body),
            bindings.into_iter().map(|(x, t)| (x.into(), t)).collect(),
        )
    }

    /// Free variables.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            MuTerm::Var(x) => {
                out.insert(x.clone());
            }
            MuTerm::Op(_, args) => args.iter().for_each(|a| a.collect_free(out)),
            MuTerm::Subst(body, bindings) => {
                for y in body.free_vars() {
                    match bindings.iter().find(|(x, _)| *x == y) {
                        Some((_, t)) => t.collect_free(out),
                        None => {
                            out.insert(y);
                        }
                    }
                }
            }
            MuTerm::Fix(_, x, body) => {
                let mut inner = body.free_vars();
                inner.remove(x);
                out.append(&mut inner);
            }
        }
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            MuTerm::Var(y) => x == y,
            MuTerm::Op(_, args) => args.iter().any(|a| a.occurs_free(x)),
            MuTerm::Subst(body, bindings) => body.free_vars().iter().any(|y| {
                match bindings.iter().find(|(z, _)| z == y) {
                    Some((_, t)) => t.occurs_free(x),
                    None => x == y,
                }
            }),
            MuTerm::Fix(_, y, body) => x != y && body.occurs_free(x),
        }
    }

    /// Nesting depth of fixed points. Bindings of a substitution count only
    /// when their variable occurs free in the body.
    pub fn star_height(&self) -> usize {
        match self {
            MuTerm::Var(_) => 0,
            MuTerm::Op(_, args) => args.iter().map(MuTerm::star_height).max().unwrap_or(0),
            MuTerm::Subst(body, bindings) => {
                let live = body.free_vars();
                bindings
                    .iter()
                    .filter(|(x, _)| live.contains(x))
                    .map(|(_, t)| t.star_height())
                    .fold(body.star_height(), usize::max)
            }
            MuTerm::Fix(_, _, body) => 1 + body.star_height(),
        }
    }

    /// Number of distinct names bound by `mu` or `nu`.
    pub fn bound_name_count(&self) -> usize {
        let mut names = BTreeSet::new();
        self.visit(&mut |t| {
            if let MuTerm::Fix(_, x, _) = t {
                names.insert(x.clone());
            }
        });
        names.len()
    }

    pub fn has_fixpoint(&self) -> bool {
        let mut found = false;
        self.visit(&mut |t| found |= matches!(t, MuTerm::Fix(..)));
        found
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    /// Preorder traversal, substitution bodies before their bindings.
    pub fn visit(&self, f: &mut impl FnMut(&MuTerm)) {
        f(self);
        match self {
            MuTerm::Var(_) => {}
            MuTerm::Op(_, args) => args.iter().for_each(|a| a.visit(f)),
            MuTerm::Subst(body, bindings) => {
                body.visit(f);
                bindings.iter().for_each(|(_, t)| t.visit(f));
            }
            MuTerm::Fix(_, _, body) => body.visit(f),
        }
    }

    /// Checks operator arities and binding distinctness.
    pub fn check(&self, signature: &Signature) -> Result<(), ParseErrorKind> {
        let mut result = Ok(());
        self.visit(&mut |t| {
            if result.is_err() {
                return;
            }
            match t {
                MuTerm::Op(f, args) => match signature.get(f) {
                    None => result = Err(ParseErrorKind::UnknownOperator(f.clone())),
                    Some(&n) if n != args.len() => {
                        result = Err(ParseErrorKind::ArityMismatch {
                            symbol: f.clone(),
                            expected: n,
                            found: args.len(),
                        })
                    }
                    _ => {}
                },
                MuTerm::Subst(_, bindings) => {
                    for (i, (x, _)) in bindings.iter().enumerate() {
                        if bindings[..i].iter().any(|(y, _)| y == x) {
                            result = Err(ParseErrorKind::DuplicateBinding(x.clone()));
                        }
                    }
                }
                _ => {}
            }
        });
        result
    }
}

impl fmt::Display for MuTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuTerm::Var(x) => f.write_str(x),
            MuTerm::Op(s, args) if args.is_empty() => f.write_str(s),
            MuTerm::Op(s, args) => {
                write!(f, "{s}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
            MuTerm::Subst(body, bindings) => {
                if matches!(**body, MuTerm::Fix(..)) {
                    write!(f, "({body})[")?;
                } else {
                    write!(f, "{body}[")?;
                }
                for (i, (x, t)) in bindings.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x} := {t}")?;
                }
                f.write_str("]")
            }
            MuTerm::Fix(theta, x, body) => write!(f, "{} {x}. {body}", theta.keyword()),
        }
    }
}
