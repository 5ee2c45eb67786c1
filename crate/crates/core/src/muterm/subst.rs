use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::MuTerm;

/// A finite substitution; variables outside the domain map to themselves.
pub type Substitution = BTreeMap<String, MuTerm>;

/// Capture-avoiding application of `rho` to `t`. Explicit substitutions in
/// `t` and in the range of `rho` are evaluated, so the result contains none.
///
/// A binder `θx` keeps its name unless `x` occurs free in the image of the
/// binder's free variables; it is then renamed to the first of `v0, v1, ..`
/// free neither in that image nor in the body.
pub fn substitute(t: &MuTerm, rho: &Substitution) -> MuTerm {
    let empty = Substitution::new();
    let rho: Substitution = rho.iter().map(|(x, u)| (x.clone(), apply(u, &empty))).collect();
    apply(t, &rho)
}

/// `substitute` for a `rho` without explicit substitutions in its range.
fn apply(t: &MuTerm, rho: &Substitution) -> MuTerm {
    match t {
        MuTerm::Var(x) => rho.get(x).cloned().unwrap_or_else(|| t.clone()),
        MuTerm::Op(f, args) => MuTerm::Op(f.clone(), args.iter().map(|a| apply(a, rho)).collect()),
        MuTerm::Subst(body, bindings) => {
            let sigma: Substitution = bindings.iter().cloned().collect();
            let mut composed: Substitution = sigma.iter().map(|(x, u)| (x.clone(), apply(u, rho))).collect();
            for (y, u) in rho {
                composed.entry(y.clone()).or_insert_with(|| u.clone());
            }
            apply(body, &composed)
        }
        MuTerm::Fix(theta, x, body) => {
            let free = t.free_vars();
            let mut inner: Substitution = rho
                .iter()
                .filter(|(y, _)| free.contains(*y))
                .map(|(y, u)| (y.clone(), u.clone()))
                .collect();
            let mut image = BTreeSet::new();
            for y in &free {
                match inner.get(y) {
                    Some(u) => image.append(&mut u.free_vars()),
                    None => {
                        image.insert(y.clone());
                    }
                }
            }
            let name = if image.contains(x) {
                fresh_name(&image, &body.free_vars())
            } else {
                x.clone()
            };
            if name == *x {
                inner.remove(x);
            } else {
                inner.insert(x.clone(), MuTerm::Var(name.clone()));
            }
            MuTerm::Fix(*theta, name, Box::new(apply(body, &inner)))
        }
    }
}

fn fresh_name(a: &BTreeSet<String>, b: &BTreeSet<String>) -> String {
    (0..)
        .map(|i| format!("v{i}"))
        .find(|v| !a.contains(v) && !b.contains(v))
        .expect("unbounded supply of names")
}

/// `rho ⋆ pi`, mapping `x` to `rho(x)[pi]`.
pub fn compose(rho: &Substitution, pi: &Substitution) -> Substitution {
    let mut out: Substitution = rho.iter().map(|(x, t)| (x.clone(), substitute(t, pi))).collect();
    for (y, t) in pi {
        out.entry(y.clone()).or_insert_with(|| t.clone());
    }
    out
}

/// Equality up to renaming of bound variables. Bindings of explicit
/// substitutions are matched in order.
pub fn alpha_eq(a: &MuTerm, b: &MuTerm) -> bool {
    let mut left = Vec::new();
    let mut right = Vec::new();
    alpha(a, b, &mut left, &mut right)
}

type Frames<'t> = Vec<Vec<&'t str>>;

fn resolve(frames: &Frames<'_>, x: &str) -> Option<(usize, usize)> {
    frames
        .iter()
        .enumerate()
        .rev()
        .find_map(|(depth, frame)| frame.iter().position(|y| *y == x).map(|i| (depth, i)))
}

fn alpha<'t>(a: &'t MuTerm, b: &'t MuTerm, left: &mut Frames<'t>, right: &mut Frames<'t>) -> bool {
    match (a, b) {
        (MuTerm::Var(x), MuTerm::Var(y)) => match (resolve(left, x), resolve(right, y)) {
            (None, None) => x == y,
            (l, r) => l == r,
        },
        (MuTerm::Op(f, xs), MuTerm::Op(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(s, t)| alpha(s, t, left, right))
        }
        (MuTerm::Fix(s, x, t), MuTerm::Fix(r, y, u)) => {
            if s != r {
                return false;
            }
            left.push(Vec::from([x.as_str()]));
            right.push(Vec::from([y.as_str()]));
            let eq = alpha(t, u, left, right);
            left.pop();
            right.pop();
            eq
        }
        (MuTerm::Subst(t, xs), MuTerm::Subst(u, ys)) => {
            if xs.len() != ys.len() || !xs.iter().zip(ys).all(|((_, s), (_, r))| alpha(s, r, left, right)) {
                return false;
            }
            left.push(xs.iter().map(|(x, _)| x.as_str()).collect());
            right.push(ys.iter().map(|(y, _)| y.as_str()).collect());
            let eq = alpha(t, u, left, right);
            left.pop();
            right.pop();
            eq
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::muterm::parse;

    fn rho(pairs: &[(&str, &str)]) -> Substitution {
        pairs.iter().map(|&(x, t)| (x.into(), parse(t).unwrap())).collect()
    }

    #[test]
    fn variable_lookup() {
        let t = parse("mu y. g(y, z)").unwrap();
        let r: Substitution = [("x".into(), t.clone())].into_iter().collect();
        assert_eq!(substitute(&MuTerm::var("x"), &r), t);
        assert_eq!(substitute(&MuTerm::var("w"), &r), MuTerm::var("w"));
    }

    #[test]
    fn avoids_capture() {
        let t = parse("mu x. f(x, y)").unwrap();
        let out = substitute(&t, &rho(&[("y", "x")]));
        assert!(alpha_eq(&out, &parse("mu z. f(z, x)").unwrap()));
        assert_eq!(out.to_string(), "mu v0. f(v0, x)");
    }

    #[test]
    fn keeps_name_without_clash() {
        let t = parse("nu x. f(x, y)").unwrap();
        assert_eq!(substitute(&t, &rho(&[("y", "g(z)")])).to_string(), "nu x. f(x, g(z))");
        // bound occurrences are never replaced
        assert_eq!(substitute(&t, &rho(&[("x", "z")])), t);
    }

    #[test]
    fn evaluates_explicit_substitutions() {
        let t = parse("f(x, y)[x := g(y)]").unwrap();
        let out = substitute(&t, &rho(&[("y", "c()")]));
        assert_eq!(out, parse("f(g(c()), c())").unwrap());
    }

    #[test]
    fn alpha_examples() {
        let p = |s| parse(s).unwrap();
        assert!(alpha_eq(&p("mu x. f(x)"), &p("mu y. f(y)")));
        assert!(!alpha_eq(&p("mu x. f(x)"), &p("nu x. f(x)")));
        assert!(!alpha_eq(&p("x"), &p("y")));
        assert!(!alpha_eq(&p("mu x. f(y)"), &p("mu y. f(y)")));
        assert!(alpha_eq(&p("mu x. mu y. f(x, y)"), &p("mu y. mu x. f(y, x)")));
        assert!(!alpha_eq(&p("mu x. mu y. f(x, y)"), &p("mu x. mu y. f(y, x)")));
        assert!(alpha_eq(&p("f(a, b)[a := c, b := d]"), &p("f(u, v)[u := c, v := d]")));
    }
}
