//! Generators shared by the integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use typeineq::{
    Alphabet, Constructor, Inequation, InequationSystem, Signature, Signatures, Substitution, Term,
    Type,
};

pub fn r_alphabet() -> Alphabet {
    Alphabet::new(
        [
            Constructor::new("nat", 0),
            Constructor::new("int", 0),
            Constructor::new("list", 1),
            Constructor::new("set", 1),
        ],
        [("nat", "int"), ("list", "set")],
    )
    .unwrap()
}

pub fn list_signatures() -> Signatures {
    let a = || Type::param("a");
    let list_a = || Type::unary("list", a());
    [
        Signature::new("zero", vec![], Type::con("nat")),
        Signature::new("s", vec![Type::con("nat")], Type::con("nat")),
        Signature::new("nil", vec![], list_a()),
        Signature::new("cons", vec![a(), list_a()], list_a()),
    ]
    .into_iter()
    .map(|s| (s.symbol.clone(), s))
    .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every alphabet with `1..=max` constructors of arity <= 1 (at least one
/// nullary) and every compatible order, one representative per
/// isomorphism class. Nullary constructors are named `k0, k1, ..`, unary
/// ones `l0, l1, ..`.
pub fn all_small_alphabets(max: usize) -> Vec<Alphabet> {
    let mut out = Vec::new();
    for n in 1..=max {
        for nullary in 1..=n {
            let names: Vec<(String, usize)> = (0..n)
                .map(|i| {
                    if i < nullary {
                        (format!("k{i}"), 0)
                    } else {
                        (format!("l{}", i - nullary), 1)
                    }
                })
                .collect();
            let offdiag: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .collect();
            let perms: Vec<Vec<usize>> = permutations(n)
                .into_iter()
                .filter(|p| (0..n).all(|i| names[p[i]].1 == names[i].1))
                .collect();
            let mut seen = BTreeSet::new();
            for mask in 0u32..(1 << offdiag.len()) {
                let pairs: Vec<(String, String)> = offdiag
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask & (1 << b) != 0)
                    .map(|(_, &(i, j))| (names[i].0.clone(), names[j].0.clone()))
                    .collect();
                let ctors = names.iter().map(|(s, a)| Constructor::new(s.clone(), *a));
                let Ok(alphabet) = Alphabet::new(ctors, pairs) else {
                    continue;
                };
                let leq = |i: usize, j: usize| {
                    alphabet.constructor_leq(&names[i].0, &names[j].0).unwrap()
                };
                let canon = perms
                    .iter()
                    .map(|p| {
                        (0..n)
                            .flat_map(|i| (0..n).map(move |j| (i, j)))
                            .map(|(i, j)| leq(p[i], p[j]))
                            .collect::<Vec<bool>>()
                    })
                    .min()
                    .unwrap();
                if seen.insert(canon) {
                    out.push(alphabet);
                }
            }
        }
    }
    out
}

/// All types of depth <= `max_depth` over the alphabet and `params`.
pub fn all_types(alphabet: &Alphabet, params: &[&str], max_depth: usize) -> Vec<Type> {
    let mut by_depth: Vec<Vec<Type>> = vec![params.iter().map(|p| Type::param(*p)).collect()];
    for d in 1..=max_depth {
        let mut layer = Vec::new();
        if d == 1 {
            layer.extend(alphabet.nullary().map(|c| Type::con(c.name.clone())));
        }
        for l in alphabet.unary() {
            for t in &by_depth[d - 1] {
                layer.push(Type::unary(l.name.clone(), t.clone()));
            }
        }
        by_depth.push(layer);
    }
    by_depth.into_iter().flatten().collect()
}

pub fn random_type(
    rng: &mut StdRng,
    alphabet: &Alphabet,
    params: &[&str],
    max_depth: usize,
) -> Type {
    let ctors = alphabet.constructors();
    if max_depth == 0 || (!params.is_empty() && rng.gen_bool(0.25)) {
        if params.is_empty() {
            return Type::con(alphabet.nullary().next().unwrap().name.clone());
        }
        return Type::param(*params.choose(rng).unwrap());
    }
    let c = ctors.choose(rng).unwrap();
    let args = (0..c.arity)
        .map(|_| random_type(rng, alphabet, params, max_depth - 1))
        .collect();
    Type::app(c.name.clone(), args)
}

pub fn random_monotype(rng: &mut StdRng, alphabet: &Alphabet, max_depth: usize) -> Type {
    let nullary: Vec<_> = alphabet.nullary().collect();
    let unary: Vec<_> = alphabet.unary().collect();
    let depth = rng.gen_range(1..=max_depth);
    let mut t = Type::con(nullary.choose(rng).unwrap().name.clone());
    for _ in 1..depth {
        match unary.choose(rng) {
            Some(l) => t = Type::unary(l.name.clone(), t),
            None => break,
        }
    }
    t
}

pub fn random_substitution(
    rng: &mut StdRng,
    alphabet: &Alphabet,
    params: &[&str],
    max_depth: usize,
) -> Substitution {
    let mut out = Substitution::new();
    for p in params {
        if rng.gen_bool(0.7) {
            out.insert(*p, random_type(rng, alphabet, params, max_depth));
        }
    }
    out
}

pub fn grounding(
    rng: &mut StdRng,
    alphabet: &Alphabet,
    params: &BTreeSet<String>,
    max_depth: usize,
) -> Substitution {
    params
        .iter()
        .map(|p| (p.clone(), random_monotype(rng, alphabet, max_depth)))
        .collect()
}

pub fn random_system(
    rng: &mut StdRng,
    alphabet: &Alphabet,
    params: &[&str],
    max_len: usize,
    max_depth: usize,
) -> InequationSystem {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| {
            Inequation::new(
                random_type(rng, alphabet, params, max_depth),
                random_type(rng, alphabet, params, max_depth),
            )
        })
        .collect()
}

/// Random alphabet with up to `max` constructors of arity <= 1, built from
/// random generating pairs until one validates.
pub fn random_alphabet(rng: &mut StdRng, max: usize) -> Alphabet {
    random_alphabet_with_arity(rng, max, 1)
}

/// Like [`random_alphabet`] with arities up to `max_arity`. `c0` is always
/// nullary.
pub fn random_alphabet_with_arity(rng: &mut StdRng, max: usize, max_arity: usize) -> Alphabet {
    loop {
        let n = rng.gen_range(1..=max);
        let ctors: Vec<Constructor> = (0..n)
            .map(|i| {
                let arity = if i == 0 {
                    0
                } else {
                    rng.gen_range(0..=max_arity)
                };
                Constructor::new(format!("c{i}"), arity)
            })
            .collect();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && rng.gen_bool(0.3) {
                    pairs.push((format!("c{i}"), format!("c{j}")));
                }
            }
        }
        if let Ok(a) = Alphabet::new(ctors, pairs) {
            return a;
        }
    }
}

/// A random type above `ty` (`lower = true`: below it) with depth at most
/// `budget`, following the constructor order and common-prefix arguments.
pub fn random_neighbour(
    rng: &mut StdRng,
    alphabet: &Alphabet,
    ty: &Type,
    params: &[&str],
    budget: usize,
    lower: bool,
) -> Type {
    let Type::App(k, args) = ty else {
        return ty.clone();
    };
    let related: Vec<&Constructor> = alphabet
        .constructors()
        .iter()
        .filter(|c| {
            let (lo, hi) = if lower {
                (c.name.as_str(), k.as_str())
            } else {
                (k.as_str(), c.name.as_str())
            };
            alphabet.constructor_leq(lo, hi).unwrap()
        })
        .collect();
    let c = related.choose(rng).unwrap();
    let inner = budget.saturating_sub(1);
    let new_args = (0..c.arity)
        .map(|i| match args.get(i) {
            Some(a) => random_neighbour(rng, alphabet, a, params, inner, lower),
            None => random_type(rng, alphabet, params, inner),
        })
        .collect();
    Type::app(c.name.clone(), new_args)
}

/// Every term with at most `max_size` nodes over the signature symbols and
/// the given variables.
pub fn all_terms(signatures: &Signatures, vars: &[&str], max_size: usize) -> Vec<Term> {
    // by_size[n] = terms with exactly n nodes
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_size + 1];
    for n in 1..=max_size {
        let mut layer = Vec::new();
        if n == 1 {
            layer.extend(vars.iter().map(|v| Term::var(*v)));
        }
        for sig in signatures.values() {
            for args in arg_lists(&by_size, sig.arity(), n - 1) {
                layer.push(Term::app(sig.symbol.clone(), args));
            }
        }
        by_size[n] = layer;
    }
    by_size.into_iter().flatten().collect()
}

fn arg_lists(by_size: &[Vec<Term>], count: usize, total: usize) -> Vec<Vec<Term>> {
    if count == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total {
        if first >= by_size.len() {
            break;
        }
        for rest in arg_lists(by_size, count - 1, total - first) {
            for t in &by_size[first] {
                let mut v = vec![t.clone()];
                v.extend(rest.iter().cloned());
                out.push(v);
            }
        }
    }
    out
}
