//! Terms, signatures, and the reduction of a typing question to a system of
//! type inequations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::subst::Substitution;
use crate::types::{Depth, Type};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    /// `Var(t)`.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_closed),
        }
    }

    /// Number of nodes: variable occurrences plus applications.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::App(name, args) if args.is_empty() => f.write_str(name),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// `f : σ1 × … × σn → σ`. Parameters are local to the signature.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Signature {
    pub symbol: String,
    pub domain: Vec<Type>,
    pub codomain: Type,
}

impl Signature {
    pub fn new(symbol: impl Into<String>, domain: Vec<Type>, codomain: Type) -> Self {
        Signature {
            symbol: symbol.into(),
            domain,
            codomain,
        }
    }

    pub fn arity(&self) -> usize {
        self.domain.len()
    }

    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for t in self.domain.iter().chain(std::iter::once(&self.codomain)) {
            t.collect_params(&mut out);
        }
        out
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : ", self.symbol)?;
        for (i, t) in self.domain.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{t}")?;
        }
        if !self.domain.is_empty() {
            f.write_str(" -> ")?;
        }
        write!(f, "{}", self.codomain)
    }
}

pub type Signatures = BTreeMap<String, Signature>;

/// Finite map from term variables to types (Γ).
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct TypeAssignment {
    bindings: BTreeMap<String, Type>,
}

impl TypeAssignment {
    pub fn new() -> Self {
        TypeAssignment::default()
    }

    pub fn insert(&mut self, var: impl Into<String>, ty: Type) {
        self.bindings.insert(var.into(), ty);
    }

    pub fn get(&self, var: &str) -> Option<&Type> {
        self.bindings.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Type)> {
        self.bindings.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for t in self.bindings.values() {
            t.collect_params(&mut out);
        }
        out
    }

    /// Γ·Θ.
    pub fn apply(&self, subst: &Substitution) -> TypeAssignment {
        TypeAssignment {
            bindings: self
                .bindings
                .iter()
                .map(|(x, t)| (x.clone(), subst.apply(t)))
                .collect(),
        }
    }
}

impl FromIterator<(String, Type)> for TypeAssignment {
    fn from_iter<I: IntoIterator<Item = (String, Type)>>(iter: I) -> Self {
        TypeAssignment {
            bindings: iter.into_iter().collect(),
        }
    }
}

/// `lhs ⪯ rhs`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Inequation {
    pub lhs: Type,
    pub rhs: Type,
}

impl Inequation {
    pub fn new(lhs: Type, rhs: Type) -> Self {
        Inequation { lhs, rhs }
    }

    pub fn apply(&self, subst: &Substitution) -> Inequation {
        Inequation::new(subst.apply(&self.lhs), subst.apply(&self.rhs))
    }

    pub fn is_solved_by(&self, subst: &Substitution, alphabet: &Alphabet) -> Result<bool> {
        alphabet.subtype(&subst.apply(&self.lhs), &subst.apply(&self.rhs))
    }
}

impl Depth for Inequation {
    fn depth(&self) -> usize {
        self.lhs.depth().max(self.rhs.depth())
    }
}

impl fmt::Display for Inequation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}

/// A set of inequations, kept in canonical (sorted, deduplicated) order so
/// that structurally equal systems compare and hash equal.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct InequationSystem {
    inequations: BTreeSet<Inequation>,
}

impl InequationSystem {
    pub fn new() -> Self {
        InequationSystem::default()
    }

    pub fn insert(&mut self, ineq: Inequation) -> bool {
        self.inequations.insert(ineq)
    }

    pub fn len(&self) -> usize {
        self.inequations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inequations.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Inequation> {
        self.inequations.iter()
    }

    pub fn contains(&self, ineq: &Inequation) -> bool {
        self.inequations.contains(ineq)
    }

    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for i in &self.inequations {
            i.lhs.collect_params(&mut out);
            i.rhs.collect_params(&mut out);
        }
        out
    }

    pub fn apply(&self, subst: &Substitution) -> InequationSystem {
        self.iter().map(|i| i.apply(subst)).collect()
    }
}

impl Depth for InequationSystem {
    fn depth(&self) -> usize {
        self.iter().map(Depth::depth).max().unwrap_or(0)
    }
}

impl FromIterator<Inequation> for InequationSystem {
    fn from_iter<I: IntoIterator<Item = Inequation>>(iter: I) -> Self {
        InequationSystem {
            inequations: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a InequationSystem {
    type Item = &'a Inequation;
    type IntoIter = std::collections::btree_set::Iter<'a, Inequation>;

    fn into_iter(self) -> Self::IntoIter {
        self.inequations.iter()
    }
}

impl fmt::Display for InequationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, ineq) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{ineq}")?;
        }
        f.write_str("}")
    }
}

/// Source of parameter names `base#k` with a strictly increasing `k`.
///
/// The surface syntax cannot spell `#`, so generated names never clash with
/// user parameters, and the counter keeps them distinct from each other.
#[derive(Clone, Debug, Default)]
pub struct FreshNames {
    next: u64,
}

impl FreshNames {
    pub fn new() -> Self {
        FreshNames::default()
    }

    pub fn fresh(&mut self, base: &str) -> String {
        let base = base.split('#').next().unwrap_or(base);
        let name = format!("{base}#{}", self.next);
        self.next += 1;
        name
    }
}

/// Most general assignment and result type for `t`: a distinct fresh
/// parameter for every free variable and one more for the term itself.
pub fn init_context(term: &Term, fresh: &mut FreshNames) -> (TypeAssignment, Type) {
    let gamma = term
        .vars()
        .into_iter()
        .map(|x| {
            let p = fresh.fresh(&x);
            (x, Type::Param(p))
        })
        .collect();
    (gamma, Type::Param(fresh.fresh("t")))
}

/// `ineq(Γ, t : τ)`.
pub fn gen_constraints(
    gamma: &TypeAssignment,
    term: &Term,
    ty: &Type,
    signatures: &Signatures,
    fresh: &mut FreshNames,
) -> Result<InequationSystem> {
    let mut out = InequationSystem::new();
    gen_into(gamma, term, ty, signatures, fresh, &mut out)?;
    Ok(out)
}

fn gen_into(
    gamma: &TypeAssignment,
    term: &Term,
    ty: &Type,
    signatures: &Signatures,
    fresh: &mut FreshNames,
    out: &mut InequationSystem,
) -> Result<()> {
    match term {
        Term::Var(x) => {
            let bound = gamma
                .get(x)
                .ok_or_else(|| Error::UnboundVariable(x.clone()))?;
            out.insert(Inequation::new(bound.clone(), ty.clone()));
        }
        Term::App(f, args) => {
            let sig = signatures
                .get(f)
                .ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
            if sig.arity() != args.len() {
                return Err(Error::SymbolArity {
                    name: f.clone(),
                    expected: sig.arity(),
                    found: args.len(),
                });
            }
            let renaming: Substitution = sig
                .params()
                .into_iter()
                .map(|p| {
                    let q = fresh.fresh(&p);
                    (p, Type::Param(q))
                })
                .collect();
            out.insert(Inequation::new(renaming.apply(&sig.codomain), ty.clone()));
            for (arg, dom) in args.iter().zip(&sig.domain) {
                gen_into(gamma, arg, &renaming.apply(dom), signatures, fresh, out)?;
            }
        }
    }
    Ok(())
}

/// `Θ ⊨ I`: every inequation holds after substitution.
pub fn verify_witness(
    system: &InequationSystem,
    subst: &Substitution,
    alphabet: &Alphabet,
) -> Result<bool> {
    for ineq in system {
        if !ineq.is_solved_by(subst, alphabet)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Constructor;

    fn r() -> Alphabet {
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

    fn list_sigs() -> Signatures {
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

    fn ineq(l: Type, r: Type) -> Inequation {
        Inequation::new(l, r)
    }

    #[test]
    fn init_context_is_fresh_and_distinct() {
        let mut fresh = FreshNames::new();
        let t = Term::app("f", vec![Term::var("x"), Term::var("y")]);
        let (gamma, tau) = init_context(&t, &mut fresh);
        assert_eq!(gamma.len(), 2);
        let mut seen = gamma.params();
        assert_eq!(seen.len(), 2);
        let Type::Param(p) = &tau else { panic!() };
        assert!(seen.insert(p.clone()));

        let (gamma, _) = init_context(&Term::constant("zero"), &mut fresh);
        assert!(gamma.is_empty());
    }

    #[test]
    fn variable_clause() {
        let mut gamma = TypeAssignment::new();
        gamma.insert("x", Type::param("x0"));
        let sys = gen_constraints(
            &gamma,
            &Term::var("x"),
            &Type::param("a"),
            &list_sigs(),
            &mut FreshNames::new(),
        )
        .unwrap();
        assert_eq!(
            sys,
            [ineq(Type::param("x0"), Type::param("a"))]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn successor_clause() {
        let mut gamma = TypeAssignment::new();
        gamma.insert("x", Type::param("x0"));
        let t = Term::app("s", vec![Term::var("x")]);
        let sys = gen_constraints(
            &gamma,
            &t,
            &Type::param("a"),
            &list_sigs(),
            &mut FreshNames::new(),
        )
        .unwrap();
        let expected: InequationSystem = [
            ineq(Type::con("nat"), Type::param("a")),
            ineq(Type::param("x0"), Type::con("nat")),
        ]
        .into_iter()
        .collect();
        assert_eq!(sys, expected);
    }

    #[test]
    fn cons_zero_nil() {
        let t = Term::app("cons", vec![Term::constant("zero"), Term::constant("nil")]);
        let mut fresh = FreshNames::new();
        let sys = gen_constraints(
            &TypeAssignment::new(),
            &t,
            &Type::param("a"),
            &list_sigs(),
            &mut fresh,
        )
        .unwrap();
        // cons renames 'a to a#0, nil renames it to a#1
        let a1 = || Type::param("a#0");
        let a2 = || Type::param("a#1");
        let expected: InequationSystem = [
            ineq(Type::unary("list", a1()), Type::param("a")),
            ineq(Type::con("nat"), a1()),
            ineq(Type::unary("list", a2()), Type::unary("list", a1())),
        ]
        .into_iter()
        .collect();
        assert_eq!(sys, expected);
        assert_eq!(sys.len(), t.size());
    }

    #[test]
    fn generation_errors() {
        let sigs = list_sigs();
        let g = TypeAssignment::new();
        let tau = Type::param("a");
        let mut fresh = FreshNames::new();
        assert_eq!(
            gen_constraints(&g, &Term::constant("foo"), &tau, &sigs, &mut fresh),
            Err(Error::UnknownSymbol("foo".into()))
        );
        assert_eq!(
            gen_constraints(&g, &Term::app("s", vec![]), &tau, &sigs, &mut fresh),
            Err(Error::SymbolArity {
                name: "s".into(),
                expected: 1,
                found: 0
            })
        );
        assert_eq!(
            gen_constraints(&g, &Term::var("x"), &tau, &sigs, &mut fresh),
            Err(Error::UnboundVariable("x".into()))
        );
    }

    #[test]
    fn duplicate_inequations_collapse() {
        let mut sigs = Signatures::new();
        sigs.insert(
            "f".into(),
            Signature::new(
                "f",
                vec![Type::con("nat"), Type::con("nat")],
                Type::con("nat"),
            ),
        );
        let mut gamma = TypeAssignment::new();
        gamma.insert("x", Type::param("x0"));
        let t = Term::app("f", vec![Term::var("x"), Term::var("x")]);
        let sys =
            gen_constraints(&gamma, &t, &Type::param("a"), &sigs, &mut FreshNames::new()).unwrap();
        assert_eq!(sys.len(), 2);
        assert!(sys.len() <= t.size());
    }

    #[test]
    fn verify_witness_examples() {
        let a = r();
        let sys: InequationSystem = [ineq(Type::param("a"), Type::con("nat"))]
            .into_iter()
            .collect();
        assert!(verify_witness(&sys, &Substitution::singleton("a", Type::con("nat")), &a).unwrap());
        assert!(
            !verify_witness(&sys, &Substitution::singleton("a", Type::con("int")), &a).unwrap()
        );
        assert!(verify_witness(
            &InequationSystem::new(),
            &Substitution::singleton("q", Type::con("int")),
            &a
        )
        .unwrap());
    }

    #[test]
    fn fresh_names_never_repeat() {
        let mut f = FreshNames::new();
        let a = f.fresh("a");
        let b = f.fresh("a#0");
        assert_ne!(a, b);
        assert_eq!(b, "a#1");
    }
}
