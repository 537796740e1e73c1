//! Deciding solvability of inequation systems over an alphabet whose
//! constructors are at most unary.
//!
//! Each round instantiates every parameter of a system with either a nullary
//! constructor or a unary constructor wrapped around the parameter itself,
//! then normalizes. This never introduces parameters, never adds
//! inequations, and never increases depth, so only finitely many systems are
//! reachable and a breadth-first search with a visited set terminates.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::infer::{verify_witness, Inequation, InequationSystem};
use crate::subst::Substitution;
use crate::types::{Depth, Type};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Normalized {
    /// At least one side is a parameter.
    Keep(Inequation),
    True,
    False,
}

/// Result of normalizing a whole system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NormalForm {
    System(InequationSystem),
    /// Some inequation normalized to false.
    False,
}

impl NormalForm {
    pub fn system(&self) -> Option<&InequationSystem> {
        match self {
            NormalForm::System(s) => Some(s),
            NormalForm::False => None,
        }
    }

    pub fn is_false(&self) -> bool {
        matches!(self, NormalForm::False)
    }
}

fn unary_arg<'t>(alphabet: &Alphabet, name: &str, args: &'t [Type]) -> Result<Option<&'t Type>> {
    let arity = alphabet.arity(name)?;
    match arity {
        0 | 1 => Ok(args.first()),
        _ => Err(Error::UnsupportedArity {
            name: name.to_string(),
            arity,
        }),
    }
}

/// Strips matching unary heads until a parameter is exposed or the heads
/// decide the inequation.
pub fn nf_ineq(ineq: &Inequation, alphabet: &Alphabet) -> Result<Normalized> {
    let (mut lhs, mut rhs) = (&ineq.lhs, &ineq.rhs);
    loop {
        match (lhs, rhs) {
            (Type::Param(_), _) | (_, Type::Param(_)) => {
                return Ok(if std::ptr::eq(lhs, &ineq.lhs) {
                    Normalized::Keep(ineq.clone())
                } else {
                    Normalized::Keep(Inequation::new(lhs.clone(), rhs.clone()))
                });
            }
            (Type::App(k, ks), Type::App(l, ls)) => {
                let inner_l = unary_arg(alphabet, k, ks)?;
                let inner_r = unary_arg(alphabet, l, ls)?;
                if !alphabet.constructor_leq(k, l)? {
                    return Ok(Normalized::False);
                }
                match (inner_l, inner_r) {
                    (Some(s), Some(t)) => {
                        lhs = s;
                        rhs = t;
                    }
                    _ => return Ok(Normalized::True),
                }
            }
        }
    }
}

/// Normalizes every member, dropping those that are true.
pub fn nf_system(system: &InequationSystem, alphabet: &Alphabet) -> Result<NormalForm> {
    let mut out = InequationSystem::new();
    for ineq in system {
        match nf_ineq(ineq, alphabet)? {
            Normalized::Keep(i) => {
                out.insert(i);
            }
            Normalized::True => {}
            Normalized::False => return Ok(NormalForm::False),
        }
    }
    Ok(NormalForm::System(out))
}

/// Depth-one instantiations of `params`: every parameter maps to a nullary
/// constructor or to `L(itself)` for a unary `L`.
///
/// Parameters vary in sorted order with the first one most significant;
/// constructors are tried in declaration order.
pub fn all_par_subst(params: &BTreeSet<String>, alphabet: &Alphabet) -> Result<Vec<Substitution>> {
    alphabet.require_unary()?;
    let ctors = alphabet.constructors();
    let params: Vec<&String> = params.iter().collect();
    let total = ctors
        .len()
        .checked_pow(params.len() as u32)
        .unwrap_or(usize::MAX);
    let mut out = Vec::with_capacity(total.min(1 << 16));
    let mut choice = vec![0usize; params.len()];
    loop {
        out.push(
            params
                .iter()
                .zip(&choice)
                .map(|(p, &c)| {
                    let ctor = &ctors[c];
                    let image = if ctor.arity == 0 {
                        Type::con(ctor.name.clone())
                    } else {
                        Type::unary(ctor.name.clone(), Type::Param((*p).clone()))
                    };
                    ((*p).clone(), image)
                })
                .collect(),
        );
        // odometer, last parameter fastest
        let mut i = params.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < ctors.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// One instantiation round: `nf(IΦ)` for every `Φ` over `Par(I)`, dropping
/// the false ones. Each system is paired with the `Φ` that produced it.
pub fn inst(
    system: &InequationSystem,
    alphabet: &Alphabet,
) -> Result<Vec<(InequationSystem, Substitution)>> {
    let mut out = Vec::new();
    for phi in all_par_subst(&system.params(), alphabet)? {
        if let NormalForm::System(j) = nf_system(&system.apply(&phi), alphabet)? {
            out.push((j, phi));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
pub struct SolveStats {
    /// Instantiation rounds performed.
    pub generations: usize,
    /// Systems passed to `inst`.
    pub systems_explored: usize,
    /// Distinct systems remembered when the search stopped.
    pub memory_size: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolveResult {
    /// Present iff the system is solvable; always verified against the
    /// original input.
    pub witness: Option<Substitution>,
    pub stats: SolveStats,
    /// Frontier size after each round.
    pub frontier_sizes: Vec<usize>,
}

impl SolveResult {
    pub fn is_solvable(&self) -> bool {
        self.witness.is_some()
    }
}

/// Systems of one generation, with the first-found way of reaching each.
struct Frontier {
    generation: usize,
    systems: BTreeSet<InequationSystem>,
    parents: BTreeMap<InequationSystem, (InequationSystem, Substitution)>,
}

pub fn solve(raw: &InequationSystem, alphabet: &Alphabet) -> Result<SolveResult> {
    alphabet.require_unary()?;
    let start = match nf_system(raw, alphabet)? {
        NormalForm::False => {
            return Ok(SolveResult {
                witness: None,
                stats: SolveStats::default(),
                frontier_sizes: Vec::new(),
            })
        }
        NormalForm::System(s) => s,
    };
    if start.is_empty() {
        return finish(
            raw,
            alphabet,
            Substitution::new(),
            SolveStats::default(),
            Vec::new(),
        );
    }

    let mut memory: BTreeSet<InequationSystem> = BTreeSet::new();
    memory.insert(start.clone());
    // every remembered system except the start, with its predecessor
    let mut parents: BTreeMap<InequationSystem, (InequationSystem, Substitution)> = BTreeMap::new();
    let mut frontier = Frontier {
        generation: 0,
        systems: BTreeSet::from([start.clone()]),
        parents: BTreeMap::new(),
    };
    let mut stats = SolveStats::default();
    let mut sizes = Vec::new();

    loop {
        let mut next = Frontier {
            generation: frontier.generation + 1,
            systems: BTreeSet::new(),
            parents: BTreeMap::new(),
        };
        for parent in &frontier.systems {
            stats.systems_explored += 1;
            for (child, phi) in inst(parent, alphabet)? {
                if memory.contains(&child) || next.systems.contains(&child) {
                    continue;
                }
                next.parents.insert(child.clone(), (parent.clone(), phi));
                next.systems.insert(child);
            }
        }
        stats.generations = next.generation;
        sizes.push(next.systems.len());
        parents.append(&mut frontier.parents);

        let empty = InequationSystem::new();
        if next.systems.contains(&empty) {
            parents.append(&mut next.parents);
            stats.memory_size = memory.len();
            let witness = reconstruct(&parents, &start, empty).restrict(&raw.params());
            return finish(raw, alphabet, witness, stats, sizes);
        }
        if next.systems.is_empty() {
            stats.memory_size = memory.len();
            return Ok(SolveResult {
                witness: None,
                stats,
                frontier_sizes: sizes,
            });
        }
        memory.extend(next.systems.iter().cloned());
        frontier = next;
    }
}

/// Composes `Φ1 ∘ … ∘ Φg` along the parent chain from `start` to `end`.
fn reconstruct(
    parents: &BTreeMap<InequationSystem, (InequationSystem, Substitution)>,
    start: &InequationSystem,
    end: InequationSystem,
) -> Substitution {
    let mut chain = Vec::new();
    let mut cur = end;
    while &cur != start {
        let (parent, phi) = &parents[&cur];
        chain.push(phi);
        cur = parent.clone();
    }
    chain
        .into_iter()
        .rev()
        .fold(Substitution::new(), |acc, phi| acc.compose(phi))
}

fn finish(
    raw: &InequationSystem,
    alphabet: &Alphabet,
    witness: Substitution,
    stats: SolveStats,
    frontier_sizes: Vec<usize>,
) -> Result<SolveResult> {
    if !verify_witness(raw, &witness, alphabet)? {
        return Err(Error::InternalWitnessFailure);
    }
    debug_assert!(witness.depth() <= stats.generations);
    Ok(SolveResult {
        witness: Some(witness),
        stats,
        frontier_sizes,
    })
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

    fn a() -> Type {
        Type::param("a")
    }
    fn nat() -> Type {
        Type::con("nat")
    }
    fn int() -> Type {
        Type::con("int")
    }
    fn le(l: Type, r: Type) -> Inequation {
        Inequation::new(l, r)
    }
    fn sys<const N: usize>(items: [Inequation; N]) -> InequationSystem {
        items.into_iter().collect()
    }

    #[test]
    fn nf_cases() {
        let r = r();
        assert_eq!(nf_ineq(&le(nat(), int()), &r).unwrap(), Normalized::True);
        assert_eq!(
            nf_ineq(&le(Type::unary("list", a()), Type::unary("set", nat())), &r).unwrap(),
            Normalized::Keep(le(a(), nat()))
        );
        assert_eq!(
            nf_ineq(&le(Type::unary("set", a()), Type::unary("list", nat())), &r).unwrap(),
            Normalized::False
        );
        let keep = le(a(), Type::unary("set", nat()));
        assert_eq!(nf_ineq(&keep, &r).unwrap(), Normalized::Keep(keep.clone()));
        assert_eq!(nf_ineq(&le(int(), nat()), &r).unwrap(), Normalized::False);
        assert_eq!(
            nf_ineq(&le(nat(), Type::unary("list", a())), &r).unwrap(),
            Normalized::False
        );
    }

    #[test]
    fn nf_mixed_arity_heads() {
        let al = Alphabet::new(
            [Constructor::new("k", 0), Constructor::new("l", 1)],
            [("k", "l")],
        )
        .unwrap();
        assert_eq!(
            nf_ineq(&le(Type::con("k"), Type::unary("l", a())), &al).unwrap(),
            Normalized::True
        );
        assert_eq!(
            nf_ineq(&le(Type::unary("l", a()), Type::con("k")), &al).unwrap(),
            Normalized::False
        );
    }

    #[test]
    fn nf_rejects_binary() {
        let al = Alphabet::new(
            [Constructor::new("k", 0), Constructor::new("pair", 2)],
            Vec::<(&str, &str)>::new(),
        )
        .unwrap();
        let p = Type::app("pair", vec![a(), a()]);
        assert!(matches!(
            nf_ineq(&le(p.clone(), p), &al),
            Err(Error::UnsupportedArity { .. })
        ));
    }

    #[test]
    fn nf_system_examples() {
        let r = r();
        assert_eq!(
            nf_system(&sys([le(nat(), int()), le(a(), nat())]), &r).unwrap(),
            NormalForm::System(sys([le(a(), nat())]))
        );
        assert_eq!(
            nf_system(&sys([le(nat(), int())]), &r).unwrap(),
            NormalForm::System(InequationSystem::new())
        );
        assert_eq!(
            nf_system(
                &sys([
                    le(Type::unary("set", a()), Type::unary("list", nat())),
                    le(a(), nat())
                ]),
                &r
            )
            .unwrap(),
            NormalForm::False
        );
    }

    #[test]
    fn all_par_subst_examples() {
        let r = r();
        let one = BTreeSet::from(["a".to_string()]);
        assert_eq!(
            all_par_subst(&one, &r).unwrap(),
            vec![
                Substitution::singleton("a", nat()),
                Substitution::singleton("a", int()),
                Substitution::singleton("a", Type::unary("list", a())),
                Substitution::singleton("a", Type::unary("set", a())),
            ]
        );
        assert_eq!(
            all_par_subst(&BTreeSet::new(), &r).unwrap(),
            vec![Substitution::new()]
        );
        let solo = Alphabet::new([Constructor::new("nat", 0)], Vec::<(&str, &str)>::new()).unwrap();
        let two = BTreeSet::from(["a".to_string(), "b".to_string()]);
        let expected: Substitution = [("a".to_string(), nat()), ("b".to_string(), nat())]
            .into_iter()
            .collect();
        assert_eq!(all_par_subst(&two, &solo).unwrap(), vec![expected]);
        assert_eq!(all_par_subst(&two, &r).unwrap().len(), 16);
    }

    #[test]
    fn inst_examples() {
        let r = r();
        assert_eq!(
            inst(&sys([le(a(), nat())]), &r).unwrap(),
            vec![(InequationSystem::new(), Substitution::singleton("a", nat()))]
        );
        assert_eq!(
            inst(&InequationSystem::new(), &r).unwrap(),
            vec![(InequationSystem::new(), Substitution::new())]
        );
        assert!(inst(&sys([le(a(), nat()), le(int(), a())]), &r)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn solve_examples() {
        let r = r();
        let res = solve(&sys([le(a(), nat())]), &r).unwrap();
        assert_eq!(res.witness, Some(Substitution::singleton("a", nat())));
        assert_eq!(res.stats.generations, 1);

        let res = solve(&sys([le(a(), nat()), le(int(), a())]), &r).unwrap();
        assert!(!res.is_solvable());
        assert_eq!(res.stats.generations, 1);

        let res = solve(&InequationSystem::new(), &r).unwrap();
        assert_eq!(res.witness, Some(Substitution::new()));
        assert_eq!(res.stats.generations, 0);

        let ab = sys([le(a(), Type::param("b"))]);
        let res = solve(&ab, &r).unwrap();
        let w = res.witness.unwrap();
        assert!(verify_witness(&ab, &w, &r).unwrap());
        let expected: Substitution = [("a".to_string(), nat()), ("b".to_string(), nat())]
            .into_iter()
            .collect();
        assert_eq!(w, expected);
    }

    #[test]
    fn solve_false_on_normalization() {
        let r = r();
        let res = solve(&sys([le(int(), nat())]), &r).unwrap();
        assert!(!res.is_solvable());
        assert_eq!(res.stats.generations, 0);
    }

    #[test]
    fn solve_needs_several_rounds() {
        let r = r();
        // 'a must be list(list(nat)) or list(list(int)) or set(..)
        let t = Type::unary("list", Type::unary("list", nat()));
        let system = sys([
            le(t.clone(), a()),
            le(a(), Type::unary("set", Type::unary("set", int()))),
        ]);
        let res = solve(&system, &r).unwrap();
        let w = res.witness.unwrap();
        assert!(verify_witness(&system, &w, &r).unwrap());
        assert_eq!(res.stats.generations, 3);
        assert_eq!(w.get("a"), Some(&t));
    }

    #[test]
    fn solve_reflexive_parameter_cycle() {
        let r = r();
        // 'a <= 'a survives every unary instantiation; the nullary one closes it
        let res = solve(&sys([le(a(), a())]), &r).unwrap();
        assert!(res.is_solvable());
    }
}
