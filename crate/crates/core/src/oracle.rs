//! Exhaustive reference procedures for cross-checking the solver and the
//! constraint generator on small inputs. Exponential; never used by the
//! main pipeline.

use std::collections::BTreeSet;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::infer::{InequationSystem, Signatures, Term, TypeAssignment};
use crate::subst::Substitution;
use crate::types::Type;

pub const DEFAULT_MAX_CANDIDATES: usize = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Monotypes up to this depth are enumerated.
    pub max_depth: usize,
    /// Abort with `BUDGET_EXCEEDED` once this many candidates were tried.
    pub max_candidates: usize,
}

impl OracleBudget {
    pub fn new(max_depth: usize) -> Self {
        OracleBudget {
            max_depth: max_depth.max(1),
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget::new(3)
    }
}

/// All monotypes of depth `<= k`, shallowest first. Within one depth,
/// unary heads vary slowest, both in declaration order.
pub fn enum_monotypes(alphabet: &Alphabet, k: usize) -> Result<Vec<Type>> {
    alphabet.require_unary()?;
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut layers: Vec<Vec<Type>> = vec![alphabet
        .nullary()
        .map(|c| Type::con(c.name.clone()))
        .collect()];
    for _ in 1..k {
        let prev = layers.last().unwrap();
        let next: Vec<Type> = alphabet
            .unary()
            .flat_map(|l| {
                prev.iter()
                    .map(move |t| Type::unary(l.name.clone(), t.clone()))
            })
            .collect();
        layers.push(next);
    }
    Ok(layers.into_iter().flatten().collect())
}

struct Counter {
    used: usize,
    cap: usize,
}

impl Counter {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            Err(Error::BudgetExceeded(self.cap))
        } else {
            Ok(())
        }
    }
}

/// Calls `visit` with every closed substitution mapping `params` into
/// `pool`, stopping early when it returns `Ok(true)`.
fn for_each_grounding(
    params: &[String],
    pool: &[Type],
    counter: &mut Counter,
    mut visit: impl FnMut(&Substitution, &mut Counter) -> Result<bool>,
) -> Result<Option<Substitution>> {
    if !params.is_empty() && pool.is_empty() {
        return Ok(None);
    }
    let mut choice = vec![0usize; params.len()];
    loop {
        counter.tick()?;
        let subst: Substitution = params
            .iter()
            .zip(&choice)
            .map(|(p, &c)| (p.clone(), pool[c].clone()))
            .collect();
        if visit(&subst, counter)? {
            return Ok(Some(subst));
        }
        let mut i = params.len();
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < pool.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// A closed solution of depth `<= k` over exactly `Par(I)`, if one exists.
pub fn brute_solution(
    system: &InequationSystem,
    k: usize,
    alphabet: &Alphabet,
    max_candidates: usize,
) -> Result<Option<Substitution>> {
    let pool = enum_monotypes(alphabet, k)?;
    let params: Vec<String> = system.params().into_iter().collect();
    let mut counter = Counter {
        used: 0,
        cap: max_candidates,
    };
    for_each_grounding(&params, &pool, &mut counter, |phi, _| {
        for ineq in system {
            if !alphabet.subtype(&phi.apply(&ineq.lhs), &phi.apply(&ineq.rhs))? {
                return Ok(false);
            }
        }
        Ok(true)
    })
}

/// Solvable at depth `k`: some closed substitution of depth `<= k` solves
/// the system.
pub fn brute_solvable(system: &InequationSystem, k: usize, alphabet: &Alphabet) -> Result<bool> {
    Ok(brute_solution(system, k, alphabet, DEFAULT_MAX_CANDIDATES)?.is_some())
}

/// Is `Γ ⊢ t : π` derivable, trying every monotype instance (up to the
/// budget depth) of each signature used at an application node?
pub fn derivable(
    gamma: &TypeAssignment,
    term: &Term,
    target: &Type,
    signatures: &Signatures,
    alphabet: &Alphabet,
    budget: &OracleBudget,
) -> Result<bool> {
    let pool = enum_monotypes(alphabet, budget.max_depth)?;
    let mut counter = Counter {
        used: 0,
        cap: budget.max_candidates,
    };
    derive(
        gamma,
        term,
        target,
        signatures,
        alphabet,
        &pool,
        &mut counter,
    )
}

fn derive(
    gamma: &TypeAssignment,
    term: &Term,
    target: &Type,
    signatures: &Signatures,
    alphabet: &Alphabet,
    pool: &[Type],
    counter: &mut Counter,
) -> Result<bool> {
    match term {
        Term::Var(x) => {
            let bound = gamma
                .get(x)
                .ok_or_else(|| Error::UnboundVariable(x.clone()))?;
            alphabet.subtype(bound, target)
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
            let params: Vec<String> = sig.params().into_iter().collect();
            let found = for_each_grounding(&params, pool, counter, |theta, counter| {
                if !alphabet.subtype(&theta.apply(&sig.codomain), target)? {
                    return Ok(false);
                }
                for (arg, dom) in args.iter().zip(&sig.domain) {
                    let want = theta.apply(dom);
                    if !derive(gamma, arg, &want, signatures, alphabet, pool, counter)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })?;
            Ok(found.is_some())
        }
    }
}

/// Some closed `Γ` over `Var(t)` and monotype `τ` (all within the budget
/// depth) with `Γ ⊢ t : τ`.
pub fn brute_typing(
    term: &Term,
    signatures: &Signatures,
    alphabet: &Alphabet,
    budget: &OracleBudget,
) -> Result<Option<(TypeAssignment, Type)>> {
    let pool = enum_monotypes(alphabet, budget.max_depth)?;
    let mut counter = Counter {
        used: 0,
        cap: budget.max_candidates,
    };
    // one slot per variable plus one for the result type
    let vars: Vec<String> = term.vars().into_iter().collect();
    let result_slot = fresh_slot(&vars);
    let mut slots = vars.clone();
    slots.push(result_slot.clone());
    let found = for_each_grounding(&slots, &pool, &mut counter, |choice, counter| {
        let gamma: TypeAssignment = vars
            .iter()
            .map(|x| (x.clone(), choice.get(x).cloned().expect("grounded")))
            .collect();
        let tau = choice.get(&result_slot).expect("grounded");
        derive(&gamma, term, tau, signatures, alphabet, &pool, counter)
    })?;
    Ok(found.map(|choice| {
        let gamma = vars
            .iter()
            .map(|x| (x.clone(), choice.get(x).cloned().expect("grounded")))
            .collect();
        (gamma, choice.get(&result_slot).cloned().expect("grounded"))
    }))
}

fn fresh_slot(vars: &[String]) -> String {
    let taken: BTreeSet<&str> = vars.iter().map(String::as_str).collect();
    let mut slot = String::from("#result");
    while taken.contains(slot.as_str()) {
        slot.push('#');
    }
    slot
}

pub fn brute_typable(
    term: &Term,
    signatures: &Signatures,
    alphabet: &Alphabet,
    budget: &OracleBudget,
) -> Result<bool> {
    Ok(brute_typing(term, signatures, alphabet, budget)?.is_some())
}
