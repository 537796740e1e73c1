//! The full pipeline: most general context, constraint generation, solving.

use crate::alphabet::Alphabet;
use crate::error::Result;
use crate::infer::{
    gen_constraints, init_context, FreshNames, InequationSystem, Signatures, Term, TypeAssignment,
};
use crate::solver::{solve, SolveResult};
use crate::types::Type;

#[derive(Clone, Debug)]
pub struct Typing {
    pub context: TypeAssignment,
    pub result: Type,
    pub system: InequationSystem,
    pub solution: SolveResult,
}

impl Typing {
    pub fn is_typable(&self) -> bool {
        self.solution.is_solvable()
    }

    /// `τ_init·Θ` when typable.
    pub fn inferred_type(&self) -> Option<Type> {
        self.solution
            .witness
            .as_ref()
            .map(|w| w.apply(&self.result))
    }

    /// `Γ_init·Θ` when typable.
    pub fn inferred_assignment(&self) -> Option<TypeAssignment> {
        self.solution
            .witness
            .as_ref()
            .map(|w| self.context.apply(w))
    }
}

/// The generated system for `term` under the most general context.
pub fn constraints_for(
    term: &Term,
    signatures: &Signatures,
) -> Result<(TypeAssignment, Type, InequationSystem)> {
    let mut fresh = FreshNames::new();
    let (gamma, tau) = init_context(term, &mut fresh);
    let system = gen_constraints(&gamma, term, &tau, signatures, &mut fresh)?;
    Ok((gamma, tau, system))
}

pub fn check_term(term: &Term, signatures: &Signatures, alphabet: &Alphabet) -> Result<Typing> {
    alphabet.require_unary()?;
    let (context, result, system) = constraints_for(term, signatures)?;
    let solution = solve(&system, alphabet)?;
    Ok(Typing {
        context,
        result,
        system,
        solution,
    })
}
