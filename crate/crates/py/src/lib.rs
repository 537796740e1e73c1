//! Python bindings: `Alphabet` for subtype queries and `Problem` for the
//! full problem-file workflow. Verdicts come back as plain dicts.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use typeineq::check::{check_term, constraints_for};
use typeineq::problem::{parse_problem, parse_system, parse_type, Payload};
use typeineq::{solve, Constructor, Error, SolveResult, Substitution};

create_exception!(
    typeineq,
    TypeIneqError,
    PyException,
    "Raised with (code, message)."
);

fn to_py(err: Error) -> PyErr {
    TypeIneqError::new_err((err.code(), err.to_string()))
}

fn subst_map(subst: &Substitution) -> BTreeMap<String, String> {
    subst
        .iter()
        .map(|(p, t)| (p.to_string(), t.to_string()))
        .collect()
}

fn result_dict<'py>(
    py: Python<'py>,
    result: &SolveResult,
    positive: &str,
    negative: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item(
        "verdict",
        if result.is_solvable() {
            positive
        } else {
            negative
        },
    )?;
    if let Some(w) = &result.witness {
        d.set_item("witness", subst_map(w))?;
    }
    let stats = PyDict::new(py);
    stats.set_item("generations", result.stats.generations)?;
    stats.set_item("systems_explored", result.stats.systems_explored)?;
    stats.set_item("memory_size", result.stats.memory_size)?;
    d.set_item("stats", stats)?;
    d.set_item("frontier_sizes", result.frontier_sizes.clone())?;
    Ok(d)
}

/// An ordered type alphabet, validated on construction.
#[pyclass(module = "typeineq", frozen)]
struct Alphabet {
    inner: typeineq::Alphabet,
}

#[pymethods]
impl Alphabet {
    #[new]
    #[pyo3(signature = (constructors, order = Vec::new()))]
    fn new(constructors: Vec<(String, usize)>, order: Vec<(String, String)>) -> PyResult<Self> {
        let ctors = constructors
            .into_iter()
            .map(|(n, a)| Constructor::new(n, a));
        typeineq::Alphabet::new(ctors, order)
            .map(|inner| Alphabet { inner })
            .map_err(to_py)
    }

    fn constructors(&self) -> Vec<(String, usize)> {
        self.inner
            .constructors()
            .iter()
            .map(|c| (c.name.clone(), c.arity))
            .collect()
    }

    /// Reflexive-transitive closure of the order as (lower, upper) pairs.
    fn closure(&self) -> Vec<(String, String)> {
        self.inner
            .closure()
            .into_iter()
            .map(|(l, h)| (l.to_string(), h.to_string()))
            .collect()
    }

    fn leq(&self, lower: &str, upper: &str) -> PyResult<bool> {
        self.inner.constructor_leq(lower, upper).map_err(to_py)
    }

    /// Subtype test on types in surface syntax, e.g. `list('a)`.
    fn subtype(&self, lower: &str, upper: &str) -> PyResult<bool> {
        let l = parse_type(lower, &self.inner).map_err(to_py)?;
        let u = parse_type(upper, &self.inner).map_err(to_py)?;
        self.inner.subtype(&l, &u).map_err(to_py)
    }

    /// Decide an inequation system such as `'a <= nat  int <= 'a`.
    fn solve<'py>(&self, py: Python<'py>, system: &str) -> PyResult<Bound<'py, PyDict>> {
        let system = parse_system(system, &self.inner).map_err(to_py)?;
        let result = solve(&system, &self.inner).map_err(to_py)?;
        result_dict(py, &result, "solvable", "unsolvable")
    }

    fn __repr__(&self) -> String {
        let ctors: Vec<String> = self
            .inner
            .constructors()
            .iter()
            .map(|c| format!("{}/{}", c.name, c.arity))
            .collect();
        format!("Alphabet({})", ctors.join(", "))
    }
}

/// A parsed problem file.
#[pyclass(module = "typeineq", frozen)]
struct Problem {
    inner: typeineq::problem::Problem,
}

impl Problem {
    fn missing(&self, section: &str) -> PyErr {
        TypeIneqError::new_err((
            "PAYLOAD_MISMATCH",
            format!("problem has no `{section}:` section"),
        ))
    }
}

#[pymethods]
impl Problem {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_problem(text)
            .map(|inner| Problem { inner })
            .map_err(to_py)
    }

    #[getter]
    fn alphabet(&self) -> Alphabet {
        Alphabet {
            inner: self.inner.alphabet.clone(),
        }
    }

    /// `"term"`, `"solve"`, `"subtype"` or `None`.
    #[getter]
    fn kind(&self) -> Option<&'static str> {
        self.inner.payload.as_ref().map(|p| match p {
            Payload::Term(_) => "term",
            Payload::System(_) => "solve",
            Payload::Subtype(..) => "subtype",
        })
    }

    /// Inequations generated for the term: (context, type, inequations).
    fn gen(&self) -> PyResult<(BTreeMap<String, String>, String, Vec<String>)> {
        let Some(Payload::Term(term)) = &self.inner.payload else {
            return Err(self.missing("term"));
        };
        let (gamma, tau, system) = constraints_for(term, &self.inner.signatures).map_err(to_py)?;
        Ok((
            gamma
                .iter()
                .map(|(x, t)| (x.to_string(), t.to_string()))
                .collect(),
            tau.to_string(),
            system.iter().map(|i| i.to_string()).collect(),
        ))
    }

    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let Some(Payload::Term(term)) = &self.inner.payload else {
            return Err(self.missing("term"));
        };
        let typing =
            check_term(term, &self.inner.signatures, &self.inner.alphabet).map_err(to_py)?;
        let d = result_dict(py, &typing.solution, "typable", "untypable")?;
        if let (Some(ty), Some(gamma)) = (typing.inferred_type(), typing.inferred_assignment()) {
            d.set_item("type", ty.to_string())?;
            let gamma: BTreeMap<String, String> = gamma
                .iter()
                .map(|(x, t)| (x.to_string(), t.to_string()))
                .collect();
            d.set_item("assignment", gamma)?;
        }
        Ok(d)
    }

    fn solve<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let Some(Payload::System(system)) = &self.inner.payload else {
            return Err(self.missing("solve"));
        };
        let result = solve(system, &self.inner.alphabet).map_err(to_py)?;
        result_dict(py, &result, "solvable", "unsolvable")
    }

    fn subtype(&self) -> PyResult<bool> {
        let Some(Payload::Subtype(l, u)) = &self.inner.payload else {
            return Err(self.missing("subtype"));
        };
        self.inner.alphabet.subtype(l, u).map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pymodule]
#[pyo3(name = "typeineq")]
fn typeineq_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Alphabet>()?;
    m.add_class::<Problem>()?;
    m.add("TypeIneqError", m.py().get_type::<TypeIneqError>())?;
    Ok(())
}
