//! Ordered type alphabets and the subtype relation they induce on types.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::types::Type;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Constructor {
    pub name: String,
    pub arity: usize,
}

impl Constructor {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Constructor {
            name: name.into(),
            arity,
        }
    }
}

/// A finite set of type constructors with arities and a partial order.
///
/// The order is stored as the reflexive-transitive closure of the declared
/// pairs. Construction through [`Alphabet::new`] guarantees antisymmetry,
/// arity/order compatibility, and at least one nullary constructor.
#[derive(Clone, Debug)]
pub struct Alphabet {
    constructors: Vec<Constructor>,
    index: HashMap<String, usize>,
    declared: Vec<(String, String)>,
    // leq[i][j] <=> constructors[i] <= constructors[j]
    leq: Vec<Vec<bool>>,
}

impl Alphabet {
    /// Validate constructors and generating pairs `(lower, upper)`.
    pub fn new<I, P, S>(constructors: I, pairs: P) -> Result<Alphabet>
    where
        I: IntoIterator<Item = Constructor>,
        P: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let constructors: Vec<Constructor> = constructors.into_iter().collect();
        let mut index = HashMap::with_capacity(constructors.len());
        for (i, c) in constructors.iter().enumerate() {
            if index.insert(c.name.clone(), i).is_some() {
                return Err(Error::DuplicateConstructor(c.name.clone()));
            }
        }

        let n = constructors.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        let mut declared = Vec::new();
        for (lo, hi) in pairs {
            let (lo, hi) = (lo.into(), hi.into());
            let i = *index
                .get(&lo)
                .ok_or_else(|| Error::UnknownConstructor(lo.clone()))?;
            let j = *index
                .get(&hi)
                .ok_or_else(|| Error::UnknownConstructor(hi.clone()))?;
            leq[i][j] = true;
            declared.push((lo, hi));
        }

        // Floyd-Warshall closure.
        for k in 0..n {
            let via = leq[k].clone();
            for row in leq.iter_mut().filter(|row| row[k]) {
                for (cell, &step) in row.iter_mut().zip(&via) {
                    *cell |= step;
                }
            }
        }

        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::OrderCycle(
                        constructors[i].name.clone(),
                        constructors[j].name.clone(),
                    ));
                }
            }
        }

        let alphabet = Alphabet {
            constructors,
            index,
            declared,
            leq,
        };
        if let Some((k, l, m)) = alphabet.incompatible_triple() {
            return Err(Error::Incompatible {
                lower: k.to_string(),
                middle: l.to_string(),
                upper: m.to_string(),
            });
        }
        if !alphabet.constructors.iter().any(|c| c.arity == 0) {
            return Err(Error::NoNullary);
        }
        Ok(alphabet)
    }

    /// First chain `K <= L <= M` (in declaration order) with
    /// `min(#K, #M) > #L`.
    fn incompatible_triple(&self) -> Option<(&str, &str, &str)> {
        let n = self.constructors.len();
        for k in 0..n {
            for l in 0..n {
                if !self.leq[k][l] {
                    continue;
                }
                for m in 0..n {
                    if !self.leq[l][m] {
                        continue;
                    }
                    let c = &self.constructors;
                    if c[k].arity.min(c[m].arity) > c[l].arity {
                        return Some((&c[k].name, &c[l].name, &c[m].name));
                    }
                }
            }
        }
        None
    }

    pub fn constructors(&self) -> &[Constructor] {
        &self.constructors
    }

    pub fn constructor(&self, name: &str) -> Option<&Constructor> {
        self.index.get(name).map(|&i| &self.constructors[i])
    }

    pub fn arity(&self, name: &str) -> Result<usize> {
        self.constructor(name)
            .map(|c| c.arity)
            .ok_or_else(|| Error::UnknownConstructor(name.to_string()))
    }

    /// Generating pairs as declared.
    pub fn declared_pairs(&self) -> &[(String, String)] {
        &self.declared
    }

    /// All pairs of the closure, in declaration order of the lower element.
    pub fn closure(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        for (i, lo) in self.constructors.iter().enumerate() {
            for (j, hi) in self.constructors.iter().enumerate() {
                if self.leq[i][j] {
                    out.push((lo.name.as_str(), hi.name.as_str()));
                }
            }
        }
        out
    }

    pub fn max_arity(&self) -> usize {
        self.constructors.iter().map(|c| c.arity).max().unwrap_or(0)
    }

    /// Fails with `UNSUPPORTED_ARITY` naming the first constructor of arity > 1.
    pub fn require_unary(&self) -> Result<()> {
        match self.constructors.iter().find(|c| c.arity > 1) {
            Some(c) => Err(Error::UnsupportedArity {
                name: c.name.clone(),
                arity: c.arity,
            }),
            None => Ok(()),
        }
    }

    pub fn nullary(&self) -> impl Iterator<Item = &Constructor> {
        self.constructors.iter().filter(|c| c.arity == 0)
    }

    pub fn unary(&self) -> impl Iterator<Item = &Constructor> {
        self.constructors.iter().filter(|c| c.arity == 1)
    }

    fn position(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownConstructor(name.to_string()))
    }

    /// `K <= L` on constructors.
    pub fn constructor_leq(&self, lower: &str, upper: &str) -> Result<bool> {
        let i = self.position(lower)?;
        let j = self.position(upper)?;
        Ok(self.leq[i][j])
    }

    /// The subtype relation extended to types: a parameter sits only below
    /// itself, and `K(s..) <= L(t..)` iff `K <= L` and the common prefix of
    /// arguments is pointwise related.
    pub fn subtype(&self, lower: &Type, upper: &Type) -> Result<bool> {
        match (lower, upper) {
            (Type::Param(a), Type::Param(b)) => Ok(a == b),
            (Type::Param(_), Type::App(name, _)) | (Type::App(name, _), Type::Param(_)) => {
                // still report unknown constructors
                self.position(name)?;
                Ok(false)
            }
            (Type::App(k, ks), Type::App(l, ls)) => {
                if !self.constructor_leq(k, l)? {
                    return Ok(false);
                }
                for (s, t) in ks.iter().zip(ls) {
                    if !self.subtype(s, t)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Checks that every constructor is declared and applied to the right
    /// number of arguments.
    pub fn check_type(&self, ty: &Type) -> Result<()> {
        match ty {
            Type::Param(_) => Ok(()),
            Type::App(name, args) => {
                let expected = self.arity(name)?;
                if expected != args.len() {
                    return Err(Error::ConstructorArity {
                        name: name.clone(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check_type(a))
            }
        }
    }
}
