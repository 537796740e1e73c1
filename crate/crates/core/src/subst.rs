use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::types::{Depth, Type};

/// A finite map from parameter names to types, applied homomorphically.
///
/// Identity bindings are never stored, so the key set is exactly the domain.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Substitution {
    bindings: BTreeMap<String, Type>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn singleton(param: impl Into<String>, ty: Type) -> Self {
        let mut s = Substitution::new();
        s.insert(param, ty);
        s
    }

    /// Binds `param` to `ty`, replacing any earlier binding. Binding a
    /// parameter to itself removes it from the domain.
    pub fn insert(&mut self, param: impl Into<String>, ty: Type) {
        let param = param.into();
        if matches!(&ty, Type::Param(p) if *p == param) {
            self.bindings.remove(&param);
        } else {
            self.bindings.insert(param, ty);
        }
    }

    pub fn get(&self, param: &str) -> Option<&Type> {
        self.bindings.get(param)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Type)> {
        self.bindings.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn domain(&self) -> BTreeSet<String> {
        self.bindings.keys().cloned().collect()
    }

    /// `Par(Θ)`: parameters occurring in the images.
    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for ty in self.bindings.values() {
            ty.collect_params(&mut out);
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.bindings.values().all(Type::is_monotype)
    }

    pub fn apply(&self, ty: &Type) -> Type {
        if self.bindings.is_empty() {
            return ty.clone();
        }
        match ty {
            Type::Param(p) => self.bindings.get(p).cloned().unwrap_or_else(|| ty.clone()),
            Type::App(name, args) => {
                Type::App(name.clone(), args.iter().map(|a| self.apply(a)).collect())
            }
        }
    }

    /// `self ∘ then`: first apply `self`, then `then`.
    pub fn compose(&self, then: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (p, ty) in &self.bindings {
            out.insert(p.clone(), then.apply(ty));
        }
        for (p, ty) in &then.bindings {
            if !self.bindings.contains_key(p) {
                out.insert(p.clone(), ty.clone());
            }
        }
        out
    }

    /// Keeps only the bindings for parameters in `params`.
    pub fn restrict(&self, params: &BTreeSet<String>) -> Substitution {
        Substitution {
            bindings: self
                .bindings
                .iter()
                .filter(|(p, _)| params.contains(*p))
                .map(|(p, t)| (p.clone(), t.clone()))
                .collect(),
        }
    }
}

impl Depth for Substitution {
    fn depth(&self) -> usize {
        self.bindings.values().map(Depth::depth).max().unwrap_or(0)
    }
}

impl FromIterator<(String, Type)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Type)>>(iter: I) -> Self {
        let mut s = Substitution::new();
        for (p, t) in iter {
            s.insert(p, t);
        }
        s
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (p, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "'{p} := {t}")?;
        }
        f.write_str("]")
    }
}
