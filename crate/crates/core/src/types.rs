//! Types over an ordered alphabet: parameters and constructor applications.

use std::collections::BTreeSet;
use std::fmt;

/// Anything with a depth: types, substitutions, inequations and systems.
pub trait Depth {
    fn depth(&self) -> usize;
}

/// A type is either a parameter or a constructor applied to arguments.
///
/// Constructor names are resolved against an [`Alphabet`](crate::Alphabet)
/// only when a type is checked or compared; the value itself is plain data.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Type {
    Param(String),
    App(String, Vec<Type>),
}

impl Type {
    pub fn param(name: impl Into<String>) -> Type {
        Type::Param(name.into())
    }

    /// A nullary constructor.
    pub fn con(name: impl Into<String>) -> Type {
        Type::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Type>) -> Type {
        Type::App(name.into(), args)
    }

    /// Unary application, the common case for the solver.
    pub fn unary(name: impl Into<String>, arg: Type) -> Type {
        Type::App(name.into(), vec![arg])
    }

    pub fn is_param(&self) -> bool {
        matches!(self, Type::Param(_))
    }

    /// `Par(τ)`.
    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_params(&mut out);
        out
    }

    pub(crate) fn collect_params(&self, out: &mut BTreeSet<String>) {
        match self {
            Type::Param(p) => {
                if !out.contains(p) {
                    out.insert(p.clone());
                }
            }
            Type::App(_, args) => args.iter().for_each(|a| a.collect_params(out)),
        }
    }

    pub fn mentions(&self, param: &str) -> bool {
        match self {
            Type::Param(p) => p == param,
            Type::App(_, args) => args.iter().any(|a| a.mentions(param)),
        }
    }

    pub fn is_monotype(&self) -> bool {
        match self {
            Type::Param(_) => false,
            Type::App(_, args) => args.iter().all(Type::is_monotype),
        }
    }
}

impl Depth for Type {
    fn depth(&self) -> usize {
        match self {
            Type::Param(_) => 0,
            Type::App(_, args) => 1 + args.iter().map(Depth::depth).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Param(p) => write!(f, "'{p}"),
            Type::App(name, args) if args.is_empty() => f.write_str(name),
            Type::App(name, args) => {
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
