//! Process-wide registry of symbolic variables.
//!
//! Ids are handed out in registration order and never reused. `p`, `t`
//! and `Y` are always present with ids 0, 1 and 2, which fixes the
//! monomial order used for canonical forms: `p` before `t` before
//! everything else.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

struct Registry {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

fn registry() -> &'static RwLock<Registry> {
    static REGISTRY: OnceLock<RwLock<Registry>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let names: Vec<String> = ["p", "t", "Y"].iter().map(|s| s.to_string()).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u32))
            .collect();
        RwLock::new(Registry { names, index })
    })
}

impl Var {
    pub const P: Var = Var(0);
    pub const T: Var = Var(1);
    pub const Y: Var = Var(2);

    /// Returns the variable called `name`, registering it if needed.
    pub fn named(name: &str) -> Var {
        if let Some(v) = Var::lookup(name) {
            return v;
        }
        let mut reg = registry().write().expect("variable registry poisoned");
        if let Some(&id) = reg.index.get(name) {
            return Var(id);
        }
        let id = reg.names.len() as u32;
        reg.names.push(name.to_string());
        reg.index.insert(name.to_string(), id);
        Var(id)
    }

    pub fn lookup(name: &str) -> Option<Var> {
        let reg = registry().read().expect("variable registry poisoned");
        reg.index.get(name).map(|&id| Var(id))
    }

    /// `X_i` style variable, e.g. `Var::indexed("X", 3)` is `X_3`.
    pub fn indexed(family: &str, i: usize) -> Var {
        Var::named(&format!("{family}_{i}"))
    }

    /// Variable indexed by a subset of `[h]`, written with its elements
    /// run together: `{1,3}` becomes `X_{13}`. Elements are 1-based.
    pub fn subset(family: &str, elements: &[usize]) -> Var {
        let label: String = elements.iter().map(|e| e.to_string()).collect();
        Var::named(&format!("{family}_{{{label}}}"))
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn name(self) -> String {
        let reg = registry().read().expect("variable registry poisoned");
        reg.names[self.0 as usize].clone()
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
