use std::collections::HashSet;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// A named indeterminate.
///
/// Variables compare by name, so the monomial order (and therefore every
/// canonical form) is independent of the order in which names were first seen.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(&'static str);

fn registry() -> &'static Mutex<HashSet<&'static str>> {
    static NAMES: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    NAMES.get_or_init(|| Mutex::new(HashSet::new()))
}

impl Var {
    pub const Q: Var = Var("q");
    pub const OMEGA: Var = Var("omega");
    pub const U: Var = Var("u");

    /// Interns `name`. Panics on names that are not identifiers.
    pub fn new(name: &str) -> Var {
        assert!(Self::is_valid_name(name), "invalid indeterminate name {name:?}");
        let mut names = registry().lock().expect("variable registry poisoned");
        if let Some(existing) = names.get(name) {
            return Var(existing);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        names.insert(leaked);
        Var(leaked)
    }

    pub fn is_valid_name(name: &str) -> bool {
        let mut chars = name.chars();
        matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    pub fn name(&self) -> &'static str {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_by_name() {
        let a = Var::new("a");
        let b = Var::new(&String::from("a"));
        assert_eq!(a, b);
        assert!(Var::new("a") < Var::new("b"));
        assert_eq!(Var::new("q"), Var::Q);
    }

    #[test]
    #[should_panic]
    fn rejects_non_identifier() {
        Var::new("1x");
    }
}
