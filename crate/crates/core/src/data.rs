//! Bundled polynomial tables.
//!
//! Tables are read from `$SOMOS_HOME/data/<name>.txt` when that file exists,
//! otherwise the copy compiled into the library is used.

use std::borrow::Cow;
use std::path::PathBuf;

use crate::error::InvariantError;

pub const HOME_VAR: &str = "SOMOS_HOME";

const BUNDLED: &[(&str, &str)] = &[
    ("phi4", include_str!("../data/phi4.txt")),
    ("phi5", include_str!("../data/phi5.txt")),
    ("phi6", include_str!("../data/phi6.txt")),
    ("psi6", include_str!("../data/psi6.txt")),
    ("phi7", include_str!("../data/phi7.txt")),
    ("psi7", include_str!("../data/psi7.txt")),
    ("o6_a2", include_str!("../data/o6_a2.txt")),
    ("o6_b2", include_str!("../data/o6_b2.txt")),
    ("o7_a1", include_str!("../data/o7_a1.txt")),
    ("o7_b1", include_str!("../data/o7_b1.txt")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

pub fn override_path(name: &str) -> Option<PathBuf> {
    let root = std::env::var_os(HOME_VAR)?;
    let p = PathBuf::from(root).join("data").join(format!("{name}.txt"));
    p.is_file().then_some(p)
}

pub fn table(name: &str) -> Result<Cow<'static, str>, InvariantError> {
    if let Some(p) = override_path(name) {
        return std::fs::read_to_string(&p)
            .map(Cow::Owned)
            .map_err(|e| InvariantError::Io { name: name.to_string(), msg: e.to_string() });
    }
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| Cow::Borrowed(*t))
        .ok_or_else(|| InvariantError::UnknownName(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_tables_resolve() {
        for n in names() {
            assert!(!table(n).unwrap().trim().is_empty(), "{n}");
        }
        assert!(matches!(table("nope"), Err(InvariantError::UnknownName(_))));
    }
}
