//! Named quandles available to tests and the command line.
//!
//! Lookups ignore case and whitespace, so `alex(z5, 2)` finds `Alex(Z5,2)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::infinite::{FreeQuandle, IntQuandle};
use crate::quandle::{are_isomorphic, FiniteGroup, FiniteQuandle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogObject {
    Finite(Arc<FiniteQuandle>),
    Integer(IntQuandle),
    Free(FreeQuandle),
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    build: fn() -> CatalogObject,
}

impl CatalogEntry {
    pub fn build(&self) -> CatalogObject {
        (self.build)()
    }

    /// Element count, `None` for infinite quandles.
    pub fn order(&self) -> Option<usize> {
        match self.build() {
            CatalogObject::Finite(q) => Some(q.order()),
            _ => None,
        }
    }
}

fn finite(q: Result<FiniteQuandle>) -> CatalogObject {
    CatalogObject::Finite(Arc::new(q.expect("catalog tables are valid")))
}

macro_rules! trivial {
    ($n:expr) => {
        || finite(FiniteQuandle::trivial($n))
    };
}

macro_rules! dihedral {
    ($n:expr) => {
        || finite(FiniteQuandle::dihedral($n))
    };
}

macro_rules! free {
    ($n:expr) => {
        || CatalogObject::Free(FreeQuandle { rank: $n })
    };
}

static ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "T1",
        description: "trivial quandle with one element",
        build: trivial!(1),
    },
    CatalogEntry {
        name: "T2",
        description: "trivial quandle with two elements",
        build: trivial!(2),
    },
    CatalogEntry {
        name: "T3",
        description: "trivial quandle with three elements",
        build: trivial!(3),
    },
    CatalogEntry {
        name: "T4",
        description: "trivial quandle with four elements",
        build: trivial!(4),
    },
    CatalogEntry {
        name: "T5",
        description: "trivial quandle with five elements",
        build: trivial!(5),
    },
    CatalogEntry {
        name: "T6",
        description: "trivial quandle with six elements",
        build: trivial!(6),
    },
    CatalogEntry {
        name: "R3",
        description: "dihedral quandle of order 3",
        build: dihedral!(3),
    },
    CatalogEntry {
        name: "R4",
        description: "dihedral quandle of order 4",
        build: dihedral!(4),
    },
    CatalogEntry {
        name: "R5",
        description: "dihedral quandle of order 5",
        build: dihedral!(5),
    },
    CatalogEntry {
        name: "R6",
        description: "dihedral quandle of order 6",
        build: dihedral!(6),
    },
    CatalogEntry {
        name: "Cs4",
        description: "three-element singular cyclic quandle, xz = y, yz = x",
        build: || CatalogObject::Finite(Arc::new(FiniteQuandle::cs4())),
    },
    CatalogEntry {
        name: "Conj(S3)",
        description: "conjugation quandle of the symmetric group on three points",
        build: || finite(FiniteGroup::symmetric(3).and_then(|g| FiniteQuandle::conj(&g))),
    },
    CatalogEntry {
        name: "Core(Z5)",
        description: "core quandle of the cyclic group of order 5",
        build: || finite(FiniteGroup::cyclic(5).and_then(|g| FiniteQuandle::core(&g))),
    },
    CatalogEntry {
        name: "Alex(Z5,2)",
        description: "Alexander quandle of Z5 with multiplication by 2",
        build: || {
            finite(FiniteGroup::cyclic(5).and_then(|g| FiniteQuandle::alex(&g, &FiniteGroup::cyclic_scaling(5, 2)?)))
        },
    },
    CatalogEntry {
        name: "CoreZ",
        description: "core quandle of the integers, a*b = 2b - a",
        build: || CatalogObject::Integer(IntQuandle::CoreZ),
    },
    CatalogEntry {
        name: "AlexZ(-1)",
        description: "Alexander quandle of the integers with negation",
        build: || CatalogObject::Integer(IntQuandle::AlexZ(-1)),
    },
    CatalogEntry {
        name: "FQ1",
        description: "free quandle of rank 1",
        build: free!(1),
    },
    CatalogEntry {
        name: "FQ2",
        description: "free quandle of rank 2",
        build: free!(2),
    },
    CatalogEntry {
        name: "FQ3",
        description: "free quandle of rank 3",
        build: free!(3),
    },
];

fn normalize(name: &str) -> String {
    name.chars()
        .filter(|c| !c.is_whitespace())
        .flat_map(char::to_lowercase)
        .collect()
}

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    let key = normalize(name);
    ENTRIES
        .iter()
        .find(|e| normalize(e.name) == key)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn get(name: &str) -> Result<CatalogObject> {
    entry(name).map(CatalogEntry::build)
}

/// Largest order accepted for `T<n>` and `R<n>` outside the registry.
pub const MAX_GENERATED_ORDER: usize = 64;

/// A registry entry, or `T<n>` / `R<n>` for orders the registry lacks.
pub fn resolve(name: &str) -> Result<CatalogObject> {
    if let Ok(obj) = get(name) {
        return Ok(obj);
    }
    let key = normalize(name);
    let unknown = || Error::UnknownName(name.to_string());
    let (build, digits): (fn(usize) -> Result<FiniteQuandle>, &str) = match key.split_at_checked(1) {
        Some(("t", d)) => (FiniteQuandle::trivial, d),
        Some(("r", d)) => (FiniteQuandle::dihedral, d),
        _ => return Err(unknown()),
    };
    let n: usize = digits.parse().map_err(|_| unknown())?;
    crate::error::check_bound("generated quandle order", n as u128, MAX_GENERATED_ORDER as u128)?;
    Ok(CatalogObject::Finite(Arc::new(build(n)?)))
}

/// The registered spelling of `name`, or `T<n>` / `R<n>` upper-cased.
pub fn canonical_name(name: &str) -> String {
    match entry(name) {
        Ok(e) => e.name.to_string(),
        Err(_) => {
            let mut c = name.trim().chars();
            c.next()
                .map_or(String::new(), |f| f.to_ascii_uppercase().to_string() + c.as_str())
        }
    }
}

pub fn get_finite(name: &str) -> Result<Arc<FiniteQuandle>> {
    match resolve(name)? {
        CatalogObject::Finite(q) => Ok(q),
        _ => Err(Error::Unsupported(format!("`{name}` is not a finite quandle"))),
    }
}

/// The finite entries, in registry order.
pub fn finite_entries() -> Vec<(&'static str, Arc<FiniteQuandle>)> {
    ENTRIES
        .iter()
        .filter_map(|e| match e.build() {
            CatalogObject::Finite(q) => Some((e.name, q)),
            _ => None,
        })
        .collect()
}

/// The first finite entry isomorphic to `q`.
pub fn identify(q: &FiniteQuandle) -> Option<&'static str> {
    finite_entries()
        .into_iter()
        .find(|(_, c)| c.order() == q.order() && are_isomorphic(c, q))
        .map(|(name, _)| name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::verify_quandle;

    #[test]
    fn lookups() {
        assert_eq!(*get_finite("R3").unwrap(), FiniteQuandle::dihedral(3).unwrap());
        assert_eq!(*get_finite("cs4").unwrap(), FiniteQuandle::cs4());
        assert_eq!(get_finite("T1").unwrap().order(), 1);
        assert_eq!(get_finite("alex(z5, 2)").unwrap().mul(1, 2), 0);
        assert_eq!(get("coreZ").unwrap(), CatalogObject::Integer(IntQuandle::CoreZ));
        assert_eq!(get("FQ2").unwrap(), CatalogObject::Free(FreeQuandle { rank: 2 }));
        assert_eq!(get("R7"), Err(Error::UnknownName("R7".into())));
        assert!(get_finite("CoreZ").is_err());
    }

    #[test]
    fn names_are_unique_and_tables_valid() {
        let mut names: Vec<String> = entries().iter().map(|e| normalize(e.name)).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), entries().len());
        for (_, q) in finite_entries() {
            assert!(verify_quandle(&q.table()).is_ok());
        }
    }

    #[test]
    fn order_three_classes_are_distinct() {
        let small: Vec<_> = finite_entries().into_iter().filter(|(_, q)| q.order() == 3).collect();
        let names: Vec<&str> = small.iter().map(|(n, _)| *n).collect();
        assert_eq!(names, ["T3", "R3", "Cs4"]);
        for (i, (_, a)) in small.iter().enumerate() {
            for (_, b) in &small[i + 1..] {
                assert!(!are_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn identification() {
        let q = FiniteGroup::cyclic(3).and_then(|g| FiniteQuandle::core(&g)).unwrap();
        assert_eq!(identify(&q), Some("R3"));
        assert_eq!(identify(&FiniteQuandle::dihedral(7).unwrap()), None);
    }
}
