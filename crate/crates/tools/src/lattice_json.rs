//! JSON exchange format for finite ortholattices.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use ol_core::{builtin, validate_ortholattice, FiniteOrtholattice, LatticeCandidate, LatticeError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub hasse: Vec<[String; 2]>,
    pub comp: BTreeMap<String, String>,
    pub zero: String,
    pub one: String,
}

impl From<LatticeFile> for LatticeCandidate {
    fn from(f: LatticeFile) -> Self {
        LatticeCandidate {
            elements: f.elements,
            hasse: f.hasse.into_iter().map(|[a, b]| (a, b)).collect(),
            comp: f.comp,
            zero: f.zero,
            one: f.one,
        }
    }
}

impl From<&FiniteOrtholattice> for LatticeFile {
    fn from(l: &FiniteOrtholattice) -> Self {
        let c = l.to_candidate();
        LatticeFile {
            elements: c.elements,
            hasse: c.hasse.into_iter().map(|(a, b)| [a, b]).collect(),
            comp: c.comp,
            zero: c.zero,
            one: c.one,
        }
    }
}

#[derive(Debug)]
pub enum LoadError {
    Io(std::io::Error),
    Json(serde_json::Error),
    Lattice(LatticeError),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(e) => write!(f, "cannot read lattice file: {}", e),
            LoadError::Json(e) => write!(f, "malformed lattice file: {}", e),
            LoadError::Lattice(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for LoadError {}

pub fn from_str(text: &str) -> Result<FiniteOrtholattice, LoadError> {
    let file: LatticeFile = serde_json::from_str(text).map_err(LoadError::Json)?;
    validate_ortholattice(&file.into()).map_err(LoadError::Lattice)
}

pub fn to_string(l: &FiniteOrtholattice) -> String {
    serde_json::to_string_pretty(&LatticeFile::from(l)).expect("lattice files always serialize")
}

/// A built-in lattice name, or else the path of a lattice file.
pub fn load(name_or_path: &str) -> Result<FiniteOrtholattice, LoadError> {
    match builtin(name_or_path) {
        Ok(l) => Ok(l),
        Err(unknown) => {
            let path = Path::new(name_or_path);
            if !path.exists() {
                return Err(LoadError::Lattice(unknown));
            }
            let text = std::fs::read_to_string(path).map_err(LoadError::Io)?;
            from_str(&text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_round_trip() {
        for name in ["b2", "m2", "m4", "mo3"] {
            let l = builtin(name).unwrap();
            let back = from_str(&to_string(&l)).unwrap();
            assert_eq!(back.len(), l.len());
            for a in l.elements() {
                for b in l.elements() {
                    let (x, y) = (back.element(l.name(a)).unwrap(), back.element(l.name(b)).unwrap());
                    assert_eq!(l.name(l.meet(a, b)), back.name(back.meet(x, y)));
                }
            }
        }
    }

    #[test]
    fn chain_of_three_is_not_ortho() {
        let text = r#"{"elements":["0","m","1"],"hasse":[["0","m"],["m","1"]],
            "comp":{"0":"1","1":"0","m":"m"},"zero":"0","one":"1"}"#;
        assert!(matches!(from_str(text), Err(LoadError::Lattice(LatticeError::Violation(_)))));
    }

    #[test]
    fn unknown_name_is_reported() {
        assert!(matches!(load("no-such-lattice"), Err(LoadError::Lattice(LatticeError::UnknownBuiltin(_)))));
    }
}
