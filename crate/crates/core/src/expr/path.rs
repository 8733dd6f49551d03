use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// Address of a node: the child indices taken from the root. Rendered as
/// `/0/1/0`; the root is `/`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Path(Vec<u8>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn from_steps(steps: Vec<u8>) -> Path {
        Path(steps)
    }

    pub fn steps(&self) -> &[u8] {
        &self.0
    }

    pub fn child(&self, i: u8) -> Path {
        let mut v = self.0.clone();
        v.push(i);
        Path(v)
    }

    pub fn parent(&self) -> Option<Path> {
        let (_, init) = self.0.split_last()?;
        Some(Path(init.to_vec()))
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// True when `self` lies strictly below `other`.
    pub fn is_strict_descendant_of(&self, other: &Path) -> bool {
        self.0.len() > other.0.len() && self.0.starts_with(&other.0)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("/");
        }
        for i in &self.0 {
            write!(f, "/{i}")?;
        }
        Ok(())
    }
}

impl FromStr for Path {
    type Err = String;

    fn from_str(s: &str) -> Result<Path, String> {
        let rest = s.strip_prefix('/').ok_or_else(|| format!("path must start with '/': {s}"))?;
        if rest.is_empty() {
            return Ok(Path::root());
        }
        rest.split('/')
            .map(|p| p.parse::<u8>().map_err(|_| format!("bad path step {p:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Path)
    }
}

impl Serialize for Path {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        s.serialize_str(&self.to_string())
    }
}
