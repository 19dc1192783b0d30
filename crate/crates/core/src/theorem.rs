use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Identifies one checkable statement: a bound, a union formula or a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremTag {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Th1,
    Th2,
    Th3,
    Th4,
    Th5,
    Th6,
    Th118,
    Th7,
    Th8,
    Th9,
    Th10,
    Th11,
    Th12,
    Th116,
    Th13,
    Prop1,
    Prop2,
    Prop3,
    Prop4,
}

/// Whether a statement is about vertex or edge deletion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Vertex,
    Edge,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertex" => Ok(Side::Vertex),
            "edge" => Ok(Side::Edge),
            _ => Err(Error::Unknown { what: "side", name: s.to_string() }),
        }
    }
}

impl TheoremTag {
    pub const ALL: [TheoremTag; 23] = [
        TheoremTag::Lemma1,
        TheoremTag::Lemma2,
        TheoremTag::Lemma3,
        TheoremTag::Th1,
        TheoremTag::Th2,
        TheoremTag::Th3,
        TheoremTag::Th4,
        TheoremTag::Th5,
        TheoremTag::Th6,
        TheoremTag::Th118,
        TheoremTag::Th7,
        TheoremTag::Th8,
        TheoremTag::Th9,
        TheoremTag::Th10,
        TheoremTag::Th11,
        TheoremTag::Th12,
        TheoremTag::Th116,
        TheoremTag::Th13,
        TheoremTag::Lemma4,
        TheoremTag::Prop1,
        TheoremTag::Prop2,
        TheoremTag::Prop3,
        TheoremTag::Prop4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremTag::Lemma1 => "lemma1",
            TheoremTag::Lemma2 => "lemma2",
            TheoremTag::Lemma3 => "lemma3",
            TheoremTag::Lemma4 => "lemma4",
            TheoremTag::Th1 => "th1",
            TheoremTag::Th2 => "th2",
            TheoremTag::Th3 => "th3",
            TheoremTag::Th4 => "th4",
            TheoremTag::Th5 => "th5",
            TheoremTag::Th6 => "th6",
            TheoremTag::Th118 => "th118",
            TheoremTag::Th7 => "th7",
            TheoremTag::Th8 => "th8",
            TheoremTag::Th9 => "th9",
            TheoremTag::Th10 => "th10",
            TheoremTag::Th11 => "th11",
            TheoremTag::Th12 => "th12",
            TheoremTag::Th116 => "th116",
            TheoremTag::Th13 => "th13",
            TheoremTag::Prop1 => "prop1",
            TheoremTag::Prop2 => "prop2",
            TheoremTag::Prop3 => "prop3",
            TheoremTag::Prop4 => "prop4",
        }
    }

    /// Which stability number the statement constrains.
    pub fn side(self) -> Side {
        use TheoremTag::*;
        match self {
            Lemma1 | Th1 | Th2 | Th3 | Th4 | Th5 | Th6 | Th118 | Prop1 | Prop2 | Prop3 | Prop4 => Side::Vertex,
            Lemma2 | Lemma3 | Lemma4 | Th7 | Th8 | Th9 | Th10 | Th11 | Th12 | Th116 | Th13 => Side::Edge,
        }
    }

    pub fn is_union_formula(self) -> bool {
        use TheoremTag::*;
        matches!(self, Th4 | Th5 | Th6 | Th118 | Th11 | Th12 | Th116)
    }

    /// Parses a comma-separated list; `all` expands to every tag.
    pub fn parse_list(s: &str) -> Result<Vec<TheoremTag>> {
        if s.trim() == "all" {
            return Ok(TheoremTag::ALL.to_vec());
        }
        s.split(',').map(|t| t.trim().parse()).collect()
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Unknown { what: "theorem", name: s.to_string() })
    }
}

impl Serialize for TheoremTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for t in TheoremTag::ALL {
            assert_eq!(t.as_str().parse::<TheoremTag>().unwrap(), t);
        }
        assert_eq!(TheoremTag::parse_list("th4, th11").unwrap(), vec![TheoremTag::Th4, TheoremTag::Th11]);
        assert_eq!(TheoremTag::parse_list("all").unwrap().len(), 23);
        assert!(TheoremTag::parse_list("th99").is_err());
    }
}
