use std::fmt;

use serde::{Deserialize, Serialize};

/// Which free monoid words live in.
///
/// Commutative words are multisets (symmetric operads, non-planar trees);
/// planar words are sequences (planar operads, planar trees).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavour {
    Commutative,
    Planar,
}

impl fmt::Display for Flavour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavour::Commutative => f.write_str("commutative"),
            Flavour::Planar => f.write_str("planar"),
        }
    }
}

impl std::str::FromStr for Flavour {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "commutative" => Ok(Flavour::Commutative),
            "planar" => Ok(Flavour::Planar),
            other => Err(format!("unknown flavour `{other}`")),
        }
    }
}

/// Sorts index words in the commutative flavour. Carriers are sorted by name,
/// so index order and name order agree.
pub(crate) fn normalize(flavour: Flavour, word: &mut [usize]) {
    if flavour == Flavour::Commutative {
        word.sort_unstable();
    }
}

/// A word over element names; the empty word is ε.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BroadWord {
    letters: Vec<String>,
}

impl BroadWord {
    pub fn new<I>(flavour: Flavour, letters: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<String>,
    {
        let mut letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if flavour == Flavour::Commutative {
            letters.sort();
        }
        BroadWord { letters }
    }

    pub fn empty() -> Self {
        BroadWord::default()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.letters.iter().any(|l| l == name)
    }
}

impl fmt::Display for BroadWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.letters.join("·"))
        }
    }
}
