use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ore::{OrePolynomial, OreRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    Alice,
    Bob,
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Party::Alice => "alice",
            Party::Bob => "bob",
        })
    }
}

impl FromStr for Party {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alice" => Ok(Party::Alice),
            "bob" => Ok(Party::Bob),
            _ => Err(Error::Parse(format!("unknown party `{s}`"))),
        }
    }
}

/// What an eavesdropper sees: the public messages of one protocol run, in
/// order. Entries can only be appended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    protocol: String,
    entries: Vec<(Party, String, OrePolynomial)>,
}

impl Transcript {
    pub fn new(protocol: &str) -> Self {
        Self {
            protocol: protocol.to_owned(),
            entries: Vec::new(),
        }
    }

    pub fn protocol(&self) -> &str {
        &self.protocol
    }

    /// Records a public message under a short label such as `A_part`.
    pub fn push(&mut self, sender: Party, label: &str, message: OrePolynomial) {
        self.entries.push((sender, label.to_owned(), message));
    }

    pub fn entries(&self) -> &[(Party, String, OrePolynomial)] {
        &self.entries
    }

    pub fn message(&self, label: &str) -> Option<&OrePolynomial> {
        self.entries
            .iter()
            .find(|(_, l, _)| l == label)
            .map(|(_, _, m)| m)
    }

    /// Reads the line format written by `Display` (`protocol <tag>`, then one
    /// `<sender> <label>: <polynomial>` line per message).
    pub fn parse(ring: &Arc<OreRing>, text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let protocol = lines
            .next()
            .and_then(|l| l.strip_prefix("protocol "))
            .ok_or_else(|| Error::Parse("transcript must start with `protocol <tag>`".into()))?;
        let mut out = Self::new(protocol.trim());
        for line in lines {
            let (head, poly) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("malformed transcript line `{line}`")))?;
            let (sender, label) = head
                .trim()
                .split_once(' ')
                .ok_or_else(|| Error::Parse(format!("missing label in `{line}`")))?;
            out.push(sender.parse()?, label.trim(), OrePolynomial::parse(ring, poly)?);
        }
        Ok(out)
    }
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "protocol {}", self.protocol)?;
        for (sender, label, message) in &self.entries {
            writeln!(f, "{sender} {label}: {message}")?;
        }
        Ok(())
    }
}
