//! The line-oriented text files read and written by the tool.
//!
//! Every file starts with `# ore-kex v1` and a ring line, optionally followed
//! by a seed line. The body is a list of `name: value` lines; lines without a
//! colon are kept as bare entries with an empty value.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use ore_kex::challenge::{file_header, FORMAT_LINE, RNG_NAME};
use ore_kex::{ConstantPolynomial, OrePolynomial, OreRing};

use crate::CliError;

#[derive(Debug, Clone)]
pub struct Document {
    pub ring: Arc<OreRing>,
    pub seed: Option<u64>,
    entries: Vec<(String, String)>,
}

impl Document {
    pub fn new(ring: &Arc<OreRing>, seed: Option<u64>) -> Self {
        Self {
            ring: Arc::clone(ring),
            seed,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.entries.push((name.to_owned(), value.to_string()));
        self
    }

    pub fn push_line(&mut self, line: &str) -> &mut Self {
        match line.split_once(':') {
            Some((name, value)) => self.push(name.trim(), value.trim()),
            None => self.push(line.trim(), ""),
        }
    }

    pub fn get(&self, name: &str) -> Result<&str, CliError> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| CliError::Input(format!("missing `{name}` entry")))
    }

    pub fn poly(&self, name: &str) -> Result<OrePolynomial, CliError> {
        Ok(OrePolynomial::parse(&self.ring, self.get(name)?)?)
    }

    pub fn constant_poly(&self, name: &str) -> Result<ConstantPolynomial, CliError> {
        Ok(ConstantPolynomial::parse(self.ring.characteristic(), self.get(name)?)?)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some(FORMAT_LINE) {
            return Err(CliError::Input(format!("file does not start with `{FORMAT_LINE}`")));
        }
        let ring_line = lines
            .next()
            .ok_or_else(|| CliError::Input("missing ring line".into()))?;
        let ring = Arc::new(ring_line.parse::<OreRing>()?);
        let mut doc = Self::new(&ring, None);
        let mut lines = lines.peekable();
        if let Some(seed_line) = lines.peek().and_then(|l| l.strip_prefix("seed ")) {
            let seed = seed_line
                .split_whitespace()
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| CliError::Input(format!("malformed seed line `{seed_line}`")))?;
            if !seed_line.contains(&format!("rng={RNG_NAME}")) {
                return Err(CliError::Input(format!("seed line names an RNG other than {RNG_NAME}")));
            }
            doc.seed = Some(seed);
            lines.next();
        }
        for line in lines {
            let line = line.trim();
            if !line.is_empty() && !line.starts_with('#') {
                doc.push_line(line);
            }
        }
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn render(&self) -> String {
        let mut out = file_header(&self.ring, self.seed);
        for (name, value) in &self.entries {
            if value.is_empty() {
                let _ = writeln!(out, "{name}");
            } else {
                let _ = writeln!(out, "{name}: {value}");
            }
        }
        out
    }
}
