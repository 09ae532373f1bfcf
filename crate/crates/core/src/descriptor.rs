//! Group descriptor mini-language.
//!
//! ```text
//! desc := cyclic:N | dihedral:N | symmetric:N | heisenberg:P
//!       | product:desc,desc | cayley:@path.json
//! list := desc (',' desc)*
//! ```
//!
//! `product` always consumes exactly two descriptors, so a comma-separated
//! list of descriptors that contains products is still unambiguous.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::{Builder, Group};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Descriptor {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Heisenberg(usize),
    Product(Box<Descriptor>, Box<Descriptor>),
    Cayley(PathBuf),
}

/// On-disk multiplication table: `{"order": n, "table": [[...], ...]}`.
#[derive(Debug, Clone, Deserialize, serde::Serialize)]
pub struct CayleyFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl Descriptor {
    pub fn build(&self, builder: &Builder) -> Result<Group> {
        match self {
            Descriptor::Cyclic(n) => builder.cyclic(*n),
            Descriptor::Dihedral(n) => builder.dihedral(*n),
            Descriptor::Symmetric(n) => builder.symmetric(*n),
            Descriptor::Heisenberg(p) => builder.heisenberg(*p),
            Descriptor::Product(a, b) => builder.product(&a.build(builder)?, &b.build(builder)?),
            Descriptor::Cayley(path) => {
                let mut group = load_cayley(path, builder)?;
                group.set_origin(self.to_string());
                Ok(group)
            }
        }
    }

    /// Parses a comma-separated list of descriptors.
    pub fn parse_list(input: &str) -> Result<Vec<Descriptor>> {
        let mut parser = Parser::new(input);
        let mut out = vec![parser.descriptor()?];
        while parser.eat(',') {
            out.push(parser.descriptor()?);
        }
        parser.finish()?;
        Ok(out)
    }
}

fn load_cayley(path: &Path, builder: &Builder) -> Result<Group> {
    let text = std::fs::read_to_string(path)?;
    let file: CayleyFile = serde_json::from_str(&text)?;
    if file.order != file.table.len() {
        return Err(Error::InvalidArgument(format!(
            "declared order {} but the table has {} rows",
            file.order,
            file.table.len()
        )));
    }
    builder.from_cayley(&file.table)
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Cyclic(n) => write!(f, "cyclic:{n}"),
            Descriptor::Dihedral(n) => write!(f, "dihedral:{n}"),
            Descriptor::Symmetric(n) => write!(f, "symmetric:{n}"),
            Descriptor::Heisenberg(p) => write!(f, "heisenberg:{p}"),
            Descriptor::Product(a, b) => write!(f, "product:{a},{b}"),
            Descriptor::Cayley(path) => write!(f, "cayley:@{}", path.display()),
        }
    }
}

impl FromStr for Descriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser::new(s);
        let desc = parser.descriptor()?;
        parser.finish()?;
        Ok(desc)
    }
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Self { input, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    fn error(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            input: self.input.to_string(),
            reason: reason.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn finish(&self) -> Result<()> {
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected trailing input `{}`", self.rest())))
        }
    }

    fn word(&mut self) -> &'a str {
        let rest = self.rest();
        let len = rest
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn number(&mut self) -> Result<usize> {
        let rest = self.rest();
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error(format!("expected a number at offset {}", self.pos)));
        }
        self.pos += len;
        rest[..len]
            .parse()
            .map_err(|e| self.error(format!("bad number: {e}")))
    }

    fn descriptor(&mut self) -> Result<Descriptor> {
        let start = self.pos;
        let kind = self.word();
        if !self.eat(':') {
            return Err(self.error(format!("expected `:` after `{kind}` at offset {start}")));
        }
        match kind {
            "cyclic" => Ok(Descriptor::Cyclic(self.number()?)),
            "dihedral" => Ok(Descriptor::Dihedral(self.number()?)),
            "symmetric" => Ok(Descriptor::Symmetric(self.number()?)),
            "heisenberg" => Ok(Descriptor::Heisenberg(self.number()?)),
            "product" => {
                let a = self.descriptor()?;
                if !self.eat(',') {
                    return Err(self.error("product needs two comma-separated factors"));
                }
                let b = self.descriptor()?;
                Ok(Descriptor::Product(Box::new(a), Box::new(b)))
            }
            "cayley" => {
                if !self.eat('@') {
                    return Err(self.error("cayley descriptor must be `cayley:@file.json`"));
                }
                let rest = self.rest();
                let len = rest.find(',').unwrap_or(rest.len());
                if len == 0 {
                    return Err(self.error("missing cayley file path"));
                }
                self.pos += len;
                Ok(Descriptor::Cayley(PathBuf::from(&rest[..len])))
            }
            other => Err(self.error(format!("unknown group family `{other}`"))),
        }
    }
}
