//! The `.fda` text format: algebras, elements, cocycles and morphisms.
//!
//! ```text
//! algebra bT1 {
//!   gen c2 : (2,even);
//!   gen ct2 : (2,even);
//!   gen h3 : (3,even);
//!   d h3 = -c2*ct2;
//! }
//! cocycle x in bT1 = c2^2;
//! morphism phiT : bT1 -> bT1 { c2 = ct2; ct2 = c2; h3 = h3; }
//! ```

mod check;
mod lexer;
mod parser;
mod serialize;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{DgaMorphism, Element, FreeDga};

pub use check::check_document;
pub use serialize::{fda_name, serialize_algebra, serialize_element, serialize_morphism};

/// Exponent and degree limits the parser enforces, so hostile input cannot blow up memory.
pub const MAX_EXPONENT: u32 = 64;
pub const MAX_DEGREE: i32 = 256;
pub const MAX_TERMS: usize = 1 << 20;
pub const MAX_NESTING: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub pos: Pos,
    pub message: String,
    pub lexeme: String,
}

impl Diagnostic {
    pub fn error(pos: Pos, message: impl Into<String>, lexeme: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Error, pos, message: message.into(), lexeme: lexeme.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: error: {}", self.pos.line, self.pos.column, self.message)?;
        if !self.lexeme.is_empty() {
            write!(f, " (at `{}`)", self.lexeme)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub enum Block {
    Algebra { name: String, algebra: Arc<FreeDga> },
    Element { name: String, algebra: String, value: Element, cocycle: bool },
    Morphism { name: String, source: String, target: String, morphism: DgaMorphism },
}

impl Block {
    pub fn name(&self) -> &str {
        match self {
            Block::Algebra { name, .. } | Block::Element { name, .. } | Block::Morphism { name, .. } => name,
        }
    }
}

/// Ordered blocks with the position each one starts at.
#[derive(Clone, Debug, Default)]
pub struct FdaDocument {
    pub blocks: Vec<(Block, Pos)>,
}

impl FdaDocument {
    pub fn parse(src: &str) -> Result<FdaDocument, Vec<Diagnostic>> {
        parser::parse(src).map_err(|d| vec![d])
    }

    pub fn algebra(&self, name: &str) -> Option<&Arc<FreeDga>> {
        self.blocks.iter().find_map(|(b, _)| match b {
            Block::Algebra { name: n, algebra } if n == name => Some(algebra),
            _ => None,
        })
    }

    pub fn element(&self, name: &str) -> Option<&Element> {
        self.blocks.iter().find_map(|(b, _)| match b {
            Block::Element { name: n, value, .. } if n == name => Some(value),
            _ => None,
        })
    }

    pub fn morphism(&self, name: &str) -> Option<&DgaMorphism> {
        self.blocks.iter().find_map(|(b, _)| match b {
            Block::Morphism { name: n, morphism, .. } if n == name => Some(morphism),
            _ => None,
        })
    }

    pub fn push_algebra(&mut self, name: &str, algebra: Arc<FreeDga>) -> &mut Self {
        self.blocks.push((Block::Algebra { name: name.to_string(), algebra }, Pos::default()));
        self
    }

    pub fn push_element(&mut self, name: &str, algebra: &str, value: Element, cocycle: bool) -> &mut Self {
        self.blocks.push((Block::Element { name: name.to_string(), algebra: algebra.to_string(), value, cocycle }, Pos::default()));
        self
    }

    pub fn push_morphism(&mut self, name: &str, source: &str, target: &str, morphism: DgaMorphism) -> &mut Self {
        self.blocks.push((
            Block::Morphism { name: name.to_string(), source: source.to_string(), target: target.to_string(), morphism },
            Pos::default(),
        ));
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (b, _) in &self.blocks {
            match b {
                Block::Algebra { name, algebra } => out.push_str(&serialize_algebra(name, algebra)),
                Block::Element { name, algebra, value, cocycle } => {
                    let table = self.algebra(algebra).expect("element refers to a declared algebra");
                    out.push_str(&serialize_element(name, algebra, table, value, *cocycle));
                }
                Block::Morphism { name, source, target, morphism } => out.push_str(&serialize_morphism(name, source, target, morphism)),
            }
        }
        out
    }
}

pub fn parse_many(sources: &[&str]) -> Vec<Result<FdaDocument, Vec<Diagnostic>>> {
    sources.par_iter().map(|s| FdaDocument::parse(s)).collect()
}
