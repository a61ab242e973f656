use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::lexer::{lex, Tok, Token};
use super::{Block, Diagnostic, FdaDocument, MAX_DEGREE, MAX_EXPONENT, MAX_NESTING, MAX_TERMS};
use crate::algebra::{Bidegree, DgaMorphism, Element, FreeDga, GeneratorTable, Parity};
use crate::error::Error;
use crate::scalar::GaussianRational;

const RESERVED: &[&str] = &["algebra", "gen", "d", "element", "cocycle", "morphism", "curved", "in", "i"];

pub fn is_reserved(s: &str) -> bool {
    RESERVED.contains(&s)
}

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    toks: Vec<Token>,
    at: usize,
    depth: usize,
}

pub fn parse(src: &str) -> PResult<FdaDocument> {
    let mut p = Parser { toks: lex(src)?, at: 0, depth: 0 };
    let mut doc = FdaDocument::default();
    while p.peek().tok != Tok::Eof {
        let start = p.peek().pos;
        let block = match p.ident_text().as_deref() {
            Some("algebra") => p.algebra()?,
            Some("element") | Some("cocycle") => p.element(&doc)?,
            Some("morphism") | Some("curved") => p.morphism(&doc)?,
            _ => return Err(p.unexpected("`algebra`, `element`, `cocycle` or `morphism`")),
        };
        let clash = doc.blocks.iter().any(|(b, _)| std::mem::discriminant(b) == std::mem::discriminant(&block) && b.name() == block.name());
        if clash {
            return Err(Diagnostic::error(start, format!("duplicate declaration of {}", block.name()), block.name()));
        }
        doc.blocks.push((block, start));
    }
    Ok(doc)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn ident_text(&self) -> Option<String> {
        match &self.peek().tok {
            Tok::Ident(s) => Some(s.clone()),
            _ => None,
        }
    }

    fn unexpected(&self, want: &str) -> Diagnostic {
        let t = self.peek();
        let found = if t.tok == Tok::Eof { "end of input".to_string() } else { format!("`{}`", t.text) };
        Diagnostic::error(t.pos, format!("expected {want}, found {found}"), t.text.clone())
    }

    fn sym(&mut self, c: char) -> PResult<Token> {
        if self.peek().tok == Tok::Sym(c) {
            Ok(self.next())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Token> {
        if self.ident_text().as_deref() == Some(kw) {
            Ok(self.next())
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    /// A user-chosen identifier (not a keyword and not `i`).
    fn name(&mut self, what: &str) -> PResult<Token> {
        match self.ident_text() {
            Some(s) if !is_reserved(&s) => Ok(self.next()),
            Some(s) => Err(Diagnostic::error(self.peek().pos, format!("`{s}` is reserved and cannot be used as {what}"), s)),
            None => Err(self.unexpected(what)),
        }
    }

    fn small_int(&mut self, signed: bool) -> PResult<(i64, Token)> {
        let neg = signed && self.peek().tok == Tok::Sym('-');
        if neg {
            self.next();
        }
        let t = self.next();
        match &t.tok {
            Tok::Int(s) => match s.parse::<i64>() {
                Ok(v) if v <= i32::MAX as i64 => Ok((if neg { -v } else { v }, t)),
                _ => Err(Diagnostic::error(t.pos, "integer too large", t.text.clone())),
            },
            _ => Err(Diagnostic::error(t.pos, "expected an integer", t.text.clone())),
        }
    }

    fn algebra(&mut self) -> PResult<Block> {
        self.keyword("algebra")?;
        let name = self.name("an algebra name")?;
        self.sym('{')?;
        let mut decls: Vec<(String, Bidegree)> = Vec::new();
        while self.ident_text().as_deref() == Some("gen") {
            self.next();
            let g = self.name("a generator name")?;
            self.sym(':')?;
            self.sym('(')?;
            let (n, nt) = self.small_int(true)?;
            if !(0..=MAX_DEGREE as i64).contains(&n) {
                return Err(Diagnostic::error(nt.pos, format!("degree {n} outside 0..={MAX_DEGREE}"), nt.text));
            }
            self.sym(',')?;
            let parity = match self.ident_text().as_deref() {
                Some("even") => Parity::Even,
                Some("odd") => Parity::Odd,
                _ => return Err(self.unexpected("`even` or `odd`")),
            };
            self.next();
            self.sym(')')?;
            self.sym(';')?;
            if decls.iter().any(|(x, _)| *x == g.text) {
                return Err(Diagnostic::error(g.pos, format!("generator {} declared twice", g.text), g.text));
            }
            decls.push((g.text, Bidegree { n: n as i32, parity }));
        }
        let table = GeneratorTable::new(&decls).map_err(|e| Diagnostic::error(name.pos, e.to_string(), name.text.clone()))?;
        let mut d: Vec<Option<(Element, Token)>> = vec![None; table.len()];
        while self.ident_text().as_deref() == Some("d") {
            self.next();
            let g = self.next();
            let Some(id) = (match &g.tok {
                Tok::Ident(s) => table.id(s),
                _ => None,
            }) else {
                return Err(Diagnostic::error(g.pos, format!("`{}` is not a generator of {}", g.text, name.text), g.text));
            };
            if d[id].is_some() {
                return Err(Diagnostic::error(g.pos, format!("second differential for {}", g.text), g.text));
            }
            self.sym('=')?;
            let x = self.expr(&table)?;
            self.sym(';')?;
            d[id] = Some((x, g));
        }
        if self.ident_text().as_deref() == Some("gen") {
            return Err(Diagnostic::error(self.peek().pos, "generators must be declared before any differential", "gen"));
        }
        self.sym('}')?;
        let where_of = |id: usize| match &d[id] {
            Some((_, t)) => (t.pos, t.text.clone()),
            None => (name.pos, table.name(id).to_string()),
        };
        let diffs: Vec<Element> = d.iter().map(|x| x.as_ref().map(|(e, _)| e.clone()).unwrap_or_else(Element::zero)).collect();
        match FreeDga::declare(name.text.clone(), table.clone(), diffs) {
            Ok(a) => Ok(Block::Algebra { name: name.text, algebra: Arc::new(a) }),
            Err(e) => {
                let (pos, lexeme) = match &e {
                    Error::DegreeMismatch { generator, .. } | Error::NotSquareZero { generator, .. } => where_of(table.id(generator).unwrap_or(0)),
                    _ => (name.pos, name.text.clone()),
                };
                Err(Diagnostic::error(pos, e.to_string(), lexeme))
            }
        }
    }

    fn lookup<'d>(&self, doc: &'d FdaDocument, t: &Token) -> PResult<&'d Arc<FreeDga>> {
        doc.algebra(&t.text).ok_or_else(|| Diagnostic::error(t.pos, format!("unknown algebra {}", t.text), t.text.clone()))
    }

    fn element(&mut self, doc: &FdaDocument) -> PResult<Block> {
        let kw = self.next();
        let cocycle = kw.text == "cocycle";
        let name = self.name("an element name")?;
        self.keyword("in")?;
        let at = self.name("an algebra name")?;
        let alg = self.lookup(doc, &at)?.clone();
        self.sym('=')?;
        let value = self.expr(&alg)?;
        self.sym(';')?;
        Ok(Block::Element { name: name.text, algebra: at.text, value, cocycle })
    }

    fn morphism(&mut self, doc: &FdaDocument) -> PResult<Block> {
        let curved = self.ident_text().as_deref() == Some("curved");
        if curved {
            self.next();
        }
        self.keyword("morphism")?;
        let name = self.name("a morphism name")?;
        self.sym(':')?;
        let st = self.name("an algebra name")?;
        if self.peek().tok != Tok::Arrow {
            return Err(self.unexpected("`->`"));
        }
        self.next();
        let tt = self.name("an algebra name")?;
        let (src, tgt) = (self.lookup(doc, &st)?.clone(), self.lookup(doc, &tt)?.clone());
        self.sym('{')?;
        let mut images: Vec<Option<Element>> = vec![None; src.len()];
        while self.peek().tok != Tok::Sym('}') {
            let g = self.name("a source generator")?;
            let id = src.id(&g.text).ok_or_else(|| Diagnostic::error(g.pos, format!("`{}` is not a generator of {}", g.text, st.text), g.text.clone()))?;
            if images[id].is_some() {
                return Err(Diagnostic::error(g.pos, format!("second image for {}", g.text), g.text));
            }
            self.sym('=')?;
            images[id] = Some(self.expr(&tgt)?);
            self.sym(';')?;
        }
        let close = self.sym('}')?;
        let images = images
            .into_iter()
            .enumerate()
            .map(|(id, x)| match x {
                Some(x) => Ok(x),
                None => tgt
                    .id(src.name(id))
                    .map(Element::generator)
                    .ok_or_else(|| Diagnostic::error(close.pos, format!("no image given for {} and {} has no generator of that name", src.name(id), tt.text), src.name(id).to_string())),
            })
            .collect::<PResult<Vec<_>>>()?;
        let morphism = DgaMorphism::new(src, tgt, images, curved).map_err(|e| Diagnostic::error(name.pos, e.to_string(), name.text.clone()))?;
        Ok(Block::Morphism { name: name.text, source: st.text, target: tt.text, morphism })
    }

    fn expr(&mut self, t: &GeneratorTable) -> PResult<Element> {
        let mut acc = Element::zero();
        let mut first = true;
        loop {
            let neg = match self.peek().tok {
                Tok::Sym('+') => {
                    self.next();
                    false
                }
                Tok::Sym('-') => {
                    self.next();
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let x = self.term(t)?;
            acc.add_scaled(&x, &if neg { -GaussianRational::one() } else { GaussianRational::one() });
        }
        Ok(acc)
    }

    fn term(&mut self, t: &GeneratorTable) -> PResult<Element> {
        let start = self.peek().clone();
        let mut acc = self.factor(t)?;
        while self.peek().tok == Tok::Sym('*') {
            self.next();
            let x = self.factor(t)?;
            if acc.len().saturating_mul(x.len()) > MAX_TERMS {
                return Err(Diagnostic::error(start.pos, format!("product exceeds {MAX_TERMS} terms"), start.text));
            }
            acc = t.mul(&acc, &x);
        }
        Ok(acc)
    }

    fn factor(&mut self, t: &GeneratorTable) -> PResult<Element> {
        let tok = self.next();
        match &tok.tok {
            Tok::Int(s) => {
                let num: BigInt = s.parse().expect("lexer yields digits");
                let mut q = BigRational::from_integer(num);
                if self.peek().tok == Tok::Sym('/') {
                    self.next();
                    let dt = self.next();
                    let Tok::Int(ds) = &dt.tok else {
                        return Err(Diagnostic::error(dt.pos, "expected an integer denominator", dt.text.clone()));
                    };
                    let den: BigInt = ds.parse().expect("lexer yields digits");
                    if den.is_zero() {
                        return Err(Diagnostic::error(dt.pos, "division by zero", dt.text.clone()));
                    }
                    q = BigRational::new(q.to_integer(), den);
                }
                Ok(Element::scalar(GaussianRational::new(q, BigRational::zero())))
            }
            Tok::Ident(s) if s == "i" => Ok(Element::scalar(GaussianRational::i())),
            Tok::Ident(s) => {
                let id = t.id(s).ok_or_else(|| Diagnostic::error(tok.pos, format!("unknown generator {s}"), s.clone()))?;
                let mut e = 1u32;
                if self.peek().tok == Tok::Sym('^') {
                    let caret = self.next();
                    if t.is_exterior(id) {
                        return Err(Diagnostic::error(caret.pos, format!("exponent on exterior generator {s}"), s.clone()));
                    }
                    let (k, kt) = self.small_int(false)?;
                    if !(1..=MAX_EXPONENT as i64).contains(&k) {
                        return Err(Diagnostic::error(kt.pos, format!("exponent {k} outside 1..={MAX_EXPONENT}"), kt.text));
                    }
                    e = k as u32;
                }
                Ok(t.pow(&Element::generator(id), e))
            }
            Tok::Sym('(') => {
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    return Err(Diagnostic::error(tok.pos, format!("parentheses nested deeper than {MAX_NESTING}"), "("));
                }
                let x = self.expr(t)?;
                self.sym(')')?;
                self.depth -= 1;
                Ok(x)
            }
            _ => Err(Diagnostic::error(tok.pos, format!("expected a coefficient or generator, found `{}`", tok.text), tok.text.clone())),
        }
    }
}
