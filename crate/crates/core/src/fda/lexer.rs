use super::{Diagnostic, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Arrow,
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
    pub text: String,
}

const SYMBOLS: &str = "{}();:,=*/^+-";

pub fn lex(src: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&(start, c)) = it.peek() {
        let pos = Pos { line, column: col };
        if c == '\n' {
            it.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            it.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&(_, c)) = it.peek() {
                if c == '\n' {
                    break;
                }
                it.next();
                col += 1;
            }
            continue;
        }
        let mut take_while = |pred: &dyn Fn(char) -> bool| {
            let mut end = start;
            while let Some(&(i, c)) = it.peek() {
                if !pred(c) {
                    break;
                }
                end = i + c.len_utf8();
                it.next();
                col += 1;
            }
            src[start..end].to_string()
        };
        if c.is_ascii_alphabetic() || c == '_' {
            let s = take_while(&|c| c.is_ascii_alphanumeric() || c == '_');
            out.push(Token { tok: Tok::Ident(s.clone()), pos, text: s });
        } else if c.is_ascii_digit() {
            let s = take_while(&|c| c.is_ascii_digit());
            out.push(Token { tok: Tok::Int(s.clone()), pos, text: s });
        } else if c == '-' && src[start..].starts_with("->") {
            it.next();
            it.next();
            col += 2;
            out.push(Token { tok: Tok::Arrow, pos, text: "->".into() });
        } else if SYMBOLS.contains(c) {
            it.next();
            col += 1;
            out.push(Token { tok: Tok::Sym(c), pos, text: c.to_string() });
        } else {
            return Err(Diagnostic::error(pos, format!("unexpected character {c:?}"), c.to_string()));
        }
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, column: col }, text: String::new() });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_arrows() {
        let t = lex("a -> b # note\n  -1/2*x^2").unwrap();
        let kinds: Vec<_> = t.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(kinds, ["a", "->", "b", "-", "1", "/", "2", "*", "x", "^", "2", ""]);
        assert_eq!(t[3].pos, Pos { line: 2, column: 3 });
    }

    #[test]
    fn stray_character_located() {
        let e = lex("x = 1;\n y @").unwrap_err();
        assert_eq!((e.pos.line, e.pos.column, e.lexeme.as_str()), (2, 4, "@"));
    }
}
