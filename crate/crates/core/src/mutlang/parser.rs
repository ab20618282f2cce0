//! Lexer and recursive-descent parser.
//!
//! ```text
//! program  := stmt*
//! stmt     := IDENT '=' expr ';'
//!           | 'if' '(' expr ')' block ('else' block)?
//!           | 'while' '(' expr ')' block
//!           | 'return' expr ';'
//! block    := '{' stmt* '}'
//! expr     := or
//! or       := and ('||' and)*
//! and      := eq ('&&' eq)*
//! eq       := rel (('==' | '!=') rel)*
//! rel      := add (('<' | '<=' | '>' | '>=') add)*
//! add      := mul (('+' | '-') mul)*
//! mul      := unary (('*' | '/' | '%') unary)*
//! unary    := ('-' | '!') unary | primary
//! primary  := INT | IDENT | '(' expr ')'
//! ```
//!
//! `//` starts a comment running to the end of the line. Statement ids are
//! assigned in preorder starting at 1.

use num_bigint::BigInt;

use super::ast::{BinOp, Expr, Program, Span, Stmt, StmtId, StmtKind, UnOp};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    If,
    Else,
    While,
    Return,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Assign,
    Op(BinOp),
    Not,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer `{v}`"),
            Tok::Ident(n) => format!("identifier `{n}`"),
            Tok::If => "`if`".into(),
            Tok::Else => "`else`".into(),
            Tok::While => "`while`".into(),
            Tok::Return => "`return`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Assign => "`=`".into(),
            Tok::Op(op) => format!("`{op}`"),
            Tok::Not => "`!`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn location(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.chars().count(), |nl| {
        before[nl + 1..].chars().count()
    }) + 1;
    (line, column)
}

fn syntax(src: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = location(src, offset);
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'/' && bytes.get(i + 1) == Some(&b'/') {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let two = |a: u8, b: u8| c == a && bytes.get(i + 1) == Some(&b);
        let (tok, len) = if c.is_ascii_digit() {
            let mut j = i;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            let value: BigInt = src[i..j].parse().expect("digits parse");
            (Tok::Int(value), j - i)
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            let tok = match &src[i..j] {
                "if" => Tok::If,
                "else" => Tok::Else,
                "while" => Tok::While,
                "return" => Tok::Return,
                word => Tok::Ident(word.to_owned()),
            };
            (tok, j - i)
        } else if two(b'<', b'=') {
            (Tok::Op(BinOp::Le), 2)
        } else if two(b'>', b'=') {
            (Tok::Op(BinOp::Ge), 2)
        } else if two(b'=', b'=') {
            (Tok::Op(BinOp::Eq), 2)
        } else if two(b'!', b'=') {
            (Tok::Op(BinOp::Ne), 2)
        } else if two(b'&', b'&') {
            (Tok::Op(BinOp::And), 2)
        } else if two(b'|', b'|') {
            (Tok::Op(BinOp::Or), 2)
        } else {
            let tok = match c {
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'{' => Tok::LBrace,
                b'}' => Tok::RBrace,
                b';' => Tok::Semi,
                b'=' => Tok::Assign,
                b'!' => Tok::Not,
                b'+' => Tok::Op(BinOp::Add),
                b'-' => Tok::Op(BinOp::Sub),
                b'*' => Tok::Op(BinOp::Mul),
                b'/' => Tok::Op(BinOp::Div),
                b'%' => Tok::Op(BinOp::Rem),
                b'<' => Tok::Op(BinOp::Lt),
                b'>' => Tok::Op(BinOp::Gt),
                _ => {
                    let ch = src[i..].chars().next().unwrap_or('?');
                    return Err(syntax(src, i, format!("unexpected character `{ch}`")));
                }
            };
            (tok, 1)
        };
        i += len;
        out.push((tok, Span { start, end: i }));
    }
    out.push((
        Tok::Eof,
        Span {
            start: src.len(),
            end: src.len(),
        },
    ));
    Ok(out)
}

struct Parser<'s> {
    src: &'s str,
    toks: Vec<(Tok, Span)>,
    pos: usize,
    next_id: StmtId,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Span> {
        if *self.peek() == want {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&want.describe()))
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        syntax(
            self.src,
            self.span().start,
            format!("expected {wanted}, found {}", self.peek().describe()),
        )
    }

    fn program(&mut self) -> Result<Program> {
        let mut body = Vec::new();
        while *self.peek() != Tok::Eof {
            body.push(self.stmt()?);
        }
        Ok(Program {
            source: self.src.to_owned(),
            body,
        })
    }

    fn block(&mut self) -> Result<(Vec<Stmt>, usize)> {
        let open = self.expect(Tok::LBrace)?;
        let mut body = Vec::new();
        loop {
            match self.peek() {
                Tok::RBrace => break,
                Tok::Eof => {
                    return Err(syntax(self.src, open.start, "unclosed `{`"));
                }
                _ => body.push(self.stmt()?),
            }
        }
        let close = self.expect(Tok::RBrace)?;
        Ok((body, close.end))
    }

    fn stmt(&mut self) -> Result<Stmt> {
        let start = self.span().start;
        let id = self.next_id;
        self.next_id += 1;
        let (kind, end) = match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                self.expect(Tok::Assign)?;
                let value = self.expr()?;
                let end = self.expect(Tok::Semi)?.end;
                (StmtKind::Assign { name, value }, end)
            }
            Tok::Return => {
                self.bump();
                let value = self.expr()?;
                let end = self.expect(Tok::Semi)?.end;
                (StmtKind::Return { value }, end)
            }
            Tok::If => {
                self.bump();
                self.expect(Tok::LParen)?;
                let cond = self.expr()?;
                self.expect(Tok::RParen)?;
                let (then_body, mut end) = self.block()?;
                let else_body = if *self.peek() == Tok::Else {
                    self.bump();
                    let (b, e) = self.block()?;
                    end = e;
                    b
                } else {
                    Vec::new()
                };
                (
                    StmtKind::If {
                        cond,
                        then_body,
                        else_body,
                    },
                    end,
                )
            }
            Tok::While => {
                self.bump();
                self.expect(Tok::LParen)?;
                let cond = self.expr()?;
                self.expect(Tok::RParen)?;
                let (body, end) = self.block()?;
                (StmtKind::While { cond, body }, end)
            }
            Tok::RBrace => {
                return Err(syntax(self.src, start, "unmatched `}`"));
            }
            _ => return Err(self.unexpected("a statement")),
        };
        Ok(Stmt {
            id,
            span: Span { start, end },
            kind,
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        self.binary(0)
    }

    /// Precedence climbing over the binary operator levels.
    fn binary(&mut self, level: usize) -> Result<Expr> {
        const LEVELS: [&[BinOp]; 6] = [
            &[BinOp::Or],
            &[BinOp::And],
            &[BinOp::Eq, BinOp::Ne],
            &[BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge],
            &[BinOp::Add, BinOp::Sub],
            &[BinOp::Mul, BinOp::Div, BinOp::Rem],
        ];
        if level == LEVELS.len() {
            return self.unary();
        }
        let mut lhs = self.binary(level + 1)?;
        while let Tok::Op(op) = *self.peek() {
            if !LEVELS[level].contains(&op) {
                break;
            }
            let op_span = self.bump().1;
            let rhs = self.binary(level + 1)?;
            lhs = Expr::Binary {
                op,
                op_span,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        let op = match self.peek() {
            Tok::Op(BinOp::Sub) => UnOp::Neg,
            Tok::Not => UnOp::Not,
            _ => return self.primary(),
        };
        let span = self.bump().1;
        let expr = self.unary()?;
        Ok(Expr::Unary {
            op,
            span,
            expr: Box::new(expr),
        })
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(value) => {
                let span = self.bump().1;
                Ok(Expr::Int { value, span })
            }
            Tok::Ident(name) => {
                let span = self.bump().1;
                Ok(Expr::Var { name, span })
            }
            Tok::LParen => {
                let open = self.bump().1;
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    if *self.peek() == Tok::Eof {
                        return Err(syntax(self.src, open.start, "unclosed `(`"));
                    }
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.unexpected("an expression")),
        }
    }
}

/// Parses a program, numbering statements in preorder from 1.
pub fn parse(source: &str) -> Result<Program> {
    let toks = lex(source)?;
    Parser {
        src: source,
        toks,
        pos: 0,
        next_id: 1,
    }
    .program()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_return() {
        let p = parse("return 1 + 2;").unwrap();
        assert_eq!(p.statement_count(), 1);
        assert!(matches!(p.body[0].kind, StmtKind::Return { .. }));
    }

    #[test]
    fn preorder_ids() {
        let src = "x = 1;\nif (x > 0) { y = 2; z = 3; } else { y = 4; }\nwhile (y > 0) { y = y - 1; }\nreturn y;";
        let p = parse(src).unwrap();
        let ids: Vec<StmtId> = p.statements().iter().map(|s| s.id).collect();
        assert_eq!(ids, (1..=8).collect::<Vec<_>>());
        assert!(matches!(p.statements()[4].kind, StmtKind::Assign { ref name, .. } if name == "y"));
    }

    #[test]
    fn precedence() {
        let p = parse("return 1 + 2 * 3 < 4 && !a || b;").unwrap();
        let Some(Expr::Binary { op, .. }) = p.body[0].own_expr() else {
            panic!()
        };
        assert_eq!(*op, BinOp::Or);
        let p = parse("return 1 - 2 - 3;").unwrap();
        // Left associative: (1 - 2) - 3.
        let Some(Expr::Binary { lhs, .. }) = p.body[0].own_expr() else {
            panic!()
        };
        assert!(matches!(**lhs, Expr::Binary { op: BinOp::Sub, .. }));
    }

    #[test]
    fn unbalanced_brace_is_located() {
        match parse("x = 1;\nif (x) {\n  y = 2;\n") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("unexpected {other:?}"),
        }
        match parse("x = 1;\n}") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn other_syntax_errors() {
        assert!(matches!(
            parse("x = ;"),
            Err(Error::Syntax { column: 5, .. })
        ));
        assert!(matches!(parse("return (1;"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse("x = 1 $ 2;"),
            Err(Error::Syntax { column: 7, .. })
        ));
        assert!(matches!(parse("return 1"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn comments_and_inputs() {
        let p = parse("// doubles a\nb = a * 2; // twice\nreturn b + c;").unwrap();
        assert_eq!(p.statement_count(), 2);
        assert_eq!(p.input_variables(), ["a", "c"]);
    }
}
