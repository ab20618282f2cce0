//! First-order mutation operators.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ast::{BinOp, Expr, Program, StmtId, StmtKind};
use crate::error::{Error, Result};

/// Mutation operators, in the order used to sort mutants at one site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Operator {
    /// Arithmetic operator replacement.
    Aor,
    /// Relational operator replacement.
    Ror,
    /// Logical connector replacement.
    Lcr,
    /// Constant replacement: `c+1`, `c-1` and `0`.
    Crp,
    /// Statement deletion.
    Sdl,
}

impl Operator {
    pub const ALL: [Operator; 5] = [
        Operator::Aor,
        Operator::Ror,
        Operator::Lcr,
        Operator::Crp,
        Operator::Sdl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Aor => "AOR",
            Operator::Ror => "ROR",
            Operator::Lcr => "LCR",
            Operator::Crp => "CRP",
            Operator::Sdl => "SDL",
        }
    }

    /// Parses a comma-separated operator list such as `AOR,ROR`.
    pub fn parse_list(s: &str) -> Result<Vec<Operator>> {
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Operator::ALL
            .into_iter()
            .find(|op| op.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown mutation operator `{s}`")))
    }
}

/// One single-site mutation. Splicing `replacement` over the `original`
/// text at byte `offset` of the original source yields the mutant source.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MutantDescriptor {
    pub id: String,
    pub operator: Operator,
    pub statement: StmtId,
    pub offset: usize,
    pub original: String,
    pub replacement: String,
}

impl MutantDescriptor {
    /// Splices this mutation into `source`.
    pub fn apply_to_source(&self, source: &str) -> Result<String> {
        let end = self.offset + self.original.len();
        if source.get(self.offset..end) != Some(self.original.as_str()) {
            return Err(Error::InvalidArgument(format!(
                "mutant {} does not match the source at offset {}",
                self.id, self.offset
            )));
        }
        Ok(format!(
            "{}{}{}",
            &source[..self.offset],
            self.replacement,
            &source[end..]
        ))
    }

    /// `statement-id:offset original → replacement`.
    pub fn site(&self) -> String {
        format!(
            "{}:{} {} → {}",
            self.statement, self.offset, self.original, self.replacement
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Change {
    Op(BinOp),
    Const(BigInt),
    Delete,
}

struct Candidate {
    statement: StmtId,
    offset: usize,
    operator: Operator,
    original: String,
    replacement: String,
    change: Change,
}

fn binop_candidates(op: BinOp, operators: &[Operator]) -> Vec<(Operator, BinOp)> {
    let (operator, family): (Operator, &[BinOp]) = if BinOp::ARITHMETIC.contains(&op) {
        (Operator::Aor, &BinOp::ARITHMETIC)
    } else if BinOp::RELATIONAL.contains(&op) {
        (Operator::Ror, &BinOp::RELATIONAL)
    } else {
        (Operator::Lcr, &BinOp::LOGICAL)
    };
    if !operators.contains(&operator) {
        return Vec::new();
    }
    family
        .iter()
        .filter(|&&r| r != op)
        .map(|&r| (operator, r))
        .collect()
}

fn constant_replacements(c: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::new();
    for r in [c + BigInt::one(), c - BigInt::one(), BigInt::zero()] {
        if &r != c && !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

fn apply_change(program: &Program, c: &Candidate) -> Program {
    let mut p = program.clone();
    let stmt = p
        .statement_mut(c.statement)
        .expect("candidate statement exists");
    match &c.change {
        Change::Delete => stmt.kind = StmtKind::Deleted,
        change => {
            let expr = stmt.own_expr_mut().expect("candidate expression exists");
            expr.walk_mut(&mut |e| match (e, change) {
                (Expr::Binary { op, op_span, .. }, Change::Op(new))
                    if op_span.start == c.offset =>
                {
                    *op = *new;
                }
                (Expr::Int { value, span }, Change::Const(new)) if span.start == c.offset => {
                    *value = new.clone();
                }
                _ => {}
            });
        }
    }
    p
}

/// Every applicable single-site mutant, ordered by statement id, site
/// offset, operator and replacement. Mutants are numbered `m1, m2, ...`
/// in that order and keep the original statement ids.
pub fn mutate_all(program: &Program, operators: &[Operator]) -> Vec<(MutantDescriptor, Program)> {
    let src = program.source.as_str();
    let mut candidates = Vec::new();
    for stmt in program.statements() {
        let deletable = !matches!(stmt.kind, StmtKind::Return { .. } | StmtKind::Deleted);
        if deletable && operators.contains(&Operator::Sdl) {
            candidates.push(Candidate {
                statement: stmt.id,
                offset: stmt.span.start,
                operator: Operator::Sdl,
                original: src[stmt.span.start..stmt.span.end].to_owned(),
                replacement: String::new(),
                change: Change::Delete,
            });
        }
        let Some(expr) = stmt.own_expr() else {
            continue;
        };
        expr.walk(&mut |e| match e {
            Expr::Binary { op, op_span, .. } => {
                for (operator, r) in binop_candidates(*op, operators) {
                    candidates.push(Candidate {
                        statement: stmt.id,
                        offset: op_span.start,
                        operator,
                        original: op.symbol().to_owned(),
                        replacement: r.symbol().to_owned(),
                        change: Change::Op(r),
                    });
                }
            }
            Expr::Int { value, span } if operators.contains(&Operator::Crp) => {
                for r in constant_replacements(value) {
                    candidates.push(Candidate {
                        statement: stmt.id,
                        offset: span.start,
                        operator: Operator::Crp,
                        original: src[span.start..span.end].to_owned(),
                        // A negative replacement is parenthesized so the
                        // spliced source parses to the same tree.
                        replacement: if r < BigInt::zero() {
                            format!("({r})")
                        } else {
                            r.to_string()
                        },
                        change: Change::Const(r),
                    });
                }
            }
            _ => {}
        });
    }
    // Candidates are generated in statement order and, within a statement,
    // in source order; a stable sort settles the remaining keys.
    candidates.sort_by_key(|c| (c.statement, c.offset, c.operator));
    candidates
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let desc = MutantDescriptor {
                id: format!("m{}", i + 1),
                operator: c.operator,
                statement: c.statement,
                offset: c.offset,
                original: c.original.clone(),
                replacement: c.replacement.clone(),
            };
            let mut mutant = apply_change(program, &c);
            mutant.source = desc
                .apply_to_source(src)
                .expect("descriptor was cut from this source");
            (desc, mutant)
        })
        .collect()
}
