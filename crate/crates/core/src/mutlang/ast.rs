use std::fmt;

use num_bigint::BigInt;

/// Byte offsets into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

pub type StmtId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Rem,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    And,
    Or,
}

impl BinOp {
    pub const ARITHMETIC: [BinOp; 5] = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Rem];
    pub const RELATIONAL: [BinOp; 6] = [
        BinOp::Lt,
        BinOp::Le,
        BinOp::Gt,
        BinOp::Ge,
        BinOp::Eq,
        BinOp::Ne,
    ];
    pub const LOGICAL: [BinOp; 2] = [BinOp::And, BinOp::Or];

    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Rem => "%",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::And => "&&",
            BinOp::Or => "||",
        }
    }
}

impl fmt::Display for BinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnOp {
    Neg,
    Not,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int {
        value: BigInt,
        span: Span,
    },
    Var {
        name: String,
        span: Span,
    },
    Unary {
        op: UnOp,
        span: Span,
        expr: Box<Expr>,
    },
    Binary {
        op: BinOp,
        /// Span of the operator token.
        op_span: Span,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
}

impl Expr {
    /// Visits every node in source order (left operand, node, right operand
    /// for binaries).
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        match self {
            Expr::Int { .. } | Expr::Var { .. } => f(self),
            Expr::Unary { expr, .. } => {
                f(self);
                expr.walk(f);
            }
            Expr::Binary { lhs, rhs, .. } => {
                lhs.walk(f);
                f(self);
                rhs.walk(f);
            }
        }
    }

    pub(crate) fn walk_mut(&mut self, f: &mut impl FnMut(&mut Expr)) {
        f(self);
        match self {
            Expr::Int { .. } | Expr::Var { .. } => {}
            Expr::Unary { expr, .. } => expr.walk_mut(f),
            Expr::Binary { lhs, rhs, .. } => {
                lhs.walk_mut(f);
                rhs.walk_mut(f);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Assign {
        name: String,
        value: Expr,
    },
    If {
        cond: Expr,
        then_body: Vec<Stmt>,
        else_body: Vec<Stmt>,
    },
    While {
        cond: Expr,
        body: Vec<Stmt>,
    },
    Return {
        value: Expr,
    },
    /// A statement removed by statement deletion; executes as a no-op.
    Deleted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stmt {
    pub id: StmtId,
    pub span: Span,
    pub kind: StmtKind,
}

impl Stmt {
    /// Expressions owned directly by this statement (not by nested ones).
    pub fn own_expr(&self) -> Option<&Expr> {
        match &self.kind {
            StmtKind::Assign { value, .. } | StmtKind::Return { value } => Some(value),
            StmtKind::If { cond, .. } | StmtKind::While { cond, .. } => Some(cond),
            StmtKind::Deleted => None,
        }
    }

    pub(crate) fn own_expr_mut(&mut self) -> Option<&mut Expr> {
        match &mut self.kind {
            StmtKind::Assign { value, .. } | StmtKind::Return { value } => Some(value),
            StmtKind::If { cond, .. } | StmtKind::While { cond, .. } => Some(cond),
            StmtKind::Deleted => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    /// Source text; for a mutant, the original source with the mutation
    /// spliced in.
    pub source: String,
    pub body: Vec<Stmt>,
}

fn visit<'a>(stmts: &'a [Stmt], f: &mut impl FnMut(&'a Stmt)) {
    for s in stmts {
        f(s);
        match &s.kind {
            StmtKind::If {
                then_body,
                else_body,
                ..
            } => {
                visit(then_body, f);
                visit(else_body, f);
            }
            StmtKind::While { body, .. } => visit(body, f),
            _ => {}
        }
    }
}

fn find_mut(stmts: &mut [Stmt], id: StmtId) -> Option<&mut Stmt> {
    for s in stmts {
        if s.id == id {
            return Some(s);
        }
        let nested = match &mut s.kind {
            StmtKind::If {
                then_body,
                else_body,
                ..
            } => find_mut(then_body, id).or_else(|| find_mut(else_body, id)),
            StmtKind::While { body, .. } => find_mut(body, id),
            _ => None,
        };
        if nested.is_some() {
            return nested;
        }
    }
    None
}

impl Program {
    /// All statements in preorder (which is also id order).
    pub fn statements(&self) -> Vec<&Stmt> {
        let mut out = Vec::new();
        visit(&self.body, &mut |s| out.push(s));
        out
    }

    pub fn statement_count(&self) -> usize {
        self.statements().len()
    }

    pub(crate) fn statement_mut(&mut self, id: StmtId) -> Option<&mut Stmt> {
        find_mut(&mut self.body, id)
    }

    /// Variables read somewhere but never assigned: the program's inputs.
    pub fn input_variables(&self) -> Vec<String> {
        let mut assigned = std::collections::BTreeSet::new();
        let mut read = std::collections::BTreeSet::new();
        for s in self.statements() {
            if let StmtKind::Assign { name, .. } = &s.kind {
                assigned.insert(name.clone());
            }
            if let Some(e) = s.own_expr() {
                e.walk(&mut |e| {
                    if let Expr::Var { name, .. } = e {
                        read.insert(name.clone());
                    }
                });
            }
        }
        read.difference(&assigned).cloned().collect()
    }
}
