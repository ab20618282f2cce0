//! Tree-walking interpreter producing behavior tokens.
//!
//! Integers are unbounded. `/` truncates toward zero and `%` takes the sign
//! of the dividend. Conditions treat any nonzero value as true; comparison
//! and logical operators yield 1 or 0, and `&&`/`||` short-circuit.
//!
//! One step is charged per executed statement and per loop-condition
//! evaluation. When tracing, every executed statement appends an entry whose
//! state text ends with the variable store; the final entry always records
//! how the run ended (`return=`, `error=` or `timeout`), so two runs with
//! different outputs always have different traces.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ast::{BinOp, Expr, Program, Stmt, StmtId, StmtKind, UnOp};
use crate::diffcore::{BehaviorToken, Status, TraceEntry};

pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExecOptions {
    pub budget: u64,
    pub tracing: bool,
}

impl Default for ExecOptions {
    fn default() -> Self {
        ExecOptions {
            budget: DEFAULT_BUDGET,
            tracing: false,
        }
    }
}

type Store = BTreeMap<String, BigInt>;

enum Halt {
    Return(StmtId, BigInt),
    Error(StmtId, String),
    Timeout(StmtId),
}

struct Machine {
    store: Store,
    steps: u64,
    options: ExecOptions,
    trace: Vec<TraceEntry>,
}

fn truth(v: bool) -> BigInt {
    if v {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

impl Machine {
    fn snapshot(&self) -> String {
        let mut s = String::from("{");
        for (i, (k, v)) in self.store.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "{k}={v}");
        }
        s.push('}');
        s
    }

    fn record(&mut self, stmt: StmtId, prefix: &str) {
        if self.options.tracing {
            let state = if prefix.is_empty() {
                self.snapshot()
            } else {
                format!("{prefix} {}", self.snapshot())
            };
            self.trace.push(TraceEntry { stmt, state });
        }
    }

    fn tick(&mut self, stmt: StmtId) -> Result<(), Halt> {
        if self.steps >= self.options.budget {
            return Err(Halt::Timeout(stmt));
        }
        self.steps += 1;
        Ok(())
    }

    fn block(&mut self, body: &[Stmt]) -> Result<(), Halt> {
        for s in body {
            self.stmt(s)?;
        }
        Ok(())
    }

    fn stmt(&mut self, s: &Stmt) -> Result<(), Halt> {
        if let StmtKind::Deleted = s.kind {
            return Ok(());
        }
        self.tick(s.id)?;
        match &s.kind {
            StmtKind::Assign { name, value } => {
                let v = self.eval(value).map_err(|e| Halt::Error(s.id, e))?;
                self.store.insert(name.clone(), v);
                self.record(s.id, "");
            }
            StmtKind::If {
                cond,
                then_body,
                else_body,
            } => {
                let c = !self.eval(cond).map_err(|e| Halt::Error(s.id, e))?.is_zero();
                self.record(s.id, if c { "cond=1" } else { "cond=0" });
                self.block(if c { then_body } else { else_body })?;
            }
            StmtKind::While { cond, body } => loop {
                let c = !self.eval(cond).map_err(|e| Halt::Error(s.id, e))?.is_zero();
                self.record(s.id, if c { "cond=1" } else { "cond=0" });
                if !c {
                    break;
                }
                self.block(body)?;
                self.tick(s.id)?;
            },
            StmtKind::Return { value } => {
                let v = self.eval(value).map_err(|e| Halt::Error(s.id, e))?;
                return Err(Halt::Return(s.id, v));
            }
            StmtKind::Deleted => unreachable!(),
        }
        Ok(())
    }

    fn eval(&self, e: &Expr) -> Result<BigInt, String> {
        Ok(match e {
            Expr::Int { value, .. } => value.clone(),
            Expr::Var { name, .. } => self
                .store
                .get(name)
                .cloned()
                .ok_or_else(|| format!("unbound variable `{name}`"))?,
            Expr::Unary { op, expr, .. } => {
                let v = self.eval(expr)?;
                match op {
                    UnOp::Neg => -v,
                    UnOp::Not => truth(v.is_zero()),
                }
            }
            Expr::Binary { op, lhs, rhs, .. } => {
                let l = self.eval(lhs)?;
                match op {
                    BinOp::And => {
                        return Ok(truth(!l.is_zero() && !self.eval(rhs)?.is_zero()));
                    }
                    BinOp::Or => {
                        return Ok(truth(!l.is_zero() || !self.eval(rhs)?.is_zero()));
                    }
                    _ => {}
                }
                let r = self.eval(rhs)?;
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div if r.is_zero() => return Err("division by zero".into()),
                    BinOp::Div => l / r,
                    BinOp::Rem if r.is_zero() => return Err("modulo by zero".into()),
                    BinOp::Rem => l % r,
                    BinOp::Lt => truth(l < r),
                    BinOp::Le => truth(l <= r),
                    BinOp::Gt => truth(l > r),
                    BinOp::Ge => truth(l >= r),
                    BinOp::Eq => truth(l == r),
                    BinOp::Ne => truth(l != r),
                    BinOp::And | BinOp::Or => unreachable!(),
                }
            }
        })
    }
}

/// Runs `program` with the given input bindings. Abnormal outcomes are
/// reported through the token's status, never as errors.
pub fn execute(
    program: &Program,
    inputs: &BTreeMap<String, BigInt>,
    options: ExecOptions,
) -> BehaviorToken {
    let mut m = Machine {
        store: inputs.clone(),
        steps: 0,
        options,
        trace: Vec::new(),
    };
    let halt = match m.block(&program.body) {
        Ok(()) => Halt::Error(0, "missing return".into()),
        Err(h) => h,
    };
    let (output, status) = match halt {
        Halt::Return(stmt, v) => {
            m.record(stmt, &format!("return={v}"));
            (v.to_string(), Status::Normal)
        }
        Halt::Error(stmt, msg) => {
            m.record(stmt, &format!("error={msg}"));
            (format!("error: {msg}"), Status::Error)
        }
        Halt::Timeout(stmt) => {
            m.record(stmt, "timeout");
            ("timeout".to_owned(), Status::Timeout)
        }
    };
    BehaviorToken {
        output,
        trace: options.tracing.then_some(m.trace),
        status,
    }
}
