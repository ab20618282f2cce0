//! A tiny deterministic imperative language used to produce behavior
//! matrices end to end.
//!
//! ```text
//! program := stmt*
//! stmt    := IDENT "=" expr ";"
//!          | "if" "(" expr ")" block ("else" block)?
//!          | "while" "(" expr ")" block
//!          | "return" expr ";"
//! block   := "{" stmt* "}"
//! ```
//!
//! Expressions use integer literals, variables, `+ - * / %`, comparisons
//! and `&& || !`. Statements are numbered from 1 in preorder; mutants keep
//! the numbering of the program they came from.

mod ast;
mod interp;
mod mutate;
mod parser;

use std::collections::BTreeMap;

use indexmap::IndexMap;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use ast::{BinOp, Expr, Program, Span, Stmt, StmtId, StmtKind, UnOp};
pub use interp::{execute, ExecOptions, DEFAULT_BUDGET};
pub use mutate::{mutate_all, MutantDescriptor, Operator};
pub use parser::parse;

use crate::diffcore::{BehaviorMatrix, BehaviorToken, ProgramId, Role, TestId, TestVector};
use crate::error::{Error, Result};

/// Row id of the spec projection in generated matrices.
pub const SPEC_ID: &str = "ps";
/// Row id of the original program in generated matrices.
pub const ORIGINAL_ID: &str = "po";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestCase {
    pub id: TestId,
    pub inputs: IndexMap<String, i64>,
}

impl TestCase {
    pub fn new(id: &str, inputs: &[(&str, i64)]) -> Self {
        TestCase {
            id: TestId::from(id),
            inputs: inputs.iter().map(|&(k, v)| (k.to_owned(), v)).collect(),
        }
    }

    fn bindings(&self) -> BTreeMap<String, BigInt> {
        self.inputs
            .iter()
            .map(|(k, &v)| (k.clone(), BigInt::from(v)))
            .collect()
    }
}

/// Expected output text per test: the spec projection.
pub type SpecOutputs = IndexMap<TestId, String>;

/// Parses a JSON test suite: `[{"id": "t1", "inputs": {"a": 1}}, ...]`.
pub fn tests_from_json(json: &str) -> Result<Vec<TestCase>> {
    let de = &mut serde_json::Deserializer::from_str(json);
    let tests: Vec<TestCase> =
        serde_path_to_error::deserialize(de).map_err(crate::error::from_path_error)?;
    TestVector::new(tests.iter().map(|t| t.id.clone()).collect())?;
    Ok(tests)
}

/// Parses a JSON spec file: `{"t1": "3", ...}`.
pub fn spec_from_json(json: &str) -> Result<SpecOutputs> {
    let de = &mut serde_json::Deserializer::from_str(json);
    serde_path_to_error::deserialize(de).map_err(crate::error::from_path_error)
}

/// Parses a descriptor list as written by `mutspace mutate`.
pub fn descriptors_from_json(json: &str) -> Result<Vec<MutantDescriptor>> {
    let de = &mut serde_json::Deserializer::from_str(json);
    serde_path_to_error::deserialize(de).map_err(crate::error::from_path_error)
}

/// Runs `program` on one test case.
pub fn execute_test(program: &Program, test: &TestCase, options: ExecOptions) -> BehaviorToken {
    execute(program, &test.bindings(), options)
}

/// Checks that every test binds all of the program's input variables.
pub fn check_inputs(program: &Program, tests: &[TestCase]) -> Result<()> {
    for (i, t) in tests.iter().enumerate() {
        if let Some(v) = program
            .input_variables()
            .into_iter()
            .find(|v| !t.inputs.contains_key(v))
        {
            return Err(Error::Schema {
                path: format!("/{i}/inputs"),
                message: format!("test {} does not bind input `{v}`", t.id),
            });
        }
    }
    Ok(())
}

/// Executes the original and every mutant on every test. Rows are the
/// spec projection `ps` (when `spec` is given), the original `po`, then the
/// mutants in the given order with origin `po`.
pub fn behavior_matrix(
    original: &Program,
    mutants: &[(MutantDescriptor, Program)],
    tests: &[TestCase],
    options: ExecOptions,
    spec: Option<&SpecOutputs>,
) -> Result<BehaviorMatrix> {
    let vector = TestVector::new(tests.iter().map(|t| t.id.clone()).collect())?;
    let mut builder = BehaviorMatrix::builder(vector);
    if let Some(spec) = spec {
        let tokens = tests
            .iter()
            .map(|t| {
                spec.get(&t.id)
                    .map(|o| BehaviorToken::output(o.clone()))
                    .ok_or_else(|| Error::Schema {
                        path: format!("/{}", t.id),
                        message: "spec has no expected output for this test".into(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        builder = builder.row(SPEC_ID, Role::Spec, None, tokens);
    }
    let run = |p: &Program| tests.iter().map(|t| execute_test(p, t, options)).collect();
    builder = builder.row(ORIGINAL_ID, Role::Original, None, run(original));
    for (d, m) in mutants {
        builder = builder.row(
            d.id.as_str(),
            Role::Mutant,
            Some(ProgramId::from(ORIGINAL_ID)),
            run(m),
        );
    }
    builder.build()
}

/// Pairs each mutant id with the id of the statement it mutates, in the
/// form expected by fault localization.
pub fn mutant_statements(descriptors: &[MutantDescriptor]) -> Vec<(ProgramId, Option<String>)> {
    descriptors
        .iter()
        .map(|d| {
            (
                ProgramId::from(d.id.as_str()),
                Some(d.statement.to_string()),
            )
        })
        .collect()
}
