//! Behavior storage, test differentiators, d-vectors and mutation adequacy.
//!
//! A [`BehaviorMatrix`] holds one opaque [`BehaviorToken`] per
//! (program, test) pair. A [`Differentiator`] turns two tokens into a single
//! bit: `1` when the programs behave differently on that test. Everything
//! else in the crate reads behaviors only through a differentiator.

use std::borrow::Borrow;
use std::collections::HashSet;
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::bits::BitVector;
use crate::error::{Error, Result};

macro_rules! string_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                $name(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                $name(s)
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl PartialEq<str> for $name {
            fn eq(&self, other: &str) -> bool {
                self.0 == other
            }
        }

        impl PartialEq<&str> for $name {
            fn eq(&self, other: &&str) -> bool {
                self.0 == *other
            }
        }
    };
}

string_id!(
    /// Identifier of a test case.
    TestId
);
string_id!(
    /// Identifier of a program row (spec projection, original or mutant).
    ProgramId
);

/// An ordered list of unique test identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<TestId>", into = "Vec<TestId>")]
pub struct TestVector(Vec<TestId>);

impl TestVector {
    pub fn new(tests: Vec<TestId>) -> Result<Self> {
        let mut seen = HashSet::new();
        for t in &tests {
            if !seen.insert(t.as_str()) {
                return Err(Error::InvalidArgument(format!("duplicate test id `{t}`")));
            }
        }
        Ok(TestVector(tests))
    }

    /// Convenience constructor for literal ids; panics on duplicates.
    pub fn of(ids: &[&str]) -> Self {
        TestVector::new(ids.iter().map(|&s| TestId::from(s)).collect()).expect("duplicate test id")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TestId> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[TestId] {
        &self.0
    }

    pub fn contains(&self, id: &str) -> bool {
        self.0.iter().any(|t| t.as_str() == id)
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.0.iter().position(|t| t.as_str() == id)
    }

    /// The tests at the given indices, in index order.
    pub fn select(&self, indices: &[usize]) -> TestVector {
        TestVector(indices.iter().map(|&i| self.0[i].clone()).collect())
    }

    /// The first `k` tests.
    pub fn prefix(&self, k: usize) -> TestVector {
        TestVector(self.0[..k.min(self.len())].to_vec())
    }
}

impl TryFrom<Vec<TestId>> for TestVector {
    type Error = Error;

    fn try_from(v: Vec<TestId>) -> Result<Self> {
        TestVector::new(v)
    }
}

impl From<TestVector> for Vec<TestId> {
    fn from(v: TestVector) -> Self {
        v.0
    }
}

impl<'a> IntoIterator for &'a TestVector {
    type Item = &'a TestId;
    type IntoIter = std::slice::Iter<'a, TestId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Normal,
    Error,
    Timeout,
}

/// One executed statement and the state snapshot recorded after it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceEntry {
    pub stmt: u32,
    pub state: String,
}

/// The observable behavior of one program on one test.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BehaviorToken {
    pub output: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceEntry>>,
    pub status: Status,
}

impl BehaviorToken {
    /// A normal-status token with only an output.
    pub fn output(output: impl Into<String>) -> Self {
        BehaviorToken {
            output: output.into(),
            trace: None,
            status: Status::Normal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Spec,
    Original,
    Mutant,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Spec => "spec",
            Role::Original => "original",
            Role::Mutant => "mutant",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProgramEntry {
    pub id: ProgramId,
    pub role: Role,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<ProgramId>,
}

type Cells = IndexMap<ProgramId, IndexMap<TestId, BehaviorToken>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    tests: Vec<TestId>,
    programs: Vec<ProgramEntry>,
    cells: Cells,
}

/// Behavior tokens indexed by (program, test). Always total.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BehaviorMatrix {
    tests: TestVector,
    programs: Vec<ProgramEntry>,
    cells: Cells,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

impl BehaviorMatrix {
    /// Assembles a matrix, checking totality and role constraints.
    pub fn new(tests: TestVector, programs: Vec<ProgramEntry>, cells: Cells) -> Result<Self> {
        let m = BehaviorMatrix {
            tests,
            programs,
            cells,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn builder(tests: TestVector) -> BehaviorMatrixBuilder {
        BehaviorMatrixBuilder {
            tests,
            programs: Vec::new(),
            cells: IndexMap::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let mut ids = HashSet::new();
        let mut spec = 0;
        let mut original = 0;
        for (i, p) in self.programs.iter().enumerate() {
            if !ids.insert(p.id.as_str()) {
                return Err(schema(
                    format!("/programs/{i}/id"),
                    format!("duplicate program id `{}`", p.id),
                ));
            }
            match p.role {
                Role::Spec => spec += 1,
                Role::Original => original += 1,
                Role::Mutant => {}
            }
            if spec > 1 {
                return Err(schema(
                    format!("/programs/{i}/role"),
                    "at most one program may have role `spec`",
                ));
            }
            if original > 1 {
                return Err(schema(
                    format!("/programs/{i}/role"),
                    "at most one program may have role `original`",
                ));
            }
        }
        for (i, p) in self.programs.iter().enumerate() {
            if let Some(origin) = &p.origin {
                if !ids.contains(origin.as_str()) {
                    return Err(schema(
                        format!("/programs/{i}/origin"),
                        format!("origin `{origin}` is not a program"),
                    ));
                }
            }
        }
        for p in self.cells.keys() {
            if !ids.contains(p.as_str()) {
                return Err(schema(
                    format!("/cells/{p}"),
                    format!("`{p}` is not listed in programs"),
                ));
            }
        }
        for p in &self.programs {
            let row = self
                .cells
                .get(&p.id)
                .ok_or_else(|| schema(format!("/cells/{}", p.id), "missing row"))?;
            for t in &self.tests {
                if !row.contains_key(t) {
                    return Err(schema(format!("/cells/{}/{t}", p.id), "missing cell"));
                }
            }
            for t in row.keys() {
                if !self.tests.contains(t.as_str()) {
                    return Err(schema(
                        format!("/cells/{}/{t}", p.id),
                        format!("`{t}` is not listed in tests"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Parses the JSON interchange format. Schema violations carry a
    /// JSON-pointer path to the offending field.
    pub fn from_json(json: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(json);
        let raw: RawMatrix =
            serde_path_to_error::deserialize(de).map_err(crate::error::from_path_error)?;
        let tests = TestVector::new(raw.tests).map_err(|e| schema("/tests", e.to_string()))?;
        BehaviorMatrix::new(tests, raw.programs, raw.cells)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("behavior matrix serializes")
    }

    pub fn tests(&self) -> &TestVector {
        &self.tests
    }

    pub fn programs(&self) -> &[ProgramEntry] {
        &self.programs
    }

    pub fn contains_program(&self, id: &str) -> bool {
        self.cells.contains_key(id)
    }

    pub fn program(&self, id: &str) -> Result<&ProgramEntry> {
        self.programs
            .iter()
            .find(|p| p.id.as_str() == id)
            .ok_or_else(|| Error::UnknownProgram(id.to_owned()))
    }

    /// The unique program carrying `role` (spec or original).
    pub fn with_role(&self, role: Role) -> Option<&ProgramId> {
        self.programs.iter().find(|p| p.role == role).map(|p| &p.id)
    }

    /// Ids of all mutant rows in row order.
    pub fn mutants(&self) -> Vec<ProgramId> {
        self.programs
            .iter()
            .filter(|p| p.role == Role::Mutant)
            .map(|p| p.id.clone())
            .collect()
    }

    pub fn token(&self, program: &str, test: &str) -> Result<&BehaviorToken> {
        let row = self
            .cells
            .get(program)
            .ok_or_else(|| Error::UnknownProgram(program.to_owned()))?;
        row.get(test)
            .ok_or_else(|| Error::UnknownTest(test.to_owned()))
    }
}

impl<'de> Deserialize<'de> for BehaviorMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMatrix::deserialize(d)?;
        let tests = TestVector::new(raw.tests).map_err(serde::de::Error::custom)?;
        BehaviorMatrix::new(tests, raw.programs, raw.cells).map_err(serde::de::Error::custom)
    }
}

pub struct BehaviorMatrixBuilder {
    tests: TestVector,
    programs: Vec<ProgramEntry>,
    cells: Cells,
}

impl BehaviorMatrixBuilder {
    /// Adds a row; `tokens` are given in test-vector order.
    pub fn row(
        mut self,
        id: impl Into<ProgramId>,
        role: Role,
        origin: Option<ProgramId>,
        tokens: Vec<BehaviorToken>,
    ) -> Self {
        let id = id.into();
        let row = self.tests.iter().cloned().zip(tokens).collect();
        self.cells.insert(id.clone(), row);
        self.programs.push(ProgramEntry { id, role, origin });
        self
    }

    /// Adds a row of plain outputs.
    pub fn outputs(self, id: &str, role: Role, origin: Option<&str>, outputs: &[&str]) -> Self {
        let tokens = outputs.iter().map(|&o| BehaviorToken::output(o)).collect();
        self.row(id, role, origin.map(ProgramId::from), tokens)
    }

    pub fn build(self) -> Result<BehaviorMatrix> {
        BehaviorMatrix::new(self.tests, self.programs, self.cells)
    }
}

/// How two behavior tokens are compared.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "policy")]
pub enum Policy {
    /// Equality of the full token (output, trace and status).
    Exact,
    /// Equality of outputs only; strong mutation.
    Output,
    /// Equality of execution traces; weak mutation. Falls back to output
    /// equality when either token carries no trace.
    Trace,
    /// Outputs that both parse as finite decimals are equal when within
    /// `epsilon`; anything else falls back to exact output text.
    NumericTolerance { epsilon: f64 },
}

impl Policy {
    /// Parses a policy name as accepted on the command line.
    pub fn parse(name: &str, epsilon: Option<f64>) -> Result<Self> {
        match name {
            "exact" => Ok(Policy::Exact),
            "output" | "strong" => Ok(Policy::Output),
            "trace" | "weak" => Ok(Policy::Trace),
            "numeric" | "numeric-tolerance" => {
                let epsilon = epsilon.unwrap_or(0.0);
                if !(epsilon >= 0.0 && epsilon.is_finite()) {
                    return Err(Error::InvalidArgument(format!(
                        "epsilon must be a nonnegative real, got {epsilon}"
                    )));
                }
                Ok(Policy::NumericTolerance { epsilon })
            }
            other => Err(Error::UnknownPolicy(other.to_owned())),
        }
    }

    /// True when the tokens count as different.
    pub fn differs(&self, a: &BehaviorToken, b: &BehaviorToken) -> bool {
        match *self {
            Policy::Exact => a != b,
            Policy::Output => a.output != b.output,
            Policy::Trace => match (&a.trace, &b.trace) {
                (Some(ta), Some(tb)) => ta != tb,
                _ => a.output != b.output,
            },
            Policy::NumericTolerance { epsilon } => {
                match (parse_decimal(&a.output), parse_decimal(&b.output)) {
                    (Some(x), Some(y)) => (x - y).abs() > epsilon,
                    _ => a.output != b.output,
                }
            }
        }
    }
}

fn parse_decimal(s: &str) -> Option<f64> {
    let s = s.trim();
    // Rust also accepts "inf"/"nan"; only plain decimals count here.
    if !s
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'))
    {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// A named test differentiator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Differentiator {
    pub id: String,
    pub policy: Policy,
}

impl Differentiator {
    pub fn new(id: impl Into<String>, policy: Policy) -> Self {
        Differentiator {
            id: id.into(),
            policy,
        }
    }

    pub fn exact() -> Self {
        Differentiator::new("exact", Policy::Exact)
    }

    pub fn strong() -> Self {
        Differentiator::new("output", Policy::Output)
    }

    pub fn weak() -> Self {
        Differentiator::new("trace", Policy::Trace)
    }

    pub fn numeric(epsilon: f64) -> Self {
        Differentiator::new(
            format!("numeric({epsilon})"),
            Policy::NumericTolerance { epsilon },
        )
    }

    /// Builds a differentiator from a policy, naming it after the policy.
    pub fn from_policy(policy: Policy) -> Self {
        match policy {
            Policy::Exact => Self::exact(),
            Policy::Output => Self::strong(),
            Policy::Trace => Self::weak(),
            Policy::NumericTolerance { epsilon } => Self::numeric(epsilon),
        }
    }
}

/// A d-vector: one differentiator bit per test of `tests`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DVector {
    pub bits: BitVector,
    pub tests: TestVector,
    pub left: ProgramId,
    pub right: ProgramId,
    pub differentiator: String,
}

impl DVector {
    pub fn norm(&self) -> usize {
        self.bits.norm()
    }

    /// Tests whose bit is set.
    pub fn set_tests(&self) -> Vec<TestId> {
        self.tests
            .iter()
            .zip(self.bits.iter())
            .filter(|&(_, b)| b)
            .map(|(t, _)| t.clone())
            .collect()
    }
}

/// `1` iff `px` and `py` behave differently on `test` under `d`.
pub fn differentiate(
    d: &Differentiator,
    test: &str,
    px: &str,
    py: &str,
    bm: &BehaviorMatrix,
) -> Result<bool> {
    let a = bm.token(px, test)?;
    let b = bm.token(py, test)?;
    Ok(d.policy.differs(a, b))
}

pub fn d_vector(
    d: &Differentiator,
    tv: &TestVector,
    px: &str,
    py: &str,
    bm: &BehaviorMatrix,
) -> Result<DVector> {
    // Resolve the programs first so an unknown program is reported even for
    // an empty test vector.
    bm.program(px)?;
    bm.program(py)?;
    let bits = tv
        .iter()
        .map(|t| differentiate(d, t.as_str(), px, py, bm))
        .collect::<Result<BitVector>>()?;
    Ok(DVector {
        bits,
        tests: tv.clone(),
        left: px.into(),
        right: py.into(),
        differentiator: d.id.clone(),
    })
}

pub fn manhattan_norm(v: &DVector) -> usize {
    v.norm()
}

/// A test oracle recovered from a differentiator and a spec projection:
/// a program passes a test iff it is not different from the spec there.
#[derive(Debug, Clone)]
pub struct DerivedOracle<'a> {
    d: &'a Differentiator,
    spec: ProgramId,
    bm: &'a BehaviorMatrix,
}

impl DerivedOracle<'_> {
    pub fn passes(&self, test: &str, program: &str) -> Result<bool> {
        Ok(!differentiate(
            self.d,
            test,
            program,
            self.spec.as_str(),
            self.bm,
        )?)
    }
}

pub fn derived_oracle<'a>(
    d: &'a Differentiator,
    spec: &str,
    bm: &'a BehaviorMatrix,
) -> Result<DerivedOracle<'a>> {
    bm.program(spec)?;
    Ok(DerivedOracle {
        d,
        spec: spec.into(),
        bm,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdequacyReport {
    pub adequate: bool,
    pub live: Vec<ProgramId>,
    /// Earliest killing test (by test-vector order) of each killed mutant.
    pub killers: IndexMap<ProgramId, TestId>,
}

/// Checks that every mutant is killed by at least one test of `tv`.
/// An empty mutant list is vacuously adequate.
pub fn mutation_adequacy(
    d: &Differentiator,
    tv: &TestVector,
    original: &str,
    mutants: &[ProgramId],
    bm: &BehaviorMatrix,
) -> Result<AdequacyReport> {
    bm.program(original)?;
    let mut live = Vec::new();
    let mut killers = IndexMap::new();
    for m in mutants {
        bm.program(m.as_str())?;
        let mut killer = None;
        for t in tv {
            if differentiate(d, t.as_str(), original, m.as_str(), bm)? {
                killer = Some(t.clone());
                break;
            }
        }
        match killer {
            Some(t) => {
                killers.insert(m.clone(), t);
            }
            None => live.push(m.clone()),
        }
    }
    Ok(AdequacyReport {
        adequate: live.is_empty(),
        live,
        killers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn different_tokens_differ_under_exact() {
        let bm = examples::running_example();
        let d = Differentiator::exact();
        assert!(differentiate(&d, "t2", "ps", "po", &bm).unwrap());
        assert!(!differentiate(&d, "t1", "ps", "po", &bm).unwrap());
    }

    #[test]
    fn same_program_never_differs() {
        let bm = examples::running_example();
        for d in [
            Differentiator::exact(),
            Differentiator::strong(),
            Differentiator::weak(),
            Differentiator::numeric(0.5),
        ] {
            for t in bm.tests() {
                assert!(!differentiate(&d, t.as_str(), "m", "m", &bm).unwrap());
            }
        }
    }

    #[test]
    fn numeric_tolerance_absorbs_rounding() {
        let d = Differentiator::numeric(0.001);
        let a = BehaviorToken::output("0.3333");
        let b = BehaviorToken::output("0.333333");
        assert!(!d.policy.differs(&a, &b));
        assert!(Differentiator::exact().policy.differs(&a, &b));
        // Non-numeric outputs fall back to text equality.
        assert!(d
            .policy
            .differs(&BehaviorToken::output("x"), &BehaviorToken::output("y")));
        assert!(d.policy.differs(
            &BehaviorToken::output("inf"),
            &BehaviorToken::output("1e400")
        ));
        assert!(!d
            .policy
            .differs(&BehaviorToken::output("nan"), &BehaviorToken::output("nan")));
    }

    #[test]
    fn trace_policy_falls_back_to_output_without_traces() {
        let mut a = BehaviorToken::output("1");
        let b = BehaviorToken::output("1");
        a.trace = Some(vec![TraceEntry {
            stmt: 1,
            state: "{}".into(),
        }]);
        assert!(!Policy::Trace.differs(&a, &b));
        assert!(Policy::Exact.differs(&a, &b));
    }

    #[test]
    fn lookup_errors_name_the_missing_id() {
        let bm = examples::running_example();
        let d = Differentiator::exact();
        match differentiate(&d, "t9", "ps", "po", &bm) {
            Err(Error::UnknownTest(t)) => assert_eq!(t, "t9"),
            other => panic!("unexpected {other:?}"),
        }
        match differentiate(&d, "t1", "ps", "nope", &bm) {
            Err(Error::UnknownProgram(p)) => assert_eq!(p, "nope"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            d_vector(&d, &TestVector::default(), "zz", "ps", &bm),
            Err(Error::UnknownProgram(_))
        ));
    }

    #[test]
    fn running_example_d_vectors() {
        let bm = examples::running_example();
        let d = Differentiator::exact();
        let all = bm.tests().clone();
        let so = d_vector(&d, &all, "ps", "po", &bm).unwrap();
        assert_eq!(so.bits.to_string(), "0111");
        assert_eq!(manhattan_norm(&so), 3);
        let om = d_vector(&d, &all, "po", "m", &bm).unwrap();
        assert_eq!(om.bits.to_string(), "0011");
        assert_eq!(manhattan_norm(&om), 2);
        let empty = d_vector(&d, &TestVector::default(), "po", "m", &bm).unwrap();
        assert!(empty.bits.is_empty());
        assert_eq!(manhattan_norm(&empty), 0);
    }

    #[test]
    fn oracle_from_differentiator() {
        let bm = examples::running_example();
        let d = Differentiator::exact();
        let o = derived_oracle(&d, "ps", &bm).unwrap();
        assert!(o.passes("t1", "po").unwrap());
        assert!(!o.passes("t2", "po").unwrap());
        for t in bm.tests() {
            assert!(o.passes(t.as_str(), "ps").unwrap());
        }
        assert!(derived_oracle(&d, "missing", &bm).is_err());
    }

    #[test]
    fn adequacy_on_sample_kill_table() {
        let bm = examples::sample_kill_table_behaviors();
        let d = Differentiator::exact();
        let mutants = bm.mutants();
        let full = mutation_adequacy(&d, bm.tests(), "po", &mutants, &bm).unwrap();
        assert!(full.adequate);
        assert!(full.live.is_empty());
        assert_eq!(full.killers["m1"], "t1");
        assert_eq!(full.killers["m2"], "t2");
        assert_eq!(full.killers["m3"], "t1");

        let only_t2 = mutation_adequacy(&d, &TestVector::of(&["t2"]), "po", &mutants, &bm).unwrap();
        assert!(!only_t2.adequate);
        assert_eq!(
            only_t2.live,
            vec![ProgramId::from("m1"), ProgramId::from("m3")]
        );

        let none = mutation_adequacy(&d, &TestVector::default(), "po", &mutants[..1], &bm).unwrap();
        assert!(!none.adequate);
        assert_eq!(none.live, vec![ProgramId::from("m1")]);

        let vacuous = mutation_adequacy(&d, bm.tests(), "po", &[], &bm).unwrap();
        assert!(vacuous.adequate && vacuous.killers.is_empty());
    }

    #[test]
    fn schema_errors_point_at_the_field() {
        let bad_status = r#"{"tests":["t1"],"programs":[{"id":"a","role":"original"}],
            "cells":{"a":{"t1":{"output":"1","status":"weird"}}}}"#;
        match BehaviorMatrix::from_json(bad_status) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "/cells/a/t1/status"),
            other => panic!("unexpected {other:?}"),
        }
        let missing_cell = r#"{"tests":["t1","t2"],"programs":[{"id":"a","role":"original"}],
            "cells":{"a":{"t1":{"output":"1","status":"normal"}}}}"#;
        match BehaviorMatrix::from_json(missing_cell) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "/cells/a/t2"),
            other => panic!("unexpected {other:?}"),
        }
        let two_originals = r#"{"tests":[],"programs":[{"id":"a","role":"original"},
            {"id":"b","role":"original"}],"cells":{"a":{},"b":{}}}"#;
        match BehaviorMatrix::from_json(two_originals) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "/programs/1/role"),
            other => panic!("unexpected {other:?}"),
        }
        let dup_tests = r#"{"tests":["t1","t1"],"programs":[],"cells":{}}"#;
        assert!(matches!(
            BehaviorMatrix::from_json(dup_tests),
            Err(Error::Schema { .. })
        ));
    }

    #[test]
    fn json_roundtrip_is_bit_exact() {
        let bm = examples::running_example();
        let json = bm.to_json();
        let back = BehaviorMatrix::from_json(&json).unwrap();
        assert_eq!(back, bm);
        assert_eq!(back.to_json(), json);
    }
}
