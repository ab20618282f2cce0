//! Small worked instances used by the demo command, tests and docs.

use crate::diffcore::{BehaviorMatrix, Role, TestVector};
use crate::mutlang::{execute_test, parse, ExecOptions, SpecOutputs, StmtId, TestCase};
use crate::subsumption::KillMatrix;

/// Four tests, a spec projection `ps`, an original `po` and one mutant `m`,
/// with behaviors abstracted to Greek letters:
///
/// ```text
///        t1 t2 t3 t4
///   ps   α  α  α  α
///   po   α  β  β  β
///   m    α  β  γ  α
/// ```
pub fn running_example() -> BehaviorMatrix {
    BehaviorMatrix::builder(TestVector::of(&["t1", "t2", "t3", "t4"]))
        .outputs("ps", Role::Spec, None, &["α", "α", "α", "α"])
        .outputs("po", Role::Original, None, &["α", "β", "β", "β"])
        .outputs("m", Role::Mutant, Some("po"), &["α", "β", "γ", "α"])
        .build()
        .expect("running example is well formed")
}

/// The three-test, four-mutant kill table.
pub const SAMPLE_KILL_TABLE_CSV: &str = "test,m1,m2,m3,m4\nt1,1,0,1,1\nt2,0,1,0,1\nt3,0,1,1,1\n";

pub fn sample_kill_table() -> KillMatrix {
    KillMatrix::from_csv(SAMPLE_KILL_TABLE_CSV).expect("table is well formed")
}

/// A behavior matrix whose strong-mutation kill matrix is [`sample_kill_table`].
pub fn sample_kill_table_behaviors() -> BehaviorMatrix {
    sample_kill_table().to_behavior_matrix("po")
}

/// A 20-statement program with one seeded fault: statement 16 subtracts
/// where [`SEEDED_FAULT_FIXED_SOURCE`] adds. Swapping that operator back is
/// one of the AOR mutants, so some mutant reproduces the spec everywhere.
pub const SEEDED_FAULT_SOURCE: &str = "\
s = 0;
i = 0;
while (i < n) {
  s = s + a;
  i = i + 1;
}
p = s * b;
if (a > b) {
  d = a - b;
} else {
  d = b - a;
}
q = d % 7;
r = p + q;
k = 0;
if (r > 100 && n != 0) {
  k = r / n;
} else {
  k = r;
}
m = k - d;
t = m * 2;
u = t + 1;
v = u - i;
return v;
";

/// The intended program the spec outputs come from.
pub const SEEDED_FAULT_FIXED_SOURCE: &str = "\
s = 0;
i = 0;
while (i < n) {
  s = s + a;
  i = i + 1;
}
p = s * b;
if (a > b) {
  d = a - b;
} else {
  d = b - a;
}
q = d % 7;
r = p + q;
k = 0;
if (r > 100 && n != 0) {
  k = r / n;
} else {
  k = r;
}
m = k + d;
t = m * 2;
u = t + 1;
v = u - i;
return v;
";

/// Statement id of the seeded fault.
pub const SEEDED_FAULT_STATEMENT: StmtId = 16;

/// Inputs `(id, a, b, n)`. Tests with `a == b` pass on the faulty program.
pub const SEEDED_FAULT_INPUTS: [(&str, i64, i64, i64); 8] = [
    ("t1", 3, 3, 2),
    ("t2", 5, 2, 3),
    ("t3", 2, 9, 0),
    ("t4", 7, 7, 5),
    ("t5", 10, 1, 4),
    ("t6", 4, 6, 1),
    ("t7", 0, 0, 0),
    ("t8", 12, 5, 10),
];

pub fn seeded_fault_tests() -> Vec<TestCase> {
    SEEDED_FAULT_INPUTS
        .iter()
        .map(|&(id, a, b, n)| TestCase::new(id, &[("a", a), ("b", b), ("n", n)]))
        .collect()
}

/// Expected outputs, obtained by running the fixed program.
pub fn seeded_fault_spec() -> SpecOutputs {
    let fixed = parse(SEEDED_FAULT_FIXED_SOURCE).expect("fixture parses");
    seeded_fault_tests()
        .iter()
        .map(|t| {
            let out = execute_test(&fixed, t, ExecOptions::default()).output;
            (t.id.clone(), out)
        })
        .collect()
}
