//! Generators and brute-force oracles shared by the integration tests. The
//! oracles work on raw `Vec<Vec<bool>>` tables so they share no code with
//! the library under test.

#![allow(dead_code)]

use mutspace::{BehaviorMatrix, Role, TestVector};
use rand::Rng;

/// `table[test][mutant]`.
pub type Table = Vec<Vec<bool>>;

pub fn random_table(rng: &mut impl Rng, tests: usize, mutants: usize) -> Table {
    (0..tests)
        .map(|_| (0..mutants).map(|_| rng.gen_bool(0.5)).collect())
        .collect()
}

pub fn table_csv(table: &Table, mutants: usize) -> String {
    let mut s = String::from("test");
    for j in 1..=mutants {
        s.push_str(&format!(",m{j}"));
    }
    s.push('\n');
    for (i, row) in table.iter().enumerate() {
        s.push_str(&format!("t{}", i + 1));
        for &b in row {
            s.push_str(if b { ",1" } else { ",0" });
        }
        s.push('\n');
    }
    s
}

/// Brute-force dynamic subsumption straight from the definition: `x` is
/// killed by some test, and every test killing `x` kills `y`.
pub fn brute_subsumes(table: &Table, x: usize, y: usize) -> bool {
    let killed = table.iter().any(|row| row[x]);
    let implies = table.iter().all(|row| !row[x] || row[y]);
    x != y && killed && implies
}

/// A behavior matrix over `alphabet` with a spec row `ps`, an original `po`
/// and mutants `m1..`; `rows[0]` is the spec, `rows[1]` the original.
pub fn behavior_matrix(rows: &[Vec<u8>]) -> BehaviorMatrix {
    let n = rows[0].len();
    let ids: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    let mut b = BehaviorMatrix::builder(TestVector::of(&refs));
    for (k, row) in rows.iter().enumerate() {
        let outs: Vec<String> = row
            .iter()
            .map(|&c| ((b'a' + c) as char).to_string())
            .collect();
        let outs: Vec<&str> = outs.iter().map(String::as_str).collect();
        b = match k {
            0 => b.outputs("ps", Role::Spec, None, &outs),
            1 => b.outputs("po", Role::Original, None, &outs),
            _ => b.outputs(&format!("m{}", k - 1), Role::Mutant, Some("po"), &outs),
        };
    }
    b.build().unwrap()
}
