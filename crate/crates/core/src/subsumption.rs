//! Kill matrices, dynamic mutant subsumption and minimal mutant sets.
//!
//! `mx` dynamically subsumes `my` (with respect to a test set) when `mx` is
//! killed by at least one test and every test that kills `mx` also kills
//! `my`. Mutants with identical kill columns subsume each other and are
//! grouped into one class of the dynamic mutant subsumption graph (DMSG);
//! never-killed mutants are kept out of the graph and reported as live.

use std::fmt::Write as _;

use indexmap::IndexMap;
use num_bigint::BigUint;
use serde::Serialize;

use crate::bits::BitVector;
use crate::diffcore::{BehaviorMatrix, BehaviorToken, ProgramId, Role, TestId, TestVector};
use crate::error::{Error, Result};
use crate::lattice::{deviance, deviant_or_equal, dot_escape};
use crate::progspace::ProgramSpace;

/// `rows[i]` holds the kill bits of test `i` across all mutant columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KillMatrix {
    tests: TestVector,
    mutants: Vec<ProgramId>,
    rows: Vec<BitVector>,
}

fn csv_error(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

impl KillMatrix {
    pub fn new(tests: TestVector, mutants: Vec<ProgramId>, rows: Vec<BitVector>) -> Result<Self> {
        if rows.len() != tests.len() {
            return Err(Error::DimensionMismatch {
                expected: tests.len(),
                found: rows.len(),
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != mutants.len()) {
            return Err(Error::DimensionMismatch {
                expected: mutants.len(),
                found: bad.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = mutants.iter().find(|m| !seen.insert(m.as_str())) {
            return Err(Error::InvalidArgument(format!(
                "duplicate mutant id `{dup}`"
            )));
        }
        Ok(KillMatrix {
            tests,
            mutants,
            rows,
        })
    }

    /// Builds a kill matrix from columns (one bit vector per mutant).
    pub fn from_columns(
        tests: TestVector,
        mutants: Vec<ProgramId>,
        columns: &[BitVector],
    ) -> Result<Self> {
        if columns.len() != mutants.len() {
            return Err(Error::DimensionMismatch {
                expected: mutants.len(),
                found: columns.len(),
            });
        }
        let rows = (0..tests.len())
            .map(|i| columns.iter().map(|c| c.get(i).unwrap_or(false)).collect())
            .collect();
        if let Some(bad) = columns.iter().find(|c| c.len() != tests.len()) {
            return Err(Error::DimensionMismatch {
                expected: tests.len(),
                found: bad.len(),
            });
        }
        KillMatrix::new(tests, mutants, rows)
    }

    /// Kill bits `d(t_i, p_o, m_j)` read from a program space whose origin
    /// is the original program.
    pub fn from_space(space: &ProgramSpace<'_>, mutants: &[ProgramId]) -> Result<Self> {
        let origin = space.matrix().program(space.origin().as_str())?;
        if origin.role != Role::Original {
            return Err(Error::WrongRole {
                program: origin.id.to_string(),
                expected: "original",
            });
        }
        let columns = mutants
            .iter()
            .map(|m| space.position(m.as_str()).map(|p| p.bits))
            .collect::<Result<Vec<_>>>()?;
        KillMatrix::from_columns(space.tests().clone(), mutants.to_vec(), &columns)
    }

    /// Parses `test,m1,m2,...` CSV with one 0/1 row per test.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| csv_error("/header", e.to_string()))?
            .clone();
        if headers.get(0) != Some("test") {
            return Err(csv_error("/header/0", "first column must be `test`"));
        }
        let mutants: Vec<ProgramId> = headers.iter().skip(1).map(ProgramId::from).collect();
        let mut tests = Vec::new();
        let mut rows = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| csv_error(format!("/rows/{i}"), e.to_string()))?;
            if record.len() != headers.len() {
                return Err(csv_error(
                    format!("/rows/{i}"),
                    format!("expected {} fields, found {}", headers.len(), record.len()),
                ));
            }
            tests.push(TestId::from(&record[0]));
            let row = record
                .iter()
                .skip(1)
                .enumerate()
                .map(|(j, cell)| match cell {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    other => Err(csv_error(
                        format!("/rows/{i}/{}", headers[j + 1].to_owned()),
                        format!("expected 0 or 1, found `{other}`"),
                    )),
                })
                .collect::<Result<BitVector>>()?;
            rows.push(row);
        }
        let tests = TestVector::new(tests).map_err(|e| csv_error("/rows", e.to_string()))?;
        KillMatrix::new(tests, mutants, rows).map_err(|e| csv_error("/header", e.to_string()))
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["test".to_owned()];
        header.extend(self.mutants.iter().map(ToString::to_string));
        w.write_record(&header).expect("in-memory write");
        for (t, row) in self.tests.iter().zip(&self.rows) {
            let mut rec = vec![t.to_string()];
            rec.extend(row.iter().map(|b| if b { "1" } else { "0" }.to_owned()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    /// A behavior matrix whose strong-mutation kill matrix is `self`: the
    /// original outputs `ok` everywhere and a killed mutant outputs its own
    /// id, so distinct killed mutants also differ from each other.
    pub fn to_behavior_matrix(&self, original: &str) -> BehaviorMatrix {
        let mut b = BehaviorMatrix::builder(self.tests.clone()).row(
            original,
            Role::Original,
            None,
            vec![BehaviorToken::output("ok"); self.tests.len()],
        );
        for (j, m) in self.mutants.iter().enumerate() {
            let tokens = self
                .rows
                .iter()
                .map(|r| {
                    BehaviorToken::output(if r.get(j) == Some(true) {
                        m.as_str()
                    } else {
                        "ok"
                    })
                })
                .collect();
            b = b.row(m.clone(), Role::Mutant, Some(original.into()), tokens);
        }
        b.build().expect("synthesized matrix is total")
    }

    pub fn tests(&self) -> &TestVector {
        &self.tests
    }

    pub fn mutants(&self) -> &[ProgramId] {
        &self.mutants
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, test: usize, mutant: usize) -> bool {
        self.rows[test].get(mutant).unwrap_or(false)
    }

    pub fn column_index(&self, mutant: &str) -> Result<usize> {
        self.mutants
            .iter()
            .position(|m| m.as_str() == mutant)
            .ok_or_else(|| Error::UnknownMutant(mutant.to_owned()))
    }

    pub fn column(&self, j: usize) -> BitVector {
        self.rows
            .iter()
            .map(|r| r.get(j).unwrap_or(false))
            .collect()
    }

    pub fn columns(&self) -> Vec<BitVector> {
        (0..self.mutants.len()).map(|j| self.column(j)).collect()
    }

    /// Column-index form of [`dynamically_subsumes`].
    pub fn subsumes_at(&self, x: usize, y: usize) -> bool {
        if x == y {
            return false;
        }
        let mut killed = false;
        for row in &self.rows {
            if row.get(x) == Some(true) {
                killed = true;
                if row.get(y) != Some(true) {
                    return false;
                }
            }
        }
        killed
    }

    /// Every ordered pair of distinct mutants in the subsumption relation,
    /// in column order.
    pub fn subsumption_pairs(&self) -> Vec<(ProgramId, ProgramId)> {
        let n = self.mutants.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.subsumes_at(x, y) {
                    out.push((self.mutants[x].clone(), self.mutants[y].clone()));
                }
            }
        }
        out
    }
}

/// True iff `mx` is killed at least once and `my` is killed whenever `mx`
/// is. A mutant never subsumes itself.
pub fn dynamically_subsumes(km: &KillMatrix, mx: &str, my: &str) -> Result<bool> {
    let x = km.column_index(mx)?;
    let y = km.column_index(my)?;
    Ok(km.subsumes_at(x, y))
}

/// Mutants sharing one nonzero kill column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutantClass {
    pub members: Vec<ProgramId>,
    pub column: BitVector,
}

impl MutantClass {
    pub fn representative(&self) -> &ProgramId {
        &self.members[0]
    }
}

/// Dynamic mutant subsumption graph over classes of killed mutants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dmsg {
    pub classes: Vec<MutantClass>,
    /// Transitive reduction, as class-index pairs (subsumer, subsumed).
    pub edges: Vec<(usize, usize)>,
    /// Full strict subsumption between classes.
    pub closure: Vec<(usize, usize)>,
    pub live: Vec<ProgramId>,
}

pub fn build_dmsg(km: &KillMatrix) -> Dmsg {
    let mut groups: IndexMap<BitVector, Vec<ProgramId>> = IndexMap::new();
    let mut live = Vec::new();
    for (j, m) in km.mutants().iter().enumerate() {
        let col = km.column(j);
        if col.is_zero() {
            live.push(m.clone());
        } else {
            groups.entry(col).or_default().push(m.clone());
        }
    }
    let classes: Vec<MutantClass> = groups
        .into_iter()
        .map(|(column, members)| MutantClass { members, column })
        .collect();

    // Distinct nonzero columns: subsumption between classes is strict
    // column inclusion.
    let k = classes.len();
    let below = |x: usize, y: usize| x != y && classes[x].column.is_subset_of(&classes[y].column);
    let mut closure = Vec::new();
    for x in 0..k {
        for y in 0..k {
            if below(x, y) {
                closure.push((x, y));
            }
        }
    }
    let edges = closure
        .iter()
        .copied()
        .filter(|&(x, y)| !(0..k).any(|z| below(x, z) && below(z, y)))
        .collect();
    Dmsg {
        classes,
        edges,
        closure,
        live,
    }
}

impl Dmsg {
    /// Classes with no incoming edge.
    pub fn roots(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| !self.closure.iter().any(|&(_, y)| y == c))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph dmsg {\n  node [shape=box];\n");
        for (i, c) in self.classes.iter().enumerate() {
            let names: Vec<&str> = c.members.iter().map(ProgramId::as_str).collect();
            let _ = writeln!(
                s,
                "  c{i} [label=\"{}\\n{}\"];",
                dot_escape(&names.join(", ")),
                c.column
            );
        }
        for &(x, y) in &self.edges {
            let _ = writeln!(s, "  c{x} -> c{y};");
        }
        if !self.live.is_empty() {
            let names: Vec<&str> = self.live.iter().map(ProgramId::as_str).collect();
            let _ = writeln!(
                s,
                "  live [label=\"live: {}\", shape=note];",
                dot_escape(&names.join(", "))
            );
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MinimalSetResult {
    pub minimal: Vec<ProgramId>,
    pub roots: Vec<Vec<ProgramId>>,
    pub live: Vec<ProgramId>,
    /// `|minimal| / |killed mutants|`; 0 when nothing was killed.
    pub reduction_ratio: f64,
}

impl MinimalSetResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("minimal set serializes")
    }
}

/// One representative (the first column) per root class of the DMSG.
pub fn minimal_mutant_set(km: &KillMatrix) -> MinimalSetResult {
    let dmsg = build_dmsg(km);
    let roots: Vec<&MutantClass> = dmsg.roots().into_iter().map(|c| &dmsg.classes[c]).collect();
    let killed: usize = dmsg.classes.iter().map(|c| c.members.len()).sum();
    let minimal: Vec<ProgramId> = roots.iter().map(|c| c.representative().clone()).collect();
    MinimalSetResult {
        reduction_ratio: if killed == 0 {
            0.0
        } else {
            minimal.len() as f64 / killed as f64
        },
        minimal,
        roots: roots.iter().map(|c| c.members.clone()).collect(),
        live: dmsg.live,
    }
}

/// Largest possible minimal mutant set for `n` tests: `C(n, ⌊n/2⌋)`, the
/// width of the `n`-dimensional hypercube. `n = 0` gives 1.
pub fn max_minimal_size(n: u64) -> BigUint {
    num_integer::binomial(BigUint::from(n), BigUint::from(n / 2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EquivalenceCheck {
    pub deviance_path_holds: bool,
    pub subsumes: bool,
}

impl EquivalenceCheck {
    pub fn agrees(&self) -> bool {
        self.deviance_path_holds == self.subsumes
    }
}

/// Evaluates both sides of "origin → mx → my in the lattice" versus "mx
/// dynamically subsumes my". The first side is computed from positions and
/// the deviance relation, the second from kill-matrix columns.
pub fn deviance_subsumption_equivalence(
    space: &ProgramSpace<'_>,
    km: &KillMatrix,
    mx: &str,
    my: &str,
) -> Result<EquivalenceCheck> {
    if mx == my {
        km.column_index(mx)?;
        return Ok(EquivalenceCheck {
            deviance_path_holds: false,
            subsumes: false,
        });
    }
    let origin = space.position(space.origin().as_str())?.bits;
    let px = space.position(mx)?.bits;
    let py = space.position(my)?.bits;
    Ok(EquivalenceCheck {
        deviance_path_holds: deviance(&origin, &px).is_some() && deviant_or_equal(&px, &py),
        subsumes: dynamically_subsumes(km, mx, my)?,
    })
}
