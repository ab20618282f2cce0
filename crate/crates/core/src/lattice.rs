//! The deviance relation on positions and the position deviance lattice.
//!
//! Position `y` deviates from position `x` by a test set `td` when the two
//! agree outside `td`, `x` matches the origin on `td` and `y` does not. The
//! relation is a strict partial order; its covering edges (deviance by a
//! single test) form a directed `n`-dimensional hypercube, the PDL.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::bits::BitVector;
use crate::diffcore::{ProgramId, TestId, TestVector};
use crate::error::{Error, Result};
use crate::progspace::{Position, ProgramSpace};

/// Largest dimension for which the lattice is materialized (65,536 nodes).
pub const MAX_EXPLICIT_DIMENSION: usize = 16;

/// Indices of the deviating dimensions when `to` is deviant from `from`.
///
/// `td` is forced to be the set of dimensions where `from` is 0 and `to`
/// is 1; the relation holds iff that set is nonempty and no dimension has
/// `from` = 1, `to` = 0.
pub fn deviance(from: &BitVector, to: &BitVector) -> Option<Vec<usize>> {
    if from.len() != to.len() {
        return None;
    }
    let mut td = Vec::new();
    for (i, (a, b)) in from.iter().zip(to.iter()).enumerate() {
        match (a, b) {
            (false, true) => td.push(i),
            (true, false) => return None,
            _ => {}
        }
    }
    (!td.is_empty()).then_some(td)
}

/// The non-strict order: `to` is deviant from or equal to `from`.
pub fn deviant_or_equal(from: &BitVector, to: &BitVector) -> bool {
    from == to || deviance(from, to).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DevianceWitness {
    pub from: Position,
    pub to: Position,
    pub td: Vec<TestId>,
}

/// Checks whether the position of `py` is deviant from the position of `px`.
pub fn deviant(space: &ProgramSpace<'_>, px: &str, py: &str) -> Result<Option<DevianceWitness>> {
    let from = space.position(px)?;
    let to = space.position(py)?;
    Ok(deviance(&from.bits, &to.bits).map(|idx| DevianceWitness {
        td: idx
            .into_iter()
            .map(|i| space.tests().as_slice()[i].clone())
            .collect(),
        from,
        to,
    }))
}

/// A single-test deviance edge. Nodes are encoded with the first dimension
/// as the most significant bit (see [`BitVector::to_node`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub from: u64,
    pub to: u64,
    /// Index of the deviating test.
    pub dimension: usize,
}

/// Position deviance lattice over `dimension` tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pdl {
    dimension: usize,
    tests: TestVector,
    edges: Vec<Edge>,
    successors: Vec<Vec<u64>>,
    annotations: BTreeMap<u64, Vec<ProgramId>>,
}

fn default_labels(n: usize) -> TestVector {
    TestVector::new((1..=n).map(|i| TestId::new(format!("t{i}"))).collect())
        .expect("generated labels are unique")
}

/// Materializes the full hypercube for `n` tests labelled `t1..tn`.
pub fn build_pdl(n: usize) -> Result<Pdl> {
    Pdl::with_tests(default_labels(n))
}

impl Pdl {
    /// Materializes the hypercube whose dimensions are `tests`.
    pub fn with_tests(tests: TestVector) -> Result<Pdl> {
        let n = tests.len();
        if n > MAX_EXPLICIT_DIMENSION {
            return Err(Error::Capacity {
                requested: n,
                limit: MAX_EXPLICIT_DIMENSION,
            });
        }
        let count = 1u64 << n;
        let mut edges = Vec::with_capacity(n << n.saturating_sub(1));
        let mut successors = vec![Vec::new(); count as usize];
        for from in 0..count {
            for dimension in 0..n {
                let mask = 1u64 << (n - 1 - dimension);
                if from & mask == 0 {
                    let to = from | mask;
                    edges.push(Edge {
                        from,
                        to,
                        dimension,
                    });
                    successors[from as usize].push(to);
                }
            }
        }
        Ok(Pdl {
            dimension: n,
            tests,
            edges,
            successors,
            annotations: BTreeMap::new(),
        })
    }

    /// The lattice of a program space, without annotations.
    pub fn for_space(space: &ProgramSpace<'_>) -> Result<Pdl> {
        Pdl::with_tests(space.tests().clone())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn tests(&self) -> &TestVector {
        &self.tests
    }

    pub fn node_count(&self) -> usize {
        self.successors.len()
    }

    /// All nodes, ascending.
    pub fn nodes(&self) -> impl Iterator<Item = u64> {
        0..self.node_count() as u64
    }

    pub fn node_bits(&self, node: u64) -> BitVector {
        BitVector::from_node(node, self.dimension)
    }

    /// Edges ordered by source node, then dimension.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn successors(&self, node: u64) -> &[u64] {
        &self.successors[node as usize]
    }

    pub fn in_degree(&self, node: u64) -> usize {
        self.edges.iter().filter(|e| e.to == node).count()
    }

    pub fn out_degree(&self, node: u64) -> usize {
        self.successors(node).len()
    }

    pub fn annotations(&self) -> &BTreeMap<u64, Vec<ProgramId>> {
        &self.annotations
    }

    pub fn programs_at(&self, node: u64) -> &[ProgramId] {
        self.annotations
            .get(&node)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Attaches each program to the node equal to its position in `space`.
    pub fn annotate(&self, space: &ProgramSpace<'_>, programs: &[ProgramId]) -> Result<Pdl> {
        if space.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: space.dimension(),
            });
        }
        let mut out = self.clone();
        out.tests = space.tests().clone();
        for p in programs {
            let node = space.position(p.as_str())?.bits.to_node();
            out.annotations.entry(node).or_default().push(p.clone());
        }
        Ok(out)
    }

    /// Restricts the lattice to its first `k` dimensions. Nodes (and their
    /// annotations) that agree on those dimensions coalesce. `k` is clamped
    /// to the dimension.
    pub fn project(&self, k: usize) -> Pdl {
        let k = k.min(self.dimension);
        let mut out = Pdl::with_tests(self.tests.prefix(k)).expect("k <= dimension");
        let shift = self.dimension - k;
        for (node, programs) in &self.annotations {
            out.annotations
                .entry(node >> shift)
                .or_default()
                .extend(programs.iter().cloned());
        }
        out
    }

    /// Every node reachable from `from` along deviance edges.
    pub fn reachable_by_deviance(&self, from: u64) -> BTreeSet<u64> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &v in self.successors(u) {
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Graphviz rendering. Nodes are emitted in ascending binary order and
    /// edges by (source, dimension), so output is stable for diffing.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph pdl {\n  rankdir=BT;\n  node [shape=box];\n");
        for node in self.nodes() {
            let bits = self.node_bits(node);
            let label = if bits.is_empty() {
                "⟨⟩".to_owned()
            } else {
                bits.to_string()
            };
            let programs = self.programs_at(node);
            if programs.is_empty() {
                let _ = writeln!(s, "  n{node} [label=\"{label}\"];");
            } else {
                let names: Vec<&str> = programs.iter().map(ProgramId::as_str).collect();
                let _ = writeln!(
                    s,
                    "  n{node} [label=\"{label}\\n{}\", style=filled, fillcolor=lightgray];",
                    dot_escape(&names.join(", "))
                );
            }
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  n{} -> n{} [label=\"{}\"];",
                e.from,
                e.to,
                dot_escape(self.tests.as_slice()[e.dimension].as_str())
            );
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Projects a position onto its first `k` dimensions.
pub fn project_position(bits: &BitVector, k: usize) -> BitVector {
    bits.prefix(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffcore::Differentiator;
    use crate::examples;

    fn bits(s: &str) -> BitVector {
        BitVector::parse(s).unwrap()
    }

    #[test]
    fn deviance_on_sample_kill_table() {
        let bm = examples::sample_kill_table_behaviors();
        let sp = ProgramSpace::over_all_tests(&bm, "po", Differentiator::exact()).unwrap();
        let w = deviant(&sp, "m1", "m4").unwrap().unwrap();
        assert_eq!(w.td, TestVector::of(&["t2", "t3"]).as_slice());
        assert_eq!(deviant(&sp, "m1", "m1").unwrap(), None);
        assert_eq!(deviant(&sp, "m1", "m2").unwrap(), None);
        assert!(deviant(&sp, "po", "m2").unwrap().is_some());
    }

    #[test]
    fn deviance_relation_shape() {
        assert_eq!(deviance(&bits("100"), &bits("111")), Some(vec![1, 2]));
        assert_eq!(deviance(&bits("111"), &bits("100")), None);
        assert_eq!(deviance(&bits("10"), &bits("100")), None);
        assert!(deviant_or_equal(&bits("101"), &bits("101")));
        assert_eq!(deviance(&bits(""), &bits("")), None);
    }

    #[test]
    fn small_hypercubes() {
        let p3 = build_pdl(3).unwrap();
        assert_eq!((p3.node_count(), p3.edges().len()), (8, 12));
        let p0 = build_pdl(0).unwrap();
        assert_eq!((p0.node_count(), p0.edges().len()), (1, 0));
        let p4 = build_pdl(4).unwrap();
        assert_eq!((p4.node_count(), p4.edges().len()), (16, 32));
        assert!(matches!(
            build_pdl(MAX_EXPLICIT_DIMENSION + 1),
            Err(Error::Capacity { requested: 17, .. })
        ));
    }

    #[test]
    fn annotate_sample_kill_table() {
        let bm = examples::sample_kill_table_behaviors();
        let sp = ProgramSpace::over_all_tests(&bm, "po", Differentiator::exact()).unwrap();
        let mut programs = bm.mutants();
        programs.push("po".into());
        let pdl = Pdl::for_space(&sp)
            .unwrap()
            .annotate(&sp, &programs)
            .unwrap();
        let at = |s: &str| pdl.programs_at(bits(s).to_node()).to_vec();
        assert_eq!(at("100"), vec![ProgramId::from("m1")]);
        assert_eq!(at("011"), vec![ProgramId::from("m2")]);
        assert_eq!(at("101"), vec![ProgramId::from("m3")]);
        assert_eq!(at("111"), vec![ProgramId::from("m4")]);
        assert_eq!(at("000"), vec![ProgramId::from("po")]);

        let wrong = build_pdl(2).unwrap();
        assert!(matches!(
            wrong.annotate(&sp, &programs),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn duplicate_kill_columns_share_a_node() {
        let km = crate::subsumption::KillMatrix::from_csv("test,a,b\nt1,1,1\nt2,0,0\n").unwrap();
        let bm = km.to_behavior_matrix("po");
        let sp = ProgramSpace::over_all_tests(&bm, "po", Differentiator::strong()).unwrap();
        let pdl = Pdl::for_space(&sp)
            .unwrap()
            .annotate(&sp, &bm.mutants())
            .unwrap();
        assert_eq!(
            pdl.programs_at(0b10),
            &[ProgramId::from("a"), ProgramId::from("b")]
        );
    }

    #[test]
    fn projection_replays_growth() {
        // Layered naming of the eight 3-bit positions.
        let named = [
            ("p0", "000"),
            ("p1", "100"),
            ("p2", "010"),
            ("p3", "001"),
            ("p4", "110"),
            ("p5", "101"),
            ("p6", "011"),
            ("p7", "111"),
        ];
        let group = |k: usize, prefix: &str| -> Vec<&str> {
            named
                .iter()
                .filter(|(_, b)| project_position(&bits(b), k).to_string() == prefix)
                .map(|(n, _)| *n)
                .collect()
        };
        assert_eq!(group(1, "0"), ["p0", "p2", "p3", "p6"]);
        assert_eq!(group(1, "1"), ["p1", "p4", "p5", "p7"]);
        assert_eq!(group(2, "00"), ["p0", "p3"]);
        assert_eq!(group(2, "10"), ["p1", "p5"]);
        assert_eq!(
            group(0, ""),
            named.iter().map(|(n, _)| *n).collect::<Vec<_>>()
        );
        assert_eq!(project_position(&bits("101"), 3), bits("101"));
    }

    #[test]
    fn pdl_projection_coalesces_annotations() {
        let bm = examples::sample_kill_table_behaviors();
        let sp = ProgramSpace::over_all_tests(&bm, "po", Differentiator::exact()).unwrap();
        let pdl = Pdl::for_space(&sp)
            .unwrap()
            .annotate(&sp, &bm.mutants())
            .unwrap();
        let one = pdl.project(1);
        assert_eq!(one.dimension(), 1);
        assert_eq!(one.programs_at(1).len(), 3);
        assert_eq!(one.programs_at(0), &[ProgramId::from("m2")]);
        assert_eq!(pdl.project(3), pdl);
        assert_eq!(pdl.project(0).programs_at(0).len(), 4);
    }

    #[test]
    fn reachability() {
        let p = build_pdl(3).unwrap();
        assert_eq!(p.reachable_by_deviance(0).len(), 7);
        assert!(p.reachable_by_deviance(0b111).is_empty());
        let from_100: Vec<String> = p
            .reachable_by_deviance(0b100)
            .into_iter()
            .map(|n| p.node_bits(n).to_string())
            .collect();
        assert_eq!(from_100, ["101", "110", "111"]);
    }

    #[test]
    fn dot_is_ordered() {
        let dot = build_pdl(2).unwrap().to_dot();
        let expected = "digraph pdl {\n  rankdir=BT;\n  node [shape=box];\n  n0 [label=\"00\"];\n  n1 [label=\"01\"];\n  n2 [label=\"10\"];\n  n3 [label=\"11\"];\n  n0 -> n2 [label=\"t1\"];\n  n0 -> n1 [label=\"t2\"];\n  n1 -> n3 [label=\"t1\"];\n  n2 -> n3 [label=\"t2\"];\n}\n";
        assert_eq!(dot, expected);
    }
}
