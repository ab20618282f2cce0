//! Mutation-based fault localization.
//!
//! Two scoring families are provided:
//!
//! * **Fix** (mutant as a partial fix): a mutant is suspicious when tests
//!   that failed on the original pass on it, and unsuspicious when tests
//!   that passed start failing. Both counts come from the mutant's position
//!   relative to the spec projection, restricted to the tests where that
//!   position differs from the original's.
//! * **Flt** (mutant as a fault): a mutant is suspicious when it is killed
//!   by the same tests that fail on the original, i.e. its position relative
//!   to the original is close to the spec projection's position there.
//!
//! Statement scores are the maximum over the statement's mutants; ranking
//! uses average ranks for ties.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::bits::BitVector;
use crate::diffcore::{
    d_vector, differentiate, BehaviorMatrix, Differentiator, ProgramId, Role, TestId, TestVector,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[default]
    Ochiai,
    Jaccard,
}

impl Metric {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "ochiai" => Ok(Metric::Ochiai),
            "jaccard" => Ok(Metric::Jaccard),
            other => Err(Error::UnknownMetric(other.to_owned())),
        }
    }

    /// Similarity of two bit vectors of equal length; 0 when undefined.
    pub fn similarity(self, k: &BitVector, f: &BitVector) -> f64 {
        let (mut a, mut b, mut c) = (0u64, 0u64, 0u64);
        for (x, y) in k.iter().zip(f.iter()) {
            match (x, y) {
                (true, true) => a += 1,
                (true, false) => b += 1,
                (false, true) => c += 1,
                (false, false) => {}
            }
        }
        let (a, b, c) = (a as f64, b as f64, c as f64);
        let denom = match self {
            Metric::Ochiai => ((a + b) * (a + c)).sqrt(),
            Metric::Jaccard => a + b + c,
        };
        if denom == 0.0 {
            0.0
        } else {
            a / denom
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Fix,
    Flt(Metric),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Fix => f.write_str("fix"),
            Method::Flt(Metric::Ochiai) => f.write_str("flt-ochiai"),
            Method::Flt(Metric::Jaccard) => f.write_str("flt-jaccard"),
        }
    }
}

impl Method {
    /// Parses `fix`, `flt` (Ochiai), `flt-ochiai` or `flt-jaccard`.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "fix" => Ok(Method::Fix),
            "flt" => Ok(Method::Flt(Metric::Ochiai)),
            _ => match name.strip_prefix("flt-") {
                Some(metric) => Ok(Method::Flt(Metric::parse(metric)?)),
                None => Err(Error::InvalidArgument(format!("unknown method `{name}`"))),
            },
        }
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Everything the scoring functions read.
#[derive(Debug, Clone)]
pub struct FaultLocalizationInput<'a> {
    bm: &'a BehaviorMatrix,
    spec: ProgramId,
    original: ProgramId,
    mutants: Vec<(ProgramId, Option<String>)>,
    tests: TestVector,
    differentiator: Differentiator,
}

impl<'a> FaultLocalizationInput<'a> {
    /// `mutants` pairs each mutant with the statement it was generated
    /// from, when known. The matrix must carry both a spec and an original
    /// row.
    pub fn new(
        bm: &'a BehaviorMatrix,
        mutants: Vec<(ProgramId, Option<String>)>,
        tests: TestVector,
        differentiator: Differentiator,
    ) -> Result<Self> {
        let spec = bm
            .with_role(Role::Spec)
            .ok_or(Error::MissingRole("spec"))?
            .clone();
        let original = bm
            .with_role(Role::Original)
            .ok_or(Error::MissingRole("original"))?
            .clone();
        for (m, _) in &mutants {
            bm.program(m.as_str())?;
        }
        if let Some(t) = tests.iter().find(|t| !bm.tests().contains(t.as_str())) {
            return Err(Error::UnknownTest(t.to_string()));
        }
        Ok(FaultLocalizationInput {
            bm,
            spec,
            original,
            mutants,
            tests,
            differentiator,
        })
    }

    pub fn spec(&self) -> &ProgramId {
        &self.spec
    }

    pub fn original(&self) -> &ProgramId {
        &self.original
    }

    pub fn tests(&self) -> &TestVector {
        &self.tests
    }

    pub fn mutants(&self) -> &[(ProgramId, Option<String>)] {
        &self.mutants
    }

    fn check_mutant(&self, m: &str) -> Result<()> {
        if self.mutants.iter().any(|(id, _)| id.as_str() == m) {
            Ok(())
        } else {
            Err(Error::UnknownMutant(m.to_owned()))
        }
    }

    fn spec_relative(&self, p: &str, tests: &TestVector) -> Result<BitVector> {
        Ok(d_vector(&self.differentiator, tests, self.spec.as_str(), p, self.bm)?.bits)
    }

    /// Indicator of the original's failing tests (`d(t, p_s, p_o) = 1`).
    pub fn failing(&self) -> Result<BitVector> {
        self.spec_relative(self.original.as_str(), &self.tests)
    }
}

/// Tests where the original and the mutant sit at different positions in
/// the space anchored at the spec projection.
pub fn changed_tests(input: &FaultLocalizationInput<'_>, m: &str) -> Result<TestVector> {
    input.check_mutant(m)?;
    let po = input.failing()?;
    let pm = input.spec_relative(m, &input.tests)?;
    Ok(input.tests.select(&po.differing_indices(&pm)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FixCounts {
    /// Failed on the original, pass on the mutant.
    pub n_f_to_p: usize,
    /// Passed on the original, fail on the mutant.
    pub n_p_to_f: usize,
}

/// Counts from the mutant's spec-relative bits over the changed tests:
/// zeros are fail→pass, ones are pass→fail.
pub fn fix_counts(input: &FaultLocalizationInput<'_>, m: &str) -> Result<FixCounts> {
    let changed = changed_tests(input, m)?;
    Ok(fix_counts_from_bits(&input.spec_relative(m, &changed)?))
}

/// [`fix_counts`] from an already restricted d-vector `d_{p_s}^{t'}(m)`.
pub fn fix_counts_from_bits(bits: &BitVector) -> FixCounts {
    let ones = bits.norm();
    FixCounts {
        n_f_to_p: bits.len() - ones,
        n_p_to_f: ones,
    }
}

/// `nFtoP / F − nPtoF / P`, where a term with a zero denominator is 0.
pub fn fix_score_from_counts(counts: FixCounts, failing: usize, passing: usize) -> f64 {
    let ratio = |n: usize, d: usize| if d == 0 { 0.0 } else { n as f64 / d as f64 };
    ratio(counts.n_f_to_p, failing) - ratio(counts.n_p_to_f, passing)
}

pub fn fix_score(input: &FaultLocalizationInput<'_>, m: &str) -> Result<f64> {
    let counts = fix_counts(input, m)?;
    let failing = input.failing()?.norm();
    Ok(fix_score_from_counts(
        counts,
        failing,
        input.tests.len() - failing,
    ))
}

/// Similarity between the mutant's kill vector and the original's failure
/// vector, both read in the space anchored at the original.
pub fn flt_score(input: &FaultLocalizationInput<'_>, m: &str, metric: Metric) -> Result<f64> {
    input.check_mutant(m)?;
    let po = input.original.as_str();
    let k = d_vector(&input.differentiator, &input.tests, po, m, input.bm)?.bits;
    let f = d_vector(
        &input.differentiator,
        &input.tests,
        po,
        input.spec.as_str(),
        input.bm,
    )?
    .bits;
    Ok(metric.similarity(&k, &f))
}

pub fn score(input: &FaultLocalizationInput<'_>, m: &str, method: Method) -> Result<f64> {
    match method {
        Method::Fix => fix_score(input, m),
        Method::Flt(metric) => flt_score(input, m, metric),
    }
}

fn six_places<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    // -0.0 would otherwise print as "-0.000000".
    let x = if *x == 0.0 { 0.0 } else { *x };
    let raw = serde_json::value::RawValue::from_string(format!("{x:.6}"))
        .map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MutantScore {
    pub id: ProgramId,
    pub statement: Option<String>,
    #[serde(serialize_with = "six_places")]
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedStatement {
    pub statement: String,
    #[serde(serialize_with = "six_places")]
    pub score: f64,
    #[serde(serialize_with = "six_places")]
    pub rank: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuspiciousnessReport {
    pub method: Method,
    pub mutants: Vec<MutantScore>,
    pub ranking: Vec<RankedStatement>,
}

impl SuspiciousnessReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn rank_of(&self, statement: &str) -> Option<f64> {
        self.ranking
            .iter()
            .find(|r| r.statement == statement)
            .map(|r| r.rank)
    }
}

/// Sorts by descending score (ties by statement id) and assigns average
/// ranks: tied statements share the mean of the positions they occupy.
pub fn rank_scores(scores: &BTreeMap<String, f64>) -> Vec<RankedStatement> {
    let mut entries: Vec<(&String, f64)> = scores.iter().map(|(s, &v)| (s, v)).collect();
    entries.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(Ordering::Equal)
            .then(a.0.cmp(b.0))
    });
    let mut out = Vec::with_capacity(entries.len());
    let mut i = 0;
    while i < entries.len() {
        let mut j = i;
        while j + 1 < entries.len() && entries[j + 1].1 == entries[i].1 {
            j += 1;
        }
        // Positions i+1 ..= j+1 share their average.
        let rank = (i + j + 2) as f64 / 2.0;
        for &(s, score) in &entries[i..=j] {
            out.push(RankedStatement {
                statement: s.clone(),
                score,
                rank,
            });
        }
        i = j + 1;
    }
    out
}

pub fn rank_statements(
    input: &FaultLocalizationInput<'_>,
    method: Method,
) -> Result<SuspiciousnessReport> {
    if input.mutants.is_empty() {
        return Err(Error::NoMutants);
    }
    let mut mutants = Vec::with_capacity(input.mutants.len());
    let mut statements: BTreeMap<String, f64> = BTreeMap::new();
    for (m, stmt) in &input.mutants {
        let s = score(input, m.as_str(), method)?;
        if let Some(stmt) = stmt {
            statements
                .entry(stmt.clone())
                .and_modify(|best| *best = best.max(s))
                .or_insert(s);
        }
        mutants.push(MutantScore {
            id: m.clone(),
            statement: stmt.clone(),
            score: s,
        });
    }
    Ok(SuspiciousnessReport {
        method,
        mutants,
        ranking: rank_scores(&statements),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MethodComparison {
    /// Per test, whether the fix view sees the mutant differ from the spec:
    /// `d(t, p_s, m)`.
    pub fix_judgment: BitVector,
    /// Per test, whether the fault view sees the mutant differ from the
    /// spec: kill bit ≠ failure bit.
    pub flt_judgment: BitVector,
    /// Tests where spec, original and mutant are pairwise different.
    pub disagreement_tests: Vec<TestId>,
}

pub fn compare_methods(input: &FaultLocalizationInput<'_>, m: &str) -> Result<MethodComparison> {
    input.check_mutant(m)?;
    let d = &input.differentiator;
    let (ps, po) = (input.spec.as_str(), input.original.as_str());
    let mut fix = Vec::with_capacity(input.tests.len());
    let mut flt = Vec::with_capacity(input.tests.len());
    let mut disagreement = Vec::new();
    for t in &input.tests {
        let t_ = t.as_str();
        let kill = differentiate(d, t_, po, m, input.bm)?;
        let fail = differentiate(d, t_, po, ps, input.bm)?;
        let from_spec = differentiate(d, t_, ps, m, input.bm)?;
        fix.push(from_spec);
        flt.push(kill != fail);
        if kill && fail && from_spec {
            disagreement.push(t.clone());
        }
    }
    Ok(MethodComparison {
        fix_judgment: fix.into(),
        flt_judgment: flt.into(),
        disagreement_tests: disagreement,
    })
}
