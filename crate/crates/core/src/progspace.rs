//! Program spaces and positions.
//!
//! A program space is induced by a test vector (the dimensions), an origin
//! program and a differentiator. The position of a program is its d-vector
//! relative to the origin. Positions are always recomputed from the matrix.

use serde::Serialize;

use crate::bits::BitVector;
use crate::diffcore::{
    d_vector, differentiate, BehaviorMatrix, Differentiator, ProgramId, TestId, TestVector,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct ProgramSpace<'a> {
    tests: TestVector,
    origin: ProgramId,
    differentiator: Differentiator,
    matrix: &'a BehaviorMatrix,
}

/// Two spaces are the same space when their (tests, origin, differentiator)
/// triples agree; the backing matrix is not part of the identity.
impl PartialEq for ProgramSpace<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.tests == other.tests
            && self.origin == other.origin
            && self.differentiator == other.differentiator
    }
}

impl<'a> ProgramSpace<'a> {
    pub fn new(
        matrix: &'a BehaviorMatrix,
        tests: TestVector,
        origin: impl Into<ProgramId>,
        differentiator: Differentiator,
    ) -> Result<Self> {
        let origin = origin.into();
        matrix.program(origin.as_str())?;
        if let Some(t) = tests.iter().find(|t| !matrix.tests().contains(t.as_str())) {
            return Err(Error::UnknownTest(t.to_string()));
        }
        Ok(ProgramSpace {
            tests,
            origin,
            differentiator,
            matrix,
        })
    }

    /// A space over every test of the matrix.
    pub fn over_all_tests(
        matrix: &'a BehaviorMatrix,
        origin: impl Into<ProgramId>,
        differentiator: Differentiator,
    ) -> Result<Self> {
        Self::new(matrix, matrix.tests().clone(), origin, differentiator)
    }

    pub fn tests(&self) -> &TestVector {
        &self.tests
    }

    pub fn origin(&self) -> &ProgramId {
        &self.origin
    }

    pub fn differentiator(&self) -> &Differentiator {
        &self.differentiator
    }

    pub fn matrix(&self) -> &'a BehaviorMatrix {
        self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.tests.len()
    }

    /// The same origin and differentiator over a different test vector.
    pub fn with_tests(&self, tests: TestVector) -> Result<ProgramSpace<'a>> {
        ProgramSpace::new(
            self.matrix,
            tests,
            self.origin.clone(),
            self.differentiator.clone(),
        )
    }

    pub fn position(&self, program: &str) -> Result<Position> {
        let dv = d_vector(
            &self.differentiator,
            &self.tests,
            self.origin.as_str(),
            program,
            self.matrix,
        )?;
        Ok(Position {
            bits: dv.bits,
            subject: program.into(),
        })
    }

    /// Tests on which the two programs occupy different positions. Each of
    /// them is also a test on which the programs themselves differ.
    pub fn distinguishing_dimensions(&self, px: &str, py: &str) -> Result<Vec<TestId>> {
        let a = self.position(px)?;
        let b = self.position(py)?;
        Ok(a.bits
            .differing_indices(&b.bits)
            .into_iter()
            .map(|i| self.tests.as_slice()[i].clone())
            .collect())
    }

    /// Tests where the two positions agree although the programs differ:
    /// witnesses that equal positions do not imply equal behaviors.
    pub fn coincidence_counterexample(&self, px: &str, py: &str) -> Result<Option<Vec<TestId>>> {
        let a = self.position(px)?;
        let b = self.position(py)?;
        let mut witnesses = Vec::new();
        for (i, t) in self.tests.iter().enumerate() {
            if a.bits.get(i) == b.bits.get(i)
                && differentiate(&self.differentiator, t.as_str(), px, py, self.matrix)?
            {
                witnesses.push(t.clone());
            }
        }
        Ok((!witnesses.is_empty()).then_some(witnesses))
    }
}

/// A program's d-vector anchored at the origin of its space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Position {
    pub bits: BitVector,
    pub subject: ProgramId,
}

impl Position {
    /// Manhattan distance from the origin.
    pub fn distance_from_origin(&self) -> usize {
        self.bits.norm()
    }
}

pub fn position(space: &ProgramSpace<'_>, program: &str) -> Result<Position> {
    space.position(program)
}

pub fn distance_from_origin(pos: &Position) -> usize {
    pos.distance_from_origin()
}
