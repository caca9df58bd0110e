//! Axiom-check reports: every failed identity with the basis indices that witness it.

use std::fmt;

use crate::field::Field;
use crate::linalg::Mat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    /// Basis indices of the offending input, e.g. `(i, j, k)` for associativity.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: impl Into<String>, witness: Vec<usize>) {
        self.violations.push(Violation { axiom: axiom.into(), witness });
    }

    pub fn extend(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    /// Records one violation per column where `lhs` and `rhs` differ, with
    /// the column index decoded into a witness tuple by `decode`.
    pub fn compare<F: Field>(
        &mut self,
        axiom: &str,
        lhs: &Mat<F>,
        rhs: &Mat<F>,
        decode: impl Fn(usize) -> Vec<usize>,
    ) {
        if lhs.shape() != rhs.shape() {
            self.push(format!("{axiom} (shape)"), vec![]);
            return;
        }
        for c in 0..lhs.cols() {
            if (0..lhs.rows()).any(|r| lhs.get(r, c) != rhs.get(r, c)) {
                self.push(axiom, decode(c));
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{} at {:?}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}

/// Decodes a flat index of `d₁ ⊗ d₂ ⊗ …` (row-major) into its factors.
pub fn decode_index(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = idx % d.max(1);
        idx /= d.max(1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_row_major() {
        assert_eq!(decode_index(5, &[2, 3]), vec![1, 2]);
        assert_eq!(decode_index(0, &[2, 2, 2]), vec![0, 0, 0]);
        assert_eq!(decode_index(7, &[2, 2, 2]), vec![1, 1, 1]);
    }
}
