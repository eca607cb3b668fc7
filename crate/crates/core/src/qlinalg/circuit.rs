use num_traits::Zero;

use super::matrix::{normalized_int_row, MatQ};
use crate::germs::LinearForm;
use crate::{Error, Rat, Result};

/// A minimal linearly dependent subfamily and its vanishing combination
/// `Σ coeffs[i] · forms[indices[i]] = 0`. Indices are 0-based and increasing; the
/// coefficients are coprime integers (as rationals) with the first one positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub indices: Vec<usize>,
    pub coeffs: Vec<Rat>,
}

/// Finds the lexicographically smallest circuit (by sorted index tuple) among the
/// given forms, or `None` when they are linearly independent.
pub fn find_circuit(forms: &[LinearForm]) -> Option<Circuit> {
    let vectors: Vec<Vec<Rat>> = forms.iter().map(LinearForm::to_rats).collect();
    find_circuit_of(&vectors).expect("linear forms are nonzero")
}

/// [`find_circuit`] on raw coefficient vectors; zero vectors are rejected.
pub fn find_circuit_of(vectors: &[Vec<Rat>]) -> Result<Option<Circuit>> {
    if let Some(i) = vectors.iter().position(|v| v.iter().all(Zero::is_zero)) {
        return Err(Error::ZeroForm(i));
    }
    let Some(dim) = vectors.first().map(Vec::len) else {
        return Ok(None);
    };
    if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
    }
    let whole = MatQ::from_rows(vectors.to_vec())?;
    if whole.rank() == vectors.len() {
        return Ok(None);
    }
    // Depth-first search in lexicographic order over independent prefixes: the first
    // dependent set whose unique relation has full support is the smallest circuit.
    let mut chosen = Vec::new();
    Ok(search(vectors, 0, &mut chosen))
}

fn search(vectors: &[Vec<Rat>], start: usize, chosen: &mut Vec<usize>) -> Option<Circuit> {
    for next in start..vectors.len() {
        chosen.push(next);
        let m = MatQ::from_rows(chosen.iter().map(|&i| vectors[i].clone()).collect())
            .expect("equal lengths")
            .transpose();
        let kernel = m.kernel_basis();
        if kernel.is_empty() {
            if let Some(found) = search(vectors, next + 1, chosen) {
                return Some(found);
            }
        } else {
            // `chosen` minus its last element is independent, so the relation is unique.
            let relation = &kernel[0];
            if relation.iter().all(|c| !c.is_zero()) {
                let ints = normalized_int_row(relation);
                return Some(Circuit {
                    indices: chosen.clone(),
                    coeffs: ints.into_iter().map(Rat::from_integer).collect(),
                });
            }
        }
        chosen.pop();
    }
    None
}
