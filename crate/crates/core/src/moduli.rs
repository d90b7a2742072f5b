//! Dimensions of moduli spaces, by formula and by counting free parameters
//! of a concrete data set.

use crate::balance::{connection_matrix, scaled_rank};
use crate::constraints::{check_existence, check_refined, AngleVector, Case, ConstraintError, Existence};
use crate::dataset::{realized_angle_vector, DataSet};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuliError {
    #[error(transparent)]
    Constraint(#[from] ConstraintError),
    #[error("parameter count {counted} differs from the formula {formula}")]
    AssertionFailure { counted: u64, formula: String },
}

fn by_case(existence: Existence, genus: u32, saddles: usize, cusps: usize) -> Option<u64> {
    let base = 2 * genus as u64 + 2 * saddles as u64;
    match existence {
        Existence::Empty => None,
        Existence::Nonempty(Case::Football) => Some(1),
        Existence::Nonempty(Case::B) => Some(base + cusps as u64 - 1),
        Existence::Nonempty(_) => Some(base),
    }
}

/// Dimension of the moduli space with every integer entry free to be a
/// saddle; `None` when the space is empty.
pub fn dimension(genus: u32, alpha: &AngleVector) -> Result<Option<u64>, ConstraintError> {
    let e = check_existence(genus, alpha)?;
    Ok(by_case(e, genus, alpha.k(), alpha.zeros()))
}

/// Dimension with the saddles fixed to `saddles` (0-based).
pub fn dimension_refined(
    genus: u32,
    alpha: &AngleVector,
    saddles: &BTreeSet<usize>,
) -> Result<Option<u64>, ConstraintError> {
    let e = check_refined(genus, alpha, saddles)?;
    Ok(by_case(e, genus, saddles.len(), alpha.zeros()))
}

/// One for the top curvature, one level per face, plus the kernel of the
/// balance equations; must agree with the refined formula for the data set's
/// own cone angles.
pub fn dimension_crosscheck(d: &DataSet) -> Result<u64, ModuliError> {
    let a = d.angulation();
    let rank = scaled_rank(&connection_matrix(a), d.ratio());
    let counted = 1 + a.num_faces() as u64 + (a.num_arcs() - rank) as u64;
    let (alpha, t) = realized_angle_vector(d);
    let formula = dimension_refined(d.genus(), &alpha, &t.saddles)?;
    if formula != Some(counted) {
        return Err(ModuliError::AssertionFailure {
            counted,
            formula: formula.map_or("empty".into(), |f| f.to_string()),
        });
    }
    Ok(counted)
}
