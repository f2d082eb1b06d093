//! Concept families, phase oracles, membership query matrices and the
//! subset similarity measure `γ`.

mod family;
mod gamma;
mod oracle;
mod table;

pub use family::{bigship_length, build_family, ConceptFamily, FamilySpec, FamilyTag, MAX_DOMAIN};
pub use gamma::{gamma_measure, GAMMA_CAP};
pub use oracle::{equivalence_oracle, membership_oracle, OracleKind, PhaseOracle};
pub use table::TruthTable;

use crate::error::{Error, Result};
use crate::numkit::Matrix;
use crate::scalar::{Real, C};

/// Largest family whose `N × N` query or Gram matrix is materialized.
pub const DENSE_MATRIX_CAP: usize = 1024;

/// Membership query matrix, `A[x][c] = (−1)^{c(x)} / √N`.
///
/// Column `c` is the query register after one membership query to concept
/// `c` on the equal superposition.
pub fn query_matrix<T: Real>(fam: &ConceptFamily) -> Result<Matrix<T>> {
    let n = fam.size();
    if n > DENSE_MATRIX_CAP {
        return Err(Error::DimensionCap { dim: n, cap: DENSE_MATRIX_CAP });
    }
    let k = T::one() / T::from_usize_lossy(n).sqrt();
    Ok(Matrix::from_fn(n, n, |x, c| C::new(if fam.value(c, x) { -k } else { k }, T::zero())))
}

/// Outcome of simulating an equivalence query with membership queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceCheck {
    pub equal: bool,
    pub membership_queries: u64,
}

/// Decides whether the hidden battleship `b_a` equals the candidate `b_{a'}`
/// with two membership queries: `b_a = b_{a'}` iff `b_a(a'+r) = 1` and
/// `b_a(a'+r+1) = 0`.
pub fn battleship_equiv_by_membership(
    fam: &ConceptFamily,
    target: &PhaseOracle,
    candidate: usize,
) -> Result<EquivalenceCheck> {
    let FamilyTag::Battleship { size, r } = fam.tag() else {
        return Err(Error::WrongFamily { expected: "battleship", got: fam.tag().name().to_string() });
    };
    fam.check_index(candidate)?;
    if target.len() != size {
        return Err(Error::DimensionMismatch { expected: size, got: target.len() });
    }
    let before = target.calls();
    let right_end = (candidate + r) % size;
    let past_end = (candidate + r + 1) % size;
    // Both queries are always made so the count does not leak the answer.
    let inside = target.query(right_end);
    let outside = target.query(past_end);
    Ok(EquivalenceCheck { equal: inside && !outside, membership_queries: target.calls() - before })
}
