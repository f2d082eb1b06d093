use std::cell::Cell;

use super::ConceptFamily;
use crate::error::Result;
use crate::scalar::{Real, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Membership { target: usize },
    Equivalence { target: usize },
}

/// Diagonal `±1` phase oracle on `C^N`.
///
/// A membership oracle for `c̄` acts as `|x⟩ ↦ (−1)^{c̄(x)} |x⟩` (the bit
/// oracle after phase kickback onto `|−⟩`); an equivalence oracle flips the
/// sign of the single basis state `|c̄⟩`.
///
/// The oracle keeps a call counter so algorithms can be audited for the
/// number of queries they actually make.
#[derive(Debug, Clone)]
pub struct PhaseOracle {
    kind: OracleKind,
    flipped: Vec<bool>,
    calls: Cell<u64>,
}

impl PhaseOracle {
    pub fn from_flips(kind: OracleKind, flipped: Vec<bool>) -> Self {
        Self { kind, flipped, calls: Cell::new(0) }
    }

    pub fn kind(&self) -> OracleKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.flipped.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flipped.is_empty()
    }

    /// Diagonal entry at `x`, `+1` or `−1`. Does not count as a query.
    pub fn sign(&self, x: usize) -> i8 {
        if self.flipped[x] {
            -1
        } else {
            1
        }
    }

    pub fn diagonal(&self) -> Vec<i8> {
        (0..self.len()).map(|x| self.sign(x)).collect()
    }

    /// Number of `−1` entries. Does not count as a query.
    pub fn flip_count(&self) -> usize {
        self.flipped.iter().filter(|&&f| f).count()
    }

    /// One classical query: the bit at `x`.
    pub fn query(&self, x: usize) -> bool {
        self.calls.set(self.calls.get() + 1);
        self.flipped[x]
    }

    /// One quantum query: applies the diagonal to `state` in place.
    pub fn apply<T: Real>(&self, state: &mut [C<T>]) {
        self.calls.set(self.calls.get() + 1);
        for (z, &f) in state.iter_mut().zip(&self.flipped) {
            if f {
                *z = -*z;
            }
        }
    }

    /// Queries made through this handle so far.
    pub fn calls(&self) -> u64 {
        self.calls.get()
    }

    pub fn reset_calls(&self) {
        self.calls.set(0);
    }
}

impl PartialEq for PhaseOracle {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.flipped == other.flipped
    }
}

/// `U_c̄ |x⟩ = (−1)^{c̄(x)} |x⟩`.
pub fn membership_oracle(fam: &ConceptFamily, target: usize) -> Result<PhaseOracle> {
    fam.check_index(target)?;
    let flips = (0..fam.size()).map(|x| fam.value(target, x)).collect();
    Ok(PhaseOracle::from_flips(OracleKind::Membership { target }, flips))
}

/// `U_{δ_c̄}`: flips the phase of the concept state `|c̄⟩` only.
pub fn equivalence_oracle(fam: &ConceptFamily, target: usize) -> Result<PhaseOracle> {
    fam.check_index(target)?;
    let flips = (0..fam.size()).map(|c| c == target).collect();
    Ok(PhaseOracle::from_flips(OracleKind::Equivalence { target }, flips))
}
