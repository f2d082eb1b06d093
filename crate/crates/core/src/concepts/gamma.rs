use num_rational::Ratio;

use super::ConceptFamily;
use crate::error::{Error, Result};

/// Largest family for which the subset enumeration is attempted.
pub const GAMMA_CAP: usize = 12;

/// Exact similarity measure
/// `γ = min_{C' ⊆ C, |C'| ≥ 2} max_x min_b |C'_{x,b}| / |C'|`
/// by enumerating every subset of at least two concepts.
///
/// The ratio is taken relative to `|C'|`, which is what bounds `γ` by `1/3`
/// for classes with at least three concepts.
pub fn gamma_measure(fam: &ConceptFamily) -> Result<Ratio<usize>> {
    let n = fam.size();
    if n > GAMMA_CAP {
        return Err(Error::DimensionCap { dim: n, cap: GAMMA_CAP });
    }
    if n < 2 {
        return Err(Error::BadParams("gamma needs at least two concepts".into()));
    }
    // columns[x] = set of concepts c with c(x) = 1.
    let columns: Vec<u32> = (0..n).map(|x| (0..n).filter(|&c| fam.value(c, x)).fold(0u32, |m, c| m | 1 << c)).collect();

    let mut best = Ratio::new(1usize, 1usize);
    for subset in 1u32..(1u32 << n) {
        let size = subset.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let split = columns
            .iter()
            .map(|&col| {
                let ones = (subset & col).count_ones() as usize;
                ones.min(size - ones)
            })
            .max()
            .unwrap_or(0);
        let value = Ratio::new(split, size);
        if value < best {
            best = value;
        }
    }
    Ok(best)
}
