use std::fmt;

use num_rational::Ratio;

use super::TruthTable;
use crate::error::{Error, Result};

/// Largest domain a family may have (`2^12`).
pub const MAX_DOMAIN: usize = 4096;

/// Which named class a family belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    /// Bernstein–Vazirani parities `p_a(x) = a·x mod 2` over `Z_2^n`.
    Bv {
        n: u32,
    },
    /// Point functions `δ_a(x) = [a = x]` over `Z_N`.
    Grover {
        size: usize,
    },
    /// Cyclic windows `b_a(x) = 1` iff `a − x ∈ {−r, …, r} (mod N)`.
    Battleship {
        size: usize,
        r: usize,
    },
    /// `m_a(x) = 1` iff `a` and `x` agree on at least half of their `n` bits.
    Majority {
        n: u32,
    },
    Custom,
}

impl FamilyTag {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::Bv { .. } => "bv",
            FamilyTag::Grover { .. } => "grover",
            FamilyTag::Battleship { .. } => "battleship",
            FamilyTag::Majority { .. } => "majority",
            FamilyTag::Custom => "custom",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Bv { n } => write!(f, "bv(n={n})"),
            FamilyTag::Grover { size } => write!(f, "grover(N={size})"),
            FamilyTag::Battleship { size, r } => write!(f, "battleship(N={size}, r={r}, d={})", 2 * r + 1),
            FamilyTag::Majority { n } => write!(f, "majority(n={n})"),
            FamilyTag::Custom => f.write_str("custom"),
        }
    }
}

/// Construction request for [`build_family`].
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Bv {
        n: u32,
    },
    Grover {
        size: usize,
    },
    Battleship {
        size: usize,
        r: usize,
    },
    /// Battleship with the length `d = ⌊αN⌉` pushed to the nearest odd integer.
    Bigship {
        size: usize,
        alpha: Ratio<u64>,
    },
    Majority {
        n: u32,
    },
    Custom(TruthTable),
}

impl FamilySpec {
    /// Battleship given its length `d = 2r + 1`.
    pub fn battleship_with_length(size: usize, d: usize) -> Result<Self> {
        if d.is_multiple_of(2) {
            return Err(Error::BadParams(format!("battleship length d = {d} must be odd")));
        }
        Ok(FamilySpec::Battleship { size, r: (d - 1) / 2 })
    }
}

/// A matched concept class: `N` concepts over a domain of size `N`, concept
/// index equal to its natural parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptFamily {
    tag: FamilyTag,
    table: TruthTable,
    alpha: Option<Ratio<u64>>,
}

impl ConceptFamily {
    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    /// Domain size `N` (equal to the number of concepts).
    pub fn size(&self) -> usize {
        self.table.size()
    }

    /// `c(x)`.
    #[inline]
    pub fn value(&self, c: usize, x: usize) -> bool {
        self.table.get(c, x)
    }

    /// The BIGSHIP ratio this family was derived from, if any.
    pub fn alpha(&self) -> Option<Ratio<u64>> {
        self.alpha
    }

    /// Battleship length `d = 2r + 1`.
    pub fn battleship_length(&self) -> Option<usize> {
        match self.tag {
            FamilyTag::Battleship { r, .. } => Some(2 * r + 1),
            _ => None,
        }
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.size() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, size: self.size() })
        }
    }

    /// Short parameter string, e.g. `r=1;d=3`.
    pub fn param_string(&self) -> String {
        match self.tag {
            FamilyTag::Bv { n } | FamilyTag::Majority { n } => format!("n={n}"),
            FamilyTag::Grover { .. } | FamilyTag::Custom => String::new(),
            FamilyTag::Battleship { r, .. } => match self.alpha {
                Some(a) => format!("r={r};d={};alpha={}/{}", 2 * r + 1, a.numer(), a.denom()),
                None => format!("r={r};d={}", 2 * r + 1),
            },
        }
    }
}

fn check_domain(size: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::BadParams("domain size must be positive".into()));
    }
    if size > MAX_DOMAIN {
        return Err(Error::DimensionCap { dim: size, cap: MAX_DOMAIN });
    }
    Ok(())
}

fn hypercube_size(n: u32) -> Result<usize> {
    if n > MAX_DOMAIN.trailing_zeros() {
        return Err(Error::DimensionCap { dim: 1usize.checked_shl(n).unwrap_or(usize::MAX), cap: MAX_DOMAIN });
    }
    Ok(1usize << n)
}

fn battleship_table(size: usize, r: usize) -> Result<TruthTable> {
    check_domain(size)?;
    if 2 * r >= size {
        return Err(Error::BadParams(format!("battleship needs 0 <= r < N/2, got r = {r}, N = {size}")));
    }
    if 2 * r + 1 == size && size > 1 {
        return Err(Error::BadParams(format!("battleship with d = N = {size} has identical concepts")));
    }
    Ok(TruthTable::from_fn(size, |a, x| {
        let diff = (a + size - x) % size;
        diff <= r || size - diff <= r
    }))
}

/// `⌊αN⌉` (ties up), then moved to the nearest odd integer (ties up).
pub fn bigship_length(size: usize, alpha: Ratio<u64>) -> Result<usize> {
    let zero = Ratio::from_integer(0);
    let half = Ratio::new(1, 2);
    if *alpha.denom() == 0 || alpha <= zero || alpha >= half {
        return Err(Error::BadParams(format!("BIGSHIP ratio must lie in (0, 1/2), got {alpha}")));
    }
    let (p, q) = (*alpha.numer() as u128, *alpha.denom() as u128);
    let nearest = ((2 * p * size as u128 + q) / (2 * q)) as usize;
    Ok(if nearest.is_multiple_of(2) { nearest + 1 } else { nearest })
}

/// Materializes the truth table for `spec`.
pub fn build_family(spec: &FamilySpec) -> Result<ConceptFamily> {
    let (tag, table, alpha) = match spec {
        FamilySpec::Bv { n } => {
            let size = hypercube_size(*n)?;
            (FamilyTag::Bv { n: *n }, TruthTable::from_fn(size, |a, x| (a & x).count_ones() % 2 == 1), None)
        }
        FamilySpec::Grover { size } => {
            check_domain(*size)?;
            (FamilyTag::Grover { size: *size }, TruthTable::from_fn(*size, |a, x| a == x), None)
        }
        FamilySpec::Battleship { size, r } => {
            (FamilyTag::Battleship { size: *size, r: *r }, battleship_table(*size, *r)?, None)
        }
        FamilySpec::Bigship { size, alpha } => {
            check_domain(*size)?;
            let d = bigship_length(*size, *alpha)?;
            let r = (d - 1) / 2;
            (FamilyTag::Battleship { size: *size, r }, battleship_table(*size, r)?, Some(*alpha))
        }
        FamilySpec::Majority { n } => {
            if n % 2 == 1 {
                return Err(Error::OddN(*n as usize));
            }
            if *n == 0 {
                return Err(Error::BadParams("majority needs n >= 2".into()));
            }
            let size = hypercube_size(*n)?;
            let half = *n / 2;
            (FamilyTag::Majority { n: *n }, TruthTable::from_fn(size, |a, x| (a ^ x).count_ones() <= half), None)
        }
        FamilySpec::Custom(table) => {
            check_domain(table.size())?;
            if !table.rows_distinct() {
                return Err(Error::BadParams("custom family has two identical concepts".into()));
            }
            (FamilyTag::Custom, table.clone(), None)
        }
    };
    Ok(ConceptFamily { tag, table, alpha })
}
