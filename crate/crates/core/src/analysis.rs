//! Closed-form spectra for the symmetric families, the mean absolute
//! eigenvalue `s`, and the query-count tables behind the scaling claims.

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::amplify::{amplified_learn_with_plan, iteration_count};
use crate::concepts::{build_family, gamma_measure, ConceptFamily, FamilySpec, FamilyTag, GAMMA_CAP};
use crate::error::{Error, Result};
use crate::group_algebra::{Group, GroupSymbol};
use crate::measurement::impatient_transform;
use crate::numkit::{Basis, Eigenvalue, Spectrum};
use crate::scalar::{creal, Real};

/// Largest `n` for which the full MAJORITY spectrum (with multiplicities) is built.
pub const MAJORITY_SPECTRUM_CAP: u32 = 64;

/// Eigenvalues of `(1/√N) Σ_k (−1)^{φ(k)} L_1^k` via one DFT:
/// `λ_j = (1/√N) Σ_k (−1)^{φ(k)} ω^{jk}`.
pub fn cyclic_spectrum<T: Real>(phi: &[bool]) -> Result<Spectrum<T>> {
    let n = phi.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let k = T::one() / T::from_usize_lossy(n).sqrt();
    let coeffs = phi.iter().map(|&b| if b { -k } else { k }).collect();
    Ok(GroupSymbol::new(Group::Cyclic(n), coeffs)?.eigenvalues())
}

/// Battleship eigenvalues in Fourier order without a transform:
/// `λ_0 = (N − 2d)/√N` and `λ_j = −(2/√N) sin(πjd/N) / sin(πj/N)`.
pub fn battleship_spectrum<T: Real>(size: usize, d: usize) -> Result<Spectrum<T>> {
    // d = 2r + 1 with r < N/2 is the same as odd d <= N.
    if size == 0 || d.is_multiple_of(2) || d > size {
        return Err(Error::BadParams(format!("battleship spectrum needs odd d <= N, got N = {size}, d = {d}")));
    }
    let nf = T::from_usize_lossy(size);
    let root = nf.sqrt();
    let df = T::from_usize_lossy(d);
    let two = T::lit(2.0);
    let values = (0..size)
        .map(|j| {
            if j == 0 {
                return creal((nf - two * df) / root);
            }
            let jf = T::from_usize_lossy(j);
            // sin(πjd/N) with jd reduced mod 2N keeps the argument small.
            let num_arg = T::PI() * T::from_usize_lossy((j * d) % (2 * size)) / nf;
            let den_arg = T::PI() * jf / nf;
            creal(-two / root * num_arg.sin() / den_arg.sin())
        })
        .collect();
    Ok(Spectrum::simple(values, Basis::Dft))
}

fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn check_majority_n(n: u32) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::OddN(n as usize));
    }
    if n == 0 {
        return Err(Error::BadParams("majority needs n >= 2".into()));
    }
    Ok(())
}

/// `√2^n · λ_{n,k}` as an exact integer:
/// `−(−1)^{k/2} C(n, n/2) (1·3⋯(k−1)) / ((n−1)(n−3)⋯(n−k+1))` for even `k`,
/// and the value at `k − 1` for odd `k`.
pub fn majority_scaled_eigenvalue(n: u32, k: u32) -> Result<BigInt> {
    check_majority_n(n)?;
    if k > n {
        return Err(Error::BadParams(format!("weight k = {k} exceeds n = {n}")));
    }
    if k % 2 == 1 {
        return majority_scaled_eigenvalue(n, k - 1);
    }
    let mut numer = binomial(n, n / 2);
    let mut denom = BigUint::one();
    for i in 0..k / 2 {
        numer *= BigUint::from(2 * i + 1);
        denom *= BigUint::from(n - 1 - 2 * i);
    }
    debug_assert!((&numer % &denom).is_zero(), "closed form is an integer");
    let magnitude = BigInt::from(numer / denom);
    Ok(if (k / 2).is_multiple_of(2) { -magnitude } else { magnitude })
}

/// `√2^n · |λ_{n,n/2}|` from the middle-eigenvalue binomials:
/// `C(n/2, n/4)` for `n ≡ 0 (mod 4)`, `2·C((n−2)/2, (n−2)/4)` for `n ≡ 2 (mod 4)`.
pub fn majority_middle_scaled(n: u32) -> Result<BigUint> {
    check_majority_n(n)?;
    Ok(if n.is_multiple_of(4) {
        binomial(n / 2, n / 4)
    } else {
        BigUint::from(2u32) * binomial((n - 2) / 2, (n - 2) / 4)
    })
}

fn scaled_to_real<T: Real>(scaled: &BigInt, n: u32) -> T {
    // Divide in f64 after removing the power of two exactly.
    let v = scaled.to_f64().unwrap_or(f64::INFINITY) / 2f64.powf(n as f64 / 2.0);
    T::lit(v)
}

/// `λ_{n,k}` for any even `n`, from the exact integer form.
pub fn majority_eigenvalue<T: Real>(n: u32, k: u32) -> Result<T> {
    Ok(scaled_to_real(&majority_scaled_eigenvalue(n, k)?, n))
}

/// The `n + 1` distinct MAJORITY eigenvalues `λ_{n,k}` with multiplicity `C(n,k)`.
pub fn majority_spectrum<T: Real>(n: u32) -> Result<Spectrum<T>> {
    check_majority_n(n)?;
    if n > MAJORITY_SPECTRUM_CAP {
        return Err(Error::DimensionCap { dim: n as usize, cap: MAJORITY_SPECTRUM_CAP as usize });
    }
    let eigenvalues = (0..=n)
        .map(|k| {
            let scaled = majority_scaled_eigenvalue(n, k)?;
            let multiplicity = binomial(n, k).to_u128().expect("C(64, k) fits in u128");
            Ok(Eigenvalue { value: creal(scaled_to_real::<T>(&scaled, n)), multiplicity })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum::new(eigenvalues, Basis::ValuesOnly))
}

/// `s = (1/N) Σ multiplicity · |λ|`, the constant diagonal of `|A|`.
pub fn s_average<T: Real>(spectrum: &Spectrum<T>) -> T {
    spectrum.mean_abs()
}

/// `(2/N) Σ_{j=1}^{N−1} |sin(πjd/N)|`, a lower bound on `s·√N` for battleship.
pub fn smallship_lower_bound<T: Real>(size: usize, d: usize) -> T {
    if size == 0 {
        return T::zero();
    }
    let nf = T::from_usize_lossy(size);
    let sum: T = (1..size).map(|j| (T::PI() * T::from_usize_lossy((j * d) % (2 * size)) / nf).sin().abs()).sum();
    T::lit(2.0) * sum / nf
}

/// Where a reported `γ` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaSource {
    Enumerated,
    BattleshipClosedForm,
    Unavailable,
}

/// `min{min(d, N−d)/N, 1/3}`; equals `min{d/N, 1/3}` for `d ≤ N/2`.
pub fn battleship_gamma(size: usize, d: usize) -> Ratio<usize> {
    let short = d.min(size - d.min(size));
    Ratio::new(short, size).min(Ratio::new(1, 3))
}

/// One row of a query-complexity table.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub family: &'static str,
    pub size: usize,
    pub param: String,
    pub s: T,
    pub theta: T,
    pub m: u64,
    pub membership_queries: u64,
    pub equivalence_queries: u64,
    /// Success probability of Amplified Impatient Learning after `m` rounds.
    pub avg_success: T,
    pub gamma: Option<Ratio<usize>>,
    pub gamma_source: GammaSource,
    /// `√N`.
    pub conj1_bound: T,
    /// `log₂ N / √γ`, when `γ` is known.
    pub conj2_bound: Option<T>,
}

impl<T: Real> SweepRow<T> {
    /// `(2m+1) / √N`, the constant the first bound would need.
    pub fn conj1_ratio(&self) -> T {
        T::from_u64(self.membership_queries).unwrap_or_else(T::infinity) / self.conj1_bound
    }

    /// `(2m+1) / (log₂ N / √γ)`.
    pub fn conj2_ratio(&self) -> Option<T> {
        self.conj2_bound.map(|b| T::from_u64(self.membership_queries).unwrap_or_else(T::infinity) / b)
    }
}

fn gamma_for(fam: &ConceptFamily) -> Result<(Option<Ratio<usize>>, GammaSource)> {
    if fam.size() >= 2 && fam.size() <= GAMMA_CAP {
        return Ok((Some(gamma_measure(fam)?), GammaSource::Enumerated));
    }
    if let FamilyTag::Battleship { size, r } = fam.tag() {
        return Ok((Some(battleship_gamma(size, 2 * r + 1)), GammaSource::BattleshipClosedForm));
    }
    Ok((None, GammaSource::Unavailable))
}

/// Query counts of Amplified Impatient Learning for `fam` next to the two
/// conjectured upper bounds. The bounds are data, not assertions.
pub fn conjecture_report<T: Real>(fam: &ConceptFamily) -> Result<SweepRow<T>> {
    let plan = impatient_transform::<T>(fam)?;
    let s = plan
        .constant_amplitude()
        .ok_or_else(|| Error::NonConstantDiagonal(plan.diagonal_spread().to_f64().unwrap_or(f64::NAN)))?;
    let (theta, m) = iteration_count(s)?;
    let report = amplified_learn_with_plan(fam, &plan, 0)?;
    debug_assert_eq!(report.m, m);

    let n = fam.size();
    let nf = T::from_usize_lossy(n);
    let (gamma, gamma_source) = gamma_for(fam)?;
    let conj2_bound = gamma.map(|g| {
        let g = T::from_usize_lossy(*g.numer()) / T::from_usize_lossy(*g.denom());
        nf.log2() / g.sqrt()
    });
    Ok(SweepRow {
        family: fam.tag().name(),
        size: n,
        param: fam.param_string(),
        s,
        theta,
        m,
        membership_queries: report.membership_queries,
        equivalence_queries: report.equivalence_queries,
        avg_success: report.simulated_success,
        gamma,
        gamma_source,
        conj1_bound: nf.sqrt(),
        conj2_bound,
    })
}

/// Family template for [`sweep`]; sizes are `n` for hypercube families and `N` otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepFamily {
    Bv,
    Grover,
    Majority,
    /// Battleship with fixed length `d`.
    Smallship {
        d: usize,
    },
    /// Battleship with `d` tied to `αN`.
    Bigship {
        alpha: Ratio<u64>,
    },
}

impl SweepFamily {
    pub fn spec(&self, size: usize) -> Result<FamilySpec> {
        let exponent = || u32::try_from(size).map_err(|_| Error::BadParams(format!("n = {size} too large")));
        Ok(match self {
            SweepFamily::Bv => FamilySpec::Bv { n: exponent()? },
            SweepFamily::Grover => FamilySpec::Grover { size },
            SweepFamily::Majority => FamilySpec::Majority { n: exponent()? },
            SweepFamily::Smallship { d } => FamilySpec::battleship_with_length(size, *d)?,
            SweepFamily::Bigship { alpha } => FamilySpec::Bigship { size, alpha: *alpha },
        })
    }
}

/// One [`conjecture_report`] per size, in input order. Cells run in parallel.
pub fn sweep<T: Real>(family: &SweepFamily, sizes: &[usize]) -> Result<Vec<SweepRow<T>>> {
    sizes.par_iter().map(|&size| conjecture_report(&build_family(&family.spec(size)?)?)).collect()
}
