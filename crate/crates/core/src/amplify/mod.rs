//! Amplitude amplification around the Impatient Learning measurement, plus
//! plain Grover search and the Grover + binary search hybrid for BIGSHIP.

mod rng;

pub use rng::SplitMix64;

use crate::concepts::{equivalence_oracle, membership_oracle, ConceptFamily, FamilyTag, PhaseOracle};
use crate::error::{Error, Result};
use crate::measurement::{impatient_transform, MeasurementPlan};
use crate::numkit::{dft_in_place, dft_matrix, wht_in_place, Direction, Matrix};
use crate::scalar::{cone, czero, Real, C};

/// `θ = arcsin s` and `m = ⌊π/(4θ) − 1/2⌉` (ties round up).
pub fn iteration_count<T: Real>(s: T) -> Result<(T, u64)> {
    // NaN falls through to the error as well.
    if s.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::ZeroAmplitude(s.to_f64().unwrap_or(f64::NAN)));
    }
    let theta = s.min(T::one()).asin();
    let m = round_half_up(T::PI() / (T::lit(4.0) * theta) - T::lit(0.5)).max(T::zero());
    Ok((theta, m.to_u64().unwrap_or(u64::MAX)))
}

#[inline]
fn round_half_up<T: Real>(x: T) -> T {
    (x + T::lit(0.5)).floor()
}

/// Outcome of Amplified Impatient Learning on one target.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplifyReport<T> {
    pub target: usize,
    /// `|B_c̄c̄|`.
    pub s: T,
    pub theta: T,
    pub m: u64,
    /// `sin²((2m+1)θ)`.
    pub predicted_success: T,
    /// `|⟨c̄|ψ⟩|²` from the simulated state.
    pub simulated_success: T,
    pub membership_queries: u64,
    pub equivalence_queries: u64,
    /// `|⟨c̄|ψ_k⟩|` after `k = 0, …, m` rounds.
    pub trajectory: Vec<T>,
}

/// Unitary preparing the equal superposition from `|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Preparation {
    InverseFourier,
    Hadamard,
}

impl Preparation {
    fn for_family(fam: &ConceptFamily, hypercube: bool) -> Self {
        match fam.tag() {
            FamilyTag::Bv { .. } | FamilyTag::Majority { .. } => Preparation::Hadamard,
            _ if hypercube => Preparation::Hadamard,
            _ => Preparation::InverseFourier,
        }
    }

    fn apply<T: Real>(self, v: &mut [C<T>]) -> Result<()> {
        match self {
            Preparation::InverseFourier => dft_in_place(v, Direction::Inverse),
            Preparation::Hadamard => wht_in_place::<T, C<T>>(v),
        }
    }

    fn apply_adjoint<T: Real>(self, v: &mut [C<T>]) -> Result<()> {
        match self {
            Preparation::InverseFourier => dft_in_place(v, Direction::Forward),
            Preparation::Hadamard => wht_in_place::<T, C<T>>(v),
        }
    }
}

/// `W = S·U_c̄·P` with the membership oracle inside.
struct LearningUnitary<'a, T> {
    plan: &'a MeasurementPlan<T>,
    membership: &'a PhaseOracle,
    prep: Preparation,
}

impl<T: Real> LearningUnitary<'_, T> {
    fn apply(&self, v: &mut Vec<C<T>>) -> Result<()> {
        self.prep.apply(v)?;
        self.membership.apply(v);
        *v = self.plan.transform.apply(v)?;
        Ok(())
    }

    fn apply_adjoint(&self, v: &mut Vec<C<T>>) -> Result<()> {
        *v = self.plan.transform.apply_adjoint(v)?;
        self.membership.apply(v);
        self.prep.apply_adjoint(v)
    }
}

/// Builds the measurement for `fam` and runs [`amplified_learn_with_plan`].
pub fn amplified_learn<T: Real>(fam: &ConceptFamily, target: usize) -> Result<AmplifyReport<T>> {
    let plan = impatient_transform::<T>(fam)?;
    amplified_learn_with_plan(fam, &plan, target)
}

/// Simulates `(W U_{δ0} W† U_{δ_c̄})^m W |0⟩` on a dense state vector.
///
/// Every `U_c̄` goes through a counted membership oracle and every `U_{δ_c̄}`
/// through a counted equivalence oracle, so the reported tallies are what the
/// simulation actually spent.
pub fn amplified_learn_with_plan<T: Real>(
    fam: &ConceptFamily,
    plan: &MeasurementPlan<T>,
    target: usize,
) -> Result<AmplifyReport<T>> {
    let n = fam.size();
    if plan.size() != n {
        return Err(Error::DimensionMismatch { expected: n, got: plan.size() });
    }
    if !plan.constant_diagonal {
        return Err(Error::NonConstantDiagonal(plan.diagonal_spread().to_f64().unwrap_or(f64::NAN)));
    }
    let membership = membership_oracle(fam, target)?;
    let equivalence = equivalence_oracle(fam, target)?;
    let s = plan.diagonal[target].norm();
    let (theta, m) = iteration_count(s)?;

    let w =
        LearningUnitary { plan, membership: &membership, prep: Preparation::for_family(fam, plan.symmetry.hypercube) };
    let mut psi = vec![czero::<T>(); n];
    psi[0] = cone();
    w.apply(&mut psi)?;
    let mut trajectory = vec![psi[target].norm()];
    for _ in 0..m {
        equivalence.apply(&mut psi);
        w.apply_adjoint(&mut psi)?;
        psi[0] = -psi[0];
        w.apply(&mut psi)?;
        trajectory.push(psi[target].norm());
    }

    let rotations = T::from_u64(2 * m + 1).unwrap_or_else(T::infinity);
    let predicted = (rotations * theta).sin().powi(2);
    Ok(AmplifyReport {
        target,
        s,
        theta,
        m,
        predicted_success: predicted,
        simulated_success: psi[target].norm_sqr(),
        membership_queries: membership.calls(),
        equivalence_queries: equivalence.calls(),
        trajectory,
    })
}

/// Largest `N` for [`grover_factorization_residual`].
pub const FACTORIZATION_CAP: usize = 64;

/// `max_c̄ ‖W_G U_{δ0} W_G† U_{δ_c̄} − (F† U_{δ0} F U_{δ_c̄})³‖_F` with
/// `W_G = F† U_{δ0} F U_{δ_c̄} F†`, from dense matrices.
pub fn grover_factorization_residual<T: Real>(n: usize) -> Result<T> {
    if n > FACTORIZATION_CAP {
        return Err(Error::DimensionCap { dim: n, cap: FACTORIZATION_CAP });
    }
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let f = dft_matrix::<T>(n);
    let f_adj = f.adjoint();
    let flip = |k: usize| {
        let mut d = vec![cone::<T>(); n];
        d[k] = -d[k];
        Matrix::diagonal(&d)
    };
    let u0 = flip(0);
    let reflect = f_adj.matmul(&u0)?.matmul(&f)?;
    let mut worst = T::zero();
    for target in 0..n {
        let uc = flip(target);
        let step = reflect.matmul(&uc)?;
        let w = step.matmul(&f_adj)?;
        let lhs = w.matmul(&u0)?.matmul(&w.adjoint())?.matmul(&uc)?;
        let rhs = step.matmul(&step)?.matmul(&step)?;
        worst = worst.max(lhs.sub(&rhs)?.frobenius_norm());
    }
    Ok(worst)
}

/// Result of [`grover_search`].
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome<T> {
    /// Sampled measurement outcome.
    pub found: usize,
    pub iterations: u64,
    pub theta: T,
    /// Probability of measuring a marked index, `sin²((2m+1)θ)` in exact arithmetic.
    pub success_probability: T,
    /// Phase-oracle applications made.
    pub oracle_applications: u64,
}

/// Amplitude amplification with `W = F†` over a marked set of known size.
///
/// `oracle` flips the phase of the marked indices; `marked_count` is `t`,
/// used to choose `θ = arcsin √(t/N)`. The final measurement is sampled with
/// [`SplitMix64`] seeded by `seed`.
pub fn grover_search<T: Real>(oracle: &PhaseOracle, marked_count: usize, seed: u64) -> Result<SearchOutcome<T>> {
    let n = oracle.len();
    if marked_count == 0 {
        return Err(Error::EmptyMarkedSet);
    }
    if marked_count > n {
        return Err(Error::BadParams(format!("{marked_count} marked indices in a domain of {n}")));
    }
    let ratio = T::from_usize_lossy(marked_count) / T::from_usize_lossy(n);
    let (theta, m) = iteration_count(ratio.sqrt())?;
    let before = oracle.calls();

    let mut psi = vec![czero::<T>(); n];
    psi[0] = cone();
    dft_in_place(&mut psi, Direction::Inverse)?;
    for _ in 0..m {
        oracle.apply(&mut psi);
        dft_in_place(&mut psi, Direction::Forward)?;
        psi[0] = -psi[0];
        dft_in_place(&mut psi, Direction::Inverse)?;
    }

    let probs: Vec<f64> = psi.iter().map(|z| z.norm_sqr().to_f64().unwrap_or(0.0)).collect();
    let success_probability = (0..n).filter(|&x| oracle.sign(x) < 0).map(|x| psi[x].norm_sqr()).sum();
    let found = sample_index(&probs, &mut SplitMix64::new(seed));
    Ok(SearchOutcome { found, iterations: m, theta, success_probability, oracle_applications: oracle.calls() - before })
}

/// Inverse-CDF sample; the total is renormalized so round-off cannot fall off the end.
fn sample_index(probs: &[f64], rng: &mut SplitMix64) -> usize {
    let total: f64 = probs.iter().sum();
    let u = rng.next_f64() * total;
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

/// Result of [`bigship_hybrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct HybridOutcome<T> {
    /// Recovered concept, or `None` when the Grover phase missed the window.
    pub found: Option<usize>,
    pub membership_queries: u64,
    /// Point returned by the Grover phase.
    pub sampled: usize,
    pub grover_iterations: u64,
    pub phase_one_success: T,
}

/// Grover search for any point of the hidden window, then a classical binary
/// search for its right end.
///
/// Query accounting: each amplification round is charged two membership
/// queries (a bit oracle turned into the phase oracle `U_χ` by
/// compute/uncompute), the verification of the sampled point one, and each
/// binary-search probe one, for `2m + 1 + ⌈log₂ d⌉` in total.
pub fn bigship_hybrid<T: Real>(fam: &ConceptFamily, target: &PhaseOracle, seed: u64) -> Result<HybridOutcome<T>> {
    let FamilyTag::Battleship { size, r } = fam.tag() else {
        return Err(Error::WrongFamily { expected: "battleship", got: fam.tag().name().to_string() });
    };
    if target.len() != size {
        return Err(Error::DimensionMismatch { expected: size, got: target.len() });
    }
    let d = 2 * r + 1;
    if d > 1 && 2 * d > size {
        return Err(Error::BadParams(format!(
            "binary search needs 2d <= N so the probe at offset d lies outside the window (d = {d}, N = {size})"
        )));
    }

    let search = grover_search::<T>(target, d, seed)?;
    let mut queries = 2 * search.iterations;
    let x0 = search.found;

    queries += 1;
    if !target.query(x0) {
        return Ok(HybridOutcome {
            found: None,
            membership_queries: queries,
            sampled: x0,
            grover_iterations: search.iterations,
            phase_one_success: search.success_probability,
        });
    }

    // Offsets 0..=lo are inside the window, hi is known to be outside.
    let (mut lo, mut hi) = (0usize, d);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        queries += 1;
        if target.query((x0 + mid) % size) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let right_end = (x0 + lo) % size;
    Ok(HybridOutcome {
        found: Some((right_end + size - r) % size),
        membership_queries: queries,
        sampled: x0,
        grover_iterations: search.iterations,
        phase_one_success: search.success_probability,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concepts::{build_family, FamilySpec, OracleKind};

    fn fam(spec: FamilySpec) -> ConceptFamily {
        build_family(&spec).unwrap()
    }

    #[test]
    fn iteration_count_examples() {
        let (theta, m) = iteration_count(1.0f64).unwrap();
        assert!((theta - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(m, 0);
        assert_eq!(iteration_count(0.6875f64).unwrap().1, 1);
        assert_eq!(iteration_count((3.0 - 4.0 / 1024.0) / 32.0f64).unwrap().1, 8);
        assert!(matches!(iteration_count(0.0f64), Err(Error::ZeroAmplitude(_))));
        assert!(matches!(iteration_count(-0.1f64), Err(Error::ZeroAmplitude(_))));
    }

    #[test]
    fn nearest_integer_ties_round_up() {
        assert_eq!(round_half_up(1.5f64), 2.0);
        assert_eq!(round_half_up(2.5f64), 3.0);
        assert_eq!(round_half_up(0.4999f64), 0.0);
        assert_eq!(round_half_up(-0.5f64), 0.0);
    }

    #[test]
    fn bv_needs_one_query() {
        let f = fam(FamilySpec::Bv { n: 4 });
        for a in [0, 5, 15] {
            let r = amplified_learn::<f64>(&f, a).unwrap();
            assert_eq!(r.m, 0);
            assert!((r.simulated_success - 1.0).abs() < 1e-12);
            assert_eq!((r.membership_queries, r.equivalence_queries), (1, 0));
        }
    }

    #[test]
    fn grover16() {
        let r = amplified_learn::<f64>(&fam(FamilySpec::Grover { size: 16 }), 5).unwrap();
        assert_eq!(r.m, 1);
        let expected = (3.0 * 0.6875f64.asin()).sin().powi(2);
        assert!((r.simulated_success - expected).abs() < 1e-12);
        assert!((r.simulated_success - 0.5817041397094724).abs() < 1e-12);
        assert_eq!((r.membership_queries, r.equivalence_queries), (3, 1));
    }

    #[test]
    fn battleship8() {
        let r = amplified_learn::<f64>(&fam(FamilySpec::Battleship { size: 8, r: 1 }), 2).unwrap();
        let s = (2.0 + 2f64.sqrt()) / 4.0;
        assert!((r.s - s).abs() < 1e-12);
        assert_eq!(r.m, 0);
        assert!((r.simulated_success - s * s).abs() < 1e-12);
        assert_eq!((r.membership_queries, r.equivalence_queries), (1, 0));
    }

    #[test]
    fn rotation_trajectory() {
        for spec in [FamilySpec::Grover { size: 64 }, FamilySpec::Grover { size: 45 }, FamilySpec::Majority { n: 8 }] {
            let f = fam(spec);
            let r = amplified_learn::<f64>(&f, 3).unwrap();
            assert_eq!(r.trajectory.len() as u64, r.m + 1);
            for (k, amp) in r.trajectory.iter().enumerate() {
                let expected = ((2 * k + 1) as f64 * r.theta).sin().abs();
                assert!((amp - expected).abs() < 1e-9);
            }
            assert!((r.simulated_success - r.predicted_success).abs() < 1e-9);
            assert!(r.simulated_success >= (1.0 - r.s * r.s).max(r.s * r.s) - 1e-9);
        }
    }

    #[test]
    fn rejects_non_constant_diagonal() {
        let t = crate::concepts::TruthTable::parse("4\n0000\n0001\n0010\n0100\n").unwrap();
        let f = fam(FamilySpec::Custom(t));
        assert!(matches!(amplified_learn::<f64>(&f, 0), Err(Error::NonConstantDiagonal(_))));
    }

    #[test]
    fn factorization_small() {
        assert!(grover_factorization_residual::<f64>(2).unwrap() <= 1e-12);
        assert!(grover_factorization_residual::<f64>(8).unwrap() <= 1e-10);
        assert!(matches!(grover_factorization_residual::<f64>(65), Err(Error::DimensionCap { .. })));
    }

    fn marked_oracle(n: usize, marked: &[usize]) -> PhaseOracle {
        PhaseOracle::from_flips(OracleKind::Membership { target: 0 }, (0..n).map(|x| marked.contains(&x)).collect())
    }

    #[test]
    fn search_examples() {
        let all: Vec<usize> = (0..8).collect();
        let out = grover_search::<f64>(&marked_oracle(8, &all), 8, 3).unwrap();
        assert_eq!(out.iterations, 0);
        assert!((out.success_probability - 1.0).abs() < 1e-12);

        let marked: Vec<usize> = (0..64).step_by(4).collect();
        let out = grover_search::<f64>(&marked_oracle(64, &marked), 16, 0).unwrap();
        assert_eq!(out.iterations, 1);
        assert!((out.theta - std::f64::consts::FRAC_PI_6).abs() < 1e-12);
        assert!((out.success_probability - 1.0).abs() < 1e-12);
        assert!(marked.contains(&out.found));
        assert_eq!(out.oracle_applications, 1);

        let out = grover_search::<f64>(&marked_oracle(256, &[77]), 1, 9).unwrap();
        assert_eq!(out.iterations, 12);
        let expected = (25.0 * (1.0f64 / 16.0).asin()).sin().powi(2);
        assert!((out.success_probability - expected).abs() < 1e-12);
        assert!((out.success_probability - 0.999947042).abs() < 1e-8);

        assert_eq!(grover_search::<f64>(&marked_oracle(4, &[]), 0, 0).unwrap_err(), Error::EmptyMarkedSet);
    }

    #[test]
    fn search_is_seed_deterministic() {
        let o = marked_oracle(32, &[3, 4, 5]);
        let a = grover_search::<f64>(&o, 3, 42).unwrap();
        let b = grover_search::<f64>(&o, 3, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hybrid_degenerate_window() {
        let f = fam(FamilySpec::Battleship { size: 64, r: 0 });
        let target = membership_oracle(&f, 17).unwrap();
        let out = bigship_hybrid::<f64>(&f, &target, 1).unwrap();
        let m = out.grover_iterations;
        assert_eq!(out.membership_queries, 2 * m + 1);
        if let Some(a) = out.found {
            assert_eq!(a, 17);
        }
    }

    #[test]
    fn hybrid_n256_d63() {
        let f = fam(FamilySpec::Battleship { size: 256, r: 31 });
        let target = membership_oracle(&f, 100).unwrap();
        let out = bigship_hybrid::<f64>(&f, &target, 7).unwrap();
        assert_eq!(out.grover_iterations, 1);
        assert!(out.membership_queries <= 2 + 1 + 6 + 1);
        if let Some(a) = out.found {
            assert_eq!(a, 100);
            assert_eq!(out.membership_queries, 2 + 1 + 6);
        }
    }

    #[test]
    fn hybrid_errors() {
        let g = fam(FamilySpec::Grover { size: 8 });
        let t = membership_oracle(&g, 0).unwrap();
        assert!(matches!(bigship_hybrid::<f64>(&g, &t, 0), Err(Error::WrongFamily { .. })));
        let wide = fam(FamilySpec::Battleship { size: 8, r: 2 });
        let t = membership_oracle(&wide, 0).unwrap();
        assert!(matches!(bigship_hybrid::<f64>(&wide, &t, 0), Err(Error::BadParams(_))));
    }
}
