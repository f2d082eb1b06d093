//! Optimal single-query measurement: the transform `S` applied after one
//! membership query so that measuring in the computational basis identifies
//! the target concept with the largest average probability.
//!
//! Two routes produce the same `B = S·A`:
//!
//! * `GroupSign`: for group-symmetric families with a symmetric query matrix,
//!   `B = |A|` and `S = sign(A)`, both diagonal in the DFT/WHT basis.
//! * `GramSqrt`: in general, `B = √G` with `G = A†A` and `S = G^{-1/2} A†`
//!   (the square-root measurement), through the dense eigensolver.

use crate::concepts::{query_matrix, ConceptFamily, DENSE_MATRIX_CAP};
use crate::error::{Error, Result, Warning};
use crate::group_algebra::{detect_symmetry, query_symbol, SymmetryReport};
use crate::numkit::{hermitian_eig, Matrix, SpectralFn, Spectrum};
use crate::scalar::{creal, Real, C};

/// Linear operator kept either densely or as a function of a spectrum.
#[derive(Debug, Clone, PartialEq)]
pub enum Operator<T> {
    Dense(Matrix<T>),
    Spectral { spectrum: Spectrum<T>, f: SpectralFn },
}

impl<T: Real> Operator<T> {
    pub fn apply(&self, v: &[C<T>]) -> Result<Vec<C<T>>> {
        match self {
            Operator::Dense(m) => m.matvec(v),
            Operator::Spectral { spectrum, f } => spectrum.apply(*f, v),
        }
    }

    pub fn apply_adjoint(&self, v: &[C<T>]) -> Result<Vec<C<T>>> {
        match self {
            Operator::Dense(m) => m.adjoint().matvec(v),
            Operator::Spectral { spectrum, f } => spectrum.apply_adjoint(*f, v),
        }
    }

    /// Dense form; refused above [`DENSE_MATRIX_CAP`].
    pub fn to_matrix(&self) -> Result<Matrix<T>> {
        match self {
            Operator::Dense(m) => Ok(m.clone()),
            Operator::Spectral { spectrum, f } => {
                let n = usize::try_from(spectrum.dimension()).unwrap_or(usize::MAX);
                if n > DENSE_MATRIX_CAP {
                    return Err(Error::DimensionCap { dim: n, cap: DENSE_MATRIX_CAP });
                }
                spectrum.to_matrix(*f).map(|(m, _)| m)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanPath {
    GroupSign,
    GramSqrt,
}

/// The Impatient Learning measurement for a family.
#[derive(Debug, Clone)]
pub struct MeasurementPlan<T> {
    /// `S`, unitary.
    pub transform: Operator<T>,
    /// `B = S·A`.
    pub critical: Operator<T>,
    /// Diagonal of `B`.
    pub diagonal: Vec<C<T>>,
    /// `|B_cc|²`.
    pub per_concept_success: Vec<T>,
    pub avg_success: T,
    pub constant_diagonal: bool,
    pub path: PlanPath,
    pub warnings: Vec<Warning>,
    pub symmetry: SymmetryReport,
}

impl<T: Real> MeasurementPlan<T> {
    pub fn size(&self) -> usize {
        self.diagonal.len()
    }

    /// The common diagonal magnitude `s`, when the diagonal is constant.
    pub fn constant_amplitude(&self) -> Option<T> {
        self.constant_diagonal.then(|| self.diagonal[0].norm())
    }

    /// Spread `max − min` of `|B_cc|`.
    pub fn diagonal_spread(&self) -> T {
        diagonal_spread(&self.diagonal)
    }
}

fn diagonal_spread<T: Real>(diag: &[C<T>]) -> T {
    let mags = diag.iter().map(|z| z.norm());
    let (lo, hi) = mags.fold((T::infinity(), T::neg_infinity()), |(lo, hi), m| (lo.min(m), hi.max(m)));
    if diag.is_empty() {
        T::zero()
    } else {
        hi - lo
    }
}

/// Gram matrix `G = A†A`, computed exactly from Hamming distances:
/// `G[c][c'] = 1 − 2·hamming(c, c')/N`.
pub fn gram<T: Real>(fam: &ConceptFamily) -> Result<Matrix<T>> {
    let n = fam.size();
    if n > DENSE_MATRIX_CAP {
        return Err(Error::DimensionCap { dim: n, cap: DENSE_MATRIX_CAP });
    }
    let table = fam.table();
    let nf = T::from_usize_lossy(n);
    Ok(Matrix::from_real_fn(n, n, |c, c2| T::one() - T::lit(2.0) * T::from_usize_lossy(table.hamming(c, c2)) / nf))
}

/// Builds the optimal single-query measurement for `fam`.
pub fn impatient_transform<T: Real>(fam: &ConceptFamily) -> Result<MeasurementPlan<T>> {
    let symmetry = detect_symmetry(fam);
    let mut warnings = Vec::new();
    if let Some(group) = symmetry.group(fam.size()) {
        let symbol = query_symbol::<T>(fam, group)?;
        if symbol.is_symmetric() {
            return group_sign_plan(symbol.eigenvalues(), symmetry);
        }
        warnings.push(Warning::AsymmetricCirculant);
    }
    gram_sqrt_plan(fam, symmetry, warnings)
}

fn group_sign_plan<T: Real>(spectrum: Spectrum<T>, symmetry: SymmetryReport) -> Result<MeasurementPlan<T>> {
    // A is real symmetric here, so its spectrum is real; drop transform round-off.
    let values: Vec<C<T>> = spectrum.eigenvalues().iter().map(|e| creal(e.value.re)).collect();
    let spectrum = Spectrum::simple(values, spectrum.basis().clone());
    let (_, warnings) = spectrum.map_values(SpectralFn::Sign)?;
    let diagonal = spectrum.mapped_diagonal(SpectralFn::Abs)?;
    finish(
        Operator::Spectral { spectrum: spectrum.clone(), f: SpectralFn::Sign },
        Operator::Spectral { spectrum, f: SpectralFn::Abs },
        diagonal,
        PlanPath::GroupSign,
        warnings,
        symmetry,
    )
}

fn gram_sqrt_plan<T: Real>(
    fam: &ConceptFamily,
    symmetry: SymmetryReport,
    mut warnings: Vec<Warning>,
) -> Result<MeasurementPlan<T>> {
    let g = gram::<T>(fam)?;
    let a = query_matrix::<T>(fam)?;
    let n = fam.size();
    let is_diagonal = (0..n).all(|i| (0..n).all(|j| i == j || g[(i, j)].norm() == T::zero()));

    let (root, inv_root) = if is_diagonal {
        // G = I·diag; no eigensolver needed (the Hadamard-class case).
        let d = g.diag();
        let band = T::lit(T::ZERO_BAND) * d.iter().map(|z| z.re).fold(T::zero(), T::max);
        if let Some(z) = d.iter().find(|z| z.re <= band) {
            return Err(Error::SingularQueryMatrix(z.re.to_f64().unwrap_or(f64::NAN)));
        }
        let root: Vec<C<T>> = d.iter().map(|z| creal(z.re.sqrt())).collect();
        let inv: Vec<C<T>> = d.iter().map(|z| creal(T::one() / z.re.sqrt())).collect();
        (Matrix::diagonal(&root), Matrix::diagonal(&inv))
    } else {
        let spectrum = hermitian_eig(&g)?;
        let (inv_root, _) = spectrum.to_matrix(SpectralFn::InvSqrtPsd)?;
        let (root, _) = spectrum.to_matrix(SpectralFn::SqrtPsd)?;
        (root, inv_root)
    };
    let s = inv_root.matmul(&a.adjoint())?;
    let diagonal = root.diag();
    let spread = diagonal_spread(&diagonal);
    if spread > T::lit(T::DIAGONAL_TOL) {
        warnings.push(Warning::NonConstantDiagonal { spread: spread.to_f64().unwrap_or(f64::NAN) });
    }
    finish(Operator::Dense(s), Operator::Dense(root), diagonal, PlanPath::GramSqrt, warnings, symmetry)
}

fn finish<T: Real>(
    transform: Operator<T>,
    critical: Operator<T>,
    diagonal: Vec<C<T>>,
    path: PlanPath,
    warnings: Vec<Warning>,
    symmetry: SymmetryReport,
) -> Result<MeasurementPlan<T>> {
    let per_concept_success: Vec<T> = diagonal.iter().map(|z| z.norm_sqr()).collect();
    let avg_success = per_concept_success.iter().copied().sum::<T>() / T::from_usize_lossy(diagonal.len());
    let constant_diagonal = diagonal_spread(&diagonal) <= T::lit(T::DIAGONAL_TOL);
    Ok(MeasurementPlan {
        transform,
        critical,
        diagonal,
        per_concept_success,
        avg_success,
        constant_diagonal,
        path,
        warnings,
        symmetry,
    })
}

/// `‖B·d(B)† − d(B)·B†‖_F`; zero exactly at critical points of `‖d(B)‖²`
/// on the unitary orbit of `B`.
pub fn criticality_residual<T: Real>(b: &Matrix<T>) -> Result<T> {
    let n = b.require_square()?;
    let d = b.diag();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            let lhs = b[(i, j)] * d[j].conj();
            let rhs = d[i] * b[(j, i)].conj();
            acc += (lhs - rhs).norm_sqr();
        }
    }
    Ok(acc.sqrt())
}

/// Per-concept success `|B_cc|²` and their mean `‖d(B)‖²_F / N`.
pub fn success_profile<T: Real>(plan: &MeasurementPlan<T>) -> (Vec<T>, T) {
    (plan.per_concept_success.clone(), plan.avg_success)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concepts::{build_family, FamilySpec, TruthTable};
    use crate::numkit::wht_matrix;

    fn plan(spec: FamilySpec) -> MeasurementPlan<f64> {
        impatient_transform(&build_family(&spec).unwrap()).unwrap()
    }

    #[test]
    fn gram_examples() {
        let bv = build_family(&FamilySpec::Bv { n: 3 }).unwrap();
        assert_eq!(gram::<f64>(&bv).unwrap(), Matrix::identity(8));
        let g = gram::<f64>(&build_family(&FamilySpec::Grover { size: 8 }).unwrap()).unwrap();
        assert_eq!(g[(0, 0)].re, 1.0);
        assert_eq!(g[(2, 5)].re, 0.5);
        assert_eq!(gram::<f64>(&build_family(&FamilySpec::Grover { size: 4 }).unwrap()).unwrap(), Matrix::identity(4));
        let bs = gram::<f64>(&build_family(&FamilySpec::Battleship { size: 8, r: 1 }).unwrap()).unwrap();
        for a in 0..8 {
            assert_eq!(bs[(a, (a + 4) % 8)].re, -0.5);
        }
    }

    #[test]
    fn bv_plan_is_hadamard() {
        let p = plan(FamilySpec::Bv { n: 3 });
        assert_eq!(p.path, PlanPath::GramSqrt);
        let s = p.transform.to_matrix().unwrap();
        assert!(s.sub(&wht_matrix(8).unwrap()).unwrap().frobenius_norm() < 1e-14);
        assert!(p.critical.to_matrix().unwrap().sub(&Matrix::identity(8)).unwrap().frobenius_norm() < 1e-14);
        assert!(p.per_concept_success.iter().all(|&x| (x - 1.0).abs() < 1e-14));
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn grover_diagonal() {
        for n in [4usize, 7, 16, 24] {
            let p = plan(FamilySpec::Grover { size: n });
            assert_eq!(p.path, PlanPath::GroupSign);
            let expected = (3.0 - 4.0 / n as f64) / (n as f64).sqrt();
            assert!(p.diagonal.iter().all(|z| (z.re - expected).abs() < 1e-12 && z.im.abs() < 1e-12));
        }
        let p = plan(FamilySpec::Grover { size: 16 });
        assert!(p.per_concept_success.iter().all(|&x| (x - 0.47265625).abs() < 1e-12));
    }

    #[test]
    fn battleship_plan() {
        let p = plan(FamilySpec::Battleship { size: 8, r: 1 });
        let s = (2.0 + 2f64.sqrt()) / 4.0;
        assert!(p.constant_diagonal);
        assert!((p.constant_amplitude().unwrap() - s).abs() < 1e-12);
        assert!((p.avg_success - 0.7285533905932737).abs() < 1e-12);
        let b = p.critical.to_matrix().unwrap();
        assert!(criticality_residual(&b).unwrap() <= 1e-12);
    }

    #[test]
    fn group_path_agrees_with_gram_path() {
        for spec in
            [FamilySpec::Battleship { size: 11, r: 2 }, FamilySpec::Majority { n: 4 }, FamilySpec::Grover { size: 6 }]
        {
            let fam = build_family(&spec).unwrap();
            let group = impatient_transform::<f64>(&fam).unwrap();
            let dense = gram_sqrt_plan::<f64>(&fam, detect_symmetry(&fam), Vec::new()).unwrap();
            let a = query_matrix::<f64>(&fam).unwrap();
            for p in [&group, &dense] {
                let s = p.transform.to_matrix().unwrap();
                let b = p.critical.to_matrix().unwrap();
                assert!(s.unitarity_residual() < 1e-9);
                assert!(b.sub(&s.matmul(&a).unwrap()).unwrap().frobenius_norm() < 1e-10);
            }
            let gb = group.critical.to_matrix().unwrap();
            let db = dense.critical.to_matrix().unwrap();
            assert!(gb.sub(&db).unwrap().frobenius_norm() < 1e-9, "{spec:?}");
        }
    }

    #[test]
    fn asymmetric_cyclic_family_falls_back() {
        let t = TruthTable::from_fn(7, |c, x| matches!((c + 7 - x) % 7, 0 | 1));
        let p = plan(FamilySpec::Custom(t));
        assert_eq!(p.path, PlanPath::GramSqrt);
        assert!(p.warnings.contains(&Warning::AsymmetricCirculant));
    }

    #[test]
    fn non_constant_diagonal_is_flagged() {
        let t = TruthTable::parse("4\n0000\n0001\n0010\n0100\n").unwrap();
        let p = plan(FamilySpec::Custom(t));
        assert!(!p.constant_diagonal);
        assert!((p.diagonal[0].re - 0.75f64.sqrt()).abs() < 1e-9);
        assert!(p.warnings.iter().any(|w| matches!(w, Warning::NonConstantDiagonal { .. })));
        let s = p.transform.to_matrix().unwrap();
        assert!(s.unitarity_residual() < 1e-9);
    }

    #[test]
    fn singular_query_matrix() {
        // d = N/2 puts zeros in the battleship spectrum; the group path survives
        // with a zero-band warning and a unitary S.
        let fam = build_family(&FamilySpec::Battleship { size: 10, r: 2 }).unwrap();
        let p = impatient_transform::<f64>(&fam).unwrap();
        assert_eq!(p.path, PlanPath::GroupSign);
        assert!(p.warnings.iter().any(|w| matches!(w, Warning::ZeroBand { .. })));
        assert!(p.transform.to_matrix().unwrap().unitarity_residual() < 1e-12);
        // The dense route cannot invert.
        let err = gram_sqrt_plan::<f64>(&fam, detect_symmetry(&fam), Vec::new()).unwrap_err();
        assert!(matches!(err, Error::SingularQueryMatrix(_)));
        // Complementary concepts without symmetry: no fallback available.
        let t = TruthTable::parse("2\n00\n11\n").unwrap();
        let fam = build_family(&FamilySpec::Custom(t)).unwrap();
        assert!(matches!(impatient_transform::<f64>(&fam), Err(Error::SingularQueryMatrix(_))));
    }

    #[test]
    fn criticality_examples() {
        assert_eq!(criticality_residual(&Matrix::<f64>::identity(5)).unwrap(), 0.0);
        // A real symmetric matrix with constant diagonal is already critical.
        let a = query_matrix::<f64>(&build_family(&FamilySpec::Grover { size: 8 }).unwrap()).unwrap();
        assert!(criticality_residual(&a).unwrap() < 1e-15);
        // The Hadamard query matrix is not: its diagonal is (1, −1)/√2.
        let h = query_matrix::<f64>(&build_family(&FamilySpec::Bv { n: 1 }).unwrap()).unwrap();
        assert!((criticality_residual(&h).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert!(matches!(criticality_residual(&Matrix::<f64>::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn large_group_plan_stays_matrix_free() {
        let p = plan(FamilySpec::Grover { size: 4096 });
        assert_eq!(p.path, PlanPath::GroupSign);
        assert!(matches!(p.transform.to_matrix(), Err(Error::DimensionCap { .. })));
        let n = 4096.0f64;
        assert!((p.diagonal[17].re - (3.0 - 4.0 / n) / n.sqrt()).abs() < 1e-12);
    }
}
