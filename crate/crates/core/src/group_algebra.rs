//! Group-algebra elements of `Z_N` and `Z_2^n`.
//!
//! A symbol `v` stands for `Σ_g v_g |g⟩`; its regular representation `L_v`
//! (left multiplication by `v`) is circulant for `Z_N` and a sum of
//! `X`-monomials for `Z_2^n`. Both are diagonalized by a fast transform, so
//! eigenvalues and products never need a dense matrix.

use crate::concepts::ConceptFamily;
use crate::error::{Error, Result};
use crate::numkit::{dft_in_place, wht_in_place, Basis, Direction, Matrix, Spectrum};
use crate::scalar::{creal, Real, C};

/// Largest regular representation that is materialized as a matrix.
pub const REGULAR_REP_CAP: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    /// `Z_N` under addition mod `N`.
    Cyclic(usize),
    /// `Z_2^n` under bitwise xor.
    Hypercube(u32),
}

impl Group {
    pub fn order(&self) -> usize {
        match *self {
            Group::Cyclic(n) => n,
            Group::Hypercube(n) => 1usize << n,
        }
    }

    /// `x − y` in the group.
    #[inline]
    pub fn difference(&self, x: usize, y: usize) -> usize {
        match *self {
            Group::Cyclic(n) => (x + n - y) % n,
            Group::Hypercube(_) => x ^ y,
        }
    }

    #[inline]
    pub fn sum(&self, x: usize, y: usize) -> usize {
        match *self {
            Group::Cyclic(n) => (x + y) % n,
            Group::Hypercube(_) => x ^ y,
        }
    }
}

fn check_width(group: Group) -> Result<()> {
    match group {
        Group::Hypercube(n) if n >= usize::BITS - 1 => {
            Err(Error::DimensionCap { dim: usize::MAX, cap: 1 << (usize::BITS - 2) })
        }
        _ => Ok(()),
    }
}

/// Real coefficient vector of a group-algebra element.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSymbol<T> {
    group: Group,
    coeffs: Vec<T>,
}

impl<T: Real> GroupSymbol<T> {
    pub fn new(group: Group, coeffs: Vec<T>) -> Result<Self> {
        check_width(group)?;
        let order = group.order();
        if order == 0 {
            return Err(Error::EmptyInput);
        }
        if coeffs.len() != order {
            return Err(Error::DimensionMismatch { expected: order, got: coeffs.len() });
        }
        Ok(Self { group, coeffs })
    }

    /// The basis element `|g⟩`, whose regular representation is the shift `L_g`.
    pub fn delta(group: Group, g: usize) -> Result<Self> {
        check_width(group)?;
        let mut coeffs = vec![T::zero(); group.order()];
        if g >= coeffs.len() {
            return Err(Error::IndexOutOfRange { index: g, size: coeffs.len() });
        }
        coeffs[g] = T::one();
        Self::new(group, coeffs)
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `L_v[x][y] = v_{x−y}`; first column is `v`, diagonal is `v_0`.
    pub fn regular_rep(&self) -> Result<Matrix<T>> {
        let n = self.order();
        if n > REGULAR_REP_CAP {
            return Err(Error::DimensionCap { dim: n, cap: REGULAR_REP_CAP });
        }
        Ok(Matrix::from_real_fn(n, n, |x, y| self.coeffs[self.group.difference(x, y)]))
    }

    /// Whether `L_v` is a symmetric matrix. Always true on the hypercube.
    pub fn is_symmetric(&self) -> bool {
        let n = self.order();
        (0..n).all(|k| self.coeffs[k] == self.coeffs[self.group.difference(0, k)])
    }

    /// Eigenvalues of `L_v` in transform order: `Σ_k v_k ω^{jk}` for `Z_N`,
    /// `Σ_b v_b (−1)^{b·c}` for `Z_2^n`.
    pub fn eigenvalues(&self) -> Spectrum<T> {
        let n = self.order();
        let root_n = T::from_usize_lossy(n).sqrt();
        let mut w: Vec<C<T>> = self.coeffs.iter().map(|&x| creal(x)).collect();
        let basis = match self.group {
            Group::Cyclic(_) => {
                dft_in_place(&mut w, Direction::Forward).expect("nonempty by construction");
                Basis::Dft
            }
            Group::Hypercube(_) => {
                wht_in_place::<T, C<T>>(&mut w).expect("power of two by construction");
                for z in w.iter_mut() {
                    z.im = T::zero();
                }
                Basis::Wht
            }
        };
        Spectrum::simple(w.into_iter().map(|z| z * root_n).collect(), basis)
    }

    /// Matrix-free `L_v u` (convolution through the transform).
    pub fn apply(&self, u: &[C<T>]) -> Result<Vec<C<T>>> {
        let spec = self.eigenvalues();
        let d: Vec<C<T>> = spec.eigenvalues().iter().map(|e| e.value).collect();
        spec.apply_diagonal(&d, u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Cyclic,
    Hypercube,
    None,
}

/// Result of [`detect_symmetry`].
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub cyclic: bool,
    pub hypercube: bool,
    /// `φ(k) = T[k][0]`, so that `c(x) = φ(c − x)`; set when any symmetry holds.
    pub phi: Option<Vec<bool>>,
}

impl SymmetryReport {
    /// Group used for transforms; the hypercube wins when both hold.
    pub fn kind(&self) -> Symmetry {
        if self.hypercube {
            Symmetry::Hypercube
        } else if self.cyclic {
            Symmetry::Cyclic
        } else {
            Symmetry::None
        }
    }

    pub fn group(&self, size: usize) -> Option<Group> {
        match self.kind() {
            Symmetry::Hypercube => Some(Group::Hypercube(size.trailing_zeros())),
            Symmetry::Cyclic => Some(Group::Cyclic(size)),
            Symmetry::None => None,
        }
    }
}

fn invariant_under(fam: &ConceptFamily, group: Group) -> bool {
    let n = fam.size();
    (0..n).all(|c| (0..n).all(|x| fam.value(c, x) == fam.value(group.difference(c, x), 0)))
}

/// Exact test of whether `c(x)` depends only on `c − x` in `Z_N` or `Z_2^n`.
pub fn detect_symmetry(fam: &ConceptFamily) -> SymmetryReport {
    let n = fam.size();
    let cyclic = invariant_under(fam, Group::Cyclic(n));
    let hypercube = n.is_power_of_two() && invariant_under(fam, Group::Hypercube(n.trailing_zeros()));
    let phi = (cyclic || hypercube).then(|| (0..n).map(|k| fam.value(k, 0)).collect());
    SymmetryReport { cyclic, hypercube, phi }
}

/// Symbol whose regular representation is the membership query matrix:
/// `v_x = (−1)^{c_0(x)} / √N`, the first column of `A`.
pub fn query_symbol<T: Real>(fam: &ConceptFamily, group: Group) -> Result<GroupSymbol<T>> {
    let n = fam.size();
    let k = T::one() / T::from_usize_lossy(n).sqrt();
    GroupSymbol::new(group, (0..n).map(|x| if fam.value(0, x) { -k } else { k }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concepts::{build_family, query_matrix, FamilySpec, TruthTable};
    use crate::numkit::hermitian_eig;
    use proptest::prelude::*;

    fn c(re: f64) -> C<f64> {
        C::new(re, 0.0)
    }

    #[test]
    fn z2_symbol_is_alpha_i_plus_beta_x() {
        let l = GroupSymbol::new(Group::Cyclic(2), vec![0.3, -1.2]).unwrap().regular_rep().unwrap();
        assert_eq!(l, Matrix::from_real_fn(2, 2, |i, j| if i == j { 0.3 } else { -1.2 }));
    }

    #[test]
    fn z4_generator_is_cyclic_shift() {
        let l = GroupSymbol::<f64>::delta(Group::Cyclic(4), 1).unwrap().regular_rep().unwrap();
        let expected = Matrix::from_real_fn(4, 4, |i, j| if i == (j + 1) % 4 { 1.0 } else { 0.0 });
        assert_eq!(l, expected);
        assert_eq!(l[(0, 3)], c(1.0));
    }

    #[test]
    fn hypercube_monomial_is_x_tensor_x() {
        let l = GroupSymbol::<f64>::delta(Group::Hypercube(2), 0b11).unwrap().regular_rep().unwrap();
        let expected = Matrix::from_real_fn(4, 4, |i, j| if i + j == 3 { 1.0 } else { 0.0 });
        assert_eq!(l, expected);
    }

    #[test]
    fn cyclic_delta_eigenvalues_are_roots_of_unity() {
        let spec = GroupSymbol::<f64>::delta(Group::Cyclic(3), 1).unwrap().eigenvalues();
        assert_eq!(spec.basis(), &Basis::Dft);
        let w = C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let expected = [c(1.0), w, w * w];
        for (e, x) in spec.eigenvalues().iter().zip(expected) {
            assert!((e.value - x).norm() < 1e-12);
        }
    }

    #[test]
    fn hypercube_eigenvalues() {
        let s = 0.5f64.sqrt();
        let spec = GroupSymbol::new(Group::Hypercube(1), vec![s, s]).unwrap().eigenvalues();
        let vals: Vec<f64> = spec.eigenvalues().iter().map(|e| e.value.re).collect();
        assert!((vals[0] - 2f64.sqrt()).abs() < 1e-12 && vals[1].abs() < 1e-12);
    }

    #[test]
    fn battleship_symbol_eigenvalues() {
        let fam = build_family(&FamilySpec::Battleship { size: 8, r: 1 }).unwrap();
        let spec = query_symbol::<f64>(&fam, Group::Cyclic(8)).unwrap().eigenvalues();
        let v = spec.eigenvalues();
        assert!((v[0].value.re - 2.0 / 8f64.sqrt()).abs() < 1e-12);
        assert!((v[1].value.re - (-1.0 - 0.5f64.sqrt())).abs() < 1e-12);
        assert!(spec.max_imag() < 1e-12);
    }

    #[test]
    fn symmetry_detection() {
        let bs = build_family(&FamilySpec::Battleship { size: 8, r: 1 }).unwrap();
        let rep = detect_symmetry(&bs);
        assert!(rep.cyclic && !rep.hypercube);
        assert_eq!(rep.kind(), Symmetry::Cyclic);
        let phi = rep.phi.unwrap();
        assert_eq!((0..8).filter(|&k| phi[k]).collect::<Vec<_>>(), vec![0, 1, 7]);

        let maj = build_family(&FamilySpec::Majority { n: 2 }).unwrap();
        let rep = detect_symmetry(&maj);
        assert_eq!(rep.kind(), Symmetry::Hypercube);
        let phi = rep.phi.unwrap();
        for (b, &bit) in phi.iter().enumerate() {
            assert_eq!(bit, b.count_ones() <= 1);
        }

        let grover = build_family(&FamilySpec::Grover { size: 8 }).unwrap();
        let rep = detect_symmetry(&grover);
        assert!(rep.cyclic && rep.hypercube);
        assert_eq!(rep.kind(), Symmetry::Hypercube);

        let mut rows: Vec<Vec<bool>> = (0..8).map(|a| (0..8).map(|x| bs.value(a, x)).collect()).collect();
        rows[3][6] = !rows[3][6];
        let broken = build_family(&FamilySpec::Custom(TruthTable::from_fn(8, |a, x| rows[a][x]))).unwrap();
        let rep = detect_symmetry(&broken);
        assert_eq!(rep.kind(), Symmetry::None);
        assert!(rep.phi.is_none());

        let bv = build_family(&FamilySpec::Bv { n: 3 }).unwrap();
        assert_eq!(detect_symmetry(&bv).kind(), Symmetry::None);
    }

    #[test]
    fn query_matrix_is_regular_rep_of_its_symbol() {
        for spec in [
            FamilySpec::Battleship { size: 12, r: 2 },
            FamilySpec::Majority { n: 4 },
            FamilySpec::Grover { size: 7 },
            // Asymmetric cyclic pattern.
            FamilySpec::Custom(TruthTable::from_fn(6, |c, x| matches!((c + 6 - x) % 6, 0 | 1))),
        ] {
            let fam = build_family(&spec).unwrap();
            let group = detect_symmetry(&fam).group(fam.size()).unwrap();
            let l = query_symbol::<f64>(&fam, group).unwrap().regular_rep().unwrap();
            let a = query_matrix::<f64>(&fam).unwrap();
            assert!(l.sub(&a).unwrap().frobenius_norm() < 1e-15, "{spec:?}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            GroupSymbol::new(Group::Cyclic(4), vec![1.0; 3]),
            Err(Error::DimensionMismatch { expected: 4, got: 3 })
        ));
        let big = GroupSymbol::<f64>::delta(Group::Cyclic(1024), 0).unwrap();
        assert!(matches!(big.regular_rep(), Err(Error::DimensionCap { .. })));
        assert!(GroupSymbol::<f64>::delta(Group::Hypercube(usize::BITS), 0).is_err());
        // Transforms are O(N) memory, so symbols outgrow concept tables.
        let wide = GroupSymbol::<f64>::delta(Group::Hypercube(14), 0).unwrap().eigenvalues();
        assert!(wide.eigenvalues().iter().all(|e| (e.value.re - 1.0).abs() < 1e-12));
        // Matrix-free path still works above the materialization cap.
        let u: Vec<C<f64>> = (0..1024).map(|k| c(k as f64)).collect();
        let shifted = GroupSymbol::<f64>::delta(Group::Cyclic(1024), 1).unwrap().apply(&u).unwrap();
        assert!((shifted[0] - c(1023.0)).norm() < 1e-9 && (shifted[5] - c(4.0)).norm() < 1e-9);
    }

    fn symbol(group: Group, seed: u64) -> GroupSymbol<f64> {
        let n = group.order();
        let coeffs = (0..n).map(|k| (((seed ^ (k as u64 * 0x9E37)) % 997) as f64) / 500.0 - 1.0).collect();
        GroupSymbol::new(group, coeffs).unwrap()
    }

    fn groups() -> impl Strategy<Value = Group> {
        prop_oneof![(1usize..=16).prop_map(Group::Cyclic), (0u32..=4).prop_map(Group::Hypercube)]
    }

    proptest! {
        #[test]
        fn regular_rep_structure(group in groups(), seed in any::<u64>()) {
            let sym = symbol(group, seed);
            let l = sym.regular_rep().unwrap();
            let n = sym.order();
            for x in 0..n {
                prop_assert_eq!(l[(x, 0)].re, sym.coeffs()[x]);
                prop_assert_eq!(l[(x, x)].re, sym.coeffs()[0]);
            }
            if let Group::Hypercube(_) = group {
                prop_assert_eq!(l.hermitian_residual(), 0.0);
            }
            for g in 0..n {
                let lg = GroupSymbol::<f64>::delta(group, g).unwrap().regular_rep().unwrap();
                let comm = lg.matmul(&l).unwrap().sub(&l.matmul(&lg).unwrap()).unwrap();
                prop_assert!(comm.frobenius_norm() <= 1e-12);
            }
            let u: Vec<C<f64>> = (0..n).map(|k| C::new(k as f64, 1.0)).collect();
            let dense = l.matvec(&u).unwrap();
            let free = sym.apply(&u).unwrap();
            for (a, b) in dense.iter().zip(&free) {
                prop_assert!((a - b).norm() < 1e-10);
            }
        }

        #[test]
        fn transform_eigenvalues_match_dense(group in groups(), seed in any::<u64>(), extra in 17usize..64) {
            let group = match group { Group::Cyclic(_) => Group::Cyclic(extra), g => g };
            let raw = symbol(group, seed);
            // Symmetrize so the dense eigensolver applies.
            let n = raw.order();
            let coeffs = (0..n).map(|k| raw.coeffs()[k] + raw.coeffs()[group.difference(0, k)]).collect();
            let sym = GroupSymbol::new(group, coeffs).unwrap();
            let fast = sym.eigenvalues();
            prop_assert!(fast.max_imag() < 1e-9);
            let dense = hermitian_eig(&sym.regular_rep().unwrap()).unwrap();
            let a = fast.sorted_real().unwrap();
            let b = dense.sorted_real().unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() < 1e-9);
            }
        }
    }
}
