#![allow(dead_code)]

use num_complex::Complex64;
use qclearn::amplify::SplitMix64;
use qclearn::ComplexMatrix;

/// Standard normal pair by Box-Muller.
fn gaussian_pair(rng: &mut SplitMix64) -> (f64, f64) {
    let u1 = 1.0 - rng.next_f64();
    let u2 = rng.next_f64();
    let r = (-2.0 * u1.ln()).sqrt();
    let t = std::f64::consts::TAU * u2;
    (r * t.cos(), r * t.sin())
}

/// Haar-distributed unitary: Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary(n: usize, rng: &mut SplitMix64) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let (a, b) = gaussian_pair(rng);
                    Complex64::new(a, b)
                })
                .collect()
        })
        .collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            let (done, rest) = cols.split_at_mut(j);
            for (z, v) in rest[0].iter_mut().zip(&done[k]) {
                *z -= proj * v;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    ComplexMatrix::from_columns(&cols).unwrap()
}

/// Random skew-Hermitian matrix with unit Frobenius norm.
pub fn random_skew_hermitian(n: usize, rng: &mut SplitMix64) -> ComplexMatrix {
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        let (a, _) = gaussian_pair(rng);
        entries[i * n + i] = Complex64::new(0.0, a);
        for j in i + 1..n {
            let (a, b) = gaussian_pair(rng);
            entries[i * n + j] = Complex64::new(a, b);
            entries[j * n + i] = Complex64::new(-a, b);
        }
    }
    let norm = entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    entries.iter_mut().for_each(|z| *z /= norm);
    ComplexMatrix::from_vec(n, n, entries).unwrap()
}

/// Sorts complex values by real then imaginary part, for multiset comparison.
pub fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

/// Largest pairwise distance between two sorted multisets.
pub fn multiset_distance(a: Vec<Complex64>, b: Vec<Complex64>) -> f64 {
    assert_eq!(a.len(), b.len());
    sorted(a).iter().zip(sorted(b).iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
