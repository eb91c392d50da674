//! Cross-checks of the numerical core against nalgebra's decompositions.

use nalgebra::DMatrix;
use spectral_perturb::harness::{gaussian_matrix, random_frame, symmetric_noise, trial_rng};
use spectral_perturb::matrix_core::{
    frobenius_norm, kron, operator_norm, svd, sym_eig, sym_eigenvalues, vec, weyl_check,
    wielandt_hoffman_check,
};
use spectral_perturb::subspace::{
    principal_angles, procrustes_align, sin_theta_frobenius, SubspaceFrame,
};
use spectral_perturb::{DenseMatrix, SymmetricMatrix};

fn na(a: &DenseMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.rows(), a.cols(), a.as_slice())
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[test]
fn eigenvalues_match_oracle_seed_42() {
    let a = symmetric_noise(&mut trial_rng(42, 0), 6);
    let ours = sym_eig(&a).unwrap();
    let oracle = sorted_desc(
        na(a.as_dense())
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect(),
    );
    assert!(max_diff(&ours.eigenvalues, &oracle) < 1e-12);
    let residual = (&ours.reconstruct() - a.as_dense()).frobenius_norm();
    assert!(residual <= 1e-10 * a.as_dense().frobenius_norm().max(1.0));
}

#[test]
fn eigenvectors_span_oracle_eigenspaces() {
    for (trial, p) in [(0u64, 3usize), (1, 7), (2, 15), (3, 30)] {
        let a = symmetric_noise(&mut trial_rng(100, trial), p);
        let ours = sym_eig(&a).unwrap();
        let oracle = na(a.as_dense()).symmetric_eigen();
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by(|&i, &j| oracle.eigenvalues[j].total_cmp(&oracle.eigenvalues[i]));
        for (k, &j) in order.iter().enumerate() {
            let q = ours.eigenvectors.column(k);
            let o = oracle.eigenvectors.column(j);
            let overlap: f64 = q.iter().zip(o.iter()).map(|(x, y)| x * y).sum();
            assert!(
                (overlap.abs() - 1.0).abs() < 1e-9,
                "p={p} k={k} overlap={overlap}"
            );
        }
    }
}

#[test]
fn singular_values_match_oracle() {
    for (seed, p, q) in [(7u64, 5usize, 3usize), (8, 3, 5), (9, 12, 12), (10, 40, 17)] {
        let a = gaussian_matrix(&mut trial_rng(seed, 0), p, q);
        let ours = svd(&a).unwrap();
        let oracle = sorted_desc(na(&a).singular_values().iter().copied().collect());
        assert!(max_diff(&ours.singular_values, &oracle) < 1e-12 * oracle[0].max(1.0));
        let residual = (&ours.reconstruct() - &a).frobenius_norm();
        assert!(residual <= 1e-10 * a.frobenius_norm().max(1.0));
    }
}

#[test]
fn operator_norm_matches_oracle_seed_3() {
    let a = gaussian_matrix(&mut trial_rng(3, 0), 4, 6);
    let oracle = na(&a).singular_values().max();
    assert!((operator_norm(&a).unwrap() - oracle).abs() <= 1e-12 * oracle);
}

#[test]
fn frobenius_norm_of_diagonal_example() {
    let a = DenseMatrix::from_diag(&[-1.1, -1.1, 1.0, 1.0]);
    assert!((frobenius_norm(&a) - 4.42f64.sqrt()).abs() < 1e-15);
    assert!((frobenius_norm(&a) - na(&a).norm()).abs() < 1e-15);
}

#[test]
fn kron_vec_identity_seed_11() {
    let mut rng = trial_rng(11, 0);
    let a = gaussian_matrix(&mut rng, 3, 4);
    let b = gaussian_matrix(&mut rng, 4, 2);
    let c = gaussian_matrix(&mut rng, 2, 5);
    let lhs = vec(&a.matmul(&b).unwrap().matmul(&c).unwrap());
    let k = kron(&c.transpose(), &a).unwrap();
    let rhs = k.mul_vec(&vec(&b)).unwrap();
    assert!(max_diff(&lhs, &rhs) <= 1e-12);
    let oracle = na(&c.transpose()).kronecker(&na(&a));
    assert!((&na(&k) - &oracle).norm() == 0.0);
}

#[test]
fn weyl_and_wielandt_hoffman_seeds_9_and_13() {
    for seed in [9u64, 13] {
        let mut rng = trial_rng(seed, 0);
        let pop = symmetric_noise(&mut rng, 8);
        let noise = symmetric_noise(&mut rng, 8).scale(0.1);
        let samp = pop.sum(&noise).unwrap();
        let diff = na(noise.as_dense());
        let (pe, se) = (sym_eig(&pop).unwrap(), sym_eig(&samp).unwrap());
        let op = diff.singular_values().max();
        let w = weyl_check(&pe, &se, op).unwrap();
        let wh = wielandt_hoffman_check(&pe, &se, diff.norm()).unwrap();
        assert!(w.holds && wh.holds);
        let lp = sorted_desc(
            na(pop.as_dense())
                .symmetric_eigenvalues()
                .iter()
                .copied()
                .collect(),
        );
        let ls = sorted_desc(
            na(samp.as_dense())
                .symmetric_eigenvalues()
                .iter()
                .copied()
                .collect(),
        );
        assert!((w.lhs - max_diff(&lp, &ls)).abs() < 1e-12);
    }
}

#[test]
fn eigenvalue_only_path_agrees() {
    let a = symmetric_noise(&mut trial_rng(5, 5), 9);
    assert_eq!(
        sym_eigenvalues(&a).unwrap(),
        sym_eig(&a).unwrap().eigenvalues
    );
}

#[test]
fn principal_angles_match_oracle() {
    for (trial, p, d) in [(0u64, 6usize, 2usize), (1, 10, 3), (2, 20, 5), (3, 5, 1)] {
        let mut rng = trial_rng(55, trial);
        let vhat = random_frame(&mut rng, p, d);
        let v = random_frame(&mut rng, p, d);
        let (fh, f) = (
            SubspaceFrame::new(vhat.clone()).unwrap(),
            SubspaceFrame::new(v.clone()).unwrap(),
        );
        let set = principal_angles(&fh, &f).unwrap();
        let cos = sorted_desc(
            (na(&vhat).transpose() * na(&v))
                .singular_values()
                .iter()
                .copied()
                .collect(),
        );
        let angles: Vec<f64> = cos.iter().map(|c| c.min(1.0).acos()).collect();
        assert!(max_diff(&set.angles, &angles) < 1e-10);
        let sin_sq: f64 = cos.iter().map(|c| 1.0 - c * c).sum();
        assert!((sin_theta_frobenius(&fh, &f).unwrap() - sin_sq.sqrt()).abs() < 1e-10);
        let cos_sum: f64 = cos.iter().sum();
        let dist = procrustes_align(&fh, &f).unwrap().distance;
        assert!((dist * dist - (2.0 * d as f64 - 2.0 * cos_sum)).abs() < 1e-10);
    }
}

#[test]
fn symmetric_construction_rejects_asymmetry() {
    let a = DenseMatrix::from_rows(&[[1.0, 2.0], [2.1, 1.0]]).unwrap();
    assert!(SymmetricMatrix::new(a).is_err());
}
