//! End-to-end bound evaluations on seeded instances, with every quantity recomputed through
//! nalgebra.

use nalgebra::{DMatrix, SymmetricEigen};
use spectral_perturb::bounds::{
    classical_dk_bound, svd_variant_bounds, variant_bounds, BlockSelection, NormKind, Side,
    SvdInstance, SymmetricInstance,
};
use spectral_perturb::harness::{
    gen_rectangular, gen_spiked_symmetric, run_campaign, EnsembleSpec, Spectrum,
};
use spectral_perturb::{DenseMatrix, SymmetricMatrix};

fn na(a: &DenseMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.rows(), a.cols(), a.as_slice())
}

/// Eigenvalues descending with matching eigenvector columns.
fn sorted_eigen(a: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let SymmetricEigen {
        eigenvalues,
        eigenvectors,
    } = a.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eigenvalues[j].total_cmp(&eigenvalues[i]));
    let values = order.iter().map(|&i| eigenvalues[i]).collect();
    let vectors = DMatrix::from_columns(
        &order
            .iter()
            .map(|&i| eigenvectors.column(i))
            .collect::<Vec<_>>(),
    );
    (values, vectors)
}

fn sin_theta(vhat: &DMatrix<f64>, v: &DMatrix<f64>) -> f64 {
    (vhat - v * (v.transpose() * vhat)).norm()
}

struct Oracle {
    sin: f64,
    variant: f64,
    sharp: f64,
}

fn symmetric_oracle(
    pop: &SymmetricMatrix<f64>,
    samp: &SymmetricMatrix<f64>,
    r: usize,
    s: usize,
) -> Oracle {
    let (a, b) = (na(pop.as_dense()), na(samp.as_dense()));
    let (lam, v) = sorted_eigen(&a);
    let (_, vh) = sorted_eigen(&b);
    let d = s - r + 1;
    let v = v.columns(r - 1, d).into_owned();
    let vh = vh.columns(r - 1, d).into_owned();
    let at = |j: usize| {
        if j == 0 {
            f64::INFINITY
        } else if j > lam.len() {
            f64::NEG_INFINITY
        } else {
            lam[j - 1]
        }
    };
    let gap = (at(r - 1) - at(r)).min(at(s) - at(s + 1));
    let diff = &b - &a;
    let numerator = ((d as f64).sqrt() * diff.singular_values().max()).min(diff.norm());
    let lambda = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&lam[r - 1..s]));
    let residual = (&vh * lambda - &a * &vh).norm();
    Oracle {
        sin: sin_theta(&vh, &v),
        variant: 2.0 * numerator / gap,
        sharp: residual / gap,
    }
}

fn spiked(p: usize, spectrum: Vec<f64>, noise: f64, seed: u64) -> EnsembleSpec {
    EnsembleSpec::spiked(
        p,
        Spectrum::Explicit(spectrum),
        noise,
        1,
        seed,
        BlockSelection { r: 1, s: 1 },
    )
}

#[test]
fn spiked_trial_seed_1_matches_oracle() {
    let (pop, samp) =
        gen_spiked_symmetric(&spiked(4, vec![5.0, 1.0, 1.0, 1.0], 0.01, 1), 0).unwrap();
    let report = variant_bounds(&pop, &samp, BlockSelection { r: 1, s: 1 }).unwrap();
    let o = symmetric_oracle(&pop, &samp, 1, 1);
    let c = report.variant_sin.check().unwrap();
    assert!((c.observed - o.sin).abs() < 1e-10);
    assert!((c.bound - o.variant).abs() < 1e-10 * o.variant);
    assert!(c.holds && o.sin <= o.variant);
}

#[test]
fn sharp_bound_seed_23_matches_oracle() {
    let (pop, samp) = gen_spiked_symmetric(&spiked(8, vec![6.0, 4.0, 1.0], 0.05, 23), 0).unwrap();
    let sel = BlockSelection { r: 1, s: 2 };
    let sharp = SymmetricInstance::new(pop.clone(), samp.clone())
        .unwrap()
        .sharp_numerator(sel)
        .unwrap();
    let o = symmetric_oracle(&pop, &samp, 1, 2);
    assert!((sharp.sin_theta.bound - o.sharp).abs() < 1e-10 * o.sharp.max(1.0));
    assert!(sharp.sin_theta.holds && o.sin <= o.sharp);
}

#[test]
fn bound_ordering_seed_29() {
    let (pop, samp) =
        gen_spiked_symmetric(&spiked(10, vec![8.0, 5.0, 3.0, 1.0], 0.1, 29), 0).unwrap();
    for (r, s) in [(1, 1), (2, 3), (1, 3)] {
        let o = symmetric_oracle(&pop, &samp, r, s);
        assert!(
            o.sin <= o.sharp + 1e-12 && o.sharp <= o.variant + 1e-12,
            "({r},{s})"
        );
        let report = SymmetricInstance::new(pop.clone(), samp.clone())
            .unwrap()
            .report(BlockSelection { r, s })
            .unwrap();
        let sharp = report.sharp_numerator_sin.check().unwrap();
        let variant = report.variant_sin.check().unwrap();
        assert!(sharp.observed <= sharp.bound && sharp.bound <= variant.bound);
        assert!((variant.bound - o.variant).abs() < 1e-10 * o.variant);
    }
}

#[test]
fn classical_bound_two_point_instance() {
    let pop = SymmetricMatrix::from_diag(&[3.0, 1.0]);
    let samp = SymmetricMatrix::from_diag(&[2.9, 1.1]);
    let a = classical_dk_bound(
        &pop,
        &samp,
        BlockSelection { r: 1, s: 1 },
        NormKind::Frobenius,
    )
    .unwrap();
    let c = a.check().unwrap();
    assert!((c.bound - 0.02f64.sqrt() / 1.9).abs() < 1e-15);
    assert_eq!(c.observed, 0.0);
}

fn svd_oracle(pop: &DenseMatrix<f64>, samp: &DenseMatrix<f64>, side: Side) -> (f64, f64, f64) {
    let (a, b) = (na(pop), na(samp));
    let gram = |m: &DMatrix<f64>| match side {
        Side::Right => m.transpose() * m,
        Side::Left => m * m.transpose(),
    };
    let (lam, v) = sorted_eigen(&gram(&a));
    let (_, vh) = sorted_eigen(&gram(&b));
    let sin = sin_theta(
        &vh.columns(0, 1).into_owned(),
        &v.columns(0, 1).into_owned(),
    );
    let diff = &b - &a;
    let sigma1 = lam[0].sqrt();
    let op = diff.singular_values().max();
    let gap = lam[0] - lam[1];
    let factored = 2.0 * (2.0 * sigma1 + op) * op.min(diff.norm()) / gap;
    let g = gram(&b) - gram(&a);
    let reduction = 2.0 * g.singular_values().max().min(g.norm()) / gap;
    (sin, factored, reduction)
}

#[test]
fn singular_bounds_seed_31_match_oracle() {
    let spec = EnsembleSpec::rectangular(
        6,
        4,
        Spectrum::Explicit(vec![3.0, 2.0, 1.0, 0.5]),
        0.05,
        1,
        31,
        BlockSelection { r: 1, s: 1 },
    );
    let (pop, samp) = gen_rectangular(&spec, 0).unwrap();
    for side in [Side::Right, Side::Left] {
        let report = svd_variant_bounds(&pop, &samp, BlockSelection { r: 1, s: 1 }, side).unwrap();
        let (sin, factored, reduction) = svd_oracle(&pop, &samp, side);
        let c = report.sin_theta.check().unwrap();
        assert!((c.observed - sin).abs() < 1e-10, "{side:?}");
        assert!((c.bound - factored).abs() < 1e-10 * factored, "{side:?}");
        let red = report.reduction_sin_theta.check().unwrap();
        assert!(
            (red.bound - reduction).abs() < 1e-10 * reduction,
            "{side:?}"
        );
        assert!(sin <= reduction && reduction <= factored);
    }
}

#[test]
fn singular_pipeline_seed_2() {
    let spec = EnsembleSpec::rectangular(
        5,
        3,
        Spectrum::Explicit(vec![3.0, 1.0]),
        0.01,
        1,
        2,
        BlockSelection { r: 1, s: 1 },
    );
    let (pop, samp) = gen_rectangular(&spec, 0).unwrap();
    let inst = SvdInstance::new(pop.clone(), samp.clone()).unwrap();
    for side in [Side::Right, Side::Left] {
        let report = inst.report(BlockSelection { r: 1, s: 1 }, side).unwrap();
        assert!(report.violations().is_empty());
        let (sin, factored, _) = svd_oracle(&pop, &samp, side);
        assert!(sin <= factored);
        assert!((report.sin_theta.check().unwrap().observed - sin).abs() < 1e-10);
    }
}

#[test]
fn small_spiked_campaign_seed_7_has_no_violations() {
    let spec = EnsembleSpec::spiked(
        5,
        Spectrum::Explicit(vec![5.0, 1.0]),
        0.05,
        100,
        7,
        BlockSelection { r: 1, s: 1 },
    );
    let campaign = run_campaign(&spec, 2).unwrap();
    assert_eq!(campaign.summary.violations, 0);
    assert_eq!(campaign.records.len(), 100);
    for (i, rec) in campaign.records.iter().enumerate() {
        assert_eq!(rec.trial_index, i as u64);
        let (pop, samp) = gen_spiked_symmetric(&spec, i as u64).unwrap();
        let o = symmetric_oracle(&pop, &samp, 1, 1);
        assert!(o.sin <= o.sharp + 1e-12 && o.sharp <= o.variant + 1e-12);
    }
}
