use super::{dot, norm2, DenseMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Orthonormal basis of the orthogonal complement of an orthonormal-column frame.
///
/// For a `p×d` input with `d < p` the result is `p×(p−d)`. Columns are built by pivoted
/// Gram–Schmidt over the standard basis: at every step the identity column with the largest
/// residual after projection is taken (lowest index on ties) and orthogonalized twice.
pub fn orthonormal_complement<T: Scalar>(v: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let (p, d) = v.shape();
    if d >= p {
        return Err(Error::EmptyComplement);
    }
    let residual = v.orthonormality_residual();
    if residual > T::tol_frame() {
        return Err(Error::NotOrthonormal {
            residual: residual.as_f64(),
        });
    }
    Ok(complete_orthonormal_basis(v, d, p - d))
}

/// Appends `count` orthonormal columns orthogonal to the first `known` columns of `basis`.
pub(crate) fn complete_orthonormal_basis<T: Scalar>(
    basis: &DenseMatrix<T>,
    known: usize,
    count: usize,
) -> DenseMatrix<T> {
    let p = basis.rows();
    let mut frame: Vec<Vec<T>> = (0..known).map(|j| basis.column(j)).collect();
    let mut used = vec![false; p];
    let mut out = DenseMatrix::zeros(p, count);

    for k in 0..count {
        let mut best: Option<(usize, Vec<T>, T)> = None;
        for (e, taken) in used.iter().enumerate() {
            if *taken {
                continue;
            }
            let mut r: Vec<T> = (0..p)
                .map(|i| if i == e { T::one() } else { T::zero() })
                .collect();
            project_out(&mut r, &frame);
            let n = norm2(&r);
            if best.as_ref().is_none_or(|(_, _, bn)| n > *bn) {
                best = Some((e, r, n));
            }
        }
        let (e, mut r, _) = best.expect("complement dimension is positive");
        used[e] = true;
        project_out(&mut r, &frame);
        let n = norm2(&r);
        for x in r.iter_mut() {
            *x /= n;
        }
        out.set_column(k, &r);
        frame.push(r);
    }
    out
}

fn project_out<T: Scalar>(r: &mut [T], frame: &[Vec<T>]) {
    for f in frame {
        let c = dot(f, r);
        for (x, &y) in r.iter_mut().zip(f) {
            *x -= c * y;
        }
    }
}
