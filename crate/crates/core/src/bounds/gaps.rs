use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Contiguous block of indices `r..=s` (1-based) into a nonincreasing spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSelection {
    pub r: usize,
    pub s: usize,
}

impl BlockSelection {
    /// Validates `1 ≤ r ≤ s ≤ dim`.
    pub fn new(r: usize, s: usize, dim: usize) -> Result<Self> {
        if r == 0 || r > s || s > dim {
            return Err(Error::InvalidSelection { r, s, dim });
        }
        Ok(Self { r, s })
    }

    pub fn single(j: usize, dim: usize) -> Result<Self> {
        Self::new(j, j, dim)
    }

    /// Block dimension `d = s − r + 1`.
    pub fn d(&self) -> usize {
        self.s - self.r + 1
    }

    pub fn check(&self, dim: usize) -> Result<()> {
        Self::new(self.r, self.s, dim).map(|_| ())
    }

    pub fn contains(&self, j: usize) -> bool {
        (self.r..=self.s).contains(&j)
    }
}

/// Eigen-gaps around a selected block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct GapInfo<T: Scalar> {
    /// `λ_{r−1} − λ_r`, `+∞` when `r = 1`.
    #[serde(with = "crate::serde_ext::extended")]
    pub upper_gap: T,
    /// `λ_s − λ_{s+1}`, `+∞` when `s = p`.
    #[serde(with = "crate::serde_ext::extended")]
    pub lower_gap: T,
    /// `min(upper_gap, lower_gap)`.
    #[serde(with = "crate::serde_ext::extended")]
    pub population_gap: T,
    /// Separation between the excluded sample eigenvalues and `[λ_s, λ_r]`, when computed.
    #[serde(with = "crate::serde_ext::extended_opt", default)]
    pub classical_delta: Option<T>,
}

impl<T: Scalar> GapInfo<T> {
    pub fn with_classical_delta(mut self, delta: T) -> Self {
        self.classical_delta = Some(delta);
        self
    }
}

pub(crate) fn check_nonincreasing<T: Scalar>(values: &[T]) -> Result<()> {
    match values.windows(2).position(|w| w[0] < w[1]) {
        Some(i) => Err(Error::NonMonotoneSpectrum { index: i + 1 }),
        None => Ok(()),
    }
}

/// Gaps `λ_{r−1} − λ_r` and `λ_s − λ_{s+1}` with `λ₀ := +∞` and `λ_{p+1} := −∞`.
pub fn population_gap<T: Scalar>(eigenvalues: &[T], sel: BlockSelection) -> Result<GapInfo<T>> {
    check_nonincreasing(eigenvalues)?;
    sel.check(eigenvalues.len())?;
    Ok(gaps_with_floor(eigenvalues, sel, T::neg_infinity()))
}

/// Gaps where every index past the end of `values` is treated as `below`.
pub(crate) fn gaps_with_floor<T: Scalar>(
    values: &[T],
    sel: BlockSelection,
    below: T,
) -> GapInfo<T> {
    let at = |j: usize| -> T {
        if j == 0 {
            T::infinity()
        } else if j > values.len() {
            below
        } else {
            values[j - 1]
        }
    };
    let upper_gap = at(sel.r - 1) - at(sel.r);
    let lower_gap = at(sel.s) - at(sel.s + 1);
    GapInfo {
        upper_gap,
        lower_gap,
        population_gap: upper_gap.min(lower_gap),
        classical_delta: None,
    }
}

/// Separation of the classical sin θ theorem: the distance from the interval `[λ_s, λ_r]` to
/// the nearest sample eigenvalue `λ̂_j` with `j ∉ {r, …, s}`; `+∞` when nothing is excluded.
///
/// The infimum over the interval is attained at an endpoint or is zero inside it, so a finite
/// minimum over the excluded sample eigenvalues is exact.
pub fn classical_delta<T: Scalar>(pop: &[T], samp: &[T], sel: BlockSelection) -> Result<T> {
    if pop.len() != samp.len() {
        return Err(Error::DimensionMismatch {
            op: "classical_delta",
            detail: format!(
                "{} population vs {} sample eigenvalues",
                pop.len(),
                samp.len()
            ),
        });
    }
    check_nonincreasing(pop)?;
    check_nonincreasing(samp)?;
    sel.check(pop.len())?;
    let hi = pop[sel.r - 1];
    let lo = pop[sel.s - 1];
    let delta = samp
        .iter()
        .enumerate()
        .filter(|(i, _)| !sel.contains(i + 1))
        .map(|(_, &x)| {
            if x > hi {
                x - hi
            } else if x < lo {
                lo - x
            } else {
                T::zero()
            }
        })
        .fold(T::infinity(), T::min);
    Ok(delta)
}
