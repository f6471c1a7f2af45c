//! Probability-bound calculators relating the spread threshold, the feature
//! dimension and the pixel count.
//!
//! These are the quantities the surface criterion carries with it: the tail
//! mass `N / epsilon`, its complement as a lower bound on surface membership,
//! the expected surface count `M / epsilon`, the admissible open interval
//! `(N, M)` for epsilon under the equal-likelihood idealization, and the
//! `sqrt(M)` ceiling both parameters share there. The pipeline reports them
//! and warns on violations; it never enforces them, because real images do
//! not satisfy the idealization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_features(n_features: usize) -> Result<()> {
    if n_features == 0 {
        return Err(Error::argument("feature count must be at least 1"));
    }
    Ok(())
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    // NaN fails this test too.
    if epsilon.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::argument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    Ok(())
}

/// Upper bound on the probability that a sample's covariance-scaled squared
/// deviation reaches `epsilon`: `min(1, N / epsilon)`.
pub fn tail_bound(n_features: usize, epsilon: f64) -> Result<f64> {
    check_features(n_features)?;
    check_epsilon(epsilon)?;
    Ok((n_features as f64 / epsilon).min(1.0))
}

/// Lower bound on the probability that a sample stays inside the surface:
/// `max(0, 1 - N / epsilon)`.
pub fn surface_lower_bound(n_features: usize, epsilon: f64) -> Result<f64> {
    check_features(n_features)?;
    check_epsilon(epsilon)?;
    Ok((1.0 - n_features as f64 / epsilon).max(0.0))
}

/// Sample size at which equally likely surfaces exactly exhaust the image:
/// `epsilon^2 / (epsilon - N)`. Requires `epsilon > N`, otherwise the
/// denominator vanishes or flips sign.
pub fn equal_likelihood_sample_size(epsilon: f64, n_features: usize) -> Result<f64> {
    check_features(n_features)?;
    check_epsilon(epsilon)?;
    if epsilon <= n_features as f64 {
        return Err(Error::domain(format!(
            "equal-likelihood sample size requires epsilon > feature count, got epsilon = {epsilon} with {n_features} features"
        )));
    }
    Ok(epsilon * epsilon / (epsilon - n_features as f64))
}

/// Open interval `(N, M)` in which epsilon must lie for equally likely
/// surfaces to be possible at all. Requires `M > N`.
pub fn epsilon_interval(n_features: usize, m_pixels: usize) -> Result<(f64, f64)> {
    check_features(n_features)?;
    if m_pixels <= n_features {
        return Err(Error::domain(format!(
            "the admissible epsilon interval is empty: pixel count {m_pixels} must exceed feature count {n_features}"
        )));
    }
    Ok((n_features as f64, m_pixels as f64))
}

/// Order of the largest epsilon (and feature count) an `M`-pixel image
/// admits under equal likelihood: `sqrt(M)`.
pub fn max_parameter_order(m_pixels: usize) -> f64 {
    (m_pixels as f64).sqrt()
}

/// Expected number of surfaces when each holds `epsilon` pixels: `M / epsilon`.
pub fn expected_surface_count(m_pixels: usize, epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    Ok(m_pixels as f64 / epsilon)
}

/// Everything the theory says about one `(N, M, epsilon)` configuration,
/// ready for serialization. The epsilon-dependent fields are absent when no
/// epsilon was supplied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n_features: usize,
    pub m_pixels: usize,
    pub epsilon: Option<f64>,
    pub tail_bound: Option<f64>,
    pub lower_bound: Option<f64>,
    pub expected_surfaces: Option<f64>,
    pub epsilon_interval: (f64, f64),
    pub max_order: f64,
}

impl BoundReport {
    pub fn new(n_features: usize, m_pixels: usize, epsilon: Option<f64>) -> Result<Self> {
        let interval = epsilon_interval(n_features, m_pixels)?;
        let (tail, lower, expected) = match epsilon {
            Some(eps) => (
                Some(tail_bound(n_features, eps)?),
                Some(surface_lower_bound(n_features, eps)?),
                Some(expected_surface_count(m_pixels, eps)?),
            ),
            None => (None, None, None),
        };
        Ok(BoundReport {
            n_features,
            m_pixels,
            epsilon,
            tail_bound: tail,
            lower_bound: lower,
            expected_surfaces: expected,
            epsilon_interval: interval,
            max_order: max_parameter_order(m_pixels),
        })
    }
}
