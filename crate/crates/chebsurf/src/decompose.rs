//! Surface growth along the Hilbert curve.
//!
//! The decomposer walks the traversal order in two phases. A pair of
//! consecutive pixels whose cosine similarity clears the nearness threshold
//! seeds a surface; the surface then absorbs following curve pixels while the
//! covariance-scaled squared deviation of each candidate from the surface
//! mean stays below `epsilon`. A failed seed test emits a singleton surface.
//! The result is an ordered partition of the image: every pixel belongs to
//! exactly one surface and concatenating the surfaces reproduces the curve.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::curve_for_image;
use crate::image_io::ImageTensor;
use crate::numerics::{
    column_mean, column_variances, cosine_similarity, mahalanobis_sq, sample_covariance,
    svd_pseudoinverse, FeatureMatrix,
};

pub const DEFAULT_ZERO_VARIANCE_TOL: f64 = 1e-9;
pub const DEFAULT_ZERO_VARIANCE_ABS_TOL: f64 = 1e-6;

/// Which form of the spread criterion gates surface growth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    /// One evaluation of the full quadratic form against the surface
    /// covariance; captures cross-channel interaction.
    Multivariate,
    /// Independent per-dimension tests combined by majority vote.
    Univariate,
}

impl std::fmt::Display for Formulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Formulation::Multivariate => write!(f, "multivariate"),
            Formulation::Univariate => write!(f, "univariate"),
        }
    }
}

impl std::str::FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "multivariate" => Ok(Formulation::Multivariate),
            "univariate" => Ok(Formulation::Univariate),
            other => Err(Error::argument(format!(
                "unknown formulation `{other}` (expected `multivariate` or `univariate`)"
            ))),
        }
    }
}

/// Parameters controlling surface initialization and growth.
#[derive(Debug, Clone, PartialEq)]
pub struct DecomposeParams {
    /// Spread threshold: a candidate joins the surface while its
    /// covariance-scaled squared deviation stays below this value.
    pub epsilon: f64,
    /// Nearness threshold in `[0, 1]` for the cosine seed test.
    pub npar: f64,
    pub formulation: Formulation,
    /// Covariance traces at or below this are treated as degenerate
    /// (zero-variance) surfaces.
    pub zero_variance_tol: f64,
    /// Maximum per-channel deviation a degenerate surface still absorbs.
    pub zero_variance_abs_tol: f64,
    /// Disables the degenerate fallback so the raw pseudoinverse criterion
    /// decides everything, reproducing the reference behavior exactly.
    pub strict_paper: bool,
}

impl DecomposeParams {
    pub fn new(epsilon: f64, npar: f64) -> Result<Self> {
        let params = DecomposeParams {
            epsilon,
            npar,
            formulation: Formulation::Multivariate,
            zero_variance_tol: DEFAULT_ZERO_VARIANCE_TOL,
            zero_variance_abs_tol: DEFAULT_ZERO_VARIANCE_ABS_TOL,
            strict_paper: false,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_formulation(mut self, formulation: Formulation) -> Self {
        self.formulation = formulation;
        self
    }

    pub fn with_strict_paper(mut self, strict: bool) -> Self {
        self.strict_paper = strict;
        self
    }

    pub fn validate(&self) -> Result<()> {
        // NaN fails this test too.
        if self.epsilon.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::argument(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if !(0.0..=1.0).contains(&self.npar) {
            return Err(Error::argument(format!(
                "npar must lie in [0, 1], got {}",
                self.npar
            )));
        }
        if self.zero_variance_tol < 0.0 || self.zero_variance_abs_tol < 0.0 {
            return Err(Error::argument(
                "zero-variance tolerances must be nonnegative",
            ));
        }
        Ok(())
    }
}

/// A maximal run of consecutive curve pixels that passed the growth criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    /// Position in traversal order, 0-based.
    pub id: usize,
    /// Pixel coordinates in curve order.
    pub pixel_locs: Vec<(usize, usize)>,
    /// One column per pixel, in the same order as `pixel_locs`.
    pub features: FeatureMatrix,
    /// Mean of `features` across columns; the surface's feature vector.
    pub mean_feature: Vec<f64>,
}

impl Surface {
    pub fn len(&self) -> usize {
        self.pixel_locs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixel_locs.is_empty()
    }
}

/// The ordered partition of an image into surfaces.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub surfaces: Vec<Surface>,
    pub params: DecomposeParams,
    pub height: usize,
    pub width: usize,
    pub n_features: usize,
}

impl Decomposition {
    pub fn n_pixels(&self) -> usize {
        self.height * self.width
    }

    /// Pixels per surface; the sample-size reduction achieved.
    pub fn reduction_factor(&self) -> f64 {
        self.n_pixels() as f64 / self.surfaces.len() as f64
    }

    /// Checks the structural invariants: surfaces are non-empty, disjoint,
    /// cover the image, follow the curve order, and carry consistent means.
    pub fn validate(&self) -> Result<()> {
        let curve = curve_for_image(self.height, self.width)?;
        let mut cursor = 0usize;
        for (idx, surface) in self.surfaces.iter().enumerate() {
            if surface.id != idx {
                return Err(Error::Invariant(format!(
                    "surface at position {idx} carries id {}",
                    surface.id
                )));
            }
            if surface.pixel_locs.is_empty() {
                return Err(Error::Invariant(format!("surface {idx} is empty")));
            }
            if surface.features.n_cols() != surface.pixel_locs.len() {
                return Err(Error::Invariant(format!(
                    "surface {idx} has {} pixels but {} feature columns",
                    surface.pixel_locs.len(),
                    surface.features.n_cols()
                )));
            }
            for &loc in &surface.pixel_locs {
                if cursor >= curve.len() || curve[cursor] != loc {
                    return Err(Error::Invariant(format!(
                        "surface {idx} pixel {loc:?} breaks the curve order (or repeats a pixel)"
                    )));
                }
                cursor += 1;
            }
            let mean = column_mean(&surface.features)?;
            if mean != surface.mean_feature {
                return Err(Error::Invariant(format!(
                    "surface {idx} mean feature does not match its pixels"
                )));
            }
        }
        if cursor != curve.len() {
            return Err(Error::Invariant(format!(
                "decomposition covers {cursor} of {} pixels",
                curve.len()
            )));
        }
        Ok(())
    }
}

/// Seed test: do two consecutive pixels start a surface?
///
/// True when the absolute cosine similarity reaches `npar`.
pub fn initialize_pair(u: &[f64], v: &[f64], npar: f64) -> Result<bool> {
    Ok(cosine_similarity(u, v)?.abs() >= npar)
}

/// Growth test, multivariate form.
///
/// A degenerate surface (covariance trace at or below `zero_variance_tol`)
/// would make the pseudoinverse criterion evaluate to `0 < epsilon` for any
/// candidate whatsoever, so unless `strict_paper` is set such surfaces only
/// absorb near-exact matches (max-norm deviation within
/// `zero_variance_abs_tol`).
pub fn accept_multivariate(
    surface: &FeatureMatrix,
    candidate: &[f64],
    params: &DecomposeParams,
) -> Result<bool> {
    check_growth_args(surface, candidate)?;
    let mean = column_mean(surface)?;
    let dev: Vec<f64> = candidate.iter().zip(&mean).map(|(c, m)| c - m).collect();
    if !params.strict_paper {
        // The variances are the covariance diagonal, so this trace test is
        // exact; it just skips the off-diagonal work on the (common)
        // degenerate path.
        let trace: f64 = column_variances(surface)?.iter().sum();
        if trace <= params.zero_variance_tol {
            let max_dev = dev.iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
            return Ok(max_dev <= params.zero_variance_abs_tol);
        }
    }
    let cov = sample_covariance(surface)?;
    let criterion = mahalanobis_sq(&dev, &svd_pseudoinverse(&cov)?)?;
    Ok(criterion < params.epsilon)
}

/// Growth test, univariate form: each dimension votes `|dev| < epsilon *
/// sigma` on its own sample standard deviation, and the candidate is accepted
/// on a strict majority.
///
/// A zero-variance dimension votes yes only on a near-exact match (within
/// `zero_variance_abs_tol`); under `strict_paper` it always votes no, which
/// is what the raw comparison `|dev| < 0` does.
pub fn accept_univariate(
    surface: &FeatureMatrix,
    candidate: &[f64],
    params: &DecomposeParams,
) -> Result<bool> {
    check_growth_args(surface, candidate)?;
    let mean = column_mean(surface)?;
    let variances = column_variances(surface)?;
    let n_dims = surface.n_dims();
    let mut yes_votes = 0usize;
    for j in 0..n_dims {
        let sigma = variances[j].sqrt();
        let dev = (candidate[j] - mean[j]).abs();
        let vote = if sigma == 0.0 {
            !params.strict_paper && dev <= params.zero_variance_abs_tol
        } else {
            dev < params.epsilon * sigma
        };
        if vote {
            yes_votes += 1;
        }
    }
    Ok(2 * yes_votes > n_dims)
}

fn check_growth_args(surface: &FeatureMatrix, candidate: &[f64]) -> Result<()> {
    if surface.n_cols() < 2 {
        return Err(Error::argument(
            "growth tests need a surface of at least two pixels",
        ));
    }
    if candidate.len() != surface.n_dims() {
        return Err(Error::argument(format!(
            "candidate has {} features but the surface has {}",
            candidate.len(),
            surface.n_dims()
        )));
    }
    Ok(())
}

/// Decomposes an image into bounded surfaces along the Hilbert traversal.
///
/// Pure function: identical inputs produce identical output. Decomposing
/// different images concurrently is safe.
pub fn decompose(image: &ImageTensor, params: &DecomposeParams) -> Result<Decomposition> {
    params.validate()?;
    let n_features = image.n_features();
    if params.epsilon <= n_features as f64 {
        log::warn!(
            "epsilon {} is at or below the feature count {}; the tail bound is vacuous and surfaces may degenerate to singletons",
            params.epsilon,
            n_features
        );
    }
    let curve = curve_for_image(image.height(), image.width())?;
    let accept = match params.formulation {
        Formulation::Multivariate => accept_multivariate,
        Formulation::Univariate => accept_univariate,
    };

    let mut surfaces = Vec::new();
    let mut start = 0usize;
    while start < curve.len() {
        // A trailing point with no partner becomes a singleton.
        if start + 1 == curve.len() {
            surfaces.push(make_surface(
                surfaces.len(),
                &curve.points()[start..=start],
                image,
            )?);
            break;
        }
        let u = image.pixel_at(curve[start]);
        let v = image.pixel_at(curve[start + 1]);
        if !initialize_pair(u, v, params.npar)? {
            surfaces.push(make_surface(
                surfaces.len(),
                &curve.points()[start..=start],
                image,
            )?);
            start += 1;
            continue;
        }
        // The pair forms a surface; keep absorbing curve pixels while the
        // growth criterion holds.
        let mut features = FeatureMatrix::with_dims(n_features)?;
        features.push_column(u)?;
        features.push_column(v)?;
        let mut end = start + 2;
        while end < curve.len() {
            let candidate = image.pixel_at(curve[end]);
            if !accept(&features, candidate, params)? {
                break;
            }
            features.push_column(candidate)?;
            end += 1;
        }
        let mean_feature = column_mean(&features)?;
        surfaces.push(Surface {
            id: surfaces.len(),
            pixel_locs: curve.points()[start..end].to_vec(),
            features,
            mean_feature,
        });
        start = end;
    }

    Ok(Decomposition {
        surfaces,
        params: params.clone(),
        height: image.height(),
        width: image.width(),
        n_features,
    })
}

fn make_surface(id: usize, locs: &[(usize, usize)], image: &ImageTensor) -> Result<Surface> {
    let mut features = FeatureMatrix::with_dims(image.n_features())?;
    for &loc in locs {
        features.push_column(image.pixel_at(loc))?;
    }
    let mean_feature = column_mean(&features)?;
    Ok(Surface {
        id,
        pixel_locs: locs.to_vec(),
        features,
        mean_feature,
    })
}

/// One column per surface: each surface's mean feature, in surface order.
/// This is the matrix the clustering stage consumes.
pub fn surface_features(d: &Decomposition) -> FeatureMatrix {
    let mut m = FeatureMatrix::with_dims(d.n_features).expect("decomposition has features");
    for surface in &d.surfaces {
        m.push_column(&surface.mean_feature)
            .expect("surface mean has the decomposition's dimension");
    }
    m
}
