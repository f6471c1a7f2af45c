//! Deterministic synthetic test images with ground-truth label maps.
//!
//! Desk-scale stand-ins for benchmark imagery: each generator is a pure
//! function of `(kind, size, seed)` and returns the image together with the
//! region labels that produced it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cluster::LabelMap;
use crate::error::{Error, Result};
use crate::image_io::ImageTensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyntheticKind {
    /// One flat region of `[100, 100, 100]`.
    Constant,
    /// Left half `[50, 50, 50]`, right half `[200, 50, 50]`.
    HalfSplit,
    /// Four flat quadrants in four colors.
    Quad,
    /// A strictly positive smooth diagonal gradient plus seeded noise.
    NoisyGradient,
    /// Two regions separated by a sinusoidal boundary.
    TwoRegionCurve,
}

impl std::fmt::Display for SyntheticKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SyntheticKind::Constant => "constant",
            SyntheticKind::HalfSplit => "half_split",
            SyntheticKind::Quad => "quad",
            SyntheticKind::NoisyGradient => "noisy_gradient",
            SyntheticKind::TwoRegionCurve => "two_region_curve",
        };
        f.pad(name)
    }
}

impl std::str::FromStr for SyntheticKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constant" => Ok(SyntheticKind::Constant),
            "half_split" => Ok(SyntheticKind::HalfSplit),
            "quad" => Ok(SyntheticKind::Quad),
            "noisy_gradient" => Ok(SyntheticKind::NoisyGradient),
            "two_region_curve" => Ok(SyntheticKind::TwoRegionCurve),
            other => Err(Error::argument(format!(
                "unknown synthetic kind `{other}` (expected constant, half_split, quad, noisy_gradient or two_region_curve)"
            ))),
        }
    }
}

pub const SYNTHETIC_KINDS: [SyntheticKind; 5] = [
    SyntheticKind::Constant,
    SyntheticKind::HalfSplit,
    SyntheticKind::Quad,
    SyntheticKind::NoisyGradient,
    SyntheticKind::TwoRegionCurve,
];

/// Builds a `size x size` RGB test image and its ground-truth labels.
pub fn make_synthetic(
    kind: SyntheticKind,
    size: usize,
    seed: u64,
) -> Result<(ImageTensor, LabelMap)> {
    if size < 2 {
        return Err(Error::argument(format!(
            "synthetic images need size >= 2, got {size}"
        )));
    }
    match kind {
        SyntheticKind::Constant => {
            let image = ImageTensor::from_fn(size, size, 3, |_, _, _| 100.0)?;
            Ok((image, LabelMap::filled(size, size, 0)?))
        }
        SyntheticKind::HalfSplit => {
            let half = size / 2;
            let image =
                ImageTensor::from_fn(
                    size,
                    size,
                    3,
                    |_, c, j| {
                        if c < half || j != 0 {
                            50.0
                        } else {
                            200.0
                        }
                    },
                )?;
            let mut truth = LabelMap::filled(size, size, 0)?;
            for r in 0..size {
                for c in half..size {
                    truth.set(r, c, 1);
                }
            }
            Ok((image, truth))
        }
        SyntheticKind::Quad => {
            let half = size / 2;
            let colors = [
                [40.0, 40.0, 200.0],
                [40.0, 200.0, 40.0],
                [200.0, 40.0, 40.0],
                [220.0, 220.0, 60.0],
            ];
            let quadrant = |r: usize, c: usize| usize::from(r >= half) * 2 + usize::from(c >= half);
            let image = ImageTensor::from_fn(size, size, 3, |r, c, j| colors[quadrant(r, c)][j])?;
            let mut truth = LabelMap::filled(size, size, 0)?;
            for r in 0..size {
                for c in 0..size {
                    truth.set(r, c, quadrant(r, c) as u32);
                }
            }
            Ok((image, truth))
        }
        SyntheticKind::NoisyGradient => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base: Vec<f64> = (0..3).map(|_| rng.gen_range(50.0..90.0)).collect();
            let span: Vec<f64> = (0..3).map(|_| rng.gen_range(80.0..130.0)).collect();
            let denom = (2 * (size - 1)) as f64;
            let mut data = Vec::with_capacity(size * size * 3);
            for r in 0..size {
                for c in 0..size {
                    let t = (r + c) as f64 / denom;
                    for j in 0..3 {
                        let noise: f64 = rng.gen_range(-2.0..2.0);
                        data.push((base[j] + span[j] * t + noise).clamp(1.0, 255.0));
                    }
                }
            }
            let image = ImageTensor::new(size, size, 3, data)?;
            Ok((image, LabelMap::filled(size, size, 0)?))
        }
        SyntheticKind::TwoRegionCurve => {
            let amplitude = size as f64 / 6.0;
            let midline = |c: usize| {
                size as f64 / 2.0
                    + amplitude * (2.0 * std::f64::consts::PI * c as f64 / size as f64).sin()
            };
            let region = |r: usize, c: usize| usize::from((r as f64) > midline(c));
            let colors = [[60.0, 60.0, 180.0], [180.0, 180.0, 60.0]];
            let image = ImageTensor::from_fn(size, size, 3, |r, c, j| colors[region(r, c)][j])?;
            let mut truth = LabelMap::filled(size, size, 0)?;
            for r in 0..size {
                for c in 0..size {
                    truth.set(r, c, region(r, c) as u32);
                }
            }
            Ok((image, truth))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_is_flat_with_all_zero_truth() {
        let (image, truth) = make_synthetic(SyntheticKind::Constant, 8, 0).unwrap();
        for r in 0..8 {
            for c in 0..8 {
                assert_eq!(image.pixel(r, c), &[100.0, 100.0, 100.0]);
                assert_eq!(truth.get(r, c), 0);
            }
        }
    }

    #[test]
    fn half_split_matches_construction() {
        let (image, truth) = make_synthetic(SyntheticKind::HalfSplit, 8, 0).unwrap();
        assert_eq!(image.pixel(3, 0), &[50.0, 50.0, 50.0]);
        assert_eq!(image.pixel(3, 7), &[200.0, 50.0, 50.0]);
        assert_eq!(truth.get(3, 0), 0);
        assert_eq!(truth.get(3, 7), 1);
    }

    #[test]
    fn quad_labels_follow_quadrants() {
        let (_, truth) = make_synthetic(SyntheticKind::Quad, 8, 0).unwrap();
        assert_eq!(truth.get(0, 0), 0);
        assert_eq!(truth.get(0, 7), 1);
        assert_eq!(truth.get(7, 0), 2);
        assert_eq!(truth.get(7, 7), 3);
    }

    #[test]
    fn noisy_gradient_is_reproducible_and_positive() {
        let (a, _) = make_synthetic(SyntheticKind::NoisyGradient, 64, 7).unwrap();
        let (b, _) = make_synthetic(SyntheticKind::NoisyGradient, 64, 7).unwrap();
        assert_eq!(a, b);
        let (c, _) = make_synthetic(SyntheticKind::NoisyGradient, 64, 8).unwrap();
        assert_ne!(a, c);
        for r in 0..64 {
            for col in 0..64 {
                assert!(a.pixel(r, col).iter().all(|&v| v > 0.0));
            }
        }
    }

    #[test]
    fn two_region_curve_has_two_labels() {
        let (_, truth) = make_synthetic(SyntheticKind::TwoRegionCurve, 16, 0).unwrap();
        assert!(truth.labels().contains(&0));
        assert!(truth.labels().contains(&1));
        assert!(truth.labels().iter().all(|&l| l < 2));
    }

    #[test]
    fn size_below_two_is_rejected() {
        assert!(make_synthetic(SyntheticKind::Constant, 1, 0).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in SYNTHETIC_KINDS {
            let parsed: SyntheticKind = kind.to_string().parse().unwrap();
            assert_eq!(parsed, kind);
        }
        assert!("blobs".parse::<SyntheticKind>().is_err());
    }
}
