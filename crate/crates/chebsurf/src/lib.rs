//! Decomposition of images into probabilistically bounded homogeneous
//! surfaces, and segmentation on top of them.
//!
//! The pipeline walks the pixels of an image along a Hilbert space-filling
//! curve. Two consecutive pixels whose cosine similarity clears a nearness
//! threshold seed a *surface*; the surface then grows pixel by pixel while
//! each candidate's covariance-scaled squared deviation from the surface
//! mean stays below a threshold `epsilon`. That criterion carries a
//! distribution-free tail bound of `N / epsilon` (for `N` feature channels),
//! which is what "probabilistically bounded" means here: growth past a
//! genuine region boundary is improbable by construction, independent of the
//! image's intensity statistics.
//!
//! Segmentation then clusters the surface mean features with cityblock
//! k-means (replicated restarts, median centroid updates) and paints the
//! cluster labels back onto the pixels through surface membership.
//!
//! ```
//! use chebsurf::cluster::{kmeans_l1, paint_labels, ClusterParams};
//! use chebsurf::decompose::{decompose, surface_features, DecomposeParams};
//! use chebsurf::synth::{make_synthetic, SyntheticKind};
//!
//! let (image, _truth) = make_synthetic(SyntheticKind::HalfSplit, 16, 0).unwrap();
//! let d = decompose(&image, &DecomposeParams::new(4.0, 0.95).unwrap()).unwrap();
//! assert_eq!(d.surfaces.len(), 2);
//!
//! let params = ClusterParams::new(2).unwrap().with_replicates(8);
//! let clusters = kmeans_l1(&surface_features(&d), &params).unwrap();
//! let labels = paint_labels(&d, &clusters).unwrap();
//! assert_ne!(labels.get(0, 0), labels.get(0, 15));
//! ```
//!
//! The `examples/` directory holds one runnable program per capability;
//! `chebsurf --help` shows the equivalent command-line surface.

pub mod bounds;
pub mod cluster;
pub mod decompose;
pub mod error;
pub mod eval;
pub mod hilbert;
pub mod image_io;
pub mod numerics;
pub mod pipeline;
pub mod synth;

pub use crate::bounds::BoundReport;
pub use crate::cluster::{ClusterParams, ClusterResult, LabelMap};
pub use crate::decompose::{DecomposeParams, Decomposition, Formulation, Surface};
pub use crate::error::{Error, Result};
pub use crate::eval::{BoundaryMap, PRFScore};
pub use crate::hilbert::{CurveCoords, CurveOrder};
pub use crate::image_io::ImageTensor;
pub use crate::numerics::{FeatureMatrix, SquareMatrix};
pub use crate::pipeline::{RunConfig, RunReport};
pub use crate::synth::SyntheticKind;
