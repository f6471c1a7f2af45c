//! The parameter relations behind the growth criterion, plus a quick
//! Monte-Carlo check that the tail bound really is distribution-free.
//!
//! ```text
//! cargo run --example probability_bounds
//! ```

use chebsurf::bounds::{
    equal_likelihood_sample_size, expected_surface_count, max_parameter_order, surface_lower_bound,
    tail_bound, BoundReport,
};
use chebsurf::numerics::{
    column_mean, mahalanobis_sq, sample_covariance, svd_pseudoinverse, FeatureMatrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> chebsurf::Result<()> {
    let n_features = 3usize;
    let m_pixels = 64 * 64;

    println!(
        "{:>8} {:>12} {:>12} {:>10}",
        "epsilon", "tail bound", "lower bound", "M/epsilon"
    );
    for epsilon in [4.0, 8.0, 16.0, 32.0] {
        println!(
            "{epsilon:>8} {:>12.4} {:>12.4} {:>10.1}",
            tail_bound(n_features, epsilon)?,
            surface_lower_bound(n_features, epsilon)?,
            expected_surface_count(m_pixels, epsilon)?,
        );
    }

    println!();
    println!(
        "equal-likelihood pixel count at epsilon=4, N=3: {}",
        equal_likelihood_sample_size(4.0, n_features)?
    );
    println!(
        "largest admissible epsilon (and N) for {m_pixels} pixels: about {}",
        max_parameter_order(m_pixels)
    );

    let report = BoundReport::new(n_features, m_pixels, Some(8.0))?;
    println!(
        "\nfull report as JSON:\n{}",
        serde_json::to_string_pretty(&report).unwrap()
    );

    // Empirical check on a distribution the bound knows nothing about:
    // exponentially distributed features.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let columns: Vec<Vec<f64>> = (0..50_000)
        .map(|_| (0..3).map(|_| -rng.gen_range(0.0f64..1.0).ln()).collect())
        .collect();
    let matrix = FeatureMatrix::from_columns(&columns)?;
    let mean = column_mean(&matrix)?;
    let pinv = svd_pseudoinverse(&sample_covariance(&matrix)?)?;
    println!("\nexponential samples vs the bound:");
    for epsilon in [4.0, 8.0, 16.0, 32.0] {
        let exceed = columns
            .iter()
            .filter(|col| {
                let dev: Vec<f64> = col.iter().zip(&mean).map(|(x, m)| x - m).collect();
                mahalanobis_sq(&dev, &pinv).unwrap() >= epsilon
            })
            .count();
        println!(
            "  epsilon {epsilon:>4}: observed tail {:.4} <= bound {:.4}",
            exceed as f64 / columns.len() as f64,
            tail_bound(3, epsilon)?
        );
    }
    Ok(())
}
