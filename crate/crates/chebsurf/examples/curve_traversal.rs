//! Renders Hilbert traversal orders, square and rectangular.
//!
//! ```text
//! cargo run --example curve_traversal
//! ```

use chebsurf::hilbert::{curve_for_image, generate_curve, CurveOrder};

fn render(height: usize, width: usize, points: &[(usize, usize)]) -> String {
    // Print each cell's visit index, padded to a fixed width.
    let mut grid = vec![vec![String::new(); width]; height];
    for (index, &(r, c)) in points.iter().enumerate() {
        grid[r][c] = index.to_string();
    }
    let cell = points.len().to_string().len().max(2);
    grid.iter()
        .map(|row| {
            row.iter()
                .map(|v| format!("{v:>cell$}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn main() -> chebsurf::Result<()> {
    for order in [1u32, 2, 3] {
        let order = CurveOrder::new(order)?;
        let curve = generate_curve(order);
        println!(
            "order {} ({}x{} grid, {} cells):",
            order.get(),
            order.side(),
            order.side(),
            curve.len()
        );
        println!("{}\n", render(order.side(), order.side(), curve.points()));
    }

    // Rectangles use the enclosing curve with out-of-bounds cells removed,
    // preserving the visiting order of what remains.
    let (h, w) = (5usize, 11usize);
    let curve = curve_for_image(h, w)?;
    println!("{h}x{w} rectangle ({} pixels):", curve.len());
    println!("{}", render(h, w, curve.points()));
    Ok(())
}
