//! Hilbert space-filling curve traversal orders for pixel grids.
//!
//! The curve linearizes a 2D grid while keeping nearby cells nearby in the
//! traversal, which is what makes it useful as the scan order for surface
//! growing. Square power-of-two grids get the exact curve; arbitrary
//! rectangles get the enclosing curve with out-of-bounds cells removed, which
//! preserves the relative order (and therefore the locality) of the parent.

use crate::error::{Error, Result};

/// Largest supported curve order. `4^20` cells keeps every index computation
/// comfortably inside `u64`/`usize` on 64-bit targets.
pub const MAX_ORDER: u32 = 20;

/// Recursion depth of a Hilbert curve; the grid side is `2^order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveOrder(u32);

impl CurveOrder {
    pub fn new(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::argument("curve order must be at least 1"));
        }
        if order > MAX_ORDER {
            return Err(Error::Capacity(format!(
                "curve order {order} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        Ok(CurveOrder(order))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Side length of the square grid the curve covers.
    pub fn side(self) -> usize {
        1usize << self.0
    }

    /// Number of cells on the curve, `4^order`.
    pub fn cell_count(self) -> usize {
        1usize << (2 * self.0)
    }
}

/// An ordered sequence of `(row, col)` grid positions. Each position appears
/// exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveCoords {
    points: Vec<(usize, usize)>,
}

impl CurveCoords {
    pub fn points(&self) -> &[(usize, usize)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, (usize, usize)> {
        self.points.iter()
    }
}

impl std::ops::Index<usize> for CurveCoords {
    type Output = (usize, usize);

    fn index(&self, i: usize) -> &(usize, usize) {
        &self.points[i]
    }
}

impl<'a> IntoIterator for &'a CurveCoords {
    type Item = &'a (usize, usize);
    type IntoIter = std::slice::Iter<'a, (usize, usize)>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Maps a curve index to its `(row, col)` cell on a `side x side` grid.
///
/// Iterative bit manipulation, no recursion, so large orders cannot exhaust
/// the stack. The fixed orientation starts at `(0, 0)`, takes its first unit
/// step down along rows, and ends at `(0, side - 1)`.
fn index_to_point(side: usize, index: usize) -> (usize, usize) {
    let mut x = 0usize;
    let mut y = 0usize;
    let mut t = index;
    let mut s = 1usize;
    while s < side {
        let rx = 1 & (t / 2);
        let ry = 1 & (t ^ rx);
        if ry == 0 {
            if rx == 1 {
                x = s - 1 - x;
                y = s - 1 - y;
            }
            std::mem::swap(&mut x, &mut y);
        }
        x += s * rx;
        y += s * ry;
        t /= 4;
        s *= 2;
    }
    (y, x)
}

/// Generates the full Hilbert curve for the `2^order x 2^order` grid.
///
/// Visits all `4^order` cells exactly once with every consecutive pair at
/// Manhattan distance 1.
pub fn generate_curve(order: CurveOrder) -> CurveCoords {
    let side = order.side();
    let points = (0..order.cell_count())
        .map(|d| index_to_point(side, d))
        .collect();
    CurveCoords { points }
}

/// Traversal order for an arbitrary `height x width` pixel grid.
///
/// Generates the order-`ceil(log2(max(height, width)))` curve (order 1
/// minimum) and drops out-of-bounds cells, preserving the parent order. The
/// result visits every in-bounds pixel exactly once.
pub fn curve_for_image(height: usize, width: usize) -> Result<CurveCoords> {
    if height == 0 || width == 0 {
        return Err(Error::argument(format!(
            "image dimensions must be positive, got {height}x{width}"
        )));
    }
    let longest = height.max(width);
    let order = CurveOrder::new(ceil_log2(longest).max(1))?;
    let side = order.side();
    let points = (0..order.cell_count())
        .map(|d| index_to_point(side, d))
        .filter(|&(r, c)| r < height && c < width)
        .collect();
    Ok(CurveCoords { points })
}

fn ceil_log2(n: usize) -> u32 {
    debug_assert!(n >= 1);
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}
