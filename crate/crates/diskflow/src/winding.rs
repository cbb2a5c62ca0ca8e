//! Point-in-region tests against densely sampled closed curves.

use num_complex::Complex64;

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Winding number of the closed polygon (last vertex joins the first) around
/// `point`, by summing signed turn angles edge by edge.
pub fn winding_number(point: Complex64, polygon: &[Complex64]) -> i32 {
    let mut total = 0.0;
    for i in 0..polygon.len() {
        let a = polygon[i] - point;
        let b = polygon[(i + 1) % polygon.len()] - point;
        let cross = a.re * b.im - a.im * b.re;
        let dot = a.re * b.re + a.im * b.im;
        total += cross.atan2(dot);
    }
    (total / TAU).round() as i32
}

/// Distance from `point` to the polygon boundary.
pub fn boundary_distance(point: Complex64, polygon: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..polygon.len() {
        let a = polygon[i];
        let b = polygon[(i + 1) % polygon.len()];
        best = best.min(segment_distance(point, a, b));
    }
    best
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a).re * ab.re + (p - a).im * ab.im) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// True when `point` winds once inside the polygon and keeps at least
/// `inset` distance from its boundary.
pub fn encloses(point: Complex64, polygon: &[Complex64], inset: f64) -> bool {
    winding_number(point, polygon) == 1 && boundary_distance(point, polygon) >= inset
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Complex64> {
        vec![
            Complex64::new(-1.0, -1.0),
            Complex64::new(1.0, -1.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(-1.0, 1.0),
        ]
    }

    #[test]
    fn winding_inside_and_outside() {
        let sq = square();
        assert_eq!(winding_number(Complex64::new(0.0, 0.0), &sq), 1);
        assert_eq!(winding_number(Complex64::new(2.0, 0.0), &sq), 0);
        let reversed: Vec<_> = sq.iter().rev().copied().collect();
        assert_eq!(winding_number(Complex64::new(0.0, 0.0), &reversed), -1);
    }

    #[test]
    fn inset_rejects_points_hugging_the_boundary() {
        let sq = square();
        let hugging = Complex64::new(1.0 - 1e-12, 0.0);
        assert!(!encloses(hugging, &sq, 1e-9));
        assert!(encloses(Complex64::new(0.5, 0.5), &sq, 1e-9));
    }
}
