//! Circles of the `j*`-metric (and of `j`, whose circles are the same sets).
//!
//! Inside `|y| <= |x|` the `j*`-circle is an arc of the Euclidean circle
//! `S(x, 2k(1 - |x|)/(1 - k))`. Outside, `j*` coincides with
//! `Υ(x, y) = |x - y| / (|x - y| + 2 - 2|y|)`, whose level set `Υ = k` is a
//! radial graph `|y| = l(u)` over the angle `u = ∠XOY`.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{circle_points, Trace};
use crate::error::{domain, Result};
use crate::geometry::PointB;
use crate::metrics::{self, MetricKind};

fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0 && k < 1.0) {
        return domain(format!("j*-radius k = {k} must lie in (0, 1)"));
    }
    Ok(())
}

/// Admissible radii `|y|` of the level set `Υ(x, ·) = k` in direction `u`.
///
/// The radii solve `A l² - 2B l + C = 0` with `A = 3k² + 2k - 1`,
/// `B = 4k² - (1 - k)²|x| cos u`, `C = 4k² - (1 - k)²|x|²`, filtered by the
/// case split on `k` versus `1/3` and `|x|` versus `2k/(1 - k)`.
pub fn upsilon_radii(ax: f64, k: f64, u: f64) -> Vec<f64> {
    let cu = u.cos();
    let w = (1.0 - k) * (1.0 - k);
    let a = 3.0 * k * k + 2.0 * k - 1.0;
    let b = 4.0 * k * k - w * ax * cu;
    let c = 4.0 * k * k - w * ax * ax;

    if (3.0 * k - 1.0).abs() < 1e-15 {
        return vec![(1.0 - ax * ax) / (2.0 * (1.0 - ax * cu))];
    }

    let d = 4.0 * k * k * (1.0 + ax * ax - 2.0 * ax * cu) - w * ax * ax * (1.0 - cu * cu);
    if d < -1e-14 {
        return Vec::new();
    }
    let q = (1.0 - k) * d.max(0.0).sqrt();
    // (b ± q)/a, switching to c/(b ∓ q) where the direct form cancels
    let root = |sign: f64| {
        if b * sign >= 0.0 || b == 0.0 {
            (b + sign * q) / a
        } else {
            c / (b - sign * q)
        }
    };
    let (l0, l1) = (root(-1.0), root(1.0));

    let sq = (a * c).max(0.0).sqrt();
    let den = ax * w;
    if k < 1.0 / 3.0 {
        if ax < 2.0 * k / (1.0 - k) {
            vec![l0]
        } else if cu >= (4.0 * k * k + sq) / den - 1e-12 {
            vec![l0, l1]
        } else {
            Vec::new()
        }
    } else if cu <= (4.0 * k * k - sq) / den + 1e-12 {
        vec![l0]
    } else {
        Vec::new()
    }
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (b - a) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| if i + 1 == n { b } else { a + step * i as f64 })
}

/// Direction angle `u = ∠XOY` of the points where the inner arc meets
/// `|y| = |x|`, or `None` when the arc radius reaches `2|x|`.
pub(crate) fn seam_angle(ax: f64, k: f64) -> Option<f64> {
    let r = 2.0 * k * (1.0 - ax) / (1.0 - k);
    (r < 2.0 * ax).then(|| (1.0 - r * r / (2.0 * ax * ax)).clamp(-1.0, 1.0).acos())
}

/// Planar points of `S_{j*}(x, k)` (unsorted). `n` samples per branch.
fn jstar_points(xc: Complex64, k: f64, n: usize) -> Vec<Complex64> {
    let ax = xc.norm();
    if ax == 0.0 {
        return circle_points(xc, 2.0 * k / (1.0 + k), n, 0.0);
    }
    let dir = xc / ax;
    let arg_x = xc.im.atan2(xc.re);
    let r = 2.0 * k * (1.0 - ax) / (1.0 - k);
    let mut pts = Vec::with_capacity(3 * n);

    let u_end = match seam_angle(ax, k) {
        Some(us) => {
            let beta = (r / (2.0 * ax)).clamp(-1.0, 1.0).acos();
            for phi in linspace(arg_x + PI - beta, arg_x + PI + beta, n) {
                pts.push(xc + Complex64::from_polar(r, phi));
            }
            us
        }
        None => PI,
    };

    for u in linspace(0.0, u_end, n) {
        for l in upsilon_radii(ax, k, u) {
            // the seam itself is owned by the inner arc
            if !(l > ax && l < 1.0) {
                continue;
            }
            let w = dir * Complex64::from_polar(l, u);
            pts.push(w);
            if u > 0.0 && u < PI {
                pts.push(dir * Complex64::from_polar(l, -u));
            }
        }
    }
    pts
}

/// Trace `S_{j*}(x, k)`; `n` samples on each branch (the `Υ` branch is
/// mirrored, so it contributes up to `2n - 2` vertices).
pub fn trace_jstar_circle(x: &PointB, k: f64, n: usize) -> Result<Trace> {
    check_k(k)?;
    if n < 3 {
        return domain(format!("need at least 3 samples, got {n}"));
    }
    let xc = x.planar()?;
    let mut pts = Vec::new();
    for w in jstar_points(xc, k, n) {
        let y = PointB::from_complex(w)?;
        pts.push((w, (metrics::jstar_ball(x, &y)? - k).abs()));
    }
    Trace::from_planar(x, MetricKind::JStar, k, pts)
}

/// Trace `S_j(x, K)`, the same set as `S_{j*}(x, th(K/2))`.
pub fn trace_j_circle(x: &PointB, big_k: f64, n: usize) -> Result<Trace> {
    if !(big_k > 0.0 && big_k.is_finite()) {
        return domain(format!("j-radius {big_k} must be positive"));
    }
    if n < 3 {
        return domain(format!("need at least 3 samples, got {n}"));
    }
    let xc = x.planar()?;
    let mut pts = Vec::new();
    for w in jstar_points(xc, (big_k / 2.0).tanh(), n) {
        let y = PointB::from_complex(w)?;
        pts.push((w, (metrics::j_ball(x, &y)? - big_k).abs()));
    }
    Trace::from_planar(x, MetricKind::J, big_k, pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> PointB {
        PointB::new(c.to_vec()).unwrap()
    }

    #[test]
    fn origin_circle() {
        let tr = trace_jstar_circle(&p(&[0.0, 0.0]), 1.0 / 3.0, 12).unwrap();
        assert_eq!(tr.len(), 12);
        for v in &tr.vertices {
            assert!((v.norm() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn one_third_radius_on_axis() {
        let r = upsilon_radii(0.6, 1.0 / 3.0, 0.0);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn stable_roots_near_one_third() {
        // the k = 1/3 formula is the limit of the general branch
        let a = upsilon_radii(0.4, 1.0 / 3.0, 1.0)[0];
        let b = upsilon_radii(0.4, 1.0 / 3.0 + 1e-9, 1.0)[0];
        assert!((a - b).abs() < 1e-7, "{a} vs {b}");
    }

    #[test]
    fn upsilon_level_set() {
        for &(ax, k) in &[(0.3, 0.1), (0.05, 0.2), (0.6, 0.7), (0.42, 0.3), (0.8, 0.05)] {
            for i in 0..=30 {
                let u = PI * i as f64 / 30.0;
                for l in upsilon_radii(ax, k, u) {
                    if !(l > 0.0 && l < 1.0) {
                        continue;
                    }
                    let x = Complex64::new(ax, 0.0);
                    let y = Complex64::from_polar(l, u);
                    let d = (x - y).norm();
                    let ups = d / (d + 2.0 - 2.0 * l);
                    assert!((ups - k).abs() < 1e-12, "|x| {ax} k {k} u {u}: {ups}");
                }
            }
        }
    }

    #[test]
    fn off_axis_residuals_and_seam() {
        let x = p(&[0.3, 0.3]);
        let tr = trace_jstar_circle(&x, 0.3, 500).unwrap();
        assert!(tr.max_residual() <= 1e-9, "{}", tr.max_residual());
        let ax = x.norm();
        let us = seam_angle(ax, 0.3).unwrap();
        let radii = upsilon_radii(ax, 0.3, us);
        assert!(radii.iter().any(|l| (l - ax).abs() < 1e-8), "{radii:?}");
    }

    #[test]
    fn small_k_far_centre_has_two_outer_branches() {
        // k < 1/3 and |x| > 2k/(1 - k): the sphere does not surround 0
        let x = p(&[0.8, 0.0]);
        let tr = trace_jstar_circle(&x, 0.05, 400).unwrap();
        assert!(tr.max_residual() <= 1e-9);
        assert!(tr.vertices.iter().all(|v| v.coords()[0] > 0.0));
        assert!(tr.vertices.iter().any(|v| v.norm() > 0.8));
    }

    #[test]
    fn large_radius_wraps_the_origin() {
        let x = p(&[0.1, -0.2]);
        let tr = trace_jstar_circle(&x, 0.6, 300).unwrap();
        assert!(tr.max_residual() <= 1e-9);
        assert!(seam_angle(x.norm(), 0.6).is_none());
    }

    #[test]
    fn j_circle_matches_jstar_circle() {
        let x = p(&[0.2, 0.5]);
        let big_k = 0.9;
        let a = trace_j_circle(&x, big_k, 200).unwrap();
        let b = trace_jstar_circle(&x, (big_k / 2.0).tanh(), 200).unwrap();
        assert_eq!(a.vertices, b.vertices);
        assert!(a.max_residual() < 1e-9);
    }

    #[test]
    fn rejects_bad_radius() {
        assert!(trace_jstar_circle(&p(&[0.1, 0.0]), 1.0, 10).is_err());
        assert!(trace_j_circle(&p(&[0.1, 0.0]), -1.0, 10).is_err());
    }
}
