//! Circles of the triangular ratio metric in the disk.
//!
//! For `x ≠ 0` and a boundary point `z = x e^{ui}/|x|`, the points `y` with
//! `|x - y| / (|x - z| + |z - y|) = t` for which the ray `z → 0` bisects the
//! angle `xzy` lie on the ray from `z` that makes angle `v` with `z → 0` on
//! the far side, at distance `h` from `z`. Sweeping `u` and keeping only
//! points whose true `s`-distance is `t` traces the circle.

use num_complex::Complex64;
use serde::Serialize;

use super::{circle_points, Trace};
use crate::error::{domain, Error, Result};
use crate::geometry::PointB;
use crate::metrics::triangular::s_planar_value;
use crate::metrics::{MetricKind, SolveOpts};

/// Band edges are compared with this slack so that samples placed exactly on
/// an interval endpoint are never lost to rounding in `cos(acos(c))`.
const BAND_SLACK: f64 = 1e-12;

/// A mirrored vertex closer than this to its source is the same vertex.
const MIRROR_MERGE: f64 = 1e-14;

fn check_radius(t: f64) -> Result<()> {
    if !(t > 0.0 && t < 1.0) {
        return domain(format!("s-radius t = {t} must lie in (0, 1)"));
    }
    Ok(())
}

/// One admissible candidate `y = z(1 - h e^{-vi})`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub point: PointB,
    pub h: f64,
}

/// The candidates produced by one boundary direction `u`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateSet {
    pub u: f64,
    pub z: PointB,
    pub v: f64,
    pub points: Vec<Candidate>,
}

/// `(t² - q)/|x|, (t² + q)/|x|` with `q = sqrt((1 - t²)(|x|² - t²))`; only
/// meaningful for `t < |x|`.
fn band(ax: f64, t: f64) -> (f64, f64) {
    let q = ((1.0 - t * t) * (ax * ax - t * t)).max(0.0).sqrt();
    ((t * t - q) / ax, (t * t + q) / ax)
}

/// Planar core of [`candidate_points`]: returns `(z, v, [(y, h)])`.
fn candidates_c(x: Complex64, ax: f64, t: f64, u: f64) -> (Complex64, f64, Vec<(Complex64, f64)>) {
    let (su, cu) = u.sin_cos();
    let z = x / ax * Complex64::new(cu, su);
    let xz = (1.0 + ax * ax - 2.0 * ax * cu).max(0.0).sqrt();
    // sin v = |x| sin u / |x - z|, cos v = (1 - |x| cos u) / |x - z|
    let v = (ax * su).atan2(1.0 - ax * cu);

    if t < ax {
        let (lo, hi) = band(ax, t);
        if cu > lo + BAND_SLACK && cu < hi - BAND_SLACK {
            return (z, v, Vec::new());
        }
    }
    let (sv, cv) = v.sin_cos();
    let disc = t * t - sv * sv;
    if disc < -BAND_SLACK {
        return (z, v, Vec::new());
    }
    let root = 2.0 * cv * disc.max(0.0).sqrt();
    let base = t * t + (2.0 * v).cos();
    let rot = Complex64::new(cv, -sv);
    let mut out = Vec::with_capacity(2);
    for sign in [-1.0, 1.0] {
        let h = xz * (base + sign * root) / (1.0 - t * t);
        if h > 0.0 && h < 2.0 * cv {
            let y = z * (1.0 - h * rot);
            if y.norm() < 1.0 {
                out.push((y, h));
            }
        }
        if root == 0.0 {
            break;
        }
    }
    (z, v, out)
}

/// Candidate points of `S_s(x, t)` for the boundary direction `u ∈ [0, π]`.
///
/// Inside the excluded band (`t < |x|` and `cos u` strictly between the band
/// edges) no candidate exists and the set is empty.
pub fn candidate_points(x: &PointB, t: f64, u: f64) -> Result<CandidateSet> {
    check_radius(t)?;
    let xc = x.planar()?;
    let ax = xc.norm();
    if ax == 0.0 {
        return domain("candidate points need x ≠ 0");
    }
    if !(0.0..=std::f64::consts::PI).contains(&u) {
        return domain(format!("u = {u} outside [0, π]"));
    }
    let (z, v, pts) = candidates_c(xc, ax, t, u);
    let zn = z / z.norm();
    Ok(CandidateSet {
        u,
        z: PointB::boundary(vec![zn.re, zn.im])?,
        v,
        points: pts
            .into_iter()
            .map(|(y, h)| Ok(Candidate { point: PointB::from_complex(y)?, h }))
            .collect::<Result<_>>()?,
    })
}

/// `n` values evenly spaced on `[a, b]`, both ends included.
fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (b - a) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| if i + 1 == n { b } else { a + step * i as f64 })
}

/// The `u` samples for a trace with `n` directions.
fn u_samples(ax: f64, t: f64, n: usize) -> Vec<f64> {
    use std::f64::consts::PI;
    if t >= ax {
        return linspace(0.0, PI, n).collect();
    }
    let (lo, hi) = band(ax, t);
    let u1 = hi.clamp(-1.0, 1.0).acos();
    let u2 = lo.clamp(-1.0, 1.0).acos();
    let (l1, l2) = (u1, PI - u2);
    let n1 = ((n as f64 * l1 / (l1 + l2)).round() as usize).clamp(2, n - 2);
    linspace(0.0, u1, n1).chain(linspace(u2, PI, n - n1)).collect()
}

/// Trace `S_s(x, t)` in the disk.
///
/// `n` boundary directions are sampled (`n` points on the circle when
/// `x = 0`); every candidate whose evaluated `s`-distance differs from `t`
/// by more than `eps` is dropped, and survivors are completed by their
/// mirror images in the line `L(0, x)`.
pub fn trace_s_circle(x: &PointB, t: f64, n: usize, eps: f64, opts: &SolveOpts) -> Result<Trace> {
    check_radius(t)?;
    opts.validate()?;
    if n < 4 {
        return domain(format!("need at least 4 samples, got {n}"));
    }
    if eps.is_nan() || eps <= 0.0 {
        return domain(format!("eps = {eps} must be positive"));
    }
    let xc = x.planar()?;
    let ax = xc.norm();

    let mut pts: Vec<(Complex64, f64)> = Vec::new();
    if ax == 0.0 {
        for w in circle_points(xc, 2.0 * t / (1.0 + t), n, 0.0) {
            pts.push((w, (s_planar_value(xc, w, opts) - t).abs()));
        }
        return Trace::from_planar(x, MetricKind::S, t, pts);
    }

    let mirror_factor = xc / xc.conj();
    for u in u_samples(ax, t, n) {
        let (_, _, cands) = candidates_c(xc, ax, t, u);
        for (y, _) in cands {
            let r = (s_planar_value(xc, y, opts) - t).abs();
            if r > eps {
                continue;
            }
            pts.push((y, r));
            let m = mirror_factor * y.conj();
            if (m - y).norm() > MIRROR_MERGE && m.norm() < 1.0 {
                pts.push((m, (s_planar_value(xc, m, opts) - t).abs()));
            }
        }
    }
    if pts.is_empty() {
        return Err(Error::EmptyTrace(format!(
            "no candidate of S_s({xc}, {t}) passed |s - t| <= {eps:e} with n = {n}"
        )));
    }
    Trace::from_planar(x, MetricKind::S, t, pts)
}

/// `min{a, b}`, where at a declared tie both branches must agree.
pub(crate) fn tie_min(a: f64, b: f64, tie: bool) -> Result<f64> {
    if tie && (a - b).abs() > 1e-12 {
        return Err(Error::Degenerate(format!("min branches disagree at tie: {a} vs {b}")));
    }
    Ok(a.min(b))
}

/// The two points where `S_s(x, t)` meets the line `L(0, x)`: `y0` beyond
/// `x` (towards the boundary) and `y1` on the far side.
pub fn s_line_intersections(x: &PointB, t: f64) -> Result<(PointB, PointB)> {
    check_radius(t)?;
    let ax = x.norm();
    if ax == 0.0 || x.is_boundary() {
        return domain("s_line_intersections needs an interior x ≠ 0");
    }
    let far = 2.0 * t * (1.0 - ax) / (ax * (1.0 + t));
    let near = 2.0 * t / ax
        * tie_min((1.0 - ax) / (1.0 - t), (1.0 + ax) / (1.0 + t), t == ax)?;
    let scale = |f: f64| x.coords().iter().map(|c| c * f).collect::<Vec<_>>();
    Ok((PointB::new(scale(1.0 + far))?, PointB::new(scale(1.0 - near))?))
}

/// Where `S_s(x, t)` meets the circle `|y| = |x|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MidcircleIntersections {
    /// `cos u` of the tangency direction; `None` when `t > |x|`.
    pub c: Option<f64>,
    pub points: Vec<PointB>,
    /// `t > |x|`: the s-circle surrounds `|y| = |x|` without meeting it.
    pub contains_circle: bool,
}

/// Intersections of `S_s(x, t)` with `S(0, |x|)`: the points `x e^{±2ui}`
/// with `cos u = (t² + sqrt((1 - t²)(|x|² - t²)))/|x|`.
pub fn s_midcircle_intersections(x: &PointB, t: f64) -> Result<MidcircleIntersections> {
    check_radius(t)?;
    let xc = x.planar()?;
    let ax = xc.norm();
    if ax == 0.0 {
        return domain("s_midcircle_intersections needs x ≠ 0");
    }
    if t > ax {
        return Ok(MidcircleIntersections { c: None, points: Vec::new(), contains_circle: true });
    }
    let (_, c) = band(ax, t);
    let c = c.min(1.0);
    let (re, im) = (2.0 * c * c - 1.0, 2.0 * c * (1.0 - c * c).max(0.0).sqrt());
    let points = [Complex64::new(re, im), Complex64::new(re, -im)]
        .into_iter()
        .map(|w| PointB::from_complex(xc * w))
        .collect::<Result<_>>()?;
    Ok(MidcircleIntersections { c: Some(c), points, contains_circle: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::angle_at_c;
    use std::f64::consts::PI;

    fn p(c: &[f64]) -> PointB {
        PointB::new(c.to_vec()).unwrap()
    }

    fn s(x: &PointB, y: &PointB) -> f64 {
        crate::metrics::s_value(x, y, &SolveOpts::default()).unwrap()
    }

    #[test]
    fn candidates_on_the_imaginary_axis() {
        let cs = candidate_points(&p(&[0.0, 0.5]), 0.5, PI / 5.0).unwrap();
        assert!((cs.v - 0.45845782665894885).abs() < 1e-12, "{}", cs.v);
        assert_eq!(cs.points.len(), 2);
        assert!((cs.points[0].h - 0.390455474503501).abs() < 1e-12);
        assert!((cs.points[1].h - 1.1294066402470138).abs() < 1e-12);
        let y0 = cs.points[0].point.to_complex().unwrap();
        let y1 = cs.points[1].point.to_complex().unwrap();
        assert!((y0 - Complex64::new(-0.521780683385206, 0.42418082864578943)).norm() < 1e-12);
        assert!((y1 - Complex64::new(-0.39686463962773605, -0.304135591164775)).norm() < 1e-12);
    }

    #[test]
    fn candidates_satisfy_ratio_and_bisection() {
        let x = Complex64::new(0.35, -0.2);
        let xp = PointB::from_complex(x).unwrap();
        for &t in &[0.15, 0.4, 0.8] {
            for k in 0..=40 {
                let u = PI * k as f64 / 40.0;
                let cs = candidate_points(&xp, t, u).unwrap();
                let z = cs.z.to_complex().unwrap();
                for c in &cs.points {
                    let y = c.point.to_complex().unwrap();
                    let ratio = (x - y).norm() / ((x - z).norm() + (z - y).norm());
                    assert!((ratio - t).abs() < 1e-10, "t {t} u {u}: {ratio}");
                    let a1 = angle_at_c(z, x, Complex64::new(0.0, 0.0)).unwrap();
                    let a2 = angle_at_c(z, Complex64::new(0.0, 0.0), y).unwrap();
                    assert!((a1 - a2).abs() < 1e-10, "t {t} u {u}: {a1} {a2}");
                    assert!(c.h > 0.0 && c.h < 2.0 * cs.v.cos());
                }
            }
        }
    }

    #[test]
    fn candidate_on_the_axis_is_the_outer_line_point() {
        let x = p(&[0.6, 0.0]);
        let cs = candidate_points(&x, 0.5, 0.0).unwrap();
        assert_eq!(cs.v, 0.0);
        let (y0, _) = s_line_intersections(&x, 0.5).unwrap();
        assert!(cs.points.iter().any(|c| c.point.dist(&y0) < 1e-12));
    }

    #[test]
    fn excluded_band_is_empty() {
        let cs = candidate_points(&p(&[0.6, 0.0]), 0.3, PI / 3.0).unwrap();
        assert!(cs.points.is_empty());
    }

    #[test]
    fn candidate_domain_errors() {
        assert!(candidate_points(&p(&[0.0, 0.0]), 0.5, 0.1).is_err());
        assert!(candidate_points(&p(&[0.1, 0.0]), 1.0, 0.1).is_err());
        assert!(candidate_points(&p(&[0.1, 0.0]), 0.5, -0.1).is_err());
    }

    #[test]
    fn line_points() {
        let x = p(&[0.6, 0.0]);
        let (y0, y1) = s_line_intersections(&x, 0.5).unwrap();
        assert!((y0.coords()[0] - 0.8666666666666667).abs() < 1e-15);
        assert!((y1.coords()[0] + 0.2).abs() < 1e-15);
        assert!((s(&x, &y0) - 0.5).abs() < 1e-9);
        assert!((s(&x, &y1) - 0.5).abs() < 1e-9);

        let x = p(&[0.3, 0.7]);
        let (y0, _) = s_line_intersections(&x, 0.5).unwrap();
        assert!((y0.dist(&x) - 0.1589484596090728).abs() < 1e-12);
        let w = y0.to_complex().unwrap();
        assert!((w - Complex64::new(0.3626128657194451, 0.8460966866787052)).norm() < 1e-12);

        let (_, y1) = s_line_intersections(&p(&[0.5, 0.0]), 0.5).unwrap();
        assert!((y1.coords()[0] + 0.5).abs() < 1e-15);
        assert!(s_line_intersections(&p(&[0.0, 0.0]), 0.5).is_err());
    }

    #[test]
    fn midcircle_points() {
        let x = p(&[0.6, 0.0]);
        let m = s_midcircle_intersections(&x, 0.5).unwrap();
        assert!((m.c.unwrap() - 0.8953802205448358).abs() < 1e-12);
        assert_eq!(m.points.len(), 2);
        for y in &m.points {
            assert!((y.norm() - 0.6).abs() < 1e-12);
            assert!((s(&x, y) - 0.5).abs() < 1e-9);
        }
        let w = m.points[0].to_complex().unwrap();
        assert!((w - Complex64::new(0.3620468872115025, 0.4784579934126522)).norm() < 1e-12);

        let m = s_midcircle_intersections(&p(&[0.4, 0.0]), 0.5).unwrap();
        assert!(m.contains_circle && m.points.is_empty() && m.c.is_none());

        let m = s_midcircle_intersections(&p(&[0.0, 0.5]), 0.5).unwrap();
        assert!((m.c.unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn origin_trace_is_a_regular_polygon() {
        let tr = trace_s_circle(&p(&[0.0, 0.0]), 0.5, 8, 1e-5, &SolveOpts::default()).unwrap();
        assert_eq!(tr.len(), 8);
        for (k, v) in tr.vertices.iter().enumerate() {
            let w = v.to_complex().unwrap();
            assert!((w.norm() - 2.0 / 3.0).abs() < 1e-15);
            let expect = PI / 4.0 * k as f64;
            assert!((super::super::argument_from(Complex64::new(0.0, 0.0), w) - expect).abs() < 1e-12);
        }
        assert!(tr.max_residual() < 1e-12);
    }

    #[test]
    fn trace_hits_line_and_midcircle_points() {
        let x = p(&[0.6, 0.0]);
        let tr = trace_s_circle(&x, 0.5, 2000, 1e-5, &SolveOpts::default()).unwrap();
        assert!(tr.max_residual() <= 1e-5);
        let (y0, y1) = s_line_intersections(&x, 0.5).unwrap();
        let near = |q: &PointB| tr.vertices.iter().map(|v| v.dist(q)).fold(f64::INFINITY, f64::min);
        assert!(near(&y0) < 1e-4);
        assert!(near(&y1) < 1e-4);
        for q in s_midcircle_intersections(&x, 0.5).unwrap().points {
            assert!(near(&q) < 1e-4, "{}", near(&q));
        }
    }

    #[test]
    fn trace_is_mirror_symmetric_and_sorted() {
        let xc = Complex64::new(0.3, 0.45);
        let x = PointB::from_complex(xc).unwrap();
        let tr = trace_s_circle(&x, 0.5, 600, 1e-5, &SolveOpts::default()).unwrap();
        let pts: Vec<Complex64> = tr.vertices.iter().map(|v| v.to_complex().unwrap()).collect();
        for w in &pts {
            let m = xc * w.conj() / xc.conj();
            let d = pts.iter().map(|q| (q - m).norm()).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-12);
        }
        let args: Vec<f64> = pts.iter().map(|w| super::super::argument_from(xc, *w)).collect();
        assert!(args.windows(2).all(|a| a[0] <= a[1]));
    }

    #[test]
    fn narrow_filter_can_empty_the_trace() {
        // rounding alone keeps every off-axis candidate above eps
        let r = trace_s_circle(&p(&[0.35, -0.2]), 0.4, 6, 1e-300, &SolveOpts::default());
        assert!(matches!(r, Err(Error::EmptyTrace(_))));
    }

    #[test]
    fn tie_min_checks_agreement() {
        assert_eq!(tie_min(1.0, 2.0, false).unwrap(), 1.0);
        assert_eq!(tie_min(1.0, 1.0 + 1e-13, true).unwrap(), 1.0);
        assert!(tie_min(1.0, 1.1, true).is_err());
    }
}
