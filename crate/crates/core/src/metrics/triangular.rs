//! The triangular ratio metric of the unit ball.
//!
//! `s(x, y) = |x - y| / inf_{|z| = 1} (|x - z| + |z - y|)`.
//!
//! After planar reduction the denominator is the minimum over `θ` of
//! `f(θ) = |a - e^{iθ}| + |e^{iθ} - b|`, which has at most two local minima.
//! The evaluator scans a uniform grid, refines every discrete local minimum
//! by golden-section search and then polishes the best point with a
//! bracketed root search on the reflection condition at `z = e^{iθ}`: the
//! line through `0` and `z` bisects the angle `xzy`.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{domain, Error, Result};
use crate::geometry::{self, reduce_to_plane, PointB};

/// Golden-section search stops once the bracket is this narrow.
pub const GOLDEN_WIDTH: f64 = 1e-10;

/// Cross-product norm below which a pair counts as collinear with `0`.
pub const COLLINEAR_TOL: f64 = 1e-12;

/// Numerical controls for [`s_ball`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolveOpts {
    /// Uniform samples of the boundary circle used to bracket minima.
    pub grid_count: usize,
    /// Target for `|bisection residual|` at the returned boundary point.
    pub refine_tol: f64,
    pub max_refine_iters: usize,
}

impl Default for SolveOpts {
    fn default() -> Self {
        Self { grid_count: 720, refine_tol: 1e-12, max_refine_iters: 60 }
    }
}

impl SolveOpts {
    pub fn validate(&self) -> Result<()> {
        if self.grid_count < 8 {
            return domain(format!("grid_count {} < 8", self.grid_count));
        }
        if !(self.refine_tol > 0.0 && self.refine_tol.is_finite()) {
            return domain(format!("refine_tol {} must be positive", self.refine_tol));
        }
        if self.max_refine_iters == 0 {
            return domain("max_refine_iters must be positive");
        }
        Ok(())
    }
}

/// Result of [`s_ball`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SValue {
    pub value: f64,
    /// Boundary point realising the infimum.
    pub argmin_z: PointB,
    /// `|∠xz0 - ∠0zy|` as a signed-angle sum at `argmin_z`.
    pub bisection_residual: f64,
}

/// Minimiser of the planar path length.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PlanarMin {
    pub theta: f64,
    pub path: f64,
    pub residual: f64,
    pub converged: bool,
}

#[inline]
fn path_len(a: f64, b: Complex64, w: Complex64) -> f64 {
    let (dx, dy) = (a - w.re, w.im);
    let (ex, ey) = (w.re - b.re, w.im - b.im);
    (dx * dx + dy * dy).sqrt() + (ex * ex + ey * ey).sqrt()
}

#[inline]
fn path_at(a: f64, b: Complex64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    path_len(a, b, Complex64::new(c, s))
}

/// Signed reflection residual at `z = e^{iθ}`.
///
/// With `α_p = arg((p - z) / (-z))` the residual is `α_a + α_b`; it is zero
/// exactly when the ray from `z` to the origin bisects the angle `azb`, and
/// it has the sign of `f'(θ)`, so it crosses from negative to positive at a
/// local minimum of the path length.
pub(crate) fn reflection_residual(a: f64, b: Complex64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let z = Complex64::new(c, s);
    let to_origin = -z.conj();
    let wa = (Complex64::new(a, 0.0) - z) * to_origin;
    let wb = (b - z) * to_origin;
    wa.im.atan2(wa.re) + wb.im.atan2(wb.re)
}

fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > GOLDEN_WIDTH {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Root of the reflection residual next to `theta0`, by Illinois false
/// position inside an expanding bracket. Returns `(theta, |residual|, ok)`.
fn polish(a: f64, b: Complex64, theta0: f64, max_half: f64, opts: &SolveOpts) -> (f64, f64, bool) {
    let g = |t: f64| reflection_residual(a, b, t);
    let g0 = g(theta0);
    if g0.abs() <= opts.refine_tol {
        return (theta0, g0.abs(), true);
    }

    let mut half = 1e-9_f64;
    let (mut lo, mut hi, mut glo, mut ghi);
    loop {
        lo = theta0 - half;
        hi = theta0 + half;
        glo = g(lo);
        ghi = g(hi);
        if glo <= 0.0 && ghi >= 0.0 {
            break;
        }
        half *= 4.0;
        if half > max_half {
            return (theta0, g0.abs(), false);
        }
    }

    let mut best = if glo.abs() < ghi.abs() { (lo, glo) } else { (hi, ghi) };
    let mut side = 0i8;
    for _ in 0..opts.max_refine_iters {
        if best.1.abs() <= opts.refine_tol {
            return (best.0, best.1.abs(), true);
        }
        let mut mid = (lo * ghi - hi * glo) / (ghi - glo);
        if !(mid > lo && mid < hi) {
            mid = 0.5 * (lo + hi);
        }
        let gm = g(mid);
        if gm.abs() < best.1.abs() {
            best = (mid, gm);
        }
        if gm == 0.0 {
            return (mid, 0.0, true);
        }
        if gm < 0.0 {
            lo = mid;
            glo = gm;
            if side == -1 {
                ghi *= 0.5;
            }
            side = -1;
        } else {
            hi = mid;
            ghi = gm;
            if side == 1 {
                glo *= 0.5;
            }
            side = 1;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(1.0) {
            break;
        }
    }
    (best.0, best.1.abs(), best.1.abs() <= opts.refine_tol)
}

/// Minimise `|a - e^{iθ}| + |e^{iθ} - b|` over `θ`, for `0 <= a < 1`, `|b| < 1`.
pub(crate) fn minimize_planar(a: f64, b: Complex64, opts: &SolveOpts) -> PlanarMin {
    let n = opts.grid_count;
    let step = TAU / n as f64;
    let rot = Complex64::new(step.cos(), step.sin());

    // recurrence drift stays far below the grid spacing
    let mut w = Complex64::new(1.0, 0.0);
    let mut vals = Vec::with_capacity(n);
    for k in 0..n {
        if k % 64 == 0 {
            let t = k as f64 * step;
            w = Complex64::new(t.cos(), t.sin());
        }
        vals.push(path_len(a, b, w));
        w *= rot;
    }

    let mut seeds: Vec<usize> = (0..n)
        .filter(|&k| {
            let prev = vals[(k + n - 1) % n];
            let next = vals[(k + 1) % n];
            vals[k] <= prev && vals[k] < next || vals[k] < prev && vals[k] <= next
        })
        .collect();
    if seeds.is_empty() {
        // constant path length (cannot happen for |a|,|b| < 1, but stay total)
        seeds.push(0);
    }
    seeds.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    seeds.truncate(4);

    let f = |t: f64| path_at(a, b, t);
    let mut best: Option<PlanarMin> = None;
    for k in seeds {
        let centre = k as f64 * step;
        let (tg, _) = golden_section(f, centre - step, centre + step);
        let (theta, residual, converged) = polish(a, b, tg, step, opts);
        let path = f(theta);
        let cand = PlanarMin { theta, path, residual, converged };
        best = match best {
            Some(bst) if bst.path <= cand.path => Some(bst),
            _ => Some(cand),
        };
    }
    best.expect("at least one seed")
}

/// `s(x, y)` for planar points, without the boundary-point bookkeeping.
/// Convergence failures are tolerated; the best value is returned.
pub(crate) fn s_planar_value(x: Complex64, y: Complex64, opts: &SolveOpts) -> f64 {
    if x == y {
        return 0.0;
    }
    let (x, y) = canonical_c(x, y);
    let a = x.norm();
    let b = if a > 0.0 {
        let w = y * x.conj() / a;
        Complex64::new(w.re, w.im.abs())
    } else {
        Complex64::new(y.norm(), 0.0)
    };
    let m = minimize_planar(a, b, opts);
    (x - y).norm() / m.path
}

fn canonical_c(x: Complex64, y: Complex64) -> (Complex64, Complex64) {
    match x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)) {
        std::cmp::Ordering::Greater => (y, x),
        _ => (x, y),
    }
}

fn canonical<'p>(x: &'p PointB, y: &'p PointB) -> (&'p PointB, &'p PointB) {
    for (p, q) in x.coords().iter().zip(y.coords()) {
        match p.total_cmp(q) {
            std::cmp::Ordering::Less => return (x, y),
            std::cmp::Ordering::Greater => return (y, x),
            std::cmp::Ordering::Equal => {}
        }
    }
    (x, y)
}

/// The triangular ratio metric `s(x, y)` in the unit ball of any dimension.
///
/// Arguments are put in a canonical order first, so `s_ball(x, y)` and
/// `s_ball(y, x)` run the same computation. When the residual target is
/// missed the result is returned inside [`Error::Convergence`].
pub fn s_ball(x: &PointB, y: &PointB, opts: &SolveOpts) -> Result<SValue> {
    opts.validate()?;
    let (x, y) = canonical(x, y);
    let pair = reduce_to_plane(x, y)?;

    if x.coords() == y.coords() {
        let z = PointB::boundary(pair.lift(Complex64::new(1.0, 0.0)))?;
        return Ok(SValue { value: 0.0, argmin_z: z, bisection_residual: 0.0 });
    }

    let m = minimize_planar(pair.a.re, pair.b, opts);
    let (sn, cs) = m.theta.sin_cos();
    let zc = pair.lift(Complex64::new(cs, sn));
    let zn = geometry::norm(&zc);
    let z = PointB::boundary(zc.iter().map(|c| c / zn).collect())?;

    let num = x.dist(y);
    let den = geometry::dist(x.coords(), z.coords()) + geometry::dist(z.coords(), y.coords());
    let out = SValue { value: num / den, argmin_z: z, bisection_residual: m.residual };
    if m.converged {
        Ok(out)
    } else {
        Err(Error::Convergence(Box::new(out)))
    }
}

/// Like [`s_ball`] but returns the best value even when polishing missed
/// the residual target.
pub fn s_value(x: &PointB, y: &PointB, opts: &SolveOpts) -> Result<f64> {
    match s_ball(x, y, opts) {
        Ok(v) => Ok(v.value),
        Err(Error::Convergence(v)) => Ok(v.value),
        Err(e) => Err(e),
    }
}

/// Norm of the wedge product `x ∧ y`; zero exactly for pairs collinear
/// with the origin.
pub fn cross_norm(x: &[f64], y: &[f64]) -> f64 {
    geometry::wedge_norm(x, y)
}

/// `|x - y| / (2 - |x + y|)`, exact for pairs collinear with the origin.
pub fn s_collinear(x: &PointB, y: &PointB) -> Result<f64> {
    if x.dim() != y.dim() {
        return domain("dimension mismatch");
    }
    let cross = cross_norm(x.coords(), y.coords());
    if cross > COLLINEAR_TOL {
        return Err(Error::NotCollinear(cross));
    }
    Ok(collinear_bound(x, y))
}

/// The collinear formula as an upper bound valid for every pair.
pub fn collinear_bound(x: &PointB, y: &PointB) -> f64 {
    let sum: Vec<f64> = x.coords().iter().zip(y.coords()).map(|(a, b)| a + b).collect();
    x.dist(y) / (2.0 - geometry::norm(&sum))
}

/// `s(x, x̄)` in the disk for `Re x > 0`, `Im x > 0`.
pub fn s_conjugate(x: &PointB) -> Result<f64> {
    let w = x.planar()?;
    if !(w.re > 0.0 && w.im > 0.0) {
        return domain(format!("s_conjugate needs Re x > 0 and Im x > 0, got {w}"));
    }
    if (w - 0.5).norm() > 0.5 {
        Ok(w.norm())
    } else {
        Ok(w.im / ((1.0 - w.re).powi(2) + w.im * w.im).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> PointB {
        PointB::new(c.to_vec()).unwrap()
    }

    fn s(x: &[f64], y: &[f64]) -> SValue {
        s_ball(&p(x), &p(y), &SolveOpts::default()).unwrap()
    }

    #[test]
    fn origin_to_point() {
        let v = s(&[0.0, 0.0], &[0.3, 0.4]);
        assert!((v.value - 1.0 / 3.0).abs() < 1e-13, "{}", v.value);
    }

    #[test]
    fn collinear_reals() {
        let v = s(&[0.6, 0.0], &[-0.2, 0.0]);
        assert!((v.value - 0.5).abs() < 1e-13);
        assert!(v.bisection_residual <= 1e-12);
        // the optimal mirror point is z = 1
        assert!((v.argmin_z.coords()[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn conjugate_pair_second_branch() {
        // dense-grid brute force gives 0.49613893835683387
        let v = s(&[0.3, 0.4], &[0.3, -0.4]);
        assert!((v.value - 0.4961389383568338).abs() < 1e-12);
    }

    #[test]
    fn coincident_points() {
        let v = s(&[0.2, -0.1], &[0.2, -0.1]);
        assert_eq!(v.value, 0.0);
        assert!(v.argmin_z.is_boundary());
        assert!((v.argmin_z.coords()[0] - 0.2 / 0.05f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn stored_argmin_reproduces_value() {
        let x = p(&[0.1, 0.5, -0.3]);
        let y = p(&[-0.4, 0.2, 0.6]);
        let v = s_ball(&x, &y, &SolveOpts::default()).unwrap();
        let z = v.argmin_z.coords();
        let again = x.dist(&y) / (geometry::dist(x.coords(), z) + geometry::dist(z, y.coords()));
        assert!((again - v.value).abs() < 1e-12);
        assert!(v.bisection_residual <= 1e-12);
    }

    #[test]
    fn symmetric_bitwise() {
        let a = p(&[0.41, -0.27]);
        let b = p(&[-0.63, 0.12]);
        let o = SolveOpts::default();
        assert_eq!(s_ball(&a, &b, &o).unwrap(), s_ball(&b, &a, &o).unwrap());
    }

    #[test]
    fn rejects_bad_opts_and_points() {
        let o = SolveOpts { grid_count: 4, ..SolveOpts::default() };
        assert!(matches!(s_ball(&p(&[0.1, 0.0]), &p(&[0.2, 0.0]), &o), Err(Error::Domain(_))));
        let z = PointB::boundary(vec![1.0, 0.0]).unwrap();
        assert!(s_ball(&p(&[0.1, 0.0]), &z, &SolveOpts::default()).is_err());
    }

    #[test]
    fn starved_polish_reports_convergence_error() {
        let o = SolveOpts { refine_tol: 1e-300, max_refine_iters: 1, ..SolveOpts::default() };
        match s_ball(&p(&[0.3, 0.1]), &p(&[-0.2, 0.5]), &o) {
            Err(Error::Convergence(v)) => {
                assert!(v.value > 0.0 && v.value < 1.0);
                assert!(v.bisection_residual > 1e-300);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn collinear_formula() {
        assert!((s_collinear(&p(&[0.6, 0.0]), &p(&[-0.2, 0.0])).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(s_collinear(&p(&[0.3, 0.0]), &p(&[0.3, 0.0])).unwrap(), 0.0);
        assert!((s_collinear(&p(&[0.5, 0.0]), &p(&[-0.5, 0.0])).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(
            s_collinear(&p(&[0.5, 0.0]), &p(&[0.0, 0.5])),
            Err(Error::NotCollinear(_))
        ));
    }

    #[test]
    fn conjugate_formula_branches() {
        let first = s_conjugate(&p(&[0.1, 0.6])).unwrap();
        assert!((first - 0.37f64.sqrt()).abs() < 1e-15);
        let second = s_conjugate(&p(&[0.3, 0.4])).unwrap();
        assert!((second - 0.4 / 0.65f64.sqrt()).abs() < 1e-15);
        let edge = s_conjugate(&p(&[0.5, 0.5])).unwrap();
        assert!((edge - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(matches!(s_conjugate(&p(&[-0.1, 0.5])), Err(Error::Domain(_))));
        assert!(s_conjugate(&p(&[0.1, 0.1, 0.1])).is_err());
    }

    #[test]
    fn residual_sign_matches_path_slope() {
        let (a, b) = (0.45, Complex64::new(-0.2, 0.35));
        for k in 0..50 {
            let t = k as f64 * 0.125;
            let h = 1e-6;
            let slope = (path_at(a, b, t + h) - path_at(a, b, t - h)) / (2.0 * h);
            let r = reflection_residual(a, b, t);
            if slope.abs() > 1e-6 {
                assert_eq!(slope > 0.0, r > 0.0, "theta {t}");
            }
        }
    }
}
