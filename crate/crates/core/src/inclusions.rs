//! Closed-form inclusion radii between metric balls of the unit ball.
//!
//! Every function evaluates a formula; the `kind` and sharpness flags on the
//! result record what the underlying statement asserts, not what the
//! numerics happen to show. Where a `min`/`max` switches branch at a tie
//! point both branches are evaluated and required to agree.

use serde::Serialize;
use std::f64::consts::SQRT_2;
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::geometry::PointB;
use crate::metrics::MetricKind;
use crate::spheres::s_circle::tie_min;
use crate::spheres::{s_line_intersections, EuclideanBall};

/// What a bound statement claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClaimKind {
    /// The inclusions hold exactly when the radii satisfy the bounds.
    IfAndOnlyIf,
    /// Radii satisfying the bounds give the inclusions.
    Sufficient,
    /// The inclusions force the bounds.
    Necessary,
    /// Believed to be if-and-only-if; supported numerically only.
    Conjectured,
}

impl ClaimKind {
    pub fn name(self) -> &'static str {
        match self {
            ClaimKind::IfAndOnlyIf => "iff",
            ClaimKind::Sufficient => "sufficient",
            ClaimKind::Necessary => "necessary",
            ClaimKind::Conjectured => "conjectured",
        }
    }
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which radius of a metric pair `first-second` is the input.
///
/// For `j-rho`, `FixSecond` takes a hyperbolic radius `R` and bounds the
/// `j`-radii `K0, K1`; `FixFirst` takes `K` and bounds `R0, R1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    FixFirst,
    FixSecond,
}

/// `B_bound(x, inner) ⊆ B_given(x, given_radius) ⊆ B_bound(x, outer)`.
///
/// For necessary-only bounds `inner_radius` is the largest admissible
/// inner radius and `outer_radius` the smallest admissible outer radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InclusionBound {
    pub kind: ClaimKind,
    pub given: MetricKind,
    pub given_radius: f64,
    pub bound: MetricKind,
    pub inner_radius: f64,
    pub outer_radius: f64,
    pub inner_sharp: bool,
    pub outer_sharp: bool,
    /// Points on the given sphere where the extremal bound balls touch it.
    pub witnesses: Vec<PointB>,
}

/// A Euclidean ball together with whether it stays inside the unit ball.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnclosureResult {
    pub ball: EuclideanBall,
    pub fits_in_unit: bool,
}

fn interior_norm(x: &PointB) -> Result<f64> {
    if x.is_boundary() || x.norm() >= 1.0 {
        return domain(format!("|x| = {} is not inside the open unit ball", x.norm()));
    }
    Ok(x.norm())
}

fn unit_interval(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return domain(format!("{name} = {v} must lie in (0, 1)"));
    }
    Ok(())
}

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return domain(format!("{name} = {v} must be positive"));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn bound(
    kind: ClaimKind,
    given: MetricKind,
    given_radius: f64,
    metric: MetricKind,
    inner: f64,
    outer: f64,
    sharp: (bool, bool),
    witnesses: Vec<PointB>,
) -> InclusionBound {
    InclusionBound {
        kind,
        given,
        given_radius,
        bound: metric,
        inner_radius: inner,
        outer_radius: outer,
        inner_sharp: sharp.0,
        outer_sharp: sharp.1,
        witnesses,
    }
}

/// The points `x + far·x̂` and `x - near·x̂` on the line `L(0, x)`; `x̂` is
/// the first coordinate axis when `x = 0`.
fn axis_points(x: &PointB, far: f64, near: f64) -> Result<Vec<PointB>> {
    let ax = x.norm();
    let dir: Vec<f64> = if ax > 0.0 {
        x.coords().iter().map(|c| c / ax).collect()
    } else {
        let mut e = vec![0.0; x.dim()];
        e[0] = 1.0;
        e
    };
    let at = |d: f64| PointB::new(x.coords().iter().zip(&dir).map(|(c, e)| c + d * e).collect());
    Ok(vec![at(far)?, at(-near)?])
}

/// Euclidean balls about `x` inside and around `B_s(x, t)`. Both radii are
/// sharp; the witnesses are the two points of `S_s(x, t)` on `L(0, x)`.
pub fn s_vs_euclid(x: &PointB, t: f64) -> Result<InclusionBound> {
    unit_interval("t", t)?;
    let ax = interior_norm(x)?;
    let inner = 2.0 * t * (1.0 - ax) / (1.0 + t);
    let outer = tie_min(
        2.0 * t * (1.0 - ax) / (1.0 - t),
        2.0 * t * (1.0 + ax) / (1.0 + t),
        t == ax,
    )?;
    let witnesses = if ax > 0.0 {
        let (y0, y1) = s_line_intersections(x, t)?;
        vec![y0, y1]
    } else {
        axis_points(x, inner, inner)?
    };
    Ok(bound(
        ClaimKind::IfAndOnlyIf,
        MetricKind::S,
        t,
        MetricKind::Euclidean,
        inner,
        outer,
        (true, true),
        witnesses,
    ))
}

/// Whether the smallest Euclidean ball about `x` containing `B_s(x, t)`
/// stays inside the unit ball.
pub fn s_enclosure_fits(x: &PointB, t: f64) -> Result<bool> {
    unit_interval("t", t)?;
    let ax = interior_norm(x)?;
    Ok((t < 1.0 / 3.0 && t <= ax)
        || (ax < 1.0 / 3.0 && ax < t && t < (1.0 - ax) / (1.0 + 3.0 * ax)))
}

/// `j*`-balls about `x` inside and around the Euclidean ball `B(x, r)`.
pub fn jstar_vs_euclid(x: &PointB, r: f64) -> Result<InclusionBound> {
    let ax = interior_norm(x)?;
    if !(r > 0.0 && r < 1.0 - ax) {
        return domain(format!("Euclidean radius {r} must lie in (0, 1 - |x|) = (0, {})", 1.0 - ax));
    }
    let k0 = r / (2.0 - (r - 2.0 * ax).abs());
    let k1 = r / (2.0 - 2.0 * ax - r);
    Ok(bound(
        ClaimKind::IfAndOnlyIf,
        MetricKind::Euclidean,
        r,
        MetricKind::JStar,
        k0,
        k1,
        (true, true),
        axis_points(x, r, r)?,
    ))
}

/// Euclidean balls about `x` inside and around `B_{j*}(x, k)`.
pub fn euclid_vs_jstar(x: &PointB, k: f64) -> Result<InclusionBound> {
    unit_interval("k", k)?;
    let ax = interior_norm(x)?;
    let r0 = 2.0 * k * (1.0 - ax) / (1.0 + k);
    let r1 = tie_min(
        2.0 * k * (1.0 - ax) / (1.0 - k),
        2.0 * k * (1.0 + ax) / (1.0 + k),
        k == ax,
    )?;
    Ok(bound(
        ClaimKind::IfAndOnlyIf,
        MetricKind::JStar,
        k,
        MetricKind::Euclidean,
        r0,
        r1,
        (true, true),
        Vec::new(),
    ))
}

/// `j*`-radii around `B_s(x, t)`, valid for every centre. With
/// `convex_sharpening` the inner radius uses the convexity of the ball.
pub fn s_vs_jstar(t: f64, convex_sharpening: bool) -> Result<InclusionBound> {
    unit_interval("t", t)?;
    let inner = if convex_sharpening {
        t / tie_min(1.0 + t, SQRT_2, t == SQRT_2 - 1.0)?
    } else {
        t / (1.0 + t)
    };
    Ok(bound(
        ClaimKind::Sufficient,
        MetricKind::S,
        t,
        MetricKind::JStar,
        inner,
        t,
        (false, true),
        Vec::new(),
    ))
}

/// `j`-radii around `B_s(x, t)`, valid for every centre.
pub fn s_vs_j(t: f64, convex_sharpening: bool) -> Result<InclusionBound> {
    unit_interval("t", t)?;
    let plain = (2.0 * t).ln_1p();
    let inner = if convex_sharpening {
        ((t + SQRT_2) / (SQRT_2 - t)).ln().max(plain)
    } else {
        plain
    };
    Ok(bound(
        ClaimKind::Sufficient,
        MetricKind::S,
        t,
        MetricKind::J,
        inner,
        ((1.0 + t) / (1.0 - t)).ln(),
        (false, true),
        Vec::new(),
    ))
}

/// The smallest Euclidean ball containing `B_s(x, t)` for `|x| <= t`; it
/// also contains `B_{j*}(x, t)`.
pub fn s_enclosing_ball(x: &PointB, t: f64) -> Result<EnclosureResult> {
    unit_interval("t", t)?;
    let ax = interior_norm(x)?;
    if ax == 0.0 {
        return domain("the enclosing ball needs x ≠ 0");
    }
    if t < ax {
        return Err(Error::UnsupportedRegime(format!(
            "enclosing ball only established for t >= |x| (t = {t}, |x| = {ax})"
        )));
    }
    let scale = 1.0 - 2.0 * t / (1.0 + t);
    let center: Vec<f64> = x.coords().iter().map(|c| c * scale).collect();
    let radius = 2.0 * t / (1.0 + t);

    let (y0, y1) = s_line_intersections(x, t)?;
    let mid: Vec<f64> = y0.coords().iter().zip(y1.coords()).map(|(a, b)| 0.5 * (a + b)).collect();
    let gap = crate::geometry::dist(&mid, &center).max((0.5 * y0.dist(&y1) - radius).abs());
    if gap > 1e-12 {
        return Err(Error::Degenerate(format!("enclosing ball disagrees with its witnesses by {gap:e}")));
    }
    let fits = crate::geometry::norm(&center) + radius < 1.0;
    Ok(EnclosureResult { ball: EuclideanBall { center, radius }, fits_in_unit: fits })
}

/// Inclusions between `j`- and hyperbolic balls about `x`.
///
/// `FixSecond`: given `R`, `B_j(x, K0) ⊆ B_ρ(x, R) ⊆ B_j(x, K1)`.
/// `FixFirst`: given `K`, `B_ρ(x, R0) ⊆ B_j(x, K) ⊆ B_ρ(x, R1)`.
pub fn j_vs_rho(x: &PointB, value: f64, direction: Direction) -> Result<InclusionBound> {
    positive("radius", value)?;
    let ax = interior_norm(x)?;
    Ok(match direction {
        Direction::FixSecond => {
            let big_r = value;
            let em1 = big_r.exp_m1();
            let k0 = ((1.0 + ax) * (big_r / 2.0).sinh())
                .ln_1p()
                .max(((1.0 - ax) * em1 / 2.0).ln_1p());
            let k1 = ((1.0 + ax) * em1 / 2.0).ln_1p();
            bound(ClaimKind::IfAndOnlyIf, MetricKind::Rho, big_r, MetricKind::J, k0, k1, (true, true), Vec::new())
        }
        Direction::FixFirst => {
            let big_k = value;
            let em1 = big_k.exp_m1();
            let r0 = (2.0 * em1 / (1.0 + ax)).ln_1p();
            let r1 = (2.0 * (em1 / (1.0 + ax)).asinh())
                .min(((2.0 * big_k.exp() - 1.0 - ax) / (1.0 - ax)).ln());
            bound(ClaimKind::IfAndOnlyIf, MetricKind::J, big_k, MetricKind::Rho, r0, r1, (true, true), Vec::new())
        }
    })
}

/// Inclusions between `j*`- and hyperbolic balls about `x`.
///
/// `FixSecond`: given `R`, bounds `k0, k1`; `FixFirst`: given `k`, bounds
/// `R0, R1`.
pub fn jstar_vs_rho(x: &PointB, value: f64, direction: Direction) -> Result<InclusionBound> {
    let ax = interior_norm(x)?;
    Ok(match direction {
        Direction::FixSecond => {
            positive("R", value)?;
            let em1 = value.exp_m1();
            let e = value.exp();
            let sh = (1.0 + ax) * (value / 2.0).sinh();
            let k0 = (sh / (2.0 + sh)).max((1.0 - ax) * em1 / (3.0 + e - ax * em1));
            let k1 = (1.0 + ax) * em1 / (3.0 + e + ax * em1);
            bound(ClaimKind::IfAndOnlyIf, MetricKind::Rho, value, MetricKind::JStar, k0, k1, (true, true), Vec::new())
        }
        Direction::FixFirst => {
            unit_interval("k", value)?;
            let (r0, r1) = rho_radii_of_jstar(ax, value);
            bound(ClaimKind::IfAndOnlyIf, MetricKind::JStar, value, MetricKind::Rho, r0, r1, (true, true), Vec::new())
        }
    })
}

/// Hyperbolic radii inside and around `B_{j*}(x, k)`.
fn rho_radii_of_jstar(ax: f64, k: f64) -> (f64, f64) {
    let r0 = (4.0 * k / ((1.0 - k) * (1.0 + ax))).ln_1p();
    let r1 = (2.0 * (2.0 * k / ((1.0 - k) * (1.0 + ax))).asinh())
        .min((4.0 * k / ((1.0 - k) * (1.0 - ax))).ln_1p());
    (r0, r1)
}

/// The hyperbolic radius of `B_s(0, t)`, which is a hyperbolic ball.
pub fn s_rho_origin(t: f64) -> Result<f64> {
    unit_interval("t", t)?;
    Ok(((1.0 + 3.0 * t) / (1.0 - t)).ln())
}

/// `max{(1+t)(1+|x|)(1-3t+|x|(1+t)), (1-t)(1-|x|)(1+3t-|x|(1-t))}`.
pub fn l_factor(t: f64, ax: f64) -> f64 {
    let a = (1.0 + t) * (1.0 + ax) * (1.0 - 3.0 * t + ax * (1.0 + t));
    let b = (1.0 - t) * (1.0 - ax) * (1.0 + 3.0 * t - ax * (1.0 - t));
    a.max(b)
}

/// The four radius expressions shared by the necessary and the conjectured
/// `s`/`ρ` bounds, with the witnesses that realise them.
fn s_rho_extremal(x: &PointB, value: f64, direction: Direction, kind: ClaimKind) -> Result<InclusionBound> {
    let ax = interior_norm(x)?;
    let sharp = kind == ClaimKind::Conjectured;
    match direction {
        Direction::FixSecond => {
            positive("R", value)?;
            let k = (value / 2.0).tanh();
            let t0 = k * (1.0 - ax * ax)
                / (2.0 * (1.0 - ax * k) - (2.0 * ax - k * (1.0 + ax * ax)).abs());
            let em1 = value.exp_m1();
            let t1 = (1.0 + ax) * em1 / (3.0 + value.exp() + ax * em1);
            // axis points of S_ρ(x, R)
            let far = (ax + k) / (1.0 + ax * k) - ax;
            let near = ax - (ax - k) / (1.0 - ax * k);
            let w = axis_points(x, far, near)?;
            Ok(bound(kind, MetricKind::Rho, value, MetricKind::S, t0, t1, (sharp, sharp), vec![w[1].clone(), w[0].clone()]))
        }
        Direction::FixFirst => {
            unit_interval("t", value)?;
            let t = value;
            let r0 = (4.0 * t / ((1.0 - t) * (1.0 + ax))).ln_1p();
            let l = l_factor(t, ax);
            if l <= 0.0 {
                return Err(Error::NonpositiveArg(l));
            }
            let r1 = 2.0 * (2.0 * t / l.sqrt()).asinh();
            let witnesses = if ax > 0.0 {
                let (y0, y1) = s_line_intersections(x, t)?;
                vec![y0, y1]
            } else {
                let r = 2.0 * t / (1.0 + t);
                axis_points(x, r, r)?
            };
            Ok(bound(kind, MetricKind::S, t, MetricKind::Rho, r0, r1, (sharp, sharp), witnesses))
        }
    }
}

/// Necessary conditions on hyperbolic/`s` radii for
/// `B_s(x, t0) ⊆ B_ρ(x, R) ⊆ B_s(x, t1)` (`FixSecond`, given `R`) or
/// `B_ρ(x, R0) ⊆ B_s(x, t) ⊆ B_ρ(x, R1)` (`FixFirst`, given `t`).
///
/// The witnesses are the points of the given sphere on `L(0, x)`: the
/// first realises the inner bound, the second the outer bound.
pub fn s_rho_necessary(x: &PointB, value: f64, direction: Direction) -> Result<InclusionBound> {
    s_rho_extremal(x, value, direction, ClaimKind::Necessary)
}

/// The same expressions as [`s_rho_necessary`], labelled as conjecturally
/// sharp in both directions.
pub fn conjecture_bounds(x: &PointB, value: f64, direction: Direction) -> Result<InclusionBound> {
    s_rho_extremal(x, value, direction, ClaimKind::Conjectured)
}

/// Sufficient `s`/hyperbolic radii, obtained by chaining the `j*` bounds.
pub fn s_rho_sufficient(x: &PointB, value: f64, direction: Direction) -> Result<InclusionBound> {
    let ax = interior_norm(x)?;
    Ok(match direction {
        Direction::FixSecond => {
            positive("R", value)?;
            let em1 = value.exp_m1();
            let e = value.exp();
            let sh = (1.0 + ax) * (value / 2.0).sinh();
            let t0 = (sh / (2.0 + sh)).max((1.0 - ax) * em1 / (3.0 + e - ax * em1));
            let t1 = (SQRT_2 * (1.0 + ax) * em1 / (3.0 + e + ax * em1)).min((1.0 + ax) * em1 / 4.0);
            bound(ClaimKind::Sufficient, MetricKind::Rho, value, MetricKind::S, t0, t1, (false, false), Vec::new())
        }
        Direction::FixFirst => {
            unit_interval("t", value)?;
            let t = value;
            let k = t / tie_min(1.0 + t, SQRT_2, t == SQRT_2 - 1.0)?;
            let r0 = (4.0 * k / ((1.0 - k) * (1.0 + ax))).ln_1p();
            let r1 = (2.0 * (2.0 * t / ((1.0 - t) * (1.0 + ax))).asinh())
                .min((4.0 * t / ((1.0 - t) * (1.0 - ax))).ln_1p());
            bound(ClaimKind::Sufficient, MetricKind::S, t, MetricKind::Rho, r0, r1, (false, false), Vec::new())
        }
    })
}
