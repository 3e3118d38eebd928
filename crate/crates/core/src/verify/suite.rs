//! Batch check of every inclusion statement over a grid of centres and radii.
//!
//! A cell is a pair `(|x|, p)` with `p ∈ (0, 1)` a radius parameter mapped
//! to each metric's natural range: `s`- and `j*`-radii use `p` directly,
//! hyperbolic and `j`-radii use `2 artanh(p)`, Euclidean radii `p(1 - |x|)`.
//! The centre direction of each cell is drawn from a seeded generator, so a
//! run is reproducible from its seed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{SQRT_2, TAU};

use super::{
    brute_force_s, default_tolerance, sphere_samples, worst_sample, BallSpec, InclusionReport,
    Witness, TOL_DEFAULT,
};
use crate::error::Result;
use crate::geometry::PointB;
use crate::inclusions::{self, ClaimKind, Direction, InclusionBound};
use crate::metrics::{self, MetricKind, SolveOpts};

/// Grid and sampling parameters of [`verify_theorem_suite`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub norms: Vec<f64>,
    pub params: Vec<f64>,
    /// Samples per traced sphere.
    pub samples: usize,
    /// Random pairs for the pointwise comparisons.
    pub pairs: usize,
    pub seed: u64,
    /// Every inner radius is multiplied by `1 + inflate` before checking.
    pub inflate: f64,
    pub opts: SolveOpts,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            norms: vec![0.0, 0.3, 0.5, 0.7, 0.9],
            params: vec![0.1, 0.3, 0.5, 0.7, 0.9],
            samples: 360,
            pairs: 200,
            seed: 42,
            inflate: 0.0,
            opts: SolveOpts::default(),
        }
    }
}

/// One inclusion claim: for a cell returns the balls `(inner, outer)` whose
/// inclusion is asserted, or `None` where the claim does not apply.
struct Claim {
    id: &'static str,
    kind: ClaimKind,
    balls: BallPair,
}

type BallPair = fn(&PointB, f64) -> Result<Option<(BallSpec, BallSpec)>>;

fn big(p: f64) -> f64 {
    2.0 * p.atanh()
}

fn spec(metric: MetricKind, x: &PointB, r: f64) -> BallSpec {
    BallSpec::new(metric, x.clone(), r)
}

/// `B_bound(inner) ⊆ B_given(r)`.
fn inner_of(b: InclusionBound, x: &PointB) -> Option<(BallSpec, BallSpec)> {
    Some((spec(b.bound, x, b.inner_radius), spec(b.given, x, b.given_radius)))
}

/// `B_given(r) ⊆ B_bound(outer)`.
fn outer_of(b: InclusionBound, x: &PointB) -> Option<(BallSpec, BallSpec)> {
    Some((spec(b.given, x, b.given_radius), spec(b.bound, x, b.outer_radius)))
}

fn claims() -> Vec<Claim> {
    use ClaimKind::*;
    use Direction::*;
    vec![
        Claim { id: "j-rho/given-R/inner", kind: IfAndOnlyIf, balls: |x, p| Ok(inner_of(inclusions::j_vs_rho(x, big(p), FixSecond)?, x)) },
        Claim { id: "j-rho/given-R/outer", kind: IfAndOnlyIf, balls: |x, p| Ok(outer_of(inclusions::j_vs_rho(x, big(p), FixSecond)?, x)) },
        Claim { id: "j-rho/given-K/inner", kind: IfAndOnlyIf, balls: |x, p| Ok(inner_of(inclusions::j_vs_rho(x, big(p), FixFirst)?, x)) },
        Claim { id: "j-rho/given-K/outer", kind: IfAndOnlyIf, balls: |x, p| Ok(outer_of(inclusions::j_vs_rho(x, big(p), FixFirst)?, x)) },
        Claim { id: "s-euclid/inner", kind: IfAndOnlyIf, balls: |x, p| Ok(inner_of(inclusions::s_vs_euclid(x, p)?, x)) },
        Claim { id: "s-euclid/outer", kind: IfAndOnlyIf, balls: |x, p| Ok(outer_of(inclusions::s_vs_euclid(x, p)?, x)) },
        Claim {
            id: "jstar-euclid/inner",
            kind: IfAndOnlyIf,
            balls: |x, p| Ok(inner_of(inclusions::jstar_vs_euclid(x, p * (1.0 - x.norm()))?, x)),
        },
        Claim {
            id: "jstar-euclid/outer",
            kind: IfAndOnlyIf,
            balls: |x, p| Ok(outer_of(inclusions::jstar_vs_euclid(x, p * (1.0 - x.norm()))?, x)),
        },
        Claim { id: "euclid-jstar/inner", kind: IfAndOnlyIf, balls: |x, p| Ok(inner_of(inclusions::euclid_vs_jstar(x, p)?, x)) },
        Claim { id: "euclid-jstar/outer", kind: IfAndOnlyIf, balls: |x, p| Ok(outer_of(inclusions::euclid_vs_jstar(x, p)?, x)) },
        Claim { id: "s-jstar/inner", kind: Sufficient, balls: |x, p| Ok(inner_of(inclusions::s_vs_jstar(p, false)?, x)) },
        Claim { id: "s-jstar/inner-convex", kind: Sufficient, balls: |x, p| Ok(inner_of(inclusions::s_vs_jstar(p, true)?, x)) },
        Claim { id: "s-jstar/outer", kind: Sufficient, balls: |x, p| Ok(outer_of(inclusions::s_vs_jstar(p, false)?, x)) },
        Claim { id: "s-j/inner", kind: Sufficient, balls: |x, p| Ok(inner_of(inclusions::s_vs_j(p, false)?, x)) },
        Claim { id: "s-j/inner-convex", kind: Sufficient, balls: |x, p| Ok(inner_of(inclusions::s_vs_j(p, true)?, x)) },
        Claim { id: "s-j/outer", kind: Sufficient, balls: |x, p| Ok(outer_of(inclusions::s_vs_j(p, false)?, x)) },
        Claim { id: "jstar-rho/given-R/inner", kind: IfAndOnlyIf, balls: |x, p| Ok(inner_of(inclusions::jstar_vs_rho(x, big(p), FixSecond)?, x)) },
        Claim { id: "jstar-rho/given-R/outer", kind: IfAndOnlyIf, balls: |x, p| Ok(outer_of(inclusions::jstar_vs_rho(x, big(p), FixSecond)?, x)) },
        Claim { id: "jstar-rho/given-k/inner", kind: IfAndOnlyIf, balls: |x, p| Ok(inner_of(inclusions::jstar_vs_rho(x, p, FixFirst)?, x)) },
        Claim { id: "jstar-rho/given-k/outer", kind: IfAndOnlyIf, balls: |x, p| Ok(outer_of(inclusions::jstar_vs_rho(x, p, FixFirst)?, x)) },
        Claim { id: "s-rho-sufficient/given-R/inner", kind: Sufficient, balls: |x, p| Ok(inner_of(inclusions::s_rho_sufficient(x, big(p), FixSecond)?, x)) },
        Claim { id: "s-rho-sufficient/given-R/outer", kind: Sufficient, balls: |x, p| Ok(outer_of(inclusions::s_rho_sufficient(x, big(p), FixSecond)?, x)) },
        Claim { id: "s-rho-sufficient/given-t/inner", kind: Sufficient, balls: |x, p| Ok(inner_of(inclusions::s_rho_sufficient(x, p, FixFirst)?, x)) },
        Claim { id: "s-rho-sufficient/given-t/outer", kind: Sufficient, balls: |x, p| Ok(outer_of(inclusions::s_rho_sufficient(x, p, FixFirst)?, x)) },
    ]
}

/// Whether a claim is sharp in the side it checks, i.e. whether inflating
/// the inner ball must break it.
pub fn claim_is_iff(id: &str) -> bool {
    claims().iter().any(|c| c.id == id && c.kind == ClaimKind::IfAndOnlyIf)
}

/// Seeded centre directions, one per norm.
fn centres(cfg: &SuiteConfig) -> Result<Vec<PointB>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    cfg.norms
        .iter()
        .map(|&a| {
            let phi: f64 = rng.gen_range(0.0..TAU);
            PointB::from_complex(Complex64::from_polar(a, phi))
        })
        .collect()
}

fn witness(inner: &BallSpec, outer: &BallSpec, point: Vec<f64>) -> Witness {
    Witness {
        center: inner.center.coords().to_vec(),
        inner_radius: inner.radius,
        outer_radius: outer.radius,
        point,
    }
}

fn run_claim(claim: &Claim, xs: &[PointB], cfg: &SuiteConfig) -> InclusionReport {
    let grid = vec![cfg.norms.len(), cfg.params.len()];
    let mut rep: Option<InclusionReport> = None;
    for x in xs {
        for &p in &cfg.params {
            let balls = match (claim.balls)(x, p) {
                Ok(Some(b)) => b,
                Ok(None) => continue,
                Err(e) => {
                    let r = rep.get_or_insert_with(|| InclusionReport::empty(claim.id, grid.clone(), TOL_DEFAULT));
                    r.fail_note(format!("|x|={} p={}: {e}", x.norm(), p));
                    continue;
                }
            };
            let (mut inner, outer) = balls;
            inner.radius *= 1.0 + cfg.inflate;
            let r = rep.get_or_insert_with(|| {
                InclusionReport::empty(claim.id, grid.clone(), default_tolerance(inner.metric))
            });
            match worst_sample(&inner, &outer, cfg.samples, &cfg.opts) {
                Ok(Some((v, point))) => r.absorb(v, witness(&inner, &outer, point)),
                Ok(None) => {}
                Err(e) => r.fail_note(format!("|x|={} p={}: {e}", x.norm(), p)),
            }
        }
    }
    rep.unwrap_or_else(|| InclusionReport::empty(claim.id, grid, TOL_DEFAULT))
}

/// Pointwise comparisons between `s` and `j*` on seeded random pairs.
fn comparison_reports(cfg: &SuiteConfig) -> Vec<InclusionReport> {
    type Check = fn(f64, f64, f64) -> f64;
    // (id, violation(s, j*, collinear bound))
    let checks: [(&str, Check); 4] = [
        ("s-jstar/lower", |s, js, _| js - s),
        ("s-jstar/upper", |s, js, _| s - 2f64.min(SQRT_2) * js),
        ("s-jstar/ratio", |s, js, _| s - js / (1.0 - js)),
        ("s-collinear-bound", |s, _, c| s - c),
    ];
    let mut reps: Vec<InclusionReport> = checks
        .iter()
        .map(|(id, _)| InclusionReport::empty(*id, vec![cfg.pairs], TOL_DEFAULT))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    for _ in 0..cfg.pairs {
        let x = random_point(&mut rng, 0.99);
        let y = random_point(&mut rng, 0.99);
        let s = match metrics::s_value(&x, &y, &cfg.opts) {
            Ok(v) => v,
            Err(e) => {
                reps.iter_mut().for_each(|r| r.fail_note(e.to_string()));
                continue;
            }
        };
        let js = metrics::jstar_ball(&x, &y).unwrap_or(f64::NAN);
        let col = metrics::collinear_bound(&x, &y);
        for (rep, (_, f)) in reps.iter_mut().zip(checks.iter()) {
            let w = Witness {
                center: x.coords().to_vec(),
                inner_radius: s,
                outer_radius: js,
                point: y.coords().to_vec(),
            };
            rep.absorb(f(s, js, col), w);
        }
    }
    reps
}

/// A uniformly distributed point of the disk of radius `r`.
pub(crate) fn random_point(rng: &mut ChaCha8Rng, r: f64) -> PointB {
    loop {
        let (a, b): (f64, f64) = (rng.gen_range(-r..r), rng.gen_range(-r..r));
        if a * a + b * b < r * r {
            return PointB::new(vec![a, b]).expect("inside the disk");
        }
    }
}

/// The necessary `s`/hyperbolic bounds are realised by their witnesses:
/// the hyperbolic distances to the line points of `S_s(x, t)`, and the
/// `s`-distances to the line points of `S_ρ(x, R)`.
fn necessary_reports(xs: &[PointB], cfg: &SuiteConfig) -> Vec<InclusionReport> {
    let grid = vec![cfg.norms.len(), cfg.params.len()];
    let mut out = Vec::new();
    for (id, direction) in [
        ("s-rho-necessary/given-R", Direction::FixSecond),
        ("s-rho-necessary/given-t", Direction::FixFirst),
    ] {
        let mut rep = InclusionReport::empty(id, grid.clone(), TOL_DEFAULT);
        for x in xs {
            for &p in &cfg.params {
                let value = if direction == Direction::FixSecond { big(p) } else { p };
                let attained = |b: &InclusionBound| -> Result<[f64; 2]> {
                    let d = |y: &PointB| match direction {
                        Direction::FixSecond => metrics::s_value(x, y, &cfg.opts),
                        Direction::FixFirst => metrics::rho_ball(x, y),
                    };
                    Ok([d(&b.witnesses[0])?, d(&b.witnesses[1])?])
                };
                let res = inclusions::s_rho_necessary(x, value, direction)
                    .and_then(|b| attained(&b).map(|a| (b, a)));
                match res {
                    Ok((b, [lo, hi])) => {
                        let gap = (lo - b.inner_radius).abs().max((hi - b.outer_radius).abs());
                        let w = Witness {
                            center: x.coords().to_vec(),
                            inner_radius: b.inner_radius,
                            outer_radius: b.outer_radius,
                            point: b.witnesses[1].coords().to_vec(),
                        };
                        rep.absorb(gap, w);
                    }
                    Err(e) => rep.fail_note(format!("|x|={} p={}: {e}", x.norm(), p)),
                }
            }
        }
        out.push(rep);
    }
    out
}

/// `B_s(x, t) ⊆ B_{j*}(x, t) ⊆ B(q, r)` for `t >= |x| > 0`, checked on the
/// `j*`-sphere, plus `|q| + r < 1`.
fn enclosing_report(xs: &[PointB], cfg: &SuiteConfig) -> InclusionReport {
    let grid = vec![cfg.norms.len(), cfg.params.len()];
    let mut rep = InclusionReport::empty("s-enclosing-ball", grid, TOL_DEFAULT);
    for x in xs {
        for &t in &cfg.params {
            if x.norm() == 0.0 || t < x.norm() {
                continue;
            }
            let res = inclusions::s_enclosing_ball(x, t).and_then(|e| {
                let inner = BallSpec::new(MetricKind::JStar, x.clone(), t * (1.0 + cfg.inflate));
                let samples = sphere_samples(&inner, cfg.samples + cfg.samples % 2, &cfg.opts)?;
                Ok((e, inner, samples))
            });
            match res {
                Ok((e, inner, samples)) => {
                    if !e.fits_in_unit {
                        rep.fail_note(format!("|x|={} t={t}: enclosing ball leaves the unit disk", x.norm()));
                    }
                    let worst = samples
                        .into_iter()
                        .flatten()
                        .map(|y| (crate::geometry::dist(y.coords(), &e.ball.center) - e.ball.radius, y))
                        .max_by(|a, b| a.0.total_cmp(&b.0));
                    if let Some((v, y)) = worst {
                        let w = Witness {
                            center: x.coords().to_vec(),
                            inner_radius: inner.radius,
                            outer_radius: e.ball.radius,
                            point: y.coords().to_vec(),
                        };
                        rep.absorb(v, w);
                    }
                }
                Err(e) => rep.fail_note(format!("|x|={} t={t}: {e}", x.norm())),
            }
        }
    }
    rep
}

/// Run every inclusion statement over the configured grid.
///
/// Returns one report per claim, in a fixed order. An empty grid returns an
/// empty list. Failures are recorded in the reports, never raised.
pub fn verify_theorem_suite(cfg: &SuiteConfig) -> Vec<InclusionReport> {
    if cfg.norms.is_empty() || cfg.params.is_empty() {
        return Vec::new();
    }
    let xs = match centres(cfg) {
        Ok(xs) => xs,
        Err(e) => {
            let mut r = InclusionReport::empty("config", vec![cfg.norms.len(), cfg.params.len()], TOL_DEFAULT);
            r.fail_note(e.to_string());
            return vec![r];
        }
    };
    let mut out: Vec<InclusionReport> = claims().iter().map(|c| run_claim(c, &xs, cfg)).collect();
    out.extend(comparison_reports(cfg));
    out.extend(necessary_reports(&xs, cfg));
    out.push(enclosing_report(&xs, cfg));
    out
}

/// One cell of the exploratory check below the enclosing-ball threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExploreCell {
    pub norm: f64,
    pub t: f64,
    /// `max |y - q| - r` over the traced `s`-circle.
    pub s_excess: f64,
    /// `max |y - q| - r` over the `j*`-circle of the same radius.
    pub jstar_excess: f64,
}

/// For `0 < t < |x|`, measure how the `s`- and `j*`-circles sit relative to
/// the ball `B(q, r)` spanned by the two line points of `S_s(x, t)`. No
/// outcome is asserted; the numbers are reported as they come out.
pub fn explore_enclosing_below_threshold(
    norms: &[f64],
    params: &[f64],
    samples: usize,
    opts: &SolveOpts,
) -> Result<Vec<ExploreCell>> {
    let mut out = Vec::new();
    for &a in norms {
        for &t in params {
            if t.is_nan() || t >= a {
                continue;
            }
            let x = PointB::new(vec![a, 0.0])?;
            let (y0, y1) = crate::spheres::s_line_intersections(&x, t)?;
            let q: Vec<f64> = y0.coords().iter().zip(y1.coords()).map(|(u, v)| 0.5 * (u + v)).collect();
            let r = 0.5 * y0.dist(&y1);
            let excess = |m: MetricKind| -> Result<f64> {
                let pts = sphere_samples(&BallSpec::new(m, x.clone(), t), samples, opts)?;
                Ok(pts
                    .into_iter()
                    .flatten()
                    .map(|y| crate::geometry::dist(y.coords(), &q) - r)
                    .fold(f64::NEG_INFINITY, f64::max))
            };
            out.push(ExploreCell {
                norm: a,
                t,
                s_excess: excess(MetricKind::S)?,
                jstar_excess: excess(MetricKind::JStar)?,
            });
        }
    }
    Ok(out)
}

/// Oracle agreement between the production `s` evaluator and brute force on
/// seeded random pairs; returns the largest absolute difference.
pub fn oracle_gap(pairs: usize, m: usize, seed: u64, opts: &SolveOpts) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let x = random_point(&mut rng, 0.99);
        let y = random_point(&mut rng, 0.99);
        let a = metrics::s_value(&x, &y, opts)?;
        let b = brute_force_s(&x, &y, m)?;
        worst = worst.max((a - b).abs());
    }
    Ok(worst)
}
