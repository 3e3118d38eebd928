//! Command implementations.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde_json::json;

use trimetric::inclusions::{self, Direction, InclusionBound};
use trimetric::metrics::{self, s_ball};
use trimetric::spheres::{self, revolve_3d, Mesh, Trace};
use trimetric::verify::{self, render_conjecture, render_suite, SuiteConfig};
use trimetric::{Error, MetricKind, PointB, SValue, SolveOpts};

use crate::presets::{self, Preset};
use crate::svg::{Canvas, RenderSpec};
use crate::{
    usage, BoundsArgs, Cli, CliError, CliResult, Cmd, DistArgs, Format, Given, Global, RevolveArgs,
    TraceArgs, VerifyArgs, VerifyTarget,
};

/// Exact-identity tolerance of the origin column in the conjecture sweep.
pub const CONJECTURE_ORIGIN_TOL: f64 = 1e-9;
/// Largest accepted deviation of the conjecture sweep.
pub const CONJECTURE_TOL: f64 = 1e-3;

pub fn run(cli: &Cli) -> CliResult<u8> {
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Dist(a) => dist(a, g),
        Cmd::Trace(a) => trace(a, g),
        Cmd::Revolve(a) => revolve(a, g),
        Cmd::Bounds(a) => bounds(a, g),
        Cmd::Verify(a) => verify_cmd(a, g),
    }
}

fn reals(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("cannot parse '{p}' as a real number")))
        })
        .collect()
}

fn point(s: &str) -> CliResult<PointB> {
    let c = reals(s)?;
    if !(2..=3).contains(&c.len()) {
        return usage(format!("'{s}': expected 2 or 3 coordinates"));
    }
    Ok(PointB::new(c)?)
}

fn solve_opts(g: &Global) -> CliResult<SolveOpts> {
    let mut o = SolveOpts::default();
    if let Some(t) = g.tol {
        o.refine_tol = t;
    }
    o.validate()?;
    Ok(o)
}

fn format_of(g: &Global, default: Format, allowed: &[Format]) -> CliResult<Format> {
    let f = g.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return usage(format!("format {f:?} is not available for this command"));
    }
    Ok(f)
}

fn emit(g: &Global, content: &str) -> CliResult<()> {
    match &g.out {
        Some(path) => std::fs::write(path, content).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Twelve decimals; values that round to zero print without a sign.
fn fixed(v: f64) -> String {
    let s = format!("{v:.12}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

fn coords(v: &[f64]) -> String {
    v.iter().map(|c| fixed(*c)).collect::<Vec<_>>().join(",")
}

fn dist(a: &DistArgs, g: &Global) -> CliResult<u8> {
    let metric: MetricKind = a.metric.parse()?;
    let (x, y) = (point(&a.x)?, point(&a.y)?);
    let opts = solve_opts(g)?;
    let fmt = format_of(g, Format::Text, &[Format::Text, Format::Json])?;

    let (value, detail): (f64, Option<(SValue, bool)>) = if metric == MetricKind::S {
        match s_ball(&x, &y, &opts) {
            Ok(v) => (v.value, Some((v, true))),
            Err(Error::Convergence(v)) => (v.value, Some((*v, false))),
            Err(e) => return Err(e.into()),
        }
    } else {
        (metrics::distance(metric, &x, &y, &opts)?, None)
    };

    let out = match fmt {
        Format::Json => {
            let mut j = json!({ "metric": metric.name(), "x": x.coords(), "y": y.coords(), "value": value });
            if let Some((sv, converged)) = &detail {
                j["argmin_z"] = json!(sv.argmin_z.coords());
                j["residual"] = json!(sv.bisection_residual);
                j["converged"] = json!(converged);
            }
            format!("{j:#}\n")
        }
        _ => {
            let mut s = format!("{}\n", fixed(value));
            if let Some((sv, converged)) = &detail {
                let _ = writeln!(s, "argmin_z={}", coords(sv.argmin_z.coords()));
                let _ = writeln!(s, "residual={:e}", sv.bisection_residual);
                if !converged {
                    s.push_str("converged=false\n");
                }
            }
            s
        }
    };
    emit(g, &out)?;
    Ok(0)
}

/// Everything a trace command draws, after presets and flags are merged.
struct TracePlan {
    metric: MetricKind,
    x: PointB,
    radii: Vec<f64>,
    aux: bool,
    construction: Option<f64>,
}

fn plan_trace(a: &TraceArgs) -> CliResult<TracePlan> {
    let preset: Option<Preset> = match &a.preset {
        Some(n) => Some(presets::preset(n).ok_or_else(|| {
            CliError::Usage(format!("unknown preset '{n}' (expected one of {})", presets::NAMES.join(", ")))
        })?),
        None => None,
    };
    let metric = match (&a.metric, &preset) {
        (Some(m), _) => m.parse::<MetricKind>()?,
        (None, Some(p)) => p.metric,
        (None, None) => return usage("trace needs --metric or --preset"),
    };
    let x = match (&a.x, &preset) {
        (Some(s), _) => point(s)?,
        (None, Some(p)) => PointB::new(p.x.clone())?,
        (None, None) => return usage("trace needs --x or --preset"),
    };
    if x.dim() != 2 {
        return usage("trace draws planar circles; give two coordinates");
    }
    let radii = match (&a.radii, a.radius, &preset) {
        (Some(list), _, _) => reals(list)?,
        (None, Some(r), _) => vec![r],
        (None, None, Some(p)) => p.radii.clone(),
        (None, None, None) => return usage("trace needs a radius (--t) or --radii"),
    };
    Ok(TracePlan {
        metric,
        x,
        radii,
        aux: a.aux || preset.as_ref().is_some_and(|p| p.aux),
        construction: preset.and_then(|p| p.construction),
    })
}

fn trace_one(metric: MetricKind, x: &PointB, r: f64, a: &TraceArgs, opts: &SolveOpts) -> CliResult<Trace> {
    Ok(match metric {
        MetricKind::S => spheres::trace_s_circle(x, r, a.n, a.eps, opts)?,
        MetricKind::JStar => spheres::trace_jstar_circle(x, r, a.n)?,
        MetricKind::J => spheres::trace_j_circle(x, r, a.n)?,
        MetricKind::Rho => spheres::trace_rho_circle(x, r, a.n)?,
        MetricKind::Euclidean => spheres::trace_euclidean_circle(x, r, a.n)?,
    })
}

fn planar(p: &PointB) -> CliResult<Complex64> {
    Ok(p.planar()?)
}

/// Midcircle, Euclidean hulls and witness points around one metric circle.
fn overlay(cv: &mut Canvas, metric: MetricKind, x: &PointB, r: f64) -> CliResult<()> {
    let xc = planar(x)?;
    let aux = cv.spec().auxiliary.clone();
    let origin = Complex64::new(0.0, 0.0);
    if xc.norm() > 0.0 {
        cv.circle(origin, xc.norm(), &aux);
    }
    let hull: Option<InclusionBound> = match metric {
        MetricKind::S => Some(inclusions::s_vs_euclid(x, r)?),
        MetricKind::JStar => {
            let ax = xc.norm();
            let arc = 2.0 * r * (1.0 - ax) / (1.0 - r);
            cv.circle(xc, arc, &aux);
            Some(inclusions::euclid_vs_jstar(x, r)?)
        }
        _ => None,
    };
    if let Some(b) = hull {
        cv.circle(xc, b.inner_radius, &aux);
        cv.circle(xc, b.outer_radius, &aux);
        for w in &b.witnesses {
            cv.witness(planar(w)?);
        }
    }
    if metric == MetricKind::S && xc.norm() > 0.0 {
        for w in spheres::s_midcircle_intersections(x, r)?.points {
            cv.witness(planar(&w)?);
        }
    }
    Ok(())
}

/// The boundary point `z`, the candidates for direction `u`, and the rays
/// `z → x`, `z → 0`, `z → y`.
fn construction(cv: &mut Canvas, x: &PointB, t: f64, u: f64) -> CliResult<()> {
    let cs = spheres::candidate_points(x, t, u)?;
    let aux = cv.spec().auxiliary.clone();
    let z = planar(&cs.z)?;
    cv.segment(z, planar(x)?, &aux);
    cv.segment(z, Complex64::new(0.0, 0.0), &aux);
    cv.witness(z);
    for c in &cs.points {
        let y = planar(&c.point)?;
        cv.segment(z, y, &aux);
        cv.witness(y);
    }
    Ok(())
}

fn trace(a: &TraceArgs, g: &Global) -> CliResult<u8> {
    let plan = plan_trace(a)?;
    let opts = solve_opts(g)?;
    let fmt = format_of(g, Format::Svg, &[Format::Svg, Format::Csv, Format::Json])?;
    if fmt == Format::Csv && plan.radii.len() != 1 {
        return usage("csv output takes a single radius");
    }
    let traces: Vec<Trace> = plan
        .radii
        .iter()
        .map(|&r| trace_one(plan.metric, &plan.x, r, a, &opts))
        .collect::<CliResult<_>>()?;
    for t in &traces {
        eprintln!(
            "{} radius={} vertices={} max_residual={:e}",
            t.metric,
            fixed(t.radius),
            t.len(),
            t.max_residual()
        );
    }

    let out = match fmt {
        Format::Csv => traces[0].to_csv(),
        Format::Json => format!("{:#}\n", json!(traces)),
        _ => {
            let mut cv = Canvas::new(RenderSpec::default());
            if plan.aux {
                for &r in &plan.radii {
                    overlay(&mut cv, plan.metric, &plan.x, r)?;
                }
            }
            if let Some(u) = plan.construction {
                construction(&mut cv, &plan.x, plan.radii[0], u)?;
            }
            let stroke = cv.spec().metric_circle.clone();
            for t in &traces {
                let pts: Vec<Complex64> = t.vertices.iter().map(planar).collect::<CliResult<_>>()?;
                cv.polygon(&pts, &stroke);
            }
            cv.center_mark(planar(&plan.x)?);
            cv.finish()
        }
    };
    emit(g, &out)?;
    Ok(0)
}

/// A rotation of R³ taking `e1` to the unit vector `d`: a Householder
/// reflection composed with `z ↦ -z`.
fn rotate_axis(mesh: &mut Mesh, d: [f64; 3]) {
    let w = [1.0 - d[0], -d[1], -d[2]];
    let ww: f64 = w.iter().map(|c| c * c).sum();
    if ww == 0.0 {
        return;
    }
    for v in &mut mesh.vertices {
        let p = [v[0], v[1], -v[2]];
        let s = 2.0 * (w[0] * p[0] + w[1] * p[1] + w[2] * p[2]) / ww;
        *v = std::array::from_fn(|i| p[i] - s * w[i]);
    }
}

fn revolve(a: &RevolveArgs, g: &Global) -> CliResult<u8> {
    if a.n < 8 {
        return usage(format!("--n must be at least 8, got {}", a.n));
    }
    if a.m < 3 {
        return usage(format!("--m must be at least 3, got {}", a.m));
    }
    let fmt = format_of(g, Format::Obj, &[Format::Obj, Format::Json])?;
    let opts = solve_opts(g)?;
    let mut c = reals(&a.x)?;
    if c.len() == 2 {
        c.push(0.0);
    }
    if c.len() != 3 {
        return usage("revolve needs 2 or 3 coordinates");
    }
    let x = PointB::new(c)?;
    let ax = x.norm();
    let profile = spheres::trace_s_circle(&PointB::new(vec![ax, 0.0])?, a.t, a.n, a.eps, &opts)?;
    let mut mesh = revolve_3d(&profile, a.m)?;
    if ax > 0.0 {
        let d = x.coords();
        rotate_axis(&mut mesh, [d[0] / ax, d[1] / ax, d[2] / ax]);
    }
    eprintln!(
        "vertices={} faces={} euler={} profile_max_residual={:e}",
        mesh.vertices.len(),
        mesh.faces.len(),
        mesh.euler_characteristic(),
        profile.max_residual()
    );
    let out = match fmt {
        Format::Json => format!("{:#}\n", json!(mesh)),
        _ => mesh.to_obj(),
    };
    emit(g, &out)?;
    Ok(0)
}

fn direction(given: Given) -> Direction {
    match given {
        Given::First => Direction::FixFirst,
        Given::Second => Direction::FixSecond,
    }
}

fn first_only(pair: &str, given: Given) -> CliResult<()> {
    if given == Given::Second {
        return usage(format!("{pair} takes the radius of its first metric"));
    }
    Ok(())
}

fn bounds(a: &BoundsArgs, g: &Global) -> CliResult<u8> {
    let x = point(&a.x)?;
    let fmt = format_of(g, Format::Text, &[Format::Text, Format::Json])?;
    let v = a.value;
    let dir = direction(a.given);
    let mut extra: Vec<(&str, String)> = Vec::new();
    let b = match a.pair.as_str() {
        "s-euclid" => {
            first_only(&a.pair, a.given)?;
            extra.push(("fits_in_unit", inclusions::s_enclosure_fits(&x, v)?.to_string()));
            if v >= x.norm() {
                let e = inclusions::s_enclosing_ball(&x, v)?;
                extra.push(("enclosing_center", coords(&e.ball.center)));
                extra.push(("enclosing_radius", fixed(e.ball.radius)));
            }
            inclusions::s_vs_euclid(&x, v)?
        }
        "jstar-euclid" => match a.given {
            Given::First => inclusions::euclid_vs_jstar(&x, v)?,
            Given::Second => inclusions::jstar_vs_euclid(&x, v)?,
        },
        "s-jstar" => {
            first_only(&a.pair, a.given)?;
            inclusions::s_vs_jstar(v, a.convex)?
        }
        "s-j" => {
            first_only(&a.pair, a.given)?;
            inclusions::s_vs_j(v, a.convex)?
        }
        "j-rho" => inclusions::j_vs_rho(&x, v, dir)?,
        "jstar-rho" => inclusions::jstar_vs_rho(&x, v, dir)?,
        "s-rho-necessary" => inclusions::s_rho_necessary(&x, v, dir)?,
        "s-rho-sufficient" => inclusions::s_rho_sufficient(&x, v, dir)?,
        "s-rho-conjecture" => inclusions::conjecture_bounds(&x, v, dir)?,
        other => return usage(format!("unknown pair '{other}'")),
    };

    let out = match fmt {
        Format::Json => {
            let mut j = json!({ "pair": a.pair, "x": x.coords(), "bound": b });
            for (k, val) in &extra {
                j[*k] = json!(val);
            }
            format!("{j:#}\n")
        }
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "pair={}", a.pair);
            let _ = writeln!(s, "kind={}", b.kind);
            let _ = writeln!(s, "given={}", b.given);
            let _ = writeln!(s, "given_radius={}", fixed(b.given_radius));
            let _ = writeln!(s, "bound={}", b.bound);
            let _ = writeln!(s, "inner={}", fixed(b.inner_radius));
            let _ = writeln!(s, "outer={}", fixed(b.outer_radius));
            let _ = writeln!(s, "inner_sharp={}", b.inner_sharp);
            let _ = writeln!(s, "outer_sharp={}", b.outer_sharp);
            for w in &b.witnesses {
                let _ = writeln!(s, "witness={}", coords(w.coords()));
            }
            for (k, val) in &extra {
                let _ = writeln!(s, "{k}={val}");
            }
            s
        }
    };
    emit(g, &out)?;
    Ok(0)
}

/// `n` points evenly spread over `[a, b]`.
fn spread(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn verify_cmd(a: &VerifyArgs, g: &Global) -> CliResult<u8> {
    let opts = solve_opts(g)?;
    let fmt = format_of(g, Format::Text, &[Format::Text, Format::Json])?;
    match a.target {
        VerifyTarget::Suite => {
            let mut cfg = SuiteConfig {
                samples: a.samples,
                pairs: a.pairs,
                seed: g.seed,
                inflate: a.inflate,
                opts,
                ..SuiteConfig::default()
            };
            if let Some(n) = a.grid {
                if n < 2 {
                    return usage(format!("--grid must be at least 2, got {n}"));
                }
                cfg.norms = spread(0.0, 0.9, n);
                cfg.params = spread(0.1, 0.9, n);
            }
            if !(a.inflate >= 0.0 && a.inflate.is_finite()) {
                return usage(format!("--inflate must be non-negative, got {}", a.inflate));
            }
            let reports = verify::verify_theorem_suite(&cfg);
            let failed = reports.iter().filter(|r| !r.pass).count();
            let out = match fmt {
                Format::Json => format!("{:#}\n", json!({ "config": cfg, "reports": reports, "failed": failed })),
                _ => render_suite(&reports, &cfg),
            };
            emit(g, &out)?;
            Ok(if failed == 0 { 0 } else { 1 })
        }
        VerifyTarget::Conjecture => {
            let n = a.grid.unwrap_or(20);
            let rep = verify::verify_conjecture(n, a.trace_n, a.eps, &opts)?;
            let origin_err = rep
                .origin_cells()
                .map(|c| {
                    let exact = c.r0_conjectured;
                    (c.rho_min - exact)
                        .abs()
                        .max((c.rho_max - exact).abs())
                        .max((c.r1_conjectured - exact).abs())
                })
                .fold(0.0, f64::max);
            let pass = rep.max_deviation <= CONJECTURE_TOL && origin_err <= CONJECTURE_ORIGIN_TOL;
            let out = match fmt {
                Format::Json => format!(
                    "{:#}\n",
                    json!({ "report": rep, "origin_max_error": origin_err, "tolerance": CONJECTURE_TOL, "pass": pass })
                ),
                _ => {
                    let mut s = render_conjecture(&rep);
                    let _ = writeln!(
                        s,
                        "# origin_max_error={} tol={} origin_tol={} verdict={}",
                        verify::report::sig12(origin_err),
                        verify::report::sig12(CONJECTURE_TOL),
                        verify::report::sig12(CONJECTURE_ORIGIN_TOL),
                        if pass { "pass" } else { "FAIL" }
                    );
                    s
                }
            };
            emit(g, &out)?;
            Ok(if pass { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_parsing() {
        assert_eq!(reals("0.6, -0.2").unwrap(), vec![0.6, -0.2]);
        assert!(reals("0.6,x").is_err());
        assert!(point("0.5").is_err());
        assert!(point("0.1,0.2,0.3,0.4").is_err());
        assert!(matches!(point("0.9,0.9"), Err(CliError::Lib(_))));
    }

    #[test]
    fn rotation_maps_axis_and_keeps_lengths() {
        let d = [0.0, 0.6, 0.8];
        let mut m = Mesh { vertices: vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.3, -0.2, 0.5]], faces: vec![] };
        let before: Vec<f64> = m.vertices.iter().map(|v| v.iter().map(|c| c * c).sum::<f64>()).collect();
        rotate_axis(&mut m, d);
        for (a, b) in m.vertices[0].iter().zip(d) {
            assert!((a - b).abs() < 1e-15);
        }
        for (v, b) in m.vertices.iter().zip(before) {
            assert!((v.iter().map(|c| c * c).sum::<f64>() - b).abs() < 1e-15);
        }
        // determinant +1: e1 × e2 ↦ e3
        let (a, b, c) = (m.vertices[0], m.vertices[1], {
            let mut n = Mesh { vertices: vec![[0.0, 0.0, 1.0]], faces: vec![] };
            rotate_axis(&mut n, d);
            n.vertices[0]
        });
        let cross = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        for i in 0..3 {
            assert!((cross[i] - c[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn spread_hits_both_ends() {
        assert_eq!(spread(0.1, 0.9, 5).first(), Some(&0.1));
        assert!((spread(0.1, 0.9, 5)[4] - 0.9).abs() < 1e-15);
    }
}
