//! Plain-text rendering of verification reports: a header echoing the
//! tolerances, then one `key=value` record per claim or cell.

use std::fmt::Write as _;

use super::conjecture::ConjectureReport;
use super::suite::SuiteConfig;
use super::{InclusionReport, TOL_DEFAULT, TOL_TRACED_S, TRACE_EPS};

/// A real with 12 significant digits.
pub fn sig12(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.11e}")
    } else {
        format!("{v}")
    }
}

fn vector(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|c| sig12(*c)).collect();
    format!("({})", parts.join(","))
}

fn list(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|c| format!("{c}")).collect();
    parts.join(",")
}

pub fn render_suite(reports: &[InclusionReport], cfg: &SuiteConfig) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# inclusion suite seed={} samples={} pairs={} inflate={} norms={} params={}",
        cfg.seed,
        cfg.samples,
        cfg.pairs,
        cfg.inflate,
        list(&cfg.norms),
        list(&cfg.params)
    );
    let _ = writeln!(
        out,
        "# tol={} tol_traced_s={} trace_eps={} grid_count={} refine_tol={}",
        sig12(TOL_DEFAULT),
        sig12(TOL_TRACED_S),
        sig12(TRACE_EPS),
        cfg.opts.grid_count,
        sig12(cfg.opts.refine_tol)
    );
    for r in reports {
        let grid: Vec<String> = r.grid.iter().map(|g| g.to_string()).collect();
        let _ = write!(
            out,
            "claim={} grid={} cells={} tol={} worst={} verdict={}",
            r.claim,
            grid.join("x"),
            r.cells,
            sig12(r.tolerance),
            sig12(r.worst_violation),
            if r.pass { "pass" } else { "FAIL" }
        );
        if let Some(w) = &r.witness {
            let _ = write!(
                out,
                " x={} inner={} outer={} at={}",
                vector(&w.center),
                sig12(w.inner_radius),
                sig12(w.outer_radius),
                vector(&w.point)
            );
        }
        for n in &r.notes {
            let _ = write!(out, " note=\"{}\"", n.replace('"', "'"));
        }
        out.push('\n');
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    let _ = writeln!(out, "# {} claims, {} failed", reports.len(), failed);
    out
}

pub fn render_conjecture(rep: &ConjectureReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# conjecture sweep grid={} trace_n={} eps={}",
        rep.grid_n,
        rep.trace_n,
        sig12(rep.eps)
    );
    for c in &rep.cells {
        let _ = writeln!(
            out,
            "norm={} t={} rho_min={} rho_max={} R0={} R1={} vertices={} deviation={}",
            sig12(c.norm),
            sig12(c.t),
            sig12(c.rho_min),
            sig12(c.rho_max),
            sig12(c.r0_conjectured),
            sig12(c.r1_conjectured),
            c.vertices,
            sig12(c.deviation)
        );
    }
    for (a, t) in &rep.skipped {
        let _ = writeln!(out, "norm={} t={} skipped=l<=0", sig12(*a), sig12(*t));
    }
    let _ = writeln!(out, "# max_deviation={}", sig12(rep.max_deviation));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(0.5), "5.00000000000e-1");
        assert_eq!(sig12(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn one_line_per_claim() {
        let cfg = SuiteConfig::default();
        let mut r = InclusionReport::empty("demo", vec![2, 2], 1e-7);
        r.fail_note("bad \"cell\"".into());
        let text = render_suite(&[r.clone(), r], &cfg);
        let records: Vec<&str> = text.lines().filter(|l| l.starts_with("claim=")).collect();
        assert_eq!(records.len(), 2);
        assert!(records[0].contains("verdict=FAIL"));
        assert!(records[0].contains("note=\"bad 'cell'\""));
    }
}
