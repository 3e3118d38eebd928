//! Fixed trace configurations selectable with `--preset`.

use std::f64::consts::PI;

use trimetric::MetricKind;

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub metric: MetricKind,
    pub x: Vec<f64>,
    pub radii: Vec<f64>,
    /// Overlay the auxiliary circles and witness points.
    pub aux: bool,
    /// Draw the candidate construction for this boundary direction.
    pub construction: Option<f64>,
}

pub const NAMES: [&str; 5] = ["fig1", "fig2", "fig3", "fig4", "fig5"];

pub fn preset(name: &str) -> Option<Preset> {
    let p = |name, metric, x: &[f64], radii: &[f64], aux, construction| Preset {
        name,
        metric,
        x: x.to_vec(),
        radii: radii.to_vec(),
        aux,
        construction,
    };
    match name {
        "fig1" => Some(p("fig1", MetricKind::S, &[0.3, 0.7], &[0.5], true, None)),
        "fig2" => Some(p("fig2", MetricKind::S, &[0.0, 0.5], &[0.5], false, Some(PI / 5.0))),
        "fig3" => Some(p("fig3", MetricKind::S, &[0.6, 0.0], &[0.1, 0.3, 0.5, 0.7], false, None)),
        "fig4" => Some(p("fig4", MetricKind::JStar, &[0.3, 0.3], &[0.3], true, None)),
        "fig5" => Some(p("fig5", MetricKind::S, &[0.3, 0.45], &[0.5], true, None)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves() {
        for n in NAMES {
            assert_eq!(preset(n).unwrap().name, n);
        }
        assert!(preset("fig6").is_none());
    }
}
