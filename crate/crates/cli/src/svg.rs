//! Minimal SVG emitter for disk plots.
//!
//! The viewport is `[-1.05, 1.05]²` in disk coordinates; the vertical axis
//! is flipped so that the imaginary axis points up.

use std::fmt::Write as _;

use num_complex::Complex64;

/// How one role of curve is stroked.
#[derive(Debug, Clone, PartialEq)]
pub struct Stroke {
    pub color: &'static str,
    pub width: f64,
    pub dash: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    /// Side of the square canvas in pixels.
    pub pixels: u32,
    pub unit_circle: Stroke,
    pub metric_circle: Stroke,
    pub auxiliary: Stroke,
    pub witness_color: &'static str,
    pub witness_radius: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            pixels: 800,
            unit_circle: Stroke { color: "black", width: 0.006, dash: None },
            metric_circle: Stroke { color: "#1f4e9c", width: 0.005, dash: None },
            auxiliary: Stroke { color: "#888888", width: 0.003, dash: Some("0.02 0.015") },
            witness_color: "#c0392b",
            witness_radius: 0.012,
        }
    }
}

fn num(v: f64) -> String {
    // avoid "-0" so identical pictures print identically
    let s = format!("{v:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".into()
    } else {
        s
    }
}

fn stroke_attrs(s: &Stroke) -> String {
    let mut a = format!("fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"", s.color, s.width);
    if let Some(d) = s.dash {
        let _ = write!(a, " stroke-dasharray=\"{d}\"");
    }
    a
}

/// A picture under construction; elements are emitted in insertion order.
pub struct Canvas {
    spec: RenderSpec,
    body: String,
}

impl Canvas {
    /// A canvas that already shows the unit circle.
    pub fn new(spec: RenderSpec) -> Self {
        let mut c = Self { spec, body: String::new() };
        let unit = c.spec.unit_circle.clone();
        c.circle(Complex64::new(0.0, 0.0), 1.0, &unit);
        c
    }

    pub fn spec(&self) -> &RenderSpec {
        &self.spec
    }

    pub fn circle(&mut self, c: Complex64, r: f64, stroke: &Stroke) {
        let _ = writeln!(
            self.body,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" {}/>",
            num(c.re),
            num(-c.im),
            num(r),
            stroke_attrs(stroke)
        );
    }

    /// A closed polyline through `pts`.
    pub fn polygon(&mut self, pts: &[Complex64], stroke: &Stroke) {
        let coords: Vec<String> = pts.iter().map(|w| format!("{},{}", num(w.re), num(-w.im))).collect();
        let _ = writeln!(self.body, "  <polygon points=\"{}\" {}/>", coords.join(" "), stroke_attrs(stroke));
    }

    pub fn segment(&mut self, a: Complex64, b: Complex64, stroke: &Stroke) {
        let _ = writeln!(
            self.body,
            "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {}/>",
            num(a.re),
            num(-a.im),
            num(b.re),
            num(-b.im),
            stroke_attrs(stroke)
        );
    }

    pub fn witness(&mut self, w: Complex64) {
        let _ = writeln!(
            self.body,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
            num(w.re),
            num(-w.im),
            num(self.spec.witness_radius),
            self.spec.witness_color
        );
    }

    /// A small cross at the centre of a metric circle.
    pub fn center_mark(&mut self, c: Complex64) {
        let d = self.spec.witness_radius;
        let s = Stroke { width: self.spec.metric_circle.width, ..self.spec.unit_circle.clone() };
        self.segment(c - d, c + d, &s);
        let di = Complex64::new(0.0, d);
        self.segment(c - di, c + di, &s);
    }

    pub fn finish(self) -> String {
        let px = self.spec.pixels;
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{px}\" height=\"{px}\" viewBox=\"-1.05 -1.05 2.1 2.1\">\n{}</svg>\n",
            self.body
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_circle_and_flipped_axis() {
        let mut c = Canvas::new(RenderSpec::default());
        c.witness(Complex64::new(0.25, 0.5));
        let s = c.finish();
        assert!(s.contains("viewBox=\"-1.05 -1.05 2.1 2.1\""));
        assert!(s.contains("r=\"1.000000\""));
        assert!(s.contains("cx=\"0.250000\" cy=\"-0.500000\""));
        assert!(s.ends_with("</svg>\n"));
    }

    #[test]
    fn negative_zero_prints_as_zero() {
        assert_eq!(num(-0.0), "0.000000");
        assert_eq!(num(-1e-9), "0.000000");
        assert_eq!(num(-0.5), "-0.500000");
    }
}
