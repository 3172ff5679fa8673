//! Piecewise paths in the complex plane: line segments and circular arcs.

use num_complex::Complex64;

#[derive(Clone, Copy, Debug)]
pub enum PathSegment {
    Line { from: Complex64, to: Complex64 },
    /// Arc around `center` from `start_angle` to `end_angle` (radians,
    /// counterclockwise when end > start) at radius `radius`.
    Arc { center: Complex64, radius: f64, start_angle: f64, end_angle: f64 },
}

impl PathSegment {
    pub fn start(&self) -> Complex64 {
        match self {
            PathSegment::Line { from, .. } => *from,
            PathSegment::Arc { center, radius, start_angle, .. } => {
                center + Complex64::from_polar(*radius, *start_angle)
            }
        }
    }

    pub fn end(&self) -> Complex64 {
        match self {
            PathSegment::Line { to, .. } => *to,
            PathSegment::Arc { center, radius, end_angle, .. } => {
                center + Complex64::from_polar(*radius, *end_angle)
            }
        }
    }

    /// Point at parameter s in [0, 1].
    pub fn point(&self, s: f64) -> Complex64 {
        match self {
            PathSegment::Line { from, to } => from + (to - from) * s,
            PathSegment::Arc { center, radius, start_angle, end_angle } => {
                let theta = start_angle + s * (end_angle - start_angle);
                center + Complex64::from_polar(*radius, theta)
            }
        }
    }

    /// d(point)/ds.
    pub fn velocity(&self, s: f64) -> Complex64 {
        match self {
            PathSegment::Line { from, to } => to - from,
            PathSegment::Arc { center: _, radius, start_angle, end_angle } => {
                let dtheta = end_angle - start_angle;
                let theta = start_angle + s * dtheta;
                Complex64::from_polar(*radius, theta) * Complex64::new(0.0, dtheta)
            }
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            PathSegment::Line { from, to } => (to - from).norm(),
            PathSegment::Arc { radius, start_angle, end_angle, .. } => {
                radius * (end_angle - start_angle).abs()
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ComplexPath {
    pub segments: Vec<PathSegment>,
}

impl ComplexPath {
    pub fn new(segments: Vec<PathSegment>) -> Self {
        let path = ComplexPath { segments };
        debug_assert!(path.is_connected(1e-9), "path segments must chain end to end");
        path
    }

    /// Full counterclockwise circle starting (and ending) at
    /// center + radius e^{i start_angle}.
    pub fn circle(center: Complex64, radius: f64, start_angle: f64) -> Self {
        ComplexPath {
            segments: vec![PathSegment::Arc {
                center,
                radius,
                start_angle,
                end_angle: start_angle + 2.0 * std::f64::consts::PI,
            }],
        }
    }

    /// Closed polyline through the given corners (counterclockwise for a
    /// positively oriented boundary).
    pub fn closed_polyline(corners: &[Complex64]) -> Self {
        let mut segments = Vec::new();
        for k in 0..corners.len() {
            segments.push(PathSegment::Line {
                from: corners[k],
                to: corners[(k + 1) % corners.len()],
            });
        }
        ComplexPath { segments }
    }

    pub fn start(&self) -> Complex64 {
        self.segments.first().map(|s| s.start()).unwrap_or_default()
    }

    pub fn end(&self) -> Complex64 {
        self.segments.last().map(|s| s.end()).unwrap_or_default()
    }

    pub fn length(&self) -> f64 {
        self.segments.iter().map(PathSegment::length).sum()
    }

    pub fn is_connected(&self, tol: f64) -> bool {
        self.segments
            .windows(2)
            .all(|w| (w[0].end() - w[1].start()).norm() <= tol * (1.0 + w[0].end().norm()))
    }

    pub fn is_closed(&self, tol: f64) -> bool {
        !self.segments.is_empty()
            && (self.end() - self.start()).norm() <= tol * (1.0 + self.start().norm())
    }

    /// Conservative minimum distance from the path to a point set, by dense
    /// sampling (512 points per segment).
    pub fn min_distance_to(&self, points: &[Complex64]) -> f64 {
        if points.is_empty() {
            return f64::INFINITY;
        }
        let mut best = f64::INFINITY;
        for seg in &self.segments {
            for k in 0..=512 {
                let p = seg.point(k as f64 / 512.0);
                for q in points {
                    best = best.min((p - q).norm());
                }
            }
        }
        best
    }
}
