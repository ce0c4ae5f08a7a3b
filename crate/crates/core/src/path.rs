//! Planar paths in the first complex coordinate.
//!
//! A path is a chain of straight segments and circular arcs. Distances are
//! measured against a dense polyline discretization; tube membership refines
//! the discretization until the decision no longer depends on it.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SliceError};

/// Default discretization density (samples per unit arc length).
pub const SAMPLES_PER_UNIT: f64 = 1e3;
const MAX_REFINEMENTS: u32 = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathPiece {
    Line {
        from: [f64; 2],
        to: [f64; 2],
    },
    /// Arc of the circle `center + radius e^{i t}`, `t` from `start` to `end`
    /// (radians; `end < start` runs clockwise).
    Arc {
        center: [f64; 2],
        radius: f64,
        start: f64,
        end: f64,
    },
}

fn c(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl PathPiece {
    fn length(&self) -> f64 {
        match self {
            PathPiece::Line { from, to } => (c(*to) - c(*from)).norm(),
            PathPiece::Arc {
                radius, start, end, ..
            } => radius * (end - start).abs(),
        }
    }

    fn point(&self, t: f64) -> Complex64 {
        match self {
            PathPiece::Line { from, to } => c(*from) + (c(*to) - c(*from)) * t,
            PathPiece::Arc {
                center,
                radius,
                start,
                end,
            } => c(*center) + Complex64::from_polar(*radius, start + (end - start) * t),
        }
    }

    fn reversed(&self) -> PathPiece {
        match self {
            PathPiece::Line { from, to } => PathPiece::Line {
                from: *to,
                to: *from,
            },
            PathPiece::Arc {
                center,
                radius,
                start,
                end,
            } => PathPiece::Arc {
                center: *center,
                radius: *radius,
                start: *end,
                end: *start,
            },
        }
    }

    fn conj(&self) -> PathPiece {
        match self {
            PathPiece::Line { from, to } => PathPiece::Line {
                from: [from[0], -from[1]],
                to: [to[0], -to[1]],
            },
            PathPiece::Arc {
                center,
                radius,
                start,
                end,
            } => PathPiece::Arc {
                center: [center[0], -center[1]],
                radius: *radius,
                start: -start,
                end: -end,
            },
        }
    }

    /// Number of chords used at `density` samples per unit length.
    fn chords(&self, density: f64) -> usize {
        match self {
            PathPiece::Line { .. } => 1,
            PathPiece::Arc { .. } => ((self.length() * density).ceil() as usize).max(1),
        }
    }

    /// Upper bound on the gap between the piece and its discretization.
    fn sagitta(&self, density: f64) -> f64 {
        match self {
            PathPiece::Line { .. } => 0.0,
            PathPiece::Arc { radius, .. } => {
                let chord = self.length() / self.chords(density) as f64;
                chord * chord / (8.0 * radius)
            }
        }
    }
}

/// A continuous path in the complex plane made of consecutive pieces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarPath {
    pieces: Vec<PathPiece>,
    /// Start point, kept so that a path may consist of a single point.
    start: [f64; 2],
}

impl PlanarPath {
    pub fn point(z: Complex64) -> Self {
        PlanarPath {
            pieces: vec![],
            start: [z.re, z.im],
        }
    }

    /// The polyline through `vertices`; consecutive vertices must differ.
    pub fn polyline(vertices: &[Complex64]) -> Result<Self> {
        let first = vertices
            .first()
            .ok_or_else(|| SliceError::InvalidPath("empty vertex list".into()))?;
        let mut path = PlanarPath::point(*first);
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(SliceError::InvalidPath("repeated consecutive vertex".into()));
            }
            path.pieces.push(PathPiece::Line {
                from: [w[0].re, w[0].im],
                to: [w[1].re, w[1].im],
            });
        }
        Ok(path)
    }

    /// Arc of the circle `center + radius e^{it}`, `t` from `start` to `end`.
    pub fn arc(center: Complex64, radius: f64, start: f64, end: f64) -> Result<Self> {
        if !(radius > 0.0) || start == end {
            return Err(SliceError::InvalidPath("degenerate arc".into()));
        }
        let piece = PathPiece::Arc {
            center: [center.re, center.im],
            radius,
            start,
            end,
        };
        let s = piece.point(0.0);
        Ok(PlanarPath {
            pieces: vec![piece],
            start: [s.re, s.im],
        })
    }

    pub fn pieces(&self) -> &[PathPiece] {
        &self.pieces
    }

    pub fn start(&self) -> Complex64 {
        c(self.start)
    }

    pub fn end(&self) -> Complex64 {
        self.pieces
            .last()
            .map(|p| p.point(1.0))
            .unwrap_or_else(|| self.start())
    }

    pub fn length(&self) -> f64 {
        self.pieces.iter().map(PathPiece::length).sum()
    }

    /// Path composition: `self` followed by `next`. The endpoints must meet.
    pub fn then(&self, next: &PlanarPath) -> Result<Self> {
        if (self.end() - next.start()).norm() > 1e-12 {
            return Err(SliceError::InvalidPath("paths do not join".into()));
        }
        let mut out = self.clone();
        out.pieces.extend(next.pieces.iter().cloned());
        Ok(out)
    }

    pub fn reversed(&self) -> Self {
        let e = self.end();
        PlanarPath {
            pieces: self.pieces.iter().rev().map(PathPiece::reversed).collect(),
            start: [e.re, e.im],
        }
    }

    /// Mirror image under complex conjugation.
    pub fn conj(&self) -> Self {
        PlanarPath {
            pieces: self.pieces.iter().map(PathPiece::conj).collect(),
            start: [self.start[0], -self.start[1]],
        }
    }

    /// Vertices of the discretization at `density` samples per unit length.
    pub fn vertices(&self, density: f64) -> Vec<Complex64> {
        let mut out = vec![self.start()];
        for piece in &self.pieces {
            let m = piece.chords(density);
            for k in 1..=m {
                let z = piece.point(k as f64 / m as f64);
                if *out.last().unwrap() != z {
                    out.push(z);
                }
            }
        }
        out
    }

    fn max_sagitta(&self, density: f64) -> f64 {
        self.pieces
            .iter()
            .map(|p| p.sagitta(density))
            .fold(0.0, f64::max)
    }

    /// Distance from `z` to the discretized path.
    pub fn polyline_distance(&self, z: Complex64, density: f64) -> f64 {
        nearest_on_polyline(&self.vertices(density), z).1
    }

    /// Decides `dist(z, path)^2 + extra_sq < rho^2`, refining the
    /// discretization while the decision is within the chord error.
    pub fn tube_contains(&self, z: Complex64, extra_sq: f64, rho: f64) -> bool {
        let mut density = SAMPLES_PER_UNIT;
        let mut refinements = 0;
        loop {
            let d = self.polyline_distance(z, density);
            let full = (d * d + extra_sq).sqrt();
            let slack = self.max_sagitta(density);
            if (full - rho).abs() > slack || refinements == MAX_REFINEMENTS {
                return full < rho;
            }
            density *= 10.0;
            refinements += 1;
        }
    }
}

/// Nearest vertex-or-segment point of a polyline: returns the index of the
/// segment start (or the vertex), the distance, and the foot point.
pub(crate) fn nearest_on_polyline(v: &[Complex64], z: Complex64) -> (usize, f64, Complex64) {
    if v.len() == 1 {
        return (0, (z - v[0]).norm(), v[0]);
    }
    let mut best = (0, f64::INFINITY, v[0]);
    for (k, w) in v.windows(2).enumerate() {
        let d = w[1] - w[0];
        let t = (((z - w[0]) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
        let foot = w[0] + d * t;
        let dist = (z - foot).norm();
        if dist < best.1 {
            best = (k, dist, foot);
        }
    }
    best
}
