//! Rank-one construction: closed polygons in the hyperbolic plane with a
//! prescribed Gauss map, as fixed points of `Φ = φ_{ξₙ,mₙ} ∘ ⋯ ∘ φ_{ξ₁,m₁}`.
//!
//! Points live on the upper sheet of the hyperboloid `−t² + a² + b² = −1`;
//! ideal points are angles on the boundary circle.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = Vector3<f64>;

pub fn minkowski(x: &Point, y: &Point) -> f64 {
    -x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

pub fn origin() -> Point {
    Point::new(1.0, 0.0, 0.0)
}

/// Null vector `(1, cos θ, sin θ)` representing the ideal point at angle `θ`.
pub fn ideal(theta: f64) -> Point {
    Point::new(1.0, theta.cos(), theta.sin())
}

/// Rescales onto the hyperboloid.
pub fn renormalize(x: &Point) -> Point {
    let n = (-minkowski(x, x)).sqrt();
    x / n
}

/// Hyperbolic distance, computed as `2 asinh(‖x − y‖/2)` to stay accurate for nearby points.
pub fn distance(x: &Point, y: &Point) -> f64 {
    let d = x - y;
    let q = minkowski(&d, &d).max(0.0);
    2.0 * (q.sqrt() / 2.0).asinh()
}

/// `φ_{ξ,t}(x)`: the point at distance `t` from `x` on the ray towards `ξ`.
pub fn phi(theta: f64, t: f64, x: &Point) -> Point {
    let n = ideal(theta);
    let c = -1.0 / minkowski(&n, x);
    let u = n * c - x;
    renormalize(&(x * t.cosh() + u * t.sinh()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicConfig {
    pub masses: Vec<f64>,
    /// Boundary angles in radians.
    pub angles: Vec<f64>,
}

impl HyperbolicConfig {
    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    fn validate(&self) -> Result<()> {
        if self.masses.len() != self.angles.len() {
            return Err(Error::Dimension {
                expected: self.masses.len(),
                got: self.angles.len(),
            });
        }
        if let Some(i) = self
            .masses
            .iter()
            .position(|m| !(*m >= 0.0 && m.is_finite()))
        {
            return Err(Error::NotDominant {
                side: i + 1,
                reason: "mass must be finite and non-negative".into(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HyperbolicPolygon {
    /// `x_0, …, x_{n−1}`; side `i` runs from `x_i` to `x_{i+1}` (indices mod `n`).
    pub vertices: Vec<[f64; 3]>,
    /// The same polygon moved by the boost taking `x_0` to the origin.
    /// Far from the origin the global coordinates lose digits; these do not.
    pub centered: Vec<[f64; 3]>,
    pub config: HyperbolicConfig,
}

fn to_points(v: &[[f64; 3]]) -> Vec<Point> {
    v.iter().map(|v| Point::new(v[0], v[1], v[2])).collect()
}

impl HyperbolicPolygon {
    pub fn points(&self) -> Vec<Point> {
        to_points(&self.vertices)
    }

    /// [`gauss_map`] evaluated on the centered copy and carried back to the
    /// original frame.
    pub fn gauss_map(&self) -> HyperbolicConfig {
        let c = Polar::of(&self.points()[0]);
        let local = gauss_map(&to_points(&self.centered));
        let angles = local
            .angles
            .iter()
            .map(|th| c.phi + boost_angle(-c.d, th - c.phi))
            .collect();
        HyperbolicConfig {
            masses: local.masses,
            angles,
        }
    }
}

/// A point as distance `d` from the origin in direction `phi`.
#[derive(Clone, Copy, Debug)]
struct Polar {
    d: f64,
    phi: f64,
}

impl Polar {
    fn of(x: &Point) -> Polar {
        Polar {
            d: x[1].hypot(x[2]).asinh(),
            phi: x[2].atan2(x[1]),
        }
    }

    /// Coordinates of `y` after the boost taking the origin to this point.
    fn uncenter(self, y: &Point) -> Point {
        let (c, s) = (self.phi.cos(), self.phi.sin());
        let (p, q) = (c * y[1] + s * y[2], -s * y[1] + c * y[2]);
        let t = self.d.cosh() * y[0] + self.d.sinh() * p;
        let p = self.d.sinh() * y[0] + self.d.cosh() * p;
        Point::new(t, c * p - s * q, s * p + c * q)
    }

    /// Boundary angle `θ` as seen from the frame centered at this point.
    fn center_angle(self, theta: f64) -> f64 {
        self.phi + boost_angle(self.d, theta - self.phi)
    }
}

/// Angle of `B_s ξ_α`, where `B_s` is the boost along the first axis taking
/// `(cosh s, sinh s, 0)` to the origin. Written to avoid the cancellation in
/// `cosh s cos α − sinh s` when `|s|` is large.
fn boost_angle(s: f64, alpha: f64) -> f64 {
    let x = if s >= 0.0 {
        (-s).exp() - 2.0 * s.cosh() * (alpha / 2.0).sin().powi(2)
    } else {
        2.0 * s.cosh() * (alpha / 2.0).cos().powi(2) - s.exp()
    };
    alpha.sin().atan2(x)
}

#[derive(Clone, Debug)]
pub struct FixedPointOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Averaging weight: each step moves to the point at fraction `relaxation`
    /// of the way from `x` to `Φ(x)`; `1` is plain iteration.
    pub relaxation: f64,
    /// Divergence once the time coordinate of the iterate exceeds this bound.
    pub escape: f64,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        FixedPointOptions {
            tol: 1e-12,
            max_iter: 100_000,
            relaxation: 1.0,
            escape: 50f64.cosh(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HyperbolicOutcome {
    Polygon {
        polygon: HyperbolicPolygon,
        closure_error: f64,
        iterations: usize,
    },
    Diverged {
        iterations: usize,
        distance_from_origin: f64,
    },
}

impl HyperbolicOutcome {
    pub fn polygon(&self) -> Option<&HyperbolicPolygon> {
        match self {
            HyperbolicOutcome::Polygon { polygon, .. } => Some(polygon),
            HyperbolicOutcome::Diverged { .. } => None,
        }
    }
}

/// Vertices `x_0 = x, x_i = φ_{ξ_i,m_i}(x_{i−1})`, including the final `x_n`.
pub fn orbit(cfg: &HyperbolicConfig, x: &Point) -> Vec<Point> {
    let mut out = Vec::with_capacity(cfg.masses.len() + 1);
    out.push(*x);
    for (m, th) in cfg.masses.iter().zip(&cfg.angles) {
        let last = out[out.len() - 1];
        out.push(phi(*th, *m, &last));
    }
    out
}

/// Point at fraction `s` along the geodesic from `x` to `y`.
pub fn geodesic_point(x: &Point, y: &Point, s: f64) -> Point {
    let d = distance(x, y);
    if d < 1e-300 {
        return *x;
    }
    let (a, b) = (((1.0 - s) * d).sinh() / d.sinh(), (s * d).sinh() / d.sinh());
    renormalize(&(x * a + y * b))
}

/// Lorentz boost taking the origin to `x`.
pub fn boost_to(x: &Point) -> nalgebra::Matrix3<f64> {
    let (t, a, b) = (x[0], x[1], x[2]);
    let k = 1.0 / (1.0 + t);
    nalgebra::Matrix3::new(
        t,
        a,
        b,
        a,
        1.0 + a * a * k,
        a * b * k,
        b,
        a * b * k,
        1.0 + b * b * k,
    )
}

fn angle_of(n: &Point) -> f64 {
    n[2].atan2(n[1])
}

/// Iterates `Φ` (averaged) from the origin until the step is below `tol`.
///
/// The current point is kept as (distance, direction) and every step is
/// computed in the frame centered there, with the boundary angles
/// re-derived from the originals, so nothing accumulates however far the
/// iterates travel.
pub fn phi_fixed_point(
    cfg: &HyperbolicConfig,
    opts: &FixedPointOptions,
) -> Result<HyperbolicOutcome> {
    cfg.validate()?;
    let o = origin();
    let mut center = Polar { d: 0.0, phi: 0.0 };
    for it in 1..=opts.max_iter {
        let local = HyperbolicConfig {
            masses: cfg.masses.clone(),
            angles: cfg
                .angles
                .iter()
                .map(|th| center.center_angle(*th))
                .collect(),
        };
        let verts = orbit(&local, &o);
        let n = verts.len() - 1;
        let step = distance(&o, &verts[n]);
        if step < opts.tol {
            let vertices = verts[..n]
                .iter()
                .map(|p| {
                    let g = renormalize(&center.uncenter(p));
                    [g[0], g[1], g[2]]
                })
                .collect();
            let centered = verts[..n].iter().map(|p| [p[0], p[1], p[2]]).collect();
            let polygon = HyperbolicPolygon {
                vertices,
                centered,
                config: cfg.clone(),
            };
            return Ok(HyperbolicOutcome::Polygon {
                polygon,
                closure_error: step,
                iterations: it,
            });
        }
        let next = if opts.relaxation >= 1.0 {
            verts[n]
        } else {
            geodesic_point(&o, &verts[n], opts.relaxation)
        };
        center = Polar::of(&center.uncenter(&next));
        if center.d.cosh() > opts.escape || !center.d.is_finite() {
            return Ok(HyperbolicOutcome::Diverged {
                iterations: it,
                distance_from_origin: center.d,
            });
        }
    }
    Ok(HyperbolicOutcome::Diverged {
        iterations: opts.max_iter,
        distance_from_origin: center.d,
    })
}

/// Side lengths and forward ideal endpoints of a closed polygon.
pub fn gauss_map(vertices: &[Point]) -> HyperbolicConfig {
    let n = vertices.len();
    let mut masses = Vec::with_capacity(n);
    let mut angles = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
        let d = distance(a, b);
        masses.push(d);
        if d < 1e-300 {
            angles.push(0.0);
            continue;
        }
        // work at the origin, where the tangent direction is well conditioned
        let back = boost_to(&Point::new(a[0], -a[1], -a[2]));
        let local = back * b;
        angles.push(angle_of(&(boost_to(a) * ideal(angle_of(&local)))));
    }
    HyperbolicConfig { masses, angles }
}

/// Largest absolute difference between two configurations (angles mod 2π,
/// ignored where the mass vanishes).
pub fn config_distance(a: &HyperbolicConfig, b: &HyperbolicConfig) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..a.masses.len() {
        worst = worst.max((a.masses[i] - b.masses[i]).abs());
        if a.masses[i] > 1e-9 {
            let d = (a.angles[i] - b.angles[i]).rem_euclid(std::f64::consts::TAU);
            worst = worst.max(d.min(std::f64::consts::TAU - d));
        }
    }
    worst
}
