use serde::{Deserialize, Serialize};

use crate::selection::{CandidateNetwork, NetworkId};

/// Planar position in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn lerp(&self, other: &Point, f: f64) -> Point {
        Point::new(
            self.x + (other.x - self.x) * f,
            self.y + (other.y - self.y) * f,
        )
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point::new(x, y)
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// A network's coverage disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub network: CandidateNetwork,
    pub center: Point,
    pub radius: f64,
}

impl Cell {
    pub fn covers(&self, p: &Point) -> bool {
        self.center.distance(p) <= self.radius
    }

    /// Distance from the center as a fraction of the radius.
    pub fn relative_distance(&self, p: &Point) -> f64 {
        self.center.distance(p) / self.radius
    }
}

/// Ids of every cell whose closed disk contains `p`, in cell order.
pub fn coverage_at(cells: &[Cell], p: Point) -> Vec<NetworkId> {
    cells
        .iter()
        .filter(|c| c.covers(&p))
        .map(|c| c.network.id.clone())
        .collect()
}

/// Handover initiation: the terminal is past `hysteresis * radius` from the
/// serving cell's center, or outside it altogether.
pub fn should_trigger(serving: &Cell, p: Point, hysteresis: f64) -> bool {
    serving.relative_distance(&p) > hysteresis || !serving.covers(&p)
}

/// Piecewise-linear path traversed at constant speed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub waypoints: Vec<Point>,
    pub speed_mps: f64,
}

impl Trajectory {
    pub fn length(&self) -> f64 {
        self.waypoints
            .windows(2)
            .map(|w| w[0].distance(&w[1]))
            .sum()
    }

    pub fn duration(&self) -> f64 {
        self.length() / self.speed_mps
    }

    pub fn position_at(&self, t: f64) -> Point {
        let mut remaining = (t * self.speed_mps).max(0.0);
        for w in self.waypoints.windows(2) {
            let seg = w[0].distance(&w[1]);
            if remaining <= seg {
                if seg == 0.0 {
                    return w[0];
                }
                return w[0].lerp(&w[1], remaining / seg);
            }
            remaining -= seg;
        }
        *self.waypoints.last().expect("trajectory has waypoints")
    }
}
