//! Convex polygons in the `(x1, x2)` plane.

use serde::{Deserialize, Serialize};

use crate::model::State;

fn cross(o: State, a: State, b: State) -> f64 {
    (a.x1 - o.x1) * (b.x2 - o.x2) - (a.x2 - o.x2) * (b.x1 - o.x1)
}

fn seg_dist(p: State, a: State, b: State) -> f64 {
    let (dx, dy) = (b.x1 - a.x1, b.x2 - a.x2);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.dist(&a);
    }
    let t = (((p.x1 - a.x1) * dx + (p.x2 - a.x2) * dy) / len2).clamp(0.0, 1.0);
    p.dist(&State::new(a.x1 + t * dx, a.x2 + t * dy))
}

/// Convex polygon with counterclockwise vertices. May be degenerate (a point
/// or a segment) or empty.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Polygon {
    vertices: Vec<State>,
}

impl Polygon {
    pub fn empty() -> Self {
        Polygon::default()
    }

    /// Convex hull of arbitrary points (Andrew's monotone chain).
    pub fn hull(points: &[State]) -> Self {
        let mut pts: Vec<State> = prefilter(points);
        pts.sort_by(|a, b| a.x1.total_cmp(&b.x1).then(a.x2.total_cmp(&b.x2)));
        pts.dedup();
        if pts.len() <= 2 {
            return Polygon { vertices: pts };
        }
        let mut lower: Vec<State> = Vec::with_capacity(pts.len());
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<State> = Vec::with_capacity(pts.len());
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Polygon { vertices: lower }
    }

    /// Wrap vertices already known to be convex and counterclockwise.
    pub fn from_ccw(vertices: Vec<State>) -> Self {
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[State] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        0.5 * (0..n)
            .map(|i| {
                let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
                a.x1 * b.x2 - b.x1 * a.x2
            })
            .sum::<f64>()
    }

    /// Area-weighted centroid; vertex mean for degenerate polygons.
    pub fn centroid(&self) -> Option<State> {
        let n = self.vertices.len();
        if n == 0 {
            return None;
        }
        let a = self.area();
        if n < 3 || a.abs() < 1e-300 {
            let (s1, s2) = self
                .vertices
                .iter()
                .fold((0.0, 0.0), |(s1, s2), v| (s1 + v.x1, s2 + v.x2));
            return Some(State::new(s1 / n as f64, s2 / n as f64));
        }
        let (mut cx, mut cy) = (0.0, 0.0);
        for i in 0..n {
            let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let c = p.x1 * q.x2 - q.x1 * p.x2;
            cx += (p.x1 + q.x1) * c;
            cy += (p.x2 + q.x2) * c;
        }
        Some(State::new(cx / (6.0 * a), cy / (6.0 * a)))
    }

    /// Euclidean distance from `p` to the polygon (zero inside).
    pub fn distance(&self, p: State) -> f64 {
        match self.vertices.len() {
            0 => f64::INFINITY,
            1 => p.dist(&self.vertices[0]),
            n => {
                if n >= 3 && self.contains_strict(p) {
                    return 0.0;
                }
                (0..n)
                    .map(|i| seg_dist(p, self.vertices[i], self.vertices[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    fn contains_strict(&self, p: State) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0.0)
    }

    /// `true` when `p` is inside or within `eps` of the polygon.
    pub fn contains(&self, p: State, eps: f64) -> bool {
        self.distance(p) <= eps
    }

    /// Intersection of two convex polygons (Sutherland-Hodgman).
    pub fn intersect(&self, clip: &Polygon) -> Polygon {
        if self.vertices.len() < 3 || clip.vertices.len() < 3 {
            return self.intersect_degenerate(clip);
        }
        let mut out = self.vertices.clone();
        let m = clip.vertices.len();
        for e in 0..m {
            if out.is_empty() {
                break;
            }
            let (a, b) = (clip.vertices[e], clip.vertices[(e + 1) % m]);
            let input = std::mem::take(&mut out);
            let k = input.len();
            for i in 0..k {
                let cur = input[i];
                let prev = input[(i + k - 1) % k];
                let cin = cross(a, b, cur) >= 0.0;
                let pin = cross(a, b, prev) >= 0.0;
                if cin {
                    if !pin {
                        out.push(edge_cross(prev, cur, a, b));
                    }
                    out.push(cur);
                } else if pin {
                    out.push(edge_cross(prev, cur, a, b));
                }
            }
        }
        out.dedup_by(|x, y| x.dist(y) < 1e-15);
        if out.len() > 1 && out[0].dist(out.last().unwrap()) < 1e-15 {
            out.pop();
        }
        Polygon { vertices: out }
    }

    fn intersect_degenerate(&self, other: &Polygon) -> Polygon {
        let (small, big) = if self.vertices.len() < 3 {
            (self, other)
        } else {
            (other, self)
        };
        let kept: Vec<State> = small
            .vertices
            .iter()
            .copied()
            .filter(|v| big.contains(*v, 1e-12))
            .collect();
        Polygon { vertices: kept }
    }

    /// Hausdorff distance between two convex polygons (attained at vertices).
    pub fn hausdorff(&self, other: &Polygon) -> f64 {
        let one = |a: &Polygon, b: &Polygon| {
            a.vertices
                .iter()
                .map(|v| b.distance(*v))
                .fold(0.0, f64::max)
        };
        one(self, other).max(one(other, self))
    }

    pub fn bounds(&self) -> Option<(State, State)> {
        let first = *self.vertices.first()?;
        Some(self.vertices.iter().fold((first, first), |(lo, hi), v| {
            (
                State::new(lo.x1.min(v.x1), lo.x2.min(v.x2)),
                State::new(hi.x1.max(v.x1), hi.x2.max(v.x2)),
            )
        }))
    }
}

fn edge_cross(p: State, q: State, a: State, b: State) -> State {
    let d1 = cross(a, b, p);
    let d2 = cross(a, b, q);
    let t = d1 / (d1 - d2);
    State::new(p.x1 + t * (q.x1 - p.x1), p.x2 + t * (q.x2 - p.x2))
}

/// Akl-Toussaint: drop points strictly inside the octagon of extreme points.
fn prefilter(points: &[State]) -> Vec<State> {
    if points.len() < 64 {
        return points.to_vec();
    }
    let keys: [fn(&State) -> f64; 4] = [
        |p| p.x1,
        |p| p.x2,
        |p| p.x1 + p.x2,
        |p| p.x1 - p.x2,
    ];
    let mut ext = Vec::with_capacity(8);
    for key in keys {
        let mut lo = points[0];
        let mut hi = points[0];
        for p in points {
            if key(p) < key(&lo) {
                lo = *p;
            }
            if key(p) > key(&hi) {
                hi = *p;
            }
        }
        ext.push(lo);
        ext.push(hi);
    }
    let oct = Polygon::hull(&ext);
    if oct.len() < 3 {
        return points.to_vec();
    }
    let v = &oct.vertices;
    let n = v.len();
    points
        .iter()
        .copied()
        .filter(|p| !(0..n).all(|i| cross(v[i], v[(i + 1) % n], *p) > 0.0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(cx: f64, cy: f64, h: f64) -> Polygon {
        Polygon::hull(&[
            State::new(cx - h, cy - h),
            State::new(cx + h, cy - h),
            State::new(cx + h, cy + h),
            State::new(cx - h, cy + h),
            State::new(cx, cy),
        ])
    }

    #[test]
    fn hull_is_ccw_and_drops_interior() {
        let p = square(0.0, 0.0, 1.0);
        assert_eq!(p.len(), 4);
        assert!((p.area() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn self_intersection_keeps_area() {
        let p = square(0.3, -0.2, 0.7);
        let q = p.intersect(&p);
        assert!((q.area() - p.area()).abs() < 1e-9);
    }

    #[test]
    fn disjoint_translates_are_empty() {
        let p = square(0.0, 0.0, 1.0);
        let q = square(3.0, 0.5, 1.0);
        assert!(p.intersect(&q).is_empty());
    }

    #[test]
    fn overlap_area_and_distance() {
        let p = square(0.0, 0.0, 1.0);
        let q = square(1.0, 1.0, 1.0);
        assert!((p.intersect(&q).area() - 1.0).abs() < 1e-12);
        assert_eq!(p.distance(State::new(0.2, 0.1)), 0.0);
        assert!((p.distance(State::new(2.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!(p.contains(State::new(1.0 + 1e-7, 0.0), 1e-6));
        assert!(!p.contains(State::new(1.0 + 1e-5, 0.0), 1e-6));
    }

    #[test]
    fn hausdorff_of_nested_squares() {
        let p = square(0.0, 0.0, 1.0);
        let q = square(0.0, 0.0, 0.5);
        assert!((p.hausdorff(&q) - 0.5f64.hypot(0.5)).abs() < 1e-12);
    }

    #[test]
    fn large_hull_matches_small_hull() {
        let mut pts = Vec::new();
        for i in 0..200 {
            let a = i as f64 * 0.0314159;
            pts.push(State::new(a.cos(), 0.5 * a.sin()));
            pts.push(State::new(0.3 * a.cos(), 0.1 * a.sin()));
        }
        let h = Polygon::hull(&pts);
        let h2 = Polygon::hull(h.vertices());
        assert_eq!(h, h2);
        assert!(pts.iter().all(|p| h.contains(*p, 1e-12)));
    }
}
