//! Narrow-phase contact generation.
//!
//! One contact per touching or overlapping pair, the deepest point for
//! polygon pairs. Output is ordered by `(min id, max id)` so downstream
//! solving is deterministic.

use serde::{Deserialize, Serialize};

use crate::math::Vec2;
use crate::physics2d::body::{Body, BodyId};
use crate::physics2d::shapes::Shape;
use crate::physics2d::world::World;

/// A single contact between two bodies. The normal is a unit vector
/// pointing from `body_a` toward `body_b`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Contact {
    pub body_a: BodyId,
    pub body_b: BodyId,
    pub normal: Vec2,
    pub penetration: f64,
    pub point: Vec2,
}

struct Candidate {
    normal: Vec2,
    penetration: f64,
    point: Vec2,
}

/// Find all contacts in the world. Static-static and segment-segment
/// pairs are skipped.
pub fn detect_contacts(world: &World) -> Vec<Contact> {
    let bodies = &world.bodies;
    let mut contacts = Vec::new();
    for i in 0..bodies.len() {
        for j in (i + 1)..bodies.len() {
            let (a, b) = (&bodies[i], &bodies[j]);
            if a.is_static && b.is_static {
                continue;
            }
            // Normalize pair order by id so the reported normal direction
            // does not depend on insertion order.
            let (first, second) = if a.id < b.id { (a, b) } else { (b, a) };
            if let Some(c) = collide_pair(first, second) {
                contacts.push(Contact {
                    body_a: first.id,
                    body_b: second.id,
                    normal: c.normal,
                    penetration: c.penetration,
                    point: c.point,
                });
            }
        }
    }
    contacts.sort_by_key(|c| (c.body_a, c.body_b));
    contacts
}

fn collide_pair(a: &Body, b: &Body) -> Option<Candidate> {
    match (&a.shape, &b.shape) {
        (Shape::Circle { radius: ra }, Shape::Circle { radius: rb }) => {
            circle_circle(a.position, *ra, b.position, *rb)
        }
        (Shape::Circle { radius }, Shape::Box { half_w, half_h }) => {
            circle_box(a.position, *radius, b, *half_w, *half_h).map(flip)
        }
        (Shape::Box { half_w, half_h }, Shape::Circle { radius }) => {
            circle_box(b.position, *radius, a, *half_w, *half_h)
        }
        (Shape::Circle { radius }, Shape::Segment { .. }) => {
            circle_segment(a.position, *radius, b)
        }
        (Shape::Segment { .. }, Shape::Circle { radius }) => {
            circle_segment(b.position, *radius, a).map(flip)
        }
        (Shape::Box { .. }, Shape::Box { .. }) => box_box(a, b),
        (Shape::Box { .. }, Shape::Segment { .. }) => box_segment(a, b),
        (Shape::Segment { .. }, Shape::Box { .. }) => box_segment(b, a).map(flip),
        (Shape::Segment { .. }, Shape::Segment { .. }) => None,
    }
}

fn flip(c: Candidate) -> Candidate {
    Candidate {
        normal: -c.normal,
        penetration: c.penetration,
        point: c.point,
    }
}

/// Normal points from circle a toward circle b.
fn circle_circle(pa: Vec2, ra: f64, pb: Vec2, rb: f64) -> Option<Candidate> {
    let delta = pb - pa;
    let dist = delta.length();
    let total = ra + rb;
    if dist > total {
        return None;
    }
    let normal = delta.normalized().unwrap_or(Vec2::new(1.0, 0.0));
    let penetration = total - dist;
    Some(Candidate {
        normal,
        penetration,
        point: pa + normal * (ra - 0.5 * penetration),
    })
}

/// Normal points from the box toward the circle.
fn circle_box(center: Vec2, radius: f64, bx: &Body, half_w: f64, half_h: f64) -> Option<Candidate> {
    let local = (center - bx.position).rotated(-bx.angle);
    let inside = local.x.abs() <= half_w && local.y.abs() <= half_h;
    let (local_normal, dist, local_surface) = if inside {
        // Push out along the closest face.
        let dx = half_w - local.x.abs();
        let dy = half_h - local.y.abs();
        if dx < dy {
            let sx = local.x.signum();
            (Vec2::new(sx, 0.0), -dx, Vec2::new(sx * half_w, local.y))
        } else {
            let sy = local.y.signum();
            (Vec2::new(0.0, sy), -dy, Vec2::new(local.x, sy * half_h))
        }
    } else {
        let closest = Vec2::new(
            local.x.clamp(-half_w, half_w),
            local.y.clamp(-half_h, half_h),
        );
        let delta = local - closest;
        let dist = delta.length();
        if dist > radius {
            return None;
        }
        (delta / dist, dist, closest)
    };
    let penetration = radius - dist;
    let normal = local_normal.rotated(bx.angle);
    let surface = bx.position + local_surface.rotated(bx.angle);
    Some(Candidate {
        normal,
        penetration,
        point: surface + normal * (0.5 * (dist - radius)).min(0.0) * 0.0
            + normal * ((dist - radius) * 0.5),
    })
}

/// Closest point on segment [a, b] to p.
fn closest_on_segment(p: Vec2, a: Vec2, b: Vec2) -> Vec2 {
    let ab = b - a;
    let len_sq = ab.length_squared();
    if len_sq == 0.0 {
        return a;
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    a + ab * t
}

fn segment_world_endpoints(seg: &Body) -> (Vec2, Vec2, f64) {
    match seg.shape {
        Shape::Segment {
            endpoint_a,
            endpoint_b,
            thickness,
        } => (
            seg.position + endpoint_a.rotated(seg.angle),
            seg.position + endpoint_b.rotated(seg.angle),
            thickness,
        ),
        _ => unreachable!("segment_world_endpoints on non-segment"),
    }
}

/// Normal points from the circle toward the segment.
fn circle_segment(center: Vec2, radius: f64, seg: &Body) -> Option<Candidate> {
    let (ea, eb, thickness) = segment_world_endpoints(seg);
    let closest = closest_on_segment(center, ea, eb);
    let delta = closest - center;
    let dist = delta.length();
    let total = radius + thickness;
    if dist > total {
        return None;
    }
    let normal = delta.normalized().unwrap_or_else(|| {
        (eb - ea)
            .perp()
            .normalized()
            .expect("segment endpoints distinct")
    });
    let penetration = total - dist;
    // Midpoint of the overlap interval between the two surfaces.
    let point = center + normal * (radius - 0.5 * penetration);
    Some(Candidate {
        normal,
        penetration,
        point,
    })
}

fn box_axes(b: &Body) -> (Vec2, Vec2) {
    let ux = Vec2::new(1.0, 0.0).rotated(b.angle);
    (ux, ux.perp())
}

pub(crate) fn box_vertices(b: &Body) -> [Vec2; 4] {
    let (half_w, half_h) = match b.shape {
        Shape::Box { half_w, half_h } => (half_w, half_h),
        _ => unreachable!("box_vertices on non-box"),
    };
    let (ux, uy) = box_axes(b);
    let ex = ux * half_w;
    let ey = uy * half_h;
    [
        b.position + ex + ey,
        b.position - ex + ey,
        b.position - ex - ey,
        b.position + ex - ey,
    ]
}

fn projection_radius(b: &Body, axis: Vec2) -> f64 {
    let (half_w, half_h) = match b.shape {
        Shape::Box { half_w, half_h } => (half_w, half_h),
        _ => unreachable!(),
    };
    let (ux, uy) = box_axes(b);
    half_w * axis.dot(ux).abs() + half_h * axis.dot(uy).abs()
}

/// Separating-axis test over both boxes' face normals; the contact point is
/// the deepest vertex of the non-reference box.
fn box_box(a: &Body, b: &Body) -> Option<Candidate> {
    let (ax_a, ay_a) = box_axes(a);
    let (ax_b, ay_b) = box_axes(b);
    let axes = [(ax_a, true), (ay_a, true), (ax_b, false), (ay_b, false)];
    let centers = b.position - a.position;

    let mut best_overlap = f64::INFINITY;
    let mut best_axis = Vec2::ZERO;
    let mut best_from_a = true;
    for (axis, from_a) in axes {
        let d = centers.dot(axis);
        let overlap = projection_radius(a, axis) + projection_radius(b, axis) - d.abs();
        if overlap < 0.0 {
            return None;
        }
        if overlap < best_overlap {
            best_overlap = overlap;
            best_axis = if d < 0.0 { -axis } else { axis };
            best_from_a = from_a;
        }
    }

    // Deepest vertex of the incident (non-reference) box along the normal.
    let point = if best_from_a {
        *box_vertices(b)
            .iter()
            .min_by(|p, q| p.dot(best_axis).partial_cmp(&q.dot(best_axis)).unwrap())
            .unwrap()
    } else {
        *box_vertices(a)
            .iter()
            .max_by(|p, q| p.dot(best_axis).partial_cmp(&q.dot(best_axis)).unwrap())
            .unwrap()
    };

    Some(Candidate {
        normal: best_axis,
        penetration: best_overlap,
        point,
    })
}

fn point_in_box_local(p: Vec2, half_w: f64, half_h: f64) -> bool {
    p.x.abs() <= half_w && p.y.abs() <= half_h
}

/// Normal points from the box toward the segment.
fn box_segment(bx: &Body, seg: &Body) -> Option<Candidate> {
    let (half_w, half_h) = match bx.shape {
        Shape::Box { half_w, half_h } => (half_w, half_h),
        _ => unreachable!(),
    };
    let (ea, eb, thickness) = segment_world_endpoints(seg);
    let la = (ea - bx.position).rotated(-bx.angle);
    let lb = (eb - bx.position).rotated(-bx.angle);

    // Core endpoint buried inside the box: push out along the closest face.
    let depth_a = if point_in_box_local(la, half_w, half_h) {
        Some((half_w - la.x.abs()).min(half_h - la.y.abs()))
    } else {
        None
    };
    let depth_b = if point_in_box_local(lb, half_w, half_h) {
        Some((half_w - lb.x.abs()).min(half_h - lb.y.abs()))
    } else {
        None
    };
    if depth_a.is_some() || depth_b.is_some() {
        let (local, depth) = match (depth_a, depth_b) {
            (Some(da), Some(db)) => {
                if da >= db {
                    (la, da)
                } else {
                    (lb, db)
                }
            }
            (Some(da), None) => (la, da),
            (None, Some(db)) => (lb, db),
            (None, None) => unreachable!(),
        };
        let dx = half_w - local.x.abs();
        let dy = half_h - local.y.abs();
        let local_normal = if dx < dy {
            Vec2::new(local.x.signum(), 0.0)
        } else {
            Vec2::new(0.0, local.y.signum())
        };
        let normal = local_normal.rotated(bx.angle);
        let point = bx.position + local.rotated(bx.angle);
        return Some(Candidate {
            normal,
            penetration: thickness + depth,
            point,
        });
    }

    // Disjoint from the core line: the closest feature pair is either a box
    // vertex against the core, or a core endpoint against the box boundary.
    let mut best: Option<(f64, Vec2, Vec2)> = None; // (dist, on_box, on_core)
    for v in box_vertices(bx) {
        let s = closest_on_segment(v, ea, eb);
        let d = (s - v).length();
        if best.as_ref().is_none_or(|(bd, _, _)| d < *bd) {
            best = Some((d, v, s));
        }
    }
    for e in [ea, eb] {
        let local = (e - bx.position).rotated(-bx.angle);
        let clamped = Vec2::new(
            local.x.clamp(-half_w, half_w),
            local.y.clamp(-half_h, half_h),
        );
        let on_box = bx.position + clamped.rotated(bx.angle);
        let d = (e - on_box).length();
        if best.as_ref().is_none_or(|(bd, _, _)| d < *bd) {
            best = Some((d, on_box, e));
        }
    }
    let (dist, on_box, on_core) = best?;
    if dist > thickness {
        return None;
    }
    let normal = (on_core - on_box).normalized().unwrap_or_else(|| {
        (eb - ea)
            .perp()
            .normalized()
            .expect("segment endpoints distinct")
    });
    Some(Candidate {
        normal,
        penetration: thickness - dist,
        point: (on_box + on_core - normal * thickness) * 0.5,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics2d::world::World;

    fn circle_body(id: u32, r: f64, pos: Vec2) -> Body {
        Body::dynamic(BodyId(id), Shape::circle(r), 1.0, pos).unwrap()
    }

    #[test]
    fn separated_circles_produce_no_contact() {
        let mut w = World::new(Vec2::ZERO);
        w.add_body(circle_body(0, 1.0, Vec2::new(0.0, 0.0))).unwrap();
        w.add_body(circle_body(1, 1.0, Vec2::new(3.0, 0.0))).unwrap();
        assert!(detect_contacts(&w).is_empty());
    }

    #[test]
    fn overlapping_circles_contact() {
        let mut w = World::new(Vec2::ZERO);
        w.add_body(circle_body(0, 1.0, Vec2::new(0.0, 0.0))).unwrap();
        w.add_body(circle_body(1, 1.0, Vec2::new(1.5, 0.0))).unwrap();
        let contacts = detect_contacts(&w);
        assert_eq!(contacts.len(), 1);
        let c = &contacts[0];
        assert_eq!(c.body_a, BodyId(0));
        assert_eq!(c.body_b, BodyId(1));
        assert!((c.normal - Vec2::new(1.0, 0.0)).length() < 1e-12);
        assert!((c.penetration - 0.5).abs() < 1e-12);
    }

    /// Independent oracle: distance from a point to a segment.
    fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
        let ab = b - a;
        let t = ((p - a).dot(ab) / ab.length_squared()).clamp(0.0, 1.0);
        (p - (a + ab * t)).length()
    }

    #[test]
    fn circle_above_segment() {
        let mut w = World::new(Vec2::ZERO);
        let center = Vec2::new(0.0, 0.8);
        w.add_body(circle_body(0, 1.0, center)).unwrap();
        let seg = Shape::segment(Vec2::new(-5.0, 0.0), Vec2::new(5.0, 0.0), 0.0);
        w.add_body(Body::fixed(BodyId(1), seg, Vec2::ZERO).unwrap()).unwrap();
        let contacts = detect_contacts(&w);
        assert_eq!(contacts.len(), 1);
        let c = &contacts[0];
        assert!((c.normal - Vec2::new(0.0, -1.0)).length() < 1e-9);
        let expected_pen =
            1.0 - point_segment_distance(center, Vec2::new(-5.0, 0.0), Vec2::new(5.0, 0.0));
        assert!((c.penetration - expected_pen).abs() < 1e-12);
        assert!((c.penetration - 0.2).abs() < 1e-12);
    }

    #[test]
    fn normals_are_unit_length() {
        let mut w = World::new(Vec2::ZERO);
        w.add_body(circle_body(0, 0.7, Vec2::new(0.1, 0.2))).unwrap();
        w.add_body(
            Body::dynamic(BodyId(1), Shape::rect(0.5, 0.4), 1.0, Vec2::new(0.8, 0.5)).unwrap(),
        )
        .unwrap();
        let mut tilted =
            Body::dynamic(BodyId(2), Shape::rect(0.6, 0.3), 1.0, Vec2::new(0.2, 1.0)).unwrap();
        tilted.angle = 0.4;
        w.add_body(tilted).unwrap();
        for c in detect_contacts(&w) {
            assert!((c.normal.length() - 1.0).abs() < 1e-9);
            assert!(c.penetration >= 0.0);
        }
    }

    #[test]
    fn box_box_overlap() {
        let mut w = World::new(Vec2::ZERO);
        w.add_body(
            Body::dynamic(BodyId(0), Shape::rect(1.0, 1.0), 1.0, Vec2::new(0.0, 0.0)).unwrap(),
        )
        .unwrap();
        w.add_body(
            Body::dynamic(BodyId(1), Shape::rect(1.0, 1.0), 1.0, Vec2::new(1.5, 0.2)).unwrap(),
        )
        .unwrap();
        let contacts = detect_contacts(&w);
        assert_eq!(contacts.len(), 1);
        let c = &contacts[0];
        assert!((c.normal - Vec2::new(1.0, 0.0)).length() < 1e-12);
        assert!((c.penetration - 0.5).abs() < 1e-12);
    }

    #[test]
    fn box_resting_on_segment() {
        let mut w = World::new(Vec2::ZERO);
        w.add_body(
            Body::dynamic(BodyId(0), Shape::rect(0.5, 0.5), 1.0, Vec2::new(0.0, 0.55)).unwrap(),
        )
        .unwrap();
        let seg = Shape::segment(Vec2::new(-5.0, 0.0), Vec2::new(5.0, 0.0), 0.1);
        w.add_body(Body::fixed(BodyId(1), seg, Vec2::ZERO).unwrap()).unwrap();
        let contacts = detect_contacts(&w);
        assert_eq!(contacts.len(), 1);
        let c = &contacts[0];
        // Box bottom at y=0.05, segment surface at y=0.1.
        assert!((c.normal - Vec2::new(0.0, -1.0)).length() < 1e-9);
        assert!((c.penetration - 0.05).abs() < 1e-12);
    }

    #[test]
    fn output_ordered_by_ids() {
        let mut w = World::new(Vec2::ZERO);
        // Insert out of id order; three mutually overlapping circles.
        w.add_body(circle_body(5, 1.0, Vec2::new(1.0, 0.0))).unwrap();
        w.add_body(circle_body(1, 1.0, Vec2::new(0.0, 0.0))).unwrap();
        w.add_body(circle_body(3, 1.0, Vec2::new(0.5, 0.5))).unwrap();
        let pairs: Vec<(BodyId, BodyId)> = detect_contacts(&w)
            .iter()
            .map(|c| (c.body_a, c.body_b))
            .collect();
        assert_eq!(
            pairs,
            vec![
                (BodyId(1), BodyId(3)),
                (BodyId(1), BodyId(5)),
                (BodyId(3), BodyId(5)),
            ]
        );
    }
}
