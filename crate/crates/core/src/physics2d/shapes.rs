use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::Vec2;

/// Collision geometry attached to a body.
///
/// Segment endpoints live in the body's local frame; a segment with
/// `thickness > 0` behaves like a capsule of that radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Shape {
    Circle {
        radius: f64,
    },
    Box {
        half_w: f64,
        half_h: f64,
    },
    Segment {
        endpoint_a: Vec2,
        endpoint_b: Vec2,
        thickness: f64,
    },
}

impl Shape {
    pub fn circle(radius: f64) -> Shape {
        Shape::Circle { radius }
    }

    pub fn rect(half_w: f64, half_h: f64) -> Shape {
        Shape::Box { half_w, half_h }
    }

    pub fn segment(endpoint_a: Vec2, endpoint_b: Vec2, thickness: f64) -> Shape {
        Shape::Segment {
            endpoint_a,
            endpoint_b,
            thickness,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Shape::Circle { radius } => {
                if !(radius > 0.0) || !radius.is_finite() {
                    return Err(Error::invalid(format!("circle radius must be > 0, got {radius}")));
                }
            }
            Shape::Box { half_w, half_h } => {
                if !(half_w > 0.0 && half_h > 0.0) || !half_w.is_finite() || !half_h.is_finite() {
                    return Err(Error::invalid(format!(
                        "box half extents must be > 0, got ({half_w}, {half_h})"
                    )));
                }
            }
            Shape::Segment {
                endpoint_a,
                endpoint_b,
                thickness,
            } => {
                if !(thickness >= 0.0) || !thickness.is_finite() {
                    return Err(Error::invalid(format!("segment thickness must be >= 0, got {thickness}")));
                }
                if endpoint_a == endpoint_b {
                    return Err(Error::invalid("segment endpoints must be distinct"));
                }
            }
        }
        Ok(())
    }
}

/// Moment of inertia about the shape centroid for the given mass.
///
/// Circle: `m r^2 / 2`. Box: `m (w^2 + h^2) / 12`. A segment is treated as
/// a solid box of its length and `2 * thickness` height.
pub fn moment_of_inertia(shape: &Shape, mass: f64) -> Result<f64> {
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::invalid(format!("mass must be > 0, got {mass}")));
    }
    shape.validate()?;
    Ok(match *shape {
        Shape::Circle { radius } => 0.5 * mass * radius * radius,
        Shape::Box { half_w, half_h } => {
            let w = 2.0 * half_w;
            let h = 2.0 * half_h;
            mass * (w * w + h * h) / 12.0
        }
        Shape::Segment {
            endpoint_a,
            endpoint_b,
            thickness,
        } => {
            let len = (endpoint_b - endpoint_a).length();
            let h = 2.0 * thickness;
            mass * (len * len + h * h) / 12.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moment_circle() {
        let m = moment_of_inertia(&Shape::circle(1.0), 2.0).unwrap();
        assert_eq!(m, 1.0);
        let m = moment_of_inertia(&Shape::circle(0.5), 5.0).unwrap();
        assert_eq!(m, 0.625);
    }

    #[test]
    fn moment_box() {
        let m = moment_of_inertia(&Shape::rect(0.5, 0.5), 12.0).unwrap();
        assert_eq!(m, 2.0);
    }

    #[test]
    fn moment_rejects_bad_input() {
        assert!(moment_of_inertia(&Shape::circle(1.0), 0.0).is_err());
        assert!(moment_of_inertia(&Shape::circle(1.0), -2.0).is_err());
        assert!(moment_of_inertia(&Shape::circle(0.0), 1.0).is_err());
        assert!(moment_of_inertia(&Shape::rect(1.0, 0.0), 1.0).is_err());
        let degenerate = Shape::segment(Vec2::new(1.0, 1.0), Vec2::new(1.0, 1.0), 0.1);
        assert!(moment_of_inertia(&degenerate, 1.0).is_err());
    }
}
