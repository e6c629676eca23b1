use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::Vec2;
use crate::physics2d::shapes::{moment_of_inertia, Shape};

/// Identifier of a body within a world. Unique per world.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BodyId(pub u32);

impl std::fmt::Display for BodyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A rigid body. Static bodies carry infinite mass and moment and never
/// change pose.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Body {
    pub id: BodyId,
    pub shape: Shape,
    pub mass: f64,
    pub moment: f64,
    pub position: Vec2,
    pub velocity: Vec2,
    pub angle: f64,
    pub ang_velocity: f64,
    pub elasticity: f64,
    pub friction: f64,
    pub is_static: bool,
}

impl Body {
    /// Dynamic body with moment derived from shape and mass.
    pub fn dynamic(id: BodyId, shape: Shape, mass: f64, position: Vec2) -> Result<Body> {
        let moment = moment_of_inertia(&shape, mass)?;
        Ok(Body {
            id,
            shape,
            mass,
            moment,
            position,
            velocity: Vec2::ZERO,
            angle: 0.0,
            ang_velocity: 0.0,
            elasticity: 0.5,
            friction: 0.5,
            is_static: false,
        })
    }

    /// Immovable body (infinite mass sentinel).
    pub fn fixed(id: BodyId, shape: Shape, position: Vec2) -> Result<Body> {
        shape.validate()?;
        Ok(Body {
            id,
            shape,
            mass: f64::INFINITY,
            moment: f64::INFINITY,
            position,
            velocity: Vec2::ZERO,
            angle: 0.0,
            ang_velocity: 0.0,
            elasticity: 0.5,
            friction: 0.5,
            is_static: true,
        })
    }

    pub fn with_velocity(mut self, velocity: Vec2) -> Body {
        self.velocity = velocity;
        self
    }

    pub fn with_material(mut self, elasticity: f64, friction: f64) -> Body {
        self.elasticity = elasticity;
        self.friction = friction;
        self
    }

    /// Update the mass and recompute the moment from the shape.
    pub fn set_mass(&mut self, mass: f64) -> Result<()> {
        if self.is_static {
            return Err(Error::invalid("cannot set mass of a static body"));
        }
        self.moment = moment_of_inertia(&self.shape, mass)?;
        self.mass = mass;
        Ok(())
    }

    pub fn inv_mass(&self) -> f64 {
        if self.is_static {
            0.0
        } else {
            1.0 / self.mass
        }
    }

    pub fn inv_moment(&self) -> f64 {
        if self.is_static {
            0.0
        } else {
            1.0 / self.moment
        }
    }

    /// Velocity of the material point at world position `p`.
    pub fn velocity_at(&self, p: Vec2) -> Vec2 {
        let r = p - self.position;
        self.velocity + r.perp() * self.ang_velocity
    }

    pub fn validate(&self) -> Result<()> {
        self.shape.validate()?;
        if !self.is_static && !(self.mass > 0.0 && self.moment > 0.0) {
            return Err(Error::invalid(format!(
                "dynamic body {} must have positive mass and moment",
                self.id
            )));
        }
        if !(0.0..=1.0).contains(&self.elasticity) {
            return Err(Error::invalid(format!(
                "elasticity must be in [0, 1], got {}",
                self.elasticity
            )));
        }
        if !(self.friction >= 0.0) {
            return Err(Error::invalid(format!("friction must be >= 0, got {}", self.friction)));
        }
        Ok(())
    }
}
