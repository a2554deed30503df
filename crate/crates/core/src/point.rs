//! Soft points: the soft sets with a single singleton approximation.
//!
//! A soft point is identified by its support element `p` and its expressive
//! parameter `α`; two soft points are soft equal exactly when both agree.

use alloc::vec::Vec;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::set::SoftSet;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SoftPoint {
    ctx: Context,
    element: usize,
    parameter: usize,
}

impl SoftPoint {
    /// Builds the soft point with support `{element}` at `parameter`.
    pub fn new(ctx: &Context, element: &str, parameter: &str) -> Result<Self> {
        let x = ctx.require_element(element)?;
        let p = ctx.require_parameter(parameter)?;
        Ok(SoftPoint { ctx: ctx.clone(), element: x, parameter: p })
    }

    pub fn from_indices(ctx: &Context, element: usize, parameter: usize) -> Result<Self> {
        if element >= ctx.element_count() {
            return Err(Error::UnknownElement(alloc::format!("#{element}")));
        }
        if parameter >= ctx.parameter_count() {
            return Err(Error::UnknownParameter(alloc::format!("#{parameter}")));
        }
        Ok(SoftPoint { ctx: ctx.clone(), element, parameter })
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn element(&self) -> &str {
        self.ctx.element_name(self.element)
    }

    pub fn parameter(&self) -> &str {
        self.ctx.parameter_name(self.parameter)
    }

    pub fn element_index(&self) -> usize {
        self.element
    }

    pub fn parameter_index(&self) -> usize {
        self.parameter
    }

    /// Renders the point as a soft set with exactly one true bit.
    pub fn to_soft_set(&self) -> SoftSet {
        let mut bits = crate::bits::Bits::zeros(self.ctx.bit_count());
        bits.set(self.ctx.bit_index(self.parameter, self.element), true);
        SoftSet::from_bits(&self.ctx, bits)
    }

    /// Soft membership in a soft set.
    pub fn is_in(&self, set: &SoftSet) -> Result<bool> {
        set.contains_point(self)
    }
}

impl core::fmt::Debug for SoftPoint {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "SoftPoint({},{})", self.element(), self.parameter())
    }
}

impl core::fmt::Display for SoftPoint {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({},{})", self.element(), self.parameter())
    }
}

/// All `|U| * |E|` soft points of the context in canonical parameter-major
/// order (the parameter varies slowest).
pub fn enumerate_soft_points(ctx: &Context) -> Vec<SoftPoint> {
    let mut out = Vec::with_capacity(ctx.bit_count());
    for parameter in 0..ctx.parameter_count() {
        for element in 0..ctx.element_count() {
            out.push(SoftPoint { ctx: ctx.clone(), element, parameter });
        }
    }
    out
}
