//! Contexts: a finite universe of named elements plus a finite nonempty set
//! of named parameters. Every soft set, point, topology and mapping is
//! anchored to one context.
//!
//! The orderings given at construction are canonical: membership matrices are
//! laid out parameter-major, bit `p * |U| + x` holding element `x` of the
//! approximation at parameter `p`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug)]
struct ContextData {
    universe: Vec<String>,
    parameters: Vec<String>,
    element_index: BTreeMap<String, usize>,
    parameter_index: BTreeMap<String, usize>,
}

/// Shared, immutable description of a universe and its parameter set.
///
/// Cloning is cheap; all values derived from a context hold a handle to it.
/// Two contexts are equal when their universes and parameter lists are equal
/// as ordered name sequences.
#[derive(Clone, Debug)]
pub struct Context {
    data: Arc<ContextData>,
}

impl Context {
    /// Builds a context from element and parameter names.
    ///
    /// The universe may be empty; the parameter list may not. Names must be
    /// unique within their list.
    pub fn new<U, P>(universe: U, parameters: P) -> Result<Self>
    where
        U: IntoIterator,
        U::Item: Into<String>,
        P: IntoIterator,
        P::Item: Into<String>,
    {
        let universe: Vec<String> = universe.into_iter().map(Into::into).collect();
        let parameters: Vec<String> = parameters.into_iter().map(Into::into).collect();
        if parameters.is_empty() {
            return Err(Error::EmptyParameterSet);
        }
        let mut element_index = BTreeMap::new();
        for (i, name) in universe.iter().enumerate() {
            if element_index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let mut parameter_index = BTreeMap::new();
        for (i, name) in parameters.iter().enumerate() {
            if parameter_index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateParameter(name.clone()));
            }
        }
        Ok(Context {
            data: Arc::new(ContextData {
                universe,
                parameters,
                element_index,
                parameter_index,
            }),
        })
    }

    pub fn universe(&self) -> &[String] {
        &self.data.universe
    }

    pub fn parameters(&self) -> &[String] {
        &self.data.parameters
    }

    pub fn element_count(&self) -> usize {
        self.data.universe.len()
    }

    pub fn parameter_count(&self) -> usize {
        self.data.parameters.len()
    }

    /// Width of the canonical bitstring: `|U| * |E|`.
    pub fn bit_count(&self) -> usize {
        self.element_count() * self.parameter_count()
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.data.element_index.get(name).copied()
    }

    pub fn parameter_index(&self, name: &str) -> Option<usize> {
        self.data.parameter_index.get(name).copied()
    }

    /// Like [`Context::element_index`] but reports the offending name.
    pub fn require_element(&self, name: &str) -> Result<usize> {
        self.element_index(name)
            .ok_or_else(|| Error::UnknownElement(name.into()))
    }

    pub fn require_parameter(&self, name: &str) -> Result<usize> {
        self.parameter_index(name)
            .ok_or_else(|| Error::UnknownParameter(name.into()))
    }

    pub fn element_name(&self, index: usize) -> &str {
        &self.data.universe[index]
    }

    pub fn parameter_name(&self, index: usize) -> &str {
        &self.data.parameters[index]
    }

    /// Canonical bit position of (parameter, element).
    pub(crate) fn bit_index(&self, parameter: usize, element: usize) -> usize {
        debug_assert!(parameter < self.parameter_count());
        debug_assert!(element < self.element_count());
        parameter * self.element_count() + element
    }

    /// Structural equality with a pointer fast path.
    pub fn same_as(&self, other: &Context) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.universe == other.data.universe
                && self.data.parameters == other.data.parameters)
    }

    pub(crate) fn check_same(&self, other: &Context) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Context {}

impl PartialOrd for Context {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Context {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        if Arc::ptr_eq(&self.data, &other.data) {
            return core::cmp::Ordering::Equal;
        }
        self.data
            .universe
            .cmp(&other.data.universe)
            .then_with(|| self.data.parameters.cmp(&other.data.parameters))
    }
}

impl core::hash::Hash for Context {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.data.universe.hash(state);
        self.data.parameters.hash(state);
    }
}
