//! Finite products of soft topological spaces: tuple contexts, projections,
//! initial topologies, the product topology and diagonal mappings.
//!
//! The product universe and parameter set are Cartesian products of the
//! factors', ordered factor-index lexicographically (factor 0 varies
//! slowest); tuple names join the component names, e.g. `(a,u)`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::mapping::SoftMapping;
use crate::topology::{generate_from_subbase_bounded, SoftTopology};

/// A product context together with its factor list and the mixed-radix
/// index tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductContext {
    factors: Vec<Context>,
    context: Context,
    elem_radix: Vec<usize>,
    param_radix: Vec<usize>,
}

/// Builds the product of a nonempty list of contexts.
pub fn product_context(factors: &[Context]) -> Result<ProductContext> {
    if factors.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    let elem_radix: Vec<usize> = factors.iter().map(Context::element_count).collect();
    let param_radix: Vec<usize> = factors.iter().map(Context::parameter_count).collect();
    let elem_names = tuple_names(factors, &elem_radix, |ctx, i| ctx.element_name(i));
    let param_names = tuple_names(factors, &param_radix, |ctx, i| ctx.parameter_name(i));
    let context = Context::new(elem_names, param_names)?;
    Ok(ProductContext {
        factors: factors.to_vec(),
        context,
        elem_radix,
        param_radix,
    })
}

fn tuple_names<'a>(
    factors: &'a [Context],
    radix: &[usize],
    name: impl Fn(&'a Context, usize) -> &'a str,
) -> Vec<String> {
    let total: usize = radix.iter().product();
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let comps = decode_mixed_radix(code, radix);
        let mut s = String::from("(");
        for (k, &c) in comps.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(name(&factors[k], c));
        }
        s.push(')');
        out.push(s);
    }
    out
}

fn encode_mixed_radix(components: &[usize], radix: &[usize]) -> usize {
    debug_assert_eq!(components.len(), radix.len());
    components
        .iter()
        .zip(radix.iter())
        .fold(0, |acc, (&c, &r)| {
            debug_assert!(c < r);
            acc * r + c
        })
}

fn decode_mixed_radix(mut code: usize, radix: &[usize]) -> Vec<usize> {
    let mut out = alloc::vec![0usize; radix.len()];
    for k in (0..radix.len()).rev() {
        out[k] = code % radix[k];
        code /= radix[k];
    }
    out
}

impl ProductContext {
    /// The tuple context.
    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn factors(&self) -> &[Context] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Flat index of an element tuple given per-factor element indices.
    pub fn encode_element(&self, components: &[usize]) -> usize {
        encode_mixed_radix(components, &self.elem_radix)
    }

    pub fn decode_element(&self, index: usize) -> Vec<usize> {
        decode_mixed_radix(index, &self.elem_radix)
    }

    pub fn encode_parameter(&self, components: &[usize]) -> usize {
        encode_mixed_radix(components, &self.param_radix)
    }

    pub fn decode_parameter(&self, index: usize) -> Vec<usize> {
        decode_mixed_radix(index, &self.param_radix)
    }

    /// The i-th soft projection mapping, induced by the classical
    /// projections of both the universe and the parameter tuples.
    pub fn projection(&self, index: usize) -> Result<SoftMapping> {
        if index >= self.factors.len() {
            return Err(Error::FactorIndex { index, count: self.factors.len() });
        }
        let elem_map = (0..self.context.element_count())
            .map(|t| self.decode_element(t)[index])
            .collect();
        let param_map = (0..self.context.parameter_count())
            .map(|t| self.decode_parameter(t)[index])
            .collect();
        SoftMapping::from_index_tables(&self.context, &self.factors[index], elem_map, param_map)
    }
}

/// The initial soft topology on `ctx` for a family of mappings into soft
/// spaces: generated by the preimages of all opens of all targets, hence the
/// coarsest topology making every mapping soft continuous.
pub fn initial_topology(
    ctx: &Context,
    spaces: &[SoftTopology],
    maps: &[SoftMapping],
) -> Result<SoftTopology> {
    initial_topology_bounded(ctx, spaces, maps, usize::MAX)
}

/// [`initial_topology`] with a cap on the generated opens.
pub fn initial_topology_bounded(
    ctx: &Context,
    spaces: &[SoftTopology],
    maps: &[SoftMapping],
    max_opens: usize,
) -> Result<SoftTopology> {
    if spaces.len() != maps.len() {
        return Err(Error::ArityMismatch { expected: spaces.len(), got: maps.len() });
    }
    let mut subbase = Vec::new();
    for (space, map) in spaces.iter().zip(maps.iter()) {
        ctx.check_same(map.source())?;
        space.context().check_same(map.target())?;
        for open in space.opens() {
            subbase.push(map.preimage(open)?);
        }
    }
    generate_from_subbase_bounded(ctx, &subbase, max_opens)
}

/// The soft topological product: the initial topology of the projection
/// mappings on the product context.
pub fn product_topology(spaces: &[SoftTopology]) -> Result<(ProductContext, SoftTopology)> {
    product_topology_bounded(spaces, usize::MAX)
}

/// [`product_topology`] with a cap on the generated opens.
pub fn product_topology_bounded(
    spaces: &[SoftTopology],
    max_opens: usize,
) -> Result<(ProductContext, SoftTopology)> {
    let factors: Vec<Context> = spaces.iter().map(|s| s.context().clone()).collect();
    let product = product_context(&factors)?;
    let projections: Vec<SoftMapping> = (0..factors.len())
        .map(|i| product.projection(i))
        .collect::<Result<_>>()?;
    let topology =
        initial_topology_bounded(product.context(), spaces, &projections, max_opens)?;
    Ok((product, topology))
}

/// The soft diagonal mapping of a family of mappings with a common source:
/// `x ↦ ⟨φ_i(x)⟩` on elements and `e ↦ ⟨ψ_i(e)⟩` on parameters.
pub fn diagonal_mapping(maps: &[SoftMapping], product: &ProductContext) -> Result<SoftMapping> {
    if maps.len() != product.factor_count() {
        return Err(Error::ArityMismatch { expected: product.factor_count(), got: maps.len() });
    }
    let src = maps[0].source().clone();
    for (map, factor) in maps.iter().zip(product.factors()) {
        src.check_same(map.source())?;
        factor.check_same(map.target())?;
    }
    let elem_map = (0..src.element_count())
        .map(|x| {
            let comps: Vec<usize> = maps.iter().map(|m| m.element_image(x)).collect();
            product.encode_element(&comps)
        })
        .collect();
    let param_map = (0..src.parameter_count())
        .map(|e| {
            let comps: Vec<usize> = maps.iter().map(|m| m.parameter_image(e)).collect();
            product.encode_parameter(&comps)
        })
        .collect();
    SoftMapping::from_index_tables(&src, product.context(), elem_map, param_map)
}
