//! Soft mappings induced by an element map and a parameter map: images,
//! inverse images, point images, continuity, openness, homeomorphisms and
//! embeddings.

use alloc::string::String;
use alloc::vec::Vec;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::point::{enumerate_soft_points, SoftPoint};
use crate::set::SoftSet;
use crate::topology::SoftTopology;

/// A total element map `φ: U -> U'` paired with a total parameter map
/// `ψ: E -> E'`. The pair acts on soft sets: images union `φ` over the
/// `ψ`-fibers, inverse images pull back through `ψ` and then `φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoftMapping {
    source: Context,
    target: Context,
    elem_map: Vec<usize>,
    param_map: Vec<usize>,
}

impl SoftMapping {
    /// Builds a mapping from name tables. Both tables must be total on the
    /// source and land in the target.
    pub fn new<IE, PE, IP, PP>(
        source: &Context,
        target: &Context,
        elements: IE,
        parameters: IP,
    ) -> Result<Self>
    where
        IE: IntoIterator<Item = (PE, PE)>,
        PE: AsRef<str>,
        IP: IntoIterator<Item = (PP, PP)>,
        PP: AsRef<str>,
    {
        let mut elem_map: Vec<Option<usize>> = alloc::vec![None; source.element_count()];
        for (from, to) in elements {
            let i = source.require_element(from.as_ref())?;
            let j = target.require_element(to.as_ref())?;
            if elem_map[i].is_some() {
                return Err(Error::DuplicateElement(String::from(from.as_ref())));
            }
            elem_map[i] = Some(j);
        }
        let mut param_map: Vec<Option<usize>> = alloc::vec![None; source.parameter_count()];
        for (from, to) in parameters {
            let i = source.require_parameter(from.as_ref())?;
            let j = target.require_parameter(to.as_ref())?;
            if param_map[i].is_some() {
                return Err(Error::DuplicateParameter(String::from(from.as_ref())));
            }
            param_map[i] = Some(j);
        }
        let elem_map = elem_map
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MissingElementMapping(source.element_name(i).into())))
            .collect::<Result<Vec<usize>>>()?;
        let param_map = param_map
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| Error::MissingParameterMapping(source.parameter_name(i).into()))
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(SoftMapping {
            source: source.clone(),
            target: target.clone(),
            elem_map,
            param_map,
        })
    }

    /// Builds a mapping from index tables (position `i` maps to `table[i]`).
    pub fn from_index_tables(
        source: &Context,
        target: &Context,
        elem_map: Vec<usize>,
        param_map: Vec<usize>,
    ) -> Result<Self> {
        if elem_map.len() != source.element_count()
            || elem_map.iter().any(|&j| j >= target.element_count())
        {
            return Err(Error::UnknownElement("element table out of range".into()));
        }
        if param_map.len() != source.parameter_count()
            || param_map.iter().any(|&j| j >= target.parameter_count())
        {
            return Err(Error::UnknownParameter("parameter table out of range".into()));
        }
        Ok(SoftMapping {
            source: source.clone(),
            target: target.clone(),
            elem_map,
            param_map,
        })
    }

    pub fn identity(ctx: &Context) -> Self {
        SoftMapping {
            source: ctx.clone(),
            target: ctx.clone(),
            elem_map: (0..ctx.element_count()).collect(),
            param_map: (0..ctx.parameter_count()).collect(),
        }
    }

    pub fn source(&self) -> &Context {
        &self.source
    }

    pub fn target(&self) -> &Context {
        &self.target
    }

    pub fn element_image(&self, index: usize) -> usize {
        self.elem_map[index]
    }

    pub fn parameter_image(&self, index: usize) -> usize {
        self.param_map[index]
    }

    pub fn elements_injective(&self) -> bool {
        table_injective(&self.elem_map)
    }

    pub fn elements_surjective(&self) -> bool {
        table_surjective(&self.elem_map, self.target.element_count())
    }

    pub fn parameters_injective(&self) -> bool {
        table_injective(&self.param_map)
    }

    pub fn parameters_surjective(&self) -> bool {
        table_surjective(&self.param_map, self.target.parameter_count())
    }

    /// Injective means both component maps are injective; likewise for
    /// surjective and bijective.
    pub fn is_injective(&self) -> bool {
        self.elements_injective() && self.parameters_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.elements_surjective() && self.parameters_surjective()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Soft image: the approximation at a target parameter `e'` is the union
    /// of `φ`-images of the approximations at all source parameters in the
    /// `ψ`-fiber of `e'`. Parameters with empty fiber get the empty
    /// approximation.
    pub fn image(&self, set: &SoftSet) -> Result<SoftSet> {
        self.source.check_same(set.context())?;
        let mut bits = crate::bits::Bits::zeros(self.target.bit_count());
        for e in 0..self.source.parameter_count() {
            let e_img = self.param_map[e];
            for x in 0..self.source.element_count() {
                if set.contains(e, x) {
                    bits.set(self.target.bit_index(e_img, self.elem_map[x]), true);
                }
            }
        }
        Ok(SoftSet::from_bits(&self.target, bits))
    }

    /// Soft inverse image: the approximation at a source parameter `e` is
    /// `φ⁻¹` of the approximation at `ψ(e)`.
    pub fn preimage(&self, set: &SoftSet) -> Result<SoftSet> {
        self.target.check_same(set.context())?;
        let mut bits = crate::bits::Bits::zeros(self.source.bit_count());
        for e in 0..self.source.parameter_count() {
            let e_img = self.param_map[e];
            for x in 0..self.source.element_count() {
                if set.contains(e_img, self.elem_map[x]) {
                    bits.set(self.source.bit_index(e, x), true);
                }
            }
        }
        Ok(SoftSet::from_bits(&self.source, bits))
    }

    /// Image of a soft point: `(p, α) ↦ (φ(p), ψ(α))`.
    pub fn image_of_point(&self, point: &SoftPoint) -> Result<SoftPoint> {
        self.source.check_same(point.context())?;
        SoftPoint::from_indices(
            &self.target,
            self.elem_map[point.element_index()],
            self.param_map[point.parameter_index()],
        )
    }

    /// Inverse mapping; the tables must be bijective.
    pub fn inverse(&self) -> Result<SoftMapping> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let mut elem_map = alloc::vec![0usize; self.target.element_count()];
        for (i, &j) in self.elem_map.iter().enumerate() {
            elem_map[j] = i;
        }
        let mut param_map = alloc::vec![0usize; self.target.parameter_count()];
        for (i, &j) in self.param_map.iter().enumerate() {
            param_map[j] = i;
        }
        Ok(SoftMapping {
            source: self.target.clone(),
            target: self.source.clone(),
            elem_map,
            param_map,
        })
    }

    /// Restricts the target to the image: the sub-context `(φ(U), ψ(E))`
    /// with orderings inherited from the target, plus the corestricted
    /// mapping onto it.
    pub fn corestriction(&self) -> Result<(Context, SoftMapping)> {
        let elem_image = sorted_image(&self.elem_map);
        let param_image = sorted_image(&self.param_map);
        let sub_ctx = Context::new(
            elem_image.iter().map(|&j| self.target.element_name(j)),
            param_image.iter().map(|&j| self.target.parameter_name(j)),
        )?;
        let elem_map = self
            .elem_map
            .iter()
            .map(|j| elem_image.binary_search(j).expect("image element present"))
            .collect();
        let param_map = self
            .param_map
            .iter()
            .map(|j| param_image.binary_search(j).expect("image parameter present"))
            .collect();
        let core = SoftMapping {
            source: self.source.clone(),
            target: sub_ctx.clone(),
            elem_map,
            param_map,
        };
        Ok((sub_ctx, core))
    }

    /// Global continuity: the preimage of every soft open set of the target
    /// is soft open in the source. The verdict carries the first offending
    /// open.
    pub fn is_continuous(
        &self,
        source_topology: &SoftTopology,
        target_topology: &SoftTopology,
    ) -> Result<ContinuityVerdict> {
        self.check_spaces(source_topology, target_topology)?;
        for open in target_topology.opens() {
            if !source_topology.contains_open(&self.preimage(open)?) {
                return Ok(ContinuityVerdict { witness: Some(open.clone()) });
            }
        }
        Ok(ContinuityVerdict { witness: None })
    }

    /// Continuity at a soft point, by the neighbourhood definition: every
    /// soft neighbourhood of the image point contains the image of some soft
    /// neighbourhood of the point. It suffices to range over the open
    /// neighbourhoods on both sides.
    pub fn is_continuous_at(
        &self,
        point: &SoftPoint,
        source_topology: &SoftTopology,
        target_topology: &SoftTopology,
    ) -> Result<bool> {
        self.check_spaces(source_topology, target_topology)?;
        self.source.check_same(point.context())?;
        let image_point = self.image_of_point(point)?;
        for target_open in target_topology.opens() {
            if !target_open.contains_point(&image_point)? {
                continue;
            }
            let mut witnessed = false;
            for source_open in source_topology.opens() {
                if source_open.contains_point(point)?
                    && self.image(source_open)?.is_subset_of(target_open)?
                {
                    witnessed = true;
                    break;
                }
            }
            if !witnessed {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Pointwise continuity over all soft points; returns the first point at
    /// which the neighbourhood condition fails, if any.
    pub fn is_continuous_pointwise(
        &self,
        source_topology: &SoftTopology,
        target_topology: &SoftTopology,
    ) -> Result<Option<SoftPoint>> {
        self.check_spaces(source_topology, target_topology)?;
        for point in enumerate_soft_points(&self.source) {
            if !self.is_continuous_at(&point, source_topology, target_topology)? {
                return Ok(Some(point));
            }
        }
        Ok(None)
    }

    /// Openness: the image of every soft open set of the source is soft open
    /// in the target.
    pub fn is_open_map(
        &self,
        source_topology: &SoftTopology,
        target_topology: &SoftTopology,
    ) -> Result<OpennessVerdict> {
        self.check_spaces(source_topology, target_topology)?;
        for open in source_topology.opens() {
            if !target_topology.contains_open(&self.image(open)?) {
                return Ok(OpennessVerdict { witness: Some(open.clone()) });
            }
        }
        Ok(OpennessVerdict { witness: None })
    }

    /// Soft homeomorphism: bijective, soft continuous, with soft continuous
    /// inverse. Inverse continuity of a bijection is checked as openness of
    /// the forward map, avoiding table inversion.
    pub fn is_homeomorphism(
        &self,
        source_topology: &SoftTopology,
        target_topology: &SoftTopology,
    ) -> Result<HomeoVerdict> {
        self.check_spaces(source_topology, target_topology)?;
        let failure = if !self.elements_injective() {
            Some(HomeoFailure::ElementsNotInjective)
        } else if !self.elements_surjective() {
            Some(HomeoFailure::ElementsNotSurjective)
        } else if !self.parameters_injective() {
            Some(HomeoFailure::ParametersNotInjective)
        } else if !self.parameters_surjective() {
            Some(HomeoFailure::ParametersNotSurjective)
        } else if let Some(open) = self.is_continuous(source_topology, target_topology)?.witness {
            Some(HomeoFailure::NotContinuous(open))
        } else {
            self.is_open_map(source_topology, target_topology)?
                .witness
                .map(HomeoFailure::NotOpen)
        };
        Ok(HomeoVerdict { failure })
    }

    /// Soft embedding: the corestriction onto the image sub-context, carrying
    /// the trace topology, is a soft homeomorphism.
    pub fn is_embedding(
        &self,
        source_topology: &SoftTopology,
        target_topology: &SoftTopology,
    ) -> Result<EmbeddingVerdict> {
        self.check_spaces(source_topology, target_topology)?;
        let (sub_ctx, corestricted) = self.corestriction()?;
        let elem_names: Vec<&str> = sub_ctx.universe().iter().map(String::as_str).collect();
        let param_names: Vec<&str> = sub_ctx.parameters().iter().map(String::as_str).collect();
        let (_, trace_topology) = target_topology.subspace(&elem_names, &param_names)?;
        let verdict = corestricted.is_homeomorphism(source_topology, &trace_topology)?;
        Ok(EmbeddingVerdict { failure: verdict.failure })
    }

    fn check_spaces(
        &self,
        source_topology: &SoftTopology,
        target_topology: &SoftTopology,
    ) -> Result<()> {
        self.source.check_same(source_topology.context())?;
        self.target.check_same(target_topology.context())
    }
}

/// Composition `second ∘ first`.
pub fn compose(second: &SoftMapping, first: &SoftMapping) -> Result<SoftMapping> {
    first.target.check_same(&second.source)?;
    Ok(SoftMapping {
        source: first.source.clone(),
        target: second.target.clone(),
        elem_map: first.elem_map.iter().map(|&i| second.elem_map[i]).collect(),
        param_map: first.param_map.iter().map(|&i| second.param_map[i]).collect(),
    })
}

fn table_injective(table: &[usize]) -> bool {
    let mut seen = alloc::collections::BTreeSet::new();
    table.iter().all(|&j| seen.insert(j))
}

fn table_surjective(table: &[usize], target_len: usize) -> bool {
    let seen: alloc::collections::BTreeSet<usize> = table.iter().copied().collect();
    seen.len() == target_len
}

fn sorted_image(table: &[usize]) -> Vec<usize> {
    let set: alloc::collections::BTreeSet<usize> = table.iter().copied().collect();
    set.into_iter().collect()
}

/// Global-continuity verdict; `witness` is a target open whose preimage is
/// not open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuityVerdict {
    pub witness: Option<SoftSet>,
}

impl ContinuityVerdict {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

/// Openness verdict; `witness` is a source open whose image is not open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpennessVerdict {
    pub witness: Option<SoftSet>,
}

impl OpennessVerdict {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

/// The failing leg of a homeomorphism or embedding check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomeoFailure {
    ElementsNotInjective,
    ElementsNotSurjective,
    ParametersNotInjective,
    ParametersNotSurjective,
    NotContinuous(SoftSet),
    NotOpen(SoftSet),
}

impl HomeoFailure {
    /// Stable machine name of the leg.
    pub fn leg(&self) -> &'static str {
        match self {
            HomeoFailure::ElementsNotInjective => "elements_not_injective",
            HomeoFailure::ElementsNotSurjective => "elements_not_surjective",
            HomeoFailure::ParametersNotInjective => "parameters_not_injective",
            HomeoFailure::ParametersNotSurjective => "parameters_not_surjective",
            HomeoFailure::NotContinuous(_) => "not_continuous",
            HomeoFailure::NotOpen(_) => "not_open",
        }
    }

    pub fn witness(&self) -> Option<&SoftSet> {
        match self {
            HomeoFailure::NotContinuous(s) | HomeoFailure::NotOpen(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomeoVerdict {
    pub failure: Option<HomeoFailure>,
}

impl HomeoVerdict {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Embedding verdict; on failure carries the corestriction's failing leg,
/// with witnesses living over the image sub-context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingVerdict {
    pub failure: Option<HomeoFailure>,
}

impl EmbeddingVerdict {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}
