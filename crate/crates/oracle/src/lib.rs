//! Test oracles: a naive per-parameter set model of soft sets and
//! brute-force enumerators for families and topologies on tiny contexts.
//!
//! Everything here recomputes results from first principles over
//! `BTreeMap<String, BTreeSet<String>>` models and exhaustive enumeration,
//! deliberately avoiding the packed bit representation and the fixpoint
//! algorithms it is used to check. Intended for dev-dependencies only.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use softtop_core::{Context, SoftSet};

/// The naive model: one named element set per parameter name. Every
/// parameter of the context is present as a key.
pub type Model = BTreeMap<String, BTreeSet<String>>;

/// Reads a soft set into the naive model.
pub fn model_of(set: &SoftSet) -> Model {
    let ctx = set.context();
    ctx.parameters()
        .iter()
        .map(|p| {
            let elems = set
                .approximation_by_name(p)
                .expect("parameter belongs to the context")
                .into_iter()
                .map(str::to_owned)
                .collect();
            (p.clone(), elems)
        })
        .collect()
}

/// Builds the soft set a model denotes.
pub fn set_of_model(ctx: &Context, model: &Model) -> SoftSet {
    SoftSet::from_approximations(ctx, model.iter().map(|(p, es)| (p.as_str(), es.iter().map(String::as_str))))
        .expect("model names come from the context")
}

pub fn model_union(a: &Model, b: &Model) -> Model {
    a.iter()
        .map(|(p, es)| (p.clone(), es.union(&b[p]).cloned().collect()))
        .collect()
}

pub fn model_intersection(a: &Model, b: &Model) -> Model {
    a.iter()
        .map(|(p, es)| (p.clone(), es.intersection(&b[p]).cloned().collect()))
        .collect()
}

pub fn model_complement(ctx: &Context, a: &Model) -> Model {
    let universe: BTreeSet<String> = ctx.universe().iter().cloned().collect();
    a.iter()
        .map(|(p, es)| (p.clone(), universe.difference(es).cloned().collect()))
        .collect()
}

pub fn model_is_subset(a: &Model, b: &Model) -> bool {
    a.iter().all(|(p, es)| es.is_subset(&b[p]))
}

fn powerset(names: &[String]) -> Vec<BTreeSet<String>> {
    let mut out = Vec::with_capacity(1 << names.len());
    for mask in 0u32..(1 << names.len()) {
        out.push(
            names
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, n)| n.clone())
                .collect(),
        );
    }
    out
}

/// The whole soft-set algebra of a tiny context, tabulated from the naive
/// model: every soft set, the union/intersection/complement tables and the
/// subset relation. Families are bitmasks over the set list.
pub struct SetAlgebra {
    ctx: Context,
    sets: Vec<SoftSet>,
    models: Vec<Model>,
    index: BTreeMap<Model, usize>,
    union: Vec<Vec<usize>>,
    inter: Vec<Vec<usize>>,
    subset: Vec<Vec<bool>>,
    null_index: usize,
    absolute_index: usize,
    topologies: OnceLock<Vec<u64>>,
}

impl SetAlgebra {
    /// Tabulates a context with at most 6 membership bits (64 soft sets).
    pub fn new(ctx: &Context) -> SetAlgebra {
        assert!(ctx.bit_count() <= 6, "SetAlgebra is for desk-scale contexts");
        // every assignment of a universe subset to every parameter
        let mut models: Vec<Model> = vec![Model::new()];
        for p in ctx.parameters() {
            let mut next = Vec::new();
            for model in &models {
                for subset in powerset(ctx.universe()) {
                    let mut extended = model.clone();
                    extended.insert(p.clone(), subset);
                    next.push(extended);
                }
            }
            models = next;
        }
        let index: BTreeMap<Model, usize> =
            models.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let sets: Vec<SoftSet> = models.iter().map(|m| set_of_model(ctx, m)).collect();
        let n = models.len();
        let mut union = vec![vec![0; n]; n];
        let mut inter = vec![vec![0; n]; n];
        let mut subset = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                union[i][j] = index[&model_union(&models[i], &models[j])];
                inter[i][j] = index[&model_intersection(&models[i], &models[j])];
                subset[i][j] = model_is_subset(&models[i], &models[j]);
            }
        }
        let null_index = index[&model_of(&SoftSet::null(ctx))];
        let absolute_index = index[&model_of(&SoftSet::absolute(ctx))];
        SetAlgebra {
            ctx: ctx.clone(),
            sets,
            models,
            index,
            union,
            inter,
            subset,
            null_index,
            absolute_index,
            topologies: OnceLock::new(),
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[SoftSet] {
        &self.sets
    }

    pub fn index_of(&self, set: &SoftSet) -> usize {
        self.index[&model_of(set)]
    }

    pub fn complement_index(&self, i: usize) -> usize {
        self.index[&model_complement(&self.ctx, &self.models[i])]
    }

    pub fn is_subset_index(&self, i: usize, j: usize) -> bool {
        self.subset[i][j]
    }

    /// Checks the topology axioms on a family bitmask by exhaustive pairs.
    pub fn is_topology_mask(&self, mask: u64) -> bool {
        if mask >> self.null_index & 1 == 0 || mask >> self.absolute_index & 1 == 0 {
            return false;
        }
        let members: Vec<usize> = (0..self.sets.len()).filter(|i| mask >> i & 1 == 1).collect();
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k..] {
                if mask >> self.union[i][j] & 1 == 0 || mask >> self.inter[i][j] & 1 == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Every topology on the context, as family bitmasks, enumerated once
    /// and cached. Needs at most 16 soft sets (4 membership bits).
    pub fn topologies(&self) -> &[u64] {
        self.topologies.get_or_init(|| {
            assert!(
                self.sets.len() <= 16,
                "family enumeration is for contexts with at most 4 bits"
            );
            (0u64..1 << self.sets.len())
                .filter(|&mask| self.is_topology_mask(mask))
                .collect()
        })
    }

    /// The intersection of all enumerated topologies containing the subbase:
    /// the smallest topology containing it.
    pub fn minimal_topology_containing(&self, subbase_mask: u64) -> u64 {
        self.topologies()
            .iter()
            .filter(|&&t| subbase_mask & !t == 0)
            .fold(!0u64, |acc, &t| acc & t)
    }

    pub fn mask_of_family<'a>(&self, family: impl IntoIterator<Item = &'a SoftSet>) -> u64 {
        family
            .into_iter()
            .fold(0u64, |mask, s| mask | 1 << self.index_of(s))
    }

    pub fn family_of_mask(&self, mask: u64) -> Vec<SoftSet> {
        let mut family: Vec<SoftSet> = (0..self.sets.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.sets[i].clone())
            .collect();
        family.sort();
        family
    }

    /// Smallest soft closed superset of set `i` in the topology `mask`:
    /// the intersection of all closed supersets, folded via the tables.
    pub fn smallest_closed_superset(&self, mask: u64, i: usize) -> usize {
        let mut acc = self.absolute_index;
        for open in (0..self.sets.len()).filter(|k| mask >> k & 1 == 1) {
            let closed = self.complement_index(open);
            if self.subset[i][closed] {
                acc = self.inter[acc][closed];
            }
        }
        acc
    }
}

/// All soft sets of a context enumerated through name powersets, without
/// touching the packed representation.
pub fn all_soft_sets_naive(ctx: &Context) -> Vec<SoftSet> {
    let algebra = SetAlgebra::new(ctx);
    let mut sets = algebra.sets
        .clone();
    sets.sort();
    sets
}
