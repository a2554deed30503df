//! Soft topologies over a context: axiom verification, generation from a
//! subbase, closed sets and closure, neighbourhoods, comparison and
//! subspaces.
//!
//! Families are finite, so closure under binary union and intersection is
//! equivalent to the axioms quantifying over arbitrary subfamilies; the
//! checker works with the binary forms.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::point::SoftPoint;
use crate::set::{all_soft_sets, SoftSet};

/// The four axioms a family must satisfy to be a soft topology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    ContainsNull,
    ContainsAbsolute,
    BinaryIntersection,
    BinaryUnion,
}

impl Axiom {
    /// Stable machine name used in reports.
    pub fn name(self) -> &'static str {
        match self {
            Axiom::ContainsNull => "contains_null",
            Axiom::ContainsAbsolute => "contains_absolute",
            Axiom::BinaryIntersection => "binary_intersection",
            Axiom::BinaryUnion => "binary_union",
        }
    }
}

/// First violated axiom together with the witnessing sets.
///
/// For the closure axioms `witnesses` holds the offending pair and `missing`
/// the set that the family fails to contain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witnesses: Vec<SoftSet>,
    pub missing: Option<SoftSet>,
}

impl core::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self.axiom {
            Axiom::ContainsNull => write!(f, "the null soft set is missing"),
            Axiom::ContainsAbsolute => write!(f, "the absolute soft set is missing"),
            Axiom::BinaryIntersection => write!(
                f,
                "intersection of {} and {} is missing",
                self.witnesses[0], self.witnesses[1]
            ),
            Axiom::BinaryUnion => write!(
                f,
                "union of {} and {} is missing",
                self.witnesses[0], self.witnesses[1]
            ),
        }
    }
}

/// Outcome of an axiom check: `ok()` or the first violation found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyVerdict {
    pub violation: Option<AxiomViolation>,
}

impl TopologyVerdict {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the soft topology axioms for a family over `ctx`.
pub fn is_topology(ctx: &Context, family: &[SoftSet]) -> Result<TopologyVerdict> {
    for s in family {
        ctx.check_same(s.context())?;
    }
    let opens: BTreeSet<&SoftSet> = family.iter().collect();
    let null = SoftSet::null(ctx);
    let absolute = SoftSet::absolute(ctx);
    if !opens.contains(&null) {
        return Ok(TopologyVerdict {
            violation: Some(AxiomViolation {
                axiom: Axiom::ContainsNull,
                witnesses: Vec::new(),
                missing: Some(null),
            }),
        });
    }
    if !opens.contains(&absolute) {
        return Ok(TopologyVerdict {
            violation: Some(AxiomViolation {
                axiom: Axiom::ContainsAbsolute,
                witnesses: Vec::new(),
                missing: Some(absolute),
            }),
        });
    }
    let list: Vec<&SoftSet> = opens.iter().copied().collect();
    for (i, &f) in list.iter().enumerate() {
        for &g in &list[i + 1..] {
            let inter = f.intersection(g)?;
            if !opens.contains(&inter) {
                return Ok(TopologyVerdict {
                    violation: Some(AxiomViolation {
                        axiom: Axiom::BinaryIntersection,
                        witnesses: alloc::vec![f.clone(), g.clone()],
                        missing: Some(inter),
                    }),
                });
            }
            let uni = f.union(g)?;
            if !opens.contains(&uni) {
                return Ok(TopologyVerdict {
                    violation: Some(AxiomViolation {
                        axiom: Axiom::BinaryUnion,
                        witnesses: alloc::vec![f.clone(), g.clone()],
                        missing: Some(uni),
                    }),
                });
            }
        }
    }
    Ok(TopologyVerdict { violation: None })
}

/// How one topology's opens family relates to another's by inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TopologyOrder {
    Equal,
    /// The left topology strictly contains the right one.
    Finer,
    /// The left topology is strictly contained in the right one.
    Coarser,
    Incomparable,
}

/// A soft topology: a deduplicated family of soft sets in canonical
/// bitstring order satisfying the axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoftTopology {
    ctx: Context,
    opens: Vec<SoftSet>,
}

impl SoftTopology {
    /// Validates the axioms and builds the topology.
    pub fn new(ctx: &Context, family: Vec<SoftSet>) -> Result<Self> {
        let verdict = is_topology(ctx, &family)?;
        if let Some(violation) = verdict.violation {
            return Err(Error::NotATopology(alloc::boxed::Box::new(violation)));
        }
        Ok(Self::from_opens_unchecked(ctx, family))
    }

    /// Deduplicates and sorts without re-verifying the axioms. Callers must
    /// guarantee the family is already closed.
    pub(crate) fn from_opens_unchecked(ctx: &Context, family: Vec<SoftSet>) -> Self {
        let mut opens: Vec<SoftSet> = family;
        opens.sort();
        opens.dedup();
        SoftTopology { ctx: ctx.clone(), opens }
    }

    /// `{null, absolute}`.
    pub fn indiscrete(ctx: &Context) -> Self {
        Self::from_opens_unchecked(
            ctx,
            alloc::vec![SoftSet::null(ctx), SoftSet::absolute(ctx)],
        )
    }

    /// All `2^(|U|*|E|)` soft sets.
    pub fn discrete(ctx: &Context) -> Result<Self> {
        Ok(Self::from_opens_unchecked(ctx, all_soft_sets(ctx)?))
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn opens(&self) -> &[SoftSet] {
        &self.opens
    }

    pub fn open_count(&self) -> usize {
        self.opens.len()
    }

    /// Whether the set is soft open, i.e. a member of the family.
    pub fn contains_open(&self, set: &SoftSet) -> bool {
        self.opens.binary_search(set).is_ok()
    }

    /// The family of soft closed sets, in canonical order.
    pub fn closed_sets(&self) -> Vec<SoftSet> {
        let mut closed: Vec<SoftSet> = self.opens.iter().map(SoftSet::complement).collect();
        closed.sort();
        closed
    }

    /// Whether the set's complement is soft open.
    pub fn is_closed(&self, set: &SoftSet) -> Result<bool> {
        self.ctx.check_same(set.context())?;
        Ok(self.contains_open(&set.complement()))
    }

    /// Soft closure: the soft intersection of all soft closed sets
    /// containing `set`. The absolute soft set is always closed, so the
    /// intersection is over a nonempty family.
    pub fn closure(&self, set: &SoftSet) -> Result<SoftSet> {
        self.ctx.check_same(set.context())?;
        let mut acc = SoftSet::absolute(&self.ctx);
        for open in &self.opens {
            let closed = open.complement();
            if set.is_subset_of(&closed)? {
                acc = acc.intersection(&closed)?;
            }
        }
        Ok(acc)
    }

    /// Whether `neighbourhood` contains some soft open set that soft
    /// contains the point.
    pub fn is_neighbourhood(&self, neighbourhood: &SoftSet, point: &SoftPoint) -> Result<bool> {
        self.ctx.check_same(neighbourhood.context())?;
        self.ctx.check_same(point.context())?;
        for open in &self.opens {
            if open.contains_point(point)? && open.is_subset_of(neighbourhood)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Inclusion comparison of the opens families: `Finer` means `self`
    /// strictly contains `other`.
    pub fn compare(&self, other: &SoftTopology) -> Result<TopologyOrder> {
        self.ctx.check_same(&other.ctx)?;
        let contains_other = other.opens.iter().all(|o| self.contains_open(o));
        let contained = self.opens.iter().all(|o| other.contains_open(o));
        Ok(match (contains_other, contained) {
            (true, true) => TopologyOrder::Equal,
            (true, false) => TopologyOrder::Finer,
            (false, true) => TopologyOrder::Coarser,
            (false, false) => TopologyOrder::Incomparable,
        })
    }

    /// Whether every open is a soft union of a subfamily of `base`
    /// (the empty subfamily yields the null soft set).
    pub fn is_base(&self, base: &[SoftSet]) -> Result<bool> {
        for b in base {
            self.ctx.check_same(b.context())?;
            if !self.contains_open(b) {
                return Err(Error::NotOpen);
            }
        }
        for open in &self.opens {
            let mut acc = SoftSet::null(&self.ctx);
            for b in base {
                if b.is_subset_of(open)? {
                    acc = acc.union(b)?;
                }
            }
            if &acc != open {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the finite intersections of `subbase` form a base,
    /// equivalently whether `subbase` regenerates this topology.
    pub fn is_subbase(&self, subbase: &[SoftSet]) -> Result<bool> {
        for s in subbase {
            self.ctx.check_same(s.context())?;
            if !self.contains_open(s) {
                return Err(Error::NotOpen);
            }
        }
        let generated = generate_from_subbase(&self.ctx, subbase)?;
        Ok(generated == *self)
    }

    /// Trace topology on a sub-universe and sub-parameter-set.
    ///
    /// The sub-context inherits the parent's canonical ordering; each open's
    /// trace keeps, per retained parameter, the approximation intersected
    /// with the retained elements.
    pub fn subspace<E, P>(&self, elements: &[E], parameters: &[P]) -> Result<(Context, SoftTopology)>
    where
        E: AsRef<str>,
        P: AsRef<str>,
    {
        if parameters.is_empty() {
            return Err(Error::EmptySubspaceParameters);
        }
        let mut elem_indices = BTreeSet::new();
        for e in elements {
            elem_indices.insert(self.ctx.require_element(e.as_ref())?);
        }
        let mut param_indices = BTreeSet::new();
        for p in parameters {
            param_indices.insert(self.ctx.require_parameter(p.as_ref())?);
        }
        let elem_indices: Vec<usize> = elem_indices.into_iter().collect();
        let param_indices: Vec<usize> = param_indices.into_iter().collect();
        let sub_ctx = Context::new(
            elem_indices.iter().map(|&x| self.ctx.element_name(x)),
            param_indices.iter().map(|&p| self.ctx.parameter_name(p)),
        )?;
        let mut traces = Vec::with_capacity(self.opens.len());
        for open in &self.opens {
            let mut bits = crate::bits::Bits::zeros(sub_ctx.bit_count());
            for (sp, &pp) in param_indices.iter().enumerate() {
                for (sx, &px) in elem_indices.iter().enumerate() {
                    if open.contains(pp, px) {
                        bits.set(sub_ctx.bit_index(sp, sx), true);
                    }
                }
            }
            traces.push(SoftSet::from_bits(&sub_ctx, bits));
        }
        // traces of a closed family stay closed: tracing commutes with the
        // per-parameter set operations
        let topo = SoftTopology::from_opens_unchecked(&sub_ctx, traces);
        Ok((sub_ctx, topo))
    }
}

/// Smallest soft topology containing `subbase`.
///
/// Adjoins the null and absolute soft sets, closes under binary soft
/// intersection to a fixpoint, then under binary soft union to a fixpoint.
/// Intersection distributes over union, so the result is closed under both.
pub fn generate_from_subbase(ctx: &Context, subbase: &[SoftSet]) -> Result<SoftTopology> {
    generate_from_subbase_bounded(ctx, subbase, usize::MAX)
}

/// [`generate_from_subbase`] with a cap on the number of opens; exceeding it
/// aborts with a budget error.
pub fn generate_from_subbase_bounded(
    ctx: &Context,
    subbase: &[SoftSet],
    max_opens: usize,
) -> Result<SoftTopology> {
    for s in subbase {
        ctx.check_same(s.context())?;
    }
    let mut family: Vec<SoftSet> = alloc::vec![SoftSet::null(ctx), SoftSet::absolute(ctx)];
    family.extend(subbase.iter().cloned());
    family.sort();
    family.dedup();
    close_under(&mut family, |a, b| a.intersection(b), max_opens)?;
    close_under(&mut family, |a, b| a.union(b), max_opens)?;
    Ok(SoftTopology::from_opens_unchecked(ctx, family))
}

/// Closes `family` under a commutative binary operation, visiting every
/// unordered pair exactly once.
fn close_under(
    family: &mut Vec<SoftSet>,
    op: impl Fn(&SoftSet, &SoftSet) -> Result<SoftSet>,
    cap: usize,
) -> Result<()> {
    let mut seen: BTreeSet<SoftSet> = family.iter().cloned().collect();
    if seen.len() > cap {
        return Err(Error::BudgetExceeded {
            what: "opens in generated topology",
            actual: seen.len(),
            limit: cap,
        });
    }
    let mut frontier_start = 0;
    loop {
        let frontier_end = family.len();
        if frontier_start == frontier_end {
            break;
        }
        for i in frontier_start..frontier_end {
            for j in 0..=i {
                let combined = op(&family[i], &family[j])?;
                if seen.insert(combined.clone()) {
                    family.push(combined);
                    if seen.len() > cap {
                        return Err(Error::BudgetExceeded {
                            what: "opens in generated topology",
                            actual: seen.len(),
                            limit: cap,
                        });
                    }
                }
            }
        }
        frontier_start = frontier_end;
    }
    Ok(())
}
