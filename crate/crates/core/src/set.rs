//! Soft sets over a context and the soft-set algebra.
//!
//! A soft set attaches to every parameter an approximation, a subset of the
//! universe. It is stored as a packed membership matrix in the canonical
//! parameter-major layout, so soft equality coincides with bitstring equality
//! and all lattice operations are word-parallel.

use alloc::string::String;
use alloc::vec::Vec;

use crate::bits::Bits;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::point::SoftPoint;

/// A soft set: one approximation (subset of the universe) per parameter.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SoftSet {
    ctx: Context,
    bits: Bits,
}

impl SoftSet {
    /// The null soft set: every approximation empty.
    pub fn null(ctx: &Context) -> Self {
        SoftSet { ctx: ctx.clone(), bits: Bits::zeros(ctx.bit_count()) }
    }

    /// The absolute soft set: every approximation equals the universe.
    pub fn absolute(ctx: &Context) -> Self {
        SoftSet { ctx: ctx.clone(), bits: Bits::ones(ctx.bit_count()) }
    }

    /// Builds a soft set from named approximations. Parameters that are not
    /// named get the empty approximation.
    pub fn from_approximations<I, P, ES, E>(ctx: &Context, approximations: I) -> Result<Self>
    where
        I: IntoIterator<Item = (P, ES)>,
        P: AsRef<str>,
        ES: IntoIterator<Item = E>,
        E: AsRef<str>,
    {
        let mut set = SoftSet::null(ctx);
        for (param, elems) in approximations {
            let p = ctx.require_parameter(param.as_ref())?;
            for elem in elems {
                let x = ctx.require_element(elem.as_ref())?;
                set.bits.set(ctx.bit_index(p, x), true);
            }
        }
        Ok(set)
    }

    pub(crate) fn from_bits(ctx: &Context, bits: Bits) -> Self {
        debug_assert_eq!(bits.len(), ctx.bit_count());
        SoftSet { ctx: ctx.clone(), bits }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// Membership of element `element` in the approximation at `parameter`
    /// (both by index).
    pub fn contains(&self, parameter: usize, element: usize) -> bool {
        self.bits.get(self.ctx.bit_index(parameter, element))
    }

    /// The approximation at a parameter index, as element indices.
    pub fn approximation(&self, parameter: usize) -> Vec<usize> {
        (0..self.ctx.element_count())
            .filter(|&x| self.contains(parameter, x))
            .collect()
    }

    /// The approximation at a named parameter, as element names.
    pub fn approximation_by_name(&self, parameter: &str) -> Result<Vec<&str>> {
        let p = self.ctx.require_parameter(parameter)?;
        Ok(self
            .approximation(p)
            .into_iter()
            .map(|x| self.ctx.element_name(x))
            .collect())
    }

    /// Canonical parameter-major bitstring of `'0'`/`'1'`, the form used for
    /// hashing and diffs.
    pub fn bitstring(&self) -> String {
        self.bits.to_bitstring()
    }

    pub fn is_null(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn is_absolute(&self) -> bool {
        self.bits.count_ones() == self.ctx.bit_count()
    }

    /// Number of (parameter, element) memberships.
    pub fn membership_count(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn complement(&self) -> SoftSet {
        SoftSet { ctx: self.ctx.clone(), bits: self.bits.complement() }
    }

    pub fn union(&self, other: &SoftSet) -> Result<SoftSet> {
        self.ctx.check_same(&other.ctx)?;
        Ok(SoftSet { ctx: self.ctx.clone(), bits: self.bits.union(&other.bits) })
    }

    pub fn intersection(&self, other: &SoftSet) -> Result<SoftSet> {
        self.ctx.check_same(&other.ctx)?;
        Ok(SoftSet { ctx: self.ctx.clone(), bits: self.bits.intersection(&other.bits) })
    }

    /// Soft difference: per-parameter set difference.
    pub fn difference(&self, other: &SoftSet) -> Result<SoftSet> {
        self.ctx.check_same(&other.ctx)?;
        Ok(SoftSet { ctx: self.ctx.clone(), bits: self.bits.difference(&other.bits) })
    }

    /// Soft subset: every approximation of `self` is contained in the
    /// corresponding approximation of `other`.
    pub fn is_subset_of(&self, other: &SoftSet) -> Result<bool> {
        self.ctx.check_same(&other.ctx)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    /// Soft disjoint: the soft intersection is the null soft set.
    pub fn is_disjoint_from(&self, other: &SoftSet) -> Result<bool> {
        self.ctx.check_same(&other.ctx)?;
        Ok(self.bits.is_disjoint(&other.bits))
    }

    /// Whether the soft point soft-belongs to this set, i.e. the point's
    /// element lies in the approximation at the point's parameter.
    pub fn contains_point(&self, point: &SoftPoint) -> Result<bool> {
        self.ctx.check_same(point.context())?;
        Ok(self.contains(point.parameter_index(), point.element_index()))
    }

    /// The soft points soft-belonging to this set, in canonical order.
    pub fn points(&self) -> Vec<SoftPoint> {
        let n = self.ctx.element_count();
        if n == 0 {
            return Vec::new();
        }
        self.bits
            .iter_ones()
            .map(|bit| SoftPoint::from_indices(&self.ctx, bit % n, bit / n).expect("bit in range"))
            .collect()
    }

    pub(crate) fn cmp_canonical(&self, other: &SoftSet) -> core::cmp::Ordering {
        self.bits
            .len()
            .cmp(&other.bits.len())
            .then_with(|| self.bits.cmp_lex(&other.bits))
            .then_with(|| self.ctx.cmp(&other.ctx))
    }
}

impl PartialOrd for SoftSet {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: bitstring length, then lexicographic bitstring, then
/// context. Within one context this is exactly bitstring order.
impl Ord for SoftSet {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.cmp_canonical(other)
    }
}

impl core::fmt::Debug for SoftSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "SoftSet{}", self)
    }
}

/// Compact canonical text: `{e:{a,b}, f:{a}}` with empty approximations
/// omitted; the null soft set prints as `{}`.
impl core::fmt::Display for SoftSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for p in 0..self.ctx.parameter_count() {
            let approx = self.approximation(p);
            if approx.is_empty() {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}:{{", self.ctx.parameter_name(p))?;
            for (i, x) in approx.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.ctx.element_name(*x))?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Soft union of a nonempty family.
pub fn soft_union<'a, I>(family: I) -> Result<SoftSet>
where
    I: IntoIterator<Item = &'a SoftSet>,
{
    fold_family(family, |acc, s| acc.union(s))
}

/// Soft intersection of a nonempty family.
pub fn soft_intersection<'a, I>(family: I) -> Result<SoftSet>
where
    I: IntoIterator<Item = &'a SoftSet>,
{
    fold_family(family, |acc, s| acc.intersection(s))
}

fn fold_family<'a, I, F>(family: I, op: F) -> Result<SoftSet>
where
    I: IntoIterator<Item = &'a SoftSet>,
    F: Fn(&SoftSet, &SoftSet) -> Result<SoftSet>,
{
    let mut iter = family.into_iter();
    let first = iter.next().ok_or(Error::EmptyFamily)?;
    let mut acc = first.clone();
    for s in iter {
        acc = op(&acc, s)?;
    }
    Ok(acc)
}

/// Every soft set over the context, in canonical bitstring order.
///
/// There are `2^(|U|*|E|)` of them; enumeration is refused beyond
/// `MAX_ENUMERATION_BITS` to keep desk-scale use honest.
pub fn all_soft_sets(ctx: &Context) -> Result<Vec<SoftSet>> {
    const MAX_ENUMERATION_BITS: usize = 20;
    let bits = ctx.bit_count();
    if bits > MAX_ENUMERATION_BITS {
        return Err(Error::BudgetExceeded {
            what: "soft set enumeration bits",
            actual: bits,
            limit: MAX_ENUMERATION_BITS,
        });
    }
    let mut out = Vec::with_capacity(1usize << bits);
    for code in 0u64..(1u64 << bits) {
        let mut b = Bits::zeros(bits);
        for i in 0..bits {
            if code >> i & 1 == 1 {
                b.set(i, true);
            }
        }
        out.push(SoftSet::from_bits(ctx, b));
    }
    out.sort();
    Ok(out)
}
