//! Separation predicates for families of soft mappings and the
//! embedding-lemma instance checker.
//!
//! A family separates soft points when some member sends any two distinct
//! soft points to distinct image points; it separates soft points from soft
//! closed sets when for every soft closed set and every soft point outside
//! it, some member keeps the image point out of the closure of the image of
//! the closed set. The checker evaluates both hypotheses plus continuity,
//! builds the diagonal into the product space and tests whether it embeds.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::mapping::{ContinuityVerdict, EmbeddingVerdict, SoftMapping};
use crate::point::{enumerate_soft_points, SoftPoint};
use crate::product::{diagonal_mapping, product_topology_bounded, ProductContext};
use crate::set::SoftSet;
use crate::topology::{generate_from_subbase_bounded, SoftTopology};

/// Verdict of the point-separation predicate; the witness is a pair of
/// distinct soft points every mapping sends to equal image points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSeparationVerdict {
    pub witness: Option<(SoftPoint, SoftPoint)>,
}

impl PointSeparationVerdict {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

/// Whether the family distinguishes every pair of distinct soft points of
/// the source context.
pub fn separates_points(
    source: &Context,
    maps: &[SoftMapping],
) -> Result<PointSeparationVerdict> {
    for m in maps {
        source.check_same(m.source())?;
    }
    let points = enumerate_soft_points(source);
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let mut separated = false;
            for m in maps {
                if m.image_of_point(p)? != m.image_of_point(q)? {
                    separated = true;
                    break;
                }
            }
            if !separated {
                return Ok(PointSeparationVerdict { witness: Some((p.clone(), q.clone())) });
            }
        }
    }
    Ok(PointSeparationVerdict { witness: None })
}

/// Re-checks a point-separation witness: the points must be distinct and
/// every mapping must identify them.
pub fn verify_point_separation_witness(
    maps: &[SoftMapping],
    witness: &(SoftPoint, SoftPoint),
) -> Result<bool> {
    let (p, q) = witness;
    if p == q {
        return Ok(false);
    }
    for m in maps {
        if m.image_of_point(p)? != m.image_of_point(q)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verdict of the closed-separation predicate; the witness is a soft closed
/// set and a soft point outside it whose images no mapping separates from
/// the closure of the image of the closed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSeparationVerdict {
    pub witness: Option<(SoftSet, SoftPoint)>,
}

impl ClosedSeparationVerdict {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

/// Whether the family separates soft points from soft closed sets: for every
/// soft closed set `C` and soft point in the complement of `C`, some mapping
/// keeps the image point out of the closure of the image of `C`.
pub fn separates_points_from_closed(
    source: &SoftTopology,
    spaces: &[SoftTopology],
    maps: &[SoftMapping],
) -> Result<ClosedSeparationVerdict> {
    check_family(source, spaces, maps)?;
    for closed in source.closed_sets() {
        let outside = closed.complement();
        let points = outside.points();
        if points.is_empty() {
            continue;
        }
        // closures of the images of this closed set, one per mapping
        let mut image_closures = Vec::with_capacity(maps.len());
        for (m, space) in maps.iter().zip(spaces.iter()) {
            image_closures.push(space.closure(&m.image(&closed)?)?);
        }
        for point in points {
            let mut separated = false;
            for (m, closure) in maps.iter().zip(image_closures.iter()) {
                if !m.image_of_point(&point)?.is_in(closure)? {
                    separated = true;
                    break;
                }
            }
            if !separated {
                return Ok(ClosedSeparationVerdict { witness: Some((closed, point)) });
            }
        }
    }
    Ok(ClosedSeparationVerdict { witness: None })
}

/// Re-checks a closed-separation witness against the predicate it falsifies.
pub fn verify_closed_separation_witness(
    source: &SoftTopology,
    spaces: &[SoftTopology],
    maps: &[SoftMapping],
    witness: &(SoftSet, SoftPoint),
) -> Result<bool> {
    check_family(source, spaces, maps)?;
    let (closed, point) = witness;
    if !source.is_closed(closed)? {
        return Ok(false);
    }
    if !point.is_in(&closed.complement())? {
        return Ok(false);
    }
    for (m, space) in maps.iter().zip(spaces.iter()) {
        let closure = space.closure(&m.image(closed)?)?;
        if !m.image_of_point(point)?.is_in(&closure)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_family(
    source: &SoftTopology,
    spaces: &[SoftTopology],
    maps: &[SoftMapping],
) -> Result<()> {
    if spaces.len() != maps.len() {
        return Err(Error::ArityMismatch { expected: spaces.len(), got: maps.len() });
    }
    for (m, space) in maps.iter().zip(spaces.iter()) {
        source.context().check_same(m.source())?;
        space.context().check_same(m.target())?;
    }
    Ok(())
}

/// Full record of one embedding-lemma instance: the three hypotheses, the
/// diagonal and the conclusion.
#[derive(Clone, Debug)]
pub struct SeparationReport {
    /// Per-mapping continuity verdicts, in family order.
    pub continuity: Vec<ContinuityVerdict>,
    pub separates_points: PointSeparationVerdict,
    pub separates_from_closed: ClosedSeparationVerdict,
    /// The diagonal mapping into the product context.
    pub diagonal: SoftMapping,
    /// The product of the target contexts, with its factor list.
    pub product: ProductContext,
    /// The product space the diagonal maps into.
    pub product_space: SoftTopology,
    pub embedding: EmbeddingVerdict,
}

impl SeparationReport {
    pub fn product_open_count(&self) -> usize {
        self.product_space.open_count()
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.continuity.iter().all(ContinuityVerdict::ok)
            && self.separates_points.ok()
            && self.separates_from_closed.ok()
    }

    pub fn conclusion_holds(&self) -> bool {
        self.embedding.ok()
    }

    /// Hypotheses hold but the diagonal does not embed. Any such instance is
    /// a counterexample to the lemma.
    pub fn is_violation(&self) -> bool {
        self.hypotheses_hold() && !self.conclusion_holds()
    }
}

/// Evaluates one embedding-lemma instance: every hypothesis, then the
/// diagonal into the product of `spaces` with the product topology, then the
/// embedding conclusion. The product is subject to `budget`.
pub fn check_embedding_lemma(
    source: &SoftTopology,
    spaces: &[SoftTopology],
    maps: &[SoftMapping],
    budget: &Budget,
) -> Result<SeparationReport> {
    check_family(source, spaces, maps)?;
    if maps.is_empty() {
        return Err(Error::EmptyFactorList);
    }

    let mut continuity = Vec::with_capacity(maps.len());
    for (m, space) in maps.iter().zip(spaces.iter()) {
        continuity.push(m.is_continuous(source, space)?);
    }
    let separates = separates_points(source.context(), maps)?;
    let separates_closed = separates_points_from_closed(source, spaces, maps)?;

    let mut universe_size: usize = 1;
    let mut parameter_size: usize = 1;
    for space in spaces {
        universe_size = universe_size
            .checked_mul(space.context().element_count())
            .ok_or(Error::BudgetExceeded {
                what: "product universe size",
                actual: usize::MAX,
                limit: budget.max_set_bits,
            })?;
        parameter_size = parameter_size
            .checked_mul(space.context().parameter_count())
            .ok_or(Error::BudgetExceeded {
                what: "product parameter size",
                actual: usize::MAX,
                limit: budget.max_set_bits,
            })?;
    }
    let product_bits = universe_size.saturating_mul(parameter_size);
    if product_bits > budget.max_set_bits {
        return Err(Error::BudgetExceeded {
            what: "product soft set bits",
            actual: product_bits,
            limit: budget.max_set_bits,
        });
    }

    let (product, product_space) = product_topology_bounded(spaces, budget.max_opens)?;
    let diagonal = diagonal_mapping(maps, &product)?;
    let embedding = diagonal.is_embedding(source, &product_space)?;

    Ok(SeparationReport {
        continuity,
        separates_points: separates,
        separates_from_closed: separates_closed,
        diagonal,
        product,
        product_space,
        embedding,
    })
}

/// One randomized lemma instance: a source space, target spaces and the
/// family of mappings between them.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub space: SoftTopology,
    pub spaces: Vec<SoftTopology>,
    pub maps: Vec<SoftMapping>,
}

/// Builds a deterministic random instance within the budget. The same seed
/// always produces the same instance.
pub fn random_instance(seed: u64, budget: &Budget) -> Result<RandomInstance> {
    budget.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let src_ctx = random_context(&mut rng, budget, "x", "a");
    let space = random_topology(&mut rng, &src_ctx, budget);

    // Sample factor shapes until the product fits the bit budget; a single
    // one-by-one factor always fits, so the loop terminates.
    let mut shapes: Vec<(usize, usize)> = Vec::new();
    for attempt in 0..64 {
        let n = rng.gen_range(1..=budget.max_factors);
        let candidate: Vec<(usize, usize)> =
            (0..n).map(|_| random_shape(&mut rng, budget)).collect();
        let universe: usize = candidate.iter().map(|s| s.0).product();
        let parameters: usize = candidate.iter().map(|s| s.1).product();
        if universe * parameters <= budget.max_set_bits || attempt == 63 {
            shapes = candidate;
            break;
        }
    }
    let total_bits: usize =
        shapes.iter().map(|s| s.0).product::<usize>() * shapes.iter().map(|s| s.1).product::<usize>();
    if total_bits > budget.max_set_bits {
        shapes = alloc::vec![(1, 1)];
    }

    let mut spaces = Vec::with_capacity(shapes.len());
    let mut maps = Vec::with_capacity(shapes.len());
    for (i, &(nu, ne)) in shapes.iter().enumerate() {
        let ctx = named_context(nu, ne, &alloc::format!("u{i}_"), &alloc::format!("d{i}_"));
        let topology = random_topology(&mut rng, &ctx, budget);
        let elem_map = (0..src_ctx.element_count()).map(|_| rng.gen_range(0..nu)).collect();
        let param_map = (0..src_ctx.parameter_count()).map(|_| rng.gen_range(0..ne)).collect();
        let map = SoftMapping::from_index_tables(&src_ctx, &ctx, elem_map, param_map)?;
        spaces.push(topology);
        maps.push(map);
    }

    Ok(RandomInstance { space, spaces, maps })
}

fn random_shape(rng: &mut ChaCha8Rng, budget: &Budget) -> (usize, usize) {
    let nu = rng.gen_range(1..=budget.max_universe.min(budget.max_set_bits));
    let max_ne = budget.max_parameters.min(budget.max_set_bits / nu).max(1);
    let ne = rng.gen_range(1..=max_ne);
    (nu, ne)
}

fn named_context(nu: usize, ne: usize, elem_prefix: &str, param_prefix: &str) -> Context {
    Context::new(
        (0..nu).map(|i| alloc::format!("{elem_prefix}{i}")),
        (0..ne).map(|i| alloc::format!("{param_prefix}{i}")),
    )
    .expect("generated names are unique and parameters nonempty")
}

fn random_context(rng: &mut ChaCha8Rng, budget: &Budget, ep: &str, pp: &str) -> Context {
    let (nu, ne) = random_shape(rng, budget);
    named_context(nu, ne, ep, pp)
}

/// Generates a topology from a random subbase, shrinking the subbase when
/// the generated family would exceed the opens budget.
fn random_topology(rng: &mut ChaCha8Rng, ctx: &Context, budget: &Budget) -> SoftTopology {
    let count = rng.gen_range(0..=budget.max_subbase);
    let mut subbase: Vec<SoftSet> = (0..count).map(|_| random_set(rng, ctx)).collect();
    loop {
        match generate_from_subbase_bounded(ctx, &subbase, budget.max_opens) {
            Ok(t) => return t,
            Err(_) => {
                subbase.pop();
            }
        }
    }
}

fn random_set(rng: &mut ChaCha8Rng, ctx: &Context) -> SoftSet {
    let mut bits = crate::bits::Bits::zeros(ctx.bit_count());
    for i in 0..ctx.bit_count() {
        if rng.gen_bool(0.5) {
            bits.set(i, true);
        }
    }
    SoftSet::from_bits(ctx, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::is_topology;
    use alloc::vec;

    fn ctx21() -> Context {
        Context::new(["a", "b"], ["e"]).unwrap()
    }

    fn ctx22() -> Context {
        Context::new(["a", "b"], ["e", "f"]).unwrap()
    }

    #[test]
    fn identity_family_separates_points() {
        let ctx = ctx22();
        let id = SoftMapping::identity(&ctx);
        let verdict = separates_points(&ctx, core::slice::from_ref(&id)).unwrap();
        assert!(verdict.ok());
    }

    #[test]
    fn constant_family_fails_with_verified_witness() {
        let ctx = ctx21();
        let tgt = Context::new(["u"], ["d"]).unwrap();
        let constant =
            SoftMapping::new(&ctx, &tgt, [("a", "u"), ("b", "u")], [("e", "d")]).unwrap();
        let maps = vec![constant];
        let verdict = separates_points(&ctx, &maps).unwrap();
        let witness = verdict.witness.expect("two points cannot be separated");
        assert!(verify_point_separation_witness(&maps, &witness).unwrap());
    }

    #[test]
    fn coordinate_wise_separation_is_joint() {
        // one map is injective on elements only, the other on parameters only
        let src = ctx22();
        let t_elem = Context::new(["u", "v"], ["d"]).unwrap();
        let t_param = Context::new(["w"], ["g", "h"]).unwrap();
        let m_elem = SoftMapping::new(
            &src,
            &t_elem,
            [("a", "u"), ("b", "v")],
            [("e", "d"), ("f", "d")],
        )
        .unwrap();
        let m_param = SoftMapping::new(
            &src,
            &t_param,
            [("a", "w"), ("b", "w")],
            [("e", "g"), ("f", "h")],
        )
        .unwrap();
        assert!(!separates_points(&src, core::slice::from_ref(&m_elem)).unwrap().ok());
        assert!(!separates_points(&src, core::slice::from_ref(&m_param)).unwrap().ok());
        assert!(separates_points(&src, &[m_elem, m_param]).unwrap().ok());
    }

    #[test]
    fn discrete_identity_separates_from_closed() {
        let ctx = ctx21();
        let discrete = SoftTopology::discrete(&ctx).unwrap();
        let id = SoftMapping::identity(&ctx);
        let verdict = separates_points_from_closed(
            &discrete,
            core::slice::from_ref(&discrete),
            core::slice::from_ref(&id),
        )
        .unwrap();
        assert!(verdict.ok());
    }

    #[test]
    fn indiscrete_target_fails_from_closed_with_verified_witness() {
        let ctx = ctx21();
        let discrete = SoftTopology::discrete(&ctx).unwrap();
        let indiscrete = SoftTopology::indiscrete(&ctx);
        let id = SoftMapping::identity(&ctx);
        let spaces = vec![indiscrete];
        let maps = vec![id];
        let verdict = separates_points_from_closed(&discrete, &spaces, &maps).unwrap();
        let witness = verdict.witness.expect("indiscrete closures are absolute");
        // the null closed set can never witness a failure
        assert!(!witness.0.is_null());
        assert!(verify_closed_separation_witness(&discrete, &spaces, &maps, &witness).unwrap());
    }

    #[test]
    fn null_closed_set_is_never_a_witness() {
        let ctx = ctx21();
        let discrete = SoftTopology::discrete(&ctx).unwrap();
        let indiscrete = SoftTopology::indiscrete(&ctx);
        let id = SoftMapping::identity(&ctx);
        let spaces = vec![indiscrete];
        let maps = vec![id];
        for pt in enumerate_soft_points(&ctx) {
            let claim = (SoftSet::null(&ctx), pt);
            assert!(!verify_closed_separation_witness(&discrete, &spaces, &maps, &claim).unwrap());
        }
    }

    #[test]
    fn separation_is_monotone_in_the_family() {
        let budget = Budget::default();
        for seed in 0..40 {
            let inst = random_instance(seed, &budget).unwrap();
            if inst.maps.len() < 2 {
                continue;
            }
            let prefix_maps = &inst.maps[..1];
            let prefix_spaces = &inst.spaces[..1];
            if separates_points(inst.space.context(), prefix_maps).unwrap().ok() {
                assert!(separates_points(inst.space.context(), &inst.maps).unwrap().ok());
            }
            if separates_points_from_closed(&inst.space, prefix_spaces, prefix_maps)
                .unwrap()
                .ok()
            {
                assert!(
                    separates_points_from_closed(&inst.space, &inst.spaces, &inst.maps)
                        .unwrap()
                        .ok()
                );
            }
        }
    }

    #[test]
    fn lemma_holds_on_discrete_identity_family() {
        let ctx = ctx21();
        let discrete = SoftTopology::discrete(&ctx).unwrap();
        let id = SoftMapping::identity(&ctx);
        let report = check_embedding_lemma(
            &discrete,
            core::slice::from_ref(&discrete),
            core::slice::from_ref(&id),
            &Budget::default(),
        )
        .unwrap();
        assert!(report.hypotheses_hold());
        assert!(report.conclusion_holds());
        assert!(!report.is_violation());
    }

    #[test]
    fn constant_family_fails_hypotheses_without_claiming_conclusion() {
        let ctx = ctx21();
        let tgt = Context::new(["u"], ["d"]).unwrap();
        let indiscrete_src = SoftTopology::indiscrete(&ctx);
        let indiscrete_tgt = SoftTopology::indiscrete(&tgt);
        let constant =
            SoftMapping::new(&ctx, &tgt, [("a", "u"), ("b", "u")], [("e", "d")]).unwrap();
        let report = check_embedding_lemma(
            &indiscrete_src,
            core::slice::from_ref(&indiscrete_tgt),
            core::slice::from_ref(&constant),
            &Budget::default(),
        )
        .unwrap();
        assert!(!report.separates_points.ok());
        assert!(!report.hypotheses_hold());
        assert!(!report.is_violation());
        // the diagonal collapses soft points exactly like the witness says
        let (p, q) = report.separates_points.witness.clone().unwrap();
        assert_eq!(
            report.diagonal.image_of_point(&p).unwrap(),
            report.diagonal.image_of_point(&q).unwrap()
        );
    }

    #[test]
    fn failed_point_separation_collapses_under_the_diagonal() {
        // whenever separation fails, the witness pair lands on one image
        // point under every map, hence under the diagonal
        let budget = Budget::default();
        for seed in 100..160 {
            let inst = random_instance(seed, &budget).unwrap();
            let verdict = separates_points(inst.space.context(), &inst.maps).unwrap();
            let Some((p, q)) = verdict.witness else { continue };
            let product = crate::product::product_context(
                &inst.spaces.iter().map(|s| s.context().clone()).collect::<alloc::vec::Vec<_>>(),
            )
            .unwrap();
            let diagonal = crate::product::diagonal_mapping(&inst.maps, &product).unwrap();
            assert_eq!(
                diagonal.image_of_point(&p).unwrap(),
                diagonal.image_of_point(&q).unwrap()
            );
            // and the collapse is visible in the tables: a shared element
            // image or a shared parameter image
            assert!(
                diagonal.element_image(p.element_index())
                    == diagonal.element_image(q.element_index())
                    && diagonal.parameter_image(p.parameter_index())
                        == diagonal.parameter_image(q.parameter_index())
            );
        }
    }

    #[test]
    fn no_violations_over_seeded_instances() {
        let budget = Budget::default();
        for seed in 0..25 {
            let inst = random_instance(seed, &budget).unwrap();
            match check_embedding_lemma(&inst.space, &inst.spaces, &inst.maps, &budget) {
                Ok(report) => assert!(!report.is_violation(), "seed {seed} violated the lemma"),
                Err(Error::BudgetExceeded { .. }) => {}
                Err(e) => panic!("seed {seed}: unexpected error {e}"),
            }
        }
    }

    #[test]
    fn random_instances_are_deterministic_and_within_budget() {
        let budget = Budget::default();
        for seed in [0, 1, 7, 42] {
            let a = random_instance(seed, &budget).unwrap();
            let b = random_instance(seed, &budget).unwrap();
            assert_eq!(a.space, b.space);
            assert_eq!(a.spaces, b.spaces);
            assert_eq!(a.maps, b.maps);

            assert!(a.maps.len() <= budget.max_factors);
            assert!(is_topology(a.space.context(), a.space.opens()).unwrap().ok());
            for s in &a.spaces {
                assert!(s.context().element_count() <= budget.max_universe);
                assert!(s.context().parameter_count() <= budget.max_parameters);
                assert!(s.open_count() <= budget.max_opens);
                assert!(is_topology(s.context(), s.opens()).unwrap().ok());
            }
        }
    }

    #[test]
    fn unsatisfiable_budgets_are_rejected() {
        let budget = Budget { max_factors: 0, ..Budget::default() };
        assert!(matches!(
            random_instance(1, &budget),
            Err(Error::UnsatisfiableBudget(_))
        ));
    }

    #[test]
    fn oversized_products_exceed_budget() {
        let ctx = ctx22();
        let t = SoftTopology::indiscrete(&ctx);
        let id = SoftMapping::identity(&ctx);
        let budget = Budget { max_set_bits: 8, ..Budget::default() };
        // two copies of a 2x2 context: product bits = 4 * 4 = 16 > 8
        let err = check_embedding_lemma(
            &t,
            &[t.clone(), t.clone()],
            &[id.clone(), id],
            &budget,
        )
        .unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}
