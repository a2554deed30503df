//! Acceptance suite: one test per criterion, each printing a PASS line and
//! pinning its tolerance/runtime in code.
//!
//! Derived expectations are computed by the independent oracles in
//! `softtop-oracle` (naive set model, brute-force family enumeration), never
//! by the code paths under test.

use std::time::{Duration, Instant};

use softtop::commands::{cmd_check, cmd_fuzz, EXIT_OK};
use softtop::instance::lemma_instance_file;
use softtop::report::lemma_report_json;
use softtop_core::mapping::HomeoFailure;
use softtop_core::separation::check_embedding_lemma;
use softtop_core::topology::is_topology;
use softtop_core::{
    all_soft_sets, diagonal_mapping, product_context, product_topology, random_instance, Budget,
    Context, SoftMapping, SoftSet, SoftTopology,
};
use softtop_oracle::SetAlgebra;

fn named_ctx(nu: usize, ne: usize) -> Context {
    Context::new(
        (0..nu).map(|i| format!("x{i}")),
        (0..ne).map(|i| format!("e{i}")),
    )
    .unwrap()
}

/// Every context shape (|U|, |E|) with |E| >= 1 and |U| * |E| <= max_bits,
/// including empty universes.
fn shapes(max_bits: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for nu in 0..=max_bits {
        for ne in 1..=max_bits {
            if nu * ne <= max_bits {
                out.push((nu, ne));
            }
        }
    }
    out
}

#[test]
fn criterion_1_algebra_laws_exhaustive() {
    let started = Instant::now();
    for (nu, ne) in shapes(6) {
        let ctx = named_ctx(nu, ne);
        let all = all_soft_sets(&ctx).unwrap();
        assert!(all.len() <= 64);
        let null = SoftSet::null(&ctx);
        let absolute = SoftSet::absolute(&ctx);
        for f in &all {
            assert_eq!(&f.complement().complement(), f);
            assert_eq!(&f.union(&null).unwrap(), f);
            assert_eq!(&f.intersection(&absolute).unwrap(), f);
            assert_eq!(f.union(&absolute).unwrap(), absolute);
            assert_eq!(f.intersection(&null).unwrap(), null);
            assert_eq!(&f.union(f).unwrap(), f);
            assert_eq!(&f.intersection(f).unwrap(), f);
            for g in &all {
                assert_eq!(
                    f.union(g).unwrap().complement(),
                    f.complement().intersection(&g.complement()).unwrap()
                );
                assert_eq!(
                    f.intersection(g).unwrap().complement(),
                    f.complement().union(&g.complement()).unwrap()
                );
                assert_eq!(f.union(g).unwrap(), g.union(f).unwrap());
                assert_eq!(f.intersection(g).unwrap(), g.intersection(f).unwrap());
                assert_eq!(&f.union(&f.intersection(g).unwrap()).unwrap(), f);
                assert_eq!(&f.intersection(&f.union(g).unwrap()).unwrap(), f);
                for h in &all {
                    assert_eq!(
                        f.union(&g.union(h).unwrap()).unwrap(),
                        f.union(g).unwrap().union(h).unwrap()
                    );
                    assert_eq!(
                        f.intersection(&g.intersection(h).unwrap()).unwrap(),
                        f.intersection(g).unwrap().intersection(h).unwrap()
                    );
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}, limit 1s");
    println!("ACCEPTANCE criterion 1 (algebra laws, |U||E| <= 6 exhaustive): PASS ({elapsed:?})");
}

#[test]
fn criterion_2_topology_count_on_two_points() {
    let ctx = Context::new(["a", "b"], ["e"]).unwrap();
    // oracle route: brute-force enumeration over the naive model
    let algebra = SetAlgebra::new(&ctx);
    assert_eq!(algebra.set_count(), 4);
    assert_eq!(algebra.topologies().len(), 4);
    // implementation route: is_topology over all 16 families
    let all = all_soft_sets(&ctx).unwrap();
    let mut count = 0;
    for mask in 0u32..16 {
        let family: Vec<SoftSet> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| s.clone())
            .collect();
        if is_topology(&ctx, &family).unwrap().ok() {
            count += 1;
        }
    }
    assert_eq!(count, 4);
    println!("ACCEPTANCE criterion 2 (16 families on U={{a,b}}, E={{e}}: exactly 4 topologies): PASS");
}

#[test]
fn criterion_3_subbase_minimality_exhaustive() {
    let started = Instant::now();
    let mut checked = 0usize;
    for (nu, ne) in shapes(4) {
        let ctx = named_ctx(nu, ne);
        let algebra = SetAlgebra::new(&ctx);
        let n = algebra.set_count();
        for subbase_mask in 0u64..1 << n {
            let subbase = algebra.family_of_mask(subbase_mask);
            let generated =
                softtop_core::generate_from_subbase(&ctx, &subbase).unwrap();
            let minimal = algebra.minimal_topology_containing(subbase_mask);
            assert_eq!(
                algebra.mask_of_family(generated.opens()),
                minimal,
                "subbase {subbase_mask:#b} over shape ({nu},{ne})"
            );
            checked += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}, limit 30s");
    println!(
        "ACCEPTANCE criterion 3 (subbase minimality, {checked} subbases, |U||E| <= 4): PASS ({elapsed:?})"
    );
}

#[test]
fn criterion_4_closure_against_enumerated_closed_supersets() {
    let mut checked = 0usize;
    for (nu, ne) in shapes(4) {
        let ctx = named_ctx(nu, ne);
        let algebra = SetAlgebra::new(&ctx);
        for &mask in algebra.topologies() {
            let topology = SoftTopology::new(&ctx, algebra.family_of_mask(mask)).unwrap();
            for (i, set) in algebra.sets().iter().enumerate() {
                let expected = algebra.smallest_closed_superset(mask, i);
                let got = topology.closure(set).unwrap();
                assert_eq!(algebra.index_of(&got), expected, "shape ({nu},{ne})");
                checked += 1;
            }
        }
    }
    println!(
        "ACCEPTANCE criterion 4 (closure vs smallest enumerated closed superset, {checked} cases): PASS"
    );
}

#[test]
fn criterion_5_pointwise_and_global_continuity_agree() {
    let budget = Budget::default();
    let mut triples = 0usize;
    let mut seed = 10_000u64;
    while triples < 1000 {
        let inst = random_instance(seed, &budget).unwrap();
        seed += 1;
        for (map, space) in inst.maps.iter().zip(inst.spaces.iter()) {
            let global = map.is_continuous(&inst.space, space).unwrap().ok();
            let pointwise = map.is_continuous_pointwise(&inst.space, space).unwrap().is_none();
            assert_eq!(global, pointwise, "seed {} map disagreement", seed - 1);
            triples += 1;
        }
    }
    println!(
        "ACCEPTANCE criterion 5 (continuity checkers agree on {triples} random triples): PASS"
    );
}

#[test]
fn criterion_6_distributivity_exhaustive_and_random() {
    // exhaustive over every mapping between every pair of shapes <= 4 bits
    let mut checked = 0usize;
    let all_shapes = shapes(4);
    for &(su, sp) in &all_shapes {
        for &(tu, tp) in &all_shapes {
            let src = named_ctx(su, sp);
            let tgt = Context::new(
                (0..tu).map(|i| format!("y{i}")),
                (0..tp).map(|i| format!("d{i}")),
            )
            .unwrap();
            let elem_tables = total_tables(su, tu);
            let param_tables = total_tables(sp, tp);
            let src_sets = all_soft_sets(&src).unwrap();
            let tgt_sets = all_soft_sets(&tgt).unwrap();
            for elem_map in &elem_tables {
                for param_map in &param_tables {
                    let m = SoftMapping::from_index_tables(
                        &src,
                        &tgt,
                        elem_map.clone(),
                        param_map.clone(),
                    )
                    .unwrap();
                    check_distributivity(&m, &src_sets, &tgt_sets);
                    checked += 1;
                }
            }
        }
    }

    // plus 1000 random larger instances
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let su = rng.gen_range(1..=4);
        let sp = rng.gen_range(1..=3);
        let tu = rng.gen_range(1..=4);
        let tp = rng.gen_range(1..=3);
        let src = named_ctx(su, sp);
        let tgt = Context::new(
            (0..tu).map(|i| format!("y{i}")),
            (0..tp).map(|i| format!("d{i}")),
        )
        .unwrap();
        let m = SoftMapping::from_index_tables(
            &src,
            &tgt,
            (0..su).map(|_| rng.gen_range(0..tu)).collect(),
            (0..sp).map(|_| rng.gen_range(0..tp)).collect(),
        )
        .unwrap();
        let f1 = random_set(&mut rng, &src);
        let f2 = random_set(&mut rng, &src);
        let g1 = random_set(&mut rng, &tgt);
        let g2 = random_set(&mut rng, &tgt);
        check_distributivity_one(&m, &f1, &f2, &g1, &g2);
    }
    println!(
        "ACCEPTANCE criterion 6 (preimage/image distributivity, {checked} exhaustive mappings + 1000 random): PASS"
    );
}

/// All total index tables from a domain of `from` positions into `to`
/// targets (empty domain has exactly the empty table).
fn total_tables(from: usize, to: usize) -> Vec<Vec<usize>> {
    if from == 0 {
        return vec![Vec::new()];
    }
    if to == 0 {
        return Vec::new();
    }
    let count = to.pow(from as u32);
    (0..count)
        .map(|code| {
            let mut c = code;
            (0..from)
                .map(|_| {
                    let digit = c % to;
                    c /= to;
                    digit
                })
                .collect()
        })
        .collect()
}

fn check_distributivity(m: &SoftMapping, src_sets: &[SoftSet], tgt_sets: &[SoftSet]) {
    for g1 in tgt_sets {
        assert_eq!(m.preimage(&g1.complement()).unwrap(), m.preimage(g1).unwrap().complement());
        for g2 in tgt_sets {
            assert_eq!(
                m.preimage(&g1.union(g2).unwrap()).unwrap(),
                m.preimage(g1).unwrap().union(&m.preimage(g2).unwrap()).unwrap()
            );
            assert_eq!(
                m.preimage(&g1.intersection(g2).unwrap()).unwrap(),
                m.preimage(g1).unwrap().intersection(&m.preimage(g2).unwrap()).unwrap()
            );
        }
    }
    for f1 in src_sets {
        for f2 in src_sets {
            assert_eq!(
                m.image(&f1.union(f2).unwrap()).unwrap(),
                m.image(f1).unwrap().union(&m.image(f2).unwrap()).unwrap()
            );
        }
    }
}

fn check_distributivity_one(
    m: &SoftMapping,
    f1: &SoftSet,
    f2: &SoftSet,
    g1: &SoftSet,
    g2: &SoftSet,
) {
    assert_eq!(
        m.preimage(&g1.union(g2).unwrap()).unwrap(),
        m.preimage(g1).unwrap().union(&m.preimage(g2).unwrap()).unwrap()
    );
    assert_eq!(
        m.preimage(&g1.intersection(g2).unwrap()).unwrap(),
        m.preimage(g1).unwrap().intersection(&m.preimage(g2).unwrap()).unwrap()
    );
    assert_eq!(m.preimage(&g1.complement()).unwrap(), m.preimage(g1).unwrap().complement());
    assert_eq!(
        m.image(&f1.union(f2).unwrap()).unwrap(),
        m.image(f1).unwrap().union(&m.image(f2).unwrap()).unwrap()
    );
}

fn random_set(rng: &mut impl rand::Rng, ctx: &Context) -> SoftSet {
    let approx: Vec<(String, Vec<String>)> = ctx
        .parameters()
        .iter()
        .map(|p| {
            let elems = ctx
                .universe()
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .cloned()
                .collect();
            (p.clone(), elems)
        })
        .collect();
    SoftSet::from_approximations(ctx, approx.iter().map(|(p, es)| (p.as_str(), es.iter().map(String::as_str)))).unwrap()
}

#[test]
fn criterion_7_embedding_lemma_fuzz_and_hand_instances() {
    // (i) 200 seeded instances, zero violations, under five minutes
    let started = Instant::now();
    let out = cmd_fuzz(1, 200, &Budget::default());
    let elapsed = started.elapsed();
    assert_eq!(out.exit_code, EXIT_OK, "{}", out.machine);
    assert_eq!(out.machine["violations"], serde_json::json!(0));
    assert_eq!(out.machine["count"], serde_json::json!(200));
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}, limit 5min");

    // (ii) hand-built instance (a): identity family on a discrete space
    let ctx = Context::new(["a", "b"], ["e"]).unwrap();
    let discrete = SoftTopology::discrete(&ctx).unwrap();
    let id = SoftMapping::identity(&ctx);
    let file = lemma_instance_file(&discrete, std::slice::from_ref(&discrete), std::slice::from_ref(&id));
    let out = cmd_check(&file, "lemma", &Budget::default());
    assert_eq!(out.exit_code, EXIT_OK);
    assert_eq!(out.machine["result"]["hypotheses_hold"], serde_json::json!(true));
    assert_eq!(out.machine["result"]["conclusion_holds"], serde_json::json!(true));
    assert_eq!(out.machine["result"]["witnesses"], serde_json::json!([]));

    // (iii) hand-built instance (b): constant family on a two-point space
    let tgt = Context::new(["u"], ["d"]).unwrap();
    let constant = SoftMapping::new(&ctx, &tgt, [("a", "u"), ("b", "u")], [("e", "d")]).unwrap();
    let src_space = SoftTopology::indiscrete(&ctx);
    let tgt_space = SoftTopology::indiscrete(&tgt);
    let spaces = vec![tgt_space];
    let maps = vec![constant];
    let report = check_embedding_lemma(&src_space, &spaces, &maps, &Budget::default()).unwrap();
    assert!(!report.separates_points.ok());
    assert!(!report.hypotheses_hold());
    assert!(!report.is_violation());
    // the diagonal is not injective on soft points: the witness pair maps to
    // one image point, and the element tables collapse
    let (p, q) = report.separates_points.witness.clone().unwrap();
    assert_ne!(p, q);
    assert_eq!(
        report.diagonal.image_of_point(&p).unwrap(),
        report.diagonal.image_of_point(&q).unwrap()
    );
    assert!(!report.diagonal.elements_injective());
    assert!(matches!(
        report.embedding.failure,
        Some(HomeoFailure::ElementsNotInjective)
    ));
    // every witness embedded in the report re-verifies
    let json = lemma_report_json(&report, &src_space, &spaces, &maps);
    let witnesses = json["witnesses"].as_array().unwrap();
    assert!(!witnesses.is_empty());
    for w in witnesses {
        assert_eq!(w["verified"], serde_json::json!(true), "witness {w}");
    }

    println!(
        "ACCEPTANCE criterion 7 (lemma fuzz seed 1 x200: zero violations in {elapsed:?}; hand instances verified): PASS"
    );
}

#[test]
fn criterion_8_product_sanity() {
    // discrete x discrete is discrete
    let f0 = Context::new(["a", "b"], ["e"]).unwrap();
    let f1 = Context::new(["u", "v"], ["d"]).unwrap();
    let f2 = Context::new(["p"], ["g", "h"]).unwrap();
    let spaces = vec![
        SoftTopology::discrete(&f0).unwrap(),
        SoftTopology::discrete(&f1).unwrap(),
    ];
    let (pc, topo) = product_topology(&spaces).unwrap();
    assert_eq!(topo, SoftTopology::discrete(pc.context()).unwrap());

    let spaces = vec![
        SoftTopology::discrete(&f0).unwrap(),
        SoftTopology::discrete(&f2).unwrap(),
    ];
    let (pc, topo) = product_topology(&spaces).unwrap();
    assert_eq!(topo, SoftTopology::discrete(pc.context()).unwrap());

    // indiscrete x indiscrete is indiscrete
    let spaces = vec![SoftTopology::indiscrete(&f0), SoftTopology::indiscrete(&f2)];
    let (pc, topo) = product_topology(&spaces).unwrap();
    assert_eq!(topo, SoftTopology::indiscrete(pc.context()));

    // projection ∘ diagonal recovers every component map, exhaustively over
    // all table combinations from a two-point source into two factors
    let src = Context::new(["s", "t"], ["e"]).unwrap();
    let pc = product_context(&[f0.clone(), f1.clone()]).unwrap();
    let mut combos = 0usize;
    for t0 in total_tables(2, 2) {
        for t1 in total_tables(2, 2) {
            let m0 = SoftMapping::from_index_tables(&src, &f0, t0.clone(), vec![0]).unwrap();
            let m1 = SoftMapping::from_index_tables(&src, &f1, t1.clone(), vec![0]).unwrap();
            let maps = vec![m0, m1];
            let diag = diagonal_mapping(&maps, &pc).unwrap();
            for (i, m) in maps.iter().enumerate() {
                let proj = pc.projection(i).unwrap();
                let composite = softtop_core::compose(&proj, &diag).unwrap();
                assert_eq!(&composite, m);
                for pt in softtop_core::enumerate_soft_points(&src) {
                    assert_eq!(
                        composite.image_of_point(&pt).unwrap(),
                        m.image_of_point(&pt).unwrap()
                    );
                }
            }
            combos += 1;
        }
    }
    assert_eq!(combos, 16);
    println!("ACCEPTANCE criterion 8 (product sanity, {combos} diagonal combos): PASS");
}
