//! The instance file format: a single JSON document declaring contexts,
//! named soft sets, topologies (verbatim opens or a subbase to generate
//! from), mappings and check requests.
//!
//! Parsing and serialization round-trip exactly: all collections are
//! `BTreeMap`s and soft sets serialize in canonical form (parameter name to
//! sorted element-name array, empty approximations omitted).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use softtop_core::topology::{is_topology, AxiomViolation};
use softtop_core::{Budget, Context, Error, SoftMapping, SoftSet, SoftTopology};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub contexts: BTreeMap<String, ContextDecl>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub soft_sets: BTreeMap<String, SoftSetDecl>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub topologies: BTreeMap<String, TopologyDecl>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub mappings: BTreeMap<String, MappingDecl>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub checks: BTreeMap<String, CheckDecl>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextDecl {
    pub universe: Vec<String>,
    pub parameters: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SoftSetDecl {
    pub context: String,
    #[serde(default)]
    pub approximations: BTreeMap<String, Vec<String>>,
}

/// A topology either lists its opens verbatim (validated against the
/// axioms) or is generated from a subbase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyDecl {
    pub context: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<SetRef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generate: Option<Vec<SetRef>>,
}

/// Either the name of a declared soft set or an inline canonical form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetRef {
    Named(String),
    Inline(BTreeMap<String, Vec<String>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingDecl {
    pub source: String,
    pub target: String,
    pub elem: BTreeMap<String, String>,
    pub param: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDecl {
    pub element: String,
    pub parameter: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyMember {
    pub mapping: String,
    pub topology: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CheckDecl {
    Closure {
        set: SetRef,
        topology: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<SetRef>,
    },
    Neighbourhood {
        set: SetRef,
        point: PointDecl,
        topology: String,
    },
    Continuity {
        mapping: String,
        source_topology: String,
        target_topology: String,
    },
    OpenMap {
        mapping: String,
        source_topology: String,
        target_topology: String,
    },
    Homeomorphism {
        mapping: String,
        source_topology: String,
        target_topology: String,
    },
    Embedding {
        mapping: String,
        source_topology: String,
        target_topology: String,
    },
    SeparatesPoints {
        source_context: String,
        mappings: Vec<String>,
    },
    SeparatesPointsFromClosed {
        source_topology: String,
        family: Vec<FamilyMember>,
    },
    EmbeddingLemma {
        source_topology: String,
        family: Vec<FamilyMember>,
    },
}

/// Why a declared topology is unusable.
#[derive(Debug, Clone)]
pub enum TopologyOutcome {
    Valid(SoftTopology),
    /// A verbatim family that violates an axiom.
    Invalid(AxiomViolation),
    /// Generation blew the opens budget.
    Budget(Error),
}

#[derive(Debug, Clone)]
pub struct TopologyEntry {
    pub context: Context,
    pub generated: bool,
    pub outcome: TopologyOutcome,
}

/// All declarations of a file resolved into core objects. Reference and
/// construction failures abort resolution; axiom violations and budget
/// overruns are kept per topology for the commands to report.
#[derive(Debug, Clone, Default)]
pub struct Resolved {
    pub contexts: BTreeMap<String, Context>,
    pub sets: BTreeMap<String, SoftSet>,
    pub topologies: BTreeMap<String, TopologyEntry>,
    pub mappings: BTreeMap<String, SoftMapping>,
}

pub fn resolve(file: &InstanceFile, budget: &Budget) -> Result<Resolved, String> {
    let mut out = Resolved::default();
    for (name, decl) in &file.contexts {
        let ctx = Context::new(decl.universe.iter().cloned(), decl.parameters.iter().cloned())
            .map_err(|e| format!("context `{name}`: {e}"))?;
        out.contexts.insert(name.clone(), ctx);
    }
    for (name, decl) in &file.soft_sets {
        let ctx = out
            .contexts
            .get(&decl.context)
            .ok_or_else(|| format!("soft set `{name}`: unknown context `{}`", decl.context))?;
        let set = SoftSet::from_approximations(
            ctx,
            decl.approximations
                .iter()
                .map(|(p, es)| (p.as_str(), es.iter().map(String::as_str))),
        )
        .map_err(|e| format!("soft set `{name}`: {e}"))?;
        out.sets.insert(name.clone(), set);
    }
    for (name, decl) in &file.topologies {
        let ctx = out
            .contexts
            .get(&decl.context)
            .ok_or_else(|| format!("topology `{name}`: unknown context `{}`", decl.context))?
            .clone();
        let entry = match (&decl.opens, &decl.generate) {
            (Some(opens), None) => {
                let family = resolve_family(&out, &ctx, opens)
                    .map_err(|e| format!("topology `{name}`: {e}"))?;
                let outcome = match is_topology(&ctx, &family)
                    .map_err(|e| format!("topology `{name}`: {e}"))?
                    .violation
                {
                    None => TopologyOutcome::Valid(
                        SoftTopology::new(&ctx, family).expect("axioms just verified"),
                    ),
                    Some(violation) => TopologyOutcome::Invalid(violation),
                };
                TopologyEntry { context: ctx, generated: false, outcome }
            }
            (None, Some(subbase)) => {
                let family = resolve_family(&out, &ctx, subbase)
                    .map_err(|e| format!("topology `{name}`: {e}"))?;
                match softtop_core::topology::generate_from_subbase_bounded(
                    &ctx,
                    &family,
                    budget.max_opens,
                ) {
                    Ok(t) => TopologyEntry {
                        context: ctx,
                        generated: true,
                        outcome: TopologyOutcome::Valid(t),
                    },
                    Err(e @ Error::BudgetExceeded { .. }) => TopologyEntry {
                        context: ctx,
                        generated: true,
                        outcome: TopologyOutcome::Budget(e),
                    },
                    Err(e) => return Err(format!("topology `{name}`: {e}")),
                }
            }
            _ => {
                return Err(format!(
                    "topology `{name}`: declare exactly one of `opens` or `generate`"
                ))
            }
        };
        out.topologies.insert(name.clone(), entry);
    }
    for (name, decl) in &file.mappings {
        let source = out
            .contexts
            .get(&decl.source)
            .ok_or_else(|| format!("mapping `{name}`: unknown context `{}`", decl.source))?;
        let target = out
            .contexts
            .get(&decl.target)
            .ok_or_else(|| format!("mapping `{name}`: unknown context `{}`", decl.target))?;
        let mapping = SoftMapping::new(
            source,
            target,
            decl.elem.iter().map(|(a, b)| (a.as_str(), b.as_str())),
            decl.param.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        )
        .map_err(|e| format!("mapping `{name}`: {e}"))?;
        out.mappings.insert(name.clone(), mapping);
    }
    Ok(out)
}

fn resolve_family(out: &Resolved, ctx: &Context, refs: &[SetRef]) -> Result<Vec<SoftSet>, String> {
    refs.iter().map(|r| resolve_set_ref(out, ctx, r)).collect()
}

/// Resolves a set reference against a context, insisting that named sets
/// live over the same context.
pub fn resolve_set_ref(out: &Resolved, ctx: &Context, set_ref: &SetRef) -> Result<SoftSet, String> {
    match set_ref {
        SetRef::Named(name) => {
            let set = out
                .sets
                .get(name)
                .ok_or_else(|| format!("unknown soft set `{name}`"))?;
            if set.context() != ctx {
                return Err(format!("soft set `{name}` belongs to a different context"));
            }
            Ok(set.clone())
        }
        SetRef::Inline(approx) => SoftSet::from_approximations(
            ctx,
            approx.iter().map(|(p, es)| (p.as_str(), es.iter().map(String::as_str))),
        )
        .map_err(|e| e.to_string()),
    }
}

/// Canonical inline form of a soft set: parameter name to sorted
/// element-name array, empty approximations omitted.
pub fn set_to_inline(set: &SoftSet) -> BTreeMap<String, Vec<String>> {
    let ctx = set.context();
    (0..ctx.parameter_count())
        .filter_map(|p| {
            let mut elems: Vec<String> = set
                .approximation(p)
                .into_iter()
                .map(|x| ctx.element_name(x).to_owned())
                .collect();
            if elems.is_empty() {
                None
            } else {
                elems.sort();
                Some((ctx.parameter_name(p).to_owned(), elems))
            }
        })
        .collect()
}

/// Renders a lemma instance as a replayable instance file with a single
/// `embedding_lemma` check named `lemma`.
pub fn lemma_instance_file(
    space: &SoftTopology,
    spaces: &[SoftTopology],
    maps: &[SoftMapping],
) -> InstanceFile {
    let mut file = InstanceFile::default();
    let ctx_decl = |ctx: &Context| ContextDecl {
        universe: ctx.universe().to_vec(),
        parameters: ctx.parameters().to_vec(),
    };
    let topo_decl = |name: &str, t: &SoftTopology| TopologyDecl {
        context: name.to_owned(),
        opens: Some(t.opens().iter().map(|o| SetRef::Inline(set_to_inline(o))).collect()),
        generate: None,
    };
    file.contexts.insert("X".into(), ctx_decl(space.context()));
    file.topologies.insert("T".into(), topo_decl("X", space));
    let mut family = Vec::new();
    for (i, (s, m)) in spaces.iter().zip(maps.iter()).enumerate() {
        let ctx_name = format!("Y{i}");
        let topo_name = format!("T{i}");
        let map_name = format!("m{i}");
        file.contexts.insert(ctx_name.clone(), ctx_decl(s.context()));
        file.topologies.insert(topo_name.clone(), topo_decl(&ctx_name, s));
        file.mappings.insert(
            map_name.clone(),
            MappingDecl {
                source: "X".into(),
                target: ctx_name,
                elem: (0..m.source().element_count())
                    .map(|x| {
                        (
                            m.source().element_name(x).to_owned(),
                            m.target().element_name(m.element_image(x)).to_owned(),
                        )
                    })
                    .collect(),
                param: (0..m.source().parameter_count())
                    .map(|p| {
                        (
                            m.source().parameter_name(p).to_owned(),
                            m.target().parameter_name(m.parameter_image(p)).to_owned(),
                        )
                    })
                    .collect(),
            },
        );
        family.push(FamilyMember { mapping: map_name, topology: topo_name });
    }
    file.checks.insert(
        "lemma".into(),
        CheckDecl::EmbeddingLemma { source_topology: "T".into(), family },
    );
    file
}
