use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::algebra::PresentedHopf;
use super::tensor::TensorPoly;
use super::HopfError;
use crate::ncpoly::{parse_poly, parse_relation, parse_rule, Alphabet, NcError, RewriteSystem};
use crate::scalars::FieldCtx;

pub const DEFAULT_CONFLUENCE_DEGREE: usize = 6;
pub const DEFAULT_HOPF_DEGREE: usize = 3;

/// Textual presentation of a Hopf algebra (the JSON file format).
///
/// `relations` holds either relators (`"b*a - q*a*b"`, interreduced into
/// rules) or oriented rules (`"b*a -> q*a*b"`, used as given); the two forms
/// cannot be mixed. `precedence` lists generators from lowest to highest and
/// defaults to `generators`; `weights` defaults to 1 for every generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationSpec {
    #[serde(default)]
    pub label: Option<String>,
    pub field: String,
    pub generators: Vec<String>,
    #[serde(default)]
    pub precedence: Option<Vec<String>>,
    #[serde(default)]
    pub weights: BTreeMap<String, u32>,
    pub relations: Vec<String>,
    pub delta: BTreeMap<String, String>,
    pub epsilon: BTreeMap<String, String>,
    pub antipode: BTreeMap<String, String>,
    #[serde(default)]
    pub grouplikes: Vec<String>,
    #[serde(default)]
    pub confluence_degree: Option<usize>,
    #[serde(default)]
    pub hopf_degree: Option<usize>,
}

impl PresentationSpec {
    pub fn from_json(src: &str) -> Result<Self, HopfError> {
        serde_json::from_str(src).map_err(|e| HopfError::Schema(e.to_string()))
    }

    /// Builds the algebra without running the verification suite.
    pub fn build(&self) -> Result<PresentedHopf, HopfError> {
        let ctx: FieldCtx = self.field.parse()?;
        let order = self.precedence.clone().unwrap_or_else(|| self.generators.clone());
        let mut sorted_gens = self.generators.clone();
        let mut sorted_order = order.clone();
        sorted_gens.sort();
        sorted_order.sort();
        if sorted_gens != sorted_order {
            return Err(HopfError::Schema(
                "precedence must list each generator exactly once".into(),
            ));
        }
        for name in self.weights.keys() {
            if !self.generators.contains(name) {
                return Err(HopfError::Schema(format!("weight given for unknown generator {name}")));
            }
        }
        let weights: Vec<u32> = order
            .iter()
            .map(|g| self.weights.get(g).copied().unwrap_or(1))
            .collect();
        let al = Arc::new(Alphabet::with_weights(&order, &weights)?);

        let oriented = self.relations.iter().filter(|r| r.contains("->")).count();
        let rws = if oriented == 0 {
            let rels = self
                .relations
                .iter()
                .map(|r| parse_relation(r, &al, ctx))
                .collect::<Result<Vec<_>, _>>()?;
            RewriteSystem::from_relations(al.clone(), ctx, &rels)?
        } else if oriented == self.relations.len() {
            let rules = self
                .relations
                .iter()
                .map(|r| parse_rule(r, &al, ctx))
                .collect::<Result<Vec<_>, _>>()?;
            RewriteSystem::new(al.clone(), ctx, rules)?
        } else {
            return Err(HopfError::Schema(
                "relations mix relators and oriented rules".into(),
            ));
        };

        let entry = |table: &BTreeMap<String, String>, what: &str, g: &str| {
            table
                .get(g)
                .cloned()
                .ok_or_else(|| HopfError::Schema(format!("{what} entry missing for generator {g}")))
        };
        for (what, table) in [
            ("delta", &self.delta),
            ("epsilon", &self.epsilon),
            ("antipode", &self.antipode),
        ] {
            if let Some(extra) = table.keys().find(|k| al.index(k).is_none()) {
                return Err(HopfError::Schema(format!("{what} entry for unknown generator {extra}")));
            }
        }
        let mut delta = Vec::new();
        let mut epsilon = Vec::new();
        let mut antipode = Vec::new();
        for g in al.names() {
            let terms = crate::dsl::parse_tensor(&entry(&self.delta, "delta", g)?, &al, ctx, 2)
                .map_err(NcError::from)?;
            delta.push(TensorPoly::from_terms(
                ctx,
                terms.into_iter().map(|(mut k, c)| {
                    let v = k.pop().unwrap();
                    let u = k.pop().unwrap();
                    ((u, v), c)
                }),
            ));
            epsilon.push(ctx.parse(&entry(&self.epsilon, "epsilon", g)?)?);
            antipode.push(parse_poly(&entry(&self.antipode, "antipode", g)?, &al, ctx)?);
        }
        let grouplikes = self
            .grouplikes
            .iter()
            .map(|g| parse_poly(g, &al, ctx))
            .collect::<Result<Vec<_>, _>>()?;
        PresentedHopf::new(
            self.label.clone().unwrap_or_else(|| "custom".into()),
            rws,
            delta,
            epsilon,
            antipode,
            grouplikes,
        )
    }

    /// Builds and verifies confluence and the Hopf axioms at the declared
    /// (or default) degrees.
    pub fn load(&self) -> Result<PresentedHopf, HopfError> {
        let h = self.build()?;
        verify(
            &h,
            self.confluence_degree.unwrap_or(DEFAULT_CONFLUENCE_DEGREE),
            self.hopf_degree.unwrap_or(DEFAULT_HOPF_DEGREE),
        )?;
        Ok(h)
    }
}

/// Rejects an algebra whose rules are not confluent up to `confluence_degree`
/// or whose Hopf axioms fail up to `hopf_degree`.
pub fn verify(h: &PresentedHopf, confluence_degree: usize, hopf_degree: usize) -> Result<(), HopfError> {
    let pairs = h.rws().local_confluence_report(confluence_degree);
    if !pairs.is_empty() {
        return Err(HopfError::NotConfluent {
            pairs: pairs.iter().map(|p| p.describe(h.alphabet())).collect(),
        });
    }
    let report = h.check_hopf_axioms(hopf_degree);
    if !report.passed() {
        return Err(HopfError::AxiomsFailed {
            failures: report
                .failures
                .iter()
                .map(|f| format!("{:?} on {}: {}", f.axiom, f.subject, f.detail))
                .collect(),
        });
    }
    Ok(())
}

/// Reads, builds and verifies a presentation file.
pub fn load_presentation(path: &std::path::Path) -> Result<PresentedHopf, HopfError> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| HopfError::Schema(format!("{}: {e}", path.display())))?;
    PresentationSpec::from_json(&src)?.load()
}
