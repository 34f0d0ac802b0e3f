use serde::Serialize;

use super::matrix::{same_host, Comodule};
use super::ComodError;
use crate::hopfalg::HopfMap;
use crate::linalg::{kernel, SparseVec};
use crate::ncpoly::{NcPoly, Word};
use crate::scalars::Scalar;
use crate::weight::WeightWord;

/// A line `k·v` with `(id ⊗ f)α(v) = v ⊗ g`.
#[derive(Clone, Debug)]
pub struct StableLine {
    /// Coordinates of `v` in the comodule basis.
    pub vector: Vec<Scalar>,
    /// The group-like `g` of the target.
    pub grouplike: NcPoly,
    /// Dimension of the solution space for this `g`; above 1 the line is
    /// one basis vector of a larger family.
    pub family_dim: usize,
}

/// A candidate weight together with its group-like in the target of `f`.
#[derive(Clone, Debug)]
pub struct WeightCandidate {
    pub weight: WeightWord,
    pub grouplike: NcPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct StableLineSummary {
    pub vector: Vec<String>,
    pub grouplike: String,
    pub family_dim: usize,
}

impl StableLine {
    pub fn summary(&self, f: &HopfMap) -> StableLineSummary {
        StableLineSummary {
            vector: self.vector.iter().map(|c| c.to_string()).collect(),
            grouplike: f.target().show(&self.grouplike),
            family_dim: self.family_dim,
        }
    }
}

/// Solves `(id ⊗ f)α(v) = v ⊗ g` for every candidate group-like `g` of the
/// target of `f`.
pub fn stable_lines(v: &Comodule, f: &HopfMap, candidates: &[NcPoly]) -> Result<Vec<StableLine>, ComodError> {
    if !same_host(v.host(), f.source()) {
        return Err(ComodError::HostMismatch);
    }
    let n = v.dim();
    let target = f.target();
    // images[j][i] = f(x_{ji})
    let images: Vec<Vec<NcPoly>> = (0..n)
        .map(|j| (0..n).map(|i| f.apply(v.entry(j, i))).collect())
        .collect();
    let mut out = Vec::new();
    for g in candidates {
        let g = target.normal_form(g);
        // column i of the system: Σ_j e_j ⊗ (f(x_{ji}) - δ_{ij} g)
        let columns = (0..n).map(|i| {
            let mut col: SparseVec<(usize, Word)> = SparseVec::new();
            for (j, row) in images.iter().enumerate() {
                let mut p = row[i].clone();
                if i == j {
                    p = p.sub(&g);
                }
                for (w, c) in p.terms() {
                    col.insert((j, w.clone()), c.clone());
                }
            }
            col
        });
        let ker = kernel(target.ctx(), columns);
        let family_dim = ker.len();
        for k in ker {
            let mut vector = vec![target.ctx().zero(); n];
            for (i, c) in k {
                vector[i] = c;
            }
            out.push(StableLine {
                vector,
                grouplike: g.clone(),
                family_dim,
            });
        }
    }
    Ok(out)
}

/// The weight of the unique stable line among the candidates.
pub fn highest_weight(
    v: &Comodule,
    f: &HopfMap,
    candidates: &[WeightCandidate],
) -> Result<WeightWord, ComodError> {
    let gs: Vec<NcPoly> = candidates.iter().map(|c| c.grouplike.clone()).collect();
    let lines = stable_lines(v, f, &gs)?;
    match lines.as_slice() {
        [] => Err(ComodError::NoStableLine {
            candidates: candidates.len(),
        }),
        [line] => {
            let g = &line.grouplike;
            let target = f.target();
            Ok(candidates
                .iter()
                .find(|c| target.normal_form(&c.grouplike) == *g)
                .expect("line comes from a candidate")
                .weight
                .clone())
        }
        many => Err(ComodError::NotUnique {
            lines: many
                .iter()
                .map(|l| f.target().show(&l.grouplike))
                .collect(),
        }),
    }
}
