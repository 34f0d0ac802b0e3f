use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::json;

use super::ComodError;
use crate::hopfalg::{HopfMap, PresentedHopf, TensorPoly};
use crate::linalg::{Echelon, SparseVec};
use crate::ncpoly::{NcPoly, Word};

/// A finite-dimensional right comodule given by a multiplicative matrix.
///
/// The coaction on the basis is `α(e_i) = Σ_j e_j ⊗ x_{ji}`; construction
/// verifies `Δ(x_{ij}) = Σ_k x_{ik} ⊗ x_{kj}` and `ε(x_{ij}) = δ_{ij}`.
#[derive(Clone, Debug)]
pub struct Comodule {
    host: Arc<PresentedHopf>,
    dim: usize,
    entries: Vec<NcPoly>,
    labels: Vec<String>,
}

pub(crate) fn same_host(a: &Arc<PresentedHopf>, b: &Arc<PresentedHopf>) -> bool {
    Arc::ptr_eq(a, b)
        || (a.label() == b.label()
            && a.alphabet().names() == b.alphabet().names()
            && a.rws().rules() == b.rws().rules()
            && a.ctx() == b.ctx())
}

impl Comodule {
    /// Builds and verifies a comodule from row-major entries.
    pub fn new(host: Arc<PresentedHopf>, entries: Vec<Vec<NcPoly>>) -> Result<Self, ComodError> {
        let labels = (1..=entries.len()).map(|i| format!("e{i}")).collect();
        Self::with_labels(host, entries, labels)
    }

    pub fn with_labels(
        host: Arc<PresentedHopf>,
        entries: Vec<Vec<NcPoly>>,
        labels: Vec<String>,
    ) -> Result<Self, ComodError> {
        let dim = entries.len();
        if dim == 0 {
            return Err(ComodError::Shape("a comodule needs dimension at least 1".into()));
        }
        if entries.iter().any(|row| row.len() != dim) || labels.len() != dim {
            return Err(ComodError::Shape(format!("matrix must be {dim}x{dim}")));
        }
        let entries = entries
            .into_iter()
            .flatten()
            .map(|p| host.normal_form(&p))
            .collect();
        let v = Comodule {
            host,
            dim,
            entries,
            labels,
        };
        v.verify()?;
        Ok(v)
    }

    /// Parses the entries in the host's presentation language.
    pub fn from_strings(host: Arc<PresentedHopf>, rows: &[&[&str]]) -> Result<Self, ComodError> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| host.parse(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(host, entries)
    }

    /// The trivial one-dimensional comodule.
    pub fn trivial(host: Arc<PresentedHopf>) -> Self {
        let one = NcPoly::one(host.ctx());
        Comodule {
            host,
            dim: 1,
            entries: vec![one],
            labels: vec!["e1".into()],
        }
    }

    /// The one-dimensional comodule `k_g` of a group-like element.
    pub fn grouplike(host: Arc<PresentedHopf>, g: &NcPoly) -> Result<Self, ComodError> {
        Self::new(host, vec![vec![g.clone()]])
    }

    fn verify(&self) -> Result<(), ComodError> {
        let h = &self.host;
        let ctx = h.ctx();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let x = self.entry(i, j);
                let mut expected = TensorPoly::zero(ctx);
                for k in 0..self.dim {
                    expected.add_pure(self.entry(i, k), self.entry(k, j), &ctx.one());
                }
                let got = h.delta(x);
                if got != expected {
                    return Err(ComodError::NotMultiplicative {
                        row: i + 1,
                        col: j + 1,
                        detail: h.show_tensor(&got.sub(&expected)),
                    });
                }
                let e = h.counit(x);
                let ok = if i == j { e.is_one() } else { e.is_zero() };
                if !ok {
                    return Err(ComodError::CounitFails {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn host(&self) -> &Arc<PresentedHopf> {
        &self.host
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry `x_{ij}` (zero-based).
    pub fn entry(&self, i: usize, j: usize) -> &NcPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[NcPoly] {
        &self.entries
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> Vec<Vec<NcPoly>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// The matrix as DSL strings.
    pub fn show_rows(&self) -> Vec<Vec<String>> {
        self.entries
            .chunks(self.dim)
            .map(|r| r.iter().map(|p| self.host.show(p)).collect())
            .collect()
    }

    /// Simplicity criterion: the n² matrix coefficients are linearly
    /// independent, i.e. the coefficient space has dimension n².
    pub fn is_simple(&self) -> bool {
        self.coefficient_rank() == self.dim * self.dim
    }

    /// Dimension of the span of the matrix entries.
    pub fn coefficient_rank(&self) -> usize {
        crate::linalg::rank(self.host.ctx(), self.entries.iter().map(poly_vec))
    }

    /// `V ⊗ W` with entries `x_{ij} y_{kl}` at position `((i,k),(j,l))`.
    pub fn tensor(&self, other: &Comodule) -> Result<Comodule, ComodError> {
        if !same_host(&self.host, &other.host) {
            return Err(ComodError::HostMismatch);
        }
        let (n, m) = (self.dim, other.dim);
        let mut rows = vec![Vec::with_capacity(n * m); n * m];
        for i in 0..n {
            for k in 0..m {
                for j in 0..n {
                    for l in 0..m {
                        rows[i * m + k].push(self.host.mul(self.entry(i, j), other.entry(k, l)));
                    }
                }
            }
        }
        let mut labels = Vec::new();
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}#{b}"));
            }
        }
        Comodule::with_labels(self.host.clone(), rows, labels)
    }

    /// The dual comodule: the transpose of the entrywise antipode.
    pub fn dual(&self) -> Result<Comodule, ComodError> {
        let n = self.dim;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| self.host.antipode(self.entry(j, i))).collect())
            .collect();
        let labels = self.labels.iter().map(|l| format!("{l}*")).collect();
        Comodule::with_labels(self.host.clone(), rows, labels)
    }

    /// `V ⊕ W` as a block-diagonal matrix.
    pub fn direct_sum(&self, other: &Comodule) -> Result<Comodule, ComodError> {
        if !same_host(&self.host, &other.host) {
            return Err(ComodError::HostMismatch);
        }
        let (n, m) = (self.dim, other.dim);
        let zero = NcPoly::zero(self.host.ctx());
        let mut rows = vec![vec![zero; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                rows[i][j] = self.entry(i, j).clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                rows[n + i][n + j] = other.entry(i, j).clone();
            }
        }
        let labels = self.labels.iter().chain(&other.labels).cloned().collect();
        Comodule::with_labels(self.host.clone(), rows, labels)
    }

    /// Restriction along a Hopf map out of the host: entrywise image.
    pub fn restrict(&self, f: &HopfMap) -> Result<Comodule, ComodError> {
        if !same_host(&self.host, f.source()) {
            return Err(ComodError::HostMismatch);
        }
        let rows = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|p| f.apply(p)).collect())
            .collect();
        Comodule::with_labels(f.target().clone(), rows, self.labels.clone())
    }

    /// The subcomodule of the regular comodule `(H, Δ)` generated by the
    /// given elements, with the basis found by exact elimination.
    pub fn generated_in_host(host: Arc<PresentedHopf>, seeds: &[NcPoly]) -> Result<Comodule, ComodError> {
        // The subcomodule generated by x is spanned by the left legs of Δ(x)
        // collected along each right-leg basis word.
        let mut echelon: Echelon<Word> = Echelon::new(host.ctx());
        for x in seeds {
            for left in left_legs(&host.delta(&host.normal_form(x))).into_values() {
                echelon.insert(poly_vec(&left));
            }
        }
        let basis: Vec<NcPoly> = echelon
            .basis()
            .map(|v| NcPoly::from_terms(host.ctx(), v.clone()))
            .collect();
        Self::from_invariant_basis(host, basis)
    }

    /// Comodule structure on a subspace of `(H, Δ)` spanned by linearly
    /// independent `basis`, which must satisfy `Δ(V) ⊂ V ⊗ H`.
    pub fn from_invariant_basis(host: Arc<PresentedHopf>, basis: Vec<NcPoly>) -> Result<Comodule, ComodError> {
        let ctx = host.ctx();
        let n = basis.len();
        if n == 0 {
            return Err(ComodError::Shape("empty basis".into()));
        }
        let mut solver: Echelon<Word> = Echelon::tracking(ctx);
        for b in &basis {
            if let crate::linalg::Insertion::Dependent(_) = solver.insert(poly_vec(b)) {
                return Err(ComodError::Shape("basis is linearly dependent".into()));
            }
        }
        let mut rows = vec![vec![NcPoly::zero(ctx); n]; n];
        for (i, b) in basis.iter().enumerate() {
            for (right, left) in left_legs(&host.delta(b)) {
                let coeffs = solver
                    .solve(&poly_vec(&left))
                    .ok_or_else(|| ComodError::NotInvariant(host.show(b)))?;
                for (j, c) in coeffs {
                    rows[j][i].add_term(right.clone(), c);
                }
            }
        }
        let labels = basis.iter().map(|b| host.show(b)).collect();
        Comodule::with_labels(host, rows, labels)
    }

    /// JSON form: host label, dimension, labels and entry strings.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "host": self.host.label(),
            "dim": self.dim,
            "labels": self.labels,
            "entries": self.show_rows(),
        })
    }
}

pub(crate) fn poly_vec(p: &NcPoly) -> SparseVec<Word> {
    p.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
}

/// Groups `Σ c u⊗v` by the right word: `v ↦ Σ c u`.
pub(crate) fn left_legs(t: &TensorPoly) -> BTreeMap<Word, NcPoly> {
    let mut out: BTreeMap<Word, NcPoly> = BTreeMap::new();
    for ((u, v), c) in t.terms() {
        out.entry(v.clone())
            .or_insert_with(|| NcPoly::zero(t.ctx()))
            .add_term(u.clone(), c.clone());
    }
    out
}
