//! Exact sparse linear algebra over a scalar field: incremental echelon
//! forms with optional tracking of how each row combines the inputs.

use std::collections::BTreeMap;

use crate::scalars::{FieldCtx, Scalar};

/// Sparse vector indexed by an ordered key (words, word pairs, positions).
pub type SparseVec<K> = BTreeMap<K, Scalar>;

/// `v += c * w`, dropping entries that cancel.
pub fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &Scalar, w: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in w {
        let add = c * x;
        match v.get_mut(k) {
            Some(e) => {
                *e = &*e + &add;
                if e.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                if !add.is_zero() {
                    v.insert(k.clone(), add);
                }
            }
        }
    }
}

pub fn scale_vec<K: Ord + Clone>(v: &SparseVec<K>, c: &Scalar) -> SparseVec<K> {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (k.clone(), x * c)).collect()
}

#[derive(Clone, Debug)]
struct Row<K> {
    vec: SparseVec<K>,
    combo: SparseVec<usize>,
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug)]
pub enum Insertion {
    /// The vector was independent and became a new row.
    Independent,
    /// The vector was dependent: `Σ c_j · input_j = 0` with the given
    /// coefficients (indices are insertion numbers; includes the new vector).
    Dependent(SparseVec<usize>),
}

/// Semi-echelon basis: every row has a distinct pivot (its largest key,
/// normalized to coefficient 1).
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    ctx: FieldCtx,
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
    inserted: usize,
    track: bool,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(ctx: FieldCtx) -> Self {
        Echelon {
            ctx,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            inserted: 0,
            track: false,
        }
    }

    /// Like `new`, but remembers input combinations for kernels and witnesses.
    pub fn tracking(ctx: FieldCtx) -> Self {
        Echelon {
            track: true,
            ..Self::new(ctx)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// The current row vectors (a basis of the span).
    pub fn basis(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.iter().map(|r| &r.vec)
    }

    /// Reduces `v` against the rows; returns the remainder and, when
    /// tracking, the combination of inputs that was subtracted.
    fn reduce_tracked(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut used = SparseVec::new();
        let mut bound: Option<K> = None;
        loop {
            // largest key below the previous pivot that is itself a pivot
            let next = match &bound {
                None => v.iter().next_back(),
                Some(b) => v.range(..b.clone()).next_back(),
            };
            let Some((k, c)) = next else { break };
            let (k, c) = (k.clone(), c.clone());
            if let Some(&ri) = self.pivots.get(&k) {
                let row = &self.rows[ri];
                axpy(&mut v, &c.neg(), &row.vec);
                if self.track {
                    axpy(&mut used, &c, &row.combo);
                }
            }
            bound = Some(k);
        }
        (v, used)
    }

    /// Fully reduced remainder of `v` modulo the span.
    pub fn reduce(&self, v: SparseVec<K>) -> SparseVec<K> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn insert(&mut self, v: SparseVec<K>) -> Insertion {
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce_tracked(v);
        let mut combo = SparseVec::new();
        if self.track {
            combo.insert(idx, self.ctx.one());
            axpy(&mut combo, &self.ctx.from_int(-1), &used);
        }
        match rem.iter().next_back() {
            None => Insertion::Dependent(combo),
            Some((k, c)) => {
                let k = k.clone();
                let inv = c.inv().expect("nonzero pivot");
                let vec = scale_vec(&rem, &inv);
                let combo = scale_vec(&combo, &inv);
                self.pivots.insert(k, self.rows.len());
                self.rows.push(Row { vec, combo });
                Insertion::Independent
            }
        }
    }

    /// Coefficients `c_j` with `Σ c_j · input_j = target`, if target is in the span.
    /// Requires a tracking echelon.
    pub fn solve(&self, target: &SparseVec<K>) -> Option<SparseVec<usize>> {
        assert!(self.track, "solve needs a tracking echelon");
        let (rem, used) = self.reduce_tracked(target.clone());
        rem.is_empty().then_some(used)
    }
}

/// Rank of a list of vectors.
pub fn rank<K: Ord + Clone>(ctx: FieldCtx, vecs: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut e = Echelon::new(ctx);
    for v in vecs {
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{c : Σ c_j · vecs_j = 0}`.
pub fn kernel<K: Ord + Clone>(
    ctx: FieldCtx,
    vecs: impl IntoIterator<Item = SparseVec<K>>,
) -> Vec<SparseVec<usize>> {
    let mut e = Echelon::tracking(ctx);
    let mut out = Vec::new();
    for v in vecs {
        if let Insertion::Dependent(c) = e.insert(v) {
            out.push(c);
        }
    }
    out
}
