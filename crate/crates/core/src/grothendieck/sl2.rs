//! Products of simple SL_q(2) classes, generic and at odd roots of unity.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

/// Classes `Σ c_k [L(k)]`.
pub(crate) type Classes = BTreeMap<u64, i64>;

fn add(acc: &mut Classes, k: u64, c: i64) {
    let e = acc.entry(k).or_insert(0);
    *e += c;
    if *e == 0 {
        acc.remove(&k);
    }
}

fn add_all(acc: &mut Classes, x: &Classes, c: i64) {
    for (&k, &v) in x {
        add(acc, k, c * v);
    }
}

/// Multiplication by `[L(1)]`. `order` is `None` for generic q.
fn times_fundamental(order: Option<u64>, x: &Classes) -> Classes {
    let mut out = Classes::new();
    for (&k, &c) in x {
        match order {
            None => {
                add(&mut out, k + 1, c);
                if k > 0 {
                    add(&mut out, k - 1, c);
                }
            }
            Some(n_ord) => {
                let (n, m) = (k / n_ord, k % n_ord);
                if m < n_ord - 1 {
                    add(&mut out, k + 1, c);
                    if m > 0 {
                        add(&mut out, k - 1, c);
                    }
                } else {
                    // L(N-1)⊗L(1) = L(1)^(1) ⊕ 2L(N-2), then twist by L(n)^(1)
                    add(&mut out, (n + 1) * n_ord, c);
                    if n > 0 {
                        add(&mut out, (n - 1) * n_ord, c);
                    }
                    add(&mut out, n * n_ord + n_ord - 2, 2 * c);
                }
            }
        }
    }
    out
}

/// `x·[L(j)]` through `L(j+1) = L(j)·L(1) − L(j−1)`, valid for all j
/// generically and for `j < N` at a root of unity.
fn times_restricted(order: Option<u64>, x: &Classes, j: u64) -> Classes {
    let mut prev = x.clone();
    if j == 0 {
        return prev;
    }
    let mut cur = times_fundamental(order, x);
    for _ in 1..j {
        let mut next = times_fundamental(order, &cur);
        add_all(&mut next, &prev, -1);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

type Cache = Mutex<HashMap<(u64, u64, u64), Classes>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `[L(i)]·[L(j)]`.
pub(crate) fn product(order: Option<u64>, i: u64, j: u64) -> Classes {
    let (i, j) = (i.min(j), i.max(j));
    let key = (order.unwrap_or(0), i, j);
    if let Some(r) = cache().lock().unwrap().get(&key) {
        return r.clone();
    }
    let one: Classes = [(i, 1)].into_iter().collect();
    let r = match order {
        None => times_restricted(None, &one, j),
        Some(n_ord) => {
            // Steinberg: L(j) = L(m) ⊗ L(n)^(1); the twisted factors multiply
            // generically
            let (n, m) = (j / n_ord, j % n_ord);
            let partial = times_restricted(order, &one, m);
            let mut out = Classes::new();
            for (&k, &c) in &partial {
                let (kn, km) = (k / n_ord, k % n_ord);
                for (&p, &d) in &product(None, kn, n) {
                    add(&mut out, p * n_ord + km, c * d);
                }
            }
            out
        }
    };
    debug_assert!(r.values().all(|&c| c > 0));
    cache().lock().unwrap().insert(key, r.clone());
    r
}

pub(crate) fn dim(order: Option<u64>, k: u64) -> i64 {
    match order {
        None => k as i64 + 1,
        Some(n) => ((k % n + 1) * (k / n + 1)) as i64,
    }
}
