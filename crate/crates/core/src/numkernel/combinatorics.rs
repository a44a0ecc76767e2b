use std::sync::{Arc, RwLock};

use rug::{Integer, Rational};

use super::PrecisionContext;
use crate::error::{Error, Result};

/// Largest Bernoulli index served by [`bernoulli`].
pub const BERNOULLI_MAX_INDEX: usize = 4096;

/// Exact factorials, a Pascal triangle and even Bernoulli numbers.
#[derive(Debug, Clone)]
pub struct CombinatoricsCache {
    factorials: Vec<Integer>,
    pascal: Vec<Vec<Integer>>,
    bernoulli: Arc<Vec<Rational>>,
}

impl CombinatoricsCache {
    /// `k_max`: largest factorial, `n_max`: last Pascal row,
    /// `j_max`: largest even Bernoulli index B_{j_max}.
    pub fn new(k_max: usize, n_max: usize, j_max: usize) -> Self {
        let mut factorials = Vec::with_capacity(k_max + 1);
        let mut f = Integer::from(1);
        factorials.push(f.clone());
        for k in 1..=k_max {
            f *= k as u64;
            factorials.push(f.clone());
        }
        let mut pascal: Vec<Vec<Integer>> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut row = Vec::with_capacity(n + 1);
            row.push(Integer::from(1));
            for k in 1..n {
                let v = Integer::from(&pascal[n - 1][k - 1] + &pascal[n - 1][k]);
                row.push(v);
            }
            if n > 0 {
                row.push(Integer::from(1));
            }
            pascal.push(row);
        }
        Self {
            factorials,
            pascal,
            bernoulli: bernoulli_table(j_max / 2),
        }
    }

    pub fn factorial(&self, k: usize) -> &Integer {
        &self.factorials[k]
    }

    pub fn binomial(&self, n: usize, k: usize) -> Integer {
        if k > n {
            return Integer::new();
        }
        match self.pascal.get(n) {
            Some(row) => row[k].clone(),
            None => Integer::from(Integer::binomial_u(n as u32, k as u32)),
        }
    }

    pub fn pascal_rows(&self) -> usize {
        self.pascal.len()
    }

    /// B_{2j} for 2j within the cached range.
    pub fn bernoulli_even(&self, j: usize) -> Option<&Rational> {
        self.bernoulli.get(j)
    }
}

static BERNOULLI: RwLock<Option<Arc<Vec<Rational>>>> = RwLock::new(None);

/// Even Bernoulli numbers B_0, B_2, ..., B_{2 j_max}, indexed by j.
///
/// Backed by a process-wide cache that only ever grows; each returned
/// table is immutable.
pub fn bernoulli_table(j_max: usize) -> Arc<Vec<Rational>> {
    if let Some(t) = BERNOULLI.read().unwrap().as_ref() {
        if t.len() > j_max {
            return Arc::clone(t);
        }
    }
    let mut guard = BERNOULLI.write().unwrap();
    let have = guard.as_ref().map_or(0, |t| t.len());
    if have > j_max {
        return Arc::clone(guard.as_ref().unwrap());
    }
    let target = j_max.max(2 * have).max(32);
    let table = Arc::new(even_bernoulli(target));
    *guard = Some(Arc::clone(&table));
    table
}

/// B_{2k} for k = 0..=n from tangent numbers, all in exact integers.
fn even_bernoulli(n: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Rational::from(1));
    if n == 0 {
        return out;
    }
    // T[k] ends up holding the k-th tangent number.
    let mut t: Vec<Integer> = Vec::with_capacity(n + 1);
    t.push(Integer::new());
    let mut f = Integer::from(1);
    for k in 1..=n {
        t.push(f.clone());
        f *= k as u64;
    }
    for k in 2..=n {
        for j in k..=n {
            let prev = Integer::from(&t[j - 1] * (j - k) as u64);
            t[j] *= (j - k + 2) as u64;
            t[j] += prev;
        }
    }
    for (k, tk) in t.iter().enumerate().skip(1) {
        let four_k = Integer::from(1) << (2 * k as u32);
        let den = Integer::from(&four_k - 1u32) * four_k;
        let mut num = Integer::from(tk * (2 * k) as u64);
        if k % 2 == 0 {
            num = -num;
        }
        out.push(Rational::from((num, den)));
    }
    out
}

/// Exact Bernoulli number B_j for even j in [2, BERNOULLI_MAX_INDEX].
pub fn bernoulli(j: usize, _ctx: &PrecisionContext) -> Result<Rational> {
    if j < 2 || j % 2 == 1 {
        return Err(Error::OutOfRange {
            index: j,
            reason: "Bernoulli index must be even and >= 2".into(),
        });
    }
    if j > BERNOULLI_MAX_INDEX {
        return Err(Error::OutOfRange {
            index: j,
            reason: format!("Bernoulli cache limited to {BERNOULLI_MAX_INDEX}"),
        });
    }
    Ok(bernoulli_table(j / 2)[j / 2].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(128, 1e-20).unwrap()
    }

    #[test]
    fn bernoulli_anchors() {
        assert_eq!(bernoulli(2, &ctx()).unwrap(), Rational::from((1, 6)));
        assert_eq!(bernoulli(4, &ctx()).unwrap(), Rational::from((-1, 30)));
        assert_eq!(bernoulli(12, &ctx()).unwrap(), Rational::from((-691, 2730)));
        assert_eq!(bernoulli(14, &ctx()).unwrap(), Rational::from((7, 6)));
    }

    #[test]
    fn bernoulli_rejects_bad_indices() {
        assert!(bernoulli(3, &ctx()).is_err());
        assert!(bernoulli(0, &ctx()).is_err());
        assert!(bernoulli(BERNOULLI_MAX_INDEX + 2, &ctx()).is_err());
    }

    #[test]
    fn bernoulli_satisfies_recurrence() {
        // sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1, with B_1 = -1/2.
        let even = bernoulli_table(20);
        for n in 2..=30usize {
            let mut acc = Rational::new();
            for k in 0..=n {
                let c = Integer::from(Integer::binomial_u((n + 1) as u32, k as u32));
                let b = if k == 1 {
                    Rational::from((-1, 2))
                } else if k % 2 == 1 {
                    continue;
                } else {
                    even[k / 2].clone()
                };
                acc += b * c;
            }
            assert_eq!(acc, 0, "n = {n}");
        }
    }

    #[test]
    fn pascal_rule_holds() {
        let cache = CombinatoricsCache::new(30, 40, 10);
        for n in 1..40 {
            for k in 1..n {
                assert_eq!(
                    cache.binomial(n, k),
                    (cache.binomial(n - 1, k - 1) + cache.binomial(n - 1, k))
                );
            }
        }
        assert_eq!(*cache.factorial(10), 3_628_800);
        assert_eq!(cache.binomial(100, 3), 161_700);
        assert_eq!(*cache.bernoulli_even(1).unwrap(), Rational::from((1, 6)));
    }
}
