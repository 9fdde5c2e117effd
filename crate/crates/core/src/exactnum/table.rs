use std::sync::RwLock;

use num_traits::{One, Zero};

use super::Int;

/// Rule producing entry `k` of row `n + 1` from row `n`.
type RowRule = fn(&[Int], usize, usize) -> Int;

/// Lower-triangular integer table grown lazily one row at a time.
///
/// Row 0 is `[1]`. Rows already present are never mutated.
pub(super) struct Triangle {
    rows: RwLock<Vec<Vec<Int>>>,
    rule: RowRule,
}

impl Triangle {
    pub(super) const fn new(rule: RowRule) -> Self {
        Triangle { rows: RwLock::new(Vec::new()), rule }
    }

    pub(super) fn get(&self, n: usize, k: usize) -> Int {
        debug_assert!(k <= n);
        {
            let rows = self.rows.read().expect("table lock poisoned");
            if let Some(row) = rows.get(n) {
                return row[k].clone();
            }
        }
        let mut rows = self.rows.write().expect("table lock poisoned");
        if rows.is_empty() {
            rows.push(vec![Int::one()]);
        }
        while rows.len() <= n {
            let m = rows.len() - 1;
            let prev = &rows[m];
            let next: Vec<Int> = (0..=m + 1).map(|k| (self.rule)(prev, m, k)).collect();
            rows.push(next);
        }
        rows[n][k].clone()
    }
}

/// Memoized sequence where entry `n` is a function of entries `0..n`.
pub(super) struct Memo<T: 'static> {
    values: RwLock<Vec<T>>,
    next: fn(&[T]) -> T,
}

impl<T: Clone + Zero> Memo<T> {
    pub(super) const fn new(next: fn(&[T]) -> T) -> Self {
        Memo { values: RwLock::new(Vec::new()), next }
    }

    pub(super) fn get(&self, n: usize) -> T {
        {
            let values = self.values.read().expect("memo lock poisoned");
            if let Some(v) = values.get(n) {
                return v.clone();
            }
        }
        let mut values = self.values.write().expect("memo lock poisoned");
        while values.len() <= n {
            let v = (self.next)(&values);
            values.push(v);
        }
        values[n].clone()
    }
}
