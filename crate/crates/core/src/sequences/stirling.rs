use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Memoized triangle `rows[n][k]`, grown on demand under a write lock.
struct Triangle {
    rows: RwLock<Vec<Vec<BigInt>>>,
    next_row: fn(&[BigInt], usize) -> Vec<BigInt>,
}

impl Triangle {
    const fn new(next_row: fn(&[BigInt], usize) -> Vec<BigInt>) -> Self {
        Self {
            rows: RwLock::new(Vec::new()),
            next_row,
        }
    }

    fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        {
            let rows = self.rows.read().unwrap_or_else(|e| e.into_inner());
            if let Some(row) = rows.get(n) {
                return row[k].clone();
            }
        }
        let mut rows = self.rows.write().unwrap_or_else(|e| e.into_inner());
        if rows.is_empty() {
            rows.push(vec![BigInt::one()]);
        }
        while rows.len() <= n {
            let m = rows.len() - 1;
            let next = (self.next_row)(&rows[m], m);
            rows.push(next);
        }
        rows[n][k].clone()
    }
}

fn entry(row: &[BigInt], k: isize) -> BigInt {
    if k < 0 {
        BigInt::zero()
    } else {
        row.get(k as usize).cloned().unwrap_or_default()
    }
}

// S1(m+1, k) = S1(m, k-1) - m·S1(m, k)
fn stirling1_row(prev: &[BigInt], m: usize) -> Vec<BigInt> {
    (0..=m + 1)
        .map(|k| {
            let k = k as isize;
            entry(prev, k - 1) - BigInt::from(m) * entry(prev, k)
        })
        .collect()
}

// S2(m+1, k) = k·S2(m, k) + S2(m, k-1)
fn stirling2_row(prev: &[BigInt], m: usize) -> Vec<BigInt> {
    (0..=m + 1)
        .map(|k| BigInt::from(k) * entry(prev, k as isize) + entry(prev, k as isize - 1))
        .collect()
}

static STIRLING1: Triangle = Triangle::new(stirling1_row);
static STIRLING2: Triangle = Triangle::new(stirling2_row);

/// Signed Stirling number of the first kind, `(x)_n = Σ_k S1(n,k) x^k`.
/// Zero when `k > n`.
pub fn stirling1(n: usize, k: usize) -> BigInt {
    STIRLING1.get(n, k)
}

/// Stirling number of the second kind, `x^n = Σ_k S2(n,k) (x)_k`.
/// Zero when `k > n`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    STIRLING2.get(n, k)
}
