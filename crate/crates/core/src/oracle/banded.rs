//! Banded LU factorization with partial pivoting.
//!
//! Row `i` stores columns `i - kl ..= i + kl + ku`; the extra `kl` columns on
//! the right hold fill-in created by row interchanges.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone)]
pub struct BandMatrix<T> {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<T>,
}

impl<T: Real> BandMatrix<T> {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![T::zero(); n * width],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.kl + self.ku, "({i}, {j}) outside band");
        i * self.width + (j + self.kl - i)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        if j + self.kl < i || j > i + self.kl + self.ku {
            T::zero()
        } else {
            self.data[self.slot(i, j)]
        }
    }

    /// Adds `v` to entry `(i, j)`, which must lie inside the declared bandwidth.
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        assert!(j + self.kl >= i && j <= i + self.ku, "entry ({i}, {j}) outside the band");
        let s = self.slot(i, j);
        self.data[s] = self.data[s] + v;
    }

    /// `y = A x` on the unfactored matrix.
    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kl);
                let hi = (i + self.ku).min(self.n - 1);
                (lo..=hi).map(|j| self.get(i, j) * x[j]).sum()
            })
            .collect()
    }

    /// Factorizes in place.
    ///
    /// A zero pivot, or a ratio of largest to smallest pivot magnitude beyond
    /// `1/eps`, is reported as singular with that ratio as condition estimate.
    pub fn factorize(mut self) -> Result<BandLu<T>> {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        let mut piv = vec![0usize; n];
        let (mut pmax, mut pmin) = (T::zero(), T::infinity());
        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let mut p = k;
            let mut best = self.data[self.slot(k, k)].abs();
            for i in k + 1..=last_row {
                let v = self.data[self.slot(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            piv[k] = p;
            let last_col = (k + kl + ku).min(n - 1);
            if p != k {
                for j in k..=last_col {
                    let (a, b) = (self.slot(k, j), self.slot(p, j));
                    self.data.swap(a, b);
                }
            }
            let pivot = self.data[self.slot(k, k)];
            if pivot == T::zero() || !pivot.is_finite() {
                return Err(Error::Singular {
                    row: k,
                    condition: f64::INFINITY,
                });
            }
            pmax = pmax.max(pivot.abs());
            pmin = pmin.min(pivot.abs());
            for i in k + 1..=last_row {
                let sik = self.slot(i, k);
                let l = self.data[sik] / pivot;
                if l == T::zero() {
                    continue;
                }
                self.data[sik] = l;
                for j in k + 1..=last_col {
                    let (sij, skj) = (self.slot(i, j), self.slot(k, j));
                    self.data[sij] = self.data[sij] - l * self.data[skj];
                }
            }
        }
        let condition = (pmax / pmin).to_f64().unwrap_or(f64::INFINITY);
        if condition > 1.0 / T::epsilon().to_f64().unwrap_or(f64::EPSILON) {
            return Err(Error::Singular { row: n - 1, condition });
        }
        Ok(BandLu {
            m: self,
            piv,
            condition,
        })
    }
}

#[derive(Debug, Clone)]
pub struct BandLu<T> {
    m: BandMatrix<T>,
    piv: Vec<usize>,
    condition: f64,
}

impl<T: Real> BandLu<T> {
    /// Ratio of largest to smallest pivot magnitude.
    pub fn condition_estimate(&self) -> f64 {
        self.condition
    }

    pub fn solve(&self, rhs: &[T]) -> Vec<T> {
        let m = &self.m;
        let n = m.n;
        let mut x = rhs.to_vec();
        for k in 0..n {
            x.swap(k, self.piv[k]);
            let last_row = (k + m.kl).min(n - 1);
            for i in k + 1..=last_row {
                x[i] = x[i] - m.data[m.slot(i, k)] * x[k];
            }
        }
        for k in (0..n).rev() {
            let last_col = (k + m.kl + m.ku).min(n - 1);
            let mut acc = x[k];
            for j in k + 1..=last_col {
                acc = acc - m.data[m.slot(k, j)] * x[j];
            }
            x[k] = acc / m.data[m.slot(k, k)];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn solves_random_banded_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(n, kl, ku) in &[(1, 0, 0), (5, 1, 1), (40, 3, 2), (60, 7, 4), (30, 19, 9)] {
            let mut a = BandMatrix::<f64>::zeros(n, kl, ku);
            for i in 0..n {
                for j in i.saturating_sub(kl)..=(i + ku).min(n - 1) {
                    a.add(i, j, rng.gen_range(-1.0..1.0));
                }
            }
            let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
            let b = a.mul_vec(&x);
            let lu = a.factorize().unwrap();
            let y = lu.solve(&b);
            let err = x.iter().zip(&y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
            assert!(err < 1e-9, "n={n} kl={kl} ku={ku}: {err}");
        }
    }

    #[test]
    fn needs_pivoting() {
        // leading zero forces a row interchange
        let mut a = BandMatrix::<f64>::zeros(3, 1, 1);
        a.add(0, 1, 1.0);
        a.add(1, 0, 1.0);
        a.add(1, 2, 2.0);
        a.add(2, 1, 3.0);
        a.add(2, 2, 1.0);
        let b = a.mul_vec(&[1.0, 2.0, 3.0]);
        let x = a.factorize().unwrap().solve(&b);
        for (got, want) in x.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_matrix_reported() {
        let mut a = BandMatrix::<f64>::zeros(3, 1, 1);
        a.add(0, 0, 1.0);
        a.add(1, 1, 1.0);
        assert!(matches!(a.factorize(), Err(Error::Singular { row: 2, .. })));
    }
}
