//! All-integer LLL reduction (Lovász parameter 3/4).
//!
//! Works on the exact Gram data: `d[i]` are the Gram determinants and
//! `lambda[i][j] = mu[i][j] * d[j+1]`, so every division below is exact and
//! the reduction is fully deterministic.

use num::{BigInt, Integer, One, Signed, Zero};

/// Reduces the rows of `basis` in place.
pub fn lll_reduce(basis: &mut [Vec<BigInt>]) {
    let n = basis.len();
    if n <= 1 {
        return;
    }
    let mut state = GramState::new(basis);
    let mut k = 1;
    while k < n {
        state.size_reduce(basis, k, k - 1);
        let lam = state.lambda[k][k - 1].clone();
        // Lovász: swap when 4 d[k+1] d[k-1] < 3 d[k]^2 - 4 lambda^2
        if 4 * (&state.d[k + 1] * &state.d[k - 1]) < 3 * (&state.d[k] * &state.d[k]) - 4 * (&lam * &lam)
        {
            state.swap(basis, k);
            k = k.max(2) - 1;
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                state.size_reduce(basis, k, l);
            }
            k += 1;
        }
    }
}

struct GramState {
    /// `d[0] = 1`, `d[i]` = determinant of the Gram matrix of the first
    /// `i` rows.
    d: Vec<BigInt>,
    /// Scaled Gram-Schmidt coefficients, `lambda[i][j]` for `j < i`.
    lambda: Vec<Vec<BigInt>>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl GramState {
    fn new(basis: &[Vec<BigInt>]) -> Self {
        let n = basis.len();
        let mut d = vec![BigInt::one(); n + 1];
        let mut lambda = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..=i {
                let mut u = dot(&basis[i], &basis[j]);
                for l in 0..j {
                    u = (&d[l + 1] * u - &lambda[i][l] * &lambda[j][l]).div_floor(&d[l]);
                }
                if j < i {
                    lambda[i][j] = u;
                } else {
                    d[i + 1] = u;
                }
            }
            assert!(d[i + 1].is_positive(), "input rows must be linearly independent");
        }
        GramState { d, lambda }
    }

    /// Makes `|lambda[k][l]| <= d[l+1] / 2` by subtracting a multiple of
    /// row `l` from row `k`.
    fn size_reduce(&mut self, basis: &mut [Vec<BigInt>], k: usize, l: usize) {
        let two_lam: BigInt = 2 * &self.lambda[k][l];
        if two_lam.magnitude() <= self.d[l + 1].magnitude() {
            return;
        }
        // nearest integer to lambda / d
        let q = (two_lam + &self.d[l + 1]).div_floor(&(2 * &self.d[l + 1]));
        if q.is_zero() {
            return;
        }
        let (head, tail) = basis.split_at_mut(k);
        let row_l = &head[l];
        for (x, y) in tail[0].iter_mut().zip(row_l) {
            *x -= &q * y;
        }
        self.lambda[k][l] -= &q * &self.d[l + 1];
        for i in 0..l {
            let delta = &q * &self.lambda[l][i];
            self.lambda[k][i] -= delta;
        }
    }

    fn swap(&mut self, basis: &mut [Vec<BigInt>], k: usize) {
        basis.swap(k, k - 1);
        for j in 0..k.saturating_sub(1) {
            let tmp = self.lambda[k][j].clone();
            self.lambda[k][j] = self.lambda[k - 1][j].clone();
            self.lambda[k - 1][j] = tmp;
        }
        let lam = self.lambda[k][k - 1].clone();
        let b = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam).div_floor(&self.d[k]);
        for i in k + 1..basis.len() {
            let t = self.lambda[i][k].clone();
            let new_upper =
                (&self.d[k + 1] * &self.lambda[i][k - 1] - &lam * &t).div_floor(&self.d[k]);
            let new_lower = (&b * &t + &lam * &new_upper).div_floor(&self.d[k + 1]);
            self.lambda[i][k] = new_upper;
            self.lambda[i][k - 1] = new_lower;
        }
        self.d[k] = b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(data: &[&[i64]]) -> Vec<Vec<BigInt>> {
        data.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn norm2(v: &[BigInt]) -> BigInt {
        dot(v, v)
    }

    #[test]
    fn reduces_classic_example() {
        // Wikipedia's standard example; reduced basis has vectors of norm <= 6
        let mut b = rows(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]);
        lll_reduce(&mut b);
        assert!(b.iter().all(|v| norm2(v) <= BigInt::from(6)), "{b:?}");
    }

    #[test]
    fn finds_small_integer_relation() {
        // x = [1, 2^(1/1)... ] contrived: relation 2*a - b = 0 hidden at large scale
        let n = 1_000_000_000_000i64;
        let a = n;
        let b = 2 * n + 1; // b - 2a = 1, so nearly a relation but not exact
        let mut rows = rows(&[&[1, 0, a], &[0, 1, 0]]);
        rows[1][2] = BigInt::from(b);
        lll_reduce(&mut rows);
        // shortest vector should be (-2, 1, 1): 1*b - 2*a = 1
        let best = rows.iter().min_by_key(|v| norm2(v)).unwrap();
        assert_eq!(norm2(best), BigInt::from(6), "{rows:?}");
    }

    #[test]
    fn gcd_like_reduction() {
        // rows (1,0,5n), (0,1,3n): relation 3*(first) - 5*(second) has last
        // coordinate 0
        let n = 10_000_000i64;
        let mut b = rows(&[&[1, 0, 5 * n], &[0, 1, 3 * n]]);
        lll_reduce(&mut b);
        let best = b.iter().min_by_key(|v| norm2(v)).unwrap();
        assert_eq!(best[2], BigInt::zero());
        assert_eq!(norm2(best), BigInt::from(9 + 25));
    }

    #[test]
    fn preserves_lattice_membership_dimension() {
        let mut b = rows(&[&[4, 1, 0], &[1, 3, 1], &[0, 2, 7]]);
        let det_before = {
            let s = GramState::new(&b);
            s.d[3].clone()
        };
        lll_reduce(&mut b);
        let det_after = {
            let s = GramState::new(&b);
            s.d[3].clone()
        };
        assert_eq!(det_before, det_after);
    }
}
