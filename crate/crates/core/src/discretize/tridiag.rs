//! Tridiagonal kernels.

/// Symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    /// `off[i]` couples rows `i` and `i + 1`.
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn mul_into(&self, x: &[f64], y: &mut [f64]) {
        let n = self.n();
        for i in 0..n {
            let mut s = self.diag[i] * x[i];
            if i > 0 {
                s += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                s += self.off[i] * x[i + 1];
            }
            y[i] = s;
        }
    }

    pub fn mul(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n()];
        self.mul_into(x, &mut y);
        y
    }

    /// `xᵀ A x`
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        let n = self.n();
        let mut s = 0.0;
        for i in 0..n {
            s += self.diag[i] * x[i] * x[i];
            if i + 1 < n {
                s += 2.0 * self.off[i] * x[i] * x[i + 1];
            }
        }
        s
    }

    /// `xᵀ A y`
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        let n = self.n();
        let mut s = 0.0;
        for i in 0..n {
            s += self.diag[i] * x[i] * y[i];
            if i + 1 < n {
                s += self.off[i] * (x[i] * y[i + 1] + x[i + 1] * y[i]);
            }
        }
        s
    }
}

/// Solves a general tridiagonal system in place by Gaussian elimination with
/// partial pivoting. `sub[i] = A[i+1][i]`, `sup[i] = A[i][i+1]`.
///
/// Returns the row of the first zero pivot when the matrix is singular.
pub fn solve_general(sub: &[f64], diag: &[f64], sup: &[f64], b: &mut [f64]) -> Result<(), usize> {
    let n = diag.len();
    debug_assert_eq!(b.len(), n);
    if n == 0 {
        return Ok(());
    }
    if n == 1 {
        if diag[0] == 0.0 {
            return Err(0);
        }
        b[0] /= diag[0];
        return Ok(());
    }
    let mut d = diag.to_vec();
    let mut du = sup.to_vec();
    // holds the subdiagonal, then the second superdiagonal fill-in
    let mut dl = sub.to_vec();

    for i in 0..n - 1 {
        let last = i + 2 == n;
        if d[i].abs() >= dl[i].abs() {
            if d[i] == 0.0 {
                return Err(i);
            }
            let fact = dl[i] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
            dl[i] = 0.0;
        } else {
            let fact = d[i] / dl[i];
            d[i] = dl[i];
            let temp = d[i + 1];
            d[i + 1] = du[i] - fact * temp;
            if !last {
                dl[i] = du[i + 1];
                du[i + 1] = -fact * dl[i];
            } else {
                dl[i] = 0.0;
            }
            du[i] = temp;
            let t = b[i];
            b[i] = b[i + 1];
            b[i + 1] = t - fact * b[i + 1];
        }
    }
    if d[n - 1] == 0.0 {
        return Err(n - 1);
    }
    b[n - 1] /= d[n - 1];
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for i in (0..n - 2).rev() {
        b[i] = (b[i] - du[i] * b[i + 1] - dl[i] * b[i + 2]) / d[i];
    }
    if let Some(i) = b.iter().position(|v| !v.is_finite()) {
        return Err(i);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, DVector};
    use proptest::prelude::*;

    fn dense(sub: &[f64], diag: &[f64], sup: &[f64]) -> DMatrix<f64> {
        let n = diag.len();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                diag[i]
            } else if i == j + 1 {
                sub[j]
            } else if j == i + 1 {
                sup[i]
            } else {
                0.0
            }
        })
    }

    #[test]
    fn needs_pivoting() {
        // zero leading pivot forces a row interchange
        let sub = [1.0, 1.0, 2.0];
        let diag = [0.0, 1.0, 3.0, 1.0];
        let sup = [2.0, 1.0, 1.0];
        let x = [1.0, -2.0, 0.5, 3.0];
        let a = dense(&sub, &diag, &sup);
        let mut b: Vec<f64> = (a * DVector::from_row_slice(&x)).iter().cloned().collect();
        solve_general(&sub, &diag, &sup, &mut b).unwrap();
        for (u, v) in b.iter().zip(x) {
            assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_detected() {
        let sub = [1.0];
        let diag = [1.0, 1.0];
        let sup = [1.0];
        let mut b = vec![1.0, 2.0];
        assert!(solve_general(&sub, &diag, &sup, &mut b).is_err());
    }

    #[test]
    fn symmetric_products() {
        let a = SymTridiag {
            diag: vec![2.0, 2.0, 2.0],
            off: vec![-1.0, -1.0],
        };
        assert_eq!(a.mul(&[1.0, 1.0, 1.0]), vec![1.0, 0.0, 1.0]);
        assert_eq!(a.quad_form(&[1.0, 1.0, 1.0]), 2.0);
        assert_eq!(a.bilinear(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]), -1.0);
    }

    proptest! {
        #[test]
        fn matches_dense_lu(
            diag in prop::collection::vec(-3.0f64..3.0, 2..12),
            seed in prop::collection::vec(-2.0f64..2.0, 24),
        ) {
            let n = diag.len();
            let sub = &seed[..n - 1];
            let sup = &seed[12..12 + n - 1];
            let a = dense(sub, &diag, sup);
            prop_assume!(a.determinant().abs() > 1e-3);
            let rhs: Vec<f64> = (0..n).map(|i| (i as f64 * 0.7).cos()).collect();
            let want = a.clone().lu().solve(&DVector::from_row_slice(&rhs)).unwrap();
            let mut got = rhs.clone();
            solve_general(sub, &diag, sup, &mut got).unwrap();
            let scale = want.amax().max(1.0);
            for i in 0..n {
                prop_assert!((got[i] - want[i]).abs() <= 1e-8 * scale);
            }
        }
    }
}
