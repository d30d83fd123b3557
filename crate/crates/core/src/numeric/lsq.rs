//! Linear least squares through a column-scaled SVD.

use nalgebra::{DMatrix, DVector, RealField};

use crate::error::{CoreError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LsqFit<T> {
    pub coefficients: Vec<T>,
    /// Euclidean norm of the residual vector.
    pub residual_norm: T,
    /// Ratio of extreme singular values of the column-scaled design matrix.
    pub condition: T,
}

/// Minimises `|A x - y|` where row `i` of `A` is `rows[i]`.
pub fn least_squares<T: RealField + Copy>(rows: &[Vec<T>], y: &[T]) -> Result<LsqFit<T>> {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    if m == 0 || n == 0 || m < n || y.len() != m || rows.iter().any(|r| r.len() != n) {
        return Err(CoreError::InvalidParameter(format!("least squares with {m} rows and {n} columns")));
    }
    let mut a = DMatrix::from_fn(m, n, |i, j| rows[i][j]);
    let mut scale = vec![T::one(); n];
    for (j, s) in scale.iter_mut().enumerate() {
        let norm = a.column(j).norm();
        if norm > T::zero() {
            *s = norm;
            a.column_mut(j).scale_mut(T::one() / norm);
        }
    }
    let b = DVector::from_column_slice(y);
    let svd = a.clone().svd(true, true);
    let sv = &svd.singular_values;
    let smax = sv.max();
    let smin = sv.min();
    let condition = if smin > T::zero() { smax / smin } else { T::max_value().unwrap_or(smax) };
    let eps = T::default_epsilon() * nalgebra::convert::<f64, T>(m.max(n) as f64) * smax;
    let x = svd.solve(&b, eps).map_err(|e| CoreError::Degenerate(e.to_string()))?;
    let resid = &a * &x - &b;
    let coefficients = (0..n).map(|j| x[j] / scale[j]).collect();
    Ok(LsqFit { coefficients, residual_norm: resid.norm(), condition })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_line() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let rows: Vec<Vec<f64>> = xs.iter().map(|&x| vec![1.0, x]).collect();
        let y: Vec<f64> = xs.iter().map(|&x| 2.0 - 0.5 * x).collect();
        let fit = least_squares(&rows, &y).unwrap();
        assert!((fit.coefficients[0] - 2.0).abs() < 1e-12);
        assert!((fit.coefficients[1] + 0.5).abs() < 1e-12);
        assert!(fit.residual_norm < 1e-12);
    }

    #[test]
    fn rejects_underdetermined() {
        assert!(least_squares(&[vec![1.0f64, 2.0]], &[1.0]).is_err());
    }
}
