//! Lowest eigenpairs of real symmetric operators.

use nalgebra::{DMatrix, SymmetricEigen};
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::Rng;

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    /// Unit norm, sign fixed so the largest-magnitude entry is positive.
    pub vector: Vec<f64>,
}

fn fix_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() + 1e-12 {
            best = i;
        }
    }
    if v[best] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Full diagonalization. Fails if the solver returns non-finite values.
pub fn lowest_dense(m: &DMatrix<f64>) -> Result<Eigenpair> {
    let eig = SymmetricEigen::new(m.clone());
    if eig
        .eigenvalues
        .iter()
        .chain(eig.eigenvectors.iter())
        .any(|x| !x.is_finite())
    {
        return Err(Error::Internal(
            "symmetric eigendecomposition returned non-finite values".into(),
        ));
    }
    let (idx, &value) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty matrix");
    let mut vector: Vec<f64> = eig.eigenvectors.column(idx).iter().copied().collect();
    fix_sign(&mut vector);
    Ok(Eigenpair { value, vector })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LanczosOptions {
    pub krylov_dim: usize,
    pub max_restarts: usize,
    /// Target for `‖Av − λv‖`.
    pub residual_tol: f64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            krylov_dim: 80,
            max_restarts: 500,
            residual_tol: 1e-10,
        }
    }
}

/// Restarted Lanczos with full reorthogonalization. Each cycle restarts
/// from the current Ritz vector.
pub fn lanczos_lowest<F>(
    dim: usize,
    apply: F,
    opts: &LanczosOptions,
    rng: &mut Rng,
) -> Result<Eigenpair>
where
    F: Fn(&[f64], &mut [f64]),
{
    if dim == 0 {
        return Err(Error::InvalidArgument("empty operator".into()));
    }
    let mut start: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
    let m = opts.krylov_dim.min(dim).max(1);
    let mut w = vec![0.0; dim];
    let mut last_residual = f64::INFINITY;
    for _ in 0..opts.max_restarts {
        let n0 = norm(&start);
        let mut basis: Vec<Vec<f64>> = vec![start.iter().map(|x| x / n0).collect()];
        let mut alpha = Vec::with_capacity(m);
        let mut beta: Vec<f64> = Vec::with_capacity(m);
        loop {
            let k = basis.len() - 1;
            apply(&basis[k], &mut w);
            alpha.push(dot(&w, &basis[k]));
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(&w, b);
                    w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
                }
            }
            let bnorm = norm(&w);
            if basis.len() == m || bnorm < 1e-13 {
                break;
            }
            beta.push(bnorm);
            basis.push(w.iter().map(|x| x / bnorm).collect());
        }
        let k = alpha.len();
        let t = DMatrix::from_fn(k, k, |i, j| {
            if i == j {
                alpha[i]
            } else if i + 1 == j {
                beta[i]
            } else if j + 1 == i {
                beta[j]
            } else {
                0.0
            }
        });
        let ritz = lowest_dense(&t)?;
        let mut v = vec![0.0; dim];
        for (c, b) in ritz.vector.iter().zip(&basis) {
            v.iter_mut().zip(b).for_each(|(x, y)| *x += c * y);
        }
        let nv = norm(&v);
        v.iter_mut().for_each(|x| *x /= nv);
        apply(&v, &mut w);
        let value = dot(&v, &w);
        let residual = w
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - value * b).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual < opts.residual_tol {
            fix_sign(&mut v);
            return Ok(Eigenpair { value, vector: v });
        }
        last_residual = residual;
        start = v;
    }
    Err(Error::NoConvergence(last_residual))
}
