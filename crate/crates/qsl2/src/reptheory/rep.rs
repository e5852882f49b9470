//! Finite-dimensional irreducible representations `V_m` and exact matrices.
//!
//! `V_m` (dimension `m >= 1`) has basis `w_0, ..., w_(m-1)` with
//!
//! ```text
//! K w_k = v^(m-1-2k) w_k
//! E w_k = [k]_v w_(k-1)
//! F w_k = [m-1-k]_v w_(k+1)
//! ```
//!
//! where `v = q^(1/2)` and `[n]_v = (v^n - v^-n)/(v - v^-1)` is the
//! balanced quantum integer.  All matrices are dense and exact over the
//! fraction field of Z[u, u^-1].

use crate::scalars::{q_int_factorial, LaurentScalar, RationalScalar};
use crate::uqalg::elem::AlgebraElement;
use std::fmt;

/// Balanced quantum integer `[n]_v = sum_{t=0}^{n-1} v^(n-1-2t)` (n >= 0).
pub fn balanced_int(n: u32) -> LaurentScalar {
    let mut acc = LaurentScalar::zero();
    let ni = n as i64;
    for t in 0..ni {
        acc = acc.add(&LaurentScalar::v_pow(ni - 1 - 2 * t));
    }
    acc
}

/// A dense matrix over the fraction field of Z[u, u^-1].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    /// Row-major entries; `rows[i][j]` maps basis vector `j` to `i`.
    pub rows: Vec<Vec<RationalScalar>>,
}

impl Matrix {
    /// The `n x n` zero matrix.
    pub fn zeros(n: usize) -> Self {
        Matrix {
            rows: vec![vec![RationalScalar::zero(); n]; n],
        }
    }

    /// The `n x n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i][i] = RationalScalar::one();
        }
        m
    }

    /// Matrix dimension (all matrices here are square).
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.rows[k][j];
                    if b.is_zero() {
                        continue;
                    }
                    out.rows[i][j] = out.rows[i][j].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Sum.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.dim();
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.rows[i][j] = out.rows[i][j].add(&other.rows[i][j]);
            }
        }
        out
    }

    /// Difference.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.dim();
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.rows[i][j] = out.rows[i][j].sub(&other.rows[i][j]);
            }
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &RationalScalar) -> Self {
        Matrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|e| e.mul(s)).collect())
                .collect(),
        }
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.rows[j][i] = self.rows[i][j].clone();
            }
        }
        out
    }

    /// Trace.
    pub fn trace(&self) -> RationalScalar {
        let mut acc = RationalScalar::zero();
        for i in 0..self.dim() {
            acc = acc.add(&self.rows[i][i]);
        }
        acc
    }

    /// Integer power (n >= 0).
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity(self.dim());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// True iff this is the zero matrix.
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|e| e.is_zero()))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(
                f,
                "[{}]",
                row.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        Ok(())
    }
}

/// The irreducible representation `V_m` with exact generator matrices.
#[derive(Clone, Debug)]
pub struct Rep {
    /// Dimension.
    pub m: u32,
    /// Matrix of `E`.
    pub e: Matrix,
    /// Matrix of `F`.
    pub f: Matrix,
    /// Matrix of `K`.
    pub k: Matrix,
    /// Matrix of `K^-1`.
    pub kinv: Matrix,
}

/// Construct `V_m`.
///
/// # Panics
/// Panics if `m == 0`.
pub fn rep(m: u32) -> Rep {
    assert!(m >= 1, "representation dimension must be positive");
    let n = m as usize;
    let mut e = Matrix::zeros(n);
    let mut f = Matrix::zeros(n);
    let mut k = Matrix::zeros(n);
    let mut kinv = Matrix::zeros(n);
    for kk in 0..n {
        let lam = m as i64 - 1 - 2 * kk as i64;
        k.rows[kk][kk] = RationalScalar::v_pow(lam);
        kinv.rows[kk][kk] = RationalScalar::v_pow(-lam);
        if kk >= 1 {
            e.rows[kk - 1][kk] = RationalScalar::from_laurent(balanced_int(kk as u32));
        }
        if kk + 1 < n {
            f.rows[kk + 1][kk] =
                RationalScalar::from_laurent(balanced_int(m - 1 - kk as u32));
        }
    }
    Rep { m, e, f, k, kinv }
}

impl Rep {
    /// Matrix of `K^t` for any integer `t`.
    pub fn k_pow(&self, t: i64) -> Matrix {
        let base = if t >= 0 { &self.k } else { &self.kinv };
        base.pow(t.unsigned_abs() as u32)
    }

    /// Matrix of a PBW monomial `Fdiv(a) K^b Ediv(c)`.
    pub fn pbw_matrix(&self, a: u32, b: i64, c: u32) -> Matrix {
        // Fdiv(a) K^b Ediv(c) = q^(-c/2)/([a]_q![c]_q!) F^a K^(a+b) E^c.
        let scale = RationalScalar::new(
            LaurentScalar::u_pow(-2 * c as i64),
            q_int_factorial(a).mul(&q_int_factorial(c)),
        );
        self.f
            .pow(a)
            .mul(&self.k_pow(a as i64 + b))
            .mul(&self.e.pow(c))
            .scale(&scale)
    }

    /// Matrix of an arbitrary algebra element.
    pub fn eval(&self, x: &AlgebraElement) -> Matrix {
        let mut acc = Matrix::zeros(self.m as usize);
        for ((a, b, c), coeff) in x.terms() {
            acc = acc.add(&self.pbw_matrix(*a, *b, *c).scale(coeff));
        }
        acc
    }

    /// Quantum trace on `V_m`: `tr(K^-1 rho(x))`.
    pub fn qtrace(&self, x: &AlgebraElement) -> RationalScalar {
        self.kinv.mul(&self.eval(x)).trace()
    }

    /// The self-duality intertwiner `G`: an anti-diagonal matrix with
    /// `G w_k = g_k w_(m-1-k)` satisfying `rho(S(x)) = G rho(x)^T G^-1`.
    /// Normalized so `g_(m-1) = 1`.
    pub fn duality_intertwiner(&self) -> Matrix {
        let n = self.m as usize;
        let m = self.m as i64;
        let mut g = vec![RationalScalar::one(); n];
        for j in 0..n - 1 {
            // g_(j+1) = g_j * (-[m-1-j]_v v^(m-3-2j) / [j+1]_v).
            let ji = j as i64;
            let num = RationalScalar::from_laurent(balanced_int((m - 1 - ji) as u32))
                .mul(&RationalScalar::v_pow(m - 3 - 2 * ji))
                .neg();
            let den = RationalScalar::from_laurent(balanced_int(j as u32 + 1));
            g[j + 1] = g[j].mul(&num.div(&den));
        }
        let norm = g[n - 1].clone();
        let mut out = Matrix::zeros(n);
        for (kk, gk) in g.iter().enumerate() {
            out.rows[n - 1 - kk][kk] = gk.div(&norm);
        }
        out
    }

    /// Inverse of the duality intertwiner.
    pub fn duality_intertwiner_inv(&self) -> Matrix {
        // G is anti-diagonal: G[m-1-k][k] = g_k, so G^-1[k][m-1-k] = 1/g_k.
        let g = self.duality_intertwiner();
        let n = self.m as usize;
        let mut out = Matrix::zeros(n);
        for k in 0..n {
            out.rows[k][n - 1 - k] = RationalScalar::one().div(&g.rows[n - 1 - k][k]);
        }
        out
    }
}
