use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::bessel::log_i0_and_ratio;
use crate::error::{check_len, Error, Result};
use crate::objective::RotorConfig;
use crate::rng::{seeded, STREAM_PARAMS};
use crate::scalar::Scalar;

/// Rotor RBM parameters.
///
/// The wavefunction integrates the hidden rotors out analytically:
///
/// ```text
/// ψ(θ) = exp(Σ_j ⟨c_j, v_j⟩) · Π_i 2π I₀(‖u_i‖),   u_i = b_i + Σ_j a_ij v_j
/// ```
///
/// with `v_j = (cos θ_j, sin θ_j)`. The packed parameter vector has length
/// `n·m + 2(n + m)` and is laid out as `a` (row-major, `m × n`), then the
/// `m` hidden biases `b_i`, then the `n` visible biases `c_j`, each bias
/// contributing its two components in order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct RbmParams<T> {
    n: usize,
    m: usize,
    a: Vec<T>,
    b: Vec<[T; 2]>,
    c: Vec<[T; 2]>,
}

/// Effective field `u_i` felt by each hidden rotor.
#[derive(Debug, Clone, PartialEq)]
pub struct HiddenFields<T>(pub Vec<[T; 2]>);

/// Number of hidden units for density `alpha = m / n`.
pub fn hidden_count(n: usize, alpha: f64) -> Result<usize> {
    let m = (alpha * n as f64).round();
    if !alpha.is_finite() || alpha <= 0.0 || m < 1.0 {
        return Err(Error::InvalidArgument(format!(
            "hidden density {alpha} gives no hidden units for n = {n}"
        )));
    }
    Ok(m as usize)
}

pub fn num_params(n: usize, m: usize) -> usize {
    n * m + 2 * (n + m)
}

impl<T: Scalar> RbmParams<T> {
    pub fn zeros(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            a: vec![T::zero(); n * m],
            b: vec![[T::zero(); 2]; m],
            c: vec![[T::zero(); 2]; n],
        }
    }

    pub fn from_parts(
        n: usize,
        m: usize,
        a: Vec<T>,
        b: Vec<[T; 2]>,
        c: Vec<[T; 2]>,
    ) -> Result<Self> {
        check_len(n * m, a.len())?;
        check_len(m, b.len())?;
        check_len(n, c.len())?;
        Ok(Self { n, m, a, b, c })
    }

    pub fn from_packed(n: usize, m: usize, packed: &[T]) -> Result<Self> {
        check_len(num_params(n, m), packed.len())?;
        let (a, rest) = packed.split_at(n * m);
        let (b, c) = rest.split_at(2 * m);
        let pairs = |s: &[T]| s.chunks_exact(2).map(|p| [p[0], p[1]]).collect();
        Ok(Self {
            n,
            m,
            a: a.to_vec(),
            b: pairs(b),
            c: pairs(c),
        })
    }

    pub fn pack(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.num_params());
        out.extend_from_slice(&self.a);
        out.extend(self.b.iter().flatten());
        out.extend(self.c.iter().flatten());
        out
    }

    pub fn n_visible(&self) -> usize {
        self.n
    }

    pub fn n_hidden(&self) -> usize {
        self.m
    }

    pub fn num_params(&self) -> usize {
        num_params(self.n, self.m)
    }

    /// Weight `a_ij` between hidden `i` and visible `j`.
    pub fn weight(&self, i: usize, j: usize) -> T {
        self.a[i * self.n + j]
    }

    pub fn weights(&self) -> &[T] {
        &self.a
    }

    pub fn hidden_bias(&self) -> &[[T; 2]] {
        &self.b
    }

    pub fn visible_bias(&self) -> &[[T; 2]] {
        &self.c
    }

    pub fn is_finite(&self) -> bool {
        self.a
            .iter()
            .chain(self.b.iter().flatten())
            .chain(self.c.iter().flatten())
            .all(|x| x.is_finite())
    }

    /// `p ← p - rate · delta` on the packed vector.
    pub fn apply_update(&mut self, delta: &[T], rate: T) -> Result<()> {
        check_len(self.num_params(), delta.len())?;
        let (da, rest) = delta.split_at(self.a.len());
        let (db, dc) = rest.split_at(2 * self.m);
        for (x, &d) in self.a.iter_mut().zip(da) {
            *x -= rate * d;
        }
        for (x, d) in self.b.iter_mut().flatten().zip(db) {
            *x -= rate * *d;
        }
        for (x, d) in self.c.iter_mut().flatten().zip(dc) {
            *x -= rate * *d;
        }
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite("parameter update"))
        }
    }

    /// `u_i = b_i + Σ_j a_ij (cos θ_j, sin θ_j)`.
    pub fn hidden_fields(&self, theta: &RotorConfig<T>) -> Result<HiddenFields<T>> {
        check_len(self.n, theta.len())?;
        Ok(HiddenFields(
            self.fields_from_vectors(&theta.unit_vectors()),
        ))
    }

    pub(crate) fn fields_from_vectors(&self, v: &[[T; 2]]) -> Vec<[T; 2]> {
        self.a
            .chunks_exact(self.n)
            .zip(&self.b)
            .map(|(row, b)| {
                row.iter()
                    .zip(v)
                    .fold(*b, |[ux, uy], (&a, [vx, vy])| [ux + a * *vx, uy + a * *vy])
            })
            .collect()
    }

    /// `ln ψ(θ)`; the Born density is `exp(2 ln ψ) / Z`.
    pub fn log_psi(&self, theta: &RotorConfig<T>) -> Result<T> {
        check_len(self.n, theta.len())?;
        Ok(self.log_psi_from_vectors(&theta.unit_vectors()))
    }

    pub(crate) fn log_psi_from_vectors(&self, v: &[[T; 2]]) -> T {
        let ln_tau = T::TAU().ln();
        let visible: T = self
            .c
            .iter()
            .zip(v)
            .map(|(c, v)| c[0] * v[0] + c[1] * v[1])
            .sum();
        let hidden: T = self
            .fields_from_vectors(v)
            .iter()
            .map(|u| ln_tau + log_i0_and_ratio(u[0].hypot(u[1])).0)
            .sum();
        visible + hidden
    }

    /// Packed gradient `O_k = ∂ ln ψ / ∂p_k`.
    ///
    /// With `r = I₁/I₀` and `û_i = u_i/‖u_i‖`: `∂/∂c_j = v_j`,
    /// `∂/∂b_i = r(‖u_i‖) û_i` and `∂/∂a_ij = r(‖u_i‖) ⟨û_i, v_j⟩`. A hidden
    /// unit with `u_i = 0` contributes exact zeros (the analytic limit).
    pub fn log_derivatives(&self, theta: &RotorConfig<T>) -> Result<Vec<T>> {
        check_len(self.n, theta.len())?;
        let mut out = vec![T::zero(); self.num_params()];
        self.log_derivatives_into(&theta.unit_vectors(), &mut out);
        Ok(out)
    }

    pub(crate) fn log_derivatives_into(&self, v: &[[T; 2]], out: &mut [T]) {
        let (oa, rest) = out.split_at_mut(self.n * self.m);
        let (ob, oc) = rest.split_at_mut(2 * self.m);
        for (i, u) in self.fields_from_vectors(v).into_iter().enumerate() {
            let norm = u[0].hypot(u[1]);
            let row = &mut oa[i * self.n..(i + 1) * self.n];
            if norm == T::zero() {
                row.iter_mut().for_each(|x| *x = T::zero());
                ob[2 * i] = T::zero();
                ob[2 * i + 1] = T::zero();
                continue;
            }
            let r = log_i0_and_ratio(norm).1;
            let (gx, gy) = (r * u[0] / norm, r * u[1] / norm);
            ob[2 * i] = gx;
            ob[2 * i + 1] = gy;
            for (o, vj) in row.iter_mut().zip(v) {
                *o = gx * vj[0] + gy * vj[1];
            }
        }
        for (o, vj) in oc.chunks_exact_mut(2).zip(v) {
            o[0] = vj[0];
            o[1] = vj[1];
        }
    }

    /// Random start: `a ~ N(0, σ²)` i.i.d., all biases zero, `m = round(α n)`.
    pub fn init_random(n: usize, alpha: f64, sigma: f64, seed: u64) -> Result<Self> {
        let m = hidden_count(n, alpha)?;
        let mut p = Self::zeros(n, m);
        p.a = gaussian_weights(n * m, sigma, seed)?;
        Ok(p)
    }

    /// Start concentrated near a known rotor configuration:
    /// `c_j = r (cos θ*_j, sin θ*_j)`, `b = 0`, `a ~ N(0, σ²)`.
    pub fn init_pretrained(
        theta_star: &RotorConfig<T>,
        alpha: f64,
        r: f64,
        sigma: f64,
        seed: u64,
    ) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "pretraining radius must be ≥ 0, got {r}"
            )));
        }
        let mut p = Self::init_random(theta_star.len(), alpha, sigma, seed)?;
        let r = T::lit(r);
        p.c = theta_star
            .unit_vectors()
            .into_iter()
            .map(|[x, y]| [r * x, r * y])
            .collect();
        Ok(p)
    }
}

fn gaussian_weights<T: Scalar>(len: usize, sigma: f64, seed: u64) -> Result<Vec<T>> {
    if sigma < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "weight scale must be ≥ 0, got {sigma}"
        )));
    }
    let dist = Normal::new(0.0, sigma).map_err(|_| {
        Error::InvalidArgument(format!("weight scale must be finite and ≥ 0, got {sigma}"))
    })?;
    let mut rng = seeded(seed, STREAM_PARAMS);
    Ok((0..len).map(|_| T::lit(dist.sample(&mut rng))).collect())
}
