//! Lévy measures for the jump part of the underlying asset process.
//!
//! Three parametric families are supported next to the degenerate zero
//! measure: the Merton model with normally distributed log-jumps, the Kou
//! double-exponential model (both finite activity), and the Variance Gamma
//! process (infinite activity, finite variation). Each model knows its
//! admissibility envelope, and can be discretized into a [`JumpQuadrature`]
//! for the PIDE scheme and the hedging integrals.

use crate::error::{Error, Result};

/// Parametric Lévy measure of the log-price jump process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LevyModel {
    /// No jumps; the density is identically zero.
    Zero,
    /// Normally distributed log-jumps arriving at a Poisson rate.
    Merton {
        /// Jump arrival rate (jumps per year).
        intensity: f64,
        /// Mean of the log-jump size.
        mean: f64,
        /// Standard deviation of the log-jump size.
        std_dev: f64,
    },
    /// Double-exponential (asymmetric Laplace) log-jumps.
    Kou {
        /// Jump arrival rate (jumps per year).
        intensity: f64,
        /// Probability that a jump is positive.
        p_up: f64,
        /// Exponential decay rate of positive jumps.
        decay_up: f64,
        /// Exponential decay rate of negative jumps.
        decay_down: f64,
    },
    /// Variance Gamma process: Brownian motion with drift `theta` and
    /// volatility `sigma`, time-changed by a gamma subordinator with
    /// variance rate `kappa`.
    VarianceGamma {
        /// Drift of the subordinated Brownian motion.
        theta: f64,
        /// Volatility of the subordinated Brownian motion.
        sigma: f64,
        /// Variance of the gamma subordinator per unit time.
        kappa: f64,
    },
}

impl LevyModel {
    /// Merton jump-diffusion measure.
    pub fn merton(intensity: f64, mean: f64, std_dev: f64) -> Result<Self> {
        if !(intensity > 0.0) || !intensity.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "merton intensity must be > 0, got {intensity}"
            )));
        }
        if !mean.is_finite() {
            return Err(Error::InvalidParameter("merton mean must be finite".into()));
        }
        if !(std_dev > 0.0) || !std_dev.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "merton std_dev must be > 0, got {std_dev}"
            )));
        }
        Ok(LevyModel::Merton {
            intensity,
            mean,
            std_dev,
        })
    }

    /// Kou double-exponential measure.
    pub fn kou(intensity: f64, p_up: f64, decay_up: f64, decay_down: f64) -> Result<Self> {
        if !(intensity > 0.0) || !intensity.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "kou intensity must be > 0, got {intensity}"
            )));
        }
        if !(0.0..=1.0).contains(&p_up) {
            return Err(Error::InvalidParameter(format!(
                "kou p_up must lie in [0, 1], got {p_up}"
            )));
        }
        if !(decay_up > 0.0) || !(decay_down > 0.0) {
            return Err(Error::InvalidParameter(
                "kou decay rates must be > 0".into(),
            ));
        }
        Ok(LevyModel::Kou {
            intensity,
            p_up,
            decay_up,
            decay_down,
        })
    }

    /// Variance Gamma measure. Rejects parameter sets for which
    /// `exp(y) nu(dy)` fails to integrate near `+inf`, i.e. `B - A <= 1`.
    pub fn variance_gamma(theta: f64, sigma: f64, kappa: f64) -> Result<Self> {
        if !(sigma > 0.0) || !(kappa > 0.0) || !theta.is_finite() {
            return Err(Error::InvalidParameter(
                "variance gamma requires sigma > 0, kappa > 0, finite theta".into(),
            ));
        }
        let model = LevyModel::VarianceGamma {
            theta,
            sigma,
            kappa,
        };
        let (a, b) = model.vg_constants().expect("vg constants");
        if b - a - 1.0 <= 0.0 {
            return Err(Error::Integrability(format!(
                "variance gamma needs B - A - 1 > 0 for the exponential moment, got B - A - 1 = {}",
                b - a - 1.0
            )));
        }
        Ok(model)
    }

    /// `true` for measures with infinite total mass (Variance Gamma).
    pub fn is_infinite_activity(&self) -> bool {
        matches!(self, LevyModel::VarianceGamma { .. })
    }

    /// `true` for the degenerate zero measure.
    pub fn is_zero(&self) -> bool {
        matches!(self, LevyModel::Zero)
    }

    /// Derived Variance Gamma constants `A = theta / sigma^2` and
    /// `B = sigma^{-2} sqrt(theta^2 + 2 sigma^2 / kappa)`.
    pub fn vg_constants(&self) -> Option<(f64, f64)> {
        match *self {
            LevyModel::VarianceGamma {
                theta,
                sigma,
                kappa,
            } => {
                let s2 = sigma * sigma;
                let a = theta / s2;
                let b = (theta * theta + 2.0 * s2 / kappa).sqrt() / s2;
                Some((a, b))
            }
            _ => None,
        }
    }

    /// Lévy density `nu(z)` per unit log-jump size.
    ///
    /// The Variance Gamma density is singular at the origin and evaluation
    /// there is an error; all other models are defined everywhere.
    pub fn density(&self, z: f64) -> Result<f64> {
        match *self {
            LevyModel::Zero => Ok(0.0),
            LevyModel::Merton {
                intensity,
                mean,
                std_dev,
            } => {
                let t = (z - mean) / std_dev;
                Ok(intensity / (std_dev * (2.0 * std::f64::consts::PI).sqrt())
                    * (-0.5 * t * t).exp())
            }
            LevyModel::Kou {
                intensity,
                p_up,
                decay_up,
                decay_down,
            } => {
                if z > 0.0 {
                    Ok(intensity * p_up * decay_up * (-decay_up * z).exp())
                } else if z < 0.0 {
                    Ok(intensity * (1.0 - p_up) * decay_down * (decay_down * z).exp())
                } else {
                    Ok(0.0)
                }
            }
            LevyModel::VarianceGamma { kappa, .. } => {
                if z == 0.0 {
                    return Err(Error::SingularDensity);
                }
                let (a, b) = self.vg_constants().expect("vg constants");
                Ok((a * z - b * z.abs()).exp() / (kappa * z.abs()))
            }
        }
    }

    /// Admissibility envelope with shape parameters per model family and the
    /// constant `C` fitted numerically (maximum of density/shape over the
    /// certification grid `[-3, 3] \ {0}`).
    pub fn envelope_params(&self) -> Result<AdmissibleEnvelope> {
        let (alpha, d_minus, d_plus, mu) = match *self {
            LevyModel::Zero => return Err(Error::NoEnvelope),
            LevyModel::Merton { std_dev, .. } => {
                (0.0, 0.0, 0.0, 1.0 / (2.0 * std_dev * std_dev))
            }
            LevyModel::Kou {
                decay_up,
                decay_down,
                ..
            } => (0.0, -decay_up, decay_down, 0.0),
            LevyModel::VarianceGamma { .. } => {
                let (a, b) = self.vg_constants().expect("vg constants");
                (1.0, a - b, a + b, 0.0)
            }
        };
        // Smallest C on the scan grid; Kou and Variance Gamma ratios are
        // constant in z, for Merton the maximum sits at a grid endpoint.
        let mut c_max = 0.0_f64;
        let steps = 6000;
        for k in 0..=steps {
            let z = -3.0 + 6.0 * k as f64 / steps as f64;
            if z.abs() < 1e-12 {
                continue;
            }
            let shape = envelope_shape(z, alpha, d_minus, d_plus, mu);
            let ratio = self.density(z)? / shape;
            if ratio > c_max {
                c_max = ratio;
            }
        }
        AdmissibleEnvelope::new(c_max, alpha, d_minus, d_plus, mu)
    }

    /// `true` if the exponential moment `int_{|y| >= 1} e^y nu(dy)` is finite.
    pub fn has_exp_moment(&self) -> bool {
        match *self {
            LevyModel::Zero | LevyModel::Merton { .. } => true,
            LevyModel::Kou { decay_up, .. } => decay_up > 1.0,
            // Enforced at construction.
            LevyModel::VarianceGamma { .. } => true,
        }
    }

    /// Closed-form `int (e^y - 1) nu(dy)`, the compensator of the
    /// uncompensated jump part under the exponential map.
    pub fn exp_compensator(&self) -> Result<f64> {
        match *self {
            LevyModel::Zero => Ok(0.0),
            LevyModel::Merton {
                intensity,
                mean,
                std_dev,
            } => Ok(intensity * ((mean + 0.5 * std_dev * std_dev).exp() - 1.0)),
            LevyModel::Kou {
                intensity,
                p_up,
                decay_up,
                decay_down,
            } => {
                if decay_up <= 1.0 {
                    return Err(Error::Integrability(format!(
                        "kou exponential moment diverges for decay_up = {decay_up} <= 1"
                    )));
                }
                Ok(intensity
                    * (p_up * decay_up / (decay_up - 1.0)
                        + (1.0 - p_up) * decay_down / (decay_down + 1.0)
                        - 1.0))
            }
            LevyModel::VarianceGamma {
                theta,
                sigma,
                kappa,
            } => {
                let inner = 1.0 - theta * kappa - 0.5 * sigma * sigma * kappa;
                if inner <= 0.0 {
                    return Err(Error::Integrability(
                        "variance gamma exponential moment diverges".into(),
                    ));
                }
                Ok(-inner.ln() / kappa)
            }
        }
    }

    /// Risk-neutral drift `gamma` making `e^{X_t}` a martingale:
    /// `gamma = -sigma^2/2 - int (e^y - 1 - y 1_{|y|<=1}) nu(dy)`.
    ///
    /// The integral is evaluated by midpoint quadrature with step `1e-3`
    /// over `[-10, 10]`; the midpoint nodes avoid the Variance Gamma
    /// singularity at the origin.
    pub fn martingale_drift(&self, sigma: f64) -> Result<f64> {
        if !self.has_exp_moment() {
            return Err(Error::Integrability(
                "exponential moment int_{|y|>=1} e^y nu(dy) diverges".into(),
            ));
        }
        let diffusion = -0.5 * sigma * sigma;
        if self.is_zero() {
            return Ok(diffusion);
        }
        let h = 1e-3;
        let n = (20.0 / h) as usize;
        let mut integral = 0.0;
        for k in 0..n {
            let y = -10.0 + (k as f64 + 0.5) * h;
            let f = y.exp() - 1.0 - if y.abs() <= 1.0 { y } else { 0.0 };
            integral += f * self.density(y)?;
        }
        Ok(diffusion - integral * h)
    }

    /// Default truncation interval `[-B, B]` for jump quadrature: the
    /// smallest symmetric bound at which the admissibility envelope has
    /// fallen below `1e-10` of its reference peak (evaluated at
    /// `|z| = 1e-3` for singular densities), floored at 1.
    pub fn default_truncation(&self) -> (f64, f64) {
        let env = match self.envelope_params() {
            Ok(env) => env,
            Err(_) => return (-1.0, 1.0),
        };
        let peak = env.bound(-1e-3).max(env.bound(1e-3));
        let target = 1e-10 * peak;
        let mut b = 1.0;
        while env.bound(b).max(env.bound(-b)) > target && b < 50.0 {
            b += 0.05;
        }
        (-b, b)
    }
}

/// Shape function of the admissibility envelope without the constant `C`:
/// `|z|^{-alpha} (e^{D^- z} 1_{z>=0} + e^{D^+ z} 1_{z<0}) e^{-mu z^2}`.
fn envelope_shape(z: f64, alpha: f64, d_minus: f64, d_plus: f64, mu: f64) -> f64 {
    let exp_part = if z >= 0.0 {
        (d_minus * z).exp()
    } else {
        (d_plus * z).exp()
    };
    z.abs().powf(-alpha) * exp_part * (-mu * z * z).exp()
}

/// Envelope `h(z) = C |z|^{-alpha} (e^{D^- z} 1_{z>=0} + e^{D^+ z} 1_{z<0}) e^{-mu z^2}`
/// dominating an admissible Lévy density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibleEnvelope {
    pub c: f64,
    pub alpha: f64,
    pub d_minus: f64,
    pub d_plus: f64,
    pub mu: f64,
}

impl AdmissibleEnvelope {
    /// Validates the shape parameters, including the integrability
    /// condition `D^- + 1 < 0 < D^+` required when `mu = 0`, and
    /// `alpha < 3` when `mu > 0`.
    pub fn new(c: f64, alpha: f64, d_minus: f64, d_plus: f64, mu: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "envelope constant must be > 0, got {c}"
            )));
        }
        if alpha < 0.0 || mu < 0.0 {
            return Err(Error::InvalidParameter(
                "envelope requires alpha >= 0 and mu >= 0".into(),
            ));
        }
        if mu == 0.0 {
            if !(d_minus + 1.0 < 0.0 && 0.0 < d_plus) {
                return Err(Error::InvalidParameter(format!(
                    "envelope with mu = 0 requires D^- + 1 < 0 < D^+, got D^- = {d_minus}, D^+ = {d_plus}"
                )));
            }
        } else if alpha >= 3.0 {
            return Err(Error::InvalidParameter(format!(
                "envelope with mu > 0 requires alpha < 3, got {alpha}"
            )));
        }
        Ok(AdmissibleEnvelope {
            c,
            alpha,
            d_minus,
            d_plus,
            mu,
        })
    }

    /// Envelope value `h(z)`.
    pub fn bound(&self, z: f64) -> f64 {
        self.c * envelope_shape(z, self.alpha, self.d_minus, self.d_plus, self.mu)
    }
}

/// Checks `density(z) <= h(z)` at every sample within relative slack `1e-12`.
///
/// Samples at exactly `z = 0` are skipped when the envelope is singular
/// there (`alpha > 0`).
pub fn check_admissible(model: &LevyModel, env: &AdmissibleEnvelope, samples: &[f64]) -> bool {
    for &z in samples {
        if z == 0.0 && env.alpha > 0.0 {
            continue;
        }
        let density = match model.density(z) {
            Ok(d) => d,
            Err(_) => continue,
        };
        if density > env.bound(z) * (1.0 + 1e-12) {
            return false;
        }
    }
    true
}

/// Midpoint-rule discretization of a Lévy measure on a truncated interval.
///
/// Nodes sit at `z_k = k dz` for `k = k_left..=k_right`; the weight of node
/// `k` is `(nu(z_k - dz/2) + nu(z_k + dz/2)) dz / 2`. For infinite-activity
/// measures the origin node carries weight zero: the half-cell endpoints of
/// its neighbours stay clear of the singularity and the compensated
/// integrands the scheme uses vanish there.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpQuadrature {
    dz: f64,
    k_left: i32,
    k_right: i32,
    weights: Vec<f64>,
    infinite_activity: bool,
}

impl JumpQuadrature {
    /// Builds the quadrature for `model` covering `[b_left, b_right]`.
    pub fn build(model: &LevyModel, b_left: f64, b_right: f64, dz: f64) -> Result<Self> {
        if !(dz > 0.0) || !dz.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "quadrature step must be > 0, got {dz}"
            )));
        }
        if !(b_left < 0.0 && b_right > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "truncation must satisfy B_l < 0 < B_r, got [{b_left}, {b_right}]"
            )));
        }
        // [B_l, B_r] subset of [(K_l - 1/2) dz, (K_r + 1/2) dz]
        let k_left = (b_left / dz + 0.5).floor() as i32;
        let k_right = (b_right / dz - 0.5).ceil() as i32;
        let infinite_activity = model.is_infinite_activity();
        let mut weights = Vec::with_capacity((k_right - k_left + 1) as usize);
        for k in k_left..=k_right {
            if k == 0 && infinite_activity {
                weights.push(0.0);
                continue;
            }
            let z = k as f64 * dz;
            let w = 0.5 * (model.density(z - 0.5 * dz)? + model.density(z + 0.5 * dz)?) * dz;
            debug_assert!(w.is_finite() && w >= 0.0);
            weights.push(w);
        }
        Ok(JumpQuadrature {
            dz,
            k_left,
            k_right,
            weights,
            infinite_activity,
        })
    }

    pub fn step(&self) -> f64 {
        self.dz
    }

    pub fn k_left(&self) -> i32 {
        self.k_left
    }

    pub fn k_right(&self) -> i32 {
        self.k_right
    }

    pub fn is_infinite_activity(&self) -> bool {
        self.infinite_activity
    }

    /// Node position `z_k`.
    pub fn node(&self, k: i32) -> f64 {
        k as f64 * self.dz
    }

    /// Quadrature weight `nu_k`.
    pub fn weight(&self, k: i32) -> f64 {
        self.weights[(k - self.k_left) as usize]
    }

    /// Iterates `(z_k, nu_k)` pairs in node order.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        (self.k_left..=self.k_right).map(move |k| (self.node(k), self.weight(k)))
    }

    /// Total intensity `lambda = sum_k nu_k` of a finite-activity measure.
    pub fn total_intensity(&self) -> Result<f64> {
        if self.infinite_activity {
            return Err(Error::ActivityClass(
                "total intensity is infinite for an infinite-activity measure".into(),
            ));
        }
        Ok(self.weights.iter().sum())
    }

    /// `sum_k (e^{z_k} - 1)^2 nu_k`, the quadratic exponential moment used
    /// by the hedging weights.
    pub fn exp_square_moment(&self) -> f64 {
        self.nodes()
            .map(|(z, w)| {
                let e = z.exp_m1();
                e * e * w
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn merton_spec() -> LevyModel {
        LevyModel::merton(0.1, -0.2, 0.15).unwrap()
    }

    fn kou_spec() -> LevyModel {
        LevyModel::kou(3.0, 0.5, 10.0, 5.0).unwrap()
    }

    fn vg_spec() -> LevyModel {
        LevyModel::variance_gamma(-0.33, 0.12, 0.16).unwrap()
    }

    #[test]
    fn zero_density_is_zero() {
        assert_eq!(LevyModel::Zero.density(0.3).unwrap(), 0.0);
        assert_eq!(LevyModel::Zero.density(0.0).unwrap(), 0.0);
    }

    #[test]
    fn merton_density_at_mode() {
        // Direct evaluation at z = m: the Gaussian factor is 1.
        let expected = 0.1 / (0.15 * (2.0 * std::f64::consts::PI).sqrt());
        assert_abs_diff_eq!(
            merton_spec().density(-0.2).unwrap(),
            expected,
            epsilon = 1e-15
        );
    }

    #[test]
    fn vg_constants_arithmetic() {
        let (a, b) = vg_spec().vg_constants().unwrap();
        let s2 = 0.12_f64 * 0.12;
        assert_abs_diff_eq!(a, -0.33 / s2, epsilon = 1e-12);
        assert_abs_diff_eq!(
            b,
            (0.33_f64 * 0.33 + 2.0 * s2 / 0.16).sqrt() / s2,
            epsilon = 1e-12
        );
        assert!(b - a - 1.0 > 0.0);
    }

    #[test]
    fn vg_density_singular_at_origin() {
        assert_eq!(vg_spec().density(0.0), Err(Error::SingularDensity));
    }

    #[test]
    fn vg_construction_rejects_divergent_exponential_moment() {
        // Large kappa pushes B - A below 1.
        let r = LevyModel::variance_gamma(0.9, 0.5, 4.0);
        assert!(matches!(r, Err(Error::Integrability(_))));
    }

    #[test]
    fn envelope_merton() {
        let env = merton_spec().envelope_params().unwrap();
        assert_eq!(env.alpha, 0.0);
        assert_eq!(env.d_minus, 0.0);
        assert_eq!(env.d_plus, 0.0);
        assert_abs_diff_eq!(env.mu, 1.0 / (2.0 * 0.0225), epsilon = 1e-12);
    }

    #[test]
    fn envelope_kou() {
        let env = kou_spec().envelope_params().unwrap();
        assert_eq!(env.alpha, 0.0);
        assert_eq!(env.mu, 0.0);
        assert_eq!(env.d_plus, 5.0);
        assert_eq!(env.d_minus, -10.0);
    }

    #[test]
    fn envelope_vg() {
        let env = vg_spec().envelope_params().unwrap();
        let (a, b) = vg_spec().vg_constants().unwrap();
        assert_eq!(env.alpha, 1.0);
        assert_eq!(env.mu, 0.0);
        assert_abs_diff_eq!(env.d_plus, a + b, epsilon = 1e-12);
        assert_abs_diff_eq!(env.d_minus, a - b, epsilon = 1e-12);
        // The VG density/shape ratio is the constant 1/kappa.
        assert_abs_diff_eq!(env.c, 1.0 / 0.16, epsilon = 1e-9);
    }

    #[test]
    fn envelope_zero_model_errors() {
        assert_eq!(LevyModel::Zero.envelope_params(), Err(Error::NoEnvelope));
    }

    #[test]
    fn envelope_invariants_enforced() {
        // mu = 0 demands D^- + 1 < 0 < D^+.
        assert!(AdmissibleEnvelope::new(1.0, 0.0, -0.5, 2.0, 0.0).is_err());
        assert!(AdmissibleEnvelope::new(1.0, 0.0, -2.0, -1.0, 0.0).is_err());
        // mu > 0 demands alpha < 3.
        assert!(AdmissibleEnvelope::new(1.0, 3.0, 0.0, 0.0, 1.0).is_err());
        assert!(AdmissibleEnvelope::new(1.0, 2.9, 0.0, 0.0, 1.0).is_ok());
    }

    fn sample_grid() -> Vec<f64> {
        // [-3, 3] \ {0} with step 0.005, aligned with the C-fitting grid.
        (0..=1200)
            .map(|k| -3.0 + k as f64 * 0.005)
            .filter(|z| z.abs() > 1e-12)
            .collect()
    }

    #[test]
    fn builtin_models_admissible_under_own_envelope() {
        let grid = sample_grid();
        for model in [merton_spec(), kou_spec(), vg_spec()] {
            let env = model.envelope_params().unwrap();
            assert!(
                check_admissible(&model, &env, &grid),
                "{model:?} violates its own envelope"
            );
        }
    }

    #[test]
    fn zero_model_admissible_under_any_envelope() {
        let env = AdmissibleEnvelope::new(0.5, 0.0, -2.0, 3.0, 0.0).unwrap();
        assert!(check_admissible(&LevyModel::Zero, &env, &sample_grid()));
    }

    #[test]
    fn weakened_envelope_rejected() {
        // Halve mu and pick C below the density peak: the bound must fail.
        let model = merton_spec();
        let good = model.envelope_params().unwrap();
        let peak = model.density(-0.2).unwrap();
        let bad =
            AdmissibleEnvelope::new(peak / 2.0, good.alpha, good.d_minus, good.d_plus, good.mu / 2.0)
                .unwrap();
        assert!(!check_admissible(&model, &bad, &[-0.2]));
    }

    #[test]
    fn quadrature_zero_measure() {
        let q = JumpQuadrature::build(&LevyModel::Zero, -5.0, 5.0, 0.01).unwrap();
        assert_eq!(q.total_intensity().unwrap(), 0.0);
        assert!(q.nodes().all(|(_, w)| w == 0.0));
    }

    #[test]
    fn quadrature_covers_truncation_interval() {
        let q = JumpQuadrature::build(&merton_spec(), -5.0, 5.0, 0.01).unwrap();
        assert!((q.k_left() as f64 - 0.5) * q.step() <= -5.0);
        assert!((q.k_right() as f64 + 0.5) * q.step() >= 5.0);
    }

    #[test]
    fn merton_mass_matches_intensity() {
        // int nu = lambda_j analytically.
        let q = JumpQuadrature::build(&merton_spec(), -5.0, 5.0, 0.01).unwrap();
        assert_abs_diff_eq!(q.total_intensity().unwrap(), 0.1, epsilon = 1e-3);
    }

    #[test]
    fn kou_mass_matches_intensity() {
        let q = JumpQuadrature::build(&kou_spec(), -5.0, 5.0, 0.005).unwrap();
        assert_abs_diff_eq!(q.total_intensity().unwrap(), 3.0, epsilon = 1e-2);
    }

    #[test]
    fn vg_total_intensity_is_activity_error() {
        let q = JumpQuadrature::build(&vg_spec(), -2.0, 2.0, 0.01).unwrap();
        assert!(matches!(q.total_intensity(), Err(Error::ActivityClass(_))));
        assert_eq!(q.weight(0), 0.0);
    }

    #[test]
    fn quadrature_rejects_bad_arguments() {
        let m = merton_spec();
        assert!(JumpQuadrature::build(&m, -5.0, 5.0, 0.0).is_err());
        assert!(JumpQuadrature::build(&m, 1.0, 5.0, 0.01).is_err());
        assert!(JumpQuadrature::build(&m, -5.0, -1.0, 0.01).is_err());
    }

    #[test]
    fn quadrature_second_moment_converges() {
        // Halving the step must shrink the change in sum (e^z - 1)^2 nu_k;
        // the midpoint-average rule is better than first order.
        for model in [merton_spec(), kou_spec(), vg_spec()] {
            let m = |dz: f64| {
                JumpQuadrature::build(&model, -5.0, 5.0, dz)
                    .unwrap()
                    .exp_square_moment()
            };
            let c1 = (m(0.02) - m(0.01)).abs();
            let c2 = (m(0.01) - m(0.005)).abs();
            assert!(
                c2 <= 0.6 * c1 + 1e-14,
                "{model:?}: changes {c1:e} -> {c2:e} not converging"
            );
        }
    }

    #[test]
    fn densities_nonnegative() {
        let grid = sample_grid();
        for model in [merton_spec(), kou_spec(), vg_spec(), LevyModel::Zero] {
            for &z in &grid {
                assert!(model.density(z).unwrap() >= 0.0);
            }
        }
    }

    #[test]
    fn martingale_drift_zero_measure() {
        assert_abs_diff_eq!(
            LevyModel::Zero.martingale_drift(0.12).unwrap(),
            -0.0072,
            epsilon = 1e-15
        );
    }

    #[test]
    fn martingale_drift_merton_cross_check() {
        // Quadrature of (e^y - 1) nu against the compound-Poisson moment
        // lambda (e^{m + delta^2/2} - 1).
        let model = merton_spec();
        let sigma = 0.2;
        let gamma = model.martingale_drift(sigma).unwrap();
        // gamma = -sigma^2/2 - int(e^y - 1 - y 1_{|y|<=1}) nu
        //       = -sigma^2/2 - c1 + int_{|y|<=1} y nu.
        let c1 = model.exp_compensator().unwrap();
        let h = 2e-4;
        let mut m1_small = 0.0;
        let mut k = 0;
        while (k as f64 + 0.5) * h <= 1.0 {
            for sign in [-1.0, 1.0] {
                let y = sign * (k as f64 + 0.5) * h;
                m1_small += y * model.density(y).unwrap() * h;
            }
            k += 1;
        }
        let expected = -0.5 * sigma * sigma - c1 + m1_small;
        assert_abs_diff_eq!(gamma, expected, epsilon = 1e-6);
    }

    #[test]
    fn martingale_drift_vg_finite() {
        let gamma = vg_spec().martingale_drift(0.12).unwrap();
        assert!(gamma.is_finite());
        // Same identity as the Merton check, all terms independent.
        let c1 = vg_spec().exp_compensator().unwrap();
        let h = 2e-4;
        let mut m1_small = 0.0;
        let mut k = 0;
        while (k as f64 + 0.5) * h <= 1.0 {
            for sign in [-1.0, 1.0] {
                let y = sign * (k as f64 + 0.5) * h;
                m1_small += y * vg_spec().density(y).unwrap() * h;
            }
            k += 1;
        }
        let expected = -0.5 * 0.12 * 0.12 - c1 + m1_small;
        assert_abs_diff_eq!(gamma, expected, epsilon = 1e-5);
    }

    #[test]
    fn martingale_drift_kou_divergent_tail() {
        let model = LevyModel::kou(1.0, 0.5, 0.8, 5.0).unwrap();
        assert!(matches!(
            model.martingale_drift(0.2),
            Err(Error::Integrability(_))
        ));
        assert!(matches!(
            model.exp_compensator(),
            Err(Error::Integrability(_))
        ));
    }

    #[test]
    fn default_truncation_covers_density_mass() {
        for model in [merton_spec(), kou_spec(), vg_spec()] {
            let (bl, br) = model.default_truncation();
            assert!(bl < 0.0 && br > 0.0);
            assert_eq!(bl, -br);
            // The envelope at the bound is tiny relative to its peak.
            let env = model.envelope_params().unwrap();
            let peak = env.bound(-1e-3).max(env.bound(1e-3));
            assert!(env.bound(br).max(env.bound(bl)) <= 1e-10 * peak);
        }
    }
}
