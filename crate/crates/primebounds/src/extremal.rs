//! Graham–Vaaler one-sided approximants of exponential type 2π to the
//! truncated exponential I_λ(u) = 1_{[0,∞)}(sgn(λ)u)·e^{-λu}, their
//! weights φ_{±,λ} supported on [-1, 1], and the glued contour weight Φ_λ^±.
//!
//! Fourier convention: f̂(x) = ∫ f(t) e^{-2πixt} dt, so that φ̂_{±,λ} is the
//! majorant (minorant) of I_λ on the real line.

use crate::error::{Error, Result};
use crate::quad::{gauss_legendre, gauss_panels};
use crate::special_fn::{coth_stable, cot_stable};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Nodes closer than this to an integer take the interpolated node value.
const NODE_SNAP: f64 = 1e-6;
const MIN_TERMS: usize = 50;
const SERIES_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Majorant,
    Minorant,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Majorant => 1.0,
            Side::Minorant => -1.0,
        }
    }
}

/// I_λ(u) = e^{-λu} for sgn(λ)u ≥ 0 and 0 otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedExponential {
    lambda: f64,
}

impl TruncatedExponential {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::Domain(format!("decay rate must be finite and nonzero, got {lambda}")));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

pub fn truncated_exp(i: &TruncatedExponential, u: f64) -> f64 {
    if i.lambda.signum() * u >= 0.0 {
        (-i.lambda * u).exp()
    } else {
        0.0
    }
}

/// Signed decay rate λ together with the side; ν = |λ|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproximantParams {
    lambda: f64,
    side: Side,
}

impl ApproximantParams {
    pub fn new(lambda: f64, side: Side) -> Result<Self> {
        TruncatedExponential::new(lambda)?;
        Ok(Self { lambda, side })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn nu(&self) -> f64 {
        self.lambda.abs()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn target(&self) -> TruncatedExponential {
        TruncatedExponential { lambda: self.lambda }
    }
}

fn w_of(nu: f64, z: Complex64) -> Complex64 {
    Complex64::new(nu, 0.0) - Complex64::new(0.0, 2.0 * PI) * z
}

/// Distance of w/2 from the nearest pole iπk of coth, and that k.
fn pole_offset(half_w: Complex64) -> (f64, f64) {
    let k = (half_w.im / PI).round();
    (Complex64::new(half_w.re, half_w.im - PI * k).norm(), k)
}

const POLE_GUARD: f64 = 1e-12;

fn pole_error(z: Complex64) -> Error {
    Error::Pole { what: "glued weight", at: format!("{z}") }
}

/// Φ_ν^{±,∘}(z) = (coth(w/2) ± 1)/2 with w = -2πiz + ν.
pub fn phi_circ(nu: f64, side: Side, z: Complex64) -> Result<Complex64> {
    let half_w = w_of(nu, z) * 0.5;
    if pole_offset(half_w).0 < POLE_GUARD {
        return Err(pole_error(z));
    }
    let c = coth_stable(half_w)?;
    Ok((c + side.sign()) * 0.5)
}

/// Φ_ν^{±,⋆}(z) = (i/2π)((ν/2)coth(ν/2) - (w/2)coth(w/2) ± πiz).
pub fn phi_star(nu: f64, side: Side, z: Complex64) -> Result<Complex64> {
    let half_w = w_of(nu, z) * 0.5;
    let (dist, k) = pole_offset(half_w);
    if dist < POLE_GUARD && k != 0.0 {
        return Err(pole_error(z));
    }
    let wc = if half_w.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { half_w * coth_stable(half_w)? };
    let nc = 0.5 * nu / (0.5 * nu).tanh();
    let inner = Complex64::new(nc, 0.0) - wc + Complex64::new(0.0, side.sign() * PI) * z;
    Ok(Complex64::new(0.0, 1.0 / (2.0 * PI)) * inner)
}

/// φ_{±,λ}(t) = φ_ν^±(sgn(λ)t), where
/// φ_ν^±(t) = 1_{[-1,1]}(t)(Φ_ν^{±,∘}(t) + sgn(t)Φ_ν^{±,⋆}(t)).
pub fn phi_weight(p: &ApproximantParams, t: f64) -> Complex64 {
    let u = p.lambda.signum() * t;
    if u.abs() > 1.0 {
        return Complex64::new(0.0, 0.0);
    }
    let z = Complex64::new(u, 0.0);
    // w has real part ν > 0 on the real axis, so neither component has a pole.
    let circ = phi_circ(p.nu(), p.side, z).expect("no poles on the real axis");
    let star = phi_star(p.nu(), p.side, z).expect("no poles on the real axis");
    circ + star * sign0(u)
}

fn sign0(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// (sin πx/π)², computed after reducing x mod 1 to keep the phase accurate.
fn sin_sq_over_pi_sq(x: f64) -> f64 {
    let r = x - x.round();
    let s = (PI * r).sin() / PI;
    s * s
}

/// (sin πx / πx)².
pub fn sinc_sq(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    sin_sq_over_pi_sq(x) / (x * x)
}

/// The Graham–Vaaler majorant M_ν(x) of E_ν(x) = 1_{[0,∞)}(x)e^{-νx}:
/// (sin πx/π)² {Σ_{n≥1} e^{-νn}(1/(x-n)² - νn/(x(x-n))) + 1/x²}.
fn majorant_nu(nu: f64, x: f64) -> f64 {
    let nearest = x.round();
    if (x - nearest).abs() < NODE_SNAP {
        return if nearest >= 0.0 { (-nu * nearest).exp() } else { 0.0 };
    }
    let q = (-nu).exp();
    let geo_tail = 1.0 / (1.0 - q);
    let mut acc = 1.0 / (x * x);
    let mut comp = 0.0;
    let mut en = 1.0;
    let mut n = 1usize;
    let n_min = MIN_TERMS.max((2.0 * x.abs()) as usize + MIN_TERMS);
    loop {
        en *= q;
        let nf = n as f64;
        let d = x - nf;
        let term = en * (1.0 / (d * d) - nu * nf / (x * d));
        // Neumaier step: the n near x terms dominate and later ones are tiny.
        let t = acc + term;
        if acc.abs() >= term.abs() {
            comp += (acc - t) + term;
        } else {
            comp += (term - t) + acc;
        }
        acc = t;
        if n >= n_min {
            let dn = (nf - x).abs().max(1.0);
            let bound = en * (1.0 / (dn * dn) + nu * nf / (x.abs() * dn)) * geo_tail;
            if bound < SERIES_TOL * (1.0 + acc.abs()) || en == 0.0 {
                break;
            }
        }
        n += 1;
    }
    sin_sq_over_pi_sq(x) * (acc + comp)
}

/// φ̂_{±,λ}(x): the extremal majorant M_ν(sgn(λ)x) or minorant
/// L_ν(sgn(λ)x) = M_ν(sgn(λ)x) - sinc²(x) of I_λ.
pub fn phi_hat(p: &ApproximantParams, x: f64) -> f64 {
    let u = p.lambda.signum() * x;
    let m = majorant_nu(p.nu(), u);
    match p.side {
        Side::Majorant => m,
        Side::Minorant => m - sinc_sq(u),
    }
}

/// φ̂_{±,λ}(x) for λ > 0 through the Lerch transcendent, using
/// Σ_{n≥1} qⁿ/(n-x)² = qΦ(q, 2, 1-x) and
/// Σ_{n≥1} n qⁿ/(n-x) = q/(1-q) + x·qΦ(q, 1, 1-x) with q = e^{-ν}.
pub fn phi_hat_lerch(p: &ApproximantParams, x: f64) -> Result<f64> {
    use crate::special_fn::lerch;
    if p.lambda <= 0.0 {
        return Err(Error::Domain("the Lerch form is implemented for λ > 0".into()));
    }
    let nu = p.nu();
    let nearest = x.round();
    if (x - nearest).abs() < NODE_SNAP {
        let node = if nearest >= 0.0 { (-nu * nearest).exp() } else { 0.0 };
        let sinc = if nearest == 0.0 { 1.0 } else { 0.0 };
        return Ok(match p.side {
            Side::Majorant => node,
            Side::Minorant => node - sinc,
        });
    }
    let q = (-nu).exp();
    let alpha = Complex64::new(1.0 - x, 0.0);
    let zq = Complex64::new(q, 0.0);
    // Σ_{n≥1} q^n/(n-x)^s = q Φ(q, s, 1-x).
    let l2 = lerch(zq, 2, alpha)?.value.re * q;
    let l1 = lerch(zq, 1, alpha)?.value.re * q;
    // n/(n-x) = 1 + x/(n-x); geometric Σ_{n≥1} q^n = q/(1-q).
    let geo = q / (1.0 - q);
    let sum_n_over = geo + x * l1;
    // Σ e^{-νn}(1/(x-n)² - νn/(x(x-n))) = l2 + (ν/x) Σ n e^{-νn}/(n-x).
    let bracket = l2 + nu / x * sum_n_over + 1.0 / (x * x);
    let m = sin_sq_over_pi_sq(x) * bracket;
    Ok(match p.side {
        Side::Majorant => m,
        Side::Minorant => m - sinc_sq(x),
    })
}

/// ‖φ̂_{±,λ} - I_λ‖₁: 1/(1-e^{-ν}) - 1/ν for the majorant and
/// 1/ν - 1/(e^ν - 1) for the minorant.
pub fn l1_gap(p: &ApproximantParams) -> f64 {
    let nu = p.nu();
    match p.side {
        Side::Majorant => 1.0 / (-(-nu).exp_m1()) - 1.0 / nu,
        Side::Minorant => 1.0 / nu - 1.0 / nu.exp_m1(),
    }
}

/// ∫ |φ̂_{±,λ} − I_λ| by 12-point Gauss panels of unit width on [−X, X],
/// split at the jump, plus the tail. Far out both approximants differ from
/// I_λ by c·(sin πx/π)²/x² with c = 1 + Σ_{n≥1} e^{−νn}(1 − νn) for the
/// majorant and 1 − c for the minorant, so the two tails add to |c|/(π²X).
pub fn l1_gap_quadrature(p: &ApproximantParams, x_max: f64) -> Result<f64> {
    if !(x_max >= 1.0 && x_max.is_finite()) {
        return Err(Error::Domain(format!("need X ≥ 1, got {x_max}")));
    }
    let rule = gauss_legendre(12);
    let target = p.target();
    let f = |x: f64| (phi_hat(p, x) - truncated_exp(&target, x)).abs();
    let panels = x_max.ceil() as usize;
    let body = gauss_panels(f, -x_max, 0.0, panels, &rule) + gauss_panels(f, 0.0, x_max, panels, &rule);
    let nu = p.nu();
    let s0 = 1.0 / nu.exp_m1();
    let s1 = nu.exp() / (nu.exp_m1() * nu.exp_m1());
    let c_major = 1.0 + s0 - nu * s1;
    let c = match p.side {
        Side::Majorant => c_major,
        Side::Minorant => 1.0 - c_major,
    };
    Ok(body + c.abs() / (PI * PI * x_max))
}

/// Φ_λ^±(z) = Φ_ν^{±,∘}(sgn(λ)z) + sgn(λ)sgn(Re z)Φ_ν^{±,⋆}(sgn(λ)z).
pub fn glued_contour_weight(lambda: f64, side: Side, z: Complex64) -> Result<Complex64> {
    let p = ApproximantParams::new(lambda, side)?;
    let sl = lambda.signum();
    let zz = z * sl;
    let circ = phi_circ(p.nu(), side, zz)?;
    let re_sign = sign0(z.re);
    if re_sign == 0.0 {
        return Ok(circ);
    }
    let star = phi_star(p.nu(), side, zz)?;
    Ok(circ + star * (sl * re_sign))
}

/// Φ_λ^±(z(s)) for Im s > 0, z(s) = (s-1)/(iT), λ = 2π(σ-1)/T, via
/// i·sgn(λ)(-(θ(s)/2)cot πθ(s) + (θ(1+iT)/2)cot πθ(1+iT)) ± (1-z(s))/2
/// with θ(s) = 1 - (s-σ)/(iT).
pub fn glued_weight_upper(sigma: f64, t_height: f64, side: Side, s: Complex64) -> Result<Complex64> {
    if !(s.im > 0.0) {
        return Err(Error::Domain("the cotangent form needs Im s > 0".into()));
    }
    let lambda = 2.0 * PI * (sigma - 1.0) / t_height;
    if lambda == 0.0 {
        return Err(Error::Domain("σ = 1 gives λ = 0".into()));
    }
    let it = Complex64::new(0.0, t_height);
    let theta = |u: Complex64| 1.0 - (u - sigma) / it;
    let th_s = theta(s);
    let th_top = theta(Complex64::new(1.0, t_height));
    let part = -th_s * 0.5 * cot_stable(th_s)? + th_top * 0.5 * cot_stable(th_top)?;
    let z = (s - 1.0) / it;
    Ok(Complex64::new(0.0, lambda.signum()) * part + (1.0 - z) * (0.5 * side.sign()))
}

/// Vaaler's majorant of sgn(x):
/// (sin πx/π)²(Σ_n sgn(n)/(x-n)² + 2/x + 1/x²). (B(x)+1)/2 majorizes 1_{[0,∞)}.
pub fn beurling_majorant(x: f64) -> f64 {
    let nearest = x.round();
    if (x - nearest).abs() < NODE_SNAP {
        return if nearest >= 0.0 { 1.0 } else { -1.0 };
    }
    // Σ_{n≥1} (1/(x-n)² - 1/(x+n)²) = ψ'(1-x) - ψ'(1+x); summed directly with
    // a tail 4x Σ_{n>N} n/(n²-x²)² ≈ 2x/N².
    let n_max = 2000usize.max((40.0 * x.abs()) as usize);
    let mut acc = 0.0;
    for n in (1..=n_max).rev() {
        let nf = n as f64;
        acc += 1.0 / ((x - nf) * (x - nf)) - 1.0 / ((x + nf) * (x + nf));
    }
    let nn = n_max as f64 + 0.5;
    acc += 2.0 * x / (nn * nn);
    sin_sq_over_pi_sq(x) * (acc + 2.0 / x + 1.0 / (x * x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_exp_sign_convention() {
        let a = TruncatedExponential::new(1.0).unwrap();
        assert_eq!(truncated_exp(&a, -1.0), 0.0);
        assert_eq!(truncated_exp(&a, 0.0), 1.0);
        let b = TruncatedExponential::new(-2.0).unwrap();
        assert!((truncated_exp(&b, -1.0) - (-2.0f64).exp()).abs() < 1e-16);
        assert!(TruncatedExponential::new(0.0).is_err());
    }

    #[test]
    fn weight_at_origin() {
        for &nu in &[0.1, 0.25, 1.0, 4.0] {
            for side in [Side::Majorant, Side::Minorant] {
                let p = ApproximantParams::new(nu, side).unwrap();
                let v = phi_weight(&p, 0.0);
                let expect = 0.5 / (0.5 * nu).tanh() + 0.5 * side.sign();
                assert!((v.re - expect).abs() < 1e-13 && v.im.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn weight_vanishes_outside_support() {
        let p = ApproximantParams::new(0.25, Side::Majorant).unwrap();
        assert_eq!(phi_weight(&p, 1.5), Complex64::new(0.0, 0.0));
        assert_eq!(phi_weight(&p, -1.5), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn weight_matches_transform_of_majorant() {
        // φ_ν^+(t) = M̂(-t) = (1-|t|)/(1-e^{2πit-ν}) - sgn(t)ν/(2πi)(1/(e^ν-1) - 1/(e^{-2πit+ν}-1)).
        let nu = 0.7;
        let p = ApproximantParams::new(nu, Side::Majorant).unwrap();
        for &t in &[-0.9, -0.3, 0.2, 0.55, 0.99] {
            let e = Complex64::new(-nu, 2.0 * PI * t).exp();
            let f = Complex64::new(nu, -2.0 * PI * t).exp();
            let two_pi_i = Complex64::new(0.0, 2.0 * PI);
            let direct = (1.0 - f64::abs(t)) / (1.0 - e)
                - sign0(t) * nu / two_pi_i * (1.0 / nu.exp_m1() - 1.0 / (f - 1.0));
            assert!((direct - phi_weight(&p, t)).norm() < 1e-13, "t = {t}");
        }
    }

    #[test]
    fn majorant_node_values() {
        let p = ApproximantParams::new(0.5, Side::Majorant).unwrap();
        assert!((phi_hat(&p, 2.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(phi_hat(&p, -3.0), 0.0);
        let m = ApproximantParams::new(0.5, Side::Minorant).unwrap();
        assert!(phi_hat(&m, 0.0).abs() < 1e-15);
        // continuity through the snapping threshold
        let near = phi_hat(&p, 2.0 + 2e-6);
        assert!((near - (-1.0f64).exp()).abs() < 1e-5);
    }

    #[test]
    fn gap_closed_forms() {
        let p = ApproximantParams::new(1.0, Side::Majorant).unwrap();
        assert!((l1_gap(&p) - (1.0 / (1.0 - (-1.0f64).exp()) - 1.0)).abs() < 1e-15);
        let m = ApproximantParams::new(1.0, Side::Minorant).unwrap();
        assert!((l1_gap(&m) - (1.0 - 1.0 / (1.0f64.exp() - 1.0))).abs() < 1e-15);
    }

    #[test]
    fn star_component_vanishes_at_origin() {
        for side in [Side::Majorant, Side::Minorant] {
            let v = phi_star(0.3, side, Complex64::new(0.0, 0.0)).unwrap();
            assert!(v.norm() < 1e-15);
            let one = Complex64::new(1.0, 0.0);
            let sum = phi_circ(0.3, side, one).unwrap() + phi_star(0.3, side, one).unwrap();
            assert!(sum.norm() < 1e-14);
        }
    }

    #[test]
    fn glued_weight_pole_is_reported() {
        let nu = 0.4;
        let z = Complex64::new(2.0, -nu / (2.0 * PI));
        assert!(glued_contour_weight(nu, Side::Majorant, z).is_err());
    }

    #[test]
    fn beurling_nodes() {
        assert_eq!(beurling_majorant(0.0), 1.0);
        assert_eq!(beurling_majorant(3.0), 1.0);
        assert_eq!(beurling_majorant(-2.0), -1.0);
        assert!((beurling_majorant(-1.0 + 1e-3) + 1.0).abs() < 1e-2);
    }
}
