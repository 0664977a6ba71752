//! Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it), real for real t.
//!
//! Below `RS_FROM` Z is taken from Euler–Maclaurin; above, from the
//! Riemann–Siegel formula with the correction terms C_0..C_4, whose Taylor
//! coefficients in p - 1/2 are generated by `tools/gen_rs_coeffs.py`.

use crate::error::Result;
use crate::special_fn::{ln_gamma, zeta_em_auto};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Heights from which the Riemann–Siegel formula is used.
pub const RS_FROM: f64 = 1000.0;

/// Riemann–Siegel theta function. The Stirling expansion
/// (t/2)log(t/2π) - t/2 - π/8 + 1/(48t) + 7/(5760t³) + 31/(80640t⁵) + 127/(430080t⁷)
/// is used for t ≥ 10 and Im log Γ(1/4 + it/2) - (t/2)log π below.
pub fn theta(t: f64) -> f64 {
    if t.abs() < 10.0 {
        let lg = ln_gamma(Complex64::new(0.25, 0.5 * t)).expect("Γ has no poles off the real axis");
        return lg.im - 0.5 * t * PI.ln();
    }
    let r = 1.0 / t;
    let r2 = r * r;
    let tail = r * (1.0 / 48.0 + r2 * (7.0 / 5760.0 + r2 * (31.0 / 80640.0 + r2 * 127.0 / 430080.0)));
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0 + tail
}

/// Z(t) by Euler–Maclaurin, with its error bound.
pub fn hardy_z_em(t: f64) -> Result<(f64, f64)> {
    let z = zeta_em_auto(Complex64::new(0.5, t))?.0;
    let v = Complex64::from_polar(1.0, theta(t)) * z.value;
    Ok((v.re, z.abs_error))
}

fn horner(c: &[f64], u: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * u + a)
}

/// Z(t) by the Riemann–Siegel formula
/// 2Σ_{n≤N} n^{-1/2}cos(θ - t log n) + (-1)^{N-1}(t/2π)^{-1/4} Σ_k C_k(p)(t/2π)^{-k/2},
/// with a = √(t/2π), N = ⌊a⌋ and p = a - N.
pub fn hardy_z_rs(t: f64) -> f64 {
    let a = (t / (2.0 * PI)).sqrt();
    let n = a.floor() as usize;
    let p = a - n as f64;
    let th = theta(t);
    let mut main = 0.0;
    for k in 1..=n {
        let kf = k as f64;
        main += (th - t * kf.ln()).cos() / kf.sqrt();
    }
    let u = p - 0.5;
    let inv = 1.0 / a;
    let corr = horner(&C0, u)
        + inv * (horner(&C1, u) + inv * (horner(&C2, u) + inv * (horner(&C3, u) + inv * horner(&C4, u))));
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * main + sign * corr / a.sqrt()
}

/// Z(t), choosing the method by height.
pub fn hardy_z(t: f64) -> Result<f64> {
    if t >= RS_FROM {
        Ok(hardy_z_rs(t))
    } else {
        Ok(hardy_z_em(t)?.0)
    }
}

const C0: [f64; 47] = [
    3.8268343236508977173e-1,
    0.0,
    1.7489618723100817974,
    0.0,
    2.1180252076854963732,
    0.0,
    -8.7072166705114807392e-1,
    0.0,
    -3.4733112243465167073,
    0.0,
    -1.6626947308999324496,
    0.0,
    1.2167312889192321345,
    0.0,
    1.3014304161007975773,
    0.0,
    3.0511021827361672421e-2,
    0.0,
    -3.7558030515450952428e-1,
    0.0,
    -1.0857844165640659744e-1,
    0.0,
    5.1832902999549623376e-2,
    0.0,
    2.999948061990227592e-2,
    0.0,
    -2.275939670612564226e-3,
    0.0,
    -4.3826474165803383059e-3,
    0.0,
    -4.0642301837298469931e-4,
    0.0,
    4.0060977854221139279e-4,
    0.0,
    8.9710579913888412978e-5,
    0.0,
    -2.3025650027239107116e-5,
    0.0,
    -9.3800066019067924847e-6,
    0.0,
    6.3235149476091075042e-7,
    0.0,
    6.5510228192315016662e-7,
    0.0,
    2.2105237455526972587e-8,
    0.0,
    -3.322316176445628835e-8,
];
const C1: [f64; 48] = [
    0.0,
    -5.365020525675069406e-2,
    0.0,
    1.102781874108148244e-1,
    0.0,
    1.2317200154315226313,
    0.0,
    1.2634964862799457884,
    0.0,
    -1.6951089975595030184,
    0.0,
    -2.999871196765010089,
    0.0,
    -1.0819944959899208643e-1,
    0.0,
    1.9407662946212712688,
    0.0,
    7.8384235615006865329e-1,
    0.0,
    -5.0548296679003659188e-1,
    0.0,
    -3.8450723496057974051e-1,
    0.0,
    3.7472646465315320676e-2,
    0.0,
    9.0920266109731763173e-2,
    0.0,
    1.0449237550064509218e-2,
    0.0,
    -1.2582979651583416497e-2,
    0.0,
    -3.3995037211512740851e-3,
    0.0,
    1.0410950537714891268e-3,
    0.0,
    5.0109490511184868604e-4,
    0.0,
    -3.9563596690031815595e-5,
    0.0,
    -4.7624592453571896387e-5,
    0.0,
    -1.8539355338085132273e-6,
    0.0,
    3.193691808006897204e-6,
    0.0,
    4.0907807608506066327e-7,
    0.0,
    -1.5446624332576632128e-7,
];
const C2: [f64; 51] = [
    5.1885428302931684938e-3,
    0.0,
    1.2378633552253898413e-3,
    0.0,
    -1.8137505725166997411e-1,
    0.0,
    1.4291492748532126541e-1,
    0.0,
    1.3303391766687565325,
    0.0,
    3.5224723534037336775e-1,
    0.0,
    -2.4210015958919507238,
    0.0,
    -1.6760787022538108853,
    0.0,
    1.3689416723328372184,
    0.0,
    1.5539019430222983221,
    0.0,
    -1.722164273472998052e-1,
    0.0,
    -6.359068055045430989e-1,
    0.0,
    -9.9116498730412081054e-2,
    0.0,
    1.4033480067387008951e-1,
    0.0,
    4.7823520198272922364e-2,
    0.0,
    -1.7356040641479780798e-2,
    0.0,
    -1.0225012534028591844e-2,
    0.0,
    9.2741491597948878994e-4,
    0.0,
    1.3572194372373385345e-3,
    0.0,
    6.41369012029388009e-5,
    0.0,
    -1.2300805698196629883e-4,
    0.0,
    -1.8313507404789202555e-5,
    0.0,
    7.8216286043226273085e-6,
    0.0,
    2.0087542484759945503e-6,
    0.0,
    -3.3532765393185713737e-7,
    0.0,
    -1.4616020917418230926e-7,
];
const C3: [f64; 52] = [
    0.0,
    -2.6794321814389138085e-3,
    0.0,
    2.9953721091035149637e-2,
    0.0,
    -4.2570172541828697985e-2,
    0.0,
    -2.8997965779803887507e-1,
    0.0,
    4.8888319992354459725e-1,
    0.0,
    1.2308558763957460812,
    0.0,
    -8.2975607085274087042e-1,
    0.0,
    -2.2497635366665668665,
    0.0,
    7.8451399610054713794e-2,
    0.0,
    1.7467492800868894004,
    0.0,
    4.5968080979749935109e-1,
    0.0,
    -6.6193534710397749464e-1,
    0.0,
    -3.1590441036173634579e-1,
    0.0,
    1.2844792545207495989e-1,
    0.0,
    1.0073382716626152301e-1,
    0.0,
    -9.5301838488252677595e-3,
    0.0,
    -1.9264421687514088898e-2,
    0.0,
    -1.2464637158769291712e-3,
    0.0,
    2.424396964110308574e-3,
    0.0,
    4.3764769774185701828e-4,
    0.0,
    -2.0714032687001791276e-4,
    0.0,
    -6.2743445041865155605e-5,
    0.0,
    1.1575343814595669348e-5,
    0.0,
    5.8838549245403797839e-6,
    0.0,
    -3.1246774006963362209e-7,
    0.0,
    -4.024065775498959501e-7,
];
const C4: [f64; 53] = [
    5.3846809322833461688e-4,
    0.0,
    1.6820696240136639848e-3,
    0.0,
    -1.763303444864136628e-2,
    0.0,
    -1.5978689419501964241e-1,
    0.0,
    -2.634370396391901495e-1,
    0.0,
    7.5176048012038923227e-1,
    0.0,
    1.8221687003717782414,
    0.0,
    -4.4587359446299751966e-1,
    0.0,
    -3.0513859436725790328,
    0.0,
    -8.7581457945963733038e-1,
    0.0,
    2.0846815678721797283,
    0.0,
    1.1803976720667746001,
    0.0,
    -6.6459857712003768505e-1,
    0.0,
    -6.0711892052473672872e-1,
    0.0,
    7.9312835235729492167e-2,
    0.0,
    1.7338081728613892503e-1,
    0.0,
    1.2074617151030247649e-2,
    0.0,
    -3.0998442817015835478e-2,
    0.0,
    -6.3813989271155333185e-3,
    0.0,
    3.6271248222772877734e-3,
    0.0,
    1.2462286376197530802e-3,
    0.0,
    -2.7013693709926059752e-4,
    0.0,
    -1.5377328215117999815e-4,
    0.0,
    9.6315432987844355622e-6,
    0.0,
    1.3502697448887446003e-5,
    0.0,
    4.3112155916138526677e-7,
    0.0,
    -8.8556977213232774444e-7,
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_branches_meet() {
        for &t in &[10.0, 12.0, 30.0] {
            let lg = ln_gamma(Complex64::new(0.25, 0.5 * t)).unwrap().im - 0.5 * t * PI.ln();
            assert!((theta(t) - lg).abs() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn riemann_siegel_matches_euler_maclaurin() {
        for &t in &[1000.0, 1517.1, 5000.5, 21000.2] {
            let (em, err) = hardy_z_em(t).unwrap();
            let rs = hardy_z_rs(t);
            assert!((em - rs).abs() < 5e-9 + err, "t = {t}: {em} vs {rs}");
        }
    }

    #[test]
    fn first_zero_sign_change() {
        let a = hardy_z(14.134).unwrap();
        let b = hardy_z(14.136).unwrap();
        assert!(a * b < 0.0);
    }
}
