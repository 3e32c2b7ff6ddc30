//! Bessel functions `J_ν(x)` and `Y_ν(x)` of real order.
//!
//! Evaluation follows the Temme/Steed scheme: continued fraction CF1 gives
//! `J_ν'/J_ν`; downward recurrence reduces the order to `μ ∈ [-½, ½]`; there
//! `Y_μ, Y_{μ+1}` come from Temme's series (x < 2) or Steed's complex
//! continued fraction CF2 (x ≥ 2), the Wronskian fixes the normalization of
//! `J`, and `Y` is recurred upward (stable direction) back to order ν.

use alloc::format;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAX_ITER: usize = 100_000;
const SERIES_SWITCH: f64 = 2.0;

pub const MIN_ARG: f64 = 0.5;
pub const MAX_ARG: f64 = 200.0;
pub const MAX_ORDER: f64 = 10.0;

/// `(J_ν(x), Y_ν(x))` for `ν ∈ [0, 10]`, `x ∈ [0.5, 200]`.
pub fn bessel_jy(nu: f64, x: f64) -> Result<(f64, f64)> {
    if !(MIN_ARG..=MAX_ARG).contains(&x) || !(0.0..=MAX_ORDER).contains(&nu) {
        return Err(Error::Domain(format!("Bessel arguments (nu = {nu}, x = {x})")));
    }
    jy_unchecked(nu, x).ok_or_else(|| Error::Domain(format!("Bessel evaluation at (nu = {nu}, x = {x})")))
}

/// `1/Γ(z) = Σ_{k≥1} c_k z^k`.
const RECIP_GAMMA: [f64; 26] = [
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
];

/// Temme's auxiliary gamma combinations for `|μ| ≤ ½`:
/// `(Γ₁, Γ₂, 1/Γ(1+μ), 1/Γ(1−μ))` with
/// `Γ₁ = (1/Γ(1−μ) − 1/Γ(1+μ))/(2μ)` and `Γ₂ = (1/Γ(1−μ) + 1/Γ(1+μ))/2`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    // 1/Γ(1+μ) = Σ c_k μ^{k-1}; the odd/even split avoids cancellation in Γ₁.
    let mut even = 0.0; // Σ_{k even} c_k μ^{k-2}
    let mut odd = 0.0; // Σ_{k odd} c_k μ^{k-1}
    let mu2 = mu * mu;
    for (idx, c) in RECIP_GAMMA.iter().enumerate().rev() {
        let k = idx + 1;
        if k % 2 == 0 {
            even = even * mu2 + c;
        } else {
            odd = odd * mu2 + c;
        }
    }
    let gam1 = -even;
    let gam2 = odd;
    let plus = gam2 + mu * even;
    let minus = gam2 - mu * even;
    (gam1, gam2, plus, minus)
}

fn jy_unchecked(nu: f64, x: f64) -> Option<(f64, f64)> {
    let nl = if x < SERIES_SWITCH {
        (nu + 0.5) as usize
    } else {
        (nu - x + 1.5).max(0.0) as usize
    };
    let mu = nu - nl as f64;
    let mu2 = mu * mu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J_ν'/J_ν by the modified Lentz method.
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }

    // Downward recurrence of unnormalized J and J' from ν to μ.
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, rymu, ry1) = if x < SERIES_SWITCH {
        // Temme's series for Y_μ and Y_{μ+1}.
        let x2 = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = mu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
        let mut ff = 2.0 / PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..MAX_ITER {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu2);
            c *= d / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return None;
        }
        let rymu = -sum;
        let ry1 = -sum1 * xi2;
        let rymup = mu * xi * rymu - ry1;
        let rjmu = w / (rymup - f * rymu);
        (rjmu, rymu, ry1)
    } else {
        // Steed's CF2 for p + iq = (J'_μ + iY'_μ)/(J_μ + iY_μ).
        let mut a = 0.25 - mu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut converged = false;
        for i in 2..MAX_ITER {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return None;
        }
        let gam = (p - f) / q;
        let rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
        let rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        let ry1 = mu * xi * rymu - rymup;
        (rjmu, rymu, ry1)
    };

    let j = rjl1 * (rjmu / rjl);
    let _ = rjp1;
    // Upward recurrence of Y from μ to ν.
    let (mut y_lo, mut y_hi) = (rymu, ry1);
    for i in 1..=nl {
        let next = (mu + i as f64) * xi2 * y_hi - y_lo;
        y_lo = y_hi;
        y_hi = next;
    }
    Some((j, y_lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use rand::Rng;

    /// Ascending power series `J_n(x) = Σ (−1)^k (x/2)^{2k+n} / (k! (k+n)!)`
    /// for integer order, summed independently of the evaluator.
    fn j_integer_series(n: u32, x: f64) -> f64 {
        let half = 0.5 * x;
        let mut term = half.powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
        let mut sum = term;
        for k in 1..200 {
            term *= -half * half / (k as f64 * (k as f64 + n as f64));
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    }

    /// Leading Hankel asymptotic terms, valid for `x ≫ ν²`.
    fn hankel(nu: f64, x: f64) -> (f64, f64) {
        let m = 4.0 * nu * nu;
        let mut p = 1.0;
        let mut q = 0.0;
        let mut term = 1.0;
        for k in 1..12 {
            let kf = k as f64;
            term *= (m - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
            if k % 2 == 1 {
                q += if (k / 2) % 2 == 0 { term } else { -term };
            } else {
                p += if (k / 2) % 2 == 1 { -term } else { term };
            }
        }
        let chi = x - (0.5 * nu + 0.25) * PI;
        let amp = (2.0 / (PI * x)).sqrt();
        (amp * (p * chi.cos() - q * chi.sin()), amp * (p * chi.sin() + q * chi.cos()))
    }

    #[test]
    fn j0_half_matches_series() {
        let series = j_integer_series(0, 0.5);
        assert!((series - 0.938469807240813).abs() < 1e-14);
        let (j, _) = bessel_jy(0.0, 0.5).unwrap();
        assert!((j - series).abs() <= 1e-14 * series.abs());
    }

    #[test]
    fn integer_orders_match_series() {
        for n in 0..=10u32 {
            for x in [0.5, 1.0, 1.9, 2.0, 3.7, 7.5, 12.0] {
                let expected = j_integer_series(n, x);
                let (j, _) = bessel_jy(f64::from(n), x).unwrap();
                // The alternating series itself cancels to about 1e-12 near x = 12.
                assert!((j - expected).abs() <= 1e-12 * (1.0 + expected.abs()), "J_{n}({x}) = {j} vs {expected}");
            }
        }
    }

    #[test]
    fn large_argument_matches_hankel_asymptotics() {
        for nu in [0.0, 0.5, 1.75, 3.0] {
            for x in [120.0, 160.0, 200.0] {
                let (j, y) = bessel_jy(nu, x).unwrap();
                let (ja, ya) = hankel(nu, x);
                assert!((j - ja).abs() < 1e-12 && (y - ya).abs() < 1e-12, "nu={nu} x={x}");
            }
        }
    }

    #[test]
    fn half_integer_closed_forms() {
        for x in [0.5, 1.0, 2.5, 10.0, 50.0] {
            let (j, y) = bessel_jy(0.5, x).unwrap();
            let amp = (2.0 / (PI * x)).sqrt();
            assert!((j - amp * x.sin()).abs() < 1e-14);
            assert!((y + amp * x.cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn wronskian_and_recurrence_on_random_points() {
        let mut r = rng::seeded(2024, 0);
        for _ in 0..200 {
            let nu = r.random_range(0.0..8.0);
            let x = r.random_range(MIN_ARG..MAX_ARG);
            let (j0, y0) = bessel_jy(nu, x).unwrap();
            let (j1, y1) = bessel_jy(nu + 1.0, x).unwrap();
            let wronskian = j1 * y0 - j0 * y1;
            let expected = 2.0 / (PI * x);
            assert!((wronskian - expected).abs() <= 1e-10 * expected, "nu={nu} x={x}");

            let nu_mid = nu + 1.0;
            let (jm, _) = bessel_jy(nu_mid - 1.0, x).unwrap();
            let (jc, _) = bessel_jy(nu_mid, x).unwrap();
            let (jp, _) = (bessel_jy(nu_mid + 1.0, x).unwrap().0, ());
            let lhs = jm + jp;
            let rhs = 2.0 * nu_mid / x * jc;
            let scale = jm.abs().max(jp.abs()).max(rhs.abs());
            assert!((lhs - rhs).abs() <= 1e-9 * scale, "recurrence nu={nu_mid} x={x}");
        }
    }

    #[test]
    fn near_integer_orders_are_continuous() {
        for x in [0.7, 3.0, 30.0] {
            let (j, y) = bessel_jy(2.0, x).unwrap();
            let (jn, yn) = bessel_jy(2.0 + 1e-9, x).unwrap();
            assert!((j - jn).abs() < 1e-8 * (1.0 + j.abs()));
            assert!((y - yn).abs() < 1e-8 * (1.0 + y.abs()));
        }
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!(bessel_jy(1.0, 0.1).is_err());
        assert!(bessel_jy(1.0, 250.0).is_err());
        assert!(bessel_jy(-0.5, 1.0).is_err());
        assert!(bessel_jy(10.5, 1.0).is_err());
    }
}
