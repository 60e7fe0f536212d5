//! Scalar backends: exact big rationals for the rational/trigonometric
//! models, `Complex64` with a truncated odd theta series for the elliptic
//! model.

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational. Always in lowest terms with a
/// positive denominator (`BigRational` maintains both on construction).
pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// Parse "p/q" or "p" (optional leading sign on p). The denominator must be
/// a positive integer literal; "4/-2" is rejected rather than normalized.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let den: BigInt = match den_s {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    if den.is_negative() {
        return Err(Error::Parse(format!("negative denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text form: "p/q", or "p" when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Comparison policy for floating-point (elliptic) values.
///
/// Two values are close when |a-b| <= tol_abs + tol_rel * max(|a|,|b|).
#[derive(Debug, Clone, Copy)]
pub struct ComparePolicy {
    pub tol_rel: f64,
    pub tol_abs: f64,
}

impl ComparePolicy {
    pub const fn new(tol_rel: f64, tol_abs: f64) -> Self {
        Self { tol_rel, tol_abs }
    }
}

/// Default policy for elliptic values.
pub const DEFAULT_POLICY: ComparePolicy = ComparePolicy::new(1e-8, 1e-12);

pub fn approx_eq(a: Complex64, b: Complex64, policy: ComparePolicy) -> Result<bool> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::NonFinite(format!("approx_eq({a}, {b})")));
    }
    let diff = (a - b).norm();
    Ok(diff <= policy.tol_abs + policy.tol_rel * a.norm().max(b.norm()))
}

/// Relative deviation |a-b| / max(|a|,|b|,1e-300).
pub fn rel_dev(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

/// Truncation setup for the odd theta series. `trunc = N` keeps the
/// half-integer summation indices j with |j| <= N + 1/2.
#[derive(Debug, Clone, Copy)]
pub struct ThetaConfig {
    pub tau: Complex64,
    pub trunc: usize,
}

impl ThetaConfig {
    pub fn new(tau: Complex64, trunc: usize) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::Genericity(format!(
                "theta requires Im(tau) > 0, got {tau}"
            )));
        }
        Ok(Self { tau, trunc })
    }
}

pub const DEFAULT_THETA_TRUNC: usize = 40;

/// Odd theta function
///   [z] = -sum_{j in Z+1/2} exp(i pi j^2 tau + 2 pi i j (z + 1/2)),
/// truncated to |j| <= trunc + 1/2.
///
/// Satisfies [-z] = -[z], [z+1] = -[z] and
/// [z+tau] = s * exp(-2 pi i z - pi i tau) [z] with a global sign s
/// recoverable from the series (see [`tau_shift_sign`]).
pub fn theta(z: Complex64, cfg: &ThetaConfig) -> Result<Complex64> {
    if !(cfg.tau.im > 0.0) {
        return Err(Error::Genericity(format!(
            "theta requires Im(tau) > 0, got {}",
            cfg.tau
        )));
    }
    if !z.is_finite() {
        return Err(Error::NonFinite(format!("theta({z})")));
    }
    let i = Complex64::new(0.0, 1.0);
    let pi = std::f64::consts::PI;
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 0..=cfg.trunc {
        let j = m as f64 + 0.5;
        let quad = i * pi * j * j * cfg.tau;
        let lin = 2.0 * pi * i * j * (z + 0.5);
        sum += (quad + lin).exp() + (quad - lin).exp();
    }
    Ok(-sum)
}

/// Sign s in [z+tau] = s * exp(-2 pi i z - pi i tau) [z], resolved
/// numerically from the series at a probe point.
pub fn tau_shift_sign(cfg: &ThetaConfig) -> Result<f64> {
    let i = Complex64::new(0.0, 1.0);
    let pi = std::f64::consts::PI;
    let z = Complex64::new(0.231, 0.117);
    let lhs = theta(z + cfg.tau, cfg)?;
    let rhs = (-2.0 * pi * i * z - pi * i * cfg.tau).exp() * theta(z, cfg)?;
    let ratio = lhs / rhs;
    if (ratio - 1.0).norm() < (ratio + 1.0).norm() {
        Ok(1.0)
    } else {
        Ok(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    fn cfg(trunc: usize) -> ThetaConfig {
        ThetaConfig::new(Complex64::new(0.0, 0.8), trunc).unwrap()
    }

    #[test]
    fn parse_reduces_to_lowest_terms() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat_int(-7));
        assert_eq!(format_rational(&parse_rational("10/4").unwrap()), "5/2");
    }

    #[test]
    fn parse_rejects_bad_denominators() {
        assert!(parse_rational("4/-2").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/3").is_err());
    }

    #[test]
    fn approx_eq_policy() {
        let one = Complex64::new(1.0, 0.0);
        let policy = ComparePolicy::new(1e-8, 0.0);
        assert!(approx_eq(one, one, policy).unwrap());
        assert!(approx_eq(one, Complex64::new(1.0 + 1e-12, 0.0), policy).unwrap());
        assert!(!approx_eq(one, Complex64::new(1.1, 0.0), policy).unwrap());
        assert!(approx_eq(Complex64::new(f64::NAN, 0.0), one, policy).is_err());
    }

    #[test]
    fn theta_vanishes_at_zero() {
        let v = theta(Complex64::new(0.0, 0.0), &cfg(40)).unwrap();
        assert!(v.norm() < 1e-13, "theta(0) = {v}");
    }

    #[test]
    fn theta_oddness_and_period_one() {
        let c = cfg(40);
        let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(11);
        for _ in 0..100 {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-0.3..0.3));
            let tz = theta(z, &c).unwrap();
            let tneg = theta(-z, &c).unwrap();
            assert!((tneg + tz).norm() < 1e-12, "oddness failed at {z}");
            let tshift = theta(z + 1.0, &c).unwrap();
            assert!((tshift + tz).norm() < 1e-12, "period-1 failed at {z}");
        }
    }

    #[test]
    fn theta_quasiperiod_tau_sign_is_resolved() {
        let c = cfg(40);
        let s = tau_shift_sign(&c).unwrap();
        // The series forces s = -1; the paper's display omits this sign.
        assert_eq!(s, -1.0);
        let i = Complex64::new(0.0, 1.0);
        let pi = std::f64::consts::PI;
        let z = Complex64::new(0.31, 0.07);
        let lhs = theta(z + c.tau, &c).unwrap();
        let rhs = s * (-2.0 * pi * i * z - pi * i * c.tau).exp() * theta(z, &c).unwrap();
        assert!((lhs - rhs).norm() < 1e-10, "tau quasi-periodicity residual");
        // |.|-level check independent of the sign.
        assert!((lhs.norm() - rhs.norm()).abs() < 1e-10);
    }

    #[test]
    fn theta_truncation_converged() {
        let z = Complex64::new(0.37, 0.0);
        let a = theta(z, &cfg(40)).unwrap();
        let b = theta(z, &cfg(80)).unwrap();
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn theta_rejects_bad_tau_and_nonfinite_z() {
        assert!(ThetaConfig::new(Complex64::new(0.8, 0.0), 40).is_err());
        let c = cfg(40);
        assert!(theta(Complex64::new(f64::INFINITY, 0.0), &c).is_err());
    }

    proptest! {
        #[test]
        fn rational_ring_axioms(
            (an, ad) in (-50i64..50, 1i64..20),
            (bn, bd) in (-50i64..50, 1i64..20),
            (cn, cd) in (-50i64..50, 1i64..20),
        ) {
            let a = rat(an, ad);
            let b = rat(bn, bd);
            let c = rat(cn, cd);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn rational_roundtrip(p in -10_000i64..10_000, q in 1i64..10_000) {
            let r = rat(p, q);
            prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }
}
