//! Vertex weights for the three R-matrix families, plus Yang-Baxter and
//! dynamical Yang-Baxter residual checkers.
//!
//! Convention: the first tensor slot is the horizontal (auxiliary) line and
//! the second the vertical (quantum) line, so a matrix element reads
//! (west_in, south_in) -> (east_out, north_out).

use std::collections::BTreeMap;

use num::complex::Complex64;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::labels::Color;
use crate::scalars::{theta, Rational, ThetaConfig};

/// Colors around one vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexIo {
    pub west_in: Color,
    pub south_in: Color,
    pub east_out: Color,
    pub north_out: Color,
}

impl VertexIo {
    pub fn new(west_in: Color, south_in: Color, east_out: Color, north_out: Color) -> Self {
        Self { west_in, south_in, east_out, north_out }
    }

    /// Color conservation: inputs and outputs agree as multisets.
    pub fn conserves(&self) -> bool {
        (self.west_in == self.east_out && self.south_in == self.north_out)
            || (self.west_in == self.north_out && self.south_in == self.east_out)
    }

    fn is_diag(&self) -> bool {
        self.west_in == self.south_in
            && self.east_out == self.west_in
            && self.north_out == self.west_in
    }

    fn is_pass(&self) -> bool {
        self.west_in != self.south_in
            && self.east_out == self.west_in
            && self.north_out == self.south_in
    }

    fn is_swap(&self) -> bool {
        self.west_in != self.south_in
            && self.east_out == self.south_in
            && self.north_out == self.west_in
    }
}

/// Rational R-matrix element.
pub fn weight_rational(io: VertexIo, x: &Rational, y: &Rational) -> Rational {
    if io.is_diag() {
        x - y + Rational::one()
    } else if io.is_pass() {
        x - y
    } else if io.is_swap() {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Trigonometric (stochastic) R-matrix element.
pub fn weight_trig(io: VertexIo, u: &Rational, v: &Rational, q: &Rational) -> Rational {
    if io.is_diag() {
        u - q * v
    } else if io.is_pass() {
        if io.west_in > io.south_in {
            q * (u - v)
        } else {
            u - v
        }
    } else if io.is_swap() {
        if io.west_in < io.south_in {
            (Rational::one() - q) * u
        } else {
            (Rational::one() - q) * v
        }
    } else {
        Rational::zero()
    }
}

/// Any theta-bracket denominator smaller than this aborts with a genericity
/// error instead of producing a huge value.
pub const GENERICITY_FLOOR: f64 = 1e-10;

fn guarded_div(num: Complex64, den: Complex64, what: &str) -> Result<Complex64> {
    if den.norm() < GENERICITY_FLOOR {
        return Err(Error::Genericity(format!(
            "theta bracket denominator {what} is {:.3e}",
            den.norm()
        )));
    }
    Ok(num / den)
}

/// alpha(z, lambda) = [z][lambda+gamma]/[lambda].
pub fn alpha(z: Complex64, lam: Complex64, gamma: Complex64, cfg: &ThetaConfig) -> Result<Complex64> {
    let num = theta(z, cfg)? * theta(lam + gamma, cfg)?;
    guarded_div(num, theta(lam, cfg)?, "[lambda] in alpha")
}

/// beta(z, lambda) = -[z+lambda][gamma]/[lambda].
pub fn beta(z: Complex64, lam: Complex64, gamma: Complex64, cfg: &ThetaConfig) -> Result<Complex64> {
    let num = -theta(z + lam, cfg)? * theta(gamma, cfg)?;
    guarded_div(num, theta(lam, cfg)?, "[lambda] in beta")
}

/// Dynamical R-matrix element. `lambda_face` is the face value at the
/// northwest corner of the vertex.
pub fn weight_elliptic(
    io: VertexIo,
    z: Complex64,
    w: Complex64,
    lambda_face: &[Complex64],
    gamma: Complex64,
    cfg: &ThetaConfig,
) -> Result<Complex64> {
    if io.is_diag() {
        theta(z - w - gamma, cfg)
    } else if io.is_pass() {
        let a = lambda_face[io.west_in as usize - 1];
        let b = lambda_face[io.south_in as usize - 1];
        alpha(z - w, a - b, gamma, cfg)
    } else if io.is_swap() {
        let a = lambda_face[io.west_in as usize - 1];
        let b = lambda_face[io.south_in as usize - 1];
        beta(z - w, b - a, gamma, cfg)
    } else {
        Ok(Complex64::zero())
    }
}

/// Possible outputs of one crossing given the two input colors.
pub fn vertex_outputs(west_in: Color, south_in: Color) -> Vec<(Color, Color)> {
    if west_in == south_in {
        vec![(west_in, south_in)]
    } else {
        vec![(west_in, south_in), (south_in, west_in)]
    }
}

type RatState = BTreeMap<(Color, Color, Color), Rational>;

fn apply_r_rational<F>(state: &RatState, slots: (usize, usize), weight: &F) -> RatState
where
    F: Fn(VertexIo) -> Rational,
{
    let mut out = RatState::new();
    for (&(s1, s2, s3), coeff) in state {
        let s = [s1, s2, s3];
        let (a, b) = (s[slots.0], s[slots.1]);
        for (c, d) in vertex_outputs(a, b) {
            let w = weight(VertexIo::new(a, b, c, d));
            if w.is_zero() {
                continue;
            }
            let mut t = s;
            t[slots.0] = c;
            t[slots.1] = d;
            *out.entry((t[0], t[1], t[2])).or_insert_with(Rational::zero) += coeff * &w;
        }
    }
    out
}

fn ybe_residual<F12, F13, F23>(dim: usize, r12: F12, r13: F13, r23: F23) -> Rational
where
    F12: Fn(VertexIo) -> Rational,
    F13: Fn(VertexIo) -> Rational,
    F23: Fn(VertexIo) -> Rational,
{
    let mut max = Rational::zero();
    for a in 1..=dim as Color {
        for b in 1..=dim as Color {
            for c in 1..=dim as Color {
                let mut input = RatState::new();
                input.insert((a, b, c), Rational::one());
                // LHS: R23 R13 R12, rightmost acts first.
                let lhs = apply_r_rational(
                    &apply_r_rational(&apply_r_rational(&input, (0, 1), &r12), (0, 2), &r13),
                    (1, 2),
                    &r23,
                );
                let rhs = apply_r_rational(
                    &apply_r_rational(&apply_r_rational(&input, (1, 2), &r23), (0, 2), &r13),
                    (0, 1),
                    &r12,
                );
                let keys: std::collections::BTreeSet<_> =
                    lhs.keys().chain(rhs.keys()).cloned().collect();
                for key in keys {
                    let l = lhs.get(&key).cloned().unwrap_or_else(Rational::zero);
                    let r = rhs.get(&key).cloned().unwrap_or_else(Rational::zero);
                    let diff = (l - r).abs();
                    if diff > max {
                        max = diff;
                    }
                }
            }
        }
    }
    max
}

/// Max |LHS - RHS| of the rational Yang-Baxter equation over all basis
/// triples; exact zero for any spectral points.
pub fn check_ybe_rational(dim: usize, x: &[Rational; 3]) -> Rational {
    ybe_residual(
        dim,
        |io| weight_rational(io, &x[0], &x[1]),
        |io| weight_rational(io, &x[0], &x[2]),
        |io| weight_rational(io, &x[1], &x[2]),
    )
}

/// Max |LHS - RHS| of the trigonometric Yang-Baxter equation.
pub fn check_ybe_trig(dim: usize, u: &[Rational; 3], q: &Rational) -> Rational {
    ybe_residual(
        dim,
        |io| weight_trig(io, &u[0], &u[1], q),
        |io| weight_trig(io, &u[0], &u[2], q),
        |io| weight_trig(io, &u[1], &u[2], q),
    )
}

type CplxState = BTreeMap<(Color, Color, Color), Complex64>;

/// One dynamical R application on `slots`, with the face parameter shifted
/// by -gamma mu_c for the color c currently sitting in `shift_slot`.
fn apply_r_dyn(
    state: &CplxState,
    slots: (usize, usize),
    z: Complex64,
    w: Complex64,
    lambda: &[Complex64],
    shift_slot: Option<usize>,
    gamma: Complex64,
    cfg: &ThetaConfig,
) -> Result<CplxState> {
    let mut out = CplxState::new();
    for (&(s1, s2, s3), &coeff) in state {
        let s = [s1, s2, s3];
        let mut lam = lambda.to_vec();
        if let Some(slot) = shift_slot {
            lam[s[slot] as usize - 1] -= gamma;
        }
        let (a, b) = (s[slots.0], s[slots.1]);
        for (c, d) in vertex_outputs(a, b) {
            let wgt = weight_elliptic(VertexIo::new(a, b, c, d), z, w, &lam, gamma, cfg)?;
            if wgt.norm() == 0.0 {
                continue;
            }
            let mut t = s;
            t[slots.0] = c;
            t[slots.1] = d;
            *out.entry((t[0], t[1], t[2])).or_insert_with(Complex64::zero) += coeff * wgt;
        }
    }
    Ok(out)
}

/// Relative residual of the dynamical Yang-Baxter equation
///   R23(z2-z3,l) R13(z1-z3,l-g h2) R12(z1-z2,l)
///     = R12(z1-z2,l-g h3) R13(z1-z3,l) R23(z2-z3,l-g h1)
/// over all basis triples.
pub fn check_dybe(
    dim: usize,
    z: &[Complex64; 3],
    lambda: &[Complex64],
    gamma: Complex64,
    cfg: &ThetaConfig,
) -> Result<f64> {
    if lambda.len() < dim {
        return Err(Error::SizeMismatch(format!(
            "need {dim} dynamical components, got {}",
            lambda.len()
        )));
    }
    let mut max_diff = 0.0f64;
    let mut max_entry = 0.0f64;
    for a in 1..=dim as Color {
        for b in 1..=dim as Color {
            for c in 1..=dim as Color {
                let mut input = CplxState::new();
                input.insert((a, b, c), Complex64::one());
                let lhs = {
                    let s1 = apply_r_dyn(&input, (0, 1), z[0], z[1], lambda, None, gamma, cfg)?;
                    let s2 = apply_r_dyn(&s1, (0, 2), z[0], z[2], lambda, Some(1), gamma, cfg)?;
                    apply_r_dyn(&s2, (1, 2), z[1], z[2], lambda, None, gamma, cfg)?
                };
                let rhs = {
                    let s1 = apply_r_dyn(&input, (1, 2), z[1], z[2], lambda, Some(0), gamma, cfg)?;
                    let s2 = apply_r_dyn(&s1, (0, 2), z[0], z[2], lambda, None, gamma, cfg)?;
                    apply_r_dyn(&s2, (0, 1), z[0], z[1], lambda, Some(2), gamma, cfg)?
                };
                let keys: std::collections::BTreeSet<_> =
                    lhs.keys().chain(rhs.keys()).cloned().collect();
                for key in keys {
                    let l = lhs.get(&key).copied().unwrap_or_else(Complex64::zero);
                    let r = rhs.get(&key).copied().unwrap_or_else(Complex64::zero);
                    max_diff = max_diff.max((l - r).norm());
                    max_entry = max_entry.max(l.norm()).max(r.norm());
                }
            }
        }
    }
    Ok(max_diff / max_entry.max(1e-300))
}
