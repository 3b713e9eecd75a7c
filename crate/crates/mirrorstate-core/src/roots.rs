//! Polynomial roots: companion-matrix eigenvalues in f64, then simultaneous
//! (Aberth) polishing in double-double.

use alloc::vec::Vec;
use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::Zero;

use crate::dd::{cabs, cdd, Cdd, Dd};
use crate::poly::Poly;
use crate::Error;

/// Eigenvalues of the companion matrix of a (scaled) polynomial, f64 only.
pub fn companion_roots(p: &Poly) -> Result<Vec<Complex<f64>>, Error> {
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let c = p.to_c64();
    let lead = c[n];
    if lead == Complex::new(0.0, 0.0) {
        return Err(Error::Degenerate("zero leading coefficient"));
    }
    let mut m = DMatrix::<Complex<f64>>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    let schur = m
        .try_schur(f64::EPSILON, 10_000)
        .ok_or(Error::NoConvergence("companion Schur iteration"))?;
    let (_, t) = schur.unpack();
    Ok((0..n).map(|i| t[(i, i)]).collect())
}

/// All roots of `p` to double-double accuracy.
pub fn roots(p: &Poly) -> Result<Vec<Cdd>, Error> {
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    // scale ω = s·u so the monic coefficients are O(1)
    let c0 = cabs(p.coeff(0)).to_f64();
    let cn = cabs(p.lead()).to_f64();
    let s = if c0 > 0.0 && cn > 0.0 {
        libm::pow(c0 / cn, 1.0 / n as f64)
    } else {
        1.0
    };
    let s = if s.is_finite() && s > 0.0 { s } else { 1.0 };
    let q = p.rescale_arg(Dd::new(s));
    let guess = companion_roots(&q)?;
    let mut z: Vec<Cdd> = guess.into_iter().map(cdd).collect();
    aberth_polish(&q, &mut z, 80);
    Ok(z.into_iter().map(|r| r * Dd::new(s)).collect())
}

/// Aberth-Ehrlich refinement of all roots at once. The mutual repulsion term
/// keeps nearby roots from collapsing onto the same value.
pub fn aberth_polish(p: &Poly, z: &mut [Cdd], max_iter: usize) {
    let dp = p.deriv();
    let n = z.len();
    for _ in 0..max_iter {
        let mut worst = 0.0f64;
        for k in 0..n {
            let pv = p.eval(z[k]);
            if pv.re.is_zero() && pv.im.is_zero() {
                continue;
            }
            let ratio = pv / dp.eval(z[k]);
            let mut sum = Cdd::zero();
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if !(d.re.is_zero() && d.im.is_zero()) {
                        sum = sum + Cdd::new(Dd::ONE, Dd::ZERO) / d;
                    }
                }
            }
            let denom = Cdd::new(Dd::ONE, Dd::ZERO) - ratio * sum;
            let w = ratio / denom;
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[k] = z[k] - w;
            let scale = cabs(z[k]).to_f64().max(1e-300);
            worst = worst.max(cabs(w).to_f64() / scale);
        }
        if worst < 1e-31 {
            break;
        }
    }
}

/// Roots of an even real polynomial J(ω) through the substitution s = ω²,
/// returning the member of each ±√s pair with negative imaginary part.
/// A root that lands on the real axis (|Im| below `tol`·|root|) is an error.
pub fn lower_half_roots_even(j: &Poly, tol: f64) -> Result<Vec<Cdd>, Error> {
    let q = j.even_part_in_square();
    let s_roots = roots(&q)?;
    let mut out = Vec::with_capacity(s_roots.len());
    for s in s_roots {
        let w = crate::dd::csqrt(s);
        let w = if w.im > Dd::ZERO { -w } else { w };
        let mag = cabs(w).to_f64();
        if w.im.to_f64().abs() <= tol * mag {
            return Err(Error::Degenerate("spectral zero on the real axis"));
        }
        out.push(w);
    }
    Ok(out)
}
