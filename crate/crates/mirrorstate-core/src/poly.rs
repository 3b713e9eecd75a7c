//! Dense complex polynomials in ω, ascending coefficient order.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::dd::{cabs, cdd_re, Cdd, Dd};
use num_complex::Complex;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    /// c[k] multiplies ω^k
    pub c: Vec<Cdd>,
}

impl Poly {
    pub fn new(c: Vec<Cdd>) -> Self {
        let mut p = Poly { c };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: Cdd) -> Self {
        Poly::new(vec![a])
    }

    pub fn from_real(c: &[f64]) -> Self {
        Poly::new(c.iter().map(|&x| cdd_re(x)).collect())
    }

    pub fn from_dd(c: &[Dd]) -> Self {
        Poly::new(c.iter().map(|&x| Complex::new(x, Dd::ZERO)).collect())
    }

    /// The monomial ω.
    pub fn omega() -> Self {
        Poly::new(vec![Cdd::zero(), cdd_re(1.0)])
    }

    /// lead · Π (ω − r)
    pub fn from_roots(lead: Cdd, roots: &[Cdd]) -> Self {
        let mut p = Poly::constant(lead);
        for &r in roots {
            p = &p * &Poly::new(vec![-r, cdd_re(1.0)]);
        }
        p
    }

    fn trim(&mut self) {
        while let Some(last) = self.c.last() {
            if last.re.is_zero() && last.im.is_zero() {
                self.c.pop();
            } else {
                break;
            }
        }
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Cdd {
        self.c.get(k).copied().unwrap_or_else(Cdd::zero)
    }

    pub fn lead(&self) -> Cdd {
        self.c.last().copied().unwrap_or_else(Cdd::zero)
    }

    pub fn eval(&self, z: Cdd) -> Cdd {
        let mut acc = Cdd::zero();
        for &a in self.c.iter().rev() {
            acc = acc * z + a;
        }
        acc
    }

    pub fn eval_f64(&self, z: Complex<f64>) -> Complex<f64> {
        let z = crate::dd::cdd(z);
        crate::dd::to_c64(self.eval(z))
    }

    pub fn deriv(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &a)| a * Dd::new(k as f64))
                .collect(),
        )
    }

    /// Coefficient-wise conjugate: for real ω this is conj(p(ω)).
    pub fn conj(&self) -> Poly {
        Poly::new(self.c.iter().map(|a| a.conj()).collect())
    }

    /// p(−ω)
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .map(|(k, &a)| if k % 2 == 1 { -a } else { a })
                .collect(),
        )
    }

    pub fn scale(&self, s: Cdd) -> Poly {
        Poly::new(self.c.iter().map(|&a| a * s).collect())
    }

    pub fn scale_re(&self, s: Dd) -> Poly {
        Poly::new(self.c.iter().map(|&a| a * s).collect())
    }

    /// Multiply by ω^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Cdd::zero(); k];
        c.extend_from_slice(&self.c);
        Poly::new(c)
    }

    /// Largest coefficient modulus, used for relative tolerances.
    pub fn norm_inf(&self) -> f64 {
        self.c
            .iter()
            .map(|&a| cabs(a).to_f64())
            .fold(0.0, f64::max)
    }

    pub fn to_c64(&self) -> Vec<Complex<f64>> {
        self.c.iter().map(|&a| crate::dd::to_c64(a)).collect()
    }

    /// p(s·u) as a polynomial in u.
    pub fn rescale_arg(&self, s: Dd) -> Poly {
        let mut f = Dd::ONE;
        let mut out = Vec::with_capacity(self.c.len());
        for &a in &self.c {
            out.push(a * f);
            f = f * s;
        }
        Poly::new(out)
    }

    /// Polynomial in s = ω² from an even polynomial in ω (odd terms dropped).
    pub fn even_part_in_square(&self) -> Poly {
        Poly::new(self.c.iter().step_by(2).copied().collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Cdd::zero(); self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j] + a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.c.iter().map(|&a| -a).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

/// Evaluate lead · Π(z − r) directly from roots; accurate next to a root.
pub fn eval_factored(lead: Cdd, roots: &[Cdd], z: Cdd) -> Cdd {
    roots.iter().fold(lead, |acc, &r| acc * (z - r))
}
