//! Real-line integrals of rational functions by the residue theorem.
//!
//! ∫ N(ω)/D(ω) dω over ℝ is closed in the upper half plane, so
//! the value is 2πi Σ Res at the roots of D with Im > 0.

use num_traits::Zero;

use crate::dd::{Cdd, Dd};
use crate::poly::Poly;
use crate::Error;

/// Denominator given in factored form lead · Π(ω − r).
#[derive(Clone, Debug)]
pub struct Factored {
    pub lead: Cdd,
    pub roots: alloc::vec::Vec<Cdd>,
}

impl Factored {
    pub fn new(lead: Cdd, roots: alloc::vec::Vec<Cdd>) -> Self {
        Factored { lead, roots }
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn eval(&self, z: Cdd) -> Cdd {
        crate::poly::eval_factored(self.lead, &self.roots, z)
    }

    /// Coefficient-wise conjugate: roots are conjugated, as is the lead.
    pub fn conj(&self) -> Factored {
        Factored {
            lead: self.lead.conj(),
            roots: self.roots.iter().map(|r| r.conj()).collect(),
        }
    }

    pub fn mul(&self, o: &Factored) -> Factored {
        let mut roots = self.roots.clone();
        roots.extend_from_slice(&o.roots);
        Factored { lead: self.lead * o.lead, roots }
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_roots(self.lead, &self.roots)
    }
}

/// ∫ℝ num/den dω, summing residues only at upper-half-plane poles accepted
/// by `keep`. Poles must be simple and off the real axis.
pub fn real_line_integral<K: Fn(Cdd) -> bool>(
    num: &Poly,
    den: &Factored,
    keep: K,
) -> Result<Cdd, Error> {
    let n = den.degree();
    if !num.is_zero() && num.degree() + 2 > n {
        return Err(Error::Formulation("integrand does not decay faster than 1/ω"));
    }
    let mut total = Cdd::zero();
    for (k, &z) in den.roots.iter().enumerate() {
        if z.im.is_zero() {
            return Err(Error::Degenerate("pole on the real axis"));
        }
        if z.im < Dd::ZERO || !keep(z) {
            continue;
        }
        let mut dprime = den.lead;
        for (j, &w) in den.roots.iter().enumerate() {
            if j != k {
                dprime = dprime * (z - w);
            }
        }
        if dprime.re.is_zero() && dprime.im.is_zero() {
            return Err(Error::Degenerate("repeated pole"));
        }
        total = total + num.eval(z) / dprime;
    }
    // 2πi · Σ
    let two_pi = Dd::PI * 2.0;
    Ok(Cdd::new(-total.im * two_pi, total.re * two_pi))
}
