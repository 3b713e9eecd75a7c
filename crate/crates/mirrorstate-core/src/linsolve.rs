//! Dense complex linear solves in double-double (partial pivoting).

use alloc::vec::Vec;
use num_traits::Zero;

use crate::dd::{cabs, Cdd};
use crate::Error;

/// Solve A·x = b in place; `a` is row-major n×n.
pub fn solve(mut a: Vec<Vec<Cdd>>, mut b: Vec<Cdd>) -> Result<Vec<Cdd>, Error> {
    let n = b.len();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("linear system shape mismatch"));
    }
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .map(|&x| cabs(x).to_f64())
        .fold(0.0, f64::max);
    for col in 0..n {
        let (piv, best) = (col..n)
            .map(|r| (r, cabs(a[r][col]).to_f64()))
            .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= scale * 1e-30 {
            return Err(Error::Singular);
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = Cdd::new(crate::dd::Dd::ONE, crate::dd::Dd::ZERO) / a[col][col];
        for r in (col + 1)..n {
            let f = a[r][col] * inv;
            if f.re.is_zero() && f.im.is_zero() {
                continue;
            }
            for k in col..n {
                let t = a[col][k];
                a[r][k] = a[r][k] - f * t;
            }
            let t = b[col];
            b[r] = b[r] - f * t;
        }
    }
    let mut x = alloc::vec![Cdd::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r];
        for k in (r + 1)..n {
            acc = acc - a[r][k] * x[k];
        }
        x[r] = acc / a[r][r];
    }
    Ok(x)
}
