//! Alexander polynomial of a deficiency-one presentation via Fox derivatives.

use super::presentation::Presentation;
use super::snf::infinite_cyclic_map;
use crate::error::{Error, Result};
use crate::invariants::{determinant, LaurentPoly};

pub fn fox_alexander(pres: &Presentation) -> Result<LaurentPoly> {
    let n = pres.generators().len();
    if n == 0 || pres.relators().len() + 1 != n {
        return Err(Error::UnsupportedPresentation(format!(
            "deficiency must be 1, got {} generators and {} relators",
            n,
            pres.relators().len()
        )));
    }
    let mut phi = infinite_cyclic_map(pres)?
        .ok_or_else(|| Error::UnsupportedPresentation("abelianization is not infinite cyclic".into()))?;
    if let Ok(mu) = pres.peripheral("mu") {
        let img: i64 = mu.letters().iter().map(|l| l.exp as i64 * phi[pres.gen_index(l.gen).unwrap()]).sum();
        if img < 0 {
            phi.iter_mut().for_each(|c| *c = -*c);
        }
    }
    let mut jac = vec![LaurentPoly::zero(); (n - 1) * n];
    for (a, r) in pres.relators().iter().enumerate() {
        let mut cur = 0i64;
        for l in r.letters() {
            let c = pres.gen_index(l.gen).unwrap();
            let term = if l.exp > 0 {
                LaurentPoly::monomial(1, cur)
            } else {
                LaurentPoly::monomial(-1, cur - phi[c])
            };
            jac[a * n + c] = jac[a * n + c].add(&term)?;
            cur += phi[c] * l.exp as i64;
        }
    }
    let (j, _) = phi
        .iter()
        .enumerate()
        .filter(|(_, &p)| p != 0)
        .min_by_key(|(_, &p)| p.abs())
        .ok_or_else(|| Error::internal("abelianization map is zero on every generator"))?;
    let minor: Vec<LaurentPoly> = (0..n - 1)
        .flat_map(|a| (0..n).filter(move |&c| c != j).map(move |c| (a, c)))
        .map(|(a, c)| jac[a * n + c].clone())
        .collect();
    let det = determinant(n - 1, minor)?;
    let geometric = LaurentPoly::from_coeffs(0, vec![1; phi[j].unsigned_abs() as usize]);
    Ok(det.div_exact(&geometric)?.normalize())
}
