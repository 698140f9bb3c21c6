use super::{bracket, YangianModule};
use crate::drinfeld::{qp_normalize, ratio_to_drinfeld};
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::scalars::{FactoredPoly, Field, TruncSeries};

fn split<F: Field>(field: &F, ascending: &[F::Elem]) -> Result<FactoredPoly<F>> {
    FactoredPoly::from_coeffs(field, ascending)
        .ok_or_else(|| Error::Classification("weight polynomial does not split over the field".into()))
}

/// Monic `(N, D)` of equal degree `d` with `s = N(u) / D(u)` through the
/// truncation of `s`, for the least `d` with `2d + 1 <= order`.
pub fn pade_ratio<F: Field>(s: &TruncSeries<F>) -> Result<(FactoredPoly<F>, FactoredPoly<F>)> {
    let f = s.field();
    let order = s.order();
    if f.is_zero(&s.coeff(0)) {
        return Err(Error::Argument("ratio series must have nonzero constant term".into()));
    }
    let mut d = 0;
    while 2 * d < order {
        let rows: Vec<Vec<F::Elem>> = (d + 1..=order)
            .map(|k| (0..=d).map(|j| s.coeff(k - j)).collect())
            .collect();
        let den = nullspace(f, &rows, d + 1).into_iter().find(|v| !f.is_zero(&v[0]));
        if let Some(den) = den {
            let num: Vec<F::Elem> = (0..=d)
                .map(|k| {
                    (0..=k).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&den[j], &s.coeff(k - j))))
                })
                .collect();
            let rev = |v: &[F::Elem]| v.iter().rev().cloned().collect::<Vec<_>>();
            return Ok((split(f, &rev(&num))?, split(f, &rev(&den))?));
        }
        d += 1;
    }
    Err(Error::Classification(format!(
        "no rational form of degree <= {} fits the truncation {order}",
        order.saturating_sub(1) / 2
    )))
}

/// `λ_i(u) / λ_{i+1}(u)` as `(numerator, denominator)` for each `i < n`,
/// from the weight on the unique singular line.
pub fn weight_rational_functions<F: Field>(m: &YangianModule<F>) -> Result<Vec<(FactoredPoly<F>, FactoredPoly<F>)>> {
    let f = m.field();
    let (_, w) = m.singular_and_weight()?;
    let w = w.ok_or_else(|| Error::Classification("module has no unique singular line".into()))?;
    if m.is_exact() {
        let deg = m.order();
        let polys = w
            .series
            .iter()
            .map(|s| {
                let asc: Vec<F::Elem> = (0..=deg).rev().map(|k| s.coeff(k)).collect();
                split(f, &asc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(polys.windows(2).map(|p| (p[0].clone(), p[1].clone())).collect())
    } else {
        w.series
            .windows(2)
            .map(|p| pade_ratio(&p[0].mul(&p[1].inv()?)?))
            .collect()
    }
}

/// Drinfeld polynomials `P_1, ..., P_{n-1}` of a module with a unique singular line.
pub fn drinfeld_of_module<F: Field>(m: &YangianModule<F>) -> Result<Vec<FactoredPoly<F>>> {
    weight_rational_functions(m)?
        .iter()
        .map(|(a, b)| ratio_to_drinfeld(a, b))
        .collect()
}

/// `Π_i Π_{k < [α_i - β_i]} (u + β_i + k)`, reduced modulo full residue classes.
pub fn gl2_explicit_drinfeld<F: Field>(field: &F, pairs: &[(F::Elem, F::Elem)]) -> Result<FactoredPoly<F>> {
    let mut roots = Vec::new();
    for (a, b) in pairs {
        let l = bracket(field, a, b).ok_or_else(|| {
            Error::Classification(format!(
                "α - β = {} is not an integer",
                field.format(&field.sub(a, b))
            ))
        })?;
        for k in 0..l as i64 {
            roots.push(field.neg(&field.add_int(b, k)));
        }
    }
    Ok(qp_normalize(&FactoredPoly::from_roots(field, roots)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_weyl::gl2_irreducible_modp;
    use crate::scalars::{GaloisField, Rational, Rationals};
    use crate::yangian::EvalSpec;

    #[test]
    fn gl2_tensor_drinfeld() {
        let f = GaloisField::prime(7).unwrap();
        let ev = |a: i64, b: i64, c: i64| {
            let m = gl2_irreducible_modp(&f.from_i64(a), &f.from_i64(b), &f).unwrap();
            YangianModule::evaluation(&EvalSpec::plain(m).with_character(f.from_i64(c))).unwrap()
        };
        let m = ev(1, 0, 0).tensor(&ev(2, 0, 3)).unwrap();
        let p = drinfeld_of_module(&m).unwrap();
        let e = |k| f.from_i64(k);
        let explicit = gl2_explicit_drinfeld(&f, &[(e(1), e(0)), (e(5), e(3))]).unwrap();
        assert_eq!(qp_normalize(&p[0]), explicit);
        assert_eq!(explicit.degree(), 3);
    }

    #[test]
    fn pade_recovers_ratio() {
        let q = |k: i64| Rational::from_integer(k.into());
        // (1 + 2/u) / (1 - 1/u)
        let s = TruncSeries::linear(&Rationals, &q(2), 7)
            .mul(&TruncSeries::linear(&Rationals, &q(-1), 7).inv().unwrap())
            .unwrap();
        let (n, d) = pade_ratio(&s).unwrap();
        assert_eq!(n, FactoredPoly::from_roots(&Rationals, vec![q(-2)]));
        assert_eq!(d, FactoredPoly::from_roots(&Rationals, vec![q(1)]));
    }
}
