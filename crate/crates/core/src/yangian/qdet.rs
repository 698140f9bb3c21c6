use super::YangianModule;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::partition::{perm_sign, permutations};
use crate::scalars::{shift_weights, Field, TruncSeries};

#[derive(Clone, Debug)]
pub struct QdetReport<F: Field> {
    /// Coefficients of `u^0, ..., u^{-order}`.
    pub coeffs: Vec<Matrix<F>>,
    pub central: bool,
    /// The series when every coefficient is a scalar matrix.
    pub scalar: Option<TruncSeries<F>>,
}

impl<F: Field> QdetReport<F> {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn mul_series<F: Field>(a: &[Matrix<F>], b: &[Matrix<F>]) -> Result<Vec<Matrix<F>>> {
    let n = a.len().min(b.len());
    let mut out: Vec<Matrix<F>> = Vec::with_capacity(n);
    for m in 0..n {
        let mut acc = Matrix::zeros(a[0].field(), a[0].nrows(), b[0].ncols());
        for k in 0..=m {
            if a[k].is_zero() || b[m - k].is_zero() {
                continue;
            }
            acc = acc.add(&a[k].mul(&b[m - k])?)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// `qdet T(u) = Σ_s sgn(s) t_{1 s(1)}(u - n + 1) ... t_{n s(n)}(u)` on the module.
///
/// For exact modules the series is computed through `u^{-order}`; otherwise
/// through the smaller of `order` and the module truncation.
pub fn qdet_action<F: Field>(m: &YangianModule<F>, order: usize) -> Result<QdetReport<F>> {
    let f = m.field();
    let n = m.n();
    let d = m.dim();
    let order = if m.is_exact() { order } else { order.min(m.order()) };
    // shifted[a][b] holds the coefficients of t_ab(u - (n - 1 - a))
    let shifted: Vec<Vec<Vec<Matrix<F>>>> = (0..n)
        .map(|a| {
            let w = shift_weights(f, &f.from_i64((n - 1 - a) as i64), order);
            (0..n)
                .map(|b| {
                    (0..=order)
                        .map(|k| {
                            if k == 0 {
                                return Ok(m.t(a, b, 0).clone());
                            }
                            let mut acc = Matrix::zeros(f, d, d);
                            for (j, wj) in w.iter().enumerate().take(k + 1).skip(1) {
                                if m.is_exact() && j > m.order() {
                                    break;
                                }
                                acc = acc.add(&m.t(a, b, j).scale(&wj[k]))?;
                            }
                            Ok(acc)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total: Vec<Matrix<F>> = vec![Matrix::zeros(f, d, d); order + 1];
    for s in permutations(n) {
        let mut prod = shifted[0][s[0]].clone();
        for a in 1..n {
            prod = mul_series(&prod, &shifted[a][s[a]])?;
        }
        let sign = f.from_i64(perm_sign(&s));
        for (t, p) in total.iter_mut().zip(&prod) {
            *t = t.add(&p.scale(&sign))?;
        }
    }
    let mut central = true;
    'outer: for c in &total {
        for (_, _, _, g) in m.generators() {
            if !c.commutator(g)?.is_zero() {
                central = false;
                break 'outer;
            }
        }
    }
    let scalar = total
        .iter()
        .map(Matrix::scalar_value)
        .collect::<Option<Vec<_>>>()
        .map(|c| TruncSeries::new(f, c, order));
    Ok(QdetReport {
        coeffs: total,
        central,
        scalar,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gln_oracle::build_irreducible_gln;
    use crate::scalars::{Rational, Rationals};
    use crate::yangian::EvalSpec;

    fn q(k: i64) -> Rational {
        Rational::from_integer(k.into())
    }

    #[test]
    fn evaluation_scalar() {
        let base = build_irreducible_gln(&[3, 1], &Rationals, 64).unwrap();
        let m = YangianModule::evaluation(&EvalSpec::plain(base)).unwrap();
        let r = qdet_action(&m, 6).unwrap();
        assert!(r.central);
        // (1 + 3/u)(1 + 1/(u - 1))
        let a = TruncSeries::linear(&Rationals, &q(3), 6);
        let b = TruncSeries::linear(&Rationals, &q(1), 6).shift(&q(1));
        assert_eq!(r.scalar.unwrap(), a.mul(&b).unwrap());
        let triv = qdet_action(&YangianModule::trivial(&Rationals, 3), 4).unwrap();
        assert!(triv.scalar.unwrap().is_one());
    }
}
