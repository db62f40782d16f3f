//! Exact polynomial arithmetic: cyclotomic polynomials, the minimal
//! polynomial of `2cos(pi/q)`, factorization mod p and resultant norms.

mod factor;
mod int_poly;
mod mod_poly;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use factor::{distinct_degree, factor_mod_p, factor_monic, is_irreducible, square_free};
pub use int_poly::IntPoly;
pub use mod_poly::ModPoly;
pub(crate) use mod_poly::{add_mod, inv_mod, mul_mod, sub_mod};

use crate::error::{Error, Result};
use crate::numtheory::{check_q, divisors};

/// The n-th cyclotomic polynomial, by exact division of `x^n - 1` by
/// `Phi_d` for the proper divisors d of n.
pub fn cyclotomic_poly(n: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let mut cache: Vec<(u64, IntPoly)> = Vec::new();
    for d in divisors(n) {
        let mut num = IntPoly::monomial(BigInt::one(), d as usize);
        num = &num - &IntPoly::one();
        for (e, phi) in &cache {
            if d % e == 0 {
                num = num.div_exact(phi)?;
            }
        }
        cache.push((d, num));
    }
    Ok(cache.pop().expect("n is its own divisor").1)
}

/// Minimal polynomial over Q of `lambda_q = 2cos(pi/q)`, q odd and at
/// least 3.
///
/// `Phi_2q` is palindromic of degree 2d, so `x^d * T(x + 1/x) = Phi_2q(x)`
/// for a unique monic T of degree d. Its coefficients are peeled off from
/// the top: each step removes `t_k * x^(d-k) * (x^2 + 1)^k`.
pub fn lambda_minpoly(q: u64) -> Result<IntPoly> {
    check_q(q)?;
    let phi = cyclotomic_poly(2 * q)?;
    let two_d = phi.degree().expect("cyclotomic polynomials are nonzero");
    let d = two_d / 2;
    let x2p1 = IntPoly::from_i64(&[1, 0, 1]);
    let mut rest = phi;
    let mut t = vec![BigInt::zero(); d + 1];
    for k in (0..=d).rev() {
        let c = rest.coeff(d + k);
        if c.is_zero() {
            continue;
        }
        let term = &IntPoly::monomial(c.clone(), d - k) * &x2p1.pow(k as u32);
        rest = &rest - &term;
        t[k] = c;
    }
    if !rest.is_zero() {
        return Err(Error::Invalid(format!(
            "Phi_{} is not palindromic of even degree",
            2 * q
        )));
    }
    Ok(IntPoly::new(t))
}

/// Resultant `Res(f, g)`; for monic f this is the product of `g(alpha)`
/// over the roots alpha of f, i.e. the norm of `g(alpha)` when f is the
/// minimal polynomial of alpha.
///
/// Subresultant pseudo-remainder sequence over Z.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = BigInt::one();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
    }
    let ca = a.content();
    let cb = b.content();
    a = a
        .div_exact(&IntPoly::constant(ca.clone()))
        .expect("content divides");
    b = b
        .div_exact(&IntPoly::constant(cb.clone()))
        .expect("content divides");
    let (da0, db0) = (a.degree().unwrap(), b.degree().unwrap());
    let t = num_traits::pow(ca, db0) * num_traits::pow(cb, da0);

    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    while b.degree().unwrap() > 0 {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b).expect("nonzero divisor");
        a = b;
        if r.is_zero() {
            return BigInt::zero();
        }
        let denom = &gg * num_traits::pow(h.clone(), delta);
        b = r
            .div_exact(&IntPoly::constant(denom))
            .expect("subresultant division is exact");
        gg = a.leading().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(gg.clone(), delta) / num_traits::pow(h, delta - 1)
        };
    }
    let da = a.degree().unwrap();
    let lb = b.leading().unwrap().clone();
    let h = if da == 0 {
        BigInt::one()
    } else {
        num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
    };
    sign * t * h
}

/// Norm from `Q(alpha)` to Q of `g(alpha)`, alpha a root of the monic
/// irreducible `minpoly`.
pub fn norm_via_resultant(minpoly: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if !minpoly.is_monic() {
        return Err(Error::NonMonic);
    }
    Ok(resultant(minpoly, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1).unwrap(), ip(&[-1, 1]));
        assert_eq!(cyclotomic_poly(6).unwrap(), ip(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(10).unwrap(), ip(&[1, -1, 1, -1, 1]));
        assert!(matches!(cyclotomic_poly(0), Err(Error::ZeroIndex)));
    }

    #[test]
    fn cyclotomic_product_over_divisors() {
        for n in 1..=60u64 {
            let mut prod = IntPoly::one();
            let mut deg = 0;
            for d in divisors(n) {
                let phi = cyclotomic_poly(d).unwrap();
                deg += phi.degree().unwrap();
                prod = &prod * &phi;
            }
            assert_eq!(deg as u64, n);
            let xn1 = &IntPoly::monomial(BigInt::one(), n as usize) - &IntPoly::one();
            assert_eq!(prod, xn1, "n = {n}");
            let two = BigInt::from(2);
            assert_eq!(
                prod.eval(&two),
                num_traits::pow(two.clone(), n as usize) - 1
            );
        }
    }

    #[test]
    fn lambda_minpoly_examples() {
        assert_eq!(lambda_minpoly(3).unwrap(), ip(&[-1, 1]));
        assert_eq!(lambda_minpoly(5).unwrap(), ip(&[-1, -1, 1]));
        assert_eq!(lambda_minpoly(9).unwrap(), ip(&[-1, -3, 0, 1]));
        assert!(matches!(lambda_minpoly(4), Err(Error::InvalidQ(4))));
        assert!(matches!(lambda_minpoly(1), Err(Error::InvalidQ(1))));
    }

    #[test]
    fn lambda_minpoly_numeric_roots() {
        for q in (3..=31u64).step_by(2) {
            let t = lambda_minpoly(q).unwrap();
            let phi = crate::numtheory::euler_phi(2 * q);
            assert_eq!(t.degree().unwrap() as u64, phi / 2);
            let lam = 2.0 * (std::f64::consts::PI / q as f64).cos();
            assert!(t.eval_f64(lam).abs() < 1e-9, "q = {q}");
        }
    }

    /// Sylvester-matrix determinant by fraction-free (Bareiss) elimination.
    fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
        let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut a = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for k in 0..=m {
                a[i][i + k] = f.coeff(m - k);
            }
        }
        for i in 0..m {
            for k in 0..=n {
                a[n + i][i + k] = g.coeff(n - k);
            }
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size - 1 {
            if a[k][k].is_zero() {
                let Some(r) = (k + 1..size).find(|&r| !a[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[size - 1][size - 1].clone()
    }

    #[test]
    fn resultant_examples() {
        let t3 = ip(&[-1, 1]);
        let t5 = ip(&[-1, -1, 1]);
        assert_eq!(
            norm_via_resultant(&t3, &ip(&[2, 1])).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            norm_via_resultant(&t5, &ip(&[2, 1])).unwrap(),
            BigInt::from(5)
        );
        assert_eq!(
            norm_via_resultant(&t5, &ip(&[2, 4, 1])).unwrap(),
            BigInt::from(-1)
        );
        assert!(norm_via_resultant(&ip(&[1, 2]), &t3).is_err());
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        let cases = [
            (ip(&[-1, -3, 0, 1]), ip(&[2, 1])),
            (ip(&[1, 2, 3, 4]), ip(&[5, 0, -2])),
            (ip(&[3, 0, 0, 0, 2]), ip(&[1, -1, 7, 2, 0, 3])),
            (ip(&[1, 1]), ip(&[1, 1, 1])),
            (ip(&[2, 0, 2]), ip(&[0, 0, 4])),
            (ip(&[6]), ip(&[1, 1, 1])),
            (ip(&[1, 0, 1]), ip(&[-1, 0, 1])),
        ];
        for (f, g) in cases {
            assert_eq!(resultant(&f, &g), sylvester_resultant(&f, &g), "{f} / {g}");
            assert_eq!(resultant(&g, &f), sylvester_resultant(&g, &f), "{g} / {f}");
        }
        // common root -> zero
        assert!(resultant(&ip(&[-1, 0, 1]), &ip(&[-1, 1])).is_zero());
    }

    #[test]
    fn norm_of_mu_is_q_for_prime_q() {
        for q in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let t = lambda_minpoly(q).unwrap();
            let n = norm_via_resultant(&t, &ip(&[2, 1])).unwrap();
            assert_eq!(n.magnitude(), &num_bigint::BigUint::from(q), "q = {q}");
        }
    }
}
