//! Exact boundary generating function `h_{N,r,s}(w)` from the determinant
//! representation and from the discrete log-gas with Meixner weight
//! `mu_q(m) = alpha^m C(q+m, q)`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{binomial, det_rational, factorial, int, pow};
use crate::{Error, Result};

/// Largest `s` accepted by [`loggas_i`]; the sum has `r^s` terms.
pub const MAX_LOGGAS_S: usize = 3;
/// Largest `r` accepted by [`loggas_i`].
pub const MAX_LOGGAS_R: usize = 6;

pub fn meixner_weight(q: usize, alpha: &BigRational, m: usize) -> BigRational {
    pow(alpha, m as i64) * BigRational::from_integer(binomial(q + m, q))
}

/// `u = (alpha w + 1 - alpha)/w`.
pub fn u_of_w(alpha: &BigRational, w: &BigRational) -> Result<BigRational> {
    if w.is_zero() {
        return Err(Error::Pole("w = 0 in the u-w map".into()));
    }
    Ok((alpha * w + BigRational::one() - alpha) / w)
}

/// `w = (1 - alpha)/(u - alpha)`.
pub fn w_of_u(alpha: &BigRational, u: &BigRational) -> Result<BigRational> {
    if u == alpha {
        return Err(Error::Pole("u = alpha in the u-w map".into()));
    }
    Ok((BigRational::one() - alpha) / (u - alpha))
}

pub fn u_of_w_f64(alpha: f64, w: f64) -> f64 {
    (alpha * w + 1.0 - alpha) / w
}

pub fn w_of_u_f64(alpha: f64, u: f64) -> f64 {
    (1.0 - alpha) / (u - alpha)
}

#[derive(Debug, Clone, Copy)]
struct Dims {
    r: usize,
    s: usize,
    q: usize,
}

fn dims(n: usize, r: usize, s: usize, alpha: &BigRational) -> Result<Dims> {
    if s == 0 {
        return Err(Error::InvalidGeometry("log-gas formulas need s >= 1".into()));
    }
    if r == 0 || r + s > n {
        return Err(Error::InvalidGeometry(format!("need 1 <= r and r+s <= N, got N={n}, r={r}, s={s}")));
    }
    if !(alpha > &BigRational::zero() && alpha < &BigRational::one()) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} not in (0,1)")));
    }
    Ok(Dims { r, s, q: n - r - s })
}

/// `sum_{m<r} mu_q(m) m^p` for `p = 0..=pmax`.
fn power_sums(d: Dims, alpha: &BigRational, pmax: usize) -> Vec<BigRational> {
    let mu: Vec<BigRational> = (0..d.r).map(|m| meixner_weight(d.q, alpha, m)).collect();
    (0..=pmax)
        .map(|p| {
            mu.iter()
                .enumerate()
                .map(|(m, w)| w * pow(&int(m as i64), p as i64))
                .fold(BigRational::zero(), |a, b| a + b)
        })
        .collect()
}

/// `(1-alpha)^{s(s+q)} / alpha^{s(s-1)/2}`.
fn alpha_factor(d: Dims, alpha: &BigRational) -> BigRational {
    pow(&(BigRational::one() - alpha), (d.s * (d.s + d.q)) as i64) / pow(alpha, (d.s * (d.s - 1) / 2) as i64)
}

fn big(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

/// Hankel matrix `sum_m mu(m) m^{j+k}` (0-based indices).
pub fn hankel_matrix(n: usize, r: usize, s: usize, alpha: &BigRational) -> Result<Vec<Vec<BigRational>>> {
    let d = dims(n, r, s, alpha)?;
    let ps = power_sums(d, alpha, 2 * s - 2);
    Ok((0..s).map(|j| (0..s).map(|k| ps[j + k].clone()).collect()).collect())
}

/// The emptiness formation probability `G^{(r,...,r)}` of `s` rows.
pub fn f_at_one(n: usize, r: usize, s: usize, alpha: &BigRational) -> Result<BigRational> {
    let d = dims(n, r, s, alpha)?;
    let mut pre = big(num_traits::pow(factorial(d.q), s));
    for j in 0..s {
        pre /= big(factorial(d.q + j) * factorial(j));
    }
    let h = hankel_matrix(n, r, s, alpha)?;
    Ok(pre * alpha_factor(d, alpha) * det_rational(&h))
}

/// The matrix `H` of the `w`-deformed determinant, with the factor
/// `u^{r-1}` absorbed into the last column so that `u = 0` is regular:
/// last column entries are `sum_m C(m+q,q) m^j alpha^m u^{r-1-m}`.
pub fn deformed_matrix(n: usize, r: usize, s: usize, alpha: &BigRational, u: &BigRational) -> Result<Vec<Vec<BigRational>>> {
    let d = dims(n, r, s, alpha)?;
    let ps = power_sums(d, alpha, 2 * s - 2);
    let mut h: Vec<Vec<BigRational>> = (0..s).map(|j| (0..s).map(|k| ps[j + k].clone()).collect()).collect();
    for (j, row) in h.iter_mut().enumerate() {
        row[s - 1] = (0..r)
            .map(|m| meixner_weight(d.q, alpha, m) * pow(&int(m as i64), j as i64) * pow(u, (r - 1 - m) as i64))
            .fold(BigRational::zero(), |a, b| a + b);
    }
    Ok(h)
}

/// `F_{N,r,s}(w) = sum_l (G^{(l,r,...,r)} - G^{(l-1,r,...,r)}) w^{l-1}`.
/// At `u = 1` (that is `w = 1`) the Hankel form is used.
pub fn f_at_w(n: usize, r: usize, s: usize, alpha: &BigRational, w: &BigRational) -> Result<BigRational> {
    let d = dims(n, r, s, alpha)?;
    let u = u_of_w(alpha, w)?;
    if u.is_one() {
        return f_at_one(n, r, s, alpha);
    }
    let mut pre = big(num_traits::pow(factorial(d.q), s));
    for j in 0..s {
        pre /= big(factorial(d.q + j));
    }
    for j in 0..s.saturating_sub(1) {
        pre /= big(factorial(j));
    }
    let h = deformed_matrix(n, r, s, alpha, &u)?;
    let ratio = pow(&(&u / (BigRational::one() - &u)), (s - 1) as i64);
    Ok(pre * alpha_factor(d, alpha) * pow(w, (r - 1) as i64) * ratio * det_rational(&h))
}

/// `h_{N,r,s}(w) = sum_l H^(l) w^{l-1}`.
pub fn h_generating(n: usize, r: usize, s: usize, alpha: &BigRational, w: &BigRational) -> Result<BigRational> {
    let f1 = f_at_one(n, r, s, alpha)?;
    if f1.is_zero() {
        return Err(Error::Degenerate(format!("emptiness probability vanishes for N={n}, r={r}, s={s} (s > r)")));
    }
    Ok(f_at_w(n, r, s, alpha, w)? / f1)
}

/// Coefficients of a polynomial of degree `< xs.len()` through the points
/// `(xs[i], ys[i])`, lowest degree first.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    // Newton divided differences.
    let mut c: Vec<BigRational> = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&xs[i] - &xs[i - k]);
        }
    }
    let mut poly = alloc::vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // poly = poly * (x - xs[k]) + c[k]
        let mut next = alloc::vec![BigRational::zero(); n];
        for i in 0..n {
            if poly[i].is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] += &poly[i];
            }
            next[i] -= &poly[i] * &xs[k];
        }
        next[0] += &c[k];
        poly = next;
    }
    poly
}

/// `H^(1..=r)` read off as the coefficients of `h(w)`, by interpolation at
/// `w = 1..=r`.
pub fn h_coefficients(n: usize, r: usize, s: usize, alpha: &BigRational) -> Result<Vec<BigRational>> {
    let xs: Vec<BigRational> = (1..=r).map(|k| int(k as i64)).collect();
    let ys = xs.iter().map(|w| h_generating(n, r, s, alpha, w)).collect::<Result<Vec<_>>>()?;
    Ok(interpolate(&xs, &ys))
}

/// Constant relating `F(w)` to `w^{r-1} I(u)`:
/// `(q!)^s / (prod_{j<s} (q+j)! * prod_{j<=s} j!) * (1-alpha)^{s(N-r)} / alpha^{s(s-1)/2}`.
pub fn loggas_prefactor(n: usize, r: usize, s: usize, alpha: &BigRational) -> Result<BigRational> {
    let d = dims(n, r, s, alpha)?;
    let mut pre = big(num_traits::pow(factorial(d.q), s));
    for j in 0..s {
        pre /= big(factorial(d.q + j));
    }
    for j in 0..=s {
        pre /= big(factorial(j));
    }
    Ok(pre * alpha_factor(d, alpha))
}

/// The log-gas correlator `I_{N,r,s}(u)`: a sum over `0 <= m_j < r` with
/// weight `prod mu(m_j) prod (m_k - m_j)^2`, the contour integral being
/// replaced by its residues at the (distinct) `m_p`. At `u = 1` this is the
/// log-gas partition function.
pub fn loggas_i(n: usize, r: usize, s: usize, alpha: &BigRational, u: &BigRational) -> Result<BigRational> {
    let d = dims(n, r, s, alpha)?;
    if s > MAX_LOGGAS_S {
        return Err(Error::SizeGuard { what: "s", limit: MAX_LOGGAS_S, got: s });
    }
    if r > MAX_LOGGAS_R {
        return Err(Error::SizeGuard { what: "r", limit: MAX_LOGGAS_R, got: r });
    }
    let mu: Vec<BigRational> = (0..r).map(|m| meixner_weight(d.q, alpha, m)).collect();
    let at_one = u.is_one();
    let one_minus_u_pow = if at_one { BigRational::one() } else { pow(&(BigRational::one() - u), (s - 1) as i64) };
    let sfact = big(factorial(s - 1));
    let mut total = BigRational::zero();
    let mut ms = alloc::vec![0usize; s];
    loop {
        let distinct = (0..s).all(|a| (a + 1..s).all(|b| ms[a] != ms[b]));
        if distinct {
            let mut wgt = BigRational::one();
            for &m in &ms {
                wgt *= &mu[m];
            }
            for a in 0..s {
                for b in a + 1..s {
                    let diff = ms[b] as i64 - ms[a] as i64;
                    wgt *= int(diff * diff);
                }
            }
            if at_one {
                total += wgt;
            } else {
                let mut res = BigRational::zero();
                for p in 0..s {
                    let mut den = 1i64;
                    for j in 0..s {
                        if j != p {
                            den *= ms[p] as i64 - ms[j] as i64;
                        }
                    }
                    res += pow(u, (r + s - ms[p] - 2) as i64) / int(den);
                }
                total += wgt * res * &sfact / &one_minus_u_pow;
            }
        }
        // Next tuple in lexicographic order.
        let mut i = s;
        loop {
            if i == 0 {
                return Ok(total);
            }
            i -= 1;
            ms[i] += 1;
            if ms[i] < r {
                break;
            }
            ms[i] = 0;
        }
    }
}

/// `w^{r-1} I(u)/I(1)`, the log-gas form of `h_{N,r,s}(w)`.
pub fn h_via_loggas(n: usize, r: usize, s: usize, alpha: &BigRational, w: &BigRational) -> Result<BigRational> {
    let u = u_of_w(alpha, w)?;
    let i1 = loggas_i(n, r, s, alpha, &BigRational::one())?;
    if i1.is_zero() {
        return Err(Error::Degenerate("log-gas partition function vanishes (s > r)".into()));
    }
    Ok(pow(w, (r - 1) as i64) * loggas_i(n, r, s, alpha, &u)? / i1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn meixner_examples() {
        let a = rat(1, 2);
        assert_eq!(meixner_weight(4, &a, 0), int(1));
        assert_eq!(meixner_weight(0, &a, 3), rat(1, 8));
        assert_eq!(meixner_weight(2, &a, 1), rat(3, 2));
    }

    #[test]
    fn u_w_map() {
        let a = rat(1, 2);
        assert_eq!(u_of_w(&a, &int(1)).unwrap(), int(1));
        assert_eq!(w_of_u(&a, &rat(3, 4)).unwrap(), int(2));
        assert!(u_of_w(&a, &int(0)).is_err());
        assert!(w_of_u(&a, &a).is_err());
        let w = rat(7, 3);
        assert_eq!(w_of_u(&a, &u_of_w(&a, &w).unwrap()).unwrap(), w);
    }

    #[test]
    fn f_at_one_single_row() {
        let a = rat(1, 3);
        for q in 0..4 {
            let f = f_at_one(q + 2, 1, 1, &a).unwrap();
            assert_eq!(f, pow(&(int(1) - &a), (q + 1) as i64));
        }
    }

    #[test]
    fn loggas_partition_small() {
        let a = rat(1, 3);
        assert_eq!(loggas_i(3, 2, 1, &a, &int(1)).unwrap(), int(1) + &a);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let xs: Vec<_> = (1..=4).map(|k| int(k)).collect();
        let ys: Vec<_> = xs.iter().map(|x| int(2) - x * int(3) + x * x * x * rat(1, 2)).collect();
        assert_eq!(interpolate(&xs, &ys), alloc::vec![int(2), int(-3), int(0), rat(1, 2)]);
    }

    #[test]
    fn h_is_normalised() {
        let a = rat(1, 3);
        assert_eq!(h_generating(5, 3, 2, &a, &int(1)).unwrap(), int(1));
        assert_eq!(h_generating(2, 1, 1, &a, &rat(5, 2)).unwrap(), int(1));
    }

    #[test]
    fn regular_at_u_zero() {
        // w = -(1-alpha)/alpha maps to u = 0.
        let a = rat(1, 3);
        let w = rat(-2, 1);
        assert!(u_of_w(&a, &w).unwrap().is_zero());
        let coeffs = h_coefficients(5, 3, 2, &a).unwrap();
        let direct: BigRational = coeffs.iter().enumerate().map(|(l, c)| c * pow(&w, l as i64)).fold(int(0), |x, y| x + y);
        assert_eq!(h_generating(5, 3, 2, &a, &w).unwrap(), direct);
    }

    #[test]
    fn s_greater_than_r_is_degenerate() {
        let a = rat(1, 3);
        assert_eq!(f_at_one(5, 1, 2, &a).unwrap(), int(0));
        assert!(matches!(h_generating(5, 1, 2, &a, &int(2)), Err(Error::Degenerate(_))));
    }

    #[test]
    fn guards() {
        let a = rat(1, 3);
        assert!(matches!(loggas_i(9, 2, 4, &a, &int(1)), Err(Error::SizeGuard { .. })));
        assert!(matches!(loggas_i(9, 7, 1, &a, &int(1)), Err(Error::SizeGuard { .. })));
        assert!(f_at_one(3, 2, 2, &a).is_err());
        assert!(f_at_one(3, 2, 1, &int(0)).is_err());
    }
}
