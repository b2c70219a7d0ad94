//! Exact dense linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Rational, UPoly};

pub type Matrix = Vec<Vec<Rational>>;

/// Rank by fraction-based Gaussian elimination.
pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Characteristic polynomial `det(xI - M)`.
///
/// The matrix is scaled to integers, the characteristic polynomial is
/// computed modulo enough 62-bit primes to exceed the coefficient bound
/// `(1 + R)^n` (R the largest absolute row sum) and lifted by Chinese
/// remaindering.
pub fn charpoly(m: &Matrix) -> UPoly {
    let n = m.len();
    if n == 0 {
        return UPoly::one();
    }
    let mut l = BigInt::one();
    for row in m {
        for a in row {
            l = l.lcm(a.denom());
        }
    }
    let a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.numer() * (&l / x.denom())).collect())
        .collect();
    let r = a.iter().map(|row| row.iter().map(|x| x.abs()).sum::<BigInt>()).max().unwrap();
    let need = n as u64 * (r.bits() + 1) + 2;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut prime = 1u64 << 62;
    while modulus.bits() <= need {
        prime = prev_prime(prime);
        let p = prime;
        let am: Vec<Vec<u64>> = a
            .iter()
            .map(|row| row.iter().map(|x| x.mod_floor(&BigInt::from(p)).to_u64().unwrap()).collect())
            .collect();
        let cp = charpoly_mod(am, p);
        // Incremental CRT: acc ≡ cp (mod p), acc unchanged mod `modulus`.
        let mp = modulus.mod_floor(&BigInt::from(p)).to_u64().unwrap();
        let inv = pow_mod(mp, p - 2, p);
        for (k, c) in cp.iter().enumerate() {
            let cur = acc[k].mod_floor(&BigInt::from(p)).to_u64().unwrap();
            let t = mul_mod((c + p - cur) % p, inv, p);
            acc[k] += &modulus * BigInt::from(t);
        }
        modulus *= BigInt::from(p);
    }
    let half = &modulus >> 1usize;
    let scale = Rational::from_integer(l.clone());
    let mut inv_pow = Rational::one();
    let mut coeffs = vec![Rational::zero(); n + 1];
    // χ_M(x) = l^(−n) χ_A(l x): coefficient k is scaled by l^(k−n).
    for k in (0..=n).rev() {
        let mut c = acc[k].clone();
        if c > half {
            c -= &modulus;
        }
        coeffs[k] = Rational::from_integer(c) * &inv_pow;
        inv_pow /= &scale;
    }
    UPoly::new(coeffs)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prev_prime(mut n: u64) -> u64 {
    loop {
        n -= 1;
        if is_prime(n) {
            return n;
        }
    }
}

/// Characteristic polynomial modulo a prime, by Hessenberg reduction.
fn charpoly_mod(mut h: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let n = h.len();
    for c in 0..n.saturating_sub(2) {
        let Some(piv) = (c + 1..n).find(|&i| h[i][c] != 0) else { continue };
        if piv != c + 1 {
            h.swap(piv, c + 1);
            for row in h.iter_mut() {
                row.swap(piv, c + 1);
            }
        }
        let inv = pow_mod(h[c + 1][c], p - 2, p);
        for i in c + 2..n {
            if h[i][c] == 0 {
                continue;
            }
            let f = mul_mod(h[i][c], inv, p);
            for j in 0..n {
                let t = mul_mod(f, h[c + 1][j], p);
                h[i][j] = (h[i][j] + p - t) % p;
            }
            for row in h.iter_mut() {
                let t = mul_mod(f, row[i], p);
                row[c + 1] = (row[c + 1] + t) % p;
            }
        }
    }
    let mut ps: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        // (x − h_kk)·p_{k−1}
        let prev = &ps[k];
        let mut pk = vec![0u64; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            pk[d + 1] = (pk[d + 1] + c) % p;
            pk[d] = (pk[d] + p - mul_mod(h[k][k], c, p)) % p;
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = mul_mod(prod, h[i + 1][i], p);
            if prod == 0 {
                break;
            }
            let coef = mul_mod(prod, h[i][k], p);
            if coef != 0 {
                for (d, &c) in ps[i].iter().enumerate() {
                    pk[d] = (pk[d] + p - mul_mod(coef, c, p)) % p;
                }
            }
        }
        ps.push(pk);
    }
    ps.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect()
    }

    #[test]
    fn charpoly_matches_determinant_expansion() {
        let m = mat(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let p = charpoly(&m);
        // det(xI - M) = x^3 - 9x^2 + 24x - 18
        assert_eq!(p, UPoly::from_ints(&[-18, 24, -9, 1]));
        let m = mat(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(charpoly(&m), UPoly::from_ints(&[-1, 0, 0, 1]));
    }

    /// Rational Hessenberg reduction, used as an independent check.
    fn charpoly_rational(m: &Matrix) -> UPoly {
        let n = m.len();
        let mut h = m.clone();
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| !h[i][c].is_zero()) else {
                continue;
            };
            if p != c + 1 {
                h.swap(p, c + 1);
                for row in h.iter_mut() {
                    row.swap(p, c + 1);
                }
            }
            let inv = h[c + 1][c].recip();
            for i in c + 2..n {
                if h[i][c].is_zero() {
                    continue;
                }
                let f = &h[i][c] * &inv;
                for j in 0..n {
                    let t = &f * &h[c + 1][j];
                    h[i][j] -= t;
                }
                // Inverse transform on columns keeps the matrix similar.
                for row in h.iter_mut() {
                    let t = &f * &row[i];
                    row[c + 1] += t;
                }
            }
        }
        // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik * prod_{j=i+1..k} h_{j,j-1} * p_{i-1}
        let x = UPoly::from_ints(&[0, 1]);
        let mut ps: Vec<UPoly> = vec![UPoly::one()];
        for k in 0..n {
            let mut pk = x.sub(&UPoly::new(vec![h[k][k].clone()])).mul(&ps[k]);
            let mut prod = Rational::one();
            for i in (0..k).rev() {
                prod *= &h[i + 1][i];
                if prod.is_zero() {
                    break;
                }
                let coef = &prod * &h[i][k];
                if !coef.is_zero() {
                    pk = pk.sub(&ps[i].scale(&coef));
                }
            }
            ps.push(pk);
        }
        ps.pop().unwrap()
    }

    #[test]
    fn modular_agrees_with_rational() {
        let m: Matrix = (0..7)
            .map(|i| {
                (0..7)
                    .map(|j| Rational::new(((i * 7 + j * 3) % 11 - 5).into(), ((i + 2 * j) % 4 + 1).into()))
                    .collect()
            })
            .collect();
        assert_eq!(charpoly(&m), charpoly_rational(&m));
    }

    #[test]
    fn rank_and_det() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        assert!(determinant(&m).is_zero());
        let m = mat(&[&[1, 2], &[3, 4]]);
        assert_eq!(determinant(&m), Rational::from_integer((-2).into()));
    }
}
