//! Exact arithmetic in `Z[zeta_q]`, the ring of integers extended by a
//! primitive q-th root of unity.
//!
//! Values are stored as integer coefficient vectors of length q (coefficient
//! of zeta^k at position k). A value is zero exactly when its coefficient
//! polynomial is divisible by the q-th cyclotomic polynomial, so zero tests
//! reduce modulo Phi_q with integer arithmetic and never touch floats.

use std::fmt;

/// Coefficients of the q-th cyclotomic polynomial Phi_q, low degree first.
///
/// Computed by dividing x^q - 1 by Phi_d for every proper divisor d of q.
pub fn cyclotomic_polynomial(q: u32) -> Vec<i64> {
    assert!(q >= 1, "root order must be positive");
    if q == 1 {
        return vec![-1, 1]; // x - 1
    }
    let mut num = vec![0i64; q as usize + 1];
    num[0] = -1;
    num[q as usize] = 1;
    for d in 1..q {
        if q.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let (quot, rem) = poly_divmod(num, den);
    debug_assert!(rem.iter().all(|&c| c == 0), "division not exact");
    quot
}

/// Long division by a monic integer polynomial; returns (quotient, remainder).
fn poly_divmod(num: &[i64], den: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    if num.len() <= dd {
        return (vec![0], rem);
    }
    let mut quot = vec![0i64; num.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quot[i - dd] = c;
        for (k, &d) in den.iter().enumerate() {
            rem[i - dd + k] -= c * d;
        }
    }
    rem.truncate(dd.max(1));
    (quot, rem)
}

/// An exact element of `Z[zeta_q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicInt {
    q: u32,
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    pub fn new(q: u32, coeffs: Vec<i64>) -> CyclotomicInt {
        assert!(q >= 1);
        assert_eq!(
            coeffs.len(),
            q as usize,
            "coefficient vector must have length q"
        );
        CyclotomicInt { q, coeffs }
    }

    pub fn zero(q: u32) -> CyclotomicInt {
        CyclotomicInt::new(q, vec![0; q as usize])
    }

    /// The single root zeta^k.
    pub fn root_power(q: u32, k: u32) -> CyclotomicInt {
        let mut v = CyclotomicInt::zero(q);
        v.coeffs[(k % q) as usize] = 1;
        v
    }

    pub fn integer(q: u32, n: i64) -> CyclotomicInt {
        let mut v = CyclotomicInt::zero(q);
        v.coeffs[0] = n;
        v
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Adds zeta^k in place; the accumulator used by the Gram computations.
    pub fn add_root_power(&mut self, k: u32) {
        self.coeffs[(k % self.q) as usize] += 1;
    }

    pub fn add(&self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.q, rhs.q, "mixed root orders");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicInt { q: self.q, coeffs }
    }

    pub fn sub(&self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.q, rhs.q, "mixed root orders");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CyclotomicInt { q: self.q, coeffs }
    }

    /// Product, folding exponents with zeta^q = 1.
    pub fn mul(&self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.q, rhs.q, "mixed root orders");
        let q = self.q as usize;
        let mut coeffs = vec![0i64; q];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b != 0 {
                    coeffs[(i + j) % q] += a * b;
                }
            }
        }
        CyclotomicInt { q: self.q, coeffs }
    }

    /// Remainder of the coefficient polynomial modulo Phi_q. The value is the
    /// zero algebraic number exactly when this is the zero vector.
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_polynomial(self.q);
        poly_divmod(&self.coeffs, &phi).1
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|&c| c == 0)
    }

    /// Whether the value equals the rational integer n.
    pub fn is_integer(&self, n: i64) -> bool {
        self.sub(&CyclotomicInt::integer(self.q, n)).is_zero()
    }
}

/// True when x represents the zero algebraic number.
pub fn cyclo_zero_test(x: &CyclotomicInt) -> bool {
    x.is_zero()
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coeffs{:?} (q={})", self.coeffs, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let x = CyclotomicInt::new(3, vec![1, 1, 1]);
        assert!(cyclo_zero_test(&x));
    }

    #[test]
    fn order_six_zero_and_nonzero() {
        assert!(cyclo_zero_test(&CyclotomicInt::new(
            6,
            vec![1, 0, 0, 1, 0, 0]
        )));
        assert!(!cyclo_zero_test(&CyclotomicInt::new(
            6,
            vec![2, 0, 0, 1, 0, 0]
        )));
    }

    #[test]
    fn multiplication_folds_exponents() {
        // zeta^4 * zeta^3 = zeta at q = 6
        let x = CyclotomicInt::root_power(6, 4);
        let y = CyclotomicInt::root_power(6, 3);
        assert_eq!(x.mul(&y), CyclotomicInt::root_power(6, 1));
    }

    #[test]
    fn integer_recognition() {
        // 1 + zeta + ... + zeta^(q-1) = 0, so n + (all roots) = n
        let all = CyclotomicInt::new(5, vec![1; 5]);
        let v = all.add(&CyclotomicInt::integer(5, 4));
        assert!(v.is_integer(4));
        assert!(!v.is_integer(5));
    }
}
