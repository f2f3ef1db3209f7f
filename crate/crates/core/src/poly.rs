//! Univariate rational polynomials, characteristic polynomials and rational
//! root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{denominator_lcm, Rational};

/// Coefficients in ascending degree with trailing zeros trimmed; the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// `(x − root)^mult`.
    pub fn linear_power(root: &Rational, mult: usize) -> Self {
        let lin = Polynomial::new(vec![-root, Rational::one()]);
        (0..mult).fold(Polynomial::from_i64(&[1]), |acc, _| acc.mul(&lin))
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Result<Matrix> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.matmul(a)?.add(&Matrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Quotient and remainder of division by `x − root` (synthetic division).
    pub fn divide_linear(&self, root: &Rational) -> (Polynomial, Rational) {
        if self.coeffs.is_empty() {
            return (Polynomial::zero(), Rational::zero());
        }
        let n = self.coeffs.len();
        let mut quotient = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (0..n).rev() {
            let value = &self.coeffs[i] + &carry * root;
            if i == 0 {
                return (Polynomial::new(quotient), value);
            }
            quotient[i - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Primitive integer polynomial with the same roots (denominators cleared).
    fn integer_coefficients(&self) -> Vec<BigInt> {
        let lcm = denominator_lcm(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = deg == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{deg}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Monic characteristic polynomial `det(xI − A)` by the Faddeev–LeVerrier
/// recurrence: `M_k = A·M_{k−1} + c_{n−k+1}·I`, `c_{n−k} = −tr(A·M_k)/k`.
pub fn char_poly(a: &Matrix) -> Result<Polynomial> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = Matrix::zeros(n, n);
    for k in 1..=n {
        m = a.matmul(&m)?;
        for i in 0..n {
            m[(i, i)] += &coeffs[n - k + 1];
        }
        let am = a.matmul(&m)?;
        coeffs[n - k] = -(am.trace() / Rational::from(k));
    }
    Ok(Polynomial::new(coeffs))
}

/// Rational roots with multiplicities (ascending), and whether they account
/// for the full degree.
pub fn rational_roots(p: &Polynomial) -> Result<(Vec<(Rational, usize)>, bool)> {
    let Some(degree) = p.degree() else {
        return Err(Error::ZeroPolynomial);
    };
    let mut rest = p.clone();
    let mut roots: Vec<(Rational, usize)> = Vec::new();

    let zero_mult = p.coeffs.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
        rest = Polynomial::new(p.coeffs[zero_mult..].to_vec());
    }

    if rest.degree().is_some_and(|d| d > 0) {
        let ints = rest.integer_coefficients();
        let constant = ints[0].abs();
        let lead = ints.last().expect("nonzero").abs();
        // Cauchy bound: every root satisfies |x| < 1 + max|c_i / c_n|
        let max_ratio = ints[..ints.len() - 1]
            .iter()
            .map(|c| Rational::from_bigints(c.abs(), lead.clone()))
            .max()
            .unwrap_or_else(Rational::zero);
        let bound = max_ratio + Rational::one();
        let bound = Rational::from(bound.numer().div_ceil(&bound.denom()));

        let denominators = divisors_up_to(&lead, &lead);
        for q in &denominators {
            let numer_limit = (&bound * &Rational::from(q.clone())).numer() + 1;
            for p_abs in divisors_up_to(&constant, &numer_limit) {
                for sign in [1i64, -1] {
                    let cand = Rational::from_bigints(&p_abs * sign, q.clone());
                    if cand.denom() != *q {
                        // not in lowest terms; reached via a smaller q
                        continue;
                    }
                    let mut mult = 0;
                    loop {
                        let (quot, rem) = rest.divide_linear(&cand);
                        if !rem.is_zero() || rest.degree() == Some(0) {
                            break;
                        }
                        rest = quot;
                        mult += 1;
                    }
                    if mult > 0 {
                        roots.push((cand, mult));
                    }
                }
            }
        }
    }

    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let found: usize = roots.iter().map(|(_, m)| m).sum();
    Ok((roots, found == degree))
}

/// Positive divisors `d` of `n` with `d <= limit`, ascending.
fn divisors_up_to(n: &BigInt, limit: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n && d <= *limit {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let co = n / &d;
            if co != d && co <= *limit {
                large.push(co);
            }
        }
        d += 1;
    }
    small.extend(large);
    small.sort();
    small.dedup();
    small
}
