//! Univariate polynomials with exact rational coefficients, characteristic
//! polynomials of small rational matrices, and real-root location.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("constant polynomial {0} has no roots")]
    Constant(String),
    #[error("no sign change of {poly} on [{lo}, {hi}]")]
    NoSignChange { poly: String, lo: f64, hi: f64 },
}

/// Polynomial `Σ c_i x^i` over the rationals, coefficients in ascending
/// degree. Trailing zeros are trimmed, so a nonzero polynomial always has a
/// nonzero leading coefficient and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Integer coefficients, ascending degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// Exact evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().expect("coefficient fits in f64"))
            .collect()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        horner(&self.to_f64_coeffs(), x)
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Prints like `x^4 - 59x^2 - 56x + 56`; non-integral coefficients appear as
/// `p/q`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Square matrix of exact rationals, row-major.
pub type RatMatrix = Vec<Vec<BigRational>>;

/// `det(xI - A)` by cofactor expansion along the first row of the polynomial
/// matrix. Exponential in the dimension; meant for matrices up to ~8x8.
pub fn char_poly_cofactor(a: &RatMatrix) -> Poly {
    let n = a.len();
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(-a[i][j].clone());
                    if i == j {
                        &c + &Poly::x()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let cols: Vec<usize> = (0..n).collect();
    det_cofactor(&entries, 0, &cols)
}

fn det_cofactor(m: &[Vec<Poly>], row: usize, cols: &[usize]) -> Poly {
    if cols.is_empty() {
        return Poly::from_ints(&[1]);
    }
    let mut acc = Poly::zero();
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &m[row][c] * &det_cofactor(m, row + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `det(xI - A)` by the Faddeev–LeVerrier recurrence.
pub fn char_poly_leverrier(a: &RatMatrix) -> Poly {
    let n = a.len();
    let identity = |s: BigRational| -> RatMatrix {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { s.clone() } else { BigRational::zero() }).collect())
            .collect()
    };
    let matmul = |x: &RatMatrix, y: &RatMatrix| -> RatMatrix {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(BigRational::zero(), |s, k| s + &x[i][k] * &y[k][j]))
                    .collect()
            })
            .collect()
    };
    // c[n] = 1; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut mk = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let am = matmul(a, &mk);
        let shift = identity(c[n - k + 1].clone());
        mk = (0..n)
            .map(|i| (0..n).map(|j| &am[i][j] + &shift[i][j]).collect())
            .collect();
        let amk = matmul(a, &mk);
        let tr = (0..n).fold(BigRational::zero(), |s, i| s + &amk[i][i]);
        c[n - k] = -tr / rat(k as i64);
    }
    Poly::new(c)
}

/// All real roots where the polynomial changes sign, ascending.
///
/// Roots of the derivative split the real line into monotone pieces, each of
/// which holds at most one root; every piece with a sign change is solved by
/// safeguarded Newton. Roots of even multiplicity are not reported.
pub fn real_roots(p: &Poly) -> Result<Vec<f64>, RootError> {
    match p.degree() {
        None => return Err(RootError::ZeroPolynomial),
        Some(0) => return Err(RootError::Constant(p.to_string())),
        _ => {}
    }
    Ok(roots_f64(&p.to_f64_coeffs()))
}

fn roots_f64(c: &[f64]) -> Vec<f64> {
    let d = c.len() - 1;
    if d == 1 {
        return vec![-c[0] / c[1]];
    }
    let bound = cauchy_bound(c);
    let deriv: Vec<f64> = c.iter().enumerate().skip(1).map(|(i, &a)| a * i as f64).collect();
    let mut knots = vec![-bound];
    knots.extend(roots_f64(&deriv).into_iter().filter(|x| x.abs() < bound));
    knots.push(bound);
    let mut roots = Vec::new();
    for w in knots.windows(2) {
        if let Some(r) = solve_bracket(c, w[0], w[1]) {
            if roots.last().is_none_or(|&last: &f64| r > last) {
                roots.push(r);
            }
        }
    }
    roots
}

/// `1 + max |a_i / a_d|`; every complex root lies strictly inside.
fn cauchy_bound(c: &[f64]) -> f64 {
    let lead = *c.last().expect("nonempty");
    1.0 + c[..c.len() - 1].iter().map(|a| (a / lead).abs()).fold(0.0, f64::max)
}

/// Root in `[lo, hi]` if the endpoint values differ in sign (or one is zero).
fn solve_bracket(c: &[f64], mut lo: f64, mut hi: f64) -> Option<f64> {
    let (flo, fhi) = (horner(c, lo), horner(c, hi));
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    let rising = fhi > 0.0;
    let deriv: Vec<f64> = c.iter().enumerate().skip(1).map(|(i, &a)| a * i as f64).collect();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = horner(c, x);
        if fx == 0.0 {
            return Some(x);
        }
        if (fx > 0.0) == rising {
            hi = x;
        } else {
            lo = x;
        }
        let step = fx / horner(&deriv, x);
        let newton = x - step;
        let next = if step.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) || hi - lo <= f64::EPSILON * x.abs().max(1.0) {
            return Some(next);
        }
        x = next;
    }
    Some(x)
}

/// Largest real root with a sign change. With a hint, the interval is tried
/// first and used only if it brackets a root and nothing larger exists above
/// it; otherwise the full isolation runs.
pub fn largest_real_root(p: &Poly, bracket_hint: Option<(f64, f64)>) -> Result<f64, RootError> {
    let roots = real_roots(p)?;
    let c = p.to_f64_coeffs();
    if let Some((lo, hi)) = bracket_hint {
        if let Some(r) = solve_bracket(&c, lo, hi) {
            if roots.last().is_none_or(|&top| (top - r).abs() <= 1e-9 * top.abs().max(1.0)) {
                return Ok(r);
            }
        }
    }
    let bound = cauchy_bound(&c);
    roots.last().copied().ok_or(RootError::NoSignChange {
        poly: p.to_string(),
        lo: -bound,
        hi: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_format() {
        assert_eq!(Poly::from_ints(&[56, -56, -59, 0, 1]).to_string(), "x^4 - 59x^2 - 56x + 56");
        assert_eq!(Poly::from_ints(&[-1, 1]).to_string(), "x - 1");
        assert_eq!(Poly::from_ints(&[0, 0, -1]).to_string(), "-x^2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::new(vec![ratio(1, 2), rat(-3)]).to_string(), "-3x + 1/2");
    }

    #[test]
    fn arithmetic() {
        let a = Poly::from_ints(&[-1, 1, 1]); // x^2 + x - 1
        let b = Poly::from_ints(&[-7, -1, 1]); // x^2 - x - 7
        assert_eq!(&a * &b, Poly::from_ints(&[7, -6, -9, 0, 1]));
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).degree(), None);
        assert_eq!(a.derivative(), Poly::from_ints(&[1, 2]));
        assert_eq!(a.eval(&rat(2)), rat(5));
    }

    #[test]
    fn roots_of_simple_polys() {
        assert_eq!(largest_real_root(&Poly::from_ints(&[-1, 1]), None).unwrap(), 1.0);
        // x^2 - x - 8 at m = 9
        let r = largest_real_root(&Poly::from_ints(&[-8, -1, 1]), None).unwrap();
        assert!((r - (1.0 + 33f64.sqrt()) / 2.0).abs() < 1e-12);
        let roots = real_roots(&Poly::from_ints(&[-6, 11, -6, 1])).unwrap();
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([1.0, 2.0, 3.0]) {
            assert!((r - want).abs() < 1e-12);
        }
        // close roots 1 and 1.001
        let close = &Poly::from_ints(&[-1, 1]) * &Poly::new(vec![ratio(-1001, 1000), rat(1)]);
        assert!((largest_real_root(&close, None).unwrap() - 1.001).abs() < 1e-12);
        // all roots negative
        let neg = Poly::from_ints(&[6, 5, 1]);
        assert!((largest_real_root(&neg, None).unwrap() + 2.0).abs() < 1e-12);
    }

    #[test]
    fn root_errors() {
        assert_eq!(largest_real_root(&Poly::zero(), None), Err(RootError::ZeroPolynomial));
        assert!(matches!(largest_real_root(&Poly::from_ints(&[3]), None), Err(RootError::Constant(_))));
        assert!(matches!(
            largest_real_root(&Poly::from_ints(&[1, 0, 1]), None),
            Err(RootError::NoSignChange { .. })
        ));
    }

    #[test]
    fn hint_cannot_hide_a_larger_root() {
        let p = Poly::from_ints(&[-6, 11, -6, 1]);
        let r = largest_real_root(&p, Some((0.5, 1.5))).unwrap();
        assert!((r - 3.0).abs() < 1e-12);
        let r = largest_real_root(&p, Some((2.5, 3.5))).unwrap();
        assert!((r - 3.0).abs() < 1e-12);
    }

    #[test]
    fn characteristic_polynomial_routes_agree() {
        let a: RatMatrix = vec![
            vec![rat(1), rat(4), rat(6), rat(0)],
            vec![rat(2), rat(0), rat(0), rat(1)],
            vec![rat(2), rat(0), rat(0), rat(0)],
            vec![rat(0), rat(4), rat(0), rat(0)],
        ];
        assert_eq!(char_poly_cofactor(&a), char_poly_leverrier(&a));
        let k2: RatMatrix = vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]];
        assert_eq!(char_poly_cofactor(&k2), Poly::from_ints(&[-1, 0, 1]));
        let frac: RatMatrix = vec![vec![ratio(1, 2), rat(1)], vec![rat(3), ratio(-2, 3)]];
        assert_eq!(char_poly_cofactor(&frac), char_poly_leverrier(&frac));
    }
}
