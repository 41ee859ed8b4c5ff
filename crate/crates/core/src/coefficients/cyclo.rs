//! Exact arithmetic in the cyclotomic field `Q(zeta_N)`.
//!
//! Elements are stored as sparse coefficient lists over the power basis
//! `1, zeta, ..., zeta^(phi(N)-1)`. Every power `zeta^e` with `e < N` has a
//! precomputed reduction modulo the N-th cyclotomic polynomial, built once per
//! conductor and shared for the lifetime of the process.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default conductor: covers roots of unity of orders 1, 2, 3, 4, 6, 8, 12, 24.
pub const DEFAULT_CONDUCTOR: u32 = 24;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The field `Q(zeta_N)` for a fixed conductor `N`.
pub struct CycloField {
    conductor: u32,
    degree: usize,
    /// `reductions[e]` is `zeta^e` expressed in the power basis.
    reductions: Vec<Vec<(u32, i64)>>,
    /// Units of `Z/NZ` other than 1, used to build norms for inversion.
    galois: Vec<u32>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.conductor)
    }
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}
impl Eq for CycloField {}

fn registry() -> &'static Mutex<HashMap<u32, &'static CycloField>> {
    static REG: OnceLock<Mutex<HashMap<u32, &'static CycloField>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_div(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    debug_assert!(lead == 1);
    let qlen = num.len() - dd;
    let mut quo = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd] / lead;
        quo[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quo
}

impl CycloField {
    /// Returns the shared field of the given conductor, building it on first use.
    pub fn get(conductor: u32) -> &'static CycloField {
        assert!(conductor >= 1, "conductor must be positive");
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(f) = reg.get(&conductor) {
            return f;
        }
        let field: &'static CycloField = Box::leak(Box::new(CycloField::build(conductor)));
        reg.insert(conductor, field);
        field
    }

    fn build(n: u32) -> CycloField {
        let phi = cyclotomic_polynomial(n);
        let degree = phi.len() - 1;
        let mut reductions = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..n {
            reductions.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| (i as u32, *c))
                    .collect(),
            );
            // multiply by zeta and reduce the overflow coefficient
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] -= top * phi[i];
                }
            }
        }
        let galois = (2..n).filter(|a| a.gcd(&n) == 1).collect();
        CycloField {
            conductor: n,
            degree,
            reductions,
            galois,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `phi(N)`, the degree of the field over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero(&'static self) -> CycloScalar {
        CycloScalar {
            field: self,
            coeffs: Vec::new(),
        }
    }

    pub fn one(&'static self) -> CycloScalar {
        self.rational(Rational::one())
    }

    pub fn int(&'static self, n: i64) -> CycloScalar {
        self.rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn frac(&'static self, n: i64, d: i64) -> CycloScalar {
        self.rational(rat(n, d))
    }

    pub fn rational(&'static self, q: Rational) -> CycloScalar {
        let coeffs = if q.is_zero() { Vec::new() } else { vec![(0, q)] };
        CycloScalar {
            field: self,
            coeffs,
        }
    }

    /// `zeta_N^e` for any integer exponent.
    pub fn zeta_pow(&'static self, e: i64) -> CycloScalar {
        let n = self.conductor as i64;
        let e = e.rem_euclid(n) as usize;
        CycloScalar {
            field: self,
            coeffs: self.reductions[e]
                .iter()
                .map(|&(i, c)| (i, Rational::from_integer(BigInt::from(c))))
                .collect(),
        }
    }

    /// The compatible primitive m-th root of unity `xi_m = zeta_N^(N/m)`.
    pub fn root_of_unity(&'static self, m: u32) -> Result<CycloScalar> {
        if m == 0 || !self.conductor.is_multiple_of(m) {
            return Err(Error::ConductorMismatch {
                order: m,
                conductor: self.conductor,
            });
        }
        Ok(self.zeta_pow((self.conductor / m) as i64))
    }
}

/// An element of `Q(zeta_N)`.
#[derive(Clone)]
pub struct CycloScalar {
    field: &'static CycloField,
    /// Sorted by exponent, no zero coefficients.
    coeffs: Vec<(u32, Rational)>,
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for CycloScalar {}

impl CycloScalar {
    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].0 == 0 && self.coeffs[0].1.is_one()
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.as_slice() {
            [] => Some(Rational::zero()),
            [(0, q)] => Some(q.clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Coefficients over the power basis, sorted by exponent.
    pub fn coefficients(&self) -> &[(u32, Rational)] {
        &self.coeffs
    }

    fn check_field(&self, other: &CycloScalar) {
        assert!(
            std::ptr::eq(self.field, other.field) || self.field == other.field,
            "mixed conductors: {} vs {}",
            self.field.conductor,
            other.field.conductor
        );
    }

    pub fn scale(&self, q: &Rational) -> CycloScalar {
        if q.is_zero() {
            return self.field.zero();
        }
        CycloScalar {
            field: self.field,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    fn from_dense(field: &'static CycloField, dense: Vec<Rational>) -> CycloScalar {
        CycloScalar {
            field,
            coeffs: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u32, c))
                .collect(),
        }
    }

    fn mul_ref(&self, other: &CycloScalar) -> CycloScalar {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return self.field.zero();
        }
        if let [(0, q)] = self.coeffs.as_slice() {
            return other.scale(q);
        }
        if let [(0, q)] = other.coeffs.as_slice() {
            return self.scale(q);
        }
        let field = self.field;
        let mut dense = vec![Rational::zero(); field.degree];
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let prod = ca * cb;
                let e = (ea + eb) as usize;
                if e < field.degree {
                    dense[e] += prod;
                } else {
                    for (i, c) in &field.reductions[e % field.conductor as usize] {
                        dense[*i as usize] += &prod * BigInt::from(*c);
                    }
                }
            }
        }
        CycloScalar::from_dense(field, dense)
    }

    fn add_ref(&self, other: &CycloScalar, sign: bool) -> CycloScalar {
        self.check_field(other);
        let mut out = Vec::with_capacity(self.coeffs.len() + other.coeffs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.coeffs.len() || j < other.coeffs.len() {
            let take = match (self.coeffs.get(i), other.coeffs.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                (None, _) => Ordering::Greater,
            };
            match take {
                Ordering::Less => {
                    out.push(self.coeffs[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (e, c) = &other.coeffs[j];
                    out.push((*e, if sign { c.clone() } else { -c }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (e, a) = &self.coeffs[i];
                    let b = &other.coeffs[j].1;
                    let c = if sign { a + b } else { a - b };
                    if !c.is_zero() {
                        out.push((*e, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        CycloScalar {
            field: self.field,
            coeffs: out,
        }
    }

    /// The Galois conjugate `zeta -> zeta^a` for `a` coprime to the conductor.
    pub fn galois_conjugate(&self, a: u32) -> CycloScalar {
        let field = self.field;
        let n = field.conductor as u64;
        let mut dense = vec![Rational::zero(); field.degree];
        for (e, c) in &self.coeffs {
            let target = ((*e as u64 * a as u64) % n) as usize;
            for (i, r) in &field.reductions[target] {
                dense[*i as usize] += c * BigInt::from(*r);
            }
        }
        CycloScalar::from_dense(field, dense)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<CycloScalar> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(self.field.rational(q.recip()));
        }
        // x * prod_{a != 1} sigma_a(x) is the field norm, a rational number.
        let mut cofactor = self.field.one();
        for &a in &self.field.galois {
            cofactor = &cofactor * &self.galois_conjugate(a);
        }
        let norm = (self * &cofactor)
            .as_rational()
            .expect("norm of a cyclotomic element is rational");
        Some(cofactor.scale(&norm.recip()))
    }

    pub fn pow(&self, mut e: u64) -> CycloScalar {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Power with a possibly negative exponent; panics on `0^(-k)`.
    pub fn powi(&self, e: i64) -> CycloScalar {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inv().expect("inverse of zero").pow(e.unsigned_abs())
        }
    }

    /// If the element is `zeta_N^k` for some `k`, returns that `k` in `0..N`.
    pub fn root_exponent(&self) -> Option<u32> {
        (0..self.field.conductor).find(|&k| self.field.zeta_pow(k as i64) == *self)
    }

    /// A deterministic total order used to pick canonical representatives.
    pub fn canonical_cmp(&self, other: &CycloScalar) -> Ordering {
        for (a, b) in self.coeffs.iter().zip(other.coeffs.iter()) {
            let ord = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.coeffs.len().cmp(&other.coeffs.len())
    }

    /// Whether the leading (lowest exponent) coefficient is negative.
    pub fn leading_negative(&self) -> bool {
        self.coeffs.first().is_some_and(|(_, c)| c.is_negative())
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if *e == 0 {
                write!(f, "{}", fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "zeta^{e}")?;
            } else {
                write!(f, "{}*zeta^{e}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a CycloScalar> for &'a CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: &'a CycloScalar) -> CycloScalar {
                $body(self, rhs)
            }
        }
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: CycloScalar) -> CycloScalar {
                $body(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $method(self, rhs: &'a CycloScalar) -> CycloScalar {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &CycloScalar, b: &CycloScalar| a.add_ref(b, true));
forward_binop!(Sub, sub, |a: &CycloScalar, b: &CycloScalar| a.add_ref(b, false));
forward_binop!(Mul, mul, |a: &CycloScalar, b: &CycloScalar| a.mul_ref(b));

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        *self = self.add_ref(rhs, true);
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: &CycloScalar) {
        *self = self.add_ref(rhs, false);
    }
}

impl MulAssign<&CycloScalar> for CycloScalar {
    fn mul_assign(&mut self, rhs: &CycloScalar) {
        *self = self.mul_ref(rhs);
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            field: self.field,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f24() -> &'static CycloField {
        CycloField::get(24)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(24), vec![1, 0, 0, 0, -1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(120).len() - 1, 32);
    }

    #[test]
    fn square_root_of_unity_is_minus_one() {
        let f = f24();
        assert_eq!(f.root_of_unity(2).unwrap(), f.int(-1));
    }

    #[test]
    fn eighth_root_squares_to_fourth_root() {
        let f = f24();
        let x = f.root_of_unity(8).unwrap();
        assert_eq!(&x * &x, f.root_of_unity(4).unwrap());
    }

    #[test]
    fn cube_root_satisfies_phi3() {
        let f = f24();
        let z = f.root_of_unity(3).unwrap();
        assert!((&z * &z + &z + f.one()).is_zero());
    }

    #[test]
    fn conductor_mismatch() {
        assert!(matches!(
            f24().root_of_unity(5),
            Err(Error::ConductorMismatch { order: 5, .. })
        ));
    }

    #[test]
    fn compatible_roots_chain() {
        for n in [24u32, 120] {
            let f = CycloField::get(n);
            for m in (1..=n).filter(|m| n % m == 0) {
                for l in (1..=n / m).filter(|l| n % (l * m) == 0) {
                    let big = f.root_of_unity(l * m).unwrap();
                    assert_eq!(big.pow(l as u64), f.root_of_unity(m).unwrap());
                }
            }
        }
    }

    #[test]
    fn inverse_of_nonrational() {
        let f = f24();
        let x = f.zeta_pow(1) + f.int(2) + f.zeta_pow(7).scale(&rat(-3, 5));
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn display() {
        let f = f24();
        let x = f.frac(1, 2) - f.zeta_pow(3) + f.zeta_pow(2).scale(&rat(2, 1));
        assert_eq!(x.to_string(), "1/2 + 2*zeta^2 - zeta^3");
        assert_eq!(f.int(-3).to_string(), "-3");
        assert_eq!(f.zero().to_string(), "0");
    }

    #[test]
    fn root_exponent_roundtrip() {
        let f = f24();
        for k in 0..24 {
            assert_eq!(f.zeta_pow(k).root_exponent(), Some(k as u32));
        }
        assert_eq!(f.int(2).root_exponent(), None);
    }
}
