//! The differential Laurent rings `S_m = k[t^(1/m), t^(-1/m)]` with `d/dt`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::cyclo::{CycloField, CycloScalar, Rational};
use crate::error::{Error, Result};

/// A rational exponent `p/q` of `t`, kept in lowest terms with `q > 0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponent(Ratio<i64>);

impl Exponent {
    pub const ZERO: Exponent = Exponent(Ratio::new_raw(0, 1));

    pub fn new(num: i64, den: i64) -> Exponent {
        assert!(den != 0, "zero denominator in exponent");
        Exponent(Ratio::new(num, den))
    }

    pub fn int(n: i64) -> Exponent {
        Exponent(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(BigInt::from(self.numer()), BigInt::from(self.denom()))
    }

    /// Whether the denominator divides `m`.
    pub fn fits_level(&self, m: u32) -> bool {
        (m as i64) % self.denom() == 0
    }

    /// `self * m`, as an integer, when the exponent lives at level `m`.
    pub fn scaled(&self, m: u32) -> Option<i64> {
        let v = self.0 * Ratio::from_integer(m as i64);
        v.is_integer().then(|| v.to_integer())
    }

    pub fn abs(&self) -> Exponent {
        Exponent(self.0.abs())
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Exponent {
        Exponent(self.0 - self.0.floor())
    }
}

impl From<Ratio<i64>> for Exponent {
    fn from(r: Ratio<i64>) -> Self {
        Exponent(r)
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 + rhs.0)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 - rhs.0)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Generalized binomial coefficient `C(q, j) = q(q-1)...(q-j+1)/j!` for rational `q`.
pub fn binomial(q: &Rational, j: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc *= q - Rational::from_integer(BigInt::from(i));
        acc /= Rational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// Integer binomial as a rational.
pub fn binomial_int(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    binomial(&Rational::from_integer(BigInt::from(n)), k)
}

/// An element of `S_m`.
#[derive(Clone)]
pub struct LaurentElt {
    field: &'static CycloField,
    level: u32,
    terms: BTreeMap<Exponent, CycloScalar>,
}

impl fmt::Debug for LaurentElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [level {}]", self.level)
    }
}

impl PartialEq for LaurentElt {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl Eq for LaurentElt {}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl LaurentElt {
    pub fn zero(field: &'static CycloField) -> LaurentElt {
        LaurentElt {
            field,
            level: 1,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &'static CycloField) -> LaurentElt {
        LaurentElt::constant(field.one())
    }

    pub fn constant(c: CycloScalar) -> LaurentElt {
        LaurentElt::monomial(c, Exponent::ZERO)
    }

    /// `c * t^q`.
    pub fn monomial(c: CycloScalar, q: Exponent) -> LaurentElt {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(q, c);
        }
        LaurentElt {
            field,
            level: q.denom() as u32,
            terms,
        }
    }

    /// `t^q` with coefficient one.
    pub fn t_pow(field: &'static CycloField, q: Exponent) -> LaurentElt {
        LaurentElt::monomial(field.one(), q)
    }

    pub fn from_terms(
        field: &'static CycloField,
        terms: impl IntoIterator<Item = (Exponent, CycloScalar)>,
    ) -> LaurentElt {
        let mut out = LaurentElt::zero(field);
        for (q, c) in terms {
            out.add_term(q, c);
        }
        out
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Re-tags the element as living in `S_m`; fails if some exponent needs a finer level.
    pub fn at_level(mut self, m: u32) -> Result<LaurentElt> {
        if let Some(q) = self.terms.keys().find(|q| !q.fits_level(m)) {
            return Err(Error::LevelMismatch(format!(
                "exponent {q} does not live at level {m}"
            )));
        }
        self.level = m;
        Ok(self)
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, CycloScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Exponent::ZERO)
                .is_some_and(CycloScalar::is_one)
    }

    pub fn coeff(&self, q: Exponent) -> CycloScalar {
        self.terms.get(&q).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, q: Exponent, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        self.level = lcm(self.level, q.denom() as u32);
        match self.terms.entry(q) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &CycloScalar) -> LaurentElt {
        let mut out = LaurentElt::zero(self.field);
        out.level = self.level;
        for (q, a) in &self.terms {
            out.add_term(*q, a * c);
        }
        out
    }

    /// Multiplies by `t^q`.
    pub fn shift(&self, q: Exponent) -> LaurentElt {
        LaurentElt {
            field: self.field,
            level: lcm(self.level, q.denom() as u32),
            terms: self.terms.iter().map(|(e, c)| (*e + q, c.clone())).collect(),
        }
    }

    /// The derivation `d/dt`.
    pub fn delta_t(&self) -> LaurentElt {
        let mut out = LaurentElt::zero(self.field);
        out.level = self.level;
        for (q, c) in &self.terms {
            if !q.is_zero() {
                out.add_term(*q - Exponent::int(1), c.scale(&q.to_rational()));
            }
        }
        out
    }

    /// The divided power `delta_t^(j) = (d/dt)^j / j!`.
    pub fn delta_t_divided(&self, j: u32) -> LaurentElt {
        let mut out = LaurentElt::zero(self.field);
        out.level = self.level;
        for (q, c) in &self.terms {
            let b = binomial(&q.to_rational(), j);
            out.add_term(*q - Exponent::int(j as i64), c.scale(&b));
        }
        out
    }

    /// Galois action of `g` in `Z/mZ`: `t^(p/m) -> xi_m^(g p) t^(p/m)`.
    pub fn galois_act(&self, g: i64, m: u32) -> Result<LaurentElt> {
        let xi = self.field.root_of_unity(m)?;
        let mut out = LaurentElt::zero(self.field);
        out.level = self.level;
        for (q, c) in &self.terms {
            let p = q.scaled(m).ok_or_else(|| {
                Error::LevelMismatch(format!("exponent {q} does not live at level {m}"))
            })?;
            let e = (g * p).rem_euclid(m as i64);
            out.add_term(*q, c * &xi.pow(e as u64));
        }
        Ok(out)
    }

    /// The substitution `t -> t^(-1)`.
    pub fn invert_variable(&self) -> LaurentElt {
        LaurentElt {
            field: self.field,
            level: self.level,
            terms: self.terms.iter().map(|(q, c)| (-*q, c.clone())).collect(),
        }
    }

    /// Returns `(alpha, q)` when the element is a unit `alpha t^q`.
    pub fn as_monomial(&self) -> Option<(CycloScalar, Exponent)> {
        if self.terms.len() == 1 {
            let (q, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *q))
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_monomial().is_some()
    }

    /// Inverse of a unit; units of `S_m` are exactly the nonzero monomials.
    pub fn inv(&self) -> Result<LaurentElt> {
        let (c, q) = self
            .as_monomial()
            .ok_or_else(|| Error::NonUnit(self.to_string()))?;
        let mut out = LaurentElt::monomial(c.inv().expect("nonzero"), -q);
        out.level = self.level;
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> LaurentElt {
        let mut acc = LaurentElt::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn mul_ref(&self, other: &LaurentElt) -> LaurentElt {
        let mut out = LaurentElt::zero(self.field);
        out.level = lcm(self.level, other.level);
        for (qa, ca) in &self.terms {
            for (qb, cb) in &other.terms {
                out.add_term(*qa + *qb, ca * cb);
            }
        }
        out
    }

    fn add_ref(&self, other: &LaurentElt, sign: bool) -> LaurentElt {
        let mut out = self.clone();
        out.level = lcm(self.level, other.level);
        for (q, c) in &other.terms {
            out.add_term(*q, if sign { c.clone() } else { -c });
        }
        out
    }
}

impl fmt::Display for LaurentElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (q, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = split_sign(c);
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if q.is_zero() {
                write!(f, "{}", coeff_text(&mag))?;
            } else if mag.is_one() {
                write!(f, "t^{{{q}}}")?;
            } else {
                write!(f, "{}*t^{{{q}}}", coeff_text(&mag))?;
            }
        }
        Ok(())
    }
}

/// Splits a scalar into a sign and magnitude when it is a single signed term.
pub(crate) fn split_sign(c: &CycloScalar) -> (bool, CycloScalar) {
    if c.coefficients().len() == 1 && c.leading_negative() {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

/// A scalar printed as a standalone expression.
pub(crate) fn coeff_text(c: &CycloScalar) -> String {
    if c.coefficients().len() > 1 {
        format!("({c})")
    } else {
        c.to_string()
    }
}

/// Prints `sum c_i * label_i`, e.g. `3*L[0] - (1 + zeta^2)*G[1/2]`.
pub fn format_sum<'a>(terms: impl IntoIterator<Item = (&'a CycloScalar, String)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = split_sign(c);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&coeff_text(&mag));
            out.push('*');
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

macro_rules! laurent_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a LaurentElt> for &'a LaurentElt {
            type Output = LaurentElt;
            fn $method(self, rhs: &'a LaurentElt) -> LaurentElt {
                $body(self, rhs)
            }
        }
        impl $tr<LaurentElt> for LaurentElt {
            type Output = LaurentElt;
            fn $method(self, rhs: LaurentElt) -> LaurentElt {
                $body(&self, &rhs)
            }
        }
    };
}

laurent_binop!(Add, add, |a: &LaurentElt, b: &LaurentElt| a.add_ref(b, true));
laurent_binop!(Sub, sub, |a: &LaurentElt, b: &LaurentElt| a.add_ref(b, false));
laurent_binop!(Mul, mul, |a: &LaurentElt, b: &LaurentElt| a.mul_ref(b));

impl Neg for &LaurentElt {
    type Output = LaurentElt;
    fn neg(self) -> LaurentElt {
        self.scale(&-self.field.one())
    }
}
