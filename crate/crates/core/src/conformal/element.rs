//! Elements of `A (x) S_m` and lambda-polynomials with such coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;

use crate::coefficients::{binomial_int, CycloField, CycloScalar, Exponent, LaurentElt};

/// Index of a generator inside its algebra.
pub type GenId = usize;

/// One basis monomial `D^(dpow) v_gen (x) t^exp`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TermKey {
    pub gen: GenId,
    pub dpow: u32,
    pub exp: Exponent,
}

impl TermKey {
    pub fn new(gen: GenId, dpow: u32, exp: Exponent) -> TermKey {
        TermKey { gen, dpow, exp }
    }
}

/// A finite sum of `c * D_A^(j) v (x) t^q`.
#[derive(Clone, Debug)]
pub struct ConfElt {
    field: &'static CycloField,
    level: u32,
    terms: BTreeMap<TermKey, CycloScalar>,
}

impl PartialEq for ConfElt {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl Eq for ConfElt {}

impl ConfElt {
    pub fn zero(field: &'static CycloField) -> ConfElt {
        ConfElt {
            field,
            level: 1,
            terms: BTreeMap::new(),
        }
    }

    /// The generator `v (x) 1`.
    pub fn gen(field: &'static CycloField, gen: GenId) -> ConfElt {
        ConfElt::term(field.one(), gen, 0, Exponent::ZERO)
    }

    pub fn term(c: CycloScalar, gen: GenId, dpow: u32, exp: Exponent) -> ConfElt {
        let mut out = ConfElt::zero(c.field());
        out.add_term(TermKey::new(gen, dpow, exp), c);
        out
    }

    pub fn from_terms(
        field: &'static CycloField,
        terms: impl IntoIterator<Item = (TermKey, CycloScalar)>,
    ) -> ConfElt {
        let mut out = ConfElt::zero(field);
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn with_level(mut self, m: u32) -> ConfElt {
        self.level = self.level.lcm(&m);
        self
    }

    pub fn terms(&self) -> &BTreeMap<TermKey, CycloScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &TermKey) -> CycloScalar {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, key: TermKey, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        self.level = self.level.lcm(&(key.exp.denom() as u32));
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ConfElt, c: &CycloScalar) {
        if c.is_zero() {
            return;
        }
        self.level = self.level.lcm(&other.level);
        for (k, v) in &other.terms {
            self.add_term(*k, v * c);
        }
    }

    pub fn scale(&self, c: &CycloScalar) -> ConfElt {
        let mut out = ConfElt::zero(self.field);
        out.level = self.level;
        out.add_scaled(self, c);
        out
    }

    /// Multiplication by `t^q` in the S-slot.
    pub fn shift(&self, q: Exponent) -> ConfElt {
        let mut out = ConfElt::zero(self.field);
        out.level = self.level.lcm(&(q.denom() as u32));
        for (k, c) in &self.terms {
            out.add_term(TermKey::new(k.gen, k.dpow, k.exp + q), c.clone());
        }
        out
    }

    /// The S-module action `s * x`.
    pub fn mul_laurent(&self, s: &LaurentElt) -> ConfElt {
        let mut out = ConfElt::zero(self.field);
        out.level = self.level.lcm(&s.level());
        for (q, c) in s.terms() {
            out.add_scaled(&self.shift(*q), c);
        }
        out
    }

    /// `D_A^(j) (x) 1`, using `D^(j) D^(i) = C(i+j, i) D^(i+j)`.
    pub fn partial_a_divided(&self, j: u32) -> ConfElt {
        if j == 0 {
            return self.clone();
        }
        let mut out = ConfElt::zero(self.field);
        out.level = self.level;
        for (k, c) in &self.terms {
            let b = binomial_int(k.dpow + j, j);
            out.add_term(TermKey::new(k.gen, k.dpow + j, k.exp), c.scale(&b));
        }
        out
    }

    /// `D_A (x) 1`.
    pub fn partial_a(&self) -> ConfElt {
        self.partial_a_divided(1)
    }

    /// `1 (x) delta_t^(j)`.
    pub fn delta_divided(&self, j: u32) -> ConfElt {
        let mut out = ConfElt::zero(self.field);
        out.level = self.level;
        for (k, c) in &self.terms {
            let b = crate::coefficients::binomial(&k.exp.to_rational(), j);
            let e = k.exp - Exponent::int(j as i64);
            out.add_term(TermKey::new(k.gen, k.dpow, e), c.scale(&b));
        }
        out
    }

    /// The derivation of `A (x) S`: `D_A (x) 1 + 1 (x) delta_t`.
    pub fn apply_partial(&self) -> ConfElt {
        self.partial_a() + self.delta_divided(1)
    }

    /// Divided power of the full derivation: `sum_i D_A^(i) (x) delta_t^(l-i)`.
    pub fn partial_hat_divided(&self, l: u32) -> ConfElt {
        let mut out = ConfElt::zero(self.field);
        out.level = self.level;
        for i in 0..=l {
            let piece = self.partial_a_divided(i).delta_divided(l - i);
            out.add_scaled(&piece, &self.field.one());
        }
        out
    }

    pub fn max_dpow(&self) -> u32 {
        self.terms.keys().map(|k| k.dpow).max().unwrap_or(0)
    }

    /// Whether every term has `t`-exponent zero, i.e. the element lies in `A (x) 1`.
    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|k| k.exp.is_zero())
    }

    /// Whether every term is an undecorated generator, i.e. lies in `V (x) S`.
    pub fn is_undecorated(&self) -> bool {
        self.terms.keys().all(|k| k.dpow == 0)
    }

    pub fn generators(&self) -> impl Iterator<Item = GenId> + '_ {
        self.terms.keys().map(|k| k.gen)
    }

    /// Restricts to the terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&TermKey) -> bool) -> ConfElt {
        let mut out = ConfElt::zero(self.field);
        out.level = self.level;
        for (k, c) in &self.terms {
            if keep(k) {
                out.add_term(*k, c.clone());
            }
        }
        out
    }

    /// Coefficient of generator `gen` as a Laurent element, for undecorated elements.
    pub fn laurent_coeff(&self, gen: GenId, dpow: u32) -> LaurentElt {
        LaurentElt::from_terms(
            self.field,
            self.terms
                .iter()
                .filter(|(k, _)| k.gen == gen && k.dpow == dpow)
                .map(|(k, c)| (k.exp, c.clone())),
        )
    }
}

impl<'a> Add<&'a ConfElt> for &'a ConfElt {
    type Output = ConfElt;
    fn add(self, rhs: &'a ConfElt) -> ConfElt {
        let mut out = self.clone();
        out.add_scaled(rhs, &self.field.one());
        out
    }
}

impl Add for ConfElt {
    type Output = ConfElt;
    fn add(self, rhs: ConfElt) -> ConfElt {
        &self + &rhs
    }
}

impl<'a> Sub<&'a ConfElt> for &'a ConfElt {
    type Output = ConfElt;
    fn sub(self, rhs: &'a ConfElt) -> ConfElt {
        let mut out = self.clone();
        out.add_scaled(rhs, &-self.field.one());
        out
    }
}

impl Sub for ConfElt {
    type Output = ConfElt;
    fn sub(self, rhs: ConfElt) -> ConfElt {
        &self - &rhs
    }
}

impl Neg for &ConfElt {
    type Output = ConfElt;
    fn neg(self) -> ConfElt {
        self.scale(&-self.field.one())
    }
}

impl Neg for ConfElt {
    type Output = ConfElt;
    fn neg(self) -> ConfElt {
        -&self
    }
}

/// `sum_n lambda^(n) * c_n`, in divided powers of lambda.
#[derive(Clone, Debug)]
pub struct LambdaPoly {
    field: &'static CycloField,
    coeffs: BTreeMap<u32, ConfElt>,
}

impl PartialEq for LambdaPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}
impl Eq for LambdaPoly {}

impl LambdaPoly {
    pub fn zero(field: &'static CycloField) -> LambdaPoly {
        LambdaPoly {
            field,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant polynomial `x` (no lambda).
    pub fn constant(x: ConfElt) -> LambdaPoly {
        let mut p = LambdaPoly::zero(x.field());
        p.add_at(0, &x);
        p
    }

    pub fn from_coeffs(
        field: &'static CycloField,
        coeffs: impl IntoIterator<Item = (u32, ConfElt)>,
    ) -> LambdaPoly {
        let mut p = LambdaPoly::zero(field);
        for (n, c) in coeffs {
            p.add_at(n, &c);
        }
        p
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, ConfElt> {
        &self.coeffs
    }

    /// The n-th product, i.e. the coefficient of `lambda^(n)`.
    pub fn coeff(&self, n: u32) -> ConfElt {
        self.coeffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| ConfElt::zero(self.field))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn level(&self) -> u32 {
        self.coeffs.values().fold(1, |acc, c| acc.lcm(&c.level()))
    }

    pub fn add_at(&mut self, n: u32, x: &ConfElt) {
        self.add_scaled_at(n, x, &self.field.one());
    }

    pub fn add_scaled_at(&mut self, n: u32, x: &ConfElt, c: &CycloScalar) {
        if x.is_zero() || c.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(n)
            .or_insert_with(|| ConfElt::zero(x.field()));
        entry.add_scaled(x, c);
        if entry.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    pub fn add_poly(&mut self, other: &LambdaPoly, c: &CycloScalar) {
        for (n, x) in &other.coeffs {
            self.add_scaled_at(*n, x, c);
        }
    }

    pub fn scale(&self, c: &CycloScalar) -> LambdaPoly {
        let mut out = LambdaPoly::zero(self.field);
        out.add_poly(self, c);
        out
    }

    pub fn map(&self, f: impl Fn(&ConfElt) -> ConfElt) -> LambdaPoly {
        LambdaPoly::from_coeffs(self.field, self.coeffs.iter().map(|(n, x)| (*n, f(x))))
    }

    pub fn try_map<E>(&self, f: impl Fn(&ConfElt) -> Result<ConfElt, E>) -> Result<LambdaPoly, E> {
        let mut out = LambdaPoly::zero(self.field);
        for (n, x) in &self.coeffs {
            out.add_at(*n, &f(x)?);
        }
        Ok(out)
    }

    /// Multiplication by `lambda^(k)`: `lambda^(k) lambda^(n) = C(n+k, k) lambda^(n+k)`.
    pub fn times_lambda_divided(&self, k: u32) -> LambdaPoly {
        let mut out = LambdaPoly::zero(self.field);
        for (n, x) in &self.coeffs {
            out.add_scaled_at(n + k, x, &self.field.rational(binomial_int(n + k, k)));
        }
        out
    }

    /// Applies `(D_A + lambda)^(k) = sum_i D_A^(i) lambda^(k-i)`.
    pub fn partial_plus_lambda_divided(&self, k: u32) -> LambdaPoly {
        let mut out = LambdaPoly::zero(self.field);
        for i in 0..=k {
            let shifted = self.map(|x| x.partial_a_divided(i));
            out.add_poly(&shifted.times_lambda_divided(k - i), &self.field.one());
        }
        out
    }

    pub fn max_dpow(&self) -> u32 {
        self.coeffs.values().map(ConfElt::max_dpow).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> &'static CycloField {
        CycloField::get(24)
    }

    #[test]
    fn partial_on_generator_times_t() {
        // D(L (x) t) = DL (x) t + L (x) 1
        let x = ConfElt::term(f().one(), 0, 0, Exponent::int(1));
        let expected = ConfElt::term(f().one(), 0, 1, Exponent::int(1))
            + ConfElt::term(f().one(), 0, 0, Exponent::ZERO);
        assert_eq!(x.apply_partial(), expected);
    }

    #[test]
    fn divided_power_bookkeeping() {
        let x = ConfElt::term(f().one(), 0, 1, Exponent::ZERO);
        assert_eq!(
            x.apply_partial(),
            ConfElt::term(f().int(2), 0, 2, Exponent::ZERO)
        );
    }

    #[test]
    fn partial_on_half_integer_power() {
        let x = ConfElt::term(f().one(), 1, 0, Exponent::new(1, 2));
        let expected = ConfElt::term(f().one(), 1, 1, Exponent::new(1, 2))
            + ConfElt::term(f().frac(1, 2), 1, 0, Exponent::new(-1, 2));
        assert_eq!(x.apply_partial(), expected);
        assert_eq!(x.apply_partial().level(), 2);
    }

    #[test]
    fn hat_divided_power_is_iterate_over_factorial() {
        let x = ConfElt::term(f().one(), 0, 1, Exponent::new(5, 2));
        let thrice = x.apply_partial().apply_partial().apply_partial();
        assert_eq!(x.partial_hat_divided(3), thrice.scale(&f().frac(1, 6)));
    }

    #[test]
    fn lambda_divided_products() {
        let x = ConfElt::gen(f(), 0);
        let p = LambdaPoly::constant(x.clone()).times_lambda_divided(1);
        let pp = p.times_lambda_divided(1);
        // lambda * lambda = 2 lambda^(2)
        assert_eq!(pp.coeff(2), x.scale(&f().int(2)));
    }
}
