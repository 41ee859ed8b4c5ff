//! The lambda-bracket evaluator on `A (x) S_m`.
//!
//! Generator pairs come from the table (or skew-symmetry), D-decorations are
//! handled by sesquilinearity, and `t`-decorations by the base-change product
//! `(a (x) r)_(n) (b (x) s) = sum_j (a_(n+j) b) (x) delta^(j)(r) s`.

use std::borrow::Cow;
use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::coefficients::{binomial, Exponent};
use crate::error::{Error, Result};

use super::algebra::AlgebraDef;
use super::element::{ConfElt, GenId, LambdaPoly};

/// `[a lambda b]` from `[b lambda a]` via
/// `a_(n) b = -p(a,b) sum_j (-1)^(j+n) D^(j) (b_(n+j) a)`.
pub fn skew_flip(alg: &AlgebraDef, a: GenId, b: GenId, ba: &LambdaPoly) -> LambdaPoly {
    let field = alg.field();
    let mut out = LambdaPoly::zero(field);
    let Some(deg) = ba.degree() else {
        return out;
    };
    let sign = -alg.sign(a, b);
    for n in 0..=deg {
        let mut acc = ConfElt::zero(field);
        for k in n..=deg {
            let j = k - n;
            let s = if (j + n) % 2 == 0 { sign } else { -sign };
            acc.add_scaled(&ba.coeff(k).partial_a_divided(j), &field.int(s));
        }
        out.add_at(n, &acc);
    }
    out
}

/// `[v_i lambda v_j]`, completing a missing orientation by skew-symmetry.
pub fn generator_bracket(alg: &AlgebraDef, i: GenId, j: GenId) -> Result<Cow<'_, LambdaPoly>> {
    alg.generator(i)?;
    alg.generator(j)?;
    if let Some(p) = alg.table_entry(i, j) {
        return Ok(Cow::Borrowed(p));
    }
    if let Some(p) = alg.table_entry(j, i) {
        return Ok(Cow::Owned(skew_flip(alg, i, j, p)));
    }
    Err(Error::Invalid(format!(
        "no bracket given for ({}, {}) in either orientation",
        alg.gen_name(i),
        alg.gen_name(j)
    )))
}

/// `(D^(a) v_i) lambda (D^(b) v_j) = (-lambda)^(a) (D + lambda)^(b) [v_i lambda v_j]`.
pub fn decorated_bracket(
    alg: &AlgebraDef,
    i: GenId,
    a: u32,
    j: GenId,
    b: u32,
) -> Result<LambdaPoly> {
    let base = generator_bracket(alg, i, j)?;
    let right = base.partial_plus_lambda_divided(b);
    let left = right.times_lambda_divided(a);
    Ok(if a % 2 == 1 {
        left.scale(&-alg.field().one())
    } else {
        left
    })
}

fn check_operand(alg: &AlgebraDef, x: &ConfElt) -> Result<()> {
    if x.field() != alg.field() {
        return Err(Error::Invalid(format!(
            "operand lives over Q(zeta_{}) but the algebra over Q(zeta_{})",
            x.field().conductor(),
            alg.conductor()
        )));
    }
    for g in x.generators() {
        alg.generator(g)?;
    }
    Ok(())
}

/// Full bilinear lambda-bracket `[x lambda y]` on `A (x) S_m`.
pub fn lambda_bracket(alg: &AlgebraDef, x: &ConfElt, y: &ConfElt) -> Result<LambdaPoly> {
    check_operand(alg, x)?;
    check_operand(alg, y)?;
    let field = alg.field();
    let mut cache: HashMap<(GenId, u32, GenId, u32), LambdaPoly> = HashMap::new();
    let mut out = LambdaPoly::zero(field);
    for (kx, cx) in x.terms() {
        for (ky, cy) in y.terms() {
            let key = (kx.gen, kx.dpow, ky.gen, ky.dpow);
            let q = match cache.entry(key) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(decorated_bracket(alg, kx.gen, kx.dpow, ky.gen, ky.dpow)?),
            };
            let q = &*q;
            let c = cx * cy;
            let p = kx.exp.to_rational();
            for (m, qm) in q.coeffs() {
                for j in 0..=*m {
                    let b = binomial(&p, j);
                    if b == num_traits::Zero::zero() {
                        continue;
                    }
                    let shift = kx.exp + ky.exp - Exponent::int(j as i64);
                    out.add_scaled_at(m - j, &qm.shift(shift), &c.scale(&b));
                }
            }
        }
    }
    Ok(out)
}

/// The n-th product `x_(n) y`.
pub fn n_product(alg: &AlgebraDef, x: &ConfElt, y: &ConfElt, n: u32) -> Result<ConfElt> {
    Ok(lambda_bracket(alg, x, y)?.coeff(n))
}
