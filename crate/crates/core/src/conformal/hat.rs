//! The basis `D^(l) (v (x) t^q)` of `A (x) S`, with `D` the full derivation.

use std::collections::BTreeMap;

use crate::coefficients::{CycloField, CycloScalar};

use super::element::{ConfElt, TermKey};

/// Coordinates in the hat basis; `TermKey::dpow` holds the hat degree `l`.
pub type HatCoords = BTreeMap<TermKey, CycloScalar>;

/// `D^(l) (v (x) t^q)` as an ordinary element.
pub fn hat_monomial(field: &'static CycloField, key: TermKey) -> ConfElt {
    ConfElt::term(field.one(), key.gen, 0, key.exp).partial_hat_divided(key.dpow)
}

/// Back-substitution from the highest `D_A`-degree down: the leading term of
/// `D^(j)(v (x) t^q)` is `D_A^(j) v (x) t^q`, the rest has lower degree.
pub fn to_hat_basis(x: &ConfElt) -> HatCoords {
    let field = x.field();
    let mut rest = x.clone();
    let mut out = HatCoords::new();
    while let Some((&key, c)) = rest.terms().iter().max_by_key(|(k, _)| k.dpow) {
        let c = c.clone();
        rest.add_scaled(&hat_monomial(field, key), &-&c);
        out.insert(key, c);
    }
    out
}

pub fn from_hat_basis(field: &'static CycloField, coords: &HatCoords) -> ConfElt {
    let mut out = ConfElt::zero(field);
    for (key, c) in coords {
        out.add_scaled(&hat_monomial(field, *key), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Exponent;

    fn f() -> &'static CycloField {
        CycloField::get(24)
    }

    #[test]
    fn partial_l_times_t() {
        let x = ConfElt::term(f().one(), 0, 1, Exponent::int(1));
        let h = to_hat_basis(&x);
        let expected: HatCoords = [
            (TermKey::new(0, 1, Exponent::int(1)), f().one()),
            (TermKey::new(0, 0, Exponent::ZERO), f().int(-1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(h, expected);
        assert_eq!(from_hat_basis(f(), &h), x);
    }

    #[test]
    fn degree_zero_terms_are_fixed() {
        let x = ConfElt::term(f().int(3), 2, 0, Exponent::new(-5, 3));
        let h = to_hat_basis(&x);
        assert_eq!(h.len(), 1);
        assert_eq!(h[&TermKey::new(2, 0, Exponent::new(-5, 3))], f().int(3));
    }
}
