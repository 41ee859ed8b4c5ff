//! Windowed centroid of a twisted loop algebra: k-linear maps `chi` with
//! `chi(a_(n) b) = a_(n) chi(b)`, solved one degree shift at a time.
//!
//! The loop algebra is graded by `deg D^(l)(v (x) t^q) = q - wt(v) - l`, with
//! `D` the full derivation; every n-product is homogeneous, so the centroid
//! equations split by the shift `delta` of `chi`.

use std::collections::{BTreeMap, HashMap};

use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::coefficients::{CycloScalar, Exponent, LaurentElt};
use crate::conformal::{from_hat_basis, lambda_bracket, to_hat_basis, HatCoords, LambdaPoly, TermKey};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseEchelon, SparseRow};
use crate::loops::LoopAlgebra;

/// `D^(hat)(e_eigen (x) t^exp)` for an eigenbasis vector `e_eigen`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LoopKey {
    pub eigen: usize,
    pub hat: u32,
    pub exp: Exponent,
}

/// A homogeneous centroid element restricted to the interior basis vectors
/// whose images fit inside the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentroidSolution {
    pub shift: Exponent,
    /// Images of the interior basis, in hat coordinates over the generators.
    pub images: BTreeMap<LoopKey, HatCoords>,
}

struct Setup<'a> {
    l: &'a LoopAlgebra,
    window: Exponent,
    hat_max: u32,
    weights: Vec<Exponent>,
}

impl Setup<'_> {
    fn degree(&self, k: &LoopKey) -> Exponent {
        k.exp - self.weights[k.eigen] - Exponent::int(k.hat as i64)
    }

    fn in_window(&self, q: Exponent) -> bool {
        q.abs() <= self.window
    }

    fn hat_coords(&self, k: &LoopKey) -> HatCoords {
        self.l.basis()[k.eigen]
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| (TermKey::new(g, k.hat, k.exp), c.clone()))
            .collect()
    }

    /// All basis keys of a given degree, in or out of the window.
    fn keys_of_degree(&self, deg: Exponent) -> Vec<LoopKey> {
        let mut out = Vec::new();
        for (eigen, w) in self.weights.iter().enumerate() {
            for hat in 0..=self.hat_max {
                let exp = deg + *w + Exponent::int(hat as i64);
                if self.l.in_coset(eigen, exp) {
                    out.push(LoopKey { eigen, hat, exp });
                }
            }
        }
        out
    }

    /// Targets of `chi_delta` on `k`, or `None` when some lies outside the window.
    fn targets(&self, k: &LoopKey, delta: Exponent) -> Option<Vec<LoopKey>> {
        let t = self.keys_of_degree(self.degree(k) + delta);
        t.iter().all(|z| self.in_window(z.exp)).then_some(t)
    }

    /// Rewrites generator hat coordinates over the loop basis.
    fn to_loop(&self, h: &HatCoords) -> Result<BTreeMap<LoopKey, CycloScalar>> {
        let field = self.l.field();
        let n = self.l.base().dim();
        let mut groups: BTreeMap<(u32, Exponent), Vec<CycloScalar>> = BTreeMap::new();
        for (k, c) in h {
            groups.entry((k.dpow, k.exp)).or_insert_with(|| vec![field.zero(); n])[k.gen] = c.clone();
        }
        let mut out = BTreeMap::new();
        for ((hat, exp), v) in groups {
            for (eigen, c) in self.l.eigen_coords(&v)?.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !self.l.in_coset(eigen, exp) {
                    return Err(Error::Invalid("product left the loop algebra".into()));
                }
                out.insert(LoopKey { eigen, hat, exp }, c);
            }
        }
        Ok(out)
    }
}

fn to_exponent(q: &crate::coefficients::Rational) -> Result<Exponent> {
    let n = q.numer().to_i64();
    let d = q.denom().to_i64();
    match (n, d) {
        (Some(n), Some(d)) => Ok(Exponent::from(Ratio::new(n, d))),
        _ => Err(Error::Invalid(format!("weight {q} is too large"))),
    }
}

fn eigen_weights(l: &LoopAlgebra) -> Result<Vec<Exponent>> {
    let weights = l.base().weights();
    l.basis()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut seen: Option<Exponent> = None;
            for (g, c) in v.coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let w = weights[g].as_ref().ok_or_else(|| {
                    Error::Invalid(format!("generator {} has no weight", l.base().gen_name(g)))
                })?;
                let w = to_exponent(w)?;
                if seen.is_some_and(|s| s != w) {
                    return Err(Error::Invalid(format!(
                        "eigenvector {} mixes weights",
                        l.basis_name(i)
                    )));
                }
                seen = Some(w);
            }
            Ok(seen.unwrap_or(Exponent::ZERO))
        })
        .collect()
}

/// Centroid elements on the window `|q| <= W`, checked on pairs from the
/// interior `|q| <= W'`. Shifts range over `|delta| <= W - 2W'`, the largest
/// for which interior products and their images stay inside the window.
pub fn centroid_basis(l: &LoopAlgebra, window: Exponent, interior: Exponent) -> Result<Vec<CentroidSolution>> {
    let slack = window - interior - interior;
    if interior < Exponent::ZERO || slack < Exponent::ZERO {
        return Err(Error::WindowTooSmall(format!(
            "interior {interior} needs a window of at least {}",
            interior + interior
        )));
    }
    let setup = Setup {
        l,
        window,
        hat_max: l.base().max_dpow(),
        weights: eigen_weights(l)?,
    };
    let m = l.order() as i64;
    let field = l.field();
    let vbound = l.base().vanishing_bound();

    let mut interior_keys = Vec::new();
    let jmax = (interior.ratio() * m).floor().to_integer();
    for eigen in 0..l.basis().len() {
        for j in -jmax..=jmax {
            let exp = Exponent::new(j, m);
            if !l.in_coset(eigen, exp) {
                continue;
            }
            for hat in 0..=setup.hat_max {
                interior_keys.push(LoopKey { eigen, hat, exp });
            }
        }
    }
    let undecorated: Vec<LoopKey> = interior_keys.iter().copied().filter(|k| k.hat == 0).collect();

    let mut bracket_cache: HashMap<(LoopKey, LoopKey), LambdaPoly> = HashMap::new();
    let mut bracket = |a: &LoopKey, z: &LoopKey| -> Result<LambdaPoly> {
        if let Some(p) = bracket_cache.get(&(*a, *z)) {
            return Ok(p.clone());
        }
        let x = from_hat_basis(field, &setup.hat_coords(a));
        let y = from_hat_basis(field, &setup.hat_coords(z));
        let p = lambda_bracket(l.base(), &x, &y)?;
        bracket_cache.insert((*a, *z), p.clone());
        Ok(p)
    };

    let smax = (slack.ratio() * m).floor().to_integer();
    let mut out = Vec::new();
    for s in -smax..=smax {
        let delta = Exponent::new(s, m);
        let mut unknowns: BTreeMap<(LoopKey, LoopKey), usize> = BTreeMap::new();
        let mut unknown = |w: LoopKey, z: LoopKey| -> usize {
            let next = unknowns.len();
            *unknowns.entry((w, z)).or_insert(next)
        };
        let mut ech = SparseEchelon::new();
        for a in &undecorated {
            for b in &interior_keys {
                let Some(b_targets) = setup.targets(b, delta) else {
                    continue;
                };
                let poly = bracket(a, b)?;
                let mut rhs_polys = Vec::with_capacity(b_targets.len());
                for z in &b_targets {
                    rhs_polys.push(bracket(a, z)?);
                }
                for n in 0..vbound {
                    let prod = setup.to_loop(&to_hat_basis(&poly.coeff(n)))?;
                    let mut lhs_targets = Vec::new();
                    let mut ok = true;
                    for w in prod.keys() {
                        match setup.targets(w, delta) {
                            Some(t) if w.hat <= setup.hat_max => lhs_targets.push(t),
                            _ => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if !ok {
                        continue;
                    }
                    let mut eqs: HashMap<TermKey, SparseRow> = HashMap::new();
                    let mut add = |h: &HatCoords, col: usize, c: &CycloScalar| {
                        for (key, v) in h {
                            let e = eqs
                                .entry(*key)
                                .or_default()
                                .entry(col)
                                .or_insert_with(|| field.zero());
                            *e += &(v * c);
                        }
                    };
                    for ((w, c), targets) in prod.iter().zip(&lhs_targets) {
                        for z in targets {
                            let col = unknown(*w, *z);
                            add(&setup.hat_coords(z), col, c);
                        }
                    }
                    let minus = -field.one();
                    for (z, p) in b_targets.iter().zip(&rhs_polys) {
                        let col = unknown(*b, *z);
                        add(&to_hat_basis(&p.coeff(n)), col, &minus);
                    }
                    for (_, mut row) in eqs {
                        row.retain(|_, v| !v.is_zero());
                        if !row.is_empty() {
                            ech.insert(row);
                        }
                    }
                }
            }
        }
        // Unknowns for interior elements that never entered an equation are free.
        for b in &interior_keys {
            if let Some(t) = setup.targets(b, delta) {
                for z in t {
                    unknown(*b, z);
                }
            }
        }

        let cols: Vec<((LoopKey, LoopKey), usize)> = unknowns.into_iter().collect();
        let interior_cols: Vec<usize> = cols
            .iter()
            .filter(|((w, _), _)| interior_keys.contains(w))
            .map(|(_, c)| *c)
            .collect();
        let null = ech.nullspace(cols.len());
        if null.is_empty() || interior_cols.is_empty() {
            continue;
        }
        // Independent restrictions to the interior.
        let mut restricted = Matrix::zeros(field, null.len(), interior_cols.len());
        for (i, v) in null.iter().enumerate() {
            for (j, c) in interior_cols.iter().enumerate() {
                if let Some(x) = v.get(c) {
                    restricted[(i, j)] = x.clone();
                }
            }
        }
        let pivots = restricted.rref();
        for row in 0..pivots.len() {
            let mut images: BTreeMap<LoopKey, HatCoords> = BTreeMap::new();
            for (j, col) in interior_cols.iter().enumerate() {
                let c = &restricted[(row, j)];
                if c.is_zero() {
                    continue;
                }
                let ((w, z), _) = cols.iter().find(|(_, k)| k == col).expect("column exists");
                let img = images.entry(*w).or_default();
                for (key, v) in setup.hat_coords(z) {
                    let e = img.entry(key).or_insert_with(|| field.zero());
                    *e += &(&v * c);
                }
                img.retain(|_, v| !v.is_zero());
            }
            for k in &interior_keys {
                if setup.targets(k, delta).is_some() {
                    images.entry(*k).or_default();
                }
            }
            normalize(&mut images, delta);
            out.push(CentroidSolution { shift: delta, images });
        }
    }
    Ok(out)
}

/// Scales so that the first undecorated image has coefficient one on its own
/// shifted basis vector, making scalar solutions exactly `t^delta`.
fn normalize(images: &mut BTreeMap<LoopKey, HatCoords>, delta: Exponent) {
    let lead = images.iter().find_map(|(k, img)| {
        if k.hat != 0 {
            return None;
        }
        img.iter()
            .find(|(t, _)| t.dpow == 0 && t.exp == k.exp + delta)
            .map(|(_, c)| c.clone())
    });
    let Some(inv) = lead.and_then(|c| c.inv()) else {
        return;
    };
    for img in images.values_mut() {
        for v in img.values_mut() {
            *v = &*v * &inv;
        }
    }
}

/// `r = c t^delta` when `chi` is multiplication by `r` on the interior.
pub fn is_scalar_action(l: &LoopAlgebra, chi: &CentroidSolution) -> Option<LaurentElt> {
    let field = l.field();
    let basis_elt = |k: &LoopKey| {
        l.element(k.eigen)
            .shift(k.exp)
            .partial_hat_divided(k.hat)
    };
    let (k0, img0) = chi.images.iter().find(|(k, _)| k.hat == 0)?;
    let expected0 = to_hat_basis(&basis_elt(k0).shift(chi.shift));
    let (key, base) = expected0.iter().next()?;
    let c = img0.get(key).cloned().unwrap_or_else(|| field.zero()) * base.inv()?;
    if c.is_zero() {
        return None;
    }
    let r = LaurentElt::monomial(c, chi.shift);
    chi.images
        .iter()
        .all(|(k, img)| to_hat_basis(&basis_elt(k).mul_laurent(&r)) == *img)
        .then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::make_n2;
    use crate::coefficients::CycloField;
    use crate::loops::eigenspaces;
    use crate::morphisms::{n2_omega, GenMorphism};

    #[test]
    fn small_window_is_rejected() {
        let a = make_n2();
        let l = eigenspaces(&a, &GenMorphism::identity(&a, 1), 1).unwrap();
        assert!(matches!(
            centroid_basis(&l, Exponent::int(1), Exponent::int(1)),
            Err(Error::WindowTooSmall(_))
        ));
    }

    #[test]
    fn omega_twist_centroid_is_laurent() {
        let a = make_n2();
        let l = eigenspaces(&a, &n2_omega(&a).unwrap(), 2).unwrap();
        let sols = centroid_basis(&l, Exponent::int(3), Exponent::int(1)).unwrap();
        let f = CycloField::get(24);
        let rs: Vec<LaurentElt> = sols.iter().map(|s| is_scalar_action(&l, s).unwrap()).collect();
        let expected: Vec<LaurentElt> = (-1..=1)
            .map(|j| LaurentElt::t_pow(f, Exponent::int(j)))
            .collect();
        assert_eq!(rs, expected);
    }

    #[test]
    fn corrupted_solution_is_not_scalar() {
        let a = make_n2();
        let l = eigenspaces(&a, &GenMorphism::identity(&a, 1), 1).unwrap();
        let sols = centroid_basis(&l, Exponent::int(2), Exponent::int(1)).unwrap();
        let id = sols.iter().find(|s| s.shift == Exponent::ZERO).unwrap();
        assert!(is_scalar_action(&l, id).unwrap().is_one());
        let mut bad = id.clone();
        let k = *bad.images.keys().last().unwrap();
        bad.images.insert(k, HatCoords::new());
        assert_eq!(is_scalar_action(&l, &bad), None);
    }
}
