//! Twisted loop algebras `L(A, sigma) = sum_i A_i (x) t^(i/m)` and the mode
//! algebra `Alg(A, sigma)`, the quotient of `L(A, sigma)` by the image of the
//! full derivation.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::coefficients::{binomial, format_sum, CycloField, CycloScalar, Exponent, Rational};
use crate::conformal::{lambda_bracket, to_hat_basis, AlgebraDef, ConfElt, GenId, Parity};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseEchelon, SparseRow};
use crate::morphisms::GenMorphism;

/// A vector of `V` spanning part of the eigenspace `A_residue`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenVector {
    pub residue: u32,
    pub parity: Parity,
    /// Coordinates over the generators.
    pub coords: Vec<CycloScalar>,
}

/// One term `c * (a_(j) b)` of an eigenbasis bracket, with the result
/// `D^(dpow) e` expressed over the eigenbasis.
#[derive(Clone, Debug)]
struct ProductTerm {
    n: u32,
    dpow: u32,
    target: usize,
    coeff: CycloScalar,
}

#[derive(Clone, Debug)]
pub struct LoopAlgebra {
    base: AlgebraDef,
    order: u32,
    basis: Vec<EigenVector>,
    /// Generator coordinates to eigenbasis coordinates, when the basis spans `V`.
    change: Option<Matrix>,
    products: Option<Vec<Vec<Vec<ProductTerm>>>>,
}

fn sigma_matrix(alg: &AlgebraDef, sigma: &GenMorphism) -> Result<Matrix> {
    if sigma.level() != 1 {
        return Err(Error::LevelMismatch(format!(
            "{} is defined at level {}, twists must be given at level 1",
            sigma.name,
            sigma.level()
        )));
    }
    let n = alg.dim();
    let mut m = Matrix::zeros(alg.field(), n, n);
    for (i, x) in sigma.images().iter().enumerate() {
        if !x.is_undecorated() || !x.is_t_free() {
            return Err(Error::Invalid(format!(
                "image of {} does not lie in V (x) 1",
                alg.gen_name(i)
            )));
        }
        for (k, c) in x.terms() {
            m[(k.gen, i)] = c.clone();
        }
    }
    Ok(m)
}

fn normalize(mut v: Vec<CycloScalar>) -> Vec<CycloScalar> {
    if let Some(lead) = v.iter().find(|c| !c.is_zero()).cloned() {
        let inv = lead.inv().expect("nonzero");
        for c in &mut v {
            *c = &*c * &inv;
        }
    }
    v
}

/// Decomposes `V` into eigenspaces of `sigma` for the eigenvalues `xi_m^i`.
pub fn eigenspaces(alg: &AlgebraDef, sigma: &GenMorphism, m: u32) -> Result<LoopAlgebra> {
    if m == 0 {
        return Err(Error::OrderMismatch("order must be positive".into()));
    }
    let field = alg.field();
    let mat = sigma_matrix(alg, sigma)?;
    if !mat.pow(m).is_identity() {
        return Err(Error::OrderMismatch(format!("{}^{m} is not the identity", sigma.name)));
    }
    let xi = field.root_of_unity(m)?;
    let n = alg.dim();
    let mut basis = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let idx: Vec<GenId> = (0..n).filter(|&i| alg.parity(i) == parity).collect();
        if idx.is_empty() {
            continue;
        }
        let mut block = Matrix::zeros(field, idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                block[(a, b)] = mat[(i, j)].clone();
            }
        }
        for r in 0..m {
            let ev = xi.pow(r as u64);
            for v in block.sub_scalar_identity(&ev).nullspace() {
                let mut coords = vec![field.zero(); n];
                for (a, c) in v.into_iter().enumerate() {
                    coords[idx[a]] = c;
                }
                basis.push(EigenVector {
                    residue: r,
                    parity,
                    coords: normalize(coords),
                });
            }
        }
    }
    if basis.len() != n {
        return Err(Error::NotSemisimple);
    }
    LoopAlgebra::from_parts(alg.clone(), m, basis)
}

impl LoopAlgebra {
    /// Assembles a loop algebra from explicit eigenvectors. The vectors are not
    /// required to span `V`; without a spanning basis the mode algebra is unavailable.
    pub fn from_parts(base: AlgebraDef, order: u32, basis: Vec<EigenVector>) -> Result<LoopAlgebra> {
        let n = base.dim();
        for v in &basis {
            if v.coords.len() != n || v.residue >= order {
                return Err(Error::Invalid("malformed eigenvector".into()));
            }
        }
        let change = if basis.len() == n {
            let p = Matrix::from_rows(
                (0..n)
                    .map(|g| basis.iter().map(|v| v.coords[g].clone()).collect())
                    .collect(),
            );
            p.inverse()
        } else {
            None
        };
        let mut out = LoopAlgebra {
            base,
            order,
            basis,
            change,
            products: None,
        };
        if out.change.is_some() {
            out.products = Some(out.product_table()?);
        }
        Ok(out)
    }

    pub fn base(&self) -> &AlgebraDef {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn field(&self) -> &'static CycloField {
        self.base.field()
    }

    pub fn basis(&self) -> &[EigenVector] {
        &self.basis
    }

    /// The eigenvector as an element of `A (x) 1`.
    pub fn element(&self, i: usize) -> ConfElt {
        let field = self.field();
        let mut x = ConfElt::zero(field);
        for (g, c) in self.basis[i].coords.iter().enumerate() {
            x.add_scaled(&ConfElt::gen(field, g), c);
        }
        x
    }

    /// A readable name: the generator itself or a parenthesised combination.
    pub fn basis_name(&self, i: usize) -> String {
        let coords = &self.basis[i].coords;
        let nonzero: Vec<usize> = (0..coords.len()).filter(|&g| !coords[g].is_zero()).collect();
        if let [g] = nonzero[..] {
            if coords[g].is_one() {
                return self.base.gen_name(g).to_string();
            }
        }
        let body = format_sum(
            nonzero
                .iter()
                .map(|&g| (&coords[g], self.base.gen_name(g).to_string())),
        );
        format!("({body})")
    }

    /// Coordinates of a `V`-vector over the eigenbasis.
    pub fn eigen_coords(&self, v: &[CycloScalar]) -> Result<Vec<CycloScalar>> {
        let change = self
            .change
            .as_ref()
            .ok_or_else(|| Error::Invalid("the loop basis does not span V".into()))?;
        let col = Matrix::from_rows(v.iter().map(|c| vec![c.clone()]).collect());
        Ok(change.mul(&col).column(0))
    }

    /// Whether `mu` lies in the mode coset `residue/m + Z` of basis vector `i`.
    pub fn in_coset(&self, i: usize, mu: Exponent) -> bool {
        let shifted = mu - Exponent::new(self.basis[i].residue as i64, self.order as i64);
        shifted.is_integer()
    }

    fn span_contains(&self, residue: u32, v: &[CycloScalar]) -> bool {
        let mut ech = SparseEchelon::new();
        for b in self.basis.iter().filter(|b| b.residue == residue) {
            ech.insert(sparse(&b.coords));
        }
        ech.contains(&sparse(v))
    }

    /// For every eigenbasis pair, the n-products re-expressed over the eigenbasis.
    fn product_table(&self) -> Result<Vec<Vec<Vec<ProductTerm>>>> {
        let k = self.basis.len();
        let elements: Vec<ConfElt> = (0..k).map(|i| self.element(i)).collect();
        let mut table = Vec::with_capacity(k);
        for a in &elements {
            let mut row = Vec::with_capacity(k);
            for b in &elements {
                let poly = lambda_bracket(&self.base, a, b)?;
                let mut terms = Vec::new();
                for (&n, x) in poly.coeffs() {
                    let mut by_dpow: BTreeMap<u32, Vec<CycloScalar>> = BTreeMap::new();
                    for (key, c) in x.terms() {
                        let v = by_dpow
                            .entry(key.dpow)
                            .or_insert_with(|| vec![self.field().zero(); self.base.dim()]);
                        v[key.gen] = c.clone();
                    }
                    for (dpow, v) in by_dpow {
                        for (target, coeff) in self.eigen_coords(&v)?.into_iter().enumerate() {
                            if !coeff.is_zero() {
                                terms.push(ProductTerm {
                                    n,
                                    dpow,
                                    target,
                                    coeff,
                                });
                            }
                        }
                    }
                }
                row.push(terms);
            }
            table.push(row);
        }
        Ok(table)
    }

    /// `v_mu` for a generator `v`, split over the eigenbasis; every component
    /// must land in its own mode coset.
    pub fn generator_mode(&self, g: GenId, mu: Exponent) -> Result<AlgElt> {
        let field = self.field();
        let mut e = vec![field.zero(); self.base.dim()];
        e[g] = field.one();
        let mut out = AlgElt::zero(field);
        for (i, c) in self.eigen_coords(&e)?.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !self.in_coset(i, mu) {
                return Err(Error::CosetViolation {
                    element: self.base.gen_name(g).to_string(),
                    mode: mu.to_string(),
                });
            }
            out.add_term(i, mu, c);
        }
        Ok(out)
    }

    pub fn format_alg(&self, x: &AlgElt) -> String {
        format_sum(
            x.terms
                .iter()
                .map(|((i, mu), c)| (c, format!("{}[{mu}]", self.basis_name(*i)))),
        )
    }
}

fn sparse(v: &[CycloScalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Whether `x` lies in `L(A, sigma)`.
pub fn loop_membership(l: &LoopAlgebra, x: &ConfElt) -> bool {
    let field = l.field();
    let n = l.base.dim();
    let mut groups: BTreeMap<(u32, Exponent), Vec<CycloScalar>> = BTreeMap::new();
    for (key, c) in to_hat_basis(x) {
        let v = groups
            .entry((key.dpow, key.exp))
            .or_insert_with(|| vec![field.zero(); n]);
        v[key.gen] = c;
    }
    groups.into_iter().all(|((_, q), v)| match q.scaled(l.order) {
        Some(j) => l.span_contains(j.rem_euclid(l.order as i64) as u32, &v),
        None => false,
    })
}

/// Outcome of [`split_check`] on the exponent window `[-W, W]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub window: Exponent,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    /// Basis vectors `v (x) t^q` of the window outside the image.
    pub missing: Vec<(GenId, Exponent)>,
}

impl SplitReport {
    pub fn injective(&self) -> bool {
        self.rank == self.domain_dim
    }

    pub fn surjective(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn bijective(&self) -> bool {
        self.injective() && self.surjective()
    }
}

/// Checks that `L(A, sigma) (x)_R S_m -> A (x) S_m` is bijective on the window.
///
/// Over `R`, `L(A, sigma)` is free on `a (x) t^(r/m)` and `S_m` on `t^(k/m)`
/// for `0 <= k < m`, so the domain basis on the window is the set of triples
/// `(a, i, k)` with `i = r mod m` and `|(i + k)/m| <= W`.
pub fn split_check(l: &LoopAlgebra, window: Exponent) -> Result<SplitReport> {
    let m = l.order as i64;
    let jmax = (window.ratio() * m).floor().to_integer();
    if jmax < 0 {
        return Err(Error::Invalid("window must be non-negative".into()));
    }
    let n = l.base.dim();
    let width = (2 * jmax + 1) as usize;
    let index = |g: GenId, q: Exponent| -> Option<usize> {
        let j = q.scaled(l.order)?;
        (j.abs() <= jmax).then(|| g * width + (j + jmax) as usize)
    };
    let mut ech = SparseEchelon::new();
    let mut domain_dim = 0;
    for (a, v) in l.basis.iter().enumerate() {
        let elt = l.element(a);
        for k in 0..m {
            for i in (-jmax - m)..=jmax {
                if (i - v.residue as i64).rem_euclid(m) != 0 || (i + k).abs() > jmax {
                    continue;
                }
                domain_dim += 1;
                let image = elt.shift(Exponent::new(i, m)).shift(Exponent::new(k, m));
                let mut row = SparseRow::new();
                for (key, c) in image.terms() {
                    let col = index(key.gen, key.exp).expect("image stays in the window");
                    row.insert(col, c.clone());
                }
                ech.insert(row);
            }
        }
    }
    let field = l.field();
    let mut missing = Vec::new();
    for g in 0..n {
        for j in -jmax..=jmax {
            let q = Exponent::new(j, m);
            let col = index(g, q).expect("in window");
            if !ech.contains(&SparseRow::from([(col, field.one())])) {
                missing.push((g, q));
            }
        }
    }
    Ok(SplitReport {
        window,
        domain_dim,
        codomain_dim: n * width,
        rank: ech.rank(),
        missing,
    })
}

/// An element `sum c * a_mu` of `Alg(A, sigma)`, indexed by eigenbasis vector and mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElt {
    field: &'static CycloField,
    terms: BTreeMap<(usize, Exponent), CycloScalar>,
}

impl AlgElt {
    pub fn zero(field: &'static CycloField) -> AlgElt {
        AlgElt {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn mode(field: &'static CycloField, i: usize, mu: Exponent) -> AlgElt {
        let mut out = AlgElt::zero(field);
        out.add_term(i, mu, field.one());
        out
    }

    pub fn terms(&self) -> &BTreeMap<(usize, Exponent), CycloScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize, mu: Exponent) -> CycloScalar {
        self.terms
            .get(&(i, mu))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, i: usize, mu: Exponent, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, mu)).or_insert_with(|| self.field.zero());
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&(i, mu));
        }
    }

    pub fn add_scaled(&mut self, other: &AlgElt, c: &CycloScalar) {
        for (&(i, mu), x) in &other.terms {
            self.add_term(i, mu, x * c);
        }
    }

    pub fn scale(&self, c: &CycloScalar) -> AlgElt {
        let mut out = AlgElt::zero(self.field);
        out.add_scaled(self, c);
        out
    }
}

/// Raw symbols `(D^(j) a)_mu`, keyed by `(a, j, mu)`.
pub type RawModes = BTreeMap<(usize, u32, Exponent), CycloScalar>;

/// Eliminates derivatives with `(D^(j) a)_mu = (-1)^j C(mu, j) a_(mu - j)`.
pub fn alg_reduce(l: &LoopAlgebra, raw: &RawModes) -> Result<AlgElt> {
    let mut out = AlgElt::zero(l.field());
    for (&(a, j, mu), c) in raw {
        if a >= l.basis.len() {
            return Err(Error::UnknownGenerator(format!("#{a}")));
        }
        if !l.in_coset(a, mu) {
            return Err(Error::CosetViolation {
                element: l.basis_name(a),
                mode: mu.to_string(),
            });
        }
        let mut b = binomial(&mu.to_rational(), j);
        if j % 2 == 1 {
            b = -b;
        }
        out.add_term(a, mu - Exponent::int(j as i64), c.scale(&b));
    }
    Ok(out)
}

/// `[a_mu, b_nu] = sum_j C(mu, j) (a_(j) b)_(mu + nu - j)`.
pub fn alg_bracket(l: &LoopAlgebra, a: usize, mu: Exponent, b: usize, nu: Exponent) -> Result<AlgElt> {
    let products = l
        .products
        .as_ref()
        .ok_or_else(|| Error::Invalid("the loop basis does not span V".into()))?;
    for (i, q) in [(a, mu), (b, nu)] {
        if i >= l.basis.len() {
            return Err(Error::UnknownGenerator(format!("#{i}")));
        }
        if !l.in_coset(i, q) {
            return Err(Error::CosetViolation {
                element: l.basis_name(i),
                mode: q.to_string(),
            });
        }
    }
    let mu_q = mu.to_rational();
    let mut raw = RawModes::new();
    for t in &products[a][b] {
        let bin = binomial(&mu_q, t.n);
        if bin.is_zero() {
            continue;
        }
        let mode = mu + nu - Exponent::int(t.n as i64);
        let e = raw
            .entry((t.target, t.dpow, mode))
            .or_insert_with(|| l.field().zero());
        *e += &t.coeff.scale(&bin);
    }
    raw.retain(|_, c| !c.is_zero());
    alg_reduce(l, &raw)
}

/// Bilinear extension of [`alg_bracket`].
pub fn alg_bracket_elts(l: &LoopAlgebra, x: &AlgElt, y: &AlgElt) -> Result<AlgElt> {
    let mut out = AlgElt::zero(l.field());
    for (&(a, mu), c) in &x.terms {
        for (&(b, nu), d) in &y.terms {
            out.add_scaled(&alg_bracket(l, a, mu, b, nu)?, &(c * d));
        }
    }
    Ok(out)
}

/// Eigenvalues of `x -> [L_1, x]` on the modes of one parity inside a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L0Spectrum {
    pub eigenvalues: BTreeSet<Rational>,
    /// Fractional parts in `[0, 1)`; unlike the eigenvalues, independent of the window.
    pub fractional: BTreeSet<Rational>,
}

pub fn l0_spectrum(l: &LoopAlgebra, parity: Parity, window: Exponent) -> Result<L0Spectrum> {
    let field = l.field();
    let lg = l.base.index_of("L")?;
    let mut e = vec![field.zero(); l.base.dim()];
    e[lg] = field.one();
    let coords = l.eigen_coords(&e)?;
    let mut l1 = AlgElt::zero(field);
    for (i, c) in coords.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if l.basis[i].residue != 0 {
            return Err(Error::LNotFixed);
        }
        l1.add_term(i, Exponent::int(1), c);
    }

    let m = l.order as i64;
    let jmax = (window.ratio() * m).floor().to_integer();
    let mut modes: Vec<(Exponent, usize)> = Vec::new();
    for (i, v) in l.basis.iter().enumerate() {
        if v.parity != parity {
            continue;
        }
        for j in -jmax..=jmax {
            if (j - v.residue as i64).rem_euclid(m) == 0 {
                modes.push((Exponent::new(j, m), i));
            }
        }
    }
    modes.sort();

    let mut diagonal = Vec::with_capacity(modes.len());
    let (mut upper, mut lower) = (true, true);
    for &(mu, i) in &modes {
        let x = alg_bracket_elts(l, &l1, &AlgElt::mode(field, i, mu))?;
        for &(b, nu) in x.terms().keys() {
            match (nu, b).cmp(&(mu, i)) {
                std::cmp::Ordering::Less => upper = false,
                std::cmp::Ordering::Greater => lower = false,
                std::cmp::Ordering::Equal => {}
            }
        }
        diagonal.push(x.coeff(i, mu));
    }
    if !upper && !lower {
        return Err(Error::Invalid(
            "L_0 is not triangular on the mode basis".into(),
        ));
    }
    let mut out = L0Spectrum {
        eigenvalues: BTreeSet::new(),
        fractional: BTreeSet::new(),
    };
    for d in diagonal {
        let q = d
            .as_rational()
            .ok_or_else(|| Error::Invalid(format!("L_0 eigenvalue {d} is not rational")))?;
        out.fractional.insert(&q - q.floor());
        out.eigenvalues.insert(q);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{make_n2, make_n4, n4};
    use crate::coefficients::rat;
    use crate::morphisms::{n2_omega, n4_auto, Sl2OverS};

    fn f() -> &'static CycloField {
        CycloField::get(24)
    }

    fn n2_omega_loop() -> LoopAlgebra {
        let a = make_n2();
        let w = n2_omega(&a).unwrap();
        eigenspaces(&a, &w, 2).unwrap()
    }

    fn names_by_residue(l: &LoopAlgebra, r: u32) -> Vec<String> {
        (0..l.basis().len())
            .filter(|&i| l.basis()[i].residue == r)
            .map(|i| l.basis_name(i))
            .collect()
    }

    #[test]
    fn omega_eigenspaces() {
        let l = n2_omega_loop();
        assert_eq!(names_by_residue(&l, 0), ["L", "(G+ + G-)"]);
        assert_eq!(names_by_residue(&l, 1), ["J", "(G+ - G-)"]);
    }

    #[test]
    fn wrong_order_is_rejected() {
        let a = make_n2();
        let w = n2_omega(&a).unwrap();
        assert!(matches!(eigenspaces(&a, &w, 3), Err(Error::OrderMismatch(_))));
    }

    #[test]
    fn n4_order_four_twist() {
        let a = make_n4();
        let i = f().root_of_unity(4).unwrap();
        let x = [[i.clone(), f().zero()], [f().zero(), -&i]];
        let s = n4_auto(&a, &Sl2OverS::identity(f()), &x).unwrap();
        let l = eigenspaces(&a, &s, 4).unwrap();
        let res = |g: usize| {
            l.basis()
                .iter()
                .find(|v| v.coords[g].is_one() && v.coords.iter().filter(|c| !c.is_zero()).count() == 1)
                .map(|v| v.residue)
        };
        assert_eq!(res(n4::L), Some(0));
        assert_eq!(res(n4::G[0]), Some(1));
        assert_eq!(res(n4::GBAR[1]), Some(3));
    }

    #[test]
    fn membership() {
        let l = n2_omega_loop();
        let j = 1;
        assert!(loop_membership(&l, &ConfElt::term(f().one(), j, 0, Exponent::new(1, 2))));
        assert!(!loop_membership(&l, &ConfElt::gen(f(), j)));
        let lt = ConfElt::term(f().one(), 0, 0, Exponent::int(1));
        assert!(loop_membership(&l, &lt.apply_partial()));
    }

    #[test]
    fn reduce_examples() {
        let l = n2_omega_loop();
        let mut raw = RawModes::new();
        raw.insert((0, 1, Exponent::int(3)), f().one());
        assert_eq!(l.format_alg(&alg_reduce(&l, &raw).unwrap()), "-3*L[2]");
        let mut raw = RawModes::new();
        raw.insert((0, 1, Exponent::ZERO), f().one());
        assert!(alg_reduce(&l, &raw).unwrap().is_zero());
        let half = Exponent::new(1, 2);
        let gm = 3;
        let mut raw = RawModes::new();
        raw.insert((gm, 2, half), f().one());
        let x = alg_reduce(&l, &raw).unwrap();
        assert_eq!(x.coeff(gm, Exponent::new(-3, 2)), f().rational(rat(-1, 8)));
    }

    #[test]
    fn witt_relation() {
        let a = make_n2();
        let l = eigenspaces(&a, &GenMorphism::identity(&a, 1), 1).unwrap();
        let x = alg_bracket(&l, 0, Exponent::int(2), 0, Exponent::int(-1)).unwrap();
        assert_eq!(l.format_alg(&x), "3*L[0]");
    }

    #[test]
    fn coset_violation() {
        let l = n2_omega_loop();
        assert!(matches!(
            alg_bracket(&l, 3, Exponent::ZERO, 0, Exponent::ZERO),
            Err(Error::CosetViolation { .. })
        ));
        assert!(l.generator_mode(2, Exponent::ZERO).is_err());
    }

    #[test]
    fn split_counterexample() {
        let l = n2_omega_loop();
        let kept: Vec<EigenVector> = l.basis().iter().filter(|v| v.residue == 0).cloned().collect();
        let bad = LoopAlgebra::from_parts(l.base().clone(), 2, kept).unwrap();
        let r = split_check(&bad, Exponent::int(2)).unwrap();
        assert!(!r.surjective());
        assert!(r.missing.contains(&(1, Exponent::new(1, 2))));
    }
}
