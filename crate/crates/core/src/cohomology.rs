//! Galois 1-cocycles of `Z/mZ` with values in the automorphism groups of the
//! N=2 and N=4 algebras, and the invariants that classify them.

use std::fmt;

use num_integer::Integer;

use crate::coefficients::{CycloField, LaurentElt};
use crate::conformal::AlgebraDef;
use crate::error::{Error, Result};
use crate::morphisms::{
    compose, n2_omega, n2_theta, n4_auto, small_det, small_identity, small_mul, small_neg,
    GenMorphism, Sl2OverS, SmallMatrix,
};

/// A group on which `Z/mZ` acts through the Galois action on `S_m`.
pub trait TwistGroup: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn identity_like(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// `^g self` for `g` in `Z/mZ`.
    fn galois(&self, g: i64, m: u32) -> Result<Self>;

    fn pow(&self, n: u32) -> Self {
        (0..n).fold(self.identity_like(), |acc, _| acc.mul(self))
    }
}

/// `theta_s omega^eps` in `S^x semidirect Z/2`.
///
/// The non-trivial element of `Z/2` acts on `S^x` by inversion, which is
/// what conjugation by `omega` does: `omega theta_s omega = theta_(s^-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct N2AutElt {
    s: LaurentElt,
    eps: bool,
}

impl N2AutElt {
    pub fn new(s: LaurentElt, eps: bool) -> Result<N2AutElt> {
        if !s.is_unit() {
            return Err(Error::NonUnit(s.to_string()));
        }
        Ok(N2AutElt { s, eps })
    }

    pub fn identity(field: &'static CycloField) -> N2AutElt {
        N2AutElt {
            s: LaurentElt::one(field),
            eps: false,
        }
    }

    pub fn omega(field: &'static CycloField) -> N2AutElt {
        N2AutElt {
            s: LaurentElt::one(field),
            eps: true,
        }
    }

    pub fn s(&self) -> &LaurentElt {
        &self.s
    }

    pub fn eps(&self) -> bool {
        self.eps
    }

    pub fn to_morphism(&self, alg: &AlgebraDef) -> Result<GenMorphism> {
        let th = n2_theta(alg, &self.s)?;
        if self.eps {
            compose(&th, &n2_omega(alg)?)
        } else {
            Ok(th)
        }
    }
}

impl TwistGroup for N2AutElt {
    fn identity_like(&self) -> Self {
        N2AutElt::identity(self.s.field())
    }

    fn mul(&self, other: &Self) -> Self {
        let acted = if self.eps {
            other.s.inv().expect("units stay units")
        } else {
            other.s.clone()
        };
        N2AutElt {
            s: &self.s * &acted,
            eps: self.eps ^ other.eps,
        }
    }

    fn inverse(&self) -> Self {
        let inv = self.s.inv().expect("units stay units");
        N2AutElt {
            s: if self.eps { self.s.clone() } else { inv },
            eps: self.eps,
        }
    }

    fn galois(&self, g: i64, m: u32) -> Result<Self> {
        Ok(N2AutElt {
            s: self.s.galois_act(g, m)?,
            eps: self.eps,
        })
    }
}

impl fmt::Display for N2AutElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s, u8::from(self.eps))
    }
}

/// The class of `(Y, X)` in `(SL_2(S) x SL_2(k)) / <(-I, -I)>`, stored with
/// the sign that makes the first nonzero entry of `X` positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct N4AutElt {
    y: Sl2OverS,
    x: SmallMatrix,
}

impl N4AutElt {
    pub fn new(y: Sl2OverS, x: SmallMatrix) -> Result<N4AutElt> {
        let det = small_det(&x);
        if !det.is_one() {
            return Err(Error::Determinant(det.to_string()));
        }
        Ok(N4AutElt::canonical(y, x))
    }

    fn canonical(y: Sl2OverS, x: SmallMatrix) -> N4AutElt {
        let lead = x.iter().flatten().find(|c| !c.is_zero());
        if lead.is_some_and(|c| c.leading_negative()) {
            N4AutElt {
                y: y.neg(),
                x: small_neg(&x),
            }
        } else {
            N4AutElt { y, x }
        }
    }

    pub fn identity(field: &'static CycloField) -> N4AutElt {
        N4AutElt {
            y: Sl2OverS::identity(field),
            x: small_identity(field),
        }
    }

    /// `(I, X)`.
    pub fn constant(x: SmallMatrix) -> Result<N4AutElt> {
        let field = x[0][0].field();
        N4AutElt::new(Sl2OverS::identity(field), x)
    }

    pub fn y(&self) -> &Sl2OverS {
        &self.y
    }

    pub fn x(&self) -> &SmallMatrix {
        &self.x
    }

    pub fn to_morphism(&self, alg: &AlgebraDef) -> Result<GenMorphism> {
        n4_auto(alg, &self.y, &self.x)
    }
}

fn small_inverse(x: &SmallMatrix) -> SmallMatrix {
    [
        [x[1][1].clone(), -&x[0][1]],
        [-&x[1][0], x[0][0].clone()],
    ]
}

impl TwistGroup for N4AutElt {
    fn identity_like(&self) -> Self {
        N4AutElt::identity(self.y.field())
    }

    fn mul(&self, other: &Self) -> Self {
        N4AutElt::canonical(self.y.mul(&other.y), small_mul(&self.x, &other.x))
    }

    fn inverse(&self) -> Self {
        N4AutElt::canonical(self.y.inverse(), small_inverse(&self.x))
    }

    fn galois(&self, g: i64, m: u32) -> Result<Self> {
        Ok(N4AutElt::canonical(self.y.galois_act(g, m)?, self.x.clone()))
    }
}

impl fmt::Display for N4AutElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = &self.x;
        write!(
            f,
            "({}, [[{}, {}], [{}, {}]])",
            self.y, x[0][0], x[0][1], x[1][0], x[1][1]
        )
    }
}

/// A map `Z/mZ -> G`, stored by its values on `0, ..., m-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle<G> {
    pub m: u32,
    pub values: Vec<G>,
}

impl<G: TwistGroup> Cocycle<G> {
    pub fn value(&self, g: i64) -> &G {
        &self.values[g.rem_euclid(self.m as i64) as usize]
    }

    pub fn trivial(id: G, m: u32) -> Cocycle<G> {
        Cocycle {
            m,
            values: vec![id; m as usize],
        }
    }
}

/// `u(g + h) = u(g) . ^g u(h)` for all `g, h`.
pub fn check_cocycle<G: TwistGroup>(u: &Cocycle<G>) -> Result<bool> {
    let m = u.m as i64;
    if u.values.len() != u.m as usize {
        return Err(Error::Invalid("cocycle needs one value per residue".into()));
    }
    for g in 0..m {
        for h in 0..m {
            let rhs = u.value(g).mul(&u.value(h).galois(g, u.m)?);
            if *u.value(g + h) != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `u(n) = sigma^n`; requires `sigma^m = 1`.
pub fn cocycle_of<G: TwistGroup>(sigma: &G, m: u32) -> Result<Cocycle<G>> {
    if m == 0 {
        return Err(Error::OrderMismatch("modulus must be positive".into()));
    }
    if sigma.pow(m) != sigma.identity_like() {
        return Err(Error::OrderMismatch(format!("{sigma} has order not dividing {m}")));
    }
    Ok(Cocycle {
        m,
        values: (0..m).map(|n| sigma.pow(n)).collect(),
    })
}

/// The cohomologous cocycle `g^-1 . u(n) . ^n g`.
pub fn coboundary<G: TwistGroup>(u: &Cocycle<G>, g: &G) -> Result<Cocycle<G>> {
    let ginv = g.inverse();
    let values = (0..u.m as i64)
        .map(|n| Ok(ginv.mul(u.value(n)).mul(&g.galois(n, u.m)?)))
        .collect::<Result<_>>()?;
    Ok(Cocycle { m: u.m, values })
}

/// The `Z/2` component of `u(1)`, the image of the class in `H^1(Z/m, Z/2)`.
pub fn n2_component(u: &Cocycle<N2AutElt>) -> bool {
    u.m > 1 && u.values[1].eps
}

/// An unordered pair `{rho, rho^-1}` of roots of unity, written `zeta_order^k`
/// with `k` and `order - k` reduced modulo `order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootPair {
    pub order: u32,
    pub low: u32,
    pub high: u32,
}

impl RootPair {
    /// The pair containing `zeta_n^k`.
    pub fn from_root(n: u32, k: u32) -> RootPair {
        let k = k % n;
        let g = n.gcd(&k);
        let (order, k) = if k == 0 { (1, 0) } else { (n / g, k / g) };
        let other = (order - k) % order;
        RootPair {
            order,
            low: k.min(other),
            high: k.max(other),
        }
    }
}

impl fmt::Display for RootPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{zeta_{o}^{}, zeta_{o}^{}}}",
            self.low,
            self.high,
            o = self.order
        )
    }
}

/// `{rho, rho^-1}` with `rho = lambda^2` for the eigenvalues `lambda^(+-1)` of `X`;
/// found from `rho + rho^-1 = tr(X)^2 - 2`.
pub fn n4_invariant(x: &SmallMatrix) -> Result<RootPair> {
    let field = x[0][0].field();
    let det = small_det(x);
    if !det.is_one() {
        return Err(Error::Determinant(det.to_string()));
    }
    let n = field.conductor();
    let id = small_identity(field);
    let minus = small_neg(&id);
    let mut acc = x.clone();
    let mut finite = false;
    for _ in 0..n {
        if acc == id || acc == minus {
            finite = true;
            break;
        }
        acc = small_mul(&acc, x);
    }
    if !finite {
        return Err(Error::NotFiniteOrder);
    }
    let tr = &x[0][0] + &x[1][1];
    let target = &(&tr * &tr) - &field.int(2);
    (0..n)
        .find(|&k| {
            &field.zeta_pow(k as i64) + &field.zeta_pow(-(k as i64)) == target
        })
        .map(|k| RootPair::from_root(n, k))
        .ok_or(Error::NotFiniteOrder)
}

/// Invariants of the conjugacy classes of `PGL_2(k)` of order dividing `n`,
/// read off the lifts `diag(xi_2n^j, xi_2n^-j)`.
pub fn pgl2_classes(field: &'static CycloField, n: u32) -> Result<Vec<RootPair>> {
    let lam = field.root_of_unity(2 * n)?;
    let mut out = Vec::new();
    for j in 0..n {
        let l = lam.pow(j as u64);
        let linv = l.inv().expect("root of unity");
        let x = [[l, field.zero()], [field.zero(), linv]];
        let inv = n4_invariant(&x)?;
        if !out.contains(&inv) {
            out.push(inv);
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Exponent;

    fn f() -> &'static CycloField {
        CycloField::get(24)
    }

    #[test]
    fn n2_cocycle_examples() {
        let om = cocycle_of(&N2AutElt::omega(f()), 2).unwrap();
        assert!(check_cocycle(&om).unwrap());
        assert!(n2_component(&om));
        let bad = Cocycle {
            m: 2,
            values: vec![
                N2AutElt::identity(f()),
                N2AutElt::new(LaurentElt::t_pow(f(), Exponent::new(1, 2)), false).unwrap(),
            ],
        };
        assert!(!check_cocycle(&bad).unwrap());
        let triv = Cocycle::trivial(N2AutElt::identity(f()), 3);
        assert!(check_cocycle(&triv).unwrap());
        assert!(!n2_component(&triv));
    }

    #[test]
    fn n4_witness_flips_sign() {
        let i = f().root_of_unity(4).unwrap();
        let theta = [[i.clone(), f().zero()], [f().zero(), -&i]];
        let u = cocycle_of(&N4AutElt::constant(theta.clone()).unwrap(), 4).unwrap();
        assert!(check_cocycle(&u).unwrap());

        let ones = cocycle_of(&N4AutElt::constant(theta.clone()).unwrap(), 2);
        assert!(matches!(ones, Err(Error::OrderMismatch(_))));

        let half = Exponent::new(1, 2);
        let y = Sl2OverS::new([
            [LaurentElt::zero(f()), LaurentElt::t_pow(f(), half)],
            [-&LaurentElt::t_pow(f(), -half), LaurentElt::zero(f())],
        ])
        .unwrap();
        let g = N4AutElt::new(y, small_identity(f())).unwrap();
        let v = coboundary(&u, &g).unwrap();
        assert!(check_cocycle(&v).unwrap());
        let flipped = cocycle_of(&N4AutElt::constant(small_neg(&theta)).unwrap(), 4).unwrap();
        assert_eq!(v, flipped);

        let minus = cocycle_of(&N4AutElt::constant(small_neg(&small_identity(f()))).unwrap(), 2);
        let w = coboundary(&minus.unwrap(), &g).unwrap();
        assert_eq!(w, Cocycle::trivial(N4AutElt::identity(f()), 2));
    }

    #[test]
    fn invariants() {
        assert_eq!(n4_invariant(&small_identity(f())).unwrap(), RootPair::from_root(1, 0));
        let z8 = f().root_of_unity(8).unwrap();
        let x = [[z8.clone(), f().zero()], [f().zero(), z8.inv().unwrap()]];
        let p = n4_invariant(&x).unwrap();
        assert_eq!(p.to_string(), "{zeta_4^1, zeta_4^3}");
        assert_eq!(n4_invariant(&small_neg(&x)).unwrap(), p);
        let unipotent = [[f().one(), f().one()], [f().zero(), f().one()]];
        assert_eq!(n4_invariant(&unipotent), Err(Error::NotFiniteOrder));
    }

    #[test]
    fn class_counts() {
        let field = CycloField::get(120);
        for n in 1..=6 {
            assert_eq!(pgl2_classes(field, n).unwrap().len(), n as usize / 2 + 1);
        }
        assert!(pgl2_classes(f(), 5).is_err());
    }
}
