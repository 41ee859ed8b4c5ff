//! The explicit automorphisms of the N=2 and N=4 algebras.

use std::fmt;

use num_integer::Integer;

use crate::builtins::pauli;
use crate::coefficients::{rat, CycloField, CycloScalar, Exponent, LaurentElt};
use crate::conformal::{AlgebraDef, ConfElt};
use crate::error::{Error, Result};

use super::{from_laurent_coords, GenMorphism};

/// `2x2` matrix with entries in `k`.
pub type SmallMatrix = [[CycloScalar; 2]; 2];

pub fn small_identity(field: &'static CycloField) -> SmallMatrix {
    [[field.one(), field.zero()], [field.zero(), field.one()]]
}

pub fn small_det(x: &SmallMatrix) -> CycloScalar {
    &(&x[0][0] * &x[1][1]) - &(&x[0][1] * &x[1][0])
}

pub fn small_mul(a: &SmallMatrix, b: &SmallMatrix) -> SmallMatrix {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn small_neg(a: &SmallMatrix) -> SmallMatrix {
    [[-&a[0][0], -&a[0][1]], [-&a[1][0], -&a[1][1]]]
}

/// An element of `SL_2(S_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2OverS {
    e: [[LaurentElt; 2]; 2],
}

impl Sl2OverS {
    pub fn new(e: [[LaurentElt; 2]; 2]) -> Result<Sl2OverS> {
        let y = Sl2OverS { e };
        let det = y.det();
        if !det.is_one() {
            return Err(Error::Determinant(det.to_string()));
        }
        Ok(y)
    }

    pub fn identity(field: &'static CycloField) -> Sl2OverS {
        Sl2OverS::constant(&small_identity(field)).expect("det 1")
    }

    pub fn constant(x: &SmallMatrix) -> Result<Sl2OverS> {
        let c = |i: usize, j: usize| LaurentElt::constant(x[i][j].clone());
        Sl2OverS::new([[c(0, 0), c(0, 1)], [c(1, 0), c(1, 1)]])
    }

    /// `diag(s, s^-1)` for a unit `s`.
    pub fn diagonal(s: &LaurentElt) -> Result<Sl2OverS> {
        let z = LaurentElt::zero(s.field());
        Sl2OverS::new([[s.clone(), z.clone()], [z, s.inv()?]])
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentElt {
        &self.e[i][j]
    }

    pub fn entries(&self) -> &[[LaurentElt; 2]; 2] {
        &self.e
    }

    pub fn field(&self) -> &'static CycloField {
        self.e[0][0].field()
    }

    fn det(&self) -> LaurentElt {
        &(&self.e[0][0] * &self.e[1][1]) - &(&self.e[0][1] * &self.e[1][0])
    }

    pub fn level(&self) -> u32 {
        self.e
            .iter()
            .flatten()
            .flat_map(|x| x.terms().keys())
            .fold(1u32, |m, q| m.lcm(&(q.denom() as u32)))
    }

    fn map(&self, f: impl Fn(&LaurentElt) -> LaurentElt) -> Sl2OverS {
        Sl2OverS {
            e: [
                [f(&self.e[0][0]), f(&self.e[0][1])],
                [f(&self.e[1][0]), f(&self.e[1][1])],
            ],
        }
    }

    pub fn mul(&self, other: &Sl2OverS) -> Sl2OverS {
        let e = |i: usize, j: usize| {
            &(&self.e[i][0] * &other.e[0][j]) + &(&self.e[i][1] * &other.e[1][j])
        };
        Sl2OverS {
            e: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]],
        }
    }

    /// The inverse `[[d, -b], [-c, a]]`.
    pub fn inverse(&self) -> Sl2OverS {
        Sl2OverS {
            e: [
                [self.e[1][1].clone(), -&self.e[0][1]],
                [-&self.e[1][0], self.e[0][0].clone()],
            ],
        }
    }

    pub fn transpose(&self) -> Sl2OverS {
        Sl2OverS {
            e: [
                [self.e[0][0].clone(), self.e[1][0].clone()],
                [self.e[0][1].clone(), self.e[1][1].clone()],
            ],
        }
    }

    pub fn neg(&self) -> Sl2OverS {
        self.map(|x| -x)
    }

    pub fn is_identity(&self) -> bool {
        self.e[0][0].is_one()
            && self.e[1][1].is_one()
            && self.e[0][1].is_zero()
            && self.e[1][0].is_zero()
    }

    /// Entrywise Galois action at level `m`.
    pub fn galois_act(&self, g: i64, m: u32) -> Result<Sl2OverS> {
        let mut out = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                out.e[i][j] = self.e[i][j].galois_act(g, m)?;
            }
        }
        Ok(out)
    }

    /// The constant matrix, if every entry lies in `k`.
    pub fn as_constant(&self) -> Option<SmallMatrix> {
        let c = |x: &LaurentElt| {
            if x.is_zero() {
                Some(x.field().zero())
            } else if x.terms().len() == 1 && x.terms().contains_key(&Exponent::ZERO) {
                Some(x.coeff(Exponent::ZERO))
            } else {
                None
            }
        };
        Some([
            [c(&self.e[0][0])?, c(&self.e[0][1])?],
            [c(&self.e[1][0])?, c(&self.e[1][1])?],
        ])
    }

    fn times_small(&self, x: &SmallMatrix) -> [[LaurentElt; 2]; 2] {
        let e = |i: usize, j: usize| {
            &self.e[i][0].scale(&x[0][j]) + &self.e[i][1].scale(&x[1][j])
        };
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }
}

impl fmt::Display for Sl2OverS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}

fn level_of(s: &LaurentElt) -> u32 {
    s.terms()
        .keys()
        .fold(1u32, |m, q| m.lcm(&(q.denom() as u32)))
}

/// `theta_s` for a unit `s = alpha t^q`:
/// `L -> L + q J (x) t^-1`, `J -> J`, `G+ -> G+ (x) s`, `G- -> G- (x) s^-1`.
pub fn n2_theta(alg: &AlgebraDef, s: &LaurentElt) -> Result<GenMorphism> {
    let (_, q) = s
        .as_monomial()
        .ok_or_else(|| Error::NonUnit(s.to_string()))?;
    let field = alg.field();
    let (l, j, gp, gm) = n2_indices(alg)?;
    let mut images: Vec<ConfElt> = (0..alg.dim()).map(|i| ConfElt::gen(field, i)).collect();
    images[l] = ConfElt::gen(field, l)
        + ConfElt::term(field.rational(q.to_rational()), j, 0, Exponent::int(-1));
    images[gp] = ConfElt::gen(field, gp).mul_laurent(s);
    images[gm] = ConfElt::gen(field, gm).mul_laurent(&s.inv()?);
    GenMorphism::new(alg, format!("theta({s})"), level_of(s), images)
}

/// `omega`: `L -> L`, `J -> -J`, `G+ <-> G-`.
pub fn n2_omega(alg: &AlgebraDef) -> Result<GenMorphism> {
    let field = alg.field();
    let (l, j, gp, gm) = n2_indices(alg)?;
    let mut images: Vec<ConfElt> = (0..alg.dim()).map(|i| ConfElt::gen(field, i)).collect();
    images[l] = ConfElt::gen(field, l);
    images[j] = -ConfElt::gen(field, j);
    images[gp] = ConfElt::gen(field, gm);
    images[gm] = ConfElt::gen(field, gp);
    GenMorphism::new(alg, "omega", 1, images)
}

fn n2_indices(alg: &AlgebraDef) -> Result<(usize, usize, usize, usize)> {
    Ok((
        alg.index_of("L")?,
        alg.index_of("J")?,
        alg.index_of("G+")?,
        alg.index_of("G-")?,
    ))
}

/// Coordinates of a traceless `2x2` matrix `[[p, q], [r, -p]]` in the basis
/// `J^s = sigma^s / 2`: `(q + r, i (q - r), 2p)`.
fn j_coordinates(
    field: &'static CycloField,
    m: &[[LaurentElt; 2]; 2],
) -> Result<[LaurentElt; 3]> {
    let i = field.root_of_unity(4)?;
    debug_assert!((&m[0][0] + &m[1][1]).is_zero(), "matrix is not traceless");
    Ok([
        &m[0][1] + &m[1][0],
        (&m[0][1] - &m[1][0]).scale(&i),
        m[0][0].scale(&field.int(2)),
    ])
}

fn lmul(a: &[[LaurentElt; 2]; 2], b: &[[LaurentElt; 2]; 2]) -> [[LaurentElt; 2]; 2] {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// The automorphism attached to `(Y, X)` in `SL_2(S) x SL_2(k)`:
///
/// `L -> L + Y' Y^-1`, `J^s -> Y J^s Y^-1`,
/// `(a,b) (x) e1 -> c (Y^-1)^T (a,b) (x) e1 + e Y W (a,b) (x) e2`,
/// `(a,b) (x) e2 -> d (Y^-1)^T W^-1 (a,b) (x) e1 + f Y (a,b) (x) e2`,
/// with `X = [[c, d], [e, f]]`, `W = [[0, 1], [-1, 0]]`,
/// `(a,b) (x) e1 = a G^1 + b G^2` and `(a,b) (x) e2 = a Gbar^1 + b Gbar^2`.
pub fn n4_auto(alg: &AlgebraDef, y: &Sl2OverS, x: &SmallMatrix) -> Result<GenMorphism> {
    let field = alg.field();
    let det = small_det(x);
    if !det.is_one() {
        return Err(Error::Determinant(det.to_string()));
    }
    let l = alg.index_of("L")?;
    let js = [alg.index_of("J1")?, alg.index_of("J2")?, alg.index_of("J3")?];
    let g = [alg.index_of("G1")?, alg.index_of("G2")?];
    let gb = [alg.index_of("Gb1")?, alg.index_of("Gb2")?];
    let yinv = y.inverse();
    let z = field.zero();
    let w: SmallMatrix = [[z.clone(), field.one()], [field.int(-1), z]];

    let mut images: Vec<ConfElt> = (0..alg.dim()).map(|i| ConfElt::gen(field, i)).collect();

    let dy = y.map(LaurentElt::delta_t);
    let c = j_coordinates(field, &lmul(&dy.e, &yinv.e))?;
    images[l] = ConfElt::gen(field, l)
        + from_laurent_coords(alg, js.iter().copied().zip(c.iter().cloned()));

    for s in 0..3 {
        let sigma = pauli(field, s + 1)?;
        let h = rat(1, 2);
        let half: SmallMatrix = [
            [sigma[0][0].scale(&h), sigma[0][1].scale(&h)],
            [sigma[1][0].scale(&h), sigma[1][1].scale(&h)],
        ];
        let conj = lmul(&y.times_small(&half), &yinv.e);
        let d = j_coordinates(field, &conj)?;
        images[js[s]] = from_laurent_coords(alg, js.iter().copied().zip(d));
    }

    let yinv_t = yinv.transpose();
    let yw = y.times_small(&w);
    let w_inv = small_neg(&w);
    let yinv_t_winv = yinv_t.times_small(&w_inv);
    let [[xc, xd], [xe, xf]] = x;
    for a in 0..2 {
        images[g[a]] = from_laurent_coords(
            alg,
            (0..2)
                .map(|b| (g[b], yinv_t.e[b][a].scale(xc)))
                .chain((0..2).map(|b| (gb[b], yw[b][a].scale(xe)))),
        );
        images[gb[a]] = from_laurent_coords(
            alg,
            (0..2)
                .map(|b| (g[b], yinv_t_winv[b][a].scale(xd)))
                .chain((0..2).map(|b| (gb[b], y.e[b][a].scale(xf)))),
        );
    }
    GenMorphism::new(alg, "n4_auto", y.level(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::make_n4;
    use crate::morphisms::{check_hom, order_of};

    fn f() -> &'static CycloField {
        CycloField::get(24)
    }

    #[test]
    fn trivial_pairs_give_identity() {
        let a = make_n4();
        let id = Sl2OverS::identity(f());
        assert!(n4_auto(&a, &id, &small_identity(f())).unwrap().is_identity());
        let minus = small_neg(&small_identity(f()));
        let phi = n4_auto(&a, &id.neg(), &minus).unwrap();
        assert!(phi.is_identity());
    }

    #[test]
    fn diagonal_x_scales_the_odd_part() {
        let a = make_n4();
        let i = f().root_of_unity(4).unwrap();
        let x = [[i.clone(), f().zero()], [f().zero(), -&i]];
        let phi = n4_auto(&a, &Sl2OverS::identity(f()), &x).unwrap();
        for v in 0..4 {
            assert_eq!(phi.image(v), &ConfElt::gen(f(), v));
        }
        for v in [4, 5] {
            assert_eq!(phi.image(v), &ConfElt::gen(f(), v).scale(&i));
        }
        for v in [6, 7] {
            assert_eq!(phi.image(v), &ConfElt::gen(f(), v).scale(&-&i));
        }
        assert_eq!(order_of(&phi, 8).unwrap(), Some(4));
    }

    #[test]
    fn unipotent_y_is_an_automorphism() {
        let a = make_n4();
        let z = LaurentElt::zero(f());
        let one = LaurentElt::one(f());
        let y = Sl2OverS::new([[one.clone(), LaurentElt::t_pow(f(), Exponent::int(1))], [z, one]])
            .unwrap();
        let phi = n4_auto(&a, &y, &small_identity(f())).unwrap();
        let r = check_hom(&a, &phi).unwrap();
        assert!(r.is_automorphism(), "{r:?}");
    }

    #[test]
    fn determinant_is_checked() {
        let a = make_n4();
        let mut x = small_identity(f());
        x[0][0] = f().int(2);
        assert!(matches!(
            n4_auto(&a, &Sl2OverS::identity(f()), &x),
            Err(Error::Determinant(_))
        ));
        let t = LaurentElt::t_pow(f(), Exponent::int(1));
        let z = LaurentElt::zero(f());
        assert!(Sl2OverS::new([[t.clone(), z.clone()], [z, t]]).is_err());
    }
}
