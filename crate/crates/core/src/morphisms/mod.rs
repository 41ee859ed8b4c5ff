//! Morphisms of `A (x) S_m` determined by the images of the generators.

mod families;
mod laurent_matrix;

pub use families::{
    n2_omega, n2_theta, n4_auto, small_det, small_identity, small_mul, small_neg, Sl2OverS,
    SmallMatrix,
};
pub use laurent_matrix::LaurentMatrix;

use num_integer::Integer;

use crate::coefficients::LaurentElt;
use crate::conformal::{
    generator_bracket, lambda_bracket, to_hat_basis, AlgebraDef, ConfElt, ElementParity, GenId,
    LambdaPoly,
};
use crate::error::{Error, Result};

/// An `S_m`-linear map commuting with `D`, given by `v (x) 1 -> images[v]`.
#[derive(Clone, Debug)]
pub struct GenMorphism {
    pub name: String,
    level: u32,
    images: Vec<ConfElt>,
}

impl PartialEq for GenMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}
impl Eq for GenMorphism {}

impl GenMorphism {
    /// Checks that there is one image per generator and parities are preserved.
    pub fn new(
        alg: &AlgebraDef,
        name: impl Into<String>,
        level: u32,
        images: Vec<ConfElt>,
    ) -> Result<GenMorphism> {
        if images.len() != alg.dim() {
            return Err(Error::Invalid(format!(
                "{} images given for {} generators",
                images.len(),
                alg.dim()
            )));
        }
        for (i, x) in images.iter().enumerate() {
            for k in x.terms().keys() {
                alg.generator(k.gen)?;
                if !k.exp.fits_level(level) {
                    return Err(Error::LevelMismatch(format!(
                        "image of {} uses t^{{{}}} at level {level}",
                        alg.gen_name(i),
                        k.exp
                    )));
                }
            }
            match alg.element_parity(x) {
                ElementParity::Zero => {}
                ElementParity::Homogeneous(p) if p == alg.parity(i) => {}
                _ => {
                    return Err(Error::ParityMismatch(format!(
                        "image of {} is not {}",
                        alg.gen_name(i),
                        alg.parity(i)
                    )))
                }
            }
        }
        let images = images.into_iter().map(|x| x.with_level(level)).collect();
        Ok(GenMorphism {
            name: name.into(),
            level,
            images,
        })
    }

    pub fn identity(alg: &AlgebraDef, level: u32) -> GenMorphism {
        GenMorphism {
            name: "id".into(),
            level,
            images: (0..alg.dim())
                .map(|i| ConfElt::gen(alg.field(), i).with_level(level))
                .collect(),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn images(&self) -> &[ConfElt] {
        &self.images
    }

    pub fn image(&self, v: GenId) -> &ConfElt {
        &self.images[v]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, x)| {
            x.terms().len() == 1 && {
                let (k, c) = x.terms().iter().next().unwrap();
                k.gen == i && k.dpow == 0 && k.exp.is_zero() && c.is_one()
            }
        })
    }

    /// Whether every image lies in `V (x) S`.
    pub fn is_undecorated(&self) -> bool {
        self.images.iter().all(ConfElt::is_undecorated)
    }

    /// The matrix over `S_m` with column `i` holding the coordinates of the image of `v_i`.
    pub fn matrix(&self) -> Result<LaurentMatrix> {
        if !self.is_undecorated() {
            return Err(Error::NotInvertible(format!(
                "{}: images leave V (x) S",
                self.name
            )));
        }
        let n = self.images.len();
        let field = self.field();
        let mut m = LaurentMatrix::zeros(field, n);
        for (i, x) in self.images.iter().enumerate() {
            for k in 0..n {
                m.set(k, i, x.laurent_coeff(k, 0));
            }
        }
        Ok(m)
    }

    fn field(&self) -> &'static crate::coefficients::CycloField {
        self.images
            .first()
            .map(ConfElt::field)
            .expect("algebras have generators")
    }
}

/// Applies the unique `S`-linear, `D`-equivariant extension of `phi` to `x`.
pub fn extend_apply(phi: &GenMorphism, x: &ConfElt) -> Result<ConfElt> {
    let field = x.field();
    let mut out = ConfElt::zero(field);
    for (key, c) in to_hat_basis(x) {
        let img = phi
            .images
            .get(key.gen)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{}", key.gen)))?;
        out.add_scaled(&img.shift(key.exp).partial_hat_divided(key.dpow), &c);
    }
    let level = phi.level.lcm(&x.level());
    Ok(out.with_level(level))
}

fn apply_poly(phi: &GenMorphism, p: &LambdaPoly) -> Result<LambdaPoly> {
    p.try_map(|x| extend_apply(phi, x))
}

/// Outcome of [`check_hom`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomReport {
    pub pairs_checked: usize,
    /// Generator pairs on which `phi [v lambda w] != [phi v lambda phi w]`.
    pub failures: Vec<(String, String)>,
    /// `None` when some image leaves `V (x) S` and no determinant test applies.
    pub invertible: Option<bool>,
}

impl HomReport {
    pub fn is_homomorphism(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn is_automorphism(&self) -> bool {
        self.is_homomorphism() && self.invertible == Some(true)
    }
}

pub fn check_hom(alg: &AlgebraDef, phi: &GenMorphism) -> Result<HomReport> {
    let n = alg.dim();
    let mut failures = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let bracket = generator_bracket(alg, i, j)?;
            let lhs = apply_poly(phi, &bracket)?;
            let rhs = lambda_bracket(alg, phi.image(i), phi.image(j))?;
            if lhs != rhs {
                failures.push((alg.gen_name(i).to_string(), alg.gen_name(j).to_string()));
            }
        }
    }
    let invertible = match phi.matrix() {
        Ok(m) => Some(m.det().is_unit()),
        Err(_) => None,
    };
    Ok(HomReport {
        pairs_checked: n * n,
        failures,
        invertible,
    })
}

/// `phi . psi`.
pub fn compose(phi: &GenMorphism, psi: &GenMorphism) -> Result<GenMorphism> {
    if phi.images.len() != psi.images.len() {
        return Err(Error::Invalid("morphisms of different algebras".into()));
    }
    let level = phi.level.lcm(&psi.level);
    let images = psi
        .images
        .iter()
        .map(|x| extend_apply(phi, x).map(|y| y.with_level(level)))
        .collect::<Result<_>>()?;
    Ok(GenMorphism {
        name: format!("{}*{}", phi.name, psi.name),
        level,
        images,
    })
}

/// Inverse through the matrix over `S_m`; needs images in `V (x) S`.
pub fn invert(phi: &GenMorphism) -> Result<GenMorphism> {
    let m = phi.matrix()?;
    let inv = m
        .inverse()
        .ok_or_else(|| Error::NotInvertible(format!("{}: determinant {}", phi.name, m.det())))?;
    let field = phi.field();
    let n = phi.images.len();
    let images = (0..n)
        .map(|i| {
            let mut x = ConfElt::zero(field);
            for k in 0..n {
                x.add_scaled(&ConfElt::gen(field, k).mul_laurent(inv.get(k, i)), &field.one());
            }
            x.with_level(phi.level)
        })
        .collect();
    Ok(GenMorphism {
        name: format!("{}^-1", phi.name),
        level: phi.level,
        images,
    })
}

/// Smallest `n <= bound` with `phi^n = id`.
pub fn order_of(phi: &GenMorphism, bound: u32) -> Result<Option<u32>> {
    let mut acc = phi.clone();
    for n in 1..=bound {
        if acc.is_identity() {
            return Ok(Some(n));
        }
        acc = compose(phi, &acc)?;
    }
    Ok(None)
}

/// `phi^n` for `n >= 0`.
pub fn power(alg: &AlgebraDef, phi: &GenMorphism, n: u32) -> Result<GenMorphism> {
    let mut acc = GenMorphism::identity(alg, phi.level);
    for _ in 0..n {
        acc = compose(phi, &acc)?;
    }
    Ok(acc)
}

/// Builds `sum_i v_i (x) s_i`.
pub(crate) fn from_laurent_coords(
    alg: &AlgebraDef,
    coords: impl IntoIterator<Item = (GenId, LaurentElt)>,
) -> ConfElt {
    let field = alg.field();
    let mut x = ConfElt::zero(field);
    for (g, s) in coords {
        x.add_scaled(&ConfElt::gen(field, g).mul_laurent(&s), &field.one());
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::make_n2;
    use crate::coefficients::{CycloField, Exponent};

    fn f() -> &'static CycloField {
        CycloField::get(24)
    }

    #[test]
    fn omega_on_derivative_of_j() {
        let a = make_n2();
        let w = n2_omega(&a).unwrap();
        let dj = ConfElt::term(f().one(), 1, 1, Exponent::ZERO);
        assert_eq!(extend_apply(&w, &dj).unwrap(), -dj);
    }

    #[test]
    fn theta_t_on_l() {
        let a = make_n2();
        let th = n2_theta(&a, &LaurentElt::t_pow(f(), Exponent::int(1))).unwrap();
        let l = ConfElt::gen(f(), 0);
        let expected = l.clone() + ConfElt::term(f().one(), 1, 0, Exponent::int(-1));
        assert_eq!(extend_apply(&th, &l).unwrap(), expected);
    }

    #[test]
    fn omega_is_an_involutive_automorphism() {
        let a = make_n2();
        let w = n2_omega(&a).unwrap();
        let r = check_hom(&a, &w).unwrap();
        assert!(r.is_automorphism(), "{r:?}");
        assert!(compose(&w, &w).unwrap().is_identity());
        assert_eq!(order_of(&w, 4).unwrap(), Some(2));
    }

    #[test]
    fn sign_mutation_of_omega_fails_on_g_pair() {
        let a = make_n2();
        let w = n2_omega(&a).unwrap();
        let mut images = w.images().to_vec();
        images[2] = -images[2].clone();
        let bad = GenMorphism::new(&a, "bad", 1, images).unwrap();
        let r = check_hom(&a, &bad).unwrap();
        assert!(r.failures.contains(&("G+".into(), "G-".into())), "{r:?}");
    }

    #[test]
    fn parity_of_images_is_checked() {
        let a = make_n2();
        let mut images = GenMorphism::identity(&a, 1).images().to_vec();
        images[0] = ConfElt::gen(f(), 2);
        assert!(matches!(
            GenMorphism::new(&a, "bad", 1, images),
            Err(Error::ParityMismatch(_))
        ));
    }

    #[test]
    fn inverse_of_theta() {
        let a = make_n2();
        let s = LaurentElt::monomial(f().int(2), Exponent::int(3));
        let th = n2_theta(&a, &s).unwrap();
        let inv = invert(&th).unwrap();
        assert!(compose(&th, &inv).unwrap().is_identity());
        assert!(compose(&inv, &th).unwrap().is_identity());
    }
}
