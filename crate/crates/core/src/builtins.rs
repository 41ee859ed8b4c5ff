//! Current algebras from Lie superalgebra structure constants, and the N=2 and
//! N=4 conformal superalgebras.

use crate::coefficients::{rat, CycloField, CycloScalar, Exponent, DEFAULT_CONDUCTOR};
use crate::conformal::{
    complete_table_cs4, AlgebraDef, ConfElt, GenId, GeneratorInfo, LambdaPoly, Parity,
};
use crate::error::{Error, Result};

/// A finite-dimensional Lie superalgebra `[v_i, v_j] = sum_k c[i][j][k] v_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub names: Vec<String>,
    pub parities: Vec<Parity>,
    c: Vec<Vec<Vec<CycloScalar>>>,
}

impl StructureConstants {
    /// Validates super-antisymmetry, parity, and the super-Jacobi identity.
    pub fn new(
        names: Vec<String>,
        parities: Vec<Parity>,
        c: Vec<Vec<Vec<CycloScalar>>>,
    ) -> Result<StructureConstants> {
        let n = names.len();
        if parities.len() != n
            || c.len() != n
            || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n))
        {
            return Err(Error::Invalid("structure constants have the wrong shape".into()));
        }
        let sc = StructureConstants { names, parities, c };
        sc.validate()?;
        Ok(sc)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn field(&self) -> &'static CycloField {
        self.c
            .first()
            .and_then(|r| r.first())
            .and_then(|v| v.first())
            .map_or(CycloField::get(DEFAULT_CONDUCTOR), CycloScalar::field)
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &CycloScalar {
        &self.c[i][j][k]
    }

    fn sign(&self, i: usize, j: usize) -> i64 {
        if self.parities[i] == Parity::Odd && self.parities[j] == Parity::Odd {
            -1
        } else {
            1
        }
    }

    /// `[x, y]` for coordinate vectors.
    pub fn bracket(&self, x: &[CycloScalar], y: &[CycloScalar]) -> Vec<CycloScalar> {
        let field = self.field();
        let mut out = vec![field.zero(); self.dim()];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.c[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&ab * c);
                    }
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Vec<CycloScalar> {
        let field = self.field();
        (0..self.dim())
            .map(|k| if k == i { field.one() } else { field.zero() })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = &self.c[i][j][k];
                    if c.is_zero() {
                        continue;
                    }
                    if self.parities[i] + self.parities[j] != self.parities[k] {
                        return Err(Error::ParityMismatch(format!(
                            "[{}, {}] has a {} component",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
                for k in 0..n {
                    let flipped = self.c[j][i][k].scale(&rat(-self.sign(i, j), 1));
                    if self.c[i][j][k] != flipped {
                        return Err(Error::JacobiFailure(format!(
                            "[{}, {}] is not super-antisymmetric",
                            self.names[i], self.names[j]
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (self.basis(i), self.basis(j), self.basis(k));
                    let lhs = self.bracket(&a, &self.bracket(&b, &c));
                    let first = self.bracket(&self.bracket(&a, &b), &c);
                    let second = self.bracket(&b, &self.bracket(&a, &c));
                    let s = rat(self.sign(i, j), 1);
                    let ok = (0..n).all(|m| lhs[m] == &first[m] + &second[m].scale(&s));
                    if !ok {
                        return Err(Error::JacobiFailure(format!(
                            "({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn table_from(
    field: &'static CycloField,
    n: usize,
    mut f: impl FnMut(usize, usize, usize) -> CycloScalar,
) -> Vec<Vec<Vec<CycloScalar>>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| {
                            let c = f(i, j, k);
                            if c.is_zero() {
                                field.zero()
                            } else {
                                c
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `sl_2` in the basis `e, h, f`.
pub fn sl2(field: &'static CycloField) -> StructureConstants {
    let mut c = table_from(field, 3, |_, _, _| field.zero());
    let (e, h, f) = (0, 1, 2);
    c[e][f][h] = field.one();
    c[f][e][h] = field.int(-1);
    c[h][e][e] = field.int(2);
    c[e][h][e] = field.int(-2);
    c[h][f][f] = field.int(-2);
    c[f][h][f] = field.int(2);
    StructureConstants::new(
        ["e", "h", "f"].map(String::from).to_vec(),
        vec![Parity::Even; 3],
        c,
    )
    .expect("sl2 constants are valid")
}

/// `gl_2` in the basis of matrix units `E11, E12, E21, E22`.
pub fn gl2(field: &'static CycloField) -> StructureConstants {
    // [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
    let unit = |a: usize, b: usize| 2 * a + b;
    let c = table_from(field, 4, |i, j, k| {
        let (a, b) = (i / 2, i % 2);
        let (cc, d) = (j / 2, j % 2);
        let mut v = 0;
        if b == cc && k == unit(a, d) {
            v += 1;
        }
        if d == a && k == unit(cc, b) {
            v -= 1;
        }
        field.int(v)
    });
    StructureConstants::new(
        ["E11", "E12", "E21", "E22"].map(String::from).to_vec(),
        vec![Parity::Even; 4],
        c,
    )
    .expect("gl2 constants are valid")
}

/// `sl_2` in the basis `J^s = sigma^s / 2`: `[J^a, J^b] = i eps_abc J^c`.
pub fn sl2_pauli(field: &'static CycloField) -> Result<StructureConstants> {
    let i = field.root_of_unity(4)?;
    let c = table_from(field, 3, |a, b, k| match levi_civita(a, b, k) {
        0 => field.zero(),
        s => i.scale(&rat(s, 1)),
    });
    StructureConstants::new(
        ["J1", "J2", "J3"].map(String::from).to_vec(),
        vec![Parity::Even; 3],
        c,
    )
}

fn levi_civita(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// The current conformal superalgebra `k[D] (x) V` with `[v lambda w] = [v, w]`.
pub fn make_current(sc: &StructureConstants) -> AlgebraDef {
    let field = sc.field();
    let gens = sc
        .names
        .iter()
        .zip(&sc.parities)
        .map(|(n, p)| GeneratorInfo::new(n.clone(), *p, None))
        .collect();
    let mut alg = AlgebraDef::new("current", field, gens).expect("names are distinct");
    for i in 0..sc.dim() {
        for j in 0..sc.dim() {
            let mut x = ConfElt::zero(field);
            for k in 0..sc.dim() {
                x.add_scaled(&ConfElt::gen(field, k), &sc.c[i][j][k]);
            }
            alg.set_bracket(i, j, LambdaPoly::constant(x))
                .expect("parities were validated");
        }
    }
    alg
}

/// `(D + w lambda) v`.
fn primary(field: &'static CycloField, v: GenId, w: CycloScalar) -> LambdaPoly {
    LambdaPoly::from_coeffs(
        field,
        [
            (0, ConfElt::term(field.one(), v, 1, Exponent::ZERO)),
            (1, ConfElt::term(w, v, 0, Exponent::ZERO)),
        ],
    )
}

fn gen_term(c: CycloScalar, v: GenId, dpow: u32) -> ConfElt {
    ConfElt::term(c, v, dpow, Exponent::ZERO)
}

/// The N=2 table exactly as presented (the remaining orientations come from skew-symmetry).
pub fn n2_presented(field: &'static CycloField) -> AlgebraDef {
    let gens = vec![
        GeneratorInfo::new("L", Parity::Even, Some(rat(2, 1))),
        GeneratorInfo::new("J", Parity::Even, Some(rat(1, 1))),
        GeneratorInfo::new("G+", Parity::Odd, Some(rat(3, 2))),
        GeneratorInfo::new("G-", Parity::Odd, Some(rat(3, 2))),
    ];
    let mut a = AlgebraDef::new("N2", field, gens).expect("names are distinct");
    let (l, j, gp, gm) = (0, 1, 2, 3);
    let set = |a: &mut AlgebraDef, x, y, p| a.set_bracket(x, y, p).expect("valid N=2 entry");
    set(&mut a, l, l, primary(field, l, field.int(2)));
    set(&mut a, l, j, primary(field, j, field.one()));
    set(&mut a, l, gp, primary(field, gp, field.frac(3, 2)));
    set(&mut a, l, gm, primary(field, gm, field.frac(3, 2)));
    set(&mut a, j, j, LambdaPoly::zero(field));
    set(&mut a, j, gp, LambdaPoly::constant(ConfElt::gen(field, gp)));
    set(&mut a, j, gm, LambdaPoly::constant(-ConfElt::gen(field, gm)));
    set(&mut a, gp, gp, LambdaPoly::zero(field));
    set(&mut a, gm, gm, LambdaPoly::zero(field));
    let c0 = ConfElt::gen(field, l) + gen_term(field.frac(1, 2), j, 1);
    set(
        &mut a,
        gp,
        gm,
        LambdaPoly::from_coeffs(field, [(0, c0), (1, ConfElt::gen(field, j))]),
    );
    a
}

pub fn make_n2_over(field: &'static CycloField) -> AlgebraDef {
    complete_table_cs4(&n2_presented(field)).expect("the N=2 table is skew-symmetric")
}

/// The N=2 conformal superalgebra over `Q(zeta_24)`.
pub fn make_n2() -> AlgebraDef {
    make_n2_over(CycloField::get(DEFAULT_CONDUCTOR))
}

/// Pauli matrix `sigma^s` (`s` in 1..=3), entries in `Q(zeta_N)`.
pub fn pauli(field: &'static CycloField, s: usize) -> Result<[[CycloScalar; 2]; 2]> {
    let i = field.root_of_unity(4)?;
    let (z, o) = (field.zero(), field.one());
    Ok(match s {
        1 => [[z.clone(), o.clone()], [o, z]],
        2 => [[z.clone(), -&i], [i, z]],
        3 => [[o.clone(), z.clone()], [z, -o]],
        _ => return Err(Error::Invalid(format!("no Pauli matrix sigma^{s}"))),
    })
}

/// Generator indices of the N=4 algebra.
pub mod n4 {
    use crate::conformal::GenId;
    pub const L: GenId = 0;
    /// `J^s` is `J[s - 1]`.
    pub const J: [GenId; 3] = [1, 2, 3];
    pub const G: [GenId; 2] = [4, 5];
    pub const GBAR: [GenId; 2] = [6, 7];
}

/// The N=4 table exactly as presented.
pub fn n4_presented(field: &'static CycloField) -> Result<AlgebraDef> {
    use n4::{G, GBAR, J, L};
    let sigma = [pauli(field, 1)?, pauli(field, 2)?, pauli(field, 3)?];
    let currents = sl2_pauli(field)?;
    let gens = vec![
        GeneratorInfo::new("L", Parity::Even, Some(rat(2, 1))),
        GeneratorInfo::new("J1", Parity::Even, Some(rat(1, 1))),
        GeneratorInfo::new("J2", Parity::Even, Some(rat(1, 1))),
        GeneratorInfo::new("J3", Parity::Even, Some(rat(1, 1))),
        GeneratorInfo::new("G1", Parity::Odd, Some(rat(3, 2))),
        GeneratorInfo::new("G2", Parity::Odd, Some(rat(3, 2))),
        GeneratorInfo::new("Gb1", Parity::Odd, Some(rat(3, 2))),
        GeneratorInfo::new("Gb2", Parity::Odd, Some(rat(3, 2))),
    ];
    let mut a = AlgebraDef::new("N4", field, gens)?;
    a.set_bracket(L, L, primary(field, L, field.int(2)))?;
    for s in J {
        a.set_bracket(L, s, primary(field, s, field.one()))?;
    }
    for g in G.iter().chain(&GBAR) {
        a.set_bracket(L, *g, primary(field, *g, field.frac(3, 2)))?;
    }
    for (m, &jm) in J.iter().enumerate() {
        for (n, &jn) in J.iter().enumerate() {
            let mut x = ConfElt::zero(field);
            for (k, &jk) in J.iter().enumerate() {
                x.add_scaled(&ConfElt::gen(field, jk), currents.constant(m, n, k));
            }
            a.set_bracket(jm, jn, LambdaPoly::constant(x))?;
        }
    }
    let half = field.frac(1, 2);
    for (s, &js) in J.iter().enumerate() {
        for ai in 0..2 {
            let mut g = ConfElt::zero(field);
            let mut gb = ConfElt::zero(field);
            for b in 0..2 {
                g.add_scaled(&ConfElt::gen(field, G[b]), &-(&half * &sigma[s][ai][b]));
                gb.add_scaled(&ConfElt::gen(field, GBAR[b]), &(&half * &sigma[s][b][ai]));
            }
            a.set_bracket(js, G[ai], LambdaPoly::constant(g))?;
            a.set_bracket(js, GBAR[ai], LambdaPoly::constant(gb))?;
        }
    }
    for x in 0..2 {
        for y in 0..2 {
            a.set_bracket(G[x], G[y], LambdaPoly::zero(field))?;
            a.set_bracket(GBAR[x], GBAR[y], LambdaPoly::zero(field))?;
            // 2 delta_ab L - 2 (D + 2 lambda) sum_s sigma^s_ab J^s
            let mut c0 = ConfElt::zero(field);
            let mut c1 = ConfElt::zero(field);
            if x == y {
                c0.add_scaled(&ConfElt::gen(field, L), &field.int(2));
            }
            for (s, &js) in J.iter().enumerate() {
                let e = &sigma[s][x][y];
                c0.add_scaled(&gen_term(field.one(), js, 1), &e.scale(&rat(-2, 1)));
                c1.add_scaled(&ConfElt::gen(field, js), &e.scale(&rat(-4, 1)));
            }
            a.set_bracket(G[x], GBAR[y], LambdaPoly::from_coeffs(field, [(0, c0), (1, c1)]))?;
        }
    }
    Ok(a)
}

/// The N=4 conformal superalgebra over `Q(zeta_N)`; needs `4 | N`.
pub fn make_n4_over(field: &'static CycloField) -> Result<AlgebraDef> {
    complete_table_cs4(&n4_presented(field)?)
}

pub fn make_n4() -> AlgebraDef {
    make_n4_over(CycloField::get(DEFAULT_CONDUCTOR)).expect("24 is divisible by 4")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::{check_axioms, generator_bracket, n_product, Axiom};

    fn f() -> &'static CycloField {
        CycloField::get(24)
    }

    fn g(v: GenId) -> ConfElt {
        ConfElt::gen(f(), v)
    }

    #[test]
    fn n2_parities_and_entries() {
        let a = make_n2();
        let p: Vec<_> = a.generators().iter().map(|g| g.parity).collect();
        assert_eq!(p, [Parity::Even, Parity::Even, Parity::Odd, Parity::Odd]);
        assert_eq!(*a.table_entry(0, 2).unwrap(), primary(f(), 2, f().frac(3, 2)));
        assert!(a.table_entry(2, 2).unwrap().is_zero());
        assert!(a.is_complete());
    }

    #[test]
    fn n2_products() {
        let a = make_n2();
        assert_eq!(n_product(&a, &g(2), &g(3), 1).unwrap(), g(1));
        assert_eq!(
            n_product(&a, &g(2), &g(3), 0).unwrap(),
            g(0) + ConfElt::term(f().frac(1, 2), 1, 1, Exponent::ZERO)
        );
        assert!(n_product(&a, &g(1), &g(1), 0).unwrap().is_zero());
    }

    #[test]
    fn cs4_completion_of_j_g() {
        let a = make_n2();
        let gj = generator_bracket(&a, 2, 1).unwrap();
        assert_eq!(gj.coeff(0), -g(2));
        assert_eq!(gj.degree(), Some(0));
    }

    #[test]
    fn corrupted_l_l_is_cs4_inconsistent() {
        let mut a = n2_presented(f());
        a.set_bracket(0, 0, primary(f(), 0, f().int(3))).unwrap();
        match complete_table_cs4(&a) {
            Err(Error::Cs4Inconsistent { a, b, .. }) => assert_eq!((a.as_str(), b.as_str()), ("L", "L")),
            other => panic!("expected CS4 inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn completion_is_idempotent() {
        let a = make_n2();
        assert_eq!(complete_table_cs4(&a).unwrap(), a);
    }

    #[test]
    fn builtins_satisfy_axioms() {
        for alg in [
            make_n2(),
            make_current(&sl2(f())),
            make_current(&gl2(f())),
        ] {
            let r = check_axioms(&alg);
            assert!(r.all_passed(), "{}: {:?}", alg.name, r);
        }
    }

    #[test]
    fn n2_without_constant_term_breaks_jacobi() {
        let mut a = n2_presented(f());
        let p = LambdaPoly::from_coeffs(f(), [(1, g(1))]);
        a.set_bracket(2, 3, p).unwrap();
        let a = complete_table_cs4(&a).unwrap();
        let r = check_axioms(&a);
        let cs5 = r.verdict(Axiom::Cs5);
        assert!(!cs5.passed());
        assert!(cs5.failures.iter().any(|s| s.starts_with("(J, G+, G-)")), "{cs5:?}");
    }

    #[test]
    fn n4_entries() {
        let a = make_n4();
        let i = f().root_of_unity(4).unwrap();
        assert_eq!(
            n_product(&a, &g(n4::J[0]), &g(n4::J[1]), 0).unwrap(),
            g(n4::J[2]).scale(&i)
        );
        assert_eq!(
            n_product(&a, &g(n4::J[2]), &g(n4::G[0]), 0).unwrap(),
            g(n4::G[0]).scale(&f().frac(-1, 2))
        );
        let b = generator_bracket(&a, n4::G[0], n4::GBAR[0]).unwrap();
        assert_eq!(
            b.coeff(0),
            g(n4::L).scale(&f().int(2)) + ConfElt::term(f().int(-2), n4::J[2], 1, Exponent::ZERO)
        );
        assert_eq!(b.coeff(1), g(n4::J[2]).scale(&f().int(-4)));
    }

    #[test]
    fn n4_needs_fourth_roots() {
        assert!(matches!(
            make_n4_over(CycloField::get(6)),
            Err(Error::ConductorMismatch { .. })
        ));
    }

    #[test]
    fn bad_structure_constants_rejected() {
        let mut sc = sl2(f());
        sc.c[0][2][1] = f().int(2);
        assert!(StructureConstants::new(sc.names.clone(), sc.parities.clone(), sc.c).is_err());
    }
}
