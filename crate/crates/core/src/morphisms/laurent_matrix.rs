use std::fmt;

use crate::coefficients::{CycloField, LaurentElt};

/// Square matrix over `S_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    n: usize,
    entries: Vec<LaurentElt>,
}

impl LaurentMatrix {
    pub fn zeros(field: &'static CycloField, n: usize) -> LaurentMatrix {
        LaurentMatrix {
            n,
            entries: vec![LaurentElt::zero(field); n * n],
        }
    }

    pub fn identity(field: &'static CycloField, n: usize) -> LaurentMatrix {
        let mut m = LaurentMatrix::zeros(field, n);
        for i in 0..n {
            m.set(i, i, LaurentElt::one(field));
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentElt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: LaurentElt) {
        self.entries[i * self.n + j] = x;
    }

    fn field(&self) -> &'static CycloField {
        self.entries[0].field()
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let n = self.n;
        let mut out = LaurentMatrix::zeros(self.field(), n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentElt::zero(self.field());
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Determinant of the submatrix on `rows` x `cols`, expanding along rows
    /// with a table of minors indexed by column subsets.
    fn minor(&self, rows: &[usize], cols: &[usize]) -> LaurentElt {
        let k = rows.len();
        let field = self.field();
        let mut table: Vec<Option<LaurentElt>> = vec![None; 1 << k];
        table[0] = Some(LaurentElt::one(field));
        for mask in 1usize..(1 << k) {
            let r = rows[mask.count_ones() as usize - 1];
            let mut acc = LaurentElt::zero(field);
            for (pos, &c) in cols.iter().enumerate() {
                if mask & (1 << pos) == 0 {
                    continue;
                }
                let a = self.get(r, c);
                if a.is_zero() {
                    continue;
                }
                let Some(sub) = table[mask & !(1 << pos)].as_ref() else {
                    continue;
                };
                if sub.is_zero() {
                    continue;
                }
                let above = (mask >> (pos + 1)).count_ones();
                let term = a * sub;
                acc = if above % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            table[mask] = Some(acc);
        }
        table.pop().flatten().expect("full minor computed")
    }

    pub fn det(&self) -> LaurentElt {
        let idx: Vec<usize> = (0..self.n).collect();
        self.minor(&idx, &idx)
    }

    /// Inverse over `S_m`; exists iff the determinant is a unit.
    pub fn inverse(&self) -> Option<LaurentMatrix> {
        let det_inv = self.det().inv().ok()?;
        let n = self.n;
        let mut out = LaurentMatrix::zeros(self.field(), n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let cof = self.minor(&rows, &cols);
                let cof = if (i + j) % 2 == 0 { cof } else { -&cof };
                out.set(i, j, &cof * &det_inv);
            }
        }
        Some(out)
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::Exponent;

    fn f() -> &'static CycloField {
        CycloField::get(24)
    }

    fn t(q: i64) -> LaurentElt {
        LaurentElt::t_pow(f(), Exponent::int(q))
    }

    #[test]
    fn determinant_and_inverse() {
        let mut m = LaurentMatrix::zeros(f(), 3);
        m.set(0, 0, t(1));
        m.set(0, 1, t(2) + t(0));
        m.set(1, 1, LaurentElt::constant(f().int(2)));
        m.set(2, 0, t(5));
        m.set(2, 2, t(-1));
        // expand: t * 2 * t^-1 = 2
        assert_eq!(m.det(), LaurentElt::constant(f().int(2)));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), LaurentMatrix::identity(f(), 3));
    }

    #[test]
    fn non_unit_determinant_has_no_inverse() {
        let mut m = LaurentMatrix::identity(f(), 2);
        m.set(0, 0, t(1) + t(0));
        assert!(m.inverse().is_none());
    }
}
