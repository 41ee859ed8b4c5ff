//! Presentations of conformal superalgebras by generators and a bracket table.

use std::collections::BTreeMap;
use std::fmt;

use crate::coefficients::{CycloField, Rational};
use crate::error::{Error, Result};

use super::element::{ConfElt, GenId, LambdaPoly};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parity of an element: homogeneous or mixed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ElementParity {
    Zero,
    Homogeneous(Parity),
    Mixed,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorInfo {
    pub name: String,
    pub parity: Parity,
    /// Conformal weight, when known.
    pub weight: Option<Rational>,
}

impl GeneratorInfo {
    pub fn new(name: impl Into<String>, parity: Parity, weight: Option<Rational>) -> Self {
        GeneratorInfo {
            name: name.into(),
            parity,
            weight,
        }
    }
}

/// A conformal superalgebra over `k`, free over `k[D]` on the listed generators.
///
/// `table[(i, j)]` is `[v_i lambda v_j]`. A missing ordered pair is derived
/// from the opposite orientation through skew-symmetry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraDef {
    pub name: String,
    field: &'static CycloField,
    generators: Vec<GeneratorInfo>,
    table: BTreeMap<(GenId, GenId), LambdaPoly>,
}

impl AlgebraDef {
    pub fn new(
        name: impl Into<String>,
        field: &'static CycloField,
        generators: Vec<GeneratorInfo>,
    ) -> Result<AlgebraDef> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Invalid(format!("duplicate generator `{}`", g.name)));
            }
        }
        Ok(AlgebraDef {
            name: name.into(),
            field,
            generators,
            table: BTreeMap::new(),
        })
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn generators(&self) -> &[GeneratorInfo] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, i: GenId) -> Result<&GeneratorInfo> {
        self.generators
            .get(i)
            .ok_or_else(|| Error::UnknownGenerator(format!("#{i}")))
    }

    pub fn gen_name(&self, i: GenId) -> &str {
        &self.generators[i].name
    }

    pub fn parity(&self, i: GenId) -> Parity {
        self.generators[i].parity
    }

    pub fn index_of(&self, name: &str) -> Result<GenId> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn gen(&self, name: &str) -> Result<ConfElt> {
        Ok(ConfElt::gen(self.field, self.index_of(name)?))
    }

    pub fn table(&self) -> &BTreeMap<(GenId, GenId), LambdaPoly> {
        &self.table
    }

    pub fn table_entry(&self, i: GenId, j: GenId) -> Option<&LambdaPoly> {
        self.table.get(&(i, j))
    }

    /// `p(a, b)`: `-1` when both are odd.
    pub fn sign(&self, i: GenId, j: GenId) -> i64 {
        if self.parity(i) == Parity::Odd && self.parity(j) == Parity::Odd {
            -1
        } else {
            1
        }
    }

    /// Records `[v_i lambda v_j]`; checks that the entry is t-free and of the right parity.
    pub fn set_bracket(&mut self, i: GenId, j: GenId, poly: LambdaPoly) -> Result<()> {
        self.generator(i)?;
        self.generator(j)?;
        let expected = self.parity(i) + self.parity(j);
        for x in poly.coeffs().values() {
            if !x.is_t_free() {
                return Err(Error::Invalid(format!(
                    "bracket ({}, {}) has t-dependent structure constants",
                    self.gen_name(i),
                    self.gen_name(j)
                )));
            }
            for g in x.generators() {
                self.generator(g)?;
                if self.parity(g) != expected {
                    return Err(Error::ParityMismatch(format!(
                        "[{} lambda {}] contains {} of parity {}, expected {}",
                        self.gen_name(i),
                        self.gen_name(j),
                        self.gen_name(g),
                        self.parity(g),
                        expected
                    )));
                }
            }
        }
        self.table.insert((i, j), poly);
        Ok(())
    }

    pub fn set_bracket_by_name(&mut self, a: &str, b: &str, poly: LambdaPoly) -> Result<()> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        self.set_bracket(i, j, poly)
    }

    /// Whether every ordered pair has an explicit entry.
    pub fn is_complete(&self) -> bool {
        let n = self.dim();
        self.table.len() == n * n
    }

    pub fn element_parity(&self, x: &ConfElt) -> ElementParity {
        let mut seen = None;
        for g in x.generators() {
            let p = self.parity(g);
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return ElementParity::Mixed,
                _ => {}
            }
        }
        seen.map_or(ElementParity::Zero, ElementParity::Homogeneous)
    }

    /// Largest lambda-degree in the table.
    pub fn max_lambda_degree(&self) -> u32 {
        self.table
            .values()
            .filter_map(LambdaPoly::degree)
            .max()
            .unwrap_or(0)
    }

    /// Largest D-degree in the table.
    pub fn max_dpow(&self) -> u32 {
        self.table
            .values()
            .map(LambdaPoly::max_dpow)
            .max()
            .unwrap_or(0)
    }

    /// Bound past which all n-products of decorated generators provably vanish.
    pub fn vanishing_bound(&self) -> u32 {
        self.max_lambda_degree() + self.max_dpow() + 2
    }

    pub(crate) fn set_entry_unchecked(&mut self, i: GenId, j: GenId, poly: LambdaPoly) {
        self.table.insert((i, j), poly);
    }

    pub fn weights(&self) -> Vec<Option<Rational>> {
        self.generators.iter().map(|g| g.weight.clone()).collect()
    }
}
