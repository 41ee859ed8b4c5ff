//! Text format for algebras (`.csa`), morphisms (`.csm`) and element expressions.
//!
//! ```text
//! algebra N2
//! cyclotomic 24
//! generator L parity=even weight=2
//! bracket L L = (D + 2*x) L
//! ```
//!
//! An expression is a sum of products of factors: rationals, `zeta^k`,
//! `D^(j)` (divided powers of the derivation, applied to the generator),
//! `x^(n)` (divided powers of lambda), `t^{p/q}`, generator names and
//! parenthesised sums. Every term of a bracket or element carries exactly one
//! generator.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::coefficients::{
    binomial_int, fmt_rational, format_sum, CycloField, CycloScalar, Exponent, Rational,
    DEFAULT_CONDUCTOR,
};
use crate::conformal::{
    complete_table_cs4, AlgebraDef, ConfElt, GenId, GeneratorInfo, LambdaPoly, Parity, TermKey,
};
use crate::error::{Error, Result};
use crate::morphisms::GenMorphism;

const RESERVED: [&str; 4] = ["D", "x", "t", "zeta"];

/// A monomial `D^(d) x^(n) v t^q` (any part may be absent).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Mono {
    gen: Option<GenId>,
    d: u32,
    x: u32,
    t: Exponent,
}

impl Mono {
    const ONE: Mono = Mono {
        gen: None,
        d: 0,
        x: 0,
        t: Exponent::ZERO,
    };
}

type Poly = BTreeMap<Mono, CycloScalar>;

fn poly_add(p: &mut Poly, m: Mono, c: CycloScalar) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(m).or_insert_with(|| c.field().zero());
    *e += &c;
    if e.is_zero() {
        p.remove(&m);
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
    field: &'static CycloField,
    /// Generator names, longest first.
    names: &'a [(String, GenId)],
}

fn is_word(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

impl<'a> ExprParser<'a> {
    fn err<T>(&self, at: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.line, self.col0 + at + 1, msg))
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c == b' ' || c == b'\t') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(self.pos, format!("expected `{}`", c as char))
        }
    }

    fn rest(&self) -> &'a [u8] {
        &self.src[self.pos..]
    }

    fn keyword(&self, kw: &str) -> bool {
        let r = self.rest();
        r.starts_with(kw.as_bytes()) && !r.get(kw.len()).copied().is_some_and(is_word)
    }

    fn generator(&self) -> Option<(usize, GenId)> {
        let r = self.rest();
        self.names.iter().find_map(|(name, id)| {
            let n = name.as_bytes();
            let ends_word = n.last().copied().is_some_and(is_word);
            (r.starts_with(n) && !(ends_word && r.get(n.len()).copied().is_some_and(is_word)))
                .then_some((n.len(), *id))
        })
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected a number");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn signed_int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.eat(b'-');
        self.skip_ws();
        let n = self.digits()?;
        let n: i64 = n
            .try_into()
            .or_else(|_| self.err(start, "number out of range"))?;
        Ok(if neg { -n } else { n })
    }

    fn small_int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        let n = self.digits()?;
        n.try_into().or_else(|_| self.err(start, "number out of range"))
    }

    fn divided_power(&mut self) -> Result<u32> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        self.expect(b'(')?;
        let n = self.small_int()?;
        self.expect(b')')?;
        Ok(n)
    }

    fn exponent(&mut self) -> Result<Exponent> {
        if !self.eat(b'^') {
            return Ok(Exponent::int(1));
        }
        let braced = self.eat(b'{');
        let start = self.pos;
        let num = self.signed_int()?;
        let den = if braced && self.eat(b'/') {
            self.signed_int()?
        } else {
            1
        };
        if den == 0 {
            return self.err(start, "zero denominator");
        }
        if braced {
            self.expect(b'}')?;
        }
        Ok(Exponent::new(num, den))
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'(' => true,
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => true,
            _ => self.generator().is_some(),
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        self.skip_ws();
        let start = self.pos;
        let one = |c: CycloScalar, m: Mono| Poly::from([(m, c)]);
        let f = self.field;
        if let Some((len, id)) = self.generator() {
            self.pos += len;
            return Ok(one(f.one(), Mono { gen: Some(id), ..Mono::ONE }));
        }
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let d = if self.eat(b'/') {
                    self.skip_ws();
                    self.digits()?
                } else {
                    BigInt::from(1)
                };
                if d == BigInt::from(0) {
                    return self.err(start, "zero denominator");
                }
                Ok(one(f.rational(Rational::new(n, d)), Mono::ONE))
            }
            Some(b'(') => {
                self.pos += 1;
                let p = self.sum()?;
                self.expect(b')')?;
                Ok(p)
            }
            _ if self.keyword("zeta") => {
                self.pos += 4;
                let e = self.exponent()?;
                if !e.is_integer() {
                    return self.err(start, "zeta needs an integer exponent");
                }
                Ok(one(f.zeta_pow(e.numer()), Mono::ONE))
            }
            _ if self.keyword("D") => {
                self.pos += 1;
                let d = self.divided_power()?;
                Ok(one(f.one(), Mono { d, ..Mono::ONE }))
            }
            _ if self.keyword("x") => {
                self.pos += 1;
                let x = self.divided_power()?;
                Ok(one(f.one(), Mono { x, ..Mono::ONE }))
            }
            _ if self.keyword("t") => {
                self.pos += 1;
                let t = self.exponent()?;
                Ok(one(f.one(), Mono { t, ..Mono::ONE }))
            }
            Some(c) if is_word(c) => {
                let end = self.rest().iter().position(|&c| !is_word(c) && c != b'+' && c != b'-');
                let word = &self.rest()[..end.unwrap_or(self.rest().len())];
                let word = String::from_utf8_lossy(word);
                self.err(start, format!("unknown generator `{word}`"))
            }
            _ => self.err(start, "expected a term"),
        }
    }

    fn mul(&self, a: &Poly, b: &Poly, at: usize) -> Result<Poly> {
        let mut out = Poly::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let gen = match (ma.gen, mb.gen) {
                    (Some(_), Some(_)) => return self.err(at, "product of two generators"),
                    (g, None) | (None, g) => g,
                };
                let c = (ca * cb)
                    .scale(&binomial_int(ma.d + mb.d, ma.d))
                    .scale(&binomial_int(ma.x + mb.x, ma.x));
                let m = Mono {
                    gen,
                    d: ma.d + mb.d,
                    x: ma.x + mb.x,
                    t: ma.t + mb.t,
                };
                poly_add(&mut out, m, c);
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            let at = self.pos;
            let explicit = self.eat(b'*');
            self.skip_ws();
            if !explicit && !self.starts_factor() {
                return Ok(acc);
            }
            let f = self.factor()?;
            acc = self.mul(&acc, &f, at)?;
        }
    }

    fn sum(&mut self) -> Result<Poly> {
        let mut acc = Poly::new();
        let mut neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            for (m, c) in t {
                poly_add(&mut acc, m, if neg { -c } else { c });
            }
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return self.err(self.pos, "unexpected trailing input");
        }
        Ok(())
    }
}

fn sorted_names(alg_names: impl IntoIterator<Item = (String, GenId)>) -> Vec<(String, GenId)> {
    let mut v: Vec<_> = alg_names.into_iter().collect();
    v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
    v
}

fn parse_poly(
    text: &str,
    line: usize,
    col0: usize,
    field: &'static CycloField,
    names: &[(String, GenId)],
) -> Result<Poly> {
    let mut p = ExprParser {
        src: text.as_bytes(),
        pos: 0,
        line,
        col0,
        field,
        names,
    };
    let out = p.sum()?;
    p.finish()?;
    Ok(out)
}

fn names_of(alg: &AlgebraDef) -> Vec<(String, GenId)> {
    sorted_names(alg.generators().iter().enumerate().map(|(i, g)| (g.name.clone(), i)))
}

fn poly_to_elt(p: &Poly, field: &'static CycloField, line: usize, col: usize) -> Result<ConfElt> {
    let mut out = ConfElt::zero(field);
    for (m, c) in p {
        let Some(gen) = m.gen else {
            return Err(Error::parse(line, col, "every term needs a generator"));
        };
        if m.x != 0 {
            return Err(Error::parse(line, col, "lambda is not allowed here"));
        }
        out.add_term(TermKey::new(gen, m.d, m.t), c.clone());
    }
    Ok(out)
}

fn poly_to_lambda(p: &Poly, field: &'static CycloField, line: usize, col: usize) -> Result<LambdaPoly> {
    let mut out = LambdaPoly::zero(field);
    for (m, c) in p {
        let Some(gen) = m.gen else {
            return Err(Error::parse(line, col, "every term needs a generator"));
        };
        if !m.t.is_zero() {
            return Err(Error::parse(line, col, "structure constants cannot depend on t"));
        }
        out.add_scaled_at(m.x, &ConfElt::term(field.one(), gen, m.d, Exponent::ZERO), c);
    }
    Ok(out)
}

/// Parses an element of `A (x) S`, e.g. `L + 1/2*D J t^{-1}`.
pub fn parse_element(alg: &AlgebraDef, text: &str) -> Result<ConfElt> {
    let p = parse_poly(text, 1, 0, alg.field(), &names_of(alg))?;
    poly_to_elt(&p, alg.field(), 1, 1)
}

/// Parses a lambda-polynomial with coefficients in `A`, e.g. `(D + 2*x) L`.
pub fn parse_lambda_poly(alg: &AlgebraDef, text: &str) -> Result<LambdaPoly> {
    let p = parse_poly(text, 1, 0, alg.field(), &names_of(alg))?;
    poly_to_lambda(&p, alg.field(), 1, 1)
}

/// Parses a scalar of `field`, e.g. `-1/2*zeta^3 + 1`.
pub fn parse_scalar(field: &'static CycloField, text: &str) -> Result<CycloScalar> {
    let p = parse_poly(text, 1, 0, field, &[])?;
    let mut out = field.zero();
    for (m, c) in p {
        if m != Mono::ONE {
            return Err(Error::parse(1, 1, format!("`{}` is not a scalar", text.trim())));
        }
        out += &c;
    }
    Ok(out)
}

/// Parses a `2x2` matrix written `a,b;c,d`.
pub fn parse_matrix(field: &'static CycloField, text: &str) -> Result<[[CycloScalar; 2]; 2]> {
    let rows: Vec<&str> = text.split(';').collect();
    let bad = || Error::parse(1, 1, "expected a matrix `a,b;c,d`");
    let [r0, r1] = rows[..] else {
        return Err(bad());
    };
    let row = |r: &str| -> Result<[CycloScalar; 2]> {
        let cells: Vec<&str> = r.split(',').collect();
        let [a, b] = cells[..] else {
            return Err(bad());
        };
        Ok([parse_scalar(field, a)?, parse_scalar(field, b)?])
    };
    Ok([row(r0)?, row(r1)?])
}

/// Parses a rational exponent such as `3`, `-1/2` (a Unicode minus is accepted).
pub fn parse_exponent(text: &str) -> Result<Exponent> {
    let text = text.trim().replace('\u{2212}', "-");
    let q = parse_rational(&text, 1, 1)?;
    let bad = || Error::parse(1, 1, format!("`{text}` is out of range"));
    let num: i64 = q.numer().try_into().map_err(|_| bad())?;
    let den: i64 = q.denom().try_into().map_err(|_| bad())?;
    Ok(Exponent::new(num, den))
}

/// Parses a mode `GEN[mu]` with `mu` a rational literal.
pub fn parse_mode(alg: &AlgebraDef, text: &str) -> Result<(GenId, Exponent)> {
    let text = text.trim();
    let bad = |msg: &str| Error::parse(1, 1, format!("{msg} in `{text}`"));
    let (name, rest) = text.split_once('[').ok_or_else(|| bad("expected GEN[mu]"))?;
    let mu = rest.strip_suffix(']').ok_or_else(|| bad("missing `]`"))?;
    let gen = alg.index_of(name.trim())?;
    Ok((gen, parse_exponent(mu)?))
}

/// Splits a line into whitespace-separated words with their 1-based columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_rational(text: &str, line: usize, col: usize) -> Result<Rational> {
    let bad = || Error::parse(line, col, format!("invalid rational `{text}`"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Splits `bracket A B = EXPR` after the keyword into the two generators and the expression.
fn bracket_header(
    rest: &str,
    offset: usize,
    line: usize,
    names: &[(String, GenId)],
    field: &'static CycloField,
) -> Result<(GenId, GenId, usize)> {
    let mut p = ExprParser {
        src: rest.as_bytes(),
        pos: 0,
        line,
        col0: offset,
        field,
        names,
    };
    let mut ids = [0; 2];
    for id in &mut ids {
        p.skip_ws();
        match p.generator() {
            Some((len, g)) => {
                p.pos += len;
                *id = g;
            }
            None => {
                let start = p.pos;
                let end = p.rest().iter().position(|c| c.is_ascii_whitespace() || *c == b'=');
                let word = &p.rest()[..end.unwrap_or(p.rest().len())];
                if word.is_empty() {
                    return p.err(start, "expected a generator name");
                }
                return p.err(start, format!("unknown generator `{}`", String::from_utf8_lossy(word)));
            }
        }
    }
    p.expect(b'=')?;
    Ok((ids[0], ids[1], p.pos))
}

/// Parses a `.csa` file, completes the table by skew-symmetry and validates it.
pub fn parse_algebra(text: &str) -> Result<AlgebraDef> {
    let mut name: Option<String> = None;
    let mut conductor: Option<u32> = None;
    let mut gens: Vec<GeneratorInfo> = Vec::new();
    let mut alg: Option<AlgebraDef> = None;
    let mut seen: BTreeMap<(GenId, GenId), usize> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = strip_comment(raw);
        let w = words(line);
        let Some(&(kcol, keyword)) = w.first() else {
            continue;
        };
        match keyword {
            "algebra" => {
                let [_, (_, n)] = w[..] else {
                    return Err(Error::parse(ln, kcol, "expected `algebra NAME`"));
                };
                if name.is_some() {
                    return Err(Error::parse(ln, kcol, "algebra name given twice"));
                }
                name = Some(n.to_string());
            }
            "cyclotomic" => {
                let [_, (c, n)] = w[..] else {
                    return Err(Error::parse(ln, kcol, "expected `cyclotomic N`"));
                };
                if conductor.is_some() || !gens.is_empty() {
                    return Err(Error::parse(ln, kcol, "cyclotomic must come once, before generators"));
                }
                let n: u32 = n
                    .parse()
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| Error::parse(ln, c, format!("invalid conductor `{n}`")))?;
                conductor = Some(n);
            }
            "generator" => {
                if alg.is_some() {
                    return Err(Error::parse(ln, kcol, "generators must precede brackets"));
                }
                let Some(&(ncol, gname)) = w.get(1) else {
                    return Err(Error::parse(ln, kcol, "expected a generator name"));
                };
                if RESERVED.contains(&gname)
                    || !gname.as_bytes()[0].is_ascii_alphabetic()
                    || gname.contains(['(', ')', '*', '^', '=', '/', '#', '{', '}'])
                {
                    return Err(Error::parse(ln, ncol, format!("invalid generator name `{gname}`")));
                }
                if gens.iter().any(|g| g.name == gname) {
                    return Err(Error::parse(ln, ncol, format!("duplicate generator `{gname}`")));
                }
                let mut parity = None;
                let mut weight = None;
                for &(c, opt) in &w[2..] {
                    match opt.split_once('=') {
                        Some(("parity", "even")) => parity = Some(Parity::Even),
                        Some(("parity", "odd")) => parity = Some(Parity::Odd),
                        Some(("weight", q)) => weight = Some(parse_rational(q, ln, c + 7)?),
                        _ => return Err(Error::parse(ln, c, format!("unknown option `{opt}`"))),
                    }
                }
                let parity =
                    parity.ok_or_else(|| Error::parse(ln, kcol, "missing parity=even|odd"))?;
                gens.push(GeneratorInfo::new(gname, parity, weight));
            }
            "bracket" => {
                if alg.is_none() {
                    let field = CycloField::get(conductor.unwrap_or(DEFAULT_CONDUCTOR));
                    let n = name.clone().unwrap_or_else(|| "A".into());
                    alg = Some(AlgebraDef::new(n, field, gens.clone())?);
                }
                let a = alg.as_mut().expect("created above");
                let names = names_of(a);
                let offset = kcol - 1 + "bracket".len();
                let rest = &line[offset..];
                let (i, j, used) = bracket_header(rest, offset, ln, &names, a.field())?;
                if let Some(prev) = seen.insert((i, j), ln) {
                    return Err(Error::parse(
                        ln,
                        kcol,
                        format!(
                            "bracket ({}, {}) already given on line {prev}",
                            a.gen_name(i),
                            a.gen_name(j)
                        ),
                    ));
                }
                let expr = &rest[used..];
                let ecol = offset + used;
                let p = parse_poly(expr, ln, ecol, a.field(), &names)?;
                let poly = poly_to_lambda(&p, a.field(), ln, ecol + 1)?;
                a.set_bracket(i, j, poly)?;
            }
            other => {
                return Err(Error::parse(ln, kcol, format!("unknown directive `{other}`")));
            }
        }
    }
    let alg = match alg {
        Some(a) => a,
        None => {
            let field = CycloField::get(conductor.unwrap_or(DEFAULT_CONDUCTOR));
            AlgebraDef::new(name.unwrap_or_else(|| "A".into()), field, gens)?
        }
    };
    complete_table_cs4(&alg)
}

fn term_label(alg: &AlgebraDef, key: &TermKey, lambda: u32) -> String {
    let mut parts = Vec::new();
    match key.dpow {
        0 => {}
        1 => parts.push("D".to_string()),
        d => parts.push(format!("D^({d})")),
    }
    match lambda {
        0 => {}
        1 => parts.push("x".to_string()),
        n => parts.push(format!("x^({n})")),
    }
    parts.push(alg.gen_name(key.gen).to_string());
    if !key.exp.is_zero() {
        parts.push(format!("t^{{{}}}", key.exp));
    }
    parts.join(" ")
}

pub fn format_element(alg: &AlgebraDef, x: &ConfElt) -> String {
    format_sum(x.terms().iter().map(|(k, c)| (c, term_label(alg, k, 0))))
}

pub fn format_lambda_poly(alg: &AlgebraDef, p: &LambdaPoly) -> String {
    format_sum(
        p.coeffs()
            .iter()
            .flat_map(|(n, x)| x.terms().iter().map(move |(k, c)| (c, term_label(alg, k, *n)))),
    )
}

/// Prints every explicit table entry; the output parses back to the same algebra.
pub fn print_algebra(alg: &AlgebraDef) -> String {
    let mut out = format!("algebra {}\ncyclotomic {}\n", alg.name, alg.conductor());
    for g in alg.generators() {
        out.push_str(&format!("generator {} parity={}", g.name, g.parity));
        if let Some(w) = &g.weight {
            out.push_str(&format!(" weight={}", fmt_rational(w)));
        }
        out.push('\n');
    }
    for ((i, j), p) in alg.table() {
        out.push_str(&format!(
            "bracket {} {} = {}\n",
            alg.gen_name(*i),
            alg.gen_name(*j),
            format_lambda_poly(alg, p)
        ));
    }
    out
}

/// Parses a `.csm` file against `alg`. Generators without an `image` line map to themselves.
///
/// ```text
/// morphism omega
/// level 1
/// image J = -J
/// ```
pub fn parse_morphism(alg: &AlgebraDef, text: &str) -> Result<GenMorphism> {
    let field = alg.field();
    let names = names_of(alg);
    let mut name = None;
    let mut level = None;
    let mut images: Vec<Option<ConfElt>> = vec![None; alg.dim()];
    let mut first_image_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = strip_comment(raw);
        let w = words(line);
        let Some(&(kcol, keyword)) = w.first() else {
            continue;
        };
        match keyword {
            "morphism" => {
                let [_, (_, n)] = w[..] else {
                    return Err(Error::parse(ln, kcol, "expected `morphism NAME`"));
                };
                name = Some(n.to_string());
            }
            "level" => {
                let [_, (c, n)] = w[..] else {
                    return Err(Error::parse(ln, kcol, "expected `level M`"));
                };
                level = Some(
                    n.parse::<u32>()
                        .ok()
                        .filter(|&m| m > 0)
                        .ok_or_else(|| Error::parse(ln, c, format!("invalid level `{n}`")))?,
                );
            }
            "image" => {
                if images.iter().all(Option::is_none) {
                    first_image_line = ln;
                }
                let offset = kcol - 1 + "image".len();
                let rest = &line[offset..];
                let mut p = ExprParser {
                    src: rest.as_bytes(),
                    pos: 0,
                    line: ln,
                    col0: offset,
                    field,
                    names: &names,
                };
                p.skip_ws();
                let Some((len, g)) = p.generator() else {
                    return p.err(p.pos, "expected a generator name");
                };
                p.pos += len;
                p.expect(b'=')?;
                let ecol = offset + p.pos;
                let poly = parse_poly(&rest[p.pos..], ln, ecol, field, &names)?;
                if images[g].is_some() {
                    return Err(Error::parse(ln, kcol, format!("image of {} given twice", alg.gen_name(g))));
                }
                images[g] = Some(poly_to_elt(&poly, field, ln, ecol + 1)?);
            }
            other => {
                return Err(Error::parse(ln, kcol, format!("unknown directive `{other}`")));
            }
        }
    }
    let images: Vec<ConfElt> = images
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.unwrap_or_else(|| ConfElt::gen(field, i)))
        .collect();
    let level = level.unwrap_or_else(|| images.iter().fold(1, |m, x| num_integer::lcm(m, x.level())));
    GenMorphism::new(alg, name.unwrap_or_else(|| "phi".into()), level, images).map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(first_image_line, 1, other.to_string()),
    })
}

pub fn print_morphism(alg: &AlgebraDef, phi: &GenMorphism) -> String {
    let mut out = format!("morphism {}\nlevel {}\n", phi.name, phi.level());
    for (i, x) in phi.images().iter().enumerate() {
        out.push_str(&format!("image {} = {}\n", alg.gen_name(i), format_element(alg, x)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{make_n2, make_n4};
    use crate::morphisms::n2_omega;

    #[test]
    fn factored_bracket_round_trips() {
        let text = "algebra V\ngenerator L parity=even weight=2\nbracket L L = (D + 2*x) L\n";
        let a = parse_algebra(text).unwrap();
        let printed = print_algebra(&a);
        assert!(printed.contains("bracket L L = D L + 2*x L"), "{printed}");
        assert_eq!(parse_algebra(&printed).unwrap(), a);
    }

    #[test]
    fn unknown_generator_is_located() {
        let text = "algebra V\ngenerator L parity=even\nbracket L Q = L\n";
        match parse_algebra(text) {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (3, 11));
                assert!(msg.contains("`Q`"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
        let text = "algebra V\ngenerator L parity=even\nbracket L L = D Q\n";
        assert!(matches!(parse_algebra(text), Err(Error::Parse { line: 3, col: 17, .. })));
    }

    #[test]
    fn divided_powers_multiply() {
        let a = make_n2();
        let p = parse_lambda_poly(&a, "D D L").unwrap();
        let q = parse_lambda_poly(&a, "2*D^(2) L").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn longest_match_names() {
        let a = make_n2();
        let x = parse_element(&a, "G+ - G- + 1/2*D J t^{-1/2}").unwrap();
        assert_eq!(format_element(&a, &x), "1/2*D J t^{-1/2} + G+ - G-");
        assert_eq!(parse_element(&a, &format_element(&a, &x)).unwrap(), x);
    }

    #[test]
    fn builtins_round_trip() {
        for a in [make_n2(), make_n4()] {
            assert_eq!(parse_algebra(&print_algebra(&a)).unwrap(), a);
        }
    }

    #[test]
    fn morphism_round_trip() {
        let a = make_n2();
        let w = n2_omega(&a).unwrap();
        let text = print_morphism(&a, &w);
        assert_eq!(parse_morphism(&a, &text).unwrap(), w);
        let partial = parse_morphism(&a, "morphism w\nimage J = -J\nimage G+ = G-\nimage G- = G+\n").unwrap();
        assert_eq!(partial, w);
    }

    #[test]
    fn scalars_and_modes() {
        let f = CycloField::get(24);
        assert_eq!(parse_scalar(f, "-1/2*zeta^3 + 1").unwrap(), &f.one() - &f.zeta_pow(3).scale(&crate::coefficients::rat(1, 2)));
        assert!(parse_scalar(f, "t").is_err());
        let m = parse_matrix(f, "0,1;-1,0").unwrap();
        assert_eq!(m[1][0], f.int(-1));
        let a = make_n2();
        assert_eq!(parse_mode(&a, "G+[\u{2212}1/2]").unwrap(), (2, Exponent::new(-1, 2)));
        assert_eq!(parse_mode(&a, "L[2]").unwrap(), (0, Exponent::int(2)));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_algebra("algebra\n"), Err(Error::Parse { line: 1, .. })));
        let t = "generator L parity=even\nbracket L L = 2 * * L\n";
        assert!(matches!(parse_algebra(t), Err(Error::Parse { line: 2, .. })));
        let t = "generator L parity=even\nbracket L L = L L\n";
        assert!(matches!(parse_algebra(t), Err(Error::Parse { line: 2, .. })));
    }
}
