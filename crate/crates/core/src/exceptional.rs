//! Embedded data tables for the primitive irreducible reflection groups
//! G4..G37: standard Cartan matrices over the ring of integers of the field
//! of definition, connection-index generators, bad-number generators, and
//! group orders.
//!
//! The tables live in `data/exceptional.json`; the environment variable
//! `CYCLOROOTS_DATA` overrides the path at first access. Matrix entries use a
//! tiny expression language evaluated into exact cyclotomic numbers.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

use crate::cyclo::{CycNum, RingSpec};
use crate::error::Error;
use crate::ideals::FracIdeal;
use crate::Result;

const EMBEDDED: &str = include_str!("../data/exceptional.json");

/// One table row.
#[derive(Debug, Clone)]
pub struct ExcGroup {
    pub name: String,
    pub rank: usize,
    pub order: u64,
    pub spetsial: bool,
    pub well_generated: bool,
    pub ring: RingSpec,
    /// Cartan matrix of the standard generators (square of side `rank` for
    /// well-generated groups, `rank + 1` otherwise).
    pub cartan: Vec<Vec<CycNum>>,
    pub connection_index: CycNum,
    pub bad: Option<CycNum>,
}

#[derive(Deserialize)]
struct RawRing {
    conductor: u64,
    fixed_by: Vec<u64>,
}

#[derive(Deserialize)]
struct RawGroup {
    name: String,
    rank: usize,
    order: u64,
    spetsial: bool,
    well_generated: bool,
    ring: RawRing,
    cartan: Vec<Vec<String>>,
    connection_index: String,
    bad: Option<String>,
}

#[derive(Deserialize)]
struct RawData {
    groups: Vec<RawGroup>,
}

// ---------------------------------------------------------------------------
// Expression evaluation
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn parse_uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer too large".into(),
            })
    }

    fn parse_ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a symbol");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn atom(&mut self) -> Result<CycNum> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_uint()?;
                Ok(CycNum::from_integer(n as i64))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let ident = self.parse_ident()?;
                symbol_value(&ident).ok_or(Error::Parse {
                    pos: self.pos,
                    msg: format!("unknown symbol '{ident}'"),
                })
            }
            _ => self.err("expected an atom"),
        }
    }

    fn postfix(&mut self) -> Result<CycNum> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.parse_uint()?;
            return base.pow(e as i64);
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<CycNum> {
        if self.peek() == Some(b'-') {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.postfix()
    }

    fn term(&mut self) -> Result<CycNum> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => {
                    self.bump();
                    acc = acc.div(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn expr(&mut self) -> Result<CycNum> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }
}

/// Quadratic Gauss sum: `sqrt(p)` for `p = 1 mod 4`, `sqrt(-p)` for
/// `p = 3 mod 4`.
fn gauss_sum(p: u64) -> CycNum {
    let mut acc = CycNum::zero(p);
    for a in 1..p {
        let mut legendre = false;
        for b in 1..p {
            if b * b % p == a {
                legendre = true;
                break;
            }
        }
        let term = CycNum::root_of_unity(p, a as i64);
        acc = if legendre {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

fn symbol_value(ident: &str) -> Option<CycNum> {
    match ident {
        "i" => Some(CycNum::zeta(4)),
        "phi" => {
            // (1 + sqrt 5)/2 = -(z5^2 + z5^3)
            Some(
                CycNum::root_of_unity(5, 2)
                    .add(&CycNum::root_of_unity(5, 3))
                    .neg(),
            )
        }
        "r2" => Some(CycNum::zeta(8).add(&CycNum::root_of_unity(8, 7))),
        "r3" => Some(CycNum::zeta(12).add(&CycNum::root_of_unity(12, 11))),
        "r5" => Some(gauss_sum(5)),
        "r2i" => Some(CycNum::zeta(8).add(&CycNum::root_of_unity(8, 3))),
        "r3i" => Some(gauss_sum(3)),
        "r7i" => Some(gauss_sum(7)),
        _ => {
            if let Some(n) = ident.strip_prefix('z') {
                let n: u64 = n.parse().ok()?;
                if n >= 1 {
                    return Some(CycNum::zeta(n));
                }
                None
            } else {
                None
            }
        }
    }
}

/// Evaluate an entry of the data tables into an exact cyclotomic number.
pub fn eval_expr(src: &str) -> Result<CycNum> {
    let mut p = Parser::new(src);
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::Parse {
            pos: p.pos,
            msg: "trailing input".into(),
        });
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// Loading and validation
// ---------------------------------------------------------------------------

fn load() -> Result<BTreeMap<String, ExcGroup>> {
    let text = match std::env::var("CYCLOROOTS_DATA") {
        Ok(path) => std::fs::read_to_string(&path)
            .map_err(|e| Error::Data(format!("cannot read {path}: {e}")))?,
        Err(_) => EMBEDDED.to_string(),
    };
    let raw: RawData =
        serde_json::from_str(&text).map_err(|e| Error::Data(format!("bad JSON: {e}")))?;
    let mut out = BTreeMap::new();
    for g in raw.groups {
        let ring = crate::cyclo::make_ring(g.ring.conductor, &g.ring.fixed_by)?;
        let n = ring.conductor();
        let mut cartan = Vec::new();
        for row in &g.cartan {
            let mut r = Vec::new();
            for entry in row {
                let v = eval_expr(entry)?;
                let v = ring.embed(&v).map_err(|_| {
                    Error::Data(format!("{}: entry '{entry}' not in field", g.name))
                })?;
                if !ring.is_integral(&v) {
                    return Err(Error::Data(format!(
                        "{}: entry '{entry}' is not integral",
                        g.name
                    )));
                }
                r.push(v);
            }
            cartan.push(r);
        }
        // diagonal entries must be 1 - zeta for roots of unity zeta != 1
        for (t, row) in cartan.iter().enumerate() {
            let zeta = CycNum::one(n).sub(&row[t]);
            match zeta.as_root_of_unity() {
                Some((m, _)) if m > 1 => {}
                _ => {
                    return Err(Error::Data(format!(
                        "{}: diagonal entry {t} does not define a reflection",
                        g.name
                    )))
                }
            }
        }
        let expected_side = if g.well_generated { g.rank } else { g.rank + 1 };
        if cartan.len() != expected_side || cartan.iter().any(|r| r.len() != expected_side) {
            return Err(Error::Data(format!(
                "{}: Cartan matrix has the wrong shape",
                g.name
            )));
        }
        let connection_index = ring.embed(&eval_expr(&g.connection_index)?)?;
        let bad = match &g.bad {
            Some(b) => Some(ring.embed(&eval_expr(b)?)?),
            None => None,
        };
        // divisibility check: the ideal (c_G * rank!) divides (|G|)
        let mut fact = BigRational::from(BigInt::from(1));
        for k in 2..=g.rank {
            fact *= BigRational::from(BigInt::from(k as i64));
        }
        let cf =
            FracIdeal::from_element(&ring, &connection_index.mul(&CycNum::from_rational(fact)))?;
        let order_ideal = FracIdeal::from_element(
            &ring,
            &CycNum::from_rational(BigRational::from(BigInt::from(g.order))),
        )?;
        if !cf.divides(&order_ideal)? {
            return Err(Error::Data(format!(
                "{}: c_G * rank! does not divide the group order",
                g.name
            )));
        }
        out.insert(
            g.name.clone(),
            ExcGroup {
                name: g.name,
                rank: g.rank,
                order: g.order,
                spetsial: g.spetsial,
                well_generated: g.well_generated,
                ring,
                cartan,
                connection_index,
                bad,
            },
        );
    }
    Ok(out)
}

static DATA: OnceLock<BTreeMap<String, ExcGroup>> = OnceLock::new();

/// The validated table, loaded once per process.
pub fn all_groups() -> &'static BTreeMap<String, ExcGroup> {
    DATA.get_or_init(|| load().expect("embedded exceptional data is valid"))
}

pub fn lookup(name: &str) -> Result<&'static ExcGroup> {
    all_groups()
        .get(name)
        .ok_or_else(|| Error::UnsupportedGroup(format!("unknown exceptional group '{name}'")))
}

/// Names in canonical order G4..G37.
pub fn names() -> Vec<&'static str> {
    let mut v: Vec<&'static str> = all_groups().keys().map(|s| s.as_str()).collect();
    v.sort_by_key(|s| s[1..].parse::<u32>().unwrap_or(0));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Signed};

    #[test]
    fn expressions_evaluate() {
        // sqrt(-3) squared is -3
        let r = eval_expr("r3i").unwrap();
        assert_eq!(r.mul(&r), CycNum::from_integer(-3).lift_to(3));
        let r = eval_expr("r7i").unwrap();
        assert_eq!(r.mul(&r), CycNum::from_integer(-7).lift_to(7));
        let r = eval_expr("r2").unwrap();
        assert_eq!(r.mul(&r), CycNum::from_integer(2).lift_to(8));
        let phi = eval_expr("phi").unwrap();
        assert_eq!(phi.mul(&phi), phi.add(&CycNum::one(5)));
        let x = eval_expr("(1-r7i)/2").unwrap();
        assert_eq!(x.add(&eval_expr("(1+r7i)/2").unwrap()), CycNum::one(7));
        assert_eq!(eval_expr("z12^13").unwrap(), CycNum::zeta(12));
        assert!(eval_expr("2 +").is_err());
        assert!(eval_expr("qq").is_err());
    }

    #[test]
    fn tables_load_and_validate() {
        let data = all_groups();
        assert_eq!(data.len(), 34);
        for name in names() {
            let g = lookup(name).unwrap();
            assert_eq!(
                g.cartan.len(),
                if g.well_generated { g.rank } else { g.rank + 1 }
            );
        }
        // every G4..G37 name resolves
        for n in 4..=37 {
            assert!(lookup(&format!("G{n}")).is_ok());
        }
    }

    #[test]
    fn spetsial_set_matches() {
        let expected = [
            4, 6, 8, 14, 23, 24, 25, 26, 27, 28, 29, 30, 32, 33, 34, 35, 36, 37,
        ];
        for n in 4..=37 {
            let g = lookup(&format!("G{n}")).unwrap();
            assert_eq!(g.spetsial, expected.contains(&n), "G{n}");
            if g.spetsial {
                assert!(g.bad.is_some(), "spetsial G{n} needs a bad-number entry");
            }
        }
    }

    #[test]
    fn not_well_generated_set_matches() {
        let expected = [7, 11, 12, 13, 15, 19, 22, 31];
        for n in 4..=37 {
            let g = lookup(&format!("G{n}")).unwrap();
            assert_eq!(g.well_generated, !expected.contains(&n), "G{n}");
        }
    }

    #[test]
    fn marked_units_are_units() {
        // spot checks of entries the classification relies on
        let g11 = lookup("G11").unwrap();
        assert!(g11.ring.is_unit(&g11.cartan[0][1]).unwrap());
        assert!(g11.ring.is_unit(&g11.cartan[2][0]).unwrap());
        let g13 = lookup("G13").unwrap();
        assert!(g13.ring.is_unit(&g13.cartan[1][0]).unwrap());
        assert!(!g13.ring.is_unit(&g13.cartan[0][1]).unwrap()); // sqrt 2
        let g14 = lookup("G14").unwrap();
        assert!(g14.ring.is_unit(&g14.cartan[1][0]).unwrap());
    }

    #[test]
    fn h3_determinant_is_two_up_to_unit() {
        let g = lookup("G23").unwrap();
        let det = crate::cycmat::det(&g.cartan);
        // det = 4 - 2 phi = (2 - phi) * 2 with 2 - phi a unit
        let ratio = det.div(&CycNum::from_integer(2).lift_to(5)).unwrap();
        assert!(g.ring.is_unit(&ratio).unwrap());
        assert_eq!(g.ring.norm(&ratio).unwrap().abs(), BigRational::one());
    }
}
