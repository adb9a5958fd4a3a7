//! Z2^k gradings, commutation factors, colour brackets and declarative
//! relation schemas.
//!
//! The commutation factor is the scalar-product form
//! eps(a,b) = (-1)^{<a,b>}; on homogeneous elements the colour bracket is
//! XY - eps YX, so it collapses to a commutator (eps = +1) or an
//! anticommutator (eps = -1). Brackets over inhomogeneous sums distribute
//! over the homogeneous parts, which is exactly how the source relations
//! treat expressions like the Hamiltonian.
//!
//! Relation left-hand sides are s-expressions over registry labels:
//!
//! ```text
//! expr  := label
//!        | (br expr expr)      colour bracket, type inferred from degrees
//!        | (comm expr expr)    colour bracket asserted to be a commutator
//!        | (acomm expr expr)   colour bracket asserted to be an anticommutator
//!        | (comm! expr expr)   plain commutator, no grading involved
//!        | (acomm! expr expr)  plain anticommutator
//!        | (+ expr ...)
//!        | (* coeff expr)
//! ```
//!
//! Coefficients are exact products `q * 2^(p/2) * m^(p/2) * w^(p/2)` with a
//! rational q, evaluated at the model's mass and frequency when a relation
//! is checked.

pub mod specs;

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::interior_projector;
use crate::linalg::{
    self, combo_norms, eigh, fro_norm, inner, re, scale, sub, SpMat, C64, ONE,
};
use crate::oscillator::{GradedOperator, OperatorRegistry};
use crate::report::{RelationCheck, VerificationReport};

/// A homogeneous degree in Z2^k, k in {1,2,3}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Degree(pub Vec<u8>);

impl Degree {
    pub fn parse(s: &str) -> Result<Self> {
        let bits: Option<Vec<u8>> = s
            .chars()
            .map(|c| match c {
                '0' => Some(0),
                '1' => Some(1),
                _ => None,
            })
            .collect();
        match bits {
            Some(b) if (1..=3).contains(&b.len()) => Ok(Degree(b)),
            _ => Err(Error::Parse(s.into(), "degree must be 1-3 bits of 0/1".into())),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dot(&self, other: &Degree) -> Result<u8> {
        if self.len() != other.len() {
            return Err(Error::GradingMismatch(self.len(), other.len()));
        }
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a & b).sum::<u8>() & 1)
    }

    pub fn add(&self, other: &Degree) -> Result<Degree> {
        if self.len() != other.len() {
            return Err(Error::GradingMismatch(self.len(), other.len()));
        }
        Ok(Degree(
            self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect(),
        ))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl From<Degree> for String {
    fn from(d: Degree) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for Degree {
    type Error = Error;
    fn try_from(s: String) -> Result<Degree> {
        Degree::parse(&s)
    }
}

/// eps(a,b) = (-1)^{<a,b>} in {+1,-1}.
pub fn commutation_factor(a: &Degree, b: &Degree) -> Result<f64> {
    Ok(if a.dot(b)? == 1 { -1.0 } else { 1.0 })
}

/// Colour bracket of two homogeneous registry operators using their
/// canonical degree tags.
pub fn colour_bracket(x: &GradedOperator, y: &GradedOperator) -> Result<SpMat> {
    let dx = x.homogeneous_degree()?;
    let dy = y.homogeneous_degree()?;
    let eps = commutation_factor(dx, dy)?;
    let xy = &x.matrix * &y.matrix;
    let yx = &y.matrix * &x.matrix;
    Ok(sub(&xy, &scale(&yx, re(eps))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

impl BracketKind {
    fn name(self) -> &'static str {
        match self {
            BracketKind::Commutator => "commutator",
            BracketKind::Anticommutator => "anticommutator",
        }
    }
}

/// Exact coefficient q * i^pi * 2^(p2/2) * m^(pm/2) * w^(pw/2); the 2/m/w
/// powers are stored in half-integer units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Coeff {
    pub num: i64,
    pub den: i64,
    pub powi: u8,
    pub pow2: i32,
    pub powm: i32,
    pub poww: i32,
}

impl Coeff {
    pub const ZERO: Coeff = Coeff { num: 0, den: 1, powi: 0, pow2: 0, powm: 0, poww: 0 };

    pub fn int(n: i64) -> Self {
        Coeff { num: n, den: 1, powi: 0, pow2: 0, powm: 0, poww: 0 }
    }

    pub fn rat(num: i64, den: i64) -> Self {
        Coeff { num, den, powi: 0, pow2: 0, powm: 0, poww: 0 }
    }

    /// q * i
    pub fn imag(num: i64, den: i64) -> Self {
        Coeff { num, den, powi: 1, pow2: 0, powm: 0, poww: 0 }
    }

    /// q * sqrt(2 m w)
    pub fn sqrt_2mw(num: i64, den: i64) -> Self {
        Coeff { num, den, powi: 0, pow2: 1, powm: 1, poww: 1 }
    }

    /// q * sqrt(4 m w) = 2q * sqrt(m w)
    pub fn sqrt_4mw(num: i64, den: i64) -> Self {
        Coeff { num, den, powi: 0, pow2: 2, powm: 1, poww: 1 }
    }

    /// q * m^pm * w^pw with integer powers
    pub fn mw(num: i64, den: i64, pm: i32, pw: i32) -> Self {
        Coeff { num, den, powi: 0, pow2: 0, powm: 2 * pm, poww: 2 * pw }
    }

    pub fn eval(&self, mass: f64, omega: f64) -> C64 {
        let q = self.num as f64 / self.den as f64;
        let real = q
            * 2f64.powf(self.pow2 as f64 / 2.0)
            * mass.powf(self.powm as f64 / 2.0)
            * omega.powf(self.poww as f64 / 2.0);
        match self.powi % 4 {
            0 => re(real),
            1 => C64::new(0.0, real),
            2 => re(-real),
            _ => C64::new(0.0, -real),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            return write!(f, "0");
        }
        let mut factors: Vec<String> = Vec::new();
        let symbolic =
            self.powi % 4 != 0 || self.pow2 != 0 || self.powm != 0 || self.poww != 0;
        if !(self.num == 1 && self.den == 1 && symbolic) {
            if self.den == 1 {
                factors.push(format!("{}", self.num));
            } else {
                factors.push(format!("{}/{}", self.num, self.den));
            }
        }
        for _ in 0..self.powi % 4 {
            factors.push("i".into());
        }
        // exponents carry no parentheses so coefficients stay single
        // s-expression tokens
        for (base, p) in [("2", self.pow2), ("m", self.powm), ("w", self.poww)] {
            match p {
                0 => {}
                2 => factors.push(base.into()),
                p if p % 2 == 0 => factors.push(format!("{}^{}", base, p / 2)),
                p => factors.push(format!("{}^{}/2", base, p)),
            }
        }
        write!(f, "{}", factors.join("*"))
    }
}

impl From<Coeff> for String {
    fn from(c: Coeff) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for Coeff {
    type Error = Error;
    fn try_from(s: String) -> Result<Coeff> {
        parse_coeff(&s)
    }
}

fn parse_coeff(s: &str) -> Result<Coeff> {
    let bad = |m: &str| Error::Parse(s.into(), m.into());
    let mut out = Coeff::int(1);
    let mut saw_rational = false;
    for tok in s.split('*') {
        let tok = tok.trim();
        if tok.is_empty() {
            return Err(bad("empty factor"));
        }
        if let Some((base, exp)) = tok.split_once('^') {
            let exp = exp.trim_start_matches('(').trim_end_matches(')');
            let halves: i32 = if let Some(num) = exp.strip_suffix("/2") {
                num.parse().map_err(|_| bad("bad exponent"))?
            } else {
                2 * exp.parse::<i32>().map_err(|_| bad("bad exponent"))?
            };
            match base {
                "2" => out.pow2 += halves,
                "m" => out.powm += halves,
                "w" => out.poww += halves,
                _ => return Err(bad("exponent base must be 2, m or w")),
            }
        } else if tok == "i" {
            out.powi = (out.powi + 1) % 4;
        } else if tok == "m" {
            out.powm += 2;
        } else if tok == "w" {
            out.poww += 2;
        } else {
            if saw_rational {
                return Err(bad("more than one rational factor"));
            }
            saw_rational = true;
            let (num, den) = match tok.split_once('/') {
                Some((n, d)) => (
                    n.parse::<i64>().map_err(|_| bad("bad numerator"))?,
                    d.parse::<i64>().map_err(|_| bad("bad denominator"))?,
                ),
                None => (tok.parse::<i64>().map_err(|_| bad("bad rational"))?, 1),
            };
            out.num *= num;
            out.den *= den;
        }
    }
    Ok(out)
}

/// Relation left-hand sides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum OpExpr {
    Label(String),
    Scaled(Coeff, Box<OpExpr>),
    Sum(Vec<OpExpr>),
    Product(Box<OpExpr>, Box<OpExpr>),
    Bracket {
        /// None: plain (ungraded) bracket of the given kind.
        /// Some(None): colour bracket, kind inferred.
        /// Some(Some(k)): colour bracket asserted to realise kind k.
        colour: Option<Option<BracketKind>>,
        forced: Option<BracketKind>,
        lhs: Box<OpExpr>,
        rhs: Box<OpExpr>,
    },
}

impl OpExpr {
    pub fn label(s: &str) -> Self {
        OpExpr::Label(s.into())
    }

    pub fn br(lhs: OpExpr, rhs: OpExpr) -> Self {
        OpExpr::Bracket { colour: Some(None), forced: None, lhs: Box::new(lhs), rhs: Box::new(rhs) }
    }

    pub fn comm(lhs: OpExpr, rhs: OpExpr) -> Self {
        OpExpr::Bracket {
            colour: Some(Some(BracketKind::Commutator)),
            forced: None,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn acomm(lhs: OpExpr, rhs: OpExpr) -> Self {
        OpExpr::Bracket {
            colour: Some(Some(BracketKind::Anticommutator)),
            forced: None,
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn comm_plain(lhs: OpExpr, rhs: OpExpr) -> Self {
        OpExpr::Bracket {
            colour: None,
            forced: Some(BracketKind::Commutator),
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn acomm_plain(lhs: OpExpr, rhs: OpExpr) -> Self {
        OpExpr::Bracket {
            colour: None,
            forced: Some(BracketKind::Anticommutator),
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn scaled(c: Coeff, e: OpExpr) -> Self {
        OpExpr::Scaled(c, Box::new(e))
    }

    pub fn sum(es: Vec<OpExpr>) -> Self {
        OpExpr::Sum(es)
    }

    pub fn prod(lhs: OpExpr, rhs: OpExpr) -> Self {
        OpExpr::Product(Box::new(lhs), Box::new(rhs))
    }

    pub fn to_sexpr(&self) -> String {
        match self {
            OpExpr::Label(l) => l.clone(),
            OpExpr::Scaled(c, e) => format!("(* {} {})", c, e.to_sexpr()),
            OpExpr::Sum(es) => {
                let parts: Vec<_> = es.iter().map(|e| e.to_sexpr()).collect();
                format!("(+ {})", parts.join(" "))
            }
            OpExpr::Product(lhs, rhs) => {
                format!("(prod {} {})", lhs.to_sexpr(), rhs.to_sexpr())
            }
            OpExpr::Bracket { colour, forced, lhs, rhs } => {
                let head = match (colour, forced) {
                    (Some(None), _) => "br",
                    (Some(Some(BracketKind::Commutator)), _) => "comm",
                    (Some(Some(BracketKind::Anticommutator)), _) => "acomm",
                    (None, Some(BracketKind::Commutator)) => "comm!",
                    (None, Some(BracketKind::Anticommutator)) => "acomm!",
                    (None, None) => unreachable!(),
                };
                format!("({} {} {})", head, lhs.to_sexpr(), rhs.to_sexpr())
            }
        }
    }

    pub fn parse(s: &str) -> Result<OpExpr> {
        let tokens = tokenize(s);
        let mut pos = 0;
        let expr = parse_expr(s, &tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(s.into(), "trailing tokens".into()));
        }
        Ok(expr)
    }
}

impl From<OpExpr> for String {
    fn from(e: OpExpr) -> String {
        e.to_sexpr()
    }
}

impl TryFrom<String> for OpExpr {
    type Error = Error;
    fn try_from(s: String) -> Result<OpExpr> {
        OpExpr::parse(&s)
    }
}

fn tokenize(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_expr(src: &str, tokens: &[String], pos: &mut usize) -> Result<OpExpr> {
    let bad = |m: &str| Error::Parse(src.into(), m.into());
    let tok = tokens.get(*pos).ok_or_else(|| bad("unexpected end"))?;
    if tok != "(" {
        *pos += 1;
        return Ok(OpExpr::Label(tok.clone()));
    }
    *pos += 1; // consume "("
    let head = tokens.get(*pos).ok_or_else(|| bad("missing head"))?.clone();
    *pos += 1;
    let expr = match head.as_str() {
        "+" => {
            let mut items = Vec::new();
            while tokens.get(*pos).map(|t| t != ")").unwrap_or(false) {
                items.push(parse_expr(src, tokens, pos)?);
            }
            if items.is_empty() {
                return Err(bad("empty sum"));
            }
            OpExpr::Sum(items)
        }
        "*" => {
            let ctok = tokens.get(*pos).ok_or_else(|| bad("missing coefficient"))?.clone();
            *pos += 1;
            let c = parse_coeff(&ctok)?;
            let e = parse_expr(src, tokens, pos)?;
            OpExpr::Scaled(c, Box::new(e))
        }
        "prod" => {
            let lhs = parse_expr(src, tokens, pos)?;
            let rhs = parse_expr(src, tokens, pos)?;
            OpExpr::prod(lhs, rhs)
        }
        "br" | "comm" | "acomm" | "comm!" | "acomm!" => {
            let lhs = parse_expr(src, tokens, pos)?;
            let rhs = parse_expr(src, tokens, pos)?;
            match head.as_str() {
                "br" => OpExpr::br(lhs, rhs),
                "comm" => OpExpr::comm(lhs, rhs),
                "acomm" => OpExpr::acomm(lhs, rhs),
                "comm!" => OpExpr::comm_plain(lhs, rhs),
                "acomm!" => OpExpr::acomm_plain(lhs, rhs),
                _ => unreachable!(),
            }
        }
        _ => return Err(bad(&format!("unknown head `{head}`"))),
    };
    match tokens.get(*pos) {
        Some(t) if t == ")" => {
            *pos += 1;
            Ok(expr)
        }
        _ => Err(bad("missing closing paren")),
    }
}

/// One checkable relation instance: lhs = sum of rhs terms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationSchema {
    pub id: String,
    pub lhs: OpExpr,
    /// Linear combination of registry labels; empty means zero.
    pub rhs: Vec<(Coeff, String)>,
    /// Interior depth; inferred from creation degrees when absent.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub depth: Option<usize>,
    /// Expanded by us from a table row the source leaves as "etc.".
    #[serde(default)]
    pub expanded: bool,
}

impl RelationSchema {
    pub fn new(id: impl Into<String>, lhs: OpExpr, rhs: Vec<(Coeff, String)>) -> Self {
        RelationSchema { id: id.into(), lhs, rhs, depth: None, expanded: false }
    }

    pub fn expanded(mut self) -> Self {
        self.expanded = true;
        self
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = Some(depth);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosurePolicy {
    /// Bracket of every generator pair not named in the table must vanish.
    AllRemainingZero,
    /// Bracket of every generator pair must lie in span(generators + Id).
    SpanOfBasis,
}

/// A named algebra presentation: graded generators, relation table, closure
/// policy. `aux` lists registry labels referenced by relations without being
/// generators (H^2 and the like), with the degree they carry in this algebra.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub name: String,
    pub grading_len: usize,
    /// Spatial dimension of the model this presentation lives on.
    pub dim: usize,
    pub generators: Vec<(String, Degree)>,
    #[serde(default)]
    pub aux: Vec<(String, Degree)>,
    pub relations: Vec<RelationSchema>,
    pub closure: ClosurePolicy,
}

impl AlgebraSpec {
    pub fn degree_map(&self) -> HashMap<&str, &Degree> {
        self.generators
            .iter()
            .chain(&self.aux)
            .map(|(l, d)| (l.as_str(), d))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra spec serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

// ---------------------------------------------------------------------------
// evaluation

enum Parts {
    /// Homogeneous pieces (degree, matrix).
    Graded(Vec<(Degree, SpMat)>),
    Plain(SpMat),
}

struct EvalCtx<'a> {
    registry: &'a OperatorRegistry,
    degrees: &'a HashMap<&'a str, &'a Degree>,
    violations: Vec<(String, &'static str, &'static str)>,
    relation_id: String,
}

impl<'a> EvalCtx<'a> {
    fn op(&self, label: &str) -> Result<&'a GradedOperator> {
        self.registry.get(label)
    }

    fn eval(&mut self, e: &OpExpr) -> Result<Parts> {
        match e {
            OpExpr::Label(l) => {
                let op = self.op(l)?;
                match self.degrees.get(l.as_str()) {
                    Some(d) => Ok(Parts::Graded(vec![((*d).clone(), op.matrix.clone())])),
                    None => Ok(Parts::Plain(op.matrix.clone())),
                }
            }
            OpExpr::Scaled(c, inner) => {
                let v = c.eval(self.registry.model.mass, self.registry.model.omega);
                Ok(match self.eval(inner)? {
                    Parts::Graded(parts) => Parts::Graded(
                        parts.into_iter().map(|(d, m)| (d, scale(&m, v))).collect(),
                    ),
                    Parts::Plain(m) => Parts::Plain(scale(&m, v)),
                })
            }
            OpExpr::Sum(es) => {
                let mut graded: Vec<(Degree, SpMat)> = Vec::new();
                let mut plain: Option<SpMat> = None;
                for e in es {
                    match self.eval(e)? {
                        Parts::Graded(parts) => graded.extend(parts),
                        Parts::Plain(m) => {
                            plain = Some(match plain {
                                Some(p) => linalg::add(&p, &m),
                                None => m,
                            })
                        }
                    }
                }
                if let Some(mut p) = plain {
                    for (_, m) in &graded {
                        p = linalg::add(&p, m);
                    }
                    Ok(Parts::Plain(p))
                } else {
                    Ok(Parts::Graded(graded))
                }
            }
            OpExpr::Product(lhs, rhs) => {
                match (self.eval(lhs)?, self.eval(rhs)?) {
                    (Parts::Graded(lp), Parts::Graded(rp)) if lp.len() == 1 && rp.len() == 1 => {
                        let (dl, ml) = &lp[0];
                        let (dr, mr) = &rp[0];
                        Ok(Parts::Graded(vec![(dl.add(dr)?, ml * mr)]))
                    }
                    (l, r) => Ok(Parts::Plain(&flatten(l) * &flatten(r))),
                }
            }
            OpExpr::Bracket { colour, forced, lhs, rhs } => {
                if let Some(expect) = colour {
                    let lp = match self.eval(lhs)? {
                        Parts::Graded(p) => p,
                        Parts::Plain(_) => {
                            return Err(Error::Inhomogeneous(lhs.to_sexpr()));
                        }
                    };
                    let rp = match self.eval(rhs)? {
                        Parts::Graded(p) => p,
                        Parts::Plain(_) => {
                            return Err(Error::Inhomogeneous(rhs.to_sexpr()));
                        }
                    };
                    let mut out: Vec<(Degree, SpMat)> = Vec::new();
                    for (dl, ml) in &lp {
                        for (dr, mr) in &rp {
                            let eps = commutation_factor(dl, dr)?;
                            let inferred = if eps > 0.0 {
                                BracketKind::Commutator
                            } else {
                                BracketKind::Anticommutator
                            };
                            if let Some(expect) = expect {
                                if *expect != inferred {
                                    self.violations.push((
                                        self.relation_id.clone(),
                                        expect.name(),
                                        inferred.name(),
                                    ));
                                }
                            }
                            let m = sub(&(ml * mr), &scale(&(mr * ml), re(eps)));
                            out.push((dl.add(dr)?, m));
                        }
                    }
                    Ok(Parts::Graded(out))
                } else {
                    let kind = forced.expect("bracket has a kind");
                    let l = flatten(self.eval(lhs)?);
                    let r = flatten(self.eval(rhs)?);
                    let m = match kind {
                        BracketKind::Commutator => linalg::commutator(&l, &r),
                        BracketKind::Anticommutator => linalg::anticommutator(&l, &r),
                    };
                    Ok(Parts::Plain(m))
                }
            }
        }
    }
}

fn flatten(p: Parts) -> SpMat {
    match p {
        Parts::Plain(m) => m,
        Parts::Graded(parts) => {
            let mut it = parts.into_iter();
            let (_, first) = it.next().expect("nonempty parts");
            it.fold(first, |acc, (_, m)| linalg::add(&acc, &m))
        }
    }
}

fn expr_depth(e: &OpExpr, registry: &OperatorRegistry) -> Result<usize> {
    Ok(match e {
        OpExpr::Label(l) => registry.get(l)?.raising,
        OpExpr::Scaled(_, inner) => expr_depth(inner, registry)?,
        OpExpr::Sum(es) => {
            let mut d = 0;
            for e in es {
                d = d.max(expr_depth(e, registry)?);
            }
            d
        }
        OpExpr::Product(lhs, rhs)
        | OpExpr::Bracket { lhs, rhs, .. } => {
            expr_depth(lhs, registry)? + expr_depth(rhs, registry)?
        }
    })
}

fn relation_depth(rel: &RelationSchema, registry: &OperatorRegistry) -> Result<usize> {
    if let Some(d) = rel.depth {
        return Ok(d);
    }
    let mut d = expr_depth(&rel.lhs, registry)?;
    for (_, l) in &rel.rhs {
        d = d.max(registry.get(l)?.raising);
    }
    Ok(d)
}

/// Shared projector-mask cache for one registry.
struct Masks<'a> {
    registry: &'a OperatorRegistry,
    by_depth: HashMap<usize, Vec<bool>>,
}

impl<'a> Masks<'a> {
    fn new(registry: &'a OperatorRegistry) -> Self {
        Masks { registry, by_depth: HashMap::new() }
    }

    fn get(&mut self, depth: usize) -> Result<&Vec<bool>> {
        let model = &self.registry.model;
        if depth > model.cutoff.n_max {
            return Err(Error::CutoffTooSmallFor {
                n_max: model.cutoff.n_max,
                needed: depth,
                what: "relation".into(),
            });
        }
        if !self.by_depth.contains_key(&depth) {
            let p = interior_projector(depth, model.dim, model.cutoff, model.rep.rep_dim)?;
            self.by_depth.insert(depth, p.mask);
        }
        Ok(&self.by_depth[&depth])
    }
}

/// Evaluate one relation against a registry; returns the check record.
fn check_relation(
    rel: &RelationSchema,
    spec_degrees: &HashMap<&str, &Degree>,
    registry: &OperatorRegistry,
    tol: f64,
    masks: &mut Masks<'_>,
) -> Result<RelationCheck> {
    let mut ctx = EvalCtx {
        registry,
        degrees: spec_degrees,
        violations: vec![],
        relation_id: rel.id.clone(),
    };
    let lhs = flatten(ctx.eval(&rel.lhs)?);
    if let Some((id, written, inferred)) = ctx.violations.into_iter().next() {
        return Err(Error::BracketTypeMismatch { id, written, inferred });
    }
    let mut terms: Vec<(C64, &SpMat)> = vec![(ONE, &lhs)];
    let (mass, omega) = (registry.model.mass, registry.model.omega);
    let mut rhs_mats: Vec<(C64, &SpMat)> = Vec::new();
    for (c, label) in &rel.rhs {
        rhs_mats.push((-c.eval(mass, omega), &registry.get(label)?.matrix));
    }
    terms.extend(rhs_mats);
    let depth = relation_depth(rel, registry)?;
    let mask = masks.get(depth)?;
    let (masked, full) = combo_norms(&terms, Some(mask));
    let mut check = RelationCheck::new(&rel.id, masked, full, depth, tol);
    if rel.expanded {
        check = check.expanded();
    }
    Ok(check)
}

fn mask_mat(a: &SpMat, mask: &[bool]) -> SpMat {
    let mut t = sprs::TriMat::new(a.shape());
    for (&v, (i, j)) in a.iter() {
        if mask[i] && mask[j] && v != linalg::ZERO {
            t.add_triplet(i, j, v);
        }
    }
    t.to_csr()
}

/// Least-squares residual of `b` against span(candidates), all pre-masked.
fn span_residual(b: &SpMat, candidates: &[SpMat]) -> f64 {
    let k = candidates.len();
    let mut gram = ndarray::Array2::<C64>::zeros((k, k));
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = inner(&candidates[i], &candidates[j]);
        }
    }
    let mut rhs = vec![linalg::ZERO; k];
    for i in 0..k {
        rhs[i] = inner(&candidates[i], b);
    }
    // pseudo-inverse through the Hermitian eigendecomposition of the Gram
    let (vals, vecs) = eigh(&gram).expect("gram eigendecomposition");
    let vmax = vals.iter().cloned().fold(0.0f64, f64::max);
    let cut = vmax * 1e-12;
    let mut coef = vec![linalg::ZERO; k];
    for (idx, &lam) in vals.iter().enumerate() {
        if lam <= cut {
            continue;
        }
        // projection of rhs on eigenvector idx
        let mut proj = linalg::ZERO;
        for i in 0..k {
            proj += vecs[(i, idx)].conj() * rhs[i];
        }
        let w = proj / re(lam);
        for i in 0..k {
            coef[i] += vecs[(i, idx)] * w;
        }
    }
    let mut resid_sq = fro_norm(b).powi(2);
    for i in 0..k {
        resid_sq -= 2.0 * (coef[i].conj() * rhs[i]).re;
    }
    for i in 0..k {
        for j in 0..k {
            resid_sq += (coef[i].conj() * gram[(i, j)] * coef[j]).re;
        }
    }
    resid_sq.max(0.0).sqrt()
}

/// Verify every table relation plus the closure claim of an algebra
/// presentation.
pub fn verify_algebra(
    spec: &AlgebraSpec,
    registry: &OperatorRegistry,
    tol: f64,
) -> Result<VerificationReport> {
    if spec.dim != registry.model.dim {
        return Err(Error::AlgebraDimMismatch(spec.name.clone(), registry.model.dim));
    }
    let degrees = spec.degree_map();
    let mut masks = Masks::new(registry);
    let mut checks = Vec::new();
    for rel in &spec.relations {
        checks.push(check_relation(rel, &degrees, registry, tol, &mut masks)?);
    }

    // closure sweep
    let named: HashSet<(String, String)> = spec
        .relations
        .iter()
        .filter_map(|r| match &r.lhs {
            OpExpr::Bracket { lhs, rhs, .. } => match (lhs.as_ref(), rhs.as_ref()) {
                (OpExpr::Label(a), OpExpr::Label(b)) => Some((a.clone(), b.clone())),
                _ => None,
            },
            _ => None,
        })
        .flat_map(|(a, b)| [(a.clone(), b.clone()), (b, a)])
        .collect();

    let gens = &spec.generators;
    let n = gens.len();
    let mut pair_jobs = Vec::new();
    for i in 0..n {
        for j in i..n {
            pair_jobs.push((i, j));
        }
    }
    let candidates_by_depth: HashMap<usize, Vec<SpMat>> = match spec.closure {
        ClosurePolicy::SpanOfBasis => {
            let mut depths: HashSet<usize> = HashSet::new();
            for &(i, j) in &pair_jobs {
                let d = registry.get(&gens[i].0)?.raising + registry.get(&gens[j].0)?.raising;
                depths.insert(d);
            }
            let mut out = HashMap::new();
            for d in depths {
                let mask = masks.get(d)?.clone();
                let mut cands: Vec<SpMat> = Vec::with_capacity(n + 1);
                for (l, _) in gens {
                    cands.push(mask_mat(&registry.get(l)?.matrix, &mask));
                }
                cands.push(mask_mat(&linalg::eye(registry.model.space_dim()), &mask));
                out.insert(d, cands);
            }
            out
        }
        ClosurePolicy::AllRemainingZero => HashMap::new(),
    };
    // pre-resolve depth masks
    let mut pair_data = Vec::new();
    for &(i, j) in &pair_jobs {
        let d = registry.get(&gens[i].0)?.raising + registry.get(&gens[j].0)?.raising;
        let mask = masks.get(d)?.clone();
        pair_data.push((i, j, d, mask));
    }

    let closure_checks: Vec<Result<Option<RelationCheck>>> = pair_data
        .par_iter()
        .map(|(i, j, depth, mask)| {
            let (la, da) = (&gens[*i].0, &gens[*i].1);
            let (lb, db) = (&gens[*j].0, &gens[*j].1);
            let a = registry.get(la)?;
            let b = registry.get(lb)?;
            let eps = commutation_factor(da, db)?;
            let ab = &a.matrix * &b.matrix;
            let ba = &b.matrix * &a.matrix;
            let bracket = sub(&ab, &scale(&ba, re(eps)));
            match spec.closure {
                ClosurePolicy::AllRemainingZero => {
                    if named.contains(&(la.clone(), lb.clone())) {
                        return Ok(None);
                    }
                    let (masked, full) = combo_norms(&[(ONE, &bracket)], Some(mask));
                    Ok(Some(RelationCheck::new(
                        format!("{}.closure.zero[{},{}]", spec.name, la, lb),
                        masked,
                        full,
                        *depth,
                        tol,
                    )))
                }
                ClosurePolicy::SpanOfBasis => {
                    let masked_bracket = mask_mat(&bracket, mask);
                    let resid = span_residual(&masked_bracket, &candidates_by_depth[depth]);
                    let (_, full) = combo_norms(&[(ONE, &bracket)], None);
                    Ok(Some(RelationCheck::new(
                        format!("{}.closure.span[{},{}]", spec.name, la, lb),
                        resid,
                        full,
                        *depth,
                        tol,
                    )))
                }
            }
        })
        .collect();
    for c in closure_checks {
        if let Some(c) = c? {
            checks.push(c);
        }
    }
    Ok(VerificationReport::new(format!("verify-algebra[{}]", spec.name), checks))
}

/// Colour Jacobi sweep over all generator triples:
/// eps(Z,X)[[X,[[Y,Z]]]] + eps(X,Y)[[Y,[[Z,X]]]] + eps(Y,Z)[[Z,[[X,Y]]]] = 0.
/// All six orderings of each triple reduce to two independent combinations
/// of the same three double brackets; both are checked.
pub fn colour_jacobi_sweep(
    spec: &AlgebraSpec,
    registry: &OperatorRegistry,
    tol: f64,
) -> Result<VerificationReport> {
    if spec.dim != registry.model.dim {
        return Err(Error::AlgebraDimMismatch(spec.name.clone(), registry.model.dim));
    }
    let gens = &spec.generators;
    let n = gens.len();
    let mut ops = Vec::with_capacity(n);
    for (l, d) in gens {
        let op = registry.get(l)?;
        ops.push((l.as_str(), d, &op.matrix, op.raising));
    }
    let mut masks = Masks::new(registry);
    let mut depth_cache: HashMap<usize, Vec<bool>> = HashMap::new();
    let mut triples = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let depth = ops[i].3 + ops[j].3 + ops[k].3;
                if !depth_cache.contains_key(&depth) {
                    depth_cache.insert(depth, masks.get(depth)?.clone());
                }
                triples.push((i, j, k, depth));
            }
        }
    }

    let checks: Vec<Result<RelationCheck>> = triples
        .par_iter()
        .map(|&(i, j, k, depth)| {
            let (lx, dx, mx, _) = ops[i];
            let (ly, dy, my, _) = ops[j];
            let (lz, dz, mz, _) = ops[k];
            let br = |da: &Degree, ma: &SpMat, db: &Degree, mb: &SpMat| -> Result<SpMat> {
                let eps = commutation_factor(da, db)?;
                Ok(sub(&(ma * mb), &scale(&(mb * ma), re(eps))))
            };
            let yz = br(dy, my, dz, mz)?;
            let zx = br(dz, mz, dx, mx)?;
            let xy = br(dx, mx, dy, my)?;
            let dyz = dy.add(dz)?;
            let dzx = dz.add(dx)?;
            let dxy = dx.add(dy)?;
            let d_x = br(dx, mx, &dyz, &yz)?;
            let d_y = br(dy, my, &dzx, &zx)?;
            let d_z = br(dz, mz, &dxy, &xy)?;
            let e = |a: &Degree, b: &Degree| commutation_factor(a, b).map(re);
            // J(X,Y,Z)
            let t1 = [
                (e(dz, dx)?, &d_x),
                (e(dx, dy)?, &d_y),
                (e(dy, dz)?, &d_z),
            ];
            // J(X,Z,Y) in terms of the same double brackets
            let t2 = [
                (-(e(dy, dx)? * e(dy, dz)?), &d_x),
                (-(e(dz, dy)? * e(dz, dx)?), &d_y),
                (-(e(dx, dz)? * e(dx, dy)?), &d_z),
            ];
            let mask = &depth_cache[&depth];
            let (m1, f1) = combo_norms(&t1, Some(mask));
            let (m2, f2) = combo_norms(&t2, Some(mask));
            Ok(RelationCheck::new(
                format!("{}.jacobi[{},{},{}]", spec.name, lx, ly, lz),
                m1.max(m2),
                f1.max(f2),
                depth,
                tol,
            ))
        })
        .collect();
    let checks: Result<Vec<_>> = checks.into_iter().collect();
    Ok(VerificationReport::new(format!("jacobi[{}]", spec.name), checks?))
}

/// Verify a bare relation set (interleave rows and similar) that is not an
/// algebra presentation; degrees are looked up in `degree_ctx`.
pub fn verify_relations(
    suite: &str,
    relations: &[RelationSchema],
    degree_ctx: &[(String, Degree)],
    registry: &OperatorRegistry,
    tol: f64,
) -> Result<VerificationReport> {
    let degrees: HashMap<&str, &Degree> =
        degree_ctx.iter().map(|(l, d)| (l.as_str(), d)).collect();
    let mut masks = Masks::new(registry);
    let mut checks = Vec::new();
    for rel in relations {
        checks.push(check_relation(rel, &degrees, registry, tol, &mut masks)?);
    }
    Ok(VerificationReport::new(suite, checks))
}

pub use specs::builtin_specs;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn commutation_factor_examples() {
        let d10 = Degree::parse("10").unwrap();
        let d11 = Degree::parse("11").unwrap();
        let d00 = Degree::parse("00").unwrap();
        assert_eq!(commutation_factor(&d10, &d10).unwrap(), -1.0);
        assert_eq!(commutation_factor(&d11, &d11).unwrap(), 1.0);
        assert_eq!(commutation_factor(&d00, &d11).unwrap(), 1.0);
        assert!(commutation_factor(&d10, &Degree::parse("1").unwrap()).is_err());
    }

    #[test]
    fn coeff_roundtrip_and_eval() {
        let c = Coeff::sqrt_2mw(-3, 1);
        let s = c.to_string();
        assert_eq!(s, "-3*2^1/2*m^1/2*w^1/2");
        assert_eq!(parse_coeff(&s).unwrap(), c);
        assert!((c.eval(2.0, 0.5).re - (-3.0 * (2.0 * 2.0 * 0.5f64).sqrt())).abs() < 1e-15);
        let c2 = Coeff::mw(2, 1, 0, -1);
        assert_eq!(c2.to_string(), "2*w^-1");
        assert!((c2.eval(1.0, 4.0).re - 0.5).abs() < 1e-15);
        assert_eq!(parse_coeff("1/2").unwrap(), Coeff::rat(1, 2));
        let ci = parse_coeff("2*i").unwrap();
        assert_eq!(ci, Coeff::imag(2, 1));
        assert_eq!(ci.to_string(), "2*i");
        assert_eq!(ci.eval(1.0, 1.0), C64::new(0.0, 2.0));
    }

    #[test]
    fn sexpr_roundtrip() {
        let e = OpExpr::sum(vec![
            OpExpr::acomm(OpExpr::label("b-"), OpExpr::label("s+")),
            OpExpr::scaled(Coeff::mw(1, 1, 1, 0), OpExpr::label("beta")),
            OpExpr::comm_plain(OpExpr::label("H"), OpExpr::label("b+")),
        ]);
        let s = e.to_sexpr();
        assert_eq!(s, "(+ (acomm b- s+) (* m beta) (comm! H b+))");
        assert_eq!(OpExpr::parse(&s).unwrap(), e);
        assert!(OpExpr::parse("(bogus a b)").is_err());
        assert!(OpExpr::parse("(+ a").is_err());
    }

    proptest! {
        #[test]
        fn eps_symmetric_and_bimultiplicative(bits in proptest::collection::vec(0u8..2, 3*3)) {
            let a = Degree(bits[0..3].to_vec());
            let b = Degree(bits[3..6].to_vec());
            let c = Degree(bits[6..9].to_vec());
            let e = |x: &Degree, y: &Degree| commutation_factor(x, y).unwrap();
            prop_assert_eq!(e(&a, &b), e(&b, &a));
            prop_assert_eq!(e(&a.add(&b).unwrap(), &c), e(&a, &c) * e(&b, &c));
            let eaa = e(&a, &a);
            prop_assert!(eaa == 1.0 || eaa == -1.0);
        }
    }
}
