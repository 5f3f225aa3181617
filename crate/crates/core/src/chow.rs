//! Intersection numbers on standard scrolls:
//! `A(F) = ℤ[L, M] / (L^{k+1}, ∏(M - a_i L))`, normalised by `M^n L^k = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::geography::FamilyParams;
use crate::scroll::{DivClass, StandardScroll};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("term of degree {degree} exceeds the dimension {dim} of the scroll")]
    DegreeOverflow { degree: u32, dim: usize },
    #[error("cannot parse expression {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("expected a class of codimension {expected}, got {expr}")]
    WrongCodimension { expected: u32, expr: String },
}

/// Polynomial in `M` and `L`; keys are `(power of M, power of L)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChowExpr {
    terms: BTreeMap<(u32, u32), i64>,
}

impl ChowExpr {
    pub fn zero() -> Self {
        ChowExpr::default()
    }

    pub fn constant(c: i64) -> Self {
        ChowExpr::monomial(c, 0, 0)
    }

    pub fn monomial(coeff: i64, m: u32, l: u32) -> Self {
        let mut e = ChowExpr::zero();
        e.add_term(m, l, coeff);
        e
    }

    pub fn m() -> Self {
        ChowExpr::monomial(1, 1, 0)
    }

    pub fn l() -> Self {
        ChowExpr::monomial(1, 0, 1)
    }

    pub fn from_class(c: DivClass) -> Self {
        ChowExpr::monomial(c.m, 1, 0) + ChowExpr::monomial(c.l, 0, 1)
    }

    fn add_term(&mut self, m: u32, l: u32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry((m, l)).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&(m, l));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: u32, l: u32) -> i64 {
        self.terms.get(&(m, l)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), i64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(m, l)| m + l).max()
    }

    pub fn is_homogeneous_of(&self, deg: u32) -> bool {
        self.terms.keys().all(|(m, l)| m + l == deg)
    }

    pub fn pow(&self, e: u32) -> ChowExpr {
        let mut acc = ChowExpr::constant(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for ChowExpr {
    type Output = ChowExpr;
    fn add(mut self, o: ChowExpr) -> ChowExpr {
        for ((m, l), c) in o.terms {
            self.add_term(m, l, c);
        }
        self
    }
}

impl Neg for ChowExpr {
    type Output = ChowExpr;
    fn neg(mut self) -> ChowExpr {
        for v in self.terms.values_mut() {
            *v = -*v;
        }
        self
    }
}

impl Sub for ChowExpr {
    type Output = ChowExpr;
    fn sub(self, o: ChowExpr) -> ChowExpr {
        self + (-o)
    }
}

impl Mul for &ChowExpr {
    type Output = ChowExpr;
    fn mul(self, o: &ChowExpr) -> ChowExpr {
        let mut out = ChowExpr::zero();
        for (&(m1, l1), &c1) in &self.terms {
            for (&(m2, l2), &c2) in &o.terms {
                out.add_term(m1 + m2, l1 + l2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for ChowExpr {
    type Output = ChowExpr;
    fn mul(self, o: ChowExpr) -> ChowExpr {
        &self * &o
    }
}

impl fmt::Display for ChowExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (i, &&(m, l)) in keys.iter().enumerate() {
            let c = self.terms[&(m, l)];
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            let mut mono = String::new();
            for (sym, e) in [("M", m), ("L", l)] {
                match e {
                    0 => {}
                    1 => mono.push_str(sym),
                    _ => mono.push_str(&format!("{sym}^{e}")),
                }
            }
            if c.abs() != 1 || mono.is_empty() {
                write!(f, "{}", c.abs())?;
            }
            f.write_str(&mono)?;
        }
        Ok(())
    }
}

/// Grammar: integers, `M`, `L`, `+`, `-`, `*`, `^`, parentheses; juxtaposition
/// multiplies (`3M^2L`, `(M-L)(M^3-5M^2L)`).
impl FromStr for ChowExpr {
    type Err = ChowError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<char> =
            s.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
        let mut p = Parser { toks, pos: 0, input: s };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.fail("unexpected trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    toks: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl Parser<'_> {
    fn fail(&self, reason: &str) -> ChowError {
        ChowError::Parse { input: self.input.to_string(), reason: format!("{reason} at position {}", self.pos) }
    }

    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ChowExpr, ChowError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ChowExpr, ChowError> {
        let mut sign = 1;
        while let Some(c @ ('+' | '-')) = self.peek() {
            if c == '-' {
                sign = -sign;
            }
            self.pos += 1;
        }
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(c) if c.is_ascii_digit() || c == 'M' || c == 'L' || c == '(' => {
                    acc = acc * self.factor()?;
                }
                _ => break,
            }
        }
        Ok(if sign < 0 { -acc } else { acc })
    }

    fn factor(&mut self) -> Result<ChowExpr, ChowError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| self.fail("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, ChowError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.fail("expected an integer"));
        }
        let digits: String = self.toks[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.fail("integer out of range"))
    }

    fn atom(&mut self) -> Result<ChowExpr, ChowError> {
        match self.peek() {
            Some('M') => {
                self.pos += 1;
                Ok(ChowExpr::m())
            }
            Some('L') => {
                self.pos += 1;
                Ok(ChowExpr::l())
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.fail("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(ChowExpr::constant(self.integer()?)),
            Some(_) => Err(self.fail("unexpected character")),
            None => Err(self.fail("unexpected end of input")),
        }
    }
}

/// Result of [`reduce`]: a number for top-degree classes, otherwise the
/// normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    Number(i64),
    Class(ChowExpr),
}

impl fmt::Display for Reduced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reduced::Number(v) => write!(f, "{v}"),
            Reduced::Class(e) => write!(f, "{e}"),
        }
    }
}

/// Normal form: every term `M^i L^j` with `i <= n`, `j <= k`.
pub fn normal_form(scroll: &StandardScroll, expr: &ChowExpr) -> Result<ChowExpr, ChowError> {
    let dim = scroll.dim();
    if let Some(deg) = expr.max_degree() {
        if deg as usize > dim {
            return Err(ChowError::DegreeOverflow { degree: deg, dim });
        }
    }
    let n = scroll.fibre_dim() as u32;
    let k = scroll.base_dim as u32;
    // M^{n+1} = M^{n+1} - ∏(M - a_i L)
    let rel =
        scroll.twists.iter().fold(ChowExpr::constant(1), |acc, &a| acc * ChowExpr::from_class(DivClass::new(1, -a)));
    let tail = ChowExpr::monomial(1, n + 1, 0) - rel;
    let mut cur = expr.clone();
    while let Some((&(m, l), &c)) = cur.terms.iter().rev().find(|((m, _), _)| *m > n) {
        cur.add_term(m, l, -c);
        let shift = ChowExpr::monomial(c, m - n - 1, l);
        cur = cur + &shift * &tail;
    }
    cur.terms.retain(|&(_, l), _| l <= k);
    Ok(cur)
}

pub fn reduce(scroll: &StandardScroll, expr: &ChowExpr) -> Result<Reduced, ChowError> {
    let dim = scroll.dim() as u32;
    let nf = normal_form(scroll, expr)?;
    if !expr.is_zero() && expr.is_homogeneous_of(dim) {
        let n = scroll.fibre_dim() as u32;
        return Ok(Reduced::Number(nf.coeff(n, scroll.base_dim as u32)));
    }
    Ok(Reduced::Class(nf))
}

/// Degree of a top-dimensional class.
pub fn degree(scroll: &StandardScroll, expr: &ChowExpr) -> Result<i64, ChowError> {
    match reduce(scroll, expr)? {
        Reduced::Number(v) => Ok(v),
        Reduced::Class(e) if e.is_zero() && expr.is_zero() => Ok(0),
        Reduced::Class(_) => Err(ChowError::WrongCodimension { expected: scroll.dim() as u32, expr: expr.to_string() }),
    }
}

/// `-K_F`: the sum of all column classes.
pub fn ambient_anticanonical(scroll: &StandardScroll) -> DivClass {
    scroll.to_matrix().columns().iter().fold(DivClass::ZERO, |acc, &c| acc + c)
}

/// `-K_X = M + (2 - d - n)L` by adjunction.
pub fn anticanonical_on_x(fam: &FamilyParams) -> DivClass {
    DivClass::new(1, 2 - fam.d() - fam.n)
}

/// `-K_X · Γ = 2 - d - n`.
pub fn mk_dot_gamma(fam: &FamilyParams) -> i64 {
    2 - fam.d() - fam.n
}

/// `X · Γ = n`.
pub fn x_dot_gamma(fam: &FamilyParams) -> i64 {
    fam.n
}

/// A 1-cycle `γ·Γ + μ·M²L` on a 4-fold scroll over `P¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CycleClass {
    pub gamma: i64,
    pub m2l: i64,
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}Γ {} {}M²L", self.gamma, if self.m2l < 0 { '-' } else { '+' }, self.m2l.abs())
    }
}

/// `Γ = (y = z = t = 0)`, i.e. `(M - aL)(M - bL)(M - cL)`.
pub fn gamma_class(fam: &FamilyParams) -> ChowExpr {
    [fam.a, fam.b, fam.c].iter().fold(ChowExpr::constant(1), |acc, &a| acc * ChowExpr::from_class(DivClass::new(1, -a)))
}

/// Writes a codimension-3 class on `F(0,a,b,c)` in the basis `Γ, M²L`.
pub fn cycle_class(fam: &FamilyParams, expr: &ChowExpr) -> Result<CycleClass, ChowError> {
    if !expr.is_homogeneous_of(3) {
        return Err(ChowError::WrongCodimension { expected: 3, expr: expr.to_string() });
    }
    let nf = normal_form(&fam.scroll(), expr)?;
    let gamma = nf.coeff(3, 0);
    Ok(CycleClass { gamma, m2l: nf.coeff(2, 1) + fam.d() * gamma })
}

/// `K_X²` pushed into `F`, computed by reduction in the Chow ring.
pub fn k_squared_by_reduction(fam: &FamilyParams) -> Result<CycleClass, ChowError> {
    let mk = ChowExpr::from_class(anticanonical_on_x(fam));
    let x = ChowExpr::from_class(fam.class());
    cycle_class(fam, &(&mk * &mk * x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct K2Report {
    pub cycle: CycleClass,
    /// `3d + 5n < 12`, i.e. the `M²L` coefficient is positive.
    pub interior: bool,
    /// For `n >= 0` only the necessary direction of the interior criterion is proven.
    pub iff_proven: bool,
}

/// `K_X² = 3Γ + (12 - 3d - 5n)M²L`.
pub fn kx_squared(fam: &FamilyParams) -> K2Report {
    let m2l = 12 - 3 * fam.d() - 5 * fam.n;
    K2Report { cycle: CycleClass { gamma: 3, m2l }, interior: m2l > 0, iff_proven: fam.n < 0 }
}
