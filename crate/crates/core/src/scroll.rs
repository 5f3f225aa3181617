//! Rank-two toric scrolls given by a 2×N character matrix.
//!
//! Every column is stored as a divisor class `mM + lL`. The walk order on
//! rays is clockwise: `L` comes first, then `M`, then `M - L`, `M - 2L`, ...
//! (slope `l/m` strictly decreasing).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScrollError {
    #[error("weight matrix needs at least 4 columns, got {0}")]
    TooFewColumns(usize),
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("weight matrix has rank < 2")]
    RankDeficient,
    #[error("column rays do not fit in a strictly convex cone")]
    NotPointed,
    #[error("{names} names for {columns} columns")]
    NameCount { names: usize, columns: usize },
    #[error("malformed weight matrix rows: {0}")]
    MalformedRows(String),
    #[error("basis change has determinant {0}, expected +1 or -1")]
    NotUnimodular(i64),
    #[error("class {0} would be placed before the first ray of the scroll")]
    BadExtension(DivClass),
    #[error("degenerate scroll: the useful cone contains fewer than 2 distinct rays")]
    Degenerate,
    #[error("section enumeration for {0} exceeds the search budget")]
    TooManySections(DivClass),
    #[error("cannot parse divisor class {0:?}")]
    ParseClass(String),
}

/// A divisor class `mM + lL`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivClass {
    pub m: i64,
    pub l: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl DivClass {
    pub const ZERO: DivClass = DivClass { m: 0, l: 0 };
    pub const M: DivClass = DivClass { m: 1, l: 0 };
    pub const L: DivClass = DivClass { m: 0, l: 1 };

    pub const fn new(m: i64, l: i64) -> Self {
        DivClass { m, l }
    }

    pub fn is_zero(self) -> bool {
        self.m == 0 && self.l == 0
    }

    /// `m₁l₂ - l₁m₂`; negative when `other` is clockwise of `self`.
    pub fn cross(self, other: DivClass) -> i64 {
        self.m * other.l - self.l * other.m
    }

    pub fn dot(self, other: DivClass) -> i64 {
        self.m * other.m + self.l * other.l
    }

    /// Primitive vector on the same ray. The zero class is returned unchanged.
    pub fn primitive(self) -> DivClass {
        let g = gcd(self.m, self.l);
        if g == 0 {
            self
        } else {
            DivClass::new(self.m / g, self.l / g)
        }
    }

    pub fn same_ray(self, other: DivClass) -> bool {
        !self.is_zero() && !other.is_zero() && self.cross(other) == 0 && self.dot(other) > 0
    }
}

impl Add for DivClass {
    type Output = DivClass;
    fn add(self, o: DivClass) -> DivClass {
        DivClass::new(self.m + o.m, self.l + o.l)
    }
}

impl Sub for DivClass {
    type Output = DivClass;
    fn sub(self, o: DivClass) -> DivClass {
        DivClass::new(self.m - o.m, self.l - o.l)
    }
}

impl Neg for DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        DivClass::new(-self.m, -self.l)
    }
}

impl Mul<DivClass> for i64 {
    type Output = DivClass;
    fn mul(self, c: DivClass) -> DivClass {
        DivClass::new(self * c.m, self * c.l)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, coeff: i64, sym: &str) -> fmt::Result {
    let mag = coeff.abs();
    if first {
        if coeff < 0 {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if coeff < 0 { " - " } else { " + " })?;
    }
    if mag != 1 {
        write!(f, "{mag}")?;
    }
    f.write_str(sym)
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        if self.m != 0 {
            write_term(f, first, self.m, "M")?;
            first = false;
        }
        if self.l != 0 {
            write_term(f, first, self.l, "L")?;
        }
        Ok(())
    }
}

/// Accepts `3M-2L`, `M + L`, `-L`, `0`, or the pair form `3:-2`.
impl FromStr for DivClass {
    type Err = ScrollError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScrollError::ParseClass(s.to_string());
        let compact: String =
            s.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
        if compact.is_empty() {
            return Err(err());
        }
        if let Some((m, l)) = compact.split_once(':') {
            let m = m.parse().map_err(|_| err())?;
            let l = l.parse().map_err(|_| err())?;
            return Ok(DivClass::new(m, l));
        }
        if compact == "0" {
            return Ok(DivClass::ZERO);
        }
        let mut out = DivClass::ZERO;
        let mut seen_m = false;
        let mut seen_l = false;
        let bytes = compact.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(err());
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if i == start { 1 } else { compact[start..i].parse().map_err(|_| err())? };
            match bytes.get(i) {
                Some(b'M') if !seen_m => {
                    out.m = sign * coeff;
                    seen_m = true;
                }
                Some(b'L') if !seen_l => {
                    out.l = sign * coeff;
                    seen_l = true;
                }
                _ => return Err(err()),
            }
            i += 1;
        }
        Ok(out)
    }
}

/// Walk order of two rays inside a strictly convex cone: `a` comes before
/// `b` when `b` is clockwise of `a`.
pub fn walk_cmp(a: DivClass, b: DivClass) -> Ordering {
    a.cross(b).cmp(&0)
}

/// Exponent vector over the columns of a weight matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `x^2z`-style rendering using the given coordinate names; `1` for the
    /// empty product.
    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        for (e, name) in self.0.iter().zip(names) {
            match e {
                0 => {}
                1 => out.push_str(name),
                _ => out.push_str(&format!("{name}^{e}")),
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

/// Canonical section order: ascending total degree, then graded reverse
/// lexicographic (at the last differing exponent, the smaller one first).
pub fn section_order(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        for (x, y) in a.0.iter().zip(&b.0).rev() {
            if x != y {
                return x.cmp(y);
            }
        }
        Ordering::Equal
    })
}

/// 2×N character matrix with named coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix {
    columns: Vec<DivClass>,
    names: Vec<String>,
}

const SECTION_NODE_BUDGET: u64 = 20_000_000;

impl WeightMatrix {
    pub fn new(columns: Vec<DivClass>, names: Vec<String>) -> Result<Self, ScrollError> {
        if names.len() != columns.len() {
            return Err(ScrollError::NameCount { names: names.len(), columns: columns.len() });
        }
        if columns.len() < 4 {
            return Err(ScrollError::TooFewColumns(columns.len()));
        }
        if let Some(i) = columns.iter().position(|c| c.is_zero()) {
            return Err(ScrollError::ZeroColumn(i));
        }
        if columns.iter().all(|c| c.cross(columns[0]) == 0) {
            return Err(ScrollError::RankDeficient);
        }
        let mat = WeightMatrix { columns, names };
        mat.first_ray_checked()?;
        Ok(mat)
    }

    /// Builds a matrix from rows in display order (`M`-row first).
    pub fn from_rows(rows: &[Vec<i64>], names: Vec<String>) -> Result<Self, ScrollError> {
        if rows.len() != 2 || rows[0].len() != rows[1].len() {
            return Err(ScrollError::MalformedRows(format!("{rows:?}")));
        }
        let columns = rows[0].iter().zip(&rows[1]).map(|(&m, &l)| DivClass::new(m, l)).collect();
        WeightMatrix::new(columns, names)
    }

    /// Like [`WeightMatrix::from_rows`] with default names `c0, c1, ...`.
    pub fn from_rows_unnamed(rows: &[Vec<i64>]) -> Result<Self, ScrollError> {
        let n = rows.first().map_or(0, |r| r.len());
        WeightMatrix::from_rows(rows, (0..n).map(|i| format!("c{i}")).collect())
    }

    pub fn columns(&self) -> &[DivClass] {
        &self.columns
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Rows in display order: the `M` coefficients, then the `L` coefficients.
    pub fn rows(&self) -> [Vec<i64>; 2] {
        [self.columns.iter().map(|c| c.m).collect(), self.columns.iter().map(|c| c.l).collect()]
    }

    /// Rows in the standard-scroll layout: `L` coefficients first.
    pub fn rows_lm(&self) -> [Vec<i64>; 2] {
        let [m, l] = self.rows();
        [l, m]
    }

    fn first_ray_checked(&self) -> Result<DivClass, ScrollError> {
        'candidates: for &p in &self.columns {
            for &q in &self.columns {
                let c = p.cross(q);
                if c > 0 || (c == 0 && p.dot(q) < 0) {
                    continue 'candidates;
                }
            }
            return Ok(p.primitive());
        }
        Err(ScrollError::NotPointed)
    }

    /// The ray every walk starts from.
    pub fn first_ray(&self) -> DivClass {
        self.first_ray_checked().expect("validated on construction")
    }

    /// Column indices in walk order (stable for equal rays).
    pub fn walk_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.columns.len()).collect();
        idx.sort_by(|&i, &j| walk_cmp(self.columns[i], self.columns[j]));
        idx
    }

    /// Distinct primitive rays in walk order.
    pub fn distinct_rays(&self) -> Vec<DivClass> {
        let mut rays: Vec<DivClass> = Vec::new();
        for i in self.walk_order() {
            let r = self.columns[i].primitive();
            if rays.last() != Some(&r) {
                rays.push(r);
            }
        }
        rays
    }

    pub fn last_ray(&self) -> DivClass {
        *self.distinct_rays().last().expect("nonempty")
    }

    /// Far edge of the useful cone: the ray of the second-to-last column in
    /// walk order, counting duplicate rays with multiplicity.
    pub fn mobile_edge(&self) -> DivClass {
        let order = self.walk_order();
        self.columns[order[order.len() - 2]].primitive()
    }

    /// Chambers of the useful cone, from the first ray up to the mobile edge.
    pub fn chambers(&self) -> Result<ChamberWalk, ScrollError> {
        let edge = self.mobile_edge();
        let rays: Vec<DivClass> =
            self.distinct_rays().into_iter().filter(|&r| walk_cmp(r, edge) != Ordering::Greater).collect();
        if rays.len() < 2 {
            return Err(ScrollError::Degenerate);
        }
        let chambers = rays
            .windows(2)
            .map(|w| {
                let (lo, hi) = (w[0], w[1]);
                let left_block =
                    (0..self.len()).filter(|&i| walk_cmp(self.columns[i], lo) != Ordering::Greater).collect();
                let right_block =
                    (0..self.len()).filter(|&i| walk_cmp(self.columns[i], hi) != Ordering::Less).collect();
                Chamber { lo, hi, left_block, right_block }
            })
            .collect();
        Ok(ChamberWalk { chambers, terminal: edge })
    }

    /// Integer functional strictly positive on every nonzero vector of the
    /// column cone.
    fn positive_functional(&self) -> impl Fn(DivClass) -> i64 {
        let first = self.first_ray();
        let last = self.last_ray();
        move |v: DivClass| -first.cross(v) - v.cross(last)
    }

    /// All monomials of class `cls`, in [`section_order`].
    pub fn sections(&self, cls: DivClass) -> Result<Vec<Monomial>, ScrollError> {
        let phi = self.positive_functional();
        let n = self.len();
        let weights: Vec<i64> = self.columns.iter().map(|&c| phi(c)).collect();
        // suffix cones: (first, last) rays of columns i..n in walk order
        let mut suffix: Vec<(DivClass, DivClass)> = vec![(DivClass::ZERO, DivClass::ZERO); n + 1];
        for i in (0..n).rev() {
            let c = self.columns[i];
            suffix[i] = if i == n - 1 {
                (c, c)
            } else {
                let (f, l) = suffix[i + 1];
                let f = if walk_cmp(c, f) == Ordering::Less { c } else { f };
                let l = if walk_cmp(c, l) == Ordering::Greater { c } else { l };
                (f, l)
            };
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        let mut budget = SECTION_NODE_BUDGET;
        let in_cone = |rem: DivClass, i: usize| -> bool {
            if rem.is_zero() {
                return true;
            }
            if i == n {
                return false;
            }
            let (f, l) = suffix[i];
            f.cross(rem) <= 0 && rem.cross(l) <= 0 && phi(rem) > 0
        };
        #[allow(clippy::too_many_arguments)]
        fn rec(
            i: usize,
            rem: DivClass,
            cols: &[DivClass],
            weights: &[i64],
            exps: &mut Vec<u32>,
            out: &mut Vec<Monomial>,
            budget: &mut u64,
            in_cone: &dyn Fn(DivClass, usize) -> bool,
            phi: &dyn Fn(DivClass) -> i64,
        ) -> bool {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            if rem.is_zero() {
                out.push(Monomial(exps.clone()));
                return true;
            }
            if i == cols.len() || !in_cone(rem, i) {
                return true;
            }
            let max = phi(rem) / weights[i];
            for e in 0..=max {
                let next = rem - e * cols[i];
                exps[i] = e as u32;
                if !rec(i + 1, next, cols, weights, exps, out, budget, in_cone, phi) {
                    exps[i] = 0;
                    return false;
                }
            }
            exps[i] = 0;
            true
        }
        if !rec(0, cls, &self.columns, &weights, &mut exps, &mut out, &mut budget, &in_cone, &phi) {
            return Err(ScrollError::TooManySections(cls));
        }
        out.sort_by(section_order);
        Ok(out)
    }

    pub fn render_monomial(&self, mono: &Monomial) -> String {
        mono.render(&self.names)
    }

    /// Applies a unimodular change of basis to every column.
    pub fn row_operate(&self, t: BasisChange) -> WeightMatrix {
        let columns = self.columns.iter().map(|&c| t.apply(c)).collect();
        WeightMatrix::new(columns, self.names.clone()).expect("unimodular image of a valid matrix")
    }

    /// Adds a coordinate of class `cls`, inserted after the last column whose
    /// ray does not come after it in walk order.
    pub fn extend(&self, cls: DivClass, name: &str) -> Result<WeightMatrix, ScrollError> {
        if cls.is_zero() {
            return Err(ScrollError::BadExtension(cls));
        }
        let first = self.first_ray();
        if walk_cmp(cls, first) == Ordering::Less || (cls.cross(first) == 0 && !cls.same_ray(first)) {
            return Err(ScrollError::BadExtension(cls));
        }
        let pos = self.columns.iter().rposition(|&c| walk_cmp(c, cls) != Ordering::Greater).map_or(0, |i| i + 1);
        let mut columns = self.columns.clone();
        let mut names = self.names.clone();
        columns.insert(pos, cls);
        names.insert(pos, name.to_string());
        WeightMatrix::new(columns, names).map_err(|_| ScrollError::BadExtension(cls))
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [m, l] = self.rows();
        let width = self
            .names
            .iter()
            .map(|s| s.chars().count())
            .chain(m.iter().chain(&l).map(|v| v.to_string().len()))
            .max()
            .unwrap_or(1);
        write!(f, "   ")?;
        for name in &self.names {
            write!(f, " {name:>width$}")?;
        }
        writeln!(f)?;
        for (label, row) in [("M", &m), ("L", &l)] {
            write!(f, "  {label}")?;
            for v in row {
                write!(f, " {v:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WeightMatrixRepr {
    rows: Vec<Vec<i64>>,
    names: Vec<String>,
}

impl Serialize for WeightMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let [m, l] = self.rows();
        WeightMatrixRepr { rows: vec![m, l], names: self.names.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = WeightMatrixRepr::deserialize(d)?;
        WeightMatrix::from_rows(&repr.rows, repr.names).map_err(serde::de::Error::custom)
    }
}

/// A 2×2 integer matrix acting on `(m, l)` column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BasisChange([[i64; 2]; 2]);

impl BasisChange {
    pub const IDENTITY: BasisChange = BasisChange([[1, 0], [0, 1]]);

    pub fn new(t: [[i64; 2]; 2]) -> Result<Self, ScrollError> {
        let det = t[0][0] * t[1][1] - t[0][1] * t[1][0];
        if det.abs() != 1 {
            return Err(ScrollError::NotUnimodular(det));
        }
        Ok(BasisChange(t))
    }

    /// Basis change induced by new one-parameter subgroups. `lambda` and `mu`
    /// give the exponents `(p, q)` with `λ' ↦ (λ^p, μ^q)`, and likewise for `μ'`.
    pub fn from_subgroups(lambda: (i64, i64), mu: (i64, i64)) -> Result<Self, ScrollError> {
        BasisChange::new([[mu.1, mu.0], [lambda.1, lambda.0]])
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.0
    }

    pub fn det(&self) -> i64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn apply(&self, c: DivClass) -> DivClass {
        let t = self.0;
        DivClass::new(t[0][0] * c.m + t[0][1] * c.l, t[1][0] * c.m + t[1][1] * c.l)
    }

    pub fn inverse(&self) -> BasisChange {
        let [[a, b], [c, d]] = self.0;
        let det = self.det();
        BasisChange([[d * det, -b * det], [-c * det, a * det]])
    }

    pub fn compose(&self, then: BasisChange) -> BasisChange {
        let (a, b) = (then.0, self.0);
        let mut out = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        BasisChange(out)
    }
}

/// `F(a_0, ..., a_n)` over `P^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardScroll {
    pub base_dim: usize,
    pub twists: Vec<i64>,
}

impl StandardScroll {
    pub fn new(base_dim: usize, twists: Vec<i64>) -> Result<Self, ScrollError> {
        let cols = base_dim + 1 + twists.len();
        if base_dim == 0 || twists.is_empty() || cols < 4 {
            return Err(ScrollError::TooFewColumns(cols));
        }
        Ok(StandardScroll { base_dim, twists })
    }

    /// Fibre dimension `n` (the twists are `a_0..a_n`).
    pub fn fibre_dim(&self) -> usize {
        self.twists.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.base_dim + self.fibre_dim()
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        let k = self.base_dim;
        let base: Vec<String> =
            if k == 1 { vec!["u".into(), "v".into()] } else { (0..=k).map(|i| format!("u{i}")).collect() };
        let fibre: Vec<String> = if self.twists.len() == 4 {
            ["x", "y", "z", "t"].iter().map(|s| s.to_string()).collect()
        } else {
            (0..self.twists.len()).map(|i| format!("x{i}")).collect()
        };
        base.into_iter().chain(fibre).collect()
    }

    pub fn to_matrix(&self) -> WeightMatrix {
        let columns = std::iter::repeat_n(DivClass::L, self.base_dim + 1)
            .chain(self.twists.iter().map(|&a| DivClass::new(1, -a)))
            .collect();
        WeightMatrix::new(columns, self.coordinate_names()).expect("standard scrolls are valid")
    }

    /// `h⁰(F, mM + lL)`: sum over fibre multidegrees of the dimension of the
    /// coefficient space on `P^k`.
    pub fn section_count(&self, cls: DivClass) -> u64 {
        if cls.m < 0 {
            return 0;
        }
        let k = self.base_dim as i64;
        let mut total = 0u64;
        for_each_composition(cls.m as u32, self.twists.len(), &mut |e| {
            let shift: i64 = e.iter().zip(&self.twists).map(|(&x, &a)| x as i64 * a).sum();
            let deg = cls.l + shift;
            if deg >= 0 {
                total += binomial((deg + k) as u64, k as u64);
            }
        });
        total
    }
}

impl fmt::Display for StandardScroll {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tw: Vec<String> = self.twists.iter().map(|a| a.to_string()).collect();
        write!(f, "F({}) over P^{}", tw.join(","), self.base_dim)
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Calls `f` on every vector of `parts` nonnegative integers summing to `total`.
pub(crate) fn for_each_composition(total: u32, parts: usize, f: &mut dyn FnMut(&[u32])) {
    fn go(i: usize, left: u32, buf: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if i + 1 == buf.len() {
            buf[i] = left;
            f(buf);
            return;
        }
        for e in (0..=left).rev() {
            buf[i] = e;
            go(i + 1, left - e, buf, f);
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = vec![0; parts];
    go(0, total, &mut buf, f);
}

/// One chamber of the useful cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chamber {
    pub lo: DivClass,
    pub hi: DivClass,
    /// Columns whose ray is on or before `lo`.
    pub left_block: Vec<usize>,
    /// Columns whose ray is on or after `hi`.
    pub right_block: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberWalk {
    pub chambers: Vec<Chamber>,
    /// Far edge of the useful cone, where the game ends in a morphism.
    pub terminal: DivClass,
}

impl ChamberWalk {
    /// Walls strictly inside the useful cone.
    pub fn interior_walls(&self) -> Vec<DivClass> {
        self.chambers.iter().skip(1).map(|c| c.lo).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(twists: &[i64]) -> WeightMatrix {
        StandardScroll::new(1, twists.to_vec()).unwrap().to_matrix()
    }

    fn dc(s: &str) -> DivClass {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_classes() {
        for (s, m, l) in
            [("3M-2L", 3, -2), ("M", 1, 0), ("-L", 0, -1), ("0", 0, 0), ("5M − 6L", 5, -6), ("2:-3", 2, -3)]
        {
            assert_eq!(dc(s), DivClass::new(m, l), "{s}");
        }
        assert_eq!(DivClass::new(3, -2).to_string(), "3M - 2L");
        assert_eq!(DivClass::new(0, -1).to_string(), "-L");
        assert_eq!(DivClass::new(-2, 1).to_string(), "-2M + L");
        assert!("M+M".parse::<DivClass>().is_err());
        assert!("3X".parse::<DivClass>().is_err());
    }

    #[test]
    fn standard_matrix_layouts() {
        let mat = f(&[0, 1, 2, 2]);
        assert_eq!(mat.rows_lm(), [vec![1, 1, 0, -1, -2, -2], vec![0, 0, 1, 1, 1, 1]]);
        assert_eq!(mat.rows(), [vec![0, 0, 1, 1, 1, 1], vec![1, 1, 0, -1, -2, -2]]);
        let p2 = StandardScroll::new(2, vec![1, 1, 0]).unwrap().to_matrix();
        assert_eq!(p2.rows_lm(), [vec![1, 1, 1, -1, -1, 0], vec![0, 0, 0, 1, 1, 1]]);
        assert!(StandardScroll::new(1, vec![0]).is_err());
    }

    #[test]
    fn invalid_matrices() {
        let names = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        let c = DivClass::new;
        assert_eq!(WeightMatrix::new(vec![c(0, 1); 3], names(3)), Err(ScrollError::TooFewColumns(3)));
        assert_eq!(
            WeightMatrix::new(vec![c(0, 1), c(1, 0), c(0, 0), c(1, 1)], names(4)),
            Err(ScrollError::ZeroColumn(2))
        );
        assert_eq!(
            WeightMatrix::new(vec![c(1, 1), c(2, 2), c(1, 1), c(3, 3)], names(4)),
            Err(ScrollError::RankDeficient)
        );
        assert_eq!(
            WeightMatrix::new(vec![c(0, 1), c(1, 0), c(0, -1), c(1, 1)], names(4)),
            Err(ScrollError::NotPointed)
        );
        assert_eq!(
            WeightMatrix::new(vec![c(0, 1), c(1, 0), c(-1, 0), c(1, 1)], names(4)),
            Err(ScrollError::NotPointed)
        );
    }

    #[test]
    fn sections_of_m() {
        let mat = f(&[0, 1, 2, 2]);
        let secs: Vec<String> = mat.sections(DivClass::M).unwrap().iter().map(|m| mat.render_monomial(m)).collect();
        assert_eq!(secs, ["x", "uy", "vy", "u^2z", "uvz", "v^2z", "u^2t", "uvt", "v^2t"]);
        assert_eq!(mat.sections(DivClass::ZERO).unwrap(), vec![Monomial(vec![0; 6])]);
        assert_eq!(mat.sections(dc("3M-2L")).unwrap().len(), 56);
        assert!(mat.sections(dc("-M")).unwrap().is_empty());
        assert!(mat.sections(dc("M+L")).unwrap().iter().all(|m| m.degree() >= 2));
    }

    #[test]
    fn section_count_closed_form() {
        let s = StandardScroll::new(1, vec![0, 1, 2, 2]).unwrap();
        assert_eq!(s.section_count(DivClass::M), 9);
        assert_eq!(s.section_count(dc("3M-2L")), 56);
        assert_eq!(s.section_count(DivClass::ZERO), 1);
    }

    #[test]
    fn chamber_walks() {
        let walk = f(&[0, 1, 2, 2]).chambers().unwrap();
        let pairs: Vec<(DivClass, DivClass)> = walk.chambers.iter().map(|c| (c.lo, c.hi)).collect();
        assert_eq!(pairs, [(dc("L"), dc("M")), (dc("M"), dc("M-L")), (dc("M-L"), dc("M-2L"))]);
        assert_eq!(walk.terminal, dc("M-2L"));
        assert_eq!(walk.interior_walls(), [dc("M"), dc("M-L")]);
        assert_eq!(walk.chambers[1].left_block, [0, 1, 2]);
        assert_eq!(walk.chambers[1].right_block, [3, 4, 5]);

        let p2 = StandardScroll::new(2, vec![1, 1, 0]).unwrap().to_matrix().chambers().unwrap();
        assert_eq!(p2.chambers.len(), 2);
        assert_eq!(p2.terminal, dc("M-L"));

        let prod = f(&[0, 0, 0, 0]).chambers().unwrap();
        assert_eq!(prod.chambers.len(), 1);
        assert!(prod.interior_walls().is_empty());
        assert_eq!(prod.terminal, DivClass::M);
    }

    #[test]
    fn degenerate_walk() {
        let names = (0..4).map(|i| i.to_string()).collect();
        let mat = WeightMatrix::new(vec![DivClass::L, DivClass::L, DivClass::L, DivClass::M], names).unwrap();
        assert_eq!(mat.chambers(), Err(ScrollError::Degenerate));
    }

    #[test]
    fn row_operations() {
        let mat = f(&[0, 1, 2, 2]);
        let t = BasisChange::new([[-1, -1], [2, 1]]).unwrap();
        assert_eq!(mat.row_operate(t).rows(), [vec![-1, -1, -1, 0, 1, 1], vec![1, 1, 2, 1, 0, 0]]);
        assert_eq!(mat.row_operate(BasisChange::IDENTITY), mat);
        assert_eq!(BasisChange::new([[2, 0], [0, 1]]), Err(ScrollError::NotUnimodular(2)));
        assert_eq!(t.compose(t.inverse()), BasisChange::IDENTITY);
    }

    #[test]
    fn subgroup_change_maps_conic_bundle_class() {
        let t = BasisChange::from_subgroups((-1, 0), (1, 1)).unwrap();
        assert_eq!(t.apply(dc("2M+L")), dc("3M-L"));
        let conic = StandardScroll::new(2, vec![1, 1, 0]).unwrap().to_matrix().row_operate(t);
        let mut cols = conic.columns().to_vec();
        cols.sort();
        let mut dp3 = f(&[0, 1, 1, 1]).columns().to_vec();
        dp3.sort();
        assert_eq!(cols, dp3);
    }

    #[test]
    fn extensions() {
        let base = f(&[0, 1, 1, 2]);
        let ext = base.extend(dc("3M-3L"), "ξ").unwrap().extend(dc("5M-6L"), "η").unwrap();
        assert_eq!(ext.rows(), [vec![0, 0, 1, 1, 1, 3, 5, 1], vec![1, 1, 0, -1, -1, -3, -6, -2]]);
        assert_eq!(ext.names(), ["u", "v", "x", "y", "z", "ξ", "η", "t"]);
        assert_eq!(ext.mobile_edge(), dc("5M-6L"));
        let b = base.extend(dc("3M-4L"), "η").unwrap();
        assert_eq!(b.rows(), [vec![0, 0, 1, 1, 1, 3, 1], vec![1, 1, 0, -1, -1, -4, -2]]);
        assert_eq!(b.mobile_edge(), dc("3M-4L"));
        assert_eq!(base.extend(DivClass::M, "w").unwrap().len(), 7);
        assert!(base.extend(dc("-M+L"), "w").is_err());
        assert!(base.extend(dc("-M-L"), "w").is_err());
    }

    #[test]
    fn json_round_trip() {
        let mat = f(&[0, 1, 2, 2]);
        let s = serde_json::to_string(&mat).unwrap();
        assert_eq!(s, r#"{"rows":[[0,0,1,1,1,1],[1,1,0,-1,-2,-2]],"names":["u","v","x","y","z","t"]}"#);
        let back: WeightMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, mat);
    }
}
