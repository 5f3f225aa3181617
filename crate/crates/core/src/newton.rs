//! Newton tables of the cubic form `F = Σ α(u,v) x^i y^j z^k t^l` defining
//! `X ∈ |3M + nL|`. The coefficient of `x^α y^β z^γ t^δ` has degree
//! `n + aβ + bγ + cδ` in `u, v`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geography::{admissible, FamilyParams, GeographyError};
use crate::scroll::DivClass;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NewtonError {
    #[error("Newton table is empty")]
    EmptyTable,
    #[error("every monomial is forced to vanish")]
    AllVanish,
    #[error("cannot parse fibre monomial {0:?}")]
    ParseMonomial(String),
    #[error("{0} is not a cubic monomial")]
    NotCubic(FibreMonomial),
    #[error("twists after substitution {0:?} are not of the form (0, a, b, c) with a <= b <= c")]
    NotNormalised([i64; 4]),
    #[error("coefficient of {monomial} would carry u^{power} after cancelling")]
    NegativePower { monomial: FibreMonomial, power: i64 },
    #[error(transparent)]
    Family(#[from] GeographyError),
}

/// Exponents of `x, y, z, t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FibreMonomial(pub [u32; 4]);

const VARS: [char; 4] = ['x', 'y', 'z', 't'];

impl FibreMonomial {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `w · e`.
    pub fn weigh(&self, w: [i64; 4]) -> i64 {
        self.0.iter().zip(w).map(|(&e, w)| e as i64 * w).sum()
    }

    /// Degree of its coefficient in `|3M + nL|` on `F(0,a,b,c)`.
    pub fn coefficient_degree(&self, fam: &FamilyParams) -> i64 {
        fam.n + self.weigh(fam.twists())
    }

    /// All 20 cubic monomials.
    pub fn cubics() -> Vec<FibreMonomial> {
        let mut out = Vec::new();
        for x in 0..=3 {
            for y in 0..=3 - x {
                for z in 0..=3 - x - y {
                    out.push(FibreMonomial([x, y, z, 3 - x - y - z]));
                }
            }
        }
        out
    }
}

impl fmt::Display for FibreMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.total() == 0 {
            return f.write_str("1");
        }
        for (v, &e) in VARS.iter().zip(&self.0) {
            match e {
                0 => {}
                1 => write!(f, "{v}")?,
                _ => write!(f, "{v}^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for FibreMonomial {
    type Err = NewtonError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || NewtonError::ParseMonomial(s.to_string());
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        let mut exps = [0u32; 4];
        let mut i = 0;
        while i < chars.len() {
            let v = VARS.iter().position(|&v| v == chars[i]).ok_or_else(err)?;
            i += 1;
            let mut e = 1;
            if chars.get(i) == Some(&'^') {
                i += 1;
                let start = i;
                while chars.get(i).is_some_and(|c| c.is_ascii_digit()) {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                e = digits.parse().map_err(|_| err())?;
            }
            exps[v] += e;
        }
        if chars.is_empty() {
            return Err(err());
        }
        Ok(FibreMonomial(exps))
    }
}

impl Serialize for FibreMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FibreMonomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Table order: by coefficient degree, then `x` ascending, `y` descending,
/// `z` descending.
pub fn table_order(a: &(FibreMonomial, i64), b: &(FibreMonomial, i64)) -> Ordering {
    let [ax, ay, az, _] = a.0 .0;
    let [bx, by, bz, _] = b.0 .0;
    a.1.cmp(&b.1).then(ax.cmp(&bx)).then(by.cmp(&ay)).then(bz.cmp(&az))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonRow {
    pub monomial: FibreMonomial,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonTable {
    pub family: FamilyParams,
    pub rows: Vec<NewtonRow>,
}

impl NewtonTable {
    /// Rows grouped by coefficient degree.
    pub fn by_degree(&self) -> BTreeMap<i64, Vec<FibreMonomial>> {
        let mut out: BTreeMap<i64, Vec<FibreMonomial>> = BTreeMap::new();
        for r in &self.rows {
            out.entry(r.degree).or_default().push(r.monomial);
        }
        out
    }

    pub fn degree_of(&self, m: &FibreMonomial) -> Option<i64> {
        self.rows.iter().find(|r| r.monomial == *m).map(|r| r.degree)
    }
}

/// Fibre monomials whose coefficient has nonnegative degree.
pub fn newton_table(fam: &FamilyParams) -> NewtonTable {
    let mut rows: Vec<(FibreMonomial, i64)> =
        FibreMonomial::cubics().into_iter().map(|m| (m, m.coefficient_degree(fam))).filter(|&(_, d)| d >= 0).collect();
    rows.sort_by(table_order);
    NewtonTable {
        family: *fam,
        rows: rows.into_iter().map(|(monomial, degree)| NewtonRow { monomial, degree }).collect(),
    }
}

/// Power of `u` known to divide each coefficient. A power above the
/// coefficient degree forces the coefficient to vanish.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisibilityProfile(pub BTreeMap<FibreMonomial, i64>);

impl DivisibilityProfile {
    pub fn power(&self, m: &FibreMonomial) -> i64 {
        self.0.get(m).copied().unwrap_or(0)
    }

    pub fn set(&mut self, m: FibreMonomial, power: i64) {
        self.0.insert(m, power);
    }

    pub fn is_present(&self, row: &NewtonRow) -> bool {
        self.power(&row.monomial) <= row.degree
    }
}

fn present<'a>(table: &'a NewtonTable, profile: &'a DivisibilityProfile) -> Result<Vec<&'a NewtonRow>, NewtonError> {
    if table.rows.is_empty() {
        return Err(NewtonError::EmptyTable);
    }
    let rows: Vec<&NewtonRow> = table.rows.iter().filter(|r| profile.is_present(r)).collect();
    if rows.is_empty() {
        return Err(NewtonError::AllVanish);
    }
    Ok(rows)
}

/// `val(F)`: least coefficient degree among monomials that are present.
pub fn val(table: &NewtonTable, profile: &DivisibilityProfile) -> Result<i64, NewtonError> {
    Ok(present(table, profile)?.iter().map(|r| r.degree).min().expect("nonempty"))
}

/// Least power of `u` dividing a present coefficient.
pub fn u_order(table: &NewtonTable, profile: &DivisibilityProfile) -> Result<i64, NewtonError> {
    Ok(present(table, profile)?.iter().map(|r| profile.power(&r.monomial).max(0)).min().expect("nonempty"))
}

/// Monomial certificates for the conditions defining admissibility.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseLocusReport {
    pub family: FamilyParams,
    /// Every monomial is divisible by `z` or `t`: the surface `z = t = 0` lies in `X`.
    pub surface_in_base_locus: bool,
    /// `a = b`, and the `t`-free part of `F` is a constant binary cubic in `y, z`.
    pub special_surface: bool,
    /// `x³` is present, so `Γ ⊄ X`.
    pub x3_present: bool,
    /// Present monomials among `x²y, x²z, x²t`.
    pub x2_linear: Vec<FibreMonomial>,
    /// `Γ ⊂ X` and `X` is smooth generically along it.
    pub gamma_multiplicity_one: bool,
    /// All certificates combined.
    pub admissible: bool,
}

pub fn base_locus_certificates(fam: &FamilyParams) -> BaseLocusReport {
    let table = newton_table(fam);
    let has = |m: [u32; 4]| table.degree_of(&FibreMonomial(m)).is_some();
    let surface_in_base_locus = table.rows.iter().all(|r| r.monomial.0[2] + r.monomial.0[3] > 0);
    let t_free: Vec<&NewtonRow> = table.rows.iter().filter(|r| r.monomial.0[3] == 0).collect();
    let special_surface = fam.a == fam.b
        && fam.n < 0
        && !t_free.is_empty()
        && t_free.iter().all(|r| r.monomial.0[0] == 0 && r.degree == 0);
    let x3_present = has([3, 0, 0, 0]);
    let x2_linear: Vec<FibreMonomial> =
        [[2, 1, 0, 0], [2, 0, 1, 0], [2, 0, 0, 1]].into_iter().filter(|&m| has(m)).map(FibreMonomial).collect();
    let trivial = fam.n == 0 && fam.d() == 0;
    let admissible = !trivial && !surface_in_base_locus && !special_surface && (x3_present || !x2_linear.is_empty());
    BaseLocusReport {
        family: *fam,
        surface_in_base_locus,
        special_surface,
        x3_present,
        gamma_multiplicity_one: !x3_present && !x2_linear.is_empty(),
        x2_linear,
        admissible,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransformedRow {
    pub monomial: FibreMonomial,
    pub old_degree: i64,
    pub new_degree: i64,
    pub old_power: i64,
    pub new_power: i64,
    /// Total class of the transformed term, `3M' + n'L'` when consistent.
    pub class: DivClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub from: FamilyParams,
    pub to: FamilyParams,
    pub weights: [i64; 4],
    pub cancel_power: i64,
    pub rows: Vec<TransformedRow>,
    pub profile: DivisibilityProfile,
    pub to_admissible: bool,
}

/// Substitutes `x_i ↦ u^{w_i} x_i` and divides by `u^s`. The twists become
/// `a_i + w_i - min_j(a_j + w_j)` and `n' = n + 3·min - s`.
pub fn weighted_substitution(
    fam: &FamilyParams,
    profile: &DivisibilityProfile,
    weights: [i64; 4],
    cancel_power: i64,
) -> Result<Substitution, NewtonError> {
    let tw = fam.twists();
    let shifted: [i64; 4] = std::array::from_fn(|i| tw[i] + weights[i]);
    let low = *shifted.iter().min().expect("four entries");
    let new_tw = shifted.map(|v| v - low);
    if new_tw[0] != 0 || !(new_tw[1] <= new_tw[2] && new_tw[2] <= new_tw[3]) || weights.iter().any(|&w| w < 0) {
        return Err(NewtonError::NotNormalised(new_tw));
    }
    let to = FamilyParams::new(fam.n + 3 * low - cancel_power, new_tw[1], new_tw[2], new_tw[3])?;
    let table = newton_table(fam);
    let mut rows = Vec::new();
    let mut new_profile = DivisibilityProfile::default();
    for r in table.rows.iter().filter(|r| profile.is_present(r)) {
        let shift = r.monomial.weigh(weights) - cancel_power;
        let old_power = profile.power(&r.monomial).max(0);
        let new_power = old_power + shift;
        if new_power < 0 {
            return Err(NewtonError::NegativePower { monomial: r.monomial, power: new_power });
        }
        let new_degree = r.degree + shift;
        let class = DivClass::new(3, new_degree - r.monomial.weigh(to.twists()));
        new_profile.set(r.monomial, new_power);
        rows.push(TransformedRow {
            monomial: r.monomial,
            old_degree: r.degree,
            new_degree,
            old_power,
            new_power,
            class,
        });
    }
    for r in newton_table(&to).rows {
        if !new_profile.0.contains_key(&r.monomial) {
            new_profile.set(r.monomial, r.degree + 1);
        }
    }
    new_profile.0.retain(|m, p| *p != 0 || m.coefficient_degree(&to) < 0);
    Ok(Substitution {
        from: *fam,
        to,
        weights,
        cancel_power,
        rows,
        profile: new_profile,
        to_admissible: admissible(&to).is_admissible(),
    })
}
