//! Double covers of plane curves as symmetric determinantal formats.
//!
//! A plane curve `C` of degree `d` with a line bundle `λ`, `λ² = O_C(-e)`
//! (`e ∈ {0, 1}`, `deg λ = -ed/2`), gives a graded module over
//! `S = k[u₀, u₁, u₂]` with Hilbert function `h⁰(C, λ(n))`. A symmetric
//! resolution `0 → ⊕S(-l_i) → ⊕S(-r_i) → M → 0` has `r_i + l_i = d + e`;
//! the entry of `A` in position `(i, j)` has degree `(d_i + d_j)/2` with
//! `d_i = l_i - r_i`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetError {
    #[error("degree must be positive, got {0}")]
    BadDegree(i64),
    #[error("e must be 0 or 1, got {0}")]
    BadE(i64),
    #[error("e·d must be even (deg λ = -ed/2), got e = {e}, d = {d}")]
    OddDegree { d: i64, e: i64 },
    #[error("override h0(λ({n})) = {value} is out of range [{lo}, {hi}]")]
    OverrideRange { n: i64, value: i64, lo: i64, hi: i64 },
    #[error("override h0(λ({n})) = {value} contradicts the forced value {forced}")]
    OverrideConflict { n: i64, value: i64, forced: i64 },
    #[error("no symmetric determinantal format realises these values: {0}")]
    NotRealisable(String),
    #[error("partition {parts:?} is not a partition of {d} into parts of parity {parity}")]
    BadPartition { d: i64, parts: Vec<i64>, parity: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSpec {
    pub d: i64,
    pub e: i64,
    /// Prescribed `h⁰(λ(n))` where Riemann-Roch leaves a choice.
    #[serde(default, rename = "p")]
    pub overrides: BTreeMap<i64, i64>,
}

impl CoverSpec {
    pub fn new(d: i64, e: i64, overrides: BTreeMap<i64, i64>) -> Result<Self, DetError> {
        if d <= 0 {
            return Err(DetError::BadDegree(d));
        }
        if e != 0 && e != 1 {
            return Err(DetError::BadE(e));
        }
        if e * d % 2 != 0 {
            return Err(DetError::OddDegree { d, e });
        }
        Ok(CoverSpec { d, e, overrides })
    }

    pub fn genus(&self) -> i64 {
        (self.d - 1) * (self.d - 2) / 2
    }

    /// `deg λ(n) = dn - ed/2`.
    pub fn line_degree(&self, n: i64) -> i64 {
        self.d * n - self.e * self.d / 2
    }

    /// `χ(λ(n)) = deg + 1 - g`.
    pub fn chi(&self, n: i64) -> i64 {
        self.line_degree(n) + 1 - self.genus()
    }

    /// `m` with `h¹(λ(n)) = h⁰(λ(m))`.
    pub fn dual_index(&self, n: i64) -> i64 {
        self.d - 3 + self.e - n
    }

    /// Indices `n <= dual(n)` where both `λ(n)` and its dual have degree >= 0.
    pub fn free_indices(&self) -> Vec<i64> {
        (0..)
            .take_while(|&n| n <= self.dual_index(n))
            .filter(|&n| self.line_degree(n) >= 0 && self.line_degree(self.dual_index(n)) >= 0)
            .collect()
    }

    /// Clifford-type bound on `h⁰` of a degree `D` special line bundle.
    fn upper_bound(&self, n: i64) -> i64 {
        self.line_degree(n) / 2 + 1
    }
}

/// `h⁰(λ(n))` once the free indices are fixed.
fn h0_with(spec: &CoverSpec, fixed: &BTreeMap<i64, i64>, n: i64) -> i64 {
    let m = spec.dual_index(n);
    if spec.line_degree(n) < 0 {
        0
    } else if spec.line_degree(m) < 0 {
        spec.chi(n)
    } else if let Some(&v) = fixed.get(&n) {
        v
    } else {
        spec.chi(n) + fixed.get(&m).copied().unwrap_or(0)
    }
}

/// Normalises the overrides onto the free indices; `None` entries are unset.
fn normalised_overrides(spec: &CoverSpec) -> Result<BTreeMap<i64, Option<i64>>, DetError> {
    let free = spec.free_indices();
    let mut out: BTreeMap<i64, Option<i64>> = free.iter().map(|&n| (n, None)).collect();
    for (&n, &value) in &spec.overrides {
        let m = spec.dual_index(n);
        let (idx, lower_value) = if out.contains_key(&n) {
            (n, value)
        } else if out.contains_key(&m) {
            (m, value - spec.chi(n))
        } else {
            let forced = h0_with(spec, &BTreeMap::new(), n);
            if forced != value {
                return Err(DetError::OverrideConflict { n, value, forced });
            }
            continue;
        };
        let lo = 0.max(spec.chi(idx));
        let hi = spec.upper_bound(idx);
        if lower_value < lo || lower_value > hi {
            let shift = value - lower_value;
            return Err(DetError::OverrideRange { n, value, lo: lo + shift, hi: hi + shift });
        }
        if let Some(prev) = out[&idx] {
            if prev != lower_value {
                return Err(DetError::OverrideConflict {
                    n,
                    value,
                    forced: if idx == n { prev } else { prev + spec.chi(n) },
                });
            }
        }
        out.insert(idx, Some(lower_value));
    }
    Ok(out)
}

fn series_with(spec: &CoverSpec, fixed: &BTreeMap<i64, i64>, n_max: i64) -> Vec<i64> {
    (0..=n_max).map(|n| h0_with(spec, fixed, n)).collect()
}

/// Fills unset free indices with the smallest values (lexicographically)
/// that admit a symmetric determinantal format.
fn complete(spec: &CoverSpec) -> Result<(BTreeMap<i64, i64>, DetFormat), DetError> {
    let slots = normalised_overrides(spec)?;
    let keys: Vec<i64> = slots.keys().copied().collect();
    let horizon = spec.d + 6;
    fn search(
        spec: &CoverSpec,
        keys: &[i64],
        slots: &BTreeMap<i64, Option<i64>>,
        i: usize,
        fixed: &mut BTreeMap<i64, i64>,
        horizon: i64,
    ) -> Option<DetFormat> {
        if i == keys.len() {
            let series = series_with(spec, fixed, horizon);
            return derive_format_from_series(spec.d, spec.e, &series).ok();
        }
        let n = keys[i];
        let values: Vec<i64> = match slots[&n] {
            Some(v) => vec![v],
            None => (0.max(spec.chi(n))..=spec.upper_bound(n)).collect(),
        };
        for v in values {
            fixed.insert(n, v);
            if let Some(f) = search(spec, keys, slots, i + 1, fixed, horizon) {
                return Some(f);
            }
        }
        fixed.remove(&n);
        None
    }
    let mut fixed = BTreeMap::new();
    match search(spec, &keys, &slots, 0, &mut fixed, horizon) {
        Some(f) => Ok((fixed, f)),
        None => Err(DetError::NotRealisable(format!("d = {}, e = {}, overrides {:?}", spec.d, spec.e, spec.overrides))),
    }
}

/// `h⁰(C, λ(n))` for `n = 0..=n_max`.
pub fn rr_table(spec: &CoverSpec, n_max: i64) -> Result<Vec<i64>, DetError> {
    let (fixed, _) = complete(spec)?;
    Ok(series_with(spec, &fixed, n_max))
}

/// `h⁰(C, λ(n))` for any integer `n`.
pub fn h0(spec: &CoverSpec, n: i64) -> Result<i64, DetError> {
    let (fixed, _) = complete(spec)?;
    Ok(h0_with(spec, &fixed, n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetFormat {
    pub d: i64,
    pub e: i64,
    /// Diagonal degrees `d_i`.
    pub diagonal: Vec<i64>,
    /// Generator degrees `r_i = (d + e - d_i)/2`.
    pub generators: Vec<i64>,
    /// Relation degrees `l_i = (d + e + d_i)/2`.
    pub relations: Vec<i64>,
    /// Entry degrees `(d_i + d_j)/2`.
    pub entries: Vec<Vec<i64>>,
}

impl DetFormat {
    pub fn size(&self) -> usize {
        self.diagonal.len()
    }
}

/// Format with the given diagonal degrees, in the given order.
pub fn format_from_partition(d: i64, e: i64, parts: &[i64]) -> Result<DetFormat, DetError> {
    if e != 0 && e != 1 {
        return Err(DetError::BadE(e));
    }
    let parity = (d + e).rem_euclid(2);
    if parts.iter().sum::<i64>() != d || parts.iter().any(|&p| p <= 0 || (p - parity).rem_euclid(2) != 0) {
        return Err(DetError::BadPartition { d, parts: parts.to_vec(), parity });
    }
    Ok(DetFormat {
        d,
        e,
        diagonal: parts.to_vec(),
        generators: parts.iter().map(|p| (d + e - p) / 2).collect(),
        relations: parts.iter().map(|p| (d + e + p) / 2).collect(),
        entries: parts.iter().map(|&p| parts.iter().map(|&q| (p + q) / 2).collect()).collect(),
    })
}

/// `dim S_k` for the polynomial ring in three variables.
pub fn dim_s(k: i64) -> i64 {
    if k < 0 {
        0
    } else {
        (k + 1) * (k + 2) / 2
    }
}

/// Coefficients of `(Σ t^{r_i} - Σ t^{l_i}) / (1 - t)³` up to `t^{n_max}`.
pub fn hilbert_series(fmt: &DetFormat, n_max: i64) -> Vec<i64> {
    (0..=n_max)
        .map(|n| {
            fmt.generators.iter().map(|&r| dim_s(n - r)).sum::<i64>()
                - fmt.relations.iter().map(|&l| dim_s(n - l)).sum::<i64>()
        })
        .collect()
}

/// Reads generator and relation degrees off a Hilbert function, assuming
/// every multiplication map has maximal rank. Diagonal degrees are returned
/// in decreasing order.
pub fn derive_format_from_series(d: i64, e: i64, series: &[i64]) -> Result<DetFormat, DetError> {
    let mut gens: Vec<i64> = Vec::new();
    let mut rels: Vec<i64> = Vec::new();
    for (n, &h) in series.iter().enumerate() {
        let n = n as i64;
        let span: i64 =
            gens.iter().map(|&r| dim_s(n - r)).sum::<i64>() - rels.iter().map(|&l| dim_s(n - l)).sum::<i64>();
        match (h - span).signum() {
            1 => gens.extend(std::iter::repeat_n(n, (h - span) as usize)),
            -1 => rels.extend(std::iter::repeat_n(n, (span - h) as usize)),
            _ => {}
        }
    }
    let mut dual: Vec<i64> = gens.iter().map(|r| d + e - r).collect();
    dual.sort();
    let mut sorted_rels = rels.clone();
    sorted_rels.sort();
    if dual != sorted_rels {
        return Err(DetError::NotRealisable(format!("generators {gens:?} and relations {rels:?} are not dual")));
    }
    let parts: Vec<i64> = gens.iter().map(|r| d + e - 2 * r).collect();
    if parts.iter().any(|&p| p <= 0) || parts.iter().sum::<i64>() != d {
        return Err(DetError::NotRealisable(format!("diagonal degrees {parts:?}")));
    }
    format_from_partition(d, e, &parts)
}

/// Format of the Serre module of `spec`, filling unset free values with the
/// smallest realisable choice.
pub fn derive_format(spec: &CoverSpec) -> Result<DetFormat, DetError> {
    Ok(complete(spec)?.1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliCount {
    pub params: i64,
    pub gauge: i64,
    pub family_dim: i64,
    pub all_curves_dim: i64,
}

/// Naive dimension count for curves `det A = 0` with `A` of the given format.
pub fn moduli_count(fmt: &DetFormat) -> ModuliCount {
    let k = fmt.size();
    let mut params = 0;
    for i in 0..k {
        for j in i..k {
            params += dim_s(fmt.entries[i][j]);
        }
    }
    let gauge = fmt.generators.iter().flat_map(|&ri| fmt.generators.iter().map(move |&rj| dim_s(ri - rj))).sum();
    ModuliCount { params, gauge, family_dim: params - gauge, all_curves_dim: dim_s(fmt.d) - 1 }
}
