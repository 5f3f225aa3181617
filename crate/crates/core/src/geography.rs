//! Families `X ∈ |3M + nL|` in `F(0,a,b,c)` over `P¹`: admissibility, the
//! `(n, d)` plane and its renderings.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::links;
use crate::scroll::{DivClass, StandardScroll};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeographyError {
    #[error("twists must satisfy 0 <= a <= b <= c, got ({a},{b},{c})")]
    Unordered { a: i64, b: i64, c: i64 },
    #[error("family {0} is not admissible: {1}")]
    NotAdmissible(FamilyParams, Violation),
    #[error("unknown output format {0:?} (expected tsv, svg or json)")]
    UnknownFormat(String),
    #[error("empty window: n in [{0}, {1}], d <= {2}")]
    EmptyWindow(i64, i64, i64),
}

/// `(n; a, b, c)`: the family `|3M + nL|` on `F(0,a,b,c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyParams {
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl FamilyParams {
    pub fn new(n: i64, a: i64, b: i64, c: i64) -> Result<Self, GeographyError> {
        if !(0 <= a && a <= b && b <= c) {
            return Err(GeographyError::Unordered { a, b, c });
        }
        Ok(FamilyParams { n, a, b, c })
    }

    pub fn d(&self) -> i64 {
        self.a + self.b + self.c
    }

    pub fn twists(&self) -> [i64; 4] {
        [0, self.a, self.b, self.c]
    }

    pub fn scroll(&self) -> StandardScroll {
        StandardScroll::new(1, self.twists().to_vec()).expect("four twists over P^1")
    }

    /// The class `3M + nL` of `X`.
    pub fn class(&self) -> DivClass {
        DivClass::new(3, self.n)
    }

    /// `abc` as printed next to a point of the geography, e.g. `122`.
    pub fn digits(&self) -> String {
        format!("{}{}{}", self.a, self.b, self.c)
    }

    pub fn require_admissible(&self) -> Result<(), GeographyError> {
        match admissible(self).violation {
            None => Ok(()),
            Some(v) => Err(GeographyError::NotAdmissible(*self, v)),
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {},{},{})", self.n, self.a, self.b, self.c)
    }
}

/// Why a family fails to give a quasismooth fibration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Violation {
    /// `(n, d) = (0, 0)`: the product family on `P¹ × P³`.
    Trivial,
    /// `n < -3a`: every member contains the surface `z = t = 0`.
    BaseSurface,
    /// `a = b`, `n = -3a < 0`: every member contains a surface `t = l(y,z) = 0`.
    SpecialSurface,
    /// `n < 0` and `n < -c`: every member is singular along `Γ`.
    SingularAlongGamma,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Violation::Trivial => "(n,d) = (0,0) is the trivial family on P^1 x P^3",
            Violation::BaseSurface => "n < -3a, every member contains the surface z = t = 0",
            Violation::SpecialSurface => "a = b and n = -3a, every member contains a surface t = l(y,z) = 0",
            Violation::SingularAlongGamma => "n < -c, every member is singular along Gamma",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub violation: Option<Violation>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.violation.is_none()
    }
}

pub fn admissible(fam: &FamilyParams) -> Admissibility {
    let FamilyParams { n, a, b, c } = *fam;
    let violation = if n == 0 && fam.d() == 0 {
        Some(Violation::Trivial)
    } else if n < -3 * a {
        Some(Violation::BaseSurface)
    } else if a == b && n == -3 * a && n < 0 {
        Some(Violation::SpecialSurface)
    } else if n < 0 && n < -c {
        Some(Violation::SingularAlongGamma)
    } else {
        None
    };
    Admissibility { violation }
}

/// Position of `-K` relative to the cone `<L, D_z>`, `D_z ∈ |M - bL|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaPosition {
    Interior,
    Boundary,
    Outside,
}

impl SigmaPosition {
    pub fn as_str(&self) -> &'static str {
        match self {
            SigmaPosition::Interior => "interior",
            SigmaPosition::Boundary => "boundary",
            SigmaPosition::Outside => "outside",
        }
    }
}

/// Sign of `2 - a - c - n`.
pub fn sigma_position(fam: &FamilyParams) -> SigmaPosition {
    match (2 - fam.a - fam.c - fam.n).signum() {
        1 => SigmaPosition::Interior,
        0 => SigmaPosition::Boundary,
        _ => SigmaPosition::Outside,
    }
}

/// `3d + 5n < 12`.
pub fn pukhlikov_strict(n: i64, d: i64) -> bool {
    3 * d + 5 * n < 12
}

/// Families where every member has a K-trivial bad link, labelled `(abc)`.
pub const FIGURE_BAD_LINKS: [FamilyKey; 17] = [
    (-1, 1, 2, 2),
    (-2, 2, 2, 2),
    (-2, 1, 3, 3),
    (-3, 2, 2, 3),
    (-3, 2, 3, 3),
    (-3, 1, 4, 4),
    (-4, 2, 2, 4),
    (-4, 2, 3, 4),
    (-4, 2, 4, 4),
    (-5, 2, 2, 5),
    (-5, 2, 3, 5),
    (-5, 2, 4, 5),
    (-5, 2, 5, 5),
    (-6, 2, 3, 6),
    (-6, 2, 4, 6),
    (-6, 2, 5, 6),
    (-6, 2, 6, 6),
];

/// `(n, a, b, c)`.
pub type FamilyKey = (i64, i64, i64, i64);

/// Classically known nonrigid families outside the curated link table.
pub const KNOWN_NONRIGID: [(FamilyKey, &str); 2] = [((1, 0, 0, 0), "known:P3"), ((0, 0, 0, 1), "known:cubic3fold")];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Marker {
    Dot,
    Bullet,
    Circle,
}

impl Marker {
    pub fn as_str(&self) -> &'static str {
        match self {
            Marker::Dot => "dot",
            Marker::Bullet => "bullet",
            Marker::Circle => "circle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyEntry {
    #[serde(flatten)]
    pub family: FamilyParams,
    pub d: i64,
    pub label: Option<String>,
    pub sigma_position: SigmaPosition,
    pub nonrigid_source: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeographyPoint {
    pub n: i64,
    pub d: i64,
    pub marker: Marker,
    pub pukhlikov_strict: bool,
    pub families: Vec<FamilyEntry>,
}

fn key(fam: &FamilyParams) -> (i64, i64, i64, i64) {
    (fam.n, fam.a, fam.b, fam.c)
}

/// Where the family's nonrigidity comes from, if it is known to be nonrigid.
pub fn nonrigid_source(fam: &FamilyParams) -> Option<String> {
    let ids: Vec<&str> = links::table2().iter().filter(|row| row.family() == *fam).map(|row| row.id).collect();
    if !ids.is_empty() {
        return Some(format!("table2:{}", ids.join(",")));
    }
    KNOWN_NONRIGID.iter().find(|(k, _)| *k == key(fam)).map(|(_, s)| s.to_string())
}

/// `abc` for general members of a curated link, `[abc]` for special members,
/// `(abc)` for the annotated bad links.
pub fn label(fam: &FamilyParams) -> Option<String> {
    let rows: Vec<_> = links::table2().iter().filter(|row| row.family() == *fam).collect();
    if !rows.is_empty() {
        let digits = fam.digits();
        return Some(if rows.iter().all(|r| r.general) { digits } else { format!("[{digits}]") });
    }
    FIGURE_BAD_LINKS.contains(&key(fam)).then(|| format!("({})", fam.digits()))
}

/// Marker of a point: bullet if some family is known nonrigid, circle if
/// some family with `b > 0` has `-K` on the boundary of `σ`, dot otherwise.
pub fn point_marker(entries: &[FamilyEntry]) -> Marker {
    if entries.iter().any(|e| e.nonrigid_source.is_some()) {
        Marker::Bullet
    } else if entries.iter().any(|e| e.sigma_position == SigmaPosition::Boundary && e.family.b > 0) {
        Marker::Circle
    } else {
        Marker::Dot
    }
}

/// All admissible families with `n` in range and `d <= d_max`, grouped by
/// `(n, d)`; points ordered by `n` then `d`, families by `(a, b, c)`.
pub fn enumerate(n_range: RangeInclusive<i64>, d_max: i64) -> Vec<GeographyPoint> {
    let mut points = Vec::new();
    for n in n_range {
        for d in 0..=d_max {
            let mut entries = Vec::new();
            for a in 0..=d / 3 {
                for b in a..=(d - a) / 2 {
                    let c = d - a - b;
                    let fam = FamilyParams { n, a, b, c };
                    if !admissible(&fam).is_admissible() {
                        continue;
                    }
                    entries.push(FamilyEntry {
                        family: fam,
                        d,
                        label: label(&fam),
                        sigma_position: sigma_position(&fam),
                        nonrigid_source: nonrigid_source(&fam),
                    });
                }
            }
            if !entries.is_empty() {
                points.push(GeographyPoint {
                    n,
                    d,
                    marker: point_marker(&entries),
                    pukhlikov_strict: pukhlikov_strict(n, d),
                    families: entries,
                });
            }
        }
    }
    points
}

/// The standard plotting window: n in -6..=2, d up to 14.
pub fn default_window() -> (RangeInclusive<i64>, i64) {
    (-6..=2, 14)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Svg,
    Json,
}

impl FromStr for Format {
    type Err = GeographyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "svg" => Ok(Format::Svg),
            "json" => Ok(Format::Json),
            _ => Err(GeographyError::UnknownFormat(s.to_string())),
        }
    }
}

pub const TSV_HEADER: &str = "n\td\ta\tb\tc\tmarker\tlabel\tsigma_position\tk2_strict\tnonrigid_source";

pub fn render(points: &[GeographyPoint], format: Format) -> String {
    match format {
        Format::Tsv => render_tsv(points),
        Format::Json => render_json(points),
        Format::Svg => render_svg(points),
    }
}

fn render_tsv(points: &[GeographyPoint]) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for p in points {
        for e in &p.families {
            let f = e.family;
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                p.n,
                p.d,
                f.a,
                f.b,
                f.c,
                p.marker.as_str(),
                e.label.as_deref().unwrap_or("-"),
                e.sigma_position.as_str(),
                p.pukhlikov_strict,
                e.nonrigid_source.as_deref().unwrap_or("-"),
            ));
        }
    }
    out
}

fn render_json(points: &[GeographyPoint]) -> String {
    let doc = serde_json::json!({ "points": points });
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

const UNIT: i64 = 30;
const MARGIN: i64 = 60;

fn render_svg(points: &[GeographyPoint]) -> String {
    let n_min = points.iter().map(|p| p.n).min().unwrap_or(0);
    let n_max = points.iter().map(|p| p.n).max().unwrap_or(0);
    let d_max = points.iter().map(|p| p.d).max().unwrap_or(0);
    let px = |x30: i64| MARGIN + x30 - UNIT * n_min;
    let py = |y30: i64| MARGIN + UNIT * d_max - y30;
    let width = 2 * MARGIN + UNIT * (n_max - n_min);
    let height = 2 * MARGIN + UNIT * d_max;
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    s.push_str("<g stroke=\"black\" stroke-width=\"1\">\n");
    s.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
        px(UNIT * n_min),
        py(0),
        px(UNIT * n_max),
        py(0)
    ));
    if n_min <= 0 && 0 <= n_max {
        s.push_str(&format!("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n", px(0), py(0), py(UNIT * d_max)));
    }
    s.push_str("</g>\n");
    // 3d + 5n = 12 in units of 1/30: 3Y + 5X = 360
    let x_start = (UNIT * n_min).max(72 - 18 * d_max);
    let x_end = (UNIT * n_max).min(72);
    if x_start < x_end {
        let y = |x: i64| (360 - 5 * x) / 3;
        s.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n",
            px(x_start),
            py(y(x_start)),
            px(x_end),
            py(y(x_end))
        ));
    }
    s.push_str("<g font-family=\"serif\" font-size=\"10\">\n");
    for n in n_min..=n_max {
        s.push_str(&format!("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{n}</text>\n", px(UNIT * n), py(0) + 16));
    }
    for d in (0..=d_max).step_by(2) {
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{d}</text>\n",
            px(UNIT * n_min) - 8,
            py(UNIT * d) + 4
        ));
    }
    s.push_str(&format!("<text x=\"{}\" y=\"{}\">n</text>\n", px(UNIT * n_max) + 10, py(0) + 4));
    s.push_str(&format!("<text x=\"{}\" y=\"{}\">d</text>\n", px(UNIT * n_min) - 30, py(UNIT * d_max) + 4));
    s.push_str("</g>\n");
    for p in points {
        let (x, y) = (px(UNIT * p.n), py(UNIT * p.d));
        s.push_str(&match p.marker {
            Marker::Dot => format!("<circle cx=\"{x}\" cy=\"{y}\" r=\"2\" fill=\"black\"/>\n"),
            Marker::Bullet => format!("<circle cx=\"{x}\" cy=\"{y}\" r=\"5\" fill=\"black\"/>\n"),
            Marker::Circle => {
                format!("<circle cx=\"{x}\" cy=\"{y}\" r=\"5\" fill=\"white\" stroke=\"black\"/>\n")
            }
        });
        let labels: Vec<&str> = p.families.iter().filter_map(|e| e.label.as_deref()).collect();
        if !labels.is_empty() {
            s.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" font-family=\"serif\" font-size=\"9\">{}</text>\n",
                x + 7,
                y - 5,
                labels.join(" ")
            ));
        }
    }
    s.push_str("</svg>\n");
    s
}
