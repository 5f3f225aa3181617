//! 2-ray games on (extended) scrolls and the curated table of nonrigid
//! families with their Sarkisov links.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::chow::{anticanonical_on_x, mk_dot_gamma};
use crate::geography::{FamilyParams, GeographyError};
use crate::scroll::{walk_cmp, BasisChange, DivClass, ScrollError, WeightMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error(transparent)]
    Scroll(#[from] ScrollError),
    #[error(transparent)]
    Family(#[from] GeographyError),
    #[error("no curated row with id {0:?}")]
    UnknownRow(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Antiflip,
    Flop,
    Flip,
}

impl StepKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StepKind::Antiflip => "antiflip",
            StepKind::Flop => "flop",
            StepKind::Flip => "flip",
        }
    }

    fn from_pairing(k: i64) -> StepKind {
        match k.cmp(&0) {
            Ordering::Less => StepKind::Antiflip,
            Ordering::Equal => StepKind::Flop,
            Ordering::Greater => StepKind::Flip,
        }
    }
}

/// Crossing of one interior wall of the useful cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkStep {
    pub wall: DivClass,
    pub kind: StepKind,
    /// `wall × (-K)`; on the first wall `M` this is `-K·Γ`.
    pub k_pairing: i64,
    /// Weights of the `C*` fixing the wall, one per coordinate.
    pub weights: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalKind {
    Fibration,
    Divisorial,
}

/// A weighted scroll over a new base, with the class of the new model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationModel {
    pub matrix: WeightMatrix,
    pub class: DivClass,
    pub basis_change: BasisChange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TerminalWall {
    pub ray: DivClass,
    /// Coordinates whose class lies on the ray.
    pub on_ray: Vec<String>,
    /// Coordinates beyond the ray.
    pub beyond: Vec<String>,
    /// `h⁰` of the first three multiples of the ray.
    pub sections: [usize; 3],
    /// Ambient heuristic: two or more coordinates on the ray suggest a fibration.
    pub heuristic: TerminalKind,
    pub model: Option<FibrationModel>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkTrace {
    pub family: FamilyParams,
    pub matrix: WeightMatrix,
    pub anticanonical: DivClass,
    pub k_dot_gamma: i64,
    pub steps: Vec<LinkStep>,
    pub terminal: TerminalWall,
    /// Ids of the curated rows for this family.
    pub curated: Vec<&'static str>,
}

/// Builds `F(0,a,b,c)` and appends the extension coordinates in slope order.
pub fn extended_scroll(fam: &FamilyParams, extensions: &[(String, DivClass)]) -> Result<WeightMatrix, LinkError> {
    let mut mat = fam.scroll().to_matrix();
    for (name, cls) in extensions {
        mat = mat.extend(*cls, name)?;
    }
    Ok(mat)
}

/// Re-bases the scroll so that `ray` becomes the class of the new base,
/// when no coordinate lies beyond it.
pub fn fibration_model(mat: &WeightMatrix, ray: DivClass, class: DivClass) -> Option<FibrationModel> {
    let ray = ray.primitive();
    if mat.columns().iter().any(|&c| walk_cmp(c, ray) == Ordering::Greater) {
        return None;
    }
    // first row kills the ray; sign chosen so the remaining columns become positive
    let (p, q) = (-ray.l, ray.m);
    let (r, s) = bezout(ray.m, ray.l)?;
    let mut t = BasisChange::new([[p, q], [r, s]]).ok()?;
    let image: Vec<DivClass> = mat.columns().iter().map(|&c| t.apply(c)).collect();
    let fibre: Vec<DivClass> = image.iter().copied().filter(|c| c.m != 0).collect();
    if fibre.iter().any(|c| c.m < 0) {
        t = BasisChange::new([[-p, -q], [r, s]]).ok()?;
    }
    let image: Vec<DivClass> = mat.columns().iter().map(|&c| t.apply(c)).collect();
    // shear l' -> l' + k m' so that the largest slope among fibre columns is in (-1, 0]
    let top = image.iter().filter(|c| c.m > 0).max_by(|a, b| (a.l * b.m).cmp(&(b.l * a.m)))?;
    let k = -ceil_div(top.l, top.m);
    let t = t.compose(BasisChange::new([[1, 0], [k, 1]]).ok()?);
    Some(FibrationModel { matrix: mat.row_operate(t), class: t.apply(class), basis_change: t })
}

fn ceil_div(a: i64, b: i64) -> i64 {
    let q = a.div_euclid(b);
    if q * b == a {
        q
    } else {
        q + 1
    }
}

/// `(r, s)` with `r·m + s·l = 1`.
fn bezout(m: i64, l: i64) -> Option<(i64, i64)> {
    let (mut old_r, mut r) = (m, l);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    match old_r {
        1 => Some((old_s, old_t)),
        -1 => Some((-old_s, -old_t)),
        _ => None,
    }
}

/// Walks the chambers of the (extended) scroll of `fam` and classifies every
/// wall by the position of `-K_X`.
pub fn trace(fam: &FamilyParams, extensions: &[(String, DivClass)]) -> Result<LinkTrace, LinkError> {
    fam.require_admissible()?;
    let mat = extended_scroll(fam, extensions)?;
    let walk = mat.chambers()?;
    let mk = anticanonical_on_x(fam);
    let steps = walk
        .interior_walls()
        .into_iter()
        .map(|wall| {
            let k_pairing = wall.cross(mk);
            LinkStep {
                wall,
                kind: StepKind::from_pairing(k_pairing),
                k_pairing,
                weights: mat.columns().iter().map(|&c| wall.cross(c)).collect(),
            }
        })
        .collect();
    let ray = walk.terminal;
    let names = |pred: &dyn Fn(Ordering) -> bool| -> Vec<String> {
        mat.columns().iter().zip(mat.names()).filter(|(&c, _)| pred(walk_cmp(c, ray))).map(|(_, n)| n.clone()).collect()
    };
    let on_ray = names(&|o| o == Ordering::Equal);
    let beyond = names(&|o| o == Ordering::Greater);
    let mut sections = [0usize; 3];
    for (i, s) in sections.iter_mut().enumerate() {
        *s = mat.sections((i as i64 + 1) * ray)?.len();
    }
    let heuristic = if on_ray.len() >= 2 { TerminalKind::Fibration } else { TerminalKind::Divisorial };
    let model = match heuristic {
        TerminalKind::Fibration => fibration_model(&mat, ray, fam.class()),
        TerminalKind::Divisorial => None,
    };
    Ok(LinkTrace {
        family: *fam,
        anticanonical: mk,
        k_dot_gamma: mk_dot_gamma(fam),
        steps,
        terminal: TerminalWall { ray, on_ray, beyond, sections, heuristic, model },
        curated: table2().iter().filter(|r| r.family() == *fam).map(|r| r.id).collect(),
        matrix: mat,
    })
}

/// Far edge of the mobile cone of the scroll.
pub fn mobile_edge(mat: &WeightMatrix) -> DivClass {
    mat.mobile_edge()
}

/// An unprojection variable of a declared class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Extension {
    pub name: &'static str,
    pub class: DivClass,
    /// The class is reconstructed from the degree of `-μK - L` rather than printed.
    pub reconstructed: bool,
}

/// A weighted scroll model `X' ∈ |class|` given by its rows (`M'` first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OtherModelScroll {
    pub rows: [&'static [i64]; 2],
    pub class: DivClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Table2Row {
    pub id: &'static str,
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub mu: i64,
    /// General member of the family, or a special quasismooth member.
    pub general: bool,
    pub extensions: &'static [Extension],
    pub link: &'static str,
    pub other_model: &'static str,
    pub other_model_uncertain: bool,
    pub other_model_scroll: Option<OtherModelScroll>,
    /// Local equation of the special member at its singular point.
    pub singularity: Option<&'static str>,
}

impl Table2Row {
    pub fn family(&self) -> FamilyParams {
        FamilyParams { n: self.n, a: self.a, b: self.b, c: self.c }
    }

    pub fn extension_list(&self) -> Vec<(String, DivClass)> {
        self.extensions.iter().map(|e| (e.name.to_string(), e.class)).collect()
    }

    pub fn scroll(&self) -> Result<WeightMatrix, LinkError> {
        extended_scroll(&self.family(), &self.extension_list())
    }

    /// First step of the link as written in the narrative.
    pub fn narrative_opening(&self) -> StepKind {
        let first = self.link.split([',', ' ']).find(|w| !w.is_empty()).unwrap_or("");
        if first.ends_with("flop") {
            StepKind::Flop
        } else {
            StepKind::Antiflip
        }
    }
}

const fn ext(name: &'static str, m: i64, l: i64, reconstructed: bool) -> Extension {
    Extension { name, class: DivClass::new(m, l), reconstructed }
}

static TABLE2: [Table2Row; 11] = [
    Table2Row {
        id: "1",
        n: 1,
        a: 0,
        b: 0,
        c: 1,
        mu: 3,
        general: true,
        extensions: &[ext("w", 3, -1, true)],
        link: "9-flop then (2,0) to ½(1,1,1) singularity",
        other_model: "Y'_{3,3} ⊂ P^5(1^5,2), general in its family",
        other_model_uncertain: false,
        other_model_scroll: None,
        singularity: None,
    },
    Table2Row {
        id: "2",
        n: 0,
        a: 0,
        b: 1,
        c: 1,
        mu: 1,
        general: true,
        extensions: &[],
        link: "3-flop",
        other_model: "dP3 fibration, same numerology as X",
        other_model_uncertain: false,
        other_model_scroll: None,
        singularity: None,
    },
    Table2Row {
        id: "3",
        n: -1,
        a: 1,
        b: 1,
        c: 1,
        mu: 1,
        general: true,
        extensions: &[],
        link: "flop",
        other_model: "conic bundle over P^2 with deg Δ = 7",
        other_model_uncertain: false,
        other_model_scroll: None,
        singularity: None,
    },
    Table2Row {
        id: "4",
        n: -2,
        a: 1,
        b: 1,
        c: 2,
        mu: 1,
        general: true,
        extensions: &[],
        link: "flop then (2,1) to linear P^1 ≅ ℓ ⊂ Y'",
        other_model: "Y'_4 ⊂ P^4(1^4,2)",
        other_model_uncertain: false,
        other_model_scroll: None,
        singularity: None,
    },
    Table2Row {
        id: "5",
        n: -2,
        a: 1,
        b: 2,
        c: 2,
        mu: 1,
        general: true,
        extensions: &[],
        link: "Francia antiflip then flop",
        other_model: "dP2 fibration with ½(1,1,1) on 1 fibre",
        other_model_uncertain: false,
        other_model_scroll: Some(OtherModelScroll {
            rows: [&[0, 0, 1, 2, 1, 1], &[1, 1, 0, -1, -1, -1]],
            class: DivClass::new(4, -1),
        }),
        singularity: None,
    },
    Table2Row {
        id: "6",
        n: -3,
        a: 1,
        b: 2,
        c: 3,
        mu: 1,
        general: true,
        extensions: &[],
        link: "Francia antiflip then (2,0) to P ∈ Y'",
        other_model: "Y'_6 ⊂ P^4(1^3,2,3), P a cD4 singularity",
        other_model_uncertain: false,
        other_model_scroll: None,
        singularity: None,
    },
    Table2Row {
        id: "7",
        n: -3,
        a: 1,
        b: 3,
        c: 3,
        mu: 1,
        general: true,
        extensions: &[],
        link: "toric antiflip (1,1,-1,-3)",
        other_model: "dP1 fibration with ⅓(1,1,2) on 1 fibre",
        other_model_uncertain: false,
        other_model_scroll: Some(OtherModelScroll {
            rows: [&[0, 0, 2, 3, 1, 1], &[1, 1, -1, -2, -1, -1]],
            class: DivClass::new(6, -3),
        }),
        singularity: None,
    },
    Table2Row {
        id: "8a",
        n: -1,
        a: 1,
        b: 1,
        c: 2,
        mu: 5,
        general: false,
        extensions: &[ext("ξ", 3, -3, false), ext("η", 5, -6, false)],
        link: "(1,1,-1,-1,-3), 7-flop, (2,0)",
        other_model: "Y' ⊂ P(1^4,2,3,4) general, P = ¼(1,1,3)",
        other_model_uncertain: false,
        other_model_scroll: None,
        singularity: Some("xy = zt"),
    },
    Table2Row {
        id: "8b",
        n: -1,
        a: 1,
        b: 1,
        c: 2,
        mu: 3,
        general: false,
        extensions: &[ext("η", 3, -4, false)],
        link: "(1,1,-1,-1,-4), 3-flop, (2,0)",
        other_model: "Y' ⊂ P^5(1^4,2^2)",
        other_model_uncertain: true,
        other_model_scroll: None,
        singularity: Some("xy = z^3 + t^3"),
    },
    Table2Row {
        id: "9",
        n: -2,
        a: 1,
        b: 1,
        c: 3,
        mu: 3,
        general: false,
        extensions: &[ext("η", 3, -4, true)],
        link: "(1,1,-1,-1,-4), 3-flop, (2,0)",
        other_model: "Y' ⊂ P^5(1^2,2^2,3,5)",
        other_model_uncertain: true,
        other_model_scroll: None,
        singularity: Some("xy = z^3 + t^3"),
    },
    Table2Row {
        id: "10",
        n: -2,
        a: 1,
        b: 2,
        c: 3,
        mu: 3,
        general: false,
        extensions: &[ext("η", 3, -7, true)],
        link: "(1,1,-1,-2,-7), (2,0)",
        other_model: "Y' ⊂ P^5(1^2,2^3,3)",
        other_model_uncertain: true,
        other_model_scroll: None,
        singularity: Some("xy = z^3 + t^6"),
    },
];

pub fn table2() -> &'static [Table2Row] {
    &TABLE2
}

pub fn table2_row(id: &str) -> Result<&'static Table2Row, LinkError> {
    TABLE2.iter().find(|r| r.id == id).ok_or_else(|| LinkError::UnknownRow(id.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MuCheck {
    pub id: &'static str,
    /// `-μK - L`.
    pub expected: DivClass,
    pub edge: DivClass,
    pub mu_ok: bool,
    pub k_dot_gamma: i64,
    pub opening: StepKind,
    pub opening_ok: bool,
}

impl MuCheck {
    pub fn passed(&self) -> bool {
        self.mu_ok && self.opening_ok
    }
}

/// Checks `-μK - L` against the mobile edge and the first step against `-K·Γ`.
pub fn verify_mu(row: &Table2Row) -> Result<MuCheck, LinkError> {
    let fam = row.family();
    let mat = row.scroll()?;
    let expected = row.mu * anticanonical_on_x(&fam) - DivClass::L;
    let edge = mobile_edge(&mat);
    let k = mk_dot_gamma(&fam);
    let opening = row.narrative_opening();
    Ok(MuCheck {
        id: row.id,
        expected,
        edge,
        mu_ok: expected.same_ray(edge),
        k_dot_gamma: k,
        opening,
        opening_ok: StepKind::from_pairing(k) == opening && opening != StepKind::Flip,
    })
}

/// Plain-text report of a trace.
pub fn render_trace(tr: &LinkTrace) -> String {
    let mut s = String::new();
    let tw: Vec<String> = tr.family.twists().iter().map(|a| a.to_string()).collect();
    let _ = writeln!(s, "2-ray game for {} in F({}) over P^1", tr.family, tw.join(","));
    s.push_str(&tr.matrix.to_string());
    let _ = writeln!(s, "-K = {}", tr.anticanonical);
    let _ = writeln!(s, "-K.Gamma = {}", tr.k_dot_gamma);
    for (i, st) in tr.steps.iter().enumerate() {
        let w: Vec<String> = st.weights.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            s,
            "step {}: wall {}: {} (k-pairing {}), weights ({})",
            i + 1,
            st.wall,
            st.kind.as_str(),
            st.k_pairing,
            w.join(",")
        );
    }
    let t = &tr.terminal;
    let kind = match t.heuristic {
        TerminalKind::Fibration => "fibration",
        TerminalKind::Divisorial => "divisorial contraction",
    };
    let _ = writeln!(
        s,
        "terminal wall {}: {} column(s) on the ray ({}), {} beyond -> {} (ambient heuristic)",
        t.ray,
        t.on_ray.len(),
        t.on_ray.join(","),
        t.beyond.len(),
        kind
    );
    let _ = writeln!(s, "  h0 of 1,2,3 times the ray: {}, {}, {}", t.sections[0], t.sections[1], t.sections[2]);
    if let Some(m) = &t.model {
        let _ = writeln!(s, "  new model in |{}| on", m.class);
        for line in m.matrix.to_string().lines() {
            let _ = writeln!(s, "  {line}");
        }
    }
    for id in &tr.curated {
        if let Ok(row) = table2_row(id) {
            let _ = writeln!(s, "curated row {}: {}; other model: {}", row.id, row.link, row.other_model);
        }
    }
    s
}
