//! The shipped catalog: top structure constants of the 9-dimensional
//! filiform families, their semisimple diagonal derivations, and the
//! construction data (derivation matrices and conjugation coefficients)
//! for every degeneration case.
//!
//! A catalog is a JSON document; the default one is embedded in the
//! binary and can be overridden with `--catalog` or `FILIFORM_CATALOG`.
//! All expressions are validated and parsed up front so later stages
//! only ever see well-formed exact values.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::exact::{parse_expr, RatFunc};
use crate::lie::LieBracket;

pub const EMBEDDED_CATALOG: &str = include_str!("../data/catalog.json");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read catalog: {0}")]
    Io(#[from] std::io::Error),
    #[error("catalog is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema error at {at}: {msg}")]
    Schema { at: String, msg: String },
}

fn schema(at: impl Into<String>, msg: impl Into<String>) -> CatalogError {
    CatalogError::Schema {
        at: at.into(),
        msg: msg.into(),
    }
}

/// The nine top slots `(r, s)` with `r + s <= 9` and `2 <= r < s`, in the
/// column order of the classification table.
pub const C9_KEYS: [(usize, usize); 9] = [
    (4, 5),
    (3, 6),
    (2, 7),
    (3, 5),
    (2, 6),
    (3, 4),
    (2, 5),
    (2, 4),
    (2, 3),
];

/// One family: its top structure constants `C^9_{r,s}` as rational
/// functions of the family parameters, plus the polynomial constraints
/// (each must stay nonzero) a parameter specialization has to respect.
#[derive(Debug, Clone)]
pub struct C9Row {
    pub name: String,
    pub params: Vec<String>,
    pub c9: BTreeMap<(usize, usize), RatFunc>,
    pub excluded: Vec<RatFunc>,
    /// True for the families outside the characteristically nilpotent
    /// list, whose rows are the generic weight-graded representatives.
    pub rank_ge_one: bool,
}

impl C9Row {
    pub fn c9_entry(&self, r: usize, s: usize) -> &RatFunc {
        &self.c9[&(r, s)]
    }

    /// The full 9-dimensional bracket determined by the top constants.
    pub fn bracket(&self) -> LieBracket {
        derive_constants(&self.c9)
    }

    /// Bindings for every structure-constant symbol (`c945`, ...,
    /// `c523`, ...) used by the case expressions.
    pub fn constant_bindings(&self) -> BTreeMap<String, RatFunc> {
        constant_bindings(&self.c9)
    }
}

/// Expand the top constants to the complete structure-constant table:
/// the chain `[X_1, X_j] = X_{j+1}` plus the derived `C^l_{i,j}`.
pub fn derive_constants(c9: &BTreeMap<(usize, usize), RatFunc>) -> LieBracket {
    let mut b = LieBracket::new(9);
    for j in 2..=8 {
        b.set(1, j, j + 1, RatFunc::one());
    }
    for ((i, j, l), value) in derived_entries(c9) {
        b.set(i, j, l, value);
    }
    for (&(r, s), value) in c9 {
        b.set(r, s, 9, value.clone());
    }
    b
}

fn derived_entries(
    c9: &BTreeMap<(usize, usize), RatFunc>,
) -> Vec<((usize, usize, usize), RatFunc)> {
    let c = |r: usize, s: usize| c9[&(r, s)].clone();
    let c523 = c(2, 7).add(&c(3, 6).scale(&crate::exact::int(3))).add(&c(4, 5).scale(&crate::exact::int(2)));
    let c725 = c(2, 7).add(&c(3, 6).scale(&crate::exact::int(2))).add(&c(4, 5));
    let c826 = c(2, 7).add(&c(3, 6));
    let c734 = c(3, 6).add(&c(4, 5));
    let c623 = c(2, 6).add(&c(3, 5).scale(&crate::exact::int(2)));
    let c825 = c(2, 6).add(&c(3, 5));
    let c723 = c(2, 5).add(&c(3, 4));
    vec![
        ((2, 3, 5), c523.clone()),
        ((2, 4, 6), c523),
        ((2, 5, 7), c725),
        ((2, 6, 8), c826),
        ((3, 4, 7), c734.clone()),
        ((3, 5, 8), c734),
        ((2, 3, 6), c623.clone()),
        ((2, 4, 7), c623),
        ((2, 5, 8), c825),
        ((2, 3, 7), c723.clone()),
        ((2, 4, 8), c723),
        ((3, 4, 8), c(3, 5)),
        ((2, 3, 8), c(2, 4)),
    ]
}

/// Symbol bindings for the case expressions: every `C^l_{i,j}` of the
/// algebra under the name `c<l><i><j>`.
pub fn constant_bindings(c9: &BTreeMap<(usize, usize), RatFunc>) -> BTreeMap<String, RatFunc> {
    let mut out = BTreeMap::new();
    for (&(r, s), value) in c9 {
        out.insert(format!("c9{r}{s}"), value.clone());
    }
    for ((i, j, l), value) in derived_entries(c9) {
        out.insert(format!("c{l}{i}{j}"), value);
    }
    out
}

/// The quadratic constraint the top constants must satisfy for the
/// Jacobi identity to close: `-3 c936^2 + 2 c927 c945 + c936 c945 +
/// 2 c945^2`.
pub fn top_jacobi_residual(c9: &BTreeMap<(usize, usize), RatFunc>) -> RatFunc {
    let c945 = &c9[&(4, 5)];
    let c936 = &c9[&(3, 6)];
    let c927 = &c9[&(2, 7)];
    c936.mul(c936).scale(&crate::exact::int(-3))
        .add(&c927.mul(c945).scale(&crate::exact::int(2)))
        .add(&c936.mul(c945))
        .add(&c945.mul(c945).scale(&crate::exact::int(2)))
}

#[derive(Debug, Clone)]
pub struct DiagDerivation {
    pub algebra: String,
    pub weights: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ideal {
    /// Span of `X_1, X_3, X_4, ..., X_9`.
    H1,
    /// Span of `X_2, X_3, ..., X_9`.
    H2,
}

impl Ideal {
    /// 1-based basis indices of the ideal.
    pub fn indices(self) -> Vec<usize> {
        match self {
            Ideal::H1 => vec![1, 3, 4, 5, 6, 7, 8, 9],
            Ideal::H2 => (2..=9).collect(),
        }
    }

    /// The complementary basis index `z`.
    pub fn complement(self) -> usize {
        match self {
            Ideal::H1 => 2,
            Ideal::H2 => 1,
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ideal::H1 => write!(f, "h1"),
            Ideal::H2 => write!(f, "h2"),
        }
    }
}

/// Substitution law `t = p0^power` tying the deformation parameter to
/// the conjugation parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubstLaw {
    pub power: u32,
}

#[derive(Debug, Clone)]
pub enum CaseKind {
    /// Codimension-one ideal `h1` with the template derivation
    /// `diag(d1, k d1, (k+1) d1, ..., (k+6) d1)` minus the band of
    /// `C^m_{2,3}`-multiples, and template conjugating matrices driven
    /// by the `p_{r,2}` coefficients. A `None` coefficient is a slot
    /// whose printed formula could not be interpreted; it is kept as an
    /// unknown symbol during verification.
    H1Template {
        k: u32,
        d1: RatFunc,
        p: BTreeMap<(usize, usize), Option<RatFunc>>,
    },
    /// Explicitly printed derivation (8x8, in the ideal basis) and
    /// conjugating matrix (9x9, in the ambient basis).
    H1Explicit {
        d: Vec<Vec<RatFunc>>,
        g: Vec<Vec<RatFunc>>,
    },
    /// Codimension-one ideal `h2`: only the derivation matrix (8x8 on
    /// `X_2..X_9`) is given; `g_t` comes from the closed-form
    /// coefficients. `alternatives` lists candidate readings for
    /// ambiguously printed entries, keyed by (row, col).
    H2 {
        d: Vec<Vec<RatFunc>>,
        alternatives: BTreeMap<(usize, usize), Vec<RatFunc>>,
    },
}

/// A documented correction under which a case's finding residuals
/// vanish. The verifier reports both the verbatim residuals and the
/// outcome of re-running the check with the resolution applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    /// Bind an otherwise-unknown symbol to one of the derived
    /// structure constants (a `constant_bindings` key).
    Binding { symbol: String, constant: String },
    /// Negate the listed entries of the explicit conjugating matrix.
    FlipGSign { entries: Vec<(usize, usize)> },
    /// Replace an ambiguously printed entry of the derivation matrix
    /// by the reading at `index` in the case's alternative list.
    DAlternative { at: (usize, usize), index: usize },
}

#[derive(Debug, Clone)]
pub struct Case {
    pub id: String,
    pub ideal: Ideal,
    pub algebras: Vec<String>,
    /// `t = p0^power`; only meaningful for `h1` cases.
    pub subst: Option<SubstLaw>,
    /// Parameter values forced per algebra (e.g. a family covered only
    /// on a subvariety of its parameter space).
    pub param_overrides: BTreeMap<String, BTreeMap<String, RatFunc>>,
    /// Transcription caveats; any nonzero residual traceable to one of
    /// these is a finding, not a failure.
    pub findings: Vec<String>,
    /// Present iff a correction is known that removes every residual.
    pub resolution: Option<Resolution>,
    pub kind: CaseKind,
}

#[derive(Debug, Clone)]
pub struct Skipped {
    pub algebra: String,
    pub condition: String,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    /// The characteristically nilpotent families, in table order,
    /// followed by the weight-graded representatives.
    pub algebras: Vec<C9Row>,
    pub diag_derivations: Vec<DiagDerivation>,
    pub cn_list: Vec<String>,
    pub cases: Vec<Case>,
    pub skipped: Vec<Skipped>,
}

impl Catalog {
    pub fn embedded() -> Result<Catalog, CatalogError> {
        Catalog::from_json(EMBEDDED_CATALOG)
    }

    pub fn from_path(path: &Path) -> Result<Catalog, CatalogError> {
        let text = std::fs::read_to_string(path)?;
        Catalog::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Catalog, CatalogError> {
        let raw: RawCatalog = serde_json::from_str(text)?;
        validate(raw)
    }

    pub fn algebra(&self, name: &str) -> Option<&C9Row> {
        self.algebras.iter().find(|r| r.name == name)
    }

    pub fn case(&self, id: &str) -> Option<&Case> {
        self.cases.iter().find(|c| c.id == id)
    }

    pub fn diag_derivation(&self, algebra: &str) -> Option<&DiagDerivation> {
        self.diag_derivations.iter().find(|d| d.algebra == algebra)
    }

    /// Cases that cover the given algebra.
    pub fn cases_for(&self, algebra: &str) -> Vec<&Case> {
        self.cases
            .iter()
            .filter(|c| c.algebras.iter().any(|a| a == algebra))
            .collect()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    version: u32,
    algebras: Vec<RawRow>,
    #[serde(default)]
    rank1_algebras: Vec<RawRow>,
    diag_derivations: Vec<RawDiag>,
    cn_list: Vec<String>,
    cases: Vec<RawCase>,
    #[serde(default)]
    skipped: Vec<RawSkipped>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    name: String,
    params: Vec<String>,
    c9: BTreeMap<String, String>,
    #[serde(default)]
    excluded: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiag {
    algebra: String,
    weights: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCase {
    id: String,
    ideal: String,
    algebras: Vec<String>,
    #[serde(default)]
    k: Option<u32>,
    #[serde(default)]
    d1: Option<String>,
    #[serde(default)]
    subst: Option<String>,
    #[serde(default)]
    p: Option<BTreeMap<String, Option<String>>>,
    #[serde(default)]
    explicit_d: Option<Vec<Vec<String>>>,
    #[serde(default)]
    explicit_g: Option<Vec<Vec<String>>>,
    #[serde(default, rename = "D")]
    big_d: Option<Vec<Vec<String>>>,
    #[serde(default)]
    alternatives: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default)]
    param_overrides: Option<BTreeMap<String, BTreeMap<String, String>>>,
    #[serde(default)]
    findings: Vec<String>,
    #[serde(default)]
    resolution: Option<RawResolution>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum RawResolution {
    #[serde(rename = "binding")]
    Binding { symbol: String, constant: String },
    #[serde(rename = "flip_g_sign")]
    FlipGSign { entries: Vec<String> },
    #[serde(rename = "d_alternative")]
    DAlternative { at: String, index: usize },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSkipped {
    algebra: String,
    condition: String,
    reason: String,
}

fn parse_at(at: &str, src: &str) -> Result<RatFunc, CatalogError> {
    parse_expr(src).map_err(|e| schema(at, format!("`{src}`: {e}")))
}

fn slot_key(at: &str, key: &str) -> Result<(usize, usize), CatalogError> {
    let bytes = key.as_bytes();
    if bytes.len() == 2 && bytes.iter().all(|b| b.is_ascii_digit()) {
        Ok(((bytes[0] - b'0') as usize, (bytes[1] - b'0') as usize))
    } else {
        Err(schema(at, format!("bad slot key `{key}`")))
    }
}

fn validate_row(at: &str, raw: RawRow, rank_ge_one: bool) -> Result<C9Row, CatalogError> {
    let mut c9 = BTreeMap::new();
    for (key, src) in &raw.c9 {
        let slot_at = format!("{at}/c9/{key}");
        let slot = slot_key(&slot_at, key)?;
        if !C9_KEYS.contains(&slot) {
            return Err(schema(&slot_at, "not a top structure-constant slot"));
        }
        let value = parse_at(&slot_at, src)?;
        for v in value.vars() {
            if !raw.params.contains(&v) {
                return Err(schema(&slot_at, format!("undeclared parameter `{v}`")));
            }
        }
        c9.insert(slot, value);
    }
    for slot in C9_KEYS {
        if !c9.contains_key(&slot) {
            return Err(schema(
                format!("{at}/c9"),
                format!("missing slot {}{}", slot.0, slot.1),
            ));
        }
    }
    let excluded = raw
        .excluded
        .iter()
        .enumerate()
        .map(|(i, src)| parse_at(&format!("{at}/excluded/{i}"), src))
        .collect::<Result<_, _>>()?;
    Ok(C9Row {
        name: raw.name,
        params: raw.params,
        c9,
        excluded,
        rank_ge_one,
    })
}

fn validate_matrix(
    at: &str,
    rows: &[Vec<String>],
    dim: usize,
) -> Result<Vec<Vec<RatFunc>>, CatalogError> {
    if rows.len() != dim {
        return Err(schema(at, format!("expected {dim} rows, got {}", rows.len())));
    }
    let mut out = Vec::with_capacity(dim);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(schema(
                format!("{at}/{r}"),
                format!("expected {dim} entries, got {}", row.len()),
            ));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(c, src)| parse_at(&format!("{at}/{r}/{c}"), src))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(parsed);
    }
    Ok(out)
}

fn parse_subst(at: &str, src: &str) -> Result<SubstLaw, CatalogError> {
    let rest = src
        .strip_prefix("t=p0")
        .ok_or_else(|| schema(at, format!("bad substitution law `{src}`")))?;
    let power = if rest.is_empty() {
        1
    } else {
        rest.strip_prefix('^')
            .and_then(|e| e.parse::<u32>().ok())
            .filter(|&e| e >= 1)
            .ok_or_else(|| schema(at, format!("bad substitution law `{src}`")))?
    };
    Ok(SubstLaw { power })
}

const P_SLOTS: [(usize, usize); 6] = [(4, 2), (5, 2), (6, 2), (7, 2), (8, 2), (9, 2)];

fn validate_case(at: &str, raw: RawCase, names: &[String]) -> Result<Case, CatalogError> {
    let ideal = match raw.ideal.as_str() {
        "h1" => Ideal::H1,
        "h2" => Ideal::H2,
        other => return Err(schema(format!("{at}/ideal"), format!("unknown ideal `{other}`"))),
    };
    if raw.algebras.is_empty() {
        return Err(schema(format!("{at}/algebras"), "empty"));
    }
    for name in &raw.algebras {
        if !names.contains(name) {
            return Err(schema(
                format!("{at}/algebras"),
                format!("unknown algebra `{name}`"),
            ));
        }
    }
    let subst = raw
        .subst
        .as_deref()
        .map(|s| parse_subst(&format!("{at}/subst"), s))
        .transpose()?;
    let mut param_overrides = BTreeMap::new();
    if let Some(overrides) = &raw.param_overrides {
        for (name, bindings) in overrides {
            if !raw.algebras.contains(name) {
                return Err(schema(
                    format!("{at}/param_overrides/{name}"),
                    "override for an algebra the case does not cover",
                ));
            }
            let parsed = bindings
                .iter()
                .map(|(var, src)| {
                    parse_at(&format!("{at}/param_overrides/{name}/{var}"), src)
                        .map(|v| (var.clone(), v))
                })
                .collect::<Result<BTreeMap<_, _>, _>>()?;
            param_overrides.insert(name.clone(), parsed);
        }
    }

    let kind = match (ideal, &raw.p, &raw.explicit_g, &raw.big_d) {
        (Ideal::H1, Some(p), None, None) => {
            let k = raw
                .k
                .filter(|&k| (2..=5).contains(&k))
                .ok_or_else(|| schema(format!("{at}/k"), "h1 template case needs k in 2..=5"))?;
            let d1 = parse_at(
                &format!("{at}/d1"),
                raw.d1
                    .as_deref()
                    .ok_or_else(|| schema(format!("{at}/d1"), "missing"))?,
            )?;
            if subst.is_none() {
                return Err(schema(format!("{at}/subst"), "missing"));
            }
            let mut parsed = BTreeMap::new();
            for (key, src) in p {
                let slot_at = format!("{at}/p/{key}");
                let slot = slot_key(&slot_at, key)?;
                if !P_SLOTS.contains(&slot) {
                    return Err(schema(&slot_at, "not a template coefficient slot"));
                }
                let value = src
                    .as_deref()
                    .map(|s| parse_at(&slot_at, s))
                    .transpose()?;
                parsed.insert(slot, value);
            }
            for slot in P_SLOTS {
                if !parsed.contains_key(&slot) {
                    return Err(schema(
                        format!("{at}/p"),
                        format!("missing slot {}{}", slot.0, slot.1),
                    ));
                }
            }
            CaseKind::H1Template { k, d1, p: parsed }
        }
        (Ideal::H1, None, Some(g), None) => {
            let d = validate_matrix(
                &format!("{at}/explicit_d"),
                raw.explicit_d
                    .as_deref()
                    .ok_or_else(|| schema(format!("{at}/explicit_d"), "missing"))?,
                8,
            )?;
            if subst.is_none() {
                return Err(schema(format!("{at}/subst"), "missing"));
            }
            if raw.algebras.len() != 1 {
                return Err(schema(
                    format!("{at}/algebras"),
                    "explicit case covers exactly one algebra",
                ));
            }
            let g = validate_matrix(&format!("{at}/explicit_g"), g, 9)?;
            CaseKind::H1Explicit { d, g }
        }
        (Ideal::H2, None, None, Some(d)) => {
            if raw.algebras.len() != 1 {
                return Err(schema(
                    format!("{at}/algebras"),
                    "h2 case covers exactly one algebra",
                ));
            }
            let d = validate_matrix(&format!("{at}/D"), d, 8)?;
            let mut alternatives = BTreeMap::new();
            if let Some(alts) = &raw.alternatives {
                for (key, readings) in alts {
                    let slot_at = format!("{at}/alternatives/{key}");
                    let slot = slot_key(&slot_at, key)?;
                    let parsed = readings
                        .iter()
                        .enumerate()
                        .map(|(i, src)| parse_at(&format!("{slot_at}/{i}"), src))
                        .collect::<Result<Vec<_>, _>>()?;
                    if parsed.is_empty() {
                        return Err(schema(&slot_at, "empty alternative list"));
                    }
                    if parsed[0] != d[slot.0 - 1][slot.1 - 1] {
                        return Err(schema(
                            &slot_at,
                            "first alternative must repeat the entry of D",
                        ));
                    }
                    alternatives.insert(slot, parsed);
                }
            }
            CaseKind::H2 { d, alternatives }
        }
        _ => {
            return Err(schema(
                at,
                "case must be exactly one of: h1 template (p), h1 explicit (explicit_g), h2 (D)",
            ))
        }
    };

    let resolution = raw
        .resolution
        .map(|r| validate_resolution(&format!("{at}/resolution"), r, &kind))
        .transpose()?;
    if resolution.is_some() && raw.findings.is_empty() {
        return Err(schema(
            format!("{at}/resolution"),
            "resolution without a finding it resolves",
        ));
    }

    Ok(Case {
        id: raw.id,
        ideal,
        algebras: raw.algebras,
        subst,
        param_overrides,
        findings: raw.findings,
        resolution,
        kind,
    })
}

fn validate_resolution(
    at: &str,
    raw: RawResolution,
    kind: &CaseKind,
) -> Result<Resolution, CatalogError> {
    match raw {
        RawResolution::Binding { symbol, constant } => Ok(Resolution::Binding { symbol, constant }),
        RawResolution::FlipGSign { entries } => {
            let CaseKind::H1Explicit { g, .. } = kind else {
                return Err(schema(at, "flip_g_sign applies only to an explicit g"));
            };
            let entries = entries
                .iter()
                .map(|key| {
                    let slot = slot_key(&format!("{at}/entries"), key)?;
                    if g[slot.0 - 1][slot.1 - 1].is_zero() {
                        return Err(schema(
                            format!("{at}/entries"),
                            format!("entry {}{} of g is zero", slot.0, slot.1),
                        ));
                    }
                    Ok(slot)
                })
                .collect::<Result<Vec<_>, _>>()?;
            if entries.is_empty() {
                return Err(schema(format!("{at}/entries"), "empty"));
            }
            Ok(Resolution::FlipGSign { entries })
        }
        RawResolution::DAlternative { at: slot, index } => {
            let CaseKind::H2 { alternatives, .. } = kind else {
                return Err(schema(at, "d_alternative applies only to an h2 case"));
            };
            let slot = slot_key(&format!("{at}/at"), &slot)?;
            let readings = alternatives
                .get(&slot)
                .ok_or_else(|| schema(format!("{at}/at"), "no alternative list for this entry"))?;
            if index == 0 || index >= readings.len() {
                return Err(schema(
                    format!("{at}/index"),
                    "must pick a non-default reading from the alternative list",
                ));
            }
            Ok(Resolution::DAlternative { at: slot, index })
        }
    }
}

fn validate(raw: RawCatalog) -> Result<Catalog, CatalogError> {
    if raw.version != 1 {
        return Err(schema("/version", format!("unsupported version {}", raw.version)));
    }
    let mut algebras = Vec::new();
    for (i, row) in raw.algebras.into_iter().enumerate() {
        algebras.push(validate_row(&format!("/algebras/{i}"), row, false)?);
    }
    for (i, row) in raw.rank1_algebras.into_iter().enumerate() {
        algebras.push(validate_row(&format!("/rank1_algebras/{i}"), row, true)?);
    }
    let names: Vec<String> = algebras.iter().map(|r| r.name.clone()).collect();
    {
        let mut seen = names.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != names.len() {
            return Err(schema("/algebras", "duplicate algebra name"));
        }
    }

    let mut diag_derivations = Vec::new();
    for (i, d) in raw.diag_derivations.into_iter().enumerate() {
        let at = format!("/diag_derivations/{i}");
        if !names.contains(&d.algebra) {
            return Err(schema(&at, format!("unknown algebra `{}`", d.algebra)));
        }
        if d.weights.len() != 9 {
            return Err(schema(&at, "expected 9 weights"));
        }
        diag_derivations.push(DiagDerivation {
            algebra: d.algebra,
            weights: d.weights,
        });
    }

    for (i, name) in raw.cn_list.iter().enumerate() {
        match algebras.iter().find(|r| &r.name == name) {
            None => return Err(schema(format!("/cn_list/{i}"), format!("unknown algebra `{name}`"))),
            Some(row) if row.rank_ge_one => {
                return Err(schema(
                    format!("/cn_list/{i}"),
                    "weight-graded representative cannot be characteristically nilpotent",
                ))
            }
            Some(_) => {}
        }
    }

    let mut cases = Vec::new();
    for (i, c) in raw.cases.into_iter().enumerate() {
        cases.push(validate_case(&format!("/cases/{i}"), c, &names)?);
    }
    {
        let mut ids: Vec<&str> = cases.iter().map(|c| c.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        if ids.len() != cases.len() {
            return Err(schema("/cases", "duplicate case id"));
        }
    }

    let mut skipped = Vec::new();
    for (i, s) in raw.skipped.into_iter().enumerate() {
        if !names.contains(&s.algebra) {
            return Err(schema(
                format!("/skipped/{i}"),
                format!("unknown algebra `{}`", s.algebra),
            ));
        }
        skipped.push(Skipped {
            algebra: s.algebra,
            condition: s.condition,
            reason: s.reason,
        });
    }

    Ok(Catalog {
        algebras,
        diag_derivations,
        cn_list: raw.cn_list,
        cases,
        skipped,
    })
}
