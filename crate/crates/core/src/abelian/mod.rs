//! First homology of the mapping class groups.
//!
//! Every generator is sent to a class symbol; each homology lemma is stored
//! as a displayed relation (a product of named mapping classes on either
//! side) whose abelianization is replayed to obtain an integer relation row.
//! `H_1` is the cokernel of the installed rows, computed by Smith normal
//! form, and the lower bound is certified by `Z_2`-valued characters.

pub mod characters;
pub mod ledger;
pub mod snf;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{self, CatalogError, ClassTag, CurveCatalog, GeneratorName, GroupKind, SurfaceSpec};

pub use characters::{character_suite, Character};
pub use ledger::{lantern_projection, lemma_entries, relation_rows, verify_lemmas, LemmaEntry, LemmaReplay, Step};
pub use snf::{smith_normal_form, IntMatrix, Snf, SnfError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Snf(#[from] SnfError),
    #[error("{gen} is not in the generating set of {spec}")]
    NotAGenerator { gen: GeneratorName, spec: SurfaceSpec },
    #[error("unknown curve or mapping class {0:?}")]
    UnknownCurve(String),
    #[error("cannot parse relation {0:?}")]
    Parse(String),
    #[error("index {index} outside {range}")]
    OutOfRange { index: u32, range: String },
    #[error("character {character} does not annihilate row from {source_lemma}")]
    CharacterNotAnnihilating { character: String, source_lemma: String },
}

/// Canonical generators of `H_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassSymbol {
    /// `[t_{a1}]`; every twist about a nonseparating circle with
    /// nonorientable complement.
    A,
    /// `[t_{b_{r+1}}]`, even genus.
    B,
    /// `[y]`
    Y,
    /// `[v_j]`, pure groups.
    V(u32),
    /// The single slide class of the full group.
    VAll,
    /// The single braid class of the full group.
    SigmaAll,
    /// `[t_{u_i}]`
    U(u32),
}

impl fmt::Display for ClassSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSymbol::A => f.write_str("[t_a1]"),
            ClassSymbol::B => f.write_str("[t_b_r+1]"),
            ClassSymbol::Y => f.write_str("[y]"),
            ClassSymbol::V(j) => write!(f, "[v{j}]"),
            ClassSymbol::VAll => f.write_str("[v]"),
            ClassSymbol::SigmaAll => f.write_str("[sigma]"),
            ClassSymbol::U(i) => write!(f, "[t_u{i}]"),
        }
    }
}

/// A coefficient slot of a relation row: a class symbol, or the class of a
/// named curve or auxiliary mapping class not yet expressed in the basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Class(ClassSymbol),
    Curve(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Class(c) => write!(f, "{c}"),
            Term::Curve(n) => write!(f, "[{n}]"),
        }
    }
}

/// Integer relation `Σ c_t · t = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationRow {
    pub coefficients: BTreeMap<Term, i64>,
    pub source: String,
}

impl RelationRow {
    pub fn new(source: impl Into<String>) -> Self {
        RelationRow {
            coefficients: BTreeMap::new(),
            source: source.into(),
        }
    }

    pub fn from_classes(source: impl Into<String>, entries: &[(ClassSymbol, i64)]) -> Self {
        let mut row = RelationRow::new(source);
        for &(c, k) in entries {
            row.add_term(Term::Class(c), k);
        }
        row
    }

    pub fn add_term(&mut self, t: Term, k: i64) {
        let slot = self.coefficients.entry(t.clone()).or_insert(0);
        *slot += k;
        if *slot == 0 {
            self.coefficients.remove(&t);
        }
    }

    /// `self += k · other`
    pub fn add_scaled(&mut self, other: &RelationRow, k: i64) {
        for (t, &c) in &other.coefficients {
            self.add_term(t.clone(), k * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, c: ClassSymbol) -> i64 {
        self.coefficients.get(&Term::Class(c)).copied().unwrap_or(0)
    }

    /// Same coefficients, ignoring the source label.
    pub fn same_relation(&self, other: &RelationRow) -> bool {
        self.coefficients == other.coefficients
    }

    pub fn curve_terms(&self) -> impl Iterator<Item = &str> {
        self.coefficients.keys().filter_map(|t| match t {
            Term::Curve(n) => Some(n.as_str()),
            Term::Class(_) => None,
        })
    }

    /// Coefficient vector over `basis`; `None` if a term falls outside it.
    pub fn vector(&self, basis: &[ClassSymbol]) -> Option<Vec<i64>> {
        let mut v = vec![0; basis.len()];
        for (t, &c) in &self.coefficients {
            let Term::Class(sym) = t else { return None };
            v[basis.iter().position(|b| b == sym)?] = c;
        }
        Some(v)
    }
}

impl Serialize for RelationRow {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let coefficients: BTreeMap<String, i64> = self.coefficients.iter().map(|(t, &c)| (t.to_string(), c)).collect();
        let mut st = serializer.serialize_struct("RelationRow", 2)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("coefficients", &coefficients)?;
        st.end()
    }
}

impl fmt::Display for RelationRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 = 0");
        }
        let mut first = true;
        for (t, &c) in &self.coefficients {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, " = 0")
    }
}

/// One factor `name^power` of a displayed relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub name: String,
    pub power: i64,
}

/// Equality of two products of named mapping classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub left: Vec<Factor>,
    pub right: Vec<Factor>,
}

fn parse_side(side: &str, whole: &str) -> Result<Vec<Factor>, AbelianError> {
    side.split_whitespace()
        .filter(|tok| *tok != "1")
        .map(|tok| {
            let (name, power) = match tok.split_once('^') {
                Some((n, p)) => (n, p.parse::<i64>().map_err(|_| AbelianError::Parse(whole.to_string()))?),
                None => (tok, 1),
            };
            if name.is_empty() {
                return Err(AbelianError::Parse(whole.to_string()));
            }
            Ok(Factor {
                name: name.to_string(),
                power,
            })
        })
        .collect()
}

impl Relation {
    /// Parse `"t_a1 t_b2^-1 = y^2"`; `1` denotes the empty product.
    pub fn parse(text: &str) -> Result<Self, AbelianError> {
        let (l, r) = text.split_once('=').ok_or_else(|| AbelianError::Parse(text.to_string()))?;
        if r.contains('=') {
            return Err(AbelianError::Parse(text.to_string()));
        }
        Ok(Relation {
            left: parse_side(l, text)?,
            right: parse_side(r, text)?,
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |fs: &[Factor]| -> String {
            if fs.is_empty() {
                return "1".into();
            }
            fs.iter()
                .map(|x| if x.power == 1 { x.name.clone() } else { format!("{}^{}", x.name, x.power) })
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "{} = {}", side(&self.left), side(&self.right))
    }
}

/// Sends mapping-class names to their abelianized terms on one surface.
///
/// Names: `t_<curve>` for twists about catalog curves, `y`, `v<j>`,
/// `sigma<j>`, plus any auxiliary names registered for a lemma (these stay
/// as opaque terms).
#[derive(Debug, Clone)]
pub struct ClassMap {
    spec: SurfaceSpec,
    curves: CurveCatalog,
    aux: Vec<String>,
}

impl ClassMap {
    pub fn new(spec: &SurfaceSpec) -> Result<Self, AbelianError> {
        Ok(ClassMap {
            spec: *spec,
            curves: CurveCatalog::new(spec)?,
            aux: Vec::new(),
        })
    }

    pub fn with_aux<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.aux.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn curves(&self) -> &CurveCatalog {
        &self.curves
    }

    /// `Ok(None)` means the class is zero.
    pub fn resolve(&self, name: &str) -> Result<Option<Term>, AbelianError> {
        if self.aux.iter().any(|a| a == name) {
            return Ok(Some(Term::Curve(name.to_string())));
        }
        let unknown = || AbelianError::UnknownCurve(name.to_string());
        if let Some(curve) = name.strip_prefix("t_") {
            if let Some(j) = curve.strip_prefix('p').and_then(|x| x.parse::<u32>().ok()) {
                // circle around a single puncture: the twist is trivial
                return if (self.spec.s + 1..=self.spec.s + self.spec.n).contains(&j) {
                    Ok(None)
                } else {
                    Err(unknown())
                };
            }
            let tag = self.curves.classify_curve(curve).map_err(|_| unknown())?;
            return Ok(Some(match tag {
                ClassTag::NonsepNonorientComplement => Term::Class(ClassSymbol::A),
                ClassTag::BoundaryParallel => {
                    let j = curve[1..].parse::<u32>().map_err(|_| unknown())?;
                    Term::Class(ClassSymbol::U(j))
                }
                ClassTag::Special if self.spec.is_even() && curve == format!("b{}", self.spec.r() + 1) => {
                    Term::Class(ClassSymbol::B)
                }
                ClassTag::Special | ClassTag::SeparatingBothNonorientable => Term::Curve(curve.to_string()),
            }));
        }
        let gen: GeneratorName = name.parse().map_err(|_| unknown())?;
        let np = self.spec.s + self.spec.n;
        match gen {
            GeneratorName::CrosscapY => Ok(Some(Term::Class(ClassSymbol::Y))),
            GeneratorName::SlideV(j) if self.spec.is_full() && (self.spec.s + 1..=np).contains(&j) => {
                Ok(Some(Term::Class(ClassSymbol::VAll)))
            }
            GeneratorName::SlideV(j) if !self.spec.is_full() && self.spec.slide_range().contains(&j) => {
                Ok(Some(Term::Class(ClassSymbol::V(j))))
            }
            GeneratorName::Braid(j) if self.spec.is_full() && (self.spec.s + 1..np).contains(&j) => {
                Ok(Some(Term::Class(ClassSymbol::SigmaAll)))
            }
            _ => Err(unknown()),
        }
    }
}

/// Abelianize a displayed relation: classes on the left minus classes on
/// the right.
pub fn replay_lemma(relation: &Relation, map: &ClassMap) -> Result<RelationRow, AbelianError> {
    let mut row = RelationRow::new(relation.to_string());
    for (side, sign) in [(&relation.left, 1i64), (&relation.right, -1)] {
        for f in side {
            if let Some(t) = map.resolve(&f.name)? {
                row.add_term(t, sign * f.power);
            }
        }
    }
    Ok(row)
}

/// Class of a generator of `spec`'s generating set.
pub fn class_of(gen: &GeneratorName, spec: &SurfaceSpec) -> Result<ClassSymbol, AbelianError> {
    let set = catalog::generating_set(spec)?;
    if !set.contains(gen) {
        return Err(AbelianError::NotAGenerator { gen: *gen, spec: *spec });
    }
    Ok(match *gen {
        GeneratorName::TwistB(i) if spec.is_even() && i == spec.r() + 1 => ClassSymbol::B,
        GeneratorName::TwistU(i) => ClassSymbol::U(i),
        GeneratorName::CrosscapY => ClassSymbol::Y,
        GeneratorName::SlideV(_) if spec.is_full() => ClassSymbol::VAll,
        GeneratorName::SlideV(j) => ClassSymbol::V(j),
        GeneratorName::Braid(_) => ClassSymbol::SigmaAll,
        GeneratorName::SlideW(_) => return Err(AbelianError::NotAGenerator { gen: *gen, spec: *spec }),
        _ => ClassSymbol::A,
    })
}

/// Class symbols spanning `H_1` before relations.
pub fn class_basis(spec: &SurfaceSpec) -> Result<Vec<ClassSymbol>, AbelianError> {
    let set = catalog::generating_set(spec)?;
    let mut basis: Vec<ClassSymbol> = set
        .members
        .iter()
        .map(|g| class_of(g, spec))
        .collect::<Result<_, _>>()?;
    basis.sort();
    basis.dedup();
    Ok(basis)
}

/// `[t_{∂Δ}] = Σ_{θ∈Θ} [t_{u_θ}]` for a region containing the boundary
/// components `theta` and punctures `omega`, built by adding one hole at a
/// time through the lantern `t_{∂Δ} t_u t_{a1} t_{a1} = t_{∂Δ'} t_{a1} t_{a1}`.
/// The region boundary appears as the curve term `boundary`.
pub fn region_row(
    spec: &SurfaceSpec,
    theta: &[u32],
    omega: &[u32],
    boundary: &str,
) -> Result<RelationRow, AbelianError> {
    for &t in theta {
        if t == 0 || t > spec.s {
            return Err(AbelianError::OutOfRange {
                index: t,
                range: format!("1..={}", spec.s),
            });
        }
    }
    for &o in omega {
        if o <= spec.s || o > spec.s + spec.n {
            return Err(AbelianError::OutOfRange {
                index: o,
                range: format!("{}..={}", spec.s + 1, spec.s + spec.n),
            });
        }
    }
    let holes: Vec<String> = theta
        .iter()
        .map(|t| format!("t_u{t}"))
        .chain(omega.iter().map(|o| format!("t_p{o}")))
        .collect();
    let stage = |i: usize| format!("region_boundary_{i}");
    let map = ClassMap::new(spec)?.with_aux((0..=holes.len()).map(stage));
    // a region with no holes is a disk: its boundary twist is trivial
    let mut acc = replay_lemma(&Relation::parse(&format!("{} = 1", stage(0)))?, &map)?;
    for (i, hole) in holes.iter().enumerate() {
        let step = Relation::parse(&format!("{} {hole} t_a1 t_a1 = {} t_a1 t_a1", stage(i), stage(i + 1)))?;
        acc.add_scaled(&replay_lemma(&step, &map)?, -1);
    }
    let mut out = RelationRow::new(format!("region lemma, boundary {boundary}"));
    for (t, c) in acc.coefficients {
        match t {
            Term::Curve(n) if n == stage(holes.len()) => out.add_term(Term::Curve(boundary.to_string()), c),
            other => out.add_term(other, c),
        }
    }
    Ok(out)
}

/// Finite abelian group `⊕ Z/d_i ⊕ Z^free_rank`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub invariant_factors: Vec<i64>,
    pub free_rank: usize,
}

impl AbelianGroup {
    /// `Some(m)` when the group is `Z_2^m`.
    pub fn elementary_two_rank(&self) -> Option<usize> {
        (self.free_rank == 0 && self.invariant_factors.iter().all(|&d| d == 2)).then_some(self.invariant_factors.len())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = self.elementary_two_rank() {
            return if m == 0 { f.write_str("0") } else { write!(f, "Z2^{m}") };
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z{d}")).collect();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Cokernel of the integer matrix whose rows are relations on `cols` generators.
pub fn cokernel(rows: &IntMatrix, cols: usize) -> Result<(AbelianGroup, Snf), AbelianError> {
    let snf = smith_normal_form(rows)?;
    let group = AbelianGroup {
        invariant_factors: snf.invariant_factors(),
        free_rank: cols - snf.rank(),
    };
    Ok((group, snf))
}

/// Cokernel of `rows` over the generators `basis`.
pub fn group_of(rows: &[RelationRow], basis: &[ClassSymbol]) -> Result<AbelianGroup, AbelianError> {
    let matrix: IntMatrix = rows
        .iter()
        .map(|r| r.vector(basis).ok_or_else(|| AbelianError::UnknownCurve(r.to_string())))
        .collect::<Result<_, _>>()?;
    Ok(cokernel(&matrix, basis.len())?.0)
}

/// Rank of `H_1` in closed form (all factors are 2).
pub fn closed_form_rank(spec: &SurfaceSpec) -> usize {
    let (g, s) = (spec.g, spec.s as i64);
    let free_slides = (spec.n - spec.k) as i64;
    let m: i64 = match spec.kind {
        GroupKind::M => match g {
            3 if s == 0 => 4,
            3 => s + 3,
            4 if s == 0 => 5,
            4 => s + 4,
            5 | 6 => 4,
            _ => 3,
        },
        _ => match g {
            3 if s == 0 => 2 + free_slides,
            3 => 1 + free_slides + s,
            4 if s == 0 => 3 + free_slides,
            4 => 2 + free_slides + s,
            5 | 6 => 2 + free_slides,
            _ => 1 + free_slides,
        },
    };
    m as usize
}

/// Surviving basis symbols: rows reduced mod 2 with pivots taken from the
/// right, so later symbols are eliminated first.
fn surviving_basis(rows: &IntMatrix, basis: &[ClassSymbol]) -> Vec<ClassSymbol> {
    let mut m: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(2) as u8).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut next_row = 0;
    for col in (0..basis.len()).rev() {
        let Some(p) = (next_row..m.len()).find(|&i| m[i][col] == 1) else { continue };
        m.swap(next_row, p);
        for i in 0..m.len() {
            if i != next_row && m[i][col] == 1 {
                let src = m[next_row].clone();
                for (x, y) in m[i].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        pivot_cols.push(col);
        next_row += 1;
    }
    basis
        .iter()
        .enumerate()
        .filter(|(i, _)| !pivot_cols.contains(i))
        .map(|(_, c)| *c)
        .collect()
}

/// Rank over `Z_2`.
pub fn rank_mod2(rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|x| x & 1).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] == 1) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][col] == 1 {
                let src = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Result of an `H_1` computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Result {
    pub spec: SurfaceSpec,
    pub group: AbelianGroup,
    /// Basis symbols before relations.
    pub generators: Vec<ClassSymbol>,
    /// Symbols whose classes form a basis of `H_1` (meaningful when the
    /// group is elementary abelian of exponent 2).
    pub basis: Vec<ClassSymbol>,
    pub rows: Vec<RelationRow>,
    pub expected_rank: usize,
    pub character_rank: usize,
    pub verified: bool,
}

impl H1Result {
    /// JSON form: `{spec, invariant_factors, free_rank, basis, character_rank, verified}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "spec": self.spec,
            "invariant_factors": self.group.invariant_factors,
            "free_rank": self.group.free_rank,
            "basis": self.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "character_rank": self.character_rank,
            "verified": self.verified,
        })
    }
}

/// `H_1(spec)` from the installed relation rows, checked against the closed
/// form and the character lower bound.
pub fn h1(spec: &SurfaceSpec) -> Result<H1Result, AbelianError> {
    spec.validate()?;
    let generators = class_basis(spec)?;
    let rows = relation_rows(spec)?;
    let matrix: IntMatrix = rows
        .iter()
        .map(|r| r.vector(&generators).ok_or_else(|| AbelianError::UnknownCurve(r.to_string())))
        .collect::<Result<_, _>>()?;
    let (group, _) = cokernel(&matrix, generators.len())?;
    let basis = surviving_basis(&matrix, &generators);
    let (_, character_rank) = characters::certified_suite(spec, &rows, &basis)?;
    let expected_rank = closed_form_rank(spec);
    let verified = group.elementary_two_rank() == Some(expected_rank)
        && basis.len() == expected_rank
        && character_rank == expected_rank;
    Ok(H1Result {
        spec: *spec,
        group,
        generators,
        basis,
        rows,
        expected_rank,
        character_rank,
        verified,
    })
}
