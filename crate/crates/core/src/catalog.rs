//! Surfaces `N_{g,s}^n`, the standard curve families and the named
//! generating sets of the pure, orientation-at-punctures and full mapping
//! class groups.
//!
//! Twists are stored by curve name only. The direction of each twist is
//! fixed geometrically by a choice of local orientation that has no
//! canonical form on a nonorientable surface, so no sign convention is
//! recorded here.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("genus must be at least 3, got {0}")]
    GenusTooSmall(u32),
    #[error("k = {k} must satisfy 0 <= k <= n = {n}")]
    KOutOfRange { k: u32, n: u32 },
    #[error("the full mapping class group needs n >= 2 punctures, got {0}")]
    FullNeedsTwoPunctures(u32),
    #[error("kind {kind} is inconsistent with k = {k}")]
    KindMismatch { kind: GroupKind, k: u32 },
    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("unknown group kind {0:?} (expected pm, pmk or m)")]
    UnknownKind(String),
}

/// Which mapping class group of the surface is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    /// Pure group: fixes every puncture.
    Pm,
    /// Pure, and preserves local orientation at the first `k >= 1` punctures.
    Pmk,
    /// Full group: may permute punctures.
    M,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Pm => "pm",
            GroupKind::Pmk => "pmk",
            GroupKind::M => "m",
        })
    }
}

impl FromStr for GroupKind {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pm" => Ok(GroupKind::Pm),
            "pmk" => Ok(GroupKind::Pmk),
            "m" => Ok(GroupKind::M),
            _ => Err(CatalogError::UnknownKind(s.to_string())),
        }
    }
}

/// `N_{g,s}^n` together with the group kind and `k`.
///
/// For the full group `k` carries no meaning and must be 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub g: u32,
    pub s: u32,
    pub n: u32,
    pub k: u32,
    pub kind: GroupKind,
}

impl SurfaceSpec {
    pub fn new(kind: GroupKind, g: u32, s: u32, n: u32, k: u32) -> Result<Self, CatalogError> {
        let spec = SurfaceSpec { g, s, n, k, kind };
        spec.validate()?;
        Ok(spec)
    }

    pub fn pure(g: u32, s: u32, n: u32, k: u32) -> Result<Self, CatalogError> {
        let kind = if k == 0 { GroupKind::Pm } else { GroupKind::Pmk };
        SurfaceSpec::new(kind, g, s, n, k)
    }

    pub fn full(g: u32, s: u32, n: u32) -> Result<Self, CatalogError> {
        SurfaceSpec::new(GroupKind::M, g, s, n, 0)
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        if self.g < 3 {
            return Err(CatalogError::GenusTooSmall(self.g));
        }
        if self.k > self.n {
            return Err(CatalogError::KOutOfRange { k: self.k, n: self.n });
        }
        match self.kind {
            GroupKind::Pm if self.k != 0 => Err(CatalogError::KindMismatch { kind: self.kind, k: self.k }),
            GroupKind::Pmk if self.k == 0 => Err(CatalogError::KindMismatch { kind: self.kind, k: self.k }),
            GroupKind::M if self.k != 0 => Err(CatalogError::KindMismatch { kind: self.kind, k: self.k }),
            GroupKind::M if self.n < 2 => Err(CatalogError::FullNeedsTwoPunctures(self.n)),
            _ => Ok(()),
        }
    }

    pub fn is_even(&self) -> bool {
        self.g.is_multiple_of(2)
    }

    /// `r` with `g = 2r+1` or `g = 2r+2`.
    pub fn r(&self) -> u32 {
        (self.g - 1) / 2
    }

    /// Punctures of the capped surface `N_g^{n+s}`.
    pub fn capped_punctures(&self) -> u32 {
        self.n + self.s
    }

    pub fn is_full(&self) -> bool {
        self.kind == GroupKind::M
    }

    /// Indices of the punctures that carry a slide generator.
    pub fn slide_range(&self) -> std::ops::RangeInclusive<u32> {
        match self.kind {
            GroupKind::M => self.s + 1..=self.s + 1,
            _ => self.s + self.k + 1..=self.s + self.n,
        }
    }

    /// Number of `f` circles in the generating set.
    pub fn f_count(&self) -> u32 {
        match self.kind {
            GroupKind::M => self.s,
            _ => self.s + self.k,
        }
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::Pm => write!(f, "PM(N_{{{},{}}}^{})", self.g, self.s, self.n),
            GroupKind::Pmk => write!(f, "PM^{}(N_{{{},{}}}^{})", self.k, self.g, self.s, self.n),
            GroupKind::M => write!(f, "M(N_{{{},{}}}^{})", self.g, self.s, self.n),
        }
    }
}

/// Symbolic name of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorName {
    TwistA(u32),
    TwistB(u32),
    TwistC(u32),
    TwistD(u32),
    TwistE(u32),
    TwistF(u32),
    TwistU(u32),
    TwistLambda,
    CrosscapY,
    SlideV(u32),
    SlideW(u32),
    Braid(u32),
}

impl GeneratorName {
    pub fn is_twist(&self) -> bool {
        !matches!(
            self,
            GeneratorName::CrosscapY
                | GeneratorName::SlideV(_)
                | GeneratorName::SlideW(_)
                | GeneratorName::Braid(_)
        )
    }

    /// Curve name of a twist generator (`a1`, `lambda`, ...).
    pub fn curve(&self) -> Option<String> {
        use GeneratorName::*;
        Some(match *self {
            TwistA(i) => format!("a{i}"),
            TwistB(i) => format!("b{i}"),
            TwistC(i) => format!("c{i}"),
            TwistD(i) => format!("d{i}"),
            TwistE(i) => format!("e{i}"),
            TwistF(i) => format!("f{i}"),
            TwistU(i) => format!("u{i}"),
            TwistLambda => "lambda".to_string(),
            _ => return None,
        })
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GeneratorName::*;
        match *self {
            CrosscapY => f.write_str("y"),
            SlideV(j) => write!(f, "v{j}"),
            SlideW(j) => write!(f, "w{j}"),
            Braid(j) => write!(f, "sigma{j}"),
            _ => write!(f, "t_{}", self.curve().unwrap_or_default()),
        }
    }
}

fn split_index(s: &str) -> Option<(&str, u32)> {
    let pos = s.find(|c: char| c.is_ascii_digit())?;
    let (head, tail) = s.split_at(pos);
    let idx: u32 = tail.parse().ok()?;
    (idx > 0).then_some((head, idx))
}

impl FromStr for GeneratorName {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use GeneratorName::*;
        let err = || CatalogError::UnknownGenerator(s.to_string());
        match s {
            "y" => return Ok(CrosscapY),
            "t_lambda" => return Ok(TwistLambda),
            _ => {}
        }
        let (head, i) = split_index(s).ok_or_else(err)?;
        Ok(match head {
            "t_a" => TwistA(i),
            "t_b" => TwistB(i),
            "t_c" => TwistC(i),
            "t_d" => TwistD(i),
            "t_e" => TwistE(i),
            "t_f" => TwistF(i),
            "t_u" => TwistU(i),
            "v" => SlideV(i),
            "w" => SlideW(i),
            "sigma" => Braid(i),
            _ => return Err(err()),
        })
    }
}

impl Serialize for GeneratingSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("GeneratingSet", 4)?;
        st.serialize_field("spec", &self.spec)?;
        let names: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        st.serialize_field("members", &names)?;
        st.serialize_field("count", &self.members.len())?;
        st.serialize_field("source_theorem", &self.source_theorem)?;
        st.end()
    }
}

/// How a curve's twist enters the homology computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassTag {
    /// Nonseparating, two-sided, with nonorientable complement: its twist is
    /// conjugate to `t_{a1}`.
    NonsepNonorientComplement,
    /// Parallel to a boundary component.
    BoundaryParallel,
    /// Separates the surface into two nonorientable pieces: the twist is
    /// conjugate to its inverse.
    SeparatingBothNonorientable,
    /// Handled by a dedicated argument.
    Special,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    pub name: String,
    pub class_tag: ClassTag,
    pub provenance: Option<String>,
}

/// The generating set of one mapping class group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    pub spec: SurfaceSpec,
    pub members: Vec<GeneratorName>,
    pub source_theorem: &'static str,
}

impl GeneratingSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &GeneratorName) -> bool {
        self.members.contains(g)
    }

    pub fn names(&self) -> Vec<String> {
        self.members.iter().map(|m| m.to_string()).collect()
    }
}

/// The curve family `C` on `N_g^n` (closed surface with `n` punctures).
pub fn curve_set_c(g: u32, n: u32) -> Result<Vec<GeneratorName>, CatalogError> {
    use GeneratorName::*;
    if g < 3 {
        return Err(CatalogError::GenusTooSmall(g));
    }
    let r = (g - 1) / 2;
    let even = g.is_multiple_of(2);
    let b_count = if even { r + 1 } else { r };
    let c_count = if even { r } else { r - 1 };
    let mut out = Vec::new();
    out.extend((1..=r).map(TwistA));
    out.extend((1..=b_count).map(TwistB));
    out.extend((1..=c_count).map(TwistC));
    out.extend((1..=r).map(TwistD));
    out.extend((1..n).map(TwistE));
    Ok(out)
}

/// Size of `C` in closed form.
pub fn curve_set_c_size(g: u32, n: u32) -> usize {
    (2 * g - 3 + n.saturating_sub(1)) as usize
}

/// Closed-form size of the generating set returned by [`generating_set`].
pub fn generating_set_size(spec: &SurfaceSpec) -> usize {
    let c = curve_set_c_size(spec.g, spec.capped_punctures());
    let lambda = usize::from(spec.is_even());
    let s = spec.s as usize;
    let n = spec.n as usize;
    let k = spec.k as usize;
    match spec.kind {
        GroupKind::M => c + s + s + 1 + (n - 1) + 1 + lambda,
        _ => c + (s + k) + s + (n - k) + 1 + lambda,
    }
}

/// Generating set of the group described by `spec`.
///
/// `C` is taken on the capped surface `N_g^{n+s}`; the `f` and `u` twists,
/// the slides, the braids, `y` and (for even genus) `t_lambda` follow.
pub fn generating_set(spec: &SurfaceSpec) -> Result<GeneratingSet, CatalogError> {
    use GeneratorName::*;
    spec.validate()?;
    let mut members = curve_set_c(spec.g, spec.capped_punctures())?;
    members.extend((1..=spec.f_count()).map(TwistF));
    members.extend((1..=spec.s).map(TwistU));
    members.extend(spec.slide_range().map(SlideV));
    if spec.is_full() {
        members.extend((spec.s + 1..spec.s + spec.n).map(Braid));
    }
    members.push(CrosscapY);
    if spec.is_even() {
        members.push(TwistLambda);
    }
    let source_theorem = match spec.kind {
        GroupKind::M => "full-group-with-braids",
        _ if spec.s > 0 => "pure-k-with-boundary",
        GroupKind::Pmk => "pure-k-punctured",
        _ if spec.is_even() => "pure-punctured-even-lambda",
        _ => "pure-punctured",
    };
    Ok(GeneratingSet {
        spec: *spec,
        members,
        source_theorem,
    })
}

/// The older generating set of `PM(N_g^n)` in which even genus uses the
/// slides `w_j` instead of `t_lambda`.
pub fn slide_pair_generating_set(g: u32, n: u32) -> Result<GeneratingSet, CatalogError> {
    use GeneratorName::*;
    let spec = SurfaceSpec::pure(g, 0, n, 0)?;
    let mut members = curve_set_c(g, n)?;
    members.extend((1..=n).map(SlideV));
    if spec.is_even() {
        members.extend((1..=n).map(SlideW));
    }
    members.push(CrosscapY);
    Ok(GeneratingSet {
        spec,
        members,
        source_theorem: "pure-punctured-slide-pairs",
    })
}

/// Table of every named curve on a given surface, with class tags.
#[derive(Debug, Clone)]
pub struct CurveCatalog {
    spec: SurfaceSpec,
    records: BTreeMap<String, CurveRecord>,
}

fn rec(name: String, class_tag: ClassTag, provenance: Option<&str>) -> (String, CurveRecord) {
    (
        name.clone(),
        CurveRecord {
            name,
            class_tag,
            provenance: provenance.map(str::to_string),
        },
    )
}

impl CurveCatalog {
    pub fn new(spec: &SurfaceSpec) -> Result<Self, CatalogError> {
        use ClassTag::*;
        spec.validate()?;
        let r = spec.r();
        let np = spec.capped_punctures();
        let mut records = BTreeMap::new();
        let mut add = |(k, v): (String, CurveRecord)| {
            records.insert(k, v);
        };

        for gen in curve_set_c(spec.g, np)? {
            let name = gen.curve().expect("C holds twists only");
            let tag = if spec.is_even() && gen == GeneratorName::TwistB(r + 1) {
                Special
            } else {
                NonsepNonorientComplement
            };
            add(rec(name, tag, None));
        }
        for i in 1..=(spec.s + spec.n).max(1) {
            add(rec(format!("f{i}"), NonsepNonorientComplement, None));
        }
        for j in 1..=spec.s {
            add(rec(format!("u{j}"), BoundaryParallel, None));
        }
        add(rec("lambda".into(), NonsepNonorientComplement, Some("odd genus: lambda = t_{b_r}^{-1}(a_r)")));

        add(rec("xi".into(), SeparatingBothNonorientable, Some("y^2 = t_xi; xi cuts off a Klein bottle with one hole")));
        add(rec("xi'".into(), SeparatingBothNonorientable, Some("cuts off a Klein bottle containing b_{r+1}")));
        add(rec("kappa".into(), Special, Some("boundary of a region holding every puncture and boundary component; [t_kappa] = [t_kappa1 t_kappa2 t_kappa3]")));
        for i in 1..=3 {
            add(rec(format!("kappa{i}"), SeparatingBothNonorientable, Some("t_kappa_i = y_i^2 for a crosscap slide y_i on a Klein bottle with one hole")));
        }
        for j in 1..=spec.s {
            add(rec(format!("eta{j}"), SeparatingBothNonorientable, Some("lantern: t_{u_j} t_{a_1} t_{a_1} = t_{eta_j} t_{a_1} t_{a_1}")));
        }
        for j in 1..=np {
            add(rec(format!("h{j}"), Special, Some("v_j^2 = t_{h_j}^{-1}; lantern t_{a_r} t_{omega_j} = t_{h_j} t_omega t_{nu_{r,j}}")));
            add(rec(format!("delta{j}"), Special, Some("(t_{b_{r+1}}^{-1} w_j t_{b_{r+1}}) v_j^{-1} = t_{delta_j}^{-1}")));
            add(rec(format!("tau{j}"), NonsepNonorientComplement, Some("tau_j = t_{e_{r,j-1}} t_{e_{r,j}}^{-1}(tau)")));
            add(rec(format!("rho{j}"), NonsepNonorientComplement, Some("rho_k = t_{e_{r,k}}^{-1} t_{e_{r,k-1}}(rho)")));
            add(rec(format!("omega{j}"), NonsepNonorientComplement, Some("omega_k = t_{e_{r,k-1}} t_{e_{r,k}}^{-1}(omega)")));
            for i in 1..=r {
                add(rec(format!("nu{i},{j}"), NonsepNonorientComplement, Some("nu_{i,m} = t_{e_{i,m-1}} t_{a_i}(e_{i,m})")));
                add(rec(format!("mu{i},{j}"), NonsepNonorientComplement, Some("mu_{i,j} = t_{c_{i-1}} t_{a_i} t_{a_{i-1}} t_{c_{i-1}}(mu_{i-1,j}); mu_{r,j} = f_j")));
            }
        }
        for i in 1..=r {
            for j in 0..=np {
                add(rec(
                    format!("e{i},{j}"),
                    NonsepNonorientComplement,
                    Some("e_{i,j} = t_{a_i} t_{c_{i-1}} t_{a_{i-1}} t_{b_i}^{-1} t_{a_i}^{-1} t_{c_{i-1}}^{-1} t_{b_{i-1}} t_{a_{i-1}}^{-1}(e_{i-1,j}); e_{0,0} = b_1, e_{0,n} = d_1, e_{0,i} = e_i"),
                ));
            }
        }
        for k in 1..=np {
            for j in k + 1..=np {
                add(rec(format!("eps{k},{j}"), Special, Some("v_j^{-1}(v_k v_j v_k^{-1}) = t_{eps_{k,j}}^{-1}; boundary of a disk around z_k and z_j")));
                add(rec(format!("chi{k},{j}"), NonsepNonorientComplement, Some("chi_{k,j} = t_{e_{r,k}}^{-1} t_{e_{r,j}}^{-1} t_{e_{r,j-1}} t_{a_r}^{-1}(e_{r,k-1})")));
            }
        }
        add(rec("tau".into(), NonsepNonorientComplement, Some("tau = t_{d_r} t_{a_r}^2 t_{b_r} t_{d_r}(lambda)")));
        add(rec("rho".into(), NonsepNonorientComplement, Some("rho = t_{d_r} t_{a_r}(c_r)")));
        add(rec("omega".into(), NonsepNonorientComplement, Some("omega = t_{d_r}(lambda)")));
        add(rec("dDelta".into(), Special, Some("distinguished boundary of a region (disk holding punctures and boundary components)")));
        add(rec("dDelta'".into(), Special, Some("region boundary after adding one puncture or boundary component")));
        Ok(CurveCatalog {
            spec: *spec,
            records,
        })
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn get(&self, name: &str) -> Option<&CurveRecord> {
        self.records.get(name)
    }

    pub fn classify_curve(&self, name: &str) -> Result<ClassTag, CatalogError> {
        self.get(name)
            .map(|r| r.class_tag)
            .ok_or_else(|| CatalogError::UnknownCurve(name.to_string()))
    }

    pub fn records(&self) -> impl Iterator<Item = &CurveRecord> {
        self.records.values()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GeneratorName::*;

    #[test]
    fn curve_set_examples() {
        assert_eq!(curve_set_c(3, 2).unwrap(), vec![TwistA(1), TwistB(1), TwistD(1), TwistE(1)]);
        assert_eq!(curve_set_c(3, 0).unwrap(), vec![TwistA(1), TwistB(1), TwistD(1)]);
        assert_eq!(
            curve_set_c(4, 1).unwrap(),
            vec![TwistA(1), TwistB(1), TwistB(2), TwistC(1), TwistD(1)]
        );
        assert_eq!(curve_set_c(2, 1), Err(CatalogError::GenusTooSmall(2)));
    }

    #[test]
    fn curve_set_size_closed_form() {
        for g in 3..=12 {
            for n in 0..=6 {
                let c = curve_set_c(g, n).unwrap();
                assert_eq!(c.len(), curve_set_c_size(g, n), "g={g} n={n}");
                let expected = if n >= 1 { 2 * g - 4 + n } else { 2 * g - 3 };
                assert_eq!(c.len(), expected as usize);
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(SurfaceSpec::new(GroupKind::Pm, 3, 0, 0, 0).is_ok());
        assert_eq!(SurfaceSpec::new(GroupKind::Pm, 2, 0, 0, 0), Err(CatalogError::GenusTooSmall(2)));
        assert!(matches!(SurfaceSpec::new(GroupKind::Pm, 3, 0, 2, 1), Err(CatalogError::KindMismatch { .. })));
        assert!(matches!(SurfaceSpec::new(GroupKind::Pmk, 3, 0, 2, 0), Err(CatalogError::KindMismatch { .. })));
        assert!(matches!(SurfaceSpec::new(GroupKind::Pmk, 3, 0, 2, 3), Err(CatalogError::KOutOfRange { .. })));
        assert_eq!(SurfaceSpec::full(3, 0, 1), Err(CatalogError::FullNeedsTwoPunctures(1)));
        assert!(SurfaceSpec::full(3, 0, 2).is_ok());
    }

    #[test]
    fn generating_set_examples() {
        let pm = generating_set(&SurfaceSpec::pure(3, 0, 0, 0).unwrap()).unwrap();
        assert_eq!(pm.names(), ["t_a1", "t_b1", "t_d1", "y"]);

        let m = generating_set(&SurfaceSpec::full(3, 0, 2).unwrap()).unwrap();
        assert_eq!(m.names(), ["t_a1", "t_b1", "t_d1", "t_e1", "v1", "sigma1", "y"]);

        let even = generating_set(&SurfaceSpec::pure(4, 1, 1, 1).unwrap()).unwrap();
        assert_eq!(
            even.names(),
            ["t_a1", "t_b1", "t_b2", "t_c1", "t_d1", "t_e1", "t_f1", "t_f2", "t_u1", "y", "t_lambda"]
        );
        assert_eq!(even.len(), 11);
        assert_eq!(even.members.iter().filter(|m| m.is_twist()).count(), 10);
    }

    #[test]
    fn generating_set_size_formula_on_grid() {
        for g in 3..=12 {
            for s in 0..=4 {
                for n in 0..=5 {
                    for k in 0..=n {
                        let spec = SurfaceSpec::pure(g, s, n, k).unwrap();
                        let set = generating_set(&spec).unwrap();
                        assert_eq!(set.len(), generating_set_size(&spec));
                        let mut seen = set.members.clone();
                        seen.sort();
                        seen.dedup();
                        assert_eq!(seen.len(), set.len(), "duplicates in {spec}");
                    }
                    if n >= 2 {
                        let full = SurfaceSpec::full(g, s, n).unwrap();
                        let set = generating_set(&full).unwrap();
                        assert_eq!(set.len(), generating_set_size(&full));
                        // braids out, v_{s+2..s+n} in: the pure count.
                        let pure = generating_set(&SurfaceSpec::pure(g, s, n, 0).unwrap()).unwrap();
                        let braids = set.members.iter().filter(|m| matches!(m, Braid(_))).count();
                        assert_eq!(set.len() - braids + (n as usize - 1), pure.len());
                    }
                }
            }
        }
    }

    #[test]
    fn slide_pair_set_uses_w_for_even_genus() {
        let odd = slide_pair_generating_set(3, 2).unwrap();
        assert_eq!(odd.names(), ["t_a1", "t_b1", "t_d1", "t_e1", "v1", "v2", "y"]);
        let even = slide_pair_generating_set(4, 1).unwrap();
        assert!(even.contains(&SlideW(1)));
        assert!(!even.contains(&TwistLambda));
    }

    #[test]
    fn generator_names_round_trip() {
        for g in [TwistA(2), TwistLambda, CrosscapY, SlideV(4), SlideW(1), Braid(3), TwistU(2)] {
            assert_eq!(g.to_string().parse::<GeneratorName>().unwrap(), g);
        }
        assert!("t_q1".parse::<GeneratorName>().is_err());
        assert!("v0".parse::<GeneratorName>().is_err());
    }

    #[test]
    fn classify_examples() {
        let even = CurveCatalog::new(&SurfaceSpec::pure(4, 3, 2, 0).unwrap()).unwrap();
        assert_eq!(even.classify_curve("a1").unwrap(), ClassTag::NonsepNonorientComplement);
        assert_eq!(even.classify_curve("u2").unwrap(), ClassTag::BoundaryParallel);
        assert_eq!(even.classify_curve("b2").unwrap(), ClassTag::Special);
        assert_eq!(even.classify_curve("xi").unwrap(), ClassTag::SeparatingBothNonorientable);
        assert_eq!(even.classify_curve("eta1").unwrap(), ClassTag::SeparatingBothNonorientable);
        assert!(matches!(even.classify_curve("zz"), Err(CatalogError::UnknownCurve(_))));

        let odd = CurveCatalog::new(&SurfaceSpec::pure(5, 0, 0, 0).unwrap()).unwrap();
        assert_eq!(odd.classify_curve("b2").unwrap(), ClassTag::NonsepNonorientComplement);
        assert!(odd.classify_curve("b3").is_err());
        assert!(odd.get("e1,0").unwrap().provenance.is_some());
    }

    #[test]
    fn catalog_json_shape() {
        let set = generating_set(&SurfaceSpec::full(3, 0, 2).unwrap()).unwrap();
        let v = serde_json::to_value(&set).unwrap();
        assert_eq!(v["count"], 7);
        assert_eq!(v["members"][5], "sigma1");
        assert_eq!(v["spec"]["kind"], "m");
        assert_eq!(v["source_theorem"], "full-group-with-braids");
    }
}
