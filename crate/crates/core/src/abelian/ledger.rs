//! Homology lemmas as replayable data.
//!
//! Each entry lists the displayed relations of a lemma with integer
//! multipliers. Replaying every step and summing must give the stated
//! conclusion exactly; `relation_rows` installs the conclusions.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{region_row, replay_lemma, AbelianError, ClassMap, ClassSymbol, Relation, RelationRow, Term};
use crate::catalog::{GroupKind, SurfaceSpec};
use crate::lantern::HoledDiskModel;

/// One step of a lemma proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Step {
    /// A displayed relation between named mapping classes.
    Replay(String),
    /// The region lemma for boundary indices, puncture indices and the
    /// name of the region boundary.
    Region { theta: Vec<u32>, omega: Vec<u32>, boundary: String },
    /// The conclusion of an earlier entry with this id.
    Lemma(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaEntry {
    pub id: String,
    pub statement: String,
    /// Auxiliary mapping classes (conjugators, local crosscap slides).
    pub aux: Vec<String>,
    pub steps: Vec<(i64, Step)>,
    pub conclusion: RelationRow,
    /// Whether the conclusion is a relation of `H_1` (as opposed to an
    /// intermediate fact about a named curve, or a consistency check).
    pub installs: bool,
}

/// Outcome of replaying one entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReplay {
    pub id: String,
    pub replayed: RelationRow,
    pub conclusion: RelationRow,
    pub passed: bool,
}

fn entry(id: &str, statement: String, aux: &[&str], steps: Vec<(i64, Step)>, conclusion: RelationRow, installs: bool) -> LemmaEntry {
    let mut conclusion = conclusion;
    conclusion.source = id.to_string();
    LemmaEntry {
        id: id.to_string(),
        statement,
        aux: aux.iter().map(|s| s.to_string()).collect(),
        steps,
        conclusion,
        installs,
    }
}

fn replay(text: impl Into<String>) -> (i64, Step) {
    (1, Step::Replay(text.into()))
}

fn scaled(k: i64, text: impl Into<String>) -> (i64, Step) {
    (k, Step::Replay(text.into()))
}

fn curve_row(name: &str, k: i64) -> RelationRow {
    let mut row = RelationRow::new("");
    row.add_term(Term::Curve(name.to_string()), k);
    row
}

/// Every lemma that applies to `spec`, in installation order.
pub fn lemma_entries(spec: &SurfaceSpec) -> Vec<LemmaEntry> {
    use ClassSymbol::*;
    let (g, s, r) = (spec.g, spec.s, spec.r());
    let full = spec.kind == GroupKind::M;
    let mut out = Vec::new();

    if g >= 7 {
        out.push(entry(
            "a-trivial",
            "[t_a1] = 0 for g >= 7 (lantern with all seven twists conjugate to t_a1)".into(),
            &[],
            vec![replay("t_a1 t_a1 t_a1 t_a1 = t_a1 t_a1 t_a1")],
            RelationRow::from_classes("", &[(A, 1)]),
            true,
        ));
    } else {
        out.push(entry(
            "a-order-two",
            "t_a1 is conjugate to its inverse, so 2[t_a1] = 0".into(),
            &["f"],
            vec![replay("f t_a1 f^-1 = t_a1^-1")],
            RelationRow::from_classes("", &[(A, 2)]),
            true,
        ));
    }

    if spec.is_even() {
        let b = format!("t_b{}", r + 1);
        if g >= 6 {
            out.push(entry(
                "b-trivial",
                format!("[{b}] = 0 for g >= 6 (lantern with one twist {b}, six conjugate to t_a1)"),
                &[],
                vec![replay(format!("{b} t_a1 t_a1 t_a1 = t_a1 t_a1 t_a1"))],
                RelationRow::from_classes("", &[(B, 1)]),
                true,
            ));
        } else {
            out.push(entry(
                "b-order-two",
                format!("{b} is conjugate to its inverse, so 2[{b}] = 0"),
                &["f"],
                vec![replay(format!("f {b} f^-1 = {b}^-1"))],
                RelationRow::from_classes("", &[(B, 2)]),
                true,
            ));
        }
    }

    out.push(entry(
        "y-order-two",
        "y is conjugate to its inverse, so 2[y] = 0".into(),
        &["f"],
        vec![replay("f y f^-1 = y^-1")],
        RelationRow::from_classes("", &[(Y, 2)]),
        true,
    ));

    let slide_indices: Vec<u32> = if full {
        vec![s + 1]
    } else {
        spec.slide_range().collect()
    };
    for j in slide_indices {
        let class = if full { VAll } else { V(j) };
        out.push(entry(
            &format!("v{j}-order-two"),
            format!("2[v{j}] = [v{j}^2] = [t_h{j}^-1] = 0"),
            &[],
            vec![
                replay(format!("v{j} v{j} = t_h{j}^-1")),
                replay(format!("t_a{r} t_omega{j} = t_h{j} t_omega t_nu{r},{j}")),
            ],
            RelationRow::from_classes("", &[(class, 2)]),
            true,
        ));
    }

    if full {
        let np = s + spec.n;
        for j in s + 1..np {
            out.push(entry(
                &format!("v{}-conjugate", j + 1),
                format!("v{} = sigma{j}^-1 v{j} sigma{j}", j + 1),
                &[],
                vec![replay(format!("v{} = sigma{j}^-1 v{j} sigma{j}", j + 1))],
                RelationRow::new(""),
                false,
            ));
        }
        for j in s + 1..np.saturating_sub(1) {
            out.push(entry(
                &format!("sigma{}-conjugate", j + 1),
                format!("sigma{} = (sigma{j} sigma{}) sigma{j} (sigma{j} sigma{})^-1", j + 1, j + 1, j + 1),
                &[],
                vec![replay(format!(
                    "sigma{} = sigma{j} sigma{} sigma{j} sigma{}^-1 sigma{j}^-1",
                    j + 1,
                    j + 1,
                    j + 1
                ))],
                RelationRow::new(""),
                false,
            ));
        }
        let (p, q) = (s + 1, s + 2);
        out.push(entry(
            "sigma-order-two",
            format!("sigma{p}^2 is the twist about a region boundary around z{p} and z{q}, so [sigma{p}^2] = 0"),
            &[],
            vec![
                replay(format!("sigma{p} sigma{p} = t_eps{p},{q}")),
                (
                    1,
                    Step::Region {
                        theta: vec![],
                        omega: vec![p, q],
                        boundary: format!("eps{p},{q}"),
                    },
                ),
            ],
            RelationRow::from_classes("", &[(SigmaAll, 2)]),
            true,
        ));
    }

    for j in 1..=s {
        if g >= 5 {
            out.push(entry(
                &format!("u{j}-trivial"),
                format!("[t_u{j}] = 0 for g >= 5 (lantern with one twist t_u{j}, six conjugate to t_a1)"),
                &[],
                vec![replay(format!("t_u{j} t_a1 t_a1 t_a1 = t_a1 t_a1 t_a1"))],
                RelationRow::from_classes("", &[(U(j), 1)]),
                true,
            ));
        } else {
            out.push(entry(
                &format!("u{j}-order-two"),
                format!("[t_u{j}] = [t_eta{j}] and t_eta{j} is conjugate to its inverse, so 2[t_u{j}] = 0"),
                &["f"],
                vec![
                    scaled(2, format!("t_u{j} t_a1 t_a1 = t_eta{j} t_a1 t_a1")),
                    replay(format!("f t_eta{j} f^-1 = t_eta{j}^-1")),
                ],
                RelationRow::from_classes("", &[(U(j), 2)]),
                true,
            ));
        }
    }

    if (g == 3 || g == 4) && s >= 1 {
        let mut steps = Vec::new();
        for i in 1..=3 {
            steps.push(scaled(-1, format!("y_{i} y_{i} = t_kappa{i}")));
            steps.push(replay(format!("f y_{i} f^-1 = y_{i}^-1")));
        }
        steps.push(replay("t_kappa = t_kappa1 t_kappa2 t_kappa3"));
        out.push(entry(
            "kappa-trivial",
            "t_kappa_i = y_i^2 with y_i conjugate to its inverse, and the lantern [t_kappa] = [t_kappa1 t_kappa2 t_kappa3] give [t_kappa] = 0".into(),
            &["f", "y_1", "y_2", "y_3"],
            steps,
            curve_row("kappa", 1),
            false,
        ));
        let mut sum = RelationRow::new("");
        for j in 1..=s {
            sum.add_term(Term::Class(U(j)), 1);
        }
        out.push(entry(
            "boundary-sum",
            "[t_u1] + ... + [t_us] = [t_kappa] = 0".into(),
            &[],
            vec![
                (1, Step::Lemma("kappa-trivial".into())),
                (
                    -1,
                    Step::Region {
                        theta: (1..=s).collect(),
                        omega: (s + 1..=s + spec.n).collect(),
                        boundary: "kappa".into(),
                    },
                ),
            ],
            sum,
            true,
        ));
    }

    out
}

fn replay_entry(
    spec: &SurfaceSpec,
    e: &LemmaEntry,
    done: &BTreeMap<String, RelationRow>,
) -> Result<RelationRow, AbelianError> {
    let map = ClassMap::new(spec)?.with_aux(e.aux.iter().cloned());
    let mut acc = RelationRow::new(e.id.clone());
    for (k, step) in &e.steps {
        let row = match step {
            Step::Replay(text) => replay_lemma(&Relation::parse(text)?, &map)?,
            Step::Region { theta, omega, boundary } => region_row(spec, theta, omega, boundary)?,
            Step::Lemma(id) => done
                .get(id)
                .cloned()
                .ok_or_else(|| AbelianError::UnknownCurve(format!("lemma {id}")))?,
        };
        acc.add_scaled(&row, *k);
    }
    Ok(acc)
}

/// Replay every applicable lemma and compare with its stated conclusion.
pub fn verify_lemmas(spec: &SurfaceSpec) -> Result<Vec<LemmaReplay>, AbelianError> {
    spec.validate()?;
    let mut done = BTreeMap::new();
    let mut out = Vec::new();
    for e in lemma_entries(spec) {
        let replayed = replay_entry(spec, &e, &done)?;
        let passed = replayed.same_relation(&e.conclusion);
        if passed {
            done.insert(e.id.clone(), e.conclusion.clone());
        }
        out.push(LemmaReplay {
            id: e.id,
            replayed,
            conclusion: e.conclusion,
            passed,
        });
    }
    Ok(out)
}

/// Installed relation rows: `2A`/`A`, `2B`/`B`, `2Y`, `2V`, `2Sigma`,
/// `2U`/`U`, then the boundary sum.
pub fn relation_rows(spec: &SurfaceSpec) -> Result<Vec<RelationRow>, AbelianError> {
    spec.validate()?;
    Ok(lemma_entries(spec)
        .into_iter()
        .filter(|e| e.installs && !e.conclusion.is_zero())
        .map(|e| e.conclusion)
        .collect())
}

/// Abelianize the lantern of the holed-disk model after assigning a
/// catalog curve to each of its seven circles.
pub fn lantern_projection(
    spec: &SurfaceSpec,
    model: &HoledDiskModel,
    assign: &BTreeMap<&str, &str>,
) -> Result<RelationRow, AbelianError> {
    let side = |names: &[&str]| -> Result<String, AbelianError> {
        names
            .iter()
            .map(|n| {
                assign
                    .get(n)
                    .map(|c| format!("t_{c}"))
                    .ok_or_else(|| AbelianError::UnknownCurve(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|v| v.join(" "))
    };
    let text = format!("{} = {}", side(&model.lhs_names())?, side(&model.rhs_names())?);
    replay_lemma(&Relation::parse(&text)?, &ClassMap::new(spec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lantern::frozen_convention;
    use ClassSymbol::*;

    fn rows_of(spec: SurfaceSpec) -> Vec<Vec<(Term, i64)>> {
        relation_rows(&spec)
            .unwrap()
            .into_iter()
            .map(|r| r.coefficients.into_iter().collect())
            .collect()
    }

    fn cls(entries: &[(ClassSymbol, i64)]) -> Vec<(Term, i64)> {
        entries.iter().map(|&(c, k)| (Term::Class(c), k)).collect()
    }

    #[test]
    fn rows_g7() {
        let spec = SurfaceSpec::pure(7, 0, 1, 0).unwrap();
        assert_eq!(rows_of(spec), vec![cls(&[(A, 1)]), cls(&[(Y, 2)]), cls(&[(V(1), 2)])]);
    }

    #[test]
    fn rows_g3_one_boundary() {
        let spec = SurfaceSpec::pure(3, 1, 0, 0).unwrap();
        assert_eq!(
            rows_of(spec),
            vec![cls(&[(A, 2)]), cls(&[(Y, 2)]), cls(&[(U(1), 2)]), cls(&[(U(1), 1)])]
        );
    }

    #[test]
    fn rows_full_g4() {
        let spec = SurfaceSpec::full(4, 2, 2).unwrap();
        assert_eq!(
            rows_of(spec),
            vec![
                cls(&[(A, 2)]),
                cls(&[(B, 2)]),
                cls(&[(Y, 2)]),
                cls(&[(VAll, 2)]),
                cls(&[(SigmaAll, 2)]),
                cls(&[(U(1), 2)]),
                cls(&[(U(2), 2)]),
                cls(&[(U(1), 1), (U(2), 1)]),
            ]
        );
    }

    #[test]
    fn no_boundary_sum_without_boundary() {
        let spec = SurfaceSpec::pure(3, 0, 2, 0).unwrap();
        assert!(lemma_entries(&spec).iter().all(|e| e.id != "boundary-sum"));
    }

    #[test]
    fn all_lemmas_replay() {
        for spec in [
            SurfaceSpec::pure(4, 2, 3, 1).unwrap(),
            SurfaceSpec::pure(3, 3, 0, 0).unwrap(),
            SurfaceSpec::full(6, 2, 4).unwrap(),
            SurfaceSpec::full(3, 1, 2).unwrap(),
            SurfaceSpec::pure(8, 1, 2, 2).unwrap(),
        ] {
            for r in verify_lemmas(&spec).unwrap() {
                assert!(r.passed, "{spec}: {} replayed {} expected {}", r.id, r.replayed, r.conclusion);
            }
        }
    }

    #[test]
    fn wrong_conclusion_is_caught() {
        let spec = SurfaceSpec::pure(3, 0, 0, 0).unwrap();
        let mut e = lemma_entries(&spec).remove(0);
        e.conclusion = RelationRow::from_classes("a", &[(A, 1)]);
        let got = replay_entry(&spec, &e, &BTreeMap::new()).unwrap();
        assert!(!got.same_relation(&e.conclusion));
    }

    #[test]
    fn lantern_projection_matches_rows() {
        let model = HoledDiskModel::lantern(frozen_convention()).unwrap();
        let circles = ["a0", "a1", "a2", "a3", "a12", "a13", "a23"];
        let spec = SurfaceSpec::pure(7, 0, 0, 0).unwrap();
        let all_a: BTreeMap<&str, &str> = circles.iter().map(|c| (*c, "a1")).collect();
        let row = lantern_projection(&spec, &model, &all_a).unwrap();
        assert!(row.same_relation(&relation_rows(&spec).unwrap()[0]));

        let spec = SurfaceSpec::pure(6, 0, 0, 0).unwrap();
        let mut with_b = all_a.clone();
        with_b.insert("a0", "b3");
        let row = lantern_projection(&spec, &model, &with_b).unwrap();
        assert!(row.same_relation(&RelationRow::from_classes("", &[(B, 1)])));
    }
}
