//! `Z_2`-valued characters certifying the lower bound for `H_1`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{rank_mod2, relation_rows, AbelianError, ClassSymbol, RelationRow, Term};
use crate::catalog::{GroupKind, SurfaceSpec};

/// A homomorphism to `Z_2`, given by its values on class symbols (absent
/// symbols map to 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Character {
    pub name: String,
    pub values: BTreeMap<ClassSymbol, u8>,
}

impl Character {
    fn new(name: impl Into<String>, ones: &[ClassSymbol]) -> Self {
        Character {
            name: name.into(),
            values: ones.iter().map(|&c| (c, 1)).collect(),
        }
    }

    pub fn value(&self, c: ClassSymbol) -> u8 {
        self.values.get(&c).copied().unwrap_or(0)
    }

    /// Value on a relation row, mod 2. Curve terms are not allowed.
    pub fn evaluate(&self, row: &RelationRow) -> Result<u8, AbelianError> {
        let mut acc = 0i64;
        for (t, &k) in &row.coefficients {
            match t {
                Term::Class(c) => acc += k * i64::from(self.value(*c)),
                Term::Curve(n) => return Err(AbelianError::UnknownCurve(n.clone())),
            }
        }
        Ok(acc.rem_euclid(2) as u8)
    }
}

/// Characters for `spec`: closed-surface components, orientation
/// characters at punctures, permutation sign and boundary-capping maps.
pub fn characters(spec: &SurfaceSpec) -> Vec<Character> {
    use ClassSymbol::*;
    let (g, s) = (spec.g, spec.s);
    let mut out = Vec::new();
    if (3..=6).contains(&g) {
        out.push(Character::new("Phi_A", &[A]));
    }
    if g == 4 {
        out.push(Character::new("Phi_B", &[B]));
    }
    out.push(Character::new("Phi_Y", &[Y]));
    if spec.kind == GroupKind::M {
        out.push(Character::new("Psi", &[VAll]));
        out.push(Character::new("Theta", &[SigmaAll]));
    } else {
        for j in spec.slide_range() {
            out.push(Character::new(format!("Psi_{j}"), &[V(j)]));
        }
    }
    if g == 3 || g == 4 {
        for j in 1..s {
            out.push(Character::new(format!("Upsilon_{j}"), &[U(j), U(s)]));
        }
    }
    out
}

/// Check every character against `rows` and return the `Z_2` rank of the
/// value matrix on `basis`.
pub fn certified_suite(
    spec: &SurfaceSpec,
    rows: &[RelationRow],
    basis: &[ClassSymbol],
) -> Result<(Vec<Character>, usize), AbelianError> {
    let chars = characters(spec);
    for ch in &chars {
        for row in rows {
            if ch.evaluate(row)? != 0 {
                return Err(AbelianError::CharacterNotAnnihilating {
                    character: ch.name.clone(),
                    source_lemma: row.source.clone(),
                });
            }
        }
    }
    let matrix: Vec<Vec<u8>> = chars.iter().map(|ch| basis.iter().map(|&b| ch.value(b)).collect()).collect();
    let rank = rank_mod2(&matrix);
    Ok((chars, rank))
}

/// Characters and their rank on the surviving basis.
pub fn character_suite(spec: &SurfaceSpec) -> Result<(Vec<Character>, usize), AbelianError> {
    let rows = relation_rows(spec)?;
    let h = super::h1(spec)?;
    certified_suite(spec, &rows, &h.basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ClassSymbol::*;

    #[test]
    fn g3_closed() {
        let (chars, rank) = character_suite(&SurfaceSpec::pure(3, 0, 2, 2).unwrap()).unwrap();
        assert_eq!(chars.len(), 2);
        assert_eq!(rank, 2);
    }

    #[test]
    fn upsilon_on_boundary_sum() {
        let spec = SurfaceSpec::pure(3, 3, 0, 0).unwrap();
        let ups = characters(&spec).into_iter().find(|c| c.name == "Upsilon_1").unwrap();
        let row = RelationRow::from_classes("sum", &[(U(1), 1), (U(2), 1), (U(3), 1)]);
        assert_eq!(ups.evaluate(&row).unwrap(), 0);
        assert_eq!(ups.value(U(2)), 0);
    }

    #[test]
    fn full_g7() {
        let (chars, rank) = character_suite(&SurfaceSpec::full(7, 0, 2).unwrap()).unwrap();
        let names: Vec<_> = chars.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, vec!["Phi_Y", "Psi", "Theta"]);
        assert_eq!(rank, 3);
    }

    #[test]
    fn bad_character_detected() {
        let spec = SurfaceSpec::pure(7, 0, 0, 0).unwrap();
        let rows = relation_rows(&spec).unwrap();
        let bogus = Character::new("bogus", &[A]);
        assert_eq!(bogus.evaluate(&rows[0]).unwrap(), 1);
    }
}
