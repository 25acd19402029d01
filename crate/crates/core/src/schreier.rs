//! Schreier generators for a finite-index subgroup.
//!
//! The subgroup is the kernel of a homomorphism from the free group on an
//! alphabet `X` onto an explicitly given finite group `Q`. A transversal
//! assigns one word to every element of `Q`; for each pair `(u, x)` the
//! word `u · x · rep(u x)^-1` lies in the kernel, and the nontrivial ones
//! generate it.
//!
//! A pair is discarded exactly when its Schreier word freely reduces to the
//! empty word. For prefix-closed transversals this is the usual `ux ∈ U`
//! test.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{self, CatalogError, GeneratorName, SurfaceSpec};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchreierError {
    #[error("quotient is not a group: {0}")]
    NotAGroup(String),
    #[error("unknown quotient element {0:?}")]
    UnknownElement(String),
    #[error("unknown alphabet symbol {0:?}")]
    UnknownSymbol(String),
    #[error("image of {0:?} is missing or not well-defined")]
    BadImage(String),
    #[error("transversal is not a bijection onto the quotient: {0}")]
    TransversalNotBijective(String),
    #[error("transversal word for {element:?} maps to {got:?}")]
    TransversalImage { element: String, got: String },
    #[error("transversal word for the identity must be empty")]
    IdentityNotEmpty,
    #[error("Schreier word {0} is not in the kernel")]
    NotInKernel(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// `table[a][b]` is the product `a · b`.
    pub fn from_table(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, SchreierError> {
        let n = elements.len();
        if n == 0 {
            return Err(SchreierError::NotAGroup("no elements".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(SchreierError::NotAGroup("table is not square over the elements".into()));
        }
        let mut names = elements.clone();
        names.sort();
        names.dedup();
        if names.len() != n {
            return Err(SchreierError::NotAGroup("duplicate element names".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| SchreierError::NotAGroup("no identity".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| SchreierError::NotAGroup(format!("{} has no inverse", elements[a])))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(SchreierError::NotAGroup("not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            elements,
            table,
            identity,
            inverses,
        })
    }

    /// Table over element names, as in the JSON input.
    pub fn from_named_table(elements: Vec<String>, table: &[Vec<String>]) -> Result<Self, SchreierError> {
        let index: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let numeric = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| index.get(x.as_str()).copied().ok_or_else(|| SchreierError::UnknownElement(x.clone())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        FiniteGroup::from_table(elements, numeric)
    }

    /// Cyclic group `Z_n` with elements `"0"`, …, `"n-1"`.
    pub fn cyclic(n: usize) -> Self {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(elements, table).expect("Z_n is a group")
    }

    /// Group generated by permutations of `0..degree`, listed in
    /// breadth-first order from the identity. Products are functional:
    /// `(p · q)(i) = p(q(i))`. Returns the group and the element index of
    /// each generator.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<(Self, Vec<usize>), SchreierError> {
        let degree = gens.first().map_or(0, Vec::len);
        for p in gens {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(SchreierError::NotAGroup("generator is not a permutation".into()));
            }
        }
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
        let id: Vec<usize> = (0..degree).collect();
        let mut perms = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for g in gens {
                let p = compose(&perms[a], g);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), perms.len());
                    queue.push_back(perms.len());
                    perms.push(p);
                }
            }
        }
        let n = perms.len();
        let table = (0..n)
            .map(|a| (0..n).map(|b| index[&compose(&perms[a], &perms[b])]).collect())
            .collect();
        let elements = perms.iter().map(|p| cycle_notation(p)).collect();
        let group = FiniteGroup::from_table(elements, table)?;
        let gen_idx = gens.iter().map(|g| index[g]).collect();
        Ok((group, gen_idx))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }
}

/// 1-based cycle notation, e.g. `(1 2)(3 4)`; `()` for the identity.
fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut i = p[start];
        while i != start {
            seen[i] = true;
            cycle.push(i + 1);
            i = p[i];
        }
        let parts: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// One emitted Schreier generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierGenerator {
    /// Quotient element whose representative is `u`.
    pub coset: usize,
    /// 1-based alphabet index of `x`.
    pub letter: u32,
    pub word: Word,
}

/// Alphabet, finite quotient, letter images and a word transversal.
#[derive(Debug, Clone)]
pub struct CosetSystem {
    alphabet: Vec<String>,
    group: FiniteGroup,
    images: Vec<usize>,
    /// Indexed by quotient element.
    transversal: Vec<Word>,
    /// Quotient elements in the order the transversal was supplied.
    order: Vec<usize>,
}

impl CosetSystem {
    /// `transversal` lists `(element, word)` pairs; words are over the
    /// alphabet (letter `i` is `alphabet[i-1]`).
    pub fn new(
        alphabet: Vec<String>,
        group: FiniteGroup,
        images: Vec<usize>,
        transversal: Vec<(usize, Word)>,
    ) -> Result<Self, SchreierError> {
        if images.len() != alphabet.len() {
            return Err(SchreierError::BadImage(format!(
                "{} images for {} symbols",
                images.len(),
                alphabet.len()
            )));
        }
        if let Some(i) = images.iter().position(|&q| q >= group.len()) {
            return Err(SchreierError::BadImage(alphabet[i].clone()));
        }
        let mut slots: Vec<Option<Word>> = vec![None; group.len()];
        let mut order = Vec::with_capacity(group.len());
        for (q, w) in transversal {
            if q >= group.len() {
                return Err(SchreierError::UnknownElement(q.to_string()));
            }
            if w.max_generator() as usize > alphabet.len() {
                return Err(SchreierError::UnknownSymbol(format!("x{}", w.max_generator())));
            }
            if slots[q].is_some() {
                return Err(SchreierError::TransversalNotBijective(format!(
                    "{} listed twice",
                    group.name(q)
                )));
            }
            slots[q] = Some(w);
            order.push(q);
        }
        let transversal = slots
            .into_iter()
            .enumerate()
            .map(|(q, w)| {
                w.ok_or_else(|| SchreierError::TransversalNotBijective(format!("{} has no representative", group.name(q))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let sys = CosetSystem {
            alphabet,
            group,
            images,
            transversal,
            order,
        };
        if !sys.transversal[sys.group.identity()].is_empty() {
            return Err(SchreierError::IdentityNotEmpty);
        }
        for q in 0..sys.group.len() {
            let got = sys.image_of(&sys.transversal[q]);
            if got != q {
                return Err(SchreierError::TransversalImage {
                    element: sys.group.name(q).to_string(),
                    got: sys.group.name(got).to_string(),
                });
            }
        }
        Ok(sys)
    }

    /// Transversal by breadth-first search from the identity, trying the
    /// letters in alphabet order.
    pub fn with_bfs_transversal(alphabet: Vec<String>, group: FiniteGroup, images: Vec<usize>) -> Result<Self, SchreierError> {
        let mut reps: Vec<Option<Word>> = vec![None; group.len()];
        let mut transversal = Vec::with_capacity(group.len());
        let id = group.identity();
        reps[id] = Some(Word::identity());
        transversal.push((id, Word::identity()));
        let mut queue = VecDeque::from([id]);
        while let Some(q) = queue.pop_front() {
            let base = reps[q].clone().expect("queued elements have representatives");
            for (i, &img) in images.iter().enumerate() {
                if img >= group.len() {
                    return Err(SchreierError::BadImage(alphabet[i].clone()));
                }
                let target = group.mul(q, img);
                if reps[target].is_none() {
                    let w = base.mul(&Word::generator(i as u32 + 1));
                    reps[target] = Some(w.clone());
                    transversal.push((target, w));
                    queue.push_back(target);
                }
            }
        }
        if transversal.len() != group.len() {
            return Err(SchreierError::TransversalNotBijective(
                "letter images do not generate the quotient".into(),
            ));
        }
        CosetSystem::new(alphabet, group, images, transversal)
    }

    pub fn from_json(input: &CosetSystemJson) -> Result<Self, SchreierError> {
        let group = FiniteGroup::from_named_table(input.quotient.elements.clone(), &input.quotient.table)?;
        let alphabet = input.alphabet.clone();
        let mut images = Vec::with_capacity(alphabet.len());
        for sym in &alphabet {
            let target = input.images.get(sym).ok_or_else(|| SchreierError::BadImage(sym.clone()))?;
            images.push(group.find(target).ok_or_else(|| SchreierError::UnknownElement(target.clone()))?);
        }
        for key in input.images.keys() {
            if !alphabet.contains(key) {
                return Err(SchreierError::UnknownSymbol(key.clone()));
            }
        }
        let mut transversal = Vec::with_capacity(input.transversal.len());
        for (name, tokens) in &input.transversal {
            let q = group.find(name).ok_or_else(|| SchreierError::UnknownElement(name.clone()))?;
            transversal.push((q, parse_tokens(&alphabet, tokens)?));
        }
        // JSON objects carry no order; list representatives by element order.
        transversal.sort_by_key(|(q, _)| *q);
        CosetSystem::new(alphabet, group, images, transversal)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Image of a word in the quotient, multiplying letter images left to right.
    pub fn image_of(&self, w: &Word) -> usize {
        w.letters().iter().fold(self.group.identity(), |acc, l| {
            let img = self.images[l.generator as usize - 1];
            let img = if l.inverse { self.group.inv(img) } else { img };
            self.group.mul(acc, img)
        })
    }

    pub fn coset_rep(&self, q: usize) -> Result<&Word, SchreierError> {
        self.transversal
            .get(q)
            .ok_or_else(|| SchreierError::UnknownElement(q.to_string()))
    }

    pub fn coset_rep_by_name(&self, name: &str) -> Result<&Word, SchreierError> {
        let q = self.group.find(name).ok_or_else(|| SchreierError::UnknownElement(name.to_string()))?;
        self.coset_rep(q)
    }

    /// Nontrivial Schreier generators in (transversal order) × (alphabet order).
    /// Every emitted word is checked to map to the identity.
    pub fn schreier_generators(&self) -> Result<Vec<SchreierGenerator>, SchreierError> {
        let mut out = Vec::new();
        for &q in &self.order {
            let u = &self.transversal[q];
            for x in 1..=self.alphabet.len() as u32 {
                let target = self.group.mul(q, self.images[x as usize - 1]);
                let word = u.mul(&Word::generator(x)).mul(&self.transversal[target].inverse());
                if word.is_empty() {
                    continue;
                }
                if self.image_of(&word) != self.group.identity() {
                    return Err(SchreierError::NotInKernel(self.render(&word)));
                }
                out.push(SchreierGenerator { coset: q, letter: x, word });
            }
        }
        Ok(out)
    }

    /// Render a word with alphabet names, `^-1` marking inverses.
    pub fn render(&self, w: &Word) -> String {
        render_word(&self.alphabet, w)
    }

    pub fn to_json(&self) -> CosetSystemJson {
        let g = &self.group;
        CosetSystemJson {
            alphabet: self.alphabet.clone(),
            quotient: QuotientJson {
                elements: g.elements.clone(),
                table: g
                    .table
                    .iter()
                    .map(|row| row.iter().map(|&x| g.name(x).to_string()).collect())
                    .collect(),
            },
            images: self
                .alphabet
                .iter()
                .zip(&self.images)
                .map(|(a, &q)| (a.clone(), g.name(q).to_string()))
                .collect(),
            transversal: self
                .order
                .iter()
                .map(|&q| (g.name(q).to_string(), word_tokens(&self.alphabet, &self.transversal[q])))
                .collect(),
        }
    }
}

pub fn render_word(alphabet: &[String], w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    word_tokens(alphabet, w).join(" ")
}

fn word_tokens(alphabet: &[String], w: &Word) -> Vec<String> {
    w.letters()
        .iter()
        .map(|l| {
            let name = &alphabet[l.generator as usize - 1];
            if l.inverse {
                format!("{name}^-1")
            } else {
                name.clone()
            }
        })
        .collect()
}

/// Parse `["v1", "t_a1", "v1^-1"]` against an alphabet.
pub fn parse_tokens(alphabet: &[String], tokens: &[String]) -> Result<Word, SchreierError> {
    let mut letters = Vec::with_capacity(tokens.len());
    for t in tokens {
        let (name, inverse) = match t.strip_suffix("^-1") {
            Some(stem) => (stem, true),
            None => (t.as_str(), false),
        };
        let i = alphabet
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| SchreierError::UnknownSymbol(t.clone()))?;
        letters.push(Letter::new(i as u32 + 1, if inverse { -1 } else { 1 }));
    }
    Ok(Word::from_letters(&letters))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientJson {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

/// On-disk form of a [`CosetSystem`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetSystemJson {
    pub alphabet: Vec<String>,
    pub quotient: QuotientJson,
    pub images: BTreeMap<String, String>,
    pub transversal: BTreeMap<String, Vec<String>>,
}

/// Index-2 system taking `PM^{k-1}` to `PM^k`: the alphabet is the
/// generating set of `prev`, the slide `v_{s+k}` maps to the nontrivial
/// element of `Z_2` and `U = {1, v_{s+k}}`.
pub fn pm_descent_system(prev: &SurfaceSpec) -> Result<CosetSystem, SchreierError> {
    prev.validate()?;
    if prev.is_full() || prev.k >= prev.n {
        return Err(SchreierError::BadImage(format!("{prev} has no slide to descend along")));
    }
    let set = catalog::generating_set(prev)?;
    let slide = GeneratorName::SlideV(prev.s + prev.k + 1);
    let names = set.names();
    let images: Vec<usize> = set.members.iter().map(|m| usize::from(*m == slide)).collect();
    let pos = set.members.iter().position(|m| *m == slide).expect("slide is a generator") as u32 + 1;
    CosetSystem::new(
        names,
        FiniteGroup::cyclic(2),
        images,
        vec![(0, Word::identity()), (1, Word::generator(pos))],
    )
}

/// One level of the descent `PM^0 ⊇ PM^1 ⊇ … ⊇ PM^n`.
#[derive(Debug, Clone)]
pub struct TowerLevel {
    pub k: u32,
    /// Generators as words over the `PM^0` generating set.
    pub generators: Vec<Word>,
}

/// Raw Schreier descent from the `PM` generating set through every puncture.
/// The image of a generator at step `k` is the parity of `v_{s+k}` in it;
/// no simplification is applied between steps.
pub fn pm_tower(g: u32, s: u32, n: u32) -> Result<(Vec<String>, Vec<TowerLevel>), SchreierError> {
    let base_spec = SurfaceSpec::pure(g, s, n, 0)?;
    let base = catalog::generating_set(&base_spec)?;
    let names = base.names();
    let mut current: Vec<Word> = (1..=names.len() as u32).map(Word::generator).collect();
    let mut levels = vec![TowerLevel { k: 0, generators: current.clone() }];
    for k in 1..=n {
        let slide_idx = base
            .members
            .iter()
            .position(|m| *m == GeneratorName::SlideV(s + k))
            .expect("PM set holds every slide") as u32
            + 1;
        let images: Vec<usize> = current
            .iter()
            .map(|w| (w.exponent_sums(names.len() as u32)[slide_idx as usize - 1].rem_euclid(2)) as usize)
            .collect();
        let rep = current
            .iter()
            .position(|w| *w == Word::generator(slide_idx))
            .expect("v_{s+k} survives earlier steps unchanged") as u32
            + 1;
        let alphabet: Vec<String> = (1..=current.len()).map(|i| format!("g{i}")).collect();
        let sys = CosetSystem::new(
            alphabet,
            FiniteGroup::cyclic(2),
            images,
            vec![(0, Word::identity()), (1, Word::generator(rep))],
        )?;
        let next = sys
            .schreier_generators()?
            .into_iter()
            .map(|sg| expand(&current, &sg.word))
            .collect::<Vec<_>>();
        current = next;
        levels.push(TowerLevel { k, generators: current.clone() });
    }
    Ok((names, levels))
}

/// Substitute alphabet letters by their words.
fn expand(letters: &[Word], w: &Word) -> Word {
    w.letters().iter().fold(Word::identity(), |acc, l| {
        let piece = &letters[l.generator as usize - 1];
        acc.mul(&if l.inverse { piece.inverse() } else { piece.clone() })
    })
}

/// Generating-set sizes along the descent `PM^0 ⊇ … ⊇ PM^n`.
pub fn iterate_pm_tower(g: u32, s: u32, n: u32) -> Result<Vec<usize>, SchreierError> {
    let (_, levels) = pm_tower(g, s, n)?;
    Ok(levels.iter().map(|l| l.generators.len()).collect())
}
