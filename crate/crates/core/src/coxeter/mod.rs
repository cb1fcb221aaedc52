//! Finite Coxeter groups through faithful permutation models.

pub(crate) mod matrix;
mod model;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use smallvec::SmallVec;
use thiserror::Error;

pub use matrix::{CoxeterMatrix, INFINITY, MAX_RANK};
pub use model::ComponentKind;
use model::Component;

use crate::parabolic::GeneratorSubset;

/// Default cap on the number of elements any enumeration may produce.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("Coxeter matrix must have rank at least 1")]
    EmptyMatrix,
    #[error("rank {0} exceeds the supported maximum of {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("row {row} has {len} entries, expected {rank}")]
    RaggedRow { row: usize, len: usize, rank: usize },
    #[error("matrix is not symmetric: m(s{i},s{j}) = {a} but m(s{j},s{i}) = {b}")]
    Asymmetric { i: usize, j: usize, a: u32, b: u32 },
    #[error("diagonal entry m(s{i},s{i}) must be 1, found {m}")]
    Diagonal { i: usize, m: u32 },
    #[error("off-diagonal entry m(s{i},s{j}) must be at least 2, found {m}")]
    OffDiagonal { i: usize, j: usize, m: u32 },
    #[error("m(s{i},s{j}) is infinite; only finite Coxeter groups are supported")]
    Infinite { i: usize, j: usize },
    #[error("unsupported Coxeter matrix: {0}")]
    Unsupported(String),
    #[error("relation (s{i} s{j})^{m} = 1 does not hold with exact order {m} in the model")]
    RelationFailed { i: usize, j: usize, m: u32 },
    #[error("enumeration exceeds the element budget of {0}")]
    BudgetExceeded(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("generator index {index} out of range 1..={rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("generator subsets overlap in {{{0}}}")]
    Overlap(String),
}

/// A group element as the images of the model's points.
///
/// Values are only meaningful relative to the group that produced them.
/// Mixing elements of different groups is a programming error and panics on
/// a size mismatch.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxeterElement(SmallVec<[u8; 16]>);

impl CoxeterElement {
    /// Raw point images, `images()[p]` being the image of point `p`.
    pub fn images(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CoxeterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[derive(Debug)]
pub struct CoxeterGroup {
    matrix: CoxeterMatrix,
    components: Vec<Component>,
    /// generator index -> (component, position in component)
    location: Vec<(usize, usize)>,
    degree: usize,
    generators: Vec<CoxeterElement>,
    w0: CoxeterElement,
    w0_conjugation: Vec<usize>,
    budget: usize,
    elements: OnceLock<Result<Vec<CoxeterElement>, CoxeterError>>,
}

impl Clone for CoxeterGroup {
    fn clone(&self) -> Self {
        CoxeterGroup {
            matrix: self.matrix.clone(),
            components: self.components.clone(),
            location: self.location.clone(),
            degree: self.degree,
            generators: self.generators.clone(),
            w0: self.w0.clone(),
            w0_conjugation: self.w0_conjugation.clone(),
            budget: self.budget,
            elements: OnceLock::new(),
        }
    }
}

impl CoxeterGroup {
    /// Builds the group of a supported matrix and checks every relation
    /// `(st)^{m(s,t)} = 1` with exact order in the model.
    pub fn new(matrix: CoxeterMatrix) -> Result<Self, CoxeterError> {
        let components = model::classify(&matrix)?;
        let rank = matrix.rank();
        let mut location = vec![(0, 0); rank];
        for (ci, comp) in components.iter().enumerate() {
            for (pos, &g) in comp.nodes.iter().enumerate() {
                location[g] = (ci, pos);
            }
        }
        let degree = components.iter().map(Component::degree).sum();
        let mut group = CoxeterGroup {
            matrix,
            components,
            location,
            degree,
            generators: Vec::new(),
            w0: CoxeterElement(SmallVec::new()),
            w0_conjugation: Vec::new(),
            budget: DEFAULT_BUDGET,
            elements: OnceLock::new(),
        };
        group.generators = (0..rank).map(|g| group.build_generator(g)).collect();
        group.check_relations()?;
        group.w0 = group.greedy_ascent(GeneratorSubset::full(rank));
        group.w0_conjugation = (0..rank)
            .map(|g| {
                let c = group.multiply(&group.multiply(&group.w0, &group.generators[g]), &group.w0);
                group.generators.iter().position(|s| *s == c).expect("w0 s w0 is a generator")
            })
            .collect();
        Ok(group)
    }

    /// The trivial group `A0` acting on a single point.
    pub fn trivial() -> Self {
        let id = CoxeterElement(SmallVec::from_elem(0, 1));
        CoxeterGroup {
            matrix: CoxeterMatrix::empty(),
            components: vec![Component::new(ComponentKind::A(0), Vec::new(), 0)],
            location: Vec::new(),
            degree: 1,
            generators: Vec::new(),
            w0: id,
            w0_conjugation: Vec::new(),
            budget: DEFAULT_BUDGET,
            elements: OnceLock::new(),
        }
    }

    /// Same group with a different element budget.
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self.elements = OnceLock::new();
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Number of points the permutation model acts on.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Irreducible components as (kind, generator indices in model order).
    pub fn components(&self) -> Vec<(ComponentKind, Vec<usize>)> {
        self.components.iter().map(|c| (c.kind, c.nodes.clone())).collect()
    }

    /// Type name such as `A3`, `B2 x A1` or `I2(5)`.
    pub fn type_name(&self) -> String {
        let names: Vec<String> = self.components.iter().map(|c| c.kind.name()).collect();
        names.join(" x ")
    }

    /// `|W|` from the product formula; no enumeration needed.
    pub fn order(&self) -> u128 {
        self.components.iter().map(|c| c.kind.order()).product()
    }

    fn build_generator(&self, g: usize) -> CoxeterElement {
        let mut w = self.identity();
        let (ci, pos) = self.location[g];
        let comp = &self.components[ci];
        for p in 0..comp.degree() {
            w.0[comp.offset + p] = (comp.offset + comp.generator_image(pos, p)) as u8;
        }
        w
    }

    fn check_relations(&self) -> Result<(), CoxeterError> {
        let id = self.identity();
        for i in 0..self.rank() {
            let s = &self.generators[i];
            if *s == id || self.multiply(s, s) != id {
                return Err(CoxeterError::RelationFailed { i: i + 1, j: i + 1, m: 1 });
            }
            for j in i + 1..self.rank() {
                let m = self.matrix.get(i, j);
                let st = self.multiply(s, &self.generators[j]);
                let mut p = st.clone();
                let mut order = 1u32;
                while p != id {
                    p = self.multiply(&p, &st);
                    order += 1;
                    if order > m {
                        break;
                    }
                }
                if order != m {
                    return Err(CoxeterError::RelationFailed { i: i + 1, j: j + 1, m });
                }
            }
        }
        Ok(())
    }

    pub fn identity(&self) -> CoxeterElement {
        CoxeterElement((0..self.degree).map(|p| p as u8).collect())
    }

    /// The simple reflection with 0-based index `g`.
    pub fn generator(&self, g: usize) -> &CoxeterElement {
        &self.generators[g]
    }

    pub fn generators(&self) -> &[CoxeterElement] {
        &self.generators
    }

    pub fn is_identity(&self, w: &CoxeterElement) -> bool {
        w.0.iter().enumerate().all(|(p, &q)| p == q as usize)
    }

    /// `u · v`, acting as `(u·v)(p) = u(v(p))`.
    pub fn multiply(&self, u: &CoxeterElement, v: &CoxeterElement) -> CoxeterElement {
        assert_eq!(u.0.len(), v.0.len(), "elements from different groups");
        CoxeterElement(v.0.iter().map(|&q| u.0[q as usize]).collect())
    }

    pub fn inverse(&self, w: &CoxeterElement) -> CoxeterElement {
        let mut inv = SmallVec::from_elem(0u8, w.0.len());
        for (p, &q) in w.0.iter().enumerate() {
            inv[q as usize] = p as u8;
        }
        CoxeterElement(inv)
    }

    /// Product of generators; indices are 0-based.
    pub fn from_word(&self, word: &[usize]) -> CoxeterElement {
        let mut w = self.identity();
        for &g in word {
            w = self.mul_generator_right(&w, g);
        }
        w
    }

    /// Parses a space-separated 1-based word such as `1 2 1`.
    pub fn parse_word(&self, text: &str) -> Result<CoxeterElement, CoxeterError> {
        let word = parse_word_indices(text, self.rank())?;
        Ok(self.from_word(&word))
    }

    pub fn mul_generator_right(&self, w: &CoxeterElement, g: usize) -> CoxeterElement {
        self.multiply(w, &self.generators[g])
    }

    pub fn mul_generator_left(&self, g: usize, w: &CoxeterElement) -> CoxeterElement {
        self.multiply(&self.generators[g], w)
    }

    fn local<'a>(&self, comp: &Component, w: &'a CoxeterElement) -> &'a [u8] {
        &w.0[comp.offset..comp.offset + comp.degree()]
    }

    pub fn length(&self, w: &CoxeterElement) -> u32 {
        self.components.iter().map(|c| c.length(self.local(c, w))).sum()
    }

    pub fn is_right_descent(&self, w: &CoxeterElement, g: usize) -> bool {
        let (ci, pos) = self.location[g];
        let comp = &self.components[ci];
        comp.is_right_descent(self.local(comp, w), pos)
    }

    pub fn is_left_descent(&self, g: usize, w: &CoxeterElement) -> bool {
        self.is_right_descent(&self.inverse(w), g)
    }

    /// `{s : ℓ(ws) < ℓ(w)}`.
    pub fn right_descents(&self, w: &CoxeterElement) -> GeneratorSubset {
        let mut d = GeneratorSubset::empty();
        for g in 0..self.rank() {
            if self.is_right_descent(w, g) {
                d.insert(g);
            }
        }
        d
    }

    /// `{s : ℓ(sw) < ℓ(w)}`.
    pub fn left_descents(&self, w: &CoxeterElement) -> GeneratorSubset {
        self.right_descents(&self.inverse(w))
    }

    /// Reduced word (0-based), stripping the lowest-index left descent first.
    pub fn reduced_word(&self, w: &CoxeterElement) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while let Some(g) = self.left_descents(&cur).lowest() {
            word.push(g);
            cur = self.mul_generator_left(g, &cur);
        }
        word
    }

    /// Set of generators occurring in any reduced word of `w`.
    pub fn support(&self, w: &CoxeterElement) -> GeneratorSubset {
        let mut s = GeneratorSubset::empty();
        for g in self.reduced_word(w) {
            s.insert(g);
        }
        s
    }

    /// Bruhat order via the lifting recursion: for a left descent `s` of `v`,
    /// `u ≤ v` iff `min(u, su) ≤ sv`.
    pub fn bruhat_leq(&self, u: &CoxeterElement, v: &CoxeterElement) -> bool {
        let mut lu = self.length(u);
        let mut lv = self.length(v);
        let mut u = u.clone();
        let mut v = v.clone();
        loop {
            if lu > lv {
                return false;
            }
            if lu == 0 {
                return true;
            }
            if lu == lv {
                return u == v;
            }
            let vinv = self.inverse(&v);
            let uinv = self.inverse(&u);
            let s = (0..self.rank()).find(|&g| self.is_right_descent(&vinv, g)).expect("v is not the identity");
            if self.is_right_descent(&uinv, s) {
                u = self.mul_generator_left(s, &u);
                lu -= 1;
            }
            v = self.mul_generator_left(s, &v);
            lv -= 1;
        }
    }

    /// Left weak order: `ℓ(v) = ℓ(u) + ℓ(vu⁻¹)`.
    pub fn weak_leq_left(&self, u: &CoxeterElement, v: &CoxeterElement) -> bool {
        let vu = self.multiply(v, &self.inverse(u));
        self.length(v) == self.length(u) + self.length(&vu)
    }

    /// Right weak order: `ℓ(v) = ℓ(u) + ℓ(u⁻¹v)`.
    pub fn weak_leq_right(&self, u: &CoxeterElement, v: &CoxeterElement) -> bool {
        let uv = self.multiply(&self.inverse(u), v);
        self.length(v) == self.length(u) + self.length(&uv)
    }

    pub fn longest_element(&self) -> &CoxeterElement {
        &self.w0
    }

    /// Index of the generator `w0 s_g w0`.
    pub fn w0_conjugate_generator(&self, g: usize) -> usize {
        self.w0_conjugation[g]
    }

    /// `w0 I w0` as a generator set.
    pub fn w0_conjugate_subset(&self, set: GeneratorSubset) -> GeneratorSubset {
        let mut out = GeneratorSubset::empty();
        for g in set.iter() {
            out.insert(self.w0_conjugation[g]);
        }
        out
    }

    /// Multiplies on the right by any non-descent in `set` until none remain.
    pub(crate) fn greedy_ascent(&self, set: GeneratorSubset) -> CoxeterElement {
        let mut w = self.identity();
        while let Some(g) = set.iter().find(|&g| !self.is_right_descent(&w, g)) {
            w = self.mul_generator_right(&w, g);
        }
        w
    }

    /// All elements sorted by length, then reduced word. Cached after the
    /// first call; fails if `|W|` exceeds the budget.
    pub fn enumerate(&self) -> Result<&[CoxeterElement], CoxeterError> {
        self.elements
            .get_or_init(|| self.bfs(GeneratorSubset::full(self.rank()), self.budget))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// BFS over right multiplication by generators in `set`.
    pub(crate) fn bfs(&self, set: GeneratorSubset, budget: usize) -> Result<Vec<CoxeterElement>, CoxeterError> {
        let id = self.identity();
        let mut seen: HashSet<CoxeterElement> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for g in set.iter() {
                let next = self.mul_generator_right(&w, g);
                if seen.insert(next.clone()) {
                    if out.len() >= budget {
                        return Err(CoxeterError::BudgetExceeded(budget));
                    }
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        out.sort_by_cached_key(|w| (self.length(w), self.reduced_word(w)));
        Ok(out)
    }

    /// Human-readable canonical value: one-line notation per component.
    pub fn display(&self, w: &CoxeterElement) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let local: Vec<usize> = self.local(c, w).iter().map(|&q| q as usize - c.offset).collect();
                match c.kind {
                    ComponentKind::A(_) => {
                        let v: Vec<String> = local.iter().map(|q| (q + 1).to_string()).collect();
                        format!("[{}]", v.join(","))
                    }
                    ComponentKind::B(n) => {
                        let v: Vec<String> = local[..n]
                            .iter()
                            .map(|&q| if q < n { (q + 1).to_string() } else { format!("-{}", q - n + 1) })
                            .collect();
                        format!("[{}]", v.join(","))
                    }
                    ComponentKind::Dihedral(m) => {
                        let m = m as usize;
                        let k = local[0];
                        let flip = local[1] == (k + m - 1) % m;
                        format!("(r{k},{})", if flip { "f" } else { "1" })
                    }
                }
            })
            .collect();
        parts.join("x")
    }

    /// One-line images of `w` on the points of an `A_{n-1}` group, 1-based.
    /// `None` unless the group is a single type-A component.
    pub fn one_line(&self, w: &CoxeterElement) -> Option<Vec<usize>> {
        match self.components.as_slice() {
            [c] if matches!(c.kind, ComponentKind::A(_)) => Some(w.0.iter().map(|&q| q as usize + 1).collect()),
            _ => None,
        }
    }

    /// Inverse of [`CoxeterGroup::one_line`].
    pub fn from_one_line(&self, images: &[usize]) -> Option<CoxeterElement> {
        self.one_line(&self.identity())?;
        if images.len() != self.degree {
            return None;
        }
        let mut seen = vec![false; self.degree];
        let mut out = SmallVec::new();
        for &i in images {
            if i == 0 || i > self.degree || seen[i - 1] {
                return None;
            }
            seen[i - 1] = true;
            out.push((i - 1) as u8);
        }
        Some(CoxeterElement(out))
    }

    /// Word serialized with 1-based indices, e.g. `1 2 1`.
    pub fn format_word(word: &[usize]) -> String {
        let v: Vec<String> = word.iter().map(|g| (g + 1).to_string()).collect();
        v.join(" ")
    }
}

/// Parses `1 2 1` into 0-based indices.
pub fn parse_word_indices(text: &str, rank: usize) -> Result<Vec<usize>, CoxeterError> {
    text.split_whitespace()
        .map(|tok| {
            let i: usize = tok
                .parse()
                .map_err(|_| CoxeterError::Parse { line: 1, message: format!("invalid generator `{tok}` in word") })?;
            if i == 0 || i > rank {
                return Err(CoxeterError::GeneratorOutOfRange { index: i, rank });
            }
            Ok(i - 1)
        })
        .collect()
}

#[cfg(test)]
mod tests;
