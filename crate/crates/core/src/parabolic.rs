//! Standard parabolic subgroups, minimal coset representatives and the
//! optimization operator `u∘v`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterElement, CoxeterError, CoxeterGroup, MAX_RANK};

/// A set of generators `I ⊆ S`, stored as a bitset over 0-based indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorSubset(u64);

impl GeneratorSubset {
    pub const fn empty() -> Self {
        GeneratorSubset(0)
    }

    pub fn full(rank: usize) -> Self {
        if rank >= MAX_RANK {
            GeneratorSubset(u64::MAX)
        } else {
            GeneratorSubset((1u64 << rank) - 1)
        }
    }

    pub fn singleton(g: usize) -> Self {
        GeneratorSubset(1 << g)
    }

    pub fn from_indices(rank: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self, CoxeterError> {
        let mut s = GeneratorSubset::empty();
        for g in indices {
            if g >= rank {
                return Err(CoxeterError::GeneratorOutOfRange { index: g + 1, rank });
            }
            s.insert(g);
        }
        Ok(s)
    }

    /// Parses `1,3` (1-based). Empty text, `-` and `{}` denote `∅`.
    pub fn parse(text: &str, rank: usize) -> Result<Self, CoxeterError> {
        let t = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if t.is_empty() || t == "-" {
            return Ok(GeneratorSubset::empty());
        }
        let mut s = GeneratorSubset::empty();
        for tok in t.split(',') {
            let tok = tok.trim();
            let i: usize = tok
                .parse()
                .map_err(|_| CoxeterError::Parse { line: 1, message: format!("invalid generator `{tok}` in subset") })?;
            if i == 0 || i > rank {
                return Err(CoxeterError::GeneratorOutOfRange { index: i, rank });
            }
            s.insert(i - 1);
        }
        Ok(s)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, g: usize) -> bool {
        g < MAX_RANK && self.0 & (1 << g) != 0
    }

    pub fn insert(&mut self, g: usize) {
        self.0 |= 1 << g;
    }

    pub fn remove(&mut self, g: usize) {
        self.0 &= !(1 << g);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn lowest(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: Self) -> Self {
        GeneratorSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GeneratorSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        GeneratorSubset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_RANK).filter(move |&g| bits & (1 << g) != 0)
    }

    /// Every subset of `S` for a group of the given rank.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = GeneratorSubset> {
        assert!(rank < 20, "too many subsets");
        (0u64..1 << rank).map(GeneratorSubset)
    }
}

impl fmt::Display for GeneratorSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        let v: Vec<String> = self.iter().map(|g| (g + 1).to_string()).collect();
        write!(f, "{}", v.join(","))
    }
}

impl fmt::Debug for GeneratorSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl CoxeterGroup {
    /// `w = w^I · w_I` with `w^I ∈ W^I` and `w_I ∈ W_I`, found by stripping
    /// right descents in `I`, lowest index first.
    pub fn project_right(&self, w: &CoxeterElement, set: GeneratorSubset) -> (CoxeterElement, CoxeterElement) {
        let mut min = w.clone();
        let mut par = self.identity();
        while let Some(g) = set.iter().find(|&g| self.is_right_descent(&min, g)) {
            min = self.mul_generator_right(&min, g);
            par = self.mul_generator_left(g, &par);
        }
        (min, par)
    }

    /// `w = w_I · ^I w`, the mirror of [`CoxeterGroup::project_right`].
    pub fn project_left(&self, set: GeneratorSubset, w: &CoxeterElement) -> (CoxeterElement, CoxeterElement) {
        let (min_inv, par_inv) = self.project_right(&self.inverse(w), set);
        (self.inverse(&par_inv), self.inverse(&min_inv))
    }

    /// `^I w^J`, the minimum of `W_I w W_J`, computed as `^I(w^J)`.
    pub fn project_double(&self, left: GeneratorSubset, w: &CoxeterElement, right: GeneratorSubset) -> CoxeterElement {
        let (wj, _) = self.project_right(w, right);
        self.project_left(left, &wj).1
    }

    /// `w = u · m · v` with `u ∈ W_I`, `m = ^I w^J`, `v ∈ W_J` and lengths
    /// adding. One such triple; uniqueness is not claimed.
    pub fn factor_double(
        &self,
        left: GeneratorSubset,
        w: &CoxeterElement,
        right: GeneratorSubset,
    ) -> (CoxeterElement, CoxeterElement, CoxeterElement) {
        let (wj, v) = self.project_right(w, right);
        let (u, m) = self.project_left(left, &wj);
        (u, m, v)
    }

    /// No left descent in `I` and no right descent in `J`.
    pub fn is_min_double_coset_rep(&self, w: &CoxeterElement, left: GeneratorSubset, right: GeneratorSubset) -> bool {
        self.left_descents(w).is_disjoint(left) && self.right_descents(w).is_disjoint(right)
    }

    /// Whether `w` lies in `W_I`.
    pub fn in_parabolic(&self, w: &CoxeterElement, set: GeneratorSubset) -> bool {
        self.support(w).is_subset(set)
    }

    /// The optimization operator: `max{u'v' : u' ≤ u, v' ≤ v}`.
    ///
    /// Peels the lowest left descent `s` of `u`, recursing on `su`, and keeps
    /// the larger of `x` and `sx` on the way back.
    pub fn circ(&self, u: &CoxeterElement, v: &CoxeterElement) -> CoxeterElement {
        let word = self.reduced_word(u);
        let mut x = v.clone();
        let mut lx = self.length(&x);
        for &s in word.iter().rev() {
            let sx = self.mul_generator_left(s, &x);
            let lsx = self.length(&sx);
            if lsx > lx {
                x = sx;
                lx = lsx;
            }
        }
        x
    }

    /// `m(s,t) = 2` for all `s ∈ I`, `t ∈ J`. The subsets must be disjoint.
    pub fn parabolics_commute(&self, left: GeneratorSubset, right: GeneratorSubset) -> Result<bool, CoxeterError> {
        let common = left.intersection(right);
        if !common.is_empty() {
            return Err(CoxeterError::Overlap(common.to_string()));
        }
        Ok(left.iter().all(|s| right.iter().all(|t| self.matrix().get(s, t) == 2)))
    }

    /// All of `W_I`, sorted by length then reduced word.
    pub fn parabolic_elements(&self, set: GeneratorSubset) -> Result<Vec<CoxeterElement>, CoxeterError> {
        self.bfs(set, self.budget())
    }

    /// The longest element `w0(I)` of `W_I`.
    pub fn longest_in_parabolic(&self, set: GeneratorSubset) -> CoxeterElement {
        self.greedy_ascent(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> CoxeterGroup {
        CoxeterGroup::new(crate::coxeter::CoxeterMatrix::type_a(2).unwrap()).unwrap()
    }

    #[test]
    fn subset_round_trip() {
        let s = GeneratorSubset::parse("1,3", 4).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(s.to_string(), "1,3");
        assert_eq!(GeneratorSubset::parse("-", 3).unwrap(), GeneratorSubset::empty());
        assert!(GeneratorSubset::parse("0", 3).is_err());
        assert!(GeneratorSubset::parse("4", 3).is_err());
    }

    #[test]
    fn projections_in_s3() {
        let g = s3();
        let w0 = g.longest_element().clone();
        let s1 = GeneratorSubset::singleton(0);
        let s2 = GeneratorSubset::singleton(1);
        let (min, par) = g.project_right(&w0, s1);
        assert_eq!(min, g.from_word(&[0, 1]));
        assert_eq!(par, g.from_word(&[0]));
        let (par, min) = g.project_left(s2, &w0);
        assert_eq!(par, g.from_word(&[1]));
        assert_eq!(min, g.from_word(&[0, 1]));
        assert_eq!(g.project_double(s2, &w0, s1), g.from_word(&[0, 1]));
        assert!(g.is_min_double_coset_rep(&g.from_word(&[0, 1]), s2, s1));
    }

    #[test]
    fn trivial_projections() {
        let g = s3();
        let s1 = g.from_word(&[0]);
        let one = GeneratorSubset::singleton(0);
        assert_eq!(g.project_right(&s1, GeneratorSubset::empty()), (s1.clone(), g.identity()));
        assert_eq!(g.project_right(&s1, one), (g.identity(), s1.clone()));
        assert_eq!(g.project_left(one, &s1), (s1.clone(), g.identity()));
        assert_eq!(g.project_double(one, &s1, one), g.identity());
        assert!(!g.is_min_double_coset_rep(&s1, one, GeneratorSubset::empty()));
    }

    #[test]
    fn circ_examples() {
        let g = s3();
        let s1 = g.from_word(&[0]);
        assert_eq!(g.circ(&g.identity(), &s1), s1);
        assert_eq!(g.circ(&s1, &s1), s1);
        assert_eq!(g.circ(&g.from_word(&[0, 1]), &g.from_word(&[1, 0])), *g.longest_element());
    }

    #[test]
    fn commuting_parabolics() {
        let g = s3();
        let a = GeneratorSubset::singleton(0);
        let b = GeneratorSubset::singleton(1);
        assert!(g.parabolics_commute(GeneratorSubset::empty(), b).unwrap());
        assert!(!g.parabolics_commute(a, b).unwrap());
        assert!(g.parabolics_commute(a, a).is_err());
        let s4 = CoxeterGroup::new(crate::coxeter::CoxeterMatrix::type_a(3).unwrap()).unwrap();
        assert!(s4.parabolics_commute(GeneratorSubset::singleton(0), GeneratorSubset::singleton(2)).unwrap());
    }

    #[test]
    fn parabolic_subgroups() {
        let g = s3();
        assert_eq!(g.parabolic_elements(GeneratorSubset::empty()).unwrap(), vec![g.identity()]);
        let one = GeneratorSubset::singleton(0);
        assert_eq!(g.parabolic_elements(one).unwrap(), vec![g.identity(), g.from_word(&[0])]);
        assert_eq!(g.longest_in_parabolic(one), g.from_word(&[0]));
        assert_eq!(g.longest_in_parabolic(GeneratorSubset::full(2)), g.from_one_line(&[3, 2, 1]).unwrap());
    }
}
