//! The rook monoid `R_n` of partial injections of `{1, …, n}`.
//!
//! Literals are vectors `v` with `v[j] = i` when column `j` goes to row `i`
//! and `0` when column `j` is undefined. The idempotent `e_k` is the partial
//! identity on `k` points; which `k` points is fixed by [`ROOK_ORIENTATION`].

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CrossSectionLattice, IdemId, Model, RennerElement, RennerError, RennerSystem, SystemTag};
use crate::coxeter::{CoxeterElement, CoxeterGroup, CoxeterMatrix};
use crate::parabolic::GeneratorSubset;

/// Where the ones of the diagonal idempotents sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// `e_k = diag(1, …, 1, 0, …, 0)`.
    LeadingOnes,
    /// `e_k = diag(0, …, 0, 1, …, 1)`.
    TrailingOnes,
}

/// The orientation under which `[3,2,0] ≤⁺ [3,2,1]` with `min⁺H = [2,3,0]`
/// and `identity`, and `[2,3,0] ≰⁺ identity`. `TrailingOnes` gives
/// `[3,2,0] ≰⁺ [3,2,1]`.
pub const ROOK_ORIENTATION: Orientation = Orientation::LeadingOnes;

/// Largest supported `n`; supports are `u64` point masks.
pub const MAX_ROOK_RANK: usize = 64;

#[derive(Debug, Clone)]
pub(crate) struct RookModel {
    pub n: usize,
    pub orientation: Orientation,
    /// `supports[k]`: points fixed by `e_k` in the current lattice.
    pub supports: Vec<u64>,
}

fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

impl RookModel {
    fn new(n: usize, orientation: Orientation) -> Self {
        let supports = (0..=n)
            .map(|k| match orientation {
                Orientation::LeadingOnes => low_mask(k),
                Orientation::TrailingOnes => low_mask(n) & !low_mask(n - k),
            })
            .collect();
        RookModel { n, orientation, supports }
    }

    /// Conjugation by `w0` reverses the points.
    pub(crate) fn opposite(&self) -> Self {
        let n = self.n;
        let supports = self
            .supports
            .iter()
            .map(|&m| (0..n).filter(|&p| m >> p & 1 == 1).fold(0u64, |acc, p| acc | 1 << (n - 1 - p)))
            .collect();
        RookModel { n, orientation: self.orientation, supports }
    }

    pub(crate) fn support(&self, e: IdemId) -> u64 {
        self.supports[e.index()]
    }

    pub(crate) fn partial_identity(&self, e: IdemId) -> Vec<usize> {
        let m = self.support(e);
        (0..self.n).map(|p| if m >> p & 1 == 1 { p + 1 } else { 0 }).collect()
    }
}

/// Type maps of a diagonal idempotent: `s_g` swaps points `g` and `g+1`, so
/// it commutes with `e` iff both or neither lie in the support, and is
/// absorbed iff neither does.
fn type_maps(n: usize, support: u64) -> (GeneratorSubset, GeneratorSubset) {
    let mut upper = GeneratorSubset::empty();
    let mut lower = GeneratorSubset::empty();
    for g in 0..n.saturating_sub(1) {
        let a = support >> g & 1 == 1;
        let b = support >> (g + 1) & 1 == 1;
        if a && b {
            upper.insert(g);
        } else if !a && !b {
            lower.insert(g);
        }
    }
    (upper, lower)
}

/// `R_n` with the calibrated lattice.
pub fn rook_system(n: usize) -> Result<RennerSystem, RennerError> {
    rook_system_with(n, ROOK_ORIENTATION)
}

/// `R_n` with an explicit choice of diagonal idempotents.
pub fn rook_system_with(n: usize, orientation: Orientation) -> Result<RennerSystem, RennerError> {
    if n == 0 || n > MAX_ROOK_RANK {
        return Err(RennerError::InvalidRook(format!("n must lie in 1..={MAX_ROOK_RANK}, found {n}")));
    }
    let group = if n == 1 { CoxeterGroup::trivial() } else { CoxeterGroup::new(CoxeterMatrix::type_a(n - 1)?)? };
    let model = RookModel::new(n, orientation);
    let names = (0..=n).map(|k| format!("e{k}")).collect();
    let meet = (0..=n).map(|i| (0..=n).map(|j| IdemId(i.min(j) as u16)).collect()).collect();
    let (upper, lower) = model.supports.iter().map(|&m| type_maps(n, m)).unzip();
    let lattice = CrossSectionLattice::new(names, meet, upper, lower)?;
    RennerSystem::assemble(SystemTag::fresh(), Arc::new(group), lattice, Model::Rook(model))
}

/// `(u·v)[j] = u[v[j]]`, undefined where either side is.
pub fn compose(u: &[usize], v: &[usize]) -> Vec<usize> {
    v.iter().map(|&i| if i == 0 { 0 } else { u[i - 1] }).collect()
}

/// The inverse partial injection (matrix transpose).
pub fn transpose(v: &[usize]) -> Vec<usize> {
    let mut t = vec![0; v.len()];
    for (j, &i) in v.iter().enumerate() {
        if i != 0 {
            t[i - 1] = j + 1;
        }
    }
    t
}

pub fn is_partial_injection(v: &[usize]) -> bool {
    let n = v.len();
    let mut seen = vec![false; n + 1];
    v.iter().all(|&i| i <= n && (i == 0 || !std::mem::replace(&mut seen[i], true)))
}

pub fn format_vector(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|i| i.to_string()).collect();
    parts.join(",")
}

pub fn parse_vector(text: &str) -> Result<Vec<usize>, RennerError> {
    text.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| RennerError::Parse { line: 1, message: format!("invalid rook entry `{}`", tok.trim()) })
        })
        .collect()
}

impl RennerSystem {
    /// The partial injection of `r`; `None` outside rook systems.
    pub fn rook_vector(&self, r: &RennerElement) -> Option<Vec<usize>> {
        let Model::Rook(m) = self.model() else { return None };
        let supp = m.support(r.e);
        let (x, y) = (r.x.images(), r.y.images());
        Some(
            (0..m.n)
                .map(|j| {
                    let p = y[j] as usize;
                    if supp >> p & 1 == 1 {
                        x[p] as usize + 1
                    } else {
                        0
                    }
                })
                .collect(),
        )
    }

    /// Left standard form of a partial injection.
    pub fn from_rook_vector(&self, v: &[usize]) -> Result<RennerElement, RennerError> {
        let Model::Rook(m) = self.model() else {
            return Err(RennerError::InvalidRook("not a rook system".into()));
        };
        let n = m.n;
        if v.len() != n {
            return Err(RennerError::InvalidRook(format!("expected {n} entries, found {}", v.len())));
        }
        if !is_partial_injection(v) {
            return Err(RennerError::InvalidRook(format!("`{}` is not a partial injection", format_vector(v))));
        }
        let rank = v.iter().filter(|&&i| i != 0).count();
        let e = self
            .lattice
            .ids()
            .find(|&e| m.support(e).count_ones() as usize == rank)
            .expect("one idempotent per rank");
        let supp = m.support(e);
        let inside: Vec<usize> = (0..n).filter(|&p| supp >> p & 1 == 1).collect();
        let outside: Vec<usize> = (0..n).filter(|&p| supp >> p & 1 == 0).collect();
        let domain: Vec<usize> = (0..n).filter(|&j| v[j] != 0).collect();
        let rest: Vec<usize> = (0..n).filter(|&j| v[j] == 0).collect();
        let mut y = vec![0usize; n];
        for (&j, &p) in domain.iter().zip(&inside).chain(rest.iter().zip(&outside)) {
            y[j] = p + 1;
        }
        let mut x = vec![0usize; n];
        let mut used = vec![false; n];
        for (&j, &p) in domain.iter().zip(&inside) {
            x[p] = v[j];
            used[v[j] - 1] = true;
        }
        let mut free = (0..n).filter(|&i| !used[i]);
        for &p in &outside {
            x[p] = free.next().expect("rows left for undefined columns") + 1;
        }
        let to_elem = |img: &[usize]| -> CoxeterElement { self.group.from_one_line(img).expect("a permutation") };
        Ok(self.element(&to_elem(&x), e, &to_elem(&y)))
    }

    /// The partial identity of `e` as a vector.
    pub fn rook_idempotent_vector(&self, e: IdemId) -> Option<Vec<usize>> {
        match self.model() {
            Model::Rook(m) => Some(m.partial_identity(e)),
            _ => None,
        }
    }
}
