//! Renner–Coxeter systems `(R, Λ, S)`.
//!
//! Elements are stored as their left standard form `x e y` with
//! `x ∈ W^{λ_*(e)}` and `y ∈ ^{λ(e)}W`. The monoid product only needs the
//! lattice data: `ya` is split as `p·w·q` around the double coset
//! `W_{λ(e)} ya W_{λ(f)}` and `e w f` collapses to Godelle's meet.

mod generic;
pub mod rook;
mod validate;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{CoxeterElement, CoxeterError, CoxeterGroup};
use crate::parabolic::GeneratorSubset;

pub use generic::{load_system, parse_system};
pub use rook::{rook_system, rook_system_with, Orientation, ROOK_ORIENTATION};
pub use validate::{validate_system, Violation, ViolationKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RennerError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("elements belong to different systems")]
    SystemMismatch,
    #[error("unknown idempotent `{0}`")]
    UnknownIdempotent(String),
    #[error("not a standard form: {0}")]
    NotStandard(String),
    #[error("w is not a minimal ({lambda_e}, {lambda_f}) double coset representative")]
    NotMinimalDoubleCosetRep { lambda_e: GeneratorSubset, lambda_f: GeneratorSubset },
    #[error("no maximum idempotent below {e} and {f} with w in its centralizer (broken lattice)")]
    NoGodelleMeet { e: String, f: String },
    #[error("broken lattice: {0}")]
    BrokenLattice(String),
    #[error("invalid rook element: {0}")]
    InvalidRook(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("the cross-sectional lattice has no unit idempotent")]
    NoUnitIdempotent,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("system fails validation: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidSystem(Vec<Violation>),
    #[error("enumeration exceeds the element budget of {0}")]
    BudgetExceeded(usize),
}

/// Index of an idempotent of `Λ` (or of `Λ⁻`, which shares the indexing via
/// `e ↦ w0 e w0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IdemId(pub u16);

impl IdemId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Whether a system uses its defining lattice `Λ` or the opposite `Λ⁻ = w0 Λ w0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Frame {
    Base,
    Opposite,
}

impl Frame {
    pub fn flip(self) -> Frame {
        match self {
            Frame::Base => Frame::Opposite,
            Frame::Opposite => Frame::Base,
        }
    }
}

/// Identifies the monoid an element belongs to and the lattice its triple
/// refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SystemTag {
    monoid: u64,
    frame: Frame,
}

static NEXT_MONOID: AtomicU64 = AtomicU64::new(1);

impl SystemTag {
    fn fresh() -> Self {
        SystemTag { monoid: NEXT_MONOID.fetch_add(1, Ordering::Relaxed), frame: Frame::Base }
    }

    pub fn frame(self) -> Frame {
        self.frame
    }

    pub fn same_monoid(self, other: SystemTag) -> bool {
        self.monoid == other.monoid
    }
}

/// Finite meet semilattice `Λ` with the type maps `λ* ` (upper) and `λ_*`
/// (lower); `λ = λ* ∪ λ_*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossSectionLattice {
    names: Vec<String>,
    meet: Vec<IdemId>,
    upper: Vec<GeneratorSubset>,
    lower: Vec<GeneratorSubset>,
}

impl CrossSectionLattice {
    /// Checks only the shape of the data; use [`validate_system`] for axioms.
    pub fn new(
        names: Vec<String>,
        meet: Vec<Vec<IdemId>>,
        upper: Vec<GeneratorSubset>,
        lower: Vec<GeneratorSubset>,
    ) -> Result<Self, RennerError> {
        let n = names.len();
        if n == 0 || n > u16::MAX as usize {
            return Err(RennerError::BrokenLattice(format!("lattice size {n} out of range")));
        }
        if meet.len() != n || meet.iter().any(|row| row.len() != n) || upper.len() != n || lower.len() != n {
            return Err(RennerError::BrokenLattice("meet table or type maps have the wrong size".into()));
        }
        if meet.iter().flatten().any(|m| m.index() >= n) {
            return Err(RennerError::BrokenLattice("meet table refers to an unknown idempotent".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(RennerError::BrokenLattice(format!("duplicate idempotent name `{a}`")));
            }
        }
        Ok(CrossSectionLattice { names, meet: meet.into_iter().flatten().collect(), upper, lower })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = IdemId> {
        (0..self.names.len() as u16).map(IdemId)
    }

    pub fn name(&self, e: IdemId) -> &str {
        &self.names[e.index()]
    }

    pub fn find(&self, name: &str) -> Option<IdemId> {
        self.names.iter().position(|n| n == name).map(|i| IdemId(i as u16))
    }

    pub fn meet(&self, a: IdemId, b: IdemId) -> IdemId {
        self.meet[a.index() * self.names.len() + b.index()]
    }

    /// `a ≤ b` iff `a ∧ b = a`.
    pub fn leq(&self, a: IdemId, b: IdemId) -> bool {
        self.meet(a, b) == a
    }

    /// `λ(e)`: generators commuting with `e`.
    pub fn lambda(&self, e: IdemId) -> GeneratorSubset {
        self.upper[e.index()].union(self.lower[e.index()])
    }

    /// `λ*(e)`: generators commuting with `e` without fixing it.
    pub fn upper(&self, e: IdemId) -> GeneratorSubset {
        self.upper[e.index()]
    }

    /// `λ_*(e)`: generators absorbed by `e`.
    pub fn lower(&self, e: IdemId) -> GeneratorSubset {
        self.lower[e.index()]
    }

    /// The top element, if the semilattice has one.
    pub fn top(&self) -> Option<IdemId> {
        self.ids().find(|&t| self.ids().all(|e| self.leq(e, t)))
    }

    pub(crate) fn transported(&self, group: &CoxeterGroup) -> CrossSectionLattice {
        CrossSectionLattice {
            names: self.names.clone(),
            meet: self.meet.clone(),
            upper: self.upper.iter().map(|&s| group.w0_conjugate_subset(s)).collect(),
            lower: self.lower.iter().map(|&s| group.w0_conjugate_subset(s)).collect(),
        }
    }
}

/// Concrete data backing a system, used by validation and literals.
#[derive(Debug, Clone)]
pub(crate) enum Model {
    Rook(rook::RookModel),
    Table(generic::ActionTable),
    Abstract,
}

/// A monoid element as its left standard form in the lattice named by `tag`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RennerElement {
    tag: SystemTag,
    e: IdemId,
    x: CoxeterElement,
    y: CoxeterElement,
}

impl RennerElement {
    pub fn x(&self) -> &CoxeterElement {
        &self.x
    }

    pub fn e(&self) -> IdemId {
        self.e
    }

    pub fn y(&self) -> &CoxeterElement {
        &self.y
    }

    pub fn tag(&self) -> SystemTag {
        self.tag
    }
}

impl fmt::Debug for RennerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}·e{}·{:?}", self.x, self.e.0, self.y)
    }
}

/// `r = x e y` with `x ∈ W^{λ_*(e)}`, `y ∈ ^{λ(e)}W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftForm {
    pub x: CoxeterElement,
    pub e: IdemId,
    pub y: CoxeterElement,
}

/// `r = y e x` with `y ∈ W^{λ(e)}`, `x ∈ ^{λ_*(e)}W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightForm {
    pub y: CoxeterElement,
    pub e: IdemId,
    pub x: CoxeterElement,
}

/// `r = x e y e z` with `x ∈ W^{λ(e)}`, `y ∈ W_{λ*(e)}`, `z ∈ ^{λ(e)}W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HybridForm {
    pub x: CoxeterElement,
    pub e: IdemId,
    pub y: CoxeterElement,
    pub z: CoxeterElement,
}

#[derive(Debug, Clone)]
pub struct RennerSystem {
    tag: SystemTag,
    group: Arc<CoxeterGroup>,
    lattice: CrossSectionLattice,
    model: Model,
    unit: Option<IdemId>,
    upper_elements: Vec<OnceLock<Vec<CoxeterElement>>>,
    lower_elements: Vec<OnceLock<Vec<CoxeterElement>>>,
    opposite: OnceLock<Box<RennerSystem>>,
}

impl RennerSystem {
    /// A system given only by its group and lattice data. Nothing is
    /// validated here; see [`validate_system`].
    pub fn from_lattice(group: Arc<CoxeterGroup>, lattice: CrossSectionLattice) -> Result<Self, RennerError> {
        Self::assemble(SystemTag::fresh(), group, lattice, Model::Abstract)
    }

    pub(crate) fn assemble(
        tag: SystemTag,
        group: Arc<CoxeterGroup>,
        lattice: CrossSectionLattice,
        model: Model,
    ) -> Result<Self, RennerError> {
        let full = GeneratorSubset::full(group.rank());
        for e in lattice.ids() {
            for set in [lattice.upper(e), lattice.lower(e)] {
                if !set.is_subset(full) {
                    return Err(RennerError::BrokenLattice(format!(
                        "type map of `{}` mentions generators outside S",
                        lattice.name(e)
                    )));
                }
            }
        }
        let unit = lattice
            .top()
            .filter(|&t| lattice.upper(t) == full && lattice.lower(t).is_empty());
        let n = lattice.len();
        Ok(RennerSystem {
            tag,
            group,
            lattice,
            model,
            unit,
            upper_elements: (0..n).map(|_| OnceLock::new()).collect(),
            lower_elements: (0..n).map(|_| OnceLock::new()).collect(),
            opposite: OnceLock::new(),
        })
    }

    /// Same system with a different element budget for enumeration.
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.group = Arc::new((*self.group).clone().with_budget(budget));
        self.opposite = OnceLock::new();
        self
    }

    pub fn tag(&self) -> SystemTag {
        self.tag
    }

    pub fn frame(&self) -> Frame {
        self.tag.frame
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn lattice(&self) -> &CrossSectionLattice {
        &self.lattice
    }

    pub fn w0(&self) -> &CoxeterElement {
        self.group.longest_element()
    }

    pub fn unit_idempotent(&self) -> Option<IdemId> {
        self.unit
    }

    pub fn contains_unit_idem(&self) -> bool {
        self.unit.is_some()
    }

    /// `n` for rook monoids.
    pub fn rook_rank(&self) -> Option<usize> {
        match &self.model {
            Model::Rook(m) => Some(m.n),
            _ => None,
        }
    }

    pub(crate) fn model(&self) -> &Model {
        &self.model
    }

    /// Elements of `W_{λ*(e)}`, cached.
    pub fn upper_parabolic(&self, e: IdemId) -> &[CoxeterElement] {
        self.upper_elements[e.index()].get_or_init(|| self.parabolic_or_panic(self.lattice.upper(e)))
    }

    /// Elements of `W_{λ_*(e)}`, cached.
    pub fn lower_parabolic(&self, e: IdemId) -> &[CoxeterElement] {
        self.lower_elements[e.index()].get_or_init(|| self.parabolic_or_panic(self.lattice.lower(e)))
    }

    fn parabolic_or_panic(&self, set: GeneratorSubset) -> Vec<CoxeterElement> {
        // Parabolic subgroups are no larger than W, which callers enumerate first.
        self.group.bfs(set, usize::MAX).expect("unbounded budget")
    }

    pub(crate) fn check(&self, r: &RennerElement) -> Result<(), RennerError> {
        if r.tag == self.tag {
            Ok(())
        } else {
            Err(RennerError::SystemMismatch)
        }
    }

    /// Left standard form of `a e b` for arbitrary `a, b ∈ W`.
    pub fn element(&self, a: &CoxeterElement, e: IdemId, b: &CoxeterElement) -> RennerElement {
        let g = &self.group;
        let (c, d) = g.project_left(self.lattice.lambda(e), b);
        let ac = g.multiply(a, &c);
        let (m, _) = g.project_right(&ac, self.lattice.lower(e));
        RennerElement { tag: self.tag, e, x: m, y: d }
    }

    pub fn idempotent(&self, e: IdemId) -> RennerElement {
        let id = self.group.identity();
        RennerElement { tag: self.tag, e, x: id.clone(), y: id }
    }

    /// The unit `w` as a monoid element.
    pub fn unit(&self, w: &CoxeterElement) -> Result<RennerElement, RennerError> {
        let one = self.unit.ok_or(RennerError::NoUnitIdempotent)?;
        Ok(self.element(w, one, &self.group.identity()))
    }

    /// `u · r` for a unit `u`.
    pub fn unit_mul_left(&self, u: &CoxeterElement, r: &RennerElement) -> Result<RennerElement, RennerError> {
        self.check(r)?;
        Ok(self.element(&self.group.multiply(u, &r.x), r.e, &r.y))
    }

    /// `r · u` for a unit `u`.
    pub fn unit_mul_right(&self, r: &RennerElement, u: &CoxeterElement) -> Result<RennerElement, RennerError> {
        self.check(r)?;
        Ok(self.element(&r.x, r.e, &self.group.multiply(&r.y, u)))
    }

    /// `w0 r w0`, in the same lattice.
    pub fn conjugate_w0(&self, r: &RennerElement) -> Result<RennerElement, RennerError> {
        let w0 = self.w0();
        self.check(r)?;
        Ok(self.element(&self.group.multiply(w0, &r.x), r.e, &self.group.multiply(&r.y, w0)))
    }

    pub fn from_left_form(&self, form: &LeftForm) -> Result<RennerElement, RennerError> {
        let g = &self.group;
        let e = form.e;
        if e.index() >= self.lattice.len() {
            return Err(RennerError::UnknownIdempotent(e.0.to_string()));
        }
        if !g.right_descents(&form.x).is_disjoint(self.lattice.lower(e)) {
            return Err(RennerError::NotStandard("x has a right descent in λ_*(e)".into()));
        }
        if !g.left_descents(&form.y).is_disjoint(self.lattice.lambda(e)) {
            return Err(RennerError::NotStandard("y has a left descent in λ(e)".into()));
        }
        Ok(RennerElement { tag: self.tag, e, x: form.x.clone(), y: form.y.clone() })
    }

    pub fn from_right_form(&self, form: &RightForm) -> Result<RennerElement, RennerError> {
        let g = &self.group;
        let e = form.e;
        if e.index() >= self.lattice.len() {
            return Err(RennerError::UnknownIdempotent(e.0.to_string()));
        }
        if !g.right_descents(&form.y).is_disjoint(self.lattice.lambda(e)) {
            return Err(RennerError::NotStandard("y has a right descent in λ(e)".into()));
        }
        if !g.left_descents(&form.x).is_disjoint(self.lattice.lower(e)) {
            return Err(RennerError::NotStandard("x has a left descent in λ_*(e)".into()));
        }
        Ok(self.element(&form.y, e, &form.x))
    }

    pub fn left_standard_form(&self, r: &RennerElement) -> LeftForm {
        LeftForm { x: r.x.clone(), e: r.e, y: r.y.clone() }
    }

    /// Read off the left form of `r*`: if `r* = a e b` then `r = b⁻¹ e a⁻¹`.
    pub fn right_standard_form(&self, r: &RennerElement) -> RightForm {
        let g = &self.group;
        let s = self.star_unchecked(r);
        RightForm { y: g.inverse(&s.y), e: r.e, x: g.inverse(&s.x) }
    }

    /// Splits the left `x` component as `x^{λ(e)} · y`.
    pub fn hybrid_standard_form(&self, r: &RennerElement) -> HybridForm {
        let (x, y) = self.group.project_right(&r.x, self.lattice.lambda(r.e));
        HybridForm { x, e: r.e, y, z: r.y.clone() }
    }

    /// Godelle's meet `e ∧_w f` for `w ∈ ^{λ(e)}W^{λ(f)}`.
    pub fn godelle_meet(&self, e: IdemId, w: &CoxeterElement, f: IdemId) -> Result<IdemId, RennerError> {
        let (le, lf) = (self.lattice.lambda(e), self.lattice.lambda(f));
        if !self.group.is_min_double_coset_rep(w, le, lf) {
            return Err(RennerError::NotMinimalDoubleCosetRep { lambda_e: le, lambda_f: lf });
        }
        let support = self.group.support(w);
        let lat = &self.lattice;
        let candidates: Vec<IdemId> = lat
            .ids()
            .filter(|&h| lat.leq(h, e) && lat.leq(h, f) && support.is_subset(lat.lambda(h)))
            .collect();
        let g = candidates
            .iter()
            .copied()
            .find(|&c| candidates.iter().all(|&h| lat.leq(h, c)))
            .ok_or_else(|| RennerError::NoGodelleMeet { e: lat.name(e).into(), f: lat.name(f).into() })?;
        if !support.is_subset(lat.lower(g)) {
            return Err(RennerError::BrokenLattice(format!(
                "meet `{}` of `{}` and `{}` does not absorb w",
                lat.name(g),
                lat.name(e),
                lat.name(f)
            )));
        }
        Ok(g)
    }

    /// Monoid product of two elements of this system.
    pub fn multiply(&self, r: &RennerElement, s: &RennerElement) -> Result<RennerElement, RennerError> {
        self.check(r)?;
        self.check(s)?;
        let g = &self.group;
        let ya = g.multiply(&r.y, &s.x);
        let (u, q) = g.project_right(&ya, self.lattice.lambda(s.e));
        let (p, w) = g.project_left(self.lattice.lambda(r.e), &u);
        let meet = self.godelle_meet(r.e, &w, s.e)?;
        Ok(self.element(&g.multiply(&r.x, &p), meet, &g.multiply(&q, &s.y)))
    }

    /// The inverse `r*` of the inverse monoid.
    pub fn star(&self, r: &RennerElement) -> Result<RennerElement, RennerError> {
        self.check(r)?;
        Ok(self.star_unchecked(r))
    }

    fn star_unchecked(&self, r: &RennerElement) -> RennerElement {
        let g = &self.group;
        self.element(&g.inverse(&r.y), r.e, &g.inverse(&r.x))
    }

    pub fn is_idempotent(&self, r: &RennerElement) -> Result<bool, RennerError> {
        Ok(self.multiply(r, r)? == *r)
    }

    /// Every element, grouped by idempotent, then by the enumeration order of
    /// `x` and `y`.
    pub fn enumerate(&self) -> Result<Vec<RennerElement>, RennerError> {
        let g = &self.group;
        let all = g.enumerate()?;
        let budget = g.budget();
        let mut out = Vec::new();
        for e in self.lattice.ids() {
            let lower = self.lattice.lower(e);
            let lambda = self.lattice.lambda(e);
            let xs: Vec<&CoxeterElement> = all.iter().filter(|x| g.right_descents(x).is_disjoint(lower)).collect();
            let ys: Vec<&CoxeterElement> = all.iter().filter(|y| g.left_descents(y).is_disjoint(lambda)).collect();
            if out.len() + xs.len() * ys.len() > budget {
                return Err(RennerError::BudgetExceeded(budget));
            }
            for x in &xs {
                for y in &ys {
                    out.push(RennerElement { tag: self.tag, e, x: (*x).clone(), y: (*y).clone() });
                }
            }
        }
        Ok(out)
    }

    /// Re-expresses an element of the sibling system (same monoid, other
    /// lattice) in this system's lattice.
    pub fn convert(&self, r: &RennerElement) -> Result<RennerElement, RennerError> {
        if !r.tag.same_monoid(self.tag) {
            return Err(RennerError::SystemMismatch);
        }
        if r.tag.frame == self.tag.frame {
            return Ok(r.clone());
        }
        // x e y = (x w0)(w0 e w0)(w0 y), and w0 e w0 has the same index on the other side.
        let g = &self.group;
        let w0 = self.w0();
        Ok(self.element(&g.multiply(&r.x, w0), r.e, &g.multiply(w0, &r.y)))
    }

    /// The same monoid with lattice `Λ⁻ = w0 Λ w0` (or back again), cached.
    pub fn opposite(&self) -> &RennerSystem {
        self.opposite.get_or_init(|| Box::new(self.build_opposite()))
    }

    pub fn opposite_system(&self) -> RennerSystem {
        self.opposite().clone()
    }

    fn build_opposite(&self) -> RennerSystem {
        let lattice = self.lattice.transported(&self.group);
        let model = match &self.model {
            Model::Rook(m) => Model::Rook(m.opposite()),
            Model::Table(t) => Model::Table(t.opposite(&self.group)),
            Model::Abstract => Model::Abstract,
        };
        let tag = SystemTag { monoid: self.tag.monoid, frame: self.tag.frame.flip() };
        Self::assemble(tag, self.group.clone(), lattice, model).expect("transported lattice stays within S")
    }

    /// Literal for an element: the rook vector `3,2,0`, or `x:e:y` with
    /// space-separated words and the idempotent's name.
    pub fn format_element(&self, r: &RennerElement) -> String {
        match &self.model {
            Model::Rook(_) => rook::format_vector(&self.rook_vector(r).expect("rook model")),
            _ => format!(
                "{}:{}:{}",
                CoxeterGroup::format_word(&self.group.reduced_word(&r.x)),
                self.lattice.name(r.e),
                CoxeterGroup::format_word(&self.group.reduced_word(&r.y))
            ),
        }
    }

    /// Inverse of [`RennerSystem::format_element`]. Rook systems also accept
    /// the triple syntax.
    pub fn parse_element(&self, text: &str) -> Result<RennerElement, RennerError> {
        let text = text.trim();
        if text.contains(':') {
            let parts: Vec<&str> = text.split(':').collect();
            if parts.len() != 3 {
                return Err(RennerError::Parse { line: 1, message: format!("expected `x:e:y`, found `{text}`") });
            }
            let x = self.group.parse_word(parts[0])?;
            let e = self
                .lattice
                .find(parts[1].trim())
                .ok_or_else(|| RennerError::UnknownIdempotent(parts[1].trim().to_string()))?;
            let y = self.group.parse_word(parts[2])?;
            return Ok(self.element(&x, e, &y));
        }
        match &self.model {
            Model::Rook(_) => self.from_rook_vector(&rook::parse_vector(text)?),
            _ => Err(RennerError::Parse { line: 1, message: format!("expected `x:e:y`, found `{text}`") }),
        }
    }
}

#[cfg(test)]
mod tests;
