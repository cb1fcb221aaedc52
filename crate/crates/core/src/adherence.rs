//! The adherence orders `≤⁺` and `≤⁻`, vanilla form, and the faster
//! comparisons available inside a Green's class.
//!
//! [`leq_plus`] and [`leq_minus`] search the witness set of the definition
//! directly and are the reference implementations. Everything else here is
//! checked against them.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::CoxeterElement;
use crate::greens::{related, GreensRelation};
use crate::renner::{IdemId, RennerElement, RennerError, RennerSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    pub fn flip(self) -> Epsilon {
        match self {
            Epsilon::Plus => Epsilon::Minus,
            Epsilon::Minus => Epsilon::Plus,
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Epsilon::Plus => "+",
            Epsilon::Minus => "-",
        })
    }
}

/// `{ab : a ∈ A, b ∈ B}` without repeats, in first-seen order.
pub(crate) fn product_set(a: &[CoxeterElement], b: &[CoxeterElement], sys: &RennerSystem) -> Vec<CoxeterElement> {
    let g = sys.group();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for u in a {
        for v in b {
            let w = g.multiply(u, v);
            if seen.insert(w.clone()) {
                out.push(w);
            }
        }
    }
    out
}

fn check_pair(sys: &RennerSystem, r: &RennerElement, s: &RennerElement) -> Result<(), RennerError> {
    if r.tag() != sys.tag() || s.tag() != sys.tag() {
        return Err(RennerError::SystemMismatch);
    }
    Ok(())
}

/// A `w ∈ W_{λ*(f)} W_{λ_*(e)}` with `x ≤ aw` and `w⁻¹b ≤ y`, where
/// `r = xey` and `s = afb` are left standard forms; `None` if `r ≰⁺ s`.
pub fn leq_plus_witness(
    sys: &RennerSystem,
    r: &RennerElement,
    s: &RennerElement,
) -> Result<Option<CoxeterElement>, RennerError> {
    check_pair(sys, r, s)?;
    let (e, f) = (r.e(), s.e());
    if !sys.lattice().leq(e, f) {
        return Ok(None);
    }
    let g = sys.group();
    let (x, y, a, b) = (r.x(), r.y(), s.x(), s.y());
    let ws = product_set(sys.upper_parabolic(f), sys.lower_parabolic(e), sys);
    Ok(ws
        .into_iter()
        .find(|w| g.bruhat_leq(x, &g.multiply(a, w)) && g.bruhat_leq(&g.multiply(&g.inverse(w), b), y)))
}

pub fn leq_plus(sys: &RennerSystem, r: &RennerElement, s: &RennerElement) -> Result<bool, RennerError> {
    Ok(leq_plus_witness(sys, r, s)?.is_some())
}

/// A `w ∈ W_{λ_*(e)} W_{λ*(f)}` with `x ≤ wa` and `bw⁻¹ ≤ y`, where
/// `r = yex` and `s = bfa` are right standard forms; `None` if `r ≰⁻ s`.
pub fn leq_minus_witness(
    sys: &RennerSystem,
    r: &RennerElement,
    s: &RennerElement,
) -> Result<Option<CoxeterElement>, RennerError> {
    check_pair(sys, r, s)?;
    let (e, f) = (r.e(), s.e());
    if !sys.lattice().leq(e, f) {
        return Ok(None);
    }
    let g = sys.group();
    let rf = sys.right_standard_form(r);
    let sf = sys.right_standard_form(s);
    let (y, x, b, a) = (&rf.y, &rf.x, &sf.y, &sf.x);
    let ws = product_set(sys.lower_parabolic(e), sys.upper_parabolic(f), sys);
    Ok(ws
        .into_iter()
        .find(|w| g.bruhat_leq(x, &g.multiply(w, a)) && g.bruhat_leq(&g.multiply(b, &g.inverse(w)), y)))
}

pub fn leq_minus(sys: &RennerSystem, r: &RennerElement, s: &RennerElement) -> Result<bool, RennerError> {
    Ok(leq_minus_witness(sys, r, s)?.is_some())
}

pub fn leq(sys: &RennerSystem, r: &RennerElement, s: &RennerElement, eps: Epsilon) -> Result<bool, RennerError> {
    match eps {
        Epsilon::Plus => leq_plus(sys, r, s),
        Epsilon::Minus => leq_minus(sys, r, s),
    }
}

pub fn leq_witness(
    sys: &RennerSystem,
    r: &RennerElement,
    s: &RennerElement,
    eps: Epsilon,
) -> Result<Option<CoxeterElement>, RennerError> {
    match eps {
        Epsilon::Plus => leq_plus_witness(sys, r, s),
        Epsilon::Minus => leq_minus_witness(sys, r, s),
    }
}

/// The same monoid over `Λ⁻ = w0 Λ w0`.
pub fn opposite_system(sys: &RennerSystem) -> RennerSystem {
    sys.opposite_system()
}

/// `r = σ₋ e₋ σ₀ e₊ σ₊` with `e₊ ∈ Λ`, `e₋ = w0 e₊ w0 ∈ Λ⁻` (same index),
/// `σ₋ ∈ W^{λ(e₋)}`, `σ₊ ∈ ^{λ(e₊)}W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VanillaForm {
    pub sigma_minus: CoxeterElement,
    pub e_minus: IdemId,
    pub sigma_zero: CoxeterElement,
    pub e_plus: IdemId,
    pub sigma_plus: CoxeterElement,
}

/// From the left form `xey`: with `f = w0 e w0`, `xw0 = z·u` for
/// `z = (xw0)^{λ(f)}`, and `σ₀ = ^{λ_*(f)}(uw0)^{λ_*(e)}`.
pub fn vanilla_form(sys: &RennerSystem, r: &RennerElement) -> Result<VanillaForm, RennerError> {
    if r.tag() != sys.tag() {
        return Err(RennerError::SystemMismatch);
    }
    let g = sys.group();
    let opp = sys.opposite().lattice();
    let e = r.e();
    let w0 = g.longest_element();
    let (z, u) = g.project_right(&g.multiply(r.x(), w0), opp.lambda(e));
    let sigma_zero = g.project_double(opp.lower(e), &g.multiply(&u, w0), sys.lattice().lower(e));
    Ok(VanillaForm { sigma_minus: z, e_minus: e, sigma_zero, e_plus: e, sigma_plus: r.y().clone() })
}

/// `(σ₋σ₀) e₊ σ₊`, normalized. Valid for any quintuple with
/// `σ₀ ∈ W_{λ(e₋)} w0 W_{λ(e₊)}`, since then `e₋σ₀e₊ = σ₀e₊`.
pub fn from_vanilla(sys: &RennerSystem, v: &VanillaForm) -> RennerElement {
    let g = sys.group();
    sys.element(&g.multiply(&v.sigma_minus, &v.sigma_zero), v.e_plus, &v.sigma_plus)
}

/// The four defining conditions, with the first description of the set
/// allowed for `σ₀`.
pub fn is_vanilla(sys: &RennerSystem, v: &VanillaForm) -> bool {
    let g = sys.group();
    let lat = sys.lattice();
    let opp = sys.opposite().lattice();
    if v.e_minus != v.e_plus {
        return false;
    }
    let (em, ep) = (v.e_minus, v.e_plus);
    g.right_descents(&v.sigma_minus).is_disjoint(opp.lambda(em))
        && g.left_descents(&v.sigma_plus).is_disjoint(lat.lambda(ep))
        && in_sigma_zero_set(sys, em, ep, &v.sigma_zero)
}

/// `σ ∈ W_{λ*(e₋)} (^{λ_*(e₋)}w0^{λ_*(e₊)}) W_{λ*(e₊)}`.
pub fn in_sigma_zero_set(sys: &RennerSystem, em: IdemId, ep: IdemId, sigma: &CoxeterElement) -> bool {
    let g = sys.group();
    let opp = sys.opposite().lattice();
    let lat = sys.lattice();
    let core = g.project_double(opp.lower(em), g.longest_element(), lat.lower(ep));
    let (a, b) = (opp.upper(em), lat.upper(ep));
    g.project_double(a, sigma, b) == g.project_double(a, &core, b)
}

/// `^{λ_*(e₋)}(W_{λ(e₋)} w0 W_{λ(e₊)})^{λ_*(e₊)}`, the second description.
pub fn in_sigma_zero_set_alt(sys: &RennerSystem, em: IdemId, ep: IdemId, sigma: &CoxeterElement) -> bool {
    let g = sys.group();
    let opp = sys.opposite().lattice();
    let lat = sys.lattice();
    let (a, b) = (opp.lambda(em), lat.lambda(ep));
    g.project_double(a, sigma, b) == g.project_double(a, g.longest_element(), b)
        && g.is_min_double_coset_rep(sigma, opp.lower(em), lat.lower(ep))
}

/// Witnesses `(w₋, w₊)` for the vanilla criterion of `r ≤⁺ s`.
pub fn leq_plus_vanilla_witness(
    sys: &RennerSystem,
    r: &RennerElement,
    s: &RennerElement,
) -> Result<Option<(CoxeterElement, CoxeterElement)>, RennerError> {
    check_pair(sys, r, s)?;
    let (vr, vs) = (vanilla_form(sys, r)?, vanilla_form(sys, s)?);
    let lat = sys.lattice();
    let opp = sys.opposite();
    if !lat.leq(vr.e_plus, vs.e_plus) || !opp.lattice().leq(vr.e_minus, vs.e_minus) {
        return Ok(None);
    }
    let g = sys.group();
    let minus: Vec<CoxeterElement> =
        product_set(opp.lower_parabolic(vr.e_minus), opp.upper_parabolic(vs.e_minus), sys)
            .into_iter()
            .filter(|w| g.bruhat_leq(&g.multiply(&vs.sigma_minus, &g.inverse(w)), &vr.sigma_minus))
            .collect();
    let plus: Vec<CoxeterElement> = product_set(sys.upper_parabolic(vs.e_plus), sys.lower_parabolic(vr.e_plus), sys)
        .into_iter()
        .filter(|w| g.bruhat_leq(&g.multiply(&g.inverse(w), &vs.sigma_plus), &vr.sigma_plus))
        .collect();
    for wm in &minus {
        let left = g.multiply(wm, &vs.sigma_zero);
        for wp in &plus {
            if g.bruhat_leq(&vr.sigma_zero, &g.multiply(&left, wp)) {
                return Ok(Some((wm.clone(), wp.clone())));
            }
        }
    }
    Ok(None)
}

pub fn leq_plus_vanilla(sys: &RennerSystem, r: &RennerElement, s: &RennerElement) -> Result<bool, RennerError> {
    Ok(leq_plus_vanilla_witness(sys, r, s)?.is_some())
}

/// `(w₋, w₊) ∈ W_{λ*(e₋)} × W_{λ*(e₊)}` with `τ₋w₋⁻¹ ≤ σ₋`,
/// `σ₀ ≤ w₋τ₀w₊` and `w₊⁻¹τ₊ ≤ σ₊`, for `J`-related `r, s`.
fn j_class_witness(
    sys: &RennerSystem,
    vr: &VanillaForm,
    vs: &VanillaForm,
) -> Option<(CoxeterElement, CoxeterElement)> {
    let g = sys.group();
    let opp = sys.opposite();
    let minus: Vec<&CoxeterElement> = opp
        .upper_parabolic(vr.e_minus)
        .iter()
        .filter(|w| g.bruhat_leq(&g.multiply(&vs.sigma_minus, &g.inverse(w)), &vr.sigma_minus))
        .collect();
    let plus: Vec<&CoxeterElement> = sys
        .upper_parabolic(vr.e_plus)
        .iter()
        .filter(|w| g.bruhat_leq(&g.multiply(&g.inverse(w), &vs.sigma_plus), &vr.sigma_plus))
        .collect();
    for wm in &minus {
        let left = g.multiply(wm, &vs.sigma_zero);
        for wp in &plus {
            if g.bruhat_leq(&vr.sigma_zero, &g.multiply(&left, wp)) {
                return Some(((*wm).clone(), (*wp).clone()));
            }
        }
    }
    None
}

/// Single comparisons valid when `r` and `s` share a class of `relation`.
///
/// For `≤⁺`: left `x` components for `L`, `σ₀σ₊` for `R`, the hybrid middle
/// factor for `H`, and the reduced vanilla search for `J`. For `≤⁻`: right
/// `x` components for `R`, the hybrid middle for `H`; `L` and `J` are the
/// `≤⁺` tests in `Λ⁻`.
pub fn leq_fast_in_class(
    sys: &RennerSystem,
    r: &RennerElement,
    s: &RennerElement,
    relation: GreensRelation,
    eps: Epsilon,
) -> Result<bool, RennerError> {
    check_pair(sys, r, s)?;
    if !related(sys, r, s, relation)? {
        return Err(RennerError::Precondition(format!(
            "{} and {} are not {relation}-related",
            sys.format_element(r),
            sys.format_element(s)
        )));
    }
    let g = sys.group();
    match (eps, relation) {
        (_, GreensRelation::H) => {
            let (hr, hs) = (sys.hybrid_standard_form(r), sys.hybrid_standard_form(s));
            Ok(g.bruhat_leq(&hr.y, &hs.y))
        }
        (Epsilon::Plus, GreensRelation::L) => Ok(g.bruhat_leq(r.x(), s.x())),
        (Epsilon::Plus, GreensRelation::R) => {
            let (vr, vs) = (vanilla_form(sys, r)?, vanilla_form(sys, s)?);
            Ok(g.bruhat_leq(&g.multiply(&vr.sigma_zero, &vr.sigma_plus), &g.multiply(&vs.sigma_zero, &vs.sigma_plus)))
        }
        (Epsilon::Plus, GreensRelation::J) => {
            let (vr, vs) = (vanilla_form(sys, r)?, vanilla_form(sys, s)?);
            Ok(j_class_witness(sys, &vr, &vs).is_some())
        }
        (Epsilon::Minus, GreensRelation::R) => {
            let (fr, fs) = (sys.right_standard_form(r), sys.right_standard_form(s));
            Ok(g.bruhat_leq(&fr.x, &fs.x))
        }
        (Epsilon::Minus, rel) => {
            let opp = sys.opposite();
            leq_fast_in_class(opp, &opp.convert(r)?, &opp.convert(s)?, rel, Epsilon::Plus)
        }
    }
}

/// For `J`-related `r ≤⁺ s`, elements `t, u` with `r R t L s`,
/// `r L u R s`, `r ≤⁺ t ≤⁺ s` and `r ≤⁺ u ≤⁺ s`. `None` when `r ≰⁺ s`.
pub fn sandwich(
    sys: &RennerSystem,
    r: &RennerElement,
    s: &RennerElement,
) -> Result<Option<(RennerElement, RennerElement)>, RennerError> {
    check_pair(sys, r, s)?;
    if !related(sys, r, s, GreensRelation::J)? {
        return Err(RennerError::Precondition("elements are not J-related".into()));
    }
    let (vr, vs) = (vanilla_form(sys, r)?, vanilla_form(sys, s)?);
    let Some((wm, wp)) = j_class_witness(sys, &vr, &vs) else { return Ok(None) };
    let g = sys.group();
    let t = VanillaForm {
        sigma_minus: vr.sigma_minus.clone(),
        e_minus: vr.e_minus,
        sigma_zero: g.multiply(&wm, &vs.sigma_zero),
        e_plus: vr.e_plus,
        sigma_plus: vs.sigma_plus.clone(),
    };
    let u = VanillaForm {
        sigma_minus: vs.sigma_minus.clone(),
        e_minus: vr.e_minus,
        sigma_zero: g.multiply(&vs.sigma_zero, &wp),
        e_plus: vr.e_plus,
        sigma_plus: vr.sigma_plus.clone(),
    };
    Ok(Some((from_vanilla(sys, &t), from_vanilla(sys, &u))))
}
