//! Green's relations, absolute extrema of classes and the submonoids of
//! class minima.
//!
//! Extrema are built from the vanilla form by substituting the prescribed
//! `w0` projections; nothing here scans a class except [`class_of`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::adherence::{from_vanilla, leq, vanilla_form, Epsilon};
use crate::renner::{RennerElement, RennerError, RennerSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GreensRelation {
    J,
    L,
    R,
    H,
}

impl GreensRelation {
    pub const ALL: [GreensRelation; 4] = [GreensRelation::J, GreensRelation::L, GreensRelation::R, GreensRelation::H];
}

impl fmt::Display for GreensRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GreensRelation::J => "J",
            GreensRelation::L => "L",
            GreensRelation::R => "R",
            GreensRelation::H => "H",
        };
        f.write_str(s)
    }
}

impl FromStr for GreensRelation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "J" => Ok(GreensRelation::J),
            "L" => Ok(GreensRelation::L),
            "R" => Ok(GreensRelation::R),
            "H" => Ok(GreensRelation::H),
            other => Err(format!("unknown relation `{other}` (expected J, L, R or H)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Extremum {
    Min,
    Max,
}

/// Via standard forms: `J` compares idempotents, `L` adds the right factor
/// of the left form, `R` the left factor of the right form.
pub fn related(sys: &RennerSystem, r: &RennerElement, s: &RennerElement, relation: GreensRelation) -> Result<bool, RennerError> {
    if r.tag() != sys.tag() || s.tag() != sys.tag() {
        return Err(RennerError::SystemMismatch);
    }
    if r.e() != s.e() {
        return Ok(false);
    }
    let same_l = || r.y() == s.y();
    let same_r = || sys.right_standard_form(r).y == sys.right_standard_form(s).y;
    Ok(match relation {
        GreensRelation::J => true,
        GreensRelation::L => same_l(),
        GreensRelation::R => same_r(),
        GreensRelation::H => same_l() && same_r(),
    })
}

/// Every element related to `r`.
pub fn class_of(sys: &RennerSystem, r: &RennerElement, relation: GreensRelation) -> Result<Vec<RennerElement>, RennerError> {
    let mut out = Vec::new();
    for s in sys.enumerate()? {
        if related(sys, r, &s, relation)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// `min^ε T_r` or `max^ε T_r` for `T ∈ {J, L, R, H}`.
pub fn extremum(
    sys: &RennerSystem,
    r: &RennerElement,
    relation: GreensRelation,
    eps: Epsilon,
    which: Extremum,
) -> Result<RennerElement, RennerError> {
    if eps == Epsilon::Minus {
        // ≤⁻ in Λ is ≤⁺ in Λ⁻.
        let opp = sys.opposite();
        let m = extremum(opp, &opp.convert(r)?, relation, Epsilon::Plus, which)?;
        return sys.convert(&m);
    }
    let v = vanilla_form(sys, r)?;
    let g = sys.group();
    let w0 = g.longest_element();
    let (lat, opp) = (sys.lattice(), sys.opposite().lattice());
    let e = v.e_plus;
    let mut out = v;
    use GreensRelation::*;
    match which {
        Extremum::Min => {
            let c1 = g.project_double(opp.lambda(e), w0, lat.lambda(e));
            let c2 = g.project_double(lat.lambda(e), w0, opp.lambda(e));
            out.sigma_zero = c1;
            if matches!(relation, L | J) {
                out.sigma_minus = c2.clone();
            }
            if matches!(relation, R | J) {
                out.sigma_plus = c2;
            }
        }
        Extremum::Max => {
            out.sigma_zero = g.project_double(opp.lower(e), w0, lat.lower(e));
            if matches!(relation, L | J) {
                out.sigma_minus = g.identity();
            }
            if matches!(relation, R | J) {
                out.sigma_plus = g.identity();
            }
        }
    }
    Ok(from_vanilla(sys, &out))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassExtrema {
    pub relation: GreensRelation,
    pub epsilon: Epsilon,
    pub min: RennerElement,
    pub max: RennerElement,
}

pub fn class_extrema(
    sys: &RennerSystem,
    r: &RennerElement,
    relation: GreensRelation,
    eps: Epsilon,
) -> Result<ClassExtrema, RennerError> {
    Ok(ClassExtrema {
        relation,
        epsilon: eps,
        min: extremum(sys, r, relation, eps, Extremum::Min)?,
        max: extremum(sys, r, relation, eps, Extremum::Max)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Submonoid {
    /// Minima of `L`-classes.
    GJ,
    /// Minima of `R`-classes.
    JG,
    /// Minima of `J`-classes.
    N,
    /// Minima of `H`-classes, the same for both orders.
    O,
}

impl Submonoid {
    pub const ALL: [Submonoid; 4] = [Submonoid::GJ, Submonoid::JG, Submonoid::N, Submonoid::O];

    pub fn relation(self) -> GreensRelation {
        match self {
            Submonoid::GJ => GreensRelation::L,
            Submonoid::JG => GreensRelation::R,
            Submonoid::N => GreensRelation::J,
            Submonoid::O => GreensRelation::H,
        }
    }
}

impl fmt::Display for Submonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Submonoid::GJ => "GJ",
            Submonoid::JG => "JG",
            Submonoid::N => "N",
            Submonoid::O => "O",
        };
        f.write_str(s)
    }
}

impl FromStr for Submonoid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "GJ" => Ok(Submonoid::GJ),
            "JG" => Ok(Submonoid::JG),
            "N" => Ok(Submonoid::N),
            "O" => Ok(Submonoid::O),
            other => Err(format!("unknown submonoid `{other}` (expected GJ, JG, N or O)")),
        }
    }
}

/// `{r : r = min^ε T_r}` for the relation of `which`.
pub fn special_submonoid(sys: &RennerSystem, which: Submonoid, eps: Epsilon) -> Result<Vec<RennerElement>, RennerError> {
    let mut out = Vec::new();
    for r in sys.enumerate()? {
        if extremum(sys, &r, which.relation(), eps, Extremum::Min)? == r {
            out.push(r);
        }
    }
    Ok(out)
}

/// Order of classes through their maxima, valid for all four relations.
pub fn class_leq(
    sys: &RennerSystem,
    r: &RennerElement,
    s: &RennerElement,
    relation: GreensRelation,
    eps: Epsilon,
) -> Result<bool, RennerError> {
    let a = extremum(sys, r, relation, eps, Extremum::Max)?;
    let b = extremum(sys, s, relation, eps, Extremum::Max)?;
    leq(sys, &a, &b, eps)
}

/// Order of classes through their minima; only valid for `J`, `L`, `R`.
pub fn class_leq_min(
    sys: &RennerSystem,
    r: &RennerElement,
    s: &RennerElement,
    relation: GreensRelation,
    eps: Epsilon,
) -> Result<bool, RennerError> {
    if relation == GreensRelation::H {
        return Err(RennerError::Precondition("the minimum criterion does not order H-classes".into()));
    }
    let a = extremum(sys, r, relation, eps, Extremum::Min)?;
    let b = extremum(sys, s, relation, eps, Extremum::Min)?;
    leq(sys, &a, &b, eps)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClaimValue {
    Bool(bool),
    Text(String),
}

impl fmt::Display for ClaimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimValue::Bool(b) => write!(f, "{b}"),
            ClaimValue::Text(t) => f.write_str(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub expected: ClaimValue,
    pub actual: ClaimValue,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub claims: Vec<Claim>,
}

impl CounterexampleReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn passed(&self) -> usize {
        self.claims.iter().filter(|c| c.pass).count()
    }
}

impl fmt::Display for CounterexampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.claims {
            writeln!(
                f,
                "{} {}: expected {}, got {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.expected,
                c.actual
            )?;
        }
        write!(f, "{}/{} claims pass", self.passed(), self.claims.len())
    }
}

/// The `H`-class minima of `r = [3,2,0] ≤ s = [3,2,1]` in `R_3` are not
/// comparable: `[2,3,0] ≰ identity`. Failing claims are returned as data.
pub fn verify_counterexample(sys: &RennerSystem, eps: Epsilon) -> Result<CounterexampleReport, RennerError> {
    if sys.rook_rank() != Some(3) {
        return Err(RennerError::Precondition("the counterexample lives in the rook monoid R_3".into()));
    }
    let sup = match eps {
        Epsilon::Plus => "⁺",
        Epsilon::Minus => "⁻",
    };
    let r = sys.parse_element("3,2,0")?;
    let s = sys.parse_element("3,2,1")?;
    let min_r = extremum(sys, &r, GreensRelation::H, eps, Extremum::Min)?;
    let min_s = extremum(sys, &s, GreensRelation::H, eps, Extremum::Min)?;
    let text = |x: &RennerElement| ClaimValue::Text(sys.format_element(x));
    let claim = |name: String, expected: ClaimValue, actual: ClaimValue| Claim {
        pass: expected == actual,
        name,
        expected,
        actual,
    };
    Ok(CounterexampleReport {
        claims: vec![
            claim(format!("r ≤{sup} s"), ClaimValue::Bool(true), ClaimValue::Bool(leq(sys, &r, &s, eps)?)),
            claim(format!("min{sup}H_r"), ClaimValue::Text("2,3,0".into()), text(&min_r)),
            claim(format!("min{sup}H_s"), ClaimValue::Text("1,2,3".into()), text(&min_s)),
            claim(
                format!("min{sup}H_r ≤{sup} min{sup}H_s"),
                ClaimValue::Bool(false),
                ClaimValue::Bool(leq(sys, &min_r, &min_s, eps)?),
            ),
        ],
    })
}
