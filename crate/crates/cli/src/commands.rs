use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use renner::adherence::{leq_witness, vanilla_form, Epsilon};
use renner::coxeter::{CoxeterElement, CoxeterGroup, CoxeterMatrix, DEFAULT_BUDGET};
use renner::greens::{class_extrema, class_of, related, special_submonoid, verify_counterexample, GreensRelation};
use renner::hasse::hasse;
use renner::renner::{load_system, rook_system, RennerElement, RennerSystem};
use renner::verify::{run_all, run_suite, PropertyResult, Universe};
use serde_json::{json, Value};

use crate::{Cli, Command, Format, Status, SystemArgs};

pub fn run(cli: &Cli) -> Result<Status> {
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    match &cli.command {
        Command::Group { group, elements, out } => cmd_group(group, *elements, budget, out.format),
        Command::Rook { n, elements, out } => cmd_rook(*n, *elements, budget, out.format),
        Command::Order { sys, r, s, eps, witness, out } => {
            let sys = system(sys, budget)?;
            cmd_order(&sys, r, s, eps.get(), *witness, out.format)
        }
        Command::Forms { sys, r, out } => cmd_forms(&system(sys, budget)?, r, out.format),
        Command::Extrema { sys, r, relation, eps, out } => {
            cmd_extrema(&system(sys, budget)?, r, *relation, eps.get(), out.format)
        }
        Command::Classes { sys, relation, out } => cmd_classes(&system(sys, budget)?, *relation, out.format),
        Command::Hasse { sys, eps, class, relation, submonoid, format } => {
            let sys = system(sys, budget)?;
            let elements = match (class, submonoid) {
                (Some(r), _) => class_of(&sys, &element(&sys, r)?, *relation)?,
                (None, Some(which)) => special_submonoid(&sys, *which, eps.get())?,
                (None, None) => sys.enumerate()?,
            };
            let h = hasse(&sys, &elements, eps.get())?;
            match format {
                Format::Dot => out!("{}", h.to_dot()),
                Format::Json => outln!("{}", json!({ "nodes": h.labels, "covers": h.covers })),
                Format::Text => {
                    for (i, j) in &h.covers {
                        outln!("{} < {}", h.labels[*i], h.labels[*j]);
                    }
                }
            }
            Ok(Status::Ok)
        }
        Command::Verify { sys, suite, out } => cmd_verify(&system(sys, budget)?, suite.as_deref(), out.format),
        Command::Counterexample { eps, out } => {
            let report = verify_counterexample(&rook_system(3)?, eps.get())?;
            match no_dot(out.format)? {
                Format::Json => outln!("{}", serde_json::to_string_pretty(&report)?),
                _ => outln!("{report}"),
            }
            Ok(if report.all_pass() { Status::Ok } else { Status::PropertyFailed })
        }
    }
}

fn no_dot(format: Format) -> Result<Format> {
    if format == Format::Dot {
        bail!("dot output is only available for `hasse`");
    }
    Ok(format)
}

fn system(args: &SystemArgs, budget: usize) -> Result<RennerSystem> {
    let sys = match args.system.strip_prefix("rook:") {
        Some(n) => {
            let n: usize = n.parse().with_context(|| format!("invalid rook rank `{n}`"))?;
            rook_system(n)?
        }
        None => load_system(&args.system).with_context(|| format!("loading {}", args.system))?,
    };
    let sys = sys.with_budget(budget);
    Ok(if args.opposite { sys.opposite_system() } else { sys })
}

fn element(sys: &RennerSystem, text: &str) -> Result<RennerElement> {
    sys.parse_element(text).with_context(|| format!("parsing element `{text}`"))
}

fn group(text: &str) -> Result<CoxeterGroup> {
    let num = |s: &str| s.parse::<usize>().with_context(|| format!("invalid group `{text}`"));
    let matrix = if let Some(m) = text.strip_prefix("I2(").and_then(|t| t.strip_suffix(')')) {
        CoxeterMatrix::dihedral(num(m)? as u32)?
    } else if let Some(n) = text.strip_prefix('A').filter(|n| n.parse::<usize>().is_ok()) {
        CoxeterMatrix::type_a(num(n)?)?
    } else if let Some(n) = text.strip_prefix('B').filter(|n| n.parse::<usize>().is_ok()) {
        CoxeterMatrix::type_b(num(n)?)?
    } else {
        let body = std::fs::read_to_string(text).with_context(|| format!("`{text}` is neither A<n>, B<n>, I2(<m>) nor a readable file"))?;
        CoxeterMatrix::parse(&body)?
    };
    Ok(CoxeterGroup::new(matrix)?)
}

fn word(g: &CoxeterGroup, w: &CoxeterElement) -> Value {
    json!({ "word": CoxeterGroup::format_word(&g.reduced_word(w)), "display": g.display(w) })
}

fn plain_word(g: &CoxeterGroup, w: &CoxeterElement) -> String {
    let text = CoxeterGroup::format_word(&g.reduced_word(w));
    if text.is_empty() {
        "empty".into()
    } else {
        text
    }
}

fn cmd_group(text: &str, elements: bool, budget: usize, format: Format) -> Result<Status> {
    let g = group(text)?.with_budget(budget);
    let w0 = g.longest_element();
    let list = if elements { Some(g.enumerate()?) } else { None };
    match no_dot(format)? {
        Format::Json => {
            let mut v = json!({
                "type": g.type_name(),
                "rank": g.rank(),
                "order": g.order().to_string(),
                "w0": word(&g, w0),
                "w0_length": g.length(w0),
            });
            if let Some(list) = list {
                v["elements"] = list.iter().map(|w| word(&g, w)).collect();
            }
            outln!("{}", serde_json::to_string_pretty(&v)?);
        }
        _ => {
            outln!("type   {}", g.type_name());
            outln!("rank   {}", g.rank());
            outln!("order  {}", g.order());
            outln!("w0     {} (length {}, reduced word: {})", g.display(w0), g.length(w0), plain_word(&g, w0));
            out!("{}", g.matrix());
            for w in list.unwrap_or_default() {
                outln!("{:>3}  {}", g.length(w), g.display(w));
            }
        }
    }
    Ok(Status::Ok)
}

fn cmd_rook(n: usize, elements: bool, budget: usize, format: Format) -> Result<Status> {
    let sys = rook_system(n)?.with_budget(budget);
    let all = sys.enumerate()?;
    let lat = sys.lattice();
    let idems: Vec<Value> = lat
        .ids()
        .map(|e| {
            json!({
                "name": lat.name(e),
                "element": sys.format_element(&sys.idempotent(e)),
                "lambda": lat.lambda(e).to_string(),
                "upper": lat.upper(e).to_string(),
                "lower": lat.lower(e).to_string(),
            })
        })
        .collect();
    match no_dot(format)? {
        Format::Json => {
            let mut v = json!({ "n": n, "size": all.len(), "idempotents": idems });
            if elements {
                v["elements"] = all.iter().map(|r| Value::from(sys.format_element(r))).collect();
            }
            outln!("{}", serde_json::to_string_pretty(&v)?);
        }
        _ => {
            outln!("R_{n}: {} elements, unit group {}", all.len(), sys.group().type_name());
            outln!("idempotent  vector      λ      λ*     λ_*");
            for i in &idems {
                outln!(
                    "{:<11} {:<11} {:<6} {:<6} {}",
                    i["name"].as_str().unwrap_or(""),
                    i["element"].as_str().unwrap_or(""),
                    i["lambda"].as_str().unwrap_or(""),
                    i["upper"].as_str().unwrap_or(""),
                    i["lower"].as_str().unwrap_or("")
                );
            }
            if elements {
                for r in &all {
                    outln!("{}", sys.format_element(r));
                }
            }
        }
    }
    Ok(Status::Ok)
}

fn cmd_order(sys: &RennerSystem, r: &str, s: &str, eps: Epsilon, witness: bool, format: Format) -> Result<Status> {
    let (r, s) = (element(sys, r)?, element(sys, s)?);
    let w = leq_witness(sys, &r, &s, eps)?;
    let g = sys.group();
    match no_dot(format)? {
        Format::Json => {
            let mut v = json!({ "r": sys.format_element(&r), "s": sys.format_element(&s), "epsilon": eps.to_string(), "leq": w.is_some() });
            if witness {
                v["witness"] = w.as_ref().map_or(Value::Null, |w| word(g, w));
            }
            outln!("{v}");
        }
        _ => {
            outln!("{}", w.is_some());
            if let (true, Some(w)) = (witness, &w) {
                outln!("witness w = {} (reduced word: {})", g.display(w), plain_word(g, w));
            }
        }
    }
    Ok(Status::Ok)
}

/// `r` multiplied back together from units and idempotents.
fn product(sys: &RennerSystem, factors: &[RennerElement]) -> Result<RennerElement> {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = sys.multiply(&acc, f)?;
    }
    Ok(acc)
}

fn cmd_forms(sys: &RennerSystem, text: &str, format: Format) -> Result<Status> {
    let r = element(sys, text)?;
    let g = sys.group();
    let lat = sys.lattice();
    let opp = sys.opposite();
    let unit = |w: &CoxeterElement| sys.unit(w).map_err(|e| anyhow!(e));
    let left = sys.left_standard_form(&r);
    let right = sys.right_standard_form(&r);
    let hybrid = sys.hybrid_standard_form(&r);
    let v = vanilla_form(sys, &r)?;
    let (ep, em) = (sys.idempotent(v.e_plus), sys.convert(&opp.idempotent(v.e_minus))?);
    let checks = [
        ("left", product(sys, &[unit(&left.x)?, sys.idempotent(left.e), unit(&left.y)?])?),
        ("right", product(sys, &[unit(&right.y)?, sys.idempotent(right.e), unit(&right.x)?])?),
        (
            "hybrid",
            product(sys, &[unit(&hybrid.x)?, sys.idempotent(hybrid.e), unit(&hybrid.y)?, sys.idempotent(hybrid.e), unit(&hybrid.z)?])?,
        ),
        ("vanilla", product(sys, &[unit(&v.sigma_minus)?, em, unit(&v.sigma_zero)?, ep, unit(&v.sigma_plus)?])?),
    ];
    let ok: BTreeMap<&str, bool> = checks.iter().map(|(name, p)| (*name, *p == r)).collect();
    let all_ok = ok.values().all(|&b| b);
    let w = |x: &CoxeterElement| g.display(x);
    match no_dot(format)? {
        Format::Json => {
            let val = json!({
                "element": sys.format_element(&r),
                "left": { "x": word(g, &left.x), "e": lat.name(left.e), "y": word(g, &left.y) },
                "right": { "y": word(g, &right.y), "e": lat.name(right.e), "x": word(g, &right.x) },
                "hybrid": { "x": word(g, &hybrid.x), "e": lat.name(hybrid.e), "y": word(g, &hybrid.y), "z": word(g, &hybrid.z) },
                "vanilla": {
                    "sigma_minus": word(g, &v.sigma_minus),
                    "e_minus": opp.lattice().name(v.e_minus),
                    "sigma_zero": word(g, &v.sigma_zero),
                    "e_plus": lat.name(v.e_plus),
                    "sigma_plus": word(g, &v.sigma_plus),
                },
                "check": ok,
            });
            outln!("{}", serde_json::to_string_pretty(&val)?);
        }
        _ => {
            let flag = |name: &str| if ok[name] { "ok" } else { "MISMATCH" };
            outln!("element  {}", sys.format_element(&r));
            outln!("left     x={} e={} y={}  [{}]", w(&left.x), lat.name(left.e), w(&left.y), flag("left"));
            outln!("right    y={} e={} x={}  [{}]", w(&right.y), lat.name(right.e), w(&right.x), flag("right"));
            outln!(
                "hybrid   x={} e={} y={} e={} z={}  [{}]",
                w(&hybrid.x),
                lat.name(hybrid.e),
                w(&hybrid.y),
                lat.name(hybrid.e),
                w(&hybrid.z),
                flag("hybrid")
            );
            outln!(
                "vanilla  σ-={} e-={} σ0={} e+={} σ+={}  [{}]",
                w(&v.sigma_minus),
                opp.lattice().name(v.e_minus),
                w(&v.sigma_zero),
                lat.name(v.e_plus),
                w(&v.sigma_plus),
                flag("vanilla")
            );
        }
    }
    Ok(if all_ok { Status::Ok } else { Status::PropertyFailed })
}

fn cmd_extrema(sys: &RennerSystem, text: &str, relation: Option<GreensRelation>, eps: Epsilon, format: Format) -> Result<Status> {
    let r = element(sys, text)?;
    let rels = relation.map_or(GreensRelation::ALL.to_vec(), |rel| vec![rel]);
    let mut rows = Vec::new();
    for rel in rels {
        let x = class_extrema(sys, &r, rel, eps)?;
        rows.push((rel, sys.format_element(&x.min), sys.format_element(&x.max)));
    }
    match no_dot(format)? {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(rel, min, max)| json!({ "relation": rel.to_string(), "epsilon": eps.to_string(), "min": min, "max": max }))
                .collect();
            outln!("{}", serde_json::to_string_pretty(&v)?);
        }
        _ => {
            for (rel, min, max) in &rows {
                outln!("{rel}{eps}  min {min}  max {max}");
            }
        }
    }
    Ok(Status::Ok)
}

fn cmd_classes(sys: &RennerSystem, relation: GreensRelation, format: Format) -> Result<Status> {
    let all = sys.enumerate()?;
    let mut classes: Vec<Vec<&RennerElement>> = Vec::new();
    for r in &all {
        let mut home = None;
        for (k, c) in classes.iter().enumerate() {
            if related(sys, c[0], r, relation)? {
                home = Some(k);
                break;
            }
        }
        match home {
            Some(k) => classes[k].push(r),
            None => classes.push(vec![r]),
        }
    }
    let labels: Vec<Vec<String>> = classes.iter().map(|c| c.iter().map(|r| sys.format_element(r)).collect()).collect();
    match no_dot(format)? {
        Format::Json => outln!("{}", json!({ "relation": relation.to_string(), "classes": labels })),
        _ => {
            outln!("{} {relation}-classes", labels.len());
            for (k, c) in labels.iter().enumerate() {
                outln!("{k:>3} ({}): {}", c.len(), c.join("  "));
            }
        }
    }
    Ok(Status::Ok)
}

fn cmd_verify(sys: &RennerSystem, suite: Option<&str>, format: Format) -> Result<Status> {
    let results: Vec<PropertyResult> = match suite {
        Some(name) => vec![run_suite(&Universe::new(sys)?, name)?],
        None => run_all(sys)?,
    };
    let first_failure = results.iter().find(|r| !r.passed());
    match no_dot(format)? {
        Format::Json => outln!("{}", serde_json::to_string_pretty(&results)?),
        _ => {
            for r in &results {
                let tag = if r.passed() { "PASS" } else { "FAIL" };
                outln!("{tag} {} ({} checks)", r.name, r.checked);
                if let Some(f) = &r.failure {
                    outln!("     {f}");
                }
                if let Some(n) = &r.note {
                    outln!("     note: {n}");
                }
            }
            let passed = results.iter().filter(|r| r.passed()).count();
            outln!("{passed}/{} suites pass", results.len());
        }
    }
    match first_failure {
        Some(r) => {
            eprintln!("first failing property: {}", r.name);
            Ok(Status::PropertyFailed)
        }
        None => Ok(Status::Ok),
    }
}

